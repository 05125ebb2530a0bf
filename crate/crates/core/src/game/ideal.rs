use super::Poset;

/// The ideal generated by an increasing chain: every element below some
/// generator.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealRep<E> {
    generators: Vec<E>,
}

/// Outcome of asking whether an ideal meets a set.
#[derive(Debug, Clone, PartialEq)]
pub enum Meet<E> {
    Met(E),
    /// The down-set was listed completely and contains no member.
    Missed,
    /// No member among the generators and the down-set is not listable.
    Unknown,
}

impl<E: Clone + PartialEq> IdealRep<E> {
    pub fn new(generators: Vec<E>) -> Self {
        IdealRep { generators }
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn is_chain<P: Poset<Elem = E> + ?Sized>(&self, poset: &P) -> bool {
        self.generators.windows(2).all(|w| poset.leq(&w[0], &w[1]))
    }

    pub fn contains<P: Poset<Elem = E> + ?Sized>(&self, poset: &P, x: &E) -> bool {
        self.generators.iter().any(|a| poset.leq(x, a))
    }

    pub fn meets<P, F>(&self, poset: &P, member: F) -> Meet<E>
    where
        P: Poset<Elem = E> + ?Sized,
        F: Fn(&E) -> bool,
    {
        if let Some(g) = self.generators.iter().find(|g| member(g)) {
            return Meet::Met(g.clone());
        }
        // the generators form a chain, so the ideal is the down-set of the top
        let Some(top) = self.generators.last() else {
            return Meet::Missed;
        };
        match poset.enumerate_below(top) {
            Some(below) => match below.into_iter().find(|x| member(x)) {
                Some(x) => Meet::Met(x),
                None => Meet::Missed,
            },
            None => Meet::Unknown,
        }
    }
}

pub fn ideal_membership<P: Poset + ?Sized>(
    poset: &P,
    ideal: &IdealRep<P::Elem>,
    x: &P::Elem,
) -> bool {
    ideal.contains(poset, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::{BinaryStrings, Divisibility};

    #[test]
    fn generator_is_member() {
        let ideal = IdealRep::new(vec![1u128, 2, 4, 12]);
        for g in [1u128, 2, 4, 12] {
            assert!(ideal_membership(&Divisibility, &ideal, &g));
        }
    }

    #[test]
    fn divisor_oracle() {
        let ideal = IdealRep::new(vec![1u128, 2, 4, 12]);
        // oracle: x belongs iff x divides 12 (the top of the chain)
        for x in 1u128..=30 {
            assert_eq!(
                ideal_membership(&Divisibility, &ideal, &x),
                12 % x == 0,
                "x = {x}"
            );
        }
        assert!(ideal_membership(&Divisibility, &ideal, &6));
        assert!(!ideal_membership(&Divisibility, &ideal, &8));
    }

    #[test]
    fn below_first_generator_is_member() {
        let ideal = IdealRep::new(vec![6u128, 30, 210]);
        assert!(ideal.contains(&Divisibility, &3));
        assert!(ideal.contains(&Divisibility, &1));
    }

    #[test]
    fn meets_uses_down_set() {
        let p = BinaryStrings;
        let ideal = IdealRep::new(vec![p.parse("0110").unwrap()]);
        let hit = ideal.meets(&p, |s| s.len() == 2);
        assert_eq!(hit, Meet::Met(p.parse("01").unwrap()));
        assert_eq!(ideal.meets(&p, |s| s.len() == 7), Meet::Missed);
    }
}
