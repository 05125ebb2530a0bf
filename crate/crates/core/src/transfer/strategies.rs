use super::DominatingMap;
use crate::error::{Error, Result};
use crate::game::{PlayRng, Player, Poset, Strategy};

/// A `Q`-side strategy driven by a `P`-side strategy `sigma`.
///
/// The opponent's `Q` moves enter the shadow play in `P` through `phi`;
/// `sigma` answers there, and the answer is pulled back with the domination
/// witness above the opponent's move. When the pulled strategy has to
/// open (playing Eve), `sigma`'s opening is pulled back with a cofinality
/// witness instead.
pub struct PulledStrategy<Q: Poset, P: Poset> {
    map: DominatingMap<Q, P>,
    sigma: Box<dyn Strategy<P> + Send>,
    shadow: Vec<P::Elem>,
}

pub fn pull_odd_strategy<Q: Poset, P: Poset>(
    map: DominatingMap<Q, P>,
    sigma: Box<dyn Strategy<P> + Send>,
) -> PulledStrategy<Q, P> {
    PulledStrategy {
        map,
        sigma,
        shadow: Vec::new(),
    }
}

impl<Q: Poset, P: Poset> PulledStrategy<Q, P> {
    /// The play in `P` that `sigma` has seen so far.
    pub fn shadow_play(&self) -> &[P::Elem] {
        &self.shadow
    }
}

fn sigma_move<P: Poset>(
    poset: &P,
    sigma: &mut dyn Strategy<P>,
    shadow: &[P::Elem],
    rng: &mut PlayRng,
) -> Result<P::Elem> {
    let u = sigma.respond(poset, shadow, rng)?;
    if let Some(prev) = shadow.last() {
        if !poset.leq(prev, &u) {
            return Err(Error::StrategyViolation {
                player: Player::at(shadow.len()),
                index: shadow.len(),
            });
        }
    }
    Ok(u)
}

impl<Q: Poset, P: Poset> Strategy<Q> for PulledStrategy<Q, P> {
    fn respond(&mut self, _poset: &Q, history: &[Q::Elem], rng: &mut PlayRng) -> Result<Q::Elem> {
        match history.last() {
            None => {
                let u = sigma_move(self.map.target(), self.sigma.as_mut(), &self.shadow, rng)?;
                self.shadow.push(u.clone());
                self.map.cofinal_witness(&u)
            }
            Some(last) => {
                self.shadow.push(self.map.phi(last));
                let u = sigma_move(self.map.target(), self.sigma.as_mut(), &self.shadow, rng)?;
                self.shadow.push(u.clone());
                self.map.dominate_above(last, &u)
            }
        }
    }

    fn reset(&mut self) {
        self.sigma.reset();
        self.shadow.clear();
    }
}

/// A `P`-side strategy driven by a `Q`-side strategy `pi`.
///
/// Each opponent move `u` in `P` is lifted to the shadow play in `Q` (by a
/// cofinality witness the first time, by a domination witness above the previous
/// shadow move afterwards); `pi` answers in `Q` and the answer is pushed
/// forward with `phi`.
pub struct PushedStrategy<Q: Poset, P: Poset> {
    map: DominatingMap<Q, P>,
    pi: Box<dyn Strategy<Q> + Send>,
    shadow: Vec<Q::Elem>,
}

pub fn push_odd_strategy<Q: Poset, P: Poset>(
    map: DominatingMap<Q, P>,
    pi: Box<dyn Strategy<Q> + Send>,
) -> PushedStrategy<Q, P> {
    PushedStrategy {
        map,
        pi,
        shadow: Vec::new(),
    }
}

impl<Q: Poset, P: Poset> PushedStrategy<Q, P> {
    pub fn shadow_play(&self) -> &[Q::Elem] {
        &self.shadow
    }
}

impl<Q: Poset, P: Poset> Strategy<P> for PushedStrategy<Q, P> {
    fn respond(&mut self, _poset: &P, history: &[P::Elem], rng: &mut PlayRng) -> Result<P::Elem> {
        if let Some(u) = history.last() {
            let v = match self.shadow.last() {
                None => self.map.cofinal_witness(u)?,
                Some(prev) => self.map.dominate_above(prev, u)?,
            };
            self.shadow.push(v);
        }
        let w = self.pi.respond(self.map.source(), &self.shadow, rng)?;
        if let Some(prev) = self.shadow.last() {
            if !self.map.source().leq(prev, &w) {
                return Err(Error::StrategyViolation {
                    player: Player::at(self.shadow.len()),
                    index: self.shadow.len(),
                });
            }
        }
        let image = self.map.phi(&w);
        self.shadow.push(w);
        Ok(image)
    }

    fn reset(&mut self) {
        self.pi.reset();
        self.shadow.clear();
    }
}
