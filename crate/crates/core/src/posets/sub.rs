use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::Poset;

/// The subset of a poset cut out by a membership predicate, with the
/// induced order.
pub struct SubPoset<P: Poset> {
    parent: P,
    id: String,
    member: Arc<dyn Fn(&P::Elem) -> bool + Send + Sync>,
}

impl<P: Poset + Clone> Clone for SubPoset<P> {
    fn clone(&self) -> Self {
        SubPoset {
            parent: self.parent.clone(),
            id: self.id.clone(),
            member: Arc::clone(&self.member),
        }
    }
}

impl<P: Poset + fmt::Debug> fmt::Debug for SubPoset<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubPoset")
            .field("parent", &self.parent)
            .field("id", &self.id)
            .finish()
    }
}

/// Widest parent enumeration consulted per requested element.
const SEARCH_FACTOR: usize = 64;

impl<P: Poset> SubPoset<P> {
    pub fn new(
        parent: P,
        id: impl Into<String>,
        member: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
    ) -> Self {
        SubPoset {
            parent,
            id: id.into(),
            member: Arc::new(member),
        }
    }

    pub fn parent(&self) -> &P {
        &self.parent
    }

    pub fn is_member(&self, x: &P::Elem) -> bool {
        (self.member)(x)
    }

    fn collect_members(
        &self,
        budget: usize,
        list: impl Fn(usize) -> Option<Vec<P::Elem>>,
    ) -> Option<Vec<P::Elem>> {
        let mut width = budget.max(1);
        loop {
            let all = list(width)?;
            let exhausted = all.len() < width;
            let members: Vec<P::Elem> = all
                .into_iter()
                .filter(|x| self.is_member(x))
                .take(budget)
                .collect();
            if members.len() == budget || exhausted || width >= budget.max(1) * SEARCH_FACTOR {
                return Some(members);
            }
            width *= 2;
        }
    }
}

impl<P: Poset> Poset for SubPoset<P> {
    type Elem = P::Elem;

    fn id(&self) -> String {
        self.id.clone()
    }

    fn leq(&self, x: &P::Elem, y: &P::Elem) -> bool {
        self.parent.leq(x, y)
    }

    fn enumerate(&self, budget: usize) -> Option<Vec<P::Elem>> {
        self.collect_members(budget, |w| self.parent.enumerate(w))
    }

    fn enumerate_above(&self, x: &P::Elem, budget: usize) -> Option<Vec<P::Elem>> {
        self.collect_members(budget, |w| self.parent.enumerate_above(x, w))
    }

    fn enumerate_below(&self, x: &P::Elem) -> Option<Vec<P::Elem>> {
        self.parent
            .enumerate_below(x)
            .map(|all| all.into_iter().filter(|y| self.is_member(y)).collect())
    }

    fn join_witness(&self, x: &P::Elem, y: &P::Elem) -> Option<P::Elem> {
        self.parent.join_witness(x, y).filter(|z| self.is_member(z))
    }

    fn compat(&self, x: &P::Elem, y: &P::Elem) -> Option<bool> {
        // incompatible in the parent means incompatible here; the converse
        // needs a member above both, which may not exist
        match self.parent.compat(x, y) {
            Some(false) => Some(false),
            _ => None,
        }
    }

    fn encode(&self, x: &P::Elem) -> Value {
        self.parent.encode(x)
    }

    fn decode(&self, value: &Value) -> Result<P::Elem> {
        let x = self.parent.decode(value)?;
        if !self.is_member(&x) {
            return Err(Error::Codec(format!(
                "{x:?} is not a member of {}",
                self.id
            )));
        }
        Ok(x)
    }
}
