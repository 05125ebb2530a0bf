//! The alternating game on a partial order.
//!
//! Two players, Eve and Odd, build a chain `u0 <= u1 <= u2 <= ...` in a
//! poset. Eve owns the even indices and opens the game; Odd owns the odd
//! indices. Plays here are always finite, so the "result" of a play is its
//! [`Transcript`], and the ideal it generates is the down-set of the last
//! move (see [`IdealRep`]).

mod check;
mod generic;
mod ideal;
mod strategies;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use check::{evaluate, AlwaysPass, GenericityCheck, Verdict, WinCheck};
pub use generic::{generic_odd_strategy, CofinalFamily, CofinalSet, GenericOdd};
pub use ideal::{ideal_membership, IdealRep};
pub use strategies::{Echo, HistoryFn, MarkovFn, RandomEve};

/// Random source threaded through every play. ChaCha keeps plays
/// reproducible across platforms and `rand` releases.
pub type PlayRng = ChaCha8Rng;

pub fn play_rng(seed: u64) -> PlayRng {
    PlayRng::seed_from_u64(seed)
}

/// A partial order together with whatever finite views of it are cheap
/// to provide.
///
/// Only [`Poset::leq`] and the element codec are mandatory. The optional
/// views return `None` when the poset cannot provide them.
pub trait Poset: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    /// Stable identifier written into transcripts.
    fn id(&self) -> String;

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    /// The first `budget` elements of a fixed enumeration of the poset.
    fn enumerate(&self, _budget: usize) -> Option<Vec<Self::Elem>> {
        None
    }

    /// The first `budget` elements above `x`, `x` itself first when it is
    /// part of the enumeration.
    fn enumerate_above(&self, x: &Self::Elem, budget: usize) -> Option<Vec<Self::Elem>> {
        self.enumerate(budget)
            .map(|all| all.into_iter().filter(|y| self.leq(x, y)).collect())
    }

    /// The complete (finite) down-set of `x`, if the poset can list it.
    fn enumerate_below(&self, _x: &Self::Elem) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Some common upper bound of `x` and `y`.
    fn join_witness(&self, _x: &Self::Elem, _y: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Exact compatibility, when decidable.
    fn compat(&self, _x: &Self::Elem, _y: &Self::Elem) -> Option<bool> {
        None
    }

    fn encode(&self, x: &Self::Elem) -> Value;

    fn decode(&self, value: &Value) -> Result<Self::Elem>;
}

/// Compatibility with fallbacks: exact answer if the poset has one, then a
/// join witness, then a search through the first `budget` elements above
/// either argument.
pub fn compatible<P: Poset + ?Sized>(poset: &P, x: &P::Elem, y: &P::Elem, budget: usize) -> bool {
    if let Some(answer) = poset.compat(x, y) {
        return answer;
    }
    if poset.leq(x, y) || poset.leq(y, x) || poset.join_witness(x, y).is_some() {
        return true;
    }
    let search = |a: &P::Elem, b: &P::Elem| {
        poset
            .enumerate_above(a, budget)
            .is_some_and(|ups| ups.iter().any(|z| poset.leq(b, z)))
    };
    search(x, y) || search(y, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Player {
    Eve,
    Odd,
}

impl Player {
    /// Owner of the move at `index`.
    pub fn at(index: usize) -> Player {
        if index % 2 == 0 {
            Player::Eve
        } else {
            Player::Odd
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Odd,
            Player::Odd => Player::Eve,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Eve => f.write_str("Eve"),
            Player::Odd => f.write_str("Odd"),
        }
    }
}

/// The chain produced by a play. Who played each move is a function of
/// its index and is never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript<E> {
    pub poset_id: String,
    pub seed: u64,
    pub moves: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Transcript<E> {
    pub fn new(poset_id: impl Into<String>, seed: u64, moves: Vec<E>) -> Self {
        Transcript {
            poset_id: poset_id.into(),
            seed,
            moves,
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn last(&self) -> Option<&E> {
        self.moves.last()
    }

    pub fn player_at(&self, index: usize) -> Player {
        Player::at(index)
    }

    pub fn moves_of(&self, player: Player) -> impl Iterator<Item = (usize, &E)> {
        self.moves
            .iter()
            .enumerate()
            .filter(move |(i, _)| Player::at(*i) == player)
    }

    /// First index `n` where `u_n <= u_{n+1}` fails.
    pub fn chain_break<P: Poset<Elem = E> + ?Sized>(&self, poset: &P) -> Option<usize> {
        self.moves.windows(2).position(|w| !poset.leq(&w[0], &w[1]))
    }

    pub fn ideal(&self) -> IdealRep<E> {
        IdealRep::new(self.moves.clone())
    }

    pub fn prefix(&self, len: usize) -> Transcript<E> {
        Transcript {
            poset_id: self.poset_id.clone(),
            seed: self.seed,
            moves: self.moves[..len.min(self.moves.len())].to_vec(),
        }
    }

    pub fn to_json<P: Poset<Elem = E> + ?Sized>(&self, poset: &P) -> Value {
        json!({
            "poset_id": self.poset_id,
            "seed": self.seed,
            "moves": self.moves.iter().map(|m| poset.encode(m)).collect::<Vec<_>>(),
            "length": self.moves.len(),
        })
    }

    pub fn from_json<P: Poset<Elem = E> + ?Sized>(poset: &P, value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .ok_or_else(|| Error::Codec(format!("transcript is missing `{name}`")))
        };
        let poset_id = field("poset_id")?
            .as_str()
            .ok_or_else(|| Error::Codec("`poset_id` must be a string".into()))?
            .to_string();
        let seed = field("seed")?
            .as_u64()
            .ok_or_else(|| Error::Codec("`seed` must be an unsigned integer".into()))?;
        let moves = field("moves")?
            .as_array()
            .ok_or_else(|| Error::Codec("`moves` must be an array".into()))?
            .iter()
            .map(|m| poset.decode(m))
            .collect::<Result<Vec<_>>>()?;
        if let Some(length) = value.get("length").and_then(Value::as_u64) {
            if length as usize != moves.len() {
                return Err(Error::Codec(format!(
                    "`length` is {length} but {} moves are listed",
                    moves.len()
                )));
            }
        }
        Ok(Transcript {
            poset_id,
            seed,
            moves,
        })
    }
}

/// A player's way of choosing the next move.
///
/// `history` is the play so far; the returned element must lie above its
/// last entry (anywhere, for Eve's opening move). Implementations may keep
/// state between calls, so one instance serves one play at a time.
pub trait Strategy<P: Poset + ?Sized> {
    fn respond(&mut self, poset: &P, history: &[P::Elem], rng: &mut PlayRng) -> Result<P::Elem>;

    /// Forget everything learned from the current play.
    fn reset(&mut self) {}

    /// True when `respond` depends only on the last move and the number of
    /// moves so far.
    fn is_markov(&self) -> bool {
        false
    }
}

impl<P: Poset + ?Sized, S: Strategy<P> + ?Sized> Strategy<P> for Box<S> {
    fn respond(&mut self, poset: &P, history: &[P::Elem], rng: &mut PlayRng) -> Result<P::Elem> {
        (**self).respond(poset, history, rng)
    }

    fn reset(&mut self) {
        (**self).reset()
    }

    fn is_markov(&self) -> bool {
        (**self).is_markov()
    }
}

/// Plays `rounds` moves, Eve first. Both strategies are reset before the
/// first move.
pub fn run_play<P: Poset + ?Sized>(
    poset: &P,
    eve: &mut dyn Strategy<P>,
    odd: &mut dyn Strategy<P>,
    rounds: usize,
    seed: u64,
) -> Result<Transcript<P::Elem>> {
    if rounds == 0 {
        return Err(Error::InvalidArgument(
            "a play needs at least one round".into(),
        ));
    }
    eve.reset();
    odd.reset();
    let mut rng = play_rng(seed);
    let mut moves: Vec<P::Elem> = Vec::with_capacity(rounds);
    for index in 0..rounds {
        let player = Player::at(index);
        let next = match player {
            Player::Eve => eve.respond(poset, &moves, &mut rng)?,
            Player::Odd => odd.respond(poset, &moves, &mut rng)?,
        };
        if let Some(prev) = moves.last() {
            if !poset.leq(prev, &next) {
                return Err(Error::StrategyViolation { player, index });
            }
        }
        moves.push(next);
    }
    Ok(Transcript::new(poset.id(), seed, moves))
}
