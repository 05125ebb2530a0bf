//! Natural numbers written as hereditarily finite sets of bit positions.
//!
//! The number `n` is the set of positions of the one bits of `n`, each
//! position again such a set. Witness vertices of the random graph grow
//! like towers of twos, so plain machine integers overflow within a few
//! rounds; this representation shares structure through `Arc` and stays
//! small.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct AckNat(Arc<Vec<AckNat>>);

impl AckNat {
    pub fn zero() -> AckNat {
        AckNat(Arc::new(Vec::new()))
    }

    pub fn from_u64(n: u64) -> AckNat {
        let bits: Vec<AckNat> = (0..64u64)
            .rev()
            .filter(|i| n >> i & 1 == 1)
            .map(AckNat::from_u64)
            .collect();
        AckNat(Arc::new(bits))
    }

    /// Builds a number from its set of bit positions (any order, no repeats).
    pub fn from_bits(mut bits: Vec<AckNat>) -> AckNat {
        bits.sort_by(|a, b| b.cmp(a));
        bits.dedup();
        AckNat(Arc::new(bits))
    }

    pub fn to_u64(&self) -> Option<u64> {
        // only the top bit can be large; look at it before the rest
        let Some(top) = self.0.first() else {
            return Some(0);
        };
        let top = top.to_u64().filter(|i| *i < 64)?;
        self.0[1..]
            .iter()
            .try_fold(1u64 << top, |acc, b| Some(acc | 1 << b.to_u64()?))
    }

    /// Bit positions, highest first.
    pub fn bits(&self) -> &[AckNat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether bit `i` of `self` is set, i.e. `i ∈ self`.
    pub fn has_bit(&self, i: &AckNat) -> bool {
        self.0.binary_search_by(|b| i.cmp(b)).is_ok()
    }

    pub fn succ(&self) -> AckNat {
        // lowest clear bit k: set it and clear bits 0..k
        let mut k = AckNat::zero();
        let mut low = 0;
        for b in self.0.iter().rev() {
            if *b == k {
                low += 1;
                k = k.succ_small();
            } else {
                break;
            }
        }
        let mut bits: Vec<AckNat> = self.0[..self.0.len() - low].to_vec();
        bits.push(k);
        AckNat(Arc::new(bits))
    }

    // succ for the small counters used inside succ; the recursion depth is
    // the number of trailing ones, so it stays shallow
    fn succ_small(&self) -> AckNat {
        match self.to_u64() {
            Some(n) => AckNat::from_u64(n + 1),
            None => self.succ(),
        }
    }
}

impl PartialEq for AckNat {
    fn eq(&self, other: &AckNat) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AckNat {}

impl PartialOrd for AckNat {
    fn partial_cmp(&self, other: &AckNat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AckNat {
    /// Numeric order: bit lists are compared highest bit first.
    fn cmp(&self, other: &AckNat) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.iter().cmp(other.0.iter())
    }
}

impl fmt::Debug for AckNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AckNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u64() {
            Some(n) => write!(f, "{n}"),
            None => {
                // only the leading term is spelled out
                write!(f, "2^({})", self.0[0])?;
                if self.0.len() > 1 {
                    write!(f, "+[{} lower bits]", self.0.len() - 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Adjacency in the random graph: `a` and `b` are joined iff one is a bit
/// position of the other.
pub fn bit_adjacent(a: &AckNat, b: &AckNat) -> bool {
    match a.cmp(b) {
        Ordering::Less => b.has_bit(a),
        Ordering::Greater => a.has_bit(b),
        Ordering::Equal => false,
    }
}

/// A vertex above `floor` and above every vertex of `pos ∪ neg`, joined to
/// all of `pos` and to none of `neg`: the number with bit positions
/// `pos ∪ {e}`, `e = max(floor, 1 + max(pos ∪ neg))`.
pub fn rado_witness(pos: &[AckNat], neg: &[AckNat], floor: &AckNat) -> AckNat {
    let top = pos.iter().chain(neg).max();
    let e = match top {
        Some(t) => std::cmp::max(floor.clone(), t.succ()),
        None => floor.clone(),
    };
    let mut bits = pos.to_vec();
    bits.push(e);
    AckNat::from_bits(bits)
}
