use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{CofinalFamily, CofinalSet, Poset};

pub type Rational = Ratio<i128>;

/// Nonempty open interval `(lo, hi)` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Option<Interval> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn from_ints(a: i128, b: i128, den: i128) -> Interval {
        Interval::new(Ratio::new(a, den), Ratio::new(b, den)).expect("a < b")
    }

    pub fn unit() -> Interval {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn length(&self) -> Rational {
        self.hi - self.lo
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Image of `self`, read as a subinterval of `(0, 1)`, inside `outer`.
    pub fn scaled_into(&self, outer: &Interval) -> Interval {
        let len = outer.length();
        Interval {
            lo: outer.lo + self.lo * len,
            hi: outer.lo + self.hi * len,
        }
    }

    pub fn is_dyadic(&self) -> bool {
        is_dyadic(&self.lo) && is_dyadic(&self.hi)
    }

    /// The middle half `(lo + L/4, hi - L/4)`.
    pub fn middle_half(&self) -> Interval {
        let quarter = self.length() / Rational::from_integer(4);
        Interval {
            lo: self.lo + quarter,
            hi: self.hi - quarter,
        }
    }

    /// A dyadic interval `(k/2^m, (k+1)/2^m)` inside `self`.
    pub fn dyadic_inside(&self) -> Interval {
        let len = self.length();
        let mut scale: i128 = 1;
        // two cells of width 1/scale must fit
        while Rational::new(2, scale) > len {
            scale *= 2;
        }
        let k = (self.lo * Rational::from_integer(scale))
            .ceil()
            .to_integer();
        Interval::from_ints(k, k + 1, scale)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

pub fn is_dyadic(q: &Rational) -> bool {
    let d = *q.denom();
    d > 0 && (d & (d - 1)) == 0
}

/// Open subintervals of `(0, 1)` with rational endpoints, ordered by
/// reverse inclusion: `I <= J` iff `J` is inside `I`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UnitIntervals;

/// Intervals `(a/n, b/n)` listed by denominator `n`, skipping repeats.
fn grid_intervals(budget: usize) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::with_capacity(budget);
    let mut n: i128 = 1;
    while out.len() < budget {
        for a in 0..n {
            for b in (a + 1)..=n {
                if out.len() == budget {
                    return out;
                }
                // (a/n, b/n) already listed at a smaller denominator
                if a.gcd(&b).gcd(&n) > 1 {
                    continue;
                }
                out.push(Interval::from_ints(a, b, n));
            }
        }
        n += 1;
    }
    out
}

impl Poset for UnitIntervals {
    type Elem = Interval;

    fn id(&self) -> String {
        "rational_intervals".into()
    }

    fn leq(&self, x: &Interval, y: &Interval) -> bool {
        x.contains_interval(y)
    }

    fn enumerate(&self, budget: usize) -> Option<Vec<Interval>> {
        Some(grid_intervals(budget))
    }

    fn enumerate_above(&self, x: &Interval, budget: usize) -> Option<Vec<Interval>> {
        Some(
            grid_intervals(budget)
                .iter()
                .map(|g| g.scaled_into(x))
                .collect(),
        )
    }

    fn join_witness(&self, x: &Interval, y: &Interval) -> Option<Interval> {
        x.intersect(y)
    }

    fn compat(&self, x: &Interval, y: &Interval) -> Option<bool> {
        Some(x.intersect(y).is_some())
    }

    fn encode(&self, x: &Interval) -> Value {
        json!([x.lo.to_string(), x.hi.to_string()])
    }

    fn decode(&self, value: &Value) -> Result<Interval> {
        let bad = || Error::Codec(format!("expected [\"lo\", \"hi\"], got {value}"));
        let pair = value.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let parse = |v: &Value| -> Result<Rational> {
            v.as_str()
                .and_then(|s| s.parse::<Rational>().ok())
                .ok_or_else(bad)
        };
        let iv = Interval::new(parse(&pair[0])?, parse(&pair[1])?).ok_or_else(bad)?;
        if !Interval::unit().contains_interval(&iv) {
            return Err(Error::Codec(format!("{iv} is not inside (0, 1)")));
        }
        Ok(iv)
    }
}

impl CofinalFamily<Interval> {
    /// `D_n` = intervals of length at most `2^-(n+1)`; the witness keeps the
    /// left end and shortens.
    pub fn interval_lengths(m: usize) -> Self {
        CofinalFamily::new(
            (0..m)
                .map(|n| {
                    let cap = Rational::new(1, 1i128 << (n + 1));
                    CofinalSet::new(
                        format!("length<=2^-{}", n + 1),
                        move |iv: &Interval| iv.length() <= cap,
                        move |iv: &Interval| {
                            if iv.length() <= cap {
                                iv.clone()
                            } else {
                                Interval {
                                    lo: iv.lo,
                                    hi: iv.lo + cap,
                                }
                            }
                        },
                    )
                })
                .collect(),
        )
    }
}
