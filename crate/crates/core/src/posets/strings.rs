use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{CofinalFamily, CofinalSet, Poset};

/// A finite word over `{0, .., k-1}`.
pub type Word = Vec<u8>;

/// Words over a `k`-letter alphabet ordered by extension (`s <= t` iff `s`
/// is a prefix of `t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strings {
    alphabet: u8,
}

/// Binary words under extension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BinaryStrings;

impl Strings {
    pub fn new(alphabet: u8) -> Self {
        assert!(
            (2..=10).contains(&alphabet),
            "alphabet size must lie in 2..=10"
        );
        Strings { alphabet }
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        parse_word(s, self.alphabet)
    }
}

impl BinaryStrings {
    pub fn parse(&self, s: &str) -> Result<Word> {
        parse_word(s, 2)
    }
}

pub fn is_prefix(s: &[u8], t: &[u8]) -> bool {
    s.len() <= t.len() && t[..s.len()] == *s
}

pub fn render_word(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

fn parse_word(s: &str, k: u8) -> Result<Word> {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if (d as u8) < k => Ok(d as u8),
            _ => Err(Error::Codec(format!(
                "`{s}` is not a word over {k} letters"
            ))),
        })
        .collect()
}

/// Shortlex listing: by length, then lexicographically.
fn shortlex(k: u8, budget: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(budget);
    let mut layer: Vec<Word> = vec![Vec::new()];
    while out.len() < budget {
        for w in &layer {
            if out.len() == budget {
                break;
            }
            out.push(w.clone());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |d| {
                    let mut v = w.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

macro_rules! word_poset {
    ($ty:ty, $k:expr, $id:expr) => {
        impl Poset for $ty {
            type Elem = Word;

            fn id(&self) -> String {
                ($id)(self)
            }

            fn leq(&self, x: &Word, y: &Word) -> bool {
                is_prefix(x, y)
            }

            fn enumerate(&self, budget: usize) -> Option<Vec<Word>> {
                Some(shortlex(($k)(self), budget))
            }

            fn enumerate_above(&self, x: &Word, budget: usize) -> Option<Vec<Word>> {
                Some(
                    shortlex(($k)(self), budget)
                        .into_iter()
                        .map(|suffix| {
                            let mut w = x.clone();
                            w.extend(suffix);
                            w
                        })
                        .collect(),
                )
            }

            fn enumerate_below(&self, x: &Word) -> Option<Vec<Word>> {
                Some((0..=x.len()).map(|n| x[..n].to_vec()).collect())
            }

            fn join_witness(&self, x: &Word, y: &Word) -> Option<Word> {
                if is_prefix(x, y) {
                    Some(y.clone())
                } else if is_prefix(y, x) {
                    Some(x.clone())
                } else {
                    None
                }
            }

            fn compat(&self, x: &Word, y: &Word) -> Option<bool> {
                Some(is_prefix(x, y) || is_prefix(y, x))
            }

            fn encode(&self, x: &Word) -> Value {
                Value::String(render_word(x))
            }

            fn decode(&self, value: &Value) -> Result<Word> {
                let s = value
                    .as_str()
                    .ok_or_else(|| Error::Codec(format!("expected a word, got {value}")))?;
                parse_word(s, ($k)(self))
            }
        }
    };
}

word_poset!(
    BinaryStrings,
    |_: &BinaryStrings| 2u8,
    |_: &BinaryStrings| "binary_strings".to_string()
);
word_poset!(Strings, |s: &Strings| s.alphabet, |s: &Strings| format!(
    "strings:{}",
    s.alphabet
));

impl CofinalFamily<Word> {
    /// `D_n` = words of length at least `n + 1`; the witness pads with zeros.
    pub fn string_lengths(m: usize) -> Self {
        CofinalFamily::new(
            (0..m)
                .map(|n| {
                    CofinalSet::new(
                        format!("len>={}", n + 1),
                        move |w: &Word| w.len() > n,
                        move |w: &Word| {
                            let mut v = w.clone();
                            while v.len() <= n {
                                v.push(0);
                            }
                            v
                        },
                    )
                })
                .collect(),
        )
    }
}
