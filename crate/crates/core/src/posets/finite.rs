use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::Poset;

/// A finite poset given by labelled elements and generating relations;
/// the order is the reflexive-transitive closure. Elements are indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    id: String,
    labels: Vec<String>,
    below: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Panics if the generated relation is not antisymmetric.
    pub fn new(id: impl Into<String>, labels: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
        let n = labels.len();
        let index = |l: &str| {
            labels
                .iter()
                .position(|x| *x == l)
                .unwrap_or_else(|| panic!("unknown label {l}"))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            leq[index(a)][index(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert!(
                    i == j || !(leq[i][j] && leq[j][i]),
                    "relation is not antisymmetric"
                );
            }
        }
        FinitePoset {
            id: id.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            below: leq,
        }
    }

    /// A chain in the listed order.
    pub fn chain(labels: &[&str]) -> FinitePoset {
        let covers: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        FinitePoset::new(format!("chain:{}", labels.len()), labels, &covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }
}

impl Poset for FinitePoset {
    type Elem = usize;

    fn id(&self) -> String {
        self.id.clone()
    }

    fn leq(&self, x: &usize, y: &usize) -> bool {
        self.below[*x][*y]
    }

    fn enumerate(&self, budget: usize) -> Option<Vec<usize>> {
        Some((0..self.len()).take(budget).collect())
    }

    fn enumerate_above(&self, x: &usize, budget: usize) -> Option<Vec<usize>> {
        Some(
            (0..self.len())
                .filter(|y| self.below[*x][*y])
                .take(budget)
                .collect(),
        )
    }

    fn enumerate_below(&self, x: &usize) -> Option<Vec<usize>> {
        Some((0..self.len()).filter(|y| self.below[*y][*x]).collect())
    }

    fn join_witness(&self, x: &usize, y: &usize) -> Option<usize> {
        (0..self.len()).find(|z| self.below[*x][*z] && self.below[*y][*z])
    }

    fn compat(&self, x: &usize, y: &usize) -> Option<bool> {
        Some(self.join_witness(x, y).is_some())
    }

    fn encode(&self, x: &usize) -> Value {
        Value::String(self.labels[*x].clone())
    }

    fn decode(&self, value: &Value) -> Result<usize> {
        value
            .as_str()
            .and_then(|s| self.element(s))
            .ok_or_else(|| Error::Codec(format!("{value} is not an element of {}", self.id)))
    }
}
