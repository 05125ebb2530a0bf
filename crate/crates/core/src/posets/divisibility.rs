use num_integer::Integer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{CofinalFamily, CofinalSet, Poset};

/// Positive integers ordered by divisibility; the join is the lcm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Divisibility;

impl Poset for Divisibility {
    type Elem = u128;

    fn id(&self) -> String {
        "divisibility".into()
    }

    fn leq(&self, x: &u128, y: &u128) -> bool {
        *x != 0 && y % x == 0
    }

    fn enumerate(&self, budget: usize) -> Option<Vec<u128>> {
        Some((1..=budget as u128).collect())
    }

    fn enumerate_above(&self, x: &u128, budget: usize) -> Option<Vec<u128>> {
        Some(
            (1..=budget as u128)
                .filter_map(|k| x.checked_mul(k))
                .collect(),
        )
    }

    fn enumerate_below(&self, x: &u128) -> Option<Vec<u128>> {
        Some(divisors(*x))
    }

    fn join_witness(&self, x: &u128, y: &u128) -> Option<u128> {
        x.checked_mul(y / x.gcd(y))
    }

    fn compat(&self, _x: &u128, _y: &u128) -> Option<bool> {
        Some(true)
    }

    fn encode(&self, x: &u128) -> Value {
        encode_u128(*x)
    }

    fn decode(&self, value: &Value) -> Result<u128> {
        let x = decode_u128(value)?;
        if x == 0 {
            return Err(Error::Codec("divisibility elements are positive".into()));
        }
        Ok(x)
    }
}

pub(crate) fn encode_u128(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(x.to_string()),
    }
}

pub(crate) fn decode_u128(value: &Value) -> Result<u128> {
    if let Some(x) = value.as_u64() {
        return Ok(x as u128);
    }
    value
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Codec(format!("expected a positive integer, got {value}")))
}

/// Prime factorisation by trial division, ascending.
pub fn factorize(mut x: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= x {
        let mut e = 0;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

pub fn divisors(x: u128) -> Vec<u128> {
    if x == 0 {
        return Vec::new();
    }
    let mut divs = vec![1u128];
    for (p, e) in factorize(x) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = *d;
            next.push(q);
            for _ in 0..e {
                q *= p;
                next.push(q);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

/// The `n`-th prime, counting from `nth_prime(0) = 2`.
pub fn nth_prime(n: usize) -> u128 {
    let mut count = 0;
    let mut candidate = 2u128;
    loop {
        if is_prime(candidate) {
            if count == n {
                return candidate;
            }
            count += 1;
        }
        candidate += 1;
    }
}

pub fn is_prime(x: u128) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime not dividing `x`.
pub fn first_missing_prime(x: u128) -> u128 {
    (0..)
        .map(nth_prime)
        .find(|p| x % p != 0)
        .expect("infinitely many primes")
}

impl CofinalFamily<u128> {
    /// `D_n` = multiples of the `(n+1)`-th prime; the witness multiplies by it.
    pub fn prime_multiples(m: usize) -> Self {
        CofinalFamily::new(
            (0..m)
                .map(|n| {
                    let p = nth_prime(n);
                    CofinalSet::new(
                        format!("multiples of {p}"),
                        move |x: &u128| x % p == 0,
                        move |x: &u128| x * p,
                    )
                })
                .collect(),
        )
    }
}
