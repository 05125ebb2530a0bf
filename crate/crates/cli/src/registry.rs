//! Targets (classes and posets), their strategies and checks, and the
//! text form of moves used by interactive play and Eve scripts.

use std::collections::BTreeSet;
use std::sync::Arc;

use bmgame::fraisse::{
    ClassKind, ExtensionCheck, FraisseClass, RandomStructureEve, StructurePoset,
};
use bmgame::game::{
    generic_odd_strategy, AlwaysPass, CofinalFamily, Echo, GenericityCheck, MarkovFn, Poset,
    RandomEve, Strategy, WinCheck,
};
use bmgame::posets::{
    render_word, BinaryStrings, Divisibility, Interval, Rational, Strings, UnitIntervals, Word,
};
use bmgame::structs::{to_dot, FinStructure, Vertex};
use bmgame::transfer::{first_missing_prime_strategy, middle_half_strategy};
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub type Boxed<P> = Box<dyn Strategy<P> + Send>;

/// Everything the commands need to know about one kind of target.
pub trait Target {
    type P: Poset;

    fn poset(&self) -> &Self::P;

    fn default_odd(&self) -> &'static str;

    /// Strategy ids usable by either player, besides `interactive` and
    /// `script:<file>` for Eve.
    fn strategy(&self, id: &str, cfg: &RunConfig) -> Result<Boxed<Self::P>, CliError>;

    fn default_check(&self, cfg: &RunConfig) -> String;

    fn check(&self, id: &str, cfg: &RunConfig) -> Result<Box<dyn WinCheck<Self::P>>, CliError>;

    /// One Eve move in text form, relative to the current position.
    fn parse_move(
        &self,
        line: &str,
        last: Option<&<Self::P as Poset>::Elem>,
    ) -> Result<<Self::P as Poset>::Elem, String>;

    fn render(&self, x: &<Self::P as Poset>::Elem) -> String;

    fn has_dot(&self) -> bool {
        false
    }

    fn to_dot(&self, _x: &<Self::P as Poset>::Elem) -> Option<String> {
        None
    }
}

fn unknown(kind: &str, id: &str) -> CliError {
    CliError::Usage(format!("unknown {kind} `{id}` for this target"))
}

/// `generic` or `generic:M`; bare `generic` uses Odd's move count.
fn generic_size(id: &str, cfg: &RunConfig) -> Result<Option<usize>, CliError> {
    match id.split_once(':') {
        None if id == "generic" => Ok(Some(cfg.rounds / 2)),
        Some(("generic", m)) => m
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("bad size in `{id}`"))),
        _ => Ok(None),
    }
}

/// Strategies every abstract poset supports.
fn common_strategy<P>(
    id: &str,
    cfg: &RunConfig,
    family: impl Fn(usize) -> CofinalFamily<P::Elem>,
) -> Result<Option<Boxed<P>>, CliError>
where
    P: Poset + 'static,
{
    if let Some(m) = generic_size(id, cfg)? {
        return Ok(Some(Box::new(generic_odd_strategy(family(m)))));
    }
    Ok(match id {
        "echo" => Some(Box::new(Echo)),
        "random" => Some(Box::new(RandomEve::new(cfg.budget))),
        _ => None,
    })
}

fn common_check<P>(
    id: &str,
    cfg: &RunConfig,
    family: impl Fn(usize) -> CofinalFamily<P::Elem>,
) -> Result<Box<dyn WinCheck<P>>, CliError>
where
    P: Poset + 'static,
{
    if id == "always" {
        return Ok(Box::new(AlwaysPass));
    }
    match generic_size(id, cfg)? {
        Some(m) => Ok(Box::new(GenericityCheck::new(family(m)))),
        None => Err(unknown("check", id)),
    }
}

/// A line naming an element through the poset's JSON encoding. Bare
/// text that is not JSON is read as a string; `lo hi` as a pair.
fn decode_line<P: Poset>(poset: &P, line: &str) -> Result<P::Elem, String> {
    let value = serde_json::from_str::<Value>(line).unwrap_or_else(|_| {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [lo, hi] => Value::Array(vec![Value::from(*lo), Value::from(*hi)]),
            _ => Value::String(line.to_string()),
        }
    });
    poset.decode(&value).map_err(|e| e.to_string())
}

fn above<P: Poset>(poset: &P, last: Option<&P::Elem>, x: P::Elem) -> Result<P::Elem, String> {
    match last {
        Some(l) if !poset.leq(l, &x) => Err("the move must lie above the current position".into()),
        _ => Ok(x),
    }
}

/// Shared parsing for the abstract posets: an empty line stalls.
fn poset_move<P: Poset>(
    poset: &P,
    line: &str,
    last: Option<&P::Elem>,
    bottom: P::Elem,
) -> Result<P::Elem, String> {
    if line.is_empty() {
        return Ok(last.cloned().unwrap_or(bottom));
    }
    above(poset, last, decode_line(poset, line)?)
}

fn append_strategy<P: Poset<Elem = Word> + 'static>(suffix: Word) -> Boxed<P> {
    Box::new(MarkovFn::new(move |_: &P, last: Option<&Word>, _| {
        let mut w = last.cloned().unwrap_or_default();
        w.extend_from_slice(&suffix);
        Ok(w)
    }))
}

/// Words over `k` letters ordered by extension.
pub struct Words<P> {
    pub poset: P,
}

impl<P: Poset<Elem = Word> + 'static> Target for Words<P> {
    type P = P;

    fn poset(&self) -> &P {
        &self.poset
    }

    fn default_odd(&self) -> &'static str {
        "generic"
    }

    fn strategy(&self, id: &str, cfg: &RunConfig) -> Result<Boxed<P>, CliError> {
        if let Some(s) = common_strategy(id, cfg, CofinalFamily::string_lengths)? {
            return Ok(s);
        }
        match id.split_once(':') {
            Some(("append", w)) => {
                let suffix = self
                    .poset
                    .decode(&Value::String(w.into()))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(append_strategy(suffix))
            }
            _ => Err(unknown("strategy", id)),
        }
    }

    fn default_check(&self, _cfg: &RunConfig) -> String {
        "generic".into()
    }

    fn check(&self, id: &str, cfg: &RunConfig) -> Result<Box<dyn WinCheck<P>>, CliError> {
        common_check(id, cfg, CofinalFamily::string_lengths)
    }

    fn parse_move(&self, line: &str, last: Option<&Word>) -> Result<Word, String> {
        poset_move(&self.poset, line, last, Word::new())
    }

    fn render(&self, x: &Word) -> String {
        if x.is_empty() {
            "(empty word)".into()
        } else {
            render_word(x)
        }
    }
}

pub struct Divisors;

impl Target for Divisors {
    type P = Divisibility;

    fn poset(&self) -> &Divisibility {
        &Divisibility
    }

    fn default_odd(&self) -> &'static str {
        "generic"
    }

    fn strategy(&self, id: &str, cfg: &RunConfig) -> Result<Boxed<Divisibility>, CliError> {
        if let Some(s) = common_strategy(id, cfg, CofinalFamily::prime_multiples)? {
            return Ok(s);
        }
        match id.split_once(':') {
            None if id == "first_missing_prime" => Ok(Box::new(first_missing_prime_strategy())),
            Some(("times", k)) => {
                let k: u128 = k
                    .parse()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| CliError::Usage(format!("bad factor in `{id}`")))?;
                Ok(Box::new(MarkovFn::new(
                    move |_: &Divisibility, last: Option<&u128>, _| {
                        last.copied().unwrap_or(1).checked_mul(k).ok_or_else(|| {
                            bmgame::Error::InvalidArgument("product overflows u128".into())
                        })
                    },
                )))
            }
            _ => Err(unknown("strategy", id)),
        }
    }

    fn default_check(&self, _cfg: &RunConfig) -> String {
        "generic".into()
    }

    fn check(
        &self,
        id: &str,
        cfg: &RunConfig,
    ) -> Result<Box<dyn WinCheck<Divisibility>>, CliError> {
        common_check(id, cfg, CofinalFamily::prime_multiples)
    }

    fn parse_move(&self, line: &str, last: Option<&u128>) -> Result<u128, String> {
        poset_move(&Divisibility, line, last, 1)
    }

    fn render(&self, x: &u128) -> String {
        x.to_string()
    }
}

pub struct Intervals;

impl Target for Intervals {
    type P = UnitIntervals;

    fn poset(&self) -> &UnitIntervals {
        &UnitIntervals
    }

    fn default_odd(&self) -> &'static str {
        "generic"
    }

    fn strategy(&self, id: &str, cfg: &RunConfig) -> Result<Boxed<UnitIntervals>, CliError> {
        if let Some(s) = common_strategy(id, cfg, CofinalFamily::interval_lengths)? {
            return Ok(s);
        }
        match id {
            "middle_half" => Ok(Box::new(middle_half_strategy())),
            _ => Err(unknown("strategy", id)),
        }
    }

    fn default_check(&self, _cfg: &RunConfig) -> String {
        "generic".into()
    }

    fn check(
        &self,
        id: &str,
        cfg: &RunConfig,
    ) -> Result<Box<dyn WinCheck<UnitIntervals>>, CliError> {
        common_check(id, cfg, CofinalFamily::interval_lengths)
    }

    fn parse_move(&self, line: &str, last: Option<&Interval>) -> Result<Interval, String> {
        let unit =
            Interval::new(Rational::from_integer(0), Rational::from_integer(1)).expect("0 < 1");
        poset_move(&UnitIntervals, line, last, unit)
    }

    fn render(&self, x: &Interval) -> String {
        format!("[{}, {}]", x.lo, x.hi)
    }
}

/// A class of finite structures under induced substructure.
pub struct Class {
    pub kind: ClassKind,
    pub class: Arc<dyn FraisseClass>,
    pub poset: StructurePoset,
}

impl Class {
    pub fn new(kind: ClassKind) -> Class {
        let class = kind.build();
        Class {
            kind,
            poset: StructurePoset::new(Arc::clone(&class)),
            class,
        }
    }
}

/// Token grammar for class moves: `<id>` adds a vertex, `<id>:<a>,<b>`
/// adds one joined to `a` and `b` (graph classes), `<id>@<pos>` inserts
/// one at position `pos` of the order (linear orders).
fn extend(
    class: &dyn FraisseClass,
    line: &str,
    last: Option<&FinStructure>,
) -> Result<FinStructure, String> {
    let start = last
        .cloned()
        .unwrap_or_else(|| FinStructure::new(class.signature()));
    let sig = start.signature().clone();
    let is_order = sig.relations() == bmgame::structs::Signature::linear_order().relations();
    let mut fresh = BTreeSet::new();
    let mut edges = Vec::new();
    let mut listing = start.order_listing();
    let mut out = start.clone();
    for token in line.split_whitespace() {
        let (id, rest) = match token.find([':', '@']) {
            Some(i) => (&token[..i], Some((&token[i..i + 1], &token[i + 1..]))),
            None => (token, None),
        };
        let v: Vertex = id
            .parse()
            .map_err(|_| format!("`{id}` is not a vertex id"))?;
        if start.universe().contains(&v) || !fresh.insert(v) {
            return Err(format!("vertex {v} already exists"));
        }
        match rest {
            None if is_order => return Err(format!("`{token}`: orders need <id>@<pos>")),
            None => {}
            Some((":", nbrs)) if sig.is_graph() => {
                for n in nbrs.split(',').filter(|s| !s.is_empty()) {
                    let n: Vertex = n.parse().map_err(|_| format!("`{n}` is not a vertex id"))?;
                    edges.push((v, n));
                }
            }
            Some(("@", pos)) if is_order => {
                let pos: usize = pos
                    .parse()
                    .map_err(|_| format!("`{pos}` is not a position"))?;
                if pos > listing.len() {
                    return Err(format!(
                        "position {pos} is past the end ({})",
                        listing.len()
                    ));
                }
                listing.insert(pos, v);
            }
            Some(_) => return Err(format!("`{token}` does not fit this class")),
        }
        out.add_vertex(v);
    }
    if is_order {
        out = FinStructure::linear_order(&listing);
    }
    for (a, b) in edges {
        if !out.universe().contains(&b) || a == b {
            return Err(format!("no vertex {b} to join {a} to"));
        }
        out.add_edge(a, b).map_err(|e| e.to_string())?;
    }
    if !class.contains(&out) {
        return Err(format!("the result is not in {}", class.name()));
    }
    Ok(out)
}

impl Target for Class {
    type P = StructurePoset;

    fn poset(&self) -> &StructurePoset {
        &self.poset
    }

    fn default_odd(&self) -> &'static str {
        "markov"
    }

    fn strategy(&self, id: &str, _cfg: &RunConfig) -> Result<Boxed<StructurePoset>, CliError> {
        match id {
            "markov" => Ok(self.kind.odd_strategy()),
            "random" => Ok(Box::new(RandomStructureEve::new(
                Arc::clone(&self.class),
                2,
            ))),
            "echo" => Ok(Box::new(Echo)),
            _ => Err(unknown("strategy", id)),
        }
    }

    fn default_check(&self, _cfg: &RunConfig) -> String {
        if self.kind.has_limit() {
            "extension:2".into()
        } else {
            "always".into()
        }
    }

    fn check(
        &self,
        id: &str,
        _cfg: &RunConfig,
    ) -> Result<Box<dyn WinCheck<StructurePoset>>, CliError> {
        match id.split_once(':') {
            None if id == "always" => Ok(Box::new(AlwaysPass)),
            Some(("extension", k)) => {
                let k = k
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad bound in `{id}`")))?;
                Ok(Box::new(ExtensionCheck::new(k)))
            }
            _ => Err(unknown("check", id)),
        }
    }

    fn parse_move(&self, line: &str, last: Option<&FinStructure>) -> Result<FinStructure, String> {
        extend(self.class.as_ref(), line, last)
    }

    fn render(&self, x: &FinStructure) -> String {
        let ids = |vs: &[Vertex]| vs.iter().map(Vertex::to_string).collect::<Vec<_>>();
        if x.signature().is_graph() {
            let edges: Vec<String> = x.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            format!(
                "vertices {{{}}} edges {{{}}}",
                ids(&x.vertices()).join(" "),
                edges.join(" ")
            )
        } else if x.signature().relations().is_empty() {
            format!("elements {{{}}}", ids(&x.vertices()).join(" "))
        } else {
            format!("order {}", ids(&x.order_listing()).join(" < "))
        }
    }

    fn has_dot(&self) -> bool {
        true
    }

    fn to_dot(&self, x: &FinStructure) -> Option<String> {
        Some(to_dot(x))
    }
}

/// Parsed target id.
pub enum AnyTarget {
    Class(Class),
    Binary(Words<BinaryStrings>),
    Strings(Words<Strings>),
    Divisors(Divisors),
    Intervals(Intervals),
}

impl AnyTarget {
    pub fn parse(id: &str) -> Result<AnyTarget, CliError> {
        if let Ok(kind) = id.parse::<ClassKind>() {
            return Ok(AnyTarget::Class(Class::new(kind)));
        }
        match id.split_once(':') {
            None => match id {
                "binary_strings" => Ok(AnyTarget::Binary(Words {
                    poset: BinaryStrings,
                })),
                "divisibility" => Ok(AnyTarget::Divisors(Divisors)),
                "unit_intervals" | "rational_intervals" => Ok(AnyTarget::Intervals(Intervals)),
                _ => Err(unknown_target(id)),
            },
            Some(("strings", k)) => match k.parse::<u8>() {
                Ok(k) if (2..=10).contains(&k) => Ok(AnyTarget::Strings(Words {
                    poset: Strings::new(k),
                })),
                _ => Err(CliError::Usage(format!(
                    "alphabet size in `{id}` must be 2..=10"
                ))),
            },
            _ => Err(unknown_target(id)),
        }
    }
}

fn unknown_target(id: &str) -> CliError {
    CliError::Usage(format!(
        "unknown class or poset `{id}`; expected one of {}, binary_strings, strings:K, divisibility, unit_intervals",
        ClassKind::NAMES.join(", ")
    ))
}

/// Runs `$body` with `$t` bound to the concrete target.
#[macro_export]
macro_rules! with_target {
    ($any:expr, $t:ident => $body:expr) => {
        match $any {
            $crate::registry::AnyTarget::Class($t) => $body,
            $crate::registry::AnyTarget::Binary($t) => $body,
            $crate::registry::AnyTarget::Strings($t) => $body,
            $crate::registry::AnyTarget::Divisors($t) => $body,
            $crate::registry::AnyTarget::Intervals($t) => $body,
        }
    };
}
