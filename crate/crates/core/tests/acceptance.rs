//! Acceptance suite: one PASS/FAIL line per criterion, each with its own
//! wall-clock limit. Runs as a plain binary (`harness = false`) so the
//! report is printed even when nothing fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bmgame::batch;
use bmgame::fraisse::{
    contains_complete_tree, extension_property_check, forest_odd_strategy, n_complete_embed,
    odd_markov_strategy, EveUniversality, Forests, FraisseClass, Graphs, GrowingPaths,
    LimitPresentation, LinearOrders, RadoGraph, RandomGraphChain, RandomStructureEve,
    StructurePoset, TargetChain,
};
use bmgame::game::{
    evaluate, generic_odd_strategy, play_rng, run_play, CofinalFamily, GenericityCheck, HistoryFn,
    MarkovFn, PlayRng, Poset, RandomEve, Strategy, WinCheck,
};
use bmgame::posets::{BinaryStrings, Divisibility, Interval, Strings, UnitIntervals, Word};
use bmgame::structs::{
    back_and_forth_equiv, check_embedding, find_embedding, isomorphic, Embedding, FinStructure,
    Vertex,
};
use bmgame::transfer::{
    dyadic_intervals, evens_in_divisibility, first_missing_prime_strategy, middle_half_strategy,
    pull_odd_strategy, push_odd_strategy, DominatingMap, InducedCheck,
};
use bmgame::tree::{
    replay_consistent, strategy_to_antichain_tree, Branch, Distance, MetricTree, TreeNode,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_poset() -> (Arc<dyn FraisseClass>, StructurePoset) {
    let class: Arc<dyn FraisseClass> = Arc::new(Graphs);
    (Arc::clone(&class), StructurePoset::new(class))
}

/// Final structure of a 16-round Markov play on graphs against a random
/// Eve, with the move after round 8.
fn markov_graph_play(seed: u64) -> Result<(FinStructure, FinStructure), String> {
    let (class, p) = graph_poset();
    let mut eve = RandomStructureEve::new(Arc::clone(&class), 2);
    let mut odd = odd_markov_strategy(class, RadoGraph);
    let t = run_play(&p, &mut eve, &mut odd, 16, seed).map_err(|e| format!("seed {seed}: {e}"))?;
    Ok((t.last().expect("16 moves").clone(), t.moves[7].clone()))
}

// 1. Generic meeting on binary strings.
fn generic_meeting() -> Outcome {
    let m = 10;
    let check = GenericityCheck::new(CofinalFamily::string_lengths(m));
    let verdicts = batch::map_seeds(0..50, |seed| {
        let mut odd = generic_odd_strategy(CofinalFamily::string_lengths(m));
        run_play(&BinaryStrings, &mut RandomEve::new(8), &mut odd, 20, seed)
            .map(|t| evaluate(&check, &BinaryStrings, &t, 0))
            .map_err(|e| format!("seed {seed}: {e}"))
    });
    for (seed, v) in verdicts.into_iter().enumerate() {
        let v = v?;
        ensure(v.is_pass(), || format!("seed {seed}: {v}"))?;
    }
    Ok("50/50 plays meet D0..D9".into())
}

// 2. Random-graph construction.
fn random_graph_construction() -> Outcome {
    let prefix = RadoGraph.prefix(8);
    let results = batch::map_seeds(0..20, |seed| -> Result<(), String> {
        let (last, round8) = markov_graph_play(seed)?;
        let report = extension_property_check(&Graphs, &last, 2, Some(round8.universe()));
        ensure(report.verdict.is_pass(), || {
            format!("seed {seed}: {}", report.verdict)
        })?;
        let e = find_embedding(&prefix, &last)
            .ok_or_else(|| format!("seed {seed}: prefix(8) does not embed"))?;
        ensure(check_embedding(&prefix, &last, &e), || {
            format!("seed {seed}: bad embedding")
        })
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("20/20 plays extend at bound 2 and contain prefix(8)".into())
}

// 3. Uniqueness: independent plays agree up to depth 3.
fn uniqueness() -> Outcome {
    let finals = batch::map_seeds(100..120, markov_graph_play);
    let finals: Vec<FinStructure> = finals
        .into_iter()
        .map(|r| r.map(|(last, _)| last))
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
    let agree = batch::map(&pairs, |&(a, b)| {
        back_and_forth_equiv(&finals[a], &finals[b], 3)
    });
    let bad: Vec<usize> = agree
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect();
    ensure(bad.is_empty(), || {
        format!("pairs {bad:?} differ at depth 3")
    })?;
    Ok("10/10 seed pairs are depth-3 equivalent".into())
}

// 4. Universality.
fn universality() -> Outcome {
    let mut targets: Vec<Arc<dyn TargetChain>> = vec![Arc::new(GrowingPaths)];
    targets.extend((1..10).map(|s| Arc::new(RandomGraphChain::new(s, 8)) as Arc<dyn TargetChain>));
    let rounds = 16;
    let results = batch::map(&targets, |target| -> Result<(), String> {
        let (class, p) = graph_poset();
        let mut eve = EveUniversality::new(Arc::clone(&class), Arc::clone(target));
        let mut odd = odd_markov_strategy(class, RadoGraph);
        let t = run_play(&p, &mut eve, &mut odd, rounds, 5)
            .map_err(|e| format!("{}: {e}", target.name()))?;
        let (n, e) = eve.embedding().ok_or("no recorded embedding")?;
        ensure(n == rounds / 2 - 1, || {
            format!("{}: recorded X_{n}", target.name())
        })?;
        ensure(
            check_embedding(&target.chain(n), t.last().expect("moves"), e),
            || format!("{}: e is not an embedding", target.name()),
        )
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("10/10 target chains embed (X_7 after 16 rounds)".into())
}

// 5. Antichain trees.
fn tree_case<P: Poset>(
    poset: &P,
    name: &str,
    make: &dyn Fn() -> Box<dyn Strategy<P>>,
) -> Result<(), String> {
    let (depth, budget) = (4, 8);
    let tree = strategy_to_antichain_tree(poset, make().as_mut(), depth, budget)
        .map_err(|e| format!("{name}: {e}"))?;
    let report = tree.verify(poset, budget);
    ensure(report.is_ok(), || format!("{name}: {report:?}"))?;
    ensure(tree.depth() == depth, || {
        format!("{name}: depth {}", tree.depth())
    })?;
    let replay =
        replay_consistent(&tree, poset, make().as_mut()).map_err(|e| format!("{name}: {e}"))?;
    ensure(replay, || format!("{name}: a branch does not replay"))
}

fn append(tail: &'static [u8]) -> Box<dyn Strategy<BinaryStrings>> {
    Box::new(MarkovFn::new(
        move |_: &BinaryStrings, last: Option<&Word>, _| {
            let mut w = last.cloned().unwrap_or_default();
            w.extend_from_slice(tail);
            Ok(w)
        },
    ))
}

fn antichain_trees() -> Outcome {
    let words: [(&str, &dyn Fn() -> Box<dyn Strategy<BinaryStrings>>); 3] = [
        ("binary/append-1", &|| append(&[1])),
        ("binary/append-01", &|| append(&[0, 1])),
        ("binary/pad-by-round", &|| {
            Box::new(HistoryFn::new(
                |_: &BinaryStrings, h: &[Word], _: &mut PlayRng| {
                    let mut w = h.last().cloned().unwrap_or_default();
                    w.extend(std::iter::repeat_n(1, h.len()));
                    Ok(w)
                },
            ))
        }),
    ];
    for (name, make) in words {
        tree_case(&BinaryStrings, name, make)?;
    }
    let ternary = Strings::new(3);
    let tern: [(&str, &dyn Fn() -> Box<dyn Strategy<Strings>>); 3] = [
        ("ternary/append-2", &|| {
            Box::new(MarkovFn::new(|_: &Strings, last: Option<&Word>, _| {
                let mut w = last.cloned().unwrap_or_default();
                w.push(2);
                Ok(w)
            }))
        }),
        ("ternary/repeat-last", &|| {
            Box::new(MarkovFn::new(|_: &Strings, last: Option<&Word>, _| {
                let mut w = last.cloned().unwrap_or_default();
                w.push(w.last().copied().unwrap_or(0));
                Ok(w)
            }))
        }),
        ("ternary/round-symbol", &|| {
            Box::new(MarkovFn::new(
                |_: &Strings, last: Option<&Word>, n: usize| {
                    let mut w = last.cloned().unwrap_or_default();
                    w.push((n % 3) as u8);
                    Ok(w)
                },
            ))
        }),
    ];
    for (name, make) in tern {
        tree_case(&ternary, name, make)?;
    }
    let third = |iv: &Interval, k: i128| -> Interval {
        let w = iv.length() / bmgame::posets::Rational::from_integer(3);
        Interval::new(
            iv.lo + w * bmgame::posets::Rational::from_integer(k),
            iv.lo + w * bmgame::posets::Rational::from_integer(k + 1),
        )
        .expect("nonempty")
    };
    let intervals: [(&str, &dyn Fn() -> Box<dyn Strategy<UnitIntervals>>); 3] = [
        ("intervals/middle-half", &|| {
            Box::new(middle_half_strategy::<UnitIntervals>())
        }),
        ("intervals/left-third", &|| {
            Box::new(MarkovFn::new(
                move |_: &UnitIntervals, last: Option<&Interval>, _| {
                    Ok(third(last.expect("Odd answers"), 0))
                },
            ))
        }),
        ("intervals/alternating-thirds", &|| {
            Box::new(MarkovFn::new(
                move |_: &UnitIntervals, last: Option<&Interval>, n: usize| {
                    Ok(third(
                        last.expect("Odd answers"),
                        if n % 4 == 1 { 0 } else { 2 },
                    ))
                },
            ))
        }),
    ];
    for (name, make) in intervals {
        tree_case(&UnitIntervals, name, make)?;
    }
    Ok("9/9 trees: antichain levels, budget-maximal, replay-consistent".into())
}

// 6. Transfer along dominating maps.
fn transfer_case<Q, P, C>(
    name: &str,
    map: &DominatingMap<Q, P>,
    make_check: fn() -> C,
    sigma: &(dyn Fn() -> Box<dyn Strategy<P> + Send> + Sync),
    pi: &(dyn Fn() -> Box<dyn Strategy<Q> + Send> + Sync),
) -> Result<(), String>
where
    Q: Poset + Clone + 'static,
    P: Poset + Clone + 'static,
    Q::Elem: 'static,
    P::Elem: 'static,
    C: WinCheck<P>,
{
    let check = make_check();
    ensure(check.is_monotone(), || {
        format!("{name}: check is not monotone")
    })?;
    let induced = InducedCheck::new(map.clone(), make_check());
    let (rounds, budget, eve_budget) = (10, 16, 12);
    let verdicts = batch::map_seeds(0..20, |seed| -> Result<(), String> {
        let fail = |what: &str, e: String| format!("{name} {what} seed {seed}: {e}");
        // sigma on P, then pulled to Q
        let direct = run_play(
            map.target(),
            &mut RandomEve::new(eve_budget),
            sigma().as_mut(),
            rounds,
            seed,
        )
        .map_err(|e| fail("sigma", e.to_string()))?;
        let v = check.verdict(map.target(), &direct, budget);
        ensure(v.is_pass(), || fail("sigma", v.to_string()))?;
        let mut pulled = pull_odd_strategy(map.clone(), sigma());
        let t = run_play(
            map.source(),
            &mut RandomEve::new(eve_budget),
            &mut pulled,
            rounds,
            seed,
        )
        .map_err(|e| fail("pulled", e.to_string()))?;
        let v = induced.verdict(map.source(), &t, budget);
        ensure(v.is_pass(), || fail("pulled", v.to_string()))?;
        // pi on Q, then pushed to P
        let direct = run_play(
            map.source(),
            &mut RandomEve::new(eve_budget),
            pi().as_mut(),
            rounds,
            seed,
        )
        .map_err(|e| fail("pi", e.to_string()))?;
        let v = induced.verdict(map.source(), &direct, budget);
        ensure(v.is_pass(), || fail("pi", v.to_string()))?;
        let mut pushed = push_odd_strategy(map.clone(), pi());
        let t = run_play(
            map.target(),
            &mut RandomEve::new(eve_budget),
            &mut pushed,
            rounds,
            seed,
        )
        .map_err(|e| fail("pushed", e.to_string()))?;
        let v = check.verdict(map.target(), &t, budget);
        ensure(v.is_pass(), || fail("pushed", v.to_string()))
    });
    verdicts
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map(|_| ())
}

fn transfer() -> Outcome {
    // five Odd moves: the first five primes divide, lengths drop below 2^-5
    const M: usize = 5;
    transfer_case(
        "evens",
        &evens_in_divisibility(),
        || GenericityCheck::new(CofinalFamily::<u128>::prime_multiples(M)),
        &|| Box::new(first_missing_prime_strategy::<Divisibility>()),
        &|| Box::new(first_missing_prime_strategy()),
    )?;
    transfer_case(
        "dyadic",
        &dyadic_intervals(),
        || GenericityCheck::new(CofinalFamily::<Interval>::interval_lengths(M)),
        &|| Box::new(middle_half_strategy::<UnitIntervals>()),
        &|| Box::new(middle_half_strategy()),
    )?;
    Ok("2 instances x 20 adversaries: sigma, pulled, pi, pushed all PASS".into())
}

// 7. Ultrametric inequality.

/// Ordered forests with at most `leaves` leaves and at most `levels`
/// levels, as nested child lists.
#[derive(Clone, Debug)]
struct Shape(Vec<Shape>);

fn forests(levels: usize, leaves: usize) -> Vec<Vec<Shape>> {
    fn leaf_count(s: &Shape) -> usize {
        if s.0.is_empty() {
            1
        } else {
            s.0.iter().map(leaf_count).sum()
        }
    }
    fn trees(levels: usize, leaves: usize) -> Vec<Shape> {
        let mut out = vec![Shape(Vec::new())];
        if levels > 1 {
            out.extend(
                forests(levels - 1, leaves)
                    .into_iter()
                    .filter(|f| !f.is_empty())
                    .map(Shape),
            );
        }
        out
    }
    if levels == 0 || leaves == 0 {
        return vec![Vec::new()];
    }
    let mut out = vec![Vec::new()];
    for head in trees(levels, leaves) {
        let used = leaf_count(&head);
        for rest in forests(levels, leaves - used) {
            if rest.len() < 3 {
                let mut f = vec![head.clone()];
                f.extend(rest);
                out.push(f);
            }
        }
    }
    out
}

fn to_tree(forest: &[Shape]) -> MetricTree<Word> {
    let mut levels: Vec<Vec<TreeNode<Word>>> = Vec::new();
    let mut frontier: Vec<(&Shape, Option<usize>, Word)> = forest
        .iter()
        .enumerate()
        .map(|(i, s)| (s, None, vec![i as u8]))
        .collect();
    while !frontier.is_empty() {
        let mut level = Vec::new();
        let mut next = Vec::new();
        for (idx, (shape, parent, word)) in frontier.into_iter().enumerate() {
            level.push(TreeNode {
                elem: word.clone(),
                parent,
                eve_move: None,
            });
            for (c, child) in shape.0.iter().enumerate() {
                let mut w = word.clone();
                w.push(c as u8);
                next.push((child, Some(idx), w));
            }
        }
        levels.push(level);
        frontier = next;
    }
    MetricTree::new(levels).expect("well-formed levels")
}

/// Distance from the words at the ends of two branches: the shared
/// prefix length counts shared nodes.
fn word_distance(tree: &MetricTree<Word>, x: &Branch, y: &Branch) -> Distance {
    let end = |b: &Branch| {
        tree.node(b.path.len() - 1, *b.path.last().expect("nonempty"))
            .elem
            .clone()
    };
    let (a, b) = (end(x), end(y));
    if a == b {
        return Distance::from_integer(0);
    }
    let shared = a.iter().zip(&b).take_while(|(p, q)| p == q).count() as u64;
    if shared == 0 {
        Distance::from_integer(2)
    } else {
        Distance::new(1, shared)
    }
}

fn ultrametric() -> Outcome {
    // Any three branches span a subforest with at most three leaves, so
    // checking every such forest covers every triple of every tree with
    // at most six levels and branching at most three.
    let shapes = forests(6, 3);
    let mut triples = 0u64;
    for f in shapes.iter().filter(|f| !f.is_empty()) {
        let tree = to_tree(f);
        let bs = tree.branches();
        for x in &bs {
            for y in &bs {
                let dxy = tree.branch_distance(x, y).map_err(|e| e.to_string())?;
                ensure(dxy == word_distance(&tree, x, y), || {
                    format!("{x:?} {y:?}: distance mismatch")
                })?;
                for z in &bs {
                    let dxz = tree.branch_distance(x, z).map_err(|e| e.to_string())?;
                    let dyz = tree.branch_distance(y, z).map_err(|e| e.to_string())?;
                    triples += 1;
                    ensure(dxz <= dxy.max(dyz), || {
                        format!("violation on {f:?}: {x:?} {y:?} {z:?}")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{} forests, {triples} triples, 0 violations",
        shapes.len() - 1
    ))
}

// 8. 2-completion of paths.
fn two_completion() -> Outcome {
    for n in 2..=6u32 {
        let p = FinStructure::path(n);
        let h = n_complete_embed(&p, 2).map_err(|e| format!("P{n}: {e}"))?;
        ensure(h.universe().iter().all(|&v| h.degree(v) == 2), || {
            format!("P{n}: degree != 2")
        })?;
        ensure(h.induced(p.universe()) == p, || {
            format!("P{n}: not induced")
        })?;
        for comp in h.components() {
            let c = h.induced(&comp.iter().copied().collect());
            ensure(
                isomorphic(&c, &FinStructure::cycle(comp.len() as u32)),
                || format!("P{n}: component {comp:?} is not a cycle"),
            )?;
        }
    }
    Ok("P2..P6 complete to unions of cycles".into())
}

// 9. Amalgamation.
fn random_member(class: &dyn FraisseClass, size: usize, rng: &mut PlayRng) -> FinStructure {
    let mut m = FinStructure::new(class.signature());
    for _ in 0..size {
        m = class.random_extension(&m, m.next_id(), rng);
    }
    m
}

/// `z` extended by up to three random vertices, then relabeled by a random
/// injection into `0..12`; returns the structure and the embedding of `z`.
fn random_extension_of(
    class: &dyn FraisseClass,
    z: &FinStructure,
    rng: &mut PlayRng,
) -> (FinStructure, Embedding) {
    let mut x = z.clone();
    for _ in 0..rng.gen_range(0..=3) {
        x = class.random_extension(&x, x.next_id(), rng);
    }
    let mut ids: Vec<Vertex> = (0..12).collect();
    ids.shuffle(rng);
    let relabel = x.vertices().into_iter().zip(ids).collect();
    let x = x.relabel(&relabel).expect("injective relabeling");
    let f = Embedding::new(z.vertices().into_iter().map(|v| (v, relabel[&v])).collect());
    (x, f)
}

fn amalgamation() -> Outcome {
    let classes: [Arc<dyn FraisseClass>; 2] = [Arc::new(Graphs), Arc::new(LinearOrders)];
    let mut count = 0;
    for class in &classes {
        let mut rng = play_rng(9);
        for i in 0..500 {
            let z = random_member(class.as_ref(), rng.gen_range(0..=4), &mut rng);
            let (x, f) = random_extension_of(class.as_ref(), &z, &mut rng);
            let (y, g) = random_extension_of(class.as_ref(), &z, &mut rng);
            let fail = |what: &str| format!("{} #{i}: {what}", class.name());
            let a = class
                .amalgamate(&z, &x, &y, &f, &g)
                .map_err(|e| fail(&e.to_string()))?;
            ensure(class.contains(&a.v), || fail("V outside the class"))?;
            ensure(
                check_embedding(&x, &a.v, &a.f2) && check_embedding(&y, &a.v, &a.g2),
                || fail("leg is not an embedding"),
            )?;
            let left = f.then(&a.f2).map_err(|e| fail(&e.to_string()))?;
            let right = g.then(&a.g2).map_err(|e| fail(&e.to_string()))?;
            ensure(left == right, || fail("square does not commute"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances commute and stay in the class"))
}

// 10. Forest game.
fn forest_game() -> Outcome {
    let class: Arc<dyn FraisseClass> = Arc::new(Forests);
    let p = StructurePoset::new(Arc::clone(&class));
    let stages = 8;
    let finals = batch::map_seeds(0..6, |seed| -> Result<FinStructure, String> {
        let mut eve = RandomStructureEve::new(Arc::clone(&class), 2);
        let t = run_play(&p, &mut eve, &mut forest_odd_strategy(), 2 * stages, seed)
            .map_err(|e| format!("seed {seed}: {e}"))?;
        for n in 1..=stages {
            let g = &t.moves[2 * n - 1];
            ensure(g.is_acyclic() && Forests.contains(g), || {
                format!("seed {seed} stage {n}: not a forest")
            })?;
            let comps = g.components();
            ensure(comps.len() >= n, || {
                format!("seed {seed} stage {n}: {} components", comps.len())
            })?;
            if n <= 3 {
                for c in &comps {
                    ensure(contains_complete_tree(g, c, n, n).is_some(), || {
                        format!("seed {seed} stage {n}: component without a complete tree")
                    })?;
                }
            }
        }
        Ok(t.last().expect("moves").clone())
    });
    let finals: Vec<FinStructure> = finals.into_iter().collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = vec![(0, 1), (2, 3), (4, 5)];
    let agree = batch::map(&pairs, |&(a, b)| {
        back_and_forth_equiv(&finals[a], &finals[b], 2)
    });
    ensure(agree.iter().all(|&ok| ok), || {
        format!("depth-2 disagreement: {agree:?}")
    })?;
    Ok("6 plays x 8 stages; 3 seed pairs depth-2 equivalent".into())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 generic meeting", Duration::from_secs(1), generic_meeting),
        (
            "2 random-graph construction",
            Duration::from_secs(30),
            random_graph_construction,
        ),
        (
            "3 uniqueness (depth-3 back-and-forth)",
            Duration::from_secs(60),
            uniqueness,
        ),
        ("4 universality", Duration::from_secs(10), universality),
        (
            "5 antichain trees",
            Duration::from_secs(10),
            antichain_trees,
        ),
        ("6 strategy transfer", Duration::from_secs(10), transfer),
        ("7 ultrametric", Duration::from_secs(5), ultrametric),
        ("8 2-completion", Duration::from_secs(1), two_completion),
        ("9 amalgamation", Duration::from_secs(5), amalgamation),
        ("10 forest game", Duration::from_secs(30), forest_game),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<40} {took:>10.2?} (limit {limit:?})  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<40} {took:>10.2?} (limit {limit:?})  {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
