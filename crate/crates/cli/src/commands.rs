use std::io::{BufReader, Write};
use std::path::Path;

use bmgame::game::{evaluate, run_play, Poset, Strategy, Transcript, Verdict, WinCheck};
use bmgame::tree::strategy_to_antichain_tree;

use crate::config::{Format, RunConfig};
use crate::error::{exit, CliError};
use crate::registry::{AnyTarget, Target};
use crate::text_eve::TextEve;
use crate::with_target;

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn read_in(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn report(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Pass => println!("verdict: PASS"),
        Verdict::Fail(why) => println!("verdict: FAIL ({why})"),
        Verdict::Undecided(why) => println!("verdict: UNDECIDED ({why})"),
    }
    match verdict {
        Verdict::Pass => exit::PASS,
        Verdict::Fail(_) => exit::FAIL,
        Verdict::Undecided(_) => exit::UNDECIDED,
    }
}

fn checker<T: Target>(t: &T, cfg: &RunConfig) -> Result<Box<dyn WinCheck<T::P>>, CliError> {
    let id = cfg.check.clone().unwrap_or_else(|| t.default_check(cfg));
    t.check(&id, cfg)
}

fn eve<'t, T: Target>(
    t: &'t T,
    cfg: &RunConfig,
    id: &str,
) -> Result<Box<dyn Strategy<T::P> + 't>, CliError> {
    if id == "interactive" {
        let input = BufReader::new(std::io::stdin());
        return Ok(Box::new(TextEve::terminal(t, Box::new(input))));
    }
    if let Some(path) = id.strip_prefix("script:") {
        return Ok(Box::new(TextEve::script(t, &read_in(Path::new(path))?)));
    }
    Ok(t.strategy(id, cfg)?)
}

fn run<T: Target>(
    t: &T,
    cfg: &RunConfig,
    eve_id: &str,
) -> Result<Transcript<<T::P as Poset>::Elem>, CliError> {
    let odd_id = cfg.odd.as_deref().unwrap_or(t.default_odd());
    let mut odd = t.strategy(odd_id, cfg)?;
    let mut eve = eve(t, cfg, eve_id)?;
    Ok(run_play(
        t.poset(),
        &mut *eve,
        &mut *odd,
        cfg.rounds,
        cfg.seed,
    )?)
}

fn transcript_text<P: Poset>(poset: &P, t: &Transcript<P::Elem>) -> String {
    let mut s = serde_json::to_string_pretty(&t.to_json(poset)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn play_on<T: Target>(t: &T, cfg: &RunConfig, interactive: bool) -> Result<u8, CliError> {
    if cfg.format == Format::Dot {
        return Err(CliError::Usage(
            "transcripts are written as JSON only".into(),
        ));
    }
    let check = checker(t, cfg)?;
    let eve_id = if interactive {
        "interactive"
    } else {
        cfg.eve.as_str()
    };
    let transcript = run(t, cfg, eve_id)?;
    if let Some(out) = &cfg.out {
        write_out(Some(out), &transcript_text(t.poset(), &transcript))?;
    }
    if interactive {
        if let Some(last) = transcript.last() {
            println!("odd: {}", t.render(last));
        }
    }
    println!(
        "{}: {} moves, seed {}",
        t.poset().id(),
        transcript.len(),
        cfg.seed
    );
    Ok(report(&evaluate(
        &*check,
        t.poset(),
        &transcript,
        cfg.budget,
    )))
}

pub fn play(cfg: &RunConfig, interactive: bool) -> Result<u8, CliError> {
    with_target!(AnyTarget::parse(&cfg.target)?, t => play_on(&t, cfg, interactive))
}

fn verify_on<T: Target>(t: &T, cfg: &RunConfig) -> Result<u8, CliError> {
    let path = cfg
        .transcript
        .as_deref()
        .ok_or_else(|| CliError::Usage("verify needs --transcript <file>".into()))?;
    let check = checker(t, cfg)?;
    let value: serde_json::Value = serde_json::from_str(&read_in(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let transcript = Transcript::from_json(t.poset(), &value)?;
    if transcript.poset_id != t.poset().id() {
        return Err(CliError::Data(format!(
            "transcript is for `{}`, not `{}`",
            transcript.poset_id,
            t.poset().id()
        )));
    }
    if let Some(i) = transcript.chain_break(t.poset()) {
        return Ok(report(&Verdict::Fail(format!(
            "move {} is not above move {i}",
            i + 1
        ))));
    }
    println!("{}: {} moves, chain ok", t.poset().id(), transcript.len());
    Ok(report(&evaluate(
        &*check,
        t.poset(),
        &transcript,
        cfg.budget,
    )))
}

pub fn verify(cfg: &RunConfig) -> Result<u8, CliError> {
    with_target!(AnyTarget::parse(&cfg.target)?, t => verify_on(&t, cfg))
}

fn export_on<T: Target>(t: &T, cfg: &RunConfig) -> Result<u8, CliError> {
    if cfg.format == Format::Dot && !t.has_dot() {
        return Err(CliError::Usage(
            "DOT export is for classes of structures".into(),
        ));
    }
    let transcript = run(t, cfg, &cfg.eve)?;
    let last = transcript.last().expect("at least one round");
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&t.poset().encode(last))
                .expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Dot => t.to_dot(last).expect("checked above"),
    };
    write_out(cfg.out.as_deref(), &text)?;
    Ok(exit::PASS)
}

pub fn export(cfg: &RunConfig) -> Result<u8, CliError> {
    with_target!(AnyTarget::parse(&cfg.target)?, t => export_on(&t, cfg))
}

fn tree_on<T: Target>(t: &T, cfg: &RunConfig) -> Result<u8, CliError> {
    let odd_id = cfg.odd.as_deref().unwrap_or(t.default_odd());
    let mut odd = t.strategy(odd_id, cfg)?;
    let tree = strategy_to_antichain_tree(t.poset(), &mut *odd, cfg.depth, cfg.budget)?;
    let summary = tree.verify(t.poset(), cfg.budget);
    write_out(cfg.out.as_deref(), &tree.to_dot(t.poset()))?;
    // keep stdout clean when the DOT goes there
    let mut log: Box<dyn Write> = if cfg.out.is_some() {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    for (n, &size) in summary.level_sizes.iter().enumerate() {
        let pairs = size * size.saturating_sub(1) / 2;
        let _ = writeln!(
            log,
            "level {n}: {size} nodes, {} of {pairs} pairs incompatible, budget-maximal: {}",
            pairs - summary.compatible_pairs[n],
            if summary.budget_maximal[n] {
                "yes"
            } else {
                "no"
            }
        );
    }
    let ok = summary.is_ok();
    let _ = writeln!(log, "antichain check: {}", if ok { "ok" } else { "failed" });
    Ok(if ok { exit::PASS } else { exit::FAIL })
}

pub fn tree(cfg: &RunConfig) -> Result<u8, CliError> {
    with_target!(AnyTarget::parse(&cfg.target)?, t => tree_on(&t, cfg))
}
