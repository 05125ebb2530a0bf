//! Eve driven by text: a human at the terminal, or a script file with one
//! move per line in the same format.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use bmgame::game::{PlayRng, Poset, Strategy};
use bmgame::{Error, Result};

use crate::registry::Target;

enum Source {
    Script(VecDeque<String>),
    Terminal(Box<dyn BufRead>),
}

pub struct TextEve<'t, T> {
    target: &'t T,
    source: Source,
}

impl<'t, T: Target> TextEve<'t, T> {
    pub fn script(target: &'t T, text: &str) -> Self {
        TextEve {
            target,
            source: Source::Script(text.lines().map(str::to_string).collect()),
        }
    }

    pub fn terminal(target: &'t T, input: Box<dyn BufRead>) -> Self {
        TextEve {
            target,
            source: Source::Terminal(input),
        }
    }

    fn eof(index: usize) -> Error {
        Error::Aborted(format!("input ended before Eve's move {index}"))
    }
}

impl<T: Target> Strategy<T::P> for TextEve<'_, T> {
    fn respond(
        &mut self,
        _poset: &T::P,
        history: &[<T::P as Poset>::Elem],
        _rng: &mut PlayRng,
    ) -> Result<<T::P as Poset>::Elem> {
        let index = history.len();
        let last = history.last();
        match &mut self.source {
            Source::Script(lines) => {
                let line = lines.pop_front().ok_or_else(|| Self::eof(index))?;
                self.target
                    .parse_move(line.trim(), last)
                    .map_err(|e| Error::Codec(format!("script move {index}: {e}")))
            }
            Source::Terminal(input) => {
                let mut out = std::io::stdout().lock();
                if let Some(odd) = last {
                    let _ = writeln!(out, "odd: {}", self.target.render(odd));
                }
                loop {
                    let _ = write!(out, "move {index} (eve)> ");
                    let _ = out.flush();
                    let mut line = String::new();
                    let read = input
                        .read_line(&mut line)
                        .map_err(|e| Error::Aborted(e.to_string()))?;
                    if read == 0 {
                        let _ = writeln!(out);
                        return Err(Self::eof(index));
                    }
                    match self.target.parse_move(line.trim(), last) {
                        Ok(x) => {
                            let _ = writeln!(out, "eve: {}", self.target.render(&x));
                            return Ok(x);
                        }
                        Err(e) => {
                            let _ = writeln!(out, "invalid move: {e}; try again");
                        }
                    }
                }
            }
        }
    }
}
