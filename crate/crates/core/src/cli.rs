//! The `opsem` command line.
//!
//! Verdicts go to stdout as a single line (`true`, `false`, `undecided`, a
//! type or a term). Diagnostics go to stderr. Exit codes: 0 for success or
//! a true answer, 1 for a false answer, 2 for usage and input errors, 3 when
//! a resource bound stopped the computation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::automata::{da_equivalent, determinize, AutomataError, Equivalence, Na};
use crate::ccs::{self, CcsError, Defs, Process};
use crate::equiv::{bisimilar, trace_equivalent, weak_bisimilar, TauSpec};
use crate::lambda::{self, Evaluation, LambdaError};
use crate::lts::{classify, parse_aut, write_aut, Label, Lts, StateId};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "opsem", version, about = "Operational semantics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Questions about an explicit LTS in .aut format
    #[command(subcommand)]
    Lts(LtsCommand),
    /// CCS processes
    #[command(subcommand)]
    Ccs(CcsCommand),
    /// Finite automata in .aut format with `initial:`/`accepting:` lines
    #[command(subcommand)]
    Auto(AutoCommand),
    /// Simply typed lambda calculus and System F<:
    #[command(subcommand)]
    Lam(LamCommand),
}

#[derive(Debug, Subcommand)]
enum LtsCommand {
    /// Are two states (weakly) bisimilar?
    Bisim {
        file: PathBuf,
        s: StateId,
        t: StateId,
        #[arg(long)]
        weak: bool,
        /// Label of the silent action
        #[arg(long, default_value = "i")]
        tau: String,
    },
    /// Do two states have the same traces?
    TracesEq { file: PathBuf, s: StateId, t: StateId },
    /// Determinism, image-finiteness, diamond and confluence
    Classify { file: PathBuf },
}

#[derive(Debug, Args)]
struct Bound {
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
}

#[derive(Debug, Subcommand)]
enum CcsCommand {
    /// One-step transitions of a process
    Trans { defs: String, process: String },
    /// Reachable process graph as .aut
    Lts {
        defs: String,
        process: String,
        #[command(flatten)]
        bound: Bound,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Are two processes (weakly) bisimilar?
    Bisim {
        /// Definitions file; empty for none
        defs: String,
        p: String,
        q: String,
        #[arg(long)]
        weak: bool,
        #[command(flatten)]
        bound: Bound,
    },
}

#[derive(Debug, Subcommand)]
enum AutoCommand {
    /// Subset construction
    Det {
        file: PathBuf,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Language equivalence, with a shortest counterexample
    Eq { left: PathBuf, right: PathBuf },
    /// Membership of a word (labels separated by spaces or commas)
    Accepts { file: PathBuf, word: String },
}

#[derive(Debug, Subcommand)]
enum LamCommand {
    /// Print the type of a closed term
    Check {
        #[arg(long)]
        fsub: bool,
        file: PathBuf,
    },
    /// Print the normal form of a term
    Eval {
        #[arg(long)]
        fsub: bool,
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_TRUE;
        }
    };
    let result = match cli.command {
        Command::Lts(c) => lts_command(c, out),
        Command::Ccs(c) => ccs_command(c, out),
        Command::Auto(c) => auto_command(c, out),
        Command::Lam(c) => lam_command(c, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "opsem: {}", f.message);
            f.code
        }
    }
}

fn verdict(out: &mut dyn Write, answer: bool) -> Outcome {
    emit(out, if answer { "true" } else { "false" })?;
    Ok(if answer { EXIT_TRUE } else { EXIT_FALSE })
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| usage(format!("writing output: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_aut(path: &Path) -> Result<crate::lts::AutDocument, Failure> {
    parse_aut(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn check_state(lts: &Lts, path: &Path, s: StateId) -> Result<(), Failure> {
    lts.check_state(s).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn lts_command(c: LtsCommand, out: &mut dyn Write) -> Outcome {
    match c {
        LtsCommand::Bisim { file, s, t, weak, tau } => {
            let lts = read_aut(&file)?.lts;
            check_state(&lts, &file, s)?;
            check_state(&lts, &file, t)?;
            let answer = if weak {
                let tau = Label::new(tau).map_err(|e| usage(e.to_string()))?;
                let lts = lts.with_alphabet([tau.clone()]);
                weak_bisimilar(&lts, &TauSpec::new(tau), s, t)
            } else {
                bisimilar(&lts, s, t)
            };
            verdict(out, answer.map_err(|e| usage(e.to_string()))?)
        }
        LtsCommand::TracesEq { file, s, t } => {
            let lts = read_aut(&file)?.lts;
            check_state(&lts, &file, s)?;
            check_state(&lts, &file, t)?;
            match trace_equivalent(&lts, s, t) {
                Ok(answer) => verdict(out, answer),
                Err(AutomataError::TooManySubsets(n)) => {
                    emit(out, "undecided")?;
                    Err(Failure {
                        code: EXIT_UNDECIDED,
                        message: format!("subset construction exceeded {n} subsets"),
                    })
                }
                Err(e) => Err(usage(e.to_string())),
            }
        }
        LtsCommand::Classify { file } => {
            let c = classify(&read_aut(&file)?.lts);
            let show = |b: Option<bool>| b.map_or("n/a".to_owned(), |b| b.to_string());
            emit(
                out,
                &format!(
                    "deterministic={} image-finite={} diamond={} confluent={}",
                    c.deterministic,
                    c.image_finite,
                    show(c.diamond),
                    show(c.confluent)
                ),
            )?;
            Ok(EXIT_TRUE)
        }
    }
}

fn read_defs(path: &str) -> Result<Defs, Failure> {
    if path.is_empty() {
        return Ok(Defs::new());
    }
    let path = Path::new(path);
    ccs::parse_defs(&read(path)?).map_err(|e| usage(format!("{}:{e}", path.display())))
}

fn parse_process(src: &str) -> Result<Process, Failure> {
    ccs::parse_process(src).map_err(|e| usage(format!("process {src:?}: {e}")))
}

fn ccs_failure(out: &mut dyn Write, e: CcsError) -> Outcome {
    match e {
        CcsError::BoundExceeded { .. } => {
            emit(out, "undecided")?;
            Err(Failure {
                code: EXIT_UNDECIDED,
                message: e.to_string(),
            })
        }
        e => Err(usage(e.to_string())),
    }
}

fn ccs_command(c: CcsCommand, out: &mut dyn Write) -> Outcome {
    match c {
        CcsCommand::Trans { defs, process } => {
            let defs = read_defs(&defs)?;
            let p = parse_process(&process)?;
            match ccs::transitions(&defs, &p) {
                Ok(moves) => {
                    for (a, q) in moves {
                        emit(out, &format!("{a} -> {q}"))?;
                    }
                    Ok(EXIT_TRUE)
                }
                Err(e) => ccs_failure(out, e),
            }
        }
        CcsCommand::Lts {
            defs,
            process,
            bound,
            out: target,
        } => {
            let defs = read_defs(&defs)?;
            let p = parse_process(&process)?;
            let ex = match ccs::explore_lts(&defs, &[p], bound.max_states) {
                Ok(ex) => ex,
                Err(e) => return ccs_failure(out, e),
            };
            let text = write_aut(&crate::lts::AutDocument::new(ex.roots[0], ex.lts));
            match target {
                Some(path) => write_file(&path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))?,
            }
            Ok(EXIT_TRUE)
        }
        CcsCommand::Bisim {
            defs,
            p,
            q,
            weak,
            bound,
        } => {
            let defs = read_defs(&defs)?;
            let (p, q) = (parse_process(&p)?, parse_process(&q)?);
            let answer = if weak {
                ccs::weak_bisimilar_ccs(&defs, &p, &q, bound.max_states)
            } else {
                ccs::bisimilar_ccs(&defs, &p, &q, bound.max_states)
            };
            match answer {
                Ok(b) => verdict(out, b),
                Err(e) => ccs_failure(out, e),
            }
        }
    }
}

fn automata_failure(out: &mut dyn Write, e: AutomataError) -> Outcome {
    match e {
        AutomataError::TooManySubsets(_) => {
            emit(out, "undecided")?;
            Err(Failure {
                code: EXIT_UNDECIDED,
                message: e.to_string(),
            })
        }
        e => Err(usage(e.to_string())),
    }
}

fn auto_command(c: AutoCommand, out: &mut dyn Write) -> Outcome {
    match c {
        AutoCommand::Det { file, out: target } => {
            let na = Na::from_aut(&read_aut(&file)?);
            let da = match determinize(&na) {
                Ok(da) => da,
                Err(e) => return automata_failure(out, e),
            };
            let text = write_aut(&da.to_aut());
            match target {
                Some(path) => write_file(&path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))?,
            }
            Ok(EXIT_TRUE)
        }
        AutoCommand::Eq { left, right } => {
            let n1 = Na::from_aut(&read_aut(&left)?);
            let n2 = Na::from_aut(&read_aut(&right)?);
            let (n1, n2) = (
                n1.with_alphabet(n2.alphabet().to_vec()),
                n2.with_alphabet(n1.alphabet().to_vec()),
            );
            let result = determinize(&n1)
                .and_then(|d1| Ok((d1, determinize(&n2)?)))
                .and_then(|(d1, d2)| da_equivalent(&d1, &d2));
            match result {
                Ok(Equivalence::Equivalent) => verdict(out, true),
                Ok(Equivalence::Distinguished(w)) => {
                    let word: Vec<&str> = w.iter().map(Label::as_str).collect();
                    emit(out, &format!("false [{}]", word.join(" ")))?;
                    Ok(EXIT_FALSE)
                }
                Err(e) => automata_failure(out, e),
            }
        }
        AutoCommand::Accepts { file, word } => {
            let na = Na::from_aut(&read_aut(&file)?);
            let word = word
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(Label::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage(e.to_string()))?;
            let answer = na.accepts(&word).map_err(|e| usage(e.to_string()))?;
            verdict(out, answer)
        }
    }
}

fn lam_command(c: LamCommand, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (fsub, file) = match &c {
        LamCommand::Check { fsub, file } | LamCommand::Eval { fsub, file, .. } => (*fsub, file.clone()),
    };
    let parsed = lambda::parse_term(&read(&file)?).map_err(|e| usage(format!("{}:{e}", file.display())))?;
    let names = &parsed.names;
    match c {
        LamCommand::Check { .. } => {
            let ctx = lambda::TypingCtx::new();
            let result = if fsub {
                lambda::typecheck_fsub(&ctx, &parsed.term)
            } else {
                lambda::typecheck_stlc(&ctx, &parsed.term)
            };
            match result {
                Ok(ty) => {
                    emit(out, &names.print_ty(&ty))?;
                    Ok(EXIT_TRUE)
                }
                Err(LambdaError::Type { subterm, reason }) => {
                    let _ = writeln!(err, "opsem: ill-typed subterm {}: {reason}", names.print_term(&subterm));
                    verdict(out, false)
                }
                Err(LambdaError::FuelExhausted) => {
                    emit(out, "undecided")?;
                    Err(Failure {
                        code: EXIT_UNDECIDED,
                        message: LambdaError::FuelExhausted.to_string(),
                    })
                }
                Err(e) => {
                    let _ = writeln!(err, "opsem: {e}");
                    verdict(out, false)
                }
            }
        }
        LamCommand::Eval { fuel, .. } => match lambda::eval(&parsed.term, fsub, fuel) {
            Evaluation::Normal { term, .. } => {
                emit(out, &names.print_term(&term))?;
                Ok(EXIT_TRUE)
            }
            Evaluation::OutOfFuel { .. } => {
                emit(out, "undecided")?;
                Err(Failure {
                    code: EXIT_UNDECIDED,
                    message: format!("no normal form within {fuel} steps"),
                })
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("opsem").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ccs_bisim_commutativity() {
        let (code, out, _) = call(&["ccs", "bisim", "", "a.0|b.0", "b.0|a.0", "--max-states", "100"]);
        assert_eq!((code, out.as_str()), (0, "true\n"));
        let (code, out, _) = call(&["ccs", "bisim", "", "a.0", "b.0"]);
        assert_eq!((code, out.as_str()), (1, "false\n"));
    }

    #[test]
    fn ccs_trans() {
        let (code, out, _) = call(&["ccs", "trans", "", "a.0 | 'a.0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "'a -> a.0 | 0\na -> 0 | 'a.0\ntau -> 0 | 0\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["ccs", "bisim", "", "a.", "0"]).0, 2);
        let (code, _, err) = call(&["lts", "classify", "/nonexistent/x.aut"]);
        assert_eq!(code, 2);
        assert!(err.contains("/nonexistent/x.aut"));
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn bounds_are_undecided() {
        let dir = tempfile::tempdir().unwrap();
        let defs = dir.path().join("c.ccs");
        fs::write(&defs, "C = up.(C | down.0)\n").unwrap();
        let (code, out, _) = call(&["ccs", "bisim", defs.to_str().unwrap(), "C", "C", "--max-states", "20"]);
        assert_eq!((code, out.as_str()), (3, "undecided\n"));
    }
}
