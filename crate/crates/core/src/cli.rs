//! The `spr` command line.
//!
//! Exit codes: 0 for an affirmative result, 1 for a negative one (rejected,
//! unequal, axiom failure), 2 for usage and format errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::automaton::{AutomatonFile, StepAutomaton};
use crate::expr::{self, check_suite, Equivalence, SprExpr, SuiteConfig};
use crate::kleene::{compile, extract, DEFAULT_WIDTH};
use crate::step::StepWord;
use crate::stm::{parse_bits, render_trace, Mode, Status, Stm};

#[derive(Parser, Debug)]
#[command(name = "spr", version, about = "Series-parallel rational expressions, step automata and step Turing machines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an expression and print its syntax tree.
    Parse { expr: String },
    /// List the pomsets of an expression with at most `--size` nodes.
    Lang {
        expr: String,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
    /// Build the syntactic step automaton of an expression.
    Compile {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: usize,
        /// Write the automaton file here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether an automaton accepts a step word such as `a.<b,c>.d`.
    Accept {
        automaton: PathBuf,
        word: String,
        /// Start state; defaults to the first state in the file.
        #[arg(long)]
        state: Option<String>,
    },
    /// List the step words of at most `--len` steps accepted by an automaton.
    Words {
        automaton: PathBuf,
        #[arg(long, default_value_t = 4)]
        len: usize,
        #[arg(long)]
        state: Option<String>,
    },
    /// Turn an automaton into an expression.
    Extract {
        automaton: PathBuf,
        #[arg(long)]
        state: Option<String>,
    },
    /// Compare two expressions on pomsets of at most `--size` nodes.
    Equiv {
        left: String,
        right: String,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
    /// Check the axioms on seeded random instances.
    Axioms {
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Step Turing machines.
    Stm {
        #[command(subcommand)]
        command: StmCommand,
    },
}

#[derive(Subcommand, Debug)]
enum StmCommand {
    /// Run a machine on an input word over 0 and 1.
    Run {
        machine: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Print every configuration of the accepting run.
        #[arg(long)]
        trace: bool,
    },
    /// List the step words of accepting runs.
    Words {
        machine: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 50)]
        max_steps: usize,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut text = String::new();
    let result = dispatch(cli.command, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(affirmative) => i32::from(!affirmative),
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn parse_expr(text: &str) -> Result<SprExpr, Failure> {
    expr::parse(text).map_err(|e| Failure(format!("cannot parse `{text}`: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    let mut contents = contents.to_string();
    if !contents.ends_with('\n') {
        contents.push('\n');
    }
    std::fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Loads an automaton and its start state: `state` if given, otherwise the
/// first state listed in the file.
fn load_automaton(path: &Path, state: Option<String>) -> Result<(StepAutomaton, String), Failure> {
    let text = read(path)?;
    let file: AutomatonFile =
        serde_json::from_str(&text).map_err(|e| Failure(format!("malformed automaton file: {e}")))?;
    let a = StepAutomaton::from_file(&file)?;
    let q = state
        .or_else(|| file.states.first().cloned())
        .ok_or_else(|| Failure("automaton has no states".into()))?;
    if !a.states().contains(&q) {
        return Err(Failure(format!("unknown state `{q}`")));
    }
    Ok((a, q))
}

fn load_machine(path: &Path) -> Result<Stm, Failure> {
    Ok(Stm::from_json(&read(path)?)?)
}

fn tree(x: &SprExpr, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    let (name, kids): (String, Vec<&SprExpr>) = match x {
        SprExpr::Zero => ("0".into(), vec![]),
        SprExpr::One => ("1".into(), vec![]),
        SprExpr::Letter(a) => (a.to_string(), vec![]),
        SprExpr::Sum(l, r) => ("Sum".into(), vec![l, r]),
        SprExpr::Seq(l, r) => ("Seq".into(), vec![l, r]),
        SprExpr::Par(l, r) => ("Par".into(), vec![l, r]),
        SprExpr::Star(l) => ("Star".into(), vec![l]),
        SprExpr::ParStar(l) => ("ParStar".into(), vec![l]),
    };
    let _ = writeln!(s, "{pad}{name}");
    for k in kids {
        tree(k, depth + 1, s);
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<bool, Failure> {
    match cmd {
        Command::Parse { expr } => {
            let x = parse_expr(&expr)?;
            writeln!(out, "{x}")?;
            tree(&x, 0, out);
            Ok(true)
        }
        Command::Lang { expr, size } => {
            let x = parse_expr(&expr)?;
            for p in expr::semantics(&x, size).sorted_text() {
                writeln!(out, "{p}")?;
            }
            Ok(true)
        }
        Command::Compile { expr, width, out: file, dot } => {
            let x = parse_expr(&expr)?;
            let c = compile(&x, width)?;
            let a = &c.automaton;
            writeln!(out, "initial: {}", c.initial)?;
            writeln!(out, "states: {}", a.states().len())?;
            writeln!(out, "transitions: {}", a.transition_count())?;
            match a.recursion_violation() {
                None => writeln!(out, "well-nested: yes")?,
                Some((p, q)) => writeln!(out, "well-nested: no ({p} -> {q})")?,
            }
            if c.width_truncated {
                writeln!(out, "note: parallel-star steps wider than the cap W={width} were left out")?;
            }
            if let Some(path) = file {
                let mut f = a.to_file();
                f.states.retain(|q| *q != c.initial);
                f.states.insert(0, c.initial.clone());
                write_file(&path, &serde_json::to_string_pretty(&f)?)?;
            }
            if let Some(path) = dot {
                write_file(&path, &a.to_dot())?;
            }
            Ok(true)
        }
        Command::Accept { automaton, word, state } => {
            let (a, q) = load_automaton(&automaton, state)?;
            let w: StepWord = word.parse().map_err(|e| Failure(format!("cannot parse step word `{word}`: {e}")))?;
            let yes = a.accepts(&q, &w);
            writeln!(out, "{}", if yes { "accepted" } else { "rejected" })?;
            Ok(yes)
        }
        Command::Words { automaton, len, state } => {
            let (a, q) = load_automaton(&automaton, state)?;
            let mut words: Vec<String> = a.language_upto(&q, len)?.iter().map(ToString::to_string).collect();
            words.sort();
            for w in words {
                writeln!(out, "{w}")?;
            }
            Ok(true)
        }
        Command::Extract { automaton, state } => {
            let (a, q) = load_automaton(&automaton, state)?;
            writeln!(out, "{}", extract(&a, &q)?)?;
            Ok(true)
        }
        Command::Equiv { left, right, size } => {
            let x = parse_expr(&left)?;
            let y = parse_expr(&right)?;
            match expr::equiv_bounded(&x, &y, size) {
                Equivalence::Equal => {
                    writeln!(out, "equal up to size {size}")?;
                    Ok(true)
                }
                Equivalence::Differ { witness, in_left } => {
                    let side = if in_left { "left" } else { "right" };
                    writeln!(out, "differ: witness {witness} is only in the {side} language")?;
                    Ok(false)
                }
            }
        }
        Command::Axioms { size, samples, seed } => {
            let cfg = SuiteConfig { bound: size, samples, seed, ..SuiteConfig::default() };
            let reports = check_suite(&cfg);
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            Ok(reports.iter().all(|r| r.holds()))
        }
        Command::Stm { command: StmCommand::Run { machine, input, max_steps, trace } } => {
            let m = load_machine(&machine)?;
            let w = parse_bits(&input)?;
            let o = m.run(&w, max_steps, Mode::FirstAccept);
            if trace {
                out.push_str(&render_trace(&o, m.k));
            }
            match &o.output {
                Some(output) => writeln!(out, "{} {output}", o.status)?,
                None => writeln!(out, "{}", o.status)?,
            }
            writeln!(out, "steps: {}", o.steps_used)?;
            writeln!(out, "word: {}", o.word)?;
            Ok(o.status == Status::Accepted)
        }
        Command::Stm { command: StmCommand::Words { machine, input, max_steps } } => {
            let m = load_machine(&machine)?;
            let w = parse_bits(&input)?;
            let mut words: Vec<String> = m.accepted_words_upto(&w, max_steps).iter().map(ToString::to_string).collect();
            words.sort();
            for w in words {
                writeln!(out, "{w}")?;
            }
            Ok(true)
        }
    }
}
