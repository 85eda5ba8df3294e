//! Command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 state cap
//! exceeded, 3 negative answer (check failed, string rejected, automata
//! differ).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx::{approximate, ApproxOptions, ConstraintSet, DEFAULT_STATE_CAP};
use crate::error::Error;
use crate::fsa::Automaton;
use crate::grammar::Grammar;
use crate::oracle::{check_exactness, check_soundness, Linearity, DEFAULT_MAX_LEN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_STATE_CAP: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fsa-approx", version, about = "Finite-state approximation of context-free grammars")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate a grammar and write the automaton.
    Approximate {
        grammar: PathBuf,
        #[command(flatten)]
        approx: ApproxArgs,
        /// Print final and largest intermediate state counts.
        #[arg(long)]
        stats: bool,
        /// Write the automaton here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tab)]
        format: Format,
    },
    /// Approximate a grammar and check soundness against it.
    Check {
        grammar: PathBuf,
        #[command(flatten)]
        approx: ApproxArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Also look for accepted strings outside the grammar; linear
        /// grammars get a full equivalence test.
        #[arg(long)]
        exact: bool,
    },
    /// Test a whitespace-separated token string against an automaton.
    Member { automaton: PathBuf, string: String },
    /// Compare the languages of two automata.
    Compare { left: PathBuf, right: PathBuf },
    /// List accepted strings up to a length.
    Enumerate {
        automaton: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ApproxArgs {
    /// Nonterminals whose rules get recursion constraints (default: all).
    #[arg(long, value_delimiter = ',')]
    pub full: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Constraints::Full)]
    pub constraints: Constraints,
    /// Start symbol (default: left-hand side of the first production).
    #[arg(long)]
    pub start: Option<String>,
    /// Approximate strongly connected subgrammars separately.
    #[arg(long)]
    pub scc: bool,
    /// Print every step's state count to standard error.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Constraints {
    #[value(name = "1-6")]
    OneToSix,
    #[value(name = "1-8")]
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tab,
    Dot,
}

impl ApproxArgs {
    pub fn options(&self) -> ApproxOptions {
        ApproxOptions {
            constraints: match self.constraints {
                Constraints::OneToSix => ConstraintSet::OneToSix,
                Constraints::Full => ConstraintSet::Full,
            },
            full_rule_nonterminals: self.full.clone(),
            use_scc: self.scc,
            trace: self.trace,
            state_cap: self.state_cap,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn from_error(path: &Path, e: Error) -> Self {
        let code = match e {
            Error::StateCapExceeded { .. } => EXIT_STATE_CAP,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: format!("{}: {e}", path.display()),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(path, e))
}

fn load_grammar(path: &Path, start: Option<&str>) -> std::result::Result<Grammar, Failure> {
    let text = read(path)?;
    let g = Grammar::parse(&text).map_err(|e| Failure::input(path, e))?;
    match start {
        Some(s) => g.with_start(s).map_err(|e| Failure::input(path, e)),
        None => Ok(g),
    }
}

fn load_automaton(path: &Path) -> std::result::Result<Automaton, Failure> {
    let text = read(path)?;
    Automaton::from_tab(&text).map_err(|e| Failure::input(path, e))
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Approximate {
            grammar,
            approx,
            stats,
            out: out_path,
            format,
        } => {
            let g = load_grammar(&grammar, approx.start.as_deref())?;
            let result = approximate(&g, &approx.options()).map_err(|e| Failure::from_error(&grammar, e))?;
            let rendered = match format {
                Format::Tab => result.automaton.to_tab(),
                Format::Dot => result.automaton.to_dot(),
            };
            match &out_path {
                Some(p) => fs::write(p, &rendered).map_err(|e| Failure::input(p, e))?,
                None if !stats => out.write_all(rendered.as_bytes()).map_err(io_failure)?,
                None => {}
            }
            if stats {
                writeln!(out, "final_states={}", result.trace.final_states()).map_err(io_failure)?;
                writeln!(out, "max_intermediate={}", result.trace.max_states()).map_err(io_failure)?;
                writeln!(out, "steps={}", result.trace.steps.len()).map_err(io_failure)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            grammar,
            approx,
            max_len,
            exact,
        } => {
            let g = load_grammar(&grammar, approx.start.as_deref())?;
            let result = approximate(&g, &approx.options()).map_err(|e| Failure::from_error(&grammar, e))?;
            let report = if exact {
                let full = Linearity::of(&g).is_some();
                check_exactness(&g, &result.automaton, max_len, full)
            } else {
                check_soundness(&g, &result.automaton, max_len)
            }
            .map_err(|e| Failure::from_error(&grammar, e))?;
            write!(out, "{report}").map_err(io_failure)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Member { automaton, string } => {
            let m = load_automaton(&automaton)?;
            // a token outside the alphabet cannot be accepted
            let accepted = match m.alphabet().parse_word(&string) {
                Ok(word) => m.accepts(&word).map_err(|e| Failure::from_error(&automaton, e))?,
                Err(_) => false,
            };
            writeln!(out, "{}", if accepted { "ACCEPT" } else { "REJECT" }).map_err(io_failure)?;
            Ok(if accepted { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Compare { left, right } => {
            let a = load_automaton(&left)?;
            let b = load_automaton(&right)?;
            let (a, b) = a.lift_pair(&b).map_err(|e| Failure::from_error(&left, e))?;
            let ab = a.subset_of(&b).map_err(|e| Failure::from_error(&left, e))?;
            let ba = b.subset_of(&a).map_err(|e| Failure::from_error(&right, e))?;
            let both = a.intersect(&b).map_err(|e| Failure::from_error(&left, e))?.minimize();
            let verdict = if ab && ba { "EQUIVALENT" } else { "DIFFERENT" };
            writeln!(out, "{verdict}").map_err(io_failure)?;
            writeln!(out, "left_subset_of_right={ab}").map_err(io_failure)?;
            writeln!(out, "right_subset_of_left={ba}").map_err(io_failure)?;
            writeln!(out, "intersection_states={}", both.num_states()).map_err(io_failure)?;
            Ok(if ab && ba { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Enumerate { automaton, max_len } => {
            let m = load_automaton(&automaton)?;
            for w in m.enumerate(max_len) {
                writeln!(out, "{}", m.alphabet().render_word(&w)).map_err(io_failure)?;
            }
            Ok(EXIT_OK)
        }
    }
}
