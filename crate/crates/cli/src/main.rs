use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use qbra_core::advisor::{Advisor, AdvisorConfig, AdvisorError, Report, DEFAULT_DELTA};
use qbra_core::complexity::{parse_complexity, speedup_with, AlgebraError};
use qbra_core::session::{Session, SessionError};
use qbra_core::{canonical_json, canonical_json_pretty, fixtures};

mod render;

#[derive(Parser)]
#[command(name = "qbra", version, about = "Quantum business requirement advisor")]
struct Cli {
    /// BPM tree (JSON); defaults to the bundled sample.
    #[arg(long, global = true)]
    bpm: Option<PathBuf>,
    /// Problem database (JSON); defaults to the bundled sample.
    #[arg(long, global = true)]
    db: Option<PathBuf>,
    /// Word-vector file; defaults to the bundled toy model.
    #[arg(long, global = true)]
    embeddings: Option<PathBuf>,
    /// Similarity threshold for early closure.
    #[arg(long, global = true, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Human-readable output instead of canonical JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and cross-check all fixtures.
    Validate,
    /// Replay a selection path and print the recommendation.
    Recommend {
        /// Steps separated by '/', each a node id, a term or a 1-based number.
        #[arg(long)]
        path: String,
        /// Scenario to pick at the leaf (id or 1-based number); omit to close early.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Speedup of a classical cost over a quantum cost.
    Speedup {
        #[arg(long)]
        classical: String,
        #[arg(long)]
        quantum: String,
        /// Invert a product quantum cost through its dominant factor.
        #[arg(long)]
        approx: bool,
    },
    /// Interactive question-and-answer session.
    Ask {
        /// Write the session transcript here when done.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Term weight of every BPM node.
    Weights,
}

enum CliError {
    /// Validation or domain failure (exit 1).
    Domain(String),
    /// I/O or usage failure (exit 2).
    Io(String),
}

impl From<AdvisorError> for CliError {
    fn from(e: AdvisorError) -> Self {
        match e {
            AdvisorError::InvalidDelta(_) => CliError::Io(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn source(path: &Option<PathBuf>, bundled: &str) -> Result<String, CliError> {
    path.as_deref().map(read).unwrap_or_else(|| Ok(bundled.to_string()))
}

impl Cli {
    fn advisor(&self) -> Result<Arc<Advisor>, CliError> {
        let bpm = source(&self.bpm, fixtures::BPM)?;
        let db = source(&self.db, fixtures::PROBLEMS)?;
        let emb = source(&self.embeddings, fixtures::EMBEDDINGS)?;
        let config = AdvisorConfig { delta: self.delta, ..Default::default() };
        Ok(Arc::new(Advisor::from_sources(&bpm, &db, &emb, config)?))
    }

    fn emit<T: serde::Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        let text = if self.pretty { human() } else { canonical_json(value) };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(io::stdout().lock(), "{text}");
    }
}

fn validate(cli: &Cli) -> Result<(), CliError> {
    let advisor = cli.advisor()?;
    let unlinked: Vec<&str> = advisor.tree().unlinked_leaves().iter().map(|n| n.id.as_str()).collect();
    let summary = json!({
        "nodes": advisor.tree().node_count(),
        "problems": advisor.db().len(),
        "vocabulary": advisor.model().len(),
        "dimension": advisor.model().dim(),
        "unlinked_leaves": unlinked,
        "fixture_version": advisor.version(),
    });
    cli.emit(&summary, || {
        format!(
            "N={}, problems={}, vocabulary={} (D={}), unlinked leaves: {}",
            advisor.tree().node_count(),
            advisor.db().len(),
            advisor.model().len(),
            advisor.model().dim(),
            if unlinked.is_empty() { "none".to_string() } else { unlinked.join(", ") }
        )
    });
    Ok(())
}

fn recommend(cli: &Cli, path: &str, scenario: Option<&str>) -> Result<(), CliError> {
    let advisor = cli.advisor()?;
    let mut session = advisor.start().map_err(|e| CliError::Domain(e.to_string()))?;
    let steps: Vec<&str> = path.split('/').map(str::trim).filter(|s| !s.is_empty()).collect();
    for (i, step) in steps.iter().chain(scenario.as_ref()).enumerate() {
        session
            .select_input(step)
            .map_err(|e| CliError::Domain(format!("invalid path: step {} '{step}': {e}", i + 1)))?;
    }
    session.close().map_err(|e| CliError::Domain(e.to_string()))?;
    let report = session.report().expect("closed session");
    cli.emit(report, || render::report(report));
    Ok(())
}

fn caret(text: &str, e: &AlgebraError) -> String {
    match e.position() {
        Some(pos) => format!("{e}\n  {text}\n  {}^", " ".repeat(text[..pos.min(text.len())].chars().count())),
        None => e.to_string(),
    }
}

fn speedup(cli: &Cli, classical: &str, quantum: &str, approx: bool) -> Result<(), CliError> {
    let parse = |label: &str, text: &str| {
        parse_complexity(text).map_err(|e| CliError::Domain(format!("{label}: {}", caret(text, &e))))
    };
    let c = parse("classical", classical)?;
    let q = parse("quantum", quantum)?;
    let s = speedup_with(&c, &q, approx).map_err(|e| match e {
        AlgebraError::NonInvertible { .. } => CliError::Domain(format!("{e} (pass --approx)")),
        e => CliError::Domain(e.to_string()),
    })?;
    cli.emit(&s, || {
        format!(
            "speedup {}\nclass   {}\ntype    {}{}",
            s.expr,
            s.expr.growth(),
            s.kind,
            if s.approximate { "\n(quantum cost inverted through its dominant factor)" } else { "" }
        )
    });
    Ok(())
}

fn weights(cli: &Cli) -> Result<(), CliError> {
    let advisor = cli.advisor()?;
    let rows = advisor.weights();
    cli.emit(&rows, || render::weights(&rows));
    Ok(())
}

enum Input {
    Choice(String),
    Close,
    Eof,
}

fn prompt(input: &mut impl BufRead, out: &mut impl Write, can_choose: bool) -> Result<Input, CliError> {
    let io = |e: io::Error| CliError::Io(e.to_string());
    loop {
        if can_choose {
            write!(out, "choice (number), or 'c' to close: ").map_err(io)?;
        } else {
            write!(out, "no further options; 'c' to close: ").map_err(io)?;
        }
        out.flush().map_err(io)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io)? == 0 {
            writeln!(out).map_err(io)?;
            return Ok(Input::Eof);
        }
        match line.trim() {
            "" => continue,
            "c" | "close" => return Ok(Input::Close),
            choice if can_choose => return Ok(Input::Choice(choice.to_string())),
            _ => continue,
        }
    }
}

fn ask(cli: &Cli, transcript: Option<&Path>) -> Result<(), CliError> {
    let advisor = cli.advisor()?;
    let mut session = advisor.start().map_err(|e| CliError::Domain(e.to_string()))?;
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stderr();
    let io = |e: io::Error| CliError::Io(e.to_string());
    while !session.is_closed() {
        let question = session.current_question().expect("open session");
        writeln!(out, "\n{}", question.text).map_err(io)?;
        for o in &question.options {
            writeln!(out, "  {}. {}", o.number, o.label).map_err(io)?;
        }
        match prompt(&mut input, &mut out, !question.options.is_empty())? {
            Input::Choice(choice) => {
                // numbers only, so a stray word cannot pick an option by label
                let valid = choice.parse::<usize>().is_ok_and(|n| (1..=question.options.len()).contains(&n));
                if !valid {
                    writeln!(out, "'{choice}' is not between 1 and {}", question.options.len()).map_err(io)?;
                    continue;
                }
                session.select_input(&choice).map_err(|e| CliError::Domain(e.to_string()))?;
            }
            Input::Close => match session.close() {
                Ok(_) => {}
                Err(SessionError::NothingSelected) => {
                    writeln!(out, "nothing has been selected yet").map_err(io)?;
                }
                Err(e) => return Err(CliError::Domain(e.to_string())),
            },
            Input::Eof if session.path().is_empty() => {
                return Err(CliError::Domain(SessionError::NothingSelected.to_string()));
            }
            Input::Eof => return Err(CliError::Domain("input ended before the session was closed".into())),
        }
    }
    let report: &Report = session.report().expect("closed session");
    cli.emit(report, || render::report(report));
    if let Some(path) = transcript {
        write_transcript(&session, path)?;
        writeln!(out, "transcript written to {}", path.display()).map_err(io)?;
    }
    Ok(())
}

fn write_transcript(session: &Session, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, canonical_json_pretty(&session.export()) + "\n")
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate => validate(&cli),
        Command::Recommend { path, scenario } => recommend(&cli, path, scenario.as_deref()),
        Command::Speedup { classical, quantum, approx } => speedup(&cli, classical, quantum, *approx),
        Command::Ask { transcript } => ask(&cli, transcript.as_deref()),
        Command::Weights => weights(&cli),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
