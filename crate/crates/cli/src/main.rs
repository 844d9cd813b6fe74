//! `crosscap`: batch front end for presentations, homology checks,
//! derivation replay, coset enumeration and abelianization.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crosscap::derivation::{builtin_script, builtin_scripts, replay, DerivationScript, Report};
use crosscap::groupcalc::{abelianize, structure, todd_coxeter, AbelianInvariants, FpGroup, TableStatus};
use crosscap::oracle::{check_all, check_relator, FamilyCheck};
use crosscap::presentation::{stukow_presentation, Presentation, RelatorFamily};
use crosscap::word::parse_word;
use crosscap::SurfaceSpec;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "crosscap", version, about = "Presentations of mapping class groups of non-orientable surfaces")]
struct Cli {
    /// Number of crosscaps.
    #[arg(short, long, global = true)]
    genus: Option<usize>,
    /// Number of boundary components.
    #[arg(short = 'n', long, global = true, default_value_t = 0)]
    boundary: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the finite presentation.
    Present {
        /// Only relators of this family (e.g. A5, B8, C3, small-case).
        #[arg(long)]
        family: Option<String>,
        /// Emit the flat enumeration format.
        #[arg(long)]
        flat: bool,
    },
    /// Check that a word acts trivially on Z2-homology.
    CheckWord {
        /// Word in the generator grammar, e.g. "a1 y a1 y^-1".
        word: String,
    },
    /// Check every relator against the homology oracle.
    Oracle {
        #[arg(long)]
        family: Option<String>,
    },
    /// Replay derivation scripts.
    Replay {
        /// Built-in script name: c1, c3-odd, c3-even, c4, y-square.
        /// Without this or --file, every script defined for the surface runs.
        #[arg(long, conflicts_with = "file")]
        script: Option<String>,
        /// Script in JSON-lines form.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Print the script as JSON lines instead of replaying it.
        #[arg(long)]
        emit: bool,
    },
    /// Todd-Coxeter coset enumeration.
    Enumerate {
        /// Subgroup generator word; repeat for several.
        #[arg(long)]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
        /// Read the group from a flat enumeration file instead.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Abelian invariants of the group.
    Abelianize {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Present { .. } => "present",
            Command::CheckWord { .. } => "check-word",
            Command::Oracle { .. } => "oracle",
            Command::Replay { .. } => "replay",
            Command::Enumerate { .. } => "enumerate",
            Command::Abelianize { .. } => "abelianize",
        }
    }
}

/// A finished command: whether its verification passed, human text, and
/// the structured `details` payload.
struct Outcome {
    passed: bool,
    text: String,
    details: Value,
}

/// Usage or input problem; exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

fn require_spec(cli: &Cli) -> Result<SurfaceSpec, InputError> {
    let g = cli
        .genus
        .ok_or_else(|| InputError(format!("{} needs --genus", cli.command.name())))?;
    Ok(SurfaceSpec::new(g, cli.boundary)?)
}

fn optional_spec(cli: &Cli) -> Result<Option<SurfaceSpec>, InputError> {
    cli.genus.map(|_| require_spec(cli)).transpose()
}

fn family_filter(family: &Option<String>) -> Result<Option<RelatorFamily>, InputError> {
    family
        .as_deref()
        .map(|name| RelatorFamily::from_name(name).ok_or_else(|| InputError(format!("unknown relator family {name:?}"))))
        .transpose()
}

fn spec_json(spec: Option<SurfaceSpec>) -> Value {
    spec.map_or(Value::Null, |s| json!({ "genus": s.genus(), "boundary": s.boundary() }))
}

fn present(spec: SurfaceSpec, family: Option<RelatorFamily>, flat: bool) -> CmdResult {
    let p = stukow_presentation(&spec)?;
    if flat {
        let text = p.to_flat()?;
        return Ok(Outcome {
            passed: true,
            details: json!({ "flat": text }),
            text,
        });
    }
    let relators: Vec<_> = p.relators().iter().filter(|r| family.is_none_or(|f| r.family == f)).collect();
    let gens: Vec<String> = p.generators().iter().map(|g| g.to_string()).collect();
    let plural = if relators.len() == 1 { "" } else { "s" };
    let mut text = format!(
        "{spec}: {} generators, {} relator{plural}\ngenerators: {}\n",
        gens.len(),
        relators.len(),
        gens.join(" ")
    );
    for r in &relators {
        let label = if r.label.is_empty() { String::new() } else { format!(" {}", r.label) };
        text.push_str(&format!("{}{label}: {}\n", r.family, r.word));
    }
    Ok(Outcome {
        passed: true,
        text,
        details: json!({ "generators": gens, "relators": relators }),
    })
}

fn check_word(spec: SurfaceSpec, word: &str) -> CmdResult {
    let w = parse_word(word)?;
    let check = check_relator(&spec, &w)?;
    let text = match &check.moved {
        None => format!("`{w}` acts trivially on H1({spec}; Z2)\n"),
        Some(m) => format!("`{w}` moves basis vector e{} to {}\n", m.basis, m.image),
    };
    Ok(Outcome {
        passed: check.trivial,
        text,
        details: serde_json::to_value(&check)?,
    })
}

fn oracle(spec: SurfaceSpec, family: Option<RelatorFamily>) -> CmdResult {
    let p = stukow_presentation(&spec)?;
    let checks: Vec<FamilyCheck> = check_all(&p).into_iter().filter(|c| family.is_none_or(|f| c.family == f)).collect();
    let bad: Vec<&FamilyCheck> = checks.iter().filter(|c| !c.trivial).collect();
    let mut text = String::new();
    for c in &bad {
        text.push_str(&format!("FAIL {} {}\n", c.family, c.label));
    }
    if bad.is_empty() {
        text.push_str(&format!("all relators oracle-trivial ({} checked on {spec})\n", checks.len()));
    } else {
        text.push_str(&format!("{} of {} relators act non-trivially on {spec}\n", bad.len(), checks.len()));
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        text,
        details: json!({ "checked": checks.len(), "failures": bad }),
    })
}

fn replay_cmd(cli: &Cli, script: &Option<String>, file: &Option<PathBuf>, emit: bool) -> CmdResult {
    let scripts: Vec<DerivationScript> = match (script, file) {
        (_, Some(path)) => {
            let s = DerivationScript::from_jsonl(&std::fs::read_to_string(path)?)?;
            if let Some(spec) = optional_spec(cli)? {
                if spec != s.spec {
                    return Err(InputError(format!("script is for {}, not {spec}", s.spec)));
                }
            }
            vec![s]
        }
        (Some(name), None) => vec![builtin_script(&require_spec(cli)?, name)?],
        (None, None) => builtin_scripts(&require_spec(cli)?)?,
    };
    if emit {
        let text: String = scripts.iter().map(DerivationScript::to_jsonl).collect();
        return Ok(Outcome {
            passed: true,
            details: json!({ "scripts": scripts.iter().map(|s| s.to_jsonl()).collect::<Vec<_>>() }),
            text,
        });
    }
    let reports: Vec<Report> = scripts.iter().map(replay).collect();
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Outcome {
        passed: reports.iter().all(|r| r.passed),
        text,
        details: json!({ "reports": reports }),
    })
}

fn load_group(cli: &Cli, input: &Option<PathBuf>) -> Result<(Option<SurfaceSpec>, FpGroup), InputError> {
    match input {
        Some(path) => Ok((optional_spec(cli)?, FpGroup::from_flat(&std::fs::read_to_string(path)?)?)),
        None => {
            let spec = require_spec(cli)?;
            let p: Presentation = stukow_presentation(&spec)?;
            Ok((Some(spec), FpGroup::from_presentation(&p)))
        }
    }
}

fn enumerate(group: &FpGroup, subgroup: &[String], max_cosets: usize) -> CmdResult {
    let sub = subgroup
        .iter()
        .map(|s| Ok(group.encode(&parse_word(s)?)?))
        .collect::<Result<Vec<_>, InputError>>()?;
    let table = todd_coxeter(group, &sub, max_cosets)?;
    let status = match table.status() {
        TableStatus::Closed => "closed",
        TableStatus::Overflowed => "overflowed",
    };
    let mut text = format!("status: {status}\ncosets defined: {}\n", table.defined());
    let mut details = json!({ "status": status, "defined": table.defined(), "index": table.index() });
    if let Some(index) = table.index() {
        text.push_str(&format!("index: {index}\n"));
    }
    if sub.is_empty() {
        if let Some(s) = structure(&table)? {
            text.push_str(&format!("order: {}\nabelian: {}\nexponent: {}\n", s.order, s.abelian, s.exponent));
            details["structure"] = serde_json::to_value(&s)?;
        }
    }
    Ok(Outcome {
        passed: true,
        text,
        details,
    })
}

fn abelianize_cmd(group: &FpGroup) -> CmdResult {
    let inv: AbelianInvariants = abelianize(group);
    Ok(Outcome {
        passed: true,
        text: format!("{inv}\n"),
        details: serde_json::to_value(&inv)?,
    })
}

fn dispatch(cli: &Cli) -> Result<(Option<SurfaceSpec>, Outcome), InputError> {
    match &cli.command {
        Command::Present { family, flat } => {
            let spec = require_spec(cli)?;
            Ok((Some(spec), present(spec, family_filter(family)?, *flat)?))
        }
        Command::CheckWord { word } => {
            let spec = require_spec(cli)?;
            Ok((Some(spec), check_word(spec, word)?))
        }
        Command::Oracle { family } => {
            let spec = require_spec(cli)?;
            Ok((Some(spec), oracle(spec, family_filter(family)?)?))
        }
        Command::Replay { script, file, emit } => {
            let out = replay_cmd(cli, script, file, *emit)?;
            Ok((optional_spec(cli)?, out))
        }
        Command::Enumerate {
            subgroup,
            max_cosets,
            input,
        } => {
            let (spec, group) = load_group(cli, input)?;
            Ok((spec, enumerate(&group, subgroup, *max_cosets)?))
        }
        Command::Abelianize { input } => {
            let (spec, group) = load_group(cli, input)?;
            Ok((spec, abelianize_cmd(&group)?))
        }
    }
}

fn render(cli: &Cli, spec: Option<SurfaceSpec>, out: &Outcome) -> String {
    match cli.format {
        Format::Text => out.text.clone(),
        Format::Structured => {
            let doc = json!({
                "command": cli.command.name(),
                "spec": spec_json(spec),
                "result": if out.passed { "pass" } else { "fail" },
                "details": out.details,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (spec, outcome) = match dispatch(&cli) {
        Ok(v) => v,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let rendered = render(&cli, spec, &outcome);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
