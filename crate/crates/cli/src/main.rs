use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glg::format::{self, FormatError};
use glg::report::{self, ReportError};
use glg_core::corpus::{self, BUILTIN_NAMES};
use glg_core::enumerate;
use glg_core::exactmath::Field;
use glg_core::grading::Grading;
use glg_core::liealg::LieAlgebra;
use glg_core::realize::{realize, verify_certificate, Mode, SearchLimits, Status};
use serde_json::{json, Value};
use thiserror::Error;

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Graded Lie algebras and the semigroups their gradings live in.
#[derive(Parser, Debug)]
#[command(name = "glg", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Algebra file.
    #[arg(long, conflicts_with = "builtin")]
    algebra: Option<PathBuf>,
    /// Grading file (needs --algebra).
    #[arg(long, requires = "algebra")]
    grading: Option<PathBuf>,
    /// A built-in example instead of files.
    #[arg(long)]
    builtin: Option<String>,
    /// Ground field of the built-in example: Q, gf2, gf3, GF(p), ...
    #[arg(long, value_parser = parse_field, requires = "builtin")]
    field: Option<Field>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a grading is a grading.
    Validate(Input),
    /// Print the partial operation a grading induces on its labels.
    Fusion(Input),
    /// Decide whether the fusion table is realized in a (semi)group.
    Realize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_mode, default_value = "abelian-semigroup")]
        mode: Mode,
        /// Longest word explored by the semigroup closure.
        #[arg(long, default_value_t = 8)]
        max_word_len: usize,
        /// Largest Cayley table tried (default: number of labels + 2).
        #[arg(long)]
        max_model_size: Option<usize>,
    },
    /// Merge parts of a grading.
    Coarsen {
        #[command(flatten)]
        input: Input,
        /// Blocks of labels, e.g. `h+e1,x+y`; other labels stay alone.
        #[arg(long)]
        merge: String,
    },
    /// The derived algebra, and whether it is graded.
    Derived(Input),
    /// Check every grading of every Lie algebra of a given dimension over a small field.
    Census {
        #[arg(long, value_parser = parse_field, default_value = "gf2")]
        field: Field,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// List the built-in examples, or write them out as files.
    Examples {
        /// Directory to write `<name>.alg` and `<name>.grad` into.
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
    },
    /// Replay the certificate in a JSON report from `realize`.
    Verify {
        /// The report file.
        report: PathBuf,
        /// Recompute the fusion table from these inputs and compare.
        #[command(flatten)]
        input: Input,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    let lower = s.to_ascii_lowercase();
    if lower == "q" || lower == "rationals" {
        return Ok(Field::Rationals);
    }
    let digits = lower
        .strip_prefix("gf")
        .map(|d| d.trim_start_matches('(').trim_end_matches(')').trim())
        .ok_or_else(|| format!("unknown field `{s}` (use Q or gf<p>)"))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("bad modulus in `{s}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Report { path: String, source: ReportError },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Format { source, .. } if source.is_invalid_grading() => EXIT_NO,
            _ => EXIT_USAGE,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_algebra(input: &Input) -> Result<Arc<LieAlgebra>, CliError> {
    if let Some(name) = &input.builtin {
        let ex = corpus::builtin(name, input.field.unwrap_or(Field::Rationals))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(ex.algebra);
    }
    let path = input
        .algebra
        .as_ref()
        .ok_or_else(|| CliError::Usage("give --algebra FILE or --builtin NAME".into()))?;
    let alg = format::parse_algebra(&read(path)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Arc::new(alg))
}

fn load_grading(input: &Input) -> Result<Grading, CliError> {
    if let Some(name) = &input.builtin {
        let ex = corpus::builtin(name, input.field.unwrap_or(Field::Rationals))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(ex.grading);
    }
    let alg = load_algebra(input)?;
    let path = input
        .grading
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --grading FILE".into()))?;
    format::parse_grading(&read(path)?, alg).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn emit(fmt: OutputFormat, out: &Output) {
    let mut stdout = io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = match fmt {
        OutputFormat::Text => write!(stdout, "{}", out.text),
        OutputFormat::Json => writeln!(stdout, "{}", report::render(&out.json)),
    };
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Realizable => EXIT_OK,
        Status::NotRealizable => EXIT_NO,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn grading_json(g: &Grading) -> Value {
    let alg = g.algebra();
    g.labels()
        .iter()
        .zip(g.parts())
        .map(|(l, p)| {
            let basis: Vec<String> = p.basis().iter().map(|v| alg.render_vector(v)).collect();
            json!({"label": l, "basis": basis})
        })
        .collect()
}

fn validate(input: &Input) -> Result<Output, CliError> {
    match load_grading(input) {
        Ok(g) => {
            let table = g.fusion_table();
            let mut j = report::skeleton("valid");
            j.insert("labels".into(), report::labels_json(&table));
            j.insert("fusion_table".into(), report::fusion_json(&table));
            j.insert("grading".into(), grading_json(&g));
            Ok(Output {
                text: format!("valid grading with {} parts\n{g}", g.len()),
                json: Value::Object(j),
                code: EXIT_OK,
            })
        }
        Err(CliError::Format { path, source }) if source.is_invalid_grading() => {
            let message = format!("{path}: {source}");
            let mut j = report::skeleton("invalid");
            j.insert("error".into(), json!(message));
            Ok(Output {
                text: format!("invalid: {message}\n"),
                json: Value::Object(j),
                code: EXIT_NO,
            })
        }
        Err(e) => Err(e),
    }
}

fn fusion(input: &Input) -> Result<Output, CliError> {
    let table = load_grading(input)?.fusion_table();
    let mut text = String::new();
    for rel in report::fusion_json(&table).as_array().expect("array") {
        text.push_str(rel.as_str().expect("string"));
        text.push('\n');
    }
    let mut j = report::skeleton("valid");
    j.insert("labels".into(), report::labels_json(&table));
    j.insert("fusion_table".into(), report::fusion_json(&table));
    Ok(Output {
        text,
        json: Value::Object(j),
        code: EXIT_OK,
    })
}

fn run_realize(input: &Input, mode: Mode, limits: SearchLimits) -> Result<Output, CliError> {
    let table = load_grading(input)?.fusion_table();
    let outcome = realize(&table, mode, &limits);
    Ok(Output {
        text: report::outcome_text(&table, &outcome),
        json: report::outcome_json(&table, &outcome),
        code: status_code(outcome.status()),
    })
}

fn coarsen(input: &Input, merge: &str) -> Result<Output, CliError> {
    let g = load_grading(input)?;
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for block in merge.split(',').map(str::trim).filter(|b| !b.is_empty()) {
        blocks.push(block.split('+').map(|l| l.trim().to_string()).collect());
    }
    let merged: Vec<String> = blocks.iter().flatten().cloned().collect();
    for l in g.labels() {
        if !merged.contains(l) {
            blocks.push(vec![l.clone()]);
        }
    }
    // keep the original order of first appearance
    blocks.sort_by_key(|b| {
        b.iter()
            .filter_map(|l| g.labels().iter().position(|x| x == l))
            .min()
    });
    match g.coarsen(&blocks, None) {
        Ok(c) => {
            let table = c.fusion_table();
            let mut j = report::skeleton("valid");
            j.insert("labels".into(), report::labels_json(&table));
            j.insert("fusion_table".into(), report::fusion_json(&table));
            j.insert("grading".into(), grading_json(&c));
            Ok(Output {
                text: format::serialize_grading(&c),
                json: Value::Object(j),
                code: EXIT_OK,
            })
        }
        Err(glg_core::grading::GradingError::InvalidPartition(m)) => {
            Err(CliError::Usage(format!("--merge: {m}")))
        }
        Err(e) => {
            let mut j = report::skeleton("invalid");
            j.insert("error".into(), json!(e.to_string()));
            Ok(Output {
                text: format!("invalid: {e}\n"),
                json: Value::Object(j),
                code: EXIT_NO,
            })
        }
    }
}

fn derived(input: &Input) -> Result<Output, CliError> {
    let has_grading = input.builtin.is_some() || input.grading.is_some();
    let (alg, grading) = if has_grading {
        let g = load_grading(input)?;
        (g.algebra().clone(), Some(g))
    } else {
        (load_algebra(input)?, None)
    };
    let d = alg.derived_ideal();
    let basis: Vec<String> = d.basis().iter().map(|v| alg.render_vector(v)).collect();
    let mut text = format!(
        "derived algebra: dim {} = span{{{}}}\n",
        d.rank(),
        basis.join(", ")
    );
    let mut j = report::skeleton("valid");
    let mut code = EXIT_OK;
    let graded = match &grading {
        Some(g) => {
            let graded = g
                .is_graded_subspace(&d)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let table = g.fusion_table();
            j.insert("labels".into(), report::labels_json(&table));
            j.insert("fusion_table".into(), report::fusion_json(&table));
            text.push_str(&format!("graded: {}\n", if graded { "yes" } else { "no" }));
            if !graded {
                code = EXIT_NO;
                j.insert("status".into(), json!("invalid"));
            }
            Value::Bool(graded)
        }
        None => Value::Null,
    };
    j.insert(
        "derived".into(),
        json!({"dimension": d.rank(), "basis": basis, "graded": graded}),
    );
    Ok(Output {
        text,
        json: Value::Object(j),
        code,
    })
}

fn census(field: Field, dim: usize, jobs: usize) -> Result<Output, CliError> {
    let r = enumerate::census(field, dim, jobs).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Output {
        text: report::census_text(&r),
        json: report::census_json(&r),
        code: if r.confirmed() { EXIT_OK } else { EXIT_NO },
    })
}

fn examples(write: Option<&Path>, field: Field) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut list = Vec::new();
    for name in BUILTIN_NAMES {
        let ex = corpus::builtin(name, field).map_err(|e| CliError::Usage(e.to_string()))?;
        let expected: Vec<String> = Mode::ALL
            .iter()
            .map(|&m| format!("{m}: {}", ex.expected.for_mode(m)))
            .collect();
        text.push_str(&format!(
            "{name}  (dim {}, {} parts)  {}\n",
            ex.algebra.dim(),
            ex.grading.len(),
            expected.join(", ")
        ));
        list.push(json!({
            "name": name,
            "dimension": ex.algebra.dim(),
            "parts": ex.grading.len(),
            "expected": {
                "group": ex.expected.group.as_str(),
                "abelian-semigroup": ex.expected.abelian_semigroup.as_str(),
                "semigroup": ex.expected.semigroup.as_str(),
            },
        }));
        if let Some(dir) = write {
            let io = |path: PathBuf, content: String| {
                fs::write(&path, content).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })
            };
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.display().to_string(),
                source,
            })?;
            io(
                dir.join(format!("{name}.alg")),
                format::serialize_algebra(&ex.algebra),
            )?;
            io(
                dir.join(format!("{name}.grad")),
                format::serialize_grading(&ex.grading),
            )?;
        }
    }
    let mut j = report::skeleton("valid");
    j.insert("examples".into(), Value::Array(list));
    Ok(Output {
        text,
        json: Value::Object(j),
        code: EXIT_OK,
    })
}

fn verify(path: &Path, input: &Input) -> Result<Output, CliError> {
    let (table, outcome) =
        report::parse_outcome(&read(path)?).map_err(|source| CliError::Report {
            path: path.display().to_string(),
            source,
        })?;
    if input.builtin.is_some() || input.algebra.is_some() {
        let expected = load_grading(input)?.fusion_table();
        if expected != table {
            return Err(CliError::Usage(format!(
                "{}: the report's fusion table {table} differs from {expected}",
                path.display()
            )));
        }
    }
    let (status, text, code) = match verify_certificate(&table, &outcome) {
        Ok(true) => (
            "valid",
            format!(
                "certificate valid: {} in {} mode\n",
                outcome.status(),
                outcome.mode
            ),
            EXIT_OK,
        ),
        Ok(false) => ("invalid", "certificate invalid\n".to_string(), EXIT_NO),
        Err(glg_core::realize::CertificateError::NoCertificate) => (
            "unknown",
            "the report is inconclusive and carries no certificate\n".to_string(),
            EXIT_UNKNOWN,
        ),
        Err(e) => return Err(CliError::Usage(format!("{}: {e}", path.display()))),
    };
    let mut j = report::skeleton(status);
    j.insert("mode".into(), json!(outcome.mode.as_str()));
    j.insert("labels".into(), report::labels_json(&table));
    j.insert("fusion_table".into(), report::fusion_json(&table));
    j.insert("verified".into(), json!(outcome.status().as_str()));
    Ok(Output {
        text,
        json: Value::Object(j),
        code,
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate(input) => validate(input),
        Command::Fusion(input) => fusion(input),
        Command::Realize {
            input,
            mode,
            max_word_len,
            max_model_size,
        } => {
            let limits = SearchLimits {
                max_word_len: *max_word_len,
                max_model_size: *max_model_size,
                ..SearchLimits::default()
            };
            run_realize(input, *mode, limits)
        }
        Command::Coarsen { input, merge } => coarsen(input, merge),
        Command::Derived(input) => derived(input),
        Command::Census { field, dim, jobs } => census(*field, *dim, *jobs),
        Command::Examples { write, field } => examples(write.as_deref(), *field),
        Command::Verify { report, input } => verify(report, input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("glg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
