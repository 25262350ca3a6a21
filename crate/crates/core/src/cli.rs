//! The `almab` command line: argument parsing, dispatch and rendering.

use crate::decide::{decide_profile, decide_tuple, Decision};
use crate::error::Error;
use crate::exact::RationalMatrix;
use crate::jordan::{nilpotent_tuple, normalize_generator, spectral_profile, JordanTuple, SpectralProfile};
use crate::tuples::{generate_all, is_admissible, parse_tuple};
use crate::witness::{
    build_complex_witness, build_symplectic_witness, format_endomorphism, format_two_form, symplectic_oracle,
    verify_complex, verify_symplectic, BracketTable, OracleVerdict,
};
use crate::Structure;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_PARSE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_UNSUPPORTED: i32 = 5;
pub const EXIT_INADMISSIBLE: i32 = 6;
pub const EXIT_IO: i32 = 7;
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "almab", version, about = "Complex and symplectic structures on almost abelian Lie algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Complex,
    Symplectic,
    Both,
}

impl StructureArg {
    fn expand(self) -> Vec<Structure> {
        match self {
            StructureArg::Complex => vec![Structure::Complex],
            StructureArg::Symplectic => vec![Structure::Symplectic],
            StructureArg::Both => Structure::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether g_A admits complex and/or symplectic structures.
    Decide(DecideArgs),
    /// List all nilpotent g_A of a dimension with admissibility flags.
    Enumerate(EnumerateArgs),
    /// Spectral profile and Jordan data of the defining matrix.
    Jordan(InputArgs),
    /// Build and verify an explicit structure for a nilpotent tuple.
    Witness(WitnessArgs),
    /// Search for a symplectic form directly from the bracket.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Jordan tuple "n1,..,nk;p1,..,pk;t" or "m" of a nilpotent matrix.
    #[arg(long)]
    pub tuple: Option<String>,
    /// JSON file {"rows": [[..], ..]} holding the matrix A.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    /// JSON file holding a spectral profile.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = StructureArg::Both)]
    pub structure: StructureArg,
    /// Attach verified witnesses (nilpotent inputs).
    #[arg(long)]
    pub witness: bool,
    /// Also run the symplectic oracle on the bracket.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Lie algebra dimension 2n.
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = StructureArg::Both)]
    pub structure: StructureArg,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub tuple: String,
    #[arg(long, value_enum)]
    pub structure: StructureArg,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Core(e) => match e {
                Error::Parse(_) => EXIT_PARSE,
                Error::Precondition(_) | Error::NotNilpotent { .. } | Error::NotSquarefree => EXIT_PRECONDITION,
                Error::UnsupportedFactor(_) => EXIT_UNSUPPORTED,
                Error::Inadmissible(_) => EXIT_INADMISSIBLE,
                Error::Internal(_) => EXIT_INTERNAL,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A rendered report in both formats.
struct Report {
    json: Value,
    table: String,
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

struct Resolved {
    label: String,
    matrix: RationalMatrix,
    profile: SpectralProfile,
    tuple: Option<JordanTuple>,
}

fn resolve(input: &InputArgs) -> CliResult<Resolved> {
    if let Some(t) = &input.tuple {
        let tuple = parse_tuple(t)?;
        return Ok(Resolved {
            label: format!("tuple {tuple}"),
            matrix: tuple.nilpotent_matrix(),
            profile: SpectralProfile::nilpotent(&tuple),
            tuple: Some(tuple),
        });
    }
    if let Some(path) = &input.matrix {
        let matrix = RationalMatrix::from_json(&read_file(path)?)?;
        if !matrix.is_square() {
            return Err(Error::Precondition(format!("matrix is {}×{}, not square", matrix.rows(), matrix.cols())).into());
        }
        let profile = spectral_profile(&matrix)?;
        let tuple = if profile.is_nilpotent() { Some(nilpotent_tuple(&matrix)?) } else { None };
        return Ok(Resolved { label: format!("matrix {}", path.display()), matrix, profile, tuple });
    }
    let path = input.profile.as_ref().expect("clap enforces one input");
    let profile = SpectralProfile::from_json(&read_file(path)?)?;
    let tuple = if profile.is_nilpotent() { profile.zero_class().map(|c| c.tuple.clone()) } else { None };
    Ok(Resolved { label: format!("profile {}", path.display()), matrix: profile.realize(), profile, tuple })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn decision_line(s: Structure, d: &Decision) -> String {
    let mut line = format!("{s}: {} ({})", yes_no(d.admissible), d.case);
    for f in &d.failures {
        line += &format!("\n  - {f}");
    }
    line
}

fn oracle_text(v: &OracleVerdict) -> String {
    match v {
        OracleVerdict::Exists { omega } => format!("exists: ω = {}", format_two_form(omega)),
        OracleVerdict::None { exact: true, .. } => "none (exact)".into(),
        OracleVerdict::None { false_negative_log2, .. } => {
            format!("none (confidence 1 - 2^{false_negative_log2})")
        }
    }
}

fn complex_witness_report(t: &JordanTuple) -> CliResult<Report> {
    let w = build_complex_witness(t)?;
    if !verify_complex(&w) {
        return Err(Error::Internal(format!("complex witness for {t} failed verification")).into());
    }
    let mut table = format!("complex witness for {t}, dimension {}\n", w.bracket.dimension());
    for b in w.bracket.describe() {
        table += &format!("  {b}\n");
    }
    table += &format!("  j: {}\n  verified: yes\n", format_endomorphism(&w.j));
    let mut json = w.to_json_value();
    json["tuple"] = json!(crate::tuples::format_tuple(t));
    json["brackets"] = json!(w.bracket.describe());
    Ok(Report { json, table })
}

fn symplectic_witness_report(t: &JordanTuple) -> CliResult<Report> {
    let w = build_symplectic_witness(t)?;
    if !verify_symplectic(&w)? {
        return Err(Error::Internal(format!("symplectic witness for {t} failed verification")).into());
    }
    let mut table = format!("symplectic witness for {t}, dimension {}\n", w.bracket.dimension());
    for b in w.bracket.describe() {
        table += &format!("  {b}\n");
    }
    table += &format!("  ω = {}\n  verified: yes\n", format_two_form(&w.omega));
    let mut json = w.to_json_value();
    json["tuple"] = json!(crate::tuples::format_tuple(t));
    json["brackets"] = json!(w.bracket.describe());
    Ok(Report { json, table })
}

fn witness_report(t: &JordanTuple, s: Structure) -> CliResult<Report> {
    match s {
        Structure::Complex => complex_witness_report(t),
        Structure::Symplectic => symplectic_witness_report(t),
    }
}

fn command_decide(a: &DecideArgs) -> CliResult<Report> {
    let r = resolve(&a.input)?;
    if r.matrix.rows() % 2 == 0 {
        return Err(Error::Precondition(format!(
            "matrix size {} is even; g_A has even dimension only for odd-size A",
            r.matrix.rows()
        ))
        .into());
    }
    let mut json = json!({
        "input": r.label,
        "dimension": r.matrix.rows() + 1,
        "profile": r.profile.to_json_value(),
    });
    let mut table = format!("input: {}\ndimension: {}\n", r.label, r.matrix.rows() + 1);
    let mut decisions = serde_json::Map::new();
    let mut symplectic = None;
    for s in a.structure.expand() {
        let d = match &r.tuple {
            Some(t) => decide_tuple(t, s)?,
            None => decide_profile(&r.profile, s)?,
        };
        table += &decision_line(s, &d);
        table.push('\n');
        decisions.insert(s.name().into(), d.to_json_value());
        if a.witness {
            let w = match (&r.tuple, d.admissible) {
                (Some(t), true) => {
                    let w = witness_report(t, s)?;
                    table += &w.table;
                    w.json
                }
                (Some(_), false) => json!(null),
                (None, _) => {
                    table += "  witness: only built for nilpotent inputs\n";
                    json!(null)
                }
            };
            decisions[s.name()]["witness"] = w;
        }
        if s == Structure::Symplectic {
            symplectic = Some(d.admissible);
        }
    }
    json["decisions"] = Value::Object(decisions);
    if a.oracle {
        let predicate = match symplectic {
            Some(v) => v,
            None => match &r.tuple {
                Some(t) => decide_tuple(t, Structure::Symplectic)?.admissible,
                None => decide_profile(&r.profile, Structure::Symplectic)?.admissible,
            },
        };
        let v = symplectic_oracle(&BracketTable::new(r.matrix.clone())?, a.seed, a.trials)?;
        let agree = v.exists() == predicate;
        table += &format!(
            "oracle: {}\nagreement with symplectic decision: {}\n",
            oracle_text(&v),
            yes_no(agree)
        );
        let mut o = v.to_json_value();
        o["agrees"] = json!(agree);
        o["seed"] = json!(a.seed);
        json["oracle"] = o;
    }
    Ok(Report { json, table })
}

fn command_enumerate(a: &EnumerateArgs) -> CliResult<Report> {
    if a.dim < 2 || a.dim % 2 == 1 {
        return Err(Error::Precondition(format!("dimension must be even and at least 2, got {}", a.dim)).into());
    }
    let m = a.dim - 1;
    let structures = a.structure.expand();
    let all = generate_all(m);
    let width = all.iter().map(|t| t.to_string().chars().count()).max().unwrap_or(5).max(5);
    let mut table = format!("{:<width$}", "tuple");
    for s in &structures {
        table += &format!("  {:<10}", s.name());
    }
    table = table.trim_end().to_string();
    table.push('\n');
    let mut flags = vec![Vec::new(); structures.len()];
    for t in &all {
        let mut line = format!("{:<width$}", t.to_string());
        for (i, &s) in structures.iter().enumerate() {
            let ok = is_admissible(t, s)?;
            flags[i].push(ok);
            line += &format!("  {:<10}", yes_no(ok));
        }
        table += line.trim_end();
        table.push('\n');
    }
    let mut by_structure = serde_json::Map::new();
    for (i, s) in structures.iter().enumerate() {
        let yes: Vec<String> = all.iter().zip(&flags[i]).filter(|p| *p.1).map(|p| crate::tuples::format_tuple(p.0)).collect();
        let no: Vec<String> = all.iter().zip(&flags[i]).filter(|p| !*p.1).map(|p| crate::tuples::format_tuple(p.0)).collect();
        table += &format!("{s}: {} admissible / {} not\n", yes.len(), no.len());
        by_structure.insert(s.name().into(), json!({ "admissible": yes, "inadmissible": no }));
    }
    Ok(Report {
        json: json!({ "dimension": a.dim, "total": m, "count": all.len(), "structures": by_structure }),
        table,
    })
}

fn command_jordan(a: &InputArgs) -> CliResult<Report> {
    let r = resolve(a)?;
    let mut json = json!({
        "input": r.label,
        "size": r.matrix.rows(),
        "dimension": r.matrix.rows() + 1,
        "profile": r.profile.to_json_value(),
        "nilpotent": r.profile.is_nilpotent(),
    });
    let table = match &r.tuple {
        Some(t) => {
            json["tuple"] = json!(crate::tuples::format_tuple(t));
            json["step"] = json!(t.step());
            json["kernel_dimensions"] = json!(r.matrix.kernel_dimension_sequence());
            format!("{t}, nilpotent, {}-step\n", t.step())
        }
        None => {
            let n = normalize_generator(&r.profile);
            json["normalized"] = json!({
                "profile": n.profile.to_json_value(),
                "scale": n.scale.as_ref().map(crate::exact::format_rational),
                "note": n.note,
            });
            let mut s = format!("{}\n", r.profile);
            match &n.scale {
                Some(c) => s += &format!("normalized by {}: {}\n", crate::exact::format_rational(c), n.profile),
                None => s += "not normalized\n",
            }
            if let Some(note) = &n.note {
                s += &format!("note: {note}\n");
            }
            s
        }
    };
    Ok(Report { json, table })
}

fn command_witness(a: &WitnessArgs) -> CliResult<Report> {
    let t = parse_tuple(&a.tuple)?;
    let reports = a
        .structure
        .expand()
        .into_iter()
        .map(|s| witness_report(&t, s))
        .collect::<CliResult<Vec<_>>>()?;
    if reports.len() == 1 {
        return Ok(reports.into_iter().next().unwrap());
    }
    Ok(Report {
        table: reports.iter().map(|r| r.table.as_str()).collect::<Vec<_>>().join(""),
        json: Value::Array(reports.into_iter().map(|r| r.json).collect()),
    })
}

fn command_oracle(a: &OracleArgs) -> CliResult<Report> {
    let r = resolve(&a.input)?;
    let v = symplectic_oracle(&BracketTable::new(r.matrix.clone())?, a.seed, a.trials)?;
    let mut json = v.to_json_value();
    json["input"] = json!(r.label);
    json["seed"] = json!(a.seed);
    Ok(Report { json, table: format!("{}\n", oracle_text(&v)) })
}

fn execute(cli: &Cli) -> CliResult<String> {
    let report = match &cli.command {
        Command::Decide(a) => command_decide(a)?,
        Command::Enumerate(a) => command_enumerate(a)?,
        Command::Jordan(a) => command_jordan(a)?,
        Command::Witness(a) => command_witness(a)?,
        Command::Oracle(a) => command_oracle(a)?,
    };
    Ok(match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("JSON values serialize")),
        Format::Table => report.table,
    })
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
