//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input parses but fails validation
//! (violations go to stderr, one per line), 2 on usage, read or parse
//! errors. Set `HYPERNEST_COLOR=1` to color diagnostics.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hypernest_core::chem::{
    benzene_fixture, build_chemical_hypergraph, build_molecular_hypergraph, feinberg_fixture,
    lesmis_fixture, metabolic_fixture, ChemicalSystemSpec,
};
use hypernest_core::crn::{
    parse_crn_unchecked, to_reaction_hypergraph, validate, Crn, ParseError, Severity,
};
use hypernest_core::matrices::{
    directed_incidence_signed, directed_incidence_split, incidence, stoichiometric_complexes,
    stoichiometric_reactions_signed,
};
use hypernest_core::{Hypergraph, IncidenceMatrix};

use crate::chemdoc::{parse_chemical_system, HYDROGENATION_DOCUMENT};
use crate::exportio::{from_canonical, to_canonical, to_csv, to_dot, ExportError};

#[derive(Debug, Parser)]
#[command(
    name = "hypernest",
    version,
    about = "Unified hypergraphs for chemical systems"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Input format; by default taken from the file extension.
    #[arg(long, global = true, value_name = "NAME")]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Canonical hypergraph JSON (.hg)
    Hg,
    /// Reaction list (.crn)
    Crn,
    /// Chemical system document (.chem)
    Chem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Incidence,
    Split,
    Signed,
    StoichComplexes,
    StoichReactions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StoichKind {
    Complexes,
    Reactions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Example {
    Benzene,
    Hydrogenation,
    Feinberg,
    Metabolic,
    Lesmis,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an input against every structural invariant.
    Validate { input: Option<PathBuf> },
    /// Print whether a hypergraph is simple, nested, directed or both.
    Classify { input: Option<PathBuf> },
    /// Emit an incidence or stoichiometric matrix as CSV.
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        input: Option<PathBuf>,
    },
    /// Emit Graphviz DOT.
    Dot { input: Option<PathBuf> },
    /// Parse and check a reaction list; print it canonically or as a matrix.
    CrnParse {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        matrix: Option<StoichKind>,
    },
    /// Compile a reaction list into its reaction hypergraph.
    CrnHypergraph { input: Option<PathBuf> },
    /// Compile a chemical system document into its multilevel hypergraph.
    ChemBuild {
        input: Option<PathBuf>,
        /// Build only the molecular hypergraph of this molecule.
        #[arg(long, value_name = "NAME")]
        molecule: Option<String>,
    },
    /// Print a built-in example.
    Example {
        #[arg(value_enum)]
        name: Example,
    },
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1; one diagnostic per line.
    Invalid(Vec<String>),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invalid(_) => 1,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("error: {e}"))
    }
}

impl From<ExportError> for Failure {
    fn from(e: ExportError) -> Self {
        match e {
            ExportError::Hypergraph(h) => Failure::Invalid(vec![format!("error: {h}")]),
            other => Failure::Usage(format!("error: {other}")),
        }
    }
}

enum Input {
    Hypergraph(Hypergraph),
    Crn(Crn),
    Chem(ChemicalSystemSpec),
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    format: Option<Format>,
}

impl Ctx<'_> {
    fn read(&mut self, input: &Option<PathBuf>) -> Result<(String, Option<Format>), Failure> {
        match input.as_deref() {
            None => Ok((read_stdin(self.stdin)?, None)),
            Some(p) if p == Path::new("-") => Ok((read_stdin(self.stdin)?, None)),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| {
                    Failure::Usage(format!("error: cannot read {}: {e}", p.display()))
                })?;
                let ext = match p.extension().and_then(|e| e.to_str()) {
                    Some("hg") => Some(Format::Hg),
                    Some("crn") => Some(Format::Crn),
                    Some("chem") => Some(Format::Chem),
                    _ => None,
                };
                Ok((text, ext))
            }
        }
    }

    /// Reads and parses an input. Format precedence: `--format`, file
    /// extension, `default`, then a look at the content.
    fn load(&mut self, input: &Option<PathBuf>, default: Option<Format>) -> Result<Input, Failure> {
        let (text, ext) = self.read(input)?;
        let format = self
            .format
            .or(ext)
            .or(default)
            .unwrap_or_else(|| sniff(&text));
        Ok(match format {
            Format::Hg => Input::Hypergraph(from_canonical(&text)?),
            Format::Crn => Input::Crn(parse_crn_unchecked(&text)?),
            Format::Chem => Input::Chem(
                parse_chemical_system(&text).map_err(|e| Failure::Usage(format!("error: {e}")))?,
            ),
        })
    }

    fn load_crn(&mut self, input: &Option<PathBuf>) -> Result<Crn, Failure> {
        if matches!(self.format, Some(f) if f != Format::Crn) {
            return Err(Failure::Usage(
                "error: this command reads reaction lists; --format must be crn".into(),
            ));
        }
        match self.load(input, Some(Format::Crn))? {
            Input::Crn(crn) => Ok(crn),
            _ => Err(Failure::Usage(
                "error: expected a reaction list (.crn)".into(),
            )),
        }
    }

    fn load_hypergraph(&mut self, input: &Option<PathBuf>) -> Result<Hypergraph, Failure> {
        match self.load(input, None)? {
            Input::Hypergraph(g) => Ok(g),
            Input::Crn(crn) => {
                check_crn(&crn)?;
                to_reaction_hypergraph(&crn)
                    .map_err(|e| Failure::Invalid(vec![format!("error: {e}")]))
            }
            Input::Chem(spec) => build_chemical_hypergraph(&spec)
                .map_err(|e| Failure::Invalid(vec![format!("error: {e}")])),
        }
    }
}

fn read_stdin(stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| Failure::Usage(format!("error: cannot read standard input: {e}")))?;
    Ok(s)
}

fn sniff(text: &str) -> Format {
    let t = text.trim_start();
    if t.starts_with('{') {
        Format::Hg
    } else if text.contains("[[molecules]]") || text.contains("[[reactions]]") {
        Format::Chem
    } else {
        Format::Crn
    }
}

/// Fails on error-level violations; warnings alone pass.
fn check_crn(crn: &Crn) -> Result<Vec<String>, Failure> {
    let violations = validate(crn);
    let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    if violations.iter().any(|v| v.severity() == Severity::Error) {
        Err(Failure::Invalid(lines))
    } else {
        Ok(lines)
    }
}

fn side_by_side(h_s: &IncidenceMatrix, h_t: &IncidenceMatrix) -> IncidenceMatrix {
    let cols = h_s
        .cols
        .iter()
        .map(|c| format!("{c}:source"))
        .chain(h_t.cols.iter().map(|c| format!("{c}:target")))
        .collect();
    let mut m = IncidenceMatrix::zeros(h_s.row_kind, h_s.rows.clone(), cols);
    let k = h_s.n_cols();
    for r in 0..h_s.n_rows() {
        for c in 0..k {
            m.set(r, c, h_s.get(r, c));
            m.set(r, k + c, h_t.get(r, c));
        }
    }
    m
}

/// Output text plus any warnings for stderr.
fn execute(cmd: &Command, ctx: &mut Ctx<'_>) -> Result<(String, Vec<String>), Failure> {
    let mut warnings = Vec::new();
    let out = match cmd {
        Command::Validate { input } => {
            match ctx.load(input, None)? {
                Input::Hypergraph(g) => g
                    .validate()
                    .map_err(|e| Failure::Invalid(vec![format!("error: {e}")]))?,
                Input::Crn(crn) => warnings = check_crn(&crn)?,
                Input::Chem(spec) => {
                    build_chemical_hypergraph(&spec)
                        .map_err(|e| Failure::Invalid(vec![format!("error: {e}")]))?;
                }
            }
            "ok\n".to_string()
        }
        Command::Classify { input } => format!("{}\n", ctx.load_hypergraph(input)?.classify()),
        Command::Matrix { kind, input } => {
            let m = match kind {
                MatrixKind::StoichComplexes | MatrixKind::StoichReactions => {
                    let crn = ctx.load_crn(input)?;
                    warnings = check_crn(&crn)?;
                    if *kind == MatrixKind::StoichComplexes {
                        stoichiometric_complexes(&crn)
                    } else {
                        stoichiometric_reactions_signed(&crn)
                    }
                }
                _ => {
                    let g = ctx.load_hypergraph(input)?;
                    match kind {
                        MatrixKind::Incidence => incidence(&g),
                        MatrixKind::Signed => directed_incidence_signed(&g),
                        _ => {
                            let split = directed_incidence_split(&g);
                            side_by_side(&split.source, &split.target)
                        }
                    }
                }
            };
            to_csv(&m)
        }
        Command::Dot { input } => to_dot(&ctx.load_hypergraph(input)?),
        Command::CrnParse { input, matrix } => {
            let crn = ctx.load_crn(input)?;
            warnings = check_crn(&crn)?;
            match matrix {
                None => crn.render(),
                Some(StoichKind::Complexes) => to_csv(&stoichiometric_complexes(&crn)),
                Some(StoichKind::Reactions) => to_csv(&stoichiometric_reactions_signed(&crn)),
            }
        }
        Command::CrnHypergraph { input } => {
            let crn = ctx.load_crn(input)?;
            warnings = check_crn(&crn)?;
            let g = to_reaction_hypergraph(&crn)
                .map_err(|e| Failure::Invalid(vec![format!("error: {e}")]))?;
            to_canonical(&g)
        }
        Command::ChemBuild { input, molecule } => {
            if matches!(ctx.format, Some(f) if f != Format::Chem) {
                return Err(Failure::Usage(
                    "error: chem-build reads chemical system documents; --format must be chem"
                        .into(),
                ));
            }
            let spec = match ctx.load(input, Some(Format::Chem))? {
                Input::Chem(spec) => spec,
                _ => {
                    return Err(Failure::Usage(
                        "error: expected a chemical system document".into(),
                    ))
                }
            };
            let invalid =
                |e: hypernest_core::chem::ChemError| Failure::Invalid(vec![format!("error: {e}")]);
            let g = match molecule {
                None => build_chemical_hypergraph(&spec).map_err(invalid)?,
                Some(name) => {
                    let m = spec.molecule(name).ok_or_else(|| {
                        Failure::Usage(format!("error: no molecule named {name:?}"))
                    })?;
                    build_molecular_hypergraph(m).map_err(invalid)?
                }
            };
            to_canonical(&g)
        }
        Command::Example { name } => match name {
            Example::Benzene => to_canonical(
                &build_molecular_hypergraph(&benzene_fixture()).expect("fixture is valid"),
            ),
            Example::Hydrogenation => HYDROGENATION_DOCUMENT.to_string(),
            Example::Feinberg => feinberg_fixture().to_string(),
            Example::Metabolic => metabolic_fixture().to_string(),
            Example::Lesmis => to_canonical(&lesmis_fixture()),
        },
    };
    Ok((out, warnings))
}

fn paint(line: &str, color: bool) -> String {
    if !color {
        return line.to_string();
    }
    for (word, code) in [("error", "31"), ("warning", "33")] {
        if let Some(rest) = line.strip_prefix(word) {
            return format!("\x1b[1;{code}m{word}\x1b[0m{rest}");
        }
    }
    line.to_string()
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let color = std::env::var("HYPERNEST_COLOR").is_ok_and(|v| v == "1");
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let mut ctx = Ctx {
        stdin,
        format: cli.format,
    };
    match execute(&cli.command, &mut ctx) {
        Ok((out, warnings)) => {
            for w in warnings {
                let _ = writeln!(stderr, "{}", paint(&w, color));
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, out.as_bytes())
                    .map_err(|e| format!("error: cannot write {}: {e}", path.display())),
                None => stdout
                    .write_all(out.as_bytes())
                    .map_err(|e| format!("error: cannot write output: {e}")),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(stderr, "{}", paint(&msg, color));
                    2
                }
            }
        }
        Err(failure) => {
            let lines = match &failure {
                Failure::Usage(msg) => vec![msg.clone()],
                Failure::Invalid(lines) => lines.clone(),
            };
            for line in lines {
                let _ = writeln!(stderr, "{}", paint(&line, color));
            }
            failure.code()
        }
    }
}
