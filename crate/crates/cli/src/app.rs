use std::io::Write;
use std::path::{Path, PathBuf};

use calogero_core::calogero::{
    b_matrix, d_matrix_bzb, d_matrix_vandermonde, n_matrix, x_matrix, z_matrix,
};
use calogero_core::lagrange::{lagrange_coefficients, vandermonde};
use calogero_core::qmatrix::{nq_matrix, q_d_matrix};
use calogero_core::{
    generate_nodes, parse_operator, realize, Function, Matrix, NodeKind, NodeSet, QParam,
    Rational, SampledFunction, Scalar, Variant,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::document::{
    matrix_from_csv, matrix_to_csv, parse_scalars, MatrixDocument, MatrixKind, Mode,
    NodesDocument,
};
use crate::random::random_nodes;
use crate::verify::run_suite;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "calogero",
    version,
    about = "Calogero matrices for d/dx and the Jackson q-derivative"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a node set: equispaced A B N | chebyshev A B N | geometric C R N
    Nodes(NodesArgs),
    /// Build a matrix: X, B, Z, D, D-vandermonde, qD, N, Nq, V, C or operator
    Build(BuildArgs),
    /// Apply a matrix or operator to samples of a built-in function
    Apply(ApplyArgs),
    /// Check every identity on a node set and report PASS/FAIL per check
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Equispaced,
    Chebyshev,
    Geometric,
}

#[derive(Debug, Args)]
pub struct NodesArgs {
    pub kind: GeneratorArg,
    #[arg(allow_hyphen_values = true)]
    pub first: String,
    #[arg(allow_hyphen_values = true)]
    pub second: String,
    pub n: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub kind: String,
    /// Nodes file, or an inline list such as `[1,2,4]`
    #[arg(long)]
    pub nodes: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Operator expression for kind `operator`
    #[arg(long)]
    pub operator: Option<String>,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Matrix document (JSON, or CSV when the name ends in .csv)
    #[arg(long, conflicts_with = "operator", required_unless_present = "operator")]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub operator: Option<String>,
    /// `monomial:m` or `poly:c0,c1,...`
    #[arg(long)]
    pub function: String,
    #[arg(long)]
    pub nodes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub nodes: Option<String>,
    /// Number of seeded random rational nodes
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

/// Runs one command, writing its primary output to `out` unless `--out` redirects it.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Nodes(args) => cmd_nodes(&args, out),
        Command::Build(args) => cmd_build(&args, out),
        Command::Apply(args) => cmd_apply(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str, target: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

/// An inline `[...]` list or the path of a nodes document.
fn load_nodes_document(source: &str) -> Result<NodesDocument, CliError> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        // Inline lists may hold bare literals such as 3/2 that are not JSON.
        return NodesDocument::parse(trimmed).or_else(|_| inline_list(trimmed));
    }
    NodesDocument::parse(&read_file(Path::new(source))?)
}

fn inline_list(text: &str) -> Result<NodesDocument, CliError> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CliError::Invalid(format!("cannot read node list {text:?}")))?;
    Ok(NodesDocument {
        nodes: inner
            .split(',')
            .map(|s| s.trim().trim_matches('"').to_string())
            .collect(),
        mode: None,
    })
}

fn resolve_mode(flag: Option<ModeArg>, fallback: Option<Mode>) -> Mode {
    flag.map(Mode::from).or(fallback).unwrap_or(Mode::Exact)
}

fn parse_q<S: Scalar>(q: Option<&str>) -> Result<Option<QParam<S>>, CliError> {
    q.map(|t| Ok(QParam::new(S::parse_literal(t)?)?)).transpose()
}

fn require_q<S: Scalar>(q: Option<QParam<S>>, kind: &str) -> Result<QParam<S>, CliError> {
    q.ok_or_else(|| CliError::Invalid(format!("kind {kind} needs --q; there is no default q")))
}

pub fn cmd_nodes(args: &NodesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    fn generate<S: Scalar>(args: &NodesArgs) -> Result<NodesDocument, CliError> {
        let first = S::parse_literal(&args.first)?;
        let second = S::parse_literal(&args.second)?;
        let kind = match args.kind {
            GeneratorArg::Equispaced => NodeKind::Equispaced { a: first, b: second },
            GeneratorArg::Chebyshev => NodeKind::Chebyshev { a: first, b: second },
            GeneratorArg::Geometric => NodeKind::Geometric { c: first, r: second },
        };
        Ok(NodesDocument::from_nodes(&generate_nodes(&kind, args.n)?))
    }
    let doc = match Mode::from(args.mode) {
        Mode::Exact => generate::<Rational>(args)?,
        Mode::Float => generate::<f64>(args)?,
    };
    emit(&doc.to_json(), args.out.as_deref(), out)
}

/// Builds the matrix named by `kind` on `ns`.
pub fn build_matrix<S: Scalar>(
    kind: &str,
    ns: &NodeSet<S>,
    q: Option<QParam<S>>,
    operator: Option<&str>,
) -> Result<(MatrixKind, Option<S>, Matrix<S>), CliError> {
    let n = ns.len();
    let built = match kind {
        "X" => (MatrixKind::X, None, x_matrix(ns).to_matrix()),
        "B" => (MatrixKind::B, None, b_matrix(ns).to_matrix()),
        "Z" => (MatrixKind::Z, None, z_matrix(ns)),
        "D" => (MatrixKind::D, None, d_matrix_bzb(ns)),
        "D-vandermonde" => (MatrixKind::D, None, d_matrix_vandermonde(ns)?),
        "N" => (MatrixKind::N, None, n_matrix(n).to_matrix()),
        "V" => (MatrixKind::V, None, vandermonde(ns)),
        "C" => (MatrixKind::C, None, lagrange_coefficients(ns)),
        "qD" => {
            let q = require_q(q, kind)?;
            let m = q_d_matrix(ns, &q)?;
            (MatrixKind::QD, Some(q.value().clone()), m)
        }
        "Nq" => {
            let q = require_q(q, kind)?;
            let m = nq_matrix(n, &q).to_matrix();
            (MatrixKind::NQ, Some(q.value().clone()), m)
        }
        "operator" => {
            let text = operator.ok_or_else(|| {
                CliError::Invalid("kind operator needs --operator \"expr\"".into())
            })?;
            let expr = parse_operator::<S>(text)?;
            let q_value = q.as_ref().map(|q| q.value().clone());
            let variant = match q {
                Some(q) => Variant::QDeformed(q),
                None => Variant::Classical,
            };
            (MatrixKind::Operator, q_value, realize(&expr, ns, &variant)?)
        }
        other => {
            return Err(CliError::Invalid(format!(
                "unknown matrix kind {other:?} (expected X, B, Z, D, D-vandermonde, qD, N, Nq, V, C or operator)"
            )))
        }
    };
    Ok(built)
}

pub fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> Result<(), CliError> {
    fn go<S: Scalar>(args: &BuildArgs, doc: &NodesDocument) -> Result<String, CliError> {
        let ns = doc.to_nodes::<S>()?;
        let q = parse_q::<S>(args.q.as_deref())?;
        let (kind, q, m) = build_matrix(&args.kind, &ns, q, args.operator.as_deref())?;
        Ok(match args.format {
            FormatArg::Json => MatrixDocument::new(kind, &ns, q.as_ref(), &m).to_json(),
            FormatArg::Csv => matrix_to_csv(&m),
        })
    }
    let doc = load_nodes_document(&args.nodes)?;
    let text = match resolve_mode(args.mode, doc.mode) {
        Mode::Exact => go::<Rational>(args, &doc)?,
        Mode::Float => go::<f64>(args, &doc)?,
    };
    emit(&text, args.out.as_deref(), out)
}

#[derive(Debug, Serialize)]
struct SamplesDocument {
    input: Vec<String>,
    output: Vec<String>,
    mode: Mode,
}

enum MatrixSource {
    Json(MatrixDocument),
    Csv(String),
}

pub fn cmd_apply(args: &ApplyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    fn go<S: Scalar>(
        args: &ApplyArgs,
        nodes: Option<&NodesDocument>,
        source: Option<&MatrixSource>,
    ) -> Result<String, CliError> {
        let ns: NodeSet<S> = match (nodes, source) {
            (Some(doc), _) => doc.to_nodes()?,
            (None, Some(MatrixSource::Json(m))) => NodeSet::new(parse_scalars(&m.nodes)?)?,
            _ => return Err(CliError::Invalid("apply needs --nodes".into())),
        };
        let m = match source {
            Some(MatrixSource::Json(doc)) => doc.matrix::<S>()?,
            Some(MatrixSource::Csv(text)) => matrix_from_csv::<S>(text)?,
            None => {
                let text = args.operator.as_deref().expect("clap enforces one source");
                let variant = match parse_q::<S>(args.q.as_deref())? {
                    Some(q) => Variant::QDeformed(q),
                    None => Variant::Classical,
                };
                realize(&parse_operator::<S>(text)?, &ns, &variant)?
            }
        };
        let f = Function::<S>::parse(&args.function)?;
        let input: Vec<S> = ns.sample(|x| f.eval(x));
        let output = m.apply(&input)?;
        let doc = SamplesDocument {
            input: input.iter().map(ToString::to_string).collect(),
            output: output.iter().map(ToString::to_string).collect(),
            mode: S::MODE.into(),
        };
        let mut text = serde_json::to_string(&doc).expect("serializable");
        text.push('\n');
        Ok(text)
    }

    let nodes = args.nodes.as_deref().map(load_nodes_document).transpose()?;
    let source = match &args.matrix {
        Some(path) => {
            let text = read_file(path)?;
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                Some(MatrixSource::Csv(text))
            } else {
                Some(MatrixSource::Json(MatrixDocument::from_json(&text)?))
            }
        }
        None => None,
    };
    let fallback = match (&source, &nodes) {
        (Some(MatrixSource::Json(doc)), _) => Some(doc.mode),
        (_, Some(doc)) => doc.mode,
        _ => None,
    };
    let text = match resolve_mode(args.mode, fallback) {
        Mode::Exact => go::<Rational>(args, nodes.as_ref(), source.as_ref())?,
        Mode::Float => go::<f64>(args, nodes.as_ref(), source.as_ref())?,
    };
    emit(&text, None, out)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    fn go<S: Scalar>(args: &VerifyArgs, doc: Option<&NodesDocument>) -> Result<(String, bool), CliError> {
        let ns: NodeSet<S> = match (doc, args.random) {
            (Some(doc), _) => doc.to_nodes()?,
            (None, Some(n)) => random_nodes(n, args.seed)?,
            (None, None) => return Err(CliError::Invalid("verify needs --nodes or --random".into())),
        };
        let q = QParam::new(S::parse_literal(&args.q)?)?;
        let report = run_suite(&ns, &q);
        let header = format!(
            "verify: n={} q={} mode={}\n",
            ns.len(),
            q.value(),
            S::MODE
        );
        Ok((format!("{header}{report}\n"), report.all_passed()))
    }
    let doc = args.nodes.as_deref().map(load_nodes_document).transpose()?;
    let (text, passed) = match resolve_mode(args.mode, doc.as_ref().and_then(|d| d.mode)) {
        Mode::Exact => go::<Rational>(args, doc.as_ref())?,
        Mode::Float => go::<f64>(args, doc.as_ref())?,
    };
    emit(&text, None, out)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}
