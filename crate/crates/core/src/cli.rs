//! Command-line front end.
//!
//! Every subcommand prints one JSON object (or readable text with
//! `--output text`). Exit codes: 0 success, 2 usage or input error,
//! 3 domain error such as a violated precondition.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cones::{classify_cone, orbit_invariant, same_orbit};
use crate::decompose::{
    skew_to_sym_commutator, sym_traceless_to_commutator, two_symmetric_factors, CommutatorPair,
};
use crate::error::Error;
use crate::image::{
    classify_image, image_span, label_from_predicates, label_of_span, predicates, witness_search,
};
use crate::lie4::{
    classify_lie_skew_ideal, component_names, generate_lie_skew_ideal, o4_collapse, project_m4,
    Component, ComponentSet,
};
use crate::linalg::SubspaceBasis;
use crate::matrix::{InvolutionCtx, InvolutionKind, Matrix, Scalar, Q};
use crate::star_poly::StarPolynomial;

pub const SEED_ENV: &str = "STARIMAGE_SEED";

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InvolutionArg {
    Transpose,
    Symplectic,
}

#[derive(Parser, Debug)]
#[command(name = "starimage", version, about = "Images of multilinear *-polynomials on matrix algebras")]
struct Cli {
    /// Involution on the matrix algebra.
    #[arg(long, global = true, value_enum, default_value = "transpose")]
    involution: InvolutionArg,

    /// Scalar backend for matrix commands.
    #[arg(long, global = true, value_enum, default_value = "exact")]
    backend: Backend,

    /// Random seed; the STARIMAGE_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,

    /// Largest accepted polynomial degree.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Polynomial such as "[y1,y2][y3,y4]".
    poly: Option<String>,
    /// Read the polynomial from a file instead.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args, Debug)]
struct MatrixInput {
    /// Matrix as JSON: {"n": 2, "entries": [[0, 1], [-1, 0]]}.
    #[arg(long)]
    matrix: Option<String>,
    /// Read the matrix JSON from a file instead.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the image and the span of a polynomial on M2.
    Classify(PolyInput),
    /// Basis of the linear span of the image on Mn.
    Span {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Replace skew variables by commutators of symmetric ones.
    Reduce(PolyInput),
    /// Commutator and product decompositions of a matrix.
    #[command(subcommand)]
    Decompose(DecomposeCommand),
    /// Irreducible invariant cone of a 2×2 matrix.
    Cone(MatrixInput),
    /// Whether two 2×2 matrices are orthogonally conjugate.
    OrbitEq {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Values with p(r) = 1 and a slot replacement giving a non-scalar.
    Witness {
        #[command(flatten)]
        input: PolyInput,
        /// JSON list of matrices with p(x) a nonzero scalar.
        #[arg(long)]
        x: String,
        /// JSON list of matrices with p(y) non-scalar.
        #[arg(long)]
        y: String,
    },
    /// Lie skew-ideals of M4 under the transpose involution.
    #[command(subcommand)]
    Lie4(Lie4Command),
}

#[derive(Subcommand, Debug)]
enum DecomposeCommand {
    /// Trace-zero symmetric A = [B, C], B symmetric, C skew.
    Comm(MatrixInput),
    /// Skew A = [B, C], B and C symmetric.
    Skewcomm(MatrixInput),
    /// A = S1·S2 with S1, S2 symmetric.
    Twosym(MatrixInput),
}

#[derive(Subcommand, Debug)]
enum Lie4Command {
    /// Components of the Lie skew-ideal spanned by the given matrices.
    Classify {
        /// JSON list of 4×4 matrices spanning the ideal.
        #[arg(long)]
        matrices: String,
    },
    /// Coordinates of a 4×4 matrix in Z, K1, K2 and SK.
    Project(MatrixInput),
    /// Lie skew-ideal generated by the given matrices.
    Generate {
        /// JSON list of n×n matrices.
        #[arg(long)]
        matrices: String,
    },
    /// Orthogonally invariant closure of a component set.
    Collapse {
        /// JSON list such as ["Z","K1"].
        #[arg(long)]
        components: String,
    },
}

struct Config {
    involution: InvolutionKind,
    backend: Backend,
    seed: u64,
    output: OutputFormat,
    max_degree: usize,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::Input(_)
            | Error::DimensionMismatch { .. }
            | Error::OddSymplectic(_)
            | Error::MissingVariable(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// A successful result: the JSON value and its text rendering.
struct Report {
    json: Value,
    text: String,
}

pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            if code == 0 {
                return Outcome {
                    code,
                    stdout: e.to_string(),
                };
            }
            let json_mode = !args.windows(2).any(|w| w[0] == "--output" && w[1] == "text")
                && !args.iter().any(|a| a == "--output=text");
            return fail(json_mode, usage(e.to_string().trim_end()));
        }
    };
    let seed = std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(cli.seed);
    let config = Config {
        involution: match cli.involution {
            InvolutionArg::Transpose => InvolutionKind::Transpose,
            InvolutionArg::Symplectic => InvolutionKind::Symplectic,
        },
        backend: cli.backend,
        seed,
        output: cli.output,
        max_degree: cli.max_degree as usize,
    };
    let json_mode = config.output == OutputFormat::Json;
    match dispatch(&cli.command, &config) {
        Ok(report) => Outcome {
            code: 0,
            stdout: if json_mode {
                format!("{}\n", report.json)
            } else {
                report.text
            },
        },
        Err(f) => fail(json_mode, f),
    }
}

fn fail(json_mode: bool, f: Failure) -> Outcome {
    let stdout = if json_mode {
        format!("{}\n", json!({ "error": f.message }))
    } else {
        format!("error: {}\n", f.message)
    };
    Outcome { code: f.code, stdout }
}

fn dispatch(command: &Command, cfg: &Config) -> Result<Report, Failure> {
    match command {
        Command::Classify(input) => classify(&read_poly(input, cfg)?, cfg),
        Command::Span { input, n } => span(&read_poly(input, cfg)?, *n, cfg),
        Command::Reduce(input) => reduce(&read_poly(input, cfg)?, cfg),
        Command::Decompose(sub) => decompose(sub, cfg),
        Command::Cone(input) => {
            forbid_symplectic(cfg, "cone")?;
            let text = read_matrix_text(input)?;
            match cfg.backend {
                Backend::Exact => cone::<Q>(&text),
                Backend::Real => cone::<f64>(&text),
            }
        }
        Command::OrbitEq { left, right } => {
            forbid_symplectic(cfg, "orbit-eq")?;
            match cfg.backend {
                Backend::Exact => orbit_eq::<Q>(left, right),
                Backend::Real => orbit_eq::<f64>(left, right),
            }
        }
        Command::Witness { input, x, y } => witness(&read_poly(input, cfg)?, x, y, cfg),
        Command::Lie4(sub) => lie4(sub),
    }
}

fn forbid_symplectic(cfg: &Config, name: &str) -> Result<(), Failure> {
    if cfg.involution == InvolutionKind::Symplectic {
        return Err(usage(format!(
            "`{name}` classifies orthogonal orbits and requires --involution transpose"
        )));
    }
    Ok(())
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn read_poly(input: &PolyInput, cfg: &Config) -> Result<StarPolynomial, Failure> {
    let text = match (&input.poly, &input.file) {
        (Some(p), None) => p.clone(),
        (None, Some(path)) => read_file(path)?,
        (Some(_), Some(_)) => return Err(usage("give the polynomial inline or with --file, not both")),
        (None, None) => return Err(usage("missing polynomial")),
    };
    let p: StarPolynomial = text.trim().parse().map_err(Error::from)?;
    if p.degree() > cfg.max_degree {
        return Err(Failure {
            code: 3,
            message: format!(
                "degree {} exceeds the maximum {}; raise it with --max-degree",
                p.degree(),
                cfg.max_degree
            ),
        });
    }
    Ok(p)
}

fn read_matrix_text(input: &MatrixInput) -> Result<String, Failure> {
    match (&input.matrix, &input.file) {
        (Some(m), None) => Ok(m.clone()),
        (None, Some(path)) => read_file(path),
        (Some(_), Some(_)) => Err(usage("give the matrix inline or with --file, not both")),
        (None, None) => Err(usage("missing --matrix")),
    }
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

fn parse_matrix<T: Scalar>(text: &str) -> Result<Matrix<T>, Failure> {
    Ok(Matrix::from_json(&parse_json(text)?)?)
}

fn parse_matrix_list<T: Scalar>(text: &str) -> Result<Vec<Matrix<T>>, Failure> {
    let v = parse_json(text)?;
    let items = v
        .as_array()
        .ok_or_else(|| usage("expected a JSON list of matrices"))?;
    items
        .iter()
        .map(|m| Matrix::from_json(m).map_err(Failure::from))
        .collect()
}

fn ctx_for(cfg: &Config, n: usize) -> Result<InvolutionCtx, Failure> {
    Ok(InvolutionCtx::new(cfg.involution, n)?)
}

fn basis_json(span: &SubspaceBasis) -> Value {
    Value::Array(span.matrices().iter().map(Matrix::to_json).collect())
}

fn basis_text(span: &SubspaceBasis) -> String {
    let mut out = String::new();
    for m in span.matrices() {
        let _ = writeln!(out, "  {m}");
    }
    out
}

fn classify(p: &StarPolynomial, cfg: &Config) -> Result<Report, Failure> {
    let ctx = ctx_for(cfg, 2)?;
    let class = classify_image(p, &ctx)?;
    let span = image_span(p, &ctx);
    let label = label_of_span(&span, &ctx)?;
    let pr = predicates(p, &ctx);
    let json = json!({
        "polynomial": p.to_string(),
        "involution": ctx.kind().to_string(),
        "image_class": class.name(),
        "span_label": label.name(),
        "span_dim": span.dim(),
        "span_basis": basis_json(&span),
        "predicates": pr,
        "predicate_label": label_from_predicates(&pr).name(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "polynomial:   {p}");
    let _ = writeln!(text, "involution:   {}", ctx.kind());
    let _ = writeln!(text, "image:        {} = {}", class.name(), class.description());
    let _ = writeln!(text, "span label:   {} = {}", label.name(), label.symbol());
    let _ = writeln!(text, "span dim:     {}", span.dim());
    text.push_str("span basis:\n");
    text.push_str(&basis_text(&span));
    let _ = writeln!(
        text,
        "predicates:   identity={} central={} skew_part_identity={} sym_part_identity={} \
         sym_part_central={} trace_vanishes={} cyclic_zero={}",
        pr.is_identity,
        pr.is_central,
        pr.skew_part_identity,
        pr.sym_part_identity,
        pr.sym_part_central,
        pr.trace_vanishes,
        pr.cyclic_zero
    );
    Ok(Report { json, text })
}

fn span(p: &StarPolynomial, n: usize, cfg: &Config) -> Result<Report, Failure> {
    let ctx = ctx_for(cfg, n)?;
    let span = image_span(p, &ctx);
    let json = json!({
        "polynomial": p.to_string(),
        "involution": ctx.kind().to_string(),
        "n": n,
        "span_dim": span.dim(),
        "span_basis": basis_json(&span),
    });
    let text = format!(
        "span of {p} on M{n} ({}): dimension {}\n{}",
        ctx.kind(),
        span.dim(),
        basis_text(&span)
    );
    Ok(Report { json, text })
}

fn reduce(p: &StarPolynomial, cfg: &Config) -> Result<Report, Failure> {
    let g = p.substitute_commutators();
    if g.degree() > cfg.max_degree {
        return Err(Failure {
            code: 3,
            message: format!(
                "reduced degree {} exceeds the maximum {}",
                g.degree(),
                cfg.max_degree
            ),
        });
    }
    let slots: Vec<Value> = p
        .commutator_slots()
        .iter()
        .map(|(z, a, b)| json!({ "skew": z.to_string(), "commutator": format!("[{a},{b}]") }))
        .collect();
    let before = image_span(p, &InvolutionCtx::transpose(2));
    let after = image_span(&g, &InvolutionCtx::transpose(2));
    let json = json!({
        "polynomial": p.to_string(),
        "reduced": g.to_string(),
        "substitutions": slots,
        "span_dim": before.dim(),
        "spans_equal": before == after,
    });
    let mut text = format!("{p}\n  reduces to\n{g}\n");
    for (z, a, b) in p.commutator_slots() {
        let _ = writeln!(text, "  {z} -> [{a},{b}]");
    }
    let _ = writeln!(text, "spans on M2 agree: {}", before == after);
    Ok(Report { json, text })
}

fn pair_report(a: &Matrix<f64>, pair: &CommutatorPair) -> Report {
    let residual = pair.residual(a);
    let json = json!({
        "kind": pair.kind,
        "b": pair.b.to_json(),
        "c": pair.c.to_json(),
        "residual": residual,
    });
    let text = format!("B = {}\nC = {}\nresidual ‖[B,C] − A‖∞ = {residual:e}\n", pair.b, pair.c);
    Report { json, text }
}

fn decompose(sub: &DecomposeCommand, cfg: &Config) -> Result<Report, Failure> {
    if cfg.involution == InvolutionKind::Symplectic {
        return Err(usage("decompositions use the transpose involution"));
    }
    match sub {
        DecomposeCommand::Comm(input) => {
            let a = real_matrix(&read_matrix_text(input)?)?;
            let pair = sym_traceless_to_commutator(&a)?;
            Ok(pair_report(&a, &pair))
        }
        DecomposeCommand::Skewcomm(input) => {
            let a = real_matrix(&read_matrix_text(input)?)?;
            let pair = skew_to_sym_commutator(&a)?;
            Ok(pair_report(&a, &pair))
        }
        DecomposeCommand::Twosym(input) => {
            let text = read_matrix_text(input)?;
            match cfg.backend {
                Backend::Exact => twosym::<Q>(&text, cfg.seed),
                Backend::Real => twosym::<f64>(&text, cfg.seed),
            }
        }
    }
}

/// Commutator decompositions need square roots, so input is read exactly and
/// converted to the real backend.
fn real_matrix(text: &str) -> Result<Matrix<f64>, Failure> {
    Ok(parse_matrix::<Q>(text)?.to_real())
}

fn twosym<T: crate::linalg::Kernel>(text: &str, seed: u64) -> Result<Report, Failure> {
    let a = parse_matrix::<T>(text)?;
    let (s1, s2) = two_symmetric_factors(&a, seed)?;
    let residual = (&(&s1 * &s2) - &a).norm_inf();
    let json = json!({
        "s1": s1.to_json(),
        "s2": s2.to_json(),
        "residual": residual,
        "seed": seed,
    });
    let text = format!("S1 = {s1}\nS2 = {s2}\nresidual ‖S1·S2 − A‖∞ = {residual:e}\n");
    Ok(Report { json, text })
}

fn cone<T: Scalar>(text: &str) -> Result<Report, Failure> {
    let a = parse_matrix::<T>(text)?;
    let c = classify_cone(&a)?;
    Ok(Report {
        json: c.to_json(),
        text: format!("{c}\n"),
    })
}

fn invariant_json<T: Scalar>(a: &Matrix<T>) -> Result<Value, Failure> {
    let inv = orbit_invariant(a)?;
    Ok(json!({
        "alpha0": inv.alpha0.to_json(),
        "alpha12_sq": inv.alpha12_sq.to_json(),
        "norm_u_sq": inv.norm_u_sq.to_json(),
    }))
}

fn orbit_eq<T: Scalar>(left: &str, right: &str) -> Result<Report, Failure> {
    let a = parse_matrix::<T>(left)?;
    let b = parse_matrix::<T>(right)?;
    let same = same_orbit(&a, &b)?;
    let json = json!({
        "same_orbit": same,
        "left": invariant_json(&a)?,
        "right": invariant_json(&b)?,
    });
    Ok(Report {
        json,
        text: format!("same O(2)-orbit: {same}\n"),
    })
}

fn witness(p: &StarPolynomial, x: &str, y: &str, cfg: &Config) -> Result<Report, Failure> {
    let xs = parse_matrix_list::<Q>(x)?;
    let ys = parse_matrix_list::<Q>(y)?;
    let n = xs.first().map(Matrix::n).unwrap_or(2);
    let ctx = ctx_for(cfg, n)?;
    let w = witness_search(p, &xs, &ys, &ctx)?;
    let json = json!({
        "index": w.index,
        "r": w.r.iter().map(Matrix::to_json).collect::<Vec<_>>(),
        "r_star": w.r_star.to_json(),
    });
    let mut text = format!("slot {} (1-based)\nr:\n", w.index);
    for m in &w.r {
        let _ = writeln!(text, "  {m}");
    }
    let _ = writeln!(text, "replacement: {}", w.r_star);
    Ok(Report { json, text })
}

fn components_report(set: &ComponentSet, extra: Value) -> Report {
    let names = component_names(set);
    let mut json = json!({ "components": names });
    if let (Value::Object(out), Value::Object(more)) = (&mut json, extra) {
        out.extend(more);
    }
    Report {
        text: format!("{{{}}}\n", names.join(", ")),
        json,
    }
}

fn lie4(sub: &Lie4Command) -> Result<Report, Failure> {
    match sub {
        Lie4Command::Classify { matrices } => {
            let ms = parse_matrix_list::<Q>(matrices)?;
            for m in &ms {
                if m.n() != 4 {
                    return Err(Error::DimensionMismatch {
                        expected: 4,
                        found: m.n(),
                    }
                    .into());
                }
            }
            let span = SubspaceBasis::span(4, &ms);
            let set = classify_lie_skew_ideal(&span)?;
            Ok(components_report(&set, json!({ "dim": span.dim() })))
        }
        Lie4Command::Project(input) => {
            let a = parse_matrix::<Q>(&read_matrix_text(input)?)?;
            let p = project_m4(&a)?;
            let coords = |c: Component| -> Value {
                Value::Array(p.coordinates(c).iter().map(Scalar::to_json).collect())
            };
            let json = json!({
                "Z": coords(Component::Z),
                "K1": coords(Component::K1),
                "K2": coords(Component::K2),
                "SK": coords(Component::SK),
                "support": component_names(&p.support()),
            });
            let mut text = String::new();
            for c in Component::M4 {
                let _ = writeln!(text, "{c}: {}", p.part(c));
            }
            Ok(Report { json, text })
        }
        Lie4Command::Generate { matrices } => {
            let ms = parse_matrix_list::<Q>(matrices)?;
            let n = ms
                .first()
                .map(Matrix::n)
                .ok_or_else(|| usage("give at least one generator"))?;
            let span = generate_lie_skew_ideal(&ms, n)?;
            let mut json = json!({
                "n": n,
                "dim": span.dim(),
                "basis": basis_json(&span),
            });
            let mut text = format!("Lie skew-ideal of dimension {}\n", span.dim());
            if n == 4 {
                let set = classify_lie_skew_ideal(&span)?;
                json["components"] = json!(component_names(&set));
                let _ = writeln!(text, "components: {{{}}}", component_names(&set).join(", "));
            }
            text.push_str(&basis_text(&span));
            Ok(Report { json, text })
        }
        Lie4Command::Collapse { components } => {
            let names: Vec<String> = serde_json::from_value(parse_json(components)?)
                .map_err(|e| usage(format!("expected a list of component names: {e}")))?;
            let set = names
                .iter()
                .map(|s| s.parse::<Component>())
                .collect::<Result<ComponentSet, _>>()?;
            let c = o4_collapse(&set)?;
            let json = json!({
                "invariant": c.invariant,
                "collapsed": component_names(&c.collapsed),
            });
            let text = format!(
                "invariant: {}\ncollapsed: {{{}}}\n",
                c.invariant,
                component_names(&c.collapsed).join(", ")
            );
            Ok(Report { json, text })
        }
    }
}
