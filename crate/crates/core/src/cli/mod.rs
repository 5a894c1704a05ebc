//! Command line front end: argument parsing, dispatch and output.
//!
//! Every subcommand produces a [`Report`]. Text mode prints its `lines`, JSON
//! mode wraps the structured parts in the `apolar-ci/1` envelope. Object keys
//! are emitted in sorted order, so identical inputs give identical bytes.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::apolar::{
    annihilator_report, annihilator_slice_with, dual_from_ideal, hilbert_function_with, quadratic_space, Action,
};
use crate::ci::{binomial_survey, census, certify_ci, certify_qci, certify_uniform_ci, CiReport};
use crate::divided::{contract, contraction_annihilator_slice, dp_multiply, from_divided, to_divided, DividedPoly};
use crate::dual::{subalgebra_dual, young_substitution, YoungSubstitution};
use crate::error::{Error, Result};
use crate::golden;
use crate::hessian::{
    hessian_det_nonzero, higher_hessian, select_basis, slp_probe, BasisChoice, DetCertificate, DetReport,
    DEFAULT_RETRIES,
};
use crate::linalg::{Matrix, Subspace};
use crate::parse::{infer_variables, parse_poly, parse_var_list};
use crate::poly::subst::LinearSubstitution;
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, Scalar};

pub const SCHEMA: &str = "apolar-ci/1";

#[derive(Parser, Debug)]
#[command(name = "apolar", version, about = "Apolarity, inverse systems and complete intersection tests")]
struct Cli {
    /// Comma-separated variable names in declaration order; inferred and
    /// sorted when omitted.
    #[arg(short = 'v', long = "vars", global = true)]
    vars: Option<String>,

    /// Characteristic of the ground field: 0 for Q, otherwise a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,

    #[arg(long, global = true, value_enum, default_value_t = ActionArg::Diff)]
    action: ActionArg,

    /// Seed for the randomized determinant tests.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ActionArg {
    Diff,
    Contract,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Action {
        match a {
            ActionArg::Diff => Action::Differentiation,
            ActionArg::Contract => Action::Contraction,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Squarefree,
    Auto,
}

impl From<BasisArg> for BasisChoice {
    fn from(b: BasisArg) -> BasisChoice {
        match b {
            BasisArg::Squarefree => BasisChoice::SquareFree,
            BasisArg::Auto => BasisChoice::Auto,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quadratic complete intersection test (or the general CI test with --general).
    CheckCi {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        general: bool,
    },
    /// Complete intersection test for generators of one degree.
    CheckCiUniform {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        degree: u32,
    },
    /// Annihilator: minimal generators, or one slice with --degree.
    Ann {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Hilbert function of R/Ann(F).
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// The quadratic space Ann(F)_2.
    Qspace {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Higher Hessian of one order and a certificate for its determinant.
    Hessian {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long, value_enum, default_value_t = BasisArg::Squarefree)]
        basis: BasisArg,
    },
    /// Hessian criterion for the strong Lefschetz property.
    Slp {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, value_enum, default_value_t = BasisArg::Auto)]
        basis: BasisArg,
    },
    /// Dual generator G(y) = F(yM) of the subalgebra spanned by the rows of M.
    Substitute {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[command(flatten)]
        target: SubstTarget,
        /// Names of the new variables; y0, y1, ... by default.
        #[arg(long)]
        new_vars: Option<String>,
    },
    /// Forms of degree d annihilated by the given ideal.
    DualFromIdeal {
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
        #[arg(long)]
        socle_degree: u32,
    },
    /// Counts of generic quadratic CI conditions in n variables.
    Census { n: u64 },
    /// CI verdicts for the binomials alpha*M + beta*N of degree n in n variables.
    BinomialSurvey {
        n: usize,
        /// Comma-separated nonzero coefficients.
        #[arg(long, default_value = "1,-1")]
        coeffs: String,
    },
    /// Divided power calculator; coefficients refer to divided monomials.
    Dp {
        #[command(subcommand)]
        op: DpOp,
    },
    /// Runs every embedded example and reports each one.
    VerifyExamples,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SubstTarget {
    /// Rows separated by ';', entries by ','.
    #[arg(long)]
    matrix: Option<String>,
    /// Young block sizes, comma-separated.
    #[arg(long)]
    young: Option<String>,
}

#[derive(Subcommand, Debug)]
enum DpOp {
    /// Divided power product.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// f o gamma under contraction; f is an ordinary polynomial.
    Contract {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// x^I -> I! X^(I).
    ToDivided {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// X^(I) -> x^I / I!.
    FromDivided {
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// Degree-k slice of the contraction annihilator.
    Ann {
        #[arg(allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        degree: u32,
    },
}

/// What a subcommand hands back for printing.
struct Report {
    inputs: Value,
    result: Value,
    witnesses: Value,
    lines: Vec<String>,
    /// Nonzero when the command ran but found a failure worth signalling.
    status: i32,
}

impl Report {
    fn new(inputs: Value, result: Value, lines: Vec<String>) -> Self {
        Report { inputs, result, witnesses: json!({}), lines, status: 0 }
    }

    fn witnesses(mut self, w: Value) -> Self {
        self.witnesses = w;
        self
    }
}

struct Ctx {
    field: Field,
    vars: Option<Vec<String>>,
    action: Action,
    seed: u64,
}

impl Ctx {
    fn names<'a>(&self, texts: impl IntoIterator<Item = &'a str>) -> Result<Vec<String>> {
        match &self.vars {
            Some(v) => Ok(v.clone()),
            None => infer_variables(texts),
        }
    }

    fn form(&self, text: &str) -> Result<(Poly, Vec<String>)> {
        let names = self.names([text])?;
        Ok((parse_poly(text, &names, self.field)?, names))
    }
}

fn show(p: &Poly, names: &[String]) -> String {
    p.to_string_with(names)
}

fn show_all(ps: &[Poly], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| show(p, names)).collect()
}

fn show_monomial(m: &Monomial, names: &[String]) -> String {
    show(&Poly::monomial(m.clone(), Field::Rational.one()), names)
}

fn show_divided(g: &DividedPoly, names: &[String]) -> String {
    g.display(names).to_string()
}

fn scalars(text: &str, field: Field) -> Result<Vec<Scalar>> {
    text.split(',').map(|t| scalar(t, field)).collect()
}

fn scalar(text: &str, field: Field) -> Result<Scalar> {
    let p = parse_poly(text.trim(), &[], field)?;
    Ok(p.coeff(&Monomial::one(0)))
}

fn parse_matrix(text: &str, field: Field) -> Result<Matrix> {
    let rows = text.split(';').map(|r| scalars(r, field)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, field)
}

fn parse_blocks(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim().parse().map_err(|_| Error::Parse { pos: i, msg: format!("bad block size '{}'", t.trim()) })
        })
        .collect()
}

fn subspace_json(s: &Subspace, names: &[String]) -> Value {
    json!({"degree": s.degree(), "dim": s.dim(), "ambient_dim": s.ambient_dim(), "basis": show_all(&s.basis_polys(), names)})
}

fn ci_json(r: &CiReport, names: &[String]) -> (Value, Value) {
    let result = json!({
        "verdict": r.verdict,
        "stage": r.stage,
        "nvars": r.nvars,
        "degree": r.degree,
        "generator_degrees": r.generator_degrees,
        "hilbert": r.hilbert,
    });
    let witnesses = json!({
        "generators": show_all(&r.generators, names),
        "generator_dim": r.generator_dim,
        "expected_generator_dim": r.expected_generator_dim,
        "fill_degree": r.fill_degree,
        "fill_dim": r.fill_dim,
        "expected_fill_dim": r.expected_fill_dim,
        "partial_relations": r.partial_relations,
    });
    (result, witnesses)
}

fn ci_lines(r: &CiReport, names: &[String]) -> Vec<String> {
    let mut lines = vec![format!("verdict {} (stage {})", r.verdict, stage_name(r))];
    if !r.generators.is_empty() {
        lines.push(format!("generators: {}", show_all(&r.generators, names).join(", ")));
    }
    for rel in &r.partial_relations {
        let terms: Vec<String> = rel.iter().map(ToString::to_string).collect();
        lines.push(format!("partials relation: ({})", terms.join(", ")));
    }
    if let Some(fill) = r.fill_dim {
        lines.push(format!("degree {} fill: {fill} of {}", r.fill_degree, r.expected_fill_dim));
    }
    if let Some(h) = &r.hilbert {
        lines.push(format!("hilbert {h}"));
    }
    lines
}

fn stage_name(r: &CiReport) -> String {
    serde_json::to_value(r.stage).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn det_json(d: &DetReport) -> Value {
    let cert = match &d.certificate {
        DetCertificate::NonzeroAt { point, value } => json!({"point": point, "value": value}),
        DetCertificate::SymbolicZero => json!({"symbolic": "zero"}),
        DetCertificate::SymbolicNonzero { degree } => json!({"symbolic": "nonzero", "degree": degree}),
        DetCertificate::GridZero { bound } => json!({"grid_bound": bound}),
    };
    json!({"nonzero": d.nonzero, "method": d.certificate.method(), "certificate": cert, "seed": d.seed, "evaluations": d.evaluations})
}

fn det_line(d: &DetReport) -> String {
    match &d.certificate {
        DetCertificate::NonzeroAt { point, value } => {
            let p: Vec<String> = point.iter().map(ToString::to_string).collect();
            format!("det nonzero: {value} at ({})", p.join(", "))
        }
        DetCertificate::SymbolicZero => "det identically zero (symbolic)".into(),
        DetCertificate::SymbolicNonzero { degree } => format!("det nonzero of degree {degree} (symbolic)"),
        DetCertificate::GridZero { bound } => format!("det vanishes on the grid up to {bound}"),
    }
}

fn run_command(cmd: &Command, ctx: &Ctx) -> Result<Report> {
    match cmd {
        Command::CheckCi { form, general } => {
            let (f, names) = ctx.form(form)?;
            let r = if *general { certify_ci(&f)? } else { certify_qci(&f)? };
            let (result, w) = ci_json(&r, &names);
            Ok(Report::new(json!({"form": show(&f, &names), "general": general}), result, ci_lines(&r, &names))
                .witnesses(w))
        }
        Command::CheckCiUniform { form, degree } => {
            let (f, names) = ctx.form(form)?;
            let r = certify_uniform_ci(&f, *degree)?;
            let (result, w) = ci_json(&r, &names);
            Ok(Report::new(json!({"form": show(&f, &names), "degree": degree}), result, ci_lines(&r, &names))
                .witnesses(w))
        }
        Command::Ann { form, degree } => {
            let (f, names) = ctx.form(form)?;
            let inputs = json!({"form": show(&f, &names), "degree": degree});
            if let Some(k) = degree {
                let s = annihilator_slice_with(&f, *k, ctx.action)?;
                let mut lines = vec![format!("Ann_{k}: dim {} of {}", s.dim(), s.ambient_dim())];
                lines.extend(show_all(&s.basis_polys(), &names));
                return Ok(Report::new(inputs, subspace_json(&s, &names), lines));
            }
            let r = annihilator_report(&f, ctx.action)?;
            let gens = show_all(&r.generators, &names);
            let mut lines = vec![format!("hilbert {}", r.hilbert)];
            lines.extend(gens.iter().cloned());
            let result = json!({"generators": gens, "generator_degrees": r.generator_degrees(), "hilbert": r.hilbert});
            let slices: Vec<usize> = r.slices.iter().map(Subspace::dim).collect();
            Ok(Report::new(inputs, result, lines).witnesses(json!({"slice_dims": slices})))
        }
        Command::Hilbert { form } => {
            let (f, names) = ctx.form(form)?;
            let h = hilbert_function_with(&f, ctx.action)?;
            let result = json!({"hilbert": h, "symmetric": h.is_symmetric()});
            Ok(Report::new(json!({"form": show(&f, &names)}), result, vec![h.to_string()]))
        }
        Command::Qspace { form } => {
            let (f, names) = ctx.form(form)?;
            let q = quadratic_space(&f)?;
            let mut lines = vec![format!("dim {}", q.dim())];
            lines.extend(show_all(&q.basis_polys(), &names));
            Ok(Report::new(json!({"form": show(&f, &names)}), subspace_json(&q, &names), lines))
        }
        Command::Hessian { form, order, basis } => {
            let (f, names) = ctx.form(form)?;
            let (b, kind) = select_basis(&f, *order, (*basis).into())?;
            let h = higher_hessian(&f, *order, Some(&b))?;
            let det = hessian_det_nonzero(&h, f.nvars(), f.field(), ctx.seed, DEFAULT_RETRIES)?;
            let basis_names: Vec<String> = b.iter().map(|m| show_monomial(m, &names)).collect();
            let rows: Vec<Vec<String>> = h.entries.iter().map(|r| show_all(r, &names)).collect();
            let mut lines = vec![format!("H_{order} over [{}] ({})", basis_names.join(", "), json!(kind).as_str().unwrap_or(""))];
            lines.extend(rows.iter().map(|r| format!("[{}]", r.join(", "))));
            lines.push(det_line(&det));
            let result = json!({"order": order, "basis": basis_names, "basis_kind": kind, "matrix": rows, "det_nonzero": det.nonzero});
            Ok(Report::new(json!({"form": show(&f, &names), "order": order}), result, lines).witnesses(det_json(&det)))
        }
        Command::Slp { form, basis } => {
            let (f, names) = ctx.form(form)?;
            let r = slp_probe(&f, (*basis).into(), ctx.seed)?;
            let mut lines = Vec::new();
            let mut orders = Vec::new();
            for o in &r.orders {
                let b: Vec<String> = o.basis.iter().map(|m| show_monomial(m, &names)).collect();
                lines.push(format!("k={} size {}: {}", o.order, b.len(), det_line(&o.det)));
                orders.push(json!({"order": o.order, "basis": b, "basis_kind": o.basis_kind, "det": det_json(&o.det)}));
            }
            lines.push(match r.first_failure {
                None => "hessian criterion holds".into(),
                Some(k) => format!("fails at k={k}"),
            });
            let result = json!({"passes": r.passes, "first_failure": r.first_failure});
            Ok(Report::new(json!({"form": show(&f, &names)}), result, lines).witnesses(json!({"orders": orders})))
        }
        Command::Substitute { form, target, new_vars } => {
            let (f, names) = ctx.form(form)?;
            let sub = match (&target.matrix, &target.young) {
                (Some(m), _) => LinearSubstitution::new(parse_matrix(m, ctx.field)?)?,
                (None, Some(y)) => young_substitution(&YoungSubstitution::new(parse_blocks(y)?)?, f.nvars(), ctx.field)?,
                (None, None) => return Err(Error::precondition("pass --matrix or --young")),
            };
            let m = sub.target_vars();
            let new_names = match new_vars {
                Some(v) => parse_var_list(v)?,
                None => (0..m).map(|i| format!("y{i}")).collect(),
            };
            if new_names.len() != m {
                return Err(Error::precondition(format!("{} new variable names for {m} rows", new_names.len())));
            }
            let g = subalgebra_dual(&f, &sub)?;
            let matrix: Vec<Vec<Scalar>> = (0..sub.matrix().rows()).map(|i| sub.matrix().row(i).to_vec()).collect();
            let gs = show(&g, &new_names);
            let result = json!({"dual": gs, "new_vars": new_names, "degree": g.homogeneous_degree()});
            Ok(Report::new(json!({"form": show(&f, &names), "matrix": matrix}), result, vec![gs]))
        }
        Command::DualFromIdeal { generators, socle_degree } => {
            let names = ctx.names(generators.iter().map(String::as_str))?;
            let gens = generators.iter().map(|g| parse_poly(g, &names, ctx.field)).collect::<Result<Vec<_>>>()?;
            let s = dual_from_ideal(&gens, names.len(), *socle_degree, ctx.field)?;
            let mut lines = vec![format!("dim {} inside R_{} of dim {}", s.dim(), socle_degree, s.ambient_dim())];
            lines.extend(show_all(&s.basis_polys(), &names));
            let inputs = json!({"generators": show_all(&gens, &names), "socle_degree": socle_degree});
            Ok(Report::new(inputs, subspace_json(&s, &names), lines))
        }
        Command::Census { n } => {
            let (a, b) = census(*n)?;
            Ok(Report::new(json!({"n": n}), json!({"difference": a, "excess": b}), vec![format!("{a} {b}")]))
        }
        Command::BinomialSurvey { n, coeffs } => {
            let cs = scalars(coeffs, ctx.field)?;
            let names = match &ctx.vars {
                Some(v) if v.len() == *n => v.clone(),
                Some(v) => return Err(Error::precondition(format!("{} variables given, survey needs {n}", v.len()))),
                None => crate::poly::default_names(*n),
            };
            let entries = binomial_survey(*n, &cs, ctx.field)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut ci = 0;
            for e in &entries {
                let f = show(&e.form(), &names);
                ci += usize::from(e.verdict.is_ci());
                lines.push(format!("{f}\t{}", e.verdict));
                rows.push(json!({"form": f, "verdict": e.verdict, "stage": e.stage}));
            }
            lines.push(format!("{ci} of {} are complete intersections", entries.len()));
            let result = json!({"total": entries.len(), "ci": ci});
            Ok(Report::new(json!({"n": n, "coeffs": cs}), result, lines).witnesses(json!({"entries": rows})))
        }
        Command::Dp { op } => run_dp(op, ctx),
        Command::VerifyExamples => {
            let outcomes = golden::run_all()?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let mut lines: Vec<String> = outcomes
                .iter()
                .map(|o| format!("{} {}/{}: {}", if o.passed { "ok  " } else { "FAIL" }, o.suite, o.name, o.detail))
                .collect();
            lines.push(format!("{} passed, {failed} failed", outcomes.len() - failed));
            let result = json!({"passed": outcomes.len() - failed, "failed": failed});
            let mut r = Report::new(json!({}), result, lines).witnesses(json!({"examples": outcomes}));
            if failed > 0 {
                r.status = 3;
            }
            Ok(r)
        }
    }
}

fn run_dp(op: &DpOp, ctx: &Ctx) -> Result<Report> {
    let field = ctx.field;
    match op {
        DpOp::Mul { a, b } => {
            let names = ctx.names([a.as_str(), b.as_str()])?;
            let ga = DividedPoly::from_classical(&parse_poly(a, &names, field)?);
            let gb = DividedPoly::from_classical(&parse_poly(b, &names, field)?);
            let out = show_divided(&dp_multiply(&ga, &gb)?, &names);
            let inputs = json!({"a": show_divided(&ga, &names), "b": show_divided(&gb, &names)});
            Ok(Report::new(inputs, json!({"product": out}), vec![out]))
        }
        DpOp::Contract { f, gamma } => {
            let names = ctx.names([f.as_str(), gamma.as_str()])?;
            let p = parse_poly(f, &names, field)?;
            let g = DividedPoly::from_classical(&parse_poly(gamma, &names, field)?);
            let out = show_divided(&contract(&p, &g)?, &names);
            let inputs = json!({"f": show(&p, &names), "gamma": show_divided(&g, &names)});
            Ok(Report::new(inputs, json!({"contraction": out}), vec![out]))
        }
        DpOp::ToDivided { f } => {
            let names = ctx.names([f.as_str()])?;
            let p = parse_poly(f, &names, field)?;
            let out = show_divided(&to_divided(&p), &names);
            Ok(Report::new(json!({"f": show(&p, &names)}), json!({"divided": out}), vec![out]))
        }
        DpOp::FromDivided { gamma } => {
            let names = ctx.names([gamma.as_str()])?;
            let g = DividedPoly::from_classical(&parse_poly(gamma, &names, field)?);
            let out = show(&from_divided(&g)?, &names);
            Ok(Report::new(json!({"gamma": show_divided(&g, &names)}), json!({"classical": out}), vec![out]))
        }
        DpOp::Ann { gamma, degree } => {
            let names = ctx.names([gamma.as_str()])?;
            let g = DividedPoly::from_classical(&parse_poly(gamma, &names, field)?);
            let s = contraction_annihilator_slice(&g, *degree)?;
            let mut lines = vec![format!("Ann_{degree}: dim {} of {}", s.dim(), s.ambient_dim())];
            lines.extend(show_all(&s.basis_polys(), &names));
            Ok(Report::new(json!({"gamma": show_divided(&g, &names)}), subspace_json(&s, &names), lines))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let name = match cmd {
        Command::CheckCi { .. } => "check-ci",
        Command::CheckCiUniform { .. } => "check-ci-uniform",
        Command::Ann { .. } => "ann",
        Command::Hilbert { .. } => "hilbert",
        Command::Qspace { .. } => "qspace",
        Command::Hessian { .. } => "hessian",
        Command::Slp { .. } => "slp",
        Command::Substitute { .. } => "substitute",
        Command::DualFromIdeal { .. } => "dual-from-ideal",
        Command::Census { .. } => "census",
        Command::BinomialSurvey { .. } => "binomial-survey",
        Command::Dp { op } => {
            return format!(
                "dp {}",
                match op {
                    DpOp::Mul { .. } => "mul",
                    DpOp::Contract { .. } => "contract",
                    DpOp::ToDivided { .. } => "to-divided",
                    DpOp::FromDivided { .. } => "from-divided",
                    DpOp::Ann { .. } => "ann",
                }
            )
        }
        Command::VerifyExamples => "verify-examples",
    };
    name.to_string()
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code: 0 success, 1 parse error, 2 precondition violation, 3 internal
/// invariant breach or failed example.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli) {
        Ok((text, status)) => {
            let _ = out.write_all(text.as_bytes());
            status
        }
        Err(e) => {
            if cli.json {
                let v = json!({"schema": SCHEMA, "command": command_name(&cli.command), "error": {"code": e.exit_code(), "message": e.to_string()}});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let field = Field::from_characteristic(cli.characteristic)?;
    let vars = cli.vars.as_deref().map(parse_var_list).transpose()?;
    let ctx = Ctx { field, vars, action: cli.action.into(), seed: cli.seed };
    let report = run_command(&cli.command, &ctx)?;
    let text = if cli.json {
        let action = match cli.action {
            ActionArg::Diff => "diff",
            ActionArg::Contract => "contract",
        };
        let v = json!({
            "schema": SCHEMA,
            "command": command_name(&cli.command),
            "config": {"char": cli.characteristic, "vars": ctx.vars, "action": action, "seed": cli.seed},
            "inputs": report.inputs,
            "result": report.result,
            "witnesses": report.witnesses,
            "seed": cli.seed,
        });
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Invariant(e.to_string()))?;
        s.push('\n');
        s
    } else {
        report.lines.iter().map(|l| format!("{l}\n")).collect()
    };
    Ok((text, report.status))
}
