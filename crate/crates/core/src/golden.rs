//! The worked examples under `fixtures/`, embedded at build time and checked
//! against the library.

use serde::{Deserialize, Serialize};

use crate::apolar::{
    annihilator_slice, dual_from_ideal, hilbert_function, ideal_equals_annihilator,
    ideal_slice, quadratic_space,
};
use crate::ci::{census, certify_ci, certify_qci};
use crate::divided::{contract, contraction_annihilator_slice, dp_multiply, DividedPoly};
use crate::dual::{subalgebra_dual, young_substitution, YoungSubstitution};
use crate::error::{Error, Result};
use crate::hessian::{slp_probe, BasisChoice, DetCertificate};
use crate::linalg::{Matrix, Subspace};
use crate::par;
use crate::parse::{parse_poly, parse_var_list};
use crate::poly::subst::LinearSubstitution;
use crate::poly::{symmetric_coordinates, Partition, Poly};
use crate::scalar::{Field, Scalar};

pub const FIXTURES: &[(&str, &str)] = &[
    ("annihilators", include_str!("../fixtures/annihilators.toml")),
    ("verdicts", include_str!("../fixtures/verdicts.toml")),
    ("quadratic_spaces", include_str!("../fixtures/quadratic_spaces.toml")),
    ("hilbert", include_str!("../fixtures/hilbert.toml")),
    ("census", include_str!("../fixtures/census.toml")),
    ("duals", include_str!("../fixtures/duals.toml")),
    ("substitutions", include_str!("../fixtures/substitutions.toml")),
    ("lefschetz", include_str!("../fixtures/lefschetz.toml")),
    ("divided", include_str!("../fixtures/divided.toml")),
];

const Q: Field = Field::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Deserialize)]
struct Cases<T> {
    case: Vec<T>,
}

#[derive(Deserialize)]
struct AnnCase {
    name: String,
    vars: String,
    form: String,
    generators: Vec<String>,
    #[serde(default = "yes")]
    equals: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
struct VerdictCase {
    name: String,
    vars: String,
    form: String,
    verdict: String,
    stage: Option<String>,
}

#[derive(Deserialize)]
struct SpanCase {
    name: String,
    vars: String,
    form: String,
    span: Vec<String>,
}

#[derive(Deserialize)]
struct HilbertCase {
    name: String,
    vars: String,
    form: String,
    values: Vec<usize>,
}

#[derive(Deserialize)]
struct CensusCase {
    n: u64,
    values: [i64; 2],
}

#[derive(Deserialize)]
struct DualCase {
    name: String,
    vars: String,
    generators: Vec<String>,
    degree: u32,
    form: Option<String>,
    partitions: Option<Vec<Vec<u32>>>,
    symmetric: Option<Vec<i64>>,
}

#[derive(Deserialize)]
struct SubstCase {
    name: String,
    vars: String,
    form: Option<String>,
    dual_of: Option<Vec<String>>,
    degree: Option<u32>,
    new_vars: String,
    matrix: Option<Vec<Vec<i64>>>,
    young: Option<Vec<usize>>,
    expect: Option<String>,
    annihilator: Option<Vec<String>>,
    verdict: String,
}

#[derive(Deserialize)]
struct SlpCase {
    name: String,
    vars: String,
    form: String,
    passes: bool,
    first_failure: Option<u32>,
}

#[derive(Deserialize)]
struct DividedFile {
    contraction: Vec<ContractionCase>,
    differentiation: Vec<AnnCase>,
    nilpotent: Vec<NilpotentCase>,
}

#[derive(Deserialize, Clone)]
struct ContractionCase {
    name: String,
    vars: String,
    form: String,
    annihilate_in: Vec<u64>,
    generate_in: Vec<u64>,
    annihilator: Vec<String>,
}

#[derive(Deserialize)]
struct NilpotentCase {
    name: String,
    characteristics: Vec<u64>,
}

fn parse_all(texts: &[String], vars: &[String], field: Field) -> Result<Vec<Poly>> {
    texts.iter().map(|t| parse_poly(t, vars, field)).collect()
}

fn toml_err(e: toml::de::Error) -> Error {
    Error::Invariant(format!("malformed fixture: {e}"))
}

/// `a = c b` for some nonzero scalar `c`.
pub fn projectively_equal(a: &Poly, b: &Poly) -> bool {
    match (a.leading(), b.leading()) {
        (None, None) => true,
        (Some((ma, ca)), Some((mb, cb))) => ma == mb && a.scale(cb) == b.scale(ca),
        _ => false,
    }
}

/// Scalar vectors equal up to one nonzero factor.
pub fn projectively_equal_vectors(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|s| !s.is_zero()) else {
        return b.iter().all(Scalar::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x * &b[i] == y * &a[i])
}

type Check = Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>;

fn annihilator_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<AnnCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let gens = parse_all(&c.generators, &vars, Q)?;
                let eq = ideal_equals_annihilator(&gens, &f)?;
                Ok((eq == c.equals, format!("{} generators, ideal = Ann(F): {eq}", gens.len())))
            });
            (name, check)
        })
        .collect())
}

fn verdict_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<VerdictCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let r = certify_qci(&f)?;
                let stage = serde_json::to_value(r.stage).map_err(|e| Error::Invariant(e.to_string()))?;
                let stage = stage.as_str().unwrap_or_default().to_string();
                let ok = r.verdict.to_string() == c.verdict && c.stage.as_ref().is_none_or(|s| *s == stage);
                Ok((ok, format!("verdict {} at stage {stage}", r.verdict)))
            });
            (name, check)
        })
        .collect())
}

fn span_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<SpanCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let span = Subspace::from_polys(vars.len(), 2, Q, &parse_all(&c.span, &vars, Q)?)?;
                let q = quadratic_space(&f)?;
                Ok((q == span, format!("dim Q(F) = {}, listed span has dim {}", q.dim(), span.dim())))
            });
            (name, check)
        })
        .collect())
}

fn hilbert_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<HilbertCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let h = hilbert_function(&f)?;
                Ok((h.values() == c.values.as_slice(), format!("h = {h}")))
            });
            (name, check)
        })
        .collect())
}

fn census_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<CensusCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = format!("n={}", c.n);
            let check: Check = Box::new(move || {
                let (a, b) = census(c.n)?;
                Ok(([a, b] == c.values, format!("{a} {b}")))
            });
            (name, check)
        })
        .collect())
}

fn dual_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<DualCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let gens = parse_all(&c.generators, &vars, Q)?;
                let sol = dual_from_ideal(&gens, vars.len(), c.degree, Q)?;
                if sol.dim() != 1 {
                    return Ok((false, format!("solution space has dimension {}", sol.dim())));
                }
                let f = sol.basis_polys().remove(0);
                let mut ok = true;
                if let Some(expected) = &c.form {
                    ok &= projectively_equal(&f, &parse_poly(expected, &vars, Q)?);
                }
                if let (Some(parts), Some(coords)) = (&c.partitions, &c.symmetric) {
                    let parts = parts.iter().cloned().map(Partition::new).collect::<Result<Vec<_>>>()?;
                    let got = symmetric_coordinates(&f, &parts)?;
                    let want: Vec<Scalar> = coords.iter().map(|&v| Q.from_i64(v)).collect();
                    ok &= projectively_equal_vectors(&got, &want);
                    ok &= crate::dual::symmetric_check(&f);
                }
                Ok((ok, format!("1-dimensional, {} terms", f.num_terms())))
            });
            (name, check)
        })
        .collect())
}

fn subst_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<SubstCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let new_vars = parse_var_list(&c.new_vars)?;
                let f = match (&c.form, &c.dual_of) {
                    (Some(text), _) => parse_poly(text, &vars, Q)?,
                    (None, Some(gens)) => {
                        let gens = parse_all(gens, &vars, Q)?;
                        let degree = c.degree.ok_or_else(|| Error::Invariant("fixture lacks degree".into()))?;
                        let sol = dual_from_ideal(&gens, vars.len(), degree, Q)?;
                        sol.basis_polys().into_iter().next().ok_or_else(|| Error::Invariant("no dual".into()))?
                    }
                    _ => return Err(Error::Invariant("fixture lacks a form".into())),
                };
                let sub = match (&c.matrix, &c.young) {
                    (Some(m), _) => LinearSubstitution::new(Matrix::from_i64(m, Q))?,
                    (None, Some(b)) => young_substitution(&YoungSubstitution::new(b.clone())?, vars.len(), Q)?,
                    _ => return Err(Error::Invariant("fixture lacks a substitution".into())),
                };
                let g = subalgebra_dual(&f, &sub)?;
                let mut ok = g.homogeneous_degree() == f.homogeneous_degree();
                if let Some(e) = &c.expect {
                    ok &= g == parse_poly(e, &new_vars, Q)?;
                }
                if let Some(gens) = &c.annihilator {
                    ok &= ideal_equals_annihilator(&parse_all(gens, &new_vars, Q)?, &g)?;
                }
                ok &= annihilator_slice(&g, 1)?.dim() == 0;
                let r = certify_ci(&g)?;
                ok &= r.verdict.to_string() == c.verdict;
                Ok((ok, format!("G = {}, verdict {} with generator degrees {:?}", g.to_string_with(&new_vars), r.verdict, r.generator_degrees)))
            });
            (name, check)
        })
        .collect())
}

fn slp_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let cases: Cases<SlpCase> = toml::from_str(text).map_err(toml_err)?;
    Ok(cases
        .case
        .into_iter()
        .map(|c| {
            let name = c.name.clone();
            let check: Check = Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let r = slp_probe(&f, BasisChoice::Auto, 0)?;
                let mut ok = r.passes == c.passes && r.first_failure == c.first_failure;
                if !c.passes {
                    ok &= r.orders.last().is_some_and(|o| o.det.certificate == DetCertificate::SymbolicZero);
                }
                let detail = match r.first_failure {
                    Some(k) => format!("fails at k = {k}"),
                    None => format!("passes for k = 1..{}", r.orders.len()),
                };
                Ok((ok, detail))
            });
            (name, check)
        })
        .collect())
}

fn divided_checks(text: &str) -> Result<Vec<(String, Check)>> {
    let file: DividedFile = toml::from_str(text).map_err(toml_err)?;
    let mut out: Vec<(String, Check)> = Vec::new();
    for c in file.contraction {
        let runs = c.annihilate_in.iter().map(|&p| (p, false)).chain(c.generate_in.iter().map(|&p| (p, true)));
        for (p, generate) in runs {
            let c = c.clone();
            let what = if generate { "generates" } else { "annihilates" };
            out.push((
                format!("{} {what} (char {p})", c.name),
                Box::new(move || {
                    let field = Field::from_characteristic(p)?;
                    let vars = parse_var_list(&c.vars)?;
                    let gamma = DividedPoly::from_classical(&parse_poly(&c.form, &vars, field)?);
                    let gens = parse_all(&c.annihilator, &vars, field)?;
                    if !generate {
                        let mut ok = true;
                        for g in &gens {
                            ok &= contract(g, &gamma)?.is_zero();
                        }
                        return Ok((ok, format!("{} generators contract F to zero: {ok}", gens.len())));
                    }
                    let d = gamma.degree().unwrap_or(0);
                    let mut ok = true;
                    for k in 0..=d + 1 {
                        let ann = contraction_annihilator_slice(&gamma, k)?;
                        ok &= ideal_slice(&gens, vars.len(), k, field)? == ann;
                    }
                    Ok((ok, format!("ideal equals the contraction annihilator: {ok}")))
                }),
            ));
        }
    }
    for c in file.differentiation {
        out.push((
            c.name.clone(),
            Box::new(move || {
                let vars = parse_var_list(&c.vars)?;
                let f = parse_poly(&c.form, &vars, Q)?;
                let ok = ideal_equals_annihilator(&parse_all(&c.generators, &vars, Q)?, &f)?;
                Ok((ok, "ideal equals the differentiation annihilator".to_string()))
            }),
        ));
    }
    for c in file.nilpotent {
        for p in c.characteristics.clone() {
            out.push((
                format!("{} (char {p})", c.name),
                Box::new(move || {
                    let field = Field::from_characteristic(p)?;
                    let x = DividedPoly::var(1, 0, field);
                    let mut acc = DividedPoly::one(1, field);
                    for _ in 0..p {
                        acc = dp_multiply(&acc, &x)?;
                    }
                    Ok((acc.is_zero(), format!("(X^(1))^{p} = {acc}")))
                }),
            ));
        }
    }
    Ok(out)
}

/// Runs every embedded example; the result order is fixed.
pub fn run_all() -> Result<Vec<Outcome>> {
    let mut jobs: Vec<(&'static str, String, Check)> = Vec::new();
    for &(suite, text) in FIXTURES {
        let checks = match suite {
            "annihilators" => annihilator_checks(text)?,
            "verdicts" => verdict_checks(text)?,
            "quadratic_spaces" => span_checks(text)?,
            "hilbert" => hilbert_checks(text)?,
            "census" => census_checks(text)?,
            "duals" => dual_checks(text)?,
            "substitutions" => subst_checks(text)?,
            "lefschetz" => slp_checks(text)?,
            "divided" => divided_checks(text)?,
            _ => unreachable!("unknown fixture suite"),
        };
        jobs.extend(checks.into_iter().map(|(name, check)| (suite, name, check)));
    }
    Ok(par::map(&jobs, |(suite, name, check)| {
        let (passed, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Outcome { suite, name: name.clone(), passed, detail }
    }))
}
