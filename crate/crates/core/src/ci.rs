//! Complete intersection certification for `A(F) = R/Ann(F)`.
//!
//! The quadratic test runs in three short-circuiting stages:
//!
//! 1. the partials of `F` are linearly independent (`Ann(F)_1 = 0`);
//! 2. `Q(F) = Ann(F)_2` has dimension `n`;
//! 3. `V = sum R_(n-1) f_i`, over a basis `f_i` of `Q(F)`, is all of `R_(n+1)`.
//!
//! Stage 3 is the Artinian criterion for `f_1, ..., f_n` to be a regular
//! sequence. A regular sequence of `n` quadrics cuts out a Gorenstein ring of
//! socle degree `n`, which surjects onto `A(F)` and keeps its socle, so the two
//! coincide.
//!
//! For generators of a common degree `d` the same scheme applies with socle
//! degree `n(d-1)`: a complete intersection of `n` forms of degree `d` has Hilbert
//! function given by `(1 + T + ... + T^(d-1))^n`, hence no annihilator below
//! degree `d`, exactly `n` independent annihilating forms in degree `d`, and a
//! fill of `R_(n(d-1)+1)` by their multiples.
//!
//! [`certify_ci`] drops the common-degree assumption: it extracts minimal
//! generators of `Ann(F)` degree by degree up to `d + 1` and accepts iff there
//! are exactly `n` of them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::apolar::{
    annihilator_slice, hilbert_function, ideal_slice, minimal_generators_of, quadratic_space, HilbertFunction,
};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::par;
use crate::poly::subst::linear_relations;
use crate::poly::{binomial, graded_basis, slice_dim, Monomial, Poly};
use crate::scalar::{char_guard, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "quadratic-CI")]
    QuadraticCi,
    #[serde(rename = "CI")]
    CompleteIntersection,
    #[serde(rename = "not-CI")]
    NotCi,
    /// The partials are dependent: `F` lives in fewer variables.
    #[serde(rename = "reduced-embedding")]
    ReducedEmbedding,
    /// `deg F` is not the socle degree a complete intersection would need.
    #[serde(rename = "degenerate")]
    Degenerate,
}

impl Verdict {
    pub fn is_ci(self) -> bool {
        matches!(self, Verdict::QuadraticCi | Verdict::CompleteIntersection)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::QuadraticCi => "quadratic-CI",
            Verdict::CompleteIntersection => "CI",
            Verdict::NotCi => "not-CI",
            Verdict::ReducedEmbedding => "reduced-embedding",
            Verdict::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Last stage the certifier reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Degree,
    Partials,
    Qdim,
    Rank,
}

#[derive(Clone, Debug)]
pub struct CiReport {
    pub verdict: Verdict,
    pub stage: Stage,
    pub nvars: usize,
    pub degree: u32,
    /// Degrees of the candidate generators (all equal for the uniform tests).
    pub generator_degrees: Vec<u32>,
    /// Basis of the candidate generator space (`Q(F)` in the quadratic case).
    pub generators: Vec<Poly>,
    pub generator_dim: usize,
    pub expected_generator_dim: usize,
    pub fill_degree: u32,
    /// `dim V`, or `None` when stage 3 was not reached.
    pub fill_dim: Option<usize>,
    pub expected_fill_dim: usize,
    /// Basis of the linear relations among the partials (stage 1 witness).
    pub partial_relations: Vec<Vec<Scalar>>,
    pub hilbert: Option<HilbertFunction>,
}

impl CiReport {
    fn new(form: &Poly, fill_degree: u32) -> Self {
        CiReport {
            verdict: Verdict::NotCi,
            stage: Stage::Degree,
            nvars: form.nvars(),
            degree: form.degree().unwrap_or(0),
            generator_degrees: Vec::new(),
            generators: Vec::new(),
            generator_dim: 0,
            expected_generator_dim: form.nvars(),
            fill_degree,
            fill_dim: None,
            expected_fill_dim: slice_dim(form.nvars(), fill_degree),
            partial_relations: Vec::new(),
            hilbert: None,
        }
    }
}

/// Outcome of the five necessary conditions for `H_A(F)(T) = (1+T)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub degree_is_n: bool,
    pub no_linear_annihilator: bool,
    pub partials_independent: bool,
    pub quadratic_space_dim_n: bool,
    /// `dim R_2 o F = C(n, 2)`.
    pub second_derivatives_span: bool,
}

impl NecessaryConditions {
    pub fn all_hold(&self) -> bool {
        self.degree_is_n
            && self.no_linear_annihilator
            && self.partials_independent
            && self.quadratic_space_dim_n
            && self.second_derivatives_span
    }
}

pub fn necessary_conditions(form: &Poly) -> Result<NecessaryConditions> {
    let d = form.form_degree()?;
    let n = form.nvars();
    char_guard(form.field().characteristic(), d as u64)?;
    let ann1 = annihilator_slice(form, 1)?;
    let relations = linear_relations(form)?;
    let (q, h2) = if d >= 2 {
        let q = quadratic_space(form)?;
        let h2 = q.ambient_dim() - q.dim();
        (q.dim(), h2)
    } else {
        (slice_dim(n, 2), 0)
    };
    Ok(NecessaryConditions {
        degree_is_n: d as usize == n,
        no_linear_annihilator: ann1.dim() == 0,
        partials_independent: relations.is_empty(),
        quadratic_space_dim_n: q == n,
        second_derivatives_span: h2 as u64 == binomial(n as u64, 2),
    })
}

fn dense(v: &[(usize, Scalar)], len: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

/// Shared three-stage test for generators of a common degree `gen_degree`.
fn uniform_stages(form: &Poly, gen_degree: u32, degenerate_is_error: bool) -> Result<CiReport> {
    let n = form.nvars();
    let d = form.form_degree()?;
    let field = form.field();
    char_guard(field.characteristic(), d.max(n as u32) as u64)?;
    if gen_degree < 2 {
        return Err(Error::precondition("generator degree must be at least 2"));
    }
    let socle = n as u32 * (gen_degree - 1);
    let mut report = CiReport::new(form, socle + 1);
    if d != socle {
        if degenerate_is_error {
            return Err(Error::precondition(format!(
                "degree mismatch: deg F = {d}, but {n} generators of degree {gen_degree} need {socle}"
            )));
        }
        report.verdict = Verdict::Degenerate;
        return Ok(report);
    }

    report.stage = Stage::Partials;
    let relations = linear_relations(form)?;
    if !relations.is_empty() {
        report.verdict = Verdict::ReducedEmbedding;
        report.partial_relations = relations.iter().map(|r| dense(r, n, field)).collect();
        return Ok(report);
    }

    report.stage = Stage::Qdim;
    let series = HilbertFunction::complete_intersection(n, gen_degree as usize);
    for k in 2..gen_degree {
        if annihilator_slice(form, k)?.dim() != 0 {
            report.verdict = Verdict::NotCi;
            return Ok(report);
        }
    }
    let gens = annihilator_slice(form, gen_degree)?;
    report.generator_dim = gens.dim();
    report.expected_generator_dim = slice_dim(n, gen_degree) - series.values().get(gen_degree as usize).copied().unwrap_or(0);
    report.generators = gens.basis_polys();
    report.generator_degrees = vec![gen_degree; gens.dim()];
    if gens.dim() != report.expected_generator_dim {
        report.verdict = Verdict::NotCi;
        return Ok(report);
    }

    report.stage = Stage::Rank;
    let v = ideal_slice(&report.generators, n, socle + 1, field)?;
    report.fill_dim = Some(v.dim());
    if v.is_full() {
        report.verdict = if gen_degree == 2 { Verdict::QuadraticCi } else { Verdict::CompleteIntersection };
        report.hilbert = Some(hilbert_function(form)?);
    } else {
        report.verdict = Verdict::NotCi;
    }
    Ok(report)
}

/// Decides whether `A(F)` is a quadratic complete intersection.
/// Forms whose degree differs from the number of variables are `Degenerate`.
pub fn certify_qci(form: &Poly) -> Result<CiReport> {
    uniform_stages(form, 2, false)
}

/// Decides whether `Ann(F)` is generated by `n` forms of degree `d`.
pub fn certify_uniform_ci(form: &Poly, d: u32) -> Result<CiReport> {
    uniform_stages(form, d, true)
}

/// Decides whether `A(F)` is a complete intersection with generators of any degrees.
pub fn certify_ci(form: &Poly) -> Result<CiReport> {
    let n = form.nvars();
    let d = form.form_degree()?;
    let field = form.field();
    char_guard(field.characteristic(), d as u64)?;
    let mut report = CiReport::new(form, d + 1);

    report.stage = Stage::Partials;
    let relations = linear_relations(form)?;
    if !relations.is_empty() {
        report.verdict = Verdict::ReducedEmbedding;
        report.partial_relations = relations.iter().map(|r| dense(r, n, field)).collect();
        return Ok(report);
    }

    report.stage = Stage::Qdim;
    let slices = par::map_range(d as usize + 2, |k| annihilator_slice(form, k as u32))
        .into_iter()
        .collect::<Result<Vec<Subspace>>>()?;
    let gens = minimal_generators_of(&slices, n, field)?;
    report.generator_degrees = gens.iter().filter_map(Poly::homogeneous_degree).collect();
    report.generator_dim = gens.len();
    report.generators = gens;
    if report.generator_dim != n {
        report.verdict = Verdict::NotCi;
        return Ok(report);
    }
    let socle: u32 = report.generator_degrees.iter().map(|e| e - 1).sum();
    if socle != d {
        report.verdict = Verdict::NotCi;
        return Ok(report);
    }

    report.stage = Stage::Rank;
    let v = ideal_slice(&report.generators, n, socle + 1, field)?;
    report.fill_dim = Some(v.dim());
    if v.is_full() {
        let quadratic = report.generator_degrees.iter().all(|&e| e == 2);
        report.verdict = if quadratic { Verdict::QuadraticCi } else { Verdict::CompleteIntersection };
        report.hilbert = Some(hilbert_function(form)?);
    } else {
        report.verdict = Verdict::NotCi;
    }
    Ok(report)
}

/// True iff the `n` quadrics in `n` variables form a regular sequence,
/// i.e. their multiples fill `R_(n+1)`.
pub fn regular_sequence_check(forms: &[Poly]) -> Result<bool> {
    let Some(first) = forms.first() else {
        return Err(Error::precondition("no forms given"));
    };
    let n = first.nvars();
    if forms.len() != n {
        return Err(Error::precondition(format!("expected {n} quadrics, got {}", forms.len())));
    }
    if forms.iter().any(|f| f.homogeneous_degree() != Some(2)) {
        return Err(Error::precondition("every form must be a nonzero quadric"));
    }
    Ok(ideal_slice(forms, n, n as u32 + 1, first.field())?.is_full())
}

/// `(C(2n-1, n) - n^2, n C(n, 2) - n^2 + 1)`: the dimension of the space of
/// degree-`n` forms modulo `GL_n`, and of the quadratic complete intersections
/// in it.
pub fn census(n: u64) -> Result<(i64, i64)> {
    if n < 2 {
        return Err(Error::precondition("census needs n >= 2"));
    }
    let n2 = (n * n) as i64;
    Ok((binomial(2 * n - 1, n) as i64 - n2, (n * binomial(n, 2)) as i64 - n2 + 1))
}

#[derive(Clone, Debug)]
pub struct SurveyEntry {
    pub first: Monomial,
    pub second: Monomial,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub verdict: Verdict,
    pub stage: Stage,
}

impl SurveyEntry {
    pub fn form(&self) -> Poly {
        &Poly::monomial(self.first.clone(), self.alpha.clone()) + &Poly::monomial(self.second.clone(), self.beta.clone())
    }
}

/// Canonical representative of the unordered pair `{a, b}` under simultaneous
/// permutation of the variables: sort the exponent columns `(a_i, b_i)`
/// descending, for both orders of the pair, and keep the smaller result.
pub fn canonical_pair(a: &Monomial, b: &Monomial) -> (Monomial, Monomial) {
    let sorted = |u: &Monomial, v: &Monomial| {
        let mut cols: Vec<(u32, u32)> = u.exps().iter().copied().zip(v.exps().iter().copied()).collect();
        cols.sort_unstable_by(|x, y| y.cmp(x));
        let (l, r): (Vec<u32>, Vec<u32>) = cols.into_iter().unzip();
        (Monomial::new(l), Monomial::new(r))
    };
    let p = sorted(a, b);
    let q = sorted(b, a);
    if (p.0.exps(), p.1.exps()) <= (q.0.exps(), q.1.exps()) {
        p
    } else {
        q
    }
}

/// Runs [`certify_qci`] on `alpha M + beta N` for every permutation class of
/// distinct degree-`n` monomials `M, N` and every `(alpha, beta)` in
/// `coefficients x coefficients`. Entries come back in a fixed order.
pub fn binomial_survey(n: usize, coefficients: &[Scalar], field: Field) -> Result<Vec<SurveyEntry>> {
    if n < 2 {
        return Err(Error::precondition("binomial survey needs n >= 2"));
    }
    if coefficients.iter().any(|c| c.is_zero() || c.field() != field) {
        return Err(Error::precondition("coefficients must be nonzero elements of the working field"));
    }
    char_guard(field.characteristic(), n as u64)?;
    let basis = graded_basis(n, n as u32);
    let mut classes: BTreeSet<(Vec<u32>, Vec<u32>)> = BTreeSet::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let (p, q) = canonical_pair(a, b);
            classes.insert((p.exps().to_vec(), q.exps().to_vec()));
        }
    }
    let mut jobs = Vec::new();
    for (p, q) in &classes {
        for alpha in coefficients {
            for beta in coefficients {
                jobs.push((Monomial::new(p.clone()), Monomial::new(q.clone()), alpha.clone(), beta.clone()));
            }
        }
    }
    par::map(&jobs, |(first, second, alpha, beta)| {
        let f = &Poly::monomial(first.clone(), alpha.clone()) + &Poly::monomial(second.clone(), beta.clone());
        certify_qci(&f).map(|r| SurveyEntry {
            first: first.clone(),
            second: second.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
            verdict: r.verdict,
            stage: r.stage,
        })
    })
    .into_iter()
    .collect()
}
