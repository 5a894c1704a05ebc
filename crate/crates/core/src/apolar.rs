//! The apolarity action `f o F`, annihilator slices, Hilbert functions and
//! recovery of dual generators from ideals.
//!
//! `f o F = f(d/dx_0, ..., d/dx_(n-1)) F` by default. The contraction action of
//! the divided power algebra uses the same machinery with all derivative
//! factors replaced by one (see [`Action`]).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{elim, Matrix, SparseVec, Subspace};
use crate::par;
use crate::poly::{basis_index, graded_basis, slice_dim, Monomial, Poly};
use crate::scalar::{char_guard, Field, Scalar};

/// How a polynomial acts on a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// Constant-coefficient differential operators: `x^a o x^b = b!/(b-a)! x^(b-a)`.
    #[serde(rename = "diff")]
    Differentiation,
    /// Contraction on divided powers: `x^a o X^(b) = X^(b-a)`; coefficients of `F`
    /// are read as coefficients of divided monomials.
    #[serde(rename = "contract")]
    Contraction,
}

/// Dimensions `h_0, ..., h_d` of the graded pieces of `A(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Coefficients of `(1 + T + ... + T^(d-1))^n`, the Hilbert function of a
    /// complete intersection of `n` forms of degree `d`.
    pub fn complete_intersection(n: usize, d: usize) -> HilbertFunction {
        HilbertFunction::mixed_complete_intersection(&vec![d; n])
    }

    /// Coefficients of `prod (1 + T + ... + T^(d_i - 1))`.
    pub fn mixed_complete_intersection(degrees: &[usize]) -> HilbertFunction {
        let mut coeffs = vec![1usize];
        for &d in degrees {
            let mut next = vec![0usize; coeffs.len() + d.saturating_sub(1)];
            for (i, c) in coeffs.iter().enumerate() {
                for j in 0..d {
                    next[i + j] += c;
                }
            }
            coeffs = next;
        }
        HilbertFunction(coeffs)
    }
}

impl std::fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn guard_form(f: &Poly, action: Action) -> Result<u32> {
    let d = f.form_degree()?;
    if action == Action::Differentiation {
        char_guard(f.field().characteristic(), d as u64)?;
    }
    Ok(d)
}

/// `x^a o x^b` as (monomial, coefficient), or `None` when it vanishes.
fn act_monomial(a: &Monomial, b: &Monomial, field: Field, action: Action) -> Option<(Monomial, Scalar)> {
    let rest = a.quotient_of(b)?;
    let factor = match action {
        Action::Contraction => field.one(),
        Action::Differentiation => a
            .exps()
            .iter()
            .zip(b.exps())
            .filter(|(ai, _)| **ai > 0)
            .fold(field.one(), |acc, (&ai, &bi)| &acc * &field.falling_factorial(bi as u64, ai as u64)),
    };
    (!factor.is_zero()).then_some((rest, factor))
}

pub(crate) fn act_with(f: &Poly, target: &Poly, action: Action) -> Result<Poly> {
    if f.nvars() != target.nvars() {
        return Err(Error::ambient("operator and form live in different rings"));
    }
    if f.field() != target.field() {
        return Err(Error::FieldMismatch(f.field(), target.field()));
    }
    let field = f.field();
    let mut out = Poly::zero(f.nvars(), field);
    for (a, ca) in f.terms() {
        for (b, cb) in target.terms() {
            if let Some((m, factor)) = act_monomial(a, b, field, action) {
                out.add_term(m, &(ca * cb) * &factor);
            }
        }
    }
    Ok(out)
}

/// `f o F = f(d/dx) F`.
pub fn apolar_act(f: &Poly, form: &Poly) -> Result<Poly> {
    if let Some(d) = form.degree() {
        char_guard(form.field().characteristic(), d as u64)?;
    }
    act_with(f, form, Action::Differentiation)
}

/// Row `i` holds the coefficients of `m_i o F` for the `i`-th monomial of `R_k`,
/// over the basis of `R_(d-k)`.
pub(crate) fn catalecticant_rows(form: &Poly, k: u32, action: Action) -> Result<Vec<SparseVec>> {
    let d = guard_form(form, action)?;
    if k > d {
        return Err(Error::precondition(format!("catalecticant degree {k} exceeds form degree {d}")));
    }
    let n = form.nvars();
    let field = form.field();
    let cols = basis_index(&graded_basis(n, d - k));
    let terms: Vec<(Monomial, Scalar)> = form.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let rows = graded_basis(n, k);
    Ok(par::map(&rows, |alpha| {
        let mut row: SparseVec = terms
            .iter()
            .filter_map(|(b, c)| {
                act_monomial(alpha, b, field, action).map(|(m, factor)| (cols[&m], c * &factor))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }))
}

/// Matrix of `f -> f o F` from `R_k` to `R_(d-k)` over graded-lex bases.
pub fn catalecticant(form: &Poly, k: u32) -> Result<Matrix> {
    let rows = catalecticant_rows(form, k, Action::Differentiation)?;
    let d = form.form_degree()?;
    Ok(Matrix::from_sparse(&rows, slice_dim(form.nvars(), d - k), form.field()))
}

pub fn annihilator_slice_with(form: &Poly, k: u32, action: Action) -> Result<Subspace> {
    let d = guard_form(form, action)?;
    let (n, field) = (form.nvars(), form.field());
    if k > d {
        return Ok(Subspace::full(n, k, field));
    }
    let rows = catalecticant_rows(form, k, action)?;
    // f = sum c_i m_i is annihilated iff c^T C = 0, i.e. c lies in the null space of C^T
    let t = elim::transpose(&rows, slice_dim(n, d - k));
    let kernel = elim::null_space(field, slice_dim(n, k), t);
    Ok(Subspace::from_rref(n, k, field, kernel))
}

/// `Ann(F)_k`.
pub fn annihilator_slice(form: &Poly, k: u32) -> Result<Subspace> {
    annihilator_slice_with(form, k, Action::Differentiation)
}

/// `Q(F) = Ann(F)_2`.
pub fn quadratic_space(form: &Poly) -> Result<Subspace> {
    annihilator_slice(form, 2)
}

pub fn hilbert_function_with(form: &Poly, action: Action) -> Result<HilbertFunction> {
    let d = guard_form(form, action)?;
    let ranks = par::map_range(d as usize + 1, |k| {
        catalecticant_rows(form, k as u32, action).map(|rows| elim::rank(form.field(), rows))
    });
    Ok(HilbertFunction(ranks.into_iter().collect::<Result<_>>()?))
}

/// `h_k = rank` of the degree-`k` catalecticant, `k = 0..d`.
pub fn hilbert_function(form: &Poly) -> Result<HilbertFunction> {
    hilbert_function_with(form, Action::Differentiation)
}

/// Degree-`k` part of the ideal generated by homogeneous `gens`.
pub fn ideal_slice(gens: &[Poly], nvars: usize, k: u32, field: Field) -> Result<Subspace> {
    let idx = basis_index(&graded_basis(nvars, k));
    let mut jobs: Vec<(&Poly, Monomial)> = Vec::new();
    for g in gens {
        if g.nvars() != nvars || g.field() != field {
            return Err(Error::ambient("generator outside the ambient ring"));
        }
        if g.is_zero() {
            continue;
        }
        let e = g.homogeneous_degree().ok_or_else(|| Error::precondition("generators must be homogeneous"))?;
        if e <= k {
            jobs.extend(graded_basis(nvars, k - e).into_iter().map(|m| (g, m)));
        }
    }
    let vectors = par::map(&jobs, |(g, m)| {
        let mut v: SparseVec = g.terms().map(|(a, c)| (idx[&a.mul(m)], c.clone())).collect();
        v.sort_by_key(|(c, _)| *c);
        v
    });
    Ok(Subspace::from_vectors(nvars, k, field, vectors))
}

/// True iff `(gens)_k = Ann(F)_k` for every `k <= deg F + 1`.
pub fn ideal_equals_annihilator(gens: &[Poly], form: &Poly) -> Result<bool> {
    let d = guard_form(form, Action::Differentiation)?;
    for k in 0..=d + 1 {
        let lhs = ideal_slice(gens, form.nvars(), k, form.field())?;
        if lhs != annihilator_slice(form, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{F in R_d : g o F = 0 for every generator g}`.
///
/// Each generator `g` of degree `e` contributes one linear equation per
/// monomial `mu` of degree `d - e`: the coefficient of `mu` in `g o F`, which is
/// `sum_a g_a (mu a)!/mu! F_(mu a)`.
pub fn dual_from_ideal(gens: &[Poly], nvars: usize, d: u32, field: Field) -> Result<Subspace> {
    char_guard(field.characteristic(), d as u64)?;
    let idx = basis_index(&graded_basis(nvars, d));
    let mut jobs: Vec<(&Poly, Monomial)> = Vec::new();
    for g in gens {
        if g.nvars() != nvars || g.field() != field {
            return Err(Error::ambient("generator outside the ambient ring"));
        }
        if g.is_zero() {
            continue;
        }
        let e = g.homogeneous_degree().ok_or_else(|| Error::precondition("generators must be homogeneous"))?;
        if e <= d {
            jobs.extend(graded_basis(nvars, d - e).into_iter().map(|m| (g, m)));
        }
    }
    let equations = par::map(&jobs, |(g, mu)| {
        let mut row: SparseVec = g
            .terms()
            .filter_map(|(a, ga)| {
                let b = a.mul(mu);
                act_monomial(a, &b, field, Action::Differentiation).map(|(_, factor)| (idx[&b], ga * &factor))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    });
    let kernel = elim::null_space(field, idx.len(), equations);
    Ok(Subspace::from_rref(nvars, d, field, kernel))
}

/// `Phi = (d!/alpha) F` with `alpha = S o F`.
pub fn phi_scaling(form: &Poly, socle: &Poly) -> Result<Poly> {
    let d = guard_form(form, Action::Differentiation)?;
    if socle.homogeneous_degree() != Some(d) {
        return Err(Error::precondition(format!("socle pre-image must be a form of degree {d}")));
    }
    let alpha = act_with(socle, form, Action::Differentiation)?.coeff(&Monomial::one(form.nvars()));
    if alpha.is_zero() {
        return Err(Error::precondition("S lies in the annihilator"));
    }
    let c = form.field().factorial(d as u64).checked_div(&alpha)?;
    Ok(form.scale(&c))
}

/// `(D^d F, d! F(xi))` where `D = sum xi_i d/dx_i`; the two always agree.
pub fn evaluate_power_identity(form: &Poly, xi: &[Scalar]) -> Result<(Scalar, Scalar)> {
    let d = guard_form(form, Action::Differentiation)?;
    let field = form.field();
    let ell = Poly::linear_form(xi, field);
    if ell.nvars() != form.nvars() {
        return Err(Error::ambient("point dimension differs from variable count"));
    }
    let mut g = form.clone();
    for _ in 0..d {
        g = act_with(&ell, &g, Action::Differentiation)?;
    }
    let lhs = g.coeff(&Monomial::one(form.nvars()));
    let rhs = &field.factorial(d as u64) * &form.eval(xi)?;
    Ok((lhs, rhs))
}

/// Annihilator slices `Ann(F)_0..Ann(F)_(d+1)`, the Hilbert function of
/// `A(F)` and a minimal homogeneous generating set of `Ann(F)`.
#[derive(Clone, Debug)]
pub struct AnnReport {
    pub action: Action,
    pub slices: Vec<Subspace>,
    pub hilbert: HilbertFunction,
    pub generators: Vec<Poly>,
}

impl AnnReport {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().filter_map(Poly::homogeneous_degree).collect()
    }
}

pub fn annihilator_report(form: &Poly, action: Action) -> Result<AnnReport> {
    let d = guard_form(form, action)?;
    let slices = par::map_range(d as usize + 2, |k| annihilator_slice_with(form, k as u32, action))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let hilbert = HilbertFunction(
        slices[..=d as usize].iter().map(|s| s.ambient_dim() - s.dim()).collect(),
    );
    let generators = minimal_generators_of(&slices, form.nvars(), form.field())?;
    Ok(AnnReport { action, slices, hilbert, generators })
}

/// Minimal generators of the ideal whose slices are `slices[0..]`, assuming it
/// contains every form of degree `slices.len() - 1` and above.
pub(crate) fn minimal_generators_of(slices: &[Subspace], nvars: usize, field: Field) -> Result<Vec<Poly>> {
    let mut gens: Vec<Poly> = Vec::new();
    for (k, ann) in slices.iter().enumerate() {
        if ann.dim() == 0 {
            continue;
        }
        let generated = ideal_slice(&gens, nvars, k as u32, field)?;
        if generated.dim() < ann.dim() {
            gens.extend(ann.complement_basis(&generated)?);
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    const Q: Field = Field::Rational;

    fn vars(n: usize) -> Vec<Poly> {
        (0..n).map(|i| Poly::var(n, i, Q)).collect()
    }

    fn c(n: usize, v: i64) -> Poly {
        Poly::constant(n, Q.from_i64(v))
    }

    #[test]
    fn action_basics() {
        let x = &vars(1)[0];
        assert_eq!(apolar_act(&x.pow(2), &x.pow(3)).unwrap(), &c(1, 6) * x);
        assert!(apolar_act(&x.pow(4), &x.pow(3)).unwrap().is_zero());
        let v = vars(3);
        let f = &(-v[0].pow(3)) + &(&v[1].pow(2) * &v[2]);
        assert!(apolar_act(&v[2].pow(2), &f).unwrap().is_zero());
    }

    #[test]
    fn power_of_linear_form() {
        // (x+y+z)^3 acted on by (x+y+z)^3 gives 3! * 27 = 162
        let v = vars(3);
        let ell = &(&v[0] + &v[1]) + &v[2];
        let f = ell.pow(3);
        let lhs = apolar_act(&ell.pow(3), &f).unwrap();
        assert_eq!(lhs, c(3, 162));
        let one = Q.one();
        let (a, b) = evaluate_power_identity(&f, &[one.clone(), one.clone(), one]).unwrap();
        assert_eq!(a, Q.from_i64(162));
        assert_eq!(a, b);
        let xy = &vars(2)[0] * &vars(2)[1];
        let (a, b) = evaluate_power_identity(&xy, &[Q.one(), Q.one()]).unwrap();
        assert_eq!((a, b), (Q.from_i64(2), Q.from_i64(2)));
    }

    #[test]
    fn catalecticant_shapes() {
        let v = vars(4);
        let f = &(&v[0] * &v[1]).pow(2) - &(&v[2] * &v[3]).pow(2);
        assert_eq!(catalecticant(&f, 0).unwrap().rows(), 1);
        assert_eq!(catalecticant(&f, 0).unwrap().cols(), 35);
        assert_eq!(catalecticant(&f, 2).unwrap().rank(), 6);
        assert_eq!(catalecticant(&f, 4).unwrap().rank(), 1);
        assert_eq!(annihilator_slice(&f, 2).unwrap().dim(), 4);
        assert!(catalecticant(&f, 5).is_err());
    }

    #[test]
    fn small_annihilators() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let f = &(-x.pow(3)) + &(y.pow(2) * z.clone());
        let expected = Subspace::from_polys(3, 2, Q, &[z.pow(2), x * z, x * y]).unwrap();
        assert_eq!(annihilator_slice(&f, 2).unwrap(), expected);
        let g = &(&x.pow(2) * y) + &(&y.pow(2) * z);
        let expected = Subspace::from_polys(3, 2, Q, &[z.pow(2), x * z, &x.pow(2) - &(y * z)]).unwrap();
        assert_eq!(annihilator_slice(&g, 2).unwrap(), expected);
        assert!(annihilator_slice(&g, 4).unwrap().is_full());
    }

    #[test]
    fn ideal_slices() {
        let v = vars(2);
        let s = ideal_slice(&[v[0].pow(2), v[1].pow(2)], 2, 3, Q).unwrap();
        assert!(s.is_full());
        let w = vars(3);
        let (x, y, z) = (&w[0], &w[1], &w[2]);
        let s = ideal_slice(&[z.pow(2), x * z, x * y], 3, 3, Q).unwrap();
        // the nine products hit seven distinct monomials; x^3, y^2 z, y^3 are missed
        assert_eq!(s.dim(), 7);
        for m in [x.pow(3), &y.pow(2) * z, y.pow(3)] {
            assert!(!s.contains_poly(&m).unwrap());
        }
    }

    #[test]
    fn duals() {
        let v = vars(2);
        let d = dual_from_ideal(&[v[0].pow(2), v[1].pow(2)], 2, 2, Q).unwrap();
        assert_eq!(d.basis_polys(), vec![&v[0] * &v[1]]);
        assert!(dual_from_ideal(&[], 2, 3, Q).unwrap().is_full());
        let f = &v[0].pow(2) + &v[1].pow(2);
        assert!(!ideal_equals_annihilator(&[v[1].clone()], &f).unwrap());
    }

    #[test]
    fn phi() {
        let v = vars(3);
        let f = (&(&v[0] + &v[1]) + &v[2]).pow(3);
        assert_eq!(phi_scaling(&f, &v[0].pow(3)).unwrap(), f);
        let scaled = phi_scaling(&f, &(&c(3, 2) * &v[0].pow(3))).unwrap();
        assert_eq!(scaled, f.scale(&Q.from_ratio(&1.into(), &2.into()).unwrap()));
        let xy = &v[0] * &v[1];
        let g = &xy * &v[2];
        assert!(phi_scaling(&g, &v[0].pow(3)).is_err());
    }

    #[test]
    fn ci_hilbert_series() {
        assert_eq!(HilbertFunction::complete_intersection(4, 2).0, vec![1, 4, 6, 4, 1]);
        assert_eq!(HilbertFunction::mixed_complete_intersection(&[3, 3]).0, vec![1, 2, 3, 2, 1]);
        assert_eq!(HilbertFunction::mixed_complete_intersection(&[2, 2, 3, 3]).0.len(), 7);
    }

    #[test]
    fn positive_characteristic_guard() {
        let v: Vec<Poly> = (0..2).map(|i| Poly::var(2, i, Field::Prime(3))).collect();
        let f = v[0].pow(3);
        assert!(matches!(hilbert_function(&f), Err(Error::Characteristic { p: 3, degree: 3 })));
        let g = &v[0].pow(2) * &v[1];
        let f5: Vec<Poly> = (0..2).map(|i| Poly::var(2, i, Field::Prime(5))).collect();
        let g5 = &f5[0].pow(2) * &f5[1];
        assert!(hilbert_function(&g).is_err());
        assert_eq!(hilbert_function(&g5).unwrap().0, vec![1, 2, 2, 1]);
    }
}
