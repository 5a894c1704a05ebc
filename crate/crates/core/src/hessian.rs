//! Higher Hessians `H_k(F) = ((alpha beta) o F)` over a basis `B_k` of
//! degree-`k` monomials, and the strong Lefschetz probe built on them.
//!
//! Deciding whether `det H_k(F)` vanishes identically goes in three steps:
//! evaluation at seeded random integer points (a nonzero value proves
//! nonvanishing), then a symbolic fraction-free determinant over polynomials
//! for matrices up to [`SYMBOLIC_LIMIT`], then for larger matrices an
//! exhaustive grid. A nonzero form of degree `D` is nonzero on `x_0 = 1` and,
//! after dehomogenizing, somewhere on `{0..D}^(n-1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apolar::{act_with, hilbert_function, Action};
use crate::error::{Error, Result};
use crate::linalg::{elim, Matrix, SparseVec, Subspace};
use crate::par;
use crate::poly::{basis_index, graded_basis, Monomial, Poly};
use crate::scalar::{char_guard, Field, Scalar};

pub const DEFAULT_RETRIES: usize = 8;
pub const SYMBOLIC_LIMIT: usize = 12;
const GRID_LIMIT: u128 = 2_000_000;
const SAMPLE_RANGE: i64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisChoice {
    /// Always the square-free monomials of degree `k`.
    SquareFree,
    /// Square-free monomials when they form a basis of `A(F)_k`, otherwise a
    /// greedy monomial basis of `A(F)_k` in graded-lex order.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    SquareFree,
    /// Square-free monomials that are not a basis of `A(F)_k`.
    SquareFreeDependent,
    GreedyMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianMatrix {
    pub order: u32,
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<Poly>>,
}

impl HessianMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn evaluate(&self, point: &[Scalar], field: Field) -> Result<Matrix> {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, 0, field));
        }
        Matrix::from_rows(rows, field)
    }
}

/// The degree-`k` square-free monomials in graded-lex order.
pub fn square_free_basis(nvars: usize, k: u32) -> Vec<Monomial> {
    graded_basis(nvars, k).into_iter().filter(Monomial::is_square_free).collect()
}

fn check_order(form: &Poly, k: u32) -> Result<u32> {
    let d = form.form_degree()?;
    if 2 * k > d {
        return Err(Error::precondition(format!("Hessian order {k} needs 2k <= deg F = {d}")));
    }
    char_guard(form.field().characteristic(), d as u64)?;
    Ok(d)
}

/// `H_k(F)` over `basis` (default: square-free monomials of degree `k`).
pub fn higher_hessian(form: &Poly, k: u32, basis: Option<&[Monomial]>) -> Result<HessianMatrix> {
    check_order(form, k)?;
    let basis = match basis {
        Some(b) => {
            if let Some(m) = b.iter().find(|m| m.degree() != k || m.nvars() != form.nvars()) {
                return Err(Error::precondition(format!(
                    "basis monomial of degree {} in {} variables, expected degree {k} in {}",
                    m.degree(),
                    m.nvars(),
                    form.nvars()
                )));
            }
            b.to_vec()
        }
        None => square_free_basis(form.nvars(), k),
    };
    let size = basis.len();
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i..size).map(move |j| (i, j))).collect();
    let field = form.field();
    let values = par::map(&pairs, |&(i, j)| {
        act_with(&Poly::monomial(basis[i].mul(&basis[j]), field.one()), form, Action::Differentiation)
    });
    let mut entries = vec![vec![Poly::zero(form.nvars(), field); size]; size];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        entries[j][i] = v.clone();
        entries[i][j] = v;
    }
    Ok(HessianMatrix { order: k, basis, entries })
}

/// Images `m o F` of degree-`k` monomials as vectors over `R_(d-k)`.
fn image_vectors(form: &Poly, monos: &[Monomial]) -> Result<Vec<SparseVec>> {
    let d = form.form_degree()?;
    let k = monos.first().map_or(0, Monomial::degree);
    let idx = basis_index(&graded_basis(form.nvars(), d - k));
    par::map(monos, |m| {
        let img = act_with(&Poly::monomial(m.clone(), form.field().one()), form, Action::Differentiation)?;
        let mut v: SparseVec = img.terms().map(|(t, c)| (idx[t], c.clone())).collect();
        v.sort_by_key(|(c, _)| *c);
        Ok(v)
    })
    .into_iter()
    .collect()
}

/// A monomial basis of `A(F)_k`, greedily in graded-lex order.
pub fn monomial_basis(form: &Poly, k: u32) -> Result<Vec<Monomial>> {
    let d = form.form_degree()?;
    if k > d {
        return Ok(Vec::new());
    }
    let field = form.field();
    let monos = graded_basis(form.nvars(), k);
    let images = image_vectors(form, &monos)?;
    let n_out = form.nvars();
    let target = elim::rank(field, images.clone());
    let mut span = Subspace::zero(n_out, d - k, field);
    let mut out = Vec::new();
    for (m, v) in monos.into_iter().zip(images) {
        if out.len() == target {
            break;
        }
        let grown = span.sum(&Subspace::from_vectors(n_out, d - k, field, vec![v]))?;
        if grown.dim() > span.dim() {
            span = grown;
            out.push(m);
        }
    }
    Ok(out)
}

/// The basis `B_k` used for `H_k(F)` and what kind of basis it is.
pub fn select_basis(form: &Poly, k: u32, choice: BasisChoice) -> Result<(Vec<Monomial>, BasisKind)> {
    check_order(form, k)?;
    let sf = square_free_basis(form.nvars(), k);
    let images = image_vectors(form, &sf)?;
    let rank = elim::rank(form.field(), images);
    let h_k = elim::rank(form.field(), image_vectors(form, &graded_basis(form.nvars(), k))?);
    let is_basis = rank == sf.len() && rank == h_k;
    match (choice, is_basis) {
        (_, true) => Ok((sf, BasisKind::SquareFree)),
        (BasisChoice::SquareFree, false) => Ok((sf, BasisKind::SquareFreeDependent)),
        (BasisChoice::Auto, false) => Ok((monomial_basis(form, k)?, BasisKind::GreedyMonomial)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetCertificate {
    /// `det H_k(point) = value != 0`.
    NonzeroAt { point: Vec<Scalar>, value: Scalar },
    /// The symbolic determinant is the zero polynomial.
    SymbolicZero,
    /// The symbolic determinant is a nonzero polynomial of this degree.
    SymbolicNonzero { degree: u32 },
    /// The determinant vanishes on the whole grid `{0..bound}^(n-1)` with `x_0 = 1`.
    GridZero { bound: u32 },
}

impl DetCertificate {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, DetCertificate::NonzeroAt { .. } | DetCertificate::SymbolicNonzero { .. })
    }

    pub fn method(&self) -> &'static str {
        match self {
            DetCertificate::NonzeroAt { .. } => "evaluation",
            DetCertificate::SymbolicZero | DetCertificate::SymbolicNonzero { .. } => "symbolic",
            DetCertificate::GridZero { .. } => "grid",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DetReport {
    pub nonzero: bool,
    pub certificate: DetCertificate,
    pub seed: u64,
    pub evaluations: usize,
}

/// `det` of a square matrix of polynomials by fraction-free elimination with
/// exact polynomial division.
pub fn symbolic_determinant(entries: &[Vec<Poly>], nvars: usize, field: Field) -> Result<Poly> {
    let n = entries.len();
    if n == 0 {
        return Ok(Poly::constant(nvars, field.one()));
    }
    let mut m: Vec<Vec<Poly>> = entries.to_vec();
    let mut prev = Poly::constant(nvars, field.one());
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Poly::zero(nvars, field));
            };
            m.swap(k, r);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let pivot = m[k][k].clone();
        let cells: Vec<(usize, usize)> = (k + 1..n).flat_map(|i| (k + 1..n).map(move |j| (i, j))).collect();
        let updated = par::map(&cells, |&(i, j)| {
            let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
            num.div_exact(&prev)
        });
        for (&(i, j), v) in cells.iter().zip(updated) {
            m[i][j] = v?;
        }
        for row in m.iter_mut().skip(k + 1) {
            row[k] = Poly::zero(nvars, field);
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

fn grid_search(h: &HessianMatrix, nvars: usize, field: Field, bound: u32) -> Result<Option<(Vec<Scalar>, Scalar)>> {
    let side = bound as u128 + 1;
    let count = side.checked_pow(nvars.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if count > GRID_LIMIT {
        return Err(Error::precondition(format!(
            "determinant zero test would need {count} grid points; too large to certify"
        )));
    }
    let point_at = |code: u128| {
        let mut c = code;
        let mut pt = vec![field.one()];
        for _ in 1..nvars {
            pt.push(field.from_u64((c % side) as u64));
            c /= side;
        }
        pt
    };
    let det_at = |pt: &[Scalar]| h.evaluate(pt, field).and_then(|m| m.determinant());
    let codes: Vec<u128> = (0..count).collect();
    // errors count as hits so that they surface below
    let hit = par::position_first(&codes, |&c| det_at(&point_at(c)).map_or(true, |v| !v.is_zero()));
    match hit {
        None => Ok(None),
        Some(i) => {
            let pt = point_at(codes[i]);
            let value = det_at(&pt)?;
            Ok(Some((pt, value)))
        }
    }
}

/// Decides whether `det H` is a nonzero polynomial in the `nvars` variables.
pub fn hessian_det_nonzero(h: &HessianMatrix, nvars: usize, field: Field, seed: u64, retries: usize) -> Result<DetReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0;
    for _ in 0..retries.max(1) {
        let point: Vec<Scalar> = (0..nvars).map(|_| field.from_i64(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))).collect();
        evaluations += 1;
        let value = h.evaluate(&point, field)?.determinant()?;
        if !value.is_zero() {
            return Ok(DetReport { nonzero: true, certificate: DetCertificate::NonzeroAt { point, value }, seed, evaluations });
        }
    }
    let certificate = if h.size() <= SYMBOLIC_LIMIT {
        let det = symbolic_determinant(&h.entries, nvars, field)?;
        match det.degree() {
            None => DetCertificate::SymbolicZero,
            Some(degree) => DetCertificate::SymbolicNonzero { degree },
        }
    } else {
        let entry_degree = h.entries.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0);
        let bound = entry_degree * h.size() as u32;
        match grid_search(h, nvars, field, bound)? {
            Some((point, value)) => DetCertificate::NonzeroAt { point, value },
            None => DetCertificate::GridZero { bound },
        }
    };
    Ok(DetReport { nonzero: certificate.is_nonzero(), certificate, seed, evaluations })
}

#[derive(Clone, Debug)]
pub struct OrderResult {
    pub order: u32,
    pub basis: Vec<Monomial>,
    pub basis_kind: BasisKind,
    pub det: DetReport,
}

#[derive(Clone, Debug)]
pub struct SlpReport {
    pub passes: bool,
    pub first_failure: Option<u32>,
    pub orders: Vec<OrderResult>,
    pub seed: u64,
}

/// Runs the Hessian test for `k = 1..floor(d/2)`, stopping at the first order
/// whose determinant vanishes identically.
pub fn slp_probe(form: &Poly, choice: BasisChoice, seed: u64) -> Result<SlpReport> {
    if form.field() != Field::Rational {
        return Err(Error::precondition("the Lefschetz probe works in characteristic zero"));
    }
    let d = form.form_degree()?;
    let mut orders = Vec::new();
    let mut first_failure = None;
    for k in 1..=d / 2 {
        let (basis, basis_kind) = select_basis(form, k, choice)?;
        let h = higher_hessian(form, k, Some(&basis))?;
        let det = hessian_det_nonzero(&h, form.nvars(), form.field(), seed.wrapping_add(k as u64), DEFAULT_RETRIES)?;
        let ok = det.nonzero;
        orders.push(OrderResult { order: k, basis, basis_kind, det });
        if !ok {
            first_failure = Some(k);
            break;
        }
    }
    Ok(SlpReport { passes: first_failure.is_none(), first_failure, orders, seed })
}

/// Result of comparing `det H_1(F)(l) != 0` with bijectivity of `l^(d-2): A_1 -> A_(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub hessian_nonzero: bool,
    pub bijective: bool,
    /// Rank of the multiplication map and `dim A_1`.
    pub rank: usize,
    pub dim_a1: usize,
}

impl Crosscheck {
    pub fn agree(&self) -> bool {
        self.hessian_nonzero == self.bijective
    }
}

/// Both sides are taken over a monomial basis `B_1` of `A_1`. The class of
/// `g` in `A_(d-1)` is determined by `g o F` in `R_1`, so the multiplication
/// map has the matrix with rows `(l^(d-2) b) o F`, `b` in `B_1`.
pub fn hessian_bijectivity_crosscheck(form: &Poly, ell: &Poly) -> Result<Crosscheck> {
    let d = form.form_degree()?;
    char_guard(form.field().characteristic(), d as u64)?;
    if ell.is_zero() || ell.homogeneous_degree() != Some(1) {
        return Err(Error::precondition("l must be a nonzero linear form"));
    }
    if ell.nvars() != form.nvars() {
        return Err(Error::ambient("linear form and F live in different rings"));
    }
    if d < 2 {
        return Err(Error::precondition("the crosscheck needs deg F >= 2"));
    }
    let field = form.field();
    let n = form.nvars();
    let xi: Vec<Scalar> = (0..n).map(|i| ell.coeff(&Monomial::var(n, i))).collect();
    let basis = monomial_basis(form, 1)?;
    let h = higher_hessian(form, 1, Some(&basis))?;
    let hessian_nonzero = !h.evaluate(&xi, field)?.determinant()?.is_zero();

    let power = ell.pow(d - 2);
    let idx = basis_index(&graded_basis(n, 1));
    let rows = basis
        .iter()
        .map(|b| {
            let img = act_with(&power.mul_monomial(b), form, Action::Differentiation)?;
            let mut v: SparseVec = img.terms().map(|(t, c)| (idx[t], c.clone())).collect();
            v.sort_by_key(|(c, _)| *c);
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = elim::rank(field, rows);
    let dim_a1 = hilbert_function(form)?.values()[1];
    Ok(Crosscheck { hessian_nonzero, bijective: rank == dim_a1 && basis.len() == dim_a1, rank, dim_a1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn vars(n: usize) -> Vec<Poly> {
        (0..n).map(|i| Poly::var(n, i, Q)).collect()
    }

    #[test]
    fn hessian_of_xy() {
        let v = vars(2);
        let h = higher_hessian(&(&v[0] * &v[1]), 1, None).unwrap();
        let m = h.evaluate(&[Q.one(), Q.one()], Q).unwrap();
        assert_eq!(m, Matrix::from_i64(&[vec![0, 1], vec![1, 0]], Q));
        assert_eq!(m.determinant().unwrap(), Q.from_i64(-1));
    }

    #[test]
    fn power_of_variable() {
        let x = Poly::var(1, 0, Q);
        for d in 2..6u32 {
            let h = higher_hessian(&x.pow(d), 1, None).unwrap();
            assert_eq!(h.size(), 1);
            assert_eq!(*h.entry(0, 0), &Poly::constant(1, Q.from_i64((d * (d - 1)) as i64)) * &x.pow(d - 2));
            let r = slp_probe(&x.pow(d), BasisChoice::Auto, 1).unwrap();
            assert!(r.passes);
        }
        let bad = [Monomial::new(vec![2])];
        assert!(higher_hessian(&x.pow(4), 1, Some(&bad)).is_err());
    }

    #[test]
    fn symbolic_det_small() {
        let v = vars(2);
        // [[x, y], [y, x]] has determinant x^2 - y^2
        let m = vec![vec![v[0].clone(), v[1].clone()], vec![v[1].clone(), v[0].clone()]];
        assert_eq!(symbolic_determinant(&m, 2, Q).unwrap(), &v[0].pow(2) - &v[1].pow(2));
        // rows proportional
        let m = vec![vec![v[0].clone(), v[1].clone()], vec![&v[0] * &v[0], &v[0] * &v[1]]];
        assert!(symbolic_determinant(&m, 2, Q).unwrap().is_zero());
        // zero pivot needing a swap
        let m = vec![vec![Poly::zero(2, Q), v[0].clone()], vec![v[1].clone(), Poly::zero(2, Q)]];
        assert_eq!(symbolic_determinant(&m, 2, Q).unwrap(), -(&v[0] * &v[1]));
    }

    #[test]
    fn cubic_crosscheck() {
        let v = vars(3);
        let f = &(&(&v[0].pow(3) + &v[1].pow(3)) + &v[2].pow(3)) + &(&(&v[0] * &v[1]) * &v[2]);
        let ell = &(&v[0] + &v[1]) + &v[2];
        let c = hessian_bijectivity_crosscheck(&f, &ell).unwrap();
        assert!(c.hessian_nonzero && c.bijective);
        let x = Poly::var(1, 0, Q);
        let c = hessian_bijectivity_crosscheck(&x.pow(4), &x).unwrap();
        assert!(c.hessian_nonzero && c.bijective);
        assert!(hessian_bijectivity_crosscheck(&f, &Poly::zero(3, Q)).is_err());
    }

    #[test]
    fn grid_fallback_finds_nonzero() {
        // diag(y, x, ..., x): zero at y = 0, first hit at (1, 1)
        let v = vars(2);
        let size = SYMBOLIC_LIMIT + 1;
        let mut entries = vec![vec![Poly::zero(2, Q); size]; size];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = if i == 0 { v[1].clone() } else { v[0].clone() };
        }
        let h = HessianMatrix { order: 1, basis: vec![Monomial::var(2, 0); size], entries };
        let found = grid_search(&h, 2, Q, size as u32).unwrap();
        let (pt, val) = found.unwrap();
        assert_eq!(pt[1], Q.one());
        assert_eq!(val, Q.one());
    }
}
