//! Substitution by linear forms, with the row-vector convention
//! `(x_1 ... x_n) = (y_1 ... y_m) M`: an `m x n` matrix `M` sends a form
//! `F(x)` in `n` variables to `G(y) = F(yM)` in `m` variables.

use crate::error::{Error, Result};
use crate::linalg::{elim, Matrix, SparseVec};
use crate::par;
use crate::poly::{basis_index, graded_basis, Poly};
use crate::scalar::{char_guard, Field};

/// A full-rank `m x n` scalar matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    matrix: Matrix,
    rank: usize,
}

impl LinearSubstitution {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let rank = matrix.rank();
        let expected = matrix.rows().min(matrix.cols());
        if rank != expected {
            return Err(Error::RankDeficient { rank, expected });
        }
        Ok(LinearSubstitution { matrix, rank })
    }

    pub fn identity(n: usize, field: Field) -> Self {
        LinearSubstitution { matrix: Matrix::identity(n, field), rank: n }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of new variables `m`.
    pub fn target_vars(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of original variables `n`.
    pub fn source_vars(&self) -> usize {
        self.matrix.cols()
    }

    /// `self` followed by `then`: substituting by `self` and then by `then`
    /// equals substituting once by `then.matrix * self.matrix`.
    pub fn compose(&self, then: &LinearSubstitution) -> Result<LinearSubstitution> {
        LinearSubstitution::new(then.matrix.checked_mul(&self.matrix)?)
    }
}

/// `G(y) = F(yM)`.
pub fn substitute_linear(f: &Poly, sub: &LinearSubstitution) -> Result<Poly> {
    let m = &sub.matrix;
    if m.cols() != f.nvars() {
        return Err(Error::ambient(format!(
            "substitution expects {} variables, form has {}",
            m.cols(),
            f.nvars()
        )));
    }
    if m.field() != f.field() {
        return Err(Error::FieldMismatch(f.field(), m.field()));
    }
    let field = f.field();
    let targets = m.rows();
    let max_exp = f.terms().flat_map(|(mono, _)| mono.exps().iter().copied()).max().unwrap_or(0);
    // powers[j][e] = (x_j as a linear form in y)^e
    let powers: Vec<Vec<Poly>> = (0..m.cols())
        .map(|j| {
            let coeffs: Vec<_> = (0..targets).map(|i| m.get(i, j).clone()).collect();
            let lin = Poly::linear_form(&coeffs, field);
            let mut pw = vec![Poly::constant(targets, field.one())];
            for e in 1..=max_exp as usize {
                let next = &pw[e - 1] * &lin;
                pw.push(next);
            }
            pw
        })
        .collect();
    let terms: Vec<_> = f.terms().map(|(mono, c)| (mono.clone(), c.clone())).collect();
    let pieces = par::map(&terms, |(mono, c)| {
        let mut t = Poly::constant(targets, c.clone());
        for (j, &e) in mono.exps().iter().enumerate() {
            if e > 0 {
                t = &t * &powers[j][e as usize];
            }
        }
        t
    });
    Ok(pieces.into_iter().fold(Poly::zero(targets, field), |acc, p| &acc + &p))
}

/// Result of removing redundant variables from a form.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// The form in `n'` variables, `n'` = dimension of the span of the partials.
    pub reduced: Poly,
    /// `n x n'` substitution with `substitute_linear(reduced, witness) == F`.
    pub witness: LinearSubstitution,
    /// Invertible `n x n` change of variables `Q` with `substitute_linear(F, Q)`
    /// equal to `reduced` padded by `n - n'` unused trailing variables.
    pub change: Matrix,
}

/// Removes the variables a form does not really depend on.
///
/// The linear forms annihilating `F` (directions `a` with `sum a_i dF/dx_i = 0`)
/// are put in reduced echelon form and completed to a basis of `K^n` by the unit
/// vectors of their non-pivot columns. In those coordinates the annihilating
/// directions become trailing variables that `F` does not involve.
pub fn eliminate_variables(f: &Poly) -> Result<Elimination> {
    let n = f.nvars();
    let field = f.field();
    if f.is_zero() {
        return Ok(Elimination {
            reduced: Poly::zero(0, field),
            witness: LinearSubstitution::new(Matrix::zeros(n, 0, field))?,
            change: Matrix::identity(n, field),
        });
    }
    let d = f.form_degree()?;
    char_guard(field.characteristic(), d as u64)?;
    let relations = linear_relations(f)?;
    let mut is_pivot = vec![false; n];
    for r in &relations {
        is_pivot[r[0].0] = true;
    }
    let mut rows: Vec<SparseVec> = (0..n).filter(|&j| !is_pivot[j]).map(|j| vec![(j, field.one())]).collect();
    let kept = rows.len();
    rows.extend(relations);
    let change = Matrix::from_sparse(&rows, n, field);
    let h = substitute_linear(f, &LinearSubstitution::new(change.clone())?)?;
    let mut reduced = Poly::zero(kept, field);
    for (mono, c) in h.terms() {
        if mono.exps()[kept..].iter().any(|&e| e != 0) {
            return Err(Error::Invariant("eliminated variable still occurs in the form".into()));
        }
        reduced.add_term(crate::poly::Monomial::new(mono.exps()[..kept].to_vec()), c.clone());
    }
    let inv = change.inverse()?;
    let mut w = Matrix::zeros(n, kept, field);
    for i in 0..n {
        for j in 0..kept {
            w.set(i, j, inv.get(i, j).clone());
        }
    }
    Ok(Elimination { reduced, witness: LinearSubstitution::new(w)?, change })
}

/// Canonical basis of `{a : sum a_i dF/dx_i = 0}`.
pub(crate) fn linear_relations(f: &Poly) -> Result<Vec<SparseVec>> {
    let n = f.nvars();
    let d = f.form_degree()?;
    if d == 0 {
        return Ok((0..n).map(|i| vec![(i, f.field().one())]).collect());
    }
    let idx = basis_index(&graded_basis(n, d - 1));
    // row per monomial of degree d-1, column per partial
    let mut cols: Vec<SparseVec> = Vec::with_capacity(n);
    for p in f.partials() {
        let coeffs = p.coefficients_in(&idx)?;
        cols.push(coeffs.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
    }
    let rows = elim::transpose(&cols, idx.len());
    Ok(elim::null_space(f.field(), n, rows))
}
