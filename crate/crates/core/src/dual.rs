//! Dual generators of subalgebras and sub-quotients, obtained by substituting
//! linear forms into the dual generator of the ambient algebra.
//!
//! If `A = R/Ann(F)` and `B` is the subalgebra generated by the linear forms
//! given by the rows of a full-rank `m x n` matrix `M`, then as long as `B`
//! keeps the socle degree of `A`, the form `G(y) = F(yM)` is a dual generator
//! of `B`. The algebras are never built; the socle-degree hypothesis is
//! checked on the dual side as `G != 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::subst::{substitute_linear, LinearSubstitution};
use crate::poly::Poly;
use crate::scalar::{char_guard, Field};

/// Which construction a substituted dual generator stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualKind {
    Subalgebra,
    SubQuotient,
}

fn substituted_dual(form: &Poly, sub: &LinearSubstitution) -> Result<Poly> {
    let d = form.form_degree()?;
    char_guard(form.field().characteristic(), d as u64)?;
    let g = substitute_linear(form, sub)?;
    if g.is_zero() {
        return Err(Error::precondition("socle degree drops: the substituted form is zero"));
    }
    Ok(g)
}

/// Dual generator of the subalgebra generated by the rows of `sub`.
pub fn subalgebra_dual(form: &Poly, sub: &LinearSubstitution) -> Result<Poly> {
    substituted_dual(form, sub)
}

/// Dual generator of a sub-quotient `B/b` of the same socle degree. The
/// computation is the one of [`subalgebra_dual`].
pub fn subquotient_dual(form: &Poly, sub: &LinearSubstitution) -> Result<Poly> {
    substituted_dual(form, sub)
}

/// Block sizes `n_1, ..., n_r` of a Young subgroup `S_(n_1) x ... x S_(n_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungSubstitution {
    blocks: Vec<usize>,
}

impl YoungSubstitution {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::precondition("Young blocks must be positive and nonempty"));
        }
        Ok(YoungSubstitution { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }
}

/// The `r x n` 0/1 matrix whose `i`-th row sums the variables of block `i`, so
/// that every variable of block `i` is replaced by the same new variable `y_i`.
pub fn young_substitution(blocks: &YoungSubstitution, nvars: usize, field: Field) -> Result<LinearSubstitution> {
    if blocks.total() != nvars {
        return Err(Error::precondition(format!(
            "block sizes sum to {}, expected {nvars}",
            blocks.total()
        )));
    }
    let mut m = Matrix::zeros(blocks.blocks.len(), nvars, field);
    let mut col = 0;
    for (i, &b) in blocks.blocks.iter().enumerate() {
        for _ in 0..b {
            m.set(i, col, field.one());
            col += 1;
        }
    }
    LinearSubstitution::new(m)
}

/// True iff `F` is fixed by every adjacent transposition, hence by all of `S_n`.
pub fn symmetric_check(form: &Poly) -> bool {
    let n = form.nvars();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        form.permute_variables(&perm) == *form
    })
}
