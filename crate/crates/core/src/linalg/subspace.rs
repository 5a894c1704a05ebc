use crate::error::{Error, Result};
use crate::linalg::elim::{self, SparseVec};
use crate::linalg::Matrix;
use crate::poly::{basis_index, graded_basis, slice_dim, Monomial, Poly};
use crate::scalar::Field;

/// A subspace of the graded slice `R_k` of `K[x0..x(n-1)]`, held as its
/// reduced row-echelon basis over the graded-lex monomial basis of `R_k`.
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    nvars: usize,
    degree: u32,
    field: Field,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn from_vectors(nvars: usize, degree: u32, field: Field, vectors: Vec<SparseVec>) -> Self {
        Subspace { nvars, degree, field, basis: elim::row_reduce(field, vectors, true) }
    }

    /// Wraps vectors already in reduced row-echelon form.
    pub(crate) fn from_rref(nvars: usize, degree: u32, field: Field, basis: Vec<SparseVec>) -> Self {
        Subspace { nvars, degree, field, basis }
    }

    /// Span of homogeneous polynomials of degree `degree`.
    pub fn from_polys(nvars: usize, degree: u32, field: Field, polys: &[Poly]) -> Result<Self> {
        let idx = basis_index(&graded_basis(nvars, degree));
        let mut vectors = Vec::with_capacity(polys.len());
        for p in polys {
            if p.nvars() != nvars || p.field() != field {
                return Err(Error::ambient("polynomial outside the ambient ring of the slice"));
            }
            let mut v: SparseVec = Vec::with_capacity(p.num_terms());
            for (m, c) in p.terms() {
                let i = idx
                    .get(m)
                    .ok_or_else(|| Error::ambient(format!("polynomial is not homogeneous of degree {degree}")))?;
                v.push((*i, c.clone()));
            }
            v.sort_by_key(|(c, _)| *c);
            vectors.push(v);
        }
        Ok(Subspace::from_vectors(nvars, degree, field, vectors))
    }

    pub fn zero(nvars: usize, degree: u32, field: Field) -> Self {
        Subspace { nvars, degree, field, basis: Vec::new() }
    }

    pub fn full(nvars: usize, degree: u32, field: Field) -> Self {
        let basis = (0..slice_dim(nvars, degree)).map(|i| vec![(i, field.one())]).collect();
        Subspace { nvars, degree, field, basis }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        slice_dim(self.nvars, self.degree)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse(&self.basis, self.ambient_dim(), self.field)
    }

    pub fn basis_polys(&self) -> Vec<Poly> {
        let mons = graded_basis(self.nvars, self.degree);
        self.basis
            .iter()
            .map(|v| Poly::from_terms(self.nvars, self.field, v.iter().map(|(c, s)| (mons[*c].clone(), s.clone()))))
            .collect()
    }

    /// The leading monomial of every basis vector.
    pub fn pivot_monomials(&self) -> Vec<Monomial> {
        let mons = graded_basis(self.nvars, self.degree);
        self.basis.iter().map(|v| mons[v[0].0].clone()).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if (self.nvars, self.degree, self.field) != (other.nvars, other.degree, other.field) {
            return Err(Error::ambient(format!(
                "subspaces of R_{} in {} vars and R_{} in {} vars",
                self.degree, self.nvars, other.degree, other.nvars
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let vectors = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        Ok(Subspace::from_vectors(self.nvars, self.degree, self.field, vectors))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    pub fn contains_poly(&self, p: &Poly) -> Result<bool> {
        let other = Subspace::from_polys(self.nvars, self.degree, self.field, std::slice::from_ref(p))?;
        self.contains(&other)
    }

    /// Basis vectors of `self` (in echelon order) extending a basis of `sub` to one of `self`.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Poly>> {
        self.check_ambient(sub)?;
        let mons = graded_basis(self.nvars, self.degree);
        let mut span = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            let one = Subspace::from_vectors(self.nvars, self.degree, self.field, vec![v.clone()]);
            let grown = span.sum(&one)?;
            if grown.dim() > span.dim() {
                span = grown;
                out.push(Poly::from_terms(
                    self.nvars,
                    self.field,
                    v.iter().map(|(c, s)| (mons[*c].clone(), s.clone())),
                ));
            }
        }
        Ok(out)
    }
}
