//! The divided power algebra with monomials `X^(I)`, product
//! `X^(I) X^(J) = C(I+J, I) X^(I+J)` and the contraction action
//! `x^A o X^(B) = X^(B-A)` (zero unless `A <= B`).
//!
//! Elements are stored like polynomials: the coefficient attached to the
//! exponent vector `I` is the coefficient of `X^(I)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::apolar::{act_with, annihilator_slice_with, Action};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPoly {
    inner: Poly,
}

impl DividedPoly {
    pub fn zero(nvars: usize, field: Field) -> Self {
        DividedPoly { inner: Poly::zero(nvars, field) }
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        DividedPoly { inner: Poly::constant(nvars, field.one()) }
    }

    /// `c X^(I)`.
    pub fn monomial(exps: Monomial, c: Scalar) -> Self {
        DividedPoly { inner: Poly::monomial(exps, c) }
    }

    /// `X_i^(1)`.
    pub fn var(nvars: usize, i: usize, field: Field) -> Self {
        DividedPoly { inner: Poly::var(nvars, i, field) }
    }

    /// Reads the coefficients of `f` as coefficients of divided monomials,
    /// without rescaling.
    pub fn from_classical(f: &Poly) -> Self {
        DividedPoly { inner: f.clone() }
    }

    /// The same coefficients on ordinary monomials.
    pub fn as_classical(&self) -> &Poly {
        &self.inner
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    pub fn field(&self) -> Field {
        self.inner.field()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.inner.terms()
    }

    pub fn coeff(&self, exps: &Monomial) -> Scalar {
        self.inner.coeff(exps)
    }

    pub fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    pub fn checked_add(&self, other: &DividedPoly) -> Result<DividedPoly> {
        Ok(DividedPoly { inner: self.inner.checked_add(&other.inner)? })
    }

    pub fn scale(&self, c: &Scalar) -> DividedPoly {
        DividedPoly { inner: self.inner.scale(c) }
    }

    pub fn pow(&self, e: u32) -> Result<DividedPoly> {
        let mut acc = DividedPoly::one(self.nvars(), self.field());
        for _ in 0..e {
            acc = dp_multiply(&acc, self)?;
        }
        Ok(acc)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> DividedDisplay<'a> {
        DividedDisplay { p: self, names }
    }
}

/// `C(I+J, I) = prod C(i_k + j_k, i_k)`, computed over the integers.
pub fn multinomial_coefficient(i: &Monomial, j: &Monomial) -> BigInt {
    i.exps().iter().zip(j.exps()).fold(BigInt::one(), |acc, (&a, &b)| {
        let mut c = BigInt::one();
        for t in 1..=a as u64 {
            c = c * BigInt::from(b as u64 + t) / BigInt::from(t);
        }
        acc * c
    })
}

pub fn dp_multiply(a: &DividedPoly, b: &DividedPoly) -> Result<DividedPoly> {
    if a.nvars() != b.nvars() {
        return Err(Error::ambient("divided powers in different numbers of variables"));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let mut out = Poly::zero(a.nvars(), field);
    for (i, ci) in a.terms() {
        for (j, cj) in b.terms() {
            let c = field.from_bigint(&multinomial_coefficient(i, j));
            out.add_term(i.mul(j), &(ci * cj) * &c);
        }
    }
    Ok(DividedPoly { inner: out })
}

/// `f o gamma` under contraction.
pub fn contract(f: &Poly, gamma: &DividedPoly) -> Result<DividedPoly> {
    Ok(DividedPoly { inner: act_with(f, &gamma.inner, Action::Contraction)? })
}

fn exponent_factorial(m: &Monomial, field: Field) -> Scalar {
    m.exps().iter().fold(field.one(), |acc, &e| &acc * &field.factorial(e as u64))
}

/// `x^I = I! X^(I)`.
pub fn to_divided(f: &Poly) -> DividedPoly {
    let field = f.field();
    let inner = Poly::from_terms(
        f.nvars(),
        field,
        f.terms().map(|(m, c)| (m.clone(), c * &exponent_factorial(m, field))),
    );
    DividedPoly { inner }
}

/// `X^(I) = x^I / I!`; needs every exponent below the characteristic.
pub fn from_divided(g: &DividedPoly) -> Result<Poly> {
    let field = g.field();
    let p = field.characteristic();
    let mut out = Poly::zero(g.nvars(), field);
    for (m, c) in g.terms() {
        if let Some(&e) = m.exps().iter().find(|&&e| p != 0 && e as u64 >= p) {
            return Err(Error::Characteristic { p, degree: e as u64 });
        }
        out.add_term(m.clone(), c.checked_div(&exponent_factorial(m, field))?);
    }
    Ok(out)
}

/// `{f in R_k : f o gamma = 0}` under contraction; valid in every characteristic.
pub fn contraction_annihilator_slice(gamma: &DividedPoly, k: u32) -> Result<Subspace> {
    annihilator_slice_with(&gamma.inner, k, Action::Contraction)
}

pub struct DividedDisplay<'a> {
    p: &'a DividedPoly,
    names: &'a [String],
}

impl fmt::Display for DividedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.p.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, e)| format!("{}^({e})", self.names[i]))
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DividedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::poly::default_names(self.nvars());
        write!(f, "{}", self.display(&names))
    }
}
