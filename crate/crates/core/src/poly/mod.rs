//! Sparse multivariate polynomials over an exact [`Field`].
//!
//! Monomials are ordered graded-lexicographically with `x0 > x1 > ... `;
//! this order fixes every basis of a graded slice `R_k` used downstream and
//! the print order (highest monomial first).

pub mod subst;

pub use subst::{eliminate_variables, substitute_linear, Elimination, LinearSubstitution};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Exponent vector `x0^e0 ... x(n-1)^e(n-1)` with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps: exps.into_boxed_slice(), degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut e = vec![0; self.nvars()];
        for (i, &target) in perm.iter().enumerate() {
            e[target] = self.exps[i];
        }
        Monomial { exps: e.into_boxed_slice(), degree: self.degree }
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", names[i])?;
            } else {
                write!(f, "{}^{}", names[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `C(n+k-1, k)` monomials of degree `k` in `n` variables, highest first.
pub fn graded_basis(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(rest: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 1 {
            prefix.push(k);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(rest - 1, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Position of each monomial in a basis list.
pub fn basis_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `C(n, k)` as `u64`; panics on overflow, which desk-scale inputs never reach.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Dimension of `R_k` for `n` variables.
pub fn slice_dim(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    binomial(nvars as u64 + k as u64 - 1, k as u64) as usize
}

/// A polynomial in a fixed number of variables over a fixed field.
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Self {
        Poly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize, field: Field) -> Self {
        Poly::monomial(Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.nvars(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms(
        nvars: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length differs from ambient ring");
            assert_eq!(c.field(), field, "coefficient field differs from ambient ring");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[Scalar], field: Field) -> Self {
        let n = coeffs.len();
        Poly::from_terms(n, field, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from highest to lowest monomial.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms. Zero counts as homogeneous of every degree and gives `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Degree of a nonzero homogeneous polynomial, or a precondition error.
    pub fn form_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::precondition("the form must be nonzero"));
        }
        self.homogeneous_degree().ok_or_else(|| Error::precondition("the polynomial must be homogeneous"))
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ambient(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.nvars, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        assert_eq!(c.field(), self.field, "scalar field differs from ambient ring");
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(a, v)| (a.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, self.field.one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * &self.field.from_u64(e as u64));
        }
        out
    }

    /// The `n` first partial derivatives in variable order.
    pub fn partials(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ambient(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps.iter()) {
                if e > 0 {
                    t = t.checked_mul(&x.pow(e))?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars, self.field);
        while let Some((m, c)) = rem.leading() {
            let q = lm
                .quotient_of(m)
                .ok_or_else(|| Error::Invariant("polynomial division is not exact".into()))?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&q), -(&qc * dc));
            }
            quot.add_term(q, qc);
        }
        Ok(quot)
    }

    /// Coefficient vector over a slice basis; terms outside the basis are an error.
    pub fn coefficients_in(&self, index: &HashMap<Monomial, usize>) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); index.len()];
        for (m, c) in &self.terms {
            let i = index
                .get(m)
                .ok_or_else(|| Error::ambient("polynomial has a term outside the slice"))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coefficients(nvars: usize, field: Field, basis: &[Monomial], coeffs: &[Scalar]) -> Poly {
        Poly::from_terms(nvars, field, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    /// Applies a variable permutation: variable `i` becomes variable `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        }
    }

    /// Printable view with user variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(self.names, f)?;
            }
        }
        Ok(())
    }
}

/// Default names `x0, x1, ...`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display(&names))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::precondition("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition("partition parts must be nonincreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The exponent vector `(l1, l2, ..., 0, ..., 0)` in `n` variables,
    /// the highest monomial of the symmetric orbit.
    pub fn leading_monomial(&self, nvars: usize) -> Result<Monomial> {
        if self.len() > nvars {
            return Err(Error::precondition(format!(
                "partition has {} parts but only {} variables",
                self.len(),
                nvars
            )));
        }
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Ok(Monomial::new(e))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Partitions of `total` with at most `max_parts` parts, in reverse lexicographic order.
pub fn partitions(total: u32, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The monomial symmetric polynomial `m_lambda`: the sum of all distinct
/// monomials whose exponent multiset is `lambda` (padded with zeros).
pub fn monomial_symmetric(lambda: &Partition, nvars: usize, field: Field) -> Result<Poly> {
    let lead = lambda.leading_monomial(nvars)?;
    let mut exps = lead.exps().to_vec();
    exps.sort_unstable();
    let mut out = Poly::zero(nvars, field);
    loop {
        out.add_term(Monomial::new(exps.clone()), field.one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(out)
}

/// Coefficients of a symmetric form in the monomial symmetric basis
/// `m_lambda`, one entry per partition, read off the leading monomial of each orbit.
pub fn symmetric_coordinates(f: &Poly, parts: &[Partition]) -> Result<Vec<Scalar>> {
    parts
        .iter()
        .map(|p| Ok(f.coeff(&p.leading_monomial(f.nvars())?)))
        .collect()
}
