//! Sparse Gauss-Jordan elimination.
//!
//! Over `Q` rows are cleared of denominators and kept as primitive integer
//! vectors; elimination is fraction-free (`b*t - a*p` divided by `gcd(a, b)`)
//! and each new row is divided by its content. Over `F_p` rows are
//! normalized to a leading one. Pivots are chosen among the rows competing
//! for a column by smallest leading-entry bit size, then fewest nonzeros.
//! Row updates for a single pivot are independent and run through [`crate::par`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::par;
use crate::scalar::{add_mod, inv_mod, mul_mod, Field, Scalar};

/// Sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

type Row<E> = Vec<(usize, E)>;

trait Domain: Sync {
    type E: Clone + Send + Sync;

    /// Removes `col` from `target` using `pivot`; the result is defined up to a unit.
    fn eliminate(&self, target: &Row<Self::E>, pivot: &Row<Self::E>, col: usize) -> Row<Self::E>;
    fn normalize(&self, row: &mut Row<Self::E>);
    fn weight(&self, e: &Self::E) -> u64;
}

fn entry_at<E>(row: &Row<E>, col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Merges `sa*a + sb*b` over sorted sparse rows.
fn merge<E: Clone>(a: &Row<E>, b: &Row<E>, mut lin: impl FnMut(Option<&E>, Option<&E>) -> Option<E>) -> Row<E> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, va, vb) = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, Some(va), Some(vb))
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, Some(va), None)
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, Some(va), None)
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, None, Some(vb))
            }
            (None, None) => unreachable!(),
        };
        if let Some(v) = lin(va, vb) {
            out.push((col, v));
        }
    }
    out
}

struct Integers;

impl Domain for Integers {
    type E = BigInt;

    fn eliminate(&self, target: &Row<BigInt>, pivot: &Row<BigInt>, col: usize) -> Row<BigInt> {
        let a = entry_at(target, col).expect("target has entry at pivot column");
        let b = entry_at(pivot, col).expect("pivot has entry at its column");
        let g = a.gcd(b);
        let (tb, pa) = (b / &g, a / &g);
        let unit_scale = tb.is_one();
        merge(target, pivot, |x, y| {
            let v = match (x, y) {
                (Some(x), Some(y)) => {
                    if unit_scale {
                        x - &pa * y
                    } else {
                        &tb * x - &pa * y
                    }
                }
                (Some(x), None) => {
                    if unit_scale {
                        x.clone()
                    } else {
                        &tb * x
                    }
                }
                (None, Some(y)) => -(&pa * y),
                (None, None) => unreachable!(),
            };
            (!v.is_zero()).then_some(v)
        })
    }

    fn normalize(&self, row: &mut Row<BigInt>) {
        let Some((_, lead)) = row.first() else { return };
        let mut g = lead.abs();
        for (_, v) in row.iter().skip(1) {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        let flip = lead.is_negative();
        if !g.is_one() || flip {
            if flip {
                g = -g;
            }
            for (_, v) in row.iter_mut() {
                *v = &*v / &g;
            }
        }
    }

    fn weight(&self, e: &BigInt) -> u64 {
        e.bits()
    }
}

struct Residues(u64);

impl Domain for Residues {
    type E = u64;

    fn eliminate(&self, target: &Row<u64>, pivot: &Row<u64>, col: usize) -> Row<u64> {
        let p = self.0;
        let a = *entry_at(target, col).expect("target has entry at pivot column");
        let neg_a = (p - a) % p;
        merge(target, pivot, |x, y| {
            let v = add_mod(x.copied().unwrap_or(0), mul_mod(neg_a, y.copied().unwrap_or(0), p), p);
            (v != 0).then_some(v)
        })
    }

    fn normalize(&self, row: &mut Row<u64>) {
        let Some(&(_, lead)) = row.first() else { return };
        if lead != 1 {
            let inv = inv_mod(lead, self.0);
            for (_, v) in row.iter_mut() {
                *v = mul_mod(*v, inv, self.0);
            }
        }
    }

    fn weight(&self, _: &u64) -> u64 {
        1
    }
}

fn echelon<D: Domain>(dom: &D, rows: Vec<Row<D::E>>, reduce: bool) -> Vec<Row<D::E>> {
    let mut buckets: BTreeMap<usize, Vec<Row<D::E>>> = BTreeMap::new();
    for mut row in rows {
        if row.is_empty() {
            continue;
        }
        dom.normalize(&mut row);
        buckets.entry(row[0].0).or_default().push(row);
    }
    let mut pivots: Vec<Row<D::E>> = Vec::new();
    while let Some((col, mut cands)) = buckets.pop_first() {
        let best = cands
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (dom.weight(&r[0].1), r.len(), *i))
            .map(|(i, _)| i)
            .expect("bucket is nonempty");
        let pivot = cands.swap_remove(best);
        let reduced = par::map(&cands, |r| {
            let mut nr = dom.eliminate(r, &pivot, col);
            dom.normalize(&mut nr);
            nr
        });
        for r in reduced {
            if !r.is_empty() {
                buckets.entry(r[0].0).or_default().push(r);
            }
        }
        pivots.push(pivot);
    }
    if reduce {
        for j in (1..pivots.len()).rev() {
            let (head, tail) = pivots.split_at_mut(j);
            let pj = &tail[0];
            let col = pj[0].0;
            par::for_each_mut(head, |r| {
                if entry_at(r, col).is_some() {
                    let mut nr = dom.eliminate(r, pj, col);
                    dom.normalize(&mut nr);
                    *r = nr;
                }
            });
        }
    }
    pivots
}

fn to_integer_row(row: &SparseVec) -> Row<BigInt> {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        let q = v.as_rational().expect("rational entry");
        lcm = lcm.lcm(q.denom());
    }
    row.iter()
        .map(|(c, v)| {
            let q = v.as_rational().expect("rational entry");
            (*c, q.numer() * (&lcm / q.denom()))
        })
        .collect()
}

fn to_residue_row(row: &SparseVec) -> Row<u64> {
    row.iter()
        .map(|(c, v)| match v {
            Scalar::Prime(x) => (*c, x.value()),
            Scalar::Rational(_) => panic!("rational entry in a prime-field matrix"),
        })
        .collect()
}

/// Echelon form of the span of `rows`. With `reduce` the result is the
/// canonical reduced row-echelon basis (leading ones, pivot columns cleared);
/// without it rows are only guaranteed to have distinct leading columns.
/// Output rows are sorted by pivot column.
pub fn row_reduce(field: Field, rows: Vec<SparseVec>, reduce: bool) -> Vec<SparseVec> {
    let rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    match field {
        Field::Rational => {
            let ints = par::map(&rows, to_integer_row);
            let ech = echelon(&Integers, ints, reduce);
            par::map(&ech, |r| {
                let lead = &r[0].1;
                r.iter()
                    .map(|(c, v)| {
                        let q = if reduce {
                            BigRational::new(v.clone(), lead.clone())
                        } else {
                            BigRational::from_integer(v.clone())
                        };
                        (*c, Scalar::Rational(q))
                    })
                    .collect()
            })
        }
        Field::Prime(p) => {
            let res = rows.iter().map(to_residue_row).collect();
            let ech = echelon(&Residues(p), res, reduce);
            ech.into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, field.from_u64(v))).collect())
                .collect()
        }
    }
}

/// Rank of the span of `rows`.
pub fn rank(field: Field, rows: Vec<SparseVec>) -> usize {
    row_reduce(field, rows, false).len()
}

/// Canonical basis of `{v : <row, v> = 0 for every row}` in `K^cols`.
pub fn null_space(field: Field, cols: usize, rows: Vec<SparseVec>) -> Vec<SparseVec> {
    let rref = row_reduce(field, rows, true);
    let mut is_pivot = vec![false; cols];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    // per free column: the pivot rows that mention it
    let mut mentions: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
    for r in &rref {
        let pc = r[0].0;
        for (c, v) in r.iter().skip(1) {
            mentions[*c].push((pc, -v));
        }
    }
    let vectors: Vec<SparseVec> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut v = std::mem::take(&mut mentions[f]);
            v.push((f, field.one()));
            v.sort_by_key(|(c, _)| *c);
            v
        })
        .collect();
    row_reduce(field, vectors, true)
}

pub fn transpose(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r {
            out[*c].push((i, v.clone()));
        }
    }
    out
}
