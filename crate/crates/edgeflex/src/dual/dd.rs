//! Double description over exact integers: extreme rays of a pointed cone
//! `{ x : <h_i, x> <= 0 }` given the inequality rows `h_i`.
//!
//! Rays are kept as primitive integer vectors. New rays are integer
//! combinations of an adjacent (negative, positive) pair, reduced by the gcd
//! of their entries, so coefficients stay small. Adjacency uses the standard
//! combinatorial test on tight-constraint sets.

use crate::intlin::{vector_gcd, IntegerMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum DdError {
    /// The inequality rows do not span; the cone contains a line.
    NotPointed,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    /// Bitset over constraint indices this ray satisfies with equality.
    zeros: Vec<u64>,
}

impl Ray {
    fn set_zero(&mut self, idx: usize) {
        self.zeros[idx / 64] |= 1 << (idx % 64);
    }
}

fn zeros_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn zeros_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(x, y)| x & !y == 0)
}

fn zeros_count(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = vector_gcd(&v);
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Computes the extreme rays of `{ x in R^dim : <h, x> <= 0 for all rows }`.
/// The cone must be pointed (rows of full rank), otherwise `NotPointed`.
pub(crate) fn extreme_rays(
    dim: usize,
    ineqs: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>, DdError> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let m = ineqs.len();
    let words = m.div_ceil(64);

    // greedy maximal independent subset, in input order
    let mut basis: Vec<usize> = Vec::new();
    for (i, row) in ineqs.iter().enumerate() {
        if basis.len() == dim {
            break;
        }
        let mut entries: Vec<BigInt> = Vec::with_capacity((basis.len() + 1) * dim);
        for &b in &basis {
            entries.extend(ineqs[b].iter().cloned());
        }
        entries.extend(row.iter().cloned());
        let mat = IntegerMatrix::new(basis.len() + 1, dim, entries).expect("shape");
        if mat.rank() == basis.len() + 1 {
            basis.push(i);
        }
    }
    if basis.len() < dim {
        return Err(DdError::NotPointed);
    }

    // initial simplicial cone: rays are the negated, primitivized columns of
    // the basis inverse, so <h_basis[i], r_j> = -s_j * delta_ij with s_j > 0
    let mut entries = Vec::with_capacity(dim * dim);
    for &b in &basis {
        entries.extend(ineqs[b].iter().cloned());
    }
    let hb = IntegerMatrix::new(dim, dim, entries).expect("shape");
    let inv = hb.inverse().expect("independent rows");
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let col: Vec<BigInt> = (0..dim)
            .map(|i| {
                let q = inv.get(i, j);
                -(q.numer() * common_denominator(&inv, j) / q.denom())
            })
            .collect();
        let mut ray = Ray {
            v: primitive(col),
            zeros: vec![0u64; words],
        };
        for (i, &b) in basis.iter().enumerate() {
            if i != j {
                ray.set_zero(b);
            }
        }
        debug_assert!(dot(&ray.v, &ineqs[basis[j]]).is_negative());
        rays.push(ray);
    }

    // insert the remaining constraints in input order
    for (ci, h) in ineqs.iter().enumerate() {
        if basis.contains(&ci) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&r.v, h)).collect();
        let mut keep: Vec<Ray> = Vec::new();
        let mut negs: Vec<usize> = Vec::new();
        let mut poss: Vec<usize> = Vec::new();
        for (i, val) in vals.iter().enumerate() {
            if val.is_zero() {
                let mut r = rays[i].clone();
                r.set_zero(ci);
                keep.push(r);
            } else if val.is_negative() {
                negs.push(i);
            } else {
                poss.push(i);
            }
        }
        if poss.is_empty() {
            // constraint is implied except for tightness bookkeeping
            for &i in &negs {
                keep.push(rays[i].clone());
            }
            rays = keep;
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &poss {
            for &n in &negs {
                let common = zeros_and(&rays[p].zeros, &rays[n].zeros);
                if zeros_count(&common) + 2 < dim {
                    continue;
                }
                // adjacency: no third ray is tight on all common constraints
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == n || !zeros_subset(&common, &r.zeros)
                });
                if !adjacent {
                    continue;
                }
                // combine: <h, new> = 0, new stays on the feasible side
                let a = vals[p].clone();
                let b = -vals[n].clone();
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &a * x + &b * y)
                    .collect();
                let mut zeros = common;
                zeros[ci / 64] |= 1 << (ci % 64);
                new_rays.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }
        for &i in &negs {
            keep.push(rays[i].clone());
        }
        keep.extend(new_rays);
        rays = keep;
    }

    Ok(rays.into_iter().map(|r| r.v).collect())
}

fn common_denominator(inv: &crate::intlin::RationalMatrix, col: usize) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::from(1);
    for i in 0..inv.rows() {
        l = l.lcm(inv.get(i, col).denom());
    }
    l
}
