//! Exact convex-combination feasibility by phase-1 simplex over rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// True iff `point` is a convex combination of `generators`.
///
/// Solves the phase-1 linear program for `sum l_i g_i = p, sum l_i = 1,
/// l >= 0` with exact rational arithmetic and Bland's pivoting rule, so the
/// answer is exact and the search terminates.
pub fn in_convex_hull(point: &[BigInt], generators: &[Vec<BigInt>]) -> bool {
    let d = point.len();
    let m = generators.len();
    if m == 0 {
        return false;
    }
    let k = d + 1; // constraint rows: d coordinates plus the affine row
    let rat = |v: &BigInt| BigRational::from_integer(v.clone());

    // tableau columns: m lambda variables, k artificials, rhs
    let width = m + k + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for r in 0..k {
        let mut row = vec![BigRational::zero(); width];
        for (j, g) in generators.iter().enumerate() {
            row[j] = if r < d { rat(&g[r]) } else { BigRational::one() };
        }
        row[width - 1] = if r < d { rat(&point[r]) } else { BigRational::one() };
        if row[width - 1].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[m + r] = BigRational::one();
        rows.push(row);
    }
    let mut basis: Vec<usize> = (m..m + k).collect();

    // reduced costs for minimizing the artificial sum
    let mut obj = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..width {
            if j < m || j == width - 1 {
                obj[j] -= &row[j];
            }
        }
    }

    loop {
        let entering = (0..m + k).find(|&j| obj[j].is_negative());
        let Some(e) = entering else {
            // optimal: feasible iff the artificial sum reached zero
            return obj[width - 1].is_zero();
        };
        let mut leave: Option<usize> = None;
        for r in 0..k {
            if rows[r][e].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cand = &rows[r][width - 1] / &rows[r][e];
                        let best = &rows[l][width - 1] / &rows[l][e];
                        cand < best || (cand == best && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(l) = leave else {
            // phase-1 objective is bounded below; unreachable
            debug_assert!(false, "unbounded phase-1 simplex");
            return false;
        };
        // pivot on (l, e)
        let pv = rows[l][e].clone();
        for v in rows[l].iter_mut() {
            *v = &*v / &pv;
        }
        for r in 0..k {
            if r != l && !rows[r][e].is_zero() {
                let f = rows[r][e].clone();
                for j in 0..width {
                    let v = &rows[r][j] - &f * &rows[l][j];
                    rows[r][j] = v;
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..width {
                let v = &obj[j] - &f * &rows[l][j];
                obj[j] = v;
            }
        }
        basis[l] = e;
    }
}
