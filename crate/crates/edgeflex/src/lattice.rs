//! Lattice-point enumeration in dilated polytopes, the integer decomposition
//! property check, affine-lattice spanning, and the odd-cycle-pair witness of
//! non-normality.
//!
//! Enumeration is coordinate-recursive: for each prefix length `j` the facets
//! of the projection onto the first `j` coordinates give exact integer bounds
//! for the next coordinate, so no point outside the projection is ever
//! visited. Point coordinates and facet data are bounded into machine
//! integers up front (with an explicit error otherwise) and all feasibility
//! arithmetic runs in 128-bit integers, which cannot overflow under those
//! bounds.

use crate::dual::{facets_of_rational_points, hrep_vertices, DualError, HRepresentation};
use crate::graphs::{Graph, OddCyclePair};
use crate::polytope::LatticePolytope;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashSet;
use thiserror::Error;

/// Default cap on enumerated points per check.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// Magnitude bound on facet data and coordinates so 128-bit feasibility
/// arithmetic is exact.
const COORD_LIMIT: i64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("point budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("lattice points of the polytope do not affinely span the lattice")]
    NotSpanning,
    #[error("polytope must be full-dimensional")]
    NotFullDimensional,
    #[error("coordinates or facet data exceed the machine-integer bound")]
    CoordinatesTooLarge,
    #[error("invalid odd-cycle pair: {0}")]
    InvalidPair(String),
    #[error("sumset escaped the dilated polytope at dilation {dilation}")]
    SoundnessViolation { dilation: usize },
}

impl From<DualError> for LatticeError {
    fn from(e: DualError) -> Self {
        match e {
            DualError::Unbounded => LatticeError::Unbounded,
            _ => LatticeError::NotFullDimensional,
        }
    }
}

/// The set `N*P int Z^dim`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePointSet {
    pub dim: usize,
    pub dilation: u64,
    pub points: Vec<Vec<i64>>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Mutable point-budget accounting shared across enumeration calls.
#[derive(Debug)]
pub struct Budget {
    remaining: u64,
    initial: u64,
}

impl Budget {
    pub fn new(initial: u64) -> Self {
        Self { remaining: initial, initial }
    }

    fn charge(&mut self, amount: u64) -> Result<(), LatticeError> {
        if self.remaining < amount {
            Err(LatticeError::BudgetExceeded { budget: self.initial })
        } else {
            self.remaining -= amount;
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.initial - self.remaining
    }
}

struct LevelFacet {
    normal: Vec<i64>,
    rhs_num: i64,
    rhs_den: i64,
}

/// Reusable enumerator: facet systems of every coordinate projection of one
/// polytope. Dilation only scales the right-hand sides.
pub struct DilationEnumerator {
    dim: usize,
    levels: Vec<Vec<LevelFacet>>,
}

impl DilationEnumerator {
    pub fn from_polytope(p: &LatticePolytope) -> Result<Self, LatticeError> {
        if !p.is_full_dimensional() {
            return Err(LatticeError::NotFullDimensional);
        }
        let vertices: Vec<Vec<BigRational>> = p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        Self::from_vertices(p.ambient_dim(), &vertices)
    }

    fn from_vertices(dim: usize, vertices: &[Vec<BigRational>]) -> Result<Self, LatticeError> {
        let mut levels = Vec::with_capacity(dim);
        for j in 1..=dim {
            let projected: Vec<Vec<BigRational>> =
                vertices.iter().map(|v| v[..j].to_vec()).collect();
            let hrep = facets_of_rational_points(j, &projected)
                .map_err(|_| LatticeError::NotFullDimensional)?;
            let mut facets = Vec::with_capacity(hrep.facets().len());
            for f in hrep.facets() {
                let to_i64 = |x: &BigInt| -> Result<i64, LatticeError> {
                    x.to_i64()
                        .filter(|v| v.abs() <= COORD_LIMIT)
                        .ok_or(LatticeError::CoordinatesTooLarge)
                };
                facets.push(LevelFacet {
                    normal: f.normal.iter().map(&to_i64).collect::<Result<_, _>>()?,
                    rhs_num: to_i64(f.rhs.numer())?,
                    rhs_den: to_i64(f.rhs.denom())?,
                });
            }
            levels.push(facets);
        }
        Ok(Self { dim, levels })
    }

    /// Enumerates `dilation * P int Z^dim` in lexicographic order, charging
    /// the budget one unit per visited projection point.
    pub fn enumerate(
        &self,
        dilation: u64,
        budget: &mut Budget,
    ) -> Result<Vec<Vec<i64>>, LatticeError> {
        if self.dim == 0 {
            budget.charge(1)?;
            return Ok(vec![vec![]]);
        }
        let n = dilation as i128;
        let mut out = Vec::new();
        let mut prefix: Vec<i64> = Vec::with_capacity(self.dim);
        self.recurse(n, &mut prefix, &mut out, budget)?;
        Ok(out)
    }

    fn recurse(
        &self,
        n: i128,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        budget: &mut Budget,
    ) -> Result<(), LatticeError> {
        let j = prefix.len(); // next coordinate index
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        for f in &self.levels[j] {
            let a = f.normal[j] as i128;
            if a == 0 {
                // constraint on the prefix only; implied by the lower level
                continue;
            }
            let s: i128 = f.normal[..j]
                .iter()
                .zip(prefix.iter())
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum();
            // a*den*x <= n*num - den*s; div_euclid floors for positive
            // divisors and ceils for negative ones, exactly the bound needed
            let t = n * f.rhs_num as i128 - f.rhs_den as i128 * s;
            let q = a * f.rhs_den as i128;
            let bound = t.div_euclid(q);
            if q > 0 {
                hi = Some(hi.map_or(bound, |h: i128| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound, |l: i128| l.max(bound)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(LatticeError::Unbounded);
        };
        let mut x = lo;
        while x <= hi {
            budget.charge(1)?;
            prefix.push(x as i64);
            if prefix.len() == self.dim {
                out.push(prefix.clone());
            } else {
                self.recurse(n, prefix, out, budget)?;
            }
            prefix.pop();
            x += 1;
        }
        Ok(())
    }
}

/// Lattice points of the `dilation`-fold dilate of a bounded full-dimensional
/// halfspace system, with the default point budget.
pub fn lattice_points(
    h: &HRepresentation,
    dilation: u64,
) -> Result<LatticePointSet, LatticeError> {
    lattice_points_with_budget(h, dilation, DEFAULT_POINT_BUDGET)
}

pub fn lattice_points_with_budget(
    h: &HRepresentation,
    dilation: u64,
    point_budget: u64,
) -> Result<LatticePointSet, LatticeError> {
    let vertices = hrep_vertices(h)?;
    if vertices.is_empty() {
        return Ok(LatticePointSet {
            dim: h.dim(),
            dilation,
            points: Vec::new(),
        });
    }
    let enumerator = DilationEnumerator::from_vertices(h.dim(), &vertices)?;
    let mut budget = Budget::new(point_budget);
    let points = enumerator.enumerate(dilation, &mut budget)?;
    Ok(LatticePointSet {
        dim: h.dim(),
        dilation,
        points,
    })
}

/// True iff the difference vectors of `P int Z^d` generate all of `Z^d`,
/// decided by Hermite-form reduction of the difference matrix.
pub fn affine_lattice_spanning(p: &LatticePolytope) -> Result<bool, LatticeError> {
    if !p.is_full_dimensional() {
        return Err(LatticeError::NotFullDimensional);
    }
    let d = p.ambient_dim();
    if d == 0 {
        return Ok(true);
    }
    let enumerator = DilationEnumerator::from_polytope(p)?;
    let mut budget = Budget::new(DEFAULT_POINT_BUDGET);
    let points = enumerator.enumerate(1, &mut budget)?;
    if points.len() < d + 1 {
        return Ok(false);
    }
    let base = &points[0];
    let rows = points.len() - 1;
    let mut entries = Vec::with_capacity(rows * d);
    for pt in &points[1..] {
        for j in 0..d {
            entries.push(BigInt::from(pt[j] - base[j]));
        }
    }
    let diff = crate::intlin::IntegerMatrix::new(rows, d, entries).expect("shape");
    let h = diff.hermite_normal_form();
    Ok((0..d).all(|i| h.get(i, i).is_one()))
}

/// Result of an integer-decomposition-property check up to `checked_up_to`.
#[derive(Debug, Clone)]
pub struct IdpReport {
    pub polytope: LatticePolytope,
    pub checked_up_to: usize,
    pub holds: bool,
    /// First failure: the dilation and the lexicographically smallest point
    /// of `N*P int Z^d` that is not a sum of `N` lattice points of `P`.
    pub witness: Option<(usize, Vec<i64>)>,
    /// Budget units consumed (enumerated projection points plus sumset
    /// candidates).
    pub budget_used: u64,
}

#[derive(Debug, Clone)]
pub struct IdpOptions {
    /// Dilations to check; defaults to `max(1, dim - 1)`, which decides
    /// normality outright (semigroup generators live in degrees below the
    /// dimension).
    pub n_max: Option<usize>,
    pub point_budget: u64,
}

impl Default for IdpOptions {
    fn default() -> Self {
        Self {
            n_max: None,
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

/// Checks the integer decomposition property: for each `N` up to the bound,
/// the `N`-fold sumset of `P int Z^d` must equal `N*P int Z^d`.
///
/// Requires a full-dimensional polytope whose lattice points affinely span
/// the lattice; rejects others, where the notion is not defined.
pub fn idp_check(p: &LatticePolytope, opts: &IdpOptions) -> Result<IdpReport, LatticeError> {
    if !p.is_full_dimensional() {
        return Err(LatticeError::NotFullDimensional);
    }
    if !affine_lattice_spanning(p)? {
        return Err(LatticeError::NotSpanning);
    }
    let n_max = opts
        .n_max
        .unwrap_or_else(|| 1.max(p.intrinsic_dim().saturating_sub(1)));
    let enumerator = DilationEnumerator::from_polytope(p)?;
    let mut budget = Budget::new(opts.point_budget);
    let degree_one = enumerator.enumerate(1, &mut budget)?;
    let mut sumset = degree_one.clone();
    let mut holds = true;
    let mut witness = None;
    for n in 2..=n_max {
        sumset = sum_of_sets(&sumset, &degree_one, &mut budget)?;
        let target = enumerator.enumerate(n as u64, &mut budget)?;
        // soundness: the sumset must sit inside the dilate
        if !sorted_subset(&sumset, &target) {
            return Err(LatticeError::SoundnessViolation { dilation: n });
        }
        if sumset.len() != target.len() {
            let missing = first_missing(&target, &sumset).expect("strict subset");
            holds = false;
            witness = Some((n, missing));
            break;
        }
    }
    Ok(IdpReport {
        polytope: p.clone(),
        checked_up_to: n_max,
        holds,
        witness,
        budget_used: budget.used(),
    })
}

fn sum_of_sets(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    budget: &mut Budget,
) -> Result<Vec<Vec<i64>>, LatticeError> {
    budget.charge((a.len() * b.len()) as u64)?;
    let mut set: HashSet<Vec<i64>> = HashSet::with_capacity(a.len());
    for x in a {
        for y in b {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            set.insert(s);
        }
    }
    let mut out: Vec<Vec<i64>> = set.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn sorted_subset(sub: &[Vec<i64>], sup: &[Vec<i64>]) -> bool {
    let mut i = 0;
    for x in sub {
        while i < sup.len() && sup[i] < *x {
            i += 1;
        }
        if i == sup.len() || sup[i] != *x {
            return false;
        }
        i += 1;
    }
    true
}

fn first_missing(sup: &[Vec<i64>], sub: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mut i = 0;
    for x in sup {
        if i < sub.len() && sub[i] == *x {
            i += 1;
        } else {
            return Some(x.clone());
        }
    }
    None
}

/// Exhaustive search for a decomposition of `x` into `n` points drawn from
/// the sorted list `s1` (with repetition, non-decreasing order). Returns the
/// first decomposition found or `None`.
pub fn decompose_exhaustive(x: &[i64], n: usize, s1: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    fn rec(
        target: &mut Vec<i64>,
        n: usize,
        s1: &[Vec<i64>],
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if n == 0 {
            return target.iter().all(|&c| c == 0);
        }
        for i in start..s1.len() {
            for (t, v) in target.iter_mut().zip(&s1[i]) {
                *t -= v;
            }
            chosen.push(i);
            if rec(target, n - 1, s1, i, chosen) {
                return true;
            }
            chosen.pop();
            for (t, v) in target.iter_mut().zip(&s1[i]) {
                *t += v;
            }
        }
        false
    }
    let mut target = x.to_vec();
    let mut chosen = Vec::new();
    if rec(&mut target, n, s1, 0, &mut chosen) {
        Some(chosen.into_iter().map(|i| s1[i].clone()).collect())
    } else {
        None
    }
}

/// The non-decomposability witness built from a vertex-disjoint odd-cycle
/// pair: the relabeled deletion copy `Q`, its `Omega`, the point `x`, and
/// the dilation `N = k + l + 1`.
#[derive(Debug, Clone)]
pub struct OddPairWitness {
    pub relabeling: Vec<usize>,
    pub q: LatticePolytope,
    pub omega: LatticePolytope,
    pub point: Vec<i64>,
    pub dilation: usize,
}

/// Builds the witness point showing `Omega` of the edge-polytope copy is not
/// normal when the graph has two vertex-disjoint odd cycles.
///
/// The pair is normalized by relabeling: the first cycle becomes `1..=2k+1`
/// in cycle order, the second `2k+2..=2k+2l+2`, and the copy deletes the
/// incidence column of vertex `2k+2l+2`. The witness is the sum of the first
/// cycle's vertex indicators minus the second's (short of the deleted
/// vertex), lifted with level `k - l`; it lies in `(k+l+1) * Omega` but has
/// no decomposition into `k+l+1` lattice points.
pub fn omega_non_idp_witness(
    g: &Graph,
    pair: &OddCyclePair,
) -> Result<OddPairWitness, LatticeError> {
    validate_cycle(g, &pair.cycle1)?;
    validate_cycle(g, &pair.cycle2)?;
    if !pair.is_vertex_disjoint() {
        return Err(LatticeError::InvalidPair(
            "cycles share a vertex".to_string(),
        ));
    }
    if g.bipartite_decomposition().c0() != 0 {
        return Err(LatticeError::InvalidPair(
            "graph has bipartite components; the deletion copy is not full-dimensional"
                .to_string(),
        ));
    }
    let n = g.n();
    let k = (pair.cycle1.len() - 1) / 2;
    let l = (pair.cycle2.len() - 1) / 2;

    // relabel: cycle1 -> 1..=2k+1, cycle2 -> 2k+2..=2k+2l+2, rest ascending
    let mut relabeling = vec![0usize; n + 1];
    let mut next = 1;
    for &v in pair.cycle1.iter().chain(&pair.cycle2) {
        relabeling[v] = next;
        next += 1;
    }
    for v in 1..=n {
        if relabeling[v] == 0 {
            relabeling[v] = next;
            next += 1;
        }
    }
    let relabeled = g.relabeled(&relabeling);

    // deletion copy: incidence rows with the column of vertex 2k+2l+2 removed
    let deleted = 2 * k + 2 * l + 1; // 0-based column
    let vertices: Vec<Vec<BigInt>> = relabeled
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![BigInt::zero(); n];
            row[u - 1] = BigInt::one();
            row[v - 1] = BigInt::one();
            row.remove(deleted);
            row
        })
        .collect();
    let q = LatticePolytope::from_known_vertices(n - 1, vertices);
    debug_assert!(q.is_full_dimensional());
    let omega = crate::polytope::omega(&q, &q).expect("deletion copy is full-dimensional");

    let mut point = vec![0i64; n];
    for c in 0..=2 * k {
        point[c] = 1;
    }
    for c in 2 * k + 1..=2 * k + 2 * l {
        point[c] = -1;
    }
    point[n - 1] = k as i64 - l as i64;

    Ok(OddPairWitness {
        relabeling,
        q,
        omega,
        point,
        dilation: k + l + 1,
    })
}

fn validate_cycle(g: &Graph, cycle: &[usize]) -> Result<(), LatticeError> {
    if cycle.len() < 3 || cycle.len() % 2 == 0 {
        return Err(LatticeError::InvalidPair(format!(
            "cycle length {} is not odd and at least 3",
            cycle.len()
        )));
    }
    let mut seen = vec![false; g.n() + 1];
    for &v in cycle {
        if v < 1 || v > g.n() || seen[v] {
            return Err(LatticeError::InvalidPair(format!(
                "vertex {v} repeated or out of range"
            )));
        }
        seen[v] = true;
    }
    for i in 0..cycle.len() {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        if !g.has_edge(u, v) {
            return Err(LatticeError::InvalidPair(format!(
                "missing cycle edge {{{u}, {v}}}"
            )));
        }
    }
    Ok(())
}
