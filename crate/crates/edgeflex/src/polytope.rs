//! Lattice polytopes in vertex representation: edge polytopes, their
//! full-dimensional unimodularly equivalent copies, and the reflexive
//! construction `Omega(P, Q) = conv((P x {1}) u (-Q x {-1}))`.

use crate::graphs::Graph;
use crate::intlin::{in_convex_hull, IntegerMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("point {index} has {got} coordinates, expected {expected}")]
    BadPointLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("polytope needs at least one point")]
    NoPoints,
    #[error(
        "inputs must be full-dimensional of equal dimension \
         (got dim {p_dim} in R^{p_ambient} and dim {q_dim} in R^{q_ambient})"
    )]
    OmegaPrecondition {
        p_ambient: usize,
        p_dim: usize,
        q_ambient: usize,
        q_dim: usize,
    },
    #[error("graph mixes bipartite and non-bipartite components; no constant-coordinate slice exists")]
    MixedComponents,
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// A lattice polytope, stored by its vertex list in `Z^ambient_dim`.
///
/// Construction guarantees the stored points are pairwise distinct true
/// vertices; the intrinsic dimension is computed once and cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<BigInt>>,
    intrinsic_dim: usize,
}

impl LatticePolytope {
    /// Builds the polytope spanned by arbitrary lattice points: duplicates
    /// are dropped and non-vertex points removed by exact convex-position
    /// checks. Surviving vertices keep their first-occurrence order.
    pub fn from_points(
        ambient_dim: usize,
        points: Vec<Vec<BigInt>>,
    ) -> Result<Self, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::NoPoints);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(PolytopeError::BadPointLength {
                    index,
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let mut distinct: Vec<Vec<BigInt>> = Vec::new();
        for p in points {
            if seen.insert(p.clone()) {
                distinct.push(p);
            }
        }
        let vertices: Vec<Vec<BigInt>> = distinct
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let others: Vec<Vec<BigInt>> = distinct
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, q)| q.clone())
                    .collect();
                !in_convex_hull(p, &others)
            })
            .map(|(_, p)| p.clone())
            .collect();
        Ok(Self::from_vertex_list(ambient_dim, vertices))
    }

    /// Internal constructor for point sets already known to be vertex sets
    /// (images of vertex sets under affine isomorphisms, faces, etc.).
    pub(crate) fn from_known_vertices(ambient_dim: usize, vertices: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.iter().all(|v| v.len() == ambient_dim));
        debug_assert_eq!(
            vertices.iter().collect::<BTreeSet<_>>().len(),
            vertices.len(),
            "duplicate vertices"
        );
        Self::from_vertex_list(ambient_dim, vertices)
    }

    fn from_vertex_list(ambient_dim: usize, vertices: Vec<Vec<BigInt>>) -> Self {
        let intrinsic_dim = difference_rank(&vertices);
        Self {
            ambient_dim,
            vertices,
            intrinsic_dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn intrinsic_dim(&self) -> usize {
        self.intrinsic_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.intrinsic_dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Componentwise vertex bounds `(min, max)`, one pair per coordinate.
    pub fn bounding_box(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.ambient_dim)
            .map(|j| {
                let mut lo = self.vertices[0][j].clone();
                let mut hi = lo.clone();
                for v in &self.vertices[1..] {
                    if v[j] < lo {
                        lo = v[j].clone();
                    }
                    if v[j] > hi {
                        hi = v[j].clone();
                    }
                }
                (lo, hi)
            })
            .collect()
    }
}

fn difference_rank(vertices: &[Vec<BigInt>]) -> usize {
    if vertices.len() <= 1 {
        return 0;
    }
    let base = &vertices[0];
    let cols = base.len();
    let rows = vertices.len() - 1;
    let mut entries = Vec::with_capacity(rows * cols);
    for v in &vertices[1..] {
        for j in 0..cols {
            entries.push(&v[j] - &base[j]);
        }
    }
    IntegerMatrix::new(rows, cols, entries)
        .expect("consistent dimensions")
        .rank()
}

/// The edge polytope of a graph: convex hull of `e_u + e_v` over the edges,
/// in the graph's edge order.
pub fn edge_polytope(g: &Graph) -> LatticePolytope {
    let n = g.n();
    let vertices = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut p = vec![BigInt::zero(); n];
            p[u - 1] = BigInt::one();
            p[v - 1] = BigInt::one();
            p
        })
        .collect();
    LatticePolytope::from_known_vertices(n, vertices)
}

/// A full-dimensional unimodularly equivalent copy of a source polytope,
/// together with the affine map that produces it: apply `transform` to a row
/// vector, then delete `deleted_columns` (which are constant at
/// `fixed_coordinates` on the image).
#[derive(Debug, Clone)]
pub struct UnimodularCopy {
    pub source: LatticePolytope,
    pub copy: LatticePolytope,
    pub transform: IntegerMatrix,
    pub deleted_columns: Vec<usize>,
    pub fixed_coordinates: Vec<(usize, BigInt)>,
    /// Normalizing vertex relabeling applied before the transform factors.
    pub relabeling: Vec<usize>,
    /// The two transform factors (row vector times `factor_u`, then times
    /// `factor_v` when present); `transform` is their product with the
    /// relabeling permutation.
    pub factor_u: IntegerMatrix,
    pub factor_v: Option<IntegerMatrix>,
}

/// Builds the full-dimensional copy of the edge polytope prescribed by the
/// bipartite structure of the graph.
///
/// With no bipartite component the transform is the lower-triangular matrix
/// with all-ones first column; the first coordinate of the image is the
/// constant 2. With `k >= 1` bipartite components (and no others), the
/// normalizing relabeling is applied and the two triangular factors built
/// from the bipartitions map the polytope onto `{1}^(k+1) x copy`.
///
/// A graph with both bipartite and non-bipartite components is rejected: an
/// odd cycle admits no integral functional that is 1 on all its edge vectors
/// (parity), so no unimodular transform can make the deleted coordinates
/// constant at 1 alongside the bipartite components.
pub fn full_dimensional_copy(g: &Graph) -> Result<UnimodularCopy, PolytopeError> {
    let n = g.n();
    let decomp = g.bipartite_decomposition();
    let k = decomp.c0();
    if k >= 1 && decomp.components().len() > k {
        return Err(PolytopeError::MixedComponents);
    }
    let source = edge_polytope(g);

    let identity_relabeling: Vec<usize> = (0..=n).collect();
    let (relabeling, factor_u, factor_v, deleted, fixed_value) = if k == 0 {
        let mut u = IntegerMatrix::identity(n);
        for i in 1..n {
            u.set(i, 0, BigInt::one());
        }
        (identity_relabeling, u, None, vec![0], BigInt::from(2))
    } else {
        let relabeling = decomp.relabeling().to_vec();
        let relabeled = decomp.apply_relabeling(g);
        let parts = relabeled.bipartite_decomposition();
        debug_assert!(parts.is_identity_relabeling());
        let in_part = |part: &[usize], v: usize| part.binary_search(&v).is_ok();
        let bip = parts.bipartite_components();
        let mut u = IntegerMatrix::identity(n);
        for (j, (part1, _)) in bip.iter().enumerate() {
            for i in 1..=n {
                if i == j + 1 {
                    continue;
                }
                let in_v2 = bip.iter().any(|(_, p2)| in_part(p2, i));
                if in_part(part1, i) || (in_v2 && !in_part(&bip[j].1, i)) {
                    u.set(i - 1, j, BigInt::one());
                }
            }
        }
        let mut v = IntegerMatrix::identity(n);
        for i in 1..=n {
            if i == k + 1 {
                continue;
            }
            if bip.iter().any(|(_, p2)| in_part(p2, i)) {
                v.set(i - 1, k, BigInt::one());
            }
        }
        (relabeling, u, Some(v), (0..=k).collect(), BigInt::one())
    };

    let permutation = permutation_matrix(n, &relabeling);
    let mut transform = permutation.mul(&factor_u);
    if let Some(v) = &factor_v {
        transform = transform.mul(v);
    }

    let fixed_coordinates: Vec<(usize, BigInt)> = deleted
        .iter()
        .map(|&j| (j, fixed_value.clone()))
        .collect();
    let copy_vertices: Vec<Vec<BigInt>> = source
        .vertices()
        .iter()
        .map(|x| {
            let image = transform.apply_row(x);
            debug_assert!(deleted.iter().all(|&j| image[j] == fixed_value));
            keep_coordinates(&image, &deleted)
        })
        .collect();
    let copy = LatticePolytope::from_known_vertices(n - deleted.len(), copy_vertices);

    Ok(UnimodularCopy {
        source,
        copy,
        transform,
        deleted_columns: deleted,
        fixed_coordinates,
        relabeling,
        factor_u,
        factor_v,
    })
}

fn permutation_matrix(n: usize, relabeling: &[usize]) -> IntegerMatrix {
    let mut p = IntegerMatrix::zero(n, n);
    for old in 1..=n {
        p.set(old - 1, relabeling[old] - 1, BigInt::one());
    }
    p
}

fn keep_coordinates(v: &[BigInt], deleted: &[usize]) -> Vec<BigInt> {
    v.iter()
        .enumerate()
        .filter(|(j, _)| !deleted.contains(j))
        .map(|(_, x)| x.clone())
        .collect()
}

/// Checks a recorded copy: the transform must be unimodular, every source
/// vertex must map onto the paired copy vertex, and the deleted coordinates
/// must be constant at their recorded values.
pub fn verify_unimodular_copy(c: &UnimodularCopy) -> bool {
    if !c.transform.is_square()
        || c.transform.rows() != c.source.ambient_dim()
        || !c.transform.is_unimodular().unwrap_or(false)
    {
        return false;
    }
    if c.source.vertex_count() != c.copy.vertex_count() {
        return false;
    }
    if c.copy.ambient_dim() + c.deleted_columns.len() != c.source.ambient_dim() {
        return false;
    }
    let fixed_ok = c
        .fixed_coordinates
        .iter()
        .map(|(j, _)| *j)
        .collect::<Vec<_>>()
        == c.deleted_columns;
    if !fixed_ok {
        return false;
    }
    for (x, y) in c.source.vertices().iter().zip(c.copy.vertices()) {
        let image = c.transform.apply_row(x);
        for (j, value) in &c.fixed_coordinates {
            if &image[*j] != value {
                return false;
            }
        }
        if keep_coordinates(&image, &c.deleted_columns) != *y {
            return false;
        }
    }
    true
}

/// The reflexive candidate `Omega(P, Q)`: convex hull of `P x {1}` and
/// `-Q x {-1}` one dimension up. Both inputs must be full-dimensional of the
/// same dimension; the result is a `(d+1)`-dimensional polytope whose vertex
/// set is exactly the two lifted vertex sets.
pub fn omega(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope, PolytopeError> {
    if !p.is_full_dimensional() || !q.is_full_dimensional() || p.ambient_dim() != q.ambient_dim() {
        return Err(PolytopeError::OmegaPrecondition {
            p_ambient: p.ambient_dim(),
            p_dim: p.intrinsic_dim(),
            q_ambient: q.ambient_dim(),
            q_dim: q.intrinsic_dim(),
        });
    }
    let d = p.ambient_dim();
    let mut vertices: Vec<Vec<BigInt>> = Vec::with_capacity(p.vertex_count() + q.vertex_count());
    for v in p.vertices() {
        let mut w = v.clone();
        w.push(BigInt::one());
        vertices.push(w);
    }
    for v in q.vertices() {
        let mut w: Vec<BigInt> = v.iter().map(|x| -x.clone()).collect();
        w.push(-BigInt::one());
        vertices.push(w);
    }
    let result = LatticePolytope::from_known_vertices(d + 1, vertices);
    debug_assert_eq!(result.intrinsic_dim(), d + 1);
    Ok(result)
}

/// Shorthand for `omega(p, p)`.
pub fn omega_self(p: &LatticePolytope) -> Result<LatticePolytope, PolytopeError> {
    omega(p, p)
}

/// Parses the polytope text format: first line `m v` (ambient dimension and
/// point count), then `v` lines of `m` integers. Non-vertex points are
/// filtered out exactly.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope, PolytopeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(PolytopeError::Malformed {
        line: 1,
        reason: "missing `m v` header".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(PolytopeError::Malformed {
            line,
            reason: "header must be `m v`".into(),
        });
    }
    let parse_usize = |s: &str, line: usize| -> Result<usize, PolytopeError> {
        s.parse().map_err(|_| PolytopeError::Malformed {
            line,
            reason: format!("invalid integer `{s}`"),
        })
    };
    let m = parse_usize(parts[0], line)?;
    let v = parse_usize(parts[1], line)?;
    let mut points = Vec::with_capacity(v);
    for _ in 0..v {
        let (line, row) = lines.next().ok_or(PolytopeError::Malformed {
            line: 0,
            reason: format!("expected {v} point lines"),
        })?;
        let coords: Result<Vec<BigInt>, _> = row
            .split_whitespace()
            .map(|s| {
                s.parse::<BigInt>().map_err(|_| PolytopeError::Malformed {
                    line,
                    reason: format!("invalid integer `{s}`"),
                })
            })
            .collect();
        let coords = coords?;
        if coords.len() != m {
            return Err(PolytopeError::Malformed {
                line,
                reason: format!("expected {m} coordinates, got {}", coords.len()),
            });
        }
        points.push(coords);
    }
    LatticePolytope::from_points(m, points)
}

/// Writes the polytope text format accepted by [`parse_polytope`].
pub fn write_polytope(p: &LatticePolytope) -> String {
    let mut out = format!("{} {}\n", p.ambient_dim(), p.vertex_count());
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}
