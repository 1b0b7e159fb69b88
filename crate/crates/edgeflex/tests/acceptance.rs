//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The exhaustive small-graph corpus (all connected graphs on up to six
//! vertices) is computed once and shared; independent brute-force oracles
//! live in this file and never call the code paths they check.

use edgeflex::dual::{dual_polytope, facet_enumeration, reflexivity_certificate, HRepresentation};
use edgeflex::graphs::{connected_graphs, generate, parse_edge_list, Graph, GraphFamily};
use edgeflex::intlin::{reduce_type_matrix, IntegerMatrix};
use edgeflex::lattice::{
    decompose_exhaustive, idp_check, lattice_points, omega_non_idp_witness, IdpOptions,
};
use edgeflex::polytope::{
    edge_polytope, full_dimensional_copy, omega, omega_self, verify_unimodular_copy,
    LatticePolytope,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::OnceLock;

const CYCLE_CAP: usize = 100_000;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

// ---------------------------------------------------------------- corpus

struct CorpusItem {
    n: usize,
    id: String,
    dims_agree: bool,
    copy_verified: bool,
    reflexive: bool,
    facet_embedding: bool,
    two_disjoint: bool,
    ohsugi_hibi: bool,
    idp_q: bool,
    idp_omega: bool,
}

fn analyze_graph(id: String, g: &Graph) -> CorpusItem {
    let decomp = g.bipartite_decomposition();
    let dim_formula = g.n() as i64 - decomp.c0() as i64 - 1;
    let dim_rank = g.incidence_matrix().rank() as i64 - 1;
    let copy = full_dimensional_copy(g).expect("connected graphs are never mixed");
    let om = omega_self(&copy.copy).expect("copy is full-dimensional");
    let cert = reflexivity_certificate(&om).expect("omega is full-dimensional");
    let d = copy.copy.ambient_dim();
    let lift: Vec<BigInt> = (0..=d)
        .map(|i| if i == d { BigInt::one() } else { BigInt::zero() })
        .collect();
    let facet_embedding = cert
        .hrep
        .facets()
        .iter()
        .any(|f| f.normal == lift && f.rhs.is_one());
    let pair = g.two_disjoint_odd_cycles(CYCLE_CAP).expect("within cap");
    let unbridged = g.ohsugi_hibi_criterion(CYCLE_CAP).expect("connected");
    let opts = IdpOptions::default();
    let idp_q = idp_check(&copy.copy, &opts)
        .unwrap_or_else(|e| panic!("{id}: idp of copy failed: {e}"))
        .holds;
    let idp_omega = idp_check(&om, &opts)
        .unwrap_or_else(|e| panic!("{id}: idp of carrier failed: {e}"))
        .holds;
    // the degree-1 layer of the carrier must match its structural form
    let q_points = lattice_points(&facet_enumeration(&copy.copy).unwrap(), 1).unwrap();
    let om_points = lattice_points(&cert.hrep, 1).unwrap();
    let mut layer: Vec<Vec<i64>> = Vec::with_capacity(2 * q_points.len() + 1);
    for p in &q_points.points {
        let mut up = p.clone();
        up.push(1);
        layer.push(up);
        let mut down: Vec<i64> = p.iter().map(|x| -x).collect();
        down.push(-1);
        layer.push(down);
    }
    layer.push(vec![0; om.ambient_dim()]);
    layer.sort_unstable();
    layer.dedup();
    assert_eq!(layer, om_points.points, "{id}: degree-1 layer is not structural");
    CorpusItem {
        n: g.n(),
        id,
        dims_agree: dim_formula == dim_rank,
        copy_verified: verify_unimodular_copy(&copy),
        reflexive: cert.verdict && cert.unique_interior_origin != Some(false),
        facet_embedding,
        two_disjoint: pair.is_some(),
        ohsugi_hibi: unbridged.is_none(),
        idp_q,
        idp_omega,
    }
}

fn corpus() -> &'static Vec<CorpusItem> {
    static CORPUS: OnceLock<Vec<CorpusItem>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let graphs: Vec<(String, Graph)> = (2..=6)
            .flat_map(|n| {
                connected_graphs(n)
                    .enumerate()
                    .map(move |(i, g)| (format!("connected({n}):{i}"), g))
            })
            .collect();
        graphs
            .par_iter()
            .map(|(id, g)| analyze_graph(id.clone(), g))
            .collect()
    })
}

fn sampled_connected(n: usize, p: f64, count: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut attempt = 0u64;
    while out.len() < count {
        let g = generate(&GraphFamily::Random {
            n,
            p,
            seed: seed.wrapping_add(attempt),
        })
        .expect("sampling produces a valid graph eventually");
        attempt += 1;
        assert!(attempt < 100_000, "sampling stalled");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

// ------------------------------------------------- independent facet oracle

fn minor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * minor_det(&sub);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn affine_rank(points: &[&Vec<BigInt>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let d = points[0].len();
    let rows = points.len() - 1;
    let mut entries = Vec::with_capacity(rows * d);
    for p in &points[1..] {
        for j in 0..d {
            entries.push(&p[j] - &points[0][j]);
        }
    }
    IntegerMatrix::new(rows, d, entries).unwrap().rank()
}

/// Brute-force facet oracle: every d-subset of vertices spans a candidate
/// hyperplane; keep the supporting ones whose tight set has affine rank d-1.
fn facets_by_subset_oracle(p: &LatticePolytope) -> BTreeSet<(Vec<BigInt>, BigRational)> {
    let d = p.ambient_dim();
    let verts = p.vertices();
    let mut found = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let pts: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &verts[i]).collect();
        if let Some((normal, rhs)) = hyperplane_through(&pts, d) {
            for (a, b) in [(normal.clone(), rhs.clone()), (neg(&normal), -rhs)] {
                let vals: Vec<BigInt> = verts
                    .iter()
                    .map(|v| a.iter().zip(v).map(|(x, y)| x * y).sum())
                    .collect();
                if vals.iter().all(|v| v <= &b) {
                    let tight: Vec<&Vec<BigInt>> = verts
                        .iter()
                        .zip(&vals)
                        .filter(|(_, v)| **v == b)
                        .map(|(p, _)| p)
                        .collect();
                    if d >= 1 && affine_rank(&tight) == d - 1 {
                        let g = gcd_of(&a);
                        let normal: Vec<BigInt> = a.iter().map(|x| x / &g).collect();
                        found.insert((normal, BigRational::new(b.clone(), g.clone())));
                    }
                }
            }
        }
        // next d-subset
        let mut i = d;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if subset[i] + (d - i) < verts.len() {
                subset[i] += 1;
                for k in i + 1..d {
                    subset[k] = subset[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x.clone()).collect()
}

fn gcd_of(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

fn hyperplane_through(pts: &[&Vec<BigInt>], d: usize) -> Option<(Vec<BigInt>, BigInt)> {
    let base = pts[0];
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| (0..d).map(|j| &p[j] - &base[j]).collect())
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let sub: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let c = minor_det(&sub);
        normal.push(if j % 2 == 0 { c } else { -c });
    }
    if normal.iter().all(|x| x.is_zero()) {
        return None;
    }
    let rhs = normal.iter().zip(base.iter()).map(|(a, x)| a * x).sum();
    Some((normal, rhs))
}

fn hrep_as_set(h: &HRepresentation) -> BTreeSet<(Vec<BigInt>, BigRational)> {
    h.facets()
        .iter()
        .map(|f| (f.normal.clone(), f.rhs.clone()))
        .collect()
}

// ---------------------------------------------------------------- criteria

/// Criterion 1: the six-vertex worked example is reproduced bit-exactly.
#[test]
fn golden_six_vertex_example() {
    let g = parse_edge_list("6 5\n1 3\n3 4\n4 5\n1 5\n2 6\n").unwrap();
    let a = g.incidence_matrix();
    let a_expect = IntegerMatrix::from_rows(&[
        vec![1, 0, 1, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 1, 1, 0],
        vec![1, 0, 0, 0, 1, 0],
        vec![0, 1, 0, 0, 0, 1],
    ]);
    assert_eq!(a, a_expect, "incidence matrix mismatch");

    let copy = full_dimensional_copy(&g).unwrap();
    let u_expect = IntegerMatrix::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 1, 0],
        vec![1, 0, 0, 0, 0, 1],
    ]);
    let v_expect = IntegerMatrix::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 1, 0, 1, 0],
        vec![0, 0, 1, 0, 0, 1],
    ]);
    assert_eq!(copy.factor_u, u_expect, "first transform factor mismatch");
    assert_eq!(
        copy.factor_v.as_ref().expect("bipartite case"),
        &v_expect,
        "second transform factor mismatch"
    );
    assert_eq!(
        copy.copy.vertices(),
        &[
            big(&[0, 0, 0]),
            big(&[1, 0, 0]),
            big(&[1, 1, 0]),
            big(&[0, 1, 0]),
            big(&[0, 0, 1]),
        ],
        "copy vertices mismatch"
    );
    assert_eq!(copy.copy.intrinsic_dim(), 3);
    assert_eq!(edge_polytope(&g).intrinsic_dim(), 3);
    assert!(verify_unimodular_copy(&copy));
    println!("[PASS] criterion 1: six-vertex example reproduced exactly");
}

/// Criterion 2: carriers of all connected graphs with 3 <= n <= 6 (plus a
/// sampled corpus at n = 7) are certified reflexive, with the copy embedded
/// as a facet.
#[test]
fn all_small_connected_carriers_reflexive() {
    let items = corpus();
    let checked: Vec<&CorpusItem> = items.iter().filter(|i| i.n >= 3).collect();
    assert_eq!(
        checked.len(),
        4 + 38 + 728 + 26704,
        "connected graph counts on 3..=6 vertices"
    );
    for item in &checked {
        assert!(
            item.reflexive && item.dims_agree && item.copy_verified && item.facet_embedding,
            "{} failed certification",
            item.id
        );
    }
    let sampled = sampled_connected(7, 0.4, 150, 2026);
    sampled.par_iter().enumerate().for_each(|(i, g)| {
        let copy = full_dimensional_copy(g).unwrap();
        let om = omega_self(&copy.copy).unwrap();
        let cert = reflexivity_certificate(&om).unwrap();
        assert!(cert.verdict, "sampled n=7 graph {i} not reflexive");
    });
    println!(
        "[PASS] criterion 2: {} exhaustive + {} sampled carriers all reflexive",
        checked.len(),
        sampled.len()
    );
}

/// Criterion 3: 100 random pairs with vertices in {0, e_i, e_i + e_j},
/// filtered to an interior origin, are all reflexive.
#[test]
fn random_zero_one_two_pairs_reflexive() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut passed = 0usize;
    let mut attempts = 0usize;
    while passed < 100 {
        attempts += 1;
        assert!(attempts < 100_000, "pair sampling stalled");
        let d = rng.gen_range(1..=6);
        let (Some(p), Some(q)) = (sample_012_polytope(&mut rng, d), sample_012_polytope(&mut rng, d))
        else {
            continue;
        };
        let om = omega(&p, &q).unwrap();
        let cert = reflexivity_certificate(&om).unwrap();
        if !cert.origin_interior {
            continue;
        }
        assert!(
            cert.verdict,
            "interior-origin pair in dimension {d} not reflexive: P={:?} Q={:?}",
            p.vertices(),
            q.vertices()
        );
        passed += 1;
    }
    println!("[PASS] criterion 3: 100 interior-origin pairs all reflexive ({attempts} sampled)");
}

fn sample_012_polytope(rng: &mut ChaCha8Rng, d: usize) -> Option<LatticePolytope> {
    let mut candidates: Vec<Vec<i64>> = vec![vec![0; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        candidates.push(e);
    }
    for i in 0..d {
        for j in i..d {
            let mut e = vec![0; d];
            e[i] += 1;
            e[j] += 1;
            candidates.push(e);
        }
    }
    let points: Vec<Vec<BigInt>> = candidates
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|v| big(&v))
        .collect();
    if points.is_empty() {
        return None;
    }
    let p = LatticePolytope::from_points(d, points).ok()?;
    p.is_full_dimensional().then_some(p)
}

/// Criterion 4: 200 random type matrices reduce with a replayable trace;
/// the determinant and half-inverse laws hold exactly.
#[test]
fn type_matrix_reduction_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 200 {
        attempts += 1;
        assert!(attempts < 100_000, "matrix sampling stalled");
        let d = rng.gen_range(1..=8);
        let a = random_type_matrix(&mut rng, d);
        let det = a.determinant().unwrap();
        if det.is_zero() {
            continue;
        }
        let r = reduce_type_matrix(&a).unwrap_or_else(|e| panic!("reduction failed: {e} on {a:?}"));
        assert!(r.verify(&a), "trace replay mismatch for {a:?}");
        assert_eq!(
            det.abs(),
            BigInt::from(2).pow((d - r.ones()) as u32),
            "determinant law failed for {a:?}"
        );
        assert!(
            a.half_inverse_is_integral().unwrap(),
            "half-inverse not integral for {a:?}"
        );
        done += 1;
    }
    println!("[PASS] criterion 4: 200 type matrices reduced, replayed, and determinant-checked");
}

fn random_type_matrix(rng: &mut ChaCha8Rng, d: usize) -> IntegerMatrix {
    let mut rows = Vec::with_capacity(d);
    for _ in 0..d {
        let mut row = vec![0i64; d];
        row[d - 1] = 1;
        if d > 1 {
            match rng.gen_range(0..4) {
                0 if d > 2 => {
                    let j1 = rng.gen_range(0..d - 1);
                    let mut j2 = rng.gen_range(0..d - 1);
                    while j2 == j1 {
                        j2 = rng.gen_range(0..d - 1);
                    }
                    row[j1] = 1;
                    row[j2] = 1;
                }
                0 | 1 => row[rng.gen_range(0..d - 1)] = 1,
                2 => row[rng.gen_range(0..d - 1)] = 2,
                _ => {}
            }
        }
        rows.push(row);
    }
    IntegerMatrix::from_rows(&rows)
}

/// Criterion 5: the carrier of a connected graph has the integer
/// decomposition property exactly when the graph has no two vertex-disjoint
/// odd cycles; the dumbbell witness is reproduced and non-decomposable.
#[test]
fn idp_of_carrier_matches_disjoint_odd_cycles() {
    for item in corpus() {
        assert_eq!(
            item.idp_omega, !item.two_disjoint,
            "{}: carrier idp vs disjoint odd cycles",
            item.id
        );
    }

    // curated extras: dumbbells, K5, and sampled connected K7 subgraphs
    let mut extras: Vec<(String, Graph)> = vec![
        ("dumbbell(1,1)".into(), generate(&GraphFamily::Dumbbell(1, 1)).unwrap()),
        ("dumbbell(2,1)".into(), generate(&GraphFamily::Dumbbell(2, 1)).unwrap()),
        ("complete(5)".into(), generate(&GraphFamily::Complete(5)).unwrap()),
        ("complete(7)".into(), generate(&GraphFamily::Complete(7)).unwrap()),
    ];
    for (i, g) in sampled_connected(7, 0.5, 8, 409).into_iter().enumerate() {
        extras.push((format!("k7-subgraph:{i}"), g));
    }
    extras.par_iter().for_each(|(id, g)| {
        let copy = full_dimensional_copy(g).unwrap();
        let om = omega_self(&copy.copy).unwrap();
        let report = idp_check(&om, &IdpOptions::default()).unwrap();
        let pair = g.two_disjoint_odd_cycles(CYCLE_CAP).unwrap();
        assert_eq!(report.holds, pair.is_none(), "{id}: criterion mismatch");
    });

    // the dumbbell(1,1) witness, verified by exhaustive search
    let g = generate(&GraphFamily::Dumbbell(1, 1)).unwrap();
    let pair = g.two_disjoint_odd_cycles(CYCLE_CAP).unwrap().unwrap();
    let w = omega_non_idp_witness(&g, &pair).unwrap();
    assert_eq!(w.point, vec![1, 1, 1, -1, -1, 0]);
    assert_eq!(w.dilation, 3);
    let h = facet_enumeration(&w.omega).unwrap();
    assert!(h.contains_dilated(&big(&w.point), &BigInt::from(3)));
    let s1 = lattice_points(&h, 1).unwrap();
    assert_eq!(s1.len(), 15);
    assert!(
        decompose_exhaustive(&w.point, 3, &s1.points).is_none(),
        "witness unexpectedly decomposes"
    );
    println!(
        "[PASS] criterion 5: carrier idp matches the disjoint-odd-cycle criterion on {} + {} graphs; dumbbell witness verified",
        corpus().len(),
        12
    );
}

/// Criterion 6: the edge-polytope copy has the integer decomposition
/// property exactly when every disjoint odd-cycle pair is bridged.
#[test]
fn idp_of_edge_polytope_matches_bridged_criterion() {
    for item in corpus() {
        assert_eq!(
            item.idp_q, item.ohsugi_hibi,
            "{}: edge polytope idp vs bridged-pair criterion",
            item.id
        );
    }
    println!(
        "[PASS] criterion 6: edge-polytope idp matches the bridged-pair criterion on {} graphs",
        corpus().len()
    );
}

/// Criterion 7: on 500 random graphs the dimension formula from component
/// counting agrees with the incidence-matrix rank.
#[test]
fn dimension_formula_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0usize;
    let mut seed = 0u64;
    while done < 500 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.15..0.9);
        seed += 1;
        let Ok(g) = generate(&GraphFamily::Random { n, p, seed }) else {
            continue;
        };
        let c0 = g.bipartite_decomposition().c0();
        let lhs = g.n() as i64 - c0 as i64 - 1;
        let rhs = g.incidence_matrix().rank() as i64 - 1;
        assert_eq!(lhs, rhs, "dimension formulas disagree on {:?}", g.edges());
        assert_eq!(
            edge_polytope(&g).intrinsic_dim() as i64,
            lhs,
            "polytope dimension disagrees on {:?}",
            g.edges()
        );
        done += 1;
    }
    println!("[PASS] criterion 7: dimension formula confirmed on 500 random graphs");
}

/// Criterion 8: applying the dual twice returns the original vertex set on
/// 50 certified-reflexive instances.
#[test]
fn dual_involution_on_certified_instances() {
    let mut instances: Vec<LatticePolytope> = Vec::new();
    // cross-polytopes and scaled boxes in dimensions 2 and 3
    instances.push(
        LatticePolytope::from_points(2, vec![big(&[1, 0]), big(&[-1, 0]), big(&[0, 1]), big(&[0, -1])])
            .unwrap(),
    );
    instances.push(
        LatticePolytope::from_points(
            2,
            vec![big(&[1, 1]), big(&[1, -1]), big(&[-1, 1]), big(&[-1, -1])],
        )
        .unwrap(),
    );
    instances.push(
        LatticePolytope::from_points(
            3,
            vec![
                big(&[1, 0, 0]),
                big(&[-1, 0, 0]),
                big(&[0, 1, 0]),
                big(&[0, -1, 0]),
                big(&[0, 0, 1]),
                big(&[0, 0, -1]),
            ],
        )
        .unwrap(),
    );
    // carriers of small connected graphs
    for n in 3..=5 {
        for g in connected_graphs(n) {
            if instances.len() >= 50 {
                break;
            }
            let copy = full_dimensional_copy(&g).unwrap();
            instances.push(omega_self(&copy.copy).unwrap());
        }
    }
    assert_eq!(instances.len(), 50);
    instances.par_iter().enumerate().for_each(|(i, p)| {
        let dual = dual_polytope(p).unwrap_or_else(|e| panic!("instance {i} not reflexive: {e}"));
        let back = dual_polytope(&dual).unwrap_or_else(|e| panic!("dual {i} not reflexive: {e}"));
        let orig: BTreeSet<Vec<BigInt>> = p.vertices().iter().cloned().collect();
        let round: BTreeSet<Vec<BigInt>> = back.vertices().iter().cloned().collect();
        assert_eq!(orig, round, "involution failed on instance {i}");
    });
    println!("[PASS] criterion 8: dual involution verified on 50 reflexive instances");
}

/// Criterion 9: double description agrees with the subset brute-force
/// oracle on every corpus instance with at most 12 vertices in dimension at
/// most 4.
#[test]
fn facet_enumeration_matches_subset_oracle() {
    let mut instances: Vec<(String, LatticePolytope)> = Vec::new();
    instances.push((
        "unit-square".into(),
        LatticePolytope::from_points(2, vec![big(&[0, 0]), big(&[1, 0]), big(&[0, 1]), big(&[1, 1])])
            .unwrap(),
    ));
    instances.push((
        "simplex-2d".into(),
        LatticePolytope::from_points(2, vec![big(&[0, 0]), big(&[1, 0]), big(&[0, 1])]).unwrap(),
    ));
    instances.push((
        "cross-4d".into(),
        LatticePolytope::from_points(
            4,
            (0..4)
                .flat_map(|i| {
                    let mut a = vec![0i64; 4];
                    a[i] = 1;
                    let mut b = vec![0i64; 4];
                    b[i] = -1;
                    [big(&a), big(&b)]
                })
                .collect(),
        )
        .unwrap(),
    ));
    for n in 3..=4 {
        for (i, g) in connected_graphs(n).enumerate() {
            let copy = full_dimensional_copy(&g).unwrap();
            let om = omega_self(&copy.copy).unwrap();
            if om.vertex_count() <= 12 && om.ambient_dim() <= 4 {
                instances.push((format!("carrier({n}):{i}"), om));
            }
            if copy.copy.ambient_dim() >= 1 {
                instances.push((format!("copy({n}):{i}"), copy.copy));
            }
        }
    }
    // random 0/1 polytopes in dimensions 2..4
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut added = 0;
    while added < 20 {
        let d = rng.gen_range(2..=4);
        let count = rng.gen_range(d + 1..=8);
        let points: Vec<Vec<BigInt>> = (0..count)
            .map(|_| big(&(0..d).map(|_| rng.gen_range(0..=1)).collect::<Vec<i64>>()))
            .collect();
        let Ok(p) = LatticePolytope::from_points(d, points) else {
            continue;
        };
        if p.is_full_dimensional() && p.vertex_count() <= 12 {
            instances.push((format!("random-01:{added}"), p));
            added += 1;
        }
    }

    let count = instances.len();
    instances.par_iter().for_each(|(id, p)| {
        assert!(p.vertex_count() <= 12 && p.ambient_dim() <= 4, "{id} out of range");
        let dd = facet_enumeration(p).unwrap_or_else(|e| panic!("{id}: {e}"));
        let oracle = facets_by_subset_oracle(p);
        assert_eq!(hrep_as_set(&dd), oracle, "{id}: facet sets differ");
    });
    println!("[PASS] criterion 9: double description matches the subset oracle on {count} instances");
}
