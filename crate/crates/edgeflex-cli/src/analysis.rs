//! Per-graph analysis jobs and the report schema.

use edgeflex::dual::{facet_enumeration, reflexivity_certificate};
use edgeflex::graphs::{generate, Graph, GraphFamily};
use edgeflex::lattice::{
    decompose_exhaustive, idp_check, omega_non_idp_witness, Budget, DilationEnumerator,
    IdpOptions,
};
use edgeflex::polytope::{full_dimensional_copy, omega_self, verify_unimodular_copy};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    Certify,
    Normality,
}

#[derive(Debug, Clone)]
pub struct JobOptions {
    pub analysis: Analysis,
    pub n_max: Option<usize>,
    pub cycle_cap: usize,
    pub point_budget: u64,
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub dilation: usize,
    pub point: Vec<i64>,
}

/// One row of the report stream. Every field is present for every item;
/// fields an analysis does not compute stay `null`.
#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub c0: usize,
    /// Dimension of the edge polytope via the component count formula.
    pub dim_components: Option<i64>,
    /// The same dimension via the incidence-matrix rank.
    pub dim_rank: Option<i64>,
    pub reflexive: Option<bool>,
    pub origin_interior: Option<bool>,
    pub all_rhs_one: Option<bool>,
    pub unique_interior_origin: Option<bool>,
    pub facet_count: Option<usize>,
    /// The lifted copy sits as a facet of its reflexive carrier.
    pub facet_embedding: Option<bool>,
    pub reflexive_dimension_bound: Option<usize>,
    pub two_disjoint_odd_cycles: Option<bool>,
    pub disjoint_pair: Option<(Vec<usize>, Vec<usize>)>,
    pub ohsugi_hibi: Option<bool>,
    pub unbridged_pair: Option<(Vec<usize>, Vec<usize>)>,
    pub idp_q: Option<bool>,
    pub idp_q_witness: Option<WitnessReport>,
    pub idp_omega: Option<bool>,
    pub idp_omega_witness: Option<WitnessReport>,
    pub constructed_witness: Option<WitnessReport>,
    /// Set when two independently computed answers disagree; this flags a
    /// defect in the implementation, not in the input.
    pub disagreement: Option<String>,
    pub error: Option<String>,
    pub timing_ms: Option<u64>,
}

impl GraphReport {
    fn new(graph_id: String, g: &Graph) -> Self {
        Self {
            graph_id,
            n: g.n(),
            m: g.m(),
            c0: 0,
            dim_components: None,
            dim_rank: None,
            reflexive: None,
            origin_interior: None,
            all_rhs_one: None,
            unique_interior_origin: None,
            facet_count: None,
            facet_embedding: None,
            reflexive_dimension_bound: None,
            two_disjoint_odd_cycles: None,
            disjoint_pair: None,
            ohsugi_hibi: None,
            unbridged_pair: None,
            idp_q: None,
            idp_q_witness: None,
            idp_omega: None,
            idp_omega_witness: None,
            constructed_witness: None,
            disagreement: None,
            error: None,
            timing_ms: None,
        }
    }

    pub fn from_error(graph_id: String, message: String) -> Self {
        let mut r = Self {
            graph_id,
            n: 0,
            m: 0,
            c0: 0,
            dim_components: None,
            dim_rank: None,
            reflexive: None,
            origin_interior: None,
            all_rhs_one: None,
            unique_interior_origin: None,
            facet_count: None,
            facet_embedding: None,
            reflexive_dimension_bound: None,
            two_disjoint_odd_cycles: None,
            disjoint_pair: None,
            ohsugi_hibi: None,
            unbridged_pair: None,
            idp_q: None,
            idp_q_witness: None,
            idp_omega: None,
            idp_omega_witness: None,
            constructed_witness: None,
            disagreement: None,
            error: None,
            timing_ms: None,
        };
        r.error = Some(message);
        r
    }
}

fn disagree(report: &mut GraphReport, message: impl Into<String>) {
    let message = message.into();
    match &mut report.disagreement {
        Some(existing) => {
            existing.push_str("; ");
            existing.push_str(&message);
        }
        None => report.disagreement = Some(message),
    }
}

/// Runs one analysis job. Errors and disagreements are recorded in the
/// report, never raised.
pub fn analyze(graph_id: String, g: &Graph, opts: &JobOptions) -> GraphReport {
    let start = Instant::now();
    let mut report = GraphReport::new(graph_id, g);
    analyze_certify(g, opts, &mut report);
    if report.error.is_none() && opts.analysis == Analysis::Normality {
        analyze_normality(g, opts, &mut report);
    }
    if opts.timings {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn analyze_certify(g: &Graph, _opts: &JobOptions, report: &mut GraphReport) {
    let decomp = g.bipartite_decomposition();
    report.c0 = decomp.c0();
    let dim_components = g.n() as i64 - decomp.c0() as i64 - 1;
    let dim_rank = g.incidence_matrix().rank() as i64 - 1;
    report.dim_components = Some(dim_components);
    report.dim_rank = Some(dim_rank);
    if dim_components != dim_rank {
        disagree(
            report,
            format!("dimension formula {dim_components} != rank formula {dim_rank}"),
        );
    }

    let copy = match full_dimensional_copy(g) {
        Ok(c) => c,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    if !verify_unimodular_copy(&copy) {
        disagree(report, "unimodular copy failed verification");
    }
    let omega = match omega_self(&copy.copy) {
        Ok(o) => o,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    let cert = match reflexivity_certificate(&omega) {
        Ok(c) => c,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    report.reflexive = Some(cert.verdict);
    report.origin_interior = Some(cert.origin_interior);
    report.all_rhs_one = Some(cert.all_rhs_one);
    report.unique_interior_origin = cert.unique_interior_origin;
    report.facet_count = Some(cert.hrep.facets().len());
    if !cert.verdict {
        disagree(report, "expected a reflexive carrier for the edge polytope");
    }
    if cert.unique_interior_origin == Some(false) {
        disagree(report, "interior lattice point scan contradicts the certificate");
    }

    // the lifted copy must appear among the facets: normal (0,..,0,1), rhs 1
    let d = copy.copy.ambient_dim();
    let lift_normal: Vec<BigInt> = (0..=d)
        .map(|i| if i == d { BigInt::one() } else { BigInt::from(0) })
        .collect();
    let embedded = cert
        .hrep
        .facets()
        .iter()
        .any(|f| f.normal == lift_normal && f.rhs.is_one());
    report.facet_embedding = Some(embedded);
    if !embedded {
        disagree(report, "lifted copy is not a facet of its carrier");
    }
    report.reflexive_dimension_bound = Some(d + 1);
}

fn analyze_normality(g: &Graph, opts: &JobOptions, report: &mut GraphReport) {
    if !g.is_connected() {
        report.error = Some("normality analysis requires a connected graph".into());
        return;
    }
    let pair = match g.two_disjoint_odd_cycles(opts.cycle_cap) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    report.two_disjoint_odd_cycles = Some(pair.is_some());
    report.disjoint_pair = pair
        .as_ref()
        .map(|p| (p.cycle1.clone(), p.cycle2.clone()));
    let unbridged = match g.ohsugi_hibi_criterion(opts.cycle_cap) {
        Ok(u) => u,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    report.ohsugi_hibi = Some(unbridged.is_none());
    report.unbridged_pair = unbridged
        .as_ref()
        .map(|p| (p.cycle1.clone(), p.cycle2.clone()));

    let copy = match full_dimensional_copy(g) {
        Ok(c) => c,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    let idp_opts = IdpOptions {
        n_max: opts.n_max,
        point_budget: opts.point_budget,
    };
    match idp_check(&copy.copy, &idp_opts) {
        Ok(r) => {
            report.idp_q = Some(r.holds);
            report.idp_q_witness = r
                .witness
                .map(|(dilation, point)| WitnessReport { dilation, point });
            if r.holds != (unbridged.is_none()) {
                disagree(
                    report,
                    format!(
                        "edge polytope idp {} but bridged-pair criterion {}",
                        r.holds,
                        unbridged.is_none()
                    ),
                );
            }
        }
        Err(e) => {
            report.error = Some(format!("idp of the copy: {e}"));
            return;
        }
    }

    let omega = match omega_self(&copy.copy) {
        Ok(o) => o,
        Err(e) => {
            report.error = Some(e.to_string());
            return;
        }
    };
    // the degree-1 layer of the carrier has a structural form: the lifted
    // copy points, their negatives, and the origin; cross-check it against
    // generic enumeration
    match structural_layer_agrees(&copy.copy, &omega, opts.point_budget) {
        Ok(true) => {}
        Ok(false) => disagree(report, "carrier degree-1 layer is not structural"),
        Err(e) => {
            report.error = Some(format!("layer cross-check: {e}"));
            return;
        }
    }
    match idp_check(&omega, &idp_opts) {
        Ok(r) => {
            report.idp_omega = Some(r.holds);
            report.idp_omega_witness = r
                .witness
                .map(|(dilation, point)| WitnessReport { dilation, point });
            if r.holds != pair.is_none() {
                disagree(
                    report,
                    format!(
                        "carrier idp {} but disjoint-odd-cycle criterion {}",
                        r.holds,
                        pair.is_none()
                    ),
                );
            }
        }
        Err(e) => {
            report.error = Some(format!("idp of the carrier: {e}"));
            return;
        }
    }

    // when a disjoint pair exists, construct and verify the witness point
    if let Some(pair) = &pair {
        match omega_non_idp_witness(g, pair) {
            Ok(w) => {
                let point_big: Vec<BigInt> = w.point.iter().map(|&x| BigInt::from(x)).collect();
                let member = facet_enumeration(&w.omega)
                    .map(|h| h.contains_dilated(&point_big, &BigInt::from(w.dilation as i64)))
                    .unwrap_or(false);
                if !member {
                    disagree(report, "constructed witness escapes the dilated carrier");
                }
                let decomposable = DilationEnumerator::from_polytope(&w.omega)
                    .ok()
                    .and_then(|en| {
                        let mut budget = Budget::new(opts.point_budget);
                        en.enumerate(1, &mut budget).ok()
                    })
                    .map(|s1| decompose_exhaustive(&w.point, w.dilation, &s1).is_some());
                if decomposable != Some(false) {
                    disagree(report, "constructed witness unexpectedly decomposes");
                }
                report.constructed_witness = Some(WitnessReport {
                    dilation: w.dilation,
                    point: w.point,
                });
            }
            Err(e) => {
                report.error = Some(format!("witness construction: {e}"));
            }
        }
    }
}

/// Compares the enumerated degree-1 layer of the carrier with its structural
/// description built from the copy's own lattice points.
fn structural_layer_agrees(
    q: &edgeflex::polytope::LatticePolytope,
    omega: &edgeflex::polytope::LatticePolytope,
    point_budget: u64,
) -> Result<bool, edgeflex::lattice::LatticeError> {
    let mut budget = Budget::new(point_budget);
    let q_points = DilationEnumerator::from_polytope(q)?.enumerate(1, &mut budget)?;
    let omega_points = DilationEnumerator::from_polytope(omega)?.enumerate(1, &mut budget)?;
    let mut expected: Vec<Vec<i64>> = Vec::with_capacity(2 * q_points.len() + 1);
    for p in &q_points {
        let mut up = p.clone();
        up.push(1);
        expected.push(up);
        let mut down: Vec<i64> = p.iter().map(|x| -x).collect();
        down.push(-1);
        expected.push(down);
    }
    expected.push(vec![0; omega.ambient_dim()]);
    expected.sort_unstable();
    expected.dedup();
    Ok(expected == omega_points)
}

/// Expands a family spec string into `(id, graph)` pairs.
///
/// Accepted forms: `cycle(N)`, `complete(N)`, `complete_bipartite(A,B)`,
/// `dumbbell(K,L)`, `random(N,P,SEED)`, `connected(N)`, `connected_upto(N)`,
/// `random_connected(N,P,COUNT)` (seeded from the run seed).
pub fn expand_family(spec: &str, run_seed: u64) -> Result<Vec<(String, Graph)>, String> {
    let spec = spec.trim();
    let (name, rest) = spec
        .split_once('(')
        .ok_or_else(|| format!("family `{spec}` must be name(args)"))?;
    let args_str = rest
        .strip_suffix(')')
        .ok_or_else(|| format!("family `{spec}` is missing `)`"))?;
    let args: Vec<&str> = if args_str.trim().is_empty() {
        Vec::new()
    } else {
        args_str.split(',').map(|s| s.trim()).collect()
    };
    let int = |i: usize| -> Result<usize, String> {
        args.get(i)
            .ok_or_else(|| format!("family `{spec}`: missing argument {i}"))?
            .parse()
            .map_err(|_| format!("family `{spec}`: bad integer argument {i}"))
    };
    let float = |i: usize| -> Result<f64, String> {
        args.get(i)
            .ok_or_else(|| format!("family `{spec}`: missing argument {i}"))?
            .parse()
            .map_err(|_| format!("family `{spec}`: bad float argument {i}"))
    };
    let single = |family: GraphFamily| -> Result<Vec<(String, Graph)>, String> {
        generate(&family)
            .map(|g| vec![(spec.to_string(), g)])
            .map_err(|e| e.to_string())
    };
    match name {
        "cycle" => single(GraphFamily::Cycle(int(0)?)),
        "complete" => single(GraphFamily::Complete(int(0)?)),
        "complete_bipartite" => single(GraphFamily::CompleteBipartite(int(0)?, int(1)?)),
        "dumbbell" => single(GraphFamily::Dumbbell(int(0)?, int(1)?)),
        "random" => single(GraphFamily::Random {
            n: int(0)?,
            p: float(1)?,
            seed: int(2)? as u64,
        }),
        "connected" => {
            let n = int(0)?;
            if !(2..=7).contains(&n) {
                return Err(format!(
                    "family `{spec}`: exhaustive enumeration supports 2 <= n <= 7"
                ));
            }
            Ok(edgeflex::graphs::connected_graphs(n)
                .enumerate()
                .map(|(i, g)| (format!("connected({n}):{i:06}"), g))
                .collect())
        }
        "connected_upto" => {
            let n = int(0)?;
            if !(2..=7).contains(&n) {
                return Err(format!(
                    "family `{spec}`: exhaustive enumeration supports 2 <= n <= 7"
                ));
            }
            let mut out = Vec::new();
            for k in 2..=n {
                out.extend(
                    edgeflex::graphs::connected_graphs(k)
                        .enumerate()
                        .map(|(i, g)| (format!("connected({k}):{i:06}"), g)),
                );
            }
            Ok(out)
        }
        "random_connected" => {
            let n = int(0)?;
            let p = float(1)?;
            let count = int(2)?;
            let mut out = Vec::new();
            let mut attempt = 0u64;
            while out.len() < count {
                if attempt > 10_000 + 100 * count as u64 {
                    return Err(format!(
                        "family `{spec}`: could not sample {count} connected graphs"
                    ));
                }
                let family = GraphFamily::Random {
                    n,
                    p,
                    seed: run_seed.wrapping_add(attempt),
                };
                attempt += 1;
                if let Ok(g) = generate(&family) {
                    if g.is_connected() {
                        out.push((format!("{spec}:{:06}", out.len()), g));
                    }
                }
            }
            Ok(out)
        }
        _ => Err(format!("unknown family `{name}`")),
    }
}
