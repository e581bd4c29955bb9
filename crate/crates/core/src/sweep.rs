//! Exhaustive and sampled sweeps over small graphs, running every
//! cross-check the individual modules promise: split recognition against
//! the obstruction scan, the three-way comparability equivalence, the word
//! construction, the prn/dimension bridge, and certificate re-verification.
//! Any single failure aborts the summary with the offending graph as a
//! graph6 reproducer.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::graph::{encode_graph6, Graph};
use crate::labelling::{classify, find_labelling, orientation_from_labelling, verify_properties,
                       IClass};
use crate::orientation::{clique_order, exhaustive_transitive_orientation_exists,
                         find_transitive_orientation, verify_semi_transitive, verify_transitive};
use crate::pipeline::verify_prn_certificate;
use crate::posetdim::{dimension, poset_from_orientation, prn, prn_oracle};
use crate::split::{find_forbidden, find_split_obstruction, normalize_maximal, split_partition,
                   Forbidden, SplitError};
use crate::wordgen::{build_word, restrict, verify_word, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_max: usize,
    pub mode: SweepMode,
    pub seed: u64,
    pub count: usize,
    pub workers: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { n_max: 6, mode: SweepMode::Exhaustive, seed: 42, count: 10000, workers: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub schema: u32,
    pub mode: SweepMode,
    pub n_max: usize,
    pub seed: u64,
    pub graphs: u64,
    pub split: u64,
    pub comparability: u64,
    pub prn_histogram: std::collections::BTreeMap<u8, u64>,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub graph6: String,
    pub detail: String,
}

#[derive(Clone, Default)]
struct Tally {
    graphs: u64,
    split: u64,
    comparability: u64,
    prn: [u64; 3],
    failure: Option<(String, String)>, // (graph6, detail)
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.graphs += other.graphs;
        self.split += other.split;
        self.comparability += other.comparability;
        for i in 0..3 {
            self.prn[i] += other.prn[i];
        }
        // deterministic regardless of worker count: keep the
        // lexicographically least (graph6, detail) reproducer
        self.failure = match (self.failure, other.failure) {
            (None, f) | (f, None) => f,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        self
    }
}

/// Run the sweep and merge per-graph tallies associatively.
pub fn sweep(cfg: &SweepConfig) -> SweepSummary {
    let workers = cfg
        .workers
        .or_else(|| {
            std::env::var("SPLITWORD_WORKERS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool");

    let tally = match cfg.mode {
        SweepMode::Exhaustive => {
            assert!(cfg.n_max <= 6, "exhaustive sweep limited to n_max <= 6");
            pool.install(|| {
                use rayon::prelude::*;
                (1..=cfg.n_max)
                    .flat_map(|n| {
                        let pairs = n * (n - 1) / 2;
                        (0u64..(1 << pairs)).map(move |code| (n, code))
                    })
                    .collect::<Vec<_>>()
                    .par_iter()
                    .map(|&(n, code)| check_graph(&graph_from_code(n, code)))
                    .reduce(Tally::default, Tally::merge)
            })
        }
        SweepMode::Sample => {
            assert!(cfg.n_max <= 10, "sampled sweep limited to n_max <= 10");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut graphs = Vec::with_capacity(cfg.count);
            // B4 rides along deliberately so prn=3 territory is exercised
            if cfg.n_max >= 7 && cfg.count > 0 {
                graphs.push(Forbidden::B4.graph());
            }
            while graphs.len() < cfg.count {
                let n = rng.gen_range(1..=cfg.n_max);
                let edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                graphs.push(Graph::from_edges(n, &edges).unwrap());
            }
            pool.install(|| {
                use rayon::prelude::*;
                graphs
                    .par_iter()
                    .map(check_graph)
                    .reduce(Tally::default, Tally::merge)
            })
        }
    };

    let mut prn_histogram = std::collections::BTreeMap::new();
    for (i, &c) in tally.prn.iter().enumerate() {
        prn_histogram.insert(i as u8 + 1, c);
    }
    SweepSummary {
        schema: crate::pipeline::SCHEMA_VERSION,
        mode: cfg.mode,
        n_max: cfg.n_max,
        seed: cfg.seed,
        graphs: tally.graphs,
        split: tally.split,
        comparability: tally.comparability,
        prn_histogram,
        failures: tally.failure.iter().count() as u64,
        failure: tally.failure.map(|(graph6, detail)| FailureReport { graph6, detail }),
    }
}

pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .enumerate()
        .filter(|(i, _)| code & (1 << i) != 0)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn fail(g: &Graph, detail: impl Into<String>) -> Tally {
    Tally {
        graphs: 1,
        failure: Some((encode_graph6(g), detail.into())),
        ..Default::default()
    }
}

/// All module-level cross-checks for one graph.
fn check_graph(g: &Graph) -> Tally {
    let mut t = Tally { graphs: 1, ..Default::default() };
    if crate::graph::parse_graph6(&encode_graph6(g)).as_ref() != Ok(g) {
        return fail(g, "graph6 does not round-trip");
    }
    let obstruction = find_split_obstruction(g);

    let sg = match split_partition(g) {
        Err(SplitError::NotSplit { name, certificate }) => {
            if obstruction.is_none() {
                return fail(g, "degree test says non-split but no obstruction found");
            }
            if !certificate.is_induced(g, &name.graph()) {
                return fail(g, "NotSplit certificate does not re-verify");
            }
            return t;
        }
        Err(e) => return fail(g, format!("split_partition internal error: {e}")),
        Ok(sg) => sg,
    };
    t.split = 1;

    if obstruction.is_some() {
        return fail(g, "split partition found despite an induced 2K2/C4/C5");
    }
    if !sg.graph().is_clique(sg.clique_mask()) || !sg.graph().is_independent(sg.independent_mask())
    {
        return fail(g, "split partition invariants violated");
    }
    match normalize_maximal(g, sg.clique_mask(), sg.independent_mask()) {
        Ok(again) if again.clique_mask() == sg.clique_mask() => {}
        _ => return fail(g, "normalize_maximal is not idempotent on a canonical partition"),
    }

    // three-way equivalence: labelling <=> orientation <=> B1/B2/B3-free
    let lab_result = find_labelling(&sg);
    let ori_result = find_transitive_orientation(g);
    let forb = find_forbidden(g, &Forbidden::COMPARABILITY_OBSTRUCTIONS);
    if lab_result.is_some() != ori_result.is_some() {
        return fail(g, "labelling and orientation searches disagree");
    }
    if lab_result.is_some() != forb.is_none() {
        return fail(g, "labelling search and forbidden-subgraph scan disagree");
    }
    if g.edge_count() <= 15 && ori_result.is_some() != exhaustive_transitive_orientation_exists(g)
    {
        return fail(g, "orientation search disagrees with the 2^|E| oracle");
    }

    let Some((lab, cls)) = lab_result else {
        return t;
    };
    let ori = ori_result.expect("equivalence checked above");
    t.comparability = 1;

    // forward direction: any transitive orientation's clique order yields a
    // valid labelling
    let Ok(seq) = clique_order(&sg, &ori) else {
        return fail(g, "clique_order rejected a found transitive orientation");
    };
    match crate::labelling::CliqueLabelling::new(seq) {
        Ok(derived) => match classify(&sg, &derived) {
            Ok(derived_cls) => {
                if !verify_properties(&derived_cls, lab.k()).is_empty() {
                    return fail(g, "orientation-derived labelling violates properties");
                }
                if let Some(v) = interval_separation_violation(&derived_cls) {
                    return fail(g, v);
                }
            }
            Err(e) => return fail(g, format!("orientation-derived labelling unclassifiable: {e}")),
        },
        Err(e) => return fail(g, format!("clique_order returned a bad sequence: {e}")),
    }

    if !verify_semi_transitive(g, &ori) {
        return fail(g, "transitive orientation fails the semi-transitivity verifier");
    }

    // converse direction: labelling rebuilds a transitive orientation
    let d = match orientation_from_labelling(&sg, &lab, &cls) {
        Ok(d) => d,
        Err(e) => return fail(g, format!("orientation_from_labelling failed: {e}")),
    };
    if !verify_transitive(g, &d) {
        return fail(g, "constructed orientation is not transitive");
    }
    if let Some(v) = interval_separation_violation(&cls) {
        return fail(g, v);
    }

    // word construction and verification
    let (q1, q2, q3) = match build_word(&sg, &lab, &cls) {
        Ok(ws) => ws,
        Err(e) => return fail(g, format!("build_word failed: {e}")),
    };
    let z = Word::concat(&[&q1, &q2, &q3]);
    match verify_word(&sg, &lab, &q1, &q2, &q3, &z) {
        Ok(checks) if checks.all_pass() => {}
        Ok(checks) => return fail(g, format!("word checks failed: {checks:?}")),
        Err(e) => return fail(g, format!("word verification error: {e}")),
    }
    let triple: Vec<usize> = lab.order().iter().copied().cycle().take(3 * lab.k()).collect();
    if restrict(&z, sg.clique_mask()).letters() != triple {
        return fail(g, "z restricted to the clique is not the repeated clique order");
    }

    // prn, certificates, and the dimension bridge
    let res = match prn(g) {
        Ok(res) => res,
        Err(e) => return fail(g, format!("prn failed on a split comparability graph: {e}")),
    };
    if !verify_prn_certificate(g, &res) {
        return fail(g, "prn certificate does not re-verify");
    }
    if !(1..=3).contains(&res.value) {
        return fail(g, format!("prn value {} out of range", res.value));
    }
    t.prn[res.value as usize - 1] = 1;

    if g.n() <= 9 {
        let p = match poset_from_orientation(&d) {
            Ok(p) => p,
            Err(e) => return fail(g, format!("induced poset rejected: {e}")),
        };
        match dimension(&p, 3) {
            Ok(dim) => {
                if dim != res.value as usize {
                    return fail(g, format!("dimension {dim} != prn {}", res.value));
                }
            }
            Err(e) => return fail(g, format!("dimension search failed: {e}")),
        }
    }

    if g.n() <= 5 {
        let mut min_k = None;
        for k in 1..=3 {
            if prn_oracle(g, k).unwrap_or(false) {
                min_k = Some(k);
                break;
            }
        }
        if min_k != Some(res.value as usize) {
            return fail(g, format!("prn oracle min-k {min_k:?} != prn {}", res.value));
        }
    }

    t
}

/// The two arithmetic consequences of the characterization, checked on
/// every valid classification: A2 and A3 intervals are disjoint, and every
/// A1 prefix stays below every A3 start.
fn interval_separation_violation(cls: &crate::labelling::IClassification) -> Option<String> {
    let max_r = cls.entries().iter().filter_map(|&(_, c)| match c {
        IClass::A2 { r } => Some(r),
        _ => None,
    }).max();
    let min_l = cls.entries().iter().filter_map(|&(_, c)| match c {
        IClass::A3 { l } => Some(l),
        _ => None,
    }).min();
    let max_m = cls.entries().iter().filter_map(|&(_, c)| match c {
        IClass::A1 { m, .. } => Some(m),
        _ => None,
    }).max();
    if let (Some(r), Some(l)) = (max_r, min_l) {
        if r >= l {
            return Some(format!("A2/A3 intervals intersect: r={r} >= l={l}"));
        }
    }
    if let (Some(m), Some(l)) = (max_m, min_l) {
        if m >= l {
            return Some(format!("max m_a = {m} not below min l_a = {l}"));
        }
    }
    Some(cls.d()).filter(|&d| min_l.is_some_and(|l| d >= l))
        .map(|d| format!("d = {d} not below min l_a = {}", min_l.unwrap()))
}
