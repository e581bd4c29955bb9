//! The vertex-labelling characterization of split comparability graphs.
//!
//! A split graph is transitively orientable exactly when its clique can be
//! labelled `1..k` so that every independent vertex sees a prefix `[1,r]`,
//! a suffix `[l,k]`, or a prefix-plus-suffix `[1,m] ∪ [n,k]` of the labels,
//! subject to four pairwise compatibility properties. This module derives
//! classifications from labellings, verifies the properties, searches for a
//! labelling directly, and rebuilds a transitive orientation from a valid
//! labelling (the constructive converse).

use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::graph::Graph;
use crate::orientation::{find_transitive_orientation, verify_transitive, Orientation};
use crate::split::SplitGraph;

/// A bijection from clique vertices to labels `1..k`, stored as the vertex
/// sequence `c1..ck` (so `order[i]` carries label `i+1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueLabelling {
    order: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("labelling is not a bijection on the clique")]
    InvalidLabelling,
    #[error("vertex {vertex} has neighborhood labels {labels:?}: not a prefix, suffix, or prefix∪suffix")]
    NotLabellable { vertex: usize, labels: Vec<usize> },
    #[error("classification parameters out of range for vertex {0}")]
    BadClassParams(usize),
    #[error("labelling properties violated: {0:?}")]
    PropertiesViolated(Vec<Violation>),
}

impl CliqueLabelling {
    pub fn new(order: Vec<usize>) -> Result<CliqueLabelling, LabelError> {
        let mut seen = 0u64;
        for &v in &order {
            if v >= 64 || bits::contains(seen, v) {
                return Err(LabelError::InvalidLabelling);
            }
            seen |= bits::bit(v);
        }
        Ok(CliqueLabelling { order })
    }

    pub fn k(&self) -> usize {
        self.order.len()
    }

    /// The sequence `c1..ck` of old vertex ids.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 1-based label of `v`, if `v` is in the clique.
    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.order.iter().position(|&c| c == v).map(|p| p + 1)
    }

    /// Old id carrying label `i` (1-based).
    pub fn vertex_with_label(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    fn covers(&self, clique: u64) -> bool {
        self.order.len() == clique.count_ones() as usize
            && self.order.iter().all(|&v| bits::contains(clique, v))
    }
}

/// Class of an independent vertex under a clique labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum IClass {
    /// `N(a) = [1,m] ∪ [n,k]`, `m < n`.
    A1 { m: usize, n: usize },
    /// `N(a) = [1,r]`, `r < k`.
    A2 { r: usize },
    /// `N(a) = [l,k]`, `l > 1`.
    A3 { l: usize },
}

/// Per-vertex classes for the non-isolated independent vertices, plus the
/// threshold `d = max(1, max{m_a : a ∈ A1})` used by the word construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IClassification {
    entries: Vec<(usize, IClass)>,
    d: usize,
}

impl IClassification {
    /// Build from explicit entries (sorted by vertex id internally);
    /// validates the per-class parameter ranges against `k`.
    pub fn from_entries(mut entries: Vec<(usize, IClass)>, k: usize) -> Result<Self, LabelError> {
        entries.sort_by_key(|&(v, _)| v);
        for &(v, class) in &entries {
            let ok = match class {
                IClass::A1 { m, n } => 1 <= m && m < n && n <= k,
                IClass::A2 { r } => 1 <= r && r < k,
                IClass::A3 { l } => 1 < l && l <= k,
            };
            if !ok {
                return Err(LabelError::BadClassParams(v));
            }
        }
        let d = entries
            .iter()
            .filter_map(|&(_, c)| match c {
                IClass::A1 { m, .. } => Some(m),
                _ => None,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        Ok(IClassification { entries, d })
    }

    /// `(vertex, class)` pairs sorted by vertex id.
    pub fn entries(&self) -> &[(usize, IClass)] {
        &self.entries
    }

    pub fn class_of(&self, v: usize) -> Option<IClass> {
        self.entries
            .iter()
            .find(|&&(u, _)| u == v)
            .map(|&(_, c)| c)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn a1_mask(&self) -> u64 {
        self.mask(|c| matches!(c, IClass::A1 { .. }))
    }

    pub fn a2_mask(&self) -> u64 {
        self.mask(|c| matches!(c, IClass::A2 { .. }))
    }

    pub fn a3_mask(&self) -> u64 {
        self.mask(|c| matches!(c, IClass::A3 { .. }))
    }

    fn mask(&self, want: fn(&IClass) -> bool) -> u64 {
        self.entries
            .iter()
            .filter(|(_, c)| want(c))
            .map(|&(v, _)| bits::bit(v))
            .sum()
    }
}

/// One failed pairwise property, naming the offending vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    /// A2 against A3: `r < l`.
    II,
    /// A1 against A2: `r < n`.
    III,
    /// A1 against A3: `m < l`.
    IV,
    /// A1 against A1: `m_a < n_b` and `m_b < n_a`.
    V,
}

/// Read each independent vertex's class off its neighborhood labels.
/// Isolated vertices are skipped (their neighborhood fits no form); the
/// word construction places them separately.
pub fn classify(sg: &SplitGraph, lab: &CliqueLabelling) -> Result<IClassification, LabelError> {
    if !lab.covers(sg.clique_mask()) {
        return Err(LabelError::InvalidLabelling);
    }
    let g = sg.graph();
    let k = lab.k();
    let mut entries = Vec::new();
    for a in sg.independent_vertices() {
        let nbrs = g.neighbors(a);
        if nbrs == 0 {
            continue;
        }
        // label set as a bitmask: bit i-1 stands for label i
        let mut label_mask = 0u64;
        for v in bits::iter(nbrs) {
            let label = lab.label_of(v).expect("I-vertex neighbors lie in the clique");
            label_mask |= bits::bit(label - 1);
        }
        let class = parse_label_set(label_mask, k).ok_or_else(|| LabelError::NotLabellable {
            vertex: a,
            labels: bits::iter(label_mask).map(|b| b + 1).collect(),
        })?;
        entries.push((a, class));
    }
    IClassification::from_entries(entries, k)
}

/// Parse a non-empty label set into one of the three admissible forms.
fn parse_label_set(mask: u64, k: usize) -> Option<IClass> {
    debug_assert!(mask != 0 && mask & !bits::full_mask(k) == 0);
    let full = bits::full_mask(k);
    let lo = mask.trailing_zeros() as usize + 1;
    let hi = 64 - mask.leading_zeros() as usize;
    let contiguous = mask == (bits::full_mask(hi) & !bits::full_mask(lo - 1));
    if contiguous {
        assert!(
            !(lo == 1 && hi == k),
            "full clique neighborhood contradicts clique maximality"
        );
        if lo == 1 {
            return Some(IClass::A2 { r: hi });
        }
        if hi == k {
            return Some(IClass::A3 { l: lo });
        }
        return None;
    }
    // prefix-plus-suffix: [1,m] ∪ [n,k] with nothing in between
    if lo != 1 || hi != k {
        return None;
    }
    let m = (mask + 1).trailing_zeros() as usize; // length of the initial run
    let n = 64 - (!mask & full).leading_zeros() as usize + 1; // first label after the gap
    let expected = bits::full_mask(m) | (full & !bits::full_mask(n - 1));
    (mask == expected).then_some(IClass::A1 { m, n })
}

/// Check properties (ii)–(v) pairwise; empty result means the labelling is
/// valid. Property (i) is `classify` succeeding.
pub fn verify_properties(cls: &IClassification, k: usize) -> Vec<Violation> {
    debug_assert!(cls.entries().iter().all(|&(_, c)| match c {
        IClass::A1 { n, .. } => n <= k,
        IClass::A2 { r } => r < k,
        IClass::A3 { l } => l <= k,
    }));
    let mut violations = Vec::new();
    let entries = cls.entries();
    for (i, &(a, ca)) in entries.iter().enumerate() {
        for &(b, cb) in &entries[i + 1..] {
            check_pair(a, ca, b, cb, &mut violations);
        }
    }
    violations
}

fn check_pair(a: usize, ca: IClass, b: usize, cb: IClass, out: &mut Vec<Violation>) {
    use IClass::*;
    match (ca, cb) {
        (A2 { r }, A3 { l }) | (A3 { l }, A2 { r }) => {
            if r >= l {
                let (a2, a3) = if matches!(ca, A2 { .. }) { (a, b) } else { (b, a) };
                out.push(Violation { property: Property::II, a: a2, b: a3 });
            }
        }
        (A1 { n, .. }, A2 { r }) | (A2 { r }, A1 { n, .. }) => {
            if r >= n {
                let (a1, a2) = if matches!(ca, A1 { .. }) { (a, b) } else { (b, a) };
                out.push(Violation { property: Property::III, a: a1, b: a2 });
            }
        }
        (A1 { m, .. }, A3 { l }) | (A3 { l }, A1 { m, .. }) => {
            if m >= l {
                let (a1, a3) = if matches!(ca, A1 { .. }) { (a, b) } else { (b, a) };
                out.push(Violation { property: Property::IV, a: a1, b: a3 });
            }
        }
        (A1 { m: ma, n: na }, A1 { m: mb, n: nb }) if ma >= nb || mb >= na => {
            out.push(Violation { property: Property::V, a, b });
        }
        _ => {}
    }
}

/// Search for a clique labelling satisfying the characterization.
///
/// Backtracks over clique positions with interval-consistency pruning and
/// returns the lexicographically least valid order `c1..ck` (by old ids),
/// or `None` when the graph is not a comparability graph. An empty result
/// is cross-checked against the orientation search.
pub fn find_labelling(sg: &SplitGraph) -> Option<(CliqueLabelling, IClassification)> {
    let g = sg.graph();
    let clique = sg.clique_vertices();
    let k = clique.len();
    let ivs: Vec<usize> = sg
        .independent_vertices()
        .into_iter()
        .filter(|&a| g.neighbors(a) != 0)
        .collect();

    struct Search<'a> {
        g: &'a Graph,
        sg: &'a SplitGraph,
        clique: &'a [usize],
        ivs: &'a [usize],
        k: usize,
        order: Vec<usize>,
        used: u64,
        result: Option<(CliqueLabelling, IClassification)>,
    }

    impl Search<'_> {
        fn rec(&mut self) -> bool {
            if self.order.len() == self.k {
                let lab = CliqueLabelling::new(self.order.clone()).unwrap();
                if let Ok(cls) = classify(self.sg, &lab) {
                    if verify_properties(&cls, self.k).is_empty() {
                        self.result = Some((lab, cls));
                        return true;
                    }
                }
                return false;
            }
            for &v in self.clique {
                if bits::contains(self.used, v) {
                    continue;
                }
                self.order.push(v);
                self.used |= bits::bit(v);
                if self.consistent() && self.rec() {
                    return true;
                }
                self.used &= !bits::bit(v);
                self.order.pop();
            }
            false
        }

        /// Necessary condition on the partial assignment: every independent
        /// vertex's assigned-neighbor labels must look like a prefix, a
        /// suffix, or prefix∪suffix of the labelled window, with counts
        /// consistent with some completion.
        fn consistent(&self) -> bool {
            let i = self.order.len();
            for &a in self.ivs {
                let nbrs = self.g.neighbors(a);
                let mut window = 0u64; // bit t-1 = label t assigned to a neighbor
                for (t, &c) in self.order.iter().enumerate() {
                    if bits::contains(nbrs, c) {
                        window |= bits::bit(t);
                    }
                }
                let assigned_nbrs = window.count_ones() as usize;
                let unassigned = self.g.degree(a) - assigned_nbrs;
                if !window_feasible(window, i, self.k, unassigned) {
                    return false;
                }
            }
            true
        }
    }

    let mut s = Search {
        g,
        sg,
        clique: &clique,
        ivs: &ivs,
        k,
        order: Vec::with_capacity(k),
        used: 0,
        result: None,
    };
    s.rec();
    let found = s.result;
    if found.is_none() {
        // the characterization says these must agree; a mismatch is a bug
        assert!(
            find_transitive_orientation(g).is_none(),
            "labelling search failed but a transitive orientation exists"
        );
    }
    found
}

/// Can a window pattern still extend to one of the three neighborhood
/// forms? `window` holds the labels (1-based, bit `t-1`) already assigned
/// to neighbors, `i` labels are assigned so far, and `unassigned` neighbors
/// still await labels `i+1..k`.
fn window_feasible(window: u64, i: usize, k: usize, unassigned: usize) -> bool {
    if window == 0 {
        return true;
    }
    let wfull = bits::full_mask(i);
    if window == wfull {
        // prefix so far; anything can still happen unless the clique is
        // exhausted with a full neighborhood (impossible under maximality)
        return !(unassigned == 0 && i == k);
    }
    let prefix_len = (window + 1).trailing_zeros() as usize;
    let has_suffix = bits::contains(window, i - 1);
    if !has_suffix {
        // must be exactly a prefix: [1,x] with x < i
        window == bits::full_mask(prefix_len)
    } else {
        let suffix_start = 64 - (!window & wfull).leading_zeros() as usize + 1;
        let expected = bits::full_mask(prefix_len) | (wfull & !bits::full_mask(suffix_start - 1));
        if window != expected {
            return false;
        }
        // suffix pinned at [suffix_start, i]: the final form must continue
        // it through k, so every remaining position is a neighbor
        unassigned == k - i
    }
}

/// The constructive converse: orient clique edges along the labelling,
/// point prefixes into each vertex and suffixes out of it, make A2 sinks
/// and A3 sources. The result is transitive whenever the properties hold.
pub fn orientation_from_labelling(
    sg: &SplitGraph,
    lab: &CliqueLabelling,
    cls: &IClassification,
) -> Result<Orientation, LabelError> {
    if !lab.covers(sg.clique_mask()) {
        return Err(LabelError::InvalidLabelling);
    }
    let violations = verify_properties(cls, lab.k());
    if !violations.is_empty() {
        return Err(LabelError::PropertiesViolated(violations));
    }
    let k = lab.k();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            arcs.push((lab.vertex_with_label(i), lab.vertex_with_label(j)));
        }
    }
    for &(a, class) in cls.entries() {
        match class {
            IClass::A1 { m, n } => {
                for i in 1..=m {
                    arcs.push((lab.vertex_with_label(i), a));
                }
                for j in n..=k {
                    arcs.push((a, lab.vertex_with_label(j)));
                }
            }
            IClass::A2 { r } => {
                for i in 1..=r {
                    arcs.push((lab.vertex_with_label(i), a));
                }
            }
            IClass::A3 { l } => {
                for j in l..=k {
                    arcs.push((a, lab.vertex_with_label(j)));
                }
            }
        }
    }
    let d = Orientation::from_arcs(sg.graph().n(), &arcs)
        .expect("construction assigns each edge exactly once");
    debug_assert!(verify_transitive(sg.graph(), &d));
    Ok(d)
}
