//! Split-graph recognition and normalization, plus the four-member forbidden
//! family that governs permutation/comparability status of split graphs.
//!
//! Recognition uses the degree-sequence threshold test: with degrees sorted
//! descending and `h = max{i : d_i >= i-1}`, the graph is split exactly when
//! `sum_{i<=h} d_i = h(h-1) + sum_{i>h} d_i`, and then any `h` vertices of
//! largest degree form a clique with the rest independent. Among all valid
//! maximal-clique partitions we pick the lexicographically least clique so
//! that downstream certificates are reproducible.

use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::graph::{find_induced, Embedding, Graph};

/// A graph together with a validated partition into a clique `C` and an
/// independent set `I`, with `C` inclusion-wise maximal (no vertex of `I`
/// is adjacent to all of `C`).
#[derive(Clone, Debug)]
pub struct SplitGraph {
    g: Graph,
    clique: u64,
    independent: u64,
}

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("not a split graph: contains an induced {name}")]
    NotSplit { name: SplitObstruction, certificate: Embedding },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// The three forbidden configurations characterizing split graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitObstruction {
    #[serde(rename = "2K2")]
    TwoK2,
    C4,
    C5,
}

impl SplitObstruction {
    pub fn name(self) -> &'static str {
        match self {
            SplitObstruction::TwoK2 => "2K2",
            SplitObstruction::C4 => "C4",
            SplitObstruction::C5 => "C5",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            SplitObstruction::TwoK2 => Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
            SplitObstruction::C4 => {
                Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
            }
            SplitObstruction::C5 => {
                Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
            }
        }
    }
}

impl std::fmt::Display for SplitObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl SplitGraph {
    /// Build from explicit parts, checking every invariant including
    /// maximality of the clique.
    pub fn from_parts(g: Graph, clique: u64, independent: u64) -> Result<SplitGraph, SplitError> {
        check_partition(&g, clique, independent)?;
        for v in bits::iter(independent) {
            if g.neighbors(v) & clique == clique {
                return Err(SplitError::InvalidPartition(format!(
                    "clique not maximal: vertex {v} is adjacent to all of C"
                )));
            }
        }
        Ok(SplitGraph { g, clique, independent })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn clique_mask(&self) -> u64 {
        self.clique
    }

    pub fn independent_mask(&self) -> u64 {
        self.independent
    }

    /// Clique vertices, ascending.
    pub fn clique_vertices(&self) -> Vec<usize> {
        bits::to_vec(self.clique)
    }

    /// Independent vertices, ascending.
    pub fn independent_vertices(&self) -> Vec<usize> {
        bits::to_vec(self.independent)
    }

    pub fn clique_size(&self) -> usize {
        self.clique.count_ones() as usize
    }
}

fn check_partition(g: &Graph, clique: u64, independent: u64) -> Result<(), SplitError> {
    if clique & independent != 0 {
        return Err(SplitError::InvalidPartition("C and I overlap".into()));
    }
    if clique | independent != g.vertex_mask() {
        return Err(SplitError::InvalidPartition("C and I do not cover V".into()));
    }
    if !g.is_clique(clique) {
        return Err(SplitError::InvalidPartition("C is not a clique".into()));
    }
    if !g.is_independent(independent) {
        return Err(SplitError::InvalidPartition("I is not independent".into()));
    }
    Ok(())
}

/// Locate an induced 2K2, C4, or C5 (tried in that order). Present in every
/// non-split graph.
pub fn find_split_obstruction(g: &Graph) -> Option<(SplitObstruction, Embedding)> {
    for ob in [SplitObstruction::TwoK2, SplitObstruction::C4, SplitObstruction::C5] {
        if let Some(emb) = find_induced(g, &ob.graph()) {
            return Some((ob, emb));
        }
    }
    None
}

/// Recognize a split graph and return the canonical partition: the
/// lexicographically least maximal clique among all valid partitions.
pub fn split_partition(g: &Graph) -> Result<SplitGraph, SplitError> {
    let n = g.n();
    if n == 0 {
        return SplitGraph::from_parts(g.clone(), 0, 0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg = |i: usize| g.degree(order[i]);

    let mut h = 0;
    for i in 1..=n {
        if deg(i - 1) >= i - 1 {
            h = i;
        } else {
            break;
        }
    }
    let top_sum: usize = (0..h).map(deg).sum();
    let rest_sum: usize = (h..n).map(deg).sum();
    if top_sum != h * (h - 1) + rest_sum {
        let (name, certificate) = find_split_obstruction(g)
            .expect("degree test says non-split, so an obstruction must exist");
        return Err(SplitError::NotSplit { name, certificate });
    }

    let base: u64 = order[..h].iter().map(|&v| bits::bit(v)).sum();
    debug_assert!(g.is_clique(base) && g.is_independent(g.vertex_mask() & !base));

    // Any valid maximal clique differs from the maximum clique `base` by at
    // most one swapped vertex, so enumerating swaps finds them all.
    let mut best: Option<Vec<usize>> = None;
    let mut consider = |mask: u64| {
        let rest = g.vertex_mask() & !mask;
        if !g.is_clique(mask) || !g.is_independent(rest) {
            return;
        }
        if bits::iter(rest).any(|v| g.neighbors(v) & mask == mask) {
            return;
        }
        let verts = bits::to_vec(mask);
        if best.as_ref().is_none_or(|b| verts < *b) {
            best = Some(verts);
        }
    };
    consider(base);
    for x in bits::iter(base) {
        for y in bits::iter(g.vertex_mask() & !base) {
            consider(base & !bits::bit(x) | bits::bit(y));
        }
    }

    let clique: u64 = best
        .expect("the maximum clique itself is always a valid partition")
        .iter()
        .map(|&v| bits::bit(v))
        .sum();
    SplitGraph::from_parts(g.clone(), clique, g.vertex_mask() & !clique)
}

/// Restore clique maximality: repeatedly move the smallest-id vertex of `I`
/// that is adjacent to all of `C` into `C`.
pub fn normalize_maximal(
    g: &Graph,
    clique: u64,
    independent: u64,
) -> Result<SplitGraph, SplitError> {
    check_partition(g, clique, independent)?;
    let (mut c, mut i) = (clique, independent);
    while let Some(v) = bits::iter(i).find(|&v| g.neighbors(v) & c == c) {
        c |= bits::bit(v);
        i &= !bits::bit(v);
        // cannot fail when the input invariants hold; checked anyway
        check_partition(g, c, i)?;
    }
    SplitGraph::from_parts(g.clone(), c, i)
}

/// The family of forbidden induced subgraphs for split permutation graphs.
/// `B1`, `B2`, `B3` obstruct comparability; `B4` is the unique comparability
/// member and pins the permutation-representation number at three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Forbidden {
    B1,
    B2,
    B3,
    B4,
}

impl Forbidden {
    pub const ALL: [Forbidden; 4] =
        [Forbidden::B1, Forbidden::B2, Forbidden::B3, Forbidden::B4];

    /// The members whose presence refutes transitive orientability.
    pub const COMPARABILITY_OBSTRUCTIONS: [Forbidden; 3] =
        [Forbidden::B1, Forbidden::B2, Forbidden::B3];

    pub fn name(self) -> &'static str {
        match self {
            Forbidden::B1 => "B1",
            Forbidden::B2 => "B2",
            Forbidden::B3 => "B3",
            Forbidden::B4 => "B4",
        }
    }

    /// Canonical numbering: clique vertices first, then independent ones.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            // net: triangle 0,1,2 with pendants 3,4,5
            Forbidden::B1 => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)],
            // 3-sun: triangle 0,1,2; outer 3~{0,1}, 4~{1,2}, 5~{0,2}
            Forbidden::B2 => {
                &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)]
            }
            // triangle 0,1,2; pendants 3~0, 4~1; 5~{0,2}, 6~{1,2}
            Forbidden::B3 => {
                &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (0, 5), (2, 5), (1, 6), (2, 6)]
            }
            // K4 on 0..3; 4~{2,3}, 5~{1,2}, 6~{0,3}
            Forbidden::B4 => &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 4),
                (1, 5),
                (2, 5),
                (0, 6),
                (3, 6),
            ],
        }
    }

    pub fn graph(self) -> Graph {
        let n = match self {
            Forbidden::B1 | Forbidden::B2 => 6,
            Forbidden::B3 | Forbidden::B4 => 7,
        };
        Graph::from_edges(n, self.edges()).unwrap()
    }
}

impl std::fmt::Display for Forbidden {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Scan for the first family member (order B1, B2, B3, B4, restricted to
/// `which`) with an induced embedding in `g`.
pub fn find_forbidden(g: &Graph, which: &[Forbidden]) -> Option<(Forbidden, Embedding)> {
    for member in Forbidden::ALL {
        if !which.contains(&member) {
            continue;
        }
        if let Some(emb) = find_induced(g, &member.graph()) {
            return Some((member, emb));
        }
    }
    None
}
