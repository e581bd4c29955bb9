//! Edge orientations: transitivity and semi-transitivity verifiers, a
//! forcing-based search for transitive orientations, and extraction of the
//! clique's linear order from a transitive orientation of a split graph.

use thiserror::Error;

use crate::bits;
use crate::graph::Graph;
use crate::split::SplitGraph;

/// A direction for every edge of some graph; at most one arc per pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    out: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("arc ({0},{1}) invalid: {2}")]
    BadArc(usize, usize, &'static str),
    #[error("orientation is not transitive")]
    NotTransitive,
}

impl Orientation {
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Orientation, OrientationError> {
        let mut out = vec![0u64; n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(OrientationError::BadArc(u, v, "vertex out of range"));
            }
            if u == v {
                return Err(OrientationError::BadArc(u, v, "self-loop"));
            }
            if bits::contains(out[v], u) {
                return Err(OrientationError::BadArc(u, v, "edge oriented both ways"));
            }
            if bits::contains(out[u], v) {
                return Err(OrientationError::BadArc(u, v, "duplicate arc"));
            }
            out[u] |= bits::bit(v);
        }
        Ok(Orientation { n, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bits::contains(self.out[u], v)
    }

    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    pub fn in_mask(&self, v: usize) -> u64 {
        let mut m = 0;
        for u in 0..self.n {
            if bits::contains(self.out[u], v) {
                m |= bits::bit(u);
            }
        }
        m
    }

    /// Arcs as ordered pairs, ascending lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits::iter(self.out[u]).map(move |v| (u, v)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Does this orientation direct exactly the edges of `g`?
    pub fn orients(&self, g: &Graph) -> bool {
        if self.n != g.n() {
            return false;
        }
        (0..self.n).all(|v| {
            let around = self.out[v] | self.in_mask(v);
            around == g.neighbors(v) && self.out[v] & self.in_mask(v) == 0
        })
    }

    /// All arcs reversed.
    pub fn reversed(&self) -> Orientation {
        let mut out = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bits::iter(self.out[u]) {
                out[v] |= bits::bit(u);
            }
        }
        Orientation { n: self.n, out }
    }
}

/// True iff for all arcs `a->b`, `b->c` the arc `a->c` is present.
pub fn verify_transitive(g: &Graph, d: &Orientation) -> bool {
    assert!(d.orients(g), "orientation does not match the graph's edges");
    for a in 0..g.n() {
        for b in bits::iter(d.out_mask(a)) {
            if d.out_mask(b) & !d.out_mask(a) != 0 {
                return false;
            }
        }
    }
    true
}

/// True iff `d` is acyclic and shortcut-free: no directed path
/// `a1 -> ... -> ak` whose endpoints are adjacent while some inner pair
/// `a_i, a_j` is not.
///
/// Paths are not enumerated. A shortcut over the arc `u -> v` exists iff
/// some non-adjacent pair `x, y` satisfies `u =>* x`, `x => y`, `y =>* v`
/// (segments of a directed walk in a DAG never overlap, so they splice
/// into one simple path), which reduces the check to reachability sets.
pub fn verify_semi_transitive(g: &Graph, d: &Orientation) -> bool {
    assert!(d.orients(g), "orientation does not match the graph's edges");
    let n = g.n();
    let Some(topo) = topo_order(n, |v| d.out_mask(v)) else {
        return false;
    };

    // reach[v] = strictly after v, coreach[v] = strictly before v
    let mut reach = vec![0u64; n];
    for &v in topo.iter().rev() {
        let mut r = d.out_mask(v);
        for w in bits::iter(d.out_mask(v)) {
            r |= reach[w];
        }
        reach[v] = r;
    }
    let mut coreach = vec![0u64; n];
    for &v in topo.iter() {
        let mut r = 0;
        for u in bits::iter(d.in_mask(v)) {
            r |= bits::bit(u) | coreach[u];
        }
        coreach[v] = r;
    }

    for u in 0..n {
        for v in bits::iter(d.out_mask(u)) {
            let sources = reach[u] | bits::bit(u);
            let sinks = coreach[v] | bits::bit(v);
            for x in bits::iter(sources) {
                let non_neighbors = g.vertex_mask() & !g.neighbors(x) & !bits::bit(x);
                if reach[x] & sinks & non_neighbors != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn topo_order(n: usize, out: impl Fn(usize) -> u64) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for u in 0..n {
        for v in bits::iter(out(u)) {
            indeg[v] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::BinaryHeap::new();
    for v in (0..n).filter(|&v| indeg[v] == 0) {
        queue.push(std::cmp::Reverse(v));
    }
    while let Some(std::cmp::Reverse(v)) = queue.pop() {
        order.push(v);
        for w in bits::iter(out(v)) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(std::cmp::Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Topological order with smallest-id tie-break.
pub fn topological_order(d: &Orientation) -> Option<Vec<usize>> {
    topo_order(d.n(), |v| d.out_mask(v))
}

/// Search for a transitive orientation: orient edges in ascending order,
/// low id to high id first, propagating forced directions through the
/// transitivity closure rule and backtracking on conflict. Returns the
/// deterministic first solution, or `None` when the graph is not a
/// comparability graph.
pub fn find_transitive_orientation(g: &Graph) -> Option<Orientation> {
    let edges = g.edges();
    let m = edges.len();
    let mut eidx = std::collections::HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        eidx.insert((u, v), i);
    }

    struct Search<'a> {
        g: &'a Graph,
        edges: &'a [(usize, usize)],
        eidx: &'a std::collections::HashMap<(usize, usize), usize>,
        // 0 unassigned, 1 forward (low->high), 2 backward
        dir: Vec<u8>,
        out: Vec<u64>,
        inn: Vec<u64>,
        trail: Vec<usize>,
    }

    impl Search<'_> {
        fn arc_of(&self, e: usize, d: u8) -> (usize, usize) {
            let (u, v) = self.edges[e];
            if d == 1 { (u, v) } else { (v, u) }
        }

        fn dir_for(&self, a: usize, b: usize) -> (usize, u8) {
            if a < b {
                (self.eidx[&(a, b)], 1)
            } else {
                (self.eidx[&(b, a)], 2)
            }
        }

        /// Assign edge `e` direction `d` and propagate; false on conflict.
        fn assign(&mut self, e: usize, d: u8) -> bool {
            let mut pending = vec![(e, d)];
            while let Some((e, d)) = pending.pop() {
                match self.dir[e] {
                    x if x == d => continue,
                    0 => {}
                    _ => return false,
                }
                self.dir[e] = d;
                self.trail.push(e);
                let (a, b) = self.arc_of(e, d);
                self.out[a] |= bits::bit(b);
                self.inn[b] |= bits::bit(a);
                // a->b->c forces a->c; it must be an edge at all
                for c in bits::iter(self.out[b]) {
                    if !self.g.has_edge(a, c) {
                        return false;
                    }
                    pending.push(self.dir_for(a, c));
                }
                // c->a->b forces c->b
                for c in bits::iter(self.inn[a]) {
                    if !self.g.has_edge(c, b) {
                        return false;
                    }
                    pending.push(self.dir_for(c, b));
                }
            }
            true
        }

        fn undo_to(&mut self, checkpoint: usize) {
            while self.trail.len() > checkpoint {
                let e = self.trail.pop().unwrap();
                let (a, b) = self.arc_of(e, self.dir[e]);
                self.out[a] &= !bits::bit(b);
                self.inn[b] &= !bits::bit(a);
                self.dir[e] = 0;
            }
        }

        fn solve(&mut self) -> bool {
            let Some(e) = self.dir.iter().position(|&d| d == 0) else {
                return true;
            };
            for d in [1u8, 2u8] {
                let cp = self.trail.len();
                if self.assign(e, d) && self.solve() {
                    return true;
                }
                self.undo_to(cp);
            }
            false
        }
    }

    let mut s = Search {
        g,
        edges: &edges,
        eidx: &eidx,
        dir: vec![0; m],
        out: vec![0; g.n()],
        inn: vec![0; g.n()],
        trail: Vec::new(),
    };
    if !s.solve() {
        return None;
    }
    let arcs: Vec<(usize, usize)> = (0..m).map(|e| s.arc_of(e, s.dir[e])).collect();
    let d = Orientation::from_arcs(g.n(), &arcs).expect("search produces a valid orientation");
    debug_assert!(verify_transitive(g, &d));
    Some(d)
}

/// Exhaustive oracle: does some orientation of `g` out of all `2^|E|` pass
/// the transitivity verifier? Only sensible for small edge counts.
pub fn exhaustive_transitive_orientation_exists(g: &Graph) -> bool {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 20, "exhaustive orientation oracle limited to 20 edges");
    for code in 0u64..(1 << m) {
        let mut out = vec![0u64; g.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if code & (1 << i) != 0 {
                out[u] |= bits::bit(v);
            } else {
                out[v] |= bits::bit(u);
            }
        }
        let transitive = (0..g.n()).all(|a| {
            bits::iter(out[a]).all(|b| out[b] & !out[a] == 0)
        });
        if transitive {
            return true;
        }
    }
    false
}

/// Every transitive orientation of `g`, via pruned exhaustive search.
/// Intended for small test graphs.
pub fn enumerate_transitive_orientations(g: &Graph) -> Vec<Orientation> {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 20, "orientation enumeration limited to 20 edges");
    let mut found = Vec::new();
    let mut dir = vec![0u8; m];

    fn violates(g: &Graph, edges: &[(usize, usize)], dir: &[u8], e: usize) -> bool {
        // check only triples touching the newly oriented edge
        let arc = |i: usize| -> (usize, usize) {
            let (u, v) = edges[i];
            if dir[i] == 1 { (u, v) } else { (v, u) }
        };
        let (a, b) = arc(e);
        for i in 0..=e {
            if dir[i] == 0 {
                continue;
            }
            let (c, d) = arc(i);
            // a->b, b->d with c==b: need a->d present and oriented
            if c == b && !oriented(g, edges, dir, a, d) {
                return true;
            }
            if d == a && !oriented(g, edges, dir, c, b) {
                return true;
            }
        }
        false
    }

    fn oriented(g: &Graph, edges: &[(usize, usize)], dir: &[u8], x: usize, y: usize) -> bool {
        if !g.has_edge(x, y) {
            return false;
        }
        let (lo, hi, want) = if x < y { (x, y, 1) } else { (y, x, 2) };
        let idx = edges.iter().position(|&e| e == (lo, hi)).unwrap();
        dir[idx] == 0 || dir[idx] == want
    }

    fn rec(
        g: &Graph,
        edges: &[(usize, usize)],
        dir: &mut Vec<u8>,
        e: usize,
        found: &mut Vec<Orientation>,
    ) {
        if e == edges.len() {
            let arcs: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if dir[i] == 1 { (u, v) } else { (v, u) })
                .collect();
            let d = Orientation::from_arcs(g.n(), &arcs).unwrap();
            if verify_transitive(g, &d) {
                found.push(d);
            }
            return;
        }
        for d in [1u8, 2u8] {
            dir[e] = d;
            if !violates(g, edges, dir, e) {
                rec(g, edges, dir, e + 1, found);
            }
        }
        dir[e] = 0;
    }

    rec(g, &edges, &mut dir, 0, &mut found);
    found
}

/// The unique topological order of the clique under a transitive
/// orientation: the longest directed path `c1 -> ... -> ck` in `C`.
pub fn clique_order(sg: &SplitGraph, d: &Orientation) -> Result<Vec<usize>, OrientationError> {
    if !verify_transitive(sg.graph(), d) {
        return Err(OrientationError::NotTransitive);
    }
    let clique = sg.clique_mask();
    let mut verts = bits::to_vec(clique);
    // restriction to a clique is a transitive tournament; sort by
    // out-degree within the clique, descending
    verts.sort_by_key(|&v| std::cmp::Reverse((d.out_mask(v) & clique).count_ones()));
    for w in verts.windows(2) {
        debug_assert!(d.has_arc(w[0], w[1]), "clique restriction must be a linear order");
    }
    Ok(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::{split_partition, Forbidden};

    #[test]
    fn verify_transitive_examples() {
        let k2 = Graph::complete(2);
        let d = Orientation::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(verify_transitive(&k2, &d));

        let k3 = Graph::complete(3);
        let cyc = Orientation::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!verify_transitive(&k3, &cyc));

        // path 0-2, 1-2 oriented toward the middle: nothing composes
        let p3 = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        let sink = Orientation::from_arcs(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(verify_transitive(&p3, &sink));
    }

    #[test]
    fn verify_semi_transitive_examples() {
        let k3 = Graph::complete(3);
        let cyc = Orientation::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!verify_semi_transitive(&k3, &cyc));

        let lin = Orientation::from_arcs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(verify_semi_transitive(&k3, &lin));

        // C4 a->b, b->c, a->d, d->c: acyclic, chord absent, no shortcut
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = Orientation::from_arcs(4, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        assert!(verify_semi_transitive(&c4, &d));
        assert!(!verify_transitive(&c4, &d));
    }

    #[test]
    fn shortcut_is_detected() {
        // path 0->1->2->3 plus edge 0-3 oriented 0->3, missing 0-2 and 1-3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = Orientation::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!verify_semi_transitive(&g, &d));
    }

    #[test]
    fn find_orientation_k3() {
        let d = find_transitive_orientation(&Graph::complete(3)).unwrap();
        assert_eq!(d.arcs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn find_orientation_b4_exists_b1_does_not() {
        let b4 = Forbidden::B4.graph();
        let d = find_transitive_orientation(&b4).expect("B4 is a comparability graph");
        assert!(verify_transitive(&b4, &d));
        assert!(verify_semi_transitive(&b4, &d));

        assert!(find_transitive_orientation(&Forbidden::B1.graph()).is_none());
        assert!(find_transitive_orientation(&Forbidden::B2.graph()).is_none());
        assert!(find_transitive_orientation(&Forbidden::B3.graph()).is_none());
    }

    #[test]
    fn search_agrees_with_exhaustive_oracle_n_le_4() {
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for code in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                assert_eq!(
                    find_transitive_orientation(&g).is_some(),
                    exhaustive_transitive_orientation_exists(&g)
                );
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_graphs() {
        for g in [
            Graph::complete(3),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
            Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
        ] {
            let listed = enumerate_transitive_orientations(&g);
            let edges = g.edges();
            let mut brute = 0;
            for code in 0u32..(1 << edges.len()) {
                let arcs: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| if code & (1 << i) != 0 { (u, v) } else { (v, u) })
                    .collect();
                let d = Orientation::from_arcs(g.n(), &arcs).unwrap();
                if verify_transitive(&g, &d) {
                    brute += 1;
                    assert!(listed.contains(&d));
                }
            }
            assert_eq!(listed.len(), brute);
        }
    }

    #[test]
    fn clique_order_examples() {
        let k3 = Graph::complete(3);
        let sg = split_partition(&k3).unwrap();
        let d = Orientation::from_arcs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(clique_order(&sg, &d).unwrap(), vec![0, 1, 2]);

        let b4 = Forbidden::B4.graph();
        let sgb = split_partition(&b4).unwrap();
        let db = find_transitive_orientation(&b4).unwrap();
        let order = clique_order(&sgb, &db).unwrap();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        for w in order.windows(2) {
            assert!(db.has_arc(w[0], w[1]));
        }

        let k1 = Graph::complete(1);
        let sg1 = split_partition(&k1).unwrap();
        let d1 = Orientation::from_arcs(1, &[]).unwrap();
        assert_eq!(clique_order(&sg1, &d1).unwrap(), vec![0]);
    }

    #[test]
    fn clique_order_rejects_nontransitive() {
        let k3 = Graph::complete(3);
        let sg = split_partition(&k3).unwrap();
        let cyc = Orientation::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(clique_order(&sg, &cyc), Err(OrientationError::NotTransitive));
    }

    /// Literal path-enumerating oracle for the shortcut condition.
    fn dfs_semi_transitive(g: &Graph, d: &Orientation) -> bool {
        fn paths(
            g: &Graph,
            d: &Orientation,
            target: usize,
            path: &mut Vec<usize>,
            found_shortcut: &mut bool,
        ) {
            let u = *path.last().unwrap();
            for w in bits::iter(d.out_mask(u)) {
                if path.contains(&w) {
                    continue;
                }
                if w == target && path.len() >= 2 {
                    let mut full = path.clone();
                    full.push(w);
                    let clique = full
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| full[i + 1..].iter().all(|&y| g.has_edge(x, y)));
                    if !clique {
                        *found_shortcut = true;
                    }
                }
                if w != target {
                    path.push(w);
                    paths(g, d, target, path, found_shortcut);
                    path.pop();
                }
            }
        }

        if topological_order(d).is_none() {
            return false;
        }
        let mut shortcut = false;
        for a in 0..g.n() {
            for b in bits::iter(d.out_mask(a)) {
                paths(g, d, b, &mut vec![a], &mut shortcut);
            }
        }
        !shortcut
    }

    #[test]
    fn reachability_verifier_matches_path_enumeration_n_le_4() {
        for n in 2..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for code in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let gedges = g.edges();
                for orient in 0u32..(1 << gedges.len()) {
                    let arcs: Vec<(usize, usize)> = gedges
                        .iter()
                        .enumerate()
                        .map(|(i, &(u, v))| if orient & (1 << i) != 0 { (u, v) } else { (v, u) })
                        .collect();
                    let d = Orientation::from_arcs(n, &arcs).unwrap();
                    assert_eq!(
                        verify_semi_transitive(&g, &d),
                        dfs_semi_transitive(&g, &d),
                        "g={g:?} arcs={arcs:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn semi_transitive_verifier_is_polynomial_on_transitive_tournaments() {
        // a path-enumerating verifier would explode here
        let n = 16;
        let g = Graph::complete(n);
        let arcs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        let d = Orientation::from_arcs(n, &arcs).unwrap();
        let start = std::time::Instant::now();
        assert!(verify_semi_transitive(&g, &d));
        assert!(start.elapsed().as_millis() < 1000);
    }

    #[test]
    fn transitive_implies_semi_transitive_n_le_4() {
        for n in 2..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for code in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                for d in enumerate_transitive_orientations(&g) {
                    assert!(verify_semi_transitive(&g, &d));
                }
            }
        }
    }
}
