//! Undirected simple graphs over dense integer ids, their ingestion formats
//! (edge-list documents and graph6 lines), and induced-subgraph search.
//!
//! Adjacency is stored per vertex as a 64-bit set, so neighborhood
//! comparisons and clique/independence tests are single word operations.
//! The supported scale is `n <= 64`.

use serde::Serialize;
use thiserror::Error;

use crate::bits;

/// Hard cap on vertex count; adjacency rows are single machine words.
pub const MAX_VERTICES: usize = 64;

/// Undirected simple graph on vertices `0..n`. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph too large: {0} vertices (limit {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("vertex {0} out of range for n={1}")]
    OutOfRange(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl Graph {
    pub fn new(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).expect("complete() limited to MAX_VERTICES");
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::OutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::OutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= bits::bit(v);
        self.adj[v] |= bits::bit(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bits::contains(self.adj[u], v)
    }

    /// Neighborhood of `v` as a bitset.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_mask(&self) -> u64 {
        bits::full_mask(self.n)
    }

    /// Edges as `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits::iter(self.adj[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n)
            .map(|v| full & !self.adj[v] & !bits::bit(v))
            .collect();
        Graph { n: self.n, adj }
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    /// Every pair inside `set` adjacent?
    pub fn is_clique(&self, set: u64) -> bool {
        bits::iter(set).all(|v| set & !self.adj[v] & !bits::bit(v) == 0)
    }

    /// No pair inside `set` adjacent?
    pub fn is_independent(&self, set: u64) -> bool {
        bits::iter(set).all(|v| set & self.adj[v] == 0)
    }

    /// Induced subgraph on `keep` (ascending), with vertices renumbered 0..k.
    pub fn induced(&self, keep: u64) -> Graph {
        let verts = bits::to_vec(keep & self.vertex_mask());
        let mut g = Graph::new(verts.len()).unwrap();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// An injective map from pattern vertices to host vertices witnessing an
/// induced-subgraph embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Embedding {
        Embedding { map }
    }

    /// `map()[p]` is the host vertex that pattern vertex `p` goes to.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Re-verify induced-subgraph semantics: pattern edges map to host
    /// edges and pattern non-edges to host non-edges, injectively.
    pub fn is_induced(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n() {
            return false;
        }
        let mut seen = 0u64;
        for &h in &self.map {
            if h >= host.n() || bits::contains(seen, h) {
                return false;
            }
            seen |= bits::bit(h);
        }
        for u in 0..pattern.n() {
            for v in (u + 1)..pattern.n() {
                if pattern.has_edge(u, v) != host.has_edge(self.map[u], self.map[v]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Find an induced copy of `pattern` in `host`.
///
/// Deterministic: pattern vertices are assigned in id order and host
/// candidates tried ascending, so the returned map is the
/// lexicographically least one.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    if pattern.n() > host.n() {
        return None;
    }
    let mut map = Vec::with_capacity(pattern.n());
    if extend(host, pattern, &mut map, 0) {
        Some(Embedding::new(map))
    } else {
        None
    }
}

fn extend(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
    let p = map.len();
    if p == pattern.n() {
        return true;
    }
    'host: for h in 0..host.n() {
        if bits::contains(used, h) || host.degree(h) < pattern.degree(p) {
            continue;
        }
        for (q, &hq) in map.iter().enumerate() {
            if pattern.has_edge(q, p) != host.has_edge(hq, h) {
                continue 'host;
            }
        }
        map.push(h);
        if extend(host, pattern, map, used | bits::bit(h)) {
            return true;
        }
        map.pop();
    }
    false
}

/// Parse the project edge-list document: a line `n=<int>` followed by
/// comma-separated `<u>-<v>` pairs or the literal `(no edges)`. Semicolons
/// act as line separators, so `n=3; 0-1,1-2,0-2` is accepted on one line.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        for segment in raw_line.split(';') {
            let seg = segment.trim();
            if seg.is_empty() {
                continue;
            }
            if let Some(rest) = seg.strip_prefix("n=") {
                if n.is_some() {
                    return Err(ParseError::Malformed {
                        line: line_no,
                        msg: "duplicate n= declaration".into(),
                    });
                }
                let v = rest.trim().parse::<usize>().map_err(|_| ParseError::Malformed {
                    line: line_no,
                    msg: format!("bad vertex count {rest:?}"),
                })?;
                n = Some(v);
                continue;
            }
            if n.is_none() {
                return Err(ParseError::Malformed {
                    line: line_no,
                    msg: "expected n=<int> before edges".into(),
                });
            }
            if seg == "(no edges)" {
                continue;
            }
            for item in seg.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (u, v) = item.split_once('-').ok_or_else(|| ParseError::Malformed {
                    line: line_no,
                    msg: format!("expected <u>-<v>, got {item:?}"),
                })?;
                let pu = u.trim().parse::<usize>().map_err(|_| ParseError::Malformed {
                    line: line_no,
                    msg: format!("bad vertex id {u:?}"),
                })?;
                let pv = v.trim().parse::<usize>().map_err(|_| ParseError::Malformed {
                    line: line_no,
                    msg: format!("bad vertex id {v:?}"),
                })?;
                edges.push((pu, pv));
            }
        }
    }

    let n = n.ok_or(ParseError::Malformed {
        line: 1,
        msg: "missing n=<int> declaration".into(),
    })?;
    Ok(Graph::from_edges(n, &edges)?)
}

/// Serialize a graph as an edge-list document (two lines).
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let body = if edges.is_empty() {
        "(no edges)".to_string()
    } else {
        edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("n={}\n{}\n", g.n(), body)
}

/// Decode one graph6 line (optional `>>graph6<<` header tolerated).
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let mut s = line.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest.trim();
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6("empty line".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::Graph6(format!(
                "character {:?} at byte {} outside 63..126",
                b as char, i
            )));
        }
    }

    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(ParseError::Graph6("8-byte vertex counts unsupported".into()));
        }
        if bytes.len() < 4 {
            return Err(ParseError::Graph6("truncated vertex count".into()));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };

    if n > MAX_VERTICES {
        return Err(ParseError::Graph6(format!("n={n} exceeds limit {MAX_VERTICES}")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(ParseError::Graph6(format!(
            "bad length: {} data bytes, expected {}",
            body.len(),
            need
        )));
    }

    let mut g = Graph::new(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encode as graph6: short form for `n <= 62`, `~`-prefixed otherwise.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut fill = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            fill += 1;
            if fill == 6 {
                out.push(acc + 63);
                acc = 0;
                fill = 0;
            }
        }
    }
    if fill > 0 {
        out.push((acc << (6 - fill)) + 63);
    }
    String::from_utf8(out).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n)
    }

    #[test]
    fn edge_list_k3() {
        let g = parse_edge_list("n=3; 0-1,1-2,0-2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, k(3));
    }

    #[test]
    fn edge_list_edgeless() {
        let g = parse_edge_list("n=2; (no edges)").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_list_b4_document() {
        let g = parse_edge_list("n=7; 0-1,0-2,0-3,0-6,1-2,1-3,1-5,2-3,2-4,2-5,3-4,3-6").unwrap();
        assert!(g.is_clique(0b1111));
        assert_eq!(g.neighbors(4), 0b1100);
        assert_eq!(g.neighbors(5), 0b0110);
        assert_eq!(g.neighbors(6), 0b1001);
    }

    #[test]
    fn edge_list_two_line_form() {
        let g = parse_edge_list("n=3\n0-1,1-2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_collapses_duplicates() {
        let g = parse_edge_list("n=2; 0-1,1-0,0-1").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        match parse_edge_list("n=3\n0-1,2-5") {
            Err(ParseError::Graph(GraphError::OutOfRange(5, 3))) => {}
            other => panic!("expected out-of-range, got {other:?}"),
        }
        match parse_edge_list("n=3\n0-0") {
            Err(ParseError::Graph(GraphError::SelfLoop(0))) => {}
            other => panic!("expected self-loop, got {other:?}"),
        }
        match parse_edge_list("n=3\nnonsense") {
            Err(ParseError::Malformed { line: 2, .. }) => {}
            other => panic!("expected malformed line 2, got {other:?}"),
        }
        match parse_edge_list("0-1") {
            Err(ParseError::Malformed { line: 1, .. }) => {}
            other => panic!("expected missing n=, got {other:?}"),
        }
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(parse_graph6("Bw").unwrap(), k(3));
        assert_eq!(parse_graph6("A?").unwrap(), Graph::new(2).unwrap());
        assert_eq!(parse_graph6("A_").unwrap(), k(2));
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), k(3));
        assert_eq!(encode_graph6(&k(3)), "Bw");
        assert_eq!(encode_graph6(&k(4)), "C~");
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(matches!(parse_graph6("B"), Err(ParseError::Graph6(_))));
        assert!(matches!(parse_graph6("Bww"), Err(ParseError::Graph6(_))));
        assert!(matches!(parse_graph6("B\x20"), Err(ParseError::Graph6(_))));
    }

    /// Independent reference decoder: builds the whole bit string eagerly
    /// instead of indexing bytes, as a cross-check oracle.
    fn reference_decode(s: &str) -> Graph {
        let bytes = s.as_bytes();
        let n = (bytes[0] - 63) as usize;
        let mut bitstr = String::new();
        for &b in &bytes[1..] {
            bitstr.push_str(&format!("{:06b}", b - 63));
        }
        let mut g = Graph::new(n).unwrap();
        let mut pos = 0;
        for j in 1..n {
            for i in 0..j {
                if bitstr.as_bytes()[pos] == b'1' {
                    g.add_edge(i, j).unwrap();
                }
                pos += 1;
            }
        }
        g
    }

    #[test]
    fn graph6_round_trip_exhaustive_n_le_5() {
        for n in 0..=5usize {
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
                let enc = encode_graph6(&g);
                assert_eq!(parse_graph6(&enc).unwrap(), g);
                if n >= 1 {
                    assert_eq!(reference_decode(&enc), g);
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(k(3).complement(), Graph::new(3).unwrap());
        assert_eq!(Graph::new(2).unwrap().complement(), k(2));
        // path a-b-c (0-1-2) complements to the single edge 0-2
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.complement().edges(), vec![(0, 2)]);
    }

    #[test]
    fn complement_involution_exhaustive_n_le_6() {
        for n in 0..=6usize {
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
                assert_eq!(g.complement().complement(), g);
            }
        }
    }

    #[test]
    fn find_induced_examples() {
        let emb = find_induced(&k(3), &k(2)).unwrap();
        assert_eq!(emb.map(), &[0, 1]);
        assert!(emb.is_induced(&k(3), &k(2)));

        // K4 has no non-adjacent pair
        assert!(find_induced(&k(4), &Graph::new(2).unwrap()).is_none());
    }

    fn brute_force_induced(host: &Graph, pattern: &Graph) -> bool {
        fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> bool {
            if map.len() == pattern.n() {
                return Embedding::new(map.clone()).is_induced(host, pattern);
            }
            for h in 0..host.n() {
                if map.contains(&h) {
                    continue;
                }
                map.push(h);
                if rec(host, pattern, map) {
                    return true;
                }
                map.pop();
            }
            false
        }
        // scans all injective maps, no pruning
        rec(host, pattern, &mut Vec::new())
    }

    #[test]
    fn find_induced_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let hn = rng.gen_range(1..=7);
            let pn = rng.gen_range(1..=4.min(hn));
            let mut host = Graph::new(hn).unwrap();
            let mut pat = Graph::new(pn).unwrap();
            for u in 0..hn {
                for v in (u + 1)..hn {
                    if rng.gen_bool(0.5) {
                        host.add_edge(u, v).unwrap();
                    }
                }
            }
            for u in 0..pn {
                for v in (u + 1)..pn {
                    if rng.gen_bool(0.5) {
                        pat.add_edge(u, v).unwrap();
                    }
                }
            }
            let fast = find_induced(&host, &pat);
            assert_eq!(fast.is_some(), brute_force_induced(&host, &pat));
            if let Some(e) = fast {
                assert!(e.is_induced(&host, &pat));
            }
        }
    }
}
