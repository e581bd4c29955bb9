//! Poset dimension by linear-extension enumeration, and the
//! permutation-representation number with machine-checkable certificates.
//!
//! For a comparability graph the prn equals the order dimension of any
//! induced poset, which gives two independent routes to the same number:
//! this module implements both, plus a raw permutation-tuple oracle for
//! tiny graphs.

use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::graph::{Embedding, Graph};
use crate::labelling::find_labelling;
use crate::orientation::{find_transitive_orientation, topological_order, Orientation};
use crate::split::{find_forbidden, split_partition, Forbidden, SplitError, SplitObstruction};
use crate::wordgen::{build_word, represents, Word};

/// A strict partial order on `0..n`; transitivity and irreflexivity are
/// checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    above: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not a strict partial order: {0}")]
    NotTransitive(&'static str),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimensionError {
    #[error("poset too large for linear-extension enumeration: {0} elements (limit 9)")]
    TooLarge(usize),
    #[error("dimension exceeds cap {0}")]
    CapExceeded(usize),
}

impl Poset {
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut above = vec![0u64; n];
        for &(a, b) in relations {
            assert!(a < n && b < n, "relation element out of range");
            above[a] |= bits::bit(b);
        }
        Self::validate(n, &above)?;
        Ok(Poset { n, above })
    }

    fn validate(n: usize, above: &[u64]) -> Result<(), PosetError> {
        for a in 0..n {
            if bits::contains(above[a], a) {
                return Err(PosetError::NotTransitive("relation is reflexive somewhere"));
            }
            for b in bits::iter(above[a]) {
                if bits::contains(above[b], a) {
                    return Err(PosetError::NotTransitive("relation has a 2-cycle"));
                }
                if above[b] & !above[a] != 0 {
                    return Err(PosetError::NotTransitive("relation is not transitive"));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        bits::contains(self.above[a], b)
    }

    /// Unordered incomparable pairs `(a, b)` with `a < b`, ascending.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if !self.lt(a, b) && !self.lt(b, a) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All linear extensions in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut below = vec![0u64; self.n];
        for a in 0..self.n {
            for b in bits::iter(self.above[a]) {
                below[b] |= bits::bit(a);
            }
        }
        let mut out = Vec::new();
        let mut seq = Vec::with_capacity(self.n);
        self.extend_rec(&below, &mut seq, 0, &mut out);
        out
    }

    fn extend_rec(&self, below: &[u64], seq: &mut Vec<usize>, placed: u64, out: &mut Vec<Vec<usize>>) {
        if seq.len() == self.n {
            out.push(seq.clone());
            return;
        }
        for v in 0..self.n {
            if bits::contains(placed, v) || below[v] & !placed != 0 {
                continue;
            }
            seq.push(v);
            self.extend_rec(below, seq, placed | bits::bit(v), out);
            seq.pop();
        }
    }
}

/// The induced poset of a transitive orientation: `a < b` iff the arc
/// `a -> b` exists. Non-edges become incomparable pairs.
pub fn poset_from_orientation(d: &Orientation) -> Result<Poset, PosetError> {
    let above: Vec<u64> = (0..d.n()).map(|v| d.out_mask(v)).collect();
    Poset::validate(d.n(), &above).map_err(|_| PosetError::NotTransitive("orientation"))?;
    Ok(Poset { n: d.n(), above })
}

/// Least `t <= cap` such that `t` linear extensions realize the poset:
/// every incomparable pair appears in both orders among the chosen
/// extensions. Deterministic first solution.
pub fn dimension(p: &Poset, cap: usize) -> Result<usize, DimensionError> {
    Ok(dimension_with_realizer(p, cap)?.0)
}

/// Dimension plus a witnessing realizer (t linear extensions).
pub fn dimension_with_realizer(
    p: &Poset,
    cap: usize,
) -> Result<(usize, Vec<Vec<usize>>), DimensionError> {
    if p.n() > 9 {
        return Err(DimensionError::TooLarge(p.n()));
    }
    let pairs = p.incomparable_pairs();
    let exts = p.linear_extensions();

    if pairs.is_empty() {
        if cap < 1 {
            return Err(DimensionError::CapExceeded(cap));
        }
        return Ok((1, vec![exts[0].clone()]));
    }

    // orientation mask of each extension over the incomparable pairs,
    // deduplicated in first-seen order
    let full: u64 = bits::full_mask(pairs.len());
    let mut masks: Vec<u64> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, ext) in exts.iter().enumerate() {
        let mut pos = vec![0usize; p.n()];
        for (idx, &v) in ext.iter().enumerate() {
            pos[v] = idx;
        }
        let mut mask = 0u64;
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            if pos[a] < pos[b] {
                mask |= bits::bit(pi);
            }
        }
        if seen.insert(mask) {
            masks.push(mask);
            reps.push(i);
        }
    }

    for t in 2..=cap {
        if let Some(choice) = cover_search(&masks, full, t) {
            let realizer = choice.iter().map(|&i| exts[reps[i]].clone()).collect();
            return Ok((t, realizer));
        }
    }
    Err(DimensionError::CapExceeded(cap))
}

/// First (lexicographic by mask index) set of `t` masks whose OR is full
/// and whose AND is empty: every pair reversed somewhere.
fn cover_search(masks: &[u64], full: u64, t: usize) -> Option<Vec<usize>> {
    fn rec(
        masks: &[u64],
        full: u64,
        t: usize,
        start: usize,
        or_acc: u64,
        and_acc: u64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == t {
            return or_acc == full && and_acc == 0;
        }
        let remaining = t - chosen.len();
        for i in start..=masks.len().saturating_sub(remaining) {
            chosen.push(i);
            if rec(masks, full, t, i + 1, or_acc | masks[i], and_acc & masks[i], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(t);
    rec(masks, full, t, 0, 0, u64::MAX, &mut chosen).then_some(chosen)
}

/// Certificate accompanying a prn value; each kind re-verifies.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "certificate_kind", content = "certificate_data")]
pub enum PrnCertificate {
    /// Value 1: complete graphs are exactly the 1-permutation graphs.
    CompleteGraph,
    /// Value 2: a two-block word built from a dimension-2 realizer.
    TwoPermutationWord { q1: Word, q2: Word },
    /// Value 3: an induced B4 plus the verified 3-block word.
    B4Embedding { embedding: Embedding, word: Word },
}

#[derive(Clone, Debug, Serialize)]
pub struct PrnResult {
    pub value: u8,
    #[serde(flatten)]
    pub certificate: PrnCertificate,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrnError {
    #[error("not a split graph: contains an induced {name}")]
    NotSplit { name: SplitObstruction, certificate: Embedding },
    #[error("not a comparability graph: contains an induced {name}")]
    NotComparability { name: Forbidden, certificate: Embedding },
    #[error("graph too large for this operation: n={0}, limit {1}")]
    TooLarge(usize, usize),
}

/// Permutation-representation number of a split comparability graph, with
/// certificate. Complete graphs get 1; B4-free graphs get a verified
/// two-permutation word; graphs containing B4 get the embedding and the
/// 3-uniform word.
pub fn prn(g: &Graph) -> Result<PrnResult, PrnError> {
    let sg = match split_partition(g) {
        Ok(sg) => sg,
        Err(SplitError::NotSplit { name, certificate }) => {
            return Err(PrnError::NotSplit { name, certificate })
        }
        Err(e) => unreachable!("split_partition only fails with NotSplit: {e}"),
    };
    let Some((lab, cls)) = find_labelling(&sg) else {
        let (name, certificate) = find_forbidden(g, &Forbidden::COMPARABILITY_OBSTRUCTIONS)
            .expect("non-comparability split graph contains B1, B2, or B3");
        return Err(PrnError::NotComparability { name, certificate });
    };

    if g.is_complete() {
        return Ok(PrnResult { value: 1, certificate: PrnCertificate::CompleteGraph });
    }

    if let Some((_, embedding)) = find_forbidden(g, &[Forbidden::B4]) {
        let (q1, q2, q3) = build_word(&sg, &lab, &cls).expect("labelling passed verification");
        let z = Word::concat(&[&q1, &q2, &q3]);
        assert!(
            represents(&z, g).unwrap_or(false) && z.is_uniform(g.n(), 3),
            "constructed word failed verification"
        );
        return Ok(PrnResult { value: 3, certificate: PrnCertificate::B4Embedding { embedding, word: z } });
    }

    // B4-free and not complete: a permutation graph with prn exactly 2.
    // Build a dimension-2 realizer by merging a transitive orientation of
    // the graph with one of its complement; both unions are acyclic total
    // orders, and the complement arcs flip between the two extensions.
    let d1 = crate::labelling::orientation_from_labelling(&sg, &lab, &cls)
        .expect("labelling passed verification");
    let d2 = find_transitive_orientation(&g.complement())
        .expect("complement of a B-free split comparability graph is a comparability graph");
    let l1 = merged_total_order(&d1, &d2);
    let l2 = merged_total_order(&d1, &d2.reversed());
    let q1 = Word::new(l1);
    let q2 = Word::new(l2);
    let two = Word::concat(&[&q1, &q2]);
    assert!(
        represents(&two, g).unwrap_or(false),
        "two-permutation certificate failed verification"
    );
    Ok(PrnResult { value: 2, certificate: PrnCertificate::TwoPermutationWord { q1, q2 } })
}

fn merged_total_order(d1: &Orientation, d2: &Orientation) -> Vec<usize> {
    let n = d1.n();
    let arcs: Vec<(usize, usize)> = d1
        .arcs()
        .into_iter()
        .chain(d2.arcs())
        .collect();
    let merged = Orientation::from_arcs(n, &arcs)
        .expect("transitive orientations of a graph and its complement never clash");
    topological_order(&merged).expect("merged tournament is acyclic")
}

/// Exhaustive oracle: is `g` representable by a concatenation of `k`
/// vertex permutations? Independent of the dimension route. Guarded to
/// `n <= 5` and `k <= 3`.
pub fn prn_oracle(g: &Graph, k: usize) -> Result<bool, PrnError> {
    let n = g.n();
    if n > 5 {
        return Err(PrnError::TooLarge(n, 5));
    }
    if k == 0 || k > 3 {
        return Err(PrnError::TooLarge(k, 3));
    }
    // A pair alternates in p1..pk iff every block orders it the same way,
    // so the word represents g iff edges agree everywhere and every
    // non-edge disagrees somewhere.
    if k == 1 {
        return Ok(g.is_complete());
    }

    let perms = permutations(n);
    let pos_of = |perm: &[usize]| {
        let mut pos = vec![0usize; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };

    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();

    for first in &perms {
        let p1 = pos_of(first);
        if k == 2 {
            // the second block is forced: edges keep p1's order, non-edges flip
            if forced_block_exists(n, &pairs, |u, v| {
                if g.has_edge(u, v) { p1[u] < p1[v] } else { p1[u] > p1[v] }
            }) {
                return Ok(true);
            }
            continue;
        }
        for second in &perms {
            let p2 = pos_of(second);
            if pairs
                .iter()
                .any(|&(u, v)| g.has_edge(u, v) && (p1[u] < p1[v]) != (p2[u] < p2[v]))
            {
                continue;
            }
            // third block: edges forced to p1's order; non-edges where the
            // first two agree are forced to flip; the rest are free
            let mut forced: Vec<(usize, usize)> = Vec::new();
            for &(u, v) in &pairs {
                let o1 = p1[u] < p1[v];
                if g.has_edge(u, v) {
                    forced.push(if o1 { (u, v) } else { (v, u) });
                } else if o1 == (p2[u] < p2[v]) {
                    forced.push(if o1 { (v, u) } else { (u, v) });
                }
            }
            let d = Orientation::from_arcs(n, &forced).expect("one constraint per pair");
            if topological_order(&d).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn forced_block_exists(
    n: usize,
    pairs: &[(usize, usize)],
    want_uv: impl Fn(usize, usize) -> bool,
) -> bool {
    let arcs: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(u, v)| if want_uv(u, v) { (u, v) } else { (v, u) })
        .collect();
    match Orientation::from_arcs(n, &arcs) {
        Ok(d) => topological_order(&d).is_some(),
        Err(_) => false,
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if bits::contains(used, v) {
                continue;
            }
            cur.push(v);
            rec(n, cur, used | bits::bit(v), out);
            cur.pop();
        }
    }
    rec(n, &mut cur, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::enumerate_transitive_orientations;

    #[test]
    fn poset_examples() {
        let chain = Poset::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(dimension(&chain, 3), Ok(1));

        let antichain = Poset::new(2, &[]).unwrap();
        assert_eq!(dimension(&antichain, 3), Ok(2));
        assert_eq!(dimension(&antichain, 1), Err(DimensionError::CapExceeded(1)));
    }

    #[test]
    fn poset_construction_rejects_bad_relations() {
        assert!(Poset::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(3, &[(0, 1), (1, 2)]).is_err()); // missing (0,2)
    }

    #[test]
    fn poset_from_orientation_examples() {
        let lin = Orientation::from_arcs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = poset_from_orientation(&lin).unwrap();
        assert!(p.incomparable_pairs().is_empty());

        let empty = Orientation::from_arcs(3, &[]).unwrap();
        let anti = poset_from_orientation(&empty).unwrap();
        assert_eq!(anti.incomparable_pairs().len(), 3);

        let cyc = Orientation::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(poset_from_orientation(&cyc).is_err());
    }

    #[test]
    fn b4_poset_has_dimension_three() {
        let b4 = Forbidden::B4.graph();
        let sg = split_partition(&b4).unwrap();
        let (lab, cls) = find_labelling(&sg).unwrap();
        let d = crate::labelling::orientation_from_labelling(&sg, &lab, &cls).unwrap();
        let p = poset_from_orientation(&d).unwrap();
        assert_eq!(p.incomparable_pairs().len(), 9);
        assert_eq!(dimension(&p, 3), Ok(3));
        let (t, realizer) = dimension_with_realizer(&p, 3).unwrap();
        assert_eq!(t, 3);
        assert_eq!(realizer.len(), 3);
        // realizer re-verification: every incomparable pair is reversed
        for (a, b) in p.incomparable_pairs() {
            let orders: Vec<bool> = realizer
                .iter()
                .map(|l| l.iter().position(|&x| x == a) < l.iter().position(|&x| x == b))
                .collect();
            assert!(orders.contains(&true) && orders.contains(&false));
        }
    }

    #[test]
    fn dimension_guard() {
        let big = Poset::new(10, &[]).unwrap();
        assert_eq!(dimension(&big, 3), Err(DimensionError::TooLarge(10)));
    }

    #[test]
    fn prn_complete() {
        let res = prn(&Graph::complete(5)).unwrap();
        assert_eq!(res.value, 1);
        assert!(matches!(res.certificate, PrnCertificate::CompleteGraph));
    }

    #[test]
    fn prn_b4_is_three() {
        let b4 = Forbidden::B4.graph();
        let res = prn(&b4).unwrap();
        assert_eq!(res.value, 3);
        match res.certificate {
            PrnCertificate::B4Embedding { embedding, word } => {
                assert!(embedding.is_induced(&b4, &Forbidden::B4.graph()));
                assert!(represents(&word, &b4).unwrap());
                assert!(word.is_uniform(7, 3));
            }
            other => panic!("expected B4Embedding, got {other:?}"),
        }
    }

    #[test]
    fn prn_b4_minus_last_vertex_is_two() {
        // B4 with vertex 6 removed: K4 plus 4~{2,3}, 5~{1,2}
        let g = Forbidden::B4.graph().induced(0b0111111);
        let res = prn(&g).unwrap();
        assert_eq!(res.value, 2);
        match res.certificate {
            PrnCertificate::TwoPermutationWord { q1, q2 } => {
                let w = Word::concat(&[&q1, &q2]);
                assert!(represents(&w, &g).unwrap());
            }
            other => panic!("expected TwoPermutationWord, got {other:?}"),
        }
    }

    #[test]
    fn prn_rejects_non_split_and_non_comparability() {
        let c4 = SplitObstruction::C4.graph();
        assert!(matches!(prn(&c4), Err(PrnError::NotSplit { .. })));
        let b2 = Forbidden::B2.graph();
        match prn(&b2) {
            Err(PrnError::NotComparability { name, certificate }) => {
                assert_eq!(name, Forbidden::B2);
                assert!(certificate.is_induced(&b2, &name.graph()));
            }
            other => panic!("expected NotComparability, got {other:?}"),
        }
    }

    #[test]
    fn prn_oracle_examples() {
        assert_eq!(prn_oracle(&Graph::complete(3), 1), Ok(true));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(prn_oracle(&p3, 1), Ok(false));
        assert_eq!(prn_oracle(&p3, 2), Ok(true));
        let e2 = Graph::new(2).unwrap();
        assert_eq!(prn_oracle(&e2, 1), Ok(false));
        assert_eq!(prn_oracle(&e2, 2), Ok(true));
        assert!(prn_oracle(&Graph::complete(6), 2).is_err());
    }

    #[test]
    fn dimension_is_orientation_invariant_n_le_4() {
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
                let dims: Vec<usize> = enumerate_transitive_orientations(&g)
                    .iter()
                    .map(|d| dimension(&poset_from_orientation(d).unwrap(), 3).unwrap())
                    .collect();
                if let Some(&first) = dims.first() {
                    assert!(dims.iter().all(|&x| x == first), "n={n} code={code}");
                }
            }
        }
    }
}
