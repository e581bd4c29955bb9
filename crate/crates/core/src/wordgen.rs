//! Words over vertex ids: restriction, alternation, uniformity, the
//! representation verifier, and the construction of a 3-uniform word
//! `z = q1 q2 q3` permutationally representing a split comparability graph.
//!
//! The construction starts each block as the clique permutation `12..k`,
//! splices every classified independent vertex next to one of its interval
//! endpoints, then finishes with two block-level edits: `q1` gains the
//! reversed A3 and A2 restrictions of `q2` on its flanks, and `q3` gains
//! the reversed A1 restriction of `q1` right after label `d`.

use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::graph::{Embedding, Graph};
use crate::labelling::{find_labelling, verify_properties, CliqueLabelling,
                       IClass, IClassification, LabelError};
use crate::split::{find_forbidden, Forbidden, SplitGraph};

/// A finite sequence of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Word(Vec<usize>);

#[derive(Debug, Error)]
pub enum WordError {
    #[error("word does not mention vertices {0:?}")]
    MissingVertex(Vec<usize>),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("graph is not a comparability graph: contains an induced {}", .name)]
    NotComparability { name: Forbidden, certificate: Embedding },
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Is this a permutation of `0..n`?
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Every vertex of `0..n` occurs exactly `k` times?
    pub fn is_uniform(&self, n: usize, k: usize) -> bool {
        let mut count = vec![0usize; n];
        for &v in &self.0 {
            if v >= n {
                return false;
            }
            count[v] += 1;
        }
        count.iter().all(|&c| c == k)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Subword of `w` keeping exactly the letters in `keep`, order preserved.
pub fn restrict(w: &Word, keep: u64) -> Word {
    Word(w.0.iter().copied().filter(|&v| bits::contains(keep, v)).collect())
}

/// Do `x` and `y` strictly alternate in `w`? Restrictions of length at most
/// one are vacuously alternating, as is a single `xy` or `yx`.
pub fn alternates(w: &Word, x: usize, y: usize) -> bool {
    assert_ne!(x, y, "alternation is defined for distinct letters");
    let mut last = usize::MAX;
    for &v in &w.0 {
        if v == x || v == y {
            if v == last {
                return false;
            }
            last = v;
        }
    }
    true
}

/// Multiplicity `k` if every occurring letter occurs exactly `k` times.
/// The empty word reports 0.
pub fn uniformity(w: &Word) -> Option<usize> {
    let mut counts = std::collections::HashMap::new();
    for &v in &w.0 {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    let mut values = counts.values();
    match values.next() {
        None => Some(0),
        Some(&k) => values.all(|&c| c == k).then_some(k),
    }
}

/// Does `w` represent `g`: adjacency iff alternation, over all vertex
/// pairs? Errors if some vertex never occurs in `w`.
pub fn represents(w: &Word, g: &Graph) -> Result<bool, WordError> {
    let mut present = 0u64;
    for &v in &w.0 {
        if v < 64 {
            present |= bits::bit(v);
        }
    }
    let missing: Vec<usize> = (0..g.n()).filter(|&v| !bits::contains(present, v)).collect();
    if !missing.is_empty() {
        return Err(WordError::MissingVertex(missing));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if alternates(w, u, v) != g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Insert `letter` immediately after the anchor `after` in `q`.
fn splice_after(q: &mut Vec<usize>, after: usize, letter: usize) {
    let pos = q.iter().position(|&v| v == after).expect("anchor present");
    q.insert(pos + 1, letter);
}

/// Insert `letter` immediately before the anchor `before` in `q`.
fn splice_before(q: &mut Vec<usize>, before: usize, letter: usize) {
    let pos = q.iter().position(|&v| v == before).expect("anchor present");
    q.insert(pos, letter);
}

/// Build the three permutation blocks for a split comparability graph with
/// a valid labelling, processing independent vertices in ascending id
/// order. `z = q1 q2 q3` is 3-uniform and represents the graph.
pub fn build_word(
    sg: &SplitGraph,
    lab: &CliqueLabelling,
    cls: &IClassification,
) -> Result<(Word, Word, Word), WordError> {
    let order: Vec<usize> = cls.entries().iter().map(|&(v, _)| v).collect();
    build_word_ordered(sg, lab, cls, &order)
}

/// Same construction with an explicit processing order over the classified
/// vertices; the represented graph does not depend on the order.
pub(crate) fn build_word_ordered(
    sg: &SplitGraph,
    lab: &CliqueLabelling,
    cls: &IClassification,
    i_order: &[usize],
) -> Result<(Word, Word, Word), WordError> {
    let violations = verify_properties(cls, lab.k());
    if !violations.is_empty() {
        return Err(WordError::Label(LabelError::PropertiesViolated(violations)));
    }

    let at = |label: usize| lab.vertex_with_label(label);
    let mut q1: Vec<usize> = lab.order().to_vec();
    let mut q2 = q1.clone();
    let mut q3 = q1.clone();
    let mut d = 1usize;

    for &a in i_order {
        match cls.class_of(a).expect("processing order covers classified vertices") {
            IClass::A1 { m, n } => {
                if m > d {
                    d = m;
                }
                splice_after(&mut q1, at(m), a);
                splice_before(&mut q2, at(n), a);
            }
            IClass::A2 { r } => {
                splice_after(&mut q2, at(r), a);
                q3.push(a);
            }
            IClass::A3 { l } => {
                splice_before(&mut q2, at(l), a);
                splice_before(&mut q3, at(l), a);
            }
        }
    }
    debug_assert_eq!(d, cls.d());

    // q1 <- (q2|A3)^R q1 (q2|A2)^R
    let a3_rev: Vec<usize> = q2.iter().copied().filter(|&v| bits::contains(cls.a3_mask(), v)).rev().collect();
    let a2_rev: Vec<usize> = q2.iter().copied().filter(|&v| bits::contains(cls.a2_mask(), v)).rev().collect();
    let mut new_q1 = a3_rev;
    new_q1.extend_from_slice(&q1);
    new_q1.extend(a2_rev);
    q1 = new_q1;

    // replace d in q3 with d (q1|A1)^R
    if lab.k() > 0 {
        let a1_rev: Vec<usize> = q1.iter().copied().filter(|&v| bits::contains(cls.a1_mask(), v)).rev().collect();
        let pos = q3.iter().position(|&v| v == at(d)).expect("label d present in q3");
        q3.splice(pos + 1..pos + 1, a1_rev);
    }

    // isolated independent vertices extend the construction: as a block S
    // at the end of q1, S reversed at the start of q2, and S at the end of
    // q3, which forces non-alternation against every other vertex
    let isolated: Vec<usize> = sg
        .independent_vertices()
        .into_iter()
        .filter(|&v| sg.graph().neighbors(v) == 0)
        .collect();
    if !isolated.is_empty() {
        q1.extend(&isolated);
        let mut front: Vec<usize> = isolated.iter().rev().copied().collect();
        front.extend(q2);
        q2 = front;
        q3.extend(&isolated);
    }

    let n = sg.graph().n();
    debug_assert!(Word(q1.clone()).is_permutation_of(n));
    debug_assert!(Word(q2.clone()).is_permutation_of(n));
    debug_assert!(Word(q3.clone()).is_permutation_of(n));
    Ok((Word(q1), Word(q2), Word(q3)))
}

/// Verification report for a constructed word, split by the pair classes
/// that the construction's correctness argument treats separately.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub blocks_are_permutations: bool,
    pub three_uniform: bool,
    pub represents: bool,
    pub adjacent_pairs_alternate: bool,
    pub independent_pairs_non_alternating: bool,
    pub nonadjacent_clique_pairs_non_alternating: bool,
    pub clique_restriction_is_repeated_order: bool,
}

impl RepresentationReport {
    pub fn all_pass(&self) -> bool {
        self.blocks_are_permutations
            && self.three_uniform
            && self.represents
            && self.adjacent_pairs_alternate
            && self.independent_pairs_non_alternating
            && self.nonadjacent_clique_pairs_non_alternating
            && self.clique_restriction_is_repeated_order
    }
}

/// Full pipeline for one split graph: find a labelling, build the word,
/// verify everything. Fails with a forbidden-subgraph certificate when the
/// graph is not a comparability graph.
pub fn build_and_verify(sg: &SplitGraph) -> Result<(Word, RepresentationReport), WordError> {
    let Some((lab, cls)) = find_labelling(sg) else {
        let (name, certificate) =
            find_forbidden(sg.graph(), &Forbidden::COMPARABILITY_OBSTRUCTIONS)
                .expect("non-comparability split graph contains B1, B2, or B3");
        return Err(WordError::NotComparability { name, certificate });
    };
    let (q1, q2, q3) = build_word(sg, &lab, &cls)?;
    let z = Word::concat(&[&q1, &q2, &q3]);
    let report = verify_word(sg, &lab, &q1, &q2, &q3, &z)?;
    Ok((z, report))
}

pub fn verify_word(
    sg: &SplitGraph,
    lab: &CliqueLabelling,
    q1: &Word,
    q2: &Word,
    q3: &Word,
    z: &Word,
) -> Result<RepresentationReport, WordError> {
    let g = sg.graph();
    let n = g.n();
    let clique = sg.clique_mask();
    let independent = sg.independent_mask();

    let mut adjacent_ok = true;
    let mut ii_ok = true;
    let mut ic_ok = true;
    for u in 0..n {
        for v in (u + 1)..n {
            let alt = alternates(z, u, v);
            if g.has_edge(u, v) {
                adjacent_ok &= alt;
            } else if bits::contains(independent, u) && bits::contains(independent, v) {
                ii_ok &= !alt;
            } else {
                ic_ok &= !alt;
            }
        }
    }

    let expected_clique: Vec<usize> = lab.order().iter().copied().cycle().take(3 * lab.k()).collect();
    let report = RepresentationReport {
        blocks_are_permutations: q1.is_permutation_of(n)
            && q2.is_permutation_of(n)
            && q3.is_permutation_of(n),
        three_uniform: z.is_uniform(n, 3),
        represents: represents(z, g)?,
        adjacent_pairs_alternate: adjacent_ok,
        independent_pairs_non_alternating: ii_ok,
        nonadjacent_clique_pairs_non_alternating: ic_ok,
        clique_restriction_is_repeated_order: restrict(z, clique).letters() == expected_clique,
    };
    Ok(report)
}

/// Render a word in the compact digit notation: clique vertices print as
/// their labels `1..k`, independent vertices as `k+1..n` in ascending id
/// order. Only available when every digit is single-decimal (`n <= 9`).
pub fn digit_string(w: &Word, lab: &CliqueLabelling, sg: &SplitGraph) -> Option<String> {
    let n = sg.graph().n();
    if n > 9 {
        return None;
    }
    let ivs = sg.independent_vertices();
    let mut digit = vec![0usize; n];
    for (v, slot) in digit.iter_mut().enumerate() {
        if let Some(label) = lab.label_of(v) {
            *slot = label;
        } else {
            let rank = ivs.iter().position(|&u| u == v)?;
            *slot = lab.k() + 1 + rank;
        }
    }
    Some(w.letters().iter().map(|&v| digit[v].to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::split::{split_partition, SplitError};

    // letters for readability in the running example
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn restrict_running_example() {
        // w = acabbccb restricted to {a,b} is aabbb
        let word = w(&[A, C, A, B, B, C, C, B]);
        assert_eq!(restrict(&word, bits::bit(A) | bits::bit(B)), w(&[A, A, B, B, B]));
        assert_eq!(restrict(&word, 0), w(&[]));
        let all = bits::bit(A) | bits::bit(B) | bits::bit(C);
        assert_eq!(restrict(&word, all), word);
    }

    #[test]
    fn alternation_examples() {
        let word = w(&[A, C, A, B, B, C, C, B]);
        assert!(!alternates(&word, A, B));
        assert!(alternates(&w(&[A, B, A, B]), A, B));
        assert!(!alternates(&w(&[A, B, B, A]), A, B));
        // single occurrences are vacuously alternating
        assert!(alternates(&w(&[A, B]), A, B));
        assert!(alternates(&w(&[A]), A, B));
        assert!(alternates(&w(&[]), A, B));
    }

    #[test]
    fn uniformity_examples() {
        assert_eq!(uniformity(&w(&[0, 1, 2, 0, 1, 2, 0, 1, 2])), Some(3));
        assert_eq!(uniformity(&w(&[A, A, B, B, B])), None);
        assert_eq!(uniformity(&w(&[A])), Some(1));
        assert_eq!(uniformity(&w(&[])), Some(0));
    }

    #[test]
    fn represents_examples() {
        let k3 = Graph::complete(3);
        assert!(represents(&w(&[0, 1, 2, 0, 1, 2, 0, 1, 2]), &k3).unwrap());

        let k2 = Graph::complete(2);
        assert!(!represents(&w(&[0, 0, 1, 1]), &k2).unwrap());

        match represents(&w(&[0, 0]), &k2) {
            Err(WordError::MissingVertex(vs)) => assert_eq!(vs, vec![1]),
            other => panic!("expected MissingVertex, got {other:?}"),
        }
    }

    #[test]
    fn build_word_k3_trivial() {
        let sg = split_partition(&Graph::complete(3)).unwrap();
        let (lab, cls) = find_labelling(&sg).unwrap();
        let (q1, q2, q3) = build_word(&sg, &lab, &cls).unwrap();
        assert_eq!(q1, w(&[0, 1, 2]));
        assert_eq!(q2, w(&[0, 1, 2]));
        assert_eq!(q3, w(&[0, 1, 2]));
        let z = Word::concat(&[&q1, &q2, &q3]);
        assert!(represents(&z, &Graph::complete(3)).unwrap());
    }

    #[test]
    fn build_word_single_vertex() {
        let sg = split_partition(&Graph::complete(1)).unwrap();
        let (z, report) = build_and_verify(&sg).unwrap();
        assert_eq!(z, w(&[0, 0, 0]));
        assert!(report.all_pass());
    }

    #[test]
    fn build_word_rejects_non_comparability() {
        let sg = split_partition(&crate::split::Forbidden::B1.graph()).unwrap();
        match build_and_verify(&sg) {
            Err(WordError::NotComparability { name, certificate }) => {
                assert_eq!(name, crate::split::Forbidden::B1);
                assert!(certificate.is_induced(sg.graph(), &name.graph()));
            }
            other => panic!("expected NotComparability, got {other:?}"),
        }
    }

    #[test]
    fn edgeless_graph_uses_isolated_block() {
        let g = Graph::new(3).unwrap();
        let sg = split_partition(&g).unwrap();
        let (z, report) = build_and_verify(&sg).unwrap();
        assert!(report.all_pass(), "report: {report:?}");
        assert_eq!(z.letters(), &[0, 1, 2, 2, 1, 0, 0, 1, 2]);
    }

    #[test]
    fn isolated_vertices_mix_with_classified_ones() {
        // K2 {0,1}, pendant 2 on 0, isolated 3 and 4
        let g = Graph::from_edges(5, &[(0, 1), (0, 2)]).unwrap();
        let sg = split_partition(&g).unwrap();
        let (z, report) = build_and_verify(&sg).unwrap();
        assert!(report.all_pass(), "z = {z}, report: {report:?}");
    }

    #[test]
    fn processing_order_does_not_affect_correctness() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);

        let graphs = order_robustness_graphs();
        for g in &graphs {
            let sg = match split_partition(g) {
                Ok(sg) => sg,
                Err(SplitError::NotSplit { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let Some((lab, cls)) = find_labelling(&sg) else { continue };
            let mut order: Vec<usize> = cls.entries().iter().map(|&(v, _)| v).collect();
            for _ in 0..200 {
                order.shuffle(&mut rng);
                let (q1, q2, q3) = build_word_ordered(&sg, &lab, &cls, &order).unwrap();
                let z = Word::concat(&[&q1, &q2, &q3]);
                assert!(z.is_uniform(g.n(), 3));
                assert!(represents(&z, g).unwrap(), "g={g:?} order={order:?}");
            }
        }
    }

    fn order_robustness_graphs() -> Vec<Graph> {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut graphs = vec![crate::split::Forbidden::B4.graph()];
        while graphs.len() < 12 {
            let n = rng.gen_range(2..=7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.55))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if split_partition(&g).is_ok() {
                graphs.push(g);
            }
        }
        graphs
    }

    proptest::proptest! {
        #[test]
        fn alternation_is_symmetric(letters in proptest::collection::vec(0usize..5, 0..30), x in 0usize..5, y in 0usize..5) {
            proptest::prop_assume!(x != y);
            let word = Word::new(letters);
            proptest::prop_assert_eq!(alternates(&word, x, y), alternates(&word, y, x));
        }

        #[test]
        fn restriction_composes(letters in proptest::collection::vec(0usize..8, 0..40), a in 0u64..256, b in 0u64..256) {
            let word = Word::new(letters);
            let lhs = restrict(&word, a & b);
            let rhs = restrict(&restrict(&word, a), b);
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
