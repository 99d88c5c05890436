//! Permutation words.
//!
//! A 2-permutation of size n uses every letter of `1..=n` twice; treed
//! permutations are the Euler-tour images of n-trees, Stirling permutations
//! the images of increasing trees. The word-level hash product and coproduct
//! realize the star structure through that bijection, and sorted trees map
//! onto plain permutations carrying the shifted-shuffle algebra.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::One;
use thiserror::Error;

use crate::labelled::{self, NTree};
use crate::linalg::{BasisKey, Coeff, Combination, TensorKey};
use crate::tree::{Node, NodeRef, PlanarTree};

pub type Letter = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error("word is not a 2-permutation of some 1..=n")]
    NotTwoPermutation,
    #[error("word is not a treed permutation")]
    NotTreed,
    #[error("word is not a permutation of some 1..=n")]
    NotPermutation,
    #[error("tree must be labelled")]
    UnlabelledTree,
    #[error("tree is not sorted")]
    NotSorted,
}

/// A word over positive integer letters. Text form is space-separated
/// decimals; an unspaced digit string is accepted on input for single-digit
/// letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains(' ') {
            let letters = text
                .split(' ')
                .map(|p| {
                    p.parse::<Letter>()
                        .map_err(|_| WordError::Parse(text.into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Word(letters))
        } else if text.bytes().all(|b| b.is_ascii_digit()) {
            Ok(Word(text.bytes().map(|b| (b - b'0') as Letter).collect()))
        } else {
            Err(WordError::Parse(text.into()))
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct letters.
    pub fn size(&self) -> usize {
        self.0
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    }

    /// Adds `m` to every letter.
    pub fn shift(&self, m: Letter) -> Word {
        Word(self.0.iter().map(|&l| l + m).collect())
    }

    /// Keeps only the letters contained in `keep`, preserving positions.
    pub fn restrict(&self, keep: &std::collections::BTreeSet<Letter>) -> Word {
        Word(
            self.0
                .iter()
                .copied()
                .filter(|l| keep.contains(l))
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Each letter of `1..=n` appears exactly twice.
    pub fn is_two_permutation(&self) -> bool {
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for &l in &self.0 {
            *counts.entry(l).or_default() += 1;
        }
        let n = counts.len();
        self.0.len() == 2 * n
            && counts
                .iter()
                .all(|(&l, &c)| c == 2 && l >= 1 && l <= n as Letter)
    }

    /// Bijective word over `1..=n`.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &l in &self.0 {
            let Some(slot) = (l as usize).checked_sub(1).and_then(|i| seen.get_mut(i)) else {
                return false;
            };
            if *slot {
                return false;
            }
            *slot = true;
        }
        true
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|l| l.to_string()).join(" "))
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        Word::parse(s)
    }
}

impl BasisKey for Word {
    fn key_string(&self) -> String {
        format!("word:{self}")
    }
}

pub type WordComb = Combination<Word>;
pub type WordTensor = Combination<TensorKey<Word>>;

/// Rank relabelling: the occurrences of the k-th smallest letter become k.
pub fn standardize_word(u: &Word) -> Word {
    let distinct: Vec<Letter> = u
        .letters()
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    Word(
        u.letters()
            .iter()
            .map(|l| (distinct.binary_search(l).expect("letter present") + 1) as Letter)
            .collect(),
    )
}

fn occurrence_pairs(u: &Word) -> BTreeMap<Letter, (usize, usize)> {
    let mut firsts: BTreeMap<Letter, usize> = BTreeMap::new();
    let mut pairs = BTreeMap::new();
    for (i, &l) in u.letters().iter().enumerate() {
        match firsts.get(&l) {
            None => {
                firsts.insert(l, i);
            }
            Some(&p) => {
                pairs.insert(l, (p, i));
            }
        }
    }
    pairs
}

/// Letters ordered by the position of their second occurrence.
pub fn second_occurrence_order(u: &Word) -> Vec<Letter> {
    occurrence_pairs(u)
        .into_iter()
        .sorted_by_key(|&(_, (_, snd))| snd)
        .map(|(l, _)| l)
        .collect()
}

/// Between the two occurrences of any letter, every letter appears twice.
pub fn is_treed(u: &Word) -> bool {
    if !u.is_two_permutation() {
        return false;
    }
    let pairs = occurrence_pairs(u);
    pairs.values().all(|&(p, q)| {
        pairs
            .values()
            .all(|&(a, b)| (p < a && a < q) == (p < b && b < q))
    })
}

/// Only larger letters sit between the two occurrences of any letter.
pub fn is_stirling(u: &Word) -> bool {
    if !u.is_two_permutation() {
        return false;
    }
    let pairs = occurrence_pairs(u);
    pairs
        .iter()
        .all(|(&k, &(p, q))| u.letters()[p + 1..q].iter().all(|&h| h > k))
}

/// Clockwise border walk reading each label twice; concatenates over the dot
/// factors of the tree.
pub fn euler_tour(t: &PlanarTree) -> Result<Word, WordError> {
    if t.is_trivial() {
        return Ok(Word::empty());
    }
    if t.is_labelled() != Some(true) {
        return Err(WordError::UnlabelledTree);
    }
    fn walk(n: &Node, out: &mut Vec<Letter>) {
        let l = n.label().expect("labelled tree");
        out.push(l);
        for c in n.children() {
            walk(c, out);
        }
        out.push(l);
    }
    let mut out = Vec::with_capacity(2 * t.degree());
    for c in t.children() {
        walk(c, &mut out);
    }
    Ok(Word(out))
}

/// Inverse Euler tour: split into parts `k u k` and recurse, rebuilding the
/// unique n-tree whose border walk is `u`.
pub fn euler_tour_inverse(u: &Word) -> Result<NTree, WordError> {
    if !is_treed(u) {
        return Err(WordError::NotTreed);
    }
    fn build(letters: &[Letter]) -> Vec<Node> {
        let mut nodes = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let k = letters[i];
            let close = i
                + 1
                + letters[i + 1..]
                    .iter()
                    .position(|&x| x == k)
                    .expect("treed words close every part");
            nodes.push(Node::new(Some(k), build(&letters[i + 1..close])));
            i = close + 1;
        }
        nodes
    }
    let tree = PlanarTree::from_children(build(u.letters())).expect("uniformly labelled");
    NTree::new(tree).map_err(|_| WordError::NotTwoPermutation)
}

/// The `k`-partitions of a 2-permutation: consecutive intervals of the
/// letters in second-occurrence order, each restricted back into a block.
pub fn word_partitions(u: &Word, k: usize) -> Vec<Vec<Word>> {
    let order = second_occurrence_order(u);
    let n = order.len();
    if k == 0 || k > n {
        return Vec::new();
    }
    (1..n)
        .combinations(k - 1)
        .map(|cuts| {
            let mut bounds = vec![0];
            bounds.extend(cuts);
            bounds.push(n);
            bounds
                .windows(2)
                .map(|w| {
                    let keep: std::collections::BTreeSet<Letter> =
                        order[w[0]..w[1]].iter().copied().collect();
                    u.restrict(&keep)
                })
                .collect()
        })
        .collect()
}

pub fn all_word_partitions(u: &Word) -> Vec<Vec<Word>> {
    (1..=second_occurrence_order(u).len())
        .flat_map(|k| word_partitions(u, k))
        .collect()
}

/// Insertion slots of `u`: the positions of the second occurrences in
/// second-occurrence order, then the end of the word as the `0` slot.
fn insertion_slots(u: &Word) -> Vec<usize> {
    let pairs = occurrence_pairs(u);
    let mut slots: Vec<usize> = pairs.values().map(|&(_, snd)| snd).collect();
    slots.sort_unstable();
    slots.push(u.len());
    slots
}

fn insert_blocks(u: &Word, inserts: &[(usize, &Word)]) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    let mut iter = inserts.iter().peekable();
    for (i, &l) in u.letters().iter().enumerate() {
        while iter.peek().is_some_and(|&&(p, _)| p == i) {
            out.extend_from_slice(iter.next().unwrap().1.letters());
        }
        out.push(l);
    }
    for &(_, b) in iter {
        out.extend_from_slice(b.letters());
    }
    Word(out)
}

/// `u * w`: insert the blocks of every partition of `w[m]` just before the
/// second occurrences chosen by an order-preserving map, the last block
/// falling at the word end when it maps to the adjoined maximum. `C(m+n, m)`
/// addends.
pub fn treed_product(u: &Word, w: &Word) -> WordComb {
    if w.is_empty() {
        return WordComb::basis(u.clone());
    }
    let m = u.size();
    let shifted = w.shift(m as Letter);
    let slots = insertion_slots(u);
    let mut acc = WordComb::zero();
    for blocks in all_word_partitions(&shifted) {
        for sel in slots.iter().copied().combinations(blocks.len()) {
            let inserts: Vec<(usize, &Word)> = sel.into_iter().zip(blocks.iter()).collect();
            acc.add_term(insert_blocks(u, &inserts), Coeff::one());
        }
    }
    acc
}

/// `Δ(u) = Σ_i s(u_{x_1..x_i}) ⊗ s(u_{x_{i+1}..x_n})` over the
/// second-occurrence order.
pub fn treed_coproduct(u: &Word) -> WordTensor {
    let order = second_occurrence_order(u);
    let n = order.len();
    let mut out = WordTensor::zero();
    for i in 0..=n {
        let left: std::collections::BTreeSet<Letter> = order[..i].iter().copied().collect();
        let right: std::collections::BTreeSet<Letter> = order[i..].iter().copied().collect();
        out.add_term(
            TensorKey(
                standardize_word(&u.restrict(&left)),
                standardize_word(&u.restrict(&right)),
            ),
            Coeff::one(),
        );
    }
    out
}

/// All Stirling permutations of size n, built by intercalating `nn` into the
/// gaps of the size n-1 words; `(2n-1)!!` of them, sorted.
pub fn enumerate_stirling(n: usize) -> Vec<Word> {
    let mut level = vec![Word::empty()];
    for d in 1..=n as Letter {
        let mut next = Vec::new();
        for w in &level {
            for gap in 0..=w.len() {
                let mut letters = w.letters().to_vec();
                letters.splice(gap..gap, [d, d]);
                next.push(Word(letters));
            }
        }
        level = next;
    }
    level.sort();
    level
}

/// Post-order label word of a sorted tree: the induced permutation.
pub fn sorted_to_permutation(t: &NTree) -> Result<Word, WordError> {
    if !labelled::is_sorted(t) {
        return Err(WordError::NotSorted);
    }
    Ok(Word(t.as_tree().labels().expect("n-trees are labelled")))
}

/// Inverse of the post-order reading: peel the maximal letter and glue it
/// back as a rightmost child, at the root when it was last, else at the node
/// holding its successor in the word.
pub fn permutation_to_sorted(u: &Word) -> Result<NTree, WordError> {
    if !u.is_permutation() {
        return Err(WordError::NotPermutation);
    }
    fn build(letters: &[Letter]) -> NTree {
        if letters.is_empty() {
            return NTree::trivial();
        }
        let max = letters.len() as Letter;
        let at = letters.iter().position(|&l| l == max).expect("permutation");
        let mut rest = letters.to_vec();
        rest.remove(at);
        let below = build(&rest);
        let parent = if at + 1 == letters.len() {
            NodeRef::Root
        } else {
            let target = letters[at + 1];
            let idx = below
                .as_tree()
                .labels()
                .expect("labelled")
                .iter()
                .position(|&l| l == target)
                .expect("successor present")
                + 1;
            NodeRef::Node(idx)
        };
        let slots = match parent {
            NodeRef::Root => below.as_tree().children().len(),
            NodeRef::Node(i) => below.as_tree().postorder()[i - 1].children().len(),
        };
        NTree::new(labelled::insert_leaf(below.as_tree(), parent, slots, max))
            .expect("gluing the maximum keeps an n-tree")
    }
    Ok(build(u.letters()))
}

/// Shifted shuffle: all `C(m+n, m)` interleavings of `u` with `v[m]`.
pub fn mr_product(u: &Word, v: &Word) -> WordComb {
    fn shuffles(a: &[Letter], b: &[Letter], cur: &mut Vec<Letter>, out: &mut WordComb) {
        if a.is_empty() && b.is_empty() {
            out.add_term(Word(cur.clone()), Coeff::one());
            return;
        }
        if let Some((&h, rest)) = a.split_first() {
            cur.push(h);
            shuffles(rest, b, cur, out);
            cur.pop();
        }
        if let Some((&h, rest)) = b.split_first() {
            cur.push(h);
            shuffles(a, rest, cur, out);
            cur.pop();
        }
    }
    let shifted = v.shift(u.len() as Letter);
    let mut out = WordComb::zero();
    shuffles(u.letters(), shifted.letters(), &mut Vec::new(), &mut out);
    out
}

/// Standardized deconcatenation: `Δ(u) = Σ_i s(u_1..u_i) ⊗ s(u_{i+1}..u_n)`.
pub fn mr_coproduct(u: &Word) -> WordTensor {
    let mut out = WordTensor::zero();
    for i in 0..=u.len() {
        out.add_term(
            TensorKey(
                standardize_word(&Word(u.letters()[..i].to_vec())),
                standardize_word(&Word(u.letters()[i..].to_vec())),
            ),
            Coeff::one(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{binomial, double_factorial_odd};
    use crate::labelled::{enumerate_family, Family};
    use crate::linalg::coeff_int;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("2 1 1 2").letters(), &[2, 1, 1, 2]);
        assert_eq!(w("2112"), w("2 1 1 2"));
        assert_eq!(w("").len(), 0);
        assert_eq!(w("12 3").letters(), &[12, 3]);
        assert_eq!(w("2 1 1 2").to_string(), "2 1 1 2");
        assert!(Word::parse("2x1").is_err());
    }

    #[test]
    fn zero_letters_are_not_permutations() {
        assert!(!w("0").is_permutation());
        assert!(!w("0 1").is_permutation());
        assert!(!w("0 0").is_two_permutation());
        assert!(w("1").is_permutation());
    }

    #[test]
    fn predicate_examples() {
        assert!(is_treed(&w("2 1 1 4 4 2 6 6 5 3 3 5")));
        assert!(is_stirling(&w("1 3 3 4 4 1 2 2")));
        let neither = w("1 2 1 2");
        assert!(neither.is_two_permutation());
        assert!(!is_treed(&neither));
        assert!(!is_stirling(&neither));
        assert!(!is_treed(&w("1 1 1")));
    }

    #[test]
    fn stirling_implies_treed() {
        // over all 2-permutations of sizes <= 3
        for n in 0..=3usize {
            let letters: Vec<Letter> = (1..=n as Letter).flat_map(|l| [l, l]).collect();
            let len = letters.len();
            for perm in letters.into_iter().permutations(len).unique() {
                let u = Word(perm);
                if is_stirling(&u) {
                    assert!(is_treed(&u), "{u}");
                }
            }
        }
    }

    #[test]
    fn euler_tour_fig_example() {
        let t = PlanarTree::parse("((1 (3))(5 (6 (4))(2)))").unwrap();
        assert_eq!(euler_tour(&t).unwrap(), w("1 3 3 1 5 6 4 4 6 2 2 5"));
        let single = PlanarTree::parse("((1))").unwrap();
        assert_eq!(euler_tour(&single).unwrap(), w("1 1"));
        assert!(euler_tour(&PlanarTree::parse("(())").unwrap()).is_err());
    }

    #[test]
    fn parts_decompose_along_root_children() {
        // the parts of a treed word are the Euler tours of the dot factors
        let u = w("2 1 1 4 4 2 6 6 5 3 3 5");
        assert!(is_treed(&u));
        let tree = euler_tour_inverse(&u).unwrap();
        let parts: Vec<Word> = tree
            .as_tree()
            .irreducible_factors()
            .iter()
            .map(|f| euler_tour(f).unwrap())
            .collect();
        assert_eq!(parts, vec![w("2 1 1 4 4 2"), w("6 6"), w("5 3 3 5")]);
    }

    #[test]
    fn euler_tour_multiplicative() {
        for a in enumerate_family(Family::NTree, 2) {
            for b in enumerate_family(Family::NTree, 2) {
                let shifted = labelled::shift(b.as_tree(), 2);
                let glued = a.as_tree().dot(&shifted).unwrap();
                assert_eq!(
                    euler_tour(&glued).unwrap(),
                    euler_tour(a.as_tree())
                        .unwrap()
                        .concat(&euler_tour(&shifted).unwrap())
                );
            }
        }
    }

    #[test]
    fn euler_tour_round_trips() {
        assert_eq!(
            euler_tour_inverse(&w("1 1")).unwrap(),
            NTree::parse("((1))").unwrap()
        );
        assert_eq!(
            euler_tour_inverse(&w("1 3 3 1 5 6 4 4 6 2 2 5")).unwrap(),
            NTree::parse("((1 (3))(5 (6 (4))(2)))").unwrap()
        );
        assert_eq!(euler_tour_inverse(&w("1 2 1 2")), Err(WordError::NotTreed));
        for n in 0..=5 {
            let mut images = std::collections::BTreeSet::new();
            for t in enumerate_family(Family::NTree, n) {
                let word = euler_tour(t.as_tree()).unwrap();
                assert!(is_treed(&word), "{word}");
                assert_eq!(euler_tour_inverse(&word).unwrap(), t);
                images.insert(word);
            }
            assert_eq!(images.len(), enumerate_family(Family::NTree, n).len());
        }
    }

    #[test]
    fn word_partition_example() {
        let u = w("2 1 1 5 5 2 4 3 3 4");
        let parts = word_partitions(&u, 3);
        let expected = vec![w("1 1"), w("2 5 5 2"), w("4 3 3 4")];
        assert!(parts.contains(&expected), "partitions: {parts:?}");
        assert_eq!(word_partitions(&u, 1), vec![vec![u.clone()]]);
        // counts transport from the tree side
        for n in 1..=4usize {
            for t in enumerate_family(Family::NTree, n) {
                let word = euler_tour(t.as_tree()).unwrap();
                assert_eq!(all_word_partitions(&word).len() as u128, 1 << (n - 1));
                for k in 1..=n {
                    assert_eq!(
                        word_partitions(&word, k).len() as u128,
                        binomial(n - 1, k - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn treed_product_frozen_example() {
        let out = treed_product(&w("2 1 1 2"), &w("3 3 2 1 1 2"));
        let expected = [
            "2 1 1 2 5 5 4 3 3 4",
            "2 1 1 5 5 4 3 3 4 2",
            "2 1 5 5 4 3 3 4 1 2",
            "2 1 5 5 3 3 1 2 4 4",
            "2 1 5 5 3 3 1 4 4 2",
            "2 1 1 5 5 3 3 2 4 4",
            "2 1 5 5 1 2 4 3 3 4",
            "2 1 5 5 1 4 3 3 4 2",
            "2 1 1 5 5 2 4 3 3 4",
            "2 1 5 5 1 3 3 2 4 4",
        ];
        assert_eq!(out.num_terms(), 10);
        assert_eq!(out.coefficient_sum(), coeff_int(10));
        for s in expected {
            assert_eq!(out.coeff(&w(s)), coeff_int(1), "missing addend {s}");
        }
        assert_eq!(out.coeff(&w("2 1 1 2 5 5 4 3 3 4")), coeff_int(1));
    }

    #[test]
    fn treed_product_units() {
        let u = w("2 1 1 2");
        assert_eq!(
            treed_product(&u, &Word::empty()),
            WordComb::basis(u.clone())
        );
        assert_eq!(treed_product(&Word::empty(), &u), WordComb::basis(u));
    }

    #[test]
    fn treed_product_insertion_mechanics() {
        // a specific hash product lands among the addends
        let u = w("4 2 2 3 1 1 3 4");
        let v = w("1 1 2 3 3 5 4 4 5 2");
        let out = treed_product(&u, &v);
        assert_eq!(out.coefficient_sum(), coeff_int(binomial(9, 4) as i64));
        assert!(
            out.coeff(&w("4 2 5 5 7 7 2 3 1 1 9 8 8 9 3 4 6 6")) >= coeff_int(1),
            "expected insertion addend present"
        );
    }

    #[test]
    fn treed_coproduct_frozen_example() {
        let d = treed_coproduct(&w("2 1 5 5 4 3 3 4 1 2"));
        assert_eq!(d.coefficient_sum(), coeff_int(6));
        let pairs = [
            ("", "2 1 5 5 4 3 3 4 1 2"),
            ("1 1", "2 1 4 3 3 4 1 2"),
            ("2 2 1 1", "2 1 3 3 1 2"),
            ("3 3 2 1 1 2", "2 1 1 2"),
            ("1 4 4 3 2 2 3 1", "1 1"),
            ("2 1 5 5 4 3 3 4 1 2", ""),
        ];
        for (a, b) in pairs {
            assert_eq!(
                d.coeff(&TensorKey(w(a), w(b))),
                coeff_int(1),
                "missing {a} (x) {b}"
            );
        }
        let empty = treed_coproduct(&Word::empty());
        assert_eq!(empty.num_terms(), 1);
        assert_eq!(
            empty.coeff(&TensorKey(Word::empty(), Word::empty())),
            coeff_int(1)
        );
    }

    #[test]
    fn transport_through_euler_tour() {
        // ε intertwines (⋆, Δ_s) with the word product and coproduct
        for m in 0..=3usize {
            for n in 0..=(3 - m) {
                for t in enumerate_family(Family::NTree, m) {
                    for u in enumerate_family(Family::NTree, n) {
                        let lhs =
                            labelled::star_product(&t, &u).map_keys(|k| euler_tour(k).unwrap());
                        let rhs = treed_product(
                            &euler_tour(t.as_tree()).unwrap(),
                            &euler_tour(u.as_tree()).unwrap(),
                        );
                        assert_eq!(lhs, rhs, "product transport at {t}, {u}");
                    }
                }
            }
        }
        for n in 0..=3usize {
            for t in enumerate_family(Family::NTree, n) {
                let lhs = labelled::coproduct_std(&t).map_keys(|TensorKey(a, b)| {
                    TensorKey(euler_tour(a).unwrap(), euler_tour(b).unwrap())
                });
                let rhs = treed_coproduct(&euler_tour(t.as_tree()).unwrap());
                assert_eq!(lhs, rhs, "coproduct transport at {t}");
            }
        }
    }

    #[test]
    fn stirling_enumeration() {
        assert_eq!(
            enumerate_stirling(2),
            vec![w("1 1 2 2"), w("1 2 2 1"), w("2 2 1 1")]
        );
        assert_eq!(enumerate_stirling(3).len(), 15);
        for n in 0..=4usize {
            let words = enumerate_stirling(n);
            assert_eq!(words.len() as u128, double_factorial_odd(n));
            for word in &words {
                assert!(is_stirling(word));
            }
            // the ε image of increasing trees is exactly the Stirling set
            let images: Vec<Word> = enumerate_family(Family::Increasing, n)
                .iter()
                .map(|t| euler_tour(t.as_tree()).unwrap())
                .sorted()
                .collect();
            assert_eq!(words, images);
        }
    }

    #[test]
    fn stirling_closed_under_structure() {
        let all: Vec<Word> = (0..=3).flat_map(enumerate_stirling).collect();
        for u in &all {
            for (TensorKey(a, b), _) in treed_coproduct(u).iter() {
                assert!(a.is_empty() || is_stirling(a), "{a} from Δ({u})");
                assert!(b.is_empty() || is_stirling(b), "{b} from Δ({u})");
            }
            for v in &all {
                if u.size() + v.size() > 3 {
                    continue;
                }
                for (key, _) in treed_product(u, v).iter() {
                    assert!(is_stirling(key), "{key} from {u} * {v}");
                }
            }
        }
    }

    #[test]
    fn sorted_permutation_bijection() {
        let fig = NTree::parse("((1 (2)(4))(3))").unwrap();
        assert_eq!(sorted_to_permutation(&fig).unwrap(), w("2 4 1 3"));
        assert_eq!(permutation_to_sorted(&w("2 4 1 3")).unwrap(), fig);
        assert_eq!(
            sorted_to_permutation(&NTree::parse("((1))").unwrap()).unwrap(),
            w("1")
        );
        assert_eq!(
            sorted_to_permutation(&NTree::parse("((2)(1))").unwrap()),
            Err(WordError::NotSorted)
        );
        assert_eq!(
            permutation_to_sorted(&w("1 1")),
            Err(WordError::NotPermutation)
        );

        for n in 0..=4usize {
            let mut images = std::collections::BTreeSet::new();
            for t in enumerate_family(Family::Sorted, n) {
                let word = sorted_to_permutation(&t).unwrap();
                assert!(word.is_permutation());
                assert_eq!(permutation_to_sorted(&word).unwrap(), t);
                images.insert(word);
            }
            assert_eq!(images.len() as u128, crate::combinat::factorial(n));
        }
    }

    #[test]
    fn mr_product_and_coproduct() {
        let out = mr_product(&w("1"), &w("1"));
        assert_eq!(out.coeff(&w("1 2")), coeff_int(1));
        assert_eq!(out.coeff(&w("2 1")), coeff_int(1));
        assert_eq!(out.num_terms(), 2);
        for m in 0..=5usize {
            for n in 0..=(5 - m) {
                for u in (1..=m as Letter).permutations(m) {
                    for v in (1..=n as Letter).permutations(n) {
                        let out = mr_product(&Word(u.clone()), &Word(v));
                        assert_eq!(out.coefficient_sum(), coeff_int(binomial(m + n, m) as i64));
                    }
                }
            }
        }
        let d = mr_coproduct(&w("2 3 1"));
        assert_eq!(d.coefficient_sum(), coeff_int(4));
        assert_eq!(d.coeff(&TensorKey(w("1 2"), w("1"))), coeff_int(1));
    }

    #[test]
    fn sorted_transport_matches_shifted_shuffle() {
        // the sorted-tree star/coproduct equal the Malvenuto-Reutenauer
        // structure through the post-order bijection
        for m in 0..=2usize {
            for n in 0..=(4 - m).min(2) {
                for t in enumerate_family(Family::Sorted, m) {
                    for u in enumerate_family(Family::Sorted, n) {
                        let lhs = labelled::star_product(&t, &u).map_keys(|k| {
                            sorted_to_permutation(&NTree::new(k.clone()).unwrap()).unwrap()
                        });
                        let rhs = mr_product(
                            &sorted_to_permutation(&t).unwrap(),
                            &sorted_to_permutation(&u).unwrap(),
                        );
                        assert_eq!(lhs, rhs, "MR transport at {t}, {u}");
                    }
                }
            }
        }
        for n in 0..=4usize {
            for t in enumerate_family(Family::Sorted, n) {
                let lhs = labelled::coproduct_std(&t).map_keys(|TensorKey(a, b)| {
                    TensorKey(
                        sorted_to_permutation(&NTree::new(a.clone()).unwrap()).unwrap(),
                        sorted_to_permutation(&NTree::new(b.clone()).unwrap()).unwrap(),
                    )
                });
                let rhs = mr_coproduct(&sorted_to_permutation(&t).unwrap());
                assert_eq!(lhs, rhs, "MR coproduct transport at {t}");
            }
        }
    }

    #[test]
    fn standardize_word_examples() {
        assert_eq!(
            standardize_word(&w("2 9 9 5 5 2 6 6 3 8 8 3")),
            w("1 6 6 3 3 1 4 4 2 5 5 2")
        );
        assert_eq!(standardize_word(&Word::empty()), Word::empty());
        // idempotent
        for u in enumerate_stirling(3) {
            assert_eq!(
                standardize_word(&standardize_word(&u)),
                standardize_word(&u)
            );
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_two_permutation(max_size: usize) -> impl Strategy<Value = Word> {
            (0..=max_size)
                .prop_flat_map(|n| {
                    let letters: Vec<Letter> = (1..=n as Letter).flat_map(|l| [l, l]).collect();
                    Just(letters).prop_shuffle()
                })
                .prop_map(Word::new)
        }

        proptest! {
            #[test]
            fn shift_preserves_standardization(u in arb_two_permutation(5), m in 0u32..7) {
                prop_assert_eq!(standardize_word(&u.shift(m)), standardize_word(&u));
                prop_assert_eq!(
                    standardize_word(&standardize_word(&u)),
                    standardize_word(&u)
                );
            }

            #[test]
            fn parse_display_round_trip(u in arb_two_permutation(6)) {
                prop_assert_eq!(Word::parse(&u.to_string()).unwrap(), u);
            }

            #[test]
            fn euler_round_trip_on_random_ntrees(
                shape_idx in 0usize..42,
                perm in Just((1u32..=5).collect::<Vec<_>>()).prop_shuffle(),
            ) {
                let shapes = PlanarTree::enumerate(5);
                let tree = shapes[shape_idx % shapes.len()].with_labels(&perm);
                let nt = NTree::new(tree).unwrap();
                let word = euler_tour(nt.as_tree()).unwrap();
                prop_assert!(is_treed(&word));
                prop_assert_eq!(euler_tour_inverse(&word).unwrap(), nt);
            }
        }
    }
}
