//! n-trees and their standardized Hopf structure.
//!
//! An n-tree carries the labels `1..=n`, each exactly once. Standardization
//! rank-relabels any distinctly labelled tree into an n-tree; the coproduct
//! standardizes both tensor legs, and the slash/star products shift the right
//! factor before multiplying. Increasing and sorted trees are the closed
//! subfamilies used for the Stirling and permutation realizations.

use std::fmt;

use itertools::Itertools;
use num::One;
use thiserror::Error;

use crate::hopf::{self, TreeComb, TreeTensor};
use crate::linalg::{Coeff, TensorKey};
use crate::tree::{Label, Node, NodeRef, PlanarTree, TreeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelledError {
    #[error("tree is not labelled")]
    Unlabelled,
    #[error("labels must be pairwise distinct")]
    RepeatedLabels,
    #[error("labels must be exactly 1..=degree, each once")]
    NotNTree,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A labelled tree of degree n whose labels are exactly `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NTree(PlanarTree);

impl fmt::Display for NTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl NTree {
    pub fn new(tree: PlanarTree) -> Result<Self, LabelledError> {
        let labels = tree.labels().ok_or(LabelledError::Unlabelled)?;
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted
            .iter()
            .enumerate()
            .any(|(i, &l)| l != (i + 1) as Label)
        {
            return Err(LabelledError::NotNTree);
        }
        Ok(NTree(tree))
    }

    pub fn trivial() -> Self {
        NTree(PlanarTree::trivial())
    }

    pub fn parse(text: &str) -> Result<Self, LabelledError> {
        Self::new(PlanarTree::parse(text)?)
    }

    pub fn as_tree(&self) -> &PlanarTree {
        &self.0
    }

    pub fn into_tree(self) -> PlanarTree {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }
}

/// The tree families over `1..=n` labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    NTree,
    Increasing,
    Sorted,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NTree => "ntree",
            Family::Increasing => "increasing",
            Family::Sorted => "sorted",
        }
    }

    pub fn contains(self, t: &NTree) -> bool {
        match self {
            Family::NTree => true,
            Family::Increasing => is_increasing(t),
            Family::Sorted => is_sorted(t),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ntree" => Ok(Family::NTree),
            "increasing" => Ok(Family::Increasing),
            "sorted" => Ok(Family::Sorted),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// Order-preserving rank relabelling: the k-th smallest label becomes k.
/// Labels must be pairwise distinct; the shape is unchanged.
pub fn standardize(t: &PlanarTree) -> Result<NTree, LabelledError> {
    if t.is_trivial() {
        return Ok(NTree::trivial());
    }
    let labels = t.labels().ok_or(LabelledError::Unlabelled)?;
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(LabelledError::RepeatedLabels);
    }
    let rank = |l: Label| (sorted.binary_search(&l).expect("label present") + 1) as Label;
    Ok(NTree(t.relabel(rank)))
}

/// Adds `m` to every non-root label; shape unchanged, `shift(t, 0) = t`.
pub fn shift(t: &PlanarTree, m: Label) -> PlanarTree {
    t.relabel(|l| l + m)
}

/// `Δ_s(t) = Σ_k s(t_[1,k]) ⊗ s(t_[k+1,n])`: the coproduct with both legs
/// standardized back into n-trees.
pub fn coproduct_std(t: &NTree) -> TreeTensor {
    let n = t.degree() as i64;
    let mut out = TreeTensor::zero();
    for k in 0..=n {
        let left = standardize(&t.as_tree().convex(1, k)).expect("convex n-tree labels distinct");
        let right =
            standardize(&t.as_tree().convex(k + 1, n)).expect("convex n-tree labels distinct");
        out.add_term(TensorKey(left.into_tree(), right.into_tree()), Coeff::one());
    }
    out
}

/// Basis-level slash on raw labelled trees: `t / w = t · w[m]`.
pub(crate) fn slash_trees(t: &PlanarTree, w: &PlanarTree) -> PlanarTree {
    t.dot(&shift(w, t.degree() as Label))
        .expect("shifted labelled trees share the labelling mode")
}

/// `t / w = t · w[m]`: an (m+n)-tree, with the trivial tree as unit.
pub fn slash_product(t: &NTree, w: &NTree) -> NTree {
    NTree(slash_trees(t.as_tree(), w.as_tree()))
}

/// Basis-level star on raw labelled trees: `t ⋆ w = t * w[m]`.
pub(crate) fn star_trees(t: &PlanarTree, w: &PlanarTree) -> TreeComb {
    hopf::product(t, &shift(w, t.degree() as Label))
}

/// `t ⋆ w = t * w[m]`: `C(m+n, m)` addends, all of them (m+n)-trees.
pub fn star_product(t: &NTree, w: &NTree) -> TreeComb {
    star_trees(t.as_tree(), w.as_tree())
}

/// The unique factorization `t = t_1 / ... / t_k` into slash-irreducible
/// n-trees: cut the root-subtree sequence wherever the labels consumed so far
/// form an initial interval, standardizing each group.
pub fn slash_factors(t: &NTree) -> Vec<NTree> {
    fn max_label(n: &Node) -> Label {
        n.children()
            .iter()
            .map(max_label)
            .fold(n.label().unwrap_or(0), Label::max)
    }
    let mut out = Vec::new();
    let mut group: Vec<Node> = Vec::new();
    let mut done = 0usize;
    let mut count = 0usize;
    let mut maxlab = 0 as Label;
    for child in t.as_tree().children() {
        count += child.size();
        maxlab = maxlab.max(max_label(child));
        group.push(child.clone());
        if maxlab as usize == done + count {
            let block =
                PlanarTree::from_children(std::mem::take(&mut group)).expect("uniformly labelled");
            out.push(standardize(&block).expect("distinct labels"));
            done += count;
            count = 0;
            maxlab = 0;
        }
    }
    debug_assert!(
        group.is_empty(),
        "n-tree labels always close the last group"
    );
    out
}

/// Whether a tree is slash-irreducible within its family: nontrivial with no
/// proper initial cut.
pub fn is_slash_irreducible(t: &NTree) -> bool {
    t.degree() > 0 && slash_factors(t).len() == 1
}

/// Whether every path of labels away from the root increases.
pub fn is_increasing(t: &NTree) -> bool {
    fn walk(n: &Node) -> bool {
        n.children()
            .iter()
            .all(|c| c.label() > n.label() && walk(c))
    }
    t.as_tree().children().iter().all(walk)
}

/// Increasing, and the children of every node (the root included) carry
/// ascending labels left to right.
pub fn is_sorted(t: &NTree) -> bool {
    fn ascending(children: &[Node]) -> bool {
        children.windows(2).all(|w| w[0].label() < w[1].label())
            && children.iter().all(|c| ascending(c.children()))
    }
    is_increasing(t) && ascending(t.as_tree().children())
}

/// Inserts a fresh leaf labelled `label` as the `pos`-th child of `parent`.
pub(crate) fn insert_leaf(t: &PlanarTree, parent: NodeRef, pos: usize, label: Label) -> PlanarTree {
    fn walk(
        nodes: &[Node],
        counter: &mut usize,
        parent: NodeRef,
        pos: usize,
        label: Label,
    ) -> Vec<Node> {
        nodes
            .iter()
            .map(|nd| {
                let mut kids = walk(nd.children(), counter, parent, pos, label);
                *counter += 1;
                if NodeRef::Node(*counter) == parent {
                    kids.insert(pos, Node::new(Some(label), Vec::new()));
                }
                Node::new(nd.label(), kids)
            })
            .collect()
    }
    let mut counter = 0;
    let mut kids = walk(t.children(), &mut counter, parent, pos, label);
    if parent == NodeRef::Root {
        kids.insert(pos, Node::new(Some(label), Vec::new()));
    }
    PlanarTree::from_children(kids).expect("uniformly labelled")
}

/// Exhaustive, duplicate-free, canonically ordered enumeration of a family:
/// all `n! c_n` n-trees, the `(2n-1)!!` increasing trees built by gluing the
/// maximal label anywhere, or the `n!` sorted trees built by gluing it
/// rightmost.
pub fn enumerate_family(family: Family, n: usize) -> Vec<NTree> {
    let mut out = match family {
        Family::NTree => {
            if n == 0 {
                vec![NTree::trivial()]
            } else {
                let mut all = Vec::new();
                for shape in PlanarTree::enumerate(n) {
                    for perm in (1..=n as Label).permutations(n) {
                        all.push(NTree(shape.with_labels(&perm)));
                    }
                }
                all
            }
        }
        Family::Increasing => {
            let mut level = vec![NTree::trivial()];
            for d in 1..=n as Label {
                let mut next = Vec::new();
                for t in &level {
                    for at in t.as_tree().node_refs() {
                        let slots = match at {
                            NodeRef::Root => t.as_tree().children().len() + 1,
                            NodeRef::Node(i) => t.as_tree().postorder()[i - 1].children().len() + 1,
                        };
                        for pos in 0..slots {
                            next.push(NTree(insert_leaf(t.as_tree(), at, pos, d)));
                        }
                    }
                }
                level = next;
            }
            level
        }
        Family::Sorted => {
            let mut level = vec![NTree::trivial()];
            for d in 1..=n as Label {
                let mut next = Vec::new();
                for t in &level {
                    for at in t.as_tree().node_refs() {
                        let slots = match at {
                            NodeRef::Root => t.as_tree().children().len(),
                            NodeRef::Node(i) => t.as_tree().postorder()[i - 1].children().len(),
                        };
                        next.push(NTree(insert_leaf(t.as_tree(), at, slots, d)));
                    }
                }
                level = next;
            }
            level
        }
    };
    out.sort();
    out
}
