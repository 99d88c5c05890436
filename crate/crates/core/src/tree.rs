//! Planar rooted trees in canonical form.
//!
//! A tree is an unlabelled root with an ordered sequence of child subtrees;
//! non-root nodes may carry labels (all of them or none). The canonical text
//! form is the identity of a tree: equality, ordering and hashing all go
//! through it.
//!
//! Grammar: the root is `"(" node* ")"`, a node is `"(" [label SP] node* ")"`,
//! labels are decimal integers, and the only whitespace is the single space
//! between a label and its first child.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use thiserror::Error;

pub type Label = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("malformed tree text at byte {0}")]
    Malformed(usize),
    #[error("tree mixes labelled and unlabelled nodes")]
    MixedLabelling,
    #[error("node reference {0} outside host tree of degree {1}")]
    NodeNotInHost(NodeRef, usize),
    #[error("graft targets must be distinct")]
    DuplicateGraftTarget,
    #[error("partition cuts {0:?} invalid for degree {1}")]
    BadPartition(Vec<usize>, usize),
}

/// A non-root node: optional label plus ordered child nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    label: Option<Label>,
    children: Vec<Node>,
}

impl Node {
    pub fn new(label: Option<Label>, children: Vec<Node>) -> Self {
        Node { label, children }
    }

    pub fn label(&self) -> Option<Label> {
        self.label
    }

    pub fn children(&self) -> &[Node] {
        &self.children
    }

    /// Number of nodes in this subtree, including the node itself.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Node::size).sum::<usize>()
    }

    fn write_canonical(&self, out: &mut String) {
        out.push('(');
        if let Some(l) = self.label {
            out.push_str(&l.to_string());
            if !self.children.is_empty() {
                out.push(' ');
            }
        }
        for c in &self.children {
            c.write_canonical(out);
        }
        out.push(')');
    }
}

/// A node reference: post-order index `1..=degree`, or the root.
///
/// The order is the traversal order of the node set `N(t)`: post-order
/// indices ascending, root strictly maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Node(usize),
    Root,
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Node(i) => write!(f, "node {i}"),
            NodeRef::Root => write!(f, "root"),
        }
    }
}

/// Which side of a node's existing children a graft lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraftSide {
    Leftmost,
    Rightmost,
}

/// A planar rooted tree in canonical form.
#[derive(Clone)]
pub struct PlanarTree {
    children: Vec<Node>,
    degree: usize,
    repr: String,
}

impl PartialEq for PlanarTree {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for PlanarTree {}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl Hash for PlanarTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl std::str::FromStr for PlanarTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        PlanarTree::parse(s)
    }
}

impl PlanarTree {
    /// The unique tree of degree zero.
    pub fn trivial() -> Self {
        PlanarTree {
            children: Vec::new(),
            degree: 0,
            repr: "()".to_string(),
        }
    }

    /// Builds a tree from the root's child nodes, enforcing uniform labelling.
    pub fn from_children(children: Vec<Node>) -> Result<Self, TreeError> {
        let mut seen_labelled = None;
        let mut stack: Vec<&Node> = children.iter().collect();
        let mut degree = 0usize;
        while let Some(nd) = stack.pop() {
            degree += 1;
            let lab = nd.label.is_some();
            match seen_labelled {
                None => seen_labelled = Some(lab),
                Some(prev) if prev != lab => return Err(TreeError::MixedLabelling),
                _ => {}
            }
            stack.extend(nd.children.iter());
        }
        let mut repr = String::new();
        repr.push('(');
        for c in &children {
            c.write_canonical(&mut repr);
        }
        repr.push(')');
        Ok(PlanarTree {
            children,
            degree,
            repr,
        })
    }

    /// Parses the canonical text form.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let b = text.as_bytes();
        if b.is_empty() || b[0] != b'(' {
            return Err(TreeError::Malformed(0));
        }
        let (children, pos) = parse_nodes(b, 1)?;
        if pos >= b.len() || b[pos] != b')' {
            return Err(TreeError::Malformed(pos));
        }
        if pos + 1 != b.len() {
            return Err(TreeError::Malformed(pos + 1));
        }
        Self::from_children(children)
    }

    /// The canonical string; `parse` round-trips it.
    pub fn canonical(&self) -> &str {
        &self.repr
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0
    }

    /// `Some(true)` if the nodes carry labels, `None` for the trivial tree.
    pub fn is_labelled(&self) -> Option<bool> {
        self.children.first().map(|c| c.label.is_some())
    }

    pub fn children(&self) -> &[Node] {
        &self.children
    }

    /// Non-root nodes in depth-first post order (subtrees left to right,
    /// parents after their descendants; the root is excluded and maximal).
    pub fn postorder(&self) -> Vec<&Node> {
        fn walk<'a>(nodes: &'a [Node], out: &mut Vec<&'a Node>) {
            for nd in nodes {
                walk(&nd.children, out);
                out.push(nd);
            }
        }
        let mut out = Vec::with_capacity(self.degree);
        walk(&self.children, &mut out);
        out
    }

    /// All node references in traversal order: `Node(1) < ... < Node(n) < Root`.
    pub fn node_refs(&self) -> Vec<NodeRef> {
        (1..=self.degree)
            .map(NodeRef::Node)
            .chain(std::iter::once(NodeRef::Root))
            .collect()
    }

    /// Labels in post order, if every node carries one.
    pub fn labels(&self) -> Option<Vec<Label>> {
        self.postorder().iter().map(|n| n.label).collect()
    }

    /// Same shape with labels rewritten through `f`. Unlabelled trees are
    /// returned unchanged.
    pub fn relabel(&self, mut f: impl FnMut(Label) -> Label) -> PlanarTree {
        fn walk(nodes: &[Node], f: &mut impl FnMut(Label) -> Label) -> Vec<Node> {
            nodes
                .iter()
                .map(|nd| Node {
                    label: nd.label.map(&mut *f),
                    children: walk(&nd.children, f),
                })
                .collect()
        }
        PlanarTree::from_children(walk(&self.children, &mut f)).expect("relabel keeps mode")
    }

    /// Same shape with the given post-order labels attached.
    pub fn with_labels(&self, labels: &[Label]) -> PlanarTree {
        assert_eq!(labels.len(), self.degree, "one label per non-root node");
        fn walk(nodes: &[Node], counter: &mut usize, labels: &[Label]) -> Vec<Node> {
            nodes
                .iter()
                .map(|nd| {
                    let children = walk(&nd.children, counter, labels);
                    let label = Some(labels[*counter]);
                    *counter += 1;
                    Node { label, children }
                })
                .collect()
        }
        let mut counter = 0;
        PlanarTree::from_children(walk(&self.children, &mut counter, labels))
            .expect("uniformly labelled")
    }

    /// Forgets all labels.
    pub fn shape(&self) -> PlanarTree {
        fn walk(nodes: &[Node]) -> Vec<Node> {
            nodes
                .iter()
                .map(|nd| Node {
                    label: None,
                    children: walk(&nd.children),
                })
                .collect()
        }
        PlanarTree::from_children(walk(&self.children)).expect("unlabelled")
    }

    /// Keeps exactly the nodes whose post-order index satisfies `keep`,
    /// contracting edges through removed nodes.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> PlanarTree {
        fn walk(nodes: &[Node], counter: &mut usize, keep: &impl Fn(usize) -> bool) -> Vec<Node> {
            let mut out = Vec::new();
            for nd in nodes {
                let kids = walk(&nd.children, counter, keep);
                *counter += 1;
                if keep(*counter) {
                    out.push(Node {
                        label: nd.label,
                        children: kids,
                    });
                } else {
                    out.extend(kids);
                }
            }
            out
        }
        let mut counter = 0;
        PlanarTree::from_children(walk(&self.children, &mut counter, &keep))
            .expect("restriction keeps mode")
    }

    /// The convex tree `t_[i,j]`: nodes at post-order positions `[i,j] ∩ [1,n]`,
    /// edges contracted through the removed nodes. Out-of-range indices clip;
    /// an empty intersection yields the trivial tree, and `t_[1,n] = t`.
    pub fn convex(&self, i: i64, j: i64) -> PlanarTree {
        let lo = i.max(1);
        let hi = j.min(self.degree as i64);
        if lo > hi {
            return PlanarTree::trivial();
        }
        let (lo, hi) = (lo as usize, hi as usize);
        self.restrict(|p| lo <= p && p <= hi)
    }

    /// All `k`-partitions, ordered by their cut-index tuples. The trivial tree
    /// has none, and neither does any `k` outside `1..=degree`.
    pub fn partitions(&self, k: usize) -> Vec<TreePartition> {
        let n = self.degree;
        if n == 0 || k == 0 || k > n {
            return Vec::new();
        }
        (1..n)
            .combinations(k - 1)
            .map(|cuts| TreePartition::new(self, &cuts).expect("cuts in range"))
            .collect()
    }

    /// All partitions, grouped by block count: `2^(n-1)` in total.
    pub fn all_partitions(&self) -> Vec<TreePartition> {
        (1..=self.degree).flat_map(|k| self.partitions(k)).collect()
    }

    /// The dot product: identify the two roots, children of `self` first.
    /// The trivial tree is a two-sided unit.
    pub fn dot(&self, other: &PlanarTree) -> Result<PlanarTree, TreeError> {
        match (self.is_labelled(), other.is_labelled()) {
            (Some(a), Some(b)) if a != b => return Err(TreeError::MixedLabelling),
            _ => {}
        }
        let mut children = self.children.clone();
        children.extend(other.children.iter().cloned());
        PlanarTree::from_children(children)
    }

    /// Dot product of a whole sequence; empty sequence gives the trivial tree.
    pub fn dot_all<'a>(factors: impl IntoIterator<Item = &'a PlanarTree>) -> PlanarTree {
        factors.into_iter().fold(PlanarTree::trivial(), |acc, f| {
            acc.dot(f).expect("uniform labelling across factors")
        })
    }

    /// The unique factorization into dot-irreducible trees (trees whose root
    /// has one child): one factor per root child. Trivial tree: empty.
    pub fn irreducible_factors(&self) -> Vec<PlanarTree> {
        self.children
            .iter()
            .map(|c| PlanarTree::from_children(vec![c.clone()]).expect("uniform"))
            .collect()
    }

    /// Grafts `sub` at `at`: the children of `sub`'s root become a new
    /// leftmost or rightmost child block of the target node.
    pub fn graft(
        &self,
        at: NodeRef,
        sub: &PlanarTree,
        side: GraftSide,
    ) -> Result<PlanarTree, TreeError> {
        self.multi_graft(&[(at, sub)], side)
    }

    /// Simultaneous graft at pairwise-distinct targets. Targets refer to
    /// `self`'s own post-order indices throughout.
    pub fn multi_graft(
        &self,
        grafts: &[(NodeRef, &PlanarTree)],
        side: GraftSide,
    ) -> Result<PlanarTree, TreeError> {
        let mut by_target: BTreeMap<NodeRef, &PlanarTree> = BTreeMap::new();
        for &(at, sub) in grafts {
            if let NodeRef::Node(i) = at {
                if i < 1 || i > self.degree {
                    return Err(TreeError::NodeNotInHost(at, self.degree));
                }
            }
            if by_target.insert(at, sub).is_some() {
                return Err(TreeError::DuplicateGraftTarget);
            }
        }
        fn attach(mine: Vec<Node>, sub: Option<&PlanarTree>, side: GraftSide) -> Vec<Node> {
            match sub {
                None => mine,
                Some(s) => {
                    let extra = s.children.to_vec();
                    match side {
                        GraftSide::Leftmost => {
                            let mut out = extra;
                            out.extend(mine);
                            out
                        }
                        GraftSide::Rightmost => {
                            let mut out = mine;
                            out.extend(extra);
                            out
                        }
                    }
                }
            }
        }
        fn walk(
            nodes: &[Node],
            counter: &mut usize,
            by_target: &BTreeMap<NodeRef, &PlanarTree>,
            side: GraftSide,
        ) -> Vec<Node> {
            nodes
                .iter()
                .map(|nd| {
                    let kids = walk(&nd.children, counter, by_target, side);
                    *counter += 1;
                    let sub = by_target.get(&NodeRef::Node(*counter)).copied();
                    Node {
                        label: nd.label,
                        children: attach(kids, sub, side),
                    }
                })
                .collect()
        }
        let mut counter = 0;
        let kids = walk(&self.children, &mut counter, &by_target, side);
        let children = attach(kids, by_target.get(&NodeRef::Root).copied(), side);
        PlanarTree::from_children(children)
    }

    /// All unlabelled trees of degree `n`, in canonical order (Catalan many).
    pub fn enumerate(n: usize) -> Vec<PlanarTree> {
        let mut out: Vec<PlanarTree> = forests(n)
            .into_iter()
            .map(|f| PlanarTree::from_children(f).expect("unlabelled"))
            .collect();
        out.sort();
        out
    }

    /// All trees of degree `n` labelled from `alphabet` (repetition allowed),
    /// in canonical order.
    pub fn enumerate_labelled(n: usize, alphabet: &[Label]) -> Vec<PlanarTree> {
        if n == 0 {
            return vec![PlanarTree::trivial()];
        }
        let mut out = Vec::new();
        for shape in Self::enumerate(n) {
            for labels in (0..n)
                .map(|_| alphabet.iter().copied())
                .multi_cartesian_product()
            {
                out.push(shape.with_labels(&labels));
            }
        }
        out.sort();
        out
    }
}

/// All ordered forests with `n` nodes in total.
fn forests(n: usize) -> Vec<Vec<Node>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for below in forests(first - 1) {
            let head = Node {
                label: None,
                children: below,
            };
            for rest in forests(n - first) {
                let mut forest = Vec::with_capacity(rest.len() + 1);
                forest.push(head.clone());
                forest.extend(rest);
                out.push(forest);
            }
        }
    }
    out
}

fn parse_nodes(b: &[u8], mut pos: usize) -> Result<(Vec<Node>, usize), TreeError> {
    let mut nodes = Vec::new();
    while pos < b.len() && b[pos] == b'(' {
        let (node, next) = parse_node(b, pos)?;
        nodes.push(node);
        pos = next;
    }
    Ok((nodes, pos))
}

fn parse_node(b: &[u8], mut pos: usize) -> Result<(Node, usize), TreeError> {
    debug_assert_eq!(b[pos], b'(');
    pos += 1;
    let mut label = None;
    if pos < b.len() && b[pos].is_ascii_digit() {
        let start = pos;
        while pos < b.len() && b[pos].is_ascii_digit() {
            pos += 1;
        }
        let digits = std::str::from_utf8(&b[start..pos]).expect("ascii digits");
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(TreeError::Malformed(start));
        }
        label = Some(
            digits
                .parse::<Label>()
                .map_err(|_| TreeError::Malformed(start))?,
        );
        if pos < b.len() && b[pos] == b' ' {
            pos += 1;
            if pos >= b.len() || b[pos] != b'(' {
                return Err(TreeError::Malformed(pos));
            }
        }
    }
    let (children, next) = parse_nodes(b, pos)?;
    pos = next;
    if pos >= b.len() || b[pos] != b')' {
        return Err(TreeError::Malformed(pos));
    }
    Ok((Node { label, children }, pos + 1))
}

/// An ordered partition of a tree into consecutive non-trivial convex blocks
/// `t_[1,n1], t_[n1+1,n2], ..., t_[n_{k-1}+1,n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    parent: PlanarTree,
    blocks: Vec<PlanarTree>,
    bounds: Vec<usize>,
}

impl TreePartition {
    /// Splits `parent` at the interior cut indices `0 < c_1 < ... < c_{k-1} < n`.
    pub fn new(parent: &PlanarTree, interior_cuts: &[usize]) -> Result<Self, TreeError> {
        let n = parent.degree();
        if n == 0 {
            return Err(TreeError::BadPartition(interior_cuts.to_vec(), n));
        }
        let mut bounds = Vec::with_capacity(interior_cuts.len() + 2);
        bounds.push(0);
        bounds.extend_from_slice(interior_cuts);
        bounds.push(n);
        if !bounds.windows(2).all(|w| w[0] < w[1]) {
            return Err(TreeError::BadPartition(interior_cuts.to_vec(), n));
        }
        let blocks = bounds
            .windows(2)
            .map(|w| parent.convex(w[0] as i64 + 1, w[1] as i64))
            .collect();
        Ok(TreePartition {
            parent: parent.clone(),
            blocks,
            bounds,
        })
    }

    /// The empty partition of the trivial tree; used by the `t # root := t`
    /// convention at the product level.
    pub fn empty() -> Self {
        TreePartition {
            parent: PlanarTree::trivial(),
            blocks: Vec::new(),
            bounds: vec![0],
        }
    }

    pub fn parent(&self) -> &PlanarTree {
        &self.parent
    }

    pub fn is_partition_of(&self, tree: &PlanarTree) -> bool {
        self.parent == *tree
    }

    pub fn blocks(&self) -> &[PlanarTree] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block boundaries `0 = n_0 < n_1 < ... < n_k = n`.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }
}
