//! Planar binary trees.
//!
//! Full binary trees with in-order-numbered internal vertices and leaves
//! `0..=n`. The over product grafts onto the leftmost leaf, the under product
//! onto the rightmost; peeling the right spine gives the unique factorization
//! into under-irreducible trees, which drives the correspondence with planar
//! rooted trees. The convex slices between branches carry the coproduct and
//! product whose opposite realizes the dual of the planar structure.

use std::fmt;

use itertools::Itertools;
use num::One;
use thiserror::Error;

use crate::combinat::catalan;
use crate::hopf;
use crate::linalg::{extend_bilinear, pairing, tensor_of, BasisKey, Coeff, Combination, TensorKey};
use crate::tree::PlanarTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BinaryError {
    #[error("malformed binary tree text at byte {0}")]
    Malformed(usize),
    #[error("interval [{0},{1}] out of range for degree {2}")]
    OutOfRange(usize, usize, usize),
}

/// A full binary tree; `Leaf` is the unit tree `|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

use BinaryTree::{Leaf, Node};

impl BinaryTree {
    pub fn vertex() -> Self {
        Node(Box::new(Leaf), Box::new(Leaf))
    }

    /// Number of internal vertices; leaves number `degree() + 1`.
    pub fn degree(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => l.degree() + r.degree() + 1,
        }
    }

    pub fn parse(text: &str) -> Result<Self, BinaryError> {
        let b = text.as_bytes();
        let (tree, pos) = parse_binary(b, 0)?;
        if pos != b.len() {
            return Err(BinaryError::Malformed(pos));
        }
        Ok(tree)
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

fn parse_binary(b: &[u8], pos: usize) -> Result<(BinaryTree, usize), BinaryError> {
    match b.get(pos) {
        Some(b'.') => Ok((Leaf, pos + 1)),
        Some(b'(') => {
            let (left, pos) = parse_binary(b, pos + 1)?;
            if b.get(pos) != Some(&b',') {
                return Err(BinaryError::Malformed(pos));
            }
            let (right, pos) = parse_binary(b, pos + 1)?;
            if b.get(pos) != Some(&b')') {
                return Err(BinaryError::Malformed(pos));
            }
            Ok((Node(Box::new(left), Box::new(right)), pos + 1))
        }
        _ => Err(BinaryError::Malformed(pos)),
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => write!(f, "."),
            Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl std::str::FromStr for BinaryTree {
    type Err = BinaryError;

    fn from_str(s: &str) -> Result<Self, BinaryError> {
        BinaryTree::parse(s)
    }
}

impl BasisKey for BinaryTree {
    fn key_string(&self) -> String {
        format!("binary:{self}")
    }
}

pub type BinaryComb = Combination<BinaryTree>;
pub type BinaryTensor = Combination<TensorKey<BinaryTree>>;

/// `x / y`: identify the root of `x` with the leftmost leaf of `y`.
pub fn over(x: &BinaryTree, y: &BinaryTree) -> BinaryTree {
    match y {
        Leaf => x.clone(),
        Node(l, r) => Node(Box::new(over(x, l)), r.clone()),
    }
}

/// `x \ y`: identify the root of `y` with the rightmost leaf of `x`.
pub fn under(x: &BinaryTree, y: &BinaryTree) -> BinaryTree {
    match x {
        Leaf => y.clone(),
        Node(l, r) => Node(l.clone(), Box::new(under(r, y))),
    }
}

/// The unique factorization into under-irreducible trees (right child of the
/// root a leaf): peel the right spine. The leaf tree has no factors.
pub fn under_factors(x: &BinaryTree) -> Vec<BinaryTree> {
    let mut out = Vec::new();
    let mut cur = x;
    while let Node(l, r) = cur {
        out.push(Node(l.clone(), Box::new(Leaf)));
        cur = r;
    }
    out
}

pub fn under_all<'a>(factors: impl IntoIterator<Item = &'a BinaryTree>) -> BinaryTree {
    factors.into_iter().fold(Leaf, |acc, f| under(&acc, f))
}

/// The correspondence with planar rooted trees: the trivial tree to the leaf,
/// an irreducible tree to `phi(t')/Y`, and a dot factorization to the under
/// product of the factor images. Post-order node numbering maps to in-order
/// vertex numbering.
pub fn planar_to_binary(t: &PlanarTree) -> BinaryTree {
    if t.is_trivial() {
        return Leaf;
    }
    let factors = t.irreducible_factors();
    if factors.len() == 1 {
        let child = &factors[0].children()[0];
        let lifted = PlanarTree::from_children(child.children().to_vec())
            .expect("child subtrees keep the labelling mode");
        over(&planar_to_binary(&lifted), &BinaryTree::vertex())
    } else {
        under_all(&factors.iter().map(planar_to_binary).collect::<Vec<_>>())
    }
}

/// Two-sided inverse of [`planar_to_binary`], unwinding the same two cases.
pub fn binary_to_planar(x: &BinaryTree) -> PlanarTree {
    if *x == Leaf {
        return PlanarTree::trivial();
    }
    let factors = under_factors(x);
    if factors.len() == 1 {
        let Node(below, _) = &factors[0] else {
            unreachable!("factors are internal")
        };
        let inner = binary_to_planar(below);
        let node = crate::tree::Node::new(None, inner.children().to_vec());
        PlanarTree::from_children(vec![node]).expect("unlabelled")
    } else {
        PlanarTree::dot_all(&factors.iter().map(binary_to_planar).collect::<Vec<_>>())
    }
}

/// The convex slice `x_[i,j]` between branches `i` and `j`: the binary tree
/// on internal vertices `i+1..=j`, with `x_[i,i]` the leaf.
pub fn convex(x: &BinaryTree, i: usize, j: usize) -> Result<BinaryTree, BinaryError> {
    let n = x.degree();
    if i > j || j > n {
        return Err(BinaryError::OutOfRange(i, j, n));
    }
    Ok(convex_unchecked(x, i, j))
}

fn convex_unchecked(x: &BinaryTree, i: usize, j: usize) -> BinaryTree {
    if i == j {
        return Leaf;
    }
    let Node(l, r) = x else {
        unreachable!("nonempty interval needs an internal vertex")
    };
    let root = l.degree() + 1;
    if j < root {
        convex_unchecked(l, i, j)
    } else if i >= root {
        convex_unchecked(r, i - root, j - root)
    } else {
        Node(
            Box::new(convex_unchecked(l, i, root - 1)),
            Box::new(convex_unchecked(r, 0, j - root)),
        )
    }
}

/// `Δ(x) = Σ_{i=0}^n x_[0,i] ⊗ x_[i,n]`.
pub fn binary_coproduct(x: &BinaryTree) -> BinaryTensor {
    let n = x.degree();
    let mut out = BinaryTensor::zero();
    for i in 0..=n {
        out.add_term(
            TensorKey(convex_unchecked(x, 0, i), convex_unchecked(x, i, n)),
            Coeff::one(),
        );
    }
    out
}

fn replace_leaves(x: &BinaryTree, subs: &[(usize, &BinaryTree)]) -> BinaryTree {
    fn walk(x: &BinaryTree, counter: &mut usize, subs: &[(usize, &BinaryTree)]) -> BinaryTree {
        match x {
            Leaf => {
                let here = *counter;
                *counter += 1;
                subs.iter()
                    .find(|&&(i, _)| i == here)
                    .map(|&(_, s)| s.clone())
                    .unwrap_or(Leaf)
            }
            Node(l, r) => {
                let left = walk(l, counter, subs);
                let right = walk(r, counter, subs);
                Node(Box::new(left), Box::new(right))
            }
        }
    }
    let mut counter = 0;
    walk(x, &mut counter, subs)
}

/// `x * y = Σ x # y`: over all partitions of `y` into boundary-sharing convex
/// slices and order-preserving maps onto the leaves of `x`, glue each block
/// at its leaf. `C(m+n, m)` addends.
pub fn binary_product(x: &BinaryTree, y: &BinaryTree) -> BinaryComb {
    let n = y.degree();
    if n == 0 {
        return BinaryComb::basis(x.clone());
    }
    let m = x.degree();
    let mut acc = BinaryComb::zero();
    for k in 1..=n {
        for cuts in (1..n).combinations(k - 1) {
            let mut bounds = vec![0];
            bounds.extend(cuts);
            bounds.push(n);
            let blocks: Vec<BinaryTree> = bounds
                .windows(2)
                .map(|w| convex_unchecked(y, w[0], w[1]))
                .collect();
            for leaves in (0..=m).combinations(k) {
                let subs: Vec<(usize, &BinaryTree)> =
                    leaves.into_iter().zip(blocks.iter()).collect();
                acc.add_term(replace_leaves(x, &subs), Coeff::one());
            }
        }
    }
    acc
}

pub fn binary_product_lin(a: &BinaryComb, b: &BinaryComb) -> BinaryComb {
    extend_bilinear(a, b, binary_product)
}

/// All binary trees with `n` internal vertices, sorted; Catalan many.
pub fn enumerate_binary(n: usize) -> Vec<BinaryTree> {
    fn build(n: usize) -> Vec<BinaryTree> {
        if n == 0 {
            return vec![Leaf];
        }
        let mut out = Vec::new();
        for left in 0..n {
            for l in build(left) {
                for r in build(n - 1 - left) {
                    out.push(Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
    let mut out = build(n);
    out.sort();
    out
}

/// One verified statement inside a [`DualCheckReport`].
#[derive(Debug, Clone)]
pub struct DualCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of [`loday_ronco_dual_check`]: every violation is listed.
#[derive(Debug, Clone)]
pub struct DualCheckReport {
    pub checks: Vec<DualCheck>,
}

impl DualCheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verifies, degree by degree up to `maxdeg`, that the opposite product with
/// the binary coproduct is a Hopf pair matching the transported structures:
/// graded dimensions, associativity of the opposite product, compatibility
/// `Δ(x *op y) = Δ(x) *op Δ(y)`, equality with the image of the planar
/// product and coproduct, and the pairing duality against the transported
/// dual product.
pub fn loday_ronco_dual_check(maxdeg: usize) -> DualCheckReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(DualCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let planar: Vec<Vec<PlanarTree>> = (0..=maxdeg).map(PlanarTree::enumerate).collect();
    let binary: Vec<Vec<BinaryTree>> = (0..=maxdeg).map(enumerate_binary).collect();
    let op = |x: &BinaryTree, y: &BinaryTree| binary_product(y, x);

    // graded dimensions on both sides
    let dims_ok = (0..=maxdeg)
        .all(|n| planar[n].len() as u128 == catalan(n) && binary[n].len() as u128 == catalan(n));
    push(
        "graded-dimensions",
        dims_ok,
        format!("|Y_n| = |T_n| = c_n for n <= {maxdeg}"),
    );

    // the bijection and its interval compatibility
    let mut bijective = true;
    let mut intervals = true;
    for n in 0..=maxdeg {
        let mut seen = std::collections::BTreeSet::new();
        for t in &planar[n] {
            let x = planar_to_binary(t);
            bijective &= binary_to_planar(&x) == *t;
            seen.insert(x.clone());
            for i in 1..=n {
                for j in i..=n {
                    let lhs = planar_to_binary(&t.convex(i as i64, j as i64));
                    let rhs = convex_unchecked(&x, i - 1, j);
                    intervals &= lhs == rhs;
                }
            }
        }
        bijective &= seen.len() == binary[n].len();
    }
    push(
        "bijection-round-trip",
        bijective,
        format!("planar<->binary bijective for n <= {maxdeg}"),
    );
    push(
        "interval-compatibility",
        intervals,
        "image of t_[i,j] is x_[i-1,j]".to_string(),
    );

    // opposite product associativity
    let mut assoc = true;
    for dx in 0..=maxdeg {
        for dy in 0..=maxdeg - dx {
            for dz in 0..=maxdeg - dx - dy {
                for x in &binary[dx] {
                    for y in &binary[dy] {
                        for z in &binary[dz] {
                            let left =
                                extend_bilinear(&op(x, y), &BinaryComb::basis(z.clone()), op);
                            let right =
                                extend_bilinear(&BinaryComb::basis(x.clone()), &op(y, z), op);
                            assoc &= left == right;
                        }
                    }
                }
            }
        }
    }
    push(
        "opposite-associativity",
        assoc,
        format!("(x *op y) *op z = x *op (y *op z), degree sums <= {maxdeg}"),
    );

    // Hopf compatibility of the opposite product with the coproduct
    let mut compat = true;
    for dx in 0..=maxdeg {
        for dy in 0..=maxdeg - dx {
            for x in &binary[dx] {
                for y in &binary[dy] {
                    let lhs = op(x, y).extend_linear(binary_coproduct);
                    let rhs = extend_bilinear(
                        &binary_coproduct(x),
                        &binary_coproduct(y),
                        |p: &TensorKey<BinaryTree>, q: &TensorKey<BinaryTree>| {
                            tensor_of(&op(&p.0, &q.0), &op(&p.1, &q.1))
                        },
                    );
                    compat &= lhs == rhs;
                }
            }
        }
    }
    push(
        "opposite-hopf-compatibility",
        compat,
        format!("Δ(x *op y) = Δ(x) *op Δ(y), degree sums <= {maxdeg}"),
    );

    // native structure equals the transported planar structure
    let mut transport = true;
    for dt in 0..=maxdeg {
        for du in 0..=maxdeg - dt {
            for t in &planar[dt] {
                for u in &planar[du] {
                    let lhs = hopf::product(t, u).map_keys(planar_to_binary);
                    let rhs = binary_product(&planar_to_binary(t), &planar_to_binary(u));
                    transport &= lhs == rhs;
                }
            }
        }
        for t in &planar[dt] {
            let lhs = hopf::coproduct(t)
                .map_keys(|k| TensorKey(planar_to_binary(&k.0), planar_to_binary(&k.1)));
            let rhs = binary_coproduct(&planar_to_binary(t));
            transport &= lhs == rhs;
        }
    }
    push(
        "product-transport",
        transport,
        format!("binary structure is the image of the planar one, degree sums <= {maxdeg}"),
    );

    // pairing duality: <phi(t ._d w), z> = <phi(t) ⊗ phi(w), Δ(z)>
    let mut duality = true;
    for dt in 0..=maxdeg {
        for dw in 0..=maxdeg - dt {
            for t in &planar[dt] {
                for w in &planar[dw] {
                    let transported = hopf::dual_product(t, w).map_keys(planar_to_binary);
                    let xw = tensor_of(
                        &BinaryComb::basis(planar_to_binary(t)),
                        &BinaryComb::basis(planar_to_binary(w)),
                    );
                    for z in &binary[dt + dw] {
                        let lhs = pairing(&transported, &BinaryComb::basis(z.clone()));
                        let rhs = pairing(&xw, &binary_coproduct(z));
                        duality &= lhs == rhs;
                    }
                }
            }
        }
    }
    push(
        "dual-pairing",
        duality,
        format!("transported dual product pairs against Δ, degree sums <= {maxdeg}"),
    );

    DualCheckReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;
    use crate::linalg::coeff_int;

    fn b(s: &str) -> BinaryTree {
        BinaryTree::parse(s).unwrap()
    }

    fn t(s: &str) -> PlanarTree {
        PlanarTree::parse(s).unwrap()
    }

    #[test]
    fn parse_and_render() {
        for s in [".", "(.,.)", "((.,.),.)", "(.,((.,.),.))"] {
            assert_eq!(b(s).to_string(), s);
        }
        assert!(BinaryTree::parse("(.,)").is_err());
        assert!(BinaryTree::parse("(.,.)x").is_err());
        assert_eq!(b("(.,.)").degree(), 1);
        assert_eq!(b("((.,.),.)").degree(), 2);
    }

    #[test]
    fn over_under_units_and_examples() {
        let y = BinaryTree::vertex();
        let comb2 = b("((.,.),.)");
        assert_eq!(over(&Leaf, &y), y);
        assert_eq!(over(&y, &Leaf), y);
        assert_eq!(under(&y, &Leaf), y);
        assert_eq!(under(&Leaf, &y), y);
        assert_eq!(over(&y, &y), comb2);
        assert_eq!(under(&y, &y), b("(.,(.,.))"));
    }

    #[test]
    fn under_associativity() {
        let all: Vec<BinaryTree> = (0..=2).flat_map(enumerate_binary).collect();
        for x in &all {
            for y in &all {
                for z in &all {
                    if x.degree() + y.degree() + z.degree() > 4 {
                        continue;
                    }
                    assert_eq!(under(&under(x, y), z), under(x, &under(y, z)));
                }
            }
        }
    }

    #[test]
    fn under_factorization_round_trips() {
        assert!(under_factors(&Leaf).is_empty());
        let right_comb = b("(.,(.,(.,.)))");
        assert_eq!(
            under_factors(&right_comb),
            vec![
                BinaryTree::vertex(),
                BinaryTree::vertex(),
                BinaryTree::vertex()
            ]
        );
        for n in 0..=5 {
            for x in enumerate_binary(n) {
                let factors = under_factors(&x);
                assert_eq!(under_all(&factors), x);
                // each factor has a leaf right child
                for f in &factors {
                    let Node(_, r) = f else { panic!("leaf factor") };
                    assert_eq!(**r, Leaf);
                }
            }
        }
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(planar_to_binary(&PlanarTree::trivial()), Leaf);
        assert_eq!(planar_to_binary(&t("(())")), BinaryTree::vertex());
        assert_eq!(planar_to_binary(&t("((()))")), b("((.,.),.)"));
        assert_eq!(planar_to_binary(&t("(()())")), b("(.,(.,.))"));
        assert_eq!(binary_to_planar(&Leaf), PlanarTree::trivial());
    }

    #[test]
    fn phi_bijective_and_compatible_with_dot() {
        for n in 0..=5 {
            let trees = PlanarTree::enumerate(n);
            let mut images = std::collections::BTreeSet::new();
            for tree in &trees {
                let x = planar_to_binary(tree);
                assert_eq!(x.degree(), n);
                assert_eq!(binary_to_planar(&x), *tree, "round trip at {tree}");
                images.insert(x);
            }
            assert_eq!(images.len() as u128, catalan(n));
        }
        for a in (0..=2).flat_map(PlanarTree::enumerate) {
            for c in (0..=2).flat_map(PlanarTree::enumerate) {
                let glued = a.dot(&c).unwrap();
                assert_eq!(
                    planar_to_binary(&glued),
                    under(&planar_to_binary(&a), &planar_to_binary(&c))
                );
            }
        }
        // the dot factorization maps onto the under factorization, and
        // irreducible trees land on over-products with a vertex
        for n in 0..=5usize {
            for tree in PlanarTree::enumerate(n) {
                let factors = tree.irreducible_factors();
                let images: Vec<BinaryTree> = factors.iter().map(planar_to_binary).collect();
                assert_eq!(under_factors(&planar_to_binary(&tree)), images);
                if factors.len() == 1 {
                    let Node(_, r) = planar_to_binary(&tree) else {
                        panic!("irreducible image must be internal")
                    };
                    assert_eq!(*r, Leaf);
                }
            }
        }
    }

    #[test]
    fn convex_slices() {
        for n in 0..=4 {
            for x in enumerate_binary(n) {
                assert_eq!(convex(&x, 0, n).unwrap(), x);
                for i in 0..=n {
                    assert_eq!(convex(&x, i, i).unwrap(), Leaf);
                }
            }
        }
        assert!(convex(&BinaryTree::vertex(), 0, 2).is_err());
        assert!(convex(&BinaryTree::vertex(), 1, 0).is_err());
    }

    #[test]
    fn convex_matches_planar_intervals() {
        for n in 0..=4usize {
            for tree in PlanarTree::enumerate(n) {
                let x = planar_to_binary(&tree);
                for i in 1..=n {
                    for j in i..=n {
                        assert_eq!(
                            planar_to_binary(&tree.convex(i as i64, j as i64)),
                            convex(&x, i - 1, j).unwrap(),
                            "interval [{i},{j}] of {tree}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        let d = binary_coproduct(&Leaf);
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coeff(&TensorKey(Leaf, Leaf)), coeff_int(1));
        let y = BinaryTree::vertex();
        let d = binary_coproduct(&y);
        assert_eq!(d.coefficient_sum(), coeff_int(2));
        assert_eq!(d.coeff(&TensorKey(Leaf, y.clone())), coeff_int(1));
        assert_eq!(d.coeff(&TensorKey(y.clone(), Leaf)), coeff_int(1));
    }

    #[test]
    fn product_units_and_counts() {
        let y = BinaryTree::vertex();
        assert_eq!(binary_product(&y, &Leaf), BinaryComb::basis(y.clone()));
        assert_eq!(binary_product(&Leaf, &y), BinaryComb::basis(y.clone()));
        for x in enumerate_binary(2) {
            for z in enumerate_binary(3) {
                assert_eq!(binary_product(&x, &z).coefficient_sum(), coeff_int(10));
            }
        }
        for dx in 0..=4usize {
            for x in enumerate_binary(dx) {
                for dz in 0..=(4 - dx) {
                    for z in enumerate_binary(dz) {
                        assert_eq!(
                            binary_product(&x, &z).coefficient_sum(),
                            coeff_int(binomial(dx + dz, dx) as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn product_and_coproduct_transport() {
        for dt in 0..=4usize {
            for du in 0..=(4 - dt) {
                for tree in PlanarTree::enumerate(dt) {
                    for u in PlanarTree::enumerate(du) {
                        let lhs = hopf::product(&tree, &u).map_keys(planar_to_binary);
                        let rhs = binary_product(&planar_to_binary(&tree), &planar_to_binary(&u));
                        assert_eq!(lhs, rhs, "product transport at {tree}, {u}");
                    }
                }
            }
            for tree in PlanarTree::enumerate(dt) {
                let lhs = hopf::coproduct(&tree)
                    .map_keys(|k| TensorKey(planar_to_binary(&k.0), planar_to_binary(&k.1)));
                assert_eq!(lhs, binary_coproduct(&planar_to_binary(&tree)));
            }
        }
    }

    #[test]
    fn dual_check_passes() {
        let report = loday_ronco_dual_check(4);
        for check in &report.checks {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
        assert!(report.all_pass());
    }
}
