//! The Hopf algebra of planar trees: coproduct, counit, hash product and the
//! product summing over partitions and order-preserving maps, the antipode of
//! the graded connected structure, and the dual product/coproduct induced by
//! the infinitesimal bialgebra.
//!
//! Everything here works verbatim for labelled trees: the underlying shapes
//! are operated on and labels ride along.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::One;
use thiserror::Error;

use crate::combinat::compositions_into;
use crate::linalg::{extend_bilinear, tensor_of, Coeff, Combination, TensorKey};
use crate::tree::{GraftSide, NodeRef, PlanarTree, TreeError, TreePartition};

pub use crate::linalg::pairing;

pub type TreeComb = Combination<PlanarTree>;
pub type TreeTensor = Combination<TensorKey<PlanarTree>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("partition does not partition the right factor")]
    NotPartitionOf,
    #[error("order-preserving map must be strictly increasing in N(t)")]
    NotOrderPreserving,
    #[error("order map has {0} targets but the partition has {1} blocks")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A strictly increasing assignment of partition blocks to nodes of a target
/// tree (post-order ascending, root maximal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap(Vec<NodeRef>);

impl OrderMap {
    pub fn new(targets: Vec<NodeRef>) -> Result<Self, HopfError> {
        if !targets.windows(2).all(|w| w[0] < w[1]) {
            return Err(HopfError::NotOrderPreserving);
        }
        Ok(OrderMap(targets))
    }

    pub fn targets(&self) -> &[NodeRef] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All order-preserving maps of `k` blocks into `N(t)`: the `C(m+1, k)`
/// increasing choices of targets.
pub fn order_maps(t: &PlanarTree, k: usize) -> Vec<OrderMap> {
    t.node_refs()
        .into_iter()
        .combinations(k)
        .map(OrderMap)
        .collect()
}

/// `Δ(t) = Σ_{k=0}^{n} t_[1,k] ⊗ t_[k+1,n]`: n+1 summands, all coefficients 1.
pub fn coproduct(t: &PlanarTree) -> TreeTensor {
    let n = t.degree() as i64;
    let mut out = TreeTensor::zero();
    for k in 0..=n {
        out.add_term(TensorKey(t.convex(1, k), t.convex(k + 1, n)), Coeff::one());
    }
    out
}

pub fn coproduct_lin(v: &TreeComb) -> TreeTensor {
    v.extend_linear(coproduct)
}

/// Coefficient of the trivial tree.
pub fn counit(v: &TreeComb) -> Coeff {
    v.coeff(&PlanarTree::trivial())
}

/// The hash product `t #_{P,f} u`: glue the root of each block of `P` at its
/// assigned node of `t`, rightmost against the existing children. The trivial
/// right factor takes the empty partition and gives `t` back.
pub fn hash_product(
    t: &PlanarTree,
    u: &PlanarTree,
    p: &TreePartition,
    f: &OrderMap,
) -> Result<PlanarTree, HopfError> {
    if !p.is_partition_of(u) {
        return Err(HopfError::NotPartitionOf);
    }
    if f.len() != p.len() {
        return Err(HopfError::SizeMismatch(f.len(), p.len()));
    }
    if u.is_trivial() {
        return Ok(t.clone());
    }
    let grafts: Vec<(NodeRef, &PlanarTree)> =
        f.targets().iter().copied().zip(p.blocks().iter()).collect();
    Ok(t.multi_graft(&grafts, GraftSide::Rightmost)?)
}

/// `t * u = Σ_{P,f} t #_{P,f} u` over all partitions of `u` and all
/// order-preserving maps into `N(t)`; `C(m+n, m)` addends with multiplicity.
/// Both trees must share the labelling mode.
pub fn product(t: &PlanarTree, u: &PlanarTree) -> TreeComb {
    if u.is_trivial() {
        return TreeComb::basis(t.clone());
    }
    let mut acc = TreeComb::zero();
    for p in u.all_partitions() {
        for f in order_maps(t, p.len()) {
            let glued = hash_product(t, u, &p, &f).expect("enumerated pairs are valid");
            acc.add_term(glued, Coeff::one());
        }
    }
    acc
}

pub fn product_lin(a: &TreeComb, b: &TreeComb) -> TreeComb {
    extend_bilinear(a, b, product)
}

/// Componentwise product on tensor squares: `(a⊗b)(c⊗d) = mul(a,c) ⊗ mul(b,d)`.
pub fn tensor_product_with(
    x: &TreeTensor,
    y: &TreeTensor,
    mut mul: impl FnMut(&PlanarTree, &PlanarTree) -> TreeComb,
) -> TreeTensor {
    extend_bilinear(
        x,
        y,
        |p: &TensorKey<PlanarTree>, q: &TensorKey<PlanarTree>| {
            tensor_of(&mul(&p.0, &q.0), &mul(&p.1, &q.1))
        },
    )
}

/// Antipode of the graded connected Hopf algebra `(K[T_∞], *, Δ)`, by the
/// standard recursion `S(t) = -Σ_{k<n} S(t_[1,k]) * t_[k+1,n]`, `S(root) = root`.
pub fn antipode(v: &TreeComb) -> TreeComb {
    let mut memo: BTreeMap<PlanarTree, TreeComb> = BTreeMap::new();
    v.extend_linear(|t| antipode_tree(t, &mut memo))
}

fn antipode_tree(t: &PlanarTree, memo: &mut BTreeMap<PlanarTree, TreeComb>) -> TreeComb {
    if t.is_trivial() {
        return TreeComb::basis(PlanarTree::trivial());
    }
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let n = t.degree() as i64;
    let mut acc = TreeComb::zero();
    for k in 0..n {
        let left = antipode_tree(&t.convex(1, k), memo);
        let right = t.convex(k + 1, n);
        acc += left.extend_linear(|s| product(s, &right));
    }
    let result = -acc;
    memo.insert(t.clone(), result.clone());
    result
}

/// Nodes of the branch to the leftmost leaf, bottom to top, ending at the
/// root. The trivial tree yields just the root.
pub fn leftmost_branch(t: &PlanarTree) -> Vec<NodeRef> {
    let mut sizes = Vec::new();
    let mut cur = t.children().first();
    while let Some(nd) = cur {
        sizes.push(nd.size());
        cur = nd.children().first();
    }
    // a chain node's post-order index is its subtree size
    sizes.reverse();
    sizes
        .into_iter()
        .map(NodeRef::Node)
        .chain(std::iter::once(NodeRef::Root))
        .collect()
}

/// The dual product `t ·_d w`: sum over ordered groupings of the irreducible
/// factor sequence of `t` and order-preserving maps into the leftmost branch
/// of `w`, each group glued leftmost at its node. `C(k+l, k)` addends, where
/// `k` counts irreducible factors of `t` and `l+1` the branch nodes of `w`.
pub fn dual_product(t: &PlanarTree, w: &PlanarTree) -> TreeComb {
    let factors = t.irreducible_factors();
    if factors.is_empty() {
        return TreeComb::basis(w.clone());
    }
    // Earlier factor groups must land nearer the root: a block glued leftmost
    // at a higher branch node precedes everything below it in post order, and
    // the pairing duality against Δ fixes exactly that assignment.
    let mut branch = leftmost_branch(w);
    branch.reverse();
    let k = factors.len();
    let mut acc = TreeComb::zero();
    for j in 1..=k.min(branch.len()) {
        for comp in compositions_into(k, j) {
            let mut groups = Vec::with_capacity(j);
            let mut at = 0;
            for part in &comp {
                groups.push(PlanarTree::dot_all(&factors[at..at + part]));
                at += part;
            }
            for sel in branch.iter().copied().combinations(j) {
                let grafts: Vec<(NodeRef, &PlanarTree)> =
                    sel.into_iter().zip(groups.iter()).collect();
                let glued = w
                    .multi_graft(&grafts, GraftSide::Leftmost)
                    .expect("branch nodes are distinct and in range");
                acc.add_term(glued, Coeff::one());
            }
        }
    }
    acc
}

/// Deconcatenation of the irreducible factor sequence:
/// `Δ_d(t_1 ⋯ t_k) = Σ_i t_1⋯t_i ⊗ t_{i+1}⋯t_k`.
pub fn dual_coproduct(t: &PlanarTree) -> TreeTensor {
    let factors = t.irreducible_factors();
    let k = factors.len();
    let mut out = TreeTensor::zero();
    for i in 0..=k {
        out.add_term(
            TensorKey(
                PlanarTree::dot_all(&factors[..i]),
                PlanarTree::dot_all(&factors[i..]),
            ),
            Coeff::one(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;
    use crate::linalg::coeff_int;

    fn t(s: &str) -> PlanarTree {
        PlanarTree::parse(s).unwrap()
    }

    fn trees_up_to(maxdeg: usize) -> Vec<PlanarTree> {
        (0..=maxdeg).flat_map(PlanarTree::enumerate).collect()
    }

    fn counit_left(x: &TreeTensor) -> TreeComb {
        let mut out = TreeComb::zero();
        for (TensorKey(a, b), c) in x.iter() {
            if a.is_trivial() {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }

    fn counit_right(x: &TreeTensor) -> TreeComb {
        let mut out = TreeComb::zero();
        for (TensorKey(a, b), c) in x.iter() {
            if b.is_trivial() {
                out.add_term(a.clone(), c.clone());
            }
        }
        out
    }

    #[test]
    fn coproduct_summands() {
        let trivial = PlanarTree::trivial();
        let d = coproduct(&trivial);
        assert_eq!(d.num_terms(), 1);
        assert_eq!(
            d.coeff(&TensorKey(trivial.clone(), trivial.clone())),
            coeff_int(1)
        );

        for tree in PlanarTree::enumerate(6).into_iter().take(10) {
            let d = coproduct(&tree);
            assert_eq!(d.coefficient_sum(), coeff_int(7));
            assert_eq!(
                d.coeff(&TensorKey(trivial.clone(), tree.clone())),
                coeff_int(1)
            );
            assert_eq!(
                d.coeff(&TensorKey(tree.clone(), trivial.clone())),
                coeff_int(1)
            );
        }
    }

    #[test]
    fn counit_laws() {
        for tree in trees_up_to(5) {
            let d = coproduct(&tree);
            assert_eq!(counit_left(&d), TreeComb::basis(tree.clone()));
            assert_eq!(counit_right(&d), TreeComb::basis(tree.clone()));
        }
    }

    #[test]
    fn counit_values() {
        assert_eq!(
            counit(&TreeComb::basis(PlanarTree::trivial())),
            coeff_int(1)
        );
        assert_eq!(counit(&TreeComb::basis(t("(())"))), coeff_int(0));
        let mut v = TreeComb::basis(PlanarTree::trivial()).scale(&coeff_int(2));
        v.add_term(t("(())"), coeff_int(3));
        assert_eq!(counit(&v), coeff_int(2));
    }

    #[test]
    fn coassociativity_small() {
        for tree in trees_up_to(5) {
            let d = coproduct(&tree);
            let left = d.extend_linear(|TensorKey(a, b)| {
                coproduct(a).map_keys(|TensorKey(x, y)| {
                    crate::linalg::MultiKey(vec![x.clone(), y.clone(), b.clone()])
                })
            });
            let right = d.extend_linear(|TensorKey(a, b)| {
                coproduct(b).map_keys(|TensorKey(x, y)| {
                    crate::linalg::MultiKey(vec![a.clone(), x.clone(), y.clone()])
                })
            });
            assert_eq!(left, right, "coassociativity at {tree}");
        }
    }

    #[test]
    fn hash_product_trivial_conventions() {
        let u = t("((())())");
        let root = PlanarTree::trivial();
        // root # u = u: the single map sends every block to the root
        let p = TreePartition::new(&u, &[]).unwrap();
        let f = OrderMap::new(vec![NodeRef::Root]).unwrap();
        assert_eq!(hash_product(&root, &u, &p, &f).unwrap(), u);
        // t # root := t with the empty partition
        let empty = TreePartition::empty();
        let none = OrderMap::new(vec![]).unwrap();
        assert_eq!(hash_product(&u, &root, &empty, &none).unwrap(), u);
        // mismatched partition is rejected
        let other = t("(()())");
        assert_eq!(
            hash_product(&root, &other, &p, &f),
            Err(HopfError::NotPartitionOf)
        );
    }

    #[test]
    fn hash_product_single_on_single() {
        let single = t("(())");
        let p = TreePartition::new(&single, &[]).unwrap();
        let maps = order_maps(&single, 1);
        assert_eq!(maps.len(), 2);
        let glued: Vec<PlanarTree> = maps
            .iter()
            .map(|f| hash_product(&single, &single, &p, f).unwrap())
            .collect();
        assert!(glued.contains(&t("((()))"))); // f -> node: ladder
        assert!(glued.contains(&t("(()())"))); // f -> root: corolla
    }

    #[test]
    fn order_map_counts() {
        let tree = t("(()())");
        for k in 0..=4 {
            assert_eq!(order_maps(&tree, k).len() as u128, binomial(3, k));
        }
        assert!(OrderMap::new(vec![NodeRef::Root, NodeRef::Node(1)]).is_err());
    }

    #[test]
    fn product_units_and_counts() {
        let root = PlanarTree::trivial();
        for tree in trees_up_to(3) {
            assert_eq!(product(&tree, &root), TreeComb::basis(tree.clone()));
            assert_eq!(product(&root, &tree), TreeComb::basis(tree.clone()));
        }
        for a in trees_up_to(5) {
            for b in trees_up_to(5 - a.degree()) {
                let m = a.degree();
                let n = b.degree();
                assert_eq!(
                    product(&a, &b).coefficient_sum(),
                    coeff_int(binomial(m + n, m) as i64),
                    "addend count for {a} * {b}"
                );
            }
        }
    }

    #[test]
    fn product_fig_count_two_by_three() {
        for a in PlanarTree::enumerate(2) {
            for b in PlanarTree::enumerate(3) {
                assert_eq!(product(&a, &b).coefficient_sum(), coeff_int(10));
            }
        }
    }

    #[test]
    fn product_associativity_small() {
        let all = trees_up_to(4);
        for a in &all {
            for b in &all {
                if a.degree() + b.degree() > 4 {
                    continue;
                }
                for c in &all {
                    if a.degree() + b.degree() + c.degree() > 4 {
                        continue;
                    }
                    let left = product_lin(&product(a, b), &TreeComb::basis(c.clone()));
                    let right = product_lin(&TreeComb::basis(a.clone()), &product(b, c));
                    assert_eq!(left, right, "associativity at {a}, {b}, {c}");
                }
            }
        }
    }

    #[test]
    fn hopf_compatibility_small() {
        for a in trees_up_to(4) {
            for b in trees_up_to(4 - a.degree()) {
                let lhs = coproduct_lin(&product(&a, &b));
                let rhs = tensor_product_with(&coproduct(&a), &coproduct(&b), product);
                assert_eq!(lhs, rhs, "Δ(u*v) = Δ(u)*Δ(v) at {a}, {b}");
            }
        }
    }

    #[test]
    fn infinitesimal_relation_small() {
        for a in trees_up_to(4) {
            for b in trees_up_to(4 - a.degree()) {
                let lhs = coproduct(&a.dot(&b).unwrap());
                // Δ(x)(1⊗y) + (x⊗1)Δ(y) − x⊗y
                let mut rhs = coproduct(&a).extend_linear(|TensorKey(p, q)| {
                    TreeTensor::basis(TensorKey(p.clone(), q.dot(&b).unwrap()))
                });
                rhs += coproduct(&b).extend_linear(|TensorKey(p, q)| {
                    TreeTensor::basis(TensorKey(a.dot(p).unwrap(), q.clone()))
                });
                rhs.add_term(TensorKey(a.clone(), b.clone()), coeff_int(-1));
                assert_eq!(lhs, rhs, "infinitesimal relation at {a}, {b}");
            }
        }
    }

    #[test]
    fn antipode_base_cases() {
        let root = PlanarTree::trivial();
        assert_eq!(
            antipode(&TreeComb::basis(root.clone())),
            TreeComb::basis(root)
        );
        let single = t("(())");
        assert_eq!(
            antipode(&TreeComb::basis(single.clone())),
            TreeComb::basis(single).scale(&coeff_int(-1))
        );
    }

    #[test]
    fn antipode_identity() {
        for tree in trees_up_to(4) {
            let mut acc = TreeComb::zero();
            for (TensorKey(a, b), c) in coproduct(&tree).iter() {
                let part = product_lin(
                    &antipode(&TreeComb::basis(a.clone())),
                    &TreeComb::basis(b.clone()),
                );
                acc += part.scale(c);
            }
            let expected = if tree.is_trivial() {
                TreeComb::basis(PlanarTree::trivial())
            } else {
                TreeComb::zero()
            };
            assert_eq!(acc, expected, "m(S⊗id)Δ = ηε at {tree}");
        }
    }

    #[test]
    fn leftmost_branch_examples() {
        assert_eq!(leftmost_branch(&PlanarTree::trivial()), vec![NodeRef::Root]);
        assert_eq!(
            leftmost_branch(&t("(((())))")),
            vec![
                NodeRef::Node(1),
                NodeRef::Node(2),
                NodeRef::Node(3),
                NodeRef::Root
            ]
        );
        assert_eq!(
            leftmost_branch(&t("(()()())")),
            vec![NodeRef::Node(1), NodeRef::Root]
        );
        assert_eq!(
            leftmost_branch(&t("((()(()))(()()))")),
            vec![NodeRef::Node(1), NodeRef::Node(4), NodeRef::Root]
        );
    }

    #[test]
    fn dual_product_examples() {
        let single = t("(())");
        let out = dual_product(&single, &single);
        assert_eq!(out.coeff(&t("((()))")), coeff_int(1));
        assert_eq!(out.coeff(&t("(()())")), coeff_int(1));
        assert_eq!(out.coefficient_sum(), coeff_int(2));
        // t ·_d root = t for irreducible t
        let ladder = t("((()))");
        assert_eq!(
            dual_product(&ladder, &PlanarTree::trivial()),
            TreeComb::basis(ladder.clone())
        );
        // root ·_d w = w
        assert_eq!(
            dual_product(&PlanarTree::trivial(), &ladder),
            TreeComb::basis(ladder.clone())
        );
        // k = 2 factors against l = 2: six addends
        let corolla2 = t("(()())");
        assert_eq!(
            dual_product(&corolla2, &ladder).coefficient_sum(),
            coeff_int(6)
        );
    }

    #[test]
    fn dual_product_addend_counts() {
        for a in trees_up_to(4) {
            for b in trees_up_to(4 - a.degree()) {
                let k = a.irreducible_factors().len();
                let l = leftmost_branch(&b).len() - 1;
                let expect = if k == 0 { 1 } else { binomial(k + l, k) };
                assert_eq!(
                    dual_product(&a, &b).coefficient_sum(),
                    coeff_int(expect as i64),
                    "count for {a} ._d {b}"
                );
            }
        }
    }

    #[test]
    fn dual_coproduct_examples() {
        let root = PlanarTree::trivial();
        let d = dual_coproduct(&root);
        assert_eq!(d.num_terms(), 1);
        assert_eq!(
            d.coeff(&TensorKey(root.clone(), root.clone())),
            coeff_int(1)
        );

        let ladder = t("((()))");
        let d = dual_coproduct(&ladder);
        assert_eq!(d.coefficient_sum(), coeff_int(2));
        assert_eq!(
            d.coeff(&TensorKey(root.clone(), ladder.clone())),
            coeff_int(1)
        );
        assert_eq!(
            d.coeff(&TensorKey(ladder.clone(), root.clone())),
            coeff_int(1)
        );

        let corolla2 = t("(()())");
        assert_eq!(dual_coproduct(&corolla2).coefficient_sum(), coeff_int(3));
    }

    /// Brute-force dual product straight from the pairing definition:
    /// the coefficient of `u` is the multiplicity of `t ⊗ w` in `Δ(u)`.
    fn dual_product_oracle(a: &PlanarTree, b: &PlanarTree) -> TreeComb {
        let mut out = TreeComb::zero();
        let key = TensorKey(a.clone(), b.clone());
        for u in PlanarTree::enumerate(a.degree() + b.degree()) {
            let mult = coproduct(&u).coeff(&key);
            out.add_term(u, mult);
        }
        out
    }

    #[test]
    fn dual_product_matches_pairing_oracle() {
        for a in trees_up_to(4) {
            for b in trees_up_to(4 - a.degree()) {
                assert_eq!(
                    dual_product(&a, &b),
                    dual_product_oracle(&a, &b),
                    "duality at {a} ._d {b}"
                );
            }
        }
    }

    #[test]
    fn duality_intertwines_both_ways() {
        for du in 0..=4usize {
            let us = PlanarTree::enumerate(du);
            for a in trees_up_to(du) {
                for b in PlanarTree::enumerate(du - a.degree()) {
                    let ab = tensor_of(&TreeComb::basis(a.clone()), &TreeComb::basis(b.clone()));
                    for u in &us {
                        // <t ._d w, u> = <t ⊗ w, Δ(u)>
                        let lhs = pairing(&dual_product(&a, &b), &TreeComb::basis(u.clone()));
                        let rhs = pairing(&ab, &coproduct(u));
                        assert_eq!(lhs, rhs);
                        // <Δ_d(u), t ⊗ w> = <u, t · w>
                        let lhs = pairing(&dual_coproduct(u), &ab);
                        let rhs = pairing(
                            &TreeComb::basis(u.clone()),
                            &TreeComb::basis(a.dot(&b).unwrap()),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn labelled_laws_ride_along() {
        // alphabet {1,2}: the same axioms hold with labels carried through
        let all: Vec<PlanarTree> = (0..=3)
            .flat_map(|n| PlanarTree::enumerate_labelled(n, &[1, 2]))
            .collect();
        for a in &all {
            for b in &all {
                if a.degree() + b.degree() > 3 {
                    continue;
                }
                let m = a.degree();
                let n = b.degree();
                assert_eq!(
                    product(a, b).coefficient_sum(),
                    coeff_int(binomial(m + n, m) as i64)
                );
                let lhs = coproduct_lin(&product(a, b));
                let rhs = tensor_product_with(&coproduct(a), &coproduct(b), product);
                assert_eq!(lhs, rhs, "labelled Hopf compatibility at {a}, {b}");
            }
        }
    }

    #[test]
    fn labelled_product_keeps_labels() {
        let a = t("((1))");
        let b = t("((2))");
        let out = product(&a, &b);
        assert_eq!(out.coefficient_sum(), coeff_int(2));
        assert_eq!(out.coeff(&t("((1 (2)))")), coeff_int(1));
        assert_eq!(out.coeff(&t("((1)(2))")), coeff_int(1));
    }

    #[test]
    fn bilinear_extension_agrees_on_basis() {
        // the extension of a basis rule reproduces the rule itself
        let dot_rule = |a: &PlanarTree, b: &PlanarTree| TreeComb::basis(a.dot(b).unwrap());
        for a in trees_up_to(3) {
            for b in trees_up_to(3) {
                let ext = extend_bilinear(
                    &TreeComb::basis(a.clone()),
                    &TreeComb::basis(b.clone()),
                    dot_rule,
                );
                assert_eq!(ext, TreeComb::basis(a.dot(&b).unwrap()));
            }
        }
    }
}
