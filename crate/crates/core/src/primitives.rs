//! The projection onto primitive elements and its dimension bookkeeping.
//!
//! On the augmentation ideal the operator `e = Σ (-1)^n mult^n ∘ Δ̄^(n)` is an
//! idempotent whose image is the primitive part; applied to irreducible basis
//! trees it yields an explicit primitive basis. Component dimensions follow
//! the recursion `b_n = a_n - Σ_{k=1}^{n-1} a_k b_{n-k}` coming from
//! `f = (1 - g)^{-1}`, cross-checkable against exact ranks.

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::combinat::{catalan_big, double_factorial_odd_big, factorial_big};
use crate::hopf::{self, TreeComb, TreeTensor};
use crate::labelled::{self, Family, NTree};
use crate::linalg::{rank_of, Coeff, Combination, MultiKey, TensorKey};
use crate::tree::PlanarTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimError {
    #[error("element has a nonzero counit component")]
    NonzeroCounit,
    #[error("slash mode requires n-tree basis keys, got {0}")]
    NotNTree(String),
}

/// Which multiplication (and matching coproduct) the idempotent series uses:
/// dot with Δ for unlabelled or X-labelled trees, slash with Δ_s for the
/// n-tree families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dot,
    Slash,
}

fn coproduct_for(mode: Mode, t: &PlanarTree) -> Result<TreeTensor, PrimError> {
    match mode {
        Mode::Dot => Ok(hopf::coproduct(t)),
        Mode::Slash => {
            let nt = NTree::new(t.clone()).map_err(|_| PrimError::NotNTree(t.to_string()))?;
            Ok(labelled::coproduct_std(&nt))
        }
    }
}

fn multiply_legs(mode: Mode, legs: &[PlanarTree]) -> PlanarTree {
    legs.iter()
        .fold(PlanarTree::trivial(), |acc, leg| match mode {
            Mode::Dot => acc.dot(leg).expect("uniform labelling"),
            Mode::Slash => labelled::slash_trees(&acc, leg),
        })
}

fn ensure_augmentation(v: &TreeComb) -> Result<(), PrimError> {
    if hopf::counit(v).is_zero() {
        Ok(())
    } else {
        Err(PrimError::NonzeroCounit)
    }
}

/// `Δ̄(x) = Δ(x) - 1⊗x - x⊗1` on the augmentation ideal; degree-1 trees map
/// to zero.
pub fn reduced_coproduct(v: &TreeComb, mode: Mode) -> Result<TreeTensor, PrimError> {
    ensure_augmentation(v)?;
    let mut out = TreeTensor::zero();
    for (t, c) in v.iter() {
        for (key, mult) in reduced_coproduct_tree(t, mode)?.iter() {
            out.add_term(key.clone(), c * mult);
        }
    }
    Ok(out)
}

fn reduced_coproduct_tree(t: &PlanarTree, mode: Mode) -> Result<TreeTensor, PrimError> {
    let full = coproduct_for(mode, t)?;
    let mut out = TreeTensor::zero();
    for (key, c) in full.iter() {
        if key.0.is_trivial() || key.1.is_trivial() {
            continue;
        }
        out.add_term(key.clone(), c.clone());
    }
    Ok(out)
}

/// `Δ̄^(n)`: identity for n = 0, then `(Δ̄ ⊗ id ⊗ ... ⊗ id) ∘ Δ̄^(n-1)`,
/// landing in (n+1)-fold tensor keys. Vanishes once n reaches the degree.
pub fn iterated_reduced_coproduct(
    v: &TreeComb,
    n: usize,
    mode: Mode,
) -> Result<Combination<MultiKey<PlanarTree>>, PrimError> {
    ensure_augmentation(v)?;
    let mut acc: Combination<MultiKey<PlanarTree>> = v.map_keys(|t| MultiKey(vec![t.clone()]));
    for _ in 0..n {
        acc = expand_first_leg(&acc, mode)?;
    }
    Ok(acc)
}

fn expand_first_leg(
    acc: &Combination<MultiKey<PlanarTree>>,
    mode: Mode,
) -> Result<Combination<MultiKey<PlanarTree>>, PrimError> {
    let mut out = Combination::zero();
    for (MultiKey(legs), c) in acc.iter() {
        for (TensorKey(a, b), mult) in reduced_coproduct_tree(&legs[0], mode)?.iter() {
            let mut key = Vec::with_capacity(legs.len() + 1);
            key.push(a.clone());
            key.push(b.clone());
            key.extend(legs[1..].iter().cloned());
            out.add_term(MultiKey(key), c * mult);
        }
    }
    Ok(out)
}

/// The idempotent `e = Σ_{n≥0} (-1)^n mult^n ∘ Δ̄^(n)` applied degreewise;
/// for a homogeneous element of degree d only the terms n < d survive.
pub fn idempotent_e(v: &TreeComb, mode: Mode) -> Result<TreeComb, PrimError> {
    ensure_augmentation(v)?;
    let mut out = TreeComb::zero();
    for (t, c) in v.iter() {
        out += e_tree(t, mode)?.scale(c);
    }
    Ok(out)
}

fn e_tree(t: &PlanarTree, mode: Mode) -> Result<TreeComb, PrimError> {
    if mode == Mode::Slash {
        NTree::new(t.clone()).map_err(|_| PrimError::NotNTree(t.to_string()))?;
    }
    let degree = t.degree();
    let mut out = TreeComb::zero();
    let mut acc = Combination::basis(MultiKey(vec![t.clone()]));
    let mut sign = Coeff::one();
    for step in 0..degree {
        for (MultiKey(legs), c) in acc.iter() {
            out.add_term(multiply_legs(mode, legs), c * &sign);
        }
        sign = -sign;
        if step + 1 < degree {
            acc = expand_first_leg(&acc, mode)?;
        }
    }
    Ok(out)
}

/// The families whose primitive parts the series tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimFamily {
    Unlabelled,
    XLabelled(usize),
    NTree,
    Increasing,
    Sorted,
}

impl PrimFamily {
    pub fn name(self) -> String {
        match self {
            PrimFamily::Unlabelled => "tree".to_string(),
            PrimFamily::XLabelled(k) => format!("xlabelled({k})"),
            PrimFamily::NTree => "ntree".to_string(),
            PrimFamily::Increasing => "increasing".to_string(),
            PrimFamily::Sorted => "sorted".to_string(),
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            PrimFamily::Unlabelled | PrimFamily::XLabelled(_) => Mode::Dot,
            _ => Mode::Slash,
        }
    }

    /// Closed count of basis elements in degree n.
    pub fn component_count(self, n: usize) -> BigInt {
        match self {
            PrimFamily::Unlabelled => catalan_big(n),
            PrimFamily::XLabelled(k) => BigInt::from(k).pow(n as u32) * catalan_big(n),
            PrimFamily::NTree => factorial_big(n) * catalan_big(n),
            PrimFamily::Increasing => double_factorial_odd_big(n),
            PrimFamily::Sorted => factorial_big(n),
        }
    }

    /// All irreducible basis trees of degree n for the family's product.
    pub fn irreducibles(self, n: usize) -> Vec<PlanarTree> {
        match self {
            PrimFamily::Unlabelled => PlanarTree::enumerate(n)
                .into_iter()
                .filter(|t| t.children().len() == 1)
                .collect(),
            PrimFamily::XLabelled(k) => {
                let alphabet: Vec<_> = (1..=k as u32).collect();
                PlanarTree::enumerate_labelled(n, &alphabet)
                    .into_iter()
                    .filter(|t| t.children().len() == 1)
                    .collect()
            }
            PrimFamily::NTree | PrimFamily::Increasing | PrimFamily::Sorted => {
                let family = match self {
                    PrimFamily::NTree => Family::NTree,
                    PrimFamily::Increasing => Family::Increasing,
                    _ => Family::Sorted,
                };
                labelled::enumerate_family(family, n)
                    .into_iter()
                    .filter(labelled::is_slash_irreducible)
                    .map(NTree::into_tree)
                    .collect()
            }
        }
    }
}

/// `{e(t) : t irreducible in the family, |t| = n}`, in canonical tree order.
pub fn primitive_basis(family: PrimFamily, n: usize) -> Vec<TreeComb> {
    family
        .irreducibles(n)
        .iter()
        .map(|t| e_tree(t, family.mode()).expect("basis trees are valid for the mode"))
        .collect()
}

/// Component dimensions `a_n` and primitive dimensions `b_n` of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSeries {
    pub family: String,
    /// `a_0..a_N`, with `a_0 = 1`.
    pub a: Vec<BigInt>,
    /// `b_0..b_N`, with `b_0 = 0`.
    pub b: Vec<BigInt>,
}

impl DimensionSeries {
    /// One `n<TAB>a_n<TAB>b_n` line per degree.
    pub fn rows(&self) -> Vec<String> {
        (0..self.a.len())
            .map(|n| format!("{n}\t{}\t{}", self.a[n], self.b[n]))
            .collect()
    }
}

/// Dimension series from the closed component counts and the recursion
/// `b_n = a_n - Σ_{k=1}^{n-1} a_k b_{n-k}`.
pub fn prim_dimensions(family: PrimFamily, max_degree: usize) -> DimensionSeries {
    let a: Vec<BigInt> = (0..=max_degree)
        .map(|n| family.component_count(n))
        .collect();
    let mut b: Vec<BigInt> = vec![BigInt::zero()];
    for n in 1..=max_degree {
        let mut value = a[n].clone();
        for k in 1..n {
            value -= &a[k] * &b[n - k];
        }
        b.push(value);
    }
    DimensionSeries {
        family: family.name(),
        a,
        b,
    }
}

/// Exact ranks of the primitive bases for degrees `1..=max_degree`: the
/// independent route to the same numbers, feasible at desk scale only.
pub fn prim_dimensions_by_rank(family: PrimFamily, max_degree: usize) -> Vec<usize> {
    (1..=max_degree)
        .map(|n| rank_of(&primitive_basis(family, n)))
        .collect()
}
