//! Exact free-module arithmetic over canonical basis keys.
//!
//! A [`Combination`] is a finitely supported map from basis keys to exact
//! rational coefficients, normalized so that no stored coefficient is zero and
//! iteration follows the canonical key order. One arithmetic core serves every
//! basis in the crate: trees, tensor pairs and tuples, and permutation words.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::tree::PlanarTree;

pub type Coeff = BigRational;

pub fn coeff_int(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

/// A canonical basis key: totally ordered, with a namespaced string form used
/// in the external text format.
pub trait BasisKey: Ord + Clone {
    fn key_string(&self) -> String;
}

impl BasisKey for PlanarTree {
    fn key_string(&self) -> String {
        format!("tree:{}", self.canonical())
    }
}

/// An ordered basis-key pair, the basis of a tensor square.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey<K>(pub K, pub K);

impl<K: BasisKey> BasisKey for TensorKey<K> {
    fn key_string(&self) -> String {
        format!("pair:{}|{}", self.0.key_string(), self.1.key_string())
    }
}

impl<K: BasisKey> fmt::Display for TensorKey<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.0.key_string(), self.1.key_string())
    }
}

/// An n-fold tensor basis key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiKey<K>(pub Vec<K>);

impl<K: BasisKey> BasisKey for MultiKey<K> {
    fn key_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(BasisKey::key_string).collect();
        format!("tuple:{}", parts.join("|"))
    }
}

/// A finitely supported exact-coefficient combination of basis keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination<K: BasisKey> {
    terms: BTreeMap<K, Coeff>,
}

impl<K: BasisKey> Default for Combination<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: BasisKey> Combination<K> {
    pub fn zero() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: K) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Coeff::one());
        Combination { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Coeff)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Adds `c * key`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Sum of all coefficients; the multiplicity count for sums of basis terms.
    pub fn coefficient_sum(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |a, c| a + c)
    }

    /// Linear extension of a basis-level map into combinations.
    pub fn extend_linear<K2: BasisKey>(
        &self,
        mut f: impl FnMut(&K) -> Combination<K2>,
    ) -> Combination<K2> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            for (k2, c2) in f(k).terms {
                out.add_term(k2, c * &c2);
            }
        }
        out
    }

    /// Linear extension of a key-to-key map.
    pub fn map_keys<K2: BasisKey>(&self, mut f: impl FnMut(&K) -> K2) -> Combination<K2> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Combination text with a custom key renderer, in canonical key order.
    pub fn to_text_with(&self, mut f: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("{}*{}", c, f(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<K: BasisKey> AddAssign<&Combination<K>> for Combination<K> {
    fn add_assign(&mut self, rhs: &Combination<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: BasisKey> AddAssign<Combination<K>> for Combination<K> {
    fn add_assign(&mut self, rhs: Combination<K>) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<K: BasisKey> Add for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: BasisKey> Sub for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl<K: BasisKey> Neg for Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        Combination {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: BasisKey> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{}*{}", c, k.key_string()))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Tensor of two combinations: bilinear, with coefficients multiplying exactly.
pub fn tensor_of<K: BasisKey>(a: &Combination<K>, b: &Combination<K>) -> Combination<TensorKey<K>> {
    let mut out = Combination::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term(TensorKey(ka.clone(), kb.clone()), ca * cb);
        }
    }
    out
}

/// Bilinear extension of a basis-level rule to whole combinations.
pub fn extend_bilinear<K1: BasisKey, K2: BasisKey, K3: BasisKey>(
    a: &Combination<K1>,
    b: &Combination<K2>,
    mut f: impl FnMut(&K1, &K2) -> Combination<K3>,
) -> Combination<K3> {
    let mut out = Combination::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let part = f(ka, kb);
            for (k, c) in part.iter() {
                out.add_term(k.clone(), ca * cb * c);
            }
        }
    }
    out
}

/// Basis-dual pairing: `<k, k'> = 1` iff the keys coincide, extended
/// bilinearly.
pub fn pairing<K: BasisKey>(a: &Combination<K>, b: &Combination<K>) -> Coeff {
    let mut acc = Coeff::zero();
    for (k, c) in a.iter() {
        let cb = b.coeff(k);
        if !cb.is_zero() {
            acc += c * &cb;
        }
    }
    acc
}

/// Exact rank of the span over the rationals.
///
/// Rows are cleared of denominators and reduced by fraction-free (Bareiss)
/// elimination over arbitrary-precision integers, so the result is exact and
/// independent of input order.
pub fn rank_of<K: BasisKey>(span: &[Combination<K>]) -> usize {
    let keys: BTreeSet<&K> = span.iter().flat_map(|c| c.keys()).collect();
    if keys.is_empty() {
        return 0;
    }
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let cols = keys.len();
    let mut matrix: Vec<Vec<BigInt>> = Vec::with_capacity(span.len());
    for comb in span {
        let mut denom_lcm = BigInt::one();
        for (_, c) in comb.iter() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut row = vec![BigInt::zero(); cols];
        for (k, c) in comb.iter() {
            row[index[k]] = c.numer() * (&denom_lcm / c.denom());
        }
        matrix.push(row);
    }
    bareiss_rank(matrix)
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(pivot) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let v = (&m[row][col] * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}
