//! Runnable verification suites.
//!
//! Every check is exact and exhaustive over a stated finite range. Suites are
//! reported check by check so the command-line `verify` subcommand can print
//! one line per check and fail honestly; the `acceptance` suite runs the
//! fixed desk-scale confirmation bounds.

use num::BigInt;

use crate::binary;
use crate::combinat::{binomial, catalan, compositions, double_factorial_odd, factorial};
use crate::hopf::{self, TreeComb};
use crate::labelled::{self, Family, NTree};
use crate::linalg::{
    coeff_int, extend_bilinear, pairing, tensor_of, Combination, MultiKey, TensorKey,
};
use crate::primitives::{self, Mode, PrimFamily};
use crate::tree::PlanarTree;
use crate::words::{self, Word};

/// One named exact check with its outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The suites the CLI can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Trees,
    Hopf,
    Labelled,
    Primitives,
    Words,
    Binary,
    Acceptance,
    All,
    /// Deliberately failing fixture, for exercising the failure path.
    BrokenFixture,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Trees => "trees",
            Suite::Hopf => "hopf",
            Suite::Labelled => "labelled",
            Suite::Primitives => "primitives",
            Suite::Words => "words",
            Suite::Binary => "binary",
            Suite::Acceptance => "acceptance",
            Suite::All => "all",
            Suite::BrokenFixture => "broken-fixture",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trees" => Ok(Suite::Trees),
            "hopf" => Ok(Suite::Hopf),
            "labelled" => Ok(Suite::Labelled),
            "primitives" => Ok(Suite::Primitives),
            "words" => Ok(Suite::Words),
            "binary" => Ok(Suite::Binary),
            "acceptance" => Ok(Suite::Acceptance),
            "all" => Ok(Suite::All),
            "broken-fixture" => Ok(Suite::BrokenFixture),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

/// Per-suite feasibility cap: the largest degree bound whose exhaustive
/// ranges stay at desk scale.
pub fn suite_cap(suite: Suite) -> usize {
    match suite {
        Suite::Trees => 8,
        Suite::Hopf => 6,
        Suite::Labelled => 4,
        Suite::Primitives => 5,
        Suite::Words => 5,
        Suite::Binary => 6,
        Suite::Acceptance | Suite::All | Suite::BrokenFixture => 6,
    }
}

/// Runs a suite; `maxdeg` overrides the default degree bound of the module
/// suites and is clamped to each suite's feasibility cap unless `force` is
/// set (the acceptance suite always runs its fixed bounds).
pub fn run_suite(suite: Suite, maxdeg: Option<usize>, force: bool) -> SuiteReport {
    let bound = |s: Suite, default: usize| {
        let d = maxdeg.unwrap_or(default);
        if force {
            d
        } else {
            d.min(suite_cap(s))
        }
    };
    let checks = match suite {
        Suite::Trees => trees_checks(bound(Suite::Trees, 6)),
        Suite::Hopf => hopf_checks(bound(Suite::Hopf, 4)),
        Suite::Labelled => labelled_checks(bound(Suite::Labelled, 4)),
        Suite::Primitives => primitives_checks(bound(Suite::Primitives, 4)),
        Suite::Words => words_checks(bound(Suite::Words, 4)),
        Suite::Binary => binary_checks(bound(Suite::Binary, 4)),
        Suite::Acceptance => acceptance_checks(),
        Suite::All => {
            let mut all = trees_checks(bound(Suite::Trees, 6));
            all.extend(hopf_checks(bound(Suite::Hopf, 4)));
            all.extend(labelled_checks(bound(Suite::Labelled, 4)));
            all.extend(primitives_checks(bound(Suite::Primitives, 4)));
            all.extend(words_checks(bound(Suite::Words, 4)));
            all.extend(binary_checks(bound(Suite::Binary, 4)));
            all.extend(acceptance_checks());
            all
        }
        Suite::BrokenFixture => vec![Check {
            name: "broken-fixture".to_string(),
            pass: false,
            detail: "deliberately failing check".to_string(),
        }],
    };
    SuiteReport {
        suite: suite.name().to_string(),
        checks,
    }
}

struct Collector {
    total: usize,
    failures: Vec<String>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            total: 0,
            failures: Vec::new(),
        }
    }

    fn assert(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.total += 1;
        if !cond {
            self.failures.push(msg());
        }
    }

    fn into_check(self, name: &str) -> Check {
        let pass = self.failures.is_empty();
        let detail = if pass {
            format!("{} assertions", self.total)
        } else {
            format!(
                "{} of {} assertions failed; first: {}",
                self.failures.len(),
                self.total,
                self.failures[0]
            )
        };
        Check {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

fn trees(n: usize) -> Vec<PlanarTree> {
    PlanarTree::enumerate(n)
}

fn trees_up_to(maxdeg: usize) -> Vec<PlanarTree> {
    (0..=maxdeg).flat_map(trees).collect()
}

fn pairs_with_sum(bound: usize) -> Vec<(PlanarTree, PlanarTree)> {
    let mut out = Vec::new();
    for m in 0..=bound {
        for a in trees(m) {
            for b in trees_up_to(bound - m) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn ntree_pairs_with_sum(bound: usize) -> Vec<(NTree, NTree)> {
    let mut out = Vec::new();
    for m in 0..=bound {
        for a in labelled::enumerate_family(Family::NTree, m) {
            for n in 0..=bound - m {
                for b in labelled::enumerate_family(Family::NTree, n) {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

// ---- tree checks -----------------------------------------------------------

fn trees_checks(maxdeg: usize) -> Vec<Check> {
    let mut out = Vec::new();

    let mut c = Collector::new();
    for n in 0..=maxdeg.min(8) {
        c.assert(trees(n).len() as u128 == catalan(n), || {
            format!("|T_{n}| != c_{n}")
        });
    }
    out.push(c.into_check("catalan-enumeration"));

    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg) {
        let n = tree.degree();
        if n == 0 {
            c.assert(tree.all_partitions().is_empty(), || {
                "trivial tree must have no partitions".to_string()
            });
            continue;
        }
        for k in 1..=n {
            c.assert(
                tree.partitions(k).len() as u128 == binomial(n - 1, k - 1),
                || format!("partition count at {tree}, k={k}"),
            );
        }
        c.assert(tree.all_partitions().len() as u128 == 1 << (n - 1), || {
            format!("total partitions at {tree}")
        });
    }
    out.push(c.into_check("partition-counts"));

    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg.min(5)) {
        let n = tree.degree() as i64;
        for a in 1..=n {
            for b in a..=n {
                let inner = tree.convex(a, b);
                for i in 1..=(b - a + 1) {
                    for j in i..=(b - a + 1) {
                        c.assert(
                            inner.convex(i, j) == tree.convex(a + i - 1, a + j - 1),
                            || format!("convex composition at {tree} [{a},{b}] [{i},{j}]"),
                        );
                    }
                }
            }
        }
        c.assert(tree.convex(-2, n + 2) == tree, || format!("clip at {tree}"));
    }
    out.push(c.into_check("convex-composition"));

    let mut c = Collector::new();
    for m in 0..=maxdeg {
        for a in trees(m) {
            for n in 0..=maxdeg - m {
                for b in trees(n) {
                    for d in trees_up_to(maxdeg - m - n) {
                        c.assert(
                            a.dot(&b).unwrap().dot(&d).unwrap()
                                == a.dot(&b.dot(&d).unwrap()).unwrap(),
                            || format!("dot associativity at {a}, {b}, {d}"),
                        );
                    }
                }
            }
            c.assert(
                a.dot(&PlanarTree::trivial()).unwrap() == a
                    && PlanarTree::trivial().dot(&a).unwrap() == a,
                || format!("dot unit at {a}"),
            );
        }
    }
    out.push(c.into_check("dot-monoid"));

    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg) {
        let factors = tree.irreducible_factors();
        c.assert(
            factors.iter().all(|f| f.children().len() == 1)
                && PlanarTree::dot_all(&factors) == tree,
            || format!("irreducible factorization at {tree}"),
        );
    }
    out.push(c.into_check("irreducible-factorization"));

    out
}

// ---- hopf checks -----------------------------------------------------------

fn chk_coassociativity(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg) {
        let d = hopf::coproduct(&tree);
        let left = d.extend_linear(|TensorKey(a, b)| {
            hopf::coproduct(a)
                .map_keys(|TensorKey(x, y)| MultiKey(vec![x.clone(), y.clone(), b.clone()]))
        });
        let right = d.extend_linear(|TensorKey(a, b)| {
            hopf::coproduct(b)
                .map_keys(|TensorKey(x, y)| MultiKey(vec![a.clone(), x.clone(), y.clone()]))
        });
        c.assert(left == right, || format!("coassociativity at {tree}"));
    }
    c.into_check("coassociativity")
}

fn chk_counit_laws(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg) {
        let d = hopf::coproduct(&tree);
        let mut left = TreeComb::zero();
        let mut right = TreeComb::zero();
        for (TensorKey(a, b), coeffv) in d.iter() {
            if a.is_trivial() {
                left.add_term(b.clone(), coeffv.clone());
            }
            if b.is_trivial() {
                right.add_term(a.clone(), coeffv.clone());
            }
        }
        let id = TreeComb::basis(tree.clone());
        c.assert(left == id && right == id, || {
            format!("counit law at {tree}")
        });
    }
    c.into_check("counit-laws")
}

fn chk_product_associativity(bound: usize) -> Check {
    let mut c = Collector::new();
    for m in 0..=bound {
        for a in trees(m) {
            for n in 0..=bound - m {
                for b in trees(n) {
                    for r in 0..=bound - m - n {
                        for d in trees(r) {
                            let left = extend_bilinear(
                                &hopf::product(&a, &b),
                                &TreeComb::basis(d.clone()),
                                hopf::product,
                            );
                            let right = extend_bilinear(
                                &TreeComb::basis(a.clone()),
                                &hopf::product(&b, &d),
                                hopf::product,
                            );
                            c.assert(left == right, || {
                                format!("product associativity at {a}, {b}, {d}")
                            });
                        }
                    }
                }
            }
        }
    }
    c.into_check("product-associativity")
}

fn chk_hopf_compatibility(bound: usize) -> Check {
    let mut c = Collector::new();
    for (a, b) in pairs_with_sum(bound) {
        let lhs = hopf::coproduct_lin(&hopf::product(&a, &b));
        let rhs =
            hopf::tensor_product_with(&hopf::coproduct(&a), &hopf::coproduct(&b), hopf::product);
        c.assert(lhs == rhs, || format!("hopf compatibility at {a}, {b}"));
    }
    c.into_check("hopf-compatibility")
}

fn chk_infinitesimal(bound: usize) -> Check {
    let mut c = Collector::new();
    for (a, b) in pairs_with_sum(bound) {
        let lhs = hopf::coproduct(&a.dot(&b).unwrap());
        let mut rhs = hopf::coproduct(&a).extend_linear(|TensorKey(p, q)| {
            Combination::basis(TensorKey(p.clone(), q.dot(&b).unwrap()))
        });
        rhs += hopf::coproduct(&b).extend_linear(|TensorKey(p, q)| {
            Combination::basis(TensorKey(a.dot(p).unwrap(), q.clone()))
        });
        rhs.add_term(TensorKey(a.clone(), b.clone()), coeff_int(-1));
        c.assert(lhs == rhs, || format!("infinitesimal relation at {a}, {b}"));
    }
    c.into_check("infinitesimal-relation")
}

fn chk_antipode(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for tree in trees_up_to(maxdeg) {
        let mut acc = TreeComb::zero();
        for (TensorKey(a, b), coeffv) in hopf::coproduct(&tree).iter() {
            let part = extend_bilinear(
                &hopf::antipode(&TreeComb::basis(a.clone())),
                &TreeComb::basis(b.clone()),
                hopf::product,
            );
            acc += part.scale(coeffv);
        }
        let expected = if tree.is_trivial() {
            TreeComb::basis(PlanarTree::trivial())
        } else {
            TreeComb::zero()
        };
        c.assert(acc == expected, || format!("antipode identity at {tree}"));
    }
    c.into_check("antipode-identity")
}

fn chk_product_addend_counts(bound: usize) -> Check {
    let mut c = Collector::new();
    for (a, b) in pairs_with_sum(bound) {
        let (m, n) = (a.degree(), b.degree());
        c.assert(
            hopf::product(&a, &b).coefficient_sum() == coeff_int(binomial(m + n, m) as i64),
            || format!("addend count at {a} * {b}"),
        );
    }
    c.into_check("product-addend-counts")
}

fn chk_dual_counts(bound: usize) -> Check {
    let mut c = Collector::new();
    for (a, b) in pairs_with_sum(bound) {
        let k = a.irreducible_factors().len();
        let l = hopf::leftmost_branch(&b).len() - 1;
        let expect = if k == 0 { 1 } else { binomial(k + l, k) };
        c.assert(
            hopf::dual_product(&a, &b).coefficient_sum() == coeff_int(expect as i64),
            || format!("dual addend count at {a} ._d {b}"),
        );
    }
    c.into_check("dual-addend-counts")
}

fn chk_duality(bound: usize) -> Check {
    let mut c = Collector::new();
    for (a, b) in pairs_with_sum(bound) {
        let total = a.degree() + b.degree();
        let dual = hopf::dual_product(&a, &b);
        let ab = tensor_of(&TreeComb::basis(a.clone()), &TreeComb::basis(b.clone()));
        for u in trees(total) {
            c.assert(
                pairing(&dual, &TreeComb::basis(u.clone())) == pairing(&ab, &hopf::coproduct(&u)),
                || format!("duality <t._dw,u> at {a}, {b}, {u}"),
            );
            c.assert(
                pairing(&hopf::dual_coproduct(&u), &ab)
                    == pairing(
                        &TreeComb::basis(u.clone()),
                        &TreeComb::basis(a.dot(&b).unwrap()),
                    ),
                || format!("duality <Δ_d u, t⊗w> at {a}, {b}, {u}"),
            );
        }
    }
    c.into_check("pairing-duality")
}

fn chk_labelled_extension(bound: usize) -> Check {
    let alphabet = [1, 2];
    let by_degree: Vec<Vec<PlanarTree>> = (0..=bound)
        .map(|n| PlanarTree::enumerate_labelled(n, &alphabet))
        .collect();
    let all: Vec<PlanarTree> = by_degree.iter().flatten().cloned().collect();
    let mut c = Collector::new();
    for a in &all {
        // coassociativity with labels carried along
        let d = hopf::coproduct(a);
        let left = d.extend_linear(|TensorKey(p, q)| {
            hopf::coproduct(p)
                .map_keys(|TensorKey(x, y)| MultiKey(vec![x.clone(), y.clone(), q.clone()]))
        });
        let right = d.extend_linear(|TensorKey(p, q)| {
            hopf::coproduct(q)
                .map_keys(|TensorKey(x, y)| MultiKey(vec![p.clone(), x.clone(), y.clone()]))
        });
        c.assert(left == right, || format!("labelled coassociativity at {a}"));
        for b in &all {
            if a.degree() + b.degree() > bound {
                continue;
            }
            let (m, n) = (a.degree(), b.degree());
            c.assert(
                hopf::product(a, b).coefficient_sum() == coeff_int(binomial(m + n, m) as i64),
                || format!("labelled addend count at {a}, {b}"),
            );
            let lhs = hopf::coproduct_lin(&hopf::product(a, b));
            let rhs =
                hopf::tensor_product_with(&hopf::coproduct(a), &hopf::coproduct(b), hopf::product);
            c.assert(lhs == rhs, || {
                format!("labelled hopf compatibility at {a}, {b}")
            });
            let lhs = hopf::coproduct(&a.dot(b).unwrap());
            let mut rhs = hopf::coproduct(a).extend_linear(|TensorKey(p, q)| {
                Combination::basis(TensorKey(p.clone(), q.dot(b).unwrap()))
            });
            rhs += hopf::coproduct(b).extend_linear(|TensorKey(p, q)| {
                Combination::basis(TensorKey(a.dot(p).unwrap(), q.clone()))
            });
            rhs.add_term(TensorKey(a.clone(), b.clone()), coeff_int(-1));
            c.assert(lhs == rhs, || format!("labelled infinitesimal at {a}, {b}"));
        }
    }
    // pairing duality with labels carried along
    for total in 0..=bound {
        let mut pairs: Vec<(&PlanarTree, &PlanarTree, TreeComb)> = Vec::new();
        for m in 0..=total {
            for a in &by_degree[m] {
                for b in &by_degree[total - m] {
                    pairs.push((a, b, hopf::dual_product(a, b)));
                }
            }
        }
        for u in &by_degree[total] {
            let cop = hopf::coproduct(u);
            let dualcop = hopf::dual_coproduct(u);
            let basis_u = TreeComb::basis(u.clone());
            for (a, b, dual) in &pairs {
                let ab = tensor_of(
                    &TreeComb::basis((*a).clone()),
                    &TreeComb::basis((*b).clone()),
                );
                c.assert(pairing(dual, &basis_u) == pairing(&ab, &cop), || {
                    format!("labelled duality <t._dw,u> at {a}, {b}, {u}")
                });
                c.assert(
                    pairing(&dualcop, &ab)
                        == pairing(&basis_u, &TreeComb::basis(a.dot(b).unwrap())),
                    || format!("labelled duality <Δ_d u, t⊗w> at {a}, {b}, {u}"),
                );
            }
        }
    }
    c.into_check("labelled-extension")
}

fn hopf_checks(maxdeg: usize) -> Vec<Check> {
    vec![
        chk_coassociativity(maxdeg + 1),
        chk_counit_laws(maxdeg + 1),
        chk_product_addend_counts(maxdeg),
        chk_product_associativity(maxdeg),
        chk_hopf_compatibility(maxdeg),
        chk_infinitesimal(maxdeg),
        chk_antipode(maxdeg),
        chk_dual_counts(maxdeg),
        chk_duality(maxdeg),
        chk_labelled_extension(maxdeg.min(4)),
    ]
}

// ---- labelled checks -------------------------------------------------------

fn chk_std_coassociativity(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for n in 0..=maxdeg {
        for t in labelled::enumerate_family(Family::NTree, n) {
            let d = labelled::coproduct_std(&t);
            let left = d.extend_linear(|TensorKey(a, b)| {
                labelled::coproduct_std(&NTree::new(a.clone()).unwrap())
                    .map_keys(|TensorKey(x, y)| MultiKey(vec![x.clone(), y.clone(), b.clone()]))
            });
            let right = d.extend_linear(|TensorKey(a, b)| {
                labelled::coproduct_std(&NTree::new(b.clone()).unwrap())
                    .map_keys(|TensorKey(x, y)| MultiKey(vec![a.clone(), x.clone(), y.clone()]))
            });
            c.assert(left == right, || format!("Δ_s coassociativity at {t}"));
        }
    }
    c.into_check("std-coassociativity")
}

fn chk_star_counts(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, w) in ntree_pairs_with_sum(bound) {
        let out = labelled::star_product(&t, &w);
        c.assert(
            out.coefficient_sum()
                == coeff_int(binomial(t.degree() + w.degree(), t.degree()) as i64),
            || format!("star addend count at {t}, {w}"),
        );
        c.assert(out.keys().all(|k| NTree::new(k.clone()).is_ok()), || {
            format!("star addends stay n-trees at {t}, {w}")
        });
    }
    c.into_check("star-addend-counts")
}

fn chk_star_associativity(bound: usize) -> Check {
    let mut c = Collector::new();
    for m in 0..=bound {
        for a in labelled::enumerate_family(Family::NTree, m) {
            for n in 0..=bound - m {
                for b in labelled::enumerate_family(Family::NTree, n) {
                    for r in 0..=bound - m - n {
                        for d in labelled::enumerate_family(Family::NTree, r) {
                            let left = labelled::star_product(&a, &b)
                                .extend_linear(|k| labelled::star_trees(k, d.as_tree()));
                            let right = labelled::star_product(&b, &d)
                                .extend_linear(|k| labelled::star_trees(a.as_tree(), k));
                            c.assert(left == right, || {
                                format!("star associativity at {a}, {b}, {d}")
                            });
                        }
                    }
                }
            }
        }
    }
    c.into_check("star-associativity")
}

fn chk_star_compatibility(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, w) in ntree_pairs_with_sum(bound) {
        let lhs = labelled::star_product(&t, &w)
            .extend_linear(|k| labelled::coproduct_std(&NTree::new(k.clone()).unwrap()));
        let rhs = hopf::tensor_product_with(
            &labelled::coproduct_std(&t),
            &labelled::coproduct_std(&w),
            labelled::star_trees,
        );
        c.assert(lhs == rhs, || format!("star compatibility at {t}, {w}"));
    }
    c.into_check("star-hopf-compatibility")
}

fn chk_slash_infinitesimal(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, w) in ntree_pairs_with_sum(bound) {
        let lhs = labelled::coproduct_std(&labelled::slash_product(&t, &w));
        let mut rhs = labelled::coproduct_std(&t).extend_linear(|TensorKey(a, b)| {
            Combination::basis(TensorKey(a.clone(), labelled::slash_trees(b, w.as_tree())))
        });
        rhs += labelled::coproduct_std(&w).extend_linear(|TensorKey(a, b)| {
            Combination::basis(TensorKey(labelled::slash_trees(t.as_tree(), a), b.clone()))
        });
        rhs.add_term(
            TensorKey(t.as_tree().clone(), w.as_tree().clone()),
            coeff_int(-1),
        );
        c.assert(lhs == rhs, || format!("slash infinitesimal at {t}, {w}"));
    }
    c.into_check("slash-infinitesimal")
}

fn chk_family_closure(bound: usize) -> Check {
    let mut c = Collector::new();
    for family in [Family::Increasing, Family::Sorted] {
        for m in 0..=bound {
            for t in labelled::enumerate_family(family, m) {
                for (TensorKey(a, b), _) in labelled::coproduct_std(&t).iter() {
                    c.assert(
                        family.contains(&NTree::new(a.clone()).unwrap())
                            && family.contains(&NTree::new(b.clone()).unwrap()),
                        || format!("coproduct closure of {} at {t}", family.name()),
                    );
                }
                for n in 0..=bound - m {
                    for w in labelled::enumerate_family(family, n) {
                        c.assert(
                            labelled::star_product(&t, &w)
                                .keys()
                                .all(|k| family.contains(&NTree::new(k.clone()).unwrap())),
                            || format!("star closure of {} at {t}, {w}", family.name()),
                        );
                    }
                }
            }
        }
    }
    c.into_check("family-closure")
}

fn chk_shifted_standardization(bound: usize) -> Check {
    let mut c = Collector::new();
    for m in 0..=bound {
        for a in labelled::enumerate_family(Family::NTree, m) {
            for n in 0..=bound - m {
                for b in labelled::enumerate_family(Family::NTree, n) {
                    let t = a.as_tree().relabel(|l| 3 * l);
                    let w = b.as_tree().relabel(|l| 3 * m as u32 + 2 * l);
                    c.assert(
                        labelled::standardize(&t.dot(&w).unwrap()).unwrap()
                            == labelled::slash_product(&a, &b),
                        || format!("s(t·w) at {a}, {b}"),
                    );
                    let starred = hopf::product(&t, &w)
                        .map_keys(|k| labelled::standardize(k).unwrap().into_tree());
                    c.assert(starred == labelled::star_product(&a, &b), || {
                        format!("s(t*w) at {a}, {b}")
                    });
                }
            }
        }
    }
    c.into_check("shifted-standardization")
}

fn chk_increasing_by_gluing(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for n in 0..=maxdeg {
        let recursive = labelled::enumerate_family(Family::Increasing, n);
        let filtered: Vec<NTree> = labelled::enumerate_family(Family::NTree, n)
            .into_iter()
            .filter(|t| Family::Increasing.contains(t))
            .collect();
        c.assert(recursive == filtered, || {
            format!("increasing gluing construction at degree {n}")
        });
        c.assert(recursive.len() as u128 == double_factorial_odd(n), || {
            format!("increasing count at degree {n}")
        });
    }
    c.into_check("increasing-gluing")
}

fn labelled_checks(maxdeg: usize) -> Vec<Check> {
    vec![
        chk_std_coassociativity(maxdeg),
        chk_star_counts(maxdeg),
        chk_star_associativity(maxdeg),
        chk_star_compatibility(maxdeg),
        chk_slash_infinitesimal(maxdeg),
        chk_family_closure(maxdeg),
        chk_shifted_standardization(maxdeg.min(3)),
        chk_increasing_by_gluing(maxdeg),
    ]
}

// ---- primitives checks -----------------------------------------------------

fn chk_idempotent_laws(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for tree in (1..=maxdeg.min(5)).flat_map(trees) {
        let e1 = primitives::idempotent_e(&TreeComb::basis(tree.clone()), Mode::Dot).unwrap();
        c.assert(
            primitives::idempotent_e(&e1, Mode::Dot).unwrap() == e1,
            || format!("e idempotent at {tree}"),
        );
    }
    for m in 1..=maxdeg.saturating_sub(1) {
        for x in trees(m) {
            for y in (1..=maxdeg - m).flat_map(trees) {
                let glued = TreeComb::basis(x.dot(&y).unwrap());
                c.assert(
                    primitives::idempotent_e(&glued, Mode::Dot)
                        .unwrap()
                        .is_zero(),
                    || format!("e(x·y)=0 at {x}, {y}"),
                );
            }
        }
    }
    for n in 1..=maxdeg.min(4) {
        for t in labelled::enumerate_family(Family::NTree, n) {
            let v = TreeComb::basis(t.as_tree().clone());
            let e1 = primitives::idempotent_e(&v, Mode::Slash).unwrap();
            c.assert(
                primitives::idempotent_e(&e1, Mode::Slash).unwrap() == e1,
                || format!("slash e idempotent at {t}"),
            );
        }
    }
    for m in 1..=maxdeg.min(4).saturating_sub(1) {
        for x in labelled::enumerate_family(Family::NTree, m) {
            for n in 1..=maxdeg.min(4) - m {
                for y in labelled::enumerate_family(Family::NTree, n) {
                    let glued = TreeComb::basis(labelled::slash_product(&x, &y).into_tree());
                    c.assert(
                        primitives::idempotent_e(&glued, Mode::Slash)
                            .unwrap()
                            .is_zero(),
                        || format!("e(x/y)=0 at {x}, {y}"),
                    );
                }
            }
        }
    }
    c.into_check("idempotent-laws")
}

fn chk_primitive_elements(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for n in 1..=maxdeg {
        for e in primitives::primitive_basis(PrimFamily::Unlabelled, n) {
            c.assert(
                primitives::reduced_coproduct(&e, Mode::Dot)
                    .unwrap()
                    .is_zero(),
                || format!("primitive at unlabelled degree {n}"),
            );
        }
    }
    for n in 1..=maxdeg.min(3) {
        for e in primitives::primitive_basis(PrimFamily::Sorted, n) {
            c.assert(
                primitives::reduced_coproduct(&e, Mode::Slash)
                    .unwrap()
                    .is_zero(),
                || format!("primitive at sorted degree {n}"),
            );
        }
    }
    c.into_check("primitive-elements")
}

fn chk_primitive_ranks() -> Check {
    let mut c = Collector::new();
    let cases = [
        (PrimFamily::Unlabelled, 5),
        (PrimFamily::Sorted, 5),
        (PrimFamily::Increasing, 4),
        (PrimFamily::NTree, 4),
    ];
    for (family, maxdeg) in cases {
        let ranks = primitives::prim_dimensions_by_rank(family, maxdeg);
        let series = primitives::prim_dimensions(family, maxdeg);
        for n in 1..=maxdeg {
            c.assert(BigInt::from(ranks[n - 1]) == series.b[n], || {
                format!("rank vs recursion for {} degree {n}", family.name())
            });
        }
    }
    c.into_check("primitive-ranks")
}

fn chk_dimension_series() -> Check {
    let mut c = Collector::new();
    let expect_ntree: Vec<BigInt> = [1, 3, 23, 271, 4251, 82967].map(BigInt::from).to_vec();
    c.assert(
        primitives::prim_dimensions(PrimFamily::NTree, 6).b[1..] == expect_ntree,
        || "ntree series".to_string(),
    );
    let expect_inc: Vec<BigInt> = [1, 2, 10, 74, 706, 8162, 110410].map(BigInt::from).to_vec();
    c.assert(
        primitives::prim_dimensions(PrimFamily::Increasing, 7).b[1..] == expect_inc,
        || "increasing series".to_string(),
    );
    let expect_sorted: Vec<BigInt> = [1, 1, 3, 13, 71, 461, 3447].map(BigInt::from).to_vec();
    c.assert(
        primitives::prim_dimensions(PrimFamily::Sorted, 7).b[1..] == expect_sorted,
        || "sorted series".to_string(),
    );
    let unlabelled = primitives::prim_dimensions(PrimFamily::Unlabelled, 6);
    for n in 1..=6usize {
        c.assert(unlabelled.b[n] == BigInt::from(catalan(n - 1)), || {
            format!("unlabelled b_{n}")
        });
    }
    c.into_check("dimension-series")
}

fn chk_cofreeness(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for family in [
        PrimFamily::Unlabelled,
        PrimFamily::NTree,
        PrimFamily::Increasing,
        PrimFamily::Sorted,
    ] {
        let series = primitives::prim_dimensions(family, maxdeg);
        for n in 1..=maxdeg {
            let total: BigInt = compositions(n)
                .iter()
                .map(|comp| {
                    comp.iter()
                        .map(|&p| series.b[p].clone())
                        .product::<BigInt>()
                })
                .sum();
            c.assert(total == series.a[n], || {
                format!("cofreeness identity for {} at degree {n}", family.name())
            });
        }
    }
    c.into_check("cofreeness-identity")
}

fn primitives_checks(maxdeg: usize) -> Vec<Check> {
    vec![
        chk_idempotent_laws(maxdeg),
        chk_primitive_elements(maxdeg),
        chk_primitive_ranks(),
        chk_dimension_series(),
        chk_cofreeness(maxdeg.max(6)),
    ]
}

// ---- word checks -----------------------------------------------------------

fn chk_euler_bijection(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    let fig = PlanarTree::parse("((1 (3))(5 (6 (4))(2)))").unwrap();
    c.assert(
        words::euler_tour(&fig).unwrap() == Word::parse("1 3 3 1 5 6 4 4 6 2 2 5").unwrap(),
        || "euler tour of the degree-6 fixture".to_string(),
    );
    for n in 0..=maxdeg {
        let family = labelled::enumerate_family(Family::NTree, n);
        let mut images = std::collections::BTreeSet::new();
        for t in &family {
            let word = words::euler_tour(t.as_tree()).unwrap();
            c.assert(words::is_treed(&word) || n == 0, || {
                format!("treed image at {t}")
            });
            c.assert(words::euler_tour_inverse(&word).unwrap() == *t, || {
                format!("euler round trip at {t}")
            });
            // multiplicative over the dot factorization
            let concatenated = t
                .as_tree()
                .irreducible_factors()
                .iter()
                .fold(Word::empty(), |acc, f| {
                    acc.concat(&words::euler_tour(f).unwrap())
                });
            c.assert(concatenated == word, || {
                format!("euler multiplicativity at {t}")
            });
            images.insert(word);
        }
        c.assert(images.len() == family.len(), || {
            format!("euler injectivity at degree {n}")
        });
    }
    c.into_check("euler-tour-bijection")
}

fn chk_stirling_words(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    let two: Vec<Word> = ["1 1 2 2", "1 2 2 1", "2 2 1 1"]
        .iter()
        .map(|s| Word::parse(s).unwrap())
        .collect();
    c.assert(words::enumerate_stirling(2) == two, || {
        "stirling words of size 2".to_string()
    });
    for n in 0..=maxdeg {
        let stirling = words::enumerate_stirling(n);
        c.assert(stirling.len() as u128 == double_factorial_odd(n), || {
            format!("stirling count at {n}")
        });
        let images: Vec<Word> = {
            let mut v: Vec<Word> = labelled::enumerate_family(Family::Increasing, n)
                .iter()
                .map(|t| words::euler_tour(t.as_tree()).unwrap())
                .collect();
            v.sort();
            v
        };
        c.assert(stirling == images, || {
            format!("stirling = euler image of increasing at {n}")
        });
    }
    // closure under the word structure
    let all: Vec<Word> = (0..=maxdeg.min(3))
        .flat_map(words::enumerate_stirling)
        .collect();
    for u in &all {
        for (TensorKey(a, b), _) in words::treed_coproduct(u).iter() {
            c.assert(
                (a.is_empty() || words::is_stirling(a)) && (b.is_empty() || words::is_stirling(b)),
                || format!("stirling coproduct closure at {u}"),
            );
        }
        for v in &all {
            if u.size() + v.size() > maxdeg.min(3) {
                continue;
            }
            c.assert(
                words::treed_product(u, v).keys().all(words::is_stirling),
                || format!("stirling product closure at {u}, {v}"),
            );
        }
    }
    c.into_check("stirling-words")
}

fn chk_word_transport(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, u) in ntree_pairs_with_sum(bound) {
        let lhs = labelled::star_product(&t, &u).map_keys(|k| words::euler_tour(k).unwrap());
        let rhs = words::treed_product(
            &words::euler_tour(t.as_tree()).unwrap(),
            &words::euler_tour(u.as_tree()).unwrap(),
        );
        c.assert(lhs == rhs, || format!("word product transport at {t}, {u}"));
    }
    for n in 0..=bound {
        for t in labelled::enumerate_family(Family::NTree, n) {
            let lhs = labelled::coproduct_std(&t).map_keys(|TensorKey(a, b)| {
                TensorKey(words::euler_tour(a).unwrap(), words::euler_tour(b).unwrap())
            });
            let rhs = words::treed_coproduct(&words::euler_tour(t.as_tree()).unwrap());
            c.assert(lhs == rhs, || format!("word coproduct transport at {t}"));
        }
    }
    // the worked examples
    let prod = words::treed_product(
        &Word::parse("2 1 1 2").unwrap(),
        &Word::parse("3 3 2 1 1 2").unwrap(),
    );
    c.assert(
        prod.coefficient_sum() == coeff_int(10)
            && prod.coeff(&Word::parse("2 1 1 2 5 5 4 3 3 4").unwrap()) == coeff_int(1),
        || "ten-addend product example".to_string(),
    );
    let cop = words::treed_coproduct(&Word::parse("2 1 5 5 4 3 3 4 1 2").unwrap());
    c.assert(
        cop.coefficient_sum() == coeff_int(6)
            && cop.coeff(&TensorKey(
                Word::parse("3 3 2 1 1 2").unwrap(),
                Word::parse("2 1 1 2").unwrap(),
            )) == coeff_int(1),
        || "six-term coproduct example".to_string(),
    );
    c.into_check("word-transport")
}

fn chk_sorted_permutations(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    let fig = NTree::parse("((1 (2)(4))(3))").unwrap();
    c.assert(
        words::sorted_to_permutation(&fig).unwrap() == Word::parse("2 4 1 3").unwrap(),
        || "2413 fixture".to_string(),
    );
    c.assert(
        words::permutation_to_sorted(&Word::parse("2 4 1 3").unwrap()).unwrap() == fig,
        || "2413 inverse fixture".to_string(),
    );
    for n in 0..=maxdeg {
        let family = labelled::enumerate_family(Family::Sorted, n);
        let mut images = std::collections::BTreeSet::new();
        for t in &family {
            let word = words::sorted_to_permutation(t).unwrap();
            c.assert(words::permutation_to_sorted(&word).unwrap() == *t, || {
                format!("sorted round trip at {t}")
            });
            images.insert(word);
        }
        c.assert(images.len() as u128 == factorial(n), || {
            format!("sorted image covers all permutations at {n}")
        });
    }
    c.into_check("sorted-permutation-bijection")
}

fn chk_mr_transport(bound: usize) -> Check {
    let mut c = Collector::new();
    for m in 0..=bound {
        for t in labelled::enumerate_family(Family::Sorted, m) {
            for n in 0..=bound - m {
                for u in labelled::enumerate_family(Family::Sorted, n) {
                    let lhs = labelled::star_product(&t, &u).map_keys(|k| {
                        words::sorted_to_permutation(&NTree::new(k.clone()).unwrap()).unwrap()
                    });
                    let rhs = words::mr_product(
                        &words::sorted_to_permutation(&t).unwrap(),
                        &words::sorted_to_permutation(&u).unwrap(),
                    );
                    c.assert(lhs == rhs, || format!("MR product transport at {t}, {u}"));
                }
            }
        }
    }
    for n in 0..=bound {
        for t in labelled::enumerate_family(Family::Sorted, n) {
            let lhs = labelled::coproduct_std(&t).map_keys(|TensorKey(a, b)| {
                TensorKey(
                    words::sorted_to_permutation(&NTree::new(a.clone()).unwrap()).unwrap(),
                    words::sorted_to_permutation(&NTree::new(b.clone()).unwrap()).unwrap(),
                )
            });
            let rhs = words::mr_coproduct(&words::sorted_to_permutation(&t).unwrap());
            c.assert(lhs == rhs, || format!("MR coproduct transport at {t}"));
        }
    }
    c.into_check("malvenuto-reutenauer-transport")
}

fn chk_treed_counts(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, u) in ntree_pairs_with_sum(bound) {
        let a = words::euler_tour(t.as_tree()).unwrap();
        let b = words::euler_tour(u.as_tree()).unwrap();
        let (m, n) = (t.degree(), u.degree());
        c.assert(
            words::treed_product(&a, &b).coefficient_sum() == coeff_int(binomial(m + n, m) as i64),
            || format!("treed word addend count at {a}, {b}"),
        );
    }
    c.into_check("treed-word-counts")
}

fn words_checks(maxdeg: usize) -> Vec<Check> {
    vec![
        chk_euler_bijection(maxdeg),
        chk_stirling_words(maxdeg),
        chk_word_transport(maxdeg.min(4)),
        chk_treed_counts(maxdeg.min(4)),
        chk_sorted_permutations(maxdeg),
        chk_mr_transport(maxdeg),
    ]
}

// ---- binary checks ---------------------------------------------------------

fn chk_binary_roundtrip(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for n in 0..=maxdeg {
        let all = binary::enumerate_binary(n);
        c.assert(all.len() as u128 == catalan(n), || {
            format!("|Y_{n}| = c_{n}")
        });
        let mut images = std::collections::BTreeSet::new();
        for tree in trees(n) {
            let x = binary::planar_to_binary(&tree);
            c.assert(binary::binary_to_planar(&x) == tree, || {
                format!("binary round trip at {tree}")
            });
            images.insert(x);
        }
        c.assert(images.len() == all.len(), || {
            format!("binary bijection at degree {n}")
        });
    }
    c.into_check("binary-bijection")
}

fn chk_binary_intervals(maxdeg: usize) -> Check {
    let mut c = Collector::new();
    for n in 0..=maxdeg {
        for tree in trees(n) {
            let x = binary::planar_to_binary(&tree);
            for i in 1..=n {
                for j in i..=n {
                    c.assert(
                        binary::planar_to_binary(&tree.convex(i as i64, j as i64))
                            == binary::convex(&x, i - 1, j).unwrap(),
                        || format!("interval transport at {tree} [{i},{j}]"),
                    );
                }
            }
        }
    }
    c.into_check("binary-interval-compatibility")
}

fn chk_binary_transport(bound: usize) -> Check {
    let mut c = Collector::new();
    for (t, u) in pairs_with_sum(bound) {
        let lhs = hopf::product(&t, &u).map_keys(binary::planar_to_binary);
        let rhs =
            binary::binary_product(&binary::planar_to_binary(&t), &binary::planar_to_binary(&u));
        c.assert(lhs == rhs, || {
            format!("binary product transport at {t}, {u}")
        });
    }
    for tree in trees_up_to(bound) {
        let lhs = hopf::coproduct(&tree).map_keys(|k| {
            TensorKey(
                binary::planar_to_binary(&k.0),
                binary::planar_to_binary(&k.1),
            )
        });
        c.assert(
            lhs == binary::binary_coproduct(&binary::planar_to_binary(&tree)),
            || format!("binary coproduct transport at {tree}"),
        );
    }
    c.into_check("binary-transport")
}

fn chk_loday_ronco(maxdeg: usize) -> Check {
    let report = binary::loday_ronco_dual_check(maxdeg);
    let pass = report.all_pass();
    let detail = if pass {
        format!("{} sub-checks up to degree {maxdeg}", report.checks.len())
    } else {
        report
            .checks
            .iter()
            .find(|c| !c.pass)
            .map(|c| format!("failed: {} ({})", c.name, c.detail))
            .unwrap_or_default()
    };
    Check {
        name: "loday-ronco-dual".to_string(),
        pass,
        detail,
    }
}

fn binary_checks(maxdeg: usize) -> Vec<Check> {
    vec![
        chk_binary_roundtrip(maxdeg.max(5)),
        chk_binary_intervals(maxdeg),
        chk_binary_transport(maxdeg),
        chk_loday_ronco(maxdeg.min(6)),
    ]
}

// ---- the acceptance suite: fixed desk-scale bounds -------------------------

fn aggregate(name: &str, parts: Vec<Check>) -> Check {
    let pass = parts.iter().all(|c| c.pass);
    let detail = if pass {
        parts
            .iter()
            .map(|c| c.name.clone())
            .collect::<Vec<_>>()
            .join(", ")
    } else {
        parts
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    };
    Check {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn chk_family_enumeration() -> Check {
    let mut c = Collector::new();
    for n in 0..=8 {
        c.assert(trees(n).len() as u128 == catalan(n), || format!("|T_{n}|"));
        c.assert(
            binary::enumerate_binary(n).len() as u128 == catalan(n),
            || format!("|Y_{n}|"),
        );
    }
    for n in 0..=5 {
        c.assert(
            labelled::enumerate_family(Family::NTree, n).len() as u128 == factorial(n) * catalan(n),
            || format!("|T[{n}]|"),
        );
    }
    c.assert(
        labelled::enumerate_family(Family::NTree, 5).len() == 5040,
        || "|T[5]| = 5040".to_string(),
    );
    for n in 0..=6 {
        c.assert(
            labelled::enumerate_family(Family::Increasing, n).len() as u128
                == double_factorial_odd(n),
            || format!("|I[{n}]|"),
        );
        c.assert(
            labelled::enumerate_family(Family::Sorted, n).len() as u128 == factorial(n),
            || format!("|SI[{n}]|"),
        );
    }
    c.into_check("enumeration-counts")
}

pub fn acceptance_checks() -> Vec<Check> {
    vec![
        chk_family_enumeration(),
        {
            let mut parts = trees_checks(6);
            parts.retain(|c| c.name == "partition-counts");
            aggregate("partition-counts", parts)
        },
        aggregate(
            "product-addend-counts",
            vec![
                chk_product_addend_counts(6),
                chk_star_counts(4),
                chk_treed_counts(4),
                {
                    // binary products, degree sums <= 5
                    let mut c = Collector::new();
                    for dx in 0..=5usize {
                        for x in binary::enumerate_binary(dx) {
                            for dz in 0..=(5 - dx) {
                                for z in binary::enumerate_binary(dz) {
                                    c.assert(
                                        binary::binary_product(&x, &z).coefficient_sum()
                                            == coeff_int(binomial(dx + dz, dx) as i64),
                                        || format!("binary count at {x}, {z}"),
                                    );
                                }
                            }
                        }
                    }
                    c.into_check("binary-addend-counts")
                },
                chk_dual_counts(5),
            ],
        ),
        aggregate(
            "axiom-suites",
            vec![
                chk_coassociativity(6),
                chk_std_coassociativity(4),
                chk_product_associativity(5),
                chk_star_associativity(4),
                chk_hopf_compatibility(5),
                chk_star_compatibility(4),
                chk_infinitesimal(6),
                chk_slash_infinitesimal(4),
                chk_antipode(4),
                chk_counit_laws(6),
                chk_labelled_extension(4),
            ],
        ),
        chk_duality(5),
        aggregate(
            "idempotent-and-primitives",
            vec![
                chk_idempotent_laws(4),
                chk_primitive_ranks(),
                chk_dimension_series(),
                chk_cofreeness(6),
            ],
        ),
        aggregate(
            "bijections",
            vec![
                chk_euler_bijection(4),
                chk_stirling_words(4),
                chk_sorted_permutations(5),
                chk_binary_roundtrip(6),
                chk_binary_intervals(5),
            ],
        ),
        aggregate(
            "transport-equivalences",
            vec![
                chk_word_transport(4),
                chk_mr_transport(5),
                chk_binary_transport(5),
            ],
        ),
    ]
}
