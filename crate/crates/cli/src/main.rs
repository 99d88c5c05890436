//! Command-line surface for the planar-hopf library: enumeration, products,
//! coproducts, primitive projections, dimension series, bijection streaming
//! and the verification suites.
//!
//! All output is line-oriented UTF-8 on stdout and byte-identical across runs
//! with identical arguments; cost estimates and errors go to stderr. Exit
//! status: 0 on success, 1 on verification failure, 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use planar_hopf::binary::{self, BinaryTree};
use planar_hopf::combinat::{catalan, double_factorial_odd, factorial};
use planar_hopf::hopf;
use planar_hopf::labelled::{self, Family, NTree};
use planar_hopf::linalg::Combination;
use planar_hopf::primitives::{self, Mode, PrimFamily};
use planar_hopf::tree::PlanarTree;
use planar_hopf::verify::{run_suite, Suite};
use planar_hopf::words::{self, Word};

#[derive(Parser)]
#[command(
    name = "planar-hopf",
    version,
    about = "Exact Hopf-algebra computations on planar rooted trees, labelled trees, permutation words and binary trees",
    after_help = "FORMATS:\n  tree     canonical nested parentheses, labels inline: (()()) or ((1 (2))(3))\n  word     space-separated letters (\"2 1 1 2\"); unspaced digits accepted for letters <= 9\n  binary   leaf \".\", internal \"(left,right)\"\n\nDEGREE CAPS (override with --force):\n  enumerate: tree 10, binary 10, ntree 6, increasing 7, sorted 8, stirling 7\n  convert:   euler 5, sorted-perm 7, planar-binary 8\n  series:    max 30\n  verify:    maxdeg 6, clamped per suite (trees 8, hopf 6, labelled 4, primitives 5, words 5, binary 6)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a family at one degree, one canonical form per line
    Enumerate {
        #[arg(long, value_enum)]
        family: EnumFamily,
        #[arg(long)]
        degree: usize,
        /// Allow degrees beyond the documented feasibility cap
        #[arg(long)]
        force: bool,
    },
    /// Product of two elements, printed as an exact combination
    Product {
        #[arg(long, value_enum)]
        family: AlgFamily,
        left: String,
        right: String,
    },
    /// Coproduct of one element, printed as a tensor combination
    Coproduct {
        #[arg(long, value_enum)]
        family: AlgFamily,
        input: String,
    },
    /// Dual product of two unlabelled planar trees
    DualProduct { left: String, right: String },
    /// Idempotent projection of a basis tree onto the primitive part
    Idempotent {
        #[arg(long, value_enum)]
        family: IdemFamily,
        input: String,
    },
    /// Component and primitive dimension series, one "n a b" row per degree
    Series {
        #[arg(long, value_enum)]
        family: SeriesFamily,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        force: bool,
    },
    /// Stream a bijection at one degree as input<TAB>output lines
    Convert {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite and report one line per check
    Verify {
        /// trees | hopf | labelled | primitives | words | binary | acceptance | all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        maxdeg: Option<usize>,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFamily {
    Tree,
    Ntree,
    Increasing,
    Sorted,
    Stirling,
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgFamily {
    Tree,
    Ntree,
    Word,
    Perm,
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdemFamily {
    Tree,
    Ntree,
    Increasing,
    Sorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFamily {
    Tree,
    Ntree,
    Increasing,
    Sorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    /// n-trees to treed permutations by the border walk
    Euler,
    /// sorted trees to permutations by post-order reading
    SortedPerm,
    /// planar trees to binary trees
    PlanarBinary,
}

fn usage(msg: impl AsRef<str>) -> ExitCode {
    eprintln!("error: {}", msg.as_ref());
    ExitCode::from(2)
}

fn estimate(lines: u128) {
    eprintln!("# expect {lines} lines");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Enumerate {
            family,
            degree,
            force,
        } => enumerate(family, degree, force),
        Command::Product {
            family,
            left,
            right,
        } => product(family, &left, &right),
        Command::Coproduct { family, input } => coproduct(family, &input),
        Command::DualProduct { left, right } => dual_product(&left, &right),
        Command::Idempotent { family, input } => idempotent(family, &input),
        Command::Series { family, max, force } => series(family, max, force),
        Command::Convert { map, degree, force } => convert(map, degree, force),
        Command::Verify {
            suite,
            maxdeg,
            force,
        } => verify(&suite, maxdeg, force),
    }
}

fn enumerate(family: EnumFamily, degree: usize, force: bool) -> ExitCode {
    let (cap, expected) = match family {
        EnumFamily::Tree | EnumFamily::Binary => (10, catalan(degree)),
        EnumFamily::Ntree => (6, factorial(degree) * catalan(degree)),
        EnumFamily::Increasing | EnumFamily::Stirling => (7, double_factorial_odd(degree)),
        EnumFamily::Sorted => (8, factorial(degree)),
    };
    if degree > cap && !force {
        return usage(format!(
            "degree {degree} exceeds the cap {cap} for this family (use --force to override)"
        ));
    }
    estimate(expected);
    match family {
        EnumFamily::Tree => {
            for t in PlanarTree::enumerate(degree) {
                println!("{t}");
            }
        }
        EnumFamily::Binary => {
            for x in binary::enumerate_binary(degree) {
                println!("{x}");
            }
        }
        EnumFamily::Stirling => {
            for w in words::enumerate_stirling(degree) {
                println!("{w}");
            }
        }
        EnumFamily::Ntree | EnumFamily::Increasing | EnumFamily::Sorted => {
            let f = match family {
                EnumFamily::Ntree => Family::NTree,
                EnumFamily::Increasing => Family::Increasing,
                _ => Family::Sorted,
            };
            for t in labelled::enumerate_family(f, degree) {
                println!("{t}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn parse_tree(text: &str) -> Result<PlanarTree, String> {
    PlanarTree::parse(text).map_err(|e| format!("bad tree {text:?}: {e}"))
}

fn parse_ntree(text: &str) -> Result<NTree, String> {
    NTree::parse(text).map_err(|e| format!("bad n-tree {text:?}: {e}"))
}

fn parse_treed(text: &str) -> Result<Word, String> {
    let w = Word::parse(text).map_err(|e| format!("bad word {text:?}: {e}"))?;
    if !w.is_empty() && !words::is_treed(&w) {
        return Err(format!("word {text:?} is not a treed permutation"));
    }
    Ok(w)
}

fn parse_perm(text: &str) -> Result<Word, String> {
    let w = Word::parse(text).map_err(|e| format!("bad word {text:?}: {e}"))?;
    if !w.is_permutation() {
        return Err(format!("word {text:?} is not a permutation"));
    }
    Ok(w)
}

fn parse_binary_tree(text: &str) -> Result<BinaryTree, String> {
    BinaryTree::parse(text).map_err(|e| format!("bad binary tree {text:?}: {e}"))
}

fn same_mode(a: &PlanarTree, b: &PlanarTree) -> Result<(), String> {
    match (a.is_labelled(), b.is_labelled()) {
        (Some(x), Some(y)) if x != y => {
            Err("operands mix labelled and unlabelled trees".to_string())
        }
        _ => Ok(()),
    }
}

fn product(family: AlgFamily, left: &str, right: &str) -> ExitCode {
    let rendered = match family {
        AlgFamily::Tree => parse_tree(left).and_then(|a| {
            parse_tree(right).and_then(|b| {
                same_mode(&a, &b)?;
                Ok(hopf::product(&a, &b).to_string())
            })
        }),
        AlgFamily::Ntree => parse_ntree(left)
            .and_then(|a| parse_ntree(right).map(|b| labelled::star_product(&a, &b).to_string())),
        AlgFamily::Word => parse_treed(left)
            .and_then(|a| parse_treed(right).map(|b| words::treed_product(&a, &b).to_string())),
        AlgFamily::Perm => parse_perm(left)
            .and_then(|a| parse_perm(right).map(|b| words::mr_product(&a, &b).to_string())),
        AlgFamily::Binary => parse_binary_tree(left).and_then(|a| {
            parse_binary_tree(right).map(|b| binary::binary_product(&a, &b).to_string())
        }),
    };
    match rendered {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn tensor_text<K: planar_hopf::linalg::BasisKey>(
    t: &Combination<planar_hopf::linalg::TensorKey<K>>,
) -> String {
    t.to_text_with(|k| k.to_string())
}

fn coproduct(family: AlgFamily, input: &str) -> ExitCode {
    let rendered = match family {
        AlgFamily::Tree => parse_tree(input).map(|t| tensor_text(&hopf::coproduct(&t))),
        AlgFamily::Ntree => parse_ntree(input).map(|t| tensor_text(&labelled::coproduct_std(&t))),
        AlgFamily::Word => parse_treed(input).map(|w| tensor_text(&words::treed_coproduct(&w))),
        AlgFamily::Perm => parse_perm(input).map(|w| tensor_text(&words::mr_coproduct(&w))),
        AlgFamily::Binary => {
            parse_binary_tree(input).map(|x| tensor_text(&binary::binary_coproduct(&x)))
        }
    };
    match rendered {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn dual_product(left: &str, right: &str) -> ExitCode {
    let parsed = parse_tree(left).and_then(|a| parse_tree(right).map(|b| (a, b)));
    let (a, b) = match parsed {
        Ok(pair) => pair,
        Err(e) => return usage(e),
    };
    if a.is_labelled() == Some(true) || b.is_labelled() == Some(true) {
        return usage("dual-product expects unlabelled trees");
    }
    println!("{}", hopf::dual_product(&a, &b));
    ExitCode::SUCCESS
}

fn idempotent(family: IdemFamily, input: &str) -> ExitCode {
    let mode = match family {
        IdemFamily::Tree => Mode::Dot,
        _ => Mode::Slash,
    };
    let tree = match family {
        IdemFamily::Tree => match parse_tree(input) {
            Ok(t) => t,
            Err(e) => return usage(e),
        },
        IdemFamily::Ntree | IdemFamily::Increasing | IdemFamily::Sorted => {
            let nt = match parse_ntree(input) {
                Ok(t) => t,
                Err(e) => return usage(e),
            };
            let member = match family {
                IdemFamily::Increasing => Family::Increasing.contains(&nt),
                IdemFamily::Sorted => Family::Sorted.contains(&nt),
                _ => true,
            };
            if !member {
                return usage(format!("{input:?} is not in the requested family"));
            }
            nt.into_tree()
        }
    };
    match primitives::idempotent_e(&Combination::basis(tree), mode) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e.to_string()),
    }
}

fn series(family: SeriesFamily, max: usize, force: bool) -> ExitCode {
    if max > 30 && !force {
        return usage("series --max caps at 30 (use --force to override)");
    }
    let family = match family {
        SeriesFamily::Tree => PrimFamily::Unlabelled,
        SeriesFamily::Ntree => PrimFamily::NTree,
        SeriesFamily::Increasing => PrimFamily::Increasing,
        SeriesFamily::Sorted => PrimFamily::Sorted,
    };
    for row in primitives::prim_dimensions(family, max).rows() {
        println!("{row}");
    }
    ExitCode::SUCCESS
}

fn convert(map: MapKind, degree: usize, force: bool) -> ExitCode {
    let (cap, expected) = match map {
        MapKind::Euler => (5, factorial(degree) * catalan(degree)),
        MapKind::SortedPerm => (7, factorial(degree)),
        MapKind::PlanarBinary => (8, catalan(degree)),
    };
    if degree > cap && !force {
        return usage(format!(
            "degree {degree} exceeds the cap {cap} for this map (use --force to override)"
        ));
    }
    estimate(expected);
    match map {
        MapKind::Euler => {
            for t in labelled::enumerate_family(Family::NTree, degree) {
                let w = words::euler_tour(t.as_tree()).expect("n-trees are labelled");
                println!("{t}\t{w}");
            }
        }
        MapKind::SortedPerm => {
            for t in labelled::enumerate_family(Family::Sorted, degree) {
                let w = words::sorted_to_permutation(&t).expect("enumeration is sorted");
                println!("{t}\t{w}");
            }
        }
        MapKind::PlanarBinary => {
            for t in PlanarTree::enumerate(degree) {
                println!("{t}\t{}", binary::planar_to_binary(&t));
            }
        }
    }
    ExitCode::SUCCESS
}

fn verify(suite: &str, maxdeg: Option<usize>, force: bool) -> ExitCode {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    if let Some(d) = maxdeg {
        if d > 6 && !force {
            return usage("verify --maxdeg caps at 6 (use --force to override)");
        }
    }
    match maxdeg {
        Some(d) => eprintln!(
            "# running suite {} with exhaustive checks up to degree {d}",
            suite.name()
        ),
        None => eprintln!(
            "# running suite {} at its default degree bounds",
            suite.name()
        ),
    }
    let report = run_suite(suite, maxdeg, force);
    for check in &report.checks {
        let status = if check.pass { "PASS" } else { "FAIL" };
        println!("{}: {} ({})", check.name, status, check.detail);
    }
    if report.all_pass() {
        println!("OK");
        ExitCode::SUCCESS
    } else {
        println!("FAIL");
        ExitCode::from(1)
    }
}
