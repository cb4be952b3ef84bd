//! Acceptance suite: one line per criterion, with runtime budgets.
//!
//! Runs without the libtest harness so the criteria execute sequentially
//! and their wall times are not distorted by parallel tests.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use reflexlab::catalog::catalog;
use reflexlab::catalog::dihedral::{dihedral_character_check, dihedral_counts, Dihedral};
use reflexlab::characters::{ambient_group, verify_character_identity, verify_decomposition_lemma};
use reflexlab::cm_structure::{verify_cocycle_suite, verify_orbit_sum, CmGroup, CmType};
use reflexlab::group_algebra::{
    verify_block_norms, verify_block_pairs, verify_composite_norm, verify_half_norm_sum,
    verify_norm_isomorphism, verify_product_identity,
};
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;
use reflexlab::split_model::{verify_pfister, SplitParams};

const SEED: u64 = 20240601;
const PRODUCT_TRIALS: usize = 20;
const PFISTER_TRIALS: usize = 8;
const AMBIENT_CAP: usize = 100_000;
const COCYCLE_ORDER_CAP: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

fn groups() -> Vec<(String, CmGroup)> {
    catalog()
        .into_iter()
        .map(|s| {
            (
                s.label(),
                s.build(DEFAULT_MAX_ORDER).expect("catalog group builds"),
            )
        })
        .collect()
}

fn with_prefix(mut o: Outcome, prefix: String) -> Outcome {
    o.detail = if o.detail.is_empty() {
        prefix
    } else {
        format!("{prefix}; {}", o.detail)
    };
    o
}

fn failures(names: Vec<String>) -> Outcome {
    Outcome {
        passed: names.is_empty(),
        detail: if names.is_empty() {
            String::new()
        } else {
            format!("failed on {}", names.join(", "))
        },
    }
}

fn orbit_sums() -> Outcome {
    let bad = groups()
        .into_iter()
        .filter(|(_, cm)| !verify_orbit_sum(cm).passed)
        .map(|(l, _)| l)
        .collect();
    failures(bad)
}

fn cocycles() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (label, cm) in groups() {
        if cm.order() > COCYCLE_ORDER_CAP {
            continue;
        }
        checked += 1;
        if !verify_cocycle_suite(&cm).passed {
            bad.push(label);
        }
    }
    with_prefix(failures(bad), format!("{checked} groups"))
}

fn characters() -> Outcome {
    let mut bad = Vec::new();
    let mut decomposed = 0;
    for (label, cm) in groups() {
        let id = verify_character_identity(&cm);
        let degree_ok = id.lhs_degree == (1u64 << (cm.degree() - 1)).to_string();
        if !(id.passed && degree_ok) {
            bad.push(format!("{label} (identity)"));
        }
        if ambient_group(&cm, AMBIENT_CAP).is_ok() {
            decomposed += 1;
            match verify_decomposition_lemma(&cm, AMBIENT_CAP) {
                Ok(r) if r.passed => {}
                _ => bad.push(format!("{label} (decomposition)")),
            }
        }
    }
    with_prefix(failures(bad), format!("{decomposed} decompositions"))
}

fn norms_and_blocks() -> Outcome {
    let mut bad = Vec::new();
    for (label, cm) in groups() {
        if !verify_composite_norm(&cm).passed {
            bad.push(format!("{label} (composite)"));
        }
        if !verify_half_norm_sum(&cm).iter().all(|r| r.passed) {
            bad.push(format!("{label} (sum)"));
        }
        if !verify_block_norms(&cm).passed {
            bad.push(format!("{label} (blocks)"));
        }
        if !verify_block_pairs(&cm).passed {
            bad.push(format!("{label} (pairs)"));
        }
        match verify_product_identity(&cm, PRODUCT_TRIALS, SEED) {
            Ok(r) if r.passed && r.trials >= 20 => {}
            _ => bad.push(format!("{label} (product identity)")),
        }
    }
    failures(bad)
}

fn isomorphism() -> Outcome {
    let mut bad = Vec::new();
    for (label, cm) in groups() {
        match verify_norm_isomorphism(&cm) {
            Ok(r) if r.passed && r.rank == 1 << (cm.degree() - 1) => {}
            _ => bad.push(label),
        }
    }
    failures(bad)
}

fn pfister() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = (String::new(), Duration::ZERO);
    for (label, cm) in groups() {
        if cm.degree() > 4 {
            continue;
        }
        let params = SplitParams::seeded_triple(cm.degree(), SEED);
        assert!(params.len() >= 3);
        let start = Instant::now();
        match verify_pfister(&cm, &params, PFISTER_TRIALS, SEED) {
            Ok(r) if r.passed && r.runs.len() >= 3 => {}
            _ => bad.push(label.clone()),
        }
        let t = start.elapsed();
        if t > slowest.1 {
            slowest = (label, t);
        }
    }
    let mut o = failures(bad);
    // the slowest group (hyperoctahedral-4) carries its own budget
    if slowest.1 > Duration::from_secs(300) {
        o.passed = false;
    }
    with_prefix(
        o,
        format!("slowest {} {:.1}s", slowest.0, slowest.1.as_secs_f64()),
    )
}

fn dihedral() -> Outcome {
    let mut bad = Vec::new();
    for n in [4, 6, 8] {
        match dihedral_character_check(n, DEFAULT_MAX_ORDER) {
            Ok(r) if r.passed => {}
            _ => bad.push(format!("characters n={n}")),
        }
    }
    for n in (2..=12).step_by(2) {
        match dihedral_counts(n) {
            Ok(r)
                if r.passed
                    && r.divisors
                        .iter()
                        .all(|d| d.s_equals_2t && d.s_tilde_equals_t_tilde) => {}
            _ => bad.push(format!("counts n={n}")),
        }
        let d = Dihedral::build(n, DEFAULT_MAX_ORDER).expect("dihedral builds");
        let mut reflex = d.cm().reflex_subgroup(CmType::base(n)).members().to_vec();
        let mut expected = vec![d.cm().group().identity(), d.alpha_power_beta(n - 1)];
        reflex.sort();
        expected.sort();
        if reflex != expected {
            bad.push(format!("reflex subgroup n={n}"));
        }
    }
    failures(bad)
}

fn reports_are_reproducible() -> Outcome {
    let dir = std::env::temp_dir().join(format!("reflexlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |name: &str| -> Vec<u8> {
        let path: PathBuf = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_reflexlab"))
            .args([
                "verify",
                "all",
                "--family",
                "hyperoctahedral",
                "--n",
                "3",
                "--seed",
                "11",
                "--trials",
                "5",
            ])
            .arg("--json")
            .arg(&path)
            .output()
            .expect("binary runs")
            .status;
        assert_eq!(status.code(), Some(0));
        std::fs::read(&path).expect("report written")
    };
    let a = run("a.json");
    let b = run("b.json");
    let _ = std::fs::remove_dir_all(&dir);
    Outcome {
        passed: !a.is_empty() && a == b,
        detail: format!("{} bytes", a.len()),
    }
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 orbit sizes sum to 2^N", Duration::from_secs(5), orbit_sums),
        ("2 cocycle law and equivalence", Duration::from_secs(30), cocycles),
        (
            "3 character identity and decomposition",
            Duration::from_secs(60),
            characters,
        ),
        (
            "4 half norms and product identities",
            Duration::from_secs(120),
            norms_and_blocks,
        ),
        ("5 isomorphism rank 2^(N-1)", Duration::from_secs(10), isomorphism),
        (
            "6 Pfister decomposition (N <= 4)",
            Duration::from_secs(600),
            pfister,
        ),
        (
            "7 dihedral counts and characters",
            Duration::from_secs(60),
            dihedral,
        ),
        (
            "8 byte-identical JSON reports",
            Duration::from_secs(120),
            reports_are_reproducible,
        ),
    ];
    let mut all = true;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= budget;
        let passed = outcome.passed && in_budget;
        all &= passed;
        println!(
            "{}  {name}  [{:.2}s / {}s]{}{}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_budget { "" } else { "  over budget" },
            if outcome.detail.is_empty() {
                String::new()
            } else {
                format!("  {}", outcome.detail)
            },
        );
    }
    if !all {
        std::process::exit(1);
    }
}
