//! The split model: Gram matrix of the trace form and the Pfister decomposition on B₂.

use reflexlab::catalog::build_hyperoctahedral;
use reflexlab::rational::{int, ratio};
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;
use reflexlab::split_model::{verify_pfister, SplitParams};

fn main() -> reflexlab::Result<()> {
    let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER)?;
    let params = vec![
        SplitParams::new(vec![int(1), int(2)])?,
        SplitParams::new(vec![ratio(3, 2), int(1)])?,
        SplitParams::new(vec![ratio(1, 3), ratio(5, 4)])?,
    ];
    let r = verify_pfister(&cm, &params, 10, 1)?;
    println!("dimension {} (expected {})", r.dimension, r.expected_dimension);
    println!("Gram matrix:");
    for row in &r.gram {
        println!("  [{}]", row.join(", "));
    }
    println!("positive definite: {}", r.gram_positive_definite);
    for run in &r.runs {
        println!(
            "  e = ({})  homomorphism {}  form {}  bijective {}",
            run.e.join(", "),
            run.homomorphism,
            run.form_identity,
            run.bijective
        );
    }
    println!("passed: {}", r.passed);
    Ok(())
}
