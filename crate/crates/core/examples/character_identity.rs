//! Both sides of the induced sign-character identity on ⟨ι⟩ × S₃.

use reflexlab::catalog::build_iota_times_g0;
use reflexlab::characters::{verify_character_identity, verify_decomposition_lemma};
use reflexlab::signed_perm::{Perm, DEFAULT_MAX_ORDER};

fn main() -> reflexlab::Result<()> {
    let g0 = [Perm::from_one_line(&[2, 3, 1])?, Perm::from_one_line(&[2, 1, 3])?];
    let cm = build_iota_times_g0(3, &g0, DEFAULT_MAX_ORDER)?;
    let r = verify_character_identity(&cm);
    println!("degree {} (expected {})", r.lhs_degree, r.expected_degree);
    println!("{:<24} {:>5} {:>6} {:>6}", "class", "size", "lhs", "rhs");
    for (l, rr) in r.lhs.iter().zip(&r.rhs) {
        println!(
            "{:<24} {:>5} {:>6} {:>6}",
            l.representative, l.size, l.value, rr.value
        );
    }
    println!("equal: {}", r.equal);

    let d = verify_decomposition_lemma(&cm, DEFAULT_MAX_ORDER)?;
    println!(
        "ambient order {}, constituents irreducible: {}, passed: {}",
        d.ambient_order, d.irreducible, d.passed
    );
    Ok(())
}
