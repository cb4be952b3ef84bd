//! Reflex classification, subset counts and the induced-character comparison
//! for the dihedral family.

use reflexlab::catalog::dihedral::{
    classification_check, dihedral_character_check, dihedral_counts, Dihedral,
};
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;

fn main() -> reflexlab::Result<()> {
    for n in [4, 6, 8] {
        let d = Dihedral::build(n, DEFAULT_MAX_ORDER)?;
        let c = classification_check(&d)?;
        println!("n = {n}, k0 = {}", c.k0);
        println!(
            "  rotations α^i in some reflex subgroup: i ∈ {:?}",
            c.rotations_in_reflex
        );
        println!(
            "  reflections α^iβ in some reflex subgroup: i ∈ {:?}",
            c.reflections_in_reflex
        );
        let counts = dihedral_counts(n)?;
        for j in &counts.divisors {
            println!(
                "  j = {}: s = {}, t = {}, s~ = {}, t~ = {}",
                j.j, j.s, j.t, j.s_tilde, j.t_tilde
            );
        }
        let s = dihedral_character_check(n, DEFAULT_MAX_ORDER)?;
        println!(
            "  characters equal: {}, subgroups non-conjugate: {}",
            s.equal, s.not_conjugate
        );
    }
    Ok(())
}
