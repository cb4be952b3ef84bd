//! CM-type orbits, reflex subgroups, and odd-subset representatives for the catalog.

use reflexlab::catalog::catalog;
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;

fn main() -> reflexlab::Result<()> {
    for spec in catalog() {
        let cm = spec.build(DEFAULT_MAX_ORDER)?;
        println!("{} (|G| = {})", spec.label(), cm.order());
        let mut total = 0;
        for o in cm.cm_orbits() {
            total += o.orbit_size;
            println!(
                "  type {}  reflex degree {}  |H*| = {}",
                o.representative,
                o.orbit_size,
                o.stabilizer.order()
            );
        }
        let jodd: Vec<String> = cm.jodd_representatives().iter().map(|s| s.to_string()).collect();
        println!("  sum of reflex degrees {total} = 2^{}", cm.degree());
        println!("  odd subsets up to G: {}", jodd.join(" "));
    }
    Ok(())
}
