//! Writing and reading the generator file format.

use reflexlab::catalog::build_hyperoctahedral;
use reflexlab::cm_structure::CmGroup;
use reflexlab::signed_perm::{parse_generators, write_generators, Group, DEFAULT_MAX_ORDER};

fn main() -> reflexlab::Result<()> {
    let cm = build_hyperoctahedral(3, DEFAULT_MAX_ORDER)?;
    let text = write_generators(3, cm.group().generators());
    print!("{text}");

    let (degree, gens) = parse_generators(&text)?;
    let again = CmGroup::validate(Group::close(degree, &gens, DEFAULT_MAX_ORDER)?)?;
    println!("re-read order {} (original {})", again.order(), cm.order());

    match parse_generators("degree 2\nsigns=1 perm=1 2\n") {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("malformed input: {e}"),
    }
    Ok(())
}
