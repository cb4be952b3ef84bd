//! Composing signed permutations and closing a generating set into a group.

use reflexlab::signed_perm::{Bits, Group, Perm, SignedPerm, DEFAULT_MAX_ORDER};

fn main() -> reflexlab::Result<()> {
    let flip = SignedPerm::new(Bits::parse("100").unwrap(), Perm::identity(3))?;
    let cycle = SignedPerm::from_perm(Perm::from_one_line(&[2, 3, 1])?);
    let prod = flip.compose(&cycle)?;
    println!("flip           {flip}");
    println!("cycle          {cycle}");
    println!("flip * cycle   {prod}");
    println!("inverse        {}", prod.inverse());

    let g = Group::close(3, &[flip, cycle], DEFAULT_MAX_ORDER)?;
    println!("closure order  {}", g.order());
    println!("classes        {}", g.conjugacy_classes().len());
    Ok(())
}
