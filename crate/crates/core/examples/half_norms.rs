//! Half-norm elements and the multiplication-by-2^{N-1} identity on B₃.

use reflexlab::catalog::build_hyperoctahedral;
use reflexlab::group_algebra::{
    half_norm_element, verify_block_pairs, verify_composite_norm, verify_product_identity,
};
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;

fn main() -> reflexlab::Result<()> {
    let cm = build_hyperoctahedral(3, DEFAULT_MAX_ORDER)?;
    for f in cm.lambda() {
        let n = half_norm_element(&cm, f);
        println!("N_Φ for f = {f}: {}", n.render_truncated(cm.group(), 4));
    }
    let prop = verify_composite_norm(&cm);
    println!("composite equals factor {}: {}", prop.factor, prop.passed);

    let pairs = verify_block_pairs(&cm);
    println!(
        "block identities: {} + {} pairs, passed {}, off-diagonal blocks zero only modulo ι + 1: {}",
        pairs.subset_blocks.len(),
        pairs.type_blocks.len(),
        pairs.passed,
        pairs.off_diagonal_nonzero
    );

    let product = verify_product_identity(&cm, 20, 7)?;
    println!(
        "product identity: {} identities over {} draws, passed {}",
        product.identities_checked, product.trials, product.passed
    );
    Ok(())
}
