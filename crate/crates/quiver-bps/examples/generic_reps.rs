//! Sample representations on the relation variety, check the superpotential
//! relations, compute Hom spaces, and enumerate subobject dimension vectors.
//!
//! ```bash
//! cargo run --example generic_reps
//! ```

use std::sync::Arc;

use quiver_bps::orbifold::{mckay_quiver_with_relations, OrbifoldSpec};
use quiver_bps::rep::{
    check_relations, direct_sum, enumerate_subrep_dimvectors, generic_rep, hom_space,
    SubrepOptions,
};

fn main() -> quiver_bps::Result<()> {
    let spec = OrbifoldSpec::new(3, [1, 1, 1])?;
    let quiver = Arc::new(mckay_quiver_with_relations(&spec)?);

    let dims = vec![1, 1, 1];
    let rep = generic_rep(&quiver, &dims, 42)?;
    println!(
        "generic rep with dims {dims:?}: {} violated relations",
        check_relations(&rep)?.len()
    );

    println!("Hom(rep, rep) dimension: {}", hom_space(&rep, &rep)?);

    let other = generic_rep(&quiver, &vec![0, 1, 1], 7)?;
    println!(
        "Hom(rep, other) dimension: {}",
        hom_space(&rep, &other)?
    );

    let sum = direct_sum(&rep, &other)?;
    println!(
        "direct sum dims {:?}, still satisfies relations: {}",
        sum.dims,
        check_relations(&sum)?.is_empty()
    );

    let opts = SubrepOptions::default();
    println!("\nsubobject dimension vectors of the generic rep:");
    for d in enumerate_subrep_dimvectors(&rep, &opts)? {
        println!("  {d:?}");
    }
    println!("of the direct sum:");
    for d in enumerate_subrep_dimvectors(&sum, &opts)? {
        println!("  {d:?}");
    }
    Ok(())
}
