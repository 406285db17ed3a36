//! Build McKay quivers with superpotential relations for a few abelian
//! orbifolds and print their structure.
//!
//! ```bash
//! cargo run --example build_quiver
//! ```

use quiver_bps::orbifold::{mckay_quiver_with_relations, OrbifoldSpec};

fn main() -> quiver_bps::Result<()> {
    for (order, weights) in [(1, [0, 0, 0]), (3, [1, 1, 1]), (5, [1, 2, 2]), (7, [1, 2, 4])] {
        let spec = OrbifoldSpec::new(order, weights)?;
        let q = mckay_quiver_with_relations(&spec)?;
        println!(
            "C^3/Z_{order} with weights {weights:?}: nodes {}, arrows {}, relations {}",
            q.node_count,
            q.arrows.len(),
            q.relations.len()
        );
        for a in q.arrows.iter().take(6) {
            println!("  arrow {} -> {} (coordinate {})", a.src, a.dst, a.label);
        }
        if q.arrows.len() > 6 {
            println!("  ...");
        }
    }

    // the full quiver serializes to JSON
    let spec = OrbifoldSpec::new(3, [1, 1, 1])?;
    let q = mckay_quiver_with_relations(&spec)?;
    println!("\nZ_3 quiver as JSON:\n{}", serde_json::to_string_pretty(&q).unwrap());
    Ok(())
}
