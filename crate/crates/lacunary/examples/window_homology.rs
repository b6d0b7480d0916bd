//! Two windows onto the same coinvariant module, with opposite answers.
//! Over the group window the shift identifies basis pairs along diagonals
//! and the module stays free of rank width - 1. Over the completion window
//! the truncated relation rows acquire content: torsion appears, and that
//! torsion is the obstruction the whole argument feeds on.

use lacunary::homology::{h2hat_quotient_presentation, lambda2_coinvariants, WindowModel};

fn main() -> lacunary::Result<()> {
    println!("group window (free all the way up):");
    println!("{:>7} {:>12} {:>10} {:>9}", "width", "generators", "free rank", "torsion");
    for width in 2..=10usize {
        let pres = lambda2_coinvariants(WindowModel::Group { width })?;
        println!(
            "{width:>7} {:>12} {:>10} {:>9}",
            pres.generator_count,
            pres.free_rank,
            pres.torsion_factors.len()
        );
        assert_eq!(pres.free_rank, width - 1);
        assert!(pres.torsion_factors.is_empty());
    }

    println!("\ncompletion window at truncation 3:");
    let pres = lambda2_coinvariants(WindowModel::Completion { truncation: 3 })?;
    println!("  generators {}, free rank {}", pres.generator_count, pres.free_rank);
    println!("  relation rows: {:?}", pres.relation_matrix.int_rows()?);

    println!("\ntruncated quotient presentations:");
    for n in 1..=4usize {
        let pres = h2hat_quotient_presentation(n)?;
        let factors: Vec<String> =
            pres.smith.invariant_factors.iter().map(|f| f.to_string()).collect();
        println!(
            "  N = {n}: {} generators, free rank {}, invariant factors [{}]",
            pres.generator_count,
            pres.free_rank,
            factors.join(", ")
        );
    }
    Ok(())
}
