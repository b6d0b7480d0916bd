//! The p-adic diagonal series sum p^k x^k y^k, cut at k_cut: the tail past
//! the cut is divisible by p^k_cut, the whole window is symmetric in x and
//! y, and the coefficient matrix has invariant factors 1, p, ..., p^{n-1}.
//! This is the window shadow of an element in the p-adic completion that
//! no finitely generated piece accounts for.

use lacunary::construction::specker_padic;

fn main() -> lacunary::Result<()> {
    for p in [2u64, 3] {
        println!("p = {p}:");
        for k_cut in 0..=4u32 {
            let (series, report) = specker_padic(p, k_cut, 8)?;
            println!(
                "  cut {k_cut}: {} terms, symmetric {}, tail divisible {}",
                series.term_count(),
                report.symmetric,
                report.residual_divisible
            );
            assert!(report.symmetric && report.residual_divisible);
        }
        let (_, report) = specker_padic(p, 0, 8)?;
        let factors: Vec<String> =
            report.invariant_factors.iter().map(|f| f.to_string()).collect();
        println!("  invariant factors: {}", factors.join(", "));
    }
    Ok(())
}
