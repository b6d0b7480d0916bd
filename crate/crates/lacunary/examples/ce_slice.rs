//! Chevalley-Eilenberg homology of the window Lie algebra, degree two.
//! The slice is small enough to take exactly: d3 then d2, check that the
//! composite vanishes, and compare rank H2 against the sum of the
//! coinvariant and invariant ranks the structure theory predicts.

use lacunary::homology::ce_h2;

fn main() -> lacunary::Result<()> {
    println!(
        "{:>3} {:>6} {:>5} {:>5} {:>8} {:>8} {:>7} {:>6} {:>6}",
        "n", "dim g", "L2", "L3", "rank d2", "rank d3", "rank H2", "coinv", "inv"
    );
    for n in 2..=8usize {
        let (slice, report) = ce_h2(n)?;
        assert!(report.chain_identity, "d2 after d3 must vanish at n = {n}");
        assert!(report.rank_identity, "rank bookkeeping must close at n = {n}");
        assert_eq!(slice.h2_rank, report.h2_rank);
        println!(
            "{n:>3} {:>6} {:>5} {:>5} {:>8} {:>8} {:>7} {:>6} {:>6}",
            report.dim_g,
            report.dim_lambda2,
            report.dim_lambda3,
            report.d2_rank,
            report.d3_rank,
            report.h2_rank,
            report.coinvariant_rank,
            report.invariant_rank
        );
    }
    Ok(())
}
