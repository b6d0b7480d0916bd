//! The rank split that drives everything: over Z the coefficient matrix of
//! the explicit series has unbounded rank in the window, but mod p the rank
//! collapses to exactly p, because k! vanishes for k >= p. The finite-rank
//! side is constructive: a decomposition into p products a_s(x) b_s(y),
//! recombined here to check exactness.

use lacunary::construction::build_f;
use lacunary::rank::{finite_rank_decomposition, observed_rank, recompose};
use lacunary::ring::RingTag;

fn main() -> lacunary::Result<()> {
    let f = build_f(250, 250)?;

    let over_z = observed_rank(&f)?;
    println!("over Z:   rank {} (stabilized: {})", over_z.rank, over_z.stabilized);

    for p in [2u64, 3, 5, 7] {
        let reduced = f.reduce_mod(RingTag::fp(p)?)?;
        let report = observed_rank(&reduced)?;
        println!("mod {p}:    rank {} (stabilized: {})", report.rank, report.stabilized);
        assert!(report.rank as u64 <= p);

        let pairs = finite_rank_decomposition(&reduced, report.rank)?;
        let back = recompose(reduced.ring(), reduced.nx(), reduced.ny(), &pairs);
        assert!(reduced.eq_checked(&back)?, "decomposition must recompose exactly");
    }
    println!("\nall modular decompositions recompose exactly");

    // Mod 7 the window only reaches k <= 6, so the rank is capped by the
    // window rather than by the modulus; growing the window to 800 frees it.
    let wide = build_f(800, 800)?.reduce_mod(RingTag::fp(7)?)?;
    let report = observed_rank(&wide)?;
    println!("mod 7 at 800 x 800: rank {}", report.rank);
    assert_eq!(report.rank, 7);
    Ok(())
}
