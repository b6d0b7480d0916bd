//! Hunt for (n, d)-sieves in the explicit series mod p. A sieve at offset
//! m is d pillar rows, each framed by zero windows wide enough that no
//! low-degree polynomial combination can cancel them; finding one at every
//! prime is the infinite-rank witness.
//!
//! The offsets are not mysterious: the pillar construction predicts
//! m = 3^d - (n+1) d exactly, and the scan confirms it.

use lacunary::construction::build_f;
use lacunary::ring::RingTag;
use lacunary::sieve::{find_sieve_bi, verify_sieve_bi};

fn main() -> lacunary::Result<()> {
    let (nx, ny) = (300, 300);
    let f = build_f(nx, ny)?.antisymmetrize()?;

    println!("{:>3} {:>3} {:>6} {:>10} {:>8}", "p", "d", "m", "predicted", "verified");
    for (p, d) in [(2u64, 4usize), (3, 4), (5, 5)] {
        let n = p as usize;
        let reduced = f.reduce_mod(RingTag::fp(p)?)?;
        let m_max = ny - n * d - d - 1;
        let cert = find_sieve_bi(&reduced, n, d, m_max, 4)?
            .unwrap_or_else(|| panic!("no ({n}, {d})-sieve below offset {m_max} at p = {p}"));
        let predicted = 3u64.pow(d as u32) - (p + 1) * d as u64;
        let ok = verify_sieve_bi(&reduced, &cert)?;
        println!("{p:>3} {d:>3} {:>6} {predicted:>10} {ok:>8}", cert.m);
        assert_eq!(cert.m as u64, predicted);

        if p == 5 {
            println!("\nshape at p = 5 (row index = y-exponent):");
            println!("  pillar rows:  {:?}", cert.pillar_indices);
            println!("  zero windows: {:?}", cert.zero_windows);
        }
    }
    Ok(())
}
