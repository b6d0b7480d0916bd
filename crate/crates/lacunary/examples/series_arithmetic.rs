//! The window discipline at ground level: series parse from text, carry
//! their ring and truncation, and refuse to claim coefficients past the
//! window. Products truncate, units invert, and reduction mod p commutes
//! with everything.

use lacunary::ring::RingTag;
use lacunary::series::{BiSeries, TruncSeries};

fn main() -> lacunary::Result<()> {
    let ring = RingTag::IntZ;
    let a = TruncSeries::parse(ring, 8, "1 - x")?;
    let b = TruncSeries::parse(ring, 8, "1 + x + x^2 + x^3 + x^4 + x^5 + x^6 + x^7")?;

    // (1 - x) times the geometric partial sum collapses to 1 - x^8, and
    // x^8 is past the window.
    let prod = a.mul_trunc(&b)?;
    println!("(1 - x) * (1 + ... + x^7) at order 8:  {}", prod.to_text());
    assert_eq!(prod.support(), vec![0]);

    // Inverting 1 - x recovers the geometric series on the window.
    let inv = a.invert_unit()?;
    println!("(1 - x)^-1 at order 8:                 {}", inv.to_text());
    assert!(inv.eq_checked(&b)?);

    // Reduction mod 3 after arithmetic equals arithmetic after reduction.
    let c = TruncSeries::parse(ring, 8, "2 + 5x^2 - 7x^3")?;
    let f3 = RingTag::fp(3)?;
    let left = a.mul_trunc(&c)?.reduce_mod(f3)?;
    let right = a.reduce_mod(f3)?.mul_trunc(&c.reduce_mod(f3)?)?;
    assert!(left.eq_checked(&right)?);
    println!("reduction mod 3 commutes with products: {}", left.to_text());

    // Bivariate windows track both truncations independently.
    let f = BiSeries::parse(ring, 6, 4, "x y^2 - 3 x^4 y^3 + x^5")?;
    println!("\nbivariate, window 6 x 4: {} terms", f.term_count());
    let g = f.transpose();
    match g {
        Err(e) => println!("transpose on an asymmetric window is refused: {e}"),
        Ok(_) => panic!("a 6 x 4 window must not transpose"),
    }
    Ok(())
}
