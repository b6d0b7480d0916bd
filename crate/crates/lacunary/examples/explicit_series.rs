//! Build the explicit lacunary series and audit its exponent map: every
//! term x^{3^i + (k+1)i} y^{3^j - (k+1)j} must land on its own monomial,
//! or the k! coefficients would smear together.

use lacunary::construction::{build_f_with_audit, exponents};

fn main() -> lacunary::Result<()> {
    let (f, audit) = build_f_with_audit(300, 300)?;
    println!("window:      {} x {}", f.nx(), f.ny());
    println!("terms:       {}", f.term_count());
    println!("collisions:  {}", audit.collisions.len());
    assert!(audit.collisions.is_empty(), "the exponent map must be injective");

    // The diagonal pairs (i, i, k) carry coefficient k!; spot a few.
    println!("\nsample diagonal terms:");
    for (i, k) in [(1u32, 0u32), (2, 1), (3, 2), (4, 3)] {
        let row = exponents(i, k)?;
        let col = exponents(i, k)?;
        let c = f.coeff(row.s as usize, col.t as usize);
        println!("  i = j = {i}, k = {k}:  x^{} y^{} has coefficient {c}", row.s, col.t);
    }

    // Antisymmetrizing doubles every term off the bivariate diagonal and
    // kills the ones on it. Exactly one term lands there: (i, j, k) =
    // (1, 2, 1) gives x^5 y^5, since 3 + 2 = 9 - 4.
    let diagonal = (0..f.nx()).filter(|&a| !f.ring().is_zero(f.coeff(a, a))).count();
    let anti = f.antisymmetrize()?;
    println!("\ndiagonal terms: {diagonal}, antisymmetrized terms: {}", anti.term_count());
    assert_eq!(diagonal, 1);
    assert!(!f.ring().is_zero(f.coeff(5, 5)));
    assert_eq!(anti.term_count(), 2 * (f.term_count() - diagonal));
    Ok(())
}
