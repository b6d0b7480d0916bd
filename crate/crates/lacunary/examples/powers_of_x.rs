//! No relation sum c_e (u/v)^e = 0 with integer c_e survives when u = x
//! and v = -(1 + x): the powers stay independent mod every prime, which is
//! what keeps the lamplighter scalars honest. The checker also refuses two
//! degenerate inputs by design: proportional pairs (ratio is constant) and
//! denominators that are not units at 0.

use lacunary::sieve::powers_independent;
use lacunary::Error;
use num_bigint::BigInt;

fn main() -> lacunary::Result<()> {
    let u = [BigInt::from(0), BigInt::from(1)];
    let v = [BigInt::from(-1), BigInt::from(-1)];

    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for p in primes {
        let report = powers_independent(&u, &v, p, 10, true)?;
        assert!(report.independent, "dependence at p = {p}");
    }
    println!("x over -(1 + x): independent through exponent 10 at all {} primes", primes.len());

    // A proportional pair is rejected before any scan.
    match powers_independent(&[BigInt::from(2)], &[BigInt::from(1)], 3, 10, true) {
        Err(Error::ConstantRatio) => println!("constant ratio 2/1: rejected, as it should be"),
        other => panic!("expected the constant-ratio guard, got {other:?}"),
    }

    // Raw mode skips the guards and reports the relation it finds.
    let report = powers_independent(
        &[BigInt::from(1), BigInt::from(1)],
        &[BigInt::from(2), BigInt::from(2)],
        5,
        3,
        false,
    )?;
    assert!(!report.independent);
    println!("raw mode on (1+x)/(2+2x): relation {:?}", report.relation.unwrap());
    Ok(())
}
