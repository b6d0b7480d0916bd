//! A continuum of pairwise distinct elements from one binary expansion
//! trick: member f_r keeps x^{2^m} exactly when the m-th rational in a
//! fixed enumeration is below r. The isolation window of each member
//! bounds the polynomial degree any relation would need, so a family
//! whose windows all exceed the degree bound is certifiably independent,
//! and a family with narrow windows really can be dependent.

use lacunary::construction::{continuum_family, isolation_certificates, rationals_prefix};
use lacunary::linalg::rational_dependence;
use lacunary::ring::RingTag;
use lacunary::series::{LaurentTrunc, TruncSeries};
use num_rational::Ratio;

fn residue_rows(members: &[TruncSeries], p: u64) -> lacunary::Result<Vec<LaurentTrunc>> {
    members
        .iter()
        .map(|m| {
            let residues = m.reduce_mod(RingTag::fp(p)?)?.residues()?;
            Ok(LaurentTrunc::new(p, 0, residues))
        })
        .collect()
}

fn main() -> lacunary::Result<()> {
    let n = 4096usize;
    let prefix = rationals_prefix(8);
    let shown: Vec<String> = prefix.iter().map(|r| r.to_string()).collect();
    println!("first rationals of the enumeration: {}", shown.join(", "));

    // The member at r = -2 keeps nothing: no enumerated rational lies
    // below it at this window, and an empty member has no exponent to be
    // isolated by. The certificate machinery refuses it rather than
    // inventing a window.
    let family = continuum_family(&prefix, n)?;
    match isolation_certificates(&family) {
        Err(e) => println!("\nfull prefix is refused: {e}"),
        Ok(_) => panic!("the empty member must not certify"),
    }

    // Drop the empty member. The other seven certify, but look at the
    // windows: consecutive members can differ in a single exponent, and
    // then the window is only the gap to its nearest neighbour.
    let seven: Vec<Ratio<i64>> =
        prefix.into_iter().filter(|r| *r != Ratio::from_integer(-2)).collect();
    let family = continuum_family(&seven, n)?;
    println!("\nseven members, isolation windows:");
    let mut narrowest = usize::MAX;
    for w in isolation_certificates(&family)? {
        println!("  r = {:>4}: exponent {:>4}, window {}", w.member, w.exponent, w.window);
        narrowest = narrowest.min(w.window);
    }

    // A degree bound at or above the narrowest window can bridge the gap:
    // mod 2 the scan finds x^2 (f_{1/3} - f_0) = f_2 - f_1 = x^4.
    let witness = rational_dependence(&residue_rows(&family.members, 2)?, 3, n as i64)?;
    println!(
        "degree 3 >= narrowest window {narrowest}: dependence found mod 2 ({})",
        if witness.verify(&residue_rows(&family.members, 2)?) { "verified" } else { "unverified" }
    );
    assert!(!witness.certifies_absence());

    // The four-member subfamily has windows 8 and wider, so the same scan
    // certifies absence at degree 3, mod 2 and mod 3 alike.
    let four: Vec<Ratio<i64>> =
        [(-1i64, 1i64), (0, 1), (1, 2), (1, 1)].map(|(a, b)| Ratio::new(a, b)).to_vec();
    let family = continuum_family(&four, n)?;
    println!("\nfour members, isolation windows:");
    for w in isolation_certificates(&family)? {
        println!("  r = {:>4}: exponent {:>4}, window {}", w.member, w.exponent, w.window);
        assert!(w.window > 3, "window must clear the degree bound");
    }
    for p in [2u64, 3] {
        let witness = rational_dependence(&residue_rows(&family.members, p)?, 3, n as i64)?;
        assert!(witness.certifies_absence(), "unexpected relation mod {p}");
        println!("no polynomial relation of degree <= 3 among the four members mod {p}");
    }
    Ok(())
}
