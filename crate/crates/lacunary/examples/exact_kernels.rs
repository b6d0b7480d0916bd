//! The exact linear algebra the certificates stand on: Smith normal form
//! over Z, kernels over F_p, and the bounded-degree dependence scan with
//! its self-verifying witness.

use lacunary::linalg::{kernel_basis_fp, rational_dependence, smith_normal_form, Matrix};
use lacunary::ring::RingTag;
use lacunary::series::LaurentTrunc;

fn main() -> lacunary::Result<()> {
    // diag(6, 10, 15) has invariant factors 1, 30, 30.
    let m = Matrix::from_i64_rows(RingTag::IntZ, &[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]);
    let smith = smith_normal_form(&m)?;
    let factors: Vec<String> = smith.invariant_factors.iter().map(|f| f.to_string()).collect();
    println!("smith of diag(6, 10, 15): [{}]", factors.join(", "));
    assert_eq!(factors, ["1", "30", "30"]);

    // A rank-one matrix over F_7 has a two-dimensional kernel.
    let k = Matrix::from_i64_rows(RingTag::fp(7)?, &[vec![1, 2, 3], vec![2, 4, 6]]);
    let kernel = kernel_basis_fp(&k)?;
    println!("kernel of the rank-one matrix over F_7: {} basis vectors", kernel.len());
    assert_eq!(kernel.len(), 2);

    // Plant a shift relation x * g0 = g1 among Laurent rows over F_5 and
    // let the degree-1 scan find it; the witness re-verifies itself.
    let g0 = LaurentTrunc::new(5, 0, vec![1, 2, 0, 3, 0, 0, 1, 0, 4, 0, 0, 2]);
    let g1 = LaurentTrunc::new(5, 0, vec![0, 1, 2, 0, 3, 0, 0, 1, 0, 4, 0, 0]);
    let witness = rational_dependence(&[g0.clone(), g1.clone()], 1, 12)?;
    match &witness.combination {
        Some(combo) => println!("planted relation found: coefficients {combo:?}"),
        None => panic!("the shift relation must be visible at degree 1"),
    }
    assert!(witness.verify(&[g0.clone(), g1]));

    // Replace g1 by something unrelated and the scan certifies absence.
    let g2 = LaurentTrunc::new(5, 0, vec![1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
    let witness = rational_dependence(&[g0, g2], 1, 12)?;
    assert!(witness.certifies_absence());
    println!("unrelated pair: absence certified at degree 1, truncation 12");
    Ok(())
}
