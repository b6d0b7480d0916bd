//! Subtract the first p separable layers g_k(x) h~_k(y) from the explicit
//! series and watch the residual become divisible by p: the leftover terms
//! all carry k! with k >= p. The witness is the exact quotient Q with
//! residual = p * Q, re-verified here term by term.

use lacunary::construction::{build_f, build_generator, generator_sum, GeneratorKind};
use lacunary::construction::divisibility_witness;
use lacunary::ring::Coeff;

fn main() -> lacunary::Result<()> {
    let (nx, ny) = (300, 300);
    for p in [2u64, 3, 5] {
        let q = divisibility_witness(p, nx, ny)?;
        println!("p = {p}: quotient has {} terms", q.term_count());

        // Re-derive the residual independently and compare p * Q against it.
        let f = build_f(nx, ny)?;
        let mut residual = f;
        for k in 0..p as u32 {
            let g = build_generator(GeneratorKind::G, k, None, nx)?;
            let h = build_generator(GeneratorKind::HTilde, k, None, ny)?;
            residual = residual.sub(&lacunary::homology::theta_image(&g, &h)?)?;
        }
        assert!(residual.eq_checked(&q.scale(&Coeff::Int(p.into())))?);
    }

    // The running sum of separable layers is itself a window object; its
    // term count grows with k until the window cuts it off.
    println!("\nseparable sums at 300 x 300:");
    for kmax in 0..6u32 {
        let s = generator_sum(kmax, nx, ny)?;
        println!("  sum over k <= {kmax}: {} terms", s.term_count());
    }
    Ok(())
}
