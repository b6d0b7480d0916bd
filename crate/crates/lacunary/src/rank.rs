//! Finite-rank detection for truncated bivariate series.
//!
//! The coefficient matrix of a [`BiSeries`] has row `j` equal to the
//! x-coefficients of `y^j`. Its rank over the coefficient field (or its
//! Smith form over Z) is the observable shadow of the series being a finite
//! sum of products `a(x) b(y)`; `finite_rank_decomposition` recovers such a
//! sum exactly at the truncation.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{fp_rank, fp_rref, smith_of_int_rows, Matrix};
use crate::ring::RingTag;
use crate::series::{BiSeries, TruncSeries};

/// Observed rank data for a truncated bivariate series.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankReport {
    #[serde(serialize_with = "crate::report::ser_ring")]
    pub ring: RingTag,
    pub nx: usize,
    pub ny: usize,
    pub rank: usize,
    #[serde(serialize_with = "crate::report::ser_opt_bigint_vec")]
    pub invariant_factors: Option<Vec<BigInt>>,
    /// Whether the rank already agreed one row earlier: a cheap signal that
    /// the truncation, not the series, is the binding constraint.
    pub stabilized: bool,
}

/// The Ny x Nx coefficient matrix: row `j` holds the coefficients of
/// `f_j(x)`, the x-series in front of `y^j`.
pub fn coefficient_matrix(f: &BiSeries) -> Matrix {
    Matrix::from_fn(f.ring(), f.ny(), f.nx(), |j, a| f.coeff(a, j).clone())
}

/// Fraction-free (Bareiss) rank of integer rows; exact over Q.
pub(crate) fn int_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    use num_traits::{One, Zero};
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of the coefficient matrix, with invariant factors over Z. The
/// stabilized flag compares against the top row removed.
pub fn observed_rank(f: &BiSeries) -> Result<RankReport> {
    match f.ring() {
        RingTag::Fp(p) => {
            let m = coefficient_matrix(f);
            let rows = m.residue_rows()?;
            let rank = fp_rank(&rows, p);
            let shorter = fp_rank(&rows[..rows.len() - 1], p);
            Ok(RankReport {
                ring: f.ring(),
                nx: f.nx(),
                ny: f.ny(),
                rank,
                invariant_factors: None,
                stabilized: rank == shorter,
            })
        }
        RingTag::IntZ => {
            let m = coefficient_matrix(f);
            let rows = m.int_rows()?;
            let shorter = int_rank(rows[..rows.len() - 1].to_vec());
            let smith = smith_of_int_rows(rows);
            Ok(RankReport {
                ring: f.ring(),
                nx: f.nx(),
                ny: f.ny(),
                rank: smith.rank,
                invariant_factors: Some(smith.invariant_factors),
                stabilized: smith.rank == shorter,
            })
        }
        _ => Err(Error::UnsupportedRing("observed_rank wants Z or F_p coefficients")),
    }
}

/// Write an F_p bivariate series as a sum of exactly `rank` products
/// `a_s(x) b_s(y)`, from the reduced row echelon form of its coefficient
/// matrix: the echelon rows give the `a_s`, the pivot columns of the
/// original matrix give the `b_s`.
pub fn finite_rank_decomposition(
    f: &BiSeries,
    rank: usize,
) -> Result<Vec<(TruncSeries, TruncSeries)>> {
    let p = match f.ring() {
        RingTag::Fp(p) => p,
        _ => return Err(Error::UnsupportedRing("decomposition wants F_p coefficients")),
    };
    let m = coefficient_matrix(f);
    let original = m.residue_rows()?;
    let mut work = original.clone();
    let pivots = fp_rref(&mut work, p);
    if pivots.len() != rank {
        return Err(Error::RankMismatch { requested: rank, observed: pivots.len() });
    }
    let ring = f.ring();
    let mut pairs = Vec::with_capacity(rank);
    for (s, &pc) in pivots.iter().enumerate() {
        let a = TruncSeries::from_terms(
            ring,
            f.nx(),
            &work[s]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (BigInt::from(c), e))
                .collect::<Vec<_>>(),
        );
        let b = TruncSeries::from_terms(
            ring,
            f.ny(),
            &original
                .iter()
                .enumerate()
                .filter(|(_, row)| row[pc] != 0)
                .map(|(j, row)| (BigInt::from(row[pc]), j))
                .collect::<Vec<_>>(),
        );
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// Recombine decomposition pairs into a bivariate series; the test-side
/// inverse of [`finite_rank_decomposition`].
pub fn recompose(
    ring: RingTag,
    nx: usize,
    ny: usize,
    pairs: &[(TruncSeries, TruncSeries)],
) -> BiSeries {
    let mut f = BiSeries::zero(ring, nx, ny);
    for (a, b) in pairs {
        for j in 0..ny {
            let c = b.coeff(j);
            if ring.is_zero(c) {
                continue;
            }
            let row = a.scale(c);
            for e in 0..nx {
                let cur = f.coeff(e, j).clone();
                f.set_coeff(e, j, ring.add(&cur, row.coeff(e)));
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Coeff;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> RingTag {
        RingTag::fp(p).unwrap()
    }

    #[test]
    fn rank_one_outer_product() {
        // F = x * (y + 2y^2) has coefficient matrix of rank 1.
        let f = BiSeries::from_terms_i64(fp(5), 4, 4, &[(1, 1, 1), (2, 1, 2)]);
        let report = observed_rank(&f).unwrap();
        assert_eq!(report.rank, 1);
        assert!(report.stabilized);
        let pairs = finite_rank_decomposition(&f, 1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(recompose(fp(5), 4, 4, &pairs).eq_checked(&f).unwrap());
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let f = BiSeries::from_terms_i64(fp(3), 3, 3, &[(1, 0, 0), (1, 1, 1)]);
        assert!(matches!(
            finite_rank_decomposition(&f, 1),
            Err(Error::RankMismatch { requested: 1, observed: 2 })
        ));
    }

    #[test]
    fn integer_rank_includes_invariant_factors() {
        let f = BiSeries::from_terms_i64(RingTag::IntZ, 2, 2, &[(2, 0, 0), (4, 1, 1)]);
        let report = observed_rank(&f).unwrap();
        assert_eq!(report.rank, 2);
        assert_eq!(
            report.invariant_factors,
            Some(vec![BigInt::from(2), BigInt::from(4)])
        );
    }

    #[test]
    fn stabilization_flags_top_row_contributions() {
        // All mass in the last y-row: removing it drops the rank.
        let f = BiSeries::from_terms_i64(RingTag::IntZ, 3, 3, &[(1, 1, 2)]);
        let report = observed_rank(&f).unwrap();
        assert_eq!(report.rank, 1);
        assert!(!report.stabilized);
    }

    #[test]
    fn unsupported_rings_are_rejected() {
        let f = BiSeries::zero(RingTag::zmod_pe(2, 3).unwrap(), 2, 2);
        assert!(matches!(observed_rank(&f), Err(Error::UnsupportedRing(_))));
        let g = BiSeries::zero(RingTag::IntZ, 2, 2);
        assert!(matches!(
            finite_rank_decomposition(&g, 0),
            Err(Error::UnsupportedRing(_))
        ));
    }

    /// Round-trip: random low-rank series decompose and recompose exactly,
    /// and the decomposition has exactly the observed rank.
    #[test]
    fn decomposition_recomposes_random_low_rank_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let ring = fp(p);
            let (nx, ny) = (rng.gen_range(3..9), rng.gen_range(3..9));
            let r = rng.gen_range(1..3usize);
            let mut f = BiSeries::zero(ring, nx, ny);
            for _ in 0..r {
                let a: Vec<(i64, usize)> =
                    (0..nx).map(|e| (rng.gen_range(0..p as i64), e)).collect();
                let b: Vec<(i64, usize)> =
                    (0..ny).map(|e| (rng.gen_range(0..p as i64), e)).collect();
                let pair = (
                    TruncSeries::from_terms_i64(ring, nx, &a),
                    TruncSeries::from_terms_i64(ring, ny, &b),
                );
                f = f.add(&recompose(ring, nx, ny, &[pair])).unwrap();
            }
            let rank = observed_rank(&f).unwrap().rank;
            assert!(rank <= r);
            let pairs = finite_rank_decomposition(&f, rank).unwrap();
            assert!(recompose(ring, nx, ny, &pairs).eq_checked(&f).unwrap());
        }
    }

    fn random_int_biseries(rng: &mut ChaCha8Rng, nx: usize, ny: usize, span: i64) -> BiSeries {
        let mut f = BiSeries::zero(RingTag::IntZ, nx, ny);
        for b in 0..ny {
            for a in 0..nx {
                f.set_coeff(a, b, Coeff::Int(BigInt::from(rng.gen_range(-span..=span))));
            }
        }
        f
    }

    /// Multiplying an integer series by a nonzero scalar leaves the rank
    /// alone and scales every invariant factor by it: the observable shadow
    /// of the ambient group being torsion free.
    #[test]
    fn scalar_multiples_scale_invariant_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let (nx, ny) = (rng.gen_range(2..7), rng.gen_range(2..7));
            let f = random_int_biseries(&mut rng, nx, ny, 4);
            let base = observed_rank(&f).unwrap();
            for n in [2i64, 3, 6] {
                let scaled = f.scale(&Coeff::Int(BigInt::from(n)));
                let report = observed_rank(&scaled).unwrap();
                assert_eq!(report.rank, base.rank, "scalar {n}");
                let want: Vec<BigInt> = base
                    .invariant_factors
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|d| d * n)
                    .collect();
                assert_eq!(report.invariant_factors, Some(want), "scalar {n}");
            }
        }
    }

    /// Rank never drops as the window grows: each window's matrix is a
    /// submatrix of the next, so the observed rank at any truncation is a
    /// floor for every larger one.
    #[test]
    fn rank_is_monotone_in_the_truncation_window() {
        fn restrict(f: &BiSeries, nx: usize, ny: usize) -> BiSeries {
            let mut out = BiSeries::zero(f.ring(), nx, ny);
            for b in 0..ny {
                for a in 0..nx {
                    out.set_coeff(a, b, f.coeff(a, b).clone());
                }
            }
            out
        }
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let (nx, ny) = (rng.gen_range(3..9), rng.gen_range(3..9));
            let f = random_int_biseries(&mut rng, nx, ny, 3);
            let mut last = 0;
            for k in 2..=nx.min(ny) {
                let r = observed_rank(&restrict(&f, k, k)).unwrap().rank;
                assert!(r >= last, "rank dropped from {last} to {r} at window {k}");
                last = r;
            }
            assert!(last <= observed_rank(&f).unwrap().rank);
        }
    }

    /// Bareiss rank agrees with the Smith rank on random integer matrices.
    #[test]
    fn bareiss_and_smith_ranks_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..80 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let data: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let r1 = int_rank(data.clone());
            let r2 = smith_of_int_rows(data).rank;
            assert_eq!(r1, r2);
        }
    }
}
