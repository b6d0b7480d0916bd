//! The n,d-sieve: a detector and verifier for the window/pillar pattern in
//! the rows of a truncated series over F_p((x)), plus the two experiments
//! built on it: the power-independence test for a ratio of integer
//! polynomials, and the sieve-vs-rank experiment that pits the detector
//! against series assembled to have no sieve.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{fp_kernel, rational_dependence, DependenceWitness};
use crate::ring::{fppoly, RationalFunction};
use crate::series::{BiSeries, LaurentTrunc};

/// A found sieve at offset `m`: the windows `m + ld + i` (`0 <= l <= n`,
/// `1 <= i <= d-1`) all hold zero rows, and the pillar rows `m + ld`
/// (`1 <= l <= n`) carry a bounded-dependence absence record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SieveCertificate {
    pub p: u64,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub pillar_indices: Vec<usize>,
    /// Inclusive index ranges, one per `l = 0 ..= n`; empty when d = 1.
    pub zero_windows: Vec<(usize, usize)>,
    /// The search was exhaustive over `0 ..= searched_m_max`.
    pub searched_m_max: usize,
    pub independence: DependenceWitness,
}

fn window_ranges(m: usize, n: usize, d: usize) -> Vec<(usize, usize)> {
    if d < 2 {
        return Vec::new();
    }
    (0..=n).map(|l| (m + l * d + 1, m + l * d + d - 1)).collect()
}

fn pillar_list(m: usize, n: usize, d: usize) -> Vec<usize> {
    (1..=n).map(|l| m + l * d).collect()
}

fn uniform_prime(rows: &[LaurentTrunc]) -> Result<u64> {
    let first = rows
        .first()
        .ok_or_else(|| Error::PrecViolated("sieve scan over an empty row family".into()))?;
    let p = first.prime();
    for r in rows {
        if r.prime() != p {
            return Err(Error::PrimeMismatch(p, r.prime()));
        }
    }
    Ok(p)
}

/// Scan offsets `m = 0 ..= m_max` for a sieve, first match wins. Rows are
/// the y-coefficients of the series; `truncation` is the x-order at which
/// pillar independence is decided (with polynomial coefficients of degree
/// at most `degree_bound`). Deterministic in all inputs.
pub fn find_sieve(
    rows: &[LaurentTrunc],
    n: usize,
    d: usize,
    m_max: usize,
    degree_bound: usize,
    truncation: i64,
) -> Result<Option<SieveCertificate>> {
    if n < 1 || d < 1 {
        return Err(Error::PrecViolated(format!("sieve shape n={n}, d={d}, want both >= 1")));
    }
    let p = uniform_prime(rows)?;
    if rows.len() <= m_max + n * d + d {
        return Err(Error::BoundsTooSmall(format!(
            "{} rows cannot cover offset {m_max} plus {} windows",
            rows.len(),
            n * d + d
        )));
    }
    let zero: Vec<bool> = rows.iter().map(|r| r.is_zero()).collect();
    'scan: for m in 0..=m_max {
        for l in 0..=n {
            for i in 1..d {
                if !zero[m + l * d + i] {
                    continue 'scan;
                }
            }
        }
        let pillars = pillar_list(m, n, d);
        // A zero pillar is trivially dependent; don't bother solving.
        if pillars.iter().any(|&j| zero[j]) {
            continue;
        }
        let pillar_rows: Vec<LaurentTrunc> = pillars.iter().map(|&j| rows[j].clone()).collect();
        let witness = rational_dependence(&pillar_rows, degree_bound, truncation)?;
        if witness.certifies_absence() {
            return Ok(Some(SieveCertificate {
                p,
                n,
                d,
                m,
                pillar_indices: pillars,
                zero_windows: window_ranges(m, n, d),
                searched_m_max: m_max,
                independence: witness,
            }));
        }
    }
    Ok(None)
}

/// `find_sieve` on the rows of an F_p bivariate series, deciding pillar
/// independence at the series' own x-truncation.
pub fn find_sieve_bi(
    f: &BiSeries,
    n: usize,
    d: usize,
    m_max: usize,
    degree_bound: usize,
) -> Result<Option<SieveCertificate>> {
    find_sieve(&f.laurent_rows()?, n, d, m_max, degree_bound, f.nx() as i64)
}

/// Re-check a certificate against row data: structure, zero windows, and a
/// fresh dependence run at the certificate's recorded bounds.
pub fn verify_sieve(rows: &[LaurentTrunc], cert: &SieveCertificate) -> Result<bool> {
    let p = uniform_prime(rows)?;
    if cert.n < 1 || cert.d < 1 {
        return Ok(false);
    }
    let top = cert.m + cert.n * cert.d + cert.d - 1;
    if top >= rows.len() {
        return Err(Error::IndexOutOfRange(format!(
            "certificate reaches row {top}, only {} rows given",
            rows.len()
        )));
    }
    if p != cert.p
        || cert.pillar_indices != pillar_list(cert.m, cert.n, cert.d)
        || cert.zero_windows != window_ranges(cert.m, cert.n, cert.d)
        || !cert.independence.certifies_absence()
        || cert.independence.prime != cert.p
    {
        return Ok(false);
    }
    for &(start, end) in &cert.zero_windows {
        if rows[start..=end].iter().any(|r| !r.is_zero()) {
            return Ok(false);
        }
    }
    let pillar_rows: Vec<LaurentTrunc> =
        cert.pillar_indices.iter().map(|&j| rows[j].clone()).collect();
    let witness = rational_dependence(
        &pillar_rows,
        cert.independence.degree_bound,
        cert.independence.truncation,
    )?;
    Ok(witness.certifies_absence())
}

pub fn verify_sieve_bi(f: &BiSeries, cert: &SieveCertificate) -> Result<bool> {
    verify_sieve(&f.laurent_rows()?, cert)
}

// ---------------------------------------------------------------------------
// Power independence of a polynomial ratio.

/// Outcome of the powers test: whether `{U^j V^(n-j) mod p : 0 <= j <= n}`
/// is linearly independent over F_p; a failing run carries the relation,
/// with `relation[j]` multiplying `U^j V^(n-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PowersIndependence {
    pub p: u64,
    pub exponent: usize,
    pub independent: bool,
    pub relation: Option<Vec<u64>>,
}

fn reduce_int_poly(poly: &[BigInt], p: u64) -> Vec<u64> {
    let big_p = BigInt::from(p);
    fppoly::trim(
        poly.iter()
            .map(|c| {
                let mut r = c % &big_p;
                if r.is_negative() {
                    r += &big_p;
                }
                u64::try_from(r).expect("residue fits")
            })
            .collect(),
    )
}

fn fp_poly_pow(base: &[u64], e: usize, p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    for _ in 0..e {
        acc = fppoly::mul(&acc, base, p);
    }
    acc
}

/// Decide independence of the powers of `u/v` in F_p(x), given as the
/// kernel of the coefficient matrix of `{u^j v^(e-j)}`.
pub(crate) fn fp_powers_relation(u: &[u64], v: &[u64], e: usize, p: u64) -> Option<Vec<u64>> {
    let products: Vec<Vec<u64>> = (0..=e)
        .map(|j| fppoly::mul(&fp_poly_pow(u, j, p), &fp_poly_pow(v, e - j, p), p))
        .collect();
    let width = products.iter().map(|q| q.len()).max().unwrap_or(0).max(1);
    // Equations indexed by coefficient position, unknowns by j.
    let rows: Vec<Vec<u64>> = (0..width)
        .map(|pos| products.iter().map(|q| q.get(pos).copied().unwrap_or(0)).collect())
        .collect();
    fp_kernel(&rows, e + 1, p).into_iter().next()
}

/// The rationality guardrails of the powers test: `U` and `V` must not be
/// proportional over Q (ConstantRatio), and `V` must have constant term
/// plus or minus 1 (RationalityViolated), in that order. `enforce: false`
/// skips both, exposing the raw kernel answer.
pub fn powers_independent(
    u: &[BigInt],
    v: &[BigInt],
    p: u64,
    n: usize,
    enforce: bool,
) -> Result<PowersIndependence> {
    crate::ring::RingTag::fp(p)?;
    if enforce {
        if int_polys_proportional(u, v) {
            return Err(Error::ConstantRatio);
        }
        let v0 = v.first().cloned().unwrap_or_else(BigInt::zero);
        if v0 != BigInt::from(1) && v0 != BigInt::from(-1) {
            return Err(Error::RationalityViolated(format!(
                "denominator constant term {v0}, want +1 or -1"
            )));
        }
    }
    let up = reduce_int_poly(u, p);
    let vp = reduce_int_poly(v, p);
    let relation = fp_powers_relation(&up, &vp, n, p);
    Ok(PowersIndependence { p, exponent: n, independent: relation.is_none(), relation })
}

/// Proportionality over Q of two integer polynomials, zero included.
fn int_polys_proportional(u: &[BigInt], v: &[BigInt]) -> bool {
    let trim = |a: &[BigInt]| -> Vec<BigInt> {
        let mut out = a.to_vec();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    };
    let (u, v) = (trim(u), trim(v));
    if u.is_empty() || v.is_empty() {
        return true;
    }
    if u.len() != v.len() {
        return false;
    }
    // Cross-multiplication: u ~ v iff u[i] v[j] = u[j] v[i] for all i, j.
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The sieve-vs-rank experiment.

/// Inputs of one experiment run. `alpha` and `beta` are the K = F_p(x)
/// scalars of the assembly `F = (beta - alpha y) H + G`; the ranks cap the
/// k-dimension of H's rows and the K-dimension of G's rows.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub p: u64,
    pub alpha: RationalFunction,
    pub beta: RationalFunction,
    pub d: usize,
    pub n: usize,
    pub rank_h: usize,
    pub rank_g: usize,
    pub seed: u64,
    pub nx: usize,
    pub ny: usize,
    pub degree_bound: usize,
}

impl ExperimentConfig {
    /// The default instance: alpha = x, beta = 1 + x over F_p, window
    /// (160, 120), dependence degree bound 6.
    pub fn lamplighter(p: u64, d: usize, n: usize, rank_h: usize, rank_g: usize, seed: u64) -> Result<Self> {
        crate::ring::RingTag::fp(p)?;
        Ok(ExperimentConfig {
            p,
            alpha: RationalFunction::x(p),
            beta: RationalFunction::from_poly(p, vec![1, 1]),
            d,
            n,
            rank_h,
            rank_g,
            seed,
            nx: 160,
            ny: 120,
            degree_bound: 6,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentOutcome {
    NoSieveConfirmed,
    ContradictionFound,
}

/// Full record of one experiment: the scalars, the K-basis of G's row
/// space, the lambda values of the pillar-relation argument (all nonzero),
/// and the scan outcome with its certificate if one was found.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SieveExperimentTrace {
    pub config: ExperimentConfig,
    pub searched_m_max: usize,
    pub v_basis: Vec<LaurentTrunc>,
    pub lambdas: Vec<RationalFunction>,
    pub lambda_block_offsets: Vec<usize>,
    pub outcome: ExperimentOutcome,
    pub certificate: Option<SieveCertificate>,
}

fn random_lacunary_row(rng: &mut ChaCha8Rng, p: u64, nx: usize, terms: usize) -> LaurentTrunc {
    let mut dense = vec![0u64; nx];
    for _ in 0..terms {
        let e = rng.gen_range(0..nx);
        dense[e] = rng.gen_range(1..p);
    }
    LaurentTrunc::new(p, 0, dense)
}

fn random_ratfunc(rng: &mut ChaCha8Rng, p: u64) -> RationalFunction {
    let num: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
    let mut den: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
    den[0] = rng.gen_range(1..p.max(2));
    RationalFunction::new(p, num, den).expect("unit denominator")
}

fn dense_window(row: &LaurentTrunc, n: usize) -> Vec<u64> {
    (0..n as i64).map(|e| row.get(e).unwrap_or(0)).collect()
}

/// Assemble `F = (beta - alpha y) H + G` from seeded random data capped at
/// the configured ranks, then scan the full offset range for a sieve. The
/// assembly is the shape for which no sieve can exist, so the expected
/// outcome is `NoSieveConfirmed`; a certificate is a contradiction and is
/// returned inside the trace for inspection.
pub fn sieve_vs_rank_experiment(config: &ExperimentConfig) -> Result<SieveExperimentTrace> {
    let p = config.p;
    crate::ring::RingTag::fp(p)?;
    if config.d < 1 || config.n < 1 {
        return Err(Error::PrecViolated(format!(
            "experiment shape n={}, d={}, want both >= 1",
            config.n, config.d
        )));
    }
    if config.rank_h + 1 > config.d {
        return Err(Error::PrecViolated(format!(
            "rank_h = {} exceeds d - 1 = {}",
            config.rank_h,
            config.d - 1
        )));
    }
    if config.rank_g + 1 > config.n {
        return Err(Error::PrecViolated(format!(
            "rank_g = {} exceeds n - 1 = {}",
            config.rank_g,
            config.n - 1
        )));
    }
    if config.alpha.prime() != p || config.beta.prime() != p {
        return Err(Error::PrimeMismatch(p, config.alpha.prime()));
    }
    if config.beta.is_zero() {
        return Err(Error::PrecViolated("beta must be a unit of K".into()));
    }
    // The argument needs 1, sigma, ..., sigma^(d-1) independent over F_p
    // (for the lambdas) and the powers hypothesis at exponent n.
    let sigma = config.alpha.div(&config.beta)?;
    let check_exp = config.n.max(config.d - 1);
    if let Some(relation) =
        fp_powers_relation(sigma.numerator(), sigma.denominator(), check_exp, p)
    {
        return Err(Error::PrecViolated(format!(
            "powers of alpha/beta are dependent at exponent {check_exp}: relation {relation:?}"
        )));
    }
    if config.ny <= config.n * config.d + config.d {
        return Err(Error::BoundsTooSmall(format!(
            "ny = {} leaves no room for any offset at shape ({}, {})",
            config.ny, config.n, config.d
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let lacunary_terms = (config.nx / 20).max(3);
    let h_basis: Vec<LaurentTrunc> =
        (0..config.rank_h).map(|_| random_lacunary_row(&mut rng, p, config.nx, lacunary_terms)).collect();
    let g_basis: Vec<LaurentTrunc> =
        (0..config.rank_g).map(|_| random_lacunary_row(&mut rng, p, config.nx, lacunary_terms)).collect();

    let zero_row = || LaurentTrunc::zero(p, config.nx as i64);
    let h_rows: Vec<LaurentTrunc> = (0..config.ny)
        .map(|_| {
            let mut acc = zero_row();
            for b in &h_basis {
                let c = rng.gen_range(0..p);
                acc = acc.add(&b.scale(c)).expect("same prime");
            }
            acc
        })
        .collect();
    let g_rows: Vec<LaurentTrunc> = (0..config.ny)
        .map(|_| {
            let mut acc = zero_row();
            for b in &g_basis {
                let lam = random_ratfunc(&mut rng, p);
                acc = acc.add(&b.mul_ratfunc(&lam)?.truncate(config.nx as i64))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let truncation = config.nx as i64;
    let mut rows: Vec<LaurentTrunc> = Vec::with_capacity(config.ny);
    for j in 0..config.ny {
        let mut row = h_rows[j].mul_ratfunc(&config.beta)?.truncate(truncation);
        if j >= 1 {
            let shifted = h_rows[j - 1].mul_ratfunc(&config.alpha)?.truncate(truncation);
            row = row.add(&shifted.neg())?;
        }
        row = row.add(&g_rows[j])?.truncate(truncation);
        rows.push(row);
    }

    let m_max = config.ny - config.n * config.d - config.d - 1;
    let certificate = find_sieve(&rows, config.n, config.d, m_max, config.degree_bound, truncation)?;

    // The lambda values of the impossibility argument, demonstrated on the
    // pillar blocks at offset 0: for each block of d consecutive H rows an
    // F_p-relation exists (their k-rank is capped), and feeding its
    // coefficients through powers of sigma gives a nonzero K-scalar.
    let mut lambdas = Vec::with_capacity(config.n + 1);
    let mut lambda_block_offsets = Vec::with_capacity(config.n + 1);
    for l in 0..=config.n {
        let block: Vec<Vec<u64>> =
            (0..config.d).map(|i| dense_window(&h_rows[l * config.d + i], config.nx)).collect();
        let eqs: Vec<Vec<u64>> =
            (0..config.nx).map(|e| block.iter().map(|r| r[e]).collect()).collect();
        let b = fp_kernel(&eqs, config.d, p)
            .into_iter()
            .next()
            .expect("d rows of k-rank below d always satisfy a relation");
        let mut lam = RationalFunction::zero(p);
        for &c in b.iter().rev() {
            lam = lam.mul(&sigma).add(&RationalFunction::constant(p, c));
        }
        assert!(!lam.is_zero(), "lambda vanished despite independent sigma powers");
        lambdas.push(lam);
        lambda_block_offsets.push(l * config.d);
    }

    let outcome = if certificate.is_some() {
        ExperimentOutcome::ContradictionFound
    } else {
        ExperimentOutcome::NoSieveConfirmed
    };
    Ok(SieveExperimentTrace {
        config: config.clone(),
        searched_m_max: m_max,
        v_basis: g_basis,
        lambdas,
        lambda_block_offsets,
        outcome,
        certificate,
    })
}
