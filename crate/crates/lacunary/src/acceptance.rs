//! The acceptance suite: thirteen numbered checks covering every headline
//! property the library computes, each decided against frozen expected
//! values or against a definition-level oracle in [`reference`].
//!
//! The suite is ordinary library code so the command line can run it and
//! report structured results; the integration tests drive the same entry
//! points. Workload is selected by [`Scale`], read from the
//! `ACCEPTANCE_SCALE` environment variable.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construction::{
    build_f, build_generator, continuum_family, continuum_member, divisibility_witness,
    generator_sum, specker_padic, GeneratorKind,
};
use crate::error::{Error, Result};
use crate::homology::{
    ce_h2, h2hat_quotient_presentation, lambda2_coinvariants, theta_image, WindowModel,
};
use crate::linalg::{
    kernel_basis_fp, rank_fp, rational_dependence, smith_normal_form, Matrix,
};
use crate::rank::{coefficient_matrix, finite_rank_decomposition, int_rank, observed_rank, recompose};
use crate::ring::{Coeff, RingTag};
use crate::series::{BiSeries, LaurentTrunc, TruncSeries};
use crate::sieve::{
    find_sieve_bi, powers_independent, sieve_vs_rank_experiment, verify_sieve_bi,
    ExperimentConfig, ExperimentOutcome,
};

/// Workload preset. `Full` runs the headline sizes and batch counts;
/// `Small` shrinks the randomized batches and the continuum window so the
/// whole suite stays under a few seconds while every check keeps teeth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    /// Read `ACCEPTANCE_SCALE` from the environment. The value `small`
    /// (any case) selects the reduced preset; anything else, including an
    /// unset variable, means the full workload.
    pub fn from_env() -> Self {
        match std::env::var("ACCEPTANCE_SCALE") {
            Ok(v) if v.eq_ignore_ascii_case("small") => Scale::Small,
            _ => Scale::Full,
        }
    }
}

impl std::fmt::Display for Scale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scale::Small => "small",
            Scale::Full => "full",
        })
    }
}

/// Outcome of one numbered criterion.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// One short name per criterion, indexed by number minus one.
pub const CRITERION_NAMES: [&str; 13] = [
    "sieve existence on the explicit series",
    "divisibility of the separable residual",
    "finite rank mod p with exact recomposition",
    "sieve absence for rank-capped assemblies",
    "rank invariance under integer scaling",
    "independence of the powers of x over 1+x",
    "dependence-absence certificates for the generators",
    "lamplighter coinvariants in both windows",
    "truncated quotient versus the dense rebuild",
    "Chevalley-Eilenberg rank identity",
    "p-adic diagonal divisibility and invariant factors",
    "continuum family isolation and independence",
    "infrastructure oracles",
];

type Outcome = Result<(bool, String)>;

/// Run criterion `index` (1 through 13). An internal error counts as a
/// failure; only an out-of-range index is an `Err`.
pub fn run(index: usize, scale: Scale) -> Result<CriterionResult> {
    let check: fn(Scale) -> Outcome = match index {
        1 => sieve_existence,
        2 => residual_divisibility,
        3 => finite_rank_mod_p,
        4 => sieve_absence_experiments,
        5 => scaling_rank_invariance,
        6 => powers_of_the_shift,
        7 => generator_independence,
        8 => coinvariant_windows,
        9 => quotient_versus_rebuild,
        10 => chevalley_eilenberg_slice,
        11 => padic_diagonal,
        12 => continuum_isolation,
        13 => infrastructure_oracles,
        _ => {
            return Err(Error::BadIndex(format!(
                "criterion {index}, the suite numbers 1 through 13"
            )))
        }
    };
    let (passed, detail) = match check(scale) {
        Ok(pair) => pair,
        Err(e) => (false, format!("aborted: {e}")),
    };
    Ok(CriterionResult { index, name: CRITERION_NAMES[index - 1], passed, detail })
}

/// Run the whole suite in order.
pub fn run_all(scale: Scale) -> Vec<CriterionResult> {
    (1..=CRITERION_NAMES.len()).map(|i| run(i, scale).expect("index in range")).collect()
}

// ---------------------------------------------------------------------------
// 1. The sieve exists on the antisymmetrized explicit series, at the
//    predicted offset 3^d - (n+1)d, for (p, d) in {(2,4), (3,4), (5,5)}.

fn sieve_existence(scale: Scale) -> Outcome {
    let cases: &[(u64, usize)] = match scale {
        Scale::Small => &[(2, 4)],
        Scale::Full => &[(2, 4), (3, 4), (5, 5)],
    };
    let mut notes = Vec::new();
    let mut ok = true;
    for &(p, d) in cases {
        let n = p as usize;
        let clock = Instant::now();
        let f = build_f(300, 300)?.reduce_mod(RingTag::fp(p)?)?.antisymmetrize()?;
        let m_max = 300 - n * d - d - 1;
        let found = find_sieve_bi(&f, n, d, m_max, 4)?;
        let elapsed = clock.elapsed();
        let expected = 3usize.pow(d as u32) - (n + 1) * d;
        match found {
            Some(cert)
                if cert.m == expected
                    && cert.independence.degree_bound >= 4
                    && verify_sieve_bi(&f, &cert)?
                    && elapsed < Duration::from_secs(60) =>
            {
                notes.push(format!("p={p}: m={} inside the 60s budget", cert.m));
            }
            Some(cert) => {
                ok = false;
                notes.push(format!("p={p}: m={}, wanted {expected}", cert.m));
            }
            None => {
                ok = false;
                notes.push(format!("p={p}: no certificate, wanted m={expected}"));
            }
        }
    }
    Ok((ok, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 2. F minus the separable prefix is exactly divisible by p, coefficient by
//    coefficient, with zero tolerance.

fn residual_divisibility(scale: Scale) -> Outcome {
    let cases: &[(u64, usize)] = match scale {
        Scale::Small => &[(2, 300), (3, 300)],
        Scale::Full => &[(2, 300), (3, 300), (5, 300), (7, 800)],
    };
    let mut notes = Vec::new();
    for &(p, w) in cases {
        let quotient = divisibility_witness(p, w, w)?;
        let residual = build_f(w, w)?.sub(&generator_sum(p as u32 - 1, w, w)?)?;
        let back = quotient.scale(&Coeff::Int(BigInt::from(p)));
        if !residual.eq_checked(&back)? {
            return Ok((false, format!("p={p}: p times the quotient misses the residual")));
        }
        notes.push(format!("p={p} at ({w}, {w}): quotient carries {} terms", quotient.term_count()));
    }
    Ok((true, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 3. The observed F_p-rank of the explicit series equals p, the rank
//    stabilizes inside the window, and the decomposition recomposes exactly.

fn finite_rank_mod_p(scale: Scale) -> Outcome {
    let cases: &[(u64, usize)] = match scale {
        Scale::Small => &[(2, 300), (3, 300)],
        Scale::Full => &[(2, 300), (3, 300), (5, 300), (7, 800)],
    };
    let mut notes = Vec::new();
    let mut ok = true;
    for &(p, w) in cases {
        let f = build_f(w, w)?.reduce_mod(RingTag::fp(p)?)?;
        let report = observed_rank(&f)?;
        let pairs = finite_rank_decomposition(&f, report.rank)?;
        let exact = recompose(f.ring(), f.nx(), f.ny(), &pairs).eq_checked(&f)?;
        if report.rank != p as usize || !report.stabilized || !exact {
            ok = false;
            notes.push(format!(
                "p={p}: rank {}, stabilized {}, recomposed {exact}",
                report.rank, report.stabilized
            ));
        } else {
            notes.push(format!("p={p}: rank {} from {} pairs", report.rank, pairs.len()));
        }
    }
    Ok((ok, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 4. Rank-capped random assemblies of the no-sieve shape never produce a
//    sieve certificate, across a batch of seeds, inside the time budget.

fn sieve_absence_experiments(scale: Scale) -> Outcome {
    let runs: u64 = match scale {
        Scale::Small => 20,
        Scale::Full => 100,
    };
    let clock = Instant::now();
    let mut contradictions = Vec::new();
    for seed in 0..runs {
        let config = ExperimentConfig::lamplighter(5, 5, 5, 4, 4, seed)?;
        let trace = sieve_vs_rank_experiment(&config)?;
        if trace.outcome != ExperimentOutcome::NoSieveConfirmed {
            contradictions.push(seed);
        }
    }
    let ok = contradictions.is_empty() && clock.elapsed() < Duration::from_secs(600);
    Ok((ok, format!(
        "{runs} seeded experiments inside the 600s budget, contradictions {contradictions:?}"
    )))
}

// ---------------------------------------------------------------------------
// 5. Rank over Q is blind to integer scaling: rank(nF) = rank(F) for
//    seeded random integer series and n in {2, 3, 6}.

fn scaling_rank_invariance(scale: Scale) -> Outcome {
    let runs: u64 = match scale {
        Scale::Small => 20,
        Scale::Full => 100,
    };
    let mut failures = 0usize;
    let mut ranks = BTreeSet::new();
    for seed in 0..runs {
        let f = random_outer_sum(seed, 40, 40);
        let base = int_rank(coefficient_matrix(&f).int_rows()?);
        ranks.insert(base);
        for n in [2i64, 3, 6] {
            let scaled = f.scale(&Coeff::Int(BigInt::from(n)));
            if int_rank(coefficient_matrix(&scaled).int_rows()?) != base {
                failures += 1;
            }
        }
    }
    Ok((failures == 0, format!(
        "{runs} series at (40, 40), ranks seen {ranks:?}, {failures} scaling failures"
    )))
}

fn random_int_series(rng: &mut ChaCha8Rng, n: usize) -> TruncSeries {
    let mut terms: Vec<(i64, usize)> = Vec::new();
    for e in 0..n {
        if rng.gen_bool(0.3) {
            terms.push((rng.gen_range(-3..=3), e));
        }
    }
    TruncSeries::from_terms_i64(RingTag::IntZ, n, &terms)
}

/// A random series of modest, known rank: a short sum of outer products.
fn random_outer_sum(seed: u64, nx: usize, ny: usize) -> BiSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let summands = rng.gen_range(1..=12);
    let mut f = BiSeries::zero(RingTag::IntZ, nx, ny);
    for _ in 0..summands {
        let u = random_int_series(&mut rng, nx);
        let v = random_int_series(&mut rng, ny);
        let product = theta_image(&u, &v).expect("matched windows");
        f = f.add(&product).expect("same ring");
    }
    f
}

// ---------------------------------------------------------------------------
// 6. The powers of x against -(1+x) are independent mod every prime up to
//    50 at exponent 10, and the proportionality guard fires on (2, 1).

fn powers_of_the_shift(_scale: Scale) -> Outcome {
    let primes: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let u = [BigInt::zero(), BigInt::one()];
    let v = [BigInt::from(-1), BigInt::from(-1)];
    for p in primes {
        let outcome = powers_independent(&u, &v, p, 10, true)?;
        if !outcome.independent {
            return Ok((false, format!("relation mod {p}: {:?}", outcome.relation)));
        }
    }
    let guard = powers_independent(&[BigInt::from(2)], &[BigInt::one()], 3, 10, true);
    let fired = matches!(guard, Err(Error::ConstantRatio));
    Ok((fired, format!(
        "independent for all 15 primes through 47; constant-ratio guard fired: {fired}"
    )))
}

// ---------------------------------------------------------------------------
// 7. The generator family {g_0, ..., g_(p-1)} mod p earns a bounded
//    dependence-absence certificate, and the exhaustive degree-2 search
//    over F_2 reaches the same verdict as the kernel engine.

fn generator_rows(p: u64, n: usize) -> Result<Vec<LaurentTrunc>> {
    (0..p)
        .map(|k| {
            let g = build_generator(GeneratorKind::G, k as u32, Some(p), n)?;
            Ok(LaurentTrunc::new(p, 0, g.residues()?))
        })
        .collect()
}

fn generator_independence(_scale: Scale) -> Outcome {
    let mut notes = Vec::new();
    for p in [2u64, 3, 5] {
        let rows = generator_rows(p, 300)?;
        let witness = rational_dependence(&rows, 4, 300)?;
        if !witness.certifies_absence() {
            return Ok((false, format!("the generators mod {p} admit a degree-4 dependence")));
        }
        notes.push(format!("p={p}: absence at degree 4"));
    }
    let rows = generator_rows(2, 300)?;
    let engine = rational_dependence(&rows, 2, 300)?;
    let brute = reference::exhaustive_f2_dependence(&rows, 2, 300);
    if engine.certifies_absence() != brute.is_none() {
        return Ok((false, "the degree-2 exhaustive search disagrees with the engine mod 2".into()));
    }
    notes.push("exhaustive degree-2 search agrees mod 2".into());
    Ok((true, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 8. Coinvariants of the wedge square: free of rank width-1 on every group
//    window from 2 to 12, matching the shift-orbit count, and the window-3
//    completion presentation is the stated two-relation matrix.

fn coinvariant_windows(_scale: Scale) -> Outcome {
    for width in 2..=12usize {
        let pres = lambda2_coinvariants(WindowModel::Group { width })?;
        let orbits = reference::shift_orbit_count(width);
        if pres.free_rank != width - 1
            || !pres.torsion_factors.is_empty()
            || pres.free_rank != orbits
        {
            return Ok((false, format!(
                "width {width}: free rank {}, torsion {:?}, orbit count {orbits}",
                pres.free_rank, pres.torsion_factors
            )));
        }
    }
    let pres = lambda2_coinvariants(WindowModel::Completion { truncation: 3 })?;
    let rows = pres.relation_matrix.int_rows()?;
    let stated: Vec<Vec<BigInt>> = [[0, 1, 1], [0, 0, 1]]
        .iter()
        .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let ok = pres.free_rank == 1 && pres.torsion_factors.is_empty() && rows == stated;
    Ok((ok, format!(
        "group windows 2..=12 free of rank width-1; completion window 3 has free rank {} from relations y+xy and xy",
        pres.free_rank
    )))
}

// ---------------------------------------------------------------------------
// 9. The truncated quotient presentation matches a dense rebuild of the
//    same relations, invariant factor by invariant factor.

fn quotient_versus_rebuild(_scale: Scale) -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=4usize {
        let pres = h2hat_quotient_presentation(n)?;
        let oracle = reference::dense_quotient_invariants(n)?;
        if pres.smith.invariant_factors != oracle {
            return Ok((false, format!(
                "window {n}: engine factors {:?}, oracle {:?}",
                pres.smith.invariant_factors, oracle
            )));
        }
        notes.push(format!("N={n}: {} invariant factors", oracle.len()));
    }
    Ok((true, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 10. The window complex is a complex (d2 d3 = 0) and its H2 rank equals
//     the coinvariant rank plus the invariant rank.

fn chevalley_eilenberg_slice(scale: Scale) -> Outcome {
    let top = match scale {
        Scale::Small => 5,
        Scale::Full => 8,
    };
    let mut notes = Vec::new();
    for n in 2..=top {
        let (_, report) = ce_h2(n)?;
        if !report.chain_identity || !report.rank_identity {
            return Ok((false, format!(
                "window {n}: d2 d3 = 0 is {}, rank identity is {}",
                report.chain_identity, report.rank_identity
            )));
        }
        notes.push(format!("N={n}: H2 rank {}", report.h2_rank));
    }
    Ok((true, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 11. The p-adic diagonal series: the tail past every cut k <= 6 is
//     divisible by p^k, and the window-8 coefficient matrix has invariant
//     factors 1, p, ..., p^7.

fn padic_diagonal(_scale: Scale) -> Outcome {
    let mut notes = Vec::new();
    for p in [2u64, 3] {
        for k in 0..=6u32 {
            let (_, report) = specker_padic(p, k, 8)?;
            if !report.residual_divisible || !report.symmetric {
                return Ok((false, format!(
                    "p={p} cut {k}: divisible {}, symmetric {}",
                    report.residual_divisible, report.symmetric
                )));
            }
        }
        let (_, report) = specker_padic(p, 6, 8)?;
        let wanted: Vec<BigInt> = (0..8).map(|e| BigInt::from(p).pow(e)).collect();
        if report.invariant_factors != wanted {
            return Ok((false, format!("p={p}: invariant factors {:?}", report.invariant_factors)));
        }
        notes.push(format!("p={p}: cuts 0..=6 divisible, factors 1 through p^7"));
    }
    Ok((true, notes.join("; ")))
}

// ---------------------------------------------------------------------------
// 12. The continuum family at r in {-1, 0, 1/2, 1}: supports grow with the
//     rational, every successive difference carries an isolated exponent,
//     and the four members earn dependence-absence mod 2 and mod 3.

fn continuum_isolation(scale: Scale) -> Outcome {
    let n = match scale {
        Scale::Small => 1 << 9,
        Scale::Full => 1 << 12,
    };
    let rationals = [Ratio::new(-1, 1), Ratio::new(0, 1), Ratio::new(1, 2), Ratio::new(1, 1)];
    let members: Vec<TruncSeries> =
        rationals.iter().map(|&r| continuum_member(r, n)).collect::<Result<_>>()?;
    for pair in members.windows(2) {
        let larger: BTreeSet<usize> = pair[1].support().into_iter().collect();
        if !pair[0].support().iter().all(|e| larger.contains(e)) {
            return Ok((false, "supports are not monotone in the rational".into()));
        }
    }

    let family = continuum_family(&rationals, n)?;
    let certificates = crate::construction::isolation_certificates(&family)?;
    let mut diff_supports: Vec<Vec<usize>> = Vec::new();
    for (i, m) in family.members.iter().enumerate() {
        let d = if i == 0 { m.clone() } else { m.sub(&family.members[i - 1])? };
        diff_supports.push(d.support());
    }
    let all_points: Vec<usize> = diff_supports.iter().flatten().copied().collect();
    for cert in &certificates {
        let visible = cert.exponent + cert.window <= n;
        let carried = diff_supports[cert.index].contains(&cert.exponent);
        let clear = all_points
            .iter()
            .all(|&q| q == cert.exponent || q.abs_diff(cert.exponent) >= cert.window);
        if !(visible && carried && clear && cert.window > 0) {
            return Ok((false, format!(
                "certificate {} fails at exponent {} with window {}",
                cert.index, cert.exponent, cert.window
            )));
        }
    }

    for p in [2u64, 3] {
        let rows: Vec<LaurentTrunc> = family
            .members
            .iter()
            .map(|m| Ok(LaurentTrunc::new(p, 0, m.reduce_mod(RingTag::fp(p)?)?.residues()?)))
            .collect::<Result<_>>()?;
        let witness = rational_dependence(&rows, 3, n as i64)?;
        if !witness.certifies_absence() {
            return Ok((false, format!("the family admits a degree-3 dependence mod {p}")));
        }
    }
    Ok((true, format!(
        "4 members at window {n}: monotone supports, {} isolation certificates, absence mod 2 and mod 3",
        certificates.len()
    )))
}

// ---------------------------------------------------------------------------
// 13. The engines against their definitions: Smith form against gcds of
//     minors, kernel bases against the defining equations, the dependence
//     scan against exhaustive search over F_2.

fn infrastructure_oracles(scale: Scale) -> Outcome {
    let (smith_runs, kernel_runs, dependence_runs) = match scale {
        Scale::Small => (100u64, 30u64, 50u64),
        Scale::Full => (500, 100, 200),
    };

    for seed in 0..smith_runs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = RingTag::IntZ;
        let m = Matrix::from_fn(ring, 4, 4, |_, _| ring.from_i64(rng.gen_range(-9..=9)));
        let engine = smith_normal_form(&m)?;
        let oracle = reference::smith_by_minors(&m.int_rows()?);
        if engine.invariant_factors != oracle {
            return Ok((false, format!(
                "seed {seed}: Smith {:?} against minors {:?}",
                engine.invariant_factors, oracle
            )));
        }
    }

    for seed in 0..kernel_runs {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let p = [2u64, 3, 5, 7][(seed % 4) as usize];
        let ring = RingTag::fp(p)?;
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let m = Matrix::from_fn(ring, rows, cols, |_, _| ring.from_i64(rng.gen_range(0..p) as i64));
        let kernel = kernel_basis_fp(&m)?;
        if kernel.len() != cols - rank_fp(&m)? {
            return Ok((false, format!(
                "seed {seed}: kernel dimension {} at {cols} columns",
                kernel.len()
            )));
        }
        let data = m.residue_rows()?;
        for v in &kernel {
            for row in &data {
                let dot = row.iter().zip(v).fold(0u64, |acc, (a, b)| (acc + a * b) % p);
                if dot != 0 {
                    return Ok((false, format!("seed {seed}: kernel vector misses an equation")));
                }
            }
        }
    }

    for seed in 0..dependence_runs {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + seed);
        let count = rng.gen_range(2..=3);
        let degree = rng.gen_range(0..=2usize);
        let rows: Vec<LaurentTrunc> = (0..count)
            .map(|_| {
                let mut dense = vec![0u64; 24];
                for _ in 0..rng.gen_range(1..=4) {
                    dense[rng.gen_range(0..16)] = 1;
                }
                LaurentTrunc::new(2, 0, dense)
            })
            .collect();
        let engine = rational_dependence(&rows, degree, 24)?;
        let brute = reference::exhaustive_f2_dependence(&rows, degree, 24);
        if engine.certifies_absence() != brute.is_none() {
            return Ok((false, format!("seed {seed}: dependence verdicts split at degree {degree}")));
        }
        if !engine.certifies_absence() && !engine.verify(&rows) {
            return Ok((false, format!("seed {seed}: dependence witness fails re-verification")));
        }
    }

    Ok((true, format!(
        "{smith_runs} Smith forms, {kernel_runs} kernels, {dependence_runs} dependence scans, zero discrepancies"
    )))
}

// ---------------------------------------------------------------------------
// Definition-level oracles. Everything here is deliberately slow and
// structure-free: no pivoting, no elimination, no shortcuts shared with
// the engines under test.

mod reference {
    use super::*;
    use num_integer::Integer;

    /// Invariant factors straight from the definition: the k-th
    /// determinantal divisor is the gcd of all k-by-k minors and the k-th
    /// invariant factor is the ratio of consecutive divisors. Exponential
    /// in the matrix size, fine at 4-by-4.
    pub(super) fn smith_by_minors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut factors = Vec::new();
        let mut previous = BigInt::one();
        for k in 1..=r.min(c) {
            let mut g = BigInt::zero();
            for ri in combinations(r, k) {
                for ci in combinations(c, k) {
                    g = g.gcd(&minor_det(rows, &ri, &ci));
                }
            }
            if g.is_zero() {
                break;
            }
            factors.push(&g / &previous);
            previous = g;
        }
        factors
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn walk(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                walk(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        walk(0, n, k, &mut Vec::with_capacity(k), &mut out);
        out
    }

    fn minor_det(rows: &[Vec<BigInt>], ri: &[usize], ci: &[usize]) -> BigInt {
        if ri.len() == 1 {
            return rows[ri[0]][ci[0]].clone();
        }
        // Laplace expansion along the first selected row.
        let mut det = BigInt::zero();
        for (j, &cj) in ci.iter().enumerate() {
            let rest: Vec<usize> =
                ci.iter().enumerate().filter(|&(q, _)| q != j).map(|(_, &v)| v).collect();
            let term = &rows[ri[0]][cj] * minor_det(rows, &ri[1..], &rest);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    /// Orbits of the diagonal shift on ordered pairs (a, b), a < b < width,
    /// where the shift glues (a, b) to (a+1, b+1) while the image stays in
    /// the window. Plain union-find, no appeal to the difference b - a.
    pub(super) fn shift_orbit_count(width: usize) -> usize {
        let pairs: Vec<(usize, usize)> =
            (0..width).flat_map(|a| (a + 1..width).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&q| q == (a, b)).unwrap();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut parent: Vec<usize> = (0..pairs.len()).collect();
        for &(a, b) in &pairs {
            if b + 1 < width {
                let x = find(&mut parent, index(a, b));
                let y = find(&mut parent, index(a + 1, b + 1));
                parent[x] = y;
            }
        }
        (0..pairs.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Rebuild the truncated quotient presentation with dense series
    /// arithmetic: one relation row per monomial under the multiplier
    /// polynomial, the symmetrizations, and the diagonal kills, flattened
    /// to integer rows with no sparsity bookkeeping.
    pub(super) fn dense_quotient_invariants(n: usize) -> Result<Vec<BigInt>> {
        let ring = RingTag::IntZ;
        let flat = |f: &BiSeries| -> Vec<i64> {
            let mut v = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    v.push(i64::try_from(f.coeff(a, b).as_int().expect("integer series")).unwrap());
                }
            }
            v
        };
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mono = BiSeries::from_terms_i64(ring, n, n, &[(1, a, b)]);
                rows.push(flat(&mono.mul_by_poly_i64(&[(1, 1, 0), (1, 0, 1), (1, 1, 1)])));
                rows.push(flat(&mono.add(&mono.transpose()?)?));
                if a == b {
                    rows.push(flat(&mono));
                }
            }
        }
        let kept: Vec<Vec<i64>> = rows.into_iter().filter(|r| r.iter().any(|&c| c != 0)).collect();
        Ok(smith_normal_form(&Matrix::from_i64_rows(ring, &kept))?.invariant_factors)
    }

    /// Exhaustive bounded dependence over F_2: try every nonzero choice of
    /// polynomial coefficients of degree at most `degree` and test the
    /// combination against the truncation window directly.
    pub(super) fn exhaustive_f2_dependence(
        rows: &[LaurentTrunc],
        degree: usize,
        truncation: usize,
    ) -> Option<Vec<Vec<u64>>> {
        let k = rows.len();
        let slots = (degree + 1) * k;
        assert!(slots < 24, "exhaustive search is for tiny configurations");
        let dense: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| (0..truncation).map(|e| r.get(e as i64).unwrap_or(0)).collect())
            .collect();
        for mask in 1u64..(1u64 << slots) {
            let mut sum = vec![0u64; truncation];
            for (i, row) in dense.iter().enumerate() {
                for j in 0..=degree {
                    if mask >> (i * (degree + 1) + j) & 1 == 1 {
                        for e in j..truncation {
                            sum[e] ^= row[e - j];
                        }
                    }
                }
            }
            if sum.iter().all(|&c| c == 0) {
                return Some(
                    (0..k)
                        .map(|i| (0..=degree).map(|j| mask >> (i * (degree + 1) + j) & 1).collect())
                        .collect(),
                );
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minors_oracle_on_a_diagonal_matrix() {
        let rows: Vec<Vec<BigInt>> = [[2, 0], [0, 6]]
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        assert_eq!(reference::smith_by_minors(&rows), vec![BigInt::from(2), BigInt::from(6)]);
        let singular: Vec<Vec<BigInt>> = [[2, 4], [1, 2]]
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        assert_eq!(reference::smith_by_minors(&singular), vec![BigInt::one()]);
    }

    #[test]
    fn orbit_count_matches_the_difference_classes() {
        for width in 2..=9 {
            assert_eq!(reference::shift_orbit_count(width), width - 1);
        }
    }

    #[test]
    fn exhaustive_search_sees_a_planted_shift_relation() {
        let a = LaurentTrunc::new(2, 0, vec![1, 1, 0, 0, 0, 0, 0, 0]);
        let b = LaurentTrunc::new(2, 0, vec![0, 1, 1, 0, 0, 0, 0, 0]);
        let dependent = reference::exhaustive_f2_dependence(&[a.clone(), b.clone()], 1, 8);
        assert!(dependent.is_some());
        let c = LaurentTrunc::new(2, 0, vec![1, 0, 0, 0, 1, 0, 0, 1]);
        let independent = reference::exhaustive_f2_dependence(&[a, c], 1, 8);
        assert!(independent.is_none());
    }

    #[test]
    fn cheap_criteria_pass_at_small_scale() {
        for index in [6, 8, 9, 11] {
            let result = run(index, Scale::Small).unwrap();
            assert!(result.passed, "criterion {index}: {}", result.detail);
        }
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        assert!(run(0, Scale::Small).is_err());
        assert!(run(14, Scale::Small).is_err());
    }
}
