//! Exact linear algebra: F_p kernels, integer Smith normal form, and
//! bounded-degree dependence of truncated Laurent series over F_p(x).
//!
//! Everything here is deterministic; no floating point appears anywhere in
//! the crate.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{fppoly, inverse_mod_u64, Coeff, RingTag};
use crate::series::LaurentTrunc;

/// A dense row-major matrix over one of the coefficient rings.
#[derive(Clone, Debug)]
pub struct Matrix {
    ring: RingTag,
    rows: usize,
    cols: usize,
    entries: Vec<Coeff>,
}

impl Matrix {
    pub fn zero(ring: RingTag, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn from_fn(ring: RingTag, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Coeff) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, entries }
    }

    pub fn from_i64_rows(ring: RingTag, data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_fn(ring, rows, cols, |i, j| ring.from_i64(data[i][j]))
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.entries[i * self.cols + j] = v;
    }

    /// Residue rows of an F_p matrix.
    pub fn residue_rows(&self) -> Result<Vec<Vec<u64>>> {
        match self.ring {
            RingTag::Fp(_) => {}
            _ => return Err(Error::UnsupportedRing("residue rows of a non-F_p matrix")),
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).as_residue().expect("F_p entry"))
                    .collect()
            })
            .collect())
    }

    /// Integer rows of a Z matrix.
    pub fn int_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        match self.ring {
            RingTag::IntZ => {}
            _ => return Err(Error::UnsupportedRing("integer rows of a non-Z matrix")),
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).as_int().expect("Z entry").clone())
                    .collect()
            })
            .collect())
    }
}

// ---------------------------------------------------------------------------
// F_p elimination on raw residue rows.

/// In-place reduced row echelon form; returns the pivot columns.
pub(crate) fn fp_rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&i| !rows[i][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = inverse_mod_u64(rows[rank][col] % p, p).expect("prime modulus");
        for v in rows[rank][col..].iter_mut() {
            *v = ((*v % p) as u128 * inv as u128 % p as u128) as u64;
        }
        let pivot_vals = rows[rank][col..].to_vec();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            let factor = row[col] % p;
            if factor == 0 {
                continue;
            }
            for (t, &s) in row[col..].iter_mut().zip(&pivot_vals) {
                let sub = (factor as u128 * s as u128) % p as u128;
                *t = ((*t as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivots
}

/// Rank of a residue matrix.
pub(crate) fn fp_rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    fp_rref(&mut work, p).len()
}

/// Basis of the right kernel of a residue matrix, one vector per free
/// column, in ascending free-column order.
pub(crate) fn fp_kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let pivots = fp_rref(&mut work, p);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let c = work[r][free] % p;
            if c != 0 {
                v[pc] = p - c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Kernel basis of an F_p matrix: vectors `v` with `M v = 0`.
pub fn kernel_basis_fp(m: &Matrix) -> Result<Vec<Vec<u64>>> {
    let p = match m.ring {
        RingTag::Fp(p) => p,
        _ => return Err(Error::UnsupportedRing("kernel basis requires an F_p matrix")),
    };
    let rows = m.residue_rows()?;
    Ok(fp_kernel(&rows, m.cols, p))
}

/// Rank of an F_p matrix.
pub fn rank_fp(m: &Matrix) -> Result<usize> {
    let p = match m.ring {
        RingTag::Fp(p) => p,
        _ => return Err(Error::UnsupportedRing("rank_fp requires an F_p matrix")),
    };
    Ok(fp_rank(&m.residue_rows()?, p))
}

// ---------------------------------------------------------------------------
// Integer Smith normal form.

/// Invariant factors of an integer matrix: positive, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SmithForm {
    #[serde(serialize_with = "crate::report::ser_bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors different from 1, i.e. the torsion part of the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|f| **f != BigInt::from(1)).cloned().collect()
    }
}

struct SnfWork {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    #[cfg(debug_assertions)]
    orig: Vec<Vec<BigInt>>,
    #[cfg(debug_assertions)]
    left: Vec<Vec<BigInt>>,
    #[cfg(debug_assertions)]
    right: Vec<Vec<BigInt>>,
}

#[cfg(debug_assertions)]
fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() }).collect())
        .collect()
}

impl SnfWork {
    fn new(a: Vec<Vec<BigInt>>) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        SnfWork {
            #[cfg(debug_assertions)]
            orig: a.clone(),
            #[cfg(debug_assertions)]
            left: identity(rows),
            #[cfg(debug_assertions)]
            right: identity(cols),
            a,
            rows,
            cols,
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        #[cfg(debug_assertions)]
        self.left.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in &mut self.a {
            row.swap(j, k);
        }
        #[cfg(debug_assertions)]
        for row in &mut self.right {
            row.swap(j, k);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * &self.a[k][j];
            self.a[i][j] -= delta;
        }
        #[cfg(debug_assertions)]
        for j in 0..self.rows {
            let delta = q * &self.left[k][j];
            self.left[i][j] -= delta;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * &self.a[i][k];
            self.a[i][j] -= delta;
        }
        #[cfg(debug_assertions)]
        for i in 0..self.cols {
            let delta = q * &self.right[i][k];
            self.right[i][j] -= delta;
        }
    }

    /// row_i += row_k
    fn row_add(&mut self, i: usize, k: usize) {
        for j in 0..self.cols {
            let delta = self.a[k][j].clone();
            self.a[i][j] += delta;
        }
        #[cfg(debug_assertions)]
        for j in 0..self.rows {
            let delta = self.left[k][j].clone();
            self.left[i][j] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.a[i][j].clone();
            self.a[i][j] = v;
        }
        #[cfg(debug_assertions)]
        for j in 0..self.rows {
            let v = -self.left[i][j].clone();
            self.left[i][j] = v;
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.a[i][j].abs() < self.a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    /// Verify the tracked transforms reproduce the diagonal form. Debug-mode
    /// certification that only unimodular operations were applied.
    #[cfg(debug_assertions)]
    fn verify_transforms(&self) {
        let product = matmul(&matmul(&self.left, &self.orig), &self.right);
        assert_eq!(product, self.a, "smith transform bookkeeping broke");
    }
}

pub(crate) fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let delta = &a[i][k] * &b[k][j];
                out[i][j] += delta;
            }
        }
    }
    out
}

/// Smith normal form over Z, by minimum-magnitude pivoting with a gcd
/// repair pass so the invariant factors form a divisibility chain.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    let a = m.int_rows()?;
    Ok(smith_of_int_rows(a))
}

pub(crate) fn smith_of_int_rows(a: Vec<Vec<BigInt>>) -> SmithForm {
    let mut w = SnfWork::new(a);
    let limit = w.rows.min(w.cols);
    let mut t = 0;
    while t < limit {
        if w.min_pivot(t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = w.min_pivot(t).expect("nonzero submatrix");
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..w.rows {
                if !w.a[i][t].is_zero() {
                    let q = &w.a[i][t] / &w.a[t][t];
                    w.row_sub(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..w.cols {
                if !w.a[t][j].is_zero() {
                    let q = &w.a[t][j] / &w.a[t][t];
                    w.col_sub(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Pivot divides its row and column; now enforce divisibility of
            // the whole trailing block so factors chain.
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..w.rows)
                .flat_map(|i| (t + 1..w.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&w.a[i][j] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    w.row_add(t, i);
                    continue;
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    #[cfg(debug_assertions)]
    w.verify_transforms();
    let invariant_factors: Vec<BigInt> = (0..t).map(|i| w.a[i][i].clone()).collect();
    debug_assert!(invariant_factors
        .windows(2)
        .all(|pair| (&pair[1] % &pair[0]).is_zero()));
    SmithForm { rank: t, invariant_factors }
}

// ---------------------------------------------------------------------------
// Bounded rational dependence over F_p(x).

/// Outcome of a bounded search for a relation `sum r_i(x) g_i(x) = 0 mod
/// x^truncation` with polynomial coefficients of degree at most
/// `degree_bound`. `combination: None` certifies absence at these bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DependenceWitness {
    pub prime: u64,
    pub degree_bound: usize,
    pub truncation: i64,
    pub combination: Option<Vec<Vec<u64>>>,
}

impl DependenceWitness {
    pub fn certifies_absence(&self) -> bool {
        self.combination.is_none()
    }

    /// Re-check a present witness against the series it claims to relate.
    pub fn verify(&self, series: &[LaurentTrunc]) -> bool {
        let Some(combo) = &self.combination else {
            return false;
        };
        if combo.len() != series.len() {
            return false;
        }
        if combo.iter().all(|r| fppoly::is_zero(r)) {
            return false;
        }
        let mut acc = LaurentTrunc::zero(self.prime, self.truncation);
        for (r, g) in combo.iter().zip(series) {
            if fppoly::is_zero(r) {
                continue;
            }
            let term = g.mul_poly(r).truncate(self.truncation);
            acc = match acc.add(&term) {
                Ok(s) => s,
                Err(_) => return false,
            };
        }
        acc.truncate(self.truncation).is_zero()
    }
}

/// Decide bounded K-linear dependence of truncated Laurent series over
/// K = F_p(x): exhaustively correct at the stated `(degree_bound,
/// truncation)` bounds, which every caller records.
pub fn rational_dependence(
    series: &[LaurentTrunc],
    degree_bound: usize,
    truncation: i64,
) -> Result<DependenceWitness> {
    let first = series
        .first()
        .ok_or_else(|| Error::PrecViolated("dependence of an empty family".into()))?;
    let p = first.prime();
    for s in series {
        if s.prime() != p {
            return Err(Error::PrimeMismatch(p, s.prime()));
        }
        if s.order() < truncation {
            return Err(Error::BoundsTooSmall(format!(
                "series known to order {}, dependence requested at {truncation}",
                s.order()
            )));
        }
    }
    let vals: Vec<i64> = series.iter().filter_map(|s| s.valuation()).collect();
    if vals.len() < series.len() {
        // A zero series is trivially dependent.
        let mut combo: Vec<Vec<u64>> = vec![Vec::new(); series.len()];
        let idx = series.iter().position(|s| s.is_zero()).unwrap();
        combo[idx] = vec![1];
        return Ok(DependenceWitness {
            prime: p,
            degree_bound,
            truncation,
            combination: Some(combo),
        });
    }
    let max_val = *vals.iter().max().unwrap();
    if truncation <= degree_bound as i64 + max_val {
        return Err(Error::BoundsTooSmall(format!(
            "truncation {truncation} must exceed degree bound {degree_bound} + max valuation {max_val}"
        )));
    }
    let min_val = *vals.iter().min().unwrap();

    let n = series.len();
    let unknowns = n * (degree_bound + 1);
    let n_eqs = (truncation - min_val) as usize;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_eqs);
    for k in 0..n_eqs {
        let e = min_val + k as i64;
        let mut row = vec![0u64; unknowns];
        for (i, g) in series.iter().enumerate() {
            for j in 0..=degree_bound {
                let c = g.get(e - j as i64).unwrap_or(0);
                row[i * (degree_bound + 1) + j] = c;
            }
        }
        rows.push(row);
    }
    let kernel = fp_kernel(&rows, unknowns, p);
    let combination = kernel.first().map(|v| {
        (0..n)
            .map(|i| fppoly::trim(v[i * (degree_bound + 1)..(i + 1) * (degree_bound + 1)].to_vec()))
            .collect::<Vec<_>>()
    });
    let witness = DependenceWitness { prime: p, degree_bound, truncation, combination };
    if witness.combination.is_some() {
        debug_assert!(witness.verify(series), "dependence witness failed re-verification");
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> RingTag {
        RingTag::fp(p).unwrap()
    }

    #[test]
    fn kernel_of_single_row_over_f5() {
        let m = Matrix::from_i64_rows(fp(5), &[vec![1, 2]]);
        let basis = kernel_basis_fp(&m).unwrap();
        assert_eq!(basis, vec![vec![3, 1]]);
    }

    #[test]
    fn kernel_dimension_counts() {
        // Random ranks: kernel dimension + rank = cols.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..p as i64)).collect())
                .collect();
            let m = Matrix::from_i64_rows(fp(p), &data);
            let basis = kernel_basis_fp(&m).unwrap();
            let rank = rank_fp(&m).unwrap();
            assert_eq!(basis.len() + rank, cols);
            // Every basis vector is annihilated.
            for v in &basis {
                for row in &m.residue_rows().unwrap() {
                    let dot: u128 = row.iter().zip(v).map(|(&a, &b)| a as u128 * b as u128).sum();
                    assert_eq!(dot % p as u128, 0);
                }
            }
        }
    }

    #[test]
    fn smith_form_of_small_matrix() {
        let m = Matrix::from_i64_rows(RingTag::IntZ, &[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn smith_form_of_diagonal_and_zero() {
        let d = Matrix::from_i64_rows(RingTag::IntZ, &[vec![6, 0], vec![0, 4]]);
        let s = smith_normal_form(&d).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
        let z = Matrix::zero(RingTag::IntZ, 3, 2);
        let s = smith_normal_form(&z).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.invariant_factors.is_empty());
    }

    /// Oracle: invariant factors from gcds of k x k minors. Exponential, so
    /// only for tiny matrices, but a fully independent definition.
    fn smith_by_minors(data: &[Vec<i64>]) -> Vec<BigInt> {
        let rows = data.len();
        let cols = data[0].len();
        let r = rows.min(cols);
        let mut gcds: Vec<BigInt> = Vec::new();
        for k in 1..=r {
            let mut g = BigInt::zero();
            for rsel in combinations(rows, k) {
                for csel in combinations(cols, k) {
                    let det = minor_det(data, &rsel, &csel);
                    g = num_integer::Integer::gcd(&g, &det);
                }
            }
            if g.is_zero() {
                break;
            }
            gcds.push(g);
        }
        let mut factors = Vec::new();
        let mut prev = BigInt::from(1);
        for g in gcds {
            factors.push(&g / &prev);
            prev = g;
        }
        factors
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn minor_det(data: &[Vec<i64>], rsel: &[usize], csel: &[usize]) -> BigInt {
        let k = rsel.len();
        if k == 0 {
            return BigInt::from(1);
        }
        let mut det = BigInt::zero();
        // Laplace expansion along the first selected row.
        for (idx, &c) in csel.iter().enumerate() {
            let v = BigInt::from(data[rsel[0]][c]);
            if v.is_zero() {
                continue;
            }
            let sub_r: Vec<usize> = rsel[1..].to_vec();
            let sub_c: Vec<usize> = csel.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &c)| c).collect();
            let cofactor = minor_det(data, &sub_r, &sub_c);
            let signed = if idx % 2 == 0 { v * cofactor } else { -v * cofactor };
            det += signed;
        }
        det
    }

    #[test]
    fn smith_matches_minor_gcds_on_random_small_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-5i64..=5)).collect())
                .collect();
            let m = Matrix::from_i64_rows(RingTag::IntZ, &data);
            let s = smith_normal_form(&m).unwrap();
            assert_eq!(s.invariant_factors, smith_by_minors(&data), "matrix {data:?}");
        }
    }

    #[test]
    fn dependence_finds_the_obvious_relation() {
        // {1, x}: r = (x, -1) is a relation of degree 1.
        let one = LaurentTrunc::new(5, 0, vec![1, 0, 0, 0, 0, 0, 0, 0]);
        let x = LaurentTrunc::new(5, 0, vec![0, 1, 0, 0, 0, 0, 0, 0]);
        let w = rational_dependence(&[one.clone(), x.clone()], 1, 8).unwrap();
        let combo = w.combination.clone().unwrap();
        assert!(w.verify(&[one, x]));
        // First kernel vector: 4x * 1 + 1 * x = 5x = 0 over F_5.
        assert_eq!(combo, vec![vec![0, 4], vec![1]]);
    }

    #[test]
    fn dependence_absence_from_the_generator_pair() {
        // Frozen from the exhaustive F_2 search in the acceptance oracle:
        // x^2 + x^7 + x^24 and x + x^5 + x^21 admit no relation at D = 2,
        // N = 60.
        let h0 = LaurentTrunc::new(2, 0, sparse(60, &[2, 7, 24]));
        let h1 = LaurentTrunc::new(2, 0, sparse(60, &[1, 5, 21]));
        let w = rational_dependence(&[h0, h1], 2, 60).unwrap();
        assert!(w.certifies_absence());
    }

    fn sparse(len: usize, exps: &[usize]) -> Vec<u64> {
        let mut v = vec![0u64; len];
        for &e in exps {
            v[e] = 1;
        }
        v
    }

    #[test]
    fn dependence_bounds_guard() {
        let g = LaurentTrunc::new(3, 0, sparse(10, &[4]));
        assert!(matches!(
            rational_dependence(std::slice::from_ref(&g), 6, 10),
            Err(Error::BoundsTooSmall(_))
        ));
        assert!(matches!(
            rational_dependence(&[g], 2, 12),
            Err(Error::BoundsTooSmall(_))
        ));
        let a = LaurentTrunc::new(3, 0, sparse(10, &[1]));
        let b = LaurentTrunc::new(5, 0, sparse(10, &[1]));
        assert!(matches!(rational_dependence(&[a, b], 2, 10), Err(Error::PrimeMismatch(3, 5))));
    }

    /// Absence is monotone downward in the degree bound.
    #[test]
    fn dependence_absence_monotone_in_degree() {
        let h0 = LaurentTrunc::new(2, 0, sparse(60, &[2, 7, 24]));
        let h1 = LaurentTrunc::new(2, 0, sparse(60, &[1, 5, 21]));
        for d in [0usize, 1, 2, 3, 4] {
            let w = rational_dependence(&[h0.clone(), h1.clone()], d, 60).unwrap();
            assert!(w.certifies_absence(), "degree bound {d}");
        }
    }

    /// Scaling every series by a common unit polynomial preserves both
    /// existence and absence of a relation at fixed bounds.
    #[test]
    fn dependence_invariant_under_common_unit_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let unit = vec![1u64, 1, 1]; // 1 + x + x^2, a unit in F_2[[x]]
        for _ in 0..50 {
            let fam: Vec<LaurentTrunc> = (0..3)
                .map(|_| {
                    let coeffs: Vec<u64> = (0..30).map(|_| rng.gen_range(0..2)).collect();
                    LaurentTrunc::new(2, 0, coeffs)
                })
                .collect();
            if fam.iter().any(|s| s.is_zero()) {
                continue;
            }
            let scaled: Vec<LaurentTrunc> =
                fam.iter().map(|s| s.mul_poly(&unit).truncate(30)).collect();
            let w1 = match rational_dependence(&fam, 2, 30) {
                Ok(w) => w,
                Err(_) => continue,
            };
            let w2 = rational_dependence(&scaled, 2, 30).unwrap();
            assert_eq!(w1.certifies_absence(), w2.certifies_absence());
        }
    }
}
