//! Truncated power series in one and two variables.
//!
//! A [`TruncSeries`] of order `N` knows its coefficients for exponents
//! `0..N` and nothing beyond; every operation states what order it can
//! honestly produce and never pads. Orders are strict: combining series of
//! different order is an error, not a coercion.
//!
//! [`BiSeries`] is the y-major bivariate analogue (a vector of x-series
//! rows), [`LaurentPoly`] holds exact integer Laurent polynomials in one
//! variable `t`, and [`LaurentTrunc`] is a truncated Laurent series over
//! `F_p` with a tight valuation, the scalar-friendly shape used by the
//! sieve machinery.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{fppoly, Coeff, RationalFunction, RingTag};
use crate::textform;

/// A truncated univariate power series: coefficients for `x^0 .. x^(N-1)`.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    ring: RingTag,
    coeffs: Vec<Coeff>,
}

impl TruncSeries {
    pub fn zero(ring: RingTag, order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        TruncSeries { ring, coeffs: vec![ring.zero(); order] }
    }

    pub fn one(ring: RingTag, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = ring.one();
        s
    }

    pub fn monomial(ring: RingTag, order: usize, exp: usize, c: &Coeff) -> Self {
        let mut s = Self::zero(ring, order);
        assert!(exp < order, "monomial exponent outside truncation");
        s.coeffs[exp] = c.clone();
        s
    }

    /// Build from sparse `(coefficient, exponent)` terms; exponents at or
    /// beyond the order are silently truncated away, repeats accumulate.
    pub fn from_terms(ring: RingTag, order: usize, terms: &[(BigInt, usize)]) -> Self {
        let mut s = Self::zero(ring, order);
        for (c, e) in terms {
            if *e < order {
                let add = ring.from_bigint(c);
                s.coeffs[*e] = ring.add(&s.coeffs[*e], &add);
            }
        }
        s
    }

    pub fn from_terms_i64(ring: RingTag, order: usize, terms: &[(i64, usize)]) -> Self {
        let mapped: Vec<(BigInt, usize)> =
            terms.iter().map(|(c, e)| (BigInt::from(*c), *e)).collect();
        Self::from_terms(ring, order, &mapped)
    }

    /// Parse the sparse text format (`c*x^a + ...`) into a series.
    pub fn parse(ring: RingTag, order: usize, text: &str) -> Result<Self> {
        let terms = textform::parse_terms(text)?;
        let mut flat = Vec::with_capacity(terms.len());
        for (c, xe, ye) in terms {
            if ye != 0 {
                return Err(Error::Parse("unexpected variable y in univariate series".into()));
            }
            if xe < 0 {
                return Err(Error::Parse("negative exponent in power series".into()));
            }
            flat.push((c, xe as usize));
        }
        Ok(Self::from_terms(ring, order, &flat))
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Coeff {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| !self.ring.is_zero(&self.coeffs[i])).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Componentwise equality; comparing across orders or rings is an error.
    pub fn eq_checked(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(TruncSeries { ring: self.ring, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(TruncSeries { ring: self.ring, coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        TruncSeries {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect(),
        }
    }

    /// Product truncated to the common order.
    pub fn mul_trunc(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.order();
        let ring = self.ring;
        let mut out = vec![ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                let prod = ring.mul(a, b);
                out[i + j] = ring.add(&out[i + j], &prod);
            }
        }
        Ok(TruncSeries { ring, coeffs: out })
    }

    /// Inverse of a series whose constant term is a unit, to the same order.
    pub fn invert_unit(&self) -> Result<Self> {
        let ring = self.ring;
        let n = self.order();
        let b0 = ring.inv(&self.coeffs[0])?;
        let mut out = vec![ring.zero(); n];
        out[0] = b0.clone();
        for k in 1..n {
            let mut acc = ring.zero();
            for i in 1..=k {
                if ring.is_zero(&self.coeffs[i]) {
                    continue;
                }
                let prod = ring.mul(&self.coeffs[i], &out[k - i]);
                acc = ring.add(&acc, &prod);
            }
            out[k] = ring.neg(&ring.mul(&b0, &acc));
        }
        Ok(TruncSeries { ring, coeffs: out })
    }

    /// Reduce an integer series into `F_p` or `Z/p^e` coefficients.
    pub fn reduce_mod(&self, target: RingTag) -> Result<Self> {
        if self.ring != RingTag::IntZ {
            return Err(Error::UnsupportedRing("reduce_mod of a non-integer series"));
        }
        match target {
            RingTag::Fp(_) | RingTag::ZmodPE { .. } => {}
            _ => return Err(Error::UnsupportedRing("reduce_mod target must be F_p or Z/p^e")),
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| target.from_bigint(c.as_int().expect("integer coefficient")))
            .collect();
        Ok(TruncSeries { ring: target, coeffs })
    }

    /// Residue vector of an `F_p` or `Z/p^e` series.
    pub fn residues(&self) -> Result<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|c| c.as_residue().ok_or(Error::UnsupportedRing("residues of a non-modular series")))
            .collect()
    }

    /// Canonical sparse text rendering.
    pub fn to_text(&self) -> String {
        let terms: Vec<(String, i64, i64)> = (0..self.order())
            .filter(|&i| !self.ring.is_zero(&self.coeffs[i]))
            .map(|i| (self.coeffs[i].to_string(), i as i64, 0))
            .collect();
        textform::format_term_strings(&terms)
    }
}

/// A truncated bivariate power series, stored y-major: row `j` is the
/// x-series coefficient of `y^j`.
#[derive(Clone, Debug)]
pub struct BiSeries {
    ring: RingTag,
    nx: usize,
    rows: Vec<TruncSeries>,
}

impl BiSeries {
    pub fn zero(ring: RingTag, nx: usize, ny: usize) -> Self {
        assert!(nx >= 1 && ny >= 1, "truncation orders must be positive");
        BiSeries { ring, nx, rows: vec![TruncSeries::zero(ring, nx); ny] }
    }

    /// Build from sparse `(coefficient, x-exponent, y-exponent)` terms;
    /// out-of-window terms are truncated away, repeats accumulate.
    pub fn from_terms(ring: RingTag, nx: usize, ny: usize, terms: &[(BigInt, usize, usize)]) -> Self {
        let mut f = Self::zero(ring, nx, ny);
        for (c, a, b) in terms {
            if *a < nx && *b < ny {
                let add = ring.from_bigint(c);
                let cur = f.rows[*b].coeffs[*a].clone();
                f.rows[*b].coeffs[*a] = ring.add(&cur, &add);
            }
        }
        f
    }

    pub fn from_terms_i64(ring: RingTag, nx: usize, ny: usize, terms: &[(i64, usize, usize)]) -> Self {
        let mapped: Vec<(BigInt, usize, usize)> =
            terms.iter().map(|(c, a, b)| (BigInt::from(*c), *a, *b)).collect();
        Self::from_terms(ring, nx, ny, &mapped)
    }

    pub fn parse(ring: RingTag, nx: usize, ny: usize, text: &str) -> Result<Self> {
        let terms = textform::parse_terms(text)?;
        let mut flat = Vec::with_capacity(terms.len());
        for (c, xe, ye) in terms {
            if xe < 0 || ye < 0 {
                return Err(Error::Parse("negative exponent in power series".into()));
            }
            flat.push((c, xe as usize, ye as usize));
        }
        Ok(Self::from_terms(ring, nx, ny, &flat))
    }

    /// Assemble from explicit rows (all must share ring and order).
    pub fn from_rows(rows: Vec<TruncSeries>) -> Result<Self> {
        let first = rows.first().ok_or_else(|| Error::BoundsTooSmall("no rows".into()))?;
        let ring = first.ring();
        let nx = first.order();
        for r in &rows {
            if r.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), r.ring().to_string()));
            }
            if r.order() != nx {
                return Err(Error::OrderMismatch(nx, r.order()));
            }
        }
        Ok(BiSeries { ring, nx, rows })
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, j: usize) -> &TruncSeries {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[TruncSeries] {
        &self.rows
    }

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: usize, b: usize) -> &Coeff {
        self.rows[b].coeff(a)
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, c: Coeff) {
        self.rows[b].coeffs[a] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.nx != other.nx || self.ny() != other.ny() {
            return Err(Error::OrderMismatch(self.nx.max(self.ny()), other.nx.max(other.ny())));
        }
        Ok(())
    }

    pub fn eq_checked(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for (a, b) in self.rows.iter().zip(&other.rows) {
            if !a.eq_checked(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries { ring: self.ring, nx: self.nx, rows })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries { ring: self.ring, nx: self.nx, rows })
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        BiSeries {
            ring: self.ring,
            nx: self.nx,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Swap the roles of x and y; requires a square truncation window.
    pub fn transpose(&self) -> Result<Self> {
        if self.nx != self.ny() {
            return Err(Error::NonSquareTruncation(self.nx, self.ny()));
        }
        let n = self.nx;
        let mut out = Self::zero(self.ring, n, n);
        for b in 0..n {
            for a in 0..n {
                out.rows[b].coeffs[a] = self.rows[a].coeffs[b].clone();
            }
        }
        Ok(out)
    }

    /// `F(x, y) - F(y, x)`; requires a square truncation window.
    pub fn antisymmetrize(&self) -> Result<Self> {
        self.sub(&self.transpose()?)
    }

    /// Multiply by a sparse integer polynomial `sum c * x^u * y^v`,
    /// truncating back to the same window.
    pub fn mul_by_poly(&self, terms: &[(BigInt, usize, usize)]) -> Self {
        let ring = self.ring;
        let mut out = Self::zero(ring, self.nx, self.ny());
        for (c, u, v) in terms {
            let scalar = ring.from_bigint(c);
            if ring.is_zero(&scalar) {
                continue;
            }
            for b in *v..self.ny() {
                for a in *u..self.nx {
                    let src = &self.rows[b - v].coeffs[a - u];
                    if ring.is_zero(src) {
                        continue;
                    }
                    let add = ring.mul(&scalar, src);
                    let cur = out.rows[b].coeffs[a].clone();
                    out.rows[b].coeffs[a] = ring.add(&cur, &add);
                }
            }
        }
        out
    }

    pub fn mul_by_poly_i64(&self, terms: &[(i64, usize, usize)]) -> Self {
        let mapped: Vec<(BigInt, usize, usize)> =
            terms.iter().map(|(c, u, v)| (BigInt::from(*c), *u, *v)).collect();
        self.mul_by_poly(&mapped)
    }

    pub fn reduce_mod(&self, target: RingTag) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.reduce_mod(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries { ring: target, nx: self.nx, rows })
    }

    /// Read the rows of an `F_p` bivariate series as truncated Laurent
    /// series, the form consumed by the sieve detector.
    pub fn laurent_rows(&self) -> Result<Vec<LaurentTrunc>> {
        let p = match self.ring {
            RingTag::Fp(p) => p,
            _ => return Err(Error::UnsupportedRing("laurent_rows of a non-F_p series")),
        };
        self.rows
            .iter()
            .map(|r| {
                let res = r.residues()?;
                Ok(LaurentTrunc::new(p, 0, res))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut terms = Vec::new();
        for (b, row) in self.rows.iter().enumerate() {
            for a in 0..self.nx {
                let c = row.coeff(a);
                if !self.ring.is_zero(c) {
                    terms.push((c.to_string(), a as i64, b as i64));
                }
            }
        }
        textform::format_term_strings(&terms)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.rows.iter().map(|r| r.support().len()).sum()
    }
}

/// An exact integer Laurent polynomial in `t`, kept sparse and canonical
/// (no zero coefficients stored).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: &[(BigInt, i64)]) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            let entry = map.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, v| !v.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn from_terms_i64(terms: &[(i64, i64)]) -> Self {
        let mapped: Vec<(BigInt, i64)> = terms.iter().map(|(c, e)| (BigInt::from(*c), *e)).collect();
        Self::from_terms(&mapped)
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::from_terms(&[(BigInt::from(1), k)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = map.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, v| !v.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let entry = map.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        map.retain(|_, v| !v.is_zero());
        LaurentPoly { terms: map }
    }

    /// The substitution `t = 1 + x`, truncated to order `n`: the bridge from
    /// group-ring windows to power-series windows. Negative powers of `t`
    /// expand through the inverse of `1 + x`, which is a unit.
    pub fn phi(&self, n: usize) -> Result<TruncSeries> {
        let ring = RingTag::IntZ;
        let base = TruncSeries::from_terms_i64(ring, n, &[(1, 0), (1, 1)]);
        let base_inv = base.invert_unit()?;
        let mut acc = TruncSeries::zero(ring, n);
        for (e, c) in &self.terms {
            let factor = if *e >= 0 { &base } else { &base_inv };
            let mut power = TruncSeries::one(ring, n);
            for _ in 0..e.unsigned_abs() {
                power = power.mul_trunc(factor)?;
            }
            acc = acc.add(&power.scale(&Coeff::Int(c.clone())))?;
        }
        Ok(acc)
    }

    pub fn to_text(&self) -> String {
        let terms: Vec<(String, i64, i64)> =
            self.terms.iter().map(|(e, c)| (c.to_string(), *e, 0)).collect();
        textform::format_term_strings(&terms)
    }
}

/// A truncated Laurent series over `F_p`: coefficients are known exactly for
/// exponents `low .. order` and unknown from `order` on. The valuation is
/// tight (the leading stored coefficient of a nonzero series is nonzero) so
/// equality and linear algebra over these is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTrunc {
    p: u64,
    low: i64,
    order: i64,
    coeffs: Vec<u64>,
}

impl LaurentTrunc {
    /// Normalizing constructor: reduces mod p and strips leading zeros,
    /// bumping the valuation. `coeffs[i]` is the coefficient of
    /// `x^(low + i)`; the order is `low + coeffs.len()`.
    pub fn new(p: u64, low: i64, coeffs: Vec<u64>) -> Self {
        let order = low + coeffs.len() as i64;
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => Self::zero(p, order),
            Some(k) => {
                coeffs.drain(..k);
                LaurentTrunc { p, low: low + k as i64, order, coeffs }
            }
        }
    }

    pub fn zero(p: u64, order: i64) -> Self {
        LaurentTrunc { p, low: 0, order, coeffs: Vec::new() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    /// Coefficient at exponent `e`, `None` beyond the truncation.
    pub fn get(&self, e: i64) -> Option<u64> {
        if e >= self.order {
            return None;
        }
        if e < self.low {
            return Some(0);
        }
        // The zero series stores no coefficients at all, whatever its order.
        Some(self.coeffs.get((e - self.low) as usize).copied().unwrap_or(0))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.low + i as i64)
            .collect()
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// Sum, truncated to the weaker of the two orders.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let order = self.order.min(other.order);
        if self.is_zero() && other.is_zero() {
            return Ok(Self::zero(self.p, order));
        }
        let low = match (self.is_zero(), other.is_zero()) {
            (true, false) => other.low,
            (false, true) => self.low,
            _ => self.low.min(other.low),
        };
        let len = (order - low).max(0) as usize;
        let mut out = vec![0u64; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let e = low + i as i64;
            let a = self.get(e).unwrap_or(0);
            let b = other.get(e).unwrap_or(0);
            *slot = (a + b) % self.p;
        }
        Ok(Self::new(self.p, low, out))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p, self.order);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as u128 * c as u128) % self.p as u128) as u64)
            .collect();
        LaurentTrunc { p: self.p, low: self.low, order: self.order, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn mul_x_pow(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.order += k;
        if !out.is_zero() {
            out.low += k;
        }
        out
    }

    /// Multiply by an exact polynomial; the order is preserved because the
    /// polynomial is fully known.
    pub fn mul_poly(&self, poly: &[u64]) -> Self {
        let poly = fppoly::trim(poly.iter().map(|&c| c % self.p).collect());
        if self.is_zero() || poly.is_empty() {
            return Self::zero(self.p, self.order);
        }
        let val = poly.iter().position(|&c| c != 0).unwrap() as i64;
        let len = self.coeffs.len();
        let mut out = vec![0u64; len];
        // Result is known on [low + val, order + val); entry i is the
        // coefficient of x^(low + val + i).
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for (j, &pc) in poly.iter().enumerate().skip(val as usize) {
                let need = i as i64 + val - j as i64;
                if need < 0 || need >= len as i64 {
                    continue;
                }
                acc = (acc + pc as u128 * self.coeffs[need as usize] as u128) % self.p as u128;
            }
            *slot = acc as u64;
        }
        Self::new(self.p, self.low + val, out)
    }

    /// Multiply by an exact rational function. The result's order shifts by
    /// the valuation of the scalar: dividing by `x^k` reveals nothing new.
    pub fn mul_ratfunc(&self, r: &RationalFunction) -> Result<Self> {
        if r.prime() != self.p {
            return Err(Error::PrimeMismatch(self.p, r.prime()));
        }
        if r.is_zero() || self.is_zero() {
            return Ok(Self::zero(self.p, self.order));
        }
        let p = self.p;
        let num = r.numerator();
        let den = r.denominator();
        let num_val = num.iter().position(|&c| c != 0).unwrap();
        let den_val = den.iter().position(|&c| c != 0).unwrap();
        let den_unit: Vec<u64> = den[den_val..].to_vec();

        // a * num, known on [low + num_val, order + num_val).
        let t = self.mul_poly(num);
        // Divide by the unit part of den: expand its inverse far enough to
        // cover t's known window, multiply, then shift by -den_val.
        let len = (t.order - t.low) as usize;
        if len == 0 {
            return Ok(Self::zero(p, self.order + num_val as i64 - den_val as i64));
        }
        let inv = invert_unit_poly(&den_unit, len, p)?;
        let mut out = vec![0u64; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for (j, &iv) in inv.iter().enumerate().take(i + 1) {
                let a = t.coeffs.get(i - j).copied().unwrap_or(0);
                acc = (acc + iv as u128 * a as u128) % p as u128;
            }
            *slot = acc as u64;
        }
        Ok(Self::new(p, t.low - den_val as i64, out))
    }

    /// Restrict knowledge to exponents below `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if self.is_zero() || self.low >= order {
            return Self::zero(self.p, order);
        }
        let keep = (order - self.low) as usize;
        Self::new(self.p, self.low, self.coeffs[..keep].to_vec())
    }

    pub fn to_text(&self) -> String {
        let terms: Vec<(String, i64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c.to_string(), self.low + i as i64, 0))
            .collect();
        textform::format_term_strings(&terms)
    }
}

impl serde::Serialize for LaurentTrunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LaurentTrunc", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("low", &self.low)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("terms", &self.to_text())?;
        st.end()
    }
}

/// Inverse of a unit `F_p` power series given as a coefficient slice, to
/// `len` coefficients.
fn invert_unit_poly(unit: &[u64], len: usize, p: u64) -> Result<Vec<u64>> {
    let a0 = *unit.first().unwrap_or(&0) % p;
    let b0 = crate::ring::inverse_mod_u64(a0, p).ok_or_else(|| Error::NotAUnit(a0.to_string()))?;
    let mut out = vec![0u64; len];
    out[0] = b0;
    for k in 1..len {
        let mut acc: u128 = 0;
        for i in 1..=k {
            let a = unit.get(i).copied().unwrap_or(0) % p;
            if a == 0 {
                continue;
            }
            acc = (acc + a as u128 * out[k - i] as u128) % p as u128;
        }
        out[k] = ((p as u128 - acc) % p as u128 * b0 as u128 % p as u128) as u64;
    }
    Ok(out)
}
