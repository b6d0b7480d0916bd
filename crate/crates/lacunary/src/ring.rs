//! Coefficient rings.
//!
//! Everything downstream is exact: integers are arbitrary precision and the
//! modular rings reduce eagerly. Four rings are supported, selected at
//! runtime by a [`RingTag`] so that series and matrices can flow through the
//! CLI without generics: the integers `Z`, prime fields `F_p`, the finite
//! rings `Z/p^e` (the truncation-friendly stand-in for p-adic coefficients,
//! with `e` echoed in every report), and the rational function fields
//! `F_p(x)` used as scalars for sieve independence arguments.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Trial-division primality, adequate for the small moduli used here.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest prime modulus accepted; keeps `p * p` comfortably inside `u128`
/// intermediates and `p^e` inside `u64` for small `e`.
const MAX_PRIME: u64 = (1 << 31) - 1;

/// Runtime descriptor of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    /// The integers.
    IntZ,
    /// The prime field F_p.
    Fp(u64),
    /// The finite ring Z/p^e.
    ZmodPE { p: u64, e: u32 },
    /// The rational function field F_p(x).
    RatFuncFp(u64),
}

impl RingTag {
    pub fn fp(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingTag::Fp(p))
    }

    pub fn zmod_pe(p: u64, e: u32) -> Result<Self> {
        check_prime(p)?;
        if e == 0 {
            return Err(Error::PrecViolated("exponent e must be >= 1".into()));
        }
        let mut m = 1u64;
        for _ in 0..e {
            m = m
                .checked_mul(p)
                .ok_or_else(|| Error::PrecViolated(format!("p^e overflows u64: {p}^{e}")))?;
        }
        Ok(RingTag::ZmodPE { p, e })
    }

    pub fn rat_func(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingTag::RatFuncFp(p))
    }

    /// The modulus of a finite ring; `None` for Z and F_p(x).
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingTag::IntZ | RingTag::RatFuncFp(_) => None,
            RingTag::Fp(p) => Some(*p),
            RingTag::ZmodPE { p, e } => {
                let mut m = 1u64;
                for _ in 0..*e {
                    m *= p;
                }
                Some(m)
            }
        }
    }

    /// The characteristic prime, when there is one.
    pub fn prime(&self) -> Option<u64> {
        match self {
            RingTag::IntZ => None,
            RingTag::Fp(p) | RingTag::ZmodPE { p, .. } | RingTag::RatFuncFp(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            RingTag::IntZ => Coeff::Int(BigInt::zero()),
            RingTag::Fp(_) | RingTag::ZmodPE { .. } => Coeff::Mod(0),
            RingTag::RatFuncFp(p) => Coeff::Rat(RationalFunction::zero(*p)),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            RingTag::IntZ => Coeff::Int(v.clone()),
            RingTag::Fp(_) | RingTag::ZmodPE { .. } => {
                Coeff::Mod(reduce_bigint(v, self.modulus().unwrap()))
            }
            RingTag::RatFuncFp(p) => {
                let c = reduce_bigint(v, *p);
                Coeff::Rat(RationalFunction::constant(*p, c))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Mod(v) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (RingTag::IntZ, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (RingTag::Fp(_) | RingTag::ZmodPE { .. }, Coeff::Mod(x), Coeff::Mod(y)) => {
                let m = self.modulus().unwrap() as u128;
                Coeff::Mod(((*x as u128 + *y as u128) % m) as u64)
            }
            (RingTag::RatFuncFp(_), Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x.add(y)),
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (RingTag::IntZ, Coeff::Int(x)) => Coeff::Int(-x),
            (RingTag::Fp(_) | RingTag::ZmodPE { .. }, Coeff::Mod(x)) => {
                let m = self.modulus().unwrap();
                Coeff::Mod(if *x == 0 { 0 } else { m - x })
            }
            (RingTag::RatFuncFp(_), Coeff::Rat(x)) => Coeff::Rat(x.neg()),
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (RingTag::IntZ, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (RingTag::Fp(_) | RingTag::ZmodPE { .. }, Coeff::Mod(x), Coeff::Mod(y)) => {
                let m = self.modulus().unwrap() as u128;
                Coeff::Mod(((*x as u128 * *y as u128) % m) as u64)
            }
            (RingTag::RatFuncFp(_), Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x.mul(y)),
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }

    /// Multiplicative inverse of a unit; `NotAUnit` otherwise.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (RingTag::IntZ, Coeff::Int(x)) => {
                if x.abs() == BigInt::from(1) {
                    Ok(Coeff::Int(x.clone()))
                } else {
                    Err(Error::NotAUnit(x.to_string()))
                }
            }
            (RingTag::Fp(_) | RingTag::ZmodPE { .. }, Coeff::Mod(x)) => {
                let m = self.modulus().unwrap();
                inverse_mod_u64(*x, m)
                    .map(Coeff::Mod)
                    .ok_or_else(|| Error::NotAUnit(x.to_string()))
            }
            (RingTag::RatFuncFp(_), Coeff::Rat(x)) => x.inverse().map(Coeff::Rat),
            _ => panic!("coefficient does not belong to ring {self}"),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::IntZ => write!(f, "Z"),
            RingTag::Fp(p) => write!(f, "F{p}"),
            RingTag::ZmodPE { p, e } => write!(f, "Z/{p}^{e}"),
            RingTag::RatFuncFp(p) => write!(f, "F{p}(x)"),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrecViolated(format!("prime {p} exceeds supported range")));
    }
    Ok(())
}

fn reduce_bigint(v: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let mut r = v % &m_big;
    if r.is_negative() {
        r += &m_big;
    }
    r.to_u64().expect("residue fits u64")
}

/// Extended-Euclid inverse of `a` modulo `m`; `None` when gcd(a, m) != 1.
pub fn inverse_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Inverse of a ring element under the stated ring: defined for `F_p` and
/// `Z/p^e` units, and for `±1` over `Z`. Other rings are rejected so callers
/// reach for [`RingTag::inv`] deliberately when they mean field inversion in
/// `F_p(x)`.
pub fn modular_inverse(ring: RingTag, a: &Coeff) -> Result<Coeff> {
    match ring {
        RingTag::IntZ => match a {
            Coeff::Int(x) if x.abs() == BigInt::from(1) => Ok(a.clone()),
            _ => Err(Error::UnsupportedRing("modular_inverse over Z of a non-sign")),
        },
        RingTag::Fp(_) | RingTag::ZmodPE { .. } => ring.inv(a),
        RingTag::RatFuncFp(_) => Err(Error::UnsupportedRing("modular_inverse over F_p(x)")),
    }
}

/// A coefficient in one of the supported rings. Which variant is legal is
/// determined by the accompanying [`RingTag`]; mixing them is a programming
/// error and panics rather than erroring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Int(BigInt),
    Mod(u64),
    Rat(RationalFunction),
}

impl Coeff {
    /// The integer payload, for `Z` coefficients.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Coeff::Int(v) => Some(v),
            _ => None,
        }
    }

    /// The residue payload, for `F_p` and `Z/p^e` coefficients.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Coeff::Mod(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Mod(v) => write!(f, "{v}"),
            Coeff::Rat(r) => write!(f, "{r}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, the building block for rational functions.
// Representation: ascending coefficients, no trailing zeros, zero = empty.

pub mod fppoly {
    use super::inverse_mod_u64;

    pub type FpPoly = Vec<u64>;

    pub fn trim(mut v: FpPoly) -> FpPoly {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn is_zero(v: &[u64]) -> bool {
        v.is_empty()
    }

    pub fn constant(c: u64, p: u64) -> FpPoly {
        trim(vec![c % p])
    }

    pub fn x_pow(k: usize) -> FpPoly {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        v
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + y) % p;
        }
        trim(out)
    }

    pub fn neg(a: &[u64], p: u64) -> FpPoly {
        trim(a.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
        add(a, &neg(b, p), p)
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> FpPoly {
        let c = c % p;
        trim(a.iter().map(|&x| ((x as u128 * c as u128) % p as u128) as u64).collect())
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
        if is_zero(a) || is_zero(b) {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        trim(out)
    }

    /// Euclidean division; panics on zero divisor (callers guard).
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
        assert!(!is_zero(b), "division by zero polynomial");
        let mut rem: FpPoly = a.to_vec();
        rem = trim(rem);
        let db = b.len() - 1;
        let lead_inv = inverse_mod_u64(b[db], p).expect("leading coefficient invertible");
        let mut quot = vec![0u64; a.len().saturating_sub(db)];
        while !is_zero(&rem) && rem.len() > db {
            let dr = rem.len() - 1;
            let q = ((rem[dr] as u128 * lead_inv as u128) % p as u128) as u64;
            let shift = dr - db;
            quot[shift] = q;
            for (j, &bc) in b.iter().enumerate() {
                let sub = (q as u128 * bc as u128 % p as u128) as u64;
                rem[shift + j] = ((rem[shift + j] + p) - sub % p) % p;
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn make_monic(a: &[u64], p: u64) -> FpPoly {
        if is_zero(a) {
            return Vec::new();
        }
        let inv = inverse_mod_u64(*a.last().unwrap(), p).expect("unit leading coefficient");
        scale(a, inv, p)
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd_monic(a: &[u64], b: &[u64], p: u64) -> FpPoly {
        let mut x: FpPoly = trim(a.to_vec());
        let mut y: FpPoly = trim(b.to_vec());
        while !is_zero(&y) {
            let (_, r) = divrem(&x, &y, p);
            x = y;
            y = r;
        }
        make_monic(&x, p)
    }
}

use fppoly::FpPoly;

/// An element of F_p(x) in canonical form: the denominator is monic, shares
/// no common factor with the numerator, and zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    p: u64,
    num: FpPoly,
    den: FpPoly,
}

impl RationalFunction {
    /// Canonicalizing constructor; the only way fractions enter the system.
    pub fn new(p: u64, num: Vec<u64>, den: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let num = fppoly::trim(num.into_iter().map(|c| c % p).collect());
        let den = fppoly::trim(den.into_iter().map(|c| c % p).collect());
        if fppoly::is_zero(&den) {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(p, num, den))
    }

    fn reduced(p: u64, num: FpPoly, den: FpPoly) -> Self {
        if fppoly::is_zero(&num) {
            return Self::zero(p);
        }
        let g = fppoly::gcd_monic(&num, &den, p);
        let (num, _) = fppoly::divrem(&num, &g, p);
        let (den, _) = fppoly::divrem(&den, &g, p);
        let lead = *den.last().unwrap();
        let inv = inverse_mod_u64(lead, p).expect("field leading coefficient");
        RationalFunction {
            p,
            num: fppoly::scale(&num, inv, p),
            den: fppoly::scale(&den, inv, p),
        }
    }

    pub fn zero(p: u64) -> Self {
        RationalFunction { p, num: Vec::new(), den: vec![1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        RationalFunction { p, num: fppoly::constant(c, p), den: vec![1] }
    }

    /// The polynomial x as a rational function.
    pub fn x(p: u64) -> Self {
        RationalFunction { p, num: vec![0, 1], den: vec![1] }
    }

    pub fn from_poly(p: u64, poly: Vec<u64>) -> Self {
        RationalFunction { p, num: fppoly::trim(poly.into_iter().map(|c| c % p).collect()), den: vec![1] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        fppoly::is_zero(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch in F_p(x) arithmetic");
        let p = self.p;
        let num = fppoly::add(
            &fppoly::mul(&self.num, &other.den, p),
            &fppoly::mul(&other.num, &self.den, p),
            p,
        );
        let den = fppoly::mul(&self.den, &other.den, p);
        Self::reduced(p, num, den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { p: self.p, num: fppoly::neg(&self.num, self.p), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch in F_p(x) arithmetic");
        let p = self.p;
        Self::reduced(
            p,
            fppoly::mul(&self.num, &other.num, p),
            fppoly::mul(&self.den, &other.den, p),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        Ok(Self::reduced(self.p, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }
}

fn poly_string(v: &[u64]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| if k == 0 { format!("{c}") } else { format!("{c}*x^{k}") })
        .collect();
    terms.join(" + ")
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == vec![1] {
            write!(f, "{}", poly_string(&self.num))
        } else {
            write!(f, "({})/({})", poly_string(&self.num), poly_string(&self.den))
        }
    }
}

impl serde::Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
