//! Exact elements of cyclotomic rings `Z[zeta_m]` and fields `Q(zeta_m)`.
//!
//! An element is a coefficient vector of length `phi(m)` in the power basis
//! `1, zeta, ..., zeta^(phi(m)-1)`, always reduced modulo the m-th cyclotomic
//! polynomial. Binary operations between different conductors first embed
//! both operands into the cyclotomic field of the lcm conductor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Ring;
use crate::error::{Error, Result};

/// Coefficient rings a cyclotomic element can live over.
pub trait CycloCoeff: Ring + fmt::Display {
    fn from_i64(v: i64) -> Self;
}

impl CycloCoeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl CycloCoeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

#[derive(Clone)]
pub struct Cyclo<C> {
    m: u32,
    coeffs: Vec<C>,
}

/// Element of `Z[zeta_m]`.
pub type CycloInt = Cyclo<BigInt>;
/// Element of `Q(zeta_m)`.
pub type CycloRat = Cyclo<BigRational>;

const CACHED_CONDUCTORS: usize = 128;

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    static CACHE: [OnceLock<Vec<i64>>; CACHED_CONDUCTORS] = [const { OnceLock::new() }; CACHED_CONDUCTORS];
    if (m as usize) < CACHED_CONDUCTORS {
        return CACHE[m as usize].get_or_init(|| compute_cyclotomic(m)).clone();
    }
    compute_cyclotomic(m)
}

fn compute_cyclotomic(m: u32) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d != 0 {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        let dd = div.len() - 1;
        let dn = num.len() - 1;
        let mut q = vec![0i64; dn - dd + 1];
        for k in (dd..=dn).rev() {
            let c = num[k];
            q[k - dd] = c;
            for j in 0..=dd {
                num[k - dd + j] -= c * div[j];
            }
        }
        num = q;
    }
    num
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

impl<C: CycloCoeff> Cyclo<C> {
    /// The rational number `v`, at conductor 1.
    pub fn from_scalar(v: C) -> Self {
        Cyclo { m: 1, coeffs: vec![v] }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_scalar(C::from_i64(v))
    }

    /// `zeta_m^k`
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![C::zero(); e + 1];
        raw[e] = C::one();
        Self::reduce_raw(m, raw)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Builds an element from an arbitrary-length power-basis vector.
    pub fn from_coeffs(m: u32, coeffs: Vec<C>) -> Self {
        assert!(m >= 1);
        Self::reduce_raw(m, coeffs)
    }

    fn reduce_raw(m: u32, mut raw: Vec<C>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        if raw.len() > deg {
            for k in (deg..raw.len()).rev() {
                let c = raw[k].clone();
                if c.is_zero() {
                    continue;
                }
                for (j, &pj) in phi.iter().enumerate().take(deg) {
                    if pj != 0 {
                        raw[k - deg + j] = raw[k - deg + j].clone() - c.clone() * C::from_i64(pj);
                    }
                }
                raw[k] = C::zero();
            }
        }
        raw.resize(deg, C::zero());
        Cyclo { m, coeffs: raw }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Re-expresses the element in `Q(zeta_n)`, `m | n`, via `zeta_m = zeta_n^(n/m)`.
    pub fn embed(&self, n: u32) -> Result<Self> {
        if n % self.m != 0 {
            return Err(Error::ConductorMismatch { left: self.m, right: n });
        }
        if n == self.m {
            return Ok(self.clone());
        }
        let step = (n / self.m) as usize;
        let mut raw = vec![C::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Ok(Self::reduce_raw(n, raw))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.m.lcm(&b.m);
        (a.embed(n).unwrap(), b.embed(n).unwrap())
    }

    /// Galois automorphism `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.m as i64;
        assert_eq!(k.gcd(&m), 1, "Galois exponent must be a unit mod {m}");
        let k = k.rem_euclid(m) as usize;
        let mut raw = vec![C::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            let idx = (e * k) % self.m as usize;
            if idx >= raw.len() {
                raw.resize(idx + 1, C::zero());
            }
            raw[idx] = raw[idx].clone() + c.clone();
        }
        Self::reduce_raw(self.m, raw)
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// All Galois conjugates, one per unit residue mod the conductor.
    pub fn conjugates(&self) -> Vec<Self> {
        let m = self.m as i64;
        (1..=m).filter(|k| k.gcd(&m) == 1).map(|k| self.galois(k)).collect()
    }

    /// Field trace to `Q` (sum of all Galois conjugates).
    pub fn trace(&self) -> C {
        let sum = self.conjugates().into_iter().fold(Self::from_int(0), |acc, x| acc + x);
        sum.as_scalar().expect("trace is Galois invariant")
    }

    /// Field norm to `Q` (product of all Galois conjugates).
    pub fn norm(&self) -> C {
        let prod = self.conjugates().into_iter().fold(Self::from_int(1), |acc, x| acc * x);
        prod.as_scalar().expect("norm is Galois invariant")
    }

    /// The scalar this element equals, when it is rational.
    pub fn as_scalar(&self) -> Option<C> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(C::zero))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_scalar().is_some()
    }

    /// Fixed by every Galois automorphism.
    pub fn is_galois_invariant(&self) -> bool {
        self.conjugates().iter().all(|c| c == self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::from_int(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value for diagnostics and float oracles.
    pub fn to_complex(&self) -> (f64, f64)
    where
        C: ToF64,
    {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.m as f64;
            let v = c.to_f64_lossy();
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let n = self.coeffs.len() + rhs.coeffs.len();
        let mut raw = vec![C::zero(); n.saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = raw[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::reduce_raw(self.m, raw)
    }
}

impl CycloInt {
    pub fn to_rat(&self) -> CycloRat {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_scalar()
    }
}

impl CycloRat {
    /// Back to `Z[zeta_m]` when every coefficient is integral.
    pub fn to_int(&self) -> Option<CycloInt> {
        let coeffs: Option<Vec<BigInt>> =
            self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
        Some(Cyclo { m: self.m, coeffs: coeffs? })
    }

    /// Multiplicative inverse: the product of the other conjugates over the norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.m as i64;
        let others = (2..=m)
            .filter(|k| k.gcd(&m) == 1)
            .map(|k| self.galois(k))
            .fold(Self::from_int(1), |acc, x| acc * x);
        let n = (self.clone() * others.clone()).as_scalar()?;
        Some(others * Self::from_scalar(n.recip()))
    }
}

pub trait ToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64 for BigInt {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl ToF64 for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Binary cyclotomic operations offered by [`cyclo_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
    /// Conjugate of the first operand; the second is ignored.
    Conj,
    /// Trace of the product `a * b`, as a rational integer at conductor 1.
    EvalTrace,
}

/// Strict-conductor front end: unlike the operator impls, mismatched
/// conductors are an error unless `embed` is set.
pub fn cyclo_arith(op: CycloOp, a: &CycloInt, b: &CycloInt, embed: bool) -> Result<CycloInt> {
    if a.m != b.m && !embed && op != CycloOp::Conj {
        return Err(Error::ConductorMismatch { left: a.m, right: b.m });
    }
    Ok(match op {
        CycloOp::Add => a.clone() + b.clone(),
        CycloOp::Mul => a.clone() * b.clone(),
        CycloOp::Conj => a.conj(),
        CycloOp::EvalTrace => CycloInt::from_scalar((a.clone() * b.clone()).trace()),
    })
}

impl<C: CycloCoeff> PartialEq for Cyclo<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl<C: CycloCoeff> fmt::Debug for Cyclo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: CycloCoeff> fmt::Display for Cyclo<C> {
    /// Renders as a sum of powers of `z<m>`, e.g. `1 + 2*z12^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "z{}^{k}", self.m)?,
                _ => write!(f, "{c}*z{}^{k}", self.m)?,
            }
        }
        Ok(())
    }
}

impl<C: CycloCoeff> Add for Cyclo<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = if self.m == rhs.m { (self, rhs) } else { Self::common(&self, &rhs) };
        Cyclo { m: a.m, coeffs: a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl<C: CycloCoeff> Sub for Cyclo<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: CycloCoeff> Neg for Cyclo<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo { m: self.m, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: CycloCoeff> Mul for Cyclo<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.m == rhs.m {
            return self.mul_same(&rhs);
        }
        // Scalars multiply without changing conductor.
        if let Some(s) = self.as_scalar() {
            return Cyclo { m: rhs.m, coeffs: rhs.coeffs.into_iter().map(|c| c * s.clone()).collect() };
        }
        if let Some(s) = rhs.as_scalar() {
            return Cyclo { m: self.m, coeffs: self.coeffs.into_iter().map(|c| c * s.clone()).collect() };
        }
        let (a, b) = Self::common(&self, &rhs);
        a.mul_same(&b)
    }
}

impl<C: CycloCoeff> Zero for Cyclo<C> {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<C: CycloCoeff> One for Cyclo<C> {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Ring for CycloInt {
    /// Exact division in `Z[zeta_m]`, via the inverse in `Q(zeta_m)`.
    fn div_exact(&self, b: &Self) -> Option<Self> {
        let q = self.to_rat() * b.to_rat().inv()?;
        q.to_int()
    }
}

impl Ring for CycloRat {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        Some(self.clone() * b.inv()?)
    }
}

impl From<i64> for CycloInt {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for CycloInt {
    fn from(v: BigInt) -> Self {
        Self::from_scalar(v)
    }
}

impl CycloInt {
    /// Sum of the given roots of unity `zeta_m^k`.
    pub fn sum_of_roots(m: u32, exponents: impl IntoIterator<Item = i64>) -> Self {
        exponents.into_iter().fold(Self::from_int(0), |acc, k| acc + Self::zeta_pow(m, k))
    }

    pub fn is_negative_integer(&self) -> bool {
        self.as_integer().is_some_and(|v| v.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycloInt {
        CycloInt::zeta_pow(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u32 - 1, euler_phi(m));
        }
    }

    #[test]
    fn basic_identities() {
        // i^2 = -1
        assert_eq!(z(4, 1) * z(4, 1), CycloInt::from_int(-1));
        // zeta_3 + conj(zeta_3) = -1
        assert_eq!(z(3, 1) + z(3, 1).conj(), CycloInt::from_int(-1));
        // (1 + zeta_3)(1 + conj zeta_3) = 1 + (zeta_3 + zeta_3^2) + 1 = 1
        let one = CycloInt::from_int(1);
        assert_eq!((one.clone() + z(3, 1)) * (one + z(3, 1).conj()), CycloInt::from_int(1));
        for m in [1, 2, 3, 4, 6, 12] {
            assert_eq!(z(m, 1).pow(m), CycloInt::from_int(1), "m = {m}");
        }
    }

    #[test]
    fn mixed_conductors_embed() {
        // i * zeta_3 lives in Q(zeta_12) and equals zeta_12^(3 + 4)
        assert_eq!(z(4, 1) * z(3, 1), z(12, 7));
        assert_eq!((z(4, 1) * z(3, 1)).conductor(), 12);
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(2, 1), CycloInt::from_int(-1));
    }

    #[test]
    fn strict_front_end() {
        let a = z(3, 1);
        let b = z(4, 1);
        assert!(matches!(cyclo_arith(CycloOp::Add, &a, &b, false), Err(Error::ConductorMismatch { .. })));
        assert_eq!(cyclo_arith(CycloOp::Mul, &a, &b, true).unwrap(), z(12, 7));
        assert_eq!(cyclo_arith(CycloOp::Conj, &a, &b, false).unwrap(), z(3, 2));
        // Tr_{Q(zeta_3)/Q}(zeta_3 * 1) = -1
        assert_eq!(cyclo_arith(CycloOp::EvalTrace, &a, &z(3, 0), false).unwrap(), CycloInt::from_int(-1));
    }

    #[test]
    fn galois_invariant_elements_are_rational() {
        let x = z(12, 1) + z(12, 5) + z(12, 7) + z(12, 11); // sum of primitive 12th roots = mu(12) = 0
        assert!(x.is_galois_invariant());
        assert_eq!(x.as_integer(), Some(BigInt::from(0)));
        let y = z(12, 1) + z(12, 11);
        assert!(!y.is_galois_invariant());
        assert_eq!(y.norm(), BigInt::from(9));
    }

    #[test]
    fn inverses_and_exact_division() {
        let a = CycloInt::from_int(1) + z(3, 1); // a unit: -zeta_3^2
        let inv = a.to_rat().inv().unwrap();
        assert_eq!((a.to_rat() * inv).as_scalar(), Some(BigRational::from_integer(1.into())));
        let b = CycloInt::from_int(2) + z(4, 1);
        let c = z(12, 5) - CycloInt::from_int(3);
        assert_eq!((b.clone() * c.clone()).div_exact(&b), Some(c));
        assert_eq!(CycloInt::from_int(1).div_exact(&CycloInt::from_int(2)), None);
    }

    #[test]
    fn complex_values() {
        let (re, im) = z(12, 2).to_complex();
        assert!((re - 0.5).abs() < 1e-12 && (im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
}
