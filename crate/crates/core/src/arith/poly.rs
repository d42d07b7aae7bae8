//! Dense univariate polynomials over an exact ring, with subresultant
//! resultants and the composed product used for Rankin-Selberg expansion.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact commutative ring with (partial) exact division.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `a / b` when `b` divides `a` exactly, `None` otherwise.
    fn div_exact(&self, b: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }
}

impl Ring for BigRational {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        (!b.is_zero()).then(|| self / b)
    }
}

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type IntPoly = Poly<BigInt>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![R::one()] }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `x^n f(1/x)` with `n = deg f`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = R::zero();
        for c in &self.coeffs {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + R::one();
        }
        Self::new(out)
    }

    /// `f(c x)`
    pub fn substitute_scaled(&self, c: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self::new(out)
    }

    /// `f(x^k)`
    pub fn inflate_variable(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut out = vec![R::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = q b + r`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.coeffs[db].clone();
        let Some(da) = self.degree() else { return Self::zero() };
        if da < db {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        let mut e = da - db + 1;
        for k in (db..=da).rev() {
            let c = r[k].clone();
            for x in r.iter_mut().take(k + 1) {
                *x = x.clone() * lb.clone();
            }
            if !c.is_zero() {
                for j in 0..=db {
                    r[k - db + j] = r[k - db + j].clone() - c.clone() * b.coeffs[j].clone();
                }
            }
            e -= 1;
        }
        let mut r = Self::new(r);
        for _ in 0..e {
            r = r.scale(&lb);
        }
        r
    }

    /// Exact quotient `self / b` when `b` divides `self` in `R[x]`.
    pub fn div_exact_poly(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let Some(da) = self.degree() else { return Some(Self::zero()) };
        if da < db {
            return None;
        }
        let lb = &b.coeffs[db];
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); da - db + 1];
        for k in (db..=da).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].div_exact(lb)?;
            for j in 0..=db {
                r[k - db + j] = r[k - db + j].clone() - c.clone() * b.coeffs[j].clone();
            }
            q[k - db] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &Self) -> R {
        let (Some(mut da), Some(mut db)) = (self.degree(), other.degree()) else {
            return R::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut sign_flip = false;
        if da < db {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut da, &mut db);
            sign_flip = da % 2 == 1 && db % 2 == 1;
        }
        if db == 0 {
            let r = pow_ring(&b.coeffs[0], da as u32);
            return if sign_flip { -r } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                sign_flip = !sign_flip;
            }
            let r = a.pseudo_rem(&b);
            let denom = g.clone() * pow_ring(&h, delta as u32);
            a = b;
            b = Poly::new(
                r.coeffs.iter().map(|c| c.div_exact(&denom).expect("subresultant division is exact")).collect(),
            );
            g = a.leading().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                pow_ring(&g, delta as u32)
                    .div_exact(&pow_ring(&h, delta as u32 - 1))
                    .expect("subresultant division is exact")
            };
            da = a.degree().unwrap();
            let Some(d) = b.degree() else { return R::zero() };
            db = d;
            if db == 0 {
                let lb = b.coeffs[0].clone();
                let res = if da == 0 {
                    R::one()
                } else {
                    pow_ring(&lb, da as u32)
                        .div_exact(&pow_ring(&h, da as u32 - 1))
                        .expect("subresultant division is exact")
                };
                return if sign_flip { -res } else { res };
            }
        }
    }
}

fn pow_ring<R: Ring>(x: &R, e: u32) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().unwrap_or(0);
        let res = self.resultant(&self.derivative());
        let lc = self.leading().cloned().unwrap_or_else(BigInt::one);
        let d = res / lc;
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Exact division over `Q`, returning the quotient only when it has
    /// integer coefficients and the remainder vanishes.
    pub fn divides(&self, numerator: &IntPoly) -> Option<IntPoly> {
        let to_q = |p: &IntPoly| Poly::new(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        let q = to_q(numerator).div_exact_poly(&to_q(self))?;
        let coeffs: Option<Vec<BigInt>> =
            q.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
        Some(Poly::new(coeffs?))
    }
}

/// `prod_{i,j} (1 - alpha_i beta_j T)` where `f = prod (1 - alpha_i T)` and
/// `g = prod (1 - beta_j T)`, both with constant term 1.
///
/// Computed as `Res_y(F(y), y^m G(x/y))` with `F, G` the reversed polynomials,
/// which has roots exactly the products `alpha_i beta_j`.
pub fn composed_product(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.coeff(0).is_one() || !g.coeff(0).is_one() {
        return Err(Error::InvalidArgument("composed product needs constant term 1".into()));
    }
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    if n == 0 || m == 0 {
        // One factor is the constant 1, which has no reciprocal roots.
        return Ok(IntPoly::one());
    }
    // F(y) with constant Z[x] coefficients.
    let big_f: Poly<IntPoly> = Poly::new(f.reversed().coeffs.into_iter().map(IntPoly::constant).collect());
    // Coefficient of y^j in y^m G(x/y) is g_j x^(m - j).
    let q: Poly<IntPoly> = Poly::new((0..=m).map(|j| IntPoly::monomial(g.coeff(j), m - j)).collect());
    let h = big_f.resultant(&q);
    let mut out = h.reversed();
    let c0 = out.coeff(0);
    if c0.is_negative() {
        out = out.scale(&-BigInt::one());
    }
    if !out.coeff(0).is_one() {
        return Err(Error::Internal(format!("composed product has constant term {c0}")));
    }
    Ok(out)
}

impl<R: Ring> Ring for Poly<R> {
    fn div_exact(&self, b: &Self) -> Option<Self> {
        self.div_exact_poly(b)
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    /// Human-readable form in the variable `T`, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "T")?,
                1 => write!(f, "{body}T")?,
                _ if unit => write!(f, "T^{k}")?,
                _ => write!(f, "{body}T^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        // (x-1)(x-2) and (x-3)(x-5): prod (a_i - b_j) = (-2)(-4)(-1)(-3) = 24
        let a = p(&[2, -3, 1]);
        let b = p(&[15, -8, 1]);
        assert_eq!(a.resultant(&b), BigInt::from(24));
        assert_eq!(b.resultant(&a), BigInt::from(24));
        let c = p(&[-1, 1]);
        let d = p(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        assert_eq!(c.resultant(&d), BigInt::zero());
        // odd degrees: Res(b, a) = (-1)^(deg a deg b) Res(a, b)
        let e = p(&[-4, 1]);
        assert_eq!(e.resultant(&d), d.eval(&BigInt::from(4)));
        assert_eq!(d.resultant(&e), -d.eval(&BigInt::from(4)));
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(p(&[1, -1, 0, -4, 1]).discriminant(), BigInt::from(-7803));
        // cubic x^3 - 17: -27 * 17^2
        assert_eq!(p(&[-17, 0, 0, 1]).discriminant(), BigInt::from(-27 * 289));
    }

    #[test]
    fn composed_product_examples() {
        assert_eq!(composed_product(&p(&[1, -2]), &p(&[1, -3])).unwrap(), p(&[1, -6]));
        let f = p(&[1, 4, -2, 7]);
        assert_eq!(composed_product(&f, &p(&[1, -1])).unwrap(), f);
        assert!(composed_product(&IntPoly::zero(), &f).is_err());
    }

    #[test]
    fn composed_product_of_elliptic_factor_with_itself() {
        // Reciprocal roots alpha, beta with alpha + beta = a, alpha beta = p:
        // products alpha^2, beta^2, p, p. Hand expansion:
        // (1 - pT)^2 (1 - (a^2 - 2p) T + p^2 T^2).
        for (a, q) in [(1i64, 5i64), (-3, 7), (0, 11), (4, 13)] {
            let f = p(&[1, -a, q]);
            let got = composed_product(&f, &f).unwrap();
            let want = &p(&[1, -q]).pow(2) * &p(&[1, -(a * a - 2 * q), q * q]);
            assert_eq!(got, want, "a = {a}, p = {q}");
            assert_eq!(got.degree(), Some(4));
            assert_eq!(got.leading().unwrap(), &BigInt::from(q * q * q * q));
        }
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, -3, 7]);
        let g = p(&[1, 2, 0, 5]);
        let h = &f * &g;
        assert_eq!(f.divides(&h), Some(g.clone()));
        assert_eq!(p(&[2, 1]).divides(&p(&[1, 1])), None);
        assert_eq!(h.div_exact_poly(&f), Some(g));
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[1, -3, 7]).to_string(), "1 - 3T + 7T^2");
        assert_eq!(p(&[0, 1, 0, -1]).to_string(), "T - T^3");
    }
}
