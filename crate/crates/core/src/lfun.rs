//! Local factors at good primes: Rankin-Selberg expansion against the
//! eigenvalues of a character, closed forms for the genus-3 factor, the
//! quadratic restriction-of-scalars identity and point counts from traces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::cyclo::CycloInt;
use crate::arith::numtheory::{binomial, is_prime, kronecker, power_sum};
use crate::arith::poly::{composed_product, IntPoly, Poly};
use crate::chars::{ClassFunction, GroupTable};
use crate::curves::{ap, quadratic_twist, within_hasse, EllipticCurve};
use crate::error::{Error, Result};

/// `1 + c_1 T + ... + c_{2g} T^{2g}` attached to a variety and a good prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    label: String,
    p: u64,
    poly: IntPoly,
}

impl LocalFactor {
    /// Checks the constant term and that the degree is even.
    pub fn new(label: impl Into<String>, p: u64, poly: IntPoly) -> Result<Self> {
        let label = label.into();
        if poly.coeff(0) != BigInt::one() {
            return Err(Error::InvalidArgument(format!("{label} at {p}: constant term is not 1")));
        }
        let deg = poly.degree().unwrap_or(0);
        if deg % 2 != 0 {
            return Err(Error::InvalidArgument(format!("{label} at {p}: odd degree {deg}")));
        }
        Ok(LocalFactor { label, p, poly })
    }

    /// `1 - a T + p T^2`
    pub fn elliptic(label: impl Into<String>, p: u64, a: i64) -> Result<Self> {
        Self::new(label, p, elliptic_poly(a, p))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.poly.degree().unwrap_or(0) / 2
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.poly.coeff(i)
    }

    /// Integer coefficients `c_0, ..., c_{2g}`, when they fit.
    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        (0..=2 * self.genus()).map(|i| self.coeff(i).to_i64()).collect()
    }

    /// `c_{2g-i} = p^{g-i} c_i` for every `i`, the exact form of `abar_i = abar_{2g-i}`.
    pub fn is_symmetric(&self) -> bool {
        let g = self.genus();
        let p = BigInt::from(self.p);
        (0..=g).all(|i| self.coeff(2 * g - i) == p.pow((g - i) as u32) * self.coeff(i))
    }

    /// `abar_i = (-1)^i c_i / p^{i/2}`, so that `abar_1` is the normalized trace.
    pub fn normalized(&self) -> Vec<f64> {
        let sp = (self.p as f64).sqrt();
        (0..=2 * self.genus())
            .map(|i| {
                let c = self.coeff(i).to_f64().unwrap_or(f64::NAN);
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                // adding 0.0 turns -0.0 into 0.0
                sign * c / sp.powi(i as i32) + 0.0
            })
            .collect()
    }

    /// `|abar_i| <= binom(2g, i)`, with a little slack for rounding.
    pub fn within_weil_bounds(&self) -> bool {
        let g2 = 2 * self.genus() as u64;
        self.normalized().iter().enumerate().all(|(i, v)| {
            let b = binomial(g2, i as u64).to_f64().unwrap_or(f64::INFINITY);
            v.abs() <= b + 1e-9
        })
    }

    /// Quotient by another local factor at the same prime, if it divides.
    pub fn divide(&self, other: &LocalFactor) -> Option<LocalFactor> {
        if self.p != other.p {
            return None;
        }
        let q = other.poly.divides(&self.poly)?;
        LocalFactor::new(format!("{}/{}", self.label, other.label), self.p, q).ok()
    }

    pub fn product(&self, other: &LocalFactor) -> Result<LocalFactor> {
        if self.p != other.p {
            return Err(Error::InvalidArgument(format!("local factors at {} and {}", self.p, other.p)));
        }
        LocalFactor::new(format!("{}*{}", self.label, other.label), self.p, &self.poly * &other.poly)
    }

    /// `P_k = sum gamma_i^k` over the reciprocal roots, `k = 1..=n`.
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        newton_power_sums(&self.poly, n)
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Coefficient listing used by the JSON reports.
#[derive(Clone, Debug, Serialize)]
pub struct LocalFactorRecord {
    pub label: String,
    pub p: u64,
    pub genus: usize,
    pub coefficients: Vec<String>,
    pub normalized: Vec<f64>,
    pub display: String,
}

impl From<&LocalFactor> for LocalFactorRecord {
    fn from(l: &LocalFactor) -> Self {
        LocalFactorRecord {
            label: l.label.clone(),
            p: l.p,
            genus: l.genus(),
            coefficients: (0..=2 * l.genus()).map(|i| l.coeff(i).to_string()).collect(),
            normalized: l.normalized(),
            display: l.to_string(),
        }
    }
}

pub fn elliptic_poly(a: i64, p: u64) -> IntPoly {
    IntPoly::new(vec![BigInt::one(), BigInt::from(-a), BigInt::from(p)])
}

/// `prod_k f(zeta_r^{e_k} T)` expanded over `Z[zeta_r]`, with every
/// coefficient certified to be a rational integer.
pub fn rankin_selberg_poly(f: &IntPoly, exponents: &[u32], r: u32) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lifted: Poly<CycloInt> = Poly::new(f.coeffs().iter().cloned().map(CycloInt::from).collect());
    let mut acc: Poly<CycloInt> = Poly::one();
    for &k in exponents {
        acc = &acc * &lifted.substitute_scaled(&CycloInt::zeta_pow(r, k as i64));
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.as_integer().ok_or_else(|| {
                Error::Internal(format!("Rankin-Selberg coefficient of T^{i} is not rational: {c}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// `prod_k (1 - zeta_r^{e_k} T)`, an integer polynomial when the exponent
/// multiset is stable under the Galois action.
pub fn eigenvalue_charpoly(exponents: &[u32], r: u32) -> Result<IntPoly> {
    rankin_selberg_poly(&IntPoly::from_i64(&[1, -1]), exponents, r)
}

/// `L_p(E, rho, T)` for the representation affording `chi`, with
/// `Frob_p` in `class`.
pub fn rankin_selberg_elliptic(
    a: i64,
    p: u64,
    table: &GroupTable,
    chi: &ClassFunction,
    class: usize,
) -> Result<LocalFactor> {
    if !within_hasse(a, p) {
        return Err(Error::InvalidArgument(format!("a = {a} violates the Hasse bound at {p}")));
    }
    let exps = table.eigenvalue_multiset(chi, class)?;
    let r = table.classes()[class].order;
    let poly = rankin_selberg_poly(&elliptic_poly(a, p), &exps, r)?;
    LocalFactor::new(format!("RS({},{})", chi.label(), table.classes()[class].label), p, poly)
}

/// Same polynomial through the resultant-based composed product.
pub fn rankin_selberg_via_resultant(
    f: &IntPoly,
    table: &GroupTable,
    chi: &ClassFunction,
    class: usize,
) -> Result<IntPoly> {
    let exps = table.eigenvalue_multiset(chi, class)?;
    let g = eigenvalue_charpoly(&exps, table.classes()[class].order)?;
    composed_product(f, &g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalcfacCase {
    /// Residue degree 3 in the cubic subfield: Frobenius in class 3a.
    Cubic,
    /// Residue degree 4 in the quartic subfield: Frobenius in class 4a.
    Quartic,
}

impl CalcfacCase {
    pub fn from_class(label: &str) -> Result<Self> {
        match label {
            "3a" => Ok(CalcfacCase::Cubic),
            "4a" => Ok(CalcfacCase::Quartic),
            other => Err(Error::InvalidArgument(format!("no closed form for class {other}"))),
        }
    }
}

/// Degree-6 factor written out in `a` and `p`:
/// class 3a gives `(1 - aT + pT^2)(1 + aT + (a^2-p)T^2 + apT^3 + p^2T^4)`,
/// class 4a gives `(1 - aT + pT^2)(1 + (a^2-2p)T^2 + p^2T^4)`.
pub fn calcfac_closed_form(a: i64, p: u64, case: CalcfacCase) -> Result<LocalFactor> {
    let (a_b, p_b) = (BigInt::from(a), BigInt::from(p));
    let p2 = &p_b * &p_b;
    let quartic = match case {
        CalcfacCase::Cubic => IntPoly::new(vec![
            BigInt::one(),
            a_b.clone(),
            &a_b * &a_b - &p_b,
            &a_b * &p_b,
            p2,
        ]),
        CalcfacCase::Quartic => IntPoly::new(vec![
            BigInt::one(),
            BigInt::zero(),
            &a_b * &a_b - BigInt::from(2) * &p_b,
            BigInt::zero(),
            p2,
        ]),
    };
    let label = match case {
        CalcfacCase::Cubic => "calcfac(3a)",
        CalcfacCase::Quartic => "calcfac(4a)",
    };
    LocalFactor::new(label, p, &elliptic_poly(a, p) * &quartic)
}

/// The genus-3 factor `RS(E, chi4, class)`, through the closed form on
/// classes 3a and 4a.
pub fn genus3_factor(a: i64, p: u64, table: &GroupTable, chi4: &ClassFunction, class: usize) -> Result<LocalFactor> {
    match CalcfacCase::from_class(&table.classes()[class].label) {
        Ok(case) => calcfac_closed_form(a, p, case),
        Err(_) => rankin_selberg_elliptic(a, p, table, chi4, class),
    }
}

/// Both sides of the restriction-of-scalars identity for `Q(sqrt d)`: the
/// factor of `Res E/Q` built from `E` over the quadratic field, and
/// `L_p(E) L_p(E_d)` from point counts on the twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResScalars {
    pub split: bool,
    pub restriction: IntPoly,
    pub product: IntPoly,
}

impl ResScalars {
    pub fn holds(&self) -> bool {
        self.restriction == self.product
    }
}

pub fn res_scalars(e: &EllipticCurve, d: i64, p: u64) -> Result<ResScalars> {
    if d == 1 {
        return Err(Error::InvalidArgument("d = 1 does not define a quadratic field".into()));
    }
    if !is_prime(p) || p == 2 || (d.unsigned_abs() % p == 0) {
        return Err(Error::InvalidArgument(format!("{p} must be an odd prime not dividing {d}")));
    }
    let twist = quadratic_twist(e, d)?;
    let a = ap(e, p)?;
    let ad = ap(&twist, p)?;
    let product = &elliptic_poly(a, p) * &elliptic_poly(ad, p);
    let split = kronecker(d, p) == 1;
    let restriction = if split {
        elliptic_poly(a, p).pow(2)
    } else {
        // One prime of norm p^2 with L_P(E/L, T) = 1 - s_2 T + p^2 T^2, read at T^2.
        let s2 = power_sum(&BigInt::from(a), &BigInt::from(p), 2)?;
        let pb = BigInt::from(p);
        IntPoly::new(vec![BigInt::one(), BigInt::zero(), -s2, BigInt::zero(), &pb * &pb])
    };
    Ok(ResScalars { split, restriction, product })
}

pub fn res_scalars_check(e: &EllipticCurve, d: i64, p: u64) -> Result<bool> {
    Ok(res_scalars(e, d, p)?.holds())
}

/// Power sums of the reciprocal roots of `1 + c_1 T + ...` by Newton's
/// identities: `P_k = -k c_k - sum_{i<k} c_i P_{k-i}`.
pub fn newton_power_sums(f: &IntPoly, n: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut pk = -BigInt::from(k) * f.coeff(k);
        for i in 1..k {
            pk -= f.coeff(i) * &out[k - i - 1];
        }
        out.push(pk);
    }
    out
}

/// Point count over `F_{p^r}` of the genus-3 curve whose factor is
/// `RS(E, chi4, Frob_p)`, from the trace `t` of `chi4` at `Frob_p^r`:
/// `(1 + p^r)(1 - t) + t #E(F_{p^r})`. Cross-checked against Newton's
/// identities on the degree-6 factor.
pub fn c2_point_count(a: i64, p: u64, table: &GroupTable, chi4: &ClassFunction, class: usize, r: u32) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let cls = table.power(class, r as i64);
    let t = chi4
        .value(cls)
        .as_integer()
        .ok_or_else(|| Error::NotACharacter { detail: format!("{} is not rational", chi4.label()) })?;
    let (a_b, p_b) = (BigInt::from(a), BigInt::from(p));
    let pr = p_b.pow(r);
    let e_count = BigInt::one() + &pr - power_sum(&a_b, &p_b, r as i64)?;
    let n = (BigInt::one() + &pr) * (BigInt::one() - &t) + &t * &e_count;

    let factor = rankin_selberg_elliptic(a, p, table, chi4, class)?;
    let newton = BigInt::one() + &pr - factor.power_sums(r as usize).pop().expect("r >= 1");
    if newton != n {
        return Err(Error::Inconsistent(format!(
            "point count at p = {p}, r = {r}: trace formula gives {n}, Newton identities give {newton}"
        )));
    }
    Ok(n)
}

/// `abar_1, abar_2, abar_3` of the genus-3 factor in terms of the
/// normalized elliptic trace `abar` and `t = chi4(Frob_p)`.
pub fn genus3_normalized(abar: f64, t: f64) -> [f64; 3] {
    [abar * t, t * (abar * abar - 2.0 + t), abar * (abar * abar + t * t - 3.0)]
}

/// True when `L` is divisible by `1 - aT + pT^2`.
pub fn divisible_by_elliptic(l: &LocalFactor, a: i64) -> bool {
    elliptic_poly(a, l.prime()).divides(l.poly()).is_some()
}

/// For the three twists `E_{d1}`, `E_{d2}`, `E_{d1 d2}`: whether `L_p(E)`
/// divides the product of their local factors.
pub fn triple_twist_divides(e: &EllipticCurve, d1: i64, d2: i64, p: u64) -> Result<bool> {
    let d3 = crate::arith::numtheory::squarefree_kernel(&BigInt::from(d1 * d2))
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument("twist product overflows".into()))?;
    let mut prod = IntPoly::one();
    for d in [d1, d2, d3] {
        let t = quadratic_twist(e, d)?;
        prod = &prod * &elliptic_poly(ap(&t, p)?, p);
    }
    Ok(elliptic_poly(ap(e, p)?, p).divides(&prod).is_some())
}
