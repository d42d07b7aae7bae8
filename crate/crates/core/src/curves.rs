//! Elliptic curves over `Q`, plane quartics, and naive point counting over
//! finite fields.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::fq::{quadratic_character_table, FiniteField};
use crate::arith::numtheory::{is_prime, is_squarefree, kronecker, power_sum, prime_divisors, reduce};
use crate::error::{Error, Result};
use crate::lfun::LocalFactor;

/// Largest field size the enumeration mode of [`count_points_ext`] accepts.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    label: String,
    a: [BigInt; 5],
    conductor: Option<u64>,
}

impl EllipticCurve {
    /// Validates a nonzero discriminant and, when a conductor is given, that
    /// every prime dividing it divides the discriminant.
    pub fn new(label: impl Into<String>, a: [BigInt; 5], conductor: Option<u64>) -> Result<Self> {
        let e = EllipticCurve { label: label.into(), a, conductor };
        let disc = e.discriminant();
        if disc.is_zero() {
            return Err(Error::InvalidArgument(format!("{}: singular model (discriminant 0)", e.label)));
        }
        if let Some(n) = conductor {
            if n == 0 {
                return Err(Error::InvalidArgument(format!("{}: conductor must be positive", e.label)));
            }
            for q in prime_divisors(&BigInt::from(n)) {
                if !(&disc % BigInt::from(q)).is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "{}: conductor prime {q} does not divide the discriminant {disc}",
                        e.label
                    )));
                }
            }
        }
        Ok(e)
    }

    pub fn from_i64(label: impl Into<String>, a: [i64; 5], conductor: Option<u64>) -> Result<Self> {
        Self::new(label, a.map(BigInt::from), conductor)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coefficients(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn conductor(&self) -> Option<u64> {
        self.conductor
    }

    /// `(b2, b4, b6, b8)`
    pub fn b_invariants(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn c_invariants(&self) -> (BigInt, BigInt) {
        let (b2, b4, b6, _) = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = self.b_invariants();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// `(A, B)` of the model `y^2 = x^3 + A x + B`, isomorphic over `Z[1/6]`.
    pub fn short_coefficients(&self) -> (BigInt, BigInt) {
        let [a1, a2, a3, _, _] = &self.a;
        if a1.is_zero() && a2.is_zero() && a3.is_zero() {
            return (self.a[3].clone(), self.a[4].clone());
        }
        let (c4, c6) = self.c_invariants();
        (-27 * c4, -54 * c6)
    }

    /// The same curve written as `y^2 = x^3 + A x + B`.
    pub fn to_short_form(&self) -> EllipticCurve {
        let (a4, a6) = self.short_coefficients();
        let zero = BigInt::zero();
        EllipticCurve {
            label: self.label.clone(),
            a: [zero.clone(), zero.clone(), zero, a4, a6],
            conductor: self.conductor,
        }
    }

    /// Ok when `p > 3` is a prime of good reduction for this model.
    pub fn check_good(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p <= 3 {
            return Err(Error::UnsupportedPrime { p, reason: "short Weierstrass form needs p > 3" });
        }
        let bad_conductor = self.conductor.is_some_and(|n| n % p == 0);
        if bad_conductor || reduce(&self.discriminant(), p) == 0 {
            return Err(Error::BadReduction { label: self.label.clone(), p });
        }
        Ok(())
    }

    pub fn is_good(&self, p: u64) -> bool {
        self.check_good(p).is_ok()
    }
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)` by a single pass over `F_p`
/// with a quadratic-character table.
pub fn ap(e: &EllipticCurve, p: u64) -> Result<i64> {
    e.check_good(p)?;
    let (a, b) = e.short_coefficients();
    let (a, b) = (reduce(&a, p), reduce(&b, p));
    let chi = quadratic_character_table(p);
    let mut sum: i64 = 0;
    for x in 0..p {
        let v = ((x * x % p + a) % p * x % p + b) % p;
        sum += chi[v as usize] as i64;
    }
    Ok(-sum)
}

/// `a_p` for every listed prime, in order, computed in parallel. Primes of
/// bad reduction are skipped.
pub fn ap_scan(e: &EllipticCurve, primes: &[u64]) -> Vec<(u64, i64)> {
    primes.par_iter().filter_map(|&p| ap(e, p).ok().map(|a| (p, a))).collect()
}

/// Memo table `(label, p) -> a_p` shared between workers.
#[derive(Debug, Default)]
pub struct ApCache {
    table: RwLock<HashMap<(String, u64), i64>>,
}

impl ApCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, e: &EllipticCurve, p: u64) -> Result<i64> {
        let key = (e.label.clone(), p);
        if let Some(&v) = self.table.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = ap(e, p)?;
        self.table.write().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// `1 + p^r - (alpha^r + conj(alpha)^r)` from `a_p`.
    Formula,
    /// Direct enumeration of projective points over `F_{p^r}`.
    Enumerate,
}

/// `#E(F_{p^r})`.
pub fn count_points_ext(e: &EllipticCurve, p: u64, r: u32, mode: CountMode) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    e.check_good(p)?;
    match mode {
        CountMode::Formula => {
            let a = BigInt::from(ap(e, p)?);
            let pb = BigInt::from(p);
            Ok(BigInt::from(1) + pb.pow(r) - power_sum(&a, &pb, r as i64)?)
        }
        CountMode::Enumerate => {
            let size = (p as u128).pow(r);
            if size > ENUMERATION_LIMIT as u128 {
                return Err(Error::EnumerationTooLarge { size: size.min(u64::MAX as u128) as u64, limit: ENUMERATION_LIMIT });
            }
            Ok(BigInt::from(enumerate_points(e, &FiniteField::new(p, r as usize)?)))
        }
    }
}

/// Projective points of the long Weierstrass model over an odd-characteristic
/// field, counting solutions of `(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.
fn enumerate_points(e: &EllipticCurve, k: &FiniteField) -> u64 {
    let p = k.characteristic();
    let q = k.order();
    let mut is_square = vec![false; q as usize];
    for i in 0..q {
        let y = k.element(i);
        is_square[k.index(&k.mul(&y, &y)) as usize] = true;
    }
    let (b2, b4, b6, _) = e.b_invariants();
    let lift = |v: &BigInt| k.from_u64(reduce(v, p));
    let (c3, c2, c1, c0) = (k.from_u64(4), lift(&b2), lift(&(2 * &b4)), lift(&b6));
    let mut count = 1u64; // point at infinity
    for i in 0..q {
        let x = k.element(i);
        let mut v = k.mul(&c3, &x);
        v = k.add(&v, &c2);
        v = k.mul(&v, &x);
        v = k.add(&v, &c1);
        v = k.mul(&v, &x);
        v = k.add(&v, &c0);
        let idx = k.index(&v);
        count += if idx == 0 {
            1
        } else if is_square[idx as usize] {
            2
        } else {
            0
        };
    }
    count
}

/// The quadratic twist `y^2 = x^3 + A d^2 x + B d^3` of the short model.
pub fn quadratic_twist(e: &EllipticCurve, d: i64) -> Result<EllipticCurve> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!("twist parameter {d} must be squarefree and nonzero")));
    }
    let (a, b) = e.short_coefficients();
    let db = BigInt::from(d);
    let zero = BigInt::zero();
    EllipticCurve::new(
        format!("{}^({d})", e.label),
        [zero.clone(), zero.clone(), zero, a * &db * &db, b * &db * &db * &db],
        None,
    )
    .map(|mut t| {
        if d == 1 {
            t.conductor = e.conductor;
        }
        t
    })
}

/// `1 - a_p T + p T^2`
pub fn local_factor(e: &EllipticCurve, p: u64) -> Result<LocalFactor> {
    let a = ap(e, p)?;
    LocalFactor::elliptic(e.label(), p, a)
}

/// Homogeneous quartic form with integer coefficients, denominators cleared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneQuartic {
    label: String,
    /// `((i, j, k), c)` for the monomial `c X^i Y^j Z^k`.
    terms: Vec<([u32; 3], BigInt)>,
    bad_primes: Vec<u64>,
}

impl PlaneQuartic {
    pub fn new(label: impl Into<String>, terms: Vec<([u32; 3], BigInt)>, mut bad_primes: Vec<u64>) -> Result<Self> {
        let label = label.into();
        if terms.is_empty() {
            return Err(Error::InvalidArgument(format!("{label}: empty quartic form")));
        }
        for (e, _) in &terms {
            if e.iter().sum::<u32>() != 4 {
                return Err(Error::InvalidArgument(format!("{label}: monomial {e:?} is not of degree 4")));
            }
        }
        bad_primes.sort_unstable();
        bad_primes.dedup();
        Ok(PlaneQuartic { label, terms, bad_primes })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn terms(&self) -> &[([u32; 3], BigInt)] {
        &self.terms
    }

    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    /// Primes dividing some but not all nonzero coefficients. Reduction at
    /// such a prime drops monomials, so they belong in the bad set.
    pub fn degenerate_primes(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (_, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            for q in prime_divisors(c) {
                let bq = BigInt::from(q);
                let divides_all = self.terms.iter().all(|(_, c)| (c % &bq).is_zero());
                if !divides_all && !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn eval_mod(&self, coeffs: &[u64], powers: &[[u64; 5]; 3], p: u64) -> u64 {
        let mut acc = 0u64;
        for ((e, _), &c) in self.terms.iter().zip(coeffs) {
            let m = powers[0][e[0] as usize] * powers[1][e[1] as usize] % p * powers[2][e[2] as usize] % p;
            acc = (acc + c * m) % p;
        }
        acc
    }
}

/// Projective `F_p`-points of a plane quartic: the affine chart `Z = 1`, then
/// `Z = 0, Y = 1`, then `(1:0:0)`.
pub fn count_quartic(q: &PlaneQuartic, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if q.bad_primes.contains(&p) {
        return Err(Error::BadReduction { label: q.label.clone(), p });
    }
    let coeffs: Vec<u64> = q.terms.iter().map(|(_, c)| reduce(c, p)).collect();
    let pow4 = |v: u64| -> [u64; 5] {
        let mut out = [1u64; 5];
        for k in 1..5 {
            out[k] = out[k - 1] * v % p;
        }
        out
    };
    let table: Vec<[u64; 5]> = (0..p).map(pow4).collect();
    let one = pow4(1);
    let zero = pow4(0);
    let mut count = 0u64;
    for x in 0..p {
        for y in 0..p {
            if q.eval_mod(&coeffs, &[table[x as usize], table[y as usize], one], p) == 0 {
                count += 1;
            }
        }
    }
    for x in 0..p {
        if q.eval_mod(&coeffs, &[table[x as usize], one, zero], p) == 0 {
            count += 1;
        }
    }
    if q.eval_mod(&coeffs, &[one, zero, zero], p) == 0 {
        count += 1;
    }
    Ok(count)
}

/// `(d|p) a_E(p)`, the trace the twist by `d` must have.
pub fn twisted_trace(a: i64, d: i64, p: u64) -> i64 {
    kronecker(d, p) as i64 * a
}

/// Hasse bound `|a_p| <= 2 sqrt(p)`, checked exactly as `a^2 <= 4p`.
pub fn within_hasse(a: i64, p: u64) -> bool {
    (a as i128) * (a as i128) <= 4 * p as i128
}

/// Naive `a_p` straight from the long model by enumerating all `(x, y)`.
/// Quadratic in `p`; only for cross-checks.
pub fn ap_by_full_enumeration(e: &EllipticCurve, p: u64) -> i64 {
    let c: Vec<i64> = e.coefficients().iter().map(|v| reduce(v, p) as i64).collect();
    let (a1, a2, a3, a4, a6) = (c[0], c[1], c[2], c[3], c[4]);
    let p_i = p as i64;
    let mut count = 1i64;
    for x in 0..p_i {
        for y in 0..p_i {
            let lhs = (y * y + a1 * x * y + a3 * y).rem_euclid(p_i);
            let rhs = (x * x % p_i * x + a2 * x * x + a4 * x + a6).rem_euclid(p_i);
            if lhs == rhs {
                count += 1;
            }
        }
    }
    p_i + 1 - count
}

impl std::fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.a.iter().map(|v| v.to_string()).collect();
        write!(f, "{} [{}]", self.label, a.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e21() -> EllipticCurve {
        EllipticCurve::from_i64("21.A1", [1, 0, 0, -4, -1], Some(21)).unwrap()
    }

    #[test]
    fn invariants_of_a_known_model() {
        let e = e21();
        assert_eq!(e.discriminant(), BigInt::from(3969));
        let (c4, c6) = e.c_invariants();
        // 1728 Delta = c4^3 - c6^2
        assert_eq!(BigInt::from(1728) * e.discriminant(), &c4 * &c4 * &c4 - &c6 * &c6);
    }

    #[test]
    fn conductor_support_is_checked() {
        assert!(EllipticCurve::from_i64("bad", [1, 0, 0, -4, -1], Some(22)).is_err());
        assert!(EllipticCurve::from_i64("singular", [0, 0, 0, 0, 0], None).is_err());
    }

    #[test]
    fn ap_matches_full_enumeration() {
        let e = e21();
        for p in [5u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let a = ap(&e, p).unwrap();
            assert_eq!(a, ap_by_full_enumeration(&e, p), "p = {p}");
            assert!(within_hasse(a, p));
        }
    }

    #[test]
    fn y2_equals_x3_plus_x() {
        // Over F_5: x^3 + x takes values 0,2,0,0,3 at x = 0..4, so the affine
        // points are (0,0), (2,0), (3,0) and the count is 4, a_5 = 2.
        let e = EllipticCurve::from_i64("y2=x3+x", [0, 0, 0, 1, 0], None).unwrap();
        assert_eq!(ap(&e, 5).unwrap(), 2);
        assert_eq!(ap_by_full_enumeration(&e, 5), 2);
        // p = 3 is outside the supported range for the short-form counter.
        assert!(matches!(ap(&e, 3), Err(Error::UnsupportedPrime { .. })));
        assert_eq!(ap_by_full_enumeration(&e, 3), 0);
    }

    #[test]
    fn bad_primes_are_refused() {
        let e = e21();
        assert!(matches!(ap(&e, 7), Err(Error::BadReduction { p: 7, .. })));
        assert!(matches!(local_factor(&e, 7), Err(Error::BadReduction { .. })));
    }

    #[test]
    fn count_modes_agree() {
        let e = e21();
        for p in [5u64, 11, 13] {
            for r in 1..=3 {
                if p.pow(r) > ENUMERATION_LIMIT {
                    continue;
                }
                let f = count_points_ext(&e, p, r, CountMode::Formula).unwrap();
                let n = count_points_ext(&e, p, r, CountMode::Enumerate).unwrap();
                assert_eq!(f, n, "p = {p}, r = {r}");
            }
        }
        assert!(matches!(
            count_points_ext(&e, 101, 3, CountMode::Enumerate),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn twist_signs_follow_the_kronecker_symbol() {
        let e = e21();
        for d in [1i64, -1, 5, -7] {
            let t = quadratic_twist(&e, d).unwrap();
            for p in crate::arith::numtheory::primes_up_to(50) {
                if !e.is_good(p) || !t.is_good(p) {
                    continue;
                }
                let want = twisted_trace(ap(&e, p).unwrap(), d, p);
                assert_eq!(ap(&t, p).unwrap(), want, "d = {d}, p = {p}");
                assert_eq!(ap_by_full_enumeration(&t, p), want);
            }
        }
        assert!(quadratic_twist(&e, 0).is_err());
        assert!(quadratic_twist(&e, 12).is_err());
    }

    #[test]
    fn cache_returns_computed_values() {
        let e = e21();
        let cache = ApCache::new();
        assert_eq!(cache.get(&e, 101).unwrap(), ap(&e, 101).unwrap());
        assert_eq!(cache.get(&e, 101).unwrap(), ap(&e, 101).unwrap());
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn quartic_counts_respect_weil_bounds() {
        let c1 = PlaneQuartic::new(
            "C1",
            vec![
                ([4, 0, 0], 7.into()),
                ([0, 4, 0], 7.into()),
                ([0, 0, 4], 7.into()),
                ([2, 0, 2], 2.into()),
                ([0, 2, 2], 2.into()),
                ([2, 2, 0], 2.into()),
            ],
            vec![2, 3, 7],
        )
        .unwrap();
        assert_eq!(c1.degenerate_primes(), vec![2, 7]);
        assert!(matches!(count_quartic(&c1, 7), Err(Error::BadReduction { .. })));
        for p in [5u64, 11, 13, 17, 19, 23] {
            let n = count_quartic(&c1, p).unwrap() as f64;
            let pf = p as f64;
            assert!((n - 1.0 - pf).abs() <= 6.0 * pf.sqrt(), "p = {p}, n = {n}");
        }
    }
}
