//! Frobenius classes in the Galois group of an S4 quartic, read off from
//! factorization patterns mod p, and a deterministic search for such quartics.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::modp::{distinct_degree_pattern, FpPoly};
use crate::arith::numtheory::{is_perfect_square, kronecker, prime_divisors, primes_up_to, reduce, squarefree_kernel};
use crate::arith::poly::IntPoly;
use crate::chars::GroupTable;
use crate::error::{Error, Result};

/// Labels of the conjugacy classes of S4, in table order.
pub const S4_CLASSES: [&str; 5] = ["1a", "2a", "2b", "3a", "4a"];

/// Primes below this bound serve as irreducibility witnesses.
const WITNESS_BOUND: u64 = 100;

/// Number of primes in a splitting fingerprint.
pub const FINGERPRINT_PRIMES: usize = 100;

/// Class of S4 with the given cycle type of a permutation on four letters.
pub fn class_of_pattern(pattern: &[usize]) -> Option<&'static str> {
    match pattern {
        [1, 1, 1, 1] => Some("1a"),
        [2, 2] => Some("2a"),
        [1, 1, 2] => Some("2b"),
        [1, 3] => Some("3a"),
        [4] => Some("4a"),
        _ => None,
    }
}

/// Degree pattern of the resolvent cubic on each class.
fn resolvent_pattern(class: &str) -> &'static [usize] {
    match class {
        "1a" | "2a" => &[1, 1, 1],
        "2b" | "4a" => &[1, 2],
        _ => &[3],
    }
}

fn is_even(class: &str) -> bool {
    matches!(class, "1a" | "2a" | "3a")
}

/// `x^4 + a x^3 + b x^2 + c x + d` with S4 Galois group and discriminant in
/// `-3 Q^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S4Field {
    coeffs: [i64; 4],
    quartic: IntPoly,
    resolvent: IntPoly,
    disc: BigInt,
    bad_primes: Vec<u64>,
}

impl S4Field {
    /// Validates the S4 and discriminant conditions. Irreducibility is
    /// certified by a prime below 100 where the quartic stays irreducible.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let f = Self::unchecked(a, b, c, d);
        f.certify()?;
        Ok(f)
    }

    fn unchecked(a: i64, b: i64, c: i64, d: i64) -> Self {
        let quartic = IntPoly::from_i64(&[d, c, b, a, 1]);
        let resolvent = resolvent_cubic(a, b, c, d);
        let disc = quartic.discriminant();
        let bad_primes = if disc.is_zero() { Vec::new() } else { prime_divisors(&disc) };
        S4Field { coeffs: [a, b, c, d], quartic, resolvent, disc, bad_primes }
    }

    fn certify(&self) -> Result<()> {
        let reject = |why: &str| Err(Error::InvalidArgument(format!("{self}: {why}")));
        if self.disc.is_zero() {
            return reject("discriminant is zero");
        }
        if squarefree_kernel(&self.disc) != BigInt::from(-3) {
            return reject("discriminant is not -3 times a square");
        }
        if is_perfect_square(&self.disc) {
            return reject("discriminant is a square");
        }
        if self.irreducibility_witness().is_none() {
            return reject("no prime below 100 certifies irreducibility");
        }
        if has_integer_root(&self.resolvent) {
            return reject("resolvent cubic has a rational root");
        }
        Ok(())
    }

    /// Smallest good prime where the quartic is irreducible.
    pub fn irreducibility_witness(&self) -> Option<u64> {
        primes_up_to(WITNESS_BOUND).into_iter().find(|&p| self.is_good(p) && self.quartic_pattern(p) == [4])
    }

    pub fn coefficients(&self) -> [i64; 4] {
        self.coeffs
    }

    pub fn quartic(&self) -> &IntPoly {
        &self.quartic
    }

    pub fn resolvent(&self) -> &IntPoly {
        &self.resolvent
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Primes dividing the discriminant.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_good(&self, p: u64) -> bool {
        reduce(&self.disc, p) != 0
    }

    fn quartic_pattern(&self, p: u64) -> Vec<usize> {
        distinct_degree_pattern(&FpPoly::from_int_poly(&self.quartic, p))
    }

    fn resolvent_pattern(&self, p: u64) -> Vec<usize> {
        distinct_degree_pattern(&FpPoly::from_int_poly(&self.resolvent, p))
    }

    /// Resolvent patterns at the first [`FINGERPRINT_PRIMES`] good primes.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut entries = Vec::with_capacity(FINGERPRINT_PRIMES);
        let mut bound = 1000;
        while entries.len() < FINGERPRINT_PRIMES {
            entries.clear();
            for p in primes_up_to(bound) {
                if entries.len() == FINGERPRINT_PRIMES {
                    break;
                }
                if self.is_good(p) {
                    entries.push((p, self.resolvent_pattern(p)));
                }
            }
            bound *= 2;
        }
        Fingerprint { entries }
    }
}

impl fmt::Display for S4Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^4")?;
        for (c, mono) in self.coeffs.iter().zip(["x^3", "x^2", "x", ""]) {
            let sign = if *c < 0 { '-' } else { '+' };
            match (c.unsigned_abs(), mono) {
                (0, _) => {}
                (1, m) if !m.is_empty() => write!(f, " {sign} {m}")?,
                (v, m) => write!(f, " {sign} {v}{m}")?,
            }
        }
        Ok(())
    }
}

/// `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)`, whose roots are
/// `x1 x2 + x3 x4` and its conjugates.
pub fn resolvent_cubic(a: i64, b: i64, c: i64, d: i64) -> IntPoly {
    let (a, b, c, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
    IntPoly::new(vec![
        -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c),
        &a * &c - BigInt::from(4) * &d,
        -b,
        BigInt::from(1),
    ])
}

/// Integer roots of a monic polynomial lie within the Cauchy bound.
fn has_integer_root(f: &IntPoly) -> bool {
    let n = f.degree().unwrap_or(0);
    if f.coeff(0).is_zero() {
        return true;
    }
    let bound = (0..n).map(|i| f.coeff(i).abs()).max().unwrap_or_default() + 1;
    let c0 = f.coeff(0).abs();
    let mut y = BigInt::from(1);
    while y <= bound && y <= c0 {
        if (&c0 % &y).is_zero() && (f.eval(&y).is_zero() || f.eval(&-&y).is_zero()) {
            return true;
        }
        y += 1;
    }
    false
}

/// Splitting behaviour of the resolvent cubic at a fixed list of primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub entries: Vec<(u64, Vec<usize>)>,
}

impl Fingerprint {
    /// Same pattern at every prime both fingerprints cover. Distinct cubic
    /// fields disagree at a positive density of primes, so agreement at 100
    /// primes is taken as equality of the cubic fields.
    pub fn agrees_with(&self, other: &Fingerprint) -> bool {
        let mut shared = 0;
        for (p, pat) in &self.entries {
            if let Some((_, q)) = other.entries.iter().find(|(r, _)| r == p) {
                shared += 1;
                if pat != q {
                    return false;
                }
            }
        }
        shared > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusDatum {
    pub p: u64,
    pub class: &'static str,
    pub quartic_pattern: Vec<usize>,
    /// Largest residue degree in the quartic subfield.
    pub f_l4: usize,
    /// Largest residue degree in the cubic subfield.
    pub f_l3: usize,
    /// Residue degree in `Q(sqrt -3)`.
    pub f_quadratic: usize,
}

/// Class of `Frob_p`, with the resolvent pattern and `(-3|p)` cross-checked
/// against it.
pub fn frobenius_class(field: &S4Field, p: u64) -> Result<FrobeniusDatum> {
    if !crate::arith::numtheory::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !field.is_good(p) {
        return Err(Error::RamifiedPrime { p, disc: field.disc.to_string() });
    }
    let pattern = field.quartic_pattern(p);
    let corrupt = |what: String| Error::DataCorruption(format!("{field} at p = {p}: {what}"));
    let class = class_of_pattern(&pattern).ok_or_else(|| corrupt(format!("pattern {pattern:?}")))?;
    let rpat = field.resolvent_pattern(p);
    if rpat != resolvent_pattern(class) {
        return Err(corrupt(format!("class {class} with resolvent pattern {rpat:?}")));
    }
    let f_quadratic = if kronecker(-3, p) == 1 { 1 } else { 2 };
    if (f_quadratic == 1) != is_even(class) {
        return Err(corrupt(format!("class {class} with (-3|p) = {}", kronecker(-3, p))));
    }
    Ok(FrobeniusDatum {
        p,
        class,
        f_l4: *pattern.iter().max().expect("nonempty"),
        f_l3: *rpat.iter().max().expect("nonempty"),
        f_quadratic,
        quartic_pattern: pattern,
    })
}

/// Index of the class in [`S4_CLASSES`].
pub fn class_index(label: &str) -> Option<usize> {
    S4_CLASSES.iter().position(|&c| c == label)
}

/// Monic quartics of height at most `h`, ordered by
/// `(|a|+|b|+|c|+|d|, a, b, c, d)`.
pub fn candidates(h: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                for d in -h..=h {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), *v));
    out
}

/// First quartic in the search order passing every S4 check whose
/// resolvent fingerprint differs from all the excluded ones.
pub fn find_s4_quartic(h: i64, exclude: &[Fingerprint]) -> Result<S4Field> {
    if h < 2 {
        return Err(Error::InvalidArgument(format!("height bound {h} must be at least 2")));
    }
    for [a, b, c, d] in candidates(h) {
        if d == 0 {
            continue;
        }
        let f = S4Field::unchecked(a, b, c, d);
        if f.certify().is_err() {
            continue;
        }
        if exclude.is_empty() {
            return Ok(f);
        }
        let fp = f.fingerprint();
        if exclude.iter().all(|e| !fp.agrees_with(e)) {
            return Ok(f);
        }
    }
    Err(Error::NotFound { bound: h })
}

/// The first quartic and the next one with a different cubic resolvent field.
pub fn find_quartic_pair(h: i64) -> Result<(S4Field, S4Field)> {
    let f = find_s4_quartic(h, &[])?;
    let g = find_s4_quartic(h, &[f.fingerprint()])?;
    Ok((f, g))
}

/// Classes of the fiber-product table projecting to the two Frobenius classes.
pub fn joint_class(
    table: &GroupTable,
    f: &S4Field,
    g: &S4Field,
    p: u64,
    projections: (&str, &str),
) -> Result<Vec<String>> {
    let cf = frobenius_class(f, p)?.class;
    let cg = frobenius_class(g, p)?.class;
    joint_class_of(table, cf, cg, projections)
}

pub fn joint_class_of(table: &GroupTable, cf: &str, cg: &str, projections: (&str, &str)) -> Result<Vec<String>> {
    let left = table.preimage(projections.0, cf)?;
    let right = table.preimage(projections.1, cg)?;
    let both: Vec<String> = left.into_iter().filter(|c| right.contains(c)).collect();
    if both.is_empty() {
        return Err(Error::Inconsistent(format!("no class of {} lies over ({cf}, {cg})", table.id())));
    }
    Ok(both)
}

/// Class counts over the good primes up to `bound`, in [`S4_CLASSES`] order.
pub fn class_frequencies(field: &S4Field, bound: u64) -> Result<[u64; 5]> {
    let mut counts = [0u64; 5];
    for p in primes_up_to(bound) {
        if !field.is_good(p) {
            continue;
        }
        let d = frobenius_class(field, p)?;
        counts[class_index(d.class).expect("S4 label")] += 1;
    }
    Ok(counts)
}

/// Largest gap, in percentage points, between observed class frequencies
/// and the class sizes over 24.
pub fn chebotarev_deviation(counts: &[u64; 5]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = [1.0, 3.0, 6.0, 8.0, 6.0];
    counts
        .iter()
        .zip(expected)
        .map(|(&c, e)| (100.0 * (c as f64 / total as f64 - e / 24.0)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modp::degree_pattern;
    use crate::chars::TableSet;

    #[test]
    fn resolvent_of_a_known_quartic() {
        // x^4 - x - 1 has resolvent y^3 + 4y - 1 and discriminant -283.
        let r = resolvent_cubic(0, 0, -1, -1);
        assert_eq!(r, IntPoly::from_i64(&[-1, 4, 0, 1]));
        assert_eq!(IntPoly::from_i64(&[-1, -1, 0, 0, 1]).discriminant(), r.discriminant());
    }

    #[test]
    fn search_finds_the_expected_pair() {
        let (f, g) = find_quartic_pair(4).unwrap();
        assert_eq!(f.coefficients(), [-4, 0, -1, 1]);
        assert_eq!(g.coefficients(), [-4, 0, 1, -1]);
        assert_eq!(squarefree_kernel(f.discriminant()), BigInt::from(-3));
        assert!(!f.fingerprint().agrees_with(&g.fingerprint()));
    }

    #[test]
    fn classes_agree_with_brute_patterns() {
        let f = S4Field::new(-4, 0, -1, 1).unwrap();
        for p in primes_up_to(300) {
            match frobenius_class(&f, p) {
                Ok(d) => {
                    assert_eq!(degree_pattern(f.quartic(), p).unwrap(), d.quartic_pattern);
                    assert_eq!(d.f_quadratic == 1, kronecker(-3, p) == 1);
                    if d.class == "4a" {
                        assert_eq!(d.f_l4, 4);
                    }
                    if d.class == "3a" {
                        assert_eq!(d.f_l3, 3);
                    }
                }
                Err(Error::RamifiedPrime { .. }) => assert!(f.bad_primes().contains(&p)),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn rejects_non_s4_quartics() {
        assert!(S4Field::new(0, 0, 0, 1).is_err()); // x^4 + 1
        assert!(S4Field::new(0, 0, -1, -1).is_err()); // disc -283
        assert!(find_s4_quartic(1, &[]).is_err());
    }

    #[test]
    fn joint_classes_from_projection_tables() {
        let set = TableSet::builtin();
        let t = set.get("T288").unwrap();
        let pr = ("pi_L", "pi_Lprime");
        assert_eq!(joint_class_of(t, "1a", "1a", pr).unwrap(), vec!["1A"]);
        assert_eq!(joint_class_of(t, "3a", "3a", pr).unwrap(), vec!["3C", "3D"]);
        assert_eq!(joint_class_of(t, "2b", "2b", pr).unwrap(), vec!["2D"]);
        assert!(joint_class_of(t, "2b", "1a", pr).is_err());
    }
}
