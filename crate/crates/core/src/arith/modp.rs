//! Polynomials over a prime field `F_p` (word-sized `p`) and distinct-degree
//! factorization.

use num_bigint::BigInt;

use super::numtheory::{mul_mod, pow_mod, reduce};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|a| reduce(a, p)).collect())
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect())
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|k| {
                    let a = self.c.get(k).copied().unwrap_or(0);
                    let b = other.c.get(k).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = self.inv(d.c[dd]);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = mul_mod(r[k], inv, p);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for j in 0..=dd {
                let t = mul_mod(c, d.c[j], p);
                r[k - dd + j] = (r[k - dd + j] + p - t) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().enumerate().skip(1).map(|(k, &a)| mul_mod(a, k as u64 % p, p)).collect())
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut acc = Self::new(self.p, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Degrees of the irreducible factors of a squarefree polynomial over `F_p`,
/// sorted ascending. Uses `gcd(x^(p^i) - x, f)` for `i = 1, 2, ...`.
pub fn distinct_degree_pattern(f: &FpPoly) -> Vec<usize> {
    let p = f.p;
    let mut f = f.monic();
    let mut out = Vec::new();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut i = 0usize;
    while let Some(d) = f.degree() {
        if d == 0 {
            break;
        }
        i += 1;
        if d < 2 * i {
            out.push(d);
            break;
        }
        h = h.pow_mod(p, &f);
        let g = h.sub(&x).gcd(&f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.extend(std::iter::repeat(i).take(gd / i));
            f = f.div_rem(&g).0;
            h = h.rem(&f);
        }
    }
    out.sort_unstable();
    out
}

/// Degree pattern of `f mod p` for an integer polynomial. The prime must not
/// divide the discriminant or the leading coefficient.
pub fn degree_pattern(f: &IntPoly, p: u64) -> Result<Vec<usize>> {
    if p < 2 || !super::numtheory::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let disc = f.discriminant();
    let ramified = || Error::RamifiedPrime { p, disc: disc.to_string() };
    if disc == BigInt::from(0) || reduce(&disc, p) == 0 {
        return Err(ramified());
    }
    let fp = FpPoly::from_int_poly(f, p);
    if fp.degree() != f.degree() {
        return Err(ramified());
    }
    Ok(distinct_degree_pattern(&fp))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: strip linear factors via roots, then try all monic
    /// quadratics, then declare the rest irreducible (fine for degree <= 5).
    fn brute_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = FpPoly::new(p, f.to_vec()).monic();
        let mut out = Vec::new();
        for r in 0..p {
            let lin = FpPoly::new(p, vec![(p - r) % p, 1]);
            while f.degree().unwrap() >= 1 && f.div_rem(&lin).1.is_zero() {
                f = f.div_rem(&lin).0;
                out.push(1);
            }
        }
        'outer: loop {
            if f.degree().unwrap() < 4 {
                break;
            }
            for a in 0..p {
                for b in 0..p {
                    let q = FpPoly::new(p, vec![b, a, 1]);
                    if f.div_rem(&q).1.is_zero() {
                        f = f.div_rem(&q).0;
                        out.push(2);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if f.degree().unwrap() > 0 {
            out.push(f.degree().unwrap());
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn small_examples() {
        let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(degree_pattern(&x2p1, 5).unwrap(), vec![1, 1]);
        assert_eq!(degree_pattern(&x2p1, 3).unwrap(), vec![2]);
        assert!(matches!(degree_pattern(&x2p1, 2), Err(Error::RamifiedPrime { .. })));
        let x4p1 = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        assert_eq!(degree_pattern(&x4p1, 3).unwrap(), brute_pattern(&[1, 0, 0, 0, 1], 3));
        assert_eq!(degree_pattern(&x4p1, 3).unwrap(), vec![2, 2]);
    }

    #[test]
    fn ddf_matches_brute_force_on_quartics() {
        let f = IntPoly::from_i64(&[1, -1, 0, -4, 1]);
        for p in [2u64, 5, 7, 11, 13, 19, 23, 29, 31] {
            let raw: Vec<u64> = f.coeffs().iter().map(|c| reduce(c, p)).collect();
            assert_eq!(degree_pattern(&f, p).unwrap(), brute_pattern(&raw, p), "p = {p}");
        }
    }
}
