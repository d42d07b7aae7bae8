//! Small extension fields `F_{p^r}` built from the lexicographically smallest
//! monic irreducible polynomial of degree `r`.

use super::modp::{distinct_degree_pattern, FpPoly};
use super::numtheory::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: usize,
    /// Monic defining polynomial, lowest degree first, length `r + 1`.
    modulus: Vec<u64>,
}

/// Element of a [`FiniteField`]: `r` coefficients in the power basis.
pub type Fq = Vec<u64>;

impl FiniteField {
    pub fn new(p: u64, r: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        if r == 1 {
            return Ok(FiniteField { p, r, modulus: vec![0, 1] });
        }
        // Lexicographic on (c_{r-1}, ..., c_0) of x^r + c_{r-1} x^{r-1} + ... + c_0.
        let count = (p as u128).pow(r as u32);
        for idx in 0..count {
            let mut c = vec![0u64; r + 1];
            c[r] = 1;
            let mut t = idx;
            for ck in c.iter_mut().take(r) {
                *ck = (t % p as u128) as u64;
                t /= p as u128;
            }
            if c[0] == 0 {
                continue;
            }
            let f = FpPoly::new(p, c.clone());
            if distinct_degree_pattern(&f) == vec![r] {
                return Ok(FiniteField { p, r, modulus: c });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r as u32)
    }

    pub fn zero(&self) -> Fq {
        vec![0; self.r]
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fq {
        let mut e = self.zero();
        e[0] = v % self.p;
        e
    }

    pub fn from_i64(&self, v: i64) -> Fq {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// The element with base-p digits of `idx` as coefficients.
    pub fn element(&self, mut idx: u64) -> Fq {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        e
    }

    /// Inverse of [`FiniteField::element`].
    pub fn index(&self, e: &Fq) -> u64 {
        e.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        let r = self.r;
        let mut raw = vec![0u64; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                raw[i + j] = (raw[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        for k in (r..raw.len()).rev() {
            let c = raw[k];
            if c == 0 {
                continue;
            }
            for j in 0..r {
                let t = mul_mod(c, self.modulus[j], p);
                raw[k - r + j] = (raw[k - r + j] + p - t) % p;
            }
            raw[k] = 0;
        }
        raw.truncate(r);
        raw
    }

    pub fn pow(&self, a: &Fq, mut e: u64) -> Fq {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Fq) -> u64 {
        let n = self.order() - 1;
        let mut ord = n;
        for q in prime_factors_u64(n) {
            while ord % q == 0 && self.pow(a, ord / q) == self.one() {
                ord /= q;
            }
        }
        ord
    }
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Quadratic character on `F_p` as a lookup table: `table[v] = (v|p)`.
pub fn quadratic_character_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for y in 1..p {
        t[mul_mod(y, y, p) as usize] = 1;
    }
    if p == 2 {
        t[1] = 1;
    }
    t
}

/// Euler's criterion in `F_p`, used in tests to cross-check the table.
pub fn euler_criterion(v: u64, p: u64) -> i8 {
    match pow_mod(v % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        // F_4: x^2 + x + 1; F_9: x^2 + 1; F_8: x^3 + x + 1
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(FiniteField::new(4, 2).is_err());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, r) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let k = FiniteField::new(p, r).unwrap();
            for idx in 1..k.order() {
                let a = k.element(idx);
                assert_eq!(k.index(&a), idx);
                let inv = k.inv(&a).unwrap();
                assert_eq!(k.mul(&a, &inv), k.one());
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for (p, r) in [(2, 3), (3, 2), (5, 2), (5, 3), (11, 2)] {
            let k = FiniteField::new(p, r).unwrap();
            let q = k.order();
            let has_generator = (1..q).any(|i| k.multiplicative_order(&k.element(i)) == q - 1);
            assert!(has_generator, "F_{p}^{r}");
            for i in 1..q.min(50) {
                assert_eq!(k.pow(&k.element(i), q - 1), k.one());
            }
        }
    }

    #[test]
    fn character_table_agrees_with_euler() {
        for p in [3u64, 5, 7, 11, 101] {
            let t = quadratic_character_table(p);
            for v in 0..p {
                assert_eq!(t[v as usize], euler_criterion(v, p));
            }
        }
    }
}
