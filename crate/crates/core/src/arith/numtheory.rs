//! Small-integer number theory: sieves, Legendre/Kronecker symbols,
//! trial-division factorization and the exact integer sequences used by the
//! moment formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// All primes `p <= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `a mod p` as a canonical residue in `[0, p)`.
pub fn reduce(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Legendre symbol `(a|p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(d|p)` for a prime `p`; at `p = 2` this is the
/// splitting behaviour of 2 in `Q(sqrt d)` for `d = 1 mod 4`.
pub fn kronecker(d: i64, p: u64) -> i8 {
    if p == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    legendre(d, p)
}

pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d.unsigned_abs();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Distinct prime divisors of a nonzero integer, by trial division.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut q = 2u64;
    while BigInt::from(q) * BigInt::from(q) <= n {
        let bq = BigInt::from(q);
        if (&n % &bq).is_zero() {
            out.push(q);
            while (&n % &bq).is_zero() {
                n /= &bq;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor beyond u64"));
    }
    out
}

/// Squarefree kernel of a nonzero integer, keeping the sign: the unique
/// squarefree `k` with `n = k * s^2`.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    let mut kernel = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    for q in prime_divisors(n) {
        let bq = BigInt::from(q);
        let mut e = 0;
        while (&rest % &bq).is_zero() {
            rest /= &bq;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= &bq;
        }
    }
    kernel
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The n-th Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// `s_r = alpha^r + conj(alpha)^r` where `alpha, conj(alpha)` are the reciprocal
/// roots of `1 - a T + p T^2`, via `s_r = a s_{r-1} - p s_{r-2}`.
pub fn power_sum(a: &BigInt, p: &BigInt, r: i64) -> Result<BigInt> {
    if r < 0 {
        return Err(Error::InvalidArgument(format!("power sum index {r} is negative")));
    }
    let mut prev = BigInt::from(2);
    if r == 0 {
        return Ok(prev);
    }
    let mut cur = a.clone();
    for _ in 1..r {
        let next = a * &cur - p * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_primality_agree() {
        let ps = primes_up_to(1000);
        assert_eq!(ps.len(), 168);
        for n in 0..1000 {
            assert_eq!(is_prime(n), ps.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn kronecker_minus_three_is_residue_class_mod_three() {
        for p in primes_up_to(500).into_iter().filter(|&p| p > 3) {
            let expected = if p % 3 == 1 { 1 } else { -1 };
            assert_eq!(kronecker(-3, p), expected, "p = {p}");
        }
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn catalan_values() {
        let got: Vec<_> = (0..8).map(catalan).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132, 429].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn power_sum_closed_forms() {
        for (a, p) in [(3i64, 7i64), (-5, 11), (0, 13), (1, 2)] {
            let (ab, pb) = (BigInt::from(a), BigInt::from(p));
            assert_eq!(power_sum(&ab, &pb, 0).unwrap(), BigInt::from(2));
            assert_eq!(power_sum(&ab, &pb, 1).unwrap(), ab);
            assert_eq!(power_sum(&ab, &pb, 2).unwrap(), BigInt::from(a * a - 2 * p));
            assert_eq!(power_sum(&ab, &pb, 3).unwrap(), BigInt::from(a * a * a - 3 * a * p));
        }
        assert!(power_sum(&BigInt::one(), &BigInt::one(), -1).is_err());
    }

    #[test]
    fn squarefree_helpers() {
        assert!(is_squarefree(-3));
        assert!(is_squarefree(-35));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
        assert_eq!(squarefree_kernel(&BigInt::from(-7803)), BigInt::from(-3));
        assert_eq!(prime_divisors(&BigInt::from(-7803)), vec![3, 17]);
    }
}
