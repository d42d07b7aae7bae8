//! Moments of the normalized coefficients of the genus-3 factor: exact
//! closed forms from the class data of the Galois group, and empirical
//! averages over primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::numtheory::{binomial, catalan, primes_up_to};
use crate::chars::GroupTable;
use crate::curves::{ap, EllipticCurve};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_class, S4Field};
use crate::lfun::genus3_normalized;

/// Fewest usable primes an empirical moment accepts.
pub const MIN_SAMPLE: usize = 100;

/// Which normalized coefficient a moment is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficient {
    /// `abar_1`, `abar_2` or `abar_3` of the genus-3 factor.
    Genus3(u8),
    /// The normalized trace `a_p / sqrt p` of the elliptic curve itself.
    Elliptic,
}

impl Coefficient {
    pub fn genus3(i: u8) -> Result<Self> {
        if (1..=3).contains(&i) {
            Ok(Coefficient::Genus3(i))
        } else {
            Err(Error::InvalidArgument(format!("coefficient index {i} is not 1, 2 or 3")))
        }
    }

    pub fn name(&self) -> String {
        match self {
            Coefficient::Genus3(i) => format!("a{i}"),
            Coefficient::Elliptic => "a".into(),
        }
    }
}

/// Class values `t` of a character and class sizes, read from a table with
/// trusted sizes.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub group_order: u64,
    /// `(size, t)` per class.
    pub classes: Vec<(u64, i64)>,
}

impl ClassData {
    pub fn from_table(table: &GroupTable, character: &str) -> Result<Self> {
        if !table.sizes_trusted() {
            return Err(Error::InvalidArgument(format!("{} has untrusted class sizes", table.id())));
        }
        let chi = table.character(character)?;
        let t = chi
            .integer_values()
            .ok_or_else(|| Error::NotACharacter { detail: format!("{character} is not integer valued") })?;
        let classes = table.classes().iter().map(|c| c.size.expect("trusted sizes")).zip(t).collect();
        Ok(ClassData { group_order: table.order().expect("trusted sizes"), classes })
    }

    /// `sum_g f(t_g)` over group elements.
    fn element_sum(&self, f: impl Fn(&BigInt) -> BigInt) -> BigInt {
        self.classes.iter().map(|&(s, t)| BigInt::from(s) * f(&BigInt::from(t))).sum()
    }
}

/// `E(x^order)` for the given coefficient, exactly.
pub fn theoretical_moment(coefficient: Coefficient, order: u32, data: &ClassData) -> Result<BigRational> {
    let g = BigInt::from(data.group_order);
    let n = order as u64;
    let total = match coefficient {
        Coefficient::Elliptic => {
            if order % 2 == 1 {
                return Ok(BigRational::zero());
            }
            return Ok(BigRational::from_integer(catalan(n / 2)));
        }
        Coefficient::Genus3(1) => {
            if order % 2 == 1 {
                return Ok(BigRational::zero());
            }
            let k = n / 2;
            catalan(k) * data.element_sum(|t| t.pow(order))
        }
        Coefficient::Genus3(2) => (0..=n)
            .map(|i| {
                binomial(n, i) * catalan(i) * data.element_sum(|t| t.pow(order) * (t - BigInt::from(2)).pow((n - i) as u32))
            })
            .sum(),
        Coefficient::Genus3(3) => {
            if order % 2 == 1 {
                return Ok(BigRational::zero());
            }
            let k = n / 2;
            (0..=n)
                .map(|i| binomial(n, i) * catalan(i + k) * data.element_sum(|t| (t * t - BigInt::from(3)).pow((n - i) as u32)))
                .sum()
        }
        Coefficient::Genus3(i) => {
            return Err(Error::InvalidArgument(format!("coefficient index {i} is not 1, 2 or 3")));
        }
    };
    Ok(BigRational::new(total, g))
}

/// One good prime: the normalized elliptic trace and `t = chi(Frob_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub p: u64,
    pub a: i64,
    pub t: i64,
}

impl Sample {
    pub fn abar(&self) -> f64 {
        self.a as f64 / (self.p as f64).sqrt()
    }

    pub fn value(&self, c: Coefficient) -> f64 {
        match c {
            Coefficient::Elliptic => self.abar(),
            Coefficient::Genus3(i) => genus3_normalized(self.abar(), self.t as f64)[i as usize - 1],
        }
    }
}

/// Samples at every prime `p <= bound` of good reduction for `e` and
/// unramified in the quartic field. Supersingular primes are kept unless
/// `skip_supersingular` is set.
pub fn collect_samples(
    e: &EllipticCurve,
    field: &S4Field,
    table: &GroupTable,
    character: &str,
    bound: u64,
    skip_supersingular: bool,
) -> Result<Vec<Sample>> {
    let chi = table.character(character)?;
    let primes: Vec<u64> =
        primes_up_to(bound).into_iter().filter(|&p| p > 3 && e.is_good(p) && field.is_good(p)).collect();
    let samples: Vec<Result<Sample>> = primes
        .par_iter()
        .map(|&p| {
            let a = ap(e, p)?;
            let class = table.class_index(frobenius_class(field, p)?.class)?;
            let t = chi.value(class).as_integer().and_then(|v| v.to_i64()).ok_or_else(|| {
                Error::NotACharacter { detail: format!("{character} is not integer valued") }
            })?;
            Ok(Sample { p, a, t })
        })
        .collect();
    let mut out = Vec::with_capacity(samples.len());
    for s in samples {
        let s = s?;
        if skip_supersingular && s.a == 0 {
            continue;
        }
        out.push(s);
    }
    if out.len() < MIN_SAMPLE {
        return Err(Error::InsufficientSample { usable: out.len(), bound, needed: MIN_SAMPLE });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub coefficient: String,
    pub order: u32,
    #[serde(serialize_with = "crate::report::serialize_ratio")]
    pub theoretical: BigRational,
    pub empirical: f64,
    pub stderr: f64,
    pub n_primes: usize,
    pub pass: bool,
}

impl MomentReport {
    /// `max(0.1, 3 stderr)`
    pub fn tolerance(&self) -> f64 {
        (3.0 * self.stderr).max(0.1)
    }
}

/// Mean of `x^order` over the samples with its standard error, compared
/// with the exact value.
pub fn empirical_moment(
    samples: &[Sample],
    coefficient: Coefficient,
    order: u32,
    theoretical: BigRational,
) -> Result<MomentReport> {
    if samples.len() < MIN_SAMPLE {
        return Err(Error::InsufficientSample { usable: samples.len(), bound: 0, needed: MIN_SAMPLE });
    }
    let (empirical, stderr) = if order == 0 {
        (1.0, 0.0)
    } else {
        let xs: Vec<f64> = samples.iter().map(|s| s.value(coefficient).powi(order as i32)).collect();
        mean_and_stderr(&xs)
    };
    let th = theoretical.to_f64().unwrap_or(f64::NAN);
    let mut report = MomentReport {
        coefficient: coefficient.name(),
        order,
        theoretical,
        empirical,
        stderr,
        n_primes: samples.len(),
        pass: false,
    };
    report.pass = (empirical - th).abs() <= report.tolerance();
    Ok(report)
}

/// Sample mean and the standard error of the mean, summed in input order.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `E(abar^{2n})` of the elliptic curve against the Catalan number `c_n`.
pub fn catalan_moment_check(samples: &[Sample], n: u32) -> Result<MomentReport> {
    empirical_moment(samples, Coefficient::Elliptic, 2 * n, BigRational::from_integer(catalan(n as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::TableSet;

    fn s4_data() -> ClassData {
        ClassData::from_table(TableSet::builtin().get("S4").unwrap(), "chi4").unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_forms_at_small_orders() {
        let d = s4_data();
        let m = |c, k| theoretical_moment(Coefficient::genus3(c).unwrap(), k, &d).unwrap();
        assert_eq!(m(1, 0), r(1, 1));
        assert_eq!(m(1, 1), r(0, 1));
        assert_eq!(m(1, 2), r(1, 1));
        assert_eq!(m(1, 4), r(8, 1));
        assert_eq!(m(2, 1), r(1, 1));
        assert_eq!(m(3, 1), r(0, 1));
        assert!(Coefficient::genus3(4).is_err());
    }

    /// Direct evaluation: `E(f(abar, t))` where `abar` ranges over the
    /// semicircle moments and `t` over group elements, by expanding the
    /// polynomial in `abar` exactly.
    fn direct(f: impl Fn(&[BigRational], i64) -> BigRational) -> BigRational {
        let d = s4_data();
        let moments: Vec<BigRational> = (0..=16)
            .map(|k| if k % 2 == 1 { r(0, 1) } else { BigRational::from_integer(catalan(k / 2)) })
            .collect();
        let total: BigRational =
            d.classes.iter().map(|&(s, t)| BigRational::from_integer(s.into()) * f(&moments, t)).sum();
        total / BigRational::from_integer(d.group_order.into())
    }

    #[test]
    fn closed_forms_match_direct_expansion() {
        let d = s4_data();
        // abar_2^2 = t^2 (abar^2 - 2 + t)^2
        let want = direct(|m, t| {
            let u = BigRational::from_integer((t - 2).into());
            let t2 = BigRational::from_integer((t * t).into());
            t2 * (m[4].clone() + r(2, 1) * u.clone() * m[2].clone() + u.clone() * u)
        });
        assert_eq!(theoretical_moment(Coefficient::Genus3(2), 2, &d).unwrap(), want);
        // abar_3^2 = abar^2 (abar^2 + t^2 - 3)^2
        let want = direct(|m, t| {
            let u = BigRational::from_integer((t * t - 3).into());
            m[6].clone() + r(2, 1) * u.clone() * m[4].clone() + u.clone() * u * m[2].clone()
        });
        assert_eq!(theoretical_moment(Coefficient::Genus3(3), 2, &d).unwrap(), want);
    }

    #[test]
    fn stderr_of_a_constant_is_zero() {
        let (m, s) = mean_and_stderr(&[2.0; 10]);
        assert_eq!((m, s), (2.0, 0.0));
    }
}
