//! Curve registry files: elliptic curves in long Weierstrass form and plane
//! quartics with cleared denominators.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::arith::numtheory::prime_divisors;
use crate::curves::{EllipticCurve, PlaneQuartic};
use crate::error::{Error, Result};

/// An integer written either as a JSON number or, for large values, a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum IntLiteral {
    Small(i64),
    Big(String),
}

impl IntLiteral {
    fn value(&self, field: &str) -> Result<BigInt> {
        match self {
            IntLiteral::Small(v) => Ok(BigInt::from(*v)),
            IntLiteral::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{field}: '{s}' is not an integer"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveEntry {
    label: String,
    weierstrass: [IntLiteral; 5],
    conductor: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuarticEntry {
    label: String,
    monomials: BTreeMap<String, IntLiteral>,
    #[serde(default)]
    denominator: Option<u64>,
    bad_primes: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryFile {
    #[serde(default)]
    curves: Vec<CurveEntry>,
    #[serde(default)]
    quartics: Vec<QuarticEntry>,
}

#[derive(Clone, Debug, Default)]
pub struct Registry {
    curves: Vec<EllipticCurve>,
    quartics: Vec<PlaneQuartic>,
    warnings: Vec<String>,
}

impl Registry {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Json(j) => Error::Schema { path: path.to_path_buf(), detail: j.to_string() },
            other => other,
        })
    }

    /// Parses and validates. Schema errors carry serde's line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let file: RegistryFile = serde_json::from_str(text)?;
        let mut seen = HashSet::new();
        let mut reg = Registry::default();
        for c in file.curves {
            if !seen.insert(c.label.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate label {}", c.label)));
            }
            let mut a: [BigInt; 5] = Default::default();
            for (i, lit) in c.weierstrass.iter().enumerate() {
                a[i] = lit.value(&format!("{}.weierstrass[{i}]", c.label))?;
            }
            reg.curves.push(EllipticCurve::new(c.label, a, Some(c.conductor))?);
        }
        for q in file.quartics {
            if !seen.insert(q.label.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate label {}", q.label)));
            }
            let mut terms = Vec::with_capacity(q.monomials.len());
            for (key, lit) in &q.monomials {
                let exps = parse_monomial(key)
                    .ok_or_else(|| Error::InvalidArgument(format!("{}: monomial key '{key}' is not three digits", q.label)))?;
                terms.push((exps, lit.value(&format!("{}.monomials.{key}", q.label))?));
            }
            terms.retain(|(_, c)| !c.is_zero());
            let quartic = PlaneQuartic::new(q.label.clone(), terms, q.bad_primes)?;
            for p in quartic.degenerate_primes() {
                if !quartic.bad_primes().contains(&p) {
                    reg.warnings.push(format!(
                        "{}: {p} divides some but not all coefficients and should be a bad prime",
                        q.label
                    ));
                }
            }
            if let Some(d) = q.denominator {
                for p in prime_divisors(&BigInt::from(d)) {
                    if !quartic.bad_primes().contains(&p) {
                        reg.warnings.push(format!("{}: denominator prime {p} is not listed as bad", q.label));
                    }
                }
            }
            reg.quartics.push(quartic);
        }
        Ok(reg)
    }

    /// The registry shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_REGISTRY).expect("builtin registry is valid")
    }

    pub fn curves(&self) -> &[EllipticCurve] {
        &self.curves
    }

    pub fn quartics(&self) -> &[PlaneQuartic] {
        &self.quartics
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn curve(&self, label: &str) -> Result<&EllipticCurve> {
        self.curves
            .iter()
            .find(|c| c.label() == label)
            .ok_or_else(|| Error::Unknown { kind: "curve", name: label.to_string() })
    }

    pub fn quartic(&self, label: &str) -> Result<&PlaneQuartic> {
        self.quartics
            .iter()
            .find(|q| q.label() == label)
            .ok_or_else(|| Error::Unknown { kind: "quartic", name: label.to_string() })
    }
}

fn parse_monomial(key: &str) -> Option<[u32; 3]> {
    let d: Vec<u32> = key.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?;
    match d.as_slice() {
        [i, j, k] => Some([*i, *j, *k]),
        _ => None,
    }
}

pub const BUILTIN_REGISTRY: &str = include_str!("../../../data/registry.json");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads_without_warnings() {
        let r = Registry::builtin();
        assert_eq!(r.curves().len(), 2);
        assert_eq!(r.curve("21.A1").unwrap().conductor(), Some(21));
        assert_eq!(r.quartic("C1").unwrap().terms().len(), 6);
        assert!(r.warnings().is_empty(), "{:?}", r.warnings());
    }

    #[test]
    fn duplicate_labels_are_named() {
        let text = r#"{"curves":[
            {"label":"X","weierstrass":[1,0,0,-4,-1],"conductor":21},
            {"label":"X","weierstrass":[1,0,0,-4,-1],"conductor":21}]}"#;
        let err = Registry::parse(text).unwrap_err().to_string();
        assert!(err.contains("duplicate label X"), "{err}");
    }

    #[test]
    fn missing_bad_prime_is_a_warning() {
        let text = r#"{"quartics":[{"label":"C1","denominator":7,
            "monomials":{"400":7,"040":7,"004":7,"202":2,"022":2,"220":2},"bad_primes":[2,3]}]}"#;
        let r = Registry::parse(text).unwrap();
        assert!(r.warnings().iter().any(|w| w.contains("7")), "{:?}", r.warnings());
    }

    #[test]
    fn schema_errors_report_position() {
        let err = Registry::parse(r#"{"curves":[{"label":"X","weierstrass":[1,0],"conductor":21}]}"#).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        assert!(Registry::parse(r#"{"quartics":[{"label":"Q","monomials":{"40":1},"bad_primes":[]}]}"#).is_err());
        assert!(Registry::parse(r#"{"curves":[{"label":"S","weierstrass":[0,0,0,0,0],"conductor":1}]}"#).is_err());
    }

    #[test]
    fn big_coefficients_as_strings() {
        let text = r#"{"curves":[{"label":"big","weierstrass":[0,0,0,"-1",
            "100000000000000000000000000000000000000"],"conductor":1}]}"#;
        // conductor 1 has no primes, so only the discriminant is checked
        assert!(Registry::parse(text).is_ok());
    }
}
