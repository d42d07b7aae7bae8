//! Determination of the Artin representation attached to a pair of abelian
//! varieties: enumerate decompositions of the right dimension, then keep the
//! ones whose Rankin-Selberg expansion reproduces the observed local factors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{format_combination, ClassFunction, DecomposeMode, GroupTable};
use crate::error::{Error, Result};
use crate::lfun::{elliptic_poly, rankin_selberg_poly, LocalFactor};

/// Largest target dimension [`enumerate_candidates`] accepts.
pub const DIMENSION_GUARD: usize = 30;

/// A linear condition on candidate decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomConstraint {
    /// The named irreducible occurs exactly `n` times.
    Multiplicity { character: String, n: i64 },
    /// `dim` of the vectors fixed by the normal subgroup made of these
    /// classes, the Hom dimension over the corresponding subfield. Needs
    /// trusted class sizes.
    Subgroup { classes: Vec<String>, dim: i64 },
}

impl FromStr for HomConstraint {
    type Err = Error;

    /// `trivial:0`, `chi2:0` or `classes=1a,2a:3`.
    fn from_str(s: &str) -> Result<Self> {
        let (lhs, n) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("constraint '{s}' is not of the form name:n")))?;
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("constraint '{s}': '{n}' is not an integer")))?;
        if n < 0 {
            return Err(Error::InvalidArgument(format!("constraint '{s}' is negative")));
        }
        match lhs.strip_prefix("classes=") {
            Some(list) => Ok(HomConstraint::Subgroup {
                classes: list.split(',').map(|c| c.trim().to_string()).collect(),
                dim: n,
            }),
            None => Ok(HomConstraint::Multiplicity { character: lhs.trim().to_string(), n }),
        }
    }
}

/// Data at one prime: the class of `Frob_p`, the trace of the left elliptic
/// factor and the right local factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub class: usize,
    pub left_trace: i64,
    pub right: LocalFactor,
}

/// `theta(E^g, A'; L/k)` of dimension `dim`: the left variety is the `g`-th
/// power of an elliptic curve, so a candidate must be `g` times a
/// representation `rho` with `L_p(A') = L_p(E, rho)` at every record.
#[derive(Clone, Debug)]
pub struct ThetaProblem<'a> {
    pub table: &'a GroupTable,
    pub dim: usize,
    pub left_power: usize,
    pub constraints: Vec<HomConstraint>,
    pub records: Vec<PrimeRecord>,
}

impl ThetaProblem<'_> {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if self.left_power == 0 {
            return Err(Error::InvalidArgument("left power must be positive".into()));
        }
        for r in &self.records {
            if r.class >= self.table.classes().len() {
                return Err(Error::InvalidArgument(format!("class index {} at p = {}", r.class, r.p)));
            }
            if r.right.prime() != r.p {
                return Err(Error::InvalidArgument(format!("right factor at {} filed under {}", r.right.prime(), r.p)));
            }
        }
        Ok(())
    }

    /// The same problem restricted to non-supersingular records.
    pub fn ordinary_only(&self) -> Self {
        ThetaProblem { records: self.records.iter().filter(|r| r.left_trace != 0).cloned().collect(), ..self.clone() }
    }

    /// The same problem with only the records at primes `<= bound`.
    pub fn truncated(&self, bound: u64) -> Self {
        ThetaProblem { records: self.records.iter().filter(|r| r.p <= bound).cloned().collect(), ..self.clone() }
    }
}

/// Nonnegative multiplicity of each irreducible, in table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Decomposition(pub Vec<i64>);

impl Decomposition {
    pub fn dimension(&self, table: &GroupTable) -> i64 {
        self.0.iter().zip(degrees(table)).map(|(n, d)| n * d).sum()
    }

    pub fn character(&self, table: &GroupTable) -> Result<ClassFunction> {
        table.combination(&self.0)
    }

    pub fn display(&self, table: &GroupTable) -> String {
        format_combination(table, &self.0)
    }

    /// `self / g` when every multiplicity is divisible by `g`.
    pub fn divide(&self, g: usize) -> Option<Decomposition> {
        let g = g as i64;
        self.0.iter().all(|n| n % g == 0).then(|| Decomposition(self.0.iter().map(|n| n / g).collect()))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn degrees(table: &GroupTable) -> Vec<i64> {
    table
        .irreducibles()
        .iter()
        .map(|c| c.degree().and_then(|d| d.to_i64()).expect("validated table"))
        .collect()
}

/// Every decomposition of total dimension `dim` satisfying the constraints.
pub fn enumerate_candidates(table: &GroupTable, dim: usize, constraints: &[HomConstraint]) -> Result<Vec<Decomposition>> {
    if dim > DIMENSION_GUARD {
        return Err(Error::GuardExceeded { dim, limit: DIMENSION_GUARD });
    }
    let degs = degrees(table);
    let mut fixed: Vec<Option<i64>> = vec![None; degs.len()];
    let mut subgroup = Vec::new();
    for c in constraints {
        match c {
            HomConstraint::Multiplicity { character, n } => {
                let i = if character == "trivial" { 0 } else { table.character_index(character)? };
                if fixed[i].is_some_and(|m| m != *n) {
                    return Ok(Vec::new());
                }
                fixed[i] = Some(*n);
            }
            HomConstraint::Subgroup { classes, dim } => {
                let all = classes.len() == table.classes().len();
                if all {
                    if fixed[0].is_some_and(|m| m != *dim) {
                        return Ok(Vec::new());
                    }
                    fixed[0] = Some(*dim);
                } else {
                    subgroup.push((subgroup_weights(table, classes)?, *dim));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; degs.len()];
    fill(&degs, &fixed, 0, dim as i64, &mut cur, &mut out);
    out.retain(|d| subgroup.iter().all(|(w, dim)| fixed_dimension(w, d) == BigRational::from_integer((*dim).into())));
    Ok(out)
}

fn fill(degs: &[i64], fixed: &[Option<i64>], i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Decomposition>) {
    if i == degs.len() {
        if left == 0 {
            out.push(Decomposition(cur.clone()));
        }
        return;
    }
    let range: Vec<i64> = match fixed[i] {
        Some(n) => vec![n],
        None => (0..=left / degs[i]).collect(),
    };
    for n in range {
        let used = n * degs[i];
        if used > left {
            continue;
        }
        cur[i] = n;
        fill(degs, fixed, i + 1, left - used, cur, out);
    }
    cur[i] = 0;
}

/// For each irreducible, the dimension of its vectors fixed by the subgroup.
fn subgroup_weights(table: &GroupTable, classes: &[String]) -> Result<Vec<BigRational>> {
    if !table.sizes_trusted() {
        return Err(Error::InvalidArgument(format!("{}: subgroup constraints need trusted class sizes", table.id())));
    }
    let idx: Vec<usize> = classes.iter().map(|c| table.class_index(c)).collect::<Result<_>>()?;
    let order: u64 = idx.iter().map(|&i| table.classes()[i].size.unwrap_or(0)).sum();
    table
        .irreducibles()
        .iter()
        .map(|chi| {
            let mut s = BigInt::zero();
            for &i in &idx {
                let v = chi.value(i).as_integer().ok_or_else(|| Error::NotACharacter {
                    detail: format!("{} is irrational on the subgroup", chi.label()),
                })?;
                s += v * BigInt::from(table.classes()[i].size.unwrap_or(0));
            }
            Ok(BigRational::new(s, BigInt::from(order)))
        })
        .collect()
}

fn fixed_dimension(weights: &[BigRational], d: &Decomposition) -> BigRational {
    weights.iter().zip(&d.0).map(|(w, &n)| w * BigRational::from_integer(n.into())).sum()
}

/// Survivors and, for each eliminated candidate, the first prime that ruled
/// it out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub survivors: Vec<Decomposition>,
    pub eliminated: Vec<(Decomposition, Elimination)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Elimination {
    /// Not divisible by the power of the left factor.
    NotDivisible,
    /// Rankin-Selberg mismatch at this prime.
    Prime(u64),
}

/// Keeps the candidates `theta = g rho` with `L_p(E, rho) = L_p(A')` at
/// every record. Zero survivors is an error: the data must be realizable.
pub fn rs_consistency_filter(candidates: &[Decomposition], problem: &ThetaProblem) -> Result<FilterReport> {
    problem.validate()?;
    let verdicts: Vec<Result<Option<Elimination>>> =
        candidates.par_iter().map(|c| first_failure(c, problem)).collect();
    let mut survivors = Vec::new();
    let mut eliminated = Vec::new();
    for (c, v) in candidates.iter().zip(verdicts) {
        match v? {
            None => survivors.push(c.clone()),
            Some(e) => eliminated.push((c.clone(), e)),
        }
    }
    if survivors.is_empty() {
        return Err(Error::Inconsistent(format!(
            "no candidate of dimension {} over {} matches the local factors",
            problem.dim,
            problem.table.id()
        )));
    }
    Ok(FilterReport { survivors, eliminated })
}

fn first_failure(candidate: &Decomposition, problem: &ThetaProblem) -> Result<Option<Elimination>> {
    let Some(rho) = candidate.divide(problem.left_power) else {
        return Ok(Some(Elimination::NotDivisible));
    };
    let chi = rho.character(problem.table)?;
    let mut eigen: HashMap<usize, Vec<u32>> = HashMap::new();
    for r in &problem.records {
        if !eigen.contains_key(&r.class) {
            eigen.insert(r.class, problem.table.eigenvalue_multiset(&chi, r.class)?);
        }
        let order = problem.table.classes()[r.class].order;
        let rs = rankin_selberg_poly(&elliptic_poly(r.left_trace, r.p), &eigen[&r.class], order)?;
        if &rs != r.right.poly() {
            return Ok(Some(Elimination::Prime(r.p)));
        }
    }
    Ok(None)
}

/// Enumeration followed by the Rankin-Selberg filter.
pub fn solve(problem: &ThetaProblem) -> Result<FilterReport> {
    let candidates = enumerate_candidates(problem.table, problem.dim, &problem.constraints)?;
    rs_consistency_filter(&candidates, problem)
}

/// Result of re-solving with the supersingular records removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularGuard {
    pub dropped: usize,
    pub survivors_unchanged: bool,
}

/// Uniqueness must already hold using only primes with `a_p != 0`.
pub fn supersingular_guard(problem: &ThetaProblem, full: &FilterReport) -> Result<SupersingularGuard> {
    let ordinary = problem.ordinary_only();
    let dropped = problem.records.len() - ordinary.records.len();
    let again = solve(&ordinary)?;
    Ok(SupersingularGuard { dropped, survivors_unchanged: again.survivors == full.survivors })
}

/// `theta23` is contained in `theta12 (x) theta13`: every multiplicity of the
/// difference is a nonnegative integer. Uses the linear-solve decomposition.
pub fn transitivity_bound(
    table: &GroupTable,
    theta12: &ClassFunction,
    theta13: &ClassFunction,
    theta23: &ClassFunction,
) -> Result<bool> {
    contains(table, &theta12.tensor(theta13)?, theta23)
}

/// `small` is a subrepresentation of `big`.
pub fn contains(table: &GroupTable, big: &ClassFunction, small: &ClassFunction) -> Result<bool> {
    Ok(dominates(&integral_multiplicities(table, big)?, &integral_multiplicities(table, small)?))
}

/// Candidates contained in each of the `upper` characters and such that each
/// `(sub, partner)` has `sub` inside `candidate (x) partner`.
pub fn filter_by_containment(
    table: &GroupTable,
    candidates: &[Decomposition],
    upper: &[ClassFunction],
    lower: &[(ClassFunction, ClassFunction)],
) -> Result<Vec<Decomposition>> {
    let bounds: Vec<Vec<BigRational>> =
        upper.iter().map(|u| integral_multiplicities(table, u)).collect::<Result<_>>()?;
    let subs: Vec<Vec<BigRational>> =
        lower.iter().map(|(s, _)| integral_multiplicities(table, s)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    'next: for c in candidates {
        let mine: Vec<BigRational> = c.0.iter().map(|&n| BigRational::from_integer(n.into())).collect();
        if !bounds.iter().all(|b| dominates(b, &mine)) {
            continue;
        }
        if !lower.is_empty() {
            let chi = c.character(table)?;
            for ((_, partner), sub) in lower.iter().zip(&subs) {
                if !dominates(&integral_multiplicities(table, &chi.tensor(partner)?)?, sub) {
                    continue 'next;
                }
            }
        }
        out.push(c.clone());
    }
    Ok(out)
}

fn integral_multiplicities(table: &GroupTable, chi: &ClassFunction) -> Result<Vec<BigRational>> {
    let m = table.decompose(chi, DecomposeMode::LinearSolve)?;
    if m.values.iter().any(|v| !v.is_integer()) {
        return Err(Error::NotACharacter { detail: "non-integral multiplicity in a containment test".into() });
    }
    Ok(m.values)
}

fn dominates(big: &[BigRational], small: &[BigRational]) -> bool {
    big.iter().zip(small).all(|(x, y)| !(x - y).is_negative())
}

/// Faithfulness and the character-level invariants every survivor must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorProfile {
    pub decomposition: String,
    pub faithful: bool,
    pub kernel: Vec<String>,
    pub self_dual: bool,
    pub rational: bool,
}

pub fn profile(table: &GroupTable, d: &Decomposition) -> Result<SurvivorProfile> {
    let chi = d.character(table)?;
    Ok(SurvivorProfile {
        decomposition: d.display(table),
        faithful: table.is_faithful(&chi)?,
        kernel: table.kernel_classes(&chi)?,
        self_dual: chi.is_self_dual(),
        rational: chi.is_rational(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::TableSet;

    #[test]
    fn one_dimensional_candidates() {
        let set = TableSet::builtin();
        let s4 = set.get("S4").unwrap();
        let c = enumerate_candidates(s4, 1, &[]).unwrap();
        assert_eq!(c, vec![Decomposition(vec![0, 1, 0, 0, 0]), Decomposition(vec![1, 0, 0, 0, 0])]);
    }

    #[test]
    fn constraints_prune_the_enumeration() {
        let set = TableSet::builtin();
        let s4 = set.get("S4").unwrap();
        let cons: Vec<HomConstraint> = ["trivial:0", "chi2:0"].iter().map(|s| s.parse().unwrap()).collect();
        let c = enumerate_candidates(s4, 9, &cons).unwrap();
        assert!(!c.is_empty());
        assert!(c.iter().all(|d| d.0[0] == 0 && d.0[1] == 0 && d.dimension(s4) == 9));

        let c2 = set.get("C2").unwrap();
        let c = enumerate_candidates(c2, 9, &["trivial:6".parse().unwrap()]).unwrap();
        assert_eq!(c, vec![Decomposition(vec![6, 3])]);

        // The full group as a subgroup constraint is the trivial multiplicity.
        let all: HomConstraint = "classes=1a,2a:6".parse().unwrap();
        assert_eq!(enumerate_candidates(c2, 9, &[all]).unwrap(), c);
        // Fixed vectors of the Klein subgroup {1a, 2a} in S4.
        let klein: HomConstraint = "classes=1a,2a:2".parse().unwrap();
        let c = enumerate_candidates(s4, 2, &[klein]).unwrap();
        // chi4 and chi5 have no fixed vectors, so only chi1, chi2, chi3 occur.
        assert_eq!(c.len(), 4);
        assert!(c.contains(&Decomposition(vec![0, 0, 1, 0, 0])));
    }

    #[test]
    fn guard_and_parse_errors() {
        let set = TableSet::builtin();
        let s4 = set.get("S4").unwrap();
        assert!(matches!(enumerate_candidates(s4, 31, &[]), Err(Error::GuardExceeded { .. })));
        assert!("trivial".parse::<HomConstraint>().is_err());
        assert!("trivial:-1".parse::<HomConstraint>().is_err());
        assert!(enumerate_candidates(s4, 3, &["chi9:0".parse().unwrap()]).is_err());
    }

    #[test]
    fn transitivity_examples() {
        let set = TableSet::builtin();
        let s4 = set.get("S4").unwrap();
        let t = set.get("T288").unwrap();
        let psi = |n: &str| t.character(n).unwrap().clone();
        assert!(transitivity_bound(t, &psi("psi9").scale(3), &psi("psi7").scale(3), &psi("psi13")).unwrap());
        assert!(!transitivity_bound(t, &psi("psi9"), &psi("psi7"), &psi("psi14")).unwrap());
        for chi in s4.irreducibles() {
            assert!(transitivity_bound(s4, chi, &chi.dual(), &s4.trivial()).unwrap());
        }
    }
}
