//! The worked example: two elliptic curves of conductors 21 and 63, the
//! quartic `C1`, two `S4` quartic fields `f` and `f'` with discriminant in
//! `-3 Q^2`, and the six Artin representations relating the Jacobians.

use serde::Serialize;

use crate::arith::numtheory::{kronecker, primes_up_to};
use crate::chars::{ClassFunction, GroupTable, TableSet};
use crate::curves::{ap, local_factor, quadratic_twist, EllipticCurve, PlaneQuartic};
use crate::error::{Error, Result};
use crate::frobenius::{find_quartic_pair, frobenius_class, S4Field};
use crate::lfun::{genus3_factor, LocalFactor};
use crate::registry::Registry;
use crate::theta::{
    enumerate_candidates, filter_by_containment, profile, solve, supersingular_guard, transitivity_bound,
    Decomposition, HomConstraint, PrimeRecord, SurvivorProfile, ThetaProblem,
};

/// Search height at which the quartic pair turns up.
pub const DEFAULT_HEIGHT: i64 = 4;

/// Bound on constraint primes for the solver runs.
pub const DEFAULT_THETA_BOUND: u64 = 1000;

#[derive(Clone, Debug)]
pub struct Example {
    pub tables: TableSet,
    pub e21: EllipticCurve,
    pub e63: EllipticCurve,
    pub c1: PlaneQuartic,
    pub f: S4Field,
    pub f_prime: S4Field,
}

/// Which of the two quartic fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F,
    FPrime,
}

impl Example {
    pub fn new(registry: &Registry, tables: TableSet, f: S4Field, f_prime: S4Field) -> Result<Self> {
        for id in ["S4", "C2", "T288"] {
            tables.get(id)?;
        }
        Ok(Example {
            e21: registry.curve("21.A1")?.clone(),
            e63: registry.curve("63.A2")?.clone(),
            c1: registry.quartic("C1")?.clone(),
            tables,
            f,
            f_prime,
        })
    }

    /// Builtin registry and tables, quartics from the search at `height`.
    pub fn builtin(height: i64) -> Result<Self> {
        let (f, g) = find_quartic_pair(height)?;
        Self::new(&Registry::builtin(), TableSet::builtin(), f, g)
    }

    pub fn s4(&self) -> &GroupTable {
        self.tables.get("S4").expect("checked in new")
    }

    pub fn c2(&self) -> &GroupTable {
        self.tables.get("C2").expect("checked in new")
    }

    pub fn t288(&self) -> &GroupTable {
        self.tables.get("T288").expect("checked in new")
    }

    pub fn field(&self, side: Side) -> &S4Field {
        match side {
            Side::F => &self.f,
            Side::FPrime => &self.f_prime,
        }
    }

    /// Primes `5 <= p <= bound` good for both curves and unramified in the field.
    pub fn good_primes(&self, side: Side, bound: u64) -> Vec<u64> {
        let field = self.field(side);
        primes_up_to(bound)
            .into_iter()
            .filter(|&p| p > 3 && self.e21.is_good(p) && self.e63.is_good(p) && field.is_good(p))
            .collect()
    }

    /// Degree-6 factor of the Jacobian attached to the field: `E63` twisted
    /// by `chi4` at the Frobenius class.
    pub fn genus3_factor(&self, side: Side, p: u64) -> Result<(usize, LocalFactor)> {
        let s4 = self.s4();
        let class = s4.class_index(frobenius_class(self.field(side), p)?.class)?;
        let chi4 = s4.character("chi4")?;
        let mut l = genus3_factor(ap(&self.e63, p)?, p, s4, chi4, class)?;
        l = LocalFactor::new(format!("J(C{})", side.index()), p, l.poly().clone())?;
        Ok((class, l))
    }

    fn genus3_records(&self, side: Side, left: &EllipticCurve, bound: u64) -> Result<Vec<PrimeRecord>> {
        self.good_primes(side, bound)
            .into_iter()
            .map(|p| {
                let (class, right) = self.genus3_factor(side, p)?;
                Ok(PrimeRecord { p, class, left_trace: ap(left, p)?, right })
            })
            .collect()
    }

    /// `theta(E^3, J)` over the field on `side`, with no trivial constituent.
    pub fn genus3_problem(&self, side: Side, left: &EllipticCurve, bound: u64) -> Result<ThetaProblem<'_>> {
        Ok(ThetaProblem {
            table: self.s4(),
            dim: 9,
            left_power: 3,
            constraints: vec!["trivial:0".parse()?],
            records: self.genus3_records(side, left, bound)?,
        })
    }

    /// `theta(E21, E21^(d))` over `Q(sqrt d)`.
    pub fn twist_problem(&self, d: i64, bound: u64) -> Result<ThetaProblem<'_>> {
        let twist = quadratic_twist(&self.e21, d)?;
        let c2 = self.c2();
        let records = primes_up_to(bound)
            .into_iter()
            .filter(|&p| p > 3 && self.e21.is_good(p) && kronecker(d, p) != 0 && twist.is_good(p))
            .map(|p| {
                let class = if kronecker(d, p) == 1 { 0 } else { 1 };
                Ok(PrimeRecord { p, class, left_trace: ap(&self.e21, p)?, right: local_factor(&twist, p)? })
            })
            .collect::<Result<_>>()?;
        Ok(ThetaProblem { table: c2, dim: 1, left_power: 1, constraints: vec![], records })
    }

    /// `theta(E21^3, E21^2 x E63)` over `Q(sqrt -3)`, whose `Q`-part has
    /// dimension 6.
    pub fn theta10_problem(&self, bound: u64) -> Result<ThetaProblem<'_>> {
        let records = primes_up_to(bound)
            .into_iter()
            .filter(|&p| p > 3 && self.e21.is_good(p) && self.e63.is_good(p))
            .map(|p| {
                let l21 = local_factor(&self.e21, p)?;
                let right = l21.product(&l21)?.product(&local_factor(&self.e63, p)?)?;
                let class = if kronecker(-3, p) == 1 { 0 } else { 1 };
                Ok(PrimeRecord { p, class, left_trace: l21_trace(&l21), right })
            })
            .collect::<Result<_>>()?;
        Ok(ThetaProblem {
            table: self.c2(),
            dim: 9,
            left_power: 3,
            constraints: vec!["trivial:6".parse()?],
            records,
        })
    }

    /// `theta(E21, E63)` over the `S4` field: the quadratic twist seen
    /// through a bigger extension, so the survivor has a kernel.
    pub fn redundant_twist_problem(&self, bound: u64) -> Result<ThetaProblem<'_>> {
        let s4 = self.s4();
        let records = self
            .good_primes(Side::F, bound)
            .into_iter()
            .map(|p| {
                let class = s4.class_index(frobenius_class(&self.f, p)?.class)?;
                Ok(PrimeRecord { p, class, left_trace: ap(&self.e21, p)?, right: local_factor(&self.e63, p)? })
            })
            .collect::<Result<_>>()?;
        Ok(ThetaProblem { table: s4, dim: 1, left_power: 1, constraints: vec![], records })
    }
}

impl Side {
    fn index(self) -> u8 {
        match self {
            Side::F => 2,
            Side::FPrime => 3,
        }
    }
}

fn l21_trace(l: &LocalFactor) -> i64 {
    -l.coefficients_i64().expect("elliptic factor fits i64")[1]
}

/// One line of the theta table.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaItem {
    pub name: String,
    pub expected: String,
    pub survivors: Vec<String>,
    pub profiles: Vec<SurvivorProfile>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaTable {
    pub items: Vec<ThetaItem>,
}

impl ThetaTable {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

fn vector(table: &GroupTable, terms: &[(&str, i64)]) -> Result<Decomposition> {
    let mut v = vec![0; table.irreducibles().len()];
    for (name, n) in terms {
        v[table.character_index(name)?] = *n;
    }
    Ok(Decomposition(v))
}

fn item(
    table: &GroupTable,
    name: &str,
    expected: &Decomposition,
    survivors: &[Decomposition],
    primed: bool,
    detail: String,
) -> Result<ThetaItem> {
    let show = |d: &Decomposition| {
        let s = d.display(table);
        if primed {
            prime_names(&s)
        } else {
            s
        }
    };
    Ok(ThetaItem {
        name: name.into(),
        expected: show(expected),
        survivors: survivors.iter().map(show).collect(),
        profiles: survivors.iter().map(|d| profile(table, d)).collect::<Result<_>>()?,
        pass: survivors == std::slice::from_ref(expected),
        detail,
    })
}

/// `chi5` becomes `chi5'`: the same character read on the second field.
fn prime_names(s: &str) -> String {
    s.split(" + ").map(|t| format!("{t}'")).collect::<Vec<_>>().join(" + ")
}

fn unique(survivors: &[Decomposition], what: &str) -> Result<Decomposition> {
    match survivors {
        [only] => Ok(only.clone()),
        _ => Err(Error::Inconsistent(format!("{what} has {} survivors", survivors.len()))),
    }
}

/// Runs the solver pipeline for all six representations. `strict_table2`
/// also requires the projections of the order-288 table to pass their
/// consistency checks before it is used.
pub fn verify_theta_table(ex: &Example, bound: u64, strict_table2: bool) -> Result<ThetaTable> {
    let s4 = ex.s4();
    let c2 = ex.c2();
    let t288 = ex.t288();
    let mut items = Vec::new();

    let p21 = ex.genus3_problem(Side::F, &ex.e21, bound)?;
    let r21 = solve(&p21)?;
    let guard = supersingular_guard(&p21, &r21)?;
    let want = vector(s4, &[("chi5", 3)])?;
    let detail = format!(
        "{} primes; {} supersingular dropped, survivors unchanged: {}",
        p21.records.len(),
        guard.dropped,
        guard.survivors_unchanged
    );
    let mut it = item(s4, "theta21", &want, &r21.survivors, false, detail)?;
    it.pass &= guard.survivors_unchanged;
    items.push(it);

    let p13 = ex.genus3_problem(Side::FPrime, &ex.e21, bound)?;
    let r13 = solve(&p13)?;
    items.push(item(s4, "theta13", &want, &r13.survivors, true, format!("{} primes", p13.records.len()))?);

    let p10 = ex.theta10_problem(bound)?;
    let r10 = solve(&p10)?;
    let want10 = vector(c2, &[("chi_t", 6), ("chi_q", 3)])?;
    items.push(item(c2, "theta10", &want10, &r10.survivors, false, format!("{} primes", p10.records.len()))?);

    let theta10 = unique(&r10.survivors, "theta10")?.character(c2)?;
    let inf10 = s4.inflate(&theta10, c2, "sign")?;
    let want0 = vector(s4, &[("chi4", 1), ("chi5", 2)])?;
    for (name, r, primed) in [("theta02", &r21, false), ("theta03", &r13, true)] {
        let theta = unique(&r.survivors, name)?.character(s4)?;
        let survivors = n_m_argument(s4, &theta, &inf10)?;
        let detail = format!(
            "n chi4 + m chi5 inside {} and containing Inf theta10 after tensoring",
            format_char(s4, &theta.tensor(&inf10)?)?
        );
        items.push(item(s4, name, &want0, &survivors, primed, detail)?);
    }

    let mut detail = String::new();
    let mut table_ok = true;
    if strict_table2 {
        for pr in ["pi_L", "pi_Lprime"] {
            if let Err(e) = t288.check_projection(pr, s4) {
                table_ok = false;
                detail.push_str(&format!("{pr}: {e}; "));
            }
        }
    }
    let inf21 = t288.inflate(&unique(&r21.survivors, "theta21")?.character(s4)?, s4, "pi_L")?;
    let inf13 = t288.inflate(&unique(&r13.survivors, "theta13")?.character(s4)?, s4, "pi_Lprime")?;
    let upper = inf21.tensor(&inf13)?;
    let candidates = enumerate_candidates(t288, 9, &[])?;
    let survivors = filter_by_containment(t288, &candidates, &[upper.clone()], &[])?;
    let want32 = vector(t288, &[("psi13", 1)])?;
    let transitive = transitivity_bound(t288, &inf21, &inf13, &want32.character(t288)?)?;
    detail.push_str(&format!(
        "{} candidates of dimension 9 inside {}; transitivity {}",
        candidates.len(),
        format_char(t288, &upper)?,
        if transitive { "holds" } else { "fails" }
    ));
    let mut it = item(t288, "theta32", &want32, &survivors, false, detail)?;
    it.pass &= transitive && table_ok;
    items.push(it);

    Ok(ThetaTable { items })
}

/// Candidates `n chi4 + m chi5` of dimension 9 inside `theta (x) inf10`
/// with `inf10` inside `candidate (x) theta`.
pub fn n_m_argument(s4: &GroupTable, theta: &ClassFunction, inf10: &ClassFunction) -> Result<Vec<Decomposition>> {
    let constraints: Vec<HomConstraint> =
        ["trivial:0", "chi2:0", "chi3:0"].iter().map(|c| c.parse()).collect::<Result<_>>()?;
    let candidates = enumerate_candidates(s4, 9, &constraints)?;
    filter_by_containment(s4, &candidates, &[theta.tensor(inf10)?], &[(inf10.clone(), theta.clone())])
}

fn format_char(table: &GroupTable, chi: &ClassFunction) -> Result<String> {
    let m = table.decompose(chi, crate::chars::DecomposeMode::LinearSolve)?.to_integers()?;
    Ok(crate::chars::format_combination(table, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn example() -> &'static Example {
        static EX: OnceLock<Example> = OnceLock::new();
        EX.get_or_init(|| Example::builtin(DEFAULT_HEIGHT).unwrap())
    }

    #[test]
    fn twist_toy_is_the_quadratic_character() {
        let ex = example();
        let r = solve(&ex.twist_problem(-3, 300).unwrap()).unwrap();
        assert_eq!(r.survivors, vec![Decomposition(vec![0, 1])]);
        assert!(profile(ex.c2(), &r.survivors[0]).unwrap().faithful);
    }

    #[test]
    fn redundant_extension_has_a_kernel() {
        let ex = example();
        let p = ex.redundant_twist_problem(300).unwrap();
        let r = solve(&p).unwrap();
        assert_eq!(r.survivors.len(), 1);
        let prof = profile(ex.s4(), &r.survivors[0]).unwrap();
        assert_eq!(prof.decomposition, "chi2");
        assert!(!prof.faithful);
        assert_eq!(prof.kernel, ["1a", "2a", "3a"]);
    }

    #[test]
    fn e63_variant_is_three_chi4() {
        let ex = example();
        let r = solve(&ex.genus3_problem(Side::F, &ex.e63, 300).unwrap()).unwrap();
        assert_eq!(r.survivors, vec![Decomposition(vec![0, 0, 0, 3, 0])]);
    }

    #[test]
    fn n_m_argument_forces_one_and_two() {
        let ex = example();
        let s4 = ex.s4();
        let theta21 = s4.combination(&[0, 0, 0, 0, 3]).unwrap();
        let inf10 = s4.inflate(&ex.c2().combination(&[6, 3]).unwrap(), ex.c2(), "sign").unwrap();
        let got = n_m_argument(s4, &theta21, &inf10).unwrap();
        assert_eq!(got, vec![Decomposition(vec![0, 0, 0, 1, 2])]);
    }

    #[test]
    fn primed_names() {
        assert_eq!(prime_names("chi4 + 2*chi5"), "chi4' + 2*chi5'");
    }
}
