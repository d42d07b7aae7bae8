//! End-to-end reproduction of the worked example: every check in order,
//! one JSON record per check and a summary table.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::arith::numtheory::{kronecker, primes_up_to};
use crate::arith::cyclo::CycloInt;
use crate::chars::{ClassFunction, TableSet};
use crate::curves::{ap, count_points_ext, count_quartic, local_factor, quadratic_twist, CountMode};
use crate::error::{Error, Result};
use crate::frobenius::{chebotarev_deviation, class_frequencies, find_quartic_pair, frobenius_class, S4Field};
use crate::lfun::{calcfac_closed_form, divisible_by_elliptic, rankin_selberg_elliptic, triple_twist_divides, CalcfacCase};
use crate::pipeline::{verify_theta_table, Example, Side, DEFAULT_HEIGHT, DEFAULT_THETA_BOUND};
use crate::registry::Registry;
use crate::report::{write_csv, write_json, write_moments_csv};
use crate::satotate::{
    catalan_moment_check, collect_samples, empirical_moment, theoretical_moment, ClassData, Coefficient, MomentReport,
};
use crate::theta::{solve, Decomposition};

/// Prime bounds per stage.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub c1: u64,
    pub twist: u64,
    pub cubic_primes: Vec<u64>,
    pub quadratic_rs: u64,
    pub calcfac_per_class: usize,
    pub divisibility: u64,
    pub triple_twist: u64,
    pub theta: u64,
    pub moments: u64,
    pub chebotarev: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            c1: 199,
            twist: 500,
            cubic_primes: vec![5, 7, 11, 13],
            quadratic_rs: 200,
            calcfac_per_class: 10,
            divisibility: 2000,
            triple_twist: 500,
            theta: DEFAULT_THETA_BOUND,
            moments: 100_000,
            chebotarev: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticSource {
    Search { height: i64 },
    Given { f: [i64; 4], f_prime: [i64; 4] },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub registry: PathBuf,
    pub tables: PathBuf,
    pub bounds: Bounds,
    pub quartics: QuarticSource,
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub include_supersingular: bool,
    pub strict_table2: bool,
    /// Run only these check ids.
    pub only: Option<Vec<u32>>,
}

impl RunConfig {
    pub fn new(registry: impl Into<PathBuf>, tables: impl Into<PathBuf>) -> Self {
        RunConfig {
            registry: registry.into(),
            tables: tables.into(),
            bounds: Bounds::default(),
            quartics: QuarticSource::Search { height: DEFAULT_HEIGHT },
            out_dir: None,
            threads: None,
            include_supersingular: true,
            strict_table2: false,
            only: None,
        }
    }

    /// Paths exist, bounds are positive.
    pub fn validate(&self) -> Result<()> {
        if !self.registry.is_file() {
            return Err(Error::InvalidArgument(format!("registry {} does not exist", self.registry.display())));
        }
        if !self.tables.is_dir() {
            return Err(Error::InvalidArgument(format!("table directory {} does not exist", self.tables.display())));
        }
        for id in ["S4", "C2", "T288"] {
            let path = self.tables.join(format!("{id}.json"));
            if !path.is_file() {
                return Err(Error::InvalidArgument(format!("missing group table {}", path.display())));
            }
        }
        let b = &self.bounds;
        let scalar = [b.c1, b.twist, b.quadratic_rs, b.divisibility, b.triple_twist, b.theta, b.moments, b.chebotarev];
        if scalar.contains(&0) || b.calcfac_per_class == 0 || b.cubic_primes.is_empty() {
            return Err(Error::InvalidArgument("prime bounds must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument("thread count must be positive".into()));
        }
        if let QuarticSource::Search { height } = self.quartics {
            if height <= 0 {
                return Err(Error::InvalidArgument("search height must be positive".into()));
            }
        }
        Ok(())
    }

    /// Command line re-running a single check.
    pub fn reproducer(&self, id: u32) -> String {
        let mut cmd = format!(
            "artin verify-paper --registry {} --tables {} --only {id}",
            self.registry.display(),
            self.tables.display()
        );
        match &self.quartics {
            QuarticSource::Search { height } if *height != DEFAULT_HEIGHT => cmd.push_str(&format!(" --height {height}")),
            QuarticSource::Search { .. } => {}
            QuarticSource::Given { f, f_prime } => {
                cmd.push_str(&format!(" --quartic {} --quartic-prime {}", join(f), join(f_prime)))
            }
        }
        if !self.include_supersingular {
            cmd.push_str(" --skip-supersingular");
        }
        if self.strict_table2 {
            cmd.push_str(" --strict-table2");
        }
        cmd
    }
}

fn join(c: &[i64; 4]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Names of the checks, by id, in the order they run.
pub const CHECKS: [(u32, &str); 13] = [
    (2, "twist-relation"),
    (1, "c1-point-count"),
    (3, "cubic-base-change"),
    (4, "quadratic-rankin-selberg"),
    (5, "calcfac-equivalence"),
    (6, "divisibility"),
    (7, "theta-uniqueness"),
    (8, "character-identities"),
    (9, "theta-table"),
    (10, "moments-closed-form"),
    (11, "moments-empirical"),
    (12, "chebotarev"),
    (13, "eigenvalue-round-trip"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
    /// Wall time; left out of the JSON so reruns are byte-identical.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub records: Vec<CheckRecord>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub moments: Vec<MomentReport>,
}

impl Summary {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&format!(
                "[{}] {:>2} {:<26} {:>8.2}s  {}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.seconds,
                r.detail
            ));
            if let Some(cmd) = &r.reproducer {
                s.push_str(&format!("       rerun: {cmd}\n"));
            }
        }
        s
    }
}

/// Outcome of one check: pass flag and a one-line description.
type Outcome = Result<(bool, String)>;

/// Runs the checks in order. Errors are configuration problems only; check
/// failures, including bad registry data, end up in the records.
pub fn verify_paper(config: &RunConfig) -> Result<Summary> {
    config.validate()?;
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| run(config)),
        None => run(config),
    }
}

fn run(config: &RunConfig) -> Result<Summary> {
    let tables = TableSet::load_dir(&config.tables)?;
    tables.check_projections()?;
    let mut summary = Summary::default();
    let wanted = |id: u32| config.only.as_ref().is_none_or(|o| o.contains(&id));

    let registry = match Registry::load(&config.registry) {
        Ok(r) => r,
        Err(e @ (Error::Io(_) | Error::Schema { .. })) => return Err(e),
        Err(e) => {
            // The registry is parsed but its data is wrong: the twist check
            // is the one validating it, so it fails and nothing else runs.
            summary.records.push(failure(config, 2, "twist-relation", format!("registry rejected: {e}"), 0.0));
            write_outputs(config, &summary, None)?;
            return Ok(summary);
        }
    };
    summary.warnings.extend(registry.warnings().iter().cloned());

    let mut ctx = Ctx { config, registry: &registry, tables: &tables, example: None, moments: Vec::new() };
    let mut theta_table = None;
    for (id, name) in CHECKS {
        if !wanted(id) {
            continue;
        }
        let start = Instant::now();
        let outcome = match id {
            9 => ctx.example().and_then(|ex| {
                let t = verify_theta_table(ex, config.bounds.theta, config.strict_table2)?;
                let detail = t
                    .items
                    .iter()
                    .map(|i| format!("{}={}", i.name, i.survivors.join("|")))
                    .collect::<Vec<_>>()
                    .join("; ");
                let pass = t.all_pass();
                theta_table = Some(t);
                Ok((pass, detail))
            }),
            _ => ctx.check(id),
        };
        let seconds = start.elapsed().as_secs_f64();
        summary.records.push(match outcome {
            Ok((true, detail)) => CheckRecord { id, name: name.into(), pass: true, detail, reproducer: None, seconds },
            Ok((false, detail)) => failure(config, id, name, detail, seconds),
            Err(e) => failure(config, id, name, format!("error: {e}"), seconds),
        });
    }
    summary.moments = std::mem::take(&mut ctx.moments);
    write_outputs(config, &summary, theta_table.as_ref())?;
    Ok(summary)
}

fn failure(config: &RunConfig, id: u32, name: &str, detail: String, seconds: f64) -> CheckRecord {
    CheckRecord { id, name: name.into(), pass: false, detail, reproducer: Some(config.reproducer(id)), seconds }
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    id: u32,
    name: &'a str,
    pass: bool,
    detail: &'a str,
}

fn write_outputs(config: &RunConfig, summary: &Summary, theta: Option<&crate::pipeline::ThetaTable>) -> Result<()> {
    let Some(dir) = &config.out_dir else { return Ok(()) };
    let checks = dir.join("checks");
    std::fs::create_dir_all(&checks)?;
    for r in &summary.records {
        write_json(&checks.join(format!("{:02}-{}.json", r.id, r.name)), r)?;
    }
    let rows: Vec<SummaryRow> = summary
        .records
        .iter()
        .map(|r| SummaryRow { id: r.id, name: &r.name, pass: r.pass, detail: &r.detail })
        .collect();
    write_csv(std::fs::File::create(dir.join("summary.csv"))?, &["id", "name", "pass", "detail"], &rows)?;
    if let Some(t) = theta {
        write_json(&dir.join("theta_table.json"), t)?;
    }
    if !summary.moments.is_empty() {
        write_moments_csv(std::fs::File::create(dir.join("moments.csv"))?, &summary.moments)?;
    }
    if !summary.warnings.is_empty() {
        write_json(&dir.join("warnings.json"), &summary.warnings)?;
    }
    Ok(())
}

struct Ctx<'a> {
    config: &'a RunConfig,
    registry: &'a Registry,
    tables: &'a TableSet,
    example: Option<Example>,
    moments: Vec<MomentReport>,
}

impl Ctx<'_> {
    fn example(&mut self) -> Result<&Example> {
        if self.example.is_none() {
            let (f, g) = match &self.config.quartics {
                QuarticSource::Search { height } => find_quartic_pair(*height)?,
                QuarticSource::Given { f, f_prime } => {
                    (S4Field::new(f[0], f[1], f[2], f[3])?, S4Field::new(f_prime[0], f_prime[1], f_prime[2], f_prime[3])?)
                }
            };
            self.example = Some(Example::new(self.registry, self.tables.clone(), f, g)?);
        }
        Ok(self.example.as_ref().expect("just set"))
    }

    fn check(&mut self, id: u32) -> Outcome {
        let b = self.config.bounds.clone();
        match id {
            1 => check_c1(self.example()?, b.c1),
            2 => check_twist(self.registry, b.twist),
            3 => check_cubic(self.registry, &b.cubic_primes),
            4 => check_quadratic_rs(self.example()?, b.quadratic_rs),
            5 => check_calcfac(self.example()?, b.calcfac_per_class),
            6 => check_divisibility(self.example()?, b.divisibility, b.triple_twist),
            7 => check_theta_uniqueness(self.example()?, b.theta),
            8 => check_character_identities(self.tables),
            10 => check_closed_moments(self.tables),
            11 => {
                let skip = !self.config.include_supersingular;
                let (outcome, reports) = check_empirical_moments(self.example()?, b.moments, skip)?;
                self.moments = reports;
                Ok(outcome)
            }
            12 => check_chebotarev(self.example()?, b.chebotarev),
            13 => check_eigenvalues(self.tables),
            _ => Err(Error::InvalidArgument(format!("no check {id}"))),
        }
    }
}

/// Collects the first few mismatches of a per-prime comparison.
#[derive(Default)]
struct Tally {
    checked: usize,
    bad: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.bad.push(what());
        }
    }

    fn outcome(self, what: &str) -> (bool, String) {
        if self.bad.is_empty() {
            (true, format!("{what}: {} cases", self.checked))
        } else {
            let shown: Vec<&str> = self.bad.iter().take(5).map(String::as_str).collect();
            (false, format!("{what}: {} of {} fail, first {}", self.bad.len(), self.checked, shown.join("; ")))
        }
    }
}

/// `#C1(F_p) = 1 + p - 3 a21(p)`. A failure also says whether the counts fit
/// `a63` instead, which is what the shipped equation gives.
pub fn check_c1(ex: &Example, bound: u64) -> Outcome {
    let mut t = Tally::default();
    let mut fits_e63 = true;
    for p in primes_up_to(bound) {
        if p < 5 || ex.c1.bad_primes().contains(&p) || !ex.e21.is_good(p) {
            continue;
        }
        let n = count_quartic(&ex.c1, p)? as i64;
        let want = 1 + p as i64 - 3 * ap(&ex.e21, p)?;
        fits_e63 &= n == 1 + p as i64 - 3 * ap(&ex.e63, p)?;
        t.record(n == want, || format!("p={p}: {n} vs {want}"));
    }
    let (pass, mut detail) = t.outcome("#C1(F_p) = 1 + p - 3 a21");
    if !pass && fits_e63 {
        detail.push_str("; every count equals 1 + p - 3 a63");
    }
    Ok((pass, detail))
}

pub fn check_twist(registry: &Registry, bound: u64) -> Outcome {
    let e21 = registry.curve("21.A1")?;
    let e63 = registry.curve("63.A2")?;
    let mut t = Tally::default();
    for p in primes_up_to(bound) {
        if p <= 3 || !e21.is_good(p) || !e63.is_good(p) {
            continue;
        }
        let (a21, a63) = (ap(e21, p)?, ap(e63, p)?);
        let want = kronecker(-3, p) as i64 * a21;
        t.record(a63 == want, || format!("p={p}: a63={a63}, (-3|p) a21={want}"));
    }
    Ok(t.outcome("a63 = (-3|p) a21"))
}

pub fn check_cubic(registry: &Registry, primes: &[u64]) -> Outcome {
    let mut t = Tally::default();
    for e in registry.curves() {
        for &p in primes {
            if !e.is_good(p) {
                continue;
            }
            let formula = count_points_ext(e, p, 3, CountMode::Formula)?;
            let direct = count_points_ext(e, p, 3, CountMode::Enumerate)?;
            t.record(formula == direct, || format!("{} p={p}: {formula} vs {direct}", e.label()));
        }
    }
    Ok(t.outcome("#E(F_p^3) formula vs enumeration"))
}

pub fn check_quadratic_rs(ex: &Example, bound: u64) -> Outcome {
    let c2 = ex.c2();
    let chi_q = c2.character("chi_q")?;
    let mut t = Tally::default();
    for d in [-3i64, 5, -7] {
        let twist = quadratic_twist(&ex.e21, d)?;
        for p in primes_up_to(bound) {
            if p <= 3 || kronecker(d, p) == 0 || !ex.e21.is_good(p) || !twist.is_good(p) {
                continue;
            }
            let class = if kronecker(d, p) == 1 { 0 } else { 1 };
            let rs = rankin_selberg_elliptic(ap(&ex.e21, p)?, p, c2, chi_q, class)?;
            let direct = local_factor(&twist, p)?;
            t.record(rs.poly() == direct.poly(), || format!("d={d} p={p}: {rs} vs {direct}"));
        }
    }
    Ok(t.outcome("RS(E21, chi_d) = L_p(E21^(d))"))
}

pub fn check_calcfac(ex: &Example, per_class: usize) -> Outcome {
    let s4 = ex.s4();
    let chi4 = s4.character("chi4")?;
    let mut found = [0usize; 2];
    let mut t = Tally::default();
    for p in ex.good_primes(Side::F, u64::MAX >> 44) {
        if found.iter().all(|&n| n >= per_class) {
            break;
        }
        let label = frobenius_class(&ex.f, p)?.class;
        let (slot, case) = match label {
            "3a" => (0, CalcfacCase::Cubic),
            "4a" => (1, CalcfacCase::Quartic),
            _ => continue,
        };
        if found[slot] >= per_class {
            continue;
        }
        found[slot] += 1;
        let a = ap(&ex.e63, p)?;
        let closed = calcfac_closed_form(a, p, case)?;
        let rs = rankin_selberg_elliptic(a, p, s4, chi4, s4.class_index(label)?)?;
        t.record(closed.poly() == rs.poly(), || format!("p={p} ({label}): {closed} vs {rs}"));
    }
    if found.iter().any(|&n| n < per_class) {
        return Ok((false, format!("only {found:?} primes found in classes 3a, 4a")));
    }
    Ok(t.outcome("closed form = RS(E63, chi4)"))
}

pub fn check_divisibility(ex: &Example, bound: u64, triple_bound: u64) -> Outcome {
    let mut t = Tally::default();
    for p in ex.good_primes(Side::F, bound) {
        let (_, l) = ex.genus3_factor(Side::F, p)?;
        let a = ap(&ex.e63, p)?;
        t.record(divisible_by_elliptic(&l, a), || format!("p={p}: L_p(E63) does not divide {l}"));
    }
    let (ok, first) = t.outcome("L_p(E63) | L_p(J(C2))");
    let mut t = Tally::default();
    for p in primes_up_to(triple_bound) {
        if p <= 3 || 35 % p == 0 || !ex.e21.is_good(p) {
            continue;
        }
        t.record(triple_twist_divides(&ex.e21, 5, -7, p)?, || format!("p={p}"));
    }
    let (ok2, second) = t.outcome("triple twist (5, -7)");
    Ok((ok && ok2, format!("{first}; {second}")))
}

pub fn check_theta_uniqueness(ex: &Example, bound: u64) -> Outcome {
    let s4 = ex.s4();
    let cases = [
        ("theta21", solve(&ex.genus3_problem(Side::F, &ex.e21, bound)?)?, s4, vec![0, 0, 0, 0, 3]),
        ("E63 variant", solve(&ex.genus3_problem(Side::F, &ex.e63, bound)?)?, s4, vec![0, 0, 0, 3, 0]),
        ("twist toy", solve(&ex.twist_problem(-3, bound)?)?, ex.c2(), vec![0, 1]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, report, table, want) in cases {
        let got: Vec<String> = report.survivors.iter().map(|d| d.display(table)).collect();
        pass &= report.survivors == [Decomposition(want)];
        parts.push(format!("{name}: {}", got.join(" | ")));
    }
    Ok((pass, parts.join("; ")))
}

pub fn check_character_identities(tables: &TableSet) -> Outcome {
    let s4 = tables.get("S4")?;
    let t = tables.get("T288")?;
    let chi = |n: &str| s4.character(n);
    let psi = |n: &str| t.character(n);
    let mut bad = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    expect(psi("psi7")?.tensor(psi("psi9")?)?.same_values(psi("psi13")?), "psi7 psi9 = psi13");
    expect(t.inflate(chi("chi5")?, s4, "pi_L")?.same_values(psi("psi9")?), "Inf chi5 = psi9");
    expect(t.inflate(chi("chi5")?, s4, "pi_Lprime")?.same_values(psi("psi7")?), "Inf chi5' = psi7");
    let sum = |names: &[&str]| -> Result<ClassFunction> {
        names.iter().try_fold(s4.constant(0), |acc, n| acc.add(chi(n)?))
    };
    expect(chi("chi4")?.tensor(chi("chi5")?)?.same_values(&sum(&["chi2", "chi3", "chi4", "chi5"])?), "chi4 chi5");
    expect(chi("chi5")?.tensor(chi("chi5")?)?.same_values(&sum(&["chi1", "chi3", "chi4", "chi5"])?), "chi5^2");
    Ok(if bad.is_empty() {
        (true, "5 identities".into())
    } else {
        (false, format!("failing: {}", bad.join(", ")))
    })
}

/// `(coefficient, order, numerator, denominator)` of the exact values checked.
pub const CLOSED_MOMENTS: [(u8, u32, i64, i64); 4] = [(1, 1, 0, 1), (1, 2, 1, 1), (1, 4, 8, 1), (2, 1, 1, 1)];

pub fn check_closed_moments(tables: &TableSet) -> Outcome {
    let data = ClassData::from_table(tables.get("S4")?, "chi4")?;
    let mut t = Tally::default();
    for (i, n, num, den) in CLOSED_MOMENTS {
        let got = theoretical_moment(Coefficient::genus3(i)?, n, &data)?;
        let want = num_rational::BigRational::new(num.into(), den.into());
        t.record(got == want, || format!("M{n}(a{i}) = {got}, want {want}"));
    }
    Ok(t.outcome("exact moments"))
}

/// Moments checked empirically: `(coefficient, order)`.
pub const EMPIRICAL_MOMENTS: [(u8, u32); 4] = [(1, 2), (1, 4), (1, 1), (2, 1)];

pub fn check_empirical_moments(ex: &Example, bound: u64, skip_supersingular: bool) -> Result<((bool, String), Vec<MomentReport>)> {
    let s4 = ex.s4();
    let data = ClassData::from_table(s4, "chi4")?;
    let samples = collect_samples(&ex.e63, &ex.f, s4, "chi4", bound, skip_supersingular)?;
    let mut reports = Vec::new();
    for (i, n) in EMPIRICAL_MOMENTS {
        let c = Coefficient::genus3(i)?;
        reports.push(empirical_moment(&samples, c, n, theoretical_moment(c, n, &data)?)?);
    }
    for n in [1, 2] {
        reports.push(catalan_moment_check(&samples, n)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .map(|r| format!("M{}({})={:.4}~{}", r.order, r.coefficient, r.empirical, r.theoretical))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(((pass, format!("{} primes: {detail}", samples.len())), reports))
}

/// Largest allowed gap in percentage points.
pub const CHEBOTAREV_TOLERANCE: f64 = 5.0;

pub fn check_chebotarev(ex: &Example, bound: u64) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, field) in [("f", &ex.f), ("f'", &ex.f_prime)] {
        let counts = class_frequencies(field, bound)?;
        let dev = chebotarev_deviation(&counts);
        pass &= dev <= CHEBOTAREV_TOLERANCE;
        parts.push(format!("{name}: counts {counts:?}, max gap {dev:.2} pp"));
    }
    Ok((pass, parts.join("; ")))
}

pub fn check_eigenvalues(tables: &TableSet) -> Outcome {
    let mut t = Tally::default();
    for id in tables.ids() {
        let table = tables.get(id)?;
        for chi in table.irreducibles() {
            for (c, class) in table.classes().iter().enumerate() {
                let ok = match table.eigenvalue_multiset(chi, c) {
                    Ok(exps) => {
                        let back = CycloInt::sum_of_roots(class.order, exps.iter().map(|&k| k as i64));
                        chi.degree().is_some_and(|d| d == exps.len().into()) && &back == chi.value(c)
                    }
                    Err(_) => false,
                };
                t.record(ok, || format!("{id} {} at {}", chi.label(), class.label));
            }
        }
    }
    Ok(t.outcome("eigenvalue multisets"))
}

/// Config for the `data/` layout under `root`.
pub fn default_config(root: &Path) -> RunConfig {
    RunConfig::new(root.join("data/registry.json"), root.join("data/tables"))
}
