//! Acceptance criteria 1 to 13, one line each. Run with
//! `cargo test -p artin-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use artin_core::arith::cyclo::CycloInt;
use artin_core::arith::numtheory::{kronecker, primes_up_to};
use artin_core::curves::{ap, count_points_ext, count_quartic, local_factor, quadratic_twist, CountMode};
use artin_core::frobenius::{chebotarev_deviation, class_frequencies, frobenius_class};
use artin_core::lfun::{
    calcfac_closed_form, divisible_by_elliptic, rankin_selberg_elliptic, triple_twist_divides, CalcfacCase,
};
use artin_core::pipeline::{verify_theta_table, Example, Side, DEFAULT_HEIGHT};
use artin_core::satotate::{
    catalan_moment_check, collect_samples, empirical_moment, theoretical_moment, ClassData, Coefficient,
};
use artin_core::theta::{solve, Decomposition};
use num_bigint::BigInt;
use num_rational::BigRational;

const CHEBOTAREV_PP: f64 = 5.0;
const MOMENT_FLOOR: f64 = 0.1;
const MOMENT_SIGMAS: f64 = 3.0;

/// Criteria that cannot hold with correct data, and why.
const KNOWN_FAILURES: [(u32, &str); 1] =
    [(1, "the printed C1 equation has J(C1) ~ E63^3 over Q: counts equal 1 + p - 3 a63(p)")];

type Check = fn(&Example) -> (bool, String);

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: Check,
}

fn lines(ok: bool, bad: &[String], what: String) -> (bool, String) {
    if bad.is_empty() {
        (ok, what)
    } else {
        (false, format!("{what}; first failures: {}", bad.iter().take(4).cloned().collect::<Vec<_>>().join("; ")))
    }
}

fn c1_identity(ex: &Example) -> (bool, String) {
    let mut bad = Vec::new();
    let mut n_primes = 0;
    let mut e63_fits = true;
    for p in primes_up_to(199).into_iter().filter(|&p| p >= 5 && p != 7) {
        n_primes += 1;
        let n = count_quartic(&ex.c1, p).unwrap() as i64;
        let want = 1 + p as i64 - 3 * ap(&ex.e21, p).unwrap();
        e63_fits &= n == 1 + p as i64 - 3 * ap(&ex.e63, p).unwrap();
        if n != want {
            bad.push(format!("p={p}: #C1={n}, 1+p-3a21={want}"));
        }
    }
    let note = if e63_fits { ", counts match 1 + p - 3 a63 at all of them" } else { "" };
    lines(true, &bad, format!("{} of {n_primes} primes disagree{note}", bad.len()))
}

fn twist_relation(ex: &Example) -> (bool, String) {
    let mut bad = Vec::new();
    let primes: Vec<u64> =
        primes_up_to(500).into_iter().filter(|&p| p > 3 && ex.e21.is_good(p) && ex.e63.is_good(p)).collect();
    for &p in &primes {
        let (a21, a63) = (ap(&ex.e21, p).unwrap(), ap(&ex.e63, p).unwrap());
        if a63 != kronecker(-3, p) as i64 * a21 {
            bad.push(format!("p={p}: a63={a63}, a21={a21}"));
        }
    }
    lines(true, &bad, format!("{} good primes <= 500", primes.len()))
}

fn cubic_base_change(ex: &Example) -> (bool, String) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for e in [&ex.e21, &ex.e63] {
        for p in [5u64, 7, 11, 13].into_iter().filter(|&p| e.is_good(p)) {
            cases += 1;
            let a = BigInt::from(ap(e, p).unwrap());
            let pb = BigInt::from(p);
            let formula = 1 + pb.pow(3) - a.pow(3) + 3 * &a * &pb;
            let direct = count_points_ext(e, p, 3, CountMode::Enumerate).unwrap();
            if formula != direct {
                bad.push(format!("{} p={p}: {formula} vs {direct}", e.label()));
            }
        }
    }
    lines(true, &bad, format!("{cases} (curve, p) pairs enumerated over F_p^3"))
}

fn quadratic_rs(ex: &Example) -> (bool, String) {
    let c2 = ex.c2();
    let chi_q = c2.character("chi_q").unwrap();
    let mut bad = Vec::new();
    let mut cases = 0;
    for d in [-3i64, 5, -7] {
        let twist = quadratic_twist(&ex.e21, d).unwrap();
        for p in primes_up_to(200) {
            if p <= 3 || kronecker(d, p) == 0 || !ex.e21.is_good(p) || !twist.is_good(p) {
                continue;
            }
            cases += 1;
            let class = if kronecker(d, p) == 1 { 0 } else { 1 };
            let rs = rankin_selberg_elliptic(ap(&ex.e21, p).unwrap(), p, c2, chi_q, class).unwrap();
            let direct = local_factor(&twist, p).unwrap();
            if rs.poly() != direct.poly() {
                bad.push(format!("d={d} p={p}"));
            }
        }
    }
    lines(true, &bad, format!("{cases} (d, p) pairs"))
}

fn calcfac(ex: &Example) -> (bool, String) {
    let s4 = ex.s4();
    let chi4 = s4.character("chi4").unwrap();
    let (mut n3, mut n4) = (0, 0);
    let mut bad = Vec::new();
    for p in ex.good_primes(Side::F, 2000) {
        let label = frobenius_class(&ex.f, p).unwrap().class;
        let case = match label {
            "3a" => {
                n3 += 1;
                CalcfacCase::Cubic
            }
            "4a" => {
                n4 += 1;
                CalcfacCase::Quartic
            }
            _ => continue,
        };
        let a = ap(&ex.e63, p).unwrap();
        let closed = calcfac_closed_form(a, p, case).unwrap();
        let rs = rankin_selberg_elliptic(a, p, s4, chi4, s4.class_index(label).unwrap()).unwrap();
        if closed.poly() != rs.poly() {
            bad.push(format!("p={p} ({label})"));
        }
    }
    lines(n3 >= 10 && n4 >= 10, &bad, format!("{n3} primes in 3a, {n4} in 4a"))
}

fn divisibility(ex: &Example) -> (bool, String) {
    let mut bad = Vec::new();
    let primes = ex.good_primes(Side::F, 2000);
    for &p in &primes {
        let (_, l) = ex.genus3_factor(Side::F, p).unwrap();
        if !divisible_by_elliptic(&l, ap(&ex.e63, p).unwrap()) {
            bad.push(format!("p={p}"));
        }
    }
    let mut triple = 0;
    for p in primes_up_to(500).into_iter().filter(|&p| p > 3 && 35 % p != 0 && ex.e21.is_good(p)) {
        triple += 1;
        if !triple_twist_divides(&ex.e21, 5, -7, p).unwrap() {
            bad.push(format!("triple twist p={p}"));
        }
    }
    lines(true, &bad, format!("{} primes for J(C2), {triple} for the (5, -7) triple twist", primes.len()))
}

fn theta_uniqueness(ex: &Example) -> (bool, String) {
    let runs = [
        ("theta21", solve(&ex.genus3_problem(Side::F, &ex.e21, 1000).unwrap()), vec![0, 0, 0, 0, 3]),
        ("E63 variant", solve(&ex.genus3_problem(Side::F, &ex.e63, 1000).unwrap()), vec![0, 0, 0, 3, 0]),
        ("twist toy", solve(&ex.twist_problem(-3, 1000).unwrap()), vec![0, 1]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, report, want) in runs {
        let report = report.unwrap();
        ok &= report.survivors == [Decomposition(want)];
        let table = if name == "twist toy" { ex.c2() } else { ex.s4() };
        let shown: Vec<String> = report.survivors.iter().map(|d| d.display(table)).collect();
        parts.push(format!("{name} -> {}", shown.join(" | ")));
    }
    (ok, parts.join(", "))
}

fn character_identities(ex: &Example) -> (bool, String) {
    let (s4, t) = (ex.s4(), ex.t288());
    let chi = |n| s4.character(n).unwrap();
    let psi = |n| t.character(n).unwrap();
    let mut bad = Vec::new();
    if psi("psi7").tensor(psi("psi9")).unwrap().values() != psi("psi13").values() {
        bad.push("psi7 psi9".to_string());
    }
    if t.inflate(chi("chi5"), s4, "pi_L").unwrap().values() != psi("psi9").values() {
        bad.push("Inf chi5".to_string());
    }
    if t.inflate(chi("chi5"), s4, "pi_Lprime").unwrap().values() != psi("psi7").values() {
        bad.push("Inf chi5'".to_string());
    }
    if s4.decompose(&chi("chi4").tensor(chi("chi5")).unwrap(), artin_core::chars::DecomposeMode::Orthogonality)
        .unwrap()
        .to_integers()
        .unwrap()
        != [0, 1, 1, 1, 1]
    {
        bad.push("chi4 chi5".to_string());
    }
    let sq = chi("chi5").tensor(chi("chi5")).unwrap();
    if s4.combination(&[1, 0, 1, 1, 1]).unwrap().values() != sq.values() {
        bad.push("chi5^2".to_string());
    }
    lines(true, &bad, "5 identities".into())
}

fn theta_table(ex: &Example) -> (bool, String) {
    let t = verify_theta_table(ex, 1000, true).unwrap();
    let shown: Vec<String> = t.items.iter().map(|i| format!("{}={}", i.name, i.survivors.join("|"))).collect();
    let want = ["3*chi5", "3*chi5'", "6*chi_t + 3*chi_q", "chi4 + 2*chi5", "chi4' + 2*chi5'", "psi13"];
    let exact = t.items.iter().map(|i| i.survivors.clone()).eq(want.iter().map(|w| vec![w.to_string()]));
    (t.all_pass() && exact, shown.join(", "))
}

fn closed_moments(ex: &Example) -> (bool, String) {
    let data = ClassData::from_table(ex.s4(), "chi4").unwrap();
    let cases = [(1u8, 1u32, 0i64), (1, 2, 1), (1, 4, 8), (2, 1, 1)];
    let mut bad = Vec::new();
    for (i, n, want) in cases {
        let got = theoretical_moment(Coefficient::Genus3(i), n, &data).unwrap();
        if got != BigRational::from_integer(want.into()) {
            bad.push(format!("M{n}(a{i}) = {got}"));
        }
    }
    lines(true, &bad, "M1(a1)=0, M2(a1)=1, M4(a1)=8, M1(a2)=1".into())
}

fn empirical_moments(ex: &Example) -> (bool, String) {
    let s4 = ex.s4();
    let data = ClassData::from_table(s4, "chi4").unwrap();
    let samples = collect_samples(&ex.e63, &ex.f, s4, "chi4", 100_000, false).unwrap();
    let mut reports = Vec::new();
    for (i, n) in [(1u8, 2u32), (1, 4), (1, 1), (2, 1)] {
        let c = Coefficient::Genus3(i);
        reports.push(empirical_moment(&samples, c, n, theoretical_moment(c, n, &data).unwrap()).unwrap());
    }
    reports.push(catalan_moment_check(&samples, 1).unwrap());
    reports.push(catalan_moment_check(&samples, 2).unwrap());
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &reports {
        let th = r.theoretical.numer().to_string().parse::<f64>().unwrap()
            / r.theoretical.denom().to_string().parse::<f64>().unwrap();
        let tol = MOMENT_FLOOR.max(MOMENT_SIGMAS * r.stderr);
        ok &= (r.empirical - th).abs() <= tol;
        parts.push(format!("M{}({})={:.3} vs {th}", r.order, r.coefficient, r.empirical));
    }
    (ok, format!("{} primes: {}", samples.len(), parts.join(", ")))
}

fn chebotarev(ex: &Example) -> (bool, String) {
    let counts = class_frequencies(&ex.f, 10_000).unwrap();
    let dev = chebotarev_deviation(&counts);
    (dev <= CHEBOTAREV_PP, format!("counts {counts:?}, max gap {dev:.2} pp"))
}

fn eigenvalue_round_trip(ex: &Example) -> (bool, String) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for table in [ex.s4(), ex.t288()] {
        for chi in table.irreducibles() {
            for (c, class) in table.classes().iter().enumerate() {
                cases += 1;
                let ok = table.eigenvalue_multiset(chi, c).is_ok_and(|exps| {
                    let back = CycloInt::sum_of_roots(class.order, exps.iter().map(|&k| k as i64));
                    chi.degree() == Some(exps.len().into()) && &back == chi.value(c)
                });
                if !ok {
                    bad.push(format!("{} {} at {}", table.id(), chi.label(), class.label));
                }
            }
        }
    }
    lines(true, &bad, format!("{cases} (character, class) pairs on S4 and the order-288 table"))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "C1 point count", limit: secs(10), run: c1_identity },
        Criterion { id: 2, name: "twist relation", limit: None, run: twist_relation },
        Criterion { id: 3, name: "cubic base change", limit: secs(5), run: cubic_base_change },
        Criterion { id: 4, name: "quadratic Rankin-Selberg", limit: None, run: quadratic_rs },
        Criterion { id: 5, name: "calcfac equivalence", limit: None, run: calcfac },
        Criterion { id: 6, name: "divisibility", limit: None, run: divisibility },
        Criterion { id: 7, name: "theta uniqueness", limit: secs(30), run: theta_uniqueness },
        Criterion { id: 8, name: "character identities", limit: None, run: character_identities },
        Criterion { id: 9, name: "theta table", limit: None, run: theta_table },
        Criterion { id: 10, name: "closed-form moments", limit: None, run: closed_moments },
        Criterion { id: 11, name: "empirical moments", limit: secs(180), run: empirical_moments },
        Criterion { id: 12, name: "Chebotarev", limit: None, run: chebotarev },
        Criterion { id: 13, name: "eigenvalue round trip", limit: None, run: eigenvalue_round_trip },
    ];
    let ex = Example::builtin(DEFAULT_HEIGHT).expect("builtin data");
    println!("quartics: f = {}, f' = {}", ex.f, ex.f_prime);

    let (mut passed, mut known, mut unexpected) = (0, 0, 0);
    for c in &criteria {
        let start = Instant::now();
        let (ok, detail) = (c.run)(&ex);
        let took = start.elapsed();
        let in_time = c.limit.is_none_or(|l| took <= l);
        let pass = ok && in_time;
        let known_reason = KNOWN_FAILURES.iter().find(|(id, _)| *id == c.id).map(|(_, r)| *r);
        let verdict = match (pass, known_reason) {
            (true, None) => {
                passed += 1;
                "PASS"
            }
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (listed as a known failure)"
            }
            (false, Some(_)) => {
                known += 1;
                "FAIL (known)"
            }
            (false, None) => {
                unexpected += 1;
                "FAIL"
            }
        };
        let limit = c.limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        println!("criterion {:>2} {:<26} {verdict:<13} {:>7.2}s{limit}  {detail}", c.id, c.name, took.as_secs_f64());
        if !in_time {
            println!("             over the time limit");
        }
        if let (false, Some(reason)) = (pass, known_reason) {
            println!("             known: {reason}");
        }
    }
    println!("acceptance: {passed} passed, {known} known failures, {unexpected} unexpected");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
