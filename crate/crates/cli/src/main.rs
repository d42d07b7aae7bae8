use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use artin_core::arith::numtheory::{kronecker, primes_up_to};
use artin_core::chars::TableSet;
use artin_core::curves::{ap, local_factor, EllipticCurve};
use artin_core::frobenius::{find_quartic_pair, find_s4_quartic, frobenius_class, S4Field};
use artin_core::lfun::{elliptic_poly, rankin_selberg_elliptic, res_scalars, LocalFactor, LocalFactorRecord};
use artin_core::pipeline::DEFAULT_HEIGHT;
use artin_core::registry::Registry;
use artin_core::report::{moments_csv_string, ratio_string};
use artin_core::satotate::{
    collect_samples, empirical_moment, theoretical_moment, ClassData, Coefficient, MomentReport,
};
use artin_core::theta::{enumerate_candidates, profile, rs_consistency_filter, HomConstraint, PrimeRecord, ThetaProblem};
use artin_core::verify::{verify_paper, Bounds, QuarticSource, RunConfig};
use artin_core::Error;

#[derive(Parser)]
#[command(name = "artin", version, about = "Artin representations of pairs of abelian varieties, checked at the level of characters and local factors")]
struct Cli {
    #[command(flatten)]
    data: DataArgs,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Curve registry JSON; the shipped registry when omitted.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// Directory holding the group tables; the shipped tables when omitted.
    #[arg(long, global = true)]
    tables: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// First S4 quartic with discriminant in -3 Q^2 up to the given height.
    FindQuartic {
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: i64,
        /// Also find the next quartic with a different cubic resolvent.
        #[arg(long)]
        pair: bool,
    },
    /// Frobenius class of a prime, or of every prime up to a bound.
    FrobClass {
        #[command(flatten)]
        quartic: QuarticArg,
        #[command(flatten)]
        primes: PrimeArg,
    },
    /// Trace of Frobenius.
    Ap {
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        primes: PrimeArg,
    },
    /// Local factor of a registered curve.
    LocalFactor {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        prime: u64,
    },
    /// Rankin-Selberg factor of a curve twisted by a character at a class.
    RankinSelberg {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value = "S4")]
        group: String,
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        prime: u64,
    },
    /// Restriction-of-scalars identity over Q(sqrt d).
    ResScalarsCheck {
        #[arg(long)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        primes: PrimeArg,
    },
    /// Solve for the Artin representation of a pair of varieties.
    Theta(ThetaArgs),
    /// One moment of a normalized coefficient, as a CSV row.
    Moments {
        /// 1, 2 or 3 for the genus-3 factor, `a` for the elliptic curve.
        #[arg(long)]
        coefficient: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 100_000)]
        primes: u64,
        #[arg(long, default_value = "63.A2")]
        curve: String,
        #[command(flatten)]
        quartic: QuarticArg,
        #[arg(long)]
        skip_supersingular: bool,
    },
    /// Run every check of the worked example.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct QuarticArg {
    /// Coefficients a,b,c,d of x^4 + a x^3 + b x^2 + c x + d; searched when omitted.
    #[arg(long, value_parser = parse_quartic, allow_hyphen_values = true)]
    quartic: Option<[i64; 4]>,
}

impl QuarticArg {
    fn field(&self) -> Result<S4Field> {
        Ok(match self.quartic {
            Some([a, b, c, d]) => S4Field::new(a, b, c, d)?,
            None => find_s4_quartic(DEFAULT_HEIGHT, &[])?,
        })
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PrimeArg {
    #[arg(long)]
    prime: Option<u64>,
    /// Every prime up to this bound.
    #[arg(long)]
    primes: Option<u64>,
}

impl PrimeArg {
    fn list(&self) -> Vec<u64> {
        match (self.prime, self.primes) {
            (Some(p), _) => vec![p],
            (None, Some(n)) => primes_up_to(n),
            (None, None) => unreachable!("clap requires one"),
        }
    }

    fn single(&self) -> bool {
        self.prime.is_some()
    }
}

#[derive(Args)]
struct ThetaArgs {
    #[arg(long, default_value = "S4")]
    group: String,
    #[arg(long)]
    dim: usize,
    /// Label of the elliptic curve on the left.
    #[arg(long)]
    left: String,
    /// Right variety as `LABEL:CHAR`, the Rankin-Selberg twist of a curve.
    #[arg(long)]
    right_rs: String,
    #[arg(long, default_value_t = 1000)]
    primes: u64,
    /// `trivial:0`, `chi2:0` or `classes=1a,2a:3`; repeatable.
    #[arg(long = "hom-constraint")]
    constraints: Vec<HomConstraint>,
    #[command(flatten)]
    quartic: QuarticArg,
    /// For the C2 table: Frobenius class from the Kronecker symbol (d|p).
    #[arg(long, allow_hyphen_values = true)]
    quadratic: Option<i64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only these check ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u32>>,
    #[arg(long)]
    height: Option<i64>,
    #[arg(long, value_parser = parse_quartic, allow_hyphen_values = true, requires = "quartic_prime")]
    quartic: Option<[i64; 4]>,
    #[arg(long, value_parser = parse_quartic, allow_hyphen_values = true, requires = "quartic")]
    quartic_prime: Option<[i64; 4]>,
    #[arg(long)]
    skip_supersingular: bool,
    #[arg(long)]
    strict_table2: bool,
    #[arg(long, default_value_t = 100_000)]
    moment_primes: u64,
    #[arg(long, default_value_t = 1000)]
    theta_primes: u64,
    #[arg(long, default_value_t = 10_000)]
    chebotarev_primes: u64,
}

fn parse_quartic(s: &str) -> std::result::Result<[i64; 4], String> {
    let v: Vec<i64> =
        s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}"))).collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<i64>| format!("expected 4 coefficients, got {}", v.len()))
}

struct Data {
    registry: Registry,
    tables: TableSet,
}

impl Data {
    fn load(args: &DataArgs) -> Result<Self> {
        let registry = match &args.registry {
            Some(p) => Registry::load(p).with_context(|| format!("loading {}", p.display()))?,
            None => Registry::builtin(),
        };
        for w in registry.warnings() {
            eprintln!("warning: {w}");
        }
        let tables = match &args.tables {
            Some(d) => TableSet::load_dir(d).with_context(|| format!("loading tables from {}", d.display()))?,
            None => TableSet::builtin(),
        };
        Ok(Data { registry, tables })
    }

    fn curve(&self, label: &str) -> Result<&EllipticCurve> {
        Ok(self.registry.curve(label)?)
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

/// Writes to stdout, reporting a closed pipe as an error instead of panicking.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// `(1 - aT + pT^2) * (rest)` when the elliptic factor divides.
fn factored(l: &LocalFactor, a: i64) -> String {
    let e = elliptic_poly(a, l.prime());
    match e.divides(l.poly()) {
        Some(q) if l.genus() > 1 => format!("({e})*({q})"),
        _ => l.to_string(),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let data = || Data::load(&cli.data);
    match &cli.command {
        Command::FindQuartic { height, pair } => {
            let fields = if *pair {
                let (f, g) = find_quartic_pair(*height)?;
                vec![f, g]
            } else {
                vec![find_s4_quartic(*height, &[])?]
            };
            let out: Vec<_> = fields
                .iter()
                .map(|f| {
                    json!({
                        "coefficients": f.coefficients(),
                        "polynomial": f.to_string(),
                        "discriminant": f.discriminant().to_string(),
                        "bad_primes": f.bad_primes(),
                        "irreducibility_witness": f.irreducibility_witness(),
                    })
                })
                .collect();
            print_json(&out)?;
        }
        Command::FrobClass { quartic, primes } => {
            let field = quartic.field()?;
            let mut out = Vec::new();
            for p in primes.list() {
                match frobenius_class(&field, p) {
                    Ok(d) => out.push(d),
                    Err(e @ Error::RamifiedPrime { .. }) if !primes.single() => eprintln!("ramified: {e}"),
                    Err(e) => return Err(e.into()),
                }
            }
            print_json(&out)?;
        }
        Command::Ap { curve, primes } => {
            let data = data()?;
            let e = data.curve(curve)?;
            let mut out = Vec::new();
            for p in primes.list() {
                if !primes.single() && (p <= 3 || !e.is_good(p)) {
                    continue;
                }
                out.push(json!({ "p": p, "ap": ap(e, p)? }));
            }
            print_json(&out)?;
        }
        Command::LocalFactor { curve, prime } => {
            let data = data()?;
            let l = local_factor(data.curve(curve)?, *prime)?;
            print_json(&LocalFactorRecord::from(&l))?;
        }
        Command::RankinSelberg { curve, group, character, class, prime } => {
            let data = data()?;
            let table = data.tables.get(group)?;
            let a = ap(data.curve(curve)?, *prime)?;
            let l = rankin_selberg_elliptic(a, *prime, table, table.character(character)?, table.class_index(class)?)?;
            let mut rec = serde_json::to_value(LocalFactorRecord::from(&l))?;
            rec["factored"] = json!(factored(&l, a));
            print_json(&rec)?;
        }
        Command::ResScalarsCheck { curve, d, primes } => {
            let data = data()?;
            let e = data.curve(curve)?;
            let mut all = true;
            let mut out = Vec::new();
            for p in primes.list() {
                if !primes.single() && (p <= 3 || !e.is_good(p) || *d % p as i64 == 0) {
                    continue;
                }
                let r = res_scalars(e, *d, p)?;
                all &= r.holds();
                out.push(json!({
                    "p": p,
                    "split": r.split,
                    "restriction": r.restriction.to_string(),
                    "product": r.product.to_string(),
                    "holds": r.holds(),
                }));
            }
            print_json(&out)?;
            if !all {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Theta(args) => {
            let data = data()?;
            theta(&data, args)?;
        }
        Command::Moments { coefficient, order, primes, curve, quartic, skip_supersingular } => {
            let data = data()?;
            let report = moments(&data, coefficient, *order, *primes, curve, quartic, *skip_supersingular)?;
            emit(&moments_csv_string(&[report])?)?;
        }
        Command::VerifyPaper(args) => return verify(&cli, args),
    }
    Ok(ExitCode::SUCCESS)
}

fn theta(data: &Data, args: &ThetaArgs) -> Result<()> {
    let table = data.tables.get(&args.group)?;
    let left = data.curve(&args.left)?;
    let (right_label, right_char) =
        args.right_rs.split_once(':').context("--right-rs must be LABEL:CHAR")?;
    let right = data.curve(right_label)?;
    let chi = table.character(right_char)?;
    let k = chi.degree().and_then(|d| usize::try_from(d).ok()).context("character degree")?;
    if args.dim % k != 0 {
        bail!("dimension {} is not a multiple of deg {right_char} = {k}", args.dim);
    }
    let classes: Box<dyn Fn(u64) -> Result<Option<usize>>> = match (args.quadratic, table.classes().len()) {
        (Some(d), 2) => Box::new(move |p| {
            Ok(match kronecker(d, p) {
                0 => None,
                1 => Some(0),
                _ => Some(1),
            })
        }),
        (Some(_), _) => bail!("--quadratic needs a two-class table"),
        (None, _) => {
            let field = args.quartic.field()?;
            Box::new(move |p| {
                if !field.is_good(p) {
                    return Ok(None);
                }
                Ok(Some(table.class_index(frobenius_class(&field, p)?.class)?))
            })
        }
    };
    let mut records = Vec::new();
    for p in primes_up_to(args.primes) {
        if p <= 3 || !left.is_good(p) || !right.is_good(p) {
            continue;
        }
        let Some(class) = classes(p)? else { continue };
        let right_factor = rankin_selberg_elliptic(ap(right, p)?, p, table, chi, class)?;
        records.push(PrimeRecord { p, class, left_trace: ap(left, p)?, right: right_factor });
    }
    let problem = ThetaProblem {
        table,
        dim: args.dim,
        left_power: args.dim / k,
        constraints: args.constraints.clone(),
        records,
    };
    let candidates = enumerate_candidates(table, problem.dim, &problem.constraints)?;
    let report = rs_consistency_filter(&candidates, &problem)?;
    let eliminated: Vec<_> = report
        .eliminated
        .iter()
        .map(|(d, why)| json!({ "candidate": d.display(table), "eliminated_by": why }))
        .collect();
    let survivors: Vec<_> = report.survivors.iter().map(|d| profile(table, d)).collect::<Result<_, _>>()?;
    print_json(&json!({
        "group": table.id(),
        "dim": problem.dim,
        "left_power": problem.left_power,
        "primes": problem.records.len(),
        "candidates": candidates.len(),
        "eliminated": eliminated,
        "survivors": survivors,
    }))
}

fn moments(
    data: &Data,
    coefficient: &str,
    order: u32,
    bound: u64,
    curve: &str,
    quartic: &QuarticArg,
    skip_supersingular: bool,
) -> Result<MomentReport> {
    let table = data.tables.get("S4")?;
    let field = quartic.field()?;
    let samples = collect_samples(data.curve(curve)?, &field, table, "chi4", bound, skip_supersingular)?;
    let c = match coefficient {
        "a" => Coefficient::Elliptic,
        i => Coefficient::genus3(i.parse().with_context(|| format!("coefficient '{i}'"))?)?,
    };
    let exact = theoretical_moment(c, order, &ClassData::from_table(table, "chi4")?)?;
    eprintln!("theoretical {}", ratio_string(&exact));
    Ok(empirical_moment(&samples, c, order, exact)?)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode> {
    let mut config = RunConfig::new(
        cli.data.registry.clone().unwrap_or_else(|| "data/registry.json".into()),
        cli.data.tables.clone().unwrap_or_else(|| "data/tables".into()),
    );
    config.bounds = Bounds {
        moments: args.moment_primes,
        theta: args.theta_primes,
        chebotarev: args.chebotarev_primes,
        ..Bounds::default()
    };
    config.quartics = match (args.quartic, args.quartic_prime, args.height) {
        (Some(f), Some(f_prime), _) => QuarticSource::Given { f, f_prime },
        (_, _, Some(height)) => QuarticSource::Search { height },
        _ => QuarticSource::Search { height: DEFAULT_HEIGHT },
    };
    config.out_dir = args.out.clone();
    config.threads = cli.threads;
    config.include_supersingular = !args.skip_supersingular;
    config.strict_table2 = args.strict_table2;
    config.only = args.only.clone();
    let summary = verify_paper(&config)?;
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    emit(&summary.table())?;
    Ok(ExitCode::from(summary.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
