//! Command-line interface: construct, inspect, enumerate, bound-check, and
//! verify monotone 3-CNF transversal machinery.  Machine-readable output is
//! line-delimited `key=value` records (see FORMATS.md).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use transversal_lab::bounds::{phi_upper, six_quarter_bound, BoundQuery, ExactValue};
use transversal_lab::classify::{detect_configuration, find_property, formula_type, FormulaType};
use transversal_lab::cnf::{mask_to_vars, MonotoneCnf, Var};
use transversal_lab::constructions::{
    build_family, expected_count, parse_spec, FamilySpec,
};
use transversal_lab::enumerate::{
    certify_bound, enumerate_min_transversals, EnumStats, Mode,
};
use transversal_lab::{bounds, circuits, mcnf, oracle, tables};

#[derive(Parser)]
#[command(
    name = "transversal-lab",
    about = "Local enumeration machinery for monotone 3-CNF transversals",
    version
)]
struct Cli {
    /// Worker-thread cap (default: TRANSVERSAL_LAB_JOBS, else all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction from a spec string and emit MCNF.
    Construct(ConstructArgs),
    /// Count the size-t transversals of an MCNF formula.
    Count(CountArgs),
    /// Enumerate the minimum transversals of an MCNF formula.
    Enumerate(EnumerateArgs),
    /// Report formula type, matched property, and configuration.
    Classify(InputArgs),
    /// Print the closed-form per-type upper bound Φ(s, t).
    Bound(BoundArgs),
    /// Run the golden-table verification suite (CI gate).
    Verify(VerifyArgs),
    /// Exhaustive extremal search for Θ(n,t,3) (small n).
    Search(SearchArgs),
    /// Build and verify a depth-3 monotone threshold circuit.
    Circuit(CircuitArgs),
    /// Audit the branching rule tables against the closed forms.
    Audit,
}

#[derive(Args)]
struct ConstructArgs {
    /// Spec string, e.g. "K(4,3)", "T3(6)", "2*K(3,3)+Kdef(4,1)",
    /// "fam(2o,s=3,t=4)", "P(s=2,t=3)", "n3tm1(t=4)".
    spec: String,
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// MCNF input file (default: stdin).
    file: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Transversal size (default: the transversal number).
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Structured,
    Generic,
    Both,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Claimed transversal number (default: computed).
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum, default_value = "structured")]
    mode: ModeArg,
    /// Also check the count against the closed-form bounds.
    #[arg(long)]
    certify: bool,
    /// Suppress the per-transversal member records.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "0")]
    T0,
    #[value(name = "1")]
    T1,
    #[value(name = "2o")]
    T2o,
    #[value(name = "2d")]
    T2d,
    #[value(name = "3")]
    T3,
    #[value(name = "4")]
    T4,
}

impl From<TypeArg> for FormulaType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::T0 => FormulaType::T0,
            TypeArg::T1 => FormulaType::T1,
            TypeArg::T2o => FormulaType::T2o,
            TypeArg::T2d => FormulaType::T2d,
            TypeArg::T3 => FormulaType::T3,
            TypeArg::T4 => FormulaType::T4,
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    /// Formula type: 0, 1, 2o, 2d, 3, or 4.
    #[arg(long = "type", value_enum)]
    ftype: TypeArg,
    #[arg(long)]
    s: i64,
    #[arg(long)]
    t: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    /// Constructions, closed forms, table audit, bound order, small
    /// differential.
    Quick,
    /// Quick plus the exhaustive oracle, the large differential run, and the
    /// circuit grid.
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "full")]
    level: VerifyLevel,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: u32,
    /// Search clause widths 1-3 instead of 3-uniform only.
    #[arg(long)]
    mixed: bool,
}

#[derive(Args)]
struct CircuitArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: u32,
    /// Seed construction spec (default: the type-0 family for (n, t)).
    #[arg(long)]
    seed: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        std::env::set_var("TRANSVERSAL_LAB_JOBS", jobs.to_string());
    }
    match run(cli.command) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Ok(false) = verification failure (exit 1); Err = usage/input error (exit 2).
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Construct(args) => {
            let cnf = parse_spec(&args.spec)?;
            let text = mcnf::serialize(&cnf);
            match args.output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Count(args) => {
            let cnf = read_input(&args.input)?;
            let t = args.t.unwrap_or_else(|| cnf.transversal_number());
            let count = cnf.brute_force_transversals(t).len();
            println!("n={} m={} t={t} count={count}", cnf.n(), cnf.num_clauses());
            Ok(true)
        }
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Classify(input) => {
            let cnf = read_input(&input)?.normalize();
            if cnf.clauses().iter().any(|c| c.width() < 2) {
                bail!("classification requires a unit-free formula");
            }
            let t = cnf.transversal_number();
            let ftype = formula_type(&cnf);
            let s = cnf.deficit(t);
            let property = find_property(&cnf, ftype, bounds::Parity::of(s.max(1)))
                .map(|p| p.id().to_string())
                .unwrap_or_else(|| "none".into());
            let configuration = detect_configuration(&cnf)
                .map(|c| configuration_record(&c))
                .unwrap_or_else(|| "none".into());
            println!(
                "n={} m={} t={t} s={s} type={ftype} property={property} configuration={configuration}",
                cnf.n(),
                cnf.num_clauses()
            );
            Ok(true)
        }
        Command::Bound(args) => {
            let ftype: FormulaType = args.ftype.into();
            let phi = phi_upper(BoundQuery { ftype, s: args.s, t: args.t })
                .map_err(|e| anyhow!("{e}"))?;
            println!(
                "type={ftype} s={} t={} phi={}",
                args.s,
                args.t,
                rational(&phi)
            );
            Ok(true)
        }
        Command::Verify(args) => verify(args.level),
        Command::Search(args) => {
            let result = if args.mixed {
                oracle::extremal_search_mixed(args.n, args.t)
            } else {
                oracle::extremal_search(args.n, args.t)
            }
            .map_err(|e| anyhow!("{e}"))?;
            println!(
                "n={} t={} theta={} argmax={} elapsed_ms={}",
                result.n,
                result.t,
                result.max_count,
                result.argmax.len(),
                result.elapsed.as_millis()
            );
            Ok(true)
        }
        Command::Circuit(args) => {
            let seed = match &args.seed {
                Some(spec) => parse_spec(spec)?,
                None => build_family(FamilySpec {
                    ftype: FormulaType::T0,
                    s: 3 * args.t as i64 - args.n as i64,
                    t: args.t,
                })?,
            };
            if seed.n() != args.n {
                bail!("seed has {} variables, expected {}", seed.n(), args.n);
            }
            let circuit = circuits::build_threshold_circuit(args.n, args.t, &seed)?;
            let verified = circuits::verify_circuit(&circuit)?;
            let lower = circuits::size_bounds(&circuit)
                .map(|(l, _)| l.to_string())
                .unwrap_or_else(|_| "unknown".into());
            println!(
                "n={} t={} size={} lower={lower} verified={verified}",
                args.n,
                args.t,
                circuit.size()
            );
            Ok(verified)
        }
        Command::Audit => {
            let records = tables::audit_rule_tables();
            let mut clean = true;
            for r in &records {
                println!(
                    "table={} clean={} row_mismatches={} total_mismatches={}",
                    r.table,
                    r.is_clean(),
                    r.mismatched_rows.len(),
                    r.mismatched_totals.len()
                );
                clean &= r.is_clean();
            }
            println!("audit tables={} clean={clean}", records.len());
            Ok(clean)
        }
    }
}

fn read_input(input: &InputArgs) -> Result<MonotoneCnf> {
    let text = match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    Ok(mcnf::parse(&text)?)
}

fn rational(v: &ExactValue) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Render a configuration with 1-based variable indices.
fn configuration_record(c: &transversal_lab::classify::Configuration) -> String {
    use transversal_lab::classify::Configuration::*;
    let one = |v: Var| v + 1;
    let list = |vs: &[Var]| {
        vs.iter()
            .map(|&v| one(v).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match c {
        PairInGe3Clauses { a, b } => format!("pair-in-ge3-clauses({},{})", one(*a), one(*b)),
        VarInGe3Clauses { a } => format!("var-in-ge3-clauses({})", one(*a)),
        PairInExactly2 { a, b } => format!("pair-in-exactly-2({},{})", one(*a), one(*b)),
        Triangle { corners } => format!("triangle({})", list(corners)),
        EConfig { spine } => format!("e-configuration({})", list(spine)),
        UniqueVar { a } => format!("unique-variable({})", one(*a)),
        Path { vars } => format!("path({})", list(vars)),
        Cycle { vars } => format!("cycle({})", list(vars)),
    }
}

fn member_vars(mask: u64) -> String {
    mask_to_vars(mask)
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn print_stats(mode: &str, stats: &EnumStats) {
    println!(
        "stats mode={mode} nodes={} dead={} fallback={} generic={} max_depth={}",
        stats.nodes, stats.dead_branches, stats.fallback_branches, stats.generic_nodes,
        stats.max_depth
    );
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<bool> {
    let cnf = read_input(&args.input)?;
    let t = args.t.unwrap_or_else(|| cnf.transversal_number());
    let modes: &[(Mode, &str)] = match args.mode {
        ModeArg::Structured => &[(Mode::Structured, "structured")],
        ModeArg::Generic => &[(Mode::Generic, "generic")],
        ModeArg::Both => &[(Mode::Structured, "structured"), (Mode::Generic, "generic")],
    };
    let mut ok = true;
    let mut first_members: Option<Vec<u64>> = None;
    for (i, (mode, name)) in modes.iter().enumerate() {
        let e = enumerate_min_transversals(&cnf, t, *mode)?;
        if i == 0 && !args.quiet {
            for &m in &e.set.members {
                println!("member vars={}", member_vars(m));
            }
        }
        println!("enumeration mode={name} t={t} count={}", e.set.len());
        print_stats(name, &e.stats);
        match &first_members {
            None => first_members = Some(e.set.members.clone()),
            Some(first) => {
                let agree = *first == e.set.members;
                println!("agreement={agree}");
                ok &= agree;
            }
        }
    }
    if args.certify {
        let cert = certify_bound(&cnf, t, Mode::Structured)?;
        let phi = cert.phi.as_ref().map(rational).unwrap_or_else(|| "none".into());
        let within = cert
            .within_phi
            .map(|b| b.to_string())
            .unwrap_or_else(|| "n/a".into());
        let sixq = cert
            .six_quarter
            .as_ref()
            .map(|(_, ord)| format!("{ord:?}").to_lowercase())
            .unwrap_or_else(|| "n/a".into());
        println!(
            "certificate count={} type={} s={} phi={phi} within_phi={within} six_quarter={sixq} certified={}",
            cert.count,
            cert.ftype.map(|f| f.to_string()).unwrap_or_else(|| "n/a".into()),
            cert.s,
            cert.certified()
        );
        ok &= cert.certified();
    }
    Ok(ok)
}

/// One named check in the verification suite.
fn report(name: &str, ok: bool, detail: &str) -> bool {
    if ok {
        println!("ok {name}");
    } else {
        println!("FAIL {name}: {detail}");
    }
    ok
}

fn verify(level: VerifyLevel) -> Result<bool> {
    let mut all = true;

    // Branch-table audit: every printed fraction and total reproduces.
    let records = tables::audit_rule_tables();
    let dirty: Vec<&str> = records
        .iter()
        .filter(|r| !r.is_clean())
        .map(|r| r.table)
        .collect();
    all &= report(
        "table-audit",
        dirty.is_empty(),
        &format!("mismatching tables: {dirty:?}"),
    );

    // Closed forms vs brute force for every family in the validity region.
    let t_max = 5;
    let mut bad = Vec::new();
    for ftype in [FormulaType::T0, FormulaType::T1, FormulaType::T2o, FormulaType::T2d] {
        for t in 1..=t_max {
            for s in 0..=t as i64 {
                let spec = FamilySpec { ftype, s, t };
                let (Ok(f), Ok(expect)) = (build_family(spec), expected_count(spec)) else {
                    continue;
                };
                let brute = BigInt::from(f.brute_force_transversals(t).len());
                let structured_matches = enumerate_min_transversals(&f, t, Mode::Structured)
                    .map(|e| BigInt::from(e.set.len()) == brute)
                    .unwrap_or(false);
                if brute != expect || !structured_matches {
                    bad.push(format!("{ftype},s={s},t={t}"));
                }
            }
        }
    }
    all &= report("family-closed-forms", bad.is_empty(), &format!("{bad:?}"));

    // Boundary constructions s in {2t-2, 2t-1, 2t}.
    let mut bad = Vec::new();
    for ftype in [FormulaType::T0, FormulaType::T1, FormulaType::T2o, FormulaType::T2d] {
        for t in 2..=4u32 {
            for s in [2 * t as i64 - 2, 2 * t as i64 - 1, 2 * t as i64] {
                let spec = FamilySpec { ftype, s, t };
                let (Ok(f), Ok(expect)) = (build_family(spec), expected_count(spec)) else {
                    continue;
                };
                if BigInt::from(f.brute_force_transversals(t).len()) != expect {
                    bad.push(format!("{ftype},s={s},t={t}"));
                }
            }
        }
    }
    all &= report("boundary-constructions", bad.is_empty(), &format!("{bad:?}"));

    // The n = 3t-1 construction count.
    let ts: &[u32] = if level == VerifyLevel::Full { &[2, 3, 4, 5] } else { &[2, 3, 4] };
    let mut bad = Vec::new();
    for &t in ts {
        let f = transversal_lab::constructions::build_3t_minus_1(t)?;
        let expect = BigInt::from(7) * BigInt::from(3).pow(t - 2);
        if BigInt::from(f.brute_force_transversals(t).len()) != expect {
            bad.push(t);
        }
    }
    all &= report("three-t-minus-one", bad.is_empty(), &format!("{bad:?}"));

    // Bound order: Φ_2o <= Φ_2d, and Φ non-increasing in s, on t <= 10.
    let mut bad = Vec::new();
    for t in 1..=10u32 {
        for s in 0..=t as i64 {
            let q = |ftype| phi_upper(BoundQuery { ftype, s, t }).expect("in validity region");
            if q(FormulaType::T2o) > q(FormulaType::T2d) {
                bad.push(format!("2o>2d at s={s},t={t}"));
            }
            for ftype in [
                FormulaType::T0,
                FormulaType::T1,
                FormulaType::T2o,
                FormulaType::T2d,
                FormulaType::T3,
                FormulaType::T4,
            ] {
                if s + 1 <= t as i64
                    && phi_upper(BoundQuery { ftype, s: s + 1, t }).expect("valid")
                        > phi_upper(BoundQuery { ftype, s, t }).expect("valid")
                {
                    bad.push(format!("{ftype} rises at s={s}->{},t={t}", s + 1));
                }
            }
        }
    }
    all &= report("bound-order", bad.is_empty(), &format!("{bad:?}"));

    // t = n/2 extremal count is exactly 6^{n/4}.
    let mut bad = Vec::new();
    for n in [4u32, 8, 12] {
        let t = n / 2;
        let f = build_family(FamilySpec { ftype: FormulaType::T0, s: t as i64, t })?;
        let count = f.brute_force_transversals(t).len() as u64;
        let bound = six_quarter_bound(n);
        if bound.compare(count) != Ordering::Equal {
            bad.push(n);
        }
    }
    all &= report("six-quarter-extremal", bad.is_empty(), &format!("{bad:?}"));

    // Differential: structured == generic == brute force on random CNFs.
    let (cases, n_max) = if level == VerifyLevel::Full { (10_000, 14) } else { (500, 10) };
    let mismatches = differential_run(cases, n_max);
    all &= report(
        &format!("differential-{cases}"),
        mismatches == 0,
        &format!("{mismatches} mismatching instances"),
    );

    if level == VerifyLevel::Full {
        // Exhaustive oracle spot values.
        let golden = [(4u32, 2u32, 6u32), (5, 2, 7), (5, 3, 10), (6, 2, 9), (6, 3, 14), (6, 4, 15)];
        let mut bad = Vec::new();
        for (n, t, theta) in golden {
            match oracle::extremal_search(n, t) {
                Ok(r) if r.max_count == theta => {}
                _ => bad.push((n, t)),
            }
        }
        all &= report("oracle-extremal", bad.is_empty(), &format!("{bad:?}"));

        // Circuit grid.
        let mut bad = Vec::new();
        for n in 3u32..=12 {
            for t in 1..=n / 2 {
                let seed = build_family(FamilySpec {
                    ftype: FormulaType::T0,
                    s: 3 * t as i64 - n as i64,
                    t,
                })?;
                let c = circuits::build_threshold_circuit(n, t, &seed)?;
                let verified = circuits::verify_circuit(&c)?;
                let size_ok = match circuits::size_bounds(&c) {
                    Ok((lower, actual)) => {
                        BigInt::from(actual) >= lower.clone()
                            && BigInt::from(actual) <= lower * (n * n)
                    }
                    Err(_) => true,
                };
                if !verified || !size_ok {
                    bad.push((n, t));
                }
            }
        }
        all &= report("circuit-grid", bad.is_empty(), &format!("{bad:?}"));
    }

    println!("verify level={} result={}", level_name(level), if all { "pass" } else { "fail" });
    Ok(all)
}

fn level_name(level: VerifyLevel) -> &'static str {
    match level {
        VerifyLevel::Quick => "quick",
        VerifyLevel::Full => "full",
    }
}

/// Random normalized CNFs compared across both enumeration modes and brute
/// force; returns the number of mismatching instances.
fn differential_run(cases: usize, n_max: u32) -> usize {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
    let mut mismatches = 0;
    for _ in 0..cases {
        let n = rng.gen_range(3..=n_max);
        let m = rng.gen_range(1..=2 * n as usize);
        let mut clauses: Vec<Vec<Var>> = Vec::new();
        for _ in 0..m {
            let w = if rng.gen_range(0..4) == 0 { 2 } else { 3 };
            let mut c: Vec<Var> = Vec::new();
            while c.len() < w {
                let v = rng.gen_range(0..n);
                if !c.contains(&v) {
                    c.push(v);
                }
            }
            clauses.push(c);
        }
        let refs: Vec<&[Var]> = clauses.iter().map(|c| c.as_slice()).collect();
        let f = MonotoneCnf::from_clauses(n, &refs).expect("valid random clauses");
        let t = f.transversal_number();
        let brute = f.brute_force_transversals(t).members;
        let ok = [Mode::Structured, Mode::Generic].iter().all(|&mode| {
            enumerate_min_transversals(&f, t, mode)
                .map(|e| e.set.members == brute)
                .unwrap_or(false)
        });
        if !ok {
            mismatches += 1;
        }
    }
    mismatches
}
