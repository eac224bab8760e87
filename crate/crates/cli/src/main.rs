//! Command-line front end for the workbench.
//!
//! Reports are line-oriented `key:value` text and every command is
//! deterministic: identical inputs produce byte-identical output. Exit
//! codes: 0 success/all-pass, 1 parse/type/input error, 2 out of fuel,
//! 3 stuck term, 4 a check reported a failure.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};

use domainlab::bases::{
    check_abstract_basis, check_compact_basis, principal_way_below, DyadicBasis,
};
use domainlab::dinfty::{build_tower_capped, verify_laws, DEFAULT_RANK_CAP};
use domainlab::domain::{lfp, parse_monomap, parse_poset, render_poset, Exponential, FinPoset};
use domainlab::dyadics::{self, enumerate_depth, parse_dyadic, Dyadic};
use domainlab::opsem::{run, RunOutcome};
use domainlab::pcf::{elaborate_str, Term};
use domainlab::scott::{check_adequacy, denote};

const EXIT_INPUT: u8 = 1;
const EXIT_OUT_OF_FUEL: u8 = 2;
const EXIT_STUCK: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "domainlab", version, about = "PCF semantics and finite domain theory workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a PCF program operationally.
    Run(RunArgs),
    /// Scan a PCF program's denotation over fuels.
    Deno(DenoArgs),
    /// Cross-check operational and denotational outcomes.
    Adequacy(AdequacyArgs),
    /// Finite poset operations.
    #[command(subcommand)]
    Dom(DomCommand),
    /// Dyadic rationals.
    #[command(subcommand)]
    Dyadics(DyadicsCommand),
    /// Ideal-completion queries.
    #[command(subcommand)]
    Idl(IdlCommand),
    /// The tower of iterated self-exponentials.
    #[command(subcommand)]
    Dinfty(DinftyCommand),
}

#[derive(Args)]
struct RunArgs {
    /// PCF source file.
    file: String,
    /// Step budget.
    #[arg(long, default_value_t = 10_000)]
    fuel: usize,
    /// Print the reduction trace, one term per line with its step index.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct DenoArgs {
    file: String,
    /// Fuel budget for the denotational scan.
    #[arg(long, default_value_t = 200)]
    fuel: u32,
}

#[derive(Args)]
struct AdequacyArgs {
    file: String,
    /// Fuel budget for the denotational scan.
    #[arg(long, default_value_t = 200)]
    fuel: u32,
    /// Step budget for the operational run.
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
}

#[derive(Subcommand)]
enum DomCommand {
    /// Validate the poset laws of a poset file.
    Check { poset: String },
    /// Build the exponential of two poset files and report on it.
    Exp { source: String, target: String },
    /// Kleene least fixed point of a monotone endomap given by a map file.
    Lfp { poset: String, map: String },
}

#[derive(Subcommand)]
enum DyadicsCommand {
    /// Exhaustive order-law sweep at a given depth.
    Props {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum IdlCommand {
    /// Way-below between principal dyadic ideals, e.g. `idl wb m Rm`.
    Wb { a: String, b: String },
}

#[derive(Subcommand)]
enum DinftyCommand {
    /// Build the tower up to a rank; optionally verify laws or dump a level.
    Build {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Run the ep-pair/composite/chain law sweep and report it.
        #[arg(long)]
        verify: bool,
        /// Write level n in the poset text format to stdout.
        #[arg(long)]
        dump_level: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Run(args) => cmd_run(args),
        Command::Deno(args) => cmd_deno(args),
        Command::Adequacy(args) => cmd_adequacy(args),
        Command::Dom(dom) => match dom {
            DomCommand::Check { poset } => cmd_dom_check(&poset),
            DomCommand::Exp { source, target } => cmd_dom_exp(&source, &target),
            DomCommand::Lfp { poset, map } => cmd_dom_lfp(&poset, &map),
        },
        Command::Dyadics(DyadicsCommand::Props { depth }) => cmd_dyadics_props(depth),
        Command::Idl(IdlCommand::Wb { a, b }) => cmd_idl_wb(&a, &b),
        Command::Dinfty(DinftyCommand::Build { rank, verify, dump_level }) => {
            cmd_dinfty_build(rank, verify, dump_level)
        }
    }
}

fn load_term(path: &str) -> Result<Term, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    elaborate_str(&src).map_err(|e| format!("{path}: {e}"))
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, String> {
    let term = load_term(&args.file)?;
    let outcome = run(&term, args.fuel).map_err(|e| e.to_string())?;
    Ok(match outcome {
        RunOutcome::Defined { value, steps, trace } => {
            if args.trace {
                print!("{}", trace.render());
            }
            println!("Defined {value} in {steps} steps");
            ExitCode::SUCCESS
        }
        RunOutcome::OutOfFuel => {
            println!("OutOfFuel after {} steps", args.fuel);
            ExitCode::from(EXIT_OUT_OF_FUEL)
        }
        RunOutcome::Stuck { term } => {
            println!("Stuck at {term}");
            ExitCode::from(EXIT_STUCK)
        }
    })
}

fn cmd_deno(args: DenoArgs) -> Result<ExitCode, String> {
    let term = load_term(&args.file)?;
    let p = denote(&term).map_err(|e| e.to_string())?;
    match p.first_defined(args.fuel) {
        Some((fuel, value)) => println!("defined at fuel {fuel}: {value}"),
        None => println!("undefined <= {}", args.fuel),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_adequacy(args: AdequacyArgs) -> Result<ExitCode, String> {
    let term = load_term(&args.file)?;
    let report = check_adequacy(&term, args.steps, args.fuel).map_err(|e| e.to_string())?;
    match &report.operational {
        RunOutcome::Defined { value, steps, .. } => {
            println!("operational:Defined value:{value} steps:{steps}")
        }
        RunOutcome::OutOfFuel => println!("operational:OutOfFuel steps:{}", args.steps),
        RunOutcome::Stuck { term } => println!("operational:Stuck term:{term}"),
    }
    match report.denotational {
        Some((fuel, value)) => println!("denotational:defined fuel:{fuel} value:{value}"),
        None => println!("denotational:undefined fuel-budget:{}", args.fuel),
    }
    println!("agreement:{}", report.agreement);
    Ok(if report.agreement {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn load_poset(path: &str) -> Result<FinPoset, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_poset(&src).map_err(|e| format!("{path}: {e}"))
}

fn cmd_dom_check(path: &str) -> Result<ExitCode, String> {
    // parse_poset already validates; reaching here means the laws hold.
    let p = load_poset(path)?;
    println!("ok");
    println!("elements:{}", p.len());
    match p.least() {
        Some(b) => println!("least:{}", p.name(b)),
        None => println!("least:none"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dom_exp(source: &str, target: &str) -> Result<ExitCode, String> {
    let p = Rc::new(load_poset(source)?);
    let q = Rc::new(load_poset(target)?);
    let exp = Exponential::build(&p, &q).map_err(|e| e.to_string())?;
    println!("elements:{}", exp.len());
    println!("least:{}", exp.poset.name(exp.bottom()));
    let ok = exp.poset.validate().is_ok();
    println!("poset-laws:{}", if ok { "pass" } else { "fail" });
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_dom_lfp(poset: &str, map: &str) -> Result<ExitCode, String> {
    let p = Rc::new(load_poset(poset)?);
    let src = fs::read_to_string(map).map_err(|e| format!("{map}: {e}"))?;
    let f = parse_monomap(&src, &p, &p).map_err(|e| format!("{map}: {e}"))?;
    let r = lfp(&f).map_err(|e| e.to_string())?;
    println!("lfp:{}", p.name(r.elem));
    println!("iterations:{}", r.iterations);
    Ok(ExitCode::SUCCESS)
}

fn cmd_dyadics_props(depth: usize) -> Result<ExitCode, String> {
    if depth > 7 {
        return Err(format!("depth {depth} too deep for the exhaustive sweep (max 7)"));
    }
    let all = enumerate_depth(depth);
    let n = all.len();

    let irreflexive = all.iter().all(|x| !dyadics::prec(x, x));
    let transitive = all.iter().all(|x| {
        all.iter().all(|y| {
            !dyadics::prec(x, y)
                || all.iter().all(|z| !dyadics::prec(y, z) || dyadics::prec(x, z))
        })
    });
    let trichotomy = all.iter().all(|x| {
        all.iter().all(|y| {
            let ways = [dyadics::prec(x, y), x == y, dyadics::prec(y, x)];
            ways.iter().filter(|&&b| b).count() == 1
        })
    });
    let density = all.iter().all(|x| {
        all.iter().all(|y| {
            if !dyadics::prec(x, y) {
                return true;
            }
            dyadics::interpolant(x, y)
                .map(|z| dyadics::prec(x, &z) && dyadics::prec(&z, y))
                .unwrap_or(false)
        })
    });
    let basis = check_abstract_basis(&DyadicBasis, &all).passed();

    let verdict = |b: bool| if b { "pass" } else { "fail" };
    println!(
        "trichotomy:{} density:{} irreflexive:{} transitive:{} over {n} elements",
        verdict(trichotomy),
        verdict(density),
        verdict(irreflexive),
        verdict(transitive)
    );
    println!("abstract-basis:{}", verdict(basis));
    let all_pass = irreflexive && transitive && trichotomy && density && basis;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_idl_wb(a: &str, b: &str) -> Result<ExitCode, String> {
    let da: Dyadic = parse_dyadic(a).map_err(|e| e.to_string())?;
    let db: Dyadic = parse_dyadic(b).map_err(|e| e.to_string())?;
    println!("way-below: {}", principal_way_below(&DyadicBasis, &da, &db));
    Ok(ExitCode::SUCCESS)
}

fn rank_cap() -> usize {
    std::env::var("SCOTT_RANK_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_RANK_CAP)
}

fn cmd_dinfty_build(
    rank: usize,
    verify: bool,
    dump_level: Option<usize>,
) -> Result<ExitCode, String> {
    let tower = build_tower_capped(rank, rank_cap()).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for n in 0..=rank {
        let _ = writeln!(out, "level:{n} size:{}", tower.level_size(n));
    }
    let mut failed = false;
    if verify {
        let report = verify_laws(&tower, 1000);
        for c in &report.checks {
            let _ = writeln!(out, "{}:{}", c.name, if c.passed { "pass" } else { "fail" });
            if let (false, Some(w)) = (c.passed, &c.witness) {
                let _ = writeln!(out, "witness:{w}");
            }
        }
        // Every level is a compact basis for itself; checked on the
        // materialised levels.
        for n in 0..=rank {
            if let Ok(p) = tower.level_poset(n) {
                if p.len() <= 12 {
                    let all: Vec<usize> = (0..p.len()).collect();
                    let basis_ok = check_compact_basis(p, &all)
                        .map(|r| r.passed())
                        .unwrap_or(false);
                    let _ = writeln!(
                        out,
                        "compact-basis[{n}]:{}",
                        if basis_ok { "pass" } else { "fail" }
                    );
                    failed |= !basis_ok;
                }
            }
        }
        failed |= !report.passed();
        let _ = writeln!(out, "verified:{}", if failed { "fail" } else { "ok" });
    }
    print!("{out}");
    if let Some(n) = dump_level {
        if n > rank {
            return Err(format!("level {n} not built (rank {rank})"));
        }
        let p = tower.level_poset(n).map_err(|e| e.to_string())?;
        print!("{}", render_poset(p));
    }
    Ok(if failed {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    })
}
