//! `padorb`: bound tables, orbit computation, etale certification, seeded
//! verification campaigns, arc inspection, and subvariety periods.
//!
//! Exit codes: 0 when all requested checks pass, 1 when a mathematical
//! verification fails, 2 on invalid input. JSON goes to stdout; campaign
//! reports can also be written to a file.

mod campaign;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use padorb_core::arc::mahler_coefficients;
use padorb_core::bounds::{self, BoundInput};
use padorb_core::dynamics::{self, EtaleCheck, SubvarietyOrbit};
use padorb_core::error::Error as CoreError;
use padorb_core::mapfile::{MapFile, SubvarietyFile};
use padorb_core::ring::PadicScalar;

#[derive(Parser)]
#[command(
    name = "padorb",
    version,
    about = "p-adic orbit and torsion bounds for etale polynomial self-maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form orbit-length and torsion bounds for one parameter set.
    Bounds(BoundsArgs),
    /// Tail and cycle of a point's orbit over (Z/p^k)^g.
    Orbit(OrbitArgs),
    /// Certify that the Jacobian determinant is a unit at every residue point.
    EtaleCheck(MapArg),
    /// Seeded campaign: iterate-order congruences plus arc cross-checks on
    /// random scaled tuples.
    VerifyProp21(CampaignArgs),
    /// Mahler expansion of a disk-model orbit around a residue-fixed center.
    Arc(ArcArgs),
    /// Tail and cycle of a subvariety's zero-set orbit under an automorphism.
    SubvarietyPeriod(SubvarietyArgs),
}

#[derive(clap::Args)]
struct BoundsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long)]
    g: u32,
    /// Residue field order; defaults to p.
    #[arg(long)]
    q: Option<u64>,
    /// Number of residue points of the model.
    #[arg(long)]
    points: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct MapArg {
    /// Map file: {"p", "k", "g", "polynomials", "inverse"?}.
    #[arg(long)]
    map: PathBuf,
}

#[derive(clap::Args)]
struct OrbitArgs {
    #[arg(long)]
    map: PathBuf,
    /// Start point, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Vec<i64>,
    /// Modulus exponent; defaults to the map file's k.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(clap::Args)]
struct CampaignArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    cases: u64,
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    e: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    g: Vec<usize>,
    #[arg(long, default_value_t = 6)]
    precision: u32,
    /// Degree cap; defaults to e*N per case.
    #[arg(long)]
    cap: Option<u32>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ArcArgs {
    #[arg(long)]
    map: PathBuf,
    /// Integer point whose residue the map fixes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Vec<i64>,
    /// Start point in disk coordinates; defaults to the origin.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Option<Vec<i64>>,
    #[arg(long, default_value_t = 6)]
    precision: u32,
    /// Number of Mahler coefficients; defaults to (p-1)*N + 8.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, default_value_t = 1)]
    stride: u64,
}

#[derive(clap::Args)]
struct SubvarietyArgs {
    #[arg(long)]
    map: PathBuf,
    /// Subvariety file: {"generators", "point"}.
    #[arg(long)]
    subvariety: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 64)]
    n_max: u64,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            classify(&err)
        }
    });
}

/// 2 for rejected input, 1 for a failed mathematical check.
fn classify(err: &CoreError) -> i32 {
    match err {
        CoreError::InvalidParameter(_) | CoreError::Mismatch(_) | CoreError::Resource(_) => 2,
        CoreError::Domain(_) | CoreError::NonUnit(_) | CoreError::Internal(_) => 1,
    }
}

fn read_file(path: &PathBuf) -> Result<String, CoreError> {
    std::fs::read_to_string(path).map_err(|err| {
        CoreError::InvalidParameter(format!("cannot read {}: {err}", path.display()))
    })
}

fn run(cli: Cli) -> Result<i32, CoreError> {
    match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::EtaleCheck(args) => cmd_etale_check(args),
        Command::VerifyProp21(args) => cmd_campaign(args),
        Command::Arc(args) => cmd_arc(args),
        Command::SubvarietyPeriod(args) => cmd_subvariety(args),
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32, CoreError> {
    let input = BoundInput::new(
        args.p,
        args.e,
        args.g,
        args.q.unwrap_or(args.p),
        args.points,
    )?;
    let report = bounds::bound_report(&input)?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Csv => {
            println!("r,m,t,gl,orbit_bound,torsion_bound");
            println!(
                "{},{},{},{},{},{}",
                report.r, report.m, report.t, report.gl, report.orbit_bound, report.torsion_bound
            );
        }
    }
    Ok(0)
}

fn cmd_orbit(args: OrbitArgs) -> Result<i32, CoreError> {
    let map = MapFile::from_json(&read_file(&args.map)?)?.build()?;
    if args.point.len() != map.vars() {
        return Err(CoreError::Mismatch(format!(
            "map has {} variables but the point has {} coordinates",
            map.vars(),
            args.point.len()
        )));
    }
    if let EtaleCheck::Failed { witness } = dynamics::check_etale(&map)? {
        println!(
            "{}",
            json!({ "etale": false, "witness": witness, "p": map.p() })
        );
        return Ok(1);
    }
    let k = args.k.unwrap_or_else(|| map.k());
    let report = dynamics::orbit_of_point(&map, &args.point, k)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "tail": report.tail,
            "cycle": report.cycle,
            "modulus": { "p": report.p, "k": report.k },
            "start": report.start,
        }))
        .expect("report serializes")
    );
    Ok(0)
}

fn cmd_etale_check(args: MapArg) -> Result<i32, CoreError> {
    let map = MapFile::from_json(&read_file(&args.map)?)?.build()?;
    match dynamics::check_etale(&map)? {
        EtaleCheck::Certified => {
            println!("{}", json!({ "etale": true, "p": map.p() }));
            Ok(0)
        }
        EtaleCheck::Failed { witness } => {
            println!(
                "{}",
                json!({ "etale": false, "witness": witness, "p": map.p() })
            );
            Ok(1)
        }
    }
}

fn cmd_campaign(args: CampaignArgs) -> Result<i32, CoreError> {
    let config = campaign::CampaignConfig {
        seed: args.seed,
        cases: args.cases,
        p_list: args.p,
        e_list: args.e,
        g_list: args.g,
        precision: args.precision,
        cap: args.cap,
    };
    let report = campaign::run(&config)?;
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes()).map_err(|err| {
                CoreError::InvalidParameter(format!("cannot write {}: {err}", path.display()))
            })?;
            println!(
                "{} cases, all_pass = {}, report written to {}",
                report.cases.len(),
                report.all_pass,
                path.display()
            );
        }
        None => println!("{rendered}"),
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

fn cmd_arc(args: ArcArgs) -> Result<i32, CoreError> {
    let map = MapFile::from_json(&read_file(&args.map)?)?.build()?;
    if args.center.len() != map.vars() {
        return Err(CoreError::Mismatch(format!(
            "map has {} variables but the center has {} coordinates",
            map.vars(),
            args.center.len()
        )));
    }
    // Distinguish a moved residue (bad input) from a failed certification.
    let reduced: Vec<u64> = args
        .center
        .iter()
        .map(|&c| c.rem_euclid(map.p() as i64) as u64)
        .collect();
    if map.eval_mod(&reduced, map.p()) != reduced {
        return Err(CoreError::InvalidParameter(format!(
            "the residue of {:?} is not fixed by the map mod {}",
            args.center,
            map.p()
        )));
    }
    let disk = dynamics::disk_linearization(&map, &args.center, args.precision)?;
    let params = disk.params();
    let beta: Vec<PadicScalar> = match &args.beta {
        Some(values) => {
            if values.len() != map.vars() {
                return Err(CoreError::Mismatch("beta arity mismatch".into()));
            }
            values
                .iter()
                .map(|&v| PadicScalar::from_integer(v, params))
                .collect()
        }
        None => vec![PadicScalar::zero(params); map.vars()],
    };
    let terms = args
        .terms
        .unwrap_or_else(|| padorb_core::arc::default_terms(params));
    let arc = mahler_coefficients(disk.as_series(), &beta, terms, args.stride)?;
    let checked_to = 2 * terms as u64;
    let ok = arc.matches_direct_iteration(disk.as_series(), checked_to)?;
    let valuations: Vec<Vec<u32>> = (0..arc.len())
        .map(|j| arc.coefficient(j).iter().map(|c| c.valuation()).collect())
        .collect();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "p": params.p(),
            "precision": params.precision(),
            "terms": terms,
            "stride": arc.stride(),
            "vanish_from": arc.vanish_from(),
            "coefficient_valuations": valuations,
            "interpolation_checked_to": checked_to,
            "interpolation_ok": ok,
        }))
        .expect("report serializes")
    );
    Ok(if ok { 0 } else { 1 })
}

fn cmd_subvariety(args: SubvarietyArgs) -> Result<i32, CoreError> {
    let map = MapFile::from_json(&read_file(&args.map)?)?.build()?;
    let model = SubvarietyFile::from_json(&read_file(&args.subvariety)?)?.build()?;
    let outcome = dynamics::subvariety_orbit(&map, &model, args.k, args.n_max)?;
    match outcome {
        SubvarietyOrbit::Detected { tail, cycle, p, k } => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "tail": tail,
                    "cycle": cycle,
                    "modulus": { "p": p, "k": k },
                }))
                .expect("report serializes")
            );
        }
        SubvarietyOrbit::NoPeriodWithin { n_max } => {
            println!("{}", json!({ "no_period_within": n_max }));
        }
    }
    Ok(0)
}
