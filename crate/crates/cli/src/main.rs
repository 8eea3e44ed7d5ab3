//! `torica`: batch command-line driver over the exact toric-surface
//! toolkit. Every subcommand is a thin wrapper around a library call;
//! outputs are JSON (CSV for the bound surface) and deterministic, so
//! identical inputs give byte-identical outputs.
//!
//! Exit codes: 0 success; 1 configuration or input-format problems;
//! 2 fan or divisor validation failures; 3 adjunction on a divisor
//! that is not ample; 4 completed verification runs that found failures.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use torica_core::adjunction::{iterated_sequence, telescoped_genus_check, AdjunctionError, ReductionOutcome};
use torica_core::bogomolov::{bog_restriction_check, destabilizer_search};
use torica_core::chern::{
    bound_surface_csv, c1sq_lower_bound, contradiction_band_check, emit_bound_surface,
    intro_claims_check, verify_table1,
};
use torica_core::harness::{enumerate_surfaces, run_verification};
use torica_core::io::{read_divisor, read_fan, DivisorForm, IoError};
use torica_core::{DivisorClass, Fan};

#[derive(Parser)]
#[command(
    name = "torica",
    version,
    about = "Exact intersection theory on smooth complete toric surfaces",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate or describe a fan file.
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
    /// Analyze a divisor class against a fan.
    Divisor {
        #[command(subcommand)]
        action: DivisorAction,
    },
    /// Run the full adjunction-reduction tower of an ample class.
    Adjoin {
        /// Fan file (rays or profile form).
        fan: PathBuf,
        /// Divisor file (coefficients or degrees form).
        divisor: PathBuf,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Evaluate Chern-number bounds.
    Bounds {
        #[command(subcommand)]
        action: BoundsAction,
    },
    /// Sweep every enumerated surface and polarization through the
    /// whole battery of inequality checks. Exit 4 on counterexamples.
    Verify {
        /// Largest ray count in the inventory.
        #[arg(long, default_value_t = 9)]
        emax: usize,
        /// Smallest ray count admitted to the sweep.
        #[arg(long, default_value_t = 3)]
        emin: usize,
        /// Largest Hirzebruch seed parameter.
        #[arg(long, default_value_t = 3)]
        amax: u32,
        /// Largest degree per ray when enumerating polarizations.
        #[arg(long, default_value_t = 4)]
        tmax: i64,
        /// Comma-separated bundle ranks to test.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        r: Vec<i64>,
        #[command(flatten)]
        out: OutFlag,
    },
    /// List all surfaces reachable from the standard seeds by corner
    /// blowups, up to lattice isomorphism.
    Enumerate {
        /// Largest ray count.
        #[arg(long, default_value_t = 8)]
        emax: usize,
        /// Largest Hirzebruch seed parameter.
        #[arg(long, default_value_t = 3)]
        amax: u32,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Rank-two instability searches.
    Bogomolov {
        #[command(subcommand)]
        action: BogomolovAction,
    },
    /// Recompute the catalogue of rank-two bundles with small Chern
    /// invariants. Exit 4 on any mismatch.
    Table1 {
        #[command(flatten)]
        out: OutFlag,
    },
}

#[derive(Subcommand)]
enum FanAction {
    /// Check the smooth-complete-surface invariants. Exit 2 names the
    /// violated invariant.
    Validate { path: PathBuf },
    /// Euler number, canonical profile, canonical square, Picard rank.
    Info {
        path: PathBuf,
        #[command(flatten)]
        out: OutFlag,
    },
}

#[derive(Subcommand)]
enum DivisorAction {
    /// Degrees, positivity, square, and sectional genus of a class.
    Check {
        fan: PathBuf,
        divisor: PathBuf,
        #[command(flatten)]
        out: OutFlag,
    },
}

#[derive(Subcommand)]
enum BoundsAction {
    /// Print the exact square lower bound for one rank and ray count.
    Eval {
        /// Bundle rank.
        #[arg(long)]
        r: i64,
        /// Ray count (at least seven).
        #[arg(long)]
        e: i64,
    },
    /// Emit the bound over a rank/ray-count rectangle.
    Surface {
        #[arg(long, default_value_t = 1)]
        rmin: i64,
        #[arg(long, default_value_t = 20)]
        rmax: i64,
        #[arg(long, default_value_t = 13)]
        emin: i64,
        #[arg(long, default_value_t = 100)]
        emax: i64,
        /// Include the scaled column in CSV output.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 1)]
        scaled: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Check every headline claim about the bound plus the band-by-band
    /// contradiction residual. Exit 4 if any claim fails.
    Claims {
        /// Largest ray count in the claim grids (at least 1000).
        #[arg(long, default_value_t = 1000)]
        ecap: i64,
        /// Largest band for the residual check.
        #[arg(long, default_value_t = 12)]
        bmax: i64,
        #[command(flatten)]
        out: OutFlag,
    },
}

#[derive(Subcommand)]
enum BogomolovAction {
    /// Enumerate destabilizing sub-line-bundles of an unstable pair.
    Search {
        /// Fan file.
        #[arg(long)]
        fan: PathBuf,
        /// Determinant class file.
        #[arg(long)]
        h: PathBuf,
        /// Second Chern number of the bundle.
        #[arg(long)]
        c2: i64,
        /// Coefficient box radius for the normalized search.
        #[arg(long = "box", default_value_t = 6)]
        box_radius: i64,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Run the restriction-criterion report for an unstable pair with
    /// small second Chern number.
    Restrict {
        /// Fan file.
        #[arg(long)]
        fan: PathBuf,
        /// Determinant class file.
        #[arg(long)]
        h: PathBuf,
        /// Second Chern number of the bundle.
        #[arg(long)]
        c2: i64,
        /// Coefficient box radius for the normalized search.
        #[arg(long = "box", default_value_t = 6)]
        box_radius: i64,
        #[command(flatten)]
        out: OutFlag,
    },
}

#[derive(Args)]
struct OutFlag {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// A failure routed to a dedicated exit code.
enum Failure {
    /// Unusable flags, unreadable paths, malformed input files: exit 1.
    Config(String),
    /// Well-formed input that violates a structural invariant: exit 2.
    Validation(String),
    /// Adjunction demanded of a class that is not ample: exit 3.
    NotAmple(String),
}

impl Failure {
    fn report(self) -> i32 {
        let (code, message) = match self {
            Failure::Config(m) => (1, m),
            Failure::Validation(m) => (2, m),
            Failure::NotAmple(m) => (3, m),
        };
        eprintln!("error: {message}");
        code
    }
}

impl From<IoError> for Failure {
    fn from(err: IoError) -> Self {
        match err {
            IoError::Fan(inner) => Failure::Validation(inner.to_string()),
            IoError::Divisor(inner) => Failure::Validation(inner.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    if let Ok(raw) = std::env::var("TORICA_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                // A duplicate initialization (e.g. in tests) is harmless.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
            _ => {
                eprintln!("error: TORICA_THREADS must be a positive integer, got {raw:?}");
                return 1;
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return 0;
        }
        Err(err) => {
            eprint!("{err}");
            return 1;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => failure.report(),
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Fan { action } => match action {
            FanAction::Validate { path } => cmd_fan_validate(&path),
            FanAction::Info { path, out } => cmd_fan_info(&path, &out),
        },
        Command::Divisor { action } => match action {
            DivisorAction::Check { fan, divisor, out } => cmd_divisor_check(&fan, &divisor, &out),
        },
        Command::Adjoin { fan, divisor, out } => cmd_adjoin(&fan, &divisor, &out),
        Command::Bounds { action } => match action {
            BoundsAction::Eval { r, e } => cmd_bounds_eval(r, e),
            BoundsAction::Surface { rmin, rmax, emin, emax, scaled, format, out } => {
                cmd_bounds_surface(rmin, rmax, emin, emax, scaled, format, &out)
            }
            BoundsAction::Claims { ecap, bmax, out } => cmd_bounds_claims(ecap, bmax, &out),
        },
        Command::Verify { emax, emin, amax, tmax, r, out } => {
            cmd_verify(emax, emin, amax, tmax, &r, &out)
        }
        Command::Enumerate { emax, amax, out } => cmd_enumerate(emax, amax, &out),
        Command::Bogomolov { action } => match action {
            BogomolovAction::Search { fan, h, c2, box_radius, out } => {
                cmd_bogomolov_search(&fan, &h, c2, box_radius, &out)
            }
            BogomolovAction::Restrict { fan, h, c2, box_radius, out } => {
                cmd_bogomolov_restrict(&fan, &h, c2, box_radius, &out)
            }
        },
        Command::Table1 { out } => cmd_table1(&out),
    }
}

/// Writes `text` (newline-terminated) to the flag target or stdout.
fn emit(text: &str, out: &OutFlag) -> Result<(), Failure> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(value: &impl serde::Serialize, out: &OutFlag) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Config(format!("serialization failed: {e}")))?;
    emit(&text, out)
}

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(BigInt::to_string).collect()
}

fn load_pair(fan_path: &Path, divisor_path: &Path) -> Result<(Fan, DivisorClass, DivisorForm), Failure> {
    let fan = read_fan(fan_path)?;
    let (class, form) = read_divisor(divisor_path, &fan)?;
    Ok((fan, class, form))
}

fn cmd_fan_validate(path: &Path) -> Result<i32, Failure> {
    let fan = read_fan(path)?;
    let report = json!({
        "valid": true,
        "euler": fan.euler(),
        "profile": strings(fan.self_intersections().values()),
    });
    emit_json(&report, &OutFlag { out: None })?;
    Ok(0)
}

fn cmd_fan_info(path: &Path, out: &OutFlag) -> Result<i32, Failure> {
    let fan = read_fan(path)?;
    let e = fan.euler();
    let k_square = DivisorClass::canonical(&fan).self_intersection();
    let report = json!({
        "euler": e,
        "profile": strings(fan.self_intersections().values()),
        "canonical_profile": strings(fan.canonical_profile().values()),
        "k_square": k_square.to_string(),
        "k_square_identity": k_square == BigInt::from(12 - e as i64),
        "picard_rank": e - 2,
    });
    emit_json(&report, out)?;
    Ok(0)
}

fn cmd_divisor_check(fan_path: &Path, divisor_path: &Path, out: &OutFlag) -> Result<i32, Failure> {
    let (_, class, form) = load_pair(fan_path, divisor_path)?;
    let degrees = class.degree_vector();
    let report = json!({
        "input_form": match form {
            DivisorForm::Coefficients => "coefficients",
            DivisorForm::Degrees => "degrees",
        },
        "coefficients": strings(class.coefficients()),
        "normalized_coefficients": strings(class.normalize().coefficients()),
        "degrees": strings(degrees.values()),
        "nef": class.is_nef(),
        "ample": class.is_ample(),
        "self_intersection": class.self_intersection().to_string(),
        "sectional_genus": class.sectional_genus().to_string(),
    });
    emit_json(&report, out)?;
    Ok(0)
}

fn outcome_json(outcome: &ReductionOutcome) -> Value {
    match outcome {
        ReductionOutcome::Reduced { child, image, contracted_rays, .. } => json!({
            "kind": outcome.tag(),
            "contracted_rays": contracted_rays,
            "child_profile": strings(child.self_intersections().values()),
            "image_coefficients": image,
        }),
        ReductionOutcome::Fibration { fiber, fiber_degree, multiplicity } => json!({
            "kind": outcome.tag(),
            "fiber_coefficients": fiber,
            "fiber_degree": fiber_degree.to_string(),
            "multiplicity": multiplicity.to_string(),
        }),
        ReductionOutcome::TerminalLowEuler { reason } => json!({
            "kind": outcome.tag(),
            "reason": reason,
        }),
        other => json!({ "kind": other.tag() }),
    }
}

fn cmd_adjoin(fan_path: &Path, divisor_path: &Path, out: &OutFlag) -> Result<i32, Failure> {
    let (_, class, _) = load_pair(fan_path, divisor_path)?;
    if !class.is_ample() {
        return Err(Failure::NotAmple(format!(
            "adjunction needs an ample class; degrees are [{}]",
            strings(class.degree_vector().values()).join(",")
        )));
    }
    let sequence = match iterated_sequence(&class) {
        Ok(sequence) => sequence,
        Err(AdjunctionError::NotAmple { stage }) => {
            return Err(Failure::NotAmple(format!("class stopped being ample at stage {stage}")))
        }
        Err(other) => return Err(Failure::Config(other.to_string())),
    };
    let stages: Vec<Value> = sequence
        .stages()
        .iter()
        .map(|(fan, class)| {
            json!({
                "euler": fan.euler(),
                "profile": strings(fan.self_intersections().values()),
                "coefficients": class,
                "degrees": strings(class.degree_vector().values()),
            })
        })
        .collect();
    let contractions: Vec<Value> = sequence
        .contractions()
        .iter()
        .map(|step| {
            json!({
                "contracted_rays": step.contracted_rays,
                "elementary_blowdowns": step.records.len(),
            })
        })
        .collect();
    let telescope = telescoped_genus_check(&sequence);
    let report = json!({
        "length": sequence.length(),
        "euler_steps_ok": sequence.euler_steps_ok(),
        "stages": stages,
        "contractions": contractions,
        "terminal": outcome_json(sequence.terminal()),
        "telescope": {
            "depth": telescope.depth,
            "direct": telescope.direct.to_string(),
            "telescoped": telescope.telescoped.to_string(),
            "identity_holds": telescope.identity_holds(),
            "genus_floor_expected": telescope.genus_floor_expected,
            "genus_floor_met": telescope.genus_floor_met,
        },
    });
    emit_json(&report, out)?;
    Ok(0)
}

fn cmd_bounds_eval(r: i64, e: i64) -> Result<i32, Failure> {
    if r < 1 {
        return Err(Failure::Config(format!("rank must be positive, got {r}")));
    }
    let bound = c1sq_lower_bound(r, e).map_err(|err| Failure::Config(err.to_string()))?;
    let rendered = if bound.is_integer() {
        bound.numer().to_string()
    } else {
        format!("{}/{}", bound.numer(), bound.denom())
    };
    println!("{rendered}");
    Ok(0)
}

fn cmd_bounds_surface(
    rmin: i64,
    rmax: i64,
    emin: i64,
    emax: i64,
    scaled: bool,
    format: Format,
    out: &OutFlag,
) -> Result<i32, Failure> {
    if rmin < 1 || rmin > rmax || emin > emax {
        return Err(Failure::Config(format!(
            "empty or invalid rectangle: r in [{rmin}..{rmax}], e in [{emin}..{emax}]"
        )));
    }
    let rows = emit_bound_surface((rmin, rmax), (emin, emax))
        .map_err(|err| Failure::Config(err.to_string()))?;
    match format {
        Format::Csv => {
            let csv = bound_surface_csv(&rows);
            let csv = if scaled {
                csv
            } else {
                // Presentation-level trim of the final column.
                csv.lines()
                    .map(|line| line.rsplit_once(',').map(|(head, _)| head).unwrap_or(line))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&csv, out)?;
        }
        Format::Json => emit_json(&rows, out)?,
    }
    Ok(0)
}

fn cmd_bounds_claims(ecap: i64, bmax: i64, out: &OutFlag) -> Result<i32, Failure> {
    if ecap < 1000 {
        return Err(Failure::Config(format!(
            "claim grids are stated for ray counts up to at least 1000, got cap {ecap}"
        )));
    }
    if bmax < 0 {
        return Err(Failure::Config(format!("band cap must be nonnegative, got {bmax}")));
    }
    let mut reports = intro_claims_check(ecap);
    reports.push(contradiction_band_check(bmax));
    emit_json(&reports, out)?;
    Ok(if reports.iter().all(|c| c.verdict) { 0 } else { 4 })
}

fn cmd_verify(
    emax: usize,
    emin: usize,
    amax: u32,
    tmax: i64,
    ranks: &[i64],
    out: &OutFlag,
) -> Result<i32, Failure> {
    if emax < 3 {
        return Err(Failure::Config(format!("emax must be at least 3, got {emax}")));
    }
    if tmax < 1 {
        return Err(Failure::Config(format!("tmax must be positive, got {tmax}")));
    }
    if ranks.is_empty() || ranks.iter().any(|&r| r < 1) {
        return Err(Failure::Config("ranks must be a nonempty list of positive integers".into()));
    }
    let inventory = enumerate_surfaces(emax, amax);
    let report = run_verification(&inventory, emin, tmax, ranks);
    emit_json(&report, out)?;
    Ok(if report.counterexamples.is_empty() { 0 } else { 4 })
}

fn cmd_enumerate(emax: usize, amax: u32, out: &OutFlag) -> Result<i32, Failure> {
    if emax < 3 {
        return Err(Failure::Config(format!("emax must be at least 3, got {emax}")));
    }
    let inventory = enumerate_surfaces(emax, amax);
    let surfaces: Vec<Value> = inventory
        .entries
        .iter()
        .map(|entry| {
            json!({
                "euler": entry.fan.euler(),
                "profile": strings(entry.profile.values()),
                "seed": entry.provenance.seed,
                "corners": entry.provenance.corners,
            })
        })
        .collect();
    let report = json!({
        "e_max": inventory.e_max,
        "a_max": inventory.a_max,
        "count": surfaces.len(),
        "surfaces": surfaces,
    });
    emit_json(&report, out)?;
    Ok(0)
}

fn cmd_bogomolov_search(
    fan_path: &Path,
    h_path: &Path,
    c2: i64,
    box_radius: i64,
    out: &OutFlag,
) -> Result<i32, Failure> {
    let (_, h, _) = load_pair(fan_path, h_path)?;
    let search = destabilizer_search(&h, &BigInt::from(c2), box_radius)
        .map_err(|err| Failure::Config(err.to_string()))?;
    emit_json(&search, out)?;
    Ok(0)
}

fn cmd_bogomolov_restrict(
    fan_path: &Path,
    h_path: &Path,
    c2: i64,
    box_radius: i64,
    out: &OutFlag,
) -> Result<i32, Failure> {
    let (_, h, _) = load_pair(fan_path, h_path)?;
    let report = bog_restriction_check(&h, &BigInt::from(c2), box_radius)
        .map_err(|err| Failure::Config(err.to_string()))?;
    emit_json(&report, out)?;
    Ok(0)
}

fn cmd_table1(out: &OutFlag) -> Result<i32, Failure> {
    let reports = verify_table1();
    let all_good = reports.iter().all(|row| row.verdict);
    emit_json(&reports, out)?;
    Ok(if all_good { 0 } else { 4 })
}
