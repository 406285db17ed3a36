//! Thin command-line surface over the library: subcommands wrap one module
//! each, read a JSON config (or a bundled preset), and emit deterministic
//! JSON/CSV/SVG files.
//!
//! Every error is printed to stderr as a single JSON object with a
//! machine-readable code and a config-path pointer.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::central_charge::Charge;
use crate::config::{parse_complex, parse_i64_list, parse_rational, RunConfig};
use crate::emit;
use crate::error::Error;
use crate::grading_flow::{
    abelian_violation_check, flow_along_path, monodromy_shift, FlowEndpoints, MorphismRecord,
};
use crate::orbifold::{build_mckay_quiver, superpotential_relations, McKayQuiver};
use crate::rep::{QuiverRep, RepJson};
use crate::stability::{
    is_mu_stable, is_pi_stable, is_theta_stable, mmms_expansion, mmms_slope,
    pi_stability_of_rep, ChernData,
};
use crate::walls::{find_walls_on_path, stable_spectrum, wall_grid_2d};
use crate::Result;

#[derive(Debug, Parser)]
#[command(
    name = "quiver-bps",
    version,
    about = "BPS brane spectra on abelian orbifolds: quivers, stability, grading flow, walls"
)]
pub struct Cli {
    /// JSON config file; defaults to the bundled `z3` preset.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Bundled model: trivial, z3, or two-charge.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Output directory (default `out`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed override for all pseudo-random choices.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for grid and spectrum sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Tolerance override for phase comparisons and wall brackets.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the McKay quiver with superpotential relations.
    BuildQuiver {
        /// Group order n of Z_n (overrides config).
        #[arg(long)]
        order: Option<u32>,
        /// Comma-separated weights a1,a2,a3 (overrides config).
        #[arg(long)]
        weights: Option<String>,
    },
    /// Test a charge or representation against one stability notion.
    CheckStability {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Chern data "rank,c1[,ch2[,ch3]]" as rationals (mu and mmms modes).
        #[arg(long)]
        object: Option<String>,
        /// Semicolon-separated subobject Chern data (mu mode).
        #[arg(long)]
        subobjects: Option<String>,
        /// Charge "q1,q2,..." (pi mode).
        #[arg(long)]
        charge: Option<String>,
        /// Semicolon-separated subcharges (pi mode).
        #[arg(long)]
        subcharges: Option<String>,
        /// Representation JSON file (theta and pi modes).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Moduli point "re,im" (pi mode; falls back to config `at`).
        #[arg(long)]
        at: Option<String>,
        /// Theta vector as comma-separated rationals (theta mode).
        #[arg(long)]
        theta: Option<String>,
        /// Kaehler form coefficient (mmms mode).
        #[arg(long)]
        omega: Option<f64>,
        /// Phase angle theta of the calibration (mmms mode).
        #[arg(long, default_value_t = 0.0)]
        theta_angle: f64,
        /// String length (mmms mode).
        #[arg(long, default_value_t = 1.0)]
        ls: f64,
        /// Dimension d of the wrapped cycle (mmms mode).
        #[arg(long)]
        degree_d: Option<u32>,
    },
    /// Locate marginal-stability walls along the configured path, plus an
    /// optional 2-D grid overlay when the config carries a `grid`.
    ScanWalls {
        /// Parent charge override "q1,q2,...".
        #[arg(long)]
        charge: Option<String>,
        /// Semicolon-separated witness subcharges override.
        #[arg(long)]
        subcharges: Option<String>,
    },
    /// Flow a morphism degree along the configured path.
    FlowGradings {
        /// Source charge E.
        #[arg(long)]
        charge_e: String,
        /// Target charge F.
        #[arg(long)]
        charge_f: String,
        /// Starting degree n at the reference point.
        #[arg(long, default_value_t = 0.0)]
        degree: f64,
    },
    /// Enumerate the Pi-stable spectrum at the configured moduli point.
    Spectrum {
        /// Per-node dimension cap "c1,c2,..." (overrides config).
        #[arg(long)]
        cap: Option<String>,
        /// Moduli point "re,im" (falls back to config `at`).
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Mu,
    Theta,
    Pi,
    Mmms,
}

/// Entry point used by the binary; prints errors as structured JSON and
/// returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(threads) = cli.threads {
        // a second initialization (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(exit) => exit,
        Err(e) => {
            let pointer = match &e {
                Error::Config { pointer, .. } => pointer.clone(),
                _ => String::new(),
            };
            eprintln!(
                "{}",
                serde_json::json!({
                    "error": { "code": e.code(), "pointer": pointer, "message": e.to_string() }
                })
            );
            match e {
                Error::Config { .. } | Error::WeightSum { .. } | Error::LsmWeights(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let mut cfg = load_config(cli)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = cli.tol {
        cfg.tolerances.phase = tol;
        cfg.tolerances.wall_bracket = tol;
    }
    let out_dir = cli
        .out
        .clone()
        .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&out_dir)?;

    match &cli.command {
        Command::BuildQuiver { order, weights } => cmd_build_quiver(&cfg, *order, weights.as_deref(), &out_dir),
        Command::CheckStability {
            mode,
            object,
            subobjects,
            charge,
            subcharges,
            rep,
            at,
            theta,
            omega,
            theta_angle,
            ls,
            degree_d,
        } => cmd_check_stability(
            &cfg,
            &out_dir,
            StabilityArgs {
                mode: *mode,
                object: object.as_deref(),
                subobjects: subobjects.as_deref(),
                charge: charge.as_deref(),
                subcharges: subcharges.as_deref(),
                rep: rep.as_deref(),
                at: at.as_deref(),
                theta: theta.as_deref(),
                omega: *omega,
                theta_angle: *theta_angle,
                ls: *ls,
                degree_d: *degree_d,
            },
        ),
        Command::ScanWalls { charge, subcharges } => {
            cmd_scan_walls(&cfg, charge.as_deref(), subcharges.as_deref(), &out_dir)
        }
        Command::FlowGradings {
            charge_e,
            charge_f,
            degree,
        } => cmd_flow_gradings(&cfg, charge_e, charge_f, *degree, &out_dir),
        Command::Spectrum { cap, at } => {
            cmd_spectrum(&cfg, cap.as_deref(), at.as_deref(), &out_dir)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    match (&cli.config, &cli.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            RunConfig::from_json(&text)
        }
        (None, Some(name)) => RunConfig::preset(name),
        (None, None) => RunConfig::preset("z3"),
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn quiver_from_config(cfg: &RunConfig) -> Result<Arc<McKayQuiver>> {
    let spec = cfg.orbifold_spec()?;
    let mut q = build_mckay_quiver(&spec)?;
    q.relations = superpotential_relations(&q)?;
    Ok(Arc::new(q))
}

fn parse_charge(s: &str, pointer: &str) -> Result<Charge> {
    Ok(Charge(parse_i64_list(s, pointer)?))
}

fn parse_charge_list(s: &str, pointer: &str) -> Result<Vec<Charge>> {
    s.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| parse_charge(chunk, pointer))
        .collect()
}

fn parse_chern(s: &str, pointer: &str) -> Result<ChernData> {
    let ch = s
        .split(',')
        .map(|x| parse_rational(x, pointer))
        .collect::<Result<Vec<_>>>()?;
    ChernData::new(ch)
}

fn cmd_build_quiver(
    cfg: &RunConfig,
    order: Option<u32>,
    weights: Option<&str>,
    out_dir: &Path,
) -> Result<i32> {
    let spec = match (order, weights) {
        (Some(n), Some(w)) => {
            let list = parse_i64_list(w, "--weights")?;
            let arr: [i64; 3] = list.clone().try_into().map_err(|_| {
                Error::config("--weights", format!("need exactly 3 weights, got {}", list.len()))
            })?;
            crate::orbifold::OrbifoldSpec::new(n, arr)?
        }
        (None, None) => cfg.orbifold_spec()?,
        _ => {
            return Err(Error::config(
                "--order",
                "`--order` and `--weights` must be given together",
            ))
        }
    };
    let mut q = build_mckay_quiver(&spec)?;
    q.relations = superpotential_relations(&q)?;
    let json = serde_json::to_value(&q).map_err(|e| Error::Io(e.to_string()))?;
    emit::write_json(&out_dir.join("quiver.json"), &json)?;
    println!(
        "{}, {}, {}",
        plural(q.node_count, "node"),
        plural(q.arrows.len(), "arrow"),
        plural(q.relations.len(), "relation")
    );
    Ok(0)
}

struct StabilityArgs<'a> {
    mode: Mode,
    object: Option<&'a str>,
    subobjects: Option<&'a str>,
    charge: Option<&'a str>,
    subcharges: Option<&'a str>,
    rep: Option<&'a Path>,
    at: Option<&'a str>,
    theta: Option<&'a str>,
    omega: Option<f64>,
    theta_angle: f64,
    ls: f64,
    degree_d: Option<u32>,
}

fn load_rep(cfg: &RunConfig, path: &Path) -> Result<QuiverRep> {
    let text = std::fs::read_to_string(path)?;
    let json: RepJson = serde_json::from_str(&text)
        .map_err(|e| Error::config("--rep", format!("bad rep JSON: {e}")))?;
    let quiver = quiver_from_config(cfg)?;
    QuiverRep::from_json_value(quiver, &json)
}

fn cmd_check_stability(cfg: &RunConfig, out_dir: &Path, args: StabilityArgs) -> Result<i32> {
    let verdict_json = match args.mode {
        Mode::Mu => {
            let object = args
                .object
                .ok_or_else(|| Error::config("--object", "mu mode needs `--object rank,c1`"))?;
            let c = parse_chern(object, "--object")?;
            let subs = match args.subobjects {
                Some(s) => s
                    .split(';')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| parse_chern(x, "--subobjects"))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let verdict = is_mu_stable(&c, &subs)?;
            let mut v = serde_json::to_value(&verdict).map_err(|e| Error::Io(e.to_string()))?;
            v["mode"] = serde_json::json!("mu");
            v
        }
        Mode::Theta => {
            let rep_path = args
                .rep
                .ok_or_else(|| Error::config("--rep", "theta mode needs `--rep FILE`"))?;
            let rep = load_rep(cfg, rep_path)?;
            let theta = match args.theta {
                Some(s) => s
                    .split(',')
                    .map(|x| parse_rational(x, "--theta"))
                    .collect::<Result<Vec<_>>>()?,
                None => cfg
                    .theta_vector()?
                    .ok_or_else(|| Error::config("/theta", "theta mode needs a theta vector"))?,
            };
            let verdict = is_theta_stable(&rep, &theta, &cfg.subrep_options())?;
            let mut v = serde_json::to_value(&verdict).map_err(|e| Error::Io(e.to_string()))?;
            v["mode"] = serde_json::json!("theta");
            v
        }
        Mode::Pi => {
            let p = cfg.period_model()?;
            let t = match args.at {
                Some(s) => parse_complex(s, "--at")?,
                None => cfg.moduli_point()?,
            };
            let verdict = if let Some(rep_path) = args.rep {
                let rep = load_rep(cfg, rep_path)?;
                let map = cfg.charge_map_or_identity(rep.quiver.node_count)?;
                pi_stability_of_rep(
                    &rep,
                    &map,
                    t,
                    &p,
                    cfg.tolerances.massless,
                    cfg.tolerances.phase,
                    &cfg.subrep_options(),
                )?
            } else {
                let charge = match args.charge {
                    Some(s) => parse_charge(s, "--charge")?,
                    None => Charge(cfg.charge.clone().ok_or_else(|| {
                        Error::config("--charge", "pi mode needs `--charge` or config `charge`")
                    })?),
                };
                let subs = match args.subcharges {
                    Some(s) => parse_charge_list(s, "--subcharges")?,
                    None => cfg
                        .subcharges
                        .clone()
                        .map(|v| v.into_iter().map(Charge).collect())
                        .ok_or_else(|| {
                            Error::config(
                                "--subcharges",
                                "pi mode needs `--subcharges` or config `subcharges`",
                            )
                        })?,
                };
                is_pi_stable(
                    &charge,
                    &subs,
                    t,
                    &p,
                    cfg.tolerances.massless,
                    cfg.tolerances.phase,
                )?
            };
            let mut v = verdict.to_json();
            v["mode"] = serde_json::json!("pi");
            v
        }
        Mode::Mmms => {
            let object = args
                .object
                .ok_or_else(|| Error::config("--object", "mmms mode needs `--object` Chern data"))?;
            let c = parse_chern(object, "--object")?;
            let omega = args
                .omega
                .ok_or_else(|| Error::config("--omega", "mmms mode needs `--omega`"))?;
            let d = args.degree_d.unwrap_or((c.ch.len() - 1).max(1) as u32);
            if !(1..=3).contains(&d) {
                return Err(Error::config("--degree-d", "d must be 1, 2, or 3"));
            }
            let value = mmms_slope(&c, omega, args.theta_angle, d, args.ls);
            let omega_exact = num_rational::BigRational::from_float(omega).unwrap();
            let ls_exact = num_rational::BigRational::from_float(args.ls).unwrap();
            let (re, im) = mmms_expansion(&c, &omega_exact, &ls_exact, d);
            serde_json::json!({
                "mode": "mmms",
                "value": value,
                "trace_re": re.to_string(),
                "trace_im": im.to_string(),
                "d": d,
            })
        }
    };
    emit::write_json(&out_dir.join("verdict.json"), &verdict_json)?;
    println!("{verdict_json}");
    Ok(0)
}

fn cmd_scan_walls(
    cfg: &RunConfig,
    charge: Option<&str>,
    subcharges: Option<&str>,
    out_dir: &Path,
) -> Result<i32> {
    let p = cfg.period_model()?;
    let path = cfg.moduli_path()?;
    let parent = match charge {
        Some(s) => parse_charge(s, "--charge")?,
        None => Charge(cfg.charge.clone().ok_or_else(|| {
            Error::config("/charge", "scan-walls needs a parent charge")
        })?),
    };
    let subs: Vec<Charge> = match subcharges {
        Some(s) => parse_charge_list(s, "--subcharges")?,
        None => cfg
            .subcharges
            .clone()
            .map(|v| v.into_iter().map(Charge).collect())
            .ok_or_else(|| Error::config("/subcharges", "scan-walls needs subcharges"))?,
    };
    let scan = find_walls_on_path(&parent, &subs, &path, &p, cfg.tolerances.wall_bracket)?;
    std::fs::write(out_dir.join("walls.csv"), emit::walls_csv(&scan)?)?;
    std::fs::write(out_dir.join("walls.svg"), emit::scan_svg(&path, &scan))?;

    if let Some(grid_cfg) = &cfg.grid {
        let grid = wall_grid_2d(&parent, &subs, grid_cfg.rect(), &p, grid_cfg.nx, grid_cfg.ny)?;
        std::fs::write(out_dir.join("wall_grid.svg"), emit::grid_svg(&grid))?;
    }

    let loci: usize = scan.walls.iter().map(|w| w.loci.len()).sum();
    println!(
        "{} {} across {} witnesses; {} skipped, {} degenerate",
        loci,
        if loci == 1 { "wall locus" } else { "wall loci" },
        subs.len(),
        plural(scan.skipped_samples.len(), "sample"),
        scan.degenerate.len()
    );
    Ok(0)
}

fn cmd_flow_gradings(
    cfg: &RunConfig,
    charge_e: &str,
    charge_f: &str,
    degree: f64,
    out_dir: &Path,
) -> Result<i32> {
    let p = cfg.period_model()?;
    let path = cfg.moduli_path()?;
    let e = parse_charge(charge_e, "--charge-e")?;
    let f = parse_charge(charge_f, "--charge-f")?;
    let record = MorphismRecord::new(
        e.clone(),
        f.clone(),
        degree,
        path.start(),
        &p,
        cfg.tolerances.massless,
    )?;
    let trace = flow_along_path(&record, &path, &p, cfg.tolerances.massless)?;
    std::fs::write(out_dir.join("trace.csv"), emit::trace_csv(&trace)?)?;

    let endpoints = FlowEndpoints {
        start_degree: trace.first().map_or(degree, |t| t.degree),
        end_degree: trace.last().map_or(degree, |t| t.degree),
    };
    let flags = abelian_violation_check(&[endpoints]);
    let monodromy = if path.is_closed(1e-9) {
        Some(monodromy_shift(&e, &f, &path, &p, cfg.tolerances.massless)?)
    } else {
        None
    };
    let summary = serde_json::json!({
        "start_degree": endpoints.start_degree,
        "end_degree": endpoints.end_degree,
        "monodromy_shift": monodromy,
        "flags": flags.iter().map(|(_, f)| serde_json::to_value(f).unwrap()).collect::<Vec<_>>(),
    });
    emit::write_json(&out_dir.join("flags.json"), &summary)?;
    println!("{summary}");
    Ok(0)
}

fn cmd_spectrum(
    cfg: &RunConfig,
    cap: Option<&str>,
    at: Option<&str>,
    out_dir: &Path,
) -> Result<i32> {
    let quiver = quiver_from_config(cfg)?;
    let p = cfg.period_model()?;
    let t = match at {
        Some(s) => parse_complex(s, "--at")?,
        None => cfg.moduli_point()?,
    };
    let cap_vec: Vec<usize> = match cap {
        Some(s) => parse_i64_list(s, "--cap")?
            .into_iter()
            .map(|x| x.max(0) as usize)
            .collect(),
        None => vec![cfg.caps.spectrum_per_node; quiver.node_count],
    };
    let map = cfg.charge_map_or_identity(quiver.node_count)?;
    let entries = stable_spectrum(&quiver, &cap_vec, t, &p, &map, &cfg.spectrum_options())?;
    let json = serde_json::to_value(&entries).map_err(|e| Error::Io(e.to_string()))?;
    emit::write_json(&out_dir.join("spectrum.json"), &json)?;

    let ok = entries.iter().filter(|e| e.error.is_none()).count();
    let stable = entries.iter().filter(|e| e.verdict == "stable").count();
    println!(
        "{} ({} stable, {} failed)",
        plural(entries.len(), "charge"),
        stable,
        entries.len() - ok
    );
    // partial success is success; a sweep with zero successes is a failure
    Ok(if ok > 0 || entries.is_empty() { 0 } else { 1 })
}
