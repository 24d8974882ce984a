//! Command-line front end. `run` returns the process exit code: 0 success,
//! 1 usage, 2 invalid gadget or plan, 3 construction failure.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::division::{build_division, build_repetition, psi_avoiding_g, validate_plan, DivisionPlan};
use crate::export::{export_fold, export_svg, ExportOptions, Format, DEFAULT_PRECISION};
use crate::first::{build_first, FirstParams};
use crate::frame::{build_frame, validate, GadgetSpec, Side};
use crate::geometry::Angle;
use crate::interference::{analyze, AdjacencyCase};
use crate::pattern::{CreasePattern, Fold};
use crate::{cheng, onepleat, second, third, GadgetError};

pub const PRECISION_ENV: &str = "GADGET_FORGE_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "gadget-forge", version, about = "Crease patterns for negative origami-extrusion gadgets")]
struct Cli {
    /// key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Default, Args)]
struct SpecArgs {
    /// Apex angle α in degrees.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_l: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta_l: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta_r: Option<f64>,
    /// Ridge length |AB|.
    #[arg(long)]
    ab_len: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
struct OutArgs {
    /// Output file; with `--format both` its extension is replaced.
    #[arg(long)]
    out: Option<PathBuf>,
    /// fold, svg or both.
    #[arg(long)]
    format: Option<String>,
    /// Emit the horizontally flipped pattern with mountains and valleys swapped.
    #[arg(long)]
    flip: bool,
    /// Decimal places in FOLD coordinates, 6 to 15.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    bbox_scale: Option<f64>,
    #[arg(long)]
    units_per_ab: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Onepleat,
    Cheng,
    First,
    Second,
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    L,
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::L,
            SideArg::R => Side::R,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a gadget satisfies the validity conditions.
    Validate {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print the pleat frame points.
    Frame {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Build one crease pattern.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        construction: Construction,
        /// Side τ for the one-pleat, Cheng and first constructions.
        #[arg(long, value_enum, default_value = "l")]
        tau: SideArg,
        /// ∠AB_τE_τ in degrees for the first construction.
        #[arg(long)]
        abe: Option<f64>,
        /// θ in degrees for the second construction when it is free.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        /// One gadget per line as key=value pairs; files go into the --out directory.
        #[arg(long)]
        batch: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Divide a third-construction gadget into stacked gadgets.
    Divide {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        d: usize,
        /// Ratio p₁,…,p_d from the bottom; normalized to sum to d.
        #[arg(long, value_delimiter = ',')]
        proportions: Option<Vec<f64>>,
        /// ψ_L for levels 2..d in degrees.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        psi: Option<Vec<f64>>,
        /// Choose ψ on every level so that no G appears.
        #[arg(long, conflicts_with = "psi")]
        avoid_g: bool,
        /// Treat the gadget as the lowest gadget and extend upward.
        #[arg(long)]
        repeat: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimum shared length between two neighboring third-construction gadgets.
    Interfere {
        /// α,β_L,β_R[,δ_L,δ_R] in degrees for the gadget on the left.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// |B₁B₂|.
        #[arg(long)]
        shared_len: f64,
        #[arg(long)]
        ab_len: Option<f64>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Self {
        let code = match e {
            GadgetError::Invalid(_) | GadgetError::PlanRejected(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

type Config = BTreeMap<String, String>;

const CONFIG_KEYS: &[&str] = &[
    "alpha", "beta-l", "beta-r", "delta-l", "delta-r", "ab-len", "format", "precision", "bbox-scale", "units-per-ab", "flip",
];

fn parse_config(text: &str) -> Result<Config, Failure> {
    let mut map = Config::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| usage(format!("line {}: expected key=value, got {tok:?}", i + 1)))?;
            let k = k.trim().replace('_', "-");
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(usage(format!("line {}: unknown key {k:?}", i + 1)));
            }
            map.insert(k, v.trim().to_string());
        }
    }
    Ok(map)
}

fn num<T: std::str::FromStr>(cfg: &Config, key: &str) -> Result<Option<T>, Failure> {
    cfg.get(key)
        .map(|v| v.parse::<T>().map_err(|_| usage(format!("{key}: cannot parse {v:?}"))))
        .transpose()
}

fn spec_from(args: &SpecArgs, cfg: &Config) -> Result<GadgetSpec, Failure> {
    let pick = |flag: Option<f64>, key: &str| -> Result<Option<f64>, Failure> {
        Ok(match flag {
            Some(v) => Some(v),
            None => num(cfg, key)?,
        })
    };
    let need = |v: Option<f64>, key: &str| v.ok_or_else(|| usage(format!("missing --{key}")));
    let alpha = need(pick(args.alpha, "alpha")?, "alpha")?;
    let beta_l = need(pick(args.beta_l, "beta-l")?, "beta-l")?;
    let beta_r = need(pick(args.beta_r, "beta-r")?, "beta-r")?;
    let delta_l = pick(args.delta_l, "delta-l")?.unwrap_or(0.0);
    let delta_r = pick(args.delta_r, "delta-r")?.unwrap_or(0.0);
    let ab = pick(args.ab_len, "ab-len")?.unwrap_or(1.0);
    Ok(GadgetSpec::from_degrees(alpha, beta_l, beta_r, delta_l, delta_r).with_ab_len(ab))
}

fn precision_from(flag: Option<u32>, cfg: &Config) -> Result<u32, Failure> {
    if let Some(p) = flag {
        return Ok(p);
    }
    if let Ok(v) = std::env::var(PRECISION_ENV) {
        return v.trim().parse().map_err(|_| usage(format!("{PRECISION_ENV}: cannot parse {v:?}")));
    }
    Ok(num(cfg, "precision")?.unwrap_or(DEFAULT_PRECISION))
}

fn options_from(out: &OutArgs, cfg: &Config) -> Result<(ExportOptions, bool), Failure> {
    let mut opts = ExportOptions::default();
    if let Some(f) = out.format.clone().or_else(|| cfg.get("format").cloned()) {
        opts.format = f.parse::<Format>().map_err(usage)?;
    }
    opts.precision = precision_from(out.precision, cfg)?;
    if let Some(s) = if out.bbox_scale.is_some() { out.bbox_scale } else { num(cfg, "bbox-scale")? } {
        opts.bbox_scale = s;
    }
    if let Some(u) = if out.units_per_ab.is_some() { out.units_per_ab } else { num(cfg, "units-per-ab")? } {
        opts.units_per_ab = u;
    }
    opts.check().map_err(|e| usage(e.to_string()))?;
    let flip = out.flip || num::<bool>(cfg, "flip")?.unwrap_or(false);
    Ok((opts, flip))
}

/// Writes the pattern per the options; returns the lines to print.
fn emit(cp: &CreasePattern, out: Option<&Path>, opts: &ExportOptions, flip: bool) -> Result<Vec<String>, Failure> {
    let cp = if flip { cp.flipped() } else { cp.clone() };
    let fail = |e: crate::export::ExportError| Failure { code: 3, message: e.to_string() };
    let Some(path) = out else {
        return match opts.format {
            Format::Fold => Ok(vec![export_fold(&cp, opts).map_err(fail)?]),
            Format::Svg => Ok(vec![export_svg(&cp, opts).map_err(fail)?]),
            Format::Both => Err(usage("--format both needs --out")),
        };
    };
    let mut files = Vec::new();
    match opts.format {
        Format::Fold => files.push((path.to_path_buf(), export_fold(&cp, opts).map_err(fail)?)),
        Format::Svg => files.push((path.to_path_buf(), export_svg(&cp, opts).map_err(fail)?)),
        Format::Both => {
            files.push((path.with_extension("fold"), export_fold(&cp, opts).map_err(fail)?));
            files.push((path.with_extension("svg"), export_svg(&cp, opts).map_err(fail)?));
        }
    }
    let mut lines = vec![summary(&cp)];
    for (p, text) in files {
        std::fs::write(&p, text).map_err(|e| io_failure(&p, e))?;
        lines.push(format!("wrote {}\n", p.display()));
    }
    Ok(lines)
}

fn summary(cp: &CreasePattern) -> String {
    let mut s = format!(
        "{}: {} creases, {} mountain, {} valley\n",
        cp.report.construction,
        cp.creases.iter().filter(|c| c.fold != Fold::Border).count(),
        cp.count_fold(Fold::Mountain),
        cp.count_fold(Fold::Valley)
    );
    for (k, v) in &cp.report.interference {
        s.push_str(&format!("{k} = {v:.9}\n"));
    }
    for b in &cp.report.branches {
        s.push_str(&format!("branch {}: {} ({:.9} vs {:.9})\n", b.name, b.inequality, b.lhs, b.rhs));
    }
    s
}

fn build_one(
    spec: &GadgetSpec,
    construction: Construction,
    tau: Side,
    abe: Option<f64>,
    theta: Option<f64>,
) -> Result<CreasePattern, GadgetError> {
    match construction {
        Construction::Onepleat => onepleat::build_onepleat(spec, tau),
        Construction::Cheng => cheng::build_cheng(spec, tau),
        Construction::First => {
            let params = match abe {
                Some(a) => FirstParams { tau, abe: Angle::from_deg(a) },
                None => FirstParams::with_default_abe(spec, tau),
            };
            build_first(spec, params)
        }
        Construction::Second => second::build_second(spec, theta.map(Angle::from_deg)),
        Construction::Third => third::build_third(spec),
    }
}

/// Spec overrides on one batch line.
fn batch_specs(text: &str, base: &SpecArgs, cfg: &Config) -> Result<Vec<(usize, GadgetSpec)>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let line_cfg = parse_config(body).map_err(|f| usage(format!("batch line {}: {}", i + 1, f.message)))?;
        let mut merged = cfg.clone();
        merged.extend(line_cfg.clone());
        // Per-line values win over the command-line flags for the same key.
        let mut args = base.clone();
        for (key, slot) in [
            ("alpha", &mut args.alpha),
            ("beta-l", &mut args.beta_l),
            ("beta-r", &mut args.beta_r),
            ("delta-l", &mut args.delta_l),
            ("delta-r", &mut args.delta_r),
            ("ab-len", &mut args.ab_len),
        ] {
            if line_cfg.contains_key(key) {
                *slot = None;
            }
        }
        out.push((i + 1, spec_from(&args, &merged)?));
    }
    Ok(out)
}

fn run_command(cmd: Command, cfg: &Config, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let mut print = |s: &str| {
        let _ = stdout.write_all(s.as_bytes());
    };
    match cmd {
        Command::Validate { spec } => {
            let spec = spec_from(&spec, cfg)?;
            let report = validate(&spec);
            print(&format!("{report}\n"));
            if report.is_valid() {
                print(&format!("γ = {:.9}°\n", spec.gamma().deg()));
                Ok(0)
            } else {
                Ok(2)
            }
        }
        Command::Frame { spec } => {
            let spec = spec_from(&spec, cfg)?;
            let f = build_frame(&spec)?;
            let p = precision_from(None, cfg)? as usize;
            for (name, pt) in [("A", f.a), ("B_L", f.b_l), ("B_R", f.b_r), ("C", f.c), ("P", f.p)] {
                print(&format!("{name} {:.p$} {:.p$}\n", pt.x, pt.y));
            }
            let d = f.derived;
            print(&format!("gamma_L {:.p$}\ngamma_R {:.p$}\nr {:.p$}\n", d.gamma_l.deg(), d.gamma_r.deg(), d.r));
            Ok(0)
        }
        Command::Build { spec, construction, tau, abe, theta, batch, out } => {
            let (opts, flip) = options_from(&out, cfg)?;
            let Some(batch) = batch else {
                let spec = spec_from(&spec, cfg)?;
                let cp = build_one(&spec, construction, tau.into(), abe, theta)?;
                for line in emit(&cp, out.out.as_deref(), &opts, flip)? {
                    print(&line);
                }
                return Ok(0);
            };
            let dir = out.out.clone().ok_or_else(|| usage("--batch needs an --out directory"))?;
            let text = std::fs::read_to_string(&batch).map_err(|e| io_failure(&batch, e))?;
            let specs = batch_specs(&text, &spec, cfg)?;
            std::fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
            let ext = match opts.format {
                Format::Svg => "svg",
                _ => "fold",
            };
            let results: Vec<(usize, Result<Vec<String>, Failure>)> = specs
                .par_iter()
                .map(|(line, spec)| {
                    let path = dir.join(format!("line{line}.{ext}"));
                    let r = build_one(spec, construction, tau.into(), abe, theta)
                        .map_err(Failure::from)
                        .and_then(|cp| emit(&cp, Some(&path), &opts, flip));
                    (*line, r)
                })
                .collect();
            let mut code = 0;
            for (line, r) in results {
                match r {
                    Ok(lines) => lines.iter().for_each(|l| print(&format!("line {line}: {l}"))),
                    Err(f) => {
                        print(&format!("line {line}: error: {}\n", f.message));
                        code = code.max(f.code);
                    }
                }
            }
            Ok(code)
        }
        Command::Divide { spec, d, proportions, psi, avoid_g, repeat, out } => {
            let spec = spec_from(&spec, cfg)?;
            let (opts, flip) = options_from(&out, cfg)?;
            let ratio = proportions.unwrap_or_else(|| vec![1.0; d]);
            if ratio.len() != d {
                return Err(usage(format!("--proportions has {} entries, expected {d}", ratio.len())));
            }
            let plan = DivisionPlan::from_ratio(&ratio, None)?;
            let psi_list = if avoid_g {
                psi_avoiding_g(&spec, &plan.proportions)?.ok_or_else(|| Failure {
                    code: 3,
                    message: "no ψ on the 10⁻³ grid avoids G on every level".into(),
                })?
            } else {
                psi.unwrap_or_else(|| vec![0.0; d.saturating_sub(1)]).into_iter().map(Angle::from_deg).collect()
            };
            let plan = plan.with_psi(psi_list)?;
            let report = validate_plan(&spec, &plan)?;
            // Kept off stdout when stdout carries the pattern itself.
            if let Some(b) = report.equal_gamma_bound_deg.filter(|_| out.out.is_some() || !report.is_valid()) {
                print(&format!("equal-division bound γ ≤ {b:.2}°, γ = {:.2}°\n", report.gamma_deg));
            }
            if !report.is_valid() {
                for v in &report.violations {
                    print(&format!("{v}\n"));
                }
                return Ok(2);
            }
            let cp = if repeat { build_repetition(&spec, &plan)? } else { build_division(&spec, &plan)? };
            for line in emit(&cp, out.out.as_deref(), &opts, flip)? {
                print(&line);
            }
            Ok(0)
        }
        Command::Interfere { left, right, shared_len, ab_len } => {
            let ab = match ab_len {
                Some(a) => a,
                None => num(cfg, "ab-len")?.unwrap_or(1.0),
            };
            let l = parse_short_spec(&left)?.with_ab_len(ab);
            let r = parse_short_spec(&right)?.with_ab_len(ab);
            let rep = analyze(&AdjacencyCase::new(&l, &r, shared_len)?);
            let p = precision_from(None, cfg)? as usize;
            print(&format!("theta_1R {:.p$}\ntheta_2L {:.p$}\n", rep.theta_1r_deg, rep.theta_2l_deg));
            print(&format!("K_neg_1R {:.p$}\nK_neg_2L {:.p$}\n", rep.k_1r, rep.k_2l));
            print(&format!("minimum {:.p$}\nshared {:.p$}\n", rep.min_shared_len, rep.shared_len));
            match rep.apex_floor {
                Some(a) => print(&format!("apex_floor {a:.p$}\n")),
                None => print("apex_floor none\n"),
            }
            print(if rep.ok { "verdict OK\n" } else { "verdict COLLIDE\n" });
            Ok(0)
        }
    }
}

fn parse_short_spec(s: &str) -> Result<GadgetSpec, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("cannot parse {t:?} in {s:?}"))))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, bl, br] => Ok(GadgetSpec::from_degrees(*a, *bl, *br, 0.0, 0.0)),
        [a, bl, br, dl, dr] => Ok(GadgetSpec::from_degrees(*a, *bl, *br, *dl, *dr)),
        _ => Err(usage(format!("expected α,β_L,β_R[,δ_L,δ_R], got {s:?}"))),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let cfg = match &cli.config {
        None => Ok(Config::new()),
        Some(p) => std::fs::read_to_string(p).map_err(|e| io_failure(p, e)).and_then(|t| parse_config(&t)),
    };
    let result = cfg.and_then(|cfg| run_command(cli.cmd, &cfg, stdout));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
