use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use qwalk_core::evolution::{bin_index, binned_density, distribution, evolve_capped};
use qwalk_core::limits::{ac_mass, konno_density, loc_mass, time_averaged_measure, weight, SUPPORT_EDGE};
use qwalk_core::verify::{fixture_tuples, run_suite, ParameterTuple, Suite, SuiteOptions, SuiteReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{max_t, Format, RunConfig, Walk};
use crate::error::{CliError, CliResult};
use crate::output::{csv_bytes, float, json_bytes, write};

pub const SIMULATE_HEADER: [&str; 5] = ["x", "x_over_t", "prob", "t_prob", "binned_density"];
pub const DENSITY_HEADER: [&str; 4] = ["x", "w", "f_k", "density"];
pub const TIMEAVG_HEADER: [&str; 2] = ["x", "mu_bar"];
pub const SUMMARY_HEADER: [&str; 7] = ["index", "name", "sigma_plus", "sigma_minus", "C", "ac_mass", "mass_check"];

pub const DEFAULT_BIN_WIDTH: f64 = 0.02;
pub const DEFAULT_GRID_POINTS: usize = 1001;
pub const MAX_GRID_POINTS: usize = 10_000_000;
pub const MAX_SWEEP_ENTRIES: usize = 10_000;

/// Distance kept from the support edges by the density grid.
pub const GRID_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SimRow {
    pub x: i64,
    pub x_over_t: f64,
    pub prob: f64,
    pub t_prob: f64,
    pub binned_density: f64,
}

#[derive(Serialize)]
struct SimulateJson<'a> {
    t: usize,
    bin_width: f64,
    rows: &'a [SimRow],
}

/// One row per site of the occupied parity. At `t = 0` the single origin row
/// carries zeros in the rescaled columns.
pub fn simulate_rows(walk: &Walk, t: usize, bin_width: f64, max_t: usize) -> CliResult<Vec<SimRow>> {
    let state = evolve_capped(&walk.params, &walk.init, t, max_t)?;
    let dist = distribution(&state);
    if t == 0 {
        return Ok(vec![SimRow {
            x: 0,
            x_over_t: 0.0,
            prob: dist.prob(0),
            t_prob: 0.0,
            binned_density: 0.0,
        }]);
    }
    let bins = binned_density(&dist, bin_width)?;
    let k_min = bin_index(-1.0, bin_width);
    Ok(dist
        .sites()
        .map(|(x, prob)| {
            let v = dist.scaled(x);
            SimRow {
                x,
                x_over_t: v,
                prob,
                t_prob: t as f64 * prob,
                binned_density: bins[(bin_index(v, bin_width) - k_min) as usize].1,
            }
        })
        .collect())
}

fn simulate_bytes(rows: &[SimRow], t: usize, bin_width: f64, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => csv_bytes(
            &SIMULATE_HEADER,
            rows.iter().map(|r| {
                [
                    r.x.to_string(),
                    float(r.x_over_t),
                    float(r.prob),
                    float(r.t_prob),
                    float(r.binned_density),
                ]
            }),
        ),
        Format::Json => json_bytes(&SimulateJson { t, bin_width, rows }),
    }
}

pub fn simulate(walk: &Walk, t: usize, bin_width: f64, out: &Path, format: Format) -> CliResult<()> {
    let rows = simulate_rows(walk, t, bin_width, max_t()?)?;
    write(out, &simulate_bytes(&rows, t, bin_width, format)?)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityRow {
    pub x: f64,
    pub w: f64,
    pub f_k: f64,
    pub density: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensitySummary {
    #[serde(rename = "C")]
    pub loc_mass: f64,
    pub ac_mass: f64,
    pub sum: f64,
}

#[derive(Serialize)]
struct DensityJson<'a> {
    #[serde(flatten)]
    summary: DensitySummary,
    rows: &'a [DensityRow],
}

pub fn density_rows(walk: &Walk, grid_points: usize) -> CliResult<Vec<DensityRow>> {
    if grid_points < 3 {
        return Err(CliError::Config(format!("grid needs at least 3 points, got {grid_points}")));
    }
    if grid_points > MAX_GRID_POINTS {
        return Err(CliError::Resource(format!("grid of {grid_points} points exceeds {MAX_GRID_POINTS}")));
    }
    let lo = -SUPPORT_EDGE + GRID_EPS;
    let hi = SUPPORT_EDGE - GRID_EPS;
    (0..grid_points)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (grid_points - 1) as f64;
            let w = weight(x, &walk.params, &walk.init)?;
            let f_k = konno_density(x, SUPPORT_EDGE)?;
            Ok(DensityRow { x, w, f_k, density: w * f_k })
        })
        .collect()
}

pub fn density_summary(walk: &Walk) -> CliResult<DensitySummary> {
    let c = loc_mass(&walk.params, &walk.init);
    let ac = ac_mass(&walk.params, &walk.init)?;
    Ok(DensitySummary {
        loc_mass: c,
        ac_mass: ac,
        sum: c + ac,
    })
}

/// `density.csv` gets its scalars in `density.summary.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

pub fn density(walk: &Walk, grid_points: usize, out: &Path, format: Format) -> CliResult<DensitySummary> {
    let rows = density_rows(walk, grid_points)?;
    let summary = density_summary(walk)?;
    match format {
        Format::Csv => {
            let bytes = csv_bytes(
                &DENSITY_HEADER,
                rows.iter().map(|r| [float(r.x), float(r.w), float(r.f_k), float(r.density)]),
            )?;
            write(out, &bytes)?;
            write(&sidecar_path(out), &json_bytes(&summary)?)?;
        }
        Format::Json => write(out, &json_bytes(&DensityJson { summary, rows: &rows })?)?,
    }
    Ok(summary)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TimeAvgRow {
    pub x: i64,
    pub mu_bar: f64,
}

pub fn timeavg(walk: &Walk, xmax: u64, out: &Path, format: Format) -> CliResult<()> {
    let xmax = i64::try_from(xmax).map_err(|_| CliError::Config(format!("xmax {xmax} too large")))?;
    if xmax > MAX_GRID_POINTS as i64 {
        return Err(CliError::Resource(format!("xmax {xmax} exceeds {MAX_GRID_POINTS}")));
    }
    let rows: Vec<TimeAvgRow> = (-xmax..=xmax)
        .map(|x| TimeAvgRow {
            x,
            mu_bar: time_averaged_measure(x, &walk.params, &walk.init),
        })
        .collect();
    let bytes = match format {
        Format::Csv => csv_bytes(&TIMEAVG_HEADER, rows.iter().map(|r| [r.x.to_string(), float(r.mu_bar)]))?,
        Format::Json => json_bytes(&rows)?,
    };
    write(out, &bytes)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    suite: Suite,
    passed: bool,
    #[serde(flatten)]
    report: &'a SuiteReport,
}

pub fn read_tuples(path: &Path) -> CliResult<Vec<ParameterTuple>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Runs the suite and writes the report (to `out`, or stdout); a failed check
/// is reported as [`CliError::Verify`] after the report is written.
pub fn verify(walk: &Walk, suite: Suite, seed_file: Option<&Path>, out: Option<&Path>) -> CliResult<()> {
    let tuples = match seed_file {
        Some(p) => read_tuples(p)?,
        None => fixture_tuples(),
    };
    for t in &tuples {
        t.init()
            .map_err(|e| CliError::Config(format!("seed tuple {t:?}: {e}")))?;
    }
    let opts = SuiteOptions {
        params: walk.params,
        init: walk.init,
        tuples,
        ..SuiteOptions::default()
    };
    let report = run_suite(suite, &opts)?;
    let passed = report.passed();
    let bytes = json_bytes(&VerifyJson {
        suite,
        passed,
        report: &report,
    })?;
    match out {
        Some(p) => write(p, &bytes)?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    for check in &report.checks {
        eprintln!(
            "{} {} = {:e} (tolerance {:e})",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.value,
            check.tolerance
        );
    }
    if passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        Err(CliError::Verify(failed.join(", ")))
    }
}

struct SummaryRow {
    index: usize,
    name: String,
    walk: Walk,
    summary: DensitySummary,
}

fn entry_name(index: usize, cfg: &RunConfig) -> CliResult<String> {
    let name = cfg.out.clone().unwrap_or_else(|| format!("entry_{index:05}"));
    let plain = Path::new(&name).components().count() == 1
        && !name.is_empty()
        && name != "."
        && name != ".."
        && name != "summary.csv"
        && !name.contains(['/', '\\']);
    if !plain {
        return Err(CliError::Config(format!("entry {index}: output name {name:?} must be a plain file name")));
    }
    Ok(name)
}

fn run_entry(root: &Path, index: usize, name: &str, cfg: &RunConfig, max_t: usize) -> CliResult<SummaryRow> {
    let walk = cfg.walk().map_err(|e| CliError::Config(format!("entry {index}: {e}")))?;
    let format = cfg.format.unwrap_or(Format::Csv);
    let dir = root.join(name);
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let summary = density(
        &walk,
        cfg.grid_points.unwrap_or(DEFAULT_GRID_POINTS),
        &dir.join(format!("density.{}", format.extension())),
        format,
    )?;
    if let Some(t) = cfg.t {
        let bin_width = cfg.bin_width.unwrap_or(DEFAULT_BIN_WIDTH);
        let rows = simulate_rows(&walk, t, bin_width, max_t)?;
        write(
            &dir.join(format!("simulate.{}", format.extension())),
            &simulate_bytes(&rows, t, bin_width, format)?,
        )?;
    }
    Ok(SummaryRow {
        index,
        name: name.to_string(),
        walk,
        summary,
    })
}

/// Runs every entry of `params_file` in parallel into `out_dir/<name>/` and
/// writes `out_dir/summary.csv`. On any failure everything this call created
/// is removed again.
pub fn sweep(params_file: &Path, out_dir: &Path) -> CliResult<usize> {
    let text = fs::read_to_string(params_file).map_err(|e| CliError::io(params_file, e))?;
    let configs: Vec<RunConfig> =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", params_file.display())))?;
    if configs.len() > MAX_SWEEP_ENTRIES {
        return Err(CliError::Resource(format!(
            "{} entries exceed the limit of {MAX_SWEEP_ENTRIES}",
            configs.len()
        )));
    }
    let mut names = Vec::with_capacity(configs.len());
    let mut seen = HashSet::new();
    for (i, cfg) in configs.iter().enumerate() {
        let name = entry_name(i, cfg)?;
        if !seen.insert(name.clone()) {
            return Err(CliError::Config(format!("entry {i}: duplicate output path {name:?}")));
        }
        names.push(name);
    }
    let max_t = max_t()?;

    let root_existed = out_dir.exists();
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let summary_path = out_dir.join("summary.csv");
    let preexisting: HashSet<PathBuf> = names
        .iter()
        .map(|n| out_dir.join(n))
        .chain([summary_path.clone()])
        .filter(|p| p.exists())
        .collect();

    let result = configs
        .par_iter()
        .zip(names.par_iter())
        .enumerate()
        .map(|(i, (cfg, name))| run_entry(out_dir, i, name, cfg, max_t))
        .collect::<CliResult<Vec<SummaryRow>>>()
        .and_then(|rows| {
            let bytes = csv_bytes(
                &SUMMARY_HEADER,
                rows.iter().map(|r| {
                    [
                        r.index.to_string(),
                        r.name.clone(),
                        float(r.walk.params.sigma_plus()),
                        float(r.walk.params.sigma_minus()),
                        float(r.summary.loc_mass),
                        float(r.summary.ac_mass),
                        float(r.summary.sum),
                    ]
                }),
            )?;
            write(&summary_path, &bytes)?;
            Ok(rows.len())
        });

    if result.is_err() {
        for p in names.iter().map(|n| out_dir.join(n)).chain([summary_path.clone()]) {
            if preexisting.contains(&p) {
                continue;
            }
            if p.is_dir() {
                let _ = fs::remove_dir_all(&p);
            } else if p.exists() {
                let _ = fs::remove_file(&p);
            }
        }
        if !root_existed {
            let _ = fs::remove_dir(out_dir);
        }
    }
    result
}
