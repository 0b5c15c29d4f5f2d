//! Dispatch of a validated configuration to the simulation modules.
//!
//! Each run produces one CSV table and one JSON summary. CSV numbers carry
//! 17 significant digits; JSON numbers use the shortest representation that
//! reads back to the same `f64`. Apart from `wall_clock_seconds`, both files
//! are a pure function of the configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ifm_core::mz::{self, MzConfig, Outcome};
use ifm_core::scatter::{self, ApertureGrid};
use ifm_core::trigger::{self, BombTrigger};
use ifm_core::well::{self, WellBomb};
use serde::Serialize;

use crate::config::{ExperimentConfig, Kind, Params};
use crate::error::RunError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rows of the strategy table are cut once the run is this unlikely to
/// still be going.
const STRATEGY_TAIL: f64 = 1e-16;
const STRATEGY_MAX_ROWS: u64 = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub kind: Kind,
    pub library_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<&'static str>,
    pub seed: u64,
    pub config: Params,
    pub results: Headline,
    pub wall_clock_seconds: f64,
}

/// Headline numbers, one shape per kind.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Headline {
    Mz {
        p_bright: f64,
        p_dark: f64,
        p_absorbed: f64,
        efficiency: f64,
    },
    Trials {
        n_trials: u64,
        bright: u64,
        dark: u64,
        absorbed: u64,
        chi_square: f64,
        degrees_of_freedom: usize,
        p_value: f64,
    },
    Strategy {
        p_detect: f64,
        p_explode: f64,
        p_give_up: f64,
        expected_photons_sent: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        monte_carlo: Option<StrategyMc>,
    },
    Trigger {
        sigma_p: f64,
        p_paper: f64,
        false_trigger_two_sided: f64,
        false_trigger: f64,
        miss: f64,
        min_error: f64,
        minimum_detectable_kick: f64,
        minimum_detectable_kick_times_delta_x: f64,
    },
    Scatter {
        strip_width: f64,
        diffraction_angle: f64,
        p_absorbed: f64,
        p_forward: f64,
        p_scattered: f64,
        median_k: f64,
        mean_k: f64,
        median_k_a: f64,
        mean_k_a: f64,
        p_th: f64,
        p_inconclusive: f64,
        p_detect_safe: f64,
        p_boom: f64,
    },
    Well {
        delta_x: f64,
        delta_p: f64,
        lambda: f64,
        stay_probability: f64,
        p_excite: f64,
        total_probability: f64,
        mean_energy: f64,
        kick_energy: f64,
        trigger_bound: f64,
        trigger_bound_over_delta_p: f64,
        trigger_bound_times_delta_x: f64,
    },
    Optimize {
        reflectivity: f64,
        objective: f64,
        efficiency: f64,
        expected_photons: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct StrategyMc {
    pub runs: u64,
    pub p_detect: f64,
    pub p_explode: f64,
    pub p_give_up: f64,
    pub mean_photons: f64,
}

/// Everything a run produces, before it touches the filesystem.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: RunSummary,
    pub csv: String,
}

impl RunOutput {
    pub fn summary_json(&self) -> Result<String, RunError> {
        let mut text = serde_json::to_string_pretty(&self.summary)?;
        text.push('\n');
        Ok(text)
    }
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

struct Table {
    text: String,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            text: header.join(",") + "\n",
        }
    }

    fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }
}

/// Runs the experiment in memory.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let start = Instant::now();
    let (results, csv, generator) = match &cfg.params {
        Params::Mz {
            r,
            bomb,
            calibration_phase,
        } => run_mz(*r, *bomb, *calibration_phase)?,
        Params::Trials { r, bomb, n } => run_trials(*r, *bomb, *n, cfg.seed)?,
        Params::Strategy {
            r,
            max_photons,
            mc_runs,
        } => run_strategy(*r, *max_photons, *mc_runs, cfg.seed)?,
        Params::Trigger {
            delta_x,
            p_th,
            q,
            error_budget,
            q_max,
            n_q,
        } => run_trigger(*delta_x, *p_th, *q, *error_budget, *q_max, *n_q)?,
        Params::Scatter {
            width,
            a,
            n_points,
            k_in,
            p_th,
        } => run_scatter(*width, *a, *n_points, *k_in, *p_th)?,
        Params::Well {
            mass,
            omega,
            q,
            n_max,
        } => run_well(*mass, *omega, *q, *n_max)?,
        Params::Optimize { lambda, n_grid } => run_optimize(*lambda, *n_grid)?,
    };
    Ok(RunOutput {
        summary: RunSummary {
            kind: cfg.kind,
            library_version: VERSION,
            generator,
            seed: cfg.seed,
            config: cfg.params.clone(),
            results,
            wall_clock_seconds: start.elapsed().as_secs_f64(),
        },
        csv,
    })
}

type KindOutput = (Headline, String, Option<&'static str>);

fn run_mz(r: f64, bomb: bool, phase: f64) -> Result<KindOutput, RunError> {
    let cfg = MzConfig::with_phase(r, bomb, phase)?;
    let d = mz::outcome_distribution(&cfg);
    let mut table = Table::new(&["outcome", "probability"]);
    for o in Outcome::ALL {
        table.row(&[o.name().to_string(), num(d.get(o))]);
    }
    let conclusive = d.p_dark + d.p_absorbed;
    let efficiency = if conclusive > 0.0 {
        d.p_dark / conclusive
    } else {
        f64::NAN
    };
    Ok((
        Headline::Mz {
            p_bright: d.p_bright,
            p_dark: d.p_dark,
            p_absorbed: d.p_absorbed,
            efficiency,
        },
        table.text,
        None,
    ))
}

fn run_trials(r: f64, bomb: bool, n: u64, seed: u64) -> Result<KindOutput, RunError> {
    let cfg = MzConfig::new(r, bomb)?;
    let tally = mz::run_trials(&cfg, n, seed)?;
    let d = mz::outcome_distribution(&cfg);

    let mut table = Table::new(&["outcome", "count", "frequency", "probability"]);
    let mut chi2 = 0.0;
    let mut categories = 0usize;
    for o in Outcome::ALL {
        table.row(&[
            o.name().to_string(),
            tally.count(o).to_string(),
            num(tally.frequency(o)),
            num(d.get(o)),
        ]);
        let expected = d.get(o) * n as f64;
        // Outcomes below the sampler's resolution cannot occur.
        if d.get(o) * ifm_core::rng::UNIT_STEPS as f64 >= 0.5 {
            chi2 += (tally.count(o) as f64 - expected).powi(2) / expected;
            categories += 1;
        }
    }
    let dof = categories.saturating_sub(1);
    let p_value = match dof {
        0 => 1.0,
        1 => ifm_core::normal::two_sided_tail(chi2.sqrt()),
        _ => (-0.5 * chi2).exp(),
    };
    Ok((
        Headline::Trials {
            n_trials: tally.n_trials,
            bright: tally.bright,
            dark: tally.dark,
            absorbed: tally.absorbed,
            chi_square: chi2,
            degrees_of_freedom: dof,
            p_value,
        },
        table.text,
        Some(ifm_core::rng::GENERATOR),
    ))
}

fn run_strategy(
    r: f64,
    max_photons: Option<u64>,
    mc_runs: u64,
    seed: u64,
) -> Result<KindOutput, RunError> {
    let cfg = MzConfig::new(r, true)?;
    let budget = max_photons.unwrap_or(u64::MAX);
    let report = mz::sequential_strategy(&cfg, budget)?;

    let mut table = Table::new(&["photons", "p_detect", "p_explode", "p_give_up", "expected_photons_sent"]);
    let mut k = 1u64;
    loop {
        let partial = mz::sequential_strategy(&cfg, k)?;
        table.row(&[
            k.to_string(),
            num(partial.p_detect),
            num(partial.p_explode),
            num(partial.p_give_up),
            num(partial.expected_photons_sent),
        ]);
        if k >= budget || k >= STRATEGY_MAX_ROWS || partial.p_give_up < STRATEGY_TAIL {
            break;
        }
        k += 1;
    }

    let monte_carlo = if mc_runs > 0 {
        let s = mz::simulate_strategy(&cfg, budget, mc_runs, seed)?;
        Some(StrategyMc {
            runs: s.runs,
            p_detect: s.p_detect(),
            p_explode: s.p_explode(),
            p_give_up: s.p_give_up(),
            mean_photons: s.mean_photons(),
        })
    } else {
        None
    };
    let generator = monte_carlo.as_ref().map(|_| ifm_core::rng::GENERATOR);
    Ok((
        Headline::Strategy {
            p_detect: report.p_detect,
            p_explode: report.p_explode,
            p_give_up: report.p_give_up,
            expected_photons_sent: report.expected_photons_sent,
            monte_carlo,
        },
        table.text,
        generator,
    ))
}

fn run_trigger(
    delta_x: f64,
    p_th: f64,
    q: f64,
    error_budget: f64,
    q_max: f64,
    n_q: usize,
) -> Result<KindOutput, RunError> {
    let t = BombTrigger::new(delta_x, p_th)?;
    let at_q = trigger::kick_discrimination(&t, q)?;
    let q_min = trigger::minimum_detectable_kick(&t, error_budget)?;

    let mut table = Table::new(&["q", "min_error", "false_trigger", "miss"]);
    for i in 0..n_q {
        let qi = q_max * i as f64 / (n_q - 1) as f64;
        let r = trigger::kick_discrimination(&t, qi)?;
        table.row(&[num(qi), num(r.min_error), num(r.false_trigger), num(r.miss)]);
    }
    Ok((
        Headline::Trigger {
            sigma_p: t.sigma_p(),
            p_paper: t.p_paper(),
            false_trigger_two_sided: trigger::false_trigger_probability(&t),
            false_trigger: at_q.false_trigger,
            miss: at_q.miss,
            min_error: at_q.min_error,
            minimum_detectable_kick: q_min,
            minimum_detectable_kick_times_delta_x: q_min * delta_x,
        },
        table.text,
        None,
    ))
}

fn run_scatter(width: f64, a: f64, n_points: usize, k_in: f64, p_th: f64) -> Result<KindOutput, RunError> {
    let grid = ApertureGrid::new(width, n_points, a, k_in)?;
    let spec = scatter::angular_spectrum(&grid);
    let stats = scatter::momentum_transfer_stats(&spec)?;
    let t = BombTrigger::new(grid.strip_width(), p_th)?;
    let outcome = scatter::classify_outcomes(&spec, &t);

    let mut table = Table::new(&["mode_index", "k", "probability", "cumulative"]);
    let mut cumulative = 0.0;
    for ((j, k), p) in spec.mode_index.iter().zip(&spec.k).zip(&spec.probability) {
        cumulative += p;
        table.row(&[j.to_string(), num(*k), num(*p), num(cumulative)]);
    }
    Ok((
        Headline::Scatter {
            strip_width: grid.strip_width(),
            diffraction_angle: grid.diffraction_angle(),
            p_absorbed: spec.p_absorbed,
            p_forward: spec.p_forward,
            p_scattered: spec.p_scattered,
            median_k: stats.median_k,
            mean_k: stats.mean_k,
            median_k_a: stats.median_k_a,
            mean_k_a: stats.mean_k_a,
            p_th,
            p_inconclusive: outcome.p_inconclusive,
            p_detect_safe: outcome.p_detect_safe,
            p_boom: outcome.p_boom,
        },
        table.text,
        None,
    ))
}

fn run_well(mass: f64, omega: f64, q: f64, n_max: usize) -> Result<KindOutput, RunError> {
    let w = WellBomb::new(mass, omega)?;
    let spec = well::excitation_spectrum(&w, q, n_max)?;
    let bound = well::well_trigger_bound(&w);

    let mut table = Table::new(&["n", "probability"]);
    for (n, p) in spec.probability.iter().enumerate() {
        table.row(&[n.to_string(), num(*p)]);
    }
    Ok((
        Headline::Well {
            delta_x: w.delta_x(),
            delta_p: w.delta_p(),
            lambda: spec.lambda,
            stay_probability: well::stay_probability(&w, q)?,
            p_excite: spec.p_excite(),
            total_probability: spec.total(),
            mean_energy: spec.mean_energy(omega),
            kick_energy: q * q / (2.0 * mass),
            trigger_bound: bound,
            trigger_bound_over_delta_p: bound / w.delta_p(),
            trigger_bound_times_delta_x: bound * w.delta_x(),
        },
        table.text,
        None,
    ))
}

fn run_optimize(lambda: f64, n_grid: usize) -> Result<KindOutput, RunError> {
    let opt = mz::optimize_reflectivity(lambda)?;
    let mut table = Table::new(&["R", "efficiency", "expected_photons", "objective"]);
    let span = 1.0 - 2.0 * mz::EDGE;
    for i in 0..n_grid {
        let r = mz::EDGE + span * i as f64 / (n_grid - 1) as f64;
        table.row(&[
            num(r),
            num(mz::efficiency(r)?),
            num(mz::expected_photons(r)?),
            num(mz::objective(r, lambda)?),
        ]);
    }
    Ok((
        Headline::Optimize {
            reflectivity: opt.reflectivity,
            objective: opt.objective,
            efficiency: mz::efficiency(opt.reflectivity)?,
            expected_photons: mz::expected_photons(opt.reflectivity)?,
        },
        table.text,
        None,
    ))
}

/// Paths of the files written by [`write_outputs`].
pub fn output_paths(kind: Kind, dir: &Path) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("{}.csv", kind.name())),
        dir.join(format!("{}_summary.json", kind.name())),
    )
}

/// Writes `<kind>.csv` and `<kind>_summary.json` into `dir`.
pub fn write_outputs(output: &RunOutput, dir: &Path) -> Result<(PathBuf, PathBuf), RunError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let (csv_path, json_path) = output_paths(output.summary.kind, dir);
    fs::write(&csv_path, &output.csv).map_err(io(&csv_path))?;
    fs::write(&json_path, output.summary_json()?).map_err(io(&json_path))?;
    Ok((csv_path, json_path))
}

/// Executes the configuration and writes its files.
pub fn run(cfg: &ExperimentConfig, dir: &Path) -> Result<RunSummary, RunError> {
    let output = execute(cfg)?;
    write_outputs(&output, dir)?;
    Ok(output.summary)
}
