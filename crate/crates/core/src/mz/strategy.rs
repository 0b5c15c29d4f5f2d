//! Repeat-on-bright strategy: keep sending photons while they exit bright,
//! stop at the first dark click (bomb found) or absorption (bomb exploded),
//! and give up after `max_photons`.

use rayon::prelude::*;

use super::{MzConfig, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::rng::{categorical, thresholds, trial_rng, unit_draw};

/// Analytic outcome of the strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyReport {
    pub p_detect: f64,
    pub p_explode: f64,
    pub p_give_up: f64,
    pub expected_photons_sent: f64,
    pub max_photons: u64,
}

fn check(cfg: &MzConfig, max_photons: u64) -> Result<()> {
    if !cfg.bomb_present() {
        return Err(Error::Argument {
            name: "bomb",
            reason: "the sequential strategy is defined for a present bomb",
        });
    }
    if max_photons == 0 {
        return Err(Error::Argument {
            name: "max_photons",
            reason: "at least one photon must be allowed",
        });
    }
    Ok(())
}

/// Closed-form evaluation. Pass `u64::MAX` for an unlimited photon budget.
///
/// Per photon the bomb is found with `R(1−R)`, explodes with `R` and the run
/// continues with `c = (1−R)²`. With at most `N` photons the run gives up
/// with `c^N`, the expected number sent is `(1 − c^N)/(1 − c)`, and detection
/// and explosion share the rest in the ratio `(1−R) : 1`.
pub fn sequential_strategy(cfg: &MzConfig, max_photons: u64) -> Result<StrategyReport> {
    check(cfg, max_photons)?;
    let r = cfg.reflectivity();
    let per_shot = OutcomeDistribution::closed_form_with_bomb(r);

    // c^N and 1 - c^N evaluated through logs to stay accurate when R is small.
    let log_c = 2.0 * (-r).ln_1p();
    let exponent = log_c * max_photons as f64;
    let give_up = exponent.exp();
    let stopped = -exponent.exp_m1();
    let one_minus_c = r * (2.0 - r);
    let expected = (stopped / one_minus_c).min(max_photons as f64);

    Ok(StrategyReport {
        p_detect: per_shot.p_dark * stopped / one_minus_c,
        p_explode: per_shot.p_absorbed * stopped / one_minus_c,
        p_give_up: give_up,
        expected_photons_sent: expected,
        max_photons,
    })
}

/// Tallies from a direct Monte Carlo of the strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategySample {
    pub detected: u64,
    pub exploded: u64,
    pub gave_up: u64,
    pub photons_sent: u64,
    pub runs: u64,
}

impl StrategySample {
    pub fn p_detect(&self) -> f64 {
        self.detected as f64 / self.runs as f64
    }

    pub fn p_explode(&self) -> f64 {
        self.exploded as f64 / self.runs as f64
    }

    pub fn p_give_up(&self) -> f64 {
        self.gave_up as f64 / self.runs as f64
    }

    pub fn mean_photons(&self) -> f64 {
        self.photons_sent as f64 / self.runs as f64
    }
}

/// Plays the strategy `runs` times, run `i` drawing from stream `(seed, i)`.
pub fn simulate_strategy(
    cfg: &MzConfig,
    max_photons: u64,
    runs: u64,
    seed: u64,
) -> Result<StrategySample> {
    check(cfg, max_photons)?;
    if runs == 0 {
        return Err(Error::Argument {
            name: "runs",
            reason: "at least one run is required",
        });
    }
    let cuts = thresholds(super::outcome_distribution(cfg).as_array());
    let totals = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut sent = 0u64;
            while sent < max_photons {
                sent += 1;
                match categorical(unit_draw(&mut rng), &cuts) {
                    0 => continue,
                    1 => return [1, 0, 0, sent],
                    _ => return [0, 1, 0, sent],
                }
            }
            [0, 0, 1, sent]
        })
        .reduce(
            || [0u64; 4],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        );
    Ok(StrategySample {
        detected: totals[0],
        exploded: totals[1],
        gave_up: totals[2],
        photons_sent: totals[3],
        runs,
    })
}
