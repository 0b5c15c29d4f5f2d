use rayon::prelude::*;

use super::{outcome_distribution, MzConfig, Outcome};
use crate::error::{Error, Result};
use crate::rng::{categorical, thresholds, trial_rng, unit_draw};

/// Counts of single-photon outcomes from a seeded batch of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialTally {
    pub bright: u64,
    pub dark: u64,
    pub absorbed: u64,
    pub n_trials: u64,
    pub seed: u64,
}

impl TrialTally {
    pub fn count(&self, outcome: Outcome) -> u64 {
        match outcome {
            Outcome::Bright => self.bright,
            Outcome::Dark => self.dark,
            Outcome::Absorbed => self.absorbed,
        }
    }

    pub fn frequency(&self, outcome: Outcome) -> f64 {
        self.count(outcome) as f64 / self.n_trials as f64
    }

    fn from_counts(counts: [u64; 3], seed: u64) -> Self {
        TrialTally {
            bright: counts[0],
            dark: counts[1],
            absorbed: counts[2],
            n_trials: counts.iter().sum(),
            seed,
        }
    }
}

fn sampler(cfg: &MzConfig) -> impl Fn(u64, u64) -> usize + Sync {
    let cuts = thresholds(outcome_distribution(cfg).as_array());
    move |seed, trial| categorical(unit_draw(&mut trial_rng(seed, trial)), &cuts)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument {
            name: "n",
            reason: "at least one trial is required",
        });
    }
    Ok(())
}

/// Sends `n` photons through the interferometer, one independent stream per
/// trial, spread over the current rayon pool.
pub fn run_trials(cfg: &MzConfig, n: u64, seed: u64) -> Result<TrialTally> {
    check_n(n)?;
    let sample = sampler(cfg);
    let counts = (0..n)
        .into_par_iter()
        .fold(
            || [0u64; 3],
            |mut acc, i| {
                acc[sample(seed, i)] += 1;
                acc
            },
        )
        .reduce(|| [0u64; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    Ok(TrialTally::from_counts(counts, seed))
}

/// Single-threaded reference for [`run_trials`]; always returns the same tally.
pub fn run_trials_serial(cfg: &MzConfig, n: u64, seed: u64) -> Result<TrialTally> {
    check_n(n)?;
    let sample = sampler(cfg);
    let mut counts = [0u64; 3];
    for i in 0..n {
        counts[sample(seed, i)] += 1;
    }
    Ok(TrialTally::from_counts(counts, seed))
}
