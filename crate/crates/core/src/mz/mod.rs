//! The Mach-Zehnder bomb tester.
//!
//! Layout: the photon enters in mode 0 (lower arm). The first splitter sends
//! the reflected part into mode 1 (upper arm), where the bomb sits when it
//! is present. A phase of π on the upper arm then calibrates the second
//! splitter so that, with the arms clear, every photon leaves through mode 0
//! (detector B, bright) and none through mode 1 (detector D, dark).
//!
//! With the bomb in place and equal splitters of reflectivity R:
//!
//! | outcome  | probability |
//! |----------|-------------|
//! | absorbed | R           |
//! | bright   | (1 − R)²    |
//! | dark     | R(1 − R)    |
//!
//! At R = 1/2 this is the familiar 50 / 25 / 25 split.

mod optimize;
mod strategy;
mod trials;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quantum::{AbsorberSpec, BeamSplitterSpec, Element, Mode, ModeState};

pub use optimize::{expected_photons, objective, optimize_reflectivity, Optimum, EDGE};
pub use strategy::{sequential_strategy, simulate_strategy, StrategyReport, StrategySample};
pub use trials::{run_trials, run_trials_serial, TrialTally};

/// Lower arm; exits toward the bright detector.
pub const BRIGHT_MODE: Mode = Mode(0);
/// Upper arm, where the bomb sits; exits toward the dark detector.
pub const DARK_MODE: Mode = Mode(1);

/// One photon's fate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Bright,
    Dark,
    Absorbed,
}

impl Outcome {
    pub const ALL: [Outcome; 3] = [Outcome::Bright, Outcome::Dark, Outcome::Absorbed];

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Bright => "bright",
            Outcome::Dark => "dark",
            Outcome::Absorbed => "absorbed",
        }
    }
}

/// Interferometer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MzConfig {
    reflectivity: f64,
    bomb_present: bool,
    calibration_phase: f64,
}

impl MzConfig {
    /// Equal splitters of reflectivity `r` and the default π calibration.
    pub fn new(reflectivity: f64, bomb_present: bool) -> Result<Self> {
        Self::with_phase(reflectivity, bomb_present, PI)
    }

    pub fn with_phase(reflectivity: f64, bomb_present: bool, calibration_phase: f64) -> Result<Self> {
        if !(reflectivity > 0.0 && reflectivity < 1.0) {
            return Err(Error::constraint("R", reflectivity, "R in (0,1)"));
        }
        if !calibration_phase.is_finite() {
            return Err(Error::constraint(
                "calibration_phase",
                calibration_phase,
                "finite phase",
            ));
        }
        Ok(MzConfig {
            reflectivity,
            bomb_present,
            calibration_phase,
        })
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }

    pub fn bomb_present(&self) -> bool {
        self.bomb_present
    }

    pub fn calibration_phase(&self) -> f64 {
        self.calibration_phase
    }

    /// The element sequence the photon traverses.
    pub fn elements(&self) -> Vec<Element> {
        // Reflectivity was validated on construction.
        let bs = Element::BeamSplitter(
            BeamSplitterSpec::new(self.reflectivity, BRIGHT_MODE, DARK_MODE)
                .expect("validated reflectivity"),
        );
        let mut out = vec![bs];
        if self.bomb_present {
            out.push(Element::Absorber(AbsorberSpec { mode: DARK_MODE }));
        }
        out.push(Element::Phase {
            mode: DARK_MODE,
            phi: self.calibration_phase,
        });
        out.push(bs);
        out
    }
}

/// Probabilities of the three outcomes for a single photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    pub p_bright: f64,
    pub p_dark: f64,
    pub p_absorbed: f64,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.p_bright + self.p_dark + self.p_absorbed
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        match outcome {
            Outcome::Bright => self.p_bright,
            Outcome::Dark => self.p_dark,
            Outcome::Absorbed => self.p_absorbed,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p_bright, self.p_dark, self.p_absorbed]
    }

    /// Closed form for the calibrated interferometer with the bomb present.
    pub fn closed_form_with_bomb(reflectivity: f64) -> Self {
        let r = reflectivity;
        OutcomeDistribution {
            p_bright: (1.0 - r) * (1.0 - r),
            p_dark: r * (1.0 - r),
            p_absorbed: r,
        }
    }
}

/// Outcome probabilities obtained by pushing a photon through the elements.
pub fn outcome_distribution(cfg: &MzConfig) -> OutcomeDistribution {
    let input = ModeState::single(2, BRIGHT_MODE).expect("two-mode input");
    let out = crate::quantum::propagate(&input, &cfg.elements()).expect("modes exist");
    let amps = out.amplitudes();
    OutcomeDistribution {
        p_bright: amps[BRIGHT_MODE.0].norm_sqr(),
        p_dark: amps[DARK_MODE.0].norm_sqr(),
        p_absorbed: out.p_absorbed(),
    }
}

/// Fraction of conclusive single-photon runs that detect rather than
/// explode: `p_dark / (p_dark + p_absorbed) = (1 − R)/(2 − R)`.
pub fn efficiency(reflectivity: f64) -> Result<f64> {
    if !(reflectivity > 0.0 && reflectivity < 1.0) {
        return Err(Error::constraint("R", reflectivity, "R in (0,1)"));
    }
    Ok((1.0 - reflectivity) / (2.0 - reflectivity))
}
