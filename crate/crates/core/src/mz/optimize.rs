//! Reflectivity trade-off: a lower R raises the detection efficiency but
//! costs more photons per conclusive run. The figure of merit is
//! `efficiency(R) − λ · expected_photons(R)` with the photon count taken from
//! the unlimited repeat-on-bright strategy.

use super::efficiency;
use crate::error::{Error, Result};
use crate::golden;

/// Search interval is `[EDGE, 1 − EDGE]`.
pub const EDGE: f64 = 1e-6;

/// Bracket width at which the golden-section search stops.
pub const R_TOLERANCE: f64 = 1e-8;

/// Mean photons sent before the unlimited strategy stops: `1 / (R(2 − R))`.
pub fn expected_photons(reflectivity: f64) -> Result<f64> {
    efficiency(reflectivity)?;
    Ok(1.0 / (reflectivity * (2.0 - reflectivity)))
}

pub fn objective(reflectivity: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(efficiency(reflectivity)? - lambda * expected_photons(reflectivity)?)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::constraint("lambda", lambda, "finite lambda >= 0"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub reflectivity: f64,
    pub objective: f64,
}

/// Maximises the objective over `R` in `[EDGE, 1 − EDGE]`.
///
/// The objective is unimodal on (0, 1): its derivative has the sign of
/// `2λ(1 − R) − R²`, which changes sign at most once.
pub fn optimize_reflectivity(lambda: f64) -> Result<Optimum> {
    check_lambda(lambda)?;
    let f = |r: f64| (1.0 - r) / (2.0 - r) - lambda / (r * (2.0 - r));
    let (reflectivity, objective) = golden::maximize(f, EDGE, 1.0 - EDGE, R_TOLERANCE);
    Ok(Optimum {
        reflectivity,
        objective,
    })
}
