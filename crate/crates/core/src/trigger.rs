//! The bomb trigger as a quantum measuring device.
//!
//! Placing the bomb to within `Δx` leaves it in a minimum-uncertainty
//! Gaussian packet with momentum spread `σ_p = 1/(2Δx)` (ħ = 1). After the
//! photon has passed, the trigger measures the bomb's momentum along the
//! probe axis and fires when it exceeds a threshold `p_th`.
//!
//! Deciding whether a kick `q` happened is then a test between
//! `p ~ N(0, σ_p²)` and `p ~ N(q, σ_p²)`. With equal priors the best
//! threshold is `q/2` and the smallest achievable error is `Φ(−q/(2σ_p))`.
//! Kicks well below `1/Δx` are therefore unreadable by any trigger, whatever
//! its construction.

use crate::error::{Error, Result};
use crate::normal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BombTrigger {
    delta_x: f64,
    sigma_p: f64,
    p_paper: f64,
    p_th: f64,
}

impl BombTrigger {
    /// A trigger for a bomb localised to `delta_x` that fires above `p_th`.
    /// `p_th` may be `+∞` (a trigger that never fires).
    pub fn new(delta_x: f64, p_th: f64) -> Result<Self> {
        if !(delta_x > 0.0 && delta_x.is_finite()) {
            return Err(Error::constraint("delta_x", delta_x, "delta_x > 0"));
        }
        if p_th.is_nan() || p_th < 0.0 {
            return Err(Error::constraint("p_th", p_th, "p_th >= 0"));
        }
        Ok(BombTrigger {
            delta_x,
            sigma_p: 0.5 / delta_x,
            p_paper: 1.0 / delta_x,
            p_th,
        })
    }

    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }

    /// Gaussian standard deviation of the bomb's momentum.
    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }

    /// The order-of-magnitude momentum scale `1/Δx`, equal to `2σ_p`.
    pub fn p_paper(&self) -> f64 {
        self.p_paper
    }

    pub fn p_th(&self) -> f64 {
        self.p_th
    }

    pub fn with_threshold(&self, p_th: f64) -> Result<Self> {
        Self::new(self.delta_x, p_th)
    }
}

/// Error rates of the kick/no-kick decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationReport {
    /// P(p > p_th) with no kick.
    pub false_trigger: f64,
    /// P(p ≤ p_th) after a kick `q`.
    pub miss: f64,
    /// Equal-prior error at the optimal threshold `q/2`.
    pub min_error: f64,
    pub optimal_threshold: f64,
}

impl DiscriminationReport {
    /// Equal-prior error at the configured threshold.
    pub fn error_at_threshold(&self) -> f64 {
        0.5 * (self.false_trigger + self.miss)
    }
}

/// Probability that quantum fluctuations alone set the trigger off,
/// `P(|p| > p_th)`. Direction-blind: both signs count.
pub fn false_trigger_probability(trigger: &BombTrigger) -> f64 {
    normal::two_sided_tail(trigger.p_th / trigger.sigma_p)
}

fn check_kick(q: f64) -> Result<()> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::constraint("q", q, "finite q >= 0"));
    }
    Ok(())
}

/// Smallest equal-prior error for telling a kick `q` from no kick.
pub fn min_error(trigger: &BombTrigger, q: f64) -> Result<f64> {
    check_kick(q)?;
    Ok(normal::upper_tail(q / (2.0 * trigger.sigma_p)))
}

/// One-sided threshold test of a kick `q` along the probe axis.
pub fn kick_discrimination(trigger: &BombTrigger, q: f64) -> Result<DiscriminationReport> {
    let min_error = min_error(trigger, q)?;
    let sigma = trigger.sigma_p;
    let (false_trigger, miss) = if trigger.p_th.is_infinite() {
        (0.0, 1.0)
    } else {
        (
            normal::upper_tail(trigger.p_th / sigma),
            normal::cdf((trigger.p_th - q) / sigma),
        )
    };
    Ok(DiscriminationReport {
        false_trigger,
        miss,
        min_error,
        optimal_threshold: 0.5 * q,
    })
}

/// Smallest kick whose minimum error is within `error_budget`.
///
/// Equal to `2σ_p · z` where `P(Z > z) = error_budget`; `z` comes from a
/// bisection run to full `f64` precision. Since `2σ_p = 1/Δx`, the product
/// of the result with `Δx` is the same for every trigger.
pub fn minimum_detectable_kick(trigger: &BombTrigger, error_budget: f64) -> Result<f64> {
    if !(error_budget > 0.0 && error_budget < 0.5) {
        return Err(Error::constraint(
            "error_budget",
            error_budget,
            "error_budget in (0, 0.5)",
        ));
    }
    Ok(normal::upper_tail_inverse(error_budget) / trigger.delta_x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trig(dx: f64, p_th: f64) -> BombTrigger {
        BombTrigger::new(dx, p_th).unwrap()
    }

    #[test]
    fn derived_momentum_scales() {
        for dx in [1e-3, 0.7, 2.0, 1e3] {
            let t = trig(dx, 0.0);
            assert!((t.sigma_p() * t.delta_x() - 0.5).abs() < 1e-15);
            assert_eq!(t.p_paper(), 2.0 * t.sigma_p());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BombTrigger::new(0.0, 1.0).is_err());
        assert!(BombTrigger::new(-1.0, 1.0).is_err());
        assert!(BombTrigger::new(f64::NAN, 1.0).is_err());
        assert!(BombTrigger::new(1.0, -0.1).is_err());
        let t = trig(1.0, 1.0);
        assert!(kick_discrimination(&t, -1.0).is_err());
        for b in [0.0, 0.5, -0.1, 0.7] {
            assert!(minimum_detectable_kick(&t, b).is_err());
        }
    }

    #[test]
    fn false_trigger_limits() {
        assert_eq!(false_trigger_probability(&trig(1.0, 0.0)), 1.0);
        assert_eq!(false_trigger_probability(&trig(1.0, f64::INFINITY)), 0.0);
        let t = trig(1.0, 0.5);
        // p_th = σ_p; frozen from Simpson integration of the Gaussian tail.
        assert!((false_trigger_probability(&t) - 0.317_310_507_862_914_1).abs() < 1e-12);
    }

    #[test]
    fn identical_hypotheses_are_a_coin_flip() {
        let r = kick_discrimination(&trig(1.3, 0.2), 0.0).unwrap();
        assert_eq!(r.min_error, 0.5);
    }

    #[test]
    fn min_error_never_exceeds_configured_error() {
        let t = trig(1.0, 0.0);
        for p_th in [0.0, 0.1, 0.5, 0.75, 2.0, f64::INFINITY] {
            for q in [0.0, 0.3, 1.0, 1.5, 4.0] {
                let r = kick_discrimination(&t.with_threshold(p_th).unwrap(), q).unwrap();
                assert!(r.min_error <= r.error_at_threshold() + 1e-15);
                assert!((0.0..=1.0).contains(&r.miss));
                assert!((0.0..=1.0).contains(&r.false_trigger));
            }
        }
    }

    #[test]
    fn optimal_threshold_attains_min_error() {
        let t = trig(0.8, 0.0);
        let q = 1.7;
        let r = kick_discrimination(&t.with_threshold(q / 2.0).unwrap(), q).unwrap();
        assert!((r.error_at_threshold() - r.min_error).abs() < 1e-15);
    }

    #[test]
    fn large_kicks_are_unmistakable() {
        let t = trig(2.0, 0.0);
        assert!(min_error(&t, 10.0 * t.sigma_p()).unwrap() < 1e-6);
    }

    #[test]
    fn detectable_kick_examples() {
        let t = trig(1.0, 0.0);
        assert!(minimum_detectable_kick(&t, 0.5 - 1e-12).unwrap() < 1e-10);
        let q = minimum_detectable_kick(&t, 0.1587).unwrap();
        assert!((q - t.p_paper()).abs() < 1e-3);

        let half = trig(0.5, 0.0);
        let q_half = minimum_detectable_kick(&half, 0.05).unwrap();
        assert!((q_half / minimum_detectable_kick(&t, 0.05).unwrap() - 2.0).abs() < 1e-15);
    }
}
