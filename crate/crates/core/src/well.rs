//! A bomb held in the ground state of a harmonic well.
//!
//! The photon's kick is treated as instantaneous, so the ground state is
//! displaced in momentum by `q` and the level populations afterwards are
//! Poisson with mean `λ = q² / (2Mω)` (ħ = 1). Kicks well below the
//! ground-state momentum spread leave the bomb where it was; a trigger that
//! watches for excitation is as sensitive as any trigger can be.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellBomb {
    mass: f64,
    omega: f64,
}

impl WellBomb {
    pub fn new(mass: f64, omega: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::constraint("M", mass, "M > 0"));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::constraint("omega", omega, "omega > 0"));
        }
        Ok(WellBomb { mass, omega })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Ground-state position spread `sqrt(1/(2Mω))`.
    pub fn delta_x(&self) -> f64 {
        (0.5 / (self.mass * self.omega)).sqrt()
    }

    /// Ground-state momentum spread `sqrt(Mω/2)`.
    pub fn delta_p(&self) -> f64 {
        (0.5 * self.mass * self.omega).sqrt()
    }

    pub fn level_spacing(&self) -> f64 {
        self.omega
    }

    /// `(Δp)²/(2M)`, which is exactly a quarter of the level spacing.
    pub fn kinetic_scale(&self) -> f64 {
        let dp = self.delta_p();
        dp * dp / (2.0 * self.mass)
    }

    /// Poisson mean `q²/(2Mω)` for a kick `q`.
    pub fn poisson_mean(&self, q: f64) -> f64 {
        q * q / (2.0 * self.mass * self.omega)
    }
}

/// Smallest `n_max` for which the truncated Poisson sum misses less than
/// 1e-12: `ceil(λ + 12√λ + 20)`.
pub fn recommended_n_max(lambda: f64) -> usize {
    (lambda + 12.0 * lambda.sqrt() + 20.0).ceil() as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct KickSpectrum {
    /// `probability[n]` for `n = 0 ..= n_max`.
    pub probability: Vec<f64>,
    pub q: f64,
    pub lambda: f64,
}

impl KickSpectrum {
    pub fn n_max(&self) -> usize {
        self.probability.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probability.iter().sum()
    }

    /// Probability of leaving the ground state.
    pub fn p_excite(&self) -> f64 {
        -(-self.lambda).exp_m1()
    }

    /// Mean energy deposited, `ω Σ n P(n)`.
    pub fn mean_energy(&self, omega: f64) -> f64 {
        omega
            * self
                .probability
                .iter()
                .enumerate()
                .map(|(n, p)| n as f64 * p)
                .sum::<f64>()
    }
}

fn check_kick(q: f64) -> Result<()> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::constraint("q", q, "finite q >= 0"));
    }
    Ok(())
}

/// Level populations after a sudden kick `q`.
pub fn excitation_spectrum(well: &WellBomb, q: f64, n_max: usize) -> Result<KickSpectrum> {
    check_kick(q)?;
    if n_max < 1 {
        return Err(Error::Argument {
            name: "n_max",
            reason: "at least one excited level is required",
        });
    }
    let lambda = well.poisson_mean(q);
    let probability = if lambda == 0.0 {
        let mut p = vec![0.0; n_max + 1];
        p[0] = 1.0;
        p
    } else {
        // exp(n ln λ − λ − ln n!) stays finite where e^{−λ} alone would not.
        let ln_lambda = lambda.ln();
        let mut ln_fact = 0.0;
        (0..=n_max)
            .map(|n| {
                if n > 0 {
                    ln_fact += (n as f64).ln();
                }
                (n as f64 * ln_lambda - lambda - ln_fact).exp()
            })
            .collect()
    };
    Ok(KickSpectrum {
        probability,
        q,
        lambda,
    })
}

/// Probability the bomb is still in the ground state, `e^{−q²/(2Mω)}`.
pub fn stay_probability(well: &WellBomb, q: f64) -> Result<f64> {
    check_kick(q)?;
    Ok((-well.poisson_mean(q)).exp())
}

/// Kick that excites the bomb half the time, `sqrt(2Mω ln 2)`.
///
/// In units of the ground-state spread this is `sqrt(4 ln 2) · Δp ≈ 1.665 Δp`,
/// or `sqrt(ln 2) / Δx`.
pub fn well_trigger_bound(well: &WellBomb) -> f64 {
    (2.0 * well.mass * well.omega * std::f64::consts::LN_2).sqrt()
}
