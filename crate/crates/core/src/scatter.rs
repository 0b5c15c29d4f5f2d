//! Shadow scattering from a black strip.
//!
//! A unit plane wave falls on a perfectly absorbing strip of width `a`
//! centred in a periodic transverse window of width `W`, sampled on
//! `n_points` cells. The strip cells are zeroed, and the discrete Fourier
//! transform of what is left gives the far-field distribution over the
//! transverse wavevectors `k_j = 2π j / W`.
//!
//! Probabilities are normalised per unit width, so the incident wave carries
//! probability one. Writing `f = a/W`:
//!
//! - absorbed: `f`
//! - forward (the `k = 0` mode): `(1 − f)²`
//! - scattered (every other mode): `f(1 − f)`
//!
//! For a narrow strip the scattered probability matches the absorbed one, and
//! the scattered spectrum is the squared sinc of the strip, spread over
//! `|k| ~ 1/a`. Each scattered photon leaves momentum `−ħk` on the bomb.
//!
//! The strip is snapped to a whole number of cells; [`ApertureGrid::strip_width`]
//! reports the width actually used.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::trigger::BombTrigger;

pub const MIN_POINTS: usize = 1 << 10;
/// Largest strip accepted by the grid is just under `W / 4`.
pub const MAX_STRIP_FRACTION: f64 = 0.25;
/// Window-to-strip ratio `W / a` needed for the zero mode alone to stand for
/// the unscattered beam; see [`ApertureGrid::check_far_field_resolution`].
pub const MIN_WINDOW_RATIO: f64 = 64.0;
/// Minimum number of cells across the strip.
pub const MIN_CELLS_PER_STRIP: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApertureGrid {
    width: f64,
    n_points: usize,
    strip_cells: usize,
    k_in: f64,
}

impl ApertureGrid {
    /// A strip of width `strip_width` (rounded to whole cells) in a window of
    /// width `width`. A zero strip width means no obstacle.
    pub fn new(width: f64, n_points: usize, strip_width: f64, k_in: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::constraint("W", width, "W > 0"));
        }
        if n_points < MIN_POINTS || !n_points.is_power_of_two() {
            return Err(Error::constraint(
                "n_points",
                n_points as f64,
                "n_points a power of two >= 1024",
            ));
        }
        if !(k_in > 0.0 && k_in.is_finite()) {
            return Err(Error::constraint("k_in", k_in, "k_in > 0"));
        }
        if !(strip_width >= 0.0 && strip_width.is_finite()) {
            return Err(Error::constraint("a", strip_width, "a >= 0"));
        }
        let dx = width / n_points as f64;
        if strip_width > 0.0 {
            if strip_width >= MAX_STRIP_FRACTION * width {
                return Err(Error::constraint("a", strip_width, "0 < a < W/4"));
            }
            if dx * MIN_CELLS_PER_STRIP >= strip_width {
                return Err(Error::constraint(
                    "n_points",
                    n_points as f64,
                    "grid spacing W/n_points < a/16",
                ));
            }
        }
        Ok(ApertureGrid {
            width,
            n_points,
            strip_cells: (strip_width / dx).round() as usize,
            k_in,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Requires `W ≥ 64a`, so the mode spacing `2π/W` is much finer than the
    /// `1/a` width of the diffraction pattern and forward/scattered splitting
    /// by the zero mode is meaningful.
    pub fn check_far_field_resolution(&self) -> Result<()> {
        if self.width < MIN_WINDOW_RATIO * self.strip_width() {
            return Err(Error::constraint("a", self.strip_width(), "W >= 64a"));
        }
        Ok(())
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn k_in(&self) -> f64 {
        self.k_in
    }

    pub fn spacing(&self) -> f64 {
        self.width / self.n_points as f64
    }

    pub fn strip_cells(&self) -> usize {
        self.strip_cells
    }

    /// Strip width after snapping to the grid.
    pub fn strip_width(&self) -> f64 {
        self.strip_cells as f64 * self.spacing()
    }

    /// `a / W` for the snapped strip.
    pub fn blocked_fraction(&self) -> f64 {
        self.strip_cells as f64 / self.n_points as f64
    }

    /// Spacing of the transverse wavevector grid, `2π / W`.
    pub fn mode_spacing(&self) -> f64 {
        2.0 * PI / self.width
    }

    /// Typical diffraction angle `1/(k_in a)`; infinite without a strip.
    pub fn diffraction_angle(&self) -> f64 {
        1.0 / (self.k_in * self.strip_width())
    }

    fn strip_range(&self) -> std::ops::Range<usize> {
        let start = self.n_points / 2 - self.strip_cells / 2;
        start..start + self.strip_cells
    }
}

/// The plane wave just behind the strip: one outside, zero on the strip.
pub fn transmitted_field(grid: &ApertureGrid) -> Vec<Complex64> {
    let mut field = vec![Complex64::new(1.0, 0.0); grid.n_points];
    for cell in &mut field[grid.strip_range()] {
        *cell = Complex64::new(0.0, 0.0);
    }
    field
}

/// `(1/W) ∫ |ψ|² dx`, the probability carried past the strip.
pub fn field_norm(field: &[Complex64]) -> f64 {
    field.iter().map(|c| c.norm_sqr()).sum::<f64>() / field.len() as f64
}

/// Far-field mode weights, ordered by increasing `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpectrum {
    /// Signed mode numbers `j` in `-n/2 .. n/2`.
    pub mode_index: Vec<i64>,
    /// Transverse wavevectors `2π j / W`.
    pub k: Vec<f64>,
    pub probability: Vec<f64>,
    pub p_absorbed: f64,
    pub p_forward: f64,
    pub p_scattered: f64,
    pub strip_width: f64,
    pub mode_spacing: f64,
}

impl AngularSpectrum {
    pub fn total(&self) -> f64 {
        self.p_absorbed + self.p_forward + self.p_scattered
    }

    fn forward_position(&self) -> usize {
        self.mode_index
            .iter()
            .position(|&j| j == 0)
            .expect("zero mode present")
    }

    /// Scattered weight folded onto `|j| = 1 ..= n/2`; entry `i` is `|j| = i + 1`.
    fn folded(&self) -> Vec<f64> {
        let zero = self.forward_position();
        let half = self.mode_index.len() / 2;
        let mut out = vec![0.0; half];
        for (pos, &p) in self.probability.iter().enumerate() {
            if pos != zero {
                out[self.mode_index[pos].unsigned_abs() as usize - 1] += p;
            }
        }
        out
    }
}

/// Fourier transform of the transmitted field over the periodic window.
pub fn angular_spectrum(grid: &ApertureGrid) -> AngularSpectrum {
    let n = grid.n_points;
    let mut buf = transmitted_field(grid);
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let scale = 1.0 / (n as f64 * n as f64);
    let dk = grid.mode_spacing();
    let half = (n / 2) as i64;
    // fftshift: start at j = -n/2, which lives at index n/2.
    let mode_index: Vec<i64> = (-half..half).collect();
    let probability: Vec<f64> = mode_index
        .iter()
        .map(|&j| buf[j.rem_euclid(n as i64) as usize].norm_sqr() * scale)
        .collect();
    let k = mode_index.iter().map(|&j| j as f64 * dk).collect();

    let p_forward = probability[half as usize];
    let transmitted: f64 = probability.iter().sum();
    AngularSpectrum {
        mode_index,
        k,
        probability,
        p_absorbed: grid.blocked_fraction(),
        p_forward,
        p_scattered: transmitted - p_forward,
        strip_width: grid.strip_width(),
        mode_spacing: dk,
    }
}

/// Closed forms `(p_absorbed, p_forward, p_scattered)` for the snapped strip.
pub fn closed_form_split(grid: &ApertureGrid) -> (f64, f64, f64) {
    let f = grid.blocked_fraction();
    (f, (1.0 - f) * (1.0 - f), f * (1.0 - f))
}

/// Distribution of the transverse momentum handed to the bomb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumStats {
    pub median_k: f64,
    pub mean_k: f64,
    pub median_k_a: f64,
    pub mean_k_a: f64,
}

/// Median and mean of `|k|` over the scattered modes.
///
/// Each mode `|j|` stands for the bin `[(|j| − ½)Δk, (|j| + ½)Δk]` and the
/// median is interpolated linearly inside the bin where the cumulative weight
/// crosses one half. The mean is a plain weighted average; for a sharp-edged
/// strip it grows logarithmically with grid resolution.
pub fn momentum_transfer_stats(spec: &AngularSpectrum) -> Result<MomentumStats> {
    if spec.p_scattered.is_nan() || spec.p_scattered <= 0.0 || spec.strip_width <= 0.0 {
        return Err(Error::Argument {
            name: "spectrum",
            reason: "no scattered probability",
        });
    }
    let folded = spec.folded();
    let total: f64 = folded.iter().sum();
    let dk = spec.mode_spacing;

    let target = 0.5 * total;
    let mut cum = 0.0;
    let mut median_k = folded.len() as f64 * dk;
    for (i, &w) in folded.iter().enumerate() {
        if w > 0.0 && cum + w >= target {
            let centre = (i + 1) as f64;
            median_k = (centre - 0.5 + (target - cum) / w) * dk;
            break;
        }
        cum += w;
    }

    let mean_k = folded
        .iter()
        .enumerate()
        .map(|(i, &w)| w * (i + 1) as f64 * dk)
        .sum::<f64>()
        / total;

    Ok(MomentumStats {
        median_k,
        mean_k,
        median_k_a: median_k * spec.strip_width,
        mean_k_a: mean_k * spec.strip_width,
    })
}

/// Photon outcomes as seen by a bomb with the given trigger.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOutcome {
    /// Photon went straight through; says nothing.
    pub p_inconclusive: f64,
    /// Photon scattered with `|k| ≤ p_th`: bomb found, trigger quiet.
    pub p_detect_safe: f64,
    /// Absorbed, or scattered hard enough to fire the trigger.
    pub p_boom: f64,
}

impl ScatterOutcome {
    pub fn total(&self) -> f64 {
        self.p_inconclusive + self.p_detect_safe + self.p_boom
    }
}

/// Splits the spectrum by the trigger threshold (ħ = 1, momentum = |k|).
pub fn classify_outcomes(spec: &AngularSpectrum, trigger: &BombTrigger) -> ScatterOutcome {
    let p_th = trigger.p_th();
    let zero = spec.forward_position();
    let mut safe = 0.0;
    let mut hard = 0.0;
    for (pos, (&k, &p)) in spec.k.iter().zip(&spec.probability).enumerate() {
        if pos == zero {
            continue;
        }
        if k.abs() <= p_th {
            safe += p;
        } else {
            hard += p;
        }
    }
    ScatterOutcome {
        p_inconclusive: spec.p_forward,
        p_detect_safe: safe,
        p_boom: spec.p_absorbed + hard,
    }
}
