//! Single-photon mode amplitudes and the optical elements acting on them.
//!
//! A [`ModeState`] holds one complex amplitude per spatial mode together with
//! the probability that has already been removed by absorbers. Elements never
//! mutate a state in place; each application returns a new value, so states
//! can be shared freely between threads.
//!
//! Beam splitters use the symmetric convention: transmission amplitude
//! `t = sqrt(1 - R)` is real and reflection picks up a factor `i`, so
//! `(u, v) -> (t u + i r v, i r u + t v)` with `r = sqrt(R)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Label of a spatial mode; an index into the amplitude vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode(pub usize);

/// Amplitudes over a finite set of modes plus the absorbed probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    amplitudes: Vec<Complex64>,
    p_absorbed: f64,
}

impl ModeState {
    /// A photon occupying `mode` with unit amplitude out of `n_modes`.
    pub fn single(n_modes: usize, mode: Mode) -> Result<Self> {
        if mode.0 >= n_modes {
            return Err(Error::UnknownMode {
                mode: mode.0,
                n_modes,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_modes];
        amplitudes[mode.0] = Complex64::new(1.0, 0.0);
        Ok(ModeState {
            amplitudes,
            p_absorbed: 0.0,
        })
    }

    /// Builds a state from raw amplitudes, normalising them to unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || !norm.is_finite() || norm <= 0.0 {
            return Err(Error::Argument {
                name: "amplitudes",
                reason: "need at least one finite, non-zero amplitude",
            });
        }
        let scale = norm.sqrt().recip();
        Ok(ModeState {
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
            p_absorbed: 0.0,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, mode: Mode) -> Result<Complex64> {
        self.check(mode)?;
        Ok(self.amplitudes[mode.0])
    }

    /// Probability of finding the photon in `mode`.
    pub fn probability(&self, mode: Mode) -> Result<f64> {
        self.amplitude(mode).map(|a| a.norm_sqr())
    }

    pub fn p_absorbed(&self) -> f64 {
        self.p_absorbed
    }

    /// Σ|a|², the probability that the photon is still in flight.
    pub fn surviving_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Σ|a|² + p_absorbed; equals one for every reachable state.
    pub fn total_probability(&self) -> f64 {
        self.surviving_probability() + self.p_absorbed
    }

    fn check(&self, mode: Mode) -> Result<()> {
        if mode.0 < self.amplitudes.len() {
            Ok(())
        } else {
            Err(Error::UnknownMode {
                mode: mode.0,
                n_modes: self.amplitudes.len(),
            })
        }
    }
}

/// A lossless beam splitter coupling two modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSpec {
    reflectivity: f64,
    modes: (Mode, Mode),
}

impl BeamSplitterSpec {
    pub fn new(reflectivity: f64, first: Mode, second: Mode) -> Result<Self> {
        if !(0.0..=1.0).contains(&reflectivity) {
            return Err(Error::constraint("R", reflectivity, "R in [0,1]"));
        }
        if first == second {
            return Err(Error::DegenerateModePair(first.0));
        }
        Ok(BeamSplitterSpec {
            reflectivity,
            modes: (first, second),
        })
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }

    pub fn modes(&self) -> (Mode, Mode) {
        self.modes
    }

    /// The 2×2 transfer matrix in row-major order, acting on `(u, v)`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let t = Complex64::new((1.0 - self.reflectivity).sqrt(), 0.0);
        let ir = Complex64::new(0.0, self.reflectivity.sqrt());
        [[t, ir], [ir, t]]
    }
}

/// A perfect absorber removing everything in one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbsorberSpec {
    pub mode: Mode,
}

pub fn apply_beamsplitter(state: &ModeState, bs: &BeamSplitterSpec) -> Result<ModeState> {
    let (a, b) = bs.modes;
    state.check(a)?;
    state.check(b)?;
    let m = bs.matrix();
    let (u, v) = (state.amplitudes[a.0], state.amplitudes[b.0]);
    let mut next = state.clone();
    next.amplitudes[a.0] = m[0][0] * u + m[0][1] * v;
    next.amplitudes[b.0] = m[1][0] * u + m[1][1] * v;
    Ok(next)
}

/// Multiplies the amplitude on `mode` by `e^{i phi}`.
pub fn apply_phase(state: &ModeState, mode: Mode, phi: f64) -> Result<ModeState> {
    state.check(mode)?;
    if !phi.is_finite() {
        return Err(Error::constraint("phi", phi, "finite phase"));
    }
    let mut next = state.clone();
    next.amplitudes[mode.0] *= Complex64::from_polar(1.0, phi);
    Ok(next)
}

/// Moves the probability on the absorbed mode into `p_absorbed`.
pub fn apply_absorber(state: &ModeState, absorber: &AbsorberSpec) -> Result<ModeState> {
    let mode = absorber.mode;
    state.check(mode)?;
    let mut next = state.clone();
    let taken = next.amplitudes[mode.0].norm_sqr();
    next.amplitudes[mode.0] = Complex64::new(0.0, 0.0);
    next.p_absorbed += taken;
    Ok(next)
}

/// An optical element that can appear in a layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    BeamSplitter(BeamSplitterSpec),
    Phase { mode: Mode, phi: f64 },
    Absorber(AbsorberSpec),
}

impl Element {
    pub fn apply(&self, state: &ModeState) -> Result<ModeState> {
        match self {
            Element::BeamSplitter(bs) => apply_beamsplitter(state, bs),
            Element::Phase { mode, phi } => apply_phase(state, *mode, *phi),
            Element::Absorber(abs) => apply_absorber(state, abs),
        }
    }
}

/// Pushes a state through a sequence of elements in order.
pub fn propagate<'a>(
    state: &ModeState,
    elements: impl IntoIterator<Item = &'a Element>,
) -> Result<ModeState> {
    elements
        .into_iter()
        .try_fold(state.clone(), |s, e| e.apply(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < TOL
    }

    fn pair(u: Complex64, v: Complex64) -> ModeState {
        ModeState {
            amplitudes: vec![u, v],
            p_absorbed: 0.0,
        }
    }

    fn bs(r: f64) -> BeamSplitterSpec {
        BeamSplitterSpec::new(r, Mode(0), Mode(1)).unwrap()
    }

    #[test]
    fn half_silvered_splitter_convention() {
        let s = apply_beamsplitter(&ModeState::single(2, Mode(0)).unwrap(), &bs(0.5)).unwrap();
        assert!(close(s.amplitudes()[0], c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitudes()[1], c(0.0, FRAC_1_SQRT_2)));
    }

    #[test]
    fn transparent_splitter_is_identity() {
        let s = pair(c(0.6, 0.0), c(0.0, -0.8));
        let out = apply_beamsplitter(&s, &bs(0.0)).unwrap();
        assert!(close(out.amplitudes()[0], s.amplitudes()[0]));
        assert!(close(out.amplitudes()[1], s.amplitudes()[1]));
    }

    #[test]
    fn mirror_reflects_with_phase_i() {
        let s = apply_beamsplitter(&ModeState::single(2, Mode(0)).unwrap(), &bs(1.0)).unwrap();
        assert!(close(s.amplitudes()[0], c(0.0, 0.0)));
        assert!(close(s.amplitudes()[1], c(0.0, 1.0)));
    }

    #[test]
    fn splitter_leaves_other_modes_alone() {
        let s = ModeState::from_amplitudes(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.5)]).unwrap();
        let out = apply_beamsplitter(&s, &bs(0.3)).unwrap();
        assert_eq!(out.amplitudes()[2], s.amplitudes()[2]);
        assert_eq!(out.p_absorbed(), s.p_absorbed());
    }

    #[test]
    fn splitter_rejects_bad_input() {
        assert!(matches!(
            BeamSplitterSpec::new(1.2, Mode(0), Mode(1)),
            Err(Error::Constraint { name: "R", .. })
        ));
        assert_eq!(
            BeamSplitterSpec::new(0.5, Mode(1), Mode(1)),
            Err(Error::DegenerateModePair(1))
        );
        let far = BeamSplitterSpec::new(0.5, Mode(0), Mode(4)).unwrap();
        let s = ModeState::single(2, Mode(0)).unwrap();
        assert_eq!(
            apply_beamsplitter(&s, &far),
            Err(Error::UnknownMode {
                mode: 4,
                n_modes: 2
            })
        );
    }

    #[test]
    fn phase_examples() {
        let s = ModeState::single(2, Mode(0)).unwrap();
        assert_eq!(apply_phase(&s, Mode(0), 0.0).unwrap(), s);
        let flipped = apply_phase(&s, Mode(0), PI).unwrap();
        assert!(close(flipped.amplitudes()[0], c(-1.0, 0.0)));
        let twice = apply_phase(&apply_phase(&s, Mode(0), FRAC_PI_2).unwrap(), Mode(0), FRAC_PI_2)
            .unwrap();
        assert!(close(twice.amplitudes()[0], flipped.amplitudes()[0]));
        assert!(apply_phase(&s, Mode(3), 1.0).is_err());
    }

    #[test]
    fn absorber_on_bomb_arm() {
        let s = pair(c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2));
        let out = apply_absorber(&s, &AbsorberSpec { mode: Mode(1) }).unwrap();
        assert!(close(out.amplitudes()[0], c(FRAC_1_SQRT_2, 0.0)));
        assert_eq!(out.amplitudes()[1], c(0.0, 0.0));
        assert!((out.p_absorbed() - 0.5).abs() < TOL);
        assert!((out.total_probability() - 1.0).abs() < TOL);
    }

    #[test]
    fn absorber_on_empty_mode_and_idempotence() {
        let abs = AbsorberSpec { mode: Mode(1) };
        let s = ModeState::single(2, Mode(0)).unwrap();
        assert_eq!(apply_absorber(&s, &abs).unwrap(), s);

        let s = pair(c(0.6, 0.0), c(0.0, 0.8));
        let once = apply_absorber(&s, &abs).unwrap();
        let twice = apply_absorber(&once, &abs).unwrap();
        assert_eq!(once, twice);
        assert!(apply_absorber(&s, &AbsorberSpec { mode: Mode(2) }).is_err());
    }

    #[test]
    fn from_amplitudes_normalises() {
        let s = ModeState::from_amplitudes(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((s.probability(Mode(0)).unwrap() - 0.36).abs() < TOL);
        assert!(ModeState::from_amplitudes(vec![c(0.0, 0.0)]).is_err());
        assert!(ModeState::single(2, Mode(2)).is_err());
    }
}
