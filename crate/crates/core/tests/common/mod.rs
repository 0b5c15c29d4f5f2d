//! Reference computations used by the integration tests.
//!
//! Nothing here calls into the library's numerical paths; each function
//! recomputes its quantity by brute force so it can serve as an oracle.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Upper Gaussian tail `P(Z > x)` by composite Simpson quadrature of the
/// density on `[x, x + 40]`.
pub fn gaussian_tail_simpson(x: f64) -> f64 {
    let n = 200_000; // even
    let (a, b) = (x, x + 40.0);
    let h = (b - a) / n as f64;
    let density = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    let mut sum = density(a) + density(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * density(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Gauss–Hermite nodes and weights for `∫ e^{-x²} f(x) dx`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix (Golub–Welsch) and
/// are polished by Newton steps on the orthonormal Hermite recurrence, which
/// also yields the weights `2 / (√(2n) h_{n-1}(x))²`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (0.5 * i.max(j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let pim4 = PI.powf(-0.25);
    let nf = n as f64;
    let mut weights = vec![0.0; n];
    for (z, w) in nodes.iter_mut().zip(weights.iter_mut()) {
        let mut pp = 0.0;
        for _ in 0..20 {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = *z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let step = p1 / pp;
            *z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        *w = 2.0 / (pp * pp);
    }
    (nodes, weights)
}

/// Orthonormal Hermite functions without the Gaussian factor:
/// `ψ_k(ξ) = h_k(ξ) e^{-ξ²/2}`, returned for `k = 0..=n_max`.
pub fn hermite_functions(xi: f64, n_max: usize) -> Vec<f64> {
    let mut h = vec![0.0; n_max + 1];
    h[0] = PI.powf(-0.25);
    if n_max >= 1 {
        h[1] = 2f64.sqrt() * xi * h[0];
    }
    for k in 1..n_max {
        let kf = k as f64;
        h[k + 1] = (2.0 / (kf + 1.0)).sqrt() * xi * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
    }
    h
}

/// Level populations after kicking an oscillator ground state by `q`,
/// from overlaps `<n| e^{iqx} |0>` evaluated with Gauss–Hermite quadrature.
///
/// The quadrature order is `max(4(n_max + λ), 64)`.
pub fn kicked_populations_quadrature(mass: f64, omega: f64, q: f64, n_max: usize) -> Vec<f64> {
    let kappa = q / (mass * omega).sqrt();
    let lambda = 0.5 * kappa * kappa;
    let order = ((4.0 * (n_max as f64 + lambda)).ceil() as usize).max(64);
    let (nodes, weights) = gauss_hermite(order);
    let mut amps = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for (&xi, &wt) in nodes.iter().zip(&weights) {
        let h = hermite_functions(xi, n_max);
        let phase = Complex64::from_polar(wt * h[0], kappa * xi);
        for (a, hk) in amps.iter_mut().zip(&h) {
            *a += phase * *hk;
        }
    }
    amps.iter().map(|a| a.norm_sqr()).collect()
}

/// `(p_bright, p_dark, p_absorbed)` for the calibrated interferometer built
/// from explicit 2×2 matrices.
pub fn mz_by_matrices(r: f64, bomb: bool) -> (f64, f64, f64) {
    type M = [[Complex64; 2]; 2];
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let mul = |a: &M, v: [Complex64; 2]| {
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    };
    let t = (1.0 - r).sqrt();
    let s = r.sqrt();
    let bs: M = [[c(t, 0.0), c(0.0, s)], [c(0.0, s), c(t, 0.0)]];
    let phase: M = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
    let mut v = mul(&bs, [c(1.0, 0.0), c(0.0, 0.0)]);
    let mut absorbed = 0.0;
    if bomb {
        absorbed = v[1].norm_sqr();
        v[1] = c(0.0, 0.0);
    }
    let v = mul(&bs, mul(&phase, v));
    (v[0].norm_sqr(), v[1].norm_sqr(), absorbed)
}

/// `O(n²)` discrete Fourier transform, `c_k = (1/n) Σ_j f_j e^{-2πi jk/n}`.
pub fn naive_dft(field: &[Complex64]) -> Vec<Complex64> {
    let n = field.len();
    (0..n)
        .map(|k| {
            field
                .iter()
                .enumerate()
                .map(|(j, f)| f * Complex64::from_polar(1.0, -2.0 * PI * (j * k % n) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// Argmax of the reflectivity objective over an evenly spaced grid on
/// `[edge, 1 - edge]`.
pub fn grid_scan_optimum(lambda: f64, points: usize, edge: f64) -> (f64, f64) {
    let step = (1.0 - 2.0 * edge) / (points - 1) as f64;
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for i in 0..points {
        let r = edge + i as f64 * step;
        let eta = (1.0 - r) / (2.0 - r);
        let photons = 1.0 / (1.0 - (1.0 - r) * (1.0 - r));
        let f = eta - lambda * photons;
        if f > best.1 {
            best = (r, f);
        }
    }
    best
}

/// Chi-square p-value for two degrees of freedom, `exp(-χ²/2)`.
pub fn chi_square_p_value_df2(chi2: f64) -> f64 {
    (-0.5 * chi2).exp()
}
