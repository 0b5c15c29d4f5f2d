//! Standard normal distribution function and its tail inverse.

use std::f64::consts::FRAC_1_SQRT_2;

/// Φ(x), the standard normal distribution function.
pub fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// P(Z > x) for a standard normal Z, accurate deep into the tail.
pub fn upper_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// P(|Z| > x) for a standard normal Z.
pub fn two_sided_tail(x: f64) -> f64 {
    libm::erfc(x.abs() * FRAC_1_SQRT_2)
}

/// The `z ≥ 0` with `P(Z > z) = p`, for `p` in `(0, 0.5]`.
///
/// Found by bisection on `[0, 40]`, iterated until the bracket can no longer
/// shrink in `f64`, so the result is as precise as the tail function allows.
pub fn upper_tail_inverse(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    let (mut lo, mut hi) = (0.0_f64, 40.0_f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        if upper_tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_anchored() {
        assert_eq!(cdf(0.0), 0.5);
        for x in [0.1, 1.0, 2.5, 6.0] {
            assert!((cdf(x) + cdf(-x) - 1.0).abs() < 1e-15);
            assert!((upper_tail(x) - cdf(-x)).abs() < 1e-16);
            assert!((two_sided_tail(x) - 2.0 * upper_tail(x)).abs() < 1e-16);
        }
    }

    #[test]
    fn tail_inverse_round_trips() {
        for p in [0.5, 0.3, 0.158_655_253_931_457_05, 1e-3, 1e-9] {
            let z = upper_tail_inverse(p);
            assert!((upper_tail(z) - p).abs() <= 1e-14 * p.max(1e-300) + 1e-17, "p = {p}");
        }
        assert!(upper_tail_inverse(0.5).abs() < 1e-15);
    }
}
