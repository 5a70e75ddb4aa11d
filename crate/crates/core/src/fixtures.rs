//! Deterministic fixture builders shared by the test suites, the acceptance
//! battery, and the CLI demos.

use std::sync::Arc;

use crate::classical::{MeasureSpace, SampledDensity, StepRearrangement};

/// Midpoint sampling of `f` on `[a, b]` with `n` equal cells.
pub fn interval_midpoint(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> SampledDensity {
    assert!(b > a && n > 0);
    let h = (b - a) / n as f64;
    let space = MeasureSpace::new((0..n).map(|i| (i.to_string(), h)).collect()).unwrap();
    let values = (0..n)
        .map(|i| f(a + (i as f64 + 0.5) * h))
        .collect();
    SampledDensity::new(space, values).unwrap()
}

/// Midpoint sampling on the unit interval: a probability space.
pub fn unit_interval(n: usize, f: impl Fn(f64) -> f64) -> SampledDensity {
    interval_midpoint(0.0, 1.0, n, f)
}

/// A centered 1-d Maxwellian (Gaussian of variance `t`) sampled on
/// `[-l_sigmas sqrt(t), l_sigmas sqrt(t)]`; its differential entropy is
/// `(1/2) log(2 pi e t)`.
pub fn maxwellian(t: f64, n: usize, l_sigmas: f64) -> SampledDensity {
    assert!(t > 0.0);
    let l = l_sigmas * t.sqrt();
    let norm = 1.0 / (2.0 * std::f64::consts::PI * t).sqrt();
    interval_midpoint(-l, l, n, |v| norm * (-v * v / (2.0 * t)).exp())
}

/// Decreasing step approximation of a profile `h` on the truncated interval
/// `(s0, 1]`: `segments` log-spaced pieces, each carrying the value of `h` at
/// its geometric midpoint. `h` must be strictly decreasing.
pub fn step_profile(h: impl Fn(f64) -> f64, s0: f64, segments: usize) -> StepRearrangement {
    assert!(s0 > 0.0 && s0 < 1.0 && segments > 0);
    let (la, lb) = (s0.ln(), 0.0);
    let mut steps = Vec::with_capacity(segments);
    for i in 0..segments {
        let l0 = la + (lb - la) * i as f64 / segments as f64;
        let l1 = la + (lb - la) * (i + 1) as f64 / segments as f64;
        let mid = (0.5 * (l0 + l1)).exp();
        steps.push((h(mid), l1.exp() - l0.exp()));
    }
    StepRearrangement::new(steps, false).expect("strictly decreasing profile")
}

/// The indicator weight `chi_[0, len)`.
pub fn indicator_weight(len: f64) -> StepRearrangement {
    StepRearrangement::new(vec![(1.0, len)], false).unwrap()
}

/// A uniform probability space with `n` cells.
pub fn probability_space(n: usize) -> Arc<MeasureSpace> {
    MeasureSpace::uniform_probability(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_is_probability_space() {
        let f = unit_interval(100, |u| u);
        assert!(f.space().is_probability());
        // midpoint sum of u on (0,1] is exactly 1/2
        assert!((f.l1_norm() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn maxwellian_normalizes() {
        let f = maxwellian(1.0, 2000, 10.0);
        assert!((f.l1_norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_profile_covers_truncated_interval() {
        let r = step_profile(|s| 1.0 / s, 1e-3, 50);
        assert!((r.finite_length() - (1.0 - 1e-3)).abs() < 1e-12);
        assert!(r.steps().windows(2).all(|w| w[0].value > w[1].value));
    }
}
