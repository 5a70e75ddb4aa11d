//! Shared numerical kernels: adaptive quadrature, monotone bisection,
//! golden-section minimisation, and deterministic summation.

/// Values at or above this threshold are treated as +infinity by the probes
/// and norm solvers, so that verdicts do not depend on where f64 overflows.
pub const HUGE: f64 = 1e300;

/// Relative tolerance of the adaptive Simpson quadrature.
pub const QUAD_REL_TOL: f64 = 1e-10;
/// Absolute floor of the adaptive Simpson quadrature.
pub const QUAD_ABS_TOL: f64 = 1e-14;

/// True when `x` should be reported as infinite.
pub fn is_huge(x: f64) -> bool {
    !(x < HUGE)
}

/// Deterministic pairwise summation. The reduction tree depends only on the
/// slice length, so the result is bit-stable for a fixed element order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Logarithmically spaced grid on [lo, hi] with `n` points (n >= 2, 0 < lo < hi).
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Uniformly spaced grid on [lo, hi] with `n` points.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(hi > lo && n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson quadrature of `f` on [a, b].
///
/// Returns +infinity as soon as a sampled node evaluates at or above [`HUGE`];
/// an integrand that is infinite on a set of positive length is always caught
/// this way once the recursion samples that set.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    integrate_tol(f, a, b, QUAD_REL_TOL, QUAD_ABS_TOL)
}

/// Adaptive Simpson with explicit tolerances.
pub fn integrate_tol(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64, abs: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    assert!(b > a, "integration bounds out of order");
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    if is_huge(fa) || is_huge(fm) || is_huge(fb) {
        return f64::INFINITY;
    }
    let whole = simpson(fa, fm, fb, b - a);
    adaptive(f, a, b, fa, fm, fb, whole, rel, abs, 60)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    rel: f64,
    abs: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    if is_huge(flm) || is_huge(frm) {
        return f64::INFINITY;
    }
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let refined = left + right;
    let err = refined - whole;
    if depth == 0 || err.abs() <= 15.0 * (abs + rel * refined.abs()) {
        return refined + err / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, rel, 0.5 * abs, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, rel, 0.5 * abs, depth - 1)
}

/// Generalized inverse `inf { w : g(w) >= v }` of a nondecreasing `g`
/// with `g(0) = 0`, by bracket growth and bisection on `w`.
///
/// Returns 0 for `v <= 0`, and +infinity when `g` never reaches `v`
/// (the infimum of an empty set). At a jump of `g` the bracket collapses
/// onto the jump point and the left endpoint is returned, matching the
/// infimum semantics. Bisection tolerance is 1e-12 on `w` (absolute,
/// relative for large brackets).
pub fn generalized_inverse(g: &dyn Fn(f64) -> f64, v: f64) -> f64 {
    const TOL: f64 = 1e-12;
    if v <= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while g(hi) < v {
        hi *= 2.0;
        if hi > HUGE {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0;
    while hi - lo > TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) >= v {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Minimise a unimodal `f` (values may be +infinity away from the trough)
/// over [lo, hi] by golden-section search on the argument, to relative
/// tolerance `rel` on the argument. Returns (argmin, min).
pub fn golden_section(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - (b - a) * INVPHI;
    let mut d = a + (b - a) * INVPHI;
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= rel * (a.abs() + b.abs()).max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INVPHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INVPHI;
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let v = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI);
        assert!((v - 2.0).abs() < 1e-10);
        let v = integrate(&|x: f64| x.exp(), 0.0, 1.0);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn integrates_piecewise_kink() {
        // density of the L log L Young's function: 0 on [0,1], 1 + log u beyond
        let f = |u: f64| if u <= 1.0 { 0.0 } else { 1.0 + u.ln() };
        let s = 3.0f64;
        let v = integrate(&f, 0.0, s);
        assert!((v - s * s.ln()).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn detects_infinite_plateau() {
        let f = |u: f64| if u > 1.0 { f64::INFINITY } else { 0.0 };
        assert!(integrate(&f, 0.0, 2.0).is_infinite());
        assert_eq!(integrate(&f, 0.0, 1.0), 0.0);
    }

    #[test]
    fn generalized_inverse_recovers_inverse() {
        // sinh is continuous and strictly increasing: inverse is asinh
        for v in [0.1, 1.0, 5.0, 40.0] {
            let w = generalized_inverse(&|x: f64| x.sinh(), v);
            assert!((w - v.asinh()).abs() < 1e-10, "v={v}");
        }
    }

    #[test]
    fn generalized_inverse_handles_bounded_density() {
        // g == 1 on (0, inf): inverse is 0 up to 1, infinite beyond
        let g = |x: f64| if x > 0.0 { 1.0 } else { 0.0 };
        assert_eq!(generalized_inverse(&g, 0.5), 0.0);
        assert_eq!(generalized_inverse(&g, 1.0), 0.0);
        assert!(generalized_inverse(&g, 1.5).is_infinite());
    }

    #[test]
    fn generalized_inverse_takes_left_endpoint_at_jump() {
        // g jumps from 0 to 2 at w = 1 (left-continuous): inf{w: g(w) >= 1} = 1
        let g = |x: f64| if x > 1.0 { 2.0 } else { 0.0 };
        let w = generalized_inverse(&g, 1.0);
        assert!((w - 1.0).abs() < 1e-10);
        assert!(w <= 1.0);
    }

    #[test]
    fn golden_section_finds_minimum() {
        let (x, v) = golden_section(&|x: f64| (x - 3.0) * (x - 3.0) + 1.0, 0.0, 10.0, 1e-10);
        assert!((x - 3.0).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }
}
