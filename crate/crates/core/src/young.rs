//! Young's functions and their calculus: evaluation, densities,
//! complementary functions via generalized inverses, and the sampled
//! growth-condition probes.
//!
//! A Young's function is carried as its density `psi` (increasing,
//! left-continuous, `psi(0) = 0`) together with an optional closed form for
//! the primitive. When no closed form is available the primitive is
//! evaluated by adaptive quadrature of the density.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::numerics::{generalized_inverse, integrate, is_huge};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A Young's function: the convex primitive of an increasing,
/// left-continuous density vanishing at 0.
#[derive(Clone)]
pub struct YoungFunction {
    name: String,
    density: RealFn,
    closed_form: Option<RealFn>,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction")
            .field("name", &self.name)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

impl YoungFunction {
    /// Build from a density alone; the primitive is evaluated by quadrature.
    pub fn new(name: impl Into<String>, density: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            density: Arc::new(density),
            closed_form: None,
        }
    }

    /// Build from a density together with a closed form for the primitive.
    pub fn with_closed_form(
        name: impl Into<String>,
        density: impl Fn(f64) -> f64 + Send + Sync + 'static,
        closed_form: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            density: Arc::new(density),
            closed_form: Some(Arc::new(closed_form)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluate the primitive at `s >= 0`; a negative argument is a domain error.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::Negative(s));
        }
        Ok(self.value(s))
    }

    /// Evaluate the primitive at a nonnegative argument.
    ///
    /// Panics on negative input; callers pass absolute values.
    pub fn value(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "Young's function evaluated at negative {s}");
        match &self.closed_form {
            Some(cf) => cf(s),
            None => integrate(&|u| (self.density)(u), 0.0, s),
        }
    }

    /// Like [`value`](Self::value) but mapping anything at or above the
    /// overflow threshold to +infinity, so probe verdicts do not depend on
    /// where f64 overflows.
    pub fn probe_value(&self, s: f64) -> f64 {
        let v = self.value(s);
        if is_huge(v) {
            f64::INFINITY
        } else {
            v
        }
    }

    /// The density at `u >= 0`.
    pub fn density_at(&self, u: f64) -> f64 {
        (self.density)(u)
    }

    /// The complementary Young's function.
    ///
    /// Catalog entries with a known conjugate return the paired catalog
    /// entry; everything else falls back to the numerically constructed
    /// conjugate of [`complementary_numeric`](Self::complementary_numeric).
    pub fn complementary(&self) -> YoungFunction {
        catalog::known_conjugate(&self.name).unwrap_or_else(|| self.complementary_numeric())
    }

    /// The conjugate built directly from the generalized inverse of the
    /// density, with no closed form: evaluation goes through quadrature of
    /// the bisected inverse.
    pub fn complementary_numeric(&self) -> YoungFunction {
        let psi = self.density.clone();
        YoungFunction::new(format!("conj({})", self.name), move |v| {
            generalized_inverse(&|w| psi(w), v)
        })
    }

    /// Check the defining invariants on a probe grid: vanishing at 0,
    /// monotonicity, midpoint convexity, and (when a closed form is carried)
    /// agreement between the closed form and quadrature of the density.
    pub fn validate(&self, grid: &[f64]) -> Result<()> {
        check_grid(grid)?;
        let at_zero = self.value(0.0);
        if at_zero.abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "{}: value at 0 is {at_zero}, expected 0",
                self.name
            )));
        }
        let mut prev = at_zero;
        for &s in grid {
            let v = self.value(s);
            if v < prev - 1e-12 * prev.abs().max(1.0) {
                return Err(Error::Domain(format!("{}: not nondecreasing at {s}", self.name)));
            }
            prev = v;
        }
        for w in grid.windows(2) {
            let (x, y) = (w[0], w[1]);
            let (fx, fy, fm) = (self.value(x), self.value(y), self.value(0.5 * (x + y)));
            if fm.is_finite() && fx.is_finite() && fy.is_finite() {
                let chord = 0.5 * (fx + fy);
                if fm > chord + 1e-9 * chord.abs().max(1.0) {
                    return Err(Error::Domain(format!(
                        "{}: midpoint convexity fails on [{x}, {y}]",
                        self.name
                    )));
                }
            }
        }
        if self.closed_form.is_some() {
            for &s in grid {
                let cf = self.value(s);
                let quad = integrate(&|u| (self.density)(u), 0.0, s);
                if cf.is_finite() != quad.is_finite() {
                    return Err(Error::Domain(format!(
                        "{}: closed form and quadrature disagree on finiteness at {s}",
                        self.name
                    )));
                }
                if cf.is_finite() && (cf - quad).abs() > 1e-7 * cf.abs().max(1.0) {
                    return Err(Error::Domain(format!(
                        "{}: closed form {cf} vs quadrature {quad} at {s}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Verdict of a sampled probe. A pass means "holds on the supplied grid with
/// the fitted constants"; these are probes, not proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Grid point exhibiting a violation (or the ambiguity) found by a probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub point: f64,
    pub values: Vec<ExtReal>,
    pub note: String,
}

/// Result of a growth-condition or dominance probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub constants: BTreeMap<String, f64>,
}

impl ProbeReport {
    pub fn pass(constants: BTreeMap<String, f64>) -> Self {
        Self {
            verdict: Verdict::Pass,
            witness: None,
            constants,
        }
    }

    /// A fail verdict always carries its witness.
    pub fn fail(witness: Witness, constants: BTreeMap<String, f64>) -> Self {
        Self {
            verdict: Verdict::Fail,
            witness: Some(witness),
            constants,
        }
    }

    pub fn inconclusive(witness: Option<Witness>, constants: BTreeMap<String, f64>) -> Self {
        Self {
            verdict: Verdict::Inconclusive,
            witness,
            constants,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid[0] <= 0.0 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadGrid);
    }
    Ok(())
}

fn constants(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Probe the doubling condition `psi(2s) <= c psi(s) < inf` for `s >= s0`
/// (`s0 = 0` when `global`) on the supplied grid.
///
/// Pass reports the smallest constant observed on the grid; a witness-carrying
/// fail is produced where the value is infinite, where the ratio is infinite
/// with the global flag set, or where the ratio keeps growing monotonically
/// along the grid tail. A growing-but-slow tail is inconclusive.
pub fn check_delta2(psi: &YoungFunction, grid: &[f64], global: bool) -> Result<ProbeReport> {
    check_grid(grid)?;
    let mut start = 0;
    if !global {
        // skip the head where the ratio is undefined or infinite
        for (i, &s) in grid.iter().enumerate() {
            let den = psi.probe_value(s);
            let num = psi.probe_value(2.0 * s);
            if den > 0.0 && den.is_finite() && num.is_finite() {
                start = i;
                break;
            }
            start = i + 1;
        }
        if start >= grid.len() {
            let s = *grid.last().unwrap();
            return Ok(ProbeReport::fail(
                Witness {
                    point: s,
                    values: vec![ExtReal(psi.probe_value(s)), ExtReal(psi.probe_value(2.0 * s))],
                    note: "no grid tail with finite positive values".into(),
                },
                BTreeMap::new(),
            ));
        }
    }
    let s0 = if global { 0.0 } else { grid[start] };
    let mut ratios = Vec::with_capacity(grid.len() - start);
    for &s in &grid[start..] {
        let den = psi.probe_value(s);
        let num = psi.probe_value(2.0 * s);
        if num.is_infinite() {
            return Ok(ProbeReport::fail(
                Witness {
                    point: s,
                    values: vec![ExtReal(den), ExtReal(num)],
                    note: "value is infinite at 2s".into(),
                },
                constants(&[("s0", s0)]),
            ));
        }
        if den == 0.0 {
            if num == 0.0 {
                continue;
            }
            return Ok(ProbeReport::fail(
                Witness {
                    point: s,
                    values: vec![ExtReal(den), ExtReal(num)],
                    note: "ratio infinite: value vanishes at s but not at 2s".into(),
                },
                constants(&[("s0", s0)]),
            ));
        }
        ratios.push((s, num / den));
    }
    if ratios.is_empty() {
        // identically zero on the whole grid: any c works
        return Ok(ProbeReport::pass(constants(&[("c", 1.0), ("s0", s0)])));
    }
    let (c_at, c) = ratios
        .iter()
        .cloned()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    // divergence heuristic: strictly increasing ratios over the grid tail
    let tail = ratios.len().div_ceil(4).max(3).min(ratios.len());
    let tail = &ratios[ratios.len() - tail..];
    let increasing = tail.windows(2).all(|w| w[1].1 > w[0].1);
    if increasing && tail.len() >= 2 {
        let growth = tail.last().unwrap().1 / tail.first().unwrap().1;
        let (s, r) = *tail.last().unwrap();
        let witness = Witness {
            point: s,
            values: vec![ExtReal(psi.probe_value(s)), ExtReal(psi.probe_value(2.0 * s)), ExtReal(r)],
            note: "ratio increases monotonically along the grid tail".into(),
        };
        if growth >= 2.0 {
            return Ok(ProbeReport::fail(witness, constants(&[("s0", s0)])));
        }
        return Ok(ProbeReport::inconclusive(
            Some(witness),
            constants(&[("c", c), ("s0", s0)]),
        ));
    }
    let mut cs = constants(&[("c", c), ("s0", s0)]);
    cs.insert("c_at".into(), c_at);
    Ok(ProbeReport::pass(cs))
}

/// Probe the condition `phi(x) <= phi(l x) / (2 l)` for `x >= x0`
/// (`x0 = 0` when `global`), scanning `l` over {1.5, 2, 3, 4}.
pub fn check_nabla2(phi: &YoungFunction, grid: &[f64], global: bool) -> Result<ProbeReport> {
    check_grid(grid)?;
    let ladder = [1.5, 2.0, 3.0, 4.0];
    let holds_at = |l: f64, x: f64| -> bool {
        let lhs = phi.probe_value(x);
        let rhs = phi.probe_value(l * x) / (2.0 * l);
        lhs <= rhs || rhs.is_infinite()
    };
    let mut best: Option<(f64, usize)> = None; // (l, start index)
    for &l in &ladder {
        // smallest grid index from which the bound holds through the tail
        let mut start = grid.len();
        for i in (0..grid.len()).rev() {
            if holds_at(l, grid[i]) {
                start = i;
            } else {
                break;
            }
        }
        if start == grid.len() {
            continue;
        }
        if global && start != 0 {
            continue;
        }
        if best.is_none_or(|(_, s)| start < s) {
            best = Some((l, start));
        }
    }
    match best {
        Some((l, start)) if start + 1 < grid.len() || grid.len() == 1 => Ok(ProbeReport::pass(
            constants(&[("l", l), ("x0", if global { 0.0 } else { grid[start] })]),
        )),
        Some((l, start)) => Ok(ProbeReport::inconclusive(
            None,
            constants(&[("l", l), ("x0", grid[start])]),
        )),
        None => {
            let l = 2.0;
            let x = *grid.last().unwrap();
            Ok(ProbeReport::fail(
                Witness {
                    point: x,
                    values: vec![ExtReal(phi.probe_value(x)), ExtReal(phi.probe_value(l * x) / (2.0 * l))],
                    note: format!("bound fails for every l in {ladder:?}"),
                },
                BTreeMap::new(),
            ))
        }
    }
}

/// Probe the dominance `f1(b x) >= f2(x)` at every grid point. `f2` may be
/// any real function on the half line (it need not be a Young's function).
pub fn check_dominance(
    f1: &YoungFunction,
    f2: &dyn Fn(f64) -> f64,
    b: f64,
    grid: &[f64],
) -> Result<ProbeReport> {
    check_grid(grid)?;
    if b <= 0.0 {
        return Err(Error::Domain(format!("scale b must be positive, got {b}")));
    }
    let mut worst: Option<(f64, f64, f64, f64)> = None; // (gap, x, lhs, rhs)
    for &x in grid {
        let lhs = f1.probe_value(b * x);
        let rhs = f2(x);
        if lhs.is_infinite() {
            continue;
        }
        if rhs > lhs {
            let gap = rhs - lhs;
            if worst.is_none_or(|(g, ..)| gap > g) {
                worst = Some((gap, x, lhs, rhs));
            }
        }
    }
    match worst {
        None => Ok(ProbeReport::pass(constants(&[("b", b)]))),
        Some((_, x, lhs, rhs)) => Ok(ProbeReport::fail(
            Witness {
                point: x,
                values: vec![ExtReal(lhs), ExtReal(rhs)],
                note: "f1(b x) < f2(x)".into(),
            },
            constants(&[("b", b)]),
        )),
    }
}

/// Probe equivalence of two Young's functions: dominance both ways with the
/// scale searched over {2^k : k = -10..20}. A pass reports fitted (a, b) with
/// `f1(a x) <= f2(x) <= f1(b x)` on the grid.
pub fn check_equivalence(f1: &YoungFunction, f2: &YoungFunction, grid: &[f64]) -> Result<ProbeReport> {
    check_grid(grid)?;
    let candidates: Vec<f64> = (-10..=20).map(|k| (k as f64).exp2()).collect();
    let dominated = |big: &YoungFunction, small: &YoungFunction, scale: f64| -> Option<(f64, f64, f64)> {
        // first violation of small(x) <= big(scale x), if any
        for &x in grid {
            let lhs = small.probe_value(x);
            let rhs = big.probe_value(scale * x);
            if rhs.is_infinite() {
                continue;
            }
            if lhs > rhs {
                return Some((x, lhs, rhs));
            }
        }
        None
    };
    // largest a with f1(a x) <= f2(x): here f2 plays "big" at unit scale,
    // so scan a descending and test f1(a x) <= f2(x) directly.
    let mut fitted_a = None;
    let mut last_violation_a = None;
    for &a in candidates.iter().rev() {
        let mut bad = None;
        for &x in grid {
            let lhs = f1.probe_value(a * x);
            let rhs = f2.probe_value(x);
            if rhs.is_infinite() {
                continue;
            }
            if lhs > rhs {
                bad = Some((x, lhs, rhs));
                break;
            }
        }
        match bad {
            None => {
                fitted_a = Some(a);
                break;
            }
            Some(w) => last_violation_a = Some(w),
        }
    }
    // smallest b with f2(x) <= f1(b x)
    let mut fitted_b = None;
    let mut last_violation_b = None;
    for &b in &candidates {
        match dominated(f1, f2, b) {
            None => {
                fitted_b = Some(b);
                break;
            }
            Some(w) => last_violation_b = Some(w),
        }
    }
    match (fitted_a, fitted_b) {
        (Some(a), Some(b)) => Ok(ProbeReport::pass(constants(&[("a", a), ("b", b)]))),
        (None, _) => {
            let (x, lhs, rhs) = last_violation_a.unwrap();
            Ok(ProbeReport::fail(
                Witness {
                    point: x,
                    values: vec![ExtReal(lhs), ExtReal(rhs)],
                    note: "no a in the candidate set gives f1(a x) <= f2(x)".into(),
                },
                BTreeMap::new(),
            ))
        }
        (_, None) => {
            let (x, lhs, rhs) = last_violation_b.unwrap();
            Ok(ProbeReport::fail(
                Witness {
                    point: x,
                    values: vec![ExtReal(lhs), ExtReal(rhs)],
                    note: "no b in the candidate set gives f2(x) <= f1(b x)".into(),
                },
                BTreeMap::new(),
            ))
        }
    }
}

/// The entropic integrand `x -> k x log x` (0 at 0). Not a Young's function:
/// it is negative on (0, 1).
pub fn x_log_x(k: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| if x == 0.0 { 0.0 } else { k * x * x.ln() }
}

/// The plain power `t^p` (density `p t^(p-1)`), whose gauge is exactly the
/// `p`-norm. The catalog's `power:p` carries `t^p / p` instead.
pub fn plain_power(p: f64) -> YoungFunction {
    assert!(p >= 1.0);
    YoungFunction::with_closed_form(
        format!("t^{p}"),
        move |u| if u == 0.0 { 0.0 } else { p * u.powf(p - 1.0) },
        move |t| t.powf(p),
    )
}

pub mod catalog {
    //! Named Young's functions used throughout the toolkit.

    use super::YoungFunction;
    use crate::error::{Error, Result};

    /// `cosh(s) - 1`, density `sinh`.
    pub fn cosh1() -> YoungFunction {
        YoungFunction::with_closed_form("cosh-1", f64::sinh, |s| {
            let h = (0.5 * s).sinh();
            2.0 * h * h
        })
    }

    /// `x asinh(x) - sqrt(1 + x^2) + 1`, density `asinh`; the conjugate of
    /// `cosh - 1`.
    pub fn arcsinh_int() -> YoungFunction {
        YoungFunction::with_closed_form("arcsinh-int", f64::asinh, |x| {
            x * x.asinh() - x * x / ((1.0 + x * x).sqrt() + 1.0)
        })
    }

    /// `x log(x + 1)`.
    pub fn x_log1p() -> YoungFunction {
        YoungFunction::with_closed_form(
            "xlogx1",
            |u| u.ln_1p() + u / (1.0 + u),
            |x| x * x.ln_1p(),
        )
    }

    /// `s log^+ s`: zero on all of [0, 1], `s log s` beyond.
    pub fn l_log_l() -> YoungFunction {
        YoungFunction::with_closed_form(
            "llogl",
            |u| if u <= 1.0 { 0.0 } else { 1.0 + u.ln() },
            |s| if s <= 1.0 { 0.0 } else { s * s.ln() },
        )
    }

    /// `t` on [0, 1] and `e^(t-1)` beyond; the conjugate of `s log^+ s`.
    pub fn phi_exp() -> YoungFunction {
        YoungFunction::with_closed_form(
            "phi-exp",
            |u| {
                if u == 0.0 {
                    0.0
                } else if u <= 1.0 {
                    1.0
                } else {
                    (u - 1.0).exp()
                }
            },
            |t| if t <= 1.0 { t } else { (t - 1.0).exp() },
        )
    }

    /// `t^p / p` for `p >= 1`.
    pub fn power(p: f64) -> Result<YoungFunction> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("power exponent must be >= 1, got {p}")));
        }
        Ok(YoungFunction::with_closed_form(
            format!("power:{p}"),
            move |u| if u == 0.0 { 0.0 } else { u.powf(p - 1.0) },
            move |t| t.powf(p) / p,
        ))
    }

    /// `e^t - t - 1`, density `e^u - 1`.
    pub fn exp_t1() -> YoungFunction {
        YoungFunction::with_closed_form("exp-t-1", f64::exp_m1, |t| t.exp_m1() - t)
    }

    /// `(x + 1) log(x + 1) - x`, density `log(1 + u)`; the conjugate of
    /// `e^t - t - 1`.
    pub fn int_log1p() -> YoungFunction {
        YoungFunction::with_closed_form("int-log1p", f64::ln_1p, |x| (1.0 + x) * x.ln_1p() - x)
    }

    /// Zero on [0, 1], infinite beyond: the conjugate of `t`; the gauge of
    /// its Orlicz space is the sup norm.
    pub fn linf_conjugate() -> YoungFunction {
        YoungFunction::with_closed_form(
            "linf",
            |v| if v <= 1.0 { 0.0 } else { f64::INFINITY },
            |t| if t <= 1.0 { 0.0 } else { f64::INFINITY },
        )
    }

    /// Look up an entry by name. Power entries are addressed as `power:p`.
    pub fn by_name(name: &str) -> Result<YoungFunction> {
        match name {
            "cosh-1" => Ok(cosh1()),
            "arcsinh-int" => Ok(arcsinh_int()),
            "xlogx1" => Ok(x_log1p()),
            "llogl" => Ok(l_log_l()),
            "phi-exp" => Ok(phi_exp()),
            "exp-t-1" => Ok(exp_t1()),
            "int-log1p" => Ok(int_log1p()),
            "linf" => Ok(linf_conjugate()),
            _ => match name.strip_prefix("power:") {
                Some(p) => {
                    let p: f64 = p
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad power exponent in {name:?}")))?;
                    power(p)
                }
                None => Err(Error::Parse(format!("unknown Young's function {name:?}"))),
            },
        }
    }

    /// All fixed-name entries (excludes the `power:p` family).
    pub fn names() -> &'static [&'static str] {
        &[
            "cosh-1",
            "arcsinh-int",
            "xlogx1",
            "llogl",
            "phi-exp",
            "exp-t-1",
            "int-log1p",
            "linf",
        ]
    }

    /// The conjugate catalog entry, when the pair is known in closed form.
    pub fn known_conjugate(name: &str) -> Option<YoungFunction> {
        match name {
            "cosh-1" => Some(arcsinh_int()),
            "arcsinh-int" => Some(cosh1()),
            "llogl" => Some(phi_exp()),
            "phi-exp" => Some(l_log_l()),
            "exp-t-1" => Some(int_log1p()),
            "int-log1p" => Some(exp_t1()),
            "linf" => power(1.0).ok(),
            _ => {
                let p: f64 = name.strip_prefix("power:")?.parse().ok()?;
                if p == 1.0 {
                    Some(linf_conjugate())
                } else if p > 1.0 {
                    power(p / (p - 1.0)).ok()
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use crate::numerics::{linear_grid, log_grid};

    #[test]
    fn eval_examples() {
        assert_eq!(cosh1().eval(0.0).unwrap(), 0.0);
        // zero on all of [0,1], not just at 0
        for s in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(l_log_l().eval(s).unwrap(), 0.0);
        }
        let e = std::f64::consts::E;
        assert!((exp_t1().eval(1.0).unwrap() - (e - 2.0)).abs() < 1e-12);
        // cross-check the closed form by quadrature of the density
        let by_quadrature = YoungFunction::new("exp-t-1-quad", f64::exp_m1);
        assert!((by_quadrature.eval(1.0).unwrap() - (e - 2.0)).abs() < 1e-9);
        assert!(cosh1().eval(-0.5).is_err());
    }

    #[test]
    fn catalog_entries_satisfy_young_invariants() {
        let grid = log_grid(1e-3, 20.0, 40);
        for name in names() {
            let f = by_name(name).unwrap();
            f.validate(&grid).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        power(3.0).unwrap().validate(&grid).unwrap();
        power(1.5).unwrap().validate(&grid).unwrap();
    }

    #[test]
    fn complementary_of_cosh_matches_catalog_conjugate() {
        // exercise the numeric path, not the known-pairs table
        let numeric = cosh1().complementary_numeric();
        let reference = arcsinh_int();
        for &x in &log_grid(1e-3, 10.0, 25) {
            let a = numeric.eval(x).unwrap();
            let b = reference.eval(x).unwrap();
            assert!((a - b).abs() <= 1e-6 * b.abs().max(1e-30), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn complementary_of_identity_is_sup_gauge() {
        let phi = power(1.0).unwrap().complementary_numeric();
        assert_eq!(phi.eval(0.5).unwrap(), 0.0);
        assert_eq!(phi.eval(1.0).unwrap(), 0.0);
        assert!(phi.eval(1.5).unwrap().is_infinite());
        // and the catalog pairing agrees
        let cat = power(1.0).unwrap().complementary();
        assert_eq!(cat.name(), "linf");
    }

    /// Independent Legendre-conjugate oracle: maximise `s t - psi(s)` over a
    /// fine s-grid.
    fn legendre_oracle(psi: &YoungFunction, t: f64, s_max: f64) -> f64 {
        let n = 400_000;
        let mut best = 0.0f64;
        for i in 0..=n {
            let s = s_max * i as f64 / n as f64;
            let v = s * t - psi.value(s);
            if v > best {
                best = v;
            }
        }
        best
    }

    #[test]
    fn complementary_of_power_matches_legendre_oracle() {
        let p = 3.0;
        let q = p / (p - 1.0);
        let psi = power(p).unwrap();
        let numeric = psi.complementary_numeric();
        for &t in &linear_grid(0.25, 5.0, 8) {
            let expected = t.powf(q) / q;
            let oracle = legendre_oracle(&psi, t, 6.0);
            let got = numeric.eval(t).unwrap();
            assert!((oracle - expected).abs() < 1e-4 * expected, "oracle at t={t}");
            assert!((got - expected).abs() < 1e-8 * expected, "numeric at t={t}");
        }
    }

    #[test]
    fn double_conjugate_recovers_original() {
        // entries with continuous strictly increasing density
        for f in [cosh1(), exp_t1(), power(3.0).unwrap(), x_log1p()] {
            let back = f.complementary_numeric().complementary_numeric();
            for &s in &log_grid(0.1, 5.0, 9) {
                let a = f.value(s);
                let b = back.value(s);
                assert!((a - b).abs() <= 1e-6 * a.abs().max(1e-12), "{} at {s}: {a} vs {b}", f.name());
            }
        }
    }

    #[test]
    fn delta2_probe_examples() {
        let grid = log_grid(0.01, 100.0, 120);
        let r = check_delta2(&x_log1p(), &grid, true).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.constants["c"] <= 4.0 + 1e-9);

        let r = check_delta2(&cosh1(), &grid, true).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());

        let r = check_delta2(&power(1.0).unwrap(), &grid, true).unwrap();
        assert!(r.passed());
        assert_eq!(r.constants["c"], 2.0);

        // L log L: fails globally (vanishes on (0,1]), passes with s0 > 1
        let r = check_delta2(&l_log_l(), &grid, true).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let r = check_delta2(&l_log_l(), &log_grid(2.0, 100.0, 60), false).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn nabla2_probe_examples() {
        let grid = log_grid(1.0, 50.0, 60);
        let r = check_nabla2(&cosh1(), &grid, false).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.constants["l"] <= 4.0);

        let r = check_nabla2(&power(1.0).unwrap(), &grid, false).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());

        let r = check_nabla2(&exp_t1(), &grid, false).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn dominance_probe_examples() {
        let grid = log_grid(1e-3, 1e3, 200);
        // arcsinh integral dominates k x log x with b = k for k > e
        let k = 3.0;
        let r = check_dominance(&arcsinh_int(), &x_log_x(k), k, &grid).unwrap();
        assert!(r.passed(), "{r:?}");

        let c = cosh1();
        let r = check_dominance(&c, &|x| c.value(x), 1.0, &grid).unwrap();
        assert!(r.passed());

        // quadratic beats linear once x > b
        let r = check_dominance(&power(1.0).unwrap(), &|x| x * x, 4.0, &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.unwrap();
        assert!(w.point > 4.0);
    }

    #[test]
    fn equivalence_probe_examples() {
        // grid reaches past the largest scale candidate so that genuinely
        // inequivalent growth is caught
        let grid = log_grid(1e-3, 1e7, 180);
        assert!(check_equivalence(&cosh1(), &exp_t1(), &grid).unwrap().passed());
        assert!(check_equivalence(&int_log1p(), &x_log1p(), &grid).unwrap().passed());
        let r = check_equivalence(&power(1.0).unwrap(), &power(2.0).unwrap(), &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn exp_pair_two_sided_bound_with_fitted_constants() {
        // 1/K (e^t - t - 1) <= phi_exp(t) <= K (e^t - t - 1) for t >= u0
        let u0 = 1.0;
        let grid = linear_grid(u0, 30.0, 300);
        let (f, g) = (exp_t1(), phi_exp());
        let mut k: f64 = 1.0;
        for &t in &grid {
            let (a, b) = (f.value(t), g.value(t));
            k = k.max(a / b).max(b / a);
        }
        assert!(k < 2.72, "fitted K = {k}");
        for &t in &linear_grid(u0, 30.0, 997) {
            let (a, b) = (f.value(t), g.value(t));
            assert!(b <= k * a + 1e-9 && a <= k * b + 1e-9, "t={t}");
        }
    }

    #[test]
    fn by_name_parses_powers_and_rejects_unknown() {
        assert_eq!(by_name("power:2.5").unwrap().name(), "power:2.5");
        assert!(by_name("power:0.5").is_err());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn probe_grid_validation() {
        assert!(check_delta2(&cosh1(), &[], true).is_err());
        assert!(check_delta2(&cosh1(), &[2.0, 1.0], true).is_err());
        assert!(check_delta2(&cosh1(), &[-1.0, 1.0], true).is_err());
    }

    #[test]
    fn probe_report_serializes_infinities_explicitly() {
        let r = ProbeReport::fail(
            Witness {
                point: 2.0,
                values: vec![ExtReal(1.0), ExtReal(f64::INFINITY)],
                note: "x".into(),
            },
            BTreeMap::new(),
        );
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"inf\""), "{js}");
        assert!(js.contains("\"fail\""));
    }
}
