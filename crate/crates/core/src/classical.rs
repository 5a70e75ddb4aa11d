//! Discretized sigma-finite measure spaces, decreasing rearrangements,
//! modulars, and the Luxemburg / Amemiya norms built on them.
//!
//! Infinite measure spaces are represented by finite truncations; every
//! membership verdict is "at this truncation".

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{golden_section, is_huge, pairwise_sum};
use crate::young::YoungFunction;

/// One atom of a discretized measure space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub label: String,
    pub weight: f64,
}

/// A finite-mass truncation of a sigma-finite measure space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpace {
    cells: Vec<Cell>,
}

impl MeasureSpace {
    /// Weights must be strictly positive and finite; labels unique.
    pub fn new(cells: Vec<(String, f64)>) -> Result<Arc<Self>> {
        let mut seen = std::collections::HashSet::with_capacity(cells.len());
        for (label, weight) in &cells {
            if !(*weight > 0.0 && weight.is_finite()) {
                return Err(Error::Domain(format!(
                    "cell {label:?} has nonpositive or nonfinite weight {weight}"
                )));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::Domain(format!("duplicate cell label {label:?}")));
            }
        }
        Ok(Arc::new(Self {
            cells: cells
                .into_iter()
                .map(|(label, weight)| Cell { label, weight })
                .collect(),
        }))
    }

    /// `n` cells of unit weight (counting measure truncation).
    pub fn unit(n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| (i.to_string(), 1.0)).collect()).unwrap()
    }

    /// `n` cells of weight `1/n` (uniform probability space).
    pub fn uniform_probability(n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| (i.to_string(), 1.0 / n as f64)).collect()).unwrap()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        pairwise_sum(&self.cells.iter().map(|c| c.weight).collect::<Vec<_>>())
    }

    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= 1e-9
    }
}

/// A measurable function on a [`MeasureSpace`], as one finite value per cell.
#[derive(Debug, Clone)]
pub struct SampledDensity {
    space: Arc<MeasureSpace>,
    values: Vec<f64>,
}

impl SampledDensity {
    pub fn new(space: Arc<MeasureSpace>, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Domain(format!(
                "{} values for {} cells",
                values.len(),
                space.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("nonfinite sample value {v}")));
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: Arc<MeasureSpace>, c: f64) -> Result<Self> {
        let n = space.len();
        Self::new(space, vec![c; n])
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    /// Apply `f` cellwise, keeping the space.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.space.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    /// Combine two densities cellwise; errors when the spaces differ.
    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        Self::new(
            self.space.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| c * v).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Deterministic weighted sum of `g(value)` over cells (pairwise
    /// reduction; +infinity propagates).
    pub fn weighted_sum(&self, g: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .zip(&self.space.cells)
            .map(|(&v, c)| g(v) * c.weight)
            .collect();
        if terms.iter().any(|t| t.is_infinite() || is_huge(*t)) {
            return f64::INFINITY;
        }
        pairwise_sum(&terms)
    }

    /// Total weight of the cells where `pred(value)` holds.
    pub fn mass_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .zip(&self.space.cells)
            .map(|(&v, c)| if pred(v) { c.weight } else { 0.0 })
            .collect();
        pairwise_sum(&terms)
    }

    /// The modular `sum psi(scale |f|) dmu`.
    pub fn modular_scaled(&self, psi: &YoungFunction, scale: f64) -> f64 {
        self.weighted_sum(|v| psi.probe_value(scale * v.abs()))
    }

    pub fn modular(&self, psi: &YoungFunction) -> f64 {
        self.modular_scaled(psi, 1.0)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Plain `p`-norm, computed directly (independent of the gauge solver).
    pub fn p_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0);
        self.weighted_sum(|v| v.abs().powf(p)).powf(1.0 / p)
    }

    pub fn l1_norm(&self) -> f64 {
        self.weighted_sum(f64::abs)
    }
}

/// One step of a decreasing rearrangement: `value` held for `length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub value: f64,
    pub length: f64,
}

/// A decreasing, right-continuous step function on `[0, total length)`:
/// the common currency of classical rearrangements and singular-value data.
///
/// `infinite_tail` marks an extra step of value 0 and infinite length, used
/// to stand for operators in semifinite algebras whose support projection is
/// not finite. All modulars treat `psi(0) * inf = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRearrangement {
    steps: Vec<Step>,
    infinite_tail: bool,
}

impl StepRearrangement {
    /// Values must be strictly decreasing and nonnegative, lengths positive
    /// and finite. A trailing explicit zero step is merged into the tail
    /// marker when both are present.
    pub fn new(steps: Vec<(f64, f64)>, infinite_tail: bool) -> Result<Self> {
        let mut out = Vec::with_capacity(steps.len());
        for (value, length) in steps {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::BadSteps);
            }
            if !(length > 0.0) || !length.is_finite() {
                return Err(Error::BadSteps);
            }
            if let Some(prev) = out.last().map(|s: &Step| s.value) {
                if value >= prev {
                    return Err(Error::BadSteps);
                }
            }
            out.push(Step { value, length });
        }
        let mut r = Self {
            steps: out,
            infinite_tail,
        };
        if infinite_tail {
            if let Some(last) = r.steps.last() {
                if last.value == 0.0 {
                    r.steps.pop();
                }
            }
        }
        Ok(r)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn has_infinite_tail(&self) -> bool {
        self.infinite_tail
    }

    /// Total length including the infinite tail.
    pub fn total_length(&self) -> f64 {
        if self.infinite_tail {
            return f64::INFINITY;
        }
        self.finite_length()
    }

    /// Length of the explicitly listed steps.
    pub fn finite_length(&self) -> f64 {
        pairwise_sum(&self.steps.iter().map(|s| s.length).collect::<Vec<_>>())
    }

    /// Value at abscissa `t >= 0` (right-continuous; 0 beyond the steps).
    pub fn eval_at(&self, t: f64) -> f64 {
        let mut pos = 0.0;
        for s in &self.steps {
            pos += s.length;
            if t < pos {
                return s.value;
            }
        }
        0.0
    }

    /// Measure of `{ t : pred(value at t) }`; the infinite tail contributes
    /// +infinity when `pred(0)` holds.
    pub fn measure_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        if self.infinite_tail && pred(0.0) {
            return f64::INFINITY;
        }
        let terms: Vec<f64> = self
            .steps
            .iter()
            .map(|s| if pred(s.value) { s.length } else { 0.0 })
            .collect();
        pairwise_sum(&terms)
    }

    /// `sum psi(scale value) length`, with `psi(0) * inf = 0` on the tail.
    pub fn modular_scaled(&self, psi: &YoungFunction, scale: f64) -> f64 {
        if self.infinite_tail && psi.probe_value(0.0) > 0.0 {
            return f64::INFINITY;
        }
        let terms: Vec<f64> = self
            .steps
            .iter()
            .map(|s| psi.probe_value(scale * s.value) * s.length)
            .collect();
        if terms.iter().any(|t| t.is_infinite() || is_huge(*t)) {
            return f64::INFINITY;
        }
        pairwise_sum(&terms)
    }

    pub fn modular(&self, psi: &YoungFunction) -> f64 {
        self.modular_scaled(psi, 1.0)
    }
}

/// The decreasing rearrangement of `|f|`: values sorted descending (stable in
/// cell order), equal values merged into one step, and — the total mass being
/// finite on a truncation — zero cells contributing a trailing zero step.
pub fn rearrange(f: &SampledDensity) -> StepRearrangement {
    let mut pairs: Vec<(f64, f64)> = f
        .values()
        .iter()
        .zip(f.space().cells())
        .map(|(&v, c)| (v.abs(), c.weight))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut steps: Vec<Step> = Vec::new();
    for (value, weight) in pairs {
        match steps.last_mut() {
            Some(last) if last.value == value => last.length += weight,
            _ => steps.push(Step {
                value,
                length: weight,
            }),
        }
    }
    StepRearrangement {
        steps,
        infinite_tail: false,
    }
}

/// Result of a gauge-norm computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReport {
    /// The norm value.
    pub value: f64,
    /// The modular evaluated at the reported norm (at the optimal scale, for
    /// the Amemiya form).
    pub modular_at_norm: f64,
    /// Modular evaluations spent.
    pub iterations: u64,
    /// Final bracket of the solver.
    pub bracket: (f64, f64),
}

impl NormReport {
    fn zero() -> Self {
        Self {
            value: 0.0,
            modular_at_norm: 0.0,
            iterations: 0,
            bracket: (0.0, 0.0),
        }
    }
}

/// Relative tolerance of the Luxemburg bisection.
pub const NORM_REL_TOL: f64 = 1e-10;
/// Hard caps of the scale bracket.
pub const BRACKET_CAP: (f64, f64) = (1e-30, 1e30);

/// Tunable knobs of the gauge bisection.
#[derive(Debug, Clone, Copy)]
pub struct GaugeOptions {
    pub rel_tol: f64,
    pub bracket_cap: f64,
}

impl Default for GaugeOptions {
    fn default() -> Self {
        Self {
            rel_tol: NORM_REL_TOL,
            bracket_cap: BRACKET_CAP.1,
        }
    }
}

/// Solve `inf { lambda > 0 : modular_at(lambda) <= 1 }` for a map that is
/// nonincreasing in `lambda`. The feasible endpoint is returned, so the
/// modular at the reported norm is `<= 1`.
pub(crate) fn gauge_norm(modular_at: &dyn Fn(f64) -> f64) -> Result<NormReport> {
    gauge_norm_opt(modular_at, GaugeOptions::default())
}

pub(crate) fn gauge_norm_opt(
    modular_at: &dyn Fn(f64) -> f64,
    opts: GaugeOptions,
) -> Result<NormReport> {
    let (cap_lo, cap_hi) = (1.0 / opts.bracket_cap, opts.bracket_cap);
    let mut iterations = 0u64;
    let mut eval = |lam: f64| {
        iterations += 1;
        modular_at(lam)
    };
    // grow until feasible
    let mut hi = 1.0;
    let mut m_hi = eval(hi);
    while !(m_hi <= 1.0) {
        hi *= 10.0;
        if hi > cap_hi {
            return Err(Error::OutsideSpace { lo: cap_lo, hi: cap_hi });
        }
        m_hi = eval(hi);
    }
    // shrink until infeasible
    let mut lo = hi / 10.0;
    loop {
        if lo < cap_lo {
            // feasible all the way down: the gauge is 0 to working precision
            return Ok(NormReport {
                value: 0.0,
                modular_at_norm: m_hi,
                iterations,
                bracket: (0.0, hi),
            });
        }
        let m = eval(lo);
        if m <= 1.0 {
            hi = lo;
            m_hi = m;
            lo /= 10.0;
        } else {
            break;
        }
    }
    let bracket0 = (lo, hi);
    while hi - lo > opts.rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let m = eval(mid);
        if m <= 1.0 {
            hi = mid;
            m_hi = m;
        } else {
            lo = mid;
        }
    }
    debug_assert!(m_hi <= 1.0 + 1e-9);
    Ok(NormReport {
        value: hi,
        modular_at_norm: m_hi,
        iterations,
        bracket: bracket0,
    })
}

/// Luxemburg norm `inf { lambda > 0 : modular(f / lambda) <= 1 }`.
///
/// Errors with [`Error::OutsideSpace`] when the modular stays above 1 for
/// every scale in the bracket — `f` lies outside `L^psi` at this truncation.
pub fn luxemburg_norm(f: &SampledDensity, psi: &YoungFunction) -> Result<NormReport> {
    luxemburg_norm_opt(f, psi, GaugeOptions::default())
}

/// [`luxemburg_norm`] with explicit solver options.
pub fn luxemburg_norm_opt(
    f: &SampledDensity,
    psi: &YoungFunction,
    opts: GaugeOptions,
) -> Result<NormReport> {
    if f.is_zero() {
        return Ok(NormReport::zero());
    }
    gauge_norm_opt(&|lam| f.modular_scaled(psi, 1.0 / lam), opts)
}

/// Luxemburg norm of a step rearrangement with respect to `dt`.
pub fn luxemburg_norm_steps(r: &StepRearrangement, psi: &YoungFunction) -> Result<NormReport> {
    if r.steps().iter().all(|s| s.value == 0.0) {
        return Ok(NormReport::zero());
    }
    gauge_norm(&|lam| r.modular_scaled(psi, 1.0 / lam))
}

/// Range of the Amemiya scale search.
pub const AMEMIYA_K_RANGE: (f64, f64) = (1e-8, 1e8);

/// Orlicz norm in the Amemiya form `inf_{k>0} (1 + modular(k f)) / k`.
///
/// The infimum over one scalar replaces the sup over the dual ball; the `k`
/// search runs over `AMEMIYA_K_RANGE` on a log scale, so limit cases that are
/// attained only as `k -> inf` (such as `psi(t) = t`) are returned at the
/// bracket cap, within 1e-6.
pub fn amemiya_norm(f: &SampledDensity, psi: &YoungFunction) -> Result<NormReport> {
    if f.is_zero() {
        return Ok(NormReport::zero());
    }
    let objective = |k: f64| (1.0 + f.modular_scaled(psi, k)) / k;
    let (k_lo, mut k_hi) = AMEMIYA_K_RANGE;
    // the modular is nondecreasing in k, so the infinite region is an upper
    // tail; shrink onto the finite part before the golden section
    while !objective(k_hi).is_finite() {
        k_hi /= 2.0;
        if k_hi <= k_lo {
            return Err(Error::OutsideSpace { lo: k_lo, hi: AMEMIYA_K_RANGE.1 });
        }
    }
    let (t, value) = golden_section(&|t: f64| objective(t.exp()), k_lo.ln(), k_hi.ln(), 1e-12);
    let k = t.exp();
    Ok(NormReport {
        value,
        modular_at_norm: f.modular_scaled(psi, k),
        iterations: 0,
        bracket: (k_lo, k_hi),
    })
}

/// Numerical Hoelder pairing report: the duality bound
/// `int |f g| dmu <= 2 ||f||_psi ||g||_phi` with `phi` complementary to `psi`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolderReport {
    pub pairing: f64,
    pub f_norm: f64,
    pub g_norm: f64,
    pub bound: f64,
    pub within_bound: bool,
}

pub fn holder_pairing(
    f: &SampledDensity,
    g: &SampledDensity,
    psi: &YoungFunction,
) -> Result<HolderReport> {
    if !f.same_space(g) {
        return Err(Error::SpaceMismatch);
    }
    let prod = f.zip_map(g, |a, b| (a * b).abs())?;
    let pairing = prod.weighted_sum(|v| v);
    let phi = psi.complementary();
    let f_norm = luxemburg_norm(f, psi)?.value;
    let g_norm = luxemburg_norm(g, &phi)?.value;
    let bound = 2.0 * f_norm * g_norm;
    Ok(HolderReport {
        pairing,
        f_norm,
        g_norm,
        bound,
        within_bound: pairing <= bound * (1.0 + 1e-12) + 1e-300,
    })
}

/// One entry of the embedding chain report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainNorm {
    pub space: String,
    pub value: f64,
}

/// Norms of one density along `Linf -> Lexp -> L^p -> LlogL -> L1` on a
/// probability space, with the observed ratios between neighbours. The chain
/// carries observed ratios only; no claim is made about universal embedding
/// constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub norms: Vec<ChainNorm>,
    pub ratios: Vec<f64>,
    /// Each norm is finite whenever the one to its left is.
    pub finiteness_propagates: bool,
}

pub fn embedding_report(f: &SampledDensity, p_values: &[f64]) -> Result<EmbeddingReport> {
    if !f.space().is_probability() {
        return Err(Error::Domain(format!(
            "embedding chain needs a probability space, total mass = {}",
            f.space().total_mass()
        )));
    }
    let mut norms = vec![ChainNorm {
        space: "Linf".into(),
        value: f.sup_norm(),
    }];
    let lexp = luxemburg_norm(f, &crate::young::catalog::phi_exp()).map(|r| r.value);
    norms.push(ChainNorm {
        space: "Lexp".into(),
        value: lexp.unwrap_or(f64::INFINITY),
    });
    for &p in p_values {
        norms.push(ChainNorm {
            space: format!("L{p}"),
            value: f.p_norm(p),
        });
    }
    let llogl = luxemburg_norm(f, &crate::young::catalog::l_log_l()).map(|r| r.value);
    norms.push(ChainNorm {
        space: "LlogL".into(),
        value: llogl.unwrap_or(f64::INFINITY),
    });
    norms.push(ChainNorm {
        space: "L1".into(),
        value: f.l1_norm(),
    });
    let mut propagates = true;
    for w in norms.windows(2) {
        if w[0].value.is_finite() && !w[1].value.is_finite() {
            propagates = false;
        }
    }
    let ratios = norms
        .windows(2)
        .map(|w| w[1].value / w[0].value)
        .collect();
    Ok(EmbeddingReport {
        norms,
        ratios,
        finiteness_propagates: propagates,
    })
}

/// Common refinement of two step functions viewed on `[0, inf)` (each is 0
/// beyond its listed steps). Returns `(g value, w value, segment length)`
/// over the span where at least one is positive-valued; segments beyond both
/// supports carry no mass for any of the piecewise products built on this.
pub(crate) fn refine_pair(g: &StepRearrangement, w: &StepRearrangement) -> Vec<(f64, f64, f64)> {
    let g_len = g.finite_length();
    let w_len = w.finite_length();
    let span = g_len.max(w_len);
    let mut segments = Vec::new();
    let (mut gi, mut wi) = (0usize, 0usize);
    let (mut g_end, mut w_end) = (
        g.steps().first().map_or(0.0, |s| s.length),
        w.steps().first().map_or(0.0, |s| s.length),
    );
    let mut pos = 0.0;
    while pos < span {
        let g_val = if gi < g.steps().len() { g.steps()[gi].value } else { 0.0 };
        let w_val = if wi < w.steps().len() { w.steps()[wi].value } else { 0.0 };
        let next_g = if gi < g.steps().len() { g_end } else { span };
        let next_w = if wi < w.steps().len() { w_end } else { span };
        let next = next_g.min(next_w).min(span);
        if next > pos {
            segments.push((g_val, w_val, next - pos));
        }
        if next >= next_g && gi < g.steps().len() {
            gi += 1;
            if gi < g.steps().len() {
                g_end += g.steps()[gi].length;
            }
        }
        if next >= next_w && wi < w.steps().len() {
            wi += 1;
            if wi < w.steps().len() {
                w_end += w.steps()[wi].length;
            }
        }
        if next <= pos {
            break; // numerical safety: no progress
        }
        pos = next;
    }
    segments
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::catalog;
    use rand::{Rng, SeedableRng};

    fn plain_power(p: f64) -> YoungFunction {
        YoungFunction::with_closed_form(
            format!("t^{p}"),
            move |u| if u == 0.0 { 0.0 } else { p * u.powf(p - 1.0) },
            move |t| t.powf(p),
        )
    }

    #[test]
    fn rearrange_examples() {
        let space = MeasureSpace::unit(3);
        let f = SampledDensity::new(space, vec![1.0, 2.0, 3.0]).unwrap();
        let r = rearrange(&f);
        let got: Vec<(f64, f64)> = r.steps().iter().map(|s| (s.value, s.length)).collect();
        assert_eq!(got, vec![(3.0, 1.0), (2.0, 1.0), (1.0, 1.0)]);

        let space = MeasureSpace::new(vec![("a".into(), 1.5), ("b".into(), 2.5)]).unwrap();
        let f = SampledDensity::constant(space, -4.0).unwrap();
        let r = rearrange(&f);
        assert_eq!(r.steps().len(), 1);
        assert_eq!(r.steps()[0].value, 4.0);
        assert_eq!(r.steps()[0].length, 4.0);
    }

    #[test]
    fn rearrangement_preserves_modular() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let cells: Vec<(String, f64)> = (0..100)
            .map(|i| (i.to_string(), rng.gen_range(0.1..2.0)))
            .collect();
        let space = MeasureSpace::new(cells).unwrap();
        let f = SampledDensity::new(
            space.clone(),
            (0..100).map(|_| rng.gen_range(-3.0..3.0)).collect(),
        )
        .unwrap();
        let r = rearrange(&f);
        for psi in [catalog::cosh1(), catalog::x_log1p(), catalog::l_log_l()] {
            let a = f.modular(&psi);
            let b = r.modular(&psi);
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{}: {a} vs {b}", psi.name());
        }
    }

    #[test]
    fn modular_examples() {
        let space = MeasureSpace::uniform_probability(4);
        let zero = SampledDensity::constant(space.clone(), 0.0).unwrap();
        assert_eq!(zero.modular(&catalog::cosh1()), 0.0);

        let f = SampledDensity::new(space.clone(), vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        let identity = catalog::power(1.0).unwrap();
        assert!((f.modular(&identity) - f.l1_norm()).abs() < 1e-15);

        let one = SampledDensity::constant(space, 1.0).unwrap();
        let expected = 1.0f64.cosh() - 1.0; // 0.54308...
        assert!((one.modular(&catalog::cosh1()) - expected).abs() < 1e-12);
        assert!((expected - 0.54308).abs() < 1e-5);
    }

    #[test]
    fn luxemburg_norm_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let space = MeasureSpace::new(
            (0..40).map(|i| (i.to_string(), rng.gen_range(0.01..1.0))).collect(),
        )
        .unwrap();
        let f = SampledDensity::new(
            space.clone(),
            (0..40).map(|_| rng.gen_range(-5.0..5.0)).collect(),
        )
        .unwrap();

        let r = luxemburg_norm(&f, &catalog::power(1.0).unwrap()).unwrap();
        assert!((r.value - f.l1_norm()).abs() <= 1e-8 * f.l1_norm());
        assert!(r.modular_at_norm <= 1.0 + 1e-9);

        let r = luxemburg_norm(&f, &plain_power(2.0)).unwrap();
        assert!((r.value - f.p_norm(2.0)).abs() <= 1e-8 * f.p_norm(2.0));

        // f constant c on a probability space: lambda = c / arccosh(2)
        let prob = MeasureSpace::uniform_probability(8);
        let c = 2.7;
        let g = SampledDensity::constant(prob, c).unwrap();
        let r = luxemburg_norm(&g, &catalog::cosh1()).unwrap();
        let expected = c / 2.0f64.acosh();
        assert!((r.value - expected).abs() <= 1e-8 * expected, "{} vs {expected}", r.value);
    }

    #[test]
    fn luxemburg_of_zero_is_zero() {
        let f = SampledDensity::constant(MeasureSpace::unit(3), 0.0).unwrap();
        assert_eq!(luxemburg_norm(&f, &catalog::cosh1()).unwrap().value, 0.0);
        assert_eq!(amemiya_norm(&f, &catalog::cosh1()).unwrap().value, 0.0);
    }

    #[test]
    fn outside_space_is_reported() {
        // degenerate gauge: infinite for any positive argument; no finite
        // scale can bring a nonzero f inside
        let bad = YoungFunction::with_closed_form(
            "degenerate",
            |_| f64::INFINITY,
            |s| if s == 0.0 { 0.0 } else { f64::INFINITY },
        );
        let f = SampledDensity::constant(MeasureSpace::unit(2), 1.0).unwrap();
        match luxemburg_norm(&f, &bad) {
            Err(Error::OutsideSpace { .. }) => (),
            other => panic!("expected OutsideSpace, got {other:?}"),
        }
    }

    #[test]
    fn sup_gauge_is_sup_norm() {
        let space = MeasureSpace::unit(4);
        let f = SampledDensity::new(space, vec![0.5, -2.5, 1.0, 2.0]).unwrap();
        let r = luxemburg_norm(&f, &catalog::linf_conjugate()).unwrap();
        assert!((r.value - 2.5).abs() <= 1e-8 * 2.5);
    }

    #[test]
    fn amemiya_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let space = MeasureSpace::uniform_probability(30);
        let f = SampledDensity::new(
            space.clone(),
            (0..30).map(|_| rng.gen_range(-4.0..4.0)).collect(),
        )
        .unwrap();

        // identity gauge: the infimum is approached at the bracket cap
        let r = amemiya_norm(&f, &catalog::power(1.0).unwrap()).unwrap();
        assert!((r.value - f.l1_norm()).abs() <= 1e-6, "{} vs {}", r.value, f.l1_norm());

        // two-sided comparison with the Luxemburg norm
        let psi = catalog::x_log1p();
        for _ in 0..100 {
            let g = SampledDensity::new(
                space.clone(),
                (0..30).map(|_| rng.gen_range(-10.0..10.0)).collect(),
            )
            .unwrap();
            if g.is_zero() {
                continue;
            }
            let lux = luxemburg_norm(&g, &psi).unwrap().value;
            let am = amemiya_norm(&g, &psi).unwrap().value;
            assert!(
                lux <= am * (1.0 + 1e-7) && am <= 2.0 * lux * (1.0 + 1e-7),
                "lux={lux} amemiya={am}"
            );
        }
    }

    #[test]
    fn holder_pairing_examples() {
        let space = MeasureSpace::uniform_probability(6);
        let f = SampledDensity::constant(space.clone(), 1.0).unwrap();
        let zero = SampledDensity::constant(space.clone(), 0.0).unwrap();
        let r = holder_pairing(&f, &zero, &catalog::cosh1()).unwrap();
        assert_eq!(r.pairing, 0.0);
        assert!(r.within_bound);

        let r = holder_pairing(&f, &f, &plain_power(2.0)).unwrap();
        assert!((r.pairing - 1.0).abs() < 1e-12);
        assert!(r.within_bound, "{r:?}");

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let a = SampledDensity::new(
                space.clone(),
                (0..6).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            )
            .unwrap();
            let b = SampledDensity::new(
                space.clone(),
                (0..6).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            )
            .unwrap();
            let r = holder_pairing(&a, &b, &catalog::cosh1()).unwrap();
            assert!(r.within_bound, "{r:?}");
        }

        let other = MeasureSpace::uniform_probability(5);
        let g = SampledDensity::constant(other, 1.0).unwrap();
        assert!(matches!(
            holder_pairing(&f, &g, &catalog::cosh1()),
            Err(Error::SpaceMismatch)
        ));
    }

    #[test]
    fn embedding_chain_on_constant() {
        let space = MeasureSpace::uniform_probability(10);
        let f = SampledDensity::constant(space, 1.0).unwrap();
        let rep = embedding_report(&f, &[2.0]).unwrap();
        assert!(rep.finiteness_propagates);
        assert!(rep.norms.iter().all(|n| n.value.is_finite() && n.value > 0.0));
        let l1 = rep.norms.last().unwrap();
        assert_eq!(l1.space, "L1");
        assert!((l1.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_requires_probability_space() {
        let f = SampledDensity::constant(MeasureSpace::unit(4), 1.0).unwrap();
        assert!(embedding_report(&f, &[2.0]).is_err());
    }

    #[test]
    fn step_validation_and_tail() {
        assert!(StepRearrangement::new(vec![(1.0, 1.0), (2.0, 1.0)], false).is_err());
        assert!(StepRearrangement::new(vec![(1.0, 0.0)], false).is_err());
        assert!(StepRearrangement::new(vec![(-1.0, 1.0)], false).is_err());

        let r = StepRearrangement::new(vec![(2.0, 1.0), (0.0, 3.0)], true).unwrap();
        assert_eq!(r.steps().len(), 1); // explicit zero step folds into the tail
        assert!(r.total_length().is_infinite());
        assert_eq!(r.measure_where(|v| v <= 1.0), f64::INFINITY);
        assert_eq!(r.measure_where(|v| v > 1.0), 1.0);
        // psi(0) * inf = 0
        assert!(r.modular(&catalog::x_log1p()).is_finite());
    }

    #[test]
    fn refine_pair_covers_both_supports() {
        let g = StepRearrangement::new(vec![(3.0, 0.5), (1.0, 1.0)], false).unwrap();
        let w = StepRearrangement::new(vec![(2.0, 1.0), (0.5, 1.0)], false).unwrap();
        let segs = refine_pair(&g, &w);
        let total: f64 = segs.iter().map(|s| s.2).sum();
        assert!((total - 2.0).abs() < 1e-12);
        // mass of the product measure where g > 0
        let m: f64 = segs.iter().filter(|s| s.0 > 0.0).map(|s| s.1 * s.2).sum();
        // [0,0.5): g=3,w=2; [0.5,1.5): g=1,w=2 then 0.5 — g support is [0,1.5)
        let expected = 2.0 * 0.5 + 2.0 * 0.5 + 0.5 * 0.5;
        assert!((m - expected).abs() < 1e-12);
    }
}
