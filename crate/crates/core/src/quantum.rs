//! The noncommutative layer at desk scale: singular values of finite
//! matrices, sequence-space Orlicz norms, von Neumann entropy and its
//! regularization, spectral-projection trace criteria, weighted Orlicz
//! norms, and the moment transform with its regularity probe.
//!
//! Two representations carry the noncommutative data: finite Hermitian
//! matrices (exact linear algebra) and [`StepRearrangement`]s standing for
//! the singular-value function of operators affiliated to a semifinite
//! algebra. Every formula here factors through the singular-value data.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::classical::{gauge_norm, refine_pair, NormReport, StepRearrangement};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::numerics::{is_huge, pairwise_sum};
use crate::young::{catalog, YoungFunction};

pub type C64 = Complex<f64>;

/// Tolerated Hermitian defect (max entry of `|A - A*|`).
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerated unitarity defect of the eigenvector matrix.
pub const UNITARY_TOL: f64 = 1e-10;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are clamped to 0; anything more
/// negative is a genuine negativity.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// A finite-dimensional self-adjoint operator with cached eigendata
/// (eigenvalues descending, eigenvector columns unitary).
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: DMatrix<C64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl HermitianOperator {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let defect = (&matrix - matrix.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let eigen = matrix.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..rows).collect();
        order.sort_by(|&i, &j| eigen.eigenvalues[j].total_cmp(&eigen.eigenvalues[i]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
        let mut eigenvectors = DMatrix::zeros(rows, rows);
        for (dst, &src) in order.iter().enumerate() {
            eigenvectors.set_column(dst, &eigen.eigenvectors.column(src));
        }
        let unitary_defect = (eigenvectors.adjoint() * &eigenvectors - DMatrix::identity(rows, rows))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if unitary_defect > UNITARY_TOL {
            return Err(Error::Domain(format!(
                "eigenvector matrix unitarity defect {unitary_defect:e}"
            )));
        }
        Ok(Self {
            matrix,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Build from a dense real matrix, row major.
    pub fn from_real(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::NotSquare {
                rows: rows.len() / n.max(1),
                cols: n,
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| C64::new(rows[i * n + j], 0.0)))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|c| c.re).sum()
    }

    /// Singular values: for a self-adjoint operator these are the absolute
    /// eigenvalues in descending order.
    pub fn singular_values(&self) -> SingularSequence {
        SingularSequence::from_unsorted(self.eigenvalues.iter().map(|&l| l.abs()).collect())
    }

    /// The spectrum clamped to the positive cone; errors when an eigenvalue
    /// is more negative than the diagonalization noise allowance.
    pub fn nonnegative_spectrum(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.eigenvalues.len());
        for &l in &self.eigenvalues {
            if l < -EIGEN_CLAMP {
                return Err(Error::NegativeSpectrum(l));
            }
            out.push(l.max(0.0));
        }
        Ok(out)
    }

    /// The operator `g(A)` reconstructed as `U g(Lambda) U*`.
    pub fn apply(&self, g: impl Fn(f64) -> f64) -> DMatrix<C64> {
        let d = DMatrix::from_fn(self.dimension(), self.dimension(), |i, j| {
            if i == j {
                C64::new(g(self.eigenvalues[i]), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    /// Trace of `g(A)` along the matrix-function route: reconstruct the full
    /// matrix and sum the diagonal. An oracle counterpart sums `g` over the
    /// singular data instead.
    pub fn trace_of_function(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.apply(g).diagonal().iter().map(|c| c.re).sum()
    }

    /// The singular-value step function: `mu_t = a_(n+1)` on `[n, n+1)`,
    /// equal values merged. Finite-dimensional, so no infinite tail.
    pub fn to_step_rearrangement(&self) -> StepRearrangement {
        self.singular_values().to_steps()
    }
}

/// A nonincreasing, nonnegative, finite list of singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSequence(Vec<f64>);

impl SingularSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values
            .iter()
            .any(|v| !v.is_finite() || *v < 0.0)
            || values.windows(2).any(|w| w[1] > w[0])
        {
            return Err(Error::BadSteps);
        }
        Ok(Self(values))
    }

    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1(&self) -> f64 {
        pairwise_sum(&self.0)
    }

    /// Unit-length steps, equal values merged.
    pub fn to_steps(&self) -> StepRearrangement {
        let mut steps: Vec<(f64, f64)> = Vec::new();
        for &v in &self.0 {
            match steps.last_mut() {
                Some(last) if last.0 == v => last.1 += 1.0,
                _ => steps.push((v, 1.0)),
            }
        }
        StepRearrangement::new(steps, false).expect("sorted values form valid steps")
    }
}

/// Singular values of a general square matrix: the eigenvalues of
/// `(b* b)^(1/2)`, sorted descending.
pub fn singular_values(b: &DMatrix<C64>) -> Result<SingularSequence> {
    let (rows, cols) = b.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let gram = b.adjoint() * b;
    let eigen = gram.symmetric_eigen();
    Ok(SingularSequence::from_unsorted(
        eigen.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect(),
    ))
}

/// Luxemburg norm of a singular sequence in the Orlicz sequence space over
/// counting measure: `inf { eps > 0 : sum phi(a_n / eps) <= 1 }`.
pub fn sequence_orlicz_norm(a: &SingularSequence, phi: &YoungFunction) -> Result<NormReport> {
    crate::classical::luxemburg_norm_steps(&a.to_steps(), phi)
}

fn density_matrix_spectrum(rho: &HermitianOperator) -> Result<Vec<f64>> {
    let spectrum = rho
        .nonnegative_spectrum()
        .map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    let trace = pairwise_sum(&spectrum);
    if (trace - 1.0).abs() > 1e-9 {
        return Err(Error::NotDensityMatrix(format!("trace = {trace}, expected 1")));
    }
    Ok(spectrum)
}

/// Von Neumann entropy `-Tr rho log rho` of a density matrix
/// (`rho >= 0`, unit trace), with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &HermitianOperator) -> Result<f64> {
    let spectrum = density_matrix_spectrum(rho)?;
    let terms: Vec<f64> = spectrum
        .iter()
        .map(|&l| if l > 0.0 { -l * l.ln() } else { 0.0 })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// Regularized entropy `-Tr rho log(rho + eps)`: finite for every positive
/// `eps`, below the von Neumann entropy, and converging to it as `eps -> 0`.
pub fn regularized_entropy(rho: &HermitianOperator, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    let spectrum = rho.nonnegative_spectrum()?;
    let terms: Vec<f64> = spectrum.iter().map(|&l| -l * (l + eps).ln()).collect();
    Ok(pairwise_sum(&terms))
}

/// Report of the spectral trace criteria for the existence of the entropy
/// `tau(|f log f|)` of a positive element given by its singular data.
///
/// The forward direction: a finite Zygmund modular together with a finite
/// trace of the spectral projection onto `[0, 1]` forces a finite entropy.
/// The converse: a finite entropy forces the modular finite and the trace of
/// the projection onto any open subinterval of (0, 1) finite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LlogLReport {
    pub llogl_modular: ExtReal,
    /// Trace of the spectral projection onto values in [0, 1] (the infinite
    /// tail at value 0 makes this infinite).
    pub chi_unit_trace: ExtReal,
    /// `tau(|f log f|)` as a sum over steps, with `0 log 0 = 0`.
    pub f_log_f_trace: ExtReal,
    pub interval: (f64, f64),
    /// Trace of the spectral projection onto the open subinterval.
    pub chi_interval_trace: ExtReal,
    pub forward_hypothesis: bool,
    pub forward_conclusion: bool,
    pub forward_consistent: bool,
    pub converse_hypothesis: bool,
    pub converse_conclusion: bool,
    pub converse_consistent: bool,
}

/// Evaluate the criteria on singular data. `interval` is an open subinterval
/// of (0, 1) used for the converse direction.
pub fn llogl_membership(f: &StepRearrangement, interval: (f64, f64)) -> Result<LlogLReport> {
    let (a, b) = interval;
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(Error::Domain(format!(
            "interval ({a}, {b}) is not an open subinterval of [0, 1]"
        )));
    }
    let llogl = f.modular(&catalog::l_log_l());
    let chi_unit = f.measure_where(|v| v <= 1.0);
    let chi_interval = f.measure_where(|v| v > a && v < b);
    let terms: Vec<f64> = f
        .steps()
        .iter()
        .map(|s| {
            if s.value == 0.0 {
                0.0
            } else {
                (s.value * s.value.ln()).abs() * s.length
            }
        })
        .collect();
    let f_log_f = if terms.iter().any(|t| is_huge(*t)) {
        f64::INFINITY
    } else {
        pairwise_sum(&terms)
    };
    let forward_hypothesis = llogl.is_finite() && chi_unit.is_finite();
    let forward_conclusion = f_log_f.is_finite();
    let converse_hypothesis = f_log_f.is_finite();
    let converse_conclusion = llogl.is_finite() && chi_interval.is_finite();
    Ok(LlogLReport {
        llogl_modular: ExtReal(llogl),
        chi_unit_trace: ExtReal(chi_unit),
        f_log_f_trace: ExtReal(f_log_f),
        interval,
        chi_interval_trace: ExtReal(chi_interval),
        forward_hypothesis,
        forward_conclusion,
        forward_consistent: !forward_hypothesis || forward_conclusion,
        converse_hypothesis,
        converse_conclusion,
        converse_consistent: !converse_hypothesis || converse_conclusion,
    })
}

/// The criteria applied to a positive finite-dimensional operator through its
/// spectral steps.
pub fn llogl_membership_operator(
    f: &HermitianOperator,
    interval: (f64, f64),
) -> Result<LlogLReport> {
    let spectrum = f.nonnegative_spectrum()?;
    let steps = SingularSequence::from_unsorted(spectrum).to_steps();
    llogl_membership(&steps, interval)
}

/// Per-term inclusion check `lambda_i log(lambda_i + 1) <= K lambda_i` with
/// `K = log(lambda_1 + 1)`: summable spectra lie in the `x log(x+1)` space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InclusionReport {
    pub k: f64,
    pub per_term_ok: bool,
    pub l1: f64,
    pub llog1_modular: f64,
    pub modular_bound: f64,
    pub passed: bool,
}

pub fn l1_subset_llog1_check(a: &SingularSequence) -> InclusionReport {
    let k = a.values().first().copied().unwrap_or(0.0).ln_1p();
    let per_term_ok = a
        .values()
        .iter()
        .all(|&l| l * (l + 1.0).ln() <= k * l + 1e-15 * l.max(1.0));
    let l1 = a.l1();
    let modular = a.to_steps().modular(&catalog::x_log1p());
    InclusionReport {
        k,
        per_term_ok,
        l1,
        llog1_modular: modular,
        modular_bound: k * l1,
        passed: per_term_ok && modular.is_finite(),
    }
}

/// A weighted noncommutative function space: the measure `mu_t(x) dt` given
/// by the singular function of a positive trace-class weight, together with
/// the Young's function of the gauge.
#[derive(Debug, Clone)]
pub struct WeightedSpace {
    weight: StepRearrangement,
    psi: YoungFunction,
}

impl WeightedSpace {
    /// The weight must induce a finite measure: `int mu_t(x) dt < inf`.
    pub fn new(weight: StepRearrangement, psi: YoungFunction) -> Result<Self> {
        let mass = weight_mass(&weight);
        if !mass.is_finite() {
            return Err(Error::Domain(format!(
                "weight measure must be finite, got {mass}"
            )));
        }
        Ok(Self { weight, psi })
    }

    pub fn weight(&self) -> &StepRearrangement {
        &self.weight
    }

    pub fn young(&self) -> &YoungFunction {
        &self.psi
    }

    pub fn mass(&self) -> f64 {
        weight_mass(&self.weight)
    }
}

fn weight_mass(weight: &StepRearrangement) -> f64 {
    let terms: Vec<f64> = weight.steps().iter().map(|s| s.value * s.length).collect();
    if terms.iter().any(|t| is_huge(*t)) {
        return f64::INFINITY;
    }
    pairwise_sum(&terms)
}

fn weighted_modular(
    segments: &[(f64, f64, f64)],
    psi: &YoungFunction,
    scale: f64,
) -> f64 {
    let terms: Vec<f64> = segments
        .iter()
        .map(|&(g, w, len)| {
            if w == 0.0 {
                0.0
            } else {
                psi.probe_value(scale * g) * w * len
            }
        })
        .collect();
    if terms.iter().any(|t| t.is_infinite() || is_huge(*t)) {
        return f64::INFINITY;
    }
    pairwise_sum(&terms)
}

/// Luxemburg norm of a decreasing step function with respect to the weighted
/// measure `mu_t(x) dt`, via exact piecewise products on the common
/// refinement of the two step functions.
pub fn weighted_luxemburg_norm(
    g: &StepRearrangement,
    space: &WeightedSpace,
) -> Result<NormReport> {
    let segments = refine_pair(g, space.weight());
    if segments.iter().all(|&(gv, w, _)| gv == 0.0 || w == 0.0) {
        return Ok(NormReport {
            value: 0.0,
            modular_at_norm: 0.0,
            iterations: 0,
            bracket: (0.0, 0.0),
        });
    }
    gauge_norm(&|lam| weighted_modular(&segments, space.young(), 1.0 / lam))
}

/// The weighted moment transform `sum exp(t g) mu(x)` as an exact piecewise
/// sum over the common refinement. Infinity is a value, not an error.
pub fn moment_transform(g: &StepRearrangement, x_weight: &StepRearrangement, t: f64) -> f64 {
    let segments = refine_pair(g, x_weight);
    let terms: Vec<f64> = segments
        .iter()
        .map(|&(gv, w, len)| {
            if w == 0.0 || len == 0.0 {
                0.0
            } else {
                (t * gv).exp() * w * len
            }
        })
        .collect();
    if terms.iter().any(|t| t.is_infinite() || is_huge(*t)) {
        return f64::INFINITY;
    }
    pairwise_sum(&terms)
}

/// The t-ladder of the regularity probe.
pub const REGULARITY_T_LADDER: [f64; 4] = [1e-3, 1e-2, 1e-1, 1.0];

/// Moment-transform values at one `t` across a truncation sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformSweep {
    pub t: f64,
    pub plus: Vec<ExtReal>,
    pub minus: Vec<ExtReal>,
    pub plus_stable: bool,
    pub minus_stable: bool,
}

/// Regularity verdict for a family of `(g, weight)` truncations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityReport {
    pub sweeps: Vec<TransformSweep>,
    /// The transform is finite and stabilizes at +t and -t for some ladder t.
    pub regular: bool,
    /// Weighted cosh-1 gauge norms across the sweep.
    pub cosh_norms: Vec<ExtReal>,
    /// Membership in the weighted cosh-1 space: norms finite and stabilizing.
    pub member: bool,
    /// The two probes agree.
    pub agree: bool,
}

fn stabilizes(values: &[f64]) -> bool {
    if values.iter().any(|v| !v.is_finite()) {
        return false;
    }
    match values.len() {
        0 => false,
        1 => true,
        n => {
            let (a, b) = (values[n - 2], values[n - 1]);
            (b - a).abs() <= 0.05 * b.abs().max(1e-12)
        }
    }
}

/// Probe whether 0 lies in the interior of the transform's domain, on a
/// fixed finite t-ladder across a truncation sweep (single-element families
/// reduce to "finite at +t and -t at this truncation"). The verdict is
/// cross-checked against membership in the weighted cosh-1 space.
pub fn regularity_probe(family: &[(StepRearrangement, StepRearrangement)]) -> Result<RegularityReport> {
    if family.is_empty() {
        return Err(Error::Domain("regularity probe needs at least one truncation".into()));
    }
    let mut sweeps = Vec::new();
    let mut regular = false;
    for &t in &REGULARITY_T_LADDER {
        let plus: Vec<f64> = family.iter().map(|(g, w)| moment_transform(g, w, t)).collect();
        let minus: Vec<f64> = family.iter().map(|(g, w)| moment_transform(g, w, -t)).collect();
        let plus_stable = stabilizes(&plus);
        let minus_stable = stabilizes(&minus);
        if plus_stable && minus_stable {
            regular = true;
        }
        sweeps.push(TransformSweep {
            t,
            plus: plus.into_iter().map(ExtReal).collect(),
            minus: minus.into_iter().map(ExtReal).collect(),
            plus_stable,
            minus_stable,
        });
    }
    let mut cosh_norms = Vec::new();
    for (g, w) in family {
        let space = WeightedSpace::new(w.clone(), catalog::cosh1())?;
        let norm = match weighted_luxemburg_norm(g, &space) {
            Ok(r) => r.value,
            Err(Error::OutsideSpace { .. }) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        cosh_norms.push(norm);
    }
    let member = stabilizes(&cosh_norms);
    Ok(RegularityReport {
        sweeps,
        regular,
        cosh_norms: cosh_norms.into_iter().map(ExtReal).collect(),
        member,
        agree: regular == member,
    })
}
