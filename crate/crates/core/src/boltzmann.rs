//! Desk-scale kinetic dynamics exhibiting the H-theorem: the Carleman
//! two-velocity and Broadwell four-velocity caricatures, integrated with RK4
//! and instrumented with the entropy and membership diagnostics.

use serde::{Deserialize, Serialize};

use crate::classical::SampledDensity;
use crate::entropy::{
    continuous_entropy_with, h_epsilon, membership_check, truncated_entropy, HEpsilon,
    TruncatedEntropy,
};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::numerics::pairwise_sum;

/// The discrete-velocity models behind the shared interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KineticModel {
    /// Two velocities: `du/dt = v^2 - u^2`, `dv/dt = u^2 - v^2`.
    Carleman,
    /// Four velocities with the pair collision `(1,2) <-> (3,4)`.
    Broadwell,
}

impl KineticModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "carleman" => Ok(Self::Carleman),
            "broadwell" => Ok(Self::Broadwell),
            _ => Err(Error::Parse(format!("unknown model {s:?}"))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::Carleman => "carleman",
            Self::Broadwell => "broadwell",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Carleman => 2,
            Self::Broadwell => 4,
        }
    }

    fn rhs(&self, f: &[f64], out: &mut [f64]) {
        match self {
            Self::Carleman => {
                let (u, v) = (f[0], f[1]);
                out[0] = v * v - u * u;
                out[1] = u * u - v * v;
            }
            Self::Broadwell => {
                let gain = f[2] * f[3] - f[0] * f[1];
                out[0] = gain;
                out[1] = gain;
                out[2] = -gain;
                out[3] = -gain;
            }
        }
    }

    pub fn invariant_names(&self) -> &'static [&'static str] {
        match self {
            Self::Carleman => &["mass"],
            Self::Broadwell => &["mass", "j12", "j34"],
        }
    }

    pub fn invariants(&self, f: &[f64]) -> Vec<f64> {
        match self {
            Self::Carleman => vec![f[0] + f[1]],
            Self::Broadwell => vec![
                f[0] + f[1] + f[2] + f[3],
                f[0] - f[1],
                f[2] - f[3],
            ],
        }
    }

    /// The detailed-balance state sharing the invariants of `f`.
    pub fn equilibrium(&self, f: &[f64]) -> Vec<f64> {
        match self {
            Self::Carleman => {
                let m = f[0] + f[1];
                vec![0.5 * m, 0.5 * m]
            }
            Self::Broadwell => {
                let m = f[0] + f[1] + f[2] + f[3];
                let a = f[0] - f[1];
                let b = f[2] - f[3];
                // n1 n2 = n3 n4 with p = n1 + n2 forced by the invariants
                let p = (m * m + a * a - b * b) / (2.0 * m);
                let q = m - p;
                vec![0.5 * (p + a), 0.5 * (p - a), 0.5 * (q + b), 0.5 * (q - b)]
            }
        }
    }

    /// Closed form of `dH/dt` at a state, nonpositive along trajectories.
    pub fn dh_dt(&self, f: &[f64]) -> f64 {
        match self {
            Self::Carleman => {
                let (u, v) = (f[0], f[1]);
                (v * v - u * u) * (u.ln() - v.ln())
            }
            Self::Broadwell => {
                let (p12, p34) = (f[0] * f[1], f[2] * f[3]);
                (p34 - p12) * (p12.ln() - p34.ln())
            }
        }
    }
}

/// State of a discrete-velocity model: strictly positive densities, one per
/// velocity, with the conserved quantities recorded at construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteKineticState {
    pub model: KineticModel,
    pub densities: Vec<f64>,
    pub time: f64,
    initial_invariants: Vec<f64>,
}

impl DiscreteKineticState {
    pub fn new(model: KineticModel, densities: Vec<f64>) -> Result<Self> {
        if densities.len() != model.dimension() {
            return Err(Error::Domain(format!(
                "{} expects {} densities, got {}",
                model.id(),
                model.dimension(),
                densities.len()
            )));
        }
        if densities.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
            return Err(Error::Domain("densities must be strictly positive".into()));
        }
        let initial_invariants = model.invariants(&densities);
        Ok(Self {
            model,
            densities,
            time: 0.0,
            initial_invariants,
        })
    }

    pub fn initial_invariants(&self) -> &[f64] {
        &self.initial_invariants
    }

    pub fn h_plus(&self) -> f64 {
        pairwise_sum(&self.densities.iter().map(|&d| d * d.ln()).collect::<Vec<_>>())
    }

    pub fn mass(&self) -> f64 {
        pairwise_sum(&self.densities)
    }
}

/// One RK4 step. A step that lands on a nonpositive density is a step-size
/// error: the caller halves `dt` and retries.
pub fn step(state: &DiscreteKineticState, dt: f64) -> Result<DiscreteKineticState> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    let model = state.model;
    let n = state.densities.len();
    let f = &state.densities;
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    model.rhs(f, &mut k1);
    for i in 0..n {
        tmp[i] = f[i] + 0.5 * dt * k1[i];
    }
    model.rhs(&tmp, &mut k2);
    for i in 0..n {
        tmp[i] = f[i] + 0.5 * dt * k2[i];
    }
    model.rhs(&tmp, &mut k3);
    for i in 0..n {
        tmp[i] = f[i] + dt * k3[i];
    }
    model.rhs(&tmp, &mut k4);
    let next: Vec<f64> = (0..n)
        .map(|i| f[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    if next.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::StepSize(dt));
    }
    Ok(DiscreteKineticState {
        model,
        densities: next,
        time: state.time + dt,
        initial_invariants: state.initial_invariants.clone(),
    })
}

/// Per-sample diagnostics along a trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub densities: Vec<f64>,
    pub h_plus: f64,
    pub mass: f64,
    pub invariants: Vec<f64>,
    pub llog1_modular: f64,
    pub dh_dt: f64,
}

/// A sampled trajectory with strictly increasing times.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub model: KineticModel,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn terminal(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory has at least the initial sample")
    }

    pub fn h_nonincreasing(&self, slack_per_unit_time: f64) -> bool {
        self.samples.windows(2).all(|w| {
            let dt = w[1].t - w[0].t;
            w[1].h_plus <= w[0].h_plus + slack_per_unit_time * dt
        })
    }

    pub fn max_invariant_drift(&self) -> f64 {
        let first = &self.samples[0].invariants;
        self.samples
            .iter()
            .flat_map(|s| {
                s.invariants
                    .iter()
                    .zip(first)
                    .map(|(a, b)| (a - b).abs())
            })
            .fold(0.0, f64::max)
    }
}

fn sample(state: &DiscreteKineticState) -> TrajectorySample {
    let llog1 = pairwise_sum(
        &state
            .densities
            .iter()
            .map(|&d| d * d.ln_1p())
            .collect::<Vec<_>>(),
    );
    TrajectorySample {
        t: state.time,
        densities: state.densities.clone(),
        h_plus: state.h_plus(),
        mass: state.mass(),
        invariants: state.model.invariants(&state.densities),
        llog1_modular: llog1,
        dh_dt: state.model.dh_dt(&state.densities),
    }
}

/// Integrate to the horizon with fixed `dt` (a shorter final step closes any
/// remainder), recording diagnostics at every step. Step-size errors
/// propagate to the caller.
pub fn evolve(state: &DiscreteKineticState, horizon: f64, dt: f64) -> Result<Trajectory> {
    if !(horizon > 0.0) {
        return Err(Error::Domain(format!("horizon must be positive, got {horizon}")));
    }
    let mut current = state.clone();
    let mut samples = vec![sample(&current)];
    let end = state.time + horizon;
    while current.time < end {
        let remaining = end - current.time;
        let h = dt.min(remaining);
        if h < 1e-15 {
            break;
        }
        current = step(&current, h)?;
        samples.push(sample(&current));
    }
    Ok(Trajectory {
        model: state.model,
        samples,
    })
}

/// [`evolve`] with positivity-guarded halving: on a step-size error the whole
/// run restarts with `dt/2`, up to `max_halvings` times.
pub fn evolve_with_halving(
    state: &DiscreteKineticState,
    horizon: f64,
    dt: f64,
    max_halvings: u32,
) -> Result<Trajectory> {
    let mut h = dt;
    for _ in 0..=max_halvings {
        match evolve(state, horizon, h) {
            Err(Error::StepSize(_)) => h *= 0.5,
            other => return other,
        }
    }
    Err(Error::StepSize(h))
}

/// Diagnostics of one static density in a functional sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub name: String,
    pub member: bool,
    pub l1: ExtReal,
    pub llog1_modular: ExtReal,
    pub llogl_modular: ExtReal,
    pub h: ExtReal,
    pub h_plus: ExtReal,
    pub jensen_lower: Option<f64>,
    pub h_eps: Vec<HEpsilon>,
    pub truncated: Vec<TruncatedEntropy>,
}

/// The "Boltzmann diagnostics" table: membership, the epsilon ladder of
/// regularized and truncated entropies, and the Jensen bound when it applies,
/// for each family member. Non-membership is flagged, never rejected.
pub fn functional_sweep(
    family: &[(String, SampledDensity)],
    eps_ladder: &[f64],
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(family.len());
    for (name, f) in family {
        let membership = membership_check(f);
        let report = continuous_entropy_with(f, eps_ladder)?;
        let h_eps = eps_ladder
            .iter()
            .map(|&e| h_epsilon(f, e))
            .collect::<Result<Vec<_>>>()?;
        let truncated = eps_ladder
            .iter()
            .map(|&e| truncated_entropy(f, e))
            .collect::<Result<Vec<_>>>()?;
        rows.push(SweepRow {
            name: name.clone(),
            member: membership.member,
            l1: membership.l1,
            llog1_modular: membership.llog1_modular,
            llogl_modular: membership.llogl_modular,
            h: ExtReal(report.h),
            h_plus: ExtReal(report.h_plus),
            jensen_lower: report.jensen_lower,
            h_eps,
            truncated,
        });
    }
    Ok(rows)
}

/// Bound constant of the membership diagnostic along a trajectory: the
/// modular stays below `initial modular + K mass` with `K = log(1 + max f0)`.
pub fn llog1_trajectory_bound(initial: &TrajectorySample) -> f64 {
    let max0 = initial.densities.iter().fold(0.0f64, |m, &d| m.max(d));
    initial.llog1_modular + max0.ln_1p() * initial.mass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::MeasureSpace;
    use crate::fixtures;

    fn carleman(u: f64, v: f64) -> DiscreteKineticState {
        DiscreteKineticState::new(KineticModel::Carleman, vec![u, v]).unwrap()
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let mut state = carleman(1.0, 1.0);
        for _ in 0..100 {
            state = step(&state, 1e-3).unwrap();
        }
        assert!((state.densities[0] - 1.0).abs() < 1e-14);
        assert!((state.densities[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mass_is_conserved_over_many_steps() {
        let mut state = carleman(1.5, 0.5);
        let m0 = state.mass();
        for _ in 0..10_000 {
            state = step(&state, 1e-3).unwrap();
        }
        assert!((state.mass() - m0).abs() < 1e-12);
    }

    #[test]
    fn carleman_converges_to_equilibrium() {
        let state = carleman(1.5, 0.5);
        let traj = evolve(&state, 20.0, 1e-3).unwrap();
        let terminal = traj.terminal();
        assert!((terminal.densities[0] - 1.0).abs() < 1e-8);
        assert!((terminal.densities[1] - 1.0).abs() < 1e-8);
        // H decreases to the equilibrium value 0 = 2 (1 log 1)
        assert!(traj.h_nonincreasing(1e-9));
        assert!(terminal.h_plus.abs() < 1e-8);
    }

    #[test]
    fn rk4_matches_refined_reference() {
        let state = carleman(1.5, 0.5);
        let coarse = evolve(&state, 2.0, 1e-3).unwrap();
        let fine = evolve(&state, 2.0, 1e-5).unwrap();
        let (a, b) = (coarse.terminal(), fine.terminal());
        for i in 0..2 {
            assert!(
                (a.densities[i] - b.densities[i]).abs() < 1e-10,
                "component {i}: {} vs {}",
                a.densities[i],
                b.densities[i]
            );
        }
    }

    #[test]
    fn dh_dt_sign_and_finite_differences_agree() {
        let traj = evolve(&carleman(1.5, 0.5), 5.0, 1e-3).unwrap();
        for s in &traj.samples {
            assert!(s.dh_dt <= 1e-15, "closed form positive at t={}", s.t);
        }
        for w in traj.samples.windows(2) {
            let fd = (w[1].h_plus - w[0].h_plus) / (w[1].t - w[0].t);
            assert!(fd <= 1e-9, "finite difference positive at t={}", w[0].t);
        }
    }

    #[test]
    fn llog1_modular_bounded_along_trajectory() {
        let traj = evolve(&carleman(1.5, 0.5), 10.0, 1e-3).unwrap();
        let bound = llog1_trajectory_bound(&traj.samples[0]);
        for s in &traj.samples {
            assert!(s.llog1_modular <= bound + 1e-12);
        }
    }

    #[test]
    fn broadwell_battery() {
        let state =
            DiscreteKineticState::new(KineticModel::Broadwell, vec![1.2, 0.8, 0.4, 1.6]).unwrap();
        let expected = state.model.equilibrium(&state.densities);
        // detailed balance holds at the computed equilibrium
        assert!((expected[0] * expected[1] - expected[2] * expected[3]).abs() < 1e-12);
        let traj = evolve(&state, 20.0, 1e-3).unwrap();
        assert!(traj.h_nonincreasing(1e-9));
        assert!(traj.max_invariant_drift() < 1e-12);
        let terminal = traj.terminal();
        for (a, b) in terminal.densities.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        assert!((terminal.dh_dt).abs() < 1e-12, "equilibrium has dH/dt = 0");
    }

    #[test]
    fn equilibrium_characterizes_vanishing_dissipation() {
        // away from u = v the closed-form derivative is strictly negative
        for (u, v) in [(1.5, 0.5), (0.3, 0.9), (2.0, 1.9)] {
            let s = carleman(u, v);
            assert!(s.model.dh_dt(&s.densities) < 0.0);
        }
        let s = carleman(0.7, 0.7);
        assert_eq!(s.model.dh_dt(&s.densities), 0.0);
    }

    #[test]
    fn step_size_error_and_halving() {
        // a huge step overshoots into negative densities
        let state = carleman(1.9, 0.1);
        assert!(matches!(step(&state, 50.0), Err(Error::StepSize(_))));
        let traj = evolve_with_halving(&state, 1.0, 50.0, 12).unwrap();
        assert!(traj.h_nonincreasing(1e-9));
    }

    #[test]
    fn functional_sweep_orders_maxwellian_entropy_by_temperature() {
        let ladder = [1.0, 0.1, 0.01];
        let family: Vec<(String, crate::classical::SampledDensity)> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&t| (format!("maxwell-T{t}"), fixtures::maxwellian(t, 4000, 12.0)))
            .collect();
        let rows = functional_sweep(&family, &ladder).unwrap();
        // higher temperature, higher entropy; each matches the closed form
        for (row, &t) in rows.iter().zip(&[0.5, 1.0, 2.0]) {
            let expected = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * t).ln();
            assert!((row.h.get() - expected).abs() < 1e-4, "{} vs {expected}", row.h);
            assert!(row.member);
        }
        assert!(rows[0].h.get() < rows[1].h.get() && rows[1].h.get() < rows[2].h.get());
    }

    #[test]
    fn functional_sweep_uniform_row_and_flagging() {
        let space = MeasureSpace::uniform_probability(16);
        let uniform = crate::classical::SampledDensity::constant(space.clone(), 1.0).unwrap();
        // a value big enough that the x log(x+1) modular overflows the
        // infinity threshold: flagged, still reported
        let mut vals = vec![0.0; 16];
        vals[0] = 5e297;
        let huge = crate::classical::SampledDensity::new(space, vals).unwrap();
        let rows = functional_sweep(
            &[("uniform".into(), uniform), ("huge".into(), huge)],
            &[1.0, 0.1],
        )
        .unwrap();
        assert_eq!(rows[0].h.get(), 0.0);
        assert!(rows[0].member);
        assert!(!rows[1].member);
        assert!(!rows[1].llog1_modular.is_finite());
    }
}
