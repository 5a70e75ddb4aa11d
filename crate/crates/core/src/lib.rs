//! Numerical toolkit for Orlicz-space machinery: Young-function calculus,
//! Luxemburg and Amemiya norms over discretized measure spaces, classical
//! and quantum entropy functionals, singular-value sequence norms, and
//! discrete-velocity kinetic models with an H-theorem harness.

// validation guards are written as negated comparisons so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boltzmann;
pub mod classical;
pub mod entropy;
pub mod fixtures;
pub mod io;
pub mod error;
pub mod ext;
pub mod numerics;
pub mod quantum;
pub mod suite;
pub mod young;

pub use classical::{
    amemiya_norm, embedding_report, holder_pairing, luxemburg_norm, luxemburg_norm_opt,
    luxemburg_norm_steps, rearrange, GaugeOptions, MeasureSpace, NormReport, SampledDensity,
    Step, StepRearrangement,
};
pub use boltzmann::{
    evolve, evolve_with_halving, functional_sweep, step, DiscreteKineticState, KineticModel,
    Trajectory,
};
pub use entropy::{
    approximation_sequence, continuous_entropy, continuous_entropy_with, h_epsilon,
    membership_check, truncated_entropy, EntropyReport,
};
pub use error::{Error, Result};
pub use quantum::{
    l1_subset_llog1_check, llogl_membership, llogl_membership_operator, moment_transform,
    regularity_probe, regularized_entropy, sequence_orlicz_norm, singular_values,
    von_neumann_entropy, weighted_luxemburg_norm, HermitianOperator, SingularSequence,
    WeightedSpace,
};
pub use ext::ExtReal;
pub use young::{
    catalog, check_delta2, check_dominance, check_equivalence, check_nabla2, ProbeReport, Verdict,
    Witness, YoungFunction,
};
