//! Extended rectangles, stochastic noise and threshold estimates.

pub mod analytic;
pub mod counting;
pub mod montecarlo;
pub mod noise;
pub mod protocol;

pub use analytic::{
    fit_quadratic, level_reduction_bound, levels_needed, overhead_bound, pseudo_threshold,
    LevelReduction, PseudoThreshold, QuadraticFit,
};
pub use counting::{
    binomial, count_fault_sets, fault_set_bound, malignant_pairs, single_fault_failures,
    threshold_from_count, MalignantReport,
};
pub use montecarlo::{
    count_failures, log_grid, simulate_protocol, trial_rng, wilson_interval, MonteCarloReport, Z_95,
};
pub use noise::{Adversary, Candidate, KindRates, NoiseModel, NoisySource};
pub use protocol::{
    build_protocol, cnot_circuit, cnot_exrec, sample_circuit, ExRec, ExRecKind, ExRecStatus,
    GadgetSet, Protocol, ProtocolOptions,
};
