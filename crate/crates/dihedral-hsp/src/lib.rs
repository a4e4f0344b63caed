//! Hidden subgroup toolkit for dihedral groups.
//!
//! Given black-box access to a function γ on D_N that is constant and
//! distinct on the left cosets of an unknown subgroup H, this crate
//! recovers a generating set for H with Θ(log N) evaluations of γ, and
//! provides everything needed to study that experiment on a desk machine:
//!
//! * [`group`] — exact arithmetic in D_N, subgroups, cosets;
//! * [`oracle`] — promise-fulfilling black boxes with exact query counting;
//! * [`sampler`] — the quantum coset-sampling experiment, both as a dense
//!   state-vector simulation and as its closed-form outcome law;
//! * [`abelian`] — the cyclic-group solver used by the reduction;
//! * [`solver`] — the order-2 dihedral solver, the peak-finding statistic
//!   with its Hoeffding bounds, and the full reduction;
//! * [`rep`] — irreducible representations of D_N, the matrix-valued
//!   Fourier transform, fixed-space projections and weak Fourier sampling;
//! * [`harness`] — reproducible experiment runs with CSV/JSON output;
//! * [`rng`] — the documented SplitMix64 stream behind every random choice.
//!
//! Start with the runnable examples (`cargo run --release --example
//! full_reduction`, etc.), or the `dhsp` binary for command-line studies.
//! All randomness flows from explicit seeds: identical seeds give
//! bit-identical outputs, including across processes and worker counts.

pub mod abelian;
pub mod error;
pub mod group;
pub mod harness;
pub mod oracle;
pub mod rep;
pub mod rng;
pub mod sampler;
pub mod solver;

pub use error::{Error, Result};
pub use group::{
    enumerate_order_two_subgroups, DihedralGroup, GroupElement, ReflectionSubgroup, Subgroup,
};
pub use oracle::{DihedralOracle, HiddenFunction, LabelValue};
pub use sampler::{Backend, Order2Spec, OutcomeDistribution, SampleSet};
pub use solver::{
    solve_dihedral, solve_order_two, Order2Outcome, Order2Result, SolverConfig, SolverResult,
    StatisticVariant,
};
