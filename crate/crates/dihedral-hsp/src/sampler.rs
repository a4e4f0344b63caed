//! Measurement outcomes of the coset-sampling experiment, by two backends.
//!
//! The experiment prepares |0⟩|0⟩|0⟩, applies
//! (F_N ⊗ W ⊗ I) ∘ U_γ ∘ (F_N⁻¹ ⊗ W ⊗ I) and measures the first two
//! registers. The `state_vector` backend simulates that circuit with dense
//! complex amplitudes. The `closed_form` backend evaluates the known outcome
//! law directly: for a hidden reflection subgroup {(0,0),(k0,1)},
//!
//! ```text
//! Prob[(a,0)] = cos²(π k0 a / N) / N      Prob[(a,1)] = sin²(π k0 a / N) / N
//! ```
//!
//! and the uniform law 1/(2N) for a trivial hidden subgroup. The two
//! backends agree to numerical precision; the solvers default to the closed
//! form for speed, while tests cross-validate it against the circuit.
//!
//! Accounting: each invocation of the experiment costs one black-box
//! evaluation of γ. The 2N table reads needed to apply U_γ inside the
//! simulator are tallied separately as simulation cost.
//!
//! Outcomes (a, b) are ordered b-major ((0,0),…,(N-1,0),(0,1),…,(N-1,1)) for
//! inverse-CDF sampling, so a seed reproduces the same draw sequence in any
//! implementation of the documented RNG stream.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::DihedralGroup;
use crate::oracle::DihedralOracle;
use crate::rng::SplitMix64;

/// Environment variable overriding the amplitude cap of the simulator.
pub const CAP_ENV_VAR: &str = "DHSP_MAX_AMPLITUDES";

const DEFAULT_AMPLITUDE_CAP: u64 = 1 << 24;

/// Amplitude cap for state-vector simulation, from the environment or the
/// built-in default of 2^24.
pub fn amplitude_cap() -> u64 {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_AMPLITUDE_CAP)
}

/// Transform direction for [`qft`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Quantum Fourier transform on Z_N: forward maps basis state i to
/// (1/√N) Σ_j ω^{ij} |j⟩ with ω = exp(2πi/N); inverse is the adjoint.
pub fn qft(direction: Direction, input: &[Complex64]) -> Result<Vec<Complex64>> {
    if input.is_empty() {
        return Err(Error::EmptyState);
    }
    let n = input.len();
    let roots = unit_roots(n);
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &amp) in input.iter().enumerate() {
            let w = roots[(i * j) % n];
            acc += amp
                * match direction {
                    Direction::Forward => w,
                    Direction::Inverse => w.conj(),
                };
        }
        *slot = acc * scale;
    }
    Ok(out)
}

fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect()
}

/// Order at most 2 hidden subgroups, the cases with a closed-form outcome
/// law: trivial, a reflection subgroup {(0,0),(k0,1)}, or (even N only) the
/// half-turn rotation subgroup {(0,0),(N/2,0)}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order2Spec {
    Trivial,
    Reflection(u64),
    HalfTurn,
}

/// Sampling backend selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    ClosedForm,
    StateVector,
}

/// Probability mass over measurement outcomes (a, b), stored b-major.
#[derive(Clone, Debug)]
pub struct OutcomeDistribution {
    n: u64,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// The exact outcome law for an order ≤ 2 hidden subgroup.
    pub fn closed_form(n: u64, spec: Order2Spec) -> Self {
        assert!(n >= 1);
        let nf = n as f64;
        let probs = match spec {
            Order2Spec::Trivial => vec![1.0 / (2.0 * nf); 2 * n as usize],
            Order2Spec::Reflection(k0) => {
                assert!(k0 < n);
                let mut probs = vec![0.0; 2 * n as usize];
                for a in 0..n {
                    let theta = std::f64::consts::PI * (k0 * a) as f64 / nf;
                    probs[a as usize] = theta.cos().powi(2) / nf;
                    probs[(n + a) as usize] = theta.sin().powi(2) / nf;
                }
                probs
            }
            Order2Spec::HalfTurn => {
                assert!(n.is_multiple_of(2), "half-turn subgroup needs even N");
                let mut probs = vec![0.0; 2 * n as usize];
                for a in (0..n).step_by(2) {
                    probs[a as usize] = 1.0 / nf;
                    probs[(n + a) as usize] = 1.0 / nf;
                }
                probs
            }
        };
        Self { n, probs }
    }

    /// Marginal of the first two registers of a simulated final state.
    pub fn from_state(state: &QuantumState) -> Self {
        let n = state.group.n();
        let r = state.range_size;
        let probs = (0..2 * n as usize)
            .map(|ei| {
                state.amps[ei * r..(ei + 1) * r]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum()
            })
            .collect();
        Self { n, probs }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn prob(&self, a: u64, b: u8) -> f64 {
        self.probs[(b as u64 * self.n + a) as usize]
    }

    /// Probabilities in outcome order (b-major).
    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn branch_mass(&self, b: u8) -> f64 {
        let n = self.n as usize;
        self.probs[b as usize * n..][..n].iter().sum()
    }

    /// Distribution of the first register conditioned on the second register
    /// reading `branch`. Normalization is computed numerically from the
    /// joint law. Errors if the branch carries no mass.
    pub fn conditional_z(&self, branch: u8) -> Result<Vec<f64>> {
        let mass = self.branch_mass(branch);
        if mass < 1e-15 {
            return Err(Error::EmptyBranch { branch });
        }
        let n = self.n as usize;
        Ok(self.probs[branch as usize * n..][..n]
            .iter()
            .map(|p| p / mass)
            .collect())
    }

    pub fn total_variation(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
    }
}

/// Dense three-register state |a⟩|b⟩|r⟩ with amplitude index
/// `(b·N + a) · range_size + r`. Register three holds the oracle range;
/// r = 0 is the blank initial value and r = 1.. are the distinct labels in
/// ascending order.
#[derive(Clone, Debug)]
pub struct QuantumState {
    group: DihedralGroup,
    range_size: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    pub fn group(&self) -> DihedralGroup {
        self.group
    }

    pub fn range_size(&self) -> usize {
        self.range_size
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn assert_normalized(&self, stage: &str) {
        let norm = self.norm();
        assert!(
            (norm - 1.0).abs() < 1e-10,
            "state norm {norm} drifted at stage {stage}"
        );
    }

    /// Applies F_N (or its inverse) to the first register.
    fn apply_qft_first(&mut self, direction: Direction) {
        let n = self.group.n() as usize;
        let r = self.range_size;
        let roots = unit_roots(n);
        let scale = 1.0 / (n as f64).sqrt();
        let mut col_in = vec![Complex64::new(0.0, 0.0); n];
        for b in 0..2usize {
            for ri in 0..r {
                for (a, slot) in col_in.iter_mut().enumerate() {
                    *slot = self.amps[(b * n + a) * r + ri];
                }
                for x in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (a, &amp) in col_in.iter().enumerate() {
                        let w = roots[(a * x) % n];
                        acc += amp
                            * match direction {
                                Direction::Forward => w,
                                Direction::Inverse => w.conj(),
                            };
                    }
                    self.amps[(b * n + x) * r + ri] = acc * scale;
                }
            }
        }
    }

    /// Applies the Walsh-Hadamard transform W to the second register
    /// (self-inverse).
    fn apply_hadamard_second(&mut self) {
        let n = self.group.n() as usize;
        let r = self.range_size;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for a in 0..n {
            for ri in 0..r {
                let i0 = a * r + ri;
                let i1 = (n + a) * r + ri;
                let v0 = self.amps[i0];
                let v1 = self.amps[i1];
                self.amps[i0] = (v0 + v1) * s;
                self.amps[i1] = (v0 - v1) * s;
            }
        }
    }
}

/// Simulates the full experiment circuit on |0⟩|0⟩|0⟩ and returns the final
/// state. Reads the oracle table 2N times (simulation cost) and counts as
/// one black-box evaluation of γ. Uses the amplitude cap from the
/// environment; see [`run_circuit_with_cap`].
pub fn run_circuit<O: DihedralOracle>(oracle: &O) -> Result<QuantumState> {
    run_circuit_with_cap(oracle, amplitude_cap())
}

/// [`run_circuit`] with an explicit amplitude cap.
pub fn run_circuit_with_cap<O: DihedralOracle>(oracle: &O, cap: u64) -> Result<QuantumState> {
    let group = oracle.group();
    let n = group.n() as usize;

    // Read γ everywhere (this is what applying U_γ takes) and give the
    // distinct labels dense indices 1.. in ascending label order.
    let labels: Vec<u64> = group.elements().map(|g| oracle.peek(g).raw()).collect();
    let mut rank: BTreeMap<u64, usize> = BTreeMap::new();
    for &label in &labels {
        let next = rank.len() + 1;
        rank.entry(label).or_insert(next);
    }
    let range_size = rank.len() + 1;

    let required = 2 * n as u64 * range_size as u64;
    if required > cap {
        return Err(Error::AmplitudeCap { required, cap });
    }

    let mut state = QuantumState {
        group,
        range_size,
        amps: vec![Complex64::new(0.0, 0.0); 2 * n * range_size],
    };
    state.amps[0] = Complex64::new(1.0, 0.0); // |0⟩|0⟩|0⟩

    // (F_N^{-1} ⊗ W ⊗ I)
    state.apply_qft_first(Direction::Inverse);
    state.apply_hadamard_second();
    state.assert_normalized("prepare");

    // U_γ: |a⟩|b⟩|0⟩ ↦ |a⟩|b⟩|γ(a,b)⟩, extended to a permutation by
    // swapping r = 0 with the label slot in every (a, b) column.
    for (ei, &label) in labels.iter().enumerate() {
        let ri = rank[&label];
        state.amps.swap(ei * range_size, ei * range_size + ri);
    }
    state.assert_normalized("oracle");

    // (F_N ⊗ W ⊗ I)
    state.apply_qft_first(Direction::Forward);
    state.apply_hadamard_second();
    state.assert_normalized("transform");

    oracle.charge_evaluations(1);
    Ok(state)
}

/// Determines which order ≤ 2 subgroup a promise-fulfilling oracle hides,
/// from uncounted table reads. Callers must guarantee the promise holds for
/// a subgroup of order at most 2; larger subgroups are not detected.
pub fn detect_order2<O: DihedralOracle>(oracle: &O) -> Order2Spec {
    let group = oracle.group();
    let n = group.n();
    let at_identity = oracle.peek(group.element(0, 0));
    if oracle.peek(group.element(0, 1)) == at_identity {
        return Order2Spec::Reflection(0);
    }
    if n.is_multiple_of(2) && oracle.peek(group.rotation(n as i64 / 2)) == at_identity {
        return Order2Spec::HalfTurn;
    }
    for k in 1..n {
        if oracle.peek(group.reflection(k as i64)) == at_identity {
            return Order2Spec::Reflection(k);
        }
    }
    Order2Spec::Trivial
}

/// A single measurement outcome (a, b).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SampleOutcome {
    pub a: u64,
    pub b: u8,
}

/// Outcomes drawn from a distribution, with the seed and backend that
/// produced them. Reproducible given (seed, backend, oracle).
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub outcomes: Vec<SampleOutcome>,
    pub seed: u64,
    pub backend: Backend,
}

impl SampleSet {
    /// First-register values whose second register equals `branch`.
    pub fn branch_values(&self, branch: u8) -> Vec<u64> {
        self.outcomes
            .iter()
            .filter(|o| o.b == branch)
            .map(|o| o.a)
            .collect()
    }
}

/// Draws `m` independent outcomes by inverse CDF over the fixed b-major
/// outcome ordering, using the documented SplitMix64 stream seeded with
/// `seed`. The `backend` tag records the distribution's provenance.
pub fn draw_samples(
    dist: &OutcomeDistribution,
    m: u64,
    seed: u64,
    backend: Backend,
) -> SampleSet {
    let n = dist.n;
    let mut cumulative = Vec::with_capacity(dist.probs.len());
    let mut acc = 0.0;
    let mut last_positive = 0usize;
    for (i, &p) in dist.probs.iter().enumerate() {
        acc += p;
        cumulative.push(acc);
        if p > 0.0 {
            last_positive = i;
        }
    }
    let mut rng = SplitMix64::new(seed);
    let outcomes = (0..m)
        .map(|_| {
            let u = rng.next_f64() * acc;
            let idx = cumulative.partition_point(|&c| c <= u).min(last_positive);
            SampleOutcome {
                a: idx as u64 % n,
                b: (idx as u64 / n) as u8,
            }
        })
        .collect();
    SampleSet {
        outcomes,
        seed,
        backend,
    }
}

/// Draws `m` values of the first register conditioned on the second
/// register reading `branch`, by inverse CDF over the conditional law.
/// Errors if the branch carries no mass.
pub fn draw_branch_samples(
    dist: &OutcomeDistribution,
    branch: u8,
    m: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    let z = dist.conditional_z(branch)?;
    let mut cumulative = Vec::with_capacity(z.len());
    let mut acc = 0.0;
    let mut last_positive = 0usize;
    for (i, &p) in z.iter().enumerate() {
        acc += p;
        cumulative.push(acc);
        if p > 0.0 {
            last_positive = i;
        }
    }
    let mut rng = SplitMix64::new(seed);
    Ok((0..m)
        .map(|_| {
            let u = rng.next_f64() * acc;
            cumulative.partition_point(|&c| c <= u).min(last_positive) as u64
        })
        .collect())
}

/// Runs the quantum experiment `m` times against `oracle` and returns the
/// measured outcomes. Bills exactly one black-box evaluation of γ per shot,
/// whichever backend produces the outcome law.
pub fn experiment_samples<O: DihedralOracle>(
    oracle: &O,
    m: u64,
    seed: u64,
    backend: Backend,
) -> Result<SampleSet> {
    if m == 0 {
        return Ok(SampleSet {
            outcomes: Vec::new(),
            seed,
            backend,
        });
    }
    let dist = match backend {
        Backend::ClosedForm => {
            oracle.charge_evaluations(m);
            OutcomeDistribution::closed_form(oracle.group().n(), detect_order2(oracle))
        }
        Backend::StateVector => {
            let state = run_circuit(oracle)?; // charges one evaluation
            oracle.charge_evaluations(m - 1);
            OutcomeDistribution::from_state(&state)
        }
    };
    Ok(draw_samples(&dist, m, seed, backend))
}
