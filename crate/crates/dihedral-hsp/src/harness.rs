//! Experiment harness: oracle construction from selectors, solver trials in
//! a worker pool, and machine-readable reports.
//!
//! Randomness discipline: one root seed reproduces everything. Global trial
//! index `gi` derives `base = derive_seed(root, gi)`, from which stream 0
//! seeds the oracle labeling, stream 1 the solver, and stream 2 the random
//! subgroup draw (when the selector asks for one). Trials run on a rayon
//! worker pool and are merged in trial order, so output bytes do not depend
//! on the worker count.
//!
//! Success flags are always recomputed from group closure of the returned
//! generators against the ground-truth subgroup, never taken from solver
//! claims.

use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::group::{DihedralGroup, GroupElement, Subgroup};
use crate::oracle::HiddenFunction;
use crate::rep::{
    coset_corollary_deviation, irreps_of_dihedral, verify_indicator_theorem, IndicatorCheck,
};
use crate::rng::{derive_seed, SplitMix64};
use crate::sampler::{
    draw_branch_samples, run_circuit, Backend, Order2Spec, OutcomeDistribution,
};
use crate::solver::{
    peak_find, solve_dihedral, SolverConfig, StatisticVariant,
};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Every subgroup of D_N, via the classification: one rotation subgroup
/// ⟨(m,0)⟩ per divisor m | N (m = N giving the trivial subgroup), and the
/// dihedral-type subgroups ⟨(m,0),(r,1)⟩ for m | N, 0 ≤ r < m. The count is
/// τ(N) + σ(N).
pub fn all_subgroups(group: DihedralGroup) -> Vec<Subgroup> {
    let n = group.n();
    let mut out = Vec::new();
    for m in divisors(n) {
        out.push(Subgroup::closure(group, &[group.rotation(m as i64)]));
    }
    for m in divisors(n) {
        for r in 0..m {
            out.push(Subgroup::closure(
                group,
                &[group.rotation(m as i64), group.reflection(r as i64)],
            ));
        }
    }
    out
}

/// Uniformly random subgroup class: a divisor m, a coin for rotation-only
/// versus dihedral type, and a reflection offset when applicable.
pub fn random_subgroup(group: DihedralGroup, rng: &mut SplitMix64) -> Subgroup {
    let divs = divisors(group.n());
    let m = divs[rng.next_below(divs.len() as u64) as usize];
    if rng.next_below(2) == 1 {
        let r = rng.next_below(m);
        Subgroup::closure(
            group,
            &[group.rotation(m as i64), group.reflection(r as i64)],
        )
    } else {
        Subgroup::closure(group, &[group.rotation(m as i64)])
    }
}

/// How the hidden subgroup of each trial is chosen.
#[derive(Clone, Debug)]
pub enum SubgroupSelector {
    Trivial,
    /// The reflection subgroup {(0,0),(k0,1)}.
    Reflection(u64),
    /// Explicit generators (a, b).
    Generators(Vec<(i64, u8)>),
    /// A fresh random subgroup per trial.
    Random,
    /// Every subgroup of D_N, `trials` runs each.
    Exhaustive,
}

/// A solve experiment: N, subgroup choice, trial count, seed and solver
/// knobs.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub n: u64,
    pub selector: SubgroupSelector,
    pub trials: u64,
    pub seed: u64,
    pub backend: Backend,
    pub variant: StatisticVariant,
}

impl ExperimentSpec {
    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::BadSpec("N must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::BadSpec("need at least one trial".into()));
        }
        if let SubgroupSelector::Reflection(k0) = self.selector {
            if k0 >= self.n {
                return Err(Error::BadSpec(format!(
                    "k0 = {k0} out of range for N = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// One solved trial. `ms` is wall time and is only emitted into CSV when
/// timing output is requested, keeping default output byte-reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub n: u64,
    pub hidden_desc: String,
    pub outcome: String,
    pub success: bool,
    pub queries: u64,
    pub budget: f64,
    pub seed: u64,
    pub ms: f64,
}

/// Aggregate of one solve experiment.
#[derive(Clone, Debug, Serialize)]
pub struct SolveSummary {
    pub n: u64,
    pub subgroups: u64,
    pub trials_per_subgroup: u64,
    pub trials: u64,
    pub seed: u64,
    pub backend: Backend,
    pub variant: StatisticVariant,
    pub success_rate: f64,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub budget: f64,
    pub total_ms: f64,
}

/// Per-trial solver result in full detail, for JSON emission: the hidden
/// subgroup (the harness is test mode and knows it), the outcome, and the
/// reduction trace.
#[derive(Clone, Debug, Serialize)]
pub struct TrialDetail {
    pub trial: u64,
    pub n: u64,
    pub hidden: String,
    pub outcome: String,
    pub queries: u64,
    pub budget: f64,
    pub trace: crate::solver::ReductionTrace,
}

#[derive(Clone, Debug)]
pub struct SolveRun {
    pub records: Vec<TrialRecord>,
    pub details: Vec<TrialDetail>,
    pub summary: SolveSummary,
}

fn fmt_generators(gens: &[GroupElement]) -> String {
    if gens.is_empty() {
        "e".to_string()
    } else {
        gens.iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Runs the full dihedral solver for every (subgroup, trial) pair of the
/// spec and scores each run by closure equality.
pub fn run_solve(spec: &ExperimentSpec) -> Result<SolveRun> {
    spec.validate()?;
    let group = DihedralGroup::new(spec.n);

    // Fixed subgroup list, or None for per-trial random draws.
    let fixed: Option<Vec<Subgroup>> = match &spec.selector {
        SubgroupSelector::Trivial => Some(vec![Subgroup::trivial(group)]),
        SubgroupSelector::Reflection(k0) => {
            Some(vec![Subgroup::reflection(group, *k0 as i64)])
        }
        SubgroupSelector::Generators(pairs) => {
            let gens: Vec<GroupElement> =
                pairs.iter().map(|&(a, b)| group.element(a, b)).collect();
            Some(vec![Subgroup::closure(group, &gens)])
        }
        SubgroupSelector::Random => None,
        SubgroupSelector::Exhaustive => Some(all_subgroups(group)),
    };
    let subgroup_count = fixed.as_ref().map_or(1, |v| v.len() as u64);
    let total = subgroup_count * spec.trials;

    let outcomes: Result<Vec<(TrialRecord, TrialDetail)>> = (0..total)
        .into_par_iter()
        .map(|gi| {
            let base = derive_seed(spec.seed, gi);
            let hidden = match &fixed {
                Some(list) => list[(gi / spec.trials) as usize].clone(),
                None => {
                    let mut rng = SplitMix64::new(derive_seed(base, 2));
                    random_subgroup(group, &mut rng)
                }
            };
            let oracle = HiddenFunction::build(group, &hidden, derive_seed(base, 0))?;
            let config = SolverConfig {
                backend: spec.backend,
                variant: spec.variant,
                seed: derive_seed(base, 1),
                ..SolverConfig::default()
            };
            let started = Instant::now();
            let result = solve_dihedral(&oracle, &config)?;
            let ms = started.elapsed().as_secs_f64() * 1e3;
            let recovered = Subgroup::closure(group, &result.generators);
            let record = TrialRecord {
                trial: gi,
                n: spec.n,
                hidden_desc: hidden.describe(),
                outcome: fmt_generators(&result.generators),
                success: recovered == hidden,
                queries: result.queries,
                budget: result.budget,
                seed: config.seed,
                ms,
            };
            let detail = TrialDetail {
                trial: gi,
                n: spec.n,
                hidden: record.hidden_desc.clone(),
                outcome: record.outcome.clone(),
                queries: result.queries,
                budget: result.budget,
                trace: result.trace,
            };
            Ok((record, detail))
        })
        .collect();
    let (records, details): (Vec<TrialRecord>, Vec<TrialDetail>) =
        outcomes?.into_iter().unzip();

    let successes = records.iter().filter(|r| r.success).count() as f64;
    let summary = SolveSummary {
        n: spec.n,
        subgroups: subgroup_count,
        trials_per_subgroup: spec.trials,
        trials: total,
        seed: spec.seed,
        backend: spec.backend,
        variant: spec.variant,
        success_rate: successes / total as f64,
        mean_queries: records.iter().map(|r| r.queries as f64).sum::<f64>() / total as f64,
        max_queries: records.iter().map(|r| r.queries).max().unwrap_or(0),
        budget: records.iter().map(|r| r.budget).fold(0.0, f64::max),
        total_ms: records.iter().map(|r| r.ms).sum(),
    };
    Ok(SolveRun {
        records,
        details,
        summary,
    })
}

/// Writes trial records as CSV. The `timing` flag appends the wall-time
/// column, which is excluded by default so identical seeds give identical
/// bytes.
pub fn write_solve_csv<W: Write>(
    records: &[TrialRecord],
    timing: bool,
    out: &mut W,
) -> Result<()> {
    if timing {
        writeln!(out, "trial,N,hidden_desc,outcome,success,queries,budget,seed,ms")?;
    } else {
        writeln!(out, "trial,N,hidden_desc,outcome,success,queries,budget,seed")?;
    }
    for r in records {
        if timing {
            writeln!(
                out,
                "{},{},{},{},{},{},{:.3},{},{:.3}",
                r.trial,
                r.n,
                r.hidden_desc,
                r.outcome,
                r.success,
                r.queries,
                r.budget,
                r.seed,
                r.ms
            )?;
        } else {
            writeln!(
                out,
                "{},{},{},{},{},{},{:.3},{}",
                r.trial, r.n, r.hidden_desc, r.outcome, r.success, r.queries, r.budget, r.seed
            )?;
        }
    }
    Ok(())
}

/// A distribution study: exact laws per backend and an optional empirical
/// comparison.
#[derive(Clone, Debug)]
pub struct DistSpec {
    pub n: u64,
    pub hidden: Order2Spec,
    pub compare_backends: bool,
    /// 0 disables the empirical comparison.
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistRow {
    pub a: u64,
    pub b: u8,
    pub closed_form: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_vector: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistReport {
    pub n: u64,
    pub hidden: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_variation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_square: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub rows: Vec<DistRow>,
}

fn order2_subgroup(group: DihedralGroup, spec: Order2Spec) -> Subgroup {
    match spec {
        Order2Spec::Trivial => Subgroup::trivial(group),
        Order2Spec::Reflection(k0) => Subgroup::reflection(group, k0 as i64),
        Order2Spec::HalfTurn => {
            Subgroup::closure(group, &[group.rotation(group.n() as i64 / 2)])
        }
    }
}

fn order2_desc(spec: Order2Spec) -> String {
    match spec {
        Order2Spec::Trivial => "trivial".into(),
        Order2Spec::Reflection(k0) => format!("k0={k0}"),
        Order2Spec::HalfTurn => "half-turn".into(),
    }
}

pub fn run_distribution(spec: &DistSpec) -> Result<DistReport> {
    if spec.n < 1 {
        return Err(Error::BadSpec("N must be at least 1".into()));
    }
    if let Order2Spec::Reflection(k0) = spec.hidden {
        if k0 >= spec.n {
            return Err(Error::BadSpec(format!(
                "k0 = {k0} out of range for N = {}",
                spec.n
            )));
        }
    }
    if spec.hidden == Order2Spec::HalfTurn && !spec.n.is_multiple_of(2) {
        return Err(Error::BadSpec("half-turn subgroup needs even N".into()));
    }

    let closed = OutcomeDistribution::closed_form(spec.n, spec.hidden);

    let simulated = if spec.compare_backends {
        let group = DihedralGroup::new(spec.n);
        let hidden = order2_subgroup(group, spec.hidden);
        let oracle = HiddenFunction::build(group, &hidden, derive_seed(spec.seed, 0))?;
        Some(OutcomeDistribution::from_state(&run_circuit(&oracle)?))
    } else {
        None
    };

    let empirical = if spec.samples > 0 {
        let set = crate::sampler::draw_samples(
            &closed,
            spec.samples,
            derive_seed(spec.seed, 1),
            Backend::ClosedForm,
        );
        let mut counts = vec![0u64; 2 * spec.n as usize];
        for o in &set.outcomes {
            counts[(o.b as u64 * spec.n + o.a) as usize] += 1;
        }
        Some(counts)
    } else {
        None
    };

    let chi_square = empirical.as_ref().map(|counts| {
        counts
            .iter()
            .zip(closed.as_slice())
            .filter(|(_, &p)| p > 1e-12)
            .map(|(&c, &p)| {
                let expected = p * spec.samples as f64;
                (c as f64 - expected).powi(2) / expected
            })
            .sum()
    });

    let rows = (0..2 * spec.n)
        .map(|idx| {
            let (a, b) = (idx % spec.n, (idx / spec.n) as u8);
            DistRow {
                a,
                b,
                closed_form: closed.prob(a, b),
                state_vector: simulated.as_ref().map(|s| s.prob(a, b)),
                empirical: empirical
                    .as_ref()
                    .map(|c| c[idx as usize] as f64 / spec.samples as f64),
            }
        })
        .collect();

    Ok(DistReport {
        n: spec.n,
        hidden: order2_desc(spec.hidden),
        total_variation: simulated.as_ref().map(|s| closed.total_variation(s)),
        chi_square,
        samples: (spec.samples > 0).then_some(spec.samples),
        rows,
    })
}

/// Sidecar metadata describing a sample dump.
#[derive(Clone, Debug, Serialize)]
pub struct SampleMetadata {
    pub n: u64,
    pub k0_or_trivial: String,
    pub backend: Backend,
    pub seed: u64,
    pub m: u64,
}

/// Writes outcomes as CSV with header `a,b`, one row per draw.
pub fn write_sample_csv<W: Write>(set: &crate::sampler::SampleSet, out: &mut W) -> Result<()> {
    writeln!(out, "a,b")?;
    for o in &set.outcomes {
        writeln!(out, "{},{}", o.a, o.b)?;
    }
    Ok(())
}

/// Draws `m` outcomes from the closed-form law of `hidden` and returns the
/// sample set plus its metadata sidecar. The seed is the derived sampling
/// stream of `root_seed`, matching the empirical comparison in
/// [`run_distribution`].
pub fn sample_dump(
    n: u64,
    hidden: Order2Spec,
    m: u64,
    root_seed: u64,
) -> (crate::sampler::SampleSet, SampleMetadata) {
    let dist = OutcomeDistribution::closed_form(n, hidden);
    let seed = derive_seed(root_seed, 1);
    let set = crate::sampler::draw_samples(&dist, m, seed, Backend::ClosedForm);
    let meta = SampleMetadata {
        n,
        k0_or_trivial: order2_desc(hidden),
        backend: Backend::ClosedForm,
        seed,
        m,
    };
    (set, meta)
}

/// Distribution of a replayed oracle dump, by state-vector simulation.
pub fn distribution_from_oracle(oracle: &HiddenFunction) -> Result<DistReport> {
    let dist = OutcomeDistribution::from_state(&run_circuit(oracle)?);
    let n = dist.n();
    let rows = (0..2 * n)
        .map(|idx| {
            let (a, b) = (idx % n, (idx / n) as u8);
            DistRow {
                a,
                b,
                closed_form: dist.prob(a, b),
                state_vector: Some(dist.prob(a, b)),
                empirical: None,
            }
        })
        .collect();
    Ok(DistReport {
        n,
        hidden: "replayed".into(),
        total_variation: None,
        chi_square: None,
        samples: None,
        rows,
    })
}

/// A peak-finding study: sweep k0 (or replay injected samples) and compare
/// empirical success against the 1 - 1/(2N) guarantee and the per-frequency
/// e^{-m/32} misjudgment bound.
#[derive(Clone, Debug)]
pub struct PeakSpec {
    pub n: u64,
    /// Sweep every k0 in [1, ⌊N/2⌋] when `None`.
    pub k0: Option<u64>,
    pub trials: u64,
    /// Samples per trial; defaults to ⌈64 ln N⌉ when `None`.
    pub m: Option<u64>,
    pub branch: u8,
    pub variant: StatisticVariant,
    pub seed: u64,
    /// Injected sample replay; bypasses sampling entirely.
    pub replay: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakRow {
    pub k0: u64,
    pub m: u64,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// The 1 - 1/(2N) guarantee.
    pub theorem_bound: f64,
    /// Per-frequency misjudgment bound e^{-m/32}.
    pub lemma_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakReplay {
    pub k_tilde: u64,
    pub score: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakReport {
    pub n: u64,
    pub branch: u8,
    pub variant: StatisticVariant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<PeakReplay>,
    pub rows: Vec<PeakRow>,
}

pub fn run_peak_study(spec: &PeakSpec) -> Result<PeakReport> {
    if spec.n < 2 {
        return Err(Error::BadSpec("peak study needs N at least 2".into()));
    }
    if spec.branch > 1 {
        return Err(Error::BadSpec("branch must be 0 or 1".into()));
    }

    if let Some(samples) = &spec.replay {
        let peak = peak_find(samples, spec.n, spec.branch, spec.variant)?;
        return Ok(PeakReport {
            n: spec.n,
            branch: spec.branch,
            variant: spec.variant,
            replay: Some(PeakReplay {
                k_tilde: peak.k_tilde,
                score: peak.score,
            }),
            rows: Vec::new(),
        });
    }

    if spec.trials < 1 {
        return Err(Error::BadSpec("need at least one trial".into()));
    }
    let m = spec
        .m
        .unwrap_or_else(|| (64.0 * (spec.n as f64).ln()).ceil() as u64);
    let k0_list: Vec<u64> = match spec.k0 {
        Some(k0) => {
            if k0 == 0 || k0 >= spec.n {
                return Err(Error::BadSpec(format!(
                    "peak k0 must satisfy 0 < k0 < N, got {k0}"
                )));
            }
            vec![k0]
        }
        None => (1..=spec.n / 2).collect(),
    };

    let rows: Result<Vec<PeakRow>> = k0_list
        .par_iter()
        .map(|&k0| {
            let dist = OutcomeDistribution::closed_form(spec.n, Order2Spec::Reflection(k0));
            let target = k0.min(spec.n - k0);
            let mut successes = 0u64;
            for trial in 0..spec.trials {
                let draw_seed = derive_seed(spec.seed, k0 * 1_000_003 + trial);
                let zs = draw_branch_samples(&dist, spec.branch, m, draw_seed)?;
                let peak = peak_find(&zs, spec.n, spec.branch, spec.variant)?;
                if peak.k_tilde == target {
                    successes += 1;
                }
            }
            Ok(PeakRow {
                k0,
                m,
                trials: spec.trials,
                successes,
                success_rate: successes as f64 / spec.trials as f64,
                theorem_bound: 1.0 - 1.0 / (2.0 * spec.n as f64),
                lemma_bound: (-(m as f64) / 32.0).exp(),
            })
        })
        .collect();

    Ok(PeakReport {
        n: spec.n,
        branch: spec.branch,
        variant: spec.variant,
        replay: None,
        rows: rows?,
    })
}

/// Representation-theory verification report for one N.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupIndicatorReport {
    pub subgroup: String,
    pub rows: Vec<IndicatorCheck>,
    pub corollary_max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepsReport {
    pub n: u64,
    pub irreps: usize,
    pub sum_squared_dims: u64,
    pub homomorphism_max_deviation: f64,
    pub unitarity_max_deviation: f64,
    pub subgroups_checked: usize,
    pub indicator: Vec<SubgroupIndicatorReport>,
    pub max_deviation: f64,
    pub ok: bool,
}

/// Runs all §-style identities for D_N: dimension inventory, homomorphism
/// and unitarity of every irrep, and the indicator theorem plus its coset
/// corollary over the chosen subgroups. Requires 2N ≤ 256.
pub fn run_verify_reps(n: u64, all: bool) -> Result<RepsReport> {
    if n < 1 || 2 * n > 256 {
        return Err(Error::BadSpec(format!(
            "verify-reps supports 1 ≤ N ≤ 128, got {n}"
        )));
    }
    let group = DihedralGroup::new(n);
    let set = irreps_of_dihedral(group);

    let mut homomorphism = 0.0f64;
    let mut unitarity = 0.0f64;
    for rho in set.irreps() {
        for x in group.elements() {
            let mx = rho.matrix(x);
            let adjoint = ndarray::Array2::from_shape_fn((rho.dim(), rho.dim()), |(i, j)| {
                mx[(j, i)].conj()
            });
            let eye = ndarray::Array2::from_shape_fn((rho.dim(), rho.dim()), |(i, j)| {
                if i == j {
                    num_complex::Complex64::new(1.0, 0.0)
                } else {
                    num_complex::Complex64::new(0.0, 0.0)
                }
            });
            unitarity = unitarity.max(crate::rep::max_abs_diff(&mx.dot(&adjoint), &eye));
            for y in group.elements() {
                let lhs = rho.matrix(group.multiply(x, y));
                let rhs = mx.dot(&rho.matrix(y));
                homomorphism = homomorphism.max(crate::rep::max_abs_diff(&lhs, &rhs));
            }
        }
    }

    let subgroups = if all {
        all_subgroups(group)
    } else {
        let mut chosen: Vec<Subgroup> = Vec::new();
        for h in [
            Subgroup::trivial(group),
            Subgroup::whole(group),
            Subgroup::reflection(group, 0),
            Subgroup::closure(group, &[group.rotation(1)]),
        ] {
            if !chosen.contains(&h) {
                chosen.push(h);
            }
        }
        chosen
    };

    let mut indicator = Vec::with_capacity(subgroups.len());
    let mut worst = homomorphism.max(unitarity);
    for h in &subgroups {
        let report = verify_indicator_theorem(h, &set);
        let corollary = group
            .elements()
            .map(|s| coset_corollary_deviation(s, h, &set))
            .fold(0.0, f64::max);
        worst = worst.max(report.max_deviation).max(corollary);
        indicator.push(SubgroupIndicatorReport {
            subgroup: h.describe(),
            rows: report.rows,
            corollary_max_deviation: corollary,
        });
    }

    let sum_sq = set.sum_of_squared_dims();
    let ok = sum_sq == 2 * n && worst < 1e-10;
    Ok(RepsReport {
        n,
        irreps: set.len(),
        sum_squared_dims: sum_sq,
        homomorphism_max_deviation: homomorphism,
        unitarity_max_deviation: unitarity,
        subgroups_checked: subgroups.len(),
        indicator,
        max_deviation: worst,
        ok,
    })
}
