//! Acceptance suite: one test per claim the library is held to, each
//! printing a PASS line with its headline numbers. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use dihedral_hsp::abelian::{cyclic_sample_count, solve_cyclic};
use dihedral_hsp::group::{DihedralGroup, Subgroup};
use dihedral_hsp::harness::{self, all_subgroups, ExperimentSpec, SubgroupSelector};
use dihedral_hsp::oracle::HiddenFunction;
use dihedral_hsp::rep::{
    coset_corollary_deviation, irreps_of_dihedral, max_abs_diff as rep_deviation,
    verify_indicator_theorem,
};
use dihedral_hsp::rng::{derive_seed, SplitMix64};
use dihedral_hsp::sampler::{
    draw_branch_samples, run_circuit, Backend, Order2Spec, OutcomeDistribution,
};
use dihedral_hsp::solver::{
    peak_find, single_point_test, solve_dihedral, solve_order_two, Judgment, Order2Outcome,
    SolverConfig, StatisticVariant,
};

fn d(n: u64) -> DihedralGroup {
    DihedralGroup::new(n)
}

fn pass(id: u32, title: &str, detail: String) {
    println!("acceptance {id} ({title}): PASS [{detail}]");
}

/// Criterion 1: the simulated circuit reproduces the closed-form outcome
/// law, Prob[(a,0)] = cos²(πk0a/N)/N and Prob[(a,1)] = sin²(πk0a/N)/N, for
/// every N ≤ 64 and every k0 plus the trivial subgroup, to 1e-9.
#[test]
fn acceptance_01_outcome_law_exactness() {
    let mut worst = 0.0f64;
    for n in 1..=64u64 {
        let group = d(n);
        let mut cases: Vec<(Subgroup, Order2Spec)> = (0..n)
            .map(|k0| {
                (
                    Subgroup::reflection(group, k0 as i64),
                    Order2Spec::Reflection(k0),
                )
            })
            .collect();
        cases.push((Subgroup::trivial(group), Order2Spec::Trivial));
        for (hidden, spec) in cases {
            let oracle = HiddenFunction::build(group, &hidden, derive_seed(10, n)).unwrap();
            let simulated = OutcomeDistribution::from_state(&run_circuit(&oracle).unwrap());
            let exact = OutcomeDistribution::closed_form(n, spec);
            for (p, q) in simulated.as_slice().iter().zip(exact.as_slice()) {
                worst = worst.max((p - q).abs());
            }
        }
    }
    assert!(worst < 1e-9, "max outcome probability error {worst}");
    pass(1, "outcome law exactness", format!("max error {worst:.2e}"));
}

/// Criterion 2: for N in {2, 4, ..., 1024}, every order-2 solve uses at most
/// 89·log₂N + 7 queries (exact integer assertion) and is sound over 100
/// seeded trials per N: trivial subgroups always answer "trivial",
/// reflection subgroups never answer a wrong k0.
#[test]
fn acceptance_02_order_two_budget_and_soundness() {
    let mut max_used = 0u64;
    for exponent in 1..=10u32 {
        let n = 1u64 << exponent;
        let budget = 89 * exponent as u64 + 7;
        let mut rng = SplitMix64::new(derive_seed(20, n));
        for trial in 0..100u64 {
            let group = d(n);
            let hidden_k0 = if rng.next_below(4) == 0 {
                None
            } else {
                Some(rng.next_below(n))
            };
            let hidden = match hidden_k0 {
                None => Subgroup::trivial(group),
                Some(k0) => Subgroup::reflection(group, k0 as i64),
            };
            let oracle =
                HiddenFunction::build(group, &hidden, derive_seed(21, n * 1000 + trial))
                    .unwrap();
            let config =
                SolverConfig::default().with_seed(derive_seed(22, n * 1000 + trial));
            let result = solve_order_two(&oracle, &config).unwrap();
            assert!(
                result.queries <= budget,
                "N={n}: {} queries > budget {budget}",
                result.queries
            );
            max_used = max_used.max(result.queries);
            match (hidden_k0, result.outcome) {
                (None, Order2Outcome::Trivial) => {}
                (None, Order2Outcome::K0(k)) => panic!("N={n}: trivial answered k0={k}"),
                (Some(k0), Order2Outcome::K0(k)) => {
                    assert_eq!(k, k0, "N={n}: wrong non-trivial answer")
                }
                (Some(_), Order2Outcome::Trivial) => {} // miss allowed, wrong answer is not
            }
        }
    }
    pass(
        2,
        "order-2 budget and soundness",
        format!("max queries {max_used}, bound at N=1024 is 897"),
    );
}

/// Criterion 3: N=32, every k0, 200 trials each: the order-2 solver answers
/// k0 at a rate of at least 1 - 1/(2N) - 3σ ≈ 0.958.
#[test]
fn acceptance_03_order_two_success_rate() {
    let n = 32u64;
    let trials = 200u64;
    let p = 1.0 - 1.0 / (2.0 * n as f64);
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let threshold = p - 3.0 * sigma;
    let mut worst_rate = 1.0f64;
    for k0 in 0..n {
        let group = d(n);
        let hidden = Subgroup::reflection(group, k0 as i64);
        let mut hits = 0u64;
        for trial in 0..trials {
            let oracle =
                HiddenFunction::build(group, &hidden, derive_seed(30, k0 * 1000 + trial))
                    .unwrap();
            let config =
                SolverConfig::default().with_seed(derive_seed(31, k0 * 1000 + trial));
            if solve_order_two(&oracle, &config).unwrap().outcome == Order2Outcome::K0(k0) {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        worst_rate = worst_rate.min(rate);
        assert!(
            rate >= threshold,
            "k0={k0}: rate {rate} below threshold {threshold:.4}"
        );
    }
    pass(
        3,
        "order-2 success rate",
        format!("worst per-k0 rate {worst_rate:.4}, threshold {threshold:.4}"),
    );
}

/// Criterion 4: the m/4-threshold test misjudges the true frequency (or any
/// of five random wrong ones) at a rate within max(3·e^{-m/32}, 10/trials)
/// over 10^4 trials, for m in {64, 128, 256} at N=32, k0=5.
#[test]
fn acceptance_04_threshold_concentration() {
    let n = 32u64;
    let k0 = 5u64;
    let trials = 10_000u64;
    let dist = OutcomeDistribution::closed_form(n, Order2Spec::Reflection(k0));
    let mut detail = String::new();
    for m in [64u64, 128, 256] {
        let allowed_rate = (3.0 * (-(m as f64) / 32.0).exp()).max(10.0 / trials as f64);
        let mut true_failures = 0u64;
        let mut wrong_judgments = 0u64;
        let mut rng = SplitMix64::new(derive_seed(40, m));
        for trial in 0..trials {
            let zs = draw_branch_samples(&dist, 0, m, derive_seed(41, m * 100_000 + trial))
                .unwrap();
            if single_point_test(&zs, k0, n) == Judgment::Inconsistent {
                true_failures += 1;
            }
            for _ in 0..5 {
                let k = loop {
                    let k = 1 + rng.next_below(n - 1);
                    if k != k0 && k != n - k0 {
                        break k;
                    }
                };
                if single_point_test(&zs, k, n) == Judgment::Consistent {
                    wrong_judgments += 1;
                }
            }
        }
        let true_rate = true_failures as f64 / trials as f64;
        let wrong_rate = wrong_judgments as f64 / (5 * trials) as f64;
        assert!(
            true_rate <= allowed_rate,
            "m={m}: true-frequency misjudgment rate {true_rate} > {allowed_rate}"
        );
        assert!(
            wrong_rate <= allowed_rate,
            "m={m}: wrong-frequency misjudgment rate {wrong_rate} > {allowed_rate}"
        );
        detail.push_str(&format!(
            "m={m}: {true_rate:.2e}/{wrong_rate:.2e} vs {allowed_rate:.2e}; "
        ));
    }
    pass(4, "threshold concentration", detail);
}

/// Criterion 5: E[cos(2πkZ)] over the exact branch-0 law equals 1 when
/// 2k = 2k0 = N, 1/2 when k = k0 or k = N-k0, and 0 otherwise, to 1e-10,
/// for every N ≤ 64 and all k, k0.
#[test]
fn acceptance_05_expectation_case_table() {
    let mut worst = 0.0f64;
    for n in 2..=64u64 {
        for k0 in 0..n {
            let dist = OutcomeDistribution::closed_form(n, Order2Spec::Reflection(k0));
            let z = dist.conditional_z(0).unwrap();
            for k in 1..n {
                let expectation: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(zv, p)| {
                        p * (2.0 * std::f64::consts::PI * ((k * zv as u64) % n) as f64
                            / n as f64)
                            .cos()
                    })
                    .sum();
                let want = if 2 * k == n && 2 * k0 == n {
                    1.0
                } else if k == k0 || k + k0 == n {
                    0.5
                } else {
                    0.0
                };
                let err = (expectation - want).abs();
                worst = worst.max(err);
                assert!(err < 1e-10, "N={n} k0={k0} k={k}: E={expectation}, want {want}");
            }
        }
    }
    pass(5, "expectation case table", format!("max error {worst:.2e}"));
}

/// Criterion 6: the full reduction recovers every subgroup of D_N for
/// N = 2..12 at a per-subgroup rate of at least 1 - 2/N over 50 seeded
/// trials.
#[test]
fn acceptance_06_reduction_exhaustive() {
    let trials = 50u64;
    let mut worst_margin = f64::INFINITY;
    for n in 2..=12u64 {
        let group = d(n);
        let bound = 1.0 - 2.0 / n as f64;
        for (si, hidden) in all_subgroups(group).iter().enumerate() {
            let mut hits = 0u64;
            for trial in 0..trials {
                let tag = (n * 100 + si as u64) * 1000 + trial;
                let oracle =
                    HiddenFunction::build(group, hidden, derive_seed(60, tag)).unwrap();
                let config = SolverConfig::default().with_seed(derive_seed(61, tag));
                let result = solve_dihedral(&oracle, &config).unwrap();
                if &Subgroup::closure(group, &result.generators) == hidden {
                    hits += 1;
                }
            }
            let rate = hits as f64 / trials as f64;
            worst_margin = worst_margin.min(rate - bound);
            assert!(
                rate >= bound,
                "N={n} H={}: rate {rate} below 1-2/N = {bound}",
                hidden.describe()
            );
        }
    }
    pass(
        6,
        "reduction over every subgroup",
        format!("worst rate margin over 1-2/N: {worst_margin:.3}"),
    );
}

/// Criterion 7: the cyclic solver at N=64 recovers ⟨d⟩ for every divisor d
/// over 500 trials at a rate of at least 1 - 1/N - 3σ, using exactly
/// 2⌈log₂N⌉ + 2 = 14 queries per run.
#[test]
fn acceptance_07_cyclic_solver() {
    let n = 64u64;
    let trials = 500u64;
    let p = 1.0 - 1.0 / n as f64;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let threshold = p - 3.0 * sigma;
    let group = d(n);
    let mut worst_rate = 1.0f64;
    for divisor in (1..=n).filter(|v| n.is_multiple_of(*v)) {
        let hidden_d = if divisor == n { 0 } else { divisor };
        let gens = if hidden_d == 0 {
            vec![]
        } else {
            vec![group.rotation(hidden_d as i64)]
        };
        let hidden = Subgroup::closure(group, &gens);
        let mut hits = 0u64;
        for trial in 0..trials {
            let tag = divisor * 10_000 + trial;
            let oracle = HiddenFunction::build(group, &hidden, derive_seed(70, tag)).unwrap();
            let cyclic = oracle.restrict_to_cyclic();
            let result = solve_cyclic(&cyclic, derive_seed(71, tag));
            assert_eq!(result.queries, cyclic_sample_count(n));
            assert_eq!(result.queries, 14);
            if result.generator == hidden_d {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        worst_rate = worst_rate.min(rate);
        assert!(
            rate >= threshold,
            "d={hidden_d}: rate {rate} below {threshold:.4}"
        );
    }
    pass(
        7,
        "cyclic solver",
        format!("worst divisor rate {worst_rate:.4}, threshold {threshold:.4}"),
    );
}

/// Criterion 8: representation identities. Σd² = 2N exactly for N ≤ 256;
/// homomorphism and unitarity exhaustively for N ≤ 16; Î_H(ρ) proportional
/// to P_ρ^H with the reported scalar for every subgroup of D_N, N ≤ 8; the
/// coset corollary at the same tolerance.
#[test]
fn acceptance_08_representation_identities() {
    for n in 1..=256u64 {
        assert_eq!(irreps_of_dihedral(d(n)).sum_of_squared_dims(), 2 * n);
    }

    let mut worst_alg = 0.0f64;
    for n in 1..=16u64 {
        let group = d(n);
        let set = irreps_of_dihedral(group);
        for rho in set.irreps() {
            for x in group.elements() {
                let mx = rho.matrix(x);
                let adjoint = ndarray::Array2::from_shape_fn(
                    (rho.dim(), rho.dim()),
                    |(i, j)| mx[(j, i)].conj(),
                );
                let eye = ndarray::Array2::from_shape_fn((rho.dim(), rho.dim()), |(i, j)| {
                    num_complex::Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
                });
                worst_alg = worst_alg.max(rep_deviation(&mx.dot(&adjoint), &eye));
                for y in group.elements() {
                    let lhs = rho.matrix(group.multiply(x, y));
                    worst_alg = worst_alg.max(rep_deviation(&lhs, &mx.dot(&rho.matrix(y))));
                }
            }
        }
    }
    assert!(worst_alg < 1e-12, "homomorphism/unitarity deviation {worst_alg}");

    let mut worst_indicator = 0.0f64;
    for n in 1..=8u64 {
        let group = d(n);
        let set = irreps_of_dihedral(group);
        for hidden in all_subgroups(group) {
            let report = verify_indicator_theorem(&hidden, &set);
            worst_indicator = worst_indicator.max(report.max_deviation);
            assert!(report.passes(1e-10), "N={n} H={}", hidden.describe());
            for s in group.elements() {
                let dev = coset_corollary_deviation(s, &hidden, &set);
                worst_indicator = worst_indicator.max(dev);
                assert!(dev < 1e-10, "N={n} H={} s={s}", hidden.describe());
            }
        }
    }
    pass(
        8,
        "representation identities",
        format!(
            "algebra deviation {worst_alg:.2e}, indicator/corollary deviation {worst_indicator:.2e}"
        ),
    );
}

/// Criterion 9: total-variation distance between the simulated and
/// closed-form laws is below 1e-9 for every order ≤ 2 hidden subgroup,
/// N ≤ 64.
#[test]
fn acceptance_09_backend_equivalence() {
    let mut worst = 0.0f64;
    for n in 1..=64u64 {
        let group = d(n);
        let mut cases: Vec<(Subgroup, Order2Spec)> = vec![(
            Subgroup::trivial(group),
            Order2Spec::Trivial,
        )];
        for k0 in 0..n {
            cases.push((
                Subgroup::reflection(group, k0 as i64),
                Order2Spec::Reflection(k0),
            ));
        }
        if n % 2 == 0 {
            cases.push((
                Subgroup::closure(group, &[group.rotation(n as i64 / 2)]),
                Order2Spec::HalfTurn,
            ));
        }
        for (hidden, spec) in cases {
            let oracle = HiddenFunction::build(group, &hidden, derive_seed(90, n)).unwrap();
            let simulated = OutcomeDistribution::from_state(&run_circuit(&oracle).unwrap());
            let exact = OutcomeDistribution::closed_form(n, spec);
            let tv = simulated.total_variation(&exact);
            worst = worst.max(tv);
            assert!(tv < 1e-9, "N={n} {spec:?}: TV {tv}");
        }
    }
    pass(9, "backend equivalence", format!("max TV {worst:.2e}"));
}

/// Criterion 10: identical specs and seeds give byte-identical CSV, through
/// the command-line binary.
#[test]
fn acceptance_10_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_dhsp"))
            .args([
                "solve",
                "--n",
                "12",
                "--random",
                "--trials",
                "16",
                "--seed",
                "2024",
                "--out",
            ])
            .arg(&out)
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out.with_extension("csv")).unwrap()
    };
    let first = run("first");
    let second = run("second");
    assert!(!first.is_empty());
    assert_eq!(first, second, "CSV bytes differ between identical runs");

    // Same property in-process through the harness.
    let spec = ExperimentSpec {
        n: 12,
        selector: SubgroupSelector::Exhaustive,
        trials: 3,
        seed: 7,
        backend: Backend::ClosedForm,
        variant: StatisticVariant::CosMin,
    };
    let mut csv_a = Vec::new();
    let mut csv_b = Vec::new();
    harness::write_solve_csv(&harness::run_solve(&spec).unwrap().records, false, &mut csv_a)
        .unwrap();
    harness::write_solve_csv(&harness::run_solve(&spec).unwrap().records, false, &mut csv_b)
        .unwrap();
    assert_eq!(csv_a, csv_b);
    pass(
        10,
        "deterministic CSV",
        format!("{} identical bytes", first.len()),
    );
}

/// Extra guard used by criterion 3's threshold arithmetic: the peak scan at
/// the theorem's own sample size meets its bound on the majority branch.
#[test]
fn acceptance_peak_statistic_at_theorem_sample_size() {
    let n = 32u64;
    let trials = 200u64;
    let m = (64.0 * (n as f64).ln()).ceil() as u64;
    let p = 1.0 - 1.0 / (2.0 * n as f64);
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let threshold = p - 3.0 * sigma;
    for k0 in 1..n {
        let dist = OutcomeDistribution::closed_form(n, Order2Spec::Reflection(k0));
        let target = k0.min(n - k0);
        let mut hits = 0u64;
        for trial in 0..trials {
            let zs =
                draw_branch_samples(&dist, 0, m, derive_seed(35, k0 * 1000 + trial)).unwrap();
            let peak = peak_find(&zs, n, 0, StatisticVariant::CosMin).unwrap();
            if peak.k_tilde == target {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        assert!(rate >= threshold, "k0={k0}: {rate} < {threshold:.4}");
    }
}
