//! Query-count study across N: measured evaluations of the full solver
//! against the logarithmic budget, using the experiment harness.
//!
//! Run with: cargo run --release --example query_budget_study

use dihedral_hsp::harness::{run_solve, ExperimentSpec, SubgroupSelector};
use dihedral_hsp::{Backend, StatisticVariant};

fn main() -> dihedral_hsp::Result<()> {
    println!("random hidden subgroups, 40 trials per N, closed-form backend\n");
    println!("   N   success  mean queries  max queries   budget");
    for exp in 2..=9u32 {
        let n = 1u64 << exp;
        let run = run_solve(&ExperimentSpec {
            n,
            selector: SubgroupSelector::Random,
            trials: 40,
            seed: 0xC0FFEE + n,
            backend: Backend::ClosedForm,
            variant: StatisticVariant::CosMin,
        })?;
        let s = run.summary;
        println!(
            "{:4}   {:7.3}  {:12.1}  {:11}  {:7.0}",
            n, s.success_rate, s.mean_queries, s.max_queries, s.budget
        );
    }

    println!("\nqueries grow linearly in log N while the subgroup count grows like N.");
    Ok(())
}
