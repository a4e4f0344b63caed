//! Finding a hidden reflection subgroup {(0,0),(k0,1)} with the order-2
//! solver, inside its 89·log2(N) + 7 query budget.
//!
//! Run with: cargo run --release --example reflection_solver

use dihedral_hsp::solver::theorem_budget;
use dihedral_hsp::{
    DihedralGroup, DihedralOracle, HiddenFunction, Order2Outcome, SolverConfig, Subgroup,
};

fn main() -> dihedral_hsp::Result<()> {
    let n = 128u64;
    let k0 = 37u64;
    let g = DihedralGroup::new(n);
    let oracle = HiddenFunction::build(g, &Subgroup::reflection(g, k0 as i64), 3)?;

    let result = dihedral_hsp::solve_order_two(&oracle, &SolverConfig::default().with_seed(9))?;
    match result.outcome {
        Order2Outcome::K0(k) => println!("N = {n}: recovered k0 = {k} (true value {k0})"),
        Order2Outcome::Trivial => println!("N = {n}: reported trivial (a miss)"),
    }
    println!(
        "queries: {} of budget {:.0} (m' = {} experiment shots, branch {:?})",
        result.queries,
        result.budget,
        result.m_prime,
        result.branch
    );
    assert_eq!(oracle.eval_count(), result.queries);

    // The two fast paths answer from direct queries alone.
    let oracle = HiddenFunction::build(g, &Subgroup::reflection(g, 0), 3)?;
    let fast = dihedral_hsp::solve_order_two(&oracle, &SolverConfig::default())?;
    println!("\nk0 = 0 disposal: {:?} in {} queries", fast.outcome, fast.queries);

    let oracle = HiddenFunction::build(g, &Subgroup::reflection(g, n as i64 / 2), 3)?;
    let fast = dihedral_hsp::solve_order_two(&oracle, &SolverConfig::default())?;
    println!("k0 = N/2 disposal: {:?} in {} queries", fast.outcome, fast.queries);

    // Trivial hidden subgroups never produce a non-trivial answer.
    let oracle = HiddenFunction::build(g, &Subgroup::trivial(g), 3)?;
    let trivial = dihedral_hsp::solve_order_two(&oracle, &SolverConfig::default().with_seed(1))?;
    println!("trivial H: {:?} in {} queries", trivial.outcome, trivial.queries);

    println!("\nbudget growth: N -> 89*log2(N) + 7");
    for exp in [3u32, 5, 7, 10] {
        let n = 1u64 << exp;
        println!("  N = {n:5}: {:6.0}", theorem_budget(n));
    }
    Ok(())
}
