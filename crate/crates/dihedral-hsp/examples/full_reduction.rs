//! The complete solver: cyclic stage, quotient descent, and the order-2
//! hunt, with the reduction trace.
//!
//! Run with: cargo run --release --example full_reduction

use dihedral_hsp::{solve_dihedral, DihedralGroup, HiddenFunction, SolverConfig, Subgroup};

fn solve_and_report(n: u64, generators: &[(i64, u8)], seed: u64) -> dihedral_hsp::Result<()> {
    let g = DihedralGroup::new(n);
    let gens: Vec<_> = generators.iter().map(|&(a, b)| g.element(a, b)).collect();
    let hidden = Subgroup::closure(g, &gens);
    let oracle = HiddenFunction::build(g, &hidden, seed)?;

    let result = solve_dihedral(&oracle, &SolverConfig::default().with_seed(seed ^ 0xABCD))?;
    let recovered = Subgroup::closure(g, &result.generators);

    println!("N = {n}, hidden H = {} (order {})", hidden.describe(), hidden.order());
    let trace = &result.trace;
    println!(
        "  cyclic stage: X1 generator {} ({} queries, verified: {})",
        trace.x1_generator, trace.abelian_queries, trace.x1_verified
    );
    println!("  quotient order M = {}, round bound t = {}", trace.m, trace.t);
    for (i, round) in trace.rounds.iter().enumerate() {
        println!("  round {i}: {:?} in {} queries", round.outcome, round.queries);
    }
    println!(
        "  returned X = {:?}",
        result.generators.iter().map(|e| e.to_string()).collect::<Vec<_>>()
    );
    println!(
        "  <X> == H: {}   queries {} <= budget {:.0}\n",
        recovered == hidden,
        result.queries,
        result.budget
    );
    Ok(())
}

fn main() -> dihedral_hsp::Result<()> {
    // Order-6 subgroup of D_12 mixing rotations and reflections.
    solve_and_report(12, &[(4, 0), (1, 1)], 11)?;
    // Pure rotation subgroup: the cyclic stage does all the work.
    solve_and_report(30, &[(5, 0)], 12)?;
    // The whole group.
    solve_and_report(6, &[(1, 0), (0, 1)], 13)?;
    // A single reflection in a large group.
    solve_and_report(256, &[(101, 1)], 14)?;
    // Trivial hidden subgroup.
    solve_and_report(16, &[], 15)?;
    Ok(())
}
