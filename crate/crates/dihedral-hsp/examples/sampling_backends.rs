//! The coset-sampling experiment two ways: dense state-vector simulation of
//! the circuit versus the closed-form outcome law, plus seeded draws.
//!
//! Run with: cargo run --release --example sampling_backends

use dihedral_hsp::sampler::{draw_samples, run_circuit};
use dihedral_hsp::{
    Backend, DihedralGroup, HiddenFunction, Order2Spec, OutcomeDistribution, Subgroup,
};

fn main() -> dihedral_hsp::Result<()> {
    let n = 8u64;
    let k0 = 3u64;
    let g = DihedralGroup::new(n);
    let oracle = HiddenFunction::build(g, &Subgroup::reflection(g, k0 as i64), 7)?;

    let simulated = OutcomeDistribution::from_state(&run_circuit(&oracle)?);
    let exact = OutcomeDistribution::closed_form(n, Order2Spec::Reflection(k0));

    println!("N = {n}, hidden reflection k0 = {k0}");
    println!("outcome   state-vector   closed-form");
    for b in 0..2u8 {
        for a in 0..n {
            println!(
                "({a},{b})     {:>12.8}   {:>12.8}",
                simulated.prob(a, b),
                exact.prob(a, b)
            );
        }
    }
    println!(
        "total variation between backends: {:.3e}",
        simulated.total_variation(&exact)
    );
    println!(
        "branch masses: P[b=0] = {:.6}, P[b=1] = {:.6}",
        exact.branch_mass(0),
        exact.branch_mass(1)
    );

    let z = exact.conditional_z(0)?;
    println!("\nconditional law of the first register given b=0:");
    for (zv, p) in z.iter().enumerate() {
        println!("  P[Z={zv}] = {p:.6}");
    }

    let m = 2000;
    let set = draw_samples(&exact, m, 99, Backend::ClosedForm);
    let mut counts = vec![0u64; (2 * n) as usize];
    for o in &set.outcomes {
        counts[(o.b as u64 * n + o.a) as usize] += 1;
    }
    println!("\n{m} seeded draws (seed {}):", set.seed);
    for b in 0..2u8 {
        for a in 0..n {
            let c = counts[(b as u64 * n + a) as usize];
            println!(
                "  ({a},{b}): {c:5}  empirical {:.4} vs exact {:.4}",
                c as f64 / m as f64,
                exact.prob(a, b)
            );
        }
    }
    Ok(())
}
