//! The cyclic-group stage: sampling the orthogonal subgroup H-perp of
//! Z_N and recovering H by gcd.
//!
//! Run with: cargo run --release --example cyclic_hsp

use dihedral_hsp::abelian::{
    cyclic_subgroup_elements, orthogonal_distribution, recover_from_orthogonal, sample_orthogonal,
    solve_cyclic,
};
use dihedral_hsp::rng::SplitMix64;
use dihedral_hsp::{DihedralGroup, HiddenFunction, Subgroup};

fn main() -> dihedral_hsp::Result<()> {
    let n = 12u64;
    let d = 4u64; // hidden H = <4> = {0, 4, 8}
    let g = DihedralGroup::new(n);
    let oracle = HiddenFunction::build(g, &Subgroup::closure(g, &[g.rotation(d as i64)]), 5)?;
    let f = oracle.restrict_to_cyclic();

    println!("Z_{n} with hidden subgroup <{d}> = {:?}", cyclic_subgroup_elements(d, n));

    println!("\nexact law of the measured character index:");
    for (k, p) in orthogonal_distribution(&f).iter().enumerate() {
        if *p > 1e-12 {
            println!("  P[k={k}] = {p:.6}");
        }
    }

    let mut rng = SplitMix64::new(17);
    let draws: Vec<u64> = (0..8).map(|_| sample_orthogonal(&f, &mut rng).k).collect();
    println!("\n8 sampled character indices: {draws:?}");
    println!(
        "gcd recovery from those samples: <{}>",
        recover_from_orthogonal(&draws, n)
    );

    let result = solve_cyclic(&f, 23);
    println!(
        "\nsolve_cyclic: generator {} in {} queries (samples {:?})",
        result.generator, result.queries, result.samples
    );

    // Success-rate miniature across all divisors.
    println!("\nper-divisor success over 200 seeded runs:");
    for divisor in (1..=n).filter(|v| n.is_multiple_of(*v)) {
        let hidden_d = if divisor == n { 0 } else { divisor };
        let gens = if hidden_d == 0 {
            vec![]
        } else {
            vec![g.rotation(hidden_d as i64)]
        };
        let h = Subgroup::closure(g, &gens);
        let mut hits = 0;
        for trial in 0..200u64 {
            let oracle = HiddenFunction::build(g, &h, 1000 + trial)?;
            let r = solve_cyclic(&oracle.restrict_to_cyclic(), 2000 + trial);
            if r.generator == hidden_d {
                hits += 1;
            }
        }
        println!("  H = <{hidden_d}>: {hits}/200");
    }
    Ok(())
}
