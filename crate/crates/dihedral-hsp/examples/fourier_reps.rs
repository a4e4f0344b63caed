//! Noncommutative Fourier analysis on D_N: irreps, the indicator-function
//! theorem, and weak Fourier sampling of coset states.
//!
//! Run with: cargo run --release --example fourier_reps

use dihedral_hsp::rep::{
    coset_corollary_deviation, irreps_of_dihedral, projection_onto_fixed,
    verify_indicator_theorem, weak_sampling_distribution,
};
use dihedral_hsp::{DihedralGroup, Subgroup};

fn main() {
    let g = DihedralGroup::new(6);
    let set = irreps_of_dihedral(g);

    println!("irreps of D_6 (sum of squared dims = {}):", set.sum_of_squared_dims());
    for rho in set.irreps() {
        println!("  {} : dimension {}", rho.label(), rho.dim());
    }

    let h = Subgroup::reflection(g, 1);
    println!("\nH = {} (order {})", h.describe(), h.order());

    println!("\nfixed-space projections P^H per irrep:");
    for rho in set.irreps() {
        let p = projection_onto_fixed(rho, &h);
        println!("  {}: {:?}", rho.label(), p.iter().collect::<Vec<_>>());
    }

    println!("\nindicator theorem: transform of 1_H versus scalar * P^H");
    let report = verify_indicator_theorem(&h, &set);
    println!("  irrep    d  scalar      max deviation");
    for row in &report.rows {
        println!(
            "  {:6} {:2}  {:.6}   {:.2e}",
            row.irrep_label, row.d, row.scalar, row.max_deviation
        );
    }

    let worst = g
        .elements()
        .map(|s| coset_corollary_deviation(s, &h, &set))
        .fold(0.0f64, f64::max);
    println!("coset corollary max deviation over all representatives: {worst:.2e}");

    println!("\nweak Fourier sampling of the coset state sH:");
    for s in [g.identity(), g.rotation(1), g.reflection(3)] {
        let w = weak_sampling_distribution(s, &h, &set);
        let masses: Vec<String> = (0..set.len())
            .map(|i| format!("{}={:.4}", w.labels()[i], w.block_mass(i)))
            .collect();
        println!("  s = {s}: {}  (total {:.6})", masses.join(" "), w.total_mass());
    }
    println!("block masses are independent of the coset representative.");
}
