//! Arithmetic in D_N: multiplication, inverses, subgroups and cosets.
//!
//! Run with: cargo run --release --example group_basics

use dihedral_hsp::group::enumerate_order_two_subgroups;
use dihedral_hsp::{DihedralGroup, Subgroup};

fn main() {
    let g = DihedralGroup::new(6);
    println!("D_{} has {} elements", g.n(), g.order());

    let r = g.rotation(2);
    let s = g.reflection(1);
    println!("({r}) * ({s}) = {}", g.multiply(r, s));
    println!("({s}) * ({r}) = {}  <- noncommutative", g.multiply(s, r));
    println!("inverse of {r} is {}", g.inverse(r));
    println!("reflections square to identity: ({s})^2 = {}", g.multiply(s, s));

    let h = Subgroup::closure(g, &[g.rotation(2), g.reflection(1)]);
    println!("\n<(2,0),(1,1)> has order {}:", h.order());
    for member in h.elements() {
        print!("  {member}");
    }
    println!();

    println!("\nleft cosets of H partition D_6:");
    let mut seen = std::collections::BTreeSet::new();
    for x in g.elements() {
        let rep = h.coset_representative(x);
        if seen.insert(rep) {
            let coset: Vec<String> = h
                .elements()
                .iter()
                .map(|&m| g.multiply(x, m).to_string())
                .collect();
            println!("  {rep} -> {}", coset.join(" "));
        }
    }

    let order2 = enumerate_order_two_subgroups(g);
    println!("\nD_6 has {} subgroups of order 2:", order2.len());
    for sub in &order2 {
        println!("  {}", sub.describe());
    }
}
