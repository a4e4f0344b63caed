//! Black-box hidden functions: the coset promise, evaluation counting, and
//! the replayable dump format.
//!
//! Run with: cargo run --release --example oracle_promise

use dihedral_hsp::oracle::write_oracle_dump;
use dihedral_hsp::{DihedralGroup, DihedralOracle, HiddenFunction, Subgroup};

fn main() -> dihedral_hsp::Result<()> {
    let g = DihedralGroup::new(4);
    let hidden = Subgroup::reflection(g, 1);
    let f = HiddenFunction::build(g, &hidden, 42)?;

    println!("hidden subgroup: {}", hidden.describe());
    println!("labels over D_4 (same label <=> same left coset):");
    for x in g.elements() {
        println!("  gamma{x} = {}", f.peek(x).raw());
    }

    println!("\npromise verified against the true H: {}", f.verify_promise(&hidden));
    let wrong = Subgroup::reflection(g, 2);
    println!(
        "promise against the wrong H = {}: {}",
        wrong.describe(),
        f.verify_promise(&wrong)
    );

    // Only evaluate() counts against the query budget.
    f.evaluate(g.element(0, 0));
    f.evaluate(g.element(1, 1));
    f.evaluate(g.element(0, 0));
    println!("\nevaluations charged: {}", f.eval_count());
    println!("simulation table reads (not charged): {}", f.sim_reads());

    println!("\nreplayable dump:");
    let mut dump = Vec::new();
    write_oracle_dump(&f, &mut dump)?;
    print!("{}", String::from_utf8_lossy(&dump));
    Ok(())
}
