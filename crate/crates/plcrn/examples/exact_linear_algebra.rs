//! The exact rational matrix kernel behind every independence verdict:
//! RREF, rank, nullspace, and linear solve without tolerances.
//!
//! ```bash
//! cargo run -p plcrn --example exact_linear_algebra
//! ```

use plcrn::linalg::{rank_additive, solve, RatMatrix, SolveOutcome};
use plcrn::rat::{format_rat, rat, rat_int};

fn main() {
    // The toy system's augmented kinetic-order matrix.
    let t_hat = RatMatrix::from_rows(vec![
        vec![rat_int(2), rat_int(0), rat(1, 3), rat_int(0)],
        vec![rat_int(0), rat_int(2), rat(2, 3), rat_int(1)],
        vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
        vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
    ]);
    println!("matrix: {t_hat:?}");

    let (reduced, pivots) = t_hat.rref();
    println!("RREF: {reduced:?}");
    println!("pivot columns: {pivots:?}");
    println!("rank: {}", t_hat.rank());

    println!("\nnullspace:");
    for vector in t_hat.nullspace() {
        let entries: Vec<String> = vector.iter().map(format_rat).collect();
        println!("  [{}]", entries.join(", "));
    }

    println!("\nsolving T_hat z = (1, 1, 1, 1):");
    let rhs = vec![rat_int(1); 4];
    match solve(&t_hat, &rhs).unwrap() {
        SolveOutcome::Solution {
            particular,
            nullspace,
        } => {
            let entries: Vec<String> = particular.iter().map(format_rat).collect();
            println!("  particular: [{}]", entries.join(", "));
            println!("  plus {} nullspace direction(s)", nullspace.len());
        }
        SolveOutcome::Inconsistent => println!("  inconsistent"),
    }

    // Rank additivity is the independence test: the sub-blocks of the toy
    // matrix have ranks 2 and 2 against a whole rank of 3.
    let left = t_hat.select_columns(&[0, 1]);
    let right = t_hat.select_columns(&[2, 3]);
    println!(
        "\nrank additivity (2 + 2 = {}?): {}",
        t_hat.rank(),
        rank_additive(&t_hat, &[&left, &right])
    );
}
