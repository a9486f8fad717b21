//! Full analysis of the three-pool carbon cycle model: structure,
//! decomposition, both rank conditions, per-block steady states, and the
//! merged whole-network steady state.
//!
//! ```bash
//! cargo run -p plcrn --example carbon_cycle
//! ```

use plcrn::decomp::{finest_independent_decomposition, verify_t_hat_independence};
use plcrn::steady::{existence_verdict, SolverConfig, WholeOutcome};
use plcrn::testing;

fn main() {
    let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
    let net = sys.network();

    println!("== structure ==");
    println!("species: {}", net.num_species());
    println!("complexes: {}", net.num_complexes());
    println!("reactions: {}", net.num_reactions());
    println!("linkage classes: {}", net.num_linkage_classes());
    println!("rank N: {}", net.stoichiometric_matrix().rank());
    println!("deficiency: {}", net.deficiency().unwrap());

    println!("\n== decomposition ==");
    let d = finest_independent_decomposition(net);
    for (i, block) in d.blocks().iter().enumerate() {
        println!("block {i}: reactions {block:?}");
    }
    let report = verify_t_hat_independence(&sys, &d).unwrap();
    println!(
        "stoichiometric ranks: whole {} = blocks {:?}",
        report.rank_whole, report.rank_blocks
    );
    let t_hat = report.t_hat.as_ref().unwrap();
    println!(
        "augmented ranks: whole {} vs blocks {:?} -> independent: {}",
        t_hat.rank_whole, t_hat.rank_blocks, t_hat.independent
    );

    println!("\n== steady states ==");
    let verdict = existence_verdict(&sys, &SolverConfig::default());
    for (i, block) in verdict.per_block.iter().enumerate() {
        println!("block {i}: {block:?}");
    }
    match verdict.whole {
        WholeOutcome::Nonempty { witness, residual } => {
            println!("merged whole-network steady state (residual {residual:.3e}):");
            for (s, value) in witness.iter().enumerate() {
                println!("  {} = {value:.6}", net.species()[s].name);
            }
        }
        other => println!("unexpected outcome: {other:?}"),
    }
}
