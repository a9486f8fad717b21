//! The two-species counterexample: its finest decomposition is
//! stoichiometrically independent and every block has positive steady
//! states for all rates, yet the augmented rank condition fails and the
//! whole network's steady states exist only on a measure-zero set of rate
//! vectors (k2/k1 = (k4/k3)^6).
//!
//! ```bash
//! cargo run -p plcrn --example toy_counterexample
//! ```

use plcrn::decomp::{finest_independent_decomposition, verify_t_hat_independence};
use plcrn::steady::{binomial_parametrization, solve_network, BlockSolve, SolverConfig};
use plcrn::testing;

fn main() {
    let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
    let d = finest_independent_decomposition(sys.network());
    let report = verify_t_hat_independence(&sys, &d).unwrap();
    let t_hat = report.t_hat.as_ref().unwrap();

    println!("== rank conditions ==");
    println!(
        "stoichiometric: whole {} = blocks {:?} -> independent: {}",
        report.rank_whole, report.rank_blocks, report.stoich_independent
    );
    println!(
        "augmented: whole {} vs blocks {:?} -> independent: {}",
        t_hat.rank_whole, t_hat.rank_blocks, t_hat.independent
    );

    println!("\n== per-block families (exist for every rate vector) ==");
    for block in 0..2 {
        let family = binomial_parametrization(&sys, &d, block).unwrap();
        println!(
            "block {block}: x = {:.4} * tau^{}, free species index {}",
            family.coefficients[0],
            plcrn::rat::format_rat(&family.exponents[0]),
            family.free_index
        );
    }

    let cfg = SolverConfig {
        tol: 1e-10,
        ..SolverConfig::default()
    };

    println!("\n== whole network, compatible rates k = (1, 64, 1, 2) ==");
    let [k1, k2, k3, k4] = testing::toy_compatible_rates();
    println!("k2/k1 = {} and (k4/k3)^6 = {}", k2 / k1, (k4 / k3).powi(6));
    let compatible = testing::toy_system(k1, k2, k3, k4);
    match solve_network(&compatible, &cfg) {
        BlockSolve::Found { x, residual } => {
            println!("witness x = {x:?} (residual {residual:.3e})");
        }
        other => println!("unexpected: {other:?}"),
    }

    println!("\n== whole network, generic rates k = (1, 3, 1, 2) ==");
    let generic = testing::toy_system(1.0, 3.0, 1.0, 2.0);
    match solve_network(&generic, &cfg) {
        BlockSolve::NotFound { best_residual } => {
            println!("no witness in 64 starts; best residual {best_residual:.3e}");
            println!("(the block steady state lines only meet at the origin)");
        }
        other => println!("unexpected: {other:?}"),
    }
}
