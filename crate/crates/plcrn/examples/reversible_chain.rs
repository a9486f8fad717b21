//! Reversible chains X0 <=> X1 <=> ... <=> Xn: closed-form positive steady
//! states, their residuals, the augmented rank pattern 2n, and the exact
//! mass action specialization.
//!
//! ```bash
//! cargo run -p plcrn --example reversible_chain
//! ```

use plcrn::chain::{chain_parametrization, chain_t_hat_check, make_chain, mass_action_chain_exact, ChainSpec};
use plcrn::rat::{format_rat, rat, rat_int};
use plcrn::steady::{relative_residual, Concentrations};

fn main() {
    // A three-pair chain with mixed fractional and negative orders.
    let spec = ChainSpec::new(
        vec![rat_int(2), rat(1, 3), rat_int(-1), rat_int(1)],
        vec![1.5, 0.8, 2.0],
        vec![0.6, 3.0, 0.25],
    )
    .unwrap();
    let sys = make_chain(&spec);

    println!("== chain with {} reversible pairs ==", spec.num_pairs());
    let orders: Vec<String> = spec.orders().iter().map(format_rat).collect();
    println!("kinetic orders: {}", orders.join(", "));

    let report = chain_t_hat_check(&spec);
    let t_hat = report.t_hat.as_ref().unwrap();
    println!(
        "augmented ranks: whole {} = blocks {:?}",
        t_hat.rank_whole, t_hat.rank_blocks
    );

    for tau in [0.1, 1.0, 10.0] {
        let x = chain_parametrization(&spec, tau);
        let point = Concentrations::new(x.clone(), x.len()).unwrap();
        let all: Vec<usize> = (0..sys.network().num_reactions()).collect();
        let residual = relative_residual(&sys, &all, &point);
        println!("\ntau = {tau}:");
        for (i, xi) in x.iter().enumerate() {
            println!("  x{i} = {xi:.9}");
        }
        println!("  steady state residual: {residual:.3e}");
    }

    println!("\n== mass action specialization (all orders = 1) ==");
    let ma = ChainSpec::new(
        vec![rat_int(1); 4],
        vec![1.0, 1.0, 2.0],
        vec![2.0, 3.0, 1.0],
    )
    .unwrap();
    let exact = mass_action_chain_exact(&ma, &rat(1, 1)).unwrap();
    println!("exact steady state at tau = 1 (rate-constant products):");
    for (i, xi) in exact.iter().enumerate() {
        println!("  x{i} = {}", format_rat(xi));
    }
}
