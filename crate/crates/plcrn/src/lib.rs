//! Analysis toolkit for power-law chemical reaction networks.
//!
//! The crate decomposes a network into stoichiometrically independent
//! subnetworks, decides the two rank conditions (stoichiometric and
//! augmented kinetic-order independence), solves positive steady states
//! per subnetwork, reconstructs whole-network steady states by merging the
//! per-block solutions, and evaluates the closed-form parametrization of
//! reversible chains.
//!
//! Structural decisions are exact: stoichiometric coefficients and kinetic
//! orders are arbitrary-precision rationals and every rank is computed by
//! exact elimination. Rate constants are floats and feed the numeric
//! solvers only.
//!
//! Start from [`parse::parse_network`] for the text format, or build
//! networks programmatically through [`network::NetworkBuilder`]; the
//! `examples/` directory walks through each capability.

pub mod chain;
pub mod decomp;
pub mod kinetics;
pub mod linalg;
pub mod network;
pub mod parse;
pub mod rat;
pub mod report;
pub mod steady;
pub mod testing;

pub use chain::{make_chain, ChainSpec};
pub use decomp::{
    finest_independent_decomposition, subnetworks_identical, verify_independence,
    verify_t_hat_independence, IndependenceReport,
};
pub use kinetics::KineticSystem;
pub use linalg::RatMatrix;
pub use network::{Complex, Decomposition, Network, NetworkBuilder, Reaction, Species};
pub use steady::{
    binomial_parametrization, existence_verdict, merge_steady_states, sfrf, solve_network,
    solve_subnetwork, BlockSolve, Concentrations, MonomialFamily, SolverConfig, Verdict,
};
