//! Reversible chains X0 <=> X1 <=> ... <=> Xn: generator, closed-form
//! positive steady state parametrization, and their independence report.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::decomp::{IndependenceReport, THatReport};
use crate::kinetics::KineticSystem;
use crate::linalg::RatMatrix;
use crate::network::{Complex, Decomposition, NetworkBuilder};
use crate::rat::{rat_from_f64, rat_to_f64, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainSpecError {
    #[error("a chain needs at least one reversible pair")]
    Empty,
    #[error("expected {expected} kinetic orders for {pairs} pairs, got {got}")]
    OrderCount {
        expected: usize,
        pairs: usize,
        got: usize,
    },
    #[error("expected {expected} backward rate constants, got {got}")]
    BackwardCount { expected: usize, got: usize },
    #[error("kinetic order of species X{0} must be nonzero")]
    ZeroOrder(usize),
    #[error("rate constant for pair {0} must be strictly positive and finite")]
    NonPositiveRate(usize),
}

/// Parameters of a reversible chain with `n` pairs: kinetic order f_i per
/// species X_i, forward constants k_i for X_i -> X_{i+1}, and backward
/// constants k_i' for X_{i+1} -> X_i.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    orders: Vec<Rat>,
    forward: Vec<f64>,
    backward: Vec<f64>,
}

impl ChainSpec {
    pub fn new(orders: Vec<Rat>, forward: Vec<f64>, backward: Vec<f64>) -> Result<Self, ChainSpecError> {
        let pairs = forward.len();
        if pairs == 0 {
            return Err(ChainSpecError::Empty);
        }
        if backward.len() != pairs {
            return Err(ChainSpecError::BackwardCount {
                expected: pairs,
                got: backward.len(),
            });
        }
        if orders.len() != pairs + 1 {
            return Err(ChainSpecError::OrderCount {
                expected: pairs + 1,
                pairs,
                got: orders.len(),
            });
        }
        if let Some(i) = orders.iter().position(Rat::is_zero) {
            return Err(ChainSpecError::ZeroOrder(i));
        }
        for (i, k) in forward.iter().chain(backward.iter()).enumerate() {
            if !(k.is_finite() && *k > 0.0) {
                return Err(ChainSpecError::NonPositiveRate(i % pairs));
            }
        }
        Ok(ChainSpec {
            orders,
            forward,
            backward,
        })
    }

    /// Number of reversible pairs n.
    pub fn num_pairs(&self) -> usize {
        self.forward.len()
    }

    /// Number of species, n + 1.
    pub fn num_species(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Rat] {
        &self.orders
    }

    pub fn forward(&self) -> &[f64] {
        &self.forward
    }

    pub fn backward(&self) -> &[f64] {
        &self.backward
    }

    /// True when every kinetic order is one (mass action).
    pub fn is_mass_action(&self) -> bool {
        self.orders.iter().all(Rat::is_one)
    }
}

/// Builds the kinetic system of the chain: n+1 unit complexes and 2n
/// reactions, interleaved as (forward_0, backward_0, forward_1, ...).
///
/// The kinetic order of reactant X_i is f_i in both directions touching
/// it, so the system is reactant-determined by construction.
pub fn make_chain(spec: &ChainSpec) -> KineticSystem {
    let n = spec.num_pairs();
    let m = n + 1;
    let mut b = NetworkBuilder::new();
    let species: Vec<usize> = (0..m)
        .map(|i| b.add_species(&format!("X{i}")).unwrap())
        .collect();
    let unit = |s: usize| Complex::from_terms(&[(s, Rat::one())]).unwrap();
    for i in 0..n {
        b.add_reaction(unit(species[i]), unit(species[i + 1])).unwrap();
        b.add_reaction(unit(species[i + 1]), unit(species[i])).unwrap();
    }
    let network = b.build().unwrap();

    let mut orders = RatMatrix::zeros(2 * n, m);
    let mut rates = Vec::with_capacity(2 * n);
    for i in 0..n {
        orders[(2 * i, i)] = spec.orders[i].clone();
        orders[(2 * i + 1, i + 1)] = spec.orders[i + 1].clone();
        rates.push(spec.forward[i]);
        rates.push(spec.backward[i]);
    }
    KineticSystem::new(network, orders, rates).unwrap()
}

/// The decomposition of a chain into its n reversible pairs, which is its
/// finest independent decomposition.
pub fn pairs_decomposition(spec: &ChainSpec) -> Decomposition {
    let n = spec.num_pairs();
    Decomposition::new((0..n).map(|i| vec![2 * i, 2 * i + 1]).collect(), 2 * n)
        .expect("pair blocks partition the chain reactions")
}

/// Evaluates the closed-form positive steady state at parameter `tau`:
///
/// ```text
/// x_i = (k_i' ... k_{n-1}' / k_i ... k_{n-1})^(1/f_i) * tau^(f_n/f_i)
/// x_n = tau
/// ```
///
/// The rate-constant products are accumulated in log space so long chains
/// cannot overflow.
pub fn chain_parametrization(spec: &ChainSpec, tau: f64) -> Vec<f64> {
    assert!(tau > 0.0 && tau.is_finite(), "tau must be positive");
    if let Some(exact) = rat_from_f64(tau).and_then(|t| mass_action_chain_exact(spec, &t)) {
        return exact.iter().map(rat_to_f64).collect();
    }
    let n = spec.num_pairs();
    let f: Vec<f64> = spec.orders.iter().map(rat_to_f64).collect();
    let ln_tau = tau.ln();
    let mut x = vec![0.0; n + 1];
    x[n] = tau;
    // Suffix sum of ln(k_t'/k_t), built from the tail inward.
    let mut log_ratio = 0.0;
    for i in (0..n).rev() {
        log_ratio += spec.backward[i].ln() - spec.forward[i].ln();
        x[i] = ((log_ratio + f[n] * ln_tau) / f[i]).exp();
    }
    x
}

/// Exact mass action specialization: when every f_i = 1 the closed form
/// reduces to x_i = (k_i' ... k_{n-1}' / k_i ... k_{n-1}) * tau, which is a
/// product of exact rationals. Returns `None` unless the chain is mass
/// action.
pub fn mass_action_chain_exact(spec: &ChainSpec, tau: &Rat) -> Option<Vec<Rat>> {
    if !spec.is_mass_action() {
        return None;
    }
    let n = spec.num_pairs();
    let mut x = vec![Rat::zero(); n + 1];
    x[n] = tau.clone();
    let mut ratio = Rat::one();
    for i in (0..n).rev() {
        let kf = rat_from_f64(spec.forward[i])?;
        let kb = rat_from_f64(spec.backward[i])?;
        ratio *= kb / kf;
        x[i] = &ratio * tau;
    }
    Some(x)
}

/// Independence report of the pairs decomposition.
///
/// The whole-network augmented rank follows the per-block construction
/// (one column per block and reactant), matching how the chain's merged
/// steady state system is assembled: rank 2n against block ranks of two
/// each. Interior species are reactants of two adjacent blocks, so the
/// single-column convention of `t_hat_matrix` would undercount here; the
/// report flags that through `shared_reactants`.
pub fn chain_t_hat_check(spec: &ChainSpec) -> IndependenceReport {
    let sys = make_chain(spec);
    let d = pairs_decomposition(spec);
    let mut report = crate::decomp::verify_independence(sys.network(), &d);
    let stacked = sys
        .stacked_t_hat(&d)
        .expect("chains are reactant-determined by construction");
    let rank_whole = stacked.matrix.rank();
    let rank_blocks: Vec<usize> = (0..d.num_blocks())
        .map(|i| sys.t_hat_sub(&d, i).unwrap().rank())
        .collect();
    let shared_reactants = sys
        .t_hat_matrix(&d)
        .map(|t| t.shared_reactants)
        .unwrap_or(false);
    report.t_hat = Some(THatReport {
        independent: rank_whole == rank_blocks.iter().sum::<usize>(),
        rank_whole,
        rank_blocks,
        shared_reactants,
    });
    report
}
