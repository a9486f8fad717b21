//! Reference networks used throughout the tests and examples.
//!
//! The carbon cycle model and the two-species toy system are the standard
//! worked examples for the independence conditions: the first satisfies
//! both stoichiometric and T-hat independence, the second is independent
//! but fails the T-hat condition.

use crate::chain::ChainSpec;
use crate::kinetics::KineticSystem;
use crate::linalg::RatMatrix;
use crate::network::{Complex, Network, NetworkBuilder};
use crate::rat::{rat, rat_int, Rat};

fn complex(terms: &[(usize, Rat)]) -> Complex {
    Complex::from_terms(terms).expect("fixture complexes are valid")
}

/// Three-pool pre-industrial carbon cycle over land, atmosphere, and ocean
/// carbon (X1, X2, X3):
///
/// ```text
/// R1: X1 + 2 X2 -> 2 X1 + X2      orders X1 = 1, X2 = 1
/// R2: X1 + X2   -> 2 X2           orders X1 = 2, X2 = 1
/// R3: X2        -> X3             mass action
/// R4: X3        -> X2             mass action
/// ```
///
/// The kinetic orders instantiate the generic pattern with f11 = 1,
/// f12 = 2, f21 = f22 = 1, which keeps the X1 rows of the two exchange
/// reactions distinct.
pub fn carbon_cycle(k1: f64, k2: f64, k3: f64, k4: f64) -> KineticSystem {
    let mut b = NetworkBuilder::new();
    let x1 = b.add_species("X1").unwrap();
    let x2 = b.add_species("X2").unwrap();
    let x3 = b.add_species("X3").unwrap();
    b.add_reaction(
        complex(&[(x1, rat_int(1)), (x2, rat_int(2))]),
        complex(&[(x1, rat_int(2)), (x2, rat_int(1))]),
    )
    .unwrap();
    b.add_reaction(
        complex(&[(x1, rat_int(1)), (x2, rat_int(1))]),
        complex(&[(x2, rat_int(2))]),
    )
    .unwrap();
    b.add_reaction(complex(&[(x2, rat_int(1))]), complex(&[(x3, rat_int(1))]))
        .unwrap();
    b.add_reaction(complex(&[(x3, rat_int(1))]), complex(&[(x2, rat_int(1))]))
        .unwrap();
    let network = b.build().unwrap();
    let orders = RatMatrix::from_i64_rows(&[
        &[1, 1, 0], // R1
        &[2, 1, 0], // R2
        &[0, 1, 0], // R3
        &[0, 0, 1], // R4
    ]);
    KineticSystem::new(network, orders, vec![k1, k2, k3, k4]).unwrap()
}

/// Two-species toy system whose independent decomposition fails T-hat
/// independence:
///
/// ```text
/// R1: 2X    -> X          orders X = 2
/// R2: 2Y    -> X + 2Y     orders Y = 2
/// R3: X + Y -> X          orders X = 1/3, Y = 2/3
/// R4: Y     -> 2Y         orders Y = 1
/// ```
///
/// Its per-block steady states exist for every rate vector, but the whole
/// network has positive steady states only when k2/k1 = (k4/k3)^6.
pub fn toy_system(k1: f64, k2: f64, k3: f64, k4: f64) -> KineticSystem {
    let mut b = NetworkBuilder::new();
    let x = b.add_species("X").unwrap();
    let y = b.add_species("Y").unwrap();
    b.add_reaction(complex(&[(x, rat_int(2))]), complex(&[(x, rat_int(1))]))
        .unwrap();
    b.add_reaction(
        complex(&[(y, rat_int(2))]),
        complex(&[(x, rat_int(1)), (y, rat_int(2))]),
    )
    .unwrap();
    b.add_reaction(
        complex(&[(x, rat_int(1)), (y, rat_int(1))]),
        complex(&[(x, rat_int(1))]),
    )
    .unwrap();
    b.add_reaction(complex(&[(y, rat_int(1))]), complex(&[(y, rat_int(2))]))
        .unwrap();
    let network = b.build().unwrap();
    let orders = RatMatrix::from_rows(vec![
        vec![rat_int(2), rat_int(0)],
        vec![rat_int(0), rat_int(2)],
        vec![rat(1, 3), rat(2, 3)],
        vec![rat_int(0), rat_int(1)],
    ]);
    KineticSystem::new(network, orders, vec![k1, k2, k3, k4]).unwrap()
}

/// Rates for which the toy system's whole network has positive steady
/// states: k = (1, 64, 1, 2) satisfies k2/k1 = (k4/k3)^6.
pub fn toy_compatible_rates() -> [f64; 4] {
    [1.0, 64.0, 1.0, 2.0]
}

/// Mass action X <=> Y with forward rate `k1` and backward rate `k2`.
pub fn xy_reversible(k1: f64, k2: f64) -> KineticSystem {
    let mut b = NetworkBuilder::new();
    let x = b.add_species("X").unwrap();
    let y = b.add_species("Y").unwrap();
    b.add_reaction(complex(&[(x, rat_int(1))]), complex(&[(y, rat_int(1))]))
        .unwrap();
    b.add_reaction(complex(&[(y, rat_int(1))]), complex(&[(x, rat_int(1))]))
        .unwrap();
    KineticSystem::mass_action(b.build().unwrap(), vec![k1, k2]).unwrap()
}

/// Single irreversible reaction X -> Y under mass action; its only
/// steady states have x = 0, so the positive steady state set is empty.
pub fn xy_irreversible(k: f64) -> KineticSystem {
    let mut b = NetworkBuilder::new();
    let x = b.add_species("X").unwrap();
    let y = b.add_species("Y").unwrap();
    b.add_reaction(complex(&[(x, rat_int(1))]), complex(&[(y, rat_int(1))]))
        .unwrap();
    KineticSystem::mass_action(b.build().unwrap(), vec![k]).unwrap()
}

/// Two disjoint reversible pairs X <=> Y and Y <=> Z over three species;
/// used for subnetwork-identity checks.
pub fn two_pairs_xyz() -> Network {
    let mut b = NetworkBuilder::new();
    let x = b.add_species("X").unwrap();
    let y = b.add_species("Y").unwrap();
    let z = b.add_species("Z").unwrap();
    let cx = complex(&[(x, rat_int(1))]);
    let cy = complex(&[(y, rat_int(1))]);
    let cz = complex(&[(z, rat_int(1))]);
    b.add_reaction(cx.clone(), cy.clone()).unwrap();
    b.add_reaction(cy.clone(), cx).unwrap();
    b.add_reaction(cy.clone(), cz.clone()).unwrap();
    b.add_reaction(cz, cy).unwrap();
    b.build().unwrap()
}

/// Shorthand for a chain spec; panics on invalid input.
pub fn chain_spec(orders: &[Rat], forward: &[f64], backward: &[f64]) -> ChainSpec {
    ChainSpec::new(orders.to_vec(), forward.to_vec(), backward.to_vec())
        .expect("fixture chain specs are valid")
}

/// All kinetic fixtures, for property-style sweeps.
pub fn all_fixtures() -> Vec<KineticSystem> {
    vec![
        xy_reversible(2.0, 6.0),
        xy_irreversible(1.5),
        carbon_cycle(1.0, 2.0, 0.5, 3.0),
        toy_system(1.0, 64.0, 1.0, 2.0),
        crate::chain::make_chain(&chain_spec(
            &[rat_int(1), rat_int(2), rat(1, 3)],
            &[1.0, 2.5],
            &[0.5, 4.0],
        )),
    ]
}

/// Exhaustive oracle for the finest independent decomposition: enumerates
/// every set partition of the reaction set and returns the maximum block
/// count among the stoichiometrically independent ones.
///
/// The trivial partition is always independent, so the result is >= 1.
/// Only usable for small reaction counts (Bell number growth).
pub fn max_independent_block_count(net: &Network) -> usize {
    let n = net.stoichiometric_matrix();
    let rank_whole = n.rank();
    let r = net.num_reactions();
    let mut best = 1;
    // Restricted growth strings enumerate set partitions exactly once.
    let mut assignment = vec![0usize; r];
    loop {
        let num_blocks = assignment.iter().copied().max().unwrap_or(0) + 1;
        if num_blocks > best {
            let mut blocks = vec![Vec::new(); num_blocks];
            for (reaction, &block) in assignment.iter().enumerate() {
                blocks[block].push(reaction);
            }
            let sum: usize = blocks
                .iter()
                .map(|block| n.select_columns(block).rank())
                .sum();
            if sum == rank_whole {
                best = num_blocks;
            }
        }
        // Advance to the next restricted growth string.
        let mut pos = r;
        loop {
            if pos == 1 {
                return best;
            }
            pos -= 1;
            let cap = assignment[..pos].iter().copied().max().unwrap_or(0) + 1;
            if assignment[pos] < cap {
                assignment[pos] += 1;
                for slot in assignment.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Random small network for oracle sweeps: up to `max_species` species and
/// up to `max_reactions` reactions with small integer stoichiometry.
pub fn random_small_network<R: rand::Rng>(
    rng: &mut R,
    max_species: usize,
    max_reactions: usize,
) -> Network {
    loop {
        let m = rng.gen_range(2..=max_species);
        let r = rng.gen_range(1..=max_reactions);
        let mut b = NetworkBuilder::new();
        for i in 0..m {
            b.add_species(&format!("S{i}")).unwrap();
        }
        let random_complex = |rng: &mut R| {
            let terms: Vec<(usize, Rat)> = (0..m)
                .filter_map(|s| {
                    let coeff = rng.gen_range(0..=2i64);
                    (coeff > 0 && rng.gen_bool(0.6)).then(|| (s, rat_int(coeff)))
                })
                .collect();
            complex(&terms)
        };
        let mut ok = true;
        for _ in 0..r {
            let mut placed = false;
            for _ in 0..20 {
                let reactant = random_complex(rng);
                let product = random_complex(rng);
                if reactant != product && b.add_reaction(reactant, product).is_ok() {
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if let Ok(net) = b.build() {
            return net;
        }
    }
}
