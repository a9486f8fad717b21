//! Power-law kinetic systems over a network: kinetic order matrices, rate
//! constants, reactant-determined checks, and the augmented matrices used
//! by the independence conditions.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::RatMatrix;
use crate::network::{Decomposition, ModelError, Network};
use crate::rat::{rat_from_f64, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KineticsError {
    /// Two reactions share a reactant complex but carry different kinetic
    /// order rows, so per-complex kinetic columns are ill-defined.
    #[error("kinetics are not reactant-determined: reactions {0} and {1} share a reactant complex but differ in kinetic orders")]
    NotReactantDetermined(usize, usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A network equipped with power-law kinetics: a rational kinetic order
/// matrix F (reactions x species) and strictly positive rate constants.
#[derive(Debug, Clone, PartialEq)]
pub struct KineticSystem {
    network: Network,
    kinetic_orders: RatMatrix,
    rates: Vec<f64>,
}

impl KineticSystem {
    pub fn new(
        network: Network,
        kinetic_orders: RatMatrix,
        rates: Vec<f64>,
    ) -> Result<Self, ModelError> {
        let (r, m) = (network.num_reactions(), network.num_species());
        if kinetic_orders.rows() != r || kinetic_orders.cols() != m {
            return Err(ModelError::KineticOrderShape {
                rows: r,
                cols: m,
                got_rows: kinetic_orders.rows(),
                got_cols: kinetic_orders.cols(),
            });
        }
        if rates.len() != r {
            return Err(ModelError::RateCount {
                expected: r,
                got: rates.len(),
            });
        }
        if let Some(index) = rates.iter().position(|&k| !(k > 0.0 && k.is_finite())) {
            return Err(ModelError::NonPositiveRate { index });
        }
        Ok(KineticSystem {
            network,
            kinetic_orders,
            rates,
        })
    }

    /// Mass action kinetics: each reaction's kinetic order row is the
    /// stoichiometry of its reactant complex.
    pub fn mass_action(network: Network, rates: Vec<f64>) -> Result<Self, ModelError> {
        let orders = mass_action_orders(&network);
        Self::new(network, orders, rates)
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn into_network(self) -> Network {
        self.network
    }

    /// The r x m kinetic order matrix.
    pub fn kinetic_orders(&self) -> &RatMatrix {
        &self.kinetic_orders
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// Returns a copy with the rate constants replaced.
    pub fn with_rates(&self, rates: Vec<f64>) -> Result<Self, ModelError> {
        Self::new(self.network.clone(), self.kinetic_orders.clone(), rates)
    }

    /// True iff reactions sharing a reactant complex share a kinetic order
    /// row exactly.
    pub fn is_plrdk(&self) -> bool {
        self.check_plrdk().is_ok()
    }

    fn check_plrdk(&self) -> Result<(), KineticsError> {
        let reactions = self.network.reactions();
        for i in 0..reactions.len() {
            for j in (i + 1)..reactions.len() {
                if reactions[i].reactant == reactions[j].reactant
                    && self.kinetic_orders.row(i) != self.kinetic_orders.row(j)
                {
                    return Err(KineticsError::NotReactantDetermined(i, j));
                }
            }
        }
        Ok(())
    }

    /// Reactions that are reactant-determined violations, as (i, j) pairs.
    pub fn plrdk_violations(&self) -> Vec<(usize, usize)> {
        let reactions = self.network.reactions();
        let mut out = Vec::new();
        for i in 0..reactions.len() {
            for j in (i + 1)..reactions.len() {
                if reactions[i].reactant == reactions[j].reactant
                    && self.kinetic_orders.row(i) != self.kinetic_orders.row(j)
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Distinct reactant complex indices in order of first appearance in
    /// the reaction list.
    pub fn reactant_complexes(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for reaction in self.network.reactions() {
            if !seen.contains(&reaction.reactant) {
                seen.push(reaction.reactant);
            }
        }
        seen
    }

    /// The m x n_r T-matrix: one column per distinct reactant complex,
    /// holding the shared kinetic order row of its reactions.
    ///
    /// Requires reactant-determined kinetics; the column order follows
    /// first appearance in the reaction list.
    pub fn t_matrix(&self) -> Result<TMatrix, KineticsError> {
        self.check_plrdk()?;
        let reactant_complexes = self.reactant_complexes();
        let m = self.network.num_species();
        let mut matrix = RatMatrix::zeros(m, reactant_complexes.len());
        for (col, &complex) in reactant_complexes.iter().enumerate() {
            let reaction = self
                .network
                .reactions()
                .iter()
                .position(|r| r.reactant == complex)
                .expect("reactant complex has at least one reaction");
            for i in 0..m {
                matrix[(i, col)] = self.kinetic_orders[(reaction, i)].clone();
            }
        }
        Ok(TMatrix {
            matrix,
            reactant_complexes,
        })
    }

    /// Reactant complexes of one decomposition block, in global column
    /// order of the T-matrix.
    fn block_reactants(&self, t: &TMatrix, block: &[usize]) -> Vec<usize> {
        t.reactant_complexes
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, complex)| {
                block
                    .iter()
                    .any(|&r| self.network.reactions()[r].reactant == complex)
            })
            .map(|(col, _)| col)
            .collect()
    }

    /// The (m + alpha) x n_r augmented matrix: T on top, one characteristic
    /// row per block marking the reactant complexes of its reactions.
    ///
    /// A complex that is a reactant in several blocks keeps a single column
    /// with a 1 in each of those block rows; [`THat::shared_reactants`]
    /// flags that situation.
    pub fn t_hat_matrix(&self, d: &Decomposition) -> Result<THat, KineticsError> {
        let t = self.t_matrix()?;
        let alpha = d.num_blocks();
        let n_r = t.reactant_complexes.len();
        let mut marks = RatMatrix::zeros(alpha, n_r);
        for (i, block) in d.blocks().iter().enumerate() {
            for col in self.block_reactants(&t, block) {
                marks[(i, col)] = Rat::one();
            }
        }
        let shared_reactants = (0..n_r).any(|col| {
            (0..alpha)
                .filter(|&i| !marks[(i, col)].is_zero())
                .count()
                > 1
        });
        Ok(THat {
            matrix: t.matrix.vstack(&marks),
            reactant_complexes: t.reactant_complexes,
            shared_reactants,
        })
    }

    /// The (m + 1) x n_{r,i} augmented matrix of one block: T restricted to
    /// the block's reactant complexes, with an all-ones row appended.
    pub fn t_hat_sub(&self, d: &Decomposition, i: usize) -> Result<RatMatrix, KineticsError> {
        let block = d.block(i)?;
        let t = self.t_matrix()?;
        let cols = self.block_reactants(&t, block);
        let restricted = t.matrix.select_columns(&cols);
        let ones = RatMatrix::from_rows(vec![vec![Rat::one(); cols.len()]]);
        Ok(restricted.vstack(&ones))
    }

    /// The (m + alpha)-row matrix with one column per (block, reactant
    /// complex of that block) pair: the block's T-column in the species
    /// rows and a single 1 in the block's own row.
    ///
    /// This is the column concatenation of the per-block augmented
    /// matrices; its transpose is the coefficient matrix of the stacked
    /// log-linear system used to merge per-block steady states. It agrees
    /// with [`Self::t_hat_matrix`] whenever no reactant complex is shared
    /// across blocks.
    pub fn stacked_t_hat(&self, d: &Decomposition) -> Result<StackedTHat, KineticsError> {
        let t = self.t_matrix()?;
        let m = self.network.num_species();
        let alpha = d.num_blocks();
        let mut columns = Vec::new();
        for (i, block) in d.blocks().iter().enumerate() {
            for col in self.block_reactants(&t, block) {
                columns.push((i, t.reactant_complexes[col], col));
            }
        }
        let mut matrix = RatMatrix::zeros(m + alpha, columns.len());
        for (out_col, &(block, _, t_col)) in columns.iter().enumerate() {
            for row in 0..m {
                matrix[(row, out_col)] = t.matrix[(row, t_col)].clone();
            }
            matrix[(m + block, out_col)] = Rat::one();
        }
        Ok(StackedTHat {
            matrix,
            columns: columns
                .into_iter()
                .map(|(block, complex, _)| (block, complex))
                .collect(),
        })
    }

    /// The n x n Kirchhoff Laplacian of the complex graph: for each
    /// reaction y -> y' with rate constant k, +k at (y', y) and -k at
    /// (y, y). Entries are exact rationals (each f64 converts exactly),
    /// so column sums vanish identically.
    pub fn laplacian(&self) -> RatMatrix {
        let n = self.network.num_complexes();
        let mut lap = RatMatrix::zeros(n, n);
        for (j, reaction) in self.network.reactions().iter().enumerate() {
            let k = rat_from_f64(self.rates[j]).expect("rates are finite by construction");
            lap[(reaction.product, reaction.reactant)] += &k;
            let diag = lap[(reaction.reactant, reaction.reactant)].clone();
            lap[(reaction.reactant, reaction.reactant)] = diag - k;
        }
        lap
    }
}

/// Kinetic order rows induced by reactant stoichiometry (mass action).
pub fn mass_action_orders(network: &Network) -> RatMatrix {
    let (r, m) = (network.num_reactions(), network.num_species());
    let mut orders = RatMatrix::zeros(r, m);
    for (j, reaction) in network.reactions().iter().enumerate() {
        let reactant = &network.complexes()[reaction.reactant];
        for (species, coeff) in reactant.terms() {
            orders[(j, species)] = coeff.clone();
        }
    }
    orders
}

/// T-matrix together with its column-to-complex indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix {
    pub matrix: RatMatrix,
    /// Complex index of each column, in first-appearance order.
    pub reactant_complexes: Vec<usize>,
}

/// Augmented T-matrix for a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct THat {
    pub matrix: RatMatrix,
    pub reactant_complexes: Vec<usize>,
    /// True when some reactant complex belongs to reactions in more than
    /// one block, in which case the single-column convention differs from
    /// the per-block stacked construction.
    pub shared_reactants: bool,
}

/// Column-per-(block, reactant) augmented matrix; see
/// [`KineticSystem::stacked_t_hat`].
#[derive(Debug, Clone, PartialEq)]
pub struct StackedTHat {
    pub matrix: RatMatrix,
    /// (block index, complex index) of each column.
    pub columns: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;
    use crate::network::{Complex, NetworkBuilder};
    use crate::rat::{rat, rat_int};
    use crate::testing;

    #[test]
    fn mass_action_is_reactant_determined() {
        for sys in testing::all_fixtures() {
            let ma = KineticSystem::mass_action(
                sys.network().clone(),
                vec![1.0; sys.network().num_reactions()],
            )
            .unwrap();
            assert!(ma.is_plrdk());
        }
    }

    #[test]
    fn toy_system_is_reactant_determined() {
        assert!(testing::toy_system(1.0, 1.0, 1.0, 1.0).is_plrdk());
    }

    #[test]
    fn shared_reactant_with_distinct_rows_is_not_rdk() {
        // A -> B and A -> C with different kinetic order rows.
        let mut b = NetworkBuilder::new();
        let a = b.add_species("A").unwrap();
        b.add_species("B").unwrap();
        b.add_species("C").unwrap();
        let ca = Complex::from_terms(&[(a, rat_int(1))]).unwrap();
        let cb = Complex::from_terms(&[(1, rat_int(1))]).unwrap();
        let cc = Complex::from_terms(&[(2, rat_int(1))]).unwrap();
        b.add_reaction(ca.clone(), cb).unwrap();
        b.add_reaction(ca, cc).unwrap();
        let net = b.build().unwrap();
        let orders = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[2, 0, 0]]);
        let sys = KineticSystem::new(net, orders, vec![1.0, 1.0]).unwrap();
        assert!(!sys.is_plrdk());
        assert_eq!(sys.plrdk_violations(), vec![(0, 1)]);
        assert!(matches!(
            sys.t_matrix(),
            Err(KineticsError::NotReactantDetermined(0, 1))
        ));
    }

    #[test]
    fn rejects_nonpositive_rates() {
        let sys = testing::xy_reversible(1.0, 1.0);
        assert!(matches!(
            sys.with_rates(vec![1.0, 0.0]),
            Err(ModelError::NonPositiveRate { index: 1 })
        ));
        assert!(sys.with_rates(vec![1.0, -2.0]).is_err());
        assert!(sys.with_rates(vec![1.0, f64::NAN]).is_err());
        assert!(sys.with_rates(vec![1.0]).is_err());
    }

    #[test]
    fn t_matrix_carbon_cycle() {
        // f11=1, f12=2, f21=f22=1 instantiation.
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        let t = sys.t_matrix().unwrap();
        assert_eq!(
            t.matrix,
            RatMatrix::from_i64_rows(&[&[1, 2, 0, 0], &[1, 1, 1, 0], &[0, 0, 0, 1]])
        );
        // Columns: X1+2X2 (complex 0), X1+X2 (complex 2), X2 (4), X3 (5).
        assert_eq!(t.reactant_complexes, vec![0, 2, 4, 5]);
    }

    #[test]
    fn t_matrix_toy() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        let t = sys.t_matrix().unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(0), rat(1, 3), rat_int(0)],
            vec![rat_int(0), rat_int(2), rat(2, 3), rat_int(1)],
        ]);
        assert_eq!(t.matrix, expected);
        // Columns: 2X (0), 2Y (2), X+Y (4), Y (5).
        assert_eq!(t.reactant_complexes, vec![0, 2, 4, 5]);
    }

    #[test]
    fn t_matrix_single_chain_link_is_diagonal() {
        let spec = testing::chain_spec(&[rat_int(3), rat(1, 2)], &[2.0], &[6.0]);
        let sys = crate::chain::make_chain(&spec);
        let t = sys.t_matrix().unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![rat_int(3), rat_int(0)],
            vec![rat_int(0), rat(1, 2)],
        ]);
        assert_eq!(t.matrix, expected);
    }

    #[test]
    fn t_hat_carbon_cycle() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        let d = Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        let t_hat = sys.t_hat_matrix(&d).unwrap();
        assert_eq!(
            t_hat.matrix,
            RatMatrix::from_i64_rows(&[
                &[1, 2, 0, 0],
                &[1, 1, 1, 0],
                &[0, 0, 0, 1],
                &[1, 1, 0, 0],
                &[0, 0, 1, 1],
            ])
        );
        assert!(!t_hat.shared_reactants);
        assert_eq!(t_hat.matrix.rank(), 4);
    }

    #[test]
    fn t_hat_toy() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        let d = Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        let t_hat = sys.t_hat_matrix(&d).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(0), rat(1, 3), rat_int(0)],
            vec![rat_int(0), rat_int(2), rat(2, 3), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
        ]);
        assert_eq!(t_hat.matrix, expected);
        assert_eq!(t_hat.matrix.rank(), 3);
    }

    #[test]
    fn t_hat_trivial_decomposition_appends_ones_row() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        let d = Decomposition::trivial(4);
        let t_hat = sys.t_hat_matrix(&d).unwrap();
        let t = sys.t_matrix().unwrap();
        assert_eq!(t_hat.matrix.rows(), t.matrix.rows() + 1);
        for col in 0..4 {
            assert_eq!(t_hat.matrix[(2, col)], rat_int(1));
        }
        // Rank can exceed rank(T) by at most one.
        assert!(t_hat.matrix.rank() <= t.matrix.rank() + 1);
        // And t_hat_sub of the single block coincides with it.
        assert_eq!(sys.t_hat_sub(&d, 0).unwrap(), t_hat.matrix);
    }

    #[test]
    fn t_hat_sub_carbon_blocks() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        let d = Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        let sub1 = sys.t_hat_sub(&d, 0).unwrap();
        assert_eq!(
            sub1,
            RatMatrix::from_i64_rows(&[&[1, 2], &[1, 1], &[0, 0], &[1, 1]])
        );
        assert_eq!(sub1.rank(), 2);
        let sub2 = sys.t_hat_sub(&d, 1).unwrap();
        assert_eq!(
            sub2,
            RatMatrix::from_i64_rows(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
        assert_eq!(sub2.rank(), 2);
    }

    #[test]
    fn t_hat_sub_toy_block_two() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        let d = Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        let sub = sys.t_hat_sub(&d, 1).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![rat(1, 3), rat_int(0)],
            vec![rat(2, 3), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        assert_eq!(sub, expected);
        assert_eq!(sub.rank(), 2);
    }

    #[test]
    fn stacked_t_hat_marks_shared_reactants() {
        // Chain of two links: X1 is a reactant in both blocks.
        let spec = testing::chain_spec(
            &[rat_int(1), rat_int(1), rat_int(1)],
            &[1.0, 1.0],
            &[2.0, 3.0],
        );
        let sys = crate::chain::make_chain(&spec);
        let d = Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        let t_hat = sys.t_hat_matrix(&d).unwrap();
        assert!(t_hat.shared_reactants);
        assert_eq!(t_hat.matrix.cols(), 3);
        assert_eq!(t_hat.matrix.rank(), 3);
        let stacked = sys.stacked_t_hat(&d).unwrap();
        assert_eq!(stacked.matrix.cols(), 4);
        assert_eq!(stacked.matrix.rank(), 4);
        assert_eq!(stacked.columns, vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
    }

    #[test]
    fn laplacian_reversible_pair() {
        let sys = testing::xy_reversible(1.0, 2.0);
        let lap = sys.laplacian();
        let expected = RatMatrix::from_rows(vec![
            vec![rat_int(-1), rat_int(2)],
            vec![rat_int(1), rat_int(-2)],
        ]);
        assert_eq!(lap, expected);
    }

    #[test]
    fn laplacian_column_sums_vanish_exactly() {
        for sys in testing::all_fixtures() {
            let lap = sys.laplacian();
            for j in 0..lap.cols() {
                let sum = (0..lap.rows()).fold(Rat::zero(), |acc, i| acc + lap[(i, j)].clone());
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn laplacian_carbon_cycle_pattern() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        let lap = sys.laplacian();
        // Nonzero only on the four reaction edges and their diagonals:
        // R1: 0->1, R2: 2->3, R3: 4->5, R4: 5->4.
        let nonzero: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| !lap[(i, j)].is_zero())
            .collect();
        let expected = vec![
            (0, 0),
            (1, 0),
            (2, 2),
            (3, 2),
            (4, 4),
            (4, 5),
            (5, 4),
            (5, 5),
        ];
        assert_eq!(nonzero, expected);
    }

    #[test]
    fn t_columns_match_kinetic_rows() {
        for sys in testing::all_fixtures() {
            if !sys.is_plrdk() {
                continue;
            }
            let t = sys.t_matrix().unwrap();
            for (j, reaction) in sys.network().reactions().iter().enumerate() {
                let col = t
                    .reactant_complexes
                    .iter()
                    .position(|&c| c == reaction.reactant)
                    .unwrap();
                for i in 0..sys.network().num_species() {
                    assert_eq!(t.matrix[(i, col)], sys.kinetic_orders()[(j, i)]);
                }
            }
        }
    }
}
