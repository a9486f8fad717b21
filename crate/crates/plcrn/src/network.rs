//! Structural chemical reaction networks: species, complexes, reactions,
//! and the matrices derived from them.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::RatMatrix;
use crate::rat::{format_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate species name `{0}`")]
    DuplicateSpecies(String),
    #[error("negative stoichiometric coefficient for species index {0}")]
    NegativeCoefficient(usize),
    #[error("reaction {0} has identical reactant and product complexes")]
    SelfLoopReaction(usize),
    #[error("network must contain at least one reaction")]
    NoReactions,
    #[error("species index {0} out of range")]
    SpeciesOutOfRange(usize),
    #[error("kinetic order matrix must be {rows}x{cols}, got {got_rows}x{got_cols}")]
    KineticOrderShape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("rate constant {index} is not strictly positive and finite")]
    NonPositiveRate { index: usize },
    #[error("expected {expected} rate constants, got {got}")]
    RateCount { expected: usize, got: usize },
    #[error("decomposition blocks must partition the reaction set")]
    InvalidDecomposition,
    #[error("block index {0} out of range")]
    BlockOutOfRange(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(&'static str),
}

/// A named species with a contiguous index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Species {
    pub id: usize,
    pub name: String,
}

/// A formal nonnegative rational combination of species.
///
/// Zero coefficients are never stored, so map equality is structural
/// equality of complexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complex {
    coefficients: BTreeMap<usize, Rat>,
}

impl Complex {
    /// The empty complex (the zero side of an inflow/outflow reaction).
    pub fn empty() -> Self {
        Complex {
            coefficients: BTreeMap::new(),
        }
    }

    /// Builds a complex from (species index, coefficient) terms, summing
    /// repeats and dropping zeros. Negative coefficients are rejected.
    pub fn from_terms(terms: &[(usize, Rat)]) -> Result<Self, ModelError> {
        let mut coefficients: BTreeMap<usize, Rat> = BTreeMap::new();
        for (species, coeff) in terms {
            if coeff < &Rat::zero() {
                return Err(ModelError::NegativeCoefficient(*species));
            }
            *coefficients.entry(*species).or_insert_with(Rat::zero) += coeff;
        }
        coefficients.retain(|_, c| !c.is_zero());
        Ok(Complex { coefficients })
    }

    pub fn coeff(&self, species: usize) -> Rat {
        self.coefficients.get(&species).cloned().unwrap_or_default()
    }

    /// Species indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coefficients.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Renders the complex with the given species names, e.g. `X1 + 2 X2`.
    pub fn display(&self, species: &[Species]) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        self.coefficients
            .iter()
            .map(|(&s, c)| {
                if c == &Rat::from_integer(1.into()) {
                    species[s].name.clone()
                } else {
                    format!("{} {}", format_rat(c), species[s].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A directed reaction between two complex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reaction {
    pub reactant: usize,
    pub product: usize,
}

/// A validated CRN: species, deduplicated complexes, and reactions.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    species: Vec<Species>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
}

/// Incremental constructor for [`Network`].
///
/// Complexes are interned by value in order of first appearance, matching
/// the convention that the complex count n counts distinct complexes.
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    species: Vec<Species>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_species(&mut self, name: &str) -> Result<usize, ModelError> {
        if self.species.iter().any(|s| s.name == name) {
            return Err(ModelError::DuplicateSpecies(name.to_string()));
        }
        let id = self.species.len();
        self.species.push(Species {
            id,
            name: name.to_string(),
        });
        Ok(id)
    }

    pub fn species_id(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s.name == name)
    }

    fn intern_complex(&mut self, complex: Complex) -> Result<usize, ModelError> {
        if let Some(species) = complex.support().find(|&s| s >= self.species.len()) {
            return Err(ModelError::SpeciesOutOfRange(species));
        }
        if let Some(idx) = self.complexes.iter().position(|c| c == &complex) {
            return Ok(idx);
        }
        self.complexes.push(complex);
        Ok(self.complexes.len() - 1)
    }

    /// Adds a reaction between two complexes; they are interned and must
    /// differ.
    pub fn add_reaction(&mut self, reactant: Complex, product: Complex) -> Result<usize, ModelError> {
        if reactant == product {
            return Err(ModelError::SelfLoopReaction(self.reactions.len()));
        }
        let reactant = self.intern_complex(reactant)?;
        let product = self.intern_complex(product)?;
        self.reactions.push(Reaction { reactant, product });
        Ok(self.reactions.len() - 1)
    }

    pub fn build(self) -> Result<Network, ModelError> {
        if self.reactions.is_empty() {
            return Err(ModelError::NoReactions);
        }
        Ok(Network {
            species: self.species,
            complexes: self.complexes,
            reactions: self.reactions,
        })
    }
}

impl Network {
    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    /// Number of species (m).
    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    /// Number of distinct complexes (n).
    pub fn num_complexes(&self) -> usize {
        self.complexes.len()
    }

    /// Number of reactions (r).
    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    /// The m x r stoichiometric matrix; column j is the reaction vector
    /// `product - reactant` of reaction j.
    pub fn stoichiometric_matrix(&self) -> RatMatrix {
        let m = self.num_species();
        let mut n = RatMatrix::zeros(m, self.num_reactions());
        for (j, reaction) in self.reactions.iter().enumerate() {
            let reactant = &self.complexes[reaction.reactant];
            let product = &self.complexes[reaction.product];
            for i in 0..m {
                n[(i, j)] = product.coeff(i) - reactant.coeff(i);
            }
        }
        n
    }

    /// The m x n molecularity matrix Y: coefficient of species i in complex j.
    pub fn molecularity_matrix(&self) -> RatMatrix {
        let mut y = RatMatrix::zeros(self.num_species(), self.num_complexes());
        for (j, complex) in self.complexes.iter().enumerate() {
            for (species, coeff) in complex.terms() {
                y[(species, j)] = coeff.clone();
            }
        }
        y
    }

    /// The n x r incidence matrix: -1 at the reactant, +1 at the product of
    /// each reaction. Satisfies `stoichiometric_matrix = Y * incidence`.
    pub fn incidence_matrix(&self) -> RatMatrix {
        let mut inc = RatMatrix::zeros(self.num_complexes(), self.num_reactions());
        for (j, reaction) in self.reactions.iter().enumerate() {
            inc[(reaction.reactant, j)] = crate::rat::rat_int(-1);
            inc[(reaction.product, j)] = crate::rat::rat_int(1);
        }
        inc
    }

    /// Connected components of the undirected complex graph, each sorted,
    /// ordered by smallest member.
    pub fn linkage_classes(&self) -> Vec<Vec<usize>> {
        let n = self.num_complexes();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for reaction in &self.reactions {
            let a = find(&mut parent, reaction.reactant);
            let b = find(&mut parent, reaction.product);
            if a != b {
                parent[b] = a;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..n {
            let root = find(&mut parent, c);
            groups.entry(root).or_default().push(c);
        }
        groups.into_values().collect()
    }

    /// Number of linkage classes (l).
    pub fn num_linkage_classes(&self) -> usize {
        self.linkage_classes().len()
    }

    /// Deficiency n - l - rank(N). Nonnegative for every CRN; a negative
    /// value signals an internal bug and is reported as an error.
    pub fn deficiency(&self) -> Result<usize, ModelError> {
        let n = self.num_complexes() as i64;
        let ell = self.num_linkage_classes() as i64;
        let s = self.stoichiometric_matrix().rank() as i64;
        let delta = n - ell - s;
        if delta < 0 {
            return Err(ModelError::InternalInvariant("deficiency came out negative"));
        }
        Ok(delta as usize)
    }
}

/// A partition of the reaction index set into disjoint nonempty blocks.
///
/// Each block induces a subnetwork over the full species set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    blocks: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Validates that `blocks` partitions `0..num_reactions`. Block contents
    /// are sorted; block order is preserved.
    pub fn new(blocks: Vec<Vec<usize>>, num_reactions: usize) -> Result<Self, ModelError> {
        let mut seen = vec![false; num_reactions];
        let mut total = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(ModelError::InvalidDecomposition);
            }
            for &r in block {
                if r >= num_reactions || seen[r] {
                    return Err(ModelError::InvalidDecomposition);
                }
                seen[r] = true;
                total += 1;
            }
        }
        if total != num_reactions {
            return Err(ModelError::InvalidDecomposition);
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        Ok(Decomposition { blocks })
    }

    /// The single-block decomposition.
    pub fn trivial(num_reactions: usize) -> Self {
        Decomposition {
            blocks: vec![(0..num_reactions).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks (alpha).
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> Result<&[usize], ModelError> {
        self.blocks
            .get(i)
            .map(Vec::as_slice)
            .ok_or(ModelError::BlockOutOfRange(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use crate::testing;

    #[test]
    fn builder_rejects_duplicate_species() {
        let mut b = NetworkBuilder::new();
        b.add_species("X").unwrap();
        assert_eq!(
            b.add_species("X"),
            Err(ModelError::DuplicateSpecies("X".into()))
        );
    }

    #[test]
    fn complex_drops_zeros_and_rejects_negatives() {
        let c = Complex::from_terms(&[(0, rat_int(2)), (1, rat_int(0)), (0, rat_int(1))]).unwrap();
        assert_eq!(c.coeff(0), rat_int(3));
        assert_eq!(c.support().collect::<Vec<_>>(), vec![0]);
        assert_eq!(
            Complex::from_terms(&[(1, rat_int(-1))]),
            Err(ModelError::NegativeCoefficient(1))
        );
    }

    #[test]
    fn builder_rejects_self_loop() {
        let mut b = NetworkBuilder::new();
        let x = b.add_species("X").unwrap();
        let c = Complex::from_terms(&[(x, rat_int(1))]).unwrap();
        assert!(matches!(
            b.add_reaction(c.clone(), c),
            Err(ModelError::SelfLoopReaction(0))
        ));
    }

    #[test]
    fn complexes_are_deduplicated() {
        let net = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0).into_network();
        assert_eq!(net.num_complexes(), 6);
        assert_eq!(net.num_reactions(), 4);
    }

    #[test]
    fn stoichiometric_matrix_reversible_pair() {
        let sys = testing::xy_reversible(1.0, 1.0);
        let n = sys.network().stoichiometric_matrix();
        assert_eq!(n, RatMatrix::from_i64_rows(&[&[-1, 1], &[1, -1]]));
    }

    #[test]
    fn stoichiometric_matrix_carbon_cycle() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        let n = sys.network().stoichiometric_matrix();
        assert_eq!(
            n,
            RatMatrix::from_i64_rows(&[&[1, -1, 0, 0], &[-1, 1, -1, 1], &[0, 0, 1, -1]])
        );
    }

    #[test]
    fn stoichiometric_matrix_toy() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        let n = sys.network().stoichiometric_matrix();
        assert_eq!(n, RatMatrix::from_i64_rows(&[&[-1, 1, 0, 0], &[0, 0, -1, 1]]));
    }

    #[test]
    fn molecularity_matrix_unit_complexes() {
        let sys = testing::xy_reversible(1.0, 1.0);
        assert_eq!(
            sys.network().molecularity_matrix(),
            RatMatrix::identity(2)
        );
    }

    #[test]
    fn molecularity_matrix_carbon_cycle() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        // Columns in first-appearance order:
        // X1+2X2, 2X1+X2, X1+X2, 2X2, X2, X3
        assert_eq!(
            sys.network().molecularity_matrix(),
            RatMatrix::from_i64_rows(&[
                &[1, 2, 1, 0, 0, 0],
                &[2, 1, 1, 2, 1, 0],
                &[0, 0, 0, 0, 0, 1],
            ])
        );
    }

    #[test]
    fn molecularity_matrix_toy() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        // Columns: 2X, X, 2Y, X+2Y, X+Y, Y
        assert_eq!(
            sys.network().molecularity_matrix(),
            RatMatrix::from_i64_rows(&[&[2, 1, 0, 1, 1, 0], &[0, 0, 2, 2, 1, 1]])
        );
    }

    #[test]
    fn stoichiometric_equals_molecularity_times_incidence() {
        for sys in testing::all_fixtures() {
            let net = sys.network();
            let product = net.molecularity_matrix().matmul(&net.incidence_matrix());
            assert_eq!(product, net.stoichiometric_matrix());
        }
    }

    #[test]
    fn linkage_classes_single_pair() {
        let sys = testing::xy_reversible(1.0, 1.0);
        assert_eq!(sys.network().linkage_classes(), vec![vec![0, 1]]);
    }

    #[test]
    fn linkage_classes_carbon_cycle() {
        let sys = testing::carbon_cycle(1.0, 1.0, 1.0, 1.0);
        // {X1+2X2, 2X1+X2}, {X1+X2, 2X2}, {X2, X3}
        assert_eq!(
            sys.network().linkage_classes(),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
    }

    #[test]
    fn linkage_classes_toy() {
        let sys = testing::toy_system(1.0, 1.0, 1.0, 1.0);
        // {2X, X, X+Y}, {2Y, X+2Y, Y}
        assert_eq!(
            sys.network().linkage_classes(),
            vec![vec![0, 1, 4], vec![2, 3, 5]]
        );
    }

    #[test]
    fn deficiency_values() {
        assert_eq!(
            testing::xy_reversible(1.0, 1.0).network().deficiency(),
            Ok(0)
        );
        assert_eq!(
            testing::carbon_cycle(1.0, 1.0, 1.0, 1.0)
                .network()
                .deficiency(),
            Ok(1)
        );
        assert_eq!(
            testing::toy_system(1.0, 1.0, 1.0, 1.0).network().deficiency(),
            Ok(2)
        );
    }

    #[test]
    fn deficiency_is_nonnegative_on_fixtures() {
        for sys in testing::all_fixtures() {
            assert!(sys.network().deficiency().is_ok());
        }
    }

    #[test]
    fn decomposition_validates_partition() {
        assert!(Decomposition::new(vec![vec![0, 1], vec![2, 3]], 4).is_ok());
        assert!(Decomposition::new(vec![vec![0], vec![0, 1]], 2).is_err());
        assert!(Decomposition::new(vec![vec![0]], 2).is_err());
        assert!(Decomposition::new(vec![vec![0], vec![]], 1).is_err());
        assert!(Decomposition::new(vec![vec![0, 5]], 2).is_err());
    }
}
