//! Finest independent decompositions and the two rank-additivity checks.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::kinetics::{KineticSystem, KineticsError};
use crate::linalg::{solve, RatMatrix, SolveOutcome};
use crate::network::{Decomposition, ModelError, Network};

/// Rank bookkeeping for a decomposition: the stoichiometric part is always
/// filled; the T-hat part requires reactant-determined kinetics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub decomposition: Decomposition,
    pub rank_whole: usize,
    pub rank_blocks: Vec<usize>,
    pub stoich_independent: bool,
    pub t_hat: Option<THatReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct THatReport {
    pub rank_whole: usize,
    pub rank_blocks: Vec<usize>,
    pub independent: bool,
    /// Some reactant complex appears in reactions of more than one block.
    /// The whole-network rank then follows the literal single-column
    /// convention, which can undercount the per-block stacked rank.
    pub shared_reactants: bool,
}

/// Finest stoichiometrically independent decomposition via the coordinate
/// graph of reaction vectors.
///
/// A maximal independent subset of reaction vectors is chosen greedily in
/// reaction order; every remaining vector is expanded in that basis, and
/// reactions are linked whenever they appear together in an expansion.
/// Connected components of the resulting graph form the blocks. The output
/// always passes [`verify_independence`]; a single block means no
/// nontrivial independent decomposition exists.
pub fn finest_independent_decomposition(net: &Network) -> Decomposition {
    let n = net.stoichiometric_matrix();
    let r = net.num_reactions();
    let mut basis: Vec<usize> = Vec::new();
    let mut parent: Vec<usize> = (0..r).collect();

    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[rb] = ra;
        }
    }

    for j in 0..r {
        let vector: Vec<_> = (0..n.rows()).map(|i| n[(i, j)].clone()).collect();
        let basis_matrix = n.select_columns(&basis);
        match solve(&basis_matrix, &vector).expect("dimensions agree by construction") {
            SolveOutcome::Inconsistent => basis.push(j),
            SolveOutcome::Solution { particular, .. } => {
                // Link this reaction to every basis reaction in its
                // expansion; the basis reactions become linked through it.
                for (pos, coeff) in particular.iter().enumerate() {
                    if !coeff.is_zero() {
                        union(&mut parent, j, basis[pos]);
                    }
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..r {
        let root = find(&mut parent, j);
        groups.entry(root).or_default().push(j);
    }
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    let d = Decomposition::new(blocks, r).expect("components partition the reaction set");
    let report = verify_independence(net, &d);
    assert!(
        report.stoich_independent,
        "coordinate-graph decomposition must be independent"
    );
    d
}

fn block_ranks(n: &RatMatrix, d: &Decomposition) -> Vec<usize> {
    d.blocks()
        .iter()
        .map(|block| n.select_columns(block).rank())
        .collect()
}

/// Exact stoichiometric rank additivity check for a decomposition.
pub fn verify_independence(net: &Network, d: &Decomposition) -> IndependenceReport {
    let n = net.stoichiometric_matrix();
    let rank_whole = n.rank();
    let rank_blocks = block_ranks(&n, d);
    let stoich_independent = rank_whole == rank_blocks.iter().sum::<usize>();
    IndependenceReport {
        decomposition: d.clone(),
        rank_whole,
        rank_blocks,
        stoich_independent,
        t_hat: None,
    }
}

/// Rank additivity of the augmented kinetic-order matrices, on top of the
/// stoichiometric check. Requires reactant-determined kinetics.
pub fn verify_t_hat_independence(
    sys: &KineticSystem,
    d: &Decomposition,
) -> Result<IndependenceReport, KineticsError> {
    let t_hat = sys.t_hat_matrix(d)?;
    let rank_whole = t_hat.matrix.rank();
    let rank_blocks: Vec<usize> = (0..d.num_blocks())
        .map(|i| sys.t_hat_sub(d, i).map(|m| m.rank()))
        .collect::<Result<_, _>>()?;
    let independent = rank_whole == rank_blocks.iter().sum::<usize>();
    let mut report = verify_independence(sys.network(), d);
    report.t_hat = Some(THatReport {
        rank_whole,
        rank_blocks,
        independent,
        shared_reactants: t_hat.shared_reactants,
    });
    Ok(report)
}

/// Structural identity of two blocks: a bijection between their complexes
/// and between their reactions preserving reactant/product incidence
/// (directed multigraph isomorphism), found by backtracking.
///
/// Rate constants and kinetic orders are ignored; identity is purely
/// structural.
pub fn subnetworks_identical(
    net: &Network,
    d: &Decomposition,
    i: usize,
    j: usize,
) -> Result<bool, ModelError> {
    let left = BlockGraph::new(net, d.block(i)?);
    let right = BlockGraph::new(net, d.block(j)?);
    Ok(left.isomorphic_to(&right))
}

/// The complex-reaction graph of one block: vertices are the complexes
/// touched by the block's reactions, edges the reactions themselves.
struct BlockGraph {
    /// Edges as (local reactant, local product); parallel edges allowed.
    edges: Vec<(usize, usize)>,
    num_vertices: usize,
    /// (out-degree, in-degree) per local vertex.
    degrees: Vec<(usize, usize)>,
}

impl BlockGraph {
    fn new(net: &Network, block: &[usize]) -> Self {
        let mut locals: Vec<usize> = Vec::new();
        let local_of = |complex: usize, locals: &mut Vec<usize>| -> usize {
            if let Some(pos) = locals.iter().position(|&c| c == complex) {
                pos
            } else {
                locals.push(complex);
                locals.len() - 1
            }
        };
        let mut edges = Vec::new();
        for &r in block {
            let reaction = net.reactions()[r];
            let u = local_of(reaction.reactant, &mut locals);
            let v = local_of(reaction.product, &mut locals);
            edges.push((u, v));
        }
        let mut degrees = vec![(0usize, 0usize); locals.len()];
        for &(u, v) in &edges {
            degrees[u].0 += 1;
            degrees[v].1 += 1;
        }
        BlockGraph {
            edges,
            num_vertices: locals.len(),
            degrees,
        }
    }

    fn edge_multiset(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for &e in &self.edges {
            *counts.entry(e).or_insert(0) += 1;
        }
        counts
    }

    fn isomorphic_to(&self, other: &BlockGraph) -> bool {
        if self.num_vertices != other.num_vertices || self.edges.len() != other.edges.len() {
            return false;
        }
        let target = other.edge_multiset();
        let mut mapping = vec![usize::MAX; self.num_vertices];
        let mut used = vec![false; other.num_vertices];
        self.backtrack(0, &mut mapping, &mut used, other, &target)
    }

    fn backtrack(
        &self,
        vertex: usize,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        other: &BlockGraph,
        target: &BTreeMap<(usize, usize), usize>,
    ) -> bool {
        if vertex == self.num_vertices {
            let mapped: BTreeMap<(usize, usize), usize> = {
                let mut counts = BTreeMap::new();
                for &(u, v) in &self.edges {
                    *counts.entry((mapping[u], mapping[v])).or_insert(0) += 1;
                }
                counts
            };
            return &mapped == target;
        }
        for candidate in 0..other.num_vertices {
            if used[candidate] || self.degrees[vertex] != other.degrees[candidate] {
                continue;
            }
            mapping[vertex] = candidate;
            used[candidate] = true;
            if self.backtrack(vertex + 1, mapping, used, other, target) {
                return true;
            }
            used[candidate] = false;
            mapping[vertex] = usize::MAX;
        }
        false
    }
}
