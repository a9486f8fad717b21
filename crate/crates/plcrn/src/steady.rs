//! Species formation rates, per-subnetwork positive steady state solving,
//! binomial parametrizations, and the merge construction that assembles a
//! whole-network steady state from per-block witnesses.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decomp::{
    finest_independent_decomposition, verify_independence, verify_t_hat_independence,
    IndependenceReport,
};
use crate::kinetics::{KineticSystem, KineticsError};
use crate::network::{Decomposition, ModelError};
use crate::rat::{rat_from_f64, rat_to_f64, Rat};

#[derive(Debug, Error)]
pub enum SteadyStateError {
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("concentration vector must have {expected} strictly positive entries")]
    InvalidConcentrations { expected: usize },
}

/// Why a block admits no single-binomial parametrization.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotBinomial {
    #[error("block has {0} reactions; a binomial block has exactly two")]
    WrongReactionCount(usize),
    #[error("the two reaction vectors are not negatives up to positive scaling")]
    VectorsNotOpposed,
    #[error("identical kinetic order rows with inconsistent rate constants")]
    InconsistentConstants,
    #[error("no species is left to act as a free parameter")]
    NoFreeSpecies,
}

#[derive(Debug, Error)]
pub enum MergeError {
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("expected one witness per block ({expected}), got {got}")]
    WitnessCount { expected: usize, got: usize },
    #[error("witness {0} is not strictly positive")]
    NonPositiveWitness(usize),
    #[error("stacked steady state system is inconsistent (residual {residual:.3e})")]
    Inconsistent { residual: f64 },
}

/// Strictly positive species concentrations.
#[derive(Debug, Clone, PartialEq)]
pub struct Concentrations(Vec<f64>);

impl Concentrations {
    pub fn new(x: Vec<f64>, num_species: usize) -> Result<Self, SteadyStateError> {
        if x.len() != num_species || !x.iter().all(|&v| v > 0.0 && v.is_finite()) {
            return Err(SteadyStateError::InvalidConcentrations {
                expected: num_species,
            });
        }
        Ok(Concentrations(x))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Deref for Concentrations {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Cached float views of a kinetic system, shared by the numeric paths.
struct Evaluator {
    /// Kinetic orders, reactions x species.
    orders: Vec<Vec<f64>>,
    /// Stoichiometric matrix, species x reactions.
    stoich: Vec<Vec<f64>>,
    rates: Vec<f64>,
}

impl Evaluator {
    fn new(sys: &KineticSystem) -> Self {
        let r = sys.network().num_reactions();
        let m = sys.network().num_species();
        let orders = (0..r)
            .map(|j| (0..m).map(|i| rat_to_f64(&sys.kinetic_orders()[(j, i)])).collect())
            .collect();
        let n = sys.network().stoichiometric_matrix();
        let stoich = (0..m)
            .map(|i| (0..r).map(|j| rat_to_f64(&n[(i, j)])).collect())
            .collect();
        Evaluator {
            orders,
            stoich,
            rates: sys.rates().to_vec(),
        }
    }

    fn num_species(&self) -> usize {
        self.stoich.len()
    }

    /// Rate of reaction j at log-concentrations `ln_x`.
    fn rate(&self, j: usize, ln_x: &[f64]) -> f64 {
        let exponent: f64 = self.orders[j]
            .iter()
            .zip(ln_x)
            .map(|(f, u)| f * u)
            .sum();
        self.rates[j] * exponent.exp()
    }

    /// Species formation rate restricted to `reactions`, at `ln_x`.
    fn formation_rate(&self, reactions: &[usize], ln_x: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; self.num_species()];
        for &j in reactions {
            let rate = self.rate(j, ln_x);
            for (s, f_s) in f.iter_mut().enumerate() {
                *f_s += rate * self.stoich[s][j];
            }
        }
        f
    }

    /// Jacobian of the formation rate with respect to `u = ln x`:
    /// d f_a / d u_b = sum_j rate_j * N_aj * F_jb.
    fn log_jacobian(&self, reactions: &[usize], ln_x: &[f64]) -> Vec<Vec<f64>> {
        let m = self.num_species();
        let mut jac = vec![vec![0.0; m]; m];
        for &j in reactions {
            let rate = self.rate(j, ln_x);
            for (a, row) in jac.iter_mut().enumerate() {
                let n_aj = self.stoich[a][j];
                if n_aj == 0.0 {
                    continue;
                }
                for (entry, order) in row.iter_mut().zip(&self.orders[j]) {
                    *entry += rate * n_aj * order;
                }
            }
        }
        jac
    }

    /// Cancellation-relative residual: the largest, over species, of the
    /// net formation rate against the total unsigned throughput of that
    /// species. Scale-invariant, so vanishing concentrations cannot fake a
    /// steady state.
    fn relative_residual(&self, reactions: &[usize], ln_x: &[f64]) -> f64 {
        let m = self.num_species();
        let mut net = vec![0.0; m];
        let mut gross = vec![0.0; m];
        for &j in reactions {
            let rate = self.rate(j, ln_x);
            for s in 0..m {
                net[s] += rate * self.stoich[s][j];
                gross[s] += rate * self.stoich[s][j].abs();
            }
        }
        let mut worst: f64 = 0.0;
        for s in 0..m {
            if !net[s].is_finite() || !gross[s].is_finite() {
                return f64::INFINITY;
            }
            if gross[s] > 0.0 {
                worst = worst.max(net[s].abs() / gross[s]);
            } else if net[s] != 0.0 {
                return f64::INFINITY;
            }
        }
        worst
    }
}

fn ln_vec(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.ln()).collect()
}

/// The factor map: per-complex monomial evaluation of `x`.
///
/// Entry for a reactant complex is the monomial of its shared kinetic
/// order row; non-reactant complexes get zero. Requires PL-RDK.
pub fn factor_map(sys: &KineticSystem, x: &Concentrations) -> Result<Vec<f64>, KineticsError> {
    let t = sys.t_matrix()?;
    let ln_x = ln_vec(x);
    let mut theta = vec![0.0; sys.network().num_complexes()];
    for (col, &complex) in t.reactant_complexes.iter().enumerate() {
        let exponent: f64 = (0..sys.network().num_species())
            .map(|i| rat_to_f64(&t.matrix[(i, col)]) * ln_x[i])
            .sum();
        theta[complex] = exponent.exp();
    }
    Ok(theta)
}

/// Species formation rate function in stoichiometric form, f = N K(x).
pub fn sfrf(sys: &KineticSystem, x: &Concentrations) -> Vec<f64> {
    let reactions: Vec<usize> = (0..sys.network().num_reactions()).collect();
    Evaluator::new(sys).formation_rate(&reactions, &ln_vec(x))
}

/// Formation rate of a subnetwork: only `reactions` contribute, but the
/// full species vector is retained.
pub fn sfrf_restricted(sys: &KineticSystem, reactions: &[usize], x: &Concentrations) -> Vec<f64> {
    Evaluator::new(sys).formation_rate(reactions, &ln_vec(x))
}

/// Species formation rate in complex-space form, f = Y L theta(x).
///
/// Agrees with [`sfrf`] for every PL-RDK system; the two routes pin the
/// Laplacian sign convention.
pub fn sfrf_via_complexes(sys: &KineticSystem, x: &Concentrations) -> Result<Vec<f64>, KineticsError> {
    let theta = factor_map(sys, x)?;
    let lap = sys.laplacian();
    let n = sys.network().num_complexes();
    let m = sys.network().num_species();
    let mut flow = vec![0.0; n];
    for (c, flow_c) in flow.iter_mut().enumerate() {
        *flow_c = (0..n)
            .map(|j| rat_to_f64(&lap[(c, j)]) * theta[j])
            .sum();
    }
    let y = sys.network().molecularity_matrix();
    let mut f = vec![0.0; m];
    for (s, f_s) in f.iter_mut().enumerate() {
        *f_s = (0..n).map(|c| rat_to_f64(&y[(s, c)]) * flow[c]).sum();
    }
    Ok(f)
}

/// Analytic Jacobian of the formation rate in concentration space:
/// d f_a / d x_b = sum_j k_j F_jb x^{F_j} N_aj / x_b.
pub fn sfrf_jacobian(sys: &KineticSystem, x: &Concentrations) -> Vec<Vec<f64>> {
    let reactions: Vec<usize> = (0..sys.network().num_reactions()).collect();
    let ev = Evaluator::new(sys);
    let mut jac = ev.log_jacobian(&reactions, &ln_vec(x));
    for row in &mut jac {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry /= x[b];
        }
    }
    jac
}

/// Cancellation-relative residual of the restricted formation rate at `x`;
/// see the solver success criterion.
pub fn relative_residual(sys: &KineticSystem, reactions: &[usize], x: &Concentrations) -> f64 {
    Evaluator::new(sys).relative_residual(reactions, &ln_vec(x))
}

/// Multi-start solver configuration. Defaults: tolerance 1e-10, 64 starts,
/// 120 iterations per start, fixed seed for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Success threshold on the cancellation-relative residual.
    pub tol: f64,
    pub starts: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-10,
            starts: 64,
            max_iter: 120,
            seed: 0x706c_6372_6e00,
        }
    }
}

/// Outcome of a numeric steady state search. Absence of a witness is a
/// search result, never a proof that the steady state set is empty.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockSolve {
    Found { x: Vec<f64>, residual: f64 },
    NotFound { best_residual: f64 },
}

impl BlockSolve {
    pub fn is_found(&self) -> bool {
        matches!(self, BlockSolve::Found { .. })
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            BlockSolve::Found { x, .. } => Some(x),
            BlockSolve::NotFound { .. } => None,
        }
    }
}

/// Dense LU solve with partial pivoting; `None` when effectively singular.
fn solve_float(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let (upper, lower) = a.split_at_mut(row);
            let pivot_row = &upper[col];
            let current = &mut lower[0];
            let factor = current[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for (entry, pivot_entry) in current[col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= factor * pivot_entry;
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
        if !x[row].is_finite() {
            return None;
        }
    }
    Some(x)
}

const LOG_BOUND: f64 = 100.0;
const MAX_STEP: f64 = 50.0;

/// Residual vector and Jacobian of one descent phase.
///
/// The raw phase works on f(exp u) directly. The normalized phase divides
/// by the largest reaction rate; the zero sets coincide, but the common
/// monomial prefactor drops out, so shrinking every concentration no
/// longer looks like progress. That matters when the balance point lies
/// far outside the start box.
#[derive(Clone, Copy)]
enum Phase {
    Raw,
    Normalized,
}

impl Phase {
    fn residual(self, ev: &Evaluator, reactions: &[usize], u: &[f64]) -> Vec<f64> {
        let f = ev.formation_rate(reactions, u);
        match self {
            Phase::Raw => f,
            Phase::Normalized => {
                let scale = self.peak_rate(ev, reactions, u).1;
                f.iter().map(|v| v / scale).collect()
            }
        }
    }

    fn peak_rate(self, ev: &Evaluator, reactions: &[usize], u: &[f64]) -> (usize, f64) {
        let mut peak = (reactions[0], 0.0f64);
        for &j in reactions {
            let rate = ev.rate(j, u);
            if rate > peak.1 {
                peak = (j, rate);
            }
        }
        peak
    }

    fn jacobian(self, ev: &Evaluator, reactions: &[usize], u: &[f64], h: &[f64]) -> Vec<Vec<f64>> {
        let mut jac = ev.log_jacobian(reactions, u);
        if let Phase::Normalized = self {
            let (peak_reaction, scale) = self.peak_rate(ev, reactions, u);
            // d(f_a/s)/du_b = J_ab/s - h_a * dln(s)/du_b, with
            // dln(s)/du_b the kinetic order row of the peak rate.
            for (row, &h_a) in jac.iter_mut().zip(h) {
                for (entry, order) in row.iter_mut().zip(&ev.orders[peak_reaction]) {
                    *entry = *entry / scale - h_a * order;
                }
            }
        }
        jac
    }
}

/// One damped Gauss-Newton descent on the squared phase residual from
/// `start`. Returns the final iterate and its relative residual.
fn descend(
    ev: &Evaluator,
    reactions: &[usize],
    start: &[f64],
    cfg: &SolverConfig,
    phase: Phase,
) -> (Vec<f64>, f64) {
    let m = ev.num_species();
    let mut u = start.to_vec();
    let mut h = phase.residual(ev, reactions, &u);
    let mut cost: f64 = h.iter().map(|v| v * v).sum();
    let mut damping = 0.0f64;
    for _ in 0..cfg.max_iter {
        if ev.relative_residual(reactions, &u) <= cfg.tol * 1e-3 {
            break;
        }
        let jac = phase.jacobian(ev, reactions, &u, &h);
        // Normal equations J^T J delta = -J^T h, with Levenberg damping
        // escalated until a decreasing step is found.
        let mut jtj = vec![vec![0.0; m]; m];
        let mut jth = vec![0.0; m];
        for (a, row) in jtj.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = (0..m).map(|s| jac[s][a] * jac[s][b]).sum();
            }
            jth[a] = (0..m).map(|s| jac[s][a] * h[s]).sum();
        }
        let diag_scale = (0..m).map(|i| jtj[i][i]).fold(0.0f64, f64::max).max(1e-30);
        let mut improved = false;
        'damping: for _ in 0..12 {
            let mut lhs = jtj.clone();
            for (i, row) in lhs.iter_mut().enumerate() {
                row[i] += damping * diag_scale;
            }
            let rhs: Vec<f64> = jth.iter().map(|v| -v).collect();
            if let Some(mut delta) = solve_float(lhs, rhs) {
                // Trust-region cap: near-degenerate normal equations can
                // propose steps far beyond the line search's reach.
                let span = delta.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
                if span > MAX_STEP {
                    for d in &mut delta {
                        *d *= MAX_STEP / span;
                    }
                }
                let mut lambda = 1.0;
                for _ in 0..40 {
                    let candidate: Vec<f64> = u
                        .iter()
                        .zip(&delta)
                        .map(|(ui, di)| (ui + lambda * di).clamp(-LOG_BOUND, LOG_BOUND))
                        .collect();
                    let h_new = phase.residual(ev, reactions, &candidate);
                    let cost_new: f64 = h_new.iter().map(|v| v * v).sum();
                    if cost_new.is_finite() && cost_new < cost {
                        u = candidate;
                        h = h_new;
                        cost = cost_new;
                        improved = true;
                        damping /= 4.0;
                        break 'damping;
                    }
                    lambda *= 0.5;
                }
            }
            damping = if damping == 0.0 { 1e-10 } else { damping * 10.0 };
        }
        if !improved {
            break;
        }
    }
    let residual = ev.relative_residual(reactions, &u);
    (u, residual)
}

fn solve_reactions(sys: &KineticSystem, reactions: &[usize], cfg: &SolverConfig) -> BlockSolve {
    let ev = Evaluator::new(sys);
    let m = ev.num_species();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best_u: Option<Vec<f64>> = None;
    let mut best_residual = f64::INFINITY;
    for _ in 0..cfg.starts.max(1) {
        let start: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let (mut u, mut residual) = descend(&ev, reactions, &start, cfg, Phase::Raw);
        // When the raw descent stalls short of the target, polish with the
        // prefactor normalized away, both from the stalled endpoint and
        // from the original start (the endpoint may sit on a numerically
        // flat plateau near the log-coordinate clamp).
        if residual > cfg.tol * 1e-3 {
            let stalled = u.clone();
            for seed in [&stalled, &start] {
                let (u2, r2) = descend(&ev, reactions, seed, cfg, Phase::Normalized);
                if r2 < residual {
                    u = u2;
                    residual = r2;
                }
                if residual <= cfg.tol * 1e-3 {
                    break;
                }
            }
        }
        // Strict improvement keeps the earliest start on ties.
        if residual < best_residual {
            best_residual = residual;
            best_u = Some(u);
        }
        if best_residual <= cfg.tol * 1e-3 {
            break;
        }
    }
    match best_u {
        Some(u) if best_residual <= cfg.tol => BlockSolve::Found {
            x: u.iter().map(|v| v.exp()).collect(),
            residual: best_residual,
        },
        _ => BlockSolve::NotFound {
            best_residual,
        },
    }
}

/// Multi-start search for a positive steady state of one block, in log
/// coordinates so positivity holds by construction. Deterministic for a
/// fixed seed.
pub fn solve_subnetwork(
    sys: &KineticSystem,
    d: &Decomposition,
    block: usize,
    cfg: &SolverConfig,
) -> Result<BlockSolve, ModelError> {
    let reactions = d.block(block)?;
    Ok(solve_reactions(sys, reactions, cfg))
}

/// Multi-start search over the whole reaction set.
pub fn solve_network(sys: &KineticSystem, cfg: &SolverConfig) -> BlockSolve {
    let reactions: Vec<usize> = (0..sys.network().num_reactions()).collect();
    solve_reactions(sys, &reactions, cfg)
}

/// One-parameter positive steady state family x_j = C_j * tau^(d_j), with
/// a designated free species where C = 1 and d = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialFamily {
    pub coefficients: Vec<f64>,
    pub exponents: Vec<Rat>,
    pub free_index: usize,
}

impl MonomialFamily {
    pub fn eval(&self, tau: f64) -> Vec<f64> {
        assert!(tau > 0.0 && tau.is_finite(), "tau must be positive");
        self.coefficients
            .iter()
            .zip(&self.exponents)
            .map(|(c, d)| c * tau.powf(rat_to_f64(d)))
            .collect()
    }
}

/// Closed-form family for a block whose steady state condition is a single
/// binomial: exactly two reactions with reaction vectors that are negatives
/// up to positive scaling (a reversible pair in particular).
///
/// With v_a = -s v_b, the block's rate balance is
/// s k_a x^{F_a} = k_b x^{F_b}, and the family solves
/// (F_a - F_b) . ln x = ln(k_b / (s k_a)) with the highest-index species in
/// the support of F_a - F_b left free.
pub fn binomial_parametrization(
    sys: &KineticSystem,
    d: &Decomposition,
    block: usize,
) -> Result<MonomialFamily, NotBinomial> {
    let reactions = d.block(block).map_err(|_| NotBinomial::WrongReactionCount(0))?;
    if reactions.len() != 2 {
        return Err(NotBinomial::WrongReactionCount(reactions.len()));
    }
    let (a, b) = (reactions[0], reactions[1]);
    let n = sys.network().stoichiometric_matrix();
    let m = sys.network().num_species();
    let col = |j: usize| -> Vec<Rat> { (0..m).map(|i| n[(i, j)].clone()).collect() };
    let (va, vb) = (col(a), col(b));
    // Scale factor s > 0 with va = -s vb, checked exactly.
    let lead = (0..m).find(|&i| !vb[i].is_zero()).expect("reaction vectors are nonzero");
    let scale = -&va[lead] / &vb[lead];
    if !crate::rat::is_positive(&scale) {
        return Err(NotBinomial::VectorsNotOpposed);
    }
    for i in 0..m {
        if va[i] != -(&scale * &vb[i]) {
            return Err(NotBinomial::VectorsNotOpposed);
        }
    }

    let orders = sys.kinetic_orders();
    let g: Vec<Rat> = (0..m)
        .map(|i| orders[(a, i)].clone() - orders[(b, i)].clone())
        .collect();
    let support: Vec<usize> = (0..m).filter(|&i| !g[i].is_zero()).collect();
    // Balance constant: ln(k_b / (s k_a)).
    let k_a = rat_from_f64(sys.rates()[a]).expect("rates are finite");
    let k_b = rat_from_f64(sys.rates()[b]).expect("rates are finite");
    let constant = rat_to_f64(&k_b).ln() - rat_to_f64(&(&scale * &k_a)).ln();

    let mut coefficients = vec![1.0; m];
    let mut exponents = vec![Rat::zero(); m];
    if support.is_empty() {
        // Degenerate binomial: every positive x is steady iff the constants
        // agree exactly.
        if &scale * &k_a != k_b {
            return Err(NotBinomial::InconsistentConstants);
        }
        let free_index = m - 1;
        exponents[free_index] = Rat::from_integer(1.into());
        return Ok(MonomialFamily {
            coefficients,
            exponents,
            free_index,
        });
    }
    if support.len() == 1 {
        // The lone support species is pinned by the balance, so it cannot
        // be the free parameter; the highest-index other species is.
        let pinned = support[0];
        let Some(free_index) = (0..m).rev().find(|&i| i != pinned) else {
            return Err(NotBinomial::NoFreeSpecies);
        };
        coefficients[pinned] = (constant / rat_to_f64(&g[pinned])).exp();
        exponents[free_index] = Rat::from_integer(1.into());
        return Ok(MonomialFamily {
            coefficients,
            exponents,
            free_index,
        });
    }
    let free_index = *support.last().expect("support is nonempty");
    let carrier = support[0];
    coefficients[carrier] = (constant / rat_to_f64(&g[carrier])).exp();
    exponents[carrier] = -&g[free_index] / &g[carrier];
    exponents[free_index] = Rat::from_integer(1.into());
    Ok(MonomialFamily {
        coefficients,
        exponents,
        free_index,
    })
}

/// Result of merging per-block witnesses, with the diagnostics the
/// construction guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeOutcome {
    pub x: Vec<f64>,
    /// Per-block scaling factors gamma_i = exp(-w_i) relating each block
    /// witness's factor map to the merged point.
    pub gammas: Vec<f64>,
    /// Residual of the stacked log-linear system.
    pub stacked_residual: f64,
    /// Whole-network relative residual at the merged point.
    pub sfrf_residual: f64,
    /// Worst componentwise mismatch of gamma_i * theta_i(witness) against
    /// theta_i(x).
    pub scaling_mismatch: f64,
}

const STACKED_CONSISTENCY_TOL: f64 = 1e-9;

/// Merge construction: one row per (block, reactant complex) equating the
/// log-monomial of the merged point, shifted by a per-block unknown, with
/// the log factor map of that block's witness. The system is solved by
/// least squares on exactly determined pivot columns and rejected as
/// `Inconsistent` when its residual exceeds 1e-9.
pub fn merge_steady_states(
    sys: &KineticSystem,
    d: &Decomposition,
    witnesses: &[Vec<f64>],
) -> Result<MergeOutcome, MergeError> {
    let alpha = d.num_blocks();
    if witnesses.len() != alpha {
        return Err(MergeError::WitnessCount {
            expected: alpha,
            got: witnesses.len(),
        });
    }
    let m = sys.network().num_species();
    for (i, w) in witnesses.iter().enumerate() {
        if w.len() != m || !w.iter().all(|&v| v > 0.0 && v.is_finite()) {
            return Err(MergeError::NonPositiveWitness(i));
        }
    }
    let stacked = sys.stacked_t_hat(d)?;
    let system = stacked.matrix.transpose();
    let coeffs: Vec<Vec<f64>> = (0..system.rows())
        .map(|r| system.row(r).iter().map(rat_to_f64).collect())
        .collect();
    // Right-hand side: ln theta_y(witness_block) per stacked column.
    let t = sys.t_matrix()?;
    let rhs: Vec<f64> = stacked
        .columns
        .iter()
        .map(|&(block, complex)| {
            let col = t
                .reactant_complexes
                .iter()
                .position(|&c| c == complex)
                .expect("stacked columns index reactant complexes");
            (0..m)
                .map(|i| rat_to_f64(&t.matrix[(i, col)]) * witnesses[block][i].ln())
                .sum()
        })
        .collect();

    // Exact pivot columns of the rational system select an exactly
    // determined unknown subset; the rest stay at zero.
    let (_, pivots) = system.rref();
    let k = pivots.len();
    let mut normal = vec![vec![0.0; k]; k];
    let mut moment = vec![0.0; k];
    for (pi, &p) in pivots.iter().enumerate() {
        for (qi, &q) in pivots.iter().enumerate() {
            normal[pi][qi] = coeffs.iter().map(|row| row[p] * row[q]).sum();
        }
        moment[pi] = coeffs
            .iter()
            .zip(&rhs)
            .map(|(row, b)| row[p] * b)
            .sum();
    }
    let solved = solve_float(normal, moment).ok_or(MergeError::Inconsistent {
        residual: f64::INFINITY,
    })?;
    let mut z = vec![0.0; m + alpha];
    for (pi, &p) in pivots.iter().enumerate() {
        z[p] = solved[pi];
    }
    let scale = 1.0 + rhs.iter().fold(0.0f64, |acc, b| acc.max(b.abs()));
    let stacked_residual = coeffs
        .iter()
        .zip(&rhs)
        .map(|(row, b)| {
            let predicted: f64 = row.iter().zip(&z).map(|(c, zi)| c * zi).sum();
            (predicted - b).abs()
        })
        .fold(0.0f64, f64::max)
        / scale;
    if stacked_residual > STACKED_CONSISTENCY_TOL {
        return Err(MergeError::Inconsistent {
            residual: stacked_residual,
        });
    }

    let x: Vec<f64> = z[..m].iter().map(|u| u.exp()).collect();
    let gammas: Vec<f64> = z[m..].iter().map(|w| (-w).exp()).collect();
    let merged = Concentrations::new(x.clone(), m).expect("exp of finite logs is positive");
    let all: Vec<usize> = (0..sys.network().num_reactions()).collect();
    let sfrf_residual = Evaluator::new(sys).relative_residual(&all, &ln_vec(&merged));
    // Scaling identity gamma_i theta_i(witness_i) = theta_i(x).
    let mut scaling_mismatch = 0.0f64;
    for &(block, complex) in &stacked.columns {
        let col = t
            .reactant_complexes
            .iter()
            .position(|&c| c == complex)
            .expect("stacked columns index reactant complexes");
        let theta_witness: f64 = (0..m)
            .map(|i| rat_to_f64(&t.matrix[(i, col)]) * witnesses[block][i].ln())
            .sum::<f64>()
            .exp();
        let theta_merged: f64 = (0..m)
            .map(|i| rat_to_f64(&t.matrix[(i, col)]) * merged[i].ln())
            .sum::<f64>()
            .exp();
        let mismatch = (gammas[block] * theta_witness - theta_merged).abs() / theta_merged;
        scaling_mismatch = scaling_mismatch.max(mismatch);
    }
    Ok(MergeOutcome {
        x,
        gammas,
        stacked_residual,
        sfrf_residual,
        scaling_mismatch,
    })
}

/// Whole-network existence outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum WholeOutcome {
    /// A merged witness passed both the residual and scaling checks.
    Nonempty { witness: Vec<f64>, residual: f64 },
    /// Conditions held but some block search or the merge came up empty.
    /// Not a proof of emptiness.
    NoWitnessFound,
    /// Stoichiometric or T-hat independence failed; the direct whole-network
    /// search result is attached for information only.
    ConditionsNotMet { direct: BlockSolve },
}

/// End-to-end existence verdict for a kinetic system.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub report: IndependenceReport,
    pub conditions_hold: bool,
    pub per_block: Vec<BlockSolve>,
    pub whole: WholeOutcome,
}

const MERGE_WITNESS_TOL: f64 = 1e-8;

/// Runs the full pipeline: finest decomposition, both independence checks,
/// per-block searches, and the merge. When either independence condition
/// fails the whole-network search still runs and is reported
/// informationally.
pub fn existence_verdict(sys: &KineticSystem, cfg: &SolverConfig) -> Verdict {
    let d = finest_independent_decomposition(sys.network());
    let report = if sys.is_plrdk() {
        verify_t_hat_independence(sys, &d).expect("checked PL-RDK")
    } else {
        verify_independence(sys.network(), &d)
    };
    let conditions_hold = report.stoich_independent
        && report.t_hat.as_ref().is_some_and(|t| t.independent);
    let per_block: Vec<BlockSolve> = (0..d.num_blocks())
        .map(|i| solve_subnetwork(sys, &d, i, cfg).expect("block index in range"))
        .collect();
    let whole = if !conditions_hold {
        WholeOutcome::ConditionsNotMet {
            direct: solve_network(sys, cfg),
        }
    } else if !per_block.iter().all(BlockSolve::is_found) {
        WholeOutcome::NoWitnessFound
    } else {
        let witnesses: Vec<Vec<f64>> = per_block
            .iter()
            .map(|b| b.witness().expect("all blocks found").to_vec())
            .collect();
        match merge_steady_states(sys, &d, &witnesses) {
            Ok(outcome)
                if outcome.sfrf_residual <= MERGE_WITNESS_TOL
                    && outcome.scaling_mismatch <= MERGE_WITNESS_TOL =>
            {
                WholeOutcome::Nonempty {
                    witness: outcome.x,
                    residual: outcome.sfrf_residual,
                }
            }
            _ => WholeOutcome::NoWitnessFound,
        }
    };
    Verdict {
        report,
        conditions_hold,
        per_block,
        whole,
    }
}
