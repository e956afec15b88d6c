//! CVaR-VQE: a variational statevector simulation over the bit-space energy.
//!
//! One qubit per free configuration bit. The ansatz is a layer of Y
//! rotations followed, per repetition, by a linear chain of CNOTs and
//! another Y-rotation layer; since Ry and CNOT are real matrices the state
//! stays in real amplitudes and the simulator works in f64 throughout.
//!
//! Each basis state's energy is the back-turn-penalized, ancilla-resolved
//! Hamiltonian value, computed directly by decoding the bits and running the
//! clamped oracle (the per-pair ancilla minimum is closed-form, so the
//! interaction ancillas need not be simulated; a full-ancilla mode is kept
//! behind a flag). The objective handed to the classical optimizer is
//! CVaR_α over sampled basis energies: the mean of the lowest α-fraction,
//! which rewards distributions whose tail touches the ground state well
//! before the mean converges.
//!
//! The returned champion is the best-ever *sampled* basis state judged by
//! its re-scored oracle energy (overlap penalty included), not by the
//! bit-space objective: the Hamiltonian cannot see self-intersections, so
//! ranking samples by the oracle keeps the report honest.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::energy::{candidate_pairs, evaluate, EnergyMode, Penalties};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, Hamiltonian, HamiltonianParams};
use crate::model::{free_bit_count, Conformation, ContactEnergyTable, ProteinSequence};
use crate::solvers::{better, derive_seed, SolveResult, TracePoint};

/// Two-qubit entangler wiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntanglerTopology {
    /// CNOTs q→q+1 down the line (the hardware-efficient default).
    Chain,
    /// Chain plus a closing CNOT from the last qubit to the first
    /// (applied for 3+ qubits).
    Ring,
}

/// Variational solve settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VqeConfig {
    /// Entangler + rotation repetitions after the initial rotation layer.
    pub layers: u32,
    /// CVaR fraction in (0, 1]; 1 recovers the plain sample mean.
    pub alpha: f64,
    /// Samples drawn per objective evaluation.
    pub shots: u32,
    /// Objective-call budget per restart.
    pub max_evals: u32,
    pub restarts: u32,
    pub seed: u64,
    pub topology: EntanglerTopology,
    /// Simulate interaction ancillas as qubits instead of resolving them
    /// analytically. Costs pairs(N) extra qubits; same optimum.
    pub full_ancillas: bool,
    /// Replace sampling with the exact distribution: the objective becomes
    /// CVaR over basis probabilities and every basis state with nonzero
    /// probability counts as observed.
    pub exact_expectation: bool,
    /// Most qubits the simulator will allocate (2^cap amplitudes).
    pub qubit_cap: usize,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            layers: 1,
            alpha: 0.1,
            shots: 1024,
            max_evals: 150,
            restarts: 4,
            seed: 1,
            topology: EntanglerTopology::Chain,
            full_ancillas: false,
            exact_expectation: false,
            qubit_cap: 24,
        }
    }
}

impl VqeConfig {
    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::invalid(format!(
                "alpha must be in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.shots == 0 {
            return Err(Error::invalid("shots must be at least 1"));
        }
        if self.max_evals == 0 || self.restarts == 0 {
            return Err(Error::invalid("max_evals and restarts must be at least 1"));
        }
        Ok(())
    }
}

/// Rotation about Y on one qubit: [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]].
fn apply_ry(state: &mut [f64], qubit: usize, theta: f64) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let stride = 1 << qubit;
    for block in state.chunks_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = c * x - s * y;
            *b = s * x + c * y;
        }
    }
}

/// CNOT: swaps the target-bit pair of amplitudes wherever control = 1.
fn apply_cx(state: &mut [f64], control: usize, target: usize) {
    let c_mask = 1usize << control;
    let t_mask = 1usize << target;
    for i in 0..state.len() {
        if i & c_mask != 0 && i & t_mask == 0 {
            state.swap(i, i | t_mask);
        }
    }
}

fn norm_sq(state: &[f64]) -> f64 {
    state.iter().map(|a| a * a).sum()
}

/// Prepares |0…0⟩ and applies the ansatz. Consumes n·(layers+1) parameters.
fn apply_ansatz(
    state: &mut [f64],
    n: usize,
    params: &[f64],
    layers: u32,
    topology: EntanglerTopology,
) {
    debug_assert_eq!(params.len(), n * (layers as usize + 1));
    state.fill(0.0);
    state[0] = 1.0;
    let mut next = params.iter();
    for q in 0..n {
        apply_ry(state, q, *next.next().unwrap());
    }
    for _ in 0..layers {
        for q in 0..n.saturating_sub(1) {
            apply_cx(state, q, q + 1);
        }
        if topology == EntanglerTopology::Ring && n >= 3 {
            apply_cx(state, n - 1, 0);
        }
        for q in 0..n {
            apply_ry(state, q, *next.next().unwrap());
        }
    }
    debug_assert!((norm_sq(state) - 1.0).abs() <= 1e-9);
}

/// CVaR of an already-sorted sample list: mean of the lowest ⌈α·len⌉.
fn cvar_sorted(sorted: &[f64], alpha: f64) -> f64 {
    let m = ((alpha * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[..m].iter().sum::<f64>() / m as f64
}

/// CVaR of an exact discrete distribution, entries sorted by energy:
/// integrates probability mass up to α and averages.
fn cvar_exact(sorted: &[(f64, f64)], alpha: f64) -> f64 {
    let mut remaining = alpha;
    let mut acc = 0.0;
    for &(energy, prob) in sorted {
        let take = prob.min(remaining);
        acc += take * energy;
        remaining -= take;
        if remaining <= 0.0 {
            break;
        }
    }
    acc / alpha
}

/// Basis-state energies for the simulated register.
struct BasisEnergies<'a> {
    seq: &'a ProteinSequence,
    table: &'a ContactEnergyTable,
    /// Full caller penalties, for champion re-scoring.
    score_penalties: Penalties,
    /// Overlap-free penalties: what the Hamiltonian actually encodes.
    objective_penalties: Penalties,
    /// Present in full-ancilla mode.
    hamiltonian: Option<Hamiltonian>,
    config_bits: usize,
    n_qubits: usize,
    /// (objective, score) per basis index, precomputed for small registers.
    tables: Option<(Vec<f64>, Vec<f64>)>,
}

impl<'a> BasisEnergies<'a> {
    fn new(
        seq: &'a ProteinSequence,
        table: &'a ContactEnergyTable,
        penalties: Penalties,
        full_ancillas: bool,
        qubit_cap: usize,
    ) -> Result<Self> {
        let config_bits = free_bit_count(seq.len())?;
        let n_qubits = if full_ancillas {
            config_bits + candidate_pairs(seq.len()).len()
        } else {
            config_bits
        };
        if n_qubits > qubit_cap {
            return Err(Error::too_large(format!(
                "{n_qubits} qubits needed but the simulator cap is {qubit_cap}"
            )));
        }
        let hamiltonian = if full_ancillas {
            Some(build_hamiltonian(
                seq,
                table,
                HamiltonianParams {
                    backturn: penalties.backturn,
                    ..HamiltonianParams::default()
                },
            )?)
        } else {
            None
        };
        let mut basis = BasisEnergies {
            seq,
            table,
            score_penalties: penalties,
            objective_penalties: Penalties {
                overlap: 0.0,
                backturn: penalties.backturn,
            },
            hamiltonian,
            config_bits,
            n_qubits,
            tables: None,
        };
        if n_qubits <= 20 {
            let size = 1usize << n_qubits;
            let mut obj = Vec::with_capacity(size);
            let mut score = Vec::with_capacity(size);
            for x in 0..size {
                obj.push(basis.objective_uncached(x));
                score.push(basis.score_uncached(x));
            }
            basis.tables = Some((obj, score));
        }
        Ok(basis)
    }

    fn decode(&self, x: usize) -> Conformation {
        let bits: Vec<bool> = (0..self.config_bits).map(|i| x >> i & 1 == 1).collect();
        Conformation::from_bits(self.seq.clone(), &bits).expect("bit count matches layout")
    }

    fn objective_uncached(&self, x: usize) -> f64 {
        match &self.hamiltonian {
            Some(h) => {
                let bits: Vec<bool> = (0..self.n_qubits).map(|i| x >> i & 1 == 1).collect();
                h.energy(&bits).expect("qubit count matches layout")
            }
            None => {
                evaluate(
                    &self.decode(x),
                    self.table,
                    EnergyMode::Clamped,
                    self.objective_penalties,
                )
                .total
            }
        }
    }

    fn score_uncached(&self, x: usize) -> f64 {
        evaluate(
            &self.decode(x),
            self.table,
            EnergyMode::Clamped,
            self.score_penalties,
        )
        .total
    }

    fn objective(&self, x: usize) -> f64 {
        match &self.tables {
            Some((obj, _)) => obj[x],
            None => self.objective_uncached(x),
        }
    }

    fn score(&self, x: usize) -> f64 {
        match &self.tables {
            Some((_, score)) => score[x],
            None => self.score_uncached(x),
        }
    }
}

struct RestartOutcome {
    champion_energy: f64,
    champion_turns: Vec<u8>,
    /// Per objective call: (CVaR objective, champion energy so far).
    calls: Vec<(f64, f64)>,
    evaluations: u64,
}

struct ObjectiveCtx<'a> {
    energies: &'a BasisEnergies<'a>,
    cfg: &'a VqeConfig,
    rng: ChaCha8Rng,
    state: Vec<f64>,
    champion: Option<(f64, usize)>,
    calls: Vec<(f64, f64)>,
}

impl ObjectiveCtx<'_> {
    fn consider(&mut self, x: usize) {
        let e = self.energies.score(x);
        let replace = match self.champion {
            None => true,
            Some((be, bx)) => {
                e < be
                    || (e == be
                        && x != bx
                        && better(
                            e,
                            self.energies.decode(x).turns(),
                            be,
                            self.energies.decode(bx).turns(),
                        ))
            }
        };
        if replace {
            self.champion = Some((e, x));
        }
    }

    fn eval(&mut self, params: &[f64]) -> f64 {
        let n = self.energies.n_qubits;
        apply_ansatz(&mut self.state, n, params, self.cfg.layers, self.cfg.topology);
        let objective = if self.cfg.exact_expectation {
            let mut dist: Vec<(f64, f64)> = Vec::new();
            let mut observed = Vec::new();
            for (x, &a) in self.state.iter().enumerate() {
                let p = a * a;
                if p > 1e-12 {
                    dist.push((self.energies.objective(x), p));
                    observed.push(x);
                }
            }
            for x in observed {
                self.consider(x);
            }
            dist.sort_by(|a, b| a.0.total_cmp(&b.0));
            cvar_exact(&dist, self.cfg.alpha)
        } else {
            let samples = self.sample();
            let mut energies: Vec<f64> = samples
                .iter()
                .map(|&x| self.energies.objective(x))
                .collect();
            for &x in &samples {
                self.consider(x);
            }
            energies.sort_by(f64::total_cmp);
            cvar_sorted(&energies, self.cfg.alpha)
        };
        let best = self.champion.expect("at least one state observed").0;
        self.calls.push((objective, best));
        objective
    }

    /// Draws `shots` basis indices from |ψ|² by inverse transform over
    /// sorted uniforms (single pass, no stored CDF).
    fn sample(&mut self) -> Vec<usize> {
        let shots = self.cfg.shots as usize;
        let mut uniforms: Vec<f64> = (0..shots).map(|_| self.rng.random()).collect();
        uniforms.sort_by(f64::total_cmp);
        let mut out = Vec::with_capacity(shots);
        let mut acc = 0.0;
        let mut pending = uniforms.iter().copied().peekable();
        for (x, &a) in self.state.iter().enumerate() {
            acc += a * a;
            while pending.peek().is_some_and(|&u| u <= acc) {
                out.push(x);
                pending.next();
            }
            if out.len() == shots {
                break;
            }
        }
        // Uniforms beyond the accumulated norm (1 − O(1e−16)) land on the
        // last basis state.
        out.resize(shots, self.state.len() - 1);
        out
    }
}

fn step_eval<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64], remaining: &mut u32) -> Option<f64> {
    if *remaining == 0 {
        return None;
    }
    *remaining -= 1;
    Some(f(x))
}

/// Budgeted Nelder–Mead simplex descent (reflect 1, expand 2, contract 1/2,
/// shrink 1/2). Runs until the evaluation budget is spent; the caller reads
/// progress out of the objective's side effects.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], step: f64, budget: u32) {
    let p = x0.len();
    let mut remaining = budget;
    let Some(f0) = step_eval(&mut f, x0, &mut remaining) else {
        return;
    };
    let mut simplex = vec![(x0.to_vec(), f0)];
    for i in 0..p {
        let mut xi = x0.to_vec();
        xi[i] += step;
        let Some(fi) = step_eval(&mut f, &xi, &mut remaining) else {
            return;
        };
        simplex.push((xi, fi));
    }
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut centroid = vec![0.0; p];
        for (x, _) in &simplex[..p] {
            for i in 0..p {
                centroid[i] += x[i];
            }
        }
        for v in &mut centroid {
            *v /= p as f64;
        }
        let worst = simplex[p].clone();
        let reflected: Vec<f64> = (0..p).map(|i| 2.0 * centroid[i] - worst.0[i]).collect();
        let Some(fr) = step_eval(&mut f, &reflected, &mut remaining) else {
            return;
        };
        if fr < simplex[0].1 {
            let expanded: Vec<f64> =
                (0..p).map(|i| centroid[i] + 2.0 * (centroid[i] - worst.0[i])).collect();
            let Some(fe) = step_eval(&mut f, &expanded, &mut remaining) else {
                return;
            };
            simplex[p] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[p - 1].1 {
            simplex[p] = (reflected, fr);
        } else {
            let outside = fr < worst.1;
            let contracted: Vec<f64> = if outside {
                (0..p).map(|i| centroid[i] + 0.5 * (reflected[i] - centroid[i])).collect()
            } else {
                (0..p).map(|i| centroid[i] - 0.5 * (centroid[i] - worst.0[i])).collect()
            };
            let Some(fc) = step_eval(&mut f, &contracted, &mut remaining) else {
                return;
            };
            if fc <= if outside { fr } else { worst.1 } {
                simplex[p] = (contracted, fc);
            } else {
                let anchor = simplex[0].0.clone();
                for k in 1..=p {
                    let shrunk: Vec<f64> = (0..p)
                        .map(|i| anchor[i] + 0.5 * (simplex[k].0[i] - anchor[i]))
                        .collect();
                    let Some(fs) = step_eval(&mut f, &shrunk, &mut remaining) else {
                        return;
                    };
                    simplex[k] = (shrunk, fs);
                }
            }
        }
    }
}

/// Runs the CVaR-VQE loop and returns the champion re-scored by the oracle.
///
/// Restarts are independent (parallel) with derived seeds; identical
/// configurations give identical results.
///
/// # Errors
/// Rejects invalid configs and registers above `cfg.qubit_cap`.
pub fn solve_cvar_vqe(
    seq: &ProteinSequence,
    table: &ContactEnergyTable,
    cfg: &VqeConfig,
    penalties: Penalties,
) -> Result<SolveResult> {
    cfg.validate()?;
    let energies = BasisEnergies::new(seq, table, penalties, cfg.full_ancillas, cfg.qubit_cap)?;
    let n = energies.n_qubits;
    let dim = 1usize << n;
    let n_params = n * (cfg.layers as usize + 1);

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, u64::from(r)));
            let mut ctx = ObjectiveCtx {
                energies: &energies,
                cfg,
                rng,
                state: vec![0.0; dim],
                champion: None,
                calls: Vec::new(),
            };
            let x0: Vec<f64> = (0..n_params)
                .map(|_| ctx.rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            nelder_mead(|params| ctx.eval(params), &x0, 0.5, cfg.max_evals);
            let (champion_energy, champion_index) =
                ctx.champion.expect("budget >= 1 guarantees one evaluation");
            let evaluations = ctx.calls.len() as u64;
            RestartOutcome {
                champion_energy,
                champion_turns: ctx.energies.decode(champion_index).turns().to_vec(),
                calls: ctx.calls,
                evaluations,
            }
        })
        .collect();

    let mut best_energy = f64::INFINITY;
    let mut best_turns: Vec<u8> = Vec::new();
    let mut trace = Vec::new();
    let mut evaluations = 0u64;
    let mut step = 0u64;
    for outcome in &outcomes {
        evaluations += outcome.evaluations;
        for &(objective, chain_best) in &outcome.calls {
            step += 1;
            trace.push(TracePoint {
                step,
                objective,
                best: best_energy.min(chain_best),
            });
        }
        if better(
            outcome.champion_energy,
            &outcome.champion_turns,
            best_energy,
            &best_turns,
        ) {
            best_energy = outcome.champion_energy;
            best_turns = outcome.champion_turns.clone();
        }
    }

    let best_conformation = Conformation::new(seq.clone(), best_turns)?;
    let best_energy = evaluate(&best_conformation, table, EnergyMode::Clamped, penalties).total;
    Ok(SolveResult {
        solver_id: "cvar-vqe",
        best_energy,
        best_conformation,
        evaluations,
        trace,
        rng_seed: Some(cfg.seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::solve_exhaustive;

    fn seq(text: &str) -> ProteinSequence {
        ProteinSequence::parse(text).unwrap()
    }

    fn table() -> ContactEnergyTable {
        ContactEnergyTable::embedded().unwrap()
    }

    #[test]
    fn gates_preserve_normalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1usize, 2, 3, 5] {
            for layers in [0u32, 1, 3] {
                for topology in [EntanglerTopology::Chain, EntanglerTopology::Ring] {
                    let mut state = vec![0.0; 1 << n];
                    let params: Vec<f64> = (0..n * (layers as usize + 1))
                        .map(|_| rng.random_range(-3.2..3.2))
                        .collect();
                    apply_ansatz(&mut state, n, &params, layers, topology);
                    assert!((norm_sq(&state) - 1.0).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn ry_rotates_single_qubit_as_expected() {
        let mut state = vec![1.0, 0.0];
        apply_ry(&mut state, 0, std::f64::consts::PI);
        // Ry(π)|0> = |1>.
        assert!((state[0]).abs() <= 1e-12);
        assert!((state[1] - 1.0).abs() <= 1e-12);
        let mut state = vec![1.0, 0.0, 0.0, 0.0];
        apply_ry(&mut state, 1, std::f64::consts::PI);
        assert!((state[2] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn cx_swaps_controlled_amplitudes() {
        // |10> (control qubit 0 set) -> |11>.
        let mut state = vec![0.0, 1.0, 0.0, 0.0];
        apply_cx(&mut state, 0, 1);
        assert_eq!(state, vec![0.0, 0.0, 0.0, 1.0]);
        // Control clear: untouched.
        let mut state = vec![1.0, 0.0, 0.0, 0.0];
        apply_cx(&mut state, 0, 1);
        assert_eq!(state, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn cvar_reductions() {
        let sorted = [-4.0, -1.0, 0.0, 0.0, 2.0];
        // Small alpha keeps only the lowest sample.
        assert_eq!(cvar_sorted(&sorted, 0.2), -4.0);
        assert_eq!(cvar_sorted(&sorted, 1.0), -0.6);
        // Monotone in alpha.
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=100 {
            let a = k as f64 / 100.0;
            let v = cvar_sorted(&sorted, a);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
        // Exact distribution: two states, alpha covering half of the upper.
        let dist = [(-2.0, 0.25), (2.0, 0.75)];
        assert!((cvar_exact(&dist, 0.5) - (-2.0 * 0.25 + 2.0 * 0.25) / 0.5).abs() <= 1e-12);
        assert!((cvar_exact(&dist, 1.0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn zero_angles_give_all_zeros_decode_regardless_of_shots_and_alpha() {
        let s = seq("LHPGAGK");
        let t = table();
        let p = Penalties::default();
        let energies = BasisEnergies::new(&s, &t, p, false, 24).unwrap();
        let expected = energies.objective(0);
        for (shots, alpha) in [(1u32, 0.1), (64, 0.5), (512, 1.0)] {
            let cfg = VqeConfig {
                shots,
                alpha,
                ..VqeConfig::default()
            };
            let mut ctx = ObjectiveCtx {
                energies: &energies,
                cfg: &cfg,
                rng: ChaCha8Rng::seed_from_u64(shots as u64),
                state: vec![0.0; 1 << energies.n_qubits],
                champion: None,
                calls: Vec::new(),
            };
            let params = vec![0.0; energies.n_qubits * 2];
            let got = ctx.eval(&params);
            assert!((got - expected).abs() <= 1e-9, "{got} vs {expected}");
        }
        // The all-zeros decode is the maximally back-turned chain; its
        // objective carries three back-turn penalties plus any contacts.
        let conf = energies.decode(0);
        assert_eq!(conf.turns(), &[0, 2, 0, 0, 0, 0]);
        assert_eq!(conf.backturn_count(), 3);
        assert!(expected >= 3.0 * p.backturn - table().max_abs_energy() * 2.0);
    }

    #[test]
    fn alpha_one_exact_mode_equals_expectation() {
        let s = seq("QWKCYD");
        let t = table();
        let energies = BasisEnergies::new(&s, &t, Penalties::default(), false, 24).unwrap();
        let cfg = VqeConfig {
            alpha: 1.0,
            exact_expectation: true,
            ..VqeConfig::default()
        };
        let mut ctx = ObjectiveCtx {
            energies: &energies,
            cfg: &cfg,
            rng: ChaCha8Rng::seed_from_u64(5),
            state: vec![0.0; 1 << energies.n_qubits],
            champion: None,
            calls: Vec::new(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let params: Vec<f64> = (0..energies.n_qubits * 2)
                .map(|_| rng.random_range(-3.0..3.0))
                .collect();
            let got = ctx.eval(&params);
            // Independent expectation over the same state.
            let mut state = vec![0.0; 1 << energies.n_qubits];
            apply_ansatz(&mut state, energies.n_qubits, &params, 1, EntanglerTopology::Chain);
            let want: f64 = state
                .iter()
                .enumerate()
                .map(|(x, a)| a * a * energies.objective(x))
                .sum();
            assert!((got - want).abs() <= 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn identical_seeds_are_bit_for_bit_reproducible() {
        let s = seq("QWKCYD");
        let t = table();
        let cfg = VqeConfig {
            max_evals: 40,
            restarts: 2,
            shots: 128,
            ..VqeConfig::default()
        };
        let a = solve_cvar_vqe(&s, &t, &cfg, Penalties::default()).unwrap();
        let b = solve_cvar_vqe(&s, &t, &cfg, Penalties::default()).unwrap();
        assert_eq!(a.best_energy, b.best_energy);
        assert_eq!(a.best_conformation.turns(), b.best_conformation.turns());
        assert_eq!(a.trace.len(), b.trace.len());
        for (x, y) in a.trace.iter().zip(&b.trace) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn never_beats_the_oracle_and_finds_small_minimum() {
        let s = seq("QWKCYD");
        let t = table();
        let p = Penalties::default();
        let exact = solve_exhaustive(&s, &t, EnergyMode::Clamped, p).unwrap();
        let r = solve_cvar_vqe(&s, &t, &VqeConfig::default(), p).unwrap();
        assert!(r.best_energy >= exact.best_energy - 1e-12);
        // 18 states on 5 qubits: the default budget should find the ground
        // state with margin.
        assert_eq!(r.best_energy, exact.best_energy);
        assert_eq!(r.solver_id, "cvar-vqe");
        assert!(r.trace.windows(2).all(|w| w[1].best <= w[0].best));
    }

    #[test]
    fn full_ancilla_register_reaches_the_same_minimum() {
        let s = seq("QWKCYD");
        let t = table();
        let p = Penalties::default();
        let exact = solve_exhaustive(&s, &t, EnergyMode::Clamped, p).unwrap();
        let cfg = VqeConfig {
            full_ancillas: true,
            ..VqeConfig::default()
        };
        let r = solve_cvar_vqe(&s, &t, &cfg, p).unwrap();
        assert_eq!(r.best_energy, exact.best_energy);
    }

    #[test]
    fn rejects_registers_above_cap() {
        let long = "A".repeat(16); // 2·16−7 = 25 qubits
        let err = solve_cvar_vqe(
            &seq(&long),
            &table(),
            &VqeConfig::default(),
            Penalties::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("cap"));
        let bad_alpha = VqeConfig {
            alpha: 0.0,
            ..VqeConfig::default()
        };
        assert!(solve_cvar_vqe(&seq("LHPGAGK"), &table(), &bad_alpha, Penalties::default())
            .is_err());
    }

    #[test]
    fn ring_topology_runs_and_differs_from_chain() {
        let s = seq("LHPGAGK");
        let t = table();
        let base = VqeConfig {
            max_evals: 30,
            restarts: 1,
            shots: 256,
            ..VqeConfig::default()
        };
        let ring = VqeConfig {
            topology: EntanglerTopology::Ring,
            ..base.clone()
        };
        let a = solve_cvar_vqe(&s, &t, &base, Penalties::default()).unwrap();
        let b = solve_cvar_vqe(&s, &t, &ring, Penalties::default()).unwrap();
        assert!(a.trace.iter().zip(&b.trace).any(|(x, y)| x.objective != y.objective));
    }
}
