//! Metropolis simulated annealing in turn space.
//!
//! The move set resamples one turn uniformly from the values differing from
//! both neighboring turns, so every proposal stays inside the valid
//! (symmetry-fixed, back-turn-free) space and the walk never wastes steps on
//! penalized encodings. Restarts run independently (in parallel) from
//! per-restart derived seeds and merge by a pure reduction, so results are
//! bit-for-bit reproducible for a fixed seed regardless of thread count.

use rand::{Rng, SeedableRng};
use serde::Serialize;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::energy::{evaluate, EnergyMode, Penalties};
use crate::error::{Error, Result};
use crate::model::{random_valid, Conformation, ContactEnergyTable, ProteinSequence};
use crate::solvers::{better, derive_seed, SolveResult, TracePoint};

/// Cooling and restart plan. Temperatures are in energy units (kcal/mol):
/// the acceptance test is exp(−ΔE/T) with no separate Boltzmann constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealSchedule {
    pub t_start: f64,
    pub t_end: f64,
    /// Sweeps per restart; each sweep proposes one move per free turn.
    pub sweeps: u32,
    pub restarts: u32,
    pub seed: u64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            t_start: 4.0,
            t_end: 0.02,
            sweeps: 400,
            restarts: 8,
            seed: 1,
        }
    }
}

impl AnnealSchedule {
    fn validate(&self) -> Result<()> {
        if !(self.t_start > self.t_end && self.t_end > 0.0) {
            return Err(Error::invalid(format!(
                "need T_start > T_end > 0, got {} and {}",
                self.t_start, self.t_end
            )));
        }
        if self.sweeps == 0 || self.restarts == 0 {
            return Err(Error::invalid("sweeps and restarts must be at least 1"));
        }
        Ok(())
    }

    /// Geometric interpolation from `t_start` to `t_end` across sweeps.
    fn temperature(&self, sweep: u32) -> f64 {
        if self.sweeps <= 1 {
            return self.t_start;
        }
        let frac = f64::from(sweep) / f64::from(self.sweeps - 1);
        self.t_start * (self.t_end / self.t_start).powf(frac)
    }
}

struct ChainOutcome {
    best_energy: f64,
    best_turns: Vec<u8>,
    /// Per sweep: (chain energy at sweep end, best energy so far).
    sweep_samples: Vec<(f64, f64)>,
    evaluations: u64,
}

/// One Metropolis chain. `start` overrides the random initial conformation.
fn run_chain(
    seq: &ProteinSequence,
    table: &ContactEnergyTable,
    schedule: &AnnealSchedule,
    mode: EnergyMode,
    penalties: Penalties,
    rng: &mut ChaCha8Rng,
    start: Option<&Conformation>,
) -> ChainOutcome {
    let n = seq.len();
    let mut turns = match start {
        Some(c) => c.turns().to_vec(),
        None => random_valid(seq, rng)
            .expect("caller checked N >= 4")
            .turns()
            .to_vec(),
    };
    let score = |t: &[u8]| {
        let conf = Conformation::new(seq.clone(), t.to_vec()).expect("moves preserve validity");
        evaluate(&conf, table, mode, penalties).total
    };
    let mut energy = score(&turns);
    let mut evaluations = 1u64;
    let mut best_energy = energy;
    let mut best_turns = turns.clone();
    let mut sweep_samples = Vec::with_capacity(schedule.sweeps as usize);

    for sweep in 0..schedule.sweeps {
        let t = schedule.temperature(sweep);
        for _ in 0..(n - 3) {
            // Free turns are t_3..t_{N-1}, stored at indices 2..n-1.
            let idx = rng.random_range(2..n - 1);
            let mut choices = [0u8; 4];
            let mut count = 0usize;
            let limit: u8 = if idx == 2 { 2 } else { 4 };
            for v in 0..limit {
                if v == turns[idx - 1] {
                    continue;
                }
                if idx + 1 < turns.len() && v == turns[idx + 1] {
                    continue;
                }
                choices[count] = v;
                count += 1;
            }
            let proposal = choices[rng.random_range(0..count)];
            if proposal == turns[idx] {
                continue;
            }
            let previous = turns[idx];
            turns[idx] = proposal;
            let candidate = score(&turns);
            evaluations += 1;
            let delta = candidate - energy;
            if delta <= 0.0 || rng.random::<f64>() < (-delta / t).exp() {
                energy = candidate;
                if better(energy, &turns, best_energy, &best_turns) {
                    best_energy = energy;
                    best_turns = turns.clone();
                }
            } else {
                turns[idx] = previous;
            }
        }
        sweep_samples.push((energy, best_energy));
    }
    ChainOutcome {
        best_energy,
        best_turns,
        sweep_samples,
        evaluations,
    }
}

/// Minimizes by simulated annealing with geometric cooling.
///
/// The trace samples the chain energy at the end of every sweep of every
/// restart. Identical seeds give identical results.
///
/// # Errors
/// Rejects N < 4 and malformed schedules.
pub fn solve_anneal(
    seq: &ProteinSequence,
    table: &ContactEnergyTable,
    schedule: &AnnealSchedule,
    mode: EnergyMode,
    penalties: Penalties,
) -> Result<SolveResult> {
    schedule.validate()?;
    crate::model::free_bit_count(seq.len())?;

    let outcomes: Vec<ChainOutcome> = (0..schedule.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(schedule.seed, u64::from(r)));
            run_chain(seq, table, schedule, mode, penalties, &mut rng, None)
        })
        .collect();

    let mut best_energy = f64::INFINITY;
    let mut best_turns: Vec<u8> = Vec::new();
    let mut trace = Vec::new();
    let mut evaluations = 0u64;
    let mut step = 0u64;
    for outcome in &outcomes {
        evaluations += outcome.evaluations;
        for &(e, chain_best) in &outcome.sweep_samples {
            step += 1;
            trace.push(TracePoint {
                step,
                objective: e,
                best: best_energy.min(chain_best),
            });
        }
        if better(outcome.best_energy, &outcome.best_turns, best_energy, &best_turns) {
            best_energy = outcome.best_energy;
            best_turns = outcome.best_turns.clone();
        }
    }

    let best_conformation = Conformation::new(seq.clone(), best_turns)?;
    let best_energy = evaluate(&best_conformation, table, mode, penalties).total;
    Ok(SolveResult {
        solver_id: "anneal",
        best_energy,
        best_conformation,
        evaluations,
        trace,
        rng_seed: Some(schedule.seed),
    })
}
