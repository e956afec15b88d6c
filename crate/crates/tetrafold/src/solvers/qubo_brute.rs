//! Exact QUBO minimization by enumeration.
//!
//! Walks assignments in Gray-code order so each step updates the energy by
//! one flipped variable (O(degree) instead of O(terms)). A second pass
//! collects near-minimal assignments and re-scores them from scratch, so the
//! reported minimum and argmin set carry no accumulated rounding drift.

use crate::error::{Error, Result};
use crate::qubo::QuboProgram;

/// Variable cap: 2^24 assignments is the most a desk-scale exact sweep
/// should attempt.
pub const QUBO_BRUTE_CAP: u32 = 24;

/// Exact minimum and the complete set of minimizing assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboSolution {
    pub energy: f64,
    /// All minimizers, sorted by assignment (as little-endian bit integers).
    pub argmins: Vec<Vec<bool>>,
    pub evaluations: u64,
}

/// Enumerates every assignment of a QUBO program.
///
/// # Errors
/// Rejects programs with more than [`QUBO_BRUTE_CAP`] variables.
pub fn solve_qubo_bruteforce(q: &QuboProgram) -> Result<QuboSolution> {
    let n = q.num_vars;
    if n > QUBO_BRUTE_CAP {
        return Err(Error::too_large(format!(
            "QUBO has {n} variables, above the exact-enumeration cap of {QUBO_BRUTE_CAP}"
        )));
    }
    if n == 0 {
        return Ok(QuboSolution {
            energy: q.offset,
            argmins: vec![Vec::new()],
            evaluations: 1,
        });
    }
    let n = n as usize;
    let mut linear = vec![0.0f64; n];
    for (&i, &c) in &q.linear {
        linear[i as usize] += c;
    }
    let mut adjacent: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (&(i, j), &c) in &q.quadratic {
        adjacent[i as usize].push((j as usize, c));
        adjacent[j as usize].push((i as usize, c));
    }

    // Energy change from flipping `bit` out of state `x`.
    let flip_delta = |x: &[bool], bit: usize| {
        let mut d = linear[bit];
        for &(j, c) in &adjacent[bit] {
            if x[j] {
                d += c;
            }
        }
        if x[bit] {
            -d
        } else {
            d
        }
    };

    // Pass 1: find the minimum of the drifting Gray-code walk.
    let total = 1u64 << n;
    let mut x = vec![false; n];
    let mut energy = q.offset;
    let mut min_seen = energy;
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        energy += flip_delta(&x, bit);
        x[bit] = !x[bit];
        min_seen = min_seen.min(energy);
    }

    // Pass 2: collect candidates within a band wide enough to absorb the
    // walk's floating-point drift, then re-score them exactly.
    const BAND: f64 = 1e-7;
    const TIE: f64 = 1e-9;
    let mut candidates: Vec<u64> = Vec::new();
    let mut x = vec![false; n];
    let mut energy = q.offset;
    let mut mask = 0u64;
    if energy <= min_seen + BAND {
        candidates.push(0);
    }
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        energy += flip_delta(&x, bit);
        x[bit] = !x[bit];
        mask ^= 1 << bit;
        if energy <= min_seen + BAND {
            candidates.push(mask);
        }
    }
    candidates.sort_unstable();

    let to_bits = |mask: u64| -> Vec<bool> { (0..n).map(|i| mask >> i & 1 == 1).collect() };
    let exact: Vec<(u64, f64)> = candidates
        .into_iter()
        .map(|m| {
            let e = q.eval(&to_bits(m)).expect("assignment length matches");
            (m, e)
        })
        .collect();
    let true_min = exact
        .iter()
        .map(|&(_, e)| e)
        .fold(f64::INFINITY, f64::min);
    let argmins: Vec<Vec<bool>> = exact
        .into_iter()
        .filter(|&(_, e)| e - true_min <= TIE)
        .map(|(m, _)| to_bits(m))
        .collect();

    Ok(QuboSolution {
        energy: true_min,
        argmins,
        evaluations: 2 * total,
    })
}
