//! Turn-space energy evaluation: the classical oracle every other
//! representation must agree with.
//!
//! A *contact* is a candidate residue pair sitting at squared lattice
//! distance 3 (nearest neighbors). Candidate pairs have odd sequence
//! separation ≥ 5: the lattice is bipartite, so even separations can never
//! be nearest neighbors, and odd separations below 5 cannot close the gap
//! (the smallest reachable squared distance for 3 bonds is 11).
//!
//! Two evaluation modes exist. `Physical` sums the table energies of formed
//! contacts as-is. `Clamped` sums min(e_ij, 0), which is exactly what the
//! Hamiltonian's minimizing interaction ancillas reproduce — a positive e_ij
//! can never be "activated" by a minimizer. Overlaps (distinct beads on one
//! site) and back-turns are penalized linearly on top.

use serde::Serialize;

use crate::model::{Conformation, ContactEnergyTable};

/// How realized contacts are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyMode {
    /// True contact sum Σ e_ij (default for reporting).
    Physical,
    /// Σ min(e_ij, 0); agrees exactly with ancilla-minimized Hamiltonians.
    Clamped,
}

impl std::str::FromStr for EnergyMode {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "physical" => Ok(EnergyMode::Physical),
            "clamped" => Ok(EnergyMode::Clamped),
            other => Err(crate::error::Error::invalid(format!(
                "unknown energy mode '{other}' (expected physical or clamped)"
            ))),
        }
    }
}

/// Penalty weights, kcal/mol per violation.
///
/// Defaults (50/50) are strictly larger than any |e_ij| in the embedded
/// table, so no violation is ever energetically profitable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Penalties {
    /// λ_ov per pair of beads sharing a lattice site.
    pub overlap: f64,
    /// λ_bt per back-turn.
    pub backturn: f64,
}

impl Default for Penalties {
    fn default() -> Self {
        Penalties {
            overlap: 50.0,
            backturn: 50.0,
        }
    }
}

/// Full energy decomposition of one conformation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// Contact term under the requested mode, kcal/mol.
    pub contact_energy: f64,
    /// Bead pairs occupying one lattice site (separation ≥ 4, even).
    pub overlap_count: usize,
    /// Turn positions with t_{k+1} = t_k.
    pub backturn_count: usize,
    /// contact_energy + λ_ov·overlaps + λ_bt·back-turns.
    pub total: f64,
    /// True iff no overlaps and no back-turns.
    pub valid: bool,
}

/// All candidate contact pairs for an N-residue chain: 1-based (i, j) with
/// j − i odd and ≥ 5, in lexicographic order.
pub fn candidate_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in (i + 5..=n).step_by(2) {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Evaluates a conformation against the table.
///
/// Invalid conformations are not an error: they come back with penalized
/// totals and `valid = false`.
pub fn evaluate(
    conf: &Conformation,
    table: &ContactEnergyTable,
    mode: EnergyMode,
    penalties: Penalties,
) -> EnergyBreakdown {
    let positions = conf.positions();
    let seq = conf.sequence();
    let n = seq.len();

    let mut contact_energy = 0.0;
    for (i, j) in candidate_pairs(n) {
        if (positions[j - 1] - positions[i - 1]).norm_sq() == 3 {
            let e = table.energy(seq.residue(i - 1), seq.residue(j - 1));
            contact_energy += match mode {
                EnergyMode::Physical => e,
                EnergyMode::Clamped => e.min(0.0),
            };
        }
    }

    // Self-avoidance over all same-parity pairs. Separation 2 coincidences
    // are exactly the back-turns, counted separately below.
    let mut overlap_count = 0;
    for i in 0..n {
        for j in (i + 4..n).step_by(2) {
            if positions[i] == positions[j] {
                overlap_count += 1;
            }
        }
    }

    let backturn_count = conf.backturn_count();
    let total = contact_energy
        + penalties.overlap * overlap_count as f64
        + penalties.backturn * backturn_count as f64;
    EnergyBreakdown {
        contact_energy,
        overlap_count,
        backturn_count,
        total,
        valid: overlap_count == 0 && backturn_count == 0,
    }
}
