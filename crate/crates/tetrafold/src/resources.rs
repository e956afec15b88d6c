//! Device-agnostic resource estimates for the lattice model.
//!
//! Three sizing questions come up before anything touches hardware: how many
//! qubits a chain of N residues needs, how many measurement shots bound the
//! statistical error of the energy estimate, and how hopeless a brute-force
//! conformational search would be (the Levinthal count). All three are
//! closed-form calculations, collected here together with a small
//! least-squares helper for fitting the qubit curve.
//!
//! Everything in this module is pure arithmetic: no device topology, gate
//! counts, or transpiler assumptions. Shot bounds take `h_max` and the spin
//! term count straight from a built Hamiltonian, so the numbers refer to the
//! same operator the solvers see.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;

/// Seconds per (365-day) year, for the Levinthal conversion.
const SECONDS_PER_YEAR: f64 = 3.1536e7;

/// Qubit budget for one chain, with optional measurement-cost figures.
///
/// [`qubit_count`] fills only the counts; [`ResourceEstimate::for_hamiltonian`]
/// also records the spin term count, the largest coefficient magnitude, and
/// the shot bounds derived from them.
#[derive(Debug, Clone, Serialize)]
pub struct ResourceEstimate {
    pub residues: usize,
    /// Turn-encoding bits: 2N − 7 after symmetry fixing.
    pub config_qubits: usize,
    /// One ancilla per odd-distance residue pair at separation ≥ 5.
    pub interaction_qubits: usize,
    pub total_qubits: usize,
    /// Number of non-constant spin terms (Pauli-Z strings to measure).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_terms: Option<u64>,
    /// Largest |coefficient| in the spin form, kcal/mol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_max: Option<f64>,
    /// Shot bounds per requested precision, sorted by epsilon.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shots_bound: Vec<ShotsBound>,
}

/// Upper bound on measurement shots for one target precision.
#[derive(Debug, Clone, Serialize)]
pub struct ShotsBound {
    /// Target standard error of the mean energy, kcal/mol.
    pub epsilon: f64,
    pub shots: u128,
}

/// Number of interaction ancillas for a chain of `n` residues: the count of
/// residue pairs at odd sequence separation of at least 5.
///
/// The sum telescopes to ⌊(n − 4)² / 4⌋, which is what this returns; the
/// equivalence with the explicit sum is checked in tests.
pub fn interaction_qubits(n: usize) -> usize {
    if n < 5 {
        return 0;
    }
    (n - 4) * (n - 4) / 4
}

/// Exact qubit counts for a chain of `n` residues (counts only; no
/// measurement figures).
///
/// # Errors
/// Rejects `n < 4`: shorter chains have no free turns to encode.
pub fn qubit_count(n: usize) -> Result<ResourceEstimate> {
    if n < 4 {
        return Err(Error::invalid(format!(
            "qubit counts need at least 4 residues, got {n}"
        )));
    }
    let config = 2 * n - 7;
    let interaction = interaction_qubits(n);
    Ok(ResourceEstimate {
        residues: n,
        config_qubits: config,
        interaction_qubits: interaction,
        total_qubits: config + interaction,
        spin_terms: None,
        h_max: None,
        shots_bound: Vec::new(),
    })
}

impl ResourceEstimate {
    /// Full estimate for a built Hamiltonian: qubit counts from the chain
    /// length plus shot bounds at each requested precision.
    ///
    /// A zero Hamiltonian (possible for very short chains, where every term
    /// is fixed by symmetry) gets a shot bound of zero: there is nothing to
    /// measure.
    ///
    /// # Errors
    /// Rejects non-positive epsilons.
    pub fn for_hamiltonian(h: &Hamiltonian, epsilons: &[f64]) -> Result<ResourceEstimate> {
        let mut estimate = qubit_count(h.sequence().len())?;
        let spin = h.poly.to_spin();
        let (h_max, terms) = (spin.h_max(), spin.term_count());
        estimate.spin_terms = Some(terms);
        estimate.h_max = Some(h_max);
        let mut bounds = Vec::with_capacity(epsilons.len());
        for &eps in epsilons {
            let shots = if h_max > 0.0 {
                shots_bound(h_max, terms, eps)?
            } else if eps > 0.0 {
                0
            } else {
                return Err(Error::invalid(format!("epsilon must be positive, got {eps}")));
            };
            bounds.push(ShotsBound {
                epsilon: eps,
                shots,
            });
        }
        bounds.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
        estimate.shots_bound = bounds;
        Ok(estimate)
    }
}

/// Shot-count upper bound before rounding: h_max² · (1 + T) / ε².
///
/// # Errors
/// Rejects non-positive `h_max` or `epsilon`.
pub fn shots_bound_raw(h_max: f64, spin_terms: u64, epsilon: f64) -> Result<f64> {
    if !(h_max > 0.0) {
        return Err(Error::invalid(format!(
            "h_max must be positive, got {h_max}"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(h_max * h_max * (1.0 + spin_terms as f64) / (epsilon * epsilon))
}

/// Shot-count upper bound S = ⌈h_max² · (1 + T) / ε²⌉ guaranteeing a
/// standard error of at most ε on the mean energy.
///
/// The bound is loose (it assumes every term fluctuates maximally); treat it
/// as a budget ceiling, not a prediction.
///
/// # Errors
/// Rejects non-positive `h_max` or `epsilon`, and bounds too large for u128.
pub fn shots_bound(h_max: f64, spin_terms: u64, epsilon: f64) -> Result<u128> {
    let raw = shots_bound_raw(h_max, spin_terms, epsilon)?.ceil();
    if raw >= u128::MAX as f64 || !raw.is_finite() {
        return Err(Error::too_large(format!(
            "shot bound {raw:e} does not fit an integer count"
        )));
    }
    Ok(raw as u128)
}

/// Least-squares quadratic a·N² + b·N + c through a set of points.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Euclidean norm of the residual vector at the fitted coefficients.
    pub residual: f64,
}

/// Fits a·N² + b·N + c to `(N, value)` points by least squares.
///
/// # Errors
/// Rejects non-finite points, fewer than 3 distinct abscissae, and a
/// rank-deficient design matrix.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<QuadraticFit> {
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::invalid("fit points must all be finite"));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(Error::invalid(format!(
            "quadratic fit needs at least 3 distinct abscissae, got {}",
            xs.len()
        )));
    }
    let design = DMatrix::from_fn(points.len(), 3, |r, c| points[r].0.powi(2 - c as i32));
    let values = DVector::from_fn(points.len(), |r, _| points[r].1);
    let svd = design
        .clone()
        .try_svd(true, true, f64::EPSILON, 1000)
        .ok_or_else(|| Error::invalid("singular value decomposition did not converge"))?;
    let scale = svd.singular_values.max();
    if svd.rank(scale * 1e-12) < 3 {
        return Err(Error::invalid(
            "design matrix is rank deficient; check the input points",
        ));
    }
    let coeffs = svd.solve(&values, scale * 1e-12).map_err(Error::invalid)?;
    let residual = (&design * &coeffs - &values).norm();
    Ok(QuadraticFit {
        a: coeffs[0],
        b: coeffs[1],
        c: coeffs[2],
        residual,
    })
}

/// Size of the brute-force conformational search for an `n`-residue chain.
#[derive(Debug, Clone, Serialize)]
pub struct LevinthalEstimate {
    pub residues: u64,
    /// Exact count 3^(2(n−1)), kept as a big integer so nothing truncates.
    #[serde(serialize_with = "decimal_string")]
    pub conformations: BigUint,
    /// Wall-clock years to visit every conformation at one per picosecond.
    /// Overflows to infinity past roughly 10³⁰⁰ conformations.
    pub exploration_years: f64,
}

fn decimal_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Exact search-space size 3^(2(n−1)) with the classic one-picosecond-per-
/// conformation exploration time.
///
/// # Errors
/// Rejects `n = 0`.
pub fn levinthal(n: u64) -> Result<LevinthalEstimate> {
    if n == 0 {
        return Err(Error::invalid("a chain has at least 1 residue"));
    }
    let exponent: u32 = (2 * (n - 1))
        .try_into()
        .map_err(|_| Error::too_large(format!("3^{} is beyond exact arithmetic", 2 * (n - 1))))?;
    let conformations = BigUint::from(3u32).pow(exponent);
    let seconds = conformations.to_f64().unwrap_or(f64::INFINITY) * 1e-12;
    Ok(LevinthalEstimate {
        residues: n,
        conformations,
        exploration_years: seconds / SECONDS_PER_YEAR,
    })
}

/// Qubit counts for every chain length in `lo..=hi`, for plotting scaling
/// curves.
///
/// # Errors
/// Rejects `lo < 4` or an empty range.
pub fn qubit_curve(lo: usize, hi: usize) -> Result<Vec<ResourceEstimate>> {
    if lo > hi {
        return Err(Error::invalid(format!("empty range {lo}..={hi}")));
    }
    (lo..=hi).map(qubit_count).collect()
}

/// Renders estimates as CSV with header `N,config,interaction,total`.
pub fn curve_csv(rows: &[ResourceEstimate]) -> String {
    let mut out = String::from("N,config,interaction,total\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.residues, r.config_qubits, r.interaction_qubits, r.total_qubits
        ));
    }
    out
}
