//! Python bindings for the folding toolkit.
//!
//! Build with `cargo build -p tetrafold-py`, then import the produced
//! cdylib as `tetrafold_py` (see python/smoke_test.py for a loader that
//! handles the lib-prefix rename).
//!
//!     import tetrafold_py as tf
//!     r = tf.fold("LHPGAGK")
//!     r.best_energy          # -4.16
//!     r.turns                # [0, 2, 1, 0, 2, 0]
//!     open("out.pdb", "w").write(r.to_pdb())

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tetrafold::energy::{evaluate, EnergyMode, Penalties};
use tetrafold::hamiltonian::{build_hamiltonian, HamiltonianParams};
use tetrafold::model::{Conformation, ContactEnergyTable, ProteinSequence};
use tetrafold::qubo::{quadratize, PenaltyRule};
use tetrafold::resources;
use tetrafold::screener::{self, AlignmentProfile, ScreenConfig};
use tetrafold::solvers::{
    full_spectrum, solve_anneal, solve_cvar_vqe, solve_exhaustive, AnnealSchedule,
    EntanglerTopology, VqeConfig,
};
use tetrafold::structio::{self, CaTrace};

fn err(e: tetrafold::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_seq(seq: &str) -> PyResult<ProteinSequence> {
    ProteinSequence::parse(seq).map_err(err)
}

fn parse_mode(mode: Option<&str>) -> PyResult<EnergyMode> {
    match mode {
        None => Ok(EnergyMode::Physical),
        Some(s) => s.parse().map_err(err),
    }
}

fn table() -> PyResult<ContactEnergyTable> {
    ContactEnergyTable::embedded().map_err(err)
}

fn coord_tuples(trace: &CaTrace) -> Vec<(f64, f64, f64)> {
    trace.coords.iter().map(|&[x, y, z]| (x, y, z)).collect()
}

fn trace_from_tuples(coords: &[(f64, f64, f64)]) -> CaTrace {
    CaTrace {
        names: vec!["UNK".to_string(); coords.len()],
        coords: coords.iter().map(|&(x, y, z)| [x, y, z]).collect(),
    }
}

/// Outcome of a fold: the best conformation found, its energies, and
/// physical-coordinate renderings.
#[pyclass(frozen)]
struct FoldResult {
    #[pyo3(get)]
    sequence: String,
    #[pyo3(get)]
    solver: String,
    /// Re-scored oracle energy of the best conformation, kcal/mol.
    #[pyo3(get)]
    best_energy: f64,
    turns: Vec<u8>,
    #[pyo3(get)]
    evaluations: u64,
    #[pyo3(get)]
    valid: bool,
    #[pyo3(get)]
    radius_of_gyration: f64,
    /// Convergence samples as (step, objective, best_so_far).
    #[pyo3(get)]
    trace: Vec<(u64, f64, f64)>,
    ca: CaTrace,
}

#[pymethods]
impl FoldResult {
    /// Turn sequence of the best conformation as a list of ints
    /// (Vec<u8> would surface as Python bytes).
    #[getter]
    fn turns(&self) -> Vec<u16> {
        self.turns.iter().map(|&t| u16::from(t)).collect()
    }

    /// Cα coordinates in Å, one (x, y, z) per residue.
    #[getter]
    fn coordinates(&self) -> Vec<(f64, f64, f64)> {
        coord_tuples(&self.ca)
    }

    /// The fold as PDB text (Cα atoms only).
    fn to_pdb(&self) -> String {
        structio::write_pdb(&self.ca)
    }

    /// The fold as XYZ text.
    fn to_xyz(&self) -> String {
        structio::write_xyz(&self.ca)
    }

    fn __repr__(&self) -> String {
        format!(
            "FoldResult(sequence='{}', solver='{}', best_energy={}, turns={:?})",
            self.sequence, self.solver, self.best_energy, self.turns
        )
    }
}

/// Energy decomposition of one conformation.
#[pyclass(frozen)]
struct EnergyReport {
    #[pyo3(get)]
    contact_energy: f64,
    #[pyo3(get)]
    overlap_count: usize,
    #[pyo3(get)]
    backturn_count: usize,
    #[pyo3(get)]
    total: f64,
    #[pyo3(get)]
    valid: bool,
}

#[pymethods]
impl EnergyReport {
    fn __repr__(&self) -> String {
        format!(
            "EnergyReport(total={}, contact_energy={}, overlaps={}, backturns={}, valid={})",
            self.total, self.contact_energy, self.overlap_count, self.backturn_count, self.valid
        )
    }
}

/// Shape of the interaction Hamiltonian for a sequence.
#[pyclass(frozen)]
struct HamiltonianInfo {
    #[pyo3(get)]
    sequence: String,
    #[pyo3(get)]
    residues: usize,
    #[pyo3(get)]
    config_bits: usize,
    #[pyo3(get)]
    interaction_ancillas: usize,
    #[pyo3(get)]
    variables: Vec<String>,
    #[pyo3(get)]
    max_degree: usize,
    #[pyo3(get)]
    boolean_terms: usize,
    #[pyo3(get)]
    spin_terms: u64,
    #[pyo3(get)]
    spin_h_max: f64,
}

/// Shape of the quadratized (QUBO) form.
#[pyclass(frozen)]
struct QuboInfo {
    #[pyo3(get)]
    variables: u32,
    #[pyo3(get)]
    original_variables: u32,
    #[pyo3(get)]
    ancillas: u32,
    #[pyo3(get)]
    penalty: f64,
    #[pyo3(get)]
    offset: f64,
    #[pyo3(get)]
    boolean_terms: usize,
    #[pyo3(get)]
    spin_terms: u64,
    #[pyo3(get)]
    spin_h_max: f64,
}

/// Hardness classification of one target.
#[pyclass(frozen)]
struct ScreenReport {
    #[pyo3(get)]
    sequence: String,
    #[pyo3(get)]
    length: usize,
    #[pyo3(get)]
    mutations: Option<usize>,
    #[pyo3(get)]
    n_eff: Option<f64>,
    #[pyo3(get)]
    qubit_need: usize,
    #[pyo3(get)]
    tier: Option<usize>,
    #[pyo3(get)]
    msa_flag: String,
    #[pyo3(get)]
    amenable: bool,
    #[pyo3(get)]
    rationale: String,
}

/// Folds a sequence and returns the best conformation found.
///
/// `solver` is "exhaustive", "anneal", or "vqe"; stochastic solvers are
/// deterministic for a fixed `seed`. `mode` is "physical" (default) or
/// "clamped"; the VQE always scores clamped.
#[pyfunction]
#[pyo3(signature = (seq, solver="exhaustive", mode=None, seed=1, sweeps=None, restarts=None,
                    t_start=None, t_end=None, layers=None, alpha=None, shots=None,
                    max_evals=None, scale=None))]
#[allow(clippy::too_many_arguments)]
fn fold(
    seq: &str,
    solver: &str,
    mode: Option<&str>,
    seed: u64,
    sweeps: Option<u32>,
    restarts: Option<u32>,
    t_start: Option<f64>,
    t_end: Option<f64>,
    layers: Option<u32>,
    alpha: Option<f64>,
    shots: Option<u32>,
    max_evals: Option<u32>,
    scale: Option<f64>,
) -> PyResult<FoldResult> {
    let sequence = parse_seq(seq)?;
    let table = table()?;
    let penalties = Penalties::default();

    let mode = match (solver, mode) {
        ("vqe", None) => EnergyMode::Clamped,
        ("vqe", Some("physical")) => {
            return Err(PyValueError::new_err(
                "the vqe solver scores clamped contact energies; drop mode or pass 'clamped'",
            ))
        }
        (_, m) => parse_mode(m)?,
    };

    let result = match solver {
        "exhaustive" => solve_exhaustive(&sequence, &table, mode, penalties).map_err(err)?,
        "anneal" => {
            let d = AnnealSchedule::default();
            let schedule = AnnealSchedule {
                t_start: t_start.unwrap_or(d.t_start),
                t_end: t_end.unwrap_or(d.t_end),
                sweeps: sweeps.unwrap_or(d.sweeps),
                restarts: restarts.unwrap_or(d.restarts),
                seed,
            };
            solve_anneal(&sequence, &table, &schedule, mode, penalties).map_err(err)?
        }
        "vqe" => {
            let d = VqeConfig::default();
            let cfg = VqeConfig {
                layers: layers.unwrap_or(d.layers),
                alpha: alpha.unwrap_or(d.alpha),
                shots: shots.unwrap_or(d.shots),
                max_evals: max_evals.unwrap_or(d.max_evals),
                restarts: restarts.unwrap_or(d.restarts),
                seed,
                topology: EntanglerTopology::Chain,
                full_ancillas: d.full_ancillas,
                exact_expectation: d.exact_expectation,
                qubit_cap: d.qubit_cap,
            };
            solve_cvar_vqe(&sequence, &table, &cfg, penalties).map_err(err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown solver '{other}' (expected exhaustive, anneal, or vqe)"
            )))
        }
    };

    let scale = scale.unwrap_or_else(structio::default_scale);
    let breakdown = evaluate(&result.best_conformation, &table, mode, penalties);
    let ca = structio::to_trace(&result.best_conformation, scale);
    let rg = structio::radius_of_gyration(&ca).map_err(err)?;

    Ok(FoldResult {
        sequence: sequence.to_string(),
        solver: result.solver_id.to_string(),
        best_energy: result.best_energy,
        turns: result.best_conformation.turns().to_vec(),
        evaluations: result.evaluations,
        valid: breakdown.valid,
        radius_of_gyration: rg,
        trace: result
            .trace
            .iter()
            .map(|p| (p.step, p.objective, p.best))
            .collect(),
        ca,
    })
}

/// Scores one conformation given as a turn sequence (length N−1, values
/// 0..=3). Invalid conformations are allowed and come back penalized.
#[pyfunction]
#[pyo3(signature = (seq, turns, mode=None, overlap_penalty=50.0, backturn_penalty=50.0))]
fn energy(
    seq: &str,
    turns: Vec<u16>,
    mode: Option<&str>,
    overlap_penalty: f64,
    backturn_penalty: f64,
) -> PyResult<EnergyReport> {
    let sequence = parse_seq(seq)?;
    let turns: Vec<u8> = turns
        .into_iter()
        .map(|t| {
            u8::try_from(t)
                .map_err(|_| PyValueError::new_err(format!("turn value {t} out of range 0..=3")))
        })
        .collect::<PyResult<_>>()?;
    let conf = Conformation::new(sequence, turns).map_err(err)?;
    let b = evaluate(
        &conf,
        &table()?,
        parse_mode(mode)?,
        Penalties {
            overlap: overlap_penalty,
            backturn: backturn_penalty,
        },
    );
    Ok(EnergyReport {
        contact_energy: b.contact_energy,
        overlap_count: b.overlap_count,
        backturn_count: b.backturn_count,
        total: b.total,
        valid: b.valid,
    })
}

/// Every valid conformation with its energy, ascending. Exhaustive-cap
/// limits apply (N ≤ 14).
#[pyfunction]
#[pyo3(signature = (seq, mode=None))]
fn spectrum(seq: &str, mode: Option<&str>) -> PyResult<Vec<(f64, Vec<u16>)>> {
    let sequence = parse_seq(seq)?;
    let rows = full_spectrum(&sequence, &table()?, parse_mode(mode)?, Penalties::default())
        .map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|(e, c)| (e, c.turns().iter().map(|&t| u16::from(t)).collect()))
        .collect())
}

/// Shape of the sequence's interaction Hamiltonian.
#[pyfunction]
fn hamiltonian_info(seq: &str) -> PyResult<HamiltonianInfo> {
    let sequence = parse_seq(seq)?;
    let h = build_hamiltonian(&sequence, &table()?, HamiltonianParams::default()).map_err(err)?;
    let m = h.meta();
    Ok(HamiltonianInfo {
        sequence: m.sequence,
        residues: m.residues,
        config_bits: m.config_bits,
        interaction_ancillas: m.interaction_ancillas,
        variables: m.variables,
        max_degree: m.max_degree,
        boolean_terms: m.boolean_terms,
        spin_terms: m.spin_terms,
        spin_h_max: m.spin_h_max,
    })
}

fn parse_rule(penalty: &str) -> PyResult<PenaltyRule> {
    match penalty {
        "auto" => Ok(PenaltyRule::Auto),
        "tight" => Ok(PenaltyRule::TightPerAncilla),
        other => match other.parse::<f64>() {
            Ok(v) => Ok(PenaltyRule::Fixed(v)),
            Err(_) => Err(PyValueError::new_err(format!(
                "penalty must be 'auto', 'tight', or a number, got '{other}'"
            ))),
        },
    }
}

/// Shape of the sequence's quadratized (QUBO) form.
#[pyfunction]
#[pyo3(signature = (seq, penalty="auto"))]
fn qubo_info(seq: &str, penalty: &str) -> PyResult<QuboInfo> {
    let sequence = parse_seq(seq)?;
    let h = build_hamiltonian(&sequence, &table()?, HamiltonianParams::default()).map_err(err)?;
    let q = quadratize(&h.poly, parse_rule(penalty)?).map_err(err)?;
    let m = q.meta();
    Ok(QuboInfo {
        variables: m.variables,
        original_variables: m.original_variables,
        ancillas: m.variables - m.original_variables,
        penalty: m.penalty,
        offset: m.offset,
        boolean_terms: m.boolean_terms,
        spin_terms: m.spin_terms,
        spin_h_max: m.spin_h_max,
    })
}

/// The quadratized program as text, one term per line.
#[pyfunction]
#[pyo3(signature = (seq, penalty="auto"))]
fn qubo_text(seq: &str, penalty: &str) -> PyResult<String> {
    let sequence = parse_seq(seq)?;
    let h = build_hamiltonian(&sequence, &table()?, HamiltonianParams::default()).map_err(err)?;
    let q = quadratize(&h.poly, parse_rule(penalty)?).map_err(err)?;
    Ok(q.to_text())
}

/// Qubit requirement for an N-residue chain as
/// (configuration, interaction, total).
#[pyfunction]
fn qubit_count(n: usize) -> PyResult<(usize, usize, usize)> {
    let est = resources::qubit_count(n).map_err(err)?;
    Ok((est.config_qubits, est.interaction_qubits, est.total_qubits))
}

/// Upper bound on measurement shots for energy precision `epsilon`
/// (kcal/mol) given the spin form's largest coefficient and term count.
#[pyfunction]
fn shots_bound(h_max: f64, terms: u64, epsilon: f64) -> PyResult<u128> {
    resources::shots_bound(h_max, terms, epsilon).map_err(err)
}

/// Conformation-space size and naive exploration time for an N-residue
/// chain, as (conformations, years at one conformation per picosecond).
#[pyfunction]
fn levinthal(n: u64) -> PyResult<(BigUint, f64)> {
    let est = resources::levinthal(n).map_err(err)?;
    Ok((est.conformations, est.exploration_years))
}

/// Classifies a target by qubit need, mutation load against an optional
/// reference, and alignment depth (FASTA/A3M text whose first row is the
/// query).
#[pyfunction]
#[pyo3(signature = (seq, reference=None, alignment=None, identity=0.62,
                    orphan_depth=30.0, target_depth=60.0, devices=None))]
fn screen(
    seq: &str,
    reference: Option<&str>,
    alignment: Option<&str>,
    identity: f64,
    orphan_depth: f64,
    target_depth: f64,
    devices: Option<Vec<usize>>,
) -> PyResult<ScreenReport> {
    let sequence = parse_seq(seq)?;
    let reference = reference.map(parse_seq).transpose()?;
    let alignment = alignment
        .map(|text| AlignmentProfile::parse(text).map_err(err))
        .transpose()?;
    let config = ScreenConfig {
        identity_threshold: identity,
        orphan_depth,
        target_depth,
        device_qubits: devices.unwrap_or_else(|| ScreenConfig::default().device_qubits),
    };
    let r = screener::screen(&sequence, reference.as_ref(), alignment.as_ref(), &config)
        .map_err(err)?;
    Ok(ScreenReport {
        sequence: r.sequence,
        length: r.length,
        mutations: r.mutations,
        n_eff: r.n_eff,
        qubit_need: r.qubit_need,
        tier: r.tier,
        msa_flag: r.msa_flag.to_string(),
        amenable: r.amenable,
        rationale: r.rationale,
    })
}

/// Optimal-superposition RMSD between two equal-length point sets, Å.
#[pyfunction]
fn rmsd(a: Vec<(f64, f64, f64)>, b: Vec<(f64, f64, f64)>) -> PyResult<f64> {
    structio::rmsd_kabsch(&trace_from_tuples(&a), &trace_from_tuples(&b)).map_err(err)
}

/// Radius of gyration of a point set, Å.
#[pyfunction]
fn radius_of_gyration(coords: Vec<(f64, f64, f64)>) -> PyResult<f64> {
    structio::radius_of_gyration(&trace_from_tuples(&coords)).map_err(err)
}

/// Cα coordinates from PDB text.
#[pyfunction]
fn parse_pdb(text: &str) -> PyResult<Vec<(f64, f64, f64)>> {
    let trace = structio::parse_pdb_ca(text).map_err(err)?;
    Ok(coord_tuples(&trace))
}

#[pymodule]
fn tetrafold_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FoldResult>()?;
    m.add_class::<EnergyReport>()?;
    m.add_class::<HamiltonianInfo>()?;
    m.add_class::<QuboInfo>()?;
    m.add_class::<ScreenReport>()?;
    m.add_function(wrap_pyfunction!(fold, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian_info, m)?)?;
    m.add_function(wrap_pyfunction!(qubo_info, m)?)?;
    m.add_function(wrap_pyfunction!(qubo_text, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_count, m)?)?;
    m.add_function(wrap_pyfunction!(shots_bound, m)?)?;
    m.add_function(wrap_pyfunction!(levinthal, m)?)?;
    m.add_function(wrap_pyfunction!(screen, m)?)?;
    m.add_function(wrap_pyfunction!(rmsd, m)?)?;
    m.add_function(wrap_pyfunction!(radius_of_gyration, m)?)?;
    m.add_function(wrap_pyfunction!(parse_pdb, m)?)?;
    Ok(())
}
