//! Subcommand implementations. Each one parses its flags, merges the
//! optional config file underneath (flags win), delegates to the library,
//! and serializes the result; no science lives here.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Subcommand};
use serde::Serialize;

use tetrafold::energy::{evaluate, EnergyBreakdown, EnergyMode, Penalties};
use tetrafold::hamiltonian::{build_hamiltonian, HamiltonianParams};
use tetrafold::model::{ContactEnergyTable, ProteinSequence};
use tetrafold::qubo::{quadratize, PenaltyRule};
use tetrafold::resources::{curve_csv, levinthal, qubit_count, qubit_curve, ResourceEstimate};
use tetrafold::screener::{screen, AlignmentProfile, ScreenConfig};
use tetrafold::solvers::{
    solve_anneal, solve_cvar_vqe, solve_exhaustive, AnnealSchedule, EntanglerTopology,
    SolveResult, VqeConfig,
};
use tetrafold::structio::{
    default_scale, parse_pdb_ca, radius_of_gyration, rmsd_kabsch, to_trace, write_pdb, write_xyz,
};

use crate::config::FileConfig;

/// What went wrong, mapped onto the exit-code contract: computation or
/// argument problems exit 2, filesystem problems exit 3.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
}

impl From<tetrafold::Error> for Failure {
    fn from(e: tetrafold::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Fold a sequence; writes PDB, XYZ, convergence trace, and manifest.
    Fold(FoldArgs),
    /// Build the interaction Hamiltonian and report its shape.
    Hamiltonian(HamiltonianArgs),
    /// Quadratize the Hamiltonian to a QUBO and report its shape.
    Qubo(QuboArgs),
    /// Qubit counts, scaling curves, and measurement-shot bounds.
    Resources(ResourcesArgs),
    /// Rank a target by qubit need, mutation load, and alignment depth.
    Screen(ScreenArgs),
    /// Structure metrics over CA-only PDB files.
    #[command(subcommand)]
    Metrics(MetricsCmd),
    /// Conformation-space size and naive exploration time.
    Levinthal(LevinthalArgs),
}

impl Command {
    pub fn run(self, file: &FileConfig) -> Result<(), Failure> {
        match self {
            Command::Fold(args) => run_fold(args, file),
            Command::Hamiltonian(args) => run_hamiltonian(args, file),
            Command::Qubo(args) => run_qubo(args, file),
            Command::Resources(args) => run_resources(args),
            Command::Screen(args) => run_screen(args),
            Command::Metrics(cmd) => run_metrics(cmd),
            Command::Levinthal(args) => run_levinthal(args),
        }
    }
}

// ---------------------------------------------------------------- fold

#[derive(Args)]
pub struct FoldArgs {
    /// Inline one-letter sequence.
    #[arg(long, conflicts_with = "fasta")]
    seq: Option<String>,
    /// Single-record FASTA file.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// exhaustive, anneal, or vqe.
    #[arg(long)]
    solver: Option<String>,
    /// Contact scoring: physical or clamped.
    #[arg(long)]
    mode: Option<String>,
    /// Base RNG seed for the stochastic solvers.
    #[arg(long)]
    seed: Option<u64>,
    /// Overlap penalty per colliding bead pair, kcal/mol.
    #[arg(long)]
    overlap_penalty: Option<f64>,
    /// Back-turn penalty per immediate reversal, kcal/mol.
    #[arg(long)]
    backturn_penalty: Option<f64>,
    /// Annealing start temperature.
    #[arg(long)]
    t_start: Option<f64>,
    /// Annealing end temperature.
    #[arg(long)]
    t_end: Option<f64>,
    /// Annealing sweeps per restart.
    #[arg(long)]
    sweeps: Option<u32>,
    /// Independent restarts (annealing or VQE).
    #[arg(long)]
    restarts: Option<u32>,
    /// VQE ansatz layers.
    #[arg(long)]
    layers: Option<u32>,
    /// CVaR tail fraction.
    #[arg(long)]
    alpha: Option<f64>,
    /// Measurement shots per VQE objective call.
    #[arg(long)]
    shots: Option<u32>,
    /// Objective-call budget per VQE restart.
    #[arg(long)]
    max_evals: Option<u32>,
    /// Entangler wiring: chain or ring.
    #[arg(long)]
    topology: Option<String>,
    /// Score VQE objectives from the exact state vector instead of samples.
    #[arg(long)]
    vqe_exact: bool,
    /// Carry all contact ancillas as qubits instead of inlining them.
    #[arg(long)]
    vqe_full_ancillas: bool,
    /// Statevector qubit cap for the VQE simulator.
    #[arg(long)]
    qubit_cap: Option<usize>,
    /// Angstroms per lattice unit in emitted coordinates.
    #[arg(long)]
    scale: Option<f64>,
    /// Output path prefix.
    #[arg(long, default_value = "fold")]
    out: PathBuf,
}

/// Every knob of a fold run after merging flags, config file, and
/// defaults; echoed verbatim into the manifest.
#[derive(Serialize)]
struct RunConfig {
    sequence: String,
    solver: &'static str,
    mode: EnergyMode,
    seed: u64,
    threads: usize,
    scale: f64,
    penalties: Penalties,
    anneal: AnnealSchedule,
    vqe: VqeConfig,
}

#[derive(Serialize)]
struct FoldOutcome {
    solver_id: &'static str,
    best_energy: f64,
    turns: Vec<u8>,
    evaluations: u64,
    rng_seed: Option<u64>,
    breakdown: EnergyBreakdown,
    radius_of_gyration: f64,
}

#[derive(Serialize)]
struct Manifest {
    timestamp_unix: u64,
    config: RunConfig,
    result: FoldOutcome,
    files: BTreeMap<&'static str, String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SolverChoice {
    Exhaustive,
    Anneal,
    Vqe,
}

impl SolverChoice {
    fn parse(s: &str) -> Result<Self, Failure> {
        match s {
            "exhaustive" => Ok(SolverChoice::Exhaustive),
            "anneal" => Ok(SolverChoice::Anneal),
            "vqe" => Ok(SolverChoice::Vqe),
            other => Err(Failure::Usage(format!(
                "unknown solver '{other}' (expected exhaustive, anneal, or vqe)"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SolverChoice::Exhaustive => "exhaustive",
            SolverChoice::Anneal => "anneal",
            SolverChoice::Vqe => "vqe",
        }
    }
}

fn run_fold(args: FoldArgs, file: &FileConfig) -> Result<(), Failure> {
    let sequence = load_sequence(&args.seq, &args.fasta)?;
    let n = sequence.len();
    if n < 4 {
        return Err(Failure::Usage(format!(
            "sequence has {n} residues; N ≥ 4 required"
        )));
    }

    let solver = match args.solver.as_deref().or(file.solver.as_deref()) {
        Some(s) => SolverChoice::parse(s)?,
        None => SolverChoice::Exhaustive,
    };

    // The VQE optimizes the clamped objective and re-scores under it; a
    // physical-mode report would disagree with the energies it optimized.
    let mode = match args.mode.as_deref().or(file.mode.as_deref()) {
        Some(s) => {
            let m: EnergyMode = s.parse().map_err(|e: tetrafold::Error| Failure::Usage(e.to_string()))?;
            if solver == SolverChoice::Vqe && m == EnergyMode::Physical {
                return Err(Failure::Usage(
                    "the vqe solver scores clamped contact energies; drop --mode or pass clamped"
                        .into(),
                ));
            }
            m
        }
        None if solver == SolverChoice::Vqe => EnergyMode::Clamped,
        None => EnergyMode::Physical,
    };

    let penalty_defaults = Penalties::default();
    let penalties = Penalties {
        overlap: args
            .overlap_penalty
            .or(file.penalties.overlap)
            .unwrap_or(penalty_defaults.overlap),
        backturn: args
            .backturn_penalty
            .or(file.penalties.backturn)
            .unwrap_or(penalty_defaults.backturn),
    };

    let anneal_defaults = AnnealSchedule::default();
    let seed = args.seed.or(file.seed).unwrap_or(anneal_defaults.seed);
    let schedule = AnnealSchedule {
        t_start: args
            .t_start
            .or(file.anneal.t_start)
            .unwrap_or(anneal_defaults.t_start),
        t_end: args
            .t_end
            .or(file.anneal.t_end)
            .unwrap_or(anneal_defaults.t_end),
        sweeps: args
            .sweeps
            .or(file.anneal.sweeps)
            .unwrap_or(anneal_defaults.sweeps),
        restarts: args
            .restarts
            .or(file.anneal.restarts)
            .unwrap_or(anneal_defaults.restarts),
        seed,
    };

    let vqe_defaults = VqeConfig::default();
    let topology = match args.topology.as_deref().or(file.vqe.topology.as_deref()) {
        Some("chain") => EntanglerTopology::Chain,
        Some("ring") => EntanglerTopology::Ring,
        Some(other) => {
            return Err(Failure::Usage(format!(
                "unknown topology '{other}' (expected chain or ring)"
            )))
        }
        None => vqe_defaults.topology,
    };
    let vqe = VqeConfig {
        layers: args.layers.or(file.vqe.layers).unwrap_or(vqe_defaults.layers),
        alpha: args.alpha.or(file.vqe.alpha).unwrap_or(vqe_defaults.alpha),
        shots: args.shots.or(file.vqe.shots).unwrap_or(vqe_defaults.shots),
        max_evals: args
            .max_evals
            .or(file.vqe.max_evals)
            .unwrap_or(vqe_defaults.max_evals),
        restarts: args
            .restarts
            .or(file.vqe.restarts)
            .unwrap_or(vqe_defaults.restarts),
        seed,
        topology,
        full_ancillas: args.vqe_full_ancillas
            || file.vqe.full_ancillas.unwrap_or(vqe_defaults.full_ancillas),
        exact_expectation: args.vqe_exact
            || file.vqe.exact_expectation.unwrap_or(vqe_defaults.exact_expectation),
        qubit_cap: args
            .qubit_cap
            .or(file.vqe.qubit_cap)
            .unwrap_or(vqe_defaults.qubit_cap),
    };

    let scale = args.scale.or(file.scale).unwrap_or_else(default_scale);
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Failure::Usage(format!("scale must be positive, got {scale}")));
    }

    let table = ContactEnergyTable::embedded()?;
    let result: SolveResult = match solver {
        SolverChoice::Exhaustive => solve_exhaustive(&sequence, &table, mode, penalties)?,
        SolverChoice::Anneal => solve_anneal(&sequence, &table, &schedule, mode, penalties)?,
        SolverChoice::Vqe => solve_cvar_vqe(&sequence, &table, &vqe, penalties)?,
    };

    let breakdown = evaluate(&result.best_conformation, &table, mode, penalties);
    let trace = to_trace(&result.best_conformation, scale);
    let rg = radius_of_gyration(&trace)?;

    let paths = OutPaths::new(&args.out, &["pdb", "xyz", "trace.csv", "manifest.json"]);
    let mut files = BTreeMap::new();
    files.insert("pdb", paths.get("pdb").display().to_string());
    files.insert("xyz", paths.get("xyz").display().to_string());
    files.insert("trace", paths.get("trace.csv").display().to_string());

    let manifest = Manifest {
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        config: RunConfig {
            sequence: sequence.to_string(),
            solver: solver.name(),
            mode,
            seed,
            threads: rayon::current_num_threads(),
            scale,
            penalties,
            anneal: schedule,
            vqe,
        },
        result: FoldOutcome {
            solver_id: result.solver_id,
            best_energy: result.best_energy,
            turns: result.best_conformation.turns().to_vec(),
            evaluations: result.evaluations,
            rng_seed: result.rng_seed,
            breakdown,
            radius_of_gyration: rg,
        },
        files,
    };

    write_file(paths.get("pdb"), &write_pdb(&trace))?;
    write_file(paths.get("xyz"), &write_xyz(&trace))?;
    write_file(paths.get("trace.csv"), &result.trace_csv())?;
    write_file(paths.get("manifest.json"), &to_json(&manifest)?)?;

    emit(format!(
        "fold {}: best energy {:.3} kcal/mol (solver {}, {} evaluations), Rg {:.3} A",
        sequence, result.best_energy, result.solver_id, result.evaluations, rg
    ))?;
    emit(format!(
        "wrote {}.{{pdb,xyz,trace.csv,manifest.json}}",
        args.out.display()
    ))?;
    Ok(())
}

// -------------------------------------------------- hamiltonian / qubo

#[derive(Args)]
pub struct HamiltonianArgs {
    /// Inline one-letter sequence.
    #[arg(long, conflicts_with = "fasta")]
    seq: Option<String>,
    /// Single-record FASTA file.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// Back-turn penalty weight, kcal/mol.
    #[arg(long)]
    backturn_penalty: Option<f64>,
    /// Distance-gate weight per unit squared deviation.
    #[arg(long)]
    distance_penalty: Option<f64>,
    /// Also write {out}.poly.txt and {out}.meta.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_params(
    backturn: Option<f64>,
    distance: Option<f64>,
    file: &FileConfig,
) -> HamiltonianParams {
    let defaults = HamiltonianParams::default();
    HamiltonianParams {
        backturn: backturn
            .or(file.penalties.backturn)
            .unwrap_or(defaults.backturn),
        distance: distance
            .or(file.penalties.distance)
            .unwrap_or(defaults.distance),
    }
}

fn run_hamiltonian(args: HamiltonianArgs, file: &FileConfig) -> Result<(), Failure> {
    let sequence = load_sequence(&args.seq, &args.fasta)?;
    let params = resolve_params(args.backturn_penalty, args.distance_penalty, file);
    let table = ContactEnergyTable::embedded()?;
    let h = build_hamiltonian(&sequence, &table, params)?;
    let meta = h.meta();
    emit(to_json(&meta)?)?;
    if let Some(out) = &args.out {
        let paths = OutPaths::new(out, &["poly.txt", "meta.json"]);
        write_file(paths.get("poly.txt"), &h.poly.to_text())?;
        write_file(paths.get("meta.json"), &to_json(&meta)?)?;
    }
    Ok(())
}

#[derive(Args)]
pub struct QuboArgs {
    /// Inline one-letter sequence.
    #[arg(long, conflicts_with = "fasta")]
    seq: Option<String>,
    /// Single-record FASTA file.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// Back-turn penalty weight, kcal/mol.
    #[arg(long)]
    backturn_penalty: Option<f64>,
    /// Distance-gate weight per unit squared deviation.
    #[arg(long)]
    distance_penalty: Option<f64>,
    /// Substitution penalty: auto, tight, or an explicit positive value.
    #[arg(long, default_value = "auto")]
    penalty: String,
    /// Also write {out}.qubo.txt and {out}.meta.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_qubo(args: QuboArgs, file: &FileConfig) -> Result<(), Failure> {
    let sequence = load_sequence(&args.seq, &args.fasta)?;
    let params = resolve_params(args.backturn_penalty, args.distance_penalty, file);
    let rule = match args.penalty.as_str() {
        "auto" => PenaltyRule::Auto,
        "tight" => PenaltyRule::TightPerAncilla,
        other => match other.parse::<f64>() {
            Ok(v) => PenaltyRule::Fixed(v),
            Err(_) => {
                return Err(Failure::Usage(format!(
                    "penalty must be auto, tight, or a number, got '{other}'"
                )))
            }
        },
    };
    let table = ContactEnergyTable::embedded()?;
    let h = build_hamiltonian(&sequence, &table, params)?;
    let q = quadratize(&h.poly, rule)?;
    let meta = q.meta();
    emit(to_json(&meta)?)?;
    if let Some(out) = &args.out {
        let paths = OutPaths::new(out, &["qubo.txt", "meta.json"]);
        write_file(paths.get("qubo.txt"), &q.to_text())?;
        write_file(paths.get("meta.json"), &to_json(&meta)?)?;
    }
    Ok(())
}

// ----------------------------------------------------------- resources

#[derive(Args)]
pub struct ResourcesArgs {
    /// Chain length for a single qubit count.
    #[arg(long)]
    n: Option<usize>,
    /// Curve start, inclusive (with --hi).
    #[arg(long, requires = "hi")]
    lo: Option<usize>,
    /// Curve end, inclusive (with --lo).
    #[arg(long, requires = "lo")]
    hi: Option<usize>,
    /// Sequence for a full estimate including measurement bounds.
    #[arg(long, conflicts_with = "fasta")]
    seq: Option<String>,
    /// Single-record FASTA file.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// Comma-separated precision grid for shot bounds, kcal/mol.
    #[arg(long, default_value = "1,5,10")]
    epsilons: String,
    /// Emit JSON instead of text/CSV.
    #[arg(long)]
    json: bool,
}

fn estimate_text(est: &ResourceEstimate) -> String {
    let mut out = format!(
        "N={}: {} config + {} interaction = {} total qubits",
        est.residues, est.config_qubits, est.interaction_qubits, est.total_qubits
    );
    if let (Some(terms), Some(h_max)) = (est.spin_terms, est.h_max) {
        out.push_str(&format!("\nspin terms {terms}, h_max {h_max:.4} kcal/mol"));
    }
    for b in &est.shots_bound {
        out.push_str(&format!("\neps {}: {} shots", b.epsilon, b.shots));
    }
    out
}

fn run_resources(args: ResourcesArgs) -> Result<(), Failure> {
    let has_seq = args.seq.is_some() || args.fasta.is_some();
    let modes = [args.n.is_some(), args.lo.is_some(), has_seq];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(Failure::Usage(
            "choose exactly one of --n, --lo/--hi, or --seq/--fasta".into(),
        ));
    }

    if let Some(n) = args.n {
        let est = qubit_count(n)?;
        if args.json {
            emit(to_json(&est)?)?;
        } else {
            emit(estimate_text(&est))?;
        }
    } else if let (Some(lo), Some(hi)) = (args.lo, args.hi) {
        let rows = qubit_curve(lo, hi)?;
        if args.json {
            emit(to_json(&rows)?)?;
        } else {
            emit_raw(&curve_csv(&rows))?;
        }
    } else {
        let sequence = load_sequence(&args.seq, &args.fasta)?;
        let epsilons = parse_f64_list(&args.epsilons, "epsilons")?;
        let table = ContactEnergyTable::embedded()?;
        let h = build_hamiltonian(&sequence, &table, HamiltonianParams::default())?;
        let est = ResourceEstimate::for_hamiltonian(&h, &epsilons)?;
        if args.json {
            emit(to_json(&est)?)?;
        } else {
            emit(estimate_text(&est))?;
        }
    }
    Ok(())
}

// -------------------------------------------------------------- screen

#[derive(Args)]
pub struct ScreenArgs {
    /// Inline one-letter sequence.
    #[arg(long, conflicts_with = "fasta")]
    seq: Option<String>,
    /// Single-record FASTA file.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// Reference sequence (inline) for the mutation count.
    #[arg(long, conflicts_with = "reference_fasta")]
    reference: Option<String>,
    /// Reference sequence as a single-record FASTA file.
    #[arg(long)]
    reference_fasta: Option<PathBuf>,
    /// Alignment file (FASTA or A3M) whose first row is the query.
    #[arg(long)]
    alignment: Option<PathBuf>,
    /// Fractional identity at or above which two rows share a cluster.
    #[arg(long)]
    identity: Option<f64>,
    /// N_eff below this counts as orphan-like.
    #[arg(long)]
    orphan_depth: Option<f64>,
    /// N_eff below this (and not orphan-like) counts as a target.
    #[arg(long)]
    target_depth: Option<f64>,
    /// Comma-separated device sizes in qubits.
    #[arg(long)]
    devices: Option<String>,
    /// Emit a TSV header + row instead of JSON.
    #[arg(long)]
    tsv: bool,
}

fn run_screen(args: ScreenArgs) -> Result<(), Failure> {
    let sequence = load_sequence(&args.seq, &args.fasta)?;

    let reference = match (&args.reference, &args.reference_fasta) {
        (Some(s), None) => Some(ProteinSequence::parse(s)?),
        (None, Some(path)) => Some(ProteinSequence::parse(&read_text(path)?)?),
        (None, None) => None,
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "--reference conflicts with --reference-fasta".into(),
            ))
        }
    };

    let alignment = args
        .alignment
        .as_deref()
        .map(|path| -> Result<AlignmentProfile, Failure> {
            Ok(AlignmentProfile::parse(&read_text(path)?)?)
        })
        .transpose()?;

    let defaults = ScreenConfig::default();
    let config = ScreenConfig {
        identity_threshold: args.identity.unwrap_or(defaults.identity_threshold),
        orphan_depth: args.orphan_depth.unwrap_or(defaults.orphan_depth),
        target_depth: args.target_depth.unwrap_or(defaults.target_depth),
        device_qubits: match &args.devices {
            Some(list) => parse_usize_list(list, "devices")?,
            None => defaults.device_qubits,
        },
    };

    let report = screen(&sequence, reference.as_ref(), alignment.as_ref(), &config)?;
    if args.tsv {
        emit(tetrafold::screener::HardnessReport::tsv_header())?;
        emit(report.tsv_line())?;
    } else {
        emit(to_json(&report)?)?;
    }
    Ok(())
}

// ------------------------------------------------------------- metrics

#[derive(Subcommand)]
pub enum MetricsCmd {
    /// Optimal-superposition RMSD between two CA PDB files, in Angstroms.
    Rmsd {
        a: PathBuf,
        b: PathBuf,
        /// Emit JSON instead of a bare number.
        #[arg(long)]
        json: bool,
    },
    /// Radius of gyration of a CA PDB file, in Angstroms.
    Rg {
        file: PathBuf,
        /// Emit JSON instead of a bare number.
        #[arg(long)]
        json: bool,
    },
}

fn run_metrics(cmd: MetricsCmd) -> Result<(), Failure> {
    match cmd {
        MetricsCmd::Rmsd { a, b, json } => {
            let ta = parse_pdb_ca(&read_text(&a)?)?;
            let tb = parse_pdb_ca(&read_text(&b)?)?;
            let v = rmsd_kabsch(&ta, &tb)?;
            if json {
                emit(to_json(&serde_json::json!({ "rmsd": v }))?)?;
            } else {
                emit(format!("{v:.3}"))?;
            }
        }
        MetricsCmd::Rg { file, json } => {
            let t = parse_pdb_ca(&read_text(&file)?)?;
            let v = radius_of_gyration(&t)?;
            if json {
                emit(to_json(&serde_json::json!({ "radius_of_gyration": v }))?)?;
            } else {
                emit(format!("{v:.3}"))?;
            }
        }
    }
    Ok(())
}

// ----------------------------------------------------------- levinthal

#[derive(Args)]
pub struct LevinthalArgs {
    /// Chain length.
    #[arg(long)]
    n: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

fn run_levinthal(args: LevinthalArgs) -> Result<(), Failure> {
    let est = levinthal(args.n)?;
    if args.json {
        emit(to_json(&est)?)?;
    } else {
        emit(format!(
            "N={}: {} conformations; naive exploration ~{:.3e} years at 1 ps per conformation",
            est.residues, est.conformations, est.exploration_years
        ))?;
    }
    Ok(())
}

// ------------------------------------------------------------- helpers

/// Output paths sharing one prefix: `{prefix}.{ext}` for each extension.
struct OutPaths {
    paths: BTreeMap<&'static str, PathBuf>,
}

impl OutPaths {
    fn new(prefix: &Path, exts: &[&'static str]) -> Self {
        let paths = exts
            .iter()
            .map(|&ext| (ext, PathBuf::from(format!("{}.{ext}", prefix.display()))))
            .collect();
        OutPaths { paths }
    }

    fn get(&self, ext: &str) -> &Path {
        &self.paths[ext]
    }
}

fn load_sequence(
    seq: &Option<String>,
    fasta: &Option<PathBuf>,
) -> Result<ProteinSequence, Failure> {
    match (seq, fasta) {
        (Some(s), None) => Ok(ProteinSequence::parse(s)?),
        (None, Some(path)) => Ok(ProteinSequence::parse(&read_text(path)?)?),
        (None, None) => Err(Failure::Usage("provide --seq or --fasta".into())),
        (Some(_), Some(_)) => Err(Failure::Usage("--seq conflicts with --fasta".into())),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Writes to stdout, newline appended. A closed pipe (output fed into
/// `head` and the like) ends the process quietly instead of panicking.
fn emit(text: impl std::fmt::Display) -> Result<(), Failure> {
    emit_raw(&format!("{text}\n"))
}

fn emit_raw(text: &str) -> Result<(), Failure> {
    use std::io::Write as _;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Failure::Io(format!("stdout: {e}"))),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| Failure::Io(format!("{}: {e}", parent.display())))?;
        }
    }
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(format!("serialize: {e}")))
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::Usage(format!("{what}: '{s}' is not a number")))
        })
        .collect()
}

fn parse_usize_list(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("{what}: '{s}' is not an integer")))
        })
        .collect()
}
