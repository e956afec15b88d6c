//! Physical Cα traces: scaling lattice folds to Ångströms, XYZ and PDB
//! output, a Cα-only PDB reader, and the two standard comparison metrics
//! (Kabsch-superposed RMSD and radius of gyration).
//!
//! The lattice step is √3 long in lattice units, so the default scale
//! 3.8/√3 makes consecutive Cα atoms sit 3.8 Å apart, the trans-peptide
//! spacing real backbones keep. Downstream tools (full-atom reconstruction,
//! minimization) consume the PDB trace this module writes.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::model::Conformation;

/// Cα–Cα virtual bond length in Å for the default scale.
pub const CA_SPACING: f64 = 3.8;

/// Å per lattice unit such that one bond (length √3) spans [`CA_SPACING`].
pub fn default_scale() -> f64 {
    CA_SPACING / 3.0_f64.sqrt()
}

/// A Cα trace: one named point per residue, coordinates in Å.
#[derive(Debug, Clone, PartialEq)]
pub struct CaTrace {
    /// Three-letter residue codes, e.g. `LEU`.
    pub names: Vec<String>,
    pub coords: Vec<[f64; 3]>,
}

impl CaTrace {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Scales a lattice conformation to physical Cα coordinates.
pub fn to_trace(conf: &Conformation, scale: f64) -> CaTrace {
    let names = conf
        .sequence()
        .residues()
        .iter()
        .map(|r| r.three_letter().to_string())
        .collect();
    let coords = conf
        .positions()
        .iter()
        .map(|p| {
            let [x, y, z] = p.to_f64();
            [x * scale, y * scale, z * scale]
        })
        .collect();
    CaTrace { names, coords }
}

/// Renders a trace as XYZ text: atom count, blank comment line, then one
/// `CA x y z` row per atom with three decimals.
pub fn write_xyz(trace: &CaTrace) -> String {
    let mut out = format!("{}\n\n", trace.len());
    for c in &trace.coords {
        out.push_str(&format!("CA {:.3} {:.3} {:.3}\n", c[0], c[1], c[2]));
    }
    out
}

/// Renders a trace as a fixed-column Cα-only PDB: one ATOM record per
/// residue (chain A, serial and residue numbers from 1, occupancy 1.00,
/// B-factor 0.00, element C) closed by TER and END.
pub fn write_pdb(trace: &CaTrace) -> String {
    let mut out = String::new();
    for (i, (name, c)) in trace.names.iter().zip(&trace.coords).enumerate() {
        out.push_str(&format!(
            "ATOM  {:>5}  CA  {:>3} A{:>4}    {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}          {:>2}\n",
            i + 1,
            name,
            i + 1,
            c[0],
            c[1],
            c[2],
            1.00,
            0.00,
            "C"
        ));
    }
    out.push_str("TER\nEND\n");
    out
}

/// Reads the Cα atoms out of PDB text, in file order. Only `ATOM` records
/// whose atom name is `CA` are taken; everything else is skipped.
///
/// # Errors
/// Rejects a CA record too short to hold coordinates or with unparseable
/// coordinate fields.
pub fn parse_pdb_ca(text: &str) -> Result<CaTrace> {
    let mut names = Vec::new();
    let mut coords = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if !line.starts_with("ATOM") {
            continue;
        }
        let atom_name = line.get(12..16).map(str::trim);
        if atom_name != Some("CA") {
            continue;
        }
        let coord_field = |lo: usize, hi: usize| -> Result<f64> {
            line.get(lo..hi)
                .map(str::trim)
                .ok_or_else(|| {
                    Error::invalid(format!("line {}: CA record too short", lineno + 1))
                })?
                .parse::<f64>()
                .map_err(|e| Error::invalid(format!("line {}: bad coordinate: {e}", lineno + 1)))
        };
        let x = coord_field(30, 38)?;
        let y = coord_field(38, 46)?;
        let z = coord_field(46, 54)?;
        let name = line.get(17..20).map(str::trim).unwrap_or("").to_string();
        names.push(name);
        coords.push([x, y, z]);
    }
    Ok(CaTrace { names, coords })
}

fn centroid(coords: &[[f64; 3]]) -> Vector3<f64> {
    let sum = coords
        .iter()
        .fold(Vector3::zeros(), |acc, c| acc + Vector3::new(c[0], c[1], c[2]));
    sum / coords.len() as f64
}

/// Minimum RMSD between two equal-length traces over all rigid motions
/// (rotations and translations; reflections excluded so mirror folds stay
/// distinguishable), by optimal superposition.
///
/// # Errors
/// Rejects empty traces and length mismatches.
pub fn rmsd_kabsch(a: &CaTrace, b: &CaTrace) -> Result<f64> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::invalid(format!(
            "superposition needs two equal-length non-empty traces, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (ca, cb) = (centroid(&a.coords), centroid(&b.coords));
    let mut cross = Matrix3::zeros();
    for (p, q) in a.coords.iter().zip(&b.coords) {
        let x = Vector3::new(p[0], p[1], p[2]) - ca;
        let y = Vector3::new(q[0], q[1], q[2]) - cb;
        cross += y * x.transpose();
    }
    let mut svd = cross
        .try_svd(true, true, f64::EPSILON, 1000)
        .ok_or_else(|| Error::invalid("superposition decomposition did not converge"))?;
    // Descending order, so the determinant correction below flips the
    // smallest singular direction.
    svd.sort_by_singular_values();
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    // If the best orthogonal map is a reflection, the chirality-preserving
    // optimum flips the least-significant direction instead.
    let d = (u * v_t).determinant().signum();
    let rotation = u * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d)) * v_t;

    let mut sq = 0.0;
    for (p, q) in a.coords.iter().zip(&b.coords) {
        let x = Vector3::new(p[0], p[1], p[2]) - ca;
        let y = Vector3::new(q[0], q[1], q[2]) - cb;
        sq += (rotation * x - y).norm_squared();
    }
    Ok((sq / a.len() as f64).sqrt())
}

/// Root-mean-square distance of the points from their centroid, unweighted.
///
/// # Errors
/// Rejects an empty trace.
pub fn radius_of_gyration(trace: &CaTrace) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::invalid("radius of gyration needs at least one point"));
    }
    let c = centroid(&trace.coords);
    let sq: f64 = trace
        .coords
        .iter()
        .map(|p| (Vector3::new(p[0], p[1], p[2]) - c).norm_squared())
        .sum();
    Ok((sq / trace.len() as f64).sqrt())
}
