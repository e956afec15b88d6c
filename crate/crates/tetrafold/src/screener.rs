//! Target screening: which proteins are worth pointing a quantum device at.
//!
//! Given a candidate sequence, an optional wild-type reference, and an
//! optional multiple-sequence alignment, [`screen`] produces a
//! [`HardnessReport`]: how many qubits the chain needs, which device tier
//! (if any) can hold it, how deep its evolutionary record is, and whether
//! the combination makes it a sensible quantum target. The sweet spot is a
//! chain small enough for a real device whose MSA is too shallow for
//! homology-driven predictors to shine.
//!
//! MSA depth is summarized as N_eff: sequences are greedily weighted by the
//! reciprocal of their similarity-cluster size, so a thousand near-copies
//! count as one effective sequence.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ProteinSequence;
use crate::resources::qubit_count;

/// A multiple-sequence alignment with the query as row 0.
///
/// Rows are equal-length strings over residue letters and `-`. A3M-style
/// insertions (lowercase letters, `.` padding) are stripped on parse, so the
/// stored rows cover exactly the query's match columns and row 0 carries no
/// gaps.
#[derive(Debug, Clone)]
pub struct AlignmentProfile {
    rows: Vec<String>,
}

impl AlignmentProfile {
    /// Builds a profile from already-aligned rows (query first).
    ///
    /// # Errors
    /// Rejects an empty alignment, ragged rows, a gapped query row, and
    /// characters outside `A`-`Z` and `-`.
    pub fn new(rows: Vec<String>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::invalid("alignment has no sequences"));
        };
        if first.is_empty() {
            return Err(Error::invalid("alignment has no match columns"));
        }
        if first.contains('-') {
            return Err(Error::invalid("query row (row 0) must be gap-free"));
        }
        let width = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::invalid(format!(
                    "ragged alignment: row {i} has {} columns, row 0 has {width}",
                    row.len()
                )));
            }
            if let Some(bad) = row.chars().find(|c| !(c.is_ascii_uppercase() || *c == '-')) {
                return Err(Error::invalid(format!(
                    "row {i} contains {bad:?}; expected residue letters or '-'"
                )));
            }
        }
        Ok(AlignmentProfile { rows })
    }

    /// Parses aligned FASTA or A3M text. Lowercase insert states and `.`
    /// padding are dropped; header lines (`>`) separate records.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<String> = Vec::new();
        let mut open = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('>') {
                rows.push(String::new());
                open = true;
                continue;
            }
            if !open {
                // Headerless input: one aligned row per line.
                rows.push(String::new());
            }
            let row = rows.last_mut().expect("row pushed above");
            row.extend(line.chars().filter(|c| !(c.is_ascii_lowercase() || *c == '.')));
        }
        AlignmentProfile::new(rows)
    }

    /// Aligned rows, query first.
    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    /// Number of sequences.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of match columns.
    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }
}

/// Fractional identity between two aligned rows: positions where both are
/// the same residue, over positions where either has a residue. Two rows
/// with no residues at all are vacuously identical.
fn fractional_identity(a: &str, b: &str) -> f64 {
    let mut same = 0usize;
    let mut either = 0usize;
    for (x, y) in a.bytes().zip(b.bytes()) {
        let (gx, gy) = (x == b'-', y == b'-');
        if gx && gy {
            continue;
        }
        either += 1;
        if !gx && !gy && x == y {
            same += 1;
        }
    }
    if either == 0 {
        1.0
    } else {
        same as f64 / either as f64
    }
}

/// Effective sequence count: each row contributes the reciprocal of how many
/// rows sit within `identity_threshold` of it (itself included), so
/// redundant rows share one vote. Always in [1, rows].
///
/// # Errors
/// Rejects thresholds outside (0, 1].
pub fn compute_neff(aln: &AlignmentProfile, identity_threshold: f64) -> Result<f64> {
    if !(identity_threshold > 0.0 && identity_threshold <= 1.0) {
        return Err(Error::invalid(format!(
            "identity threshold must lie in (0, 1], got {identity_threshold}"
        )));
    }
    let rows = aln.rows();
    let mut neff = 0.0;
    for a in rows {
        let cluster = rows
            .iter()
            .filter(|b| fractional_identity(a, b) >= identity_threshold)
            .count();
        neff += 1.0 / cluster as f64;
    }
    Ok(neff)
}

/// Hamming distance between two equal-length sequences.
///
/// # Errors
/// Rejects unequal lengths; alignment-based counting is out of scope.
pub fn count_mutations(query: &ProteinSequence, reference: &ProteinSequence) -> Result<usize> {
    if query.len() != reference.len() {
        return Err(Error::invalid(format!(
            "mutation counting needs equal lengths, got {} vs {}",
            query.len(),
            reference.len()
        )));
    }
    Ok(query
        .residues()
        .iter()
        .zip(reference.residues())
        .filter(|(a, b)| a != b)
        .count())
}

/// MSA-depth classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MsaFlag {
    /// Effective depth below the orphan cutoff (default 30): homology
    /// predictors have little to work with.
    OrphanLike,
    /// Below the target cutoff (default 60): shallow enough to be
    /// interesting.
    Target,
    /// At or above the target cutoff: leave it to the MSA-driven tools.
    Deep,
    /// No alignment supplied.
    Unknown,
}

impl fmt::Display for MsaFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MsaFlag::OrphanLike => "orphan-like",
            MsaFlag::Target => "target",
            MsaFlag::Deep => "deep",
            MsaFlag::Unknown => "unknown",
        })
    }
}

/// Thresholds and device capacities used by [`screen`].
#[derive(Debug, Clone, Serialize)]
pub struct ScreenConfig {
    /// Fractional identity at or above which two rows share a cluster.
    pub identity_threshold: f64,
    /// N_eff strictly below this is orphan-like.
    pub orphan_depth: f64,
    /// N_eff strictly below this (and not orphan-like) is a target.
    pub target_depth: f64,
    /// Available device sizes in qubits.
    pub device_qubits: Vec<usize>,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        ScreenConfig {
            identity_threshold: 0.62,
            orphan_depth: 30.0,
            target_depth: 60.0,
            device_qubits: vec![127, 433, 1121],
        }
    }
}

impl ScreenConfig {
    fn validate(&self) -> Result<()> {
        if !(self.identity_threshold > 0.0 && self.identity_threshold <= 1.0) {
            return Err(Error::invalid(format!(
                "identity threshold must lie in (0, 1], got {}",
                self.identity_threshold
            )));
        }
        if !(self.orphan_depth > 0.0 && self.target_depth > self.orphan_depth) {
            return Err(Error::invalid(format!(
                "depth cutoffs must satisfy 0 < orphan < target, got {} and {}",
                self.orphan_depth, self.target_depth
            )));
        }
        if self.device_qubits.is_empty() {
            return Err(Error::invalid("at least one device capacity is required"));
        }
        Ok(())
    }
}

/// Verdict on one candidate target.
#[derive(Debug, Clone, Serialize)]
pub struct HardnessReport {
    pub sequence: String,
    pub length: usize,
    /// Hamming distance to the reference, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutations: Option<usize>,
    /// Effective MSA depth, when an alignment was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_eff: Option<f64>,
    /// Total qubits the chain needs.
    pub qubit_need: usize,
    /// Smallest device capacity that fits, or `None` if nothing does.
    pub tier: Option<usize>,
    pub msa_flag: MsaFlag,
    /// Fits a device and has a shallow (or absent-homolog) MSA.
    pub amenable: bool,
    /// Human-readable justification of every field.
    pub rationale: String,
}

impl HardnessReport {
    /// Column names matching [`HardnessReport::tsv_line`].
    pub fn tsv_header() -> &'static str {
        "sequence\tlength\tmutations\tn_eff\tqubit_need\ttier\tmsa_flag\tamenable"
    }

    /// One tab-separated line for batch output; absent fields print `-`.
    pub fn tsv_line(&self) -> String {
        let mutations = self.mutations.map_or("-".into(), |m| m.to_string());
        let n_eff = self.n_eff.map_or("-".into(), |v| format!("{v:.2}"));
        let tier = self.tier.map_or("none".into(), |t| t.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.sequence, self.length, mutations, n_eff, self.qubit_need, tier, self.msa_flag,
            self.amenable
        )
    }
}

/// Classifies a candidate: qubit need vs device tiers, mutation load vs an
/// optional reference, and MSA depth vs the orphan/target cutoffs.
///
/// A target is amenable when some device fits it and its alignment is
/// shallow (orphan-like or target). No alignment means depth unknown, which
/// is not amenable; screening exists to find provably shallow targets.
///
/// # Errors
/// Propagates component failures: chains under 4 residues, a reference of
/// different length, an alignment whose query row differs from `seq`, or
/// invalid thresholds.
pub fn screen(
    seq: &ProteinSequence,
    reference: Option<&ProteinSequence>,
    alignment: Option<&AlignmentProfile>,
    config: &ScreenConfig,
) -> Result<HardnessReport> {
    config.validate()?;
    let estimate = qubit_count(seq.len())?;
    let need = estimate.total_qubits;

    let mutations = reference.map(|r| count_mutations(seq, r)).transpose()?;
    let n_eff = alignment
        .map(|aln| {
            if aln.rows()[0] != seq.to_string() {
                return Err(Error::invalid(
                    "alignment row 0 does not match the query sequence",
                ));
            }
            compute_neff(aln, config.identity_threshold)
        })
        .transpose()?;

    let msa_flag = match n_eff {
        None => MsaFlag::Unknown,
        Some(d) if d < config.orphan_depth => MsaFlag::OrphanLike,
        Some(d) if d < config.target_depth => MsaFlag::Target,
        Some(_) => MsaFlag::Deep,
    };

    let mut capacities = config.device_qubits.clone();
    capacities.sort_unstable();
    let tier = capacities.into_iter().find(|&c| c >= need);

    let amenable = tier.is_some() && matches!(msa_flag, MsaFlag::OrphanLike | MsaFlag::Target);

    let mut parts = vec![format!(
        "needs {need} qubits ({} configuration + {} interaction)",
        estimate.config_qubits, estimate.interaction_qubits
    )];
    match tier {
        Some(t) => parts.push(format!("fits the {t}-qubit tier")),
        None => parts.push(format!(
            "exceeds every device tier (largest is {})",
            config.device_qubits.iter().max().expect("validated non-empty")
        )),
    }
    match mutations {
        Some(m) => parts.push(format!("{m} point mutation(s) vs the reference")),
        None => parts.push("no reference sequence, mutation load not assessed".into()),
    }
    match n_eff {
        Some(d) => parts.push(format!(
            "effective MSA depth {d:.2} ({msa_flag}; cutoffs {} and {})",
            config.orphan_depth, config.target_depth
        )),
        None => parts.push("no alignment, MSA depth unknown".into()),
    }
    parts.push(if amenable {
        "amenable: device-sized chain with a shallow evolutionary record".into()
    } else if tier.is_none() {
        "not amenable: too large for available devices".into()
    } else if msa_flag == MsaFlag::Unknown {
        "not amenable: supply an alignment to establish MSA depth".into()
    } else {
        "not amenable: MSA is deep enough for homology-based predictors".into()
    });

    Ok(HardnessReport {
        sequence: seq.to_string(),
        length: seq.len(),
        mutations,
        n_eff,
        qubit_need: need,
        tier,
        msa_flag,
        amenable,
        rationale: parts.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn aln(rows: &[&str]) -> AlignmentProfile {
        AlignmentProfile::new(rows.iter().map(|r| r.to_string()).collect()).unwrap()
    }

    #[test]
    fn identity_counts_residue_columns_only() {
        assert_relative_eq!(fractional_identity("AB-", "A-C"), 1.0 / 3.0);
        assert_relative_eq!(fractional_identity("----", "----"), 1.0);
        assert_relative_eq!(fractional_identity("ACDE", "ACDE"), 1.0);
        assert_relative_eq!(fractional_identity("ACDE", "ACDF"), 0.75);
    }

    #[test]
    fn neff_single_row_is_one() {
        assert_relative_eq!(compute_neff(&aln(&["ACDEF"]), 0.62).unwrap(), 1.0);
    }

    #[test]
    fn neff_collapses_identical_copies() {
        let a = aln(&["ACDEF", "ACDEF", "ACDEF", "ACDEF", "ACDEF"]);
        assert_relative_eq!(compute_neff(&a, 0.62).unwrap(), 1.0);
    }

    #[test]
    fn neff_counts_dissimilar_rows_fully() {
        let a = aln(&["AAAAA", "CCCCC", "DDDDD"]);
        assert_relative_eq!(compute_neff(&a, 0.62).unwrap(), 3.0);
    }

    #[test]
    fn neff_is_invariant_under_row_order_and_duplication() {
        let base = aln(&["AAAAA", "CCCCC", "DDDDD"]);
        let shuffled = aln(&["DDDDD", "AAAAA", "CCCCC"]);
        let duplicated = aln(&["AAAAA", "CCCCC", "CCCCC", "CCCCC", "DDDDD"]);
        let reference = compute_neff(&base, 0.62).unwrap();
        assert_relative_eq!(compute_neff(&shuffled, 0.62).unwrap(), reference);
        assert_relative_eq!(compute_neff(&duplicated, 0.62).unwrap(), reference);
    }

    #[test]
    fn neff_stays_within_bounds() {
        // Chain of overlapping similarity: A~B, B~C, but A!~C.
        let a = aln(&["AAAA", "AACC", "CCCC"]);
        for threshold in [0.3, 0.5, 0.62, 0.9, 1.0] {
            let v = compute_neff(&a, threshold).unwrap();
            assert!((1.0..=3.0).contains(&v), "threshold {threshold} gave {v}");
        }
        assert!(compute_neff(&a, 0.0).is_err());
        assert!(compute_neff(&a, 1.2).is_err());
    }

    #[test]
    fn alignment_validation() {
        assert!(AlignmentProfile::new(vec![]).is_err());
        assert!(AlignmentProfile::new(vec!["".into()]).is_err());
        assert!(AlignmentProfile::new(vec!["AC-E".into()]).is_err());
        assert!(AlignmentProfile::new(vec!["ACDE".into(), "AC".into()]).is_err());
        assert!(AlignmentProfile::new(vec!["ACDE".into(), "AC1E".into()]).is_err());
    }

    #[test]
    fn parse_strips_a3m_inserts() {
        let text = ">query\nACDEF\n>homolog with inserts\nACck-EF\n>dotted\nA.CDEF\n";
        let a = AlignmentProfile::parse(text).unwrap();
        assert_eq!(a.rows(), ["ACDEF", "AC-EF", "ACDEF"]);
        assert_eq!(a.columns(), 5);
    }

    #[test]
    fn parse_joins_wrapped_lines_and_headerless_rows() {
        let wrapped = ">q\nACD\nEF\n>h\nAC-\nEF\n";
        assert_eq!(AlignmentProfile::parse(wrapped).unwrap().rows(), ["ACDEF", "AC-EF"]);
        assert!(AlignmentProfile::parse("").is_err());
    }

    #[test]
    fn mutation_counts() {
        let tc10b = ProteinSequence::parse("DAYAQWLKDGGPSSGRPPPS").unwrap();
        let tc5b = ProteinSequence::parse("NLYIQWLKDGGPSSGRPPPS").unwrap();
        assert_eq!(count_mutations(&tc10b, &tc5b).unwrap(), 3);
        assert_eq!(count_mutations(&tc10b, &tc10b).unwrap(), 0);

        let a = ProteinSequence::parse("AAAA").unwrap();
        let c = ProteinSequence::parse("CCCC").unwrap();
        assert_eq!(count_mutations(&a, &c).unwrap(), 4);

        let short = ProteinSequence::parse("AAA").unwrap();
        assert!(count_mutations(&a, &short).is_err());
    }

    #[test]
    fn screening_without_evidence_is_not_amenable() {
        let seq = ProteinSequence::parse("LHPGAGK").unwrap();
        let r = screen(&seq, None, None, &ScreenConfig::default()).unwrap();
        assert_eq!(r.qubit_need, 9);
        assert_eq!(r.tier, Some(127));
        assert_eq!(r.msa_flag, MsaFlag::Unknown);
        assert!(!r.amenable);
        assert_eq!(r.mutations, None);
        assert!(r.rationale.contains("supply an alignment"));
    }

    #[test]
    fn shallow_msa_device_sized_target_is_amenable() {
        // 22 residues: the largest chain a 127-qubit device holds.
        let seq = ProteinSequence::parse("NLYIQWLKDGGPSSGRPPPSAA").unwrap();
        let mut reference = seq.to_string();
        reference.replace_range(0..2, "DA");
        let reference = ProteinSequence::parse(&reference).unwrap();

        // Query plus 19 mutually dissimilar rows: N_eff = 20.
        let mut rows = vec![seq.to_string()];
        for letter in "CDEFGHIKLMNPQRSTVWY".chars() {
            rows.push(letter.to_string().repeat(22));
        }
        let alignment = AlignmentProfile::new(rows).unwrap();

        let r = screen(&seq, Some(&reference), Some(&alignment), &ScreenConfig::default()).unwrap();
        assert_eq!(r.qubit_need, 118);
        assert_eq!(r.tier, Some(127));
        assert_eq!(r.mutations, Some(2));
        assert_relative_eq!(r.n_eff.unwrap(), 20.0);
        assert_eq!(r.msa_flag, MsaFlag::OrphanLike);
        assert!(r.amenable);
    }

    #[test]
    fn oversized_chains_fit_no_tier() {
        let seq = ProteinSequence::parse(&"A".repeat(68)).unwrap();
        let r = screen(&seq, None, None, &ScreenConfig::default()).unwrap();
        assert_eq!(r.qubit_need, 1153);
        assert_eq!(r.tier, None);
        assert!(!r.amenable);
        assert!(r.rationale.contains("too large"));
    }

    #[test]
    fn tier_boundaries_match_device_capacities() {
        let cases = [(22, Some(127)), (23, Some(433)), (41, Some(433)), (42, Some(1121)), (67, Some(1121)), (68, None)];
        for (n, tier) in cases {
            let seq = ProteinSequence::parse(&"A".repeat(n)).unwrap();
            let r = screen(&seq, None, None, &ScreenConfig::default()).unwrap();
            assert_eq!(r.tier, tier, "N = {n}");
        }
    }

    #[test]
    fn tier_never_shrinks_as_chains_grow() {
        let rank = |tier: Option<usize>| tier.map_or(usize::MAX, |t| t);
        let mut prev = 0;
        for n in 4..=100 {
            let seq = ProteinSequence::parse(&"A".repeat(n)).unwrap();
            let r = screen(&seq, None, None, &ScreenConfig::default()).unwrap();
            let cur = rank(r.tier);
            assert!(cur >= prev, "tier shrank at N = {n}");
            prev = cur;
        }
    }

    /// Depth cutoffs are strict: exactly 30 is not orphan-like, exactly 60
    /// is not a target.
    #[test]
    fn depth_cutoffs_are_exclusive() {
        let build = |k: usize| {
            let query = "A".repeat(k);
            let mut rows = vec![query.clone()];
            for i in 1..k {
                let mut row = "-".repeat(k);
                row.replace_range(i..i + 1, "C");
                rows.push(row);
            }
            let seq = ProteinSequence::parse(&query).unwrap();
            let alignment = AlignmentProfile::new(rows).unwrap();
            screen(&seq, None, Some(&alignment), &ScreenConfig::default()).unwrap()
        };
        let at30 = build(30);
        assert_relative_eq!(at30.n_eff.unwrap(), 30.0);
        assert_eq!(at30.msa_flag, MsaFlag::Target);
        let at60 = build(60);
        assert_relative_eq!(at60.n_eff.unwrap(), 60.0);
        assert_eq!(at60.msa_flag, MsaFlag::Deep);
        assert!(!at60.amenable);
    }

    #[test]
    fn alignment_query_must_match_sequence() {
        let seq = ProteinSequence::parse("ACDEF").unwrap();
        let a = aln(&["ACDEG"]);
        assert!(screen(&seq, None, Some(&a), &ScreenConfig::default()).is_err());
    }

    #[test]
    fn config_validation() {
        let seq = ProteinSequence::parse("LHPGAGK").unwrap();
        for config in [
            ScreenConfig { identity_threshold: 0.0, ..ScreenConfig::default() },
            ScreenConfig { orphan_depth: 60.0, target_depth: 30.0, ..ScreenConfig::default() },
            ScreenConfig { device_qubits: vec![], ..ScreenConfig::default() },
        ] {
            assert!(screen(&seq, None, None, &config).is_err());
        }
    }

    #[test]
    fn report_serializes_for_batch_use() {
        let seq = ProteinSequence::parse("LHPGAGK").unwrap();
        let r = screen(&seq, None, None, &ScreenConfig::default()).unwrap();
        let line = r.tsv_line();
        assert_eq!(line.split('\t').count(), HardnessReport::tsv_header().split('\t').count());
        assert!(line.starts_with("LHPGAGK\t7\t-\t-\t9\t127\tunknown\tfalse"));

        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["msa_flag"], "unknown");
        assert_eq!(json["tier"], 127);
        assert!(json.get("mutations").is_none());

        let big = ProteinSequence::parse(&"A".repeat(68)).unwrap();
        let r = screen(&big, None, None, &ScreenConfig::default()).unwrap();
        assert!(serde_json::to_value(&r).unwrap()["tier"].is_null());
        assert!(r.tsv_line().contains("\tnone\t"));
    }
}
