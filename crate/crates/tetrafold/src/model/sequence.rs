//! Protein sequences and their text ingestion (raw one-letter strings or a
//! single-record FASTA).

use std::fmt;

use crate::error::{Error, Result};
use crate::model::amino::AminoAcid;

/// An ordered list of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProteinSequence {
    residues: Vec<AminoAcid>,
}

impl ProteinSequence {
    /// Builds a sequence from residues.
    ///
    /// # Errors
    /// Rejects the empty sequence.
    pub fn new(residues: Vec<AminoAcid>) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::invalid("empty sequence"));
        }
        Ok(ProteinSequence { residues })
    }

    /// Parses a raw one-letter string or a single-record FASTA.
    ///
    /// Leading/trailing whitespace is ignored; FASTA sequence data may span
    /// multiple lines. A single residue parses fine (solvers reject N < 4
    /// themselves).
    ///
    /// # Errors
    /// Unknown symbols are rejected naming the character and its 1-based
    /// position; empty input and multi-record FASTA are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let body = if trimmed.starts_with('>') {
            let mut lines = trimmed.lines();
            lines.next(); // header
            let mut body = String::new();
            for line in lines {
                if line.starts_with('>') {
                    return Err(Error::invalid(
                        "multi-record FASTA: expected exactly one sequence record",
                    ));
                }
                body.push_str(line.trim());
            }
            body
        } else {
            trimmed.split_whitespace().collect()
        };
        if body.is_empty() {
            return Err(Error::invalid("empty sequence"));
        }
        let mut residues = Vec::with_capacity(body.len());
        for (pos, c) in body.chars().enumerate() {
            let aa = AminoAcid::from_one_letter(c).map_err(|_| {
                Error::invalid(format!(
                    "unknown amino-acid symbol '{}' at position {}",
                    c,
                    pos + 1
                ))
            })?;
            residues.push(aa);
        }
        Ok(ProteinSequence { residues })
    }

    /// Number of residues N.
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    /// True only for the (unconstructible) empty sequence; kept for idiom.
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Residues in order.
    pub fn residues(&self) -> &[AminoAcid] {
        &self.residues
    }

    /// Residue at 0-based position `i`.
    pub fn residue(&self, i: usize) -> AminoAcid {
        self.residues[i]
    }
}

impl fmt::Display for ProteinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for aa in &self.residues {
            write!(f, "{}", aa.one_letter())?;
        }
        Ok(())
    }
}
