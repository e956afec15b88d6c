//! The 20-letter amino-acid alphabet.
//!
//! Residues are indexed 0–19 in the alphabetical order of their one-letter
//! codes (`ACDEFGHIKLMNPQRSTVWY`); that order is also the axis order of the
//! embedded contact table.

use std::fmt;

use crate::error::{Error, Result};

/// One-letter codes in index order.
pub(crate) const ALPHABET: &[u8; 20] = b"ACDEFGHIKLMNPQRSTVWY";

/// Three-letter codes, same order as [`ALPHABET`].
const THREE_LETTER: [&str; 20] = [
    "ALA", "CYS", "ASP", "GLU", "PHE", "GLY", "HIS", "ILE", "LYS", "LEU", "MET", "ASN", "PRO",
    "GLN", "ARG", "SER", "THR", "VAL", "TRP", "TYR",
];

/// One of the 20 standard amino acids.
///
/// Internally a table index 0–19; conversion to and from one- and
/// three-letter codes is bijective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AminoAcid(u8);

impl AminoAcid {
    /// All 20 residues in index order.
    pub fn all() -> impl Iterator<Item = AminoAcid> {
        (0..20).map(AminoAcid)
    }

    /// Parses a one-letter code.
    ///
    /// # Errors
    /// Rejects any symbol outside `ACDEFGHIKLMNPQRSTVWY`.
    pub fn from_one_letter(code: char) -> Result<Self> {
        ALPHABET
            .iter()
            .position(|&c| c as char == code)
            .map(|i| AminoAcid(i as u8))
            .ok_or_else(|| Error::invalid(format!("unknown amino-acid symbol '{code}'")))
    }

    /// Parses a three-letter code (case-insensitive).
    pub fn from_three_letter(code: &str) -> Result<Self> {
        let upper = code.to_ascii_uppercase();
        THREE_LETTER
            .iter()
            .position(|&c| c == upper)
            .map(|i| AminoAcid(i as u8))
            .ok_or_else(|| Error::invalid(format!("unknown residue name '{code}'")))
    }

    /// Table index, 0–19.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// One-letter code.
    pub fn one_letter(self) -> char {
        ALPHABET[self.0 as usize] as char
    }

    /// Three-letter code (upper case).
    pub fn three_letter(self) -> &'static str {
        THREE_LETTER[self.0 as usize]
    }
}

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_letter())
    }
}
