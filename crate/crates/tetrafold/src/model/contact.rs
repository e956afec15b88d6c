//! The residue–residue contact-energy table.
//!
//! The embedded resource is the Miyazawa–Jernigan statistical contact
//! potential: a symmetric 20×20 matrix (210 unique values) whose entries are
//! used directly as kcal/mol-equivalent scores. The CSV carries one-letter
//! codes as header row and column; symmetry and completeness are enforced at
//! load time.

use crate::error::{Error, Result};
use crate::model::amino::{AminoAcid, ALPHABET};

/// Embedded contact-energy matrix (CSV, one-letter header row/column).
const EMBEDDED_CSV: &str = include_str!("../../data/mj_contact_energies.csv");

/// Symmetric 20×20 matrix of residue–residue contact energies.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactEnergyTable {
    e: [[f64; 20]; 20],
}

impl ContactEnergyTable {
    /// Loads the embedded Miyazawa–Jernigan table.
    ///
    /// # Errors
    /// Fails (naming the offending pair or row) if the embedded data is
    /// malformed — a packaging defect, not a user error.
    pub fn embedded() -> Result<Self> {
        Self::from_csv(EMBEDDED_CSV)
    }

    /// Raw text of the embedded resource, for integrity checks.
    pub fn embedded_csv() -> &'static str {
        EMBEDDED_CSV
    }

    /// Parses a table from CSV with one-letter header row and column.
    ///
    /// # Errors
    /// Rejects missing or extra rows/columns, unparseable cells, and any
    /// asymmetric pair, naming the residues involved.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("contact table: empty data"))?;
        let header_codes: Vec<&str> = header.split(',').skip(1).collect();
        let expected: Vec<String> = ALPHABET.iter().map(|&c| (c as char).to_string()).collect();
        if header_codes != expected.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(Error::invalid(
                "contact table: header must list the 20 one-letter codes in alphabetical order",
            ));
        }

        let mut e = [[f64::NAN; 20]; 20];
        let mut rows_seen = 0usize;
        for line in lines {
            let mut cells = line.split(',');
            let label = cells
                .next()
                .ok_or_else(|| Error::invalid("contact table: blank row label"))?;
            let row = AminoAcid::from_one_letter(label.chars().next().unwrap_or(' '))
                .map_err(|_| Error::invalid(format!("contact table: bad row label '{label}'")))?;
            for (col, cell) in cells.enumerate() {
                if col >= 20 {
                    return Err(Error::invalid(format!(
                        "contact table: row {label} has more than 20 entries"
                    )));
                }
                let value: f64 = cell.trim().parse().map_err(|_| {
                    Error::invalid(format!(
                        "contact table: unparseable entry '{}' at ({}, {})",
                        cell,
                        label,
                        expected[col]
                    ))
                })?;
                e[row.index()][col] = value;
            }
            rows_seen += 1;
        }
        if rows_seen != 20 {
            return Err(Error::invalid(format!(
                "contact table: expected 20 rows, found {rows_seen}"
            )));
        }

        // Completeness and symmetry over all 400 ordered pairs.
        for a in AminoAcid::all() {
            for b in AminoAcid::all() {
                let val = e[a.index()][b.index()];
                if val.is_nan() {
                    return Err(Error::invalid(format!(
                        "contact table: missing pair ({}, {})",
                        a.one_letter(),
                        b.one_letter()
                    )));
                }
                if val != e[b.index()][a.index()] {
                    return Err(Error::invalid(format!(
                        "contact table: asymmetric pair ({}, {}): {} vs {}",
                        a.one_letter(),
                        b.one_letter(),
                        val,
                        e[b.index()][a.index()]
                    )));
                }
            }
        }
        Ok(ContactEnergyTable { e })
    }

    /// Contact energy e_ab (order-independent).
    pub fn energy(&self, a: AminoAcid, b: AminoAcid) -> f64 {
        self.e[a.index()][b.index()]
    }

    /// Largest |e_ab| over the whole table.
    pub fn max_abs_energy(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aa(c: char) -> AminoAcid {
        AminoAcid::from_one_letter(c).unwrap()
    }

    #[test]
    fn embedded_table_loads() {
        let t = ContactEnergyTable::embedded().unwrap();
        // Spot values from the published matrix.
        assert_eq!(t.energy(aa('C'), aa('C')), -5.44);
        assert_eq!(t.energy(aa('L'), aa('L')), -7.37);
        assert_eq!(t.energy(aa('K'), aa('K')), -0.12);
        assert_eq!(t.energy(aa('L'), aa('G')), -4.16);
        assert_eq!(t.energy(aa('H'), aa('K')), -1.35);
    }

    #[test]
    fn symmetric_over_all_ordered_pairs() {
        let t = ContactEnergyTable::embedded().unwrap();
        for a in AminoAcid::all() {
            for b in AminoAcid::all() {
                assert_eq!(t.energy(a, b), t.energy(b, a));
            }
        }
    }

    #[test]
    fn all_entries_present_and_negative() {
        // The published matrix is all-negative; completeness is implied by
        // load succeeding, the sign check guards transcription slips.
        let t = ContactEnergyTable::embedded().unwrap();
        for a in AminoAcid::all() {
            for b in AminoAcid::all() {
                assert!(t.energy(a, b) < 0.0, "({a}, {b}) not negative");
            }
        }
        assert_eq!(t.max_abs_energy(), 7.37);
    }

    #[test]
    fn rejects_asymmetric_data() {
        let mut text = String::from(",");
        text.push_str(
            &ALPHABET
                .iter()
                .map(|&c| (c as char).to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        text.push('\n');
        for (i, &row) in ALPHABET.iter().enumerate() {
            text.push(row as char);
            for j in 0..20 {
                // e[i][j] = i*20+j is asymmetric.
                text.push_str(&format!(",{}", i * 20 + j));
            }
            text.push('\n');
        }
        let err = ContactEnergyTable::from_csv(&text).unwrap_err();
        assert!(err.to_string().contains("asymmetric"), "got: {err}");
    }

    #[test]
    fn rejects_missing_rows() {
        let mut lines: Vec<&str> = EMBEDDED_CSV.lines().collect();
        lines.pop();
        let err = ContactEnergyTable::from_csv(&lines.join("\n")).unwrap_err();
        assert!(err.to_string().contains("20 rows"), "got: {err}");
    }
}
