//! Conformations as turn sequences, their decoding to lattice positions, the
//! symmetry-fixing convention, bit encoding, and exhaustive enumeration.
//!
//! A conformation of an N-residue chain is the list of turns t₁..t_{N−1},
//! each choosing one of the four bond directions. Global rotation and mirror
//! redundancy are removed by fixing t₁ = 0, t₂ = 2 and restricting
//! t₃ ∈ {0, 1}; what remains is 2N − 7 free bits for N ≥ 4. A conformation
//! is *valid* when additionally no two consecutive turns repeat (a repeat
//! walks the chain straight back onto itself). Invalid conformations stay
//! representable — bit-space solvers produce them — but are flagged.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::lattice::{LatticeVec, BOND_DIRECTIONS};
use crate::model::sequence::ProteinSequence;

/// A (possibly invalid) placement of a sequence on the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conformation {
    sequence: ProteinSequence,
    turns: Vec<u8>,
}

impl Conformation {
    /// Builds a conformation from explicit turns.
    ///
    /// # Errors
    /// Rejects a turn count other than N − 1 and any turn value outside
    /// {0, 1, 2, 3}. Symmetry fixing and the growth constraint are *not*
    /// required here; see [`Conformation::is_valid`].
    pub fn new(sequence: ProteinSequence, turns: Vec<u8>) -> Result<Self> {
        if turns.len() != sequence.len() - 1 {
            return Err(Error::invalid(format!(
                "expected {} turns for {} residues, got {}",
                sequence.len() - 1,
                sequence.len(),
                turns.len()
            )));
        }
        if let Some(&bad) = turns.iter().find(|&&t| t > 3) {
            return Err(Error::invalid(format!("turn value {bad} outside 0..=3")));
        }
        Ok(Conformation { sequence, turns })
    }

    pub fn sequence(&self) -> &ProteinSequence {
        &self.sequence
    }

    /// Turns t₁..t_{N−1}.
    pub fn turns(&self) -> &[u8] {
        &self.turns
    }

    /// Decodes bead positions: p₁ = (0,0,0) and
    /// p_{k+1} = p_k + σ_k·d_{t_k}, with σ_k = +1 for odd bond index k and
    /// −1 for even. Works for valid and invalid conformations alike.
    pub fn positions(&self) -> Vec<LatticeVec> {
        let mut out = Vec::with_capacity(self.sequence.len());
        let mut p = LatticeVec::ZERO;
        out.push(p);
        for (idx, &t) in self.turns.iter().enumerate() {
            let d = BOND_DIRECTIONS[t as usize];
            // Bond index k = idx + 1 (1-based); odd k steps forward.
            p = if idx % 2 == 0 { p + d } else { p - d };
            out.push(p);
        }
        out
    }

    /// Number of back-turns (positions k with t_{k+1} = t_k).
    pub fn backturn_count(&self) -> usize {
        self.turns.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// Whether the fixed-turn convention holds: t₁ = 0, t₂ = 2, t₃ ∈ {0, 1}
    /// (each checked only where the chain is long enough to have that turn).
    pub fn is_symmetry_fixed(&self) -> bool {
        match self.turns.len() {
            0 => true,
            1 => self.turns[0] == 0,
            2 => self.turns[0] == 0 && self.turns[1] == 2,
            _ => self.turns[0] == 0 && self.turns[1] == 2 && self.turns[2] < 2,
        }
    }

    /// Symmetry-fixed and free of back-turns.
    pub fn is_valid(&self) -> bool {
        self.is_symmetry_fixed() && self.backturn_count() == 0
    }

    /// Encodes the free turns as bits, ordered
    /// `[b₃, a₄, b₄, …, a_{N−1}, b_{N−1}]` with t = 2a + b.
    ///
    /// # Errors
    /// Rejects non-symmetry-fixed conformations and chains with N < 4 (which
    /// have no free bits).
    pub fn to_bits(&self) -> Result<Vec<bool>> {
        let count = free_bit_count(self.sequence.len())?;
        if !self.is_symmetry_fixed() {
            return Err(Error::invalid(format!(
                "conformation is not symmetry-fixed (turns start {:?})",
                &self.turns[..self.turns.len().min(3)]
            )));
        }
        let mut bits = Vec::with_capacity(count);
        bits.push(self.turns[2] & 1 == 1);
        for &t in &self.turns[3..] {
            bits.push(t & 2 == 2);
            bits.push(t & 1 == 1);
        }
        debug_assert_eq!(bits.len(), count);
        Ok(bits)
    }

    /// Decodes a bit assignment back to a conformation. Never fails on
    /// values: back-turn patterns decode to conformations flagged invalid.
    ///
    /// # Errors
    /// Rejects a bit count other than 2N − 7.
    pub fn from_bits(sequence: ProteinSequence, bits: &[bool]) -> Result<Self> {
        let count = free_bit_count(sequence.len())?;
        if bits.len() != count {
            return Err(Error::invalid(format!(
                "expected {} bits for {} residues, got {}",
                count,
                sequence.len(),
                bits.len()
            )));
        }
        let mut turns = Vec::with_capacity(sequence.len() - 1);
        turns.push(0);
        turns.push(2);
        turns.push(bits[0] as u8);
        for pair in bits[1..].chunks(2) {
            turns.push((pair[0] as u8) * 2 + pair[1] as u8);
        }
        Conformation::new(sequence, turns)
    }
}

/// Number of free configuration bits, 2N − 7.
///
/// # Errors
/// Rejects N < 4: shorter chains have no free turns.
pub fn free_bit_count(n: usize) -> Result<usize> {
    if n < 4 {
        return Err(Error::invalid(format!(
            "N >= 4 required for a nontrivial fold (got N = {n})"
        )));
    }
    Ok(2 * n - 7)
}

/// Labels for the free bits, `["b3", "a4", "b4", …]`, matching the encoding
/// order of [`Conformation::to_bits`].
pub fn bit_labels(n: usize) -> Result<Vec<String>> {
    free_bit_count(n)?;
    let mut labels = vec!["b3".to_string()];
    for k in 4..n {
        labels.push(format!("a{k}"));
        labels.push(format!("b{k}"));
    }
    Ok(labels)
}

/// Exact count of symmetry-fixed back-turn-free conformations, 2·3^{N−4}.
pub fn valid_conformation_count(n: usize) -> Result<u128> {
    free_bit_count(n)?;
    Ok(2 * 3u128.pow(n as u32 - 4))
}

/// Enumerates every valid conformation in lexicographic turn order.
///
/// # Errors
/// Rejects N < 4 (use the single canonical chain directly if needed).
pub fn enumerate_valid(sequence: &ProteinSequence) -> Result<Vec<Conformation>> {
    let n = sequence.len();
    free_bit_count(n)?;
    let mut out = Vec::with_capacity(valid_conformation_count(n)? as usize);
    let mut turns = vec![0u8; n - 1];
    turns[1] = 2;

    fn extend(
        sequence: &ProteinSequence,
        turns: &mut Vec<u8>,
        k: usize,
        out: &mut Vec<Conformation>,
    ) {
        if k == turns.len() {
            out.push(Conformation {
                sequence: sequence.clone(),
                turns: turns.clone(),
            });
            return;
        }
        let choices: &[u8] = if k == 2 { &[0, 1] } else { &[0, 1, 2, 3] };
        for &t in choices {
            if t != turns[k - 1] {
                turns[k] = t;
                extend(sequence, turns, k + 1, out);
            }
        }
    }

    extend(sequence, &mut turns, 2, &mut out);
    Ok(out)
}

/// Draws a uniformly random valid conformation.
pub fn random_valid<R: Rng + ?Sized>(sequence: &ProteinSequence, rng: &mut R) -> Result<Conformation> {
    let n = sequence.len();
    free_bit_count(n)?;
    let mut turns = vec![0u8; n - 1];
    turns[1] = 2;
    turns[2] = rng.random_range(0..2u8);
    for k in 3..n - 1 {
        // Three choices differ from the previous turn; skip over it.
        let mut t = rng.random_range(0..3u8);
        if t >= turns[k - 1] {
            t += 1;
        }
        turns[k] = t;
    }
    Ok(Conformation {
        sequence: sequence.clone(),
        turns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> ProteinSequence {
        ProteinSequence::parse(text).unwrap()
    }

    #[test]
    fn decode_single_bond() {
        let c = Conformation::new(seq("GA"), vec![0]).unwrap();
        assert_eq!(
            c.positions(),
            vec![LatticeVec::ZERO, LatticeVec::new(1, 1, 1)]
        );
    }

    #[test]
    fn decode_two_bonds_hand_evaluated() {
        // Bond 2 has sigma = -1, so p3 = (1,1,1) - (-1,1,-1) = (2,0,2).
        let c = Conformation::new(seq("GAG"), vec![0, 2]).unwrap();
        assert_eq!(c.positions()[2], LatticeVec::new(2, 0, 2));
    }

    #[test]
    fn backturn_walks_back_onto_previous_bead() {
        let c = Conformation::new(seq("GAGA"), vec![0, 2, 2]).unwrap();
        let p = c.positions();
        assert_eq!(p[3], p[1]);
        assert_eq!(c.backturn_count(), 1);
        assert!(!c.is_valid());
    }

    #[test]
    fn free_bit_count_matches_convention() {
        assert_eq!(free_bit_count(7).unwrap(), 7);
        assert_eq!(free_bit_count(12).unwrap(), 17);
        assert!(free_bit_count(3).is_err());
        assert_eq!(
            bit_labels(6).unwrap(),
            vec!["b3", "a4", "b4", "a5", "b5"]
        );
    }

    #[test]
    fn all_zero_bits_at_n5_is_flagged_invalid() {
        // turns [0,2,0,0]: t4 = t3 = 0 is a back-turn.
        let c = Conformation::from_bits(seq("GAGAG"), &[false, false, false]).unwrap();
        assert_eq!(c.turns(), &[0, 2, 0, 0]);
        assert!(!c.is_valid());
        assert_eq!(c.backturn_count(), 1);
    }

    #[test]
    fn round_trip_all_patterns_n7() {
        let s = seq("LHPGAGK");
        for pattern in 0u32..(1 << 7) {
            let bits: Vec<bool> = (0..7).map(|i| pattern >> i & 1 == 1).collect();
            let conf = Conformation::from_bits(s.clone(), &bits).unwrap();
            assert_eq!(conf.to_bits().unwrap(), bits);
        }
    }

    #[test]
    fn to_bits_rejects_non_symmetry_fixed() {
        let c = Conformation::new(seq("GAGA"), vec![1, 2, 0]).unwrap();
        assert!(c.to_bits().is_err());
    }

    #[test]
    fn enumeration_count_matches_closed_form() {
        for n in 4..=10 {
            let s = seq(&"G".repeat(n));
            let all = enumerate_valid(&s).unwrap();
            assert_eq!(all.len() as u128, valid_conformation_count(n).unwrap());
            assert!(all.iter().all(Conformation::is_valid));
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        let all = enumerate_valid(&seq("LHPGAGK")).unwrap();
        assert_eq!(all.len(), 54);
        for w in all.windows(2) {
            assert!(w[0].turns() < w[1].turns());
        }
    }

    #[test]
    fn random_valid_is_valid() {
        let mut rng = rand::rng();
        for n in [4, 7, 19, 30] {
            let s = seq(&"K".repeat(n));
            for _ in 0..50 {
                assert!(random_valid(&s, &mut rng).unwrap().is_valid());
            }
        }
    }
}
