//! Quadratization: degree reduction of the bit-space Hamiltonian to a QUBO.
//!
//! Higher-degree monomials are eliminated by Rosenberg substitution: pick
//! the variable pair (x, y) occurring in the most monomials of degree ≥ 3,
//! introduce an ancilla w, rewrite those monomials with w in place of x·y,
//! and add the penalty M·(xy − 2xw − 2yw + 3w), which is 0 when w = x·y and
//! ≥ M otherwise. With M large enough, minimizers of the QUBO restrict
//! exactly to minimizers of the original polynomial.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::{BitPolynomial, SpinPolynomial};

/// How the substitution penalty M is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PenaltyRule {
    /// M = 2·Σ|coefficients of the input polynomial| + 1, one value for
    /// every ancilla. Provably dominating: violating any constraint costs
    /// more than the largest possible energy gain.
    Auto,
    /// A caller-supplied M (must be > 0), applied to every ancilla.
    Fixed(f64),
    /// Per-ancilla M = 2·Σ|coefficients of the monomials being rewritten|
    /// + 1. Tighter (smaller penalties keep QUBO coefficients comparable to
    /// the energy scale) but bound per substitution rather than globally.
    TightPerAncilla,
}

/// One introduced ancilla: `var` stands in for the product of `parents`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AncillaRecord {
    pub var: u32,
    pub parents: (u32, u32),
    pub penalty: f64,
}

/// A quadratic unconstrained binary program.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProgram {
    /// Total variables: the original ones (indices `0..original_vars`)
    /// followed by ancillas in introduction order.
    pub num_vars: u32,
    pub original_vars: u32,
    pub linear: BTreeMap<u32, f64>,
    /// Keys are ordered pairs (i, j) with i < j.
    pub quadratic: BTreeMap<(u32, u32), f64>,
    pub offset: f64,
    pub ancillas: Vec<AncillaRecord>,
    /// The base penalty value of the rule in force (per-ancilla values may
    /// be smaller under [`PenaltyRule::TightPerAncilla`]).
    pub penalty: f64,
}

impl QuboProgram {
    /// Evaluates at a full assignment (original variables then ancillas).
    ///
    /// # Errors
    /// Rejects assignments whose length differs from `num_vars`.
    pub fn eval(&self, assignment: &[bool]) -> Result<f64> {
        if assignment.len() != self.num_vars as usize {
            return Err(Error::invalid(format!(
                "expected {} variables, got {}",
                self.num_vars,
                assignment.len()
            )));
        }
        let mut total = self.offset;
        for (&i, &c) in &self.linear {
            if assignment[i as usize] {
                total += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if assignment[i as usize] && assignment[j as usize] {
                total += c;
            }
        }
        Ok(total)
    }

    /// The program as a multilinear polynomial (degree ≤ 2).
    pub fn as_polynomial(&self) -> BitPolynomial {
        let mut p = BitPolynomial::constant(self.offset);
        for (&i, &c) in &self.linear {
            p.add_term(&[i], c);
        }
        for (&(i, j), &c) in &self.quadratic {
            p.add_term(&[i, j], c);
        }
        p
    }

    /// Number of stored terms (offset excluded).
    pub fn term_count(&self) -> usize {
        self.linear.len() + self.quadratic.len()
    }

    /// Serializes as text lines `i j coeff`: the offset under the sentinel
    /// pair `-1 -1`, linear terms as `i i coeff`, quadratic as `i j coeff`
    /// with i < j. Round-trips through [`QuboProgram::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "-1 -1 {}", self.offset).unwrap();
        for (&i, &c) in &self.linear {
            writeln!(out, "{i} {i} {c}").unwrap();
        }
        for (&(i, j), &c) in &self.quadratic {
            writeln!(out, "{i} {j} {c}").unwrap();
        }
        out
    }

    /// Parses the text form. Ancilla provenance is not part of the text
    /// format, so the result has an empty ancilla list and `original_vars ==
    /// num_vars`.
    ///
    /// # Errors
    /// Rejects malformed lines, naming the line number.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut linear = BTreeMap::new();
        let mut quadratic = BTreeMap::new();
        let mut offset = 0.0;
        let mut num_vars = 0u32;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::invalid(format!("line {}: {what}", lineno + 1));
            let mut tokens = line.split_whitespace();
            let i: i64 = tokens
                .next()
                .unwrap()
                .parse()
                .map_err(|_| bad("bad first index"))?;
            let j: i64 = tokens
                .next()
                .ok_or_else(|| bad("missing second index"))?
                .parse()
                .map_err(|_| bad("bad second index"))?;
            let c: f64 = tokens
                .next()
                .ok_or_else(|| bad("missing coefficient"))?
                .parse()
                .map_err(|_| bad("bad coefficient"))?;
            if tokens.next().is_some() {
                return Err(bad("trailing tokens"));
            }
            match (i, j) {
                (-1, -1) => offset += c,
                (i, j) if i >= 0 && j >= 0 => {
                    let (i, j) = (i as u32, j as u32);
                    num_vars = num_vars.max(i + 1).max(j + 1);
                    if i == j {
                        *linear.entry(i).or_insert(0.0) += c;
                    } else {
                        *quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += c;
                    }
                }
                _ => return Err(bad("negative index in non-sentinel line")),
            }
        }
        linear.retain(|_, c| *c != 0.0);
        quadratic.retain(|_, c| *c != 0.0);
        Ok(QuboProgram {
            num_vars,
            original_vars: num_vars,
            linear,
            quadratic,
            offset,
            ancillas: Vec::new(),
            penalty: 1.0,
        })
    }

    /// Metadata document (serialize to JSON for sidecar files).
    pub fn meta(&self) -> QuboMeta {
        let spin = qubo_to_spin(self);
        QuboMeta {
            variables: self.num_vars,
            original_variables: self.original_vars,
            ancillas: self.ancillas.clone(),
            penalty: self.penalty,
            offset: self.offset,
            boolean_terms: self.term_count(),
            spin_terms: spin.term_count(),
            spin_h_max: spin.h_max(),
        }
    }
}

/// JSON-shaped description of a quadratized program.
#[derive(Debug, Clone, Serialize)]
pub struct QuboMeta {
    pub variables: u32,
    pub original_variables: u32,
    pub ancillas: Vec<AncillaRecord>,
    pub penalty: f64,
    pub offset: f64,
    pub boolean_terms: usize,
    pub spin_terms: u64,
    pub spin_h_max: f64,
}

/// Exact b = (1 − z)/2 substitution; degree ≤ 2 is preserved.
pub fn qubo_to_spin(q: &QuboProgram) -> SpinPolynomial {
    q.as_polynomial().to_spin()
}

/// Reduces a multilinear polynomial to a QUBO program.
///
/// Variables `0..h.num_vars()` are the originals; ancillas follow in
/// introduction order. Already-quadratic input comes back unchanged with no
/// ancillas.
pub fn quadratize(h: &BitPolynomial, rule: PenaltyRule) -> Result<QuboProgram> {
    quadratize_declared(h, h.num_vars(), rule)
}

/// [`quadratize`] with an explicit original-variable count, for polynomials
/// whose trailing variables happen to carry zero coefficient.
///
/// # Errors
/// Rejects `num_vars` smaller than the referenced variable range, and
/// non-positive fixed penalties.
pub fn quadratize_declared(
    h: &BitPolynomial,
    num_vars: u32,
    rule: PenaltyRule,
) -> Result<QuboProgram> {
    if num_vars < h.num_vars() {
        return Err(Error::invalid(format!(
            "declared {} variables but the polynomial references variable {}",
            num_vars,
            h.num_vars() - 1
        )));
    }
    let base_penalty = match rule {
        PenaltyRule::Auto | PenaltyRule::TightPerAncilla => 2.0 * h.abs_coeff_sum() + 1.0,
        PenaltyRule::Fixed(m) => {
            if m <= 0.0 {
                return Err(Error::invalid(format!("penalty must be positive, got {m}")));
            }
            m
        }
    };

    let mut terms: BTreeMap<Vec<u32>, f64> = h.terms().map(|(m, c)| (m.to_vec(), c)).collect();
    let mut next_var = num_vars;
    let mut ancillas = Vec::new();

    loop {
        // Count, over monomials of degree ≥ 3, how often each variable pair
        // co-occurs; also accumulate |coeff| per pair for the tight rule.
        let mut freq: BTreeMap<(u32, u32), (usize, f64)> = BTreeMap::new();
        for (mono, &c) in &terms {
            if mono.len() < 3 {
                continue;
            }
            for (a, &x) in mono.iter().enumerate() {
                for &y in &mono[a + 1..] {
                    let e = freq.entry((x, y)).or_insert((0, 0.0));
                    e.0 += 1;
                    e.1 += c.abs();
                }
            }
        }
        let Some((pair, abs_sum)) = freq
            .iter()
            .max_by_key(|&(&pair, &(count, _))| (count, std::cmp::Reverse(pair)))
            .map(|(&pair, &(_, abs_sum))| (pair, abs_sum))
        else {
            break;
        };

        let w = next_var;
        next_var += 1;
        let m = match rule {
            PenaltyRule::TightPerAncilla => 2.0 * abs_sum + 1.0,
            _ => base_penalty,
        };

        // Substitute w for the pair in every higher-degree monomial.
        let affected: Vec<Vec<u32>> = terms
            .keys()
            .filter(|mono| {
                mono.len() >= 3
                    && mono.binary_search(&pair.0).is_ok()
                    && mono.binary_search(&pair.1).is_ok()
            })
            .cloned()
            .collect();
        for mono in affected {
            let c = terms.remove(&mono).unwrap();
            let mut rewritten: Vec<u32> =
                mono.into_iter().filter(|&v| v != pair.0 && v != pair.1).collect();
            rewritten.push(w);
            let e = terms.entry(rewritten).or_insert(0.0);
            *e += c;
        }
        // Penalty M·(xy − 2xw − 2yw + 3w).
        for (mono, c) in [
            (vec![pair.0, pair.1], m),
            (vec![pair.0, w], -2.0 * m),
            (vec![pair.1, w], -2.0 * m),
            (vec![w], 3.0 * m),
        ] {
            let e = terms.entry(mono).or_insert(0.0);
            *e += c;
        }
        ancillas.push(AncillaRecord {
            var: w,
            parents: pair,
            penalty: m,
        });
    }

    let mut linear = BTreeMap::new();
    let mut quadratic = BTreeMap::new();
    let mut offset = 0.0;
    for (mono, c) in terms {
        if c == 0.0 {
            continue;
        }
        match mono.as_slice() {
            [] => offset += c,
            [i] => {
                linear.insert(*i, c);
            }
            [i, j] => {
                quadratic.insert((*i, *j), c);
            }
            _ => unreachable!("monomial of degree > 2 survived quadratization"),
        }
    }
    Ok(QuboProgram {
        num_vars: next_var,
        original_vars: num_vars,
        linear,
        quadratic,
        offset,
        ancillas,
        penalty: base_penalty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(&[u32], f64)]) -> BitPolynomial {
        let mut p = BitPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, *c);
        }
        p
    }

    /// Brute-force minimum of a polynomial over a given variable count.
    fn brute_min(p: &BitPolynomial, n: u32) -> (f64, Vec<Vec<bool>>) {
        let mut best = f64::INFINITY;
        let mut args = Vec::new();
        for mask in 0u64..(1 << n) {
            let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let e = p.eval(&bits).unwrap();
            if e < best - 1e-9 {
                best = e;
                args = vec![bits];
            } else if (e - best).abs() <= 1e-9 {
                args.push(bits);
            }
        }
        (best, args)
    }

    #[test]
    fn quadratic_input_is_a_fixed_point() {
        let p = poly(&[(&[], 1.5), (&[0], -2.0), (&[0, 1], 3.0)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        assert_eq!(q.num_vars, 2);
        assert!(q.ancillas.is_empty());
        assert_eq!(q.as_polynomial(), p);
        assert!(q.penalty > 0.0);
    }

    #[test]
    fn single_cubic_term() {
        let p = poly(&[(&[0, 1, 2], -1.0)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        assert_eq!(q.num_vars, 4);
        assert_eq!(q.ancillas.len(), 1);
        assert_eq!(q.penalty, 3.0); // 2·|−1| + 1
        // Brute force over 2^4: minimum −1 at x0=x1=x2=1 (w=1).
        let (min, args) = brute_min(&q.as_polynomial(), 4);
        assert!((min - -1.0).abs() <= 1e-12);
        assert_eq!(args, vec![vec![true, true, true, true]]);
    }

    #[test]
    fn most_frequent_pair_is_substituted_first() {
        // (0,1) occurs in two cubics, (0,2)/(1,2)/(2,3)/(1,3)/(0,3) in one.
        let p = poly(&[(&[0, 1, 2], 1.0), (&[0, 1, 3], 1.0)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        assert_eq!(q.ancillas.len(), 1);
        assert_eq!(q.ancillas[0].parents, (0, 1));
    }

    #[test]
    fn tie_breaks_to_lexicographically_smallest_pair() {
        let p = poly(&[(&[2, 3, 4], 1.0), (&[0, 1, 5], 1.0)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        assert_eq!(q.ancillas[0].parents, (0, 1));
    }

    #[test]
    fn quartic_chain_reduces_fully() {
        let p = poly(&[(&[0, 1, 2, 3], -2.0), (&[1, 2, 3], 1.0), (&[0, 1], 0.5)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        assert!(q
            .as_polynomial()
            .terms()
            .all(|(m, _)| m.len() <= 2));
        // Minimum preservation with restricted argmins.
        let (want_min, want_args) = brute_min(&p, 4);
        let (got_min, got_args) = brute_min(&q.as_polynomial(), q.num_vars);
        assert!((want_min - got_min).abs() <= 1e-9);
        let restricted: std::collections::BTreeSet<Vec<bool>> =
            got_args.iter().map(|a| a[..4].to_vec()).collect();
        let want: std::collections::BTreeSet<Vec<bool>> = want_args.into_iter().collect();
        assert_eq!(restricted, want);
    }

    #[test]
    fn auto_penaltied_minimizers_respect_ancilla_constraints() {
        let p = poly(&[
            (&[0, 1, 2], -4.0),
            (&[0, 1, 3], 2.5),
            (&[2, 3], -1.0),
            (&[1], 0.75),
        ]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        let (_, args) = brute_min(&q.as_polynomial(), q.num_vars);
        for bits in args {
            for rec in &q.ancillas {
                let (x, y) = rec.parents;
                assert_eq!(
                    bits[rec.var as usize],
                    bits[x as usize] && bits[y as usize],
                    "ancilla {} broke its constraint",
                    rec.var
                );
            }
        }
    }

    #[test]
    fn fixed_and_tight_rules() {
        let p = poly(&[(&[0, 1, 2], -1.0), (&[3, 4, 5], -10.0)]);
        assert!(quadratize(&p, PenaltyRule::Fixed(0.0)).is_err());
        let fixed = quadratize(&p, PenaltyRule::Fixed(100.0)).unwrap();
        assert!(fixed.ancillas.iter().all(|a| a.penalty == 100.0));
        let tight = quadratize(&p, PenaltyRule::TightPerAncilla).unwrap();
        // Each cubic is isolated: per-ancilla penalties reflect local weight.
        let mut penalties: Vec<f64> = tight.ancillas.iter().map(|a| a.penalty).collect();
        penalties.sort_by(f64::total_cmp);
        assert_eq!(penalties, vec![3.0, 21.0]);
        let (want_min, _) = brute_min(&p, 6);
        let (got_min, _) = brute_min(&tight.as_polynomial(), tight.num_vars);
        assert!((want_min - got_min).abs() <= 1e-9);
    }

    #[test]
    fn declared_variable_count_places_ancillas_after_gap() {
        let p = poly(&[(&[0, 1, 2], 1.0)]);
        let q = quadratize_declared(&p, 5, PenaltyRule::Auto).unwrap();
        assert_eq!(q.original_vars, 5);
        assert_eq!(q.ancillas[0].var, 5);
        assert!(quadratize_declared(&p, 2, PenaltyRule::Auto).is_err());
    }

    #[test]
    fn eval_matches_polynomial_form() {
        let p = poly(&[(&[0, 1, 2], -2.0), (&[0, 2], 1.0), (&[1], -0.5), (&[], 0.25)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        let qp = q.as_polynomial();
        for mask in 0u64..(1 << q.num_vars) {
            let bits: Vec<bool> = (0..q.num_vars).map(|i| mask >> i & 1 == 1).collect();
            assert_eq!(q.eval(&bits).unwrap(), qp.eval(&bits).unwrap());
        }
        assert!(q.eval(&[true]).is_err());
    }

    #[test]
    fn spin_form_agrees_on_all_assignments() {
        let p = poly(&[(&[0, 1, 2], -2.0), (&[1, 2], 1.0), (&[0], -0.5)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        let spin = qubo_to_spin(&q);
        assert!(spin.degree() <= 2);
        for mask in 0u64..(1 << q.num_vars) {
            let bits: Vec<bool> = (0..q.num_vars).map(|i| mask >> i & 1 == 1).collect();
            let a = q.eval(&bits).unwrap();
            let b = spin.eval_bits(&bits).unwrap();
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn spin_form_trivial_identities() {
        // Constant program.
        let q = quadratize(&poly(&[(&[], 4.0)]), PenaltyRule::Auto).unwrap();
        let spin = qubo_to_spin(&q);
        assert_eq!(spin.term_count(), 0);
        assert_eq!(spin.eval_bits(&[]).unwrap(), 4.0);
        // {b0: 2} -> 1 - z0.
        let q = quadratize(&poly(&[(&[0], 2.0)]), PenaltyRule::Auto).unwrap();
        let spin = qubo_to_spin(&q);
        let terms: Vec<(Vec<u32>, f64)> =
            spin.terms().map(|(m, c)| (m.to_vec(), c)).collect();
        assert_eq!(terms, vec![(vec![], 1.0), (vec![0], -1.0)]);
    }

    #[test]
    fn text_round_trip() {
        let p = poly(&[(&[0, 1, 2], -2.0), (&[0, 2], 1.0), (&[1], -0.5), (&[], 0.25)]);
        let q = quadratize(&p, PenaltyRule::Auto).unwrap();
        let text = q.to_text();
        assert!(text.starts_with("-1 -1 0.25"));
        let back = QuboProgram::from_text(&text).unwrap();
        assert_eq!(back.linear, q.linear);
        assert_eq!(back.quadratic, q.quadratic);
        assert_eq!(back.offset, q.offset);
        assert_eq!(back.num_vars, q.num_vars);
    }

    #[test]
    fn from_text_rejects_malformed_lines() {
        assert!(QuboProgram::from_text("0 1\n").is_err());
        assert!(QuboProgram::from_text("0 x 1.0\n").is_err());
        assert!(QuboProgram::from_text("-1 0 1.0\n").is_err());
        assert!(QuboProgram::from_text("0 1 2.0 extra\n").is_err());
    }
}
