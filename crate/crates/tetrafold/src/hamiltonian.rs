//! The diagonal bit-space Hamiltonian.
//!
//! Variables are the 2N − 7 free configuration bits followed by one
//! interaction ancilla q per candidate contact pair. The energy polynomial
//! is
//!
//! ```text
//! H = λ_bt · Σ_k EQ(t_k, t_{k+1})  +  Σ_(i,j) q_ij · [e_ij + λ₁·(D²_ij − 3)]
//! ```
//!
//! where EQ is the two-bit equality indicator over consecutive turns (the
//! back-turn penalty, degree 4) and D²_ij the squared displacement between
//! beads i and j (degree ≤ 4 over bits; each coordinate of a bond is a
//! degree-≤ 2 polynomial via the (s, t, s·t) direction map). Fixed turn bits
//! are substituted at build time, so variable counts match the device-level
//! qubit accounting exactly. No monomial exceeds degree 5.
//!
//! Minimizing over an ancilla resolves it in closed form: q_ij = 1 exactly
//! when the pair is in contact (D² = 3) and e_ij < 0, because non-contact
//! odd-separation pairs sit at D² ≥ 11 and the penalty step 8·λ₁ outweighs
//! any |e_ij|. That makes the Hamiltonian agree with the `clamped` oracle on
//! every valid conformation. Overlap penalties are deliberately *not*
//! encoded (the degree would explode); bit-space minimizers may therefore
//! propose self-intersecting folds, which callers re-score and report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::energy::candidate_pairs;
use crate::error::{Error, Result};
use crate::model::{bit_labels, free_bit_count, ContactEnergyTable, ProteinSequence};

/// A multilinear real polynomial over binary variables.
///
/// Terms map a sorted, duplicate-free variable-index set to a nonzero
/// coefficient; the constant term lives under the empty set. Multilinearity
/// (x² = x) is maintained by every operation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BitPolynomial {
    terms: BTreeMap<Vec<u32>, f64>,
}

impl BitPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        BitPolynomial::default()
    }

    /// A constant polynomial.
    pub fn constant(c: f64) -> Self {
        let mut p = BitPolynomial::zero();
        p.add_term(&[], c);
        p
    }

    /// The single-variable polynomial x_i.
    pub fn variable(i: u32) -> Self {
        let mut p = BitPolynomial::zero();
        p.add_term(&[i], 1.0);
        p
    }

    /// Adds `coeff · Π_{i ∈ monomial} x_i`, collecting like terms and
    /// dropping exact-zero results. The monomial must be duplicate-free;
    /// order does not matter.
    pub fn add_term(&mut self, monomial: &[u32], coeff: f64) {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        debug_assert!(key.windows(2).all(|w| w[0] != w[1]), "duplicate index");
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0.0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if coeff != 0.0 {
                    v.insert(coeff);
                }
            }
        }
    }

    /// Adds another polynomial term-wise.
    pub fn add_assign(&mut self, other: &BitPolynomial) {
        for (mono, &c) in &other.terms {
            self.add_term(mono, c);
        }
    }

    /// Multiplies by a scalar.
    pub fn scaled(&self, s: f64) -> BitPolynomial {
        let mut out = BitPolynomial::zero();
        for (mono, &c) in &self.terms {
            out.add_term(mono, c * s);
        }
        out
    }

    /// Multilinear product: monomials multiply by index-set union.
    pub fn mul(&self, other: &BitPolynomial) -> BitPolynomial {
        let mut out = BitPolynomial::zero();
        let mut union = Vec::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                union.clear();
                union.extend_from_slice(ma);
                union.extend_from_slice(mb);
                union.sort_unstable();
                union.dedup();
                out.add_term(&union, ca * cb);
            }
        }
        out
    }

    /// Stored terms (sorted monomial → coefficient), constant included.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    /// Number of stored terms, constant included.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial degree (0 for constant or zero polynomials).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// One past the largest variable index mentioned; 0 if none.
    pub fn num_vars(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.last())
            .max()
            .map_or(0, |&i| i + 1)
    }

    /// Sum of |coefficient| over stored terms.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Evaluates at a bit assignment.
    ///
    /// # Errors
    /// Rejects assignments shorter than the referenced variable range.
    pub fn eval(&self, assignment: &[bool]) -> Result<f64> {
        if self.num_vars() as usize > assignment.len() {
            return Err(Error::invalid(format!(
                "assignment has {} bits but the polynomial references variable {}",
                assignment.len(),
                self.num_vars() - 1
            )));
        }
        let mut total = 0.0;
        for (mono, &c) in &self.terms {
            if mono.iter().all(|&i| assignment[i as usize]) {
                total += c;
            }
        }
        Ok(total)
    }

    /// Exact substitution b = (1 − z)/2 with like-term collection.
    pub fn to_spin(&self) -> SpinPolynomial {
        let mut spin: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (mono, &c) in &self.terms {
            let k = mono.len() as u32;
            let scale = c / f64::powi(2.0, k as i32);
            for subset in 0u32..(1 << k) {
                let sign = if subset.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let vars: Vec<u32> = mono
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| subset >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let entry = spin.entry(vars).or_insert(0.0);
                *entry += sign * scale;
            }
        }
        spin.retain(|_, c| *c != 0.0);
        SpinPolynomial { terms: spin }
    }

    /// Serializes as sorted text lines `coeff i j k …` (no indices for the
    /// constant term). Round-trips through [`BitPolynomial::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (mono, &c) in &self.terms {
            write!(out, "{c}").unwrap();
            for i in mono {
                write!(out, " {i}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form.
    ///
    /// # Errors
    /// Rejects unparseable coefficients or indices and non-multilinear
    /// monomials (duplicate index), naming the line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut poly = BitPolynomial::zero();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let coeff: f64 = tokens
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::invalid(format!("line {}: bad coefficient", lineno + 1)))?;
            let mut mono = Vec::new();
            for tok in tokens {
                let idx: u32 = tok.parse().map_err(|_| {
                    Error::invalid(format!("line {}: bad variable index '{tok}'", lineno + 1))
                })?;
                mono.push(idx);
            }
            mono.sort_unstable();
            if mono.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "line {}: non-multilinear monomial (duplicate index)",
                    lineno + 1
                )));
            }
            poly.add_term(&mono, coeff);
        }
        Ok(poly)
    }
}

/// The same polynomial over spin variables z ∈ {−1, +1}, z = 1 − 2b. Its
/// non-constant terms correspond one-to-one to Pauli-Z strings.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpinPolynomial {
    terms: BTreeMap<Vec<u32>, f64>,
}

impl SpinPolynomial {
    /// Stored terms (sorted monomial → coefficient), constant included.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    /// T: number of non-constant terms (Pauli-Z strings to measure).
    pub fn term_count(&self) -> u64 {
        self.terms.keys().filter(|m| !m.is_empty()).count() as u64
    }

    /// h_max: largest |coefficient| over non-constant terms (0 if none).
    pub fn h_max(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .fold(0.0f64, |acc, (_, &c)| acc.max(c.abs()))
    }

    /// Largest monomial degree.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Evaluates at a bit assignment via z = 1 − 2b.
    pub fn eval_bits(&self, assignment: &[bool]) -> Result<f64> {
        let max_var = self
            .terms
            .keys()
            .filter_map(|m| m.last())
            .max()
            .map_or(0, |&i| i as usize + 1);
        if max_var > assignment.len() {
            return Err(Error::invalid(format!(
                "assignment has {} bits but the polynomial references variable {}",
                assignment.len(),
                max_var - 1
            )));
        }
        let mut total = 0.0;
        for (mono, &c) in &self.terms {
            let parity = mono.iter().filter(|&&i| assignment[i as usize]).count();
            total += if parity % 2 == 0 { c } else { -c };
        }
        Ok(total)
    }
}

/// What each Hamiltonian variable means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableKind {
    /// High bit a_k of turn k.
    TurnHigh(usize),
    /// Low bit b_k of turn k.
    TurnLow(usize),
    /// Interaction ancilla q_ij for candidate pair (i, j), 1-based beads.
    Contact(usize, usize),
}

/// Variable order: the 2N − 7 configuration bits, then one contact ancilla
/// per candidate pair in lexicographic pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableLayout {
    vars: Vec<VariableKind>,
    config_bits: usize,
}

impl VariableLayout {
    fn for_sequence_length(n: usize) -> Result<Self> {
        let config_bits = free_bit_count(n)?;
        let mut vars = vec![VariableKind::TurnLow(3)];
        for k in 4..n {
            vars.push(VariableKind::TurnHigh(k));
            vars.push(VariableKind::TurnLow(k));
        }
        for (i, j) in candidate_pairs(n) {
            vars.push(VariableKind::Contact(i, j));
        }
        Ok(VariableLayout { vars, config_bits })
    }

    /// Total variable count (configuration bits + ancillas).
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Number of leading configuration bits (2N − 7).
    pub fn config_bits(&self) -> usize {
        self.config_bits
    }

    /// Number of trailing interaction ancillas.
    pub fn ancilla_count(&self) -> usize {
        self.vars.len() - self.config_bits
    }

    /// Meaning of variable `i`.
    pub fn kind(&self, i: usize) -> VariableKind {
        self.vars[i]
    }

    /// Human-readable labels: `b3, a4, b4, …, q1_6, q2_7, …`.
    pub fn labels(&self) -> Vec<String> {
        self.vars
            .iter()
            .map(|v| match v {
                VariableKind::TurnHigh(k) => format!("a{k}"),
                VariableKind::TurnLow(k) => format!("b{k}"),
                VariableKind::Contact(i, j) => format!("q{i}_{j}"),
            })
            .collect()
    }
}

/// Penalty weights of the Hamiltonian, kcal/mol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HamiltonianParams {
    /// λ_bt: weight of each consecutive-turn equality (back-turn) indicator.
    pub backturn: f64,
    /// λ₁: weight per unit of (D² − 3) gating each contact ancilla. Must
    /// exceed max|e_ij|/8 for the ancilla minimization to resolve cleanly;
    /// the default (10) comfortably beats the embedded table's 7.37.
    pub distance: f64,
}

impl Default for HamiltonianParams {
    fn default() -> Self {
        HamiltonianParams {
            backturn: 50.0,
            distance: 10.0,
        }
    }
}

/// A built Hamiltonian: polynomial, variable layout, and provenance.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub poly: BitPolynomial,
    pub layout: VariableLayout,
    pub params: HamiltonianParams,
    sequence: ProteinSequence,
}

impl Hamiltonian {
    pub fn sequence(&self) -> &ProteinSequence {
        &self.sequence
    }

    /// Evaluates the polynomial at a full assignment (config bits followed
    /// by ancillas).
    ///
    /// # Errors
    /// Rejects assignments whose length differs from the layout size.
    pub fn energy(&self, assignment: &[bool]) -> Result<f64> {
        if assignment.len() != self.layout.len() {
            return Err(Error::invalid(format!(
                "expected {} variables, got {}",
                self.layout.len(),
                assignment.len()
            )));
        }
        self.poly.eval(assignment)
    }

    /// Metadata document describing this Hamiltonian (serialize to JSON for
    /// sidecar files).
    pub fn meta(&self) -> HamiltonianMeta {
        let spin = self.poly.to_spin();
        HamiltonianMeta {
            sequence: self.sequence.to_string(),
            residues: self.sequence.len(),
            config_bits: self.layout.config_bits(),
            interaction_ancillas: self.layout.ancilla_count(),
            variables: self.layout.labels(),
            backturn_penalty: self.params.backturn,
            distance_penalty: self.params.distance,
            max_degree: self.poly.degree(),
            boolean_terms: self.poly.term_count(),
            spin_terms: spin.term_count(),
            spin_h_max: spin.h_max(),
        }
    }
}

/// JSON-shaped description of a built Hamiltonian.
#[derive(Debug, Clone, Serialize)]
pub struct HamiltonianMeta {
    pub sequence: String,
    pub residues: usize,
    pub config_bits: usize,
    pub interaction_ancillas: usize,
    pub variables: Vec<String>,
    pub backturn_penalty: f64,
    pub distance_penalty: f64,
    pub max_degree: usize,
    pub boolean_terms: usize,
    pub spin_terms: u64,
    pub spin_h_max: f64,
}

/// 0/1-valued polynomials for the (a, b) bits of turn k under the fixed-turn
/// convention and the layout's variable numbering.
fn turn_bit_polys(k: usize) -> (BitPolynomial, BitPolynomial) {
    match k {
        1 => (BitPolynomial::constant(0.0), BitPolynomial::constant(0.0)),
        2 => (BitPolynomial::constant(1.0), BitPolynomial::constant(0.0)),
        3 => (BitPolynomial::constant(0.0), BitPolynomial::variable(0)),
        _ => {
            let a = (2 * (k - 4) + 1) as u32;
            (BitPolynomial::variable(a), BitPolynomial::variable(a + 1))
        }
    }
}

/// Coordinate polynomials of bond k (1-based): σ_k · (s, t, s·t) with
/// s = 1 − 2a_k, t = 1 − 2b_k.
fn bond_polys(k: usize) -> [BitPolynomial; 3] {
    let (a, b) = turn_bit_polys(k);
    let mut s = BitPolynomial::constant(1.0);
    s.add_assign(&a.scaled(-2.0));
    let mut t = BitPolynomial::constant(1.0);
    t.add_assign(&b.scaled(-2.0));
    let st = s.mul(&t);
    let sigma = if k % 2 == 1 { 1.0 } else { -1.0 };
    [s.scaled(sigma), t.scaled(sigma), st.scaled(sigma)]
}

/// Equality indicator for one bit pair: 1 − p − q + 2pq.
fn bit_equality(p: &BitPolynomial, q: &BitPolynomial) -> BitPolynomial {
    let mut eq = BitPolynomial::constant(1.0);
    eq.add_assign(&p.scaled(-1.0));
    eq.add_assign(&q.scaled(-1.0));
    eq.add_assign(&p.mul(q).scaled(2.0));
    eq
}

/// Builds the Hamiltonian for a sequence.
///
/// # Errors
/// Rejects N < 4 (no free variables).
pub fn build_hamiltonian(
    seq: &ProteinSequence,
    table: &ContactEnergyTable,
    params: HamiltonianParams,
) -> Result<Hamiltonian> {
    let n = seq.len();
    let layout = VariableLayout::for_sequence_length(n)?;
    let mut h = BitPolynomial::zero();

    // Back-turn penalty: two-bit equality of every consecutive turn pair.
    // Pairs among the fixed turns contribute constants (zero) and vanish.
    for k in 1..=n - 2 {
        let (a_k, b_k) = turn_bit_polys(k);
        let (a_n, b_n) = turn_bit_polys(k + 1);
        let eq = bit_equality(&a_k, &a_n).mul(&bit_equality(&b_k, &b_n));
        h.add_assign(&eq.scaled(params.backturn));
    }

    // Interaction terms: q_ij · [e_ij + λ₁·(D²_ij − 3)].
    for (pair_idx, (i, j)) in candidate_pairs(n).into_iter().enumerate() {
        let mut d_sq = BitPolynomial::constant(-3.0);
        for coord in 0..3 {
            let mut disp = BitPolynomial::zero();
            for k in i..j {
                disp.add_assign(&bond_polys(k)[coord]);
            }
            d_sq.add_assign(&disp.mul(&disp));
        }
        let e_ij = table.energy(seq.residue(i - 1), seq.residue(j - 1));
        let mut gate = d_sq.scaled(params.distance);
        gate.add_assign(&BitPolynomial::constant(e_ij));
        let q = BitPolynomial::variable((layout.config_bits() + pair_idx) as u32);
        h.add_assign(&q.mul(&gate));
    }

    debug_assert!(h.degree() <= 5, "monomial degree exceeds 5");
    Ok(Hamiltonian {
        poly: h,
        layout,
        params,
        sequence: seq.clone(),
    })
}

/// Convenience: labels of the configuration bits, re-exported for reports.
pub fn config_bit_labels(n: usize) -> Result<Vec<String>> {
    bit_labels(n)
}
