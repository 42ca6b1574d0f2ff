//! Exterior algebra of differential forms with polynomial coefficients.
//!
//! Covectors are indexed over both blocks of the variable space: index
//! v < n means dz_{v+1}, index v ≥ n means dw_{v−n+1} (equivalently dz̄ on
//! the real slice). A basis k-covector is a sorted index set, stored as a
//! bitmask; sign normalization happens when forms are built, so structural
//! equality is usable as a test predicate. Coefficient arithmetic inside this
//! module is loss-free (`mul_exact` / `add_exact`): forms are used for exact
//! polynomial geometry, not truncated series.

use crate::error::{Error, Result};
use crate::poly::{ConjPolynomial, PolynomialRecord, VarNames};
use crate::rational::GaussianRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

/// A homogeneous exterior form of degree `degree` with `ConjPolynomial`
/// coefficients on the 2n basis covectors.
#[derive(Clone, Debug)]
pub struct PolyForm {
    num_vars: usize,
    degree: usize,
    terms: BTreeMap<u64, ConjPolynomial>,
}

impl PartialEq for PolyForm {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.degree == other.degree && self.terms == other.terms
    }
}
impl Eq for PolyForm {}

/// Parity sign of merging two sorted covector index sets: one inversion per
/// pair (i ∈ a, j ∈ b) with i > j.
fn wedge_sign(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    inversions % 2 == 1
}

impl PolyForm {
    /// The zero form of the given degree. Degrees above 2n are legal and
    /// always identically zero (products of too many 1-forms).
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        assert!(num_vars <= 32, "at most 32 variables supported");
        PolyForm { num_vars, degree, terms: BTreeMap::new() }
    }

    /// A 0-form from a polynomial.
    pub fn from_poly(p: ConjPolynomial) -> Self {
        let mut f = Self::zero(p.num_vars(), 0);
        f.add_term(0, p);
        f
    }

    /// The constant basis covector dz_{v+1} (v < n) or dw_{v−n+1} (v ≥ n).
    pub fn basis_covector(num_vars: usize, v: usize, cap: u32) -> Self {
        assert!(v < 2 * num_vars);
        let mut f = Self::zero(num_vars, 1);
        f.add_term(1u64 << v, ConjPolynomial::one(num_vars, cap));
        f
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending index-set order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &ConjPolynomial)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, mask: u64) -> ConjPolynomial {
        self.terms.get(&mask).cloned().unwrap_or_else(|| ConjPolynomial::zero(self.num_vars, 0))
    }

    /// Adds `coeff` on the covector set `mask`, maintaining canonical form.
    pub fn add_term(&mut self, mask: u64, coeff: ConjPolynomial) {
        assert_eq!(mask.count_ones() as usize, self.degree, "covector set size != form degree");
        assert_eq!(coeff.num_vars(), self.num_vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            None => {
                self.terms.insert(mask, coeff);
            }
            Some(old) => {
                let sum = old.add_exact(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(mask, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable-space mismatch");
        assert_eq!(self.degree, other.degree, "cannot add forms of different degree");
        let mut out = self.clone();
        for (mask, c) in &other.terms {
            out.add_term(*mask, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.num_vars, self.degree);
        for (mask, coeff) in &self.terms {
            out.add_term(*mask, coeff.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Graded-anticommutative exact product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable-space mismatch");
        let mut out = Self::zero(self.num_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut c = ca.mul_exact(cb);
                if wedge_sign(*ma, *mb) {
                    c = c.neg();
                }
                out.add_term(ma | mb, c);
            }
        }
        out
    }

    /// Exterior derivative restricted to the z-block (the ∂ operator).
    pub fn exterior_d_z(&self) -> Self {
        self.exterior_d_block(false)
    }

    /// Exterior derivative restricted to the w/z̄-block (the ∂̄ operator).
    pub fn exterior_d_w(&self) -> Self {
        self.exterior_d_block(true)
    }

    fn exterior_d_block(&self, w_block: bool) -> Self {
        let n = self.num_vars;
        let mut out = Self::zero(n, self.degree + 1);
        for (mask, coeff) in &self.terms {
            for j in 0..n {
                let v = if w_block { n + j } else { j };
                if mask & (1u64 << v) != 0 {
                    continue;
                }
                let dc = if w_block { coeff.derivative_w(j) } else { coeff.derivative_z(j) };
                if dc.is_zero() {
                    continue;
                }
                // dv ∧ e_S: one transposition per element of S below v.
                let below = (mask & ((1u64 << v) - 1)).count_ones();
                let signed = if below % 2 == 1 { dc.neg() } else { dc };
                out.add_term(mask | (1u64 << v), signed);
            }
        }
        out
    }

    /// Full exterior derivative d = ∂ + ∂̄.
    pub fn exterior_d(&self) -> Self {
        self.exterior_d_z().add(&self.exterior_d_w())
    }

    /// Pulls the form back along a substitution: polynomial coefficients are
    /// mapped through `coeff_map` and each basis covector v through
    /// `covector_images[v]` (a 1-form on the target space).
    pub fn pullback<F>(&self, coeff_map: F, covector_images: &[PolyForm]) -> Result<PolyForm>
    where
        F: Fn(&ConjPolynomial) -> Result<ConjPolynomial>,
    {
        assert_eq!(covector_images.len(), 2 * self.num_vars);
        let target_vars = covector_images
            .first()
            .map(|f| f.num_vars)
            .unwrap_or(self.num_vars);
        let mut out = Self::zero(target_vars, self.degree);
        for (mask, coeff) in &self.terms {
            let mut acc = PolyForm::from_poly(coeff_map(coeff)?);
            for v in 0..2 * self.num_vars {
                if mask & (1u64 << v) != 0 {
                    acc = acc.wedge(&covector_images[v]);
                }
            }
            if acc.degree != self.degree {
                return Err(Error::DimensionMismatch { expected: self.degree, got: acc.degree });
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    pub fn to_record(&self) -> FormRecord {
        FormRecord {
            vars: self.num_vars,
            form_degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(mask, coeff)| FormTermRecord {
                    covectors: covector_names(*mask, self.num_vars),
                    coeff: coeff.to_record(),
                })
                .collect(),
        }
    }

    pub fn display(&self, names: VarNames) -> FormDisplay<'_> {
        FormDisplay { form: self, names }
    }
}

/// α = Σ_j (∂F/∂z_j) dz_j and β = Σ_j (∂F/∂w_j) dw_j, so that dF = α + β.
pub fn partial_split(f: &ConjPolynomial) -> (PolyForm, PolyForm) {
    let n = f.num_vars();
    let mut alpha = PolyForm::zero(n, 1);
    let mut beta = PolyForm::zero(n, 1);
    for j in 0..n {
        alpha.add_term(1u64 << j, f.derivative_z(j));
        beta.add_term(1u64 << (n + j), f.derivative_w(j));
    }
    (alpha, beta)
}

/// Σ_{i,j} (∂²F/∂z_i∂w_j) dz_i ∧ dw_j, the ∂∂̄F factor of the integrability
/// condition.
pub fn mixed_hessian_form(f: &ConjPolynomial) -> PolyForm {
    let n = f.num_vars();
    let mut out = PolyForm::zero(n, 2);
    for i in 0..n {
        let di = f.derivative_z(i);
        for j in 0..n {
            // dz_i < dw_j in the covector order, so the pair is already sorted.
            out.add_term((1u64 << i) | (1u64 << (n + j)), di.derivative_w(j));
        }
    }
    out
}

/// Names of the covectors in a sorted index set.
pub fn covector_names(mask: u64, num_vars: usize) -> Vec<String> {
    (0..2 * num_vars)
        .filter(|v| mask & (1u64 << v) != 0)
        .map(|v| covector_name(v, num_vars, VarNames::Complexified))
        .collect()
}

pub fn covector_name(v: usize, num_vars: usize, names: VarNames) -> String {
    if v < num_vars {
        match names {
            VarNames::Chart => {
                if v == 0 {
                    "du".to_string()
                } else {
                    format!("dt{}", v + 1)
                }
            }
            _ => format!("dz{}", v + 1),
        }
    } else {
        match names {
            VarNames::Chart => format!("ds{}", v - num_vars + 1),
            _ => format!("dw{}", v - num_vars + 1),
        }
    }
}

/// Serialization record for forms: the polynomial record extended with a
/// covector index list per term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormRecord {
    pub vars: usize,
    pub form_degree: usize,
    pub terms: Vec<FormTermRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormTermRecord {
    pub covectors: Vec<String>,
    pub coeff: PolynomialRecord,
}

pub struct FormDisplay<'a> {
    form: &'a PolyForm,
    names: VarNames,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, coeff) in &self.form.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let names: Vec<String> = (0..2 * self.form.num_vars)
                .filter(|v| mask & (1u64 << v) != 0)
                .map(|v| covector_name(v, self.form.num_vars, self.names))
                .collect();
            let coeff_str = coeff.display(self.names).to_string();
            if names.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if coeff_str == "1" {
                write!(f, "{}", names.join("^"))?;
            } else {
                write!(f, "({}) {}", coeff_str, names.join("^"))?;
            }
        }
        Ok(())
    }
}
