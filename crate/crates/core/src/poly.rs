//! Sparse truncated polynomials Σ F_{μν} z^μ z̄^ν in the fixed multidegree
//! order, with exact Gaussian-rational coefficients.
//!
//! A `ConjPolynomial` carries a truncation degree N: every stored term has
//! total degree ≤ N and the `+`, `-`, `*` operators use truncated-series
//! semantics (the result is capped at the minimum of the operand caps, which
//! is exact below the cut). Geometry code that needs loss-free polynomial
//! arithmetic uses [`ConjPolynomial::mul_exact`] / [`ConjPolynomial::add_exact`],
//! which raise the cap so that nothing is ever dropped.
//!
//! The same data serves two interpretations: (z, z̄) for real-analytic germs
//! and (z, w) on the complexification; ν indexes z̄ in the first reading and w
//! in the second.

use crate::error::{Error, Result};
use crate::multidegree::Multidegree;
use crate::rational::{rational_from_str, rational_to_string, GaussianRational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct ConjPolynomial {
    num_vars: usize,
    truncation_degree: u32,
    terms: BTreeMap<Multidegree, GaussianRational>,
}

/// Structural equality: same variable count and identical term maps. The
/// truncation degree is bookkeeping, not part of the value.
impl PartialEq for ConjPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms == other.terms
    }
}
impl Eq for ConjPolynomial {}

impl ConjPolynomial {
    pub fn zero(num_vars: usize, truncation_degree: u32) -> Self {
        ConjPolynomial { num_vars, truncation_degree, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, truncation_degree: u32, c: GaussianRational) -> Self {
        let mut p = Self::zero(num_vars, truncation_degree);
        p.insert_term(Multidegree::constant(num_vars), c);
        p
    }

    pub fn one(num_vars: usize, truncation_degree: u32) -> Self {
        Self::constant(num_vars, truncation_degree, GaussianRational::one())
    }

    pub fn monomial(
        num_vars: usize,
        truncation_degree: u32,
        md: Multidegree,
        c: GaussianRational,
    ) -> Self {
        assert_eq!(md.num_vars(), num_vars);
        let mut p = Self::zero(num_vars, truncation_degree);
        p.insert_term(md, c);
        p
    }

    /// The variable z_{j+1} (0-based `j`).
    pub fn var_z(num_vars: usize, truncation_degree: u32, j: usize) -> Self {
        Self::monomial(num_vars, truncation_degree, Multidegree::z(num_vars, j), GaussianRational::one())
    }

    /// The variable z̄_{j+1} / w_{j+1} (0-based `j`).
    pub fn var_w(num_vars: usize, truncation_degree: u32, j: usize) -> Self {
        Self::monomial(num_vars, truncation_degree, Multidegree::w(num_vars, j), GaussianRational::one())
    }

    pub fn from_terms<I>(num_vars: usize, truncation_degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Multidegree, GaussianRational)>,
    {
        let mut p = Self::zero(num_vars, truncation_degree);
        for (md, c) in terms {
            p.add_term(&md, &c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending multidegree order.
    pub fn terms(&self) -> impl Iterator<Item = (&Multidegree, &GaussianRational)> {
        self.terms.iter()
    }

    /// The grlex-maximal term, if any.
    pub fn leading_term(&self) -> Option<(&Multidegree, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, md: &Multidegree) -> GaussianRational {
        self.terms.get(md).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Multidegree::constant(self.num_vars))
    }

    /// Largest total degree among stored terms (0 for the zero polynomial).
    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |md| md.total_degree())
    }

    /// Smallest total degree among stored terms, `None` for zero.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|md| md.total_degree())
    }

    fn insert_term(&mut self, md: Multidegree, c: GaussianRational) {
        if c.is_zero() || md.total_degree() > self.truncation_degree {
            return;
        }
        self.terms.insert(md, c);
    }

    /// Adds `c` to the coefficient at `md`, keeping the canonical form.
    pub fn add_term(&mut self, md: &Multidegree, c: &GaussianRational) {
        if c.is_zero() || md.total_degree() > self.truncation_degree {
            return;
        }
        let entry = self.terms.entry(md.clone()).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(md);
        }
    }

    /// Re-caps the polynomial, dropping terms above the new cap.
    pub fn truncated(&self, truncation_degree: u32) -> Self {
        let mut p = Self::zero(self.num_vars, truncation_degree);
        for (md, c) in &self.terms {
            p.insert_term(md.clone(), c.clone());
        }
        p
    }

    /// The homogeneous part of total degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let mut p = Self::zero(self.num_vars, self.truncation_degree);
        for (md, c) in self.terms.range(..).filter(|(md, _)| md.total_degree() == d) {
            p.insert_term(md.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.truncation_degree);
        }
        let mut p = Self::zero(self.num_vars, self.truncation_degree);
        for (md, coeff) in &self.terms {
            p.insert_term(md.clone(), coeff * c);
        }
        p
    }

    /// Coefficient-wise conjugation combined with the μ↔ν swap; this is the
    /// conjugation of the underlying real-analytic function.
    pub fn conj(&self) -> Self {
        let mut p = Self::zero(self.num_vars, self.truncation_degree);
        for (md, c) in &self.terms {
            p.insert_term(md.conj(), c.conj());
        }
        p
    }

    /// True when the conjugation involution fixes the polynomial, i.e. the
    /// coefficients satisfy conj(F_{μν}) = F_{νμ}.
    pub fn is_conj_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(md, c)| self.coefficient(&md.conj()) == c.conj())
    }

    /// ∂/∂z_{j+1}.
    pub fn derivative_z(&self, j: usize) -> Self {
        assert!(j < self.num_vars);
        let mut p = Self::zero(self.num_vars, self.truncation_degree);
        for (md, c) in &self.terms {
            if md.mu[j] == 0 {
                continue;
            }
            let mut dm = md.clone();
            dm.mu[j] -= 1;
            p.add_term(&dm, &(c * &GaussianRational::from_int(md.mu[j] as i64)));
        }
        p
    }

    /// ∂/∂z̄_{j+1} (∂/∂w_{j+1} on the complexification).
    pub fn derivative_w(&self, j: usize) -> Self {
        assert!(j < self.num_vars);
        let mut p = Self::zero(self.num_vars, self.truncation_degree);
        for (md, c) in &self.terms {
            if md.nu[j] == 0 {
                continue;
            }
            let mut dm = md.clone();
            dm.nu[j] -= 1;
            p.add_term(&dm, &(c * &GaussianRational::from_int(md.nu[j] as i64)));
        }
        p
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable-space mismatch");
        let cap = self.truncation_degree.min(other.truncation_degree);
        let mut p = self.truncated(cap);
        for (md, c) in &other.terms {
            let c = if negate { c.clone().neg() } else { c.clone() };
            p.add_term(md, &c);
        }
        p
    }

    /// Addition with no truncation loss: the result cap is the max of the
    /// operand caps.
    pub fn add_exact(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable-space mismatch");
        let cap = self.truncation_degree.max(other.truncation_degree);
        let mut p = self.truncated(cap);
        for (md, c) in &other.terms {
            p.add_term(md, c);
        }
        p
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.clone().neg())
    }

    fn mul_capped(&self, other: &Self, cap: u32) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable-space mismatch");
        let mut p = Self::zero(self.num_vars, cap);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > cap {
                    continue;
                }
                p.add_term(&(ma + mb), &(ca * cb));
            }
        }
        p
    }

    /// Full product with no truncation loss; the result cap is the sum of the
    /// operands' actual degrees.
    pub fn mul_exact(&self, other: &Self) -> Self {
        let cap = self.max_total_degree() + other.max_total_degree();
        self.mul_capped(other, cap)
    }

    /// Product truncated at an explicit cap.
    pub fn mul_truncated(&self, other: &Self, cap: u32) -> Self {
        self.mul_capped(other, cap)
    }

    /// Exact evaluation at a point, substituting z̄ := conj(z).
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let conjugated: Vec<GaussianRational> = point.iter().map(|z| z.conj()).collect();
        self.evaluate_zw(point, &conjugated)
    }

    /// Exact evaluation on the complexification at independent (z, w).
    pub fn evaluate_zw(
        &self,
        z: &[GaussianRational],
        w: &[GaussianRational],
    ) -> Result<GaussianRational> {
        if z.len() != self.num_vars || w.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: if z.len() != self.num_vars { z.len() } else { w.len() },
            });
        }
        let mut acc = GaussianRational::zero();
        for (md, c) in &self.terms {
            let mut v = c.clone();
            for (j, &e) in md.mu.iter().enumerate() {
                for _ in 0..e {
                    v *= &z[j];
                }
            }
            for (j, &e) in md.nu.iter().enumerate() {
                for _ in 0..e {
                    v *= &w[j];
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Exact quotient `Q` with `self = Q·divisor`, or `None` when `self` is
    /// not in the principal ideal generated by `divisor`. A single divisor is
    /// a Gröbner basis of its own ideal, so one division pass decides
    /// membership: as soon as a leading term is not divisible, no quotient
    /// exists. Panics on a zero divisor.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert_eq!(self.num_vars, divisor.num_vars, "variable-space mismatch");
        let cap = self.truncation_degree.max(self.max_total_degree());
        let (dlead, dcoeff) = divisor.leading_term().expect("nonzero divisor");
        let dlead = dlead.clone();
        let dinv = dcoeff.inv().expect("nonzero leading coefficient");
        let mut remainder = self.truncated(cap);
        let mut quotient = Self::zero(self.num_vars, cap);
        while let Some((rlead, rcoeff)) = remainder.leading_term() {
            let t_md = rlead.try_sub(&dlead)?;
            let t_c = rcoeff * &dinv;
            quotient.insert_term(t_md.clone(), t_c.clone());
            // remainder -= t * divisor; in a graded order the degree never
            // grows past the current leading degree, so nothing is truncated.
            let t = Self::monomial(self.num_vars, cap, t_md, t_c);
            remainder = remainder.add_signed(&t.mul_capped(divisor, cap), true);
        }
        Some(quotient)
    }

    /// Upper bound for the total degree of [`ConjPolynomial::substitute`]
    /// output, from the actual degrees of the images.
    pub fn substituted_degree_bound(
        &self,
        z_images: &[ConjPolynomial],
        w_images: &[ConjPolynomial],
    ) -> u32 {
        let mut bound = 0u32;
        for (md, _) in &self.terms {
            let mut d = 0u32;
            for (j, &e) in md.mu.iter().enumerate() {
                d += e * z_images[j].max_total_degree();
            }
            for (j, &e) in md.nu.iter().enumerate() {
                d += e * w_images[j].max_total_degree();
            }
            bound = bound.max(d);
        }
        bound
    }

    /// General exact substitution z_j ← z_images[j], z̄_j/w_j ← w_images[j],
    /// truncated at `cap`. All images must live in one common target space.
    pub fn substitute(
        &self,
        z_images: &[ConjPolynomial],
        w_images: &[ConjPolynomial],
        cap: u32,
    ) -> Result<ConjPolynomial> {
        if z_images.len() != self.num_vars || w_images.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: z_images.len().max(w_images.len()),
            });
        }
        let target_vars = z_images
            .iter()
            .chain(w_images.iter())
            .map(|p| p.num_vars())
            .next()
            .unwrap_or(self.num_vars);
        for img in z_images.iter().chain(w_images.iter()) {
            if img.num_vars() != target_vars {
                return Err(Error::DimensionMismatch { expected: target_vars, got: img.num_vars() });
            }
        }
        // image order: degree of the lowest term, used to skip terms whose
        // image cannot reach below the cap. u32::MAX encodes a zero image.
        let order = |p: &ConjPolynomial| p.min_total_degree().unwrap_or(u32::MAX);
        let z_ord: Vec<u32> = z_images.iter().map(order).collect();
        let w_ord: Vec<u32> = w_images.iter().map(order).collect();

        let mut z_pows: Vec<Vec<ConjPolynomial>> =
            z_images.iter().map(|p| vec![ConjPolynomial::one(target_vars, cap), p.truncated(cap)]).collect();
        let mut w_pows: Vec<Vec<ConjPolynomial>> =
            w_images.iter().map(|p| vec![ConjPolynomial::one(target_vars, cap), p.truncated(cap)]).collect();
        let power = |pows: &mut Vec<Vec<ConjPolynomial>>, j: usize, e: usize| -> ConjPolynomial {
            while pows[j].len() <= e {
                let last = pows[j].last().unwrap().clone();
                let next = last.mul_capped(&pows[j][1], cap);
                pows[j].push(next);
            }
            pows[j][e].clone()
        };

        let mut out = ConjPolynomial::zero(target_vars, cap);
        for (md, c) in &self.terms {
            let mut min_deg = 0u64;
            for (j, &e) in md.mu.iter().enumerate() {
                if e > 0 {
                    min_deg += e as u64 * z_ord[j].min(cap + 1) as u64;
                }
            }
            for (j, &e) in md.nu.iter().enumerate() {
                if e > 0 {
                    min_deg += e as u64 * w_ord[j].min(cap + 1) as u64;
                }
            }
            if min_deg > cap as u64 {
                continue;
            }
            let mut acc = ConjPolynomial::constant(target_vars, cap, c.clone());
            for (j, &e) in md.mu.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul_capped(&power(&mut z_pows, j, e as usize), cap);
                }
            }
            for (j, &e) in md.nu.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul_capped(&power(&mut w_pows, j, e as usize), cap);
                }
            }
            out = out.add_signed(&acc, false);
        }
        Ok(out)
    }

    /// Drops the trailing variable slots; every term must avoid them. Panics
    /// otherwise (callers gate on a shape check).
    pub fn restrict_vars(&self, k: usize) -> ConjPolynomial {
        assert!(k <= self.num_vars);
        let mut p = ConjPolynomial::zero(k, self.truncation_degree);
        for (md, c) in &self.terms {
            assert!(
                md.mu[k..].iter().all(|&e| e == 0) && md.nu[k..].iter().all(|&e| e == 0),
                "term involves a dropped variable"
            );
            p.insert_term(
                Multidegree::new(md.mu[..k].to_vec(), md.nu[..k].to_vec()),
                c.clone(),
            );
        }
        p
    }

    /// Pads the variable space with trailing zero exponents.
    pub fn extend_vars(&self, n: usize) -> ConjPolynomial {
        assert!(n >= self.num_vars);
        let mut p = ConjPolynomial::zero(n, self.truncation_degree);
        for (md, c) in &self.terms {
            let mut mu = md.mu.clone();
            let mut nu = md.nu.clone();
            mu.resize(n, 0);
            nu.resize(n, 0);
            p.insert_term(Multidegree::new(mu, nu), c.clone());
        }
        p
    }

    /// Multiplicative inverse modulo the truncation degree, for units
    /// (nonzero constant term): 1/U = U(0)⁻¹·Σ (1 − U/U(0))^k.
    pub fn reciprocal(&self, cap: u32) -> Option<ConjPolynomial> {
        let c0 = self.constant_term();
        let c0_inv = c0.inv()?;
        let v = &ConjPolynomial::one(self.num_vars, cap) - &self.truncated(cap).scale(&c0_inv);
        let mut acc = ConjPolynomial::one(self.num_vars, cap);
        let mut power = ConjPolynomial::one(self.num_vars, cap);
        for _ in 0..cap {
            power = &power * &v;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Some(acc.scale(&c0_inv))
    }

    /// Partial evaluation: assigns constants to the listed slots and keeps the
    /// remaining variables. Slot indices 0..n-1 address z-variables and
    /// n..2n-1 address z̄/w-variables.
    pub fn substitute_values(&self, assignments: &[(usize, GaussianRational)]) -> ConjPolynomial {
        let n = self.num_vars;
        let cap = self.truncation_degree;
        let mut z_images: Vec<ConjPolynomial> =
            (0..n).map(|j| ConjPolynomial::var_z(n, cap, j)).collect();
        let mut w_images: Vec<ConjPolynomial> =
            (0..n).map(|j| ConjPolynomial::var_w(n, cap, j)).collect();
        for (slot, value) in assignments {
            assert!(*slot < 2 * n, "slot out of range");
            let p = ConjPolynomial::constant(n, cap, value.clone());
            if *slot < n {
                z_images[*slot] = p;
            } else {
                w_images[*slot - n] = p;
            }
        }
        self.substitute(&z_images, &w_images, cap).expect("matching dimensions")
    }

    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            vars: self.num_vars,
            degree: self.truncation_degree,
            terms: self
                .terms
                .iter()
                .map(|(md, c)| TermRecord {
                    mu: md.mu.clone(),
                    nu: md.nu.clone(),
                    re: rational_to_string(&c.re),
                    im: rational_to_string(&c.im),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &PolynomialRecord) -> std::result::Result<Self, String> {
        let mut p = ConjPolynomial::zero(record.vars, record.degree);
        for t in &record.terms {
            if t.mu.len() != record.vars || t.nu.len() != record.vars {
                return Err(format!(
                    "term exponent length {}/{} does not match vars {}",
                    t.mu.len(),
                    t.nu.len(),
                    record.vars
                ));
            }
            let re = rational_from_str(&t.re).ok_or_else(|| format!("bad rational: {}", t.re))?;
            let im = rational_from_str(&t.im).ok_or_else(|| format!("bad rational: {}", t.im))?;
            let md = Multidegree::new(t.mu.clone(), t.nu.clone());
            if md.total_degree() > record.degree {
                return Err(format!("term degree {} exceeds cap {}", md.total_degree(), record.degree));
            }
            p.add_term(&md, &GaussianRational::new(re, im));
        }
        Ok(p)
    }

    pub fn display<'a>(&'a self, names: VarNames) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, names }
    }
}

impl Neg for ConjPolynomial {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = c.clone().neg();
        }
        self
    }
}

impl Add for &ConjPolynomial {
    type Output = ConjPolynomial;
    fn add(self, rhs: Self) -> ConjPolynomial {
        self.add_signed(rhs, false)
    }
}

impl Sub for &ConjPolynomial {
    type Output = ConjPolynomial;
    fn sub(self, rhs: Self) -> ConjPolynomial {
        self.add_signed(rhs, true)
    }
}

impl Mul for &ConjPolynomial {
    type Output = ConjPolynomial;
    /// Truncated-series product: capped at the minimum operand cap.
    fn mul(self, rhs: Self) -> ConjPolynomial {
        self.mul_capped(rhs, self.truncation_degree.min(rhs.truncation_degree))
    }
}

/// Bit-exact serialization record: rationals as reduced fraction strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialRecord {
    pub vars: usize,
    pub degree: u32,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRecord {
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub re: String,
    pub im: String,
}

/// Variable naming scheme for human-readable output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// z_k and conj(z_k); the (z, z̄) reading.
    RealPairs,
    /// z_k and w_k; the complexified reading.
    Complexified,
    /// Blow-up chart coordinates: z-slots read u, t2, …, tn and w-slots read
    /// s1, …, sn.
    Chart,
}

impl VarNames {
    fn z_name(&self, j: usize) -> String {
        match self {
            VarNames::Chart => {
                if j == 0 {
                    "u".to_string()
                } else {
                    format!("t{}", j + 1)
                }
            }
            _ => format!("z{}", j + 1),
        }
    }

    fn w_name(&self, j: usize) -> String {
        match self {
            VarNames::RealPairs => format!("conj(z{})", j + 1),
            VarNames::Complexified => format!("w{}", j + 1),
            VarNames::Chart => format!("s{}", j + 1),
        }
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a ConjPolynomial,
    names: VarNames,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{Signed, Zero};
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (md, c) in self.poly.terms() {
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in md.mu.iter().enumerate() {
                if e == 1 {
                    factors.push(self.names.z_name(j));
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.names.z_name(j), e));
                }
            }
            for (j, &e) in md.nu.iter().enumerate() {
                if e == 1 {
                    factors.push(self.names.w_name(j));
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.names.w_name(j), e));
                }
            }
            // Pick a sign to print, then the coefficient magnitude.
            let (sign_neg, c_abs) = if c.im.is_zero() && c.re.is_negative() {
                (true, c.clone().neg())
            } else if c.re.is_zero() && c.im.is_negative() {
                (true, c.clone().neg())
            } else {
                (false, c.clone())
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = if c_abs.is_one() && !factors.is_empty() {
                None
            } else if !c_abs.re.is_zero() && !c_abs.im.is_zero() {
                Some(format!("({c_abs})"))
            } else {
                Some(c_abs.to_string())
            };
            match (coeff_str, factors.is_empty()) {
                (Some(cs), true) => write!(f, "{cs}")?,
                (Some(cs), false) => write!(f, "{}*{}", cs, factors.join("*"))?,
                (None, _) => write!(f, "{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}
