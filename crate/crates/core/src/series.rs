//! Truncated holomorphic series and jet-level coordinate changes.
//!
//! A [`HoloSeries`] is a `ConjPolynomial` whose ν-part vanishes identically; a
//! [`JetMap`] is an n-tuple of holomorphic series vanishing at 0 with an
//! exactly invertible linear part, i.e. an element of Diff(Cⁿ, 0) at jet
//! level. Composition is exact substitution truncated at the working degree.

use crate::error::{Error, Result};
use crate::linalg;
use crate::multidegree::Multidegree;
use crate::poly::ConjPolynomial;
use crate::rational::GaussianRational;
use std::ops::{Add, Mul, Neg, Sub};

/// A truncated holomorphic series: every stored multidegree has ν = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloSeries(ConjPolynomial);

impl HoloSeries {
    pub fn from_poly(p: ConjPolynomial) -> Result<Self> {
        if let Some((md, _)) = p.terms().find(|(md, _)| !md.is_pure_z()) {
            return Err(Error::NonRealInput {
                detail: format!("series has an antiholomorphic term with exponents {:?}", md.nu),
            });
        }
        Ok(HoloSeries(p))
    }

    pub fn zero(num_vars: usize, cap: u32) -> Self {
        HoloSeries(ConjPolynomial::zero(num_vars, cap))
    }

    pub fn constant(num_vars: usize, cap: u32, c: GaussianRational) -> Self {
        HoloSeries(ConjPolynomial::constant(num_vars, cap, c))
    }

    /// The coordinate function x_{j+1}.
    pub fn var(num_vars: usize, cap: u32, j: usize) -> Self {
        HoloSeries(ConjPolynomial::var_z(num_vars, cap, j))
    }

    /// x_1² + … + x_k², the Morse-Bott model with k squares.
    pub fn sum_of_squares(num_vars: usize, cap: u32, k: usize) -> Self {
        let mut p = ConjPolynomial::zero(num_vars, cap);
        for j in 0..k {
            let mut md = Multidegree::constant(num_vars);
            md.mu[j] = 2;
            p.add_term(&md, &GaussianRational::one());
        }
        HoloSeries(p)
    }

    pub fn as_poly(&self) -> &ConjPolynomial {
        &self.0
    }

    pub fn into_poly(self) -> ConjPolynomial {
        self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    pub fn truncation_degree(&self) -> u32 {
        self.0.truncation_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Coefficient of the monomial x^μ.
    pub fn coefficient(&self, mu: &[u32]) -> GaussianRational {
        self.0.coefficient(&Multidegree::new(mu.to_vec(), vec![0; self.num_vars()]))
    }

    pub fn add_monomial(&mut self, mu: Vec<u32>, c: &GaussianRational) {
        let n = self.num_vars();
        self.0.add_term(&Multidegree::new(mu, vec![0; n]), c);
    }

    pub fn degree_part(&self, d: u32) -> Self {
        HoloSeries(self.0.degree_part(d))
    }

    pub fn truncated(&self, cap: u32) -> Self {
        HoloSeries(self.0.truncated(cap))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        HoloSeries(self.0.scale(c))
    }

    pub fn max_total_degree(&self) -> u32 {
        self.0.max_total_degree()
    }

    /// Re(f) = (f + conj f)/2 as a polynomial in z, z̄.
    pub fn real_part(&self) -> ConjPolynomial {
        let half = GaussianRational::from_ratio(1, 2);
        (&self.0 + &self.0.conj()).scale(&half)
    }

    /// Exact substitution f(Φ(x)) truncated at the minimum working degree.
    pub fn compose(&self, map: &JetMap) -> Result<HoloSeries> {
        if map.num_vars() != self.num_vars() {
            return Err(Error::DimensionMismatch { expected: self.num_vars(), got: map.num_vars() });
        }
        let cap = self.truncation_degree().min(map.truncation_degree());
        let z_images: Vec<ConjPolynomial> =
            map.components().iter().map(|c| c.as_poly().clone()).collect();
        let w_images: Vec<ConjPolynomial> = z_images.iter().map(|p| p.conj()).collect();
        let p = self.0.substitute(&z_images, &w_images, cap)?;
        HoloSeries::from_poly(p)
    }
}

impl Add for &HoloSeries {
    type Output = HoloSeries;
    fn add(self, rhs: Self) -> HoloSeries {
        HoloSeries(&self.0 + &rhs.0)
    }
}

impl Sub for &HoloSeries {
    type Output = HoloSeries;
    fn sub(self, rhs: Self) -> HoloSeries {
        HoloSeries(&self.0 - &rhs.0)
    }
}

impl Mul for &HoloSeries {
    type Output = HoloSeries;
    fn mul(self, rhs: Self) -> HoloSeries {
        HoloSeries(&self.0 * &rhs.0)
    }
}

impl Neg for HoloSeries {
    type Output = HoloSeries;
    fn neg(self) -> HoloSeries {
        HoloSeries(self.0.neg())
    }
}

/// Exact substitution F(Φ(x), conj(Φ(x))) for a mixed polynomial F: the
/// z̄-slots receive the coefficient-conjugated components of Φ.
pub fn compose_mixed(f: &ConjPolynomial, map: &JetMap) -> Result<ConjPolynomial> {
    if map.num_vars() != f.num_vars() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), got: map.num_vars() });
    }
    let cap = f.truncation_degree().min(map.truncation_degree());
    let z_images: Vec<ConjPolynomial> =
        map.components().iter().map(|c| c.as_poly().clone()).collect();
    let w_images: Vec<ConjPolynomial> = z_images.iter().map(|p| p.conj()).collect();
    f.substitute(&z_images, &w_images, cap)
}

/// A jet-level biholomorphism germ: components vanish at 0 and the linear
/// part is exactly invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct JetMap {
    components: Vec<HoloSeries>,
    linear_part: Vec<Vec<GaussianRational>>,
    truncation: u32,
}

impl JetMap {
    pub fn new(components: Vec<HoloSeries>) -> Result<Self> {
        let n = components.len();
        let mut truncation = u32::MAX;
        for (i, c) in components.iter().enumerate() {
            if c.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, got: c.num_vars() });
            }
            if !c.as_poly().constant_term().is_zero() {
                return Err(Error::NonVanishingConstantTerm { index: i });
            }
            truncation = truncation.min(c.truncation_degree());
        }
        let mut linear_part = vec![vec![GaussianRational::zero(); n]; n];
        for (i, c) in components.iter().enumerate() {
            for (row, entry) in linear_part[i].iter_mut().enumerate().take(n) {
                let mut md = Multidegree::constant(n);
                md.mu[row] = 1;
                *entry = c.as_poly().coefficient(&md);
            }
        }
        if linalg::determinant(&linear_part).is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(JetMap { components, linear_part, truncation })
    }

    pub fn identity(num_vars: usize, cap: u32) -> Self {
        let components = (0..num_vars).map(|j| HoloSeries::var(num_vars, cap, j)).collect();
        Self::new(components).expect("identity is invertible")
    }

    pub fn num_vars(&self) -> usize {
        self.components.len()
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation
    }

    pub fn components(&self) -> &[HoloSeries] {
        &self.components
    }

    /// DΦ(0) as an exact matrix, row i = differential of component i.
    pub fn linear_part(&self) -> &[Vec<GaussianRational>] {
        &self.linear_part
    }

    pub fn is_identity_linear_part(&self) -> bool {
        let n = self.num_vars();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.linear_part[i][j].is_one()
                } else {
                    self.linear_part[i][j].is_zero()
                }
            })
        })
    }

    /// Checks the block shape (id_{k}  ⋆ / 0  id_{n−k}) where the first k
    /// coordinates carry the squares: identity diagonal blocks of sizes k and
    /// n−k, zero lower-left (n−k)×k block, arbitrary upper-right block.
    pub fn has_block_shape(&self, k: usize) -> bool {
        let n = self.num_vars();
        if k > n {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let e = &self.linear_part[i][j];
                let expected_identity = i == j;
                if i >= k && j < k {
                    if !e.is_zero() {
                        return false;
                    }
                } else if (i < k && j < k) || (i >= k && j >= k) {
                    if expected_identity && !e.is_one() {
                        return false;
                    }
                    if !expected_identity && !e.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Composition of maps: (self ∘ inner)(x) = self(inner(x)).
    pub fn compose(&self, inner: &JetMap) -> Result<JetMap> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        JetMap::new(components)
    }
}
