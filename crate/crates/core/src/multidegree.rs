//! Paired exponent vectors (μ, ν) for monomials z^μ z̄^ν (equivalently z^μ w^ν
//! on the complexification), with the fixed term order used everywhere in the
//! crate.
//!
//! The order is graded lexicographic: multidegrees are compared first by total
//! degree |μ|+|ν|, ties broken lexicographically on the concatenation (μ, ν)
//! with the z-block before the w/z̄-block and earlier variables more
//! significant. `Ord::cmp` returns `Greater` for the grlex-larger multidegree,
//! so the leading term of a polynomial is its maximal key.

use std::cmp::Ordering;
use std::ops::Add;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multidegree {
    /// z-exponents.
    pub mu: Vec<u32>,
    /// z̄-exponents (w-exponents on the complexification).
    pub nu: Vec<u32>,
}

impl Multidegree {
    pub fn new(mu: Vec<u32>, nu: Vec<u32>) -> Self {
        assert_eq!(mu.len(), nu.len(), "mu/nu length mismatch");
        Multidegree { mu, nu }
    }

    /// The constant monomial in `n` variables.
    pub fn constant(n: usize) -> Self {
        Multidegree { mu: vec![0; n], nu: vec![0; n] }
    }

    /// z_j (0-based index).
    pub fn z(n: usize, j: usize) -> Self {
        let mut md = Self::constant(n);
        md.mu[j] = 1;
        md
    }

    /// z̄_j / w_j (0-based index).
    pub fn w(n: usize, j: usize) -> Self {
        let mut md = Self::constant(n);
        md.nu[j] = 1;
        md
    }

    pub fn num_vars(&self) -> usize {
        self.mu.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.mu.iter().sum::<u32>() + self.nu.iter().sum::<u32>()
    }

    pub fn is_constant(&self) -> bool {
        self.mu.iter().all(|&e| e == 0) && self.nu.iter().all(|&e| e == 0)
    }

    /// True when the z̄/w-part is identically zero (a holomorphic monomial).
    pub fn is_pure_z(&self) -> bool {
        self.nu.iter().all(|&e| e == 0)
    }

    /// True when the z-part is identically zero.
    pub fn is_pure_w(&self) -> bool {
        self.mu.iter().all(|&e| e == 0)
    }

    /// Swaps μ and ν; the exponent part of coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        Multidegree { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    /// Componentwise difference, or `None` when `self` is not divisible by
    /// `other`.
    pub fn try_sub(&self, other: &Self) -> Option<Self> {
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        let nu = self
            .nu
            .iter()
            .zip(&other.nu)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Multidegree { mu, nu })
    }
}

impl Add<&Multidegree> for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        Multidegree {
            mu: self.mu.iter().zip(&rhs.mu).map(|(a, b)| a + b).collect(),
            nu: self.nu.iter().zip(&rhs.nu).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                // Lexicographic on (mu, nu): an earlier variable with a larger
                // exponent wins, so compare entry by entry.
                for (a, b) in self.mu.iter().zip(&other.mu) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                for (a, b) in self.nu.iter().zip(&other.nu) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
