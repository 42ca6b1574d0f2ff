//! The geometric layer: reality checks, complexification, the Levi form,
//! integrability verdicts, singular loci and the X1/X2 decomposition of the
//! singular set of the complexified Levi form.
//!
//! Vanishing on the complexified hypersurface M_C is decided as divisibility
//! by F_C in the polynomial ring. This is always sufficient, and equivalent
//! to germ-level vanishing when F_C is reduced and irreducible; a lightweight
//! squarefree heuristic adds a warning when the criterion may be strictly
//! stronger.

use crate::error::{Error, Result};
use crate::forms::{covector_names, mixed_hessian_form, partial_split, PolyForm};
use crate::linalg;
use crate::multidegree::Multidegree;
use crate::poly::ConjPolynomial;
use crate::rational::GaussianRational;

/// A real-analytic hypersurface germ {F = 0} with a polynomial defining
/// function, validated on construction: F ≠ 0, F(0) = 0, F real-valued.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceGerm {
    defining: ConjPolynomial,
    truncation: u32,
}

impl HypersurfaceGerm {
    pub fn new(defining: ConjPolynomial, truncation: u32) -> Result<Self> {
        if defining.is_zero() {
            return Err(Error::ZeroDefiningPolynomial);
        }
        if !defining.constant_term().is_zero() {
            return Err(Error::NonVanishingAtOrigin);
        }
        if let Some((md, c)) = defining
            .terms()
            .find(|(md, c)| defining.coefficient(&md.conj()) != c.conj())
        {
            return Err(Error::NonRealInput {
                detail: format!(
                    "coefficient {} at z^{:?} conj(z)^{:?} breaks conj(F_mu_nu) = F_nu_mu",
                    c, md.mu, md.nu
                ),
            });
        }
        // Keep the defining polynomial loss-free even when its degree exceeds
        // the working truncation.
        let cap = truncation.max(defining.max_total_degree());
        Ok(HypersurfaceGerm { defining: defining.truncated(cap), truncation })
    }

    pub fn defining(&self) -> &ConjPolynomial {
        &self.defining
    }

    pub fn num_vars(&self) -> usize {
        self.defining.num_vars()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }
}

/// True iff the conjugation involution fixes P term by term.
pub fn check_reality(p: &ConjPolynomial) -> bool {
    p.is_conj_symmetric()
}

/// The complexification F_C(z, w) = Σ F_{μν} z^μ w^ν. The sparse (μ, ν)
/// representation is shared between the (z, z̄) and (z, w) readings, so this
/// is the identity on the data; it exists to mark the change of
/// interpretation at call sites.
pub fn complexify(f: &ConjPolynomial) -> ConjPolynomial {
    f.clone()
}

/// Sets w := z̄ again; inverse of [`complexify`] on the nose.
pub fn realize(fc: &ConjPolynomial) -> ConjPolynomial {
    fc.clone()
}

/// The Levi form η = i(∂F − ∂̄F) of a real-valued defining function.
pub fn levi_form(f: &ConjPolynomial) -> Result<PolyForm> {
    if !check_reality(f) {
        return Err(Error::NonRealInput { detail: "Levi form needs a real-valued F".into() });
    }
    Ok(levi_form_complexified(&complexify(f)))
}

/// η_C = i(∂_z F_C − ∂_w F_C) = i(α − β).
pub fn levi_form_complexified(fc: &ConjPolynomial) -> PolyForm {
    let (alpha, beta) = partial_split(fc);
    alpha.sub(&beta).scale(&GaussianRational::i())
}

/// The first non-divisible coefficient of the integrability form, reported
/// when a germ is not Levi-flat.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrabilityWitness {
    pub covector_mask: u64,
    pub covectors: Vec<String>,
    pub coefficient: ConjPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrabilityVerdict {
    pub flat: bool,
    pub witness: Option<IntegrabilityWitness>,
    /// Tag of the vanishing criterion in use.
    pub method: &'static str,
    pub warnings: Vec<String>,
}

pub const DIVISIBILITY_METHOD: &str = "divisibility-by-F_C";

/// Tests ∂F ∧ ∂̄F ∧ ∂∂̄F = 0 on M: forms W = α ∧ β ∧ ∂∂̄F_C on the
/// complexification and checks every coefficient for divisibility by F_C.
/// The verdict carries the first non-divisible coefficient as a witness.
pub fn integrability_test(m: &HypersurfaceGerm) -> Result<IntegrabilityVerdict> {
    let fc = complexify(m.defining());
    let (alpha, beta) = partial_split(&fc);
    let w = alpha.wedge(&beta).wedge(&mixed_hessian_form(&fc));
    let mut witness = None;
    for (mask, coeff) in w.terms() {
        if coeff.divide_exact(&fc).is_none() {
            witness = Some(IntegrabilityWitness {
                covector_mask: mask,
                covectors: covector_names(mask, fc.num_vars()),
                coefficient: coeff.clone(),
            });
            break;
        }
    }
    Ok(IntegrabilityVerdict {
        flat: witness.is_none(),
        witness,
        method: DIVISIBILITY_METHOD,
        warnings: squarefree_warnings(&fc),
    })
}

/// Divisibility of F_C by one of its own first derivatives signals a repeated
/// factor, where divisibility by F_C may be strictly stronger than vanishing
/// on M.
fn squarefree_warnings(fc: &ConjPolynomial) -> Vec<String> {
    let mut warnings = Vec::new();
    for j in 0..fc.num_vars() {
        for (d, name) in [(fc.derivative_z(j), "z"), (fc.derivative_w(j), "w")] {
            if !d.is_zero() && fc.divide_exact(&d).is_some() {
                warnings.push(format!(
                    "F_C is divisible by its d/d{}{} derivative; F_C may be non-reduced and \
                     the divisibility criterion stricter than vanishing on M",
                    name,
                    j + 1
                ));
            }
        }
    }
    warnings
}

/// Jacobian generators of Sing(M_C) plus the verdict on a candidate linear
/// subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocusData {
    /// F_C followed by its 2n first derivatives.
    pub generators: Vec<ConjPolynomial>,
    pub candidate_subspace: Vec<ConjPolynomial>,
    /// True when every generator vanishes identically on the candidate and
    /// the sample grid off the candidate is non-singular.
    pub matches: bool,
    /// Complex dimension of the candidate subspace, when one was supplied.
    pub dimension: Option<usize>,
    pub failure: Option<String>,
}

/// Computes the Jacobian system of Sing(M_C) = {F_C = dF_C = 0} and, when a
/// candidate linear subspace is supplied (as a list of linear equations in
/// z, w), verifies containment both ways: the generators vanish identically
/// on the candidate parametrization, and a deterministic sample grid off the
/// candidate contains no singular point.
pub fn singular_locus(
    fc: &ConjPolynomial,
    candidate: Option<&[ConjPolynomial]>,
) -> Result<SingularLocusData> {
    let n = fc.num_vars();
    let mut generators = vec![fc.clone()];
    for j in 0..n {
        generators.push(fc.derivative_z(j));
    }
    for j in 0..n {
        generators.push(fc.derivative_w(j));
    }

    let Some(candidate) = candidate else {
        return Ok(SingularLocusData {
            generators,
            candidate_subspace: Vec::new(),
            matches: false,
            dimension: None,
            failure: Some("no candidate subspace supplied".into()),
        });
    };

    // Candidate equations must be homogeneous linear forms.
    for eq in candidate {
        if eq.max_total_degree() > 1 || !eq.constant_term().is_zero() {
            return Err(Error::NotLinear { context: "singular-locus candidate".into() });
        }
        if eq.num_vars() != n {
            return Err(Error::DimensionMismatch { expected: n, got: eq.num_vars() });
        }
    }

    // Parametrize the solution subspace: kernel of the coefficient matrix
    // over the 2n coordinate slots.
    let rows: Vec<Vec<GaussianRational>> = candidate
        .iter()
        .map(|eq| {
            (0..2 * n)
                .map(|v| {
                    let md = if v < n { Multidegree::z(n, v) } else { Multidegree::w(n, v - n) };
                    eq.coefficient(&md)
                })
                .collect()
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..2 * n)
            .map(|v| {
                let mut e = vec![GaussianRational::zero(); 2 * n];
                e[v] = GaussianRational::one();
                e
            })
            .collect()
    } else {
        linalg::kernel_basis(&rows)
    };
    let dim = kernel.len();

    // (a) substitute the parametrization into every generator.
    let m = dim.max(1);
    let cap = fc.max_total_degree();
    let mut z_images = Vec::with_capacity(n);
    let mut w_images = Vec::with_capacity(n);
    for v in 0..2 * n {
        let mut img = ConjPolynomial::zero(m, cap);
        for (t, basis_vec) in kernel.iter().enumerate() {
            if !basis_vec[v].is_zero() {
                img = &img + &ConjPolynomial::var_z(m, cap, t).scale(&basis_vec[v]);
            }
        }
        if v < n {
            z_images.push(img);
        } else {
            w_images.push(img);
        }
    }
    let mut failure = None;
    for (idx, g) in generators.iter().enumerate() {
        let restricted = g.substitute(&z_images, &w_images, cap)?;
        if !restricted.is_zero() {
            failure = Some(format!("generator {idx} does not vanish on the candidate"));
            break;
        }
    }

    // (b) deterministic sample grid off the candidate: every sampled point
    // must be non-singular (F_C ≠ 0 or some derivative ≠ 0 there).
    if failure.is_none() {
        'grid: for point in sample_grid(2 * n) {
            let on_candidate = candidate.iter().all(|eq| {
                eq.evaluate_zw(&point[..n], &point[n..]).map(|v| v.is_zero()).unwrap_or(false)
            });
            if on_candidate {
                continue;
            }
            let singular = generators.iter().all(|g| {
                g.evaluate_zw(&point[..n], &point[n..]).map(|v| v.is_zero()).unwrap_or(true)
            });
            if singular {
                failure = Some(format!(
                    "sample point {:?} off the candidate is singular",
                    point.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                ));
                break 'grid;
            }
        }
    }

    Ok(SingularLocusData {
        generators,
        candidate_subspace: candidate.to_vec(),
        matches: failure.is_none(),
        dimension: Some(dim),
        failure,
    })
}

/// Points with at most two nonzero coordinates drawn from a fixed value set,
/// in a fixed order.
fn sample_grid(slots: usize) -> Vec<Vec<GaussianRational>> {
    let singles =
        [GaussianRational::from_int(1), GaussianRational::from_int(-1), GaussianRational::from_ratio(1, 2)];
    let pair_values = [GaussianRational::from_int(1), GaussianRational::from_int(-1)];
    let mut points = Vec::new();
    for v in 0..slots {
        for val in &singles {
            let mut p = vec![GaussianRational::zero(); slots];
            p[v] = val.clone();
            points.push(p);
        }
    }
    for v1 in 0..slots {
        for v2 in v1 + 1..slots {
            for a in &pair_values {
                for b in &pair_values {
                    let mut p = vec![GaussianRational::zero(); slots];
                    p[v1] = a.clone();
                    p[v2] = b.clone();
                    points.push(p);
                }
            }
        }
    }
    points
}

/// Detected hypothesis data: quadratic part Re(z1² + … + z²_{n−c}) and H
/// depending only on the first n−c variable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremShape {
    pub num_vars: usize,
    pub corank: usize,
}

impl TheoremShape {
    pub fn n_minus_c(&self) -> usize {
        self.num_vars - self.corank
    }
}

/// Syntactic check of the normal-form hypotheses: vanishing linear part,
/// quadratic part exactly Re(z1² + … + z²_k) with k ≥ 2, and the remainder H
/// of order ≥ 3 involving only the first k variable pairs.
pub fn detect_theorem1_shape(m: &HypersurfaceGerm) -> Result<TheoremShape> {
    let f = m.defining();
    let n = f.num_vars();
    if !f.degree_part(1).is_zero() {
        return Err(Error::ShapeViolation("the linear part of F must vanish".into()));
    }
    let half = GaussianRational::from_ratio(1, 2);
    let d2 = f.degree_part(2);
    let mut k = 0usize;
    while k < n {
        let mut sq = Multidegree::constant(n);
        sq.mu[k] = 2;
        if d2.coefficient(&sq) == half {
            k += 1;
        } else {
            break;
        }
    }
    let mut expected = ConjPolynomial::zero(n, f.truncation_degree());
    for j in 0..k {
        let mut zz = Multidegree::constant(n);
        zz.mu[j] = 2;
        let mut ww = Multidegree::constant(n);
        ww.nu[j] = 2;
        expected.add_term(&zz, &half);
        expected.add_term(&ww, &half);
    }
    if d2 != expected || k == 0 {
        return Err(Error::ShapeViolation(
            "the quadratic part of F must be exactly Re(z1^2 + ... + zk^2)".into(),
        ));
    }
    if k < 2 {
        return Err(Error::ShapeViolation(
            "the number of squares n - c must be at least 2".into(),
        ));
    }
    let h = f - &expected;
    if let Some((md, _)) = h
        .terms()
        .find(|(md, _)| (k..n).any(|j| md.mu[j] > 0 || md.nu[j] > 0))
    {
        let j = (k..n).find(|&j| md.mu[j] > 0 || md.nu[j] > 0).unwrap();
        return Err(Error::ShapeViolation(format!(
            "H must not depend on z{}/conj(z{}) (only the first {} variable pairs may appear)",
            j + 1,
            j + 1,
            k
        )));
    }
    if h.min_total_degree().map_or(false, |d| d < 3) {
        return Err(Error::ShapeViolation("H must vanish to order 3".into()));
    }
    Ok(TheoremShape { num_vars: n, corank: n - k })
}

/// H = F − Re(z1² + … + z²_{n−c}) for a shape-checked germ.
pub fn perturbation_part(m: &HypersurfaceGerm, shape: &TheoremShape) -> ConjPolynomial {
    let f = m.defining();
    let n = f.num_vars();
    let half = GaussianRational::from_ratio(1, 2);
    let mut quad = ConjPolynomial::zero(n, f.truncation_degree());
    for j in 0..shape.n_minus_c() {
        let mut zz = Multidegree::constant(n);
        zz.mu[j] = 2;
        let mut ww = Multidegree::constant(n);
        ww.nu[j] = 2;
        quad.add_term(&zz, &half);
        quad.add_term(&ww, &half);
    }
    f - &quad
}

/// The candidate Sing(M_C) = {z_1 = … = z_{n−c} = w_1 = … = w_{n−c} = 0} for
/// a Theorem-shaped germ.
pub fn theorem1_singular_candidate(shape: &TheoremShape) -> Vec<ConjPolynomial> {
    let n = shape.num_vars;
    let k = shape.n_minus_c();
    let cap = 1;
    let mut eqs = Vec::with_capacity(2 * k);
    for j in 0..k {
        eqs.push(ConjPolynomial::var_z(n, cap, j));
    }
    for j in 0..k {
        eqs.push(ConjPolynomial::var_w(n, cap, j));
    }
    eqs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremBranch {
    /// codim ≥ 3: the tangent foliation exists outright.
    Direct,
    /// codim = 2: a non-constant holomorphic first integral is needed, which
    /// the blow-up/holonomy computation supplies.
    Holonomy,
}

/// The two components X1, X2 of Sing(η_C|_{M*_C}) together with their common
/// codimension n − c, which selects the branch.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaSingularData {
    /// Equations z_j + A_j with A_j = ∂H_C/∂z_j, j ≤ n−c (intersected
    /// with M_1).
    pub x1_equations: Vec<ConjPolynomial>,
    /// Equations w_j + B_j with B_j = ∂H_C/∂w_j, j ≤ n−c (intersected
    /// with M_2).
    pub x2_equations: Vec<ConjPolynomial>,
    pub codimension: usize,
    pub branch: TheoremBranch,
}

pub fn eta_singularity_decomposition(m: &HypersurfaceGerm) -> Result<EtaSingularData> {
    let shape = detect_theorem1_shape(m)?;
    let hc = complexify(&perturbation_part(m, &shape));
    let n = shape.num_vars;
    let k = shape.n_minus_c();
    let cap = hc.truncation_degree();
    let mut x1 = Vec::with_capacity(k);
    let mut x2 = Vec::with_capacity(k);
    for j in 0..k {
        x1.push(&ConjPolynomial::var_z(n, cap, j) + &hc.derivative_z(j));
        x2.push(&ConjPolynomial::var_w(n, cap, j) + &hc.derivative_w(j));
    }
    let branch = if k >= 3 { TheoremBranch::Direct } else { TheoremBranch::Holonomy };
    Ok(EtaSingularData { x1_equations: x1, x2_equations: x2, codimension: k, branch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ops::Neg;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    /// Re(z1² + … + z_k²) in n variables.
    fn re_sum_of_squares(n: usize, k: usize, cap: u32) -> ConjPolynomial {
        let mut f = ConjPolynomial::zero(n, cap);
        for j in 0..k {
            let mut zz = Multidegree::constant(n);
            zz.mu[j] = 2;
            let mut ww = Multidegree::constant(n);
            ww.nu[j] = 2;
            f.add_term(&zz, &q(1, 2));
            f.add_term(&ww, &q(1, 2));
        }
        f
    }

    /// The quartic perturbation z1·z̄1·z2·z̄2 in n ≥ 2 variables.
    fn modulus_product(n: usize, cap: u32) -> ConjPolynomial {
        let mut md = Multidegree::constant(n);
        md.mu[0] = 1;
        md.mu[1] = 1;
        md.nu[0] = 1;
        md.nu[1] = 1;
        ConjPolynomial::monomial(n, cap, md, GaussianRational::one())
    }

    fn quartic_example_germ() -> HypersurfaceGerm {
        let f = &re_sum_of_squares(4, 2, 8) + &modulus_product(4, 8);
        HypersurfaceGerm::new(f, 8).unwrap()
    }

    #[test]
    fn reality_examples() {
        let n = 1;
        let p = ConjPolynomial::monomial(
            n,
            4,
            Multidegree::new(vec![1], vec![1]),
            GaussianRational::one(),
        );
        assert!(check_reality(&p));
        let bad = ConjPolynomial::monomial(n, 4, Multidegree::w(n, 0), GaussianRational::i());
        assert!(!check_reality(&bad));
        assert!(check_reality(quartic_example_germ().defining()));
    }

    #[test]
    fn complexify_matches_displayed_shape() {
        // complexify(Re(z1²+z2²) + H) = ½(z1²+z2²) + ½(w1²+w2²) + H_C,
        // with H_C = z1·w1·z2·w2 for the quartic example.
        let n = 4;
        let germ = quartic_example_germ();
        let fc = complexify(germ.defining());
        let mut expected = ConjPolynomial::zero(n, 8);
        for j in 0..2 {
            let mut zz = Multidegree::constant(n);
            zz.mu[j] = 2;
            let mut ww = Multidegree::constant(n);
            ww.nu[j] = 2;
            expected.add_term(&zz, &q(1, 2));
            expected.add_term(&ww, &q(1, 2));
        }
        let mut hc = Multidegree::constant(n);
        hc.mu[0] = 1;
        hc.mu[1] = 1;
        hc.nu[0] = 1;
        hc.nu[1] = 1;
        expected.add_term(&hc, &GaussianRational::one());
        assert_eq!(fc, expected);
        assert_eq!(realize(&fc), germ.defining().clone());
    }

    #[test]
    fn complexify_holomorphic_is_unchanged() {
        let f = ConjPolynomial::monomial(2, 4, Multidegree::new(vec![2, 1], vec![0, 0]), q(3, 4));
        assert_eq!(complexify(&f), f);
    }

    #[test]
    fn levi_form_of_modulus() {
        // F = z1·z̄1 → η = i(z̄1 dz1 − z1 dz̄1)
        let n = 1;
        let f = ConjPolynomial::monomial(
            n,
            4,
            Multidegree::new(vec![1], vec![1]),
            GaussianRational::one(),
        );
        let eta = levi_form(&f).unwrap();
        let mut expected = PolyForm::zero(n, 1);
        expected.add_term(1, ConjPolynomial::var_w(n, 4, 0).scale(&GaussianRational::i()));
        expected.add_term(
            1 << 1,
            ConjPolynomial::var_z(n, 4, 0).scale(&GaussianRational::i()).neg(),
        );
        assert_eq!(eta, expected);
    }

    #[test]
    fn levi_form_rejects_non_real() {
        let f = ConjPolynomial::monomial(1, 4, Multidegree::w(1, 0), GaussianRational::i());
        assert!(matches!(levi_form(&f), Err(Error::NonRealInput { .. })));
    }

    #[test]
    fn levi_form_quadric_and_structural_identity() {
        let n = 4;
        let f = re_sum_of_squares(n, 2, 8);
        let fc = complexify(&f);
        let eta = levi_form_complexified(&fc);
        let i = GaussianRational::i();
        let mut expected = PolyForm::zero(n, 1);
        for j in 0..2 {
            expected.add_term(1u64 << j, ConjPolynomial::var_z(n, 8, j).scale(&i));
            expected.add_term(1u64 << (n + j), ConjPolynomial::var_w(n, 8, j).scale(&i).neg());
        }
        assert_eq!(eta, expected);
        // η_C + i·dF_C = 2iα holds structurally for any F.
        let g = &fc + &modulus_product(n, 8).scale(&q(5, 3));
        let (alpha, _) = partial_split(&g);
        let lhs = levi_form_complexified(&g).add(&PolyForm::from_poly(g.clone()).exterior_d().scale(&i));
        assert_eq!(lhs, alpha.scale(&GaussianRational::from_int(2)).scale(&i));
    }

    #[test]
    fn cartan_hyperplane_is_flat() {
        for n in 2..=4 {
            let mut f = ConjPolynomial::zero(n, 8);
            f.add_term(&Multidegree::z(n, n - 1), &q(1, 2));
            f.add_term(&Multidegree::w(n, n - 1), &q(1, 2));
            let germ = HypersurfaceGerm::new(f, 8).unwrap();
            let verdict = integrability_test(&germ).unwrap();
            assert!(verdict.flat, "Re(z{n}) must be Levi-flat");
            assert!(verdict.witness.is_none());
        }
    }

    #[test]
    fn sphere_like_germ_is_rejected_with_witness() {
        // F = Re(z2) + z1·z̄1: witness coefficient −1/4 on dz1∧dz2∧dw1∧dw2.
        let n = 2;
        let mut f = ConjPolynomial::zero(n, 8);
        f.add_term(&Multidegree::z(n, 1), &q(1, 2));
        f.add_term(&Multidegree::w(n, 1), &q(1, 2));
        f.add_term(&Multidegree::new(vec![1, 0], vec![1, 0]), &GaussianRational::one());
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        let verdict = integrability_test(&germ).unwrap();
        assert!(!verdict.flat);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.covector_mask, 0b1111);
        assert_eq!(witness.covectors, vec!["dz1", "dz2", "dw1", "dw2"]);
        assert_eq!(
            witness.coefficient,
            ConjPolynomial::constant(n, 8, q(-1, 4))
        );
    }

    #[test]
    fn quartic_example_is_not_flat() {
        // The quartic perturbation breaks integrability: the only coefficient
        // of W is (z1²−z2²)(w2²−w1²), which F_C does not divide.
        let germ = quartic_example_germ();
        let verdict = integrability_test(&germ).unwrap();
        assert!(!verdict.flat);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.covector_mask, 0b110011);
        assert_eq!(witness.covectors, vec!["dz1", "dz2", "dw1", "dw2"]);
        let n = 4;
        let mut expected = ConjPolynomial::zero(n, 8);
        let term = |mu_j: usize, nu_j: usize, c: &GaussianRational, p: &mut ConjPolynomial| {
            let mut md = Multidegree::constant(n);
            md.mu[mu_j] = 2;
            md.nu[nu_j] = 2;
            p.add_term(&md, c);
        };
        term(0, 1, &GaussianRational::one(), &mut expected);
        term(0, 0, &GaussianRational::from_int(-1), &mut expected);
        term(1, 1, &GaussianRational::from_int(-1), &mut expected);
        term(1, 0, &GaussianRational::one(), &mut expected);
        assert_eq!(witness.coefficient, expected);
    }

    #[test]
    fn flatness_verdict_invariant_under_scaling() {
        let germ = quartic_example_germ();
        let scaled =
            HypersurfaceGerm::new(germ.defining().scale(&q(-7, 5)), germ.truncation()).unwrap();
        assert_eq!(
            integrability_test(&germ).unwrap().flat,
            integrability_test(&scaled).unwrap().flat
        );
        let n = 2;
        let mut f = ConjPolynomial::zero(n, 8);
        f.add_term(&Multidegree::z(n, 1), &q(1, 2));
        f.add_term(&Multidegree::w(n, 1), &q(1, 2));
        let flat_germ = HypersurfaceGerm::new(f, 8).unwrap();
        let flat_scaled =
            HypersurfaceGerm::new(flat_germ.defining().scale(&q(3, 1)), 8).unwrap();
        assert!(integrability_test(&flat_scaled).unwrap().flat);
    }

    #[test]
    fn squarefree_heuristic_warns_on_squares() {
        // F = (Re z1)² = ((z1 + z̄1)/2)² is real with non-reduced F_C.
        let n = 1;
        let mut f = ConjPolynomial::zero(n, 8);
        f.add_term(&Multidegree::new(vec![2], vec![0]), &q(1, 4));
        f.add_term(&Multidegree::new(vec![1], vec![1]), &q(1, 2));
        f.add_term(&Multidegree::new(vec![0], vec![2]), &q(1, 4));
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        let verdict = integrability_test(&germ).unwrap();
        assert!(!verdict.warnings.is_empty());
    }

    #[test]
    fn singular_locus_of_quadric() {
        let n = 4;
        let shape = TheoremShape { num_vars: n, corank: 2 };
        let fc = complexify(&re_sum_of_squares(n, 2, 8));
        let candidate = theorem1_singular_candidate(&shape);
        let data = singular_locus(&fc, Some(&candidate)).unwrap();
        assert!(data.matches, "{:?}", data.failure);
        assert_eq!(data.dimension, Some(4)); // 2c with c = 2
        assert_eq!(data.generators.len(), 1 + 2 * n);
    }

    #[test]
    fn singular_locus_of_quartic_example() {
        let germ = quartic_example_germ();
        let fc = complexify(germ.defining());
        let shape = TheoremShape { num_vars: 4, corank: 2 };
        let data = singular_locus(&fc, Some(&theorem1_singular_candidate(&shape))).unwrap();
        assert!(data.matches, "{:?}", data.failure);
        assert_eq!(data.dimension, Some(4));
    }

    #[test]
    fn singular_locus_monomial_toy() {
        // F_C = z1·w1: Sing = {z1 = w1 = 0}.
        let n = 1;
        let fc = ConjPolynomial::monomial(
            n,
            4,
            Multidegree::new(vec![1], vec![1]),
            GaussianRational::one(),
        );
        let candidate = vec![ConjPolynomial::var_z(n, 1, 0), ConjPolynomial::var_w(n, 1, 0)];
        let data = singular_locus(&fc, Some(&candidate)).unwrap();
        assert!(data.matches, "{:?}", data.failure);
        assert_eq!(data.dimension, Some(0));
    }

    #[test]
    fn singular_locus_rejects_nonlinear_candidate() {
        let n = 1;
        let fc = ConjPolynomial::var_z(n, 4, 0);
        let quad = ConjPolynomial::monomial(
            n,
            4,
            Multidegree::new(vec![2], vec![0]),
            GaussianRational::one(),
        );
        assert!(matches!(
            singular_locus(&fc, Some(&[quad])),
            Err(Error::NotLinear { .. })
        ));
    }

    #[test]
    fn singular_locus_detects_wrong_candidate() {
        // Candidate {z1 = 0} alone does not capture Sing of the quadric in
        // C²: the grid finds singular points off it... in fact the quadric
        // Re(z1²+z2²) has Sing(M_C) = {0}, and the generators do not vanish
        // on {z1 = 0}.
        let n = 2;
        let fc = complexify(&re_sum_of_squares(n, 2, 8));
        let candidate = vec![ConjPolynomial::var_z(n, 1, 0)];
        let data = singular_locus(&fc, Some(&candidate)).unwrap();
        assert!(!data.matches);
        assert!(data.failure.is_some());
    }

    #[test]
    fn shape_detection_accepts_quadric_plus_h() {
        let germ = quartic_example_germ();
        let shape = detect_theorem1_shape(&germ).unwrap();
        assert_eq!(shape, TheoremShape { num_vars: 4, corank: 2 });
        assert_eq!(shape.n_minus_c(), 2);
        let h = perturbation_part(&germ, &shape);
        assert_eq!(h, modulus_product(4, 8));
    }

    #[test]
    fn shape_detection_rejects_h_with_late_variables() {
        // F = Re(z1²+z2²) + (z3 z̄3)² in C³ violates hypothesis (2).
        let n = 3;
        let mut h = Multidegree::constant(n);
        h.mu[2] = 2;
        h.nu[2] = 2;
        let f = &re_sum_of_squares(n, 2, 8)
            + &ConjPolynomial::monomial(n, 8, h, GaussianRational::one());
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        let err = detect_theorem1_shape(&germ).unwrap_err();
        match err {
            Error::ShapeViolation(msg) => assert!(msg.contains("z3"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn shape_detection_rejects_single_square() {
        let n = 2;
        let f = re_sum_of_squares(n, 1, 8);
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        assert!(matches!(detect_theorem1_shape(&germ), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn eta_decomposition_quadric_branches() {
        // H = 0, n−c = 2 → codim 2, holonomy branch.
        let germ = HypersurfaceGerm::new(re_sum_of_squares(4, 2, 8), 8).unwrap();
        let data = eta_singularity_decomposition(&germ).unwrap();
        assert_eq!(data.codimension, 2);
        assert_eq!(data.branch, TheoremBranch::Holonomy);
        assert_eq!(data.x1_equations, vec![
            ConjPolynomial::var_z(4, 8, 0),
            ConjPolynomial::var_z(4, 8, 1)
        ]);
        // H = 0, n−c = 3 → codim 3, direct branch.
        let germ3 = HypersurfaceGerm::new(re_sum_of_squares(3, 3, 8), 8).unwrap();
        let data3 = eta_singularity_decomposition(&germ3).unwrap();
        assert_eq!(data3.codimension, 3);
        assert_eq!(data3.branch, TheoremBranch::Direct);
    }

    #[test]
    fn eta_decomposition_quartic_example() {
        // A_1 = ∂H_C/∂z1 = w1·z2·w2, A_2 = ∂H_C/∂z2 = z1·w1·w2.
        let germ = quartic_example_germ();
        let data = eta_singularity_decomposition(&germ).unwrap();
        let n = 4;
        let mono = |mu: [u32; 2], nu: [u32; 2]| {
            let mut md = Multidegree::constant(n);
            md.mu[0] = mu[0];
            md.mu[1] = mu[1];
            md.nu[0] = nu[0];
            md.nu[1] = nu[1];
            ConjPolynomial::monomial(n, 8, md, GaussianRational::one())
        };
        assert_eq!(
            data.x1_equations[0],
            &ConjPolynomial::var_z(n, 8, 0) + &mono([0, 1], [1, 1])
        );
        assert_eq!(
            data.x1_equations[1],
            &ConjPolynomial::var_z(n, 8, 1) + &mono([1, 0], [1, 1])
        );
        assert_eq!(data.codimension, 2);
    }

    #[test]
    fn germ_construction_errors() {
        let n = 1;
        assert!(matches!(
            HypersurfaceGerm::new(ConjPolynomial::zero(n, 4), 4),
            Err(Error::ZeroDefiningPolynomial)
        ));
        assert!(matches!(
            HypersurfaceGerm::new(ConjPolynomial::one(n, 4), 4),
            Err(Error::NonVanishingAtOrigin)
        ));
        let bad = ConjPolynomial::monomial(n, 4, Multidegree::z(n, 0), GaussianRational::one());
        assert!(matches!(HypersurfaceGerm::new(bad, 4), Err(Error::NonRealInput { .. })));
    }
}
