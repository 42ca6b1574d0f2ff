//! The constructive core: Hessian corank analysis, the holomorphic Morse-Bott
//! normalization as a degree-by-degree completing-the-square algorithm, the
//! Re(f) = U·F first-integral solver, and the end-to-end pipeline with
//! machine-checkable certificates.
//!
//! All equalities of germs are equalities modulo degree N+1 for the working
//! truncation N, and every certificate is re-verified by an independent
//! composition/expansion pass before it is returned.

use crate::error::{Error, Result};
use crate::levi::{
    detect_theorem1_shape, integrability_test, HypersurfaceGerm, IntegrabilityWitness,
    TheoremShape,
};
use crate::linalg::{self, SolveOutcome};
use crate::multidegree::Multidegree;
use crate::poly::ConjPolynomial;
use crate::rational::GaussianRational;
use crate::series::{compose_mixed, HoloSeries, JetMap};
use std::collections::BTreeMap;
use std::ops::Neg;

/// Exact complex Hessian data of a holomorphic series at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct HessianData {
    /// The symmetric matrix f''(0).
    pub matrix: Vec<Vec<GaussianRational>>,
    pub rank: usize,
    pub corank: usize,
    /// Exact basis of Ker f''(0).
    pub kernel_basis: Vec<Vec<GaussianRational>>,
}

/// Computes f''(0) for f with f(0) = 0 and df(0) = 0, with rank and kernel by
/// exact elimination.
pub fn hessian_corank(f: &HoloSeries) -> Result<HessianData> {
    let n = f.num_vars();
    let p = f.as_poly();
    if !p.constant_term().is_zero() {
        return Err(Error::ShapeViolation("hessian analysis needs f(0) = 0".into()));
    }
    if !p.degree_part(1).is_zero() {
        return Err(Error::ShapeViolation("hessian analysis needs df(0) = 0".into()));
    }
    let mut matrix = vec![vec![GaussianRational::zero(); n]; n];
    let two = GaussianRational::from_int(2);
    for i in 0..n {
        for j in i..n {
            let mut md = Multidegree::constant(n);
            md.mu[i] += 1;
            md.mu[j] += 1;
            let c = p.coefficient(&md);
            let entry = if i == j { &c * &two } else { c };
            matrix[i][j] = entry.clone();
            matrix[j][i] = entry;
        }
    }
    let rank = linalg::rank(&matrix);
    let kernel_basis = linalg::kernel_basis(&matrix);
    Ok(HessianData { matrix, rank, corank: n - rank, kernel_basis })
}

/// A verified Morse-Bott normal form: compose(f, phi) = target exactly modulo
/// degree N+1, with DΦ(0) in the theorem block shape.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormCertificate {
    pub phi: JetMap,
    /// x1² + … + x²_{n−c}.
    pub target: HoloSeries,
    /// compose(f, phi) − target; identically zero for a valid certificate.
    pub residual: HoloSeries,
    pub corank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MorseBottOutcome {
    Certificate(NormalFormCertificate),
    /// The pure-kernel-variable remainder r_d that no completing-square step
    /// can absorb; the critical set fails the tangency condition at jet
    /// level.
    NotMorseBott { degree: u32, witness: HoloSeries },
}

/// Degree-by-degree completing of squares. The quadratic part of `f` must be
/// exactly x1² + … + x²_{n−c}; each degree-d monomial containing some x_i
/// with i ≤ n−c is assigned to the smallest such i and absorbed by the
/// substitution x_i ← x_i − h_{d,i}/2; a nonzero pure-kernel remainder r_d
/// aborts with a witness.
pub fn morse_bott_normalize(f: &HoloSeries, truncation: u32) -> Result<MorseBottOutcome> {
    let n = f.num_vars();
    let p = f.as_poly();
    if !p.constant_term().is_zero() || !p.degree_part(1).is_zero() {
        return Err(Error::ShapeViolation(
            "normalization needs f(0) = 0 and df(0) = 0".into(),
        ));
    }
    let d2 = f.degree_part(2);
    let mut k = 0usize;
    while k < n {
        let mut sq = vec![0u32; n];
        sq[k] = 2;
        if d2.coefficient(&sq).is_one() {
            k += 1;
        } else {
            break;
        }
    }
    if k == 0 || d2 != HoloSeries::sum_of_squares(n, d2.truncation_degree(), k).degree_part(2) {
        return Err(Error::ShapeViolation(
            "quadratic part must be exactly x1^2 + ... + xk^2".into(),
        ));
    }

    let mut current = f.truncated(truncation);
    let mut phi = JetMap::identity(n, truncation);
    for d in 3..=truncation {
        let h_d = current.degree_part(d);
        if h_d.is_zero() {
            continue;
        }
        // Split h_d = Σ_{i<k} x_i·h_{d,i} + r_d by smallest contributing index.
        let mut quotients: Vec<HoloSeries> = vec![HoloSeries::zero(n, truncation); k];
        let mut remainder = HoloSeries::zero(n, truncation);
        for (md, c) in h_d.as_poly().terms() {
            match (0..k).find(|&i| md.mu[i] > 0) {
                Some(i) => {
                    let mut mu = md.mu.clone();
                    mu[i] -= 1;
                    quotients[i].add_monomial(mu, c);
                }
                None => remainder.add_monomial(md.mu.clone(), c),
            }
        }
        if !remainder.is_zero() {
            return Ok(MorseBottOutcome::NotMorseBott { degree: d, witness: remainder });
        }
        let half = GaussianRational::from_ratio(-1, 2);
        let components: Vec<HoloSeries> = (0..n)
            .map(|i| {
                let var = HoloSeries::var(n, truncation, i);
                if i < k {
                    &var + &quotients[i].scale(&half)
                } else {
                    var
                }
            })
            .collect();
        let step = JetMap::new(components)?;
        current = current.compose(&step)?;
        phi = phi.compose(&step)?;
        debug_assert!(current.degree_part(d).is_zero());
    }

    let target = HoloSeries::sum_of_squares(n, truncation, k);
    // Independent re-check: compose the original input with the accumulated
    // map in one pass.
    let residual = &f.truncated(truncation).compose(&phi)? - &target;
    Ok(MorseBottOutcome::Certificate(NormalFormCertificate {
        phi,
        target,
        residual,
        corank: n - k,
    }))
}

/// Residual bookkeeping for one solved degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResidual {
    pub degree: u32,
    /// Number of nonzero terms of [Re(f) − U·F]_d after solving; 0 for a
    /// clean solve.
    pub nonzero_terms: usize,
}

/// A first integral at jet level: Re(f) = U·F modulo degree N+1 with the
/// gauge U(0) = 1 and f's quadratic part z1² + … + z²_{n−c}.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstIntegralPair {
    pub f: HoloSeries,
    pub u: ConjPolynomial,
    pub residual_by_degree: Vec<DegreeResidual>,
    pub shape: TheoremShape,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FirstIntegralOutcome {
    Pair(Box<FirstIntegralPair>),
    /// The degree-d coefficient block has no solution: the germ is not
    /// Levi-flat of the hypothesis shape.
    InfeasibleAtDegree(u32),
}

/// Assembles and solves the per-degree linear systems [Re(f)]_d = [U·F]_d for
/// d = 3..N. Hypothesis (2) confines F to the first n−c variable pairs, so
/// the solve runs there and extends by zero (identical to the full-space
/// solve under the free-coordinates-zero gauge). Within a degree, the mixed
/// coefficient classes constrain U alone; the pure classes then determine f
/// directly.
pub fn first_integral_solve(m: &HypersurfaceGerm, truncation: u32) -> Result<FirstIntegralOutcome> {
    let shape = detect_theorem1_shape(m)?;
    let k = shape.n_minus_c();
    let fk = m.defining().restrict_vars(k);
    let q2 = fk.degree_part(2);

    let mut f = HoloSeries::sum_of_squares(k, truncation, k);
    let mut u = ConjPolynomial::one(k, truncation);
    let mut residuals = Vec::new();

    for d in 3..=truncation {
        // Known part of [U·F]_d from the already-determined degrees of U.
        let rhs_d = u.mul_truncated(&fk, d).degree_part(d);

        let mixed: Vec<(Multidegree, GaussianRational)> = rhs_d
            .terms()
            .filter(|(md, _)| !md.is_pure_z() && !md.is_pure_w())
            .map(|(md, c)| (md.clone(), c.clone()))
            .collect();
        if !mixed.is_empty() || has_mixed_classes(&fk, d) {
            match solve_mixed_block(&q2, &rhs_d, k, d) {
                None => return Ok(FirstIntegralOutcome::InfeasibleAtDegree(d)),
                Some(u_part) => {
                    u = &u + &u_part;
                }
            }
        }

        // Pure classes: a_μ = 2·[U·F]_{(μ,0)} with the full U at this degree.
        let rhs_full = u.mul_truncated(&fk, d).degree_part(d);
        let two = GaussianRational::from_int(2);
        for (md, c) in rhs_full.terms().filter(|(md, _)| md.is_pure_z()) {
            f.add_monomial(md.mu.clone(), &(c * &two));
        }

        let residual_d = (&f.real_part() - &u.mul_truncated(&fk, d)).degree_part(d);
        debug_assert!(residual_d.is_zero(), "degree-{d} residual must vanish");
        residuals.push(DegreeResidual { degree: d, nonzero_terms: residual_d.num_terms() });
    }

    let n = shape.num_vars;
    let f_ext = HoloSeries::from_poly(f.as_poly().extend_vars(n))?;
    let u_ext = u.extend_vars(n);
    debug_assert!(u_ext.constant_term().is_one());
    Ok(FirstIntegralOutcome::Pair(Box::new(FirstIntegralPair {
        f: f_ext,
        u: u_ext,
        residual_by_degree: residuals,
        shape,
    })))
}

/// True when degree d admits any mixed monomial class in k variable pairs,
/// i.e. the mixed block is structurally non-empty. (For d ≥ 2 it always is;
/// kept explicit for clarity.)
fn has_mixed_classes(_fk: &ConjPolynomial, d: u32) -> bool {
    d >= 2
}

/// Solves the mixed coefficient block at degree d: [U_{d−2}·Q]_{(μ,ν)} =
/// −R_{(μ,ν)} over all mixed classes, with the reality of U encoded as
/// re/im unknowns per conjugation-class representative. Returns the new
/// degree-(d−2) part of U, or `None` when the block is infeasible.
fn solve_mixed_block(
    q2: &ConjPolynomial,
    rhs_d: &ConjPolynomial,
    k: usize,
    d: u32,
) -> Option<ConjPolynomial> {
    let cap = rhs_d.truncation_degree();
    let mixed_rhs_zero = rhs_d
        .terms()
        .filter(|(md, _)| !md.is_pure_z() && !md.is_pure_w())
        .count()
        == 0;
    if mixed_rhs_zero {
        // Homogeneous block: the gauged solution is identically zero.
        return Some(ConjPolynomial::zero(k, cap));
    }

    // Unknown classes: representatives m ≥ conj(m) of degree d−2.
    let unknown_degs = monomials_of_degree(k, d - 2);
    let mut col_of: BTreeMap<Multidegree, (usize, Option<usize>)> = BTreeMap::new();
    let mut ncols = 0usize;
    for md in &unknown_degs {
        if *md >= md.conj() {
            let re_col = ncols;
            ncols += 1;
            let im_col = if *md == md.conj() {
                None
            } else {
                ncols += 1;
                Some(ncols - 1)
            };
            col_of.insert(md.clone(), (re_col, im_col));
        }
    }

    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    let mut rhs: Vec<GaussianRational> = Vec::new();
    for target in monomials_of_degree(k, d) {
        if target.is_pure_z() || target.is_pure_w() || target < target.conj() {
            continue;
        }
        let mut row_re = vec![GaussianRational::zero(); ncols];
        let mut row_im = vec![GaussianRational::zero(); ncols];
        for (qmd, qc) in q2.terms() {
            debug_assert!(qc.is_real());
            let Some(u_md) = target.try_sub(qmd) else { continue };
            let rep = if u_md >= u_md.conj() { u_md.clone() } else { u_md.conj() };
            let conjugated = u_md != rep;
            let (re_col, im_col) = col_of[&rep];
            // coefficient qc·(x ± i·y) splits into the two real rows
            row_re[re_col] += qc;
            if let Some(im_col) = im_col {
                if conjugated {
                    row_im[im_col] -= qc;
                } else {
                    row_im[im_col] += qc;
                }
            }
        }
        // The complex equation splits: Σ qc·x = Re(r) and Σ ±qc·y = Im(r).
        let r = rhs_d.coefficient(&target).neg();
        rows.push(row_re);
        rhs.push(GaussianRational::new(r.re.clone(), num_rational::BigRational::from_integer(0.into())));
        rows.push(row_im);
        rhs.push(GaussianRational::new(r.im.clone(), num_rational::BigRational::from_integer(0.into())));
    }

    match linalg::solve_linear(&rows, &rhs, false) {
        SolveOutcome::Infeasible => None,
        SolveOutcome::Solution(sol) => {
            let mut u_part = ConjPolynomial::zero(k, cap);
            for (md, (re_col, im_col)) in &col_of {
                let re = sol.particular[*re_col].clone();
                debug_assert!(re.is_real());
                let im = im_col
                    .map(|c| sol.particular[c].clone())
                    .unwrap_or_else(GaussianRational::zero);
                debug_assert!(im.is_real());
                let value = GaussianRational::new(re.re.clone(), im.re.clone());
                u_part.add_term(md, &value);
                if *md != md.conj() {
                    u_part.add_term(&md.conj(), &value.conj());
                }
            }
            Some(u_part)
        }
    }
}

/// All multidegrees of total degree exactly `d` in `k` variable pairs,
/// ascending in the fixed order.
fn monomials_of_degree(k: usize, d: u32) -> Vec<Multidegree> {
    let mut out = Vec::new();
    let mut slots = vec![0u32; 2 * k];
    fill_slots(&mut slots, 0, d, &mut out, k);
    out.sort();
    out
}

fn fill_slots(slots: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Multidegree>, k: usize) {
    if idx == slots.len() {
        if remaining == 0 {
            out.push(Multidegree::new(slots[..k].to_vec(), slots[k..].to_vec()));
        }
        return;
    }
    if idx == slots.len() - 1 {
        slots[idx] = remaining;
        out.push(Multidegree::new(slots[..k].to_vec(), slots[k..].to_vec()));
        slots[idx] = 0;
        return;
    }
    for e in 0..=remaining {
        slots[idx] = e;
        fill_slots(slots, idx + 1, remaining - e, out, k);
    }
    slots[idx] = 0;
}

/// Everything the end-to-end run certifies.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineCertificate {
    pub shape: TheoremShape,
    pub first_integral: FirstIntegralPair,
    pub normal_form: NormalFormCertificate,
    /// Ũ = (U∘Φ)⁻¹ with Ũ(0) = 1, so that F∘Φ = Ũ·Re(x1² + … + x²_{n−c})
    /// modulo degree N+1.
    pub u_tilde: ConjPolynomial,
    /// (U∘Φ)·(F∘Φ) − Re(x1² + … + x²_{n−c}), re-expanded independently;
    /// identically zero for a valid certificate.
    pub composite_residual: ConjPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PipelineOutcome {
    Certificate(Box<PipelineCertificate>),
    /// The integrability precondition failed; the witness coefficient is not
    /// divisible by F_C.
    NotLeviFlat(Box<IntegrabilityWitness>),
    InfeasibleAtDegree(u32),
    NotMorseBott { degree: u32, witness: HoloSeries },
}

/// Runs the full constructive chain: shape preflight, integrability
/// precondition, first-integral solve, Morse-Bott normalization, and the
/// composite certificate check F∘Φ = Ũ·Re(Σ x_i²) mod N+1.
pub fn theorem1_pipeline(m: &HypersurfaceGerm, truncation: u32) -> Result<PipelineOutcome> {
    detect_theorem1_shape(m)?;
    let verdict = integrability_test(m)?;
    if let Some(witness) = verdict.witness {
        return Ok(PipelineOutcome::NotLeviFlat(Box::new(witness)));
    }
    let pair = match first_integral_solve(m, truncation)? {
        FirstIntegralOutcome::InfeasibleAtDegree(d) => {
            return Ok(PipelineOutcome::InfeasibleAtDegree(d))
        }
        FirstIntegralOutcome::Pair(pair) => *pair,
    };
    let certificate = match morse_bott_normalize(&pair.f, truncation)? {
        MorseBottOutcome::NotMorseBott { degree, witness } => {
            return Ok(PipelineOutcome::NotMorseBott { degree, witness })
        }
        MorseBottOutcome::Certificate(c) => c,
    };

    let phi = &certificate.phi;
    let f_trunc = m.defining().truncated(truncation);
    let f_composed = compose_mixed(&f_trunc, phi)?;
    let u_composed = compose_mixed(&pair.u, phi)?;
    let target_re = certificate.target.real_part();
    let composite_residual = &(&u_composed * &f_composed) - &target_re;
    let u_tilde = u_composed
        .reciprocal(truncation)
        .expect("U(0) = 1 is invertible");

    Ok(PipelineOutcome::Certificate(Box::new(PipelineCertificate {
        shape: pair.shape,
        first_integral: pair,
        normal_form: certificate,
        u_tilde,
        composite_residual,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::HypersurfaceGerm;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    fn re_sum_of_squares(n: usize, k: usize, cap: u32) -> ConjPolynomial {
        HoloSeries::sum_of_squares(n, cap, k).real_part()
    }

    #[test]
    fn hessian_corank_examples() {
        // z1² + z2² in C²: corank 0.
        let f = HoloSeries::sum_of_squares(2, 4, 2);
        let h = hessian_corank(&f).unwrap();
        assert_eq!((h.rank, h.corank), (2, 0));
        assert!(h.kernel_basis.is_empty());
        // The same germ in C⁴: corank 2.
        let f4 = HoloSeries::sum_of_squares(4, 4, 2);
        let h4 = hessian_corank(&f4).unwrap();
        assert_eq!((h4.rank, h4.corank), (2, 2));
        assert_eq!(h4.kernel_basis.len(), 2);
        for v in &h4.kernel_basis {
            for (row, entry) in h4.matrix.iter().zip(
                (0..4).map(|i| {
                    (0..4)
                        .map(|j| &h4.matrix[i][j] * &v[j])
                        .fold(GaussianRational::zero(), |acc, x| acc + &x)
                }),
            ) {
                let _ = row;
                assert!(entry.is_zero());
            }
        }
        // z1·z2 in C²: the hyperbolic pair has full rank.
        let mut fh = HoloSeries::zero(2, 4);
        fh.add_monomial(vec![1, 1], &GaussianRational::one());
        let hh = hessian_corank(&fh).unwrap();
        assert_eq!((hh.rank, hh.corank), (2, 0));
    }

    #[test]
    fn hessian_rejects_linear_part() {
        let f = HoloSeries::var(2, 4, 0);
        assert!(matches!(hessian_corank(&f), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn morse_bott_identity_case() {
        let f = HoloSeries::sum_of_squares(2, 6, 2);
        match morse_bott_normalize(&f, 6).unwrap() {
            MorseBottOutcome::Certificate(c) => {
                assert!(c.phi.is_identity_linear_part());
                assert!(c.residual.is_zero());
                assert_eq!(c.corank, 0);
                assert_eq!(f.compose(&c.phi).unwrap(), c.target);
            }
            MorseBottOutcome::NotMorseBott { .. } => panic!("model case is Morse"),
        }
    }

    #[test]
    fn morse_bott_absorbs_cross_terms() {
        // f = (z1 + z2·z3)² + z2² = z1² + z2² + 2·z1z2z3 + z2²z3², corank 1.
        let n = 3;
        let cap = 8;
        let mut f = HoloSeries::sum_of_squares(n, cap, 2);
        f.add_monomial(vec![1, 1, 1], &GaussianRational::from_int(2));
        f.add_monomial(vec![0, 2, 2], &GaussianRational::one());
        match morse_bott_normalize(&f, cap).unwrap() {
            MorseBottOutcome::Certificate(c) => {
                assert_eq!(c.corank, 1);
                assert!(c.residual.is_zero(), "residual {:?}", c.residual);
                assert_eq!(f.compose(&c.phi).unwrap(), c.target);
                assert!(c.phi.has_block_shape(2));
            }
            MorseBottOutcome::NotMorseBott { degree, witness } => {
                panic!("should normalize, got witness {witness:?} at degree {degree}")
            }
        }
    }

    #[test]
    fn morse_bott_detects_cusp() {
        // f = z1² + z2² + z1·z3²: one completing square leaves −z3⁴/4.
        let n = 3;
        let cap = 8;
        let mut f = HoloSeries::sum_of_squares(n, cap, 2);
        f.add_monomial(vec![1, 0, 2], &GaussianRational::one());
        match morse_bott_normalize(&f, cap).unwrap() {
            MorseBottOutcome::NotMorseBott { degree, witness } => {
                assert_eq!(degree, 4);
                let mut expected = HoloSeries::zero(n, cap);
                expected.add_monomial(vec![0, 0, 4], &q(-1, 4));
                assert_eq!(witness, expected);
            }
            MorseBottOutcome::Certificate(_) => panic!("cusp is not Morse-Bott"),
        }
    }

    #[test]
    fn morse_bott_rejects_nonstandard_quadratic() {
        let mut f = HoloSeries::zero(2, 6);
        f.add_monomial(vec![1, 1], &GaussianRational::one());
        assert!(matches!(morse_bott_normalize(&f, 6), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn first_integral_of_quadric() {
        let n = 4;
        let germ = HypersurfaceGerm::new(re_sum_of_squares(n, 2, 8), 8).unwrap();
        match first_integral_solve(&germ, 8).unwrap() {
            FirstIntegralOutcome::Pair(pair) => {
                assert_eq!(pair.f, HoloSeries::sum_of_squares(n, 8, 2));
                assert_eq!(pair.u, ConjPolynomial::one(n, 8));
                assert!(pair.residual_by_degree.iter().all(|r| r.nonzero_terms == 0));
            }
            FirstIntegralOutcome::InfeasibleAtDegree(d) => panic!("quadric solvable, failed at {d}"),
        }
    }

    #[test]
    fn first_integral_of_holomorphic_cubic() {
        // F = Re(z1² + z2² + z1³) → f = z1² + z2² + z1³, U = 1.
        let n = 2;
        let mut fh = HoloSeries::sum_of_squares(n, 8, 2);
        fh.add_monomial(vec![3, 0], &GaussianRational::one());
        let germ = HypersurfaceGerm::new(fh.real_part(), 8).unwrap();
        match first_integral_solve(&germ, 8).unwrap() {
            FirstIntegralOutcome::Pair(pair) => {
                assert_eq!(pair.f, fh);
                assert_eq!(pair.u, ConjPolynomial::one(n, 8));
            }
            FirstIntegralOutcome::InfeasibleAtDegree(d) => panic!("solvable, failed at {d}"),
        }
    }

    #[test]
    fn first_integral_quartic_example_is_infeasible() {
        // F = Re(z1²+z2²) + z1z̄1z2z̄2: the degree-4 block forces 0 = 1 on
        // the monomial z1z̄1z2z̄2 (no U2·Re(z1²+z2²) product has that
        // exponent pattern), so the solve stops at degree 4.
        let n = 4;
        let mut h = Multidegree::constant(n);
        h.mu[0] = 1;
        h.mu[1] = 1;
        h.nu[0] = 1;
        h.nu[1] = 1;
        let f = &re_sum_of_squares(n, 2, 8)
            + &ConjPolynomial::monomial(n, 8, h, GaussianRational::one());
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        assert_eq!(
            first_integral_solve(&germ, 8).unwrap(),
            FirstIntegralOutcome::InfeasibleAtDegree(4)
        );
    }

    /// F = Re(g) + ½·g·ḡ for g = z1² + z2²; Levi-flat with first integral
    /// log(1 + g), mixed coefficients throughout.
    fn unit_circle_germ(n: usize, cap: u32) -> HypersurfaceGerm {
        let g = HoloSeries::sum_of_squares(n, cap, 2);
        let gbar = g.as_poly().conj();
        let f = &g.real_part() + &g.as_poly().mul_exact(&gbar).scale(&q(1, 2));
        HypersurfaceGerm::new(f, cap).unwrap()
    }

    #[test]
    fn first_integral_with_mixed_terms() {
        let germ = unit_circle_germ(2, 8);
        match first_integral_solve(&germ, 8).unwrap() {
            FirstIntegralOutcome::Pair(pair) => {
                assert!(pair.residual_by_degree.iter().all(|r| r.nonzero_terms == 0));
                // Independent expansion: Re(f) − U·F ≡ 0 mod degree 9.
                let diff = &pair.f.real_part()
                    - &pair.u.mul_truncated(germ.defining(), 8);
                assert!(diff.is_zero(), "{:?}", diff);
                // The know-it-by-hand first integral log(1+g) starts
                // g − g²/2; the solver must reproduce its quadratic+quartic
                // jet up to gauge. Its degree-4 part is −g²/2.
                let g = HoloSeries::sum_of_squares(2, 8, 2);
                let gg = g.as_poly().mul_exact(g.as_poly());
                assert_eq!(pair.f.degree_part(4).into_poly(), gg.scale(&q(-1, 2)));
            }
            FirstIntegralOutcome::InfeasibleAtDegree(d) => panic!("flat germ, failed at {d}"),
        }
    }

    #[test]
    fn first_integral_is_deterministic_and_degree_monotone() {
        let germ = unit_circle_germ(2, 8);
        let a = first_integral_solve(&germ, 8).unwrap();
        let b = first_integral_solve(&germ, 8).unwrap();
        assert_eq!(a, b);
        let (FirstIntegralOutcome::Pair(p8), FirstIntegralOutcome::Pair(p5)) =
            (a, first_integral_solve(&germ, 5).unwrap())
        else {
            panic!("both solvable");
        };
        assert_eq!(p8.f.truncated(5), p5.f.truncated(5));
        assert_eq!(p8.u.truncated(3), p5.u.truncated(3));
    }

    #[test]
    fn pipeline_on_quadric() {
        let n = 4;
        let germ = HypersurfaceGerm::new(re_sum_of_squares(n, 2, 8), 8).unwrap();
        match theorem1_pipeline(&germ, 8).unwrap() {
            PipelineOutcome::Certificate(cert) => {
                assert_eq!(cert.shape, TheoremShape { num_vars: 4, corank: 2 });
                assert!(cert.normal_form.phi.is_identity_linear_part());
                assert!(cert.composite_residual.is_zero());
                assert!(cert.u_tilde.constant_term().is_one());
                assert!(cert.normal_form.residual.is_zero());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_on_mixed_flat_germ() {
        let germ = unit_circle_germ(3, 8);
        match theorem1_pipeline(&germ, 8).unwrap() {
            PipelineOutcome::Certificate(cert) => {
                assert!(cert.composite_residual.is_zero());
                assert!(cert.normal_form.phi.has_block_shape(2));
                assert_eq!(cert.normal_form.corank, 1);
                // F∘Φ = Ũ·Re(x1²+x2²) mod degree 9, second route.
                let phi = &cert.normal_form.phi;
                let f_composed = compose_mixed(&germ.defining().truncated(8), phi).unwrap();
                let target_re = cert.normal_form.target.real_part();
                assert_eq!(f_composed, &cert.u_tilde * &target_re);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_flags_non_flat_input() {
        let n = 4;
        let mut h = Multidegree::constant(n);
        h.mu[0] = 1;
        h.mu[1] = 1;
        h.nu[0] = 1;
        h.nu[1] = 1;
        let f = &re_sum_of_squares(n, 2, 8)
            + &ConjPolynomial::monomial(n, 8, h, GaussianRational::one());
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        match theorem1_pipeline(&germ, 8).unwrap() {
            PipelineOutcome::NotLeviFlat(witness) => {
                assert_eq!(witness.covectors, vec!["dz1", "dz2", "dw1", "dw2"]);
            }
            other => panic!("expected NotLeviFlat, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_rejects_shape_violations_before_solving() {
        // Quadratic part with a coefficient 2 square is not the hypothesis
        // shape.
        let n = 2;
        let mut f = ConjPolynomial::zero(n, 8);
        f.add_term(&Multidegree::new(vec![2, 0], vec![0, 0]), &GaussianRational::one());
        f.add_term(&Multidegree::new(vec![0, 0], vec![2, 0]), &GaussianRational::one());
        let germ = HypersurfaceGerm::new(f, 8).unwrap();
        assert!(matches!(theorem1_pipeline(&germ, 8), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn burns_gong_case_smoke() {
        // c = 0: F = Re(z1²+z2²+z3²) + Re(cubic) normalizes to Re(Σ x_i²).
        let n = 3;
        let cap = 8;
        let mut fh = HoloSeries::sum_of_squares(n, cap, n);
        fh.add_monomial(vec![1, 1, 1], &q(2, 3));
        fh.add_monomial(vec![0, 2, 1], &GaussianRational::from_parts(0, 1, 1, 2));
        let germ = HypersurfaceGerm::new(fh.real_part(), cap).unwrap();
        match theorem1_pipeline(&germ, cap).unwrap() {
            PipelineOutcome::Certificate(cert) => {
                assert_eq!(cert.shape.corank, 0);
                assert_eq!(cert.normal_form.target, HoloSeries::sum_of_squares(n, cap, n));
                assert!(cert.composite_residual.is_zero());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }
}
