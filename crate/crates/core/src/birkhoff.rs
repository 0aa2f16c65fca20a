//! One step of Birkhoff normal form on the truncated quintic NLS Hamiltonian
//! and extraction of the explicit resonant pieces on the tangential set.
//!
//! The truncated Hamiltonian is `H = Σ j²|u_j|² + ε Σ u u u ū ū ū` where the
//! degree-6 sum runs over ordered sextuples with zero total momentum and all
//! modes inside the cut. In multi-index form the coefficient of `u^a ū^b`
//! with `|a| = |b| = 3` is the product of the two multinomials `3!/a!` and
//! `3!/b!`. The normal-form step cancels every degree-6 term whose energy
//! divisor `Σ k²(a_k − b_k)` is nonzero and leaves the resonant part.

use num_complex::Complex64;

use crate::modes::TangentialSet;
use crate::upoly::{UMono, UPoly};
use crate::{Error, Result};

/// Truncated quintic NLS Hamiltonian `H2 + eps * H6` on modes `|j| <= mode_cut`.
#[derive(Debug, Clone)]
pub struct TruncatedNls {
    pub mode_cut: i64,
    pub eps: f64,
    pub h2: UPoly,
    /// Degree-6 part with unit ε (the ε factor is carried separately).
    pub h6: UPoly,
}

fn multinomial3(exps: &[(i64, u32)]) -> f64 {
    // 3! / prod(a_k!) for |a| = 3
    let mut denom = 1u32;
    for &(_, p) in exps {
        denom *= match p {
            1 => 1,
            2 => 2,
            3 => 6,
            _ => unreachable!("exponent sum is 3"),
        };
    }
    6.0 / denom as f64
}

/// All exponent multisets of total degree 3 over modes |j| <= cut.
fn degree3_multisets(cut: i64) -> Vec<(Vec<(i64, u32)>, i64, f64)> {
    // returns (exponent map, momentum, multinomial)
    let mut out = Vec::new();
    for j1 in -cut..=cut {
        for j2 in j1..=cut {
            for j3 in j2..=cut {
                let mut e: Vec<(i64, u32)> = Vec::new();
                for &j in &[j1, j2, j3] {
                    match e.iter_mut().find(|(k, _)| *k == j) {
                        Some((_, p)) => *p += 1,
                        None => e.push((j, 1)),
                    }
                }
                let momentum = j1 + j2 + j3;
                let m = multinomial3(&e);
                out.push((e, momentum, m));
            }
        }
    }
    out
}

impl TruncatedNls {
    pub fn new(mode_cut: i64, eps: f64) -> Result<Self> {
        if !(mode_cut >= 2 && mode_cut <= 32) {
            return Err(Error::Precondition(format!(
                "mode cut {mode_cut} outside [2, 32]"
            )));
        }
        let h2 = crate::upoly::diagonal_quadratic(mode_cut, |j| (j * j) as f64);
        let mut h6 = UPoly::zero();
        let multisets = degree3_multisets(mode_cut);
        // bucket by momentum so only momentum-conserving pairs are formed
        let mut by_momentum: std::collections::HashMap<i64, Vec<usize>> =
            std::collections::HashMap::new();
        for (i, &(_, p, _)) in multisets.iter().enumerate() {
            by_momentum.entry(p).or_default().push(i);
        }
        for bucket in by_momentum.values() {
            for &ia in bucket {
                for &ib in bucket {
                    let (ea, _, ma) = &multisets[ia];
                    let (eb, _, mb) = &multisets[ib];
                    h6.add_term(
                        UMono::new(ea.clone(), eb.clone()),
                        Complex64::new(ma * mb, 0.0),
                    );
                }
            }
        }
        Ok(Self {
            mode_cut,
            eps,
            h2,
            h6,
        })
    }

    /// Resonant part of H6 (zero energy divisor).
    pub fn h6_resonant(&self) -> UPoly {
        self.h6.filter(|m| m.energy() == 0)
    }

    /// Non-resonant part of H6.
    pub fn h6_nonresonant(&self) -> UPoly {
        self.h6.filter(|m| m.energy() != 0)
    }
}

/// Generating function of the normal-form step: for every non-resonant
/// monomial `m` of `eps * H6` the coefficient is `i eps c_m / energy(m)`, so
/// that `{F, H2}` cancels the non-resonant part exactly.
pub fn build_generating_function(h: &TruncatedNls) -> UPoly {
    let mut f = UPoly::zero();
    for (m, &c) in &h.h6.terms {
        let d = m.energy();
        if d != 0 {
            f.add_term(
                m.clone(),
                Complex64::new(0.0, 1.0) * c * h.eps / d as f64,
            );
        }
    }
    f
}

/// Caps applied while assembling the normal-form remainder.
#[derive(Debug, Clone, Copy)]
pub struct BirkhoffCaps {
    /// Maximum total polynomial degree representable; the remainder has
    /// minimal degree 10, so anything below that is a cap overflow.
    pub max_degree: u32,
    /// Keep only remainder terms with at most this many factors outside the
    /// tangential set (the downstream reduction only consumes low normal
    /// degree). `None` keeps everything.
    pub max_normal_factors: Option<u32>,
}

impl Default for BirkhoffCaps {
    fn default() -> Self {
        Self {
            max_degree: 10,
            max_normal_factors: Some(2),
        }
    }
}

/// Result of one normal-form step.
#[derive(Debug, Clone)]
pub struct NormalFormStep {
    /// `H2 + eps * (resonant part of H6)`.
    pub h_birk: UPoly,
    /// Order-ε² remainder of minimal degree 10, truncated per the caps.
    pub remainder: UPoly,
    pub generating: UPoly,
}

/// One step of Birkhoff normal form. The returned remainder is
/// `ε² ( {F̃, H6res} + ½ {F̃, H6nr} )` with `F = ε F̃`, i.e. the complete
/// order-ε² term of the Lie series, truncated by the caps.
pub fn normal_form_step(
    h: &TruncatedNls,
    set: &TangentialSet,
    caps: &BirkhoffCaps,
) -> Result<NormalFormStep> {
    if caps.max_degree < 10 {
        return Err(Error::Precondition(format!(
            "remainder terms have degree 10, cap is {}",
            caps.max_degree
        )));
    }
    let res = h.h6_resonant();
    let nonres = h.h6_nonresonant();
    let h_birk = h.h2.add(&res.scale(Complex64::new(h.eps, 0.0)));

    // F with the ε factored out
    let mut f_tilde = UPoly::zero();
    for (m, &c) in &nonres.terms {
        f_tilde.add_term(m.clone(), Complex64::new(0.0, 1.0) * c / m.energy() as f64);
    }

    let is_tang = |j: i64| set.contains(j);
    let pair_ok = |m1: &UMono, m2: &UMono| -> bool {
        match caps.max_normal_factors {
            // a bracket contraction removes at most two normal factors
            Some(cap) => m1.normal_count(is_tang) + m2.normal_count(is_tang) <= cap + 2,
            None => true,
        }
    };
    let mut remainder = f_tilde
        .poisson_filtered(&res, &pair_ok)
        .add(&f_tilde.poisson_filtered(&nonres, &pair_ok).scale(Complex64::new(0.5, 0.0)))
        .scale(Complex64::new(h.eps * h.eps, 0.0));
    if let Some(cap) = caps.max_normal_factors {
        remainder = remainder.filter(|m| m.normal_count(is_tang) <= cap);
    }
    Ok(NormalFormStep {
        h_birk,
        remainder,
        generating: f_tilde.scale(Complex64::new(h.eps, 0.0)),
    })
}

/// Closed form of the purely tangential resonant block for S = {-2,-1,1,2}:
/// `6 (Σ|u|²)³ − 9 (Σ|u|²)(Σ|u|⁴) + 4 Σ|u|⁶ + 9 (u₁²u₋₂ū₋₁²ū₂ + c.c.)`.
pub fn closed_form_h60(set: &TangentialSet) -> UPoly {
    let mass: UPoly = sum_powers(set, 1);
    let mass2 = sum_powers(set, 2);
    let mass3 = sum_powers(set, 3);
    let mut p = mass.mul(&mass).mul(&mass).scale(Complex64::new(6.0, 0.0));
    p = p.add(&mass.mul(&mass2).scale(Complex64::new(-9.0, 0.0)));
    p = p.add(&mass3.scale(Complex64::new(4.0, 0.0)));
    let mut eff = UPoly::zero();
    eff.add_term(
        UMono::new(vec![(1, 2), (-2, 1)], vec![(-1, 2), (2, 1)]),
        Complex64::new(9.0, 0.0),
    );
    eff.add_term(
        UMono::new(vec![(-1, 2), (2, 1)], vec![(1, 2), (-2, 1)]),
        Complex64::new(9.0, 0.0),
    );
    p.add(&eff)
}

/// Closed form of the two-normal-factor resonant block for S = {-2,-1,1,2}:
/// `[18 (Σ|u|²)² − 9 Σ|u|⁴] Σ_{j∉S} |z_j|² + 36 (u₋₁u₋₂ū₁ū₂ z₃z̄₋₃ + c.c.)
///  + 9 (u₋₂²ū₂² z₄z̄₋₄ + c.c.)`.
pub fn closed_form_h62(set: &TangentialSet, mode_cut: i64) -> UPoly {
    let mass = sum_powers(set, 1);
    let mass2 = sum_powers(set, 2);
    let mut normal_mass = UPoly::zero();
    for j in -mode_cut..=mode_cut {
        if !set.contains(j) {
            normal_mass.add_term(
                UMono::new(vec![(j, 1)], vec![(j, 1)]),
                Complex64::new(1.0, 0.0),
            );
        }
    }
    let ap = mass
        .mul(&mass)
        .scale(Complex64::new(18.0, 0.0))
        .add(&mass2.scale(Complex64::new(-9.0, 0.0)))
        .mul(&normal_mass);
    let mut eff = UPoly::zero();
    for (a, b, c) in [
        (vec![(-1, 1), (-2, 1), (3, 1)], vec![(1, 1), (2, 1), (-3, 1)], 36.0),
        (vec![(1, 1), (2, 1), (-3, 1)], vec![(-1, 1), (-2, 1), (3, 1)], 36.0),
        (vec![(-2, 2), (4, 1)], vec![(2, 2), (-4, 1)], 9.0),
        (vec![(2, 2), (-4, 1)], vec![(-2, 2), (4, 1)], 9.0),
    ] {
        eff.add_term(UMono::new(a, b), Complex64::new(c, 0.0));
    }
    ap.add(&eff)
}

fn sum_powers(set: &TangentialSet, pow: u32) -> UPoly {
    let mut p = UPoly::zero();
    for &j in set.modes() {
        p.add_term(
            UMono::new(vec![(j, pow)], vec![(j, pow)]),
            Complex64::new(1.0, 0.0),
        );
    }
    p
}

/// Extract the degree-6 terms of `h_birk` with the requested number of
/// normal-mode factors (0 or 2) and verify them against the closed forms.
/// Only defined for S = {-2,-1,1,2}. The returned polynomial carries unit ε.
pub fn extract_restricted(
    h_birk: &UPoly,
    eps: f64,
    set: &TangentialSet,
    mode_cut: i64,
    normal_degree: u32,
) -> Result<UPoly> {
    if set != &TangentialSet::standard() {
        return Err(Error::Precondition(
            "restricted extraction is pinned to S = {-2,-1,1,2}".into(),
        ));
    }
    let is_tang = |j: i64| set.contains(j);
    let part = h_birk
        .filter(|m| m.degree() == 6 && m.normal_count(is_tang) == normal_degree)
        .scale(Complex64::new(1.0 / eps, 0.0));
    let closed = match normal_degree {
        0 => closed_form_h60(set),
        2 => closed_form_h62(set, mode_cut),
        1 => UPoly::zero(),
        _ => {
            return Err(Error::Precondition(format!(
                "normal degree {normal_degree} not supported"
            )))
        }
    };
    let diff = part.sub(&closed);
    if !diff.is_zero() {
        let worst = diff
            .terms
            .iter()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .map(|(m, c)| format!("{m:?} -> {c}"))
            .unwrap_or_default();
        return Err(Error::CoefficientMismatch(format!(
            "normal degree {normal_degree}: {} stray terms, worst {worst}",
            diff.len()
        )));
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(eps: f64) -> TruncatedNls {
        TruncatedNls::new(8, eps).unwrap()
    }

    #[test]
    fn h6_terms_conserve_momentum_mass_and_more() {
        let h = standard(1e-3);
        for m in h.h6.terms.keys() {
            assert_eq!(m.momentum(), 0);
            assert_eq!(m.charge(), 0);
            assert_eq!(m.degree(), 6);
        }
        // term-by-term commutation with mass and momentum
        let cut = h.mode_cut;
        let mass = crate::upoly::diagonal_quadratic(cut, |_| 1.0);
        let momentum = crate::upoly::diagonal_quadratic(cut, |j| j as f64);
        assert!(h.h6.poisson(&mass).is_zero());
        assert!(h.h6.poisson(&momentum).is_zero());
    }

    #[test]
    fn generating_function_skips_resonant_monomials() {
        let h = standard(1e-3);
        let f = build_generating_function(&h);
        // the effective interior resonance contributes nothing
        let m = UMono::new(vec![(1, 2), (-2, 1)], vec![(-1, 2), (2, 1)]);
        assert_eq!(f.coeff(&m), Complex64::new(0.0, 0.0));
        // the fully trivial sextuple contributes nothing
        let t = UMono::new(vec![(1, 3)], vec![(1, 3)]);
        assert_eq!(f.coeff(&t), Complex64::new(0.0, 0.0));
        // no zero divisors slipped through
        for m in f.terms.keys() {
            assert_ne!(m.energy(), 0);
        }
    }

    #[test]
    fn divisor_example() {
        let m = UMono::new(vec![(2, 1), (1, 1), (0, 1)], vec![(1, 3)]);
        assert_eq!(m.energy(), 4 + 1 + 0 - 3);
        assert_eq!(m.energy(), 2);
    }

    #[test]
    fn generating_function_cancels_nonresonant_part_exactly() {
        let h = standard(1e-3);
        let f = build_generating_function(&h);
        let lhs = f.poisson(&h.h2);
        let rhs = h.h6_nonresonant().scale(Complex64::new(-h.eps, 0.0));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn normal_form_step_structure() {
        let h = standard(1e-3);
        let set = TangentialSet::standard();
        let step = normal_form_step(&h, &set, &BirkhoffCaps::default()).unwrap();
        // every ε-order term is resonant
        for m in step.h_birk.terms.keys() {
            if m.degree() == 6 {
                assert_eq!(m.energy(), 0);
                assert_eq!(m.momentum(), 0);
            }
        }
        // remainder has minimal degree 10
        let min_deg = step
            .remainder
            .terms
            .keys()
            .map(|m| m.degree())
            .min()
            .unwrap();
        assert!(min_deg >= 10, "min degree {min_deg}");
        // commutes with H2, mass and momentum exactly
        assert!(step.h_birk.poisson(&h.h2).is_zero());
        let mass = crate::upoly::diagonal_quadratic(8, |_| 1.0);
        let momentum = crate::upoly::diagonal_quadratic(8, |j| j as f64);
        assert!(step.h_birk.poisson(&mass).is_zero());
        assert!(step.h_birk.poisson(&momentum).is_zero());
    }

    #[test]
    fn effective_coefficient_is_nine_eps() {
        let eps = 2.5e-4;
        let h = standard(eps);
        let set = TangentialSet::standard();
        let step = normal_form_step(&h, &set, &BirkhoffCaps::default()).unwrap();
        let m = UMono::new(vec![(1, 2), (-2, 1)], vec![(-1, 2), (2, 1)]);
        assert_eq!(step.h_birk.coeff(&m), Complex64::new(9.0 * eps, 0.0));
    }

    #[test]
    fn restricted_blocks_match_closed_forms() {
        let eps = 1e-3;
        let h = standard(eps);
        let set = TangentialSet::standard();
        let step = normal_form_step(&h, &set, &BirkhoffCaps::default()).unwrap();
        let h60 = extract_restricted(&step.h_birk, eps, &set, 8, 0).unwrap();
        assert!(!h60.is_zero());
        let h61 = extract_restricted(&step.h_birk, eps, &set, 8, 1).unwrap();
        assert!(h61.is_zero());
        let h62 = extract_restricted(&step.h_birk, eps, &set, 8, 2).unwrap();
        assert!(!h62.is_zero());
        // spot-check the pinned coefficients
        let m_eff62 = UMono::new(vec![(-2, 2), (4, 1)], vec![(2, 2), (-4, 1)]);
        assert_eq!(h62.coeff(&m_eff62), Complex64::new(9.0, 0.0));
        let m_cube = UMono::new(vec![(1, 3)], vec![(1, 3)]);
        // coefficient of |u_1|^6 in 6 m³ − 9 m m₂ + 4 m₃ is 6 − 9 + 4 = 1
        assert_eq!(h60.coeff(&m_cube), Complex64::new(1.0, 0.0));
    }
}
