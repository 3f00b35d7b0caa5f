//! Poisson-bracket values and the modified (shadow) Hamiltonian.
//!
//! A palindromic splitting follows the exact flow of a nearby Hamiltonian
//!
//!   H_A = T + V + eps^2 (e_ttv  {T,{T,V}}-term + e_vtv {V,{T,V}}-term)
//!             + eps^4 (four nested five-operator terms) + ...
//!
//! For unit mass the nested brackets reduce to contractions of momenta with
//! potential derivatives; this module evaluates those contractions for one
//! phase-space point. Second-order schemes need the eps^2 pair; fourth-order
//! schemes have e_ttv = e_vtv = 0 and their leading correction is the eps^4
//! quadruple, which requires third and fourth potential derivatives from
//! the force model.

use crate::coeffs::{raw_error_coefficients, scheme_inputs};
use crate::error::{Error, Result};
use crate::force::ForceModel;
use crate::scheme::SplittingScheme;
use crate::state::PhaseState;

/// Values of the nested brackets at one phase-space point, for unit mass.
/// Index conventions (sums over repeated indices, V_i = dV/dq_i):
///
/// * `tv`     = -p_j V_j
/// * `ttv`    =  p_i V_ij p_j
/// * `vtv`    = -V_i V_i
/// * `tt3v`   =  p_i p_j p_k p_l V_ijkl
/// * `vt3v`   = -3 p_i p_j V_ijk V_k
/// * `ttvtv`  = -2 p_i (V_ikj V_k + V_ik V_kj) p_j
/// * `vtvtv`  =  2 V_i V_ij V_j
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketValues {
    pub tv: f64,
    pub ttv: f64,
    pub vtv: f64,
    pub tt3v: f64,
    pub vt3v: f64,
    pub ttvtv: f64,
    pub vtvtv: f64,
}

/// Evaluate all bracket contractions. Needs the model to provide analytic
/// derivatives up to fourth order; models that lack them fail with a
/// capability error.
pub fn eval_brackets(force: &dyn ForceModel, state: &PhaseState) -> Result<BracketValues> {
    let d = force.dim();
    if state.dim() != d {
        return Err(Error::Domain(format!(
            "state dimension {} does not match model dimension {d}",
            state.dim()
        )));
    }
    let q = &state.q;
    let p = &state.p;

    // V_i = -F_i
    let mut f = vec![0.0; d];
    force.force(q, &mut f)?;
    let grad: Vec<f64> = f.iter().map(|x| -x).collect();

    let mut hess = vec![0.0; d * d];
    force.potential_hessian(q, &mut hess)?;
    let mut third = vec![0.0; d * d * d];
    force.potential_third(q, &mut third)?;
    let mut fourth = vec![0.0; d * d * d * d];
    force.potential_fourth(q, &mut fourth)?;

    let h = |i: usize, j: usize| hess[i * d + j];
    let t3 = |i: usize, j: usize, k: usize| third[(i * d + j) * d + k];
    let t4 = |i: usize, j: usize, k: usize, l: usize| fourth[((i * d + j) * d + k) * d + l];

    let mut tv = 0.0;
    for j in 0..d {
        tv -= p[j] * grad[j];
    }

    let mut ttv = 0.0;
    let mut vtvtv = 0.0;
    for i in 0..d {
        for j in 0..d {
            ttv += p[i] * h(i, j) * p[j];
            vtvtv += 2.0 * grad[i] * h(i, j) * grad[j];
        }
    }

    let vtv = -grad.iter().map(|g| g * g).sum::<f64>();

    let mut tt3v = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    tt3v += p[i] * p[j] * p[k] * p[l] * t4(i, j, k, l);
                }
            }
        }
    }

    let mut vt3v = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                vt3v -= 3.0 * p[i] * p[j] * t3(i, j, k) * grad[k];
            }
        }
    }

    let mut ttvtv = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut inner = 0.0;
            for k in 0..d {
                inner += t3(i, k, j) * grad[k] + h(i, k) * h(k, j);
            }
            ttvtv -= 2.0 * p[i] * inner * p[j];
        }
    }

    Ok(BracketValues { tv, ttv, vtv, tt3v, vt3v, ttvtv, vtvtv })
}

/// The shadow Hamiltonian truncated at the given order (2 or 4):
///
///   order 2:  H + eps^2 (e_ttv * ttv + e_vtv * vtv)
///   order 4:  ... + eps^4 (e_ttttv * tt3v + e_vtttv * vt3v
///                          + e_ttvtv * ttvtv + e_vtvtv * vtvtv)
///
/// The error coefficients are read off the scheme's stage weights.
pub fn modified_hamiltonian(
    scheme: &SplittingScheme,
    force: &dyn ForceModel,
    state: &PhaseState,
    eps: f64,
    order: u32,
) -> Result<f64> {
    if order != 2 && order != 4 {
        return Err(Error::Usage(format!(
            "modified_hamiltonian supports truncation order 2 or 4, got {order}"
        )));
    }
    let c = raw_error_coefficients(scheme_inputs(scheme)?);
    let h0 = force.energy(&state.q, &state.p)?;
    let eps2 = eps * eps;

    // the eps^2 pair only needs gradient and Hessian
    let d = force.dim();
    let mut f = vec![0.0; d];
    force.force(&state.q, &mut f)?;
    let grad: Vec<f64> = f.iter().map(|x| -x).collect();
    let mut hess = vec![0.0; d * d];
    force.potential_hessian(&state.q, &mut hess)?;
    let mut ttv = 0.0;
    for i in 0..d {
        for j in 0..d {
            ttv += state.p[i] * hess[i * d + j] * state.p[j];
        }
    }
    let vtv = -grad.iter().map(|g| g * g).sum::<f64>();

    let mut h = h0 + eps2 * (c.e_ttv * ttv + c.e_vtv * vtv);
    if order == 4 {
        let b = eval_brackets(force, state)?;
        h += eps2
            * eps2
            * (c.e_ttttv * b.tt3v + c.e_vtttv * b.vt3v + c.e_ttvtv * b.ttvtv
                + c.e_vtvtv * b.vtvtv);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force::{Harmonic, Kepler2D};

    // Unit oscillator at (q, p) = (2, 3): V_i = q, V_ij = 1, higher = 0
    #[test]
    fn harmonic_bracket_values() {
        let force = Harmonic::new(1.0);
        let b = eval_brackets(&force, &PhaseState::one_d(2.0, 3.0)).unwrap();
        assert_eq!(b.tv, -6.0);
        assert_eq!(b.ttv, 9.0);
        assert_eq!(b.vtv, -4.0);
        assert_eq!(b.tt3v, 0.0);
        assert_eq!(b.vt3v, 0.0);
        assert_eq!(b.ttvtv, -18.0);
        assert_eq!(b.vtvtv, 8.0);
    }

    #[test]
    fn harmonic_scaling_with_omega() {
        // ttv = w^2 p^2, vtv = -w^4 q^2, ttvtv = -2 w^4 p^2, vtvtv = 2 w^6 q^2
        let w: f64 = 1.7;
        let force = Harmonic::new(w);
        let (q, p) = (0.8, -1.1);
        let b = eval_brackets(&force, &PhaseState::one_d(q, p)).unwrap();
        assert!((b.ttv - w.powi(2) * p * p).abs() < 1e-14);
        assert!((b.vtv + w.powi(4) * q * q).abs() < 1e-14);
        assert!((b.ttvtv + 2.0 * w.powi(4) * p * p).abs() < 1e-13);
        assert!((b.vtvtv - 2.0 * w.powi(6) * q * q).abs() < 1e-13);
    }

    #[test]
    fn momentum_free_brackets_vanish() {
        let force = Kepler2D;
        let b = eval_brackets(&force, &PhaseState::two_d(1.5, -0.4, 0.0, 0.0)).unwrap();
        assert_eq!(b.tv, 0.0);
        assert_eq!(b.ttv, 0.0);
        assert_eq!(b.tt3v, 0.0);
        assert_eq!(b.vt3v, 0.0);
        assert_eq!(b.ttvtv, 0.0);
        assert!(b.vtv < 0.0);
        assert!(b.vtvtv != 0.0);
    }

    #[test]
    fn shadow_hamiltonian_truncation_orders() {
        use crate::scheme::{algorithm_c, leapfrog};
        let force = Kepler2D;
        let s = PhaseState::two_d(3.0, 1.0, 0.1, 0.4);
        let eps = 0.01;

        // fourth-order scheme: eps^2 pair vanishes, so order 2 equals raw H
        let h_raw = force.energy(&s.q, &s.p).unwrap();
        let h2 = modified_hamiltonian(&algorithm_c(), &force, &s, eps, 2).unwrap();
        assert!((h2 - h_raw).abs() < 1e-15);
        let h4 = modified_hamiltonian(&algorithm_c(), &force, &s, eps, 4).unwrap();
        assert!(h4 != h_raw);

        // second-order scheme: eps^2 pair present
        let h2 = modified_hamiltonian(&leapfrog(), &force, &s, eps, 2).unwrap();
        assert!((h2 - h_raw).abs() > 1e-9);

        assert!(modified_hamiltonian(&leapfrog(), &force, &s, eps, 3).is_err());
    }
}
