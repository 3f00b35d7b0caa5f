//! Error-coefficient algebra for palindromic drift-kick splittings.
//!
//! A seven-stage palindrome
//!
//! ```text
//! D(t0) K(v1, a*u0/2) D(t1) K(v2, (1-a)*u0) D(t1) K(v1, a*u0/2) D(t0)
//! ```
//!
//! approximates the exact flow with an error expansion whose first few
//! coefficients are polynomials in (t0, t1, v1, v2, u0, alpha). Consistency
//! requires e_t = e_v = 1; a fourth-order scheme additionally needs
//! e_ttv = e_vtv = 0, which pins t1, v1, v2, u0 as functions of t0 alone
//! (see `family_point`). The remaining pair (e_ttvtv, e_vtvtv) controls the
//! sixth-order behavior: a scheme is *correctable* when they can be made
//! equal, and `correctable_alpha` returns the gradient split that does it.
//!
//! The same machinery covers the three-stage second-order step through
//! `second_order_inputs`: splitting each half-drift in two embeds
//! D(1/2) K(1, a) D(1/2) into the seven-stage frame with t0 = t1 = 1/4,
//! v1 = 0, v2 = 1, u0 = a and no gradient split.

use crate::error::{Error, Result};
use crate::scheme::{SplittingScheme, StageKind};

/// Weight tuple fed to the raw coefficient polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffInputs {
    pub t0: f64,
    pub t1: f64,
    pub v1: f64,
    pub v2: f64,
    /// Total force-gradient weight (sum over all kicks).
    pub u0: f64,
    /// Fraction of `u0` carried by the two outer kicks together.
    pub alpha: f64,
}

/// First- through fifth-order error coefficients of the splitting, named by
/// the commutator bracket each one multiplies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawCoefficients {
    pub e_t: f64,
    pub e_v: f64,
    pub e_ttv: f64,
    pub e_vtv: f64,
    pub e_ttttv: f64,
    pub e_vtttv: f64,
    pub e_ttvtv: f64,
    pub e_vtvtv: f64,
}

pub fn raw_error_coefficients(c: CoeffInputs) -> RawCoefficients {
    let CoeffInputs { t0, t1, v1, v2, u0, alpha } = c;

    let e_t = 2.0 * (t0 + t1);
    let e_v = 2.0 * v1 + v2;

    let e_ttv = -(t1 * t1 * (-4.0 * v1 + v2)
        + t0 * t0 * (2.0 * v1 + v2)
        + 2.0 * t0 * t1 * (2.0 * v1 + v2))
        / 6.0;

    let e_vtv = (6.0 * u0 - t0 * (2.0 * v1 + v2).powi(2)
        + t1 * (2.0 * v1 * v1 + 2.0 * v1 * v2 - v2 * v2))
        / 6.0;

    let e_ttttv = (7.0 * t0.powi(3) * (t0 + 4.0 * t1) * (2.0 * v1 + v2)
        + t1.powi(3) * (4.0 * t0 + t1) * (7.0 * v2 - 16.0 * v1)
        + 6.0 * t0 * t0 * t1 * t1 * (4.0 * v1 + 7.0 * v2))
        / 360.0;

    let e_vtttv = (2.0 * t0 * t0 * (t0 + 3.0 * t1) * (2.0 * v1 + v2).powi(2)
        - 6.0 * t0 * t1 * t1 * (6.0 * v1 * v1 + v1 * v2 - v2 * v2)
        + t1.powi(3) * (8.0 * v1 * v1 - 7.0 * v1 * v2 + 2.0 * v2 * v2))
        / 90.0;

    let e_ttvtv = (t0.powi(3) * (2.0 * v1 + v2).powi(2)
        + t1 * t1
            * (10.0 * (3.0 * alpha - 1.0) * u0
                + t1 * (-16.0 * v1 * v1 + 4.0 * v1 * v2 + v2 * v2))
        + t0 * t0 * (-10.0 * u0 + t1 * (2.0 * v1 * v1 + 2.0 * v1 * v2 + 3.0 * v2 * v2))
        + t0 * t1 * (-20.0 * u0 + t1 * (12.0 * v1 * v1 + 2.0 * v1 * v2 + 3.0 * v2 * v2)))
        / 60.0;

    let e_vtvtv = (2.0 * t0 * t0 * (2.0 * v1 + v2).powi(3)
        - 4.0 * t0
            * (2.0 * v1 + v2)
            * (5.0 * u0 + t1 * (v1 * v1 + v1 * v2 - v2 * v2))
        + t1 * (10.0 * u0 * (2.0 * v1 + (3.0 * alpha - 2.0) * v2)
            - t1 * (4.0 * v1.powi(3) + v1 * v1 * v2 + 3.0 * v1 * v2 * v2 - 2.0 * v2.powi(3))))
        / 60.0;

    RawCoefficients { e_t, e_v, e_ttv, e_vtv, e_ttttv, e_vtttv, e_ttvtv, e_vtvtv }
}

/// Weights of the fourth-order family member at drift parameter t0:
/// t1 = 1/2 - t0, v1 = 1/(6(1-2t0)^2), v2 = 1 - 2 v1,
/// u0 = (1 - 1/(1-2t0) + 1/(6(1-2t0)^3)) / 12.
/// These make e_t = e_v = 1 and e_ttv = e_vtv = 0 identically.
pub fn family_point(t0: f64) -> Result<CoeffInputs> {
    let s = 1.0 - 2.0 * t0;
    if s.abs() < 1e-12 {
        return Err(Error::Domain(
            "family_point: t0 = 1/2 makes the kick weights singular".into(),
        ));
    }
    let t1 = 0.5 - t0;
    let v1 = 1.0 / (6.0 * (s * s));
    let v2 = 1.0 - 2.0 * v1;
    let u0 = (1.0 - 1.0 / s + 1.0 / (6.0 * (s * s * s))) / 12.0;
    Ok(CoeffInputs { t0, t1, v1, v2, u0, alpha: 0.0 })
}

/// Family weights with the gradient split set.
pub fn family_inputs(t0: f64, alpha: f64) -> Result<CoeffInputs> {
    let mut c = family_point(t0)?;
    c.alpha = alpha;
    Ok(c)
}

/// Seven-stage embedding of the second-order step D(1/2) K(1, alpha) D(1/2).
pub fn second_order_inputs(alpha: f64) -> CoeffInputs {
    CoeffInputs { t0: 0.25, t1: 0.25, v1: 0.0, v2: 1.0, u0: alpha, alpha: 0.0 }
}

/// Read the coefficient inputs off a scheme's stage list. Accepts the
/// three-stage second-order shape and the seven-stage fourth-order shape.
pub fn scheme_inputs(scheme: &SplittingScheme) -> Result<CoeffInputs> {
    scheme.validate()?;
    let st = &scheme.stages;
    let kinds: Vec<StageKind> = st.iter().map(|s| s.kind).collect();
    use StageKind::{Drift, Kick};
    match kinds.as_slice() {
        [Drift, Kick, Drift] => Ok(CoeffInputs {
            t0: st[0].weight / 2.0,
            t1: st[0].weight / 2.0,
            v1: 0.0,
            v2: st[1].weight,
            u0: st[1].grad_weight,
            alpha: 0.0,
        }),
        [Drift, Kick, Drift, Kick, Drift, Kick, Drift] => {
            let u0 = 2.0 * st[1].grad_weight + st[3].grad_weight;
            let alpha = if u0 == 0.0 { 0.0 } else { 2.0 * st[1].grad_weight / u0 };
            Ok(CoeffInputs {
                t0: st[0].weight,
                t1: st[2].weight,
                v1: st[1].weight,
                v2: st[3].weight,
                u0,
                alpha,
            })
        }
        _ => Err(Error::Domain(format!(
            "scheme '{}' does not match the 3- or 7-stage drift-kick pattern",
            scheme.name
        ))),
    }
}

/// e_ttvtv and e_vtvtv of the fourth-order family, as closed forms in
/// (t0, alpha) after the family constraints have been substituted into the
/// raw polynomials.
pub fn fourth_family_coefficients(t0: f64, alpha: f64) -> Result<(f64, f64)> {
    let s = 1.0 - 2.0 * t0;
    if s.abs() < 1e-12 {
        return Err(Error::Domain(
            "fourth_family_coefficients: t0 = 1/2 is singular".into(),
        ));
    }
    let a = alpha;
    let e_ttvtv = (1.0 + 5.0 * a
        - 12.0 * t0 * (1.0 + 5.0 * a + 20.0 * a * t0 * (-1.0 + t0)))
        / (2880.0 * s);
    let e_vtvtv = (1.0 + 10.0 * a
        - 6.0 * t0
            * (3.0 + 30.0 * a
                - t0 * (9.0 + 210.0 * a
                    + 8.0 * t0
                        * (1.0 - 85.0 * a - 3.0 * t0 * (1.0 - 40.0 * a + 20.0 * a * t0)))))
        / (4320.0 * s.powi(4));
    Ok((e_ttvtv, e_vtvtv))
}

/// Denominator of the correctable-alpha rational function; its root inside
/// the forward window is the pole of `correctable_alpha`.
pub fn correctable_alpha_denominator(t0: f64) -> f64 {
    5.0 * (1.0 - 12.0 * t0 * (1.0 - 2.0 * t0).powi(2))
        * (1.0 - 6.0 * t0 * (1.0 + 2.0 * t0 - 4.0 * t0 * t0))
}

/// The gradient split that equalizes e_ttvtv and e_vtvtv at this t0, making
/// the family member correctable to sixth order. Fails with a pole error
/// where the defining rational function blows up.
pub fn correctable_alpha(t0: f64) -> Result<f64> {
    let den = correctable_alpha_denominator(t0);
    if den.abs() < 1e-9 {
        return Err(Error::Pole(format!(
            "correctable_alpha has a pole at t0 = {t0} (denominator {den:.3e})"
        )));
    }
    let num = 1.0 + 6.0 * t0 * (-3.0 + 4.0 * t0 * (6.0 + t0 * (-23.0 + 24.0 * t0)));
    Ok(num / den)
}

pub fn is_correctable(t0: f64) -> bool {
    correctable_alpha(t0).is_ok()
}

/// Whether (t0, alpha) satisfies the sixth-order correctability criterion
/// e_ttvtv = e_vtvtv to 1e-12.
pub fn is_corrected(t0: f64, alpha: f64) -> Result<bool> {
    let (e_ttvtv, e_vtvtv) = fourth_family_coefficients(t0, alpha)?;
    Ok((e_ttvtv - e_vtvtv).abs() < 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme;

    #[test]
    fn consistency_sums() {
        for t0 in [0.0, 0.05, 1.0 / 6.0, 0.21, 0.3] {
            let c = raw_error_coefficients(family_inputs(t0, 0.37).unwrap());
            assert!((c.e_t - 1.0).abs() < 1e-14);
            assert!((c.e_v - 1.0).abs() < 1e-14);
            assert!(c.e_ttv.abs() < 1e-15, "e_ttv = {} at t0 = {t0}", c.e_ttv);
            assert!(c.e_vtv.abs() < 1e-15, "e_vtv = {} at t0 = {t0}", c.e_vtv);
        }
    }

    #[test]
    fn second_order_embedding_closed_forms() {
        for alpha in [0.0, 1.0 / 24.0, 0.01, 0.3] {
            let c = raw_error_coefficients(second_order_inputs(alpha));
            assert!((c.e_t - 1.0).abs() < 1e-15);
            assert!((c.e_v - 1.0).abs() < 1e-15);
            assert!((c.e_ttv - (-1.0 / 24.0)).abs() < 1e-15);
            assert!((c.e_vtv - (alpha - 1.0 / 12.0)).abs() < 1e-15);
            assert!((c.e_ttvtv - (1.0 / 480.0 - alpha / 24.0)).abs() < 1e-15);
            assert!((c.e_vtvtv - (1.0 / 120.0 - alpha / 6.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn family_point_frozen_values() {
        let f = family_point(0.0).unwrap();
        assert!((f.v1 - 1.0 / 6.0).abs() < 1e-15);
        assert!((f.v2 - 2.0 / 3.0).abs() < 1e-15);
        assert!((f.u0 - 1.0 / 72.0).abs() < 1e-17);

        let f = family_point(1.0 / 6.0).unwrap();
        assert!((f.t1 - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.v1 - 3.0 / 8.0).abs() < 1e-15);
        assert!((f.v2 - 1.0 / 4.0).abs() < 1e-15);
        assert!((f.u0 - 1.0 / 192.0).abs() < 1e-17);

        assert!(family_point(0.5).is_err());
    }

    #[test]
    fn closed_forms_match_raw_polynomials() {
        // 100-point grid over the forward window, a few alphas
        for i in 0..100 {
            let t0 = 0.21 * i as f64 / 99.0;
            for alpha in [0.0, 0.5, 0.9, 1.0] {
                let raw = raw_error_coefficients(family_inputs(t0, alpha).unwrap());
                let (e_ttvtv, e_vtvtv) = fourth_family_coefficients(t0, alpha).unwrap();
                assert!(
                    (raw.e_ttvtv - e_ttvtv).abs() < 1e-12,
                    "e_ttvtv mismatch at t0={t0}, alpha={alpha}: {} vs {e_ttvtv}",
                    raw.e_ttvtv
                );
                assert!(
                    (raw.e_vtvtv - e_vtvtv).abs() < 1e-12,
                    "e_vtvtv mismatch at t0={t0}, alpha={alpha}: {} vs {e_vtvtv}",
                    raw.e_vtvtv
                );
            }
        }
    }

    #[test]
    fn correctable_alpha_frozen_values() {
        // exact rational value at t0 = 1/6: alpha = 9/10
        assert!((correctable_alpha(1.0 / 6.0).unwrap() - 0.9).abs() < 1e-14);
        // equalizes the pair across the forward window
        for i in 0..200 {
            let t0 = 0.21 * i as f64 / 199.0;
            match correctable_alpha(t0) {
                Ok(a) => assert!(is_corrected(t0, a).unwrap(), "not corrected at t0 = {t0}"),
                Err(Error::Pole(_)) => (),
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
    }

    #[test]
    fn pole_location() {
        // the denominator root inside the forward window
        let pole = 0.138_824_137_767_811_85;
        assert!(correctable_alpha_denominator(pole).abs() < 1e-12);
        let before = correctable_alpha_denominator(pole - 1e-6);
        let after = correctable_alpha_denominator(pole + 1e-6);
        assert!(before * after < 0.0, "denominator does not change sign");
    }

    #[test]
    fn scheme_inputs_roundtrip() {
        let c = scheme_inputs(&scheme::algorithm_c()).unwrap();
        let f = family_inputs(1.0 / 6.0, 0.0).unwrap();
        assert_eq!(c, f);

        let s = scheme::four_acb(0.05, 0.3).unwrap();
        let c = scheme_inputs(&s).unwrap();
        assert!((c.u0 - family_point(0.05).unwrap().u0).abs() < 1e-16);
        assert!((c.alpha - 0.3).abs() < 1e-13);

        let c = scheme_inputs(&scheme::takahashi_imada()).unwrap();
        assert_eq!(c, second_order_inputs(1.0 / 24.0));
    }
}
