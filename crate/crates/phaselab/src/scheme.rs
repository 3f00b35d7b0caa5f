//! Operator-splitting schemes built from drifts and kicks.
//!
//! A scheme is an ordered list of stages applied left to right over one time
//! step of size eps:
//!
//! * drift with weight `c`:  q += eps * c * p
//! * kick with weight `v` and gradient weight `u`:
//!   p += eps * v * F(q) + eps^3 * u * G(q),    G = grad |F|^2
//!
//! Two families are built in. `second_order(alpha)` is the palindromic
//! drift-kick-drift step whose single kick carries the full force-gradient
//! weight `alpha`. `four_acb(t0, alpha)` is the seven-stage fourth-order
//! forward family: the free drift weight `t0` fixes all kick weights, and
//! `alpha` splits the total gradient weight `u0` between the outer kicks
//! (alpha/2 each) and the central kick (1 - alpha).

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Drift,
    Kick,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub kind: StageKind,
    pub weight: f64,
    /// Strength of the eps^3 force-gradient term; only meaningful on kicks.
    pub grad_weight: f64,
}

impl Stage {
    pub fn drift(weight: f64) -> Self {
        Stage { kind: StageKind::Drift, weight, grad_weight: 0.0 }
    }

    pub fn kick(weight: f64, grad_weight: f64) -> Self {
        Stage { kind: StageKind::Kick, weight, grad_weight }
    }
}

/// Largest t0 for which every kick weight of the seven-stage family stays
/// non-negative: (1 - 1/sqrt(3))/2, where the central weight v2 reaches zero.
pub const FORWARD_T0_LIMIT: f64 = 0.211_324_865_405_187_1;

#[derive(Debug, Clone, PartialEq)]
pub struct SplittingScheme {
    pub name: String,
    pub nominal_order: u32,
    pub stages: Vec<Stage>,
    /// Constructor parameters (e.g. `t0`, `alpha`) recorded for reporting;
    /// free-form schemes loaded from files may leave this empty.
    pub params: BTreeMap<String, f64>,
}

/// Second-order drift-kick-drift step; `alpha` is the force-gradient weight
/// on the central kick (0 gives the plain leapfrog step).
pub fn second_order(alpha: f64) -> SplittingScheme {
    SplittingScheme {
        name: format!("second-order(alpha={alpha})"),
        nominal_order: 2,
        stages: vec![Stage::drift(0.5), Stage::kick(1.0, alpha), Stage::drift(0.5)],
        params: BTreeMap::from([("alpha".to_string(), alpha)]),
    }
}

/// Seven-stage fourth-order family. Fails for t0 = 1/2 where the kick-weight
/// formulas are singular. Values of t0 outside [0, FORWARD_T0_LIMIT] are
/// accepted but produce a scheme with a negative kick weight; check
/// `is_forward` if that matters for your application.
pub fn four_acb(t0: f64, alpha: f64) -> Result<SplittingScheme> {
    let s = 1.0 - 2.0 * t0;
    if s.abs() < 1e-12 {
        return Err(Error::Domain(
            "four_acb: t0 = 1/2 makes the kick weights singular".into(),
        ));
    }
    let t1 = 0.5 - t0;
    let v1 = 1.0 / (6.0 * (s * s));
    let v2 = 1.0 - 2.0 * v1;
    let u0 = (1.0 - 1.0 / s + 1.0 / (6.0 * (s * s * s))) / 12.0;
    let outer_u = 0.5 * alpha * u0;
    let central_u = (1.0 - alpha) * u0;
    Ok(SplittingScheme {
        name: format!("4acb(t0={t0},alpha={alpha})"),
        nominal_order: 4,
        stages: vec![
            Stage::drift(t0),
            Stage::kick(v1, outer_u),
            Stage::drift(t1),
            Stage::kick(v2, central_u),
            Stage::drift(t1),
            Stage::kick(v1, outer_u),
            Stage::drift(t0),
        ],
        params: BTreeMap::from([("t0".to_string(), t0), ("alpha".to_string(), alpha)]),
    })
}

/// The corrected family member at t0: alpha is bound to the value that
/// equalizes the fifth-order coefficient pair. A marker param records that
/// alpha is a function of t0, so extended-precision consumers can recompute
/// it at working precision instead of trusting the f64 rounding here —
/// the pair cancellation this member exists for is otherwise lost in the
/// last bits.
pub fn corrected_four_acb(t0: f64) -> Result<SplittingScheme> {
    let alpha = crate::coeffs::correctable_alpha(t0)?;
    let mut s = four_acb(t0, alpha)?;
    s.name = format!("4acb(t0={t0},alpha=corrected)");
    s.params.insert("corrected".to_string(), 1.0);
    Ok(s)
}

/// The t0 = 1/6 member of the fourth-order family with a single central
/// force gradient (alpha = 0): kick weights 3/8, 1/4, 3/8 and u0 = 1/192.
pub fn algorithm_c() -> SplittingScheme {
    let mut s = four_acb(1.0 / 6.0, 0.0).expect("t0 = 1/6 is regular");
    s.name = "C".to_string();
    s
}

/// The precession-optimized member t0 = 0.166160, alpha = 0.
pub fn algorithm_opt_c() -> SplittingScheme {
    let mut s = four_acb(0.166_160, 0.0).expect("t0 = 0.166160 is regular");
    s.name = "Opt-C".to_string();
    s
}

/// Takahashi-Imada step: second order with alpha = 1/24, the unique
/// gradient weight that equalizes the paired second-order error
/// coefficients and removes the leading phase error.
pub fn takahashi_imada() -> SplittingScheme {
    let mut s = second_order(1.0 / 24.0);
    s.name = "TI".to_string();
    s
}

pub fn leapfrog() -> SplittingScheme {
    let mut s = second_order(0.0);
    s.name = "leapfrog".to_string();
    s
}

impl SplittingScheme {
    /// Structural invariants: stages exist and are finite, drift weights sum
    /// to 1, kick weights sum to 1 (both to 1e-12), the stage list is a
    /// palindrome, and drifts carry no gradient weight.
    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::invalid_scheme("non-empty", "scheme has no stages"));
        }
        for (i, st) in self.stages.iter().enumerate() {
            if !st.weight.is_finite() || !st.grad_weight.is_finite() {
                return Err(Error::invalid_scheme(
                    "finite-weights",
                    format!("stage {i} has a non-finite weight"),
                ));
            }
            if st.kind == StageKind::Drift && st.grad_weight != 0.0 {
                return Err(Error::invalid_scheme(
                    "drift-grad-weight",
                    format!("drift stage {i} has grad_weight {}", st.grad_weight),
                ));
            }
        }
        let tol = 1e-12;
        let drift_sum: f64 = self
            .stages
            .iter()
            .filter(|s| s.kind == StageKind::Drift)
            .map(|s| s.weight)
            .sum();
        if (drift_sum - 1.0).abs() > tol {
            return Err(Error::invalid_scheme(
                "drift-weight-sum",
                format!("drift weights sum to {drift_sum}, expected 1"),
            ));
        }
        let kick_sum: f64 = self
            .stages
            .iter()
            .filter(|s| s.kind == StageKind::Kick)
            .map(|s| s.weight)
            .sum();
        if (kick_sum - 1.0).abs() > tol {
            return Err(Error::invalid_scheme(
                "kick-weight-sum",
                format!("kick weights sum to {kick_sum}, expected 1"),
            ));
        }
        let n = self.stages.len();
        for i in 0..n / 2 {
            let a = &self.stages[i];
            let b = &self.stages[n - 1 - i];
            if a.kind != b.kind
                || (a.weight - b.weight).abs() > tol
                || (a.grad_weight - b.grad_weight).abs() > tol
            {
                return Err(Error::invalid_scheme(
                    "palindrome",
                    format!("stage {i} does not mirror stage {}", n - 1 - i),
                ));
            }
        }
        Ok(())
    }

    /// True when every drift and kick weight is non-negative (gradient
    /// weights are exempt: they enter at eps^3 and do not move the
    /// trajectory backward in time).
    pub fn is_forward(&self) -> bool {
        self.stages.iter().all(|s| s.weight >= 0.0)
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }

    pub fn n_drifts(&self) -> usize {
        self.stages.iter().filter(|s| s.kind == StageKind::Drift).count()
    }

    pub fn n_kicks(&self) -> usize {
        self.stages.iter().filter(|s| s.kind == StageKind::Kick).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_order_shape() {
        let s = second_order(0.03);
        assert_eq!(s.nominal_order, 2);
        assert_eq!(s.stages.len(), 3);
        assert_eq!(s.stages[0], Stage::drift(0.5));
        assert_eq!(s.stages[1], Stage::kick(1.0, 0.03));
        assert_eq!(s.stages[2], Stage::drift(0.5));
        s.validate().unwrap();
        assert!(s.is_forward());
    }

    #[test]
    fn four_acb_weights_at_one_sixth() {
        let s = algorithm_c();
        assert_eq!(s.nominal_order, 4);
        assert_eq!(s.stages.len(), 7);
        let w: Vec<f64> = s.stages.iter().map(|st| st.weight).collect();
        let expect = [1.0 / 6.0, 3.0 / 8.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 3.0, 3.0 / 8.0, 1.0 / 6.0];
        for (a, b) in w.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15, "weight {a} != {b}");
        }
        // single central gradient kick carrying u0 = 1/192
        assert_eq!(s.stages[1].grad_weight, 0.0);
        assert!((s.stages[3].grad_weight - 1.0 / 192.0).abs() < 1e-17);
        s.validate().unwrap();
        assert!(s.is_forward());
    }

    #[test]
    fn four_acb_weights_at_zero() {
        let s = four_acb(0.0, 0.25).unwrap();
        assert!((s.stages[1].weight - 1.0 / 6.0).abs() < 1e-15);
        assert!((s.stages[3].weight - 2.0 / 3.0).abs() < 1e-15);
        // u0 = 1/72 split as alpha/2 = 1/8 outer, 3/4 central
        assert!((s.stages[1].grad_weight - 0.25 / 2.0 / 72.0).abs() < 1e-18);
        assert!((s.stages[3].grad_weight - 0.75 / 72.0).abs() < 1e-18);
        s.validate().unwrap();
        assert!(s.is_forward());
    }

    #[test]
    fn forward_window_boundary() {
        assert!(four_acb(FORWARD_T0_LIMIT, 0.0).unwrap().is_forward());
        assert!(!four_acb(FORWARD_T0_LIMIT + 1e-6, 0.0).unwrap().is_forward());
        // negative drift weight outside the window, but still a valid scheme
        let s = four_acb(0.24, 0.0).unwrap();
        s.validate().unwrap();
        assert!(!s.is_forward());
    }

    #[test]
    fn half_is_out_of_domain() {
        assert!(matches!(four_acb(0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn validation_names_the_failed_invariant() {
        let mut s = algorithm_c();
        s.stages[2].weight += 1e-6;
        let err = s.validate().unwrap_err();
        match err {
            Error::InvalidScheme { invariant, .. } => {
                // the symmetric partner no longer matches first
                assert!(invariant == "palindrome" || invariant == "drift-weight-sum");
            }
            other => panic!("unexpected error {other:?}"),
        }

        let mut s = algorithm_c();
        s.stages[0].weight += 2e-12;
        s.stages[6].weight += 2e-12;
        let err = s.validate().unwrap_err();
        match err {
            Error::InvalidScheme { invariant, .. } => assert_eq!(invariant, "drift-weight-sum"),
            other => panic!("unexpected error {other:?}"),
        }

        let mut s = second_order(0.0);
        s.stages[0].grad_weight = 0.1;
        let err = s.validate().unwrap_err();
        match err {
            Error::InvalidScheme { invariant, .. } => assert_eq!(invariant, "drift-grad-weight"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn presets_have_expected_parameters() {
        assert_eq!(algorithm_c().param("t0"), Some(1.0 / 6.0));
        assert_eq!(algorithm_opt_c().param("t0"), Some(0.166_160));
        assert_eq!(takahashi_imada().param("alpha"), Some(1.0 / 24.0));
        assert_eq!(leapfrog().param("alpha"), Some(0.0));
    }
}
