//! Thin arithmetic context over `astro_float::BigFloat`.
//!
//! Everything that needs more than f64 (frequency/energy series extraction,
//! one-period energy errors near the rounding floor) goes through a `Ctx`
//! that fixes the working precision once. The rest of the crate stays in
//! f64.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::scheme::{SplittingScheme, Stage, StageKind};

/// Working precision in bits for a requested number of decimal digits,
/// with guard bits on top.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32
}

/// Recognize an f64 that is the rounding of a simple fraction: returns
/// (num, den) when `w` lies within `max_ulps` units in the last place of a
/// rational with denominator <= `max_den`. Used to promote scheme weights
/// like fl(1/24) back to the exact value before extended-precision work,
/// so that algebraic cancellations (which hold for the exact weights) are
/// not polluted by ~1e-18 representation dust.
pub fn snap_to_rational(w: f64, max_den: i64, max_ulps: f64) -> Option<(i64, i64)> {
    if !w.is_finite() {
        return None;
    }
    if w == 0.0 {
        return Some((0, 1));
    }
    let target = w.abs();
    let tol = max_ulps * target * f64::EPSILON;
    // continued-fraction convergents of |w|
    let (mut p0, mut q0, mut p1, mut q1): (i64, i64, i64, i64) = (0, 1, 1, 0);
    let mut x = target;
    for _ in 0..64 {
        let a = x.floor();
        if !(a.abs() < 9.0e15) {
            break;
        }
        let ai = a as i64;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if q1 > 0 && (p1 as f64 / q1 as f64 - target).abs() <= tol {
            return Some((if w < 0.0 { -p1 } else { p1 }, q1));
        }
        let frac = x - a;
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

/// A stage with its constants lifted to extended precision.
pub struct BfStage {
    pub kind: StageKind,
    pub weight: BigFloat,
    pub grad_weight: BigFloat,
}

pub struct Ctx {
    /// Precision in bits.
    pub prec: usize,
    /// Requested decimal digits (kept for reporting).
    pub decimal_digits: usize,
    rm: RoundingMode,
    consts: Consts,
}

impl Ctx {
    pub fn with_decimal_digits(digits: usize) -> Self {
        Ctx {
            prec: bits_for_digits(digits),
            decimal_digits: digits,
            rm: RoundingMode::ToEven,
            consts: Consts::new().expect("constants cache"),
        }
    }

    pub fn bf(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn from_usize(&self, n: usize) -> BigFloat {
        BigFloat::from_u64(n as u64, self.prec)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.prec, self.rm)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(self.prec, self.rm, &mut self.consts)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.prec, self.rm)
    }

    pub fn two_pi(&mut self) -> BigFloat {
        let pi = self.pi();
        self.add(&pi, &pi)
    }

    pub fn rational(&self, num: i64, den: i64) -> BigFloat {
        // both fit exactly in f64 for the ranges snap_to_rational emits
        self.div(&self.bf(num as f64), &self.bf(den as f64))
    }

    /// Embed a stage weight: exact-fraction value when recognizable
    /// (within 4 ulps, denominator <= 4096), the exact f64 otherwise.
    pub fn bf_weight(&self, w: f64) -> BigFloat {
        match snap_to_rational(w, 4096, 4.0) {
            Some((n, d)) => self.rational(n, d),
            None => self.bf(w),
        }
    }

    /// Embed a scheme parameter (t0 or alpha). Parameters sit at the top
    /// of derivation chains, so values like fl(alpha(1/6)) drift tens of
    /// ulps from the intended 9/10; the snap window is wider here.
    pub fn bf_param(&self, w: f64) -> BigFloat {
        match snap_to_rational(w, 4096, 64.0) {
            Some((n, d)) => self.rational(n, d),
            None => self.bf(w),
        }
    }

    /// Stage constants of `scheme` in extended precision.
    ///
    /// When the scheme is an intact constructor product (its `params`
    /// carry t0/alpha and rebuilding from them reproduces the stage list
    /// bit for bit), the constants are rederived here from the snapped
    /// parameters, so a member like (t0 = 1/6, alpha = 9/10) is evaluated
    /// as the exact mathematical member rather than its f64 shadow.
    /// Anything else falls back to per-weight embedding via `bf_weight`.
    pub fn scheme_stages(&self, scheme: &SplittingScheme) -> Vec<BfStage> {
        if let (Some(t0), Some(alpha)) = (scheme.param("t0"), scheme.param("alpha")) {
            if let Ok(reference) = crate::scheme::four_acb(t0, alpha) {
                if stages_identical(&scheme.stages, &reference.stages) {
                    let t0b = self.bf_param(t0);
                    // a corrected member's alpha is defined by t0; recompute
                    // it at working precision so the pair cancellation it
                    // exists for is exact, not rounded through f64
                    let ab = if scheme.param("corrected").is_some() {
                        self.correctable_alpha_bf(&t0b)
                    } else {
                        self.bf_param(alpha)
                    };
                    return self.four_acb_stages(&t0b, &ab);
                }
            }
        }
        if let Some(alpha) = scheme.param("alpha") {
            let reference = crate::scheme::second_order(alpha);
            if stages_identical(&scheme.stages, &reference.stages) {
                return self.second_order_stages(alpha);
            }
        }
        scheme
            .stages
            .iter()
            .map(|s| BfStage {
                kind: s.kind,
                weight: self.bf_weight(s.weight),
                grad_weight: self.bf_weight(s.grad_weight),
            })
            .collect()
    }

    fn second_order_stages(&self, alpha: f64) -> Vec<BfStage> {
        let half = self.bf(0.5);
        let one = self.bf(1.0);
        let zero = self.bf(0.0);
        let a = self.bf_param(alpha);
        vec![
            BfStage { kind: StageKind::Drift, weight: half.clone(), grad_weight: zero.clone() },
            BfStage { kind: StageKind::Kick, weight: one, grad_weight: a },
            BfStage { kind: StageKind::Drift, weight: half, grad_weight: zero },
        ]
    }

    /// The gradient split equalizing the fifth-order pair, as a function of
    /// t0 at working precision:
    ///   num = 1 + 6 t0 (-3 + 4 t0 (6 + t0 (-23 + 24 t0)))
    ///   den = 5 (1 - 12 t0 (1 - 2 t0)^2) (1 - 6 t0 (1 + 2 t0 - 4 t0^2))
    pub fn correctable_alpha_bf(&self, t0: &BigFloat) -> BigFloat {
        let one = self.bf(1.0);
        let mut horner = self.mul(&self.bf(24.0), t0);
        horner = self.add(&horner, &self.bf(-23.0));
        horner = self.mul(&horner, t0);
        horner = self.add(&horner, &self.bf(6.0));
        horner = self.mul(&horner, &self.mul(&self.bf(4.0), t0));
        horner = self.add(&horner, &self.bf(-3.0));
        let num = self.add(&one, &self.mul(&self.mul(&self.bf(6.0), t0), &horner));

        let s = self.sub(&one, &self.mul(&self.bf(2.0), t0));
        let f1 = self.sub(&one, &self.mul(&self.mul(&self.bf(12.0), t0), &self.mul(&s, &s)));
        let q = {
            let t2 = self.mul(&self.bf(2.0), t0);
            let t2sq = self.mul(&self.mul(&self.bf(4.0), t0), t0);
            self.sub(&self.add(&one, &t2), &t2sq)
        };
        let f2 = self.sub(&one, &self.mul(&self.mul(&self.bf(6.0), t0), &q));
        let den = self.mul(&self.bf(5.0), &self.mul(&f1, &f2));
        self.div(&num, &den)
    }

    fn four_acb_stages(&self, t0b: &BigFloat, ab: &BigFloat) -> Vec<BfStage> {
        let one = self.bf(1.0);
        let two = self.bf(2.0);
        let half = self.bf(0.5);
        let six = self.bf(6.0);
        let twelve = self.bf(12.0);
        let zero = self.bf(0.0);

        let s = self.sub(&one, &self.mul(&two, t0b));
        let t1 = self.sub(&half, t0b);
        let s2 = self.mul(&s, &s);
        let s3 = self.mul(&s2, &s);
        let v1 = self.div(&one, &self.mul(&six, &s2));
        let v2 = self.sub(&one, &self.mul(&two, &v1));
        // u0 = (1 - 1/s + 1/(6 s^3)) / 12
        let u0 = {
            let inv_s = self.div(&one, &s);
            let inv_6s3 = self.div(&one, &self.mul(&six, &s3));
            let t = self.add(&self.sub(&one, &inv_s), &inv_6s3);
            self.div(&t, &twelve)
        };
        let outer_u = self.mul(&half, &self.mul(ab, &u0));
        let central_u = self.mul(&self.sub(&one, ab), &u0);

        vec![
            BfStage { kind: StageKind::Drift, weight: t0b.clone(), grad_weight: zero.clone() },
            BfStage { kind: StageKind::Kick, weight: v1.clone(), grad_weight: outer_u.clone() },
            BfStage { kind: StageKind::Drift, weight: t1.clone(), grad_weight: zero.clone() },
            BfStage { kind: StageKind::Kick, weight: v2, grad_weight: central_u },
            BfStage { kind: StageKind::Drift, weight: t1, grad_weight: zero.clone() },
            BfStage { kind: StageKind::Kick, weight: v1, grad_weight: outer_u },
            BfStage { kind: StageKind::Drift, weight: t0b.clone(), grad_weight: zero },
        ]
    }
}

fn stages_identical(a: &[Stage], b: &[Stage]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.kind == y.kind
                && x.weight.to_bits() == y.weight.to_bits()
                && x.grad_weight.to_bits() == y.grad_weight.to_bits()
        })
}

/// Convert back to f64. `astro_float` 0.9 exposes no such conversion, so we
/// rebuild the value from the raw mantissa words: they are little-endian
/// with the top bit of the last word set, representing m in [1/2, 1) with
/// value m * 2^exponent. The top two words carry far more than 53 bits, so
/// the result is accurate to <= 1 ulp (and exact for values that came from
/// an f64).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let (words, _prec, sign, exp, _inexact) =
        x.as_raw_parts().expect("finite nonzero value has raw parts");
    let k = words.len();
    let hi = words[k - 1] as f64;
    let lo = if k >= 2 { words[k - 2] as f64 } else { 0.0 };
    let m = hi * 2f64.powi(-64) + lo * 2f64.powi(-128);
    let v = m * 2f64.powi(exp);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_exact_for_f64_inputs() {
        let ctx = Ctx::with_decimal_digits(60);
        let mut samples = vec![
            0.0,
            1.0,
            -1.0,
            0.1,
            -3.5e-9,
            7.718621317057857e-7,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e300,
            -1e-300,
            f64::MIN_POSITIVE,
        ];
        // a deterministic spread across exponents and mantissas
        let mut x = 1.2345678901234567e-250;
        for _ in 0..200 {
            samples.push(x);
            samples.push(-x);
            x *= 317.0451;
        }
        for s in samples {
            let back = to_f64(&ctx.bf(s));
            assert!(
                back == s,
                "roundtrip broke: {s:e} -> {back:e} (bits {:x} vs {:x})",
                s.to_bits(),
                back.to_bits()
            );
        }
    }

    #[test]
    fn special_values() {
        let ctx = Ctx::with_decimal_digits(30);
        assert!(to_f64(&ctx.bf(f64::NAN)).is_nan());
        assert_eq!(to_f64(&ctx.bf(f64::INFINITY)), f64::INFINITY);
        assert_eq!(to_f64(&ctx.bf(f64::NEG_INFINITY)), f64::NEG_INFINITY);
        assert_eq!(to_f64(&ctx.bf(0.0)), 0.0);
    }

    #[test]
    fn transcendental_spot_checks() {
        let mut ctx = Ctx::with_decimal_digits(60);
        let pi = ctx.pi();
        assert!((to_f64(&pi) - std::f64::consts::PI).abs() < 1e-15);

        // acos(1/2) = pi/3
        let x = ctx.bf(0.5);
        let third = ctx.acos(&x);
        let expect = std::f64::consts::PI / 3.0;
        assert!((to_f64(&third) - expect).abs() < 1e-15);

        // sqrt(2)^2 = 2 to working precision
        let two = ctx.bf(2.0);
        let r = ctx.sqrt(&two);
        let sq = ctx.mul(&r, &r);
        let err = to_f64(&ctx.sub(&sq, &two)).abs();
        assert!(err < 1e-55, "sqrt(2)^2 - 2 = {err:e}");
    }

    #[test]
    fn snap_recognizes_simple_fractions() {
        assert_eq!(snap_to_rational(1.0 / 24.0, 4096, 4.0), Some((1, 24)));
        assert_eq!(snap_to_rational(1.0 / 3.0, 4096, 4.0), Some((1, 3)));
        assert_eq!(snap_to_rational(0.375, 4096, 4.0), Some((3, 8)));
        assert_eq!(snap_to_rational(-(1.0 / 6.0), 4096, 4.0), Some((-1, 6)));
        assert_eq!(snap_to_rational(0.0, 4096, 4.0), Some((0, 1)));
        assert_eq!(snap_to_rational(std::f64::consts::PI, 4096, 4.0), None);
        // 0.166160 = 2077/12500: denominator above the cap, must not snap
        assert_eq!(snap_to_rational(0.166_160, 4096, 4.0), None);
        // 12 explicit digits of 1/3 are 3e-13 away from 1/3: not a rounding
        assert_eq!(snap_to_rational(0.333333333333, 4096, 4.0), None);
    }

    #[test]
    fn constructor_schemes_rebuild_exactly_in_extended_precision() {
        use crate::coeffs::correctable_alpha;
        use crate::scheme::{four_acb, second_order, StageKind};

        let ctx = Ctx::with_decimal_digits(60);
        let abs_err = |x: &BigFloat, num: i64, den: i64| -> f64 {
            to_f64(&ctx.sub(x, &ctx.rational(num, den))).abs()
        };

        // the corrected t0 = 1/6 member: every constant is a known fraction
        let alpha = correctable_alpha(1.0 / 6.0).unwrap();
        let scheme = four_acb(1.0 / 6.0, alpha).unwrap();
        let st = ctx.scheme_stages(&scheme);
        assert_eq!(st.len(), 7);
        assert!(abs_err(&st[0].weight, 1, 6) < 1e-65);
        assert!(abs_err(&st[1].weight, 3, 8) < 1e-65);
        assert!(abs_err(&st[1].grad_weight, 3, 1280) < 1e-65);
        assert!(abs_err(&st[2].weight, 1, 3) < 1e-65);
        assert!(abs_err(&st[3].weight, 1, 4) < 1e-65);
        assert!(abs_err(&st[3].grad_weight, 1, 1920) < 1e-65);

        let ti = second_order(1.0 / 24.0);
        let st = ctx.scheme_stages(&ti);
        assert!(abs_err(&st[1].grad_weight, 1, 24) < 1e-65);

        // raw stage lists (no params) fall back to per-weight embedding:
        // unrecognizable weights stay bit-exact f64
        let mut raw = second_order(0.123_456_789_012);
        raw.params.clear();
        let st = ctx.scheme_stages(&raw);
        assert!(to_f64(&ctx.sub(&st[1].grad_weight, &ctx.bf(0.123_456_789_012))) == 0.0);
    }

    #[test]
    fn precision_carries_sixty_digits() {
        let ctx = Ctx::with_decimal_digits(60);
        // (1/3) * 3 - 1 should vanish to ~60 digits
        let third = ctx.div(&ctx.bf(1.0), &ctx.bf(3.0));
        let one = ctx.mul(&third, &ctx.bf(3.0));
        let resid = to_f64(&ctx.sub(&one, &ctx.bf(1.0))).abs();
        assert!(resid < 1e-58, "residual {resid:e}");
    }
}
