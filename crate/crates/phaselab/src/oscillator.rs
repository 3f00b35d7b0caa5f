//! Harmonic-oscillator diagnostics via the matrix method.
//!
//! For V = (1/2) w^2 q^2 every drift and kick is linear, so one step of a
//! splitting scheme is a 2x2 matrix M(eps) acting on (q, p). Since
//! det M = 1, the step is stable when |tr M|/2 <= 1 and the scheme then
//! rotates phase space by an *approximate frequency*
//!
//! ```text
//! w_A(eps) = arccos(tr M / 2) / eps.
//! ```
//!
//! The relative frequency error w_A/w - 1 is an even power series in eps
//! whose coefficients are extracted here by evaluating the matrix on a
//! geometric eps-ladder in extended precision and fitting a polynomial in
//! x = eps^2 (Newton divided differences on a geometric ladder, i.e.
//! iterated Richardson extrapolation). The same machinery fits the
//! one-period energy error ladder, where eps = T/N must be taken exactly:
//! the period is closed by computing M^N with eps = (2 pi / w)/N in
//! extended precision.

use astro_float::BigFloat;

use crate::bigfloat::{to_f64, Ctx};
use crate::coeffs::{scheme_inputs, RawCoefficients};
use crate::error::{Error, Result};
use crate::scheme::{SplittingScheme, StageKind};

/// One splitting step on the oscillator as a row-major 2x2 matrix over
/// (q, p), built stage by stage in f64.
pub fn step_matrix_f64(scheme: &SplittingScheme, omega: f64, eps: f64) -> [f64; 4] {
    let w2 = omega * omega;
    let gp = 2.0 * w2 * w2; // d/dq of grad |F|^2 = 2 w^4 q
    let eps3 = eps * eps * eps;
    let mut m = [1.0, 0.0, 0.0, 1.0];
    for st in &scheme.stages {
        match st.kind {
            StageKind::Drift => {
                let c = eps * st.weight;
                // [[1, c], [0, 1]] * m
                m[0] += c * m[2];
                m[1] += c * m[3];
            }
            StageKind::Kick => {
                let k = -eps * st.weight * w2 + eps3 * st.grad_weight * gp;
                // [[1, 0], [k, 1]] * m
                m[2] += k * m[0];
                m[3] += k * m[1];
            }
        }
    }
    m
}

/// Same construction in extended precision. `eps` is taken exactly as
/// given (callers building eps = T/N divide in extended precision first).
pub fn step_matrix_bf(
    scheme: &SplittingScheme,
    omega: f64,
    eps: &BigFloat,
    ctx: &Ctx,
) -> [BigFloat; 4] {
    let wb = ctx.bf(omega);
    let w2 = ctx.mul(&wb, &wb);
    let gp = {
        let w4 = ctx.mul(&w2, &w2);
        ctx.add(&w4, &w4)
    };
    let eps3 = ctx.mul(&ctx.mul(eps, eps), eps);
    let mut m = [ctx.bf(1.0), ctx.bf(0.0), ctx.bf(0.0), ctx.bf(1.0)];
    for st in &ctx.scheme_stages(scheme) {
        match st.kind {
            StageKind::Drift => {
                let c = ctx.mul(eps, &st.weight);
                m[0] = ctx.add(&m[0], &ctx.mul(&c, &m[2]));
                m[1] = ctx.add(&m[1], &ctx.mul(&c, &m[3]));
            }
            StageKind::Kick => {
                let kick = ctx.mul(&ctx.mul(eps, &st.weight), &w2).neg();
                let grad = ctx.mul(&ctx.mul(&eps3, &st.grad_weight), &gp);
                let k = ctx.add(&kick, &grad);
                m[2] = ctx.add(&m[2], &ctx.mul(&k, &m[0]));
                m[3] = ctx.add(&m[3], &ctx.mul(&k, &m[1]));
            }
        }
    }
    m
}

fn mat_mul(ctx: &Ctx, a: &[BigFloat; 4], b: &[BigFloat; 4]) -> [BigFloat; 4] {
    [
        ctx.add(&ctx.mul(&a[0], &b[0]), &ctx.mul(&a[1], &b[2])),
        ctx.add(&ctx.mul(&a[0], &b[1]), &ctx.mul(&a[1], &b[3])),
        ctx.add(&ctx.mul(&a[2], &b[0]), &ctx.mul(&a[3], &b[2])),
        ctx.add(&ctx.mul(&a[2], &b[1]), &ctx.mul(&a[3], &b[3])),
    ]
}

fn mat_pow(ctx: &Ctx, m: &[BigFloat; 4], mut n: usize) -> [BigFloat; 4] {
    let mut result = [ctx.bf(1.0), ctx.bf(0.0), ctx.bf(0.0), ctx.bf(1.0)];
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = mat_mul(ctx, &base, &result);
        }
        base = mat_mul(ctx, &base, &base);
        n >>= 1;
    }
    result
}

/// Approximate frequency of the scheme on the oscillator at step size eps,
/// in plain f64. Fails with `Unstable` outside the stability window.
pub fn approx_frequency(scheme: &SplittingScheme, omega: f64, eps: f64) -> Result<f64> {
    let m = step_matrix_f64(scheme, omega, eps);
    let ht = 0.5 * (m[0] + m[3]);
    if ht.abs() > 1.0 {
        return Err(Error::Unstable { eps, half_trace: ht });
    }
    Ok(ht.acos() / eps)
}

/// Extended-precision approximate frequency.
pub fn approx_frequency_bf(
    scheme: &SplittingScheme,
    omega: f64,
    eps: &BigFloat,
    ctx: &mut Ctx,
) -> Result<BigFloat> {
    let m = step_matrix_bf(scheme, omega, eps, ctx);
    let ht = ctx.mul(&ctx.add(&m[0], &m[3]), &ctx.bf(0.5));
    if ht.abs() > ctx.bf(1.0) {
        return Err(Error::Unstable {
            eps: to_f64(eps),
            half_trace: to_f64(&ht),
        });
    }
    let angle = ctx.acos(&ht);
    Ok(ctx.div(&angle, eps))
}

/// Newton divided differences through (xs, ys), expanded to monomial
/// coefficients: returns c with y = sum_j c[j] x^j.
fn newton_monomial(ctx: &Ctx, xs: &[BigFloat], ys: &[BigFloat]) -> Vec<BigFloat> {
    let n = xs.len();
    let mut table: Vec<BigFloat> = ys.to_vec();
    let mut newton: Vec<BigFloat> = vec![table[0].clone()];
    for j in 1..n {
        for i in 0..n - j {
            let dy = ctx.sub(&table[i + 1], &table[i]);
            let dx = ctx.sub(&xs[i + j], &xs[i]);
            table[i] = ctx.div(&dy, &dx);
        }
        newton.push(table[0].clone());
    }
    // Horner-style expansion of c0 + (x-x0)(c1 + (x-x1)(...))
    let mut poly: Vec<BigFloat> = vec![newton[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly <- poly * (x - x_i) + newton[i]
        let mut next = vec![ctx.bf(0.0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = ctx.add(&next[k + 1], c);
            next[k] = ctx.sub(&next[k], &ctx.mul(c, &xs[i]));
        }
        next[0] = ctx.add(&next[0], &newton[i]);
        poly = next;
    }
    poly
}

/// Convergence guard for a ladder fit: the contribution of successive
/// Newton terms, evaluated at the finest ladder point, must fall off once
/// past its peak (up to a noise floor well below the peak). A ladder that
/// violates this is not resolving a power series and the coefficients
/// cannot be trusted.
fn check_ladder_convergence(ctx: &Ctx, xs: &[BigFloat], ys: &[BigFloat]) -> Result<()> {
    let n = xs.len();
    let x_min = &xs[n - 1];
    // rebuild the Newton coefficients (cheap next to the matrix work)
    let mut table: Vec<BigFloat> = ys.to_vec();
    let mut contrib: Vec<f64> = Vec::with_capacity(n);
    let mut factor = ctx.bf(1.0);
    contrib.push(to_f64(&table[0].abs()));
    for j in 1..n {
        for i in 0..n - j {
            let dy = ctx.sub(&table[i + 1], &table[i]);
            let dx = ctx.sub(&xs[i + j], &xs[i]);
            table[i] = ctx.div(&dy, &dx);
        }
        factor = ctx.mul(&factor, &ctx.sub(x_min, &xs[j - 1]));
        contrib.push(to_f64(&ctx.mul(&table[0], &factor).abs()));
    }
    let peak = contrib.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(()); // identically zero ladder: nothing to check
    }
    let floor = peak * 1e-40;
    let peak_j = contrib
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(j, _)| j)
        .unwrap();
    for j in peak_j + 1..n {
        if contrib[j] > floor && contrib[j] >= contrib[j - 1] && contrib[j - 1] > floor {
            return Err(Error::Extraction(format!(
                "ladder term {j} did not decrease ({:.3e} after {:.3e}); \
                 the step-size ladder is not in the convergent regime",
                contrib[j],
                contrib[j - 1]
            )));
        }
    }
    Ok(())
}

/// Power series of w_A/w - 1 in the dimensionless step w*eps, extracted
/// from a geometric eps-ladder. `coeffs[j]` multiplies (w eps)^(2j); the
/// constant term is a rounding residual and should sit at the extraction
/// floor.
#[derive(Debug)]
pub struct FrequencySeries {
    pub omega: f64,
    pub eps0: f64,
    pub depth: usize,
    pub coeffs: Vec<BigFloat>,
}

impl FrequencySeries {
    /// Coefficient of (w eps)^n (n even, n/2 < depth).
    pub fn coefficient(&self, eps_power: usize) -> Option<&BigFloat> {
        if eps_power % 2 != 0 {
            return None;
        }
        self.coeffs.get(eps_power / 2)
    }

    pub fn coefficient_f64(&self, eps_power: usize) -> Option<f64> {
        self.coefficient(eps_power).map(to_f64)
    }

    /// Per-period phase error coefficients: delta-phi = 2 pi (w_A/w - 1).
    pub fn phase_coefficient_f64(&self, eps_power: usize) -> Option<f64> {
        self.coefficient_f64(eps_power)
            .map(|c| 2.0 * std::f64::consts::PI * c)
    }
}

/// Default ladder top for `frequency_series`.
pub fn default_freq_eps0(omega: f64) -> f64 {
    0.01 / omega
}

/// Extract the frequency-error series on the ladder eps_k = eps0 / 2^k,
/// k = 0..depth-1. Needs depth >= 2; the ladder must stay inside the
/// stability window (eps0 ~ 0.01/w always is).
pub fn frequency_series(
    scheme: &SplittingScheme,
    omega: f64,
    eps0: f64,
    depth: usize,
    ctx: &mut Ctx,
) -> Result<FrequencySeries> {
    if depth < 2 {
        return Err(Error::Usage("frequency_series needs depth >= 2".into()));
    }
    let mut xs = Vec::with_capacity(depth);
    let mut ys = Vec::with_capacity(depth);
    let w = ctx.bf(omega);
    let mut eps_f = eps0;
    for _ in 0..depth {
        let eps = ctx.bf(eps_f);
        let wa = approx_frequency_bf(scheme, omega, &eps, ctx)?;
        let y = ctx.sub(&ctx.div(&wa, &w), &ctx.bf(1.0));
        let x = ctx.mul(&eps, &w);
        xs.push(ctx.mul(&x, &x));
        ys.push(y);
        eps_f *= 0.5;
    }
    check_ladder_convergence(ctx, &xs, &ys)?;
    let coeffs = newton_monomial(ctx, &xs, &ys);
    Ok(FrequencySeries { omega, eps0, depth, coeffs })
}

/// Effective oscillator parameters through fourth order in eps: the scheme
/// follows the flow of H* = p^2/(2 m*) + (1/2) k* q^2 with
/// m* = (1 + 2 e2 w2 e_ttv - 4 e4 w4 e_ttvtv)^-1 and
/// k* = w^2 (1 - 2 e2 w2 e_vtv + 4 e4 w4 e_vtvtv), where e2 = eps^2 w^2.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveParams {
    pub m_star: f64,
    pub k_star: f64,
}

impl EffectiveParams {
    pub fn omega_star(&self) -> f64 {
        (self.k_star / self.m_star).sqrt()
    }
}

pub fn effective_params(
    scheme: &SplittingScheme,
    omega: f64,
    eps: f64,
) -> Result<EffectiveParams> {
    let c = crate::coeffs::raw_error_coefficients(scheme_inputs(scheme)?);
    let x = (eps * omega) * (eps * omega);
    let m_star = 1.0 / (1.0 + 2.0 * x * c.e_ttv - 4.0 * x * x * c.e_ttvtv);
    let k_star = omega * omega * (1.0 - 2.0 * x * c.e_vtv + 4.0 * x * x * c.e_vtvtv);
    Ok(EffectiveParams { m_star, k_star })
}

/// Energy deviation after exactly one period, E(T) - E(0), with
/// eps = T/n taken exactly in extended precision and the period closed by
/// binary powering of the step matrix. Requires n >= 4.
pub fn one_period_energy_error(
    scheme: &SplittingScheme,
    omega: f64,
    q0: f64,
    p0: f64,
    n: usize,
    ctx: &mut Ctx,
) -> Result<BigFloat> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "one_period_energy_error needs at least 4 steps per period, got {n}"
        )));
    }
    let two_pi = ctx.two_pi();
    let period = ctx.div(&two_pi, &ctx.bf(omega));
    let eps = ctx.div(&period, &ctx.from_usize(n));
    let m = step_matrix_bf(scheme, omega, &eps, ctx);
    let mn = mat_pow(ctx, &m, n);
    let q0b = ctx.bf(q0);
    let p0b = ctx.bf(p0);
    let qt = ctx.add(&ctx.mul(&mn[0], &q0b), &ctx.mul(&mn[1], &p0b));
    let pt = ctx.add(&ctx.mul(&mn[2], &q0b), &ctx.mul(&mn[3], &p0b));
    let w2 = ctx.bf(omega * omega);
    let half = ctx.bf(0.5);
    let e = |q: &BigFloat, p: &BigFloat, ctx: &Ctx| {
        let kin = ctx.mul(&half, &ctx.mul(p, p));
        let pot = ctx.mul(&half, &ctx.mul(&w2, &ctx.mul(q, q)));
        ctx.add(&kin, &pot)
    };
    let et = e(&qt, &pt, ctx);
    let e0 = e(&q0b, &p0b, ctx);
    Ok(ctx.sub(&et, &e0))
}

/// Power series of the one-period energy error:
/// Delta-E(eps) = sum_n E_n eps^n starting at n = `lead`.
/// `coeffs[j]` is E_(lead + 2j).
#[derive(Debug)]
pub struct EnergySeries {
    pub omega: f64,
    pub q0: f64,
    pub p0: f64,
    /// Leading power divided out before fitting: 2 for second-order
    /// schemes, 4 for fourth-order ones.
    pub lead: usize,
    pub n0: usize,
    pub depth: usize,
    pub coeffs: Vec<BigFloat>,
    eps_min: f64,
}

impl EnergySeries {
    /// Coefficient E_n of eps^n (n even, n >= lead).
    pub fn e_coefficient(&self, n: usize) -> Option<&BigFloat> {
        if n < self.lead || (n - self.lead) % 2 != 0 {
            return None;
        }
        self.coeffs.get((n - self.lead) / 2)
    }

    pub fn e_coefficient_f64(&self, n: usize) -> Option<f64> {
        self.e_coefficient(n).map(to_f64)
    }

    /// The power of eps that dominates Delta-E at the fine end of the
    /// ladder: coefficients that are pure extraction residue contribute
    /// nothing there, so this picks out the first physically nonzero term.
    pub fn leading_exponent(&self) -> usize {
        let mut best = (self.lead, f64::NEG_INFINITY);
        for (j, c) in self.coeffs.iter().enumerate() {
            let n = self.lead + 2 * j;
            let contribution = to_f64(c).abs().ln() + n as f64 * self.eps_min.ln();
            if contribution > best.1 {
                best = (n, contribution);
            }
        }
        best.0
    }
}

/// Default ladder base for `energy_error_series`: N_k = n0 * 2^k.
pub const DEFAULT_ENERGY_N0: usize = 512;

/// Fit the one-period energy ladder Delta-E(T/N_k) for
/// N_k = n0 * 2^k, k = 0..depth-1.
pub fn energy_error_series(
    scheme: &SplittingScheme,
    omega: f64,
    q0: f64,
    p0: f64,
    n0: usize,
    depth: usize,
    ctx: &mut Ctx,
) -> Result<EnergySeries> {
    if depth < 2 {
        return Err(Error::Usage("energy_error_series needs depth >= 2".into()));
    }
    let lead = if scheme.nominal_order >= 4 { 4 } else { 2 };
    let two_pi = ctx.two_pi();
    let period = ctx.div(&two_pi, &ctx.bf(omega));
    let mut xs = Vec::with_capacity(depth);
    let mut ys = Vec::with_capacity(depth);
    let mut n = n0;
    let mut eps_min = f64::MAX;
    for _ in 0..depth {
        let de = one_period_energy_error(scheme, omega, q0, p0, n, ctx)?;
        let eps = ctx.div(&period, &ctx.from_usize(n));
        let scale = ctx.powi(&eps, lead);
        ys.push(ctx.div(&de, &scale));
        xs.push(ctx.mul(&eps, &eps));
        eps_min = to_f64(&eps);
        n *= 2;
    }
    check_ladder_convergence(ctx, &xs, &ys)?;
    let coeffs = newton_monomial(ctx, &xs, &ys);
    Ok(EnergySeries { omega, q0, p0, lead, n0, depth, coeffs, eps_min })
}

/// Closed form for the leading one-period energy coefficient of a
/// palindromic second-order scheme:
/// E4 = 4 pi w^5 p0 q0 (e_ttv - e_vtv)(e_ttv + e_vtv).
pub fn energy_e4_closed(c: &RawCoefficients, omega: f64, q0: f64, p0: f64) -> f64 {
    4.0 * std::f64::consts::PI
        * omega.powi(5)
        * p0
        * q0
        * (c.e_ttv - c.e_vtv)
        * (c.e_ttv + c.e_vtv)
}

/// Closed form for E6 of a *correctable* second-order scheme
/// (e_ttv = e_vtv), where E4 vanishes:
/// E6 = -4 pi p0 q0 w^7 (e_ttv + e_vtv) [2(e_ttvtv - e_vtvtv) + e_ttv^2 + e_vtv^2].
pub fn energy_e6_corrected_closed(
    c: &RawCoefficients,
    omega: f64,
    q0: f64,
    p0: f64,
) -> Result<f64> {
    if (c.e_ttv - c.e_vtv).abs() > 1e-12 {
        return Err(Error::Domain(
            "E6 closed form holds only when e_ttv = e_vtv".into(),
        ));
    }
    Ok(-4.0
        * std::f64::consts::PI
        * p0
        * q0
        * omega.powi(7)
        * (c.e_ttv + c.e_vtv)
        * (2.0 * (c.e_ttvtv - c.e_vtvtv) + c.e_ttv * c.e_ttv + c.e_vtv * c.e_vtv))
}

/// Closed form for E8 of a fourth-order scheme (e_ttv = e_vtv = 0):
/// E8 = 16 pi w^9 (e_ttvtv^2 - e_vtvtv^2) q0 p0.
pub fn energy_e8_fourth_order_closed(
    c: &RawCoefficients,
    omega: f64,
    q0: f64,
    p0: f64,
) -> Result<f64> {
    if c.e_ttv.abs() > 1e-12 || c.e_vtv.abs() > 1e-12 {
        return Err(Error::Domain(
            "E8 closed form holds only for fourth-order schemes".into(),
        ));
    }
    Ok(16.0
        * std::f64::consts::PI
        * omega.powi(9)
        * (c.e_ttvtv * c.e_ttvtv - c.e_vtvtv * c.e_vtvtv)
        * q0
        * p0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{algorithm_c, four_acb, leapfrog, second_order, takahashi_imada};

    #[test]
    fn leapfrog_half_trace_is_exact() {
        // D(1/2) K(1) D(1/2) gives tr/2 = 1 - (eps w)^2 / 2 exactly
        for eps in [0.1, 0.5, 1.9, 2.1] {
            let m = step_matrix_f64(&leapfrog(), 1.0, eps);
            let ht = 0.5 * (m[0] + m[3]);
            assert!((ht - (1.0 - eps * eps / 2.0)).abs() < 1e-15, "eps = {eps}");
        }
    }

    #[test]
    fn stability_window_boundary() {
        assert!(approx_frequency(&leapfrog(), 1.0, 1.999).is_ok());
        match approx_frequency(&leapfrog(), 1.0, 2.001) {
            Err(Error::Unstable { half_trace, .. }) => assert!(half_trace < -1.0),
            other => panic!("expected instability, got {other:?}"),
        }
    }

    #[test]
    fn matrix_matches_stepper() {
        use crate::force::Harmonic;
        use crate::integrate::step_once;
        use crate::state::PhaseState;
        let force = Harmonic::new(1.3);
        for scheme in [takahashi_imada(), algorithm_c()] {
            let m = step_matrix_f64(&scheme, 1.3, 0.05);
            let s0 = PhaseState::one_d(0.8, -0.3);
            let s1 = step_once(&scheme, &force, &s0, 0.05).unwrap();
            let q = m[0] * 0.8 + m[1] * (-0.3);
            let p = m[2] * 0.8 + m[3] * (-0.3);
            assert!((q - s1.q[0]).abs() < 1e-15);
            assert!((p - s1.p[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn unimodular_step_matrix() {
        for (scheme, eps) in [
            (leapfrog(), 0.3),
            (takahashi_imada(), 0.7),
            (algorithm_c(), 0.2),
            (four_acb(0.05, 0.6).unwrap(), 0.4),
        ] {
            let m = step_matrix_f64(&scheme, 1.1, eps);
            let det = m[0] * m[3] - m[1] * m[2];
            assert!((det - 1.0).abs() < 1e-13, "det = {det}");
        }
    }

    #[test]
    fn leapfrog_frequency_series_leading_term() {
        // w_A/w - 1 = (1/24) (eps w)^2 + ...
        let mut ctx = Ctx::with_decimal_digits(60);
        let s = frequency_series(&leapfrog(), 1.0, 0.01, 6, &mut ctx).unwrap();
        let c2 = s.coefficient_f64(2).unwrap();
        assert!(
            (c2 - 1.0 / 24.0).abs() < 1e-20,
            "c2 = {c2}, expected 1/24"
        );
        // constant term is extraction residue
        assert!(s.coefficient_f64(0).unwrap().abs() < 1e-30);
    }

    #[test]
    fn corrected_second_order_frequency_series() {
        // gradient weight 1/24 cancels the eps^2 term; c4 = -1/720
        let mut ctx = Ctx::with_decimal_digits(60);
        let s = frequency_series(&takahashi_imada(), 1.0, 0.01, 8, &mut ctx).unwrap();
        let c2 = s.coefficient_f64(2).unwrap();
        let c4 = s.coefficient_f64(4).unwrap();
        assert!(c2.abs() < 1e-20, "c2 = {c2:e}");
        assert!(
            ((c4 - (-1.0 / 720.0)) / (1.0 / 720.0)).abs() < 1e-9,
            "c4 = {c4}, expected -1/720"
        );
    }

    #[test]
    fn effective_params_track_frequency() {
        let scheme = leapfrog();
        let eps = 0.1;
        let p = effective_params(&scheme, 1.0, eps).unwrap();
        let wa = approx_frequency(&scheme, 1.0, eps).unwrap();
        // omega* reproduces w_A through fourth order; residual is O(eps^6)
        assert!(
            (p.omega_star() - wa).abs() < 5.0 * eps.powi(6),
            "omega* = {}, w_A = {wa}",
            p.omega_star()
        );
    }

    #[test]
    fn energy_error_needs_four_steps() {
        let mut ctx = Ctx::with_decimal_digits(30);
        assert!(one_period_energy_error(&leapfrog(), 1.0, 1.0, 1.0, 3, &mut ctx).is_err());
        assert!(one_period_energy_error(&leapfrog(), 1.0, 1.0, 1.0, 4, &mut ctx).is_ok());
    }

    #[test]
    fn leapfrog_energy_leading_coefficient() {
        // E4 = 4 pi (e_ttv - e_vtv)(e_ttv + e_vtv) = -pi/48 at w = q0 = p0 = 1
        let mut ctx = Ctx::with_decimal_digits(60);
        let s = energy_error_series(&leapfrog(), 1.0, 1.0, 1.0, 512, 6, &mut ctx).unwrap();
        assert_eq!(s.leading_exponent(), 4);
        let e4 = s.e_coefficient_f64(4).unwrap();
        let expect = -std::f64::consts::PI / 48.0;
        assert!(
            ((e4 - expect) / expect).abs() < 1e-9,
            "E4 = {e4}, expected {expect}"
        );
    }

    #[test]
    fn corrected_fourth_order_energy_jumps_to_tenth() {
        // t0 = 1/6 with the equalizing gradient split: E4 = E6 = E8 = 0
        let mut ctx = Ctx::with_decimal_digits(60);
        let alpha = crate::coeffs::correctable_alpha(1.0 / 6.0).unwrap();
        let scheme = four_acb(1.0 / 6.0, alpha).unwrap();
        let s = energy_error_series(&scheme, 1.0, 1.0, 1.0, 512, 8, &mut ctx).unwrap();
        assert_eq!(s.leading_exponent(), 10);
    }
}
