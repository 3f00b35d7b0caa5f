use crate::error::{Error, Result};

/// A conservative force field F(q) = -grad V(q) together with the
/// force-gradient vector G(q) = grad |F(q)|^2 used by fourth-order forward
/// kicks, and (optionally) the higher potential derivatives consumed by the
/// Poisson-bracket engine.
///
/// Derivative tensors are flattened row-major: the Hessian has length d^2
/// with entry (i,j) at `i*d + j`, the third derivative length d^3 with
/// (i,j,k) at `(i*d + j)*d + k`, and so on. All tensors are symmetric.
pub trait ForceModel {
    fn dim(&self) -> usize;

    fn potential(&self, q: &[f64]) -> Result<f64>;

    /// F_i = -dV/dq_i, written into `out` (length `dim`).
    fn force(&self, q: &[f64], out: &mut [f64]) -> Result<()>;

    /// G_i = d|F|^2/dq_i, written into `out` (length `dim`).
    fn force_gradient(&self, q: &[f64], out: &mut [f64]) -> Result<()>;

    /// V_ij into `out` (length dim^2).
    fn potential_hessian(&self, _q: &[f64], _out: &mut [f64]) -> Result<()> {
        Err(Error::Capability("second potential derivatives".into()))
    }

    /// V_ijk into `out` (length dim^3).
    fn potential_third(&self, _q: &[f64], _out: &mut [f64]) -> Result<()> {
        Err(Error::Capability("third potential derivatives".into()))
    }

    /// V_ijkl into `out` (length dim^4).
    fn potential_fourth(&self, _q: &[f64], _out: &mut [f64]) -> Result<()> {
        Err(Error::Capability("fourth potential derivatives".into()))
    }

    /// Total energy of a phase-space point under this model (unit mass).
    fn energy(&self, q: &[f64], p: &[f64]) -> Result<f64> {
        let t: f64 = p.iter().map(|pi| 0.5 * pi * pi).sum();
        Ok(t + self.potential(q)?)
    }
}

/// One-dimensional oscillator V = (1/2) w^2 q^2 with unit mass.
#[derive(Debug, Clone, Copy)]
pub struct Harmonic {
    pub omega: f64,
}

impl Harmonic {
    pub fn new(omega: f64) -> Self {
        Harmonic { omega }
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }
}

impl ForceModel for Harmonic {
    fn dim(&self) -> usize {
        1
    }

    fn potential(&self, q: &[f64]) -> Result<f64> {
        let w2 = self.omega * self.omega;
        Ok(0.5 * w2 * q[0] * q[0])
    }

    fn force(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        out[0] = -self.omega * self.omega * q[0];
        Ok(())
    }

    // |F|^2 = w^4 q^2, so G = 2 w^4 q.
    fn force_gradient(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let w2 = self.omega * self.omega;
        out[0] = 2.0 * w2 * w2 * q[0];
        Ok(())
    }

    fn potential_hessian(&self, _q: &[f64], out: &mut [f64]) -> Result<()> {
        out[0] = self.omega * self.omega;
        Ok(())
    }

    fn potential_third(&self, _q: &[f64], out: &mut [f64]) -> Result<()> {
        out[0] = 0.0;
        Ok(())
    }

    fn potential_fourth(&self, _q: &[f64], out: &mut [f64]) -> Result<()> {
        out[0] = 0.0;
        Ok(())
    }
}

/// Planar Kepler problem V = -1/r with unit GM and unit mass.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kepler2D;

impl Kepler2D {
    fn radius(q: &[f64]) -> Result<f64> {
        let r2 = q[0] * q[0] + q[1] * q[1];
        if r2 == 0.0 || !r2.is_finite() {
            return Err(Error::Domain(format!(
                "Kepler potential evaluated at r^2 = {r2}"
            )));
        }
        Ok(r2.sqrt())
    }
}

impl ForceModel for Kepler2D {
    fn dim(&self) -> usize {
        2
    }

    fn potential(&self, q: &[f64]) -> Result<f64> {
        Ok(-1.0 / Self::radius(q)?)
    }

    fn force(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let r = Self::radius(q)?;
        let r3 = r * r * r;
        out[0] = -q[0] / r3;
        out[1] = -q[1] / r3;
        Ok(())
    }

    // |F|^2 = 1/r^4, so G = -4 q / r^6.
    fn force_gradient(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let r = Self::radius(q)?;
        let r6 = r.powi(6);
        out[0] = -4.0 * q[0] / r6;
        out[1] = -4.0 * q[1] / r6;
        Ok(())
    }

    // V_ij = delta_ij / r^3 - 3 q_i q_j / r^5
    fn potential_hessian(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let r = Self::radius(q)?;
        let r3 = r.powi(3);
        let r5 = r.powi(5);
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                out[i * 2 + j] = delta / r3 - 3.0 * q[i] * q[j] / r5;
            }
        }
        Ok(())
    }

    // V_ijk = -3 (d_ij q_k + d_ik q_j + d_jk q_i) / r^5 + 15 q_i q_j q_k / r^7
    fn potential_third(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let r = Self::radius(q)?;
        let r5 = r.powi(5);
        let r7 = r.powi(7);
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[(i * 2 + j) * 2 + k] = -3.0
                        * (d(i, j) * q[k] + d(i, k) * q[j] + d(j, k) * q[i])
                        / r5
                        + 15.0 * q[i] * q[j] * q[k] / r7;
                }
            }
        }
        Ok(())
    }

    // V_ijkl = -3 (d_ij d_kl + d_ik d_jl + d_jk d_il) / r^5
    //          + 15 (six delta*qq pairings) / r^7 - 105 q_i q_j q_k q_l / r^9
    fn potential_fourth(&self, q: &[f64], out: &mut [f64]) -> Result<()> {
        let r = Self::radius(q)?;
        let r5 = r.powi(5);
        let r7 = r.powi(7);
        let r9 = r.powi(9);
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let deltas = d(i, j) * d(k, l) + d(i, k) * d(j, l) + d(j, k) * d(i, l);
                        let pairs = d(i, j) * q[k] * q[l]
                            + d(i, k) * q[j] * q[l]
                            + d(i, l) * q[j] * q[k]
                            + d(j, k) * q[i] * q[l]
                            + d(j, l) * q[i] * q[k]
                            + d(k, l) * q[i] * q[j];
                        out[((i * 2 + j) * 2 + k) * 2 + l] = -3.0 * deltas / r5
                            + 15.0 * pairs / r7
                            - 105.0 * q[i] * q[j] * q[k] * q[l] / r9;
                    }
                }
            }
        }
        Ok(())
    }
}
