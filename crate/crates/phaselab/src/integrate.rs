//! f64 stepping engine: apply a splitting scheme to a force model.

use crate::error::{Error, Result};
use crate::force::ForceModel;
use crate::scheme::{SplittingScheme, StageKind};
use crate::state::PhaseState;

/// Advance one step of size `eps`, applying the stages left to right.
/// A force evaluation that fails is reported with the index of the stage
/// that triggered it.
pub fn step_once(
    scheme: &SplittingScheme,
    force: &dyn ForceModel,
    state: &PhaseState,
    eps: f64,
) -> Result<PhaseState> {
    let d = force.dim();
    debug_assert_eq!(state.dim(), d);
    let mut q = state.q.clone();
    let mut p = state.p.clone();
    let mut f = vec![0.0; d];
    let mut g = vec![0.0; d];
    let eps3 = eps * eps * eps;

    for (idx, st) in scheme.stages.iter().enumerate() {
        match st.kind {
            StageKind::Drift => {
                let c = eps * st.weight;
                for i in 0..d {
                    q[i] += c * p[i];
                }
            }
            StageKind::Kick => {
                force.force(&q, &mut f).map_err(|e| Error::Singularity {
                    stage: idx,
                    reason: e.to_string(),
                })?;
                let v = eps * st.weight;
                for i in 0..d {
                    p[i] += v * f[i];
                }
                if st.grad_weight != 0.0 {
                    force.force_gradient(&q, &mut g).map_err(|e| Error::Singularity {
                        stage: idx,
                        reason: e.to_string(),
                    })?;
                    let u = eps3 * st.grad_weight;
                    for i in 0..d {
                        p[i] += u * g[i];
                    }
                }
            }
        }
    }
    Ok(PhaseState { q, p })
}

/// A sampled trajectory: states recorded every `sample_every` steps,
/// always including step 0 and the final step.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub steps: Vec<usize>,
    pub states: Vec<PhaseState>,
    pub eps: f64,
}

impl Trajectory {
    pub fn last(&self) -> &PhaseState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn times(&self) -> Vec<f64> {
        self.steps.iter().map(|&s| s as f64 * self.eps).collect()
    }
}

/// Run `n_steps` steps of size `eps`, sampling every `sample_every` steps.
pub fn integrate(
    scheme: &SplittingScheme,
    force: &dyn ForceModel,
    initial: &PhaseState,
    eps: f64,
    n_steps: usize,
    sample_every: usize,
) -> Result<Trajectory> {
    if sample_every == 0 {
        return Err(Error::Usage("sample_every must be at least 1".into()));
    }
    let mut steps = Vec::with_capacity(n_steps / sample_every + 2);
    let mut states = Vec::with_capacity(n_steps / sample_every + 2);
    steps.push(0);
    states.push(initial.clone());
    let mut s = initial.clone();
    for k in 1..=n_steps {
        s = step_once(scheme, force, &s, eps)?;
        if k % sample_every == 0 || k == n_steps {
            steps.push(k);
            states.push(s.clone());
        }
    }
    Ok(Trajectory { steps, states, eps })
}

/// Jacobian of the one-step map by central finite differences, row-major
/// (2d x 2d) over the flattened (q, p) coordinates. Used to probe
/// symplecticity of arbitrary force models where no analytic tangent map
/// is available.
pub fn step_jacobian_fd(
    scheme: &SplittingScheme,
    force: &dyn ForceModel,
    state: &PhaseState,
    eps: f64,
    displacement: f64,
) -> Result<Vec<f64>> {
    let n = 2 * state.dim();
    let base = state.to_vec();
    let mut jac = vec![0.0; n * n];
    for j in 0..n {
        let mut up = base.clone();
        let mut dn = base.clone();
        up[j] += displacement;
        dn[j] -= displacement;
        let su = step_once(scheme, force, &PhaseState::from_vec(&up), eps)?.to_vec();
        let sd = step_once(scheme, force, &PhaseState::from_vec(&dn), eps)?.to_vec();
        for i in 0..n {
            jac[i * n + j] = (su[i] - sd[i]) / (2.0 * displacement);
        }
    }
    Ok(jac)
}

/// Determinant of a square row-major matrix by partial-pivot elimination.
/// Small systems only (the Jacobians here are 2x2 or 4x4).
pub fn determinant(mat: &[f64], n: usize) -> f64 {
    let mut a = mat.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / a[col * n + col];
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force::{Harmonic, Kepler2D};
    use crate::scheme::{second_order, takahashi_imada};

    // Frozen second-order step on the unit oscillator from (q, p) = (1, 0)
    // with eps = 0.1: after the half drift q is still 1, so the kick gives
    // p = -0.1 + eps^3 * alpha * 2q = -0.1 + 0.002 alpha, and the final
    // half drift moves q by 0.05 p.
    #[test]
    fn second_order_step_frozen_values() {
        let force = Harmonic::new(1.0);
        let s0 = PhaseState::one_d(1.0, 0.0);

        let s = step_once(&second_order(0.0), &force, &s0, 0.1).unwrap();
        assert!((s.p[0] - (-0.1)).abs() < 1e-16);
        assert!((s.q[0] - 0.995).abs() < 1e-16);

        let s = step_once(&takahashi_imada(), &force, &s0, 0.1).unwrap();
        let p_expect = -0.1 + 0.001 * (1.0 / 24.0) * 2.0; // -0.0999166666...
        assert!((s.p[0] - p_expect).abs() < 1e-16);
        assert!((s.q[0] - (1.0 + 0.05 * p_expect)).abs() < 1e-16);
    }

    #[test]
    fn kick_at_origin_is_singular() {
        let force = Kepler2D;
        let s0 = PhaseState::two_d(0.0, 0.0, 0.0, 0.1);
        let err = step_once(&second_order(0.0), &force, &s0, 0.0).unwrap_err();
        match err {
            Error::Singularity { stage, .. } => assert_eq!(stage, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sampling_includes_endpoints() {
        let force = Harmonic::new(1.0);
        let s0 = PhaseState::one_d(1.0, 0.0);
        let traj = integrate(&second_order(0.0), &force, &s0, 0.01, 10, 3).unwrap();
        assert_eq!(traj.steps, vec![0, 3, 6, 9, 10]);
        assert_eq!(traj.states.len(), 5);
        assert!(integrate(&second_order(0.0), &force, &s0, 0.01, 10, 0).is_err());
    }

    #[test]
    fn harmonic_jacobian_is_unimodular() {
        let force = Harmonic::new(1.3);
        let s0 = PhaseState::one_d(0.7, -0.4);
        let jac = step_jacobian_fd(&takahashi_imada(), &force, &s0, 0.05, 1e-6).unwrap();
        let det = determinant(&jac, 2);
        assert!((det - 1.0).abs() < 1e-9, "det = {det}");
    }
}
