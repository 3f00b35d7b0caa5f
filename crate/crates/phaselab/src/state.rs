/// A point in phase space. `q` and `p` always have the same length; the
/// library is dimension-agnostic (the oscillator runs in 1-D, Kepler in 2-D).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhaseState {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Self {
        assert_eq!(q.len(), p.len(), "q and p must have the same dimension");
        PhaseState { q, p }
    }

    pub fn one_d(q: f64, p: f64) -> Self {
        PhaseState { q: vec![q], p: vec![p] }
    }

    pub fn two_d(qx: f64, qy: f64, px: f64, py: f64) -> Self {
        PhaseState { q: vec![qx, qy], p: vec![px, py] }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Flattened view (q then p), handy for Jacobian probes.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.q.clone();
        v.extend_from_slice(&self.p);
        v
    }

    pub fn from_vec(v: &[f64]) -> Self {
        assert!(v.len() % 2 == 0);
        let d = v.len() / 2;
        PhaseState { q: v[..d].to_vec(), p: v[d..].to_vec() }
    }
}
