//! A splitting scheme conserves its shadow Hamiltonian to higher order than
//! the true energy. Track both over a Kepler orbit and compare the drift of
//! H, H2 (second-order shadow) and H4 (fourth-order shadow) as the step
//! shrinks.

use phaselab::brackets::modified_hamiltonian;
use phaselab::force::{ForceModel, Kepler2D};
use phaselab::integrate::step_once;
use phaselab::kepler::{orbit_from_py, py_for_eccentricity};
use phaselab::scheme::algorithm_c;
use phaselab::state::PhaseState;

fn max_drift(n: usize) -> phaselab::Result<(f64, f64, f64)> {
    let scheme = algorithm_c();
    let force = Kepler2D;
    let py = py_for_eccentricity(0.9)?;
    let orbit = orbit_from_py(py)?;
    let eps = orbit.period / n as f64;

    let mut state = PhaseState::new(vec![10.0, 0.0], vec![0.0, py]);
    let h0 = force.energy(&state.q, &state.p)?;
    let h2_0 = modified_hamiltonian(&scheme, &force, &state, eps, 2)?;
    let h4_0 = modified_hamiltonian(&scheme, &force, &state, eps, 4)?;

    let (mut dh, mut dh2, mut dh4) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        state = step_once(&scheme, &force, &state, eps)?;
        dh = dh.max((force.energy(&state.q, &state.p)? - h0).abs());
        dh2 = dh2.max((modified_hamiltonian(&scheme, &force, &state, eps, 2)? - h2_0).abs());
        dh4 = dh4.max((modified_hamiltonian(&scheme, &force, &state, eps, 4)? - h4_0).abs());
    }
    Ok((dh, dh2, dh4))
}

fn main() -> phaselab::Result<()> {
    println!("scheme C, e = 0.9, one period, max |drift| over the orbit:");
    println!("{:>6}  {:>12}  {:>12}  {:>12}", "steps", "H", "H2 shadow", "H4 shadow");
    let mut prev: Option<(f64, f64, f64)> = None;
    for n in [1000usize, 2000, 4000, 8000] {
        let (dh, dh2, dh4) = max_drift(n)?;
        print!("{n:>6}  {dh:>12.3e}  {dh2:>12.3e}  {dh4:>12.3e}");
        if let Some((p, p2, p4)) = prev {
            // halving eps should cut H by ~2^4 and H4 by a larger factor
            print!(
                "   order {:.2} / {:.2} / {:.2}",
                (p / dh).log2(),
                (p2 / dh2).log2(),
                (p4 / dh4).log2()
            );
        }
        println!();
        prev = Some((dh, dh2, dh4));
    }
    println!("\nthe raw energy drifts at the scheme's order; each shadow term");
    println!("removes the matching error bracket and pushes the drift higher.");
    Ok(())
}
