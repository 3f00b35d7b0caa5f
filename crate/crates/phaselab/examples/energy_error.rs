//! One-period harmonic energy errors: fit Delta E(eps) ladders, read off the
//! leading exponent, and compare the first few coefficients with their
//! closed forms.
//!
//! The interesting structure: leapfrog leads at eps^4, the corrected
//! second-order scheme at eps^6, a fourth-order scheme at eps^8, and the
//! corrected fourth-order family member at eps^10.

use phaselab::bigfloat::Ctx;
use phaselab::coeffs::{correctable_alpha, raw_error_coefficients, scheme_inputs};
use phaselab::oscillator::{
    energy_e4_closed, energy_e6_corrected_closed, energy_e8_fourth_order_closed,
    energy_error_series, DEFAULT_ENERGY_N0,
};
use phaselab::scheme::{algorithm_c, four_acb, leapfrog, takahashi_imada};

fn main() -> phaselab::Result<()> {
    let (omega, q0, p0) = (1.0, 1.0, 1.0);
    let mut ctx = Ctx::with_decimal_digits(60);
    let corrected = four_acb(1.0 / 6.0, correctable_alpha(1.0 / 6.0)?)?;

    for scheme in [leapfrog(), takahashi_imada(), algorithm_c(), corrected] {
        let es = energy_error_series(&scheme, omega, q0, p0, DEFAULT_ENERGY_N0, 8, &mut ctx)?;
        let r = raw_error_coefficients(scheme_inputs(&scheme)?);
        println!("{} leads at eps^{}", scheme.name, es.leading_exponent());
        for n in [4usize, 6, 8, 10] {
            let Some(fitted) = es.e_coefficient_f64(n) else { continue };
            let closed = match n {
                4 if scheme.nominal_order < 4 => Some(energy_e4_closed(&r, omega, q0, p0)),
                6 => energy_e6_corrected_closed(&r, omega, q0, p0).ok(),
                8 => energy_e8_fourth_order_closed(&r, omega, q0, p0).ok(),
                _ => None,
            }
            // drop closed forms that vanish for this scheme: comparing
            // extraction dust against coefficient dust says nothing
            .filter(|c| c.abs() > 1e-16);
            match closed {
                Some(c) => println!(
                    "  E{n:<2} = {fitted:+.10e}   closed {c:+.10e}   rel {:.1e}",
                    ((fitted - c) / c).abs()
                ),
                None => println!("  E{n:<2} = {fitted:+.10e}"),
            }
        }
        println!();
    }
    Ok(())
}
