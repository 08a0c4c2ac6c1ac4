//! Dedekind zeta values for Q and quadratic fields, via the Riemann zeta
//! function and Dirichlet L-series with proven tail bounds.

use crate::arith::kronecker;
use crate::error::{Error, Result};
use crate::field::NumberField;

/// zeta(s) for integer s >= 2, within eps. Partial sum plus the integral
/// bracket (N+1)^(1-s)/(s-1) < tail < N^(1-s)/(s-1); the midpoint halves the
/// error.
pub fn riemann_zeta(s: u32, eps: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::BadRange);
    }
    if eps <= 0.0 {
        return Err(Error::BadPrecision);
    }
    let sm1 = (s - 1) as f64;
    // Bracket width at N is about s * N^-s; solve for N.
    let mut n_terms = (2.0 / eps).powf(1.0 / s as f64).ceil() as u64 + 16;
    loop {
        let lo_tail = ((n_terms + 1) as f64).powi(-(s as i32 - 1)) / sm1;
        let hi_tail = (n_terms as f64).powi(-(s as i32 - 1)) / sm1;
        if (hi_tail - lo_tail) / 2.0 < eps {
            let mut sum = 0.0;
            for n in (1..=n_terms).rev() {
                sum += (n as f64).powi(-(s as i32));
            }
            return Ok(sum + (lo_tail + hi_tail) / 2.0);
        }
        n_terms *= 2;
    }
}

/// Partial sum of L(s, chi_D) over n <= N together with a proven bound on
/// the dropped tail: Abel summation against the bounded character sums gives
/// |tail| <= 2|D| (N+1)^(-s).
pub fn dirichlet_l_partial(disc: i64, s: u32, n_terms: u64) -> (f64, f64) {
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let chi = kronecker(disc, n as i64);
        if chi != 0 {
            sum += chi as f64 * (n as f64).powi(-(s as i32));
        }
    }
    let tail = 2.0 * disc.unsigned_abs() as f64 * ((n_terms + 1) as f64).powi(-(s as i32));
    (sum, tail)
}

/// L(s, chi_D) for s >= 1 within eps.
pub fn dirichlet_l(disc: i64, s: u32, eps: f64) -> Result<f64> {
    if s < 1 {
        return Err(Error::BadRange);
    }
    if eps <= 0.0 {
        return Err(Error::BadPrecision);
    }
    let target = 2.0 * disc.unsigned_abs() as f64 / eps;
    let n_terms = target.powf(1.0 / s as f64).ceil() as u64 + 16;
    let (value, tail) = dirichlet_l_partial(disc, s, n_terms);
    debug_assert!(tail <= eps * 1.01);
    Ok(value)
}

/// Dedekind zeta of the field at an integer s >= 2, within eps. For a
/// quadratic field this is zeta(s) * L(s, chi_D).
pub fn dedekind_zeta(field: &NumberField, s: u32, eps: f64) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::BadPrecision);
    }
    if s < 2 {
        return Err(Error::BadRange);
    }
    if field.is_rationals() {
        return riemann_zeta(s, eps);
    }
    // Error composition: |z*l - (z+e1)(l+e2)| <= |z| e2 + |l| e1 + e1 e2,
    // with |z|, |l| <= zeta(2) < 1.65.
    let part = eps / 4.0;
    let z = riemann_zeta(s, part)?;
    let l = dirichlet_l(field.discriminant(), s, part)?;
    Ok(z * l)
}
