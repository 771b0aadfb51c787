use super::{integrate_against_v, validate_r};
use crate::asymptotics::x_star;
use crate::error::{Error, Result};

/// `p(w) = w^(r+1) - z w² + z` and its derivative.
fn poly(w: f64, z: f64, r: usize) -> (f64, f64) {
    let wr = w.powi(r as i32 - 1);
    (
        wr * w * w - z * w * w + z,
        (r as f64 + 1.0) * wr * w - 2.0 * z * w,
    )
}

fn newton(mut w: f64, z: f64, r: usize) -> Option<f64> {
    for _ in 0..200 {
        let (p, dp) = poly(w, z, r);
        if dp == 0.0 || !w.is_finite() {
            return None;
        }
        let step = p / dp;
        w -= step;
        if step.abs() <= 1e-15 * w.abs() {
            return Some(w);
        }
    }
    (poly(w, z, r).0.abs() <= 1e-12 * z).then_some(w)
}

/// Root of `w^(r+1) - z w² + z = 0` on the branch with `w → 1` as `z → ∞`.
pub fn stieltjes_root(z: f64, r: usize) -> Result<f64> {
    validate_r(r)?;
    let xs = x_star(r);
    if !(z > xs) || !z.is_finite() {
        return Err(Error::Domain(format!("z = {z} must exceed x* = {xs}")));
    }
    let limit = ((r as f64 + 1.0) / (r as f64 - 1.0)).sqrt();
    let w = if r == 3 {
        // biquadratic in w²; the minus sign is the branch through 1,
        // written without cancellation
        let disc = z * z - 4.0 * z;
        (2.0 * z / (z + disc.sqrt())).sqrt()
    } else {
        // continuation inward from 10 x*, Newton started at 1 out there;
        // steps are geometric in the distance to the edge
        let start = 10.0 * xs;
        let mut w = newton(1.0, z.max(start), r)
            .ok_or_else(|| Error::Numeric(format!("branch start failed at z = {start}")))?;
        if z < start {
            let steps = 64;
            for i in 1..=steps {
                let zi =
                    xs + (start - xs) * ((z - xs) / (start - xs)).powf(i as f64 / steps as f64);
                w = newton(w, zi, r)
                    .ok_or_else(|| Error::Numeric(format!("branch tracking lost at z = {zi}")))?;
            }
        }
        w
    };
    // The tracked root is the unique one in (1, sqrt((r+1)/(r-1))).
    if !(w >= 1.0 && w < limit) || poly(w, z, r).0.abs() > 1e-9 * z {
        return Err(Error::Numeric(format!(
            "branch ambiguity at z = {z}: root {w} outside (1, {limit})"
        )));
    }
    Ok(w)
}

/// `F(z) = ∫ v(x) / (z - x) dx = w(z) / z` for `z > x*`.
pub fn stieltjes(z: f64, r: usize) -> Result<f64> {
    Ok(stieltjes_root(z, r)? / z)
}

/// Direct quadrature of `∫ v(x) / (z - x) dx`.
pub fn stieltjes_quadrature(z: f64, r: usize) -> Result<f64> {
    validate_r(r)?;
    let xs = x_star(r);
    if !(z > xs) {
        return Err(Error::Domain(format!("z = {z} must exceed x* = {xs}")));
    }
    integrate_against_v(r, |x| 1.0 / (z - x), 1e-14)
}
