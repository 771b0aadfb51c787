//! Saddle point data along the angle coordinate, and a check that |h|
//! really peaks at ±(θ, φ, ..., φ).

use std::f64::consts::PI;

use wishart_asymptotics::asymptotics::{
    ae_residual, h_argmax, hessian_det, phase_f, phase_g, saddle_coords, saddle_point, sigma,
    PhiCoord,
};
use wishart_asymptotics::charpoly::PolySpec;

fn main() -> wishart_asymptotics::Result<()> {
    let spec = PolySpec::fig1();
    println!(
        "{:>8} {:>10} {:>8} {:>8} {:>8} {:>9} {:>9} {:>9}",
        "phi", "x", "a", "b", "theta", "f", "g", "resid"
    );
    for k in 1..8 {
        let p = PhiCoord::new(PI / 4.0 * k as f64 / 8.0, 3)?;
        let s = saddle_coords(&p);
        println!(
            "{:>8.5} {:>10.6} {:>8.5} {:>8.5} {:>8.5} {:>9.5} {:>9.5} {:>9.1e}",
            p.phi(),
            sigma(&p),
            s.a,
            s.b,
            s.theta,
            phase_f(&p),
            phase_g(&p, &spec),
            ae_residual(&p)
        );
    }
    let p = PhiCoord::new(PI / 8.0, 3)?;
    let d = hessian_det(&p);
    println!(
        "\nHessian det at pi/8: {:.12} (assembled {:.12})",
        d.closed_form, d.assembled
    );
    println!("argmax of |h|: {:?}", h_argmax(&p, 41));
    println!("saddle S:      {:?}", saddle_point(&p));
    Ok(())
}
