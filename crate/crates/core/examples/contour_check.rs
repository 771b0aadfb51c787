//! Brute-force trapezoid quadrature of the torus integral against the
//! polynomial itself. Small n only, the cost is grid^r.

use wishart_asymptotics::asymptotics::contour_oracle;
use wishart_asymptotics::charpoly::{evaluate, EvalMode, PolySpec};
use wishart_asymptotics::numerics::PrecisionPolicy;

fn main() -> wishart_asymptotics::Result<()> {
    let spec = PolySpec::new(3, 1, vec![1, 0])?;
    let exact = evaluate(
        &spec,
        4,
        0.7,
        EvalMode::Rescaled,
        &PrecisionPolicy::default(),
    )?
    .to_f64();
    println!("F_4(16 * 0.7) = {exact:.15}");
    for grid in [64, 96, 128, 160] {
        let v = contour_oracle(&spec, 4, 0.7, grid)?;
        println!(
            "  grid {grid:>3}^3: {v:.15}  rel err {:.1e}",
            ((v - exact) / exact).abs()
        );
    }
    Ok(())
}
