//! The limiting zero distribution: density, both forms of the CDF, moments
//! against Raney numbers, plus an SVG of the CDF for r = 2..5.

use wishart_asymptotics::asymptotics::x_star;
use wishart_asymptotics::cli::{plot_svg, Column, Table};
use wishart_asymptotics::raney::{
    cdf_v, density_v, moment_quadrature, raney_number, CdfForm, RaneyParams,
};

fn main() -> wishart_asymptotics::Result<()> {
    println!(
        "r=3: v(2) = {:.12}, V(2) = {:.12} / {:.12}",
        density_v(2.0, 3)?,
        cdf_v(2.0, 3, CdfForm::Phase),
        cdf_v(2.0, 3, CdfForm::Closed)
    );

    for r in 2..=4 {
        let p = RaneyParams::model(r)?;
        print!("r={r} moments:");
        for k in 1..=4 {
            print!(
                " {:.10}/{:.10}",
                moment_quadrature(k, r)?,
                raney_number(&p, k as u64)
            );
        }
        println!();
    }

    // common abscissa in units of x*
    let u: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
    let mut t = Table::new().with("x_over_xstar", Column::Float(u.clone()));
    for r in 2..=5 {
        let xs = x_star(r);
        t.push(
            &format!("V, r={r}"),
            Column::Float(
                u.iter()
                    .map(|s| cdf_v(s * xs, r, CdfForm::Closed))
                    .collect(),
            ),
        );
    }
    let path = std::env::temp_dir().join("raney_cdf.svg");
    plot_svg(&t, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
