//! Normalized F_150 against its cosine approximant on the preset window,
//! written as CSV and SVG into the temp directory.

use wishart_asymptotics::asymptotics::{fig1_table, Fig1Preset, PhaseVariant};
use wishart_asymptotics::cli::{plot_svg, Column, Table};
use wishart_asymptotics::numerics::PrecisionPolicy;

fn main() -> wishart_asymptotics::Result<()> {
    let policy = PrecisionPolicy::default();
    for variant in [PhaseVariant::PiOverTwo, PhaseVariant::ROverTwo] {
        let preset = Fig1Preset {
            variant,
            ..Fig1Preset::default()
        };
        let rows = fig1_table(&preset, &policy)?;
        let dev = rows
            .iter()
            .map(|r| (r.normalized_poly - r.cosine_approximant).abs())
            .fold(0.0, f64::max);
        println!(
            "{variant:?}: {} points, max |F - cos| = {dev:.4}",
            rows.len()
        );

        if variant == PhaseVariant::PiOverTwo {
            let t = Table::new()
                .with("phi", Column::Float(rows.iter().map(|r| r.phi).collect()))
                .with(
                    "normalized_poly",
                    Column::Float(rows.iter().map(|r| r.normalized_poly).collect()),
                )
                .with(
                    "cosine_approximant",
                    Column::Float(rows.iter().map(|r| r.cosine_approximant).collect()),
                );
            let dir = std::env::temp_dir();
            wishart_asymptotics::cli::write_atomic(&dir.join("fig1.csv"), &t.to_csv()?)?;
            plot_svg(&t, &dir.join("fig1.svg"))?;
            println!("  wrote {}", dir.join("fig1.svg").display());
        }
    }
    Ok(())
}
