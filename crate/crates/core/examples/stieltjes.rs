//! Stieltjes transform of the limit law: algebraic branch vs direct quadrature.

use wishart_asymptotics::asymptotics::x_star;
use wishart_asymptotics::raney::{stieltjes, stieltjes_quadrature, stieltjes_root};

fn main() -> wishart_asymptotics::Result<()> {
    println!("F(5), r=3: {:.10}", stieltjes(5.0, 3)?);
    for r in 2..=5 {
        for m in [1.01, 1.1, 2.0, 10.0] {
            let z = m * x_star(r);
            let (a, b) = (stieltjes(z, r)?, stieltjes_quadrature(z, r)?);
            println!(
                "r={r} z={z:>9.4} w={:.10} F={a:.12} quad={b:.12} diff={:.1e}",
                stieltjes_root(z, r)?,
                (a - b).abs()
            );
        }
    }
    Ok(())
}
