//! Squared singular values of a truncated-unitary times Ginibre product,
//! rescaled by n^(r-1), against the limit law.

use wishart_asymptotics::asymptotics::x_star;
use wishart_asymptotics::empirics::{histogram, ks_distance};
use wishart_asymptotics::raney::{cdf_v, CdfForm};
use wishart_asymptotics::rmt::{ensemble_run, EnsembleConfig};

fn main() -> wishart_asymptotics::Result<()> {
    for r in [2usize, 3] {
        for n in [25, 50, 100] {
            let cfg = EnsembleConfig::new(r, n, 1, vec![0; r - 1], 50, 7)?;
            let mu = ensemble_run(&cfg)?;
            let ks = ks_distance(&mu, |x| cdf_v(x, r, CdfForm::Phase));
            println!(
                "r={r} n={n:>3}: {} values, mean {:.4}, KS {ks:.4}",
                mu.len(),
                mu.mean()
            );
        }
    }
    let cfg = EnsembleConfig::new(3, 100, 1, vec![0, 0], 50, 7)?;
    let mu = ensemble_run(&cfg)?;
    println!("\n  bin          empirical  limit");
    for b in histogram(&mu, 8, 0.0, x_star(3))? {
        // bin average of the limit density
        let limit =
            (cdf_v(b.hi, 3, CdfForm::Phase) - cdf_v(b.lo, 3, CdfForm::Phase)) / (b.hi - b.lo);
        println!(
            "  [{:.2},{:.2})  {:>9.4}  {:.4}",
            b.lo, b.hi, b.density, limit
        );
    }
    Ok(())
}
