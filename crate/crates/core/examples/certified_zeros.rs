//! All zeros of F_n, each isolated by an exact sign change at dyadic points.

use num_traits::Signed;

use wishart_asymptotics::charpoly::{evaluate_exact, zeros, PolySpec};

fn main() -> wishart_asymptotics::Result<()> {
    let spec = PolySpec::new(2, 0, vec![0])?;
    let z = zeros(&spec, 2)?;
    println!("F_2 zeros: {:?}  (expect (4 ± √10)/3)", z.zeros());

    let spec = PolySpec::fig1();
    let n = 60;
    let z = zeros(&spec, n)?;
    println!("\nr=3 κ=2 ν=[2,5], n={n}: {} zeros", z.zeros().len());
    for (k, b) in z.brackets().iter().enumerate().step_by(12) {
        let lo = evaluate_exact(&spec, n, &b.lo_rational());
        let hi = evaluate_exact(&spec, n, &b.hi_rational());
        println!(
            "  #{k:<3} [{:.15e}, {:.15e}]  signs {} {}",
            b.lo,
            b.hi,
            lo.signum(),
            hi.signum()
        );
    }
    let rescaled = z.rescaled(spec.r());
    println!(
        "largest rescaled zero {:.6}, right end of the limit support {:.6}",
        rescaled[n - 1],
        wishart_asymptotics::asymptotics::x_star(3)
    );
    Ok(())
}
