//! F_n at large degree: the alternating series cancels badly, so the
//! evaluator keeps doubling the working precision until two passes agree.

use wishart_asymptotics::charpoly::{evaluate, EvalMode, PolySpec};
use wishart_asymptotics::numerics::PrecisionPolicy;

fn main() -> wishart_asymptotics::Result<()> {
    let spec = PolySpec::new(3, 2, vec![2, 5])?;
    let policy = PrecisionPolicy::default();
    println!(
        "{:>5} {:>24} {:>14} {:>6} {:>10}",
        "n", "F_n(n^2 * 1.5)", "ln|F_n|", "bits", "rel err"
    );
    // at n = 400 the value leaves the f64 range; the log stays exact
    for n in [10, 50, 150, 400] {
        let v = evaluate(&spec, n, 1.5, EvalMode::Rescaled, &policy)?;
        println!(
            "{n:>5} {:>24.16e} {:>14.6} {:>6} {:>10.1e}",
            v.to_f64(),
            v.ln_abs(),
            v.precision_bits(),
            v.rel_error_bound()
        );
    }
    Ok(())
}
