//! Plants random integer (f, g), solves f^3 + g^2 back, and tallies how often
//! exactly one orbit of six decompositions comes out.
//!
//! cargo run --release --example six_to_one -- [trials] [bound] [starts]

use std::time::Instant;

use cubesq::decompose::{experiment_six_to_one, SolverConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let arg = |i: usize, d: usize| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let trials = arg(1, 10);
    let bound = arg(2, 5) as i64;
    let cfg = SolverConfig { starts: arg(3, 200), ..SolverConfig::default() };

    let t0 = Instant::now();
    let report = experiment_six_to_one(trials, bound, &cfg).expect("valid configuration");
    for (t, o) in report.outcomes.iter().enumerate() {
        println!(
            "trial {t:3}: orbits {} members {} distance {:.2e} converged {}/{}{}",
            o.orbits,
            o.members_found,
            o.distance,
            o.starts_converged,
            cfg.starts + 2 * cfg.axis_starts,
            if o.spurious { "  spurious" } else { "" }
        );
    }
    println!(
        "success {}/{} ({:.0}%), spurious trials {}, {:.1}s",
        report.successes,
        report.trials,
        100.0 * report.success_rate,
        report.spurious_trials,
        t0.elapsed().as_secs_f64()
    );
}
