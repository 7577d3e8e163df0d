//! Prints the seeded regression constants for tests/regression_data.rs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwgo_core::objectives::Objective;
use qwgo_core::optimizer::{run_bbw, run_bbw_qw, Problem, RunConfig};
use qwgo_core::statevector::GridDomain;

fn main() {
    let seed = 42u64;
    let domain = GridDomain::new(-5.0, 5.0, 9).unwrap();
    let problem = Problem::from_objective(Objective::Rastrigin, domain).unwrap();
    let config = RunConfig::for_domain(&domain);

    println!("pub const REGRESSION_SEED: u64 = {seed};");
    for (tag, hybrid) in [("QW", true), ("BBW", false)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trace = if hybrid {
            run_bbw_qw(&problem, &config, &mut rng).unwrap()
        } else {
            run_bbw(&problem, &config, &mut rng).unwrap()
        };
        println!("pub const {tag}_INITIAL_INDEX: usize = {};", trace.initial.index);
        println!(
            "pub const {tag}_TOTAL_EVALUATIONS: u64 = {};",
            trace.summary.total_evaluations
        );
        println!(
            "pub const {tag}_FIRST_SUCCESS_ITERATION: Option<usize> = {:?};",
            trace.summary.first_success_iteration
        );
        println!(
            "pub const {tag}_FIRST_SUCCESS_EVALUATIONS: Option<u64> = {:?};",
            trace.summary.first_success_evaluations
        );
        let sampled: Vec<usize> = trace.rows.iter().take(8).map(|r| r.sample_index).collect();
        println!("pub const {tag}_FIRST_EIGHT_SAMPLES: [usize; 8] = {sampled:?};");
    }
}
