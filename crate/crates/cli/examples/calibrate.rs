//! Pilot runs for the acceptance constants `K`.
//!
//! For every distribution, runs the desk-scale sweep (h = 5,
//! n in {2000, 10000, 50000, 200000}) under five pilot base seeds and prints
//! the maximum of `(χ′_h h / ω′ − 1) √n` together with 1.5 times that value.
//!
//! ```text
//! cargo run --release -p stacking --example calibrate
//! ```

use stacking::experiment::{run_sweep, SweepConfig};
use stacking_core::{Capacity, STUDY_PRESETS};

const PILOT_SEEDS: [u64; 5] = [101, 102, 103, 104, 105];
const SIZES: [usize; 4] = [2000, 10_000, 50_000, 200_000];

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    println!("{:<14} {:>10} {:>10}", "dist", "max", "K = 1.5x");
    for dist in STUDY_PRESETS {
        let mut worst = 0.0f64;
        for seed in PILOT_SEEDS {
            let config = SweepConfig {
                distributions: vec![dist.parse().expect("preset")],
                n_values: SIZES.to_vec(),
                h: Capacity::new(5).expect("nonzero"),
                base_seed: seed,
                instances_per_point: 1,
            };
            for row in run_sweep(&config, workers).expect("valid config") {
                worst = worst.max(row.err_sqrt_n.expect("row solved"));
            }
        }
        println!("{dist:<14} {worst:>10.4} {:>10.4}", 1.5 * worst);
    }
}
