//! Parameter sweeps: one solved instance per (distribution, n, repetition),
//! written as one CSV row each.

use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::Serialize;
use stacking_core::{
    bound_report, generate, mix_seed, solve_online, Capacity, DistributionSpec, Instance,
    STUDY_PRESETS,
};

/// One solved instance.
///
/// Field order is the CSV column order. A failed point keeps its identifying
/// fields, leaves the measurements empty and says what went wrong in `error`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub dist: String,
    pub n: usize,
    pub h: usize,
    pub seed: u64,
    pub c: Option<usize>,
    pub omega_prime: Option<usize>,
    pub chi_prime: Option<u32>,
    pub lower_bound: Option<usize>,
    pub c_over_sqrt_n: Option<f64>,
    pub err_sqrt_n: Option<f64>,
    pub ratio_ub: Option<f64>,
    pub solve_micros: Option<f64>,
    pub error: String,
}

impl ExperimentRow {
    fn failed(dist: String, n: usize, h: usize, seed: u64, error: String) -> Self {
        Self {
            dist,
            n,
            h,
            seed,
            c: None,
            omega_prime: None,
            chi_prime: None,
            lower_bound: None,
            c_over_sqrt_n: None,
            err_sqrt_n: None,
            ratio_ub: None,
            solve_micros: None,
            error,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_empty()
    }
}

/// Solves `inst` online and fills a row. Only the solve itself is timed.
pub fn measure(dist: &str, inst: &Instance, h: Capacity, seed: u64) -> ExperimentRow {
    let n = inst.len();
    let t0 = Instant::now();
    let col = solve_online(inst, h);
    let solve_micros = t0.elapsed().as_secs_f64() * 1e6;

    let report = match bound_report(inst, h, &col) {
        Ok(r) => r,
        Err(e) => return ExperimentRow::failed(dist.into(), n, h.get(), seed, e.to_string()),
    };
    let sqrt_n = (n as f64).sqrt();
    let error = if report.chi_prime_h as f64 > report.upper_bound {
        format!(
            "chi_prime {} exceeds omega'/h + c = {}",
            report.chi_prime_h, report.upper_bound
        )
    } else {
        String::new()
    };
    ExperimentRow {
        dist: dist.into(),
        n,
        h: h.get(),
        seed,
        c: Some(report.c),
        omega_prime: Some(report.omega_prime),
        chi_prime: Some(report.chi_prime_h),
        lower_bound: Some(report.lower_bound),
        c_over_sqrt_n: Some(report.c as f64 / sqrt_n),
        err_sqrt_n: Some((report.ratio_ub - 1.0) * sqrt_n),
        ratio_ub: Some(report.ratio_ub),
        solve_micros: Some(solve_micros),
        error,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub distributions: Vec<DistributionSpec>,
    pub n_values: Vec<usize>,
    pub h: Capacity,
    pub base_seed: u64,
    pub instances_per_point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("no distributions given")]
    NoDistributions,
    #[error("no instance sizes given")]
    NoSizes,
    #[error("instance sizes must be positive and strictly increasing")]
    BadSizes,
    #[error("instances per point must be at least 1")]
    NoRepetitions,
}

/// Named sweep presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// The eight reference distributions, h = 5, n = 2000, 4000, ..., 200000.
    Paper,
    /// Two distributions, n in {2000, 10000, 50000}.
    Smoke,
}

impl SweepConfig {
    pub fn suite(suite: Suite, base_seed: u64) -> Self {
        let (dists, n_values): (Vec<&str>, Vec<usize>) = match suite {
            Suite::Paper => (
                STUDY_PRESETS.to_vec(),
                (1..=100).map(|k| 2000 * k).collect(),
            ),
            Suite::Smoke => (vec!["u:0.3", "g:0:1:1:0.2"], vec![2000, 10_000, 50_000]),
        };
        Self {
            distributions: dists.iter().map(|s| s.parse().expect("preset")).collect(),
            n_values,
            h: Capacity::new(5).expect("nonzero"),
            base_seed,
            instances_per_point: 1,
        }
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        if self.distributions.is_empty() {
            return Err(ConfigError::NoDistributions);
        }
        if self.n_values.is_empty() {
            return Err(ConfigError::NoSizes);
        }
        if self.n_values[0] == 0 || self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::BadSizes);
        }
        if self.instances_per_point == 0 {
            return Err(ConfigError::NoRepetitions);
        }
        Ok(())
    }

    /// Every sweep point in output order: (distribution index, n, repetition).
    pub fn points(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for d in 0..self.distributions.len() {
            for &n in &self.n_values {
                for rep in 0..self.instances_per_point {
                    out.push((d, n, rep));
                }
            }
        }
        out
    }

    /// Seed of one sweep point; distinct points never share an instance.
    pub fn seed_for(&self, dist_index: usize, n: usize, rep: usize) -> u64 {
        mix_seed(self.base_seed, &[dist_index as u64, n as u64, rep as u64])
    }
}

/// Generates and solves one sweep point.
pub fn run_point(config: &SweepConfig, dist_index: usize, n: usize, rep: usize) -> ExperimentRow {
    let spec = &config.distributions[dist_index];
    let seed = config.seed_for(dist_index, n, rep);
    match generate(spec, n, seed) {
        Ok(inst) => measure(&spec.to_string(), &inst, config.h, seed),
        Err(e) => ExperimentRow::failed(spec.to_string(), n, config.h.get(), seed, e.to_string()),
    }
}

/// Runs the whole sweep on up to `workers` threads; rows come back in
/// configuration order regardless of which job finishes first.
pub fn run_sweep(config: &SweepConfig, workers: usize) -> Result<Vec<ExperimentRow>, ConfigError> {
    config.check()?;
    let points = config.points();
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<ExperimentRow>> = vec![None; points.len()];
    let workers = workers.clamp(1, points.len());

    let finished: Vec<Vec<(usize, ExperimentRow)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&(d, n, rep)) = points.get(k) else {
                            break;
                        };
                        done.push((k, run_point(config, d, n, rep)));
                    }
                    done
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    for (k, row) in finished.into_iter().flatten() {
        slots[k] = Some(row);
    }
    Ok(slots
        .into_iter()
        .map(|r| r.expect("every point ran"))
        .collect())
}

pub fn write_rows<W: io::Write>(out: W, rows: &[ExperimentRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(path: &Path, rows: &[ExperimentRow]) -> csv::Result<()> {
    let file = std::fs::File::create(path)?;
    write_rows(io::BufWriter::new(file), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SweepConfig {
        SweepConfig {
            distributions: vec!["u:0.5".parse().unwrap(), "g:0:1:1:0.4".parse().unwrap()],
            n_values: vec![100, 300],
            h: Capacity::new(3).unwrap(),
            base_seed: 77,
            instances_per_point: 2,
        }
    }

    #[test]
    fn paper_suite_shape() {
        let cfg = SweepConfig::suite(Suite::Paper, 0);
        assert_eq!(cfg.distributions.len(), 8);
        assert_eq!(cfg.n_values.len(), 100);
        assert_eq!(cfg.n_values[0], 2000);
        assert_eq!(cfg.n_values[1], 4000);
        assert_eq!(*cfg.n_values.last().unwrap(), 200_000);
        assert_eq!(cfg.h.get(), 5);
        assert_eq!(cfg.instances_per_point, 1);
        assert_eq!(cfg.check(), Ok(()));
    }

    #[test]
    fn bad_configs_are_refused() {
        let mut cfg = tiny();
        cfg.distributions.clear();
        assert_eq!(run_sweep(&cfg, 1), Err(ConfigError::NoDistributions));
        let mut cfg = tiny();
        cfg.n_values = vec![300, 100];
        assert_eq!(cfg.check(), Err(ConfigError::BadSizes));
        cfg.n_values = vec![];
        assert_eq!(cfg.check(), Err(ConfigError::NoSizes));
    }

    #[test]
    fn rows_follow_configuration_order() {
        let cfg = tiny();
        let rows = run_sweep(&cfg, 3).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2);
        let keys: Vec<(String, usize)> = rows.iter().map(|r| (r.dist.clone(), r.n)).collect();
        assert_eq!(keys[0], ("u:0.5".to_string(), 100));
        assert_eq!(keys[2], ("u:0.5".to_string(), 300));
        assert_eq!(keys[4], ("g:0:1:1:0.4".to_string(), 100));
        let seeds: std::collections::HashSet<u64> = rows.iter().map(|r| r.seed).collect();
        assert_eq!(seeds.len(), rows.len());
        for r in &rows {
            assert!(r.is_ok(), "{}", r.error);
            assert!(r.ratio_ub.unwrap() >= 1.0);
            assert!(r.err_sqrt_n.unwrap() >= 0.0);
            assert!(r.c_over_sqrt_n.unwrap() > 0.0);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = tiny();
        let strip = |mut rows: Vec<ExperimentRow>| {
            for r in rows.iter_mut() {
                r.solve_micros = None;
            }
            rows
        };
        assert_eq!(
            strip(run_sweep(&cfg, 1).unwrap()),
            strip(run_sweep(&cfg, 4).unwrap())
        );
    }

    #[test]
    fn csv_header_and_failed_rows() {
        let mut rows = run_sweep(&tiny(), 2).unwrap();
        rows.truncate(1);
        rows.push(ExperimentRow::failed(
            "u:0.5".into(),
            10,
            3,
            1,
            "boom".into(),
        ));
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "dist,n,h,seed,c,omega_prime,chi_prime,lower_bound,c_over_sqrt_n,err_sqrt_n,ratio_ub,solve_micros,error"
        );
        lines.next();
        assert_eq!(lines.next().unwrap(), "u:0.5,10,3,1,,,,,,,,,boom");
    }
}
