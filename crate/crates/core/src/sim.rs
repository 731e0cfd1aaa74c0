//! Monte-Carlo channel simulation for failure-rate experiments.
//!
//! Every trial encodes a random message, plants a random error pattern,
//! decodes, and classifies the outcome. Trial i draws all of its
//! randomness from a counter-mode stream derived from (seed, i), so the
//! result of a run depends only on the seed and the configuration, never
//! on how trials are scheduled across workers. Counts are merged by
//! addition, which is order-independent, and wall time is kept out of the
//! machine-readable report; together this makes reports byte-identical at
//! any parallelism level.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::code::Code;
use crate::decode::{decode, plant_random_error, DecodeStatus, PlantedError};
use crate::error::Error;
use crate::funcfield::FunctionField;
use crate::sigma::SigmaField;
use crate::skew::SkewPoly;

/// How many errors each trial plants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCount {
    Fixed(usize),
    /// Uniform in 0..=tau, drawn per trial.
    Random,
}

/// How error values are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueMode {
    /// Ratios of uniform random polynomials within the degree bound.
    Random,
    /// Every value is 1. With two or more errors the values are linearly
    /// dependent over the fixed field, so the key equation always fails.
    AllOnes,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub seed: u64,
    pub trials: usize,
    pub errors: ErrorCount,
    /// Degree bounds to sweep; a single entry means no sweep.
    pub degree_bounds: Vec<usize>,
    pub jobs: usize,
    pub auto_recover: bool,
    pub values: ValueMode,
}

impl SimConfig {
    fn validate(&self, code: &Code<FunctionField>) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::InvalidField("trials must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidField("jobs must be at least 1".into()));
        }
        if self.degree_bounds.is_empty() {
            return Err(Error::InvalidField("no degree bounds given".into()));
        }
        if let ErrorCount::Fixed(nu) = self.errors {
            if nu > code.tau() {
                return Err(Error::InvalidField(format!(
                    "{} errors exceed the correction radius {}",
                    nu,
                    code.tau()
                )));
            }
        }
        Ok(())
    }

    fn errors_label(&self) -> String {
        match self.errors {
            ErrorCount::Fixed(nu) => nu.to_string(),
            ErrorCount::Random => "random".into(),
        }
    }
}

/// Outcome counts for one degree bound. Success and undecodable
/// partition the trials; failures count every key-equation failure seen,
/// recovered or not.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundCounts {
    pub trials: usize,
    pub successes: usize,
    pub key_equation_failures: usize,
    pub recoveries: usize,
    pub undecodable: usize,
}

impl BoundCounts {
    fn absorb(&mut self, other: BoundCounts) {
        self.trials += other.trials;
        self.successes += other.successes;
        self.key_equation_failures += other.key_equation_failures;
        self.recoveries += other.recoveries;
        self.undecodable += other.undecodable;
    }

    pub fn failure_rate(&self) -> f64 {
        self.key_equation_failures as f64 / self.trials.max(1) as f64
    }
}

#[derive(Clone, Debug)]
pub struct SimReport {
    pub seed: u64,
    pub trials: usize,
    pub errors_label: String,
    pub auto_recover: bool,
    pub values: ValueMode,
    pub rows: Vec<(usize, BoundCounts)>,
    pub wall_time: Duration,
}

impl SimReport {
    /// Line-oriented key=value form; excludes wall time and worker count
    /// so identical (seed, config) runs compare byte for byte.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "config seed={} trials={} errors={} recover={} values={}",
            self.seed,
            self.trials,
            self.errors_label,
            self.auto_recover,
            match self.values {
                ValueMode::Random => "random",
                ValueMode::AllOnes => "ones",
            }
        )];
        for (bound, c) in &self.rows {
            lines.push(format!(
                "bound={} trials={} successes={} key_equation_failures={} recoveries={} undecodable={}",
                bound, c.trials, c.successes, c.key_equation_failures, c.recoveries, c.undecodable
            ));
        }
        lines
    }

    /// Human-readable table, wall time included.
    pub fn human_table(&self) -> String {
        let mut s = format!(
            "{} trials per bound, {} errors, seed {}, recovery {}\n",
            self.trials,
            self.errors_label,
            self.seed,
            if self.auto_recover { "on" } else { "off" },
        );
        s.push_str("bound  success  keyeq-fail  recovered  undecodable  fail-rate\n");
        for (bound, c) in &self.rows {
            s.push_str(&format!(
                "{:<5}  {:<7}  {:<10}  {:<9}  {:<11}  {:.4}\n",
                bound,
                c.successes,
                c.key_equation_failures,
                c.recoveries,
                c.undecodable,
                c.failure_rate()
            ));
        }
        s.push_str(&format!("wall time: {:.2?}\n", self.wall_time));
        s
    }
}

/// Runs the whole experiment described by the configuration.
pub fn simulate(code: &Code<FunctionField>, cfg: &SimConfig) -> Result<SimReport, Error> {
    cfg.validate(code)?;
    let start = Instant::now();
    let mut rows = Vec::with_capacity(cfg.degree_bounds.len());
    for (bi, &bound) in cfg.degree_bounds.iter().enumerate() {
        // Distinct bounds use disjoint stream ranges so adding a bound
        // never reshuffles another bound's trials.
        let stream_base = (bi * cfg.trials) as u64;
        rows.push((bound, run_bound(code, cfg, bound, stream_base)));
    }
    Ok(SimReport {
        seed: cfg.seed,
        trials: cfg.trials,
        errors_label: cfg.errors_label(),
        auto_recover: cfg.auto_recover,
        values: cfg.values,
        rows,
        wall_time: start.elapsed(),
    })
}

fn run_bound(
    code: &Code<FunctionField>,
    cfg: &SimConfig,
    bound: usize,
    stream_base: u64,
) -> BoundCounts {
    let jobs = cfg.jobs.min(cfg.trials).max(1);
    if jobs == 1 {
        let mut counts = BoundCounts::default();
        for i in 0..cfg.trials {
            counts.absorb(run_trial(code, cfg, bound, stream_base + i as u64));
        }
        return counts;
    }
    let mut counts = BoundCounts::default();
    std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut local = BoundCounts::default();
                    let mut i = w;
                    while i < cfg.trials {
                        local.absorb(run_trial(code, cfg, bound, stream_base + i as u64));
                        i += jobs;
                    }
                    local
                })
            })
            .collect();
        for worker in workers {
            counts.absorb(worker.join().expect("simulation worker panicked"));
        }
    });
    counts
}

/// One encode/corrupt/decode round, fully determined by (seed, stream).
fn run_trial(code: &Code<FunctionField>, cfg: &SimConfig, bound: usize, stream: u64) -> BoundCounts {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let f = code.field();

    let nu = match cfg.errors {
        ErrorCount::Fixed(nu) => nu,
        ErrorCount::Random => (rand::RngCore::next_u32(&mut rng) as usize) % (code.tau() + 1),
    };
    let message = SkewPoly::from_coeffs(
        f,
        (0..code.k()).map(|_| f.random_nonzero(&mut rng, bound)).collect(),
    );
    let sent = code.encode(&message).expect("message length is k");

    let planted = match cfg.values {
        ValueMode::Random => plant_random_error(code, &mut rng, nu, bound, false),
        ValueMode::AllOnes => plant_all_ones(code, &mut rng, nu),
    };
    let received = &sent + &planted.word;

    let mut c = BoundCounts {
        trials: 1,
        ..BoundCounts::default()
    };
    match decode(code, &received, cfg.auto_recover) {
        Ok(outcome) => {
            if outcome.status == DecodeStatus::Recovered {
                c.key_equation_failures += 1;
                c.recoveries += 1;
            }
            if outcome.codeword == sent && outcome.message == message {
                c.successes += 1;
            } else {
                // Impossible within the correction radius; a count here
                // means a decoder bug, not channel noise.
                debug_assert!(false, "decoder returned a wrong codeword");
                c.undecodable += 1;
            }
        }
        Err(Error::KeyEquationFailure) => {
            c.key_equation_failures += 1;
            c.undecodable += 1;
        }
        Err(_) => c.undecodable += 1,
    }
    c
}

/// Plants nu errors whose values are all exactly 1 at distinct random
/// positions: the published failure pattern, generalized.
fn plant_all_ones(
    code: &Code<FunctionField>,
    rng: &mut dyn rand::RngCore,
    nu: usize,
) -> PlantedError {
    let f = code.field();
    let mut positions: Vec<usize> = Vec::with_capacity(nu);
    while positions.len() < nu {
        let d = (rng.next_u32() as usize) % code.n();
        if !positions.contains(&d) {
            positions.push(d);
        }
    }
    positions.sort_unstable();
    let mut coeffs = vec![f.zero(); code.n()];
    for &d in &positions {
        coeffs[d] = f.one();
    }
    PlantedError {
        word: SkewPoly::from_coeffs(f, coeffs),
        values: vec![f.one(); nu],
        positions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn main_code() -> Code<FunctionField> {
        Code::from_spec_text(crate::replay::MAIN_CODE_SPEC).unwrap()
    }

    fn config(trials: usize, errors: ErrorCount, bounds: &[usize]) -> SimConfig {
        SimConfig {
            seed: 0xC0FFEE,
            trials,
            errors,
            degree_bounds: bounds.to_vec(),
            jobs: 1,
            auto_recover: true,
            values: ValueMode::Random,
        }
    }

    #[test]
    fn single_clean_trial_succeeds() {
        let code = main_code();
        let report = simulate(&code, &config(1, ErrorCount::Fixed(0), &[1])).unwrap();
        let (_, c) = report.rows[0];
        assert_eq!(c.trials, 1);
        assert_eq!(c.successes, 1);
        assert_eq!(c.key_equation_failures, 0);
        assert_eq!(c.undecodable, 0);
    }

    #[test]
    fn all_ones_values_always_fail_and_recover() {
        let code = main_code();
        let mut cfg = config(25, ErrorCount::Fixed(2), &[1]);
        cfg.values = ValueMode::AllOnes;
        let report = simulate(&code, &cfg).unwrap();
        let (_, c) = report.rows[0];
        assert_eq!(c.key_equation_failures, c.trials);
        assert_eq!(c.recoveries, c.trials);
        assert_eq!(c.successes, c.trials);
    }

    #[test]
    fn all_ones_without_recovery_reports_failures_as_undecodable() {
        let code = main_code();
        let mut cfg = config(10, ErrorCount::Fixed(2), &[1]);
        cfg.values = ValueMode::AllOnes;
        cfg.auto_recover = false;
        let report = simulate(&code, &cfg).unwrap();
        let (_, c) = report.rows[0];
        assert_eq!(c.key_equation_failures, 10);
        assert_eq!(c.recoveries, 0);
        assert_eq!(c.undecodable, 10);
        assert_eq!(c.successes, 0);
    }

    #[test]
    fn counts_partition_trials() {
        let code = main_code();
        let report = simulate(&code, &config(40, ErrorCount::Random, &[0, 2])).unwrap();
        for (_, c) in &report.rows {
            assert_eq!(c.trials, 40);
            assert_eq!(c.successes + c.undecodable, c.trials);
            assert!(c.recoveries <= c.key_equation_failures);
        }
    }

    #[test]
    fn reports_are_identical_across_parallelism() {
        let code = main_code();
        let mut cfg = config(30, ErrorCount::Fixed(2), &[0, 3]);
        let serial = simulate(&code, &cfg).unwrap();
        cfg.jobs = 8;
        let parallel = simulate(&code, &cfg).unwrap();
        assert_eq!(serial.machine_lines(), parallel.machine_lines());
        // Degenerate worker counts collapse to whatever workers can be fed.
        cfg.jobs = 100;
        let oversubscribed = simulate(&code, &cfg).unwrap();
        assert_eq!(serial.machine_lines(), oversubscribed.machine_lines());
    }

    #[test]
    fn zero_degree_bound_with_two_errors_always_fails() {
        // Constant values are always linearly dependent over the fixed
        // field, so every pair of planted errors degenerates.
        let code = main_code();
        let report = simulate(&code, &config(15, ErrorCount::Fixed(2), &[0])).unwrap();
        let (_, c) = report.rows[0];
        assert_eq!(c.key_equation_failures, 15);
        assert_eq!(c.recoveries, 15);
        assert_eq!(c.successes, 15);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let code = main_code();
        assert!(simulate(&code, &config(0, ErrorCount::Fixed(1), &[1])).is_err());
        assert!(simulate(&code, &config(5, ErrorCount::Fixed(3), &[1])).is_err());
        assert!(simulate(&code, &config(5, ErrorCount::Fixed(1), &[])).is_err());
        let mut cfg = config(5, ErrorCount::Fixed(1), &[1]);
        cfg.jobs = 0;
        assert!(simulate(&code, &cfg).is_err());
    }

    #[test]
    fn machine_lines_omit_timing() {
        let code = main_code();
        let report = simulate(&code, &config(3, ErrorCount::Fixed(1), &[1])).unwrap();
        for line in report.machine_lines() {
            assert!(!line.contains("time"), "machine line leaks timing: {line}");
        }
        assert_eq!(report.machine_lines().len(), 2);
    }
}
