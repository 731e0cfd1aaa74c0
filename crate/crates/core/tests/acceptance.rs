//! The project's acceptance gate. Each numbered check exercises one
//! shipped guarantee end to end and prints a PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see the table.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use skewbch::code::{conjugate_lclm, random_normal_alpha, Code};
use skewbch::decode::{
    decode, failure_by_gcrd, failure_detected, locate_positions, plant_random_error,
    solve_key_equation, syndromes, true_locator_evaluator, values_are_dependent, DecodeStatus,
    PlantedError,
};
use skewbch::funcfield::FunctionField;
use skewbch::replay;
use skewbch::sigma::SigmaField;
use skewbch::sim::{simulate, ErrorCount, SimConfig, ValueMode};
use skewbch::skew::{gcrd, right_euclid, SkewPoly};

struct Gate {
    results: Vec<(String, bool)>,
}

impl Gate {
    fn new() -> Self {
        Gate { results: Vec::new() }
    }

    fn run<F>(&mut self, number: usize, name: &str, budget: Option<Duration>, body: F)
    where
        F: FnOnce() -> Result<(), String>,
    {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(body));
        let elapsed = start.elapsed();
        let failure = match outcome {
            Ok(Ok(())) => None,
            Ok(Err(msg)) => Some(msg),
            Err(panic) => Some(
                panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        let overran = budget.map_or(false, |b| elapsed > b);
        let passed = failure.is_none() && !overran;
        let mut line = format!(
            "ACCEPTANCE {} {}: {} ({:.2?}",
            number,
            name,
            if passed { "PASS" } else { "FAIL" },
            elapsed
        );
        if let Some(b) = budget {
            line.push_str(&format!(", budget {:.0?}", b));
        }
        line.push(')');
        if overran {
            line.push_str(" [over budget]");
        }
        if let Some(msg) = failure {
            line.push_str(&format!(" [{msg}]"));
        }
        println!("{line}");
        self.results.push((line, passed));
    }
}

fn main_code() -> Code<FunctionField> {
    Code::from_spec_text(replay::MAIN_CODE_SPEC).expect("reference spec builds")
}

fn x_pow_n_minus_one(f: &FunctionField, n: usize) -> SkewPoly<FunctionField> {
    &SkewPoly::x_pow(f, n) - &SkewPoly::one(f)
}

/// A random skew polynomial of the exact degree given, with small
/// rational coefficients.
fn random_skew_of_degree(
    f: &FunctionField,
    rng: &mut ChaCha12Rng,
    degree: usize,
) -> SkewPoly<FunctionField> {
    use rand::RngCore;
    let coeffs: Vec<_> = (0..=degree)
        .map(|i| {
            if i < degree && rng.next_u32() % 4 == 0 {
                f.zero()
            } else {
                f.random_nonzero(rng, 1)
            }
        })
        .collect();
    SkewPoly::from_coeffs(f, coeffs)
}

/// nu errors, all with value exactly 1, at distinct random positions.
fn plant_all_ones(
    code: &Code<FunctionField>,
    rng: &mut ChaCha12Rng,
    nu: usize,
) -> PlantedError {
    use rand::RngCore;
    let f = code.field();
    let mut positions: Vec<usize> = Vec::new();
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

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn criterion_1_reference_replay() -> Result<(), String> {
    let checks = replay::run_all();
    check(checks.len() > 20, "replay suite lost checks")?;
    for c in &checks {
        check(
            c.passed,
            &format!("{} diverged: expected {}, computed {}", c.name, c.expected, c.computed),
        )?;
    }
    Ok(())
}

fn criterion_2_conjugate_factorization() -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC02);
    for spec in [replay::MAIN_CODE_SPEC, replay::INVOLUTION_CODE_SPEC] {
        let code = Code::from_spec_text(spec).map_err(|e| e.to_string())?;
        let f = code.field();
        let target = x_pow_n_minus_one(f, code.n());
        for i in 0..20 {
            let alpha =
                random_normal_alpha(f, &mut rng, 1, 5000).map_err(|e| e.to_string())?;
            let beta = f.mul(
                &f.inv(&alpha).map_err(|e| e.to_string())?,
                &f.sigma_pow(&alpha, 1),
            );
            let product = conjugate_lclm(f, &beta).map_err(|e| e.to_string())?;
            check(
                product == target,
                &format!("conjugate lclm missed x^n-1 at sample {i}"),
            )?;
        }
    }
    Ok(())
}

fn criterion_3_round_trip_decoding() -> Result<(), String> {
    let code = main_code();
    let f = code.field();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC03);
    for nu in 0..=2usize {
        for rep in 0..200 {
            let message = SkewPoly::from_coeffs(
                f,
                (0..code.k()).map(|_| f.random_nonzero(&mut rng, 3)).collect(),
            );
            let sent = code.encode(&message).map_err(|e| e.to_string())?;
            let planted = plant_random_error(&code, &mut rng, nu, 3, false);
            let received = &sent + &planted.word;
            let outcome = decode(&code, &received, true)
                .map_err(|e| format!("nu={nu} rep={rep}: {e}"))?;
            check(
                outcome.codeword == sent && outcome.message == message,
                &format!("nu={nu} rep={rep}: corrected to a different codeword"),
            )?;
        }
    }
    Ok(())
}

fn criterion_4_euclidean_rows() -> Result<(), String> {
    let code = main_code();
    let f = code.field();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC04);
    for rep in 0..500 {
        use rand::RngCore;
        let df = (rng.next_u32() as usize) % 7;
        let dg = (rng.next_u32() as usize) % 7;
        let a = random_skew_of_degree(f, &mut rng, df.max(dg));
        let b = random_skew_of_degree(f, &mut rng, df.min(dg));
        let table = right_euclid(&a, &b);
        for (i, row) in table.rows.iter().enumerate() {
            check(
                &(&a * &row.u) + &(&b * &row.v) == row.r,
                &format!("rep={rep} row={i}: Bezout identity broke"),
            )?;
            if i >= 1 {
                let d = gcrd(&row.u, &row.v).map_err(|e| e.to_string())?;
                check(
                    d.degree() == Some(0),
                    &format!("rep={rep} row={i}: cofactors share a factor"),
                )?;
                if let (Some(dr), Some(dv)) =
                    (table.rows[i - 1].r.degree(), row.v.degree())
                {
                    check(
                        a.degree() == Some(dr + dv),
                        &format!("rep={rep} row={i}: degree identity broke"),
                    )?;
                }
            }
        }
        // Division identities, both sides, with a reconstruction witness
        // for uniqueness.
        let (q, r) = a.right_divrem(&b).map_err(|e| e.to_string())?;
        check(&(&b * &q) + &r == a, &format!("rep={rep}: right division identity"))?;
        check(
            r.degree().unwrap_or(0) < b.degree().unwrap_or(1) || r.is_zero(),
            &format!("rep={rep}: right remainder too large"),
        )?;
        let again = a.right_divrem(&b).map_err(|e| e.to_string())?;
        check(again == (q, r), &format!("rep={rep}: right division not canonical"))?;
        let (q, r) = a.left_divrem(&b).map_err(|e| e.to_string())?;
        check(&(&q * &b) + &r == a, &format!("rep={rep}: left division identity"))?;
        check(
            r.degree().unwrap_or(0) < b.degree().unwrap_or(1) || r.is_zero(),
            &format!("rep={rep}: left remainder too large"),
        )?;
    }
    Ok(())
}

fn criterion_5_key_equation_identity() -> Result<(), String> {
    let code = main_code();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC05);
    let two_tau = 2 * code.tau();
    for rep in 0..200 {
        let nu = 1 + rep % 2;
        let forced = rep % 8 == 7 && nu == 2;
        let planted = plant_random_error(&code, &mut rng, nu, 2, forced);
        let (lambda, omega) = true_locator_evaluator(&code, &planted.positions, &planted.values)
            .map_err(|e| e.to_string())?;
        let synd = syndromes(&code, &planted.word);
        let diff = &omega - &(&synd.poly * &lambda);
        for i in 0..two_tau {
            check(
                code.field().is_zero(&diff.coeff(i)),
                &format!("rep={rep}: key equation residue at x^{i}"),
            )?;
        }
        let row = solve_key_equation(&code, &synd).map_err(|e| e.to_string())?;
        let (cof, rem) = lambda.right_divrem(&row.v).map_err(|e| e.to_string())?;
        check(rem.is_zero(), &format!("rep={rep}: candidate does not divide locator"))?;
        check(
            cof.degree().map_or(false, |d| d < nu),
            &format!("rep={rep}: cofactor degree reached nu"),
        )?;
    }
    Ok(())
}

fn agree_and_recover(
    code: &Code<FunctionField>,
    rng: &mut ChaCha12Rng,
    planted: &PlantedError,
    expect_failure: Option<bool>,
    label: &str,
) -> Result<(), String> {
    let f = code.field();
    let synd = syndromes(code, &planted.word);
    let row = solve_key_equation(code, &synd).map_err(|e| e.to_string())?;
    let positions = locate_positions(code, &row.v);
    let (lambda, omega) = true_locator_evaluator(code, &planted.positions, &planted.values)
        .map_err(|e| e.to_string())?;
    let by_degree = failure_detected(&row, &positions);
    let by_gcrd = failure_by_gcrd(&lambda, &omega);
    let by_det = values_are_dependent(f, &planted.values);
    check(
        by_degree == by_gcrd && by_gcrd == by_det,
        &format!("{label}: criteria disagree (degree={by_degree} gcrd={by_gcrd} det={by_det})"),
    )?;
    if let Some(expected) = expect_failure {
        check(by_degree == expected, &format!("{label}: expected failure={expected}"))?;
    }
    if by_degree {
        // Every failure must be repaired by the recovery pass.
        let message = SkewPoly::from_coeffs(
            f,
            (0..code.k()).map(|_| f.random_nonzero(rng, 2)).collect(),
        );
        let sent = code.encode(&message).map_err(|e| e.to_string())?;
        let outcome = decode(code, &(&sent + &planted.word), true)
            .map_err(|e| format!("{label}: recovery failed: {e}"))?;
        check(
            outcome.status == DecodeStatus::Recovered && outcome.codeword == sent,
            &format!("{label}: recovery produced the wrong word"),
        )?;
    }
    Ok(())
}

fn criterion_6_failure_criteria_agree() -> Result<(), String> {
    let code = main_code();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC06);
    for rep in 0..200 {
        let planted = plant_random_error(&code, &mut rng, 2, 2, false);
        agree_and_recover(&code, &mut rng, &planted, None, &format!("random rep={rep}"))?;
    }
    for rep in 0..50 {
        // Alternate the two dependent shapes: all-ones values and random
        // constant multiples of a shared value.
        let planted = if rep % 2 == 0 {
            plant_all_ones(&code, &mut rng, 2)
        } else {
            plant_random_error(&code, &mut rng, 2, 2, true)
        };
        agree_and_recover(&code, &mut rng, &planted, Some(true), &format!("forced rep={rep}"))?;
    }
    Ok(())
}

fn criterion_7_designed_distance() -> Result<(), String> {
    for spec in [
        replay::MAIN_CODE_SPEC,
        replay::INVOLUTION_CODE_SPEC,
        replay::PRIME_CODE_SPEC,
    ] {
        let code = Code::from_spec_text(spec).map_err(|e| e.to_string())?;
        let ok = code.verify_designed_distance().map_err(|e| e.to_string())?;
        check(ok, &format!("a minor is singular for delta={}", code.delta()))?;
    }
    Ok(())
}

fn criterion_8_simulator_determinism() -> Result<(), String> {
    let code = main_code();
    let mut cfg = SimConfig {
        seed: 0xAC08,
        trials: 150,
        errors: ErrorCount::Fixed(2),
        degree_bounds: vec![1, 3],
        jobs: 1,
        auto_recover: true,
        values: ValueMode::Random,
    };
    let serial = simulate(&code, &cfg).map_err(|e| e.to_string())?;
    cfg.jobs = 8;
    let parallel = simulate(&code, &cfg).map_err(|e| e.to_string())?;
    check(
        serial.machine_lines() == parallel.machine_lines(),
        "reports differ between parallelism 1 and 8",
    )
}

fn criterion_9_failure_rate_trend() -> Result<(), String> {
    let code = main_code();
    let cfg = SimConfig {
        seed: 0xAC09,
        trials: 500,
        errors: ErrorCount::Fixed(2),
        degree_bounds: vec![0, 1, 2, 4],
        jobs: 8,
        auto_recover: true,
        values: ValueMode::Random,
    };
    let report = simulate(&code, &cfg).map_err(|e| e.to_string())?;
    for (bound, c) in &report.rows {
        check(
            c.successes == c.trials && c.undecodable == 0,
            &format!("bound {bound}: a trial went unrecovered"),
        )?;
        check(
            c.recoveries == c.key_equation_failures,
            &format!("bound {bound}: failure without recovery"),
        )?;
    }
    let first = report.rows.first().map(|(_, c)| c.failure_rate()).unwrap_or(1.0);
    let last = report.rows.last().map(|(_, c)| c.failure_rate()).unwrap_or(1.0);
    check(
        last <= first,
        &format!("failure rate grew with the degree bound ({first:.3} -> {last:.3})"),
    )
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();
    gate.run(
        1,
        "worked reference values replay exactly",
        Some(Duration::from_secs(10)),
        criterion_1_reference_replay,
    );
    gate.run(
        2,
        "conjugate factors multiply out to x^n-1",
        Some(Duration::from_secs(30)),
        criterion_2_conjugate_factorization,
    );
    gate.run(
        3,
        "600 random round trips all correct",
        Some(Duration::from_secs(120)),
        criterion_3_round_trip_decoding,
    );
    gate.run(4, "Euclidean table invariants", None, criterion_4_euclidean_rows);
    gate.run(5, "key equation identity", None, criterion_5_key_equation_identity);
    gate.run(
        6,
        "failure criteria agree and recover",
        None,
        criterion_6_failure_criteria_agree,
    );
    gate.run(
        7,
        "designed distance verified by minors",
        Some(Duration::from_secs(10)),
        criterion_7_designed_distance,
    );
    gate.run(8, "simulator reports are scheduling-independent", None, criterion_8_simulator_determinism);
    gate.run(9, "failure rate shrinks as coefficients grow", None, criterion_9_failure_rate_trend);

    let failures: Vec<_> = gate
        .results
        .iter()
        .filter(|(_, passed)| !passed)
        .map(|(line, _)| line.clone())
        .collect();
    assert!(
        failures.is_empty(),
        "acceptance criteria failed:\n{}",
        failures.join("\n")
    );
}
