//! Syndrome decoding with key-equation failure detection and recovery.
//!
//! A received word y = c + e with errors at positions k_j determines 2*tau
//! syndromes, packed into a polynomial S. A single extended Euclidean pass
//! on (x^{2*tau}, S) yields an error locator candidate v_I whose left roots
//! point at the error positions. When the error values happen to be
//! algebraically dependent, v_I degenerates: its degree exceeds its number
//! of roots. That failure is detectable (equivalently: gcrd(v_I, r_I) is
//! not constant) and repairable by growing v_I with least common right
//! multiples until enough positions appear.

use rand::RngCore;

use crate::code::Code;
use crate::error::Error;
use crate::funcfield::{FunctionField, RationalFunction};
use crate::linalg;
use crate::sigma::SigmaField;
use crate::skew::{gcrd, lcrm, lcrm_many, right_euclid, SkewPoly};

/// Raw syndromes and the syndrome polynomial they assemble into.
#[derive(Clone, Debug)]
pub struct SyndromeData<F: SigmaField> {
    /// S_i = right evaluation of y at sigma^{r+i}(beta), i < 2*tau.
    pub raw: Vec<F::Elem>,
    /// S = sum_i sigma^i(alpha') S_i x^i with alpha' = sigma^r(alpha).
    pub poly: SkewPoly<F>,
}

impl<F: SigmaField> SyndromeData<F> {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// The Euclidean row where the remainder degree first drops below tau.
#[derive(Clone, Debug)]
pub struct KeyEqRow<F: SigmaField> {
    pub v: SkewPoly<F>,
    pub r: SkewPoly<F>,
    pub u: SkewPoly<F>,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    /// All syndromes were zero; the word was already a codeword.
    Clean,
    /// The key equation solved directly.
    Corrected,
    /// The key equation failed and the lcrm recovery pass repaired it.
    Recovered,
}

/// The reconstructed error, in display-normalized form: the locator is
/// right-monic (right scaling keeps its left roots) and the evaluator and
/// cofactors carry the same right factor.
#[derive(Clone, Debug)]
pub struct ErrorEstimate<F: SigmaField> {
    pub positions: Vec<usize>,
    pub values: Vec<F::Elem>,
    pub locator: SkewPoly<F>,
    pub evaluator: SkewPoly<F>,
    /// p_j with locator = ell_{k_j} * p_j, one per error position.
    pub cofactors: Vec<SkewPoly<F>>,
    pub recovered: bool,
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome<F: SigmaField> {
    pub status: DecodeStatus,
    pub codeword: SkewPoly<F>,
    pub message: SkewPoly<F>,
    pub estimate: Option<ErrorEstimate<F>>,
}

/// All 2*tau syndromes of a received word, via the precomputed norm table.
pub fn syndromes<F: SigmaField>(code: &Code<F>, y: &SkewPoly<F>) -> SyndromeData<F> {
    let f = code.field();
    let two_tau = 2 * code.tau();
    let raw: Vec<F::Elem> = (0..two_tau)
        .map(|i| {
            let mut acc = f.zero();
            for j in 0..code.n() {
                let c = y.coeff(j);
                if !f.is_zero(&c) {
                    acc = f.add(&acc, &f.mul(&c, code.syndrome_norm(i, j)));
                }
            }
            acc
        })
        .collect();
    let coeffs: Vec<F::Elem> = raw
        .iter()
        .enumerate()
        .map(|(i, s)| f.mul(&f.sigma_pow(code.dec_alpha(), i as i64), s))
        .collect();
    SyndromeData {
        poly: SkewPoly::from_coeffs(f, coeffs),
        raw,
    }
}

/// Runs the Euclidean algorithm on (x^{2*tau}, S) and returns the first row
/// whose remainder has degree below tau. Row invariants give
/// r_I - S*v_I = x^{2*tau}*u_I, which is the key equation.
pub fn solve_key_equation<F: SigmaField>(
    code: &Code<F>,
    synd: &SyndromeData<F>,
) -> Result<KeyEqRow<F>, Error> {
    if synd.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = code.field();
    let tau = code.tau();
    let x2t = SkewPoly::x_pow(f, 2 * tau);
    let table = right_euclid(&x2t, &synd.poly);
    for (i, row) in table.rows.iter().enumerate().skip(1) {
        if row.r.degree().map_or(true, |d| d < tau) {
            // Normalize the row by one right unit to make v right-monic;
            // the Bezout identity and all left-root structure survive.
            let dv = row.v.degree().expect("cofactor rows are nonzero") as i64;
            let unit = f.sigma_pow(&f.inv(&row.v.lc())?, -dv);
            return Ok(KeyEqRow {
                v: row.v.scale_right(&unit),
                r: row.r.scale_right(&unit),
                u: row.u.scale_right(&unit),
                index: i,
            });
        }
    }
    unreachable!("remainder degrees strictly decrease to the zero row")
}

/// The left root that position d contributes to the locator:
/// sigma^{d-1} of the inverse of sigma^r(beta).
fn position_root<F: SigmaField>(code: &Code<F>, d: usize) -> F::Elem {
    let f = code.field();
    let inv = f.inv(code.dec_beta()).expect("beta is nonzero");
    f.sigma_pow(&inv, d as i64 - 1)
}

/// 1 - sigma^d(beta') x, the degree-one factor owned by position d.
fn position_factor<F: SigmaField>(code: &Code<F>, d: usize) -> SkewPoly<F> {
    let f = code.field();
    SkewPoly::one_minus_ax(f, &f.sigma_pow(code.dec_beta(), d as i64))
}

/// Positions whose left root annihilates the candidate locator.
pub fn locate_positions<F: SigmaField>(code: &Code<F>, locator: &SkewPoly<F>) -> Vec<usize> {
    let f = code.field();
    (0..code.n())
        .filter(|&d| f.is_zero(&locator.left_eval(&position_root(code, d))))
        .collect()
}

/// Failure means the locator candidate has fewer left roots than its
/// degree: some error positions are hidden.
pub fn failure_detected<F: SigmaField>(row: &KeyEqRow<F>, positions: &[usize]) -> bool {
    row.v.degree().map_or(false, |d| d > positions.len())
}

/// Equivalent failure criterion on the true locator/evaluator pair: the
/// Euclidean candidate degenerates exactly when the true pair shares a
/// nontrivial common right divisor, which then cancels out of the table.
pub fn failure_by_gcrd<F: SigmaField>(lambda: &SkewPoly<F>, omega: &SkewPoly<F>) -> bool {
    match gcrd(lambda, omega) {
        Ok(d) => d.degree().map_or(false, |deg| deg > 0),
        Err(_) => false,
    }
}

/// Builds the locator/evaluator a given error pattern really has: the
/// locator is the right-monic lcrm of the position factors, the evaluator
/// collects the value-weighted cofactors.
pub fn true_locator_evaluator<F: SigmaField>(
    code: &Code<F>,
    positions: &[usize],
    values: &[F::Elem],
) -> Result<(SkewPoly<F>, SkewPoly<F>), Error> {
    assert_eq!(positions.len(), values.len(), "positions and values differ in count");
    let f = code.field();
    let factors: Vec<_> = positions
        .iter()
        .map(|&d| position_factor(code, d))
        .collect();
    let lambda = lcrm_many(&factors)?;
    let cofactors = locator_cofactors(code, positions, &lambda)?;
    let mut omega = SkewPoly::zero(f);
    for ((&kj, e), pj) in positions.iter().zip(values).zip(&cofactors) {
        let w = f.mul(e, &f.sigma_pow(code.dec_alpha(), kj as i64));
        omega = &omega + &pj.scale_left(&w);
    }
    Ok((lambda, omega))
}

/// Equivalent failure criterion on the true error values: the matrix
/// [sigma^i(e_j)] is singular exactly when decoding will fail.
pub fn values_are_dependent<F: SigmaField>(field: &F, values: &[F::Elem]) -> bool {
    let nu = values.len();
    if nu == 0 {
        return false;
    }
    let mat: Vec<Vec<F::Elem>> = (0..nu)
        .map(|i| {
            values
                .iter()
                .map(|e| field.sigma_pow(e, i as i64))
                .collect()
        })
        .collect();
    field.is_zero(&linalg::determinant(field, &mat))
}

/// Scans the unused positions, accumulating least common right multiples
/// of their factors onto f; the first factor that does not grow the degree
/// already left-divides the accumulation and names a hidden position.
pub fn find_a_position<F: SigmaField>(
    code: &Code<F>,
    f: &SkewPoly<F>,
    positions: &[usize],
) -> Result<usize, Error> {
    let mut acc = f.clone();
    for d in 0..code.n() {
        if positions.contains(&d) {
            continue;
        }
        let next = lcrm(&acc, &position_factor(code, d))?;
        if next.degree() == acc.degree() {
            return Ok(d);
        }
        acc = next;
    }
    Err(Error::NoPositionFound)
}

/// Grows the failed locator candidate with the factors of found positions
/// until every locator root is accounted for, then carries the evaluator
/// along by the exact cofactor. Returns (locator, evaluator, positions).
pub fn recover_from_failure<F: SigmaField>(
    code: &Code<F>,
    row: &KeyEqRow<F>,
    positions: &[usize],
) -> Result<(SkewPoly<F>, SkewPoly<F>, Vec<usize>), Error> {
    let mut f = row.v.clone();
    let mut pos: Vec<usize> = positions.to_vec();
    let mut guard = 0;
    while pos.len() < f.degree().unwrap_or(0) {
        guard += 1;
        if guard > code.n() {
            return Err(Error::Undecodable(
                "recovery did not converge within n steps".into(),
            ));
        }
        let d = find_a_position(code, &f, &pos)?;
        f = lcrm(&f, &position_factor(code, d))?;
        // Left divisors survive right multiplication, so previously found
        // positions stay; only the complement needs rescanning.
        for i in 0..code.n() {
            if !pos.contains(&i)
                && code
                    .field()
                    .is_zero(&f.left_eval(&position_root(code, i)))
            {
                pos.push(i);
            }
        }
        pos.sort_unstable();
    }
    if f.degree().map_or(false, |d| d > code.tau()) {
        return Err(Error::Undecodable(
            "recovered locator exceeds the decoding radius".into(),
        ));
    }
    // f is a right multiple of the original candidate, so the division
    // below is exact and transports the evaluator to the grown locator.
    let (g, rem) = f.right_divrem(&row.v)?;
    assert!(rem.is_zero(), "recovered locator is not a multiple of v_I");
    let omega = &row.r * &g;
    Ok((f, omega, pos))
}

/// Solves for the error values from the locator/evaluator pair: with
/// p_j the cofactor of position k_j in the locator,
/// omega = sum_j e_j sigma^{k_j}(alpha') p_j is linear in the e_j.
pub fn solve_error_values<F: SigmaField>(
    code: &Code<F>,
    positions: &[usize],
    locator: &SkewPoly<F>,
    evaluator: &SkewPoly<F>,
) -> Result<Vec<F::Elem>, Error> {
    let f = code.field();
    let nu = positions.len();
    if nu == 0 {
        return Ok(Vec::new());
    }
    if evaluator.degree().unwrap_or(0) >= nu {
        return Err(Error::Undecodable(
            "evaluator degree is not below the locator degree".into(),
        ));
    }
    let cofactors = locator_cofactors(code, positions, locator)?;
    let mat: Vec<Vec<F::Elem>> = (0..nu)
        .map(|i| {
            positions
                .iter()
                .zip(&cofactors)
                .map(|(&kj, pj)| {
                    let scale = f.sigma_pow(code.dec_alpha(), kj as i64);
                    f.mul(&scale, &pj.coeff(i))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<F::Elem> = (0..nu).map(|i| evaluator.coeff(i)).collect();
    let values = linalg::solve(f, &mat, &rhs)?;
    if values.iter().any(|e| f.is_zero(e)) {
        return Err(Error::ZeroErrorValue);
    }
    Ok(values)
}

/// p_j with locator = ell_{k_j} * p_j; every claimed position must divide
/// exactly.
fn locator_cofactors<F: SigmaField>(
    code: &Code<F>,
    positions: &[usize],
    locator: &SkewPoly<F>,
) -> Result<Vec<SkewPoly<F>>, Error> {
    positions
        .iter()
        .map(|&kj| {
            let (q, rem) = locator.right_divrem(&position_factor(code, kj))?;
            assert!(
                rem.is_zero(),
                "position {kj} does not left-divide the locator"
            );
            Ok(q)
        })
        .collect()
}

/// Full decoding pass.
///
/// With auto_recover off, a detected key-equation failure surfaces as
/// Err(KeyEquationFailure) instead of entering the recovery loop.
pub fn decode<F: SigmaField>(
    code: &Code<F>,
    y: &SkewPoly<F>,
    auto_recover: bool,
) -> Result<DecodeOutcome<F>, Error> {
    let f = code.field();
    let len = y.degree().map_or(0, |d| d + 1);
    if len > code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: len,
        });
    }
    let synd = syndromes(code, y);
    if synd.is_zero() {
        let (msg, rem) = y.left_divrem(code.generator())?;
        if !rem.is_zero() {
            // Only possible for delta = 2 codes, where there are no
            // syndromes at all and no correction capacity.
            return Err(Error::Undecodable(
                "word is not a codeword and the code has no syndromes".into(),
            ));
        }
        return Ok(DecodeOutcome {
            status: DecodeStatus::Clean,
            codeword: y.clone(),
            message: msg,
            estimate: None,
        });
    }

    let row = solve_key_equation(code, &synd)?;
    let direct_positions = locate_positions(code, &row.v);
    let failed = failure_detected(&row, &direct_positions);
    let (locator_raw, evaluator_raw, positions, recovered) = if failed {
        if !auto_recover {
            return Err(Error::KeyEquationFailure);
        }
        let (l, w, p) = recover_from_failure(code, &row, &direct_positions)?;
        (l, w, p, true)
    } else {
        (row.v.clone(), row.r.clone(), direct_positions, false)
    };

    if positions.len() > code.tau() {
        return Err(Error::Undecodable(
            "more error positions than the decoding radius".into(),
        ));
    }
    let values = solve_error_values(code, &positions, &locator_raw, &evaluator_raw)?;

    let mut err_coeffs = vec![f.zero(); code.n()];
    for (&kj, e) in positions.iter().zip(&values) {
        err_coeffs[kj] = e.clone();
    }
    let error_word = SkewPoly::from_coeffs(f, err_coeffs);
    let codeword = y - &error_word;
    if !code.is_codeword(&codeword) {
        return Err(Error::Undecodable(
            "correction failed the syndrome recheck".into(),
        ));
    }
    let (message, rem) = codeword.left_divrem(code.generator())?;
    assert!(rem.is_zero(), "verified codeword must be a multiple of g");

    // Display normalization: right-monic locator, evaluator and cofactors
    // carried along by the same right unit so the pair stays consistent.
    let locator = locator_raw.monic_right();
    let evaluator = if locator_raw.lc() == f.one() {
        evaluator_raw.clone()
    } else {
        let d = locator_raw.degree().unwrap() as i64;
        let unit = f.sigma_pow(&f.inv(&locator_raw.lc()).unwrap(), -d);
        evaluator_raw.scale_right(&unit)
    };
    let cofactors = locator_cofactors(code, &positions, &locator)?;
    Ok(DecodeOutcome {
        status: if recovered {
            DecodeStatus::Recovered
        } else {
            DecodeStatus::Corrected
        },
        codeword,
        message,
        estimate: Some(ErrorEstimate {
            positions,
            values,
            locator,
            evaluator,
            cofactors,
            recovered,
        }),
    })
}

/// A random error pattern: nu distinct positions, nonzero values.
#[derive(Clone, Debug)]
pub struct PlantedError {
    pub positions: Vec<usize>,
    pub values: Vec<RationalFunction>,
    pub word: SkewPoly<FunctionField>,
}

/// Plants nu errors with random rational values of the given degree bound.
/// With forced_dependent and nu >= 2, every value is a constant multiple
/// of the first, which makes the value matrix singular and guarantees a
/// key-equation failure.
pub fn plant_random_error(
    code: &Code<FunctionField>,
    rng: &mut dyn RngCore,
    nu: usize,
    degree_bound: usize,
    forced_dependent: bool,
) -> PlantedError {
    let f = code.field();
    let base = f.base();
    assert!(nu <= code.n(), "more positions than code length");
    let mut positions: Vec<usize> = Vec::with_capacity(nu);
    while positions.len() < nu {
        let d = (rng.next_u32() as usize) % code.n();
        if !positions.contains(&d) {
            positions.push(d);
        }
    }
    positions.sort_unstable();
    let values: Vec<RationalFunction> = if forced_dependent && nu >= 2 {
        let e1 = f.random_nonzero(rng, degree_bound);
        let mut vals = vec![e1.clone()];
        for _ in 1..nu {
            let c = loop {
                let c = base.random(rng);
                if !c.is_zero() {
                    break c;
                }
            };
            vals.push(&e1 * &RationalFunction::constant(&c));
        }
        vals
    } else {
        (0..nu).map(|_| f.random_nonzero(rng, degree_bound)).collect()
    };
    let mut coeffs = vec![f.zero(); code.n()];
    for (&d, e) in positions.iter().zip(&values) {
        coeffs[d] = e.clone();
    }
    PlantedError {
        word: SkewPoly::from_coeffs(f, coeffs),
        positions,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::testspecs::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn main_code() -> Code<FunctionField> {
        Code::from_spec_text(MAIN_SPEC).unwrap()
    }

    fn random_message(
        code: &Code<FunctionField>,
        rng: &mut ChaCha12Rng,
        bound: usize,
    ) -> SkewPoly<FunctionField> {
        let f = code.field();
        let coeffs = (0..code.k())
            .map(|_| {
                if rng.gen_bool(0.15) {
                    f.zero()
                } else {
                    f.random_nonzero(rng, bound)
                }
            })
            .collect();
        SkewPoly::from_coeffs(f, coeffs)
    }

    #[test]
    fn clean_words_round_trip() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF1);
        for _ in 0..20 {
            let msg = random_message(&code, &mut rng, 1);
            let c = code.encode(&msg).unwrap();
            let out = decode(&code, &c, true).unwrap();
            assert_eq!(out.status, DecodeStatus::Clean);
            assert_eq!(out.message, msg);
            assert_eq!(out.codeword, c);
            assert!(out.estimate.is_none());
        }
    }

    #[test]
    fn single_and_double_errors_correct() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF2);
        for nu in [1usize, 2] {
            for _ in 0..25 {
                let msg = random_message(&code, &mut rng, 1);
                let c = code.encode(&msg).unwrap();
                let planted = plant_random_error(&code, &mut rng, nu, 2, false);
                let y = &c + &planted.word;
                let out = decode(&code, &y, true).unwrap();
                assert_eq!(out.message, msg);
                assert_eq!(out.codeword, c);
                let est = out.estimate.unwrap();
                assert_eq!(est.positions, planted.positions);
                assert_eq!(est.values, planted.values);
                assert!(est.locator.lc().is_one());
                assert_eq!(est.locator.degree(), Some(nu));
            }
        }
    }

    #[test]
    fn forced_dependent_values_fail_and_recover() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF3);
        let mut saw_recovery = 0;
        for _ in 0..15 {
            let msg = random_message(&code, &mut rng, 1);
            let c = code.encode(&msg).unwrap();
            let planted = plant_random_error(&code, &mut rng, 2, 1, true);
            let y = &c + &planted.word;

            // All three failure criteria agree.
            let synd = syndromes(&code, &y);
            let row = solve_key_equation(&code, &synd).unwrap();
            let direct = locate_positions(&code, &row.v);
            assert!(failure_detected(&row, &direct));
            let (lambda_true, omega_true) =
                true_locator_evaluator(&code, &planted.positions, &planted.values).unwrap();
            assert!(failure_by_gcrd(&lambda_true, &omega_true));
            assert!(values_are_dependent(code.field(), &planted.values));

            // Without recovery the failure is an error; with it, decoding
            // lands on the planted codeword.
            assert_eq!(decode(&code, &y, false).unwrap_err(), Error::KeyEquationFailure);
            let out = decode(&code, &y, true).unwrap();
            assert_eq!(out.status, DecodeStatus::Recovered);
            assert_eq!(out.message, msg);
            let est = out.estimate.unwrap();
            assert_eq!(est.positions, planted.positions);
            assert_eq!(est.values, planted.values);
            // Recovery rebuilds exactly the locator the pattern owns.
            assert_eq!(est.locator, lambda_true);
            saw_recovery += 1;
        }
        assert_eq!(saw_recovery, 15);
    }

    #[test]
    fn independent_random_values_rarely_fail_but_criteria_still_agree() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF4);
        for _ in 0..30 {
            let msg = random_message(&code, &mut rng, 1);
            let c = code.encode(&msg).unwrap();
            let planted = plant_random_error(&code, &mut rng, 2, 2, false);
            let y = &c + &planted.word;
            let synd = syndromes(&code, &y);
            let row = solve_key_equation(&code, &synd).unwrap();
            let direct = locate_positions(&code, &row.v);
            let failed = failure_detected(&row, &direct);
            let (lambda_true, omega_true) =
                true_locator_evaluator(&code, &planted.positions, &planted.values).unwrap();
            assert_eq!(failed, failure_by_gcrd(&lambda_true, &omega_true));
            assert_eq!(
                failed,
                values_are_dependent(code.field(), &planted.values)
            );
            let out = decode(&code, &y, true).unwrap();
            assert_eq!(out.message, msg);
        }
    }

    #[test]
    fn key_equation_identity_holds_row_by_row() {
        // r_I - S*v_I = x^{2 tau} * u_I: every coefficient below x^{2 tau}
        // of S*v_I matches r_I.
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF5);
        for _ in 0..20 {
            let msg = random_message(&code, &mut rng, 1);
            let c = code.encode(&msg).unwrap();
            let nu = 1 + (rng.next_u32() as usize) % 2;
            let planted = plant_random_error(&code, &mut rng, nu, 2, false);
            let y = &c + &planted.word;
            let synd = syndromes(&code, &y);
            let row = solve_key_equation(&code, &synd).unwrap();
            let lhs = &row.r - &(&synd.poly * &row.v);
            let rhs = &SkewPoly::x_pow(code.field(), 2 * code.tau()) * &row.u;
            assert_eq!(lhs, rhs);
            assert!(row.index >= 2, "genuine errors need at least one division step");
        }
    }

    #[test]
    fn syndrome_polynomial_matches_direct_evaluation() {
        let code = main_code();
        let f = code.field().clone();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF6);
        for _ in 0..10 {
            let y = SkewPoly::from_coeffs(
                &f,
                (0..code.n()).map(|_| f.random_nonzero(&mut rng, 1)).collect(),
            );
            let synd = syndromes(&code, &y);
            for i in 0..2 * code.tau() {
                let point = f.sigma_pow(code.dec_beta(), i as i64);
                assert_eq!(synd.raw[i], y.right_eval(&point));
            }
        }
    }

    #[test]
    fn three_errors_exceed_the_radius() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF7);
        let mut hard_failures = 0;
        for _ in 0..15 {
            let msg = random_message(&code, &mut rng, 1);
            let c = code.encode(&msg).unwrap();
            let planted = plant_random_error(&code, &mut rng, 3, 1, false);
            let y = &c + &planted.word;
            match decode(&code, &y, true) {
                Err(_) => hard_failures += 1,
                Ok(out) => {
                    // A miscorrection still lands on some codeword within
                    // radius tau of y; it just is not ours.
                    assert!(code.is_codeword(&out.codeword));
                }
            }
        }
        assert!(hard_failures > 0, "plausible three-error patterns should often be undecodable");
    }

    #[test]
    fn oversized_words_are_rejected() {
        let code = main_code();
        let f = code.field();
        let y = SkewPoly::x_pow(f, code.n());
        assert_eq!(
            decode(&code, &y, true).unwrap_err(),
            Error::LengthMismatch { expected: 7, got: 8 }
        );
    }

    #[test]
    fn delta_two_code_detects_but_cannot_correct() {
        let code = Code::from_spec_text(INVOL_SPEC).unwrap();
        let f = code.field().clone();
        assert_eq!(code.tau(), 0);
        let msg = SkewPoly::constant(&f, f.parse_elem("t/(t+1)").unwrap());
        let c = code.encode(&msg).unwrap();
        let out = decode(&code, &c, true).unwrap();
        assert_eq!(out.status, DecodeStatus::Clean);
        assert_eq!(out.message, msg);
        let corrupted = &c + &SkewPoly::one(&f);
        assert!(matches!(
            decode(&code, &corrupted, true).unwrap_err(),
            Error::Undecodable(_)
        ));
    }

    #[test]
    fn planted_error_respects_its_contract() {
        let code = main_code();
        let mut rng = ChaCha12Rng::seed_from_u64(0xF8);
        for nu in 0..=3 {
            let p = plant_random_error(&code, &mut rng, nu, 2, false);
            assert_eq!(p.positions.len(), nu);
            assert_eq!(p.values.len(), nu);
            let mut sorted = p.positions.clone();
            sorted.dedup();
            assert_eq!(sorted, p.positions);
            for (d, e) in p.positions.iter().zip(&p.values) {
                assert_eq!(&p.word.coeff(*d), e);
                assert!(!e.is_zero());
            }
        }
        // Forced dependence puts constants between the values.
        let p = plant_random_error(&code, &mut rng, 2, 0, true);
        let ratio = p.values[1].checked_div(&p.values[0]).unwrap();
        assert!(ratio.is_constant());
    }
}
