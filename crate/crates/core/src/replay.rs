//! End-to-end replays of the library's worked reference computations.
//!
//! Each check rebuilds one published intermediate value from nothing but
//! the code parameters and compares against the published form. Scalar
//! facts (orders, positions, statuses) must match textually; field and
//! polynomial values are compared exactly as elements, since the published
//! fractions are not always reduced to our canonical num/den scaling.
//! Together the checks pin the whole pipeline: field arithmetic,
//! automorphism powers, skew products, both Euclidean algorithms, the
//! syndrome decoder, and the failure recovery path.

use crate::code::Code;
use crate::decode::{
    decode, find_a_position, locate_positions, solve_key_equation, syndromes,
};
use crate::funcfield::{FunctionField, RationalFunction};
use crate::sigma::{normal_basis_determinant, SigmaField};
use crate::skew::{gcrd, lcrm, SkewPoly};

/// [7, 3] code over GF(8)(t): sigma(t) = (t+a)/t of order 7, alpha = t,
/// designed distance 5.
pub const MAIN_CODE_SPEC: &str =
    "field p=2 m=3 modulus=1,1,0,1\nsigma image=(t+a)/t\ncode alpha=t r=0 delta=5\n";

/// [2, 1] code over GF(8)(t): sigma(t) = 1/t, alpha = t, distance 2.
pub const INVOLUTION_CODE_SPEC: &str =
    "field p=2 m=3 modulus=1,1,0,1\nsigma image=1/t\ncode alpha=t r=0 delta=2\n";

/// [2, 1] code over GF(3)(t): sigma(t) = 2t, alpha = t+1, r = 1.
pub const PRIME_CODE_SPEC: &str =
    "field p=3 m=1 modulus=0,1\nsigma image=2t\ncode alpha=t+1 r=1 delta=2\n";

#[derive(Clone, Debug)]
pub struct ReplayCheck {
    pub name: &'static str,
    /// The reference value, verbatim where possible.
    pub expected: String,
    /// Our canonical rendering of the recomputed value.
    pub computed: String,
    pub passed: bool,
}

fn check_text(out: &mut Vec<ReplayCheck>, name: &'static str, expected: &str, computed: String) {
    out.push(ReplayCheck {
        name,
        passed: expected == computed,
        expected: expected.to_string(),
        computed,
    });
}

fn check_elem(
    out: &mut Vec<ReplayCheck>,
    field: &FunctionField,
    name: &'static str,
    published: &str,
    value: &RationalFunction,
) {
    let parsed = field.parse_elem(published).expect("published element parses");
    out.push(ReplayCheck {
        name,
        passed: parsed == *value,
        expected: published.to_string(),
        computed: value.render(),
    });
}

fn check_skew(
    out: &mut Vec<ReplayCheck>,
    field: &FunctionField,
    name: &'static str,
    published: &str,
    value: &SkewPoly<FunctionField>,
) {
    let parsed = SkewPoly::parse(field, published).expect("published polynomial parses");
    out.push(ReplayCheck {
        name,
        passed: parsed == *value,
        expected: published.to_string(),
        computed: value.render(),
    });
}

/// Runs every reference replay and reports one comparison per line item.
pub fn run_all() -> Vec<ReplayCheck> {
    let mut out = Vec::new();
    main_code_checks(&mut out);
    small_code_checks(&mut out);
    syndrome_decoding_checks(&mut out);
    failure_recovery_checks(&mut out);
    out
}

fn main_code_checks(out: &mut Vec<ReplayCheck>) {
    let code = Code::from_spec_text(MAIN_CODE_SPEC).expect("reference spec builds");
    check_text(out, "main code: automorphism order", "7", code.n().to_string());
    check_text(out, "main code: dimensions n,k,tau", "7,3,2", {
        format!("{},{},{}", code.n(), code.k(), code.tau())
    });
    check_elem(out, code.field(), "main code: beta", "(t+a)/t^2", code.beta());
    check_text(
        out,
        "main code: generator degree",
        "4",
        code.generator()
            .degree()
            .map_or("none".into(), |d| d.to_string()),
    );
}

fn small_code_checks(out: &mut Vec<ReplayCheck>) {
    let code = Code::from_spec_text(INVOLUTION_CODE_SPEC).expect("reference spec builds");
    let f = code.field();
    let det = normal_basis_determinant(f, code.alpha());
    check_elem(out, f, "involution code: normal basis determinant", "t^2+1/t^2", &det);
    check_elem(out, f, "involution code: beta", "1/t^2", code.beta());
    check_skew(out, f, "involution code: generator", "x+1/t^2", code.generator());

    let code = Code::from_spec_text(PRIME_CODE_SPEC).expect("reference spec builds");
    let f = code.field();
    check_elem(out, f, "prime field code: beta", "(2t+1)/(t+1)", code.beta());
    // The published minimal generator matrix (t+1  t+2) is the generator
    // x + (t+1)/(t+2) with its denominator cleared.
    check_skew(out, f, "prime field code: generator", "x+(t+1)/(t+2)", code.generator());
}

/// The [7, 3] code's generator, transmitted as-is, with its degree 1 and 2
/// coefficients knocked out by the channel.
fn received_reference_word(
    code: &Code<FunctionField>,
) -> (SkewPoly<FunctionField>, Vec<RationalFunction>) {
    let f = code.field();
    let g = code.generator();
    let knocked = vec![g.coeff(1), g.coeff(2)];
    let coeffs: Vec<_> = (0..=4)
        .map(|i| if i == 1 || i == 2 { f.zero() } else { g.coeff(i) })
        .collect();
    (SkewPoly::from_coeffs(f, coeffs), knocked)
}

fn syndrome_decoding_checks(out: &mut Vec<ReplayCheck>) {
    let code = Code::from_spec_text(MAIN_CODE_SPEC).expect("reference spec builds");
    let f = code.field();
    let (y, knocked) = received_reference_word(&code);
    check_skew(
        out,
        f,
        "decoding: received word",
        "x^4+(a^2*t+1)/(a^5*t^4+a^3)*x^3+(t^6+a^2*t^5+t^4+t^3+a^6*t)/(a^5*t^6+a^4*t^5+a^5*t^4+a^3*t^2+a^2*t+a^3)",
        &y,
    );

    let synd = syndromes(&code, &y);
    check_skew(
        out,
        f,
        "decoding: syndrome polynomial",
        "(a^2*t^7+t^6+a^3*t^5+t^3+t^2+a^3*t+a)/(a^2*t^6+a^3*t^5+a^5*t^4+t^2+a*t+a^3)*x^3+(a^4*t^7+t^6+a^2*t^5+a^5*t^4+a^2*t^2+t+a)/(a^6*t^7+a*t^6+a*t^5+a^6*t^4+a^4*t^3+a^6*t^2+a^6*t+a^4)*x^2+(a^2*t^5+a^6*t^4+a*t^3+a^6*t^2+a^2)/(a^5*t^5+a*t^4+a^3*t+a^6)*x+(a^4*t^6+a^4*t^5+a^2*t^4+a^4*t^3+t^2+a^5*t+a)/(a^2*t^5+a^5*t^4+t+a^3)",
        &synd.poly,
    );

    let row = solve_key_equation(&code, &synd).expect("syndromes are nonzero");
    check_skew(
        out,
        f,
        "decoding: locator candidate",
        "x^2+(a*t^3+a^2*t^2+a^3*t+a^4)/(t^2+1)*x+(a^6*t^4+t^3+t^2+a*t)/(a^2*t^3+a^2*t^2+a*t+a)",
        &row.v,
    );
    check_skew(
        out,
        f,
        "decoding: evaluator candidate",
        "(t^9+a^5*t^7+a^3*t^6+a^5*t^5+a^6*t^4+a^6*t^3+t^2+t+a^6)/(a^4*t^7+a^5*t^6+t^5+a^2*t^3+a^3*t^2+a^5*t)*x+(a^5*t^10+a*t^9+a^3*t^8+a^6*t^7+a^3*t^5+t^3+t^2+a^4*t)/(a^6*t^8+t^7+a^3*t^6+a^6*t^5+a^2*t^4+a^5*t^3+a*t^2+a^4*t+a^6)",
        &row.r,
    );
    let positions = locate_positions(&code, &row.v);
    check_text(
        out,
        "decoding: error positions",
        "1,2",
        positions
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );

    let outcome = decode(&code, &y, true).expect("reference word decodes");
    let est = outcome.estimate.as_ref().expect("errors were corrected");
    check_elem(
        out,
        f,
        "decoding: first error value",
        "(a^2*t^7+a*t^6+a*t^5+a^4*t^3+a^3*t^2+a^3*t)/(a^6*t^6+t^5+a^2*t^4+a^4*t^2+a^5*t+1)",
        &est.values[0],
    );
    check_elem(
        out,
        f,
        "decoding: second error value",
        "(a^2*t^6+a*t^5+a*t^4+a^6*t^2+a^5*t+a^5)/(t^5+t^4+a^5*t+a^5)",
        &est.values[1],
    );
    // The recovered values must be exactly the knocked-out generator
    // coefficients, and the corrected word the generator itself.
    check_text(
        out,
        "decoding: values equal knocked-out coefficients",
        "true",
        (est.values[0] == knocked[0] && est.values[1] == knocked[1]).to_string(),
    );
    check_text(
        out,
        "decoding: corrected word is the codeword",
        "true,Corrected",
        format!(
            "{},{:?}",
            outcome.codeword == *code.generator(),
            outcome.status
        ),
    );
}

fn failure_recovery_checks(out: &mut Vec<ReplayCheck>) {
    let code = Code::from_spec_text(MAIN_CODE_SPEC).expect("reference spec builds");
    let f = code.field();
    // The error 1 + x: equal constant values at positions 0 and 1 are
    // dependent, so the key equation degenerates on purpose.
    let err = SkewPoly::from_coeffs(f, vec![f.one(), f.one()]);
    let locator_published =
        "x^2+t^3/(a^3*t^3+a^3*t^2+a^2*t+a^2)*x+(a*t^3+a^4*t)/(t^4+a*t^3+t^2+a^2*t+a^4)";

    let synd = syndromes(&code, &err);
    let row = solve_key_equation(&code, &synd).expect("syndromes are nonzero");
    check_skew(out, f, "failure: locator candidate", "x+t/(t+1)", &row.v);
    check_skew(out, f, "failure: evaluator candidate", "(t^2+t+a)/(t+1)", &row.r);
    let direct = locate_positions(&code, &row.v);
    check_text(
        out,
        "failure: candidate sees no positions",
        "0",
        direct.len().to_string(),
    );
    // Growing the candidate by the factor of position 0 already reaches the
    // full locator, though the degree growth means 0 is not yet confirmed.
    let grown = lcrm(&row.v, &SkewPoly::one_minus_ax(f, code.beta()))
        .expect("growth step stays nonzero");
    check_skew(out, f, "failure: first growth step", locator_published, &grown);
    check_text(
        out,
        "failure: first recovered position",
        "1",
        find_a_position(&code, &row.v, &direct)
            .map_or("none".into(), |d| d.to_string()),
    );

    let outcome = decode(&code, &err, true).expect("failure case recovers");
    let est = outcome.estimate.as_ref().expect("errors were corrected");
    check_text(
        out,
        "failure: status and positions",
        "Recovered,0,1",
        format!(
            "{:?},{}",
            outcome.status,
            est.positions
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    );
    check_skew(out, f, "failure: recovered locator", locator_published, &est.locator);
    check_skew(
        out,
        f,
        "failure: recovered evaluator",
        "(t^2+t+a)/(t+1)*x+(a^4*t^4+a^4*t^3+a^4*t^2+t+a)/(a^3*t^4+a^4*t^3+a^3*t^2+a^5*t+1)",
        &est.evaluator,
    );
    // The same evaluator is also published coefficient by coefficient in
    // generator-sum form; both forms must agree with ours.
    check_skew(
        out,
        f,
        "failure: recovered evaluator, expanded form",
        "(t^2+t+a)/(t+1)*x+((a^2+1)*t^4+(a^2+1)*t^3+(a^2+1)*t^2+a^2*t+a+1)/((a^2+a+1)*t^4+(a^2+1)*t^3+(a^2+a+1)*t^2+t+a^2)",
        &est.evaluator,
    );
    let (cofactor, rem) = est.locator.right_divrem(&row.v).expect("v_I is nonzero");
    assert!(rem.is_zero(), "candidate right-divides the locator");
    check_skew(
        out,
        f,
        "failure: transport cofactor",
        "x+(a^4*t^2+1)/(a^3*t^3+a^6*t^2+a^4*t+1)",
        &cofactor,
    );
    check_skew(
        out,
        f,
        "failure: locator/evaluator common right divisor",
        "x+(a*t^2+a^4)/(t^3+a^3*t^2+a*t+a^4)",
        &gcrd(&est.locator, &est.evaluator).expect("both are nonzero"),
    );
    check_text(
        out,
        "failure: both unit values recovered",
        "1,1",
        est.values
            .iter()
            .map(|e| e.render())
            .collect::<Vec<_>>()
            .join(","),
    );
    check_text(
        out,
        "failure: corrected back to the zero codeword",
        "true",
        outcome.codeword.is_zero().to_string(),
    );

    // Plain decoding (recovery disabled) must refuse rather than guess.
    check_text(
        out,
        "failure: without recovery the failure surfaces",
        "key equation failure: locator misses error positions",
        match decode(&code, &err, false) {
            Err(e) => e.to_string(),
            Ok(_) => "decoded".into(),
        },
    );
}
