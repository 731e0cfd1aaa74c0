//! Code construction: generator polynomials, parity checks, designed
//! distance.
//!
//! Given an automorphism of order n and a normal element alpha, the element
//! beta = alpha^{-1} sigma(alpha) has the property that the least common
//! left multiple of all n conjugate factors x - sigma^i(beta) is exactly
//! x^n - 1. Taking only delta-1 consecutive factors starting at sigma^r
//! gives a generator of an [n, n-delta+1] code whose minimum distance is at
//! least delta, decodable up to floor((delta-1)/2) errors.

use crate::error::Error;
use crate::funcfield::{parse_rational, Automorphism, FunctionField};
use crate::galois::GaloisField;
use crate::linalg;
use crate::sigma::{is_normal_basis, norm, SigmaField};
use crate::skew::{lclm_many, SkewPoly};

/// Cap on brute-force minor enumeration in distance verification.
pub const DEFAULT_MINOR_CAP: u64 = 1 << 20;

/// An [n, n-delta+1] skew BCH convolutional code together with the
/// precomputed data the decoder needs.
#[derive(Clone)]
pub struct Code<F: SigmaField> {
    field: F,
    alpha: F::Elem,
    beta: F::Elem,
    r: usize,
    delta: usize,
    n: usize,
    k: usize,
    tau: usize,
    g: SkewPoly<F>,
    /// sigma^r(alpha), the basis element the decoder's syndrome
    /// polynomial is written against.
    dec_alpha: F::Elem,
    /// sigma^r(beta), whose first 2*tau conjugates are the syndrome
    /// evaluation points.
    dec_beta: F::Elem,
    /// norms[i][j] = N_j(sigma^{r+i}(beta)) for i < 2*tau, j < n, so a
    /// syndrome is one dot product with the received coefficients.
    norms: Vec<Vec<F::Elem>>,
}

impl<F: SigmaField> std::fmt::Debug for Code<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] code, delta {}, r {}, g = {}",
            self.n,
            self.k,
            self.delta,
            self.r,
            self.g.render()
        )
    }
}

impl<F: SigmaField> Code<F> {
    pub fn new(field: &F, alpha: &F::Elem, r: usize, delta: usize) -> Result<Code<F>, Error> {
        let n = field.order();
        if delta < 2 || delta > n {
            return Err(Error::BadDelta { delta, n });
        }
        if !is_normal_basis(field, alpha) {
            return Err(Error::NotNormalBasis);
        }
        let beta = field.mul(
            &field.inv(alpha).expect("normal element is nonzero"),
            &field.sigma(alpha),
        );
        let factors: Vec<_> = (0..delta - 1)
            .map(|i| SkewPoly::x_minus(field, &field.sigma_pow(&beta, (r + i) as i64)))
            .collect();
        let g = lclm_many(&factors)?;
        // Conjugates of beta coming from a normal alpha are independent
        // enough that each new factor raises the lclm degree by one.
        assert_eq!(
            g.degree(),
            Some(delta - 1),
            "conjugate factors did not stay independent"
        );
        for i in 0..delta - 1 {
            let point = field.sigma_pow(&beta, (r + i) as i64);
            assert!(
                field.is_zero(&g.right_eval(&point)),
                "generator lost a designed right root"
            );
        }
        let modulus = &SkewPoly::x_pow(field, n) - &SkewPoly::one(field);
        let (_, rem) = modulus.right_divrem(&g).expect("generator is nonzero");
        assert!(rem.is_zero(), "generator does not divide x^n - 1");

        let k = n - delta + 1;
        let tau = (delta - 1) / 2;
        let dec_alpha = field.sigma_pow(alpha, r as i64);
        let dec_beta = field.sigma_pow(&beta, r as i64);
        let norms = (0..2 * tau)
            .map(|i| {
                let point = field.sigma_pow(&beta, (r + i) as i64);
                (0..n).map(|j| norm(field, &point, j as i64)).collect()
            })
            .collect();
        Ok(Code {
            field: field.clone(),
            alpha: alpha.clone(),
            beta,
            r,
            delta,
            n,
            k,
            tau,
            g,
            dec_alpha,
            dec_beta,
            norms,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn alpha(&self) -> &F::Elem {
        &self.alpha
    }

    pub fn beta(&self) -> &F::Elem {
        &self.beta
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Decoding radius floor((delta-1)/2).
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn generator(&self) -> &SkewPoly<F> {
        &self.g
    }

    pub fn dec_alpha(&self) -> &F::Elem {
        &self.dec_alpha
    }

    pub fn dec_beta(&self) -> &F::Elem {
        &self.dec_beta
    }

    /// N_j(sigma^{r+i}(beta)), for i < 2*tau and j < n.
    pub fn syndrome_norm(&self, i: usize, j: usize) -> &F::Elem {
        &self.norms[i][j]
    }

    /// m * g for deg m < k. Right roots of g survive left multiplication,
    /// so all designed syndromes of the result vanish.
    pub fn encode(&self, msg: &SkewPoly<F>) -> Result<SkewPoly<F>, Error> {
        let len = msg.degree().map_or(0, |d| d + 1);
        if len > self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: len,
            });
        }
        Ok(msg * &self.g)
    }

    /// The n x (delta-1) matrix H with H[i][j] = N_i(sigma^{r+j}(beta));
    /// a word is a codeword exactly when its coefficient row annihilates
    /// every column.
    pub fn parity_check_matrix(&self) -> Vec<Vec<F::Elem>> {
        (0..self.n)
            .map(|i| {
                (0..self.delta - 1)
                    .map(|j| {
                        let point = self.field.sigma_pow(&self.beta, (self.r + j) as i64);
                        norm(&self.field, &point, i as i64)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_codeword(&self, word: &SkewPoly<F>) -> bool {
        if word.degree().map_or(false, |d| d >= self.n) {
            return false;
        }
        (0..self.delta - 1).all(|j| {
            let point = self.field.sigma_pow(&self.beta, (self.r + j) as i64);
            self.field.is_zero(&word.right_eval(&point))
        })
    }

    pub fn verify_designed_distance(&self) -> Result<bool, Error> {
        self.verify_designed_distance_with_cap(DEFAULT_MINOR_CAP)
    }

    /// Checks that every (delta-1) x (delta-1) minor of the parity check
    /// matrix is nonsingular, which forces minimum distance delta.
    pub fn verify_designed_distance_with_cap(&self, cap: u64) -> Result<bool, Error> {
        let rows = self.n;
        let size = self.delta - 1;
        let count = binomial(rows as u64, size as u64);
        if count > cap {
            return Err(Error::TooManyMinors { count, cap });
        }
        let h = self.parity_check_matrix();
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let minor: Vec<Vec<F::Elem>> =
                pick.iter().map(|&i| h[i].clone()).collect();
            let det = linalg::determinant(&self.field, &minor);
            if self.field.is_zero(&det) {
                return Ok(false);
            }
            if !next_combination(&mut pick, rows) {
                return Ok(true);
            }
        }
    }
}

/// lclm of all n conjugate factors x - sigma^i(gamma); for gamma built
/// from a normal element this is exactly x^n - 1.
pub fn conjugate_lclm<F: SigmaField>(field: &F, gamma: &F::Elem) -> Result<SkewPoly<F>, Error> {
    let n = field.order();
    let factors: Vec<_> = (0..n)
        .map(|i| SkewPoly::x_minus(field, &field.sigma_pow(gamma, i as i64)))
        .collect();
    lclm_many(&factors)
}

/// Rejection-samples an element generating a normal basis.
pub fn random_normal_alpha<F: SigmaField>(
    field: &F,
    rng: &mut dyn rand::RngCore,
    degree_bound: usize,
    max_tries: usize,
) -> Result<F::Elem, Error> {
    for _ in 0..max_tries {
        let cand = field.random_nonzero(rng, degree_bound);
        if is_normal_basis(field, &cand) {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances indices to the next k-combination of 0..n; false when done.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The plain-text description of a code over F_q(t): base field, sigma,
/// and code parameters, one section per line.
///
/// ```text
/// field p=2 m=3 modulus=1,1,0,1
/// sigma image=(t+a)/t
/// code alpha=t r=0 delta=5
/// ```
impl Code<FunctionField> {
    pub fn from_spec_text(text: &str) -> Result<Code<FunctionField>, Error> {
        let mut field_line = None;
        let mut sigma_line = None;
        let mut code_line = None;
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kw, rest) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad spec line {line:?}")))?;
            let slot = match kw {
                "field" => &mut field_line,
                "sigma" => &mut sigma_line,
                "code" => &mut code_line,
                other => {
                    return Err(Error::Parse(format!("unknown spec section {other:?}")));
                }
            };
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate spec section {kw:?}")));
            }
            *slot = Some(rest.trim().to_string());
        }
        let field_line =
            field_line.ok_or_else(|| Error::Parse("missing field line".into()))?;
        let sigma_line =
            sigma_line.ok_or_else(|| Error::Parse("missing sigma line".into()))?;
        let code_line = code_line.ok_or_else(|| Error::Parse("missing code line".into()))?;

        let fkv = parse_kv(&field_line)?;
        let p: u32 = get_num(&fkv, "p")?;
        let m: u32 = get_num(&fkv, "m")?;
        let modulus: Vec<u32> = if m == 1 {
            match get(&fkv, "modulus") {
                Ok(s) if !s.is_empty() => parse_digit_list(s)?,
                _ => vec![0, 1],
            }
        } else {
            parse_digit_list(get(&fkv, "modulus")?)?
        };
        let base = GaloisField::new(p, m, &modulus)?;

        let skv = parse_kv(&sigma_line)?;
        let image = parse_rational(&base, get(&skv, "image")?)?;
        let sigma = Automorphism::new(image)?;
        let field = FunctionField::new(base.clone(), sigma);

        let ckv = parse_kv(&code_line)?;
        let alpha = parse_rational(&base, get(&ckv, "alpha")?)?;
        let r: usize = get_num(&ckv, "r")?;
        let delta: usize = get_num(&ckv, "delta")?;
        Code::new(&field, &alpha, r, delta)
    }

    pub fn to_spec_text(&self) -> String {
        let base = self.field.base();
        let modulus: Vec<String> = base
            .modulus_digits()
            .iter()
            .map(|d| d.to_string())
            .collect();
        format!(
            "field p={} m={} modulus={}\nsigma image={}\ncode alpha={} r={} delta={}\n",
            base.characteristic(),
            base.extension_degree(),
            modulus.join(","),
            self.field.automorphism().image().render(),
            self.alpha.render(),
            self.r,
            self.delta,
        )
    }
}

fn parse_kv(s: &str) -> Result<Vec<(String, String)>, Error> {
    s.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))
        })
        .collect()
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str, Error> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

fn get_num<T: std::str::FromStr>(kv: &[(String, String)], key: &str) -> Result<T, Error> {
    let v = get(kv, key)?;
    v.parse()
        .map_err(|_| Error::Parse(format!("bad numeric value for {key:?}: {v:?}")))
}

fn parse_digit_list(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad modulus digit {d:?}")))
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::testspecs::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use std::sync::Arc;

    fn gf8() -> Arc<GaloisField> {
        GaloisField::new(2, 3, &[1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn main_code_parameters_and_generator_roots() {
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        assert_eq!(code.n(), 7);
        assert_eq!(code.k(), 3);
        assert_eq!(code.tau(), 2);
        assert_eq!(code.delta(), 5);
        assert_eq!(code.beta().render(), "(t+a)/t^2");
        assert_eq!(code.generator().degree(), Some(4));
        assert!(code.generator().lc().is_one());
        // Designed right roots beyond construction asserts: the quotient
        // x^7-1 / g is a degree-3 cofactor.
        let f = code.field().clone();
        let x7m1 = &SkewPoly::x_pow(&f, 7) - &SkewPoly::one(&f);
        let (q, rem) = x7m1.right_divrem(code.generator()).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q.degree(), Some(3));
    }

    #[test]
    fn small_codes_match_hand_computations() {
        // sigma(t) = 1/t, alpha = t: beta = 1/t^2, g = x + 1/t^2.
        let code = Code::from_spec_text(INVOL_SPEC).unwrap();
        assert_eq!(code.n(), 2);
        assert_eq!(code.k(), 1);
        assert_eq!(code.beta().render(), "1/t^2");
        assert_eq!(code.generator().render(), "x+1/t^2");

        // GF(3), sigma(t) = 2t, alpha = t+1, r = 1:
        // beta = (2t+1)/(t+1), sigma(beta) = (2t+2)/(t+2), g = x - sigma(beta).
        let code = Code::from_spec_text(SCALE3_SPEC).unwrap();
        assert_eq!(code.n(), 2);
        assert_eq!(code.beta().render(), "(2*t+1)/(t+1)");
        let sb = code.field().sigma(code.beta());
        assert_eq!(sb.render(), "(2*t+2)/(t+2)");
        assert_eq!(code.generator().render(), "x+(t+1)/(t+2)");
    }

    #[test]
    fn all_conjugates_rebuild_the_central_modulus() {
        for spec in [MAIN_SPEC, INVOL_SPEC, SCALE3_SPEC] {
            let code = Code::from_spec_text(spec).unwrap();
            let f = code.field();
            let full = conjugate_lclm(f, code.beta()).unwrap();
            let modulus = &SkewPoly::x_pow(f, code.n()) - &SkewPoly::one(f);
            assert_eq!(full, modulus, "conjugate lclm for {spec:?}");
        }
    }

    #[test]
    fn random_normal_alphas_also_rebuild_the_modulus() {
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        let f = code.field().clone();
        let mut rng = ChaCha12Rng::seed_from_u64(0xC1);
        for _ in 0..5 {
            let alpha = random_normal_alpha(&f, &mut rng, 2, 200).unwrap();
            let beta = f.mul(&f.inv(&alpha).unwrap(), &f.sigma(&alpha));
            let full = conjugate_lclm(&f, &beta).unwrap();
            let modulus = &SkewPoly::x_pow(&f, 7) - &SkewPoly::one(&f);
            assert_eq!(full, modulus);
        }
        assert_eq!(
            random_normal_alpha(&f, &mut rng, 2, 0),
            Err(Error::SearchExhausted)
        );
    }

    #[test]
    fn encoding_kills_every_designed_syndrome() {
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        let f = code.field().clone();
        let mut rng = ChaCha12Rng::seed_from_u64(0xC2);
        for _ in 0..20 {
            let msg = SkewPoly::from_coeffs(
                &f,
                (0..code.k()).map(|_| f.random_nonzero(&mut rng, 1)).collect(),
            );
            let c = code.encode(&msg).unwrap();
            assert!(c.degree().unwrap() < code.n());
            assert!(code.is_codeword(&c));
            let h = code.parity_check_matrix();
            for j in 0..code.delta() - 1 {
                let mut acc = f.zero();
                for i in 0..code.n() {
                    acc = f.add(&acc, &f.mul(&c.coeff(i), &h[i][j]));
                }
                assert!(f.is_zero(&acc), "column {j} of the parity product");
            }
        }
        let long = SkewPoly::x_pow(&f, code.k());
        assert_eq!(
            code.encode(&long),
            Err(Error::LengthMismatch { expected: 3, got: 4 })
        );
    }

    #[test]
    fn syndrome_norm_table_matches_direct_norms() {
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        let f = code.field();
        for i in 0..2 * code.tau() {
            let point = f.sigma_pow(code.beta(), i as i64);
            for j in 0..code.n() {
                assert_eq!(*code.syndrome_norm(i, j), norm(f, &point, j as i64));
            }
        }
        assert_eq!(code.dec_beta(), code.beta()); // r = 0 here
        assert_eq!(code.dec_alpha(), code.alpha());
    }

    #[test]
    fn designed_distance_verifies_on_known_codes() {
        for spec in [MAIN_SPEC, INVOL_SPEC, SCALE3_SPEC] {
            let code = Code::from_spec_text(spec).unwrap();
            assert_eq!(code.verify_designed_distance(), Ok(true), "{spec:?}");
        }
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        assert_eq!(
            code.verify_designed_distance_with_cap(10),
            Err(Error::TooManyMinors { count: 35, cap: 10 })
        );
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        let f = code.field().clone();
        let alpha = code.alpha().clone();
        assert_eq!(
            Code::new(&f, &alpha, 0, 1).unwrap_err(),
            Error::BadDelta { delta: 1, n: 7 }
        );
        assert_eq!(
            Code::new(&f, &alpha, 0, 8).unwrap_err(),
            Error::BadDelta { delta: 8, n: 7 }
        );
        assert!(Code::new(&f, &alpha, 0, 7).is_ok());
        assert_eq!(
            Code::new(&f, &f.zero(), 0, 5).unwrap_err(),
            Error::NotNormalBasis
        );
        // An element fixed by sigma cannot generate a normal basis.
        let one = f.one();
        assert_eq!(
            Code::new(&f, &one, 0, 5).unwrap_err(),
            Error::NotNormalBasis
        );
    }

    #[test]
    fn spec_text_round_trips() {
        for spec in [MAIN_SPEC, INVOL_SPEC, SCALE3_SPEC] {
            let code = Code::from_spec_text(spec).unwrap();
            let text = code.to_spec_text();
            let again = Code::from_spec_text(&text).unwrap();
            assert_eq!(again.generator(), code.generator());
            assert_eq!(again.r(), code.r());
            assert_eq!(again.delta(), code.delta());
            assert_eq!(text, Code::from_spec_text(&text).unwrap().to_spec_text());
        }
        // Comments and blank lines are fine.
        let noisy = format!("# main code\n\n{MAIN_SPEC}");
        assert!(Code::from_spec_text(&noisy).is_ok());
    }

    #[test]
    fn spec_text_rejects_malformed_input() {
        assert!(Code::from_spec_text("").is_err());
        assert!(Code::from_spec_text("field p=2 m=3 modulus=1,1,0,1\n").is_err());
        let bad_delta = MAIN_SPEC.replace("delta=5", "delta=77");
        assert!(Code::from_spec_text(&bad_delta).is_err());
        let bad_key = MAIN_SPEC.replace("alpha=t", "alfa=t");
        assert!(Code::from_spec_text(&bad_key).is_err());
        let dup = format!("{MAIN_SPEC}code alpha=t r=0 delta=5\n");
        assert!(Code::from_spec_text(&dup).is_err());
        let junk = MAIN_SPEC.replace("sigma image=(t+a)/t", "sigma image=t^2");
        assert_eq!(Code::from_spec_text(&junk).unwrap_err(), Error::NotInjective);
    }

    #[test]
    fn gf8_helper_is_the_spec_field() {
        let base = gf8();
        let code = Code::from_spec_text(MAIN_SPEC).unwrap();
        assert_eq!(**code.field().base(), *base);
    }
}
