//! The rational function field F_q(t) and its substitution automorphisms.
//!
//! Polynomials are dense coefficient vectors, lowest degree first, with no
//! trailing zeros; the zero polynomial is the empty vector and its degree is
//! the distinguished "minus infinity" (`None`). Rational functions are kept
//! reduced with a monic denominator at all times, so equality of the
//! representation is equality in the field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::Error;
use crate::galois::{same_field, FieldElement, GaloisField};
use crate::sigma::SigmaField;

/// Dense polynomial in t over a finite field.
#[derive(Clone)]
pub struct Poly {
    field: Arc<GaloisField>,
    /// Packed coefficient values, lowest degree first, no trailing zeros.
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &Arc<GaloisField>) -> Poly {
        Poly { field: Arc::clone(field), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<GaloisField>) -> Poly {
        Poly::constant(&field.one())
    }

    /// The variable t.
    pub fn var(field: &Arc<GaloisField>) -> Poly {
        Poly { field: Arc::clone(field), coeffs: vec![0, 1] }
    }

    pub fn constant(c: &FieldElement) -> Poly {
        let mut p = Poly {
            field: Arc::clone(c.field()),
            coeffs: vec![c.packed()],
        };
        p.trim();
        p
    }

    pub fn from_elems(field: &Arc<GaloisField>, elems: &[FieldElement]) -> Poly {
        let coeffs = elems
            .iter()
            .map(|e| {
                assert!(
                    same_field(field, e.field()),
                    "field mismatch in polynomial construction"
                );
                e.packed()
            })
            .collect();
        let mut p = Poly { field: Arc::clone(field), coeffs };
        p.trim();
        p
    }

    pub(crate) fn from_packed(field: &Arc<GaloisField>, coeffs: Vec<u32>) -> Poly {
        let mut p = Poly { field: Arc::clone(field), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// None is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.elem(c)).collect()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElement {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn mul_elem(&self, e: &FieldElement) -> Poly {
        assert!(
            same_field(&self.field, e.field()),
            "field mismatch in polynomial scaling"
        );
        let ev = e.packed();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.field.mul_raw(c, ev))
            .collect();
        Poly::from_packed(&self.field, coeffs)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv_raw(*self.coeffs.last().unwrap());
        self.mul_elem(&self.field.elem(inv))
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder with deg r < deg rhs.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly), Error> {
        assert!(
            same_field(&self.field, &rhs.field),
            "field mismatch in polynomial division"
        );
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let f = &self.field;
        let lc_inv = f.inv_raw(*rhs.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dg];
        while r.len() > dg {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dg;
            if lead != 0 {
                let factor = f.mul_raw(lead, lc_inv);
                q[shift] = factor;
                for j in 0..=dg {
                    let sub = f.mul_raw(factor, rhs.coeffs[j]);
                    r[shift + j] = f.sub_raw(r[shift + j], sub);
                }
            }
            r.pop();
        }
        Ok((Poly::from_packed(f, q), Poly::from_packed(f, r)))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Power-form coefficient rendering, e.g. "a^2*t^3+t+a".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.field.elem(c).to_string();
            let part = if i == 0 {
                cs
            } else {
                let ts = if i == 1 { "t".to_string() } else { format!("t^{i}") };
                if cs == "1" {
                    ts
                } else if cs.contains('+') || cs.contains('-') {
                    format!("({cs})*{ts}")
                } else {
                    format!("{cs}*{ts}")
                }
            };
            parts.push(part);
        }
        parts.join("+")
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl std::ops::$trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                assert!(
                    same_field(&self.field, &rhs.field),
                    "field mismatch in polynomial arithmetic"
                );
                let f: fn(&Poly, &Poly) -> Poly = $imp;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| {
            f.add_raw(
                a.coeffs.get(i).copied().unwrap_or(0),
                b.coeffs.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    Poly::from_packed(f, coeffs)
});

poly_binop!(Sub, sub, |a, b| {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| {
            f.sub_raw(
                a.coeffs.get(i).copied().unwrap_or(0),
                b.coeffs.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    Poly::from_packed(f, coeffs)
});

poly_binop!(Mul, mul, |a, b| {
    let f = &a.field;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(f);
    }
    let mut coeffs = vec![0u32; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ca) in a.coeffs.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.coeffs.iter().enumerate() {
            let prod = f.mul_raw(ca, cb);
            coeffs[i + j] = f.add_raw(coeffs[i + j], prod);
        }
    }
    Poly::from_packed(f, coeffs)
});

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        Poly::from_packed(&self.field, coeffs)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A reduced fraction of polynomials with monic denominator.
///
/// # Invariants
/// - The denominator is nonzero and monic.
/// - Numerator and denominator are coprime.
/// - Zero is represented as 0/1.
///
/// Equality of representations is therefore equality in F_q(t).
#[derive(Clone)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction, Error> {
        assert!(
            same_field(num.field(), den.field()),
            "field mismatch in rational function"
        );
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                den: Poly::one(num.field()),
                num,
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            let (qn, rn) = num.divrem(&g).expect("gcd nonzero");
            let (qd, rd) = den.divrem(&g).expect("gcd nonzero");
            debug_assert!(rn.is_zero() && rd.is_zero());
            (qn, qd)
        };
        if !den.lc().is_one() {
            let inv = den.lc().inv().expect("nonzero leading coefficient");
            num = num.mul_elem(&inv);
            den = den.mul_elem(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction {
            den: Poly::one(p.field()),
            num: p,
        }
    }

    pub fn zero(field: &Arc<GaloisField>) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Arc<GaloisField>) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(field))
    }

    pub fn constant(c: &FieldElement) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    /// The variable t.
    pub fn var(field: &Arc<GaloisField>) -> RationalFunction {
        RationalFunction::from_poly(Poly::var(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().map_or(true, |d| d == 0)
    }

    pub fn as_field_constant(&self) -> Option<FieldElement> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RationalFunction, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<RationalFunction, Error> {
        if k == 0 {
            return Ok(RationalFunction::one(self.field()));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as usize;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Composition self(arg): substitutes arg for t.
    pub fn substitute(&self, arg: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction::zero(self.field());
        }
        let (u, v) = (&arg.num, &arg.den);
        let en = self.num.degree().unwrap_or(0);
        let ed = self.den.degree().unwrap_or(0);
        let top = en.max(ed);
        let mut upow = Vec::with_capacity(top + 1);
        let mut vpow = Vec::with_capacity(top + 1);
        upow.push(Poly::one(self.field()));
        vpow.push(Poly::one(self.field()));
        for i in 1..=top {
            upow.push(&upow[i - 1] * u);
            vpow.push(&vpow[i - 1] * v);
        }
        let homogenize = |p: &Poly, d: usize| {
            let mut acc = Poly::zero(p.field());
            for (i, c) in p.coeffs().into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = (&upow[i] * &vpow[d - i]).mul_elem(&c);
                acc = &acc + &term;
            }
            acc
        };
        let mut pn = homogenize(&self.num, en);
        let mut pd = homogenize(&self.den, ed);
        if ed > en {
            pn = &pn * &vpow[ed - en];
        } else if en > ed {
            pd = &pd * &vpow[en - ed];
        }
        RationalFunction::new(pn, pd).expect("denominator image is nonzero")
    }

    /// Canonical rendering, e.g. "(a^2*t+1)/(t^3+a)". Round-trips through
    /// the element parser.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        let ns = self.num.render();
        let n = if self.num.term_count() >= 2 {
            format!("({ns})")
        } else {
            ns
        };
        let ds = self.den.render();
        let d = if self.den.term_count() >= 2 || ds.contains('*') {
            format!("({ds})")
        } else {
            ds
        };
        format!("{n}/{d}")
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalFunction {}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! rf_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl std::ops::$trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $imp;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

rf_binop!(Add, add, |a, b| {
    let num = &(&a.num * &b.den) + &(&b.num * &a.den);
    let den = &a.den * &b.den;
    RationalFunction::new(num, den).expect("denominator product is nonzero")
});

rf_binop!(Sub, sub, |a, b| {
    let num = &(&a.num * &b.den) - &(&b.num * &a.den);
    let den = &a.den * &b.den;
    RationalFunction::new(num, den).expect("denominator product is nonzero")
});

rf_binop!(Mul, mul, |a, b| {
    if a.is_zero() || b.is_zero() {
        return RationalFunction::zero(a.field());
    }
    RationalFunction::new(&a.num * &b.num, &a.den * &b.den)
        .expect("denominator product is nonzero")
});

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// An automorphism of F_q(t) fixing F_q, given by t -> image.
///
/// The image must be a degree-one fraction (ut+v)/(wt+z), and iterating the
/// substitution must return to t within the order bound; the powers
/// sigma^k(t) are cached for k in 0..order.
#[derive(Clone)]
pub struct Automorphism {
    image: RationalFunction,
    order: usize,
    powers: Arc<Vec<RationalFunction>>,
}

impl Automorphism {
    /// Order bound defaults to q + 1, the largest element order in the
    /// group of degree-one substitutions over GF(q).
    pub fn new(image: RationalFunction) -> Result<Automorphism, Error> {
        let max = image.field().size() as usize + 1;
        Automorphism::with_max_order(image, max)
    }

    pub fn with_max_order(image: RationalFunction, max: usize) -> Result<Automorphism, Error> {
        let nd = image.num().degree().unwrap_or(0);
        let dd = image.den().degree().unwrap_or(0);
        if image.is_zero() || nd.max(dd) != 1 {
            return Err(Error::NotInjective);
        }
        let t = RationalFunction::var(image.field());
        let mut powers = vec![t.clone()];
        let mut cur = t.clone();
        for k in 1..=max {
            cur = cur.substitute(&image);
            if cur == t {
                return Ok(Automorphism {
                    image,
                    order: k,
                    powers: Arc::new(powers),
                });
            }
            powers.push(cur.clone());
        }
        Err(Error::OrderNotFound { max })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn image(&self) -> &RationalFunction {
        &self.image
    }

    pub fn apply(&self, x: &RationalFunction) -> RationalFunction {
        x.substitute(&self.image)
    }

    /// sigma^k for any integer k, using the cached powers of t.
    pub fn apply_pow(&self, x: &RationalFunction, k: i64) -> RationalFunction {
        let k = k.rem_euclid(self.order as i64) as usize;
        if k == 0 {
            return x.clone();
        }
        x.substitute(&self.powers[k])
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t -> {} (order {})", self.image.render(), self.order)
    }
}

/// Order of the substitution t -> image, if it is an automorphism whose
/// order does not exceed max.
pub fn sigma_order(image: RationalFunction, max: usize) -> Result<usize, Error> {
    Ok(Automorphism::with_max_order(image, max)?.order())
}

/// F_q(t) together with a distinguished automorphism.
#[derive(Clone)]
pub struct FunctionField(Arc<FunctionFieldInner>);

struct FunctionFieldInner {
    base: Arc<GaloisField>,
    sigma: Automorphism,
}

impl FunctionField {
    pub fn new(base: Arc<GaloisField>, sigma: Automorphism) -> FunctionField {
        assert!(
            same_field(&base, sigma.image().field()),
            "automorphism belongs to a different coefficient field"
        );
        FunctionField(Arc::new(FunctionFieldInner { base, sigma }))
    }

    pub fn base(&self) -> &Arc<GaloisField> {
        &self.0.base
    }

    pub fn automorphism(&self) -> &Automorphism {
        &self.0.sigma
    }
}

impl PartialEq for FunctionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (*self.0.base == *other.0.base && self.0.sigma == other.0.sigma)
    }
}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(t), {:?}", self.0.base, self.0.sigma)
    }
}

impl SigmaField for FunctionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(&self.0.base)
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::one(&self.0.base)
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }

    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction, Error> {
        a.inv()
    }

    fn order(&self) -> usize {
        self.0.sigma.order()
    }

    fn sigma(&self, a: &RationalFunction) -> RationalFunction {
        self.0.sigma.apply(a)
    }

    fn sigma_pow(&self, a: &RationalFunction, k: i64) -> RationalFunction {
        self.0.sigma.apply_pow(a, k)
    }

    fn render_elem(&self, a: &RationalFunction) -> String {
        a.render()
    }

    fn parse_elem(&self, s: &str) -> Result<RationalFunction, Error> {
        parse_rational(&self.0.base, s)
    }

    fn random_nonzero(
        &self,
        rng: &mut dyn rand::RngCore,
        degree_bound: usize,
    ) -> RationalFunction {
        let random_poly = |rng: &mut dyn rand::RngCore| loop {
            let coeffs: Vec<u32> = (0..=degree_bound)
                .map(|_| rng.next_u32() % self.0.base.size())
                .collect();
            if coeffs.iter().any(|&c| c != 0) {
                return Poly::from_packed(&self.0.base, coeffs);
            }
        };
        let num = random_poly(rng);
        let den = random_poly(rng);
        RationalFunction::new(num, den).expect("denominator is nonzero")
    }
}

/// Parses the element syntax for F_q(t): polynomial fractions with powers,
/// products, sums, and parentheses, e.g. "(a^2*t+1)/(t^3+a)".
pub fn parse_rational(
    base: &Arc<GaloisField>,
    s: &str,
) -> Result<RationalFunction, Error> {
    let ast = crate::expr::parse_ast(s)?;
    crate::expr::eval_rational(base, &ast)
}

/// Parses a polynomial in t; fails if the expression has a denominator.
pub fn parse_poly(base: &Arc<GaloisField>, s: &str) -> Result<Poly, Error> {
    let r = parse_rational(base, s)?;
    if !r.den().is_one() {
        return Err(Error::Parse(format!("{s:?} is not a polynomial in t")));
    }
    Ok(r.num().clone())
}
