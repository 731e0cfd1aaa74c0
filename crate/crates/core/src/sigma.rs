//! A field equipped with a distinguished automorphism of finite order.
//!
//! Twisted polynomial arithmetic, code construction, and decoding are generic
//! over this trait. Two instances exist: a rational function field with a
//! substitution automorphism ([`crate::funcfield::FunctionField`]) and a
//! finite field with a Frobenius power ([`FrobeniusField`]).

use std::sync::Arc;

use rand::RngCore;

use crate::error::Error;
use crate::galois::{FieldElement, GaloisField};

pub trait SigmaField: Clone + PartialEq {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Order n of the automorphism: least n >= 1 with sigma^n = identity.
    fn order(&self) -> usize;

    fn sigma(&self, a: &Self::Elem) -> Self::Elem;

    /// sigma^k for any integer k, reduced modulo the order.
    fn sigma_pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let n = self.order() as i64;
        let k = k.rem_euclid(n);
        let mut out = a.clone();
        for _ in 0..k {
            out = self.sigma(&out);
        }
        out
    }

    fn render_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, Error>;

    /// Random nonzero element. `degree_bound` caps numerator and denominator
    /// degrees where elements are rational functions; finite fields ignore it.
    fn random_nonzero(&self, rng: &mut dyn RngCore, degree_bound: usize) -> Self::Elem;
}

/// j-th norm of gamma: the product gamma * sigma(gamma) * ... * sigma^{j-1}(gamma).
///
/// Negative j multiplies gamma * sigma^{-1}(gamma) * ... * sigma^{j+1}(gamma),
/// |j| factors either way. norm(gamma, 0) = 1 and norm(0, j) = 0 for j != 0.
pub fn norm<F: SigmaField>(field: &F, gamma: &F::Elem, j: i64) -> F::Elem {
    if j == 0 {
        return field.one();
    }
    if field.is_zero(gamma) {
        return field.zero();
    }
    let mut acc = field.one();
    if j > 0 {
        for i in 0..j {
            acc = field.mul(&acc, &field.sigma_pow(gamma, i));
        }
    } else {
        for i in 0..-j {
            acc = field.mul(&acc, &field.sigma_pow(gamma, -i));
        }
    }
    acc
}

/// Determinant of the n x n matrix with entry (i, j) = sigma^{i+j}(alpha).
///
/// Nonzero exactly when alpha, sigma(alpha), ..., sigma^{n-1}(alpha) form a
/// basis over the fixed field.
pub fn normal_basis_determinant<F: SigmaField>(field: &F, alpha: &F::Elem) -> F::Elem {
    let n = field.order();
    let mat: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| field.sigma_pow(alpha, (i + j) as i64))
                .collect()
        })
        .collect();
    crate::linalg::determinant(field, &mat)
}

pub fn is_normal_basis<F: SigmaField>(field: &F, alpha: &F::Elem) -> bool {
    !field.is_zero(&normal_basis_determinant(field, alpha))
}

/// GF(p^m) twisted by the Frobenius power x -> x^{p^s}.
#[derive(Clone)]
pub struct FrobeniusField {
    base: Arc<GaloisField>,
    s: u32,
    order: usize,
}

impl FrobeniusField {
    pub fn new(base: Arc<GaloisField>, s: u32) -> Self {
        let m = base.extension_degree();
        let s = s % m;
        let order = (m / gcd(m, s)) as usize;
        FrobeniusField { base, s, order }
    }

    pub fn base(&self) -> &Arc<GaloisField> {
        &self.base
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for FrobeniusField {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.s == other.s
    }
}

impl SigmaField for FrobeniusField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.base.zero()
    }

    fn one(&self) -> FieldElement {
        self.base.one()
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a - b
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }

    fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        a.inv()
    }

    fn order(&self) -> usize {
        self.order
    }

    fn sigma(&self, a: &FieldElement) -> FieldElement {
        let p = u64::from(self.base.characteristic());
        a.pow(p.pow(self.s) as i64).expect("positive exponent")
    }

    fn sigma_pow(&self, a: &FieldElement, k: i64) -> FieldElement {
        let m = i64::from(self.base.extension_degree());
        let sk = (i64::from(self.s) * k).rem_euclid(m);
        let p = u64::from(self.base.characteristic());
        a.pow(p.pow(sk as u32) as i64).expect("positive exponent")
    }

    fn render_elem(&self, a: &FieldElement) -> String {
        a.render()
    }

    fn parse_elem(&self, s: &str) -> Result<FieldElement, Error> {
        self.base.parse_elem(s)
    }

    fn random_nonzero(&self, rng: &mut dyn RngCore, _degree_bound: usize) -> FieldElement {
        loop {
            let x = self.base.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}
