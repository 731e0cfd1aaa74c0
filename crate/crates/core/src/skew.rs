//! Skew polynomials F[x; sigma] with the twist x*c = sigma(c)*x.
//!
//! Multiplication is not commutative, so left and right division are
//! different operations and each gcd/lcm notion comes in two flavours:
//! gcld/lcrm from the right-division Euclidean algorithm and gcrd/lclm from
//! the left-division one. Sums of the form (a x^i)(b x^j) = a sigma^i(b)
//! x^{i+j} fix all sign and side conventions below.

use std::fmt;

use crate::error::Error;
use crate::sigma::SigmaField;

#[derive(Clone)]
pub struct SkewPoly<F: SigmaField> {
    field: F,
    /// Lowest degree first, no trailing zeros.
    coeffs: Vec<F::Elem>,
}

impl<F: SigmaField> SkewPoly<F> {
    pub fn zero(field: &F) -> Self {
        SkewPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        SkewPoly::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        let mut p = SkewPoly { field: field.clone(), coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn x_pow(field: &F, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = field.one();
        SkewPoly { field: field.clone(), coeffs }
    }

    /// x - gamma, whose right root is gamma.
    pub fn x_minus(field: &F, gamma: &F::Elem) -> Self {
        SkewPoly {
            field: field.clone(),
            coeffs: vec![field.neg(gamma), field.one()],
        }
    }

    /// 1 - a*x, whose left root is sigma^{-1}(a^{-1}) when a is nonzero.
    pub fn one_minus_ax(field: &F, a: &F::Elem) -> Self {
        let mut p = SkewPoly {
            field: field.clone(),
            coeffs: vec![field.one(), field.neg(a)],
        };
        p.trim();
        p
    }

    pub fn from_coeffs(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = SkewPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
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
        self.coeffs.len() == 1 && !self.field.is_zero(&self.coeffs[0]) && {
            self.field.is_zero(&self.field.sub(&self.coeffs[0], &self.field.one()))
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// e * f: scales every coefficient on the left.
    pub fn scale_left(&self, e: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.mul(e, c)).collect();
        SkewPoly::from_coeffs(&self.field, coeffs)
    }

    /// f * e: the x^i term picks up sigma^i(e).
    pub fn scale_right(&self, e: &F::Elem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| self.field.mul(c, &self.field.sigma_pow(e, i as i64)))
            .collect();
        SkewPoly::from_coeffs(&self.field, coeffs)
    }

    /// Canonical form under left scaling: lc^{-1} * f.
    pub fn monic_left(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale_left(&inv)
    }

    /// Canonical form under right scaling: f * sigma^{-d}(lc^{-1}).
    /// Preserves left divisors, so this is the right normalization for
    /// error locators.
    pub fn monic_right(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let d = self.degree().unwrap() as i64;
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale_right(&self.field.sigma_pow(&inv, -d))
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        assert!(self.field == rhs.field, "field mismatch in skew arithmetic");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeff(i);
                let b = rhs.coeff(i);
                if negate_rhs {
                    f.sub(&a, &b)
                } else {
                    f.add(&a, &b)
                }
            })
            .collect();
        SkewPoly::from_coeffs(f, coeffs)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "field mismatch in skew arithmetic");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return SkewPoly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let term = f.mul(a, &f.sigma_pow(b, i as i64));
                coeffs[i + j] = f.add(&coeffs[i + j], &term);
            }
        }
        SkewPoly::from_coeffs(f, coeffs)
    }

    /// f = g*q + r with deg r < deg g: quotient sits to the right of the
    /// divisor.
    pub fn right_divrem(&self, g: &Self) -> Result<(Self, Self), Error> {
        assert!(self.field == g.field, "field mismatch in skew division");
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dg = g.degree().unwrap();
        let glc_inv = f.inv(&g.lc()).expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut q = SkewPoly::zero(f);
        while r.degree().map_or(false, |dr| dr >= dg) {
            let dr = r.degree().unwrap();
            let d = dr - dg;
            // Leading term of g * (a x^d) is lc(g) sigma^{dg}(a) x^{dr}.
            let a = f.sigma_pow(&f.mul(&glc_inv, &r.lc()), -(dg as i64));
            let mut term = vec![f.zero(); d + 1];
            term[d] = a;
            let term = SkewPoly::from_coeffs(f, term);
            r = r.add_impl(&g.mul_impl(&term), true);
            q = q.add_impl(&term, false);
            debug_assert!(r.degree().map_or(true, |nd| nd < dr));
        }
        Ok((q, r))
    }

    /// f = q*g + r with deg r < deg g: quotient sits to the left of the
    /// divisor.
    pub fn left_divrem(&self, g: &Self) -> Result<(Self, Self), Error> {
        assert!(self.field == g.field, "field mismatch in skew division");
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dg = g.degree().unwrap();
        let mut r = self.clone();
        let mut q = SkewPoly::zero(f);
        while r.degree().map_or(false, |dr| dr >= dg) {
            let dr = r.degree().unwrap();
            let d = dr - dg;
            // Leading term of (a x^d) * g is a sigma^d(lc(g)) x^{dr}.
            let glc_shift = f.sigma_pow(&g.lc(), d as i64);
            let a = f.mul(&r.lc(), &f.inv(&glc_shift).expect("nonzero leading coefficient"));
            let mut term = vec![f.zero(); d + 1];
            term[d] = a;
            let term = SkewPoly::from_coeffs(f, term);
            r = r.add_impl(&term.mul_impl(g), true);
            q = q.add_impl(&term, false);
            debug_assert!(r.degree().map_or(true, |nd| nd < dr));
        }
        Ok((q, r))
    }

    /// Remainder of left division by (x - gamma): sum f_i N_i(gamma).
    /// Zero exactly when gamma is a right root.
    pub fn right_eval(&self, gamma: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut norm = f.one(); // N_i(gamma), starting at N_0 = 1
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                norm = f.mul(&norm, &f.sigma_pow(gamma, i as i64 - 1));
            }
            if !f.is_zero(c) {
                acc = f.add(&acc, &f.mul(c, &norm));
            }
        }
        acc
    }

    /// Remainder of right division by (x - gamma): sum sigma^{-i}(f_i)
    /// N_{-i}(gamma). Zero exactly when gamma is a left root.
    pub fn left_eval(&self, gamma: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut norm = f.one(); // N_{-i}(gamma), starting at N_0 = 1
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                norm = f.mul(&norm, &f.sigma_pow(gamma, -(i as i64 - 1)));
            }
            if !f.is_zero(c) {
                let shifted = f.sigma_pow(c, -(i as i64));
                acc = f.add(&acc, &f.mul(&shifted, &norm));
            }
        }
        acc
    }

    /// Reduction mod the central element x^n - 1: coefficient i folds onto
    /// i mod n.
    pub fn reduce_cyclic(&self, n: usize) -> Self {
        let f = &self.field;
        let mut coeffs = vec![f.zero(); n.min(self.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i % n;
            coeffs[j] = f.add(&coeffs[j], c);
        }
        SkewPoly::from_coeffs(f, coeffs)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.render_elem(c);
            let part = if i == 0 {
                cs
            } else {
                let xs = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                if cs == "1" {
                    xs
                } else if needs_parens(&cs) {
                    format!("({cs})*{xs}")
                } else {
                    format!("{cs}*{xs}")
                }
            };
            parts.push(part);
        }
        parts.join("+")
    }

    pub fn parse(field: &F, s: &str) -> Result<Self, Error> {
        let ast = crate::expr::parse_ast(s)?;
        crate::expr::eval_skew(field, &ast)
    }
}

/// True if the string has a + or - outside all parentheses, in which case a
/// coefficient must be wrapped before "*x^i" is appended.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

impl<F: SigmaField> PartialEq for SkewPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl<F: SigmaField> fmt::Debug for SkewPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<F: SigmaField> fmt::Display for SkewPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! skew_binop {
    ($trait:ident, $method:ident, $call:ident $(, $extra:expr)?) => {
        impl<F: SigmaField> std::ops::$trait<&SkewPoly<F>> for &SkewPoly<F> {
            type Output = SkewPoly<F>;
            fn $method(self, rhs: &SkewPoly<F>) -> SkewPoly<F> {
                self.$call(rhs $(, $extra)?)
            }
        }
        impl<F: SigmaField> std::ops::$trait<SkewPoly<F>> for SkewPoly<F> {
            type Output = SkewPoly<F>;
            fn $method(self, rhs: SkewPoly<F>) -> SkewPoly<F> {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl<F: SigmaField> std::ops::$trait<&SkewPoly<F>> for SkewPoly<F> {
            type Output = SkewPoly<F>;
            fn $method(self, rhs: &SkewPoly<F>) -> SkewPoly<F> {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl<F: SigmaField> std::ops::$trait<SkewPoly<F>> for &SkewPoly<F> {
            type Output = SkewPoly<F>;
            fn $method(self, rhs: SkewPoly<F>) -> SkewPoly<F> {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

skew_binop!(Add, add, add_impl, false);
skew_binop!(Sub, sub, add_impl, true);
skew_binop!(Mul, mul, mul_impl);

impl<F: SigmaField> std::ops::Neg for &SkewPoly<F> {
    type Output = SkewPoly<F>;
    fn neg(self) -> SkewPoly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        SkewPoly::from_coeffs(&self.field, coeffs)
    }
}

impl<F: SigmaField> std::ops::Neg for SkewPoly<F> {
    type Output = SkewPoly<F>;
    fn neg(self) -> SkewPoly<F> {
        -&self
    }
}

/// One row of an extended Euclidean table.
#[derive(Clone, Debug)]
pub struct EuclidRow<F: SigmaField> {
    pub r: SkewPoly<F>,
    pub u: SkewPoly<F>,
    pub v: SkewPoly<F>,
}

/// Full remainder sequence including the final zero row.
///
/// For the right-division table every row satisfies r_i = f*u_i + g*v_i;
/// for the left-division table r_i = u_i*f + v_i*g.
#[derive(Clone, Debug)]
pub struct EuclidTable<F: SigmaField> {
    pub rows: Vec<EuclidRow<F>>,
}

impl<F: SigmaField> EuclidTable<F> {
    /// Index of the last row with a nonzero remainder, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        (0..self.rows.len()).rev().find(|&i| !self.rows[i].r.is_zero())
    }
}

/// Extended Euclidean algorithm with right division.
///
/// The last nonzero remainder is a gcld(f, g); the u entry of the final
/// zero row gives the lcrm as f*u.
pub fn right_euclid<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> EuclidTable<F> {
    let fld = f.field();
    let mut rows = vec![
        EuclidRow {
            r: f.clone(),
            u: SkewPoly::one(fld),
            v: SkewPoly::zero(fld),
        },
        EuclidRow {
            r: g.clone(),
            u: SkewPoly::zero(fld),
            v: SkewPoly::one(fld),
        },
    ];
    while !rows.last().unwrap().r.is_zero() {
        let prev = &rows[rows.len() - 2];
        let cur = &rows[rows.len() - 1];
        let (q, rem) = prev.r.right_divrem(&cur.r).expect("nonzero divisor");
        let next = EuclidRow {
            r: rem,
            u: &prev.u - &(&cur.u * &q),
            v: &prev.v - &(&cur.v * &q),
        };
        rows.push(next);
    }
    EuclidTable { rows }
}

/// Extended Euclidean algorithm with left division.
///
/// The last nonzero remainder is a gcrd(f, g); the u entry of the final
/// zero row gives the lclm as u*f.
pub fn left_euclid<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> EuclidTable<F> {
    let fld = f.field();
    let mut rows = vec![
        EuclidRow {
            r: f.clone(),
            u: SkewPoly::one(fld),
            v: SkewPoly::zero(fld),
        },
        EuclidRow {
            r: g.clone(),
            u: SkewPoly::zero(fld),
            v: SkewPoly::one(fld),
        },
    ];
    while !rows.last().unwrap().r.is_zero() {
        let prev = &rows[rows.len() - 2];
        let cur = &rows[rows.len() - 1];
        let (q, rem) = prev.r.left_divrem(&cur.r).expect("nonzero divisor");
        let next = EuclidRow {
            r: rem,
            u: &prev.u - &(&q * &cur.u),
            v: &prev.v - &(&q * &cur.v),
        };
        rows.push(next);
    }
    EuclidTable { rows }
}

/// Greatest common left divisor, right-monic. Errors only when both inputs
/// are zero.
pub fn gcld<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> Result<SkewPoly<F>, Error> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let table = right_euclid(f, g);
    let i = table.last_nonzero().expect("some input is nonzero");
    Ok(table.rows[i].r.monic_right())
}

/// Least common right multiple, right-monic; zero if either input is zero.
pub fn lcrm<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> Result<SkewPoly<F>, Error> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(SkewPoly::zero(f.field()));
    }
    let table = right_euclid(f, g);
    let last = table.rows.last().unwrap();
    Ok((f * &last.u).monic_right())
}

/// Greatest common right divisor, left-monic. Errors only when both inputs
/// are zero.
pub fn gcrd<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> Result<SkewPoly<F>, Error> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let table = left_euclid(f, g);
    let i = table.last_nonzero().expect("some input is nonzero");
    Ok(table.rows[i].r.monic_left())
}

/// Least common left multiple, left-monic; zero if either input is zero.
pub fn lclm<F: SigmaField>(f: &SkewPoly<F>, g: &SkewPoly<F>) -> Result<SkewPoly<F>, Error> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(SkewPoly::zero(f.field()));
    }
    let table = left_euclid(f, g);
    let last = table.rows.last().unwrap();
    Ok((&last.u * f).monic_left())
}

/// Folds lcrm over a nonempty sequence.
pub fn lcrm_many<F: SigmaField>(polys: &[SkewPoly<F>]) -> Result<SkewPoly<F>, Error> {
    let (first, rest) = polys.split_first().ok_or(Error::ZeroPolynomial)?;
    let mut acc = first.monic_right();
    for p in rest {
        acc = lcrm(&acc, p)?;
    }
    Ok(acc)
}

/// Folds lclm over a nonempty sequence.
pub fn lclm_many<F: SigmaField>(polys: &[SkewPoly<F>]) -> Result<SkewPoly<F>, Error> {
    let (first, rest) = polys.split_first().ok_or(Error::ZeroPolynomial)?;
    let mut acc = first.monic_left();
    for p in rest {
        acc = lclm(&acc, p)?;
    }
    Ok(acc)
}

/// Folds gcrd over a nonempty sequence.
pub fn gcrd_many<F: SigmaField>(polys: &[SkewPoly<F>]) -> Result<SkewPoly<F>, Error> {
    let (first, rest) = polys.split_first().ok_or(Error::ZeroPolynomial)?;
    let mut acc = first.monic_left();
    for p in rest {
        acc = gcrd(&acc, p)?;
    }
    Ok(acc)
}
