//! Finite fields GF(p^m) with exact arithmetic on packed coefficient vectors.
//!
//! Elements are residue classes of F_p[a] modulo a monic irreducible polynomial,
//! stored as base-p digit vectors packed into a single machine word. The field
//! size is capped at 2^16 so every inverse can be tabulated at construction.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::Error;

/// Field sizes stay small enough for full inverse tables.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Discrete-log display tables are only built for fields up to this size.
const DLOG_DISPLAY_CAP: u64 = 256;

/// GF(p^m) described by a monic irreducible modulus over F_p.
///
/// # Invariants
/// - `p` is prime, `m >= 1`, and `p^m <= 2^16`.
/// - `modulus` has m+1 digits in [0, p), is monic, and is irreducible over F_p.
/// - `inv_table[x]` holds the inverse of every nonzero packed value `x`.
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    gen_name: String,
    inv_table: Vec<u32>,
    /// (exp, log): exp[k] = packed value of a^k, log[v] = k or u32::MAX.
    dlog: Option<(Vec<u32>, Vec<u32>)>,
}

impl GaloisField {
    /// Builds GF(p^m) from a low-to-high coefficient vector of the modulus.
    /// Digits are reduced mod p; the reduced modulus must be monic and irreducible.
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<Arc<Self>, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = checked_pow(p, m)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} exceeds {MAX_FIELD_SIZE}")))?;
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus needs {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        let modulus: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField("modulus is not irreducible".into()));
        }

        let mut field = GaloisField {
            p,
            m,
            q: q as u32,
            modulus,
            gen_name: "a".into(),
            inv_table: Vec::new(),
            dlog: None,
        };
        field.inv_table = build_inv_table(&field);
        if u64::from(field.q) <= DLOG_DISPLAY_CAP && m >= 2 {
            field.dlog = Some(build_dlog_tables(&field));
        }
        Ok(Arc::new(field))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Arc<Self>, Error> {
        Self::new(p, 1, &[0, 1])
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low to high.
    pub fn modulus_digits(&self) -> &[u32] {
        &self.modulus
    }

    /// Symbol used for the residue class of the modulus variable.
    pub fn generator_name(&self) -> &str {
        &self.gen_name
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { val: 0, field: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        FieldElement { val: 1 % self.q, field: Arc::clone(self) }
    }

    /// The residue class of the modulus variable. Only extensions have one.
    pub fn generator(self: &Arc<Self>) -> Result<FieldElement, Error> {
        if self.m < 2 {
            return Err(Error::InvalidField(
                "prime field has no generator symbol".into(),
            ));
        }
        Ok(FieldElement { val: self.p, field: Arc::clone(self) })
    }

    /// The constant element i mod p.
    pub fn from_int(self: &Arc<Self>, i: i64) -> FieldElement {
        let p = i64::from(self.p);
        let v = ((i % p) + p) % p;
        FieldElement { val: v as u32, field: Arc::clone(self) }
    }

    /// Element from base-p digits, low to high. Digits are reduced mod p.
    pub fn from_digits(self: &Arc<Self>, digits: &[u32]) -> FieldElement {
        assert!(
            digits.len() <= self.m as usize,
            "too many digits for GF({}^{})",
            self.p,
            self.m
        );
        let mut val = 0u32;
        for &d in digits.iter().rev() {
            val = val * self.p + d % self.p;
        }
        FieldElement { val, field: Arc::clone(self) }
    }

    /// Uniformly random element.
    pub fn random(self: &Arc<Self>, rng: &mut dyn rand::RngCore) -> FieldElement {
        FieldElement { val: rng.next_u32() % self.q, field: Arc::clone(self) }
    }

    pub(crate) fn elem(self: &Arc<Self>, val: u32) -> FieldElement {
        debug_assert!(val < self.q);
        FieldElement { val, field: Arc::clone(self) }
    }

    // Packed-value arithmetic. Values are base-p digit vectors packed as
    // sum(digit_i * p^i) and always lie in [0, q).

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0u32;
        let mut scale = 1u32;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let mut out = 0u32;
        let mut scale = 1u32;
        let mut a = a;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32;
        }
        if self.p == 2 {
            // Carryless multiply, then reduce by the modulus bit pattern.
            let mut acc: u64 = 0;
            let aa = u64::from(a);
            let mut bb = u64::from(b);
            let mut shift = 0;
            while bb != 0 {
                if bb & 1 == 1 {
                    acc ^= aa << shift;
                }
                bb >>= 1;
                shift += 1;
            }
            let mut mod_bits: u64 = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                mod_bits |= u64::from(c) << i;
            }
            let m = self.m as u64;
            let mut bit = 63 - acc.leading_zeros() as u64;
            while acc != 0 && bit >= m {
                acc ^= mod_bits << (bit - m);
                if acc == 0 {
                    break;
                }
                bit = 63 - acc.leading_zeros() as u64;
            }
            return acc as u32;
        }
        // General case: digit convolution followed by long-division reduction.
        let m = self.m as usize;
        let p = u64::from(self.p);
        let mut da = [0u64; 16];
        let mut db = [0u64; 16];
        let (mut ra, mut rb) = (a, b);
        for i in 0..m {
            da[i] = u64::from(ra % self.p);
            db[i] = u64::from(rb % self.p);
            ra /= self.p;
            rb /= self.p;
        }
        let mut conv = [0u64; 31];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                conv[i + j] = (conv[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..m {
                let sub = (c * u64::from(self.modulus[j])) % p;
                conv[i - m + j] = (conv[i - m + j] + p - sub) % p;
            }
        }
        let mut out = 0u32;
        for i in (0..m).rev() {
            out = out * self.p + conv[i] as u32;
        }
        out
    }

    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv_table[a as usize]
    }

    pub(crate) fn pow_raw(&self, base: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1 % self.q;
        }
        if base == 0 {
            return 0;
        }
        let mut acc = 1 % self.q;
        let mut b = base;
        let mut e = exp % u64::from(self.q - 1);
        if e == 0 {
            e = u64::from(self.q - 1);
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, b);
            }
            b = self.mul_raw(b, b);
            e >>= 1;
        }
        acc
    }

    /// Parses the element syntax: sums of generator powers and integers,
    /// e.g. "a^2+a+1", "0", "2" (prime fields accept integers).
    pub fn parse_elem(self: &Arc<Self>, s: &str) -> Result<FieldElement, Error> {
        let mut p = ElemParser { field: self, bytes: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at byte {} in {s:?}",
                p.pos
            )));
        }
        Ok(v)
    }

    fn render_coeff_form(&self, val: u32) -> String {
        if val == 0 {
            return "0".into();
        }
        let mut digits = Vec::new();
        let mut v = val;
        while v > 0 {
            digits.push(v % self.p);
            v /= self.p;
        }
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => self.gen_name.clone(),
                (1, c) => format!("{c}*{}", self.gen_name),
                (i, 1) => format!("{}^{i}", self.gen_name),
                (i, c) => format!("{c}*{}^{i}", self.gen_name),
            };
            parts.push(part);
        }
        parts.join("+")
    }

    fn render_power_form(&self, val: u32) -> String {
        if let Some((_, log)) = &self.dlog {
            if val != 0 && log[val as usize] != u32::MAX {
                return match log[val as usize] {
                    0 => "1".into(),
                    1 => self.gen_name.clone(),
                    k => format!("{}^{k}", self.gen_name),
                };
            }
        }
        self.render_coeff_form(val)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaloisField(p={}, m={})", self.p, self.m)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            let mod_str = self.render_modulus();
            write!(f, "GF({}) = GF({})[{}]/({})", self.q, self.p, self.gen_name, mod_str)
        }
    }
}

impl GaloisField {
    fn render_modulus(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => self.gen_name.clone(),
                (1, c) => format!("{c}*{}", self.gen_name),
                (i, 1) => format!("{}^{i}", self.gen_name),
                (i, c) => format!("{c}*{}^{i}", self.gen_name),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

pub(crate) fn same_field(a: &Arc<GaloisField>, b: &Arc<GaloisField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of a GF(p^m).
///
/// Equality is structural: packed value plus field parameters. Arithmetic
/// operators panic when operands come from different fields; the checked_*
/// methods report [`Error::FieldMismatch`] instead.
#[derive(Clone)]
pub struct FieldElement {
    val: u32,
    field: Arc<GaloisField>,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn is_one(&self) -> bool {
        self.val == 1
    }

    pub(crate) fn packed(&self) -> u32 {
        self.val
    }

    /// Base-p digits, low to high, padded to the extension degree.
    pub fn digits(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.field.m as usize);
        let mut v = self.val;
        for _ in 0..self.field.m {
            out.push(v % self.field.p);
            v /= self.field.p;
        }
        out
    }

    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.val == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            val: self.field.inv_raw(self.val),
            field: Arc::clone(&self.field),
        })
    }

    pub fn pow(&self, exp: i64) -> Result<FieldElement, Error> {
        let val = if exp >= 0 {
            self.field.pow_raw(self.val, exp as u64)
        } else {
            if self.val == 0 {
                return Err(Error::DivisionByZero);
            }
            let inv = self.field.inv_raw(self.val);
            self.field.pow_raw(inv, exp.unsigned_abs())
        };
        Ok(FieldElement { val, field: Arc::clone(&self.field) })
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if !same_field(&self.field, &rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if !same_field(&self.field, &rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if !same_field(&self.field, &rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if !same_field(&self.field, &rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * &rhs.inv()?)
    }

    /// Canonical coefficient-form rendering, e.g. "a^2+a+1". Round-trips
    /// through [`GaloisField::parse_elem`].
    pub fn render(&self) -> String {
        self.field.render_coeff_form(self.val)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.val.hash(state);
        self.field.p.hash(state);
        self.field.m.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Power-of-generator form when a discrete-log table exists, coefficient
/// form otherwise.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render_power_form(self.val))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    same_field(&self.field, &rhs.field),
                    "field mismatch in element arithmetic"
                );
                FieldElement {
                    val: self.field.$raw(self.val, rhs.val),
                    field: Arc::clone(&self.field),
                }
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            val: self.field.neg_raw(self.val),
            field: Arc::clone(&self.field),
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

struct ElemParser<'a> {
    field: &'a Arc<GaloisField>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ElemParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement, Error> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // Implicit multiplication: "2a", "2(a+1)".
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.integer()?;
            return base.pow(exp).map_err(|_| {
                Error::Parse("negative power of zero".into())
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.field.from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && self.bytes[self.pos].is_ascii_alphabetic()
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                if name == self.field.generator_name() {
                    self.field.generator().map_err(|_| {
                        Error::Parse(format!(
                            "symbol {name:?} has no meaning in a prime field"
                        ))
                    })
                } else {
                    Err(Error::Parse(format!("unknown symbol {name:?}")))
                }
            }
            other => Err(Error::Parse(format!(
                "expected element atom, found {:?}",
                other.map(|b| b as char)
            ))),
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected integer".into()));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("integer {s} out of range")))?;
        Ok(if neg { -n } else { n })
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while u64::from(d) * u64::from(d) <= u64::from(p) {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u32, m: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= u64::from(p);
        if q > MAX_FIELD_SIZE {
            return None;
        }
    }
    Some(q)
}

/// Trial division: f (monic, degree m over F_p) is irreducible iff no monic
/// polynomial of degree 1..=m/2 divides it.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        // Enumerate all p^d monic candidates of degree d by counting in base p.
        let mut counter = vec![0u32; d];
        'candidates: loop {
            let mut g = counter.clone();
            g.push(1);
            if poly_rem_is_zero(p, f, &g) {
                return false;
            }
            for digit in counter.iter_mut() {
                *digit += 1;
                if *digit < p {
                    continue 'candidates;
                }
                *digit = 0;
            }
            break; // counter overflowed: every candidate of degree d was checked
        }
    }
    true
}

/// Remainder of f by monic g over F_p, testing for zero.
fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let p64 = u64::from(p);
    let mut r: Vec<u64> = f.iter().map(|&c| u64::from(c)).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p64;
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for j in 0..=dg {
                let sub = (lead * u64::from(g[j])) % p64;
                r[shift + j] = (r[shift + j] + p64 - sub) % p64;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c % p64 == 0)
}

fn build_inv_table(field: &GaloisField) -> Vec<u32> {
    let q = field.q as usize;
    let mut table = vec![0u32; q];
    for x in 1..q as u32 {
        table[x as usize] = field.pow_raw(x, u64::from(field.q) - 2);
    }
    table
}

fn build_dlog_tables(field: &GaloisField) -> (Vec<u32>, Vec<u32>) {
    let q = field.q as usize;
    let mut log = vec![u32::MAX; q];
    let mut exp = Vec::new();
    let a = field.p; // packed value of the generator
    let mut v = 1 % field.q;
    loop {
        if log[v as usize] != u32::MAX {
            break; // cycle closed
        }
        log[v as usize] = exp.len() as u32;
        exp.push(v);
        v = field.mul_raw(v, a);
    }
    (exp, log)
}
