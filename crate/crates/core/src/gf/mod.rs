//! Exact arithmetic in GF(p^k) and polynomials over it.
//!
//! Field contexts are interned: [`FieldCtx::get`] returns a `&'static`
//! handle that is shared by every element of that field, so elements are
//! small `Copy` values and equality of contexts is pointer equality.
//!
//! Elements of GF(p^k) are coefficient vectors over GF(p) reduced modulo a
//! fixed monic irreducible polynomial in `t`. For `k = 2` the modulus is
//! `t^2 - n` with `n` the least quadratic nonresidue mod `p`.

mod poly;

pub use poly::{rational_identity_check, Poly};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// Shared handle to an interned field context.
pub type Field = &'static FieldCtx;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
    k: usize,
    /// Monic modulus, `modulus[i]` is the coefficient of `t^i`; `modulus[k] = 1`.
    modulus: [u32; MAX_DEGREE + 1],
    order: u64,
}

static REGISTRY: OnceLock<Mutex<HashMap<(u32, usize), Field>>> = OnceLock::new();

fn registry() -> &'static Mutex<HashMap<(u32, usize), Field>> {
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Least quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u32) -> Option<u32> {
    if p == 2 {
        return None;
    }
    let p64 = p as u64;
    (1..p).find(|&n| pow_mod(n as u64, (p64 - 1) / 2, p64) == p64 - 1)
}

impl FieldCtx {
    /// Interned context for GF(p^k).
    pub fn get(p: u32, k: usize) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        let order = (p as u64)
            .checked_pow(k as u32)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::InvalidField(format!("GF({p}^{k}) too large")))?;

        if let Some(ctx) = registry()
            .lock()
            .expect("field registry poisoned")
            .get(&(p, k))
        {
            return Ok(ctx);
        }
        // Built outside the lock: finding a modulus for k > 2 needs GF(p) itself.
        let modulus = Self::choose_modulus(p, k)?;
        let mut map = registry().lock().expect("field registry poisoned");
        let ctx = *map.entry((p, k)).or_insert_with(|| {
            Box::leak(Box::new(FieldCtx {
                p,
                k,
                modulus,
                order,
            }))
        });
        Ok(ctx)
    }

    fn choose_modulus(p: u32, k: usize) -> Result<[u32; MAX_DEGREE + 1]> {
        let mut modulus = [0u32; MAX_DEGREE + 1];
        modulus[k] = 1;
        match k {
            1 => {}
            2 if p != 2 => {
                let n = least_nonresidue(p).expect("odd prime has a nonresidue");
                modulus[0] = p - n;
            }
            _ => {
                let prime = FieldCtx::get(p, 1)?;
                let found = (0..(p as u64).pow(k as u32))
                    .map(|idx| prime.lex_digits(idx, k))
                    .filter(|digits| digits[0] != 0)
                    .find(|digits| {
                        let mut coeffs: Vec<FieldElement> = digits[..k]
                            .iter()
                            .map(|&c| prime.element(c as u64))
                            .collect();
                        coeffs.push(prime.one());
                        Poly::new(prime, coeffs).is_irreducible()
                    })
                    .ok_or_else(|| {
                        Error::InvalidField(format!("no irreducible of degree {k} over GF({p})"))
                    })?;
                modulus[..k].copy_from_slice(&found[..k]);
            }
        }
        Ok(modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus[..=self.k]
    }

    pub fn zero(&'static self) -> FieldElement {
        FieldElement {
            ctx: self,
            c: [0; MAX_DEGREE],
        }
    }

    pub fn one(&'static self) -> FieldElement {
        self.element(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn element(&'static self, n: u64) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        c[0] = (n % self.p as u64) as u32;
        FieldElement { ctx: self, c }
    }

    pub fn from_i64(&'static self, n: i64) -> FieldElement {
        self.element(n.rem_euclid(self.p as i64) as u64)
    }

    /// The adjoined root `t`; `None` for prime fields.
    pub fn generator(&'static self) -> Option<FieldElement> {
        (self.k > 1).then(|| {
            let mut c = [0; MAX_DEGREE];
            c[1] = 1;
            FieldElement { ctx: self, c }
        })
    }

    pub fn from_coeffs(&'static self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.k {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient {bad} not reduced mod {}",
                self.p
            )));
        }
        let mut c = [0; MAX_DEGREE];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(FieldElement { ctx: self, c })
    }

    fn lex_digits(&self, mut idx: u64, k: usize) -> [u32; MAX_DEGREE] {
        let mut c = [0; MAX_DEGREE];
        for slot in (0..k).rev() {
            c[slot] = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        c
    }

    /// The `idx`-th element in coefficient-lexicographic order (constant
    /// coefficient most significant).
    pub fn element_at(&'static self, idx: u64) -> FieldElement {
        FieldElement {
            ctx: self,
            c: self.lex_digits(idx % self.order, self.k),
        }
    }

    /// All elements in ascending coefficient-lexicographic order.
    pub fn elements(&'static self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// The least element (in the canonical order) of exact multiplicative order `d`.
    pub fn element_of_order(&'static self, d: u64) -> Result<FieldElement> {
        let group = self.order - 1;
        let missing = Error::NoElementOfOrder {
            order: d,
            field_order: self.order,
        };
        if d == 0 || !group.is_multiple_of(d) {
            return Err(missing);
        }
        self.elements()
            .filter(|a| !a.is_zero())
            .find(|a| a.multiplicative_order().ok() == Some(d))
            .ok_or(missing)
    }

    /// Parses `"3"`, `"t"`, `"2*t"`, `"3+4*t"`, `"1+t^2"` and the like.
    pub fn parse_element(&'static self, s: &str) -> Result<FieldElement> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut c = [0u64; MAX_DEGREE];
        for term in s.split('+') {
            let bad = || Error::Parse(format!("bad term `{term}` in field element `{s}`"));
            let (coef, power) = match term.split_once('t') {
                None => (term, 0usize),
                Some((head, tail)) => {
                    let coef = head.strip_suffix('*').unwrap_or(head);
                    let coef = if coef.is_empty() { "1" } else { coef };
                    let power = match tail {
                        "" => 1,
                        _ => tail
                            .strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(bad)?,
                    };
                    (coef, power)
                }
            };
            let coef: u64 = coef.parse().map_err(|_| bad())?;
            if power >= self.k {
                return Err(bad());
            }
            c[power] = (c[power] + coef) % self.p as u64;
        }
        let mut out = [0u32; MAX_DEGREE];
        for (o, v) in out.iter_mut().zip(c) {
            *o = v as u32;
        }
        Ok(FieldElement { ctx: self, c: out })
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

/// An element of an interned finite field.
#[derive(Clone, Copy)]
pub struct FieldElement {
    ctx: Field,
    c: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.ctx
    }

    /// Coefficients `c0, c1, ..., c_{k-1}` with `c0` the constant term.
    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.ctx.k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// `Some(residue)` when the element lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u32> {
        self.c[1..].iter().all(|&x| x == 0).then_some(self.c[0])
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.ctx, other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.order,
                right: other.ctx.order,
            })
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let p = self.ctx.p;
        let mut c = [0; MAX_DEGREE];
        for ((ci, a), b) in c.iter_mut().zip(&self.c).zip(&other.c).take(self.ctx.k) {
            let s = a + b;
            *ci = if s >= p { s - p } else { s };
        }
        Self { ctx: self.ctx, c }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let ctx = self.ctx;
        let p = ctx.p as u64;
        let k = ctx.k;
        if k == 1 {
            let mut c = [0; MAX_DEGREE];
            c[0] = (self.c[0] as u64 * other.c[0] as u64 % p) as u32;
            return Self { ctx, c };
        }
        let mut wide = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                wide[i + j] = (wide[i + j] + self.c[i] as u64 * other.c[j] as u64) % p;
            }
        }
        // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
        for top in (k..2 * k - 1).rev() {
            let lead = wide[top];
            if lead == 0 {
                continue;
            }
            wide[top] = 0;
            for j in 0..k {
                let sub = lead * ctx.modulus[j] as u64 % p;
                let slot = top - k + j;
                wide[slot] = (wide[slot] + p - sub) % p;
            }
        }
        let mut c = [0; MAX_DEGREE];
        for i in 0..k {
            c[i] = wide[i] as u32;
        }
        Self { ctx, c }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_value()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn neg_value(&self) -> Self {
        let p = self.ctx.p;
        let mut c = self.c;
        for x in c.iter_mut().take(self.ctx.k) {
            if *x != 0 {
                *x = p - *x;
            }
        }
        Self { ctx: self.ctx, c }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.ctx.order - 2))
    }

    /// The Frobenius image `a^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p as u64)
    }

    /// Least `d >= 1` with `a^d = 1`.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.ctx.order - 1;
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1;
        while d * d <= group {
            if group.is_multiple_of(d) {
                small.push(d);
                if d * d != group {
                    large.push(group / d);
                }
            }
            d += 1;
        }
        Ok(small
            .into_iter()
            .chain(large.into_iter().rev())
            .find(|&d| self.pow(d).is_one())
            .expect("a^(q-1) = 1"))
    }

    /// A square root in the same field, if one exists (the lesser of the two).
    pub fn sqrt(&self) -> Option<Self> {
        self.ctx.elements().find(|y| y.mul_unchecked(y) == *self)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .cmp(&other.c)
            .then_with(|| (self.ctx.p, self.ctx.k).cmp(&(other.ctx.p, other.ctx.k)))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_value()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ctx.k {
            1 => write!(f, "{}", self.c[0]),
            k => {
                write!(f, "{}+{}*t", self.c[0], self.c[1])?;
                for i in 2..k {
                    write!(f, "+{}*t^{i}", self.c[i])?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.ctx.k))?;
        for c in self.coeffs() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: usize) -> Field {
        FieldCtx::get(p, k).unwrap()
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        let f = gf(7, 1);
        assert_eq!(f.element(3).inv().unwrap(), f.element(5));
    }

    #[test]
    fn gf49_modulus_is_t_squared_minus_three() {
        let f = gf(7, 2);
        assert_eq!(f.modulus(), &[4, 0, 1]);
        let t = f.generator().unwrap();
        assert_eq!(t * t, f.element(3));
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = gf(7, 1);
        for a in f.elements() {
            assert_eq!(f.zero() + a, a);
        }
    }

    #[test]
    fn multiplicative_orders() {
        let f = gf(7, 1);
        assert_eq!(f.element(3).multiplicative_order().unwrap(), 6);
        assert_eq!(f.element(2).multiplicative_order().unwrap(), 3);
        let g = gf(7, 2);
        assert_eq!(g.generator().unwrap().multiplicative_order().unwrap(), 12);
        assert_eq!(f.zero().multiplicative_order(), Err(Error::DivisionByZero));
    }

    #[test]
    fn element_of_order_picks_least() {
        let f = gf(7, 1);
        assert_eq!(f.element_of_order(6).unwrap(), f.element(3));
        assert_eq!(f.element_of_order(1).unwrap(), f.one());
        assert!(matches!(
            f.element_of_order(4),
            Err(Error::NoElementOfOrder { .. })
        ));
        let g = gf(7, 2);
        assert_eq!(g.element_of_order(12).unwrap().coeffs(), &[0, 1]);
    }

    #[test]
    fn errors() {
        let f = gf(7, 1);
        let g = gf(11, 1);
        assert_eq!(f.one().checked_div(&f.zero()), Err(Error::DivisionByZero));
        assert!(matches!(
            f.one().checked_add(&g.one()),
            Err(Error::ContextMismatch { .. })
        ));
        assert!(FieldCtx::get(9, 1).is_err());
        assert!(FieldCtx::get(7, 0).is_err());
    }

    #[test]
    fn interning_returns_same_context() {
        assert!(std::ptr::eq(gf(13, 2), gf(13, 2)));
    }

    #[test]
    fn lex_order_compares_constant_first() {
        let f = gf(7, 2);
        let a = f.from_coeffs(&[0, 5]).unwrap();
        let b = f.from_coeffs(&[1, 0]).unwrap();
        assert!(a < b);
        let all: Vec<_> = f.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), 49);
    }

    #[test]
    fn render_and_parse() {
        let f = gf(7, 2);
        let a = f.from_coeffs(&[3, 4]).unwrap();
        assert_eq!(a.to_string(), "3+4*t");
        assert_eq!(f.parse_element("3+4*t").unwrap(), a);
        assert_eq!(f.parse_element("4t + 3").unwrap(), a);
        assert_eq!(f.parse_element("t").unwrap(), f.generator().unwrap());
        assert_eq!(gf(7, 1).element(5).to_string(), "5");
        assert!(f.parse_element("1+t^2").is_err());
        assert!(f.parse_element("x").is_err());
        assert_eq!(serde_json_like(&a), "[3,4]");
    }

    fn serde_json_like(a: &FieldElement) -> String {
        serde_json::to_string(a).unwrap()
    }

    #[test]
    fn frobenius_fixes_exactly_prime_subfield() {
        for &(p, k) in &[(2, 1), (3, 2), (5, 2), (7, 1), (7, 2), (11, 2)] {
            let f = gf(p, k);
            let elems: Vec<_> = f.elements().collect();
            let fixed = elems.iter().filter(|a| a.frobenius() == **a).count();
            assert_eq!(fixed as u32, p);
            for a in &elems {
                assert_eq!(a.frobenius() == *a, a.as_prime().is_some());
                for b in elems.iter().step_by(3) {
                    assert_eq!((*a + *b).frobenius(), a.frobenius() + b.frobenius());
                    assert_eq!((*a * *b).frobenius(), a.frobenius() * b.frobenius());
                }
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        for &(p, k) in &[(7, 1), (7, 2), (11, 1), (11, 2)] {
            let f = gf(p, k);
            for a in f.elements().filter(|a| !a.is_zero()) {
                let d = a.multiplicative_order().unwrap();
                assert_eq!((f.order() - 1) % d, 0);
                assert!(a.pow(d).is_one());
            }
        }
    }

    #[test]
    fn higher_degree_smoke() {
        let f = gf(3, 3);
        assert_eq!(f.order(), 27);
        let a = f.element_at(17);
        assert_eq!(a * a.inv().unwrap(), f.one());
        let g = gf(2, 4);
        assert_eq!(g.elements().filter(|x| !x.is_zero()).count(), 15);
        assert!(g
            .elements()
            .skip(1)
            .all(|x| (x * x.inv().unwrap()).is_one()));
    }
}
