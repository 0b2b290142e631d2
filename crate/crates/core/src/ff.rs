//! Finite fields GF(p^m).
//!
//! A [`Field`] is a cheaply clonable handle. Elements of prime fields are the
//! integers `0..p`; elements of extension fields are coefficient vectors over
//! GF(p), packed little-endian in base `p` (the element `c0 + c1*y + ...` is
//! stored as the integer `c0 + c1*p + ...`). Multiplication and inversion go
//! through discrete log / antilog tables built once at construction.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of 2^20")]
    TooLarge(u128),
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus coefficient {0} is not an element of the prime field")]
    ModulusCoefficient(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{value} is not an element of a field of order {order}")]
    OutOfRange { value: u64, order: u32 },
}

/// A raw field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Integer encoding of the element.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, lowest degree first; empty for prime fields.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1), g a primitive element.
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

impl Field {
    /// Builds GF(p^m). For `m > 1` the modulus (lowest degree first) is
    /// checked for irreducibility; when absent, the first monic irreducible
    /// polynomial in the order of [`Field::search_modulus`] is used.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(FieldError::TooLarge(q));
        }
        let p = p as u32;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            match modulus {
                Some(coeffs) => {
                    let mut reduced = Vec::with_capacity(coeffs.len());
                    for &c in coeffs {
                        if c >= p as u64 {
                            return Err(FieldError::ModulusCoefficient(c));
                        }
                        reduced.push(c as u32);
                    }
                    trim(&mut reduced);
                    let found = reduced.len().saturating_sub(1);
                    if reduced.is_empty() || found != m as usize {
                        return Err(FieldError::ModulusDegree { expected: m as usize, found });
                    }
                    let lc_inv = pow_mod(reduced[m as usize], p - 2, p);
                    for c in &mut reduced {
                        *c = mul_mod(*c, lc_inv, p);
                    }
                    if !is_irreducible(&reduced, p) {
                        return Err(FieldError::ReducibleModulus(p));
                    }
                    reduced
                }
                None => Self::search_modulus(p, m),
            }
        };
        Ok(Field(Arc::new(build_tables(p, m, q as u32, modulus))))
    }

    /// GF(p) for prime `p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// First monic irreducible polynomial of degree `m` over GF(p), where
    /// candidates are ordered by the integer whose base-`p` digits are the
    /// non-leading coefficients (so x^3+x+1 comes before x^3+x^2+1).
    pub fn search_modulus(p: u32, m: u32) -> Vec<u32> {
        let count = (p as u64).pow(m);
        (0..count)
            .map(|code| {
                let mut poly = digits(code, p, m as usize);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("irreducible polynomials exist in every degree")
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, lowest degree first. `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.m == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    /// Textual form `p^m` or `p^m/[c0,c1,...]`.
    pub fn describe(&self) -> String {
        match self.modulus() {
            None => format!("{}^1", self.0.p),
            Some(md) => {
                let cs: Vec<String> = md.iter().map(|c| c.to_string()).collect();
                format!("{}^{}/[{}]", self.0.p, self.0.m, cs.join(","))
            }
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given integer encoding.
    pub fn element(&self, value: u64) -> Result<Elem, FieldError> {
        if value < self.0.q as u64 {
            Ok(Elem(value as u32))
        } else {
            Err(FieldError::OutOfRange { value, order: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn int(&self, value: i64) -> Elem {
        Elem(value.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing integer encoding.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    /// Pairs an element with this field for checked arithmetic.
    pub fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.m == 1 {
            let s = a.0 + b.0;
            Elem(if s >= inner.p { s - inner.p } else { s })
        } else if inner.p == 2 {
            Elem(a.0 ^ b.0)
        } else {
            self.digitwise(a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.m == 1 {
            Elem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + inner.p - b.0 })
        } else if inner.p == 2 {
            Elem(a.0 ^ b.0)
        } else {
            self.digitwise(a, b, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(Elem::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        Ok(Elem(inner.exp[((order - inner.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let idx = (inner.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(inner.exp[idx as usize])
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u32, u32, u32) -> u32) -> Elem {
        let p = self.0.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.0.m {
            out += op(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }
}

/// An element paired with its field; arithmetic checks that both operands
/// share a field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.field.wrap(self.field.inv(self.value)?))
    }
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

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn rem_prime(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            let t = mul_mod(lead, c, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut divisor = digits(code, p, d);
            divisor.push(1);
            if rem_prime(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    if m == 1 {
        return mul_mod(a, b, p);
    }
    let da = digits(a as u64, p, m as usize);
    let db = digits(b as u64, p, m as usize);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    let r = rem_prime(&prod, modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn build_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Inner {
    let order = q - 1;
    let slow_pow = |g: u32, mut e: u32| {
        let (mut base, mut acc) = (g, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(acc, base, p, m, &modulus);
            }
            base = slow_mul(base, base, p, m, &modulus);
            e >>= 1;
        }
        acc
    };
    let factors = distinct_prime_factors(order);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");

    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..order {
        exp[i as usize] = cur;
        log[cur as usize] = i;
        cur = slow_mul(cur, generator, p, m, &modulus);
    }
    for i in order..2 * order {
        exp[i as usize] = exp[(i - order) as usize];
    }
    Inner { p, m, q, modulus, exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn test_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(17).unwrap(),
            Field::prime(251).unwrap(),
            Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(),
            Field::new(3, 2, None).unwrap(),
            Field::new(2, 8, None).unwrap(),
            Field::new(11, 2, None).unwrap(),
        ]
    }

    #[test]
    fn construction_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.order(), 5);
        assert!(f5.modulus().is_none());

        let f8 = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert_eq!(f8.order(), 8);
        assert_eq!(f8.modulus(), Some(&[1, 1, 0, 1][..]));

        assert_eq!(Field::prime(4).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::prime(1).unwrap_err(), FieldError::NotPrime(1));
    }

    #[test]
    fn rejects_bad_moduli() {
        // x^3 + x^2 + x + 1 = (x + 1)^3 over GF(2)
        assert_eq!(
            Field::new(2, 3, Some(&[1, 1, 1, 1])).unwrap_err(),
            FieldError::ReducibleModulus(2)
        );
        assert_eq!(
            Field::new(2, 3, Some(&[1, 1, 1])).unwrap_err(),
            FieldError::ModulusDegree { expected: 3, found: 2 }
        );
        assert_eq!(
            Field::new(2, 2, Some(&[1, 2, 1])).unwrap_err(),
            FieldError::ModulusCoefficient(2)
        );
        assert!(matches!(Field::new(2, 21, None), Err(FieldError::TooLarge(_))));
    }

    #[test]
    fn modulus_search_is_deterministic() {
        assert_eq!(Field::search_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(Field::search_modulus(2, 8), vec![1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(Field::search_modulus(3, 2), vec![1, 0, 1]);
        let a = Field::new(2, 4, None).unwrap();
        let b = Field::new(2, 4, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn gf5_multiplication_table() {
        let f = Field::prime(5).unwrap();
        for a in 0..5u32 {
            for b in 0..5u32 {
                assert_eq!(f.mul(Elem(a), Elem(b)), Elem(a * b % 5));
            }
        }
        assert_eq!(f.mul(Elem(3), Elem(4)), Elem(2));
    }

    #[test]
    fn gf8_reduction() {
        let f = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        // x * x^2 = x^3 = x + 1
        assert_eq!(f.mul(Elem(0b010), Elem(0b100)), Elem(0b011));
    }

    #[test]
    fn inverse_examples() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(Elem(1)).unwrap(), Elem(1));
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f.inv(Elem(0)).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(f.div(Elem(1), Elem(0)).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn checked_elements_refuse_mixing() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        let a = f5.wrap(Elem(2));
        let b = f7.wrap(Elem(2));
        assert_eq!(a.mul(&b).unwrap_err(), FieldError::MixedFields);
        assert_eq!(a.add(&b).unwrap_err(), FieldError::MixedFields);
        let c = Field::prime(5).unwrap().wrap(Elem(4));
        assert_eq!(a.mul(&c).unwrap().value(), Elem(3));
        assert_eq!(a.div(&c).unwrap().value(), Elem(3));
        assert_eq!(f5.wrap(Elem(0)).inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn element_bounds() {
        let f = Field::new(3, 2, None).unwrap();
        assert!(f.element(8).is_ok());
        assert_eq!(f.element(9).unwrap_err(), FieldError::OutOfRange { value: 9, order: 9 });
        assert_eq!(Field::prime(7).unwrap().int(-1), Elem(6));
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in test_fields() {
            let q = f.order();
            for _ in 0..2000 {
                let a = Elem(rng.gen_range(0..q));
                let b = Elem(rng.gen_range(0..q));
                let c = Elem(rng.gen_range(0..q));
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.sub(f.add(a, b), b), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.mul(a, Elem::ONE), a);
                if !b.is_zero() {
                    assert_eq!(f.div(a, b).unwrap(), f.mul(a, f.inv(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn fermat_and_double_inverse() {
        for f in test_fields().into_iter().filter(|f| f.order() <= 512) {
            let q = f.order() as u64;
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q - 1), Elem::ONE, "{f}: {a}");
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), Elem::ONE);
                assert_eq!(f.inv(inv).unwrap(), a);
            }
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Field::new(11, 2, None).unwrap();
        let a = Elem(37);
        let mut acc = Elem::ONE;
        for e in 0..300u64 {
            assert_eq!(f.pow(a, e), acc);
            acc = f.mul(acc, a);
        }
        assert_eq!(f.pow(Elem::ZERO, 0), Elem::ONE);
        assert_eq!(f.pow(Elem::ZERO, 3), Elem::ZERO);
    }

    #[test]
    fn describe_round_trips_modulus() {
        assert_eq!(Field::prime(251).unwrap().describe(), "251^1");
        assert_eq!(Field::new(2, 3, None).unwrap().describe(), "2^3/[1,1,0,1]");
    }
}
