//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::ff::{Elem, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("power series inverse needs a nonzero constant term")]
    NotInvertible,
    #[error("interpolation points must have distinct x-coordinates")]
    DuplicatePoint,
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints the coefficient list, e.g. `[1,4,0,1]` for 1 + 4x + x^3.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from integer-encoded coefficients, lowest first.
    pub fn from_ints(field: &Field, values: &[u64]) -> Result<Poly, PolyError> {
        let coeffs = values.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        let mut coeffs = vec![Elem::ONE];
        for &r in roots {
            let neg_r = field.neg(r);
            coeffs.push(Elem::ZERO);
            for i in (0..coeffs.len()).rev() {
                let lower = if i > 0 { coeffs[i - 1] } else { Elem::ZERO };
                coeffs[i] = field.add(lower, field.mul(neg_r, coeffs[i]));
            }
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial, which orders below every `Some(d)`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Elem::ONE
    }

    fn same_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::from_coeffs(f, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::from_coeffs(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::from_coeffs(f, out))
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same_field(divisor)?;
        let f = &self.field;
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = f.inv(divisor.lc())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], lc_inv);
            if c.is_zero() {
                continue;
            }
            let shift = i - db;
            quot[shift] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `self * x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// `self mod x^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Scales to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient reversal `x^deg p * p(1/x)`.
    pub fn rev(&self) -> Result<Poly, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.rev_to(d))
    }

    /// `x^n * p(1/x)` for `n >= deg p`.
    pub fn rev_to(&self, n: usize) -> Poly {
        debug_assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, Elem::ZERO);
        coeffs.reverse();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Power series inverse: `self * out == 1 mod x^precision`.
    pub fn series_inv(&self, precision: usize) -> Result<Poly, PolyError> {
        let f = &self.field;
        let c0 = self.coeff(0);
        let c0_inv = f.inv(c0).map_err(|_| PolyError::NotInvertible)?;
        let mut out = vec![Elem::ZERO; precision];
        for i in 0..precision {
            let mut acc = if i == 0 { Elem::ONE } else { Elem::ZERO };
            for j in 1..=i.min(self.coeffs.len().saturating_sub(1)) {
                acc = f.sub(acc, f.mul(self.coeffs[j], out[i - j]));
            }
            out[i] = f.mul(acc, c0_inv);
        }
        Ok(Poly::from_coeffs(f, out))
    }

    /// Lagrange interpolation through `points` in O(n^2), using barycentric
    /// weights `w_i = prod_{j != i} (x_i - x_j)^{-1}`.
    pub fn interpolate(field: &Field, points: &[(Elem, Elem)]) -> Result<Poly, PolyError> {
        if points.is_empty() {
            return Err(PolyError::NoPoints);
        }
        let xs: Vec<Elem> = points.iter().map(|&(x, _)| x).collect();
        let master = Poly::from_roots(field, &xs);
        let mut weights = Vec::with_capacity(points.len());
        for (i, &xi) in xs.iter().enumerate() {
            let mut prod = Elem::ONE;
            for (j, &xj) in xs.iter().enumerate() {
                if i != j {
                    prod = field.mul(prod, field.sub(xi, xj));
                }
            }
            weights.push(field.inv(prod).map_err(|_| PolyError::DuplicatePoint)?);
        }
        let values: Vec<Elem> = points
            .iter()
            .zip(&weights)
            .map(|(&(_, y), &w)| field.mul(y, w))
            .collect();
        Ok(combine_quotients(&master, &xs, &[values]).pop().unwrap())
    }

    /// `self -= c * x^shift * other`, in place.
    pub fn sub_scaled_shifted(&mut self, c: Elem, shift: usize, other: &Poly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let f = &self.field;
        let needed = other.coeffs.len() + shift;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, Elem::ZERO);
        }
        for (dst, &src) in self.coeffs[shift..].iter_mut().zip(&other.coeffs) {
            *dst = f.sub(*dst, f.mul(c, src));
        }
        trim(&mut self.coeffs);
    }
}

/// For each weight vector `w` in `weight_sets`, computes
/// `sum_i w[i] * master / (x - roots[i])`. `master` must be monic with the
/// given roots. Shares one synthetic division per root across all sets.
pub(crate) fn combine_quotients(master: &Poly, roots: &[Elem], weight_sets: &[Vec<Elem>]) -> Vec<Poly> {
    let f = master.field();
    let n = roots.len();
    let mut acc = vec![vec![Elem::ZERO; n]; weight_sets.len()];
    let mut quot = vec![Elem::ZERO; n];
    let g = master.coeffs();
    for (i, &root) in roots.iter().enumerate() {
        // synthetic division of master by (x - root); quotient has degree n - 1
        let mut carry = Elem::ZERO;
        for d in (0..n).rev() {
            carry = f.add(g[d + 1], f.mul(carry, root));
            quot[d] = carry;
        }
        for (set, out) in weight_sets.iter().zip(acc.iter_mut()) {
            let w = set[i];
            if w.is_zero() {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(&quot) {
                *o = f.add(*o, f.mul(w, c));
            }
        }
    }
    acc.into_iter().map(|c| Poly::from_coeffs(f, c)).collect()
}

fn trim(v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    fn p(f: &Field, c: &[u64]) -> Poly {
        Poly::from_ints(f, c).unwrap()
    }

    fn random_poly(f: &Field, rng: &mut impl Rng, max_len: usize) -> Poly {
        let len = rng.gen_range(0..=max_len);
        Poly::from_coeffs(f, (0..len).map(|_| Elem(rng.gen_range(0..f.order()))).collect())
    }

    #[test]
    fn zero_degree_sorts_below_everything() {
        let f = gf5();
        assert_eq!(Poly::zero(&f).degree(), None);
        assert!(Poly::zero(&f).degree() < Some(0));
        assert_eq!(p(&f, &[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf5();
        let a = p(&f, &[1, 1]);
        let b = p(&f, &[4, 1]);
        assert_eq!(&a * &b, p(&f, &[4, 0, 1]));
        assert_eq!(&a + &Poly::zero(&f), a);
        assert!((&a * &Poly::zero(&f)).is_zero());
        assert_eq!(&a - &a, Poly::zero(&f));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Poly::one(&gf5());
        let b = Poly::one(&Field::prime(7).unwrap());
        assert_eq!(a.checked_add(&b).unwrap_err(), PolyError::MixedFields);
        assert_eq!(a.checked_mul(&b).unwrap_err(), PolyError::MixedFields);
        assert_eq!(a.divmod(&b).unwrap_err(), PolyError::MixedFields);
    }

    #[test]
    fn divmod_examples() {
        let f = gf5();
        let (q, r) = p(&f, &[4, 0, 1]).divmod(&p(&f, &[1, 1])).unwrap();
        assert_eq!(q, p(&f, &[4, 1]));
        assert!(r.is_zero());

        let a = p(&f, &[3, 1, 4, 1]);
        assert_eq!(a.divmod(&Poly::one(&f)).unwrap(), (a.clone(), Poly::zero(&f)));
        assert_eq!(a.divmod(&a).unwrap(), (Poly::one(&f), Poly::zero(&f)));
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), PolyError::DivisionByZero);
    }

    #[test]
    fn eval_examples() {
        let f = gf5();
        assert_eq!(p(&f, &[4, 0, 1]).eval(Elem(1)), Elem(0));
        assert_eq!(p(&f, &[3]).eval(Elem(2)), Elem(3));
        assert_eq!(Poly::zero(&f).eval(Elem(2)), Elem(0));
    }

    #[test]
    fn interpolate_examples() {
        let f = gf5();
        let line = Poly::interpolate(&f, &[(Elem(0), Elem(1)), (Elem(1), Elem(2))]).unwrap();
        assert_eq!(line, p(&f, &[1, 1]));
        let c = Poly::interpolate(&f, &[(Elem(3), Elem(4))]).unwrap();
        assert_eq!(c, p(&f, &[4]));
        assert_eq!(
            Poly::interpolate(&f, &[(Elem(1), Elem(1)), (Elem(1), Elem(2))]).unwrap_err(),
            PolyError::DuplicatePoint
        );
        assert_eq!(Poly::interpolate(&f, &[]).unwrap_err(), PolyError::NoPoints);
    }

    #[test]
    fn rev_examples() {
        let f = gf5();
        assert_eq!(p(&f, &[0, 2, 1]).rev().unwrap(), p(&f, &[1, 2]));
        assert_eq!(p(&f, &[3]).rev().unwrap(), p(&f, &[3]));
        assert_eq!(p(&f, &[1, 0, 0, 1]).rev().unwrap(), p(&f, &[1, 0, 0, 1]));
        assert_eq!(Poly::zero(&f).rev().unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn series_inverse_examples() {
        let f = gf5();
        assert_eq!(p(&f, &[1, 4]).series_inv(3).unwrap(), p(&f, &[1, 1, 1]));
        assert_eq!(Poly::one(&f).series_inv(7).unwrap(), Poly::one(&f));
        assert_eq!(p(&f, &[0, 1]).series_inv(2).unwrap_err(), PolyError::NotInvertible);
    }

    #[test]
    fn from_roots_vanishes_on_roots() {
        let f = Field::prime(17).unwrap();
        let roots = [Elem(1), Elem(5), Elem(16)];
        let g = Poly::from_roots(&f, &roots);
        assert_eq!(g.degree(), Some(3));
        assert!(g.is_monic());
        for r in roots {
            assert_eq!(g.eval(r), Elem::ZERO);
        }
        assert_eq!(Poly::from_roots(&f, &[]), Poly::one(&f));
    }

    #[test]
    fn divmod_round_trip_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [gf5(), Field::prime(251).unwrap(), Field::new(2, 4, None).unwrap()] {
            for _ in 0..1000 {
                let a = random_poly(&f, &mut rng, 12);
                let b = random_poly(&f, &mut rng, 6);
                if b.is_zero() {
                    continue;
                }
                let (q, r) = a.divmod(&b).unwrap();
                assert!(r.degree() < b.degree());
                assert_eq!(&(&q * &b) + &r, a);
            }
        }
    }

    #[test]
    fn interpolation_recovers_low_degree_polys() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for f in [Field::prime(17).unwrap(), Field::new(3, 3, None).unwrap()] {
            for _ in 0..100 {
                let n = rng.gen_range(1..=12);
                let target = random_poly(&f, &mut rng, n);
                let mut xs: Vec<Elem> = f.elements().collect();
                for i in 0..n {
                    let j = rng.gen_range(i..xs.len());
                    xs.swap(i, j);
                }
                let pts: Vec<_> = xs[..n].iter().map(|&x| (x, target.eval(x))).collect();
                assert_eq!(Poly::interpolate(&f, &pts).unwrap(), target);
            }
        }
    }

    #[test]
    fn eval_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = Field::prime(97).unwrap();
        for _ in 0..500 {
            let a = random_poly(&f, &mut rng, 8);
            let b = random_poly(&f, &mut rng, 8);
            let x = Elem(rng.gen_range(0..97));
            assert_eq!((&a * &b).eval(x), f.mul(a.eval(x), b.eval(x)));
            if !a.is_zero() && !b.is_zero() {
                assert_eq!((&a * &b).degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
            }
        }
    }

    #[test]
    fn rev_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = Field::prime(13).unwrap();
        for _ in 0..500 {
            let a = random_poly(&f, &mut rng, 7);
            let b = random_poly(&f, &mut rng, 7);
            if a.coeff(0).is_zero() || b.coeff(0).is_zero() {
                continue;
            }
            assert_eq!((&a * &b).rev().unwrap(), &a.rev().unwrap() * &b.rev().unwrap());
            assert_eq!(a.rev().unwrap().rev().unwrap(), a);
        }
    }

    #[test]
    fn series_inverse_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f = Field::new(2, 5, None).unwrap();
        for _ in 0..300 {
            let a = random_poly(&f, &mut rng, 9);
            if a.coeff(0).is_zero() {
                continue;
            }
            let prec = rng.gen_range(1..20);
            let inv = a.series_inv(prec).unwrap();
            assert_eq!((&a * &inv).truncate(prec), Poly::one(&f));
        }
    }

    #[test]
    fn sub_scaled_shifted_matches_ops() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let f = Field::prime(7).unwrap();
        for _ in 0..300 {
            let a = random_poly(&f, &mut rng, 6);
            let b = random_poly(&f, &mut rng, 6);
            let c = Elem(rng.gen_range(0..7));
            let s = rng.gen_range(0..4);
            let mut got = a.clone();
            got.sub_scaled_shifted(c, s, &b);
            assert_eq!(got, &a - &b.scale(c).shift(s));
        }
    }

    #[test]
    fn display_lists_coefficients() {
        let f = gf5();
        assert_eq!(p(&f, &[1, 4, 0, 1]).to_string(), "[1,4,0,1]");
        assert_eq!(Poly::zero(&f).to_string(), "[]");
    }
}
