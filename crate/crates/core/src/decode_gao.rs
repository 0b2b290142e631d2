//! Power Gao decoding.
//!
//! For a received word with power Lagrangians `R<1>, .., R<l>`, the decoder
//! looks for the solution `(lambda, psi<1>, .., psi<l>)` of
//!
//! ```text
//! lambda * R<t> = psi<t>  mod G,      deg psi<t> <= deg lambda + t(k-1)
//! ```
//!
//! with `deg lambda` minimal. The solutions form a module with basis rows
//! `(1, R<1>, .., R<l>)` and `G * e_t`; reducing that basis to weak Popov
//! form under the shifts from [`gao_shifts`] puts the minimal solution in
//! the row whose pivot is column 0. Decoding succeeds when that solution has
//! the shape `(Lambda, Lambda f, .., Lambda f^l)`.

use thiserror::Error;

use crate::ff::Elem;
use crate::grs::{hamming_distance, CodeError, GrsCode, Word};
use crate::poly::Poly;
use crate::polymat::{minimal_row, pivot_row_is_unique, weak_popov, PolyMatError, PolyMatrix, ShiftVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("powering degree {ell} is invalid: need ell >= 1 and ell*(k-1) < n (n = {n}, k = {k})")]
    InvalidPowering { ell: usize, n: usize, k: usize },
    #[error("Power syndromes decoding requires nonzero evaluation points, but alpha at position {0} is 0")]
    ZeroEvaluationPoint(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("key equation basis is degenerate: {0}")]
    Degenerate(#[from] PolyMatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// The minimal solution does not have the shape of a locator and powers
    /// of a message polynomial (or the message cannot be recovered from it).
    StructureCheckFailed,
    /// The candidate locator does not match the number of disagreements.
    WeightMismatch,
    /// Several solutions share the minimal locator degree.
    AmbiguousMinimum,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::StructureCheckFailed => "structure-check-failed",
            FailureReason::WeightMismatch => "weight-mismatch",
            FailureReason::AmbiguousMinimum => "ambiguous-minimum",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    /// Message polynomial, degree < k.
    pub message: Poly,
    /// Monic error locator candidate.
    pub locator: Poly,
}

impl Decoded {
    pub fn error_count(&self) -> usize {
        self.locator.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Success(Decoded),
    Failure(FailureReason),
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success(_))
    }

    pub fn decoded(&self) -> Option<&Decoded> {
        match self {
            DecodeOutcome::Success(d) => Some(d),
            DecodeOutcome::Failure(_) => None,
        }
    }

    pub fn message(&self) -> Option<&Poly> {
        self.decoded().map(|d| &d.message)
    }

    pub fn failure_reason(&self) -> Option<FailureReason> {
        match self {
            DecodeOutcome::Success(_) => None,
            DecodeOutcome::Failure(r) => Some(*r),
        }
    }
}

/// Checks `ell >= 1` and `ell * (k - 1) < n`.
pub fn check_powering(code: &GrsCode, ell: usize) -> Result<(), DecodeError> {
    let (n, k) = (code.n(), code.k());
    if ell == 0 || ell * (k - 1) >= n {
        return Err(DecodeError::InvalidPowering { ell, n, k });
    }
    Ok(())
}

/// Shifts `(l(k-1)+1, (l-1)(k-1), .., k-1, 0)` on columns `(lambda, psi<1>, .., psi<l>)`.
/// A row has its pivot in column 0 exactly when it satisfies every degree
/// constraint of a solution.
pub fn gao_shifts(k: usize, ell: usize) -> ShiftVector {
    let step = k - 1;
    let mut shifts = Vec::with_capacity(ell + 1);
    shifts.push(ell * step + 1);
    shifts.extend((1..=ell).map(|t| (ell - t) * step));
    ShiftVector::new(shifts)
}

#[derive(Clone, Debug)]
pub struct GaoInstance<'a> {
    code: &'a GrsCode,
    ell: usize,
    received: Vec<Elem>,
    lagrangians: Vec<Poly>,
    basis: PolyMatrix,
    shifts: ShiftVector,
}

/// Sets up the key-equation module for a normalised received vector.
pub fn build_gao_module<'a>(
    code: &'a GrsCode,
    normalized: &[Elem],
    ell: usize,
) -> Result<GaoInstance<'a>, DecodeError> {
    check_powering(code, ell)?;
    if normalized.len() != code.n() {
        return Err(CodeError::LengthMismatch { expected: code.n(), found: normalized.len() }.into());
    }
    let field = code.field();
    let lagrangians = code.power_lagrangians(normalized, ell);

    let mut rows = Vec::with_capacity(ell + 1);
    let mut first = vec![Poly::one(field)];
    first.extend(lagrangians.iter().cloned());
    rows.push(first);
    for t in 1..=ell {
        let row = (0..=ell)
            .map(|j| if j == t { code.g().clone() } else { Poly::zero(field) })
            .collect();
        rows.push(row);
    }
    let basis = PolyMatrix::from_rows(field, rows)?;
    Ok(GaoInstance {
        code,
        ell,
        received: normalized.to_vec(),
        lagrangians,
        basis,
        shifts: gao_shifts(code.k(), ell),
    })
}

impl GaoInstance<'_> {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn lagrangians(&self) -> &[Poly] {
        &self.lagrangians
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn shifts(&self) -> &ShiftVector {
        &self.shifts
    }

    /// The minimal solution `(lambda, psi<1>, .., psi<l>)`, scaled so that
    /// `lambda` is monic.
    pub fn minimal_solution(&self) -> Result<Vec<Poly>, DecodeError> {
        Ok(self.reduce()?.0)
    }

    /// The minimal solution and whether its locator is the only one of
    /// that degree.
    fn reduce(&self) -> Result<(Vec<Poly>, bool), DecodeError> {
        let reduced = weak_popov(&self.basis, &self.shifts)?;
        let row = minimal_row(&reduced, &self.shifts, 0)?;
        let scale = self.code.field().inv(row[0].lc()).expect("pivot entry is nonzero");
        let unique = pivot_row_is_unique(&reduced, &self.shifts, 0)?;
        Ok((row.iter().map(|p| p.scale(scale)).collect(), unique))
    }

    pub fn decode(&self) -> Result<DecodeOutcome, DecodeError> {
        let (solution, unique) = self.reduce()?;
        if !unique {
            return Ok(DecodeOutcome::Failure(FailureReason::AmbiguousMinimum));
        }
        let Some(message) = structure_check(&solution, self.code.k(), self.code.g()) else {
            return Ok(DecodeOutcome::Failure(FailureReason::StructureCheckFailed));
        };
        let locator = solution.into_iter().next().unwrap();
        let evals: Vec<Elem> = self.code.alphas().iter().map(|&a| message.eval(a)).collect();
        if Some(hamming_distance(&evals, &self.received)) != locator.degree() {
            return Ok(DecodeOutcome::Failure(FailureReason::WeightMismatch));
        }
        Ok(DecodeOutcome::Success(Decoded { message, locator }))
    }
}

/// Returns `f` when the row is `(lambda, lambda f, lambda f^2, ..)` modulo
/// `modulus`, with `deg f < k`. `lambda` must be nonzero.
///
/// Components are compared after reduction modulo `modulus`: once
/// `deg lambda + t(k-1) >= n` the degree bound no longer pins `psi<t>` down
/// beyond its residue, so a correct locator may come with `lambda f^t + c G`.
pub fn structure_check(row: &[Poly], k: usize, modulus: &Poly) -> Option<Poly> {
    let (lambda, psis) = row.split_first()?;
    if lambda.is_zero() {
        return None;
    }
    let first = psis.first()?.rem(modulus).ok()?;
    let f = first.exact_div(lambda).ok()??;
    if f.degree().is_some_and(|d| d >= k) {
        return None;
    }
    let mut expected = first;
    for psi in &psis[1..] {
        expected = (&expected * &f).rem(modulus).ok()?;
        if psi.rem(modulus).ok()? != expected {
            return None;
        }
    }
    Some(f)
}

/// Power Gao decoding of a received word (as transmitted, β-scaled).
pub fn power_gao_decode(code: &GrsCode, received: &Word, ell: usize) -> Result<DecodeOutcome, DecodeError> {
    check_powering(code, ell)?;
    let normalized = code.normalize_received(received)?;
    build_gao_module(code, &normalized, ell)?.decode()
}
