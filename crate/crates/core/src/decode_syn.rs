//! Power syndromes decoding.
//!
//! The t-th powered word is treated as a received word of the virtual GRS
//! code of dimension `t(k-1)+1`. Its syndrome
//!
//! ```text
//! S<t> = sum_i r_i^t zeta_i / (1 - x alpha_i)   mod x^{m_t},   m_t = n - t(k-1) - 1
//! ```
//!
//! satisfies `rev(Lambda) S<t> = Omega<t> mod x^{m_t}` with `deg Omega<t> < deg Lambda`.
//! Here "degree" means the length `D = deg Lambda`, not `deg rev(Lambda)`;
//! substituting `x -> 1/x` turns the congruence into
//!
//! ```text
//! Lambda * rev_{m_t - 1}(S<t>) = psi<t>  mod x^{m_t},      deg psi<t> < deg Lambda
//! ```
//!
//! so the locator is read directly off the pivot-0 row of the reduced basis
//! `(1, rev S<1>, .., rev S<l>)`, `x^{m_t} e_t` under zero shifts (ties go to
//! the rightmost column, so pivot 0 means `deg psi<t> < deg lambda`). The
//! message is then recovered by interpolating the error-free positions.

use crate::decode_gao::{check_powering, DecodeError, DecodeOutcome, Decoded, FailureReason};
use crate::ff::Elem;
use crate::grs::{hamming_distance, CodeError, GrsCode, Word};
use crate::poly::Poly;
use crate::polymat::{minimal_row, pivot_row_is_unique, weak_popov, PolyMatrix, ShiftVector};

/// Tuning knobs for experiments. The default is the decoder proper.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SyndromeParams {
    /// Added to every syndrome modulus degree `m_t`. Nonzero values only
    /// exist to probe the sensitivity of the decoder to `m_t`.
    pub modulus_offset: isize,
}

/// `m_t = n - t(k-1) - 1`.
pub fn syndrome_modulus_degree(n: usize, k: usize, t: usize) -> usize {
    n - t * (k - 1) - 1
}

fn modulus_degrees(code: &GrsCode, ell: usize, params: SyndromeParams) -> Vec<usize> {
    (1..=ell)
        .map(|t| {
            let m = syndrome_modulus_degree(code.n(), code.k(), t) as isize + params.modulus_offset;
            m.max(0) as usize
        })
        .collect()
}

fn check_nonzero_points(code: &GrsCode) -> Result<(), DecodeError> {
    match code.alphas().iter().position(|a| a.is_zero()) {
        Some(i) => Err(DecodeError::ZeroEvaluationPoint(i)),
        None => Ok(()),
    }
}

/// Power-sum syndromes `S<1>, .., S<l>` of a normalised received vector.
/// Coefficient `j` of `S<t>` is `sum_i r_i^t zeta_i alpha_i^j`, for `j < m_t`.
pub fn compute_syndromes(code: &GrsCode, normalized: &[Elem], ell: usize) -> Result<Vec<Poly>, DecodeError> {
    check_nonzero_points(code)?;
    check_powering(code, ell)?;
    let degrees = modulus_degrees(code, ell, SyndromeParams::default());
    power_sums(code, normalized, &degrees)
}

fn power_sums(code: &GrsCode, normalized: &[Elem], degrees: &[usize]) -> Result<Vec<Poly>, DecodeError> {
    if normalized.len() != code.n() {
        return Err(CodeError::LengthMismatch { expected: code.n(), found: normalized.len() }.into());
    }
    let f = code.field();
    let mut out = Vec::with_capacity(degrees.len());
    let mut powers: Vec<Elem> = vec![Elem::ONE; code.n()];
    for &m in degrees {
        let mut coeffs = vec![Elem::ZERO; m];
        for (i, ((&r, &z), &a)) in normalized.iter().zip(code.zetas()).zip(code.alphas()).enumerate() {
            powers[i] = f.mul(powers[i], r);
            let mut term = f.mul(powers[i], z);
            if term.is_zero() {
                continue;
            }
            for c in coeffs.iter_mut() {
                *c = f.add(*c, term);
                term = f.mul(term, a);
            }
        }
        out.push(Poly::from_coeffs(f, coeffs));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SyndromeInstance<'a> {
    code: &'a GrsCode,
    ell: usize,
    received: Vec<Elem>,
    syndromes: Vec<Poly>,
    modulus_degrees: Vec<usize>,
    basis: PolyMatrix,
    shifts: ShiftVector,
}

pub fn build_syndrome_module<'a>(
    code: &'a GrsCode,
    normalized: &[Elem],
    ell: usize,
    params: SyndromeParams,
) -> Result<SyndromeInstance<'a>, DecodeError> {
    check_nonzero_points(code)?;
    check_powering(code, ell)?;
    let field = code.field();
    let modulus_degrees = modulus_degrees(code, ell, params);
    let syndromes = power_sums(code, normalized, &modulus_degrees)?;

    let mut rows = Vec::with_capacity(ell + 1);
    let mut first = vec![Poly::one(field)];
    first.extend(syndromes.iter().zip(&modulus_degrees).map(|(s, &m)| match m {
        0 => Poly::zero(field),
        m => s.rev_to(m - 1),
    }));
    rows.push(first);
    for (t, &m) in modulus_degrees.iter().enumerate() {
        let row = (0..=ell)
            .map(|j| if j == t + 1 { Poly::monomial(field, Elem::ONE, m) } else { Poly::zero(field) })
            .collect();
        rows.push(row);
    }
    Ok(SyndromeInstance {
        code,
        ell,
        received: normalized.to_vec(),
        syndromes,
        modulus_degrees,
        basis: PolyMatrix::from_rows(field, rows)?,
        shifts: ShiftVector::zeros(ell + 1),
    })
}

impl SyndromeInstance<'_> {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn syndromes(&self) -> &[Poly] {
        &self.syndromes
    }

    pub fn modulus_degrees(&self) -> &[usize] {
        &self.modulus_degrees
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn shifts(&self) -> &ShiftVector {
        &self.shifts
    }

    /// Minimal `(lambda, psi<1>, .., psi<l>)` with `lambda` monic.
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
        let locator = solution.into_iter().next().unwrap();
        let degree = locator.degree().unwrap_or(0);

        let mut error_free = Vec::with_capacity(self.code.n());
        for (&a, &r) in self.code.alphas().iter().zip(&self.received) {
            if !locator.eval(a).is_zero() {
                error_free.push((a, r));
            }
        }
        if self.code.n() - error_free.len() != degree {
            return Ok(DecodeOutcome::Failure(FailureReason::WeightMismatch));
        }
        let Ok(message) = Poly::interpolate(self.code.field(), &error_free) else {
            return Ok(DecodeOutcome::Failure(FailureReason::StructureCheckFailed));
        };
        if message.degree().is_some_and(|d| d >= self.code.k()) {
            return Ok(DecodeOutcome::Failure(FailureReason::StructureCheckFailed));
        }
        let evals: Vec<Elem> = self.code.alphas().iter().map(|&a| message.eval(a)).collect();
        if hamming_distance(&evals, &self.received) != degree {
            return Ok(DecodeOutcome::Failure(FailureReason::WeightMismatch));
        }
        Ok(DecodeOutcome::Success(Decoded { message, locator }))
    }
}

/// Power syndromes decoding of a received word (as transmitted, β-scaled).
pub fn power_syndrome_decode(code: &GrsCode, received: &Word, ell: usize) -> Result<DecodeOutcome, DecodeError> {
    power_syndrome_decode_with(code, received, ell, SyndromeParams::default())
}

pub fn power_syndrome_decode_with(
    code: &GrsCode,
    received: &Word,
    ell: usize,
    params: SyndromeParams,
) -> Result<DecodeOutcome, DecodeError> {
    check_nonzero_points(code)?;
    check_powering(code, ell)?;
    let normalized = code.normalize_received(received)?;
    build_syndrome_module(code, &normalized, ell, params)?.decode()
}
