//! Exhaustive reference computations for tiny parameters.
//!
//! Every search has a hard enumeration budget and reports
//! [`OracleError::BudgetExceeded`] instead of truncating.

use std::collections::HashMap;

use thiserror::Error;

use crate::ff::{Elem, Field};
use crate::grs::{hamming_distance, CodeError, GrsCode, Word, WordRole};
use crate::poly::{Poly, PolyError};

pub const NEAREST_CODEWORD_BUDGET: u64 = 1_000_000;
pub const MINIMAL_SOLUTION_BUDGET: u64 = 10_000_000;
pub const TRIPLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial and field differ")]
    MixedFields,
}

fn check_budget(q: u32, exponent: usize, budget: u64) -> Result<u128, OracleError> {
    let needed = (q as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Calls `visit` on every vector in `GF(q)^len`, in lexicographic order of
/// the integer encodings with index 0 varying fastest.
fn for_each_vector(q: u32, len: usize, mut visit: impl FnMut(&[Elem])) {
    let mut v = vec![Elem(0); len];
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            v[i].0 += 1;
            if v[i].0 < q {
                break;
            }
            v[i].0 = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nearest {
    pub message: Poly,
    pub codeword: Word,
    pub distance: usize,
    /// No other codeword lies at the same distance.
    pub unique: bool,
}

/// Closest codeword by enumerating all `q^k` messages.
pub fn nearest_codeword_bruteforce(code: &GrsCode, received: &Word) -> Result<Nearest, OracleError> {
    let field = code.field();
    if received.len() != code.n() {
        return Err(CodeError::LengthMismatch { expected: code.n(), found: received.len() }.into());
    }
    check_budget(field.order(), code.k(), NEAREST_CODEWORD_BUDGET)?;
    let mut best: Option<(Vec<Elem>, Vec<Elem>, usize)> = None;
    let mut ties = 0usize;
    let mut symbols = vec![Elem(0); code.n()];
    for_each_vector(field.order(), code.k(), |coeffs| {
        let f = Poly::from_coeffs(field, coeffs.to_vec());
        for ((s, &a), &b) in symbols.iter_mut().zip(code.alphas()).zip(code.betas()) {
            *s = field.mul(b, f.eval(a));
        }
        let dist = hamming_distance(&symbols, &received.symbols);
        match &best {
            Some((_, _, d)) if dist > *d => {}
            Some((_, _, d)) if dist == *d => ties += 1,
            _ => {
                best = Some((coeffs.to_vec(), symbols.clone(), dist));
                ties = 0;
            }
        }
    });
    let (coeffs, symbols, distance) = best.expect("at least one message");
    Ok(Nearest {
        message: Poly::from_coeffs(field, coeffs),
        codeword: Word::new(WordRole::Codeword, symbols),
        distance,
        unique: ties == 0,
    })
}

/// Smallest `deg lambda` over monic `lambda` with
/// `deg(lambda R<t> mod G) <= deg lambda + t(k-1)` for `t = 1..=ell`.
///
/// The power Lagrangians are interpolated directly from the points rather
/// than through the code's precomputed weights. Degrees are searched up to
/// `n - k`; `None` means no degree in that range works.
pub fn minimal_solution_bruteforce(
    code: &GrsCode,
    received: &Word,
    ell: usize,
) -> Result<Option<usize>, OracleError> {
    let field = code.field();
    let normalized = code.normalize_received(received)?;
    let g = Poly::from_roots(field, code.alphas());
    let lagrangians = (1..=ell)
        .map(|t| {
            let points: Vec<(Elem, Elem)> = code
                .alphas()
                .iter()
                .zip(&normalized)
                .map(|(&a, &r)| (a, field.pow(r, t as u64)))
                .collect();
            Poly::interpolate(field, &points)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cap = code.n() - code.k();
    let mut spent: u128 = 0;
    for degree in 0..=cap {
        spent += check_budget(field.order(), degree, MINIMAL_SOLUTION_BUDGET)?;
        if spent > MINIMAL_SOLUTION_BUDGET as u128 {
            return Err(OracleError::BudgetExceeded { needed: spent, budget: MINIMAL_SOLUTION_BUDGET });
        }
        let mut found = false;
        for_each_vector(field.order(), degree, |low| {
            if found {
                return;
            }
            let mut coeffs = low.to_vec();
            coeffs.push(field.one());
            let lambda = Poly::from_coeffs(field, coeffs);
            found = lagrangians.iter().enumerate().all(|(i, r)| {
                let psi = (&lambda * r).rem(&g).expect("G is nonzero");
                psi.degree().is_none_or(|d| d <= degree + (i + 1) * (code.k() - 1))
            });
        });
        if found {
            return Ok(Some(degree));
        }
    }
    Ok(None)
}

/// `|{(f1, f2, f3) : f1 f3 = f2^2 mod U, f2 monic, deg f_t < K_t}|`.
///
/// `f1` and `f3` range over all polynomials of the stated degree bound,
/// including zero; `f2` over monic ones only, so it is never zero.
pub fn count_triples_bruteforce(
    field: &Field,
    u: &Poly,
    k1: usize,
    k2: usize,
    k3: usize,
) -> Result<u64, OracleError> {
    if u.field() != field {
        return Err(OracleError::MixedFields);
    }
    check_budget(field.order(), k1 + k2 + k3, TRIPLE_BUDGET)?;
    let q = field.order();
    let residue = |p: Poly| -> Vec<Elem> { p.rem(u).expect("U is nonzero").coeffs().to_vec() };
    let mut products: HashMap<Vec<Elem>, u64> = HashMap::new();
    let f3s: Vec<Poly> = {
        let mut all = Vec::new();
        for_each_vector(q, k3, |c| all.push(Poly::from_coeffs(field, c.to_vec())));
        all
    };
    for_each_vector(q, k1, |c1| {
        let f1 = Poly::from_coeffs(field, c1.to_vec());
        for f3 in &f3s {
            *products.entry(residue(&f1 * f3)).or_default() += 1;
        }
    });
    let mut count = 0;
    for degree in 0..k2 {
        for_each_vector(q, degree, |low| {
            let mut coeffs = low.to_vec();
            coeffs.push(field.one());
            let f2 = Poly::from_coeffs(field, coeffs);
            count += products.get(&residue(&f2 * &f2)).copied().unwrap_or(0);
        });
    }
    Ok(count)
}
