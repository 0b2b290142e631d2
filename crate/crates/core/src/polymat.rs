//! Polynomial matrices with column shifts, and Mulders–Storjohann reduction
//! to shifted weak Popov form.
//!
//! The shifted degree of a row `(p_0, .., p_m)` under shifts `s` is
//! `max_j (deg p_j + s_j)` over nonzero entries, and its pivot is the
//! rightmost column attaining that maximum. A matrix is in shifted weak
//! Popov form when the pivots of its rows are pairwise distinct.

use thiserror::Error;

use crate::ff::{Elem, Field};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyMatError {
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("row {row} became zero during reduction; the input is rank deficient")]
    RankDeficient { row: usize },
    #[error("shift vector has length {shifts}, matrix has {cols} columns")]
    ShiftLength { shifts: usize, cols: usize },
    #[error("matrix rows must all have {expected} entries, row {row} has {found}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix entries belong to different fields")]
    MixedFields,
    #[error("no row has its pivot in column {0}")]
    NoPivot(usize),
    #[error("matrix is not in shifted weak Popov form")]
    NotWeakPopov,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector(Vec<usize>);

impl ShiftVector {
    pub fn new(shifts: Vec<usize>) -> Self {
        ShiftVector(shifts)
    }

    pub fn zeros(len: usize) -> Self {
        ShiftVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowStats {
    pub degree: usize,
    pub pivot: usize,
}

/// Shifted degree and (rightmost) pivot of a nonzero row.
pub fn shifted_row_stats(row: &[Poly], shifts: &ShiftVector) -> Result<RowStats, PolyMatError> {
    if row.len() != shifts.len() {
        return Err(PolyMatError::ShiftLength { shifts: shifts.len(), cols: row.len() });
    }
    row_stats(row, shifts).ok_or(PolyMatError::ZeroRow(0))
}

fn row_stats(row: &[Poly], shifts: &ShiftVector) -> Option<RowStats> {
    let mut best: Option<RowStats> = None;
    for (j, (p, &s)) in row.iter().zip(&shifts.0).enumerate() {
        if let Some(d) = p.degree() {
            let sd = d + s;
            if best.is_none_or(|b| sd >= b.degree) {
                best = Some(RowStats { degree: sd, pivot: j });
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn from_rows(field: &Field, rows: Vec<Vec<Poly>>) -> Result<Self, PolyMatError> {
        let cols = rows.first().map_or(0, |r| r.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(PolyMatError::Ragged { row: i, expected: cols, found: row.len() });
            }
            if row.iter().any(|p| p.field() != field) {
                return Err(PolyMatError::MixedFields);
            }
        }
        Ok(PolyMatrix { field: field.clone(), cols, rows })
    }

    pub fn identity(field: &Field, size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { Poly::one(field) } else { Poly::zero(field) })
                    .collect()
            })
            .collect();
        PolyMatrix { field: field.clone(), cols: size, rows }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<Poly>> {
        self.rows
    }

    /// Stats of every row; errors on a zero row.
    pub fn row_stats(&self, shifts: &ShiftVector) -> Result<Vec<RowStats>, PolyMatError> {
        self.check_shifts(shifts)?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| row_stats(r, shifts).ok_or(PolyMatError::ZeroRow(i)))
            .collect()
    }

    pub fn is_weak_popov(&self, shifts: &ShiftVector) -> bool {
        match self.row_stats(shifts) {
            Ok(stats) => {
                let mut seen = vec![false; self.cols];
                stats.iter().all(|s| !std::mem::replace(&mut seen[s.pivot], true))
            }
            Err(_) => false,
        }
    }

    /// Determinant by cofactor expansion; only sensible for small matrices.
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.num_rows(), self.cols, "determinant of a non-square matrix");
        let cols: Vec<usize> = (0..self.cols).collect();
        det_minor(&self.rows, 0, &cols, &self.field)
    }

    fn check_shifts(&self, shifts: &ShiftVector) -> Result<(), PolyMatError> {
        if shifts.len() != self.cols {
            Err(PolyMatError::ShiftLength { shifts: shifts.len(), cols: self.cols })
        } else {
            Ok(())
        }
    }
}

fn det_minor(rows: &[Vec<Poly>], r: usize, cols: &[usize], field: &Field) -> Poly {
    if cols.is_empty() {
        return Poly::one(field);
    }
    let mut acc = Poly::zero(field);
    for (idx, &c) in cols.iter().enumerate() {
        if rows[r][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &rows[r][c] * &det_minor(rows, r + 1, &rest, field);
        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// One simple transformation `rows[target] -= coeff * x^shift * rows[reducer]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub target: usize,
    pub reducer: usize,
    pub coeff: Elem,
    pub shift: usize,
    /// Sum of shifted row degrees before and after the step.
    pub degree_sum_before: usize,
    pub degree_sum_after: usize,
}

/// Reduces `matrix` to shifted weak Popov form.
pub fn weak_popov(matrix: &PolyMatrix, shifts: &ShiftVector) -> Result<PolyMatrix, PolyMatError> {
    weak_popov_observed(matrix, shifts, |_| {})
}

/// As [`weak_popov`], reporting every simple transformation to `observer`.
///
/// While two rows share a pivot, the row of lower shifted degree (lower index
/// on ties) is used to cancel the leading pivot coefficient of the other.
/// Each step lowers the target's shifted degree or moves its pivot left, so
/// the loop terminates.
pub fn weak_popov_observed(
    matrix: &PolyMatrix,
    shifts: &ShiftVector,
    mut observer: impl FnMut(&ReductionStep),
) -> Result<PolyMatrix, PolyMatError> {
    let mut stats = matrix.row_stats(shifts)?;
    let mut work = matrix.clone();
    let field = work.field.clone();
    let mut owner: Vec<Option<usize>> = vec![None; work.cols];
    let mut degree_sum: usize = stats.iter().map(|s| s.degree).sum();

    // Rows waiting to claim their pivot column.
    let mut pending: Vec<usize> = (0..work.rows.len()).rev().collect();
    while let Some(mut row) = pending.pop() {
        loop {
            let pivot = stats[row].pivot;
            let Some(other) = owner[pivot] else {
                owner[pivot] = Some(row);
                break;
            };
            let (reducer, target) = if stats[other].degree < stats[row].degree
                || (stats[other].degree == stats[row].degree && other < row)
            {
                (other, row)
            } else {
                (row, other)
            };
            let shift = stats[target].degree - stats[reducer].degree;
            let coeff = field
                .div(work.rows[target][pivot].lc(), work.rows[reducer][pivot].lc())
                .expect("pivot entries are nonzero");

            let reducer_row = std::mem::take(&mut work.rows[reducer]);
            for (dst, src) in work.rows[target].iter_mut().zip(&reducer_row) {
                dst.sub_scaled_shifted(coeff, shift, src);
            }
            work.rows[reducer] = reducer_row;

            let before = degree_sum;
            let new_stats = row_stats(&work.rows[target], shifts)
                .ok_or(PolyMatError::RankDeficient { row: target })?;
            degree_sum = degree_sum - stats[target].degree + new_stats.degree;
            stats[target] = new_stats;
            observer(&ReductionStep {
                target,
                reducer,
                coeff,
                shift,
                degree_sum_before: before,
                degree_sum_after: degree_sum,
            });

            // The reducer keeps (or takes) the column; the target looks for a new home.
            owner[pivot] = Some(reducer);
            row = target;
        }
    }
    Ok(work)
}

/// The row of a weak Popov form whose pivot lies in `pivot`.
pub fn minimal_row<'a>(
    matrix: &'a PolyMatrix,
    shifts: &ShiftVector,
    pivot: usize,
) -> Result<&'a [Poly], PolyMatError> {
    let stats = matrix.row_stats(shifts)?;
    if !matrix.is_weak_popov(shifts) {
        return Err(PolyMatError::NotWeakPopov);
    }
    stats
        .iter()
        .position(|s| s.pivot == pivot)
        .map(|i| matrix.row(i))
        .ok_or(PolyMatError::NoPivot(pivot))
}

/// Whether the pivot-`pivot` row is the only row of its kind up to scaling
/// in the degree-`pivot` entry, i.e. no module element with the same pivot
/// and shifted degree has a different entry at `pivot`.
///
/// By the predictable-degree property such an element exists iff some other
/// row with a nonzero entry at `pivot` can be added without moving the pivot:
/// a strictly smaller shifted degree, or an equal one with its pivot to the left.
pub fn pivot_row_is_unique(matrix: &PolyMatrix, shifts: &ShiftVector, pivot: usize) -> Result<bool, PolyMatError> {
    let stats = matrix.row_stats(shifts)?;
    if !matrix.is_weak_popov(shifts) {
        return Err(PolyMatError::NotWeakPopov);
    }
    let own = stats.iter().find(|s| s.pivot == pivot).ok_or(PolyMatError::NoPivot(pivot))?.degree;
    Ok(!stats.iter().enumerate().any(|(i, s)| {
        s.pivot != pivot
            && (s.degree < own || (s.degree == own && s.pivot < pivot))
            && !matrix.row(i)[pivot].is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(f: &Field, c: &[u64]) -> Poly {
        Poly::from_ints(f, c).unwrap()
    }

    fn random_poly(f: &Field, rng: &mut impl Rng, max_len: usize) -> Poly {
        let len = rng.gen_range(0..=max_len);
        Poly::from_coeffs(f, (0..len).map(|_| Elem(rng.gen_range(0..f.order()))).collect())
    }

    fn random_matrix(f: &Field, rng: &mut impl Rng, size: usize, max_len: usize) -> PolyMatrix {
        loop {
            let rows = (0..size)
                .map(|_| (0..size).map(|_| random_poly(f, rng, max_len)).collect())
                .collect();
            let m = PolyMatrix::from_rows(f, rows).unwrap();
            if !m.determinant().is_zero() {
                return m;
            }
        }
    }

    fn multiset(stats: &[RowStats]) -> (Vec<usize>, Vec<usize>) {
        let mut pivots: Vec<usize> = stats.iter().map(|s| s.pivot).collect();
        let mut degs: Vec<usize> = stats.iter().map(|s| s.degree).collect();
        pivots.sort();
        degs.sort();
        (pivots, degs)
    }

    #[test]
    fn row_stats_examples() {
        let f = Field::prime(5).unwrap();
        let s = ShiftVector::new(vec![2, 0]);
        let r = shifted_row_stats(&[p(&f, &[1]), p(&f, &[0, 1])], &s).unwrap();
        assert_eq!(r, RowStats { degree: 2, pivot: 0 });
        let r = shifted_row_stats(&[p(&f, &[1]), p(&f, &[0, 0, 1])], &s).unwrap();
        assert_eq!(r, RowStats { degree: 2, pivot: 1 });
        let s3 = ShiftVector::new(vec![4, 1, 9]);
        let r = shifted_row_stats(&[p(&f, &[3]), Poly::zero(&f), Poly::zero(&f)], &s3).unwrap();
        assert_eq!(r, RowStats { degree: 4, pivot: 0 });
        assert_eq!(
            shifted_row_stats(&[Poly::zero(&f), Poly::zero(&f)], &s).unwrap_err(),
            PolyMatError::ZeroRow(0)
        );
    }

    #[test]
    fn identity_is_already_reduced() {
        let f = Field::prime(7).unwrap();
        let id = PolyMatrix::identity(&f, 4);
        let s = ShiftVector::new(vec![3, 0, 5, 1]);
        assert_eq!(weak_popov(&id, &s).unwrap(), id);
        assert_eq!(minimal_row(&id, &ShiftVector::new(vec![1, 0, 0, 0]), 0).unwrap()[0], Poly::one(&f));
    }

    #[test]
    fn pivot_row_uniqueness() {
        let f = Field::prime(5).unwrap();
        let x = Poly::x(&f);
        let x2 = &x * &x;
        let zero = Poly::zero(&f);
        let s = ShiftVector::zeros(2);
        let m = PolyMatrix::from_rows(&f, vec![vec![x2.clone(), zero.clone()], vec![zero.clone(), x.clone()]])
            .unwrap();
        assert!(pivot_row_is_unique(&m, &s, 0).unwrap());
        // adding the second row keeps pivot 0 and changes the low part of entry 0
        let m = PolyMatrix::from_rows(&f, vec![vec![x2, zero], vec![Poly::one(&f), x.clone()]]).unwrap();
        assert!(!pivot_row_is_unique(&m, &s, 0).unwrap());
        assert!(pivot_row_is_unique(&m, &s, 1).unwrap());
    }

    #[test]
    fn two_by_two_examples() {
        let f = Field::prime(5).unwrap();
        let x = Poly::x(&f);
        let zero = Poly::zero(&f);
        let s = ShiftVector::zeros(2);

        // rightmost pivots of [[x, x], [x, 0]] are already 1 and 0
        let m = PolyMatrix::from_rows(&f, vec![vec![x.clone(), x.clone()], vec![x.clone(), zero.clone()]])
            .unwrap();
        let mut steps = 0;
        assert_eq!(weak_popov_observed(&m, &s, |_| steps += 1).unwrap(), m);
        assert_eq!(steps, 0);

        // [[x, x], [0, x]] share pivot 1; one transformation separates them
        let m = PolyMatrix::from_rows(&f, vec![vec![x.clone(), x.clone()], vec![zero.clone(), x.clone()]])
            .unwrap();
        let mut steps = 0;
        let red = weak_popov_observed(&m, &s, |_| steps += 1).unwrap();
        assert_eq!(steps, 1);
        assert!(red.is_weak_popov(&s));
        // equal shifted degrees: the lower row index reduces the other
        assert_eq!(red.row(0), &[x.clone(), x.clone()]);
        assert_eq!(red.row(1), &[-&x, zero]);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let f = Field::prime(5).unwrap();
        let a = p(&f, &[1, 2]);
        let b = p(&f, &[3, 1]);
        let m = PolyMatrix::from_rows(&f, vec![vec![a.clone(), b.clone()], vec![a.scale(Elem(2)), b.scale(Elem(2))]])
            .unwrap();
        assert!(matches!(
            weak_popov(&m, &ShiftVector::zeros(2)),
            Err(PolyMatError::RankDeficient { .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let f = Field::prime(5).unwrap();
        let m = PolyMatrix::identity(&f, 2);
        assert_eq!(
            weak_popov(&m, &ShiftVector::zeros(3)).unwrap_err(),
            PolyMatError::ShiftLength { shifts: 3, cols: 2 }
        );
        assert!(matches!(
            PolyMatrix::from_rows(&f, vec![vec![Poly::one(&f)], vec![]]),
            Err(PolyMatError::Ragged { .. })
        ));
        let g = Field::prime(7).unwrap();
        assert_eq!(
            PolyMatrix::from_rows(&f, vec![vec![Poly::one(&g)]]).unwrap_err(),
            PolyMatError::MixedFields
        );
        let not_reduced =
            PolyMatrix::from_rows(&f, vec![vec![Poly::one(&f), Poly::zero(&f)]; 2]).unwrap();
        assert_eq!(
            minimal_row(&not_reduced, &ShiftVector::zeros(2), 0).unwrap_err(),
            PolyMatError::NotWeakPopov
        );
    }

    #[test]
    fn random_reductions_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = Field::prime(11).unwrap();
        for trial in 0..200 {
            let size = 2 + trial % 3;
            let m = random_matrix(&f, &mut rng, size, 4);
            let s = ShiftVector::new((0..size).map(|_| rng.gen_range(0..5)).collect());
            let det_before = m.determinant();
            let mut last_sum = usize::MAX;
            let red = weak_popov_observed(&m, &s, |step| {
                assert!(step.degree_sum_after <= step.degree_sum_before);
                assert!(step.degree_sum_before <= last_sum);
                last_sum = step.degree_sum_after;
            })
            .unwrap();
            assert!(red.is_weak_popov(&s));

            // determinant changes by a nonzero scalar only
            let det_after = red.determinant();
            assert_eq!(det_after.degree(), det_before.degree());
            assert_eq!(det_after.monic(), det_before.monic());

            // square full rank: pivots form a permutation
            let stats = red.row_stats(&s).unwrap();
            let (pivots, degs) = multiset(&stats);
            assert_eq!(pivots, (0..size).collect::<Vec<_>>());
            for col in 0..size {
                assert!(minimal_row(&red, &s, col).is_ok());
            }

            // idempotence
            let again = weak_popov(&red, &s).unwrap();
            assert_eq!(again, red);
            assert_eq!(multiset(&again.row_stats(&s).unwrap()), (pivots, degs));
        }
    }

    #[test]
    fn reduction_preserves_row_space() {
        // every input row must be a polynomial combination of output rows: check
        // by reducing the stacked matrix [output; input-row] to a zero row
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let f = Field::prime(5).unwrap();
        for _ in 0..50 {
            let m = random_matrix(&f, &mut rng, 3, 3);
            let s = ShiftVector::zeros(3);
            let red = weak_popov(&m, &s).unwrap();
            for input in m.rows() {
                let mut rows = red.rows().to_vec();
                rows.push(input.clone());
                let stacked = PolyMatrix::from_rows(&f, rows).unwrap();
                assert!(matches!(weak_popov(&stacked, &s), Err(PolyMatError::RankDeficient { .. })));
            }
        }
    }
}
