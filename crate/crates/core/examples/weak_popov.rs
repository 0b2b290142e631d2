//! Row reduction of a polynomial matrix to shifted weak Popov form.

use powerdec::ff::Field;
use powerdec::poly::Poly;
use powerdec::polymat::{minimal_row, weak_popov_observed, PolyMatrix, ShiftVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::prime(7)?;
    let p = |c: &[u64]| Poly::from_ints(&f, c);
    let m = PolyMatrix::from_rows(
        &f,
        vec![
            vec![p(&[1])?, p(&[3, 0, 2, 1])?, p(&[5, 1, 0, 4])?],
            vec![p(&[])?, p(&[0, 0, 0, 0, 1])?, p(&[])?],
            vec![p(&[])?, p(&[])?, p(&[0, 0, 0, 0, 1])?],
        ],
    )?;
    let shifts = ShiftVector::new(vec![3, 1, 0]);
    let mut steps = 0;
    let reduced = weak_popov_observed(&m, &shifts, |step| {
        steps += 1;
        println!(
            "row {} -= {} x^{} row {} (degree sum {} -> {})",
            step.target, step.coeff, step.shift, step.reducer, step.degree_sum_before, step.degree_sum_after
        );
    })?;
    assert!(reduced.is_weak_popov(&shifts));
    for (row, stats) in reduced.rows().iter().zip(reduced.row_stats(&shifts)?) {
        println!("{row:?}  shifted degree {} pivot {}", stats.degree, stats.pivot);
    }
    println!("{steps} steps; det before {} after {}", m.determinant(), reduced.determinant());
    println!("pivot-0 row: {:?}", minimal_row(&reduced, &shifts, 0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
