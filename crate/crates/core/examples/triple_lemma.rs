//! Exhaustive counts of triples with f1 f3 = f2^2 mod U against the closed-form bound.

use powerdec::bounds::lemma_triple_bound;
use powerdec::ff::Field;
use powerdec::oracle::count_triples_bruteforce;
use powerdec::poly::Poly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gf2 = Field::prime(2)?;
    let gf3 = Field::prime(3)?;
    let cases = [
        (&gf2, vec![1, 1, 1], vec![1, 1, 1], (1, 2, 3)),
        (&gf2, vec![1, 0, 1], vec![1, 1, 0, 1], (0, 2, 4)),
        (&gf3, vec![1, 0, 1], vec![2, 1, 0, 1], (1, 2, 4)),
        (&gf3, vec![0, 1], vec![1, 2, 0, 0, 1], (2, 3, 4)),
    ];
    for (field, a, b, (k1, k2, k3)) in cases {
        let u = &Poly::from_ints(field, &a)? * &Poly::from_ints(field, &b)?;
        let n = u.degree().unwrap();
        let count = count_triples_bruteforce(field, &u, k1, k2, k3)?;
        let bound = lemma_triple_bound(field.order() as u64, n, k1, k2, k3)?;
        println!("{field}, U = {u}, K = ({k1},{k2},{k3}): {count} triples, bound {bound}");
        assert!(count as f64 <= bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
