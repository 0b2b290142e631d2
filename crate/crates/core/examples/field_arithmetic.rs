//! Arithmetic in GF(2^8) and GF(17), and the text form of fields.

use powerdec::config::parse_field;
use powerdec::ff::Field;
use powerdec::poly::Poly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gf256 = parse_field("2^8/x8+x4+x3+x2+1")?;
    let a = gf256.element(0x57)?;
    let b = gf256.element(0x83)?;
    let product = gf256.mul(a, b);
    println!("{} with modulus {:?}", gf256, gf256.modulus().unwrap());
    println!("0x57 * 0x83 = {:#04x}", product.value());
    assert_eq!(gf256.div(product, b)?, a);

    // without an explicit modulus the first irreducible one is chosen
    let default = Field::new(2, 8, None)?;
    println!("default modulus for GF(2^8): {:?}", default.modulus().unwrap());

    let gf17 = Field::prime(17)?;
    let x = gf17.element(3)?;
    println!("3^16 = {} and 3^-1 = {} in {}", gf17.pow(x, 16), gf17.inv(x)?, gf17);

    // 1 + 4x + x^3, evaluated and divided by x - 2
    let p = Poly::from_ints(&gf17, &[1, 4, 0, 1])?;
    let (q, r) = p.divmod(&Poly::from_ints(&gf17, &[15, 1])?)?;
    println!("p = {p}, p(2) = {}, p div (x-2) = {q} rem {r}", p.eval(gf17.element(2)?));
    assert_eq!(r.coeff(0), p.eval(gf17.element(2)?));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
