//! Decoding a [16,4,13] Reed-Solomon code over GF(17) beyond half the
//! minimum distance with powering degree 2.

use powerdec::decode_gao::{power_gao_decode, DecodeOutcome};
use powerdec::ff::Field;
use powerdec::grs::GrsCode;
use powerdec::poly::Poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gf17 = Field::prime(17)?;
    let code = GrsCode::on_nonzero_points(&gf17, 16, 4)?;
    let message = Poly::from_ints(&gf17, &[3, 1, 0, 5])?;
    let codeword = code.encode(&message)?;
    println!("[{}, {}, {}] code, codeword {:?}", code.n(), code.k(), code.d(), codeword.symbols);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (weight, ell) in [(6, 1), (7, 1), (7, 2)] {
        let error = code.sample_error(weight, &mut rng)?;
        let received = code.apply_error(&codeword, &error)?;
        match power_gao_decode(&code, &received, ell)? {
            DecodeOutcome::Success(d) => {
                println!("{weight} errors, ell = {ell}: message {} locator {}", d.message, d.locator);
                assert_eq!(d.locator, error.locator(&code));
            }
            DecodeOutcome::Failure(reason) => {
                println!("{weight} errors, ell = {ell}: failure ({})", reason.as_str());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
