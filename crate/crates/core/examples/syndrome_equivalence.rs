//! Power syndromes decoding next to Power Gao decoding on the same words.

use powerdec::config::CodeSpec;
use powerdec::decode_gao::power_gao_decode;
use powerdec::decode_syn::{compute_syndromes, power_syndrome_decode, syndrome_modulus_degree};
use powerdec::sim::{equivalence_csv, run_equivalence_experiment, ExperimentConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CodeSpec::from_toml("field = \"2^5\"\nn = 31\nk = 5\nbetas = \"random\"\nseed = 3\n")?;
    let code = spec.build()?;
    let ell = 3;
    let degrees: Vec<usize> = (1..=ell).map(|t| syndrome_modulus_degree(code.n(), code.k(), t)).collect();
    println!("syndrome lengths for ell = {ell}: {degrees:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sent = code.random_message(&mut rng);
    let error = code.sample_error(15, &mut rng)?;
    let received = code.apply_error(&code.encode(&sent)?, &error)?;
    let syndromes = compute_syndromes(&code, &code.normalize_received(&received)?, ell)?;
    println!("S<1> = {}", syndromes[0]);
    let gao = power_gao_decode(&code, &received, ell)?;
    let syn = power_syndrome_decode(&code, &received, ell)?;
    println!("15 errors: gao {:?}, syndrome {:?}", gao.message(), syn.message());
    assert_eq!(gao, syn);

    let cfg = ExperimentConfig::new(spec, ell, 12..=17, 40, 7);
    print!("{}", equivalence_csv(&run_equivalence_experiment(&cfg)?));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
