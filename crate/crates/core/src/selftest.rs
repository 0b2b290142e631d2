//! Oracle-backed consistency checks, runnable at any scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::lemma_triple_bound;
use crate::config::CodeSpec;
use crate::decode_gao::{build_gao_module, power_gao_decode};
use crate::decode_syn::power_syndrome_decode;
use crate::ff::{Elem, Field};
use crate::grs::GrsCode;
use crate::oracle::{count_triples_bruteforce, minimal_solution_bruteforce, nearest_codeword_bruteforce};
use crate::poly::Poly;
use crate::sim::{run_offset_invariance_experiment, ExperimentConfig};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub instances: usize,
    pub violations: usize,
    /// First few offending instances.
    pub examples: Vec<String>,
}

impl CheckResult {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Random words of arbitrary distance from the code: a Gao success must land
/// on a closest codeword, and a unique closest codeword below `d/2` must be
/// found.
pub fn closest_codeword_check(code: &GrsCode, ell: usize, words: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = CheckResult::default();
    for _ in 0..words {
        let sent = code.encode(&code.random_message(&mut rng)).unwrap();
        let weight = rng.gen_range(0..=code.n());
        let e = code.sample_error(weight, &mut rng).unwrap();
        let r = code.apply_error(&sent, &e).unwrap();
        let nearest = nearest_codeword_bruteforce(code, &r).unwrap();
        let outcome = power_gao_decode(code, &r, ell).unwrap();
        let ok = match outcome.decoded() {
            Some(d) => {
                let c = code.encode(&d.message).unwrap();
                crate::grs::hamming_distance(&c.symbols, &r.symbols) == nearest.distance
            }
            None => !(nearest.unique && 2 * nearest.distance < code.d()),
        };
        result.record(ok, || format!("weight {weight}, nearest {nearest:?}, outcome {outcome:?}"));
    }
    result
}

/// Degree of the pivot-0 row's first entry against exhaustive search.
pub fn minimal_solution_check(code: &GrsCode, max_ell: usize, instances: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = CheckResult::default();
    let top = code.max_powering_degree().unwrap_or(max_ell).min(max_ell);
    for _ in 0..instances {
        let ell = rng.gen_range(1..=top);
        let weight = rng.gen_range(0..=code.n() - code.k());
        let sent = code.encode(&code.random_message(&mut rng)).unwrap();
        let e = code.sample_error(weight, &mut rng).unwrap();
        let r = code.apply_error(&sent, &e).unwrap();
        let normalized = code.normalize_received(&r).unwrap();
        let module = build_gao_module(code, &normalized, ell).unwrap();
        let found = module.minimal_solution().unwrap()[0].degree();
        let expected = minimal_solution_bruteforce(code, &r, ell).unwrap();
        result.record(found == expected, || format!("ell {ell}, weight {weight}: module {found:?}, brute force {expected:?}"));
    }
    result
}

/// Every monic `U` of degree `N` over `GF(q)`, lowest coefficient first.
fn monic_polys(field: &Field, degree: usize) -> Vec<Poly> {
    let q = field.order() as u64;
    (0..q.pow(degree as u32))
        .map(|mut code| {
            let mut coeffs: Vec<Elem> = (0..degree)
                .map(|_| {
                    let digit = code % q;
                    code /= q;
                    field.element(digit).unwrap()
                })
                .collect();
            coeffs.push(field.one());
            Poly::from_coeffs(field, coeffs)
        })
        .collect()
}

/// Exhaustive triple counts against the closed-form bound, for all monic `U`
/// of degree `N <= max_n` and all `0 <= K1 < K2 < K3 < N`.
pub fn lemma_check(primes: &[u64], max_n: usize) -> CheckResult {
    let mut result = CheckResult::default();
    for &p in primes {
        let field = Field::prime(p).unwrap();
        for n in 1..=max_n {
            for u in monic_polys(&field, n) {
                for k3 in 0..n {
                    for k2 in 0..k3 {
                        for k1 in 0..k2 {
                            let count = count_triples_bruteforce(&field, &u, k1, k2, k3).unwrap();
                            let bound = lemma_triple_bound(p, n, k1, k2, k3).unwrap();
                            result.record(count as f64 <= bound, || {
                                format!("q {p}, U {u}, K ({k1},{k2},{k3}): count {count} > bound {bound}")
                            });
                        }
                    }
                }
            }
        }
    }
    result
}

/// Status and message agreement between the two decoders.
pub fn equivalence_check(code: &GrsCode, max_ell: usize, trials: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = CheckResult::default();
    let top = code.max_powering_degree().unwrap_or(max_ell).min(max_ell);
    for _ in 0..trials {
        let ell = rng.gen_range(1..=top);
        let weight = rng.gen_range(0..=code.n() - code.k());
        let sent = code.encode(&code.random_message(&mut rng)).unwrap();
        let e = code.sample_error(weight, &mut rng).unwrap();
        let r = code.apply_error(&sent, &e).unwrap();
        let gao = power_gao_decode(code, &r, ell).unwrap();
        let syn = power_syndrome_decode(code, &r, ell).unwrap();
        let ok = gao.is_success() == syn.is_success() && gao.message() == syn.message();
        result.record(ok, || format!("ell {ell}, weight {weight}: {gao:?} vs {syn:?}"));
    }
    result
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn add(&mut self, name: &str, r: CheckResult) {
        let verdict = if r.passed() { "ok" } else { "FAILED" };
        self.lines.push(format!("{name}: {verdict} ({} instances, {} violations)", r.instances, r.violations));
        self.lines.extend(r.examples.iter().map(|e| format!("  {e}")));
        if !r.passed() {
            self.failures += 1;
        }
    }
}

/// Small-scale run of every check.
pub fn run(seed: u64) -> SelftestReport {
    let mut report = SelftestReport::default();
    let gf11 = Field::prime(11).unwrap();
    let tiny = GrsCode::on_nonzero_points(&gf11, 8, 2).unwrap();
    let rs16 = GrsCode::on_nonzero_points(&Field::prime(17).unwrap(), 16, 4).unwrap();
    report.add("closest codeword [8,2] GF(11)", closest_codeword_check(&tiny, 2, 100, seed));
    report.add("minimal solution [8,2] GF(11)", minimal_solution_check(&tiny, 2, 40, seed));
    report.add("triple lemma q=2, N<=4", lemma_check(&[2], 4));
    report.add("gao/syndrome agreement [16,4] GF(17)", equivalence_check(&rs16, 3, 100, seed));
    let mut offsets = CheckResult::default();
    let cfg = ExperimentConfig::new(CodeSpec::new("17^1", 16, 4), 2, 6..=8, 20, seed);
    for row in run_offset_invariance_experiment(&cfg).unwrap() {
        offsets.instances += row.trials;
        offsets.violations += row.violations;
    }
    report.add("offset invariance [16,4] GF(17)", offsets);
    report
}
