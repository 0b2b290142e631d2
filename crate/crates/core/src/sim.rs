//! Monte Carlo campaigns: failure rates, decoder agreement and offset invariance.
//!
//! Trial `i` at error weight `eps` draws everything from a ChaCha stream
//! keyed by `(seed, eps, i)`, so results do not depend on how trials are
//! scheduled across threads. Rows are aggregated in trial order.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{pf_bound_l2, pf_bound_l3, ratio_to_f64, tau};
use crate::config::{CodeSpec, ConfigError};
use crate::decode_gao::{check_powering, power_gao_decode, DecodeError, DecodeOutcome, FailureReason};
use crate::decode_syn::{power_syndrome_decode_with, SyndromeParams};
use crate::grs::{GrsCode, Word};
use crate::poly::Poly;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid experiment config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error("cannot build thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gao,
    Syndrome,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Gao => "gao",
            Variant::Syndrome => "syndrome",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantSelection {
    #[default]
    Gao,
    Syndrome,
    Both,
}

impl VariantSelection {
    pub fn variants(self) -> &'static [Variant] {
        match self {
            VariantSelection::Gao => &[Variant::Gao],
            VariantSelection::Syndrome => &[Variant::Syndrome],
            VariantSelection::Both => &[Variant::Gao, Variant::Syndrome],
        }
    }
}

fn default_step() -> usize {
    1
}

/// One campaign. In TOML the code spec is the `[code]` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub code: CodeSpec,
    pub ell: usize,
    pub eps_min: usize,
    pub eps_max: usize,
    #[serde(default = "default_step")]
    pub eps_step: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub variant: VariantSelection,
    /// Worker threads; 0 lets rayon decide.
    #[serde(default)]
    pub threads: usize,
    /// Send the zero codeword instead of a random one.
    #[serde(default)]
    pub fix_zero_codeword: bool,
    /// Split failures by cause in the CSV.
    #[serde(default)]
    pub detail: bool,
    /// Added to every syndrome modulus degree; nonzero only for experiments.
    #[serde(default)]
    pub modulus_offset: isize,
}

impl ExperimentConfig {
    pub fn new(code: CodeSpec, ell: usize, epsilons: std::ops::RangeInclusive<usize>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            code,
            ell,
            eps_min: *epsilons.start(),
            eps_max: *epsilons.end(),
            eps_step: 1,
            trials,
            seed,
            variant: VariantSelection::Gao,
            threads: 0,
            fix_zero_codeword: false,
            detail: false,
            modulus_offset: 0,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, SimError> {
        Ok(toml::from_str(text)?)
    }

    pub fn epsilons(&self) -> impl Iterator<Item = usize> {
        (self.eps_min..=self.eps_max).step_by(self.eps_step.max(1))
    }

    /// Checks the config and builds the code.
    pub fn validate(&self) -> Result<GrsCode, SimError> {
        let code = self.code.build()?;
        if self.trials == 0 {
            return Err(SimError::Invalid("trials must be at least 1".into()));
        }
        if self.eps_step == 0 {
            return Err(SimError::Invalid("eps_step must be at least 1".into()));
        }
        if self.eps_min > self.eps_max || self.eps_max > code.n() {
            return Err(SimError::Invalid(format!(
                "error weights {}..={} must satisfy eps_min <= eps_max <= n = {}",
                self.eps_min,
                self.eps_max,
                code.n()
            )));
        }
        check_powering(&code, self.ell)?;
        Ok(code)
    }

    fn syndrome_params(&self) -> SyndromeParams {
        SyndromeParams { modulus_offset: self.modulus_offset }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, SimError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| SimError::Pool(e.to_string()))
    }
}

/// Generator for trial `index` at weight `eps`.
pub fn trial_rng(seed: u64, eps: usize, index: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(eps as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Success,
    Failure(FailureReason),
}

impl Status {
    pub fn of(outcome: &DecodeOutcome) -> Status {
        match outcome.failure_reason() {
            None => Status::Success,
            Some(r) => Status::Failure(r),
        }
    }

    pub fn is_success(self) -> bool {
        self == Status::Success
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantResult {
    pub variant: Variant,
    pub status: Status,
    pub message: Option<Poly>,
    /// Success with the message that was sent.
    pub recovered: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub epsilon: usize,
    pub index: usize,
    pub results: Vec<VariantResult>,
    /// Whether the two variants agree on status and message; `None` unless both ran.
    pub agreement: Option<bool>,
    pub elapsed: Duration,
}

impl TrialRecord {
    pub fn result(&self, variant: Variant) -> Option<&VariantResult> {
        self.results.iter().find(|r| r.variant == variant)
    }
}

fn decode_with(
    code: &GrsCode,
    received: &Word,
    ell: usize,
    variant: Variant,
    params: SyndromeParams,
) -> Result<DecodeOutcome, DecodeError> {
    match variant {
        Variant::Gao => power_gao_decode(code, received, ell),
        Variant::Syndrome => power_syndrome_decode_with(code, received, ell, params),
    }
}

fn run_trial(
    cfg: &ExperimentConfig,
    code: &GrsCode,
    variants: &[Variant],
    eps: usize,
    index: usize,
) -> Result<TrialRecord, SimError> {
    let start = Instant::now();
    let mut rng = trial_rng(cfg.seed, eps, index);
    let sent = if cfg.fix_zero_codeword { Poly::zero(code.field()) } else { code.random_message(&mut rng) };
    let error = code.sample_error(eps, &mut rng).map_err(ConfigError::from)?;
    let codeword = code.encode(&sent).map_err(ConfigError::from)?;
    let received = code.apply_error(&codeword, &error).map_err(ConfigError::from)?;
    let mut results = Vec::with_capacity(variants.len());
    for &variant in variants {
        let outcome = decode_with(code, &received, cfg.ell, variant, cfg.syndrome_params())?;
        results.push(VariantResult {
            variant,
            status: Status::of(&outcome),
            recovered: outcome.message() == Some(&sent),
            message: outcome.message().cloned(),
        });
    }
    let agreement = match results.as_slice() {
        [a, b] => Some(a.status.is_success() == b.status.is_success() && a.message == b.message),
        _ => None,
    };
    Ok(TrialRecord { epsilon: eps, index, results, agreement, elapsed: start.elapsed() })
}

/// All trials of a campaign, ordered by `(eps, index)`.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>, SimError> {
    let code = cfg.validate()?;
    let variants = cfg.variant.variants();
    let pool = cfg.pool()?;
    let mut records = Vec::new();
    for eps in cfg.epsilons() {
        let batch: Result<Vec<_>, _> = pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|i| run_trial(cfg, &code, variants, eps, i))
                .collect()
        });
        records.extend(batch?);
    }
    Ok(records)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailureRow {
    pub epsilon: usize,
    pub trials: usize,
    pub failures: usize,
    pub rate: f64,
    pub tau2: Option<f64>,
    pub tau3: Option<f64>,
    pub pf_l2: Option<f64>,
    pub pf_l3: Option<f64>,
    pub variant: Variant,
    pub seed: u64,
    pub structure_failures: usize,
    pub weight_failures: usize,
    /// Successes that returned a message other than the one sent.
    pub miscorrections: usize,
}

pub fn run_failure_experiment(cfg: &ExperimentConfig) -> Result<Vec<FailureRow>, SimError> {
    let code = cfg.validate()?;
    let records = run_trials(cfg)?;
    let (n, k, q) = (code.n(), code.k(), code.field().order() as u64);
    let tau_of = |l| tau(n, k, l).ok().map(ratio_to_f64);
    let mut rows = Vec::new();
    for eps in cfg.epsilons() {
        for &variant in cfg.variant.variants() {
            let results: Vec<&VariantResult> = records
                .iter()
                .filter(|r| r.epsilon == eps)
                .filter_map(|r| r.result(variant))
                .collect();
            let count = |pred: &dyn Fn(&VariantResult) -> bool| results.iter().filter(|r| pred(r)).count();
            let failures = count(&|r| !r.status.is_success());
            rows.push(FailureRow {
                epsilon: eps,
                trials: results.len(),
                failures,
                rate: failures as f64 / results.len() as f64,
                tau2: tau_of(2),
                tau3: tau_of(3),
                pf_l2: pf_bound_l2(q, n, k, eps).ok(),
                pf_l3: pf_bound_l3(q, n, k, eps).ok().and_then(|b| b.value()),
                variant,
                seed: cfg.seed,
                structure_failures: count(&|r| {
                    matches!(
                        r.status,
                        Status::Failure(FailureReason::StructureCheckFailed | FailureReason::AmbiguousMinimum)
                    )
                }),
                weight_failures: count(&|r| r.status == Status::Failure(FailureReason::WeightMismatch)),
                miscorrections: count(&|r| r.status.is_success() && !r.recovered),
            });
        }
    }
    Ok(rows)
}

fn opt_cell(v: Option<f64>, sci: bool) -> String {
    match v {
        None => String::new(),
        Some(x) if sci => format!("{x:e}"),
        Some(x) => x.to_string(),
    }
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV is UTF-8")
}

pub const FAILURE_COLUMNS: [&str; 10] =
    ["epsilon", "trials", "failures", "rate", "tau2", "tau3", "pf_l2", "pf_l3", "variant", "seed"];
pub const DETAIL_COLUMNS: [&str; 3] = ["structure_failures", "weight_failures", "miscorrections"];

/// CSV with [`FAILURE_COLUMNS`], followed by [`DETAIL_COLUMNS`] when `detail` is set.
pub fn failure_csv(rows: &[FailureRow], detail: bool) -> String {
    let mut header: Vec<&str> = FAILURE_COLUMNS.to_vec();
    if detail {
        header.extend(DETAIL_COLUMNS);
    }
    write_csv(
        &header,
        rows.iter().map(|r| {
            let mut cells = vec![
                r.epsilon.to_string(),
                r.trials.to_string(),
                r.failures.to_string(),
                r.rate.to_string(),
                opt_cell(r.tau2, false),
                opt_cell(r.tau3, false),
                opt_cell(r.pf_l2, true),
                opt_cell(r.pf_l3, true),
                r.variant.as_str().to_string(),
                r.seed.to_string(),
            ];
            if detail {
                cells.extend([r.structure_failures, r.weight_failures, r.miscorrections].map(|c| c.to_string()));
            }
            cells
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub epsilon: usize,
    pub trials: usize,
    pub gao_failures: usize,
    pub syndrome_failures: usize,
    /// Trials where exactly one variant succeeded.
    pub status_disagreements: usize,
    /// Trials where both succeeded with different messages.
    pub message_mismatches: usize,
    pub seed: u64,
}

/// Runs both decoders on every trial. The variant selection in `cfg` is ignored.
pub fn run_equivalence_experiment(cfg: &ExperimentConfig) -> Result<Vec<EquivalenceRow>, SimError> {
    let code = cfg.validate()?;
    if let Some(i) = code.alphas().iter().position(|a| a.is_zero()) {
        return Err(DecodeError::ZeroEvaluationPoint(i).into());
    }
    let both = ExperimentConfig { variant: VariantSelection::Both, ..cfg.clone() };
    let records = run_trials(&both)?;
    Ok(both
        .epsilons()
        .map(|eps| {
            let at: Vec<(&VariantResult, &VariantResult)> = records
                .iter()
                .filter(|r| r.epsilon == eps)
                .map(|r| (r.result(Variant::Gao).unwrap(), r.result(Variant::Syndrome).unwrap()))
                .collect();
            let count = |pred: &dyn Fn(&VariantResult, &VariantResult) -> bool| {
                at.iter().filter(|(g, s)| pred(g, s)).count()
            };
            EquivalenceRow {
                epsilon: eps,
                trials: at.len(),
                gao_failures: count(&|g, _| !g.status.is_success()),
                syndrome_failures: count(&|_, s| !s.status.is_success()),
                status_disagreements: count(&|g, s| g.status.is_success() != s.status.is_success()),
                message_mismatches: count(&|g, s| {
                    g.status.is_success() && s.status.is_success() && g.message != s.message
                }),
                seed: cfg.seed,
            }
        })
        .collect())
}

pub fn equivalence_csv(rows: &[EquivalenceRow]) -> String {
    write_csv(
        &["epsilon", "trials", "gao_failures", "syndrome_failures", "status_disagreements", "message_mismatches", "seed"],
        rows.iter().map(|r| {
            [r.epsilon, r.trials, r.gao_failures, r.syndrome_failures, r.status_disagreements, r.message_mismatches]
                .iter()
                .map(|v| v.to_string())
                .chain([r.seed.to_string()])
                .collect()
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetRow {
    pub epsilon: usize,
    pub trials: usize,
    /// Failures on the bare error word.
    pub failures: usize,
    pub violations: usize,
    pub variant: Variant,
    pub seed: u64,
}

/// Returns `(violated, failed on the bare error word)`.
fn offset_trial(
    cfg: &ExperimentConfig,
    code: &GrsCode,
    variant: Variant,
    eps: usize,
    index: usize,
) -> Result<(bool, bool), SimError> {
    let mut rng = trial_rng(cfg.seed, eps, index);
    let error = code.sample_error(eps, &mut rng).map_err(ConfigError::from)?;
    let zero = Poly::zero(code.field());
    let (m1, m2) = if cfg.fix_zero_codeword {
        (zero.clone(), zero.clone())
    } else {
        (code.random_message(&mut rng), code.random_message(&mut rng))
    };
    let decode = |m: &Poly| -> Result<DecodeOutcome, SimError> {
        let word = code.apply_error(&code.encode(m).map_err(ConfigError::from)?, &error).map_err(ConfigError::from)?;
        Ok(decode_with(code, &word, cfg.ell, variant, cfg.syndrome_params())?)
    };
    let base = decode(&zero)?;
    let mut violated = false;
    for m in [&m1, &m2] {
        let shifted = decode(m)?;
        violated |= base.is_success() != shifted.is_success();
        if let (Some(f0), Some(f)) = (base.message(), shifted.message()) {
            violated |= &(f0 + m) != f;
        }
    }
    Ok((violated, !base.is_success()))
}

/// For each trial draws an error `e` and codewords `c, c'`, and checks that
/// `e`, `e + c` and `e + c'` decode with the same status and with messages
/// differing by exactly the added message.
pub fn run_offset_invariance_experiment(cfg: &ExperimentConfig) -> Result<Vec<OffsetRow>, SimError> {
    let code = cfg.validate()?;
    let pool = cfg.pool()?;
    let mut rows = Vec::new();
    for eps in cfg.epsilons() {
        for &variant in cfg.variant.variants() {
            let outcomes: Vec<(bool, bool)> = pool.install(|| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|i| offset_trial(cfg, &code, variant, eps, i))
                    .collect::<Result<_, _>>()
            })?;
            rows.push(OffsetRow {
                epsilon: eps,
                trials: outcomes.len(),
                failures: outcomes.iter().filter(|o| o.1).count(),
                violations: outcomes.iter().filter(|o| o.0).count(),
                variant,
                seed: cfg.seed,
            });
        }
    }
    Ok(rows)
}

pub fn offset_csv(rows: &[OffsetRow]) -> String {
    write_csv(
        &["epsilon", "trials", "failures", "violations", "variant", "seed"],
        rows.iter().map(|r| {
            vec![
                r.epsilon.to_string(),
                r.trials.to_string(),
                r.failures.to_string(),
                r.violations.to_string(),
                r.variant.as_str().to_string(),
                r.seed.to_string(),
            ]
        }),
    )
}
