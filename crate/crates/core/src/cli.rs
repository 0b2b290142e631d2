//! Command-line front end. Exit codes: 0 ok, 1 decoding failure (or a failed
//! self test), 2 usage or configuration error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::BoundReport;
use crate::config::{format_int_list, parse_elements, parse_int_list, CodeSpec, PointSpec};
use crate::decode_gao::{power_gao_decode, DecodeError, DecodeOutcome};
use crate::decode_syn::power_syndrome_decode;
use crate::grs::{GrsCode, Word};
use crate::poly::Poly;
use crate::sim::{
    equivalence_csv, failure_csv, run_equivalence_experiment, run_failure_experiment, ExperimentConfig,
    VariantSelection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DECODE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "powerdec", version, about = "Power decoding of Generalised Reed-Solomon codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode message coefficients (lowest degree first) into a codeword.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        message: String,
    },
    /// Add a random error of the given weight to a word.
    Corrupt {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        errors: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Decode a received word.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = DecoderChoice::Gao)]
        variant: DecoderChoice,
        #[arg(long, default_value_t = 1)]
        ell: usize,
    },
    /// Failure-rate campaign; writes CSV.
    Simulate(CampaignArgs),
    /// Gao against syndrome decoding on identical trials; writes CSV.
    Equiv {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Added to every syndrome modulus degree (exploratory).
        #[arg(long, allow_hyphen_values = true)]
        modulus_offset: Option<isize>,
    },
    /// Decoding radii and failure-probability bounds as CSV.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        #[arg(long)]
        eps_min: Option<usize>,
        #[arg(long)]
        eps_max: Option<usize>,
    },
    /// Cross-check the decoders against brute force on tiny codes.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DecoderChoice {
    Gao,
    Syndrome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantChoice {
    Gao,
    Syndrome,
    Both,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    /// Code spec file (TOML); the flags below override its fields.
    #[arg(long = "code")]
    spec: Option<PathBuf>,
    /// Field, e.g. `17^1` or `2^8/x8+x4+x3+x2+1`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// `all-nonzero`, `all-elements` or a list such as `[1,2,3]`.
    #[arg(long)]
    alphas: Option<String>,
    /// `ones`, `random` or a list.
    #[arg(long)]
    betas: Option<String>,
    /// Seed for `betas = random`.
    #[arg(long)]
    code_seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
struct CampaignArgs {
    /// Experiment config (TOML) with the code spec as a `[code]` table.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    eps_min: Option<usize>,
    #[arg(long)]
    eps_max: Option<usize>,
    #[arg(long)]
    eps_step: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    variant: Option<VariantChoice>,
    #[arg(long)]
    threads: Option<usize>,
    /// Split failures by cause.
    #[arg(long)]
    detail: bool,
    /// Always send the zero codeword.
    #[arg(long)]
    fix_zero_codeword: bool,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn point_spec(text: &str) -> Result<PointSpec, UsageError> {
    if text.trim_start().starts_with('[') {
        Ok(PointSpec::List(parse_int_list(text)?))
    } else {
        Ok(PointSpec::Named(text.trim().to_string()))
    }
}

impl CodeArgs {
    fn apply(&self, base: Option<CodeSpec>) -> Result<CodeSpec, UsageError> {
        let mut spec = match (&self.spec, base) {
            (Some(path), _) => CodeSpec::from_toml(&read(path)?)?,
            (None, Some(base)) => base,
            (None, None) => {
                let field = self.field.clone().ok_or_else(|| UsageError("missing --field or --code".into()))?;
                let k = self.k.ok_or_else(|| UsageError("missing --k or --code".into()))?;
                CodeSpec { n: None, ..CodeSpec::new(&field, 0, k) }
            }
        };
        if let Some(f) = &self.field {
            spec.field = f.clone();
        }
        if let Some(n) = self.n {
            spec.n = Some(n);
        }
        if let Some(k) = self.k {
            spec.k = k;
        }
        if let Some(a) = &self.alphas {
            spec.alphas = point_spec(a)?;
        }
        if let Some(b) = &self.betas {
            spec.betas = point_spec(b)?;
        }
        if let Some(s) = self.code_seed {
            spec.seed = Some(s);
        }
        Ok(spec)
    }

    fn build(&self) -> Result<GrsCode, UsageError> {
        Ok(self.apply(None)?.build()?)
    }
}

fn read(path: &PathBuf) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn parse_word(code: &GrsCode, text: &str) -> Result<Word, UsageError> {
    let symbols = parse_elements(code.field(), &parse_int_list(text)?)?;
    if symbols.len() != code.n() {
        return Err(UsageError(format!("word has {} symbols, code length is {}", symbols.len(), code.n())));
    }
    Ok(Word::received(symbols))
}

fn word_text(w: &Word) -> String {
    format_int_list(w.symbols.iter().map(|s| s.value()))
}

/// Coefficients of a message, padded with zeros to `k` entries.
fn message_text(p: &Poly, k: usize) -> String {
    format_int_list((0..k.max(p.coeffs().len())).map(|i| p.coeff(i).value()))
}

impl CampaignArgs {
    fn config(&self) -> Result<ExperimentConfig, UsageError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let mut cfg = ExperimentConfig::from_toml(&read(path)?)?;
                cfg.code = self.code.apply(Some(cfg.code))?;
                cfg
            }
            None => {
                let missing = |name: &str| UsageError(format!("missing --{name} (or --config)"));
                let code = self.code.apply(None)?;
                let ell = self.ell.ok_or_else(|| missing("ell"))?;
                let trials = self.trials.ok_or_else(|| missing("trials"))?;
                let seed = self.seed.ok_or_else(|| missing("seed"))?;
                let lo = self.eps_min.ok_or_else(|| missing("eps-min"))?;
                let hi = self.eps_max.unwrap_or(lo);
                ExperimentConfig::new(code, ell, lo..=hi, trials, seed)
            }
        };
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field {
                    cfg.$field = v;
                }
            };
        }
        set!(ell);
        set!(eps_min);
        set!(eps_max);
        set!(eps_step);
        set!(trials);
        set!(seed);
        set!(threads);
        if let Some(v) = self.variant {
            cfg.variant = match v {
                VariantChoice::Gao => VariantSelection::Gao,
                VariantChoice::Syndrome => VariantSelection::Syndrome,
                VariantChoice::Both => VariantSelection::Both,
            };
        }
        cfg.detail |= self.detail;
        cfg.fix_zero_codeword |= self.fix_zero_codeword;
        Ok(cfg)
    }

    fn emit(&self, csv: &str, out: &mut dyn Write) -> Result<(), UsageError> {
        match &self.out {
            Some(path) => fs::write(path, csv).map_err(|e| UsageError(format!("{}: {e}", path.display()))),
            None => Ok(out.write_all(csv.as_bytes())?),
        }
    }
}

fn decode_command(
    code: &GrsCode,
    word: &Word,
    variant: DecoderChoice,
    ell: usize,
    out: &mut dyn Write,
) -> Result<i32, UsageError> {
    let outcome = match variant {
        DecoderChoice::Gao => power_gao_decode(code, word, ell),
        DecoderChoice::Syndrome => power_syndrome_decode(code, word, ell),
    }
    .map_err(|e: DecodeError| UsageError(e.to_string()))?;
    match outcome {
        DecodeOutcome::Success(d) => {
            writeln!(out, "status: success")?;
            writeln!(out, "message: {}", message_text(&d.message, code.k()))?;
            writeln!(out, "locator: {}", d.locator)?;
            writeln!(out, "errors: {}", d.error_count())?;
            Ok(EXIT_OK)
        }
        DecodeOutcome::Failure(reason) => {
            writeln!(out, "status: failure ({})", reason.as_str())?;
            Ok(EXIT_DECODE_FAILURE)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    match cli.command {
        Command::Encode { code, message } => {
            let code = code.build()?;
            let coeffs = parse_elements(code.field(), &parse_int_list(&message)?)?;
            let f = Poly::from_coeffs(code.field(), coeffs);
            writeln!(out, "{}", word_text(&code.encode(&f)?))?;
            Ok(EXIT_OK)
        }
        Command::Corrupt { code, word, errors, seed } => {
            let code = code.build()?;
            let word = parse_word(&code, &word)?;
            let mut rng = crate::sim::trial_rng(seed, errors, 0);
            let e = code.sample_error(errors, &mut rng)?;
            writeln!(out, "{}", word_text(&code.apply_error(&word, &e)?))?;
            Ok(EXIT_OK)
        }
        Command::Decode { code, word, variant, ell } => {
            let code = code.build()?;
            let word = parse_word(&code, &word)?;
            decode_command(&code, &word, variant, ell, out)
        }
        Command::Simulate(args) => {
            let cfg = args.config()?;
            let rows = run_failure_experiment(&cfg)?;
            args.emit(&failure_csv(&rows, cfg.detail), out)?;
            Ok(EXIT_OK)
        }
        Command::Equiv { campaign, modulus_offset } => {
            let mut cfg = campaign.config()?;
            if let Some(off) = modulus_offset {
                cfg.modulus_offset = off;
            }
            let rows = run_equivalence_experiment(&cfg)?;
            campaign.emit(&equivalence_csv(&rows), out)?;
            Ok(EXIT_OK)
        }
        Command::Bounds { n, k, q, ell, eps_min, eps_max } => {
            let lo = eps_min.unwrap_or(0);
            let hi = eps_max.unwrap_or(n.saturating_sub(k));
            let report = BoundReport::new(q, n, k, ell, lo..=hi)?;
            out.write_all(report.to_csv().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Selftest { seed } => {
            let report = crate::selftest::run(seed);
            for line in &report.lines {
                writeln!(out, "{line}")?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_DECODE_FAILURE })
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
