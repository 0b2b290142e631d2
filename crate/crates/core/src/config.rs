//! Text formats: fields, coefficient lists and code spec files.
//!
//! A field is written `p^m`, optionally followed by a modulus either as a
//! sum of terms or as a coefficient list, lowest degree first:
//!
//! ```text
//! 251^1
//! 2^8/x8+x4+x3+x2+1
//! 2^8/[1,0,1,1,1,0,0,0,1]
//! ```
//!
//! A code spec is a TOML document:
//!
//! ```toml
//! field = "17^1"
//! n = 16
//! k = 4
//! alphas = "all-nonzero"   # or "all-elements", or a list of integers
//! betas = "ones"           # or "random" (uses `seed`), or a list
//! seed = 1
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{Elem, Field, FieldError};
use crate::grs::{CodeError, GrsCode};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse field {text:?}: {reason}")]
    FieldSyntax { text: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse coefficient list {text:?}: {reason}")]
    ListSyntax { text: String, reason: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("invalid code spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

fn field_syntax(text: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::FieldSyntax { text: text.to_string(), reason: reason.into() }
}

/// Parses `[1,4,0,1]` (brackets optional, whitespace ignored) into integers.
pub fn parse_int_list(text: &str) -> Result<Vec<u64>, ConfigError> {
    let err = |reason: String| ConfigError::ListSyntax { text: text.to_string(), reason };
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
        (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
        (None, None) => trimmed,
        _ => return Err(err("unbalanced brackets".into())),
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| tok.trim().parse::<u64>().map_err(|e| err(format!("{tok:?}: {e}"))))
        .collect()
}

/// Formats integers as `[1,4,0,1]`.
pub fn format_int_list<T: std::fmt::Display>(values: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_term_sum(text: &str, full: &str) -> Result<Vec<u64>, ConfigError> {
    let mut coeffs: Vec<u64> = Vec::new();
    for term in text.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        if term.is_empty() {
            return Err(field_syntax(full, "empty term in modulus"));
        }
        let (coeff, exp) = match term.find('x') {
            None => (term.as_str(), "0"),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let e = term[pos + 1..].trim_start_matches('^');
                (if c.is_empty() { "1" } else { c }, if e.is_empty() { "1" } else { e })
            }
        };
        let c: u64 = coeff.parse().map_err(|_| field_syntax(full, format!("bad coefficient in {term:?}")))?;
        let e: usize = exp.parse().map_err(|_| field_syntax(full, format!("bad exponent in {term:?}")))?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += c;
    }
    Ok(coeffs)
}

/// Parses the textual field description (see the module docs).
pub fn parse_field(text: &str) -> Result<Field, ConfigError> {
    let text = text.trim();
    let (size, modulus) = match text.split_once('/') {
        Some((s, m)) => (s.trim(), Some(m.trim())),
        None => (text, None),
    };
    let (p, m) = match size.split_once('^') {
        Some((p, m)) => (p.trim(), m.trim()),
        None => (size, "1"),
    };
    let p: u64 = p.parse().map_err(|_| field_syntax(text, "characteristic is not an integer"))?;
    let m: u32 = m.parse().map_err(|_| field_syntax(text, "extension degree is not an integer"))?;
    let coeffs = match modulus {
        None => None,
        Some(s) if s.starts_with('[') => Some(parse_int_list(s)?),
        Some(s) => Some(parse_term_sum(s, text)?),
    };
    if let Some(c) = &coeffs {
        if m == 1 && c.len() != 2 {
            return Err(field_syntax(text, "a prime field modulus must have degree 1"));
        }
        let reduced: Vec<u64> = c.iter().map(|v| v % p.max(1)).collect();
        if reduced.as_slice() != c.as_slice() {
            return Err(field_syntax(text, "modulus coefficients must be below the characteristic"));
        }
    }
    Ok(Field::new(p, m, coeffs.as_deref())?)
}

/// Integer-encoded field elements.
pub fn parse_elements(field: &Field, values: &[u64]) -> Result<Vec<Elem>, ConfigError> {
    Ok(values.iter().map(|&v| field.element(v)).collect::<Result<_, _>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Named(String),
    List(Vec<u64>),
}

/// Contents of a code spec file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub field: String,
    /// Defaults to the number of listed or implied evaluation points.
    pub n: Option<usize>,
    pub k: usize,
    #[serde(default = "default_alphas")]
    pub alphas: PointSpec,
    #[serde(default = "default_betas")]
    pub betas: PointSpec,
    pub seed: Option<u64>,
}

fn default_alphas() -> PointSpec {
    PointSpec::Named("all-nonzero".into())
}

fn default_betas() -> PointSpec {
    PointSpec::Named("ones".into())
}

impl CodeSpec {
    pub fn new(field: &str, n: usize, k: usize) -> Self {
        CodeSpec {
            field: field.to_string(),
            n: Some(n),
            k,
            alphas: default_alphas(),
            betas: default_betas(),
            seed: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn build(&self) -> Result<GrsCode, ConfigError> {
        let field = parse_field(&self.field)?;
        let alphas: Vec<Elem> = match &self.alphas {
            PointSpec::List(values) => parse_elements(&field, values)?,
            PointSpec::Named(name) => {
                let skip = match name.as_str() {
                    "all-nonzero" => 1,
                    "all-elements" => 0,
                    other => return Err(ConfigError::Spec(format!("unknown evaluation point set {other:?}"))),
                };
                let available = field.order() as usize - skip;
                let n = self.n.unwrap_or(available);
                if n > available {
                    return Err(ConfigError::Spec(format!(
                        "{name} provides {available} points over {field}, but n = {n}"
                    )));
                }
                field.elements().skip(skip).take(n).collect()
            }
        };
        if let Some(n) = self.n {
            if n != alphas.len() {
                return Err(ConfigError::Spec(format!("n = {n} but {} evaluation points", alphas.len())));
            }
        }
        let n = alphas.len();
        let betas = match &self.betas {
            PointSpec::List(values) => parse_elements(&field, values)?,
            PointSpec::Named(name) if name == "ones" => vec![field.one(); n],
            PointSpec::Named(name) if name == "random" => {
                let seed = self
                    .seed
                    .ok_or_else(|| ConfigError::Spec("betas = \"random\" needs a seed".into()))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n)
                    .map(|_| field.element(rng.gen_range(1..field.order() as u64)))
                    .collect::<Result<_, _>>()?
            }
            PointSpec::Named(other) => {
                return Err(ConfigError::Spec(format!("unknown column multiplier set {other:?}")))
            }
        };
        Ok(GrsCode::new(&field, self.k, alphas, betas)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_text() {
        let f = parse_field("251^1").unwrap();
        assert_eq!((f.characteristic(), f.degree()), (251, 1));
        assert_eq!(parse_field("17").unwrap().order(), 17);
        let a = parse_field("2^8/x8+x4+x3+x2+1").unwrap();
        let b = parse_field("2^8/[1,0,1,1,1,0,0,0,1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus().unwrap(), &[1, 0, 1, 1, 1, 0, 0, 0, 1]);
        assert_eq!(parse_field("2^8").unwrap().modulus().unwrap(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(parse_field("3^2/x^2 + 1").unwrap().order(), 9);
        assert_eq!(parse_field("3^2/2*x+x2+2").unwrap().modulus().unwrap(), &[2, 2, 1]);
        for bad in ["", "x^2", "2^", "4^1", "2^8/x8+1", "2^2/x2+x+", "3^2/[1,0,3]", "2^2/[1,1,1"] {
            assert!(parse_field(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("[1,4,0,1]").unwrap(), vec![1, 4, 0, 1]);
        assert_eq!(parse_int_list(" [ 1, 2 ] ").unwrap(), vec![1, 2]);
        assert_eq!(parse_int_list("3,5").unwrap(), vec![3, 5]);
        assert_eq!(parse_int_list("[]").unwrap(), Vec::<u64>::new());
        assert!(parse_int_list("[1,,2]").is_err());
        assert!(parse_int_list("[1,-2]").is_err());
        assert_eq!(format_int_list([1, 4, 0, 1]), "[1,4,0,1]");
        assert_eq!(format_int_list(Vec::<u32>::new()), "[]");
    }

    #[test]
    fn code_specs() {
        let spec = CodeSpec::from_toml("field = \"17^1\"\nn = 16\nk = 4\n").unwrap();
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k(), code.d()), (16, 4, 13));
        assert!(!code.has_zero_point());

        let all = CodeSpec::from_toml("field = \"11\"\nk = 2\nalphas = \"all-elements\"\n").unwrap();
        let code = all.build().unwrap();
        assert_eq!(code.n(), 11);
        assert!(code.has_zero_point());

        let listed = CodeSpec::from_toml("field = \"7\"\nk = 2\nalphas = [0, 3, 5]\nbetas = [1, 2, 6]\n").unwrap();
        let code = listed.build().unwrap();
        assert_eq!(code.betas()[1].value(), 2);

        let random = CodeSpec::from_toml("field = \"13\"\nn = 12\nk = 3\nbetas = \"random\"\nseed = 5\n").unwrap();
        let a = random.build().unwrap();
        let b = random.build().unwrap();
        assert_eq!(a.betas(), b.betas());
        assert!(a.betas().iter().all(|b| !b.is_zero()));

        for bad in [
            "field = \"17\"\nn = 17\nk = 4\n",
            "field = \"17\"\nn = 3\nk = 4\n",
            "field = \"17\"\nn = 2\nk = 1\nalphas = [1, 1]\n",
            "field = \"13\"\nk = 3\nbetas = \"random\"\n",
            "field = \"13\"\nk = 3\nalphas = \"some\"\n",
            "field = \"13\"\nk = 3\ncolour = 1\n",
            "field = \"7\"\nn = 2\nk = 1\nalphas = [1, 2]\nbetas = [1]\n",
        ] {
            let spec = CodeSpec::from_toml(bad);
            assert!(spec.is_err() || spec.unwrap().build().is_err(), "{bad}");
        }
    }
}
