//! Generalised Reed–Solomon codes: encoding, channel simulation and the
//! power Lagrangians fed to the decoders.

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::ff::{Elem, Field};
use crate::poly::{combine_quotients, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("evaluation point at position {0} repeats an earlier one")]
    DuplicateEvaluationPoint(usize),
    #[error("column multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("need 1 <= k <= n, got n = {n}, k = {k}")]
    InvalidDimension { n: usize, k: usize },
    #[error("{alphas} evaluation points but {betas} column multipliers")]
    MultiplierCount { alphas: usize, betas: usize },
    #[error("code length {n} exceeds the field order {q}")]
    LengthTooLarge { n: usize, q: u32 },
    #[error("word has length {found}, code length is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("message polynomial has degree {degree}, needs degree < {k}")]
    MessageTooLong { degree: usize, k: usize },
    #[error("error weight {weight} exceeds code length {n}")]
    WeightTooLarge { weight: usize, n: usize },
    #[error("invalid error pattern: {0}")]
    InvalidPattern(&'static str),
    #[error("message polynomial is over a different field")]
    MixedFields,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordRole {
    Codeword,
    Received,
    Error,
}

/// A length-n vector over the code's field, tagged with what it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub role: WordRole,
    pub symbols: Vec<Elem>,
}

impl Word {
    pub fn new(role: WordRole, symbols: Vec<Elem>) -> Self {
        Word { role, symbols }
    }

    pub fn received(symbols: Vec<Elem>) -> Self {
        Word::new(WordRole::Received, symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// A normalised error: nonzero values `e_i` on a support set. The
/// transmitted error on position `i` is `beta_i * e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPattern {
    positions: Vec<usize>,
    values: Vec<Elem>,
}

impl ErrorPattern {
    pub fn empty() -> Self {
        ErrorPattern { positions: Vec::new(), values: Vec::new() }
    }

    pub fn new(n: usize, positions: Vec<usize>, values: Vec<Elem>) -> Result<Self, CodeError> {
        if positions.len() != values.len() {
            return Err(CodeError::InvalidPattern("positions and values differ in length"));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(CodeError::InvalidPattern("error values must be nonzero"));
        }
        let mut pairs: Vec<(usize, Elem)> = positions.into_iter().zip(values).collect();
        pairs.sort_by_key(|&(i, _)| i);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CodeError::InvalidPattern("positions repeat"));
        }
        if pairs.last().is_some_and(|&(i, _)| i >= n) {
            return Err(CodeError::InvalidPattern("position out of range"));
        }
        let (positions, values) = pairs.into_iter().unzip();
        Ok(ErrorPattern { positions, values })
    }

    /// Pattern read off a normalised error vector.
    pub fn from_vector(e: &[Elem]) -> Self {
        let (positions, values) =
            e.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, &v)| (i, v)).unzip();
        ErrorPattern { positions, values }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    /// The normalised error vector of length `n`.
    pub fn to_vector(&self, n: usize) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; n];
        for (&i, &v) in self.positions.iter().zip(&self.values) {
            out[i] = v;
        }
        out
    }

    /// Error locator `prod_{j in E} (x - alpha_j)`.
    pub fn locator(&self, code: &GrsCode) -> Poly {
        let roots: Vec<Elem> = self.positions.iter().map(|&i| code.alphas[i]).collect();
        Poly::from_roots(&code.field, &roots)
    }
}

#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Field,
    k: usize,
    alphas: Vec<Elem>,
    betas: Vec<Elem>,
    beta_invs: Vec<Elem>,
    g: Poly,
    zetas: Vec<Elem>,
}

impl GrsCode {
    pub fn new(field: &Field, k: usize, alphas: Vec<Elem>, betas: Vec<Elem>) -> Result<Self, CodeError> {
        let n = alphas.len();
        if k == 0 || k > n {
            return Err(CodeError::InvalidDimension { n, k });
        }
        if n > field.order() as usize {
            return Err(CodeError::LengthTooLarge { n, q: field.order() });
        }
        if betas.len() != n {
            return Err(CodeError::MultiplierCount { alphas: n, betas: betas.len() });
        }
        let mut seen = vec![false; field.order() as usize];
        for (i, a) in alphas.iter().enumerate() {
            if std::mem::replace(&mut seen[a.value() as usize], true) {
                return Err(CodeError::DuplicateEvaluationPoint(i));
            }
        }
        let beta_invs = betas
            .iter()
            .enumerate()
            .map(|(i, &b)| field.inv(b).map_err(|_| CodeError::ZeroMultiplier(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let g = Poly::from_roots(field, &alphas);
        let zetas = alphas
            .iter()
            .map(|&ai| {
                let prod = alphas
                    .iter()
                    .filter(|&&aj| aj != ai)
                    .fold(Elem::ONE, |acc, &aj| field.mul(acc, field.sub(ai, aj)));
                field.inv(prod).expect("evaluation points are distinct")
            })
            .collect();
        Ok(GrsCode { field: field.clone(), k, alphas, betas, beta_invs, g, zetas })
    }

    /// Reed–Solomon code: all column multipliers one.
    pub fn reed_solomon(field: &Field, k: usize, alphas: Vec<Elem>) -> Result<Self, CodeError> {
        let betas = vec![Elem::ONE; alphas.len()];
        GrsCode::new(field, k, alphas, betas)
    }

    /// Evaluation points are the first `n` nonzero field elements.
    pub fn on_nonzero_points(field: &Field, n: usize, k: usize) -> Result<Self, CodeError> {
        let alphas: Vec<Elem> = field.elements().skip(1).take(n).collect();
        if alphas.len() < n {
            return Err(CodeError::LengthTooLarge { n, q: field.order() - 1 });
        }
        GrsCode::reed_solomon(field, k, alphas)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn alphas(&self) -> &[Elem] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Elem] {
        &self.betas
    }

    /// `prod (x - alpha_i)`.
    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `zeta_i = prod_{j != i} (alpha_i - alpha_j)^{-1}`.
    pub fn zetas(&self) -> &[Elem] {
        &self.zetas
    }

    pub fn has_zero_point(&self) -> bool {
        self.alphas.iter().any(|a| a.is_zero())
    }

    /// Largest powering degree with `ell * (k - 1) < n`; `None` means unbounded (k = 1).
    pub fn max_powering_degree(&self) -> Option<usize> {
        (self.k > 1).then(|| (self.n() - 1) / (self.k - 1))
    }

    pub fn encode(&self, f: &Poly) -> Result<Word, CodeError> {
        if f.field() != &self.field {
            return Err(CodeError::MixedFields);
        }
        if let Some(deg) = f.degree().filter(|&d| d >= self.k) {
            return Err(CodeError::MessageTooLong { degree: deg, k: self.k });
        }
        let symbols = self
            .alphas
            .iter()
            .zip(&self.betas)
            .map(|(&a, &b)| self.field.mul(b, f.eval(a)))
            .collect();
        Ok(Word::new(WordRole::Codeword, symbols))
    }

    /// A uniformly random message polynomial of degree < k.
    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Poly {
        let q = self.field.order();
        let coeffs = (0..self.k).map(|_| Elem(rng.gen_range(0..q))).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Error of exactly `weight` positions, support uniform over all
    /// `weight`-subsets and values uniform over the nonzero elements.
    pub fn sample_error<R: Rng + ?Sized>(&self, weight: usize, rng: &mut R) -> Result<ErrorPattern, CodeError> {
        let n = self.n();
        if weight > n {
            return Err(CodeError::WeightTooLarge { weight, n });
        }
        let mut positions = index::sample(rng, n, weight).into_vec();
        positions.sort_unstable();
        let q = self.field.order();
        let values = positions.iter().map(|_| Elem(rng.gen_range(1..q))).collect();
        Ok(ErrorPattern { positions, values })
    }

    /// `r_i = c_i + beta_i * e_i`.
    pub fn apply_error(&self, c: &Word, e: &ErrorPattern) -> Result<Word, CodeError> {
        self.check_len(c)?;
        if e.positions.last().is_some_and(|&i| i >= self.n()) {
            return Err(CodeError::InvalidPattern("position out of range"));
        }
        let mut symbols = c.symbols.clone();
        for (&i, &v) in e.positions.iter().zip(&e.values) {
            symbols[i] = self.field.add(symbols[i], self.field.mul(self.betas[i], v));
        }
        Ok(Word::received(symbols))
    }

    /// Divides out the column multipliers.
    pub fn normalize_received(&self, r: &Word) -> Result<Vec<Elem>, CodeError> {
        self.check_len(r)?;
        Ok(r.symbols.iter().zip(&self.beta_invs).map(|(&s, &b)| self.field.mul(s, b)).collect())
    }

    /// Normalised error vector `(r_i - c_i) / beta_i`.
    pub fn error_between(&self, received: &Word, codeword: &Word) -> Result<Vec<Elem>, CodeError> {
        let r = self.normalize_received(received)?;
        let c = self.normalize_received(codeword)?;
        Ok(r.iter().zip(&c).map(|(&a, &b)| self.field.sub(a, b)).collect())
    }

    /// The polynomial of degree < n taking `values[i]` at `alpha_i`.
    pub fn lagrangian(&self, values: &[Elem]) -> Poly {
        self.power_lagrangians(values, 1).pop().unwrap()
    }

    /// `R<t>` for t = 1..=ell: the interpolants of the component-wise powers
    /// of the normalised received vector.
    pub fn power_lagrangians(&self, normalized: &[Elem], ell: usize) -> Vec<Poly> {
        assert_eq!(normalized.len(), self.n(), "received vector length");
        let f = &self.field;
        let mut weight_sets = vec![Vec::with_capacity(self.n()); ell];
        for (&r, &z) in normalized.iter().zip(&self.zetas) {
            let mut power = r;
            for set in weight_sets.iter_mut() {
                set.push(f.mul(power, z));
                power = f.mul(power, r);
            }
        }
        combine_quotients(&self.g, &self.alphas, &weight_sets)
    }

    fn check_len(&self, w: &Word) -> Result<(), CodeError> {
        if w.len() == self.n() {
            Ok(())
        } else {
            Err(CodeError::LengthMismatch { expected: self.n(), found: w.len() })
        }
    }
}
