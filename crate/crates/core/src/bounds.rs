//! Decoding radius and failure-probability bounds.
//!
//! Radii are exact rationals so that comparisons such as `eps > tau(l)` never
//! depend on rounding. Probability bounds are accumulated as base-2
//! logarithms and exponentiated at the end; a value too large for `f64`
//! becomes `+inf`.

use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("powering degree {ell} is invalid: need ell >= 1 and ell*(k-1) < n (n = {n}, k = {k})")]
    InvalidPowering { ell: usize, n: usize, k: usize },
    #[error("need K1 < K2 < K3 < N, got K = ({k1}, {k2}, {k3}), N = {n}")]
    TripleOrdering { n: usize, k1: usize, k2: usize, k3: usize },
    #[error("field size must be at least 2, got {0}")]
    FieldSize(u64),
    #[error("need 1 <= k <= n, got n = {n}, k = {k}")]
    Dimension { n: usize, k: usize },
}

fn check_code(n: usize, k: usize) -> Result<(), BoundError> {
    if k == 0 || k > n {
        return Err(BoundError::Dimension { n, k });
    }
    Ok(())
}

fn check_field(q: u64) -> Result<(), BoundError> {
    if q < 2 {
        return Err(BoundError::FieldSize(q));
    }
    Ok(())
}

/// `l n/(l+1) - l(k-1)/2 - l/(l+1)`.
pub fn tau(n: usize, k: usize, ell: usize) -> Result<Rational, BoundError> {
    check_code(n, k)?;
    if ell == 0 || ell * (k - 1) >= n {
        return Err(BoundError::InvalidPowering { ell, n, k });
    }
    let (n, k, l) = (n as i64, k as i64, ell as i64);
    Ok(Rational::new(l * n - l, l + 1) - Rational::new(l * (k - 1), 2))
}

/// Powering degree in `1..=ell_max` with the largest radius; ties go to the smaller one.
pub fn best_ell(n: usize, k: usize, ell_max: usize) -> usize {
    let cap = if k > 1 { ell_max.min((n - 1) / (k - 1)) } else { ell_max };
    let mut best = (1, None::<Rational>);
    for ell in 1..=cap.max(1) {
        let Ok(t) = tau(n, k, ell) else { break };
        if best.1.is_none_or(|b| t > b) {
            best = (ell, Some(t));
        }
    }
    best.0
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn log2_channel(q: u64, eps: usize) -> f64 {
    let q = q as f64;
    eps as f64 * (q / (q - 1.0)).log2()
}

/// `log2` of `(q/(q-1))^eps q^{3(eps - tau(2))} / (q-1)`.
pub fn pf_bound_l2_log2(q: u64, n: usize, k: usize, eps: usize) -> Result<f64, BoundError> {
    check_field(q)?;
    let t2 = tau(n, k, 2)?;
    let lq = (q as f64).log2();
    let exponent = ratio_to_f64((Rational::from_integer(eps as i64) - t2) * 3);
    Ok(log2_channel(q, eps) + exponent * lq - ((q - 1) as f64).log2())
}

/// Failure-probability bound for powering degree 2. May exceed 1.
pub fn pf_bound_l2(q: u64, n: usize, k: usize, eps: usize) -> Result<f64, BoundError> {
    pf_bound_l2_log2(q, n, k, eps).map(f64::exp2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `eps < tau(2) - k/3 + 1`.
    Low,
    High,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Low => "low",
            Branch::High => "high",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum L3Bound {
    /// `eps <= d/2`, where decoding always succeeds.
    NotApplicable,
    Applies { log2: f64, branch: Branch },
}

impl L3Bound {
    pub fn value(&self) -> Option<f64> {
        match self {
            L3Bound::NotApplicable => None,
            L3Bound::Applies { log2, .. } => Some(log2.exp2()),
        }
    }

    pub fn branch(&self) -> Option<Branch> {
        match self {
            L3Bound::NotApplicable => None,
            L3Bound::Applies { branch, .. } => Some(*branch),
        }
    }
}

pub fn l3_branch(n: usize, k: usize, eps: usize) -> Result<Branch, BoundError> {
    let threshold = tau(n, k, 2)? - Rational::new(k as i64, 3) + 1;
    Ok(if Rational::from_integer(eps as i64) < threshold { Branch::Low } else { Branch::High })
}

/// Failure-probability bound for powering degree 3, defined for `eps > d/2`.
///
/// Low branch: `(q/(q-1))^eps (3/q)^{2eps-(n-2k+1)} q^{3(eps-tau(2))+k-1}`.
/// High branch: `(q/(q-1))^eps 2^{2(2eps-d)+2(k-1)} q^{4(eps-tau(3))-2}`.
pub fn pf_bound_l3(q: u64, n: usize, k: usize, eps: usize) -> Result<L3Bound, BoundError> {
    check_field(q)?;
    let t2 = tau(n, k, 2)?;
    let t3 = tau(n, k, 3)?;
    let d = (n - k + 1) as i64;
    let e = eps as i64;
    if 2 * e <= d {
        return Ok(L3Bound::NotApplicable);
    }
    let lq = (q as f64).log2();
    let kk = k as i64;
    let branch = l3_branch(n, k, eps)?;
    let log2 = log2_channel(q, eps)
        + match branch {
            Branch::Low => {
                let base = (3.0f64).log2() - lq;
                (2 * e - (n as i64 - 2 * kk + 1)) as f64 * base
                    + (ratio_to_f64((Rational::from_integer(e) - t2) * 3) + (kk - 1) as f64) * lq
            }
            Branch::High => {
                (2 * (2 * e - d) + 2 * (kk - 1)) as f64
                    + (ratio_to_f64((Rational::from_integer(e) - t3) * 4) - 2.0) * lq
            }
        };
    Ok(L3Bound::Applies { log2, branch })
}

/// Upper bound on the number of triples `(f1, f2, f3)` with `f1 f3 = f2^2 mod U`,
/// `f2` monic and `deg f_t < K_t`, for monic `U` of degree `N` over `GF(q)`.
pub fn lemma_triple_bound(q: u64, n: usize, k1: usize, k2: usize, k3: usize) -> Result<f64, BoundError> {
    check_field(q)?;
    if !(k1 < k2 && k2 < k3 && k3 < n) {
        return Err(BoundError::TripleOrdering { n, k1, k2, k3 });
    }
    let q = q as f64;
    let (n, k1, k2, k3) = (n as i32, k1 as i32, k2 as i32, k3 as i32);
    Ok(if k1 + k3 - 2 < n {
        3f64.powi(k2 - 1) * q.powi(k2)
    } else {
        2f64.powi(k1 + k3 - 2) * q.powi(k1 + k2 + k3 - n - 2)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub epsilon: usize,
    pub pf_l2: Option<f64>,
    pub pf_l3: L3Bound,
}

/// Radii and per-`eps` bounds for one code.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub ell: usize,
    /// `tau(1), .., tau(ell)`, as far as admissible.
    pub taus: Vec<Rational>,
    pub best_ell: usize,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn new(
        q: u64,
        n: usize,
        k: usize,
        ell: usize,
        epsilons: impl IntoIterator<Item = usize>,
    ) -> Result<Self, BoundError> {
        check_field(q)?;
        tau(n, k, ell)?;
        let taus = (1..=ell).map(|l| tau(n, k, l)).collect::<Result<Vec<_>, _>>()?;
        let rows = epsilons
            .into_iter()
            .map(|eps| BoundRow {
                epsilon: eps,
                pf_l2: pf_bound_l2(q, n, k, eps).ok(),
                pf_l3: pf_bound_l3(q, n, k, eps).unwrap_or(L3Bound::NotApplicable),
            })
            .collect();
        Ok(BoundReport { n, k, q, ell, taus, best_ell: best_ell(n, k, ell), rows })
    }

    pub fn tau(&self, ell: usize) -> Option<Rational> {
        self.taus.get(ell.checked_sub(1)?).copied()
    }

    /// CSV with columns `epsilon,tau1,tau2,tau3,pf_l2,pf_l3,branch`.
    /// Inadmissible radii and inapplicable bounds are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,tau1,tau2,tau3,pf_l2,pf_l3,branch\n");
        let cell = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        let taus: Vec<String> = (1..=3)
            .map(|l| tau(self.n, self.k, l).map(|t| ratio_to_f64(t).to_string()).unwrap_or_default())
            .collect();
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.epsilon,
                taus[0],
                taus[1],
                taus[2],
                cell(row.pf_l2),
                cell(row.pf_l3.value()),
                row.pf_l3.branch().map(Branch::as_str).unwrap_or("n/a"),
            ));
        }
        out
    }
}
