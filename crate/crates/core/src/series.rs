//! Term-by-term evaluation of the generalized hypergeometric series
//!
//! ```text
//! pFq(α₁..α_p; β₁..β_q; z) = Σ_n (α₁)_n···(α_p)_n / ((β₁)_n···(β_q)_n) · zⁿ/n!
//! ```
//!
//! This is the brute-force oracle every closed form in the crate is checked
//! against, so it deliberately does nothing clever: running term ratio,
//! compensated accumulation, and an explicit status for each way the sum can
//! stop.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::NeumaierSum;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PfqParams {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl PfqParams {
    pub fn new(numerator: impl Into<Vec<f64>>, denominator: impl Into<Vec<f64>>) -> Self {
        Self {
            numerator: numerator.into(),
            denominator: denominator.into(),
        }
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// Degree `m` of the polynomial when some numerator equals `-m` exactly.
    ///
    /// Only exact integers count; callers pass `-n` programmatically.
    pub fn termination_degree(&self) -> Option<u32> {
        self.numerator
            .iter()
            .filter_map(|&a| nonpositive_integer(a))
            .min()
    }

    /// `Σβ - Σα`; the series at `|z| = 1` converges when this is positive.
    pub fn parametric_excess(&self) -> f64 {
        self.denominator.iter().sum::<f64>() - self.numerator.iter().sum::<f64>()
    }

    fn check_denominators(&self, degree: Option<u32>) -> Result<()> {
        for &b in &self.denominator {
            if let Some(k) = nonpositive_integer(b) {
                // (β)_n first vanishes at n = k + 1.
                if degree.is_none_or(|m| m > k) {
                    return Err(Error::DivisionByZero {
                        param: b,
                        term: k as usize + 1,
                    });
                }
            }
        }
        Ok(())
    }
}

fn nonpositive_integer(x: f64) -> Option<u32> {
    (x <= 0.0 && x.fract() == 0.0 && x > -(u32::MAX as f64)).then(|| (-x) as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesStatus {
    Converged,
    Terminated,
    /// The value is a partial sum and must not be used as ground truth.
    MaxTermsExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub status: SeriesStatus,
}

impl SeriesResult {
    /// A value known in closed form, reported as a one-term converged result.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            terms_used: 1,
            status: SeriesStatus::Converged,
        }
    }

    pub fn is_reliable(&self) -> bool {
        self.status != SeriesStatus::MaxTermsExceeded
    }

    /// Multiply the value by a scalar, keeping the bookkeeping.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            max_terms: 200_000,
            consecutive_small: 3,
        }
    }
}

impl SeriesControl {
    /// Control for sums at unit argument, where terms decay only
    /// algebraically and the tail is many times the last term.
    pub fn unit_argument() -> Self {
        Self {
            rel_tol: 1e-17,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || self.consecutive_small < 1 {
            return Err(Error::Config(format!("invalid series control {self:?}")));
        }
        Ok(())
    }

    /// Stop test shared by every series loop in the crate.
    pub(crate) fn is_small(&self, term: f64, partial: f64) -> bool {
        term.abs() <= self.rel_tol * partial.abs().max(1.0)
    }
}

/// Evaluate `pFq(params; z)` term by term.
pub fn eval_pfq(params: &PfqParams, z: f64, control: &SeriesControl) -> Result<SeriesResult> {
    control.validate()?;
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let degree = params.termination_degree();
    if degree.is_none() && z != 0.0 {
        let (p, q) = (params.p(), params.q());
        if p > q + 1 {
            return Err(Error::Domain(format!(
                "{p}F{q} with p > q+1 diverges for z = {z} unless it terminates"
            )));
        }
        if p == q + 1 {
            let r = z.abs();
            if r > 1.0 || (r == 1.0 && params.parametric_excess() <= 0.0) {
                return Err(Error::Domain(format!(
                    "{p}F{q} does not converge at z = {z} (parametric excess {})",
                    params.parametric_excess()
                )));
            }
        }
    }
    params.check_denominators(degree)?;

    // A polynomial is summed to its last term unless z = 0 makes it trivial.
    let small_rule = degree.is_none() || z == 0.0;
    let mut sum = NeumaierSum::new();
    let mut term = 1.0;
    sum.add(term);
    let mut n = 0usize;
    let mut small_run = 0usize;
    loop {
        if degree == Some(n as u32) {
            return Ok(SeriesResult {
                value: sum.sum(),
                terms_used: n + 1,
                status: SeriesStatus::Terminated,
            });
        }
        if n + 1 >= control.max_terms {
            return Ok(SeriesResult {
                value: sum.sum(),
                terms_used: n + 1,
                status: SeriesStatus::MaxTermsExceeded,
            });
        }
        term *= term_ratio(params, n, z);
        n += 1;
        sum.add(term);
        if small_rule && control.is_small(term, sum.sum()) {
            small_run += 1;
            if small_run >= control.consecutive_small {
                return Ok(SeriesResult {
                    value: sum.sum(),
                    terms_used: n + 1,
                    status: SeriesStatus::Converged,
                });
            }
        } else {
            small_run = 0;
        }
    }
}

/// Sum a terminating `pFq` exactly: `m + 1` terms for the numerator `-m`
/// closest to zero.
pub fn eval_pfq_terminating(params: &PfqParams, z: f64) -> Result<f64> {
    let degree = params.termination_degree().ok_or(Error::NotTerminating)?;
    params.check_denominators(Some(degree))?;
    let mut sum = NeumaierSum::new();
    let mut term = 1.0;
    sum.add(term);
    for n in 0..degree as usize {
        term *= term_ratio(params, n, z);
        sum.add(term);
    }
    Ok(sum.sum())
}

/// `term_{n+1} / term_n`.
#[inline]
fn term_ratio(params: &PfqParams, n: usize, z: f64) -> f64 {
    let nf = n as f64;
    let num: f64 = params.numerator.iter().map(|a| a + nf).product();
    let den: f64 = params.denominator.iter().map(|b| b + nf).product();
    num / den * z / (nf + 1.0)
}
