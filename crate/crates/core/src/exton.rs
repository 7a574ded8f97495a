//! Quadratic transformations built on the map `x -> -x/(1+√(1-x))²`.
//!
//! Everything here comes in pairs: a left-hand side (algebraic prefactor
//! times a series at the quadratic argument) and a right-hand side that is
//! either a closed-form-weighted series in `x`, a double series, or a
//! printed combination of lower-order series. Each side is evaluated
//! independently so that their agreement is a real check.

use serde::{Deserialize, Serialize};

use crate::dixon::{self, gamma_shift_ratio, shifts};
use crate::error::{Error, Result};
use crate::scalar::{gamma_ratio, NeumaierSum, PoleGuard};
use crate::series::{
    eval_pfq, eval_pfq_terminating, PfqParams, SeriesControl, SeriesResult, SeriesStatus,
};

fn check_unit_interval(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} lies outside (-1, 1)")))
    }
}

/// `-x / (1 + √(1-x))²`.
pub fn quadratic_argument(x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let s = 1.0 + (1.0 - x).sqrt();
    Ok(-x / (s * s))
}

/// `((1 + √(1-x)) / 2)^(1-2d)`.
pub fn exton_prefactor(d: f64, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok((0.5 + 0.5 * (1.0 - x).sqrt()).powf(1.0 - 2.0 * d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityPair {
    pub lhs: SeriesResult,
    pub rhs: SeriesResult,
    pub rel_residual: f64,
}

impl IdentityPair {
    pub fn new(lhs: SeriesResult, rhs: SeriesResult) -> Self {
        Self {
            lhs,
            rhs,
            rel_residual: relative_residual(lhs.value, rhs.value),
        }
    }

    /// Both sides usable as ground truth.
    pub fn is_reliable(&self) -> bool {
        self.lhs.is_reliable() && self.rhs.is_reliable()
    }
}

/// `|lhs - rhs| / max(1, |rhs|)`.
pub fn relative_residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / rhs.abs().max(1.0)
}

/// Linear combination of series results; unreliable if any part is.
fn combine(parts: &[(f64, SeriesResult)]) -> SeriesResult {
    let mut acc = NeumaierSum::new();
    let mut terms = 0;
    let mut status = SeriesStatus::Terminated;
    for (coef, r) in parts {
        acc.add(coef * r.value);
        terms += r.terms_used;
        status = match (status, r.status) {
            (SeriesStatus::MaxTermsExceeded, _) | (_, SeriesStatus::MaxTermsExceeded) => {
                SeriesStatus::MaxTermsExceeded
            }
            (SeriesStatus::Terminated, SeriesStatus::Terminated) => SeriesStatus::Terminated,
            _ => SeriesStatus::Converged,
        };
    }
    SeriesResult {
        value: acc.sum(),
        terms_used: terms,
        status,
    }
}

/// `eval_pfq` after rejecting denominator parameters that sit within the
/// guard of a pole without being exact terminating cancellations.
fn guarded_pfq(
    numerator: &[f64],
    denominator: &[f64],
    z: f64,
    control: &SeriesControl,
    guard: PoleGuard,
) -> Result<SeriesResult> {
    let params = PfqParams::new(numerator, denominator);
    if params.termination_degree().is_none() {
        if let Some(&arg) = denominator.iter().find(|&&b| guard.at_pole(b)) {
            return Err(Error::Pole { arg });
        }
    }
    eval_pfq(&params, z, control)
}

/// Sum `Σ term(n)` with the series stopping rule. `term` is called with
/// `n = 0, 1, 2, ...`.
fn sum_outer(
    control: &SeriesControl,
    mut term: impl FnMut(usize) -> Result<f64>,
) -> Result<SeriesResult> {
    control.validate()?;
    let mut sum = NeumaierSum::new();
    let mut small_run = 0;
    for n in 0..control.max_terms {
        let t = term(n)?;
        sum.add(t);
        if n > 0 && control.is_small(t, sum.sum()) {
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
    Ok(SeriesResult {
        value: sum.sum(),
        terms_used: control.max_terms,
        status: SeriesStatus::MaxTermsExceeded,
    })
}

/// `((1+√(1-x))/2)^(1-2a) = 2F1(a-1/2, a; 2a; x)`.
pub fn srivastava_identity_check(a: f64, x: f64, control: &SeriesControl) -> Result<IdentityPair> {
    let lhs = SeriesResult::exact(exton_prefactor(a, x)?);
    let rhs = guarded_pfq(&[a - 0.5, a], &[2.0 * a], x, control, PoleGuard::default())?;
    Ok(IdentityPair::new(lhs, rhs))
}

/// Parameters of the general Bailey-type transform: the sequences `(a)` and
/// `(h)` plus `d`, `x`, `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralTransformSpec {
    pub a_list: Vec<f64>,
    pub h_list: Vec<f64>,
    pub d: f64,
    pub x: f64,
    pub y: f64,
}

impl GeneralTransformSpec {
    fn validate(&self, guard: PoleGuard) -> Result<()> {
        check_unit_interval(self.x)?;
        if !((self.x * self.y).abs() < 1.0) {
            return Err(Error::Domain(format!(
                "|x y| = {} must be below 1",
                (self.x * self.y).abs()
            )));
        }
        if let Some(&arg) = self.h_list.iter().find(|&&h| guard.at_pole(h)) {
            return Err(Error::Pole { arg });
        }
        if guard.at_pole(2.0 * self.d) {
            return Err(Error::Pole { arg: 2.0 * self.d });
        }
        Ok(())
    }
}

/// Prefactor times `A+1 F H+1((a), d-1/2; (h), d+1/2; y·X(x))`.
pub fn exton_general_lhs(
    spec: &GeneralTransformSpec,
    control: &SeriesControl,
) -> Result<SeriesResult> {
    let guard = PoleGuard::default();
    spec.validate(guard)?;
    let d = spec.d;
    let mut num = spec.a_list.clone();
    num.push(d - 0.5);
    let mut den = spec.h_list.clone();
    den.push(d + 0.5);
    let z = spec.y * quadratic_argument(spec.x)?;
    let series = guarded_pfq(&num, &den, z, control, guard)?;
    Ok(series.scaled(exton_prefactor(d, spec.x)?))
}

/// `Σ_m (d-1/2)_m (d)_m / ((2d)_m m!) x^m · A+1 F H+1((a), -m; (h), 2d+m; y)`.
pub fn exton_general_rhs(
    spec: &GeneralTransformSpec,
    control: &SeriesControl,
) -> Result<SeriesResult> {
    spec.validate(PoleGuard::default())?;
    let GeneralTransformSpec {
        a_list,
        h_list,
        d,
        x,
        y,
    } = spec;
    let (d, x, y) = (*d, *x, *y);
    let mut num = a_list.clone();
    num.push(0.0);
    let mut den = h_list.clone();
    den.push(0.0);
    let (mi, hi) = (num.len() - 1, den.len() - 1);
    let mut coef = 1.0;
    sum_outer(control, |m| {
        if m > 0 {
            let k = (m - 1) as f64;
            coef *= (d - 0.5 + k) * (d + k) / ((2.0 * d + k) * (k + 1.0)) * x;
        }
        num[mi] = -(m as f64);
        den[hi] = 2.0 * d + m as f64;
        let inner = eval_pfq_terminating(&PfqParams::new(num.as_slice(), den.as_slice()), y)?;
        Ok(coef * inner)
    })
}

/// A point `(b, d, i, j, x)` of the main transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformPoint {
    pub b: f64,
    pub d: f64,
    pub i: i32,
    pub j: i32,
    pub x: f64,
}

impl TransformPoint {
    pub fn new(b: f64, d: f64, i: i32, j: i32, x: f64) -> Self {
        Self { b, d, i, j, x }
    }

    pub fn validate(&self, guard: PoleGuard) -> Result<()> {
        check_unit_interval(self.x)?;
        if self.j < 0 || !dixon::is_supported(self.i, self.j) {
            return Err(Error::UnsupportedPair {
                i: self.i,
                j: self.j,
            });
        }
        if !(self.d > 0.0) {
            return Err(Error::Domain(format!("d = {} must be positive", self.d)));
        }
        let den = self.upper_denominator();
        if guard.at_pole(den) {
            return Err(Error::Pole { arg: den });
        }
        Ok(())
    }

    /// `2d - b + j`.
    fn upper_denominator(&self) -> f64 {
        2.0 * self.d - self.b + f64::from(self.j)
    }
}

/// Prefactor times `3F2(b, d-1/2, 2d-1-i; d+1/2, 2d-b+j; X(x))`.
pub fn exton_lhs_theorem(pt: &TransformPoint, control: &SeriesControl) -> Result<SeriesResult> {
    let guard = PoleGuard::default();
    pt.validate(guard)?;
    let TransformPoint { b, d, i, x, .. } = *pt;
    let series = guarded_pfq(
        &[b, d - 0.5, 2.0 * d - 1.0 - f64::from(i)],
        &[d + 0.5, pt.upper_denominator()],
        quadratic_argument(x)?,
        control,
        guard,
    )?;
    Ok(series.scaled(exton_prefactor(d, x)?))
}

/// Outer series in `x` whose coefficients are terminating `3F2`s at unit
/// argument, summed term by term.
pub fn reduction_rhs(pt: &TransformPoint, control: &SeriesControl) -> Result<SeriesResult> {
    pt.validate(PoleGuard::default())?;
    let TransformPoint { b, d, i, x, .. } = *pt;
    let top = 2.0 * d - 1.0 - f64::from(i);
    let upper = pt.upper_denominator();
    let mut coef = 1.0;
    sum_outer(control, |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            coef *= (d - 0.5 + k) * (d + k) / ((2.0 * d + k) * (k + 1.0)) * x;
        }
        let nf = n as f64;
        let inner =
            eval_pfq_terminating(&PfqParams::new([top, b, -nf], [upper, 2.0 * d + nf]), 1.0)?;
        Ok(coef * inner)
    })
}

/// Closed-form right-hand side: a Gamma prefactor times a series whose
/// n-th term carries the coefficient pair evaluated at
/// `(a, b, c) = (2d-1-i, -n, b)`.
pub fn exton_rhs_theorem(
    pt: &TransformPoint,
    control: &SeriesControl,
    guard: PoleGuard,
) -> Result<SeriesResult> {
    pt.validate(guard)?;
    let TransformPoint { b, d, i, j, x } = *pt;
    let (fi, fj) = (f64::from(i), f64::from(j));
    let half_i = 0.5 * fi;
    let (k_i, k_ij) = shifts(i, j);

    let sign = if k_i % 2 == 0 { 1.0 } else { -1.0 };
    let scale = sign * 2f64.powi(i) * gamma_shift_ratio(b, k_ij, guard)?;

    let pre_num = [d, d + 0.5];
    let pre_den = [d - b + 0.5 * fj, d - b + 0.5 * fj + 0.5];
    let fixed = |num: [f64; 2], den: [f64; 2]| {
        gamma_ratio(
            &[pre_num[0], pre_num[1], num[0], num[1]],
            &[pre_den[0], pre_den[1], den[0], den[1]],
            guard,
        )
    };

    let floor_half = |k: i32| f64::from(k.div_euclid(2));
    let up_a = d - b + half_i + 0.5 + floor_half(j + 1);
    let low_a = d + 0.5 - half_i + floor_half(i);
    let fixed_a = fixed(
        [d - b - half_i + floor_half(i + j + 1), up_a],
        [d - half_i, low_a],
    );
    let up_b = d - b + half_i + 1.0 + floor_half(j);
    let low_b = d - half_i + floor_half(i + 1);
    let fixed_b = fixed(
        [d - b + 0.5 - half_i + floor_half(i + j), up_b],
        [d - half_i - 0.5, low_b],
    );

    let cell = dixon::table_cell(i, j)?;
    let a_param = 2.0 * d - 1.0 - fi;
    let upper = pt.upper_denominator();

    // (d)_n (d-1/2)_n x^n / ((2d-b+j)_n (n+k_i)!)
    let mut common = 1.0 / (1..=k_i).map(f64::from).product::<f64>();
    let mut poch_a = 1.0;
    let mut poch_b = 1.0;
    let series = sum_outer(control, |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            common *= (d + k) * (d - 0.5 + k) / ((upper + k) * (k + 1.0 + f64::from(k_i))) * x;
            poch_a *= (up_a + k) / (low_a + k);
            poch_b *= (up_b + k) / (low_b + k);
        }
        let nf = n as f64;
        let coeff_a = cell.eval_a(a_param, -nf, b);
        let coeff_b = cell.eval_b(a_param, -nf, b);
        let mut brace = 0.0;
        if coeff_a != 0.0 {
            let g = fixed_a.clone()?;
            if g != 0.0 {
                brace += coeff_a * g * poch_a;
            }
        }
        if coeff_b != 0.0 {
            let g = fixed_b.clone()?;
            if g != 0.0 {
                brace += coeff_b * g * poch_b;
            }
        }
        Ok(common * brace)
    })?;
    Ok(series.scaled(scale))
}

/// `(lhs, reduction, closed form)` at one point.
pub fn reduction_chain(
    pt: &TransformPoint,
    control: &SeriesControl,
    guard: PoleGuard,
) -> Result<[SeriesResult; 3]> {
    Ok([
        exton_lhs_theorem(pt, control)?,
        reduction_rhs(pt, control)?,
        exton_rhs_theorem(pt, control, guard)?,
    ])
}

pub fn theorem_identity(
    pt: &TransformPoint,
    control: &SeriesControl,
    guard: PoleGuard,
) -> Result<IdentityPair> {
    Ok(IdentityPair::new(
        exton_lhs_theorem(pt, control)?,
        exton_rhs_theorem(pt, control, guard)?,
    ))
}

/// The printed `(i, j)` specializations of the main transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpecialCase {
    E31,
    E32,
    E33,
    E34,
    E35,
    E36,
    E37,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 7] = [
        SpecialCase::E31,
        SpecialCase::E32,
        SpecialCase::E33,
        SpecialCase::E34,
        SpecialCase::E35,
        SpecialCase::E36,
        SpecialCase::E37,
    ];

    pub fn pair(self) -> (i32, i32) {
        match self {
            SpecialCase::E31 => (0, 0),
            SpecialCase::E32 => (0, 1),
            SpecialCase::E33 => (1, 0),
            SpecialCase::E34 => (1, 1),
            SpecialCase::E35 => (-1, 0),
            SpecialCase::E36 => (-1, 1),
            SpecialCase::E37 => (-2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::E31 => "E31",
            SpecialCase::E32 => "E32",
            SpecialCase::E33 => "E33",
            SpecialCase::E34 => "E34",
            SpecialCase::E35 => "E35",
            SpecialCase::E36 => "E36",
            SpecialCase::E37 => "E37",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }

    fn check_coefficients(self, b: f64, d: f64, guard: PoleGuard) -> Result<()> {
        let bad: &[f64] = match self {
            SpecialCase::E32 | SpecialCase::E33 => &[1.0],
            SpecialCase::E34 => &[1.0, 2.0],
            _ => &[],
        };
        if self == SpecialCase::E37 {
            // (2d-2b+1)_n / (2d-2b)_n has no terminating reading at a pole.
            let w = 2.0 * d - 2.0 * b;
            if guard.at_pole(w) {
                return Err(Error::Pole { arg: w });
            }
        }
        if bad.iter().any(|&p| (b - p).abs() <= guard.tolerance()) {
            return Err(Error::CoefficientPole {
                case: self.name(),
                b,
            });
        }
        Ok(())
    }
}

pub fn special_case(
    case: SpecialCase,
    b: f64,
    d: f64,
    x: f64,
    control: &SeriesControl,
) -> Result<IdentityPair> {
    let guard = PoleGuard::default();
    check_unit_interval(x)?;
    case.check_coefficients(b, d, guard)?;
    let (i, j) = case.pair();
    let lhs = exton_lhs_theorem(&TransformPoint::new(b, d, i, j, x), control)?;
    let f = |num: &[f64], den: &[f64]| guarded_pfq(num, den, x, control, guard);
    let h = 0.5;
    let rhs = match case {
        SpecialCase::E31 => f(&[d - h, d, d - b + h], &[2.0 * d - b, d + h])?,
        SpecialCase::E32 => {
            let w = 2.0 * (1.0 - b);
            combine(&[
                (
                    (2.0 * d - 2.0 * b + 1.0) / w,
                    f(&[d - h, d, d - b + 1.5], &[2.0 * d - b + 1.0, d + h])?,
                ),
                (
                    -(2.0 * d - 1.0) / w,
                    f(&[d - h, d - b + 1.0], &[2.0 * d - b + 1.0])?,
                ),
            ])
        }
        SpecialCase::E33 => {
            let w = 1.0 - b;
            combine(&[
                (
                    (2.0 * d - 1.0) * (d - b) / w,
                    f(&[d - h, d - b + 1.0, 1.0], &[2.0 * d - b, 2.0])?,
                ),
                (
                    -(d - 1.0) * (2.0 * d - 2.0 * b + 1.0) / w,
                    f(&[d, d - h, d - b + 1.5, 1.0], &[2.0 * d - b, d + h, 2.0])?,
                ),
            ])
        }
        SpecialCase::E34 => {
            let w = (b - 1.0) * (b - 2.0);
            combine(&[
                (
                    (2.0 * d - 1.0) * (d - b + 1.0) * (2.0 * d - b - 1.0) / w,
                    f(&[d - h, d - b + 2.0, 1.0], &[2.0 * d - b + 1.0, 2.0])?,
                ),
                (
                    -(d - 1.0) * (2.0 * d - b + 1.0) * (2.0 * d - 2.0 * b + 1.0) / w,
                    f(
                        &[d - h, d, d - b + 1.5, d - 0.5 * b + 1.5, 1.0],
                        &[2.0 * d - b + 1.0, d + h, d - 0.5 * b + h, 2.0],
                    )?,
                ),
            ])
        }
        SpecialCase::E35 => combine(&[
            (h, f(&[d - h, d - b], &[2.0 * d - b])?),
            (h, f(&[d, d - h, d - b + h], &[2.0 * d - b, d + h])?),
        ]),
        SpecialCase::E36 => combine(&[
            (h, f(&[d - h, d - b + 1.0], &[2.0 * d - b + 1.0])?),
            (h, f(&[d, d - h, d - b + h], &[2.0 * d - b + 1.0, d + h])?),
        ]),
        SpecialCase::E37 => combine(&[
            (
                h,
                f(
                    &[d, d - h, 2.0 * d + 1.0, d - b + h],
                    &[2.0 * d, d + h, 2.0 * d - b + 1.0],
                )?,
            ),
            (
                h,
                f(
                    &[d - b, d - h, 2.0 * d - 2.0 * b + 1.0],
                    &[2.0 * d - b + 1.0, 2.0 * d - 2.0 * b],
                )?,
            ),
        ]),
    };
    Ok(IdentityPair::new(lhs, rhs))
}

/// Limits of the special cases as `b -> ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LimitingCase {
    E41,
    E42,
    E43,
    E44,
}

impl LimitingCase {
    pub const ALL: [LimitingCase; 4] = [
        LimitingCase::E41,
        LimitingCase::E42,
        LimitingCase::E43,
        LimitingCase::E44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LimitingCase::E41 => "E41",
            LimitingCase::E42 => "E42",
            LimitingCase::E43 => "E43",
            LimitingCase::E44 => "E44",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }

    /// First numerator of the left `2F1`: `2d - 1`, `2d - 2`, `2d`, `2d + 1`.
    fn lhs_shift(self) -> f64 {
        match self {
            LimitingCase::E41 => -1.0,
            LimitingCase::E42 => -2.0,
            LimitingCase::E43 => 0.0,
            LimitingCase::E44 => 1.0,
        }
    }
}

/// Left side: prefactor times `2F1(2d+s, d-1/2; d+1/2; +x/(1+√(1-x))²)`.
pub fn limiting_lhs(
    case: LimitingCase,
    d: f64,
    x: f64,
    control: &SeriesControl,
) -> Result<SeriesResult> {
    let z = -quadratic_argument(x)?;
    let series = guarded_pfq(
        &[2.0 * d + case.lhs_shift(), d - 0.5],
        &[d + 0.5],
        z,
        control,
        PoleGuard::default(),
    )?;
    Ok(series.scaled(exton_prefactor(d, x)?))
}

pub fn limiting_case(
    case: LimitingCase,
    d: f64,
    x: f64,
    control: &SeriesControl,
) -> Result<IdentityPair> {
    let guard = PoleGuard::default();
    let lhs = limiting_lhs(case, d, x, control)?;
    let f = |num: &[f64], den: &[f64]| guarded_pfq(num, den, x, control, guard);
    let h = 0.5;
    let rhs = match case {
        LimitingCase::E41 => f(&[d - h, d], &[d + h])?,
        LimitingCase::E42 => combine(&[
            (2.0 * d - 1.0, f(&[d - h, 1.0], &[2.0])?),
            (-2.0 * (d - 1.0), f(&[d - h, d, 1.0], &[d + h, 2.0])?),
        ]),
        LimitingCase::E43 => combine(&[(h, f(&[d - h], &[])?), (h, f(&[d - h, d], &[d + h])?)]),
        LimitingCase::E44 => combine(&[
            (h, f(&[d - h], &[])?),
            (h, f(&[d - h, d, 2.0 * d + 1.0], &[d + h, 2.0 * d])?),
        ]),
    };
    Ok(IdentityPair::new(lhs, rhs))
}
