//! Generalized Dixon summation: closed form of
//!
//! ```text
//! 3F2(a, b, c; 1+a-b+i, 1+a-c+i+j; 1),   -3 <= i <= 3, 0 <= j <= 3
//! ```
//!
//! as a power of two times a Gamma quotient times a two-branch brace
//! weighted by the polynomial coefficients `A_{i,j}(a,b,c)` and
//! `B_{i,j}(a,b,c)`. Negative `j` is reached through the symmetry
//! `f_{i,j}(a,b,c) = f_{i+j,-j}(a,c,b)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{gamma_ratio, PoleGuard};
use crate::series::{eval_pfq, PfqParams, SeriesControl, SeriesResult};

type Poly = fn(f64, f64, f64) -> f64;

/// One printed cell of the coefficient tables.
pub struct TableCell {
    pub i: i32,
    pub j: i32,
    pub a_text: &'static str,
    pub b_text: &'static str,
    a_poly: Poly,
    b_poly: Poly,
    /// Set when the implemented polynomial differs from the printed text.
    pub correction: Option<&'static str>,
}

macro_rules! cell {
    ($i:expr, $j:expr, |$a:ident, $b:ident, $c:ident| $pa:expr, $ta:expr, $pb:expr, $tb:expr $(, $note:expr)?) => {
        TableCell {
            i: $i,
            j: $j,
            a_text: $ta,
            b_text: $tb,
            a_poly: |$a, $b, $c| {
                let _ = ($a, $b, $c);
                $pa
            },
            b_poly: |$a, $b, $c| {
                let _ = ($a, $b, $c);
                $pb
            },
            correction: cell!(@note $($note)?),
        }
    };
    (@note) => { None };
    (@note $note:expr) => { Some($note) };
}

/// Every supported `(i, j)` cell with `j >= 0`, row by row from `i = 3`.
pub static TABLE: [TableCell; 23] = [
    cell!(3, 0, |a, b, c|
        5.0 * a - b * b + (a + 1.0).powi(2) - (2.0 * a - b + 1.0) * (b + c),
        "5a - b^2 + (a+1)^2 - (2a-b+1)(b+c)",
        -a + 3.0 * b * b - (a + 3.0).powi(2) + (2.0 * a - 3.0 * b + 5.0) * (b + c),
        "-a + 3b^2 - (a+3)^2 + (2a-3b+5)(b+c)"),
    cell!(2, 0, |a, b, c|
        0.5 * (a - 1.0) * (a - 4.0) - (b * b - 5.0 * a + 1.0) - (a - b + 1.0) * (b + c),
        "(1/2)(a-1)(a-4) - (b^2-5a+1) - (a-b+1)(b+c)",
        -2.0,
        "-2"),
    cell!(2, 1, |a, b, c|
        (b - 1.0) * (b - 2.0) - (a - b + 1.0) * (a - b - c + 3.0),
        "(b-1)(b-2) - (a-b+1)(a-b-c+3)",
        (a - b - 2.0 * c + 5.0) * (a - b - c + 3.0) - (b - 1.0) * (b - 2.0),
        "(a-b-2c+5)(a-b-c+3) - (b-1)(b-2)"),
    cell!(2, 2, |a, b, c|
        0.5 * (a - c + 2.0) * (a - 2.0 * b - c + 5.0)
            * ((a - c + 2.0) * (a - 2.0 * b + 2.0) - a * (c - 3.0))
            - (b - 1.0) * (b - 2.0) * (c - 2.0) * (c - 3.0),
        "(1/2)(a-c+2)(a-2b-c+5){(a-c+2)(a-2b+2) - a(c-3)} - (b-1)(b-2)(c-2)(c-3)",
        -2.0 * (a - c + 2.0) * (a - 2.0 * b - c + 5.0),
        "-2(a-c+2)(a-2b-c+5)"),
    cell!(1, 0, |a, b, c| 1.0, "1", -1.0, "-1"),
    cell!(1, 1, |a, b, c|
        c - a - 1.0,
        "c-a-1",
        a - 2.0 * b - c + 3.0,
        "a-2b-c+3"),
    cell!(1, 2, |a, b, c|
        a * (a - 1.0) + (b + c - 3.0) * (c - 2.0 * a - 1.0),
        "a(a-1) + (b+c-3)(c-2a-1)",
        (b - 1.0) * (b - c + 1.0) - (a - b - c + 2.0) * (a - b - c + 3.0),
        "(b-1)(b-c+1) - (a-b-c+2)(a-b-c+3)"),
    cell!(0, 0, |a, b, c| 1.0, "1", 0.0, "0"),
    cell!(0, 1, |a, b, c| -1.0, "-1", 1.0, "1"),
    cell!(0, 2, |a, b, c|
        0.5 * ((a - b - c + 1.0).powi(2) + (c - 1.0) * (c - 3.0) - b * b + a),
        "(1/2){(a-b-c+1)^2 + (c-1)(c-3) - b^2 + a}",
        -2.0,
        "-2"),
    cell!(0, 3, |a, b, c|
        c * (a - b - c + 4.0) - (a + 1.0) * (a + 2.0) - (a - 1.0) * (b - 1.0) + 3.0 * a * b,
        "c(a-b-c+4) - (a+1)(a+2) - (a-1)(b-1) + 3ab",
        (a + 2.0) * (a + 4.0) - b * (2.0 * a + 5.0) - 3.0 * c * (a - b - c + 4.0) + 3.0,
        "(a+2)(a+4) - b(2a+5) - 3c(a-b-c+4) + 3"),
    cell!(-1, 0, |a, b, c| 1.0, "1", 1.0, "1"),
    cell!(-1, 1, |a, b, c| 1.0, "1", 1.0, "1"),
    cell!(-1, 2, |a, b, c|
        b + c - 1.0,
        "b+c-1",
        -(b - c + 1.0),
        "-(b-c+1)"),
    cell!(-1, 3, |a, b, c|
        (c - 1.0) * (c - 2.0) - b * (a - c + 1.0),
        "(c-1)(c-2) - b(a-c+1)",
        (c - 1.0) * (c - 2.0) + b * (a - 2.0 * b - c + 1.0),
        "(c-1)(c-2) + b(a-2b-c+1)",
        "B printed as \"(c-1(c-2) + b(a-2b-c+1)\" with an unbalanced parenthesis; read as (c-1)(c-2), which matches the series"),
    cell!(-2, 0, |a, b, c|
        0.5 * (a - 1.0) * (a - 2.0 * b - 2.0) - c * (a - b - 1.0),
        "(1/2)(a-1)(a-2b-2) - c(a-b-1)",
        2.0,
        "2"),
    cell!(-2, 1, |a, b, c|
        a - b - 1.0,
        "a-b-1",
        a - b - 2.0 * c - 1.0,
        "a-b-2c-1"),
    cell!(-2, 2, |a, b, c|
        0.5 * (a - 1.0) * (a - 2.0 * b - 2.0 * c) + b * (b + c),
        "(1/2)(a-1)(a-2b-2c) + b(b+c)",
        2.0,
        "2"),
    cell!(-2, 3, |a, b, c|
        (a - b - 1.0) * (c - 1.0) - b * (b + 1.0),
        "(a-b-1)(c-1) - b(b+1)",
        b * (a - 2.0 * c + 2.0) - (b - c + 1.0) * (a - b - 2.0 * c + 1.0),
        "b(a-2c+2) - (b-c+1)(a-b-2c+1)"),
    cell!(-3, 0, |a, b, c|
        (a - 1.0) * (a - 2.0 * b - 2.0 * c - 4.0) + b * c,
        "(a-1)(a-2b-2c-4) + bc",
        (a - 2.0) * (a - 2.0 * b - 2.0 * c - 3.0) + 3.0 * b * c,
        "(a-2)(a-2b-2c-3) + 3bc"),
    cell!(-3, 1, |a, b, c|
        (a - b - 2.0) * (a - c - 1.0) - a * c,
        "(a-b-2)(a-c-1) - ac",
        (a - b - 2.0) * (a - 2.0 * b - 2.0 * c - 3.0) + b * c,
        "(a-b-2)(a-2b-2c-3) + bc"),
    cell!(-3, 2, |a, b, c|
        (a - b - 1.0) * (a - b - 2.0 * c - 2.0) - b * c,
        "(a-b-1)(a-b-2c-2) - bc",
        (a - b - 2.0) * (a - b - 2.0 * c - 1.0) + b * c,
        "(a-b-2)(a-b-2c-1) + bc"),
    cell!(-3, 3, |a, b, c|
        b * (b + 1.0) + (a - 1.0) * (a - b) - c * (2.0 * a - b - 2.0),
        "b(b+1) + (a-1)(a-b) - c(2a-b-2)",
        (a - 1.0) * (a - 2.0) - 3.0 * b * (a - b - 2.0) - c * (2.0 * a - 3.0 * b - 4.0),
        "(a-1)(a-2) - 3b(a-b-2) - c(2a-3b-4)"),
];

impl TableCell {
    pub fn eval_a(&self, a: f64, b: f64, c: f64) -> f64 {
        (self.a_poly)(a, b, c)
    }

    pub fn eval_b(&self, a: f64, b: f64, c: f64) -> f64 {
        (self.b_poly)(a, b, c)
    }
}

/// The "---" cells of both tables.
pub const GAP_PAIRS: [(i32, i32); 5] = [(3, 1), (3, 2), (3, 3), (2, 3), (1, 3)];

pub fn table_cell(i: i32, j: i32) -> Result<&'static TableCell> {
    TABLE
        .iter()
        .find(|c| c.i == i && c.j == j)
        .ok_or(Error::UnsupportedPair { i, j })
}

/// Printed cell with `j >= 0`.
pub fn is_supported(i: i32, j: i32) -> bool {
    table_cell(i, j).is_ok()
}

/// Supported directly or through the symmetry for negative `j`.
pub fn is_reachable(i: i32, j: i32) -> bool {
    if j >= 0 {
        is_supported(i, j)
    } else {
        j >= -3 && is_supported(i + j, -j)
    }
}

pub fn supported_pairs() -> impl Iterator<Item = (i32, i32)> {
    TABLE.iter().map(|c| (c.i, c.j))
}

#[allow(non_snake_case)]
pub fn coeff_A(i: i32, j: i32, a: f64, b: f64, c: f64) -> Result<f64> {
    Ok((table_cell(i, j)?.a_poly)(a, b, c))
}

#[allow(non_snake_case)]
pub fn coeff_B(i: i32, j: i32, a: f64, b: f64, c: f64) -> Result<f64> {
    Ok((table_cell(i, j)?.b_poly)(a, b, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DixonCoefficients {
    pub a: f64,
    pub b: f64,
}

pub fn coefficients(i: i32, j: i32, a: f64, b: f64, c: f64) -> Result<DixonCoefficients> {
    let cell = table_cell(i, j)?;
    Ok(DixonCoefficients {
        a: (cell.a_poly)(a, b, c),
        b: (cell.b_poly)(a, b, c),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DixonCase {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub i: i32,
    pub j: i32,
}

impl DixonCase {
    pub fn new(a: f64, b: f64, c: f64, i: i32, j: i32) -> Self {
        Self { a, b, c, i, j }
    }

    /// The `3F2(a, b, c; 1+a-b+i, 1+a-c+i+j; ·)` parameters.
    pub fn params(&self) -> PfqParams {
        let (i, j) = (f64::from(self.i), f64::from(self.j));
        PfqParams::new(
            [self.a, self.b, self.c],
            [1.0 + self.a - self.b + i, 1.0 + self.a - self.c + i + j],
        )
    }

    /// `a - 2b - 2c + 2 + 2i + j`; the unit-argument series converges when
    /// this is positive. Equal to the parametric excess of [`Self::params`].
    pub fn validity_margin(&self) -> f64 {
        self.a - 2.0 * self.b - 2.0 * self.c + 2.0 + f64::from(2 * self.i + self.j)
    }

    pub fn terminates(&self) -> bool {
        self.params().termination_degree().is_some()
    }

    pub fn is_valid(&self) -> bool {
        self.terminates() || self.validity_margin() > 0.0
    }

    /// Every Gamma argument of the main quotient and the branch quotients,
    /// used to keep random test points away from poles.
    pub fn gamma_arguments(&self) -> Vec<f64> {
        let Self { a, b, c, i, j } = *self;
        let (fi, fj) = (f64::from(i), f64::from(j));
        let half = 0.5 * a;
        let out = vec![
            1.0 + a - b + fi,
            1.0 + a - c + fi + fj,
            a - 2.0 * c + fi + fj + 1.0,
            a - b - c + fi + fj + 1.0,
            half - c + 0.5 + f64::from((i + j + 1).div_euclid(2)),
            half - b - c + 1.0 + fi + f64::from((j + 1).div_euclid(2)),
            half + 0.5,
            half - b + 1.0 + f64::from(i.div_euclid(2)),
            half - c + 1.0 + f64::from((i + j).div_euclid(2)),
            half - b - c + 1.5 + fi + f64::from(j.div_euclid(2)),
            half,
            half - b + 0.5 + f64::from((i + 1).div_euclid(2)),
        ];
        out
    }

    /// Factors `b-1..b-k` and `c-1..c-k'` of the reciprocal Pochhammer
    /// products standing for `Γ(b-k)/Γ(b)` and `Γ(c-k')/Γ(c)`.
    pub fn shift_factors(&self) -> Vec<f64> {
        let (kb, kc) = shifts(self.i, self.j);
        let b = (1..=kb).map(|m| self.b - f64::from(m));
        let c = (1..=kc).map(|m| self.c - f64::from(m));
        b.chain(c).collect()
    }
}

/// `((i+|i|)/2, (i+j+|i+j|)/2)`: the integer shifts in `Γ(b - ·)` and
/// `Γ(c - ·)` of the prefactor.
pub(crate) fn shifts(i: i32, j: i32) -> (u32, u32) {
    (i.max(0) as u32, (i + j).max(0) as u32)
}

/// `Γ(x - k) / Γ(x) = 1 / ((x-1)(x-2)···(x-k))`, finite for non-positive
/// integer `x`. Pole when `x - m` vanishes for some `1 <= m <= k`.
pub(crate) fn gamma_shift_ratio(x: f64, k: u32, guard: PoleGuard) -> Result<f64> {
    let mut den = 1.0;
    for m in 1..=k {
        let f = x - f64::from(m);
        if f.abs() <= guard.tolerance() {
            return Err(Error::Pole {
                arg: x - f64::from(k),
            });
        }
        den *= f;
    }
    Ok(1.0 / den)
}

/// Right-hand side of the generalized Dixon theorem for `j >= 0`.
pub fn dixon_general(case: &DixonCase, guard: PoleGuard) -> Result<f64> {
    let DixonCase { a, b, c, i, j } = *case;
    let coeffs = coefficients(i, j, a, b, c)?;
    let (fi, fj) = (f64::from(i), f64::from(j));
    let (kb, kc) = shifts(i, j);
    let half = 0.5 * a;

    let power = 2f64.powf(-2.0 * c + fi + fj);
    let pairs = gamma_shift_ratio(b, kb, guard)? * gamma_shift_ratio(c, kc, guard)?;

    let main_num = [1.0 + a - b + fi, 1.0 + a - c + fi + fj];
    let main_den = [a - 2.0 * c + fi + fj + 1.0, a - b - c + fi + fj + 1.0];

    let first_num = [
        half - c + 0.5 + f64::from((i + j + 1).div_euclid(2)),
        half - b - c + 1.0 + fi + f64::from((j + 1).div_euclid(2)),
    ];
    let first_den = [half + 0.5, half - b + 1.0 + f64::from(i.div_euclid(2))];
    let second_num = [
        half - c + 1.0 + f64::from((i + j).div_euclid(2)),
        half - b - c + 1.5 + fi + f64::from(j.div_euclid(2)),
    ];
    let second_den = [half, half - b + 0.5 + f64::from((i + 1).div_euclid(2))];

    // The branches can cancel heavily, so the shared quotient is kept out of
    // the sum when nothing is at a pole.
    let split = || -> Result<f64> {
        let main = gamma_ratio(&main_num, &main_den, guard)?;
        let mut q = 0.0;
        if coeffs.a != 0.0 {
            q += coeffs.a * gamma_ratio(&first_num, &first_den, guard)?;
        }
        if coeffs.b != 0.0 {
            q += coeffs.b * gamma_ratio(&second_num, &second_den, guard)?;
        }
        Ok(main * q)
    };
    let combined = || -> Result<f64> {
        let branch = |coeff: f64, num: [f64; 2], den: [f64; 2]| -> Result<f64> {
            if coeff == 0.0 {
                return Ok(0.0);
            }
            let n = [main_num[0], main_num[1], num[0], num[1]];
            let d = [main_den[0], main_den[1], den[0], den[1]];
            Ok(coeff * gamma_ratio(&n, &d, guard)?)
        };
        Ok(branch(coeffs.a, first_num, first_den)? + branch(coeffs.b, second_num, second_den)?)
    };
    let any_pole = main_num
        .iter()
        .chain(&main_den)
        .chain(&first_num)
        .chain(&first_den)
        .chain(&second_num)
        .chain(&second_den)
        .any(|&x| guard.at_pole(x));
    let sum = if any_pole { combined()? } else { split()? };

    Ok(power * pairs * sum)
}

/// Map a negative-`j` case onto a printed cell by `f_{i,j}(a,b,c) = f_{i+j,-j}(a,c,b)`.
pub fn symmetry_extend(case: &DixonCase) -> Result<DixonCase> {
    let DixonCase { a, b, c, i, j } = *case;
    if !(-3..=-1).contains(&j) || !is_supported(i + j, -j) {
        return Err(Error::UnsupportedPair { i, j });
    }
    Ok(DixonCase::new(a, c, b, i + j, -j))
}

/// Closed form for any reachable `(i, j)`, routing negative `j` through the
/// symmetry.
pub fn dixon_sum(case: &DixonCase, guard: PoleGuard) -> Result<f64> {
    if case.j < 0 {
        dixon_general(&symmetry_extend(case)?, guard)
    } else {
        dixon_general(case, guard)
    }
}

/// Direct series for the same `3F2` at unit argument.
pub fn dixon_oracle(case: &DixonCase, control: &SeriesControl) -> Result<SeriesResult> {
    eval_pfq(&case.params(), 1.0, control)
}
