//! Grid verification of every identity against its independent evaluation.
//!
//! Each grid point lands in exactly one of four classes: pass, fail, pole
//! skip (a Gamma argument or series denominator within the guard of a pole)
//! or slow skip (a side hit `MaxTermsExceeded`, or the oracle series cannot
//! converge at that point). A grid is acceptable when it has no failures.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dixon::{self, DixonCase};
use crate::error::{Error, Result};
use crate::exton::{
    self, relative_residual, GeneralTransformSpec, IdentityPair, LimitingCase, SpecialCase,
    TransformPoint,
};
use crate::scalar::PoleGuard;
use crate::series::{eval_pfq_terminating, SeriesControl, SeriesResult};

pub const DEFAULT_SEED: u64 = 20_140_601;

/// Share of skipped points above which a report carries a warning.
pub const SKIP_WARNING_SHARE: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    DixonCell(i32, i32),
    Theorem21(i32, i32),
    ReductionChain(i32, i32),
    General13,
    Special(SpecialCase),
    Limiting(LimitingCase),
    Srivastava,
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityId::DixonCell(i, j) => write!(f, "DIXON_CELL({i},{j})"),
            IdentityId::Theorem21(i, j) => write!(f, "THEOREM_21({i},{j})"),
            IdentityId::ReductionChain(i, j) => write!(f, "REDUCTION_CHAIN({i},{j})"),
            IdentityId::General13 => f.write_str("GENERAL_13"),
            IdentityId::Special(c) => f.write_str(c.name()),
            IdentityId::Limiting(c) => f.write_str(c.name()),
            IdentityId::Srivastava => f.write_str("SRIVASTAVA"),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("unknown identity id {s:?}"));
        if let Some(open) = s.find('(') {
            let name = &s[..open];
            let args = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let (i, j) = args.split_once(',').ok_or_else(bad)?;
            let i: i32 = i.trim().parse().map_err(|_| bad())?;
            let j: i32 = j.trim().parse().map_err(|_| bad())?;
            return match name.to_ascii_uppercase().as_str() {
                "DIXON_CELL" => Ok(IdentityId::DixonCell(i, j)),
                "THEOREM_21" => Ok(IdentityId::Theorem21(i, j)),
                "REDUCTION_CHAIN" => Ok(IdentityId::ReductionChain(i, j)),
                _ => Err(bad()),
            };
        }
        match s.to_ascii_uppercase().as_str() {
            "GENERAL_13" => Ok(IdentityId::General13),
            "SRIVASTAVA" => Ok(IdentityId::Srivastava),
            other => SpecialCase::parse(other)
                .map(IdentityId::Special)
                .or_else(|| LimitingCase::parse(other).map(IdentityId::Limiting))
                .ok_or_else(bad),
        }
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl IdentityId {
    fn required_axes(&self) -> &'static [&'static str] {
        match self {
            IdentityId::DixonCell(..) => &["a", "b", "c"],
            IdentityId::Theorem21(..) | IdentityId::ReductionChain(..) => &["b", "d", "x"],
            IdentityId::General13 => &["y"],
            IdentityId::Special(_) => &["b", "d", "x"],
            IdentityId::Limiting(_) => &["d", "x"],
            IdentityId::Srivastava => &["a", "x"],
        }
    }

    fn check_pair(&self) -> Result<()> {
        match *self {
            IdentityId::DixonCell(i, j) if !dixon::is_reachable(i, j) => {
                Err(Error::UnsupportedPair { i, j })
            }
            IdentityId::Theorem21(i, j) | IdentityId::ReductionChain(i, j)
                if !dixon::is_supported(i, j) =>
            {
                Err(Error::UnsupportedPair { i, j })
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub identity: IdentityId,
    /// Sample values per named parameter; points are the Cartesian product.
    pub axes: BTreeMap<String, Vec<f64>>,
    pub tolerance: f64,
    /// Seeds the randomized identities (`GENERAL_13`).
    pub seed: u64,
    /// Number of random draws for randomized identities.
    pub samples: usize,
    pub control: SeriesControl,
}

impl GridSpec {
    pub fn new(identity: IdentityId, tolerance: f64) -> Self {
        Self {
            identity,
            axes: BTreeMap::new(),
            tolerance,
            seed: DEFAULT_SEED,
            samples: 20,
            control: SeriesControl::default(),
        }
    }

    pub fn axis(mut self, name: &str, values: &[f64]) -> Self {
        self.axes.insert(name.to_owned(), values.to_vec());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_control(mut self, control: SeriesControl) -> Self {
        self.control = control;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        self.control.validate()?;
        self.identity.check_pair()?;
        for name in self.identity.required_axes() {
            match self.axes.get(*name) {
                None => {
                    return Err(Error::Config(format!(
                        "{} requires axis {name:?}",
                        self.identity
                    )))
                }
                Some(v) if v.is_empty() => {
                    return Err(Error::Config(format!("axis {name:?} is empty")))
                }
                Some(_) => {}
            }
        }
        if self.identity == IdentityId::General13 && self.samples == 0 {
            return Err(Error::Config("GENERAL_13 needs at least one sample".into()));
        }
        Ok(())
    }

    /// Cartesian product of the required axes, in axis order.
    fn cartesian(&self) -> Vec<Vec<(String, f64)>> {
        let mut points: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for name in self.identity.required_axes() {
            let values = &self.axes[*name];
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(((*name).to_owned(), v));
                        q
                    })
                })
                .collect();
        }
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Pass,
    Fail,
    PoleSkip,
    SlowSkip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointOutcome {
    pub identity: IdentityId,
    pub coords: BTreeMap<String, f64>,
    #[serde(rename = "class")]
    pub classification: Classification,
    pub residual: Option<f64>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl PointOutcome {
    fn skip(
        identity: IdentityId,
        coords: BTreeMap<String, f64>,
        tolerance: f64,
        err: &Error,
    ) -> Self {
        let classification = if err.is_pole() {
            Classification::PoleSkip
        } else {
            Classification::SlowSkip
        };
        Self {
            identity,
            coords,
            classification,
            residual: None,
            tolerance,
            detail: err.to_string(),
        }
    }

    fn judged(
        identity: IdentityId,
        coords: BTreeMap<String, f64>,
        tolerance: f64,
        residual: f64,
    ) -> Self {
        let classification = if residual <= tolerance {
            Classification::Pass
        } else {
            Classification::Fail
        };
        Self {
            identity,
            coords,
            classification,
            residual: Some(residual),
            tolerance,
            detail: String::new(),
        }
    }

    fn slow(identity: IdentityId, coords: BTreeMap<String, f64>, tolerance: f64) -> Self {
        Self {
            identity,
            coords,
            classification: Classification::SlowSkip,
            residual: None,
            tolerance,
            detail: "series exceeded max_terms".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub pole_skip: usize,
    pub slow_skip: usize,
}

impl Counts {
    pub fn tally<'a>(outcomes: impl IntoIterator<Item = &'a PointOutcome>) -> Self {
        let mut c = Counts::default();
        for o in outcomes {
            match o.classification {
                Classification::Pass => c.pass += 1,
                Classification::Fail => c.fail += 1,
                Classification::PoleSkip => c.pole_skip += 1,
                Classification::SlowSkip => c.slow_skip += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.pole_skip + self.slow_skip
    }

    pub fn skip_share(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            (self.pole_skip + self.slow_skip) as f64 / self.total() as f64
        }
    }

    fn merge(&mut self, other: &Counts) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.pole_skip += other.pole_skip;
        self.slow_skip += other.slow_skip;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub grid: GridSpec,
    pub outcomes: Vec<PointOutcome>,
    pub counts: Counts,
    pub max_residual: f64,
    pub skip_warning: bool,
}

impl VerificationReport {
    fn assemble(grid: GridSpec, mut outcomes: Vec<PointOutcome>) -> Self {
        outcomes.sort_by(|a, b| {
            let ka = a.coords.iter();
            let kb = b.coords.iter();
            ka.zip(kb)
                .map(|((na, va), (nb, vb))| na.cmp(nb).then(va.total_cmp(vb)))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| a.coords.len().cmp(&b.coords.len()))
        });
        let counts = Counts::tally(&outcomes);
        let max_residual = outcomes
            .iter()
            .filter_map(|o| o.residual)
            .fold(0.0, f64::max);
        Self {
            grid,
            outcomes,
            counts,
            max_residual,
            skip_warning: counts.skip_share() > SKIP_WARNING_SHARE,
        }
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }
}

fn coords(pairs: &[(String, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().cloned().collect()
}

fn get(point: &[(String, f64)], name: &str) -> f64 {
    point
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| *v)
        .expect("axis validated")
}

fn judge_pair(
    id: IdentityId,
    c: BTreeMap<String, f64>,
    tol: f64,
    r: Result<IdentityPair>,
) -> PointOutcome {
    match r {
        Err(e) => PointOutcome::skip(id, c, tol, &e),
        Ok(p) if !p.is_reliable() => PointOutcome::slow(id, c, tol),
        Ok(p) => PointOutcome::judged(id, c, tol, p.rel_residual),
    }
}

fn judge_values(
    id: IdentityId,
    c: BTreeMap<String, f64>,
    tol: f64,
    r: Result<Vec<SeriesResult>>,
) -> PointOutcome {
    match r {
        Err(e) => PointOutcome::skip(id, c, tol, &e),
        Ok(sides) if sides.iter().any(|s| !s.is_reliable()) => PointOutcome::slow(id, c, tol),
        Ok(sides) => {
            let mut worst = 0.0f64;
            for (k, a) in sides.iter().enumerate() {
                for b in &sides[k + 1..] {
                    let r = relative_residual(a.value, b.value);
                    worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
                }
            }
            PointOutcome::judged(id, c, tol, worst)
        }
    }
}

/// Closed form against the series for one generalized Dixon case.
pub fn check_dixon_case(case: &DixonCase, guard: PoleGuard) -> Result<IdentityPair> {
    let closed = SeriesResult::exact(dixon::dixon_sum(case, guard)?);
    let oracle = if case.terminates() {
        SeriesResult::exact(eval_pfq_terminating(&case.params(), 1.0)?)
    } else {
        dixon::dixon_oracle(case, &SeriesControl::unit_argument())?
    };
    Ok(IdentityPair::new(closed, oracle))
}

/// Evaluate the identity named by `spec` at every grid point.
pub fn run_grid(spec: &GridSpec) -> Result<VerificationReport> {
    spec.validate()?;
    let id = spec.identity;
    let tol = spec.tolerance;
    let control = spec.control;
    let guard = PoleGuard::default();

    if id == IdentityId::General13 {
        let draws = general_specs(spec);
        let outcomes = draws
            .par_iter()
            .map(|(c, g)| {
                let r = exton::exton_general_lhs(g, &control)
                    .and_then(|l| Ok(vec![l, exton::exton_general_rhs(g, &control)?]));
                judge_values(id, c.clone(), tol, r)
            })
            .collect();
        return Ok(VerificationReport::assemble(spec.clone(), outcomes));
    }

    let points = spec.cartesian();
    let outcomes = points
        .par_iter()
        .map(|p| {
            let c = coords(p);
            match id {
                IdentityId::DixonCell(i, j) => {
                    let case = DixonCase::new(get(p, "a"), get(p, "b"), get(p, "c"), i, j);
                    judge_pair(id, c, tol, check_dixon_case(&case, guard))
                }
                IdentityId::Theorem21(i, j) => {
                    let pt = TransformPoint::new(get(p, "b"), get(p, "d"), i, j, get(p, "x"));
                    judge_pair(id, c, tol, exton::theorem_identity(&pt, &control, guard))
                }
                IdentityId::ReductionChain(i, j) => {
                    let pt = TransformPoint::new(get(p, "b"), get(p, "d"), i, j, get(p, "x"));
                    let r = exton::reduction_chain(&pt, &control, guard).map(|s| s.to_vec());
                    judge_values(id, c, tol, r)
                }
                IdentityId::Special(case) => {
                    let r =
                        exton::special_case(case, get(p, "b"), get(p, "d"), get(p, "x"), &control);
                    judge_pair(id, c, tol, r)
                }
                IdentityId::Limiting(case) => {
                    let r = exton::limiting_case(case, get(p, "d"), get(p, "x"), &control);
                    judge_pair(id, c, tol, r)
                }
                IdentityId::Srivastava => {
                    let r = exton::srivastava_identity_check(get(p, "a"), get(p, "x"), &control);
                    judge_pair(id, c, tol, r)
                }
                IdentityId::General13 => unreachable!(),
            }
        })
        .collect();
    Ok(VerificationReport::assemble(spec.clone(), outcomes))
}

/// `(A, H)` shapes whose left series has `p <= q + 1`.
const GENERAL_SHAPES: [(usize, usize); 5] = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)];

fn general_specs(spec: &GridSpec) -> Vec<(BTreeMap<String, f64>, GeneralTransformSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ys = &spec.axes["y"];
    (0..spec.samples)
        .map(|k| {
            let (na, nh) = GENERAL_SHAPES[k % GENERAL_SHAPES.len()];
            let a_list: Vec<f64> = (0..na).map(|_| rng.random_range(0.2..2.5)).collect();
            let h_list: Vec<f64> = (0..nh).map(|_| rng.random_range(0.2..2.5)).collect();
            let d = rng.random_range(0.2..2.5);
            let x = rng.random_range(-0.8..0.8);
            let y = ys[k % ys.len()];
            let mut c = BTreeMap::new();
            c.insert("sample".to_owned(), k as f64);
            for (n, v) in a_list.iter().enumerate() {
                c.insert(format!("a{}", n + 1), *v);
            }
            for (n, v) in h_list.iter().enumerate() {
                c.insert(format!("h{}", n + 1), *v);
            }
            c.insert("d".into(), d);
            c.insert("x".into(), x);
            c.insert("y".into(), y);
            (
                c,
                GeneralTransformSpec {
                    a_list,
                    h_list,
                    d,
                    x,
                    y,
                },
            )
        })
        .collect()
}

/// Tolerances for the table audit.
pub const TABLE_TOLERANCE: f64 = 1e-9;
pub const TABLE_TERMINATING_TOLERANCE: f64 = 1e-11;

/// Minimum distance of every Gamma argument from a pole in random draws.
const POLE_MARGIN: f64 = 0.1;
/// Validity-margin window for non-terminating random draws; the unit
/// argument series converges like `n^-margin`.
const MARGIN_WINDOW: (f64, f64) = (3.0, 7.0);

fn far_from_poles(xs: &[f64]) -> bool {
    xs.iter().all(|&x| {
        let k = x.round();
        k > 0.0 || (x - k).abs() >= POLE_MARGIN
    })
}

/// Random `(a, b, c)` for cell `(i, j)`; every fifth draw is terminating
/// with `b = -n`, `n` cycling through `0..=8`.
pub fn sample_dixon_cases(i: i32, j: i32, samples: usize, seed: u64) -> Vec<DixonCase> {
    let cell_index = (i + 3) * 4 + j;
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(cell_index as u64 + 1)),
    );
    let mut out = Vec::with_capacity(samples);
    let mut terminating_n = 0u32;
    while out.len() < samples {
        let terminating = out.len() % 5 == 4;
        let case = if terminating {
            let n = terminating_n % 9;
            DixonCase::new(
                rng.random_range(0.2..3.0),
                -f64::from(n),
                rng.random_range(-1.5..3.0),
                i,
                j,
            )
        } else {
            DixonCase::new(
                rng.random_range(0.2..4.0),
                rng.random_range(-1.5..2.5),
                rng.random_range(-1.5..2.5),
                i,
                j,
            )
        };
        let ok = far_from_poles(&case.gamma_arguments())
            && case.shift_factors().iter().all(|f| f.abs() >= POLE_MARGIN)
            && if terminating {
                far_from_poles(&[case.c])
            } else {
                let m = case.validity_margin();
                far_from_poles(&[case.b, case.c]) && m >= MARGIN_WINDOW.0 && m <= MARGIN_WINDOW.1
            };
        if ok {
            if terminating {
                terminating_n += 1;
            }
            out.push(case);
        }
    }
    out
}

/// Audit every printed cell against the series oracle.
pub fn validate_tables(samples_per_cell: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    if samples_per_cell == 0 {
        return Err(Error::Config("samples_per_cell must be at least 1".into()));
    }
    let guard = PoleGuard::default();
    let reports = dixon::supported_pairs()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let id = IdentityId::DixonCell(i, j);
            let cases = sample_dixon_cases(i, j, samples_per_cell, seed);
            let outcomes = cases
                .iter()
                .map(|case| {
                    let tol = if case.terminates() {
                        TABLE_TERMINATING_TOLERANCE
                    } else {
                        TABLE_TOLERANCE
                    };
                    let c = BTreeMap::from([
                        ("a".to_owned(), case.a),
                        ("b".to_owned(), case.b),
                        ("c".to_owned(), case.c),
                    ]);
                    judge_pair(id, c, tol, check_dixon_case(case, guard))
                })
                .collect();
            let grid = GridSpec::new(id, TABLE_TOLERANCE)
                .with_seed(seed)
                .with_samples(samples_per_cell)
                .with_control(SeriesControl::unit_argument());
            VerificationReport::assemble(grid, outcomes)
        })
        .collect();
    Ok(reports)
}

/// Parameter grid shared by the main theorem, its proof chain and the
/// special cases.
pub const THEOREM_D: [f64; 4] = [0.6, 1.1, 1.7, 2.35];
pub const THEOREM_B: [f64; 3] = [0.3, 0.8, 1.6];
pub const THEOREM_X: [f64; 6] = [-0.9, -0.5, -0.2, 0.2, 0.5, 0.75];
pub const THEOREM_TOLERANCE: f64 = 1e-8;

pub const SRIVASTAVA_A: [f64; 3] = [0.6, 1.0, 1.8];
pub const SRIVASTAVA_X: [f64; 5] = [-0.6, -0.2, 0.2, 0.6, 0.9];
pub const SRIVASTAVA_TOLERANCE: f64 = 1e-11;

pub const GENERAL_Y: [f64; 3] = [-0.8, 0.5, 1.0];
pub const GENERAL_SAMPLES: usize = 20;

pub fn theorem_grid(identity: IdentityId) -> GridSpec {
    GridSpec::new(identity, THEOREM_TOLERANCE)
        .axis("b", &THEOREM_B)
        .axis("d", &THEOREM_D)
        .axis("x", &THEOREM_X)
}

pub fn limiting_grid(case: LimitingCase) -> GridSpec {
    GridSpec::new(IdentityId::Limiting(case), THEOREM_TOLERANCE)
        .axis("d", &THEOREM_D)
        .axis("x", &THEOREM_X)
}

pub fn srivastava_grid() -> GridSpec {
    GridSpec::new(IdentityId::Srivastava, SRIVASTAVA_TOLERANCE)
        .axis("a", &SRIVASTAVA_A)
        .axis("x", &SRIVASTAVA_X)
}

pub fn general_grid(seed: u64) -> GridSpec {
    GridSpec::new(IdentityId::General13, THEOREM_TOLERANCE)
        .axis("y", &GENERAL_Y)
        .with_seed(seed)
        .with_samples(GENERAL_SAMPLES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Tables,
    Theorem,
    Chain,
    General,
    Special,
    Limiting,
    Srivastava,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 7] = [
        Suite::Tables,
        Suite::Theorem,
        Suite::Chain,
        Suite::General,
        Suite::Special,
        Suite::Limiting,
        Suite::Srivastava,
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "tables" => Suite::Tables,
            "theorem" => Suite::Theorem,
            "chain" => Suite::Chain,
            "general" => Suite::General,
            "special" => Suite::Special,
            "limiting" => Suite::Limiting,
            "srivastava" => Suite::Srivastava,
            "all" => Suite::All,
            _ => return Err(Error::Config(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples_per_cell: usize,
    /// Overrides every grid's tolerance when set.
    pub tolerance: Option<f64>,
    pub max_terms: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples_per_cell: 50,
            tolerance: None,
            max_terms: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub counts: Counts,
    pub max_residual: f64,
    pub grids: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub reports: Vec<VerificationReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn new(suite: Suite, seed: u64, reports: Vec<VerificationReport>) -> Self {
        let grids = reports.len();
        let mut counts = Counts::default();
        let mut max_residual = 0.0f64;
        let mut warnings = Vec::new();
        for r in &reports {
            counts.merge(&r.counts);
            max_residual = max_residual.max(r.max_residual);
            if r.skip_warning {
                warnings.push(format!(
                    "{}: {:.1}% of points skipped",
                    r.grid.identity,
                    100.0 * r.counts.skip_share()
                ));
            }
        }
        Self {
            suite,
            seed,
            reports,
            summary: SuiteSummary {
                counts,
                max_residual,
                grids,
                warnings,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.counts.fail == 0
    }

    pub fn report(&self, id: IdentityId) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.grid.identity == id)
    }
}

fn tune(mut grid: GridSpec, opts: &SuiteOptions) -> GridSpec {
    if let Some(t) = opts.tolerance {
        grid.tolerance = t;
    }
    if let Some(m) = opts.max_terms {
        grid.control.max_terms = m;
    }
    grid
}

fn run_all(grids: Vec<GridSpec>) -> Result<Vec<VerificationReport>> {
    grids.iter().map(run_grid).collect()
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let pairs: Vec<(i32, i32)> = dixon::supported_pairs().collect();
    let reports = match suite {
        Suite::Tables => {
            let mut reports = validate_tables(opts.samples_per_cell, opts.seed)?;
            if let Some(t) = opts.tolerance {
                for r in &mut reports {
                    r.grid.tolerance = t;
                    for o in &mut r.outcomes {
                        o.tolerance = t;
                        if let Some(res) = o.residual {
                            o.classification = if res <= t {
                                Classification::Pass
                            } else {
                                Classification::Fail
                            };
                        }
                    }
                    *r = VerificationReport::assemble(
                        r.grid.clone(),
                        std::mem::take(&mut r.outcomes),
                    );
                }
            }
            reports
        }
        Suite::Theorem => run_all(
            pairs
                .iter()
                .map(|&(i, j)| tune(theorem_grid(IdentityId::Theorem21(i, j)), opts))
                .collect(),
        )?,
        Suite::Chain => run_all(
            pairs
                .iter()
                .map(|&(i, j)| tune(theorem_grid(IdentityId::ReductionChain(i, j)), opts))
                .collect(),
        )?,
        Suite::General => run_all(vec![tune(general_grid(opts.seed), opts)])?,
        Suite::Special => run_all(
            SpecialCase::ALL
                .iter()
                .map(|&c| tune(theorem_grid(IdentityId::Special(c)), opts))
                .collect(),
        )?,
        Suite::Limiting => run_all(
            LimitingCase::ALL
                .iter()
                .map(|&c| tune(limiting_grid(c), opts))
                .collect(),
        )?,
        Suite::Srivastava => run_all(vec![tune(srivastava_grid(), opts)])?,
        Suite::All => {
            let mut all = Vec::new();
            for part in Suite::PARTS {
                all.extend(run_suite(part, opts)?.reports);
            }
            all
        }
    };
    Ok(SuiteReport::new(suite, opts.seed, reports))
}
