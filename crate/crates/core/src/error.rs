use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Gamma argument sits on (or within the guard tolerance of) a
    /// non-positive integer.
    #[error("gamma pole at argument {arg}")]
    Pole { arg: f64 },

    /// A 0/0 form: numerator and denominator Gamma arguments both at poles.
    #[error("indeterminate gamma ratio: numerator pole at {numerator}, denominator pole at {denominator}")]
    Indeterminate { numerator: f64, denominator: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// A denominator Pochhammer factor vanished before the series terminated.
    #[error("division by zero: denominator parameter {param} vanishes at term {term}")]
    DivisionByZero { param: f64, term: usize },

    #[error("series does not terminate: no numerator parameter is a non-positive integer")]
    NotTerminating,

    #[error("unsupported (i, j) = ({i}, {j})")]
    UnsupportedPair { i: i32, j: i32 },

    /// A printed rational coefficient of a special case has a zero denominator.
    #[error("coefficient pole in {case}: b = {b}")]
    CoefficientPole { case: &'static str, b: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// True for the errors a grid sweep records as a pole skip.
    pub fn is_pole(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Indeterminate { .. }
                | Error::DivisionByZero { .. }
                | Error::CoefficientPole { .. }
        )
    }
}
