use thiserror::Error;

/// Which precondition of the exact discrete solver failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precondition {
    /// `q` is smaller than the upper inner bound of the domain on `[a, b]`.
    QTooSmall,
    /// The codomain grid is finer than `r`.
    CodomainTooFine,
    /// The function is not `(q, r)`-continuous on its samples.
    Continuity,
    /// The target does not lie on the codomain grid.
    TargetOffGrid,
    /// Some sampled value does not lie on the codomain grid.
    ValueOffGrid,
    /// The target lies outside `[min(f(a), f(b)), max(f(a), f(b))]`.
    TargetOutOfRange,
    /// `a < b` with both endpoints in the domain.
    Bracket,
}

impl Precondition {
    pub fn as_str(self) -> &'static str {
        match self {
            Precondition::QTooSmall => "q_too_small",
            Precondition::CodomainTooFine => "codomain_too_fine",
            Precondition::Continuity => "continuity",
            Precondition::TargetOffGrid => "target_off_grid",
            Precondition::ValueOffGrid => "value_off_grid",
            Precondition::TargetOutOfRange => "target_out_of_range",
            Precondition::Bracket => "bracket",
        }
    }
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite value {value} at input index {index}")]
    NonFinite { index: usize, value: f64 },
    /// Indices refer to positions in the caller's input order.
    #[error("duplicate point: inputs {first} and {second} ({value_first} vs {value_second}) are within tolerance")]
    DuplicatePoint {
        first: usize,
        second: usize,
        value_first: f64,
        value_second: f64,
    },
    #[error("duplicate abscissa: inputs {first} and {second} ({value_first} vs {value_second}) are within tolerance")]
    DuplicateAbscissa {
        first: usize,
        second: usize,
        value_first: f64,
        value_second: f64,
    },
    #[error("empty index window: need n - m >= 2, got m = {m}, n = {n}")]
    EmptyWindow { m: i64, n: i64 },
    #[error("invalid grid spacing {0}: must be positive and finite")]
    InvalidSpacing(f64),
    #[error("invalid tolerance {0}: must be nonnegative")]
    InvalidTolerance(f64),
    #[error("invalid fuzzy parameter {name} = {value}: must be nonnegative")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("values and domain lengths differ ({values} vs {domain})")]
    LengthMismatch { values: usize, domain: usize },
    #[error("point {0} is not in the domain")]
    PointNotInDomain(f64),
    #[error("function is not strictly monotone")]
    NotStrictlyMonotone,
    #[error("target {target} outside [{lo}, {hi}]")]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },
    #[error("precondition violated: {which} ({detail})")]
    PreconditionViolated { which: Precondition, detail: String },
    #[error("domain is not a run of consecutive integers with integer values")]
    NotIntegerGrid,
    #[error("not digitally continuous: |f({at} + 1) - f({at})| > 1")]
    NotDigitallyContinuous { at: i64 },
    #[error("target {target} not strictly between f(m) = {fm} and f(n) = {fn_}")]
    TargetOutOfOpenRange { target: i64, fm: i64, fn_: i64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("empty set")]
    EmptySet,
}

pub type Result<T> = std::result::Result<T, Error>;
