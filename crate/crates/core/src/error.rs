use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the power k must be positive")]
    NonPositivePower,

    #[error("the closed formula divides by m; m = 0 has no formula value")]
    ZeroTwist,

    #[error(
        "(m={m}, k={k}) lies outside the closed formula's regime; \
         use the Riemann-Roch chain with the enumerated h0 instead"
    )]
    OutOfRegime { m: u32, k: u32 },

    #[error("Noether's formula fails: K^2 + chi_top = {sum} is not 12 * chi(O)")]
    NoetherViolation { sum: i64 },

    #[error("inconsistent Riemann-Roch inputs: h1({k}K) would be {value}")]
    NegativeH1 { k: u32, value: i64 },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("point {index} has {got} coordinates, expected {expected}")]
    CoordinateCount {
        index: usize,
        got: usize,
        expected: usize,
    },

    #[error("blow-ups of P^{0} are out of scope, n must be at least 2")]
    DimensionTooSmall(usize),

    #[error("operation requires a plane configuration (n = 2), got n = {0}")]
    NotPlanar(usize),

    #[error("a configuration needs at least one point")]
    EmptyConfiguration,

    #[error("custom configuration has {got} points but v = {expected}")]
    PointCountMismatch { got: usize, expected: usize },

    #[error("generic sampler failed to certify rank {target} after {attempts} attempts")]
    SamplerExhausted { target: usize, attempts: u32 },

    #[error("h0(-K) is forced to 10 - v for v = {0} <= 4; no search is needed")]
    ForcedDimension(usize),

    #[error("no witness with h0(-K) = {target} found within {budget} replacements")]
    WitnessNotFound { target: usize, budget: u32 },

    #[error("invalid Kodaira family: need 1 <= ell and 2 ell <= m, got m = {m}, ell = {ell}")]
    InvalidFamily { m: u32, ell: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
