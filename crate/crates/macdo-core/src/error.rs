//! Error type shared by the exact and numeric layers.

/// All failure modes of the engine.
///
/// Exact operations fail only on genuine contract violations (division by
/// zero, non-symmetric input, non-terminating series); numeric operations
/// additionally fail on regime violations (contour not the unit circle,
/// truncation budget exceeded) so that a bad parameter choice surfaces as a
/// diagnosable error instead of a silently wrong number.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("division by zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes at the given assignment: {detail}")]
    DenominatorVanishes { detail: String },

    #[error("polynomial is not symmetric: swapping x{i} and x{j} changes it")]
    NotSymmetric { i: usize, j: usize },

    #[error("invalid weight: {detail}")]
    InvalidWeight { detail: String },

    #[error("weights have different lengths: {left} vs {right}")]
    WeightLengthMismatch { left: usize, right: usize },

    #[error("series does not terminate: no upper parameter is an exact nonpositive power of q")]
    NonTerminatingSeries,

    #[error("lower parameter {index} equals q^-{m}, so a lower Pochhammer factor vanishes")]
    LowerParameterPole { index: usize, m: i64 },

    #[error("Pochhammer factor vanishes identically: base {base}, shift q^{offset}")]
    PochhammerPole { base: String, offset: i64 },

    #[error("truncation budget exceeded: tail bound {bound:.3e} > tolerance {tol:.3e}")]
    TruncationBudget { bound: f64, tol: f64 },

    #[error("series did not converge within {terms} terms")]
    SeriesBudget { terms: usize },

    #[error("q-gamma pole at non-positive integer argument x = {x}")]
    QGammaPole { x: f64 },

    #[error("q-binomial index out of range: k = {k} not in 0..={g}")]
    BinomialOutOfRange { g: i64, k: i64 },

    #[error("contour is not the unit circle: induced moduli {moduli:?} must all be < 1")]
    ContourNotCircle { moduli: Vec<f64> },

    #[error("branch ambiguity: {name} must be positive real, got {value}")]
    BranchAmbiguity { name: String, value: String },

    #[error("quadrature pole at distance {dist:.3e} from the unit circle; need at least {min:.3e}")]
    PoleNearContour { dist: f64, min: f64 },

    #[error("pole collision at contour correction point {point}: {detail}")]
    PoleCollision { point: String, detail: String },

    #[error("denominator failed to cancel in operator application: {detail}")]
    CancellationFailure { detail: String },

    #[error("triangularity violated: operator applied to m[{input}] produced weight {output} outside the dominance ideal")]
    TriangularityViolation { input: String, output: String },

    #[error("degenerate eigenvalues: weights {a} and {b} share the whole eigenvalue vector")]
    DegenerateEigenvalue { a: String, b: String },

    #[error("odd half-integer power of t survived in {context}")]
    OddTauExponent { context: String },

    #[error("half powers failed to cancel: monomial has r-exponent {r_exp} and y-exponent {y_exp} of different parity")]
    HalfPowerParity { r_exp: i32, y_exp: i32 },

    #[error("exact division left a remainder: {detail}")]
    InexactDivision { detail: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
