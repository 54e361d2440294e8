use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("extension degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("field F_{p}^{k} is beyond the supported size")]
    FieldTooLarge { p: u64, k: usize },
    #[error("operation requires an odd prime, got 2")]
    EvenPrime,
    #[error("leading coefficient vanishes modulo {0}")]
    LeadingCoefficientVanishes(u64),
    #[error("polynomial degree {0} outside the supported range")]
    PolynomialDegree(usize),

    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} must be negative")]
    NotImaginary(i64),
    #[error("cubic is reducible over Q")]
    ReducibleCubic,
    #[error("no split prime below {0}")]
    SearchExhausted(u64),
    #[error("prime {0} ramifies")]
    RamifiedPrime(u64),
    #[error("discriminant ratio is not a nonzero rational square")]
    IncompatibleFields,
    #[error("level {0} is composite")]
    CompositeLevel(u64),
    #[error("level {0} is below 11")]
    LevelTooSmall(u64),
    #[error("class-number-one flag not set")]
    ClassNumberUnknown,

    #[error("bad reduction at {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("prime {0} divides a denominator")]
    DenominatorClash(u64),
    #[error("enumeration of {0} points exceeds the ceiling")]
    EnumerationTooLarge(u128),
    #[error("place degree {0} exceeds the supported bound")]
    PlaceDegreeTooLarge(u32),
    #[error("form does not map the curve to itself")]
    NotAnAutomorphism,
    #[error("matrix squared is not scalar")]
    NotAnInvolution,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("requested precision {0} exceeds the cap")]
    PrecisionOverflow(usize),
    #[error("form is divisible by the curve equation")]
    FormDivisibleByCurve,
    #[error("intersection degree {found} differs from Bezout bound {expected}")]
    BezoutMismatch { expected: u64, found: u64 },
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("no projection center off the curve over the prime field")]
    NoProjectionCenter,
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("divisor degrees differ: {0} vs {1}")]
    DegreeMismatch(u64, u64),
    #[error("auxiliary degree {0} exceeds the cap")]
    AuxiliaryDegreeOverflow(u32),
    #[error("brute-force search space too large")]
    SearchSpaceTooLarge,
    #[error("divisor matched several torsion classes: {0:?}")]
    MultipleMatches(Vec<u32>),
    #[error("n * [c0 - cinf] is not principal modulo p; torsion order {0} is inconsistent")]
    TorsionOrderMismatch(u32),
    #[error("cusp-analog points coincide modulo the prime")]
    CuspsCollide,

    #[error("coordinate field ramifies at {0}")]
    RamifiedCoordinateField(u64),
    #[error("unknown divisor label {0}")]
    UnknownLabel(String),
    #[error("lonely certificates at p = {0} are not involution-stable")]
    InvolutionUnstableCertificates(u64),
    #[error("reports belong to different curves or torsion orders")]
    MixedCurves,
    #[error("empty report list")]
    EmptyReportList,
}

impl Error {
    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::MultipleMatches(_) | Error::BezoutMismatch { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
