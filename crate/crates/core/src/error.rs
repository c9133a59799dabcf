use alloc::string::String;

use crate::scalar::Field;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("scalar from {0} used in {1}")]
    FieldMismatch(Field, Field),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("ring mismatch")]
    RingMismatch,

    #[error("matrix shapes do not compose: {0}")]
    ShapeMismatch(String),
    #[error("composition of consecutive maps is nonzero")]
    CompositionNonzero,

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("all partial derivatives of the potential vanish")]
    ZeroPotentialGradient,
    #[error("critical locus is not isolated")]
    NonIsolated,
    #[error("potential is not weighted homogeneous")]
    NonHomogeneous,

    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("functional does not detect the curvature (L(W) = 0)")]
    BadFunctional,
    #[error("cochain spaces need a finite-dimensional carrier")]
    InfiniteCarrier,
    #[error("no stabilization within the window: {0}")]
    NoStabilization(String),
    #[error("carrier has a basis element of positive degree")]
    PositiveDegreeCarrier,
    #[error("curvature is not central")]
    CurvatureNotCentral,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("characteristic {characteristic} too small for 1/{k}!")]
    CharacteristicTooSmall { characteristic: u64, k: usize },

    #[error("factorizations live over different models")]
    ModelMismatch,
    #[error("method unsupported: {0}")]
    MethodUnsupported(String),
    #[error("degree {degree} violates the Hom constraint mod {modulus}")]
    DegreeConstraintViolated { degree: i64, modulus: i64 },
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("twisted object fails the Maurer-Cartan equation")]
    MaurerCartanFails,

    #[error("sector {0} has a non-isolated critical locus")]
    NonIsolatedSector(String),
    #[error("characteristic {0} divides the group order")]
    BadCharacteristic(u64),
    #[error("potential is not invariant under the group action")]
    NotInvariant,
    #[error("field {0} has no primitive root of unity of order {1}")]
    NoRootOfUnity(Field, u64),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
}
