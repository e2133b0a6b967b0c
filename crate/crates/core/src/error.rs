//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by validation, construction and analysis routines.
///
/// Every variant names the violated precondition so that CLI output can
/// surface it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2 (got {0})")]
    ModulusTooSmall(u64),
    #[error("construction two requires q >= 3 (got {0})")]
    ConstructionTwoNeedsQAtLeast3(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("value {value} is not a residue modulo {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },
    #[error("image list of length {got} is not a permutation of Z_{modulus}")]
    NotAPermutation { modulus: u64, got: usize },
    #[error("affine map x -> {c}*x + {d} is not a bijection mod {modulus}: gcd({c}, {modulus}) != 1")]
    AffineNotBijective { c: u64, d: u64, modulus: u64 },
    #[error("function table has {got} entries, expected q^m = {expected}")]
    BadTableLength { got: usize, expected: u128 },
    #[error("table entry {value} at index {index} is not a residue modulo {modulus}")]
    BadTableEntry { index: usize, value: u64, modulus: u64 },
    #[error("point has {got} coordinates, function takes {expected}")]
    ArityMismatch { got: usize, expected: u32 },
    #[error("domain size q^m = {size} exceeds the guard of {guard}")]
    DomainTooLarge { size: u128, guard: u64 },
    #[error("coefficient sequence has {got} entries, expected {expected}")]
    BadCoefficientLength { got: usize, expected: u64 },
    #[error("rational magnitude needs numerator >= 0 and denominator > 0 (got {num}/{den})")]
    BadRational { num: String, den: String },
    #[error("entry index {index} out of range for codeword length {k}")]
    EntryOutOfRange { index: usize, k: usize },
    #[error("codeword lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("|<c_i, c_j>|^2 is not a rational number for pair ({i}, {j}); the codebook violates its value-set contract")]
    NonRationalMagnitude { i: usize, j: usize },
    #[error("exact sweep guard exceeded: N = {n} > {guard}; use float mode")]
    ExactSweepGuard { n: usize, guard: usize },
    #[error("float sweep guard exceeded: N*K = {cells} cells > {guard}")]
    FloatSweepGuard { cells: u128, guard: u64 },
    #[error("codebook too large to build: N*K = {cells} cells exceeds {guard}")]
    CodebookTooLarge { cells: u128, guard: u64 },
    #[error("modulus {0} exceeds the exponent storage limit {1}")]
    ModulusTooLargeForStorage(u64, u64),
    #[error("Welch bound requires N > K >= 1 (got N = {n}, K = {k})")]
    WelchRequiresNGreaterK { n: u64, k: u64 },
    #[error("at least 2 codewords required (got {0})")]
    TooFewCodewords(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
