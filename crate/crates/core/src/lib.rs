//! Codebooks from generalised bent functions over `Z_Q`.
//!
//! Two families of unit-norm complex codebooks are built from phase vectors
//! `xi_Q^{j(a*pi(i)+b) + u*sigma(i)}` augmented with standard-basis rows, and
//! their maximum inner-product correlation is verified exactly: inner
//! products are sums of roots of unity, so squared magnitudes are certified
//! as rational numbers in `Z[xi_Q]` rather than compared in floating point.
//! The analysis layer computes `I_max` by brute force and by a
//! difference-class reduction, checks both against the Welch bound, and
//! regenerates parameter/optimality tables. A float path mirrors the exact
//! one for speed and is cross-checked against it.
//!
//! The `gbfcb` binary exposes the library as a CLI: `build`, `imax`,
//! `welch`, `table`, `gbf-check`, `verify`.

pub mod analysis;
pub mod cli;
pub mod construction;
pub mod cyclotomic;
pub mod error;
pub mod gbf;
pub mod ntheory;
pub mod output;

pub use analysis::{
    imax_bruteforce, imax_symmetry, inner_product, is_mwbe, ratio_report, table_rows, welch_bound,
    CorrelationReport, CorrelationValue, RatioReport, SweepMethod, SweepMode, TableRow, WelchBound,
};
pub use construction::{
    codeword_entry, Codebook, CodebookSpec, Codeword, CodewordKind, Construction, EntryValue,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt, RationalMagnitudeSq};
pub use error::{Error, Result};
pub use gbf::{
    fourier_coefficient, is_generalized_bent, make_kumar_gbf, BentnessReport, FourierCoefficient,
    FunctionZQ, PermSpec, PermutationZQ,
};
pub use ntheory::{gcd, smallest_prime_factor, solve_linear_congruence, Modulus, Residue};
