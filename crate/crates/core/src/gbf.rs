//! Generalised Boolean functions `Z_Q^m -> Z_Q`, their Fourier coefficients,
//! a bentness decision procedure, and the two-variable family
//! `f(x1, x2) = x2*Omega(x1) + Theta(x1)` (bent for any permutation `Omega`
//! and any function `Theta`).
//!
//! Bentness is decided in exact arithmetic: `|F_f(a)| = 1` is equivalent to
//! `S(a) * conj(S(a)) = q^m` in `Z[xi_q]`, where `S(a)` is the unnormalized
//! Fourier sum. The float embedding is reporting only — near machine
//! precision it cannot separate `|F| = 1` from `|F| = 1 - eps`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::ntheory::{gcd, Modulus};

/// Largest domain size `q^m` the library will enumerate exhaustively.
pub const DOMAIN_GUARD: u64 = 1_000_000;

/// A bijection on `Z_q`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationZQ {
    modulus: Modulus,
    images: Vec<u64>,
}

impl PermutationZQ {
    /// Wrap an explicit image list; every residue must appear exactly once.
    pub fn new(modulus: Modulus, images: Vec<u64>) -> Result<Self> {
        let q = modulus.get();
        if images.len() as u64 != q {
            return Err(Error::NotAPermutation {
                modulus: q,
                got: images.len(),
            });
        }
        let mut seen = vec![false; q as usize];
        for &v in &images {
            if v >= q || seen[v as usize] {
                return Err(Error::NotAPermutation {
                    modulus: q,
                    got: images.len(),
                });
            }
            seen[v as usize] = true;
        }
        Ok(PermutationZQ { modulus, images })
    }

    pub fn identity(modulus: Modulus) -> Self {
        PermutationZQ {
            modulus,
            images: (0..modulus.get()).collect(),
        }
    }

    /// The affine map `x -> c*x + d (mod q)`; bijective iff `gcd(c, q) = 1`.
    pub fn affine(modulus: Modulus, c: u64, d: u64) -> Result<Self> {
        let q = modulus.get();
        if gcd(c % q, q) != 1 {
            return Err(Error::AffineNotBijective { c, d, modulus: q });
        }
        let images = (0..q)
            .map(|x| ((c as u128 * x as u128 + d as u128) % q as u128) as u64)
            .collect();
        Ok(PermutationZQ { modulus, images })
    }

    /// Seeded Fisher-Yates shuffle of the identity; equal seeds give equal
    /// permutations on every platform.
    pub fn seeded_random(modulus: Modulus, seed: u64) -> Self {
        let q = modulus.get();
        let mut images: Vec<u64> = (0..q).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..images.len()).rev() {
            // Modulo bias is immaterial for generating test permutations.
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        PermutationZQ { modulus, images }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn images(&self) -> &[u64] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.images[(x % self.modulus.get()) as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u64; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u64;
        }
        PermutationZQ {
            modulus: self.modulus,
            images: inv,
        }
    }
}

/// How to obtain a permutation: an explicit image list or a named generator.
///
/// Text forms (CLI flags and JSON strings share the syntax): `identity`,
/// `affine:C,D`, `random:SEED` (or bare `random`, which defers to a
/// top-level seed), or a JSON array like `[0,2,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermSpec {
    Identity,
    Affine { c: u64, d: u64 },
    Random { seed: Option<u64> },
    Explicit(Vec<u64>),
}

impl PermSpec {
    /// Build the permutation, using `fallback_seed` for `random` specs that
    /// carry no seed of their own.
    pub fn realize(&self, modulus: Modulus, fallback_seed: Option<u64>) -> Result<PermutationZQ> {
        match self {
            PermSpec::Identity => Ok(PermutationZQ::identity(modulus)),
            PermSpec::Affine { c, d } => PermutationZQ::affine(modulus, *c, *d),
            PermSpec::Random { seed } => {
                let seed = seed.or(fallback_seed).ok_or_else(|| {
                    Error::InvalidParameter(
                        "random permutation spec needs a seed (use random:SEED or a top-level seed)"
                            .into(),
                    )
                })?;
                Ok(PermutationZQ::seeded_random(modulus, seed))
            }
            PermSpec::Explicit(images) => PermutationZQ::new(modulus, images.clone()),
        }
    }
}

impl fmt::Display for PermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermSpec::Identity => write!(f, "identity"),
            PermSpec::Affine { c, d } => write!(f, "affine:{c},{d}"),
            PermSpec::Random { seed: Some(s) } => write!(f, "random:{s}"),
            PermSpec::Random { seed: None } => write!(f, "random"),
            PermSpec::Explicit(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl FromStr for PermSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "identity" {
            return Ok(PermSpec::Identity);
        }
        if s == "random" {
            return Ok(PermSpec::Random { seed: None });
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let seed = rest
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("bad random seed: {rest:?}")))?;
            return Ok(PermSpec::Random { seed: Some(seed) });
        }
        if let Some(rest) = s.strip_prefix("affine:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "affine spec needs affine:C,D (got {s:?})"
                )));
            }
            let c = parts[0].trim().parse::<u64>().map_err(|_| {
                Error::InvalidParameter(format!("bad affine coefficient: {:?}", parts[0]))
            })?;
            let d = parts[1].trim().parse::<u64>().map_err(|_| {
                Error::InvalidParameter(format!("bad affine offset: {:?}", parts[1]))
            })?;
            return Ok(PermSpec::Affine { c, d });
        }
        if s.starts_with('[') {
            let images: Vec<u64> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidParameter(format!("bad image list {s:?}: {e}")))?;
            return Ok(PermSpec::Explicit(images));
        }
        Err(Error::InvalidParameter(format!(
            "unrecognized permutation spec {s:?} (expected identity, affine:C,D, random:SEED, or [..])"
        )))
    }
}

impl Serialize for PermSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PermSpec::Explicit(v) => v.serialize(serializer),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for PermSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            List(Vec<u64>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => PermSpec::from_str(&s).map_err(D::Error::custom),
            Repr::List(v) => Ok(PermSpec::Explicit(v)),
        }
    }
}

/// A function `Z_q^m -> Z_q` tabulated over its whole domain.
///
/// The table is indexed row-major with the last coordinate fastest:
/// `index(x) = x_1*q^{m-1} + ... + x_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionZQ {
    modulus: Modulus,
    arity: u32,
    table: Vec<u64>,
}

impl FunctionZQ {
    pub fn new(modulus: Modulus, arity: u32, table: Vec<u64>) -> Result<Self> {
        let q = modulus.get();
        if arity == 0 {
            return Err(Error::InvalidParameter("arity m must be >= 1".into()));
        }
        let size = (q as u128).checked_pow(arity).unwrap_or(u128::MAX);
        if size > DOMAIN_GUARD as u128 {
            return Err(Error::DomainTooLarge {
                size,
                guard: DOMAIN_GUARD,
            });
        }
        if table.len() as u128 != size {
            return Err(Error::BadTableLength {
                got: table.len(),
                expected: size,
            });
        }
        for (index, &value) in table.iter().enumerate() {
            if value >= q {
                return Err(Error::BadTableEntry {
                    index,
                    value,
                    modulus: q,
                });
            }
        }
        Ok(FunctionZQ {
            modulus,
            arity,
            table,
        })
    }

    pub fn constant(modulus: Modulus, arity: u32, value: u64) -> Result<Self> {
        let size = (modulus.get() as u128).checked_pow(arity).unwrap_or(u128::MAX);
        if size > DOMAIN_GUARD as u128 {
            return Err(Error::DomainTooLarge {
                size,
                guard: DOMAIN_GUARD,
            });
        }
        Self::new(modulus, arity, vec![value % modulus.get(); size as usize])
    }

    /// Tabulate `f` over the whole domain.
    pub fn from_fn(modulus: Modulus, arity: u32, mut f: impl FnMut(&[u64]) -> u64) -> Result<Self> {
        let q = modulus.get();
        let size = (q as u128).checked_pow(arity).unwrap_or(u128::MAX);
        if size > DOMAIN_GUARD as u128 {
            return Err(Error::DomainTooLarge {
                size,
                guard: DOMAIN_GUARD,
            });
        }
        let mut table = Vec::with_capacity(size as usize);
        let mut point = vec![0u64; arity as usize];
        for flat in 0..size as u64 {
            decode_point(flat, q, &mut point);
            table.push(f(&point) % q);
        }
        Self::new(modulus, arity, table)
    }

    /// A univariate function with a seeded uniform random table.
    pub fn seeded_univariate(modulus: Modulus, seed: u64) -> Self {
        let q = modulus.get();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = (0..q).map(|_| rng.next_u64() % q).collect();
        FunctionZQ {
            modulus,
            arity: 1,
            table,
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.arity
    }

    #[inline]
    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn domain_size(&self) -> u64 {
        (self.modulus.get()).pow(self.arity)
    }

    pub fn eval(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.arity as usize {
            return Err(Error::ArityMismatch {
                got: point.len(),
                expected: self.arity,
            });
        }
        let q = self.modulus.get();
        let mut flat = 0u64;
        for &x in point {
            if x >= q {
                return Err(Error::ResidueOutOfRange {
                    value: x,
                    modulus: q,
                });
            }
            flat = flat * q + x;
        }
        Ok(self.table[flat as usize])
    }
}

#[inline]
fn decode_point(mut flat: u64, q: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % q;
        flat /= q;
    }
}

/// One Fourier coefficient: the exact unnormalized sum
/// `S(a) = sum_x xi_q^{f(x) - a.x}` and its normalized float value
/// `S(a) / sqrt(q^m)`.
#[derive(Clone, Debug)]
pub struct FourierCoefficient {
    pub sum: CyclotomicInt,
    pub value: Complex64,
}

impl FourierCoefficient {
    /// `|F_f(a)|` from the float embedding.
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }
}

fn fourier_sum_counts(f: &FunctionZQ, a: &[u64]) -> Vec<i64> {
    let q = f.modulus.get();
    let m = f.arity as usize;
    let mut counts = vec![0i64; q as usize];
    let mut point = vec![0u64; m];
    for (flat, &fx) in f.table.iter().enumerate() {
        decode_point(flat as u64, q, &mut point);
        let mut dot = 0u64;
        for (ai, xi) in a.iter().zip(&point) {
            dot = (dot + ai * xi) % q;
        }
        let e = (fx + q - dot) % q;
        counts[e as usize] += 1;
    }
    counts
}

/// The Fourier coefficient `F_f(a)` of `f` at `a`, exact and float.
pub fn fourier_coefficient(f: &FunctionZQ, a: &[u64]) -> Result<FourierCoefficient> {
    if a.len() != f.arity as usize {
        return Err(Error::ArityMismatch {
            got: a.len(),
            expected: f.arity,
        });
    }
    let q = f.modulus.get();
    for &ai in a {
        if ai >= q {
            return Err(Error::ResidueOutOfRange {
                value: ai,
                modulus: q,
            });
        }
    }
    let counts = fourier_sum_counts(f, a);
    let sum = CyclotomicInt::from_coeffs(
        f.modulus,
        counts.iter().map(|&c| BigInt::from(c)).collect(),
    )?;
    let norm = (f.domain_size() as f64).sqrt();
    let value = sum.embed() / norm;
    Ok(FourierCoefficient { sum, value })
}

/// Per-`a` outcome of the bentness check.
#[derive(Clone, Debug)]
pub struct BentnessEntry {
    pub a: Vec<u64>,
    /// `rational_value(S(a) * conj(S(a)))` when that product is a rational
    /// integer; bentness requires it to equal `q^m` at every `a`.
    pub sum_mag_sq: Option<BigInt>,
    /// `|F_f(a)|` from the float embedding (reporting only).
    pub float_mag: f64,
    pub unit: bool,
}

/// Verdict plus the full per-`a` magnitude table.
#[derive(Clone, Debug)]
pub struct BentnessReport {
    pub q: u64,
    pub m: u32,
    pub bent: bool,
    pub entries: Vec<BentnessEntry>,
}

/// Decide whether `f` is generalised bent: `|F_f(a)| = 1` for every `a`,
/// certified exactly via `S(a) * conj(S(a)) = q^m` in `Z[xi_q]`.
pub fn is_generalized_bent(f: &FunctionZQ) -> BentnessReport {
    let q = f.modulus.get();
    let m = f.arity;
    let size = f.domain_size();
    let target = BigInt::from(size);
    let norm = (size as f64).sqrt();
    let entries: Vec<BentnessEntry> = (0..size)
        .into_par_iter()
        .map(|flat| {
            let mut a = vec![0u64; m as usize];
            decode_point(flat, q, &mut a);
            let counts = fourier_sum_counts(f, &a);
            let sum = CyclotomicInt::from_coeffs(
                f.modulus,
                counts.iter().map(|&c| BigInt::from(c)).collect(),
            )
            .expect("count vector has length q");
            let mag = sum.mul(&sum.conj()).expect("same modulus");
            let sum_mag_sq = mag.rational_value();
            let unit = sum_mag_sq.as_ref() == Some(&target);
            let float_mag = sum.embed().norm() / norm;
            BentnessEntry {
                a,
                sum_mag_sq,
                float_mag,
                unit,
            }
        })
        .collect();
    BentnessReport {
        q,
        m,
        bent: entries.iter().all(|e| e.unit),
        entries,
    }
}

/// The two-variable function `f(x1, x2) = x2*omega(x1) + theta(x1) (mod q)`.
pub fn make_kumar_gbf(omega: &PermutationZQ, theta: &FunctionZQ) -> Result<FunctionZQ> {
    if omega.modulus() != theta.modulus() {
        return Err(Error::ModulusMismatch(
            omega.modulus().get(),
            theta.modulus().get(),
        ));
    }
    if theta.arity() != 1 {
        return Err(Error::ArityMismatch {
            got: theta.arity() as usize,
            expected: 1,
        });
    }
    let q = omega.modulus().get();
    FunctionZQ::from_fn(omega.modulus(), 2, |x| {
        let (x1, x2) = (x[0], x[1]);
        ((x2 as u128 * omega.apply(x1) as u128 + theta.table()[x1 as usize] as u128)
            % q as u128) as u64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    /// Independent float oracle: direct complex summation of the normalized
    /// Fourier coefficient, bypassing the exact path entirely.
    fn fourier_float_oracle(f: &FunctionZQ, a: &[u64]) -> Complex64 {
        let qq = f.modulus().get();
        let m = f.arity() as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut point = vec![0u64; m];
        for (flat, &fx) in f.table().iter().enumerate() {
            decode_point(flat as u64, qq, &mut point);
            let mut dot = 0u64;
            for (ai, xi) in a.iter().zip(&point) {
                dot = (dot + ai * xi) % qq;
            }
            let e = ((fx + qq - dot) % qq) as f64;
            let theta = 2.0 * std::f64::consts::PI * e / qq as f64;
            acc += Complex64::new(theta.cos(), theta.sin());
        }
        acc / (f.domain_size() as f64).sqrt()
    }

    #[test]
    fn permutation_validation() {
        assert!(PermutationZQ::new(q(3), vec![0, 1, 2]).is_ok());
        assert!(PermutationZQ::new(q(3), vec![0, 1, 1]).is_err());
        assert!(PermutationZQ::new(q(3), vec![0, 1]).is_err());
        assert!(PermutationZQ::new(q(3), vec![0, 1, 3]).is_err());
    }

    #[test]
    fn affine_needs_coprime_slope() {
        assert!(PermutationZQ::affine(q(4), 2, 1).is_err());
        let p = PermutationZQ::affine(q(4), 3, 1).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
    }

    #[test]
    fn seeded_shuffle_is_reproducible() {
        let a = PermutationZQ::seeded_random(q(12), 42);
        let b = PermutationZQ::seeded_random(q(12), 42);
        let c = PermutationZQ::seeded_random(q(12), 43);
        assert_eq!(a, b);
        assert_ne!(a, c);
        // still a permutation
        PermutationZQ::new(q(12), a.images().to_vec()).unwrap();
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = PermutationZQ::seeded_random(q(9), 7);
        let inv = p.inverse();
        for x in 0..9 {
            assert_eq!(inv.apply(p.apply(x)), x);
        }
    }

    #[test]
    fn perm_spec_roundtrip() {
        for s in ["identity", "affine:3,1", "random:42", "[0,2,1]"] {
            let spec: PermSpec = s.parse().unwrap();
            let json = serde_json::to_string(&spec).unwrap();
            let back: PermSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(spec, back, "spec {s}");
        }
        assert!("bogus".parse::<PermSpec>().is_err());
        assert!(PermSpec::Random { seed: None }.realize(q(5), None).is_err());
        assert!(PermSpec::Random { seed: None }.realize(q(5), Some(1)).is_ok());
    }

    #[test]
    fn function_table_validation() {
        assert!(FunctionZQ::new(q(3), 1, vec![0, 1, 2]).is_ok());
        assert!(FunctionZQ::new(q(3), 1, vec![0, 1]).is_err());
        assert!(FunctionZQ::new(q(3), 1, vec![0, 1, 3]).is_err());
        assert!(FunctionZQ::new(q(3), 2, vec![0; 9]).is_ok());
        // 10^3 > guard only for huge q; check the guard fires
        assert!(FunctionZQ::new(q(101), 3, vec![0; 1_030_301]).is_err());
    }

    #[test]
    fn eval_uses_last_coordinate_fastest() {
        let f = FunctionZQ::new(q(3), 2, (0..9).map(|i| i % 3).collect()).unwrap();
        // index(x1, x2) = 3*x1 + x2
        assert_eq!(f.eval(&[1, 2]).unwrap(), (3 + 2) % 3);
        assert!(f.eval(&[1]).is_err());
        assert!(f.eval(&[1, 3]).is_err());
    }

    #[test]
    fn fourier_constant_function_q3() {
        let f = FunctionZQ::constant(q(3), 1, 0).unwrap();
        let c0 = fourier_coefficient(&f, &[0]).unwrap();
        assert_eq!(c0.sum.rational_value(), Some(BigInt::from(3)));
        assert!((c0.magnitude() - 3f64.sqrt()).abs() < 1e-12);
        let c1 = fourier_coefficient(&f, &[1]).unwrap();
        assert!(c1.sum.is_zero());
        assert!(c1.magnitude() < 1e-12);
    }

    #[test]
    fn fourier_product_function_q4() {
        // f(x1, x2) = x1*x2: |F_f(0,0)| = 1, frozen from the 16-term float
        // oracle.
        let omega = PermutationZQ::identity(q(4));
        let theta = FunctionZQ::constant(q(4), 1, 0).unwrap();
        let f = make_kumar_gbf(&omega, &theta).unwrap();
        let c = fourier_coefficient(&f, &[0, 0]).unwrap();
        assert!((c.magnitude() - 1.0).abs() < 1e-12);
        let oracle = fourier_float_oracle(&f, &[0, 0]);
        assert!((c.value - oracle).norm() < 1e-12);
    }

    #[test]
    fn exact_and_float_fourier_agree() {
        for qq in [2u64, 3, 4, 5, 6, 8] {
            let omega = PermutationZQ::seeded_random(q(qq), qq);
            let theta = FunctionZQ::seeded_univariate(q(qq), qq + 1);
            let f = make_kumar_gbf(&omega, &theta).unwrap();
            let mut a = vec![0u64; 2];
            for flat in 0..qq * qq {
                decode_point(flat, qq, &mut a);
                let c = fourier_coefficient(&f, &a).unwrap();
                let oracle = fourier_float_oracle(&f, &a);
                assert!((c.value - oracle).norm() < 1e-9, "q={qq} a={a:?}");
            }
        }
    }

    #[test]
    fn kumar_functions_are_bent() {
        for qq in 2u64..=6 {
            let omega = PermutationZQ::seeded_random(q(qq), 3 * qq);
            let theta = FunctionZQ::seeded_univariate(q(qq), 3 * qq + 1);
            let f = make_kumar_gbf(&omega, &theta).unwrap();
            let report = is_generalized_bent(&f);
            assert!(report.bent, "q = {qq}");
            assert_eq!(report.entries.len(), (qq * qq) as usize);
            for e in &report.entries {
                assert!((e.float_mag - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn constant_zero_is_not_bent() {
        for qq in 2u64..=8 {
            let f = FunctionZQ::constant(q(qq), 1, 0).unwrap();
            let report = is_generalized_bent(&f);
            assert!(!report.bent, "q = {qq}");
            // F_f(0) has magnitude sqrt(q), not 1
            let zero_entry = &report.entries[0];
            assert_eq!(zero_entry.sum_mag_sq, Some(BigInt::from(qq * qq)));
            assert!(!zero_entry.unit);
        }
    }

    #[test]
    fn square_function_mod5_is_bent() {
        // f(x) = x^2 over Z_5. Frozen from the exhaustive 5x5 float oracle
        // table: every |F_f(a)| = 1.
        let f = FunctionZQ::from_fn(q(5), 1, |x| (x[0] * x[0]) % 5).unwrap();
        for a in 0..5u64 {
            let mag = fourier_float_oracle(&f, &[a]).norm();
            assert!((mag - 1.0).abs() < 1e-9, "oracle at a={a}");
        }
        let report = is_generalized_bent(&f);
        assert!(report.bent);
    }

    #[test]
    fn kumar_table_entries() {
        // identity/zero at q=3, evaluated at (2,2): 2*2 + 0 = 4 = 1 (mod 3)
        let f = make_kumar_gbf(
            &PermutationZQ::identity(q(3)),
            &FunctionZQ::constant(q(3), 1, 0).unwrap(),
        )
        .unwrap();
        assert_eq!(f.eval(&[2, 2]).unwrap(), 1);

        // omega = x+1 mod 4, theta = x, at (3,2): 2*omega(3) + 3 = 2*0 + 3 = 3
        let omega = PermutationZQ::affine(q(4), 1, 1).unwrap();
        let theta = FunctionZQ::from_fn(q(4), 1, |x| x[0]).unwrap();
        let f = make_kumar_gbf(&omega, &theta).unwrap();
        assert_eq!(f.eval(&[3, 2]).unwrap(), 3);

        // q=2, identity/zero is the two-bit product function
        let f = make_kumar_gbf(
            &PermutationZQ::identity(q(2)),
            &FunctionZQ::constant(q(2), 1, 0).unwrap(),
        )
        .unwrap();
        assert_eq!(f.table(), &[0, 0, 0, 1]);
    }

    #[test]
    fn kumar_rejects_mismatches() {
        let omega = PermutationZQ::identity(q(3));
        let theta4 = FunctionZQ::constant(q(4), 1, 0).unwrap();
        assert!(make_kumar_gbf(&omega, &theta4).is_err());
        let theta_m2 = FunctionZQ::constant(q(3), 2, 0).unwrap();
        assert!(make_kumar_gbf(&omega, &theta_m2).is_err());
    }

    #[test]
    fn parseval_sum_over_fourier_table() {
        // sum_a S(a)*conj(S(a)) = q^{2m} exactly.
        for qq in [2u64, 3, 4, 6] {
            let omega = PermutationZQ::seeded_random(q(qq), 11 * qq);
            let theta = FunctionZQ::seeded_univariate(q(qq), 11 * qq + 5);
            let f = make_kumar_gbf(&omega, &theta).unwrap();
            let mut total = BigInt::zero();
            let report = is_generalized_bent(&f);
            for e in &report.entries {
                total += e.sum_mag_sq.clone().expect("bent sums are rational");
            }
            assert_eq!(total, BigInt::from(qq * qq * qq * qq), "q = {qq}");
        }
    }

    #[test]
    fn fourier_rejects_bad_points() {
        let f = FunctionZQ::constant(q(3), 2, 0).unwrap();
        assert!(fourier_coefficient(&f, &[0]).is_err());
        assert!(fourier_coefficient(&f, &[0, 3]).is_err());
    }
}
