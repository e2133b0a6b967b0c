//! Pairwise correlation sweeps.
//!
//! Exact brute force walks all `N(N-1)/2` pairs sequentially; each pair's
//! inner-product sum is a difference histogram of exponents, and its squared
//! magnitude is certified rational by reduction modulo `Phi_q`. The float
//! brute force materializes codewords as complex rows and runs a tiled,
//! parallel sweep. The symmetry-reduced path evaluates one representative
//! pair per difference class `(a-a', b-b', u-u')` — the correlation of two
//! phase words depends only on that triple — and reweights by class sizes,
//! with the basis-to-basis and basis-to-phase blocks added in closed form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use super::{welch_bound, CorrelationReport, CorrelationValue, SweepMethod, SweepMode};
use crate::construction::{Codebook, Codeword, CodewordKind};
use crate::cyclotomic::{CyclotomicInt, RationalMagnitudeSq};
use crate::error::{Error, Result};
use crate::ntheory::Modulus;

/// Largest `N` the exact brute-force sweep accepts.
pub const EXACT_SWEEP_GUARD: usize = 20_000;

/// Largest `N*K` cell count the float sweep will materialize.
pub const FLOAT_SWEEP_GUARD: u64 = 1 << 24;

/// Float histograms bucket `mag^2` on this grid.
const FLOAT_HIST_GRID: f64 = 1e10;

/// Row-block edge for the tiled float sweep.
const BLOCK: usize = 64;

fn root_table(q: u64) -> Vec<Complex64> {
    (0..q)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / q as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// Exact `|<c1, c2>|^2`, or `None` when the squared magnitude is not a
/// rational number (impossible for codebooks built by this crate).
fn exact_pair_mag_sq(
    c1: &Codeword,
    c2: &Codeword,
    q: Modulus,
    diff_counts: &mut [i64],
) -> Result<Option<RationalMagnitudeSq>> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch(c1.len(), c2.len()));
    }
    match (c1.kind(), c2.kind()) {
        (CodewordKind::StandardBasis { index: i }, CodewordKind::StandardBasis { index: j }) => {
            Ok(Some(if i == j {
                RationalMagnitudeSq::one()
            } else {
                RationalMagnitudeSq::zero()
            }))
        }
        (CodewordKind::StandardBasis { .. }, CodewordKind::Phase { scale_sq, .. })
        | (CodewordKind::Phase { scale_sq, .. }, CodewordKind::StandardBasis { .. }) => {
            // Picking out one entry of magnitude sqrt(scale_sq).
            Ok(Some(scale_sq.clone()))
        }
        (
            CodewordKind::Phase {
                exponents: e1,
                scale_sq: s1,
            },
            CodewordKind::Phase {
                exponents: e2,
                scale_sq: s2,
            },
        ) => {
            let qq = q.get() as usize;
            diff_counts.fill(0);
            for (a, b) in e1.iter().zip(e2) {
                let d = (*a as usize + qq - *b as usize) % qq;
                diff_counts[d] += 1;
            }
            // T = S * conj(S) over Z[xi_q]: T_t = sum over d1 - d2 = t (mod q)
            // of counts[d1] * counts[d2]. Counts are bounded by K, so the
            // products stay far inside i128.
            let mut conv = vec![0i128; qq];
            for d1 in 0..qq {
                let a = diff_counts[d1];
                if a == 0 {
                    continue;
                }
                for d2 in 0..qq {
                    let b = diff_counts[d2];
                    if b == 0 {
                        continue;
                    }
                    conv[(d1 + qq - d2) % qq] += a as i128 * b as i128;
                }
            }
            let t = CyclotomicInt::from_coeffs(q, conv.into_iter().map(BigInt::from).collect())?;
            match t.rational_value() {
                None => Ok(None),
                Some(n) => {
                    debug_assert!(!n.is_negative(), "|S|^2 cannot be negative");
                    let mag = BigRational::from(n) * s1.as_ratio() * s2.as_ratio();
                    Ok(Some(RationalMagnitudeSq::from_ratio(mag)?))
                }
            }
        }
    }
}

/// Float inner product straight from the exponent representation.
fn float_pair(c1: &Codeword, c2: &Codeword, roots: &[Complex64]) -> Complex64 {
    let q = roots.len();
    match (c1.kind(), c2.kind()) {
        (CodewordKind::StandardBasis { index: i }, CodewordKind::StandardBasis { index: j }) => {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        }
        (CodewordKind::StandardBasis { index }, CodewordKind::Phase { exponents, scale_sq }) => {
            let amp = scale_sq.sqrt_f64();
            roots[exponents[*index] as usize].conj() * amp
        }
        (CodewordKind::Phase { exponents, scale_sq }, CodewordKind::StandardBasis { index }) => {
            let amp = scale_sq.sqrt_f64();
            roots[exponents[*index] as usize] * amp
        }
        (
            CodewordKind::Phase {
                exponents: e1,
                scale_sq: s1,
            },
            CodewordKind::Phase {
                exponents: e2,
                scale_sq: s2,
            },
        ) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in e1.iter().zip(e2) {
                acc += roots[(*a as usize + q - *b as usize) % q];
            }
            acc * (s1.as_ratio() * s2.as_ratio()).clone().map(|_| ()).pipe_scale(s1, s2)
        }
    }
}

// Helper trait stub removed; see float_pair_scaled below.

/// The correlation of a single pair, exact and float.
///
/// Index arguments in errors refer to the positional pair `(0, 1)`.
pub fn inner_product(c1: &Codeword, c2: &Codeword, q: Modulus) -> Result<CorrelationValue> {
    let mut scratch = vec![0i64; q.get() as usize];
    let mag_sq = exact_pair_mag_sq(c1, c2, q, &mut scratch)?
        .ok_or(Error::NonRationalMagnitude { i: 0, j: 1 })?;
    let roots = root_table(q.get());
    let float_mag = float_pair_scaled(c1, c2, &roots).norm();
    Ok(CorrelationValue { mag_sq, float_mag })
}

/// Float inner product with the scale applied.
fn float_pair_scaled(c1: &Codeword, c2: &Codeword, roots: &[Complex64]) -> Complex64 {
    let q = roots.len();
    match (c1.kind(), c2.kind()) {
        (CodewordKind::StandardBasis { index: i }, CodewordKind::StandardBasis { index: j }) => {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        }
        (CodewordKind::StandardBasis { index }, CodewordKind::Phase { exponents, scale_sq }) => {
            roots[exponents[*index] as usize].conj() * scale_sq.sqrt_f64()
        }
        (CodewordKind::Phase { exponents, scale_sq }, CodewordKind::StandardBasis { index }) => {
            roots[exponents[*index] as usize] * scale_sq.sqrt_f64()
        }
        (
            CodewordKind::Phase {
                exponents: e1,
                scale_sq: s1,
            },
            CodewordKind::Phase {
                exponents: e2,
                scale_sq: s2,
            },
        ) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in e1.iter().zip(e2) {
                acc += roots[(*a as usize + q - *b as usize) % q];
            }
            acc * (s1.sqrt_f64() * s2.sqrt_f64())
        }
    }
}

fn quantize(mag_sq: f64) -> u64 {
    (mag_sq * FLOAT_HIST_GRID).round() as u64
}

/// Dense complex rows, row-major `n x k`.
fn materialize(words: &[Codeword], q: Modulus) -> Vec<Complex64> {
    let k = words[0].len();
    let roots = root_table(q.get());
    let mut rows = vec![Complex64::new(0.0, 0.0); words.len() * k];
    for (i, word) in words.iter().enumerate() {
        let row = &mut rows[i * k..(i + 1) * k];
        match word.kind() {
            CodewordKind::StandardBasis { index } => {
                row[*index] = Complex64::new(1.0, 0.0);
            }
            CodewordKind::Phase {
                exponents,
                scale_sq,
            } => {
                let amp = scale_sq.sqrt_f64();
                for (slot, &e) in row.iter_mut().zip(exponents) {
                    *slot = roots[e as usize] * amp;
                }
            }
        }
    }
    rows
}

#[inline]
fn dot_mag_sq(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.iter().zip(b) {
        // x * conj(y)
        re += x.re * y.re + x.im * y.im;
        im += x.im * y.re - x.re * y.im;
    }
    re * re + im * im
}

#[derive(Default)]
struct FloatAcc {
    max_sq: f64,
    hist: BTreeMap<u64, u64>,
    pairs: u64,
}

impl FloatAcc {
    fn record(&mut self, mag_sq: f64) {
        if mag_sq > self.max_sq {
            self.max_sq = mag_sq;
        }
        *self.hist.entry(quantize(mag_sq)).or_insert(0) += 1;
        self.pairs += 1;
    }

    fn merge(mut self, other: FloatAcc) -> FloatAcc {
        if other.max_sq > self.max_sq {
            self.max_sq = other.max_sq;
        }
        for (k, v) in other.hist {
            *self.hist.entry(k).or_insert(0) += v;
        }
        self.pairs += other.pairs;
        self
    }
}

fn validate_set(words: &[Codeword]) -> Result<(usize, usize)> {
    if words.len() < 2 {
        return Err(Error::TooFewCodewords(words.len()));
    }
    let k = words[0].len();
    for w in words {
        if w.len() != k {
            return Err(Error::LengthMismatch(k, w.len()));
        }
    }
    Ok((words.len(), k))
}

/// Brute-force pairwise sweep over an arbitrary codeword set.
///
/// Exact and both modes are bounded by [`EXACT_SWEEP_GUARD`]; float mode by
/// [`FLOAT_SWEEP_GUARD`] cells. The float sweep is tiled over row blocks and
/// parallelized; its reduction (max, histogram merge) is order-independent,
/// so results do not depend on the thread schedule.
pub fn sweep_codewords(words: &[Codeword], q: Modulus, mode: SweepMode) -> Result<CorrelationReport> {
    let (n, k) = validate_set(words)?;
    if mode.wants_exact() && n > EXACT_SWEEP_GUARD {
        return Err(Error::ExactSweepGuard {
            n,
            guard: EXACT_SWEEP_GUARD,
        });
    }
    if mode.wants_float() {
        let cells = n as u128 * k as u128;
        if cells > FLOAT_SWEEP_GUARD as u128 {
            return Err(Error::FloatSweepGuard {
                cells,
                guard: FLOAT_SWEEP_GUARD,
            });
        }
    }
    let welch = welch_bound(n as u64, k as u64)?;

    let mut imax_sq: Option<RationalMagnitudeSq> = None;
    let mut histogram: Option<BTreeMap<RationalMagnitudeSq, u64>> = None;
    let mut float_histogram: Option<BTreeMap<u64, u64>> = None;
    let mut imax_float = 0.0f64;
    let mut max_dev: Option<f64> = None;

    match mode {
        SweepMode::Exact => {
            let mut hist = BTreeMap::new();
            let mut scratch = vec![0i64; q.get() as usize];
            for i in 0..n {
                for j in (i + 1)..n {
                    let mag = exact_pair_mag_sq(&words[i], &words[j], q, &mut scratch)?
                        .ok_or(Error::NonRationalMagnitude { i, j })?;
                    *hist.entry(mag).or_insert(0) += 1;
                }
            }
            let max = hist
                .keys()
                .next_back()
                .cloned()
                .unwrap_or_else(RationalMagnitudeSq::zero);
            imax_float = max.sqrt_f64();
            imax_sq = Some(max);
            histogram = Some(hist);
        }
        SweepMode::Float => {
            let rows = materialize(words, q);
            let blocks = n.div_ceil(BLOCK);
            let block_pairs: Vec<(usize, usize)> = (0..blocks)
                .flat_map(|bi| (bi..blocks).map(move |bj| (bi, bj)))
                .collect();
            let acc = block_pairs
                .into_par_iter()
                .map(|(bi, bj)| {
                    let mut local = FloatAcc::default();
                    let i_end = ((bi + 1) * BLOCK).min(n);
                    let j_end = ((bj + 1) * BLOCK).min(n);
                    for i in bi * BLOCK..i_end {
                        let j_start = if bi == bj { i + 1 } else { bj * BLOCK };
                        let a = &rows[i * k..(i + 1) * k];
                        for j in j_start..j_end {
                            let b = &rows[j * k..(j + 1) * k];
                            local.record(dot_mag_sq(a, b));
                        }
                    }
                    local
                })
                .reduce(FloatAcc::default, FloatAcc::merge);
            debug_assert_eq!(acc.pairs, (n as u64) * (n as u64 - 1) / 2);
            imax_float = acc.max_sq.sqrt();
            float_histogram = Some(acc.hist);
        }
        SweepMode::Both => {
            let rows = materialize(words, q);
            let mut hist = BTreeMap::new();
            let mut scratch = vec![0i64; q.get() as usize];
            let mut dev = 0.0f64;
            for i in 0..n {
                let a = &rows[i * k..(i + 1) * k];
                for j in (i + 1)..n {
                    let mag = exact_pair_mag_sq(&words[i], &words[j], q, &mut scratch)?
                        .ok_or(Error::NonRationalMagnitude { i, j })?;
                    let b = &rows[j * k..(j + 1) * k];
                    let f = dot_mag_sq(a, b);
                    let d = (f - mag.to_f64()).abs();
                    if d > dev {
                        dev = d;
                    }
                    *hist.entry(mag).or_insert(0) += 1;
                }
            }
            let max = hist
                .keys()
                .next_back()
                .cloned()
                .unwrap_or_else(RationalMagnitudeSq::zero);
            imax_float = max.sqrt_f64();
            imax_sq = Some(max);
            histogram = Some(hist);
            max_dev = Some(dev);
        }
    }

    let ratio = imax_float / welch.float;
    Ok(CorrelationReport {
        n,
        k,
        method: SweepMethod::BruteForce,
        mode,
        imax_sq,
        imax_float,
        welch,
        ratio_imax_over_welch: ratio,
        histogram,
        float_histogram,
        max_float_exact_dev: max_dev,
    })
}

/// Brute-force sweep over a built codebook.
pub fn imax_bruteforce(cb: &Codebook, mode: SweepMode) -> Result<CorrelationReport> {
    sweep_codewords(cb.codewords(), cb.q(), mode)
}

/// One difference class of ordered phase pairs.
struct DiffClass {
    da: i64,
    db: u64,
    du: u64,
    /// Unordered pair count carried by this class (and its negation).
    count: u64,
}

/// Canonical difference classes: one of `{delta, -delta}` each, carrying the
/// combined unordered pair count.
fn canonical_classes(p: u64, q: u64) -> Vec<DiffClass> {
    let mut classes = Vec::new();
    for da in -(p as i64 - 1)..=(p as i64 - 1) {
        for db in 0..q {
            for du in 0..q {
                if da == 0 && db == 0 && du == 0 {
                    continue;
                }
                let neg = (-da, (q - db) % q, (q - du) % q);
                let this = (da, db, du);
                // Ordered pairs with difference `this`: one (a, a') choice
                // per |da| slack, times q^2 for (b, u).
                let ordered = (p - da.unsigned_abs()) * q * q;
                let count = if this < neg {
                    ordered
                } else if this == neg {
                    debug_assert!(ordered % 2 == 0, "self-inverse class has even size");
                    ordered / 2
                } else {
                    continue; // counted under the negation
                };
                classes.push(DiffClass {
                    da,
                    db,
                    du,
                    count,
                });
            }
        }
    }
    classes
}

enum ClassValue {
    Exact(Option<RationalMagnitudeSq>, f64, Option<f64>),
}

/// Difference-class sweep: evaluates one representative pair per class of
/// phase pairs (the correlation depends only on `(a-a', b-b', u-u')`), then
/// adds the basis-to-basis and basis-to-phase blocks in closed form. The
/// report matches [`imax_bruteforce`] bucket for bucket, at a fraction of
/// the pair evaluations. Classes are evaluated in parallel.
pub fn imax_symmetry(cb: &Codebook, mode: SweepMode) -> Result<CorrelationReport> {
    let q = cb.q();
    let qq = q.get();
    let p = cb.p_min();
    let n = cb.n();
    let k = cb.k();
    let num_phase = cb.num_phase() as u64;
    let welch = welch_bound(n as u64, k as u64)?;
    let roots = root_table(qq);

    let classes = canonical_classes(p, qq);
    let evaluated: Vec<(u64, ClassValue)> = classes
        .par_iter()
        .map(|class| {
            let (a1, a2) = if class.da >= 0 {
                (class.da as u64, 0u64)
            } else {
                (0u64, (-class.da) as u64)
            };
            let w1 = cb.codeword(cb.phase_index(a1, class.db, class.du));
            let w2 = cb.codeword(cb.phase_index(a2, 0, 0));
            let exact = if mode.wants_exact() {
                let mut scratch = vec![0i64; qq as usize];
                exact_pair_mag_sq(w1, w2, q, &mut scratch).map(Some).unwrap_or(None).flatten()
            } else {
                None
            };
            let float = if mode.wants_float() {
                float_pair_scaled(w1, w2, &roots).norm_sqr()
            } else {
                f64::NAN
            };
            let dev = match (&exact, mode) {
                (Some(e), SweepMode::Both) => Some((float - e.to_f64()).abs()),
                _ => None,
            };
            (class.count, ClassValue::Exact(exact, float, dev))
        })
        .collect();

    // Phase words never produce irrational squared magnitudes for these
    // families; surface a violation with the representative pair indices.
    if mode.wants_exact() {
        for (class, (_, value)) in classes.iter().zip(&evaluated) {
            let ClassValue::Exact(exact, _, _) = value;
            if exact.is_none() {
                let (a1, a2) = if class.da >= 0 {
                    (class.da as u64, 0u64)
                } else {
                    (0u64, (-class.da) as u64)
                };
                return Err(Error::NonRationalMagnitude {
                    i: cb.phase_index(a1, class.db, class.du),
                    j: cb.phase_index(a2, 0, 0),
                });
            }
        }
    }

    let phase_pairs = num_phase * (num_phase - 1) / 2;
    let basis_phase_pairs = k as u64 * num_phase;
    let basis_basis_pairs = k as u64 * (k as u64 - 1) / 2;
    let scale_sq = RationalMagnitudeSq::new(1u64, k as u64)?;

    let mut imax_sq: Option<RationalMagnitudeSq> = None;
    let mut histogram: Option<BTreeMap<RationalMagnitudeSq, u64>> = None;
    let mut float_histogram: Option<BTreeMap<u64, u64>> = None;
    let mut max_dev: Option<f64> = None;

    if mode.wants_exact() {
        let mut hist: BTreeMap<RationalMagnitudeSq, u64> = BTreeMap::new();
        let mut covered = 0u64;
        for (count, value) in &evaluated {
            let ClassValue::Exact(exact, _, _) = value;
            let mag = exact.clone().expect("checked above");
            *hist.entry(mag).or_insert(0) += count;
            covered += count;
        }
        assert_eq!(covered, phase_pairs, "difference classes must tile the phase pairs");
        *hist.entry(scale_sq.clone()).or_insert(0) += basis_phase_pairs;
        if basis_basis_pairs > 0 {
            *hist.entry(RationalMagnitudeSq::zero()).or_insert(0) += basis_basis_pairs;
        }
        let max = hist
            .keys()
            .next_back()
            .cloned()
            .unwrap_or_else(RationalMagnitudeSq::zero);
        imax_sq = Some(max);
        histogram = Some(hist);
    }

    let imax_float = if mode.wants_exact() {
        imax_sq.as_ref().unwrap().sqrt_f64()
    } else {
        let mut max_sq = scale_sq.to_f64();
        for (_, value) in &evaluated {
            let ClassValue::Exact(_, f, _) = value;
            if *f > max_sq {
                max_sq = *f;
            }
        }
        max_sq.sqrt()
    };

    if mode.wants_float() {
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for (count, value) in &evaluated {
            let ClassValue::Exact(_, f, _) = value;
            *hist.entry(quantize(*f)).or_insert(0) += count;
        }
        *hist.entry(quantize(scale_sq.to_f64())).or_insert(0) += basis_phase_pairs;
        if basis_basis_pairs > 0 {
            *hist.entry(quantize(0.0)).or_insert(0) += basis_basis_pairs;
        }
        float_histogram = Some(hist);
    }

    if mode == SweepMode::Both {
        let mut dev = 0.0;
        for (_, value) in &evaluated {
            let ClassValue::Exact(_, _, d) = value;
            if let Some(d) = d {
                if *d > dev {
                    dev = *d;
                }
            }
        }
        max_dev = Some(dev);
    }

    let ratio = imax_float / welch.float;
    Ok(CorrelationReport {
        n,
        k,
        method: SweepMethod::SymmetryReduced,
        mode,
        imax_sq,
        imax_float,
        welch,
        ratio_imax_over_welch: ratio,
        histogram,
        float_histogram,
        max_float_exact_dev: max_dev,
    })
}
