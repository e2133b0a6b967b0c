//! Correlation analysis: pairwise inner products (exact and float), `I_max`
//! by brute force and by difference-class reduction, the Welch bound, the
//! optimality ratio, the equality (MWBE) check, and parameter tables.
//!
//! The exact path certifies every squared magnitude as a rational number via
//! `Z[xi_q]` arithmetic; the float path mirrors it for speed. For these two
//! families the attained maxima are `1/Q` (family one) and `1/(Q-1)` (family
//! two). Family two is sometimes quoted with the level `1/sqrt(Q(Q-1))`,
//! which is only the basis-to-phase correlation, not the maximum; reports
//! carry that value as a flagged variant so published tables quoting it can
//! still be cross-checked.

mod sweep;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::construction::Codebook;
use crate::cyclotomic::RationalMagnitudeSq;
use crate::error::{Error, Result};
use crate::ntheory::smallest_prime_factor;

pub use sweep::{
    imax_bruteforce, imax_symmetry, inner_product, sweep_codewords, EXACT_SWEEP_GUARD,
    FLOAT_SWEEP_GUARD,
};

/// Which sweep produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMethod {
    BruteForce,
    SymmetryReduced,
}

impl SweepMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMethod::BruteForce => "brute_force",
            SweepMethod::SymmetryReduced => "symmetry_reduced",
        }
    }
}

/// Arithmetic used by a sweep. `Both` runs the exact and float paths side by
/// side and records their maximum disagreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exact,
    Float,
    Both,
}

impl SweepMode {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::Exact => "exact",
            SweepMode::Float => "float",
            SweepMode::Both => "both",
        }
    }

    pub fn wants_exact(&self) -> bool {
        matches!(self, SweepMode::Exact | SweepMode::Both)
    }

    pub fn wants_float(&self) -> bool {
        matches!(self, SweepMode::Float | SweepMode::Both)
    }
}

/// One pair's correlation: exact squared magnitude plus the float magnitude.
#[derive(Clone, Debug)]
pub struct CorrelationValue {
    pub mag_sq: RationalMagnitudeSq,
    pub float_mag: f64,
}

/// The Welch bound `I_W = sqrt((N-K) / ((N-1)K))`, exact in its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WelchBound {
    pub sq: RationalMagnitudeSq,
    pub float: f64,
}

/// Result of a full pairwise sweep.
///
/// The exact histogram maps `|<c_i, c_j>|^2` to the number of unordered
/// pairs attaining it; counts always sum to `N(N-1)/2`. Float-mode sweeps
/// key their histogram by `mag^2` rounded to the 1e-10 grid instead.
#[derive(Clone, Debug)]
pub struct CorrelationReport {
    pub n: usize,
    pub k: usize,
    pub method: SweepMethod,
    pub mode: SweepMode,
    /// Exact `I_max^2`; present in exact and both modes.
    pub imax_sq: Option<RationalMagnitudeSq>,
    /// `I_max` as a float (derived from the exact value when available).
    pub imax_float: f64,
    pub welch: WelchBound,
    /// `I_max / I_W`; at least 1 up to rounding.
    pub ratio_imax_over_welch: f64,
    pub histogram: Option<BTreeMap<RationalMagnitudeSq, u64>>,
    /// Float-mode histogram: key is `round(mag^2 * 1e10)`.
    pub float_histogram: Option<BTreeMap<u64, u64>>,
    /// Both mode: max over pairs of `|float_mag^2 - mag_sq|`.
    pub max_float_exact_dev: Option<f64>,
}

impl CorrelationReport {
    /// Total number of pairs recorded in whichever histogram is present.
    pub fn histogram_total(&self) -> u64 {
        if let Some(h) = &self.histogram {
            h.values().sum()
        } else if let Some(h) = &self.float_histogram {
            h.values().sum()
        } else {
            0
        }
    }
}

fn big_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Welch bound for an `(N, K)` codebook with `N > K >= 1`.
pub fn welch_bound(n: u64, k: u64) -> Result<WelchBound> {
    if k < 1 || n <= k {
        return Err(Error::WelchRequiresNGreaterK { n, k });
    }
    let sq = RationalMagnitudeSq::from_ratio(big_ratio(n - k, 1) / big_ratio(n - 1, 1) / big_ratio(k, 1))?;
    let float = sq.sqrt_f64();
    Ok(WelchBound { sq, float })
}

/// `(p_min, N, K)` for a family id (1 or 2) at modulus `q`.
pub fn family_params(construction: u8, q: u64) -> Result<(u64, u64, u64)> {
    match construction {
        1 => {
            let p = smallest_prime_factor(q)?;
            Ok((p, (p + 1) * q * q, q * q))
        }
        2 => {
            if q < 3 {
                return Err(Error::ConstructionTwoNeedsQAtLeast3(q));
            }
            let p = smallest_prime_factor(q)?;
            Ok((p, p * q * q + q * q - q, q * (q - 1)))
        }
        other => Err(Error::InvalidParameter(format!(
            "construction must be 1 or 2 (got {other})"
        ))),
    }
}

/// Welch bound from the family's closed form, checked against the generic
/// `(N, K)` formula as an exact rational identity.
///
/// Family one: `I_W^2 = p / (p*Q^2 + Q^2 - 1)`.
/// Family two: `I_W^2 = p*Q / ((p*Q^2 + Q^2 - Q - 1) * (Q - 1))`.
pub fn welch_bound_construction(construction: u8, q: u64) -> Result<WelchBound> {
    let (p, n, k) = family_params(construction, q)?;
    let generic = welch_bound(n, k)?;
    let specialized = match construction {
        1 => big_ratio(p, 1) / big_ratio(p * q * q + q * q - 1, 1),
        2 => big_ratio(p * q, 1) / (big_ratio(p * q * q + q * q - q - 1, 1) * big_ratio(q - 1, 1)),
        _ => unreachable!(),
    };
    assert_eq!(
        generic.sq.as_ratio(),
        &specialized,
        "specialized Welch form must equal the generic formula"
    );
    Ok(generic)
}

/// The `1/sqrt(Q(Q-1))` variant reported alongside family two.
#[derive(Clone, Debug)]
pub struct VariantRatio {
    /// The level itself: the basis-to-phase correlation `1/sqrt(K)`.
    pub imax: f64,
    pub imax_sq: RationalMagnitudeSq,
    pub imax_over_welch: f64,
    pub welch_over_imax: f64,
    /// Always false: phase pairs reach `1/(Q-1)`, which is strictly larger.
    pub attained: bool,
}

/// Closed-form optimality ratios for a family at modulus `q`.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub construction: u8,
    pub q: u64,
    pub p_min: u64,
    pub n: u64,
    pub k: u64,
    /// Analytic `I_max`: `1/Q` for family one, `1/(Q-1)` for family two.
    pub imax: f64,
    pub imax_sq: RationalMagnitudeSq,
    pub welch: WelchBound,
    pub imax_over_welch: f64,
    pub welch_over_imax: f64,
    /// Exact `(I_max / I_W)^2`, equal to the closed form
    /// `1 + 1/p - 1/(Q^2 p)` (family one) or
    /// `(p*Q^2 + Q^2 - Q - 1) / (Q(Q-1)p)` (family two).
    pub ratio_sq_exact: RationalMagnitudeSq,
    /// Family two only: the `1/sqrt(Q(Q-1))` variant, for cross-checking
    /// tables that quote that level as the maximum.
    pub variant: Option<VariantRatio>,
    /// Limit of `I_max / I_W` as the smallest prime factor grows (the
    /// modulus grows with it, since `p_min <= Q`).
    pub asymptote_in_p: f64,
    /// Limit of `I_max / I_W` as `Q` grows with `p_min` held fixed:
    /// `sqrt(1 + 1/p)` for both families.
    pub asymptote_in_q: f64,
}

/// Closed-form `I_max`, Welch bound, and both optimality ratios.
pub fn ratio_report(construction: u8, q: u64) -> Result<RatioReport> {
    let (p, n, k) = family_params(construction, q)?;
    let welch = welch_bound_construction(construction, q)?;
    let imax_sq = match construction {
        1 => RationalMagnitudeSq::new(1u64, q * q)?,
        2 => RationalMagnitudeSq::new(1u64, (q - 1) * (q - 1))?,
        _ => unreachable!(),
    };
    let imax = imax_sq.sqrt_f64();
    let ratio_sq = imax_sq.as_ratio() / welch.sq.as_ratio();
    let closed_form = match construction {
        1 => {
            // 1 + 1/p - 1/(Q^2 p)
            BigRational::one() + big_ratio(1, p) - big_ratio(1, 1) / big_ratio(q * q * p, 1)
        }
        2 => big_ratio(p * q * q + q * q - q - 1, 1) / big_ratio(q * (q - 1) * p, 1),
        _ => unreachable!(),
    };
    assert_eq!(
        ratio_sq, closed_form,
        "(I_max/I_W)^2 must match its closed form exactly"
    );
    let imax_over_welch = ratio_sq.to_f64().expect("ratio fits f64").sqrt();
    let variant = match construction {
        2 => {
            let v_sq = RationalMagnitudeSq::new(1, q * (q - 1))?;
            let v = v_sq.sqrt_f64();
            let v_ratio = (v_sq.as_ratio() / welch.sq.as_ratio())
                .to_f64()
                .expect("ratio fits f64")
                .sqrt();
            Some(VariantRatio {
                imax: v,
                imax_sq: v_sq,
                imax_over_welch: v_ratio,
                welch_over_imax: 1.0 / v_ratio,
                attained: false,
            })
        }
        _ => None,
    };
    Ok(RatioReport {
        construction,
        q,
        p_min: p,
        n,
        k,
        imax,
        imax_sq: imax_sq.clone(),
        welch,
        imax_over_welch,
        welch_over_imax: 1.0 / imax_over_welch,
        ratio_sq_exact: RationalMagnitudeSq::from_ratio(ratio_sq)?,
        variant,
        asymptote_in_p: 1.0,
        asymptote_in_q: (1.0 + 1.0 / p as f64).sqrt(),
    })
}

/// True iff every distinct pair attains exactly the Welch level
/// `(N-K)/((N-1)K)` in squared magnitude; needs an exact histogram.
pub fn is_mwbe_report(report: &CorrelationReport) -> Result<bool> {
    let hist = report.histogram.as_ref().ok_or_else(|| {
        Error::InvalidParameter("the equality check needs an exact-mode histogram".into())
    })?;
    Ok(hist.len() == 1 && hist.keys().next() == Some(&report.welch.sq))
}

/// Exact brute-force sweep followed by the equality check.
pub fn is_mwbe(cb: &Codebook) -> Result<bool> {
    let report = imax_bruteforce(cb, SweepMode::Exact)?;
    is_mwbe_report(&report)
}

/// One row of the parameter/optimality table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub p_min: u64,
    pub q: u64,
    pub n: u64,
    pub k: u64,
    /// Analytic `I_max` (`1/Q` or `1/(Q-1)`).
    pub imax: f64,
    pub welch: f64,
    /// `I_W / I_max`, the paper-style last column.
    pub ratio: f64,
    /// Family two only: the `1/sqrt(Q(Q-1))` level.
    pub imax_variant: Option<f64>,
    /// Family two only: `I_W` over the variant level.
    pub ratio_variant: Option<f64>,
    /// True when `N` exceeds the exact sweep guard, so the row is formula
    /// evaluation only and cannot be verified by a desk-scale sweep.
    pub analytic: bool,
}

/// Rows in the published column order `p_min, Q, N, K, I_max, I_W, ratio`
/// for every modulus in `q_list`.
pub fn table_rows(construction: u8, q_list: &[u64]) -> Result<Vec<TableRow>> {
    q_list
        .iter()
        .map(|&q| {
            let r = ratio_report(construction, q)?;
            Ok(TableRow {
                p_min: r.p_min,
                q,
                n: r.n,
                k: r.k,
                imax: r.imax,
                welch: r.welch.float,
                ratio: r.welch_over_imax,
                imax_variant: r.variant.as_ref().map(|v| v.imax),
                ratio_variant: r.variant.as_ref().map(|v| v.welch_over_imax),
                analytic: r.n > EXACT_SWEEP_GUARD as u64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welch_bound_published_values() {
        let w = welch_bound(7350, 1225).unwrap();
        assert!((w.float - 0.02608).abs() < 5e-5);
        let w = welch_bound(47355, 5852).unwrap();
        assert!((w.float - 0.01224).abs() < 5e-5);
    }

    #[test]
    fn welch_bound_hand_case() {
        // (5, 4): sqrt(1/16) = 1/4
        let w = welch_bound(5, 4).unwrap();
        assert_eq!(w.sq, RationalMagnitudeSq::new(1, 16).unwrap());
        assert!((w.float - 0.25).abs() < 1e-15);
    }

    #[test]
    fn welch_bound_rejects_degenerate() {
        assert!(welch_bound(4, 4).is_err());
        assert!(welch_bound(3, 4).is_err());
        assert!(welch_bound(2, 0).is_err());
    }

    #[test]
    fn specialized_welch_forms_match_generic() {
        for q in [2u64, 3, 4, 6, 9, 10, 12, 35, 221, 493] {
            welch_bound_construction(1, q).unwrap();
            if q >= 3 {
                welch_bound_construction(2, q).unwrap();
            }
        }
    }

    #[test]
    fn ratio_closed_form_published_values() {
        let r = ratio_report(1, 35).unwrap();
        assert_eq!(r.p_min, 5);
        assert!((r.welch_over_imax - 0.91293).abs() < 5e-5);
        let r = ratio_report(1, 221).unwrap();
        assert!((1.0 / r.imax_over_welch - 0.96362).abs() < 1e-4);
    }

    #[test]
    fn family_two_ratio_uses_attained_maximum() {
        let r = ratio_report(2, 437).unwrap();
        assert_eq!((r.n, r.k), (3818943, 190532));
        assert!((r.welch.float - 0.0022331).abs() < 5e-5);
        let v = r.variant.as_ref().unwrap();
        // the variant reproduces published tables that quote 1/sqrt(Q(Q-1))
        assert!((v.imax - 0.0022906).abs() < 5e-5);
        assert!(!v.attained);
        assert!(r.imax > v.imax);
    }

    #[test]
    fn table_smallest_case() {
        let rows = table_rows(1, &[2]).unwrap();
        let r = &rows[0];
        assert_eq!((r.p_min, r.q, r.n, r.k), (2, 2, 12, 4));
        assert!((r.imax - 0.5).abs() < 1e-15);
        assert!((r.welch - 0.42640).abs() < 5e-6);
        assert!((r.ratio - 0.85280).abs() < 5e-6);
        assert!(!r.analytic);
    }

    #[test]
    fn table_published_row_construction_one() {
        let rows = table_rows(1, &[493]).unwrap();
        let r = &rows[0];
        assert_eq!((r.p_min, r.q, r.n, r.k), (17, 493, 4374882, 243049));
        assert!((r.imax - 0.0020284).abs() < 5e-8);
        assert!((r.welch - 0.0019712).abs() < 5e-8);
        assert!((r.ratio - 0.97183).abs() < 5e-6);
        assert!(r.analytic);
    }

    #[test]
    fn table_rejects_bad_parameters() {
        assert!(table_rows(1, &[1]).is_err());
        assert!(table_rows(2, &[2]).is_err());
        assert!(table_rows(3, &[5]).is_err());
    }

    #[test]
    fn asymptotes() {
        let r = ratio_report(1, 35).unwrap();
        assert_eq!(r.asymptote_in_p, 1.0);
        assert!((r.asymptote_in_q - (1.0f64 + 0.2).sqrt()).abs() < 1e-12);
    }
}
