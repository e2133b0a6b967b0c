//! Exact arithmetic on integer combinations of q-th roots of unity.
//!
//! Elements of `Z[xi_q]` are stored in the redundant power basis
//! `1, xi, ..., xi^{q-1}` (length-q integer coefficient vectors). The basis
//! is linearly dependent for composite q, so representations are not
//! canonical: equality and zero tests go through reduction modulo the q-th
//! cyclotomic polynomial `Phi_q`, which is confined to [`CyclotomicInt::is_zero`]
//! and [`CyclotomicInt::rational_value`]. Addition and multiplication stay
//! plain coefficient arithmetic with exponents folded mod q.
//!
//! Coefficients are arbitrary-precision integers: products of Q-term sums
//! outgrow 64-bit range well inside the parameter ranges the analysis layer
//! accepts, and this path is the correctness anchor (floats cover speed).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ntheory::Modulus;

/// An element of `Z[xi_q]` as coefficients over the power basis
/// `xi_q^0 .. xi_q^{q-1}`.
#[derive(Clone, Debug)]
pub struct CyclotomicInt {
    modulus: Modulus,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(modulus: Modulus) -> Self {
        CyclotomicInt {
            modulus,
            coeffs: vec![BigInt::zero(); modulus.get() as usize],
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::from_integer(modulus, 1)
    }

    /// The rational integer `n` as an element of `Z[xi_q]`.
    pub fn from_integer(modulus: Modulus, n: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(modulus);
        x.coeffs[0] = n.into();
        x
    }

    /// `xi_q^k`, with `k` reduced mod q (negative exponents allowed).
    pub fn root_power(modulus: Modulus, k: i64) -> Self {
        let mut x = Self::zero(modulus);
        x.coeffs[modulus.reduce(k) as usize] = BigInt::one();
        x
    }

    /// Wrap an explicit coefficient vector; it must have exactly q entries.
    pub fn from_coeffs(modulus: Modulus, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != modulus.get() as usize {
            return Err(Error::BadCoefficientLength {
                got: coeffs.len(),
                expected: modulus.get(),
            });
        }
        Ok(CyclotomicInt { modulus, coeffs })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check_same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicInt {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicInt {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Ring product; exponents add mod q.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let q = self.modulus.get() as usize;
        let mut coeffs = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % q;
                coeffs[k] += a * b;
            }
        }
        Ok(CyclotomicInt {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Complex conjugation: `xi^k` maps to `xi^{q-k}`.
    pub fn conj(&self) -> Self {
        let q = self.modulus.get() as usize;
        let mut coeffs = vec![BigInt::zero(); q];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(q - k) % q] = c.clone();
        }
        CyclotomicInt {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Coefficients reduced modulo `Phi_q`; length `deg Phi_q = phi(q)`.
    fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.modulus.get());
        let mut rem = self.coeffs.clone();
        poly_rem_in_place(&mut rem, &phi);
        rem
    }

    /// True iff the element is 0 in `Z[xi_q]`.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.reduced().iter().all(|c| c.is_zero())
    }

    /// `Some(n)` iff the element equals the rational integer `n`.
    ///
    /// The residues `1, xi, ..., xi^{phi(q)-1}` form a basis of `Z[xi_q]`,
    /// so the element is rational exactly when its canonical representative
    /// is a constant polynomial.
    pub fn rational_value(&self) -> Option<BigInt> {
        let rem = self.reduced();
        if rem.iter().skip(1).all(|c| c.is_zero()) {
            Some(rem.first().cloned().unwrap_or_else(BigInt::zero))
        } else {
            None
        }
    }

    /// Equality as ring elements (representations are not canonical).
    pub fn eq_elem(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Numeric embedding at `xi_q = e^{2*pi*i/q}`.
    pub fn embed(&self) -> Complex64 {
        let q = self.modulus.get();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * k as f64 / q as f64;
            let root = Complex64::new(theta.cos(), theta.sin());
            acc += root * c.to_f64().expect("coefficient out of f64 range");
        }
        acc
    }
}

/// Remainder of `num` (ascending coefficients) modulo the monic `phi`.
/// Truncates `num` to `deg phi` entries.
fn poly_rem_in_place(num: &mut Vec<BigInt>, phi: &[BigInt]) {
    let d = phi.len() - 1;
    debug_assert!(phi[d].is_one());
    let mut top = num.len();
    while top > d {
        top -= 1;
        if num[top].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut num[top], BigInt::zero());
        for (j, pj) in phi.iter().enumerate().take(d) {
            if pj.is_zero() {
                continue;
            }
            let idx = top - d + j;
            num[idx] -= &lead * pj;
        }
    }
    num.truncate(d);
    num.resize(d, BigInt::zero());
}

/// Exact quotient `num / den` for integer polynomials with monic `den`.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let lead = std::mem::replace(&mut rem[k + dd], BigInt::zero());
        if lead.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            if dj.is_zero() {
                continue;
            }
            rem[k + j] -= &lead * dj;
        }
        quot[k] = lead;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

static PHI_CACHE: RwLock<Option<HashMap<u64, Arc<Vec<BigInt>>>>> = RwLock::new(None);

/// The q-th cyclotomic polynomial `Phi_q` as ascending monic coefficients.
///
/// Computed by dividing `x^q - 1` by `Phi_d` for every proper divisor `d`,
/// memoized per modulus. The cache is filled under a write lock with fully
/// built values, so concurrent readers never observe a partial polynomial.
pub fn cyclotomic_polynomial(q: u64) -> Arc<Vec<BigInt>> {
    assert!(q >= 1, "cyclotomic polynomial needs q >= 1");
    if let Some(cache) = PHI_CACHE.read().unwrap().as_ref() {
        if let Some(p) = cache.get(&q) {
            return Arc::clone(p);
        }
    }
    let computed = compute_cyclotomic(q);
    let mut guard = PHI_CACHE.write().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    Arc::clone(cache.entry(q).or_insert(computed))
}

fn compute_cyclotomic(q: u64) -> Arc<Vec<BigInt>> {
    if q == 1 {
        // x - 1
        return Arc::new(vec![BigInt::from(-1), BigInt::one()]);
    }
    // x^q - 1
    let mut num = vec![BigInt::zero(); q as usize + 1];
    num[0] = BigInt::from(-1);
    num[q as usize] = BigInt::one();
    let mut poly = num;
    for d in divisors(q) {
        if d == q {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        poly = poly_div_exact(&poly, &phi_d);
    }
    Arc::new(poly)
}

/// Exact squared magnitude `|<c_i, c_j>|^2`, a nonnegative rational kept in
/// lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RationalMagnitudeSq(BigRational);

impl RationalMagnitudeSq {
    pub fn zero() -> Self {
        RationalMagnitudeSq(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalMagnitudeSq(BigRational::one())
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if num.is_negative() || den.is_negative() || den.is_zero() {
            return Err(Error::BadRational {
                num: num.to_string(),
                den: den.to_string(),
            });
        }
        Ok(RationalMagnitudeSq(BigRational::new(num, den)))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::BadRational {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            });
        }
        Ok(RationalMagnitudeSq(r))
    }

    #[inline]
    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalMagnitudeSq(&self.0 * &other.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    /// Square root as float; the carrier itself stays squared and exact.
    pub fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }
}

impl fmt::Display for RationalMagnitudeSq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for RationalMagnitudeSq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RationalMagnitudeSq", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn phi_small_moduli() {
        let to_i64 = |p: &Arc<Vec<BigInt>>| p.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i64(&cyclotomic_polynomial(1)), [-1, 1]);
        assert_eq!(to_i64(&cyclotomic_polynomial(2)), [1, 1]);
        assert_eq!(to_i64(&cyclotomic_polynomial(3)), [1, 1, 1]);
        assert_eq!(to_i64(&cyclotomic_polynomial(4)), [1, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_polynomial(6)), [1, -1, 1]);
        assert_eq!(to_i64(&cyclotomic_polynomial(12)), [1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_product_over_divisors_is_x_n_minus_1() {
        for n in 1..=24u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                let phi = cyclotomic_polynomial(d);
                let mut next = vec![BigInt::zero(); prod.len() + phi.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in phi.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn root_power_reduces_exponent() {
        let x = CyclotomicInt::root_power(q(4), 6);
        assert!(x.coeffs()[2].is_one());
        assert_eq!(x.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn root_power_zero_is_one() {
        let x = CyclotomicInt::root_power(q(3), 0);
        assert!(x.eq_elem(&CyclotomicInt::one(q(3))).unwrap());
    }

    #[test]
    fn root_powers_multiply_by_adding_exponents() {
        let a = CyclotomicInt::root_power(q(5), 2);
        let b = CyclotomicInt::root_power(q(5), 4);
        let prod = a.mul(&b).unwrap();
        assert!(prod.eq_elem(&CyclotomicInt::root_power(q(5), 1)).unwrap());
    }

    #[test]
    fn additive_identity() {
        let x = CyclotomicInt::root_power(q(7), 3);
        let sum = x.add(&CyclotomicInt::zero(q(7))).unwrap();
        assert!(sum.eq_elem(&x).unwrap());
    }

    #[test]
    fn full_geometric_sum_vanishes() {
        for qq in [2u64, 3, 4, 5, 6, 7, 12] {
            let m = q(qq);
            let mut s = CyclotomicInt::zero(m);
            for k in 0..qq {
                s = s.add(&CyclotomicInt::root_power(m, k as i64)).unwrap();
            }
            assert!(s.is_zero(), "sum of all {qq}-th roots must vanish");
        }
    }

    #[test]
    fn product_of_conjugate_binomials_is_two() {
        // (1 + xi_4)(1 - xi_4) = 1 - xi_4^2 = 2. Frozen from hand expansion
        // and the float embedding.
        let m = q(4);
        let one = CyclotomicInt::one(m);
        let xi = CyclotomicInt::root_power(m, 1);
        let prod = one.add(&xi).unwrap().mul(&one.sub(&xi).unwrap()).unwrap();
        assert_eq!(prod.rational_value(), Some(BigInt::from(2)));
        assert!((prod.embed().re - 2.0).abs() < 1e-12);
        assert!(prod.embed().im.abs() < 1e-12);
    }

    #[test]
    fn alternating_sum_q6_vanishes() {
        // 1 - xi + xi^2 - xi^3 + xi^4 - xi^5 at q = 6; the float embedding
        // evaluates to 0 (checked numerically before freezing), and the
        // exact test agrees.
        let m = q(6);
        let mut s = CyclotomicInt::zero(m);
        for k in 0..6i64 {
            let term = CyclotomicInt::root_power(m, k);
            s = if k % 2 == 0 {
                s.add(&term).unwrap()
            } else {
                s.sub(&term).unwrap()
            };
        }
        assert!(s.embed().norm() < 1e-12);
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_inverts_roots_and_fixes_integers() {
        let m = q(9);
        for k in 0..9i64 {
            let a = CyclotomicInt::root_power(m, k).conj();
            let b = CyclotomicInt::root_power(m, 9 - k);
            assert!(a.eq_elem(&b).unwrap(), "k = {k}");
        }
        let n = CyclotomicInt::from_integer(m, 41);
        assert!(n.conj().eq_elem(&n).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let m = q(10);
        let mut x = CyclotomicInt::zero(m);
        for (k, c) in [(0i64, 3), (1, -2), (4, 7), (9, 1)] {
            let t = CyclotomicInt::from_integer(m, c)
                .mul(&CyclotomicInt::root_power(m, k))
                .unwrap();
            x = x.add(&t).unwrap();
        }
        assert!(x.conj().conj().eq_elem(&x).unwrap());
    }

    #[test]
    fn prime_geometric_sum_is_zero() {
        let m = q(7);
        let mut s = CyclotomicInt::zero(m);
        for k in 0..7 {
            s = s.add(&CyclotomicInt::root_power(m, k)).unwrap();
        }
        assert!(s.is_zero());
    }

    #[test]
    fn rational_value_examples() {
        let m = q(4);
        assert_eq!(
            CyclotomicInt::from_integer(m, 5).rational_value(),
            Some(BigInt::from(5))
        );
        assert_eq!(CyclotomicInt::root_power(m, 1).rational_value(), None);
    }

    #[test]
    fn geometric_sum_times_conjugate_is_zero() {
        // (sum_j xi_6^{j*l}) * conj(same) = 0 for l not divisible by 6;
        // cross-checked against the float embedding.
        let m = q(6);
        for l in 1..6i64 {
            let mut s = CyclotomicInt::zero(m);
            for j in 0..6i64 {
                s = s.add(&CyclotomicInt::root_power(m, j * l)).unwrap();
            }
            let mag = s.mul(&s.conj()).unwrap();
            assert!(s.embed().norm() < 1e-9, "l = {l}");
            assert_eq!(mag.rational_value(), Some(BigInt::zero()), "l = {l}");
        }
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let a = CyclotomicInt::one(q(4));
        let b = CyclotomicInt::one(q(5));
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn rational_magnitude_reduces_to_lowest_terms() {
        let r = RationalMagnitudeSq::new(4, 16).unwrap();
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert!(RationalMagnitudeSq::new(-1, 2).is_err());
        assert!(RationalMagnitudeSq::new(1, 0).is_err());
    }

    #[test]
    fn embedding_matches_coefficients() {
        // 3 + 2*xi_8 at xi_8 = e^{i*pi/4}.
        let m = q(8);
        let x = CyclotomicInt::from_integer(m, 3)
            .add(
                &CyclotomicInt::from_integer(m, 2)
                    .mul(&CyclotomicInt::root_power(m, 1))
                    .unwrap(),
            )
            .unwrap();
        let e = x.embed();
        let expect = Complex64::new(3.0 + 2.0 * (0.25 * std::f64::consts::PI).cos(), 2.0 * (0.25 * std::f64::consts::PI).sin());
        assert!((e - expect).norm() < 1e-12);
    }
}
