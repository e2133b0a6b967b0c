//! Integer utilities underpinning both codebook constructions: smallest
//! prime factor, gcd, and a linear-congruence solver.
//!
//! `a*x = c (mod m)` with `g = gcd(a, m)` has no solution when `g` does not
//! divide `c`, and exactly `g` incongruent solutions otherwise. The solver
//! below returns those solutions sorted ascending so callers that rely on
//! "the unique solution" can assert a length of 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `q >= 2` for arithmetic in `Z_q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::ModulusTooSmall(q));
        }
        Ok(Modulus(q))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduce a signed integer into `[0, q)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        let q = self.0 as i64;
        (v.rem_euclid(q)) as u64
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({})", self.0)
    }
}

/// An element of `Z_q`: a value in `[0, q)` tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() {
            return Err(Error::ResidueOutOfRange {
                value,
                modulus: modulus.get(),
            });
        }
        Ok(Residue { value, modulus })
    }

    /// Reduce an arbitrary signed integer into `Z_q`.
    pub fn from_int(v: i64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce(v),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least prime `p` dividing `q`, by trial division up to `sqrt(q)`.
///
/// `p == q` exactly when `q` is prime.
pub fn smallest_prime_factor(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::ModulusTooSmall(q));
    }
    if q % 2 == 0 {
        return Ok(2);
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= q) {
        if q % d == 0 {
            return Ok(d);
        }
        d += 2;
    }
    Ok(q)
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// All `x` in `[0, m)` with `a*x = c (mod m)`, sorted ascending.
///
/// Returns `gcd(a, m)` solutions when `gcd(a, m)` divides `c`, and none
/// otherwise. Rejects `m <= 1`.
pub fn solve_linear_congruence(a: i64, c: i64, m: u64) -> Result<Vec<Residue>> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    let modulus = Modulus::new(m)?;
    let a = modulus.reduce(a);
    let c = modulus.reduce(c);
    let g = gcd(a, m);
    if c % g != 0 {
        return Ok(Vec::new());
    }
    let m_red = m / g;
    let a_red = a / g;
    let c_red = c / g;
    // Base solution: x0 = c' * (a')^{-1} mod m'. When m' == 1 every residue
    // class collapses and x0 = 0.
    let x0 = if m_red == 1 {
        0u64
    } else {
        let (_, inv, _) = ext_gcd(a_red as i128, m_red as i128);
        let inv = inv.rem_euclid(m_red as i128) as u64;
        ((c_red as u128 * inv as u128) % m_red as u128) as u64
    };
    let solutions = (0..g)
        .map(|t| Residue::new(x0 + t * m_red, modulus))
        .collect::<Result<Vec<_>>>()?;
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_examples() {
        assert_eq!(smallest_prime_factor(35).unwrap(), 5);
        assert_eq!(smallest_prime_factor(2).unwrap(), 2);
        assert_eq!(smallest_prime_factor(221).unwrap(), 13);
    }

    #[test]
    fn spf_rejects_below_two() {
        assert!(smallest_prime_factor(0).is_err());
        assert!(smallest_prime_factor(1).is_err());
    }

    #[test]
    fn spf_divides_and_is_least() {
        for q in 2..5000u64 {
            let p = smallest_prime_factor(q).unwrap();
            assert_eq!(q % p, 0, "spf({q}) = {p} must divide");
            for d in 2..p {
                assert_ne!(q % d, 0, "{d} divides {q} but spf said {p}");
            }
        }
    }

    #[test]
    fn congruence_unit_coefficient() {
        let sols = solve_linear_congruence(1, 4, 7).unwrap();
        assert_eq!(sols.iter().map(|r| r.value()).collect::<Vec<_>>(), [4]);
    }

    #[test]
    fn congruence_no_solution() {
        // gcd(2, 4) = 2 does not divide 3.
        assert!(solve_linear_congruence(2, 3, 4).unwrap().is_empty());
    }

    #[test]
    fn congruence_two_solutions() {
        // Frozen from a brute-force scan of x in 0..6: 4x = 2 (mod 6)
        // holds for x = 2 and x = 5.
        let sols = solve_linear_congruence(4, 2, 6).unwrap();
        assert_eq!(sols.iter().map(|r| r.value()).collect::<Vec<_>>(), [2, 5]);
    }

    #[test]
    fn congruence_rejects_small_modulus() {
        assert!(solve_linear_congruence(1, 0, 1).is_err());
        assert!(solve_linear_congruence(1, 0, 0).is_err());
    }

    #[test]
    fn congruence_matches_exhaustive_scan() {
        for m in 2..=60u64 {
            for a in 0..m {
                for c in 0..m {
                    let got: Vec<u64> = solve_linear_congruence(a as i64, c as i64, m)
                        .unwrap()
                        .iter()
                        .map(|r| r.value())
                        .collect();
                    let brute: Vec<u64> = (0..m)
                        .filter(|&x| (a as u128 * x as u128) % m as u128 == c as u128)
                        .collect();
                    assert_eq!(got, brute, "a={a} c={c} m={m}");
                    let g = gcd(a, m);
                    let expected_len = if c % g == 0 { g as usize } else { 0 };
                    assert_eq!(got.len(), expected_len, "a={a} c={c} m={m}");
                }
            }
        }
    }

    #[test]
    fn congruence_negative_inputs_reduce() {
        let sols = solve_linear_congruence(-2, 4, 6).unwrap();
        // -2 = 4 (mod 6), so same as 4x = 4: x in {1, 4}.
        assert_eq!(sols.iter().map(|r| r.value()).collect::<Vec<_>>(), [1, 4]);
    }

    #[test]
    fn residue_bounds() {
        let q = Modulus::new(5).unwrap();
        assert!(Residue::new(5, q).is_err());
        assert_eq!(Residue::from_int(-1, q).value(), 4);
    }

    #[test]
    fn modulus_rejects_small() {
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(2).is_ok());
    }
}
