//! The two codebook families.
//!
//! Family one: phase vectors of length `Q^2` with entries
//! `(1/Q) * xi_Q^{j*(a*pi(i)+b) + u*sigma(i)}` over all `(i, j)`, for
//! `a in Z_{p_min}`, `b, u in Z_Q`, augmented with the `Q^2` standard-basis
//! vectors. Parameters `((p_min+1)*Q^2, Q^2)`.
//!
//! Family two: the same phase formula with one row `i = ell` deleted and
//! scale `1/sqrt(Q*(Q-1))`, augmented with the `Q*(Q-1)` standard-basis
//! vectors. Parameters `(p_min*Q^2 + Q^2 - Q, Q*(Q-1))`.
//!
//! Codewords are stored as exponent tables (integers mod q), never as dense
//! complex arrays, until the analysis layer materializes them. The flat
//! entry layout is `i` major, `j` minor; the `(a, b, u)` enumeration is
//! lexicographic. Both orders are fixed so golden outputs are deterministic.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicInt, RationalMagnitudeSq};
use crate::error::{Error, Result};
use crate::gbf::{PermSpec, PermutationZQ};
use crate::ntheory::{smallest_prime_factor, Modulus};

/// Exponents are stored as `u16`, capping the modulus.
pub const MAX_Q: u64 = u16::MAX as u64;

/// Largest `N*K` cell count the builder will materialize.
pub const BUILD_GUARD: u64 = 1 << 26;

/// A single codeword: a standard-basis vector or a scaled root-of-unity
/// exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodewordKind {
    StandardBasis {
        index: usize,
    },
    Phase {
        exponents: Vec<u16>,
        /// Squared magnitude of every entry; `1/K` for unit norm.
        scale_sq: RationalMagnitudeSq,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    kind: CodewordKind,
    length: usize,
}

impl Codeword {
    pub fn standard_basis(index: usize, length: usize) -> Result<Self> {
        if index >= length {
            return Err(Error::EntryOutOfRange { index, k: length });
        }
        Ok(Codeword {
            kind: CodewordKind::StandardBasis { index },
            length,
        })
    }

    pub fn phase(exponents: Vec<u16>, scale_sq: RationalMagnitudeSq) -> Self {
        let length = exponents.len();
        Codeword {
            kind: CodewordKind::Phase {
                exponents,
                scale_sq,
            },
            length,
        }
    }

    #[inline]
    pub fn kind(&self) -> &CodewordKind {
        &self.kind
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }
}

/// Which family a codebook belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    One,
    Two { deleted_row: u64 },
}

impl Construction {
    pub fn id(&self) -> u8 {
        match self {
            Construction::One => 1,
            Construction::Two { .. } => 2,
        }
    }
}

/// An `(N, K)` family of unit-norm codewords plus its construction metadata.
#[derive(Clone, Debug)]
pub struct Codebook {
    q: Modulus,
    p_min: u64,
    construction: Construction,
    pi: PermutationZQ,
    sigma: PermutationZQ,
    codewords: Vec<Codeword>,
    num_phase: usize,
    n: usize,
    k: usize,
}

impl Codebook {
    /// Family one: `((p_min+1)*Q^2, Q^2)`.
    pub fn build_construction_one(
        q: Modulus,
        pi: PermutationZQ,
        sigma: PermutationZQ,
    ) -> Result<Self> {
        Self::build(q, pi, sigma, Construction::One)
    }

    /// Family two: `(p_min*Q^2 + Q^2 - Q, Q*(Q-1))` with row `ell` deleted.
    pub fn build_construction_two(
        q: Modulus,
        pi: PermutationZQ,
        sigma: PermutationZQ,
        ell: u64,
    ) -> Result<Self> {
        if q.get() < 3 {
            return Err(Error::ConstructionTwoNeedsQAtLeast3(q.get()));
        }
        if ell >= q.get() {
            return Err(Error::ResidueOutOfRange {
                value: ell,
                modulus: q.get(),
            });
        }
        Self::build(q, pi, sigma, Construction::Two { deleted_row: ell })
    }

    fn build(
        q: Modulus,
        pi: PermutationZQ,
        sigma: PermutationZQ,
        construction: Construction,
    ) -> Result<Self> {
        let qq = q.get();
        if qq > MAX_Q {
            return Err(Error::ModulusTooLargeForStorage(qq, MAX_Q));
        }
        if pi.modulus() != q {
            return Err(Error::ModulusMismatch(pi.modulus().get(), qq));
        }
        if sigma.modulus() != q {
            return Err(Error::ModulusMismatch(sigma.modulus().get(), qq));
        }
        let p_min = smallest_prime_factor(qq)?;

        let (k, rows): (u64, Vec<u64>) = match construction {
            Construction::One => (qq * qq, (0..qq).collect()),
            Construction::Two { deleted_row } => {
                (qq * (qq - 1), (0..qq).filter(|&i| i != deleted_row).collect())
            }
        };
        let num_phase = p_min * qq * qq;
        let n = num_phase + k;
        let cells = n as u128 * k as u128;
        if cells > BUILD_GUARD as u128 {
            return Err(Error::CodebookTooLarge {
                cells,
                guard: BUILD_GUARD,
            });
        }

        let scale_sq = RationalMagnitudeSq::new(1, k as i64)?;
        let mut codewords = Vec::with_capacity(n as usize);
        for a in 0..p_min {
            for b in 0..qq {
                for u in 0..qq {
                    let mut exponents = Vec::with_capacity(k as usize);
                    for &i in &rows {
                        let base = (a as u128 * pi.apply(i) as u128 + b as u128) % qq as u128;
                        let shift = (u as u128 * sigma.apply(i) as u128) % qq as u128;
                        for j in 0..qq {
                            let e = (j as u128 * base + shift) % qq as u128;
                            exponents.push(e as u16);
                        }
                    }
                    codewords.push(Codeword::phase(exponents, scale_sq.clone()));
                }
            }
        }
        for index in 0..k as usize {
            codewords.push(Codeword::standard_basis(index, k as usize)?);
        }

        Ok(Codebook {
            q,
            p_min,
            construction,
            pi,
            sigma,
            codewords,
            num_phase: num_phase as usize,
            n: n as usize,
            k: k as usize,
        })
    }

    /// Build from a JSON-level description; `pi`/`sigma` default to the
    /// identity. A `random` permutation spec without its own seed uses the
    /// top-level seed for `pi` and `seed + 1` for `sigma`.
    pub fn from_spec(spec: &CodebookSpec) -> Result<Self> {
        let q = Modulus::new(spec.q)?;
        let pi_spec = spec.pi.clone().unwrap_or(PermSpec::Identity);
        let sigma_spec = spec.sigma.clone().unwrap_or(PermSpec::Identity);
        let pi = pi_spec.realize(q, spec.seed)?;
        let sigma = sigma_spec.realize(q, spec.seed.map(|s| s + 1))?;
        match spec.construction {
            1 => {
                if spec.ell.is_some() {
                    return Err(Error::InvalidParameter(
                        "ell applies only to construction 2".into(),
                    ));
                }
                Self::build_construction_one(q, pi, sigma)
            }
            2 => Self::build_construction_two(q, pi, sigma, spec.ell.unwrap_or(0)),
            other => Err(Error::InvalidParameter(format!(
                "construction must be 1 or 2 (got {other})"
            ))),
        }
    }

    #[inline]
    pub fn q(&self) -> Modulus {
        self.q
    }

    #[inline]
    pub fn p_min(&self) -> u64 {
        self.p_min
    }

    #[inline]
    pub fn construction(&self) -> Construction {
        self.construction
    }

    #[inline]
    pub fn pi(&self) -> &PermutationZQ {
        &self.pi
    }

    #[inline]
    pub fn sigma(&self) -> &PermutationZQ {
        &self.sigma
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of phase-family codewords (`p_min * q^2`); they precede the
    /// standard-basis block.
    #[inline]
    pub fn num_phase(&self) -> usize {
        self.num_phase
    }

    #[inline]
    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    #[inline]
    pub fn codeword(&self, i: usize) -> &Codeword {
        &self.codewords[i]
    }

    /// Index of the phase word `F_{a,b,u}` under the lexicographic layout.
    pub fn phase_index(&self, a: u64, b: u64, u: u64) -> usize {
        let qq = self.q.get();
        debug_assert!(a < self.p_min && b < qq && u < qq);
        ((a * qq + b) * qq + u) as usize
    }

    /// Inverse of [`Codebook::phase_index`].
    pub fn phase_params(&self, index: usize) -> (u64, u64, u64) {
        let qq = self.q.get();
        let idx = index as u64;
        (idx / (qq * qq), (idx / qq) % qq, idx % qq)
    }

    /// Flat exponent matrix plus metadata header, as commented CSV.
    ///
    /// Data rows list the phase codewords only (one row of K exponents per
    /// word, `(a, b, u)` lexicographic); the K standard-basis rows are fully
    /// determined by `k` and are not repeated.
    pub fn export_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# gbf-codebooks dump v1")?;
        writeln!(w, "# construction={}", self.construction.id())?;
        writeln!(w, "# q={}", self.q)?;
        writeln!(w, "# p_min={}", self.p_min)?;
        match self.construction {
            Construction::One => writeln!(w, "# ell=-")?,
            Construction::Two { deleted_row } => writeln!(w, "# ell={deleted_row}")?,
        }
        writeln!(w, "# n={}", self.n)?;
        writeln!(w, "# k={}", self.k)?;
        writeln!(w, "# phase_rows={}", self.num_phase)?;
        writeln!(w, "# scale_sq=1/{}", self.k)?;
        let join = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(w, "# pi={}", join(self.pi.images()))?;
        writeln!(w, "# sigma={}", join(self.sigma.images()))?;
        writeln!(
            w,
            "# rows: phase codewords as K exponents of xi_q; the K standard-basis rows are implied"
        )?;
        let mut line = String::new();
        for word in &self.codewords[..self.num_phase] {
            if let CodewordKind::Phase { exponents, .. } = word.kind() {
                line.clear();
                for (idx, e) in exponents.iter().enumerate() {
                    if idx > 0 {
                        line.push(',');
                    }
                    line.push_str(&e.to_string());
                }
                writeln!(w, "{line}")?;
            }
        }
        Ok(())
    }

    /// Flat exponent matrix plus metadata header, as little-endian binary.
    ///
    /// Layout: magic `GBCB`, `version: u32`, `construction: u32`, `q: u64`,
    /// `p_min: u64`, `ell: u64` (`u64::MAX` for construction one), `n: u64`,
    /// `k: u64`, `phase_rows: u64`, `pi: q x u64`, `sigma: q x u64`, then
    /// `phase_rows * k` exponents as `u16`.
    pub fn export_binary(&self, mut w: impl Write) -> Result<()> {
        w.write_all(b"GBCB")?;
        w.write_all(&1u32.to_le_bytes())?;
        w.write_all(&(self.construction.id() as u32).to_le_bytes())?;
        w.write_all(&self.q.get().to_le_bytes())?;
        w.write_all(&self.p_min.to_le_bytes())?;
        let ell = match self.construction {
            Construction::One => u64::MAX,
            Construction::Two { deleted_row } => deleted_row,
        };
        w.write_all(&ell.to_le_bytes())?;
        w.write_all(&(self.n as u64).to_le_bytes())?;
        w.write_all(&(self.k as u64).to_le_bytes())?;
        w.write_all(&(self.num_phase as u64).to_le_bytes())?;
        for &x in self.pi.images() {
            w.write_all(&x.to_le_bytes())?;
        }
        for &x in self.sigma.images() {
            w.write_all(&x.to_le_bytes())?;
        }
        for word in &self.codewords[..self.num_phase] {
            if let CodewordKind::Phase { exponents, .. } = word.kind() {
                for e in exponents {
                    w.write_all(&e.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }
}

/// One codeword entry, exact and float: the entry is
/// `sqrt(scale_sq) * numerator` with `numerator` a root of unity or an
/// integer in `{0, 1}`.
#[derive(Clone, Debug)]
pub struct EntryValue {
    pub numerator: CyclotomicInt,
    pub scale_sq: RationalMagnitudeSq,
    pub float: Complex64,
}

/// Entry `k` of a codeword over `Z[xi_q]`.
pub fn codeword_entry(word: &Codeword, q: Modulus, k: usize) -> Result<EntryValue> {
    if k >= word.len() {
        return Err(Error::EntryOutOfRange {
            index: k,
            k: word.len(),
        });
    }
    match word.kind() {
        CodewordKind::StandardBasis { index } => {
            let hit = *index == k;
            Ok(EntryValue {
                numerator: if hit {
                    CyclotomicInt::one(q)
                } else {
                    CyclotomicInt::zero(q)
                },
                scale_sq: RationalMagnitudeSq::one(),
                float: Complex64::new(if hit { 1.0 } else { 0.0 }, 0.0),
            })
        }
        CodewordKind::Phase {
            exponents,
            scale_sq,
        } => {
            let e = exponents[k] as i64;
            let numerator = CyclotomicInt::root_power(q, e);
            let amp = scale_sq.sqrt_f64();
            let theta = 2.0 * std::f64::consts::PI * e as f64 / q.get() as f64;
            Ok(EntryValue {
                numerator,
                scale_sq: scale_sq.clone(),
                float: Complex64::new(amp * theta.cos(), amp * theta.sin()),
            })
        }
    }
}

/// JSON-level description of a codebook (`gbfcb build --spec`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodebookSpec {
    pub construction: u8,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<PermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<PermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
