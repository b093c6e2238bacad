//! Canonical stratification of the fiber F = f⁻¹(1) by coordinate support,
//! with per-stratum data: fullness, the determinant d_I, the restricted
//! monodromy period, stratum Euler characteristics, and the convenience
//! level.
//!
//! For a subset I of {1..n} the stratum F^{*I} is the part of F where
//! exactly the coordinates in I are nonzero; it is nonempty iff the
//! restriction f^I is not identically zero.
//!
//! Convenience is implemented with the codimension reading: f is
//! k-convenient when f^I is not identically zero for every I with
//! |I| >= n - k. (A literal cardinality reading `|I| >= k` is inconsistent
//! with the standard examples: the chain z1^a1 zbar2^b1 + z2^a2 zbar3^b2 +
//! z3^a3 kills f^{{1}} yet is 1-convenient, and its fiber is simply
//! connected; only the codimension reading produces that.)

use crate::exact::{gcd_many, BigInt, BigRational, ExactError, IntMatrix};
use crate::poly::MixedPolynomial;
use crate::weights::WeightSystem;
use num_traits::{Signed, Zero};
use std::fmt;

/// Subset enumeration is exponential; paper-scale inputs are tiny, so the
/// variable count is capped rather than optimized.
pub const MAX_STRATA_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrataError {
    ZeroPolynomial,
    TooManyVariables { n: usize, max: usize },
    /// The supplied weight system does not satisfy the degree equations of
    /// the polynomial.
    InconsistentWeights,
    Exact(ExactError),
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::ZeroPolynomial => write!(f, "cannot stratify the zero polynomial"),
            StrataError::TooManyVariables { n, max } => {
                write!(f, "{n} variables exceeds the stratification cap of {max}")
            }
            StrataError::InconsistentWeights => {
                write!(f, "weight system does not match the polynomial")
            }
            StrataError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for StrataError {}

impl From<ExactError> for StrataError {
    fn from(e: ExactError) -> Self {
        StrataError::Exact(e)
    }
}

/// Data of one stratum F^{*I} with f^I not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    /// I, 1-based and sorted.
    pub vars: Vec<usize>,
    /// f^I, in the ambient n variables.
    pub restricted: MixedPolynomial,
    /// f^I not identically zero (true for every listed stratum).
    pub nonvanishing: bool,
    /// f^I is simplicial with exactly |I| monomials in the |I| active
    /// variables.
    pub full: bool,
    /// d_I = |det of the exponent-difference block|; defined only when full.
    pub d: Option<BigInt>,
    /// r_I = gcd of the global polar weights over I; always positive for a
    /// nonvanishing stratum.
    pub r: BigInt,
    /// Period of the restricted monodromy: m_p / r_I.
    pub m_p_stratum: BigInt,
    /// chi(F^{*I}) = (-1)^(|I|-1) d_I when full, 0 otherwise.
    pub chi: BigInt,
    /// (-1)^{|I|} d_I / m_{p,I} when full, 0 otherwise.
    pub zeta_exponent: BigRational,
}

/// The full stratification, ordered by (|I|, lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationReport {
    pub n: usize,
    /// Global polar degree, copied from the weight system.
    pub m_p: BigInt,
    /// All nonempty I with f^I not identically zero.
    pub strata: Vec<StratumReport>,
    /// S = { I : f^I full }.
    pub full_sets: Vec<Vec<usize>>,
    /// The convenience level k.
    pub convenience: usize,
}

impl StratificationReport {
    /// The full strata, in report order.
    pub fn full_strata(&self) -> impl Iterator<Item = &StratumReport> {
        self.strata.iter().filter(|s| s.full)
    }
}

fn mask_to_vars(mask: u32, n: usize) -> Vec<usize> {
    (1..=n).filter(|j| mask & (1 << (j - 1)) != 0).collect()
}

fn support_masks(f: &MixedPolynomial) -> Vec<u32> {
    f.monomials()
        .iter()
        .map(|m| m.support().fold(0u32, |acc, j| acc | (1 << (j - 1))))
        .collect()
}

/// The largest k such that every restriction of codimension <= k is nonzero.
pub fn convenience_level(f: &MixedPolynomial) -> Result<usize, StrataError> {
    if f.is_zero() {
        return Err(StrataError::ZeroPolynomial);
    }
    let n = f.n();
    if n > MAX_STRATA_VARS {
        return Err(StrataError::TooManyVariables {
            n,
            max: MAX_STRATA_VARS,
        });
    }
    let supports = support_masks(f);
    // Nonvanishing is upward closed, so the sizes holding a vanishing subset
    // form an initial segment 0..=J; then k = n - J - 1 (or n if none).
    let mut largest_vanishing: Option<usize> = None;
    for mask in 0..(1u32 << n) {
        if !supports.iter().any(|&s| s & !mask == 0) {
            let size = mask.count_ones() as usize;
            largest_vanishing = Some(largest_vanishing.map_or(size, |j| j.max(size)));
        }
    }
    Ok(match largest_vanishing {
        None => n,
        Some(j) => n - j - 1,
    })
}

fn restricted_block(f: &MixedPolynomial, keep: &[usize], sign: i64) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = f
        .monomials()
        .iter()
        .map(|m| {
            keep.iter()
                .map(|&j| {
                    BigInt::from(match sign {
                        1 => m.radial_exponent(j),
                        _ => m.polar_exponent(j),
                    })
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows).expect("uniform row length")
}

/// Stratify F = f⁻¹(1) for a polynomial with weight system `w`.
pub fn stratify(
    f: &MixedPolynomial,
    w: &WeightSystem,
) -> Result<StratificationReport, StrataError> {
    if f.is_zero() {
        return Err(StrataError::ZeroPolynomial);
    }
    let n = f.n();
    if n > MAX_STRATA_VARS {
        return Err(StrataError::TooManyVariables {
            n,
            max: MAX_STRATA_VARS,
        });
    }
    if w.q.len() != n || !w.is_consistent_with(f) {
        return Err(StrataError::InconsistentWeights);
    }

    let supports = support_masks(f);
    let mut strata = Vec::new();
    for mask in 1..(1u32 << n) {
        if !supports.iter().any(|&s| s & !mask == 0) {
            continue; // f^I identically zero
        }
        let vars = mask_to_vars(mask, n);
        let restricted = f.restrict(&vars);
        let size = vars.len();
        let s_count = restricted.len();

        let mut d: Option<BigInt> = None;
        if s_count == size {
            let diff = restricted_block(&restricted, &vars, -1);
            let det_diff = diff.det()?;
            if !det_diff.is_zero() {
                let sum = restricted_block(&restricted, &vars, 1);
                if !sum.det()?.is_zero() {
                    d = Some(det_diff.abs());
                }
            }
        }

        let p_over_i: Vec<BigInt> = vars.iter().map(|&j| w.p[j - 1].clone()).collect();
        let r = gcd_many(&p_over_i)?;
        // Some p_i over I is nonzero: the polar degree of any monomial of
        // f^I is m_p != 0 and is a combination of the p_i, i in I.
        debug_assert!(r.is_positive());
        let m_p_stratum = &w.m_p / &r;
        debug_assert_eq!(&m_p_stratum * &r, w.m_p);

        let (chi, zeta_exponent) = match &d {
            Some(d) => {
                let chi = if size % 2 == 1 { d.clone() } else { -d.clone() };
                let zeta_exponent = BigRational::new(-chi.clone(), m_p_stratum.clone());
                (chi, zeta_exponent)
            }
            None => (BigInt::zero(), BigRational::zero()),
        };

        strata.push(StratumReport {
            vars,
            restricted,
            nonvanishing: true,
            full: d.is_some(),
            d,
            r,
            m_p_stratum,
            chi,
            zeta_exponent,
        });
    }
    strata.sort_by(|a, b| (a.vars.len(), &a.vars).cmp(&(b.vars.len(), &b.vars)));
    let full_sets = strata
        .iter()
        .filter(|s| s.full)
        .map(|s| s.vars.clone())
        .collect();
    let convenience = convenience_level(f)?;
    Ok(StratificationReport {
        n,
        m_p: w.m_p.clone(),
        strata,
        full_sets,
        convenience,
    })
}
