//! Numerical witnesses for the isolatedness criteria of g1 and g2.
//!
//! When a criterion is false, the singular locus contains an explicit
//! one-parameter family supported on a coordinate subspace; setting the
//! chain parameter alpha = 1 produces a concrete nonzero singular point of
//! V = f⁻¹(0) with coordinates 0 and 1. When the criterion is true, sampling
//! the same candidate loci (the parity coordinate subspaces contained in V)
//! must find no singular point at all.

use super::{sample_complex, singularity_test, NumericsError, SampleConfig};
use crate::families::{self, FamilySpec};
use crate::poly::MixedPolynomial;
use num_complex::Complex64;

/// A constructed singular point of V1 = g1⁻¹(0) away from the origin, or
/// `None` when the isolatedness criterion holds. Only exists for even n with
/// all exponents >= 2 confined to one parity class: the witness puts 1 on
/// that class and 0 elsewhere.
pub fn g1_singular_witness(a: &[u32]) -> Result<Option<Vec<Complex64>>, families::FamilyError> {
    if families::isolated_g1(a)? {
        return Ok(None);
    }
    // criterion false: n even and every a_j >= 2 sits in one parity class
    let parity = a
        .iter()
        .position(|&x| x >= 2)
        .expect("validated: some exponent >= 2")
        % 2;
    Ok(Some(
        (0..a.len())
            .map(|j| {
                if j % 2 == parity {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect(),
    ))
}

/// A constructed singular point of V2 = g2⁻¹(0) away from the origin, or
/// `None` when the isolatedness criterion holds.
///
/// For a_n = 1 the singular chain lives on alternating coordinates above the
/// last exponent >= 2 of the matching parity; alpha = 1 makes every chain
/// relation `z_next = alpha * z_prev^e` hold with all entries equal to 1.
pub fn g2_singular_witness(a: &[u32]) -> Result<Option<Vec<Complex64>>, families::FamilyError> {
    if families::isolated_g2(a)? {
        return Ok(None);
    }
    let n = a.len();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut witness = vec![zero; n];
    if n.is_multiple_of(2) {
        // live coordinates: odd 1-based indices above the last even-position
        // exponent >= 2
        let s = (1..=n / 2).filter(|&j| a[2 * j - 1] >= 2).max().unwrap_or(0);
        for idx1 in (2 * s + 1..=n).step_by(2) {
            witness[idx1 - 1] = one;
        }
    } else {
        // n odd and some odd-position exponent >= 2: live coordinates are
        // even 1-based indices above it
        let s = (0..n.div_ceil(2))
            .filter(|&j| a[2 * j] >= 2)
            .max()
            .expect("criterion false: some odd-indexed exponent >= 2");
        for idx1 in (2 * s + 2..=n).step_by(2) {
            witness[idx1 - 1] = one;
        }
    }
    Ok(Some(witness))
}

/// Outcome of sampling candidate loci for singular points.
#[derive(Clone, Debug)]
pub struct LocusSearchReport {
    /// Points actually tested (on V, away from 0).
    pub samples_run: usize,
    /// First singular point found, if any.
    pub singular: Option<Vec<Complex64>>,
}

/// Sample the candidate loci of `f`: for each activity pattern whose
/// restriction vanishes identically (so the whole subspace lies in V), draw
/// points with live coordinates of modulus ~1 and test the singularity
/// criterion at tolerance `cfg.tol`.
pub fn search_loci(
    f: &MixedPolynomial,
    patterns: &[Vec<bool>],
    cfg: &SampleConfig,
) -> LocusSearchReport {
    let mut rng = cfg.rng();
    let mut samples_run = 0;
    let mut singular = None;
    for pattern in patterns {
        let active: Vec<usize> = (1..=f.n()).filter(|&j| pattern[j - 1]).collect();
        if active.is_empty() || !f.restrict(&active).is_zero() {
            continue; // subspace not contained in V
        }
        let per_pattern = cfg.count.div_ceil(patterns.len().max(1));
        for _ in 0..per_pattern {
            let z: Vec<Complex64> = pattern
                .iter()
                .map(|&on| {
                    if on {
                        sample_complex(&mut rng, (0.5, 2.0))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            samples_run += 1;
            if singularity_test(f, &z, cfg.tol).is_singular() && singular.is_none() {
                singular = Some(z);
            }
        }
    }
    LocusSearchReport {
        samples_run,
        singular,
    }
}

/// The two parity coordinate subspaces of C^n (odd-index live, even-index
/// live), which carry the candidate singular families of g1 and g2.
pub fn parity_patterns(n: usize) -> Vec<Vec<bool>> {
    vec![
        (0..n).map(|j| j % 2 == 0).collect(),
        (0..n).map(|j| j % 2 == 1).collect(),
    ]
}

/// Consistency verdict between the isolatedness criterion of a family and
/// the numerical evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// Criterion true and no singular sample found.
    ConsistentIsolated { samples_run: usize },
    /// Criterion false; the constructed witness is singular, nonzero, on V.
    ConsistentNonIsolated { witness_verified: bool },
    /// Evidence contradicts the criterion.
    Inconsistent(String),
}

impl WitnessOutcome {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, WitnessOutcome::Inconsistent(_))
    }
}

/// Cross-check one g1/g2 instance: construct a witness when the criterion
/// fails, sample the candidate loci when it holds.
pub fn check_family_isolatedness(
    spec: &FamilySpec,
    cfg: &SampleConfig,
) -> Result<WitnessOutcome, NumericsError> {
    let (f, witness, criterion) = match spec {
        FamilySpec::G1 { a } => {
            let f = families::build(spec).map_err(family_err)?;
            let w = g1_singular_witness(a).map_err(family_err)?;
            let crit = families::isolated_g1(a).map_err(family_err)?;
            (f, w, crit)
        }
        FamilySpec::G2 { a } => {
            let f = families::build(spec).map_err(family_err)?;
            let w = g2_singular_witness(a).map_err(family_err)?;
            let crit = families::isolated_g2(a).map_err(family_err)?;
            (f, w, crit)
        }
        _ => return Err(NumericsError::DegenerateExponents),
    };
    if criterion {
        let report = search_loci(&f, &parity_patterns(f.n()), cfg);
        if let Some(z) = report.singular {
            return Ok(WitnessOutcome::Inconsistent(format!(
                "criterion says isolated but found singular point {z:?}"
            )));
        }
        return Ok(WitnessOutcome::ConsistentIsolated {
            samples_run: report.samples_run,
        });
    }
    let witness = witness.expect("criterion false implies a witness");
    let nonzero = witness.iter().any(|z| z.norm() > 0.5);
    let on_fiber = f.evaluate(&witness).norm() < cfg.tol;
    let singular = singularity_test(&f, &witness, cfg.tol).is_singular();
    if nonzero && on_fiber && singular {
        Ok(WitnessOutcome::ConsistentNonIsolated {
            witness_verified: true,
        })
    } else {
        Ok(WitnessOutcome::Inconsistent(format!(
            "witness {witness:?}: nonzero={nonzero} on_fiber={on_fiber} singular={singular}"
        )))
    }
}

fn family_err(_: families::FamilyError) -> NumericsError {
    NumericsError::DegenerateExponents
}
