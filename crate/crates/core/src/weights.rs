//! Weight systems of mixed polynomials: decide polar weighted homogeneity,
//! compute radial/polar weights, simpliciality, fullness, and diagnostics.
//!
//! A mixed polynomial is polar weighted homogeneous when both degree systems
//!
//! ```text
//! sum_j q_j (nu_j + mu_j) = m_r     (radial)
//! sum_j p_j (nu_j - mu_j) = m_p     (polar)
//! ```
//!
//! hold over all its monomials with integer weights, gcd(q) = gcd(p) = 1 and
//! m_r, m_p nonzero. We solve the normalized systems (right-hand side 1) for
//! u = q/m_r and v = p/m_p, then clear denominators with the lcm. With the
//! all-ones right-hand side the lcm construction always yields m_r, m_p > 0,
//! and primitivity (gcd = 1) is automatic; it is still asserted and reported
//! as an error rather than silently rescaled.

use crate::exact::{
    gcd_many, lcm_many, solve_affine_system, AffineOutcome, BigInt, BigRational, ExactError,
};
use crate::poly::MixedPolynomial;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which of the two degree systems is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Radial,
    Polar,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Radial => write!(f, "radial"),
            WeightKind::Polar => write!(f, "polar"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    /// The zero polynomial has no weight system.
    ZeroPolynomial,
    /// The degree system named is inconsistent: no polar action exists.
    NotPolarWeighted { system: WeightKind },
    /// Clearing denominators produced imprimitive integer weights. Cannot
    /// happen for systems normalized to right-hand side 1; kept as a loud
    /// check instead of a silent rescale.
    NonPrimitive { system: WeightKind },
    Exact(ExactError),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::ZeroPolynomial => write!(f, "the zero polynomial has no weight system"),
            WeightError::NotPolarWeighted { system } => {
                write!(f, "not polar weighted: the {system} system is inconsistent")
            }
            WeightError::NonPrimitive { system } => {
                write!(f, "imprimitive {system} weights (gcd != 1)")
            }
            WeightError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for WeightError {}

impl From<ExactError> for WeightError {
    fn from(e: ExactError) -> Self {
        WeightError::Exact(e)
    }
}

/// Radial and polar integer weights with their normalized rational forms.
///
/// Invariants: gcd(q) = gcd(p) = 1, m_r > 0, m_p > 0, u_i = q_i / m_r,
/// v_i = p_i / m_p, and every monomial of the source polynomial satisfies
/// both degree equations exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub q: Vec<BigInt>,
    pub m_r: BigInt,
    pub p: Vec<BigInt>,
    pub m_p: BigInt,
    pub u: Vec<BigRational>,
    pub v: Vec<BigRational>,
}

impl WeightSystem {
    /// Check both degree equations against every monomial of `f`.
    pub fn is_consistent_with(&self, f: &MixedPolynomial) -> bool {
        f.monomials().iter().all(|m| {
            let mut radial = BigInt::zero();
            let mut polar = BigInt::zero();
            for j in 1..=f.n() {
                radial += &self.q[j - 1] * BigInt::from(m.radial_exponent(j));
                polar += &self.p[j - 1] * BigInt::from(m.polar_exponent(j));
            }
            radial == self.m_r && polar == self.m_p
        })
    }
}

/// Zero-weight diagnostics per the canonical retract subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDiagnostics {
    /// All radial weights nonnegative.
    pub semipositive: bool,
    /// All radial weights strictly positive.
    pub strictly_positive: bool,
    /// I0 = { j : q_j = 0 }, 1-based; the fiber over 0 deformation-retracts
    /// onto the coordinate subspace C^{I0} when the weights are semipositive.
    pub retract_subspace: Vec<usize>,
    /// Structural cross-check: every monomial contains some variable outside
    /// I0 (otherwise its radial degree would be 0, not m_r).
    pub every_monomial_leaves_retract: bool,
}

/// Rows of the radial (nu + mu) or polar (nu - mu) degree system, one per
/// monomial in canonical order. The weight equations require every row
/// dotted with the normalized weights to equal 1.
pub fn degree_rows(f: &MixedPolynomial, kind: WeightKind) -> Vec<Vec<BigInt>> {
    f.monomials()
        .iter()
        .map(|m| {
            (1..=f.n())
                .map(|j| {
                    BigInt::from(match kind {
                        WeightKind::Radial => m.radial_exponent(j),
                        WeightKind::Polar => m.polar_exponent(j),
                    })
                })
                .collect()
        })
        .collect()
}

fn solve_normalized(
    f: &MixedPolynomial,
    kind: WeightKind,
) -> Result<Vec<BigRational>, WeightError> {
    let rows = degree_rows(f, kind);
    let rhs = vec![BigRational::one(); rows.len()];
    match solve_affine_system(&rows, &rhs)? {
        AffineOutcome::Inconsistent => Err(WeightError::NotPolarWeighted { system: kind }),
        // Underdetermined systems are completed deterministically: every free
        // coordinate is set to 1, which is the same as augmenting with a
        // standard basis row (right side 1) per missing coordinate, smallest
        // index first.
        AffineOutcome::Solvable(sol) => Ok(sol.completed()),
    }
}

fn integerize(
    normalized: &[BigRational],
    kind: WeightKind,
) -> Result<(Vec<BigInt>, BigInt), WeightError> {
    let denoms: Vec<BigInt> = normalized.iter().map(|x| x.denom().clone()).collect();
    let degree = lcm_many(&denoms)?;
    let weights: Vec<BigInt> = normalized
        .iter()
        .map(|x| {
            let w = x * BigRational::from_integer(degree.clone());
            debug_assert!(w.is_integer());
            w.to_integer()
        })
        .collect();
    if gcd_many(&weights)? != BigInt::one() {
        return Err(WeightError::NonPrimitive { system: kind });
    }
    Ok((weights, degree))
}

/// Decide polar weighted homogeneity and compute the weight system.
pub fn compute_weights(f: &MixedPolynomial) -> Result<WeightSystem, WeightError> {
    if f.is_zero() {
        return Err(WeightError::ZeroPolynomial);
    }
    let u = solve_normalized(f, WeightKind::Radial)?;
    let v = solve_normalized(f, WeightKind::Polar)?;
    let (q, m_r) = integerize(&u, WeightKind::Radial)?;
    let (p, m_p) = integerize(&v, WeightKind::Polar)?;
    let w = WeightSystem {
        q,
        m_r,
        p,
        m_p,
        u,
        v,
    };
    debug_assert!(w.is_consistent_with(f));
    Ok(w)
}

/// True iff the families {nu_j + mu_j} and {nu_j - mu_j} are each linearly
/// independent over the rationals.
pub fn is_simplicial(f: &MixedPolynomial) -> bool {
    let s = f.len();
    if s == 0 {
        return true;
    }
    if s > f.n() {
        return false;
    }
    let em = f.exponent_matrices();
    em.sum().rank() == s && em.diff().rank() == s
}

/// Simplicial with exactly n monomials.
pub fn is_full(f: &MixedPolynomial) -> bool {
    f.len() == f.n() && is_simplicial(f)
}

/// Zero-weight diagnostics for a weight system of `f`.
pub fn diagnostics(f: &MixedPolynomial, w: &WeightSystem) -> WeightDiagnostics {
    let retract_subspace: Vec<usize> = w
        .q
        .iter()
        .enumerate()
        .filter(|(_, q)| q.is_zero())
        .map(|(j, _)| j + 1)
        .collect();
    let semipositive = w.q.iter().all(|q| !q.is_negative());
    let strictly_positive = retract_subspace.is_empty() && semipositive;
    let every_monomial_leaves_retract = f.monomials().iter().all(|m| {
        m.support()
            .any(|j| !retract_subspace.contains(&j))
    });
    WeightDiagnostics {
        semipositive,
        strictly_positive,
        retract_subspace,
        every_monomial_leaves_retract,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_linear, LinearSolution};
    use crate::poly::parse;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn weights_of_g2_two_vars() {
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let w = compute_weights(&f).unwrap();
        assert_eq!(w.u, vec![rat(1, 3), rat(1, 3)]);
        assert_eq!(w.q, ints(&[1, 1]));
        assert_eq!(w.m_r, BigInt::from(3));
        assert_eq!(w.v, vec![rat(2, 3), rat(1, 3)]);
        assert_eq!(w.p, ints(&[2, 1]));
        assert_eq!(w.m_p, BigInt::from(3));
    }

    #[test]
    fn phi_has_no_polar_action() {
        let f = parse("z1^2*zbar1^2 + z2^2*zbar2^2", None).unwrap();
        assert_eq!(
            compute_weights(&f),
            Err(WeightError::NotPolarWeighted {
                system: WeightKind::Polar
            })
        );
    }

    #[test]
    fn k_polynomial_weights() {
        // k(z) = sum z_i^d (zbar_i + zbar_{i+1}), d = 2, n = 2:
        // radial type (1,1;3), polar type (1,1;1)
        let f = parse("z1^2*zbar1 + z1^2*zbar2 + z2^2*zbar2 + z2^2*zbar1", None).unwrap();
        let w = compute_weights(&f).unwrap();
        assert_eq!(w.q, ints(&[1, 1]));
        assert_eq!(w.m_r, BigInt::from(3));
        assert_eq!(w.p, ints(&[1, 1]));
        assert_eq!(w.m_p, BigInt::from(1));
        assert!(!is_simplicial(&f));
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = parse("z1 - z1", None).unwrap();
        assert_eq!(compute_weights(&f), Err(WeightError::ZeroPolynomial));
    }

    #[test]
    fn simplicial_cyclic_and_single() {
        let f = parse("z1^2*zbar2 + z2^3*zbar3 + z3^5*zbar1", None).unwrap();
        assert!(is_simplicial(&f));
        assert!(is_full(&f));
        let g = parse("z1*zbar2", None).unwrap();
        assert!(is_simplicial(&g));
        assert!(!is_full(&g));
    }

    #[test]
    fn full_brieskorn_not_full_restriction() {
        let f = parse("z1^3 + z2^2", None).unwrap();
        assert!(is_full(&f));
        let f1 = parse("z1^2*zbar2 + z2^2*zbar3 + z3^3", None).unwrap();
        let restricted = f1.restrict(&[1, 3]);
        assert!(!is_full(&restricted));
        assert!(!is_full(&MixedPolynomial::zero(2)));
    }

    #[test]
    fn underdetermined_completion_is_deterministic() {
        // single monomial in two variables: radial row (1,1), free column 2
        let f = parse("z1*zbar2", None).unwrap();
        let w = compute_weights(&f).unwrap();
        assert_eq!(w.u, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(w.q, ints(&[0, 1]));
        assert_eq!(w.m_r, BigInt::from(1));
        assert_eq!(w.v, vec![rat(2, 1), rat(1, 1)]);
        assert_eq!(w.p, ints(&[2, 1]));
        assert_eq!(w.m_p, BigInt::from(1));
        assert!(w.is_consistent_with(&f));
    }

    #[test]
    fn diagnostics_zero_weight_patterns() {
        // g1 with n=2, a=(1,2): u = (1, 0), so I0 = {2}
        let f = parse("z1*zbar2 + z2^2*zbar1", None).unwrap();
        let w = compute_weights(&f).unwrap();
        assert_eq!(w.u, vec![rat(1, 1), rat(0, 1)]);
        let d = diagnostics(&f, &w);
        assert!(d.semipositive);
        assert!(!d.strictly_positive);
        assert_eq!(d.retract_subspace, vec![2]);
        assert!(d.every_monomial_leaves_retract);

        let b = parse("z1^3 + z2^2", None).unwrap();
        let wb = compute_weights(&b).unwrap();
        let db = diagnostics(&b, &wb);
        assert!(db.strictly_positive);
        assert!(db.retract_subspace.is_empty());

        // g2 with a=(2,1): zero radial weight at index 1
        let g = parse("z1^2*zbar2 + z2", None).unwrap();
        let wg = compute_weights(&g).unwrap();
        assert_eq!(wg.u, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(diagnostics(&g, &wg).retract_subspace, vec![1]);
    }

    #[test]
    fn rescaling_leaves_weights_unchanged() {
        use crate::exact::GaussianRational;
        let f = parse("z1^2*zbar2 + z2^3*zbar3 + z3^5*zbar1", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let g = f.scale(&GaussianRational::new(rat(-3, 7), rat(5, 2)));
        assert_eq!(compute_weights(&g).unwrap(), w);
    }

    #[test]
    fn laurent_is_weighted_homogeneous_for_polar_weights() {
        for text in [
            "z1^2*zbar2 + z2^3",
            "z1^2*zbar2 + z2^3*zbar3 + z3^5*zbar1",
            "z1*zbar2 + z2^2*zbar1",
            "z1^2*zbar1 + z1^2*zbar2 + z2^2*zbar2 + z2^2*zbar1",
        ] {
            let f = parse(text, None).unwrap();
            let w = compute_weights(&f).unwrap();
            for term in f.associated_laurent().terms() {
                let mut deg = BigInt::zero();
                for (j, &e) in term.exponents.iter().enumerate() {
                    deg += &w.p[j] * BigInt::from(e);
                }
                assert_eq!(deg, w.m_p, "laurent term of {text} off-degree");
            }
        }
    }

    #[test]
    fn full_simplicial_weights_match_matrix_inverse() {
        let f = parse("z1^2*zbar2 + z2^3*zbar3 + z3^5*zbar1", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let em = f.exponent_matrices();
        let ones = vec![BigRational::one(); 3];
        match solve_linear(&em.sum(), &ones).unwrap() {
            LinearSolution::Unique(u) => assert_eq!(u, w.u),
            _ => panic!("radial matrix should be invertible"),
        }
        match solve_linear(&em.diff(), &ones).unwrap() {
            LinearSolution::Unique(v) => assert_eq!(v, w.v),
            _ => panic!("polar matrix should be invertible"),
        }
    }
}
