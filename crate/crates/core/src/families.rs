//! Named polynomial families: the twisted chains g1 and g2, cyclic
//! polynomials f_{a,b}, Brieskorn polynomials, weak sigma-twisted Brieskorn
//! polynomials, and join compositions, together with closed-form weight
//! formulas and isolatedness criteria for their zero sets.
//!
//! For exponent vectors a (and b where applicable):
//!
//! ```text
//! g1        = z1^a1 zbar2 + z2^a2 zbar3 + ... + zn^an zbar1
//! g2        = z1^a1 zbar2 + ... + z_{n-1}^{a_{n-1}} zbarn + zn^an
//! cyclic    = z1^a1 zbar2^b1 + ... + zn^an zbar1^bn
//! brieskorn = z1^a1 + ... + zn^an
//! sigma     = z1^a1 zbar_{s(1)} + ... + zn^an zbar_{s(n)}
//! ```

use crate::exact::{BigInt, BigRational, GaussianRational};
use crate::poly::{MixedMonomial, MixedPolynomial};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    EmptyExponents,
    /// Some a_i is below the family's minimum.
    ExponentTooSmall { index: usize, min: u32 },
    /// g1 needs a_j >= 2 for some j, or there is no polar action.
    NeedsExponentAtLeastTwo,
    LengthMismatch { expected: usize, got: usize },
    NotAPermutation,
    /// A nontrivial cycle whose exponents are all 1 carries no polar action,
    /// so the isolatedness criterion does not apply to it.
    CycleWithoutPolarAction { cycle: Vec<usize> },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::EmptyExponents => write!(f, "exponent vector is empty"),
            FamilyError::ExponentTooSmall { index, min } => {
                write!(f, "exponent a{index} must be at least {min}")
            }
            FamilyError::NeedsExponentAtLeastTwo => {
                write!(f, "some exponent must be at least 2 for a polar action")
            }
            FamilyError::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            FamilyError::NotAPermutation => write!(f, "not a permutation of 1..=n"),
            FamilyError::CycleWithoutPolarAction { cycle } => {
                write!(f, "cycle {cycle:?} has all exponents 1: no polar action")
            }
        }
    }
}

impl std::error::Error for FamilyError {}

/// A family instance; `build` produces the literal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    G1 { a: Vec<u32> },
    G2 { a: Vec<u32> },
    Cyclic { a: Vec<u32>, b: Vec<u32> },
    Brieskorn { a: Vec<u32> },
    /// `sigma[j-1]` is the image of j; 1-based.
    SigmaTwisted { sigma: Vec<usize>, a: Vec<u32> },
}

fn check_min(a: &[u32], min: u32) -> Result<(), FamilyError> {
    if a.is_empty() {
        return Err(FamilyError::EmptyExponents);
    }
    for (i, &ai) in a.iter().enumerate() {
        if ai < min {
            return Err(FamilyError::ExponentTooSmall { index: i + 1, min });
        }
    }
    Ok(())
}

fn check_g1(a: &[u32]) -> Result<(), FamilyError> {
    check_min(a, 1)?;
    if a.iter().all(|&x| x < 2) {
        return Err(FamilyError::NeedsExponentAtLeastTwo);
    }
    Ok(())
}

fn check_permutation(sigma: &[usize]) -> Result<(), FamilyError> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &img in sigma {
        if img == 0 || img > n || seen[img - 1] {
            return Err(FamilyError::NotAPermutation);
        }
        seen[img - 1] = true;
    }
    Ok(())
}

fn unit_monomial(nu: Vec<u32>, mu: Vec<u32>) -> MixedMonomial {
    MixedMonomial {
        coeff: GaussianRational::one(),
        nu,
        mu,
    }
}

/// Build the literal polynomial of a family instance (all coefficients 1).
pub fn build(spec: &FamilySpec) -> Result<MixedPolynomial, FamilyError> {
    let terms: Vec<MixedMonomial> = match spec {
        FamilySpec::G1 { a } => {
            check_g1(a)?;
            let n = a.len();
            (0..n)
                .map(|j| {
                    let mut nu = vec![0; n];
                    let mut mu = vec![0; n];
                    nu[j] = a[j];
                    mu[(j + 1) % n] = 1;
                    unit_monomial(nu, mu)
                })
                .collect()
        }
        FamilySpec::G2 { a } => {
            check_min(a, 1)?;
            let n = a.len();
            (0..n)
                .map(|j| {
                    let mut nu = vec![0; n];
                    let mut mu = vec![0; n];
                    nu[j] = a[j];
                    if j + 1 < n {
                        mu[j + 1] = 1;
                    }
                    unit_monomial(nu, mu)
                })
                .collect()
        }
        FamilySpec::Cyclic { a, b } => {
            check_min(a, 1)?;
            if b.len() != a.len() {
                return Err(FamilyError::LengthMismatch {
                    expected: a.len(),
                    got: b.len(),
                });
            }
            check_min(b, 1)?;
            let n = a.len();
            (0..n)
                .map(|j| {
                    let mut nu = vec![0; n];
                    let mut mu = vec![0; n];
                    nu[j] = a[j];
                    mu[(j + 1) % n] = b[j];
                    unit_monomial(nu, mu)
                })
                .collect()
        }
        FamilySpec::Brieskorn { a } => {
            check_min(a, 2)?;
            let n = a.len();
            (0..n)
                .map(|j| {
                    let mut nu = vec![0; n];
                    nu[j] = a[j];
                    unit_monomial(nu, vec![0; n])
                })
                .collect()
        }
        FamilySpec::SigmaTwisted { sigma, a } => {
            check_min(a, 1)?;
            if sigma.len() != a.len() {
                return Err(FamilyError::LengthMismatch {
                    expected: a.len(),
                    got: sigma.len(),
                });
            }
            check_permutation(sigma)?;
            let n = a.len();
            (0..n)
                .map(|j| {
                    let mut nu = vec![0; n];
                    let mut mu = vec![0; n];
                    nu[j] = a[j];
                    mu[sigma[j] - 1] += 1;
                    unit_monomial(nu, mu)
                })
                .collect()
        }
    };
    let n = terms.first().map_or(0, |m: &MixedMonomial| m.nu.len());
    Ok(MixedPolynomial::new(n, terms).expect("family terms are well-formed"))
}

fn big(x: u32) -> BigInt {
    BigInt::from(x)
}

/// Cyclic product a_{from} a_{from+1} ... a_{to} with a_{i+n} = a_i
/// (1-based bounds; empty when to < from).
fn cyclic_product(a: &[u32], from: i64, to: i64) -> BigInt {
    let n = a.len() as i64;
    let mut acc = BigInt::one();
    let mut t = from;
    while t <= to {
        let idx = (t - 1).rem_euclid(n) as usize;
        acc *= big(a[idx]);
        t += 1;
    }
    acc
}

/// Closed-form normalized radial weights of g1.
///
/// With the cyclic convention a_{i+n} = a_i and m = floor(n/2):
///
/// ```text
/// n = 2m:    u_j = (1/(a1...an - 1)) * sum_{i=0}^{m-1} (a_{j+2i+1} - 1) a_{j+2i+2} ... a_{j+n-1}
/// n = 2m+1:  u_j = (1/(a1...an + 1)) * (1 + the same sum)
/// ```
pub fn g1_weights_closed_form(a: &[u32]) -> Result<Vec<BigRational>, FamilyError> {
    check_g1(a)?;
    let n = a.len() as i64;
    let m = n / 2;
    let product = cyclic_product(a, 1, n);
    let odd = n % 2 == 1;
    let denominator = if odd {
        &product + BigInt::one()
    } else {
        &product - BigInt::one()
    };
    let mut u = Vec::with_capacity(a.len());
    for j in 1..=n {
        let mut acc = if odd { BigInt::one() } else { BigInt::zero() };
        for i in 0..m {
            let lead = a[((j + 2 * i) % n) as usize];
            // (a_{j+2i+1} - 1) times the cyclic product a_{j+2i+2} ... a_{j+n-1}
            let factor = cyclic_product(a, j + 2 * i + 2, j + n - 1);
            acc += (big(lead) - BigInt::one()) * factor;
        }
        u.push(BigRational::new(acc, denominator.clone()));
    }
    Ok(u)
}

/// Closed-form normalized radial weights of g2:
/// u_j = 1/a_j - 1/(a_j a_{j+1}) + ... + (-1)^{n-j} / (a_j ... a_n).
pub fn g2_weights_closed_form(a: &[u32]) -> Result<Vec<BigRational>, FamilyError> {
    check_min(a, 1)?;
    let n = a.len();
    let mut u = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = BigRational::zero();
        let mut denom = BigInt::one();
        for (k, &ak) in a.iter().enumerate().skip(j) {
            denom *= big(ak);
            let term = BigRational::new(BigInt::one(), denom.clone());
            if (k - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        u.push(acc);
    }
    Ok(u)
}

/// Simpliciality of the cyclic family: a1...an != b1...bn.
pub fn cyclic_simplicial(a: &[u32], b: &[u32]) -> Result<bool, FamilyError> {
    check_min(a, 1)?;
    if b.len() != a.len() {
        return Err(FamilyError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    check_min(b, 1)?;
    let n = a.len() as i64;
    Ok(cyclic_product(a, 1, n) != cyclic_product(b, 1, n))
}

/// Isolatedness criterion for V1 = g1^{-1}(0): the singularity at the origin
/// is isolated iff n is odd, or n is even and two indices i < j with
/// a_i, a_j >= 2 have odd gap j - i.
pub fn isolated_g1(a: &[u32]) -> Result<bool, FamilyError> {
    check_g1(a)?;
    if a.len() % 2 == 1 {
        return Ok(true);
    }
    let mut parity_seen = [false, false];
    for (i, &ai) in a.iter().enumerate() {
        if ai >= 2 {
            parity_seen[i % 2] = true;
        }
    }
    Ok(parity_seen[0] && parity_seen[1])
}

/// Isolatedness criterion for V2 = g2^{-1}(0): isolated iff a_n >= 2, or
/// a_n = 1 with n odd and every odd-indexed exponent equal to 1.
pub fn isolated_g2(a: &[u32]) -> Result<bool, FamilyError> {
    check_min(a, 1)?;
    let n = a.len();
    if a[n - 1] >= 2 {
        return Ok(true);
    }
    Ok(n % 2 == 1 && a.iter().step_by(2).all(|&ai| ai == 1))
}

/// Disjoint cycles of a permutation (1-based), each starting from its
/// smallest element, ordered by smallest element. Fixed points appear as
/// singleton cycles.
pub fn cycle_decomposition(sigma: &[usize]) -> Result<Vec<Vec<usize>>, FamilyError> {
    check_permutation(sigma)?;
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start - 1] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j - 1] {
            seen[j - 1] = true;
            cycle.push(j);
            j = sigma[j - 1];
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Isolatedness of a weak sigma-twisted Brieskorn polynomial, by cycle
/// decomposition: the polynomial is a join of one factor per cycle, and the
/// join has an isolated singularity iff every factor has. A fixed point j
/// (monomial z_j^{a_j} zbar_j) counts as isolated iff a_j >= 2; a nontrivial
/// cycle is decided by the g1 criterion on its induced exponents.
pub fn isolated_sigma_twisted(sigma: &[usize], a: &[u32]) -> Result<bool, FamilyError> {
    check_min(a, 1)?;
    if sigma.len() != a.len() {
        return Err(FamilyError::LengthMismatch {
            expected: a.len(),
            got: sigma.len(),
        });
    }
    let mut verdict = true;
    for cycle in cycle_decomposition(sigma)? {
        if cycle.len() == 1 {
            verdict &= a[cycle[0] - 1] >= 2;
        } else {
            let exps: Vec<u32> = cycle.iter().map(|&j| a[j - 1]).collect();
            if exps.iter().all(|&x| x == 1) {
                return Err(FamilyError::CycleWithoutPolarAction { cycle });
            }
            verdict &= isolated_g1(&exps)?;
        }
    }
    Ok(verdict)
}

/// Join composition f(z1..zs) + g(z_{s+1}..z_{s+t}) on disjoint variables.
pub fn join(f: &MixedPolynomial, g: &MixedPolynomial) -> MixedPolynomial {
    let n = f.n() + g.n();
    let mut terms = Vec::with_capacity(f.len() + g.len());
    for m in f.monomials() {
        let mut nu = m.nu.clone();
        let mut mu = m.mu.clone();
        nu.resize(n, 0);
        mu.resize(n, 0);
        terms.push(MixedMonomial {
            coeff: m.coeff.clone(),
            nu,
            mu,
        });
    }
    for m in g.monomials() {
        let mut nu = vec![0; f.n()];
        let mut mu = vec![0; f.n()];
        nu.extend_from_slice(&m.nu);
        mu.extend_from_slice(&m.mu);
        terms.push(MixedMonomial {
            coeff: m.coeff.clone(),
            nu,
            mu,
        });
    }
    MixedPolynomial::new(n, terms).expect("join terms are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::weights::compute_weights;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn build_g1_standard() {
        let f = build(&FamilySpec::G1 { a: vec![2, 2, 2] }).unwrap();
        assert_eq!(
            f,
            parse("z1^2*zbar2 + z2^2*zbar3 + z3^2*zbar1", None).unwrap()
        );
    }

    #[test]
    fn build_cyclic_surface() {
        let f = build(&FamilySpec::Cyclic {
            a: vec![2, 3, 5],
            b: vec![1, 1, 1],
        })
        .unwrap();
        assert_eq!(
            f,
            parse("z1^2*zbar2 + z2^3*zbar3 + z3^5*zbar1", None).unwrap()
        );
    }

    #[test]
    fn build_brieskorn() {
        let f = build(&FamilySpec::Brieskorn { a: vec![3, 2] }).unwrap();
        assert_eq!(f, parse("z1^3 + z2^2", None).unwrap());
        assert!(build(&FamilySpec::Brieskorn { a: vec![1, 2] }).is_err());
    }

    #[test]
    fn build_validates() {
        assert_eq!(
            build(&FamilySpec::G1 { a: vec![1, 1] }),
            Err(FamilyError::NeedsExponentAtLeastTwo)
        );
        assert!(build(&FamilySpec::G1 { a: vec![] }).is_err());
        assert!(build(&FamilySpec::Cyclic {
            a: vec![2, 2],
            b: vec![1]
        })
        .is_err());
        assert!(build(&FamilySpec::SigmaTwisted {
            sigma: vec![1, 1],
            a: vec![2, 2]
        })
        .is_err());
    }

    #[test]
    fn g1_closed_form_examples() {
        // a = (2,2,2): u_j = (1 + (a_{j+1}-1) a_{j+2}) / 9 = 1/3
        let u = g1_weights_closed_form(&[2, 2, 2]).unwrap();
        assert_eq!(u, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
        // a = (1,2): u = (1, 0), the zero-weight case
        let u = g1_weights_closed_form(&[1, 2]).unwrap();
        assert_eq!(u, vec![rat(1, 1), rat(0, 1)]);
        // equal entries, n odd: u_j = 1/(a+1)
        for a in 2..=4u32 {
            let u = g1_weights_closed_form(&[a; 5]).unwrap();
            assert!(u.iter().all(|x| *x == rat(1, i64::from(a) + 1)));
        }
    }

    #[test]
    fn g2_closed_form_examples() {
        let u = g2_weights_closed_form(&[2, 3]).unwrap();
        assert_eq!(u, vec![rat(1, 3), rat(1, 3)]);
        let u = g2_weights_closed_form(&[2, 1]).unwrap();
        assert_eq!(u, vec![rat(0, 1), rat(1, 1)]);
        let u = g2_weights_closed_form(&[7]).unwrap();
        assert_eq!(u, vec![rat(1, 7)]);
    }

    #[test]
    fn closed_forms_match_solver_small_range() {
        // exhaustive over n <= 3, entries <= 3 (the full spec range runs in
        // the acceptance suite)
        for n in 1..=3usize {
            let mut stack = vec![Vec::<u32>::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == n {
                    if prefix.iter().any(|&x| x >= 2) {
                        let f = build(&FamilySpec::G1 { a: prefix.clone() }).unwrap();
                        let w = compute_weights(&f).unwrap();
                        assert_eq!(
                            w.u,
                            g1_weights_closed_form(&prefix).unwrap(),
                            "g1 {prefix:?}"
                        );
                    }
                    let f = build(&FamilySpec::G2 { a: prefix.clone() }).unwrap();
                    let w = compute_weights(&f).unwrap();
                    assert_eq!(
                        w.u,
                        g2_weights_closed_form(&prefix).unwrap(),
                        "g2 {prefix:?}"
                    );
                    continue;
                }
                for v in 1..=3 {
                    let mut next = prefix.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
    }

    #[test]
    fn cyclic_simplicial_examples() {
        assert!(cyclic_simplicial(&[2, 3, 5], &[1, 1, 1]).unwrap());
        assert!(!cyclic_simplicial(&[2, 2], &[2, 2]).unwrap());
        assert!(cyclic_simplicial(&[1, 2], &[1, 1]).unwrap());
    }

    #[test]
    fn cyclic_simplicial_matches_rank_test() {
        use crate::weights::is_simplicial;
        for a1 in 1..=3u32 {
            for a2 in 1..=3u32 {
                for b1 in 1..=3u32 {
                    for b2 in 1..=3u32 {
                        let a = vec![a1, a2];
                        let b = vec![b1, b2];
                        let f = build(&FamilySpec::Cyclic {
                            a: a.clone(),
                            b: b.clone(),
                        })
                        .unwrap();
                        assert_eq!(
                            cyclic_simplicial(&a, &b).unwrap(),
                            is_simplicial(&f),
                            "a={a:?} b={b:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn isolatedness_truth_table() {
        assert!(isolated_g1(&[2, 2, 2]).unwrap()); // n odd
        assert!(!isolated_g1(&[1, 2]).unwrap()); // n even, one exponent >= 2
        assert!(isolated_g1(&[2, 2]).unwrap()); // gap 1 is odd
        assert!(isolated_g1(&[2, 1, 1, 2]).unwrap()); // indices 1,4: gap 3
        assert!(!isolated_g1(&[2, 1, 2, 1]).unwrap()); // both at odd indices

        assert!(isolated_g2(&[2, 3]).unwrap()); // a_n >= 2
        assert!(!isolated_g2(&[2, 1]).unwrap()); // a_n = 1, n even
        assert!(isolated_g2(&[1, 5, 1]).unwrap()); // n odd, odd-indexed all 1
        assert!(!isolated_g2(&[2, 5, 1]).unwrap()); // a_1 = 2 breaks it
    }

    #[test]
    fn sigma_twisted_cycles() {
        // identity: every factor z_j^2 zbar_j is isolated
        assert!(isolated_sigma_twisted(&[1, 2, 3], &[2, 2, 2]).unwrap());
        // identity with a 1-exponent fixed point: not isolated
        assert!(!isolated_sigma_twisted(&[1, 2], &[1, 2]).unwrap());
        // full cycle reduces to g1
        assert!(isolated_sigma_twisted(&[2, 3, 1], &[2, 2, 2]).unwrap());
        // (1 2)(3 4) with a=(1,2,1,2): each 2-cycle fails the g1 criterion
        assert!(!isolated_sigma_twisted(&[2, 1, 4, 3], &[1, 2, 1, 2]).unwrap());
        // a nontrivial all-ones cycle has no polar action
        assert_eq!(
            isolated_sigma_twisted(&[2, 1], &[1, 1]),
            Err(FamilyError::CycleWithoutPolarAction { cycle: vec![1, 2] })
        );
    }

    #[test]
    fn cycle_decomposition_is_canonical() {
        let cycles = cycle_decomposition(&[2, 1, 4, 3, 5]).unwrap();
        assert_eq!(cycles, vec![vec![1, 2], vec![3, 4], vec![5]]);
    }

    #[test]
    fn join_examples() {
        let a = parse("z1^2", None).unwrap();
        let b = parse("z1^3", None).unwrap();
        assert_eq!(join(&a, &b), parse("z1^2 + z2^3", None).unwrap());

        let g1 = build(&FamilySpec::G1 { a: vec![2, 2] }).unwrap();
        let br = build(&FamilySpec::Brieskorn { a: vec![2] }).unwrap();
        assert_eq!(
            join(&g1, &br),
            parse("z1^2*zbar2 + z2^2*zbar1 + z3^2", None).unwrap()
        );
    }
}
