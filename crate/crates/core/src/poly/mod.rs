//! Mixed polynomials f(z, z̄): representation, parsing, Wirtinger calculus,
//! coordinate restriction, the associated Laurent polynomial, and evaluation.
//!
//! A mixed polynomial is a finite sum of monomials c · z^ν · z̄^μ over n
//! complex variables, with exact Gaussian-rational coefficients. Polynomials
//! are kept in a canonical form: like terms combined, zero terms dropped,
//! monomials sorted by exponents, so equality is structural.

mod parse;

pub use parse::{parse, ParseError};

use crate::exact::GaussianRational;
use crate::exact::{BigInt, IntMatrix};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Errors from polynomial construction and calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// A variable index outside 1..=n.
    VariableOutOfRange { var: usize, n: usize },
    /// Monomial exponent vectors with the wrong length.
    ExponentLength { expected: usize, got: usize },
    /// Laurent evaluation at a zero coordinate carrying a negative exponent.
    ZeroCoordinate { var: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VariableOutOfRange { var, n } => {
                write!(f, "variable z{var} out of range for {n} variables")
            }
            PolyError::ExponentLength { expected, got } => {
                write!(f, "exponent vector length {got}, expected {expected}")
            }
            PolyError::ZeroCoordinate { var } => {
                write!(
                    f,
                    "Laurent evaluation at z{var} = 0 with a negative exponent"
                )
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// One term c · z^ν · z̄^μ with c ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMonomial {
    pub coeff: GaussianRational,
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl MixedMonomial {
    /// Variables appearing in the monomial (1-based), i.e. supp(ν + μ).
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.nu
            .iter()
            .zip(self.mu.iter())
            .enumerate()
            .filter(|(_, (a, b))| **a > 0 || **b > 0)
            .map(|(j, _)| j + 1)
    }

    /// Total degree ν_j + μ_j in variable j (1-based).
    pub fn radial_exponent(&self, var: usize) -> i64 {
        i64::from(self.nu[var - 1]) + i64::from(self.mu[var - 1])
    }

    /// Signed degree ν_j − μ_j in variable j (1-based).
    pub fn polar_exponent(&self, var: usize) -> i64 {
        i64::from(self.nu[var - 1]) - i64::from(self.mu[var - 1])
    }
}

/// Exponent matrices N and M: row k holds ν resp. μ of the k-th monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrices {
    pub n_mat: IntMatrix,
    pub m_mat: IntMatrix,
}

impl ExponentMatrices {
    /// N + M (rows ν + μ, the radial system matrix).
    pub fn sum(&self) -> IntMatrix {
        self.combine(1)
    }

    /// N − M (rows ν − μ, the polar system matrix).
    pub fn diff(&self) -> IntMatrix {
        self.combine(-1)
    }

    fn combine(&self, sign: i64) -> IntMatrix {
        let mut out = IntMatrix::zero(self.n_mat.rows(), self.n_mat.cols());
        for r in 0..out.rows() {
            for c in 0..out.cols() {
                out.set(
                    r,
                    c,
                    self.n_mat.get(r, c) + BigInt::from(sign) * self.m_mat.get(r, c),
                );
            }
        }
        out
    }
}

/// A mixed polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPolynomial {
    n: usize,
    monomials: Vec<MixedMonomial>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        MixedPolynomial {
            n,
            monomials: Vec::new(),
        }
    }

    /// Build from raw terms, combining like terms and dropping zeros.
    pub fn new(n: usize, terms: Vec<MixedMonomial>) -> Result<Self, PolyError> {
        let mut map: BTreeMap<(Vec<u32>, Vec<u32>), GaussianRational> = BTreeMap::new();
        for t in terms {
            if t.nu.len() != n {
                return Err(PolyError::ExponentLength {
                    expected: n,
                    got: t.nu.len(),
                });
            }
            if t.mu.len() != n {
                return Err(PolyError::ExponentLength {
                    expected: n,
                    got: t.mu.len(),
                });
            }
            let entry = map
                .entry((t.nu, t.mu))
                .or_insert_with(GaussianRational::zero);
            *entry = &*entry + &t.coeff;
        }
        // descending on (nu, mu): z1-leading monomials print first
        let monomials = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|((nu, mu), coeff)| MixedMonomial { coeff, nu, mu })
            .collect();
        Ok(MixedPolynomial { n, monomials })
    }

    /// Single-term convenience constructor.
    pub fn monomial(
        n: usize,
        coeff: GaussianRational,
        nu: Vec<u32>,
        mu: Vec<u32>,
    ) -> Result<Self, PolyError> {
        Self::new(n, vec![MixedMonomial { coeff, nu, mu }])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The monomials in canonical order; `len()` is the count s.
    pub fn monomials(&self) -> &[MixedMonomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Multiply every coefficient by a nonzero constant.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MixedPolynomial {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .map(|m| MixedMonomial {
                    coeff: &m.coeff * c,
                    nu: m.nu.clone(),
                    mu: m.mu.clone(),
                })
                .collect(),
        }
    }

    /// Formal Wirtinger derivative ∂f/∂z_j (1-based j).
    ///
    /// On monomials: ∂(z^ν z̄^μ)/∂z_j = ν_j z^{ν − e_j} z̄^μ; terms with
    /// ν_j = 0 vanish.
    pub fn wirtinger_dz(&self, var: usize) -> Result<Self, PolyError> {
        self.check_var(var)?;
        let j = var - 1;
        let terms = self
            .monomials
            .iter()
            .filter(|m| m.nu[j] > 0)
            .map(|m| {
                let mut nu = m.nu.clone();
                nu[j] -= 1;
                MixedMonomial {
                    coeff: m.coeff.scale_int(&BigInt::from(m.nu[j])),
                    nu,
                    mu: m.mu.clone(),
                }
            })
            .collect();
        Self::new(self.n, terms)
    }

    /// Formal Wirtinger derivative ∂f/∂z̄_j (1-based j).
    pub fn wirtinger_dzbar(&self, var: usize) -> Result<Self, PolyError> {
        self.check_var(var)?;
        let j = var - 1;
        let terms = self
            .monomials
            .iter()
            .filter(|m| m.mu[j] > 0)
            .map(|m| {
                let mut mu = m.mu.clone();
                mu[j] -= 1;
                MixedMonomial {
                    coeff: m.coeff.scale_int(&BigInt::from(m.mu[j])),
                    nu: m.nu.clone(),
                    mu,
                }
            })
            .collect();
        Self::new(self.n, terms)
    }

    /// Restriction f^I = f|_{C^I}: keeps monomials supported inside `vars`
    /// (1-based indices); the result lives in the same n variables.
    pub fn restrict(&self, vars: &[usize]) -> Self {
        let keep = |m: &MixedMonomial| m.support().all(|j| vars.contains(&j));
        MixedPolynomial {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .filter(|m| keep(m))
                .cloned()
                .collect(),
        }
    }

    /// The associated Laurent polynomial f̂(w) = Σ c_j w^{ν_j − μ_j}.
    ///
    /// Terms with equal ν − μ are combined and may cancel.
    pub fn associated_laurent(&self) -> LaurentPolynomial {
        let mut map: BTreeMap<Vec<i64>, GaussianRational> = BTreeMap::new();
        for m in &self.monomials {
            let expo: Vec<i64> = (1..=self.n).map(|j| m.polar_exponent(j)).collect();
            let entry = map.entry(expo).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &m.coeff;
        }
        LaurentPolynomial {
            n: self.n,
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exponents, coeff)| LaurentTerm { coeff, exponents })
                .collect(),
        }
    }

    /// The exponent matrices (N, M), one row per monomial in canonical order.
    pub fn exponent_matrices(&self) -> ExponentMatrices {
        let to_matrix = |pick: fn(&MixedMonomial) -> &Vec<u32>| {
            IntMatrix::from_rows(
                self.monomials
                    .iter()
                    .map(|m| pick(m).iter().map(|&e| BigInt::from(e)).collect())
                    .collect(),
            )
            .expect("monomial exponent rows have uniform length")
        };
        ExponentMatrices {
            n_mat: to_matrix(|m| &m.nu),
            m_mat: to_matrix(|m| &m.mu),
        }
    }

    /// Floating evaluation with conjugation applied to the z̄ factors.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n, "point dimension must match variable count");
        let mut acc = Complex64::new(0.0, 0.0);
        for m in &self.monomials {
            let mut term = m.coeff.to_complex64();
            for (j, &zj) in z.iter().enumerate() {
                if m.nu[j] > 0 {
                    term *= zj.powu(m.nu[j]);
                }
                if m.mu[j] > 0 {
                    term *= zj.conj().powu(m.mu[j]);
                }
            }
            acc += term;
        }
        acc
    }

    /// Render to the input grammar; `parse(render(f))` returns `f` exactly.
    pub fn render(&self) -> String {
        if self.monomials.is_empty() {
            return "0".to_string();
        }
        let mut atoms: Vec<(bool, String)> = Vec::new();
        for m in &self.monomials {
            render_monomial(m, &mut atoms);
        }
        let mut out = String::new();
        for (i, (neg, body)) in atoms.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }

    fn check_var(&self, var: usize) -> Result<(), PolyError> {
        if var == 0 || var > self.n {
            Err(PolyError::VariableOutOfRange { var, n: self.n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn variables_body(m: &MixedMonomial) -> Vec<String> {
    let mut parts = Vec::new();
    for (j, &e) in m.nu.iter().enumerate() {
        if e == 1 {
            parts.push(format!("z{}", j + 1));
        } else if e > 1 {
            parts.push(format!("z{}^{}", j + 1, e));
        }
    }
    for (j, &e) in m.mu.iter().enumerate() {
        if e == 1 {
            parts.push(format!("zbar{}", j + 1));
        } else if e > 1 {
            parts.push(format!("zbar{}^{}", j + 1, e));
        }
    }
    parts
}

fn rational_body(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render one monomial into sign/body atoms. A coefficient with two
/// non-integer parts is split into a real and an imaginary atom; the parser
/// recombines them.
fn render_monomial(m: &MixedMonomial, atoms: &mut Vec<(bool, String)>) {
    let vars = variables_body(m);
    let join = |coeff: Option<String>| -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(c) = coeff {
            parts.push(c);
        }
        parts.extend(vars.iter().cloned());
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let c = &m.coeff;
    if c.is_real() {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        let coeff = if mag.is_one() && !vars.is_empty() {
            None
        } else {
            Some(rational_body(&mag))
        };
        atoms.push((neg, join(coeff)));
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let mag = c.im.abs();
        let coeff = if mag.is_one() {
            Some("i".to_string())
        } else {
            Some(format!("{}*i", rational_body(&mag)))
        };
        atoms.push((neg, join(coeff)));
    } else if c.re.is_integer() && c.im.is_integer() {
        let a = c.re.numer();
        let b = c.im.numer();
        let body = if b.is_negative() {
            format!("({}{}i)", a, b)
        } else {
            format!("({}+{}i)", a, b)
        };
        atoms.push((false, join(Some(body))));
    } else {
        // split into two atoms; like terms recombine at parse time
        let re_part = MixedMonomial {
            coeff: GaussianRational::from_rational(c.re.clone()),
            nu: m.nu.clone(),
            mu: m.mu.clone(),
        };
        render_monomial(&re_part, atoms);
        let neg = c.im.is_negative();
        let mag = c.im.abs();
        let coeff = if mag.is_one() {
            Some("i".to_string())
        } else {
            Some(format!("{}*i", rational_body(&mag)))
        };
        atoms.push((neg, join(coeff)));
    }
}

/// One Laurent term c · w^e with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: GaussianRational,
    pub exponents: Vec<i64>,
}

/// A Laurent polynomial in n complex variables, canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    n: usize,
    terms: Vec<LaurentTerm>,
}

impl LaurentPolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keep the terms supported inside `vars` (1-based).
    pub fn restrict(&self, vars: &[usize]) -> Self {
        LaurentPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|t| {
                    t.exponents
                        .iter()
                        .enumerate()
                        .all(|(j, &e)| e == 0 || vars.contains(&(j + 1)))
                })
                .cloned()
                .collect(),
        }
    }

    pub fn evaluate(&self, w: &[Complex64]) -> Result<Complex64, PolyError> {
        assert_eq!(w.len(), self.n, "point dimension must match variable count");
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut term = t.coeff.to_complex64();
            for (j, &e) in t.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && w[j] == Complex64::new(0.0, 0.0) {
                    return Err(PolyError::ZeroCoordinate { var: j + 1 });
                }
                term *= w[j].powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }
}
