//! Global topological invariants of the fiber: Euler characteristic,
//! factored monodromy zeta function, Milnor–Orlik divisor calculus,
//! connectivity, Betti numbers, and the top characteristic polynomial for
//! surfaces.
//!
//! The zeta function of the monodromy h: F → F is assembled stratum by
//! stratum as ∏_I (1 − t^{m_{p,I}})^{(−1)^{|I|} d_I / m_{p,I}} over the full
//! strata, under the alternating convention ζ(t) = ∏_j det(I − t h_*|H_j)
//! ^{(−1)^{j+1}}. Exponents are guaranteed integral (the monodromy acts
//! freely on each stratum); a non-integral exponent is a hard error, never
//! a rounding.

use crate::exact::{BigInt, BigRational, ExactError};
use crate::strata::StratificationReport;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantError {
    /// A stratum period does not divide its determinant; violates the
    /// free-action guarantee and signals a bug or a non polar weighted input.
    NonIntegralExponent {
        vars: Vec<usize>,
        d: BigInt,
        period: BigInt,
    },
    /// Clearing (1 - t^m) factors left a negative cyclotomic multiplicity,
    /// so the claimed characteristic polynomial is not a polynomial.
    NotPolynomial { missing: BigInt },
    /// A factor period too large to enumerate divisors for.
    PeriodTooLarge,
    Exact(ExactError),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::NonIntegralExponent { vars, d, period } => write!(
                f,
                "stratum {vars:?}: period {period} does not divide d = {d}"
            ),
            InvariantError::NotPolynomial { missing } => write!(
                f,
                "not a polynomial: cyclotomic factor of order {missing} has negative multiplicity"
            ),
            InvariantError::PeriodTooLarge => write!(f, "factor period exceeds u64"),
            InvariantError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InvariantError {}

impl From<ExactError> for InvariantError {
    fn from(e: ExactError) -> Self {
        InvariantError::Exact(e)
    }
}

/// A formal product ∏_m (1 − t^m)^{e_m} with integer exponents, canonical
/// (distinct positive m, nonzero e).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaFactored {
    factors: BTreeMap<BigInt, BigInt>,
}

impl ZetaFactored {
    /// The empty product, i.e. the constant 1.
    pub fn one() -> Self {
        ZetaFactored::default()
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, BigInt)>,
    {
        let mut z = ZetaFactored::one();
        for (m, e) in factors {
            z.push_factor(m, e);
        }
        z
    }

    /// Multiply by (1 − t^m)^e, merging with any existing factor.
    pub fn push_factor(&mut self, m: BigInt, e: BigInt) {
        assert!(m.is_positive(), "factor period must be positive");
        if e.is_zero() {
            return;
        }
        let entry = self.factors.entry(m).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            let dead: Vec<BigInt> = self
                .factors
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.factors.remove(&k);
            }
        }
    }

    /// Factors (m, e_m) in ascending m.
    pub fn factors(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.factors.iter()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &ZetaFactored) -> ZetaFactored {
        let mut out = self.clone();
        for (m, e) in other.factors() {
            out.push_factor(m.clone(), e.clone());
        }
        out
    }

    pub fn inverse(&self) -> ZetaFactored {
        ZetaFactored {
            factors: self
                .factors
                .iter()
                .map(|(m, e)| (m.clone(), -e.clone()))
                .collect(),
        }
    }

    /// Degree as a rational function of t: Σ m·e_m. Under the alternating
    /// convention this equals −χ(F).
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(m, e)| m * e).sum()
    }

    /// Largest factor period, if any.
    pub fn max_period(&self) -> Option<&BigInt> {
        self.factors.keys().next_back()
    }

    /// Coefficients of log ∏(1 − t^m)^{e_m} at t^1..t^D, computed by formal
    /// expansion: the coefficient at t^k is −(1/k) Σ_{m | k} m e_m.
    pub fn log_series(&self, degree: usize) -> Vec<BigRational> {
        let mut coeffs = vec![BigRational::zero(); degree];
        for (m, e) in &self.factors {
            let Some(m) = m.to_usize() else { continue };
            if m == 0 || m > degree {
                continue;
            }
            let mut k = m;
            while k <= degree {
                coeffs[k - 1] -=
                    BigRational::new(BigInt::from(m) * e, BigInt::from(k));
                k += m;
            }
        }
        coeffs
    }

    /// Multiplicity of each cyclotomic polynomial Φ_d in the product, using
    /// 1 − t^m = ± ∏_{d | m} Φ_d.
    pub fn cyclotomic_multiplicities(&self) -> Result<BTreeMap<u64, BigInt>, InvariantError> {
        let mut mult: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (m, e) in &self.factors {
            let m = m.to_u64().ok_or(InvariantError::PeriodTooLarge)?;
            for d in divisors(m) {
                let entry = mult.entry(d).or_insert_with(BigInt::zero);
                *entry += e;
            }
        }
        mult.retain(|_, v| !v.is_zero());
        Ok(mult)
    }

    /// True iff the product is a polynomial in t (up to sign): every
    /// cyclotomic multiplicity nonnegative.
    pub fn is_polynomial(&self) -> Result<bool, InvariantError> {
        Ok(self
            .cyclotomic_multiplicities()?
            .values()
            .all(|v| !v.is_negative()))
    }

    /// Text form, ascending in m: `(1-t^2)^-1 (1-t^3)^-1 (1-t^6)^1`.
    pub fn render_text(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(m, e)| format!("(1-t^{m})^{e}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for ZetaFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

fn divisors(m: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m.is_multiple_of(i) {
            divs.push(i);
            if i != m / i {
                divs.push(m / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// A formal integer combination Σ c_m Λ_m with Λ_m = div(t^m − 1), under the
/// Milnor–Orlik product rule Λ_a · Λ_b = gcd(a,b) Λ_{lcm(a,b)}; Λ_1 is the
/// unit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    terms: BTreeMap<BigInt, BigInt>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    /// The generator Λ_m.
    pub fn lambda(m: impl Into<BigInt>) -> Self {
        let m = m.into();
        assert!(m.is_positive(), "divisor order must be positive");
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        Divisor { terms }
    }

    /// The unit Λ_1.
    pub fn unit() -> Self {
        Self::lambda(1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, m: BigInt, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Divisor {
        if k.is_zero() {
            return Divisor::zero();
        }
        Divisor {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// Bilinear extension of Λ_a · Λ_b = gcd(a,b) Λ_{lcm(a,b)}.
    pub fn mul(&self, other: &Divisor) -> Divisor {
        let mut out = Divisor::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let g = a.gcd(b);
                let l = a.lcm(b);
                out.push(l, ca * cb * g);
            }
        }
        out
    }

    /// Text form, ascending in m: `-L2 - L3 + L6`.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let body = if mag.is_one() {
                format!("L{m}")
            } else {
                format!("{mag}*L{m}")
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// χ(F) = Σ_{I ∈ S} (−1)^{|I|−1} d_I over the full strata.
pub fn euler_characteristic(strat: &StratificationReport) -> BigInt {
    strat.full_strata().map(|s| s.chi.clone()).sum()
}

/// The factored zeta function ∏_{I ∈ S} (1 − t^{m_{p,I}})^{(−1)^{|I|} d_I / m_{p,I}}.
pub fn zeta_function(strat: &StratificationReport) -> Result<ZetaFactored, InvariantError> {
    let mut zeta = ZetaFactored::one();
    for s in strat.full_strata() {
        let d = s.d.clone().expect("full stratum carries d");
        let (quotient, remainder) = (-&s.chi).div_rem(&s.m_p_stratum);
        if !remainder.is_zero() {
            return Err(InvariantError::NonIntegralExponent {
                vars: s.vars.clone(),
                d,
                period: s.m_p_stratum.clone(),
            });
        }
        zeta.push_factor(s.m_p_stratum.clone(), quotient);
    }
    Ok(zeta)
}

/// Coefficients of log ζ at t^1..t^D computed directly from Lefschetz data:
/// the coefficient at t^k is (1/k) Σ over strata whose period divides k of
/// χ(F^{*I}). This path never touches the factored form.
pub fn zeta_log_series(strat: &StratificationReport, degree: usize) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); degree];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let k = BigInt::from(k + 1);
        let mut lefschetz = BigInt::zero();
        for s in strat.strata.iter() {
            if (&k % &s.m_p_stratum).is_zero() {
                lefschetz += &s.chi;
            }
        }
        *slot = BigRational::new(lefschetz, k);
    }
    coeffs
}

/// div(∏ (1 − t^m)^{e_m}) = Σ e_m Λ_m.
pub fn to_divisor(zeta: &ZetaFactored) -> Divisor {
    let mut out = Divisor::zero();
    for (m, e) in zeta.factors() {
        out.push(m.clone(), e.clone());
    }
    out
}

/// Product of two divisors under the Λ-calculus (bilinear rule).
pub fn divisor_mul(x: &Divisor, y: &Divisor) -> Divisor {
    x.mul(y)
}

/// The classical Brieskorn divisor formula (Λ_{a_1} − 1)⋯(Λ_{a_n} − 1) −
/// (−1)^n, with the constant 1 read as the unit Λ_1.
pub fn brieskorn_divisor(a: &[u32]) -> Divisor {
    let mut acc = Divisor::unit();
    for &ai in a {
        let factor = Divisor::lambda(i64::from(ai)).sub(&Divisor::unit());
        acc = acc.mul(&factor);
    }
    let correction = if a.len().is_multiple_of(2) {
        Divisor::unit()
    } else {
        Divisor::unit().neg()
    };
    acc.sub(&correction)
}

/// The connectivity bound min(k, n − 2); negative means no connectivity is
/// guaranteed (e.g. n = 1).
pub fn connectivity(convenience: usize, n: usize) -> i64 {
    (convenience as i64).min(n as i64 - 2)
}

/// The rank of the middle homology when everything between H_0 and H_{n−1}
/// vanishes (connectivity ≥ n − 2): b_{n−1} = (−1)^{n−1}(χ − 1). For n = 1
/// this is the reduced rank of H_0. `None` when the connectivity bound is
/// too weak to determine it.
pub fn middle_betti(chi: &BigInt, n: usize, connectivity: i64) -> Option<BigInt> {
    if connectivity < n as i64 - 2 {
        return None;
    }
    let reduced = chi - BigInt::one();
    Some(if n % 2 == 1 { reduced } else { -reduced })
}

/// For n = 3 with a simply connected fiber: the characteristic polynomial of
/// the monodromy on H_2 as a factored expression, P_2 = (ζ · (1 − t))^{−1}.
///
/// Verified to actually be a polynomial (nonnegative cyclotomic
/// multiplicities); a failed verification is an error, not a silent fix.
/// `None` when n ≠ 3 or the connectivity bound is below 1.
pub fn top_charpoly(
    zeta: &ZetaFactored,
    n: usize,
    connectivity: i64,
) -> Result<Option<ZetaFactored>, InvariantError> {
    if n != 3 || connectivity < 1 {
        return Ok(None);
    }
    let mut p2 = zeta.inverse();
    p2.push_factor(BigInt::one(), -BigInt::one());
    if let Some((missing, _)) = p2
        .cyclotomic_multiplicities()?
        .into_iter()
        .find(|(_, v)| v.is_negative())
    {
        return Err(InvariantError::NotPolynomial {
            missing: BigInt::from(missing),
        });
    }
    Ok(Some(p2))
}

/// All global invariants of one analyzed polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub chi: BigInt,
    pub zeta: ZetaFactored,
    pub divisor: Divisor,
    pub connectivity: i64,
    /// Present iff connectivity ≥ n − 2.
    pub middle_betti: Option<BigInt>,
    /// Order of the geometric monodromy: the polar degree m_p.
    pub monodromy_order: BigInt,
    /// P_2 for simply connected surfaces (n = 3), else None.
    pub top_charpoly: Option<ZetaFactored>,
}

/// Assemble the invariant report from a stratification.
pub fn compute_invariants(strat: &StratificationReport) -> Result<InvariantReport, InvariantError> {
    let chi = euler_characteristic(strat);
    let zeta = zeta_function(strat)?;
    let divisor = to_divisor(&zeta);
    let conn = connectivity(strat.convenience, strat.n);
    let betti = middle_betti(&chi, strat.n, conn);
    let charpoly = top_charpoly(&zeta, strat.n, conn)?;
    Ok(InvariantReport {
        chi,
        zeta,
        divisor,
        connectivity: conn,
        middle_betti: betti,
        monodromy_order: strat.m_p.clone(),
        top_charpoly: charpoly,
    })
}
