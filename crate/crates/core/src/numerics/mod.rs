//! Floating-point verification of the geometric identities behind the exact
//! layer: the polar action and its functional equation, the Euler
//! equalities, the singular-point criterion, projection onto the fiber, the
//! torus diffeomorphism onto the Laurent fiber, the monodromy map, and a
//! brute-force fiber enumeration for one variable.
//!
//! Sampling is reproducible: every check owns a ChaCha8 stream seeded from
//! `SampleConfig::seed`, so reports are bit-for-bit identical across runs.

pub mod isolated;

use crate::exact::{solve_linear, BigInt, ExactError, LinearSolution};
use crate::poly::{LaurentPolynomial, MixedPolynomial, PolyError};
use crate::weights::WeightSystem;
pub use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum NumericsError {
    NonPositiveRadius(f64),
    EtaOffUnitCircle { modulus: f64 },
    /// Projection onto the fiber needs f(z) != 0.
    ZeroFiberValue,
    /// The torus diffeomorphism needs a full simplicial polynomial.
    NotFullSimplicial,
    /// The torus diffeomorphism is defined on (C*)^n only.
    ZeroCoordinate,
    /// A weight or degree too large for the floating-point layer.
    WeightOverflow,
    /// Fiber enumeration needs a > b >= 0.
    DegenerateExponents,
    ZeroCoefficient,
    Exact(ExactError),
    Poly(PolyError),
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::NonPositiveRadius(r) => write!(f, "radius {r} must be positive"),
            NumericsError::EtaOffUnitCircle { modulus } => {
                write!(f, "|eta| = {modulus} is off the unit circle")
            }
            NumericsError::ZeroFiberValue => write!(f, "f(z) = 0: cannot project onto the fiber"),
            NumericsError::NotFullSimplicial => {
                write!(f, "torus diffeomorphism needs a full simplicial polynomial")
            }
            NumericsError::ZeroCoordinate => write!(f, "point has a zero coordinate"),
            NumericsError::WeightOverflow => write!(f, "weight exceeds the floating-point range"),
            NumericsError::DegenerateExponents => write!(f, "need a > b >= 0"),
            NumericsError::ZeroCoefficient => write!(f, "coefficient must be nonzero"),
            NumericsError::Exact(e) => write!(f, "{e}"),
            NumericsError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for NumericsError {}

impl From<ExactError> for NumericsError {
    fn from(e: ExactError) -> Self {
        NumericsError::Exact(e)
    }
}

impl From<PolyError> for NumericsError {
    fn from(e: PolyError) -> Self {
        NumericsError::Poly(e)
    }
}

/// Configuration for the sampled checks.
///
/// Invariants: `count >= 1`, `tol` in (0, 1e-2], `radius_range.0 > 0` and
/// below `radius_range.1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
    /// Relative tolerance for every residual.
    pub tol: f64,
    /// Moduli of sampled coordinates (and scaling radii) are drawn uniformly
    /// from this interval; it avoids float under/overflow with large weights
    /// while still exercising nonunit moduli.
    pub radius_range: (f64, f64),
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            count: 500,
            seed: 1,
            tol: 1e-9,
            radius_range: (0.25, 4.0),
        }
    }
}

impl SampleConfig {
    pub fn new(count: usize, seed: u64, tol: f64) -> Result<Self, NumericsError> {
        let cfg = SampleConfig {
            count,
            seed,
            tol,
            ..SampleConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if self.count == 0 || !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(NumericsError::NonPositiveRadius(self.tol));
        }
        if !(self.radius_range.0 > 0.0 && self.radius_range.0 < self.radius_range.1) {
            return Err(NumericsError::NonPositiveRadius(self.radius_range.0));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Outcome of one sampled identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub samples_run: usize,
    pub max_relative_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckReport {
    fn from_residuals(name: &str, samples_run: usize, max_residual: f64, tol: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            samples_run,
            max_relative_residual: max_residual,
            tol,
            pass: max_residual <= tol,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} over {} samples, max residual {:.3e} (tol {:.1e})",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.samples_run,
            self.max_relative_residual,
            self.tol
        )
    }
}

const RESIDUAL_FLOOR: f64 = 1e-150;

/// Relative distance |got - want| / max(|want|, floor); both-zero gives 0.
fn rel_residual(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(RESIDUAL_FLOOR)
}

fn weight_to_i32(w: &BigInt) -> Result<i32, NumericsError> {
    w.to_i32().ok_or(NumericsError::WeightOverflow)
}

fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn sample_phase(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen::<f64>() * TAU
}

fn sample_modulus(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    range.0 + rng.gen::<f64>() * (range.1 - range.0)
}

fn sample_complex(rng: &mut ChaCha8Rng, range: (f64, f64)) -> Complex64 {
    Complex64::from_polar(sample_modulus(rng, range), sample_phase(rng))
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> Vec<Complex64> {
    (0..n).map(|_| sample_complex(rng, range)).collect()
}

/// The polar action (r, eta) ∘ z = (r^{q_1} eta^{p_1} z_1, ...).
pub fn polar_action(
    w: &WeightSystem,
    r: f64,
    eta: Complex64,
    z: &[Complex64],
) -> Result<Vec<Complex64>, NumericsError> {
    if r.is_nan() || r <= 0.0 {
        return Err(NumericsError::NonPositiveRadius(r));
    }
    let eta_mod = eta.norm();
    if (eta_mod - 1.0).abs() > 1e-12 {
        return Err(NumericsError::EtaOffUnitCircle { modulus: eta_mod });
    }
    let mut out = Vec::with_capacity(z.len());
    for (j, &zj) in z.iter().enumerate() {
        let q = weight_to_i32(&w.q[j])?;
        let p = weight_to_i32(&w.p[j])?;
        out.push(r.powi(q) * eta.powi(p) * zj);
    }
    Ok(out)
}

/// f((r,eta) ∘ z) = r^{m_r} eta^{m_p} f(z) over seeded samples.
pub fn check_functional_equation(
    f: &MixedPolynomial,
    w: &WeightSystem,
    cfg: &SampleConfig,
) -> CheckReport {
    let mut rng = cfg.rng();
    let mut max_residual: f64 = 0.0;
    let mut run = 0;
    let (m_r, m_p) = match (weight_to_i32(&w.m_r), weight_to_i32(&w.m_p)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return CheckReport::from_residuals("functional-equation", 0, f64::INFINITY, cfg.tol),
    };
    for _ in 0..cfg.count {
        let r = sample_modulus(&mut rng, cfg.radius_range);
        let eta = Complex64::from_polar(1.0, sample_phase(&mut rng));
        let z = sample_point(&mut rng, f.n(), cfg.radius_range);
        let Ok(moved) = polar_action(w, r, eta, &z) else {
            continue;
        };
        let lhs = f.evaluate(&moved);
        let rhs = r.powi(m_r) * eta.powi(m_p) * f.evaluate(&z);
        max_residual = max_residual.max(rel_residual(lhs, rhs));
        run += 1;
    }
    CheckReport::from_residuals("functional-equation", run, max_residual, cfg.tol)
}

/// Both Euler equalities, with exact Wirtinger derivatives evaluated at
/// float points:
/// m_r f = Σ q_i (∂f/∂z_i z_i + ∂f/∂z̄_i z̄_i) and
/// m_p f = Σ p_i (∂f/∂z_i z_i − ∂f/∂z̄_i z̄_i).
pub fn check_euler_identities(
    f: &MixedPolynomial,
    w: &WeightSystem,
    cfg: &SampleConfig,
) -> CheckReport {
    let n = f.n();
    let dz: Vec<MixedPolynomial> = (1..=n).map(|j| f.wirtinger_dz(j).unwrap()).collect();
    let dzbar: Vec<MixedPolynomial> = (1..=n).map(|j| f.wirtinger_dzbar(j).unwrap()).collect();
    let q: Vec<f64> = w.q.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let p: Vec<f64> = w.p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let m_r = w.m_r.to_f64().unwrap_or(f64::NAN);
    let m_p = w.m_p.to_f64().unwrap_or(f64::NAN);

    let mut rng = cfg.rng();
    let mut max_residual: f64 = 0.0;
    for _ in 0..cfg.count {
        let z = sample_point(&mut rng, n, cfg.radius_range);
        let fz = f.evaluate(&z);
        let mut radial = Complex64::new(0.0, 0.0);
        let mut polar = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let dj = dz[j].evaluate(&z) * z[j];
            let dbj = dzbar[j].evaluate(&z) * z[j].conj();
            radial += q[j] * (dj + dbj);
            polar += p[j] * (dj - dbj);
        }
        max_residual = max_residual.max(rel_residual(radial, m_r * fz));
        max_residual = max_residual.max(rel_residual(polar, m_p * fz));
    }
    CheckReport::from_residuals("euler-identities", cfg.count, max_residual, cfg.tol)
}

/// Verdict of the gradient singularity test at one point.
#[derive(Clone, Debug, PartialEq)]
pub enum SingularityVerdict {
    Regular {
        /// How far the point is from satisfying the criterion.
        defect: f64,
    },
    Singular {
        /// The unit proportionality witness; `None` when both gradients
        /// vanish (any alpha works).
        alpha: Option<Complex64>,
    },
}

impl SingularityVerdict {
    pub fn is_singular(&self) -> bool {
        matches!(self, SingularityVerdict::Singular { .. })
    }
}

/// Test whether conj(df) = alpha * dbar f with |alpha| = 1 at `z`, the
/// criterion for a singular point of V = f⁻¹(0).
///
/// The witness is the least-squares factor alpha = <conj(df), dbar f> /
/// |dbar f|²; both the parallelism residual (normalized by the gradient
/// scale) and | |alpha| - 1 | must stay below `tol`. Both gradients zero
/// counts as singular.
pub fn singularity_test(f: &MixedPolynomial, z: &[Complex64], tol: f64) -> SingularityVerdict {
    let n = f.n();
    let a: Vec<Complex64> = (1..=n)
        .map(|j| f.wirtinger_dz(j).unwrap().evaluate(z).conj())
        .collect();
    let b: Vec<Complex64> = (1..=n)
        .map(|j| f.wirtinger_dzbar(j).unwrap().evaluate(z))
        .collect();
    let norm_a = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let norm_b = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let scale = norm_a.max(norm_b);
    if scale < tol {
        return SingularityVerdict::Singular { alpha: None };
    }
    // alpha_hat = <a, b> / |b|^2
    let inner: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum();
    let alpha = inner / norm_b.powi(2).max(RESIDUAL_FLOOR);
    let residual = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - alpha * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / scale;
    let unit_defect = (alpha.norm() - 1.0).abs();
    if residual < tol && unit_defect < tol {
        SingularityVerdict::Singular { alpha: Some(alpha) }
    } else {
        SingularityVerdict::Regular {
            defect: residual.max(unit_defect),
        }
    }
}

/// Move z with f(z) = rho e^{i theta} != 0 onto the fiber F = f⁻¹(1) by the
/// inverse action: w = (rho^{-1/m_r}, e^{-i theta / m_p}) ∘ z.
pub fn project_to_fiber(
    f: &MixedPolynomial,
    w: &WeightSystem,
    z: &[Complex64],
) -> Result<Vec<Complex64>, NumericsError> {
    let value = f.evaluate(z);
    let rho = value.norm();
    if rho < RESIDUAL_FLOOR {
        return Err(NumericsError::ZeroFiberValue);
    }
    let theta = value.arg();
    let mut out = Vec::with_capacity(z.len());
    for (j, &zj) in z.iter().enumerate() {
        let u = ratio_to_f64(&w.u[j]);
        let v = ratio_to_f64(&w.v[j]);
        out.push(rho.powf(-u) * Complex64::from_polar(1.0, -theta * v) * zj);
    }
    Ok(out)
}

/// f(project_to_fiber(z)) = 1 over samples with moderate |f(z)|.
pub fn check_projection(f: &MixedPolynomial, w: &WeightSystem, cfg: &SampleConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut max_residual: f64 = 0.0;
    let mut run = 0;
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..cfg.count {
        let z = sample_point(&mut rng, f.n(), cfg.radius_range);
        let value = f.evaluate(&z).norm();
        if !(1e-6..=1e6).contains(&value) {
            continue;
        }
        let Ok(projected) = project_to_fiber(f, w, &z) else {
            continue;
        };
        max_residual = max_residual.max(rel_residual(f.evaluate(&projected), one));
        run += 1;
    }
    CheckReport::from_residuals("projection", run, max_residual, cfg.tol)
}

/// The log-linear torus diffeomorphism onto the Laurent fiber for a full
/// simplicial polynomial: angles fixed, moduli mapped by
/// lambda = (N − M)⁻¹ (N + M).
pub struct TorusDiffeo {
    n: usize,
    laurent: LaurentPolynomial,
    lambda: Vec<Vec<f64>>,
    lambda_inv: Vec<Vec<f64>>,
}

fn rational_matrix_solve(
    a: &crate::exact::IntMatrix,
    b: &crate::exact::IntMatrix,
) -> Result<Vec<Vec<f64>>, NumericsError> {
    // columns of X with A X = B, returned as rows of X^T transposed back
    let n = a.rows();
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        let rhs: Vec<BigRational> = (0..n)
            .map(|r| BigRational::from_integer(b.get(r, c).clone()))
            .collect();
        match solve_linear(a, &rhs)? {
            LinearSolution::Unique(x) => cols.push(x),
            LinearSolution::NoUniqueSolution => return Err(NumericsError::NotFullSimplicial),
        }
    }
    let mut rows = vec![vec![0.0; n]; n];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            rows[r][c] = ratio_to_f64(x);
        }
    }
    Ok(rows)
}

impl TorusDiffeo {
    pub fn new(f: &MixedPolynomial) -> Result<Self, NumericsError> {
        if f.len() != f.n() {
            return Err(NumericsError::NotFullSimplicial);
        }
        let em = f.exponent_matrices();
        let sum = em.sum();
        let diff = em.diff();
        let lambda = rational_matrix_solve(&diff, &sum)?;
        let lambda_inv = rational_matrix_solve(&sum, &diff)?;
        Ok(TorusDiffeo {
            n: f.n(),
            laurent: f.associated_laurent(),
            lambda,
            lambda_inv,
        })
    }

    /// The Laurent polynomial the map carries f onto.
    pub fn laurent(&self) -> &LaurentPolynomial {
        &self.laurent
    }

    fn apply(&self, matrix: &[Vec<f64>], z: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
        if z.iter().any(|x| x.norm() < RESIDUAL_FLOOR) {
            return Err(NumericsError::ZeroCoordinate);
        }
        let log_rho: Vec<f64> = z.iter().map(|x| x.norm().ln()).collect();
        Ok((0..self.n)
            .map(|j| {
                let xi: f64 = matrix[j]
                    .iter()
                    .zip(log_rho.iter())
                    .map(|(l, r)| l * r)
                    .sum::<f64>()
                    .exp();
                Complex64::from_polar(xi, z[j].arg())
            })
            .collect())
    }

    /// phi(z): guarantees f̂(phi(z)) = f(z) on (C*)^n.
    pub fn forward(&self, z: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
        self.apply(&self.lambda, z)
    }

    /// The inverse map (moduli by lambda⁻¹, angles fixed).
    pub fn backward(&self, v: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
        self.apply(&self.lambda_inv, v)
    }
}

/// f̂(phi(z)) = f(z) and phi⁻¹(phi(z)) = z over samples in (C*)^n.
pub fn check_torus_diffeo(f: &MixedPolynomial, cfg: &SampleConfig) -> CheckReport {
    let diffeo = match TorusDiffeo::new(f) {
        Ok(d) => d,
        Err(_) => return CheckReport::from_residuals("torus-diffeo", 0, f64::INFINITY, cfg.tol),
    };
    let mut rng = cfg.rng();
    let mut max_residual: f64 = 0.0;
    let mut run = 0;
    for _ in 0..cfg.count {
        let z = sample_point(&mut rng, f.n(), cfg.radius_range);
        let Ok(image) = diffeo.forward(&z) else {
            continue;
        };
        let Ok(value) = diffeo.laurent().evaluate(&image) else {
            continue;
        };
        max_residual = max_residual.max(rel_residual(value, f.evaluate(&z)));
        if let Ok(back) = diffeo.backward(&image) {
            for (orig, rec) in z.iter().zip(back.iter()) {
                max_residual = max_residual.max(rel_residual(*rec, *orig));
            }
        }
        run += 1;
    }
    CheckReport::from_residuals("torus-diffeo", run, max_residual, cfg.tol)
}

/// The geometric monodromy h(z) = exp(2 pi i / m_p) ∘ z, a coordinatewise
/// rotation by 2 pi p_j / m_p.
pub fn monodromy_map(w: &WeightSystem, z: &[Complex64]) -> Vec<Complex64> {
    z.iter()
        .enumerate()
        .map(|(j, &zj)| {
            let v = ratio_to_f64(&w.v[j]);
            Complex64::from_polar(1.0, TAU * v) * zj
        })
        .collect()
}

/// f(h(z)) = f(z), and h iterated m_p times returns z.
pub fn check_monodromy(f: &MixedPolynomial, w: &WeightSystem, cfg: &SampleConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut max_residual: f64 = 0.0;
    // orbit iteration is skipped for huge periods; invariance still runs
    let period = w.m_p.to_usize().filter(|&m| m <= 10_000);
    for _ in 0..cfg.count {
        let z = sample_point(&mut rng, f.n(), cfg.radius_range);
        let moved = monodromy_map(w, &z);
        max_residual = max_residual.max(rel_residual(f.evaluate(&moved), f.evaluate(&z)));
        if let Some(period) = period {
            let mut orbit = z.clone();
            for _ in 0..period {
                orbit = monodromy_map(w, &orbit);
            }
            for (orig, back) in z.iter().zip(orbit.iter()) {
                max_residual = max_residual.max(rel_residual(*back, *orig));
            }
        }
    }
    CheckReport::from_residuals("monodromy", cfg.count, max_residual, cfg.tol)
}

/// The standard verification suite, in a fixed order. The torus-diffeo check
/// is skipped (not failed) for polynomials that are not full simplicial.
pub fn run_standard_checks(
    f: &MixedPolynomial,
    w: &WeightSystem,
    cfg: &SampleConfig,
) -> Vec<CheckReport> {
    let mut reports = vec![
        check_functional_equation(f, w, cfg),
        check_euler_identities(f, w, cfg),
        check_projection(f, w, cfg),
        check_monodromy(f, w, cfg),
    ];
    if TorusDiffeo::new(f).is_ok() {
        reports.push(check_torus_diffeo(f, cfg));
    }
    reports
}

/// Negative-control helper: a deliberately wrong weight system (q_1 bumped
/// by one). The identity checks must fail on it.
pub fn corrupted_weights(w: &WeightSystem) -> WeightSystem {
    let mut out = w.clone();
    out.q[0] += BigInt::from(1);
    out.u[0] += BigRational::new(BigInt::from(1), out.m_r.clone());
    out
}

/// The full fiber of c z^a z̄^b = 1 in one variable: a − b points on a
/// circle, the cyclic permutation the monodromy induces on them, and the
/// characteristic polynomial of that permutation.
#[derive(Clone, Debug)]
pub struct FiberDim1 {
    pub points: Vec<Complex64>,
    /// permutation[k] = index of h(points[k]).
    pub permutation: Vec<usize>,
    /// det(I − t P) as a factored product over cycles.
    pub char_poly: crate::invariants::ZetaFactored,
    /// The zeta function of the permutation action on H_0.
    pub zeta: crate::invariants::ZetaFactored,
}

/// Enumerate the fiber of f = c z^a z̄^b in polar form (a > b >= 0, c != 0).
///
/// Moduli solve rho^{a+b} = 1/|c|; phases are the a − b roots of
/// e^{i(a-b)phi} = e^{-i arg c}. The monodromy rotation by 2 pi/(a−b) is
/// matched to the nearest enumerated point to build the permutation.
pub fn enumerate_fiber_dim1(c: Complex64, a: u32, b: u32) -> Result<FiberDim1, NumericsError> {
    if a <= b {
        return Err(NumericsError::DegenerateExponents);
    }
    if c.norm() < RESIDUAL_FLOOR {
        return Err(NumericsError::ZeroCoefficient);
    }
    let count = (a - b) as usize;
    let rho = c.norm().powf(-1.0 / f64::from(a + b));
    let gamma = c.arg();
    let points: Vec<Complex64> = (0..count)
        .map(|k| Complex64::from_polar(rho, (-gamma + TAU * k as f64) / f64::from(a - b)))
        .collect();
    // h rotates by 2 pi / (a - b): match each image to its nearest point
    let rotation = Complex64::from_polar(1.0, TAU / f64::from(a - b));
    let mut permutation = Vec::with_capacity(count);
    for &z in &points {
        let moved = rotation * z;
        let (best, _) = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, (p - moved).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty fiber");
        permutation.push(best);
    }
    // cycle lengths of the permutation give det(I - tP) = prod (1 - t^len)
    let mut seen = vec![false; count];
    let mut char_poly = crate::invariants::ZetaFactored::one();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            len += 1;
            k = permutation[k];
        }
        char_poly.push_factor(BigInt::from(len), BigInt::from(1));
    }
    let zeta = char_poly.inverse();
    Ok(FiberDim1 {
        points,
        permutation,
        char_poly,
        zeta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};
    use crate::poly::parse;
    use crate::weights::compute_weights;

    fn cfg(count: usize) -> SampleConfig {
        SampleConfig {
            count,
            seed: 7,
            ..SampleConfig::default()
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polar_action_identity_and_scaling() {
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let z = vec![c(1.3, -0.2), c(0.4, 2.0)];
        let same = polar_action(&w, 1.0, c(1.0, 0.0), &z).unwrap();
        for (x, y) in z.iter().zip(same.iter()) {
            assert!((x - y).norm() < 1e-15);
        }
        // q = (1,1): r = 2 doubles both coordinates
        let scaled = polar_action(&w, 2.0, c(1.0, 0.0), &[c(1.0, 0.0); 2]).unwrap();
        assert!((scaled[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((scaled[1] - c(2.0, 0.0)).norm() < 1e-15);
        assert!(polar_action(&w, 0.0, c(1.0, 0.0), &z).is_err());
        assert!(polar_action(&w, 1.0, c(1.0, 0.5), &z).is_err());
    }

    #[test]
    fn functional_equation_residual_formula() {
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let w = compute_weights(&f).unwrap();
        // m_r = m_p = 3: hand residual on one sample must be tiny
        let z = vec![c(0.7, 0.1), c(-0.3, 0.8)];
        let moved = polar_action(&w, 1.7, Complex64::from_polar(1.0, 0.9), &z).unwrap();
        let lhs = f.evaluate(&moved);
        let rhs =
            1.7f64.powi(3) * Complex64::from_polar(1.0, 0.9).powi(3) * f.evaluate(&z);
        assert!(rel_residual(lhs, rhs) < 1e-12);
        // both sides zero: residual exactly 0
        assert_eq!(rel_residual(c(0.0, 0.0), c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn functional_equation_check_passes_and_fails() {
        let f = build(&FamilySpec::G1 { a: vec![2, 2, 2] }).unwrap();
        let w = compute_weights(&f).unwrap();
        let report = check_functional_equation(&f, &w, &cfg(100));
        assert!(report.pass, "{report}");
        let bad = corrupted_weights(&w);
        let report = check_functional_equation(&f, &bad, &cfg(100));
        assert!(!report.pass, "negative control must fail");
    }

    #[test]
    fn euler_identities_pass_and_fail() {
        let f = build(&FamilySpec::G1 { a: vec![2, 2, 2] }).unwrap();
        let w = compute_weights(&f).unwrap();
        assert!(check_euler_identities(&f, &w, &cfg(100)).pass);
        // holomorphic case reduces to the classical Euler relation
        let b = parse("z1^3 + z2^2", None).unwrap();
        let wb = compute_weights(&b).unwrap();
        assert!(check_euler_identities(&b, &wb, &cfg(100)).pass);
        let mut bad = wb.clone();
        bad.m_p += BigInt::from(1);
        assert!(!check_euler_identities(&b, &bad, &cfg(100)).pass);
    }

    #[test]
    fn singularity_test_hand_cases() {
        // f = z1 zbar2 + z2^2 zbar1 at (0, e^{i psi}): singular, alpha = e^{-i psi}
        let f = parse("z1*zbar2 + z2^2*zbar1", None).unwrap();
        let psi = 0.77;
        let z = vec![c(0.0, 0.0), Complex64::from_polar(1.0, psi)];
        match singularity_test(&f, &z, 1e-8) {
            SingularityVerdict::Singular { alpha: Some(al) } => {
                assert!((al - Complex64::from_polar(1.0, -psi)).norm() < 1e-9);
            }
            other => panic!("expected singular with witness, got {other:?}"),
        }

        // holomorphic Brieskorn: regular wherever the gradient is nonzero
        let b = parse("z1^3 + z2^2", None).unwrap();
        let z = vec![c(0.9, 0.1), c(-0.4, 0.5)];
        assert!(!singularity_test(&b, &z, 1e-8).is_singular());

        // f = z1 zbar1 at 1: df = dbar f = (1), alpha = 1
        let m = parse("z1*zbar1", None).unwrap();
        match singularity_test(&m, &[c(1.0, 0.0)], 1e-8) {
            SingularityVerdict::Singular { alpha: Some(al) } => {
                assert!((al - c(1.0, 0.0)).norm() < 1e-12);
            }
            other => panic!("expected singular, got {other:?}"),
        }

        // both gradients vanish at the origin for pure powers
        let p = parse("z1^2", None).unwrap();
        assert!(singularity_test(&p, &[c(0.0, 0.0)], 1e-8).is_singular());
    }

    #[test]
    fn singularity_is_scale_equivariant() {
        let f = parse("z1*zbar2 + z2^2*zbar1", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let z = vec![c(0.0, 0.0), c(0.6, 0.8)];
        assert!(singularity_test(&f, &z, 1e-8).is_singular());
        for r in [0.5, 2.0] {
            let moved = polar_action(&w, r, c(1.0, 0.0), &z).unwrap();
            assert!(
                singularity_test(&f, &moved, 1e-8).is_singular(),
                "radial scaling by {r} should preserve singularity"
            );
        }
    }

    #[test]
    fn projection_examples() {
        // one variable rescale: f = z1^2 at z = 2
        let f = parse("z1^2", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let projected = project_to_fiber(&f, &w, &[c(2.0, 0.0)]).unwrap();
        assert!((f.evaluate(&projected) - c(1.0, 0.0)).norm() < 1e-12);
        // a point already on the fiber stays put
        let stay = project_to_fiber(&f, &w, &[c(1.0, 0.0)]).unwrap();
        assert!((stay[0] - c(1.0, 0.0)).norm() < 1e-12);
        // f(z) = 0 is rejected
        assert!(matches!(
            project_to_fiber(&f, &w, &[c(0.0, 0.0)]),
            Err(NumericsError::ZeroFiberValue)
        ));
    }

    #[test]
    fn projection_check_on_g1() {
        let f = build(&FamilySpec::G1 { a: vec![2, 2, 2] }).unwrap();
        let w = compute_weights(&f).unwrap();
        let report = check_projection(&f, &w, &cfg(1000));
        assert!(report.pass, "{report}");
        assert!(report.max_relative_residual < 1e-10);
    }

    #[test]
    fn torus_diffeo_identity_cases() {
        // unit torus: log rho = 0 so the map is the identity
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let d = TorusDiffeo::new(&f).unwrap();
        let z = vec![Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.2)];
        let image = d.forward(&z).unwrap();
        for (x, y) in z.iter().zip(image.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
        // holomorphic case: M = 0, lambda is the identity
        let b = parse("z1^3 + z2^2", None).unwrap();
        let db = TorusDiffeo::new(&b).unwrap();
        let z = vec![c(0.5, 0.7), c(-1.1, 0.4)];
        let image = db.forward(&z).unwrap();
        for (x, y) in z.iter().zip(image.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
        // zero coordinates rejected
        assert!(matches!(
            d.forward(&[c(0.0, 0.0), c(1.0, 0.0)]),
            Err(NumericsError::ZeroCoordinate)
        ));
        // non-full polynomials rejected
        let single = parse("z1*zbar2", None).unwrap();
        assert!(matches!(
            TorusDiffeo::new(&single),
            Err(NumericsError::NotFullSimplicial)
        ));
    }

    #[test]
    fn torus_diffeo_check_passes() {
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let report = check_torus_diffeo(&f, &cfg(200));
        assert!(report.pass, "{report}");
    }

    #[test]
    fn monodromy_period_and_invariance() {
        let f = parse("z1^2*zbar2 + z2^3", None).unwrap();
        let w = compute_weights(&f).unwrap();
        let report = check_monodromy(&f, &w, &cfg(100));
        assert!(report.pass, "{report}");
    }

    #[test]
    fn fiber_enumeration_dim1() {
        // c=1, a=2, b=0: the two square roots of 1, swapped by h
        let fib = enumerate_fiber_dim1(c(1.0, 0.0), 2, 0).unwrap();
        assert_eq!(fib.points.len(), 2);
        assert!((fib.points[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((fib.points[1] - c(-1.0, 0.0)).norm() < 1e-12);
        assert_eq!(fib.permutation, vec![1, 0]);

        // c=1, a=3, b=1: 2 points; zeta = (1 - t^2)^{-1}
        let fib = enumerate_fiber_dim1(c(1.0, 0.0), 3, 1).unwrap();
        assert_eq!(fib.points.len(), 2);
        let expected = crate::invariants::ZetaFactored::from_factors([(
            BigInt::from(2),
            BigInt::from(-1),
        )]);
        assert_eq!(fib.zeta, expected);

        // c=2, a=3, b=1: modulus 2^{-1/4}, still 2 points
        let fib = enumerate_fiber_dim1(c(2.0, 0.0), 3, 1).unwrap();
        assert_eq!(fib.points.len(), 2);
        let rho = 2f64.powf(-0.25);
        for p in &fib.points {
            assert!((p.norm() - rho).abs() < 1e-12);
        }
        // every enumerated point satisfies c z^3 zbar = 1
        for &z in &fib.points {
            let value = c(2.0, 0.0) * z.powu(3) * z.conj();
            assert!((value - c(1.0, 0.0)).norm() < 1e-12);
        }

        assert!(enumerate_fiber_dim1(c(1.0, 0.0), 2, 2).is_err());
        assert!(enumerate_fiber_dim1(c(0.0, 0.0), 2, 0).is_err());
    }

    #[test]
    fn monodromy_matches_functional_equation_on_f() {
        // f(h(z)) = f(z) since eta^{m_p} = 1
        let f = build(&FamilySpec::Cyclic {
            a: vec![2, 3, 5],
            b: vec![1, 1, 1],
        })
        .unwrap();
        let w = compute_weights(&f).unwrap();
        let mut rng = cfg(1).rng();
        for _ in 0..50 {
            let z = sample_point(&mut rng, 3, (0.25, 4.0));
            let moved = monodromy_map(&w, &z);
            assert!(rel_residual(f.evaluate(&moved), f.evaluate(&z)) < 1e-9);
        }
    }

    #[test]
    fn checks_are_reproducible() {
        let f = build(&FamilySpec::G2 { a: vec![2, 3] }).unwrap();
        let w = compute_weights(&f).unwrap();
        let a = check_functional_equation(&f, &w, &cfg(50));
        let b = check_functional_equation(&f, &w, &cfg(50));
        assert_eq!(a.max_relative_residual.to_bits(), b.max_relative_residual.to_bits());
    }
}
