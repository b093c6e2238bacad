//! Exact arithmetic: arbitrary-precision integers, reduced rationals,
//! Gaussian rationals, and exact integer/rational linear algebra.
//!
//! Every value is immutable after construction and every operation is pure,
//! so the whole module is safe to use from multiple threads.

mod matrix;

pub use matrix::{
    solve_affine_system, solve_linear, AffineOutcome, AffineSolution, IntMatrix, LinearSolution,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// Vector or matrix dimensions do not line up.
    DimensionMismatch { expected: usize, got: usize },
    /// An aggregate (gcd, lcm) over an empty list.
    EmptyInput,
    /// lcm over a list containing zero.
    ZeroLcmInput,
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::NonSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            ExactError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            ExactError::EmptyInput => write!(f, "empty input list"),
            ExactError::ZeroLcmInput => write!(f, "lcm is undefined for zero inputs"),
        }
    }
}

impl std::error::Error for ExactError {}

/// Greatest common divisor of a nonempty list; always nonnegative.
pub fn gcd_many(xs: &[BigInt]) -> Result<BigInt, ExactError> {
    if xs.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    let mut g = xs[0].abs();
    for x in &xs[1..] {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Least common multiple of a nonempty list of nonzero integers; always positive.
pub fn lcm_many(xs: &[BigInt]) -> Result<BigInt, ExactError> {
    if xs.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    let mut l = BigInt::one();
    for x in xs {
        if x.is_zero() {
            return Err(ExactError::ZeroLcmInput);
        }
        l = l.lcm(x);
    }
    Ok(l.abs())
}

/// An exact complex number with rational real and imaginary parts.
///
/// Zero iff both parts are zero; `num_rational` keeps each part reduced with a
/// positive denominator, which makes equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiply by an integer scalar (used by the Wirtinger power rule).
    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        GaussianRational {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    /// Lossy conversion for the floating-point verification layer.
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
