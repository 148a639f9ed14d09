use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the core math is generic over. `f64` is the working type
/// everywhere downstream; `f32` builds but loses the tight tolerances.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` constant (tolerances, literals) into `Self`.
    fn cst(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Render as `f64` for error reporting.
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn as_f64(self) -> f64 {
        self
    }
}

/// Complex number over the generic scalar.
pub type Cx<S> = Complex<S>;

pub fn c<S: Scalar>(re: f64, im: f64) -> Cx<S> {
    Complex::new(S::cst(re), S::cst(im))
}

pub fn c_zero<S: Scalar>() -> Cx<S> {
    Complex::new(S::zero(), S::zero())
}

pub fn c_one<S: Scalar>() -> Cx<S> {
    Complex::new(S::one(), S::zero())
}

pub fn c_i<S: Scalar>() -> Cx<S> {
    Complex::new(S::zero(), S::one())
}

pub fn c_real<S: Scalar>(re: S) -> Cx<S> {
    Complex::new(re, S::zero())
}
