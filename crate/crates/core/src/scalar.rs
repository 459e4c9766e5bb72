use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::distance::PNorm;

/// Numeric type of relationship values.
///
/// Distances only take absolute differences, maxima and minima of stored
/// values, so any ordered signed field works. The `p`-norm for `p` other
/// than 1 and infinity falls back to `f64` arithmetic for types without
/// `powf`.
pub trait Scalar:
    Copy + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Absolute tolerance used by validators for equality-type checks.
    fn tolerance() -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer representable") / Self::from_i64(den).expect("integer representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_finite_value(self) -> bool {
        self.as_f64().is_finite()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `p`-norm of a vector of nonnegative entries.
    fn norm(values: &[Self], p: PNorm) -> Self {
        match p {
            PNorm::Infinity => values.iter().fold(Self::zero(), |m, v| m.max_of(v.abs())),
            PNorm::Finite(1.0) => values.iter().fold(Self::zero(), |s, v| s + v.abs()),
            PNorm::Finite(p) => {
                let sum: f64 = values.iter().map(|v| v.as_f64().abs().powf(p)).sum();
                Self::from_f64(sum.powf(1.0 / p)).expect("norm representable")
            }
        }
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn norm(values: &[Self], p: PNorm) -> Self {
        match p {
            PNorm::Infinity => values.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            PNorm::Finite(1.0) => values.iter().map(|v| v.abs()).sum(),
            PNorm::Finite(p) => values.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn norm(values: &[Self], p: PNorm) -> Self {
        match p {
            PNorm::Infinity => values.iter().fold(0.0, |m: f32, v| m.max(v.abs())),
            PNorm::Finite(1.0) => values.iter().map(|v| v.abs()).sum(),
            PNorm::Finite(p) => {
                let p = p as f32;
                values.iter().map(|v| v.abs().powf(p)).sum::<f32>().powf(1.0 / p)
            }
        }
    }
}

impl Scalar for Ratio<i64> {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}
