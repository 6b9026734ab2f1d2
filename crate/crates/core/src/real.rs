//! The scalar abstraction behind every real-valued bound formula.
//!
//! Bound evaluation is written once, generically, against [`Real`]; the
//! backends are the machine floats (`f32`, `f64`) for speed and the exact
//! rational interval [`crate::exact::RatInterval`] for certification. The
//! crate root exports concrete aliases (`DefaultReal`, `ExactReal`).

use num_traits::{FromPrimitive, One, Zero};
use std::ops::{Div, Sub};

/// A totally-or-partially ordered field-ish scalar with `ln` and `sqrt`.
///
/// Addition and multiplication come via the `Zero`/`One` supertraits.
/// Implementations must make `ln`/`sqrt` either exact-directed (intervals)
/// or correctly rounded (floats); formulas only ever take `ln`/`sqrt` of
/// strictly positive values.
pub trait Real:
    Clone + PartialOrd + Zero + One + Sub<Output = Self> + Div<Output = Self> + FromPrimitive
{
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;

    /// Exact embedding of a small integer.
    fn from_int(n: u64) -> Self {
        Self::from_u64(n).expect("integer not representable in scalar type")
    }

    /// The rational num/den, evaluated in the scalar (exact for rational
    /// backends, one rounding for floats). Used for formula constants such
    /// as 3/5, so that float and exact backends agree on the same quantity.
    fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

macro_rules! impl_real_for_float {
    ($($t:ty),*) => {$(
        impl Real for $t {
            fn ln(self) -> Self {
                self.ln()
            }
            fn sqrt(self) -> Self {
                self.sqrt()
            }
        }
    )*};
}

impl_real_for_float!(f32, f64);

#[cfg(test)]
mod tests {
    use super::*;

    fn affine<S: Real>(n: u64) -> S {
        // (√n·ln n)/2 + 3/5, a shape representative of the bound formulas.
        S::from_int(n).sqrt() * S::from_int(n).ln() / S::from_int(2) + S::from_ratio(3, 5)
    }

    #[test]
    fn float_backends_agree() {
        let wide: f64 = affine(100);
        let narrow: f32 = affine(100);
        assert!((wide - 100f64.sqrt() * 100f64.ln() / 2.0 - 0.6).abs() < 1e-12);
        assert!((f64::from(narrow) - wide).abs() < 1e-3);
    }
}
