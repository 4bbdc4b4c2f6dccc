//! Complex double-precision backend.

use std::fmt;

use num_complex::Complex64;

/// A complex float. `PartialEq` is bitwise-exact; use [`super::Tolerance`] for
/// approximate comparison.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct CFloat(pub Complex64);

impl CFloat {
    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn abs(self) -> f64 {
        self.0.norm()
    }
}

impl From<Complex64> for CFloat {
    fn from(z: Complex64) -> Self {
        Self(z)
    }
}

impl From<f64> for CFloat {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0)
    }
}

impl fmt::Display for CFloat {
    /// `1.5`, `2*i`, `(1.5-0.25*i)`; reparses under the scalar grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im == 0.0 {
            return write!(f, "{re}");
        }
        if re == 0.0 {
            return write!(f, "{im}*i");
        }
        let sign = if im < 0.0 { '-' } else { '+' };
        write!(f, "({re}{sign}{}*i)", im.abs())
    }
}
