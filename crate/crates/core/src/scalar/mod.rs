//! Field elements: exact rational functions or complex floats behind one trait.

mod complex;
mod gauss;
mod parse;
mod poly;
mod ratfunc;

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::CFloat;
pub use gauss::GaussRat;
pub use parse::parse_exact;
pub use poly::{Monomial, Poly, Sym};
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("no value bound for symbol '{0}'")]
    UnboundSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field description: {0}")]
    InvalidTag(String),
}

/// Relative tolerance for the float backend.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    /// `|a - b| <= tol * max(1, |a|, |b|)`.
    pub fn close(self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.0 * 1f64.max(a.norm()).max(b.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

/// Which field scalars live in and how their text is read.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTag {
    pub backend: Backend,
    pub indeterminates: Vec<String>,
    pub imaginary: bool,
    pub tolerance: Tolerance,
}

impl FieldTag {
    pub fn exact(symbols: &[&str]) -> Self {
        Self {
            backend: Backend::Exact,
            indeterminates: symbols.iter().map(|s| s.to_string()).collect(),
            imaginary: false,
            tolerance: Tolerance::default(),
        }
    }

    pub fn float(tolerance: Tolerance) -> Self {
        Self {
            backend: Backend::Float,
            indeterminates: Vec::new(),
            imaginary: true,
            tolerance,
        }
    }

    pub fn with_imaginary(mut self, on: bool) -> Self {
        self.imaginary = on;
        self
    }

    pub fn validate(&self) -> Result<(), ScalarError> {
        let bad = |m: String| Err(ScalarError::InvalidTag(m));
        for (k, s) in self.indeterminates.iter().enumerate() {
            let mut chars = s.chars();
            let ok_start = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_');
            if !ok_start || !chars.all(|c| c.is_alphanumeric() || c == '_') {
                return bad(format!("'{s}' is not a symbol name"));
            }
            if self.indeterminates[..k].contains(s) {
                return bad(format!("symbol '{s}' listed twice"));
            }
            if self.imaginary && s == "i" {
                return bad("'i' is reserved for the imaginary unit".into());
            }
        }
        if self.backend == Backend::Float && !self.indeterminates.is_empty() {
            return bad("the float backend has no indeterminates".into());
        }
        // Negated so NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.tolerance.0 > 0.0) {
            return bad(format!(
                "tolerance must be positive, got {}",
                self.tolerance.0
            ));
        }
        Ok(())
    }
}

/// The field interface shared by both backends.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True for the exact backend, where comparisons have zero tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn from_exact(r: &RatFunc) -> Result<Self, ScalarError>;
    /// The indeterminate `name`, if this backend has indeterminates.
    fn symbol(name: &str) -> Option<Self>;
    fn parse(text: &str, tag: &FieldTag) -> Result<Self, ScalarError>;

    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn monomial_sqrt(&self) -> Option<Self>;

    /// Absolute value for the float backend; 0 or 1 (zero or not) for exact.
    fn modulus(&self) -> f64;
    /// Evaluates to a complex number with the given symbol values.
    fn eval(&self, at: &HashMap<String, Complex64>) -> Result<Complex64, ScalarError>;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn is_one(&self) -> bool {
        self.sub_ref(&Self::one()).is_zero()
    }

    fn div_ref(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    fn powi(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul_ref(&base);
        }
        Ok(out)
    }

    /// Equality under the backend's regime: exact, or within `tol` relative.
    fn close(&self, o: &Self, tol: Tolerance) -> bool;
}

impl Scalar for RatFunc {
    const EXACT: bool = true;

    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        RatFunc::ratio(n, d)
    }
    fn from_exact(r: &RatFunc) -> Result<Self, ScalarError> {
        Ok(r.clone())
    }
    fn symbol(name: &str) -> Option<Self> {
        Some(RatFunc::var(name))
    }
    fn parse(text: &str, tag: &FieldTag) -> Result<Self, ScalarError> {
        parse_exact(text, tag)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        RatFunc::inv(self)
    }
    fn monomial_sqrt(&self) -> Option<Self> {
        RatFunc::monomial_sqrt(self)
    }
    fn modulus(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn eval(&self, at: &HashMap<String, Complex64>) -> Result<Complex64, ScalarError> {
        RatFunc::eval(self, at)
    }
    fn close(&self, o: &Self, _tol: Tolerance) -> bool {
        self == o
    }
}

impl Scalar for CFloat {
    const EXACT: bool = false;

    fn zero() -> Self {
        CFloat::default()
    }
    fn one() -> Self {
        CFloat::new(1.0, 0.0)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        CFloat::new(n as f64 / d as f64, 0.0)
    }
    fn from_exact(r: &RatFunc) -> Result<Self, ScalarError> {
        r.eval(&HashMap::new()).map(CFloat)
    }
    fn symbol(_name: &str) -> Option<Self> {
        None
    }
    fn parse(text: &str, tag: &FieldTag) -> Result<Self, ScalarError> {
        let tag = FieldTag {
            imaginary: true,
            ..tag.clone()
        };
        Self::from_exact(&parse_exact(text, &tag)?)
    }
    fn is_zero(&self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }
    fn add_ref(&self, o: &Self) -> Self {
        CFloat(self.0 + o.0)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        CFloat(self.0 - o.0)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        CFloat(self.0 * o.0)
    }
    fn neg_ref(&self) -> Self {
        CFloat(-self.0)
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(CFloat(self.0.inv()))
    }
    fn monomial_sqrt(&self) -> Option<Self> {
        Some(CFloat(self.0.sqrt()))
    }
    fn modulus(&self) -> f64 {
        self.0.norm()
    }
    fn eval(&self, _at: &HashMap<String, Complex64>) -> Result<Complex64, ScalarError> {
        Ok(self.0)
    }
    fn close(&self, o: &Self, tol: Tolerance) -> bool {
        tol.close(self.0, o.0)
    }
}

/// Parses `name=value` bindings, e.g. from `--bind q=3/2`.
pub fn parse_binding<S: Scalar>(text: &str, tag: &FieldTag) -> Result<(String, S), ScalarError> {
    let (name, value) = text.split_once('=').ok_or_else(|| ScalarError::Syntax {
        pos: 0,
        msg: format!("expected name=value, got '{text}'"),
    })?;
    Ok((name.trim().to_string(), S::parse(value.trim(), tag)?))
}
