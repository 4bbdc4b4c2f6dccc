//! Rational functions `num / den` in finitely many indeterminates over `ℚ(i)`.
//!
//! Equality is decided by cross-multiplication, so no canonical form is needed for
//! correctness. After every operation the representation is tidied: the monomial
//! content of the denominator is moved into the numerator, constant denominators are
//! divided out, the denominator is made monic, and common factors are cancelled when
//! the fraction is univariate (Euclid) or the denominator divides exactly.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRat;
use super::poly::{dense_divmod, dense_gcd, Monomial, Poly, Sym};
use super::ScalarError;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussRat::ratio(n, d))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    /// The indeterminate `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(GaussRat::one(), Monomial::var(Sym::from(name), 1))
    }

    pub fn monomial(c: GaussRat, m: Monomial) -> Self {
        Self {
            num: Poly::term(c, m),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn variables(&self) -> Vec<Sym> {
        self.num
            .variables()
            .union(&self.den.variables())
            .cloned()
            .collect()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn powi(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn eval(&self, values: &HashMap<String, Complex64>) -> Result<Complex64, ScalarError> {
        let n = self.num.eval(values).map_err(ScalarError::UnboundSymbol)?;
        let d = self.den.eval(values).map_err(ScalarError::UnboundSymbol)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Substitutes exact values for some indeterminates; others stay symbolic.
    pub fn subs(&self, values: &HashMap<String, RatFunc>) -> Result<Self, ScalarError> {
        let subs_poly = |p: &Poly| -> Result<RatFunc, ScalarError> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut kept = Monomial::one();
                let mut t = RatFunc::constant(c.clone());
                for (s, e) in m.factors() {
                    match values.get(&**s) {
                        Some(v) => t = &t * &v.powi(*e)?,
                        None => kept = kept.mul(&Monomial::var(s.clone(), *e)),
                    }
                }
                acc = &acc + &(&t * &RatFunc::monomial(GaussRat::one(), kept));
            }
            Ok(acc)
        };
        let n = subs_poly(&self.num)?;
        let d = subs_poly(&self.den)?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(&n / &d)
    }

    /// `c·∏ sym^k` with every exponent even and `c` a square in `ℚ(i)`.
    pub fn monomial_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.den.is_one() {
            return None;
        }
        let (m, c) = self.num.as_term()?;
        if !m.all_even() {
            return None;
        }
        Some(Self::monomial(c.sqrt()?, m.halve()))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let mut r = Self { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let content = self.den.monomial_content();
        if !content.is_one() {
            let shift = content.inv();
            self.num = self.num.mul_monomial(&shift);
            self.den = self.den.mul_monomial(&shift);
        }
        if self.absorb_constant_den() {
            return;
        }
        self.cancel_common();
        if self.absorb_constant_den() {
            return;
        }
        if let Some(lc) = self.den.leading_coeff().cloned() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    fn absorb_constant_den(&mut self) -> bool {
        if let Some((m, c)) = self.den.as_term() {
            let m_inv = m.inv();
            let c_inv = c.inv().expect("nonzero denominator");
            self.num = self.num.mul_monomial(&m_inv).scale(&c_inv);
            self.den = Poly::one();
            return true;
        }
        false
    }

    fn cancel_common(&mut self) {
        // den has no monomial factor here; shift num into a genuine polynomial.
        let shift = self.num.monomial_content();
        let num = self.num.mul_monomial(&shift.inv());
        let vars: Vec<Sym> = num
            .variables()
            .union(&self.den.variables())
            .cloned()
            .collect();
        if vars.len() == 1 {
            let v = &vars[0];
            if let (Some(a), Some(b)) = (num.to_dense(v), self.den.to_dense(v)) {
                let g = dense_gcd(&a, &b);
                if g.len() > 1 {
                    let (qa, _) = dense_divmod(&a, &g);
                    let (qb, _) = dense_divmod(&b, &g);
                    self.num = Poly::from_dense(v, &qa).mul_monomial(&shift);
                    self.den = Poly::from_dense(v, &qb);
                    let c = self.den.monomial_content();
                    if !c.is_one() {
                        self.num = self.num.mul_monomial(&c.inv());
                        self.den = self.den.mul_monomial(&c.inv());
                    }
                }
            }
            return;
        }
        if let Some(q) = num.div_exact(&self.den) {
            self.num = q.mul_monomial(&shift);
            self.den = Poly::one();
        } else if num.len() > 1 {
            if let Some(q) = self.den.div_exact(&num) {
                self.num = Poly::term(GaussRat::one(), shift);
                self.den = q;
            }
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalized(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::normalized(num, self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        RatFunc::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] for a checked inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                (&self).$f(&o)
            }
        }
    )*};
}

owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().enumerate() {
        let body = term_string(m, c);
        if k == 0 {
            f.write_str(&body)?;
        } else if let Some(rest) = body.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {body}")?;
        }
    }
    Ok(())
}

fn term_string(m: &Monomial, c: &GaussRat) -> String {
    if m.is_one() {
        return c.to_string();
    }
    if c.is_one() {
        return m.to_string();
    }
    if (-c).is_one() {
        return format!("-{m}");
    }
    format!("{c}*{m}")
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly(f, &self.num);
        }
        f.write_str("(")?;
        write_poly(f, &self.num)?;
        f.write_str(")/(")?;
        write_poly(f, &self.den)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::var("q")
    }

    #[test]
    fn laurent_denominators_are_absorbed() {
        let x = &(&q().powi(-1).unwrap() - &q()) / &q().powi(2).unwrap();
        assert!(x.is_laurent());
        assert_eq!(x.to_string(), "q^-3 - q^-1");
    }

    #[test]
    fn univariate_cancellation() {
        // (q^2 - 1) / (q - 1) = q + 1
        let one = RatFunc::one();
        let x = &(&(&q() * &q()) - &one) / &(&q() - &one);
        assert!(x.is_laurent());
        assert_eq!(x, &q() + &one);
    }

    #[test]
    fn multivariate_exact_division() {
        let p = RatFunc::var("p");
        let x = &(&(&q() * &q()) - &(&p * &p)) / &(&q() + &p);
        assert!(x.is_laurent());
        assert_eq!(x, &q() - &p);
        let y = &(&q() + &p) / &(&(&q() * &q()) - &(&p * &p));
        assert_eq!(y.numerator(), &Poly::one());
    }

    #[test]
    fn inverse_and_zero() {
        let x = &RatFunc::one() + &q();
        assert_eq!(&x * &x.inv().unwrap(), RatFunc::one());
        assert_eq!(RatFunc::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn monomial_roots() {
        assert_eq!(
            q().powi(-4).unwrap().monomial_sqrt(),
            Some(q().powi(-2).unwrap())
        );
        assert_eq!(
            RatFunc::ratio(1, 4).monomial_sqrt(),
            Some(RatFunc::ratio(1, 2))
        );
        assert_eq!(q().powi(3).unwrap().monomial_sqrt(), None);
        assert_eq!((&q() + &RatFunc::one()).monomial_sqrt(), None);
    }

    #[test]
    fn substitution() {
        let p = RatFunc::var("p");
        let x = &p / &(&q() + &RatFunc::one());
        let mut vals = HashMap::new();
        vals.insert("q".to_string(), RatFunc::ratio(1, 2));
        assert_eq!(x.subs(&vals).unwrap(), &RatFunc::ratio(2, 3) * &p);
    }
}
