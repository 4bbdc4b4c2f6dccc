//! Sparse multivariate Laurent polynomials over `ℚ(i)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::gauss::GaussRat;

pub type Sym = Arc<str>;

/// `∏ sym^exp`, sorted by symbol name, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Sym, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(sym: Sym, exp: i32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self(vec![(sym, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Sym, i32)] {
        &self.0
    }

    pub fn exponent(&self, sym: &str) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| &**s == sym)
            .map_or(0, |(_, e)| *e)
    }

    fn merge(&self, other: &Self, f: impl Fn(i32, i32) -> i32) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            let (sym, e) = match ord {
                Ordering::Less => {
                    i += 1;
                    (self.0[i - 1].0.clone(), f(self.0[i - 1].1, 0))
                }
                Ordering::Greater => {
                    j += 1;
                    (other.0[j - 1].0.clone(), f(0, other.0[j - 1].1))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (
                        self.0[i - 1].0.clone(),
                        f(self.0[i - 1].1, other.0[j - 1].1),
                    )
                }
            };
            if e != 0 {
                out.push((sym, e));
            }
        }
        Self(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.merge(other, |a, b| a + b)
    }

    pub fn inv(&self) -> Self {
        Self(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.min(b))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.merge(other, |a, b| b - a)
            .0
            .iter()
            .all(|(_, e)| *e >= 0)
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|(_, e)| e % 2 == 0)
    }

    pub fn halve(&self) -> Self {
        Self(self.0.iter().map(|(s, e)| (s.clone(), e / 2)).collect())
    }

    /// Lexicographic order on exponent vectors over `vars` (sorted).
    fn lex_cmp(&self, other: &Self, vars: &[Sym]) -> Ordering {
        for v in vars {
            match self.exponent(v).cmp(&other.exponent(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(GaussRat::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// The single term, when there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (absent symbols count as 0).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.meet(&Monomial::one());
        for m in it {
            acc = acc.meet(m);
        }
        acc
    }

    /// Coefficient of the largest monomial in the derived order.
    pub fn leading_coeff(&self) -> Option<&GaussRat> {
        self.terms.values().next_back()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, values: &HashMap<String, Complex64>) -> Result<Complex64, String> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (s, e) in m.factors() {
                let v = values.get(&**s).ok_or_else(|| s.to_string())?;
                t *= v.powi(*e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / den`, both genuine polynomials (non-negative exponents).
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let vars: Vec<Sym> = self.variables().union(&den.variables()).cloned().collect();
        let lead = |p: &Self| -> Option<(Monomial, GaussRat)> {
            p.terms
                .iter()
                .max_by(|a, b| a.0.lex_cmp(b.0, &vars))
                .map(|(m, c)| (m.clone(), c.clone()))
        };
        let (dm, dc) = lead(den)?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = lead(&rem) {
            if !dm.divides(&rm) {
                return None;
            }
            let tm = rm.mul(&dm.inv());
            let tc = &rc * &dc_inv;
            let t = Self::term(tc, tm);
            rem = rem.sub(&den.mul(&t));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Dense coefficients (low to high) in `var`; `None` unless univariate with exponents >= 0.
    pub fn to_dense(&self, var: &str) -> Option<Vec<GaussRat>> {
        let mut out: Vec<GaussRat> = Vec::new();
        for (m, c) in &self.terms {
            let e = match m.factors() {
                [] => 0,
                [(s, e)] if &**s == var && *e >= 0 => *e as usize,
                _ => return None,
            };
            if out.len() <= e {
                out.resize(e + 1, GaussRat::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    pub fn from_dense(var: &Sym, coeffs: &[GaussRat]) -> Self {
        let mut out = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out.add_term(Monomial::var(var.clone(), e as i32), c.clone());
        }
        out
    }
}

fn trim(p: &mut Vec<GaussRat>) {
    while p.last().is_some_and(GaussRat::is_zero) {
        p.pop();
    }
}

/// Long division of dense univariate polynomials; `b` must be nonzero.
pub fn dense_divmod(a: &[GaussRat], b: &[GaussRat]) -> (Vec<GaussRat>, Vec<GaussRat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead_inv = b
        .last()
        .and_then(GaussRat::inv)
        .expect("division by zero polynomial");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![GaussRat::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = &rem[shift + k] - &(&c * bk);
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

/// Monic gcd of dense univariate polynomials.
pub fn dense_gcd(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divmod(&x, &y);
        x = y;
        y = r;
    }
    if let Some(inv) = x.last().and_then(GaussRat::inv) {
        for c in &mut x {
            *c = &*c * &inv;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Sym {
        Arc::from("q")
    }

    fn p() -> Sym {
        Arc::from("p")
    }

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::var(q(), 2).mul(&Monomial::var(p(), -1));
        let b = a.inv();
        assert!(a.mul(&b).is_one());
        assert_eq!(a.meet(&Monomial::one()), Monomial::var(p(), -1));
        assert_eq!(a.to_string(), "p^-1*q^2");
    }

    #[test]
    fn exact_division() {
        // (q^2 - p^2) / (q - p) = q + p
        let qq = Poly::term(GaussRat::one(), Monomial::var(q(), 1));
        let pp = Poly::term(GaussRat::one(), Monomial::var(p(), 1));
        let num = qq.mul(&qq).sub(&pp.mul(&pp));
        let den = qq.sub(&pp);
        assert_eq!(num.div_exact(&den), Some(qq.add(&pp)));
        assert_eq!(qq.div_exact(&den), None);
    }

    #[test]
    fn univariate_gcd() {
        // gcd((x-1)(x+2), (x-1)(x+3)) = x - 1
        let a = vec![
            GaussRat::from_i64(-2),
            GaussRat::from_i64(1),
            GaussRat::from_i64(1),
        ];
        let b = vec![
            GaussRat::from_i64(-3),
            GaussRat::from_i64(2),
            GaussRat::from_i64(1),
        ];
        assert_eq!(
            dense_gcd(&a, &b),
            vec![GaussRat::from_i64(-1), GaussRat::from_i64(1)]
        );
    }
}
