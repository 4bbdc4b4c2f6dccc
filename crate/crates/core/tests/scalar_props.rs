use std::collections::HashMap;

use num_complex::Complex64;
use proptest::prelude::*;
use renhance::scalar::{parse_exact, CFloat, FieldTag, RatFunc, Scalar, Tolerance};

fn var(name: &str) -> RatFunc {
    RatFunc::var(name)
}

/// A Laurent polynomial in p, q with small coefficients.
fn laurent() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-4i64..=4, -3i32..=3, -3i32..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RatFunc::zero(), |acc, (c, ep, eq)| {
            let t = RatFunc::from_i64(c) * var("p").powi(ep).unwrap() * var("q").powi(eq).unwrap();
            acc + t
        })
    })
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("nonzero", |(a, b)| {
        if a.is_zero() || b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    })
}

#[derive(Debug, Clone)]
enum Expr {
    P,
    Q,
    I,
    Const(i64, i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::P),
        Just(Expr::Q),
        Just(Expr::I),
        (-5i64..=5, 1i64..=4).prop_map(|(a, b)| Expr::Const(a, b)),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
        ]
    })
}

/// `None` when a divisor vanishes.
fn eval<S: Scalar>(e: &Expr, p: &S, q: &S, i: &S) -> Option<S> {
    Some(match e {
        Expr::P => p.clone(),
        Expr::Q => q.clone(),
        Expr::I => i.clone(),
        Expr::Const(a, b) => S::from_ratio(*a, *b),
        Expr::Add(a, b) => eval(a, p, q, i)?.add_ref(&eval(b, p, q, i)?),
        Expr::Sub(a, b) => eval(a, p, q, i)?.sub_ref(&eval(b, p, q, i)?),
        Expr::Mul(a, b) => eval(a, p, q, i)?.mul_ref(&eval(b, p, q, i)?),
        Expr::Div(a, b) => {
            let d = eval(b, p, q, i)?;
            if d.is_zero() {
                return None;
            }
            eval(a, p, q, i)?.div_ref(&d).ok()?
        }
    })
}

proptest! {
    #[test]
    fn inverse_is_an_involution(s in nonzero_ratfunc()) {
        prop_assert_eq!(s.inv().unwrap().inv().unwrap(), s);
    }

    #[test]
    fn monomial_root_squares_back(c in 1i64..=6, d in 1i64..=6, ep in -4i32..=4, eq in -4i32..=4) {
        let base = RatFunc::ratio(c, d) * var("p").powi(ep).unwrap() * var("q").powi(eq).unwrap();
        let sq = base.clone() * base;
        let r = sq.monomial_sqrt().expect("square of a monomial");
        prop_assert_eq!(r.clone() * r, sq);
    }

    #[test]
    fn any_present_root_squares_back(s in nonzero_ratfunc()) {
        if let Some(r) = s.monomial_sqrt() {
            prop_assert_eq!(r.clone() * r, s);
        }
    }

    #[test]
    fn equality_is_a_congruence(a in laurent(), c in laurent(), z in nonzero_ratfunc(), w in laurent()) {
        let b = a.clone() * z.clone() / z;
        let d = c.clone() + w.clone() - w;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&c, &d);
        prop_assert_eq!(a.clone() + c.clone(), b.clone() + d.clone());
        prop_assert_eq!(a * c, b * d);
    }

    #[test]
    fn parse_display_round_trip(s in nonzero_ratfunc()) {
        let tag = FieldTag::exact(&["p", "q"]);
        prop_assert_eq!(parse_exact(&s.to_string(), &tag).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn float_agrees_with_exact(e in expr(), pa in -9i64..=9, pb in 1i64..=7, qa in -9i64..=9, qb in 1i64..=7) {
        prop_assume!(pa != 0 && qa != 0);
        let Some(exact) = eval(&e, &var("p"), &var("q"), &RatFunc::i()) else {
            return Ok(());
        };
        let (pf, qf) = (pa as f64 / pb as f64, qa as f64 / qb as f64);
        let at: HashMap<String, Complex64> =
            [("p".to_string(), Complex64::new(pf, 0.0)), ("q".to_string(), Complex64::new(qf, 0.0))].into();
        let Ok(want) = exact.eval(&at) else {
            return Ok(());
        };
        let Some(got) = eval(&e, &CFloat::new(pf, 0.0), &CFloat::new(qf, 0.0), &CFloat::new(0.0, 1.0)) else {
            return Ok(());
        };
        prop_assert!(
            Tolerance(1e-9).close(got.0, want),
            "{:?}: float {} vs exact {} = {}", e, got, exact, want
        );
    }
}

#[test]
fn imaginary_unit_squares_to_minus_one() {
    let i = RatFunc::i();
    assert_eq!(i.clone() * i, RatFunc::from_i64(-1));
    let tag = FieldTag::exact(&["q"]).with_imaginary(true);
    let z = parse_exact("(1+2i)*q", &tag).unwrap();
    let w = parse_exact("(1-2i)*q^-1", &tag).unwrap();
    assert_eq!(z * w, RatFunc::from_i64(5));
}
