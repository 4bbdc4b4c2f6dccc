mod common;

use proptest::prelude::*;
use renhance::scalar::{CFloat, RatFunc, Scalar, Tolerance};
use renhance::tensor::{Mat, Slot, Tensor4, Transpose};

type Q = RatFunc;

fn int_tensor(n: usize) -> impl Strategy<Value = Tensor4<Q>> {
    prop::collection::vec(-3i64..=3, n.pow(4)).prop_map(move |v| common::int_tensor(n, &v))
}

fn int_mat(n: usize) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| Mat::from_fn(n, n, |i, j| Q::from_i64(v[i * n + j])))
}

/// Both sides of the quantum Yang–Baxter equation summed index by index.
fn yb_entrywise<S: Scalar>(
    r: &Tensor4<S>,
    a: usize,
    b: usize,
    c: usize,
    u: usize,
    v: usize,
    w: usize,
) -> (S, S) {
    let n = r.n();
    let mut lhs = S::zero();
    let mut rhs = S::zero();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = r
                    .get(a, b, x, y)
                    .mul_ref(r.get(x, c, u, z))
                    .mul_ref(r.get(y, z, v, w));
                lhs = lhs.add_ref(&l);
                let rr = r
                    .get(b, c, y, z)
                    .mul_ref(r.get(a, z, x, w))
                    .mul_ref(r.get(x, y, u, v));
                rhs = rhs.add_ref(&rr);
            }
        }
    }
    (lhs, rhs)
}

fn assert_yb_sides_entrywise<S: Scalar>(r: &Tensor4<S>) {
    let n = r.n();
    let (l, rr) = r.yb_sides();
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        for w in 0..n {
                            let (el, er) = yb_entrywise(r, a, b, c, u, v, w);
                            let tol = Tolerance(1e-9);
                            assert!(
                                l.get(idx(a, b, c), idx(u, v, w)).close(&el, tol),
                                "lhs at {a}{b}{c},{u}{v}{w}"
                            );
                            assert!(
                                rr.get(idx(a, b, c), idx(u, v, w)).close(&er, tol),
                                "rhs at {a}{b}{c},{u}{v}{w}"
                            );
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn transposes_are_involutions(t in int_tensor(2)) {
        for k in [Transpose::First, Transpose::Second] {
            prop_assert_eq!(t.transpose(k).transpose(k), t.clone());
        }
    }

    #[test]
    fn partial_trace_of_embeddings(mu in int_mat(2)) {
        let n = 2;
        prop_assert_eq!(Tensor4::embed(&mu, Slot::First).partial_trace2(), mu.scale(&Q::from_i64(n)));
        prop_assert_eq!(Tensor4::embed(&mu, Slot::Second).partial_trace2(), Mat::identity(2).scale(&mu.trace()));
    }

    #[test]
    fn exact_inverse(t in int_tensor(2)) {
        if let Ok(inv) = t.invert() {
            prop_assert_eq!(inv.mul(&t), Tensor4::identity(2));
            prop_assert_eq!(t.mul(&inv), Tensor4::identity(2));
        }
    }

    #[test]
    fn yb_sides_match_index_sums(t in int_tensor(2)) {
        assert_yb_sides_entrywise(&t);
    }
}

#[test]
fn float_inverse_residual() {
    let mut rng = common::rng(7);
    for _ in 0..20 {
        let t = common::random_float_tensor(&mut rng, 2);
        let inv = t.invert().expect("random complex matrices are invertible");
        let agr = inv.mul(&t).compare(&Tensor4::identity(2), Tolerance(1e-9));
        assert!(agr.equal, "residual {:?}", agr.residual);
        assert!(agr.residual.unwrap() <= 1e-9);
    }
}

#[test]
fn yb_sides_match_index_sums_on_catalog() {
    for id in renhance::catalog::fixture_ids() {
        assert_yb_sides_entrywise(&common::symbolic(id).r);
    }
    let mut rng = common::rng(11);
    let t: Tensor4<CFloat> = common::random_float_tensor(&mut rng, 2);
    assert_yb_sides_entrywise(&t);
}

#[test]
fn singular_tensor_is_reported() {
    let t = Tensor4::<Q>::from_fn(2, |a, b, _, _| Q::from_i64((a + b) as i64));
    assert!(t.invert().is_err());
}
