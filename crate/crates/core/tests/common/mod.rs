#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use renhance::catalog::{self, Fixture, Verdict};
use renhance::invariant::BraidWord;
use renhance::scalar::{CFloat, RatFunc, Scalar};
use renhance::tensor::{Mat, Tensor4};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_braid(rng: &mut StdRng, strands: usize, max_len: usize) -> BraidWord {
    if strands < 2 {
        return BraidWord::identity(strands);
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            (
                rng.gen_range(1..strands),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}

/// A nonzero rational `a/b` with small numerator and denominator.
pub fn random_rational(rng: &mut StdRng) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-9..=9);
        let b = rng.gen_range(1..=7);
        if a != 0 {
            return (a, b);
        }
    }
}

pub fn random_complex(rng: &mut StdRng) -> CFloat {
    CFloat::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

pub fn random_float_tensor(rng: &mut StdRng, n: usize) -> Tensor4<CFloat> {
    Tensor4::from_fn(n, |_, _, _, _| random_complex(rng))
}

pub fn random_float_mat(rng: &mut StdRng, n: usize) -> Mat<CFloat> {
    Mat::from_fn(n, n, |_, _| random_complex(rng))
}

pub fn int_tensor<S: Scalar>(n: usize, vals: &[i64]) -> Tensor4<S> {
    let nn = n * n;
    Tensor4::from_fn(n, |a, b, c, d| {
        S::from_i64(vals[(a * n + b) * nn + c * n + d])
    })
}

pub fn symbolic(id: &str) -> Fixture<RatFunc> {
    catalog::fixture(id, &BTreeMap::new()).expect("symbolic fixture")
}

pub fn bound(id: &str, vals: &[(&str, RatFunc)]) -> Fixture<RatFunc> {
    let b: BTreeMap<String, RatFunc> = vals
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    catalog::fixture(id, &b).expect("bound fixture")
}

/// Fixtures whose verdict promises an enhancement for every parameter value.
pub fn enhanceable_ids() -> Vec<&'static str> {
    catalog::fixture_ids()
        .into_iter()
        .filter(|id| {
            matches!(
                symbolic(id).verdict,
                Verdict::EnhancedAsIs | Verdict::EnhancedWithScaling(_)
            )
        })
        .collect()
}

/// Fixtures with an invertible second transpose.
pub fn biinvertible_ids() -> Vec<&'static str> {
    catalog::fixture_ids()
        .into_iter()
        .filter(|id| !matches!(symbolic(id).verdict, Verdict::NotBiinvertible))
        .collect()
}

/// Binds a conditionally enhanced fixture to its first alternative.
pub fn at_constraint(id: &str) -> Fixture<RatFunc> {
    match symbolic(id).verdict {
        Verdict::ConditionallyEnhanced { alternatives, .. } => {
            let vals: Vec<(&str, RatFunc)> = alternatives[0]
                .iter()
                .map(|&(k, v)| (k, RatFunc::from_i64(v)))
                .collect();
            bound(id, &vals)
        }
        _ => symbolic(id),
    }
}
