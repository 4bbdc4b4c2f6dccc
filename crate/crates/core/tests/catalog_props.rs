mod common;

use std::collections::BTreeMap;

use renhance::catalog::{self, families, fixture, p_squared_quadruple, CatalogError, Verdict};
use renhance::rmatrix::{
    compute_u_v, enhance, enhancement_test, tilde, verify_pair, verify_quadruple,
};
use renhance::scalar::{CFloat, RatFunc, Scalar, Tolerance};

type Q = RatFunc;

const TOL: Tolerance = Tolerance(1e-9);

#[test]
fn ten_families_with_stable_ids() {
    let fams = families();
    assert_eq!(fams.len(), 10);
    let ids: Vec<u8> = fams.iter().map(|f| f.family).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    assert!(matches!(fams[4].verdict, Verdict::NotBiinvertible));
    assert!(matches!(fams[9].verdict, Verdict::NotBiinvertible));
    assert!(
        matches!(&fams[6].verdict, Verdict::EnhancedWithScaling(a) if *a == Q::var("q").powi(-2).unwrap())
    );
    assert_eq!(catalog::fixture_ids().len(), 11);
}

#[test]
fn computed_u_v_match_expected() {
    for id in common::biinvertible_ids() {
        let fx = common::symbolic(id);
        let (u, v) = compute_u_v(&fx.r).unwrap();
        assert_eq!(Some(u), fx.expected_u, "family {id} U");
        assert_eq!(Some(v), fx.expected_v, "family {id} V");
    }
}

#[test]
fn computed_tilde_matches_expected_except_family_nine() {
    for id in common::biinvertible_ids() {
        if id == "9" {
            continue;
        }
        let fx = common::symbolic(id);
        assert_eq!(
            Some(tilde(&fx.r).unwrap()),
            fx.expected_tilde,
            "family {id}"
        );
    }
}

/// The stored tilde for family 9 differs from the computed one in the top-left
/// entry only, where the sign of `q - q^-1` is flipped.
#[test]
fn family_nine_tilde_differs_in_one_entry() {
    let fx = common::symbolic("9");
    let computed = tilde(&fx.r).unwrap();
    let stored = fx.expected_tilde.unwrap();
    let agr = computed.compare(&stored, TOL);
    assert_eq!(agr.witness, Some((0, 0)));
    let q = Q::var("q");
    let qi = q.inv().unwrap();
    assert_eq!(
        computed.get(0, 0, 0, 0),
        &((qi.clone() - q.clone() + Q::from_i64(2)) / Q::from_i64(4))
    );
    assert_eq!(
        stored.get(0, 0, 0, 0),
        &((q - qi + Q::from_i64(2)) / Q::from_i64(4))
    );
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if (a, b, c, d) != (0, 0, 0, 0) {
                        assert_eq!(computed.get(a, b, c, d), stored.get(a, b, c, d));
                    }
                }
            }
        }
    }
}

fn check_enhancement(id: &str, fx: &catalog::Fixture<Q>) {
    let enh = enhance(&fx.r, TOL).unwrap_or_else(|e| panic!("family {id}: {e}"));
    if let Verdict::EnhancedWithScaling(a) = &fx.verdict {
        assert_eq!(&enh.alpha, a, "family {id}");
    } else {
        assert!(enh.alpha.is_one(), "family {id}");
    }
    for p in &enh.pairs {
        assert!(
            verify_pair(&p.s, &p.mu, TOL).unwrap().all_passed(),
            "family {id}"
        );
    }
    for q in &enh.quadruples {
        assert!(
            verify_quadruple(&q.s, &q.mu, &q.alpha, &q.beta, TOL)
                .unwrap()
                .all_passed(),
            "family {id}"
        );
    }
}

#[test]
fn enhanceable_families_enhance_symbolically_and_at_random_points() {
    let mut rng = common::rng(41);
    for id in common::enhanceable_ids() {
        let params = common::symbolic(id).params;
        if id != "8" {
            check_enhancement(id, &common::symbolic(id));
        }
        for _ in 0..5 {
            let mut vals: Vec<(&str, Q)> = params
                .iter()
                .map(|&p| {
                    let (a, b) = common::random_rational(&mut rng);
                    (p, Q::ratio(a, b))
                })
                .collect();
            if id == "8" {
                // braids only on p = ±q
                vals[0].1 = vals[1].1.clone();
            }
            check_enhancement(id, &common::bound(id, &vals));
        }
    }
}

#[test]
fn conditional_families_enhance_only_on_their_constraint() {
    let mut rng = common::rng(43);
    for (id, param) in [("1", "q"), ("3", "p")] {
        let Verdict::ConditionallyEnhanced { alternatives, .. } = common::symbolic(id).verdict
        else {
            panic!("family {id} should be conditional");
        };
        for alt in alternatives {
            let vals: Vec<(&str, Q)> = alt.iter().map(|&(k, v)| (k, Q::from_i64(v))).collect();
            let fx = common::bound(id, &vals);
            assert!(
                enhancement_test(&fx.r, TOL).alpha.is_some(),
                "family {id} at {alt:?}"
            );
        }
        assert!(enhancement_test(&common::symbolic(id).r, TOL)
            .alpha_sq
            .is_none());
        for _ in 0..5 {
            let (a, b) = common::random_rational(&mut rng);
            if a == b || a == -b {
                continue;
            }
            let fx = common::bound(id, &[(param, Q::ratio(a, b))]);
            assert!(
                enhancement_test(&fx.r, TOL).alpha_sq.is_none(),
                "family {id} at {param} = {a}/{b}"
            );
        }
    }
}

#[test]
fn p_squared_quadruple_verifies() {
    let q = p_squared_quadruple::<Q>(2);
    assert!(verify_quadruple(&q.s, &q.mu, &q.alpha, &q.beta, TOL)
        .unwrap()
        .all_passed());
}

#[test]
fn bindings_are_validated() {
    let none: BTreeMap<String, Q> = BTreeMap::new();
    assert!(matches!(
        fixture::<Q>("6", &none),
        Err(CatalogError::UnknownFamily(_))
    ));
    assert!(matches!(
        fixture::<Q>("11", &none),
        Err(CatalogError::UnknownFamily(_))
    ));
    let extra: BTreeMap<String, Q> = [("s".to_string(), Q::one())].into();
    assert!(matches!(
        fixture::<Q>("7", &extra),
        Err(CatalogError::BadBinding(_))
    ));
    let zero: BTreeMap<String, Q> = [("q".to_string(), Q::zero())].into();
    assert!(matches!(
        fixture::<Q>("7", &zero),
        Err(CatalogError::BadBinding(_))
    ));
    let float_missing: BTreeMap<String, CFloat> = [("q".to_string(), CFloat::new(2.0, 0.0))].into();
    assert!(matches!(
        fixture::<CFloat>("7", &float_missing),
        Err(CatalogError::BadBinding(_))
    ));
}

#[test]
fn symbolic_fixtures_have_only_their_parameters() {
    for id in catalog::fixture_ids() {
        let fx = common::symbolic(id);
        for e in fx.r.mat().entries() {
            for v in e.variables() {
                assert!(fx.params.contains(&v.as_ref()), "family {id} uses {v}");
            }
        }
    }
}
