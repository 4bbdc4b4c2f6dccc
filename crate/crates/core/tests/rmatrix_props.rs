mod common;

use renhance::catalog::Verdict;
use renhance::rmatrix::{
    braid_forms, compute_u_v, contraction_identity, enhance, enhancement_test, verify_pair,
    verify_quadruple,
};
use renhance::scalar::{CFloat, RatFunc, Scalar, Tolerance};
use renhance::tensor::{Mat, Tensor4};

type Q = RatFunc;

const TOL: Tolerance = Tolerance(1e-9);

#[test]
fn contraction_identity_on_random_float_r() {
    let mut rng = common::rng(3);
    let mut tried = 0;
    while tried < 20 {
        let r = common::random_float_tensor(&mut rng, 2);
        let Ok(agr) = contraction_identity(&r, TOL) else {
            continue;
        };
        tried += 1;
        assert!(agr.equal, "residual {:?}", agr.residual);
    }
}

#[test]
fn contraction_identity_on_catalog() {
    for id in common::biinvertible_ids() {
        let agr = contraction_identity(&common::symbolic(id).r, TOL).unwrap();
        assert!(agr.equal, "family {id}: {:?}", agr.witness);
    }
}

#[test]
fn enh4_and_enh5_agree_on_random_pairs() {
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let s = common::random_float_tensor(&mut rng, 2);
        let mu = common::random_float_mat(&mut rng, 2);
        let rep = verify_pair(&s, &mu, TOL).unwrap();
        assert_eq!(rep.enh4_enh5_agree, Some(true), "{rep}");
    }
}

#[test]
fn enh4_and_enh5_agree_on_float_catalog_pairs() {
    let mut rng = common::rng(9);
    for _ in 0..20 {
        let (p, q) = (
            common::random_complex(&mut rng),
            common::random_complex(&mut rng),
        );
        let b = [("p".to_string(), p), ("q".to_string(), q)].into();
        let fx = renhance::catalog::fixture::<CFloat>("7", &b).unwrap();
        let enh = enhance(&fx.r, TOL).unwrap();
        for pair in &enh.pairs {
            let rep = verify_pair(&pair.s, &pair.mu, TOL).unwrap();
            assert!(rep.all_passed(), "{rep}");
            assert_eq!(rep.enh4_enh5_agree, Some(true));
        }
    }
}

/// Whenever some `(c·PR, μ)` passes the pair axioms, `VU` must be scalar.
#[test]
fn passing_pairs_force_scalar_vu() {
    let mut passes = 0;
    for id in common::biinvertible_ids() {
        for fx in [common::symbolic(id), common::at_constraint(id)] {
            let (u, v) = compute_u_v(&fx.r).unwrap();
            let (pr, _) = braid_forms(&fx.r);
            let test = enhancement_test(&fx.r, TOL);
            let mut scales = vec![Q::one()];
            scales.extend(test.alpha.clone());
            let mut mus = vec![Mat::identity(2), u.clone(), v.clone()];
            if let Some(a) = &test.alpha {
                let ai = a.inv().unwrap();
                mus.push(u.scale(&ai));
                mus.push(v.scale(&ai));
            }
            for c in &scales {
                for mu in &mus {
                    let Ok(rep) = verify_pair(&pr.scale(c), mu, TOL) else {
                        continue;
                    };
                    if rep.all_passed() {
                        passes += 1;
                        assert!(
                            test.alpha_sq.is_some(),
                            "family {id}: pair passes but VU is not scalar"
                        );
                    }
                }
            }
        }
    }
    assert!(passes > 0);
}

#[test]
fn generic_family_one_fails_with_its_own_u() {
    let fx = common::symbolic("1");
    let (u, _) = compute_u_v(&fx.r).unwrap();
    let (pr, _) = braid_forms(&fx.r);
    assert!(!verify_pair(&pr, &u, TOL).unwrap().all_passed());
    assert!(enhancement_test(&fx.r, TOL).alpha_sq.is_none());
}

/// For family 2 only `μ = U` makes `(PR, μ)` an enhanced pair among diagonal `μ`
/// drawn from a grid.
#[test]
fn family_two_mu_is_unique_on_a_grid() {
    let fx = common::symbolic("2");
    let (u, _) = compute_u_v(&fx.r).unwrap();
    let (pr, _) = braid_forms(&fx.r);
    let q = Q::var("q");
    let grid = [
        Q::one(),
        Q::from_i64(-1),
        Q::from_i64(2),
        Q::from_i64(-2),
        Q::ratio(1, 2),
        q.clone(),
        -q.clone(),
        q.inv().unwrap(),
        q.clone() * q.clone(),
    ];
    let mut winners = Vec::new();
    for a in &grid {
        for b in &grid {
            let mu = Mat::diag(&[a.clone(), b.clone()]);
            if verify_pair(&pr, &mu, TOL).unwrap().all_passed() {
                winners.push(mu);
            }
        }
    }
    assert_eq!(winners, vec![u]);
}

#[test]
fn catalog_pairs_and_quadruples_verify() {
    for id in common::enhanceable_ids() {
        if id == "8" {
            continue;
        }
        let enh =
            enhance(&common::symbolic(id).r, TOL).unwrap_or_else(|e| panic!("family {id}: {e}"));
        for p in &enh.pairs {
            assert!(verify_pair(&p.s, &p.mu, TOL).unwrap().all_passed());
        }
        for q in &enh.quadruples {
            assert!(verify_quadruple(&q.s, &q.mu, &q.alpha, &q.beta, TOL)
                .unwrap()
                .all_passed());
        }
    }
}

#[test]
fn family_eight_braids_only_on_p_equal_plus_or_minus_q() {
    let fx = common::symbolic("8");
    let test = enhancement_test(&fx.r, TOL);
    assert!(test.vu.unwrap().is_identity(TOL));
    assert!(enhance(&fx.r, TOL).is_err());
    let q = Q::var("q");
    for p in [q.clone(), -q.clone()] {
        let fx = common::bound("8", &[("p", p)]);
        let enh = enhance(&fx.r, TOL).unwrap();
        assert!(enh.alpha.is_one());
    }
}

#[test]
fn not_biinvertible_fixtures_are_detected() {
    for id in ["5", "10"] {
        let fx = common::symbolic(id);
        assert!(matches!(fx.verdict, Verdict::NotBiinvertible));
        assert!(!enhancement_test(&fx.r, TOL).biinvertible);
        assert!(compute_u_v(&fx.r).is_err());
    }
    let r: Tensor4<Q> = Tensor4::permutation(3);
    assert!(!enhancement_test(&r, TOL).biinvertible);
}
