//! Reference library of the 4×4 R-matrices (`n = 2`) with their expected `R̃`,
//! `U`, `V` and enhancement verdicts.
//!
//! Families are numbered 1–10; family 6 has two sub-cases, `6a` (middle diagonal
//! `+1`) and `6b` (middle diagonal `-1`), and 10 is the permutation matrix.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rmatrix::{EnhancedQuadruple, Provenance};
use crate::scalar::{RatFunc, Scalar};
use crate::tensor::{Mat, Tensor4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family '{0}' (known: 1, 2, 3, 4, 5, 6a, 6b, 7, 8, 9, 10)")]
    UnknownFamily(String),
    #[error("bad binding: {0}")]
    BadBinding(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<S> {
    EnhancedAsIs,
    EnhancedWithScaling(S),
    /// Enhanced only on the given parameter values; each alternative is a full set
    /// of bindings.
    ConditionallyEnhanced {
        constraint: &'static str,
        alternatives: Vec<Vec<(&'static str, i64)>>,
    },
    NotBiinvertible,
}

impl<S: Scalar> fmt::Display for Verdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EnhancedAsIs => f.write_str("enhanced as is (alpha = 1)"),
            Verdict::EnhancedWithScaling(a) => write!(f, "enhanced with scaling alpha = {a}"),
            Verdict::ConditionallyEnhanced { constraint, .. } => {
                write!(f, "enhanced when {constraint}")
            }
            Verdict::NotBiinvertible => f.write_str("not biinvertible"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture<S> {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub r: Tensor4<S>,
    pub expected_tilde: Option<Tensor4<S>>,
    pub expected_u: Option<Mat<S>>,
    pub expected_v: Option<Mat<S>>,
    pub verdict: Verdict<S>,
    pub notes: &'static str,
}

/// Summary line for one family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInfo {
    pub family: u8,
    pub ids: &'static [&'static str],
    pub params: &'static [&'static str],
    pub verdict: Verdict<RatFunc>,
}

struct Entry {
    id: &'static str,
    params: &'static [&'static str],
    /// Parameters that appear inverted and so must be nonzero.
    nonzero: &'static [&'static str],
    notes: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry { id: "1", params: &["p", "s", "q"], nonzero: &["p", "s", "q"], notes: "diagonal; VU = diag(1, q^-2)" },
    Entry { id: "2", params: &["q"], nonzero: &["q"], notes: "" },
    Entry { id: "3", params: &["p", "q"], nonzero: &[], notes: "VU = [[1, -2p-2], [0, 1]]" },
    Entry { id: "4", params: &["q"], nonzero: &[], notes: "" },
    Entry { id: "5", params: &[], nonzero: &[], notes: "R is invertible but its second transpose is not" },
    Entry { id: "6a", params: &[], nonzero: &[], notes: "top-right corner 1, middle diagonal +1" },
    Entry { id: "6b", params: &[], nonzero: &[], notes: "top-right corner 1, middle diagonal -1" },
    Entry { id: "7", params: &["p", "q"], nonzero: &["p", "q"], notes: "VU = q^-4 I" },
    Entry {
        id: "8",
        params: &["p", "q"],
        nonzero: &["p", "q"],
        notes: "VU = I for all p, q, but the Yang-Baxter equation holds only when p^2 = q^2",
    },
    Entry {
        id: "9",
        params: &["q"],
        nonzero: &["q"],
        notes: "VU = I/4. The stored expected R-tilde has entry (1,1) = (q - q^-1 + 2)/4; \
                inverting the second transpose gives (q^-1 - q + 2)/4",
    },
    Entry {
        id: "10",
        params: &[],
        nonzero: &[],
        notes: "the permutation P; (P^2, I, 1, n) still satisfies the quadruple axioms, (P^2, I, 1/2, 2) fails ENH2",
    },
];

fn entry(id: &str) -> Result<&'static Entry, CatalogError> {
    ENTRIES
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
}

/// All ten families in display order.
pub fn families() -> Vec<FamilyInfo> {
    let info = |family, ids: &'static [&'static str]| {
        let fx = fixture::<RatFunc>(ids[0], &BTreeMap::new()).expect("symbolic fixture");
        FamilyInfo {
            family,
            ids,
            params: fx.params,
            verdict: fx.verdict,
        }
    };
    vec![
        info(1, &["1"]),
        info(2, &["2"]),
        info(3, &["3"]),
        info(4, &["4"]),
        info(5, &["5"]),
        info(6, &["6a", "6b"]),
        info(7, &["7"]),
        info(8, &["8"]),
        info(9, &["9"]),
        info(10, &["10"]),
    ]
}

/// Every fixture id, sub-cases included.
pub fn fixture_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|s| s.id).collect()
}

fn c<S: Scalar>(k: i64) -> S {
    S::from_i64(k)
}

fn tensor<S: Scalar>(rows: [[S; 4]; 4]) -> Tensor4<S> {
    let m = Mat::from_rows(rows.into_iter().map(Vec::from).collect()).expect("4x4");
    Tensor4::from_mat(2, m).expect("n = 2")
}

fn mat2<S: Scalar>(rows: [[S; 2]; 2]) -> Mat<S> {
    Mat::from_rows(rows.into_iter().map(Vec::from).collect()).expect("2x2")
}

fn int_tensor<S: Scalar>(rows: [[i64; 4]; 4]) -> Tensor4<S> {
    tensor(rows.map(|r| r.map(c)))
}

/// Instantiates fixture `id`. Parameters absent from `bindings` stay symbolic in the
/// exact backend; the float backend needs every parameter bound.
pub fn fixture<S: Scalar>(
    id: &str,
    bindings: &BTreeMap<String, S>,
) -> Result<Fixture<S>, CatalogError> {
    let sp = entry(id)?;
    if let Some(extra) = bindings.keys().find(|k| !sp.params.contains(&k.as_str())) {
        return Err(CatalogError::BadBinding(format!(
            "family {id} has no parameter '{extra}' (parameters: {})",
            if sp.params.is_empty() {
                "none".to_string()
            } else {
                sp.params.join(", ")
            }
        )));
    }
    let mut vals: BTreeMap<&str, S> = BTreeMap::new();
    for &name in sp.params {
        let v = match bindings.get(name) {
            Some(v) => v.clone(),
            None => S::symbol(name).ok_or_else(|| {
                CatalogError::BadBinding(format!("family {id} needs a value for '{name}'"))
            })?,
        };
        if sp.nonzero.contains(&name) && v.is_zero() {
            return Err(CatalogError::BadBinding(format!(
                "'{name}' must be nonzero in family {id}"
            )));
        }
        vals.insert(name, v);
    }
    let get = |k: &str| vals[k].clone();
    let inv = |x: &S| x.inv().expect("checked nonzero");
    let z = S::zero;
    let o = S::one;

    let (r, tilde, u, v, verdict) = match sp.id {
        "1" => {
            let (p, s, q) = (get("p"), get("s"), get("q"));
            let r = tensor([
                [o(), z(), z(), z()],
                [z(), p.clone(), z(), z()],
                [z(), z(), s.clone(), z()],
                [z(), z(), z(), q.clone()],
            ]);
            let t = tensor([
                [o(), z(), z(), z()],
                [z(), inv(&p), z(), z()],
                [z(), z(), inv(&s), z()],
                [z(), z(), z(), inv(&q)],
            ]);
            let uv = mat2([[o(), z()], [z(), inv(&q)]]);
            let verdict = Verdict::ConditionallyEnhanced {
                constraint: "q = 1 (also q = -1)",
                alternatives: vec![vec![("q", 1)], vec![("q", -1)]],
            };
            (r, Some(t), Some(uv.clone()), Some(uv), verdict)
        }
        "2" => {
            let q = get("q");
            let qi = inv(&q);
            let r = tensor([
                [z(), z(), z(), q.clone()],
                [z(), z(), o(), z()],
                [z(), o(), z(), z()],
                [q, z(), z(), z()],
            ]);
            let t = tensor([
                [z(), z(), z(), qi.clone()],
                [z(), z(), o(), z()],
                [z(), o(), z(), z()],
                [qi, z(), z(), z()],
            ]);
            (
                r,
                Some(t),
                Some(Mat::identity(2)),
                Some(Mat::identity(2)),
                Verdict::EnhancedAsIs,
            )
        }
        "3" => {
            let (p, q) = (get("p"), get("q"));
            let r = tensor([
                [o(), o(), p.clone(), q.clone()],
                [z(), o(), z(), p.clone()],
                [z(), z(), o(), o()],
                [z(), z(), z(), o()],
            ]);
            let corner = c::<S>(2).mul_ref(&p).sub_ref(&q);
            let t = tensor([
                [o(), c(-1), p.neg_ref(), corner],
                [z(), o(), z(), p.neg_ref()],
                [z(), z(), o(), c(-1)],
                [z(), z(), z(), o()],
            ]);
            let uv = mat2([[o(), p.neg_ref().sub_ref(&o())], [z(), o()]]);
            let verdict = Verdict::ConditionallyEnhanced {
                constraint: "p = -1",
                alternatives: vec![vec![("p", -1)]],
            };
            (r, Some(t), Some(uv.clone()), Some(uv), verdict)
        }
        "4" => {
            let q = get("q");
            let r = tensor([
                [o(), o(), c(-1), q.clone()],
                [z(), o(), z(), q.clone()],
                [z(), z(), o(), q.neg_ref()],
                [z(), z(), z(), o()],
            ]);
            let corner = q.mul_ref(&q).add_ref(&q).add_ref(&o()).neg_ref();
            let t = tensor([
                [o(), c(-1), o(), corner],
                [z(), o(), z(), q.neg_ref()],
                [z(), z(), o(), q.clone()],
                [z(), z(), z(), o()],
            ]);
            let u = mat2([[o(), o().add_ref(&q)], [z(), o()]]);
            let v = mat2([[o(), c::<S>(-1).sub_ref(&q)], [z(), o()]]);
            (r, Some(t), Some(u), Some(v), Verdict::EnhancedAsIs)
        }
        "5" => {
            let r = int_tensor([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [-1, 0, 0, 1]]);
            (r, None, None, None, Verdict::NotBiinvertible)
        }
        "6a" | "6b" => {
            let m = if sp.id == "6a" { 1 } else { -1 };
            let r = int_tensor([[1, 0, 0, 1], [0, m, 0, 0], [0, 0, m, 0], [0, 0, 0, 1]]);
            let t = int_tensor([[1, 0, 0, -1], [0, m, 0, 0], [0, 0, m, 0], [0, 0, 0, 1]]);
            (
                r,
                Some(t),
                Some(Mat::identity(2)),
                Some(Mat::identity(2)),
                Verdict::EnhancedAsIs,
            )
        }
        "7" | "8" => {
            let (p, q) = (get("p"), get("q"));
            let (pi, qi) = (inv(&p), inv(&q));
            let qq = q.sub_ref(&qi);
            if sp.id == "7" {
                let r = tensor([
                    [q.clone(), z(), z(), z()],
                    [z(), p.clone(), qq, z()],
                    [z(), z(), pi.clone(), z()],
                    [z(), z(), z(), q.clone()],
                ]);
                let mid = qi.sub_ref(&q).mul_ref(&inv(&q.mul_ref(&q)));
                let t = tensor([
                    [qi.clone(), z(), z(), z()],
                    [z(), pi, mid, z()],
                    [z(), z(), p, z()],
                    [z(), z(), z(), qi.clone()],
                ]);
                let qi3 = qi.mul_ref(&qi).mul_ref(&qi);
                let u = Mat::diag(&[qi.clone(), qi3.clone()]);
                let v = Mat::diag(&[qi3, qi.clone()]);
                let alpha = qi.mul_ref(&qi);
                (
                    r,
                    Some(t),
                    Some(u),
                    Some(v),
                    Verdict::EnhancedWithScaling(alpha),
                )
            } else {
                let r = tensor([
                    [q.clone(), z(), z(), q.clone()],
                    [z(), p.clone(), qq.clone(), z()],
                    [z(), z(), pi.clone(), z()],
                    [z(), z(), z(), qi.neg_ref()],
                ]);
                let t = tensor([
                    [qi.clone(), z(), z(), q.neg_ref()],
                    [z(), pi, qq, z()],
                    [z(), z(), p, z()],
                    [z(), z(), z(), q.neg_ref()],
                ]);
                let u = Mat::diag(&[qi.clone(), qi.neg_ref()]);
                let v = Mat::diag(&[q.clone(), q.neg_ref()]);
                (r, Some(t), Some(u), Some(v), Verdict::EnhancedAsIs)
            }
        }
        "9" => {
            let q = get("q");
            let qi = inv(&q);
            let d = q.sub_ref(&qi);
            let s = q.add_ref(&qi);
            let two = c::<S>(2);
            let r = tensor([
                [d.add_ref(&two), z(), z(), d.clone()],
                [z(), s.clone(), d.clone(), z()],
                [z(), d.clone(), s.clone(), z()],
                [d.clone(), z(), z(), d.sub_ref(&two)],
            ]);
            let nd = d.neg_ref();
            let printed = tensor([
                [d.add_ref(&two), z(), z(), nd.clone()],
                [z(), s.clone(), d.clone(), z()],
                [z(), d, s, z()],
                [nd.clone(), z(), z(), nd.sub_ref(&two)],
            ]);
            let t = printed.scale(&S::from_ratio(1, 4));
            let half = S::from_ratio(1, 2);
            let uv = Mat::diag(&[half.clone(), half.neg_ref()]);
            (
                r,
                Some(t),
                Some(uv.clone()),
                Some(uv),
                Verdict::EnhancedWithScaling(half),
            )
        }
        "10" => (
            Tensor4::permutation(2),
            None,
            None,
            None,
            Verdict::NotBiinvertible,
        ),
        _ => unreachable!("entry table and constructor agree"),
    };
    Ok(Fixture {
        id: sp.id,
        params: sp.params,
        r,
        expected_tilde: tilde,
        expected_u: u,
        expected_v: v,
        verdict,
        notes: sp.notes,
    })
}

/// `(P², I, 1, n)`: satisfies the quadruple axioms although `P` is not biinvertible.
pub fn p_squared_quadruple<S: Scalar>(n: usize) -> EnhancedQuadruple<S> {
    let p = Tensor4::permutation(n);
    EnhancedQuadruple {
        s: p.mul(&p),
        mu: Mat::identity(n),
        alpha: S::one(),
        beta: S::from_i64(n as i64),
        provenance: Provenance::UserSupplied,
    }
}
