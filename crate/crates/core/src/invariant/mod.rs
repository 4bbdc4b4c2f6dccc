//! Link invariants from enhanced R-matrices: braid representations, the Markov
//! trace, and a layered tangle evaluator.

mod braid;
mod tangle;

use thiserror::Error;

pub use braid::{braid_rep, turaev, writhe, BraidWord, Limits};
pub use tangle::{closure_word, lemma_words, tangle_eval, zigzag_words, Piece, Sign, TangleWord};

use crate::rmatrix::{tilde, RMatrixError};
use crate::scalar::Scalar;
use crate::tensor::{Mat, Tensor4, TensorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("braid word: {0}")]
    BadBraid(String),
    #[error("tangle word line {line}: {msg}")]
    BadTangle { line: usize, msg: String },
    #[error("layer {layer} expects {expected} below but receives {found}")]
    TypeMismatch {
        layer: usize,
        expected: String,
        found: String,
    },
    #[error("{strands} strands exceeds the cap of {cap} (matrix size {n}^{strands})")]
    ResourceCap {
        strands: usize,
        cap: usize,
        n: usize,
    },
    #[error("S is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
}

impl From<TensorError> for InvariantError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Singular => InvariantError::Singular,
            TensorError::Shape(s) => InvariantError::Shape(s),
        }
    }
}

/// The four braidings between `V` and its dual, as literal matrices: each maps the
/// basis pair `(i, j)` (column `i*n + j`) to the row `b*n + a` of its image.
#[derive(Debug, Clone, PartialEq)]
pub struct Braidings<S> {
    /// `e^i ⊗ e^j ↦ R^{ij}_{ab} e^b ⊗ e^a`
    pub c_vv: Tensor4<S>,
    /// `f_i ⊗ f_j ↦ R^{ab}_{ij} f_b ⊗ f_a`
    pub c_dd: Tensor4<S>,
    /// `e^i ⊗ f_j ↦ R̃^{ib}_{aj} f_b ⊗ e^a`
    pub c_vd: Tensor4<S>,
    /// `f_i ⊗ e^j ↦ (R^{-1})^{aj}_{ib} e^b ⊗ f_a`
    pub c_dv: Tensor4<S>,
}

impl<S: Scalar> Braidings<S> {
    /// The same operators as the tangle functor sees them: `P·Cᵀ·P` for each.
    pub fn functor_form(&self) -> Self {
        let n = self.c_vv.n();
        let p = Tensor4::permutation(n);
        let conj = |c: &Tensor4<S>| {
            let t = Tensor4::from_mat(n, c.mat().transpose()).expect("square");
            p.mul(&t).mul(&p)
        };
        Self {
            c_vv: conj(&self.c_vv),
            c_dd: conj(&self.c_dd),
            c_vd: conj(&self.c_vd),
            c_dv: conj(&self.c_dv),
        }
    }
}

pub fn braidings<S: Scalar>(r: &Tensor4<S>) -> Result<Braidings<S>, RMatrixError> {
    let rt = tilde(r)?;
    let ri = r.invert().map_err(|_| RMatrixError::NotInvertible)?;
    let n = r.n();
    // Every operator is indexed (b, a, i, j) with output (b, a) and input (i, j).
    Ok(Braidings {
        c_vv: Tensor4::from_fn(n, |b, a, i, j| r.get(i, j, a, b).clone()),
        c_dd: Tensor4::from_fn(n, |b, a, i, j| r.get(a, b, i, j).clone()),
        c_vd: Tensor4::from_fn(n, |b, a, i, j| rt.get(i, b, a, j).clone()),
        c_dv: Tensor4::from_fn(n, |b, a, i, j| ri.get(a, j, i, b).clone()),
    })
}

/// Data an invariant is evaluated with: `(S, μ, α, β)`, with `α = β = 1` for pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantInput<S> {
    pub s: Tensor4<S>,
    pub mu: Mat<S>,
    pub alpha: S,
    pub beta: S,
}

impl<S: Scalar> InvariantInput<S> {
    pub fn new(s: Tensor4<S>, mu: Mat<S>, alpha: S, beta: S) -> Result<Self, InvariantError> {
        if mu.rows() != s.n() || !mu.is_square() {
            return Err(InvariantError::Shape(format!(
                "mu is {}x{} but S acts on {}-dimensional slots",
                mu.rows(),
                mu.cols(),
                s.n()
            )));
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(InvariantError::Shape(
                "alpha and beta must be nonzero".into(),
            ));
        }
        Ok(Self { s, mu, alpha, beta })
    }

    pub fn pair(s: Tensor4<S>, mu: Mat<S>) -> Result<Self, InvariantError> {
        Self::new(s, mu, S::one(), S::one())
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }
}

impl<S: Scalar> From<crate::rmatrix::EnhancedPair<S>> for InvariantInput<S> {
    fn from(p: crate::rmatrix::EnhancedPair<S>) -> Self {
        Self {
            s: p.s,
            mu: p.mu,
            alpha: S::one(),
            beta: S::one(),
        }
    }
}

impl<S: Scalar> From<crate::rmatrix::EnhancedQuadruple<S>> for InvariantInput<S> {
    fn from(q: crate::rmatrix::EnhancedQuadruple<S>) -> Self {
        Self {
            s: q.s,
            mu: q.mu,
            alpha: q.alpha,
            beta: q.beta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFunc, Tolerance};

    #[test]
    fn identity_braidings_are_flips() {
        let b = braidings(&Tensor4::<RatFunc>::identity(2)).unwrap();
        let p = Tensor4::permutation(2);
        assert_eq!(b.c_vv, p);
        assert_eq!(b.c_dd, p);
        assert_eq!(b.c_vd, p);
        assert_eq!(b.c_dv, p);
    }

    #[test]
    fn braiding_satisfies_braid_relation() {
        let q = RatFunc::var("q");
        let z = RatFunc::zero;
        let qq = &q - &q.inv().unwrap();
        let rows = vec![
            vec![q.clone(), z(), z(), z()],
            vec![z(), RatFunc::one(), qq, z()],
            vec![z(), z(), RatFunc::one(), z()],
            vec![z(), z(), z(), q.clone()],
        ];
        let r = Tensor4::from_mat(2, Mat::from_rows(rows).unwrap()).unwrap();
        let b = braidings(&r).unwrap();
        let (l, rr) = b.c_vv.braid_sides();
        assert!(l.compare(&rr, Tolerance::default()).equal);
        assert_eq!(b.functor_form().c_vv, crate::rmatrix::braid_forms(&r).0);
    }
}
