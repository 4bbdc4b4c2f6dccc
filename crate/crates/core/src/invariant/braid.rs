use std::fmt;
use std::str::FromStr;

use super::{InvariantError, InvariantInput};
use crate::scalar::Scalar;
use crate::tensor::{Mat, Tensor4};

/// A word in the braid group on `strands` strands. Letter `(i, ε)` is `σ_i^ε` with
/// `1 <= i < strands` and `ε = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, InvariantError> {
        if strands == 0 {
            return Err(InvariantError::BadBraid("need at least one strand".into()));
        }
        for &(i, e) in &letters {
            if i == 0 || i >= strands {
                return Err(InvariantError::BadBraid(format!(
                    "s{i} out of range for {strands} strands"
                )));
            }
            if e != 1 && e != -1 {
                return Err(InvariantError::BadBraid(format!("exponent {e} is not ±1")));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect();
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// `self · other`; panics if the strand counts differ.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// `η · self · η^{-1}`.
    pub fn conjugate_by(&self, eta: &Self) -> Self {
        eta.then(self).then(&eta.inverse())
    }

    /// Adds a strand on the right and appends `σ_m^{sign}`.
    pub fn stabilize(&self, sign: i8) -> Self {
        let mut letters = self.letters.clone();
        letters.push((self.strands, sign.signum()));
        Self {
            strands: self.strands + 1,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={}", self.strands)?;
        for &(i, e) in &self.letters {
            write!(f, " s{i}{}", if e < 0 { "'" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = InvariantError;

    /// `strands=3 s1 s2 s1'`
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| InvariantError::BadBraid(m);
        let mut parts = text.split_whitespace();
        let head = parts.next().ok_or_else(|| bad("empty braid word".into()))?;
        let strands = head
            .strip_prefix("strands=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| bad(format!("expected 'strands=<m>', got '{head}'")))?;
        let mut letters = Vec::new();
        for tok in parts {
            let (body, e) = match tok.strip_suffix('\'') {
                Some(b) => (b, -1),
                None => (tok, 1),
            };
            let i = body
                .strip_prefix('s')
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("bad letter '{tok}'")))?;
            letters.push((i, e));
        }
        Self::new(strands, letters)
    }
}

/// `w(ξ) = Σ ε`.
pub fn writhe(xi: &BraidWord) -> i64 {
    xi.letters.iter().map(|&(_, e)| i64::from(e)).sum()
}

/// Caps the number of strands a dense braid representation may use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_strands: Option<usize>,
}

impl Limits {
    /// The largest `m` with `n^m <= 4096` unless overridden.
    pub fn cap(&self, n: usize) -> usize {
        self.max_strands.unwrap_or_else(|| {
            if n <= 1 {
                return usize::MAX;
            }
            let mut m = 0;
            let mut size = 1usize;
            while size * n <= 4096 {
                size *= n;
                m += 1;
            }
            m.max(1)
        })
    }

    fn check(&self, n: usize, strands: usize) -> Result<(), InvariantError> {
        let cap = self.cap(n);
        if strands > cap {
            return Err(InvariantError::ResourceCap { strands, cap, n });
        }
        Ok(())
    }
}

/// Right-multiplies `m` by the operator acting as `op` on strands `(i, i+1)`
/// (0-based `i`) of `(ℂⁿ)^{⊗strands}`.
fn apply_right<S: Scalar>(m: &mut Mat<S>, op: &Tensor4<S>, i: usize, strands: usize) {
    let n = op.n();
    let nn = n * n;
    let lo = n.pow((strands - i - 2) as u32);
    let hi = n.pow(i as u32);
    let dim = m.rows();
    let ops: Vec<Vec<(usize, S)>> = (0..nn)
        .map(|ab| {
            (0..nn)
                .filter_map(|cd| {
                    let v = op.mat().get(ab, cd);
                    (!v.is_zero()).then(|| (cd, v.clone()))
                })
                .collect()
        })
        .collect();
    let mut out = Mat::<S>::zeros(dim, dim);
    let mut x = vec![S::zero(); nn];
    for r in 0..dim {
        let row = m.row(r);
        for h in 0..hi {
            for l in 0..lo {
                let base = h * nn * lo + l;
                let mut any = false;
                for (ab, slot) in x.iter_mut().enumerate() {
                    *slot = row[base + ab * lo].clone();
                    any |= !slot.is_zero();
                }
                if !any {
                    continue;
                }
                for (ab, xa) in x.iter().enumerate() {
                    if xa.is_zero() {
                        continue;
                    }
                    for (cd, v) in &ops[ab] {
                        let col = base + cd * lo;
                        let cur = out.get(r, col).add_ref(&xa.mul_ref(v));
                        out.set(r, col, cur);
                    }
                }
            }
        }
    }
    *m = out;
}

/// `ρ_S(ξ) = S_{i₁,i₁+1}^{ε₁} ⋯ S_{i_r,i_r+1}^{ε_r}` on `(ℂⁿ)^{⊗m}`.
pub fn braid_rep<S: Scalar>(
    s: &Tensor4<S>,
    xi: &BraidWord,
    limits: Limits,
) -> Result<Mat<S>, InvariantError> {
    let n = s.n();
    limits.check(n, xi.strands)?;
    let dim = n.pow(xi.strands as u32);
    let mut m = Mat::identity(dim);
    if xi.strands < 2 {
        return Ok(m);
    }
    let s_inv = if xi.letters.iter().any(|&(_, e)| e < 0) {
        Some(s.invert()?)
    } else {
        None
    };
    for &(i, e) in &xi.letters {
        let op = if e > 0 {
            s
        } else {
            s_inv.as_ref().expect("inverse computed above")
        };
        apply_right(&mut m, op, i - 1, xi.strands);
    }
    Ok(m)
}

/// `Tr(A · μ^{⊗m})` without forming the Kronecker power.
fn trace_with_mu<S: Scalar>(a: &Mat<S>, mu: &Mat<S>, strands: usize) -> S {
    let n = mu.rows();
    let dim = a.rows();
    let mut acc = S::zero();
    for r in 0..dim {
        for c in 0..dim {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            // (μ^{⊗m})[c][r] = Π_k μ[c_k][r_k]
            let (mut x, mut y) = (c, r);
            let mut w = S::one();
            for _ in 0..strands {
                let f = mu.get(x % n, y % n);
                if f.is_zero() {
                    w = S::zero();
                    break;
                }
                w = w.mul_ref(f);
                x /= n;
                y /= n;
            }
            if !w.is_zero() {
                acc = acc.add_ref(&v.mul_ref(&w));
            }
        }
    }
    acc
}

/// `T_S(ξ) = α^{-w(ξ)} β^{-m} Tr(ρ_S(ξ) ∘ μ^{⊗m})`.
pub fn turaev<S: Scalar>(
    input: &InvariantInput<S>,
    xi: &BraidWord,
    limits: Limits,
) -> Result<S, InvariantError> {
    let rho = braid_rep(&input.s, xi, limits)?;
    let tr = trace_with_mu(&rho, &input.mu, xi.strands);
    let a = input
        .alpha
        .powi(-(writhe(xi) as i32))
        .map_err(|_| InvariantError::Singular)?;
    let b = input
        .beta
        .powi(-(xi.strands as i32))
        .map_err(|_| InvariantError::Singular)?;
    Ok(a.mul_ref(&b).mul_ref(&tr))
}
