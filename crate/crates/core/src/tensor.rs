//! Dense matrices and two-slot operators.
//!
//! A [`Tensor4`] stores `T^{ab}_{cd}` (indices `0..n`) at row `a*n + b`, column
//! `c*n + d` of an `n² × n²` matrix, so it maps `e_c ⊗ e_d` to
//! `Σ T^{ab}_{cd} e_a ⊗ e_b`. Three-slot spaces flatten as `(a*n + b)*n + c`.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Outcome of comparing two matrices of the same shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Agreement {
    pub equal: bool,
    /// First differing entry (exact) or the largest deviation (float), 0-based.
    pub witness: Option<(usize, usize)>,
    /// Relative Frobenius residual; float backend only.
    pub residual: Option<f64>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, TensorError> {
        if data.len() != rows * cols {
            return Err(TensorError::Shape(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, TensorError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TensorError::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(d: &[S]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                S::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<T: Scalar, E>(&self, f: impl FnMut(&S) -> Result<T, E>) -> Result<Mat<T>, E> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add_ref(o.get(i, j))
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub_ref(o.get(i, j))
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols)
                .mul_ref(o.get(i % o.rows, j % o.cols))
        })
    }

    /// Gauss-Jordan inverse. The exact backend takes the first nonzero pivot; the
    /// float backend pivots on the largest modulus.
    pub fn invert(&self) -> Result<Self, TensorError> {
        if !self.is_square() {
            return Err(TensorError::Shape(format!(
                "cannot invert {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.data.iter().map(S::modulus).fold(0.0, f64::max);
        let tiny = scale * f64::EPSILON * 64.0 * n as f64;
        for col in 0..n {
            let pivot = if S::EXACT {
                (col..n).find(|&r| !a.get(r, col).is_zero())
            } else {
                (col..n)
                    .max_by(|&x, &y| a.get(x, col).modulus().total_cmp(&a.get(y, col).modulus()))
                    .filter(|&r| a.get(r, col).modulus() > tiny)
            };
            let Some(p) = pivot else {
                return Err(TensorError::Singular);
            };
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pinv = a.get(col, col).inv().map_err(|_| TensorError::Singular)?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn scale_row(&mut self, i: usize, c: &S) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            self.data[idx] = self.data[idx].mul_ref(c);
        }
    }

    /// row[dst] -= f * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, f: &S) {
        for k in 0..self.cols {
            let s = &self.data[src * self.cols + k];
            if s.is_zero() {
                continue;
            }
            let v = self.data[dst * self.cols + k].sub_ref(&f.mul_ref(s));
            self.data[dst * self.cols + k] = v;
        }
    }

    /// Compares entrywise: exactly, or by relative Frobenius residual for floats.
    pub fn compare(&self, o: &Self, tol: Tolerance) -> Agreement {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "compare shape mismatch"
        );
        if S::EXACT {
            let witness = self
                .data
                .iter()
                .zip(&o.data)
                .position(|(a, b)| a != b)
                .map(|k| (k / self.cols, k % self.cols));
            return Agreement {
                equal: witness.is_none(),
                witness,
                residual: None,
            };
        }
        let frob = |m: &Self| {
            m.data
                .iter()
                .map(|x| x.modulus().powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let diff = self.sub(o);
        let (mut worst, mut at) = (0.0, None);
        for (k, d) in diff.data.iter().enumerate() {
            if d.modulus() > worst {
                worst = d.modulus();
                at = Some((k / self.cols, k % self.cols));
            }
        }
        let residual = frob(&diff) / 1f64.max(frob(self)).max(frob(o));
        Agreement {
            equal: residual <= tol.0,
            witness: at,
            residual: Some(residual),
        }
    }

    pub fn is_identity(&self, tol: Tolerance) -> bool {
        self.is_square() && self.compare(&Self::identity(self.rows), tol).equal
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Which transpose of a two-slot operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transpose {
    /// `(A^{t1})^{ab}_{cd} = A^{cb}_{ad}`
    First,
    /// `(A^{t2})^{ab}_{cd} = A^{ad}_{cb}`
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
    Both,
}

/// An operator on `V ⊗ V` with `dim V = n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor4<S> {
    n: usize,
    mat: Mat<S>,
}

impl<S: Scalar> Tensor4<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        Self {
            n,
            mat: Mat::from_fn(n * n, n * n, |r, c| f(r / n, r % n, c / n, c % n)),
        }
    }

    pub fn from_mat(n: usize, mat: Mat<S>) -> Result<Self, TensorError> {
        if mat.rows() != n * n || mat.cols() != n * n {
            return Err(TensorError::Shape(format!(
                "expected {0}x{0} for n = {n}, got {1}x{2}",
                n * n,
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Self { n, mat })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mat: Mat::identity(n * n),
        }
    }

    /// `P^{ab}_{cd} = δ^a_d δ^b_c`.
    pub fn permutation(n: usize) -> Self {
        Self::from_fn(n, |a, b, c, d| {
            if a == d && b == c {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<S> {
        self.mat
    }

    /// `T^{ab}_{cd}`, 0-based.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &S {
        self.mat.get(a * self.n + b, c * self.n + d)
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Tensor4<T> {
        Tensor4 {
            n: self.n,
            mat: self.mat.map(f),
        }
    }

    pub fn try_map<T: Scalar, E>(
        &self,
        f: impl FnMut(&S) -> Result<T, E>,
    ) -> Result<Tensor4<T>, E> {
        Ok(Tensor4 {
            n: self.n,
            mat: self.mat.try_map(f)?,
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "slot dimension mismatch");
        Self {
            n: self.n,
            mat: self.mat.mul(&o.mat),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            n: self.n,
            mat: self.mat.scale(c),
        }
    }

    pub fn transpose(&self, kind: Transpose) -> Self {
        match kind {
            Transpose::First => Self::from_fn(self.n, |a, b, c, d| self.get(c, b, a, d).clone()),
            Transpose::Second => Self::from_fn(self.n, |a, b, c, d| self.get(a, d, c, b).clone()),
        }
    }

    /// `Tr₂(A)^a_c = Σ_d A^{ad}_{cd}`.
    pub fn partial_trace2(&self) -> Mat<S> {
        let n = self.n;
        Mat::from_fn(n, n, |a, c| {
            (0..n).fold(S::zero(), |acc, d| acc.add_ref(self.get(a, d, c, d)))
        })
    }

    pub fn embed(mu: &Mat<S>, which: Slot) -> Self {
        assert!(mu.is_square(), "embedded matrix must be square");
        let n = mu.rows();
        let id = Mat::identity(n);
        let mat = match which {
            Slot::First => mu.kron(&id),
            Slot::Second => id.kron(mu),
            Slot::Both => mu.kron(mu),
        };
        Self { n, mat }
    }

    pub fn invert(&self) -> Result<Self, TensorError> {
        Ok(Self {
            n: self.n,
            mat: self.mat.invert()?,
        })
    }

    pub fn compare(&self, o: &Self, tol: Tolerance) -> Agreement {
        self.mat.compare(&o.mat, tol)
    }

    /// `self` acting on slots `(i, j)` of `V^{⊗3}` (`i < j`, 0-based).
    pub fn lift3(&self, i: usize, j: usize) -> Mat<S> {
        assert!(i < j && j < 3, "slots must satisfy i < j < 3");
        let n = self.n;
        let k = 3 - i - j;
        let dim = n * n * n;
        let split = |x: usize| [x / (n * n), (x / n) % n, x % n];
        Mat::from_fn(dim, dim, |r, c| {
            let (x, y) = (split(r), split(c));
            if x[k] != y[k] {
                S::zero()
            } else {
                self.get(x[i], x[j], y[i], y[j]).clone()
            }
        })
    }

    /// `R₁₂R₁₃R₂₃` and `R₂₃R₁₃R₁₂` on `V^{⊗3}`.
    pub fn yb_sides(&self) -> (Mat<S>, Mat<S>) {
        let (r12, r13, r23) = (self.lift3(0, 1), self.lift3(0, 2), self.lift3(1, 2));
        (r12.mul(&r13).mul(&r23), r23.mul(&r13).mul(&r12))
    }

    /// `S₁₂S₂₃S₁₂` and `S₂₃S₁₂S₂₃` on `V^{⊗3}`.
    pub fn braid_sides(&self) -> (Mat<S>, Mat<S>) {
        let id = Mat::identity(self.n);
        let s12 = self.mat.kron(&id);
        let s23 = id.kron(&self.mat);
        (s12.mul(&s23).mul(&s12), s23.mul(&s12).mul(&s23))
    }
}

impl<S: Scalar> fmt::Display for Tensor4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}
