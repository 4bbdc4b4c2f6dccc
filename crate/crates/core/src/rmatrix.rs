//! Decision procedure for enhancing an R-matrix, and verifiers for both flavours of
//! enhancement: quadruples `(S, μ, α, β)` feeding a Markov trace, and pairs
//! `(S, μ)` satisfying the extra transpose-duality condition needed for tangles.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::invariant::braidings;
use crate::scalar::{Scalar, Tolerance};
use crate::tensor::{Agreement, Mat, Slot, Tensor4, TensorError, Transpose};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RMatrixError {
    #[error("R is not invertible")]
    NotInvertible,
    #[error("R is not biinvertible (its second transpose is singular)")]
    NotBiinvertible,
    #[error("not enhanceable: VU is not a scalar multiple of the identity")]
    NotEnhanceable,
    #[error("VU = ({0})·I but that scalar has no monomial square root; supply alpha explicitly")]
    NoMonomialRoot(String),
    #[error("alpha^2 = {given} does not match the scalar {expected} in VU")]
    AlphaMismatch { given: String, expected: String },
    #[error("{what} is singular")]
    Singular { what: &'static str },
    #[error("constructed {what} failed verification: {failed}")]
    VerificationFailed { what: String, failed: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`
    Yb,
    /// `S₁₂S₂₃S₁₂ = S₂₃S₁₂S₂₃`
    Yb3,
    /// `S(μ⊗μ) = (μ⊗μ)S`
    Enh1,
    /// `Tr₂(S^{±1}(μ⊗μ)) = α^{±1}βμ`
    Enh2,
    /// `Tr₂(S^{±1}(I⊗μ)) = α^{±1}βI`
    Enh3,
    /// `(PS^{∓1})^{t1}(I⊗μ)(S^{±1}P)^{t1}(I⊗μ^{-1}) = I`
    Enh4,
    /// `(I⊗(μᵀ)^{-1})(S^{±1}P)^{t2}(I⊗μᵀ)(PS^{∓1})^{t2} = I`
    Enh5,
    Biinv,
    VuScalar,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Yb => "YB",
            Axiom::Yb3 => "YB3",
            Axiom::Enh1 => "ENH1",
            Axiom::Enh2 => "ENH2",
            Axiom::Enh3 => "ENH3",
            Axiom::Enh4 => "ENH4",
            Axiom::Enh5 => "ENH5",
            Axiom::Biinv => "BIINV",
            Axiom::VuScalar => "VU_SCALAR",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Evidence {
    /// 1-based index tuple of an entry where the identity fails (exact backend).
    pub witness: Option<Vec<usize>>,
    /// Relative Frobenius residual (float backend).
    pub residual: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomOutcome {
    pub passed: bool,
    pub evidence: Evidence,
}

impl AxiomOutcome {
    pub fn pass() -> Self {
        Self {
            passed: true,
            evidence: Evidence::default(),
        }
    }

    pub fn fail(note: impl Into<String>) -> Self {
        Self {
            passed: false,
            evidence: Evidence {
                note: Some(note.into()),
                ..Evidence::default()
            },
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.evidence.note = Some(note.into());
        self
    }

    /// Joins two sub-checks (e.g. both signs); the first failure supplies evidence.
    fn and(self, other: Self) -> Self {
        let residual = match (self.evidence.residual, other.evidence.residual) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let mut out = if !self.passed { self } else { other };
        out.evidence.residual = residual;
        out
    }
}

/// Turns a matrix comparison into an outcome; `split` maps a flat row or column
/// index to the index tuple it stands for.
fn outcome(agr: Agreement, split: impl Fn(usize) -> Vec<usize>) -> AxiomOutcome {
    let witness = if agr.equal {
        None
    } else {
        agr.witness.map(|(r, c)| {
            split(r)
                .into_iter()
                .chain(split(c))
                .map(|k| k + 1)
                .collect()
        })
    };
    AxiomOutcome {
        passed: agr.equal,
        evidence: Evidence {
            witness,
            residual: agr.residual,
            note: None,
        },
    }
}

fn digits(n: usize, width: usize) -> impl Fn(usize) -> Vec<usize> {
    move |mut x| {
        let mut out = vec![0; width];
        for k in (0..width).rev() {
            out[k] = x % n;
            x /= n;
        }
        out
    }
}

/// Per-axiom results of a verification run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnhancementReport {
    pub outcomes: BTreeMap<Axiom, AxiomOutcome>,
    /// Whether ENH2 and ENH3 reached the same verdict (only when both ran).
    pub enh2_enh3_agree: Option<bool>,
    /// Whether ENH4 and ENH5 reached the same verdict (only when both ran).
    pub enh4_enh5_agree: Option<bool>,
}

impl EnhancementReport {
    pub fn insert(&mut self, axiom: Axiom, outcome: AxiomOutcome) {
        self.outcomes.insert(axiom, outcome);
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomOutcome> {
        self.outcomes.get(&axiom)
    }

    pub fn passed(&self, axiom: Axiom) -> Option<bool> {
        self.get(axiom).map(|o| o.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.values().all(|o| o.passed)
    }

    pub fn failures(&self) -> Vec<Axiom> {
        self.outcomes
            .iter()
            .filter(|(_, o)| !o.passed)
            .map(|(a, _)| *a)
            .collect()
    }
}

impl fmt::Display for EnhancementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (axiom, o) in &self.outcomes {
            write!(
                f,
                "{:<10} {}",
                axiom.name(),
                if o.passed { "pass" } else { "FAIL" }
            )?;
            if let Some(w) = &o.evidence.witness {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "  witness ({})", w.join(","))?;
            }
            if let Some(r) = o.evidence.residual {
                write!(f, "  residual {r:.3e}")?;
            }
            if let Some(n) = &o.evidence.note {
                write!(f, "  {n}")?;
            }
            writeln!(f)?;
        }
        if let Some(a) = self.enh2_enh3_agree {
            writeln!(f, "ENH2/ENH3 agree: {a}")?;
        }
        if let Some(a) = self.enh4_enh5_agree {
            writeln!(f, "ENH4/ENH5 agree: {a}")?;
        }
        Ok(())
    }
}

/// Quantum Yang–Baxter equation; the witness is `(a,b,c,u,v,w)`.
pub fn check_qyb<S: Scalar>(r: &Tensor4<S>, tol: Tolerance) -> AxiomOutcome {
    let (l, rr) = r.yb_sides();
    outcome(l.compare(&rr, tol), digits(r.n(), 3))
}

/// `S₁₂S₂₃S₁₂ = S₂₃S₁₂S₂₃`.
pub fn check_braid_relation<S: Scalar>(s: &Tensor4<S>, tol: Tolerance) -> AxiomOutcome {
    let (l, r) = s.braid_sides();
    outcome(l.compare(&r, tol), digits(s.n(), 3))
}

/// `(PR, RP)`.
pub fn braid_forms<S: Scalar>(r: &Tensor4<S>) -> (Tensor4<S>, Tensor4<S>) {
    let p = Tensor4::permutation(r.n());
    (p.mul(r), r.mul(&p))
}

/// `R̃ = ((R^{t2})^{-1})^{t2}`.
pub fn tilde<S: Scalar>(r: &Tensor4<S>) -> Result<Tensor4<S>, RMatrixError> {
    r.invert().map_err(|_| RMatrixError::NotInvertible)?;
    let inv = r
        .transpose(Transpose::Second)
        .invert()
        .map_err(|_| RMatrixError::NotBiinvertible)?;
    Ok(inv.transpose(Transpose::Second))
}

/// `U^i_j = Σ_a R̃^{ai}_{ja}` and `V^i_j = Σ_a R̃^{ia}_{aj}`.
pub fn u_v_from_tilde<S: Scalar>(rt: &Tensor4<S>) -> (Mat<S>, Mat<S>) {
    let n = rt.n();
    let sum = |f: &dyn Fn(usize) -> S| (0..n).fold(S::zero(), |acc, a| acc.add_ref(&f(a)));
    let u = Mat::from_fn(n, n, |i, j| sum(&|a| rt.get(a, i, j, a).clone()));
    let v = Mat::from_fn(n, n, |i, j| sum(&|a| rt.get(i, a, a, j).clone()));
    (u, v)
}

pub fn compute_u_v<S: Scalar>(r: &Tensor4<S>) -> Result<(Mat<S>, Mat<S>), RMatrixError> {
    Ok(u_v_from_tilde(&tilde(r)?))
}

/// `Some(c)` when `m = c·I` with `c ≠ 0`, under the backend's comparison regime.
pub fn scalar_multiple<S: Scalar>(m: &Mat<S>, tol: Tolerance) -> Option<S> {
    let n = m.rows();
    if n == 0 || !m.is_square() {
        return None;
    }
    let c = m.get(0, 0).clone();
    if c.is_zero() {
        return None;
    }
    if S::EXACT {
        for i in 0..n {
            for j in 0..n {
                let e = m.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        return Some(c);
    }
    let norm = m
        .entries()
        .iter()
        .map(|x| x.modulus().powi(2))
        .sum::<f64>()
        .sqrt();
    let mean = (0..n)
        .fold(S::zero(), |acc, i| acc.add_ref(m.get(i, i)))
        .mul_ref(&S::from_ratio(1, n as i64));
    for i in 0..n {
        for j in 0..n {
            let dev = if i == j {
                m.get(i, i).sub_ref(&mean).modulus()
            } else {
                m.get(i, j).modulus()
            };
            let bound = if i == j {
                tol.0 * mean.modulus()
            } else {
                tol.0 * norm
            };
            if dev > bound {
                return None;
            }
        }
    }
    (mean.modulus() > 0.0).then_some(mean)
}

/// Result of testing whether `VU = α²I`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancementTest<S> {
    pub biinvertible: bool,
    pub u: Option<Mat<S>>,
    pub v: Option<Mat<S>>,
    pub vu: Option<Mat<S>>,
    pub uv: Option<Mat<S>>,
    pub alpha_sq: Option<S>,
    pub alpha: Option<S>,
    pub uv_equals_vu: bool,
}

pub fn enhancement_test<S: Scalar>(r: &Tensor4<S>, tol: Tolerance) -> EnhancementTest<S> {
    let Ok((u, v)) = compute_u_v(r) else {
        return EnhancementTest {
            biinvertible: false,
            u: None,
            v: None,
            vu: None,
            uv: None,
            alpha_sq: None,
            alpha: None,
            uv_equals_vu: false,
        };
    };
    let vu = v.mul(&u);
    let uv = u.mul(&v);
    let alpha_sq = scalar_multiple(&vu, tol);
    let alpha = alpha_sq.as_ref().and_then(S::monomial_sqrt);
    let uv_equals_vu = uv.compare(&vu, tol).equal;
    EnhancementTest {
        biinvertible: true,
        u: Some(u),
        v: Some(v),
        vu: Some(vu),
        uv: Some(uv),
        alpha_sq,
        alpha,
        uv_equals_vu,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FromPR,
    FromRP,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::FromPR => "PR",
            Provenance::FromRP => "RP",
            Provenance::UserSupplied => "user",
        })
    }
}

/// `(S, μ)` for tangle invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedPair<S> {
    pub s: Tensor4<S>,
    pub mu: Mat<S>,
    pub provenance: Provenance,
}

/// `(S, μ, α, β)` for the Markov-trace invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedQuadruple<S> {
    pub s: Tensor4<S>,
    pub mu: Mat<S>,
    pub alpha: S,
    pub beta: S,
    pub provenance: Provenance,
}

impl<S: Scalar> From<EnhancedPair<S>> for EnhancedQuadruple<S> {
    fn from(p: EnhancedPair<S>) -> Self {
        Self {
            s: p.s,
            mu: p.mu,
            alpha: S::one(),
            beta: S::one(),
            provenance: p.provenance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enhancement<S> {
    pub alpha: S,
    /// `(αPR, α^{-1}U)` then `(αRP, α^{-1}V)`.
    pub pairs: Vec<EnhancedPair<S>>,
    /// `(PR, U, α^{-1}, α)` then `(RP, V, α^{-1}, α)`.
    pub quadruples: Vec<EnhancedQuadruple<S>>,
}

/// Builds both enhanced pairs and quadruples, using the monomial root of `VU`.
pub fn enhance<S: Scalar>(r: &Tensor4<S>, tol: Tolerance) -> Result<Enhancement<S>, RMatrixError> {
    let test = enhancement_test(r, tol);
    if !test.biinvertible {
        return Err(RMatrixError::NotBiinvertible);
    }
    let alpha_sq = test.alpha_sq.ok_or(RMatrixError::NotEnhanceable)?;
    let alpha = test
        .alpha
        .ok_or_else(|| RMatrixError::NoMonomialRoot(alpha_sq.to_string()))?;
    build(r, alpha, tol)
}

/// As [`enhance`], with a caller-chosen `α` (checked against `VU = α²I`).
pub fn enhance_with_alpha<S: Scalar>(
    r: &Tensor4<S>,
    alpha: S,
    tol: Tolerance,
) -> Result<Enhancement<S>, RMatrixError> {
    let test = enhancement_test(r, tol);
    if !test.biinvertible {
        return Err(RMatrixError::NotBiinvertible);
    }
    let alpha_sq = test.alpha_sq.ok_or(RMatrixError::NotEnhanceable)?;
    let given = alpha.mul_ref(&alpha);
    if !given.close(&alpha_sq, tol) {
        return Err(RMatrixError::AlphaMismatch {
            given: given.to_string(),
            expected: alpha_sq.to_string(),
        });
    }
    build(r, alpha, tol)
}

fn build<S: Scalar>(
    r: &Tensor4<S>,
    alpha: S,
    tol: Tolerance,
) -> Result<Enhancement<S>, RMatrixError> {
    let (u, v) = compute_u_v(r)?;
    let (pr, rp) = braid_forms(r);
    let ainv = alpha.inv().map_err(|_| RMatrixError::NotEnhanceable)?;
    let pairs = vec![
        EnhancedPair {
            s: pr.scale(&alpha),
            mu: u.scale(&ainv),
            provenance: Provenance::FromPR,
        },
        EnhancedPair {
            s: rp.scale(&alpha),
            mu: v.scale(&ainv),
            provenance: Provenance::FromRP,
        },
    ];
    let quadruples = vec![
        EnhancedQuadruple {
            s: pr,
            mu: u,
            alpha: ainv.clone(),
            beta: alpha.clone(),
            provenance: Provenance::FromPR,
        },
        EnhancedQuadruple {
            s: rp,
            mu: v,
            alpha: ainv,
            beta: alpha.clone(),
            provenance: Provenance::FromRP,
        },
    ];
    for p in &pairs {
        let rep = verify_pair(&p.s, &p.mu, tol)?;
        if !rep.all_passed() {
            return Err(failed(format!("pair from {}", p.provenance), &rep));
        }
    }
    for q in &quadruples {
        let rep = verify_quadruple(&q.s, &q.mu, &q.alpha, &q.beta, tol)?;
        if !rep.all_passed() {
            return Err(failed(format!("quadruple from {}", q.provenance), &rep));
        }
    }
    Ok(Enhancement {
        alpha,
        pairs,
        quadruples,
    })
}

fn failed(what: String, rep: &EnhancementReport) -> RMatrixError {
    let names: Vec<&str> = rep.failures().iter().map(|a| a.name()).collect();
    RMatrixError::VerificationFailed {
        what,
        failed: names.join(", "),
    }
}

fn check_enh1<S: Scalar>(s: &Tensor4<S>, mu: &Mat<S>, tol: Tolerance) -> AxiomOutcome {
    let mm = Tensor4::embed(mu, Slot::Both);
    outcome(s.mul(&mm).compare(&mm.mul(s), tol), digits(s.n(), 2))
}

/// `Tr₂(S^{±1}·embed(μ, slots)) = α^{±1}β·rhs` for both signs.
#[allow(clippy::too_many_arguments)]
fn check_trace_axiom<S: Scalar>(
    s: &Tensor4<S>,
    s_inv: &Tensor4<S>,
    mu: &Mat<S>,
    slots: Slot,
    rhs: &Mat<S>,
    alpha: &S,
    beta: &S,
    tol: Tolerance,
) -> Result<AxiomOutcome, RMatrixError> {
    let e = Tensor4::embed(mu, slots);
    let ainv = alpha
        .inv()
        .map_err(|_| RMatrixError::Singular { what: "alpha" })?;
    let n = s.n();
    let plus = outcome(
        s.mul(&e)
            .partial_trace2()
            .compare(&rhs.scale(&alpha.mul_ref(beta)), tol),
        digits(n, 1),
    );
    let minus = outcome(
        s_inv
            .mul(&e)
            .partial_trace2()
            .compare(&rhs.scale(&ainv.mul_ref(beta)), tol),
        digits(n, 1),
    );
    let plus = if plus.passed {
        plus
    } else {
        plus.with_note("sign +")
    };
    let minus = if minus.passed {
        minus
    } else {
        minus.with_note("sign -")
    };
    Ok(plus.and(minus))
}

/// Quadruple axioms for `(S, μ, α, β)`: YB3, ENH1, ENH2, plus ENH3 when `μ` is
/// invertible.
pub fn verify_quadruple<S: Scalar>(
    s: &Tensor4<S>,
    mu: &Mat<S>,
    alpha: &S,
    beta: &S,
    tol: Tolerance,
) -> Result<EnhancementReport, RMatrixError> {
    let s_inv = s
        .invert()
        .map_err(|_| RMatrixError::Singular { what: "S" })?;
    let n = s.n();
    let mut rep = EnhancementReport::default();
    rep.insert(Axiom::Yb3, check_braid_relation(s, tol));
    rep.insert(Axiom::Enh1, check_enh1(s, mu, tol));
    let enh2 = check_trace_axiom(s, &s_inv, mu, Slot::Both, mu, alpha, beta, tol)?;
    let enh2_passed = enh2.passed;
    rep.insert(Axiom::Enh2, enh2);
    if mu.invert().is_ok() {
        let enh3 = check_trace_axiom(
            s,
            &s_inv,
            mu,
            Slot::Second,
            &Mat::identity(n),
            alpha,
            beta,
            tol,
        )?;
        rep.enh2_enh3_agree = Some(enh3.passed == enh2_passed);
        rep.insert(Axiom::Enh3, enh3);
    }
    Ok(rep)
}

/// Pair axioms for `(S, μ)`: YB3, ENH1, ENH3 with `α = β = 1`, ENH4, and the
/// dual-side form ENH5.
pub fn verify_pair<S: Scalar>(
    s: &Tensor4<S>,
    mu: &Mat<S>,
    tol: Tolerance,
) -> Result<EnhancementReport, RMatrixError> {
    let s_inv = s
        .invert()
        .map_err(|_| RMatrixError::Singular { what: "S" })?;
    let mu_inv = mu
        .invert()
        .map_err(|_| RMatrixError::Singular { what: "mu" })?;
    let n = s.n();
    let one = S::one();
    let mut rep = EnhancementReport::default();
    rep.insert(Axiom::Yb3, check_braid_relation(s, tol));
    rep.insert(Axiom::Enh1, check_enh1(s, mu, tol));
    rep.insert(
        Axiom::Enh3,
        check_trace_axiom(
            s,
            &s_inv,
            mu,
            Slot::Second,
            &Mat::identity(n),
            &one,
            &one,
            tol,
        )?,
    );

    let p = Tensor4::permutation(n);
    let id = Tensor4::identity(n);
    let i_mu = Tensor4::embed(mu, Slot::Second);
    let i_mu_inv = Tensor4::embed(&mu_inv, Slot::Second);
    let mu_t = mu.transpose();
    let i_mut = Tensor4::embed(&mu_t, Slot::Second);
    let i_mut_inv = Tensor4::embed(&mu_inv.transpose(), Slot::Second);

    let mut enh4 = AxiomOutcome::pass();
    let mut enh5 = AxiomOutcome::pass();
    for (sign, fwd, back) in [("+", s, &s_inv), ("-", &s_inv, s)] {
        let lhs4 = p
            .mul(back)
            .transpose(Transpose::First)
            .mul(&i_mu)
            .mul(&fwd.mul(&p).transpose(Transpose::First))
            .mul(&i_mu_inv);
        let o4 = outcome(lhs4.compare(&id, tol), digits(n, 2));
        let lhs5 = i_mut_inv
            .mul(&fwd.mul(&p).transpose(Transpose::Second))
            .mul(&i_mut)
            .mul(&p.mul(back).transpose(Transpose::Second));
        let o5 = outcome(lhs5.compare(&id, tol), digits(n, 2));
        let note = format!("sign {sign}");
        enh4 = enh4.and(if o4.passed {
            o4
        } else {
            o4.with_note(note.clone())
        });
        enh5 = enh5.and(if o5.passed { o5 } else { o5.with_note(note) });
    }
    rep.enh4_enh5_agree = Some(enh4.passed == enh5.passed);
    rep.insert(Axiom::Enh4, enh4);
    rep.insert(Axiom::Enh5, enh5);
    Ok(rep)
}

/// Everything `check` reports about a bare R-matrix: YB, biinvertibility and
/// whether `VU` is scalar.
pub fn check_r_matrix<S: Scalar>(
    r: &Tensor4<S>,
    tol: Tolerance,
) -> (EnhancementReport, EnhancementTest<S>) {
    let mut rep = EnhancementReport::default();
    rep.insert(Axiom::Yb, check_qyb(r, tol));
    let test = enhancement_test(r, tol);
    rep.insert(
        Axiom::Biinv,
        if test.biinvertible {
            AxiomOutcome::pass()
        } else if r.invert().is_err() {
            AxiomOutcome::fail("R is singular")
        } else {
            AxiomOutcome::fail("second transpose is singular")
        },
    );
    let vu = match (&test.biinvertible, &test.alpha_sq) {
        (false, _) => AxiomOutcome::fail("U, V undefined"),
        (true, Some(_)) => AxiomOutcome::pass(),
        (true, None) => AxiomOutcome::fail("VU is not scalar"),
    };
    rep.insert(Axiom::VuScalar, vu);
    (rep, test)
}

/// `Σ_{a,b} R̃^{ib}_{aj} R^{ak}_{lb}` against `δ^i_l δ^k_j`, laid out as the
/// operator with row `(i,k)` and column `(l,j)`.
pub fn contraction_identity<S: Scalar>(
    r: &Tensor4<S>,
    tol: Tolerance,
) -> Result<Agreement, RMatrixError> {
    let rt = tilde(r)?;
    let n = r.n();
    let lhs = Tensor4::from_fn(n, |i, k, l, j| {
        let mut acc = S::zero();
        for a in 0..n {
            for b in 0..n {
                acc = acc.add_ref(&rt.get(i, b, a, j).mul_ref(r.get(a, k, l, b)));
            }
        }
        acc
    });
    let rhs = Tensor4::from_fn(n, |i, k, l, j| {
        if i == l && k == j {
            S::one()
        } else {
            S::zero()
        }
    });
    Ok(lhs.compare(&rhs, tol))
}

/// `V₂ = R·V₂·R̃` and `V₁ = R̃·V₁·R`.
pub fn slot_identities<S: Scalar>(
    r: &Tensor4<S>,
    tol: Tolerance,
) -> Result<(Agreement, Agreement), RMatrixError> {
    let rt = tilde(r)?;
    let (_, v) = u_v_from_tilde(&rt);
    let v2 = Tensor4::embed(&v, Slot::Second);
    let v1 = Tensor4::embed(&v, Slot::First);
    Ok((
        v2.compare(&r.mul(&v2).mul(&rt), tol),
        v1.compare(&rt.mul(&v1).mul(r), tol),
    ))
}

/// `Tr₂((PR)^{-1}U₂) = UV` and `Tr₂((RP)^{-1}V₂) = VU`.
pub fn trace_identities<S: Scalar>(
    r: &Tensor4<S>,
    tol: Tolerance,
) -> Result<(Agreement, Agreement), RMatrixError> {
    let (u, v) = compute_u_v(r)?;
    let (pr, rp) = braid_forms(r);
    let pr_inv = pr.invert()?;
    let rp_inv = rp.invert()?;
    let lhs1 = pr_inv
        .mul(&Tensor4::embed(&u, Slot::Second))
        .partial_trace2();
    let lhs2 = rp_inv
        .mul(&Tensor4::embed(&v, Slot::Second))
        .partial_trace2();
    Ok((lhs1.compare(&u.mul(&v), tol), lhs2.compare(&v.mul(&u), tol)))
}

/// The matrix shadow of the inverse-squared twist: with `Y = P·c_{V,V*}ᵀ·P`,
/// `(ev·Y ⊗ id)(id ⊗ Y·coev)` equals `VU`.
pub fn twist_shadow<S: Scalar>(r: &Tensor4<S>, tol: Tolerance) -> Result<Agreement, RMatrixError> {
    let (u, v) = compute_u_v(r)?;
    let y = braidings(r)?.functor_form().c_vd;
    let n = r.n();
    let cup = Mat::from_fn(
        n * n,
        1,
        |k, _| if k / n == k % n { S::one() } else { S::zero() },
    );
    let cap = cup.transpose();
    let id = Mat::identity(n);
    let lhs = cap.mul(y.mat()).kron(&id).mul(&id.kron(&y.mat().mul(&cup)));
    Ok(lhs.compare(&v.mul(&u), tol))
}
