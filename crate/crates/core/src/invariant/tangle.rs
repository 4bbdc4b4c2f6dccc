//! Layered tangle words and their evaluation.
//!
//! A `+` point carries `V` (a downward strand, `d`), a `-` point carries `V*` (an
//! upward strand, `u`). Layers are listed bottom to top and compose as
//! `top · … · bottom`; within a layer, pieces are tensored left to right.

use std::fmt;
use std::str::FromStr;

use super::{InvariantError, InvariantInput};
use crate::scalar::Scalar;
use crate::tensor::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn show(signs: &[Sign]) -> String {
    let s: Vec<String> = signs.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    /// Downward strand `(+) → (+)`.
    Down,
    /// Upward strand `(-) → (-)`.
    Up,
    /// Positive crossing `(+,+) → (+,+)`.
    Over,
    /// Negative crossing `(+,+) → (+,+)`.
    Under,
    /// `() → (+,-)`
    Cup,
    /// `() → (-,+)`, carries `μ^{-1}`.
    CupBar,
    /// `(-,+) → ()`
    Cap,
    /// `(+,-) → ()`, carries `μ`.
    CapBar,
}

impl Piece {
    pub fn domain(self) -> &'static [Sign] {
        use Sign::*;
        match self {
            Piece::Down => &[Plus],
            Piece::Up => &[Minus],
            Piece::Over | Piece::Under => &[Plus, Plus],
            Piece::Cup | Piece::CupBar => &[],
            Piece::Cap => &[Minus, Plus],
            Piece::CapBar => &[Plus, Minus],
        }
    }

    pub fn codomain(self) -> &'static [Sign] {
        use Sign::*;
        match self {
            Piece::Down => &[Plus],
            Piece::Up => &[Minus],
            Piece::Over | Piece::Under => &[Plus, Plus],
            Piece::Cup => &[Plus, Minus],
            Piece::CupBar => &[Minus, Plus],
            Piece::Cap | Piece::CapBar => &[],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Piece::Down => "d",
            Piece::Up => "u",
            Piece::Over => "x+",
            Piece::Under => "x-",
            Piece::Cup => "cup",
            Piece::CupBar => "cup-",
            Piece::Cap => "cap",
            Piece::CapBar => "cap-",
        }
    }

    fn matrix<S: Scalar>(
        self,
        input: &InvariantInput<S>,
        s_inv: Option<&Mat<S>>,
        mu_inv: Option<&Mat<S>>,
    ) -> Mat<S> {
        let n = input.n();
        let delta = |k: usize| if k / n == k % n { S::one() } else { S::zero() };
        match self {
            Piece::Down | Piece::Up => Mat::identity(n),
            Piece::Over => input.s.mat().clone(),
            Piece::Under => s_inv.expect("inverse prepared").clone(),
            Piece::Cup => Mat::from_fn(n * n, 1, |k, _| delta(k)),
            Piece::Cap => Mat::from_fn(1, n * n, |_, k| delta(k)),
            Piece::CupBar => {
                let mi = mu_inv.expect("inverse prepared");
                Mat::from_fn(n * n, 1, |k, _| mi.get(k % n, k / n).clone())
            }
            Piece::CapBar => Mat::from_fn(1, n * n, |_, k| input.mu.get(k % n, k / n).clone()),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Piece {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "d" => Piece::Down,
            "u" => Piece::Up,
            "x+" => Piece::Over,
            "x-" => Piece::Under,
            "cup" => Piece::Cup,
            "cup-" => Piece::CupBar,
            "cap" => Piece::Cap,
            "cap-" => Piece::CapBar,
            other => return Err(format!("unknown piece '{other}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TangleWord {
    pub layers: Vec<Vec<Piece>>,
}

impl TangleWord {
    pub fn new(layers: Vec<Vec<Piece>>) -> Self {
        Self { layers }
    }

    fn layer_domain(layer: &[Piece]) -> Vec<Sign> {
        layer
            .iter()
            .flat_map(|p| p.domain().iter().copied())
            .collect()
    }

    fn layer_codomain(layer: &[Piece]) -> Vec<Sign> {
        layer
            .iter()
            .flat_map(|p| p.codomain().iter().copied())
            .collect()
    }

    pub fn domain(&self) -> Vec<Sign> {
        self.layers
            .first()
            .map(|l| Self::layer_domain(l))
            .unwrap_or_default()
    }

    pub fn codomain(&self) -> Vec<Sign> {
        self.layers
            .last()
            .map(|l| Self::layer_codomain(l))
            .unwrap_or_default()
    }

    /// Checks that each layer's codomain feeds the next layer's domain.
    pub fn check(&self) -> Result<(), InvariantError> {
        for (k, pair) in self.layers.windows(2).enumerate() {
            let below = Self::layer_codomain(&pair[0]);
            let above = Self::layer_domain(&pair[1]);
            if below != above {
                return Err(InvariantError::TypeMismatch {
                    layer: k + 2,
                    expected: show(&above),
                    found: show(&below),
                });
            }
        }
        Ok(())
    }

    /// Stacks `other` on top of `self`.
    pub fn then(&self, other: &Self) -> Self {
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Self { layers }
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            let names: Vec<&str> = layer.iter().map(|p| p.name()).collect();
            writeln!(f, "{}", names.join(", "))?;
        }
        Ok(())
    }
}

impl FromStr for TangleWord {
    type Err = InvariantError;

    /// One layer per line, bottom first; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut layers = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let layer = body
                .split(',')
                .map(|t| t.trim().parse::<Piece>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|msg| InvariantError::BadTangle { line: k + 1, msg })?;
            layers.push(layer);
        }
        if layers.is_empty() {
            return Err(InvariantError::BadTangle {
                line: 0,
                msg: "no layers".into(),
            });
        }
        Ok(Self { layers })
    }
}

/// The linear map a well-typed word denotes: `n^{|codomain|} × n^{|domain|}`.
pub fn tangle_eval<S: Scalar>(
    word: &TangleWord,
    input: &InvariantInput<S>,
) -> Result<Mat<S>, InvariantError> {
    word.check()?;
    let uses = |p: Piece| word.layers.iter().flatten().any(|&x| x == p);
    let s_inv = if uses(Piece::Under) {
        Some(input.s.invert()?.into_mat())
    } else {
        None
    };
    let mu_inv = if uses(Piece::CupBar) {
        Some(input.mu.invert()?)
    } else {
        None
    };
    let n = input.n();
    let mut acc = Mat::identity(n.pow(word.domain().len() as u32));
    for layer in &word.layers {
        let m = layer.iter().fold(Mat::identity(1), |m, p| {
            m.kron(&p.matrix(input, s_inv.as_ref(), mu_inv.as_ref()))
        });
        acc = m.mul(&acc);
    }
    Ok(acc)
}

fn strands(p: Piece, k: usize) -> Vec<Piece> {
    vec![p; k]
}

/// The closure of `ξ`: nested cups, the braid on the `+` strands, nested `μ`-caps.
/// It evaluates to the 1×1 matrix `Tr(ρ_S(ξ) ∘ μ^{⊗m})`.
pub fn closure_word(xi: &super::BraidWord) -> TangleWord {
    let m = xi.strands();
    let mut layers = Vec::new();
    for k in 0..m {
        let mut l = strands(Piece::Down, k);
        l.push(Piece::Cup);
        l.extend(strands(Piece::Up, k));
        layers.push(l);
    }
    for &(i, e) in xi.letters().iter().rev() {
        let mut l = strands(Piece::Down, i - 1);
        l.push(if e > 0 { Piece::Over } else { Piece::Under });
        l.extend(strands(Piece::Down, m - i - 1));
        l.extend(strands(Piece::Up, m));
        layers.push(l);
    }
    for k in (0..m).rev() {
        let mut l = strands(Piece::Down, k);
        l.push(Piece::CapBar);
        l.extend(strands(Piece::Up, k));
        layers.push(l);
    }
    TangleWord { layers }
}

/// The four zig-zags: plain duality on `V` and `V*`, then the `μ`-twisted duality
/// on `V*` and `V`. Each should evaluate to the identity.
pub fn zigzag_words() -> [TangleWord; 4] {
    use Piece::*;
    [
        TangleWord::new(vec![vec![Cup, Down], vec![Down, Cap]]),
        TangleWord::new(vec![vec![Up, Cup], vec![Cap, Up]]),
        TangleWord::new(vec![vec![CupBar, Up], vec![Up, CapBar]]),
        TangleWord::new(vec![vec![Down, CupBar], vec![CapBar, Down]]),
    ]
}

/// The mixed crossings built from a crossing and cups/caps:
/// `Y^± : (+,-) → (-,+)` and `T^± : (-,+) → (+,-)`, returned as `[Y⁺, Y⁻, T⁺, T⁻]`.
pub fn lemma_words() -> [TangleWord; 4] {
    use Piece::*;
    let y = |x| {
        TangleWord::new(vec![
            vec![CupBar, Down, Up],
            vec![Up, x, Up],
            vec![Up, Down, CapBar],
        ])
    };
    let t = |x| {
        TangleWord::new(vec![
            vec![Up, Down, Cup],
            vec![Up, x, Up],
            vec![Cap, Down, Up],
        ])
    };
    [y(Over), y(Under), t(Over), t(Under)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{turaev, BraidWord, Limits};
    use crate::scalar::{RatFunc, Tolerance};
    use crate::tensor::Tensor4;

    type Q = RatFunc;

    fn input() -> InvariantInput<Q> {
        let q = RatFunc::var("q");
        let mu = Mat::diag(&[q.clone(), q.inv().unwrap()]);
        let s = Tensor4::from_fn(2, |a, b, c, d| {
            if a == d && b == c {
                q.clone()
            } else {
                Q::zero()
            }
        });
        InvariantInput::pair(s, mu).unwrap()
    }

    #[test]
    fn parses_layers_and_comments() {
        let w: TangleWord = "# zig\ncup, d\n d , cap\n".parse().unwrap();
        assert_eq!(
            w.layers,
            vec![vec![Piece::Cup, Piece::Down], vec![Piece::Down, Piece::Cap]]
        );
        assert_eq!(w.to_string(), "cup, d\nd, cap\n");
        let err = "cup, q".parse::<TangleWord>().unwrap_err();
        assert!(matches!(err, InvariantError::BadTangle { line: 1, .. }));
    }

    #[test]
    fn type_mismatch_names_layer() {
        let w: TangleWord = "cup\nd, d".parse().unwrap();
        let err = tangle_eval(&w, &input()).unwrap_err();
        assert!(matches!(err, InvariantError::TypeMismatch { layer: 2, .. }));
    }

    #[test]
    fn zigzags_are_identities() {
        for w in zigzag_words() {
            let m = tangle_eval(&w, &input()).unwrap();
            assert!(m.is_identity(Tolerance::default()), "{w}");
        }
    }

    #[test]
    fn lemma_words_type_check() {
        let [yp, ym, tp, tm] = lemma_words();
        for w in [&yp, &ym] {
            assert_eq!(w.domain(), vec![Sign::Plus, Sign::Minus]);
            assert_eq!(w.codomain(), vec![Sign::Minus, Sign::Plus]);
            w.check().unwrap();
        }
        for w in [&tp, &tm] {
            assert_eq!(w.domain(), vec![Sign::Minus, Sign::Plus]);
            w.check().unwrap();
        }
    }

    #[test]
    fn closure_matches_trace() {
        let inp = input();
        for text in ["strands=1", "strands=2 s1 s1 s1", "strands=3 s1 s2' s1"] {
            let xi: BraidWord = text.parse().unwrap();
            let m = tangle_eval(&closure_word(&xi), &inp).unwrap();
            assert_eq!((m.rows(), m.cols()), (1, 1));
            assert_eq!(m.get(0, 0), &turaev(&inp, &xi, Limits::default()).unwrap());
        }
    }
}
