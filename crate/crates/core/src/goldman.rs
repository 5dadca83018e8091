//! Goldman bracket of free loops on a disk with `r` orbifold points, computed
//! by cutting and inserting expanded words.
//!
//! Conventions used throughout:
//!
//! * Orbifold point `x_g` sits at angle `2*pi*g/r` on the unit circle.
//! * A word is read along the loop; the gap after position `p` of the
//!   expanded word joins the occurrence `before = w[p]` to `after = w[p+1]`
//!   (cyclically). The red chord is oriented from `x_before` to `x_after`.
//! * The blue chord is oriented the same way; a blue gap with equal labels is
//!   a degenerate interval and takes the anticlockwise tangent at its point.
//! * A pair contributes the sign of `det(red direction, blue direction)`.
//!
//! When the two chords share exactly one endpoint `p`, let `u` be the other
//! red endpoint and `v` the other blue endpoint, and say red lies below blue
//! when `u` is reached before `v` walking anticlockwise from `p`. If `p` is
//! where the blue chord starts the pair counts only when red lies above;
//! if `p` is where blue ends it counts only when red lies below.

use std::f64::consts::PI;

use thiserror::Error;

use crate::cyclic_words::{CyclicWord, OrbifoldSignature, WordError};
use crate::loop_module::LoopCombination;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldmanError {
    #[error("the two-point algorithm needs exactly 2 orbifold points, got {0}")]
    NotTwoPoints(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Red,
    Blue,
}

/// A gap of an expanded word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub owner: Owner,
    /// Index `p` of the occurrence preceding the gap.
    pub position: usize,
    pub before: usize,
    pub after: usize,
}

impl Interval {
    /// The endpoint labels in the circle's anticlockwise order. The boundary
    /// of the presenting circle is traversed against the reading direction,
    /// so this is `(after, before)`.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.after, self.before)
    }

    pub fn is_degenerate(&self) -> bool {
        self.before == self.after
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub red: Interval,
    pub blue: Interval,
    pub sign: i8,
}

/// All gaps of an expanded cyclic word.
pub fn intervals(expanded: &[usize], owner: Owner) -> Vec<Interval> {
    let n = expanded.len();
    (0..n)
        .map(|p| Interval { owner, position: p, before: expanded[p], after: expanded[(p + 1) % n] })
        .collect()
}

/// Placement of the orbifold points at the `r`-th roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordGeometry {
    r: usize,
}

impl ChordGeometry {
    pub fn new(r: usize) -> Self {
        assert!(r >= 1, "at least one orbifold point");
        ChordGeometry { r }
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn point(&self, g: usize) -> (f64, f64) {
        let t = 2.0 * PI * g as f64 / self.r as f64;
        (t.cos(), t.sin())
    }

    pub fn point_coordinates(&self) -> Vec<(f64, f64)> {
        (1..=self.r).map(|g| self.point(g)).collect()
    }

    /// Sign of `sin(pi*m/r)`.
    fn s(&self, m: i64) -> i8 {
        let r = self.r as i64;
        let m = m.rem_euclid(2 * r);
        if m == 0 || m == r {
            0
        } else if m < r {
            1
        } else {
            -1
        }
    }

    /// Exact sign of `det(x_j - x_i, x_l - x_k)`, or of `det(x_j - x_i, t_k)`
    /// with `t_k` the anticlockwise tangent at `x_k` when `k == l`.
    pub fn orientation(&self, i: usize, j: usize, k: usize, l: usize) -> i8 {
        let (i, j, k, l) = (i as i64, j as i64, k as i64, l as i64);
        if k == l {
            self.s(j - i) * self.s(2 * k - i - j)
        } else {
            self.s(j - i) * self.s(l - k) * self.s(k + l - i - j)
        }
    }

    /// Floating-point evaluation of the same determinant.
    pub fn orientation_f64(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let (xi, xj, xk) = (self.point(i), self.point(j), self.point(k));
        let red = (xj.0 - xi.0, xj.1 - xi.1);
        let blue = if k == l {
            (-xk.1, xk.0)
        } else {
            let xl = self.point(l);
            (xl.0 - xk.0, xl.1 - xk.1)
        };
        red.0 * blue.1 - red.1 * blue.0
    }

    /// `(x - from) mod r`, the anticlockwise step count.
    fn steps(&self, from: usize, x: usize) -> usize {
        (x + self.r - from % self.r) % self.r
    }

    /// Whether chords `[i,j]` and `[k,l]` with four distinct endpoints cross.
    pub fn chords_interleave(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        let span = self.steps(i, j);
        let inside = |x: usize| {
            let d = self.steps(i, x);
            0 < d && d < span
        };
        inside(k) != inside(l)
    }

    /// Sign of the pair (red gap `i -> j`, blue gap `k -> l`), or `None` if it
    /// is not admissible.
    pub fn admissible(&self, i: usize, j: usize, k: usize, l: usize) -> Option<i8> {
        if i == j {
            return None;
        }
        if k == l {
            return (k == i || k == j).then(|| self.orientation(i, j, k, l));
        }
        if (i == k && j == l) || (i == l && j == k) {
            return None;
        }
        let sign = self.orientation(i, j, k, l);
        let shared = if i == k || i == l {
            Some(i)
        } else if j == k || j == l {
            Some(j)
        } else {
            None
        };
        let ok = match shared {
            None => self.chords_interleave(i, j, k, l),
            Some(p) => {
                let u = if p == i { j } else { i };
                let v = if p == k { l } else { k };
                let red_below = self.steps(p, u) < self.steps(p, v);
                if p == k {
                    !red_below
                } else {
                    red_below
                }
            }
        };
        ok.then_some(sign)
    }
}

/// Admissible pairs for a disk with two orbifold points, using only the
/// labels of the gaps.
///
/// A red gap needs different labels and a blue gap equal labels. The sign is
/// `+1` exactly when the blue label is the red gap's `after` letter, i.e. the
/// red interval is `ab` (circle order) against blue `aa`, or `ba` against `bb`.
pub fn admissible_pairs_two_points(
    alpha: &CyclicWord,
    beta: &CyclicWord,
    sig: &OrbifoldSignature,
) -> Result<Vec<AdmissiblePair>, GoldmanError> {
    if sig.rank() != 2 {
        return Err(GoldmanError::NotTwoPoints(sig.rank()));
    }
    alpha.validate(sig)?;
    beta.validate(sig)?;
    let reds = intervals(&alpha.expand(), Owner::Red);
    let blues = intervals(&beta.expand(), Owner::Blue);
    let mut out = Vec::new();
    for red in reds.iter().filter(|iv| !iv.is_degenerate()) {
        for blue in blues.iter().filter(|iv| iv.is_degenerate()) {
            let sign = if blue.before == red.after { 1 } else { -1 };
            out.push(AdmissiblePair { red: *red, blue: *blue, sign });
        }
    }
    Ok(out)
}

/// Admissible pairs for any number of orbifold points, decided by the chord
/// geometry of [`ChordGeometry`].
pub fn admissible_pairs_general(
    alpha: &CyclicWord,
    beta: &CyclicWord,
    sig: &OrbifoldSignature,
) -> Result<Vec<AdmissiblePair>, GoldmanError> {
    alpha.validate(sig)?;
    beta.validate(sig)?;
    let geom = ChordGeometry::new(sig.rank());
    let reds = intervals(&alpha.expand(), Owner::Red);
    let blues = intervals(&beta.expand(), Owner::Blue);
    let mut out = Vec::new();
    for red in &reds {
        for blue in &blues {
            if let Some(sign) = geom.admissible(red.before, red.after, blue.before, blue.after) {
                out.push(AdmissiblePair { red: *red, blue: *blue, sign });
            }
        }
    }
    Ok(out)
}

/// Cuts `alpha` after occurrence `red.position` and `beta` after
/// `blue.position`, then joins the two opened words, each read from its cut
/// onward.
pub fn cut_and_insert(
    alpha: &[usize],
    red: &Interval,
    beta: &[usize],
    blue: &Interval,
    sig: &OrbifoldSignature,
) -> Result<CyclicWord, WordError> {
    let mut joined = Vec::with_capacity(alpha.len() + beta.len());
    if !alpha.is_empty() {
        joined.extend_from_slice(&alpha[red.position + 1..]);
        joined.extend_from_slice(&alpha[..=red.position]);
    }
    if !beta.is_empty() {
        joined.extend_from_slice(&beta[blue.position + 1..]);
        joined.extend_from_slice(&beta[..=blue.position]);
    }
    CyclicWord::from_generators(&joined, sig)
}

fn sum_pairs(
    alpha: &CyclicWord,
    beta: &CyclicWord,
    pairs: &[AdmissiblePair],
    sig: &OrbifoldSignature,
) -> Result<LoopCombination<i64>, GoldmanError> {
    let (ea, eb) = (alpha.expand(), beta.expand());
    let mut out = LoopCombination::zero(sig.clone());
    for pair in pairs {
        let w = cut_and_insert(&ea, &pair.red, &eb, &pair.blue, sig)?;
        out.add_term_unchecked(w, pair.sign as i64);
    }
    Ok(out)
}

/// The Goldman bracket `{alpha, beta}`.
pub fn goldman_bracket(
    alpha: &CyclicWord,
    beta: &CyclicWord,
    sig: &OrbifoldSignature,
) -> Result<LoopCombination<i64>, GoldmanError> {
    let pairs = admissible_pairs_general(alpha, beta, sig)?;
    sum_pairs(alpha, beta, &pairs, sig)
}

/// The bracket assembled from [`admissible_pairs_two_points`].
pub fn goldman_bracket_two_points(
    alpha: &CyclicWord,
    beta: &CyclicWord,
    sig: &OrbifoldSignature,
) -> Result<LoopCombination<i64>, GoldmanError> {
    let pairs = admissible_pairs_two_points(alpha, beta, sig)?;
    sum_pairs(alpha, beta, &pairs, sig)
}

/// Bilinear extension of [`goldman_bracket`].
pub fn bracket_combinations(
    x: &LoopCombination<i64>,
    y: &LoopCombination<i64>,
) -> Result<LoopCombination<i64>, GoldmanError> {
    let sig = x.signature().clone();
    if y.signature() != &sig {
        return Err(WordError::InvalidSignature(format!("cannot bracket over {} and {}", sig, y.signature())).into());
    }
    let mut out = LoopCombination::zero(sig.clone());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let br = goldman_bracket(a, b, &sig)?;
            for (w, c) in br.terms() {
                out.add_term_unchecked(w.clone(), ca * cb * c);
            }
        }
    }
    Ok(out)
}

/// `{a,{b,c}} + {b,{c,a}} + {c,{a,b}}`.
pub fn jacobiator(
    a: &CyclicWord,
    b: &CyclicWord,
    c: &CyclicWord,
    sig: &OrbifoldSignature,
) -> Result<LoopCombination<i64>, GoldmanError> {
    let mono = |w: &CyclicWord| LoopCombination::monomial(sig.clone(), w.clone(), 1i64).expect("validated word");
    let mut out = LoopCombination::zero(sig.clone());
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        let inner = goldman_bracket(y, z, sig)?;
        let outer = bracket_combinations(&mono(x), &inner)?;
        out.add_scaled(&1, &outer).expect("same signature");
    }
    Ok(out)
}
