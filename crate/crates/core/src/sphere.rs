//! The string Lie algebra of the quotient of `S^{2n+1} x S^{2n+1}` by its
//! finite diagonal group, given by structure constants on the basis
//! `e_{i,j}` (`(i,j) != (0,0)`) and `f_{i,j}`.
//!
//! Brackets:
//!
//! * `[e_{i,j}, e_{k,l}] = C (jk - il) e_{i+k-1, j+l-1}`
//! * `[f_{i,j}, e_{k,l}] = C (jk - il) f_{i+k-1, j+l-1}`
//! * `[e, f] = -[f, e]` and `[f, f] = 0`
//!
//! with `C = binom(i+k, i) binom(j+l, j) / ((i+k)(j+l))`. The coefficient is
//! zero whenever `jk = il`, which covers every vanishing denominator. A
//! bracket landing on `e_{0,0}` is zero: that symbol is not a basis element
//! and is central for these formulas.
//!
//! `|e_{i,j}| = 2n(i+j)`, `|f_{i,j}| = 2n(i+j+2)+1`, and the bracket has
//! degree `-4n`, so the Lie grading is `|x| - 4n`, with `e` even and `f` odd.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{sign_pow, Rational};
use crate::report::IdentityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
    #[error("e_{{0,0}} is not a basis element")]
    NoUnitE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereBasisElement {
    pub family: Family,
    pub i: u32,
    pub j: u32,
}

impl SphereBasisElement {
    pub fn e(i: u32, j: u32) -> Result<Self, SphereError> {
        if i == 0 && j == 0 {
            return Err(SphereError::NoUnitE);
        }
        Ok(SphereBasisElement { family: Family::E, i, j })
    }

    pub fn f(i: u32, j: u32) -> Self {
        SphereBasisElement { family: Family::F, i, j }
    }

    /// Homological degree for the sphere parameter `n`.
    pub fn degree(&self, n: u32) -> i64 {
        let n = n as i64;
        let s = (self.i + self.j) as i64;
        match self.family {
            Family::E => 2 * n * s,
            Family::F => 2 * n * (s + 2) + 1,
        }
    }

    /// Degree in the Lie grading, `|x| - 4n`.
    pub fn lie_degree(&self, n: u32) -> i64 {
        self.degree(n) - 4 * n as i64
    }
}

impl fmt::Display for SphereBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::E => "e",
            Family::F => "f",
        };
        write!(f, "{name}_{{{},{}}}", self.i, self.j)
    }
}

/// A finite combination of basis elements.
pub type SphereElement = BTreeMap<SphereBasisElement, Rational>;

fn e_coefficient(i: u32, j: u32, k: u32, l: u32) -> Rational {
    let num = j as i64 * k as i64 - i as i64 * l as i64;
    if num == 0 {
        return Rational::zero();
    }
    let b = binomial(BigInt::from(i + k), BigInt::from(i)) * binomial(BigInt::from(j + l), BigInt::from(j));
    Rational::new(b * BigInt::from(num), BigInt::from((i + k) as i64 * (j + l) as i64))
}

/// `[x, y]` as a multiple of one basis element, or `None` when it vanishes.
pub fn sphere_bracket(x: &SphereBasisElement, y: &SphereBasisElement) -> Option<(Rational, SphereBasisElement)> {
    match (x.family, y.family) {
        (Family::F, Family::F) => None,
        (Family::E, Family::F) => sphere_bracket(y, x).map(|(c, t)| (-c, t)),
        (fx, Family::E) => {
            let c = e_coefficient(x.i, x.j, y.i, y.j);
            if c.is_zero() {
                return None;
            }
            let (ti, tj) = (x.i + y.i - 1, x.j + y.j - 1);
            if fx == Family::E && ti == 0 && tj == 0 {
                return None;
            }
            Some((c, SphereBasisElement { family: fx, i: ti, j: tj }))
        }
    }
}

/// Bilinear extension of [`sphere_bracket`].
pub fn bracket_elements(x: &SphereElement, y: &SphereElement) -> SphereElement {
    let mut out = SphereElement::new();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some((c, t)) = sphere_bracket(a, b) {
                let entry = out.entry(t).or_insert_with(Rational::zero);
                *entry += c * ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn single(x: SphereBasisElement) -> SphereElement {
    SphereElement::from([(x, Rational::one())])
}

/// All basis elements with both indices at most `bound`.
pub fn basis_up_to(bound: u32) -> Vec<SphereBasisElement> {
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            if let Ok(e) = SphereBasisElement::e(i, j) {
                out.push(e);
            }
            out.push(SphereBasisElement::f(i, j));
        }
    }
    out
}

fn format_element(x: &SphereElement) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter().map(|(b, c)| format!("({c})*{b}")).collect::<Vec<_>>().join(" + ")
}

/// Graded Jacobi identity
/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0`
/// in the Lie grading, on all basis triples with indices at most `bound`.
pub fn verify_sphere_jacobi(bound: u32, n: u32) -> IdentityReport {
    let mut report = IdentityReport::new(format!("sphere Jacobi (n = {n}, bound {bound})"));
    let basis = basis_up_to(bound);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let mut total = SphereElement::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = match sphere_bracket(b, c) {
                        Some((k, t)) => SphereElement::from([(t, k)]),
                        None => continue,
                    };
                    let sign = sign_pow(a.lie_degree(n) * c.lie_degree(n));
                    for (t, k) in bracket_elements(&single(*a), &inner) {
                        *total.entry(t).or_insert_with(Rational::zero) += k * &sign;
                    }
                }
                total.retain(|_, c| !c.is_zero());
                let ok = total.is_empty();
                report.record(ok, || format!("({x}, {y}, {z})"), || format_element(&total));
            }
        }
    }
    report
}

/// `|[x,y]| = |x| + |y| - (4n+2) + 2` for every nonzero bracket of basis
/// elements with indices at most `bound`.
pub fn verify_grading(bound: u32, n: u32) -> IdentityReport {
    let mut report = IdentityReport::new(format!("sphere grading (n = {n}, bound {bound})"));
    let basis = basis_up_to(bound);
    let dim = 4 * n as i64 + 2;
    for x in &basis {
        for y in &basis {
            if let Some((_, t)) = sphere_bracket(x, y) {
                let expected = x.degree(n) + y.degree(n) - dim + 2;
                let ok = t.degree(n) == expected;
                report.record(ok, || format!("[{x}, {y}] = {t}"), || format!("degree {} vs {expected}", t.degree(n)));
            }
        }
    }
    report
}

/// `ad(x)^times (y)`.
pub fn ad_power(x: &SphereBasisElement, y: &SphereBasisElement, times: u32) -> SphereElement {
    let mut cur = single(*y);
    for _ in 0..times {
        cur = bracket_elements(&single(*x), &cur);
    }
    cur
}
