//! Normalized Hochschild chains of a small unital algebra: the shuffle
//! product, the Hochschild boundary `b`, Connes' operator `B`, and the
//! total complex `TC` built from them.
//!
//! A basis tensor `a_0 (x) a_1 (x) ... (x) a_p` is a vector of basis indices
//! of length `p + 1` with no unit among `a_1, ..., a_p`. Its Hochschild
//! degree is `p`. Every operation expands products multilinearly and drops
//! tensors that become degenerate.

mod algebra;
mod tc;

pub use algebra::{AlgebraError, SmallAlgebra};
pub use tc::{connecting_map_agrees, TcComplex, TcElement};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{sign_pow, Rational};
use crate::report::IdentityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("result would contain a tensor of length {length}, above the truncation {max}")]
    Truncation { length: usize, max: usize },
    #[error("tensor {0:?} is not a normalized basis tensor")]
    NotNormalized(Vec<usize>),
}

pub type Tensor = Vec<usize>;

/// A finite combination of normalized basis tensors, nonzero coefficients only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainElement {
    terms: BTreeMap<Tensor, Rational>,
}

impl ChainElement {
    pub fn zero() -> Self {
        ChainElement::default()
    }

    pub fn tensor(t: Tensor) -> Self {
        Self::monomial(t, Rational::one())
    }

    pub fn monomial(t: Tensor, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(t, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tensor, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &[usize]) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, t: Tensor, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &ChainElement) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn add(&self, other: &ChainElement) -> ChainElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &ChainElement) -> ChainElement {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> ChainElement {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Longest tensor length, 0 for the zero chain.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Hochschild degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(|t| t.len() - 1);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Component of Hochschild degree `p`.
    pub fn part(&self, p: usize) -> ChainElement {
        ChainElement {
            terms: self.terms.iter().filter(|(t, _)| t.len() == p + 1).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|t| t.len() - 1).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let t: Vec<String> = t.iter().map(|i| format!("a{i}")).collect();
                format!("({c})*[{}]", t.join("|"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The normalized Hochschild complex of `algebra`, truncated at tensor
/// length `max_len`: any operation whose result would be longer fails.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    algebra: SmallAlgebra,
    max_len: usize,
}

impl HochschildComplex {
    pub fn new(algebra: SmallAlgebra, max_len: usize) -> Self {
        HochschildComplex { algebra, max_len }
    }

    pub fn algebra(&self) -> &SmallAlgebra {
        &self.algebra
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// All normalized basis tensors of Hochschild degree `p`.
    pub fn basis(&self, p: usize) -> Vec<Tensor> {
        let n = self.algebra.dim();
        let unit = self.algebra.unit();
        let non_unit: Vec<usize> = (0..n).filter(|&i| i != unit).collect();
        let mut out: Vec<Tensor> = (0..n).map(|i| vec![i]).collect();
        for _ in 0..p {
            out = out
                .into_iter()
                .flat_map(|t| {
                    non_unit.iter().map(move |&a| {
                        let mut t = t.clone();
                        t.push(a);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn check_normalized(&self, x: &ChainElement) -> Result<(), ChainError> {
        for t in x.terms.keys() {
            if t.is_empty() || t.iter().any(|&a| a >= self.algebra.dim()) || t[1..].contains(&self.algebra.unit()) {
                return Err(ChainError::NotNormalized(t.clone()));
            }
        }
        Ok(())
    }

    fn check_len(&self, length: usize) -> Result<(), ChainError> {
        if length > self.max_len {
            Err(ChainError::Truncation { length, max: self.max_len })
        } else {
            Ok(())
        }
    }

    /// Adds `c * (left (x) prod (x) right)` where `prod` is a product
    /// expanded in the basis, sitting at position `left.len()`.
    fn push_product(&self, out: &mut ChainElement, c: &Rational, left: &[usize], prod: &[(usize, Rational)], right: &[usize]) {
        let unit = self.algebra.unit();
        for (k, x) in prod {
            if !left.is_empty() && *k == unit {
                continue;
            }
            let mut t = Vec::with_capacity(left.len() + 1 + right.len());
            t.extend_from_slice(left);
            t.push(*k);
            t.extend_from_slice(right);
            out.add_term(t, c * x);
        }
    }

    fn on_terms(
        &self,
        x: &ChainElement,
        f: impl Fn(&Tensor, &Rational, &mut ChainElement) -> Result<(), ChainError>,
    ) -> Result<ChainElement, ChainError> {
        self.check_normalized(x)?;
        let mut out = ChainElement::zero();
        for (t, c) in &x.terms {
            f(t, c, &mut out)?;
        }
        Ok(out)
    }

    /// `b(a_0 .. a_n) = sum_{i<n} (-1)^i (.. a_i a_{i+1} ..) + (-1)^n a_n a_0 (x) a_1 .. a_{n-1}`.
    pub fn hochschild_b(&self, x: &ChainElement) -> Result<ChainElement, ChainError> {
        self.on_terms(x, |t, c, out| {
            let n = t.len() - 1;
            if n == 0 {
                return Ok(());
            }
            for i in 0..n {
                let prod = self.algebra.mul_basis(t[i], t[i + 1]);
                self.push_product(out, &(sign_pow(i as i64) * c), &t[..i], &prod, &t[i + 2..]);
            }
            let prod = self.algebra.mul_basis(t[n], t[0]);
            self.push_product(out, &(sign_pow(n as i64) * c), &[], &prod, &t[1..n]);
            Ok(())
        })
    }

    /// `B(a_0 .. a_n) = sum_i (-1)^{ni} 1 (x) a_i .. a_n (x) a_0 .. a_{i-1}`.
    pub fn connes_b(&self, x: &ChainElement) -> Result<ChainElement, ChainError> {
        let unit = self.algebra.unit();
        self.on_terms(x, |t, c, out| {
            self.check_len(t.len() + 1)?;
            if t[0] == unit {
                return Ok(());
            }
            let n = t.len() - 1;
            for i in 0..=n {
                let mut rotated = Vec::with_capacity(t.len() + 1);
                rotated.push(unit);
                rotated.extend_from_slice(&t[i..]);
                rotated.extend_from_slice(&t[..i]);
                out.add_term(rotated, sign_pow((n * i) as i64) * c);
            }
            Ok(())
        })
    }

    /// Shuffle product `(a_0 b_0) (x) sum sgn(s) s(a_1..a_p, b_1..b_q)`.
    pub fn shuffle(&self, x: &ChainElement, y: &ChainElement) -> Result<ChainElement, ChainError> {
        self.check_normalized(x)?;
        self.check_normalized(y)?;
        let mut out = ChainElement::zero();
        for (s, cs) in &x.terms {
            for (t, ct) in &y.terms {
                let (p, q) = (s.len() - 1, t.len() - 1);
                self.check_len(p + q + 1)?;
                let head = self.algebra.mul_basis(s[0], t[0]);
                if head.is_empty() {
                    continue;
                }
                for (positions, sign) in shuffles(p, q) {
                    let mut tail = Vec::with_capacity(p + q);
                    let (mut ia, mut ib) = (1, 1);
                    for slot in 0..p + q {
                        if positions.contains(&slot) {
                            tail.push(s[ia]);
                            ia += 1;
                        } else {
                            tail.push(t[ib]);
                            ib += 1;
                        }
                    }
                    self.push_product(&mut out, &(q_sign(sign) * cs * ct), &[], &head, &tail);
                }
            }
        }
        Ok(out)
    }
}

fn q_sign(s: i64) -> Rational {
    sign_pow(if s > 0 { 0 } else { 1 })
}

/// `(p,q)`-shuffles as (slots of the first word, sign of the permutation).
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(start: usize, left: usize, total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..=total - left {
            cur.push(s);
            go(s + 1, left - 1, total, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    go(0, p, p + q, &mut Vec::new(), &mut sets);
    sets.into_iter()
        .map(|slots| {
            // Inversions: pairs (a, b) with b placed before a.
            let inv: usize = slots.iter().enumerate().map(|(k, &s)| s - k).sum();
            let sign = if inv.is_multiple_of(2) { 1 } else { -1 };
            (slots, sign)
        })
        .collect()
}

/// Degree parity helper for the sign rules, Hochschild degree `p`.
fn par(p: usize) -> i64 {
    p as i64
}

/// Checks every chain-level identity on all normalized basis tensors with
/// length at most `n` and reports each one separately.
///
/// Asserted identities: `b^2 = 0`, `B^2 = 0`, `bB + Bb = 0`, shuffle graded
/// commutativity and associativity, `B` a derivation of the shuffle product,
/// and the TC checks of [`TcComplex::verify`]. The second-order identity for
/// `(sh, b)` is not among them; see [`second_order_identity`].
pub fn verify_chain_identities(algebra: &SmallAlgebra, n: usize) -> Vec<IdentityReport> {
    let cx = HochschildComplex::new(algebra.clone(), n + 2);
    let mut reports = Vec::new();
    let all: Vec<Tensor> = (0..n).flat_map(|p| cx.basis(p)).collect();
    let el = |t: &Tensor| ChainElement::tensor(t.clone());
    let fmt_t = |t: &Tensor| format!("{:?}", t);

    let mut bb = IdentityReport::new(format!("{}: b^2 = 0", algebra.name()));
    let mut big = IdentityReport::new(format!("{}: B^2 = 0", algebra.name()));
    let mut anti = IdentityReport::new(format!("{}: bB + Bb = 0", algebra.name()));
    for t in &all {
        let x = el(t);
        let r = cx.hochschild_b(&cx.hochschild_b(&x).unwrap()).unwrap();
        bb.record(r.is_zero(), || fmt_t(t), || r.to_string());
        let r = cx.connes_b(&cx.connes_b(&x).unwrap()).unwrap();
        big.record(r.is_zero(), || fmt_t(t), || r.to_string());
        let r = cx
            .hochschild_b(&cx.connes_b(&x).unwrap())
            .unwrap()
            .add(&cx.connes_b(&cx.hochschild_b(&x).unwrap()).unwrap());
        anti.record(r.is_zero(), || fmt_t(t), || r.to_string());
    }
    reports.extend([bb, big, anti]);

    let mut comm = IdentityReport::new(format!("{}: shuffle graded commutativity", algebra.name()));
    let mut der = IdentityReport::new(format!("{}: B derivation of shuffle", algebra.name()));
    for s in &all {
        for t in &all {
            let (p, q) = (s.len() - 1, t.len() - 1);
            if p + q + 1 > n {
                continue;
            }
            let (x, y) = (el(s), el(t));
            let xy = cx.shuffle(&x, &y).unwrap();
            let yx = cx.shuffle(&y, &x).unwrap();
            let r = xy.sub(&yx.scale(&sign_pow(par(p) * par(q))));
            comm.record(r.is_zero(), || format!("({}, {})", fmt_t(s), fmt_t(t)), || r.to_string());

            let lhs = cx.connes_b(&xy).unwrap();
            let mut rhs = cx.shuffle(&cx.connes_b(&x).unwrap(), &y).unwrap();
            rhs.add_scaled(&sign_pow(par(p)), &cx.shuffle(&x, &cx.connes_b(&y).unwrap()).unwrap());
            let r = lhs.sub(&rhs);
            der.record(r.is_zero(), || format!("({}, {})", fmt_t(s), fmt_t(t)), || r.to_string());
        }
    }

    let mut assoc = IdentityReport::new(format!("{}: shuffle associativity", algebra.name()));
    for s in &all {
        for t in &all {
            for u in &all {
                let (p, q, r_) = (s.len() - 1, t.len() - 1, u.len() - 1);
                if p + q + r_ + 1 > n {
                    continue;
                }
                let (a, b, c) = (el(s), el(t), el(u));
                let sh = |x: &ChainElement, y: &ChainElement| cx.shuffle(x, y).unwrap();
                let ab = sh(&a, &b);
                let r = sh(&ab, &c).sub(&sh(&a, &sh(&b, &c)));
                assoc.record(r.is_zero(), || format!("({}, {}, {})", fmt_t(s), fmt_t(t), fmt_t(u)), || r.to_string());
            }
        }
    }
    reports.extend([comm, assoc, der]);
    reports.extend(TcComplex::new(algebra.clone(), n).verify());
    reports
}

/// The seven-term second-order identity for the shuffle product and `b`,
/// evaluated on all basis triples of total length at most `n`. The result is
/// informational: nothing here claims it must hold at chain level.
pub fn second_order_identity(algebra: &SmallAlgebra, n: usize) -> IdentityReport {
    let cx = HochschildComplex::new(algebra.clone(), n + 2);
    let all: Vec<Tensor> = (0..n).flat_map(|p| cx.basis(p)).collect();
    let one = Rational::one();
    let mut seven = IdentityReport::new(format!("{}: second-order identity for (sh, b)", algebra.name()));
    for s in &all {
        for t in &all {
            for u in &all {
                let (p, q) = (s.len() - 1, t.len() - 1);
                if p + q + u.len() > n {
                    continue;
                }
                let el = |t: &Tensor| ChainElement::tensor(t.clone());
                let (a, b, c) = (el(s), el(t), el(u));
                let sh = |x: &ChainElement, y: &ChainElement| cx.shuffle(x, y).unwrap();
                let d = |x: &ChainElement| cx.hochschild_b(x).unwrap();
                let ab = sh(&a, &b);
                let w = || format!("({s:?}, {t:?}, {u:?})");
                let mut res = d(&sh(&ab, &c));
                res.add_scaled(&-one.clone(), &sh(&d(&ab), &c));
                res.add_scaled(&-sign_pow(par(p)), &sh(&a, &d(&sh(&b, &c))));
                res.add_scaled(&-sign_pow((par(p) + 1) * par(q)), &sh(&b, &d(&sh(&a, &c))));
                res.add_scaled(&one, &sh(&sh(&d(&a), &b), &c));
                res.add_scaled(&sign_pow(par(p)), &sh(&sh(&a, &d(&b)), &c));
                res.add_scaled(&sign_pow(par(p) + par(q)), &sh(&ab, &d(&c)));
                seven.record(res.is_zero(), w, || res.to_string());
            }
        }
    }
    seven
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn dual() -> HochschildComplex {
        HochschildComplex::new(SmallAlgebra::dual_numbers(), 5)
    }

    #[test]
    fn b_on_short_tensors() {
        let cx = dual();
        // b(a0) = 0.
        assert!(cx.hochschild_b(&ChainElement::tensor(vec![1])).unwrap().is_zero());
        // b(x (x) x) = x^2 - x^2 = 0; b(1 (x) x) = x - x = 0.
        assert!(cx.hochschild_b(&ChainElement::tensor(vec![1, 1])).unwrap().is_zero());
        assert!(cx.hochschild_b(&ChainElement::tensor(vec![0, 1])).unwrap().is_zero());
        // b(x (x) x (x) x) = x^2 (x) x - x (x) x^2 + x^2 (x) x = 0 in dual numbers.
        // b(1 (x) x (x) x) = x (x) x - 1 (x) x^2 + x (x) x = 2 x (x) x.
        let r = cx.hochschild_b(&ChainElement::tensor(vec![0, 1, 1])).unwrap();
        assert_eq!(r, ChainElement::monomial(vec![1, 1], q(2)));
    }

    #[test]
    fn b_length_two_is_commutator() {
        // In a noncommutative algebra b(a0 (x) a1) = a0 a1 - a1 a0.
        let alg = SmallAlgebra::upper_triangular();
        let cx = HochschildComplex::new(alg.clone(), 4);
        for a0 in 0..alg.dim() {
            for a1 in (0..alg.dim()).filter(|&i| i != alg.unit()) {
                let got = cx.hochschild_b(&ChainElement::tensor(vec![a0, a1])).unwrap();
                let mut expected = ChainElement::zero();
                for (k, c) in alg.mul_basis(a0, a1) {
                    expected.add_term(vec![k], c);
                }
                for (k, c) in alg.mul_basis(a1, a0) {
                    expected.add_term(vec![k], -c);
                }
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn connes_on_length_one() {
        let cx = dual();
        assert_eq!(cx.connes_b(&ChainElement::tensor(vec![1])).unwrap(), ChainElement::tensor(vec![0, 1]));
        assert!(cx.connes_b(&ChainElement::tensor(vec![0])).unwrap().is_zero());
        let short = HochschildComplex::new(SmallAlgebra::dual_numbers(), 2);
        assert!(matches!(
            short.connes_b(&ChainElement::tensor(vec![1, 1])),
            Err(ChainError::Truncation { length: 3, max: 2 })
        ));
    }

    #[test]
    fn shuffle_unit_and_degree_one() {
        let cx = dual();
        let x = ChainElement::tensor(vec![0, 1]);
        let scalar = ChainElement::monomial(vec![0], q(3));
        assert_eq!(cx.shuffle(&x, &scalar).unwrap(), x.scale(&q(3)));
        // sh(1|x, 1|x) = x|x - x|x = 0, as expected for odd elements.
        assert!(cx.shuffle(&x, &x).unwrap().is_zero());
        let alg = SmallAlgebra::upper_triangular();
        let cx = HochschildComplex::new(alg, 4);
        let a = ChainElement::tensor(vec![0, 1]);
        let b = ChainElement::tensor(vec![0, 2]);
        let mut expected = ChainElement::tensor(vec![0, 1, 2]);
        expected.add_term(vec![0, 2, 1], q(-1));
        assert_eq!(cx.shuffle(&a, &b).unwrap(), expected);
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(2, 1);
        assert_eq!(s.len(), 3);
        assert!(s.contains(&(vec![0, 1], 1)));
        assert!(s.contains(&(vec![0, 2], -1)));
        assert!(s.contains(&(vec![1, 2], 1)));
        assert_eq!(shuffles(0, 3), vec![(vec![], 1)]);
    }

    #[test]
    fn rejects_degenerate_input() {
        let cx = dual();
        assert!(matches!(cx.hochschild_b(&ChainElement::tensor(vec![1, 0])), Err(ChainError::NotNormalized(_))));
        assert!(cx.connes_b(&ChainElement::tensor(vec![7])).is_err());
    }

    #[test]
    fn basis_sizes() {
        let cx = dual();
        assert_eq!(cx.basis(0).len(), 2);
        assert_eq!(cx.basis(3).len(), 2);
        let cx = HochschildComplex::new(SmallAlgebra::upper_triangular(), 4);
        assert_eq!(cx.basis(2).len(), 3 * 2 * 2);
    }

    #[test]
    fn ground_field_everything_passes() {
        for r in verify_chain_identities(&SmallAlgebra::ground_field(), 4) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn connes_operator_is_not_a_chain_level_derivation() {
        // B(x sh x) = 0, while B(x) sh x + (-1)^0 x sh B(x) = -2 x|x.
        let report = verify_chain_identities(&SmallAlgebra::dual_numbers(), 3)
            .into_iter()
            .find(|r| r.name.ends_with("B derivation of shuffle"))
            .unwrap();
        assert!(!report.passed());
        let failure = report.failure.unwrap();
        assert_eq!(failure.witness, "([1], [1])");
        assert_eq!(failure.residual, "(-2)*[a1|a1]");
    }

    #[test]
    fn second_order_identity_holds_for_commutative_algebras() {
        for alg in [SmallAlgebra::ground_field(), SmallAlgebra::dual_numbers(), SmallAlgebra::z2()] {
            let r = second_order_identity(&alg, 4);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn chain_element_arithmetic() {
        let mut x = ChainElement::tensor(vec![0, 1]);
        x.add_term(vec![0, 1], q(-1));
        assert!(x.is_zero());
        let y = ChainElement::tensor(vec![1]).add(&ChainElement::tensor(vec![0, 1, 1]));
        assert_eq!(y.degree(), None);
        assert_eq!(y.degrees(), vec![0, 2]);
        assert_eq!(y.part(2), ChainElement::tensor(vec![0, 1, 1]));
        assert_eq!(y.max_len(), 3);
    }
}
