//! Finite-dimensional graded commutative algebras with a square-zero degree
//! one operator, their derived brackets, and the string bracket built from
//! Gysin data.
//!
//! Elements are dense coordinate vectors over the algebra's basis. Basis
//! elements are homogeneous; all sign rules are applied per basis element and
//! extended bilinearly.

mod gysin;
pub mod instances;
mod json;

pub use gysin::{GysinData, GysinError};
pub use json::{load_bv_json, load_gysin_json, LoadError, MAX_JSON_DIM};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{add_scaled, is_zero_vec, sign_pow, unit_vec, zero_vec, Matrix, Rational};
use crate::report::{format_vector, IdentityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BvError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("product e{i}*e{j} has a term on e{k} of the wrong degree")]
    ProductDegree { i: usize, j: usize, k: usize },
    #[error("product is not graded commutative on (e{0}, e{1})")]
    NotCommutative(usize, usize),
    #[error("product is not associative on (e{0}, e{1}, e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("operator does not raise degree by one: D(e{column}) has a term on e{row}")]
    OperatorDegree { column: usize, row: usize },
    #[error("operator does not square to zero")]
    NotSquareZero,
    #[error("operator matrix has shape {rows}x{cols}, expected {dim}x{dim}")]
    OperatorShape { rows: usize, cols: usize, dim: usize },
}

pub type Element = Vec<Rational>;

/// Sparse structure constants: `e_i * e_j = sum_k c_k e_k`.
type Product = Vec<Vec<Vec<(usize, Rational)>>>;

/// A graded commutative associative algebra with a degree `+1` operator `D`,
/// `D^2 = 0`. It need not be unital, and `D` need not satisfy the seven-term
/// identity; [`check_bv_identity`] decides that.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBVData {
    degrees: Vec<i64>,
    product: Product,
    d: Matrix,
}

impl GradedBVData {
    /// Builds and validates an instance from product triples `(i, j, k, c)`
    /// meaning `e_i * e_j` has coefficient `c` on `e_k`. Repeated triples add.
    pub fn new(degrees: Vec<i64>, product: &[(usize, usize, usize, Rational)], d: Matrix) -> Result<Self, BvError> {
        let dim = degrees.len();
        if d.rows() != dim || d.cols() != dim {
            return Err(BvError::OperatorShape { rows: d.rows(), cols: d.cols(), dim });
        }
        let mut dense = vec![vec![zero_vec(dim); dim]; dim];
        for (i, j, k, c) in product {
            for &index in [i, j, k] {
                if index >= dim {
                    return Err(BvError::IndexOutOfRange { index, dim });
                }
            }
            dense[*i][*j][*k] += c;
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        let data = GradedBVData { degrees, product: table, d };
        data.validate()?;
        Ok(data)
    }

    /// Checks the algebra axioms and `D^2 = 0`.
    pub fn validate(&self) -> Result<(), BvError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.product[i][j] {
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return Err(BvError::ProductDegree { i, j, k: *k });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let ab = self.mul_basis(i, j);
                let mut ba = self.mul_basis(j, i);
                let s = sign_pow(self.degrees[i] * self.degrees[j]);
                ba.iter_mut().for_each(|x| *x *= &s);
                if ab != ba {
                    return Err(BvError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let left = self.mul(&ij, &unit_vec(n, k));
                    let right = self.mul(&unit_vec(n, i), &self.mul_basis(j, k));
                    if left != right {
                        return Err(BvError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for (row, column, _) in self.d.entries() {
            if self.degrees[row] != self.degrees[column] + 1 {
                return Err(BvError::OperatorDegree { column, row });
            }
        }
        if !(&self.d * &self.d).is_zero() {
            return Err(BvError::NotSquareZero);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn operator(&self) -> &Matrix {
        &self.d
    }

    /// Product triples `(i, j, k, c)` with `c != 0`.
    pub fn product_triples(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, row) in self.product.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                for (k, c) in terms {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Same algebra with a different operator, validated.
    pub fn with_operator(&self, d: Matrix) -> Result<Self, BvError> {
        let out = GradedBVData { degrees: self.degrees.clone(), product: self.product.clone(), d };
        if out.d.rows() != self.dim() || out.d.cols() != self.dim() {
            return Err(BvError::OperatorShape { rows: out.d.rows(), cols: out.d.cols(), dim: self.dim() });
        }
        for (row, column, _) in out.d.entries() {
            if out.degrees[row] != out.degrees[column] + 1 {
                return Err(BvError::OperatorDegree { column, row });
            }
        }
        if !(&out.d * &out.d).is_zero() {
            return Err(BvError::NotSquareZero);
        }
        Ok(out)
    }

    pub fn basis(&self, i: usize) -> Element {
        unit_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        zero_vec(self.dim())
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for (k, c) in &self.product[i][j] {
            out[*k] += c;
        }
        out
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Element {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.product[i][j] {
                    out[k.to_owned()] += &xy * c;
                }
            }
        }
        out
    }

    pub fn apply_d(&self, a: &[Rational]) -> Element {
        self.d.apply(a)
    }

    /// Degree of a nonzero homogeneous element, `None` for zero or mixed.
    pub fn degree_of(&self, a: &[Rational]) -> Option<i64> {
        let mut degs = a.iter().zip(&self.degrees).filter(|(x, _)| !x.is_zero()).map(|(_, d)| *d);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Splits an element into homogeneous components.
    pub fn components(&self, a: &[Rational]) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            out.entry(self.degrees[i]).or_insert_with(|| self.zero())[i] = x.clone();
        }
        out
    }

    /// `(-1)^{|a|} D(ab) - (-1)^{|a|} D(a) b - a D(b)` for homogeneous `a`
    /// of degree `deg_a`.
    fn bracket_homogeneous(&self, a: &[Rational], deg_a: i64, b: &[Rational]) -> Element {
        let s = sign_pow(deg_a);
        let mut out = self.apply_d(&self.mul(a, b));
        out.iter_mut().for_each(|x| *x *= &s);
        add_scaled(&mut out, &-s, &self.mul(&self.apply_d(a), b));
        add_scaled(&mut out, &-Rational::one(), &self.mul(a, &self.apply_d(b)));
        out
    }

    /// The derived bracket `{a;b}`, extended bilinearly to inhomogeneous `a`.
    pub fn derived_bracket(&self, a: &[Rational], b: &[Rational]) -> Element {
        let mut out = self.zero();
        for (deg, part) in self.components(a) {
            add_scaled(&mut out, &Rational::one(), &self.bracket_homogeneous(&part, deg, b));
        }
        out
    }

    fn name(i: usize) -> String {
        format!("e{i}")
    }

    fn fmt(&self, v: &[Rational]) -> String {
        format_vector(v, &Self::name)
    }
}

/// Evaluates the seven-term second-order identity on every basis triple.
pub fn check_bv_identity(a: &GradedBVData) -> IdentityReport {
    let mut report = IdentityReport::new("second-order identity");
    let n = a.dim();
    let deg = a.degrees();
    let one = Rational::one();
    for i in 0..n {
        for j in 0..n {
            let ab = a.mul_basis(i, j);
            let d_ab = a.apply_d(&ab);
            let da = a.apply_d(&a.basis(i));
            let db = a.apply_d(&a.basis(j));
            for k in 0..n {
                let (ea, eb, ec) = (a.basis(i), a.basis(j), a.basis(k));
                let bc = a.mul_basis(j, k);
                let ac = a.mul_basis(i, k);
                let mut r = a.apply_d(&a.mul(&ab, &ec));
                add_scaled(&mut r, &-one.clone(), &a.mul(&d_ab, &ec));
                add_scaled(&mut r, &-sign_pow(deg[i]), &a.mul(&ea, &a.apply_d(&bc)));
                add_scaled(&mut r, &-sign_pow((deg[i] + 1) * deg[j]), &a.mul(&eb, &a.apply_d(&ac)));
                add_scaled(&mut r, &one, &a.mul(&a.mul(&da, &eb), &ec));
                add_scaled(&mut r, &sign_pow(deg[i]), &a.mul(&a.mul(&ea, &db), &ec));
                add_scaled(&mut r, &sign_pow(deg[i] + deg[j]), &a.mul(&ab, &a.apply_d(&ec)));
                let ok = is_zero_vec(&r);
                report.record(ok, || format!("(e{i}, e{j}, e{k})"), || a.fmt(&r));
            }
        }
    }
    report
}

/// Checks that the derived bracket is a derivation in its second argument.
pub fn check_leibniz(a: &GradedBVData) -> IdentityReport {
    let mut report = IdentityReport::new("derivation rule");
    let n = a.dim();
    let deg = a.degrees();
    for i in 0..n {
        let ea = a.basis(i);
        for j in 0..n {
            let eb = a.basis(j);
            let ab = a.derived_bracket(&ea, &eb);
            for k in 0..n {
                let ec = a.basis(k);
                let mut r = a.derived_bracket(&ea, &a.mul_basis(j, k));
                add_scaled(&mut r, &-Rational::one(), &a.mul(&ab, &ec));
                let ac = a.derived_bracket(&ea, &ec);
                add_scaled(&mut r, &-sign_pow(deg[j] * (deg[i] + 1)), &a.mul(&eb, &ac));
                let ok = is_zero_vec(&r);
                report.record(ok, || format!("(e{i}, e{j}, e{k})"), || a.fmt(&r));
            }
        }
    }
    report
}

/// `{a;b} + (-1)^{(|a|+1)(|b|+1)} {b;a} = 0` on basis pairs.
pub fn check_antisymmetry(a: &GradedBVData) -> IdentityReport {
    let mut report = IdentityReport::new("bracket antisymmetry");
    let n = a.dim();
    let deg = a.degrees();
    for i in 0..n {
        for j in 0..n {
            let mut r = a.derived_bracket(&a.basis(i), &a.basis(j));
            let ba = a.derived_bracket(&a.basis(j), &a.basis(i));
            add_scaled(&mut r, &sign_pow((deg[i] + 1) * (deg[j] + 1)), &ba);
            let ok = is_zero_vec(&r);
            report.record(ok, || format!("(e{i}, e{j})"), || a.fmt(&r));
        }
    }
    report
}

/// Graded Jacobi identity for the derived bracket in the shifted grading
/// `|x| + 1`: `sum_cyclic (-1)^{(|a|+1)(|c|+1)} {a;{b;c}} = 0`.
pub fn check_jacobi(a: &GradedBVData) -> IdentityReport {
    let mut report = IdentityReport::new("bracket Jacobi");
    let n = a.dim();
    let deg = a.degrees();
    let table: Vec<Vec<Element>> =
        (0..n).map(|i| (0..n).map(|j| a.derived_bracket(&a.basis(i), &a.basis(j))).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r = a.zero();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = &table[y][z];
                    let outer = a.derived_bracket(&a.basis(x), inner);
                    add_scaled(&mut r, &sign_pow((deg[x] + 1) * (deg[z] + 1)), &outer);
                }
                let ok = is_zero_vec(&r);
                report.record(ok, || format!("(e{i}, e{j}, e{k})"), || a.fmt(&r));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    /// Exterior algebra on one odd generator x with D(x) = 1. Since D raises
    /// degree by one, x sits in degree -1: basis (1, x) in degrees (0, -1).
    fn exterior_one() -> GradedBVData {
        let mut d = Matrix::zeros(2, 2);
        d[(0, 1)] = q(1);
        GradedBVData::new(vec![0, -1], &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))], d).unwrap()
    }

    #[test]
    fn zero_operator_gives_zero_bracket_and_passes() {
        let a = exterior_one().with_operator(Matrix::zeros(2, 2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(is_zero_vec(&a.derived_bracket(&a.basis(i), &a.basis(j))));
            }
        }
        assert!(check_bv_identity(&a).passed());
        assert!(check_leibniz(&a).passed());
    }

    #[test]
    fn exterior_generator_self_bracket() {
        let a = exterior_one();
        let x = a.basis(1);
        // {x;x} = -D(x*x) + D(x)*x - x*D(x) = 0 + x - x.
        assert!(is_zero_vec(&a.derived_bracket(&x, &x)));
        assert!(check_bv_identity(&a).passed());
        assert!(check_leibniz(&a).passed());
        assert!(check_antisymmetry(&a).passed());
        assert!(check_jacobi(&a).passed());
    }

    #[test]
    fn validation_errors() {
        let bad_comm = GradedBVData::new(vec![1, 2], &[(0, 0, 1, q(1))], Matrix::zeros(2, 2));
        assert!(matches!(bad_comm, Err(BvError::NotCommutative(0, 0))));
        let bad_deg = GradedBVData::new(vec![0, 1], &[(0, 0, 1, q(1))], Matrix::zeros(2, 2));
        assert!(matches!(bad_deg, Err(BvError::ProductDegree { .. })));
        let mut d = Matrix::zeros(2, 2);
        d[(0, 1)] = q(1);
        assert!(matches!(GradedBVData::new(vec![0, 0], &[], d), Err(BvError::OperatorDegree { .. })));
        let mut d = Matrix::zeros(3, 3);
        d[(1, 0)] = q(1);
        d[(2, 1)] = q(1);
        assert!(matches!(GradedBVData::new(vec![0, 1, 2], &[], d), Err(BvError::NotSquareZero)));
        assert!(matches!(
            GradedBVData::new(vec![0], &[(0, 0, 3, q(1))], Matrix::zeros(1, 1)),
            Err(BvError::IndexOutOfRange { index: 3, dim: 1 })
        ));
        // Truncated polynomial with a wrong structure constant is not associative.
        let tri = [(0, 0, 1, q(1)), (0, 1, 2, q(1)), (1, 0, 2, q(2))];
        assert!(GradedBVData::new(vec![0, 0, 0], &tri, Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn degree_and_components() {
        let a = exterior_one();
        let mut v = a.basis(0);
        assert_eq!(a.degree_of(&v), Some(0));
        v[1] = q(3);
        assert_eq!(a.degree_of(&v), None);
        assert_eq!(a.components(&v).len(), 2);
        assert_eq!(a.degree_of(&a.zero()), None);
    }
}
