use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("basis index {0} out of range")]
    Index(usize),
    #[error("basis element {0} is not a two-sided unit")]
    Unit(usize),
    #[error("product is not associative on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite-dimensional unital algebra over the rationals, given by its
/// multiplication table on a basis that contains the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallAlgebra {
    name: String,
    unit: usize,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl SmallAlgebra {
    /// `products` lists `(i, j, k, c)` meaning `e_i e_j` has coefficient `c`
    /// on `e_k`.
    pub fn from_table(
        name: impl Into<String>,
        dim: usize,
        unit: usize,
        products: &[(usize, usize, usize, Rational)],
    ) -> Result<Self, AlgebraError> {
        if unit >= dim {
            return Err(AlgebraError::Index(unit));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in products {
            for &x in [i, j, k] {
                if x >= dim {
                    return Err(AlgebraError::Index(x));
                }
            }
            let cell: &mut Vec<(usize, Rational)> = &mut table[*i][*j];
            match cell.iter_mut().find(|(idx, _)| idx == k) {
                Some((_, v)) => *v += c,
                None => cell.push((*k, c.clone())),
            }
        }
        for row in table.iter_mut() {
            for cell in row.iter_mut() {
                cell.retain(|(_, c)| !c.is_zero());
                cell.sort_by_key(|(k, _)| *k);
            }
        }
        let alg = SmallAlgebra { name: name.into(), unit, table };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            let e = vec![(i, q(1))];
            if self.mul_basis(self.unit, i) != e || self.mul_basis(i, self.unit) != e {
                return Err(AlgebraError::Unit(self.unit));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_vec(&self.mul_basis(i, j), &[(k, q(1))]);
                    let right = self.mul_vec(&[(i, q(1))], &self.mul_basis(j, k));
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_vec(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, ca) in x {
            for (b, cb) in y {
                for (k, c) in &self.table[*a][*b] {
                    out[*k] += c * ca * cb;
                }
            }
        }
        out
    }

    /// The rationals themselves.
    pub fn ground_field() -> Self {
        Self::from_table("ground field", 1, 0, &[(0, 0, 0, q(1))]).expect("valid table")
    }

    /// `Q[x]/(x^2)` with basis `1, x`.
    pub fn dual_numbers() -> Self {
        Self::from_table("dual numbers", 2, 0, &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))]).expect("valid table")
    }

    /// The group algebra `Q[Z/2]` with basis `1, g`.
    pub fn z2() -> Self {
        Self::from_table(
            "group algebra of Z/2",
            2,
            0,
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1)), (1, 1, 0, q(1))],
        )
        .expect("valid table")
    }

    /// Upper triangular 2x2 matrices with basis `1, E12, E22`; not commutative.
    pub fn upper_triangular() -> Self {
        let mut products = vec![(0, 0, 0, q(1))];
        for i in 1..3 {
            products.push((0, i, i, q(1)));
            products.push((i, 0, i, q(1)));
        }
        products.push((1, 2, 1, q(1)));
        products.push((2, 2, 2, q(1)));
        Self::from_table("upper triangular matrices", 3, 0, &products).expect("valid table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        self.table[i][j].clone()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }
}
