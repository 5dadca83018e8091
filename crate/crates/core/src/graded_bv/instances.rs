//! Small graded commutative algebras with operators, for property tests and
//! the acceptance sweep.
//!
//! [`FreeAlgebra`] is the free graded commutative algebra on a few
//! generators, truncated: odd-degree generators square to zero and an
//! even-degree generator `x` satisfies `x^k = 0` for its chosen `k`. Its
//! basis is the set of surviving monomials, ordered by exponent vector.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Element, GradedBVData};
use crate::linalg::{q, qq, zero_vec, Matrix, Rational};

#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    degrees: Vec<i64>,
    /// `x^nil = 0`; always 2 for odd generators.
    nil: Vec<u32>,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FreeAlgebra {
    /// Generators with given degrees; `truncation[g]` is used for even
    /// generators only and must be at least 2.
    pub fn new(degrees: &[i64], truncation: &[u32]) -> Self {
        assert_eq!(degrees.len(), truncation.len());
        let nil: Vec<u32> = degrees
            .iter()
            .zip(truncation)
            .map(|(d, t)| if d.rem_euclid(2) == 1 { 2 } else { (*t).max(2) })
            .collect();
        let mut monomials: Vec<Vec<u32>> = vec![vec![]];
        for &k in &nil {
            monomials = monomials
                .into_iter()
                .flat_map(|m| {
                    (0..k).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        FreeAlgebra { degrees: degrees.to_vec(), nil, monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn generator_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn generator_degree(&self, g: usize) -> i64 {
        self.degrees[g]
    }

    fn is_odd(&self, g: usize) -> bool {
        self.degrees[g].rem_euclid(2) == 1
    }

    pub fn monomial_degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.degrees).map(|(e, d)| *e as i64 * d).sum()
    }

    pub fn basis_degrees(&self) -> Vec<i64> {
        self.monomials.iter().map(|m| self.monomial_degree(m)).collect()
    }

    /// Basis index of the generator `g` as a monomial.
    pub fn generator_index(&self, g: usize) -> usize {
        let mut m = vec![0; self.generator_count()];
        m[g] = 1;
        self.index[&m]
    }

    pub fn unit_index(&self) -> usize {
        self.index[&vec![0; self.generator_count()]]
    }

    /// Product of two monomials as `(sign, index)`, or `None` if it vanishes.
    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(i64, usize)> {
        let mut out = Vec::with_capacity(a.len());
        for g in 0..a.len() {
            let e = a[g] + b[g];
            if e >= self.nil[g] {
                return None;
            }
            out.push(e);
        }
        let mut swaps = 0;
        for (h, &bh) in b.iter().enumerate() {
            if bh == 1 && self.is_odd(h) {
                swaps += (h + 1..a.len()).filter(|&g| a[g] == 1 && self.is_odd(g)).count();
            }
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, self.index[&out]))
    }

    pub fn product_triples(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, a) in self.monomials.iter().enumerate() {
            for (j, b) in self.monomials.iter().enumerate() {
                if let Some((s, k)) = self.mul_monomials(a, b) {
                    out.push((i, j, k, q(s)));
                }
            }
        }
        out
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Element {
        let mut out = zero_vec(self.dim());
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if let Some((s, k)) = self.mul_monomials(&self.monomials[i], &self.monomials[j]) {
                    out[k] += x * y * q(s);
                }
            }
        }
        out
    }

    fn monomial_vec(&self, m: &[u32]) -> Element {
        let mut v = zero_vec(self.dim());
        v[self.index[m]] = Rational::one();
        v
    }

    /// Matrix of the derivation of degree `degree` taking generator `g` to
    /// `values[g]`.
    pub fn derivation(&self, degree: i64, values: &[Element]) -> Matrix {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for m in &self.monomials {
            let mut col = zero_vec(n);
            for g in 0..m.len() {
                if m[g] == 0 {
                    continue;
                }
                let mut prefix = m.clone();
                prefix[g..].iter_mut().for_each(|e| *e = 0);
                let mut suffix = m.clone();
                suffix[..=g].iter_mut().for_each(|e| *e = 0);
                let mut lowered = vec![0; m.len()];
                lowered[g] = m[g] - 1;
                let sign = if (degree * self.monomial_degree(&prefix)).rem_euclid(2) == 0 { 1 } else { -1 };
                let scale = q(sign * m[g] as i64);
                let middle = self.mul(&self.monomial_vec(&lowered), &values[g]);
                let term = self.mul(&self.mul(&self.monomial_vec(&prefix), &middle), &self.monomial_vec(&suffix));
                for (c, t) in col.iter_mut().zip(term) {
                    *c += &scale * t;
                }
            }
            cols.push(col);
        }
        Matrix::from_columns(n, &cols)
    }

    /// `d/dg`, of degree `-|g|`.
    pub fn partial(&self, g: usize) -> Matrix {
        let mut values = vec![zero_vec(self.dim()); self.generator_count()];
        values[g][self.unit_index()] = Rational::one();
        self.derivation(-self.degrees[g], &values)
    }

    /// `g d/dg`, of degree 0.
    pub fn euler(&self, g: usize) -> Matrix {
        let mut values = vec![zero_vec(self.dim()); self.generator_count()];
        values[g][self.generator_index(g)] = Rational::one();
        self.derivation(0, &values)
    }

    /// Random generator images for a derivation of degree `degree` that is
    /// well defined on the truncated algebra: an even generator `x` goes to
    /// `x * w`, so `x^k = 0` is preserved. With `avoid = Some(g)`, generator
    /// `g` is sent to zero and never appears in any image, so the derivation
    /// commutes with `d/dg`.
    pub fn random_derivation_values(&self, degree: i64, avoid: Option<usize>, rng: &mut impl Rng) -> Vec<Element> {
        let bd = self.basis_degrees();
        let allowed = |i: usize| avoid.is_none_or(|g| self.monomials[i][g] == 0);
        let random_of_degree = |d: i64, rng: &mut dyn rand::RngCore| {
            let mut v = zero_vec(self.dim());
            for i in 0..self.dim() {
                if bd[i] == d && allowed(i) && rng.gen_bool(0.5) {
                    v[i] = random_coefficient(rng);
                }
            }
            v
        };
        (0..self.generator_count())
            .map(|g| {
                if Some(g) == avoid {
                    zero_vec(self.dim())
                } else if self.is_odd(g) {
                    random_of_degree(self.degrees[g] + degree, rng)
                } else {
                    let w = random_of_degree(degree, rng);
                    self.mul(&self.monomial_vec(&self.monomials[self.generator_index(g)]), &w)
                }
            })
            .collect()
    }

    pub fn with_operator(&self, d: Matrix) -> Option<GradedBVData> {
        GradedBVData::new(self.basis_degrees(), &self.product_triples(), d).ok()
    }
}

/// Exterior algebra (with unit) on generators of the given odd degrees and
/// `D = sum c_g d/dg` over the listed `(g, c)`.
pub fn exterior_with_d(degrees: &[i64], coeffs: &[(usize, Rational)]) -> GradedBVData {
    let alg = FreeAlgebra::new(degrees, &vec![2; degrees.len()]);
    let mut d = Matrix::zeros(alg.dim(), alg.dim());
    for (g, c) in coeffs {
        d = &d + &alg.partial(*g).scale(c);
    }
    alg.with_operator(d).expect("sum of anticommuting partials squares to zero")
}

/// A module with zero product and zero operator, basis in the given degrees.
pub fn square_zero_module(degrees: &[i64]) -> GradedBVData {
    let n = degrees.len();
    GradedBVData::new(degrees.to_vec(), &[], Matrix::zeros(n, n)).expect("zero structure is valid")
}

/// Product algebra `A x B` (componentwise product, no unit unless both
/// have one) with the block diagonal operator.
pub fn direct_sum(a: &GradedBVData, b: &GradedBVData) -> GradedBVData {
    let (na, nb) = (a.dim(), b.dim());
    let mut degrees = a.degrees().to_vec();
    degrees.extend_from_slice(b.degrees());
    let mut triples = a.product_triples();
    triples.extend(b.product_triples().into_iter().map(|(i, j, k, c)| (i + na, j + na, k + na, c)));
    let mut d = Matrix::zeros(na + nb, na + nb);
    for (i, j, x) in a.operator().entries() {
        d[(i, j)] = x.clone();
    }
    for (i, j, x) in b.operator().entries() {
        d[(i + na, j + na)] = x.clone();
    }
    GradedBVData::new(degrees, &triples, d).expect("direct sum of valid data is valid")
}

/// `P D P^{-1}` for a random invertible degree-preserving `P`. The result
/// still squares to zero but is usually no longer second order.
pub fn conjugate_operator(a: &GradedBVData, rng: &mut impl Rng) -> GradedBVData {
    let n = a.dim();
    loop {
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && a.degrees()[i] == a.degrees()[j] && rng.gen_bool(0.5) {
                    p[(i, j)] = random_coefficient(rng);
                }
            }
        }
        if let Some(inv) = p.inverse() {
            let d = &(&p * a.operator()) * &inv;
            return a.with_operator(d).expect("conjugate keeps degree and square zero");
        }
    }
}

/// Adds `c * v * e_k^*` to `D`, where no image of `D` has an `e_k`
/// component and `D v = 0`; this keeps `D^2 = 0`. Returns `None` if no
/// such `(k, v)` exists.
pub fn perturb_operator(a: &GradedBVData, rng: &mut impl Rng) -> Option<GradedBVData> {
    let n = a.dim();
    let d = a.operator();
    let mut candidates = Vec::new();
    for k in 0..n {
        if (0..n).any(|j| !d[(k, j)].is_zero()) {
            continue;
        }
        let target: Vec<usize> = (0..n).filter(|&i| a.degrees()[i] == a.degrees()[k] + 1).collect();
        if target.is_empty() {
            continue;
        }
        let restricted = Matrix::from_columns(n, &target.iter().map(|&i| d.column(i)).collect::<Vec<_>>());
        for v in restricted.kernel() {
            let mut full = zero_vec(n);
            for (a_idx, &i) in target.iter().enumerate() {
                full[i] = v[a_idx].clone();
            }
            candidates.push((k, full));
        }
    }
    let (k, v) = candidates.choose(rng)?.clone();
    let c = random_coefficient(rng);
    let mut d2 = d.clone();
    for (i, x) in v.iter().enumerate() {
        d2[(i, k)] += &c * x;
    }
    a.with_operator(d2).ok()
}

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = loop {
        let x = rng.gen_range(-3i64..=3);
        if x != 0 {
            break x;
        }
    };
    if rng.gen_bool(0.2) {
        qq(num, 2)
    } else {
        q(num)
    }
}

/// How an instance's operator was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Zero,
    FirstOrder,
    PartialAfterEuler,
    MixedSecondOrder,
    Derivation,
    ThirdOrder,
    Conjugated,
    Perturbed,
    DirectSum,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub recipe: Recipe,
    pub data: GradedBVData,
}

fn pick_degree(rng: &mut impl Rng, odd: bool) -> i64 {
    let base = rng.gen_range(-2i64..=2) * 2;
    if odd {
        base + 1
    } else {
        base
    }
}

fn random_degree(rng: &mut impl Rng) -> i64 {
    let odd = rng.gen_bool(0.5);
    pick_degree(rng, odd)
}

fn one_instance(rng: &mut impl Rng, recipe: Recipe) -> Option<GradedBVData> {
    let trunc = |rng: &mut dyn rand::RngCore| rng.gen_range(2u32..=3);
    match recipe {
        Recipe::Zero => {
            let count = rng.gen_range(1..=3);
            let degs: Vec<i64> = (0..count).map(|_| random_degree(rng)).collect();
            let t: Vec<u32> = degs.iter().map(|_| trunc(rng)).collect();
            let alg = FreeAlgebra::new(&degs, &t);
            alg.with_operator(Matrix::zeros(alg.dim(), alg.dim()))
        }
        Recipe::FirstOrder => {
            let k = rng.gen_range(1..=2);
            let mut degs = vec![-1; k];
            let extra = rng.gen_range(0..=2);
            degs.extend((0..extra).map(|_| random_degree(rng)));
            let t: Vec<u32> = degs.iter().map(|_| trunc(rng)).collect();
            let alg = FreeAlgebra::new(&degs, &t);
            let mut d = Matrix::zeros(alg.dim(), alg.dim());
            for g in 0..k {
                d = &d + &alg.partial(g).scale(&random_coefficient(rng));
            }
            alg.with_operator(d)
        }
        Recipe::PartialAfterEuler => {
            let mut degs = vec![-1, pick_degree(rng, false)];
            if rng.gen_bool(0.5) {
                degs.push(pick_degree(rng, true));
            }
            let t: Vec<u32> = degs.iter().map(|_| trunc(rng)).collect();
            let alg = FreeAlgebra::new(&degs, &t);
            let d = (&alg.partial(0) * &alg.euler(1)).scale(&random_coefficient(rng));
            alg.with_operator(d)
        }
        Recipe::MixedSecondOrder => {
            let mut degs = vec![-1, pick_degree(rng, false)];
            if rng.gen_bool(0.6) {
                let d = random_degree(rng);
                degs.push(d);
            }
            let t: Vec<u32> = degs.iter().map(|_| trunc(rng)).collect();
            let alg = FreeAlgebra::new(&degs, &t);
            let values = alg.random_derivation_values(0, Some(0), rng);
            let mut d = (&alg.partial(0) * &alg.derivation(0, &values)).scale(&random_coefficient(rng));
            if rng.gen_bool(0.5) {
                d = &d + &alg.partial(0).scale(&random_coefficient(rng));
            }
            alg.with_operator(d)
        }
        Recipe::Derivation => {
            let count = rng.gen_range(2..=3);
            let degs: Vec<i64> = (0..count).map(|_| rng.gen_range(-2i64..=2)).collect();
            let t: Vec<u32> = degs.iter().map(|_| trunc(rng)).collect();
            let alg = FreeAlgebra::new(&degs, &t);
            let values = alg.random_derivation_values(1, None, rng);
            alg.with_operator(alg.derivation(1, &values))
        }
        Recipe::ThirdOrder => {
            let degs = vec![-1, -1, 1];
            let alg = FreeAlgebra::new(&degs, &[2, 2, 2]);
            let d = (&(&alg.partial(0) * &alg.partial(1)) * &alg.partial(2)).scale(&random_coefficient(rng));
            alg.with_operator(d)
        }
        Recipe::Conjugated => {
            let base = one_instance(rng, Recipe::MixedSecondOrder)?;
            Some(conjugate_operator(&base, rng))
        }
        Recipe::Perturbed => {
            let pick = *[Recipe::FirstOrder, Recipe::MixedSecondOrder, Recipe::PartialAfterEuler].choose(rng)?;
            let base = one_instance(rng, pick)?;
            perturb_operator(&base, rng)
        }
        Recipe::DirectSum => {
            let pick = *[Recipe::FirstOrder, Recipe::MixedSecondOrder, Recipe::Zero].choose(rng)?;
            let a = one_instance(rng, pick)?;
            let b = if rng.gen_bool(0.5) {
                let d = rng.gen_range(-2i64..=1);
                square_zero_module(&[d, d + 3])
            } else {
                one_instance(rng, Recipe::FirstOrder)?
            };
            let out = direct_sum(&a, &b);
            (out.dim() <= 16).then_some(out)
        }
    }
}

/// A deterministic family of `count` valid instances cycling through every
/// recipe, each of dimension at most 16.
pub fn generate(seed: u64, count: usize) -> Vec<Instance> {
    const RECIPES: [Recipe; 9] = [
        Recipe::Zero,
        Recipe::FirstOrder,
        Recipe::PartialAfterEuler,
        Recipe::MixedSecondOrder,
        Recipe::Derivation,
        Recipe::ThirdOrder,
        Recipe::Conjugated,
        Recipe::Perturbed,
        Recipe::DirectSum,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0usize;
    while out.len() < count {
        let recipe = RECIPES[attempt % RECIPES.len()];
        attempt += 1;
        if let Some(data) = one_instance(&mut rng, recipe) {
            if data.dim() <= 16 {
                out.push(Instance { label: format!("#{} {:?} dim {}", out.len(), recipe, data.dim()), recipe, data });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_bv::{check_bv_identity, check_leibniz};

    #[test]
    fn exterior_signs() {
        let alg = FreeAlgebra::new(&[1, 1], &[2, 2]);
        let a = alg.with_operator(Matrix::zeros(4, 4)).unwrap();
        let (x, y) = (alg.generator_index(0), alg.generator_index(1));
        let xy = a.mul_basis(x, y);
        let yx = a.mul_basis(y, x);
        assert_eq!(xy.iter().map(|c| -c).collect::<Vec<_>>(), yx);
        assert!(a.mul_basis(x, x).iter().all(Zero::is_zero));
    }

    #[test]
    fn truncated_polynomial() {
        let alg = FreeAlgebra::new(&[2], &[3]);
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.basis_degrees(), vec![0, 2, 4]);
        let a = alg.with_operator(Matrix::zeros(3, 3)).unwrap();
        assert!(a.mul_basis(2, 1).iter().all(Zero::is_zero));
    }

    #[test]
    fn partial_is_a_derivation_and_passes() {
        let alg = FreeAlgebra::new(&[-1, 2, 1], &[2, 3, 2]);
        let d = alg.partial(0);
        let a = alg.with_operator(d).unwrap();
        assert!(check_bv_identity(&a).passed());
    }

    #[test]
    fn second_order_recipes_pass_and_third_order_fails() {
        // d/dx is not defined on k[x]/(x^3); x d/dx is.
        let alg = FreeAlgebra::new(&[0, -1], &[3, 2]);
        let a = alg.with_operator(&alg.partial(0) * &alg.partial(1)).unwrap();
        assert!(!check_bv_identity(&a).passed());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = FreeAlgebra::new(&[-1, 2, 1], &[2, 3, 2]);
        for _ in 0..5 {
            let values = alg.random_derivation_values(0, Some(0), &mut rng);
            let a = alg.with_operator(&alg.partial(0) * &alg.derivation(0, &values)).unwrap();
            let r = check_bv_identity(&a);
            assert!(r.passed(), "{r}");
        }
        let alg = FreeAlgebra::new(&[-1, 2], &[2, 3]);
        let a = alg.with_operator(&alg.partial(0) * &alg.euler(1)).unwrap();
        assert!(check_bv_identity(&a).passed());
        let alg = FreeAlgebra::new(&[-1, -1, 1], &[2, 2, 2]);
        let d = &(&alg.partial(0) * &alg.partial(1)) * &alg.partial(2);
        let a = alg.with_operator(d).unwrap();
        assert!(!check_bv_identity(&a).passed());
        assert!(!check_leibniz(&a).passed());
    }

    #[test]
    fn generated_family_is_valid_and_mixed() {
        let family = generate(7, 30);
        assert_eq!(family.len(), 30);
        let passing = family.iter().filter(|i| check_bv_identity(&i.data).passed()).count();
        assert!(passing > 0 && passing < family.len(), "passing {passing}");
        for inst in &family {
            assert!(inst.data.validate().is_ok(), "{}", inst.label);
        }
    }
}
