use num_traits::{One, Zero};
use thiserror::Error;

use super::{BvError, Element, GradedBVData};
use crate::linalg::{add_scaled, is_zero_vec, sign_pow, unit_vec, zero_vec, Matrix, Rational};
use crate::report::{format_vector, IdentityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GysinError {
    #[error("map {map} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { map: &'static str, rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("map {map} does not have degree {expected}: entry ({row}, {col})")]
    Degree { map: &'static str, expected: i64, row: usize, col: usize },
    #[error("Delta differs from T after q")]
    DeltaMismatch,
    #[error("sequence is not exact at {0}")]
    NotExact(&'static str),
    #[error("cannot build Gysin data: {0}")]
    Construction(String),
    #[error(transparent)]
    Bv(#[from] BvError),
}

/// A BV algebra `(B, *, Delta)` with a graded module `H` and maps
/// `q: B_i -> H_i`, `c: H_i -> H_{i-2}`, `T: H_i -> B_{i+1}` forming the long
/// exact sequence `B -> H -> H -> B -> H -> ...` with `Delta = T q`.
#[derive(Clone, Debug, PartialEq)]
pub struct GysinData {
    b: GradedBVData,
    h_degrees: Vec<i64>,
    q: Matrix,
    c: Matrix,
    t: Matrix,
}

fn check_shape(map: &'static str, m: &Matrix, rows: usize, cols: usize) -> Result<(), GysinError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(GysinError::Shape { map, rows: m.rows(), cols: m.cols(), expected_rows: rows, expected_cols: cols });
    }
    Ok(())
}

fn check_degree(map: &'static str, m: &Matrix, target: &[i64], source: &[i64], shift: i64) -> Result<(), GysinError> {
    for (row, col, _) in m.entries() {
        if target[row] != source[col] + shift {
            return Err(GysinError::Degree { map, expected: shift, row, col });
        }
    }
    Ok(())
}

/// `im(first) == ker(second)` for composable `second * first`.
fn exact_at(first: &Matrix, second: &Matrix) -> bool {
    (second * first).is_zero() && first.rank() + second.rank() == first.rows()
}

impl GysinData {
    pub fn new(b: GradedBVData, h_degrees: Vec<i64>, q: Matrix, c: Matrix, t: Matrix) -> Result<Self, GysinError> {
        let (nb, nh) = (b.dim(), h_degrees.len());
        check_shape("q", &q, nh, nb)?;
        check_shape("c", &c, nh, nh)?;
        check_shape("T", &t, nb, nh)?;
        check_degree("q", &q, &h_degrees, b.degrees(), 0)?;
        check_degree("c", &c, &h_degrees, &h_degrees, -2)?;
        check_degree("T", &t, b.degrees(), &h_degrees, 1)?;
        if &(&t * &q) != b.operator() {
            return Err(GysinError::DeltaMismatch);
        }
        if !exact_at(&q, &c) {
            return Err(GysinError::NotExact("H after q"));
        }
        if !exact_at(&c, &t) {
            return Err(GysinError::NotExact("H after c"));
        }
        if !exact_at(&t, &q) {
            return Err(GysinError::NotExact("B after T"));
        }
        Ok(GysinData { b, h_degrees, q, c, t })
    }

    /// Builds Gysin data for `b` in which `H` is assembled from the
    /// homology of `(B, Delta)`.
    ///
    /// Choose a complement `S` of `ker Delta` and a complement `K` of
    /// `im Delta` inside `ker Delta`. Each `s` in `S` gives a class `[s]` with
    /// `q(s) = [s]` and `T[s] = Delta s`. The classes in `K` must pair up as
    /// `(h, h')` with `|h'| = |h| + 2m + 1`, `m >= 1`; each pair gives a
    /// tower `t_0, ..., t_m` in `H` with `|t_j| = |h| + 2j`, `q(h) = t_0`,
    /// `c(t_j) = t_{j-1}` and `T(t_m) = h'`. Returns an error when `K` cannot
    /// be paired this way.
    pub fn from_bv(b: &GradedBVData) -> Result<Self, GysinError> {
        let n = b.dim();
        let delta = b.operator();
        let mut degs: Vec<i64> = b.degrees().to_vec();
        degs.sort_unstable();
        degs.dedup();
        let indices = |d: i64| -> Vec<usize> { (0..n).filter(|&i| b.degrees()[i] == d).collect() };
        let embed = |idx: &[usize], v: &[Rational]| -> Vec<Rational> {
            let mut out = zero_vec(n);
            for (a, &i) in idx.iter().enumerate() {
                out[i] = v[a].clone();
            }
            out
        };

        // New basis of B: S, then Delta(S), then K, with degrees.
        let mut s_vecs: Vec<(i64, Vec<Rational>)> = Vec::new();
        let mut k_vecs: Vec<(i64, Vec<Rational>)> = Vec::new();
        for &d in &degs {
            let here = indices(d);
            let cols: Vec<Vec<Rational>> = here.iter().map(|&i| delta.column(i)).collect();
            let restricted = Matrix::from_columns(n, &cols);
            let kernel: Vec<Vec<Rational>> = restricted.kernel().iter().map(|v| embed(&here, v)).collect();
            // Complement of ker in B_d: standard basis vectors not spanned so far.
            let mut span: Vec<Vec<Rational>> = kernel.clone();
            for &i in &here {
                let e = unit_vec(n, i);
                if !Matrix::from_columns(n, &span).spans(&e) {
                    span.push(e.clone());
                    s_vecs.push((d, e));
                }
            }
            // Complement of im Delta in ker Delta within degree d.
            let below: Vec<Vec<Rational>> = indices(d - 1).iter().map(|&i| delta.column(i)).collect();
            let mut span: Vec<Vec<Rational>> = below.into_iter().filter(|v| !is_zero_vec(v)).collect();
            for v in kernel {
                if !Matrix::from_columns(n, &span).spans(&v) {
                    span.push(v.clone());
                    k_vecs.push((d, v));
                }
            }
        }

        let pairs = pair_classes(&k_vecs.iter().map(|(d, _)| *d).collect::<Vec<_>>())
            .ok_or_else(|| GysinError::Construction("homology classes cannot be paired into towers".into()))?;

        let image: Vec<Vec<Rational>> = s_vecs.iter().map(|(_, v)| delta.apply(v)).collect();
        let mut columns: Vec<Vec<Rational>> = s_vecs.iter().map(|(_, v)| v.clone()).collect();
        columns.extend(image.iter().cloned());
        columns.extend(k_vecs.iter().map(|(_, v)| v.clone()));
        let change = Matrix::from_columns(n, &columns);
        let inverse = change.inverse().ok_or_else(|| GysinError::Construction("basis change is singular".into()))?;

        // H basis: [s] for each s, then the towers.
        let mut h_degrees: Vec<i64> = s_vecs.iter().map(|(d, _)| *d).collect();
        let ns = s_vecs.len();
        let mut tower_start = Vec::new();
        for &(lo, hi) in &pairs {
            let d = k_vecs[lo].0;
            let m = ((k_vecs[hi].0 - d - 1) / 2) as usize;
            tower_start.push((h_degrees.len(), m));
            for j in 0..=m {
                h_degrees.push(d + 2 * j as i64);
            }
        }
        let nh = h_degrees.len();

        // q in the new basis of B, then composed with the basis change.
        let mut q_new = Matrix::zeros(nh, n);
        for a in 0..ns {
            q_new[(a, a)] = Rational::one();
        }
        for (p, &(lo, _)) in pairs.iter().enumerate() {
            q_new[(tower_start[p].0, 2 * ns + lo)] = Rational::one();
        }
        let q = &q_new * &inverse;

        let mut c = Matrix::zeros(nh, nh);
        let mut t_cols: Vec<Vec<Rational>> = vec![zero_vec(n); nh];
        t_cols[..ns].clone_from_slice(&image[..ns]);
        for (p, &(_, hi)) in pairs.iter().enumerate() {
            let (start, m) = tower_start[p];
            for j in 1..=m {
                c[(start + j - 1, start + j)] = Rational::one();
            }
            t_cols[start + m] = k_vecs[hi].1.clone();
        }
        let t = Matrix::from_columns(n, &t_cols);
        GysinData::new(b.clone(), h_degrees, q, c, t)
    }

    pub fn bv(&self) -> &GradedBVData {
        &self.b
    }

    pub fn h_degrees(&self) -> &[i64] {
        &self.h_degrees
    }

    pub fn h_dim(&self) -> usize {
        self.h_degrees.len()
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    /// Replaces `q` without revalidating; for building broken instances.
    pub fn with_q_unchecked(&self, q: Matrix) -> Self {
        GysinData { q, ..self.clone() }
    }

    pub fn h_basis(&self, i: usize) -> Element {
        unit_vec(self.h_dim(), i)
    }

    fn h_fmt(v: &[Rational]) -> String {
        format_vector(v, &|i| format!("h{i}"))
    }

    fn b_fmt(v: &[Rational]) -> String {
        format_vector(v, &|i| format!("e{i}"))
    }

    /// `{x,y} = (-1)^{|x|} q(T(x) * T(y))`, bilinear in `x` and `y`.
    pub fn string_bracket(&self, x: &[Rational], y: &[Rational]) -> Element {
        let ty = self.t.apply(y);
        let mut out = zero_vec(self.h_dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let tx = self.t.column(i);
            let prod = self.b.mul(&tx, &ty);
            let val = self.q.apply(&prod);
            add_scaled(&mut out, &(sign_pow(self.h_degrees[i]) * xi), &val);
        }
        out
    }

    fn bracket_table(&self) -> Vec<Vec<Element>> {
        let n = self.h_dim();
        (0..n).map(|i| (0..n).map(|j| self.string_bracket(&self.h_basis(i), &self.h_basis(j))).collect()).collect()
    }

    /// `{x,y} + (-1)^{|x||y|} {y,x} = 0` on basis pairs.
    pub fn check_antisymmetry(&self) -> IdentityReport {
        let mut report = IdentityReport::new("string bracket antisymmetry");
        let table = self.bracket_table();
        let deg = &self.h_degrees;
        for i in 0..self.h_dim() {
            for j in 0..self.h_dim() {
                let mut r = table[i][j].clone();
                add_scaled(&mut r, &sign_pow(deg[i] * deg[j]), &table[j][i]);
                let ok = is_zero_vec(&r);
                report.record(ok, || format!("(h{i}, h{j})"), || Self::h_fmt(&r));
            }
        }
        report
    }

    /// `sum_cyclic (-1)^{|x||z|} {x,{y,z}} = 0` on basis triples.
    pub fn check_jacobi(&self) -> IdentityReport {
        let mut report = IdentityReport::new("string bracket Jacobi");
        let table = self.bracket_table();
        let deg = &self.h_degrees;
        let n = self.h_dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = zero_vec(n);
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let outer = self.string_bracket(&self.h_basis(x), &table[y][z]);
                        add_scaled(&mut r, &sign_pow(deg[x] * deg[z]), &outer);
                    }
                    let ok = is_zero_vec(&r);
                    report.record(ok, || format!("(h{i}, h{j}, h{k})"), || Self::h_fmt(&r));
                }
            }
        }
        report
    }

    /// `T({x,y}) = -{T(x), T(y)}_Delta` on basis pairs.
    pub fn verify_t_lie_morphism(&self) -> IdentityReport {
        let mut report = IdentityReport::new("T is a Lie morphism");
        for i in 0..self.h_dim() {
            let tx = self.t.column(i);
            for j in 0..self.h_dim() {
                let ty = self.t.column(j);
                let mut r = self.t.apply(&self.string_bracket(&self.h_basis(i), &self.h_basis(j)));
                add_scaled(&mut r, &Rational::one(), &self.b.derived_bracket(&tx, &ty));
                let ok = is_zero_vec(&r);
                report.record(ok, || format!("(h{i}, h{j})"), || Self::b_fmt(&r));
            }
        }
        report
    }

    /// `Delta^2 = 0` and `q T = 0`, asserted directly.
    pub fn check_square_zero(&self) -> IdentityReport {
        let mut report = IdentityReport::new("Delta squared and q after T");
        let dd = self.b.operator() * self.b.operator();
        report.record(dd.is_zero(), || "Delta^2".into(), || format!("{dd:?}"));
        let qt = &self.q * &self.t;
        report.record(qt.is_zero(), || "q T".into(), || format!("{qt:?}"));
        report
    }
}

/// Pairs classes of degrees `degs` into `(low, high)` with
/// `high - low` odd and at least 3. Backtracking; the inputs are tiny.
fn pair_classes(degs: &[i64]) -> Option<Vec<(usize, usize)>> {
    fn go(degs: &[i64], used: &mut Vec<bool>, out: &mut Vec<(usize, usize)>) -> bool {
        let Some(first) = (0..degs.len()).find(|&i| !used[i]) else {
            return true;
        };
        used[first] = true;
        for other in 0..degs.len() {
            if used[other] {
                continue;
            }
            let (lo, hi) = if degs[first] < degs[other] { (first, other) } else { (other, first) };
            let gap = degs[hi] - degs[lo];
            if gap >= 3 && gap % 2 == 1 {
                used[other] = true;
                out.push((lo, hi));
                if go(degs, used, out) {
                    return true;
                }
                out.pop();
                used[other] = false;
            }
        }
        used[first] = false;
        false
    }
    let mut used = vec![false; degs.len()];
    let mut out = Vec::new();
    go(degs, &mut used, &mut out).then_some(out)
}
