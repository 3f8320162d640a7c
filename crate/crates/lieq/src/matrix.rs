//! Dense exact matrices and the linear-algebra kernel built on them.
//!
//! Everything here is deterministic: elimination picks the leftmost pivot
//! column and, within a column, the row whose entry has the smallest
//! complexity (absolute numerator, then denominator). Derived bases are
//! therefore reproducible bit for bit across runs and platforms.

use crate::error::LieqError;
use crate::scalar::{gq, Gauss, Scalar, Q};
use num_traits::Zero;

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

/// Rational matrix.
pub type QMat = Mat<Q>;
/// Gaussian-rational matrix.
pub type GMat = Mat<Gauss>;

impl<S: Scalar> std::fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{:?} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<S>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<S> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc = acc + self.at(r, c).clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self.at(i, i).clone();
        }
        t
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for col in 0..a.cols {
            if pr >= a.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for r in pr..a.rows {
                if a.at(r, col).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if a.at(r, col).pivot_weight() < a.at(b, col).pivot_weight() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(sel) = best else { continue };
            if sel != pr {
                for c in 0..a.cols {
                    let x = a.at(sel, c).clone();
                    let y = a.at(pr, c).clone();
                    a.set(sel, c, y);
                    a.set(pr, c, x);
                }
            }
            let inv = S::one() / a.at(pr, col).clone();
            for c in 0..a.cols {
                let v = a.at(pr, c).clone() * inv.clone();
                a.set(pr, c, v);
            }
            for r in 0..a.rows {
                if r == pr || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..a.cols {
                    let v = a.at(r, c).clone() - f.clone() * a.at(pr, c).clone();
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            pr += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space. Each vector is rescaled to its canonical
    /// representative; the list is ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let pivot_of_col: std::collections::HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(row, &col)| (col, row)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (&col, &row) in pivot_of_col.iter() {
                v[col] = -r.at(row, free).clone();
            }
            S::normalize_vector(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`. Returns the pivot solution (free variables 0)
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, b.len());
        let rhs = Mat::from_fn(self.rows, 1, |r, _| b[r].clone());
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Exponential of a nilpotent matrix as the finite sum of divided powers.
    pub fn exp_nilpotent(&self) -> Result<Self, LieqError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut term = Self::identity(n);
        let mut out = Self::identity(n);
        let mut k = 1usize;
        loop {
            term = term.mul(self);
            if term.is_zero() {
                return Ok(out);
            }
            if k > n {
                return Err(LieqError::NotNilpotent);
            }
            let mut factorial = S::one();
            for j in 1..=k {
                let mut acc = S::zero();
                for _ in 0..j {
                    acc = acc + S::one();
                }
                factorial = factorial * acc;
            }
            out = out.add(&term.scale(&(S::one() / factorial)));
            k += 1;
        }
    }

    /// Basis of the simultaneous eigenspace `∩ ker(m_i − λ_i I)`.
    pub fn simultaneous_eigenspace(mats: &[Self], eigs: &[S]) -> Vec<Vec<S>> {
        assert_eq!(mats.len(), eigs.len());
        assert!(!mats.is_empty());
        let n = mats[0].cols;
        let mut stacked = Mat::zeros(0, n);
        for (m, lam) in mats.iter().zip(eigs) {
            assert_eq!(m.rows, m.cols);
            assert_eq!(m.rows, n);
            let shifted = m.sub(&Self::identity(n).scale(lam));
            stacked = stacked.vstack(&shifted);
        }
        stacked.kernel()
    }
}

impl QMat {
    /// Lifts a rational matrix to a Gaussian-rational one.
    pub fn to_gauss(&self) -> GMat {
        Mat::from_fn(self.rows, self.cols, |r, c| gq(self.at(r, c).clone()))
    }

    /// True when all entries are integers.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(crate::scalar::q_is_integer)
    }
}

impl GMat {
    pub fn real_part(&self) -> QMat {
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).re.clone())
    }

    pub fn imag_part(&self) -> QMat {
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im.is_zero())
    }

    pub fn conj_entries(&self) -> GMat {
        Mat::from_fn(self.rows, self.cols, |r, c| crate::scalar::conj(self.at(r, c)))
    }

    /// True when all entries are Gaussian integers.
    pub fn is_gauss_integral(&self) -> bool {
        self.data.iter().all(crate::scalar::gauss_is_integer)
    }
}

/// A linear subspace, stored as the canonical (RREF) basis in the rows.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<S: Scalar> {
    ambient: usize,
    basis: Mat<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn from_spanning(ambient: usize, vectors: &[Vec<S>]) -> Self {
        if vectors.is_empty() {
            return Subspace { ambient, basis: Mat::zeros(0, ambient) };
        }
        let m = Mat::from_rows(vectors.to_vec());
        assert_eq!(m.cols, ambient);
        let (r, pivots) = m.rref();
        let basis = Mat::from_fn(pivots.len(), ambient, |i, j| r.at(i, j).clone());
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_spanning(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        let id = Mat::<S>::identity(ambient);
        Self::from_spanning(ambient, &(0..ambient).map(|r| id.row(r)).collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        (0..self.basis.rows).map(|r| self.basis.row(r)).collect()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Mat::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::from_spanning(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // x in both spans: x = A^T u = B^T v; kernel of [A^T | -B^T].
        let at = self.basis.transpose();
        let bt = other.basis.transpose();
        let stacked = at.hstack(&bt.neg());
        let mut vectors = Vec::new();
        for k in stacked.kernel() {
            let u = &k[..self.dim()];
            let x = at.mul_vec(u);
            vectors.push(x);
        }
        Self::from_spanning(self.ambient, &vectors)
    }

    /// Image of this subspace under the linear map `m` (columns act on coordinates).
    pub fn map_by(&self, m: &Mat<S>) -> Self {
        let vectors: Vec<Vec<S>> =
            self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Self::from_spanning(m.rows, &vectors)
    }

    /// Embeds into a larger ambient space at a coordinate offset.
    pub fn embed(&self, offset: usize, new_ambient: usize) -> Self {
        assert!(offset + self.ambient <= new_ambient);
        let vectors: Vec<Vec<S>> = self
            .basis_vectors()
            .iter()
            .map(|v| {
                let mut w = vec![S::zero(); new_ambient];
                w[offset..offset + self.ambient].clone_from_slice(v);
                w
            })
            .collect();
        Self::from_spanning(new_ambient, &vectors)
    }

    /// The subspace `{v ∈ self : m v = 0}` in ambient coordinates.
    pub fn kernel_of_restriction(&self, m: &Mat<S>) -> Self {
        assert_eq!(m.cols, self.ambient);
        if self.is_zero() {
            return Self::zero(self.ambient);
        }
        let cols = Mat::from_cols(self.basis_vectors());
        let composed = m.mul(&cols);
        let vectors: Vec<Vec<S>> = composed
            .kernel()
            .iter()
            .map(|k| cols.mul_vec(k))
            .collect();
        Self::from_spanning(self.ambient, &vectors)
    }
}

/// Gram–Schmidt over the rationals without normalization: the output spans
/// the same space and is pairwise orthogonal under `gram`.
pub fn gram_schmidt_q(vectors: &[Vec<Q>], gram: &QMat) -> Result<Vec<Vec<Q>>, LieqError> {
    let inner = |x: &[Q], y: &[Q]| -> Q {
        let gy = gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    };
    let mut out: Vec<Vec<Q>> = Vec::new();
    for v in vectors {
        let mut u = v.clone();
        for prev in &out {
            let c = inner(v, prev) / inner(prev, prev);
            for (ui, pi) in u.iter_mut().zip(prev) {
                *ui -= &c * pi;
            }
        }
        if u.iter().all(|x| x.is_zero()) {
            return Err(LieqError::DependentInput);
        }
        out.push(u);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, qr};

    fn qmat(rows: &[&[i64]]) -> QMat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn kernel_of_rank_one_symmetric() {
        let m = qmat(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel(), vec![vec![qi(1), qi(-1)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(qmat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).kernel().is_empty());
    }

    #[test]
    fn kernel_of_shift() {
        let m = qmat(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.kernel(), vec![vec![qi(1), qi(0)]]);
    }

    #[test]
    fn solve_identity() {
        let m = qmat(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.solve(&[qi(3), qi(5)]), Some(vec![qi(3), qi(5)]));
    }

    #[test]
    fn solve_inconsistent() {
        let m = qmat(&[&[2, 0], &[0, 0]]);
        assert_eq!(m.solve(&[qi(1), qi(1)]), None);
    }

    #[test]
    fn solve_underdetermined_uses_pivot_rule() {
        let m = qmat(&[&[1, 1]]);
        let x = m.solve(&[qi(2)]).unwrap();
        assert_eq!(x, vec![qi(2), qi(0)]);
        assert_eq!(m.mul_vec(&x), vec![qi(2)]);
    }

    #[test]
    fn exp_of_single_jordan_block() {
        let m = qmat(&[&[0, 1], &[0, 0]]);
        let e = m.exp_nilpotent().unwrap();
        assert_eq!(e, qmat(&[&[1, 1], &[0, 1]]));

        let z = QMat::zeros(3, 3);
        assert_eq!(z.exp_nilpotent().unwrap(), QMat::identity(3));

        let j = qmat(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let ej = j.exp_nilpotent().unwrap();
        assert_eq!(ej.at(0, 2), &qr(1, 2));
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let m = qmat(&[&[1, 0], &[0, 1]]);
        assert!(m.exp_nilpotent().is_err());
    }

    #[test]
    fn gram_schmidt_matches_hand_computation() {
        let g = QMat::identity(2);
        let out = gram_schmidt_q(&[vec![qi(1), qi(1)], vec![qi(1), qi(0)]], &g).unwrap();
        assert_eq!(out[0], vec![qi(1), qi(1)]);
        assert_eq!(out[1], vec![qr(1, 2), qr(-1, 2)]);

        // already orthogonal input is unchanged
        let out2 = gram_schmidt_q(&[vec![qi(2), qi(0)], vec![qi(0), qi(3)]], &g).unwrap();
        assert_eq!(out2, vec![vec![qi(2), qi(0)], vec![qi(0), qi(3)]]);

        // single vector unchanged
        let out3 = gram_schmidt_q(&[vec![qi(4), qi(2)]], &g).unwrap();
        assert_eq!(out3, vec![vec![qi(4), qi(2)]]);

        assert!(gram_schmidt_q(&[vec![qi(1), qi(1)], vec![qi(2), qi(2)]], &g).is_err());
    }

    #[test]
    fn simultaneous_eigenspaces() {
        let d12 = qmat(&[&[1, 0], &[0, 2]]);
        let s = QMat::simultaneous_eigenspace(&[d12.clone()], &[qi(2)]);
        assert_eq!(s, vec![vec![qi(0), qi(1)]]);

        let d11 = QMat::identity(2);
        let s2 = QMat::simultaneous_eigenspace(&[d11.clone(), d12.clone()], &[qi(1), qi(1)]);
        assert_eq!(s2, vec![vec![qi(1), qi(0)]]);

        let s3 = QMat::simultaneous_eigenspace(&[d12], &[qi(7)]);
        assert!(s3.is_empty());
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::from_spanning(3, &[vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]]);
        let b = Subspace::from_spanning(3, &[vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]]);
        let cap = a.intersect(&b);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&[qi(0), qi(5), qi(0)]));
        let sum = a.sum(&b);
        assert_eq!(sum.dim(), 3);
    }
}
