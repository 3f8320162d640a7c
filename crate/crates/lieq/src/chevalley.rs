//! Chevalley bases: integer structure constants, the Killing form, the
//! compact real form `g0` with its adapted basis, and the order-2
//! automorphism that is `-Id` on the Cartan subalgebra.
//!
//! Signs are fixed once and for all: positive roots carry the (height, lex)
//! total order, the constant on each extraspecial pair is `+(p+1)`, and every
//! other constant is propagated through the standard bilinear identities.
//! The resulting table is verified (`|N| = p+1`, antisymmetry, opposite-pair
//! sign rule, Jacobi) rather than trusted.

use crate::error::{LieqError, Result};
use crate::matrix::{GMat, Mat, QMat};
use crate::root::{Root, RootSystem, Weight};
use crate::scalar::{gauss_string, gq, imag_unit, q_is_integer, q_string, qi, Gauss, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Arc;

/// Sparse integer vector over a basis.
pub type SparseVec = Vec<(usize, i64)>;

/// The table `N_{α,β}` for `α + β ∈ Φ`, plus the extraspecial sign choices.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    /// Keyed by root indices into `RootSystem::roots`.
    table: HashMap<(usize, usize), i64>,
    /// `(α index, β index, N)` for the extraspecial pair of each non-simple
    /// positive root.
    pub extraspecial: Vec<(usize, usize, i64)>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.table.get(&(i, j)).copied()
    }

    pub fn table(&self) -> &HashMap<(usize, usize), i64> {
        &self.table
    }
}

/// Computes the full structure-constant table for a root system.
pub fn structure_constants(sys: &RootSystem) -> Result<StructureConstants> {
    let m = sys.n_positive();
    let len2 = |coords: &[i64]| -> Q {
        let mut acc = Q::zero();
        let c = sys.cartan();
        let d = sys.symmetrizer();
        for i in 0..coords.len() {
            if coords[i] == 0 {
                continue;
            }
            for j in 0..coords.len() {
                acc += qi(coords[i] * coords[j] * c[i][j] * d[j]);
            }
        }
        acc
    };

    // Extraspecial pair per non-simple positive root.
    let mut extraspecial: HashMap<usize, (usize, usize)> = HashMap::new();
    for g in 0..m {
        if sys.roots()[g].height() == 1 {
            continue;
        }
        for a in 0..m {
            let rest: Vec<i64> = sys.roots()[g]
                .coords
                .iter()
                .zip(&sys.roots()[a].coords)
                .map(|(x, y)| x - y)
                .collect();
            if let Some(b) = sys.root_index(&Root::new(rest)) {
                if b < m {
                    assert!(a < b, "extraspecial pair must be ordered");
                    extraspecial.insert(g, (a, b));
                    break;
                }
            }
        }
    }

    // p+1 with p the largest k such that β − kα is a root.
    let string_p_plus_1 = |a: usize, b: usize| -> i64 {
        let mut p = 0i64;
        loop {
            let v: Vec<i64> = sys.roots()[b]
                .coords
                .iter()
                .zip(&sys.roots()[a].coords)
                .map(|(x, y)| x - (p + 1) * y)
                .collect();
            if sys.root_index(&Root::new(v)).is_some() {
                p += 1;
            } else {
                return p + 1;
            }
        }
    };

    struct Ctx<'a> {
        sys: &'a RootSystem,
        m: usize,
        extraspecial: &'a HashMap<usize, (usize, usize)>,
        memo: HashMap<(usize, usize), Q>,
    }

    impl Ctx<'_> {
        fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
            let v: Vec<i64> = self.sys.roots()[a]
                .coords
                .iter()
                .zip(&self.sys.roots()[b].coords)
                .map(|(x, y)| x + y)
                .collect();
            self.sys.root_index(&Root::new(v))
        }

        fn n_pos(
            &mut self,
            a: usize,
            b: usize,
            len2: &dyn Fn(&[i64]) -> Q,
            sp1: &dyn Fn(usize, usize) -> i64,
        ) -> Q {
            if a < b {
                self.n_special(a, b, len2, sp1)
            } else {
                -self.n_special(b, a, len2, sp1)
            }
        }

        /// `N_{x,−y}` for positive `x ≠ y`.
        fn mixed(
            &mut self,
            x: usize,
            y: usize,
            len2: &dyn Fn(&[i64]) -> Q,
            sp1: &dyn Fn(usize, usize) -> i64,
        ) -> Q {
            let z: Vec<i64> = self.sys.roots()[x]
                .coords
                .iter()
                .zip(&self.sys.roots()[y].coords)
                .map(|(p, q)| p - q)
                .collect();
            let Some(zi) = self.sys.root_index(&Root::new(z.clone())) else {
                return Q::zero();
            };
            if zi < self.m {
                // x = z + y
                let ratio = len2(&z) / len2(&self.sys.roots()[x].coords);
                ratio * self.n_pos(zi, y, len2, sp1)
            } else {
                // y = w + x with w = −z
                let wi = self.sys.negative_index(zi);
                let ratio =
                    len2(&self.sys.roots()[wi].coords) / len2(&self.sys.roots()[y].coords);
                ratio * self.n_pos(wi, x, len2, sp1)
            }
        }

        fn n_special(
            &mut self,
            a: usize,
            b: usize,
            len2: &dyn Fn(&[i64]) -> Q,
            sp1: &dyn Fn(usize, usize) -> i64,
        ) -> Q {
            assert!(a < b);
            if let Some(v) = self.memo.get(&(a, b)) {
                return v.clone();
            }
            let g = self.sum_index(a, b).expect("special pair must sum to a root");
            let (e, h) = *self.extraspecial.get(&g).expect("extraspecial exists");
            let val = if (e, h) == (a, b) {
                qi(sp1(a, b))
            } else {
                let gamma_len = len2(&self.sys.roots()[g].coords);
                let t_ha = self.mixed(h, a, len2, sp1);
                let term1 = if t_ha.is_zero() {
                    Q::zero()
                } else {
                    let d: Vec<i64> = self.sys.roots()[h]
                        .coords
                        .iter()
                        .zip(&self.sys.roots()[a].coords)
                        .map(|(p, q)| p - q)
                        .collect();
                    t_ha * self.mixed(e, b, len2, sp1) / len2(&d)
                };
                let t_ea = self.mixed(e, a, len2, sp1);
                let term2 = if t_ea.is_zero() {
                    Q::zero()
                } else {
                    let d: Vec<i64> = self.sys.roots()[e]
                        .coords
                        .iter()
                        .zip(&self.sys.roots()[a].coords)
                        .map(|(p, q)| p - q)
                        .collect();
                    t_ea * self.mixed(h, b, len2, sp1) / len2(&d)
                };
                let n_eh = self.n_special(e, h, len2, sp1);
                gamma_len * (term1 - term2) / n_eh
            };
            self.memo.insert((a, b), val.clone());
            val
        }
    }

    let mut ctx = Ctx { sys, m, extraspecial: &extraspecial, memo: HashMap::new() };

    let mut table: HashMap<(usize, usize), i64> = HashMap::new();
    for i in 0..2 * m {
        for j in 0..2 * m {
            if i == j || sys.negative_index(i) == j {
                continue;
            }
            if ctx.sum_index(i, j).is_none() {
                continue;
            }
            let v = if i < m && j < m {
                ctx.n_pos(i, j, &len2, &string_p_plus_1)
            } else if i >= m && j >= m {
                -ctx.n_pos(i - m, j - m, &len2, &string_p_plus_1)
            } else if i < m {
                // N_{x, −y}
                ctx.mixed(i, j - m, &len2, &string_p_plus_1)
            } else {
                // N_{−y, x}
                -ctx.mixed(j, i - m, &len2, &string_p_plus_1)
            };
            if !q_is_integer(&v) || v.is_zero() {
                return Err(LieqError::IntegralityViolation(format!(
                    "structure constant N[{i},{j}] = {} is not a nonzero integer",
                    q_string(&v)
                )));
            }
            table.insert((i, j), v.numer().try_into().expect("constant overflow"));
        }
    }

    // Verify the defining magnitude and sign identities.
    for (&(i, j), &n) in &table {
        let expected = string_p_plus_1(i, j);
        if n.abs() != expected {
            return Err(LieqError::Counterexample(format!(
                "|N[{i},{j}]| = {} but the root string gives {}",
                n.abs(),
                expected
            )));
        }
        if table.get(&(j, i)) != Some(&-n) {
            return Err(LieqError::Counterexample(format!("N[{i},{j}] not antisymmetric")));
        }
        let (ni, nj) = (sys.negative_index(i), sys.negative_index(j));
        if table.get(&(ni, nj)) != Some(&-n) {
            return Err(LieqError::Counterexample(format!(
                "N[{i},{j}] violates the opposite-pair sign rule"
            )));
        }
    }

    let mut es: Vec<(usize, usize, i64)> = extraspecial
        .values()
        .map(|&(a, b)| (a, b, table[&(a, b)]))
        .collect();
    es.sort();
    Ok(StructureConstants { table, extraspecial: es })
}

/// A Chevalley basis of the complex algebra together with bracket tables,
/// adjoint matrices and the Killing Gram matrix.
///
/// Basis order: `X_β` for every root `β` (positives by (height, lex), then
/// their negatives in the same order), followed by `τ_α` for simple `α`.
#[derive(Clone, Debug)]
pub struct ChevalleyData {
    sys: Arc<RootSystem>,
    constants: StructureConstants,
    dim: usize,
    /// `bracket[i][j]` = coordinates of `[e_i, e_j]`, integer and sparse.
    bracket: Vec<Vec<SparseVec>>,
    killing: QMat,
}

impl ChevalleyData {
    pub fn new(sys: Arc<RootSystem>) -> Result<Self> {
        let constants = structure_constants(&sys)?;
        let m = sys.n_positive();
        let n = sys.rank();
        let dim = 2 * m + n;

        let mut bracket: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
        for i in 0..2 * m {
            for j in 0..2 * m {
                if i == j {
                    continue;
                }
                if sys.negative_index(i) == j {
                    // [X_α, X_{−α}] = τ_α
                    let root = if i < m { &sys.roots()[i] } else { &sys.roots()[j] };
                    let coroot = sys.coroot_coords(root)?;
                    let sign = if i < m { 1 } else { -1 };
                    bracket[i][j] = coroot
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (2 * m + k, sign * c))
                        .collect();
                    continue;
                }
                let sum: Vec<i64> = sys.roots()[i]
                    .coords
                    .iter()
                    .zip(&sys.roots()[j].coords)
                    .map(|(a, b)| a + b)
                    .collect();
                if let Some(s) = sys.root_index(&Root::new(sum)) {
                    let nij = constants.get(i, j).expect("constant for summing pair");
                    bracket[i][j] = vec![(s, nij)];
                }
            }
        }
        for k in 0..n {
            for j in 0..2 * m {
                let c = sys.root_to_weight(&sys.roots()[j]).fw[k];
                if c != 0 {
                    bracket[2 * m + k][j] = vec![(j, c)];
                    bracket[j][2 * m + k] = vec![(j, -c)];
                }
            }
        }

        let killing = killing_by_sparse_trace(&bracket, dim);
        Ok(ChevalleyData { sys, constants, dim, bracket, killing })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_roots(&self) -> usize {
        2 * self.sys.n_positive()
    }

    /// Index of `X_β` in the basis order.
    pub fn x_index(&self, beta: &Root) -> Option<usize> {
        self.sys.root_index(beta)
    }

    /// Index of `τ_i` in the basis order.
    pub fn tau_index(&self, i: usize) -> usize {
        2 * self.sys.n_positive() + i
    }

    pub fn basis_name(&self, i: usize) -> String {
        let m2 = self.n_roots();
        if i < m2 {
            format!("X{:?}", self.sys.roots()[i].coords)
        } else {
            format!("t{}", i - m2)
        }
    }

    /// `N_{α,β}`, defined when `α + β ∈ Φ`.
    pub fn structure_constant(&self, alpha: &Root, beta: &Root) -> Option<i64> {
        let i = self.sys.root_index(alpha)?;
        let j = self.sys.root_index(beta)?;
        self.constants.get(i, j)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.bracket[i][j]
    }

    pub fn bracket_gauss(&self, x: &[Gauss], y: &[Gauss]) -> Vec<Gauss> {
        let mut out = vec![Gauss::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for &(k, c) in &self.bracket[i][j] {
                    out[k] = out[k].clone() + xi.clone() * yj.clone() * gq(qi(c));
                }
            }
        }
        out
    }

    pub fn bracket_q(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for &(k, c) in &self.bracket[i][j] {
                    out[k] += xi * yj * qi(c);
                }
            }
        }
        out
    }

    /// Matrix of `ad e_i` on the basis order; entries are integers.
    pub fn adjoint_matrix(&self, i: usize) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for &(k, c) in &self.bracket[i][j] {
                m.set(k, j, qi(c));
            }
        }
        m
    }

    pub fn killing_gram(&self) -> &QMat {
        &self.killing
    }

    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        let gy = self.killing.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `τ_α` as a coordinate vector.
    pub fn coroot_vector(&self, alpha: &Root) -> Result<Vec<Q>> {
        let c = self.sys.coroot_coords(alpha)?;
        let mut v = vec![Q::zero(); self.dim];
        for (k, &ck) in c.iter().enumerate() {
            v[self.tau_index(k)] = qi(ck);
        }
        Ok(v)
    }

    /// `H_λ`, the Killing dual of a weight: `B(H, H_λ) = λ(H)` on the Cartan.
    pub fn weight_vector_h(&self, lam: &Weight) -> Vec<Q> {
        let n = self.sys.rank();
        let m2 = self.n_roots();
        // Solve the Cartan-block system B(τ_i, Σ c_j τ_j) = λ(τ_i) = q_i.
        let block = Mat::from_fn(n, n, |i, j| self.killing.at(m2 + i, m2 + j).clone());
        let rhs: Vec<Q> = lam.fw.iter().map(|&q| qi(q)).collect();
        let c = block.solve(&rhs).expect("Killing form nondegenerate on the Cartan");
        let mut v = vec![Q::zero(); self.dim];
        for (j, cj) in c.into_iter().enumerate() {
            v[m2 + j] = cj;
        }
        v
    }

    /// The linear map with `φ = −Id` on the Cartan and `φ(X_β) = −X_{−β}`.
    pub fn order_two_automorphism(&self) -> QMat {
        let mut f = QMat::zeros(self.dim, self.dim);
        let m2 = self.n_roots();
        for i in 0..m2 {
            f.set(self.sys.negative_index(i), i, qi(-1));
        }
        for k in m2..self.dim {
            f.set(k, k, qi(-1));
        }
        f
    }

    /// Jacobi identity on every ordered basis triple, exactly.
    pub fn verify_jacobi(&self) -> Result<()> {
        verify_jacobi_table(&self.bracket, self.dim)
    }

    /// Defining properties of the Killing form on this basis.
    pub fn verify_killing_properties(&self) -> Result<()> {
        let m2 = self.n_roots();
        if self.killing.rank() != self.dim {
            return Err(LieqError::Counterexample("Killing form is degenerate".into()));
        }
        for i in 0..m2 {
            for j in 0..m2 {
                let vanishes = self.killing.at(i, j).is_zero();
                let opposite = self.sys.negative_index(i) == j;
                if vanishes == opposite {
                    return Err(LieqError::Counterexample(format!(
                        "B(X_{i}, X_{j}) pairing pattern violated"
                    )));
                }
            }
            for k in 0..self.dim - m2 {
                if !self.killing.at(i, m2 + k).is_zero() {
                    return Err(LieqError::Counterexample(
                        "root spaces must be B-orthogonal to the Cartan".into(),
                    ));
                }
            }
        }
        for (idx, alpha) in self.sys.roots().iter().enumerate() {
            let alpha_w = self.sys.root_to_weight(alpha);
            let h_alpha = self.weight_vector_h(&alpha_w);
            // B(τ_i, H_α) = α(τ_i), re-checked exactly.
            for i in 0..self.sys.rank() {
                let mut tau_i = vec![Q::zero(); self.dim];
                tau_i[self.tau_index(i)] = Q::one();
                if self.killing(&tau_i, &h_alpha) != qi(alpha_w.fw[i]) {
                    return Err(LieqError::Counterexample("B(H, H_a) != a(H)".into()));
                }
            }
            // τ_α = 2 H_α / B(H_α, H_α)
            let tau = self.coroot_vector(alpha)?;
            let bhh = self.killing(&h_alpha, &h_alpha);
            for k in 0..self.dim {
                if tau[k].clone() * bhh.clone() != qi(2) * h_alpha[k].clone() {
                    return Err(LieqError::Counterexample(
                        "coroot normalization against the Killing form failed".into(),
                    ));
                }
            }
            // [X_α, X_{−α}] = B(X_α, X_{−α}) H_α
            let neg = self.sys.negative_index(idx);
            let mut x = vec![Q::zero(); self.dim];
            x[idx] = Q::one();
            let mut y = vec![Q::zero(); self.dim];
            y[neg] = Q::one();
            let lhs = self.bracket_q(&x, &y);
            let b = self.killing(&x, &y);
            for k in 0..self.dim {
                if lhs[k] != b.clone() * h_alpha[k].clone() {
                    return Err(LieqError::Counterexample(
                        "[X_a, X_-a] != B(X_a, X_-a) H_a".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Checks that the order-2 map is an automorphism squaring to the identity.
    pub fn verify_order_two_automorphism(&self) -> Result<QMat> {
        let f = self.order_two_automorphism();
        if f.mul(&f) != QMat::identity(self.dim) {
            return Err(LieqError::Counterexample("square is not the identity".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut ei = vec![Q::zero(); self.dim];
                ei[i] = Q::one();
                let mut ej = vec![Q::zero(); self.dim];
                ej[j] = Q::one();
                let lhs = f.mul_vec(&self.bracket_q(&ei, &ej));
                let rhs = self.bracket_q(&f.mul_vec(&ei), &f.mul_vec(&ej));
                if lhs != rhs {
                    return Err(LieqError::Counterexample(format!(
                        "not an automorphism at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn to_json(&self) -> Value {
        let mut triples = Vec::new();
        let mut keys: Vec<(usize, usize)> = self.constants.table.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            triples.push(json!({
                "alpha": self.sys.roots()[i].coords,
                "beta": self.sys.roots()[j].coords,
                "n": self.constants.table[&(i, j)],
            }));
        }
        let gram: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| q_string(self.killing.at(i, j))).collect())
            .collect();
        json!({
            "schema": "chevalley/1",
            "type": self.sys.type_name(),
            "dim": self.dim,
            "basis": (0..self.dim).map(|i| self.basis_name(i)).collect::<Vec<_>>(),
            "n_table": triples,
            "killing_gram": gram,
        })
    }
}

fn killing_by_sparse_trace(bracket: &[Vec<SparseVec>], dim: usize) -> QMat {
    // trace(ad x ∘ ad y) summed over sparse columns.
    let mut gram = QMat::zeros(dim, dim);
    for x in 0..dim {
        for y in x..dim {
            let mut acc = 0i64;
            for k in 0..dim {
                // (ad y)(e_k), then the e_k coefficient of (ad x) of that.
                for &(l, c1) in &bracket[y][k] {
                    for &(k2, c2) in &bracket[x][l] {
                        if k2 == k {
                            acc += c1 * c2;
                        }
                    }
                }
            }
            gram.set(x, y, qi(acc));
            gram.set(y, x, qi(acc));
        }
    }
    gram
}

fn verify_jacobi_table(bracket: &[Vec<SparseVec>], dim: usize) -> Result<()> {
    // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on all basis triples.
    let compose = |inner: &SparseVec, z: usize, acc: &mut HashMap<usize, i64>| {
        for &(k, c) in inner {
            for &(l, c2) in &bracket[k][z] {
                *acc.entry(l).or_insert(0) += c * c2;
            }
        }
    };
    for x in 0..dim {
        for y in (x + 1)..dim {
            for z in (y + 1)..dim {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                compose(&bracket[x][y], z, &mut acc);
                compose(&bracket[y][z], x, &mut acc);
                compose(&bracket[z][x], y, &mut acc);
                if acc.values().any(|&v| v != 0) {
                    return Err(LieqError::Counterexample(format!(
                        "Jacobi fails on basis triple ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The compact real form on the basis `{τ̃_α ; A_β, B_β}` with integer
/// structure constants and the positive-definite Gram matrix of `−B0`.
///
/// Basis order: `τ̃_1 .. τ̃_n`, then `A_β, B_β` interleaved over the positive
/// roots in their stored order.
#[derive(Clone, Debug)]
pub struct CompactAlgebra {
    chev: Arc<ChevalleyData>,
    dim: usize,
    bracket: Vec<Vec<SparseVec>>,
    minus_b0: QMat,
}

impl CompactAlgebra {
    pub fn new(chev: Arc<ChevalleyData>) -> Result<Self> {
        let sys = chev.system().clone();
        let n = sys.rank();
        let m = sys.n_positive();
        let dim = n + 2 * m;
        assert_eq!(dim, chev.dim());

        let to_cplx = compact_to_complex_matrix(&chev);
        let from_cplx = complex_to_compact_matrix(&chev);

        let mut bracket: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            let xi = to_cplx.col(i);
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let xj = to_cplx.col(j);
                let br = chev.bracket_gauss(&xi, &xj);
                let back = from_cplx.mul_vec(&br);
                let mut sp = Vec::new();
                for (k, v) in back.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if !v.im.is_zero() || !q_is_integer(&v.re) {
                        return Err(LieqError::IntegralityViolation(format!(
                            "compact constant at ({i},{j},{k}) = {}",
                            gauss_string(v)
                        )));
                    }
                    sp.push((k, v.re.numer().try_into().expect("overflow")));
                }
                bracket[i][j] = sp;
            }
        }

        let killing0 = killing_by_sparse_trace(&bracket, dim);
        let minus_b0 = killing0.neg();
        // The A/B part of the adapted basis is orthogonal and orthogonal to
        // the Cartan part; the Cartan block itself is the coroot Gram matrix
        // Σ_λ λ(τ_i) λ(τ_j), which has off-diagonal entries for rank ≥ 2.
        for i in 0..dim {
            for j in 0..dim {
                let v = minus_b0.at(i, j);
                if i == j && v <= &Q::zero() {
                    return Err(LieqError::Counterexample(
                        "-B0 must be positive on the diagonal".into(),
                    ));
                }
                if i != j && (i >= n || j >= n) && !v.is_zero() {
                    return Err(LieqError::Counterexample(
                        "adapted basis must be -B0-orthogonal outside the Cartan block".into(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expected: i64 = sys
                    .roots()
                    .iter()
                    .map(|r| {
                        let fw = sys.root_to_weight(r);
                        fw.fw[i] * fw.fw[j]
                    })
                    .sum();
                if minus_b0.at(i, j) != &qi(expected) {
                    return Err(LieqError::Counterexample(
                        "Cartan block of -B0 must equal the coroot pairing sum".into(),
                    ));
                }
            }
        }
        if minus_b0.rank() != dim {
            return Err(LieqError::Counterexample("-B0 must be nondegenerate".into()));
        }

        Ok(CompactAlgebra { chev, dim, bracket, minus_b0 })
    }

    pub fn chevalley(&self) -> &Arc<ChevalleyData> {
        &self.chev
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.chev.system()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.chev.system().rank()
    }

    /// Index of `τ̃_i`.
    pub fn tau_tilde_index(&self, i: usize) -> usize {
        i
    }

    /// Index of `A_β` for the `p`-th positive root.
    pub fn a_index(&self, p: usize) -> usize {
        self.rank() + 2 * p
    }

    /// Index of `B_β` for the `p`-th positive root.
    pub fn b_index(&self, p: usize) -> usize {
        self.rank() + 2 * p + 1
    }

    pub fn basis_name(&self, i: usize) -> String {
        let n = self.rank();
        if i < n {
            return format!("it{}", i);
        }
        let p = (i - n) / 2;
        let coords = &self.system().roots()[p].coords;
        if (i - n) % 2 == 0 {
            format!("A{:?}", coords)
        } else {
            format!("B{:?}", coords)
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.bracket[i][j]
    }

    pub fn bracket_q(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for &(k, c) in &self.bracket[i][j] {
                    out[k] += xi * yj * qi(c);
                }
            }
        }
        out
    }

    /// Matrix of `ad Z` on the compact basis; integer entries.
    pub fn ad_matrix(&self, i: usize) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for &(k, c) in &self.bracket[i][j] {
                m.set(k, j, qi(c));
            }
        }
        m
    }

    /// Gram matrix of `−B0` on this basis: positive definite, diagonal on
    /// the `A`/`B` part, with the coroot Gram matrix as its Cartan block.
    pub fn minus_b0(&self) -> &QMat {
        &self.minus_b0
    }

    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let gy = self.minus_b0.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Coordinate change from compact coordinates to Chevalley coordinates.
    pub fn to_complex_matrix(&self) -> GMat {
        compact_to_complex_matrix(&self.chev)
    }

    pub fn from_complex_matrix(&self) -> GMat {
        complex_to_compact_matrix(&self.chev)
    }

    /// `τ̃_α = i τ_α` in compact coordinates, for any root.
    pub fn tau_tilde_vector(&self, alpha: &Root) -> Result<Vec<Q>> {
        let c = self.system().coroot_coords(alpha)?;
        let mut v = vec![Q::zero(); self.dim];
        for (k, &ck) in c.iter().enumerate() {
            v[k] = qi(ck);
        }
        Ok(v)
    }

    /// `B(X_β, J0 X_β) = −B(X_β, X_{−β})` for the `p`-th positive root, the
    /// scalar appearing in `[A_β, B_β] = −2 B(X_β, J0 X_β) (iH_β)`.
    pub fn b_x_j0x(&self, p: usize) -> Q {
        let chev_gram = self.chev.killing_gram();
        let neg = self.system().negative_index(p);
        -chev_gram.at(p, neg).clone()
    }

    pub fn verify_jacobi(&self) -> Result<()> {
        verify_jacobi_table(&self.bracket, self.dim)
    }

    /// The bracket relations tying `τ̃`, `A`, `B` together, for every
    /// positive root and every simple coroot direction.
    pub fn verify_adapted_relations(&self) -> Result<()> {
        let n = self.rank();
        let sys = self.system().clone();
        for p in 0..sys.n_positive() {
            let beta = &sys.roots()[p];
            let beta_fw = sys.root_to_weight(beta);
            for i in 0..n {
                // [τ̃_i, A_β] = β(τ_i) B_β and [τ̃_i, B_β] = −β(τ_i) A_β
                let c = beta_fw.fw[i];
                let ta = self.bracket[i][self.a_index(p)].clone();
                let expected_a: SparseVec =
                    if c == 0 { vec![] } else { vec![(self.b_index(p), c)] };
                if ta != expected_a {
                    return Err(LieqError::Counterexample(format!(
                        "[it_{i}, A] relation fails for positive root {p}"
                    )));
                }
                let tb = self.bracket[i][self.b_index(p)].clone();
                let expected_b: SparseVec =
                    if c == 0 { vec![] } else { vec![(self.a_index(p), -c)] };
                if tb != expected_b {
                    return Err(LieqError::Counterexample(format!(
                        "[it_{i}, B] relation fails for positive root {p}"
                    )));
                }
            }
            // [A_β, B_β] = 2 τ̃_β
            let ab = self.bracket[self.a_index(p)][self.b_index(p)].clone();
            let tt = self.tau_tilde_vector(beta)?;
            let mut expected: SparseVec = tt
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, 2 * i64::try_from(v.numer().clone()).unwrap()))
                .collect();
            expected.sort();
            let mut got = ab.clone();
            got.sort();
            if got != expected {
                return Err(LieqError::Counterexample(format!(
                    "[A, B] != 2 τ̃ for positive root {p}"
                )));
            }
            // The scalar −2 B(X_β, J0 X_β) multiplying iH_β must be positive.
            let b_val = self.b_x_j0x(p);
            if b_val >= Q::zero() {
                return Err(LieqError::Counterexample(
                    "B(X, J0 X) must be negative".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let diag: Vec<String> =
            (0..self.dim).map(|i| q_string(self.minus_b0.at(i, i))).collect();
        json!({
            "schema": "compact/1",
            "type": self.system().type_name(),
            "dim": self.dim,
            "basis": (0..self.dim).map(|i| self.basis_name(i)).collect::<Vec<_>>(),
            "minus_b0_diagonal": diag,
            "b_x_j0x": (0..self.system().n_positive())
                .map(|p| q_string(&self.b_x_j0x(p)))
                .collect::<Vec<_>>(),
        })
    }
}

/// Columns send `τ̃_i ↦ i τ_i`, `A_β ↦ X_β − X_{−β}`, `B_β ↦ iX_β + iX_{−β}`.
fn compact_to_complex_matrix(chev: &ChevalleyData) -> GMat {
    let sys = chev.system();
    let n = sys.rank();
    let m = sys.n_positive();
    let dim = chev.dim();
    let mut s = GMat::zeros(dim, dim);
    let iu = imag_unit();
    for i in 0..n {
        s.set(chev.tau_index(i), i, iu.clone());
    }
    for p in 0..m {
        let neg = sys.negative_index(p);
        s.set(p, n + 2 * p, Gauss::one());
        s.set(neg, n + 2 * p, -Gauss::one());
        s.set(p, n + 2 * p + 1, iu.clone());
        s.set(neg, n + 2 * p + 1, iu.clone());
    }
    s
}

/// Columns send `X_β ↦ (A_β − iB_β)/2`, `X_{−β} ↦ −(A_β + iB_β)/2`,
/// `τ_i ↦ −i τ̃_i`.
fn complex_to_compact_matrix(chev: &ChevalleyData) -> GMat {
    let sys = chev.system();
    let n = sys.rank();
    let m = sys.n_positive();
    let dim = chev.dim();
    let mut s = GMat::zeros(dim, dim);
    let iu = imag_unit();
    let half = gq(crate::scalar::qr(1, 2));
    for i in 0..n {
        s.set(i, chev.tau_index(i), -iu.clone());
    }
    for p in 0..m {
        let neg = sys.negative_index(p);
        s.set(n + 2 * p, p, half.clone());
        s.set(n + 2 * p + 1, p, -iu.clone() * half.clone());
        s.set(n + 2 * p, neg, -half.clone());
        s.set(n + 2 * p + 1, neg, -iu.clone() * half.clone());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::{Family, SimpleType};

    fn chev(f: Family, n: usize) -> ChevalleyData {
        let sys = Arc::new(RootSystem::simple(SimpleType::new(f, n).unwrap()).unwrap());
        ChevalleyData::new(sys).unwrap()
    }

    #[test]
    fn a2_constants_have_magnitude_one() {
        let cd = chev(Family::A, 2);
        let a1 = cd.system().simple_root(0);
        let a2 = cd.system().simple_root(1);
        assert_eq!(cd.structure_constant(&a1, &a2).unwrap().abs(), 1);
        // undefined when the sum is not a root
        let high = Root::new(vec![1, 1]);
        assert!(cd.structure_constant(&a1, &high).is_none());
    }

    #[test]
    fn g2_long_string_constant() {
        let cd = chev(Family::G, 2);
        let a1 = cd.system().simple_root(0);
        let a12 = Root::new(vec![1, 1]);
        assert_eq!(cd.structure_constant(&a1, &a12).unwrap().abs(), 2);
    }

    #[test]
    fn jacobi_holds_for_small_types() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let cd = chev(f, n);
            cd.verify_jacobi().unwrap();
        }
    }

    #[test]
    fn adjoint_matrices_are_integral_and_bracket_compatible() {
        let cd = chev(Family::A, 2);
        for i in 0..cd.dim() {
            assert!(cd.adjoint_matrix(i).is_integral());
        }
        // ad of a Cartan element is diagonal on the root vectors
        let t0 = cd.adjoint_matrix(cd.tau_index(0));
        for j in 0..cd.n_roots() {
            let fw = cd.system().root_to_weight(&cd.system().roots()[j]);
            assert_eq!(t0.at(j, j), &qi(fw.fw[0]));
        }
        // matrix of the bracket equals the bracket of the matrices
        for i in 0..cd.dim() {
            for j in 0..cd.dim() {
                let mut ei = vec![Q::zero(); cd.dim()];
                ei[i] = Q::one();
                let mut ej = vec![Q::zero(); cd.dim()];
                ej[j] = Q::one();
                let br = cd.bracket_q(&ei, &ej);
                let mut ad_br = QMat::zeros(cd.dim(), cd.dim());
                for (k, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        let adk = cd.adjoint_matrix(k);
                        ad_br = ad_br.add(&adk.scale(c));
                    }
                }
                let comm = cd.adjoint_matrix(i).commutator(&cd.adjoint_matrix(j));
                assert_eq!(ad_br, comm);
            }
        }
    }

    #[test]
    fn a1_killing_value() {
        let cd = chev(Family::A, 1);
        let tau = cd.coroot_vector(&cd.system().simple_root(0)).unwrap();
        assert_eq!(cd.killing(&tau, &tau), qi(8));
        cd.verify_killing_properties().unwrap();
    }

    #[test]
    fn killing_properties_hold_for_b2_and_g2() {
        chev(Family::B, 2).verify_killing_properties().unwrap();
        chev(Family::G, 2).verify_killing_properties().unwrap();
    }

    #[test]
    fn highest_root_vector_is_annihilated_by_itself() {
        let cd = chev(Family::A, 2);
        let bmax = cd.system().beta_max().unwrap().clone();
        let idx = cd.x_index(&bmax).unwrap();
        let ad = cd.adjoint_matrix(idx);
        let mut e = vec![Q::zero(); cd.dim()];
        e[idx] = Q::one();
        assert!(ad.mul_vec(&e).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn order_two_automorphism_checks() {
        for (f, n) in [(Family::A, 2), (Family::C, 2)] {
            let cd = chev(f, n);
            let phi = cd.verify_order_two_automorphism().unwrap();
            // φ(τ) = −τ
            let tau = cd.coroot_vector(&cd.system().simple_root(0)).unwrap();
            let im: Vec<Q> = phi.mul_vec(&tau);
            assert_eq!(im, tau.iter().map(|x| -x.clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn compact_basis_relations() {
        for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let cd = Arc::new(chev(f, n));
            let c0 = CompactAlgebra::new(cd).unwrap();
            c0.verify_adapted_relations().unwrap();
            c0.verify_jacobi().unwrap();
        }
    }

    #[test]
    fn compact_cartan_gram_matches_root_sum() {
        let cd = Arc::new(chev(Family::A, 2));
        let c0 = CompactAlgebra::new(cd).unwrap();
        let sys = c0.system().clone();
        for i in 0..2 {
            let expected: i64 = sys
                .roots()
                .iter()
                .map(|r| {
                    let fw = sys.root_to_weight(r);
                    fw.fw[i] * fw.fw[i]
                })
                .sum();
            assert_eq!(c0.minus_b0().at(i, i), &qi(expected));
        }
    }
}
