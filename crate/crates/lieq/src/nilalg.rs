//! The metric 2-step nilpotent Lie algebra `N = U + g0`: bracket tensor,
//! centers, real weight vectors, ad-ranges, and the automorphism/derivation
//! and zero-weight verification suites.
//!
//! Coordinates on `N` are the module coordinates of `U` followed by the
//! compact basis coordinates of `g0`. The bracket of two `U` vectors is the
//! unique `g0` vector dual to `u, u' -> <Z(u), u'>` under the inner product
//! `-B0` on `g0`; `g0` is central.

use crate::chevalley::CompactAlgebra;
use crate::error::{LieqError, Result};
use crate::matrix::{Mat, QMat, Subspace};
use crate::module::{invert_q, weyl_operator_real, RealModule};
use crate::root::{Root, Weight};
use crate::scalar::{q_string, qi, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::sync::Arc;

/// `N = U + g0` with its inner product and full bracket tensor.
#[derive(Clone, Debug)]
pub struct MetricNilpotent {
    module: Arc<RealModule>,
    dim_u: usize,
    dim_g: usize,
    /// `bracket[i][j]` = compact coordinates of `[e_i, e_j]` for `U` basis
    /// pairs; antisymmetric in `(i, j)`.
    bracket: Vec<Vec<Vec<Q>>>,
}

impl MetricNilpotent {
    /// Assembles the bracket tensor and checks the defining duality, the
    /// antisymmetry, the orthogonality of `U` and `g0`, and centrality.
    pub fn build(module: Arc<RealModule>) -> Result<MetricNilpotent> {
        module.verify_inner_product()?;
        let compact = module.compact().clone();
        let dim_u = module.dim();
        let dim_g = compact.dim();
        let gram_g = compact.minus_b0();
        let gram_g_inv = invert_q(gram_g);

        let mut bracket = vec![vec![Vec::new(); dim_u]; dim_u];
        let mut unit = |k: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); dim_u];
            v[k] = Q::one();
            v
        };
        for i in 0..dim_u {
            for j in 0..dim_u {
                // rhs_z = <Z_z(e_i), e_j>; then [e_i, e_j] = gram^{-1} rhs.
                let ei = unit(i);
                let ej = unit(j);
                let rhs: Vec<Q> = (0..dim_g)
                    .map(|z| module.inner(&module.action0(z).mul_vec(&ei), &ej))
                    .collect();
                bracket[i][j] = gram_g_inv.mul_vec(&rhs);
            }
        }
        for i in 0..dim_u {
            for j in 0..dim_u {
                for k in 0..dim_g {
                    if bracket[i][j][k] != -bracket[j][i][k].clone() {
                        return Err(LieqError::Counterexample(
                            "bracket tensor must be antisymmetric".into(),
                        ));
                    }
                }
            }
        }
        let n = MetricNilpotent { module, dim_u, dim_g, bracket };
        n.verify_defining_duality()?;
        Ok(n)
    }

    pub fn module(&self) -> &Arc<RealModule> {
        &self.module
    }

    pub fn compact(&self) -> &Arc<CompactAlgebra> {
        self.module.compact()
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim(&self) -> usize {
        self.dim_u + self.dim_g
    }

    /// Embeds a `U` vector into `N` coordinates.
    pub fn embed_u(&self, u: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[..self.dim_u].clone_from_slice(u);
        v
    }

    /// Embeds a `g0` vector into `N` coordinates.
    pub fn embed_g(&self, g: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[self.dim_u..].clone_from_slice(g);
        v
    }

    pub fn split<'a>(&self, x: &'a [Q]) -> (&'a [Q], &'a [Q]) {
        (&x[..self.dim_u], &x[self.dim_u..])
    }

    /// The 2-step bracket on `N` coordinates: only the `U` parts contribute
    /// and the value lies in `g0`.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut g = vec![Q::zero(); self.dim_g];
        for i in 0..self.dim_u {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim_u {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..self.dim_g {
                    if !self.bracket[i][j][k].is_zero() {
                        g[k] += &x[i] * &y[j] * &self.bracket[i][j][k];
                    }
                }
            }
        }
        self.embed_g(&g)
    }

    /// Bracket landing in `g0` coordinates (not embedded).
    pub fn bracket_to_g(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let full = self.bracket(x, y);
        full[self.dim_u..].to_vec()
    }

    /// Block inner product: the module Gram on `U`, `-B0` on `g0`, the two
    /// blocks orthogonal.
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let (xu, xg) = self.split(x);
        let (yu, yg) = self.split(y);
        self.module.inner(xu, yu) + self.compact().inner(xg, yg)
    }

    pub fn inner_gram(&self) -> QMat {
        let g_u = self.module.inner_gram();
        let g_g = self.compact().minus_b0();
        Mat::from_fn(self.dim(), self.dim(), |r, c| {
            if r < self.dim_u && c < self.dim_u {
                g_u.at(r, c).clone()
            } else if r >= self.dim_u && c >= self.dim_u {
                g_g.at(r - self.dim_u, c - self.dim_u).clone()
            } else {
                Q::zero()
            }
        })
    }

    /// `<[u, u'], Z> = <Z(u), u'>` on all basis triples, exactly.
    pub fn verify_defining_duality(&self) -> Result<()> {
        for i in 0..self.dim_u {
            let mut ei = vec![Q::zero(); self.dim_u];
            ei[i] = Q::one();
            for j in 0..self.dim_u {
                let mut ej = vec![Q::zero(); self.dim_u];
                ej[j] = Q::one();
                let br = self.bracket_to_g(&self.embed_u(&ei), &self.embed_u(&ej));
                for z in 0..self.dim_g {
                    let mut ez = vec![Q::zero(); self.dim_g];
                    ez[z] = Q::one();
                    let lhs = self.compact().inner(&br, &ez);
                    let rhs = self.module.inner(&self.module.action0(z).mul_vec(&ei), &ej);
                    if lhs != rhs {
                        return Err(LieqError::Counterexample(format!(
                            "defining duality fails at (u{i}, u{j}, z{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// 2-step nilpotency: `[[x, y], z] = 0` because brackets land in the
    /// central `g0`; asserted on the tensor.
    pub fn verify_two_step(&self) -> Result<()> {
        for i in 0..self.dim_u {
            let mut ei = vec![Q::zero(); self.dim()];
            ei[i] = Q::one();
            for j in 0..self.dim_u {
                let mut ej = vec![Q::zero(); self.dim()];
                ej[j] = Q::one();
                let br = self.bracket(&ei, &ej);
                let (bu, _) = self.split(&br);
                if bu.iter().any(|x| !x.is_zero()) {
                    return Err(LieqError::Counterexample(
                        "brackets must land in the center".into(),
                    ));
                }
                for k in 0..self.dim() {
                    let mut ek = vec![Q::zero(); self.dim()];
                    ek[k] = Q::one();
                    let double = self.bracket(&br, &ek);
                    if double.iter().any(|x| !x.is_zero()) {
                        return Err(LieqError::Counterexample(
                            "algebra must be 2-step nilpotent".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The derived algebra `[N, N]` as a subspace of `g0` coordinates.
    pub fn derived_algebra(&self) -> Subspace<Q> {
        let mut vecs = Vec::new();
        for i in 0..self.dim_u {
            for j in (i + 1)..self.dim_u {
                vecs.push(self.bracket[i][j].clone());
            }
        }
        Subspace::from_spanning(self.dim_g, &vecs)
    }

    /// Common kernel of the `g0` action on `U`.
    pub fn g0_kernel_on_u(&self) -> Subspace<Q> {
        let mut stacked = QMat::zeros(0, self.dim_u);
        for z in 0..self.dim_g {
            stacked = stacked.vstack(self.module.action0(z));
        }
        Subspace::from_spanning(self.dim_u, &stacked.kernel())
    }

    /// The center `{x : [x, N] = 0}` in `N` coordinates; equals
    /// `g0 + Ker(g0)` and is exactly `g0` iff the action kernel vanishes.
    pub fn center(&self) -> Subspace<Q> {
        // x central iff its U part brackets to zero with every U basis vector.
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for j in 0..self.dim_u {
            for k in 0..self.dim_g {
                let row: Vec<Q> =
                    (0..self.dim_u).map(|i| self.bracket[i][j][k].clone()).collect();
                rows.push(row);
            }
        }
        let u_central = Mat::from_rows(rows).kernel();
        let mut vecs: Vec<Vec<Q>> = u_central.iter().map(|u| self.embed_u(u)).collect();
        for z in 0..self.dim_g {
            let mut g = vec![Q::zero(); self.dim_g];
            g[z] = Q::one();
            vecs.push(self.embed_g(&g));
        }
        let center = Subspace::from_spanning(self.dim(), &vecs);
        // cross-check against the action kernel
        let expected = self.g0_kernel_on_u().dim() + self.dim_g;
        assert_eq!(center.dim(), expected, "center must be g0 plus the action kernel");
        center
    }

    /// `g0` as a subspace of `N`.
    pub fn g0_subspace(&self) -> Subspace<Q> {
        Subspace::from_spanning(
            self.dim(),
            &(0..self.dim_g)
                .map(|z| {
                    let mut g = vec![Q::zero(); self.dim_g];
                    g[z] = Q::one();
                    self.embed_g(&g)
                })
                .collect::<Vec<_>>(),
        )
    }

    /// The root-pair plane `span{A_b, B_b}` in `g0` coordinates, the zero
    /// subspace when the weight argument is not (plus or minus) a root.
    pub fn g0_root_plane(&self, w: &Weight) -> Subspace<Q> {
        let sys = self.module.system().clone();
        let m = sys.n_positive();
        match sys.root_index_by_fw(&w.fw) {
            None => Subspace::zero(self.dim_g),
            Some(idx) => {
                let p = if idx < m { idx } else { idx - m };
                let mut a = vec![Q::zero(); self.dim_g];
                a[self.compact().a_index(p)] = Q::one();
                let mut b = vec![Q::zero(); self.dim_g];
                b[self.compact().b_index(p)] = Q::one();
                Subspace::from_spanning(self.dim_g, &[a, b])
            }
        }
    }

    /// The Cartan part of `g0` (the first `rank` coordinates).
    pub fn h0_subspace_g(&self) -> Subspace<Q> {
        let n = self.module.system().rank();
        Subspace::from_spanning(
            self.dim_g,
            &(0..n)
                .map(|i| {
                    let mut v = vec![Q::zero(); self.dim_g];
                    v[i] = Q::one();
                    v
                })
                .collect::<Vec<_>>(),
        )
    }

    /// The real weight vector of `lam` in `g0` coordinates: the unique
    /// Cartan vector with `<t_i, H~> = <lam, a_i>` against `-B0`; verified
    /// to match the Killing dual of the weight.
    pub fn real_weight_vector(&self, lam: &Weight) -> Vec<Q> {
        let sys = self.module.system().clone();
        let n = sys.rank();
        let gram = self.compact().minus_b0();
        let block = Mat::from_fn(n, n, |i, j| gram.at(i, j).clone());
        let rhs: Vec<Q> = lam.fw.iter().map(|&q| qi(q)).collect();
        let coeffs = block.solve(&rhs).expect("Cartan Gram is nondegenerate");
        // The same coefficients describe the Killing dual on the complex side.
        let h = self.module.chevalley().weight_vector_h(lam);
        let m2 = self.module.chevalley().n_roots();
        for (j, c) in coeffs.iter().enumerate() {
            assert_eq!(c, &h[m2 + j], "real weight vector must match the Killing dual");
        }
        let mut v = vec![Q::zero(); self.dim_g];
        v[..n].clone_from_slice(&coeffs);
        v
    }

    /// `i β(H~_lam)` as a rational number (used by the quaternionic center).
    pub fn i_beta_of(&self, h_tilde: &[Q], beta: &Root) -> Q {
        let sys = self.module.system().clone();
        let beta_fw = sys.root_to_weight(beta);
        let n = sys.rank();
        -(0..n).map(|j| h_tilde[j].clone() * qi(beta_fw.fw[j])).sum::<Q>()
    }

    /// Bracket-span relations over the weight decomposition:
    /// `[U_0, U_l]` is the root plane of `l`, `[U_m, U_l]` for distinct
    /// non-opposite weights is the sum of the two shifted root planes,
    /// `[U_0, U_0] = 0`, and `[U_l, U_l]` spans the real weight vector when
    /// `2l` is not a root.
    pub fn verify_bracket_relations(&self) -> Result<()> {
        let sys = self.module.system().clone();
        let zero = Weight::zero(sys.rank());
        let mut lams: Vec<Weight> = self.module.lambda_plus().to_vec();
        lams.push(zero.clone());

        let span_of = |a: &Subspace<Q>, b: &Subspace<Q>| -> Subspace<Q> {
            let mut vecs = Vec::new();
            for x in a.basis_vectors() {
                for y in b.basis_vectors() {
                    vecs.push(self.bracket_to_g(&self.embed_u(&x), &self.embed_u(&y)));
                }
            }
            Subspace::from_spanning(self.dim_g, &vecs)
        };

        // [U_0, U_0] = 0
        let u0 = self.module.u_zero().clone();
        if !span_of(&u0, &u0).is_zero() {
            return Err(LieqError::Counterexample("[U_0, U_0] must vanish".into()));
        }

        for lam in self.module.lambda_plus() {
            let ul = self.module.u_weight_space(lam);
            // [U_0, U_l] = root plane of l
            let got = span_of(&u0, &ul);
            let expected = self.g0_root_plane(lam);
            if got != expected {
                return Err(LieqError::Counterexample(format!(
                    "[U_0, U_l] mismatch at weight {:?}",
                    lam.fw
                )));
            }
            // [U_l, U_l] = R Hl when 2l is not a root
            let two = lam.add(lam);
            if sys.root_index_by_fw(&two.fw).is_none() {
                let h = self.real_weight_vector(lam);
                let got = span_of(&ul, &ul);
                let expected = Subspace::from_spanning(self.dim_g, &[h]);
                if got != expected {
                    return Err(LieqError::Counterexample(format!(
                        "[U_l, U_l] must span the real weight vector at {:?}",
                        lam.fw
                    )));
                }
            }
        }

        // distinct pairs
        for a in 0..self.module.lambda_plus().len() {
            for b in 0..self.module.lambda_plus().len() {
                if a == b {
                    continue;
                }
                let mu = &self.module.lambda_plus()[a];
                let lam = &self.module.lambda_plus()[b];
                let got = span_of(
                    &self.module.u_weight_space(mu),
                    &self.module.u_weight_space(lam),
                );
                let expected = self
                    .g0_root_plane(&mu.add(lam))
                    .sum(&self.g0_root_plane(&mu.sub(lam)));
                if got != expected {
                    return Err(LieqError::Counterexample(format!(
                        "[U_m, U_l] mismatch at ({:?}, {:?})",
                        mu.fw, lam.fw
                    )));
                }
            }
        }
        Ok(())
    }

    /// Image of `ad u` computed directly and as the orthocomplement of the
    /// stabilizer of `u` in `g0`; asserted equal, then returned.
    pub fn ad_range(&self, u: &[Q]) -> Result<Subspace<Q>> {
        assert_eq!(u.len(), self.dim_u);
        let mut vecs = Vec::new();
        for j in 0..self.dim_u {
            let mut ej = vec![Q::zero(); self.dim_u];
            ej[j] = Q::one();
            vecs.push(self.bracket_to_g(&self.embed_u(u), &self.embed_u(&ej)));
        }
        let image = Subspace::from_spanning(self.dim_g, &vecs);

        // stabilizer {X in g0 : X(u) = 0}
        let cols: Vec<Vec<Q>> =
            (0..self.dim_g).map(|z| self.module.action0(z).mul_vec(u)).collect();
        let stab_coords = Mat::from_cols(cols).kernel();
        let gram = self.compact().minus_b0();
        let rows: Vec<Vec<Q>> = stab_coords.iter().map(|s| gram.mul_vec(s)).collect();
        let ortho = if rows.is_empty() {
            Subspace::full(self.dim_g)
        } else {
            Subspace::from_spanning(self.dim_g, &Mat::from_rows(rows).kernel())
        };
        if image != ortho {
            return Err(LieqError::Counterexample(
                "ad-image must be the stabilizer orthocomplement".into(),
            ));
        }
        Ok(image)
    }

    /// Image of `ad u_l` for a weight vector, together with a sharpness
    /// flag: containment in `R Hl + plane(l) + sum of planes over the
    /// shifted-root set` always holds; when the weight avoids the doubled
    /// root equations and the vector is generic the containment is an
    /// equality.
    pub fn ad_range_weight(
        &self,
        lam: &Weight,
        u_lam: &[Q],
    ) -> Result<(Subspace<Q>, bool)> {
        let sys = self.module.system().clone();
        let ul = self.module.u_weight_space(lam);
        if !ul.contains(u_lam) {
            return Err(LieqError::Precondition(
                "vector must lie in the weight space".into(),
            ));
        }
        let image = self.ad_range(u_lam)?;

        // predicted span
        let mut expected = Subspace::from_spanning(
            self.dim_g,
            &[self.real_weight_vector(lam)],
        );
        expected = expected.sum(&self.g0_root_plane(lam));
        let mut phi_lam: Vec<Root> = Vec::new();
        for alpha in sys.roots() {
            let shifted = lam.sub(&sys.root_to_weight(alpha));
            if !self.module.v_weight_space(&shifted).is_zero() {
                phi_lam.push(alpha.clone());
                expected = expected.sum(&self.g0_root_plane(&sys.root_to_weight(alpha)));
            }
        }
        if !expected.contains_subspace(&image) {
            return Err(LieqError::Counterexample(
                "ad-image of a weight vector leaves the predicted span".into(),
            ));
        }

        // the doubled-root equations exclude sharpness claims
        let two = lam.add(lam);
        let mut excluded = sys.root_index_by_fw(&two.fw).is_some();
        if !excluded {
            'outer: for alpha in sys.roots() {
                let rest = two.sub(&sys.root_to_weight(alpha));
                if sys.root_index_by_fw(&rest.fw).is_some() {
                    excluded = true;
                    break 'outer;
                }
            }
        }
        if excluded {
            return Ok((image, false));
        }

        // genericity of the vector: nonvanishing of X_{-a} on its V_l part
        let v_lam = self.v_component(lam, u_lam)?;
        let chev = self.module.chevalley().clone();
        let mut generic = true;
        for alpha in &phi_lam {
            let idx = chev.x_index(&alpha.neg()).unwrap();
            let im = self.module.complexification().action(idx).mul_vec(&v_lam);
            if im.iter().all(|z| z.is_zero()) {
                generic = false;
            }
        }
        if sys.root_index_by_fw(&lam.fw).is_some() {
            let neg = Root::new(
                sys.roots()[sys.root_index_by_fw(&lam.fw).unwrap()]
                    .coords
                    .iter()
                    .map(|x| -x)
                    .collect(),
            );
            let idx = chev.x_index(&neg).unwrap();
            let im = self.module.complexification().action(idx).mul_vec(&v_lam);
            if im.iter().all(|z| z.is_zero()) {
                generic = false;
            }
        }
        if generic && image != expected {
            return Err(LieqError::Counterexample(
                "generic weight vector must realize the predicted ad-image".into(),
            ));
        }
        Ok((image, generic))
    }

    /// The `V_l` component of a real vector of `U_l` (complex coordinates).
    pub fn v_component(&self, lam: &Weight, u: &[Q]) -> Result<Vec<crate::scalar::Gauss>> {
        let vl = self.module.v_weight_space(lam);
        let vn = self.module.v_weight_space(&lam.neg());
        let mut cols = vl.basis_vectors();
        cols.extend(vn.basis_vectors());
        let mat = Mat::from_cols(cols);
        let target: Vec<crate::scalar::Gauss> =
            u.iter().map(|q| crate::scalar::gq(q.clone())).collect();
        let sol = mat.solve(&target).ok_or_else(|| {
            LieqError::Precondition("vector must lie in V_l + V_{-l}".into())
        })?;
        let mut v = vec![crate::scalar::Gauss::zero(); self.dim_u];
        for (s, col) in sol.iter().take(vl.dim()).zip(vl.basis_vectors()) {
            for (k, c) in col.iter().enumerate() {
                v[k] = v[k].clone() + s.clone() * c.clone();
            }
        }
        Ok(v)
    }

    /// Derivations and automorphisms attached to the compact algebra:
    /// `t(X) = (X, ad X)` is a skew derivation for every compact basis
    /// element, and the Weyl maps `(T, phi)` preserve bracket and metric.
    pub fn verify_aut_der(&self, words: &[Vec<Root>]) -> Result<()> {
        // (a) derivations
        for z in 0..self.dim_g {
            let on_u = self.module.action0(z);
            let on_g = self.compact().ad_matrix(z);
            let t = |x: &[Q]| -> Vec<Q> {
                let (xu, xg) = self.split(x);
                let mut out = self.embed_u(&on_u.mul_vec(xu));
                let g = on_g.mul_vec(xg);
                for (k, v) in g.iter().enumerate() {
                    out[self.dim_u + k] = v.clone();
                }
                out
            };
            for i in 0..self.dim() {
                let mut ei = vec![Q::zero(); self.dim()];
                ei[i] = Q::one();
                for j in 0..self.dim() {
                    let mut ej = vec![Q::zero(); self.dim()];
                    ej[j] = Q::one();
                    let lhs = t(&self.bracket(&ei, &ej));
                    let mut rhs = self.bracket(&t(&ei), &ej);
                    let r2 = self.bracket(&ei, &t(&ej));
                    for (a, b) in rhs.iter_mut().zip(&r2) {
                        *a += b;
                    }
                    if lhs != rhs {
                        return Err(LieqError::Counterexample(format!(
                            "derivation identity fails for compact generator {z}"
                        )));
                    }
                }
                // skewness of t against the block inner product
                let ti = t(&ei);
                for j in 0..self.dim() {
                    let mut ej = vec![Q::zero(); self.dim()];
                    ej[j] = Q::one();
                    let tj = t(&ej);
                    if self.inner(&ti, &ej) + self.inner(&ei, &tj) != Q::zero() {
                        return Err(LieqError::Counterexample(format!(
                            "derivation of generator {z} is not skew"
                        )));
                    }
                }
            }
        }
        // (b)/(c) Weyl maps
        for word in words {
            let (t_u, phi) = weyl_operator_real(&self.module, word)?;
            let zeta = |x: &[Q]| -> Vec<Q> {
                let (xu, xg) = self.split(x);
                let mut out = self.embed_u(&t_u.mul_vec(xu));
                let g = phi.mul_vec(xg);
                for (k, v) in g.iter().enumerate() {
                    out[self.dim_u + k] = v.clone();
                }
                out
            };
            for i in 0..self.dim() {
                let mut ei = vec![Q::zero(); self.dim()];
                ei[i] = Q::one();
                for j in 0..self.dim() {
                    let mut ej = vec![Q::zero(); self.dim()];
                    ej[j] = Q::one();
                    let lhs = zeta(&self.bracket(&ei, &ej));
                    let rhs = self.bracket(&zeta(&ei), &zeta(&ej));
                    if lhs != rhs {
                        return Err(LieqError::Counterexample(
                            "Weyl map must preserve the bracket".into(),
                        ));
                    }
                    if self.inner(&zeta(&ei), &zeta(&ej)) != self.inner(&ei, &ej) {
                        return Err(LieqError::Counterexample(
                            "Weyl map must preserve the inner product".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Zero-weight interplay for roots that are module weights: kernels and
    /// images of `ad u_0` and `ad u_b`, the kernel-inclusion equivalence,
    /// and invertibility of the real weight vector on `U_b`.
    pub fn verify_zero_weight_interplay(&self) -> Result<()> {
        let sys = self.module.system().clone();
        let u0 = self.module.u_zero().clone();
        if u0.is_zero() {
            return Err(LieqError::HypothesisNotMet("zero weight space vanishes".into()));
        }
        let mut checked_any = false;
        for p in 0..sys.n_positive() {
            let beta = sys.roots()[p].clone();
            let beta_w = sys.root_to_weight(&beta);
            let ub = self.module.u_weight_space(&beta_w);
            if ub.is_zero() {
                continue;
            }
            checked_any = true;
            let a_mat = self.module.action0(self.compact().a_index(p));
            let b_mat = self.module.action0(self.compact().b_index(p));

            // invertibility of the real weight vector on U_b
            let h = self.real_weight_vector(&beta_w);
            let h_mat = self.module.action0_of_vector(&h);
            if !ub.kernel_of_restriction(&h_mat).is_zero() {
                return Err(LieqError::Counterexample(
                    "real weight vector must act invertibly on its weight space".into(),
                ));
            }

            // pick u_0 outside Ker(A_b)
            let u0_vec = u0
                .basis_vectors()
                .into_iter()
                .find(|u| a_mat.mul_vec(u).iter().any(|x| !x.is_zero()));
            let Some(u0_vec) = u0_vec else {
                continue;
            };

            // kernel of ad u_0 restricted to U_b
            let ker = self.restricted_ad_kernel(&u0_vec, &ub);
            let au = a_mat.mul_vec(&u0_vec);
            let bu = b_mat.mul_vec(&u0_vec);
            let span_im = Subspace::from_spanning(self.dim_u, &[au.clone(), bu.clone()]);
            if span_im.dim() != 2 {
                return Err(LieqError::Counterexample(
                    "images of a zero-weight vector must be independent".into(),
                ));
            }
            let perp = self.orthocomplement_within(&ub, &span_im);
            if ker != perp {
                return Err(LieqError::Counterexample(
                    "kernel of ad u_0 must be the orthocomplement of the image pair".into(),
                ));
            }
            // surjectivity onto the root plane
            let mut vecs = Vec::new();
            for v in ub.basis_vectors() {
                vecs.push(self.bracket_to_g(&self.embed_u(&u0_vec), &self.embed_u(&v)));
            }
            if Subspace::from_spanning(self.dim_g, &vecs) != self.g0_root_plane(&beta_w) {
                return Err(LieqError::Counterexample(
                    "ad u_0 must surject onto the root plane".into(),
                ));
            }

            // ad u_b on U_b: kernel is the orthocomplement of H~(u_b)
            let ub_vec = ub.basis_vectors().into_iter().next().unwrap();
            let h_ub = h_mat.mul_vec(&ub_vec);
            let ker_b = self.restricted_ad_kernel(&ub_vec, &ub);
            let perp_b = self.orthocomplement_within(
                &ub,
                &Subspace::from_spanning(self.dim_u, &[h_ub.clone()]),
            );
            if ker_b != perp_b {
                return Err(LieqError::Counterexample(
                    "kernel of ad u_b must be the orthocomplement of H~(u_b)".into(),
                ));
            }
            let mut vecs_b = Vec::new();
            for v in ub.basis_vectors() {
                vecs_b.push(self.bracket_to_g(&self.embed_u(&ub_vec), &self.embed_u(&v)));
            }
            let got = Subspace::from_spanning(self.dim_g, &vecs_b);
            let expected = Subspace::from_spanning(self.dim_g, &[h.clone()]);
            if got != expected {
                return Err(LieqError::Counterexample(
                    "ad u_b must surject onto the real weight line".into(),
                ));
            }

            // kernel-inclusion equivalence, positive and negative instance
            let pos = au.clone();
            let ker_pos = self.restricted_ad_kernel(&pos, &ub);
            if !ker_pos.contains_subspace(&ker) {
                return Err(LieqError::Counterexample(
                    "kernel inclusion must hold for vectors in the image pair span".into(),
                ));
            }
            if ub.dim() > 2 {
                if let Some(neg) = ub
                    .basis_vectors()
                    .into_iter()
                    .find(|v| !span_im.contains(v))
                {
                    let ker_neg = self.restricted_ad_kernel(&neg, &ub);
                    if ker_neg.contains_subspace(&ker) {
                        return Err(LieqError::Counterexample(
                            "kernel inclusion must fail outside the image pair span".into(),
                        ));
                    }
                }
            }
        }
        if !checked_any {
            return Err(LieqError::HypothesisNotMet(
                "no positive root occurs as a module weight".into(),
            ));
        }
        Ok(())
    }

    /// Kernel of `v -> [u, v]` restricted to a subspace of `U`.
    fn restricted_ad_kernel(&self, u: &[Q], space: &Subspace<Q>) -> Subspace<Q> {
        if space.is_zero() {
            return Subspace::zero(self.dim_u);
        }
        let cols: Vec<Vec<Q>> = space
            .basis_vectors()
            .iter()
            .map(|v| self.bracket_to_g(&self.embed_u(u), &self.embed_u(v)))
            .collect();
        let coeff_kernel = Mat::from_cols(cols).kernel();
        let basis = Mat::from_cols(space.basis_vectors());
        let vecs: Vec<Vec<Q>> = coeff_kernel.iter().map(|k| basis.mul_vec(k)).collect();
        Subspace::from_spanning(self.dim_u, &vecs)
    }

    /// Orthocomplement of `inner` within `outer` under the `U` inner product.
    fn orthocomplement_within(&self, outer: &Subspace<Q>, inner: &Subspace<Q>) -> Subspace<Q> {
        let rows: Vec<Vec<Q>> = inner
            .basis_vectors()
            .iter()
            .map(|v| self.module.inner_gram().mul_vec(v))
            .collect();
        if rows.is_empty() {
            return outer.clone();
        }
        let m = Mat::from_rows(rows);
        outer.kernel_of_restriction(&m)
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for i in 0..self.dim_u {
            for j in (i + 1)..self.dim_u {
                let coords: Vec<String> =
                    self.bracket[i][j].iter().map(q_string).collect();
                if self.bracket[i][j].iter().any(|x| !x.is_zero()) {
                    entries.push(json!({"i": i, "j": j, "g_coords": coords}));
                }
            }
        }
        json!({
            "schema": "nilalg/1",
            "type": self.module.system().type_name(),
            "kind": self.module.kind().name(),
            "dim_u": self.dim_u,
            "dim_g": self.dim_g,
            "bracket": entries,
            "u_gram_diagonal": (0..self.dim_u)
                .map(|i| q_string(self.module.inner_gram().at(i, i)))
                .collect::<Vec<_>>(),
            "g_gram_diagonal": (0..self.dim_g)
                .map(|i| q_string(self.compact().minus_b0().at(i, i)))
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyData;
    use crate::module::{realify, ComplexModule, ModuleKind};
    use crate::root::{Family, RootSystem, SimpleType};

    fn nil(f: Family, n: usize, kind: ModuleKind) -> MetricNilpotent {
        let sys = Arc::new(RootSystem::simple(SimpleType::new(f, n).unwrap()).unwrap());
        let chev = Arc::new(ChevalleyData::new(sys).unwrap());
        let compact = Arc::new(CompactAlgebra::new(chev.clone()).unwrap());
        let pres = Arc::new(ComplexModule::build(chev, kind).unwrap());
        let rm = Arc::new(realify(pres, compact).unwrap());
        MetricNilpotent::build(rm).unwrap()
    }

    #[test]
    fn adjoint_build_reproduces_compact_bracket() {
        let n = nil(Family::A, 1, ModuleKind::Adjoint);
        // With U = g0 and the Killing inner product on both sides, the
        // induced bracket of U vectors is the compact bracket itself.
        let d = n.dim_u();
        for i in 0..d {
            let mut ei = vec![Q::zero(); d];
            ei[i] = Q::one();
            for j in 0..d {
                let mut ej = vec![Q::zero(); d];
                ej[j] = Q::one();
                let got = n.bracket_to_g(&n.embed_u(&ei), &n.embed_u(&ej));
                let expected = n.compact().bracket_q(&ei, &ej);
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn g0_is_central_and_derived_algebra_is_g0() {
        let n = nil(Family::A, 1, ModuleKind::Adjoint);
        n.verify_two_step().unwrap();
        assert_eq!(n.derived_algebra().dim(), n.dim_g());
        let center = n.center();
        assert_eq!(center.dim(), n.dim_g());

        let n2 = nil(Family::B, 3, ModuleKind::Natural);
        n2.verify_two_step().unwrap();
        assert_eq!(n2.derived_algebra().dim(), n2.dim_g());
        assert_eq!(n2.center().dim(), n2.dim_g());
    }

    #[test]
    fn trivial_summand_grows_center() {
        let sys = Arc::new(RootSystem::simple(SimpleType::new(Family::A, 1).unwrap()).unwrap());
        let chev = Arc::new(ChevalleyData::new(sys).unwrap());
        let compact = Arc::new(CompactAlgebra::new(chev.clone()).unwrap());
        let pres = Arc::new(ComplexModule::build(chev, ModuleKind::Adjoint).unwrap());
        let rm = realify(pres, compact).unwrap();
        let bigger = Arc::new(rm.with_trivial_summand(2).unwrap());
        let n = MetricNilpotent::build(bigger).unwrap();
        assert_eq!(n.center().dim(), n.dim_g() + 2);
    }

    #[test]
    fn real_weight_vector_values() {
        let n = nil(Family::A, 1, ModuleKind::Natural);
        let h = n.real_weight_vector(&Weight::new(vec![1]));
        assert_eq!(h[0], crate::scalar::qr(1, 8));
        let zero = n.real_weight_vector(&Weight::zero(1));
        assert!(zero.iter().all(|x| x.is_zero()));
        // for a root weight, the vector is a rational multiple of the coroot
        let n2 = nil(Family::A, 2, ModuleKind::Adjoint);
        let sys = n2.module().system().clone();
        let beta = sys.simple_root(0);
        let h2 = n2.real_weight_vector(&sys.root_to_weight(&beta));
        assert!(!h2[0].is_zero());
    }

    #[test]
    fn bracket_relations_hold() {
        nil(Family::A, 2, ModuleKind::Adjoint).verify_bracket_relations().unwrap();
        nil(Family::B, 3, ModuleKind::Natural).verify_bracket_relations().unwrap();
    }

    #[test]
    fn ad_ranges() {
        let n = nil(Family::A, 2, ModuleKind::Adjoint);
        // zero vector has zero range
        let zero = vec![Q::zero(); n.dim_u()];
        assert!(n.ad_range(&zero).unwrap().is_zero());
        // a regular Cartan vector of the adjoint module: stabilizer is the
        // Cartan, range is its orthocomplement
        let mut reg = vec![Q::zero(); n.dim_u()];
        reg[0] = qi(3);
        reg[1] = Q::one();
        let range = n.ad_range(&reg).unwrap();
        assert_eq!(range.dim(), n.dim_g() - 2);
    }

    #[test]
    fn zero_weight_interplay_on_adjoint() {
        nil(Family::A, 2, ModuleKind::Adjoint).verify_zero_weight_interplay().unwrap();
        nil(Family::B, 3, ModuleKind::Natural).verify_zero_weight_interplay().unwrap();
    }

    #[test]
    fn automorphisms_and_derivations() {
        let n = nil(Family::A, 1, ModuleKind::Natural);
        let alpha = n.module().system().simple_root(0);
        n.verify_aut_der(&[vec![], vec![alpha.clone()], vec![alpha.clone(), alpha]]).unwrap();
    }
}
