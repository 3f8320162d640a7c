//! Explicit finite-dimensional modules: the adjoint module on the Chevalley
//! basis, the natural (vector) modules of the classical families, their
//! weight-space decompositions, realifications with invariant inner
//! products, divided-power integrality checks, and the Weyl operators
//! `T = exp(X_b) exp(-X_-b) exp(X_b)`.

use crate::chevalley::{ChevalleyData, CompactAlgebra};
use crate::error::{LieqError, Result};
use crate::matrix::{GMat, Mat, QMat, Subspace};
use crate::root::{Family, Root, Weight};
use crate::scalar::{gi, gq, qi, Gauss, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleKind {
    Adjoint,
    Natural,
}

impl ModuleKind {
    pub fn parse(s: &str) -> Result<ModuleKind> {
        match s {
            "adjoint" => Ok(ModuleKind::Adjoint),
            "natural" => Ok(ModuleKind::Natural),
            other => Err(LieqError::UnsupportedKind {
                kind: other.to_string(),
                type_name: String::new(),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::Adjoint => "adjoint",
            ModuleKind::Natural => "natural",
        }
    }
}

/// A complex module given by exact matrices for every Chevalley basis
/// element, with its weight-space decomposition.
#[derive(Clone, Debug)]
pub struct ComplexModule {
    chev: Arc<ChevalleyData>,
    kind: ModuleKind,
    dim: usize,
    /// Indexed by the Chevalley basis order.
    action: Vec<GMat>,
    /// Nonzero weights with nonzero weight space.
    weight_spaces: BTreeMap<Weight, Subspace<Gauss>>,
    zero_space: Subspace<Gauss>,
}

fn natural_generators(chev: &ChevalleyData) -> Result<(usize, Vec<GMat>, Vec<GMat>)> {
    let sys = chev.system();
    if !sys.is_simple() {
        return Err(LieqError::NotSimple);
    }
    let t = sys.types()[0];
    let n = t.rank;
    let e = |d: usize, r: usize, c: usize, v: i64| -> GMat {
        let mut m = GMat::zeros(d, d);
        m.set(r, c, gi(v));
        m
    };
    let add = |a: GMat, b: GMat| a.add(&b);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let dim;
    match t.family {
        Family::A => {
            dim = n + 1;
            for i in 0..n {
                xs.push(e(dim, i, i + 1, 1));
                ys.push(e(dim, i + 1, i, 1));
            }
        }
        Family::B => {
            // Basis v_1..v_n, v_0, v_1'..v_n' with v_k' at index n+1+k.
            dim = 2 * n + 1;
            let pr = |k: usize| n + 1 + k;
            for i in 0..n - 1 {
                xs.push(add(e(dim, i, i + 1, 1), e(dim, pr(i + 1), pr(i), -1)));
                ys.push(add(e(dim, i + 1, i, 1), e(dim, pr(i), pr(i + 1), -1)));
            }
            xs.push(add(e(dim, n - 1, n, 2), e(dim, n, pr(n - 1), -1)));
            ys.push(add(e(dim, n, n - 1, 1), e(dim, pr(n - 1), n, -2)));
        }
        Family::C => {
            dim = 2 * n;
            let pr = |k: usize| n + k;
            for i in 0..n - 1 {
                xs.push(add(e(dim, i, i + 1, 1), e(dim, pr(i + 1), pr(i), -1)));
                ys.push(add(e(dim, i + 1, i, 1), e(dim, pr(i), pr(i + 1), -1)));
            }
            xs.push(e(dim, n - 1, pr(n - 1), 1));
            ys.push(e(dim, pr(n - 1), n - 1, 1));
        }
        Family::D => {
            dim = 2 * n;
            let pr = |k: usize| n + k;
            for i in 0..n - 1 {
                xs.push(add(e(dim, i, i + 1, 1), e(dim, pr(i + 1), pr(i), -1)));
                ys.push(add(e(dim, i + 1, i, 1), e(dim, pr(i), pr(i + 1), -1)));
            }
            xs.push(add(e(dim, n - 2, pr(n - 1), 1), e(dim, n - 1, pr(n - 2), -1)));
            ys.push(add(e(dim, pr(n - 1), n - 2, 1), e(dim, pr(n - 2), n - 1, -1)));
        }
        _ => {
            return Err(LieqError::UnsupportedKind {
                kind: "natural".into(),
                type_name: t.name(),
            })
        }
    }
    Ok((dim, xs, ys))
}

impl ComplexModule {
    /// Builds the adjoint module (action on the Chevalley basis itself) or a
    /// natural module of a classical family.
    pub fn build(chev: Arc<ChevalleyData>, kind: ModuleKind) -> Result<ComplexModule> {
        let (dim, action) = match kind {
            ModuleKind::Adjoint => {
                let dim = chev.dim();
                let action: Vec<GMat> =
                    (0..chev.dim()).map(|i| chev.adjoint_matrix(i).to_gauss()).collect();
                (dim, action)
            }
            ModuleKind::Natural => {
                let (dim, xs, ys) = natural_generators(&chev)?;
                let sys = chev.system().clone();
                let m = sys.n_positive();
                let n = sys.rank();
                let mut action: Vec<Option<GMat>> = vec![None; chev.dim()];
                for i in 0..n {
                    let idx = sys
                        .root_index(&sys.simple_root(i))
                        .expect("simple roots are roots");
                    action[idx] = Some(xs[i].clone());
                    action[sys.negative_index(idx)] = Some(ys[i].clone());
                }
                // Non-simple root vectors via the extraspecial brackets, in
                // increasing height order so operands are always available.
                for g in 0..m {
                    if action[g].is_some() {
                        continue;
                    }
                    let (a, b, nval) = *chev
                        .constants()
                        .extraspecial
                        .iter()
                        .find(|(a, b, _)| {
                            let sum: Vec<i64> = sys.roots()[*a]
                                .coords
                                .iter()
                                .zip(&sys.roots()[*b].coords)
                                .map(|(x, y)| x + y)
                                .collect();
                            sum == sys.roots()[g].coords
                        })
                        .expect("extraspecial pair for non-simple root");
                    let inv = gq(Q::one() / qi(nval));
                    let xg = action[a]
                        .as_ref()
                        .unwrap()
                        .commutator(action[b].as_ref().unwrap())
                        .scale(&inv);
                    action[g] = Some(xg);
                    let yg = action[sys.negative_index(a)]
                        .as_ref()
                        .unwrap()
                        .commutator(action[sys.negative_index(b)].as_ref().unwrap())
                        .scale(&(-inv.clone()));
                    action[sys.negative_index(g)] = Some(yg);
                }
                // Cartan elements from [X_a, X_-a] on the simple roots.
                for i in 0..n {
                    let idx = sys.root_index(&sys.simple_root(i)).unwrap();
                    let h = action[idx]
                        .as_ref()
                        .unwrap()
                        .commutator(action[sys.negative_index(idx)].as_ref().unwrap());
                    action[chev.tau_index(i)] = Some(h);
                }
                (dim, action.into_iter().map(Option::unwrap).collect())
            }
        };

        let module = ComplexModule::from_action(chev, kind, dim, action)?;
        module.verify_homomorphism()?;
        Ok(module)
    }

    /// Wraps explicit matrices (one per Chevalley basis element) as a module
    /// and computes the weight decomposition. Does not itself verify the
    /// homomorphism property.
    pub fn from_action(
        chev: Arc<ChevalleyData>,
        kind: ModuleKind,
        dim: usize,
        action: Vec<GMat>,
    ) -> Result<ComplexModule> {
        assert_eq!(action.len(), chev.dim());
        let sys = chev.system().clone();
        let n = sys.rank();

        // Weight decomposition: split the module along each Cartan generator
        // in turn; the eigenvalues of τ_i on a module are integers bounded by
        // the largest root height plus the module's own ladder length, and a
        // kernel probe per candidate keeps everything exact.
        let taus: Vec<&GMat> = (0..n).map(|i| &action[chev.tau_index(i)]).collect();
        let bound: i64 = 2 * sys.roots().iter().map(|r| r.height().abs()).max().unwrap_or(1)
            + dim as i64;
        let mut candidates: Vec<(Vec<i64>, Subspace<Gauss>)> =
            vec![(Vec::new(), Subspace::full(dim))];
        for tau in &taus {
            let mut next = Vec::new();
            for (prefix, space) in &candidates {
                for ev in -bound..=bound {
                    let shifted = (*tau).sub(&GMat::identity(dim).scale(&gi(ev)));
                    let sub = space.kernel_of_restriction(&shifted);
                    if !sub.is_zero() {
                        let mut p = prefix.clone();
                        p.push(ev);
                        next.push((p, sub));
                    }
                }
            }
            candidates = next;
        }
        let mut weight_spaces = BTreeMap::new();
        let mut zero_space = Subspace::zero(dim);
        let mut total = 0usize;
        for (fw, space) in candidates {
            total += space.dim();
            let w = Weight::new(fw);
            if w.is_zero() {
                zero_space = space;
            } else {
                weight_spaces.insert(w, space);
            }
        }
        if total != dim {
            return Err(LieqError::Counterexample(
                "weight spaces do not exhaust the module".into(),
            ));
        }

        Ok(ComplexModule { chev, kind, dim, action, weight_spaces, zero_space })
    }

    pub fn chevalley(&self) -> &Arc<ChevalleyData> {
        &self.chev
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, basis_index: usize) -> &GMat {
        &self.action[basis_index]
    }

    pub fn action_of_root(&self, beta: &Root) -> Result<&GMat> {
        let idx = self
            .chev
            .x_index(beta)
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", beta.coords)))?;
        Ok(&self.action[idx])
    }

    /// Action of an arbitrary element given in Chevalley coordinates.
    pub fn action_of_vector(&self, v: &[Gauss]) -> GMat {
        let mut out = GMat::zeros(self.dim, self.dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// The nonzero weights.
    pub fn weight_set(&self) -> BTreeSet<Weight> {
        self.weight_spaces.keys().cloned().collect()
    }

    pub fn weight_space(&self, w: &Weight) -> Subspace<Gauss> {
        if w.is_zero() {
            return self.zero_space.clone();
        }
        self.weight_spaces
            .get(w)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn zero_space(&self) -> &Subspace<Gauss> {
        &self.zero_space
    }

    pub fn weight_multiplicity(&self, w: &Weight) -> usize {
        self.weight_space(w).dim()
    }

    /// Checks `action([x, y]) = [action(x), action(y)]` on all basis pairs.
    pub fn verify_homomorphism(&self) -> Result<()> {
        let d = self.chev.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                let comm = self.action[i].commutator(&self.action[j]);
                let br = self.chev.bracket_basis(i, j);
                let mut expected = GMat::zeros(self.dim, self.dim);
                for &(k, c) in br {
                    expected = expected.add(&self.action[k].scale(&gi(c)));
                }
                if comm != expected {
                    return Err(LieqError::Counterexample(format!(
                        "action is not bracket-compatible at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The step criterion: `V_{l+b} != 0` iff `X_b(V_l) != 0`, over all
    /// module weights (zero space included) and all roots.
    pub fn verify_step_criterion(&self) -> Result<()> {
        let sys = self.chev.system().clone();
        let mut all: Vec<Weight> = self.weight_spaces.keys().cloned().collect();
        all.push(Weight::zero(sys.rank()));
        for lam in &all {
            let vl = self.weight_space(lam);
            if vl.is_zero() {
                continue;
            }
            for beta in sys.roots() {
                let target = lam.add(&sys.root_to_weight(beta));
                let nonzero_target = !self.weight_space(&target).is_zero();
                let image = vl.map_by(self.action_of_root(beta)?);
                if nonzero_target != !image.is_zero() {
                    return Err(LieqError::Counterexample(format!(
                        "weight-step criterion fails at weight {:?}, root {:?}",
                        lam.fw, beta.coords
                    )));
                }
            }
        }
        Ok(())
    }

    /// Zero-space criterion: if some module weight is a root, the zero
    /// space is nonzero.
    pub fn verify_zero_space_criterion(&self) -> Result<()> {
        let sys = self.chev.system().clone();
        let weight_is_root = self
            .weight_spaces
            .keys()
            .any(|w| sys.root_index_by_fw(&w.fw).is_some());
        if weight_is_root && self.zero_space.is_zero() {
            return Err(LieqError::Counterexample(
                "a root occurs as a weight but the zero space vanishes".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let weights: Vec<Value> = self
            .weight_spaces
            .iter()
            .map(|(w, s)| json!({"fw": w.fw, "multiplicity": s.dim()}))
            .collect();
        let gens: Vec<Value> = (0..self.chev.dim())
            .map(|i| {
                let m = &self.action[i];
                let rows: Vec<Vec<String>> = (0..m.rows)
                    .map(|r| {
                        (0..m.cols)
                            .map(|c| crate::scalar::gauss_string(m.at(r, c)))
                            .collect()
                    })
                    .collect();
                json!({"basis": self.chev.basis_name(i), "matrix": rows})
            })
            .collect();
        json!({
            "schema": "module/1",
            "type": self.chev.system().type_name(),
            "kind": self.kind.name(),
            "dim": self.dim,
            "weights": weights,
            "zero_multiplicity": self.zero_space.dim(),
            "generators": gens,
        })
    }
}

/// Report of the divided-power integrality check.
#[derive(Clone, Debug)]
pub struct ZformReport {
    /// `(root index, largest k with X^k != 0)` per root generator.
    pub max_power: Vec<(usize, usize)>,
    /// `(root index, k)` pairs where `X^k / k!` fails to be integral.
    pub violations: Vec<(usize, usize)>,
}

impl ZformReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `action(X_b)^k / k!` has Gaussian-integer entries for every
/// root and every k up to the nilpotency index.
pub fn zform_check(module: &ComplexModule) -> Result<ZformReport> {
    let mats: Vec<GMat> = (0..module.chevalley().n_roots())
        .map(|i| module.action(i).clone())
        .collect();
    zform_check_matrices(&mats, module.dim())
}

/// The same check on raw matrices (used for negative controls).
pub fn zform_check_matrices(mats: &[GMat], dim: usize) -> Result<ZformReport> {
    let mut max_power = Vec::new();
    let mut violations = Vec::new();
    for (idx, m) in mats.iter().enumerate() {
        let mut power = GMat::identity(dim);
        let mut factorial = Q::one();
        let mut k = 0usize;
        loop {
            k += 1;
            factorial *= qi(k as i64);
            power = power.mul(m);
            if power.is_zero() {
                max_power.push((idx, k - 1));
                break;
            }
            if k > dim {
                return Err(LieqError::NotNilpotent);
            }
            let divided = power.scale(&gq(Q::one() / factorial.clone()));
            if !divided.is_gauss_integral() {
                violations.push((idx, k));
            }
        }
    }
    Ok(ZformReport { max_power, violations })
}

/// A Weyl operator on a module: the product, letter by letter, of
/// `exp(X_b) exp(-X_-b) exp(X_b)`.
#[derive(Clone, Debug)]
pub struct WeylOperator {
    pub word: Vec<Root>,
    pub matrix: GMat,
}

pub fn weyl_operator(module: &ComplexModule, word: &[Root]) -> Result<WeylOperator> {
    let chev = module.chevalley().clone();
    let sys = chev.system().clone();
    let mut t = GMat::identity(module.dim());
    for beta in word {
        let idx = chev
            .x_index(beta)
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", beta.coords)))?;
        let x = module.action(idx);
        let y = module.action(sys.negative_index(idx));
        let letter = x
            .exp_nilpotent()?
            .mul(&y.neg().exp_nilpotent()?)
            .mul(&x.exp_nilpotent()?);
        t = t.mul(&letter);
    }
    Ok(WeylOperator { word: word.to_vec(), matrix: t })
}

/// Applies the reflection word of a Weyl operator to a weight, in the
/// function-composition order matching the matrix product.
pub fn weyl_word_on_weight(
    sys: &crate::root::RootSystem,
    word: &[Root],
    lam: &Weight,
) -> Result<Weight> {
    let mut w = lam.clone();
    for beta in word.iter().rev() {
        w = sys.reflect_weight(beta, &w)?;
    }
    Ok(w)
}

/// Verifies the defining identities of a Weyl operator on a module:
/// conjugation realizes the reflection on the Cartan, and weight spaces are
/// permuted accordingly (the zero space is preserved).
pub fn verify_weyl_operator(module: &ComplexModule, op: &WeylOperator) -> Result<()> {
    let chev = module.chevalley().clone();
    let sys = chev.system().clone();
    let n = sys.rank();
    let t = &op.matrix;
    // Conjugation: T (tau_i) T^-1 = matrix of the reflected Cartan element;
    // checked multiplicatively as T tau = sigma(tau) T.
    for i in 0..n {
        let tau = module.action(chev.tau_index(i));
        let mut coords: Vec<Q> = vec![Q::zero(); n];
        coords[i] = Q::one();
        for beta in op.word.iter().rev() {
            let beta_fw = sys.root_to_weight(beta);
            let val: Q = coords
                .iter()
                .enumerate()
                .map(|(j, c)| c.clone() * qi(beta_fw.fw[j]))
                .sum();
            let coroot = sys.coroot_coords(beta)?;
            for (j, c) in coords.iter_mut().enumerate() {
                *c -= val.clone() * qi(coroot[j]);
            }
        }
        let mut sigma_tau = GMat::zeros(module.dim(), module.dim());
        for (j, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                sigma_tau =
                    sigma_tau.add(&module.action(chev.tau_index(j)).scale(&gq(c.clone())));
            }
        }
        if t.mul(tau) != sigma_tau.mul(t) {
            return Err(LieqError::Counterexample(
                "conjugation does not realize the reflection on the Cartan".into(),
            ));
        }
    }
    // Weight permutation.
    let mut all: Vec<Weight> = module.weight_set().into_iter().collect();
    all.push(Weight::zero(n));
    for lam in &all {
        let target = weyl_word_on_weight(&sys, &op.word, lam)?;
        let image = module.weight_space(lam).map_by(t);
        if image != module.weight_space(&target) {
            return Err(LieqError::Counterexample(format!(
                "weight space {:?} not mapped onto {:?}",
                lam.fw, target.fw
            )));
        }
    }
    Ok(())
}

/// A real module for the compact form: the coordinates carry an entrywise
/// conjugation whose fixed space is `U`, the compact basis acts by rational
/// matrices, and the complexified action lives on the same coordinates.
#[derive(Clone, Debug)]
pub struct RealModule {
    compact: Arc<CompactAlgebra>,
    pres: Option<Arc<ComplexModule>>,
    cplx: ComplexModule,
    dim: usize,
    kind: ModuleKind,
    /// Indexed by the compact basis order; all entries rational.
    action0: Vec<QMat>,
    /// Representatives of the nonzero weights, one per `{l, -l}` pair
    /// (first nonzero fundamental coordinate positive).
    lambda_plus: Vec<Weight>,
    u_weights: BTreeMap<Weight, Subspace<Q>>,
    u_zero: Subspace<Q>,
    inner_gram: QMat,
}

/// Realifies a complex module: the adjoint module becomes the compact form
/// acting on itself (same dimension); other modules are doubled by
/// restriction of scalars, with the conjugation entrywise in the new basis.
pub fn realify(pres: Arc<ComplexModule>, compact: Arc<CompactAlgebra>) -> Result<RealModule> {
    let chev = pres.chevalley().clone();
    assert!(Arc::ptr_eq(compact.chevalley(), &chev), "mismatched algebra");
    let to_cplx = compact.to_complex_matrix();

    let (dim, action0): (usize, Vec<QMat>) = match pres.kind() {
        ModuleKind::Adjoint => {
            let dim = compact.dim();
            (dim, (0..dim).map(|z| compact.ad_matrix(z)).collect())
        }
        ModuleKind::Natural => {
            let d = pres.dim();
            let dim = 2 * d;
            let mut mats = Vec::with_capacity(compact.dim());
            for z in 0..compact.dim() {
                let coeffs = to_cplx.col(z);
                let mz = pres.action_of_vector(&coeffs);
                let p = mz.real_part();
                let q = mz.imag_part();
                let block = Mat::from_fn(dim, dim, |r, c| {
                    let (rb, ri) = (r / d, r % d);
                    let (cb, ci) = (c / d, c % d);
                    match (rb, cb) {
                        (0, 0) | (1, 1) => p.at(ri, ci).clone(),
                        (0, 1) => -q.at(ri, ci).clone(),
                        _ => q.at(ri, ci).clone(),
                    }
                });
                mats.push(block);
            }
            (dim, mats)
        }
    };

    finish_real_module(compact, Some(pres), dim, action0)
}

fn finish_real_module(
    compact: Arc<CompactAlgebra>,
    pres: Option<Arc<ComplexModule>>,
    dim: usize,
    action0: Vec<QMat>,
) -> Result<RealModule> {
    let chev = compact.chevalley().clone();
    let from_cplx = compact.from_complex_matrix();
    let kind = pres.as_ref().map_or(ModuleKind::Natural, |p| p.kind());

    // Complexified action on the same coordinates.
    let mut action_c = Vec::with_capacity(chev.dim());
    for e in 0..chev.dim() {
        let coeffs = from_cplx.col(e);
        let mut m = GMat::zeros(dim, dim);
        for (z, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&action0[z].to_gauss().scale(c));
            }
        }
        action_c.push(m);
    }
    let cplx = ComplexModule::from_action(chev.clone(), kind, dim, action_c)?;
    cplx.verify_homomorphism()?;

    // Conjugation compatibility: the entrywise conjugate of the matrix of X
    // equals the matrix of the conjugate element of the algebra.
    let sys = chev.system().clone();
    for i in 0..chev.n_roots() {
        let conj_mat = cplx.action(i).conj_entries();
        if conj_mat != cplx.action(sys.negative_index(i)).neg() {
            return Err(LieqError::Counterexample(
                "conjugation does not intertwine the root-vector actions".into(),
            ));
        }
    }
    for i in 0..sys.rank() {
        let ti = cplx.action(chev.tau_index(i));
        if ti.conj_entries() != ti.neg() {
            return Err(LieqError::Counterexample(
                "Cartan matrices must be purely imaginary on real coordinates".into(),
            ));
        }
    }

    // Real weight spaces: U_l is spanned by real and imaginary parts of V_l.
    let mut lambda_plus: Vec<Weight> = Vec::new();
    let mut u_weights = BTreeMap::new();
    for w in cplx.weight_set() {
        let rep = lambda_plus_rep(&w);
        if rep != w {
            continue;
        }
        lambda_plus.push(w.clone());
        let vl = cplx.weight_space(&w);
        let mut vecs = Vec::new();
        for v in vl.basis_vectors() {
            vecs.push(v.iter().map(|z| z.re.clone()).collect::<Vec<Q>>());
            vecs.push(v.iter().map(|z| z.im.clone()).collect::<Vec<Q>>());
        }
        let ul = Subspace::from_spanning(dim, &vecs);
        if ul.dim() != 2 * vl.dim() {
            return Err(LieqError::Counterexample(
                "real weight space must double the complex dimension".into(),
            ));
        }
        u_weights.insert(w, ul);
    }
    let mut zero_vecs = Vec::new();
    for v in cplx.zero_space().basis_vectors() {
        zero_vecs.push(v.iter().map(|z| z.re.clone()).collect::<Vec<Q>>());
        zero_vecs.push(v.iter().map(|z| z.im.clone()).collect::<Vec<Q>>());
    }
    let u_zero = Subspace::from_spanning(dim, &zero_vecs);
    if u_zero.dim() != cplx.zero_space().dim() {
        return Err(LieqError::Counterexample(
            "zero weight space must keep its dimension over the reals".into(),
        ));
    }
    let total: usize = u_weights.values().map(|s| s.dim()).sum::<usize>() + u_zero.dim();
    if total != dim {
        return Err(LieqError::Counterexample(
            "real weight spaces do not sum to the module".into(),
        ));
    }

    let inner_gram = invariant_inner_product(&action0, dim, kind, &compact)?;

    Ok(RealModule {
        compact,
        pres,
        cplx,
        dim,
        kind,
        action0,
        lambda_plus,
        u_weights,
        u_zero,
        inner_gram,
    })
}

/// The representative of `{l, -l}` whose first nonzero fundamental
/// coordinate is positive.
pub fn lambda_plus_rep(w: &Weight) -> Weight {
    match w.fw.iter().find(|&&q| q != 0) {
        Some(&q) if q < 0 => w.neg(),
        _ => w.clone(),
    }
}

/// A positive-definite rational Gram matrix making every compact generator
/// skew. The adjoint module gets the negated Killing form exactly; other
/// modules first try the identity and then solve for a diagonal invariant
/// Gram, failing loudly if no positive diagonal solution exists.
fn invariant_inner_product(
    action0: &[QMat],
    dim: usize,
    kind: ModuleKind,
    compact: &CompactAlgebra,
) -> Result<QMat> {
    if kind == ModuleKind::Adjoint && dim == compact.dim() {
        return Ok(compact.minus_b0().clone());
    }
    let skew_ok = |g: &QMat| -> bool {
        action0.iter().all(|m| {
            let gm = g.mul(m);
            gm.add(&gm.transpose()).is_zero()
        })
    };
    let id = QMat::identity(dim);
    if skew_ok(&id) {
        return Ok(id);
    }
    // Solve g_r M_rc + M_cr g_c = 0 for a positive diagonal g.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for m in action0 {
        for r in 0..dim {
            for c in r..dim {
                if m.at(r, c).is_zero() && m.at(c, r).is_zero() {
                    continue;
                }
                let mut row = vec![Q::zero(); dim];
                row[r] += m.at(r, c).clone();
                row[c] += m.at(c, r).clone();
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(id);
    }
    let kernel = Mat::from_rows(rows).kernel();
    if kernel.is_empty() {
        return Err(LieqError::InnerProductConstruction);
    }
    let mut diag = vec![Q::zero(); dim];
    for v in &kernel {
        let has_pos = v.iter().any(|x| x > &Q::zero());
        let has_neg = v.iter().any(|x| x < &Q::zero());
        if has_pos && has_neg {
            return Err(LieqError::InnerProductConstruction);
        }
        let sign = if has_neg { -Q::one() } else { Q::one() };
        for (d, x) in diag.iter_mut().zip(v) {
            *d += sign.clone() * x;
        }
    }
    if diag.iter().any(|x| x <= &Q::zero()) {
        return Err(LieqError::InnerProductConstruction);
    }
    let mut g = QMat::zeros(dim, dim);
    for (i, d) in diag.iter().enumerate() {
        g.set(i, i, d.clone());
    }
    if !skew_ok(&g) {
        return Err(LieqError::InnerProductConstruction);
    }
    Ok(g)
}

impl RealModule {
    pub fn compact(&self) -> &Arc<CompactAlgebra> {
        &self.compact
    }

    pub fn chevalley(&self) -> &Arc<ChevalleyData> {
        self.compact.chevalley()
    }

    pub fn system(&self) -> &Arc<crate::root::RootSystem> {
        self.compact.system()
    }

    pub fn presentation(&self) -> Option<&Arc<ComplexModule>> {
        self.pres.as_ref()
    }

    /// The complexification, on the same coordinates as `U`.
    pub fn complexification(&self) -> &ComplexModule {
        &self.cplx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn action0(&self, z: usize) -> &QMat {
        &self.action0[z]
    }

    /// Action of a compact element given in compact coordinates.
    pub fn action0_of_vector(&self, v: &[Q]) -> QMat {
        let mut out = QMat::zeros(self.dim, self.dim);
        for (z, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action0[z].scale(c));
            }
        }
        out
    }

    pub fn lambda_plus(&self) -> &[Weight] {
        &self.lambda_plus
    }

    /// All weights of the complexification (symmetric under negation).
    pub fn weight_set(&self) -> BTreeSet<Weight> {
        self.cplx.weight_set()
    }

    /// `U_l` (equal to `U_{-l}`); the zero weight gives the zero space.
    pub fn u_weight_space(&self, w: &Weight) -> Subspace<Q> {
        if w.is_zero() {
            return self.u_zero.clone();
        }
        self.u_weights
            .get(&lambda_plus_rep(w))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn u_zero(&self) -> &Subspace<Q> {
        &self.u_zero
    }

    pub fn v_weight_space(&self, w: &Weight) -> Subspace<Gauss> {
        self.cplx.weight_space(w)
    }

    pub fn inner_gram(&self) -> &QMat {
        &self.inner_gram
    }

    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let gy = self.inner_gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Appends a `k`-dimensional summand on which the algebra acts by zero.
    pub fn with_trivial_summand(&self, k: usize) -> Result<RealModule> {
        let dim = self.dim + k;
        let action0: Vec<QMat> = self
            .action0
            .iter()
            .map(|m| {
                Mat::from_fn(dim, dim, |r, c| {
                    if r < self.dim && c < self.dim {
                        m.at(r, c).clone()
                    } else {
                        Q::zero()
                    }
                })
            })
            .collect();
        finish_real_module(self.compact.clone(), self.pres.clone(), dim, action0)
    }

    /// Orthogonal direct sum with another module over the same algebra.
    pub fn direct_sum(&self, other: &RealModule) -> Result<RealModule> {
        assert!(Arc::ptr_eq(&self.compact, &other.compact));
        let dim = self.dim + other.dim;
        let action0: Vec<QMat> = self
            .action0
            .iter()
            .zip(&other.action0)
            .map(|(a, b)| {
                Mat::from_fn(dim, dim, |r, c| {
                    if r < self.dim && c < self.dim {
                        a.at(r, c).clone()
                    } else if r >= self.dim && c >= self.dim {
                        b.at(r - self.dim, c - self.dim).clone()
                    } else {
                        Q::zero()
                    }
                })
            })
            .collect();
        finish_real_module(self.compact.clone(), None, dim, action0)
    }

    /// Every compact generator is skew relative to the inner product, and
    /// the weight decomposition of `U` is orthogonal.
    pub fn verify_inner_product(&self) -> Result<()> {
        for m in &self.action0 {
            let gm = self.inner_gram.mul(m);
            if !gm.add(&gm.transpose()).is_zero() {
                return Err(LieqError::Counterexample(
                    "a compact generator is not skew for the inner product".into(),
                ));
            }
        }
        let mut spaces: Vec<Subspace<Q>> = vec![self.u_zero.clone()];
        spaces.extend(self.lambda_plus.iter().map(|w| self.u_weight_space(w)));
        for i in 0..spaces.len() {
            for j in (i + 1)..spaces.len() {
                for x in spaces[i].basis_vectors() {
                    for y in spaces[j].basis_vectors() {
                        if !self.inner(&x, &y).is_zero() {
                            return Err(LieqError::Counterexample(
                                "weight spaces of U must be orthogonal".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Metric adjoints over the Hermitian extension of the inner product:
    /// root vectors pair up and the real Cartan is self-adjoint.
    pub fn verify_hermitian_adjoints(&self) -> Result<()> {
        let chev = self.chevalley().clone();
        let sys = self.system().clone();
        let g = self.inner_gram.to_gauss();
        let ginv = invert_q(&self.inner_gram).to_gauss();
        let adjoint = |m: &GMat| -> GMat { ginv.mul(&m.conj_entries().transpose()).mul(&g) };
        for i in 0..chev.n_roots() {
            let lhs = adjoint(self.cplx.action(i));
            if &lhs != self.cplx.action(sys.negative_index(i)) {
                return Err(LieqError::Counterexample(
                    "adjoint of a root action must be the opposite root action".into(),
                ));
            }
        }
        for i in 0..sys.rank() {
            let ti = self.cplx.action(chev.tau_index(i));
            if &adjoint(ti) != ti {
                return Err(LieqError::Counterexample(
                    "real Cartan elements must be self-adjoint".into(),
                ));
            }
        }
        Ok(())
    }

    /// The complex-bilinear extension of the inner product pairs `V_l` with
    /// `V_{-l}` only, and is nondegenerate on the zero space.
    pub fn verify_bilinear_orthogonality(&self) -> Result<()> {
        let g = self.inner_gram.to_gauss();
        let pair_vanishes = |a: &Subspace<Gauss>, b: &Subspace<Gauss>| -> bool {
            a.basis_vectors().iter().all(|x| {
                let gx = g.mul_vec(x);
                b.basis_vectors().iter().all(|y| {
                    gx.iter()
                        .zip(y)
                        .map(|(p, q)| p.clone() * q.clone())
                        .sum::<Gauss>()
                        .is_zero()
                })
            })
        };
        let mut all: Vec<Weight> = self.cplx.weight_set().into_iter().collect();
        all.push(Weight::zero(self.system().rank()));
        for a in &all {
            for b in &all {
                let va = self.cplx.weight_space(a);
                let vb = self.cplx.weight_space(b);
                if va.is_zero() || vb.is_zero() {
                    continue;
                }
                let vanish = pair_vanishes(&va, &vb);
                let opposite = a.add(b).is_zero();
                if vanish == opposite {
                    return Err(LieqError::Counterexample(format!(
                        "bilinear pairing pattern fails at ({:?}, {:?})",
                        a.fw, b.fw
                    )));
                }
            }
        }
        // Nondegenerate on the zero space.
        let v0 = self.cplx.zero_space();
        if !v0.is_zero() {
            let basis = v0.basis_vectors();
            let gram = Mat::from_fn(basis.len(), basis.len(), |i, j| {
                let gx = g.mul_vec(&basis[i]);
                gx.iter()
                    .zip(&basis[j])
                    .map(|(p, q)| p.clone() * q.clone())
                    .sum::<Gauss>()
            });
            if gram.rank() != basis.len() {
                return Err(LieqError::Counterexample(
                    "bilinear form must be nondegenerate on the zero space".into(),
                ));
            }
        }
        Ok(())
    }

    /// Root-pair actions respect the weight ladder of `U`.
    pub fn verify_weight_step(&self) -> Result<()> {
        let sys = self.system().clone();
        let mut all: Vec<Weight> = self.lambda_plus.to_vec();
        all.push(Weight::zero(sys.rank()));
        for lam in &all {
            let ul = self.u_weight_space(lam);
            if ul.is_zero() {
                continue;
            }
            for p in 0..sys.n_positive() {
                let beta_w = sys.root_to_weight(&sys.roots()[p]);
                let target = self
                    .u_weight_space(&lam.add(&beta_w))
                    .sum(&self.u_weight_space(&lam.sub(&beta_w)));
                for z in [self.compact.a_index(p), self.compact.b_index(p)] {
                    let image = ul.map_by(&self.action0[z]);
                    if !target.contains_subspace(&image) {
                        return Err(LieqError::Counterexample(format!(
                            "root pair action leaves the weight ladder at weight {:?}",
                            lam.fw
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The real image identity: the root-pair image of `U_l` equals the
    /// real parts of `X_b(V_l + V_{-l})`.
    pub fn verify_real_image_identity(&self) -> Result<()> {
        let sys = self.system().clone();
        let mut all: Vec<Weight> = self.lambda_plus.to_vec();
        all.push(Weight::zero(sys.rank()));
        for lam in &all {
            for p in 0..sys.n_positive() {
                let ul = self.u_weight_space(lam);
                let lhs = ul
                    .map_by(&self.action0[self.compact.a_index(p)])
                    .sum(&ul.map_by(&self.action0[self.compact.b_index(p)]));
                let vsum = self
                    .v_weight_space(lam)
                    .sum(&self.v_weight_space(&lam.neg()));
                let image = vsum.map_by(self.cplx.action(p));
                let mut vecs = Vec::new();
                for v in image.basis_vectors() {
                    vecs.push(v.iter().map(|z| z.re.clone()).collect::<Vec<Q>>());
                    vecs.push(v.iter().map(|z| z.im.clone()).collect::<Vec<Q>>());
                }
                let rhs = Subspace::from_spanning(self.dim, &vecs);
                if lhs != rhs {
                    return Err(LieqError::Counterexample(format!(
                        "real image identity fails at weight {:?}, positive root {}",
                        lam.fw, p
                    )));
                }
            }
        }
        Ok(())
    }

    /// Common kernel of `A_b` and `B_b` on `U_l`, with the equal-kernel,
    /// zero-kernel and independence facts verified.
    pub fn ab_kernel(&self, beta: &Root, lam: &Weight) -> Result<Subspace<Q>> {
        let sys = self.system().clone();
        let p = sys
            .root_index(beta)
            .filter(|&i| i < sys.n_positive())
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", beta.coords)))?;
        let ul = self.u_weight_space(lam);
        let ka = ul.kernel_of_restriction(&self.action0[self.compact.a_index(p)]);
        let kb = ul.kernel_of_restriction(&self.action0[self.compact.b_index(p)]);
        if ka != kb {
            return Err(LieqError::Counterexample(
                "the two root-pair generators must have equal kernels".into(),
            ));
        }
        let beta_w = sys.root_to_weight(beta);
        if sys.pairing(lam, beta)? != 0 && !ka.is_zero() {
            return Err(LieqError::Counterexample(
                "kernel must vanish when the pairing is nonzero".into(),
            ));
        }
        // Vanishing criterion: identically zero iff both shifted weight
        // spaces vanish.
        let both_zero = self.v_weight_space(&beta_w.add(lam)).is_zero()
            && self.v_weight_space(&beta_w.sub(lam)).is_zero();
        if both_zero != (ka.dim() == ul.dim()) {
            return Err(LieqError::Counterexample(
                "vanishing criterion for the root pair action fails".into(),
            ));
        }
        // Outside the kernel the two images are independent.
        for u in ul.basis_vectors() {
            if ka.contains(&u) {
                continue;
            }
            let au = self.action0[self.compact.a_index(p)].mul_vec(&u);
            let bu = self.action0[self.compact.b_index(p)].mul_vec(&u);
            if Mat::from_rows(vec![au, bu]).rank() != 2 {
                return Err(LieqError::Counterexample(
                    "images of a vector outside the kernel must be independent".into(),
                ));
            }
        }
        Ok(ka)
    }

    /// The nonsingular subspace `U_{l,b}`: both power images agree, the
    /// real form has the dimension of the string-end weight space, and the
    /// root pair acts injectively on it.
    pub fn nonsingular_subspace(&self, beta: &Root, lam: &Weight) -> Result<Subspace<Q>> {
        let sys = self.system().clone();
        let p = sys
            .root_index(beta)
            .filter(|&i| i < sys.n_positive())
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", beta.coords)))?;
        let beta_w = sys.root_to_weight(beta);
        if self.v_weight_space(&beta_w.add(lam)).is_zero()
            && self.v_weight_space(&beta_w.sub(lam)).is_zero()
        {
            return Err(LieqError::HypothesisNotMet(
                "both shifted weight spaces vanish".into(),
            ));
        }
        let weight_set: BTreeSet<Weight> = {
            let mut s = self.cplx.weight_set();
            if !self.cplx.zero_space().is_zero() {
                s.insert(Weight::zero(sys.rank()));
            }
            s
        };
        let (j, k) = sys.root_string(lam, beta, &weight_set)?;
        let x_minus = self.cplx.action(sys.negative_index(p));
        let x_plus = self.cplx.action(p);
        let mut down = self.v_weight_space(&lam.add(&beta_w.scale(k as i64)));
        for _ in 0..k {
            down = down.map_by(x_minus);
        }
        let mut up = self.v_weight_space(&lam.sub(&beta_w.scale(j as i64)));
        for _ in 0..j {
            up = up.map_by(x_plus);
        }
        if down != up {
            return Err(LieqError::Counterexample(
                "the two defining power images must coincide".into(),
            ));
        }
        let v_end = self.v_weight_space(&lam.add(&beta_w.scale(k as i64)));
        let mut vecs = Vec::new();
        for v in down.basis_vectors() {
            vecs.push(v.iter().map(|z| z.re.clone()).collect::<Vec<Q>>());
            vecs.push(v.iter().map(|z| z.im.clone()).collect::<Vec<Q>>());
        }
        let u_lb = Subspace::from_spanning(self.dim, &vecs);
        if u_lb.dim() != 2 * v_end.dim() {
            return Err(LieqError::Counterexample(
                "nonsingular subspace must double the string-end dimension".into(),
            ));
        }
        for z in [self.compact.a_index(p), self.compact.b_index(p)] {
            if !u_lb.kernel_of_restriction(&self.action0[z]).is_zero() {
                return Err(LieqError::Counterexample(
                    "root pair must act injectively on the nonsingular subspace".into(),
                ));
            }
        }
        Ok(u_lb)
    }

    /// The equivalences tying nonzero images, proper kernels, and shifted
    /// weight spaces together, over every (root, weight) pair including the
    /// zero weight.
    pub fn verify_kernel_equivalences(&self) -> Result<()> {
        let sys = self.system().clone();
        let mut all: Vec<Weight> = self.lambda_plus.to_vec();
        all.push(Weight::zero(sys.rank()));
        for lam in &all {
            let ul = self.u_weight_space(lam);
            if ul.is_zero() {
                continue;
            }
            for pidx in 0..sys.n_positive() {
                let beta = &sys.roots()[pidx];
                let beta_w = sys.root_to_weight(beta);
                let cond_weights = !self.v_weight_space(&beta_w.add(lam)).is_zero()
                    || !self.v_weight_space(&beta_w.sub(lam)).is_zero();
                let a = &self.action0[self.compact.a_index(pidx)];
                let b = &self.action0[self.compact.b_index(pidx)];
                let image = ul.map_by(a).sum(&ul.map_by(b));
                let cond_image = !image.is_zero();
                let ka = ul.kernel_of_restriction(a);
                let cond_kernel = ka.dim() < ul.dim();
                if cond_weights != cond_image || cond_weights != cond_kernel {
                    return Err(LieqError::Counterexample(format!(
                        "kernel/image/weight equivalences fail at weight {:?}, root {}",
                        lam.fw, pidx
                    )));
                }
                if cond_image {
                    let target = self
                        .u_weight_space(&lam.add(&beta_w))
                        .sum(&self.u_weight_space(&lam.sub(&beta_w)));
                    if !target.contains_subspace(&image) {
                        return Err(LieqError::Counterexample(
                            "image must land in the shifted weight spaces".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let weights: Vec<Value> = self
            .lambda_plus
            .iter()
            .map(|w| json!({"fw": w.fw, "real_dim": self.u_weight_space(w).dim()}))
            .collect();
        json!({
            "schema": "realmodule/1",
            "type": self.system().type_name(),
            "kind": self.kind.name(),
            "dim": self.dim,
            "zero_dim": self.u_zero.dim(),
            "weights": weights,
            "inner_gram_diagonal": (0..self.dim)
                .map(|i| crate::scalar::q_string(self.inner_gram.at(i, i)))
                .collect::<Vec<_>>(),
        })
    }
}

/// Exact inverse of a nonsingular rational matrix.
pub fn invert_q(m: &QMat) -> QMat {
    let n = m.rows;
    let aug = m.hstack(&QMat::identity(n));
    let (r, pivots) = aug.rref();
    assert_eq!(pivots.len(), n, "matrix must be invertible");
    Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone())
}

/// Weyl operator data on a real module: the operator matrix restricted to
/// `U` (real entries) and the induced compact-side map, also real.
pub fn weyl_operator_real(module: &RealModule, word: &[Root]) -> Result<(QMat, QMat)> {
    let op = weyl_operator(module.complexification(), word)?;
    if !op.matrix.is_real() {
        return Err(LieqError::Counterexample(
            "Weyl operator must preserve the real form".into(),
        ));
    }
    let t_u = op.matrix.real_part();

    let compact = module.compact().clone();
    let sys = module.system().clone();
    let chev = module.chevalley().clone();
    let from_cplx = compact.from_complex_matrix();
    let to_cplx = compact.to_complex_matrix();
    let dim = compact.dim();
    let ad_compact = |i: usize| -> GMat {
        let mut cols = Vec::new();
        for z in 0..dim {
            let zc = to_cplx.col(z);
            let mut ei = vec![Gauss::zero(); chev.dim()];
            ei[i] = Gauss::one();
            let br = chev.bracket_gauss(&ei, &zc);
            cols.push(from_cplx.mul_vec(&br));
        }
        GMat::from_cols(cols)
    };
    let mut phi = GMat::identity(dim);
    for beta in word {
        let idx = chev
            .x_index(beta)
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", beta.coords)))?;
        let x = ad_compact(idx);
        let y = ad_compact(sys.negative_index(idx));
        let letter = x
            .exp_nilpotent()?
            .mul(&y.neg().exp_nilpotent()?)
            .mul(&x.exp_nilpotent()?);
        phi = phi.mul(&letter);
    }
    if !phi.is_real() {
        return Err(LieqError::Counterexample(
            "compact-side Weyl map must be real".into(),
        ));
    }
    Ok((t_u, phi.real_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::{RootSystem, SimpleType};

    fn module(f: Family, n: usize, kind: ModuleKind) -> (Arc<ChevalleyData>, ComplexModule) {
        let sys = Arc::new(RootSystem::simple(SimpleType::new(f, n).unwrap()).unwrap());
        let chev = Arc::new(ChevalleyData::new(sys).unwrap());
        let m = ComplexModule::build(chev.clone(), kind).unwrap();
        (chev, m)
    }

    fn real_module(f: Family, n: usize, kind: ModuleKind) -> RealModule {
        let (chev, m) = module(f, n, kind);
        let compact = Arc::new(CompactAlgebra::new(chev).unwrap());
        realify(Arc::new(m), compact).unwrap()
    }

    #[test]
    fn a1_natural_shape() {
        let (_, m) = module(Family::A, 1, ModuleKind::Natural);
        assert_eq!(m.dim(), 2);
        let ws = m.weight_set();
        assert!(ws.contains(&Weight::new(vec![1])));
        assert!(ws.contains(&Weight::new(vec![-1])));
        assert!(m.zero_space().is_zero());
        // the positive root vector acts as the elementary nilpotent
        let x = m.action(0).clone();
        let mut expect = GMat::zeros(2, 2);
        expect.set(0, 1, gi(1));
        assert_eq!(x, expect);
    }

    #[test]
    fn a1_adjoint_weights() {
        let (_, m) = module(Family::A, 1, ModuleKind::Adjoint);
        assert_eq!(m.dim(), 3);
        assert_eq!(m.zero_space().dim(), 1);
        for w in m.weight_set() {
            assert_eq!(m.weight_multiplicity(&w), 1);
        }
    }

    #[test]
    fn b3_natural_weights() {
        let (_, m) = module(Family::B, 3, ModuleKind::Natural);
        assert_eq!(m.dim(), 7);
        assert_eq!(m.zero_space().dim(), 1);
        assert_eq!(m.weight_set().len(), 6);
        for w in m.weight_set() {
            assert_eq!(m.weight_multiplicity(&w), 1);
        }
        m.verify_step_criterion().unwrap();
        m.verify_zero_space_criterion().unwrap();
    }

    #[test]
    fn unsupported_natural_families() {
        let sys = Arc::new(RootSystem::simple(SimpleType::new(Family::G, 2).unwrap()).unwrap());
        let chev = Arc::new(ChevalleyData::new(sys).unwrap());
        assert!(matches!(
            ComplexModule::build(chev, ModuleKind::Natural),
            Err(LieqError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn zform_passes_on_shipped_modules() {
        for (f, n, kind) in [
            (Family::A, 2, ModuleKind::Adjoint),
            (Family::A, 1, ModuleKind::Natural),
            (Family::B, 2, ModuleKind::Natural),
            (Family::C, 2, ModuleKind::Natural),
            (Family::D, 4, ModuleKind::Natural),
        ] {
            let (_, m) = module(f, n, kind);
            let report = zform_check(&m).unwrap();
            assert!(report.ok(), "{:?} {:?}: {:?}", f, kind, report.violations);
        }
        // adjoint strings reach the divided square
        let (_, adj) = module(Family::A, 2, ModuleKind::Adjoint);
        let report = zform_check(&adj).unwrap();
        assert_eq!(report.max_power.iter().map(|&(_, k)| k).max(), Some(2));
    }

    #[test]
    fn zform_rejects_rescaled_basis() {
        let (_, m) = module(Family::A, 1, ModuleKind::Natural);
        let half = gq(crate::scalar::qr(1, 2));
        let mats: Vec<GMat> = (0..m.chevalley().n_roots())
            .map(|i| m.action(i).scale(&half))
            .collect();
        let report = zform_check_matrices(&mats, m.dim()).unwrap();
        assert!(!report.ok());
    }

    #[test]
    fn a1_weyl_operator_matrix() {
        let (chev, m) = module(Family::A, 1, ModuleKind::Natural);
        let alpha = chev.system().simple_root(0);
        let op = weyl_operator(&m, &[alpha.clone()]).unwrap();
        let mut expect = GMat::zeros(2, 2);
        expect.set(0, 1, gi(1));
        expect.set(1, 0, gi(-1));
        assert_eq!(op.matrix, expect);
        verify_weyl_operator(&m, &op).unwrap();
        // empty word is the identity
        let id = weyl_operator(&m, &[]).unwrap();
        assert_eq!(id.matrix, GMat::identity(2));
        // the square preserves each weight space
        let sq = weyl_operator(&m, &[alpha.clone(), alpha]).unwrap();
        verify_weyl_operator(&m, &sq).unwrap();
        for w in m.weight_set() {
            let space = m.weight_space(&w);
            let image = space.map_by(&sq.matrix);
            assert_eq!(image, space);
        }
    }

    #[test]
    fn weyl_operators_permute_weight_spaces() {
        let (chev, m) = module(Family::A, 2, ModuleKind::Adjoint);
        for i in 0..2 {
            let op = weyl_operator(&m, &[chev.system().simple_root(i)]).unwrap();
            verify_weyl_operator(&m, &op).unwrap();
        }
        let word = vec![chev.system().simple_root(0), chev.system().simple_root(1)];
        let op = weyl_operator(&m, &word).unwrap();
        verify_weyl_operator(&m, &op).unwrap();
    }

    #[test]
    fn realified_dimensions() {
        let rm = real_module(Family::B, 3, ModuleKind::Natural);
        assert_eq!(rm.dim(), 14);
        assert_eq!(rm.u_zero().dim(), 2);
        for w in rm.lambda_plus() {
            assert_eq!(rm.u_weight_space(w).dim(), 2 * rm.v_weight_space(w).dim());
        }
        rm.verify_inner_product().unwrap();
        rm.verify_weight_step().unwrap();

        let adj = real_module(Family::A, 2, ModuleKind::Adjoint);
        assert_eq!(adj.dim(), 8);
        assert_eq!(adj.u_zero().dim(), 2);
        assert_eq!(adj.inner_gram(), adj.compact().minus_b0());
        adj.verify_inner_product().unwrap();
    }

    #[test]
    fn a1_natural_realified_doubles() {
        let rm = real_module(Family::A, 1, ModuleKind::Natural);
        assert_eq!(rm.dim(), 4);
        let w = Weight::new(vec![1]);
        assert_eq!(rm.v_weight_space(&w).dim(), 2);
        assert_eq!(rm.u_weight_space(&w).dim(), 4);
        rm.verify_inner_product().unwrap();
    }

    #[test]
    fn hermitian_and_bilinear_structures() {
        for (f, n, kind) in [
            (Family::A, 1, ModuleKind::Natural),
            (Family::A, 2, ModuleKind::Adjoint),
            (Family::B, 2, ModuleKind::Natural),
            (Family::C, 2, ModuleKind::Natural),
        ] {
            let rm = real_module(f, n, kind);
            rm.verify_hermitian_adjoints().unwrap();
            rm.verify_bilinear_orthogonality().unwrap();
            rm.verify_real_image_identity().unwrap();
            rm.verify_kernel_equivalences().unwrap();
        }
    }

    #[test]
    fn b3_kernels_for_root_pairs() {
        let rm = real_module(Family::B, 3, ModuleKind::Natural);
        let sys = rm.system().clone();
        // weight e1, root e1 - e2: pairing 1, kernel vanishes
        let lam = Weight::new(vec![1, 0, 0]);
        let beta = sys.simple_root(0);
        let k = rm.ab_kernel(&beta, &lam).unwrap();
        assert!(k.is_zero());
        // root e2 + e3: both shifted weights vanish, the pair acts by zero
        let beta2 = Root::new(vec![0, 1, 2]);
        assert!(sys.is_root(&beta2));
        let k2 = rm.ab_kernel(&beta2, &lam).unwrap();
        assert_eq!(k2.dim(), rm.u_weight_space(&lam).dim());
        // nonsingular subspace for the first simple root
        let u = rm.nonsingular_subspace(&beta, &lam).unwrap();
        assert_eq!(u.dim(), 2 * rm.v_weight_space(&lam).dim());
        // error when both shifted spaces vanish
        assert!(rm.nonsingular_subspace(&beta2, &lam).is_err());
    }

    #[test]
    fn real_weyl_operator_preserves_u() {
        let rm = real_module(Family::A, 1, ModuleKind::Natural);
        let alpha = rm.system().simple_root(0);
        let (t_u, phi) = weyl_operator_real(&rm, &[alpha]).unwrap();
        assert_eq!(t_u.rows, 4);
        assert_eq!(phi.rows, rm.compact().dim());
    }
}
