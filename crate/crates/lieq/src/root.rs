//! Root systems of the simple types A–G and their semisimple direct sums.
//!
//! Roots are stored in simple-root coordinates (integers), weights in
//! fundamental-weight coordinates (integers). The Weyl group is never
//! materialized; orbits are closures under the simple reflections.

use crate::error::{LieqError, Result};
use crate::matrix::{Mat, QMat};
use crate::scalar::{q_is_integer, q_string, qi, Q};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// One of the seven simple families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple type, e.g. `B3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(LieqError::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// Closed-form number of positive roots.
    pub fn positive_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coords.iter().map(|x| -x).collect())
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0) && self.coords.iter().any(|&x| x > 0)
    }
}

/// An abstract weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub fw: Vec<i64>,
}

impl Weight {
    pub fn new(fw: Vec<i64>) -> Self {
        Weight { fw }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { fw: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.fw.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.fw.iter().all(|&x| x >= 0)
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.fw.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.fw.iter().zip(&other.fw).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.fw.iter().zip(&other.fw).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight::new(self.fw.iter().map(|x| k * x).collect())
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut fw = vec![0; rank];
        fw[i] = 1;
        Weight { fw }
    }
}

/// A simple or semisimple root system with Cartan data and all roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    types: Vec<SimpleType>,
    rank: usize,
    /// First simple-root index of each factor.
    factor_offsets: Vec<usize>,
    /// `cartan[i][j] = ⟨α_i, α_j⟩`.
    cartan: Vec<Vec<i64>>,
    inverse_cartan: QMat,
    /// Half squared lengths of the simple roots (short roots have 1).
    sym_d: Vec<i64>,
    /// All roots: positives sorted by (height, coords), then their negatives
    /// in the same order.
    roots: Vec<Root>,
    n_positive: usize,
    /// Fundamental-weight coordinates per root.
    root_fw: Vec<Weight>,
    /// Coroot coordinates per root (integer).
    coroots: Vec<Vec<i64>>,
    index_by_coords: HashMap<Vec<i64>, usize>,
    index_by_fw: HashMap<Vec<i64>, usize>,
    /// Indices of the dominant long/short roots per factor.
    beta_max_idx: Vec<usize>,
    beta_min_idx: Vec<usize>,
}

fn simple_cartan(t: SimpleType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let link = |i: usize, j: usize, cij: i64, cji: i64, c: &mut Vec<Vec<i64>>| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    let mut d = vec![1i64; n];
    match t.family {
        Family::A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1, &mut c);
            }
        }
        Family::B => {
            for i in 0..n.saturating_sub(2) {
                link(i, i + 1, -1, -1, &mut c);
            }
            link(n - 2, n - 1, -2, -1, &mut c);
            for di in d.iter_mut().take(n - 1) {
                *di = 2;
            }
        }
        Family::C => {
            for i in 0..n.saturating_sub(2) {
                link(i, i + 1, -1, -1, &mut c);
            }
            link(n - 2, n - 1, -1, -2, &mut c);
            d[n - 1] = 2;
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1, &mut c);
            }
            link(n - 3, n - 1, -1, -1, &mut c);
        }
        Family::E => {
            // Nodes numbered with the branch node second, attached to node 4.
            let chain: &[(usize, usize)] = match n {
                6 => &[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
                7 => &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
                _ => &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
            };
            for &(i, j) in chain {
                link(i, j, -1, -1, &mut c);
            }
        }
        Family::F => {
            link(0, 1, -1, -1, &mut c);
            link(1, 2, -2, -1, &mut c);
            link(2, 3, -1, -1, &mut c);
            d[0] = 2;
            d[1] = 2;
        }
        Family::G => {
            link(0, 1, -1, -3, &mut c);
            d[1] = 3;
        }
    }
    (c, d)
}

impl RootSystem {
    /// Builds the root system of one simple type.
    pub fn simple(t: SimpleType) -> Result<Self> {
        Self::build(&[t])
    }

    /// Builds a simple or semisimple root system (block-diagonal assembly).
    pub fn build(types: &[SimpleType]) -> Result<Self> {
        assert!(!types.is_empty(), "empty type list");
        let rank: usize = types.iter().map(|t| t.rank).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut sym_d = vec![1i64; rank];
        let mut factor_offsets = Vec::new();
        let mut off = 0usize;
        for t in types {
            factor_offsets.push(off);
            let (c, d) = simple_cartan(*t);
            for i in 0..t.rank {
                for j in 0..t.rank {
                    cartan[off + i][off + j] = c[i][j];
                }
                sym_d[off + i] = d[i];
            }
            off += t.rank;
        }

        let inverse_cartan = invert_integer_matrix(&cartan)?;

        // Close the simple roots under the simple reflections.
        let simple_roots: Vec<Root> = (0..rank)
            .map(|i| {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                Root::new(v)
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for r in &simple_roots {
            seen.insert(r.coords.clone());
            queue.push_back(r.clone());
        }
        while let Some(alpha) = queue.pop_front() {
            for i in 0..rank {
                // σ_i(α) = α − ⟨α, α_i⟩ α_i with ⟨α, α_i⟩ = Σ_j a_j C_{ji}.
                let p: i64 = (0..rank).map(|j| alpha.coords[j] * cartan[j][i]).sum();
                let mut im = alpha.coords.clone();
                im[i] -= p;
                if im.iter().all(|&x| x == 0) {
                    continue;
                }
                if seen.insert(im.clone()) {
                    queue.push_back(Root::new(im));
                }
            }
        }
        let mut positives: Vec<Root> = seen
            .iter()
            .map(|v| Root::new(v.clone()))
            .filter(|r| r.is_positive())
            .collect();
        positives.sort_by_key(|r| (r.height(), r.coords.clone()));
        let n_positive = positives.len();
        // Mixed-sign vectors never appear in the closure of a root system.
        assert_eq!(seen.len(), 2 * n_positive, "closure produced mixed-sign vectors");

        let mut roots = positives.clone();
        roots.extend(positives.iter().map(Root::neg));

        let mut root_fw = Vec::with_capacity(roots.len());
        let mut index_by_coords = HashMap::new();
        let mut index_by_fw = HashMap::new();
        for (idx, r) in roots.iter().enumerate() {
            let fw: Vec<i64> = (0..rank)
                .map(|j| (0..rank).map(|i| r.coords[i] * cartan[i][j]).sum())
                .collect();
            index_by_coords.insert(r.coords.clone(), idx);
            index_by_fw.insert(fw.clone(), idx);
            root_fw.push(Weight::new(fw));
        }

        let mut sys = RootSystem {
            types: types.to_vec(),
            rank,
            factor_offsets,
            cartan,
            inverse_cartan,
            sym_d,
            roots,
            n_positive,
            root_fw,
            coroots: Vec::new(),
            index_by_coords,
            index_by_fw,
            beta_max_idx: Vec::new(),
            beta_min_idx: Vec::new(),
        };
        for idx in 0..sys.roots.len() {
            let c = sys.compute_coroot_coords(&sys.roots[idx])?;
            sys.coroots.push(c);
        }
        sys.locate_dominant_roots()?;
        Ok(sys)
    }

    fn locate_dominant_roots(&mut self) -> Result<()> {
        for f in 0..self.types.len() {
            let mut dominant: Vec<(usize, Q)> = Vec::new();
            for idx in 0..self.n_positive {
                if self.factor_of_root(&self.roots[idx]) != f {
                    continue;
                }
                if self.root_fw[idx].is_dominant() {
                    dominant.push((idx, self.root_length_sq(&self.roots[idx])));
                }
            }
            assert!(
                dominant.len() == 1 || dominant.len() == 2,
                "factor must have one or two dominant roots"
            );
            dominant.sort_by(|a, b| b.1.cmp(&a.1));
            let max_idx = dominant[0].0;
            let min_idx = dominant.last().unwrap().0;
            self.beta_max_idx.push(max_idx);
            self.beta_min_idx.push(min_idx);
        }
        Ok(())
    }

    pub fn types(&self) -> &[SimpleType] {
        &self.types
    }

    pub fn is_simple(&self) -> bool {
        self.types.len() == 1
    }

    pub fn type_name(&self) -> String {
        self.types.iter().map(|t| t.name()).collect::<Vec<_>>().join("x")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &QMat {
        &self.inverse_cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym_d
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0i64; self.rank];
        v[i] = 1;
        Root::new(v)
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index_by_coords.get(&r.coords).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_index(r).is_some()
    }

    /// Index of a root given in fundamental-weight coordinates.
    pub fn root_index_by_fw(&self, fw: &[i64]) -> Option<usize> {
        self.index_by_fw.get(fw).copied()
    }

    pub fn root_by_index(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn negative_index(&self, idx: usize) -> usize {
        if idx < self.n_positive {
            idx + self.n_positive
        } else {
            idx - self.n_positive
        }
    }

    /// Fundamental-weight coordinates of a root.
    pub fn root_to_weight(&self, r: &Root) -> Weight {
        Weight::new(
            (0..self.rank)
                .map(|j| (0..self.rank).map(|i| r.coords[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Squared length `(α, α)` under the symmetrized invariant form
    /// normalized so short simple roots have squared length 2.
    pub fn root_length_sq(&self, r: &Root) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if r.coords[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                let c = r.coords[i] * r.coords[j] * self.cartan[i][j] * self.sym_d[j];
                acc += qi(c);
            }
        }
        acc
    }

    /// Coordinates of the coroot of `α` on the simple coroots; always integers.
    pub fn coroot_coords(&self, alpha: &Root) -> Result<Vec<i64>> {
        match self.root_index(alpha) {
            Some(idx) => Ok(self.coroots[idx].clone()),
            None => Err(LieqError::NotARoot(format!("{:?}", alpha.coords))),
        }
    }

    fn compute_coroot_coords(&self, alpha: &Root) -> Result<Vec<i64>> {
        let len_sq = self.root_length_sq(alpha);
        let d_alpha = len_sq / qi(2);
        let mut out = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let c = qi(alpha.coords[j] * self.sym_d[j]) / d_alpha.clone();
            if !q_is_integer(&c) {
                return Err(LieqError::NotARoot(format!("{:?}", alpha.coords)));
            }
            out.push(c.numer().try_into().expect("coroot coordinate overflow"));
        }
        Ok(out)
    }

    /// `⟨λ, α⟩ = λ(τ_α)`, an integer for abstract weights and roots.
    pub fn pairing(&self, lam: &Weight, alpha: &Root) -> Result<i64> {
        let idx = self
            .root_index(alpha)
            .ok_or_else(|| LieqError::NotARoot(format!("{:?}", alpha.coords)))?;
        Ok(self.pairing_by_index(lam, idx))
    }

    /// `⟨λ, α⟩` for a root given by index (no lookups).
    pub fn pairing_by_index(&self, lam: &Weight, idx: usize) -> i64 {
        lam.fw.iter().zip(&self.coroots[idx]).map(|(q, c)| q * c).sum()
    }

    /// Fundamental-weight coordinates of a root by index, cached.
    pub fn root_fw_by_index(&self, idx: usize) -> &Weight {
        &self.root_fw[idx]
    }

    /// `⟨β, α⟩` for two roots.
    pub fn pairing_roots(&self, beta: &Root, alpha: &Root) -> Result<i64> {
        self.pairing(&self.root_to_weight(beta), alpha)
    }

    /// `σ_α(λ) = λ − ⟨λ, α⟩ α`.
    pub fn reflect_weight(&self, alpha: &Root, lam: &Weight) -> Result<Weight> {
        let p = self.pairing(lam, alpha)?;
        Ok(lam.sub(&self.root_to_weight(alpha).scale(p)))
    }

    /// Root-valued reflection.
    pub fn reflect_root(&self, alpha: &Root, beta: &Root) -> Result<Root> {
        let p = self.pairing_roots(beta, alpha)?;
        Ok(Root::new(
            beta.coords
                .iter()
                .zip(&alpha.coords)
                .map(|(b, a)| b - p * a)
                .collect(),
        ))
    }

    /// Reflection in the `i`-th simple root, on weights.
    pub fn simple_reflect_weight(&self, i: usize, lam: &Weight) -> Weight {
        let q = lam.fw[i];
        Weight::new(
            (0..self.rank)
                .map(|j| lam.fw[j] - q * self.cartan[i][j])
                .collect(),
        )
    }

    /// Full Weyl orbit by closure under simple reflections, sorted.
    pub fn weyl_orbit(&self, lam: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lam.clone());
        queue.push_back(lam.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let im = self.simple_reflect_weight(i, &w);
                if seen.insert(im.clone()) {
                    queue.push_back(im);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The unique dominant orbit element plus a word of simple reflections
    /// realizing it (apply left to right to the input).
    pub fn dominant_representative(&self, lam: &Weight) -> (Weight, Vec<usize>) {
        let mut w = lam.clone();
        let mut word = Vec::new();
        loop {
            match w.fw.iter().position(|&q| q < 0) {
                None => return (w, word),
                Some(i) => {
                    w = self.simple_reflect_weight(i, &w);
                    word.push(i);
                }
            }
        }
    }

    pub fn apply_word(&self, word: &[usize], lam: &Weight) -> Weight {
        let mut w = lam.clone();
        for &i in word {
            w = self.simple_reflect_weight(i, &w);
        }
        w
    }

    /// The β-string through λ inside a module weight set: the largest `j`, `k`
    /// with `λ − jβ` and `λ + kβ` in the set. Checks the string property.
    pub fn root_string(
        &self,
        lam: &Weight,
        beta: &Root,
        weight_set: &BTreeSet<Weight>,
    ) -> Result<(usize, usize)> {
        if !weight_set.contains(lam) {
            return Err(LieqError::Precondition(format!(
                "{:?} is not in the weight set",
                lam.fw
            )));
        }
        let beta_w = self.root_to_weight(beta);
        let mut j = 0usize;
        while weight_set.contains(&lam.sub(&beta_w.scale(j as i64 + 1))) {
            j += 1;
        }
        let mut k = 0usize;
        while weight_set.contains(&lam.add(&beta_w.scale(k as i64 + 1))) {
            k += 1;
        }
        let pairing = self.pairing(lam, beta)?;
        if pairing != j as i64 - k as i64 {
            return Err(LieqError::StringPropertyViolation(format!(
                "pairing {} but string gives j-k = {}",
                pairing,
                j as i64 - k as i64
            )));
        }
        Ok((j, k))
    }

    pub fn n_factors(&self) -> usize {
        self.types.len()
    }

    pub fn factor_offset(&self, i: usize) -> usize {
        self.factor_offsets[i]
    }

    pub fn factor_range(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.factor_offsets[i];
        start..start + self.types[i].rank
    }

    fn factor_of_root(&self, r: &Root) -> usize {
        let support = r.coords.iter().position(|&x| x != 0).expect("zero root");
        (0..self.types.len())
            .rfind(|&f| self.factor_offsets[f] <= support)
            .expect("offset table")
    }

    /// Restriction of a weight to factor `i`, in that factor's fundamental
    /// weights. Errors on a simple system.
    pub fn factor_projection(&self, i: usize, lam: &Weight) -> Result<Weight> {
        if self.is_simple() {
            return Err(LieqError::NotSemisimple);
        }
        Ok(Weight::new(self.factor_range(i).map(|j| lam.fw[j]).collect()))
    }

    /// Embeds a weight of factor `i` into the full system.
    pub fn embed_factor_weight(&self, i: usize, lam: &Weight) -> Weight {
        let mut fw = vec![0i64; self.rank];
        for (local, j) in self.factor_range(i).enumerate() {
            fw[j] = lam.fw[local];
        }
        Weight::new(fw)
    }

    /// Dominant long root (unique for simple systems).
    pub fn beta_max(&self) -> Result<&Root> {
        if !self.is_simple() {
            return Err(LieqError::NotSimple);
        }
        Ok(&self.roots[self.beta_max_idx[0]])
    }

    /// Dominant short root (equals `beta_max` for simply laced types).
    pub fn beta_min(&self) -> Result<&Root> {
        if !self.is_simple() {
            return Err(LieqError::NotSimple);
        }
        Ok(&self.roots[self.beta_min_idx[0]])
    }

    pub fn beta_max_of_factor(&self, i: usize) -> &Root {
        &self.roots[self.beta_max_idx[i]]
    }

    pub fn beta_min_of_factor(&self, i: usize) -> &Root {
        &self.roots[self.beta_min_idx[i]]
    }

    /// JSON export of the root datum.
    pub fn to_json(&self) -> Value {
        let inv: Vec<Vec<String>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| q_string(self.inverse_cartan.at(i, j)))
                    .collect()
            })
            .collect();
        let factors: Vec<Value> = (0..self.types.len())
            .map(|f| {
                let bmax = self.beta_max_of_factor(f);
                let bmin = self.beta_min_of_factor(f);
                json!({
                    "type": self.types[f].name(),
                    "beta_max": {
                        "root": bmax.coords,
                        "fw": self.root_to_weight(bmax).fw,
                    },
                    "beta_min": {
                        "root": bmin.coords,
                        "fw": self.root_to_weight(bmin).fw,
                    },
                })
            })
            .collect();
        json!({
            "schema": "rootdatum/1",
            "type": self.type_name(),
            "rank": self.rank,
            "cartan": self.cartan,
            "inverse_cartan": inv,
            "symmetrizer": self.sym_d,
            "n_positive": self.n_positive,
            "positive_roots": self.positive_roots().iter().map(|r| r.coords.clone()).collect::<Vec<_>>(),
            "factors": factors,
        })
    }
}

fn invert_integer_matrix(c: &[Vec<i64>]) -> Result<QMat> {
    let n = c.len();
    let m = Mat::from_fn(n, n, |i, j| qi(c[i][j]));
    let aug = m.hstack(&QMat::identity(n));
    let (r, pivots) = aug.rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(LieqError::NoSolution);
    }
    Ok(Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: Family, rank: usize) -> RootSystem {
        RootSystem::simple(SimpleType::new(name, rank).unwrap()).unwrap()
    }

    #[test]
    fn a2_positive_roots_by_closure() {
        let s = sys(Family::A, 2);
        assert_eq!(s.n_positive(), 3);
        let coords: BTreeSet<Vec<i64>> =
            s.positive_roots().iter().map(|r| r.coords.clone()).collect();
        assert!(coords.contains(&vec![1, 0]));
        assert!(coords.contains(&vec![0, 1]));
        assert!(coords.contains(&vec![1, 1]));
    }

    #[test]
    fn g2_dominant_roots() {
        let s = sys(Family::G, 2);
        assert_eq!(s.beta_max().unwrap().coords, vec![3, 2]);
        assert_eq!(s.root_to_weight(s.beta_max().unwrap()).fw, vec![0, 1]);
        assert_eq!(s.beta_min().unwrap().coords, vec![2, 1]);
        assert_eq!(s.root_to_weight(s.beta_min().unwrap()).fw, vec![1, 0]);
    }

    #[test]
    fn c3_dominant_roots() {
        let s = sys(Family::C, 3);
        assert_eq!(s.root_to_weight(s.beta_max().unwrap()).fw, vec![2, 0, 0]);
        assert_eq!(s.beta_max().unwrap().coords, vec![2, 2, 1]);
        assert_eq!(s.root_to_weight(s.beta_min().unwrap()).fw, vec![0, 1, 0]);
        assert_eq!(s.beta_min().unwrap().coords, vec![1, 2, 1]);
    }

    #[test]
    fn pairing_values() {
        let s = sys(Family::A, 2);
        // fundamental weights against simple roots
        for i in 0..2 {
            for j in 0..2 {
                let p = s.pairing(&Weight::fundamental(2, i), &s.simple_root(j)).unwrap();
                assert_eq!(p, i64::from(i == j));
            }
        }
        // ⟨β, β⟩ = 2 for every root
        for r in s.roots() {
            assert_eq!(s.pairing_roots(r, r).unwrap(), 2);
        }
        let p = s.pairing_roots(&s.simple_root(0), &s.simple_root(1)).unwrap();
        assert_eq!(p, -1);
    }

    #[test]
    fn pairing_values_are_small_and_three_only_in_g2() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let s = sys(f, n);
            let mut saw_three = false;
            for a in s.roots() {
                for b in s.roots() {
                    let p = s.pairing_roots(a, b).unwrap().abs();
                    assert!(p == 0 || p == 1 || p == 2 || p == 3 || a == b || *a == b.neg());
                    if p == 3 {
                        saw_three = true;
                    }
                }
            }
            assert_eq!(saw_three, f == Family::G);
        }
    }

    #[test]
    fn doubled_roots_never_occur() {
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::G, 2)] {
            let s = sys(f, n);
            for r in s.roots() {
                let doubled = Root::new(r.coords.iter().map(|x| 2 * x).collect());
                assert!(!s.is_root(&doubled));
            }
        }
    }

    #[test]
    fn reflections_are_involutions() {
        let s = sys(Family::B, 3);
        let lam = Weight::new(vec![1, -2, 3]);
        for alpha in s.roots() {
            let once = s.reflect_weight(alpha, &lam).unwrap();
            let twice = s.reflect_weight(alpha, &once).unwrap();
            assert_eq!(twice, lam);
        }
        let alpha = s.simple_root(0);
        assert_eq!(
            s.reflect_root(&alpha, &alpha).unwrap(),
            alpha.neg()
        );
        // fixed when the pairing vanishes
        let fixed = Weight::new(vec![0, 1, 0]);
        assert_eq!(s.reflect_weight(&alpha, &fixed).unwrap(), fixed);
    }

    #[test]
    fn orbit_sizes_and_dominant_representative() {
        let a2 = sys(Family::A, 2);
        assert_eq!(a2.weyl_orbit(&Weight::fundamental(2, 0)).len(), 3);

        let a1 = sys(Family::A, 1);
        let orbit = a1.weyl_orbit(&Weight::new(vec![1]));
        assert_eq!(orbit, vec![Weight::new(vec![-1]), Weight::new(vec![1])]);

        let (dom, word) = a1.dominant_representative(&Weight::new(vec![-1]));
        assert_eq!(dom, Weight::new(vec![1]));
        assert_eq!(word, vec![0]);

        let lam = Weight::new(vec![2, 1]);
        let (dom2, word2) = a2.dominant_representative(&lam);
        assert_eq!(dom2, lam);
        assert!(word2.is_empty());

        // every orbit contains exactly one dominant weight
        let g2 = sys(Family::G, 2);
        let orbit = g2.weyl_orbit(&Weight::new(vec![1, -1]));
        assert_eq!(orbit.iter().filter(|w| w.is_dominant()).count(), 1);
    }

    #[test]
    fn adjoint_root_strings() {
        let a1 = sys(Family::A, 1);
        let alpha = a1.simple_root(0);
        let alpha_w = a1.root_to_weight(&alpha);
        let mut set: BTreeSet<Weight> = BTreeSet::new();
        set.insert(alpha_w.clone());
        set.insert(Weight::zero(1));
        set.insert(alpha_w.neg());
        let (j, k) = a1.root_string(&alpha_w, &alpha, &set).unwrap();
        assert_eq!((j, k), (2, 0));
        let (j0, k0) = a1.root_string(&Weight::zero(1), &alpha, &set).unwrap();
        assert_eq!(j0, k0);
    }

    #[test]
    fn factor_projections() {
        let s = RootSystem::build(&[
            SimpleType::new(Family::A, 1).unwrap(),
            SimpleType::new(Family::A, 1).unwrap(),
        ])
        .unwrap();
        let lam = Weight::new(vec![1, 0]);
        assert_eq!(s.factor_projection(0, &lam).unwrap(), Weight::new(vec![1]));
        assert_eq!(s.factor_projection(1, &lam).unwrap(), Weight::new(vec![0]));

        let c2a1 = RootSystem::build(&[
            SimpleType::new(Family::C, 2).unwrap(),
            SimpleType::new(Family::A, 1).unwrap(),
        ])
        .unwrap();
        let mu = Weight::new(vec![1, 0, 1]);
        assert_eq!(c2a1.factor_projection(0, &mu).unwrap(), Weight::new(vec![1, 0]));
        let back = c2a1.embed_factor_weight(0, &Weight::new(vec![1, 0]));
        let back2 = c2a1.embed_factor_weight(1, &Weight::new(vec![1]));
        assert_eq!(back.add(&back2), mu);
    }

    #[test]
    fn positive_counts_match_closed_forms() {
        for (f, n) in [
            (Family::A, 5),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 5),
            (Family::G, 2),
            (Family::F, 4),
            (Family::E, 6),
        ] {
            let t = SimpleType::new(f, n).unwrap();
            let s = RootSystem::simple(t).unwrap();
            assert_eq!(s.n_positive(), t.positive_count(), "{}", t.name());
        }
    }

    #[test]
    fn inverse_cartan_positive_for_simple_types() {
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::E, 7)] {
            let s = sys(f, n);
            for i in 0..s.rank() {
                for j in 0..s.rank() {
                    assert!(s.inverse_cartan().at(i, j) > &Q::zero());
                }
            }
        }
    }

    #[test]
    fn beta_max_dominates_every_root() {
        for (f, n) in [(Family::B, 3), (Family::G, 2), (Family::F, 4)] {
            let s = sys(f, n);
            let bmax = s.beta_max().unwrap().clone();
            for r in s.roots() {
                assert!(bmax
                    .coords
                    .iter()
                    .zip(&r.coords)
                    .all(|(m, a)| m - a >= 0));
            }
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!(SimpleType::new(Family::E, 9).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
    }
}
