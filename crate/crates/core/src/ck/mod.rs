//! Connes–Kreimer Hopf algebra of decorated forests, its cut and split representations,
//! the dual Grossman–Larson algebra and the word/forest morphisms.

mod morphisms;

pub use morphisms::{kernel_of_phi, phi, phi_forest, phi_hat, psi, psi_forest};

use crate::hopf::HopfAlgebra;
use crate::linalg::{LinComb, TensorComb};
use crate::scalar::{big, Scalar};
use crate::symbols::{Forest, ForestCatalog, Graded, Tree};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

/// Admissible cut of a forest: `crown ⊗ trunk` with its multiplicity `c^ζ(C, T)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cut {
    pub crown: Forest,
    pub trunk: Forest,
    pub multiplicity: u64,
}

/// Member of the split family `𝔰(ζ)` with its coefficient `e_ζ(S)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Split {
    pub forest: Forest,
    pub coefficient: BigInt,
}

fn forest_tensor_product(x: &TensorComb<Forest>, y: &TensorComb<Forest>) -> TensorComb<Forest> {
    let mut out = TensorComb::zero();
    for (a1, a2, ca) in x.iter() {
        for (b1, b2, cb) in y.iter() {
            out.add_term(a1.product(b1), a2.product(b2), ca * cb);
        }
    }
    out
}

fn tree_coproduct(t: &Tree) -> TensorComb<Forest> {
    let mut out = TensorComb::term(t.as_forest(), Forest::unit(), Scalar::one());
    for (crown, trunk, c) in ck_coproduct(t.children()).iter() {
        out.add_term(crown.clone(), trunk.graft(t.label()).as_forest(), c.clone());
    }
    out
}

/// `Δ⋆`: `Δ⋆𝟏 = 𝟏⊗𝟏`, `Δ⋆⌊ζ⌋_i = ⌊ζ⌋_i⊗𝟏 + (id⊗⌊·⌋_i)Δ⋆ζ`, multiplicative over `⊙`.
pub fn ck_coproduct(z: &Forest) -> TensorComb<Forest> {
    let mut out = TensorComb::term(Forest::unit(), Forest::unit(), Scalar::one());
    for t in z.tree_list() {
        out = forest_tensor_product(&out, &tree_coproduct(&t));
    }
    out
}

fn cut_map(z: &Forest) -> BTreeMap<(Forest, Forest), u64> {
    let mut acc: BTreeMap<(Forest, Forest), u64> = BTreeMap::new();
    acc.insert((Forest::unit(), Forest::unit()), 1);
    for t in z.tree_list() {
        let mut tree_cuts: BTreeMap<(Forest, Forest), u64> = BTreeMap::new();
        tree_cuts.insert((t.as_forest(), Forest::unit()), 1);
        for ((crown, trunk), c) in cut_map(t.children()) {
            *tree_cuts.entry((crown, trunk.graft(t.label()).as_forest())).or_default() += c;
        }
        let mut next = BTreeMap::new();
        for ((c1, t1), m1) in &acc {
            for ((c2, t2), m2) in &tree_cuts {
                *next.entry((c1.product(c2), t1.product(t2))).or_default() += m1 * m2;
            }
        }
        acc = next;
    }
    acc
}

/// The cut family `𝔠(ζ)` with multiplicities, including the empty cut `(𝟏, ζ)` and the full cut `(ζ, 𝟏)`.
pub fn enumerate_cuts(z: &Forest) -> Vec<Cut> {
    cut_map(z)
        .into_iter()
        .map(|((crown, trunk), multiplicity)| Cut { crown, trunk, multiplicity })
        .collect()
}

fn split_map(z: &Forest, memo: &mut HashMap<Tree, BTreeMap<Forest, BigInt>>) -> BTreeMap<Forest, BigInt> {
    let mut acc: BTreeMap<Forest, BigInt> = BTreeMap::new();
    acc.insert(Forest::unit(), BigInt::one());
    for t in z.tree_list() {
        let ts = tree_splits(&t, memo);
        let mut next: BTreeMap<Forest, BigInt> = BTreeMap::new();
        for (s1, e1) in &acc {
            for (s2, e2) in &ts {
                *next.entry(s1.product(s2)).or_default() += e1 * e2;
            }
        }
        next.retain(|_, e| !e.is_zero());
        acc = next;
    }
    acc
}

fn tree_splits(t: &Tree, memo: &mut HashMap<Tree, BTreeMap<Forest, BigInt>>) -> BTreeMap<Forest, BigInt> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let whole = t.as_forest();
    let mut out: BTreeMap<Forest, BigInt> = BTreeMap::new();
    for cut in enumerate_cuts(&whole) {
        if cut.trunk == whole {
            continue;
        }
        for (s, e) in split_map(&cut.trunk, memo) {
            *out.entry(cut.crown.product(&s)).or_default() -= e * BigInt::from(cut.multiplicity);
        }
    }
    out.retain(|_, e| !e.is_zero());
    memo.insert(t.clone(), out.clone());
    out
}

/// The split family `𝔰(ζ)` with coefficients `e_ζ(S)`, so that `Sζ = Σ e_ζ(S) S`.
pub fn enumerate_splits(z: &Forest) -> Vec<Split> {
    split_map(z, &mut HashMap::new())
        .into_iter()
        .map(|(forest, coefficient)| Split { forest, coefficient })
        .collect()
}

/// Antipode of `(⊙, Δ⋆)` from the split representation.
pub fn ck_antipode_splits(z: &Forest) -> LinComb<Forest> {
    LinComb::from_terms(enumerate_splits(z).into_iter().map(|s| (s.forest, big(&s.coefficient))))
}

fn antipode_tree(t: &Tree, memo: &mut HashMap<Tree, LinComb<Forest>>) -> LinComb<Forest> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let mut out = LinComb::zero();
    for (crown, trunk, c) in ck_coproduct(t.children()).iter() {
        let grafted = trunk.graft(t.label()).as_forest();
        let s = antipode_forest(crown, memo);
        for (f, v) in s.iter() {
            out.add_term(f.product(&grafted), -(v * c));
        }
    }
    memo.insert(t.clone(), out.clone());
    out
}

fn antipode_forest(z: &Forest, memo: &mut HashMap<Tree, LinComb<Forest>>) -> LinComb<Forest> {
    let mut acc = LinComb::basis(Forest::unit());
    for t in z.tree_list() {
        let st = antipode_tree(&t, memo);
        let mut next = LinComb::zero();
        for (a, ca) in acc.iter() {
            for (b, cb) in st.iter() {
                next.add_term(a.product(b), ca * cb);
            }
        }
        acc = next;
    }
    acc
}

/// Antipode of `(⊙, Δ⋆)` from the recursion `S⌊ζ⌋_i = −m⊙(S ⊗ ⌊·⌋_i)Δ⋆ζ`, multiplicative over `⊙`.
pub fn ck_antipode(z: &Forest) -> LinComb<Forest> {
    antipode_forest(z, &mut HashMap::new())
}

fn graft_into_tree(piece: &Tree, target: &Tree) -> Vec<Tree> {
    let mut out = vec![target.children().product(&piece.as_forest()).graft(target.label())];
    for f in graft_into_nodes(piece, target.children()) {
        out.push(f.graft(target.label()));
    }
    out
}

/// Every forest obtained by attaching `piece` as a new child of some node of `f`.
fn graft_into_nodes(piece: &Tree, f: &Forest) -> Vec<Forest> {
    let mut out = Vec::new();
    for (k, (t, _)) in f.counts().iter().enumerate() {
        let mut rest: Vec<(Tree, usize)> = f.counts().to_vec();
        rest[k].1 -= 1;
        let rest = Forest::from_counts(rest);
        for g in graft_into_tree(piece, t) {
            out.push(rest.product(&g.as_forest()));
        }
    }
    out
}

/// Forests that can arise by grafting the trees of `crown` onto `trunk` (a superset of the
/// support of `crown ⋆ trunk`).
pub fn graft_candidates(crown: &Forest, trunk: &Forest) -> BTreeSet<Forest> {
    let mut current: BTreeSet<Forest> = BTreeSet::from([trunk.clone()]);
    for piece in crown.tree_list() {
        let mut next = BTreeSet::new();
        for f in &current {
            next.insert(f.product(&piece.as_forest()));
            next.extend(graft_into_nodes(&piece, f));
        }
        current = next;
    }
    current
}

/// Grossman–Larson product `C ⋆ T = Σ_ζ c^ζ(C, T) ζ`.
pub fn gl_product(crown: &Forest, trunk: &Forest) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for z in graft_candidates(crown, trunk) {
        let c = ck_coproduct(&z).coeff(crown, trunk);
        out.add_term(z, c);
    }
    out
}

/// `Δ⊙ζ = Σ_{ζ₁ζ₂ = ζ} ζ₁ ⊗ ζ₂`, one term per pair of sub-forests.
pub fn forest_deconcat(z: &Forest) -> TensorComb<Forest> {
    let mut splits: Vec<(Vec<(Tree, usize)>, Vec<(Tree, usize)>)> = vec![(Vec::new(), Vec::new())];
    for (t, m) in z.counts() {
        let mut next = Vec::new();
        for (l, r) in &splits {
            for k in 0..=*m {
                let mut l = l.clone();
                let mut r = r.clone();
                l.push((t.clone(), k));
                r.push((t.clone(), m - k));
                next.push((l, r));
            }
        }
        splits = next;
    }
    let mut out = TensorComb::zero();
    for (l, r) in splits {
        out.add_term(Forest::from_counts(l), Forest::from_counts(r), Scalar::one());
    }
    out
}

/// Antipode of `(⋆, Δ⊙)` as the transpose of the Connes–Kreimer antipode.
pub fn gl_antipode_dual(eta: &Forest, catalog: &ForestCatalog) -> LinComb<Forest> {
    let g = eta.grade();
    assert!(g <= catalog.max_grade(), "catalog too small for grade {}", g);
    LinComb::from_terms(
        catalog
            .forests_of_grade(g)
            .iter()
            .map(|z| (z.clone(), ck_antipode(z).coeff(eta))),
    )
}

/// `(⟨ℱ_d⟩, ⊙, Δ⋆)`.
#[derive(Clone, Debug)]
pub struct ConnesKreimer {
    dim: usize,
}

impl ConnesKreimer {
    pub fn new(dim: usize) -> Self {
        ConnesKreimer { dim }
    }
}

impl HopfAlgebra for ConnesKreimer {
    type Basis = Forest;

    fn name(&self) -> &str {
        "connes_kreimer"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> Forest {
        Forest::unit()
    }
    fn product(&self, a: &Forest, b: &Forest) -> LinComb<Forest> {
        LinComb::basis(a.product(b))
    }
    fn coproduct(&self, b: &Forest) -> TensorComb<Forest> {
        ck_coproduct(b)
    }
    fn antipode(&self, b: &Forest) -> LinComb<Forest> {
        ck_antipode(b)
    }
    fn basis_of_grade(&self, g: usize) -> Vec<Forest> {
        ForestCatalog::new(self.dim, g).forests_of_grade(g).to_vec()
    }
    fn basis_up_to(&self, n: usize) -> Vec<Forest> {
        ForestCatalog::new(self.dim, n).forests_up_to(n).cloned().collect()
    }
}

/// `(⟨ℱ_d⟩, ⋆, Δ⊙)`, the graded dual of the Connes–Kreimer algebra.
///
/// Products of basis pairs are cached; clones share the cache.
#[derive(Clone, Debug)]
pub struct GrossmanLarson {
    dim: usize,
    memo: Arc<RwLock<HashMap<(Forest, Forest), LinComb<Forest>>>>,
}

impl GrossmanLarson {
    pub fn new(dim: usize) -> Self {
        GrossmanLarson { dim, memo: Arc::default() }
    }
}

impl HopfAlgebra for GrossmanLarson {
    type Basis = Forest;

    fn name(&self) -> &str {
        "grossman_larson"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> Forest {
        Forest::unit()
    }
    fn product(&self, a: &Forest, b: &Forest) -> LinComb<Forest> {
        if a.is_unit() {
            return LinComb::basis(b.clone());
        }
        if b.is_unit() {
            return LinComb::basis(a.clone());
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let value = gl_product(a, b);
        self.memo.write().unwrap().insert(key, value.clone());
        value
    }
    fn coproduct(&self, b: &Forest) -> TensorComb<Forest> {
        forest_deconcat(b)
    }
    fn basis_of_grade(&self, g: usize) -> Vec<Forest> {
        ForestCatalog::new(self.dim, g).forests_of_grade(g).to_vec()
    }
    fn basis_up_to(&self, n: usize) -> Vec<Forest> {
        ForestCatalog::new(self.dim, n).forests_up_to(n).cloned().collect()
    }
}

/// `•_i` as a forest.
pub fn leaf(i: u16) -> Forest {
    Tree::leaf(i).as_forest()
}

/// `⌊ζ⌋_i` as a forest.
pub fn grafted(z: &Forest, i: u16) -> Forest {
    z.graft(i).as_forest()
}
