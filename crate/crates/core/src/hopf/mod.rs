//! Generic connected graded Hopf algebra machinery and the polynomial and word instances.

mod axioms;
mod poly;
mod words;

pub use axioms::{check_axioms, AxiomReport, LawResult};
pub use poly::Poly;
pub use words::{
    concat, deconcat, deshuffle, shuffle, shuffle_permutations, word, ConcatDeshuffle, ShuffleDeconcat,
};

use crate::linalg::{LinComb, TensorComb};
use crate::scalar::{int, Scalar};
use crate::symbols::{Canonical, Graded};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("grade bound {bound} exceeded by an element of grade {grade}")]
    GradeBoundExceeded { bound: usize, grade: usize },
}

/// Basis requirements shared by all instances.
pub trait BasisElement: Clone + Ord + Hash + Debug + Graded + Canonical + Send + Sync {}
impl<T: Clone + Ord + Hash + Debug + Graded + Canonical + Send + Sync> BasisElement for T {}

/// A connected graded Hopf algebra presented on a canonical basis.
pub trait HopfAlgebra: Sync {
    type Basis: BasisElement;

    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    fn unit(&self) -> Self::Basis;
    fn product(&self, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;
    fn coproduct(&self, b: &Self::Basis) -> TensorComb<Self::Basis>;

    fn counit(&self, b: &Self::Basis) -> Scalar {
        if b.grade() == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// Antipode on a basis element. Instances with a closed form override this.
    fn antipode(&self, b: &Self::Basis) -> LinComb<Self::Basis> {
        antipode_right(self, &LinComb::basis(b.clone()))
    }

    /// Every basis element of exactly grade `g`, in canonical order.
    fn basis_of_grade(&self, g: usize) -> Vec<Self::Basis>;

    fn basis_up_to(&self, n: usize) -> Vec<Self::Basis> {
        (0..=n).flat_map(|g| self.basis_of_grade(g)).collect()
    }
}

pub fn mul<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>, y: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&h.product(a, b), &(ca * cb));
        }
    }
    out
}

/// Product with every term of grade above `n` discarded.
pub fn mul_truncated<H: HopfAlgebra + ?Sized>(
    h: &H,
    x: &LinComb<H::Basis>,
    y: &LinComb<H::Basis>,
    n: usize,
) -> LinComb<H::Basis> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        if a.grade() > n {
            continue;
        }
        for (b, cb) in y.iter() {
            if a.grade() + b.grade() <= n {
                out.add_scaled(&h.product(a, b), &(ca * cb));
            }
        }
    }
    out
}

pub fn coproduct<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> TensorComb<H::Basis> {
    let mut out = TensorComb::zero();
    for (b, c) in x.iter() {
        out.add_scaled(&h.coproduct(b), c);
    }
    out
}

pub fn counit<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> Scalar {
    x.iter().fold(Scalar::zero(), |acc, (b, c)| acc + c * h.counit(b))
}

pub fn antipode<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    x.map_linear(|b| h.antipode(b))
}

/// `Δ̃x = Δx − 𝟏⊗x − x⊗𝟏`.
pub fn reduced_coproduct<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> TensorComb<H::Basis> {
    let one = LinComb::basis(h.unit());
    let mut out = coproduct(h, x);
    out -= &TensorComb::tensor(&one, x);
    out -= &TensorComb::tensor(x, &one);
    out
}

/// Product in `H ⊗ H`: `(a₁⊗a₂)(b₁⊗b₂) = a₁b₁ ⊗ a₂b₂`.
pub fn mul_tensor<H: HopfAlgebra + ?Sized>(
    h: &H,
    x: &TensorComb<H::Basis>,
    y: &TensorComb<H::Basis>,
) -> TensorComb<H::Basis> {
    let mut out = TensorComb::zero();
    for (a1, a2, ca) in x.iter() {
        for (b1, b2, cb) in y.iter() {
            let t = TensorComb::tensor(&h.product(a1, b1), &h.product(a2, b2));
            out.add_scaled(&t, &(ca * cb));
        }
    }
    out
}

/// `m(f ⊗ g)Δx`.
pub fn convolve_apply<H, F, G>(h: &H, f: F, g: G, x: &LinComb<H::Basis>) -> LinComb<H::Basis>
where
    H: HopfAlgebra + ?Sized,
    F: Fn(&H::Basis) -> LinComb<H::Basis>,
    G: Fn(&H::Basis) -> LinComb<H::Basis>,
{
    let mut out = LinComb::zero();
    for (a, b, c) in coproduct(h, x).iter() {
        out.add_scaled(&mul(h, &f(a), &g(b)), c);
    }
    out
}

/// Which side the antipode recursion solves for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

struct AntipodeRecursion<'a, H: HopfAlgebra + ?Sized> {
    h: &'a H,
    side: Side,
    memo: HashMap<H::Basis, LinComb<H::Basis>>,
}

impl<H: HopfAlgebra + ?Sized> AntipodeRecursion<'_, H> {
    fn basis(&mut self, b: &H::Basis) -> LinComb<H::Basis> {
        if let Some(v) = self.memo.get(b) {
            return v.clone();
        }
        let v = if b.grade() == 0 {
            LinComb::basis(b.clone())
        } else {
            let mut acc = -LinComb::basis(b.clone());
            let red = reduced_coproduct(self.h, &LinComb::basis(b.clone()));
            for (x, y, c) in red.iter() {
                let term = match self.side {
                    Side::Right => {
                        let sy = self.basis(y);
                        mul(self.h, &LinComb::basis(x.clone()), &sy)
                    }
                    Side::Left => {
                        let sx = self.basis(x);
                        mul(self.h, &sx, &LinComb::basis(y.clone()))
                    }
                };
                acc.add_scaled(&term, &-c.clone());
            }
            acc
        };
        self.memo.insert(b.clone(), v.clone());
        v
    }
}

/// Antipode from `S h = −h − Σ h′ · S h″` (grade-0 part is the identity on `k𝟏`).
pub fn antipode_right<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    let mut rec = AntipodeRecursion { h, side: Side::Right, memo: HashMap::new() };
    x.map_linear(|b| rec.basis(b))
}

/// Antipode from `S h = −h − Σ S h′ · h″`.
pub fn antipode_left<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    let mut rec = AntipodeRecursion { h, side: Side::Left, memo: HashMap::new() };
    x.map_linear(|b| rec.basis(b))
}

/// Linear endomap stored as a table on the canonical basis up to a grade bound.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<B: Ord> {
    max_grade: usize,
    table: BTreeMap<B, LinComb<B>>,
}

impl<B: BasisElement> LinearMap<B> {
    pub fn from_fn<H, F>(h: &H, max_grade: usize, mut f: F) -> Self
    where
        H: HopfAlgebra<Basis = B> + ?Sized,
        F: FnMut(&B) -> LinComb<B>,
    {
        let table = h.basis_up_to(max_grade).into_iter().map(|b| {
            let v = f(&b);
            (b, v)
        });
        LinearMap { max_grade, table: table.collect() }
    }

    pub fn identity<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, max_grade: usize) -> Self {
        Self::from_fn(h, max_grade, |b| LinComb::basis(b.clone()))
    }

    /// `u∘ε`, the unit of the convolution product.
    pub fn unit_counit<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, max_grade: usize) -> Self {
        let one = h.unit();
        Self::from_fn(h, max_grade, |b| LinComb::term(one.clone(), h.counit(b)))
    }

    pub fn antipode<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, max_grade: usize) -> Self {
        Self::from_fn(h, max_grade, |b| h.antipode(b))
    }

    /// The grading derivation `D b = |b| b`.
    pub fn grading<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, max_grade: usize) -> Self {
        Self::from_fn(h, max_grade, |b| LinComb::term(b.clone(), int(b.grade() as i64)))
    }

    pub fn max_grade(&self) -> usize {
        self.max_grade
    }

    pub fn apply_basis(&self, b: &B) -> Result<LinComb<B>, HopfError> {
        self.table.get(b).cloned().ok_or(HopfError::GradeBoundExceeded {
            bound: self.max_grade,
            grade: b.grade(),
        })
    }

    pub fn apply(&self, x: &LinComb<B>) -> Result<LinComb<B>, HopfError> {
        let mut out = LinComb::zero();
        for (b, c) in x.iter() {
            out.add_scaled(&self.apply_basis(b)?, c);
        }
        Ok(out)
    }

    pub fn compose(&self, inner: &Self) -> Result<Self, HopfError> {
        let mut table = BTreeMap::new();
        for (b, v) in &inner.table {
            table.insert(b.clone(), self.apply(v)?);
        }
        Ok(LinearMap { max_grade: inner.max_grade, table })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &LinComb<B>)> {
        self.table.iter()
    }
}

/// `(S ∗ T)(x) = m(S ⊗ T)Δx` on the common grade range of both tables.
pub fn convolution<H: HopfAlgebra + ?Sized>(
    h: &H,
    s: &LinearMap<H::Basis>,
    t: &LinearMap<H::Basis>,
) -> Result<LinearMap<H::Basis>, HopfError> {
    let bound = s.max_grade.min(t.max_grade);
    let mut table = BTreeMap::new();
    for b in h.basis_up_to(bound) {
        let mut out = LinComb::zero();
        for (x, y, c) in h.coproduct(&b).iter() {
            out.add_scaled(&mul(h, &s.apply_basis(x)?, &t.apply_basis(y)?), c);
        }
        table.insert(b, out);
    }
    Ok(LinearMap { max_grade: bound, table })
}

/// Renders a basis element for witness messages.
pub(crate) fn show<B: Canonical>(b: &B, dim: usize) -> String {
    b.canonical(dim)
}
