use super::HopfAlgebra;
use crate::linalg::{LinComb, TensorComb};
use crate::scalar::{big, int, Scalar};
use crate::symbols::{Graded, MultiIndex};
use num_bigint::BigInt;
use num_traits::One;

/// Polynomial Hopf algebra `K[X₁, …, X_d]` with the binomial coproduct.
#[derive(Clone, Debug)]
pub struct Poly {
    dim: usize,
}

impl Poly {
    pub fn new(dim: usize) -> Self {
        Poly { dim }
    }
}

/// Multi-binomial `binom(n, m) = Π binom(nᵢ, mᵢ)`.
pub fn multi_binomial(n: &MultiIndex, m: &MultiIndex) -> BigInt {
    n.entries()
        .iter()
        .zip(m.entries())
        .map(|(&a, &b)| crate::scalar::binomial(a as usize, b as usize))
        .product()
}

impl HopfAlgebra for Poly {
    type Basis = MultiIndex;

    fn name(&self) -> &str {
        "poly"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn unit(&self) -> MultiIndex {
        MultiIndex::zero(self.dim)
    }

    fn product(&self, a: &MultiIndex, b: &MultiIndex) -> LinComb<MultiIndex> {
        LinComb::basis(a.add(b))
    }

    /// `Δ Xⁿ = Σ_{m ≤ n} binom(n, m) Xᵐ ⊗ X^{n−m}`.
    fn coproduct(&self, n: &MultiIndex) -> TensorComb<MultiIndex> {
        let mut out = TensorComb::zero();
        for m in n.below() {
            let c = big(&multi_binomial(n, &m));
            let rest = n.sub(&m);
            out.add_term(m, rest, c);
        }
        out
    }

    fn antipode(&self, n: &MultiIndex) -> LinComb<MultiIndex> {
        let sign: Scalar = if n.grade() % 2 == 0 { Scalar::one() } else { int(-1) };
        LinComb::term(n.clone(), sign)
    }

    fn basis_of_grade(&self, g: usize) -> Vec<MultiIndex> {
        MultiIndex::all_of_grade(self.dim, g)
    }
}
