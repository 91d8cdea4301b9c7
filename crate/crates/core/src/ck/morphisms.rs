//! The Hopf morphism φ into the shuffle algebra, its ladder section φ̂, and the
//! monomorphism ψ into the shuffle algebra over the tree alphabet.

use super::ck_coproduct;
use crate::hopf::shuffle;
use crate::linalg::{kernel_of_map, LinComb};
use crate::symbols::{Forest, ForestCatalog, Letter, Tree, TreeWord, Word};

/// `φ(𝟏) = 𝟏`, `φ(⌊ζ⌋_i) = φ(ζ)·e_i`, `φ(ζ₁ζ₂) = φ(ζ₁) ⧢ φ(ζ₂)`.
pub fn phi_forest(z: &Forest) -> LinComb<Word> {
    let mut acc = LinComb::basis(Word::empty());
    for t in z.tree_list() {
        let pt = phi_forest(t.children()).map_basis(|w| w.push(t.label()));
        let mut next = LinComb::zero();
        for (u, cu) in acc.iter() {
            for (v, cv) in pt.iter() {
                next.add_scaled(&shuffle(u, v), &(cu * cv));
            }
        }
        acc = next;
    }
    acc
}

pub fn phi(x: &LinComb<Forest>) -> LinComb<Word> {
    x.map_linear(phi_forest)
}

/// Ladder tree `φ̂(w·e_i) = ⌊φ̂(w)⌋_i` with `φ̂(𝟏) = 𝟏`.
pub fn phi_hat(w: &Word) -> Forest {
    w.letters()
        .iter()
        .fold(Forest::unit(), |acc, &i: &Letter| acc.graft(i).as_forest())
}

/// `ψ(𝟏) = 𝟏`, `ψ(⌊ζ⌋_i) = Σ ψ(C)·⌊T⌋_i` over `Δ⋆ζ = Σ C⊗T`, multiplicative into `⧢`.
pub fn psi_forest(z: &Forest) -> LinComb<TreeWord> {
    let mut acc = LinComb::basis(TreeWord::empty());
    for t in z.tree_list() {
        let mut pt = LinComb::zero();
        for (crown, trunk, c) in ck_coproduct(t.children()).iter() {
            let letter: Tree = trunk.graft(t.label());
            pt.add_scaled(&psi_forest(crown).map_basis(|w| w.push(letter.clone())), c);
        }
        let mut next = LinComb::zero();
        for (u, cu) in acc.iter() {
            for (v, cv) in pt.iter() {
                next.add_scaled(&shuffle(u, v), &(cu * cv));
            }
        }
        acc = next;
    }
    acc
}

pub fn psi(x: &LinComb<Forest>) -> LinComb<TreeWord> {
    x.map_linear(psi_forest)
}

/// A basis of `⟨ℱ_dⁿ⟩ ∩ ker φ`, grade by grade.
pub fn kernel_of_phi(catalog: &ForestCatalog, n: usize) -> Vec<LinComb<Forest>> {
    (1..=n.min(catalog.max_grade()))
        .flat_map(|g| kernel_of_map(catalog.forests_of_grade(g), phi_forest))
        .collect()
}
