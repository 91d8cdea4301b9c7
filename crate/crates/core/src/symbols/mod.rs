//! Canonical basis elements: multi-indices, words, decorated rooted trees and forests.

mod forest;
mod multiindex;
mod parse;
mod word;

pub use forest::{canonical_sort, Forest, ForestCatalog, Tree};
pub use multiindex::MultiIndex;
pub use parse::{parse_expr, parse_forest, parse_multiindex, parse_word, AnyComb, Kind, ParseError};
pub use word::{Word, TreeWord};

/// Integer decoration of a node, or a letter of the alphabet `{1, …, d}`.
pub type Letter = u16;

/// Largest supported alphabet size.
pub const MAX_DIM: usize = 64;

/// Canonical text encoding, which may depend on the alphabet size (digit words need `d ≤ 9`).
pub trait Canonical {
    fn canonical(&self, dim: usize) -> String;
}

/// Grading shared by every basis type.
pub trait Graded {
    fn grade(&self) -> usize;
}

impl<A: Canonical, B: Canonical> Canonical for (A, B) {
    fn canonical(&self, dim: usize) -> String {
        format!("{}⊗{}", self.0.canonical(dim), self.1.canonical(dim))
    }
}
