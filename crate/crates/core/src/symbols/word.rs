use super::{Canonical, Graded, Letter, Tree};
use std::fmt;

/// Word `e_{i₁…iₙ}` over an ordered alphabet; the empty word is the unit `𝟏`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word<L = Letter>(Vec<L>);

/// Word whose letters are decorated trees (codomain of the map ψ).
pub type TreeWord = Word<Tree>;

impl<L: Clone> Word<L> {
    pub fn new(letters: Vec<L>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: L) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: L) -> Self {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().cloned().collect())
    }

    pub fn prefix(&self, k: usize) -> Self {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> Self {
        Word(self.0[k..].to_vec())
    }
}

impl Word<Letter> {
    /// All words of length `len` over `{1, …, dim}` in lexicographic order.
    pub fn all_of_length(dim: usize, len: usize) -> Vec<Word> {
        let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=dim as Letter).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Word).collect()
    }

    pub fn all_up_to(dim: usize, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|n| Word::all_of_length(dim, n)).collect()
    }
}

impl<L> Graded for Word<L> {
    fn grade(&self) -> usize {
        self.0.len()
    }
}

impl Canonical for Word<Letter> {
    fn canonical(&self, dim: usize) -> String {
        if self.0.is_empty() {
            "ε".to_string()
        } else if dim <= 9 {
            self.0.iter().map(|l| l.to_string()).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            format!("e{}", parts.join("."))
        }
    }
}

impl Canonical for Word<Tree> {
    fn canonical(&self, dim: usize) -> String {
        if self.0.is_empty() {
            "ε".to_string()
        } else {
            let parts: Vec<String> = self.0.iter().map(|t| t.canonical(dim)).collect();
            format!("w({})", parts.join("|"))
        }
    }
}

impl fmt::Display for Word<Letter> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.0.iter().copied().max().unwrap_or(1) as usize;
        write!(f, "{}", self.canonical(dim))
    }
}
