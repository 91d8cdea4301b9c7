use super::{Canonical, Graded, Letter};
use std::fmt;

/// Decorated rooted tree `⌊ζ⌋_i`: root label `i` with children forest `ζ`.
///
/// Field order matters: the derived ordering is lexicographic on (grade, label, children).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    grade: usize,
    label: Letter,
    children: Forest,
}

/// Commutative product of trees, stored as a sorted list of (tree, multiplicity).
/// The empty forest is the unit `𝟏`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Forest {
    grade: usize,
    trees: Vec<(Tree, usize)>,
}

impl Tree {
    /// `⌊children⌋_label`.
    pub fn new(label: Letter, children: Forest) -> Self {
        Tree {
            grade: children.grade + 1,
            label,
            children,
        }
    }

    /// The single node `•_label`.
    pub fn leaf(label: Letter) -> Self {
        Tree::new(label, Forest::unit())
    }

    pub fn label(&self) -> Letter {
        self.label
    }

    pub fn children(&self) -> &Forest {
        &self.children
    }

    pub fn as_forest(&self) -> Forest {
        Forest::single(self.clone())
    }

    pub fn relabel<F: Fn(Letter) -> Letter>(&self, f: &F) -> Tree {
        Tree::new(f(self.label), self.children.relabel(f))
    }

    pub fn max_label(&self) -> Letter {
        self.label.max(self.children.max_label())
    }

    /// Tree factorial `τ! = |τ| · Π children!`.
    pub fn factorial(&self) -> u128 {
        self.grade as u128 * self.children.factorial()
    }
}

impl Forest {
    pub fn unit() -> Self {
        Forest::default()
    }

    pub fn single(t: Tree) -> Self {
        Forest {
            grade: t.grade,
            trees: vec![(t, 1)],
        }
    }

    /// Canonical forest from an arbitrary list of trees.
    pub fn from_trees<I: IntoIterator<Item = Tree>>(trees: I) -> Self {
        let mut v: Vec<Tree> = trees.into_iter().collect();
        v.sort();
        let mut out = Forest::unit();
        for t in v {
            out.grade += t.grade;
            match out.trees.last_mut() {
                Some((last, m)) if *last == t => *m += 1,
                _ => out.trees.push((t, 1)),
            }
        }
        out
    }

    pub fn from_counts(pairs: Vec<(Tree, usize)>) -> Self {
        Forest::from_trees(
            pairs
                .into_iter()
                .flat_map(|(t, m)| std::iter::repeat(t).take(m)),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    /// Tree with multiplicity pairs in canonical order.
    pub fn counts(&self) -> &[(Tree, usize)] {
        &self.trees
    }

    /// Trees listed with repetition, in canonical order.
    pub fn tree_list(&self) -> Vec<Tree> {
        self.trees
            .iter()
            .flat_map(|(t, m)| std::iter::repeat(t.clone()).take(*m))
            .collect()
    }

    pub fn num_trees(&self) -> usize {
        self.trees.iter().map(|(_, m)| m).sum()
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self.trees.as_slice() {
            [(t, 1)] => Some(t),
            _ => None,
        }
    }

    /// The commutative product `ζ₁ ⊙ ζ₂`.
    pub fn product(&self, other: &Forest) -> Forest {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        let (mut i, mut j) = (0, 0);
        while i < self.trees.len() || j < other.trees.len() {
            if j == other.trees.len() || (i < self.trees.len() && self.trees[i].0 < other.trees[j].0) {
                trees.push(self.trees[i].clone());
                i += 1;
            } else if i == self.trees.len() || other.trees[j].0 < self.trees[i].0 {
                trees.push(other.trees[j].clone());
                j += 1;
            } else {
                trees.push((self.trees[i].0.clone(), self.trees[i].1 + other.trees[j].1));
                i += 1;
                j += 1;
            }
        }
        Forest {
            grade: self.grade + other.grade,
            trees,
        }
    }

    /// `⌊self⌋_label`.
    pub fn graft(&self, label: Letter) -> Tree {
        Tree::new(label, self.clone())
    }

    pub fn relabel<F: Fn(Letter) -> Letter>(&self, f: &F) -> Forest {
        Forest::from_trees(self.tree_list().iter().map(|t| t.relabel(f)))
    }

    pub fn max_label(&self) -> Letter {
        self.trees.iter().map(|(t, _)| t.max_label()).max().unwrap_or(0)
    }

    /// Forest factorial: product of the tree factorials.
    pub fn factorial(&self) -> u128 {
        self.trees
            .iter()
            .map(|(t, m)| t.factorial().pow(*m as u32))
            .product()
    }

    /// Labels of all nodes in the forest.
    pub fn labels(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for t in self.tree_list() {
            out.push(t.label);
            out.extend(t.children.labels());
        }
        out
    }
}

/// `canonical_sort`: the canonical forest of a list of trees.
pub fn canonical_sort(trees: Vec<Tree>) -> Forest {
    Forest::from_trees(trees)
}

impl Graded for Tree {
    fn grade(&self) -> usize {
        self.grade
    }
}

impl Graded for Forest {
    fn grade(&self) -> usize {
        self.grade
    }
}

impl Canonical for Tree {
    fn canonical(&self, _dim: usize) -> String {
        self.to_string()
    }
}

impl Canonical for Forest {
    fn canonical(&self, _dim: usize) -> String {
        self.to_string()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.children.is_unit() {
            write!(f, "[]_{}", self.label)
        } else {
            write!(f, "[{}]_{}", self.children, self.label)
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.tree_list().iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All trees and forests over the labels `{1, …, dim}` up to a grade bound, in canonical order.
#[derive(Clone, Debug)]
pub struct ForestCatalog {
    dim: usize,
    trees: Vec<Vec<Tree>>,
    forests: Vec<Vec<Forest>>,
}

impl ForestCatalog {
    pub fn new(dim: usize, max_grade: usize) -> Self {
        let mut trees: Vec<Vec<Tree>> = vec![Vec::new()];
        let mut forests: Vec<Vec<Forest>> = vec![vec![Forest::unit()]];
        for g in 1..=max_grade {
            let mut tg: Vec<Tree> = forests[g - 1]
                .iter()
                .flat_map(|f| (1..=dim as Letter).map(move |i| f.graft(i)))
                .collect();
            tg.sort();
            trees.push(tg);
            let mut fg = Vec::new();
            let all_trees: Vec<&Tree> = trees.iter().flatten().collect();
            multisets(&all_trees, 0, g, &mut Vec::new(), &mut fg);
            fg.sort();
            forests.push(fg);
        }
        ForestCatalog { dim, trees, forests }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_grade(&self) -> usize {
        self.forests.len() - 1
    }

    pub fn trees_of_grade(&self, g: usize) -> &[Tree] {
        &self.trees[g]
    }

    pub fn forests_of_grade(&self, g: usize) -> &[Forest] {
        &self.forests[g]
    }

    pub fn trees_up_to(&self, n: usize) -> impl Iterator<Item = &Tree> {
        self.trees[..=n.min(self.max_grade())].iter().flatten()
    }

    pub fn forests_up_to(&self, n: usize) -> impl Iterator<Item = &Forest> {
        self.forests[..=n.min(self.max_grade())].iter().flatten()
    }
}

fn multisets(pool: &[&Tree], start: usize, left: usize, acc: &mut Vec<Tree>, out: &mut Vec<Forest>) {
    if left == 0 {
        out.push(Forest::from_trees(acc.iter().cloned()));
        return;
    }
    for (k, t) in pool.iter().enumerate().skip(start) {
        if t.grade() <= left {
            acc.push((*t).clone());
            multisets(pool, k, left - t.grade(), acc, out);
            acc.pop();
        }
    }
}
