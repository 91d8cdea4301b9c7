use super::HopfAlgebra;
use crate::linalg::{LinComb, TensorComb};
use crate::scalar::{int, Coeff, Scalar};
use crate::symbols::{Letter, Word};
use num_traits::One;

/// `Sh(i, n)`: permutations σ of `1..=n` increasing on `1..=i` and on `i+1..=n`,
/// in one-line notation and lexicographic order of `{σ(1), …, σ(i)}`.
pub fn shuffle_permutations(i: usize, n: usize) -> Vec<Vec<usize>> {
    subsets(n, i)
        .into_iter()
        .map(|left| {
            let right = (1..=n).filter(|k| !left.contains(k));
            left.iter().copied().chain(right).collect()
        })
        .collect()
}

/// All `k`-subsets of `{1, …, n}` as increasing vectors, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for x in start..=n {
            acc.push(x);
            rec(x + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Shuffle product `u ⧢ v` over any ordered alphabet.
pub fn shuffle<L: Clone + Ord, S: Coeff>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>, S> {
    let n = u.len() + v.len();
    let mut out = LinComb::zero();
    for positions in subsets(n, u.len()) {
        let mut letters = Vec::with_capacity(n);
        let (mut iu, mut iv) = (0, 0);
        for slot in 1..=n {
            if iu < positions.len() && positions[iu] == slot {
                letters.push(u.letters()[iu].clone());
                iu += 1;
            } else {
                letters.push(v.letters()[iv].clone());
                iv += 1;
            }
        }
        out.add_term(Word::new(letters), S::one());
    }
    out
}

/// Deshuffle coproduct `Δ⧢ w = Σ_i Σ_{σ ∈ Sh(i,n)} w_{σ(1..i)} ⊗ w_{σ(i+1..n)}`.
pub fn deshuffle<L: Clone + Ord, S: Coeff>(w: &Word<L>) -> TensorComb<Word<L>, Word<L>, S> {
    let n = w.len();
    let mut out = TensorComb::zero();
    for i in 0..=n {
        for sigma in shuffle_permutations(i, n) {
            let pick = |ks: &[usize]| Word::new(ks.iter().map(|&k| w.letters()[k - 1].clone()).collect());
            out.add_term(pick(&sigma[..i]), pick(&sigma[i..]), S::one());
        }
    }
    out
}

pub fn concat<L: Clone + Ord, S: Coeff>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>, S> {
    LinComb::basis(u.concat(v))
}

/// Deconcatenation `Σ_k prefix_k ⊗ suffix_k`.
pub fn deconcat<L: Clone + Ord, S: Coeff>(w: &Word<L>) -> TensorComb<Word<L>, Word<L>, S> {
    let mut out = TensorComb::zero();
    for k in 0..=w.len() {
        out.add_term(w.prefix(k), w.suffix(k), S::one());
    }
    out
}

/// `S w = (−1)^{|w|} reverse(w)`, shared by both word Hopf algebras.
fn word_antipode(w: &Word) -> LinComb<Word> {
    let sign: Scalar = if w.len() % 2 == 0 { Scalar::one() } else { int(-1) };
    LinComb::term(w.reversed(), sign)
}

/// Shuffle algebra with deconcatenation coproduct.
#[derive(Clone, Debug)]
pub struct ShuffleDeconcat {
    dim: usize,
}

impl ShuffleDeconcat {
    pub fn new(dim: usize) -> Self {
        ShuffleDeconcat { dim }
    }
}

/// Tensor (concatenation) algebra with deshuffle coproduct.
#[derive(Clone, Debug)]
pub struct ConcatDeshuffle {
    dim: usize,
}

impl ConcatDeshuffle {
    pub fn new(dim: usize) -> Self {
        ConcatDeshuffle { dim }
    }
}

impl HopfAlgebra for ShuffleDeconcat {
    type Basis = Word;

    fn name(&self) -> &str {
        "shuffle_deconcat"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> Word {
        Word::empty()
    }
    fn product(&self, a: &Word, b: &Word) -> LinComb<Word> {
        shuffle(a, b)
    }
    fn coproduct(&self, w: &Word) -> TensorComb<Word> {
        deconcat(w)
    }
    fn antipode(&self, w: &Word) -> LinComb<Word> {
        word_antipode(w)
    }
    fn basis_of_grade(&self, g: usize) -> Vec<Word> {
        Word::all_of_length(self.dim, g)
    }
}

impl HopfAlgebra for ConcatDeshuffle {
    type Basis = Word;

    fn name(&self) -> &str {
        "concat_deshuffle"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> Word {
        Word::empty()
    }
    fn product(&self, a: &Word, b: &Word) -> LinComb<Word> {
        concat(a, b)
    }
    fn coproduct(&self, w: &Word) -> TensorComb<Word> {
        deshuffle(w)
    }
    fn antipode(&self, w: &Word) -> LinComb<Word> {
        word_antipode(w)
    }
    fn basis_of_grade(&self, g: usize) -> Vec<Word> {
        Word::all_of_length(self.dim, g)
    }
}

/// Letters as a word, for terse tests.
pub fn word(letters: &[Letter]) -> Word {
    Word::new(letters.to_vec())
}
