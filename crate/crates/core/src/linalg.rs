//! Sparse linear combinations over a basis, order-two tensors, the duality pairing
//! and a small exact nullspace routine.

use crate::scalar::{Coeff, Scalar};
use crate::symbols::{Canonical, Graded};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// Finite linear combination `Σ c_b b` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Ord, S = Scalar> {
    terms: BTreeMap<B, S>,
}

impl<B: Ord, S> Default for LinComb<B, S> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone, S: Coeff> LinComb<B, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, S::one())
    }

    pub fn term(b: B, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, S)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    /// Adds `c·b`, pruning the entry if it cancels.
    pub fn add_term(&mut self, b: B, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v.clone() * c.clone());
        }
    }

    pub fn coeff(&self, b: &B) -> S {
        self.terms.get(b).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &S)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, v)| (b.clone(), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Linear extension of a basis map.
    pub fn map_linear<C: Ord + Clone, F: FnMut(&B) -> LinComb<C, S>>(&self, mut f: F) -> LinComb<C, S> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabels every basis element (coefficients of coinciding images add up).
    pub fn map_basis<C: Ord + Clone, F: FnMut(&B) -> C>(&self, mut f: F) -> LinComb<C, S> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    pub fn filter<F: FnMut(&B) -> bool>(&self, mut keep: F) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<T: Coeff, F: FnMut(&S) -> T>(&self, mut f: F) -> LinComb<B, T> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), f(c))))
    }

    pub fn to_f64(&self) -> LinComb<B, f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    pub fn first_term(&self) -> Option<(&B, &S)> {
        self.terms.iter().next()
    }

    pub fn into_terms(self) -> BTreeMap<B, S> {
        self.terms
    }
}

impl<B: Ord + Clone, S: Coeff> AddAssign<&LinComb<B, S>> for LinComb<B, S> {
    fn add_assign(&mut self, rhs: &LinComb<B, S>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Ord + Clone, S: Coeff> SubAssign<&LinComb<B, S>> for LinComb<B, S> {
    fn sub_assign(&mut self, rhs: &LinComb<B, S>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c.clone());
        }
    }
}

impl<B: Ord + Clone, S: Coeff> Add for &LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn add(self, rhs: Self) -> LinComb<B, S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone, S: Coeff> Sub for &LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn sub(self, rhs: Self) -> LinComb<B, S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone, S: Coeff> Add for LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn add(mut self, rhs: Self) -> LinComb<B, S> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone, S: Coeff> Sub for LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn sub(mut self, rhs: Self) -> LinComb<B, S> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone, S: Coeff> Neg for &LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn neg(self) -> LinComb<B, S> {
        self.scale(&-S::one())
    }
}

impl<B: Ord + Clone, S: Coeff> Neg for LinComb<B, S> {
    type Output = LinComb<B, S>;
    fn neg(self) -> LinComb<B, S> {
        self.scale(&-S::one())
    }
}

impl<B: Ord + Clone, S: Coeff> FromIterator<(B, S)> for LinComb<B, S> {
    fn from_iter<I: IntoIterator<Item = (B, S)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Finite element of `A ⊗ B`, stored as a sparse map on pairs of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorComb<A: Ord, B: Ord = A, S = Scalar> {
    terms: BTreeMap<(A, B), S>,
}

impl<A: Ord, B: Ord, S> Default for TensorComb<A, B, S> {
    fn default() -> Self {
        TensorComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<A: Ord + Clone, B: Ord + Clone, S: Coeff> TensorComb<A, B, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(a: A, b: B, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    pub fn add_term(&mut self, a: A, b: B, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for ((a, b), v) in &other.terms {
            self.add_term(a.clone(), b.clone(), v.clone() * c.clone());
        }
    }

    /// `x ⊗ y` for linear combinations.
    pub fn tensor(x: &LinComb<A, S>, y: &LinComb<B, S>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_term(a.clone(), b.clone(), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn coeff(&self, a: &A, b: &B) -> S
    where
        A: Clone,
        B: Clone,
    {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&A, &B, &S)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies `f ⊗ g` where both are linear maps given on basis elements.
    pub fn map_both<C, D, F, G>(&self, mut f: F, mut g: G) -> TensorComb<C, D, S>
    where
        C: Ord + Clone,
        D: Ord + Clone,
        F: FnMut(&A) -> LinComb<C, S>,
        G: FnMut(&B) -> LinComb<D, S>,
    {
        let mut out = TensorComb::zero();
        for ((a, b), c) in &self.terms {
            let t = TensorComb::tensor(&f(a), &g(b));
            out.add_scaled(&t, c);
        }
        out
    }

    /// Multiplies the two slots together: `m(x ⊗ y)` for a bilinear product on basis pairs.
    pub fn contract<C: Ord + Clone, F: FnMut(&A, &B) -> LinComb<C, S>>(&self, mut m: F) -> LinComb<C, S> {
        let mut out = LinComb::zero();
        for ((a, b), c) in &self.terms {
            out.add_scaled(&m(a, b), c);
        }
        out
    }

    pub fn filter<F: FnMut(&A, &B) -> bool>(&self, mut keep: F) -> Self {
        TensorComb {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a, b))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn swap(&self) -> TensorComb<B, A, S> {
        let mut out = TensorComb::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }
}

impl<A: Ord + Clone, B: Ord + Clone, S: Coeff> AddAssign<&TensorComb<A, B, S>> for TensorComb<A, B, S> {
    fn add_assign(&mut self, rhs: &TensorComb<A, B, S>) {
        for ((a, b), c) in &rhs.terms {
            self.add_term(a.clone(), b.clone(), c.clone());
        }
    }
}

impl<A: Ord + Clone, B: Ord + Clone, S: Coeff> SubAssign<&TensorComb<A, B, S>> for TensorComb<A, B, S> {
    fn sub_assign(&mut self, rhs: &TensorComb<A, B, S>) {
        for ((a, b), c) in &rhs.terms {
            self.add_term(a.clone(), b.clone(), -c.clone());
        }
    }
}

impl<A: Ord + Clone, B: Ord + Clone, S: Coeff> Sub for &TensorComb<A, B, S> {
    type Output = TensorComb<A, B, S>;
    fn sub(self, rhs: Self) -> TensorComb<A, B, S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<A: Ord + Clone, B: Ord + Clone, S: Coeff> Add for &TensorComb<A, B, S> {
    type Output = TensorComb<A, B, S>;
    fn add(self, rhs: Self) -> TensorComb<A, B, S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

/// `⟨a, b⟩` with the canonical basis orthonormal.
pub fn pair<B: Ord + Clone, S: Coeff>(a: &LinComb<B, S>, b: &LinComb<B, S>) -> S {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .fold(S::zero(), |acc, (k, c)| acc + c.clone() * large.coeff(k))
}

/// `⟨x₁⊗x₂, y₁⊗y₂⟩ = ⟨x₁,y₁⟩⟨x₂,y₂⟩`, extended bilinearly.
pub fn pair_tensor<A: Ord + Clone, B: Ord + Clone, S: Coeff>(
    a: &TensorComb<A, B, S>,
    b: &TensorComb<A, B, S>,
) -> S {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .fold(S::zero(), |acc, (x, y, c)| acc + c.clone() * large.coeff(x, y))
}

fn render_terms<'a, I, S>(terms: I, float: bool) -> String
where
    I: Iterator<Item = (String, &'a S)>,
    S: Coeff + 'a,
{
    let mut out = String::new();
    for (atom, c) in terms {
        let negative = c.is_negative_value();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        let coeff = if float {
            crate::scalar::format_float(magnitude.to_f64())
        } else {
            magnitude.render()
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude.is_one() {
            out.push_str(&atom);
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&atom);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl<B: Ord + Clone + Canonical, S: Coeff> LinComb<B, S> {
    /// Text form following the expression grammar, e.g. `3/2*[]_1 - []_2`.
    pub fn render(&self, dim: usize, float: bool) -> String {
        render_terms(self.iter().map(|(b, c)| (b.canonical(dim), c)), float)
    }

    /// JSON object mapping canonical basis strings to scalar strings.
    pub fn to_json(&self, dim: usize, float: bool) -> serde_json::Value {
        let map = self
            .iter()
            .map(|(b, c)| (b.canonical(dim), json_scalar(c, float)))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }
}

impl<A: Ord + Clone + Canonical + Graded, B: Ord + Clone + Canonical, S: Coeff> TensorComb<A, B, S> {
    /// Text form with `(x)` as tensor separator, terms ordered by decreasing grade of the left factor.
    pub fn render(&self, dim: usize, float: bool) -> String {
        let mut terms: Vec<_> = self.iter().collect();
        terms.sort_by_key(|(a, _, _)| std::cmp::Reverse(a.grade()));
        render_terms(
            terms.into_iter().map(|(a, b, c)| (format!("{} (x) {}", a.canonical(dim), b.canonical(dim)), c)),
            float,
        )
    }

    pub fn to_json(&self, dim: usize, float: bool) -> serde_json::Value {
        let map = self
            .iter()
            .map(|(a, b, c)| {
                (
                    format!("{}⊗{}", a.canonical(dim), b.canonical(dim)),
                    json_scalar(c, float),
                )
            })
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }
}

fn json_scalar<S: Coeff>(c: &S, float: bool) -> serde_json::Value {
    if float {
        serde_json::Value::String(crate::scalar::format_float(c.to_f64()))
    } else {
        serde_json::Value::String(c.render())
    }
}

/// Basis of the nullspace `{v : M v = 0}` of a dense rational matrix given by rows.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Scalar::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    if !m[row][c].is_zero() {
                        let v = m[r][c].clone() - f.clone() * m[row][c].clone();
                        m[r][c] = v;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Kernel of a linear map `basis → LinComb<C>` restricted to the span of `domain`.
pub fn kernel_of_map<B, C, F>(domain: &[B], mut f: F) -> Vec<LinComb<B>>
where
    B: Ord + Clone,
    C: Ord + Clone,
    F: FnMut(&B) -> LinComb<C>,
{
    let images: Vec<LinComb<C>> = domain.iter().map(&mut f).collect();
    let mut targets: BTreeMap<C, usize> = BTreeMap::new();
    for img in &images {
        for c in img.support() {
            let n = targets.len();
            targets.entry(c.clone()).or_insert(n);
        }
    }
    let mut rows = vec![vec![Scalar::zero(); domain.len()]; targets.len()];
    for (j, img) in images.iter().enumerate() {
        for (c, v) in img.iter() {
            rows[targets[c]][j] = v.clone();
        }
    }
    nullspace(&rows, domain.len())
        .into_iter()
        .map(|v| LinComb::from_terms(domain.iter().cloned().zip(v)))
        .collect()
}
