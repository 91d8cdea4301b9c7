//! Truncated series calculus in a connected graded algebra: `⋄_n`, exp/log, BCH,
//! primitive and group-like certification, the Dynkin projector and homogeneous norms.

use crate::ck::gl_product;
use crate::hopf::{coproduct, counit, mul_truncated, reduced_coproduct, ConcatDeshuffle, HopfAlgebra};
use crate::linalg::{kernel_of_map, LinComb, TensorComb};
use crate::scalar::{int, to_f64, Scalar};
use crate::symbols::{Forest, ForestCatalog, Graded, Word};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation levels differ ({0} vs {1})")]
    LevelMismatch(usize, usize),
    #[error("elements live in different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("term of grade {grade} exceeds truncation level {level}")]
    GradeAboveLevel { grade: usize, level: usize },
    #[error("exp/bch need ε(x) = 0, got ε(x) = {0}")]
    NotAugmented(String),
    #[error("log/norm need ε(g) = 1, got ε(g) = {0}")]
    NotUnital(String),
}

/// An element of the truncation `Aⁿ = A / A^{>n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncated<B: Ord> {
    value: LinComb<B>,
    level: usize,
    algebra: String,
}

impl<B: crate::hopf::BasisElement> Truncated<B> {
    pub fn new<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, value: LinComb<B>, level: usize) -> Result<Self, SeriesError> {
        if let Some(b) = value.support().find(|b| b.grade() > level) {
            return Err(SeriesError::GradeAboveLevel { grade: b.grade(), level });
        }
        Ok(Truncated { value, level, algebra: h.name().to_string() })
    }

    /// `πⁿ(value)`: terms above the level are dropped rather than rejected.
    pub fn project<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, value: &LinComb<B>, level: usize) -> Self {
        Truncated { value: value.filter(|b| b.grade() <= level), level, algebra: h.name().to_string() }
    }

    pub fn one<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, level: usize) -> Self {
        Truncated { value: LinComb::basis(h.unit()), level, algebra: h.name().to_string() }
    }

    pub fn value(&self) -> &LinComb<B> {
        &self.value
    }

    pub fn into_value(self) -> LinComb<B> {
        self.value
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    /// Grade-`m` slice `π_m`.
    pub fn slice(&self, m: usize) -> LinComb<B> {
        self.value.filter(|b| b.grade() == m)
    }

    fn with_value(&self, value: LinComb<B>) -> Self {
        Truncated { value, level: self.level, algebra: self.algebra.clone() }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.level != other.level {
            return Err(SeriesError::LevelMismatch(self.level, other.level));
        }
        if self.algebra != other.algebra {
            return Err(SeriesError::AlgebraMismatch(self.algebra.clone(), other.algebra.clone()));
        }
        Ok(())
    }
}

/// `a ⋄_n b = πⁿ(a ⋄ b)`.
pub fn trunc_mul<H: HopfAlgebra + ?Sized>(
    h: &H,
    a: &Truncated<H::Basis>,
    b: &Truncated<H::Basis>,
) -> Result<Truncated<H::Basis>, SeriesError> {
    a.check_compatible(b)?;
    Ok(a.with_value(mul_truncated(h, &a.value, &b.value, a.level)))
}

fn power_series<H: HopfAlgebra + ?Sized>(
    h: &H,
    u: &Truncated<H::Basis>,
    coefficient: impl Fn(usize) -> Scalar,
) -> Truncated<H::Basis> {
    let n = u.level;
    let mut power = LinComb::basis(h.unit());
    let mut out = LinComb::term(h.unit(), coefficient(0));
    for m in 1..=n {
        power = mul_truncated(h, &power, &u.value, n);
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &coefficient(m));
    }
    u.with_value(out)
}

/// `exp_n(x) = Σ_{m ≤ n} x^{⋄m}/m!` for `ε(x) = 0`.
pub fn exp<H: HopfAlgebra + ?Sized>(h: &H, x: &Truncated<H::Basis>) -> Result<Truncated<H::Basis>, SeriesError> {
    let e = counit(h, &x.value);
    if !e.is_zero() {
        return Err(SeriesError::NotAugmented(e.to_string()));
    }
    Ok(power_series(h, x, crate::scalar::inv_factorial))
}

/// `log_n(𝟏+u) = Σ_{1 ≤ m ≤ n} (−1)^{m−1} u^{⋄m}/m` for `ε(g) = 1`.
pub fn log<H: HopfAlgebra + ?Sized>(h: &H, g: &Truncated<H::Basis>) -> Result<Truncated<H::Basis>, SeriesError> {
    let e = counit(h, &g.value);
    if !e.is_one() {
        return Err(SeriesError::NotUnital(e.to_string()));
    }
    let u = g.with_value(&g.value - &LinComb::basis(h.unit()));
    Ok(power_series(h, &u, |m| {
        if m == 0 {
            Scalar::zero()
        } else {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            Scalar::new(sign.into(), (m as i64).into())
        }
    }))
}

/// `bch(x, y) = log(exp x ⋄ exp y)`.
pub fn bch<H: HopfAlgebra + ?Sized>(
    h: &H,
    x: &Truncated<H::Basis>,
    y: &Truncated<H::Basis>,
) -> Result<Truncated<H::Basis>, SeriesError> {
    x.check_compatible(y)?;
    log(h, &trunc_mul(h, &exp(h, x)?, &exp(h, y)?)?)
}

/// Inverse in the truncated group of group-likes, `g^{⋄−1} = S g`.
pub fn inverse<H: HopfAlgebra + ?Sized>(h: &H, g: &Truncated<H::Basis>) -> Truncated<H::Basis> {
    g.with_value(crate::hopf::antipode(h, &g.value))
}

/// `Δ̃x`; zero exactly when `x` is primitive.
pub fn primitive_defect<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> TensorComb<H::Basis> {
    reduced_coproduct(h, x)
}

/// `Δg − π̲ⁿ(g⊗g)`, where `π̲ⁿ` keeps the terms of total grade at most `n`.
pub fn grouplike_defect<H: HopfAlgebra + ?Sized>(h: &H, g: &Truncated<H::Basis>) -> TensorComb<H::Basis> {
    let mut defect = coproduct(h, &g.value);
    for (a, ca) in g.value.iter() {
        for (b, cb) in g.value.iter() {
            if a.grade() + b.grade() <= g.level {
                defect.add_term(a.clone(), b.clone(), -(ca * cb));
            }
        }
    }
    defect
}

/// `Ok(())` when `x` is primitive, otherwise the nonzero defect `Δ̃x`.
pub fn is_primitive<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> Result<(), TensorComb<H::Basis>> {
    let d = primitive_defect(h, x);
    if d.is_zero() {
        Ok(())
    } else {
        Err(d)
    }
}

/// `Ok(())` when `g` is a truncated group-like (which forces `ε(g) = 1` unless `g = 0`),
/// otherwise the nonzero defect.
pub fn is_grouplike<H: HopfAlgebra + ?Sized>(h: &H, g: &Truncated<H::Basis>) -> Result<(), TensorComb<H::Basis>> {
    let d = grouplike_defect(h, g);
    if d.is_zero() && !g.value.is_zero() {
        Ok(())
    } else if d.is_zero() {
        Err(TensorComb::term(h.unit(), h.unit(), -Scalar::one()))
    } else {
        Err(d)
    }
}

/// A basis of the primitives of grade `1..=n`, as the exact kernel of `Δ̃` grade by grade.
pub fn primitive_basis<H: HopfAlgebra + ?Sized>(h: &H, n: usize) -> Vec<LinComb<H::Basis>> {
    (1..=n)
        .flat_map(|g| {
            kernel_of_map(&h.basis_of_grade(g), |b| {
                LinComb::from_terms(
                    reduced_coproduct(h, &LinComb::basis(b.clone()))
                        .iter()
                        .map(|(x, y, c)| ((x.clone(), y.clone()), c.clone())),
                )
            })
        })
        .collect()
}

/// Seeded random primitive: a sparse rational combination of at most two vectors of each grade
/// drawn from `basis` (as returned by [`primitive_basis`]).
pub fn random_primitive<B: Ord + Clone + Graded, R: rand::Rng>(basis: &[LinComb<B>], rng: &mut R) -> LinComb<B> {
    let mut by_grade: std::collections::BTreeMap<usize, Vec<&LinComb<B>>> = std::collections::BTreeMap::new();
    for v in basis {
        if let Some(b) = v.support().next() {
            by_grade.entry(b.grade()).or_default().push(v);
        }
    }
    let mut out = LinComb::zero();
    for pool in by_grade.values() {
        for _ in 0..rng.gen_range(0..=2) {
            let v = pool[rng.gen_range(0..pool.len())];
            let c = Scalar::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
            out.add_scaled(v, &c);
        }
    }
    out
}

/// Concatenation bracket `[a, b] = ab − ba` on words.
pub fn bracket(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let h = ConcatDeshuffle::new(crate::symbols::MAX_DIM);
    &crate::hopf::mul(&h, a, b) - &crate::hopf::mul(&h, b, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinMode {
    /// Right-normed bracketing `ℜ(e_i) = e_i`, `ℜ(e_i·u) = [e_i, ℜu]`.
    Direct,
    /// `(D ∗ S)∘E` in the concatenation/deshuffle Hopf algebra, `D` the grading derivation
    /// and `E` the projection onto positive grades.
    Convolution,
}

fn right_normed(w: &Word) -> LinComb<Word> {
    match w.len() {
        0 => LinComb::zero(),
        1 => LinComb::basis(w.clone()),
        _ => {
            let head = LinComb::basis(Word::letter(w.letters()[0]));
            bracket(&head, &right_normed(&w.suffix(1)))
        }
    }
}

fn grading_convolve_antipode(w: &Word) -> LinComb<Word> {
    if w.is_empty() {
        return LinComb::zero();
    }
    let h = ConcatDeshuffle::new(crate::symbols::MAX_DIM);
    let mut out = LinComb::zero();
    for (a, b, c) in h.coproduct(w).iter() {
        if a.is_empty() {
            continue;
        }
        let d_a = LinComb::term(a.clone(), int(a.len() as i64));
        out.add_scaled(&crate::hopf::mul(&h, &d_a, &h.antipode(b)), c);
    }
    out
}

pub fn dynkin(x: &LinComb<Word>, mode: DynkinMode) -> LinComb<Word> {
    match mode {
        DynkinMode::Direct => x.map_linear(right_normed),
        DynkinMode::Convolution => x.map_linear(grading_convolve_antipode),
    }
}

/// Euclidean norm of the grade-`m` slice.
pub fn grade_norm<B: Ord + Clone + Graded>(x: &LinComb<B>, m: usize) -> f64 {
    x.iter()
        .filter(|(b, _)| b.grade() == m)
        .map(|(_, c)| to_f64(c).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `‖g‖ = Σ_{1 ≤ k ≤ n} ‖π_k log g‖^{1/k}`.
pub fn homog_norm<H: HopfAlgebra + ?Sized>(h: &H, g: &Truncated<H::Basis>) -> Result<f64, SeriesError> {
    let l = log(h, g)?;
    Ok((1..=g.level).map(|k| grade_norm(&l.value, k).powf(1.0 / k as f64)).sum())
}

/// `sup_{|w| ≥ 1} |⟨w, g⟩|^{1/|w|}`.
pub fn coordinate_gauge<B: Ord + Clone + Graded>(g: &LinComb<B>) -> f64 {
    g.iter()
        .filter(|(b, _)| b.grade() > 0)
        .map(|(b, c)| to_f64(c).abs().powf(1.0 / b.grade() as f64))
        .fold(0.0, f64::max)
}

/// Constants of the norm-equivalence inequalities
/// `|⟨w,g⟩| ≤ C_{|w|}‖g‖^{|w|}` and `‖g‖ ≤ C′_n sup_w |⟨w,g⟩|^{1/|w|}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormConstants {
    /// `c[k]` for `k = 1..=n` (`c[0]` is unused and zero).
    pub c: Vec<f64>,
    pub c_prime: f64,
}

/// Ordered compositions of `k` into `m` positive parts.
fn compositions(k: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=k.saturating_sub(m - 1) {
        for mut rest in compositions(k - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Number of `m`-tuples of nonempty elements of total grade `k`, where `count[l]` elements have grade `l`.
fn tuple_count(count: &[usize], m: usize, k: usize) -> f64 {
    compositions(k, m).iter().map(|c| c.iter().map(|&l| count[l] as f64).product::<f64>()).sum()
}

/// Geometric constants: `N_{m,k}` counts `m`-tuples of nonempty words of total length `k`;
/// `C_k = Σ_m N_{m,k}/m!` and `C′_n = Σ_k Σ_m (N_{m,k}/m)^{1/k}`.
pub fn geometric_constants(dim: usize, n: usize) -> NormConstants {
    let count: Vec<usize> = (0..=n).map(|l| dim.pow(l as u32)).collect();
    let mut c = vec![0.0; n + 1];
    let mut c_prime = 0.0;
    for k in 1..=n {
        for m in 1..=k {
            let nmk = tuple_count(&count, m, k);
            c[k] += nmk / crate::scalar::to_f64(&Scalar::from(crate::scalar::factorial(m)));
            c_prime += (nmk / m as f64).powf(1.0 / k as f64);
        }
    }
    NormConstants { c, c_prime }
}

/// `sup ‖ζ₁ ⋆ ⋯ ⋆ ζ_m‖_k` over tuples drawn from `pool` (indexed by grade) of total grade `k`.
fn star_product_sup(pool: &[Vec<Forest>], m: usize, k: usize) -> f64 {
    let mut best: f64 = 0.0;
    for comp in compositions(k, m) {
        let mut partial: Vec<LinComb<Forest>> = vec![LinComb::basis(Forest::unit())];
        for &l in &comp {
            let mut next = Vec::new();
            for acc in &partial {
                for z in &pool[l] {
                    next.push(acc.map_linear(|a| gl_product(a, z)));
                }
            }
            partial = next;
        }
        for p in &partial {
            best = best.max(grade_norm(p, k));
        }
    }
    best
}

/// Branched constants: with trees `N_{m,k}`, `D_{m,k} = sup ‖τ₁⋆⋯⋆τ_m‖_k`, `C_k = Σ_m D N / m!`;
/// with forests `Ñ`, `D̃`, `C′_n = Σ_k Σ_m (D̃_{m,k} Ñ_{m,k} / m)^{1/k}`.
pub fn branched_constants(dim: usize, n: usize) -> NormConstants {
    let cat = ForestCatalog::new(dim, n);
    let trees: Vec<Vec<Forest>> =
        (0..=n).map(|g| cat.trees_of_grade(g).iter().map(|t| t.as_forest()).collect()).collect();
    let forests: Vec<Vec<Forest>> = (0..=n).map(|g| cat.forests_of_grade(g).to_vec()).collect();
    let tree_count: Vec<usize> = trees.iter().map(Vec::len).collect();
    let forest_count: Vec<usize> = forests.iter().map(Vec::len).collect();
    let mut c = vec![0.0; n + 1];
    let mut c_prime = 0.0;
    for k in 1..=n {
        for m in 1..=k {
            let fact = to_f64(&Scalar::from(crate::scalar::factorial(m)));
            c[k] += star_product_sup(&trees, m, k) * tuple_count(&tree_count, m, k) / fact;
            let r = star_product_sup(&forests, m, k) * tuple_count(&forest_count, m, k);
            c_prime += (r / m as f64).powf(1.0 / k as f64);
        }
    }
    NormConstants { c, c_prime }
}
