//! Canonical lifts of piecewise-linear paths: the signature (a character of the shuffle
//! algebra) and the branched lift (a character of the Connes–Kreimer algebra), with exact
//! axiom checks, empirical Hölder ratios, `q_γ` and the geometric ↔ branched conversions.

mod path;

pub use path::{PathError, Piece, PiecewiseLinearPath};
use path::Poly1;

use crate::ck::{ck_coproduct, kernel_of_phi, phi_forest, phi_hat, ConnesKreimer, GrossmanLarson};
use crate::hopf::{ConcatDeshuffle, HopfAlgebra, LawResult, ShuffleDeconcat};
use crate::linalg::LinComb;
use crate::scalar::{inv_factorial, to_f64, Scalar};
use crate::series::{homog_norm, Truncated};
use crate::symbols::{Canonical, Forest, ForestCatalog, Graded, Tree, Word};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoughError {
    #[error("truncation level must be at least 1")]
    LevelZero,
    #[error("Hölder exponent must lie in (0, 1), got {0}")]
    BadGamma(f64),
    #[error("path dimension {path} does not match the requested dimension {requested}")]
    DimensionMismatch { path: usize, requested: usize },
    #[error("kernel condition fails: X_{{{s},{t}}}({element}) = {value} for an element of ker φ")]
    KernelViolation { element: String, s: String, t: String, value: String },
    #[error("{0}")]
    Path(#[from] PathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Geometric,
    Branched,
}

/// Hölder exponent with its truncation level `n = ⌊1/γ⌋`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoughPathConfig {
    pub gamma: f64,
    pub flavor: Flavor,
}

impl RoughPathConfig {
    pub fn new(gamma: f64, flavor: Flavor) -> Result<Self, RoughError> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(RoughError::BadGamma(gamma));
        }
        Ok(RoughPathConfig { gamma, flavor })
    }

    pub fn level(&self) -> usize {
        level_for_gamma(self.gamma)
    }
}

/// `⌊1/γ⌋`, robust to `1/γ` landing a rounding error below an integer.
pub fn level_for_gamma(gamma: f64) -> usize {
    (1.0 / gamma + 1e-9).floor() as usize
}

pub type LiftBasis<L> = <<L as Lift>::Characters as HopfAlgebra>::Basis;

/// A two-parameter family `(s, t) ↦ X_st` of characters, truncated at `level`.
pub trait Lift: Sync {
    /// Algebra on which `X_st` is a character (shuffle words or forests under `⊙`).
    type Characters: HopfAlgebra;
    /// Dual algebra in which `X_st` is a group-like element (concatenation words or forests under `⋆`).
    type Group: HopfAlgebra<Basis = LiftBasis<Self>>;

    fn characters(&self) -> &Self::Characters;
    fn group(&self) -> &Self::Group;
    fn level(&self) -> usize;

    /// The values `X_st(b)` on every basis element of grade at most `level`, as a combination
    /// whose coefficients are those values.
    fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<LiftBasis<Self>>;

    fn group_element(&self, s: &Scalar, t: &Scalar) -> Truncated<LiftBasis<Self>> {
        Truncated::project(self.group(), &self.eval(s, t), self.level())
    }
}

fn check_level(n: usize) -> Result<(), RoughError> {
    if n == 0 {
        Err(RoughError::LevelZero)
    } else {
        Ok(())
    }
}

/// The signature of a piecewise-linear path, truncated at level `n`.
#[derive(Clone, Debug)]
pub struct Signature {
    path: PiecewiseLinearPath,
    level: usize,
    shuffle: ShuffleDeconcat,
    concat: ConcatDeshuffle,
}

impl Signature {
    pub fn new(path: PiecewiseLinearPath, level: usize) -> Result<Self, RoughError> {
        check_level(level)?;
        let d = path.dim();
        Ok(Signature { path, level, shuffle: ShuffleDeconcat::new(d), concat: ConcatDeshuffle::new(d) })
    }

    pub fn path(&self) -> &PiecewiseLinearPath {
        &self.path
    }

    /// `exp(v)` of a grade-one element: the level-`k` slice is `v^{⊗k}/k!`.
    fn segment(&self, v: &[Scalar]) -> LinComb<Word> {
        let mut out = LinComb::zero();
        for w in Word::all_up_to(self.path.dim(), self.level) {
            let c = w.letters().iter().fold(inv_factorial(w.len()), |acc, &l| acc * &v[l as usize - 1]);
            out.add_term(w, c);
        }
        out
    }
}

impl Lift for Signature {
    type Characters = ShuffleDeconcat;
    type Group = ConcatDeshuffle;

    fn characters(&self) -> &ShuffleDeconcat {
        &self.shuffle
    }
    fn group(&self) -> &ConcatDeshuffle {
        &self.concat
    }
    fn level(&self) -> usize {
        self.level
    }

    fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<Word> {
        let mut acc = LinComb::basis(Word::empty());
        for piece in self.path.pieces(s, t) {
            let seg = self.segment(&piece.increment());
            acc = crate::hopf::mul_truncated(&self.concat, &acc, &seg, self.level);
        }
        acc
    }
}

/// The branched lift `X_st(⌊ζ⌋_i) = ∫_s^t X_sr(ζ) dx_r^i`, multiplicative over forests,
/// integrated exactly piece by piece.
#[derive(Clone, Debug)]
pub struct BranchedLift {
    path: PiecewiseLinearPath,
    level: usize,
    trees: Vec<Tree>,
    forests: Vec<Forest>,
    ck: ConnesKreimer,
    gl: GrossmanLarson,
}

impl BranchedLift {
    pub fn new(path: PiecewiseLinearPath, level: usize) -> Result<Self, RoughError> {
        check_level(level)?;
        let d = path.dim();
        let cat = ForestCatalog::new(d, level);
        let trees = cat.trees_up_to(level).cloned().collect();
        let forests = cat.forests_up_to(level).cloned().collect();
        Ok(BranchedLift { path, level, trees, forests, ck: ConnesKreimer::new(d), gl: GrossmanLarson::new(d) })
    }

    pub fn path(&self) -> &PiecewiseLinearPath {
        &self.path
    }

    fn tree_poly(
        t: &Tree,
        start: &HashMap<Tree, Scalar>,
        slope: &[Scalar],
        memo: &mut HashMap<Tree, Poly1>,
    ) -> Poly1 {
        if let Some(p) = memo.get(t) {
            return p.clone();
        }
        let mut integrand = Poly1::constant(Scalar::one());
        for child in t.children().tree_list() {
            integrand = integrand.mul(&Self::tree_poly(&child, start, slope, memo));
        }
        let c = start.get(t).cloned().unwrap_or_else(Scalar::zero);
        let p = integrand.integrate(c, &slope[t.label() as usize - 1]);
        memo.insert(t.clone(), p.clone());
        p
    }

    /// `X_st(τ)` for every tree of grade at most the level.
    pub fn tree_values(&self, s: &Scalar, t: &Scalar) -> HashMap<Tree, Scalar> {
        let mut values: HashMap<Tree, Scalar> = HashMap::new();
        for piece in self.path.pieces(s, t) {
            let mut memo = HashMap::new();
            let mut next = HashMap::new();
            for tree in &self.trees {
                let p = Self::tree_poly(tree, &values, &piece.slope, &mut memo);
                next.insert(tree.clone(), p.eval(&piece.length));
            }
            values = next;
        }
        values
    }
}

impl Lift for BranchedLift {
    type Characters = ConnesKreimer;
    type Group = GrossmanLarson;

    fn characters(&self) -> &ConnesKreimer {
        &self.ck
    }
    fn group(&self) -> &GrossmanLarson {
        &self.gl
    }
    fn level(&self) -> usize {
        self.level
    }

    fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<Forest> {
        let trees = self.tree_values(s, t);
        let mut out = LinComb::zero();
        for f in &self.forests {
            let v = f.tree_list().iter().fold(Scalar::one(), |acc, tr| {
                acc * trees.get(tr).cloned().unwrap_or_else(Scalar::zero)
            });
            out.add_term(f.clone(), v);
        }
        out
    }
}

/// Outcome of [`check_rough_axioms`].
#[derive(Clone, Debug)]
pub struct RoughReport {
    pub laws: Vec<LawResult>,
    /// Empirical `sup |X_st(b)| / |t−s|^{γ|b|}` over grid pairs, per basis element.
    pub holder: Vec<(String, f64)>,
    /// Empirical `sup ‖X_st‖ / |t−s|^γ` over grid pairs.
    pub norm_ratio: f64,
}

impl RoughReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.violation.is_none()) && self.norm_ratio.is_finite()
    }
}

impl std::fmt::Display for RoughReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.laws {
            match &l.violation {
                None => writeln!(f, "{:<12} ok   ({} checks)", l.law, l.checked)?,
                Some(w) => writeln!(f, "{:<12} FAIL {}", l.law, w)?,
            }
        }
        for (b, r) in &self.holder {
            writeln!(f, "holder {:<24} {}", b, crate::scalar::format_float(*r))?;
        }
        writeln!(f, "holder norm  {} (empirical grid sup)", crate::scalar::format_float(self.norm_ratio))?;
        write!(f, "{}", if self.passed() { "OK" } else { "FAILED" })
    }
}

fn value_of<B: Ord + Clone>(x: &LinComb<B>, values: &LinComb<B>) -> Scalar {
    x.iter().fold(Scalar::zero(), |acc, (b, c)| acc + c * values.coeff(b))
}

struct Tally {
    law: &'static str,
    checked: usize,
    violation: Option<String>,
}

impl Tally {
    fn new(law: &'static str) -> Self {
        Tally { law, checked: 0, violation: None }
    }
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(witness());
        }
    }
    fn finish(self) -> LawResult {
        LawResult { law: self.law, checked: self.checked, violation: self.violation }
    }
}

/// Exact character, Chen, inverse and `X_tt = 𝟏` checks on every grid pair and triple, plus
/// the empirical Hölder ratios.
pub fn check_rough_axioms<L: Lift>(lift: &L, grid: &[Scalar], gamma: f64) -> RoughReport {
    let h = lift.characters();
    let d = h.dim();
    let n = lift.level();
    let basis = h.basis_up_to(n);
    let table: Vec<Vec<LinComb<LiftBasis<L>>>> =
        grid.iter().map(|s| grid.iter().map(|t| lift.eval(s, t)).collect()).collect();
    let coproducts: Vec<_> = basis.iter().map(|b| h.coproduct(b)).collect();
    let antipodes: Vec<_> = basis.iter().map(|b| h.antipode(b)).collect();

    let mut identity = Tally::new("identity");
    let mut character = Tally::new("character");
    let mut chen = Tally::new("chen");
    let mut inverse = Tally::new("inverse");

    for (i, s) in grid.iter().enumerate() {
        let unit = LinComb::basis(h.unit());
        identity.record(table[i][i] == unit, || format!("X_tt ≠ 𝟏 at t={}", s));
    }

    let products: Vec<(usize, usize, LinComb<LiftBasis<L>>)> = (0..basis.len())
        .flat_map(|a| (a..basis.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| basis[a].grade() > 0 && basis[b].grade() > 0 && basis[a].grade() + basis[b].grade() <= n)
        .map(|(a, b)| (a, b, h.product(&basis[a], &basis[b])))
        .collect();

    for (i, s) in grid.iter().enumerate() {
        for (j, t) in grid.iter().enumerate() {
            let x = &table[i][j];
            for (a, b, ab) in &products {
                let lhs = value_of(ab, x);
                let rhs = x.coeff(&basis[*a]) * x.coeff(&basis[*b]);
                character.record(lhs == rhs, || {
                    format!(
                        "s={}, t={}: X({}·{}) = {} but X({})X({}) = {}",
                        s,
                        t,
                        basis[*a].canonical(d),
                        basis[*b].canonical(d),
                        lhs,
                        basis[*a].canonical(d),
                        basis[*b].canonical(d),
                        rhs
                    )
                });
            }
            for (k, b) in basis.iter().enumerate() {
                let lhs = table[j][i].coeff(b);
                let rhs = value_of(&antipodes[k], x);
                inverse.record(lhs == rhs, || {
                    format!("s={}, t={}, basis {}: X_ts = {} but X_st∘S = {}", s, t, b.canonical(d), lhs, rhs)
                });
            }
            for (u_idx, u) in grid.iter().enumerate() {
                let left = &table[i][u_idx];
                let right = &table[u_idx][j];
                for (k, b) in basis.iter().enumerate() {
                    let rhs =
                        coproducts[k].iter().fold(Scalar::zero(), |acc, (p, q, c)| acc + c * left.coeff(p) * right.coeff(q));
                    let lhs = x.coeff(b);
                    chen.record(lhs == rhs, || {
                        format!(
                            "s={}, u={}, t={}, basis {}: X_st = {} but (X_su⊗X_ut)Δ = {}",
                            s,
                            u,
                            t,
                            b.canonical(d),
                            lhs,
                            rhs
                        )
                    });
                }
            }
        }
    }

    let mut holder = Vec::new();
    for b in basis.iter().filter(|b| b.grade() > 0) {
        let mut best: f64 = 0.0;
        for i in 0..grid.len() {
            for j in 0..grid.len() {
                if i == j {
                    continue;
                }
                let dt = to_f64(&(&grid[j] - &grid[i])).abs();
                best = best.max(to_f64(&table[i][j].coeff(b)).abs() / dt.powf(gamma * b.grade() as f64));
            }
        }
        holder.push((b.canonical(d), best));
    }

    let mut norm_ratio: f64 = 0.0;
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let g = Truncated::project(lift.group(), &table[i][j], n);
            let dt = to_f64(&(&grid[j] - &grid[i])).abs();
            let norm = homog_norm(lift.group(), &g).unwrap_or(f64::INFINITY);
            norm_ratio = norm_ratio.max(norm / dt.powf(gamma));
        }
    }

    RoughReport {
        laws: vec![identity.finish(), character.finish(), chen.finish(), inverse.finish()],
        holder,
        norm_ratio,
    }
}

/// `q_γ`: `1` on forests of grade at most `1/γ`, multiplicative on forests, and on larger trees
/// `q_γ(τ) = (2^{γ|τ|} − 2)^{−1} Σ q_γ(τ′) q_γ(τ″)` over the reduced Connes–Kreimer coproduct.
pub fn q_gamma(z: &Forest, gamma: f64) -> Result<f64, RoughError> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(RoughError::BadGamma(gamma));
    }
    Ok(q_forest(z, gamma, &mut HashMap::new()))
}

fn q_forest(z: &Forest, gamma: f64, memo: &mut HashMap<Tree, f64>) -> f64 {
    if z.grade() as f64 <= 1.0 / gamma {
        return 1.0;
    }
    z.tree_list().iter().map(|t| q_tree(t, gamma, memo)).product()
}

fn q_tree(t: &Tree, gamma: f64, memo: &mut HashMap<Tree, f64>) -> f64 {
    let g = t.grade();
    if g as f64 <= 1.0 / gamma {
        return 1.0;
    }
    if let Some(v) = memo.get(t) {
        return *v;
    }
    let whole = t.as_forest();
    let mut sum = 0.0;
    for (a, b, c) in ck_coproduct(&whole).iter() {
        if a.is_unit() || b.is_unit() {
            continue;
        }
        sum += to_f64(c) * q_forest(a, gamma, memo) * q_forest(b, gamma, memo);
    }
    let v = sum / (2f64.powf(gamma * g as f64) - 2.0);
    memo.insert(t.clone(), v);
    v
}

/// Branched lift `X̌ᵇ(ζ) = X̌ᵍ(φ(ζ))` induced by a geometric one.
pub struct BranchedFromGeometric<L> {
    inner: L,
    phi: Vec<(Forest, LinComb<Word>)>,
    ck: ConnesKreimer,
    gl: GrossmanLarson,
}

pub fn geo_to_branched<L: Lift<Characters = ShuffleDeconcat>>(lift: L) -> BranchedFromGeometric<L> {
    let d = lift.characters().dim();
    let n = lift.level();
    let cat = ForestCatalog::new(d, n);
    let phi = cat.forests_up_to(n).map(|f| (f.clone(), phi_forest(f))).collect();
    BranchedFromGeometric { inner: lift, phi, ck: ConnesKreimer::new(d), gl: GrossmanLarson::new(d) }
}

impl<L: Lift<Characters = ShuffleDeconcat>> Lift for BranchedFromGeometric<L> {
    type Characters = ConnesKreimer;
    type Group = GrossmanLarson;

    fn characters(&self) -> &ConnesKreimer {
        &self.ck
    }
    fn group(&self) -> &GrossmanLarson {
        &self.gl
    }
    fn level(&self) -> usize {
        self.inner.level()
    }

    fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<Forest> {
        let g = self.inner.eval(s, t);
        self.phi.iter().map(|(f, p)| (f.clone(), value_of(p, &g))).collect()
    }
}

/// Geometric lift `X̌ᵍ(w) = X̌ᵇ(φ̂(w))` read off a branched one along ladders.
pub struct GeometricFromBranched<L> {
    inner: L,
    words: Vec<Word>,
    shuffle: ShuffleDeconcat,
    concat: ConcatDeshuffle,
}

/// Requires `X_st(k) = 0` for a basis of `⟨ℱ_dⁿ⟩ ∩ ker φ` at every pair of `times`.
pub fn branched_to_geo<L: Lift<Characters = ConnesKreimer>>(
    lift: L,
    times: &[Scalar],
) -> Result<GeometricFromBranched<L>, RoughError> {
    let d = lift.characters().dim();
    let n = lift.level();
    let kernel = kernel_of_phi(&ForestCatalog::new(d, n), n);
    for s in times {
        for t in times {
            let x = lift.eval(s, t);
            for k in &kernel {
                let v = value_of(k, &x);
                if !v.is_zero() {
                    return Err(RoughError::KernelViolation {
                        element: k.render(d, false),
                        s: s.to_string(),
                        t: t.to_string(),
                        value: v.to_string(),
                    });
                }
            }
        }
    }
    Ok(GeometricFromBranched {
        inner: lift,
        words: Word::all_up_to(d, n),
        shuffle: ShuffleDeconcat::new(d),
        concat: ConcatDeshuffle::new(d),
    })
}

impl<L: Lift<Characters = ConnesKreimer>> Lift for GeometricFromBranched<L> {
    type Characters = ShuffleDeconcat;
    type Group = ConcatDeshuffle;

    fn characters(&self) -> &ShuffleDeconcat {
        &self.shuffle
    }
    fn group(&self) -> &ConcatDeshuffle {
        &self.concat
    }
    fn level(&self) -> usize {
        self.inner.level()
    }

    fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<Word> {
        let b = self.inner.eval(s, t);
        self.words.iter().map(|w| (w.clone(), b.coeff(&phi_hat(w)))).collect()
    }
}

/// Values of a lift on a fixed list of basis elements, for tabular output.
pub fn lift_table<L: Lift>(lift: &L, s: &Scalar, t: &Scalar) -> BTreeMap<LiftBasis<L>, Scalar> {
    lift.eval(s, t).into_terms()
}
