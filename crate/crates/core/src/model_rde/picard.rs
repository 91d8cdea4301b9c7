use super::symbols::{abstract_integration, dot_xi, RdeSymbol};
use crate::linalg::LinComb;
use crate::roughpath::{level_for_gamma, Lift, RoughError};
use crate::scalar::{to_f64, Scalar};
use crate::symbols::{Forest, Graded, Letter};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RdeError {
    #[error("vector field supplies {available} derivatives but {needed} are required")]
    DerivativeOrder { needed: usize, available: usize },
    #[error("non-finite value at t = {0}")]
    NonFinite(String),
    #[error("Picard iteration did not become stationary within {sweeps} sweeps at t = {t}")]
    NotStationary { t: String, sweeps: usize },
    #[error("truncation level {level} is below ⌊1/γ⌋ = {required}")]
    LevelTooLow { level: usize, required: usize },
    #[error("vector field has {field} components but the driver has dimension {driver}")]
    DimensionMismatch { field: usize, driver: usize },
    #[error("step size must be positive")]
    BadStep,
    #[error("unknown vector field `{0}` (expected const[:c], linear[:a], poly:c0,c1,..., sin)")]
    UnknownField(String),
    #[error("{0}")]
    Rough(#[from] RoughError),
}

/// A scalar function together with all the derivatives it can supply.
#[derive(Clone, Debug)]
pub enum ScalarFn {
    /// `y ↦ c`
    Const(f64),
    /// `y ↦ a·y`
    Linear(f64),
    /// `y ↦ Σ c_k y^k`
    Poly(Vec<f64>),
    Sin,
    /// Explicit derivative table `[f, f′, f″, …]`.
    Table(Vec<fn(f64) -> f64>),
}

impl ScalarFn {
    /// `const`, `const:c`, `linear`, `linear:a`, `poly:c0,c1,…` or `sin`.
    pub fn parse(text: &str) -> Result<Self, RdeError> {
        let bad = || RdeError::UnknownField(text.to_string());
        let (name, arg) = match text.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (text.trim(), None),
        };
        let num = |a: &str| a.parse::<f64>().map_err(|_| bad());
        match (name, arg) {
            ("const", None) => Ok(ScalarFn::Const(1.0)),
            ("const", Some(a)) => Ok(ScalarFn::Const(num(a)?)),
            ("linear", None) => Ok(ScalarFn::Linear(1.0)),
            ("linear", Some(a)) => Ok(ScalarFn::Linear(num(a)?)),
            ("poly", Some(a)) => Ok(ScalarFn::Poly(a.split(',').map(num).collect::<Result<_, _>>()?)),
            ("sin", None) => Ok(ScalarFn::Sin),
            _ => Err(bad()),
        }
    }

    /// Highest derivative order available, `None` meaning unlimited.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            ScalarFn::Table(t) => Some(t.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// `f^{(n)}(y)`.
    pub fn derivative(&self, n: usize, y: f64) -> Option<f64> {
        match self {
            ScalarFn::Const(c) => Some(if n == 0 { *c } else { 0.0 }),
            ScalarFn::Linear(a) => Some(match n {
                0 => a * y,
                1 => *a,
                _ => 0.0,
            }),
            ScalarFn::Poly(c) => {
                let mut acc = 0.0;
                for (k, ck) in c.iter().enumerate().skip(n).rev() {
                    let falling: f64 = ((k - n + 1)..=k).map(|j| j as f64).product();
                    acc = acc * y + ck * falling;
                }
                Some(acc)
            }
            ScalarFn::Sin => Some(match n % 4 {
                0 => y.sin(),
                1 => y.cos(),
                2 => -y.sin(),
                _ => -y.cos(),
            }),
            ScalarFn::Table(t) => t.get(n).map(|f| f(y)),
        }
    }
}

/// The coefficients `f_1, …, f_d` of `dy = Σ f_i(y) dx^i`.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub components: Vec<ScalarFn>,
}

impl VectorField {
    /// The same function in every direction.
    pub fn uniform(f: ScalarFn, dim: usize) -> Self {
        VectorField { components: vec![f; dim] }
    }
}

fn forest_mul(a: &LinComb<Forest, f64>, b: &LinComb<Forest, f64>, max_grade: usize) -> LinComb<Forest, f64> {
    let mut out = LinComb::zero();
    for (x, c) in a.iter() {
        for (y, k) in b.iter() {
            if x.grade() + y.grade() <= max_grade {
                out.add_term(x.product(y), c * k);
            }
        }
    }
    out
}

/// Truncated Taylor composition `Σ_{n ≤ max_grade} f^{(n)}(Y^𝟏)/n! (Y − Y^𝟏𝟏)^{⊙n}` of a
/// function-like `Y`, keeping forests of grade at most `max_grade`.
pub fn compose_with_function(
    y: &LinComb<RdeSymbol, f64>,
    f: &ScalarFn,
    max_grade: usize,
) -> Result<LinComb<Forest, f64>, RdeError> {
    if let Some(avail) = f.max_order() {
        if avail < max_grade {
            return Err(RdeError::DerivativeOrder { needed: max_grade, available: avail });
        }
    }
    let y0 = y.coeff(&RdeSymbol::Unit);
    let mut rest = LinComb::zero();
    for (s, c) in y.iter() {
        match s {
            RdeSymbol::Unit => {}
            RdeSymbol::Tree(t) if t.grade() <= max_grade => rest.add_term(t.as_forest(), *c),
            RdeSymbol::Tree(_) => {}
            RdeSymbol::Dotted(..) => panic!("compose_with_function expects a function-like input"),
        }
    }
    let mut power = LinComb::basis(Forest::unit());
    let mut out = LinComb::zero();
    let mut factorial = 1.0;
    for n in 0..=max_grade {
        if n > 0 {
            power = forest_mul(&power, &rest, max_grade);
            factorial *= n as f64;
            if power.is_zero() {
                break;
            }
        }
        let d = f.derivative(n, y0).ok_or(RdeError::DerivativeOrder { needed: n, available: n.saturating_sub(1) })?;
        out.add_scaled(&power, &(d / factorial));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PicardOptions {
    pub y0: f64,
    pub gamma: f64,
    pub level: usize,
    pub step: Scalar,
}

#[derive(Clone, Debug)]
pub struct PicardSolution {
    pub samples: Vec<(Scalar, f64)>,
    /// Largest number of sweeps any step needed to become stationary.
    pub max_sweeps: usize,
}

impl PicardSolution {
    pub fn final_value(&self) -> f64 {
        self.samples.last().map(|s| s.1).unwrap_or(f64::NAN)
    }
}

/// Local expansion at a step start: the fixed point of `Y ↦ y_s𝟏 + Σ_i 𝓘(f_i(Y)Ξ_i)` on trees
/// of grade at most `level`, with the number of sweeps it took to become stationary.
pub fn local_expansion(
    field: &VectorField,
    ys: f64,
    level: usize,
) -> Result<(LinComb<RdeSymbol, f64>, usize), RdeError> {
    let base = LinComb::term(RdeSymbol::Unit, ys);
    let mut y = base.clone();
    for sweep in 1..=level + 1 {
        let mut next = base.clone();
        for (i, f) in field.components.iter().enumerate() {
            let fy = compose_with_function(&y, f, level - 1)?;
            let integrated =
                abstract_integration(&dot_xi(&fy, (i + 1) as Letter)).expect("dotted symbols integrate to trees");
            next += &integrated;
        }
        if next == y {
            return Ok((y, sweep));
        }
        y = next;
    }
    Err(RdeError::NotStationary { t: String::new(), sweeps: level + 1 })
}

/// Solves `dy = Σ f_i(y) dx^i` step by step: at each step start the local expansion is
/// recomputed around the current value and evaluated against the lift,
/// `y_{s+h} = Σ_τ c_τ X_{s,s+h}(τ)`.
pub fn picard_solve<L: Lift<Characters = crate::ck::ConnesKreimer>>(
    driver: &L,
    start: &Scalar,
    end: &Scalar,
    field: &VectorField,
    opts: &PicardOptions,
) -> Result<PicardSolution, RdeError> {
    let required = level_for_gamma(opts.gamma);
    if opts.level < required.max(1) {
        return Err(RdeError::LevelTooLow { level: opts.level, required });
    }
    if opts.level > driver.level() {
        return Err(RdeError::LevelTooLow { level: driver.level(), required: opts.level });
    }
    let dim = crate::hopf::HopfAlgebra::dim(driver.characters());
    if field.components.len() != dim {
        return Err(RdeError::DimensionMismatch { field: field.components.len(), driver: dim });
    }
    if opts.step <= Scalar::zero() {
        return Err(RdeError::BadStep);
    }
    let mut t = start.clone();
    let mut y = opts.y0;
    let mut samples = vec![(t.clone(), y)];
    let mut max_sweeps = 0;
    while t < *end {
        let next = {
            let candidate = &t + &opts.step;
            if candidate > *end {
                end.clone()
            } else {
                candidate
            }
        };
        let (expansion, sweeps) = local_expansion(field, y, opts.level).map_err(|e| match e {
            RdeError::NotStationary { sweeps, .. } => RdeError::NotStationary { t: t.to_string(), sweeps },
            other => other,
        })?;
        max_sweeps = max_sweeps.max(sweeps);
        let values = driver.eval(&t, &next);
        let mut acc = 0.0;
        for (sym, c) in expansion.iter() {
            let v = match sym {
                RdeSymbol::Unit => 1.0,
                RdeSymbol::Tree(tree) => to_f64(&values.coeff(&tree.as_forest())),
                RdeSymbol::Dotted(..) => unreachable!("the local expansion is function-like"),
            };
            acc += c * v;
        }
        if !acc.is_finite() {
            return Err(RdeError::NonFinite(next.to_string()));
        }
        y = acc;
        t = next;
        samples.push((t.clone(), y));
    }
    Ok(PicardSolution { samples, max_sweeps })
}
