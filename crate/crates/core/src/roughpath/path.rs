use crate::scalar::Scalar;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least two knots, got {0}")]
    TooFewKnots(usize),
    #[error("knot times must be strictly increasing (row {0})")]
    NotIncreasing(usize),
    #[error("row {row} has {got} coordinates, expected {expected}")]
    DimensionMismatch { row: usize, got: usize, expected: usize },
    #[error("a path needs at least one coordinate")]
    NoCoordinates,
}

/// Piecewise-linear path through rational knots, constant before the first and after the last knot.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinearPath {
    times: Vec<Scalar>,
    values: Vec<Vec<Scalar>>,
}

/// A linear piece traversed in a given direction: `length` is signed (negative when walking
/// backwards in time) and `slope` is `dx/dt`, so the increment is `slope · length`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub length: Scalar,
    pub slope: Vec<Scalar>,
}

impl Piece {
    pub fn increment(&self) -> Vec<Scalar> {
        self.slope.iter().map(|v| v * &self.length).collect()
    }
}

impl PiecewiseLinearPath {
    pub fn new(knots: Vec<(Scalar, Vec<Scalar>)>) -> Result<Self, PathError> {
        if knots.len() < 2 {
            return Err(PathError::TooFewKnots(knots.len()));
        }
        let d = knots[0].1.len();
        if d == 0 {
            return Err(PathError::NoCoordinates);
        }
        for (row, (t, x)) in knots.iter().enumerate() {
            if x.len() != d {
                return Err(PathError::DimensionMismatch { row, got: x.len(), expected: d });
            }
            if row > 0 && *t <= knots[row - 1].0 {
                return Err(PathError::NotIncreasing(row));
            }
        }
        let (times, values) = knots.into_iter().unzip();
        Ok(PiecewiseLinearPath { times, values })
    }

    pub fn dim(&self) -> usize {
        self.values[0].len()
    }

    pub fn times(&self) -> &[Scalar] {
        &self.times
    }

    pub fn start(&self) -> &Scalar {
        &self.times[0]
    }

    pub fn end(&self) -> &Scalar {
        &self.times[self.times.len() - 1]
    }

    fn clamp(&self, t: &Scalar) -> Scalar {
        if t < self.start() {
            self.start().clone()
        } else if t > self.end() {
            self.end().clone()
        } else {
            t.clone()
        }
    }

    fn slope(&self, k: usize) -> Vec<Scalar> {
        let dt = &self.times[k + 1] - &self.times[k];
        self.values[k + 1].iter().zip(&self.values[k]).map(|(b, a)| (b - a) / &dt).collect()
    }

    pub fn value_at(&self, t: &Scalar) -> Vec<Scalar> {
        let t = self.clamp(t);
        let k = self.times.partition_point(|x| *x <= t).saturating_sub(1).min(self.times.len() - 2);
        let dt = &t - &self.times[k];
        self.slope(k).iter().zip(&self.values[k]).map(|(v, x)| x + v * &dt).collect()
    }

    /// The linear pieces met when walking from `s` to `t` (in that order), zero-length pieces omitted.
    pub fn pieces(&self, s: &Scalar, t: &Scalar) -> Vec<Piece> {
        let (lo, hi) = if s <= t { (self.clamp(s), self.clamp(t)) } else { (self.clamp(t), self.clamp(s)) };
        let mut out = Vec::new();
        for k in 0..self.times.len() - 1 {
            let a = if self.times[k] > lo { self.times[k].clone() } else { lo.clone() };
            let b = if self.times[k + 1] < hi { self.times[k + 1].clone() } else { hi.clone() };
            if b > a {
                out.push(Piece { length: b - a, slope: self.slope(k) });
            }
        }
        if s > t {
            out.reverse();
            for p in &mut out {
                p.length = -p.length.clone();
            }
        }
        out
    }

    /// Uniform grid of `k` points from the first to the last knot.
    pub fn uniform_grid(&self, k: usize) -> Vec<Scalar> {
        let span = self.end() - self.start();
        (0..k)
            .map(|i| self.start() + &span * Scalar::new((i as i64).into(), ((k.max(2) - 1) as i64).into()))
            .collect()
    }
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Default)]
pub(crate) struct Poly1(pub Vec<Scalar>);

impl Poly1 {
    pub fn constant(c: Scalar) -> Self {
        Poly1(vec![c])
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly1(Vec::new());
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1(out)
    }

    /// `c + k ∫_0^τ p(σ) dσ`.
    pub fn integrate(&self, c: Scalar, k: &Scalar) -> Poly1 {
        let mut out = vec![c];
        for (i, a) in self.0.iter().enumerate() {
            out.push(a * k / Scalar::from_integer(((i + 1) as i64).into()));
        }
        Poly1(out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, a| acc * x + a)
    }
}
