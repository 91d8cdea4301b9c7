//! Structure-group actions `Γ_g = (g⊗id)Δ`, models `(Π, Γ)` built from rough-path lifts,
//! the branched model space with noise symbols `Ξ_i`, and a step-local Picard solver for
//! rough differential equations `dy = Σ f_i(y) dx^i`.

mod picard;
mod symbols;

pub use picard::{compose_with_function, local_expansion, picard_solve, PicardOptions, PicardSolution, RdeError, ScalarFn, VectorField};
pub use symbols::{
    abstract_integration, branched_action, branched_comodule_coproduct, check_branched_action, derivative_map,
    dot_xi, odot, rde_symbols, RdeSymbol,
};

use crate::hopf::{HopfAlgebra, LawResult};
use crate::linalg::{LinComb, TensorComb};
use crate::roughpath::{check_rough_axioms, Lift, LiftBasis};
use crate::scalar::Scalar;
use crate::symbols::{Canonical, Graded};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("basis element {element} has grade {grade} above the character's bound {bound}")]
    GradeExceeded { element: String, grade: usize, bound: usize },
    #[error("not a character: {0}")]
    NotCharacter(String),
    #[error("the lift fails its rough-path axioms:\n{0}")]
    Axioms(String),
    #[error("{0} lies outside the expected sector")]
    WrongSector(String),
}

/// A multiplicative functional, stored by its values on basis elements up to `max_grade`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character<B: Ord> {
    values: LinComb<B>,
    max_grade: usize,
}

impl<B: Ord + Clone + Graded + Canonical> Character<B> {
    /// Checks `g(𝟏) = 1` and `g(ab) = g(a)g(b)` on basis pairs within the grade bound.
    pub fn new<H: HopfAlgebra<Basis = B> + ?Sized>(
        h: &H,
        values: LinComb<B>,
        max_grade: usize,
    ) -> Result<Self, ModelError> {
        if values.coeff(&h.unit()) != Scalar::one() {
            return Err(ModelError::NotCharacter("value on the unit is not 1".into()));
        }
        let basis = h.basis_up_to(max_grade);
        for a in basis.iter().filter(|a| a.grade() > 0) {
            for b in basis.iter().filter(|b| b.grade() > 0 && a.grade() + b.grade() <= max_grade) {
                let lhs = h.product(a, b).iter().fold(Scalar::zero(), |acc, (x, c)| acc + c * values.coeff(x));
                if lhs != values.coeff(a) * values.coeff(b) {
                    return Err(ModelError::NotCharacter(format!(
                        "g({}·{}) ≠ g({})g({})",
                        a.canonical(h.dim()),
                        b.canonical(h.dim()),
                        a.canonical(h.dim()),
                        b.canonical(h.dim())
                    )));
                }
            }
        }
        Ok(Character { values, max_grade })
    }

    /// The counit `ε`, trivially a character.
    pub fn counit<H: HopfAlgebra<Basis = B> + ?Sized>(h: &H, max_grade: usize) -> Self {
        Character { values: LinComb::basis(h.unit()), max_grade }
    }

    /// Wraps values already known to be multiplicative, such as those of a lift.
    pub fn from_values_unchecked(values: LinComb<B>, max_grade: usize) -> Self {
        Character { values, max_grade }
    }

    pub fn max_grade(&self) -> usize {
        self.max_grade
    }

    pub fn values(&self) -> &LinComb<B> {
        &self.values
    }

    pub fn eval(&self, b: &B) -> Scalar {
        self.values.coeff(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionFlavor {
    /// `(g⊗id)Δ`
    Left,
    /// `(id⊗g)Δ`
    Right,
}

/// `Γ_g x`, erroring when `x` has a term beyond the grade bound of `g`.
pub fn struct_action<H: HopfAlgebra + ?Sized>(
    h: &H,
    g: &Character<H::Basis>,
    x: &LinComb<H::Basis>,
    flavor: ActionFlavor,
) -> Result<LinComb<H::Basis>, ModelError> {
    let mut out = LinComb::zero();
    for (b, c) in x.iter() {
        if b.grade() > g.max_grade() {
            return Err(ModelError::GradeExceeded {
                element: b.canonical(h.dim()),
                grade: b.grade(),
                bound: g.max_grade(),
            });
        }
        for (l, r, k) in h.coproduct(b).iter() {
            match flavor {
                ActionFlavor::Left => out.add_term(r.clone(), c * k * g.eval(l)),
                ActionFlavor::Right => out.add_term(l.clone(), c * k * g.eval(r)),
            }
        }
    }
    Ok(out)
}

fn tally(law: &'static str) -> LawResult {
    LawResult { law, checked: 0, violation: None }
}

fn record(l: &mut LawResult, ok: bool, witness: impl FnOnce() -> String) {
    l.checked += 1;
    if !ok && l.violation.is_none() {
        l.violation = Some(witness());
    }
}

/// Checks the characterisation of structure actions on the basis up to `max_grade`:
/// `Γ𝟏 = 𝟏`, `Γx − x` of lower grade, `Γ` multiplicative, and
/// `ΔΓ = (Γ⊗id)Δ` (left flavour) or `ΔΓ = (id⊗Γ)Δ` (right flavour).
pub fn check_structure_action<H, F>(h: &H, gamma: F, max_grade: usize, flavor: ActionFlavor) -> Vec<LawResult>
where
    H: HopfAlgebra + ?Sized,
    F: Fn(&H::Basis) -> LinComb<H::Basis>,
{
    let d = h.dim();
    let basis = h.basis_up_to(max_grade);
    let apply = |x: &LinComb<H::Basis>| x.map_linear(|b| gamma(b));
    let mut unit = tally("unit");
    let mut triangular = tally("triangular");
    let mut multiplicative = tally("multiplicative");
    let mut coaction = tally("coaction");

    record(&mut unit, gamma(&h.unit()) == LinComb::basis(h.unit()), || "Γ𝟏 ≠ 𝟏".into());
    for b in &basis {
        let image = gamma(b);
        let defect = &image - &LinComb::basis(b.clone());
        record(&mut triangular, defect.support().all(|x| x.grade() < b.grade()), || {
            format!("Γ({}) − {} = {}", b.canonical(d), b.canonical(d), defect.render(d, false))
        });
        let lhs = image.iter().fold(TensorComb::zero(), |mut acc: TensorComb<H::Basis>, (x, c)| {
            acc.add_scaled(&h.coproduct(x), c);
            acc
        });
        let mut rhs = TensorComb::zero();
        for (l, r, c) in h.coproduct(b).iter() {
            match flavor {
                ActionFlavor::Left => rhs.add_scaled(&TensorComb::tensor(&gamma(l), &LinComb::basis(r.clone())), c),
                ActionFlavor::Right => rhs.add_scaled(&TensorComb::tensor(&LinComb::basis(l.clone()), &gamma(r)), c),
            }
        }
        record(&mut coaction, lhs == rhs, || format!("ΔΓ({0}) ≠ (Γ⊗id)Δ({0})", b.canonical(d)));
    }
    for a in basis.iter().filter(|a| a.grade() > 0) {
        for b in basis.iter().filter(|b| b.grade() > 0 && a.grade() + b.grade() <= max_grade) {
            let lhs = apply(&h.product(a, b));
            let rhs = crate::hopf::mul(h, &gamma(a), &gamma(b));
            record(&mut multiplicative, lhs == rhs, || {
                format!("Γ({0}·{1}) ≠ Γ({0})·Γ({1})", a.canonical(d), b.canonical(d))
            });
        }
    }
    vec![unit, triangular, multiplicative, coaction]
}

/// `(Π, Γ)` with `Π_s(x)(t) = X_st(x)` and `Γ_st x = (X_ts⊗id)Δx`.
pub struct Model<L> {
    lift: L,
    gamma: f64,
}

/// Builds the model of a lift after checking the lift's axioms on `grid`.
pub fn model_from_lift<L: Lift>(lift: L, gamma: f64, grid: &[Scalar]) -> Result<Model<L>, ModelError> {
    let report = check_rough_axioms(&lift, grid, gamma);
    if !report.passed() {
        return Err(ModelError::Axioms(report.to_string()));
    }
    Ok(Model { lift, gamma })
}

impl<L: Lift> Model<L> {
    pub fn lift(&self) -> &L {
        &self.lift
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn level(&self) -> usize {
        self.lift.level()
    }

    /// `Π_s(x)(t)`.
    pub fn pi(&self, s: &Scalar, x: &LinComb<LiftBasis<L>>, t: &Scalar) -> Scalar {
        let v = self.lift.eval(s, t);
        x.iter().fold(Scalar::zero(), |acc, (b, c)| acc + c * v.coeff(b))
    }

    /// `Γ_st` as a character action.
    pub fn gamma_map(&self, s: &Scalar, t: &Scalar) -> Character<LiftBasis<L>> {
        Character::from_values_unchecked(self.lift.eval(t, s), self.level())
    }

    pub fn gamma_st(&self, s: &Scalar, t: &Scalar, x: &LinComb<LiftBasis<L>>) -> Result<LinComb<LiftBasis<L>>, ModelError> {
        struct_action(self.lift.characters(), &self.gamma_map(s, t), x, ActionFlavor::Left)
    }
}

/// Exact checks of `Π_s = Π_u Γ_us`, `Γ_su Γ_ut = Γ_st`, `ΔΓ_st = (Γ_st⊗id)Δ` and
/// `Γ_st x − x ∈ lower grades` on every grid pair or triple and every basis element.
pub fn check_model<L: Lift>(model: &Model<L>, grid: &[Scalar]) -> Vec<LawResult> {
    let h = model.lift.characters();
    let d = h.dim();
    let basis = h.basis_up_to(model.level());
    let coproducts: Vec<_> = basis.iter().map(|b| h.coproduct(b)).collect();
    let values: Vec<Vec<LinComb<LiftBasis<L>>>> =
        grid.iter().map(|s| grid.iter().map(|t| model.lift.eval(s, t)).collect()).collect();
    // gamma[i][j][k] = Γ_{t_i t_j} applied to basis[k]
    let gamma: Vec<Vec<Vec<LinComb<LiftBasis<L>>>>> = (0..grid.len())
        .map(|i| {
            (0..grid.len())
                .map(|j| {
                    coproducts
                        .iter()
                        .map(|cp| {
                            let mut out = LinComb::zero();
                            for (l, r, c) in cp.iter() {
                                out.add_term(r.clone(), c * values[j][i].coeff(l));
                            }
                            out
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let index: std::collections::BTreeMap<_, _> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let apply = |i: usize, j: usize, x: &LinComb<LiftBasis<L>>| {
        let mut out = LinComb::zero();
        for (b, c) in x.iter() {
            out.add_scaled(&gamma[i][j][index[b]], c);
        }
        out
    };

    let mut reexpansion = tally("reexpansion");
    let mut cocycle = tally("cocycle");
    let mut intertwining = tally("intertwining");
    let mut triangular = tally("triangular");

    for (i, s) in grid.iter().enumerate() {
        for (j, t) in grid.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                let img = &gamma[i][j][k];
                let defect = img - &LinComb::basis(b.clone());
                record(&mut triangular, defect.support().all(|x| x.grade() < b.grade()), || {
                    format!("s={}, t={}: Γ_st({}) − {} = {}", s, t, b.canonical(d), b.canonical(d), defect.render(d, false))
                });
                let mut lhs = TensorComb::zero();
                for (x, c) in img.iter() {
                    lhs.add_scaled(&coproducts[index[x]], c);
                }
                let mut rhs = TensorComb::zero();
                for (l, r, c) in coproducts[k].iter() {
                    rhs.add_scaled(&TensorComb::tensor(&gamma[i][j][index[l]], &LinComb::basis(r.clone())), c);
                }
                record(&mut intertwining, lhs == rhs, || {
                    let b = b.canonical(d);
                    format!("s={}, t={}: ΔΓ_st({}) ≠ (Γ_st⊗id)Δ({})", s, t, b, b)
                });
                for (u_idx, u) in grid.iter().enumerate() {
                    let via = apply(i, u_idx, &gamma[u_idx][j][k]);
                    record(&mut cocycle, via == *img, || {
                        format!("s={}, u={}, t={}: Γ_su Γ_ut({}) ≠ Γ_st({})", s, u, t, b.canonical(d), b.canonical(d))
                    });
                    // Π_{t_j}(b)(t_u) against Π_{t_i}(Γ_{t_i t_j} b)(t_u)
                    let lhs = values[j][u_idx].coeff(b);
                    let rhs = img.iter().fold(Scalar::zero(), |acc, (x, c)| acc + c * values[i][u_idx].coeff(x));
                    record(&mut reexpansion, lhs == rhs, || {
                        format!(
                            "Π_{}({})({}) = {} but Π_{}(Γ_{},{} {})({}) = {}",
                            t,
                            b.canonical(d),
                            u,
                            lhs,
                            s,
                            s,
                            t,
                            b.canonical(d),
                            u,
                            rhs
                        )
                    });
                }
            }
        }
    }
    vec![reexpansion, cocycle, intertwining, triangular]
}
