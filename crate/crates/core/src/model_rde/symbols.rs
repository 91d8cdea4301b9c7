use super::{record, tally, Character, ModelError};
use crate::ck::ck_coproduct;
use crate::hopf::LawResult;
use crate::linalg::{LinComb, TensorComb};
use crate::scalar::Coeff;
use crate::symbols::{Canonical, Forest, Graded, Letter, Tree};

/// Basis of the branched model space: `𝟏`, trees `τ`, and dotted forests `ζΞ_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RdeSymbol {
    Unit,
    Tree(Tree),
    Dotted(Forest, Letter),
}

impl RdeSymbol {
    pub fn xi(i: Letter) -> Self {
        RdeSymbol::Dotted(Forest::unit(), i)
    }

    /// Symbol of the function-like sector for a forest that is empty or a single tree.
    pub fn from_forest(z: &Forest) -> Option<Self> {
        let trees = z.tree_list();
        match trees.len() {
            0 => Some(RdeSymbol::Unit),
            1 => Some(RdeSymbol::Tree(trees[0].clone())),
            _ => None,
        }
    }

    pub fn is_function_like(&self) -> bool {
        !matches!(self, RdeSymbol::Dotted(..))
    }

    /// `|𝟏| = 0`, `|τ| = γ·|τ|`, `|ζΞ_i| = γ(|ζ| + 1) − 1`.
    pub fn homogeneity(&self, gamma: f64) -> f64 {
        match self {
            RdeSymbol::Unit => 0.0,
            RdeSymbol::Tree(t) => gamma * t.grade() as f64,
            RdeSymbol::Dotted(z, _) => gamma * (z.grade() + 1) as f64 - 1.0,
        }
    }
}

/// Number of nodes, counting `Ξ_i` as one so that `𝓘` preserves it.
impl Graded for RdeSymbol {
    fn grade(&self) -> usize {
        match self {
            RdeSymbol::Unit => 0,
            RdeSymbol::Tree(t) => t.grade(),
            RdeSymbol::Dotted(z, _) => z.grade() + 1,
        }
    }
}

impl Canonical for RdeSymbol {
    fn canonical(&self, dim: usize) -> String {
        match self {
            RdeSymbol::Unit => "1".into(),
            RdeSymbol::Tree(t) => t.as_forest().canonical(dim),
            RdeSymbol::Dotted(z, i) if z.is_unit() => format!("Xi_{}", i),
            RdeSymbol::Dotted(z, i) => format!("{} Xi_{}", z.canonical(dim), i),
        }
    }
}

/// `Δᵇ`: `Δ⋆` on `𝟏` and trees, `Σ ζ₁ ⊗ ζ₂Ξ_i` over `Δ⋆ζ` on dotted forests.
pub fn branched_comodule_coproduct(x: &LinComb<RdeSymbol>) -> TensorComb<Forest, RdeSymbol> {
    let mut out = TensorComb::zero();
    for (sym, c) in x.iter() {
        match sym {
            RdeSymbol::Unit => out.add_term(Forest::unit(), RdeSymbol::Unit, c.clone()),
            RdeSymbol::Tree(t) => {
                for (crown, trunk, k) in ck_coproduct(&t.as_forest()).iter() {
                    let trunk = RdeSymbol::from_forest(trunk).expect("a trunk of a tree is a tree or empty");
                    out.add_term(crown.clone(), trunk, c * k);
                }
            }
            RdeSymbol::Dotted(z, i) => {
                for (crown, trunk, k) in ck_coproduct(z).iter() {
                    out.add_term(crown.clone(), RdeSymbol::Dotted(trunk.clone(), *i), c * k);
                }
            }
        }
    }
    out
}

/// `Γᵇ_g x = (g⊗id)Δᵇx`.
pub fn branched_action(g: &Character<Forest>, x: &LinComb<RdeSymbol>) -> Result<LinComb<RdeSymbol>, ModelError> {
    let mut out = LinComb::zero();
    for (crown, sym, c) in branched_comodule_coproduct(x).iter() {
        if crown.grade() > g.max_grade() {
            return Err(ModelError::GradeExceeded {
                element: crown.canonical(crate::symbols::MAX_DIM),
                grade: crown.grade(),
                bound: g.max_grade(),
            });
        }
        out.add_term(sym.clone(), c * g.eval(crown));
    }
    Ok(out)
}

/// `𝓘(ζΞ_i) = ⌊ζ⌋_i`, defined on the dotted sector only.
pub fn abstract_integration<S: Coeff>(x: &LinComb<RdeSymbol, S>) -> Result<LinComb<RdeSymbol, S>, ModelError> {
    let mut out = LinComb::zero();
    for (sym, c) in x.iter() {
        match sym {
            RdeSymbol::Dotted(z, i) => out.add_term(RdeSymbol::Tree(z.graft(*i)), c.clone()),
            other => return Err(ModelError::WrongSector(format!("{:?} under 𝓘", other))),
        }
    }
    Ok(out)
}

/// `∂𝟏 = 0`, `∂⌊ζ⌋_i = ζΞ_i`, defined on the function-like sector only.
pub fn derivative_map<S: Coeff>(x: &LinComb<RdeSymbol, S>) -> Result<LinComb<RdeSymbol, S>, ModelError> {
    let mut out = LinComb::zero();
    for (sym, c) in x.iter() {
        match sym {
            RdeSymbol::Unit => {}
            RdeSymbol::Tree(t) => out.add_term(RdeSymbol::Dotted(t.children().clone(), t.label()), c.clone()),
            other => return Err(ModelError::WrongSector(format!("{:?} under ∂", other))),
        }
    }
    Ok(out)
}

/// `ζ ↦ ζΞ_i` on forest combinations.
pub fn dot_xi<S: Coeff>(x: &LinComb<Forest, S>, i: Letter) -> LinComb<RdeSymbol, S> {
    x.map_basis(|z| RdeSymbol::Dotted(z.clone(), i))
}

/// `τ ⊙ ζΞ_i = (τζ)Ξ_i` for `τ` in the function-like sector.
pub fn odot(a: &LinComb<RdeSymbol>, b: &LinComb<RdeSymbol>) -> Result<LinComb<RdeSymbol>, ModelError> {
    let mut out = LinComb::zero();
    for (x, c) in a.iter() {
        let left = match x {
            RdeSymbol::Unit => Forest::unit(),
            RdeSymbol::Tree(t) => t.as_forest(),
            other => return Err(ModelError::WrongSector(format!("{:?} as left factor of ⊙", other))),
        };
        for (y, k) in b.iter() {
            match y {
                RdeSymbol::Dotted(z, i) => out.add_term(RdeSymbol::Dotted(left.product(z), *i), c * k),
                other => return Err(ModelError::WrongSector(format!("{:?} as right factor of ⊙", other))),
            }
        }
    }
    Ok(out)
}

/// All symbols of grade at most `n` (with `Ξ_i` counted as a node).
pub fn rde_symbols(dim: usize, n: usize) -> Vec<RdeSymbol> {
    let cat = crate::symbols::ForestCatalog::new(dim, n);
    let mut out = vec![RdeSymbol::Unit];
    out.extend(cat.trees_up_to(n).cloned().map(RdeSymbol::Tree));
    for z in cat.forests_up_to(n.saturating_sub(1)) {
        for i in 1..=dim as Letter {
            out.push(RdeSymbol::Dotted(z.clone(), i));
        }
    }
    out
}

/// Checks the four properties characterising branched structure actions on symbols of grade
/// at most `n`: (i) `Γx − x` of lower homogeneity, (ii) both sectors preserved,
/// (iii) `𝓘Γb − Γ𝓘b ∈ ⟨𝟏⟩`, (iv) `Γa ⊙ Γb = Γ(a ⊙ b)`.
pub fn check_branched_action<F>(gamma: F, dim: usize, n: usize, gamma_exp: f64) -> Vec<LawResult>
where
    F: Fn(&RdeSymbol) -> LinComb<RdeSymbol>,
{
    let symbols = rde_symbols(dim, n);
    let apply = |x: &LinComb<RdeSymbol>| x.map_linear(|b| gamma(b));
    let mut triangular = tally("triangular");
    let mut sectors = tally("sectors");
    let mut integration = tally("integration");
    let mut product = tally("product");
    for s in &symbols {
        let image = gamma(s);
        let h = s.homogeneity(gamma_exp);
        let defect = &image - &LinComb::basis(s.clone());
        record(&mut triangular, defect.support().all(|x| x.homogeneity(gamma_exp) < h - 1e-12), || {
            format!("Γ({}) − {} = {}", s.canonical(dim), s.canonical(dim), defect.render(dim, false))
        });
        record(
            &mut sectors,
            image.support().all(|x| x.is_function_like() == s.is_function_like()),
            || format!("Γ({}) leaves its sector", s.canonical(dim)),
        );
        if let RdeSymbol::Dotted(z, _) = s {
            let one = LinComb::basis(s.clone());
            let lhs = abstract_integration(&image).ok();
            let rhs = abstract_integration(&one).map(|t| apply(&t)).ok();
            let ok = match (lhs, rhs) {
                (Some(l), Some(r)) => (&l - &r).support().all(|x| *x == RdeSymbol::Unit),
                _ => false,
            };
            record(&mut integration, ok, || format!("𝓘Γ − Γ𝓘 on {} is not a multiple of 𝟏", s.canonical(dim)));
            for a in symbols.iter().filter(|a| a.is_function_like() && a.grade() + z.grade() < n) {
                let la = LinComb::basis(a.clone());
                let lhs = odot(&apply(&la), &image);
                let rhs = odot(&la, &one).map(|p| apply(&p));
                record(&mut product, lhs.is_ok() && lhs == rhs, || {
                    format!("Γ({0}) ⊙ Γ({1}) ≠ Γ({0} ⊙ {1})", a.canonical(dim), s.canonical(dim))
                });
            }
        }
    }
    vec![triangular, sectors, integration, product]
}
