use super::{coproduct, counit, mul, mul_tensor, show, HopfAlgebra};
use crate::linalg::{LinComb, TensorComb};
use crate::scalar::{ratio, Scalar};
use crate::symbols::Graded;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Outcome of one law: how many instances were checked and the first counterexample.
#[derive(Clone, Debug)]
pub struct LawResult {
    pub law: &'static str,
    pub checked: usize,
    pub violation: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub instance: String,
    pub max_grade: usize,
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.violation.is_none())
    }

    pub fn violations(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| l.violation.is_some())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            match &l.violation {
                None => writeln!(f, "{:<16} ok   ({} checks)", l.law, l.checked)?,
                Some(w) => writeln!(f, "{:<16} FAIL {}", l.law, w)?,
            }
        }
        write!(f, "{}", if self.passed() { "OK" } else { "FAILED" })
    }
}

struct Law {
    name: &'static str,
    checked: usize,
    violation: Option<String>,
    dim: usize,
}

impl Law {
    fn new(name: &'static str, dim: usize) -> Self {
        Law { name, checked: 0, violation: None, dim }
    }

    fn record<F: FnOnce(usize) -> String>(&mut self, ok: bool, witness: F) {
        self.checked += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(witness(self.dim));
        }
    }

    fn finish(self) -> LawResult {
        LawResult { law: self.name, checked: self.checked, violation: self.violation }
    }
}

type Triple<B> = BTreeMap<(B, B, B), Scalar>;

fn coassoc_sides<H: HopfAlgebra + ?Sized>(h: &H, x: &LinComb<H::Basis>) -> (Triple<H::Basis>, Triple<H::Basis>) {
    let d = coproduct(h, x);
    let mut left: Triple<H::Basis> = BTreeMap::new();
    let mut right: Triple<H::Basis> = BTreeMap::new();
    let add = |m: &mut Triple<H::Basis>, k: (H::Basis, H::Basis, H::Basis), c: Scalar| {
        let e = m.entry(k.clone()).or_insert_with(|| ratio(0, 1));
        *e += c;
        if *e == ratio(0, 1) {
            m.remove(&k);
        }
    };
    for (a, b, c) in d.iter() {
        for (a1, a2, c2) in h.coproduct(a).iter() {
            add(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for (b1, b2, c2) in h.coproduct(b).iter() {
            add(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    (left, right)
}

fn first_difference<B: Ord + Clone + crate::symbols::Canonical>(x: &LinComb<B>, y: &LinComb<B>, dim: usize) -> String {
    let diff = x - y;
    match diff.first_term() {
        Some((b, c)) => format!("term {} differs by {}", b.canonical(dim), c),
        None => String::new(),
    }
}

fn first_tensor_difference<B: Ord + Clone + crate::symbols::Canonical>(
    x: &TensorComb<B>,
    y: &TensorComb<B>,
    dim: usize,
) -> String {
    let diff = x - y;
    let witness = match diff.iter().next() {
        Some((a, b, c)) => format!("term {} (x) {} differs by {}", a.canonical(dim), b.canonical(dim), c),
        None => String::new(),
    };
    witness
}

/// Random homogeneous combination of one to three basis elements of grade `g`.
fn random_element<B: Clone + Ord>(rng: &mut ChaCha8Rng, basis: &[Vec<B>], g: usize) -> LinComb<B> {
    let pool = &basis[g];
    let terms = rng.gen_range(1..=3);
    let mut out = LinComb::zero();
    for _ in 0..terms {
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let num = loop {
            let n: i64 = rng.gen_range(-4..=4);
            if n != 0 {
                break n;
            }
        };
        out.add_term(b, ratio(num, rng.gen_range(1..=3)));
    }
    out
}

/// Random grades `g₁, …, g_k` with total at most `max`.
fn random_grades(rng: &mut ChaCha8Rng, k: usize, max: usize) -> Vec<usize> {
    loop {
        let gs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=max)).collect();
        if gs.iter().sum::<usize>() <= max {
            return gs;
        }
    }
}

/// Exact verification of the Hopf algebra laws on every basis element (and basis tuple)
/// with total grade at most `max_grade`, followed by `samples` seeded random combinations.
pub fn check_axioms<H: HopfAlgebra + ?Sized>(h: &H, max_grade: usize, samples: usize, seed: u64) -> AxiomReport {
    let dim = h.dim();
    let basis: Vec<Vec<H::Basis>> = (0..=max_grade).map(|g| h.basis_of_grade(g)).collect();
    let all: Vec<&H::Basis> = basis.iter().flatten().collect();
    let one = LinComb::basis(h.unit());
    let lb = |b: &H::Basis| LinComb::basis(b.clone());

    let mut graded = Law::new("grading", dim);
    let mut assoc = Law::new("associativity", dim);
    let mut unit = Law::new("unit", dim);
    let mut coassoc = Law::new("coassociativity", dim);
    let mut counit_law = Law::new("counit", dim);
    let mut compat = Law::new("compatibility", dim);
    let mut antipode_law = Law::new("antipode", dim);

    graded.record(basis[0].len() == 1 && basis[0][0] == h.unit(), |_| {
        "grade-0 part is not spanned by the unit".to_string()
    });

    let check_element = |x: &LinComb<H::Basis>,
                         coassoc: &mut Law,
                         counit_law: &mut Law,
                         antipode_law: &mut Law,
                         unit: &mut Law,
                         graded: &mut Law,
                         label: &dyn Fn(usize) -> String| {
        let (l, r) = coassoc_sides(h, x);
        coassoc.record(l == r, |d| {
            let key = l
                .iter()
                .find(|(k, v)| r.get(*k) != Some(*v))
                .map(|(k, _)| k.clone())
                .or_else(|| r.iter().find(|(k, v)| l.get(*k) != Some(*v)).map(|(k, _)| k.clone()));
            match key {
                Some((a, b, c)) => format!(
                    "{}: (Δ⊗id)Δ and (id⊗Δ)Δ disagree at {} (x) {} (x) {}",
                    label(d),
                    show(&a, d),
                    show(&b, d),
                    show(&c, d)
                ),
                None => label(d),
            }
        });
        let d = coproduct(h, x);
        let left = d.contract(|a, b| LinComb::term(b.clone(), h.counit(a)));
        let right = d.contract(|a, b| LinComb::term(a.clone(), h.counit(b)));
        counit_law.record(&left == x && &right == x, |dd| {
            format!("{}: {}", label(dd), first_difference(&left, x, dd))
        });
        let eps = LinComb::term(h.unit(), counit(h, x));
        let s_left = d.contract(|a, b| mul(h, &h.antipode(a), &lb(b)));
        let s_right = d.contract(|a, b| mul(h, &lb(a), &h.antipode(b)));
        antipode_law.record(s_left == eps && s_right == eps, |dd| {
            let which = if s_left != eps { &s_left } else { &s_right };
            format!("{}: m(S⊗id)Δ vs uε: {}", label(dd), first_difference(which, &eps, dd))
        });
        let ux = mul(h, &one, x);
        let xu = mul(h, x, &one);
        unit.record(&ux == x && &xu == x, |dd| format!("{}: 𝟏 is not a two-sided unit", label(dd)));
        let grades_ok = x.len() != 1
            || x.support().all(|s| d.iter().all(|(a, b, _)| s.grade() == a.grade() + b.grade()));
        graded.record(grades_ok, |dd| format!("{}: coproduct is not graded", label(dd)));
    };

    for b in &all {
        let x = lb(b);
        check_element(&x, &mut coassoc, &mut counit_law, &mut antipode_law, &mut unit, &mut graded, &|d| {
            format!("basis {}", show(*b, d))
        });
    }

    for a in &all {
        for b in &all {
            if a.grade() + b.grade() > max_grade {
                continue;
            }
            let ab = h.product(a, b);
            graded.record(ab.support().all(|s| s.grade() == a.grade() + b.grade()), |d| {
                format!("{}·{} is not homogeneous", show(*a, d), show(*b, d))
            });
            let lhs = coproduct(h, &ab);
            let rhs = mul_tensor(h, &h.coproduct(a), &h.coproduct(b));
            compat.record(lhs == rhs, |d| {
                format!(
                    "Δ({}·{}) ≠ Δ{}·Δ{}: {}",
                    show(*a, d),
                    show(*b, d),
                    show(*a, d),
                    show(*b, d),
                    first_tensor_difference(&lhs, &rhs, d)
                )
            });
            let e_ab = counit(h, &ab);
            compat.record(e_ab == h.counit(a) * h.counit(b), |d| {
                format!("ε({}·{}) ≠ ε({})ε({})", show(*a, d), show(*b, d), show(*a, d), show(*b, d))
            });
            for c in &all {
                if a.grade() + b.grade() + c.grade() > max_grade {
                    continue;
                }
                let l = mul(h, &ab, &lb(c));
                let r = mul(h, &lb(a), &h.product(b, c));
                assoc.record(l == r, |d| {
                    format!(
                        "({}·{})·{} ≠ {}·({}·{}): {}",
                        show(*a, d),
                        show(*b, d),
                        show(*c, d),
                        show(*a, d),
                        show(*b, d),
                        show(*c, d),
                        first_difference(&l, &r, d)
                    )
                });
            }
        }
    }
    let d1 = h.coproduct(&h.unit());
    compat.record(d1 == TensorComb::term(h.unit(), h.unit(), ratio(1, 1)), |_| "Δ𝟏 ≠ 𝟏⊗𝟏".into());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let g = random_grades(&mut rng, 3, max_grade);
        let x = random_element(&mut rng, &basis, g[0]);
        let y = random_element(&mut rng, &basis, g[1]);
        let z = random_element(&mut rng, &basis, g[2]);
        let label = move |_: usize| format!("random sample #{}", k);
        check_element(&x, &mut coassoc, &mut counit_law, &mut antipode_law, &mut unit, &mut graded, &label);
        let xy = mul(h, &x, &y);
        let l = mul(h, &xy, &z);
        let r = mul(h, &x, &mul(h, &y, &z));
        assoc.record(l == r, |d| format!("random sample #{}: {}", k, first_difference(&l, &r, d)));
        let lhs = coproduct(h, &xy);
        let rhs = mul_tensor(h, &coproduct(h, &x), &coproduct(h, &y));
        compat.record(lhs == rhs, |d| {
            format!("random sample #{}: {}", k, first_tensor_difference(&lhs, &rhs, d))
        });
        compat.record(counit(h, &xy) == counit(h, &x) * counit(h, &y), |_| {
            format!("random sample #{}: ε is not multiplicative", k)
        });
    }

    AxiomReport {
        instance: h.name().to_string(),
        max_grade,
        laws: vec![
            graded.finish(),
            assoc.finish(),
            unit.finish(),
            coassoc.finish(),
            counit_law.finish(),
            compat.finish(),
            antipode_law.finish(),
        ],
    }
}
