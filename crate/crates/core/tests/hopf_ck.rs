use proptest::prelude::*;
use rough_hopf::ck::{
    ck_antipode, ck_antipode_splits, ck_coproduct, enumerate_cuts, forest_deconcat, gl_antipode_dual, gl_product,
    kernel_of_phi, leaf, phi, phi_forest, phi_hat, psi, psi_forest, ConnesKreimer, GrossmanLarson,
};
use rough_hopf::hopf::{antipode_left, antipode_right, check_axioms, deconcat, HopfAlgebra, ShuffleDeconcat};
use rough_hopf::linalg::{kernel_of_map, pair, pair_tensor, LinComb, TensorComb};
use rough_hopf::scalar::{int, Scalar};
use rough_hopf::symbols::{parse_forest, Forest, ForestCatalog, Graded, Tree, TreeWord, Word};
use std::collections::BTreeMap;

fn f(text: &str) -> Forest {
    parse_forest(text, 3).unwrap()
}

/// Forest flattened into nodes with parent pointers, for the antichain description of cuts.
struct Nodes {
    label: Vec<u16>,
    parent: Vec<Option<usize>>,
}

impl Nodes {
    fn of(z: &Forest) -> Nodes {
        let mut n = Nodes { label: Vec::new(), parent: Vec::new() };
        for t in z.tree_list() {
            n.push(&t, None);
        }
        n
    }

    fn push(&mut self, t: &Tree, parent: Option<usize>) {
        let me = self.label.len();
        self.label.push(t.label());
        self.parent.push(parent);
        for c in t.children().tree_list() {
            self.push(&c, Some(me));
        }
    }

    fn is_ancestor(&self, a: usize, mut b: usize) -> bool {
        while let Some(p) = self.parent[b] {
            if p == a {
                return true;
            }
            b = p;
        }
        false
    }

    fn subtree(&self, root: usize, keep: &dyn Fn(usize) -> bool) -> Tree {
        let kids = (0..self.label.len()).filter(|&c| self.parent[c] == Some(root) && keep(c));
        Tree::new(self.label[root], Forest::from_trees(kids.map(|c| self.subtree(c, keep)).collect::<Vec<_>>()))
    }

    /// Every admissible cut as a (crown, trunk) pair: the crown is the union of subtrees above an
    /// antichain, the trunk is everything else.
    fn cuts(&self) -> BTreeMap<(Forest, Forest), u64> {
        let n = self.label.len();
        let mut out = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let antichain = chosen.iter().all(|&a| chosen.iter().all(|&b| a == b || !self.is_ancestor(a, b)));
            if !antichain {
                continue;
            }
            let in_crown = |v: usize| chosen.iter().any(|&a| a == v || self.is_ancestor(a, v));
            let crown = Forest::from_trees(chosen.iter().map(|&a| self.subtree(a, &|_| true)).collect::<Vec<_>>());
            let trunk_roots = (0..n).filter(|&v| self.parent[v].is_none() && !in_crown(v));
            let trunk =
                Forest::from_trees(trunk_roots.map(|r| self.subtree(r, &|v| !in_crown(v))).collect::<Vec<_>>());
            *out.entry((crown, trunk)).or_default() += 1;
        }
        out
    }
}

fn expansion(terms: &[(&str, &str, i64)]) -> TensorComb<Forest> {
    let mut out = TensorComb::zero();
    for (a, b, c) in terms {
        out.add_term(f(a), f(b), int(*c));
    }
    out
}

#[test]
fn linear_tree_coproducts() {
    assert_eq!(ck_coproduct(&f("[]_1")), expansion(&[("[]_1", "1", 1), ("1", "[]_1", 1)]));
    assert_eq!(
        ck_coproduct(&f("[[]_1]_2")),
        expansion(&[("[[]_1]_2", "1", 1), ("[]_1", "[]_2", 1), ("1", "[[]_1]_2", 1)])
    );
}

#[test]
fn decorated_forest_coproduct() {
    let expected = expansion(&[
        ("[[]_3]_2 [[]_2]_3", "1", 1),
        ("[]_3 [[]_2]_3", "[]_2", 1),
        ("[[]_2]_3", "[[]_3]_2", 1),
        ("[]_2 [[]_3]_2", "[]_3", 1),
        ("[]_2 []_3", "[]_2 []_3", 1),
        ("[]_2", "[]_3 [[]_3]_2", 1),
        ("[[]_3]_2", "[[]_2]_3", 1),
        ("[]_3", "[]_2 [[]_2]_3", 1),
        ("1", "[[]_3]_2 [[]_2]_3", 1),
    ]);
    assert_eq!(ck_coproduct(&f("[[]_3]_2 [[]_2]_3")), expected);
}

#[test]
fn decorated_tree_coproduct() {
    let expected = expansion(&[
        ("[[[]_3]_2 [[]_2]_3]_1", "1", 1),
        ("[[]_3]_2 [[]_2]_3", "[]_1", 1),
        ("[]_3 [[]_2]_3", "[[]_2]_1", 1),
        ("[[]_2]_3", "[[[]_3]_2]_1", 1),
        ("[]_2 [[]_3]_2", "[[]_3]_1", 1),
        ("[]_2 []_3", "[[]_2 []_3]_1", 1),
        ("[]_2", "[[]_3 [[]_3]_2]_1", 1),
        ("[[]_3]_2", "[[[]_2]_3]_1", 1),
        ("[]_3", "[[]_2 [[]_2]_3]_1", 1),
        ("1", "[[[]_3]_2 [[]_2]_3]_1", 1),
    ]);
    assert_eq!(ck_coproduct(&f("[[[]_3]_2 [[]_2]_3]_1")), expected);
}

#[test]
fn identified_labels_merge_terms() {
    let expected = expansion(&[
        ("[[[]_2]_2 [[]_2]_2]_1", "1", 1),
        ("[[]_2]_2 [[]_2]_2", "[]_1", 1),
        ("[]_2 [[]_2]_2", "[[]_2]_1", 2),
        ("[[]_2]_2", "[[[]_2]_2]_1", 2),
        ("[]_2 []_2", "[[]_2 []_2]_1", 1),
        ("[]_2", "[[]_2 [[]_2]_2]_1", 2),
        ("1", "[[[]_2]_2 [[]_2]_2]_1", 1),
    ]);
    assert_eq!(ck_coproduct(&f("[[[]_2]_2 [[]_2]_2]_1")), expected);
}

#[test]
fn undecorated_coefficients() {
    let terms = [
        ("[[[]_1]_1 [[]_1]_1]_1", "1"),
        ("[[]_1]_1 [[]_1]_1", "[]_1"),
        ("[]_1 [[]_1]_1", "[[]_1]_1"),
        ("[[]_1]_1", "[[[]_1]_1]_1"),
        ("[]_1 []_1", "[[]_1 []_1]_1"),
        ("[]_1", "[[]_1 [[]_1]_1]_1"),
        ("1", "[[[]_1]_1 [[]_1]_1]_1"),
    ];
    let d = ck_coproduct(&f("[[[]_1]_1 [[]_1]_1]_1"));
    assert_eq!(d.len(), 7);
    let coeffs: Vec<_> = terms.iter().map(|(a, b)| d.coeff(&f(a), &f(b))).collect();
    assert_eq!(coeffs, [1, 1, 2, 2, 1, 2, 1].map(int).to_vec());
}

#[test]
fn cuts_agree_with_antichain_enumeration() {
    let cat = ForestCatalog::new(2, 5);
    for z in cat.forests_up_to(5) {
        let ours: BTreeMap<(Forest, Forest), u64> =
            enumerate_cuts(z).into_iter().map(|c| ((c.crown, c.trunk), c.multiplicity)).collect();
        assert_eq!(ours, Nodes::of(z).cuts(), "cuts of {}", z);
        let from_cuts = TensorComb::from_cuts(&ours);
        assert_eq!(ck_coproduct(z), from_cuts, "coproduct of {}", z);
    }
}

trait FromCuts {
    fn from_cuts(c: &BTreeMap<(Forest, Forest), u64>) -> Self;
}

impl FromCuts for TensorComb<Forest> {
    fn from_cuts(c: &BTreeMap<(Forest, Forest), u64>) -> Self {
        let mut out = TensorComb::zero();
        for ((a, b), m) in c {
            out.add_term(a.clone(), b.clone(), int(*m as i64));
        }
        out
    }
}

#[test]
fn antipode_examples() {
    let s = ck_antipode(&f("[[]_1]_1"));
    let mut expected = LinComb::term(f("[[]_1]_1"), int(-1));
    expected.add_term(f("[]_1 []_1"), int(1));
    assert_eq!(s, expected);
    assert_eq!(ck_antipode(&f("[]_2")), LinComb::term(f("[]_2"), int(-1)));
    assert_eq!(ck_antipode(&f("1")), LinComb::basis(Forest::unit()));
}

#[test]
fn antipode_representations_agree() {
    let h = ConnesKreimer::new(2);
    for z in ForestCatalog::new(2, 5).forests_up_to(5) {
        let rec = ck_antipode(z);
        assert_eq!(ck_antipode_splits(z), rec, "splits of {}", z);
        assert_eq!(antipode_right(&h, &LinComb::basis(z.clone())), rec, "right recursion on {}", z);
        assert_eq!(antipode_left(&h, &LinComb::basis(z.clone())), rec, "left recursion on {}", z);
    }
}

#[test]
fn gl_product_examples() {
    let mut expected = LinComb::term(f("[]_1 []_1"), int(2));
    expected.add_term(f("[[]_1]_1"), int(1));
    assert_eq!(gl_product(&leaf(1), &leaf(1)), expected);
    let mut e12 = LinComb::basis(f("[]_1 []_2"));
    e12.add_term(f("[[]_1]_2"), int(1));
    assert_eq!(gl_product(&leaf(1), &leaf(2)), e12);
    assert_eq!(gl_product(&Forest::unit(), &f("[[]_1]_2")), LinComb::basis(f("[[]_1]_2")));
}

#[test]
fn gl_product_matches_brute_force_over_catalog() {
    let cat = ForestCatalog::new(2, 4);
    for crown in cat.forests_up_to(4) {
        for trunk in cat.forests_up_to(4 - crown.grade()) {
            let g = crown.grade() + trunk.grade();
            let brute = LinComb::from_terms(
                cat.forests_of_grade(g).iter().map(|z| (z.clone(), ck_coproduct(z).coeff(crown, trunk))),
            );
            assert_eq!(gl_product(crown, trunk), brute, "{} ⋆ {}", crown, trunk);
        }
    }
}

#[test]
fn forest_and_tree_products_are_dual() {
    let cat = ForestCatalog::new(2, 4);
    let all: Vec<&Forest> = cat.forests_up_to(4).collect();
    for a in &all {
        for b in &all {
            if a.grade() + b.grade() > 4 {
                continue;
            }
            let ab = TensorComb::term((*a).clone(), (*b).clone(), int(1));
            let star = gl_product(a, b);
            for z in cat.forests_of_grade(a.grade() + b.grade()) {
                let lz = LinComb::basis(z.clone());
                assert_eq!(pair(&star, &lz), pair_tensor(&ab, &ck_coproduct(z)));
                assert_eq!(pair(&LinComb::basis(a.product(b)), &lz), pair_tensor(&ab, &forest_deconcat(z)));
            }
        }
    }
}

#[test]
fn gl_antipode_is_dual_to_ck_antipode() {
    let cat = ForestCatalog::new(2, 4);
    let gl = GrossmanLarson::new(2);
    for eta in cat.forests_up_to(4) {
        assert_eq!(gl.antipode(eta), gl_antipode_dual(eta, &cat), "S on {}", eta);
    }
}

#[test]
fn forest_deconcat_example() {
    let d = forest_deconcat(&f("[]_1 []_1"));
    assert_eq!(d, expansion(&[("[]_1 []_1", "1", 1), ("[]_1", "[]_1", 1), ("1", "[]_1 []_1", 1)]));
}

#[test]
fn ck_and_gl_satisfy_the_axioms() {
    let r = check_axioms(&ConnesKreimer::new(2), 4, 50, 1);
    assert!(r.passed(), "{}", r);
    let r = check_axioms(&GrossmanLarson::new(2), 4, 50, 1);
    assert!(r.passed(), "{}", r);
}

#[test]
fn phi_examples_and_ladder_section() {
    let mut e = LinComb::basis(Word::new(vec![1, 2]));
    e.add_term(Word::new(vec![2, 1]), int(1));
    assert_eq!(phi_forest(&f("[]_1 []_2")), e);
    assert_eq!(phi_forest(&f("[[]_1]_2")), LinComb::basis(Word::new(vec![1, 2])));
    assert_eq!(phi_hat(&Word::new(vec![1, 2, 3])), f("[[[]_1]_2]_3"));
    for w in Word::all_up_to(2, 5) {
        assert_eq!(phi_forest(&phi_hat(&w)), LinComb::basis(w.clone()));
    }
}

#[test]
fn phi_is_a_hopf_morphism() {
    let sh = ShuffleDeconcat::new(2);
    for z in ForestCatalog::new(2, 4).forests_up_to(4) {
        let pz = phi_forest(z);
        let lhs = pz.map_linear(|w| LinComb::from_terms(deconcat::<_, Scalar>(w).iter().map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))));
        let mut rhs = LinComb::zero();
        for (a, b, c) in ck_coproduct(z).iter() {
            for (u, cu) in phi_forest(a).iter() {
                for (v, cv) in phi_forest(b).iter() {
                    rhs.add_term((u.clone(), v.clone()), c * cu * cv);
                }
            }
        }
        assert_eq!(lhs, rhs, "Δ φ({}) ≠ (φ⊗φ)Δ⋆", z);
        let s_then_phi = phi(&ck_antipode(z));
        let phi_then_s = pz.map_linear(|w| sh.antipode(w));
        assert_eq!(s_then_phi, phi_then_s, "φS ≠ Sφ on {}", z);
    }
}

#[test]
fn kernel_of_phi_has_the_expected_dimension() {
    let cat = ForestCatalog::new(2, 3);
    let ker = kernel_of_phi(&cat, 3);
    let expected: usize = (1..=3).map(|g| cat.forests_of_grade(g).len() - 2usize.pow(g as u32)).sum();
    assert_eq!(ker.len(), expected);
    for k in &ker {
        assert!(phi(k).is_zero());
    }
}

#[test]
fn psi_intertwines_coproducts_and_is_injective() {
    let cat = ForestCatalog::new(2, 4);
    for z in cat.forests_up_to(4) {
        let lhs: LinComb<(TreeWord, TreeWord)> = psi_forest(z)
            .map_linear(|w| LinComb::from_terms(deconcat::<_, Scalar>(w).iter().map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))));
        let mut rhs = LinComb::zero();
        for (a, b, c) in ck_coproduct(z).iter() {
            for (u, cu) in psi_forest(a).iter() {
                for (v, cv) in psi_forest(b).iter() {
                    rhs.add_term((u.clone(), v.clone()), c * cu * cv);
                }
            }
        }
        assert_eq!(lhs, rhs, "(ψ⊗ψ)Δ⋆ ≠ Δψ on {}", z);
    }
    for g in 1..=4 {
        assert!(kernel_of_map(cat.forests_of_grade(g), psi_forest).is_empty(), "ψ not injective at grade {}", g);
    }
    let single = psi(&LinComb::basis(f("[[]_1]_2")));
    let mut expected = LinComb::basis(TreeWord::new(vec![Tree::new(2, f("[]_1"))]));
    expected.add_term(TreeWord::new(vec![Tree::leaf(1), Tree::leaf(2)]), int(1));
    assert_eq!(single, expected);
}

fn forest_strategy() -> impl Strategy<Value = Forest> {
    let cat = ForestCatalog::new(3, 5);
    let all: Vec<Forest> = cat.forests_up_to(5).cloned().collect();
    proptest::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_text_round_trips(z in forest_strategy()) {
        let text = z.to_string();
        prop_assert_eq!(parse_forest(&text, 3).unwrap(), z);
    }

    #[test]
    fn cut_multiplicities_sum_to_antichain_count(z in forest_strategy().prop_filter("small", |z| z.grade() <= 5)) {
        let total: u64 = enumerate_cuts(&z).iter().map(|c| c.multiplicity).sum();
        let antichains: u64 = Nodes::of(&z).cuts().values().sum();
        prop_assert_eq!(total, antichains);
    }

    #[test]
    fn product_is_commutative_and_graded(a in forest_strategy(), b in forest_strategy()) {
        prop_assert_eq!(a.product(&b), b.product(&a));
        prop_assert_eq!(a.product(&b).grade(), a.grade() + b.grade());
    }
}
