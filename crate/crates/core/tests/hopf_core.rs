use proptest::prelude::*;
use rough_hopf::hopf::{
    antipode_left, antipode_right, check_axioms, convolution, deconcat, deshuffle, mul, reduced_coproduct,
    shuffle, shuffle_permutations, word, ConcatDeshuffle, HopfAlgebra, LinearMap, Poly, ShuffleDeconcat,
};
use rough_hopf::linalg::{pair, pair_tensor, LinComb, TensorComb};
use rough_hopf::scalar::{int, ratio, Scalar};
use rough_hopf::symbols::{MultiIndex, Word};

fn w(letters: &[u16]) -> Word {
    word(letters)
}

fn lw(letters: &[u16]) -> LinComb<Word> {
    LinComb::basis(w(letters))
}

/// Shuffle by the letter recursion `ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b`.
fn shuffle_oracle(u: &[u16], v: &[u16]) -> LinComb<Word> {
    if u.is_empty() {
        return lw(v);
    }
    if v.is_empty() {
        return lw(u);
    }
    let (ua, a) = (&u[..u.len() - 1], u[u.len() - 1]);
    let (vb, b) = (&v[..v.len() - 1], v[v.len() - 1]);
    let left = shuffle_oracle(ua, v).map_basis(|x| x.push(a));
    let right = shuffle_oracle(u, vb).map_basis(|x| x.push(b));
    left + right
}

#[test]
fn poly_product_examples() {
    let p = Poly::new(2);
    let x = |a: u32, b: u32| MultiIndex::new(vec![a, b]);
    assert_eq!(p.product(&x(1, 0), &x(0, 1)), LinComb::basis(x(1, 1)));
    assert_eq!(p.product(&x(0, 0), &x(3, 2)), LinComb::basis(x(3, 2)));
    assert_eq!(p.product(&x(2, 1), &x(1, 1)), LinComb::basis(x(3, 2)));
}

#[test]
fn poly_coproduct_is_binomial() {
    let p1 = Poly::new(1);
    let m = |a: u32| MultiIndex::new(vec![a]);
    let d = p1.coproduct(&m(2));
    let mut expected = TensorComb::zero();
    expected.add_term(m(0), m(2), int(1));
    expected.add_term(m(1), m(1), int(2));
    expected.add_term(m(2), m(0), int(1));
    assert_eq!(d, expected);
    assert_eq!(p1.coproduct(&m(0)), TensorComb::term(m(0), m(0), int(1)));
    let p2 = Poly::new(2);
    let d11 = p2.coproduct(&MultiIndex::new(vec![1, 1]));
    assert_eq!(d11.len(), 4);
    assert!(d11.iter().all(|(_, _, c)| *c == int(1)));
}

#[test]
fn poly_pairing_reads_normalized_dual_basis() {
    let x20: LinComb<MultiIndex> = LinComb::basis(MultiIndex::new(vec![2, 0]));
    assert_eq!(pair(&x20, &x20), int(1));
}

#[test]
fn shuffle_examples() {
    assert_eq!(shuffle::<u16, Scalar>(&w(&[1]), &w(&[2])), &lw(&[1, 2]) + &lw(&[2, 1]));
    assert_eq!(shuffle::<u16, Scalar>(&w(&[]), &w(&[2, 1])), lw(&[2, 1]));
    assert_eq!(shuffle::<u16, Scalar>(&w(&[1, 1]), &w(&[1])), lw(&[1, 1, 1]).scale(&int(3)));
}

#[test]
fn shuffle_permutations_sh24() {
    let sh = shuffle_permutations(2, 4);
    let expected: Vec<Vec<usize>> = vec![
        vec![1, 2, 3, 4],
        vec![1, 3, 2, 4],
        vec![1, 4, 2, 3],
        vec![2, 3, 1, 4],
        vec![2, 4, 1, 3],
        vec![3, 4, 1, 2],
    ];
    assert_eq!(sh, expected);
}

#[test]
fn deconcat_and_deshuffle_on_small_words() {
    let d: TensorComb<Word> = deconcat(&w(&[1, 2]));
    let mut e = TensorComb::zero();
    e.add_term(w(&[]), w(&[1, 2]), int(1));
    e.add_term(w(&[1]), w(&[2]), int(1));
    e.add_term(w(&[1, 2]), w(&[]), int(1));
    assert_eq!(d, e);
    assert_eq!(deconcat::<u16, Scalar>(&w(&[])), TensorComb::term(w(&[]), w(&[]), int(1)));
    let mut e1 = TensorComb::zero();
    e1.add_term(w(&[]), w(&[1]), int(1));
    e1.add_term(w(&[1]), w(&[]), int(1));
    assert_eq!(deshuffle::<u16, Scalar>(&w(&[1])), e1);
}

#[test]
fn closed_antipodes() {
    let p = Poly::new(2);
    let n = MultiIndex::new(vec![2, 1]);
    assert_eq!(p.antipode(&n), LinComb::term(n.clone(), int(-1)));
    let s = ShuffleDeconcat::new(3);
    assert_eq!(s.antipode(&w(&[1, 2, 3])), LinComb::term(w(&[3, 2, 1]), int(-1)));
    assert_eq!(s.antipode(&w(&[])), lw(&[]));
}

#[test]
fn recursive_antipodes_match_closed_forms() {
    let s = ShuffleDeconcat::new(2);
    let c = ConcatDeshuffle::new(2);
    for x in Word::all_up_to(2, 4) {
        let lx = LinComb::basis(x.clone());
        assert_eq!(antipode_right(&s, &lx), s.antipode(&x));
        assert_eq!(antipode_left(&s, &lx), s.antipode(&x));
        assert_eq!(antipode_right(&c, &lx), c.antipode(&x));
        assert_eq!(antipode_left(&c, &lx), c.antipode(&x));
    }
    let p = Poly::new(2);
    for n in p.basis_up_to(4) {
        assert_eq!(antipode_right(&p, &LinComb::basis(n.clone())), p.antipode(&n));
        assert_eq!(antipode_left(&p, &LinComb::basis(n.clone())), p.antipode(&n));
    }
    let k = LinComb::term(w(&[]), ratio(5, 2));
    assert_eq!(antipode_right(&s, &k), k);
    assert_eq!(antipode_right(&p, &LinComb::basis(MultiIndex::new(vec![1, 0]))), LinComb::term(MultiIndex::new(vec![1, 0]), int(-1)));
}

#[test]
fn reduced_coproduct_examples() {
    let s = ShuffleDeconcat::new(2);
    assert!(reduced_coproduct(&s, &lw(&[1])).is_zero());
    assert_eq!(reduced_coproduct(&s, &lw(&[1, 2])), TensorComb::term(w(&[1]), w(&[2]), int(1)));
    assert_eq!(reduced_coproduct(&s, &lw(&[])), TensorComb::term(w(&[]), w(&[]), int(-1)));
}

#[test]
fn convolution_identities() {
    let s = ShuffleDeconcat::new(2);
    let id = LinearMap::identity(&s, 4);
    let ant = LinearMap::antipode(&s, 4);
    let ue = LinearMap::unit_counit(&s, 4);
    assert_eq!(convolution(&s, &id, &ant).unwrap(), ue);
    assert_eq!(convolution(&s, &ue, &ant).unwrap(), ant);
    let d = LinearMap::grading(&s, 3);
    let id3 = LinearMap::identity(&s, 3);
    let lhs = convolution(&s, &convolution(&s, &d, &id3).unwrap(), &ant).unwrap();
    let rhs = convolution(&s, &d, &convolution(&s, &id3, &ant).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert!(id.apply(&lw(&[1, 1, 1, 1, 1])).is_err());
}

#[test]
fn axiom_suites_pass_on_word_and_polynomial_instances() {
    let r = check_axioms(&ShuffleDeconcat::new(2), 5, 50, 0);
    assert!(r.passed(), "{}", r);
    let r = check_axioms(&ConcatDeshuffle::new(2), 4, 50, 0);
    assert!(r.passed(), "{}", r);
    let r = check_axioms(&Poly::new(3), 6, 50, 0);
    assert!(r.passed(), "{}", r);
}

/// Deconcatenation with one extra term on words of length 2, as a harness self-check.
struct Corrupted(ShuffleDeconcat);

impl HopfAlgebra for Corrupted {
    type Basis = Word;
    fn name(&self) -> &str {
        "corrupted"
    }
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn unit(&self) -> Word {
        Word::empty()
    }
    fn product(&self, a: &Word, b: &Word) -> LinComb<Word> {
        self.0.product(a, b)
    }
    fn coproduct(&self, x: &Word) -> TensorComb<Word> {
        let mut d = self.0.coproduct(x);
        if x.len() == 2 {
            d.add_term(x.suffix(1), x.prefix(1), int(1));
        }
        d
    }
    fn basis_of_grade(&self, g: usize) -> Vec<Word> {
        self.0.basis_of_grade(g)
    }
}

#[test]
fn corrupted_coproduct_is_caught() {
    let r = check_axioms(&Corrupted(ShuffleDeconcat::new(2)), 3, 10, 0);
    assert!(!r.passed());
    let co = r.laws.iter().find(|l| l.law == "coassociativity").unwrap();
    let witness = co.violation.as_ref().expect("coassociativity must fail");
    assert!(witness.contains("disagree at"), "{}", witness);
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1u16..=3, 0..=max_len).prop_map(Word::new)
}

fn comb_strategy(max_len: usize) -> impl Strategy<Value = LinComb<Word>> {
    proptest::collection::vec((word_strategy(max_len), -3i64..=3), 1..4)
        .prop_map(|v| LinComb::from_terms(v.into_iter().map(|(w, c)| (w, int(c)))))
}

proptest! {
    #[test]
    fn shuffle_agrees_with_letter_recursion(u in word_strategy(4), v in word_strategy(4)) {
        prop_assert_eq!(shuffle::<u16, Scalar>(&u, &v), shuffle_oracle(u.letters(), v.letters()));
    }

    #[test]
    fn shuffle_is_dual_to_deshuffle_and_concat_to_deconcat(u in word_strategy(3), v in word_strategy(3), x in word_strategy(6)) {
        let lx = LinComb::basis(x.clone());
        let uv = TensorComb::term(u.clone(), v.clone(), int(1));
        prop_assert_eq!(pair(&shuffle(&u, &v), &lx), pair_tensor(&uv, &deshuffle(&x)));
        prop_assert_eq!(pair_tensor(&deconcat(&x), &uv), pair(&lx, &LinComb::basis(u.concat(&v))));
    }

    #[test]
    fn antipode_is_an_algebra_antimorphism(x in comb_strategy(2), y in comb_strategy(2)) {
        for h in [&ShuffleDeconcat::new(3) as &dyn HopfAlgebra<Basis = Word>, &ConcatDeshuffle::new(3)] {
            let sxy = rough_hopf::hopf::antipode(h, &mul(h, &x, &y));
            let sysx = mul(h, &rough_hopf::hopf::antipode(h, &y), &rough_hopf::hopf::antipode(h, &x));
            prop_assert_eq!(sxy, sysx);
        }
    }

    #[test]
    fn antipode_is_a_coalgebra_antimorphism(x in comb_strategy(4)) {
        let h = ConcatDeshuffle::new(3);
        let lhs = rough_hopf::hopf::coproduct(&h, &rough_hopf::hopf::antipode(&h, &x));
        let rhs = rough_hopf::hopf::coproduct(&h, &x).map_both(|a| h.antipode(a), |b| h.antipode(b)).swap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_bilinear_and_positive(x in comb_strategy(3), y in comb_strategy(3), z in comb_strategy(3), a in -5i64..5) {
        let lhs = pair(&(&x.scale(&int(a)) + &y), &z);
        let rhs = int(a) * pair(&x, &z) + pair(&y, &z);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pair(&x, &y), pair(&y, &x));
        prop_assert!(x.is_zero() || pair(&x, &x) > int(0));
    }
}
