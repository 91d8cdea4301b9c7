use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rough_hopf::ck::{grafted, leaf, ConnesKreimer};
use rough_hopf::hopf::{ConcatDeshuffle, HopfAlgebra, ShuffleDeconcat};
use rough_hopf::linalg::LinComb;
use rough_hopf::model_rde::{
    abstract_integration, branched_action, branched_comodule_coproduct, check_branched_action, check_model,
    check_structure_action, compose_with_function, derivative_map, local_expansion, model_from_lift, picard_solve,
    rde_symbols, struct_action, ActionFlavor, Character, ModelError, PicardOptions, RdeError, RdeSymbol, ScalarFn,
    VectorField,
};
use rough_hopf::roughpath::{geo_to_branched, BranchedLift, Lift, PiecewiseLinearPath, Signature};
use rough_hopf::scalar::{int, parse_rational, ratio, Scalar};
use rough_hopf::symbols::{Forest, Graded, Tree};

fn zigzag() -> PiecewiseLinearPath {
    PiecewiseLinearPath::new(vec![
        (int(0), vec![int(0), int(0)]),
        (ratio(1, 3), vec![int(1), ratio(-1, 2)]),
        (ratio(2, 3), vec![ratio(1, 3), int(2)]),
        (int(1), vec![int(-1), ratio(3, 2)]),
    ])
    .unwrap()
}

fn tree(z: &Forest) -> Tree {
    z.tree_list().remove(0)
}

fn sym_tree(z: &Forest) -> RdeSymbol {
    RdeSymbol::Tree(tree(z))
}

fn passed(laws: &[rough_hopf::hopf::LawResult]) -> bool {
    laws.iter().all(|l| l.violation.is_none())
}

/// A character of the Connes–Kreimer algebra taken from the branched lift of the zigzag path.
fn ck_character(level: usize) -> Character<Forest> {
    let lift = BranchedLift::new(zigzag(), level).unwrap();
    Character::new(lift.characters(), lift.eval(&ratio(1, 5), &ratio(4, 5)), level).unwrap()
}

#[test]
fn struct_action_examples() {
    let ck = ConnesKreimer::new(2);
    let eps = Character::counit(&ck, 3);
    let x = LinComb::basis(grafted(&leaf(1), 2));
    assert_eq!(struct_action(&ck, &eps, &x, ActionFlavor::Left).unwrap(), x);
    let g = ck_character(3);
    let one = LinComb::basis(Forest::unit());
    assert_eq!(struct_action(&ck, &g, &one, ActionFlavor::Left).unwrap(), one);
    let dot = LinComb::basis(leaf(1));
    let expected = &dot + &one.scale(&g.eval(&leaf(1)));
    assert_eq!(struct_action(&ck, &g, &dot, ActionFlavor::Left).unwrap(), expected);
    let deep = LinComb::basis(grafted(&grafted(&grafted(&leaf(1), 1), 1), 1));
    assert!(matches!(struct_action(&ck, &g, &deep, ActionFlavor::Left), Err(ModelError::GradeExceeded { .. })));
}

#[test]
fn non_characters_are_rejected() {
    let ck = ConnesKreimer::new(1);
    let mut values = LinComb::basis(Forest::unit());
    values.add_term(leaf(1), int(2));
    values.add_term(leaf(1).product(&leaf(1)), int(3));
    assert!(matches!(Character::new(&ck, values, 2), Err(ModelError::NotCharacter(_))));
}

#[test]
fn left_action_is_an_antihomomorphism_and_right_a_homomorphism() {
    let h = ConcatDeshuffle::new(2);
    let sig = Signature::new(zigzag(), 3).unwrap();
    let sh = ShuffleDeconcat::new(2);
    let g = Character::new(&sh, sig.eval(&int(0), &ratio(1, 2)), 3).unwrap();
    let k = Character::new(&sh, sig.eval(&ratio(1, 4), &int(1)), 3).unwrap();
    let gk = Character::from_values_unchecked(rough_hopf::hopf::mul_truncated(&h, g.values(), k.values(), 3), 3);
    for w in sh.basis_up_to(3) {
        let x = LinComb::basis(w);
        let left = |c: &Character<_>, v: &LinComb<_>| struct_action(&sh, c, v, ActionFlavor::Left).unwrap();
        let right = |c: &Character<_>, v: &LinComb<_>| struct_action(&sh, c, v, ActionFlavor::Right).unwrap();
        // Γ^l_g Γ^l_k = Γ^l_{k∗g}; convolution of characters is the concatenation product of their values.
        let kg = Character::from_values_unchecked(rough_hopf::hopf::mul_truncated(&h, k.values(), g.values(), 3), 3);
        assert_eq!(left(&g, &left(&k, &x)), left(&kg, &x));
        assert_eq!(right(&g, &right(&k, &x)), right(&gk, &x));
    }
}

#[test]
fn characterisation_of_structure_actions() {
    let ck = ConnesKreimer::new(2);
    let g = ck_character(3);
    let gamma = |b: &Forest| struct_action(&ck, &g, &LinComb::basis(b.clone()), ActionFlavor::Left).unwrap();
    assert!(passed(&check_structure_action(&ck, gamma, 3, ActionFlavor::Left)));
    let gamma_r = |b: &Forest| struct_action(&ck, &g, &LinComb::basis(b.clone()), ActionFlavor::Right).unwrap();
    assert!(passed(&check_structure_action(&ck, gamma_r, 3, ActionFlavor::Right)));
    // A random linear perturbation of a single basis image breaks multiplicativity.
    let bad_target = leaf(1).product(&leaf(2));
    let bad = |b: &Forest| {
        let mut img = gamma(b);
        if *b == bad_target {
            img.add_term(leaf(2), int(7));
        }
        img
    };
    let laws = check_structure_action(&ck, bad, 3, ActionFlavor::Left);
    let mult = laws.iter().find(|l| l.law == "multiplicative").unwrap();
    assert!(mult.violation.is_some());
}

#[test]
fn models_of_both_lift_flavours_are_exact() {
    let p = zigzag();
    let grid = p.uniform_grid(5);
    let model = model_from_lift(BranchedLift::new(p.clone(), 3).unwrap(), 0.34, &grid).unwrap();
    let laws = check_model(&model, &grid);
    assert!(passed(&laws), "{:?}", laws);
    let model = model_from_lift(Signature::new(p.clone(), 3).unwrap(), 0.34, &grid).unwrap();
    assert!(passed(&check_model(&model, &grid)));
    let routed = model_from_lift(geo_to_branched(Signature::new(p, 3).unwrap()), 0.34, &grid).unwrap();
    assert!(passed(&check_model(&routed, &grid)));
    let t = &grid[2];
    let x = LinComb::basis(grafted(&leaf(1), 2));
    assert_eq!(routed.gamma_st(t, t, &x).unwrap(), x);
    assert_eq!(routed.pi(t, &LinComb::basis(Forest::unit()), &grid[4]), int(1));
}

#[test]
fn model_from_a_broken_lift_is_refused() {
    struct Broken(BranchedLift);
    impl Lift for Broken {
        type Characters = ConnesKreimer;
        type Group = rough_hopf::ck::GrossmanLarson;
        fn characters(&self) -> &ConnesKreimer {
            self.0.characters()
        }
        fn group(&self) -> &rough_hopf::ck::GrossmanLarson {
            self.0.group()
        }
        fn level(&self) -> usize {
            self.0.level()
        }
        fn eval(&self, s: &Scalar, t: &Scalar) -> LinComb<Forest> {
            let mut v = self.0.eval(s, t);
            v.add_term(leaf(1), int(1));
            v
        }
    }
    let p = zigzag();
    let grid = p.uniform_grid(3);
    let lift = Broken(BranchedLift::new(p, 2).unwrap());
    assert!(matches!(model_from_lift(lift, 0.5, &grid), Err(ModelError::Axioms(_))));
}

#[test]
fn comodule_coproduct_examples() {
    let xi1 = LinComb::basis(RdeSymbol::xi(1));
    let cp = branched_comodule_coproduct(&xi1);
    assert_eq!(cp.len(), 1);
    assert_eq!(cp.coeff(&Forest::unit(), &RdeSymbol::xi(1)), int(1));
    let dotted = LinComb::basis(RdeSymbol::Dotted(leaf(1), 2));
    let cp = branched_comodule_coproduct(&dotted);
    assert_eq!(cp.len(), 2);
    assert_eq!(cp.coeff(&Forest::unit(), &RdeSymbol::Dotted(leaf(1), 2)), int(1));
    assert_eq!(cp.coeff(&leaf(1), &RdeSymbol::xi(2)), int(1));
    let t = LinComb::basis(sym_tree(&grafted(&leaf(1), 2)));
    let cp = branched_comodule_coproduct(&t);
    assert_eq!(cp.coeff(&leaf(1), &sym_tree(&leaf(2))), int(1));
    assert_eq!(cp.coeff(&grafted(&leaf(1), 2), &RdeSymbol::Unit), int(1));
}

#[test]
fn branched_action_satisfies_the_characterisation() {
    let g = ck_character(4);
    for i in 1..=2 {
        assert_eq!(branched_action(&g, &LinComb::basis(RdeSymbol::xi(i))).unwrap(), LinComb::basis(RdeSymbol::xi(i)));
    }
    let gamma = |s: &RdeSymbol| branched_action(&g, &LinComb::basis(s.clone())).unwrap();
    let laws = check_branched_action(gamma, 2, 4, 0.3);
    assert!(passed(&laws), "{:?}", laws);
    // 𝓘Γ − Γ𝓘 equals −g(⌊ζ⌋_i)𝟏 exactly.
    let a = LinComb::basis(RdeSymbol::Dotted(leaf(1), 2));
    let lhs = abstract_integration(&gamma(&RdeSymbol::Dotted(leaf(1), 2))).unwrap();
    let rhs = branched_action(&g, &abstract_integration(&a).unwrap()).unwrap();
    let expected = LinComb::term(RdeSymbol::Unit, -g.eval(&grafted(&leaf(1), 2)));
    assert_eq!(&lhs - &rhs, expected);
}

#[test]
fn endomap_breaking_the_product_rule_is_rejected() {
    let g = ck_character(3);
    let target = RdeSymbol::Dotted(leaf(1), 1);
    let bad = |s: &RdeSymbol| {
        let mut img = branched_action(&g, &LinComb::basis(s.clone())).unwrap();
        if *s == target {
            img.add_term(RdeSymbol::xi(1), int(5));
        }
        img
    };
    let laws = check_branched_action(bad, 2, 3, 0.3);
    assert!(laws.iter().find(|l| l.law == "product").unwrap().violation.is_some());
}

#[test]
fn integration_and_derivative() {
    let xi1: LinComb<RdeSymbol> = LinComb::basis(RdeSymbol::xi(1));
    assert_eq!(abstract_integration(&xi1).unwrap(), LinComb::basis(sym_tree(&leaf(1))));
    let d: LinComb<RdeSymbol> = LinComb::basis(RdeSymbol::Dotted(leaf(1), 2));
    assert_eq!(abstract_integration(&d).unwrap(), LinComb::basis(sym_tree(&grafted(&leaf(1), 2))));
    assert!(derivative_map::<Scalar>(&LinComb::basis(RdeSymbol::Unit)).unwrap().is_zero());
    assert_eq!(derivative_map(&LinComb::basis(sym_tree(&grafted(&leaf(1), 2)))).unwrap(), d);
    assert!(abstract_integration::<Scalar>(&LinComb::basis(RdeSymbol::Unit)).is_err());
    for s in rde_symbols(2, 4).into_iter().filter(|s| !s.is_function_like()) {
        let x: LinComb<RdeSymbol> = LinComb::basis(s.clone());
        let up = abstract_integration(&x).unwrap();
        assert_eq!(derivative_map(&up).unwrap(), x);
        let hs = s.homogeneity(0.3);
        let hu = up.support().next().unwrap().homogeneity(0.3);
        assert!((hu - hs - 1.0).abs() < 1e-12);
        assert_eq!(up.support().next().unwrap().grade(), s.grade());
    }
    // ∂Γ = Γ∂ on the function-like sector
    let g = ck_character(4);
    for s in rde_symbols(2, 4).into_iter().filter(|s| s.is_function_like()) {
        let x = LinComb::basis(s);
        let lhs = derivative_map(&branched_action(&g, &x).unwrap()).unwrap();
        let rhs = branched_action(&g, &derivative_map(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn composition_examples() {
    let y0 = 1.5;
    let dot = sym_tree(&leaf(1));
    let y = &LinComb::term(RdeSymbol::Unit, y0) + &LinComb::term(dot, 1.0);
    let id = compose_with_function(&y, &ScalarFn::Linear(1.0), 2).unwrap();
    assert_eq!(id, LinComb::from_terms([(Forest::unit(), y0), (leaf(1), 1.0)]));
    let c = compose_with_function(&y, &ScalarFn::Const(3.0), 2).unwrap();
    assert_eq!(c, LinComb::term(Forest::unit(), 3.0));
    let sq = compose_with_function(&y, &ScalarFn::parse("poly:0,0,1").unwrap(), 2).unwrap();
    let expected = LinComb::from_terms([(Forest::unit(), y0 * y0), (leaf(1), 2.0 * y0), (leaf(1).product(&leaf(1)), 1.0)]);
    assert_eq!(sq, expected);
    fn f0(y: f64) -> f64 {
        y * y
    }
    fn f1(y: f64) -> f64 {
        2.0 * y
    }
    let short = ScalarFn::Table(vec![f0, f1]);
    assert!(matches!(compose_with_function(&y, &short, 2), Err(RdeError::DerivativeOrder { .. })));
}

#[test]
fn scalar_function_derivatives() {
    let p = ScalarFn::parse("poly:1,2,3").unwrap();
    assert_eq!(p.derivative(0, 2.0), Some(17.0));
    assert_eq!(p.derivative(1, 2.0), Some(14.0));
    assert_eq!(p.derivative(2, 2.0), Some(6.0));
    assert_eq!(p.derivative(3, 2.0), Some(0.0));
    assert_eq!(ScalarFn::Sin.derivative(1, 0.0), Some(1.0));
    assert!(ScalarFn::parse("cosh").is_err());
}

#[test]
fn picard_sweeps_are_bounded_by_level_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for level in 1..=5 {
        for _ in 0..4 {
            let f = ScalarFn::Poly((0..3).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let field = VectorField { components: vec![f.clone(), ScalarFn::Sin] };
            let (_, sweeps) = local_expansion(&field, rng.gen_range(-1.0..1.0), level).unwrap();
            assert!(sweeps <= level + 1, "level {} took {} sweeps", level, sweeps);
        }
    }
}

fn linear_path(knots: usize) -> PiecewiseLinearPath {
    PiecewiseLinearPath::new((0..knots).map(|k| (ratio(k as i64, knots as i64 - 1), vec![ratio(k as i64, knots as i64 - 1)])).collect())
        .unwrap()
}

fn solve(path: &PiecewiseLinearPath, f: ScalarFn, y0: f64, level: usize, step: &str) -> f64 {
    let lift = BranchedLift::new(path.clone(), level).unwrap();
    let opts = PicardOptions { y0, gamma: 0.3, level, step: parse_rational(step).unwrap() };
    picard_solve(&lift, path.start(), path.end(), &VectorField::uniform(f, path.dim()), &opts)
        .unwrap()
        .final_value()
}

#[test]
fn constant_field_is_exact() {
    let y = solve(&linear_path(2), ScalarFn::Const(1.0), 0.25, 3, "0.1");
    assert!((y - 1.25).abs() < 1e-14);
}

#[test]
fn exponential_benchmark_and_convergence_order() {
    let p = linear_path(2);
    let e = std::f64::consts::E;
    let err1 = (solve(&p, ScalarFn::Linear(1.0), 1.0, 4, "0.01") - e).abs() / e;
    let err2 = (solve(&p, ScalarFn::Linear(1.0), 1.0, 4, "0.005") - e).abs() / e;
    assert!(err1 < 1e-6, "{}", err1);
    assert!(err1 / err2 >= 8.0, "ratio {}", err1 / err2);
}

#[test]
fn interpolated_driver_benchmark() {
    let knots: Vec<(Scalar, Vec<Scalar>)> =
        (0..100).map(|k| (ratio(k, 99), vec![ratio(k * k, 99 * 99)])).collect();
    let p = PiecewiseLinearPath::new(knots).unwrap();
    let y = solve(&p, ScalarFn::Linear(1.0), 1.0, 4, "0.01");
    assert!((y - 1f64.exp()).abs() < 1e-5);
}

#[test]
fn geometric_driver_routed_through_phi() {
    let p = zigzag();
    let field = VectorField { components: vec![ScalarFn::Sin, ScalarFn::parse("poly:0.5,0,0.2").unwrap()] };
    let opts = PicardOptions { y0: 0.3, gamma: 0.3, level: 4, step: ratio(1, 20) };
    let direct = picard_solve(&BranchedLift::new(p.clone(), 4).unwrap(), p.start(), p.end(), &field, &opts).unwrap();
    let routed =
        picard_solve(&geo_to_branched(Signature::new(p.clone(), 4).unwrap()), p.start(), p.end(), &field, &opts).unwrap();
    for (a, b) in direct.samples.iter().zip(&routed.samples) {
        assert_eq!(a.0, b.0);
        assert!((a.1 - b.1).abs() < 1e-12);
    }
    assert!(matches!(
        picard_solve(&BranchedLift::new(p.clone(), 4).unwrap(), p.start(), p.end(), &field, &PicardOptions { level: 2, ..opts }),
        Err(RdeError::LevelTooLow { .. })
    ));
}
