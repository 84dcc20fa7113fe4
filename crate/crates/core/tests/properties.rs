//! Property tests for the structural invariants, over randomized scalars,
//! elements, basis choices and instances.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::select;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multhopf::actions::{
    adjoint, extend_action_to_multipliers, fixed_points, grading, linear_map_fixed_points, translation, trivial,
    ActionSpec, Where,
};
use multhopf::algebra::{self, radical_dim, AlgebraHandle, ScalarAlgebra};
use multhopf::aqg::{cointegral_space, double_dual_report, AlgebraicQuantumGroup, Side};
use multhopf::duality::{
    bismash, dual_action, duality_isomorphism, fixed_point_theorem_check, w_conjugation, DualAction,
};
use multhopf::hopf::local_units::{find_local_units, Sided};
use multhopf::hopf::verify::verify_mha_axioms;
use multhopf::instances::{function_algebra, group_algebra, hopf_instance, GroupSpec};
use multhopf::linalg::{linear_solve, span_rank};
use multhopf::multiplier::Multiplier;
use multhopf::pairing::{
    diamond_matrix_iso, fixed_point_scalars, flip_relabel_isomorphism, rank_one_realization, rewrite_forward,
    rewrite_inverse, DualPair,
};
use multhopf::smash::{smash, verify_pi_relations, SmashOptions};
use multhopf::suite::{random_element, run_suite, sweedler_confluence, Selection, Suite, SuiteConfig};
use multhopf::{Cover, Domain, Element, Key, RegularMha, Scalar, Tensor};

const FINITE: [&str; 12] = [
    "K(Z2)", "K(Z3)", "K(S3)", "C[Z2]", "C[Z3]", "C[S3]",
    "dual(K(Z2))", "dual(K(Z3))", "dual(K(S3))", "dual(C[Z2])", "dual(C[Z3])", "dual(C[S3])",
];

fn registry() -> &'static Vec<(String, RegularMha)> {
    static REG: OnceLock<Vec<(String, RegularMha)>> = OnceLock::new();
    REG.get_or_init(|| {
        FINITE
            .iter()
            .chain(["K(Z)", "C[Z]", "cop(K(S3))", "cop(C[S3])"].iter())
            .map(|id| (id.to_string(), hopf_instance(id).unwrap()))
            .collect()
    })
}

fn inst(id: &str) -> RegularMha {
    registry().iter().find(|(i, _)| i == id).map(|(_, h)| h.clone()).unwrap_or_else(|| hopf_instance(id).unwrap())
}

fn keys_of(h: &RegularMha) -> Vec<Key> {
    h.finite_basis().unwrap_or_else(|| h.sample_basis(5))
}

fn scalars() -> AlgebraHandle {
    Arc::new(ScalarAlgebra::new())
}

fn group(name: &str) -> GroupSpec {
    GroupSpec::parse(name).unwrap()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=7, -12i64..=12, 1i64..=7)
        .prop_map(|(a, b, c, d)| Scalar::ratio(a, b) + Scalar::ratio(c, d) * Scalar::i())
}

fn element_in(domain: Domain, n: i64) -> impl Strategy<Value = Element> {
    prop::collection::vec((0..n, scalar()), 0..6)
        .prop_map(move |terms| Element::from_terms(&domain, terms.into_iter().map(|(k, c)| (Key::Int(k), c))))
}

/// A uniformly chosen basis key of `h` from an index.
fn pick(h: &RegularMha, i: usize) -> Key {
    let keys = keys_of(h);
    keys[i % keys.len()].clone()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &(-&a), Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn element_serialization_round_trips(e in element_in(Domain::new("V"), 8)) {
        let v = e.to_json();
        let back = Element::from_json(&Domain::new("V"), &v).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_json(), v);
    }

    #[test]
    fn linear_solve_reproduces_target(
        gens in prop::collection::vec(element_in(Domain::new("V"), 6), 1..5),
        coeffs in prop::collection::vec(scalar(), 5),
    ) {
        let mut target = Element::zero(&Domain::new("V"));
        for (g, c) in gens.iter().zip(&coeffs) {
            target.add_scaled(g, c);
        }
        let sol = linear_solve(&gens, &target).unwrap();
        let mut back = target.scale(&-Scalar::one());
        for (g, c) in gens.iter().zip(&sol) {
            back.add_scaled(g, c);
        }
        prop_assert!(back.is_zero());
    }

    #[test]
    fn counit_and_antipode_laws(id in select(registry().iter().map(|(i, _)| i.clone()).collect::<Vec<_>>()), i in 0usize..64, j in 0usize..64) {
        let h = inst(&id);
        let (a, b) = (pick(&h, i), pick(&h, j));
        let t1 = h.cover_basis(Cover::T1, &a, &b);
        prop_assert_eq!(t1.contract_leg(0, |k| h.counit_basis(k)).into_element(), h.mul_basis(&a, &b));
        let s1 = h.multiply_legs(&t1.map_leg(0, h.domain(), |k| h.antipode_basis(k)));
        prop_assert_eq!(s1, h.basis(&b).scale(&h.counit_basis(&a)));
        let t2 = h.cover_basis(Cover::T2, &a, &b);
        let s2 = h.multiply_legs(&t2.map_leg(1, h.domain(), |k| h.antipode_basis(k)));
        prop_assert_eq!(s2, h.basis(&a).scale(&h.counit_basis(&b)));
    }

    #[test]
    fn local_units_satisfy_side_equations(id in select(registry().iter().map(|(i, _)| i.clone()).collect::<Vec<_>>()), seed in any::<u64>()) {
        let h = inst(&id);
        let keys = keys_of(&h);
        let mut r = rng(seed);
        let items: Vec<Element> = (0..3).map(|_| random_element(&mut r, h.domain(), &keys, 3)).collect();
        for sided in [Sided::Left, Sided::Right, Sided::TwoSided] {
            let e = find_local_units(&h, &items, sided).unwrap();
            for a in &items {
                if sided != Sided::Right { prop_assert_eq!(&h.mul(&e, a), a); }
                if sided != Sided::Left { prop_assert_eq!(&h.mul(a, &e), a); }
            }
        }
    }

    #[test]
    fn discrete_local_units_are_idempotent(id in select(vec!["K(Z2)", "K(S3)", "K(Z)"]), seed in any::<u64>()) {
        let h = inst(id);
        let keys = keys_of(&h);
        let mut r = rng(seed);
        let items: Vec<Element> = (0..4).map(|_| random_element(&mut r, h.domain(), &keys, 3)).collect();
        let e = find_local_units(&h, &items, Sided::TwoSided).unwrap();
        prop_assert_eq!(h.mul(&e, &e), e);
    }

    #[test]
    fn coopposite_flip_gives_t3(base in select(vec!["K(S3)", "C[S3]"]), i in 0usize..6, j in 0usize..6) {
        let h = inst(base);
        let cop = inst(&format!("cop({})", base));
        let (a, b) = (pick(&h, i), pick(&h, j));
        let flipped = cop.cover_basis(Cover::T1, &a, &b).flip(0, 1).unwrap();
        let t3 = h.cover_basis(Cover::T3, &a, &b);
        let terms = |t: &Tensor| t.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>();
        prop_assert_eq!(terms(&flipped), terms(&t3));
    }

    #[test]
    fn sweedler_strategies_agree(id in select(vec!["K(Z2)", "C[Z2]", "C[S3]"]), seed in any::<u64>()) {
        let r = sweedler_confluence(&inst(id), 5, seed, 3).unwrap();
        prop_assert!(r.passed(), "{:?}", r.witness);
    }

    #[test]
    fn right_integral_from_antipode(id in select(FINITE.to_vec()), i in 0usize..36, j in 0usize..36) {
        let h = inst(id);
        let g = AlgebraicQuantumGroup::new(&h).unwrap();
        let (a, b) = (pick(&h, i), pick(&h, j));
        // (ι⊗ψ)(Δ(a)(b⊗1)) = ψ(a)b
        let lhs = h.cover_basis(Cover::T3, &a, &b).contract_leg(1, |k| g.psi.on_basis(k)).into_element();
        prop_assert_eq!(lhs, h.basis(&b).scale(&g.psi.on_basis(&a)));
    }

    #[test]
    fn for_groups_dimensions_agree(n in 1i64..9) {
        let g = GroupSpec::cyclic(n);
        prop_assert_eq!(function_algebra(g.clone()).dim(), Some(n as usize));
        prop_assert_eq!(group_algebra(g).dim(), Some(n as usize));
    }

    #[test]
    fn canonical_b_modules_are_unital(b in element_in(Domain::new("K(Z)"), 1).prop_flat_map(|_| prop::collection::vec((-5i64..=5, scalar()), 1..4))) {
        let p = DualPair::canonical_pair(GroupSpec::integers());
        let eb = Element::from_terms(p.b.domain(), b.into_iter().map(|(k, c)| (Key::Int(k), c)));
        prop_assume!(!eb.is_zero());
        let e = p.unit_a_for(&eb).unwrap();
        prop_assert_eq!(p.a_on_b(&e, &eb), eb);
    }

    #[test]
    fn module_algebra_product_rule(which in 0usize..4, seed in any::<u64>()) {
        let action = actions()[which].clone();
        let (ka, kr) = (keys_of(action.a()), action.r.finite_basis().unwrap_or_else(|| action.r.sample_basis(4)));
        let mut r = rng(seed);
        let a = random_element(&mut r, action.a().domain(), &ka, 2);
        let x = random_element(&mut r, action.r.domain(), &kr, 2);
        let y = random_element(&mut r, action.r.domain(), &kr, 2);
        prop_assert_eq!(action.act(&a, &action.rmul(&x, &y)), action.diagonal_product(&a, &x, &y).unwrap());
    }

    #[test]
    fn multiplier_extension_restricts(which in 0usize..3, seed in any::<u64>()) {
        let action = actions()[which].clone();
        let one = action.r.identity().unwrap();
        let mut r = rng(seed);
        let a = random_element(&mut r, action.a().domain(), &keys_of(action.a()), 2);
        let x = random_element(&mut r, action.r.domain(), &action.r.finite_basis().unwrap(), 2);
        let m = Multiplier::from_element(&action.r, &x);
        let ext = extend_action_to_multipliers(&action, &a, &m);
        prop_assert_eq!(ext.left(&one), action.act(&a, &x));
    }

    #[test]
    fn crossed_product_is_twisted_convolution(n in 2i64..6, seed in any::<u64>()) {
        // ξ = Σ x_q#λ_q, (ξη)(p) = Σ_q ξ(q)·α_q(η(q⁻¹p)) with α_q(δ_y) = δ_{q+y}
        let s = smash(&translation(GroupSpec::cyclic(n))).unwrap();
        let keys = s.finite_basis().unwrap();
        let mut r = rng(seed);
        let xi = random_element(&mut r, s.domain(), &keys, 4);
        let eta = random_element(&mut r, s.domain(), &keys, 4);
        let mut want = Element::zero(s.domain());
        for (u, c) in xi.terms() {
            for (v, d) in eta.terms() {
                let (x, q) = (u.at(0).as_int().unwrap(), u.at(1).as_int().unwrap());
                let (y, t) = (v.at(0).as_int().unwrap(), v.at(1).as_int().unwrap());
                if x == (q + y) % n {
                    want.add_term(Key::pair(&Key::Int(x), &Key::Int((q + t) % n)), &(c * d));
                }
            }
        }
        prop_assert_eq!(s.mul(&xi, &eta), want);
    }

    #[test]
    fn countable_crossed_product_is_associative(seed in any::<u64>()) {
        let s = smash(&translation(GroupSpec::integers())).unwrap();
        let keys = s.sample(4);
        let mut r = rng(seed);
        let (x, y, z) = (
            random_element(&mut r, s.domain(), &keys, 2),
            random_element(&mut r, s.domain(), &keys, 2),
            random_element(&mut r, s.domain(), &keys, 2),
        );
        prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
    }

    #[test]
    fn heisenberg_rewrites_are_inverse(g in select(vec!["Z2", "Z3", "S3"]), i in 0usize..6, j in 0usize..6) {
        let p = DualPair::canonical_pair(group(g));
        let (a, b) = (pick(&p.a, i), pick(&p.b, j));
        let fw = rewrite_forward(&p, &a, &b).unwrap();
        let mut back = fw.zero_like();
        for (ks, c) in fw.terms() {
            back.add_scaled(&rewrite_inverse(&p, &ks[0], &ks[1]).unwrap(), c);
        }
        prop_assert_eq!(back, Tensor::basis(&[p.a.domain().clone(), p.b.domain().clone()], vec![a, b]));
    }

    #[test]
    fn reports_are_byte_stable(seed in any::<u64>()) {
        let sel = Selection { groups: vec!["Z2".into()], ..Selection::default() };
        let cfg = SuiteConfig { seed, local_unit_cases: 3, sweedler_cases: 3, ..SuiteConfig::default() };
        let a = run_suite(Suite::Axioms, &sel, &cfg).unwrap();
        let b = run_suite(Suite::Axioms, &sel, &cfg).unwrap();
        prop_assert_eq!(a.to_json_lines(), b.to_json_lines());
    }
}

fn actions() -> Vec<ActionSpec> {
    let s3 = group_algebra(group("S3"));
    vec![adjoint(&s3), translation(group("Z3")), grading(group("Z3")), translation(GroupSpec::integers())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn cointegrals_are_unique(id in select(FINITE.to_vec())) {
        let h = inst(id);
        prop_assert!(cointegral_space(&h, Side::Left).unwrap().len() <= 1);
        prop_assert!(cointegral_space(&h, Side::Right).unwrap().len() <= 1);
    }

    #[test]
    fn finite_dual_is_involutive(id in select(FINITE[..6].to_vec())) {
        let r = double_dual_report(&inst(id)).unwrap();
        prop_assert!(r.all_passed(), "{}", r.to_json_lines());
    }

    #[test]
    fn group_instances_pass_axioms(g in select(vec!["Z2", "Z3", "S3", "Z"])) {
        for h in [function_algebra(group(g)), group_algebra(group(g))] {
            let r = verify_mha_axioms(&h, &keys_of(&h));
            prop_assert!(r.all_passed(), "{}", r.to_json_lines());
        }
    }

    #[test]
    fn fixed_points_form_a_subalgebra(which in 0usize..3) {
        let action = actions()[which].clone();
        let fp = fixed_points(&action, Where::InR, false).unwrap();
        let elems = fp.elements.clone().unwrap();
        for x in &elems {
            for y in &elems {
                let xy = algebra::mul(action.r.as_ref(), x, y);
                prop_assert!(xy.is_zero() || linear_solve(&elems, &xy).is_ok());
            }
        }
    }

    #[test]
    fn linear_map_fixed_points_intertwine(which in 0usize..3) {
        let (_, r) = linear_map_fixed_points(&actions()[which]).unwrap();
        prop_assert!(r.all_passed(), "{}", r.to_json_lines());
    }

    #[test]
    fn smash_radicals_vanish(which in 0usize..3) {
        let s = smash(&actions()[which]).unwrap();
        prop_assert_eq!(radical_dim(s.algebra().as_ref(), true).unwrap(), 0);
        prop_assert_eq!(radical_dim(s.algebra().as_ref(), false).unwrap(), 0);
        let r = verify_pi_relations(&s, 3);
        prop_assert!(r.get("pi-span-rank").unwrap().passed());
    }

    #[test]
    fn pair_fixed_points_are_scalars(g in select(vec!["Z2", "Z3", "S3"])) {
        let c = fixed_point_scalars(&DualPair::canonical_pair(group(g))).unwrap();
        prop_assert_eq!(c.detail.as_ref().unwrap()["dim"].as_u64(), Some(1));
    }

    #[test]
    fn diamond_is_a_matrix_algebra(id in select(vec!["C[Z2]", "K(Z3)", "C[S3]"])) {
        let iso = diamond_matrix_iso(&DualPair::from_finite(&inst(id)).unwrap()).unwrap();
        prop_assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
    }

    #[test]
    fn flip_relabel_gives_isomorphism(g in select(vec!["Z2", "Z3", "S3"])) {
        let iso = flip_relabel_isomorphism(group(g)).unwrap();
        prop_assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
    }

    #[test]
    fn pi_r_is_fixed_and_w_operators_are_faithful(case in 0usize..3) {
        let d = duality_case(case);
        let r = fixed_point_theorem_check(&d).unwrap();
        prop_assert!(r.get("pi-r-fixed").unwrap().passed(), "{}", r.to_json_lines());
        let bis = bismash(&d, SmashOptions::default()).unwrap();
        let w = w_conjugation(&d, Some(&bis));
        prop_assert!(w.get("w-operators-faithful").unwrap().passed(), "{}", w.to_json_lines());
    }

    #[test]
    fn bismash_dimension(case in 0usize..3) {
        let d = duality_case(case);
        let iso = duality_isomorphism(&d).unwrap();
        let n = d.pair.a.dim().unwrap();
        let dim_r = d.smash.r().finite_basis().unwrap().len();
        prop_assert_eq!(iso.bismash.dim(), Some(dim_r * n * n));
    }

    #[test]
    fn scalar_duality_is_rank_one_realization(g in select(vec!["Z2", "Z3", "S3"])) {
        let h = group_algebra(group(g));
        let p = DualPair::from_finite(&h).unwrap();
        let d = dual_action(&p, &smash(&trivial(&h, &scalars())).unwrap()).unwrap();
        let iso = duality_isomorphism(&d).unwrap();
        let gamma = rank_one_realization(&p).unwrap();
        let one = Key::Int(0);
        for (k, img) in iso.bismash.finite_basis().unwrap().iter().zip(&iso.theta.forward) {
            let u = Element::basis(gamma.iso.src.domain(), Key::pair(k.at(0).at(1), k.at(1)));
            let want = Element::from_terms(
                iso.theta.dst.domain(),
                gamma.iso.apply(&u).into_terms().map(|(kk, cc)| (Key::pair(&one, &kk), cc)),
            );
            prop_assert_eq!(img, &want);
        }
    }
}

fn duality_case(i: usize) -> DualAction {
    let z2 = group_algebra(group("Z2"));
    let z3 = group_algebra(group("Z3"));
    let action = match i {
        0 => trivial(&z2, &scalars()),
        1 => translation(group("Z2")),
        _ => adjoint(&z3),
    };
    let p = DualPair::from_finite(action.a()).unwrap();
    dual_action(&p, &smash(&action).unwrap()).unwrap()
}

#[test]
fn span_rank_of_basis_is_dimension() {
    let h = inst("C[S3]");
    let basis: Vec<Element> = keys_of(&h).iter().map(|k| h.basis(k)).collect();
    assert_eq!(span_rank(&basis), 6);
}
