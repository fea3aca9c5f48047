use super::*;
use crate::fpalg::parse_element;
use proptest::prelude::*;

fn alg(p: u32, gens: &[(&str, u32)], rels: &[&str]) -> PresentedAlgebra {
    let ring = GradedRing::new(Prime::new(p).unwrap(), gens.to_vec()).unwrap();
    let rels = rels.iter().map(|r| parse_element(&ring, r).unwrap()).collect();
    PresentedAlgebra::new(ring, rels).unwrap()
}

fn with_action(a: PresentedAlgebra, decl: &[(&str, Op, &str)]) -> UnstableAlgebra {
    let mut action = SteenrodAction::new();
    for (g, op, v) in decl {
        let i = a.ring().gen_index(g).unwrap();
        action.declare(i, *op, parse_element(a.ring(), v).unwrap());
    }
    UnstableAlgebra::new(a, action).unwrap()
}

fn el(u: &UnstableAlgebra, s: &str) -> Element {
    parse_element(u.ring(), s).unwrap()
}

fn quaternion() -> UnstableAlgebra {
    let a = alg(2, &[("x", 1), ("y", 1), ("e", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"]);
    with_action(a, &[("e", Op::Sq(1), "0"), ("e", Op::Sq(2), "0"), ("e", Op::Sq(3), "0")])
}

#[test]
fn square_of_a_degree_one_class() {
    let h = elementary_abelian(Prime::new(2).unwrap(), 2);
    assert_eq!(h.apply(Op::Sq(1), &el(&h, "u1")).unwrap(), el(&h, "u1^2"));
    assert_eq!(h.apply(Op::Sq(1), &el(&h, "u1*u2")).unwrap(), el(&h, "u1^2*u2 + u1*u2^2"));
    assert_eq!(h.apply(Op::Sq(2), &el(&h, "u1*u2")).unwrap(), el(&h, "u1^2*u2^2"));
}

#[test]
fn bockstein_of_exterior_generators() {
    let h = elementary_abelian(Prime::new(3).unwrap(), 2);
    assert_eq!(h.apply(Op::Beta, &el(&h, "x1")).unwrap(), el(&h, "y1"));
    assert_eq!(h.apply(Op::Beta, &el(&h, "x1*x2")).unwrap(), el(&h, "y1*x2 - x1*y2"));
    assert!(h.apply(Op::Beta, &el(&h, "y1")).unwrap().is_zero());
    assert_eq!(h.apply(Op::P(1), &el(&h, "y1")).unwrap(), el(&h, "y1^3"));
}

#[test]
fn elementary_abelian_rings_satisfy_the_axioms() {
    for p in [2, 3, 5] {
        for r in 1..=2 {
            let h = elementary_abelian(Prime::new(p).unwrap(), r);
            let report = h.verify(Some(8));
            assert!(report.passed(), "p = {p}, rank {r}: {:?}", report.violations);
        }
    }
}

#[test]
fn declared_operation_above_degree_is_flagged() {
    let a = alg(2, &[("x", 1), ("w", 2)], &[]);
    let u = with_action(a, &[("w", Op::Sq(3), "w*x")]);
    let report = u.verify(None);
    assert!(!report.passed());
    assert!(report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::Instability && v.witness.starts_with("Sq^3(w)")));
}

#[test]
fn wrong_degree_is_reported() {
    let a = alg(2, &[("x", 1), ("w", 2)], &[]);
    let u = with_action(a, &[("w", Op::Sq(1), "w")]);
    assert!(u.verify(None).violations.iter().any(|v| v.kind == ViolationKind::Degree));
    let mut action = SteenrodAction::new();
    let a = alg(2, &[("x", 1), ("w", 2)], &[]);
    action.declare(1, Op::Sq(1), parse_element(a.ring(), "x + w").unwrap());
    assert!(UnstableAlgebra::new(a, action).is_err());
}

#[test]
fn relation_not_preserved_is_flagged() {
    // In F_2[x]/(x^2) the default Sq^1 x = x^2 is fine, but F_2[x, w]/(w^2 + x^4)
    // with Sq^1 w = x*w sends the relation to x*w^2 + 0, which is not in the ideal.
    let a = alg(2, &[("x", 1), ("w", 2)], &["w^2 + x^4"]);
    let u = with_action(a, &[("w", Op::Sq(1), "x*w")]);
    let report = u.verify(None);
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Relation));
}

#[test]
fn catalog_style_rings_pass() {
    assert!(quaternion().verify(None).passed());
    let d8 = with_action(alg(2, &[("x", 1), ("y", 1), ("w", 2)], &["x*y"]), &[("w", Op::Sq(1), "x*w + y*w")]);
    assert!(d8.verify(None).passed(), "{:?}", d8.verify(None).violations);
    let z4 = with_action(alg(2, &[("e", 1), ("w", 2)], &["e^2"]), &[("e", Op::Sq(1), "0"), ("w", Op::Sq(1), "0")]);
    assert!(z4.verify(None).passed());
    let z3 = with_action(alg(3, &[("x", 1), ("y", 2)], &[]), &[("x", Op::Beta, "y")]);
    assert!(z3.verify(None).passed());
}

#[test]
fn a_linearity() {
    let q = quaternion();
    let ident: Vec<Element> = (0..3).map(|i| q.ring().gen(i)).collect();
    assert!(check_a_linearity(&q, &q, &ident).unwrap());

    let z2 = elementary_abelian(Prime::new(2).unwrap(), 1);
    let to_center = vec![Element::zero(), Element::zero(), el(&z2, "u1^4")];
    assert!(check_a_linearity(&q, &z2, &to_center).unwrap());

    let bso2 = UnstableAlgebra::standard(alg(2, &[("w", 2)], &[]));
    let v4 = elementary_abelian(Prime::new(2).unwrap(), 2);
    assert!(check_a_linearity(&bso2, &v4, &[el(&v4, "u1^2")]).unwrap());
    assert!(!check_a_linearity(&bso2, &v4, &[el(&v4, "u1*u2")]).unwrap());
}

#[test]
fn frobenius_on_even_generators() {
    let h = elementary_abelian(Prime::new(5).unwrap(), 2);
    for g in ["y1", "y2"] {
        let y = el(&h, g);
        assert_eq!(h.apply(Op::P(1), &y).unwrap(), h.algebra().pow(&y, 5));
    }
}

fn random_element(h: &UnstableAlgebra, degree: u32, coeffs: &[u32]) -> Element {
    let ring = h.ring();
    let mut out = Element::zero();
    for (m, &c) in ring.monomials_of_degree(degree).into_iter().zip(coeffs.iter().cycle()) {
        out = ring.add(&out, &ring.monomial(m, c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cartan_formula(da in 1u32..5, db in 1u32..5, k in 0u32..10,
                      ca in proptest::collection::vec(0u32..2, 1..6),
                      cb in proptest::collection::vec(0u32..2, 1..6)) {
        let h = elementary_abelian(Prime::new(2).unwrap(), 3);
        let a = random_element(&h, da, &ca);
        let b = random_element(&h, db, &cb);
        let lhs = h.apply(Op::Sq(k), &h.algebra().mul(&a, &b)).unwrap();
        let mut rhs = Element::zero();
        for i in 0..=k {
            let t = h.algebra().mul(&h.apply(Op::Sq(i), &a).unwrap(), &h.apply(Op::Sq(k - i), &b).unwrap());
            rhs = h.ring().add(&rhs, &t);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bockstein_is_a_derivation(da in 1u32..4, db in 1u32..4,
                                 ca in proptest::collection::vec(0u32..3, 1..6),
                                 cb in proptest::collection::vec(0u32..3, 1..6)) {
        let h = elementary_abelian(Prime::new(3).unwrap(), 2);
        let a = random_element(&h, da, &ca);
        let b = random_element(&h, db, &cb);
        let lhs = h.apply(Op::Beta, &h.algebra().mul(&a, &b)).unwrap();
        let first = h.algebra().mul(&h.apply(Op::Beta, &a).unwrap(), &b);
        let second = h.algebra().mul(&a, &h.apply(Op::Beta, &b).unwrap());
        let second = if da % 2 == 1 { h.ring().neg(&second) } else { second };
        prop_assert_eq!(lhs, h.ring().add(&first, &second));
    }
}

#[test]
fn total_square_is_multiplicative_on_quaternion_generators() {
    let q = quaternion();
    let total = |e: &Element, top: u32| -> Vec<Element> {
        (0..=top).map(|i| q.apply(Op::Sq(i), e).unwrap()).collect()
    };
    let gens: Vec<Element> = (0..3).map(|i| q.ring().gen(i)).collect();
    for a in &gens {
        for b in &gens {
            let ab = q.algebra().mul(a, b);
            let lhs = total(&ab, 8);
            let (ta, tb) = (total(a, 8), total(b, 8));
            for k in 0..=8usize {
                let mut rhs = Element::zero();
                for i in 0..=k {
                    rhs = q.ring().add(&rhs, &q.algebra().mul(&ta[i], &tb[k - i]));
                }
                assert_eq!(lhs[k], rhs);
            }
        }
    }
}
