use super::*;
use crate::fpalg::{linalg, parse_element, Element, GradedRing, PresentedAlgebra, Prime};

fn alg(p: u32, gens: &[(&str, u32)], rels: &[&str]) -> PresentedAlgebra {
    let ring = GradedRing::new(Prime::new(p).unwrap(), gens.to_vec()).unwrap();
    let rels = rels.iter().map(|r| parse_element(&ring, r).unwrap()).collect();
    PresentedAlgebra::new(ring, rels).unwrap()
}

/// Local cohomology top degrees of `F_2[x, y] / I` for a monomial ideal `I`,
/// read off the Čech complex `M → M_x ⊕ M_y → M_xy` one bidegree at a time.
fn cech_profile(gens: &[(u32, u32)], weights: (i64, i64), window: i64) -> Vec<Degree> {
    let p = Prime::new(2).unwrap();
    let in_ideal = |a: i64, b: i64| gens.iter().any(|&(i, j)| a >= i as i64 && b >= j as i64);
    // Laurent monomial x^a y^b survives in M_x iff b ≥ 0 and no generator has y-exponent ≤ b.
    let in_mx = |b: i64| b >= 0 && !gens.iter().any(|&(_, j)| j as i64 <= b);
    let in_my = |a: i64| a >= 0 && !gens.iter().any(|&(i, _)| i as i64 <= a);
    let in_mxy = gens.is_empty();
    let mut top = [Degree::MinusInfinity; 3];
    for a in -window..=window {
        for b in -window..=window {
            let c0 = (a >= 0 && b >= 0 && !in_ideal(a, b)) as usize;
            let c1 = [in_mx(b), in_my(a)];
            let c2 = in_mxy as usize;
            let idx1: Vec<usize> = (0..2).filter(|&k| c1[k]).collect();
            // d0: m ↦ (m, m); d1: (u, v) ↦ v - u.
            let d0: Vec<Vec<u32>> = (0..c0).map(|_| idx1.iter().map(|_| 1).collect()).collect();
            let d1: Vec<Vec<u32>> = idx1.iter().map(|_| (0..c2).map(|_| 1).collect()).collect();
            let r0 = if c0 == 0 || idx1.is_empty() { 0 } else { linalg::rank(p, &d0) };
            let r1 = if idx1.is_empty() || c2 == 0 { 0 } else { linalg::rank(p, &d1) };
            let h = [c0 - r0, idx1.len() - r0 - r1, c2 - r1];
            let deg = a * weights.0 + b * weights.1;
            for i in 0..3 {
                if h[i] > 0 {
                    top[i] = top[i].max(Degree::Finite(deg));
                }
            }
        }
    }
    top.to_vec()
}

fn monomial_module(gens: &[(u32, u32)], weights: (u32, u32)) -> GradedModule {
    let s = GradedRing::polynomial(Prime::new(2).unwrap(), vec![("x", weights.0), ("y", weights.1)]);
    let ideal: Vec<Element> = gens
        .iter()
        .map(|&(i, j)| s.monomial(crate::fpalg::Monomial(vec![i, j]), 1))
        .collect();
    GradedModule::cyclic(s, ideal).unwrap()
}

#[test]
fn local_duality_agrees_with_cech_complex() {
    let fixtures: Vec<Vec<(u32, u32)>> = vec![
        vec![],
        vec![(2, 0)],
        vec![(1, 1)],
        vec![(2, 0), (1, 1)],
        vec![(2, 0), (0, 3)],
        vec![(3, 0), (1, 2)],
    ];
    for weights in [(1u32, 1u32), (1, 2), (2, 3)] {
        for gens in &fixtures {
            let m = monomial_module(gens, weights);
            let inv = analyze_module(&m, None).unwrap();
            let oracle = cech_profile(gens, (weights.0 as i64, weights.1 as i64), 12);
            assert_eq!(inv.local_cohomology.a, oracle, "ideal {gens:?} weights {weights:?}");
        }
    }
}

#[test]
fn polynomial_ring_in_two_variables_profile() {
    let m = monomial_module(&[], (1, 1));
    let inv = analyze_module(&m, None).unwrap();
    assert_eq!(inv.local_cohomology.a, vec![Degree::MinusInfinity, Degree::MinusInfinity, Degree::Finite(-2)]);
    assert_eq!(inv.regularity, Degree::Finite(0));
}

#[test]
fn single_generator_in_degree_four() {
    let a = alg(3, &[("x", 4)], &[]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.local_cohomology.a, vec![Degree::MinusInfinity, Degree::Finite(-4)]);
    assert_eq!(inv.regularity, Degree::Finite(-3));
}

#[test]
fn finite_length_module_top_degree() {
    let a = alg(2, &[("x", 1)], &["x^4"]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.local_cohomology.get(0), Degree::Finite(3));
    assert_eq!(inv.regularity, Degree::Finite(3));
    assert_eq!(inv.depth, 0);
}

#[test]
fn elementary_abelian_rings() {
    for n in 1..=3usize {
        let gens: Vec<(String, u32)> = (1..=n).map(|i| (format!("u{i}"), 1)).collect();
        let a = PresentedAlgebra::free(GradedRing::new(Prime::new(2).unwrap(), gens).unwrap());
        let inv = analyze_algebra(&a, None).unwrap();
        assert_eq!(inv.depth, n);
        assert_eq!(inv.regularity, Degree::Finite(0));
        assert_eq!(inv.local_cohomology.get(n), Degree::Finite(-(n as i64)));
    }
    // Odd primes: F_3[y_1, y_2] ⊗ Λ(x_1, x_2).
    let a = alg(3, &[("x1", 1), ("x2", 1), ("y1", 2), ("y2", 2)], &[]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.depth, 2);
    assert_eq!(inv.regularity, Degree::Finite(0));
}

#[test]
fn dihedral_ring_is_cohen_macaulay() {
    let a = alg(2, &[("x", 1), ("y", 1), ("w", 2)], &["x*y"]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.depth, 2);
    assert_eq!(inv.dimension, 2);
    assert!(inv.cohen_macaulay);
    assert_eq!(inv.regularity, Degree::Finite(0));
}

#[test]
fn quaternion_ring() {
    let a = alg(2, &[("x", 1), ("y", 1), ("e", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.depth, 1);
    assert!(inv.cohen_macaulay);
    assert_eq!(inv.local_cohomology.get(1), Degree::Finite(-1));
    assert_eq!(inv.regularity, Degree::Finite(0));
    let e = parse_element(a.ring(), "e").unwrap();
    assert!(is_regular_sequence(&a, &[e]).unwrap());
}

#[test]
fn square_zero_extension_has_depth_zero() {
    let a = alg(2, &[("x", 1), ("z", 1)], &["x*z", "z^2"]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.depth, 0);
    assert_eq!(inv.dimension, 1);
    assert!(!inv.cohen_macaulay);
}

#[test]
fn exterior_factor_at_odd_prime() {
    let a = alg(3, &[("x", 1), ("y", 2), ("e", 1)], &[]);
    let inv = analyze_algebra(&a, None).unwrap();
    assert_eq!(inv.depth, 1);
    assert_eq!(inv.local_cohomology.get(1), Degree::Finite(0));
    assert_eq!(inv.regularity, Degree::Finite(1));
}

#[test]
fn regular_sequences() {
    let a = alg(2, &[("x", 1), ("y", 1)], &[]);
    let x = parse_element(a.ring(), "x").unwrap();
    let y = parse_element(a.ring(), "y").unwrap();
    assert!(is_regular_sequence(&a, &[x.clone(), y]).unwrap());
    assert!(!is_regular_sequence(&a, &[x.clone(), x]).unwrap());
}

#[test]
fn degree_order_puts_minus_infinity_first() {
    assert!(Degree::MinusInfinity < Degree::Finite(-100));
    assert_eq!(Degree::MinusInfinity.shift(5), Degree::MinusInfinity);
    assert_eq!(serde_json::to_string(&Degree::MinusInfinity).unwrap(), "\"-inf\"");
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Auslander–Buchsbaum, the depth/dimension bounds of the profile and
        /// the two regularity formulas, on random monomial quotients.
        #[test]
        fn homological_consistency(gens in proptest::collection::vec((0u32..4, 0u32..4, 0u32..3), 0..4)) {
            let s = GradedRing::polynomial(Prime::new(2).unwrap(), vec![("x", 1), ("y", 1), ("z", 1)]);
            let ideal: Vec<Element> = gens.iter()
                .filter(|&&(a, b, c)| a + b + c > 0)
                .map(|&(a, b, c)| s.monomial(crate::fpalg::Monomial(vec![a, b, c]), 1))
                .collect();
            let m = GradedModule::cyclic(s, ideal).unwrap();
            let inv = analyze_module(&m, None).unwrap();
            prop_assert_eq!(inv.depth + inv.projective_dimension, 3);
            prop_assert_eq!(inv.local_cohomology.depth(), Some(inv.depth));
            prop_assert_eq!(inv.local_cohomology.dimension(), Some(inv.dimension));
            prop_assert_eq!(inv.betti_regularity.map(Degree::Finite), Some(inv.regularity));
        }
    }
}
