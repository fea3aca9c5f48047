use super::*;
use crate::fpalg::parse_element;
use crate::homology;
use proptest::prelude::*;

fn swap() -> LinearRep {
    LinearRep::new(2, vec![vec![vec![0, 1], vec![1, 0]]]).unwrap()
}

fn degrees_of(a: &InvariantRingApprox) -> Vec<u32> {
    a.generator_degrees.clone()
}

#[test]
fn swap_invariants_are_symmetric_functions() {
    let rep = swap();
    let a = invariants_up_to(&rep, 8);
    let ring = rep.ring();
    assert_eq!(degrees_of(&a), vec![1, 2]);
    assert!(a.bases[1].contains(&parse_element(&ring, "x1 + x2").unwrap()));
    assert!(a.bases[2].contains(&parse_element(&ring, "x1*x2").unwrap()));
    // F_2[σ₁, σ₂] has ⌊d/2⌋ + 1 monomials of degree d.
    let expected: Vec<usize> = (0..=8).map(|d| d / 2 + 1).collect();
    assert_eq!(a.hilbert_function(), expected);
    assert!(a.complete);
}

#[test]
fn trivial_representation_fixes_everything() {
    let rep = LinearRep::new(3, vec![vec![vec![1, 0], vec![0, 1]]]).unwrap();
    let a = invariants_up_to(&rep, 4);
    assert_eq!(degrees_of(&a), vec![1, 1]);
    assert_eq!(a.hilbert_function(), vec![1, 2, 3, 4, 5]);
}

#[test]
fn general_linear_invariants_are_dickson() {
    let rep = LinearRep::general_linear(2, 2).unwrap();
    assert_eq!(rep.order(), 6);
    let a = invariants_up_to(&rep, 6);
    assert_eq!(degrees_of(&a), vec![2, 3]);
    let dickson = dickson_generators(2, 2).unwrap();
    for (g, d) in a.generators.iter().zip(&dickson) {
        assert_eq!(g, d);
    }
}

#[test]
fn dickson_degrees() {
    let deg = |n: usize, p: u32| -> Vec<u32> {
        let ring = GradedRing::polynomial(Prime::new(p).unwrap(), (1..=n).map(|i| (format!("x{i}"), 1)).collect());
        dickson_generators(n, p).unwrap().iter().map(|c| ring.degree(c).unwrap()).collect()
    };
    let one = dickson_generators(1, 2).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0], GradedRing::polynomial(Prime::new(2).unwrap(), vec![("x1", 1)]).gen(0));
    assert_eq!(deg(2, 2), vec![2, 3]);
    assert_eq!(deg(2, 3), vec![6, 8]);
}

#[test]
fn pointwise_stabilizers() {
    let rep = swap();
    let fixed = fixed_space(&rep);
    assert_eq!(pointwise_stabilizer(&rep, &fixed).len(), rep.order());
    assert_eq!(pointwise_stabilizer(&rep, &[vec![1, 0], vec![0, 1]]).len(), 1);
    assert_eq!(pointwise_stabilizer(&rep, &[vec![1, 0]]).len(), 1);
}

#[test]
fn centers_of_invariant_rings() {
    let swap_inv = invariant_algebra(&swap(), 2).unwrap();
    let (fixed, pair) = rector_center_invariants(&swap_inv).unwrap();
    assert_eq!(fixed, vec![vec![1, 1]]);
    assert_eq!(pair.rank, 1);
    assert!(pair.finite);

    // Regular representation of Z/3: one Jordan block.
    let jordan = LinearRep::new(3, vec![vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]]).unwrap();
    assert_eq!(fixed_space(&jordan).len(), 1);

    let gl = invariant_algebra(&LinearRep::general_linear(2, 2).unwrap(), 3).unwrap();
    let (fixed, pair) = rector_center_invariants(&gl).unwrap();
    assert!(fixed.is_empty());
    assert_eq!(pair.rank, 0);
    assert!(fixed_space(&LinearRep::general_linear(3, 2).unwrap()).is_empty());
}

#[test]
fn non_faithful_representations_are_rejected() {
    let rep = LinearRep::from_images(2, vec![vec![vec![1, 0], vec![0, 1]]], 2).unwrap();
    assert!(!rep.is_faithful());
    let inv = invariant_algebra(&rep, 1).unwrap();
    assert_eq!(rector_center_invariants(&inv), Err(Error::NotFaithful));
}

#[test]
fn t_components() {
    let rep = swap();
    let whole = invariants_up_to(&rep, 5).hilbert_function();
    assert_eq!(t_component_invariants(&rep, &fixed_space(&rep), 5).unwrap().hilbert_function(), whole);
    let all = t_component_invariants(&rep, &[vec![1, 0], vec![0, 1]], 5).unwrap();
    assert_eq!(all.hilbert_function(), vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn invariant_algebra_is_unstable_and_presented() {
    let inv = invariant_algebra(&swap(), 2).unwrap();
    assert!(inv.algebra.algebra().relations().is_zero());
    assert!(inv.algebra.verify(Some(8)).passed());
    assert!(!inv.doubled);
    // Sq¹ σ₂ = σ₁σ₂ in F_2[x, y].
    let ring = inv.algebra.ring();
    assert_eq!(
        inv.algebra.apply(crate::steenrod::Op::Sq(1), &ring.gen(1)).unwrap(),
        parse_element(ring, "t1*t2").unwrap()
    );

    // At odd p the grading is doubled and β vanishes on invariants.
    let z3 = LinearRep::new(3, vec![vec![vec![1, 0], vec![1, 1]]]).unwrap();
    let inv3 = invariant_algebra(&z3, generation_degree_bound(&z3)).unwrap();
    assert!(inv3.doubled);
    assert_eq!(inv3.algebra.ring().degrees(), vec![2, 6]);
    assert!(inv3.algebra.verify(Some(12)).passed());
}

#[test]
fn subspace_enumeration_counts() {
    let p2 = Prime::new(2).unwrap();
    assert_eq!(subspaces(p2, 2).len(), 5);
    assert_eq!(subspaces(p2, 3).len(), 16);
    assert_eq!(subspaces(Prime::new(3).unwrap(), 2).len(), 6);
}

#[test]
fn duflot_bound_for_a_small_unipotent_group() {
    let rep = LinearRep::unitriangular(2, 3, &[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
    let inv = invariant_algebra(&rep, generation_degree_bound(&rep)).unwrap();
    let depth = homology::depth(inv.algebra.algebra()).unwrap();
    assert!(depth >= fixed_space(&rep).len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unipotent_groups_fix_a_vector(entries in proptest::collection::vec(0u32..2, 6), n in 2usize..4) {
        let per = n * (n - 1) / 2;
        let gens = vec![entries[..per].to_vec(), entries[3..3 + per].to_vec()];
        let rep = LinearRep::unitriangular(2, n, &gens).unwrap();
        let fixed = fixed_space(&rep);
        prop_assert!(!fixed.is_empty());
        if rep.order() > 1 {
            prop_assert!(fixed.len() < n);
        }
        prop_assert_eq!(pointwise_stabilizer(&rep, &fixed).len(), rep.order());
        let a = invariants_up_to(&rep, 4);
        prop_assert_eq!(a.bases[1].len(), fixed_space_dual_dim(&rep));
    }
}

/// Invariant linear forms: the fixed space of the transpose action.
fn fixed_space_dual_dim(rep: &LinearRep) -> usize {
    let transposed: Vec<Matrix> =
        rep.generators().iter().map(|g| (0..rep.dim()).map(|i| (0..rep.dim()).map(|j| g[j][i]).collect()).collect()).collect();
    fixed_space(&LinearRep::new(rep.prime().get(), transposed).unwrap()).len()
}
