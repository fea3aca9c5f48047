//! Small presentations shared by the unit tests.

use crate::fpalg::{parse_element, GradedRing, PresentedAlgebra, Prime};
use crate::rector::{target, RectorPair};
use crate::steenrod::{Op, SteenrodAction, UnstableAlgebra};

pub fn algebra(p: u32, gens: &[(&str, u32)], rels: &[&str], ops: &[(usize, Op, &str)]) -> UnstableAlgebra {
    let ring = GradedRing::new(Prime::new(p).unwrap(), gens.to_vec()).unwrap();
    let rels = rels.iter().map(|r| parse_element(&ring, r).unwrap()).collect();
    let mut action = SteenrodAction::new();
    for &(g, op, v) in ops {
        action.declare(g, op, parse_element(&ring, v).unwrap());
    }
    UnstableAlgebra::new(PresentedAlgebra::new(ring, rels).unwrap(), action).unwrap()
}

pub fn pair(r: &UnstableAlgebra, rank: usize, images: &[&str]) -> RectorPair {
    let h = target(r.ring().prime(), rank);
    let images = images.iter().map(|s| parse_element(h.ring(), s).unwrap()).collect();
    RectorPair::new(r, rank, images).unwrap()
}

/// Images in an arbitrary target.
pub fn images(t: &UnstableAlgebra, images: &[&str]) -> Vec<crate::fpalg::Element> {
    images.iter().map(|s| parse_element(t.ring(), s).unwrap()).collect()
}

/// `H_{Σ_3}` at 2.
pub fn sigma3() -> UnstableAlgebra {
    algebra(2, &[("x", 1)], &[], &[])
}

pub fn quaternion() -> UnstableAlgebra {
    algebra(2, &[("x", 1), ("y", 1), ("e", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"], &[])
}

pub fn dihedral() -> UnstableAlgebra {
    algebra(2, &[("x", 1), ("y", 1), ("w", 2)], &["x*y"], &[(2, Op::Sq(1), "x*w + y*w")])
}

pub fn cyclic4() -> UnstableAlgebra {
    algebra(2, &[("e", 1), ("w", 2)], &["e^2"], &[])
}

/// `F_2[x] ⊕ ΣF_2`: square-zero extension with trivial center.
pub fn square_zero() -> UnstableAlgebra {
    algebra(2, &[("x", 1), ("z", 1)], &["x*z", "z^2"], &[])
}

/// `F_2[x_4] ⊗ F_2[x_5]/(x_5^2)` with `Sq^1 x_4 = x_5`.
pub fn three_connected_s3() -> UnstableAlgebra {
    algebra(2, &[("a", 4), ("b", 5)], &["b^2"], &[(0, Op::Sq(1), "b")])
}

/// `F_3[y] ⊗ Λ(x, e)` with `βx = y`.
pub fn z3_times_z3hat() -> UnstableAlgebra {
    algebra(3, &[("y", 2), ("x", 1), ("e", 1)], &[], &[(1, Op::Beta, "y")])
}

/// Model of `H_{SL_2(Z_3)}` at 3 as the subring of `F_3[y] ⊗ Λ(x, e)` generated by `y², xy, ey, xe`.
pub fn sl2() -> UnstableAlgebra {
    algebra(
        3,
        &[("Y", 4), ("C", 2), ("A", 3), ("B", 3)],
        &["C^2", "A*C", "B*C", "A*B - C*Y"],
        &[
            (2, Op::Beta, "Y"),
            (1, Op::Beta, "B"),
            (0, Op::P(1), "2*Y^2"),
            (2, Op::P(1), "A*Y"),
            (3, Op::P(1), "B*Y"),
        ],
    )
}

/// Model of `H_{S_2^1}` at 3, detected on two copies of `F_3[y] ⊗ Λ(x, e)`.
pub fn s21() -> UnstableAlgebra {
    algebra(
        3,
        &[("Y1", 2), ("Y2", 2), ("X1", 1), ("X2", 1), ("E", 1)],
        &["X1*X2", "X1*Y2", "X2*Y1", "Y1*Y2"],
        &[(2, Op::Beta, "Y1"), (3, Op::Beta, "Y2")],
    )
}

/// `Λ(f)` at 3, `|f| = 1`.
pub fn lambda3() -> UnstableAlgebra {
    algebra(3, &[("f", 1)], &[], &[])
}
