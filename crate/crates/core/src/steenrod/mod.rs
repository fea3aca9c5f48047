//! Steenrod operations on presented algebras.
//!
//! Operations are declared on generators and extended by the Cartan formula;
//! the Bockstein is a signed derivation. Undeclared values default to the
//! identity for `Sq^0`/`P^0`, to the square or `p`-th power in the top
//! degree, and to zero otherwise.

use crate::error::{Error, Result};
use crate::fpalg::{shift_element, Element, GradedRing, Monomial, PresentedAlgebra, Prime};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A single Steenrod operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Op {
    Sq(u32),
    P(u32),
    Beta,
}

impl Op {
    /// Degree by which the operation raises degrees.
    pub fn degree(self, p: Prime) -> u32 {
        match self {
            Op::Sq(i) => i,
            Op::P(i) => 2 * i * (p.get() - 1),
            Op::Beta => 1,
        }
    }

    fn valid_for(self, p: Prime) -> bool {
        match self {
            Op::Sq(_) => p.is_two(),
            Op::P(_) | Op::Beta => !p.is_two(),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Sq(i) => write!(f, "Sq^{i}"),
            Op::P(i) => write!(f, "P^{i}"),
            Op::Beta => write!(f, "beta"),
        }
    }
}

/// Declared values of operations on generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SteenrodAction {
    declared: BTreeMap<(usize, Op), Element>,
}

impl SteenrodAction {
    pub fn new() -> Self {
        SteenrodAction::default()
    }

    pub fn declare(&mut self, generator: usize, op: Op, value: Element) {
        self.declared.insert((generator, op), value);
    }

    pub fn declared(&self) -> &BTreeMap<(usize, Op), Element> {
        &self.declared
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    Degree,
    Instability,
    Restriction,
    Unit,
    Relation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: String,
}

/// Outcome of the axiom checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub degree_bound: u32,
    pub monomials_checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A presented algebra with a Steenrod action on its generators.
#[derive(Clone, Debug)]
pub struct UnstableAlgebra {
    algebra: PresentedAlgebra,
    action: SteenrodAction,
}

impl UnstableAlgebra {
    /// Validates that declared values are homogeneous elements of the ring.
    /// Degrees are checked by [`UnstableAlgebra::verify`].
    pub fn new(algebra: PresentedAlgebra, action: SteenrodAction) -> Result<Self> {
        let ring = algebra.ring();
        for (&(g, op), value) in &action.declared {
            if g >= ring.ngens() {
                return Err(Error::RingMismatch(format!("operation declared on generator #{g}")));
            }
            if !op.valid_for(ring.prime()) {
                return Err(Error::Inconsistent(format!("{op} at p = {}", ring.p())));
            }
            ring.check(value)?;
            if !ring.is_homogeneous(value) {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(UnstableAlgebra { algebra, action })
    }

    /// Only the default values.
    pub fn standard(algebra: PresentedAlgebra) -> Self {
        UnstableAlgebra { algebra, action: SteenrodAction::new() }
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn ring(&self) -> &GradedRing {
        self.algebra.ring()
    }

    pub fn action(&self) -> &SteenrodAction {
        &self.action
    }

    /// Twice the top generator degree.
    pub fn default_degree_bound(&self) -> u32 {
        2 * self.ring().top_generator_degree()
    }

    /// Value of an operation on a generator, declared or default.
    pub fn generator_value(&self, g: usize, op: Op) -> Element {
        if let Some(v) = self.action.declared.get(&(g, op)) {
            return v.clone();
        }
        let ring = self.ring();
        let d = ring.gens()[g].degree;
        match op {
            Op::Sq(0) | Op::P(0) => ring.gen(g),
            Op::Sq(i) if i == d => ring.pow(&ring.gen(g), 2),
            Op::P(i) if 2 * i == d => ring.pow(&ring.gen(g), ring.p()),
            _ => Element::zero(),
        }
    }

    /// Largest index with a possibly nonzero value on generator `g`.
    fn max_index(&self, g: usize) -> u32 {
        let d = self.ring().gens()[g].degree;
        let declared = self
            .action
            .declared
            .iter()
            .filter(|((h, _), v)| *h == g && !v.is_zero())
            .filter_map(|((_, op), _)| match op {
                Op::Sq(i) | Op::P(i) => Some(*i),
                Op::Beta => None,
            })
            .max()
            .unwrap_or(0);
        let default = if self.ring().prime().is_two() { d } else { d / 2 };
        declared.max(default)
    }

    fn factors(m: &Monomial) -> Vec<usize> {
        m.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    fn product(&self, a: &Element, b: &Element, free: bool) -> Element {
        if free {
            self.ring().mul(a, b)
        } else {
            self.algebra.mul(a, b)
        }
    }

    /// Cartan formula on a monomial for `Sq^k` or `P^k`.
    fn cartan(&self, m: &Monomial, k: u32, power: bool, free: bool) -> Element {
        let ring = self.ring();
        let mut partial: Vec<Element> = vec![Element::zero(); k as usize + 1];
        partial[0] = ring.one();
        for g in Self::factors(m) {
            let mut next = vec![Element::zero(); k as usize + 1];
            let top = self.max_index(g).min(k);
            let values: Vec<Element> = (0..=top)
                .map(|i| self.generator_value(g, if power { Op::P(i) } else { Op::Sq(i) }))
                .collect();
            for (a, acc) in partial.iter().enumerate() {
                if acc.is_zero() {
                    continue;
                }
                for (i, v) in values.iter().enumerate() {
                    if a + i > k as usize || v.is_zero() {
                        continue;
                    }
                    next[a + i] = ring.add(&next[a + i], &self.product(acc, v, free));
                }
            }
            partial = next;
        }
        partial.swap_remove(k as usize)
    }

    /// Bockstein on a monomial as a signed derivation.
    fn bockstein(&self, m: &Monomial, free: bool) -> Element {
        let ring = self.ring();
        let factors = Self::factors(m);
        let mut out = Element::zero();
        for j in 0..factors.len() {
            let beta = self.generator_value(factors[j], Op::Beta);
            if beta.is_zero() {
                continue;
            }
            let mut term = ring.one();
            let mut before = 0u32;
            for (l, &g) in factors.iter().enumerate() {
                let f = if l == j { beta.clone() } else { ring.gen(g) };
                if l < j {
                    before += ring.gens()[g].degree;
                }
                term = self.product(&term, &f, free);
            }
            if before % 2 == 1 {
                term = ring.neg(&term);
            }
            out = ring.add(&out, &term);
        }
        out
    }

    fn apply_inner(&self, op: Op, e: &Element, free: bool) -> Result<Element> {
        let ring = self.ring();
        if !op.valid_for(ring.prime()) {
            return Err(Error::Inconsistent(format!("{op} at p = {}", ring.p())));
        }
        if !ring.is_homogeneous(e) {
            return Err(Error::Inhomogeneous);
        }
        let mut out = Element::zero();
        for (m, &c) in e.terms() {
            let v = match op {
                Op::Sq(k) => self.cartan(m, k, false, free),
                Op::P(k) => self.cartan(m, k, true, free),
                Op::Beta => self.bockstein(m, free),
            };
            out = ring.add(&out, &ring.scale(&v, c));
        }
        Ok(if free { out } else { self.algebra.normal_form(&out) })
    }

    /// Applies an operation to a homogeneous element of the algebra.
    pub fn apply(&self, op: Op, e: &Element) -> Result<Element> {
        self.apply_inner(op, &self.algebra.normal_form(e), false)
    }

    /// Operations to test on a monomial of degree `n` with maximal index `top`.
    fn ops_above(&self, n: u32, top: u32) -> Vec<(Op, Option<Op>)> {
        if self.ring().prime().is_two() {
            (n + 1..=top).map(|i| (Op::Sq(i), None)).collect()
        } else {
            let mut out = Vec::new();
            for i in 0..=top {
                if 2 * i > n {
                    out.push((Op::P(i), None));
                }
                if 2 * i + 1 > n {
                    out.push((Op::P(i), Some(Op::Beta)));
                }
            }
            out
        }
    }

    /// Checks instability, `Sq^0 = id`, the restriction axiom and that
    /// relations are carried into the ideal, on basis monomials through `degree_bound`.
    pub fn verify(&self, degree_bound: Option<u32>) -> AxiomReport {
        let bound = degree_bound.unwrap_or_else(|| self.default_degree_bound());
        let ring = self.ring();
        let p = ring.prime();
        let mut violations = Vec::new();
        let mut push = |kind: ViolationKind, witness: String| {
            if !violations.iter().any(|v: &Violation| v.witness == witness) {
                violations.push(Violation { kind, witness });
            }
        };
        for g in 0..ring.ngens() {
            let unit = if p.is_two() { Op::Sq(0) } else { Op::P(0) };
            if self.generator_value(g, unit) != ring.gen(g) {
                push(ViolationKind::Unit, format!("{unit}({}) != {}", ring.gens()[g].name, ring.gens()[g].name));
            }
        }
        for (&(g, op), value) in &self.action.declared {
            let expected = ring.gens()[g].degree + op.degree(p);
            if !value.is_zero() && ring.degree(value) != Some(expected) {
                push(
                    ViolationKind::Degree,
                    format!("{op}({}) = {} should have degree {expected}", ring.gens()[g].name, ring.format(value)),
                );
            }
        }
        let mut checked = 0;
        for n in 1..=bound {
            for m in self.algebra.basis_in_degree(n) {
                checked += 1;
                let x = ring.monomial(m.clone(), 1);
                let shown = ring.format(&x);
                let top: u32 = Self::factors(&m).iter().map(|&g| self.max_index(g)).sum();
                for (op, then) in self.ops_above(n, top) {
                    let mut v = self.apply_inner(op, &x, false).unwrap_or_default();
                    let mut label = format!("{op}({shown})");
                    if let Some(t) = then {
                        v = self.apply_inner(t, &v, false).unwrap_or_default();
                        label = format!("{t} {label}");
                    }
                    if !v.is_zero() {
                        push(ViolationKind::Instability, format!("{label} = {} in degree above {n}", ring.format(&v)));
                    }
                }
                let restriction = if p.is_two() {
                    Some((Op::Sq(n), 2))
                } else if n % 2 == 0 {
                    Some((Op::P(n / 2), p.get()))
                } else {
                    None
                };
                if let Some((op, e)) = restriction {
                    let lhs = self.apply_inner(op, &x, false).unwrap_or_default();
                    let rhs = self.algebra.pow(&x, e);
                    if lhs != rhs {
                        push(
                            ViolationKind::Restriction,
                            format!("{op}({shown}) = {} but {shown}^{e} = {}", ring.format(&lhs), ring.format(&rhs)),
                        );
                    }
                }
            }
        }
        for r in &self.algebra.relations().gens {
            let top: u32 = r
                .terms()
                .keys()
                .map(|m| Self::factors(m).iter().map(|&g| self.max_index(g)).sum::<u32>())
                .max()
                .unwrap_or(0);
            let mut ops: Vec<Op> = if p.is_two() {
                (1..=top).map(Op::Sq).collect()
            } else {
                (1..=top).map(Op::P).collect()
            };
            if !p.is_two() {
                ops.push(Op::Beta);
            }
            for op in ops {
                let v = self.apply_inner(op, r, true).unwrap_or_default();
                if !self.algebra.is_zero(&v) {
                    push(
                        ViolationKind::Relation,
                        format!("{op}({}) = {} is not in the ideal", ring.format(r), ring.format(&v)),
                    );
                }
            }
        }
        AxiomReport { degree_bound: bound, monomials_checked: checked, violations }
    }
}

/// Does the ring map `source → target` given by generator images commute
/// with every operation on every generator?
pub fn check_a_linearity(source: &UnstableAlgebra, target: &UnstableAlgebra, images: &[Element]) -> Result<bool> {
    source.algebra.check_ring_map(images, &target.algebra)?;
    let ring = source.ring();
    let p = ring.prime();
    for g in 0..ring.ngens() {
        let top = source.max_index(g).max(ring.gens()[g].degree);
        let mut ops: Vec<Op> = if p.is_two() { (0..=top).map(Op::Sq).collect() } else { (0..=top).map(Op::P).collect() };
        if !p.is_two() {
            ops.push(Op::Beta);
        }
        let x = ring.gen(g);
        let fx = source.algebra.apply_map(&x, images, &target.algebra);
        for op in ops {
            let lhs = source.algebra.apply_map(&source.apply(op, &x)?, images, &target.algebra);
            let rhs = target.apply(op, &fx)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cohomology of an elementary abelian group of the given rank with its
/// standard action: `F_2[u_1..u_r]` at `p = 2`, and
/// `Λ(x_1..x_r) ⊗ F_p[y_1..y_r]` with `β x_i = y_i` at odd `p`.
pub fn elementary_abelian(p: Prime, rank: usize) -> UnstableAlgebra {
    elementary_abelian_named(p, rank, "u", "x", "y")
}

/// [`elementary_abelian`] with chosen generator prefixes: `two` at `p = 2`,
/// `odd`/`even` for the exterior and polynomial generators otherwise.
pub fn elementary_abelian_named(p: Prime, rank: usize, two: &str, odd: &str, even: &str) -> UnstableAlgebra {
    if p.is_two() {
        let ring = GradedRing::new(p, (1..=rank).map(|i| (format!("{two}{i}"), 1)).collect()).unwrap();
        return UnstableAlgebra::standard(PresentedAlgebra::free(ring));
    }
    let mut gens: Vec<(String, u32)> = (1..=rank).map(|i| (format!("{odd}{i}"), 1)).collect();
    gens.extend((1..=rank).map(|i| (format!("{even}{i}"), 2)));
    let ring = GradedRing::new(p, gens).unwrap();
    let mut action = SteenrodAction::new();
    for i in 0..rank {
        action.declare(i, Op::Beta, ring.gen(rank + i));
    }
    UnstableAlgebra::new(PresentedAlgebra::free(ring), action).unwrap()
}

impl UnstableAlgebra {
    /// Tensor product; generators of `other` follow those of `self`.
    pub fn tensor(&self, other: &UnstableAlgebra) -> Result<UnstableAlgebra> {
        let algebra = self.algebra.tensor(&other.algebra)?;
        let n = algebra.ring().ngens();
        let offset = self.ring().ngens();
        let mut action = SteenrodAction::new();
        for (&(g, op), v) in &self.action.declared {
            action.declare(g, op, shift_element(v, 0, n));
        }
        for (&(g, op), v) in &other.action.declared {
            action.declare(g + offset, op, shift_element(v, offset, n));
        }
        UnstableAlgebra::new(algebra, action)
    }
}

#[cfg(test)]
mod tests;
