//! Modular invariant theory: `F[V]^G` degree by degree, Dickson invariants,
//! pointwise stabilizers and the invariant-theoretic center `(V^G, f_{V^G})`.
//!
//! Polynomial functions on `V` are graded with linear forms in degree 1.
//! For comparison with cohomology, `x_i` is sent to `u_i` at `p = 2` and to
//! `y_i` (degree 2) at odd `p`; [`InvariantAlgebra::doubled`] records which.

use crate::error::{Error, Result};
use crate::fpalg::linalg::{self, EchelonBasis, Matrix};
use crate::fpalg::{Element, GradedRing, Monomial, PresentedAlgebra, Prime};
use crate::groups::MAX_GROUP_ORDER;
use crate::rector::{self, RectorPair};
use crate::steenrod::{self, Op, SteenrodAction, UnstableAlgebra};
use std::collections::{BTreeMap, BTreeSet};

/// A finite matrix group acting on `V = F_p^n`, or a representation of an
/// abstract group when built by [`LinearRep::from_images`].
#[derive(Clone, Debug)]
pub struct LinearRep {
    p: Prime,
    n: usize,
    gens: Vec<Matrix>,
    elements: Vec<Matrix>,
    faithful: bool,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect()
}

fn mat_mul(p: Prime, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..m).map(|j| (0..n).fold(0, |s, k| p.add(s, p.mul(row[k], b[k][j])))).collect())
        .collect()
}

fn mat_vec(p: Prime, a: &Matrix, v: &[u32]) -> Vec<u32> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |s, (&x, &y)| p.add(s, p.mul(x, y)))).collect()
}

impl LinearRep {
    /// The matrix group generated by `gens`; faithful by construction.
    pub fn new(p: u32, gens: Vec<Matrix>) -> Result<Self> {
        let p = Prime::new(p)?;
        let n = gens.first().map_or(0, Vec::len);
        let mut reduced = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(Error::Inconsistent("generators must be square of one size".into()));
            }
            let g: Matrix = g.into_iter().map(|r| r.into_iter().map(|x| x % p.get()).collect()).collect();
            if linalg::rank(p, &g) != n {
                return Err(Error::Inconsistent("generator is not invertible".into()));
            }
            reduced.push(g);
        }
        let elements = closure(p, n, &reduced)?;
        Ok(LinearRep { p, n, gens: reduced, elements, faithful: true })
    }

    /// Matrices `images[i]` for the generators of an abstract group of the
    /// given order. Faithful iff the generated matrix group has that order.
    pub fn from_images(p: u32, images: Vec<Matrix>, group_order: usize) -> Result<Self> {
        let mut rep = LinearRep::new(p, images)?;
        if !group_order.is_multiple_of(rep.order()) {
            return Err(Error::Inconsistent("image order does not divide the group order".into()));
        }
        rep.faithful = rep.order() == group_order;
        Ok(rep)
    }

    /// Lower unitriangular generators, so the group is a p-group.
    pub fn unitriangular(p: u32, n: usize, below_diagonal: &[Vec<u32>]) -> Result<Self> {
        let per = n * (n - 1) / 2;
        let gens = below_diagonal
            .iter()
            .map(|entries| {
                let mut g = identity(n);
                let mut k = 0;
                for i in 0..n {
                    for j in 0..i {
                        g[i][j] = entries.get(k).copied().unwrap_or(0);
                        k += 1;
                    }
                }
                debug_assert!(k == per);
                g
            })
            .collect();
        LinearRep::new(p, gens)
    }

    /// All of `GL_n(F_p)`.
    pub fn general_linear(p: u32, n: usize) -> Result<Self> {
        let prime = Prime::new(p)?;
        LinearRep::new(p, general_linear_elements(prime, n))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    pub fn is_p_group(&self) -> bool {
        let mut k = self.order();
        while k.is_multiple_of(self.p.get() as usize) {
            k /= self.p.get() as usize;
        }
        k == 1
    }

    /// `F_p[x_1..x_n]` with linear forms in degree 1.
    pub fn ring(&self) -> GradedRing {
        GradedRing::polynomial(self.p, (1..=self.n).map(|i| (format!("x{i}"), 1)).collect())
    }

    /// `φ ↦ φ ∘ g`: `x_i ↦ Σ_j g_ij x_j`.
    pub fn act(&self, g: &Matrix, a: &Element) -> Element {
        let ring = self.ring();
        let images = linear_forms(&ring, g);
        ring.substitute(a, &images, &ring)
    }

    /// A subgroup given by element indices, as a representation.
    pub fn subgroup(&self, elements: &[usize]) -> Result<LinearRep> {
        let mut gens: Vec<Matrix> = Vec::new();
        let mut span: BTreeSet<Matrix> = BTreeSet::from([identity(self.n)]);
        for &i in elements {
            let g = &self.elements[i];
            if !span.contains(g) {
                gens.push(g.clone());
                span = closure(self.p, self.n, &gens)?.into_iter().collect();
            }
        }
        if gens.is_empty() {
            gens.push(identity(self.n));
        }
        LinearRep::new(self.p.get(), gens)
    }
}

fn linear_forms(ring: &GradedRing, g: &Matrix) -> Vec<Element> {
    g.iter()
        .map(|row| {
            row.iter().enumerate().fold(Element::zero(), |acc, (j, &c)| ring.add(&acc, &ring.scale(&ring.gen(j), c)))
        })
        .collect()
}

fn closure(p: Prime, n: usize, gens: &[Matrix]) -> Result<Vec<Matrix>> {
    let mut seen: BTreeSet<Matrix> = BTreeSet::from([identity(n)]);
    let mut frontier = vec![identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mat_mul(p, &x, g);
            if seen.insert(y.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge { order: seen.len(), cap: MAX_GROUP_ORDER });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn general_linear_elements(p: Prime, n: usize) -> Vec<Matrix> {
    let q = p.get() as u64;
    (0..q.pow((n * n) as u32))
        .filter_map(|mut code| {
            let mut m = vec![vec![0u32; n]; n];
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = (code % q) as u32;
                    code /= q;
                }
            }
            (linalg::rank(p, &m) == n).then_some(m)
        })
        .collect()
}

/// Invariants through a degree bound.
#[derive(Clone, Debug)]
pub struct InvariantRingApprox {
    pub degree_bound: u32,
    /// `bases[d]`: basis of the invariants of degree `d`.
    pub bases: Vec<Vec<Element>>,
    /// Invariants not in the subalgebra generated in lower degrees.
    pub generators: Vec<Element>,
    pub generator_degrees: Vec<u32>,
    /// Every invariant of degree at most this lies in the generated subalgebra.
    pub verified_through: u32,
    /// `verified_through` reaches Symonds' bound, so generation is complete.
    pub complete: bool,
}

impl InvariantRingApprox {
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }
}

/// Symonds' degree bound for generators: `max(|G|, n(|G| − 1))`.
pub fn generation_degree_bound(rep: &LinearRep) -> u32 {
    let g = rep.order() as u32;
    g.max(rep.dim() as u32 * g.saturating_sub(1)).max(1)
}

struct Coords {
    monos: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Coords {
    fn new(ring: &GradedRing, d: u32) -> Self {
        let monos = ring.monomials_of_degree(d);
        let index = monos.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Coords { monos, index }
    }

    fn vector(&self, a: &Element) -> Vec<u32> {
        let mut v = vec![0u32; self.monos.len()];
        for (m, &c) in a.terms() {
            v[self.index[m]] = c;
        }
        v
    }

    fn element(&self, ring: &GradedRing, v: &[u32]) -> Element {
        v.iter()
            .zip(&self.monos)
            .filter(|(&c, _)| c != 0)
            .fold(Element::zero(), |acc, (&c, m)| ring.add(&acc, &ring.monomial(m.clone(), c)))
    }
}

/// Invariants of degree `d`: the common kernel of `g* − id` over generators.
pub fn invariants_in_degree(rep: &LinearRep, d: u32) -> Vec<Element> {
    let ring = rep.ring();
    let p = rep.p;
    let coords = Coords::new(&ring, d);
    let k = coords.monos.len();
    let mut rows: Matrix = Vec::new();
    for g in &rep.gens {
        let images = linear_forms(&ring, g);
        let mut block = vec![vec![0u32; k]; k];
        for (j, m) in coords.monos.iter().enumerate() {
            let moved = coords.vector(&ring.substitute(&ring.monomial(m.clone(), 1), &images, &ring));
            for (i, c) in moved.into_iter().enumerate() {
                block[i][j] = p.sub(c, (i == j) as u32);
            }
        }
        rows.extend(block);
    }
    linalg::kernel(p, &rows, k).iter().map(|v| coords.element(&ring, v)).collect()
}

/// Degreewise invariants and candidate generators through degree `bound`.
pub fn invariants_up_to(rep: &LinearRep, bound: u32) -> InvariantRingApprox {
    let ring = rep.ring();
    let p = rep.p;
    let mut bases: Vec<Vec<Element>> = vec![vec![ring.one()]];
    let mut generators: Vec<Element> = Vec::new();
    let mut generator_degrees: Vec<u32> = Vec::new();
    for d in 1..=bound {
        let coords = Coords::new(&ring, d);
        let mut span = EchelonBasis::new(p, coords.monos.len());
        for (g, &e) in generators.iter().zip(&generator_degrees) {
            for b in &bases[(d - e) as usize] {
                span.insert(&coords.vector(&ring.mul(g, b)));
            }
        }
        let basis = invariants_in_degree(rep, d);
        for f in &basis {
            if span.insert(&coords.vector(f)) {
                generators.push(f.clone());
                generator_degrees.push(d);
            }
        }
        bases.push(basis);
    }
    let complete = bound >= generation_degree_bound(rep);
    InvariantRingApprox { degree_bound: bound, bases, generators, generator_degrees, verified_through: bound, complete }
}

/// Dickson invariants `c_{n,n-1}, …, c_{n,0}` in increasing degree
/// `p^n − p^{n−1} < … < p^n − 1`, checked against all of `GL_n(F_p)`.
pub fn dickson_generators(n: usize, p: u32) -> Result<Vec<Element>> {
    let prime = Prime::new(p)?;
    if n == 0 {
        return Err(Error::Inconsistent("Dickson invariants need n ≥ 1".into()));
    }
    let mut names: Vec<(String, u32)> = (1..=n).map(|i| (format!("x{i}"), 1)).collect();
    names.push(("X".into(), 1));
    let big = GradedRing::polynomial(prime, names);
    let x = big.gen(n);
    let mut product = big.one();
    for v in crate::groups::vectors(p, n) {
        let form = v.iter().enumerate().fold(Element::zero(), |acc, (i, &c)| big.add(&acc, &big.scale(&big.gen(i), c)));
        product = big.mul(&product, &big.sub(&x, &form));
    }
    let ring = GradedRing::polynomial(prime, (1..=n).map(|i| (format!("x{i}"), 1)).collect());
    let coefficient = |k: u32| -> Element {
        let mut out = Element::zero();
        for (m, &c) in product.terms() {
            if m.0[n] == k {
                out = ring.add(&out, &ring.monomial(Monomial(m.0[..n].to_vec()), c));
            }
        }
        out
    };
    let q = p as u64;
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let c = coefficient(q.pow(i as u32) as u32);
        out.push(if (n - i) % 2 == 1 { ring.neg(&c) } else { c });
    }
    let rep = LinearRep { p: prime, n, gens: Vec::new(), elements: Vec::new(), faithful: true };
    for g in general_linear_elements(prime, n) {
        for c in &out {
            if rep.act(&g, c) != *c {
                return Err(Error::CrossCheck(format!("Dickson invariant {} is not invariant", ring.format(c))));
            }
        }
    }
    Ok(out)
}

/// Basis of `V^G`.
pub fn fixed_space(rep: &LinearRep) -> Vec<Vec<u32>> {
    let p = rep.p;
    let n = rep.n;
    let mut rows: Matrix = Vec::new();
    for g in &rep.gens {
        for i in 0..n {
            rows.push((0..n).map(|j| p.sub(g[i][j], (i == j) as u32)).collect());
        }
    }
    linalg::kernel(p, &rows, n)
}

/// Indices of the elements fixing `U` pointwise; `U` is spanned by the given vectors.
pub fn pointwise_stabilizer(rep: &LinearRep, u: &[Vec<u32>]) -> Vec<usize> {
    (0..rep.order())
        .filter(|&i| u.iter().all(|v| mat_vec(rep.p, &rep.elements[i], v) == *v))
        .collect()
}

/// `dim span(vectors)`.
pub fn span_rank(p: Prime, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    linalg::rank(p, &vectors.to_vec())
}

/// Is `span(u) ⊆ span(w)`?
pub fn subspace_le(p: Prime, u: &[Vec<u32>], w: &[Vec<u32>]) -> bool {
    let mut both = w.to_vec();
    both.extend_from_slice(u);
    span_rank(p, &both) == span_rank(p, w)
}

/// Every subspace of `F_p^n`, each as an echelon basis, by increasing dimension.
pub fn subspaces(p: Prime, n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut out = vec![Vec::new()];
    seen.insert(Vec::new());
    let vectors: Vec<Vec<u32>> = crate::groups::vectors(p.get(), n).into_iter().skip(1).collect();
    let mut layer = vec![Vec::<Vec<u32>>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for basis in &layer {
            for v in &vectors {
                if subspace_le(p, std::slice::from_ref(v), basis) {
                    continue;
                }
                let mut m = basis.clone();
                m.push(v.clone());
                let mut e = m.clone();
                let pivots = linalg::rref(p, &mut e);
                e.truncate(pivots.len());
                if seen.insert(e.clone()) {
                    next.push(e.clone());
                    out.push(e);
                }
            }
        }
        layer = next;
    }
    out
}

/// `F[V]^G` presented as an unstable algebra, with its embedding into `H_V`.
#[derive(Clone, Debug)]
pub struct InvariantAlgebra {
    pub rep: LinearRep,
    pub approx: InvariantRingApprox,
    pub algebra: UnstableAlgebra,
    /// Images of the generators in `H_V`; this is the pair `(V, f_V)`.
    pub embedding: Vec<Element>,
    /// Cohomological degree is twice the polynomial degree (odd `p`).
    pub doubled: bool,
}

/// Builds the invariant algebra from generators found through `bound`.
/// Relations come from elimination; Steenrod operations are computed in
/// `H_V` and rewritten in the generators.
pub fn invariant_algebra(rep: &LinearRep, bound: u32) -> Result<InvariantAlgebra> {
    let approx = invariants_up_to(rep, bound);
    let p = rep.p;
    let doubled = !p.is_two();
    let scale = if doubled { 2 } else { 1 };
    let hv = steenrod::elementary_abelian(p, rep.n);
    let hring = hv.ring().clone();
    let coordinate: Vec<Element> = (0..rep.n).map(|i| hring.gen(if doubled { rep.n + i } else { i })).collect();
    let source = rep.ring();
    let embedding: Vec<Element> =
        approx.generators.iter().map(|g| source.substitute(g, &coordinate, &hring)).collect();
    let ring = GradedRing::new(
        p,
        approx
            .generator_degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| (format!("t{}", i + 1), scale * d))
            .collect(),
    )?;
    let free = PresentedAlgebra::free(ring.clone());
    let relations = free.kernel_of_ring_map(&embedding, hv.algebra())?;
    let presented = PresentedAlgebra::new(ring.clone(), relations.gens)?;
    let mut action = SteenrodAction::new();
    for (i, img) in embedding.iter().enumerate() {
        let d = ring.gens()[i].degree;
        let ops: Vec<Op> = if p.is_two() {
            (1..d).map(Op::Sq).collect()
        } else {
            let mut v: Vec<Op> = (1..).take_while(|k| 2 * k < d).map(Op::P).collect();
            v.push(Op::Beta);
            v
        };
        for op in ops {
            let value = hv.apply(op, img)?;
            if value.is_zero() {
                continue;
            }
            let pre = express(&presented, &embedding, &hring, &value)?;
            action.declare(i, op, pre);
        }
    }
    let algebra = UnstableAlgebra::new(presented, action)?;
    if !steenrod::check_a_linearity(&algebra, &hv, &embedding)? {
        return Err(Error::CrossCheck("invariant embedding is not A-linear".into()));
    }
    Ok(InvariantAlgebra { rep: rep.clone(), approx, algebra, embedding, doubled })
}

/// Writes `value ∈ H_V` as a polynomial in the invariant generators.
fn express(a: &PresentedAlgebra, embedding: &[Element], hring: &GradedRing, value: &Element) -> Result<Element> {
    let ring = a.ring();
    let d = hring.degree(value).unwrap_or(0);
    let coords = Coords::new(hring, d);
    let monos = ring.monomials_of_degree(d);
    let mut span = EchelonBasis::new(ring.prime(), coords.monos.len());
    for m in &monos {
        let img = ring.substitute(&ring.monomial(m.clone(), 1), embedding, hring);
        span.insert(&coords.vector(&img));
    }
    let combo = span
        .express(&coords.vector(value))
        .ok_or_else(|| Error::Inconsistent("operation leaves the invariant subalgebra".into()))?;
    Ok(monos
        .iter()
        .zip(combo)
        .filter(|(_, c)| *c != 0)
        .fold(Element::zero(), |acc, (m, c)| ring.add(&acc, &ring.monomial(m.clone(), c))))
}

impl InvariantAlgebra {
    /// `f_U`: restriction of the invariants to the span of `vectors`, with
    /// `E = F_p^{vectors.len()}` mapping onto it.
    pub fn pair(&self, vectors: &[Vec<u32>]) -> Result<RectorPair> {
        let n = self.rep.n;
        let alpha: Matrix = (0..n).map(|i| vectors.iter().map(|v| v[i]).collect()).collect();
        let images = rector::pullback(self.rep.p, &self.embedding, n, &alpha, vectors.len());
        RectorPair::new(&self.algebra, vectors.len(), images)
    }

    /// Pairs for every subspace of `V`, with their subspaces.
    pub fn subspace_pairs(&self) -> Result<Vec<(Vec<Vec<u32>>, RectorPair)>> {
        subspaces(self.rep.p, self.rep.n).into_iter().map(|u| Ok((u.clone(), self.pair(&u)?))).collect()
    }
}

/// `(V^G, f_{V^G})`, asserting `dim V^G < dim V` for nontrivial groups and
/// `V^G ≠ 0` for p-groups.
pub fn rector_center_invariants(inv: &InvariantAlgebra) -> Result<(Vec<Vec<u32>>, RectorPair)> {
    let rep = &inv.rep;
    if !rep.faithful {
        return Err(Error::NotFaithful);
    }
    let fixed = fixed_space(rep);
    if rep.order() > 1 && fixed.len() >= rep.n {
        return Err(Error::CrossCheck("a faithful nontrivial group fixes all of V".into()));
    }
    if rep.is_p_group() && rep.n > 0 && fixed.is_empty() {
        return Err(Error::CrossCheck("a p-group with no fixed vector".into()));
    }
    let pair = inv.pair(&fixed)?;
    Ok((fixed, pair))
}

/// Invariants of the pointwise stabilizer of `U`, the T-component at `f_U`.
pub fn t_component_invariants(rep: &LinearRep, u: &[Vec<u32>], bound: u32) -> Result<InvariantRingApprox> {
    let stab = rep.subgroup(&pointwise_stabilizer(rep, u))?;
    Ok(invariants_up_to(&stab, bound))
}

#[cfg(test)]
mod tests;
