use super::gb::{Engine, Vector};
use super::hilbert::monomial_numerator;
use super::{Element, GradedRing, HilbertSeries, Monomial};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Default cap on the exponent searched when testing nilpotence.
pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

/// A homogeneous ideal, given by generators in some ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ideal {
    pub gens: Vec<Element>,
}

impl Ideal {
    pub fn new(gens: Vec<Element>) -> Self {
        Ideal { gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn zero() -> Self {
        Ideal::default()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Reduced Gröbner basis, sorted by leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub elements: Vec<Element>,
    pub leading: Vec<Monomial>,
}

/// `ring / relations`, with odd generators squaring to zero.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    ring: GradedRing,
    relations: Ideal,
    engine: Engine,
    basis: Vec<Vector>,
}

impl PresentedAlgebra {
    pub fn new(ring: GradedRing, relations: Vec<Element>) -> Result<Self> {
        for r in &relations {
            ring.check(r)?;
            if !ring.is_homogeneous(r) {
                return Err(Error::Inhomogeneous);
            }
            if ring.degree(r) == Some(0) {
                return Err(Error::Inconsistent("relation with a constant term".into()));
            }
        }
        let engine = Engine::new(ring.prime(), &ring.degrees(), vec![0]);
        let mut gens: Vec<Vector> = relations.iter().map(|r| to_vector(&engine, 0, r)).collect();
        gens.extend(odd_squares(&engine, &ring, 0));
        let basis = engine.groebner(&gens);
        Ok(PresentedAlgebra { ring, relations: Ideal::new(relations), engine, basis })
    }

    /// The free graded-commutative algebra on `ring`.
    pub fn free(ring: GradedRing) -> Self {
        PresentedAlgebra::new(ring, Vec::new()).expect("no relations to check")
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn groebner_basis(&self) -> GroebnerBasis {
        GroebnerBasis {
            elements: self.basis.iter().map(to_element).collect(),
            leading: self.basis.iter().map(|v| Monomial(v.keys().next_back().unwrap().mono.clone())).collect(),
        }
    }

    pub fn normal_form(&self, a: &Element) -> Element {
        to_element(&self.engine.reduce(&to_vector(&self.engine, 0, a), &self.basis))
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        self.normal_form(a).is_zero()
    }

    /// Product in the quotient, in normal form.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.normal_form(&self.ring.mul(a, b))
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// The quotient by additional homogeneous elements.
    pub fn quotient(&self, extra: &[Element]) -> Result<PresentedAlgebra> {
        // Odd squares are re-added by the constructor.
        let mut rels: Vec<Element> =
            self.basis.iter().map(to_element).filter(|e| self.ring.check(e).is_ok()).collect();
        rels.extend(extra.iter().filter(|e| !e.is_zero()).cloned());
        PresentedAlgebra::new(self.ring.clone(), rels)
    }

    /// Tensor product; generators of `self` come first.
    pub fn tensor(&self, other: &PresentedAlgebra) -> Result<PresentedAlgebra> {
        let ring = self.ring.tensor(&other.ring)?;
        let n = self.ring.ngens();
        let m = other.ring.ngens();
        let mut rels: Vec<Element> =
            self.relations.gens.iter().map(|r| shift_element(r, 0, n + m)).collect();
        rels.extend(other.relations.gens.iter().map(|r| shift_element(r, n, n + m)));
        PresentedAlgebra::new(ring, rels)
    }

    fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.basis.iter().map(|v| v.keys().next_back().unwrap().mono.clone()).collect()
    }

    /// Normal-form monomial basis of the degree-`d` part.
    pub fn basis_in_degree(&self, d: u32) -> Vec<Monomial> {
        let lead = self.leading_monomials();
        let mut out: Vec<Monomial> = self
            .ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !lead.iter().any(|l| l.iter().zip(&m.0).all(|(a, b)| a <= b)))
            .collect();
        out.sort_by(|a, b| self.engine.term(0, b.0.clone()).cmp(&self.engine.term(0, a.0.clone())));
        out
    }

    pub fn dim_in_degree(&self, d: u32) -> usize {
        self.basis_in_degree(d).len()
    }

    /// Coordinates of a homogeneous element in `basis_in_degree(d)`.
    pub fn coordinates(&self, a: &Element, d: u32) -> Vec<u32> {
        let nf = self.normal_form(a);
        self.basis_in_degree(d).iter().map(|m| nf.coeff(m)).collect()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let degs = self.ring.degrees();
        HilbertSeries::new(monomial_numerator(&self.leading_monomials(), &degs), degs)
    }

    /// Size of a largest set of generators no leading monomial is supported on.
    pub fn krull_dimension(&self) -> usize {
        let n = self.ring.ngens();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | 1 << i))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        best
    }

    /// Top nonzero degree of a finite-dimensional algebra.
    pub fn top_degree(&self) -> Option<u32> {
        self.hilbert_series().top_degree()
    }

    /// Reduced Gröbner basis of `I + relations`, as vectors.
    fn ideal_basis(&self, ideal: &Ideal) -> Vec<Vector> {
        let mut gens = self.basis.clone();
        gens.extend(ideal.gens.iter().map(|g| to_vector(&self.engine, 0, g)));
        self.engine.groebner(&gens)
    }

    pub fn contains(&self, ideal: &Ideal, a: &Element) -> bool {
        let b = self.ideal_basis(ideal);
        self.engine.reduce(&to_vector(&self.engine, 0, a), &b).is_empty()
    }

    /// Equality of ideals in the quotient.
    pub fn ideals_equal(&self, i: &Ideal, j: &Ideal) -> bool {
        self.ideal_basis(i) == self.ideal_basis(j)
    }

    /// Drops generators lying in the ideal spanned by earlier (lower-degree) ones.
    pub fn minimalize(&self, ideal: &Ideal) -> Ideal {
        let mut gens: Vec<Element> = ideal.gens.iter().map(|g| self.normal_form(g)).filter(|g| !g.is_zero()).collect();
        gens.sort_by_key(|g| self.ring.degree(g).unwrap_or(0));
        let mut kept: Vec<Element> = Vec::new();
        for g in gens {
            if !self.contains(&Ideal::new(kept.clone()), &g) {
                kept.push(g);
            }
        }
        Ideal::new(kept)
    }

    /// `I ∩ J` via a two-component module with position-over-term order.
    pub fn intersect_ideals(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let e = Engine::new(self.ring.prime(), &self.ring.degrees(), vec![0, 0]).with_pot();
        let mut rows = Vec::new();
        for f in self.ideal_basis(i).iter().map(to_element) {
            let mut v = to_vector(&e, 0, &f);
            v.extend(to_vector(&e, 1, &f));
            rows.push(v);
        }
        for g in self.ideal_basis(j).iter().map(to_element) {
            rows.push(to_vector(&e, 0, &g));
        }
        let gb = e.groebner(&rows);
        let gens = gb
            .iter()
            .filter(|v| v.keys().next_back().unwrap().comp == 1)
            .map(to_element)
            .collect();
        self.minimalize(&Ideal::new(gens))
    }

    /// `I : a` for a homogeneous element `a`.
    pub fn colon(&self, i: &Ideal, a: &Element) -> Ideal {
        let Some(d) = self.ring.degree(&self.normal_form(a)) else {
            return Ideal::new(vec![self.ring.one()]);
        };
        let e = Engine::new(self.ring.prime(), &self.ring.degrees(), vec![0, d as i64]).with_pot();
        let mut first = to_vector(&e, 0, a);
        first.extend(to_vector(&e, 1, &self.ring.one()));
        let mut rows = vec![first];
        for g in self.ideal_basis(i).iter().map(to_element) {
            rows.push(to_vector(&e, 0, &g));
        }
        let gb = e.groebner(&rows);
        let gens = gb
            .iter()
            .filter(|v| v.keys().next_back().unwrap().comp == 1)
            .map(to_element)
            .collect();
        self.minimalize(&Ideal::new(gens))
    }

    /// Smallest `k` with `a^k = 0`, or `None` when `a` is not nilpotent.
    ///
    /// Non-nilpotence is certified by stabilization of `0 : a^k`.
    pub fn nilpotency_index(&self, a: &Element, cap: u32) -> Result<Option<u32>> {
        let a = self.normal_form(a);
        if a.is_zero() {
            return Ok(Some(1));
        }
        if !self.ring.is_homogeneous(&a) {
            return Err(Error::Inhomogeneous);
        }
        let mut ann = Ideal::zero();
        for k in 1..=cap {
            if self.pow(&a, k).is_zero() {
                return Ok(Some(k));
            }
            let next = self.colon(&ann, &a);
            if k > 1 && self.ideals_equal(&next, &ann) {
                return Ok(None);
            }
            ann = next;
        }
        Err(Error::NilpotencyCap(cap))
    }

    /// Indices of nilpotent generators (odd generators always are).
    pub fn nilpotent_generators(&self, cap: u32) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.ring.ngens() {
            if self.ring.gens()[i].odd || self.nilpotency_index(&self.ring.gen(i), cap)?.is_some() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Largest `d` with `rad^d ≠ 0`, the radical taken to be generated by the
    /// nilpotent generators.
    pub fn radical_nilpotence_degree(&self) -> Result<u32> {
        self.radical_nilpotence_degree_with_cap(DEFAULT_NILPOTENCY_CAP)
    }

    pub fn radical_nilpotence_degree_with_cap(&self, cap: u32) -> Result<u32> {
        let nil = self.nilpotent_generators(cap)?;
        if nil.is_empty() {
            return Ok(0);
        }
        // Products of d nilpotent generators, kept in normal form.
        let mut layer: Vec<Element> = vec![self.ring.one()];
        let mut d = 0;
        loop {
            let mut next: Vec<Element> = Vec::new();
            for m in &layer {
                for &i in &nil {
                    let p = self.mul(m, &self.ring.gen(i));
                    if !p.is_zero() && !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
            if next.is_empty() {
                return Ok(d);
            }
            d += 1;
            if d > cap * nil.len() as u32 {
                return Err(Error::NilpotencyCap(cap));
            }
            layer = next;
        }
    }

    /// Checks that generator images define a ring map `self → target`.
    pub fn check_ring_map(&self, images: &[Element], target: &PresentedAlgebra) -> Result<()> {
        if images.len() != self.ring.ngens() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} generators",
                images.len(),
                self.ring.ngens()
            )));
        }
        for (g, img) in self.ring.gens().iter().zip(images) {
            target.ring.check(img)?;
            let img = target.normal_form(img);
            if !img.is_zero() && target.ring.degree(&img) != Some(g.degree) {
                return Err(Error::RingMismatch(format!("image of {} has the wrong degree", g.name)));
            }
        }
        for r in &self.relations.gens {
            let v = self.ring.substitute(r, images, &target.ring);
            if !target.is_zero(&v) {
                return Err(Error::RelationNotRespected(self.ring.format(r)));
            }
        }
        Ok(())
    }

    /// Image of an element under a ring map given by generator images.
    pub fn apply_map(&self, a: &Element, images: &[Element], target: &PresentedAlgebra) -> Element {
        target.normal_form(&self.ring.substitute(a, images, &target.ring))
    }

    /// Kernel of a ring map, by elimination on the graph ideal.
    ///
    /// The elimination is sign-free, so odd-degree images must have a single
    /// exterior part each, with exterior parts ordered like their sources.
    pub fn kernel_of_ring_map(&self, images: &[Element], target: &PresentedAlgebra) -> Result<Ideal> {
        self.check_ring_map(images, target)?;
        let images: Vec<Element> = images.iter().map(|i| target.normal_form(i)).collect();
        self.check_sign_free(&images, target)?;
        let nt = target.ring.ngens();
        let ns = self.ring.ngens();
        let mut degs = target.ring.degrees();
        degs.extend(self.ring.degrees());
        let weight: Vec<i64> = (0..nt + ns).map(|i| (i < nt) as i64).collect();
        let e = Engine::new(self.ring.prime(), &degs, vec![0]).with_weights(weight);
        let mut rows: Vec<Vector> =
            target.basis.iter().map(|v| to_vector(&e, 0, &shift_element(&to_element(v), 0, nt + ns))).collect();
        rows.extend(odd_squares(&e, &self.ring, nt));
        for (i, img) in images.iter().enumerate() {
            let x = Element::from_map(BTreeMap::from([(Monomial::var(nt + ns, nt + i), 1)]));
            let y = shift_element(img, 0, nt + ns);
            let graph = target.ring.sub(&x, &y);
            rows.push(to_vector(&e, 0, &graph));
        }
        let gb = e.groebner(&rows);
        let kernel: Vec<Element> = gb
            .iter()
            .filter(|v| v.keys().next_back().unwrap().mono[..nt].iter().all(|&x| x == 0))
            .map(|v| {
                let el = to_element(v);
                Element::from_map(el.terms().iter().map(|(m, &c)| (Monomial(m.0[nt..].to_vec()), c)).collect())
            })
            .collect();
        let ideal = self.minimalize(&Ideal::new(kernel));
        for g in &ideal.gens {
            if !target.is_zero(&self.ring.substitute(g, &images, &target.ring)) {
                return Err(Error::CrossCheck(format!("kernel element {} not killed", self.ring.format(g))));
            }
        }
        Ok(ideal)
    }

    fn check_sign_free(&self, images: &[Element], target: &PresentedAlgebra) -> Result<()> {
        let odd_t = target.ring.odd_indices();
        let mut last = None;
        for (i, img) in images.iter().enumerate() {
            if img.is_zero() || self.ring.gens()[i].degree.is_multiple_of(2) {
                continue;
            }
            let parts: Vec<Vec<usize>> = img
                .terms()
                .keys()
                .map(|m| odd_t.iter().copied().filter(|&j| m.0[j] > 0).collect())
                .collect();
            if parts.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::Unsupported("odd image with several exterior parts".into()));
            }
            if let Some(part) = parts.first() {
                if let (Some(&first), Some(prev)) = (part.first(), last) {
                    if first <= prev {
                        return Err(Error::Unsupported("odd images with interleaved exterior parts".into()));
                    }
                }
                if let Some(&l) = part.last() {
                    last = Some(l);
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn to_vector(e: &Engine, comp: usize, a: &Element) -> Vector {
    e.vector(a.terms().iter().map(|(m, &c)| (comp, m.0.clone(), c)))
}

pub(crate) fn to_element(v: &Vector) -> Element {
    Element::from_map(v.iter().map(|(t, &c)| (Monomial(t.mono.clone()), c)).collect())
}

/// Re-indexes an element into a ring with `total` generators, starting at `offset`.
pub(crate) fn shift_element(a: &Element, offset: usize, total: usize) -> Element {
    Element::from_map(
        a.terms()
            .iter()
            .map(|(m, &c)| {
                let mut e = vec![0; total];
                e[offset..offset + m.0.len()].copy_from_slice(&m.0);
                (Monomial(e), c)
            })
            .collect(),
    )
}

fn odd_squares(e: &Engine, ring: &GradedRing, offset: usize) -> Vec<Vector> {
    ring.odd_indices()
        .into_iter()
        .map(|i| {
            let mut m = vec![0; e.nvars];
            m[offset + i] = 2;
            e.vector([(0, m, 1)])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalg::{parse_element, Prime};

    fn alg(p: u32, gens: &[(&str, u32)], rels: &[&str]) -> PresentedAlgebra {
        let ring = GradedRing::new(Prime::new(p).unwrap(), gens.to_vec()).unwrap();
        let rels = rels.iter().map(|r| parse_element(&ring, r).unwrap()).collect();
        PresentedAlgebra::new(ring, rels).unwrap()
    }

    fn el(a: &PresentedAlgebra, s: &str) -> Element {
        parse_element(a.ring(), s).unwrap()
    }

    #[test]
    fn quotients_with_exterior_generators() {
        let a = alg(3, &[("x", 1), ("y", 2)], &[]);
        let q = a.quotient(&[el(&a, "y")]).unwrap();
        assert_eq!(q.top_degree(), Some(1));
        assert_eq!(q.quotient(&[]).unwrap().hilbert_series(), q.hilbert_series());
    }

    #[test]
    fn quaternion_relations_groebner_fixture() {
        let a = alg(2, &[("x", 1), ("y", 1), ("e", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"]);
        let gb = a.groebner_basis();
        // By hand: x^2*y + x*y^2 - y*(x^2 + x*y + y^2) = y^3, and the
        // S-polynomial of x^2 + x*y + y^2 and y^3 reduces to zero.
        let shown: Vec<String> = gb.elements.iter().map(|g| a.ring().format(g)).collect();
        assert_eq!(shown, vec!["x^2 + x*y + y^2", "y^3"]);
        let standard: usize = (0..4).map(|d| a.dim_in_degree(d)).sum();
        assert_eq!(standard, 6);
        assert_eq!(a.dim_in_degree(3), 1);
    }

    #[test]
    fn quaternion_hilbert_series() {
        let a = alg(2, &[("x", 1), ("y", 1), ("e", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"]);
        let h = a.hilbert_series();
        let expected = HilbertSeries::new(BTreeMap::from([(0, 1), (1, 2), (2, 2), (3, 1)]), vec![4]);
        assert_eq!(h.coefficients(16), expected.coefficients(16));
        assert_eq!(a.krull_dimension(), 1);
        assert_eq!(h.pole_order(), 1);
    }

    #[test]
    fn truncated_polynomial() {
        let a = alg(2, &[("x", 1)], &["x^4"]);
        assert_eq!(a.hilbert_series().coefficients(6), vec![1, 1, 1, 1, 0, 0]);
        assert_eq!(a.krull_dimension(), 0);
        assert_eq!(a.top_degree(), Some(3));
    }

    #[test]
    fn dihedral_ring_dimension() {
        let a = alg(2, &[("x", 1), ("y", 1), ("w", 2)], &["x*y"]);
        assert_eq!(a.krull_dimension(), 2);
    }

    #[test]
    fn elementary_abelian_rings_are_polynomial() {
        for n in 1..=4usize {
            let gens: Vec<(String, u32)> = (1..=n).map(|i| (format!("u{i}"), 1)).collect();
            let ring = GradedRing::new(Prime::new(2).unwrap(), gens).unwrap();
            let a = PresentedAlgebra::free(ring);
            assert_eq!(a.krull_dimension(), n);
            let h = a.hilbert_series();
            assert_eq!(h.numerator, BTreeMap::from([(0, 1)]));
            assert_eq!(h.denominator, vec![1; n]);
        }
    }

    #[test]
    fn kernel_of_symmetric_map() {
        let s = alg(2, &[("x", 1), ("y", 1)], &[]);
        let t = alg(2, &[("t", 1)], &[]);
        let k = s.kernel_of_ring_map(&[el(&t, "t"), el(&t, "t")], &t).unwrap();
        assert_eq!(k.gens.len(), 1);
        assert_eq!(s.ring().format(&k.gens[0]), "x + y");
    }

    #[test]
    fn identity_has_zero_kernel() {
        let a = alg(2, &[("e", 1), ("w", 2)], &["e^2"]);
        let k = a.kernel_of_ring_map(&[el(&a, "e"), el(&a, "w")], &a).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn restriction_from_cyclic_four() {
        let z4 = alg(2, &[("e", 1), ("w", 2)], &["e^2"]);
        let z2 = alg(2, &[("x", 1)], &[]);
        let k = z4.kernel_of_ring_map(&[Element::zero(), el(&z2, "x^2")], &z2).unwrap();
        let shown: Vec<String> = k.gens.iter().map(|g| z4.ring().format(g)).collect();
        assert_eq!(shown, vec!["e"]);
    }

    #[test]
    fn relations_must_be_respected() {
        let z4 = alg(2, &[("e", 1), ("w", 2)], &["e^2"]);
        let z2 = alg(2, &[("x", 1)], &[]);
        let r = z4.kernel_of_ring_map(&[el(&z2, "x"), el(&z2, "x^2")], &z2);
        assert!(matches!(r, Err(Error::RelationNotRespected(_))));
    }

    #[test]
    fn intersections() {
        let a = alg(2, &[("x", 1), ("y", 1)], &[]);
        let i = Ideal::new(vec![el(&a, "x")]);
        let j = Ideal::new(vec![el(&a, "y")]);
        let k = a.intersect_ideals(&i, &j);
        assert_eq!(k.gens, vec![el(&a, "x*y")]);
        assert!(a.ideals_equal(&a.intersect_ideals(&i, &i), &i));
    }

    #[test]
    fn colon_ideal() {
        let a = alg(2, &[("x", 1), ("y", 1)], &[]);
        let i = Ideal::new(vec![el(&a, "x^2*y")]);
        let c = a.colon(&i, &el(&a, "x"));
        assert_eq!(c.gens, vec![el(&a, "x*y")]);
    }

    #[test]
    fn radical_degrees() {
        let a = alg(2, &[("x", 1), ("y", 1)], &["y^4"]);
        assert_eq!(a.radical_nilpotence_degree().unwrap(), 3);
        let e = alg(2, &[("u1", 1), ("u2", 1)], &[]);
        assert_eq!(e.radical_nilpotence_degree().unwrap(), 0);
        let l = alg(3, &[("x", 1), ("e", 1)], &[]);
        assert_eq!(l.radical_nilpotence_degree().unwrap(), 2);
    }

    #[test]
    fn non_nilpotent_generator_is_certified() {
        let a = alg(2, &[("x", 1), ("y", 1), ("w", 2)], &["x*y"]);
        assert_eq!(a.nilpotency_index(&el(&a, "x"), 64).unwrap(), None);
        assert_eq!(a.nilpotency_index(&el(&a, "w"), 64).unwrap(), None);
    }

    #[test]
    fn odd_exterior_classes_in_kernels() {
        // Λ(a, b) ⊗ F[y] → Λ(x) ⊗ F[y], a ↦ x, b ↦ 0.
        let s = alg(3, &[("a", 1), ("b", 1), ("y", 2)], &[]);
        let t = alg(3, &[("x", 1), ("y", 2)], &[]);
        let k = s.kernel_of_ring_map(&[el(&t, "x"), Element::zero(), el(&t, "y")], &t).unwrap();
        let shown: Vec<String> = k.gens.iter().map(|g| s.ring().format(g)).collect();
        assert_eq!(shown, vec!["b"]);
    }

    #[test]
    fn mixed_exterior_images_are_rejected() {
        let s = alg(3, &[("a", 1), ("b", 1)], &[]);
        let t = alg(3, &[("x", 1), ("z", 1)], &[]);
        let r = s.kernel_of_ring_map(&[el(&t, "x + z"), el(&t, "x - z")], &t);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    /// Degree-`d` dimension of `S / I` by linear algebra on all multiples of
    /// the relations, independent of Gröbner bases.
    fn brute_force_dim(a: &PresentedAlgebra, rels: &[Element], d: u32) -> usize {
        use crate::fpalg::linalg;
        let ring = a.ring();
        let monos = ring.monomials_of_degree(d);
        let mut rows = Vec::new();
        for r in rels {
            let Some(rd) = ring.degree(r) else { continue };
            if rd > d {
                continue;
            }
            for m in ring.monomials_of_degree(d - rd) {
                let prod = ring.mul(&ring.monomial(m, 1), r);
                rows.push(monos.iter().map(|x| prod.coeff(x)).collect::<Vec<u32>>());
            }
        }
        monos.len() - linalg::rank(ring.prime(), &rows)
    }

    fn random_relations() -> impl Strategy<Value = Vec<Vec<(u32, u32, u32)>>> {
        // Up to three relations, each a sum of monomials x^a y^b z^c of degree 3.
        let mono = (0u32..=3, 0u32..=3).prop_filter_map("degree 3", |(a, b)| {
            (a + b <= 3).then(|| (a, b, 3 - a - b))
        });
        proptest::collection::vec(proptest::collection::vec(mono, 1..4), 1..4)
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hilbert_series_matches_brute_force(raw in random_relations(), p in prop::sample::select(vec![2u32, 3])) {
            let ring = GradedRing::polynomial(Prime::new(p).unwrap(), vec![("x", 1), ("y", 1), ("z", 1)]);
            let rels: Vec<Element> = raw.iter().map(|terms| {
                let mut e = Element::zero();
                for &(a, b, c) in terms {
                    e = ring.add(&e, &ring.monomial(Monomial(vec![a, b, c]), 1));
                }
                e
            }).filter(|e| !e.is_zero()).collect();
            let a = PresentedAlgebra::new(ring, rels.clone()).unwrap();
            let h = a.hilbert_series().coefficients(8);
            for d in 0..8u32 {
                prop_assert_eq!(h[d as usize] as usize, brute_force_dim(&a, &rels, d));
                prop_assert_eq!(h[d as usize] as usize, a.dim_in_degree(d));
            }
            prop_assert_eq!(a.krull_dimension(), a.hilbert_series().pole_order());
        }

        #[test]
        fn normal_form_is_idempotent(raw in random_relations(), probe in proptest::collection::vec((0u32..4, 0u32..4, 0u32..4), 1..6)) {
            let ring = GradedRing::polynomial(Prime::new(2).unwrap(), vec![("x", 1), ("y", 1), ("z", 1)]);
            let rels: Vec<Element> = raw.iter().map(|terms| {
                let mut e = Element::zero();
                for &(a, b, c) in terms {
                    e = ring.add(&e, &ring.monomial(Monomial(vec![a, b, c]), 1));
                }
                e
            }).collect();
            let a = PresentedAlgebra::new(ring.clone(), rels).unwrap();
            let mut f = Element::zero();
            for (x, y, z) in probe {
                f = ring.add(&f, &ring.monomial(Monomial(vec![x, y, z]), 1));
            }
            let nf = a.normal_form(&f);
            prop_assert_eq!(a.normal_form(&nf), nf);
        }

        #[test]
        fn graded_commutativity_and_associativity(a in proptest::collection::vec(0u32..2, 4),
                                                  b in proptest::collection::vec(0u32..2, 4),
                                                  c in proptest::collection::vec(0u32..3, 4)) {
            let ring = GradedRing::new(Prime::new(3).unwrap(), vec![("a", 1), ("b", 1), ("y", 2), ("c", 3)]).unwrap();
            let x = ring.monomial(Monomial(a), 1);
            let y = ring.monomial(Monomial(b), 2);
            let z = ring.monomial(Monomial(c), 1);
            prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
            if let (Some(dx), Some(dy)) = (ring.degree(&x), ring.degree(&y)) {
                let yx = ring.mul(&y, &x);
                let expected = if dx * dy % 2 == 1 { ring.neg(&yx) } else { yx };
                prop_assert_eq!(ring.mul(&x, &y), expected);
            }
        }
    }
}
