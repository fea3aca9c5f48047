//! Rector's category of an unstable algebra `R`: pairs `(E, f: R → H_E)`,
//! their kernels, the quotient functor `rec`, finiteness, the sum
//! construction `E ∘ C` and the center.
//!
//! A pair is stored as the images of `R`'s generators in `H_E`. Linear maps
//! between elementary abelian groups are matrices acting on coordinates;
//! `α : F_p^s → F_p^r` induces `H_r → H_s` by `u_i ↦ Σ_j α_ij u_j`.

use crate::error::{Error, Result};
use crate::fpalg::linalg::{self, EchelonBasis, Matrix};
use crate::fpalg::{Element, GradedRing, PresentedAlgebra, Prime};
use crate::groups::{self, PermGroup};
use crate::invariants;
use crate::steenrod::{self, UnstableAlgebra};
use serde::Serialize;

/// `(E, f)` with `E = F_p^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectorPair {
    pub rank: usize,
    /// `f` on the generators of `R`, as elements of `H_E`.
    pub images: Vec<Element>,
    /// Basis of `ker f ⊆ E`.
    pub kernel: Vec<Vec<u32>>,
    /// `H_E` is a finite module over the image, i.e. the kernel is trivial.
    pub finite: bool,
}

/// `H_E` with its standard action.
pub fn target(p: Prime, rank: usize) -> UnstableAlgebra {
    steenrod::elementary_abelian(p, rank)
}

/// Images of `H_r`'s generators in `H_s` under the map induced by `α` (an `r × s` matrix).
pub fn linear_images(p: Prime, r: usize, alpha: &Matrix, s: usize) -> Vec<Element> {
    let ring = target(p, s).ring().clone();
    let form = |row: &[u32], offset: usize| {
        row.iter()
            .enumerate()
            .fold(Element::zero(), |acc, (j, &c)| ring.add(&acc, &ring.scale(&ring.gen(offset + j), c % p.get())))
    };
    let mut out: Vec<Element> = (0..r).map(|i| form(&alpha[i], 0)).collect();
    if !p.is_two() {
        out.extend((0..r).map(|i| form(&alpha[i], s)));
    }
    out
}

/// `α^* ∘ f` for images `f` in `H_r`.
pub fn pullback(p: Prime, images: &[Element], r: usize, alpha: &Matrix, s: usize) -> Vec<Element> {
    let from = target(p, r).ring().clone();
    let to = target(p, s).ring().clone();
    let lin = linear_images(p, r, alpha, s);
    images.iter().map(|a| from.substitute(a, &lin, &to)).collect()
}

fn column(v: &[u32]) -> Matrix {
    v.iter().map(|&x| vec![x]).collect()
}

impl RectorPair {
    /// Validates a degree-preserving A-linear ring map `R → H_E` and computes its kernel.
    pub fn new(r: &UnstableAlgebra, rank: usize, images: Vec<Element>) -> Result<Self> {
        let ring = r.ring();
        let p = ring.prime();
        let h = target(p, rank);
        if images.len() != ring.ngens() {
            return Err(Error::RingMismatch(format!("{} images for {} generators", images.len(), ring.ngens())));
        }
        let images: Vec<Element> = images.into_iter().map(|e| h.algebra().normal_form(&e)).collect();
        for (g, img) in ring.gens().iter().zip(&images) {
            h.ring().check(img)?;
            if !img.is_zero() && h.ring().degree(img) != Some(g.degree) || !h.ring().is_homogeneous(img) {
                return Err(Error::Inconsistent(format!("image of {} is not of degree {}", g.name, g.degree)));
            }
        }
        if !steenrod::check_a_linearity(r, &h, &images)? {
            return Err(Error::Inconsistent("pair is not A-linear".into()));
        }
        let kernel = kernel_of_images(p, rank, &images)?;
        Ok(RectorPair { rank, finite: kernel.is_empty(), images, kernel })
    }

    /// The pair through the zero map to `H_0 = F_p`.
    pub fn trivial(r: &UnstableAlgebra) -> Self {
        RectorPair { rank: 0, images: vec![Element::zero(); r.ring().ngens()], kernel: Vec::new(), finite: true }
    }

    /// Restriction along `α : F_p^s → E`.
    pub fn restrict(&self, r: &UnstableAlgebra, alpha: &Matrix, s: usize) -> Result<RectorPair> {
        let p = r.ring().prime();
        RectorPair::new(r, s, pullback(p, &self.images, self.rank, alpha, s))
    }
}

/// `e ∈ ker f` iff `f` followed by restriction to `⟨e⟩` kills every generator.
/// Generator images determine that composite, so products add nothing.
fn kernel_of_images(p: Prime, rank: usize, images: &[Element]) -> Result<Vec<Vec<u32>>> {
    let members: Vec<Vec<u32>> = groups::vectors(p.get(), rank)
        .into_iter()
        .filter(|e| pullback(p, images, rank, &column(e), 1).iter().all(Element::is_zero))
        .collect();
    for a in &members {
        for b in &members {
            let sum: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| p.add(x, y)).collect();
            if !members.contains(&sum) {
                return Err(Error::Inconsistent("kernel of the pair is not a subgroup".into()));
            }
        }
    }
    let mut basis = EchelonBasis::new(p, rank);
    Ok(members.into_iter().filter(|v| basis.insert(v)).collect())
}

/// `ker f ⊆ E`.
pub fn kernel_of_pair(r: &UnstableAlgebra, pair: &RectorPair) -> Result<Vec<Vec<u32>>> {
    kernel_of_images(r.ring().prime(), pair.rank, &pair.images)
}

fn invert(p: Prime, m: &Matrix) -> Matrix {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as u32));
            r
        })
        .collect();
    linalg::rref(p, &mut aug);
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `(E / ker f, f̃)`, with `f̃` pulled back along `E → E/ker f` equal to `f`.
pub fn rec(r: &UnstableAlgebra, pair: &RectorPair) -> Result<RectorPair> {
    let p = r.ring().prime();
    let n = pair.rank;
    let kernel = kernel_of_pair(r, pair)?;
    if kernel.is_empty() {
        return Ok(pair.clone());
    }
    let k = kernel.len();
    let mut span = EchelonBasis::new(p, n);
    for v in &kernel {
        span.insert(v);
    }
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let e: Vec<u32> = (0..n).map(|j| (i == j) as u32).collect();
        if span.insert(&e) {
            basis.push(e);
        }
    }
    basis.extend(kernel);
    // Columns of P are the new basis: complement first, kernel last.
    let pm: Matrix = (0..n).map(|i| basis.iter().map(|v| v[i]).collect()).collect();
    let q = n - k;
    let include: Matrix = (0..n).map(|i| (0..q).map(|j| (i == j) as u32).collect()).collect();
    let images = pullback(p, &pair.images, n, &linalg_mul(p, &pm, &include), q);
    // q : E → E/K in the original coordinates is [I 0] · P^{-1}.
    let project: Matrix = invert(p, &pm).into_iter().take(q).collect();
    if pullback(p, &images, q, &project, n) != pair.images {
        return Err(Error::Inconsistent("pair does not factor through E / ker f".into()));
    }
    RectorPair::new(r, q, images)
}

fn linalg_mul(p: Prime, a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..m).map(|j| row.iter().zip(b).fold(0, |s, (&x, br)| p.add(s, p.mul(x, br[j])))).collect())
        .collect()
}

/// Finiteness by kernel triviality, cross-checked against `dim H_E / (im f) = 0`.
pub fn is_finite_pair(r: &UnstableAlgebra, pair: &RectorPair) -> Result<bool> {
    let p = r.ring().prime();
    let by_kernel = kernel_of_pair(r, pair)?.is_empty();
    let h = target(p, pair.rank);
    let rels: Vec<Element> = pair.images.iter().filter(|e| !e.is_zero()).cloned().collect();
    let fiber = PresentedAlgebra::new(h.ring().clone(), rels)?;
    let by_fiber = fiber.krull_dimension() == 0;
    if by_kernel != by_fiber {
        return Err(Error::CrossCheck(format!("kernel test says {by_kernel}, fiber dimension says {by_fiber}")));
    }
    Ok(by_kernel)
}

/// Injective `r × s` matrices, i.e. monomorphisms `F_p^s → F_p^r`.
pub fn monomorphisms(p: Prime, s: usize, r: usize) -> Vec<Matrix> {
    if s > r {
        return Vec::new();
    }
    let q = p.get() as u64;
    (0..q.pow((r * s) as u32))
        .filter_map(|mut code| {
            let mut m = vec![vec![0u32; s]; r];
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = (code % q) as u32;
                    code /= q;
                }
            }
            (s == 0 || linalg::rank(p, &m) == s).then_some(m)
        })
        .collect()
}

/// Monomorphisms `ι : E → V` with `ι^* ∘ g = f`.
pub fn morphisms(p: Prime, from: &RectorPair, to: &RectorPair) -> Vec<Matrix> {
    monomorphisms(p, from.rank, to.rank)
        .into_iter()
        .filter(|iota| pullback(p, &to.images, to.rank, iota, from.rank) == from.images)
        .collect()
}

/// `[(E,f)] ≤ [(V,g)]`.
pub fn poset_leq(p: Prime, from: &RectorPair, to: &RectorPair) -> bool {
    !morphisms(p, from, to).is_empty()
}

pub fn isomorphic(p: Prime, a: &RectorPair, b: &RectorPair) -> bool {
    a.rank == b.rank && poset_leq(p, a, b)
}

/// Index of the skeleton object isomorphic to `pair`.
pub fn find_class(p: Prime, skeleton: &[RectorPair], pair: &RectorPair) -> Option<usize> {
    skeleton.iter().position(|o| isomorphic(p, o, pair))
}

/// Every object of the Rector category of the given rank, up to
/// isomorphism, by exhausting generator images. Errors above `cap` candidates.
pub fn enumerate_objects(r: &UnstableAlgebra, rank: usize, cap: usize) -> Result<Vec<RectorPair>> {
    let ring = r.ring();
    let p = ring.prime();
    let h = target(p, rank);
    let choices: Vec<Vec<Element>> = ring
        .gens()
        .iter()
        .map(|g| {
            let monos = h.ring().monomials_of_degree(g.degree);
            groups::vectors(p.get(), monos.len())
                .into_iter()
                .map(|v| {
                    v.iter().zip(&monos).fold(Element::zero(), |acc, (&c, m)| {
                        h.ring().add(&acc, &h.ring().monomial(m.clone(), c))
                    })
                })
                .collect()
        })
        .collect();
    let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len())).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::Unsupported(format!("{total} candidate maps exceed the cap {cap}")));
    }
    let mut out: Vec<RectorPair> = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let images: Vec<Element> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if r.algebra().check_ring_map(&images, h.algebra()).is_ok()
            && steenrod::check_a_linearity(r, &h, &images)?
        {
            let pair = RectorPair::new(r, rank, images)?;
            if pair.finite && find_class(p, &out, &pair).is_none() {
                out.push(pair);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The sum map `f ⊞ g : R → H_{E ⊕ C}` for a central `(C, g)`.
pub trait SumMap {
    fn sum(&self, r: &UnstableAlgebra, f: &RectorPair, g: &RectorPair) -> Result<Vec<Element>>;
}

/// A coaction `ψ : R → H_C ⊗ R` for the center `(C, g)`, given as images
/// of `R`'s generators in the tensor ring (`C`'s generators first).
#[derive(Clone, Debug)]
pub struct Coaction {
    pub center: RectorPair,
    pub ring: GradedRing,
    pub images: Vec<Element>,
}

/// `H_C` with generator names that cannot clash with `R`'s.
pub fn coaction_factor(p: Prime, rank: usize) -> UnstableAlgebra {
    steenrod::elementary_abelian_named(p, rank, "c", "cx", "cy")
}

impl Coaction {
    pub fn new(r: &UnstableAlgebra, center: RectorPair, images: Vec<Element>) -> Result<Self> {
        let p = r.ring().prime();
        let factor = coaction_factor(p, center.rank);
        let tensor = factor.tensor(r)?;
        if !steenrod::check_a_linearity(r, &tensor, &images)? {
            return Err(Error::Inconsistent("coaction is not A-linear".into()));
        }
        let coaction = Coaction { center, ring: tensor.ring().clone(), images };
        let nc = factor.ring().ngens();
        let nr = r.ring().ngens();
        let ring = r.ring();
        let counit_c: Vec<Element> =
            (0..nc).map(|_| Element::zero()).chain((0..nr).map(|i| ring.gen(i))).collect();
        for (i, img) in coaction.images.iter().enumerate() {
            let back = coaction.ring.substitute(img, &counit_c, ring);
            if !r.algebra().is_zero(&ring.sub(&back, &ring.gen(i))) {
                return Err(Error::Inconsistent("coaction fails the counit condition on H_C".into()));
            }
        }
        let h = target(p, coaction.center.rank);
        let counit_r: Vec<Element> =
            (0..nc).map(|i| h.ring().gen(i)).chain((0..nr).map(|_| Element::zero())).collect();
        for (img, g) in coaction.images.iter().zip(&coaction.center.images) {
            if coaction.ring.substitute(img, &counit_r, h.ring()) != *g {
                return Err(Error::Inconsistent("coaction does not restrict to the center".into()));
            }
        }
        Ok(coaction)
    }

    /// The standard coaction of `H_E` on itself, with center the identity.
    pub fn elementary(r: &UnstableAlgebra, rank: usize) -> Result<Self> {
        let p = r.ring().prime();
        let ring = coaction_factor(p, rank).tensor(r)?.ring().clone();
        let n = r.ring().ngens();
        let nc = n;
        let images = (0..n).map(|i| ring.add(&ring.gen(i), &ring.gen(nc + i))).collect();
        let center = RectorPair::new(r, rank, (0..n).map(|i| r.ring().gen(i)).collect())?;
        Coaction::new(r, center, images)
    }
}

impl SumMap for Coaction {
    fn sum(&self, r: &UnstableAlgebra, f: &RectorPair, g: &RectorPair) -> Result<Vec<Element>> {
        let p = r.ring().prime();
        let iota = morphisms(p, g, &self.center)
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotCentral("pair does not embed in the center".into()))?;
        let (e, c, cc) = (f.rank, g.rank, self.center.rank);
        let total = target(p, e + c);
        // H_C → H_{E⊕C} through ι : C' → C, then the C' block.
        let block: Matrix = iota.iter().map(|row| (0..e).map(|_| 0).chain(row.iter().copied()).collect()).collect();
        let mut subst = linear_images(p, cc, &block, e + c);
        let embed_e: Matrix = (0..e).map(|i| (0..e + c).map(|j| (i == j) as u32).collect()).collect();
        subst.extend(pullback(p, &f.images, e, &embed_e, e + c));
        Ok(self.images.iter().map(|a| self.ring.substitute(a, &subst, total.ring())).collect())
    }
}

/// Sum maps for invariant rings from translation `U ⊕ C → V`.
pub struct TranslationSum<'a> {
    pub invariants: &'a invariants::InvariantAlgebra,
    pub pairs: Vec<(Vec<Vec<u32>>, RectorPair)>,
}

impl SumMap for TranslationSum<'_> {
    fn sum(&self, _r: &UnstableAlgebra, f: &RectorPair, g: &RectorPair) -> Result<Vec<Element>> {
        let find = |x: &RectorPair| {
            self.pairs
                .iter()
                .find(|(_, q)| q.images == x.images)
                .map(|(u, _)| u.clone())
                .ok_or_else(|| Error::MissingData("pair is not a subspace pair".into()))
        };
        let mut vectors = find(f)?;
        vectors.extend(find(g)?);
        Ok(self.invariants.pair(&vectors)?.images)
    }
}

/// `(E ∘ C, σ(f, g)) = rec(E ⊕ C, f ⊞ g)`.
pub fn circ(r: &UnstableAlgebra, f: &RectorPair, g: &RectorPair, sum: &dyn SumMap) -> Result<RectorPair> {
    let images = sum.sum(r, f, g)?;
    rec(r, &RectorPair::new(r, f.rank + g.rank, images)?)
}

/// Decides centrality of skeleton objects.
#[derive(Clone, Debug)]
pub enum CentralityOracle {
    /// Central iff the subgroup is conjugate into the cohomological center.
    Group { group: PermGroup, p: u32, subgroups: Vec<Vec<usize>> },
    /// Central iff `U ⊆ V^G`.
    Invariant { fixed: Vec<Vec<u32>>, subspaces: Vec<Vec<Vec<u32>>>, p: Prime },
    /// Explicit flags.
    Flag(Vec<bool>),
}

impl CentralityOracle {
    pub fn is_central(&self, i: usize) -> bool {
        match self {
            CentralityOracle::Group { group, p, subgroups } => {
                let center = groups::cohomological_center(group, *p).elements;
                (0..group.order()).any(|x| {
                    group.conjugate_set(x, &subgroups[i]).iter().all(|y| center.binary_search(y).is_ok())
                })
            }
            CentralityOracle::Invariant { fixed, subspaces, p } => invariants::subspace_le(*p, &subspaces[i], fixed),
            CentralityOracle::Flag(flags) => flags[i],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CentralityOracle::Group { .. } => "group",
            CentralityOracle::Invariant { .. } => "invariant",
            CentralityOracle::Flag(_) => "flag",
        }
    }
}

/// The central objects of a skeleton and the maximal one.
#[derive(Clone, Debug, Serialize)]
pub struct CentralPoset {
    pub central: Vec<usize>,
    pub maximum: usize,
    pub rank: usize,
}

/// Checks subgroup closure of the oracle and, when a sum map is given,
/// closure under `∘`; returns the unique maximal central object.
pub fn maximal_central(
    r: &UnstableAlgebra,
    skeleton: &[RectorPair],
    oracle: &CentralityOracle,
    sum: Option<&dyn SumMap>,
) -> Result<CentralPoset> {
    let p = r.ring().prime();
    let central: Vec<usize> = (0..skeleton.len()).filter(|&i| oracle.is_central(i)).collect();
    for &i in &central {
        let obj = &skeleton[i];
        for s in 0..obj.rank {
            for alpha in monomorphisms(p, s, obj.rank) {
                let sub = obj.restrict(r, &alpha, s)?;
                let k = find_class(p, skeleton, &sub)
                    .ok_or_else(|| Error::Inconsistent(format!("skeleton lacks a rank-{s} restriction")))?;
                if !oracle.is_central(k) {
                    return Err(Error::Inconsistent(format!("{} oracle is not closed under subgroups", oracle.kind())));
                }
            }
        }
    }
    if let Some(sum) = sum {
        for &i in &central {
            for &j in &central {
                let joined = circ(r, &skeleton[i], &skeleton[j], sum)?;
                let k = find_class(p, skeleton, &joined)
                    .ok_or_else(|| Error::Inconsistent("skeleton lacks E ∘ C".into()))?;
                if !oracle.is_central(k)
                    || !poset_leq(p, &skeleton[i], &joined)
                    || !poset_leq(p, &skeleton[j], &joined)
                {
                    return Err(Error::Inconsistent("central objects are not closed under ∘".into()));
                }
            }
        }
    }
    let is_max = |m: usize| central.iter().all(|&c| poset_leq(p, &skeleton[c], &skeleton[m]));
    let maxima: Vec<usize> = central.iter().copied().filter(|&m| is_max(m)).collect();
    let maximum = *maxima.first().ok_or_else(|| Error::Inconsistent("no maximal central object".into()))?;
    if maxima.iter().any(|&m| !isomorphic(p, &skeleton[m], &skeleton[maximum])) {
        return Err(Error::Inconsistent("maximal central object is not unique".into()));
    }
    Ok(CentralPoset { central, maximum, rank: skeleton[maximum].rank })
}

/// Is `A_R` equivalent to `A_{H_C}` through `(V ⊆ C) ↦ (V, g|_V)`?
/// Checks essential surjectivity on the skeleton and that each
/// `Hom((V, g|V), (W, g|W))` has exactly as many maps as `V ⊆ W` inclusions.
pub fn defect_zero_category_check(r: &UnstableAlgebra, skeleton: &[RectorPair], center: &RectorPair) -> Result<bool> {
    let p = r.ring().prime();
    let subs = invariants::subspaces(p, center.rank);
    let mut image = Vec::new();
    for u in &subs {
        let alpha: Matrix = (0..center.rank).map(|i| u.iter().map(|v| v[i]).collect()).collect();
        image.push((u.clone(), center.restrict(r, &alpha, u.len())?));
    }
    for obj in skeleton {
        if !image.iter().any(|(_, q)| isomorphic(p, q, obj)) {
            return Ok(false);
        }
    }
    for (u, a) in &image {
        for (w, b) in &image {
            let expected = usize::from(invariants::subspace_le(p, u, w));
            if morphisms(p, a, b).len() != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
