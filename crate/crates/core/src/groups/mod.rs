//! Finite groups: elementary abelian p-subgroups up to conjugacy, the Quillen
//! category, `O_{p'}`, the cohomological center and a Betti-number oracle.

mod cohomology;
mod perm;

pub use cohomology::{betti_numbers, betti_numbers_with_cap, DEFAULT_BETTI_ORDER_CAP};
pub use perm::{Perm, PermGroup, MAX_GROUP_ORDER};

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A conjugacy class of elementary abelian p-subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElAbClass {
    /// Sorted element indices of the canonical representative.
    pub elements: Vec<usize>,
    /// Basis of the representative, fixing coordinates `F_p^rank ≅ E`.
    pub basis: Vec<usize>,
    pub rank: usize,
    pub class_size: usize,
}

impl ElAbClass {
    /// Element with coordinates `v` in the chosen basis.
    pub fn element(&self, g: &PermGroup, v: &[u32]) -> usize {
        self.basis
            .iter()
            .zip(v)
            .fold(0, |acc, (&b, &c)| g.mul(acc, g.pow(b, c as u64)))
    }

    /// Coordinates of every element of E, keyed by element index.
    pub fn coordinates(&self, g: &PermGroup, p: u32) -> BTreeMap<usize, Vec<u32>> {
        let mut out = BTreeMap::new();
        for v in vectors(p, self.rank) {
            out.insert(self.element(g, &v), v);
        }
        out
    }
}

/// Every vector of `F_p^r`, lexicographically.
pub fn vectors(p: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| (0..p).map(move |c| {
                let mut w = v.clone();
                w.push(c);
                w
            }))
            .collect();
    }
    out
}

/// A morphism `E → V` recorded as the images of the basis of `E`.
pub type Morphism = Vec<usize>;

/// Quillen category on conjugacy-class representatives.
#[derive(Clone, Debug)]
pub struct QuillenCat {
    pub objects: Vec<ElAbClass>,
    /// `hom[(i, j)]`: distinct maps from object `i` to object `j`.
    pub hom: BTreeMap<(usize, usize), Vec<Morphism>>,
}

impl QuillenCat {
    pub fn hom_count(&self, from: usize, to: usize) -> usize {
        self.hom.get(&(from, to)).map_or(0, Vec::len)
    }

    /// Every endomorphism is an automorphism.
    pub fn is_ei(&self, g: &PermGroup) -> bool {
        (0..self.objects.len()).all(|i| {
            let e = &self.objects[i];
            self.hom[&(i, i)].iter().all(|m| g.generate(m).len() == e.elements.len())
        })
    }

    /// Preorder: `i ≤ j` when some morphism `i → j` exists.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.hom_count(i, j) > 0
    }

    pub fn max_rank(&self) -> usize {
        self.objects.iter().map(|o| o.rank).max().unwrap_or(0)
    }
}

fn is_elementary_abelian(g: &PermGroup, p: usize, set: &[usize]) -> bool {
    set.iter().all(|&a| g.pow(a, p as u64) == 0 && set.iter().all(|&b| g.commute(a, b)))
}

/// Greedy basis of an elementary abelian subgroup given as a sorted set.
fn elab_basis(g: &PermGroup, set: &[usize]) -> Vec<usize> {
    let mut basis = Vec::new();
    let mut span = g.trivial();
    for &x in set {
        if span.binary_search(&x).is_err() {
            basis.push(x);
            span = g.generate(&basis);
        }
    }
    basis
}

fn canonical(g: &PermGroup, set: &[usize]) -> Vec<usize> {
    (0..g.order()).map(|x| g.conjugate_set(x, set)).min().unwrap()
}

/// All conjugacy classes of elementary abelian p-subgroups, sorted by rank.
pub fn elementary_abelian_classes(g: &PermGroup, p: u32) -> Vec<ElAbClass> {
    let p = p as usize;
    let order_p: Vec<usize> = (1..g.order()).filter(|&x| g.element_order(x) == p).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([g.trivial()]);
    seen.insert(g.trivial());
    while let Some(e) = queue.pop_front() {
        *classes.entry(canonical(g, &e)).or_default() += 1;
        for &x in &order_p {
            if e.binary_search(&x).is_ok() || !e.iter().all(|&a| g.commute(a, x)) {
                continue;
            }
            let mut gens = elab_basis(g, &e);
            gens.push(x);
            let bigger = g.generate(&gens);
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut out: Vec<ElAbClass> = classes
        .into_iter()
        .map(|(elements, class_size)| {
            debug_assert!(is_elementary_abelian(g, p, &elements));
            let basis = elab_basis(g, &elements);
            ElAbClass { rank: basis.len(), basis, elements, class_size }
        })
        .collect();
    out.sort_by(|a, b| (a.rank, &a.elements).cmp(&(b.rank, &b.elements)));
    out
}

/// Index of the class containing a conjugate of `set`.
pub fn class_of(g: &PermGroup, classes: &[ElAbClass], set: &[usize]) -> Option<usize> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let c = canonical(g, &sorted);
    classes.iter().position(|k| k.elements == c)
}

/// Morphisms `E → V` induced by conjugation, deduplicated.
pub fn conjugation_maps(g: &PermGroup, e: &ElAbClass, v: &ElAbClass) -> Vec<Morphism> {
    let mut out: BTreeSet<Morphism> = BTreeSet::new();
    for x in 0..g.order() {
        let img: Morphism = e.basis.iter().map(|&b| g.conj(x, b)).collect();
        if img.iter().all(|y| v.elements.binary_search(y).is_ok()) {
            out.insert(img);
        }
    }
    out.into_iter().collect()
}

pub fn quillen_category(g: &PermGroup, p: u32) -> QuillenCat {
    let objects = elementary_abelian_classes(g, p);
    let mut hom = BTreeMap::new();
    for (i, e) in objects.iter().enumerate() {
        for (j, v) in objects.iter().enumerate() {
            if e.rank <= v.rank {
                hom.insert((i, j), conjugation_maps(g, e, v));
            } else {
                hom.insert((i, j), Vec::new());
            }
        }
    }
    QuillenCat { objects, hom }
}

fn coprime(n: usize, p: usize) -> bool {
    !n.is_multiple_of(p)
}

/// The largest normal subgroup of order prime to `p`.
pub fn o_p_prime(g: &PermGroup, p: u32) -> Vec<usize> {
    let p = p as usize;
    let mut gens: Vec<usize> = Vec::new();
    for x in 1..g.order() {
        if coprime(g.element_order(x), p) {
            let closure = g.normal_closure(&[x]);
            if coprime(closure.len(), p) {
                gens.push(x);
            }
        }
    }
    g.normal_closure(&gens)
}

/// Mislin's cohomological center: the class of a Sylow p-subgroup of the
/// preimage of `Ω₁ Z(G / O_{p'}(G))`.
pub fn cohomological_center(g: &PermGroup, p: u32) -> ElAbClass {
    let o = o_p_prime(g, p);
    let in_o = |x: usize| o.binary_search(&x).is_ok();
    let preimage: Vec<usize> = (0..g.order())
        .filter(|&x| {
            in_o(g.pow(x, p as u64))
                && (0..g.order()).all(|h| in_o(g.mul(g.mul(x, h), g.mul(g.inv(x), g.inv(h)))))
        })
        .collect();
    let quotient = preimage.len() / o.len();
    let mut rank = 0;
    let mut q = quotient;
    while q > 1 {
        q /= p as usize;
        rank += 1;
    }
    let classes = elementary_abelian_classes(g, p);
    let in_pre = |x: &usize| preimage.binary_search(x).is_ok();
    classes
        .into_iter()
        .find(|c| c.rank == rank && c.elements.iter().all(in_pre))
        .expect("the Sylow subgroup of the preimage is elementary abelian")
}

/// Maximal rank of an elementary abelian p-subgroup.
pub fn p_rank(g: &PermGroup, p: u32) -> usize {
    elementary_abelian_classes(g, p).iter().map(|c| c.rank).max().unwrap_or(0)
}

/// p-rank minus the rank of the cohomological center.
pub fn p_central_defect(g: &PermGroup, p: u32) -> usize {
    p_rank(g, p) - cohomological_center(g, p).rank
}

/// `C_G(E)`.
pub fn centralizer(g: &PermGroup, e: &[usize]) -> crate::Result<Vec<usize>> {
    g.centralizer(e)
}

/// Constructs a standard group from a name such as `D8`, `Q8`, `C4`, `S3`,
/// `E2^2` or `C3xC3`.
pub fn named_group(name: &str) -> crate::Result<PermGroup> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('x') {
        return Ok(named_group(a)?.direct_product(&named_group(b)?));
    }
    let bad = || crate::Error::Parse(format!("unknown group {name}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if name == "Q8" {
        return Ok(PermGroup::quaternion());
    }
    if let Some(rest) = name.strip_prefix('E') {
        let (p, r) = rest.split_once('^').ok_or_else(bad)?;
        return Ok(PermGroup::elementary_abelian(num(p)?, num(r)?));
    }
    let (head, n) = name.split_at(1);
    let n = num(n)?;
    if n == 0 {
        return Err(bad());
    }
    match head {
        "C" | "Z" => Ok(PermGroup::cyclic(n)),
        "D" if n % 2 == 0 && n >= 4 => Ok(PermGroup::dihedral(n / 2)),
        "S" => Ok(PermGroup::symmetric(n)),
        _ => Err(bad()),
    }
}
