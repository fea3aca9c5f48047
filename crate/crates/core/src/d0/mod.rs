//! Duflot data, the central essential ideal and bounds for the topological
//! nilpotence degree `d₀`.
//!
//! Upper bounds come from `e + reg` over components of minimal depth; exact
//! values only come from the interval calculus in [`calculus`].

mod calculus;

pub use calculus::{builtin_atoms, d0_calculus, d0_derivation, parse_expr, Atom, D0Expr, Interval};

use crate::error::{Error, Result};
use crate::fpalg::linalg::{self, Matrix};
use crate::fpalg::{shift_element, Element, GradedRing, HilbertSeries, Ideal};
use crate::homology::{self, Degree, GradedModule, HomologicalInvariants};
use crate::rector::{coaction_factor, target, Coaction, RectorPair};
use crate::steenrod::{self, Op, UnstableAlgebra};
use serde::Serialize;

/// One generator of the image of `g : R → H_C`, with its lift to `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuflotGenerator {
    /// Index of the generator of `R` lifting this image generator.
    pub lift: usize,
    pub name: String,
    pub degree: u32,
    pub exterior: bool,
    /// `j` with degree `2^j` (p = 2) or `2p^j` (odd p); `None` for exterior classes.
    pub exponent: Option<u32>,
    /// Contribution `a` to `e(R) = Σ (a − 1)`.
    pub a: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuflotData {
    pub prime: u32,
    pub center_rank: usize,
    pub generators: Vec<DuflotGenerator>,
    /// Exponents of the polynomial part, largest first.
    pub exponents: Vec<u32>,
    pub e: u32,
    /// The Duflot algebra is polynomial (no exterior image classes).
    pub polynomial: bool,
}

impl DuflotData {
    /// Lifts in `R` of the image generators.
    pub fn lifts(&self, r: &UnstableAlgebra) -> Vec<Element> {
        self.generators.iter().map(|g| r.ring().gen(g.lift)).collect()
    }
}

/// Products of `gens` of total degree `d`, evaluated in `h`.
fn products(h: &UnstableAlgebra, gens: &[(Element, u32)], d: u32) -> Vec<Element> {
    let free = GradedRing::new(
        h.ring().prime(),
        gens.iter().enumerate().map(|(i, (_, deg))| (format!("k{i}"), *deg)).collect(),
    )
    .expect("distinct names, positive degrees");
    let images: Vec<Element> = gens.iter().map(|(e, _)| e.clone()).collect();
    free.monomials_of_degree(d)
        .into_iter()
        .map(|m| h.algebra().normal_form(&free.substitute(&free.monomial(m, 1), &images, h.ring())))
        .collect()
}

fn span_rank(h: &UnstableAlgebra, elems: &[Element], d: u32) -> usize {
    let m: Matrix = elems.iter().map(|e| h.algebra().coordinates(e, d)).collect();
    linalg::rank(h.ring().prime(), &m)
}

fn exponent(n: u32, base: u32) -> Option<u32> {
    let mut j = 0;
    let mut q = 1;
    while q < n {
        q *= base;
        j += 1;
    }
    (q == n).then_some(j)
}

/// Reads the Borel structure of `im(g) ⊆ H_C` and computes `e(R)`.
///
/// Minimal generators are extracted from the images of `R`'s generators, so
/// each lift is a generator of `R`. The shape is checked by counting
/// generators, comparing Hilbert functions with the free algebra, and
/// requiring `H_C` to be finite over the image; `e(R)` is cross-checked
/// against the top degree of `H_C / (image)`.
pub fn duflot_data(r: &UnstableAlgebra, center: &RectorPair) -> Result<DuflotData> {
    let p = r.ring().prime();
    let c = center.rank;
    let h = target(p, c);
    let mut order: Vec<usize> = (0..r.ring().ngens()).collect();
    order.sort_by_key(|&i| r.ring().gens()[i].degree);
    let mut kept: Vec<(Element, u32)> = Vec::new();
    let mut lifts = Vec::new();
    for i in order {
        let img = h.algebra().normal_form(&center.images[i]);
        if img.is_zero() {
            continue;
        }
        let d = r.ring().gens()[i].degree;
        let mut span = products(&h, &kept, d);
        let before = span_rank(&h, &span, d);
        span.push(img.clone());
        if span_rank(&h, &span, d) > before {
            kept.push((img, d));
            lifts.push(i);
        }
    }
    let shape = |msg: String| Error::Inconsistent(format!("image is not of Borel shape: {msg}"));
    let exterior = kept.iter().filter(|(_, d)| !p.is_two() && d % 2 == 1).count();
    let poly = kept.len() - exterior;
    if poly != c {
        return Err(shape(format!("{poly} polynomial generators for a center of rank {c}")));
    }
    let mut generators = Vec::new();
    let mut paired = 0;
    for (&(_, d), &i) in kept.iter().zip(&lifts) {
        let odd = !p.is_two() && d % 2 == 1;
        let (exp, a) = if p.is_two() {
            let j = exponent(d, 2).ok_or_else(|| shape(format!("degree {d} is not a power of 2")))?;
            (Some(j), d)
        } else if odd {
            if d != 1 {
                return Err(shape(format!("exterior class in degree {d}")));
            }
            (None, 1)
        } else {
            let j = exponent(d / 2, p.get()).ok_or_else(|| shape(format!("degree {d} is not 2p^j")))?;
            // Each exterior class x pairs with its Bockstein, a degree-2 class with a = 1.
            if d == 2 && paired < exterior {
                paired += 1;
                (Some(j), 1)
            } else {
                (Some(j), d)
            }
        };
        generators.push(DuflotGenerator {
            lift: i,
            name: r.ring().gens()[i].name.clone(),
            degree: d,
            exterior: odd,
            exponent: exp,
            a,
        });
    }
    if paired < exterior {
        return Err(shape("exterior classes without Bocksteins".into()));
    }
    let free = GradedRing::new(p, kept.iter().enumerate().map(|(i, (_, d))| (format!("k{i}"), *d)).collect())?;
    let bound = kept.iter().map(|(_, d)| *d).sum::<u32>().min(24) + 1;
    for d in 1..=bound {
        let expected = free.monomials_of_degree(d).len();
        if span_rank(&h, &products(&h, &kept, d), d) != expected {
            return Err(shape(format!("image is not free in degree {d}")));
        }
    }
    let e: u32 = generators.iter().map(|g| g.a - 1).sum();
    let fiber = h.algebra().quotient(&kept.iter().map(|(x, _)| x.clone()).collect::<Vec<_>>())?;
    match fiber.top_degree() {
        Some(t) if t == e => {}
        Some(t) => return Err(Error::CrossCheck(format!("e(R) = {e} but H_C / (image) has top degree {t}"))),
        None => return Err(shape("H_C is not finite over the image".into())),
    }
    let bockstein = |g: &DuflotGenerator| !p.is_two() && g.a == 1;
    let mut exponents: Vec<u32> =
        generators.iter().filter(|g| !g.exterior && !bockstein(g)).filter_map(|g| g.exponent).collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    Ok(DuflotData { prime: p.get(), center_rank: c, generators, exponents, e, polynomial: exterior == 0 })
}

/// A map `R → T` into a component above the center.
#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub target: UnstableAlgebra,
    pub images: Vec<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CEssData {
    /// Generators of the ideal; `whole` means the unit ideal.
    #[serde(skip)]
    pub ideal: Ideal,
    pub whole: bool,
    pub zero: bool,
    pub hilbert: HilbertSeries,
    pub dimension: Option<usize>,
    pub depth: Option<usize>,
    pub cohen_macaulay: bool,
    pub components: Vec<String>,
}

/// Intersection of the kernels of the component maps; `R` itself when there are none.
pub fn cess(r: &UnstableAlgebra, components: &[Component]) -> Result<CEssData> {
    let a = r.algebra();
    let mut ideal: Option<Ideal> = None;
    for comp in components {
        if !steenrod::check_a_linearity(r, &comp.target, &comp.images)? {
            return Err(Error::Inconsistent(format!("component map to {} is not A-linear", comp.name)));
        }
        let k = a.kernel_of_ring_map(&comp.images, comp.target.algebra())?;
        ideal = Some(match ideal {
            None => k,
            Some(i) => a.intersect_ideals(&i, &k),
        });
    }
    let names = components.iter().map(|c| c.name.clone()).collect();
    let Some(ideal) = ideal else {
        let inv = homology::analyze_algebra(a, None)?;
        return Ok(CEssData {
            ideal: Ideal::new(vec![r.ring().one()]),
            whole: true,
            zero: false,
            hilbert: a.hilbert_series(),
            dimension: Some(inv.dimension),
            depth: Some(inv.depth),
            cohen_macaulay: inv.cohen_macaulay,
            components: names,
        });
    };
    let ideal = a.minimalize(&ideal);
    if ideal.is_zero() {
        return Ok(CEssData {
            ideal,
            whole: false,
            zero: true,
            hilbert: HilbertSeries::new(Default::default(), Vec::new()),
            dimension: None,
            depth: None,
            cohen_macaulay: false,
            components: names,
        });
    }
    let hilbert = a.hilbert_series().minus(&a.quotient(&ideal.gens)?.hilbert_series());
    let inv = homology::analyze_module(&GradedModule::from_ideal(a, &ideal.gens)?, None)?;
    if hilbert.pole_order() != inv.dimension {
        return Err(Error::CrossCheck(format!(
            "CEss Hilbert series has pole order {} but the resolution gives dimension {}",
            hilbert.pole_order(),
            inv.dimension
        )));
    }
    Ok(CEssData {
        ideal,
        whole: false,
        zero: false,
        hilbert,
        dimension: Some(inv.dimension),
        depth: Some(inv.depth),
        cohen_macaulay: inv.cohen_macaulay,
        components: names,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EIndec {
    /// Top degree of `CEss / (lifts)·CEss`.
    pub direct: Degree,
    /// `e(R) + a_c(R) + c`.
    pub formula: Degree,
    /// The two routes were required to agree (polynomial Duflot algebra).
    pub checked: bool,
    /// `CEss` is free over the Duflot algebra, by Hilbert series.
    pub free_over_duflot: Option<bool>,
}

/// `e_indec(CEss(R))`, computed directly and from local cohomology.
///
/// With a polynomial Duflot algebra the two must agree and `CEss` must be
/// free over it; a mismatch is reported as a cross-check failure.
pub fn e_indec(
    r: &UnstableAlgebra,
    cess: &CEssData,
    duflot: &DuflotData,
    invariants: &HomologicalInvariants,
) -> Result<EIndec> {
    if cess.zero {
        return Ok(EIndec {
            direct: Degree::MinusInfinity,
            formula: Degree::MinusInfinity,
            checked: duflot.polynomial,
            free_over_duflot: None,
        });
    }
    let a = r.algebra();
    let lifts = duflot.lifts(r);
    let q = if cess.whole {
        a.quotient(&lifts)?.hilbert_series()
    } else {
        let products: Vec<Element> =
            lifts.iter().flat_map(|l| cess.ideal.gens.iter().map(move |g| a.mul(l, g))).collect();
        a.quotient(&products)?.hilbert_series().minus(&a.quotient(&cess.ideal.gens)?.hilbert_series())
    };
    let top = match (q.pole_order(), q.top_degree()) {
        (0, Some(t)) => t as i64,
        _ => return Err(Error::CrossCheck("indecomposables of CEss are not finite".into())),
    };
    let c = duflot.center_rank;
    let formula = invariants.local_cohomology.get(c).shift(duflot.e as i64 + c as i64);
    let direct = Degree::Finite(top);
    let free = if duflot.polynomial {
        let n = top as usize + duflot.generators.iter().map(|g| g.degree as usize).sum::<usize>() + 6;
        let b = HilbertSeries::new([(0u32, 1i64)].into(), duflot.generators.iter().map(|g| g.degree).collect());
        let (qc, bc, cc) = (q.coefficients(n), b.coefficients(n), cess.hilbert.coefficients(n));
        Some((0..n).all(|k| (0..=k).map(|i| qc[i] * bc[k - i]).sum::<i64>() == cc[k]))
    } else {
        None
    };
    if duflot.polynomial && (direct != formula || free == Some(false)) {
        return Err(Error::CrossCheck(format!(
            "e_indec {direct} directly, {formula} from e + a_c + c; free over Duflot algebra: {free:?}"
        )));
    }
    Ok(EIndec { direct, formula, checked: duflot.polynomial, free_over_duflot: free })
}

/// Largest degree `≤ window` carrying a nonzero primitive of `CEss` under the coaction.
pub fn e_prim(r: &UnstableAlgebra, cess: &CEssData, coaction: &Coaction, window: u32) -> Result<Degree> {
    if cess.zero {
        return Ok(Degree::MinusInfinity);
    }
    let p = r.ring().prime();
    let tensor = coaction_factor(p, coaction.center.rank).tensor(r)?;
    let t = tensor.algebra();
    let nc = tensor.ring().ngens() - r.ring().ngens();
    let total = tensor.ring().ngens();
    let mut best = Degree::MinusInfinity;
    for d in 0..=window {
        let basis = cess_basis(r, cess, d);
        if basis.is_empty() {
            continue;
        }
        let cols: Vec<Vec<u32>> = basis
            .iter()
            .map(|v| {
                let psi = r.ring().substitute(v, &coaction.images, t.ring());
                t.coordinates(&t.ring().sub(&psi, &shift_element(v, nc, total)), d)
            })
            .collect();
        let rows = t.dim_in_degree(d);
        let m: Matrix = (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        if rows == 0 || !linalg::kernel(p, &m, basis.len()).is_empty() {
            best = Degree::Finite(d as i64);
        }
    }
    Ok(best)
}

/// A basis of `CEss` in degree `d`.
fn cess_basis(r: &UnstableAlgebra, cess: &CEssData, d: u32) -> Vec<Element> {
    let a = r.algebra();
    let ring = r.ring();
    let spanning: Vec<Element> = if cess.whole {
        a.basis_in_degree(d).into_iter().map(|m| ring.monomial(m, 1)).collect()
    } else {
        cess.ideal
            .gens
            .iter()
            .filter_map(|g| ring.degree(g).filter(|&e| e <= d).map(|e| (g, d - e)))
            .flat_map(|(g, rest)| {
                a.basis_in_degree(rest).into_iter().map(move |m| a.mul(g, &ring.monomial(m, 1)))
            })
            .collect()
    };
    let mut echelon = linalg::EchelonBasis::new(ring.prime(), a.dim_in_degree(d));
    spanning.into_iter().filter(|v| echelon.insert(&a.coordinates(v, d))).collect()
}

/// A component `T_E(R; f)` with its own center, fed to the upper bound.
#[derive(Clone, Debug)]
pub struct BoundInput {
    pub name: String,
    pub algebra: UnstableAlgebra,
    pub center: RectorPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCertificate {
    pub name: String,
    pub center_rank: usize,
    pub depth: usize,
    pub qualifies: bool,
    pub e: Option<u32>,
    pub reg: Option<Degree>,
    pub value: Option<i64>,
    pub polynomial_duflot: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub bound: i64,
    pub witness: String,
    pub components: Vec<ComponentCertificate>,
}

impl UpperBound {
    pub fn witness_certificate(&self) -> &ComponentCertificate {
        self.components.iter().find(|c| c.name == self.witness).expect("witness is a component")
    }
}

/// `max e(T) + reg(T)` over components with `depth(T) = c(T)`.
///
/// The first input is `R` with its center; the rest are the components
/// strictly above it. For finite groups every regularity must be 0.
pub fn d0_upper_bound(inputs: &[BoundInput], finite_group: bool) -> Result<UpperBound> {
    let mut components = Vec::new();
    let mut best: Option<(i64, String)> = None;
    for input in inputs {
        let inv = homology::analyze_algebra(input.algebra.algebra(), None)?;
        let c = input.center.rank;
        let qualifies = inv.depth == c;
        let mut cert = ComponentCertificate {
            name: input.name.clone(),
            center_rank: c,
            depth: inv.depth,
            qualifies,
            e: None,
            reg: Some(inv.regularity),
            value: None,
            polynomial_duflot: None,
        };
        if finite_group && inv.regularity != Degree::Finite(0) {
            return Err(Error::CrossCheck(format!("{} has regularity {}, not 0", input.name, inv.regularity)));
        }
        if qualifies {
            let duflot = duflot_data(&input.algebra, &input.center)?;
            let reg = inv
                .regularity
                .finite()
                .ok_or_else(|| Error::MissingData(format!("{} has no regularity", input.name)))?;
            let value = duflot.e as i64 + reg;
            cert.e = Some(duflot.e);
            cert.value = Some(value);
            cert.polynomial_duflot = Some(duflot.polynomial);
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, input.name.clone()));
            }
        }
        components.push(cert);
    }
    let (bound, witness) =
        best.ok_or_else(|| Error::MissingData("no component has depth equal to its center rank".into()))?;
    Ok(UpperBound { bound, witness, components })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSpaceBound {
    pub bound: u32,
    /// Polynomial generators.
    pub free: Vec<String>,
    /// Truncated generators with their truncation heights.
    pub truncated: Vec<(String, u32)>,
    /// Exterior generators (odd p).
    pub exterior: Vec<String>,
}

/// Top degree `d` of the truncated part of `F[x] ⊗ F[y]/(y^{p^a}) (⊗ Λ(y'))`.
///
/// At odd `p`, exterior generators with a nonzero Bockstein are rejected.
pub fn hspace_bound(r: &UnstableAlgebra) -> Result<HSpaceBound> {
    let ring = r.ring();
    let p = ring.prime();
    let n = ring.ngens();
    let mut height: Vec<Option<u32>> = vec![None; n];
    for rel in &r.algebra().relations().gens {
        let bad = || Error::NotHSpaceShape(format!("relation {} is not a power of a generator", ring.format(rel)));
        if rel.len() != 1 {
            return Err(bad());
        }
        let (m, _) = rel.terms().iter().next().unwrap();
        let support: Vec<usize> = m.support().collect();
        if support.len() != 1 {
            return Err(bad());
        }
        let g = support[0];
        let h = m.0[g];
        if ring.gens()[g].odd || exponent(h, p.get()).is_none_or(|j| j == 0) || height[g].is_some() {
            return Err(bad());
        }
        height[g] = Some(h);
    }
    let mut out = HSpaceBound { bound: 0, free: Vec::new(), truncated: Vec::new(), exterior: Vec::new() };
    let mut free_gens = Vec::new();
    for (i, g) in ring.gens().iter().enumerate() {
        if g.odd {
            if !r.generator_value(i, Op::Beta).is_zero() {
                return Err(Error::NotHSpaceShape(format!(
                    "exterior generator {} has a nonzero Bockstein; only k = 0 is supported",
                    g.name
                )));
            }
            out.exterior.push(g.name.clone());
            out.bound += g.degree;
        } else if let Some(h) = height[i] {
            out.truncated.push((g.name.clone(), h));
            out.bound += g.degree * (h - 1);
        } else {
            out.free.push(g.name.clone());
            free_gens.push(ring.gen(i));
        }
    }
    let top = r.algebra().quotient(&free_gens)?.top_degree();
    if top != Some(out.bound) {
        return Err(Error::CrossCheck(format!("formula gives {} but the truncated part has top degree {top:?}", out.bound)));
    }
    Ok(out)
}
