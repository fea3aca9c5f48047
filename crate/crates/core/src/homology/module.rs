use crate::error::{Error, Result};
use crate::fpalg::gb::{Engine, Vector};
use crate::fpalg::linalg;
use crate::fpalg::{Element, GradedRing, Monomial, PresentedAlgebra};
use std::collections::BTreeMap;

/// Column of a presentation or differential: one cover element per basis vector.
pub type Column = Vec<Element>;

/// A finitely presented graded module over a polynomial cover `S`.
///
/// `relations` are columns expressed in the free basis with the given degrees.
#[derive(Clone, Debug)]
pub struct GradedModule {
    cover: GradedRing,
    gen_degrees: Vec<i64>,
    relations: Vec<Column>,
}

impl GradedModule {
    pub fn new(cover: GradedRing, gen_degrees: Vec<i64>, relations: Vec<Column>) -> Result<Self> {
        if cover.has_odd() {
            return Err(Error::Unsupported("module covers must be polynomial".into()));
        }
        for col in &relations {
            if col.len() != gen_degrees.len() {
                return Err(Error::RingMismatch("relation column has the wrong length".into()));
            }
            for e in col {
                cover.check(e)?;
            }
            column_degree(&cover, &gen_degrees, col)?;
        }
        let relations = relations.into_iter().filter(|c| c.iter().any(|e| !e.is_zero())).collect();
        Ok(GradedModule { cover, gen_degrees, relations })
    }

    /// Free module with the given generator degrees.
    pub fn free(cover: GradedRing, gen_degrees: Vec<i64>) -> Result<Self> {
        GradedModule::new(cover, gen_degrees, Vec::new())
    }

    /// `S / I`.
    pub fn cyclic(cover: GradedRing, ideal: Vec<Element>) -> Result<Self> {
        let rels = ideal.into_iter().map(|g| vec![g]).collect();
        GradedModule::new(cover, vec![0], rels)
    }

    /// A presented algebra as a module over the polynomial ring on its even
    /// generators; exterior monomials on the odd generators form the basis.
    pub fn from_algebra(a: &PresentedAlgebra) -> Result<Self> {
        let ring = a.ring();
        let even = ring.even_indices();
        let odd = ring.odd_indices();
        let cover = GradedRing::polynomial(
            ring.prime(),
            even.iter().map(|&i| (ring.gens()[i].name.clone(), ring.gens()[i].degree)).collect(),
        );
        let subsets: Vec<u64> = (0..1u64 << odd.len()).collect();
        let subset_degree = |s: u64| -> i64 {
            odd.iter().enumerate().filter(|(k, _)| s >> k & 1 == 1).map(|(_, &i)| ring.gens()[i].degree as i64).sum()
        };
        let gen_degrees: Vec<i64> = subsets.iter().map(|&s| subset_degree(s)).collect();
        let index: BTreeMap<u64, usize> = subsets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let layout = Layout { even, odd, index };
        let mut relations = Vec::new();
        for g in &a.groebner_basis().elements {
            for &u in &subsets {
                let col = layout.column(&cover, g, u);
                if col.iter().any(|e| !e.is_zero()) {
                    relations.push(col);
                }
            }
        }
        GradedModule::new(cover, gen_degrees, relations)
    }

    /// An ideal of `a`, presented over the same cover as [`GradedModule::from_algebra`].
    pub fn from_ideal(a: &PresentedAlgebra, ideal: &[Element]) -> Result<Self> {
        let ambient = GradedModule::from_algebra(a)?;
        let ring = a.ring();
        let odd = ring.odd_indices();
        let layout = Layout {
            even: ring.even_indices(),
            index: (0..1u64 << odd.len()).enumerate().map(|(k, s)| (s, k)).collect(),
            odd,
        };
        let cover = ambient.cover.clone();
        let shifts = ambient.gen_degrees.clone();
        let mut gens = Vec::new();
        let mut degrees = Vec::new();
        for f in ideal {
            let f = a.normal_form(f);
            if f.is_zero() {
                continue;
            }
            for &u in layout.index.keys() {
                let col = layout.column(&cover, &f, u);
                if let Some(d) = column_degree(&cover, &shifts, &col)? {
                    gens.push(col);
                    degrees.push(d);
                }
            }
        }
        let m = gens.len();
        let mut cols = gens;
        let mut col_degrees = degrees.clone();
        for r in &ambient.relations {
            col_degrees.push(column_degree(&cover, &shifts, r)?.unwrap_or(0));
            cols.push(r.clone());
        }
        let relations = syzygies(&cover, &shifts, &cols, &col_degrees)
            .into_iter()
            .map(|c| c[..m].to_vec())
            .filter(|c| c.iter().any(|e| !e.is_zero()))
            .collect();
        GradedModule::new(cover, degrees, relations)
    }

    pub fn cover(&self) -> &GradedRing {
        &self.cover
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[Column] {
        &self.relations
    }

    /// Largest degree of a relation column, or of a generator when there are none.
    pub fn top_relation_degree(&self) -> i64 {
        self.relations
            .iter()
            .filter_map(|c| column_degree(&self.cover, &self.gen_degrees, c).ok().flatten())
            .chain(self.gen_degrees.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// `dim_{F_p} M_d` by linear algebra on the presentation.
    pub fn dim_in_degree(&self, d: i64) -> usize {
        let basis = free_basis(&self.cover, &self.gen_degrees, d);
        let rows = image_rows(&self.cover, &self.relations, &relation_degrees(self), d, &basis);
        basis.len() - linalg::rank(self.cover.prime(), &rows)
    }
}

/// Exterior monomials on the odd generators, indexed as free-basis slots.
struct Layout {
    even: Vec<usize>,
    odd: Vec<usize>,
    index: BTreeMap<u64, usize>,
}

impl Layout {
    /// `g · (exterior monomial u)` as a column; sign-free.
    fn column(&self, cover: &GradedRing, g: &Element, u: u64) -> Column {
        let mut col = vec![Element::zero(); self.index.len()];
        for (m, &c) in g.terms() {
            let mut mask = u;
            let mut clash = false;
            for (k, &i) in self.odd.iter().enumerate() {
                if m.0[i] > 1 || (m.0[i] == 1 && u >> k & 1 == 1) {
                    clash = true;
                }
                if m.0[i] == 1 {
                    mask |= 1 << k;
                }
            }
            if clash {
                continue;
            }
            let s = Monomial(self.even.iter().map(|&i| m.0[i]).collect());
            let slot = self.index[&mask];
            col[slot] = cover.add(&col[slot], &cover.monomial(s, c));
        }
        col
    }
}

fn relation_degrees(m: &GradedModule) -> Vec<i64> {
    m.relations
        .iter()
        .map(|c| column_degree(&m.cover, &m.gen_degrees, c).ok().flatten().unwrap_or(0))
        .collect()
}

/// Degree of a homogeneous column, `None` for the zero column.
pub(crate) fn column_degree(cover: &GradedRing, shifts: &[i64], col: &[Element]) -> Result<Option<i64>> {
    let mut deg = None;
    for (k, e) in col.iter().enumerate() {
        for m in e.terms().keys() {
            let d = cover.monomial_degree(m) as i64 + shifts[k];
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
    }
    Ok(deg)
}

pub(crate) fn engine(cover: &GradedRing, shifts: Vec<i64>, pot: bool) -> Engine {
    let e = Engine::new(cover.prime(), &cover.degrees(), shifts);
    if pot {
        e.with_pot()
    } else {
        e
    }
}

pub(crate) fn to_vector(e: &Engine, col: &[Element], offset: usize) -> Vector {
    e.vector(
        col.iter()
            .enumerate()
            .flat_map(|(k, el)| el.terms().iter().map(move |(m, &c)| (offset + k, m.0.clone(), c))),
    )
}

pub(crate) fn to_column(v: &Vector, offset: usize, len: usize) -> Column {
    let mut maps: Vec<BTreeMap<Monomial, u32>> = vec![BTreeMap::new(); len];
    for (t, &c) in v {
        if t.comp >= offset && t.comp < offset + len {
            maps[t.comp - offset].insert(Monomial(t.mono.clone()), c);
        }
    }
    maps.into_iter().map(Element::from_map).collect()
}

/// Monomial basis `(component, monomial)` of a free module in degree `d`.
pub(crate) fn free_basis(cover: &GradedRing, shifts: &[i64], d: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (k, &s) in shifts.iter().enumerate() {
        if d >= s {
            for m in cover.monomials_of_degree((d - s) as u32) {
                out.push((k, m));
            }
        }
    }
    out
}

/// Rows spanning the degree-`d` part of the submodule generated by `cols`,
/// in coordinates of `basis`.
pub(crate) fn image_rows(
    cover: &GradedRing,
    cols: &[Column],
    col_degrees: &[i64],
    d: i64,
    basis: &[(usize, Monomial)],
) -> Vec<Vec<u32>> {
    let index: BTreeMap<&(usize, Monomial), usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut rows = Vec::new();
    for (col, &cd) in cols.iter().zip(col_degrees) {
        if d < cd {
            continue;
        }
        for m in cover.monomials_of_degree((d - cd) as u32) {
            let mut row = vec![0u32; basis.len()];
            for (k, e) in col.iter().enumerate() {
                for (mono, &c) in e.terms() {
                    let key = (k, m.mul(mono));
                    if let Some(&i) = index.get(&key) {
                        row[i] = cover.prime().add(row[i], c);
                    }
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Minimal generating set of the submodule spanned by `cols`, processed in
/// increasing degree; returns the kept columns with their degrees.
pub(crate) fn minimal_generators(cover: &GradedRing, shifts: &[i64], cols: Vec<Column>) -> (Vec<Column>, Vec<i64>) {
    let e = engine(cover, shifts.to_vec(), false);
    let mut tagged: Vec<(i64, Column)> = cols
        .into_iter()
        .filter_map(|c| column_degree(cover, shifts, &c).ok().flatten().map(|d| (d, c)))
        .collect();
    tagged.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<Column> = Vec::new();
    let mut degrees = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for (d, c) in tagged {
        let v = to_vector(&e, &c, 0);
        if e.reduce(&v, &basis).is_empty() {
            continue;
        }
        kept.push(c);
        degrees.push(d);
        let gens: Vec<Vector> = kept.iter().map(|k| to_vector(&e, k, 0)).collect();
        basis = e.groebner(&gens);
    }
    (kept, degrees)
}

/// Generators of `{a : Σ a_i cols_i = 0}` in the free module with shifts `col_degrees`.
pub(crate) fn syzygies(cover: &GradedRing, target_shifts: &[i64], cols: &[Column], col_degrees: &[i64]) -> Vec<Column> {
    let r = target_shifts.len();
    let m = cols.len();
    let mut shifts = target_shifts.to_vec();
    shifts.extend_from_slice(col_degrees);
    let e = engine(cover, shifts, true);
    let rows: Vec<Vector> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = to_vector(&e, c, 0);
            let mut unit = vec![Element::zero(); m];
            unit[i] = cover.one();
            v.extend(to_vector(&e, &unit, r));
            v
        })
        .collect();
    e.groebner(&rows)
        .iter()
        .filter(|v| v.keys().next_back().unwrap().comp >= r)
        .map(|v| to_column(v, r, m))
        .collect()
}

/// Does the submodule spanned by `gens` contain `col`?
pub(crate) fn submodule_contains(cover: &GradedRing, shifts: &[i64], gens: &[Column], col: &[Element]) -> bool {
    let e = engine(cover, shifts.to_vec(), false);
    let basis = e.groebner(&gens.iter().map(|g| to_vector(&e, g, 0)).collect::<Vec<_>>());
    e.reduce(&to_vector(&e, col, 0), &basis).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalg::{parse_element, Prime};

    #[test]
    fn exterior_part_becomes_a_free_basis() {
        let ring = GradedRing::new(Prime::new(3).unwrap(), vec![("x", 1), ("y", 2)]).unwrap();
        let a = PresentedAlgebra::free(ring);
        let m = GradedModule::from_algebra(&a).unwrap();
        assert_eq!(m.gen_degrees(), &[0, 1]);
        assert!(m.relations().is_empty());
        assert_eq!(m.cover().ngens(), 1);
    }

    #[test]
    fn module_dimensions_match_the_algebra() {
        let ring = GradedRing::new(Prime::new(3).unwrap(), vec![("x", 1), ("y", 2), ("z", 1)]).unwrap();
        let rel = parse_element(&ring, "x*z").unwrap();
        let a = PresentedAlgebra::new(ring, vec![rel]).unwrap();
        let m = GradedModule::from_algebra(&a).unwrap();
        for d in 0..8 {
            assert_eq!(m.dim_in_degree(d), a.dim_in_degree(d as u32));
        }
    }
}
