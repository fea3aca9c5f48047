use super::module::{
    column_degree, free_basis, image_rows, minimal_generators, syzygies, Column, GradedModule,
};
use crate::error::{Error, Result};
use crate::fpalg::{linalg, Element, GradedRing, HilbertSeries};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub count: usize,
}

/// Graded Betti numbers `β_{i,j}`, nonzero entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.count)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.iter().map(|e| e.i).max().unwrap_or(0)
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.j - e.i as i64).max()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "beta[{},{}] = {}", e.i, e.j, e.count)?;
        }
        Ok(())
    }
}

/// A minimal graded free resolution `F_0 ← F_1 ← …` of a module.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: GradedModule,
    /// Generator degrees of each `F_i`.
    degrees: Vec<Vec<i64>>,
    /// `maps[i]` holds the columns of `F_{i+1} → F_i`.
    maps: Vec<Vec<Column>>,
}

/// Eliminates basis vectors hit by a relation with a unit coefficient.
fn prune(cover: &GradedRing, mut degrees: Vec<i64>, mut cols: Vec<Column>) -> (Vec<i64>, Vec<Column>) {
    let p = cover.prime();
    loop {
        let found = cols.iter().enumerate().find_map(|(ci, c)| {
            c.iter().position(|e| cover.degree(e) == Some(0)).map(|k| (ci, k))
        });
        let Some((ci, k)) = found else { break };
        let pivot = cols.remove(ci);
        let unit = pivot[k].terms().values().next().copied().unwrap();
        let inv = p.inv(unit);
        for c in cols.iter_mut() {
            if c[k].is_zero() {
                continue;
            }
            let factor = cover.scale(&c[k], inv);
            for (x, y) in c.iter_mut().zip(&pivot) {
                *x = cover.sub(x, &cover.mul(&factor, y));
            }
        }
        for c in cols.iter_mut() {
            c.remove(k);
        }
        degrees.remove(k);
        cols.retain(|c| c.iter().any(|e| !e.is_zero()));
    }
    (degrees, cols)
}

/// Minimal free resolution, failing if more than `length_cap` steps are needed.
pub fn minimal_free_resolution(m: &GradedModule, length_cap: usize) -> Result<Resolution> {
    let cover = m.cover();
    let (deg0, rels) = prune(cover, m.gen_degrees().to_vec(), m.relations().to_vec());
    let mut degrees = vec![deg0];
    let mut maps = Vec::new();
    let (mut cols, mut cdeg) = minimal_generators(cover, &degrees[0], rels);
    while !cols.is_empty() {
        if maps.len() >= length_cap {
            return Err(Error::ResolutionCap(length_cap));
        }
        let prev = degrees.last().unwrap().clone();
        let syz = syzygies(cover, &prev, &cols, &cdeg);
        maps.push(cols);
        degrees.push(cdeg.clone());
        let next = minimal_generators(cover, &cdeg, syz);
        cols = next.0;
        cdeg = next.1;
    }
    Ok(Resolution { module: m.clone(), degrees, maps })
}

impl Resolution {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn cover(&self) -> &GradedRing {
        self.module.cover()
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn maps(&self) -> &[Vec<Column>] {
        &self.maps
    }

    pub fn betti(&self) -> BettiTable {
        let mut counts: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            for &j in degs {
                *counts.entry((i, j)).or_insert(0) += 1;
            }
        }
        BettiTable { entries: counts.into_iter().map(|((i, j), count)| BettiEntry { i, j, count }).collect() }
    }

    pub fn projective_dimension(&self) -> usize {
        self.maps.len()
    }

    pub fn is_zero_module(&self) -> bool {
        self.degrees[0].is_empty()
    }

    /// Auslander–Buchsbaum: `depth = n - pd`.
    pub fn depth(&self) -> usize {
        self.cover().ngens() - self.projective_dimension()
    }

    /// Hilbert series `Σ (-1)^i β_{i,j} t^j / Π (1 - t^{d_k})`.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let mut num: BTreeMap<u32, i64> = BTreeMap::new();
        for e in self.betti().entries {
            let j = u32::try_from(e.j).map_err(|_| Error::Unsupported("negative generator degree".into()))?;
            let sign = if e.i % 2 == 0 { 1 } else { -1 };
            *num.entry(j).or_insert(0) += sign * e.count as i64;
        }
        Ok(HilbertSeries::new(num, self.cover().degrees()))
    }

    /// Krull dimension of the module, from the Hilbert series.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_zero_module() {
            return Ok(0);
        }
        Ok(self.hilbert_series()?.pole_order())
    }

    /// Checks `d∘d = 0`, exactness of the complex and that `H_0` has the
    /// dimensions of the original module, degree by degree up to `bound`.
    pub fn verify_exactness(&self, bound: i64) -> Result<()> {
        let cover = self.cover();
        let p = cover.prime();
        for i in 1..self.maps.len() {
            for col in &self.maps[i] {
                let mut acc = vec![Element::zero(); self.degrees[i - 1].len()];
                for (coef, image) in col.iter().zip(&self.maps[i - 1]) {
                    for (a, b) in acc.iter_mut().zip(image) {
                        *a = cover.add(a, &cover.mul(coef, b));
                    }
                }
                if acc.iter().any(|e| !e.is_zero()) {
                    return Err(Error::CrossCheck(format!("d∘d ≠ 0 at step {i}")));
                }
            }
        }
        let low = self.degrees.iter().flatten().copied().min().unwrap_or(0);
        for d in low..=bound {
            let ranks: Vec<usize> = (0..self.maps.len())
                .map(|i| {
                    let basis = free_basis(cover, &self.degrees[i], d);
                    let rows = image_rows(cover, &self.maps[i], &self.degrees[i + 1], d, &basis);
                    linalg::rank(p, &rows)
                })
                .collect();
            let dims: Vec<usize> = self.degrees.iter().map(|g| free_basis(cover, g, d).len()).collect();
            let h0 = dims[0] - ranks.first().copied().unwrap_or(0);
            if h0 != self.module.dim_in_degree(d) {
                return Err(Error::CrossCheck(format!("H_0 has the wrong dimension in degree {d}")));
            }
            for i in 1..self.degrees.len() {
                let out = ranks[i - 1];
                let inc = ranks.get(i).copied().unwrap_or(0);
                if out + inc != dims[i] {
                    return Err(Error::CrossCheck(format!("not exact at F_{i} in degree {d}")));
                }
            }
        }
        Ok(())
    }

    /// Default exactness bound: top relation degree plus ten.
    pub fn default_bound(&self) -> i64 {
        self.module.top_relation_degree() + 10
    }
}

/// Degree of a column relative to the given basis degrees.
pub(crate) fn degree_of(cover: &GradedRing, shifts: &[i64], col: &[Element]) -> Option<i64> {
    column_degree(cover, shifts, col).ok().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalg::{parse_element, Prime};

    fn cover(p: u32, n: usize) -> GradedRing {
        GradedRing::polynomial(Prime::new(p).unwrap(), (1..=n).map(|i| (format!("x{i}"), 1)).collect())
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn residue_field_has_koszul_betti_numbers() {
        for n in 1..=4 {
            let s = cover(2, n);
            let gens: Vec<Element> = (0..n).map(|i| s.gen(i)).collect();
            let m = GradedModule::cyclic(s, gens).unwrap();
            let r = minimal_free_resolution(&m, n + 1).unwrap();
            r.verify_exactness(r.default_bound()).unwrap();
            let b = r.betti();
            for i in 0..=n {
                assert_eq!(b.get(i, i as i64), binomial(n, i));
            }
            assert_eq!(r.depth(), 0);
        }
    }

    #[test]
    fn free_module_resolution() {
        let m = GradedModule::free(cover(3, 2), vec![0]).unwrap();
        let r = minimal_free_resolution(&m, 3).unwrap();
        assert_eq!(r.betti().entries, vec![BettiEntry { i: 0, j: 0, count: 1 }]);
        assert_eq!(r.depth(), 2);
    }

    #[test]
    fn principal_ideal_quotient() {
        let s = cover(2, 2);
        let xy = parse_element(&s, "x1*x2").unwrap();
        let m = GradedModule::cyclic(s, vec![xy]).unwrap();
        let r = minimal_free_resolution(&m, 3).unwrap();
        assert_eq!(
            r.betti().entries,
            vec![BettiEntry { i: 0, j: 0, count: 1 }, BettiEntry { i: 1, j: 2, count: 1 }]
        );
    }

    #[test]
    fn unit_relations_are_pruned() {
        let s = cover(2, 1);
        let one = s.one();
        let x = s.gen(0);
        let m = GradedModule::new(s, vec![1, 0], vec![vec![one, x]]).unwrap();
        let r = minimal_free_resolution(&m, 2).unwrap();
        assert_eq!(r.degrees()[0], vec![0]);
        assert_eq!(r.projective_dimension(), 0);
        r.verify_exactness(6).unwrap();
    }

    #[test]
    fn cap_is_reported() {
        let s = cover(2, 3);
        let gens: Vec<Element> = (0..3).map(|i| s.gen(i)).collect();
        let m = GradedModule::cyclic(s, gens).unwrap();
        assert_eq!(minimal_free_resolution(&m, 2).unwrap_err(), Error::ResolutionCap(2));
    }
}
