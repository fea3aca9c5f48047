use super::module::{submodule_contains, syzygies, Column, GradedModule};
use super::resolution::{degree_of, minimal_free_resolution, BettiTable, Resolution};
use crate::error::{Error, Result};
use crate::fpalg::{Element, Ideal, PresentedAlgebra};
use serde::{Serialize, Serializer};
use std::fmt;

/// An integer degree or `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(x) => Some(x),
            Degree::MinusInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    /// `self + n`, with `-∞ + n = -∞`.
    pub fn shift(self, n: i64) -> Degree {
        match self {
            Degree::Finite(x) => Degree::Finite(x + n),
            d => d,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::MinusInfinity => s.serialize_str("-inf"),
            Degree::Finite(x) => s.serialize_i64(*x),
        }
    }
}

/// Top degrees `a_i` of the local cohomology modules `H^i_m(M)`, `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyProfile {
    pub a: Vec<Degree>,
}

impl LocalCohomologyProfile {
    pub fn get(&self, i: usize) -> Degree {
        self.a.get(i).copied().unwrap_or(Degree::MinusInfinity)
    }

    /// Smallest index with `H^i_m ≠ 0`.
    pub fn depth(&self) -> Option<usize> {
        self.a.iter().position(|d| d.is_finite())
    }

    /// Largest index with `H^i_m ≠ 0`.
    pub fn dimension(&self) -> Option<usize> {
        self.a.iter().rposition(|d| d.is_finite())
    }

    /// `sup_i (a_i + i)`.
    pub fn regularity(&self) -> Degree {
        self.a.iter().enumerate().map(|(i, d)| d.shift(i as i64)).max().unwrap_or(Degree::MinusInfinity)
    }
}

/// Rows of a differential read as the columns of its dual.
fn transpose(cols: &[Column], rows: usize) -> Vec<Column> {
    (0..rows).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect()
}

/// Initial degree of `Ext^j_S(M, S)` from the dual of the resolution.
fn ext_indegree(res: &Resolution, j: usize) -> Degree {
    let cover = res.cover();
    let pd = res.projective_dimension();
    if j > pd || res.is_zero_module() {
        return Degree::MinusInfinity;
    }
    let dual = |i: usize| -> Vec<i64> { res.degrees()[i].iter().map(|d| -d).collect() };
    let shifts = dual(j);
    let rank = shifts.len();
    let kernel: Vec<Column> = if j == pd {
        (0..rank)
            .map(|k| {
                let mut c = vec![Element::zero(); rank];
                c[k] = cover.one();
                c
            })
            .collect()
    } else {
        let cols = transpose(&res.maps()[j], rank);
        syzygies(cover, &dual(j + 1), &cols, &shifts)
    };
    let image: Vec<Column> = if j == 0 {
        Vec::new()
    } else {
        transpose(&res.maps()[j - 1], res.degrees()[j - 1].len())
    };
    kernel
        .iter()
        .filter(|k| k.iter().any(|e| !e.is_zero()))
        .filter(|k| !submodule_contains(cover, &shifts, &image, k))
        .filter_map(|k| degree_of(cover, &shifts, k))
        .min()
        .map_or(Degree::MinusInfinity, Degree::Finite)
}

/// `a_i = -σ - indeg Ext^{n-i}_S(M, S)` with `σ` the sum of cover degrees.
pub fn local_cohomology_degrees(res: &Resolution) -> LocalCohomologyProfile {
    let n = res.cover().ngens();
    let sigma: i64 = res.cover().degrees().iter().map(|&d| d as i64).sum();
    let a = (0..=n)
        .map(|i| match ext_indegree(res, n - i) {
            Degree::Finite(x) => Degree::Finite(-sigma - x),
            d => d,
        })
        .collect();
    LocalCohomologyProfile { a }
}

/// Homological invariants of a module over its cover.
#[derive(Clone, Debug, Serialize)]
pub struct HomologicalInvariants {
    pub cover_degrees: Vec<u32>,
    pub betti: BettiTable,
    pub projective_dimension: usize,
    pub depth: usize,
    pub dimension: usize,
    pub local_cohomology: LocalCohomologyProfile,
    pub regularity: Degree,
    /// Regularity from Betti numbers; present only for standard-graded covers.
    pub betti_regularity: Option<i64>,
    pub cohen_macaulay: bool,
}

/// Resolves `m`, verifies exactness up to `bound` (default: top relation
/// degree + 10) and cross-checks depth, dimension and regularity.
pub fn analyze_module(m: &GradedModule, bound: Option<i64>) -> Result<HomologicalInvariants> {
    let n = m.cover().ngens();
    let res = minimal_free_resolution(m, n + 1)?;
    res.verify_exactness(bound.unwrap_or_else(|| res.default_bound()))?;
    let profile = local_cohomology_degrees(&res);
    let depth = res.depth();
    let dimension = res.dimension()?;
    if !res.is_zero_module() && (profile.depth() != Some(depth) || profile.dimension() != Some(dimension)) {
        return Err(Error::CrossCheck(format!(
            "local cohomology profile disagrees with depth {depth} / dimension {dimension}"
        )));
    }
    let regularity = profile.regularity();
    let standard = m.cover().degrees().iter().all(|&d| d == 1);
    let betti = res.betti();
    let betti_regularity = if standard { betti.regularity() } else { None };
    if let Some(r) = betti_regularity {
        if regularity != Degree::Finite(r) {
            return Err(Error::CrossCheck(format!("Betti regularity {r} vs local cohomology {regularity}")));
        }
    }
    Ok(HomologicalInvariants {
        cover_degrees: m.cover().degrees(),
        projective_dimension: res.projective_dimension(),
        betti,
        depth,
        dimension,
        local_cohomology: profile,
        regularity,
        betti_regularity,
        cohen_macaulay: depth == dimension,
    })
}

/// Invariants of an algebra as a module over the polynomial ring on its even generators.
pub fn analyze_algebra(a: &PresentedAlgebra, bound: Option<i64>) -> Result<HomologicalInvariants> {
    let inv = analyze_module(&GradedModule::from_algebra(a)?, bound)?;
    if inv.dimension != a.krull_dimension() {
        return Err(Error::CrossCheck("module dimension differs from Krull dimension".into()));
    }
    Ok(inv)
}

pub fn depth(a: &PresentedAlgebra) -> Result<usize> {
    Ok(analyze_algebra(a, None)?.depth)
}

pub fn regularity(a: &PresentedAlgebra) -> Result<Degree> {
    Ok(analyze_algebra(a, None)?.regularity)
}

pub fn is_cohen_macaulay(a: &PresentedAlgebra) -> Result<bool> {
    Ok(analyze_algebra(a, None)?.cohen_macaulay)
}

/// `((e_1..e_{i-1}) : e_i) = (e_1..e_{i-1})` for every `i`.
pub fn is_regular_sequence(a: &PresentedAlgebra, elems: &[Element]) -> Result<bool> {
    let mut prefix: Vec<Element> = Vec::new();
    for e in elems {
        match a.ring().degree(e) {
            Some(d) if d > 0 => {}
            _ => return Err(Error::Inhomogeneous),
        }
        let j = Ideal::new(prefix.clone());
        if !a.ideals_equal(&a.colon(&j, e), &j) {
            return Ok(false);
        }
        prefix.push(e.clone());
    }
    Ok(true)
}
