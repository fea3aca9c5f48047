//! Consistency checks over a whole catalog.

use super::catalog::{Catalog, CatalogEntry};
use super::commands::Options;
use super::report::{Check, EntryValidation, ValidationReport, VALIDATION_SCHEMA};
use crate::d0::{self, Interval};
use crate::error::{Error, Result};
use crate::fpalg::Element;
use crate::groups;
use crate::invariants;
use crate::rector::{self, target, CentralityOracle, RectorPair, SumMap};

/// Degrees through which Hilbert series are compared with group cohomology.
pub const BETTI_DEGREE: usize = 10;
/// Least degree through which the Steenrod axioms are checked.
pub const AXIOM_DEGREE: u32 = 10;
/// Axiom violations quoted in a failed check.
pub const SHOWN_WITNESSES: usize = 3;
/// Candidate maps allowed per rank in the thorough Rector search.
pub const ENUMERATION_CAP: usize = 1 << 20;

fn check(name: &str, outcome: Result<String>) -> Check {
    match outcome {
        Ok(detail) => Check { name: name.into(), passed: true, detail },
        Err(e) => Check { name: name.into(), passed: false, detail: e.to_string() },
    }
}

pub fn validate_catalog(cat: &Catalog, opts: &Options) -> ValidationReport {
    let entries = cat.entries.iter().map(|e| validate_entry(cat, e, opts)).collect();
    ValidationReport { schema: VALIDATION_SCHEMA, catalog_version: cat.version, thorough: opts.thorough, entries }
}

pub fn validate_entry(cat: &Catalog, e: &CatalogEntry, opts: &Options) -> EntryValidation {
    let mut checks = Vec::new();
    if e.algebra.is_some() {
        checks.push(check("steenrod axioms", steenrod_axioms(e, opts)));
        checks.push(check("rector pairs", rector_pairs(e)));
        checks.push(check("centrality", centrality(e)));
        checks.push(check("components", components(cat, e)));
        if !e.coaction.is_empty() {
            checks.push(check("coaction", e.coaction().map(|_| "A-linear, counital, restricts to the center".into())));
        }
        if e.group.is_some() {
            checks.push(check("betti numbers", betti(e)));
            checks.push(check("quillen category", quillen(e)));
        }
        if opts.thorough {
            checks.push(check("rector enumeration", enumeration(e)));
        }
    }
    if !e.rep.is_empty() {
        checks.push(check("representation", representation(e)));
    }
    if e.atom.is_some() || e.expr.is_some() {
        checks.push(check("d0 data", d0_data(cat, e)));
    }
    if checks.is_empty() {
        checks.push(check("content", Err(Error::MissingData("entry has no ring, representation or d0 data".into()))));
    }
    EntryValidation { id: e.id.clone(), checks }
}

fn steenrod_axioms(e: &CatalogEntry, opts: &Options) -> Result<String> {
    let r = e.require_algebra()?;
    let bound = opts.degree_bound.unwrap_or(r.default_degree_bound().max(AXIOM_DEGREE));
    let report = r.verify(Some(bound));
    if report.passed() {
        return Ok(format!("{} basis monomials through degree {}", report.monomials_checked, report.degree_bound));
    }
    let witnesses: Vec<String> = report
        .violations
        .iter()
        .take(SHOWN_WITNESSES)
        .map(|v| format!("{:?} violated: {}", v.kind, v.witness).to_lowercase())
        .collect();
    Err(Error::Inconsistent(format!("{} ({} violations)", witnesses.join("; "), report.violations.len())))
}

fn rector_pairs(e: &CatalogEntry) -> Result<String> {
    let skeleton = e.skeleton()?;
    let p = e.prime;
    for (i, pair) in skeleton.iter().enumerate() {
        if !pair.finite {
            return Err(Error::Inconsistent(format!("pair {} is not finite", e.pairs[i].label)));
        }
        if let Some(j) = (0..i).find(|&j| rector::isomorphic(p, &skeleton[j], pair)) {
            return Err(Error::Inconsistent(format!("pairs {} and {} are isomorphic", e.pairs[j].label, e.pairs[i].label)));
        }
    }
    Ok(format!("{} pairwise non-isomorphic finite A-linear pairs", skeleton.len()))
}

fn centrality(e: &CatalogEntry) -> Result<String> {
    let r = e.require_algebra()?;
    let skeleton = e.skeleton()?;
    let coaction = e.coaction()?;
    let sum = coaction.as_ref().map(|c| c as &dyn SumMap);
    let poset = rector::maximal_central(r, &skeleton, &CentralityOracle::Flag(e.flags()), sum)?;
    let declared = e.center_index()?;
    if !rector::isomorphic(e.prime, &skeleton[poset.maximum], &skeleton[declared]) {
        return Err(Error::Inconsistent(format!("center {} is not the maximal central pair", e.pairs[declared].label)));
    }
    let mut detail = format!("flags closed under restriction, center {} of rank {}", e.pairs[declared].label, poset.rank);
    if coaction.is_some() {
        detail += ", closed under circ";
    }
    if let Some(g) = e.group()? {
        let mislin = groups::cohomological_center(&g, e.prime.get()).rank;
        if mislin != poset.rank {
            return Err(Error::Inconsistent(format!("cohomological center of the group has rank {mislin}")));
        }
        detail += ", matches the cohomological center";
    }
    Ok(detail)
}

fn components(cat: &Catalog, e: &CatalogEntry) -> Result<String> {
    let r = e.require_algebra()?;
    let p = e.prime;
    let skeleton = e.skeleton()?;
    let center = e.center_pair()?;
    for (spec, pair) in e.pairs.iter().zip(&skeleton) {
        let above = !spec.central && rector::poset_leq(p, &center, pair);
        if above && !e.components.iter().any(|c| c.label == spec.label) {
            return Err(Error::MissingData(format!("no component for pair {} above the center", spec.label)));
        }
    }
    let comps = cat.components(e)?;
    for (spec, comp) in e.components.iter().zip(&comps) {
        let i = e
            .pairs
            .iter()
            .position(|q| q.label == spec.label)
            .ok_or_else(|| Error::Inconsistent(format!("component {} names no pair", spec.label)))?;
        let t_center = cat.get(&spec.target)?.center_pair()?;
        let h = target(p, t_center.rank);
        let composite: Vec<Element> =
            comp.images.iter().map(|x| comp.target.ring().substitute(x, &t_center.images, h.ring())).collect();
        let through = RectorPair::new(r, t_center.rank, composite)?;
        if !rector::isomorphic(p, &through, &skeleton[i]) {
            return Err(Error::Inconsistent(format!(
                "component {} composed with the center of {} is not the pair",
                spec.label, spec.target
            )));
        }
    }
    let data = d0::cess(r, &comps)?;
    Ok(format!(
        "{} component maps A-linear and compatible with their pairs; CEss {}",
        comps.len(),
        if data.whole {
            "= R"
        } else if data.zero {
            "= 0"
        } else {
            "is a proper nonzero ideal"
        }
    ))
}

fn betti(e: &CatalogEntry) -> Result<String> {
    let g = e.group()?.expect("group-backed");
    let betti = groups::betti_numbers(&g, e.prime.get(), BETTI_DEGREE)?;
    let hilbert = e.require_algebra()?.algebra().hilbert_series().coefficients(BETTI_DEGREE + 1);
    let hilbert: Vec<usize> = hilbert.iter().map(|&c| c.max(0) as usize).collect();
    if betti != hilbert {
        let n = betti.iter().zip(&hilbert).position(|(a, b)| a != b).unwrap_or(0);
        return Err(Error::Inconsistent(format!(
            "Hilbert series gives {} in degree {n}, group cohomology has dimension {}",
            hilbert[n], betti[n]
        )));
    }
    Ok(format!("Hilbert series equals dim H^n through degree {BETTI_DEGREE}"))
}

fn quillen(e: &CatalogEntry) -> Result<String> {
    let g = e.group()?.expect("group-backed");
    let qc = groups::quillen_category(&g, e.prime.get());
    let krull = e.require_algebra()?.algebra().krull_dimension();
    if krull != qc.max_rank() {
        return Err(Error::Inconsistent(format!("Krull dimension {krull}, p-rank {}", qc.max_rank())));
    }
    let count = |ranks: Vec<usize>| (0..=krull).map(|r| ranks.iter().filter(|&&x| x == r).count()).collect::<Vec<_>>();
    let ring_side = count(e.pairs.iter().map(|q| q.rank).collect());
    let group_side = count(qc.objects.iter().map(|o| o.rank).collect());
    if ring_side != group_side {
        return Err(Error::Inconsistent(format!("pairs per rank {ring_side:?}, conjugacy classes {group_side:?}")));
    }
    Ok(format!("Krull dimension = p-rank = {krull}, classes per rank {group_side:?}"))
}

fn enumeration(e: &CatalogEntry) -> Result<String> {
    let r = e.require_algebra()?;
    let skeleton = e.skeleton()?;
    let krull = r.algebra().krull_dimension();
    for rank in 1..=krull {
        let found = rector::enumerate_objects(r, rank, ENUMERATION_CAP)?;
        let listed: Vec<&RectorPair> = skeleton.iter().filter(|q| q.rank == rank).collect();
        if found.len() != listed.len() || found.iter().any(|f| rector::find_class(e.prime, &skeleton, f).is_none()) {
            return Err(Error::Inconsistent(format!(
                "search finds {} rank-{rank} objects, catalog lists {}",
                found.len(),
                listed.len()
            )));
        }
    }
    Ok(format!("exhaustive search through rank {krull} reproduces the skeleton"))
}

fn representation(e: &CatalogEntry) -> Result<String> {
    let rep = e.representation()?;
    let fixed = invariants::fixed_space(&rep);
    if rep.order() > 1 && fixed.len() >= rep.dim() {
        return Err(Error::Inconsistent("a nontrivial group fixes every vector".into()));
    }
    if rep.is_p_group() && fixed.is_empty() {
        return Err(Error::Inconsistent("a p-group with no fixed vector".into()));
    }
    Ok(format!("group of order {}, fixed space of rank {}", rep.order(), fixed.len()))
}

fn d0_data(cat: &Catalog, e: &CatalogEntry) -> Result<String> {
    let atoms = cat.atoms()?;
    let value = atoms.get(&e.id).expect("resolved");
    let mut detail = format!("{}", Interval { lo: value.lo, hi: value.hi });
    if let (Some(a), Some(expr)) = (&e.atom, &e.expr) {
        let iv = d0::d0_calculus(&d0::parse_expr(expr, &atoms)?)?;
        if !(iv.contains(a.lo) && a.hi.map_or(iv.hi.is_none(), |h| iv.contains(h))) {
            return Err(Error::Inconsistent(format!("certified value lies outside {iv}")));
        }
        detail += &format!(" within {iv}");
    }
    Ok(detail)
}
