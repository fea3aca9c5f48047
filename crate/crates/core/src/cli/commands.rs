//! The report-producing commands.

use super::catalog::{Catalog, CatalogEntry};
use super::report::Report;
use crate::d0::{self, d0_calculus, d0_derivation, parse_expr, Interval};
use crate::error::{Error, Result};
use crate::fpalg::{Element, GradedRing};
use crate::groups::{self, PermGroup};
use crate::homology::{self, HomologicalInvariants};
use crate::invariants::{self, InvariantAlgebra, LinearRep};
use crate::rector::{self, target, CentralityOracle, RectorPair, SumMap, TranslationSum};
use crate::steenrod::UnstableAlgebra;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Center,
    Defect,
    Depth,
    Reg,
    Cess,
    D0Bound,
    D0Calc,
    HSpace,
    Invariants,
    Quillen,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Center,
        Command::Defect,
        Command::Depth,
        Command::Reg,
        Command::Cess,
        Command::D0Bound,
        Command::D0Calc,
        Command::HSpace,
        Command::Invariants,
        Command::Quillen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Center => "center",
            Command::Defect => "defect",
            Command::Depth => "depth",
            Command::Reg => "reg",
            Command::Cess => "cess",
            Command::D0Bound => "d0-bound",
            Command::D0Calc => "d0-calc",
            Command::HSpace => "hspace",
            Command::Invariants => "invariants",
            Command::Quillen => "quillen",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: Option<u32>,
    pub thorough: bool,
}

/// Default search window for primitives of the central essential ideal.
pub const PRIMITIVE_WINDOW: u32 = 12;

/// Runs `command` on the catalog entry `id`; `p`, when given, must match the entry.
pub fn run(cat: &Catalog, command: Command, id: &str, p: Option<u32>, opts: &Options) -> Result<Report> {
    let entry = match cat.get(id) {
        Ok(e) => Some(e),
        Err(_) if matches!(command, Command::Quillen | Command::D0Calc) => None,
        Err(e) => return Err(e),
    };
    if let (Some(e), Some(p)) = (entry, p) {
        if e.prime.get() != p {
            return Err(Error::MissingData(format!("{id} is catalogued at p = {}, not {p}", e.prime.get())));
        }
    }
    let prime = entry.map(|e| e.prime.get()).or(p);
    let mut report = Report::new(cat.version, command.name(), id, prime);
    match (command, entry) {
        (Command::Quillen, None) => {
            let p = p.ok_or_else(|| Error::MissingData(format!("no catalog entry {id}; pass --p to name a group")))?;
            quillen(&mut report, None, &groups::named_group(id)?, p)?
        }
        (Command::D0Calc, None) => calc_expression(cat, &mut report, id)?,
        (command, Some(e)) => match command {
            Command::Center => center(&mut report, e, opts)?,
            Command::Defect => defect(&mut report, e, opts)?,
            Command::Depth => depth(&mut report, e, opts)?,
            Command::Reg => reg(&mut report, e, opts)?,
            Command::Cess => cess(cat, &mut report, e, opts)?,
            Command::D0Bound => d0_bound(cat, &mut report, e)?,
            Command::D0Calc => d0_calc(cat, &mut report, e)?,
            Command::HSpace => hspace(&mut report, e)?,
            Command::Invariants => invariant_ring(&mut report, e, opts)?,
            Command::Quillen => {
                let g = e.group()?.ok_or_else(|| Error::MissingData(format!("{id} is not group-backed")))?;
                quillen(&mut report, Some(e), &g, e.prime.get())?
            }
        },
        _ => unreachable!("handled above"),
    }
    Ok(report)
}

fn images_text(ring: &GradedRing, images: &[Element]) -> String {
    images.iter().map(|x| ring.format(x)).collect::<Vec<_>>().join(", ")
}

fn pair_text(p: crate::fpalg::Prime, pair: &RectorPair) -> String {
    images_text(target(p, pair.rank).ring(), &pair.images)
}

/// The invariant algebra of a representation entry, with generators through the degree bound.
fn invariant_algebra_of(e: &CatalogEntry, opts: &Options) -> Result<(LinearRep, InvariantAlgebra, u32)> {
    let rep = e.representation()?;
    let bound = opts.degree_bound.unwrap_or_else(|| invariants::generation_degree_bound(&rep));
    let inv = invariants::invariant_algebra(&rep, bound)?;
    Ok((rep, inv, bound))
}

fn generation_route(inv: &InvariantAlgebra) -> String {
    if inv.approx.complete {
        "invariant generators complete by the generation degree bound".into()
    } else {
        format!("invariant generators verified through degree {} only", inv.approx.verified_through)
    }
}

/// The algebra of an entry: its presentation or its invariant ring.
fn algebra_of(e: &CatalogEntry, opts: &Options) -> Result<(UnstableAlgebra, String)> {
    if let Some(r) = &e.algebra {
        return Ok((r.clone(), "catalog presentation".into()));
    }
    let (_, inv, _) = invariant_algebra_of(e, opts)?;
    let route = generation_route(&inv);
    Ok((inv.algebra, route))
}

fn center(report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let p = e.prime;
    if e.algebra.is_none() {
        let (_, inv, _) = invariant_algebra_of(e, opts)?;
        let pairs = inv.subspace_pairs()?;
        let subspaces: Vec<_> = pairs.iter().map(|(u, _)| u.clone()).collect();
        let skeleton: Vec<RectorPair> = pairs.iter().map(|(_, q)| q.clone()).collect();
        let fixed = invariants::fixed_space(&inv.rep);
        let oracle = CentralityOracle::Invariant { fixed: fixed.clone(), subspaces, p };
        let sum = TranslationSum { invariants: &inv, pairs };
        let poset = rector::maximal_central(&inv.algebra, &skeleton, &oracle, Some(&sum))?;
        let (_, pair) = invariants::rector_center_invariants(&inv)?;
        if pair.rank != poset.rank {
            return Err(Error::CrossCheck(format!("fixed space has rank {}, center {}", pair.rank, poset.rank)));
        }
        report.push("center_rank", poset.rank, "maximal_central with the fixed-space oracle, closed under translation");
        report.push("fixed_space", &fixed, "fixed_space of the representation");
        report.push("center_images", pair_text(p, &pair), "restriction of the invariants to the fixed space");
        report.push("generation", generation_route(&inv), "invariants_up_to");
        return Ok(());
    }
    let r = e.require_algebra()?;
    let skeleton = e.skeleton()?;
    let coaction = e.coaction()?;
    let oracle = CentralityOracle::Flag(e.flags());
    let sum = coaction.as_ref().map(|c| c as &dyn SumMap);
    let poset = rector::maximal_central(r, &skeleton, &oracle, sum)?;
    let declared = e.center_index()?;
    if !rector::isomorphic(p, &skeleton[poset.maximum], &skeleton[declared]) {
        return Err(Error::CrossCheck(format!(
            "declared center {} differs from the maximal central pair {}",
            e.pairs[declared].label, e.pairs[poset.maximum].label
        )));
    }
    let mut route = "maximal_central over catalog flags".to_string();
    if let Some(g) = e.group()? {
        let mislin = groups::cohomological_center(&g, p.get());
        if mislin.rank != poset.rank {
            return Err(Error::CrossCheck(format!("cohomological center of {} has rank {}", e.group.as_deref().unwrap_or(""), mislin.rank)));
        }
        route += ", checked against cohomological_center";
    }
    report.push("center", &e.pairs[declared].label, "catalog center label");
    report.push("center_rank", poset.rank, &route);
    report.push("center_images", pair_text(p, &skeleton[declared]), "catalog restriction data");
    let central: Vec<&str> = poset.central.iter().map(|&i| e.pairs[i].label.as_str()).collect();
    report.push("central_objects", central, "catalog flags, closed under restriction");
    let closure = if coaction.is_some() { "checked with the catalog coaction" } else { "not checked: no coaction" };
    report.push("circ_closure", closure, "circ over central pairs");
    Ok(())
}

fn defect(report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let (r, route) = algebra_of(e, opts)?;
    let krull = r.algebra().krull_dimension();
    let (c, category) = if e.algebra.is_some() {
        let center = e.center_pair()?;
        let check = rector::defect_zero_category_check(&r, &e.skeleton()?, &center)?;
        (center.rank, Some(check))
    } else {
        (invariants::fixed_space(&e.representation()?).len(), None)
    };
    let defect = krull
        .checked_sub(c)
        .ok_or_else(|| Error::CrossCheck(format!("center rank {c} exceeds Krull dimension {krull}")))?;
    report.push("krull_dimension", krull, &format!("krull_dimension of the Hilbert series ({route})"));
    report.push("center_rank", c, "rank of the catalog center");
    let mut defect_route = "krull_dimension - center_rank".to_string();
    if let Some(g) = e.group()? {
        let group_defect = groups::p_central_defect(&g, e.prime.get());
        if group_defect != defect {
            return Err(Error::CrossCheck(format!("group p-central defect is {group_defect}, ring gives {defect}")));
        }
        defect_route += ", checked against p_central_defect of the group";
    }
    report.push("defect", defect, &defect_route);
    if let Some(check) = category {
        if check != (defect == 0) {
            return Err(Error::CrossCheck("category comparison disagrees with the defect".into()));
        }
        report.push("category_equivalent_to_center", check, "defect_zero_category_check on the catalog skeleton");
    }
    Ok(())
}

fn analyze(r: &UnstableAlgebra) -> Result<HomologicalInvariants> {
    homology::analyze_algebra(r.algebra(), None)
}

fn center_rank_of(e: &CatalogEntry) -> Result<usize> {
    if e.algebra.is_some() {
        Ok(e.center_pair()?.rank)
    } else {
        Ok(invariants::fixed_space(&e.representation()?).len())
    }
}

fn depth(report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let (r, route) = algebra_of(e, opts)?;
    let inv = analyze(&r)?;
    let c = center_rank_of(e)?;
    if inv.depth < c {
        return Err(Error::CrossCheck(format!("depth {} is below the center rank {c}", inv.depth)));
    }
    report.push("depth", inv.depth, &format!("minimal free resolution over the even generators ({route})"));
    report.push("dimension", inv.dimension, "local cohomology profile, checked against the Hilbert series");
    report.push("cohen_macaulay", inv.cohen_macaulay, "depth == dimension");
    report.push("center_rank", c, "rank of the catalog center");
    report.push("depth_at_least_center_rank", true, "depth >= center_rank");
    Ok(())
}

fn reg(report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let (r, route) = algebra_of(e, opts)?;
    let inv = analyze(&r)?;
    report.push("regularity", inv.regularity, &format!("max a_i + i over local cohomology ({route})"));
    report.push("local_cohomology_a", &inv.local_cohomology.a, "local_cohomology_degrees from the resolution");
    report.push("betti_regularity", inv.betti_regularity, "Betti table; only for standard-graded covers");
    report.push("hilbert_series", r.algebra().hilbert_series().to_string(), "hilbert_series of the presentation");
    Ok(())
}

fn cess(cat: &Catalog, report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let r = e.require_algebra()?;
    let components = cat.components(e)?;
    let data = d0::cess(r, &components)?;
    let inv = analyze(r)?;
    let center = e.center_pair()?;
    let c = center.rank;
    if data.zero == (inv.depth == c) {
        return Err(Error::CrossCheck(format!(
            "CEss is {}zero but depth {} {} center rank {c}",
            if data.zero { "" } else { "non" },
            inv.depth,
            if inv.depth == c { "equals" } else { "differs from" }
        )));
    }
    let status = if data.whole {
        "R".to_string()
    } else if data.zero {
        "0".to_string()
    } else {
        format!("({})", images_text(r.ring(), &data.ideal.gens))
    };
    let route = if components.is_empty() {
        "no components above the center".to_string()
    } else {
        format!("intersection of kernels of {}", data.components.join(", "))
    };
    report.push("cess", status, &route);
    report.push("dimension", data.dimension, "analyze_module of the ideal");
    report.push("depth", data.depth, "analyze_module of the ideal");
    report.push("cohen_macaulay", data.cohen_macaulay, "depth == dimension");
    report.push("ring_depth", inv.depth, "analyze_algebra");
    report.push("center_rank", c, "rank of the catalog center");
    if data.zero {
        report.push("e_indec", "-inf", "zero ideal");
        return Ok(());
    }
    if data.dimension.is_some_and(|d| d > c) || !data.cohen_macaulay || data.dimension != Some(c) {
        return Err(Error::CrossCheck("nonzero CEss is not Cohen-Macaulay of dimension c".into()));
    }
    let duflot = d0::duflot_data(r, &center)?;
    let ei = d0::e_indec(r, &data, &duflot, &inv)?;
    report.push("e", duflot.e, "duflot_data: sum of (a - 1) over the image generators");
    report.push("e_indec", ei.direct, "top degree of CEss / (Duflot lifts) CEss");
    report.push("e_indec_formula", ei.formula, "e + a_c + c from local cohomology");
    report.push("free_over_duflot", ei.free_over_duflot, "Hilbert series division");
    match e.coaction()? {
        Some(coaction) => {
            let window = opts.degree_bound.unwrap_or(PRIMITIVE_WINDOW);
            let prim = d0::e_prim(r, &data, &coaction, window)?;
            if prim > ei.direct {
                return Err(Error::CrossCheck(format!("e_prim {prim} exceeds e_indec {}", ei.direct)));
            }
            report.push("e_prim", prim, &format!("primitives of the catalog coaction through degree {window}"));
        }
        None => report.push("e_prim", serde_json::Value::Null, "not available: no coaction"),
    }
    Ok(())
}

fn d0_bound(cat: &Catalog, report: &mut Report, e: &CatalogEntry) -> Result<()> {
    let inputs = cat.bound_inputs(e)?;
    let ub = d0::d0_upper_bound(&inputs, e.finite_group)?;
    let w = ub.witness_certificate();
    let input = inputs.iter().find(|i| i.name == ub.witness).expect("witness is an input");
    let defect = input.algebra.algebra().krull_dimension() - input.center.rank;
    let certificate = format!(
        "defect {defect}, e={}, reg={}",
        w.e.map_or("?".into(), |x| x.to_string()),
        w.reg.map_or("?".into(), |x| x.to_string())
    );
    let mut route = "max e + reg over components with depth = center rank".to_string();
    if e.finite_group {
        route += ", regularity 0 cross-checked";
    }
    report.push("upper_bound", ub.bound, &route);
    report.push("witness", &ub.witness, "component attaining the maximum");
    report.push("certificate", certificate, "duflot_data and regularity of the witness");
    report.push("components", &ub.components, "per-component certificates");
    if e.prime.get() == 2 {
        let rad = e.require_algebra()?.algebra().radical_nilpotence_degree()?;
        if rad as i64 > ub.bound {
            return Err(Error::CrossCheck(format!("radical nilpotence degree {rad} exceeds the bound {}", ub.bound)));
        }
        report.push("radical_nilpotence_degree", rad, "radical_nilpotence_degree, at most the bound");
    }
    if let Ok(iv) = cat.interval(&e.id) {
        if iv.lo > ub.bound {
            return Err(Error::CrossCheck(format!("calculus lower bound {} exceeds the upper bound {}", iv.lo, ub.bound)));
        }
        report.push("calculus_interval", iv.to_string(), "d0 calculus over catalog atoms");
    }
    Ok(())
}

fn push_interval(report: &mut Report, iv: Interval, route: &str) {
    report.push("d0_interval", iv.to_string(), route);
    report.push("exact", iv.is_exact(), "lower bound equals upper bound");
}

fn calc_expression(cat: &Catalog, report: &mut Report, text: &str) -> Result<()> {
    let atoms = cat.atoms()?;
    let expr = parse_expr(text, &atoms)?;
    push_interval(report, d0_calculus(&expr)?, "d0 calculus");
    let steps: Vec<String> = d0_derivation(&expr)?.into_iter().map(|(s, i)| format!("{s} = {i}")).collect();
    report.push("derivation", steps, "rule applications, innermost first");
    Ok(())
}

fn d0_calc(cat: &Catalog, report: &mut Report, e: &CatalogEntry) -> Result<()> {
    let atoms = cat.atoms()?;
    match &e.expr {
        Some(text) => {
            let expr = parse_expr(text, &atoms)?;
            let iv = d0_calculus(&expr)?;
            report.push("expression", text, "catalog expression");
            if let Some(a) = &e.atom {
                let inside = iv.contains(a.lo) && a.hi.map_or(iv.hi.is_none(), |h| iv.contains(h));
                if !inside {
                    return Err(Error::CrossCheck(format!("certified value for {} lies outside {iv}", e.id)));
                }
                push_interval(report, Interval { lo: a.lo, hi: a.hi }, &format!("certified atom: {}", a.provenance));
                report.push("expression_interval", iv.to_string(), "d0 calculus, contains the certified value");
            } else {
                push_interval(report, iv, "d0 calculus");
            }
            let steps: Vec<String> = d0_derivation(&expr)?.into_iter().map(|(s, i)| format!("{s} = {i}")).collect();
            report.push("derivation", steps, "rule applications, innermost first");
        }
        None => {
            let a = atoms.get(&e.id).ok_or_else(|| Error::MissingData(format!("no d0 data for {}", e.id)))?;
            push_interval(report, Interval { lo: a.lo, hi: a.hi }, &format!("certified atom: {}", a.provenance));
        }
    }
    Ok(())
}

fn hspace(report: &mut Report, e: &CatalogEntry) -> Result<()> {
    let r = e.require_algebra()?;
    let hb = d0::hspace_bound(r)?;
    report.push("poincare_dimension", hb.bound, "top degree of the truncated quotient");
    report.push("upper_bound", hb.bound, "Poincaré dimension bounds d0");
    report.push("polynomial", &hb.free, "generators with no relation");
    let truncated: Vec<String> = hb.truncated.iter().map(|(g, h)| format!("{g}^{h}")).collect();
    report.push("truncated", truncated, "single-generator power relations");
    report.push("exterior", &hb.exterior, "odd generators at odd p");
    if let Ok(center) = e.center_pair() {
        let input = d0::BoundInput { name: "R".into(), algebra: r.clone(), center };
        if let Ok(ub) = d0::d0_upper_bound(&[input], false) {
            if ub.bound != hb.bound as i64 {
                return Err(Error::CrossCheck(format!("e + reg gives {}, Poincaré dimension {}", ub.bound, hb.bound)));
            }
            report.push("e_plus_reg", ub.bound, "d0_upper_bound of R, equal to the Poincaré dimension");
        }
    }
    Ok(())
}

fn gl_order(p: u64, n: u32) -> u64 {
    (0..n).map(|i| p.pow(n) - p.pow(i)).product()
}

fn invariant_ring(report: &mut Report, e: &CatalogEntry, opts: &Options) -> Result<()> {
    let rep = e.representation()?;
    let symonds = invariants::generation_degree_bound(&rep);
    let bound = opts.degree_bound.unwrap_or(symonds);
    let approx = invariants::invariants_up_to(&rep, bound);
    let ring = rep.ring();
    report.push("group_order", rep.order(), "closure of the generating matrices");
    report.push("dimension", rep.dim(), "size of the matrices");
    report.push("generator_degrees", &approx.generator_degrees, &format!("fixed vectors degree by degree through {bound}"));
    let gens: Vec<String> = approx.generators.iter().map(|g| ring.format(g)).collect();
    report.push("generators", gens, "invariants not generated in lower degrees");
    report.push("hilbert_function", approx.hilbert_function(), "dimensions of the invariants");
    report.push("verified_through", approx.verified_through, "generated subalgebra agrees with the invariants");
    report.push("generation_bound", symonds, "max(|G|, n(|G| - 1))");
    report.push("complete", approx.complete, "verified through the generation bound");
    let p = rep.prime().get();
    if rep.order() as u64 == gl_order(p as u64, rep.dim() as u32) && approx.complete {
        let dickson = invariants::dickson_generators(rep.dim(), p)?;
        let degrees: Vec<u32> = dickson.iter().map(|d| ring.degree(d).unwrap_or(0)).collect();
        if degrees != approx.generator_degrees {
            return Err(Error::CrossCheck(format!("Dickson degrees {degrees:?} differ from the computed generators")));
        }
        report.push("dickson_degrees", degrees, "Dickson invariants by the determinant formula");
    }
    let fixed = invariants::fixed_space(&rep);
    report.push("fixed_space_rank", fixed.len(), "fixed_space of the representation");
    report.push("p_group", rep.is_p_group(), "group order is a power of p");
    Ok(())
}

fn quillen(report: &mut Report, e: Option<&CatalogEntry>, g: &PermGroup, p: u32) -> Result<()> {
    let qc = groups::quillen_category(g, p);
    let objects: Vec<_> = qc
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| json!({ "index": i, "rank": o.rank, "class_size": o.class_size }))
        .collect();
    let n = qc.objects.len();
    let homs: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| qc.hom_count(i, j)).collect()).collect();
    report.push("group_order", g.order(), "element enumeration");
    report.push("objects", objects, "elementary_abelian_classes up to conjugacy");
    report.push("hom_counts", homs, "conjugation maps between representatives");
    report.push("max_rank", qc.max_rank(), "largest elementary abelian rank");
    report.push("cohomological_center_rank", groups::cohomological_center(g, p).rank, "cohomological_center via O_p'");
    report.push("p_central_defect", groups::p_central_defect(g, p), "p-rank minus center rank");
    if let Some(e) = e.filter(|e| e.algebra.is_some()) {
        let krull = e.require_algebra()?.algebra().krull_dimension();
        if krull != qc.max_rank() {
            return Err(Error::CrossCheck(format!("Krull dimension {krull} differs from the p-rank {}", qc.max_rank())));
        }
        let count = |ranks: Vec<usize>| (0..=krull).map(|r| ranks.iter().filter(|&&x| x == r).count()).collect::<Vec<_>>();
        let ring_side = count(e.pairs.iter().map(|q| q.rank).collect());
        let group_side = count(qc.objects.iter().map(|o| o.rank).collect());
        if ring_side != group_side {
            return Err(Error::CrossCheck(format!("catalog pairs per rank {ring_side:?}, group classes {group_side:?}")));
        }
        report.push("classes_per_rank", group_side, "matches the catalog Rector skeleton");
    }
    Ok(())
}
