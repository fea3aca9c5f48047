//! Line-oriented catalog of presented unstable algebras.

use crate::d0::{builtin_atoms, d0_calculus, parse_expr, Atom, BoundInput, Component, Interval};
use crate::error::{Error, Result};
use crate::fpalg::linalg::Matrix;
use crate::fpalg::{parse_element, Element, GradedRing, PresentedAlgebra, Prime};
use crate::groups::{self, PermGroup};
use crate::invariants::LinearRep;
use crate::rector::{coaction_factor, target, Coaction, RectorPair};
use crate::steenrod::{Op, SteenrodAction, UnstableAlgebra};
use std::collections::BTreeMap;

/// The catalog compiled into the binary.
pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.txt");

#[derive(Clone, Debug)]
pub struct PairSpec {
    pub label: String,
    pub rank: usize,
    pub central: bool,
    pub images: Vec<Element>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct ComponentSpec {
    pub label: String,
    pub target: String,
    pub images: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub line: usize,
    pub prime: Prime,
    pub source: String,
    pub group: Option<String>,
    pub finite_group: bool,
    pub hspace: bool,
    pub algebra: Option<UnstableAlgebra>,
    pub pairs: Vec<PairSpec>,
    pub center: Option<String>,
    pub components: Vec<ComponentSpec>,
    /// Raw coaction values by generator name.
    pub coaction: Vec<(String, String, usize)>,
    pub atom: Option<Atom>,
    pub expr: Option<String>,
    pub rep: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Parses `Sq3`, `Sq^3`, `P1`, `P^1` or `beta`.
pub fn parse_op(s: &str) -> Option<Op> {
    if s == "beta" {
        return Some(Op::Beta);
    }
    let num = |rest: &str| rest.trim_start_matches('^').parse::<u32>().ok();
    if let Some(rest) = s.strip_prefix("Sq") {
        return num(rest).map(Op::Sq);
    }
    s.strip_prefix('P').and_then(num).map(Op::P)
}

fn yes_no(v: &str, line: usize) -> Result<bool> {
    match v {
        "yes" | "true" => Ok(true),
        "no" | "false" => Ok(false),
        _ => Err(err(line, format!("expected yes or no, found {v}"))),
    }
}

#[derive(Default)]
struct Raw {
    id: String,
    line: usize,
    keys: BTreeMap<String, (String, usize)>,
    sections: BTreeMap<String, Vec<(String, usize)>>,
}

const KEYS: [&str; 6] = ["prime", "group", "finite-group", "hspace", "source", "center"];
const SECTIONS: [&str; 8] = ["ring", "relations", "steenrod", "rector", "components", "coaction", "atoms", "rep"];

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN_CATALOG).expect("the built-in catalog parses")
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let mut version = None;
        let mut raws: Vec<Raw> = Vec::new();
        let mut section: Option<String> = None;
        for (i, raw_line) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let cur = raws.last_mut().ok_or_else(|| err(n, "section outside an entry"))?;
                if !SECTIONS.contains(&name) {
                    return Err(err(n, format!("unknown section [{name}]")));
                }
                if cur.sections.contains_key(name) {
                    return Err(err(n, format!("repeated section [{name}]")));
                }
                cur.sections.insert(name.to_string(), Vec::new());
                section = Some(name.to_string());
                continue;
            }
            if let Some(id) = line.strip_prefix("entry:") {
                let id = id.trim();
                if id.is_empty() || id.contains(char::is_whitespace) {
                    return Err(err(n, "entry ids are single words"));
                }
                if raws.iter().any(|r| r.id == id) {
                    return Err(err(n, format!("duplicate entry {id}")));
                }
                raws.push(Raw { id: id.to_string(), line: n, ..Raw::default() });
                section = None;
                continue;
            }
            match (&section, raws.last_mut()) {
                (Some(s), Some(cur)) => cur.sections.get_mut(s).expect("opened").push((line.to_string(), n)),
                (Some(_), None) => unreachable!("sections open inside entries"),
                (None, cur) => {
                    let (key, value) = line.split_once(':').ok_or_else(|| err(n, "expected key: value"))?;
                    let (key, value) = (key.trim(), value.trim());
                    match cur {
                        None if key == "version" => {
                            version = Some(value.parse::<u32>().map_err(|_| err(n, "bad version"))?);
                        }
                        None => return Err(err(n, format!("{key} outside an entry"))),
                        Some(cur) => {
                            if !KEYS.contains(&key) {
                                return Err(err(n, format!("unknown key {key}")));
                            }
                            if cur.keys.insert(key.to_string(), (value.to_string(), n)).is_some() {
                                return Err(err(n, format!("repeated key {key}")));
                            }
                        }
                    }
                }
            }
        }
        let version = version.ok_or_else(|| err(1, "missing version"))?;
        let entries = raws.into_iter().map(build_entry).collect::<Result<Vec<_>>>()?;
        Ok(Catalog { version, entries })
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::MissingData(format!("no catalog entry {id}")))
    }

    /// Component maps of an entry, with their targets resolved.
    pub fn components(&self, entry: &CatalogEntry) -> Result<Vec<Component>> {
        entry
            .components
            .iter()
            .map(|c| {
                let t = self.get(&c.target)?;
                if t.prime != entry.prime {
                    return Err(err(c.line, format!("component target {} has another prime", c.target)));
                }
                let algebra = t.require_algebra()?.clone();
                let images = parse_images(algebra.ring(), &c.images, c.line)?;
                Ok(Component { name: c.label.clone(), target: algebra, images })
            })
            .collect()
    }

    /// `R` with its center followed by every component with its own center.
    pub fn bound_inputs(&self, entry: &CatalogEntry) -> Result<Vec<BoundInput>> {
        let r = entry.require_algebra()?;
        let mut inputs = vec![BoundInput { name: "R".into(), algebra: r.clone(), center: entry.center_pair()? }];
        for c in &entry.components {
            let t = self.get(&c.target)?;
            let center = t.center_pair().map_err(|e| match e {
                Error::MissingData(m) => Error::MissingData(format!("component {}: {m}", c.label)),
                e => e,
            })?;
            inputs.push(BoundInput { name: c.label.clone(), algebra: t.require_algebra()?.clone(), center });
        }
        Ok(inputs)
    }

    /// Built-in atoms, certified entry values and the values of entry
    /// expressions, resolved in dependency order.
    pub fn atoms(&self) -> Result<BTreeMap<String, Atom>> {
        let mut atoms: BTreeMap<String, Atom> = builtin_atoms().into_iter().map(|a| (a.name.clone(), a)).collect();
        for e in &self.entries {
            if let Some(a) = &e.atom {
                if atoms.contains_key(&a.name) {
                    return Err(err(e.line, format!("atom {} is already defined", a.name)));
                }
                atoms.insert(a.name.clone(), a.clone());
            }
        }
        let mut pending: Vec<&CatalogEntry> =
            self.entries.iter().filter(|e| e.expr.is_some() && !atoms.contains_key(&e.id)).collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for e in pending {
                let expr = e.expr.as_deref().expect("filtered");
                match parse_expr(expr, &atoms) {
                    Ok(parsed) => {
                        let v = d0_calculus(&parsed)?;
                        atoms.insert(e.id.clone(), Atom::new(&e.id, v.lo, v.hi, &format!("calculus: {expr}")));
                    }
                    Err(Error::MissingData(_)) => rest.push(e),
                    Err(other) => return Err(other),
                }
            }
            if rest.len() == before {
                let ids: Vec<&str> = rest.iter().map(|e| e.id.as_str()).collect();
                return Err(Error::MissingData(format!("unresolved atoms in {}", ids.join(", "))));
            }
            pending = rest;
        }
        Ok(atoms)
    }

    /// The certified or computed interval for an entry.
    pub fn interval(&self, id: &str) -> Result<Interval> {
        let atoms = self.atoms()?;
        let a = atoms.get(id).ok_or_else(|| Error::MissingData(format!("no d0 data for {id}")))?;
        Ok(Interval { lo: a.lo, hi: a.hi })
    }
}

impl CatalogEntry {
    pub fn require_algebra(&self) -> Result<&UnstableAlgebra> {
        self.algebra.as_ref().ok_or_else(|| Error::MissingData(format!("{} has no ring presentation", self.id)))
    }

    pub fn group(&self) -> Result<Option<PermGroup>> {
        self.group.as_deref().map(groups::named_group).transpose()
    }

    pub fn representation(&self) -> Result<LinearRep> {
        if self.rep.is_empty() {
            return Err(Error::MissingData(format!("{} has no representation", self.id)));
        }
        LinearRep::new(self.prime.get(), self.rep.clone())
    }

    /// Objects of the Rector category listed for this entry, in order.
    pub fn skeleton(&self) -> Result<Vec<RectorPair>> {
        let r = self.require_algebra()?;
        self.pairs
            .iter()
            .map(|p| {
                if p.rank == 0 {
                    return Ok(RectorPair::trivial(r));
                }
                RectorPair::new(r, p.rank, p.images.clone()).map_err(|e| err(p.line, format!("pair {}: {e}", p.label)))
            })
            .collect()
    }

    pub fn flags(&self) -> Vec<bool> {
        self.pairs.iter().map(|p| p.central).collect()
    }

    /// The pair named by `center:`, or else the central pair of largest rank.
    pub fn center_index(&self) -> Result<usize> {
        let found = match &self.center {
            Some(label) => self.pairs.iter().position(|p| &p.label == label),
            None => {
                let best = self.pairs.iter().filter(|p| p.central).map(|p| p.rank).max();
                self.pairs.iter().position(|p| p.central && Some(p.rank) == best)
            }
        };
        found.ok_or_else(|| Error::MissingData(format!("{} lists no center", self.id)))
    }

    pub fn center_pair(&self) -> Result<RectorPair> {
        let i = self.center_index()?;
        Ok(self.skeleton()?.swap_remove(i))
    }

    pub fn coaction(&self) -> Result<Option<Coaction>> {
        if self.coaction.is_empty() {
            return Ok(None);
        }
        let r = self.require_algebra()?;
        let center = self.center_pair()?;
        let ring = coaction_factor(self.prime, center.rank).tensor(r)?.ring().clone();
        let mut images = Vec::new();
        for g in r.ring().gens() {
            let (_, value, line) = self
                .coaction
                .iter()
                .find(|(name, _, _)| *name == g.name)
                .ok_or_else(|| Error::MissingData(format!("{}: coaction misses {}", self.id, g.name)))?;
            images.push(parse_element(&ring, value).map_err(|e| err(*line, e))?);
        }
        if self.coaction.len() != r.ring().ngens() {
            return Err(Error::Inconsistent(format!("{}: coaction names unknown generators", self.id)));
        }
        Coaction::new(r, center, images).map(Some)
    }
}

fn parse_images(ring: &GradedRing, strs: &[String], line: usize) -> Result<Vec<Element>> {
    strs.iter().map(|s| parse_element(ring, s).map_err(|e| err(line, e))).collect()
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn build_entry(raw: Raw) -> Result<CatalogEntry> {
    let key = |k: &str| raw.keys.get(k).cloned();
    let (p, pline) = key("prime").ok_or_else(|| err(raw.line, format!("{} has no prime", raw.id)))?;
    let prime = Prime::new(p.parse().map_err(|_| err(pline, "bad prime"))?).map_err(|e| err(pline, e))?;
    let flag = |k: &str| key(k).map_or(Ok(false), |(v, l)| yes_no(&v, l));
    let section = |s: &str| raw.sections.get(s).cloned().unwrap_or_default();

    let mut algebra = None;
    let mut pairs = Vec::new();
    if let Some(ring_lines) = raw.sections.get("ring") {
        let mut gens = Vec::new();
        for (l, n) in ring_lines {
            for item in split_list(l) {
                let (name, deg) = item.split_once(' ').ok_or_else(|| err(*n, "expected `name degree`"))?;
                let deg: u32 = deg.trim().parse().map_err(|_| err(*n, format!("bad degree for {name}")))?;
                gens.push((name.to_string(), deg));
            }
        }
        let ring = GradedRing::new(prime, gens).map_err(|e| err(raw.line, e))?;
        let relations = section("relations")
            .iter()
            .map(|(l, n)| parse_element(&ring, l).map_err(|e| err(*n, e)))
            .collect::<Result<Vec<_>>>()?;
        let presented = PresentedAlgebra::new(ring.clone(), relations).map_err(|e| err(raw.line, e))?;
        let mut action = SteenrodAction::new();
        for (l, n) in section("steenrod") {
            let (lhs, rhs) = l.split_once('=').ok_or_else(|| err(n, "expected `op generator = value`"))?;
            let mut words = lhs.split_whitespace();
            let (op, gen) = match (words.next(), words.next(), words.next()) {
                (Some(op), Some(gen), None) => (op, gen),
                _ => return Err(err(n, "expected `op generator = value`")),
            };
            let op = parse_op(op).ok_or_else(|| err(n, format!("unknown operation {op}")))?;
            let g = ring.gen_index(gen).ok_or_else(|| err(n, format!("unknown generator {gen}")))?;
            action.declare(g, op, parse_element(&ring, rhs.trim()).map_err(|e| err(n, e))?);
        }
        let unstable = UnstableAlgebra::new(presented, action).map_err(|e| err(raw.line, e))?;
        for (l, n) in section("rector") {
            let (head, imgs) = l.split_once(':').ok_or_else(|| err(n, "expected `label rank flag : images`"))?;
            let words: Vec<&str> = head.split_whitespace().collect();
            let [label, rank, central] = words[..] else {
                return Err(err(n, "expected `label rank flag : images`"));
            };
            let rank: usize = rank.parse().map_err(|_| err(n, "bad rank"))?;
            let central = match central {
                "central" => true,
                "noncentral" => false,
                other => return Err(err(n, format!("expected central or noncentral, found {other}"))),
            };
            let h = target(prime, rank);
            let mut images = parse_images(h.ring(), &split_list(imgs), n)?;
            if images.is_empty() {
                images = vec![Element::zero(); ring.ngens()];
            }
            if images.len() != ring.ngens() {
                return Err(err(n, format!("pair {label} gives {} images for {} generators", images.len(), ring.ngens())));
            }
            if pairs.iter().any(|q: &PairSpec| q.label == label) {
                return Err(err(n, format!("duplicate pair {label}")));
            }
            pairs.push(PairSpec { label: label.to_string(), rank, central, images, line: n });
        }
        algebra = Some(unstable);
    } else {
        for s in ["relations", "steenrod", "rector", "components", "coaction"] {
            if let Some((_, n)) = raw.sections.get(s).and_then(|v| v.first()) {
                return Err(err(*n, format!("[{s}] needs a [ring]")));
            }
        }
    }

    let mut components = Vec::new();
    for (l, n) in section("components") {
        let (head, imgs) = l.split_once(':').ok_or_else(|| err(n, "expected `label -> target : images`"))?;
        let (label, tgt) = head.split_once("->").ok_or_else(|| err(n, "expected `label -> target : images`"))?;
        components.push(ComponentSpec {
            label: label.trim().to_string(),
            target: tgt.trim().to_string(),
            images: split_list(imgs),
            line: n,
        });
    }
    let mut coaction = Vec::new();
    for (l, n) in section("coaction") {
        let (g, v) = l.split_once('=').ok_or_else(|| err(n, "expected `generator = value`"))?;
        coaction.push((g.trim().to_string(), v.trim().to_string(), n));
    }
    let (mut atom, mut expr) = (None, None);
    for (l, n) in section("atoms") {
        if let Some(e) = l.strip_prefix("expr ") {
            expr = Some(e.trim().to_string());
        } else if let Some(v) = l.strip_prefix("value ") {
            let (bounds, provenance) = v.split_once(':').ok_or_else(|| err(n, "expected `value lo hi : provenance`"))?;
            let words: Vec<&str> = bounds.split_whitespace().collect();
            let [lo, hi] = words[..] else {
                return Err(err(n, "expected `value lo hi : provenance`"));
            };
            let lo: i64 = lo.parse().map_err(|_| err(n, "bad lower bound"))?;
            let hi = if hi == "inf" { None } else { Some(hi.parse::<i64>().map_err(|_| err(n, "bad upper bound"))?) };
            if hi.is_some_and(|h| h < lo) {
                return Err(err(n, "empty interval"));
            }
            atom = Some(Atom::new(&raw.id, lo, hi, provenance.trim()));
        } else {
            return Err(err(n, "expected `value ...` or `expr ...`"));
        }
    }
    let mut rep = Vec::new();
    for (l, n) in section("rep") {
        let m = l
            .split(';')
            .map(|row| row.split_whitespace().map(|x| x.parse::<u32>().map_err(|_| err(n, "bad matrix entry"))).collect())
            .collect::<Result<Matrix>>()?;
        rep.push(m);
    }
    Ok(CatalogEntry {
        id: raw.id.clone(),
        line: raw.line,
        prime,
        source: key("source").map(|(v, _)| v).unwrap_or_default(),
        group: key("group").map(|(v, _)| v),
        finite_group: flag("finite-group")?,
        hspace: flag("hspace")?,
        algebra,
        pairs,
        center: key("center").map(|(v, _)| v),
        components,
        coaction,
        atom,
        expr,
        rep,
    })
}
