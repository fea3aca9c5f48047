use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// Largest group order the element table is built for.
pub const MAX_GROUP_ORDER: usize = 20_000;

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out)
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` on `n` points.
    pub fn parse(s: &str, n: usize) -> Result<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm(images));
        }
        for cycle in s.split('(').map(str::trim).filter(|c| !c.is_empty()) {
            let body = cycle
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated cycle in {s}")))?;
            let pts: Vec<u32> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad point {t}"))))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&x| x == 0 || x as usize > n) {
                return Err(Error::Parse(format!("point out of range in {s}")));
            }
            let distinct: BTreeSet<u32> = pts.iter().copied().collect();
            if distinct.len() != pts.len() {
                return Err(Error::Parse(format!("repeated point in cycle {body}")));
            }
            let mut next = images.clone();
            for k in 0..pts.len() {
                let a = pts[k] - 1;
                let b = pts[(k + 1) % pts.len()] - 1;
                next[a as usize] = images[b as usize];
            }
            images = next;
        }
        let distinct: BTreeSet<u32> = images.iter().copied().collect();
        if distinct.len() != n {
            return Err(Error::Parse(format!("{s} is not a bijection")));
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite permutation group with its elements and multiplication table.
///
/// Elements are referred to by index; index 0 is the identity. Subgroups are
/// sorted index lists.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.0.len() != degree {
                return Err(Error::Parse(format!("generator {g} acts on the wrong number of points")));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge { order: elements.len() + 1, cap: MAX_GROUP_ORDER });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let mult: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        Ok(PermGroup { degree, gens, elements, mult, inv })
    }

    /// Parses generators in cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|g| Perm::parse(g, degree)).collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn cyclic(n: usize) -> Self {
        let gen = Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        PermGroup::new(n, vec![gen]).unwrap()
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let r = Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        let s = Perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        PermGroup::new(n, vec![r, s]).unwrap()
    }

    /// Quaternion group of order 8 in its regular representation.
    pub fn quaternion() -> Self {
        PermGroup::from_cycles(8, &["(1 2 5 6)(3 4 7 8)", "(1 3 5 7)(2 8 6 4)"]).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        let cycle = Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        let mut swap: Vec<u32> = (0..n as u32).collect();
        if n > 1 {
            swap.swap(0, 1);
        }
        PermGroup::new(n, vec![cycle, Perm(swap)]).unwrap()
    }

    /// `(Z/p)^r` acting on `r` disjoint blocks of `p` points.
    pub fn elementary_abelian(p: usize, r: usize) -> Self {
        let gens = (0..r)
            .map(|k| Perm((0..(p * r) as u32).map(|i| {
                let (b, j) = (i as usize / p, i as usize % p);
                if b == k { (b * p + (j + 1) % p) as u32 } else { i }
            }).collect()))
            .collect();
        PermGroup::new(p * r, gens).unwrap()
    }

    /// Direct product acting on the disjoint union of the point sets.
    pub fn direct_product(&self, other: &PermGroup) -> Self {
        let n = self.degree;
        let m = other.degree;
        let mut gens: Vec<Perm> = self
            .gens
            .iter()
            .map(|g| Perm(g.0.iter().copied().chain(n as u32..(n + m) as u32).collect()))
            .collect();
        gens.extend(
            other.gens.iter().map(|g| Perm((0..n as u32).chain(g.0.iter().map(|&x| x + n as u32)).collect())),
        );
        PermGroup::new(n + m, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    /// Index of each generator.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.gens.iter().map(|g| self.index_of(g).unwrap()).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, n: u64) -> usize {
        (0..n).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g h g^{-1}`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Vec<usize> {
        vec![0]
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.binary_search(&self.mul(a, self.inv(b))).is_ok()))
    }

    pub(crate) fn check_subgroup(&self, set: &[usize]) -> Result<()> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x >= self.order()) || !self.is_subgroup(&sorted) {
            return Err(Error::NotSubgroup(format!("{} elements", set.len())));
        }
        Ok(())
    }

    pub fn conjugate_set(&self, g: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&h| self.conj(g, h)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        (0..self.order()).all(|g| self.conjugate_set(g, set) == set)
    }

    pub fn normal_closure(&self, set: &[usize]) -> Vec<usize> {
        let conjugates: BTreeSet<usize> =
            (0..self.order()).flat_map(|g| set.iter().map(move |&h| (g, h))).map(|(g, h)| self.conj(g, h)).collect();
        self.generate(&conjugates.into_iter().collect::<Vec<_>>())
    }

    /// `C_G(E)`; fails if `set` is not a subgroup.
    pub fn centralizer(&self, set: &[usize]) -> Result<Vec<usize>> {
        self.check_subgroup(set)?;
        Ok((0..self.order()).filter(|&g| set.iter().all(|&e| self.commute(g, e))).collect())
    }

    pub fn center(&self) -> Vec<usize> {
        self.centralizer(&self.all()).unwrap()
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.conjugate_set(g, set) == set).collect()
    }

    /// Is the order a power of `p`?
    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_orders() {
        assert_eq!(PermGroup::cyclic(4).order(), 4);
        assert_eq!(PermGroup::dihedral(4).order(), 8);
        assert_eq!(PermGroup::quaternion().order(), 8);
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::elementary_abelian(3, 2).order(), 9);
        assert_eq!(PermGroup::dihedral(4).direct_product(&PermGroup::cyclic(2)).order(), 16);
    }

    #[test]
    fn quaternion_has_a_unique_involution() {
        let q = PermGroup::quaternion();
        let involutions = (1..8).filter(|&i| q.element_order(i) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(q.center().len(), 2);
    }

    #[test]
    fn cycle_notation_round_trips() {
        let p = Perm::parse("(1 3 5 7)(2 8 6 4)", 8).unwrap();
        assert_eq!(p.to_string(), "(1 3 5 7)(2 8 6 4)");
        assert!(Perm::parse("(1 1)", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
    }

    #[test]
    fn centralizers_in_the_dihedral_group() {
        let d8 = PermGroup::dihedral(4);
        let z = d8.center();
        assert_eq!(d8.centralizer(&z).unwrap().len(), 8);
        assert!(d8.centralizer(&[0, 1]).is_err() || d8.is_subgroup(&[0, 1]));
    }
}
