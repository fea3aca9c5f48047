//! Buchberger's algorithm for homogeneous submodules of free modules over a
//! commutative polynomial ring over `F_p`.
//!
//! Terms are `(component, monomial)` pairs compared through a precomputed key:
//! optional position-over-term, then weight vectors (the first one is the
//! grading, shifted per component), then reverse-lexicographic tie-breaking
//! refined by generator index, then position.

use super::Prime;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    key: Vec<i64>,
    pub comp: usize,
    pub mono: Vec<u32>,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for Term {}
impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Sparse vector; the leading term is the largest key.
pub(crate) type Vector = BTreeMap<Term, u32>;

#[derive(Clone, Debug)]
pub(crate) struct Order {
    /// Weight vectors; `weights[0]` is the grading and must be positive.
    pub weights: Vec<Vec<i64>>,
    pub pot: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub p: Prime,
    pub nvars: usize,
    pub order: Order,
    pub shifts: Vec<i64>,
}

impl Engine {
    pub fn new(p: Prime, grading: &[u32], shifts: Vec<i64>) -> Self {
        Engine {
            p,
            nvars: grading.len(),
            order: Order { weights: vec![grading.iter().map(|&d| d as i64).collect()], pot: false },
            shifts,
        }
    }

    pub fn with_pot(mut self) -> Self {
        self.order.pot = true;
        self
    }

    pub fn with_weights(mut self, w: Vec<i64>) -> Self {
        self.order.weights.push(w);
        self
    }

    pub fn term(&self, comp: usize, mono: Vec<u32>) -> Term {
        let mut key = Vec::with_capacity(self.order.weights.len() + self.nvars + 2);
        if self.order.pot {
            key.push(-(comp as i64));
        }
        for (k, w) in self.order.weights.iter().enumerate() {
            let mut s: i64 = w.iter().zip(&mono).map(|(a, &e)| a * e as i64).sum();
            if k == 0 {
                s += self.shifts[comp];
            }
            key.push(s);
        }
        for i in (0..self.nvars).rev() {
            key.push(-(mono[i] as i64));
        }
        key.push(-(comp as i64));
        Term { key, comp, mono }
    }

    /// Degree of a term, including the component shift.
    pub fn degree(&self, t: &Term) -> i64 {
        let w = &self.order.weights[0];
        w.iter().zip(&t.mono).map(|(a, &e)| a * e as i64).sum::<i64>() + self.shifts[t.comp]
    }

    pub fn vector<I: IntoIterator<Item = (usize, Vec<u32>, u32)>>(&self, terms: I) -> Vector {
        let mut v = Vector::new();
        for (comp, mono, c) in terms {
            self.add_into(&mut v, self.term(comp, mono), c);
        }
        v
    }

    fn add_into(&self, v: &mut Vector, t: Term, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match v.get_mut(&t) {
            Some(x) => {
                *x = p.add(*x, c);
                if *x == 0 {
                    v.remove(&t);
                }
            }
            None => {
                v.insert(t, c);
            }
        }
    }

    /// `v += c * mono * g`.
    pub fn axpy(&self, v: &mut Vector, c: u32, mono: &[u32], g: &Vector) {
        for (t, &gc) in g {
            let m: Vec<u32> = t.mono.iter().zip(mono).map(|(a, b)| a + b).collect();
            self.add_into(v, self.term(t.comp, m), self.p.mul(c, gc));
        }
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        v.iter().map(|(t, &x)| (t.clone(), self.p.mul(x, c))).filter(|(_, x)| *x != 0).collect()
    }

    pub fn monic(&self, v: &Vector) -> Vector {
        match v.iter().next_back() {
            Some((_, &c)) => self.scale(v, self.p.inv(c)),
            None => Vector::new(),
        }
    }

    /// Full reduction of `v` modulo `basis`.
    pub fn reduce(&self, v: &Vector, basis: &[Vector]) -> Vector {
        let mut work = v.clone();
        let mut rem = Vector::new();
        while let Some((lt, &lc)) = work.iter().next_back() {
            let lt = lt.clone();
            let divisor = basis.iter().find(|g| {
                let (gt, _) = g.iter().next_back().expect("basis elements are nonzero");
                gt.comp == lt.comp && gt.mono.iter().zip(&lt.mono).all(|(a, b)| a <= b)
            });
            match divisor {
                Some(g) => {
                    let (gt, &gc) = g.iter().next_back().unwrap();
                    let q: Vec<u32> = lt.mono.iter().zip(&gt.mono).map(|(a, b)| a - b).collect();
                    let c = self.p.neg(self.p.mul(lc, self.p.inv(gc)));
                    self.axpy(&mut work, c, &q, g);
                }
                None => {
                    work.remove(&lt);
                    rem.insert(lt, lc);
                }
            }
        }
        rem
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub fn groebner(&self, gens: &[Vector]) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
        let mut pending: Vec<Vector> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        pending.sort_by_key(|g| self.degree(g.keys().next_back().unwrap()));
        for g in pending {
            let r = self.reduce(&g, &basis);
            if !r.is_empty() {
                self.insert(&mut basis, &mut pairs, self.monic(&r));
            }
        }
        while let Some(&(deg, i, j)) = pairs.iter().next() {
            pairs.remove(&(deg, i, j));
            let s = self.spoly(&basis[i], &basis[j]);
            let r = self.reduce(&s, &basis);
            if !r.is_empty() {
                self.insert(&mut basis, &mut pairs, self.monic(&r));
            }
        }
        self.interreduce(basis)
    }

    fn insert(&self, basis: &mut Vec<Vector>, pairs: &mut BTreeSet<(i64, usize, usize)>, g: Vector) {
        let n = basis.len();
        let gt = g.keys().next_back().unwrap().clone();
        for (i, h) in basis.iter().enumerate() {
            let ht = h.keys().next_back().unwrap();
            if ht.comp != gt.comp {
                continue;
            }
            let coprime = ht.mono.iter().zip(&gt.mono).all(|(a, b)| *a == 0 || *b == 0);
            if coprime && self.shifts.len() == 1 {
                continue;
            }
            let l: Vec<u32> = ht.mono.iter().zip(&gt.mono).map(|(a, b)| *a.max(b)).collect();
            pairs.insert((self.degree(&self.term(gt.comp, l)), i, n));
        }
        basis.push(g);
    }

    fn spoly(&self, f: &Vector, g: &Vector) -> Vector {
        let (ft, _) = f.iter().next_back().unwrap();
        let (gt, _) = g.iter().next_back().unwrap();
        let l: Vec<u32> = ft.mono.iter().zip(&gt.mono).map(|(a, b)| *a.max(b)).collect();
        let mf: Vec<u32> = l.iter().zip(&ft.mono).map(|(a, b)| a - b).collect();
        let mg: Vec<u32> = l.iter().zip(&gt.mono).map(|(a, b)| a - b).collect();
        let mut s = Vector::new();
        self.axpy(&mut s, 1, &mf, f);
        self.axpy(&mut s, self.p.neg(1), &mg, g);
        s
    }

    fn interreduce(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let lead = |v: &Vector| v.keys().next_back().unwrap().clone();
        let mut minimal: Vec<Vector> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let gt = lead(g);
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let ht = lead(h);
                j != i
                    && ht.comp == gt.comp
                    && ht.mono.iter().zip(&gt.mono).all(|(a, b)| a <= b)
                    && (ht.mono != gt.mono || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Vector> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            let (lt, lc) = minimal[i].iter().next_back().map(|(t, c)| (t.clone(), *c)).unwrap();
            let mut tail = minimal[i].clone();
            tail.remove(&lt);
            let mut r = self.reduce(&tail, &others);
            r.insert(lt, lc);
            out.push(self.monic(&r));
        }
        out.sort_by_key(|a| lead(a));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine2() -> Engine {
        Engine::new(Prime::new(2).unwrap(), &[1, 1], vec![0])
    }

    #[test]
    fn grevlex_prefers_earlier_generators() {
        let e = engine2();
        assert!(e.term(0, vec![1, 0]) > e.term(0, vec![0, 1]));
        assert!(e.term(0, vec![1, 1]) > e.term(0, vec![0, 2]));
        assert!(e.term(0, vec![2, 0]) > e.term(0, vec![1, 1]));
        assert!(e.term(0, vec![0, 2]) > e.term(0, vec![1, 0]));
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let e = engine2();
        let xy = e.vector([(0, vec![1, 1], 1)]);
        let gb = e.groebner(std::slice::from_ref(&xy));
        assert_eq!(gb, vec![xy]);
    }
}
