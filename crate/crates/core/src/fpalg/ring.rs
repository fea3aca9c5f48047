use super::Prime;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// A generator of a graded ring. `odd` generators are exterior classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub odd: bool,
}

/// Exponent vector indexed by generator position.
///
/// The derived ordering is only a storage order; the monomial order used for
/// Gröbner bases lives in the engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// A formal `F_p`-linear combination of normal-form monomials.
///
/// Elements do not carry their ring; operations go through [`GradedRing`].
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Element {
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, p: Prime, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = p.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub(crate) fn from_map(terms: BTreeMap<Monomial, u32>) -> Self {
        Element {
            terms: terms.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }
}

/// Graded-commutative ring `F_p[even generators] ⊗ Λ(odd generators)`.
///
/// At `p = 2` every generator is even-type, so squares need not vanish.
/// At odd `p` the parity of a generator is the parity of its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRing {
    prime: Prime,
    gens: Vec<Generator>,
}

impl GradedRing {
    pub fn new<S: Into<String>>(prime: Prime, gens: Vec<(S, u32)>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for (name, degree) in gens {
            let name = name.into();
            if degree == 0 {
                return Err(Error::Inconsistent(format!("generator {name} has degree 0")));
            }
            if out.iter().any(|g: &Generator| g.name == name) {
                return Err(Error::Inconsistent(format!("duplicate generator {name}")));
            }
            let odd = !prime.is_two() && degree % 2 == 1;
            out.push(Generator { name, degree, odd });
        }
        Ok(GradedRing { prime, gens: out })
    }

    /// Polynomial ring with every generator even-type regardless of degree.
    ///
    /// Used for polynomial covers and the invariant-theory grading.
    pub fn polynomial<S: Into<String>>(prime: Prime, gens: Vec<(S, u32)>) -> Self {
        GradedRing {
            prime,
            gens: gens
                .into_iter()
                .map(|(name, degree)| Generator { name: name.into(), degree, odd: false })
                .collect(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn p(&self) -> u32 {
        self.prime.get()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn has_odd(&self) -> bool {
        self.gens.iter().any(|g| g.odd)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.ngens()).filter(|&i| self.gens[i].odd).collect()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.ngens()).filter(|&i| !self.gens[i].odd).collect()
    }

    pub fn top_generator_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.gens).map(|(e, g)| e * g.degree).sum()
    }

    /// Tensor product: generators of `self` followed by those of `other`.
    pub fn tensor(&self, other: &GradedRing) -> Result<GradedRing> {
        if self.prime != other.prime {
            return Err(Error::RingMismatch("tensor of rings over different primes".into()));
        }
        let mut gens = self.gens.clone();
        for g in &other.gens {
            if gens.iter().any(|h| h.name == g.name) {
                return Err(Error::Inconsistent(format!("duplicate generator {}", g.name)));
            }
            gens.push(g.clone());
        }
        Ok(GradedRing { prime: self.prime, gens })
    }

    pub fn one(&self) -> Element {
        self.monomial(Monomial::one(self.ngens()), 1)
    }

    pub fn gen(&self, i: usize) -> Element {
        self.monomial(Monomial::var(self.ngens(), i), 1)
    }

    pub fn constant(&self, c: i64) -> Element {
        self.monomial(Monomial::one(self.ngens()), self.prime.reduce(c))
    }

    /// A scalar multiple of a monomial; zero if an odd exponent exceeds one.
    pub fn monomial(&self, m: Monomial, c: u32) -> Element {
        let mut e = Element::zero();
        if self.odd_indices().iter().all(|&i| m.0[i] <= 1) {
            e.add_term(self.prime, m, c % self.p());
        }
        e
    }

    /// Checks that an element is well formed for this ring.
    pub fn check(&self, a: &Element) -> Result<()> {
        for (m, &c) in a.terms() {
            if m.0.len() != self.ngens() {
                return Err(Error::RingMismatch(format!(
                    "monomial has {} exponents, ring has {} generators",
                    m.0.len(),
                    self.ngens()
                )));
            }
            if c == 0 || c >= self.p() {
                return Err(Error::RingMismatch(format!("coefficient {c} not reduced")));
            }
            if self.gens.iter().zip(&m.0).any(|(g, &e)| g.odd && e > 1) {
                return Err(Error::RingMismatch("odd generator with exponent > 1".into()));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (m, &c) in b.terms() {
            out.add_term(self.prime, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.scale(b, self.p() - 1))
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.scale(a, self.p() - 1)
    }

    pub fn scale(&self, a: &Element, c: u32) -> Element {
        let c = c % self.p();
        let mut out = BTreeMap::new();
        if c != 0 {
            for (m, &v) in a.terms() {
                out.insert(m.clone(), self.prime.mul(v, c));
            }
        }
        Element::from_map(out)
    }

    /// Koszul sign of the product of two monomials, or `None` when an odd
    /// generator occurs in both.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut transpositions = 0u32;
        let mut odd_in_a_after = 0u32;
        for i in (0..self.ngens()).rev() {
            if !self.gens[i].odd {
                continue;
            }
            if a.0[i] > 0 && b.0[i] > 0 {
                return None;
            }
            if b.0[i] > 0 {
                transpositions += odd_in_a_after;
            }
            if a.0[i] > 0 {
                odd_in_a_after += 1;
            }
        }
        Some((a.mul(b), transpositions % 2 == 1))
    }

    /// Graded-commutative product with Koszul signs.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out: BTreeMap<Monomial, u32> = BTreeMap::new();
        let p = self.prime;
        for (ma, &ca) in a.terms() {
            for (mb, &cb) in b.terms() {
                if let Some((m, negative)) = self.monomial_product(ma, mb) {
                    let mut c = p.mul(ca, cb);
                    if negative {
                        c = p.neg(c);
                    }
                    let e = out.entry(m).or_insert(0);
                    *e = p.add(*e, c);
                }
            }
        }
        Element::from_map(out)
    }

    /// Checked product: both operands must belong to this ring.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Degree of a homogeneous nonzero element; `None` for zero or mixed degrees.
    pub fn degree(&self, a: &Element) -> Option<u32> {
        let mut degs = a.terms().keys().map(|m| self.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, a: &Element) -> bool {
        a.is_zero() || self.degree(a).is_some()
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, a: &Element, degree: u32) -> Element {
        Element::from_map(
            a.terms()
                .iter()
                .filter(|(m, _)| self.monomial_degree(m) == degree)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        )
    }

    /// Substitutes generator images into `a`; images live in `target`.
    pub fn substitute(&self, a: &Element, images: &[Element], target: &GradedRing) -> Element {
        let mut out = Element::zero();
        for (m, &c) in a.terms() {
            let mut term = target.constant(c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = target.mul(&term, &images[i]);
                }
            }
            out = target.add(&out, &term);
        }
        out
    }

    /// All monomials of exactly the given degree (odd exponents at most one).
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.ngens()];
        self.enumerate(0, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let d = self.gens[i].degree;
        let max = if self.gens[i].odd { 1.min(remaining / d) } else { remaining / d };
        for e in 0..=max {
            cur[i] = e;
            self.enumerate(i + 1, remaining - e * d, cur, out);
        }
        cur[i] = 0;
    }

    pub fn format(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, &c) in a.terms().iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.gens[i].name.clone()),
                    _ => factors.push(format!("{}^{}", self.gens[i].name, e)),
                }
            }
            let body = factors.join("*");
            parts.push(match (c, body.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => body,
                (_, false) => format!("{c}*{body}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> =
            self.gens.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        write!(f, "F_{}[{}]", self.p(), gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, gens: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(Prime::new(p).unwrap(), gens.to_vec()).unwrap()
    }

    #[test]
    fn exterior_square_vanishes() {
        let r = ring(3, &[("x", 1)]);
        let x = r.gen(0);
        assert!(r.multiply(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn odd_classes_anticommute() {
        let r = ring(3, &[("x", 1), ("y", 1)]);
        let (x, y) = (r.gen(0), r.gen(1));
        let xy = r.mul(&x, &y);
        let yx = r.mul(&y, &x);
        assert_eq!(yx, r.neg(&xy));
        assert_eq!(r.format(&xy), "x*y");
        assert_eq!(r.format(&yx), "2*x*y");
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring(2, &[("x", 1), ("y", 1)]);
        let s = r.add(&r.gen(0), &r.gen(1));
        let sq = r.mul(&s, &s);
        assert_eq!(sq, r.add(&r.pow(&r.gen(0), 2), &r.pow(&r.gen(1), 2)));
    }

    #[test]
    fn parity_follows_degree_at_odd_primes() {
        let r = ring(3, &[("x", 1), ("y", 2)]);
        assert!(r.gens()[0].odd);
        assert!(!r.gens()[1].odd);
        let s = ring(2, &[("x", 1)]);
        assert!(!s.gens()[0].odd);
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let r = ring(2, &[("x", 1)]);
        let s = ring(2, &[("x", 1), ("y", 1)]);
        assert!(r.multiply(&s.gen(1), &r.gen(0)).is_err());
    }

    #[test]
    fn sign_of_three_odd_factors() {
        let r = ring(5, &[("a", 1), ("b", 1), ("c", 1)]);
        let (a, b, c) = (r.gen(0), r.gen(1), r.gen(2));
        let cba = r.mul(&r.mul(&c, &b), &a);
        let abc = r.mul(&r.mul(&a, &b), &c);
        assert_eq!(cba, r.neg(&abc));
    }

    #[test]
    fn monomials_by_degree() {
        let r = ring(3, &[("x", 1), ("y", 2)]);
        assert_eq!(r.monomials_of_degree(3).len(), 1);
        assert_eq!(r.monomials_of_degree(4).len(), 1);
        let s = ring(2, &[("x", 1), ("y", 1)]);
        assert_eq!(s.monomials_of_degree(3).len(), 4);
    }
}
