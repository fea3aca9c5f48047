use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A rational Hilbert series `N(t) / Π (1 - t^{d_i})` with integer numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Numerator coefficients by exponent; zero entries are never stored.
    pub numerator: BTreeMap<u32, i64>,
    /// Degrees `d_i` of the denominator factors.
    pub denominator: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: BTreeMap<u32, i64>, mut denominator: Vec<u32>) -> Self {
        denominator.sort_unstable();
        HilbertSeries { numerator: numerator.into_iter().filter(|(_, c)| *c != 0).collect(), denominator }
    }

    /// First `n` coefficients of the power series.
    pub fn coefficients(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n];
        for (&e, &v) in &self.numerator {
            if (e as usize) < n {
                c[e as usize] += v;
            }
        }
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..n {
                c[i] += c[i - d];
            }
        }
        c
    }

    /// Order of the pole at `t = 1`, i.e. the Krull dimension.
    pub fn pole_order(&self) -> usize {
        if self.numerator.is_empty() {
            return 0;
        }
        let top = *self.numerator.keys().next_back().unwrap() as usize;
        let mut num = vec![0i64; top + 1];
        for (&e, &v) in &self.numerator {
            num[e as usize] = v;
        }
        let mut mult = 0;
        while num.iter().sum::<i64>() == 0 {
            // Divide by (1 - t): q_i = Σ_{j ≤ i} n_j.
            let mut acc = 0;
            num = num[..num.len() - 1]
                .iter()
                .map(|&c| {
                    acc += c;
                    acc
                })
                .collect();
            mult += 1;
        }
        self.denominator.len().saturating_sub(mult)
    }

    /// Largest degree with a nonzero coefficient, when the series is a polynomial.
    pub fn top_degree(&self) -> Option<u32> {
        if self.pole_order() > 0 {
            return None;
        }
        let top = self.numerator.keys().next_back().copied().unwrap_or(0) as usize;
        let c = self.coefficients(top + 1);
        c.iter().rposition(|&x| x != 0).map(|i| i as u32)
    }

    /// `self − other`, over the common denominator.
    pub fn minus(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut left = self.numerator.clone();
        let mut right = other.numerator.clone();
        let mut den = Vec::new();
        let mut rest = other.denominator.clone();
        for &d in &self.denominator {
            match rest.iter().position(|&e| e == d) {
                Some(k) => {
                    rest.remove(k);
                }
                None => right = times_one_minus(&right, d),
            }
            den.push(d);
        }
        for d in rest {
            left = times_one_minus(&left, d);
            den.push(d);
        }
        for (e, c) in right {
            *left.entry(e).or_insert(0) -= c;
        }
        HilbertSeries::new(left, den)
    }

    /// Total dimension when the series is a polynomial.
    pub fn total_dimension(&self) -> Option<i64> {
        if self.pole_order() > 0 {
            return None;
        }
        let top = self.numerator.keys().next_back().copied().unwrap_or(0) as usize;
        Some(self.coefficients(top + 1).iter().sum())
    }
}

fn times_one_minus(num: &BTreeMap<u32, i64>, d: u32) -> BTreeMap<u32, i64> {
    let mut out = num.clone();
    for (&e, &c) in num {
        *out.entry(e + d).or_insert(0) -= c;
    }
    out
}

/// Numerator of the Hilbert series of `S / M` over the denominator
/// `Π (1 - t^{d_i})`, for a monomial ideal `M` given by generators.
pub(crate) fn monomial_numerator(monos: &[Vec<u32>], degs: &[u32]) -> BTreeMap<u32, i64> {
    let gens = minimalize(monos);
    let deg = |m: &[u32]| -> u32 { m.iter().zip(degs).map(|(e, d)| e * d).sum() };
    if gens.iter().all(|m| m.iter().filter(|&&e| e > 0).count() <= 1) {
        let mut acc = BTreeMap::from([(0u32, 1i64)]);
        for m in &gens {
            let d = deg(m);
            let mut next = acc.clone();
            for (&e, &c) in &acc {
                *next.entry(e + d).or_insert(0) -= c;
            }
            acc = next;
        }
        acc.retain(|_, c| *c != 0);
        return acc;
    }
    // Pivot on the variable occurring most often in mixed generators:
    // N(M) = N(M + (x)) + t^{|x|} N(M : x).
    let n = degs.len();
    let mut count = vec![0usize; n];
    for m in gens.iter().filter(|m| m.iter().filter(|&&e| e > 0).count() > 1) {
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                count[i] += 1;
            }
        }
    }
    let x = (0..n).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).unwrap();
    let mut plus: Vec<Vec<u32>> = gens.iter().filter(|m| m[x] == 0).cloned().collect();
    let mut var = vec![0u32; n];
    var[x] = 1;
    plus.push(var);
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|m| {
            let mut c = m.clone();
            c[x] = c[x].saturating_sub(1);
            c
        })
        .collect();
    let mut out = monomial_numerator(&plus, degs);
    for (e, c) in monomial_numerator(&colon, degs) {
        *out.entry(e + degs[x]).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn minimalize(monos: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut sorted: Vec<Vec<u32>> = monos.to_vec();
    sorted.sort_by_key(|m| m.iter().sum::<u32>());
    sorted.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.iter().zip(&m).all(|(a, b)| a <= b)) {
            out.push(m);
        }
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .numerator
            .iter()
            .map(|(&e, &c)| match e {
                0 => c.to_string(),
                _ => format!("{c}t^{e}"),
            })
            .collect();
        let den: Vec<String> = self.denominator.iter().map(|d| format!("(1-t^{d})")).collect();
        let num = if num.is_empty() { "0".to_string() } else { num.join(" + ") };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / {}", den.join(""))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring_in_two_variables() {
        let h = HilbertSeries::new(BTreeMap::from([(0, 1)]), vec![1, 1]);
        assert_eq!(h.coefficients(5), vec![1, 2, 3, 4, 5]);
        assert_eq!(h.pole_order(), 2);
        assert_eq!(h.top_degree(), None);
    }

    #[test]
    fn numerator_of_a_mixed_monomial_ideal() {
        // S/(xy) with |x| = |y| = 1 has numerator 1 - t^2.
        let n = monomial_numerator(&[vec![1, 1]], &[1, 1]);
        assert_eq!(n, BTreeMap::from([(0, 1), (2, -1)]));
        let n = monomial_numerator(&[vec![2, 0], vec![1, 2], vec![0, 3]], &[1, 1]);
        let h = HilbertSeries::new(n, vec![1, 1]);
        assert_eq!(h.coefficients(5), vec![1, 2, 2, 0, 0]);
    }

    #[test]
    fn pole_order_sees_a_partial_cancellation() {
        // (1 - t)(1 + t^2) / (1 - t^2)(1 - t^3) has a simple pole at t = 1.
        let h = HilbertSeries::new(BTreeMap::from([(0, 1), (1, -1), (2, 1), (3, -1)]), vec![2, 3]);
        assert_eq!(h.pole_order(), 1);
    }

    #[test]
    fn finite_quotient_has_a_top_degree() {
        // F[x]/(x^3) = (1 - t^3)/(1 - t)
        let h = HilbertSeries::new(BTreeMap::from([(0, 1), (3, -1)]), vec![1]);
        assert_eq!(h.pole_order(), 0);
        assert_eq!(h.top_degree(), Some(2));
        assert_eq!(h.total_dimension(), Some(3));
    }
}
