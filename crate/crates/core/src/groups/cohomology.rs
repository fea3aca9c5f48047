use super::PermGroup;
use crate::error::{Error, Result};
use crate::fpalg::linalg::{self, EchelonBasis};
use crate::fpalg::Prime;

pub const DEFAULT_BETTI_ORDER_CAP: usize = 64;

/// `dim H^n(G; F_p)` for `n ≤ n_max`, with the default order cap.
pub fn betti_numbers(g: &PermGroup, p: u32, n_max: usize) -> Result<Vec<usize>> {
    betti_numbers_with_cap(g, p, n_max, DEFAULT_BETTI_ORDER_CAP)
}

/// Resolves `F_p` over `F_p[G]` and takes cohomology of `Hom_G(-, F_p)`.
///
/// For p-groups the generators of each kernel `K` are lifted from a basis of
/// `K / IK`, so the resolution is minimal and the cochain differentials
/// vanish; this is checked. Other groups get a greedy generating set.
pub fn betti_numbers_with_cap(g: &PermGroup, p: u32, n_max: usize, cap: usize) -> Result<Vec<usize>> {
    if g.order() > cap {
        return Err(Error::GroupTooLarge { order: g.order(), cap });
    }
    let prime = Prime::new(p)?;
    let resolution = Resolver { g, p: prime, minimal: g.is_p_group(p as usize) };
    // ranks[k] and the augmented cochain matrices D_k : F_p^{r_{k-1}} → F_p^{r_k}.
    let n = g.order();
    let mut ranks = vec![1usize];
    let mut cochain: Vec<linalg::Matrix> = vec![vec![]];
    let mut kernel: Vec<Vec<u32>> = (1..n)
        .map(|h| {
            let mut v = vec![0u32; n];
            v[0] = 1;
            v[h] = prime.neg(1);
            v
        })
        .collect();
    for _ in 0..=n_max {
        let r_prev = *ranks.last().unwrap();
        let gens = resolution.module_generators(&kernel, r_prev);
        let d: linalg::Matrix = gens
            .iter()
            .map(|v| (0..r_prev).map(|c| v[c * n..(c + 1) * n].iter().fold(0, |s, &x| prime.add(s, x))).collect())
            .collect();
        if resolution.minimal && d.iter().flatten().any(|&x| x != 0) {
            return Err(Error::CrossCheck("minimal resolution has a nonzero cochain differential".into()));
        }
        kernel = resolution.kernel(&gens, r_prev);
        ranks.push(gens.len());
        cochain.push(d);
    }
    let rank_of = |m: &linalg::Matrix| if m.is_empty() || m[0].is_empty() { 0 } else { linalg::rank(prime, m) };
    Ok((0..=n_max)
        .map(|k| {
            let into = if k == 0 { 0 } else { rank_of(&cochain[k]) };
            ranks[k] - rank_of(&cochain[k + 1]) - into
        })
        .collect())
}

struct Resolver<'a> {
    g: &'a PermGroup,
    p: Prime,
    minimal: bool,
}

impl Resolver<'_> {
    /// `h · v` for `v` in a free module of rank `r`.
    fn act(&self, h: usize, v: &[u32]) -> Vec<u32> {
        let n = self.g.order();
        let mut out = vec![0u32; v.len()];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                out[(i / n) * n + self.g.mul(h, i % n)] = c;
            }
        }
        out
    }

    fn module_generators(&self, kernel: &[Vec<u32>], rank: usize) -> Vec<Vec<u32>> {
        let dim = rank * self.g.order();
        let mut span = EchelonBasis::new(self.p, dim);
        let mut out = Vec::new();
        if self.minimal {
            for s in self.g.generator_indices() {
                for k in kernel {
                    let moved = self.act(s, k);
                    let diff: Vec<u32> = moved.iter().zip(k).map(|(&a, &b)| self.p.sub(a, b)).collect();
                    span.insert(&diff);
                }
            }
            for k in kernel {
                if span.insert(k) {
                    out.push(k.clone());
                }
            }
        } else {
            for k in kernel {
                if !span.contains(k) {
                    out.push(k.clone());
                    for h in 0..self.g.order() {
                        span.insert(&self.act(h, k));
                    }
                }
            }
        }
        out
    }

    /// F_p-basis of the kernel of `F_{rank(gens)} → F_{rank}`, `e_b ↦ gens[b]`.
    fn kernel(&self, gens: &[Vec<u32>], rank: usize) -> Vec<Vec<u32>> {
        let n = self.g.order();
        let cols = gens.len() * n;
        if cols == 0 {
            return Vec::new();
        }
        let mut m = vec![vec![0u32; cols]; rank * n];
        for (b, v) in gens.iter().enumerate() {
            for h in 0..n {
                for (row, c) in self.act(h, v).into_iter().enumerate() {
                    m[row][b * n + h] = c;
                }
            }
        }
        linalg::kernel(self.p, &m, cols)
    }
}
