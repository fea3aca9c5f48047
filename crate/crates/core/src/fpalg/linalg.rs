//! Dense linear algebra over `F_p`.
//!
//! Matrices are row-major `Vec<Vec<u32>>` with reduced entries.

use super::Prime;

pub type Matrix = Vec<Vec<u32>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(p: Prime, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let inv = p.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(p: Prime, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(p, &mut a).len()
}

/// Basis of `{x : m x = 0}` for an `rows × cols` matrix.
pub fn kernel(p: Prime, m: &Matrix, cols: usize) -> Vec<Vec<u32>> {
    let mut a = m.clone();
    let pivots = rref(p, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(a[r][f]);
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(p: Prime, m: &Matrix, b: &[u32], cols: usize) -> Option<Vec<u32>> {
    let mut a: Matrix = m.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let pivots = rref(p, &mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols];
    }
    Some(x)
}

/// Incrementally maintained echelon basis of a row space.
///
/// Each stored row remembers which inserted vectors it combines, so
/// membership queries can also return coordinates.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: Prime,
    dim: usize,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(p: Prime, dim: usize) -> Self {
        EchelonBasis { p, dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut v = v.to_vec();
        let mut combo = vec![0u32; self.inserted];
        for (pc, row, rc) in &self.rows {
            let f = v[*pc];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = p.sub(*x, p.mul(f, y));
                }
                for (x, &y) in combo.iter_mut().zip(rc) {
                    *x = p.add(*x, p.mul(f, y));
                }
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in terms of the inserted vectors, if in the span.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (rem, combo) = self.reduce(v);
        rem.iter().all(|&x| x == 0).then_some(combo)
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let (mut rem, combo) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(0);
        }
        let Some(pc) = rem.iter().position(|&x| x != 0) else { return false };
        let mut rc: Vec<u32> = combo.iter().map(|&c| p.neg(c)).collect();
        rc.push(1);
        debug_assert_eq!(rc.len(), idx + 1);
        let inv = p.inv(rem[pc]);
        for x in rem.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for x in rc.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for (_, row, c) in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&rem) {
                    *x = p.sub(*x, p.mul(f, y));
                }
                for (x, &y) in c.iter_mut().zip(&rc) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        self.rows.push((pc, rem, rc));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_vec(p: Prime, m: &Matrix, x: &[u32]) -> Vec<u32> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b))))
            .collect()
    }

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let p = Prime::new(3).unwrap();
        let m = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let k = kernel(p, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(p, &m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let p = Prime::new(2).unwrap();
        let m = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(p, &m, &[0, 1], 2).is_none());
        assert!(solve(p, &m, &[1, 1], 2).is_some());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u32..5, 12)) {
            let p = Prime::new(5).unwrap();
            let m: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            let k = kernel(p, &m, 4);
            prop_assert_eq!(rank(p, &m) + k.len(), 4);
            for v in &k {
                prop_assert!(mat_vec(p, &m, v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn echelon_coordinates_reconstruct(entries in proptest::collection::vec(0u32..3, 15),
                                           target in proptest::collection::vec(0u32..3, 3)) {
            let p = Prime::new(3).unwrap();
            let vs: Vec<Vec<u32>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let mut e = EchelonBasis::new(p, 3);
            for v in &vs {
                e.insert(v);
            }
            prop_assert_eq!(e.rank(), rank(p, &vs));
            if let Some(c) = e.express(&target) {
                let mut sum = vec![0u32; 3];
                for (v, &ci) in vs.iter().zip(&c) {
                    for (s, &x) in sum.iter_mut().zip(v) {
                        *s = p.add(*s, p.mul(ci, x));
                    }
                }
                prop_assert_eq!(sum, target);
            }
        }
    }
}
