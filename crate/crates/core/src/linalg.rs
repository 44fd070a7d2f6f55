//! Exact rational linear algebra: sparse echelon bases and dense nullspaces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A sparse vector keyed by an ordered index.
pub type SparseVec<K> = BTreeMap<K, Rational>;

/// Row-echelon basis over ℚ. Each stored row is normalised so its largest
/// key has coefficient 1, and no two rows share a leading key.
#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading terms until the vector is zero or has an unseen
    /// leading key. Returns the remainder.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        loop {
            let Some((lead, coeff)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                return v;
            };
            let Some(&row) = self.pivots.get(&lead) else {
                return v;
            };
            for (k, c) in &self.rows[row] {
                let entry = v.entry(k.clone()).or_insert_with(Rational::zero);
                *entry -= &coeff * c;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / c;
        let row: SparseVec<K> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// Basis of `{x : m x = 0}` for a dense matrix with `cols` columns.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &a[r][k];
                    a[i][k] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, rat(c, 1))).collect()
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(sv(&[(0, 1), (2, 3)])));
        assert!(e.insert(sv(&[(1, 2), (2, 1)])));
        // 2*(first) - 3*(second)/... combination
        let combo = sv(&[(0, 2), (1, 6), (2, 9)]);
        assert!(e.contains(combo.clone()));
        assert!(!e.insert(combo));
        assert!(e.insert(sv(&[(0, 1)])));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert(SparseVec::new()));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert!(nullspace(&[vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]], 2).is_empty());
    }
}
