//! Exact sparse row reduction.
//!
//! Everything is deterministic: columns are processed in index order and the
//! pivot of a new row is its first nonzero column after reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::element::{Element, Key};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sorted `(column, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c·b`.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(a: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn get(v: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

pub fn dense_from_sparse(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

/// Fully reduced row echelon form, built incrementally. Optionally tracks
/// each stored row as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: BTreeMap::new(),
            combos: if track { Some(Vec::new()) } else { None },
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Residual of `v` after subtracting its pivot components, with the
    /// combination (over inserted vectors) that was subtracted.
    fn reduce(&self, v: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
        let mut r: SparseVec = v.to_vec();
        let mut combo: SparseVec = Vec::new();
        for (col, c) in v {
            if let Some(&ri) = self.pivot_row.get(col) {
                r = axpy(&r, &(-c), &self.rows[ri]);
                if let Some(cs) = &self.combos {
                    combo = axpy(&combo, c, &cs[ri]);
                }
            }
        }
        (r, combo)
    }

    /// Inserts a vector; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pc, pv) = r[0].clone();
        let inv = pv.inv().expect("nonzero pivot");
        let row = scale_vec(&r, &inv);
        let new_combo = self.combos.as_ref().map(|_| {
            // row = (e_idx - combo)/pv
            let e = vec![(idx, Scalar::one())];
            scale_vec(&axpy(&e, &Scalar::from_int(-1), &combo), &inv)
        });
        for i in 0..self.rows.len() {
            if let Some(c) = get(&self.rows[i], pc).cloned() {
                self.rows[i] = axpy(&self.rows[i], &(-&c), &row);
                if let (Some(cs), Some(nc)) = (self.combos.as_mut(), new_combo.as_ref()) {
                    cs[i] = axpy(&cs[i], &(-&c), nc);
                }
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.pivots.push(pc);
        self.rows.push(row);
        if let (Some(cs), Some(nc)) = (self.combos.as_mut(), new_combo) {
            cs.push(nc);
        }
        true
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients over the inserted vectors expressing `v`, if `v` is in the span.
    /// Requires tracking.
    pub fn express(&self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        let cs = self.combos.as_ref().expect("express requires a tracking echelon");
        let mut out: SparseVec = Vec::new();
        for (col, c) in v {
            match self.pivot_row.get(col) {
                Some(&ri) => out = axpy(&out, c, &cs[ri]),
                None => {}
            }
        }
        let (r, _) = self.reduce(v);
        if r.is_empty() {
            Some(out)
        } else {
            None
        }
    }

    /// Basis of `{x : row·x = 0 for every inserted row}` over `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v: SparseVec = vec![(f, Scalar::one())];
            for (ri, row) in self.rows.iter().enumerate() {
                if let Some(c) = get(row, f) {
                    v.push((self.pivots[ri], -c));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}

/// Rank of a family of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Solution space of the homogeneous system `eqs·x = 0`.
pub fn nullspace(eqs: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(false);
    for v in eqs {
        e.insert(v);
    }
    e.nullspace(ncols)
}

/// Inverse of a square dense matrix, `None` if singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut e = Echelon::new(true);
    for row in m {
        e.insert(&sparse_from_dense(row));
    }
    if e.rank() < n {
        return None;
    }
    // Fully reduced rows are the unit vectors e_{pivot}; their combos are rows of m⁻¹.
    let cs = e.combos.as_ref().unwrap();
    let mut inv = vec![vec![Scalar::zero(); n]; n];
    for (ri, &p) in e.pivots.iter().enumerate() {
        inv[p] = dense_from_sparse(&cs[ri], n);
    }
    Some(inv)
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

/// Column indexing for a family of elements over the union of their supports,
/// ordered by key.
pub struct KeyIndex {
    keys: Vec<Key>,
    index: BTreeMap<Key, usize>,
}

impl KeyIndex {
    pub fn from_elements<'a, I: IntoIterator<Item = &'a Element>>(elems: I) -> Self {
        let set: BTreeSet<Key> = elems.into_iter().flat_map(|e| e.support().cloned().collect::<Vec<_>>()).collect();
        Self::from_keys(set.into_iter().collect())
    }

    pub fn from_keys(keys: Vec<Key>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        KeyIndex { keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn get(&self, k: &Key) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Sparse coordinates; `None` if the support leaves the index.
    pub fn vector(&self, e: &Element) -> Option<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(e.len());
        for (k, c) in e.terms() {
            v.push((self.get(k)?, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }
}

/// Coefficients `c` with `Σ cᵢ·gᵢ = target`, or `NoSolution`.
pub fn linear_solve(generators: &[Element], target: &Element) -> Result<Vec<Scalar>> {
    let domain = target.domain();
    for g in generators {
        g.check_domain(domain)?;
    }
    let idx = KeyIndex::from_elements(generators.iter().chain(std::iter::once(target)));
    let mut e = Echelon::new(true);
    for g in generators {
        e.insert(&idx.vector(g).unwrap());
    }
    let t = idx.vector(target).unwrap();
    let combo = e.express(&t).ok_or(Error::NoSolution)?;
    Ok(dense_from_sparse(&combo, generators.len()))
}

/// Dimension of the span of a family of elements.
pub fn span_rank(elems: &[Element]) -> usize {
    let idx = KeyIndex::from_elements(elems.iter());
    rank(&elems.iter().map(|e| idx.vector(e).unwrap()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Domain;

    fn d(k: i64) -> Element {
        Element::basis(&Domain::new("V"), Key::Int(k))
    }

    #[test]
    fn solve_identity_adjacent() {
        let g = vec![&d(0) + &d(1), d(1)];
        let c = linear_solve(&g, &d(0)).unwrap();
        assert_eq!(c, vec![Scalar::one(), Scalar::from_int(-1)]);
    }

    #[test]
    fn solve_disjoint() {
        assert_eq!(linear_solve(&[d(0)], &d(1)), Err(Error::NoSolution));
    }

    #[test]
    fn solve_mismatch() {
        let other = Element::basis(&Domain::new("W"), Key::Int(0));
        assert!(matches!(linear_solve(&[other], &d(0)), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn inverse_2x2() {
        let m = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        ];
        let inv = invert(&m).unwrap();
        let id = mat_mul(&m, &inv);
        assert_eq!(id[0][0], Scalar::one());
        assert_eq!(id[0][1], Scalar::zero());
        assert_eq!(id[1][1], Scalar::one());
        assert!(invert(&[vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::one()]]).is_none());
    }

    #[test]
    fn kernel_of_sum() {
        // x0 + x1 + x2 = 0 has a 2-dim kernel
        let eq = vec![(0, Scalar::one()), (1, Scalar::one()), (2, Scalar::one())];
        let ns = nullspace(&[eq.clone()], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: Scalar = v.iter().map(|(i, s)| s * &eq[*i].1).sum();
            assert!(dot.is_zero());
        }
    }
}
