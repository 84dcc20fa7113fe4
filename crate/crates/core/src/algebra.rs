//! Non-degenerate algebras given by products on basis keys.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::element::{Domain, Element, Key};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, KeyIndex, SparseVec};
use crate::scalar::Scalar;

/// An algebra over ℚ(i) with a distinguished (finite or countable) basis.
pub trait Algebra: Send + Sync {
    /// Instance id, e.g. `K(Z2)`.
    fn id(&self) -> String;
    fn domain(&self) -> &Domain;
    /// The whole basis when finite-dimensional.
    fn finite_basis(&self) -> Option<Vec<Key>>;
    /// A finite window of the basis; the whole basis for finite algebras.
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        let _ = radius;
        self.finite_basis().expect("countable algebras must override sample_basis")
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element;
    fn identity(&self) -> Option<Element> {
        None
    }
    /// Returns `e` with `e·aᵢ = aᵢ = aᵢ·e`, when the instance knows one.
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        let _ = items;
        None
    }
}

pub type AlgebraHandle = Arc<dyn Algebra>;

impl fmt::Debug for dyn Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.id())
    }
}

/// Bilinear extension of the basis product.
pub fn mul(alg: &dyn Algebra, x: &Element, y: &Element) -> Element {
    debug_assert_eq!(x.domain(), alg.domain());
    debug_assert_eq!(y.domain(), alg.domain());
    let mut out = Element::zero(alg.domain());
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            out.add_scaled(&alg.mul_basis(kx, ky), &(cx * cy));
        }
    }
    out
}

pub fn checked_mul(alg: &dyn Algebra, x: &Element, y: &Element) -> Result<Element> {
    x.check_domain(alg.domain())?;
    y.check_domain(alg.domain())?;
    Ok(mul(alg, x, y))
}

pub fn dim(alg: &dyn Algebra) -> Option<usize> {
    alg.finite_basis().map(|b| b.len())
}

pub fn basis_element(alg: &dyn Algebra, k: &Key) -> Element {
    Element::basis(alg.domain(), k.clone())
}

/// Multiplication table of a finite-dimensional algebra, computed once.
pub struct TableAlgebra {
    id: String,
    domain: Domain,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    table: Vec<Element>,
    identity: Option<Element>,
}

impl TableAlgebra {
    /// Tabulates `alg` (in parallel); fails for countable algebras.
    pub fn tabulate(alg: &dyn Algebra) -> Result<Arc<TableAlgebra>> {
        let keys = alg
            .finite_basis()
            .ok_or_else(|| Error::NotFiniteDimensional(alg.id()))?;
        let n = keys.len();
        let table: Vec<Element> = (0..n * n)
            .into_par_iter()
            .map(|ij| alg.mul_basis(&keys[ij / n], &keys[ij % n]))
            .collect();
        Ok(Arc::new(Self::from_parts(alg.id(), alg.domain().clone(), keys, table, alg.identity())))
    }

    /// From an explicit row-major table; the identity is searched for if not given.
    pub fn from_parts(id: String, domain: Domain, keys: Vec<Key>, table: Vec<Element>, identity: Option<Element>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut t = TableAlgebra { id, domain, keys, index, table, identity: None };
        t.identity = identity.or_else(|| find_identity(&t));
        t
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn index_of(&self, k: &Key) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn product_at(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.keys.len() + j]
    }

    pub fn key_index(&self) -> KeyIndex {
        KeyIndex::from_keys(self.keys.clone())
    }
}

impl Algebra for TableAlgebra {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        Some(self.keys.clone())
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        match (self.index.get(x), self.index.get(y)) {
            (Some(&i), Some(&j)) => self.table[i * self.keys.len() + j].clone(),
            _ => Element::zero(&self.domain),
        }
    }
    fn identity(&self) -> Option<Element> {
        self.identity.clone()
    }
}

/// Two-sided identity of a finite-dimensional algebra by linear solve.
pub fn find_identity(alg: &dyn Algebra) -> Option<Element> {
    let keys = alg.finite_basis()?;
    let n = keys.len();
    let idx = KeyIndex::from_keys(keys.clone());
    // unknown e = Σ cᵢ bᵢ; equations e·b_j = b_j and b_j·e = b_j, coordinate-wise.
    // Build the transposed system: for each (j, side, k) an equation row over i, plus rhs.
    let mut rows: Vec<SparseVec> = Vec::new();
    for (j, bj) in keys.iter().enumerate() {
        for side in 0..2 {
            let mut coeff: Vec<SparseVec> = vec![Vec::new(); n];
            for (i, bi) in keys.iter().enumerate() {
                let p = if side == 0 { alg.mul_basis(bi, bj) } else { alg.mul_basis(bj, bi) };
                for (k, c) in p.terms() {
                    coeff[idx.get(k)?].push((i, c.clone()));
                }
            }
            for (k, mut r) in coeff.into_iter().enumerate() {
                // augmented column n holds −rhs
                if k == j {
                    r.push((n, Scalar::from_int(-1)));
                }
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    }
    let ns = linalg::nullspace(&rows, n + 1);
    // a solution has the augmented coordinate = 1
    for v in ns {
        if let Some((_, t)) = v.iter().find(|(i, _)| *i == n) {
            if t.is_zero() {
                continue;
            }
            let inv = t.inv().unwrap();
            let e = Element::from_terms(
                alg.domain(),
                v.iter().filter(|(i, _)| *i < n).map(|(i, c)| (keys[*i].clone(), c * &inv)),
            );
            return Some(e);
        }
    }
    None
}

/// Dimension of `{x : x·y = 0 ∀y}` (left) or `{x : y·x = 0 ∀y}` (right).
pub fn radical_dim(alg: &dyn Algebra, left: bool) -> Result<usize> {
    let keys = alg.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(alg.id()))?;
    Ok(radical_dim_on(alg, &keys, left))
}

/// Radical dimension restricted to a finite window of the basis (sampled check
/// for countable algebras).
pub fn radical_dim_on(alg: &dyn Algebra, keys: &[Key], left: bool) -> usize {
    radical_dim_between(alg, keys, keys, left)
}

/// Dimension of `{x ∈ span(xs) : x·y = 0 ∀y ∈ ys}` (or `y·x` when `!left`).
pub fn radical_dim_between(alg: &dyn Algebra, xs: &[Key], ys: &[Key], left: bool) -> usize {
    let n = xs.len();
    let eqs: Vec<Vec<SparseVec>> = ys
        .par_iter()
        .map(|y| {
            let mut rows: std::collections::BTreeMap<Key, SparseVec> = Default::default();
            for (i, x) in xs.iter().enumerate() {
                let p = if left { alg.mul_basis(x, y) } else { alg.mul_basis(y, x) };
                for (k, c) in p.terms() {
                    rows.entry(k.clone()).or_default().push((i, c.clone()));
                }
            }
            rows.into_values().collect()
        })
        .collect();
    n - linalg::rank(&eqs.into_iter().flatten().collect::<Vec<_>>())
}

/// First associativity failure `(x, y, z)` on the given keys, if any.
pub fn associativity_failure(alg: &dyn Algebra, keys: &[Key]) -> Option<(Key, Key, Key)> {
    let n = keys.len();
    (0..n * n).into_par_iter().find_map_first(|ij| {
        let (x, y) = (&keys[ij / n], &keys[ij % n]);
        let xy = alg.mul_basis(x, y);
        for z in keys {
            let lhs = mul(alg, &xy, &basis_element(alg, z));
            let rhs = mul(alg, &basis_element(alg, x), &alg.mul_basis(y, z));
            if lhs != rhs {
                return Some((x.clone(), y.clone(), z.clone()));
            }
        }
        None
    })
}

/// Linear map between finite-dimensional spaces given on basis keys, with
/// helpers for certifying homomorphisms and bijectivity.
pub struct LinearMap<'a> {
    pub source: &'a [Key],
    pub image: Vec<Element>,
}

impl<'a> LinearMap<'a> {
    pub fn new<F: Fn(&Key) -> Element + Sync>(source: &'a [Key], f: F) -> Self {
        let image = source.par_iter().map(&f).collect();
        LinearMap { source, image }
    }

    pub fn apply(&self, index: &HashMap<Key, usize>, x: &Element, target: &Domain) -> Element {
        let mut out = Element::zero(target);
        for (k, c) in x.terms() {
            out.add_scaled(&self.image[index[k]], c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        linalg::span_rank(&self.image)
    }
}

/// Checks `f(xy) = f(x)f(y)` (or `f(y)f(x)` when `anti`) on all basis pairs of a
/// finite algebra; returns the first failing pair.
pub fn homomorphism_failure(
    src: &dyn Algebra,
    dst: &dyn Algebra,
    f: &LinearMap<'_>,
    anti: bool,
) -> Option<(Key, Key)> {
    let keys = f.source;
    let index: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let n = keys.len();
    (0..n * n).into_par_iter().find_map_first(|ij| {
        let (i, j) = (ij / n, ij % n);
        let lhs = f.apply(&index, &src.mul_basis(&keys[i], &keys[j]), dst.domain());
        let rhs = if anti {
            mul(dst, &f.image[j], &f.image[i])
        } else {
            mul(dst, &f.image[i], &f.image[j])
        };
        if lhs != rhs {
            Some((keys[i].clone(), keys[j].clone()))
        } else {
            None
        }
    })
}

/// Span membership helper over a fixed key window.
pub struct Span {
    index: KeyIndex,
    ech: Echelon,
}

impl Span {
    pub fn new(keys: Vec<Key>) -> Self {
        Span { index: KeyIndex::from_keys(keys), ech: Echelon::new(false) }
    }

    pub fn of(keys: Vec<Key>, elems: &[Element]) -> Self {
        let mut s = Span::new(keys);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: &Element) -> bool {
        let v = self.index.vector(e).expect("element outside span window");
        self.ech.insert(&v)
    }

    pub fn contains(&self, e: &Element) -> bool {
        match self.index.vector(e) {
            Some(v) => self.ech.contains(&v),
            None => false,
        }
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }
}

/// ℂ as a one-dimensional algebra (basis key 0).
pub struct ScalarAlgebra {
    domain: Domain,
}

impl ScalarAlgebra {
    pub fn new() -> Self {
        ScalarAlgebra { domain: Domain::new("C") }
    }
}

impl Default for ScalarAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl Algebra for ScalarAlgebra {
    fn id(&self) -> String {
        "C".into()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        Some(vec![Key::Int(0)])
    }
    fn mul_basis(&self, _: &Key, _: &Key) -> Element {
        Element::basis(&self.domain, Key::Int(0))
    }
    fn identity(&self) -> Option<Element> {
        Some(Element::basis(&self.domain, Key::Int(0)))
    }
    fn local_unit_oracle(&self, _: &[Element]) -> Option<Element> {
        self.identity()
    }
}

/// R⊗A with the componentwise product; basis keys `(r, a)`.
pub struct TensorAlgebra {
    left: AlgebraHandle,
    right: AlgebraHandle,
    domain: Domain,
    id: String,
}

impl TensorAlgebra {
    pub fn new(left: AlgebraHandle, right: AlgebraHandle) -> Self {
        let id = format!("tensor({},{})", left.id(), right.id());
        TensorAlgebra { domain: Domain::new(&id), id, left, right }
    }

    pub fn left(&self) -> &AlgebraHandle {
        &self.left
    }

    pub fn right(&self) -> &AlgebraHandle {
        &self.right
    }

    /// `x⊗a` as an element of this algebra.
    pub fn embed(&self, x: &Element, a: &Element) -> Element {
        let mut out = Element::zero(&self.domain);
        for (kx, cx) in x.terms() {
            for (ka, ca) in a.terms() {
                out.add_term(Key::pair(kx, ka), &(cx * ca));
            }
        }
        out
    }
}

impl Algebra for TensorAlgebra {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        let l = self.left.finite_basis()?;
        let r = self.right.finite_basis()?;
        Some(l.iter().flat_map(|x| r.iter().map(move |a| Key::pair(x, a))).collect())
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        let l = self.left.sample_basis(radius);
        let r = self.right.sample_basis(radius);
        l.iter().flat_map(|x| r.iter().map(move |a| Key::pair(x, a))).collect()
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        let l = self.left.mul_basis(x.at(0), y.at(0));
        let r = self.right.mul_basis(x.at(1), y.at(1));
        self.embed(&l, &r)
    }
    fn identity(&self) -> Option<Element> {
        Some(self.embed(&self.left.identity()?, &self.right.identity()?))
    }
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        let (ls, rs) = split_pairs(items, self.left.domain(), self.right.domain());
        let el = self.left.local_unit_oracle(&ls).or_else(|| self.left.identity())?;
        let er = self.right.local_unit_oracle(&rs).or_else(|| self.right.identity())?;
        Some(self.embed(&el, &er))
    }
}

/// Components of pair-keyed elements, as basis elements of each factor.
fn split_pairs(items: &[Element], dl: &Domain, dr: &Domain) -> (Vec<Element>, Vec<Element>) {
    let mut ls = Vec::new();
    let mut rs = Vec::new();
    for e in items {
        for (k, _) in e.terms() {
            ls.push(Element::basis(dl, k.at(0).clone()));
            rs.push(Element::basis(dr, k.at(1).clone()));
        }
    }
    (ls, rs)
}

/// n×n matrices over a coefficient algebra; basis keys `(i, j, k)`.
pub struct MatrixAlgebra {
    n: usize,
    coeff: AlgebraHandle,
    domain: Domain,
    id: String,
}

impl MatrixAlgebra {
    pub fn new(n: usize, coeff: AlgebraHandle) -> Self {
        assert!(n > 0);
        let id = format!("M({},{})", n, coeff.id());
        MatrixAlgebra { n, coeff, domain: Domain::new(&id), id }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self) -> &AlgebraHandle {
        &self.coeff
    }

    /// `E_{ij} ⊗ x`.
    pub fn unit(&self, i: usize, j: usize, x: &Element) -> Element {
        Element::from_terms(
            &self.domain,
            x.terms()
                .map(|(k, c)| (Key::tuple(vec![Key::Int(i as i64), Key::Int(j as i64), k.clone()]), c.clone())),
        )
    }
}

impl Algebra for MatrixAlgebra {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        let cb = self.coeff.finite_basis()?;
        Some(self.keys_over(&cb))
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.keys_over(&self.coeff.sample_basis(radius))
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        if x.at(1) != y.at(0) {
            return Element::zero(&self.domain);
        }
        let i = x.at(0).as_int().unwrap() as usize;
        let l = y.at(1).as_int().unwrap() as usize;
        self.unit(i, l, &self.coeff.mul_basis(x.at(2), y.at(2)))
    }
    fn identity(&self) -> Option<Element> {
        let one = self.coeff.identity()?;
        let mut out = Element::zero(&self.domain);
        for i in 0..self.n {
            out.add_scaled(&self.unit(i, i, &one), &Scalar::one());
        }
        Some(out)
    }
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        let cs: Vec<Element> = items
            .iter()
            .flat_map(|e| e.support().map(|k| Element::basis(self.coeff.domain(), k.at(2).clone())).collect::<Vec<_>>())
            .collect();
        let e = self.coeff.local_unit_oracle(&cs).or_else(|| self.coeff.identity())?;
        let mut out = Element::zero(&self.domain);
        for i in 0..self.n {
            out.add_scaled(&self.unit(i, i, &e), &Scalar::one());
        }
        Some(out)
    }
}

impl MatrixAlgebra {
    fn keys_over(&self, cb: &[Key]) -> Vec<Key> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in cb {
                    out.push(Key::tuple(vec![Key::Int(i as i64), Key::Int(j as i64), k.clone()]));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units() {
        let m = MatrixAlgebra::new(2, Arc::new(ScalarAlgebra::new()));
        let one = Element::basis(&Domain::new("C"), Key::Int(0));
        let e12 = m.unit(0, 1, &one);
        let e21 = m.unit(1, 0, &one);
        assert_eq!(mul(&m, &e12, &e21), m.unit(0, 0, &one));
        assert_eq!(dim(&m), Some(4));
        assert_eq!(find_identity(&m), m.identity());
        assert_eq!(radical_dim(&m, true).unwrap(), 0);
    }
}
