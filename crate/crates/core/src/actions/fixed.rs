//! Fixed points `am = ε(a)m` in R or in M(R), and the action on linear maps `R → R`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::json;

use crate::actions::{extend_action_to_multipliers, ActionSpec, DEFAULT_RADIUS};
use crate::algebra::Algebra;
use crate::element::{Element, Key};
use crate::error::{Error, Result};
use crate::hopf::Cover;
use crate::linalg::{self, Echelon, KeyIndex, SparseVec};
use crate::multiplier::Multiplier;
use crate::report::{verdict, wkey, Check, Report};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Where {
    InR,
    InMR,
}

/// A basis of the fixed subspace with its certificates.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub multipliers: Vec<Multiplier>,
    /// The fixed points as elements, when they live in R (or M(R) = R).
    pub elements: Option<Vec<Element>>,
    /// Coordinates of the left maps on the basis of R, concatenated.
    pub coords: Vec<Vec<Scalar>>,
    pub double_centralizer: bool,
    pub report: Report,
}

impl FixedPoints {
    pub fn dim(&self) -> usize {
        self.multipliers.len()
    }
}

/// Merges duplicate columns and drops zeros.
pub(crate) fn normalize_row(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Collects equations keyed by a row label.
#[derive(Default)]
pub(crate) struct Rows {
    rows: BTreeMap<(usize, usize, usize, usize), Vec<(usize, Scalar)>>,
}

impl Rows {
    pub(crate) fn add(&mut self, label: (usize, usize, usize, usize), col: usize, c: Scalar) {
        if !c.is_zero() {
            self.rows.entry(label).or_default().push((col, c));
        }
    }

    pub(crate) fn finish(self) -> Vec<SparseVec> {
        self.rows.into_values().map(normalize_row).filter(|r| !r.is_empty()).collect()
    }
}

/// Multiplier of a finite algebra given by `L(r_j) = Σ_k l[k·n+j] r_k` and likewise `R`.
pub(crate) fn multiplier_from_matrices(alg: &Arc<dyn Algebra>, keys: &[Key], l: &[Scalar], r: &[Scalar]) -> Multiplier {
    let n = keys.len();
    let d = alg.domain().clone();
    let image = |m: &[Scalar], j: usize| {
        Element::from_terms(&d, (0..n).filter(|&k| !m[k * n + j].is_zero()).map(|k| (keys[k].clone(), m[k * n + j].clone())))
    };
    let left: Vec<Element> = (0..n).map(|j| image(l, j)).collect();
    let right: Vec<Element> = (0..n).map(|j| image(r, j)).collect();
    let index: Arc<BTreeMap<Key, usize>> = Arc::new(keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect());
    let (i1, i2) = (index.clone(), index);
    let dz = alg.domain().clone();
    let dz2 = dz.clone();
    Multiplier::from_basis_maps(
        alg.domain(),
        move |k| i1.get(k).map(|&j| left[j].clone()).unwrap_or_else(|| Element::zero(&dz)),
        move |k| i2.get(k).map(|&j| right[j].clone()).unwrap_or_else(|| Element::zero(&dz2)),
    )
}

/// Concatenated coordinates of `m·r_j` over the basis.
pub fn multiplier_coords(m: &Multiplier, alg: &dyn Algebra, keys: &[Key]) -> Vec<Scalar> {
    let idx = KeyIndex::from_keys(keys.to_vec());
    let n = keys.len();
    let mut out = vec![Scalar::zero(); n * n];
    for (j, k) in keys.iter().enumerate() {
        let img = m.left(&Element::basis(alg.domain(), k.clone()));
        for (kk, c) in img.terms() {
            let i = idx.get(kk).expect("multiplier image inside the basis");
            out[j * n + i] = c.clone();
        }
    }
    out
}

/// Rows for `(am)(r_j) = ε(a) m(r_j)` on the left block of unknowns starting at `offset`.
fn push_left_fixed(s: &ActionSpec, a_keys: &[Key], keys: &[Key], idx: &KeyIndex, offset: usize, tag: usize, rows: &mut Rows) -> Result<()> {
    let h = s.a();
    let n = keys.len();
    for (ai, a) in a_keys.iter().enumerate() {
        let ea = h.basis(a);
        let eps = h.counit_basis(a);
        for (j, kj) in keys.iter().enumerate() {
            let x = s.r_basis(kj);
            let e = s.local_unit(std::slice::from_ref(&x))?;
            let t = h.cover(Cover::T4, &ea, &h.antipode_inv(&e))?;
            for (ks, c) in t.terms() {
                // p ▷ m(S(q) ▷ x): S(q)▷x = Σ d_t r_t, m(r_t) = Σ_k M[k][t] r_k, p ▷ r_k = Σ g_o r_o
                let sqx = s.act(&h.antipode_basis(&ks[1]), &x);
                for (kt, dt) in sqx.terms() {
                    let t_i = idx.get(kt).ok_or_else(|| Error::NotFiniteDimensional(s.r.id()))?;
                    for (k, kk) in keys.iter().enumerate() {
                        let pr = s.act_basis(&ks[0], kk);
                        for (ko, g) in pr.terms() {
                            let o = idx.get(ko).ok_or_else(|| Error::NotFiniteDimensional(s.r.id()))?;
                            rows.add((tag, ai, j, o), offset + k * n + t_i, &(c * dt) * g);
                        }
                    }
                }
            }
            for o in 0..n {
                rows.add((tag, ai, j, o), offset + o * n + j, -eps.clone());
            }
        }
    }
    Ok(())
}

/// Rows for `r_j(am) = ε(a) r_j m` on the right block of unknowns.
fn push_right_fixed(s: &ActionSpec, a_keys: &[Key], keys: &[Key], idx: &KeyIndex, offset: usize, tag: usize, rows: &mut Rows) -> Result<()> {
    let h = s.a();
    let n = keys.len();
    for (ai, a) in a_keys.iter().enumerate() {
        let ea = h.basis(a);
        let eps = h.counit_basis(a);
        for (j, kj) in keys.iter().enumerate() {
            let x = s.r_basis(kj);
            let e = s.local_unit(std::slice::from_ref(&x))?;
            let t = h.cover(Cover::T2, &h.antipode(&e), &ea)?;
            for (ks, c) in t.terms() {
                let spx = s.act(&h.antipode_inv_basis(&ks[0]), &x);
                for (kt, dt) in spx.terms() {
                    let t_i = idx.get(kt).ok_or_else(|| Error::NotFiniteDimensional(s.r.id()))?;
                    for (k, kk) in keys.iter().enumerate() {
                        let qr = s.act_basis(&ks[1], kk);
                        for (ko, g) in qr.terms() {
                            let o = idx.get(ko).ok_or_else(|| Error::NotFiniteDimensional(s.r.id()))?;
                            rows.add((tag, ai, j, o), offset + k * n + t_i, &(c * dt) * g);
                        }
                    }
                }
            }
            for o in 0..n {
                rows.add((tag, ai, j, o), offset + o * n + j, -eps.clone());
            }
        }
    }
    Ok(())
}

/// Rows saying that `(L, R)` is a double centralizer of the finite algebra.
fn push_double_centralizer(alg: &dyn Algebra, keys: &[Key], idx: &KeyIndex, rows: &mut Rows) {
    let n = keys.len();
    let nn = n * n;
    let prod = |i: usize, j: usize| alg.mul_basis(&keys[i], &keys[j]);
    for i in 0..n {
        for j in 0..n {
            let rij = prod(i, j);
            // L(r_i r_j) − L(r_i) r_j
            for (kt, c) in rij.terms() {
                let t = idx.get(kt).expect("closed");
                for o in 0..n {
                    rows.add((10, i, j, o), o * n + t, c.clone());
                }
            }
            for k in 0..n {
                for (ko, c) in prod(k, j).terms() {
                    rows.add((10, i, j, idx.get(ko).unwrap()), k * n + i, -c.clone());
                }
            }
            // R(r_i r_j) − r_i R(r_j)
            for (kt, c) in rij.terms() {
                let t = idx.get(kt).unwrap();
                for o in 0..n {
                    rows.add((11, i, j, o), nn + o * n + t, c.clone());
                }
            }
            for k in 0..n {
                for (ko, c) in prod(i, k).terms() {
                    rows.add((11, i, j, idx.get(ko).unwrap()), nn + k * n + j, -c.clone());
                }
            }
            // R(r_i) r_j − r_i L(r_j)
            for k in 0..n {
                for (ko, c) in prod(k, j).terms() {
                    rows.add((12, i, j, idx.get(ko).unwrap()), nn + k * n + i, c.clone());
                }
                for (ko, c) in prod(i, k).terms() {
                    rows.add((12, i, j, idx.get(ko).unwrap()), k * n + j, -c.clone());
                }
            }
        }
    }
}

/// Basis of the fixed points, certified by the commutation identities
/// `a(mx) = m(ax)`, `a(xm) = (ax)m` and closure under products.
///
/// In M(R) a unital R is identified with M(R) unless `force_double_centralizer`.
pub fn fixed_points(s: &ActionSpec, place: Where, force_double_centralizer: bool) -> Result<FixedPoints> {
    let keys = s.r.finite_basis().ok_or_else(|| Error::InfiniteDimensionalNoOracle(s.r.id()))?;
    let a_keys = s.a().finite_basis().unwrap_or_else(|| s.a().sample_basis(DEFAULT_RADIUS));
    let sampled = !s.a().is_finite();
    let n = keys.len();
    let idx = KeyIndex::from_keys(keys.clone());
    let unital = s.r.identity().is_some();
    let dc = place == Where::InMR && (force_double_centralizer || !unital);

    let (multipliers, elements) = if !dc {
        let mut rows = Rows::default();
        for (ai, a) in a_keys.iter().enumerate() {
            let eps = s.a().counit_basis(a);
            for (j, kj) in keys.iter().enumerate() {
                for (ko, c) in s.act_basis(a, kj).terms() {
                    let o = idx.get(ko).ok_or_else(|| Error::NotFiniteDimensional(s.r.id()))?;
                    rows.add((0, ai, o, 0), j, c.clone());
                }
                rows.add((0, ai, j, 0), j, -eps.clone());
            }
        }
        let kernel = linalg::nullspace(&rows.finish(), n);
        let elems: Vec<Element> = kernel
            .iter()
            .map(|v| Element::from_terms(s.r.domain(), v.iter().map(|(i, c)| (keys[*i].clone(), c.clone()))))
            .collect();
        let mults: Vec<Multiplier> = elems.iter().map(|e| Multiplier::from_element(&s.r, e)).collect();
        (mults, Some(elems))
    } else {
        let mut rows = Rows::default();
        push_double_centralizer(s.r.as_ref(), &keys, &idx, &mut rows);
        push_left_fixed(s, &a_keys, &keys, &idx, 0, 20, &mut rows)?;
        push_right_fixed(s, &a_keys, &keys, &idx, n * n, 21, &mut rows)?;
        let kernel = linalg::nullspace(&rows.finish(), 2 * n * n);
        let mults = kernel
            .iter()
            .map(|v| {
                let dense = linalg::dense_from_sparse(v, 2 * n * n);
                multiplier_from_matrices(&s.r, &keys, &dense[..n * n], &dense[n * n..])
            })
            .collect();
        (mults, None)
    };
    let coords: Vec<Vec<Scalar>> = multipliers.iter().map(|m| multiplier_coords(m, s.r.as_ref(), &keys)).collect();

    let ids = s.ids();
    let mut report = Report::new();
    let mut c = Check::new("fixed-points-fixed", &ids, sampled);
    for (i, m) in multipliers.iter().enumerate() {
        for a in &a_keys {
            let am = extend_action_to_multipliers(s, &s.a().basis(a), m);
            let ok = am.agrees_on(&m.scale(&s.a().counit_basis(a)), s.r.as_ref(), &keys);
            c.case(ok, || json!({"fixed": i, "a": wkey(a)}));
        }
    }
    report.push(c.finish());
    let mut c = Check::new("fixed-points-commute", &ids, sampled);
    for (i, m) in multipliers.iter().enumerate() {
        for a in &a_keys {
            let ea = s.a().basis(a);
            for x in &keys {
                let ex = s.r_basis(x);
                let ok = s.act(&ea, &m.left(&ex)) == m.left(&s.act(&ea, &ex))
                    && s.act(&ea, &m.right(&ex)) == m.right(&s.act(&ea, &ex));
                c.case(ok, || json!({"fixed": i, "a": wkey(a), "x": wkey(x)}));
            }
        }
    }
    report.push(c.finish());
    let mut span = Echelon::new(false);
    for v in &coords {
        span.insert(&linalg::sparse_from_dense(v));
    }
    let mut c = Check::new("fixed-points-subalgebra", &ids, sampled);
    for (i, m1) in multipliers.iter().enumerate() {
        for (j, m2) in multipliers.iter().enumerate() {
            let p = multiplier_coords(&m1.product(m2), s.r.as_ref(), &keys);
            let ok = span.contains(&linalg::sparse_from_dense(&p));
            c.case(ok, || json!({"pair": [i, j]}));
        }
    }
    c.detail(json!({"dim": multipliers.len(), "double_centralizer": dc}));
    report.push(c.finish());

    Ok(FixedPoints { multipliers, elements, coords, double_centralizer: dc, report })
}

/// `(aλ)(x) = Σ a₍₁₎ λ(S(a₍₂₎)x)` for a linear map `λ: R → R`.
pub fn linear_map_action<'a, L>(s: &'a ActionSpec, a: &'a Element, lam: L) -> impl Fn(&Element) -> Result<Element> + 'a
where
    L: Fn(&Element) -> Element + 'a,
{
    move |x: &Element| {
        let h = s.a();
        let e = s.local_unit(std::slice::from_ref(x))?;
        let t = h.cover(Cover::T4, a, &h.antipode_inv(&e))?;
        let mut out = Element::zero(s.r.domain());
        for (ks, c) in t.terms() {
            let inner = lam(&s.act(&h.antipode_basis(&ks[1]), x));
            out.add_scaled(&s.act(&h.basis(&ks[0]), &inner), c);
        }
        Ok(out)
    }
}

/// Fixed linear maps (`aλ = ε(a)λ`) as matrices `λ[k·n+j]`, with the
/// certificate `aλ(x) = λ(ax)`.
pub fn linear_map_fixed_points(s: &ActionSpec) -> Result<(Vec<Vec<Scalar>>, Report)> {
    let keys = s.r.finite_basis().ok_or_else(|| Error::InfiniteDimensionalNoOracle(s.r.id()))?;
    let a_keys = s.a().finite_basis().unwrap_or_else(|| s.a().sample_basis(DEFAULT_RADIUS));
    let n = keys.len();
    let idx = KeyIndex::from_keys(keys.clone());
    let mut rows = Rows::default();
    push_left_fixed(s, &a_keys, &keys, &idx, 0, 30, &mut rows)?;
    let kernel = linalg::nullspace(&rows.finish(), n * n);
    let maps: Vec<Vec<Scalar>> = kernel.iter().map(|v| linalg::dense_from_sparse(v, n * n)).collect();

    let apply = |m: &[Scalar], x: &Element| {
        let mut out = Element::zero(s.r.domain());
        for (k, c) in x.terms() {
            let j = idx.get(k).expect("basis key");
            for kk in 0..n {
                if !m[kk * n + j].is_zero() {
                    out.add_term(keys[kk].clone(), &(c * &m[kk * n + j]));
                }
            }
        }
        out
    };
    let mut c = Check::new("linear-map-fixed-intertwines", &s.ids(), !s.a().is_finite());
    for (i, m) in maps.iter().enumerate() {
        for a in &a_keys {
            for x in &keys {
                let ex = s.r_basis(x);
                let ok = s.act(&s.a().basis(a), &apply(m, &ex)) == apply(m, &s.act(&s.a().basis(a), &ex));
                c.case(ok, || json!({"map": i, "a": wkey(a), "x": wkey(x)}));
            }
        }
    }
    c.detail(json!({"dim": maps.len()}));
    let mut report = Report::new();
    report.push(c.finish());
    report.push(verdict("linear-map-fixed-nonempty", &s.ids(), !maps.is_empty(), false, json!({"dim": maps.len()})));
    Ok((maps, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{adjoint, translation, trivial};
    use crate::instances::{group_algebra, GroupSpec};

    #[test]
    fn adjoint_fixed_points_are_class_sums() {
        let s = adjoint(&group_algebra(GroupSpec::s3()));
        let f = fixed_points(&s, Where::InR, false).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(f.report.all_passed(), "{}", f.report.to_json_lines());
    }

    #[test]
    fn translation_fixed_points_are_scalars() {
        let s = translation(GroupSpec::cyclic(2));
        for force in [false, true] {
            let f = fixed_points(&s, Where::InMR, force).unwrap();
            assert_eq!(f.dim(), 1);
            assert_eq!(f.double_centralizer, force);
            assert!(f.report.all_passed());
            let one = s.r.identity().unwrap();
            let m = &f.multipliers[0];
            let v = m.as_element(s.r.as_ref()).unwrap();
            assert_eq!(v.clone(), one.scale(&v.coeff(&Key::Int(0))));
        }
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let h = group_algebra(GroupSpec::cyclic(2));
        let r = group_algebra(GroupSpec::s3()).algebra();
        let s = trivial(&h, &r);
        assert_eq!(fixed_points(&s, Where::InR, false).unwrap().dim(), 6);
        assert_eq!(fixed_points(&s, Where::InMR, true).unwrap().dim(), 6);
    }

    #[test]
    fn fixed_linear_maps_intertwine() {
        let s = translation(GroupSpec::cyclic(2));
        let (maps, rep) = linear_map_fixed_points(&s).unwrap();
        // End(K(Z2)) fixed by conjugation with the swap: dimension 2
        assert_eq!(maps.len(), 2);
        assert!(rep.all_passed());
    }

    #[test]
    fn countable_r_has_no_oracle() {
        let s = translation(GroupSpec::integers());
        assert_eq!(fixed_points(&s, Where::InR, false).unwrap_err().kind(), "InfiniteDimensionalNoOracle");
    }
}
