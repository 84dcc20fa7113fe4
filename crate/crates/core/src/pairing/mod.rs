//! Dual pairs `⟨A, B⟩` of regular multiplier Hopf algebras and the four
//! module structures they induce.
//!
//! Notation follows the usual conventions:
//! `a▷b = Σ⟨a, b₍₂₎⟩b₍₁₎`, `b◁a = Σ⟨a, b₍₁₎⟩b₍₂₎`,
//! `b▷a = Σ⟨a₍₂₎, b⟩a₍₁₎`, `a◁b = Σ⟨a₍₁₎, b⟩a₍₂₎`.

pub mod diamond;
pub mod heisenberg;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::actions::{fixed_points, solve_in_algebra, Where, stacked, verify_module_algebra, ActFn, ActionSpec, ModuleSpec};
use crate::aqg::{finite_dual, DualData};
use crate::element::{Element, Key};
use crate::error::{Error, Result};
use crate::hopf::{Cover, RegularMha};
use crate::instances::{function_algebra, group_algebra, GroupSpec};
use crate::linalg;
use crate::report::{verdict, wkey, Check, Report};
use crate::scalar::Scalar;

pub use diamond::{diamond_algebra, diamond_matrix_iso, matrix_realization, rank_one_realization, DiamondAlgebra, RankOne};
pub use heisenberg::{
    anti_isomorphism, display_check, display_product, flip_relabel_isomorphism, heisenberg_check, pairing_smash,
    rewrite_forward, rewrite_inverse, standard_module, verify_standard_module, Order, StandardModule, StandardSide,
};

pub type PairFn = Arc<dyn Fn(&Key, &Key) -> Scalar + Send + Sync>;

/// Window radius used when a pair is countable.
pub const PAIR_RADIUS: i64 = 5;

/// A bilinear pairing with its four actions stored explicitly.
#[derive(Clone)]
pub struct DualPair {
    pub name: String,
    pub a: RegularMha,
    pub b: RegularMha,
    pair: PairFn,
    /// `(a, b) ↦ a▷b`
    a_on_b: ActFn,
    /// `(b, a) ↦ b▷a`
    b_on_a: ActFn,
    /// `(b, a) ↦ b◁a`
    b_ract_a: ActFn,
    /// `(a, b) ↦ a◁b`
    a_ract_b: ActFn,
    /// Present when `B = Â` for an algebraic quantum group `A`.
    pub dual: Option<Arc<DualData>>,
}

impl std::fmt::Debug for DualPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DualPair({}: {} × {})", self.name, self.a.id(), self.b.id())
    }
}

fn table_fn(table: HashMap<(Key, Key), Element>) -> ActFn {
    Arc::new(move |x, y| table[&(x.clone(), y.clone())].clone())
}

fn gram(a: &[Key], b: &[Key], pair: &PairFn) -> Vec<Vec<Scalar>> {
    a.iter().map(|ka| b.iter().map(|kb| pair(ka, kb)).collect()).collect()
}

fn matrix_rank(m: &[Vec<Scalar>]) -> usize {
    linalg::rank(&m.iter().map(|r| linalg::sparse_from_dense(r)).collect::<Vec<_>>())
}

impl DualPair {
    /// A pair of finite-dimensional Hopf algebras; the actions come from the
    /// full coproducts. Degenerate pairings are rejected.
    pub fn new<F>(name: &str, a: RegularMha, b: RegularMha, pair: F) -> Result<Self>
    where
        F: Fn(&Key, &Key) -> Scalar + Send + Sync + 'static,
    {
        let p = Self::new_unchecked(name, a, b, pair)?;
        let (ka, kb) = (p.a.finite_basis().unwrap(), p.b.finite_basis().unwrap());
        let r = matrix_rank(&gram(&ka, &kb, &p.pair));
        if r != ka.len() || r != kb.len() {
            return Err(Error::Singular(format!("degenerate pairing {}: rank {} for dims {}×{}", name, r, ka.len(), kb.len())));
        }
        Ok(p)
    }

    /// As [`DualPair::new`] without the rank test, so that degenerate forms
    /// can be fed to [`verify_pairing`].
    pub fn new_unchecked<F>(name: &str, a: RegularMha, b: RegularMha, pair: F) -> Result<Self>
    where
        F: Fn(&Key, &Key) -> Scalar + Send + Sync + 'static,
    {
        let ka = a.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(a.id()))?;
        let kb = b.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(b.id()))?;
        if a.identity().is_none() {
            return Err(Error::NotHopf(a.id()));
        }
        if b.identity().is_none() {
            return Err(Error::NotHopf(b.id()));
        }
        let pair: PairFn = Arc::new(pair);
        let (mut aob, mut boa, mut bra, mut arb) = (HashMap::new(), HashMap::new(), HashMap::new(), HashMap::new());
        for y in &kb {
            let d = b.full_coproduct(&b.basis(y)).unwrap();
            for x in &ka {
                aob.insert((x.clone(), y.clone()), d.contract_leg(1, |k| pair(x, k)).into_element());
                bra.insert((y.clone(), x.clone()), d.contract_leg(0, |k| pair(x, k)).into_element());
            }
        }
        for x in &ka {
            let d = a.full_coproduct(&a.basis(x)).unwrap();
            for y in &kb {
                boa.insert((y.clone(), x.clone()), d.contract_leg(1, |k| pair(k, y)).into_element());
                arb.insert((x.clone(), y.clone()), d.contract_leg(0, |k| pair(k, y)).into_element());
            }
        }
        Ok(DualPair {
            name: name.into(),
            a,
            b,
            pair,
            a_on_b: table_fn(aob),
            b_on_a: table_fn(boa),
            b_ract_a: table_fn(bra),
            a_ract_b: table_fn(arb),
            dual: None,
        })
    }

    /// `A = ℂG`, `B = K(G)`, `⟨λ_p, δ_q⟩ = [p = q]`, with the actions in
    /// closed form. Works for countable groups.
    pub fn canonical_pair(g: GroupSpec) -> Self {
        let a = group_algebra(g.clone());
        let b = function_algebra(g.clone());
        let (da, db) = (a.domain().clone(), b.domain().clone());
        let (g1, g2) = (g.clone(), g);
        let db2 = db.clone();
        let da2 = da.clone();
        let same = |x: &Key, y: &Key| x == y;
        DualPair {
            name: format!("canonical({})", g1.name()),
            pair: Arc::new(move |p, q| if same(p, q) { Scalar::from_int(1) } else { Scalar::zero() }),
            // λ_p ▷ δ_q = δ_{qp⁻¹}
            a_on_b: Arc::new(move |p, q| Element::basis(&db, g1.mul(q, &g1.inv(p)))),
            // δ_q ◁ λ_p = δ_{p⁻¹q}
            b_ract_a: Arc::new(move |q, p| Element::basis(&db2, g2.mul(&g2.inv(p), q))),
            // δ_q ▷ λ_p = λ_p ◁ δ_q = [p = q]λ_p
            b_on_a: Arc::new(move |q, p| if p == q { Element::basis(&da, p.clone()) } else { Element::zero(&da) }),
            a_ract_b: Arc::new(move |p, q| if p == q { Element::basis(&da2, p.clone()) } else { Element::zero(&da2) }),
            a,
            b,
            dual: None,
        }
    }

    /// `A` with its dual `Â`, paired by `⟨aⱼ, ωₖ⟩ = φ(aⱼaₖ)`.
    pub fn from_finite(h: &RegularMha) -> Result<Self> {
        let dual = Arc::new(finite_dual(h)?);
        let index: HashMap<Key, usize> = dual.keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let d2 = dual.clone();
        let mut p = Self::new(&format!("dual({})", h.id()), h.clone(), dual.hopf.clone(), move |x, w| {
            d2.gram[index[x]][index[w]].clone()
        })?;
        p.dual = Some(dual);
        Ok(p)
    }

    pub fn ids(&self) -> Vec<String> {
        vec![self.name.clone(), self.a.id(), self.b.id()]
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn sample_a(&self, radius: i64) -> Vec<Key> {
        self.a.finite_basis().unwrap_or_else(|| self.a.sample_basis(radius))
    }

    pub fn sample_b(&self, radius: i64) -> Vec<Key> {
        self.b.finite_basis().unwrap_or_else(|| self.b.sample_basis(radius))
    }

    pub fn pair_basis(&self, a: &Key, b: &Key) -> Scalar {
        (self.pair)(a, b)
    }

    pub fn pair(&self, a: &Element, b: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let v = (self.pair)(ka, kb);
                if !v.is_zero() {
                    acc += &(&(ca * cb) * &v);
                }
            }
        }
        acc
    }

    pub fn a_on_b_basis(&self, a: &Key, b: &Key) -> Element {
        (self.a_on_b)(a, b)
    }

    pub fn b_on_a_basis(&self, b: &Key, a: &Key) -> Element {
        (self.b_on_a)(b, a)
    }

    pub fn b_ract_a_basis(&self, b: &Key, a: &Key) -> Element {
        (self.b_ract_a)(b, a)
    }

    pub fn a_ract_b_basis(&self, a: &Key, b: &Key) -> Element {
        (self.a_ract_b)(a, b)
    }

    /// `a▷b`
    pub fn a_on_b(&self, a: &Element, b: &Element) -> Element {
        bilinear(a, b, self.b.domain(), |x, y| (self.a_on_b)(x, y))
    }

    /// `b▷a`
    pub fn b_on_a(&self, b: &Element, a: &Element) -> Element {
        bilinear(b, a, self.a.domain(), |y, x| (self.b_on_a)(y, x))
    }

    /// `b◁a`
    pub fn b_ract_a(&self, b: &Element, a: &Element) -> Element {
        bilinear(b, a, self.b.domain(), |y, x| (self.b_ract_a)(y, x))
    }

    /// `a◁b`
    pub fn a_ract_b(&self, a: &Element, b: &Element) -> Element {
        bilinear(a, b, self.a.domain(), |x, y| (self.a_ract_b)(x, y))
    }

    /// B as a left A-module algebra under `a▷b`.
    pub fn a_on_b_action(&self) -> ActionSpec {
        let f = self.a_on_b.clone();
        let m = ModuleSpec::on_algebra("pairing-a-on-b", self.a.clone(), &self.b.algebra(), move |x, y| f(x, y));
        ActionSpec::new(m, self.b.algebra()).expect("same domain")
    }

    /// A as a left B-module algebra under `b▷a`.
    pub fn b_on_a_action(&self) -> ActionSpec {
        let f = self.b_on_a.clone();
        let m = ModuleSpec::on_algebra("pairing-b-on-a", self.b.clone(), &self.a.algebra(), move |y, x| f(y, x));
        ActionSpec::new(m, self.a.algebra()).expect("same domain")
    }

    /// Some `e ∈ A` with `e▷b = b`.
    pub fn unit_a_for(&self, b: &Element) -> Result<Element> {
        solve_in_algebra(&self.a, magnitude(b), &stacked(std::slice::from_ref(b)), |k| {
            stacked(&[self.a_on_b(&self.a.basis(k), b)])
        })
    }

    /// Some `f ∈ B` with `a◁f = a`.
    pub fn unit_b_right_for(&self, a: &Element) -> Result<Element> {
        solve_in_algebra(&self.b, magnitude(a), &stacked(std::slice::from_ref(a)), |k| {
            stacked(&[self.a_ract_b(a, &self.b.basis(k))])
        })
    }

    /// Some `f ∈ B` with `f▷a = a`.
    pub fn unit_b_left_for(&self, a: &Element) -> Result<Element> {
        solve_in_algebra(&self.b, magnitude(a), &stacked(std::slice::from_ref(a)), |k| {
            stacked(&[self.b_on_a(&self.b.basis(k), a)])
        })
    }

    /// Some `e ∈ A` with `b◁e = b`.
    pub fn unit_a_right_for(&self, b: &Element) -> Result<Element> {
        solve_in_algebra(&self.a, magnitude(b), &stacked(std::slice::from_ref(b)), |k| {
            stacked(&[self.b_ract_a(b, &self.a.basis(k))])
        })
    }

    /// `a◁b` through `T3(a, e) = Σ a₍₁₎e ⊗ a₍₂₎` with `e▷b = b`.
    pub fn a_ract_b_covered(&self, a: &Element, b: &Element) -> Result<Element> {
        let e = self.unit_a_for(b)?;
        let t = self.a.cover(Cover::T3, a, &e)?;
        Ok(t.contract_leg(0, |k| self.pair(&self.a.basis(k), b)).into_element())
    }

    /// `b▷a` through `T1(a, e) = Σ a₍₁₎ ⊗ a₍₂₎e` with `b◁e = b`.
    pub fn b_on_a_covered(&self, b: &Element, a: &Element) -> Result<Element> {
        let e = self.unit_a_right_for(b)?;
        let t = self.a.cover(Cover::T1, a, &e)?;
        Ok(t.contract_leg(1, |k| self.pair(&self.a.basis(k), b)).into_element())
    }

    /// `a▷b` through `T4(b, f) = Σ b₍₁₎ ⊗ fb₍₂₎` with `a◁f = a`.
    pub fn a_on_b_covered(&self, a: &Element, b: &Element) -> Result<Element> {
        let f = self.unit_b_right_for(a)?;
        let t = self.b.cover(Cover::T4, b, &f)?;
        Ok(t.contract_leg(1, |k| self.pair(a, &self.b.basis(k))).into_element())
    }

    /// `b◁a` through `T3(b, f) = Σ b₍₁₎f ⊗ b₍₂₎` with `f▷a = a`.
    pub fn b_ract_a_covered(&self, b: &Element, a: &Element) -> Result<Element> {
        let f = self.unit_b_left_for(a)?;
        let t = self.b.cover(Cover::T3, b, &f)?;
        Ok(t.contract_leg(0, |k| self.pair(a, &self.b.basis(k))).into_element())
    }
}

fn magnitude(e: &Element) -> i64 {
    e.support().map(Key::magnitude).max().unwrap_or(0)
}

fn bilinear<F>(x: &Element, y: &Element, target: &crate::element::Domain, f: F) -> Element
where
    F: Fn(&Key, &Key) -> Element,
{
    let mut out = Element::zero(target);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            out.add_scaled(&f(kx, ky), &(cx * cy));
        }
    }
    out
}

/// Runs `f` over `xs × ys × zs` in parallel and records the first failure.
fn triple_check<F>(name: &str, ids: &[String], sampled: bool, xs: &[Key], ys: &[Key], zs: &[Key], f: F) -> crate::report::CheckResult
where
    F: Fn(&Key, &Key, &Key) -> bool + Sync,
{
    let n = xs.len() * ys.len() * zs.len();
    let fail = (0..n).into_par_iter().find_map_first(|i| {
        let (x, y, z) = (&xs[i / (ys.len() * zs.len())], &ys[(i / zs.len()) % ys.len()], &zs[i % zs.len()]);
        (!f(x, y, z)).then(|| json!([wkey(x), wkey(y), wkey(z)]))
    });
    let mut chk = Check::new(name, ids, sampled);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    chk.detail(json!({"cases": n}));
    chk.finish()
}

/// The eight pairing identities, non-degeneracy, unitality of the four
/// modules, and the module-algebra property in both directions.
pub fn verify_pairing(p: &DualPair, radius: i64) -> Report {
    let ids = p.ids();
    let sampled = !p.is_finite();
    let (sa, sb) = (p.sample_a(radius), p.sample_b(radius));
    let (ea, eb) = (|k: &Key| p.a.basis(k), |k: &Key| p.b.basis(k));
    let mut report = Report::new();

    let g = gram(&sa, &sb, &p.pair);
    let rank = matrix_rank(&g);
    report.push(verdict(
        "pairing-nondegenerate",
        &ids,
        rank == sa.len() && rank == sb.len(),
        sampled,
        json!({"rank": rank, "dim_a": sa.len(), "dim_b": sb.len()}),
    ));

    report.push(triple_check("pairing-right-b-on-a", &ids, sampled, &sa, &sb, &sb, |a, b, b2| {
        p.pair(&p.a_ract_b_basis(a, b), &eb(b2)) == p.pair(&ea(a), &p.b.mul_basis(b, b2))
    }));
    report.push(triple_check("pairing-left-b-on-a", &ids, sampled, &sa, &sb, &sb, |a, b, b2| {
        p.pair(&p.b_on_a_basis(b, a), &eb(b2)) == p.pair(&ea(a), &p.b.mul_basis(b2, b))
    }));
    report.push(triple_check("pairing-right-a-on-b", &ids, sampled, &sa, &sa, &sb, |a, a2, b| {
        p.pair(&ea(a2), &p.b_ract_a_basis(b, a)) == p.pair(&p.a.mul_basis(a, a2), &eb(b))
    }));
    report.push(triple_check("pairing-left-a-on-b", &ids, sampled, &sa, &sa, &sb, |a, a2, b| {
        p.pair(&ea(a2), &p.a_on_b_basis(a, b)) == p.pair(&p.a.mul_basis(a2, a), &eb(b))
    }));

    let one = [Key::Int(0)];
    report.push(triple_check("covered-right-b-on-a", &ids, sampled, &sa, &sb, &one, |a, b, _| {
        p.a_ract_b_covered(&ea(a), &eb(b)).ok() == Some(p.a_ract_b_basis(a, b))
    }));
    report.push(triple_check("covered-left-b-on-a", &ids, sampled, &sb, &sa, &one, |b, a, _| {
        p.b_on_a_covered(&eb(b), &ea(a)).ok() == Some(p.b_on_a_basis(b, a))
    }));
    report.push(triple_check("covered-left-a-on-b", &ids, sampled, &sa, &sb, &one, |a, b, _| {
        p.a_on_b_covered(&ea(a), &eb(b)).ok() == Some(p.a_on_b_basis(a, b))
    }));
    report.push(triple_check("covered-right-a-on-b", &ids, sampled, &sb, &sa, &one, |b, a, _| {
        p.b_ract_a_covered(&eb(b), &ea(a)).ok() == Some(p.b_ract_a_basis(b, a))
    }));

    // Every vector is fixed by some element of the acting algebra.
    let mut chk = Check::new("pairing-modules-unital", &ids, sampled);
    for b in &sb {
        let v = eb(b);
        chk.case(p.unit_a_for(&v).is_ok(), || json!({"module": "a-on-b", "vector": wkey(b)}));
        chk.case(p.unit_a_right_for(&v).is_ok(), || json!({"module": "b-right-a", "vector": wkey(b)}));
    }
    for a in &sa {
        let v = ea(a);
        chk.case(p.unit_b_left_for(&v).is_ok(), || json!({"module": "b-on-a", "vector": wkey(a)}));
        chk.case(p.unit_b_right_for(&v).is_ok(), || json!({"module": "a-right-b", "vector": wkey(a)}));
    }
    report.push(chk.finish());

    let inner = if sampled { 2 } else { radius };
    for (name, action) in [("pairing-module-algebra-a-on-b", p.a_on_b_action()), ("pairing-module-algebra-b-on-a", p.b_on_a_action())] {
        let xs = action.a().finite_basis().unwrap_or_else(|| action.a().sample_basis(inner));
        let rs = action.r.finite_basis().unwrap_or_else(|| action.r.sample_basis(inner));
        let sub = verify_module_algebra(&action, &xs, &rs);
        let failed: Vec<String> = sub.failures().iter().map(|f| f.check.clone()).collect();
        report.push(verdict(name, &ids, failed.is_empty(), sampled, json!({"failed": failed})));
    }
    report
}

/// The A-fixed multipliers of B are the scalars: dimension 1.
pub fn fixed_point_scalars(p: &DualPair) -> Result<crate::report::CheckResult> {
    let fp = fixed_points(&p.a_on_b_action(), Where::InMR, false)?;
    let dim = fp.dim();
    Ok(verdict("fixed-points-scalar", &p.ids(), dim == 1, !p.a.is_finite(), json!({"dim": dim})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pairs_verify() {
        for g in [GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::s3()] {
            let r = verify_pairing(&DualPair::canonical_pair(g), PAIR_RADIUS);
            assert!(r.all_passed(), "{}", r.to_json_lines());
            assert_eq!(r.entries.len(), 12);
        }
    }

    #[test]
    fn integer_pair_is_sampled_pass() {
        let r = verify_pairing(&DualPair::canonical_pair(GroupSpec::integers()), PAIR_RADIUS);
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert!(r.entries.iter().all(|c| c.status == crate::report::Status::SampledPass));
    }

    #[test]
    fn closed_forms_match_coproduct_formulas() {
        let g = GroupSpec::s3();
        let c = DualPair::canonical_pair(g.clone());
        let gen = DualPair::new("generic", group_algebra(g.clone()), function_algebra(g.clone()), |p, q| {
            if p == q {
                Scalar::from_int(1)
            } else {
                Scalar::zero()
            }
        })
        .unwrap();
        for p in g.elements().unwrap() {
            for q in g.elements().unwrap() {
                assert_eq!(c.a_on_b_basis(p, q), gen.a_on_b_basis(p, q));
                assert_eq!(c.b_ract_a_basis(q, p), gen.b_ract_a_basis(q, p));
                assert_eq!(c.b_on_a_basis(q, p), gen.b_on_a_basis(q, p));
                assert_eq!(c.a_ract_b_basis(p, q), gen.a_ract_b_basis(p, q));
            }
        }
    }

    #[test]
    fn constant_pairing_is_degenerate() {
        let g = GroupSpec::cyclic(2);
        let one = |_: &Key, _: &Key| Scalar::from_int(1);
        let err = DualPair::new("constant", group_algebra(g.clone()), function_algebra(g.clone()), one).unwrap_err();
        assert_eq!(err.kind(), "Singular");
        let p = DualPair::new_unchecked("constant", group_algebra(g.clone()), function_algebra(g), one).unwrap();
        let r = verify_pairing(&p, PAIR_RADIUS);
        let nd = r.get("pairing-nondegenerate").unwrap();
        assert!(!nd.passed());
        assert_eq!(nd.detail.as_ref().unwrap()["rank"], 1);
    }

    #[test]
    fn fixed_multipliers_are_scalars() {
        for g in [GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::s3()] {
            assert!(fixed_point_scalars(&DualPair::canonical_pair(g)).unwrap().passed());
        }
    }

    #[test]
    fn finite_dual_pairs_verify() {
        for g in [GroupSpec::cyclic(2), GroupSpec::s3()] {
            let p = DualPair::from_finite(&group_algebra(g)).unwrap();
            let r = verify_pairing(&p, PAIR_RADIUS);
            assert!(r.all_passed(), "{}", r.to_json_lines());
        }
    }
}
