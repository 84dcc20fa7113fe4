//! Covariant A-R-modules and the correspondence with modules over `R#A`.

use std::sync::Arc;

use serde_json::json;

use crate::actions::{stacked, translation, verify_module, ActFn, ActionSpec, ModuleSpec};
use crate::element::{Domain, Element, Key};
use crate::error::{Error, Result};
use crate::hopf::Cover;
use crate::instances::GroupSpec;
use crate::linalg;
use crate::report::{verdict, wkey, Check, CheckResult, Report};
use crate::smash::SmashProduct;

/// A space with an A-module structure `a_act` and an R-module structure
/// `r_act`, where R carries the action `action`.
#[derive(Clone)]
pub struct CovariantModule {
    pub action: ActionSpec,
    pub a_act: ModuleSpec,
    r_act: ActFn,
}

impl std::fmt::Debug for CovariantModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CovariantModule({} on {})", self.action.name(), self.a_act.space)
    }
}

impl CovariantModule {
    pub fn new<F>(action: &ActionSpec, a_act: ModuleSpec, r_act: F) -> Result<Self>
    where
        F: Fn(&Key, &Key) -> Element + Send + Sync + 'static,
    {
        if a_act.algebra.id() != action.a().id() {
            return Err(Error::AlgebraMismatch(format!("{} vs {}", a_act.algebra.id(), action.a().id())));
        }
        Ok(CovariantModule { action: action.clone(), a_act, r_act: Arc::new(r_act) })
    }

    pub fn space(&self) -> &Domain {
        &self.a_act.space
    }

    pub fn basis(&self) -> Option<Vec<Key>> {
        self.a_act.finite_basis()
    }

    pub fn r_act_basis(&self, x: &Key, v: &Key) -> Element {
        (self.r_act)(x, v)
    }

    pub fn r_act(&self, x: &Element, v: &Element) -> Element {
        let mut out = Element::zero(self.space());
        for (kx, cx) in x.terms() {
            for (kv, cv) in v.terms() {
                out.add_scaled(&self.r_act_basis(kx, kv), &(cx * cv));
            }
        }
        out
    }

    pub fn a_act(&self, a: &Element, v: &Element) -> Element {
        self.a_act.act(a, v)
    }

    fn ids(&self) -> Vec<String> {
        let mut ids = self.action.ids();
        ids.push(self.space().name().to_string());
        ids
    }
}

/// R itself, with left multiplication and the given action.
pub fn regular_covariant(action: &ActionSpec) -> CovariantModule {
    let r = action.r.clone();
    CovariantModule::new(action, action.module.clone(), move |x, y| r.mul_basis(x, y)).expect("same algebra")
}

/// `ℂ^G` with `δ_q e_s = [q = s] e_s` and `λ_p e_s = e_{ps}`, covariant for the
/// translation action of `ℂG` on `K(G)`.
pub fn shift_representation(g: GroupSpec) -> Result<CovariantModule> {
    let elems = g.elements().ok_or_else(|| Error::NotFiniteDimensional(g.name().to_string()))?.to_vec();
    let action = translation(g.clone());
    let space = Domain::new(&format!("C^{}", g.name()));
    let (d1, d2) = (space.clone(), space.clone());
    let g2 = g.clone();
    let a_act = ModuleSpec::new(
        "shift",
        action.a().clone(),
        &space,
        Some(elems.clone()),
        move |_| elems.clone(),
        move |p, s| Element::basis(&d1, g2.mul(p, s)),
    );
    CovariantModule::new(&action, a_act, move |q, s| {
        if q == s {
            Element::basis(&d2, s.clone())
        } else {
            Element::zero(&d2)
        }
    })
}

/// Covariance `a(xv) = Σ (a₍₁₎x)(a₍₂₎v)`, its equivalent form
/// `(ax)v = Σ a₍₁₎(x·S(a₍₂₎)v)`, and both module structures.
pub fn verify_covariant(c: &CovariantModule, radius: i64) -> Report {
    let ids = c.ids();
    let h = c.action.a();
    let sa = h.finite_basis().unwrap_or_else(|| h.sample_basis(radius));
    let sr = c.action.r.finite_basis().unwrap_or_else(|| c.action.r.sample_basis(radius));
    let sv = c.a_act.sample(radius);
    let sampled = !h.is_finite() || c.action.r.finite_basis().is_none() || !c.a_act.is_finite();
    let mut report = verify_module(&c.a_act, &sa, &sv);

    let mut chk = Check::new("r-module-associativity", &ids, sampled);
    for x in &sr {
        for y in &sr {
            let xy = c.action.r.mul_basis(x, y);
            for v in &sv {
                let lhs = c.r_act(&xy, &c.a_act.vector(v));
                let rhs = c.r_act(&c.action.r_basis(x), &c.r_act_basis(y, v));
                chk.case(lhs == rhs, || json!({"triple": [wkey(x), wkey(y), wkey(v)]}));
            }
        }
    }
    report.push(chk.finish());

    let mut chk = Check::new("covariance", &ids, sampled);
    let mut chk2 = Check::new("covariance-equivalent-form", &ids, sampled);
    for a in &sa {
        let ea = h.basis(a);
        for v in &sv {
            let ev = c.a_act.vector(v);
            let covers = c.a_act.local_unit(std::slice::from_ref(&ev)).and_then(|e| {
                Ok((h.cover(Cover::T1, &ea, &e)?, h.cover(Cover::T4, &ea, &h.antipode_inv(&e))?))
            });
            let (t1, t4) = match covers {
                Ok(t) => t,
                Err(err) => {
                    chk.case(false, || json!({"pair": [wkey(a), wkey(v)], "error": err.to_string()}));
                    continue;
                }
            };
            for x in &sr {
                let ex = c.action.r_basis(x);
                let lhs = c.a_act(&ea, &c.r_act(&ex, &ev));
                let mut rhs = Element::zero(c.space());
                for (ks, k) in t1.terms() {
                    let px = c.action.act(&h.basis(&ks[0]), &ex);
                    rhs.add_scaled(&c.r_act(&px, &c.a_act(&h.basis(&ks[1]), &ev)), k);
                }
                chk.case(lhs == rhs, || json!({"triple": [wkey(a), wkey(x), wkey(v)]}));

                let lhs2 = c.r_act(&c.action.act(&ea, &ex), &ev);
                let mut rhs2 = Element::zero(c.space());
                for (ks, k) in t4.terms() {
                    let inner = c.r_act(&ex, &c.a_act(&h.antipode_basis(&ks[1]), &ev));
                    rhs2.add_scaled(&c.a_act(&h.basis(&ks[0]), &inner), k);
                }
                chk2.case(lhs2 == rhs2, || json!({"triple": [wkey(a), wkey(x), wkey(v)]}));
            }
        }
    }
    report.push(chk.finish());
    report.push(chk2.finish());
    report
}

/// A left module over `R#A`, given on basis keys `(x, a)` and `v`.
#[derive(Clone)]
pub struct SmashModule {
    pub smash: SmashProduct,
    pub space: Domain,
    basis: Vec<Key>,
    act: ActFn,
}

impl SmashModule {
    pub fn new<F>(smash: &SmashProduct, space: &Domain, basis: Vec<Key>, act: F) -> Self
    where
        F: Fn(&Key, &Key) -> Element + Send + Sync + 'static,
    {
        SmashModule { smash: smash.clone(), space: space.clone(), basis, act: Arc::new(act) }
    }

    pub fn basis(&self) -> &[Key] {
        &self.basis
    }

    pub fn act_basis(&self, u: &Key, v: &Key) -> Element {
        (self.act)(u, v)
    }

    pub fn act(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero(&self.space);
        for (ku, cu) in u.terms() {
            for (kv, cv) in v.terms() {
                out.add_scaled(&self.act_basis(ku, kv), &(cu * cv));
            }
        }
        out
    }

    pub fn vector(&self, k: &Key) -> Element {
        Element::basis(&self.space, k.clone())
    }

    /// Some `u ∈ R#A` with `u·vᵢ = vᵢ`.
    pub fn local_unit(&self, items: &[Element]) -> Result<Element> {
        if let Some(one) = self.smash.algebra().identity() {
            return Ok(one);
        }
        let keys = self.smash.sample(2);
        let gens: Vec<Element> = keys
            .iter()
            .map(|u| stacked(&items.iter().map(|v| self.act(&self.smash.algebra_basis(u), v)).collect::<Vec<_>>()))
            .collect();
        match linalg::linear_solve(&gens, &stacked(items)) {
            Ok(c) => Ok(Element::from_terms(self.smash.domain(), keys.into_iter().zip(c))),
            Err(Error::NoSolution) => Err(Error::NotFound(format!("local unit in {} for {}", self.smash.id(), self.space))),
            Err(e) => Err(e),
        }
    }
}

impl SmashProduct {
    pub(crate) fn algebra_basis(&self, u: &Key) -> Element {
        Element::basis(self.domain(), u.clone())
    }
}

fn same_smash(c: &CovariantModule, s: &SmashProduct) -> Result<()> {
    let (x, y) = (c.action.ids(), s.action.ids());
    if x != y {
        return Err(Error::AlgebraMismatch(format!("{:?} vs {:?}", x, y)));
    }
    Ok(())
}

/// `(x#a)v = x(av)`.
pub fn covariant_to_module(c: &CovariantModule, s: &SmashProduct) -> Result<SmashModule> {
    same_smash(c, s)?;
    let basis = c.basis().ok_or_else(|| Error::NotFiniteDimensional(c.space().name().to_string()))?;
    let c2 = c.clone();
    Ok(SmashModule::new(s, c.space(), basis, move |u, v| {
        let av = c2.a_act.act_basis(u.at(1), v);
        c2.r_act(&c2.action.r_basis(u.at(0)), &av)
    }))
}

/// `a·v = (π(a)u)·v` and `x·v = (π(x)u)·v` with `u·v = v`.
pub fn module_to_covariant(m: &SmashModule) -> Result<CovariantModule> {
    let s = &m.smash;
    let mut units = std::collections::HashMap::new();
    for v in m.basis() {
        units.insert(v.clone(), m.local_unit(&[m.vector(v)])?);
    }
    let units = Arc::new(units);
    let (m1, m2) = (m.clone(), m.clone());
    let (u1, u2) = (units.clone(), units);
    let basis = m.basis().to_vec();
    let a_act = ModuleSpec::new(
        "from-smash",
        s.a().clone(),
        &m.space,
        Some(basis.clone()),
        move |_| basis.clone(),
        move |a, v| {
            let u = m1.smash.pi_a(&m1.smash.a().basis(a)).left(&u1[v]);
            m1.act(&u, &m1.vector(v))
        },
    );
    CovariantModule::new(&s.action, a_act, move |x, v| {
        let u = m2.smash.pi_r(&m2.smash.action.r_basis(x)).left(&u2[v]);
        m2.act(&u, &m2.vector(v))
    })
}

/// Associativity, unitality and non-degeneracy of a module over `R#A`.
pub fn verify_smash_module(m: &SmashModule) -> Report {
    let s = &m.smash;
    let ids = vec![s.id(), m.space.name().to_string()];
    let keys = s.sample(2);
    let sampled = !s.is_finite();
    let mut report = Report::new();

    let mut chk = Check::new("smash-module-associativity", &ids, sampled);
    for u in &keys {
        for w in &keys {
            let uw = s.algebra().mul_basis(u, w);
            for v in m.basis() {
                let lhs = m.act(&uw, &m.vector(v));
                let rhs = m.act(&s.algebra_basis(u), &m.act_basis(w, v));
                chk.case(lhs == rhs, || json!({"triple": [wkey(u), wkey(w), wkey(v)]}));
            }
        }
    }
    report.push(chk.finish());

    let mut chk = Check::new("smash-module-unital", &ids, sampled);
    for v in m.basis() {
        let ok = m.local_unit(&[m.vector(v)]).is_ok();
        chk.case(ok, || json!({"v": wkey(v)}));
    }
    report.push(chk.finish());

    let nd = nondegenerate(m.basis(), |v| keys.iter().map(|u| m.act_basis(u, v)).collect());
    report.push(verdict("smash-module-nondegenerate", &ids, nd, sampled, json!({})));
    report
}

/// Whether `v ↦ (g₁(v), g₂(v), …)` is injective on the span of `basis`.
fn nondegenerate<F: Fn(&Key) -> Vec<Element>>(basis: &[Key], images: F) -> bool {
    let stacks: Vec<Element> = basis.iter().map(|v| stacked(&images(v))).collect();
    linalg::span_rank(&stacks) == basis.len()
}

/// Dimension of the span of `{g·v}`.
fn span_dim<F: Fn(&Key) -> Vec<Element>>(basis: &[Key], images: F) -> usize {
    let all: Vec<Element> = basis.iter().flat_map(|v| images(v)).collect();
    linalg::span_rank(&all)
}

/// The round trip covariant → `R#A`-module → covariant, and the transfer of
/// unitality and non-degeneracy between the two descriptions.
pub fn correspondence_report(c: &CovariantModule, s: &SmashProduct) -> Result<Report> {
    let m = covariant_to_module(c, s)?;
    let ids = c.ids();
    let basis = m.basis().to_vec();
    let n = basis.len();
    let sa = s.a().finite_basis().unwrap_or_else(|| s.a().sample_basis(2));
    let sr = s.r().finite_basis().unwrap_or_else(|| s.r().sample_basis(2));
    let keys = s.sample(2);
    let sampled = !s.is_finite();
    let mut report = Report::new();

    let act_a = |v: &Key| sa.iter().map(|a| c.a_act.act_basis(a, v)).collect::<Vec<_>>();
    let act_r = |v: &Key| sr.iter().map(|x| c.r_act_basis(x, v)).collect::<Vec<_>>();
    let act_s = |v: &Key| keys.iter().map(|u| m.act_basis(u, v)).collect::<Vec<_>>();

    let unital_s = span_dim(&basis, act_s) == n;
    let unital_ra = span_dim(&basis, act_r) == n && span_dim(&basis, act_a) == n;
    report.push(verdict(
        "unitality-transfer",
        &ids,
        unital_s == unital_ra,
        sampled,
        json!({"smash": unital_s, "r_and_a": unital_ra}),
    ));
    let nd_s = nondegenerate(&basis, act_s);
    let nd_ra = nondegenerate(&basis, act_r) && nondegenerate(&basis, act_a);
    report.push(verdict(
        "nondegeneracy-transfer",
        &ids,
        nd_s == nd_ra,
        sampled,
        json!({"smash": nd_s, "r_and_a": nd_ra}),
    ));

    if !unital_s {
        report.push(CheckResult::skipped("covariant-roundtrip", &ids, "module is not unital"));
        return Ok(report);
    }
    let back = module_to_covariant(&m)?;
    let mut chk = Check::new("covariant-roundtrip", &ids, sampled);
    for v in &basis {
        for a in &sa {
            chk.case(back.a_act.act_basis(a, v) == c.a_act.act_basis(a, v), || json!({"a": wkey(a), "v": wkey(v)}));
        }
        for x in &sr {
            chk.case(back.r_act_basis(x, v) == c.r_act_basis(x, v), || json!({"x": wkey(x), "v": wkey(v)}));
        }
    }
    report.push(chk.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::adjoint;
    use crate::instances::group_algebra;
    use crate::smash::smash;

    #[test]
    fn shift_representation_is_covariant() {
        for n in [2, 3] {
            let c = shift_representation(GroupSpec::cyclic(n)).unwrap();
            let rep = verify_covariant(&c, 2);
            assert!(rep.all_passed(), "{}", rep.to_json_lines());
            let s = smash(&c.action).unwrap();
            let m = covariant_to_module(&c, &s).unwrap();
            assert!(verify_smash_module(&m).all_passed());
            let rep = correspondence_report(&c, &s).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_json_lines());
        }
    }

    #[test]
    fn regular_module_is_covariant() {
        let act = adjoint(&group_algebra(GroupSpec::s3()));
        let c = regular_covariant(&act);
        assert!(verify_covariant(&c, 2).all_passed());
        let s = smash(&act).unwrap();
        let m = covariant_to_module(&c, &s).unwrap();
        // (x#a)x′ = x(ax′)
        let (x, a, x2) = (Key::Int(1), Key::Int(3), Key::Int(2));
        let lhs = m.act_basis(&Key::pair(&x, &a), &x2);
        let rhs = act.rmul(&act.r_basis(&x), &act.act_basis(&a, &x2));
        assert_eq!(lhs, rhs);
        assert!(correspondence_report(&c, &s).unwrap().all_passed());
    }

    #[test]
    fn broken_covariance_is_detected() {
        let good = shift_representation(GroupSpec::cyclic(2)).unwrap();
        let d = good.space().clone();
        // R acts by the identity: δ_q v = v for every q, which breaks covariance
        let bad = CovariantModule::new(&good.action, good.a_act.clone(), move |_, s| Element::basis(&d, s.clone())).unwrap();
        let rep = verify_covariant(&bad, 2);
        assert!(!rep.all_passed());
    }
}
