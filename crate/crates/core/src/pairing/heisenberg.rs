//! Smash products built from a pair, the standard modules, the commutation
//! rules and the anti-isomorphism `B#A → A#B`.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::AlgebraHandle;
use crate::element::{Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::Cover;
use crate::instances::GroupSpec;
use crate::linalg;
use crate::report::{verdict, wkey, Check, CheckResult, Report};
use crate::smash::{certify_map, smash, Isomorphism, SmashProduct};

use super::DualPair;

/// Which smash product a pair gives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `B#A` from `a▷b`.
    BA,
    /// `A#B` from `b▷a`.
    AB,
}

pub fn pairing_smash(p: &DualPair, order: Order) -> Result<SmashProduct> {
    match order {
        Order::BA => smash(&p.a_on_b_action()),
        Order::AB => smash(&p.b_on_a_action()),
    }
}

/// The product of two basis elements by the explicit formula
/// `(b#a)(b′#a′) = Σ⟨a₍₁₎, b′₍₂₎⟩ bb′₍₁₎ # a₍₂₎a′` (or its mirror for `A#B`),
/// using full coproducts.
pub fn display_product(p: &DualPair, s: &SmashProduct, order: Order, u: &Key, v: &Key) -> Result<Element> {
    let mut out = Element::zero(s.domain());
    match order {
        Order::BA => {
            let (b, a, b2, a2) = (u.at(0), u.at(1), v.at(0), v.at(1));
            let da = p.a.full_coproduct(&p.a.basis(a)).ok_or_else(|| Error::NotHopf(p.a.id()))?;
            let db = p.b.full_coproduct(&p.b.basis(b2)).ok_or_else(|| Error::NotHopf(p.b.id()))?;
            for (ka, ca) in da.terms() {
                for (kb, cb) in db.terms() {
                    let w = p.pair_basis(&ka[0], &kb[1]);
                    let left = p.b.mul_basis(b, &kb[0]);
                    let right = p.a.mul_basis(&ka[1], a2);
                    out.add_scaled(&Tensor::product(&[&left, &right]).pack(s.domain()), &(&(ca * cb) * &w));
                }
            }
        }
        Order::AB => {
            // (a#b)(a′#b′) = Σ⟨a′₍₂₎, b₍₁₎⟩ aa′₍₁₎ # b₍₂₎b′
            let (a, b, a2, b2) = (u.at(0), u.at(1), v.at(0), v.at(1));
            let da = p.a.full_coproduct(&p.a.basis(a2)).ok_or_else(|| Error::NotHopf(p.a.id()))?;
            let db = p.b.full_coproduct(&p.b.basis(b)).ok_or_else(|| Error::NotHopf(p.b.id()))?;
            for (ka, ca) in da.terms() {
                for (kb, cb) in db.terms() {
                    let w = p.pair_basis(&ka[1], &kb[0]);
                    let left = p.a.mul_basis(a, &ka[0]);
                    let right = p.b.mul_basis(&kb[1], b2);
                    out.add_scaled(&Tensor::product(&[&left, &right]).pack(s.domain()), &(&(ca * cb) * &w));
                }
            }
        }
    }
    Ok(out)
}

/// Generic smash product against the explicit formula on every basis pair.
pub fn display_check(p: &DualPair, s: &SmashProduct, order: Order) -> CheckResult {
    let ids = s.ids();
    let Some(keys) = s.finite_basis() else {
        return CheckResult::skipped("pairing-smash-display", &ids, "needs full coproducts");
    };
    let n = keys.len();
    let fail = (0..n * n).into_par_iter().find_map_first(|ij| {
        let (u, v) = (&keys[ij / n], &keys[ij % n]);
        let ok = display_product(p, s, order, u, v).map(|d| d == s.algebra().mul_basis(u, v)).unwrap_or(false);
        (!ok).then(|| json!([wkey(u), wkey(v)]))
    });
    let mut chk = Check::new("pairing-smash-display", &ids, false);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    chk.detail(json!({"pairs": n * n}));
    chk.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardSide {
    /// `(b#a)b′ = b(a▷b′)` on B.
    BOnLeft,
    /// `a′(b#a) = (a′◁b)a` on A.
    AOnRight,
}

/// A standard module of `B#A`.
#[derive(Clone, Debug)]
pub struct StandardModule {
    pub pair: DualPair,
    pub smash: SmashProduct,
    pub side: StandardSide,
}

pub fn standard_module(p: &DualPair, side: StandardSide) -> Result<StandardModule> {
    Ok(StandardModule { pair: p.clone(), smash: pairing_smash(p, Order::BA)?, side })
}

impl StandardModule {
    pub fn space(&self) -> &crate::hopf::RegularMha {
        match self.side {
            StandardSide::BOnLeft => &self.pair.b,
            StandardSide::AOnRight => &self.pair.a,
        }
    }

    /// `u·v` (left) or `v·u` (right) for a smash basis key `u = (b, a)`.
    pub fn act_basis(&self, u: &Key, v: &Key) -> Element {
        let p = &self.pair;
        let (b, a) = (u.at(0), u.at(1));
        match self.side {
            StandardSide::BOnLeft => p.b.mul(&p.b.basis(b), &p.a_on_b_basis(a, v)),
            StandardSide::AOnRight => p.a.mul(&p.a_ract_b_basis(v, b), &p.a.basis(a)),
        }
    }

    pub fn act(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero(self.space().domain());
        for (ku, cu) in u.terms() {
            for (kv, cv) in v.terms() {
                out.add_scaled(&self.act_basis(ku, kv), &(cu * cv));
            }
        }
        out
    }

    fn act_elem(&self, u: &Key, v: &Element) -> Element {
        self.act(&Element::basis(self.smash.domain(), u.clone()), v)
    }
}

/// Module law, unitality (when `B#A` has an identity) and faithfulness as
/// injectivity of `u ↦ (v ↦ u·v)`.
pub fn verify_standard_module(m: &StandardModule, radius: i64) -> Report {
    let ids = {
        let mut v = m.smash.ids();
        v.push(format!("{:?}", m.side));
        v
    };
    let sampled = !m.smash.is_finite();
    let inner = if sampled { 2 } else { radius };
    let us = m.smash.sample(inner);
    let space = m.space();
    let vs = space.finite_basis().unwrap_or_else(|| space.sample_basis(3 * inner));
    let mut report = Report::new();

    let n = us.len();
    let fail = (0..n * n).into_par_iter().find_map_first(|ij| {
        let (u, u2) = (&us[ij / n], &us[ij % n]);
        let uu = m.smash.algebra().mul_basis(u, u2);
        vs.iter().find_map(|v| {
            let ev = space.basis(v);
            let ok = match m.side {
                StandardSide::BOnLeft => m.act(&uu, &ev) == m.act_elem(u, &m.act_elem(u2, &ev)),
                StandardSide::AOnRight => m.act(&uu, &ev) == m.act_elem(u2, &m.act_elem(u, &ev)),
            };
            (!ok).then(|| json!([wkey(u), wkey(u2), wkey(v)]))
        })
    });
    let mut chk = Check::new("standard-module-associativity", &ids, sampled);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    report.push(chk.finish());

    match m.smash.algebra().identity() {
        Some(one) => {
            let ok = vs.iter().all(|v| m.act(&one, &space.basis(v)) == space.basis(v));
            report.push(verdict("standard-module-unital", &ids, ok, sampled, json!(null)));
        }
        None => report.push(CheckResult::skipped("standard-module-unital", &ids, "no identity")),
    }

    let ops: Vec<Element> = us
        .par_iter()
        .map(|u| {
            let parts: Vec<Element> = vs.iter().map(|v| m.act_elem(u, &space.basis(v))).collect();
            crate::actions::stacked(&parts)
        })
        .collect();
    let rank = linalg::span_rank(&ops);
    report.push(verdict("standard-module-faithful", &ids, rank == us.len(), sampled, json!({"rank": rank, "dim": us.len()})));
    report
}

/// `a⊗b ↦ Σ⟨a₍₁₎, b₍₂₎⟩ a₍₂₎⊗b₍₁₎`, as `Σ q ⊗ (p▷b)` over `T3(a, e) = Σ p⊗q`, `e▷b = b`.
pub fn rewrite_forward(p: &DualPair, a: &Key, b: &Key) -> Result<Tensor> {
    let eb = p.b.basis(b);
    let e = p.unit_a_for(&eb)?;
    let t = p.a.cover(Cover::T3, &p.a.basis(a), &e)?;
    let mut out = Tensor::zero(&[p.a.domain().clone(), p.b.domain().clone()]);
    for (ks, c) in t.terms() {
        let img = p.a_on_b_basis(&ks[0], b);
        out.add_scaled(&Tensor::product(&[&p.a.basis(&ks[1]), &img]), c);
    }
    Ok(out)
}

/// `a⊗b ↦ Σ⟨S⁻¹a₍₁₎, b₍₂₎⟩ a₍₂₎⊗b₍₁₎`, as `Σ q ⊗ (S⁻¹(p)▷b)` over
/// `T2(S(e), a) = Σ p⊗q`, `e▷b = b`.
pub fn rewrite_inverse(p: &DualPair, a: &Key, b: &Key) -> Result<Tensor> {
    let eb = p.b.basis(b);
    let e = p.unit_a_for(&eb)?;
    let t = p.a.cover(Cover::T2, &p.a.antipode(&e), &p.a.basis(a))?;
    let mut out = Tensor::zero(&[p.a.domain().clone(), p.b.domain().clone()]);
    for (ks, c) in t.terms() {
        let img = p.a_on_b(&p.a.antipode_inv_basis(&ks[0]), &eb);
        out.add_scaled(&Tensor::product(&[&p.a.basis(&ks[1]), &img]), c);
    }
    Ok(out)
}

fn apply_rewrite<F>(p: &DualPair, t: &Tensor, f: F) -> Result<Tensor>
where
    F: Fn(&DualPair, &Key, &Key) -> Result<Tensor>,
{
    let mut out = t.zero_like();
    for (ks, c) in t.terms() {
        out.add_scaled(&f(p, &ks[0], &ks[1])?, c);
    }
    Ok(out)
}

/// Both commutation rules as operators on the standard module B, and the two
/// rewriting maps inverse to each other on `A⊗B`.
pub fn heisenberg_check(p: &DualPair, radius: i64) -> Report {
    let ids = p.ids();
    let sampled = !p.is_finite();
    let inner = if sampled { 2 } else { radius };
    let (sa, sb) = (p.sample_a(inner), p.sample_b(inner));
    let vs = p.sample_b(3 * inner);
    let pairs: Vec<(Key, Key)> = sa.iter().flat_map(|a| sb.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut report = Report::new();

    // π(a)π(b) = Σ⟨a₍₁₎, b₍₂₎⟩ π(b₍₁₎)π(a₍₂₎)
    let fail = pairs.par_iter().find_map_first(|(a, b)| {
        let r = rewrite_forward(p, a, b).ok()?;
        vs.iter().find_map(|v| {
            let lhs = p.a_on_b(&p.a.basis(a), &p.b.mul_basis(b, v));
            let mut rhs = Element::zero(p.b.domain());
            for (ks, c) in r.terms() {
                rhs.add_scaled(&p.b.mul(&p.b.basis(&ks[1]), &p.a_on_b_basis(&ks[0], v)), c);
            }
            (lhs != rhs).then(|| json!([wkey(a), wkey(b), wkey(v)]))
        })
    });
    let mut chk = Check::new("heisenberg-commutation", &ids, sampled);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    report.push(chk.finish());

    // π(b)π(a) = Σ⟨S⁻¹a₍₁₎, b₍₂₎⟩ π(a₍₂₎)π(b₍₁₎)
    let fail = pairs.par_iter().find_map_first(|(a, b)| {
        let r = rewrite_inverse(p, a, b).ok()?;
        vs.iter().find_map(|v| {
            let lhs = p.b.mul(&p.b.basis(b), &p.a_on_b_basis(a, v));
            let mut rhs = Element::zero(p.b.domain());
            for (ks, c) in r.terms() {
                rhs.add_scaled(&p.a_on_b(&p.a.basis(&ks[0]), &p.b.mul_basis(&ks[1], v)), c);
            }
            (lhs != rhs).then(|| json!([wkey(a), wkey(b), wkey(v)]))
        })
    });
    let mut chk = Check::new("heisenberg-inverse-form", &ids, sampled);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    report.push(chk.finish());

    let fail = pairs.par_iter().find_map_first(|(a, b)| {
        let id = Tensor::basis(&[p.a.domain().clone(), p.b.domain().clone()], vec![a.clone(), b.clone()]);
        let ok = rewrite_forward(p, a, b)
            .and_then(|t| apply_rewrite(p, &t, rewrite_inverse))
            .map(|t| t == id)
            .unwrap_or(false)
            && rewrite_inverse(p, a, b)
                .and_then(|t| apply_rewrite(p, &t, rewrite_forward))
                .map(|t| t == id)
                .unwrap_or(false);
        (!ok).then(|| json!([wkey(a), wkey(b)]))
    });
    let mut chk = Check::new("heisenberg-rewrite-inverse", &ids, sampled);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    chk.detail(json!({"pairs": pairs.len()}));
    report.push(chk.finish());
    report
}

/// `b#a ↦ S⁻¹a # Sb` from `B#A` to `A#B`, certified anti-multiplicative,
/// with inverse `a#b ↦ S⁻¹b # Sa`.
pub fn anti_isomorphism(p: &DualPair) -> Result<Isomorphism> {
    let ba = pairing_smash(p, Order::BA)?;
    let ab = pairing_smash(p, Order::AB)?;
    let (src, dst) = (ba.algebra().clone(), ab.algebra().clone());
    let (ds, dd) = (src.domain().clone(), dst.domain().clone());
    Isomorphism::build(
        "anti-isomorphism",
        &src,
        &dst,
        |u| Tensor::product(&[&p.a.antipode_inv_basis(u.at(1)), &p.b.antipode_basis(u.at(0))]).pack(&dd),
        Some(|v: &Key| Tensor::product(&[&p.b.antipode_inv_basis(v.at(1)), &p.a.antipode_basis(v.at(0))]).pack(&ds)),
        true,
    )
}

/// For a finite canonical pair: `τ(δ_q#λ_p) = δ_{qp}#λ_{p⁻¹}` is an
/// anti-automorphism of `B#A`; `τ` after the inverse of the anti-isomorphism
/// is an isomorphism `A#B → B#A`. Both are certified.
pub fn flip_relabel_isomorphism(g: GroupSpec) -> Result<Isomorphism> {
    if !g.is_finite() {
        return Err(Error::NotFiniteDimensional(g.name().to_string()));
    }
    let p = DualPair::canonical_pair(g.clone());
    let anti = anti_isomorphism(&p)?;
    let ba: AlgebraHandle = anti.src.clone();
    let d = ba.domain().clone();
    let tau = Arc::new(move |u: &Key| {
        let (q, r) = (u.at(0), u.at(1));
        Element::basis(&d, Key::pair(&g.mul(q, r), &g.inv(r)))
    });
    let keys = ba.finite_basis().expect("finite");
    let tau_images: Vec<Element> = keys.iter().map(|k| tau(k)).collect();
    let tau_report = certify_map("flip-relabel", &ba, &ba, &tau_images, Some(&tau_images), true)?;

    let apply_tau = |e: &Element| {
        let mut out = Element::zero(ba.domain());
        for (k, c) in e.terms() {
            out.add_scaled(&tau(k), c);
        }
        out
    };
    let mut iso = Isomorphism::build(
        "flip-relabel-isomorphism",
        &anti.dst,
        &ba,
        |v| apply_tau(&anti.apply_inverse(&Element::basis(anti.dst.domain(), v.clone())).expect("inverse")),
        Some(|u: &Key| anti.apply(&apply_tau(&Element::basis(ba.domain(), u.clone())))),
        false,
    )?;
    let mut report = tau_report;
    report.extend(iso.report);
    iso.report = report;
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::translation;
    use crate::instances::{function_algebra, group_algebra};
    use crate::scalar::Scalar;

    fn groups() -> Vec<GroupSpec> {
        vec![GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::s3()]
    }

    #[test]
    fn display_formula_matches_generic_product() {
        for g in groups() {
            let p = DualPair::canonical_pair(g);
            for order in [Order::BA, Order::AB] {
                let s = pairing_smash(&p, order).unwrap();
                assert!(display_check(&p, &s, order).passed());
            }
        }
        let p = DualPair::from_finite(&group_algebra(GroupSpec::s3())).unwrap();
        for order in [Order::BA, Order::AB] {
            let s = pairing_smash(&p, order).unwrap();
            assert!(display_check(&p, &s, order).passed());
        }
    }

    #[test]
    fn z2_pair_smash_equals_translation_smash() {
        let p = DualPair::canonical_pair(GroupSpec::cyclic(2));
        let s = pairing_smash(&p, Order::BA).unwrap();
        let t = smash(&translation(GroupSpec::cyclic(2))).unwrap();
        assert_eq!(s.structure_constants().unwrap(), t.structure_constants().unwrap());
    }

    #[test]
    fn one_dimensional_pair_is_tensor_product() {
        let g = GroupSpec::cyclic(1);
        let p = DualPair::new("trivial", group_algebra(g.clone()), function_algebra(g), |_, _| Scalar::from_int(1)).unwrap();
        let s = pairing_smash(&p, Order::BA).unwrap();
        assert_eq!(s.dim(), Some(1));
        assert!(heisenberg_check(&p, 5).all_passed());
        let anti = anti_isomorphism(&p).unwrap();
        assert!(anti.is_certified());
    }

    #[test]
    fn standard_modules_are_faithful() {
        for g in groups() {
            let p = DualPair::canonical_pair(g);
            for side in [StandardSide::BOnLeft, StandardSide::AOnRight] {
                let m = standard_module(&p, side).unwrap();
                let r = verify_standard_module(&m, 5);
                assert!(r.all_passed(), "{}", r.to_json_lines());
            }
        }
        let m = standard_module(&DualPair::canonical_pair(GroupSpec::cyclic(2)), StandardSide::BOnLeft).unwrap();
        let r = verify_standard_module(&m, 5);
        assert_eq!(r.get("standard-module-faithful").unwrap().detail.as_ref().unwrap()["rank"], 4);
    }

    #[test]
    fn commutation_rules_hold() {
        for g in groups() {
            let r = heisenberg_check(&DualPair::canonical_pair(g), 5);
            assert!(r.all_passed(), "{}", r.to_json_lines());
        }
        let r = heisenberg_check(&DualPair::canonical_pair(GroupSpec::integers()), 5);
        assert!(r.all_passed(), "{}", r.to_json_lines());
        let r = heisenberg_check(&DualPair::from_finite(&group_algebra(GroupSpec::s3())).unwrap(), 5);
        assert!(r.all_passed(), "{}", r.to_json_lines());
    }

    #[test]
    fn anti_isomorphism_is_certified() {
        for g in groups() {
            let iso = anti_isomorphism(&DualPair::canonical_pair(g)).unwrap();
            assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
        }
        let p = DualPair::canonical_pair(GroupSpec::cyclic(2));
        let iso = anti_isomorphism(&p).unwrap();
        let u = Element::basis(iso.src.domain(), Key::pair(&Key::Int(0), &Key::Int(1)));
        assert_eq!(iso.apply(&u), Element::basis(iso.dst.domain(), Key::pair(&Key::Int(1), &Key::Int(0))));
    }

    #[test]
    fn flip_relabel_gives_isomorphism() {
        for g in groups() {
            let iso = flip_relabel_isomorphism(g).unwrap();
            assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
        }
    }
}
