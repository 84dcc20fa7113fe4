//! The dual action of `B` on `R#A`, its fixed points, the bismash product
//! `(R#A)#B`, the picture on `R⊗A` obtained by conjugating with `W`, and the
//! duality isomorphism `(R#A)#Â ≅ R⊗(A◊Â)`.

pub mod coaction;

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::actions::{fixed_points, stacked, trivial, verify_module_algebra, ActionSpec, ModuleSpec, Where};
use crate::algebra::{Algebra, AlgebraHandle, MatrixAlgebra, TensorAlgebra};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::Cover;
use crate::linalg::{self, Echelon, KeyIndex};
use crate::multiplier::Multiplier;
use crate::pairing::diamond::invert_map;
use crate::pairing::{diamond_algebra, pairing_smash, DualPair, Order};
use crate::report::{verdict, wkey, Check, CheckResult, Report};
use crate::smash::{smash_with, Isomorphism, SmashOptions, SmashProduct};

pub use coaction::{coaction_pairing_consistency, coaction_to_action, rl_condition_check, verify_coaction, Coaction};

/// `b(x#a) = x#(b▷a)` on a smash product over the pair's `A`.
#[derive(Clone, Debug)]
pub struct DualAction {
    pub pair: DualPair,
    pub smash: SmashProduct,
    pub action: ActionSpec,
    pub certificates: Report,
}

pub fn dual_action(p: &DualPair, s: &SmashProduct) -> Result<DualAction> {
    if s.a().id() != p.a.id() {
        return Err(Error::AlgebraMismatch(format!("smash over {} but pair over {}", s.a().id(), p.a.id())));
    }
    let (p2, d) = (p.clone(), s.domain().clone());
    let m = ModuleSpec::on_algebra("dual-action", p.b.clone(), s.algebra(), move |b, u| {
        let mut out = Element::zero(&d);
        for (ka, c) in p2.b_on_a_basis(b, u.at(1)).terms() {
            out.add_term(Key::pair(u.at(0), ka), c);
        }
        out
    });
    let action = ActionSpec::new(m, s.algebra().clone())?;
    let radius = if s.is_finite() && p.b.is_finite() { 0 } else { 2 };
    let sb = p.b.finite_basis().unwrap_or_else(|| p.b.sample_basis(radius));
    let su = s.sample(radius);
    let mut certificates = verify_module_algebra(&action, &sb, &su);
    let sampled = !(s.is_finite() && p.b.is_finite());
    let mut chk = Check::new("dual-action-unital", &action.ids(), sampled);
    for u in &su {
        chk.case(action.local_unit(&[action.r_basis(u)]).is_ok(), || json!({"vector": wkey(u)}));
    }
    certificates.push(chk.finish());
    Ok(DualAction { pair: p.clone(), smash: s.clone(), action, certificates })
}

impl DualAction {
    pub fn ids(&self) -> Vec<String> {
        let mut v = self.pair.ids();
        v.push(self.smash.id());
        let mut seen = std::collections::HashSet::new();
        v.retain(|x| seen.insert(x.clone()));
        v
    }

    /// `b·u` for a basis element of B and an element of `R#A`.
    pub fn act(&self, b: &Key, u: &Element) -> Element {
        self.action.act(&self.pair.b.basis(b), u)
    }
}

/// Left and right maps of a multiplier on a basis, stacked into one vector.
fn multiplier_vector(m: &Multiplier, alg: &dyn Algebra, keys: &[Key]) -> Element {
    let mut parts: Vec<Element> = keys.iter().map(|k| m.left(&Element::basis(alg.domain(), k.clone()))).collect();
    parts.extend(keys.iter().map(|k| m.right(&Element::basis(alg.domain(), k.clone()))));
    stacked(&parts)
}

/// The multipliers of `R#A` fixed by `B` against `π(M(R))`: equal
/// dimensions and mutual containment.
pub fn fixed_point_theorem_check(d: &DualAction) -> Result<Report> {
    let ids = d.ids();
    let s = &d.smash;
    let keys = s.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(s.id()))?;
    let fixed = fixed_points(&d.action, Where::InMR, false)?;
    // every multiplier of R is fixed by the trivial action
    let mr = fixed_points(&trivial(s.a(), s.r()), Where::InMR, false)?;
    let pis: Vec<Multiplier> = mr.multipliers.iter().map(|m| s.pi_r_multiplier(m)).collect();

    let alg = s.algebra().as_ref();
    let fv: Vec<Element> = fixed.multipliers.iter().map(|m| multiplier_vector(m, alg, &keys)).collect();
    let pv: Vec<Element> = pis.iter().map(|m| multiplier_vector(m, alg, &keys)).collect();
    let (rf, rp) = (linalg::span_rank(&fv), linalg::span_rank(&pv));
    let both: Vec<Element> = fv.iter().chain(&pv).cloned().collect();
    let rb = linalg::span_rank(&both);

    let mut report = Report::new();
    report.push(verdict(
        "fixed-point-theorem",
        &ids,
        rf == rp && rb == rf,
        false,
        json!({"fixed_dim": rf, "pi_mr_dim": rp, "joint_dim": rb}),
    ));

    // π(x) is fixed: b·(π(x)u) = π(x)(b·u) with ε(b) absorbed on the left
    let h = &d.pair.b;
    let bs = h.finite_basis().unwrap_or_else(|| h.sample_basis(2));
    let rs = s.r().finite_basis().unwrap_or_else(|| s.r().sample_basis(2));
    let mut chk = Check::new("pi-r-fixed", &ids, !h.is_finite());
    for x in &rs {
        let px = s.pi_r(&s.action.r_basis(x));
        for b in &bs {
            for u in &keys {
                let eu = Element::basis(s.domain(), u.clone());
                let lhs = d.act(b, &px.left(&eu));
                let rhs = px.left(&d.act(b, &eu));
                chk.case(lhs == rhs, || json!([wkey(x), wkey(b), wkey(u)]));
            }
        }
    }
    report.push(chk.finish());
    Ok(report)
}

/// `(R#A)#B` from the dual action. The action certificate is reused.
pub fn bismash(d: &DualAction, mut opts: SmashOptions) -> Result<SmashProduct> {
    if !d.certificates.all_passed() {
        let failed: Vec<&str> = d.certificates.failures().iter().map(|c| c.check.as_str()).collect();
        return Err(Error::UnverifiedAction(format!("dual action: {}", failed.join(", "))));
    }
    opts.check_action = false;
    smash_with(&d.action, opts)
}

/// `((x#a)#b)u = (x#a)(b·u)` on `R#A`.
pub fn bismash_act(d: &DualAction, big: &Key, u: &Element) -> Element {
    d.smash.mul(&Element::basis(d.smash.domain(), big.at(0).clone()), &d.act(big.at(1), u))
}

/// Module law and faithfulness (rank of the representation) of the
/// bismash acting on `R#A`.
pub fn bismash_module_report(d: &DualAction, bis: &SmashProduct) -> Report {
    let mut ids = bis.ids();
    ids.push("standard-module".into());
    let sampled = !bis.is_finite();
    let bk = bis.sample(1);
    let uk = d.smash.sample(3);
    let eu = |u: &Key| Element::basis(d.smash.domain(), u.clone());
    let act = |big: &Element, u: &Element| {
        let mut out = Element::zero(d.smash.domain());
        for (k, c) in big.terms() {
            out.add_scaled(&bismash_act(d, k, u), c);
        }
        out
    };
    let mut report = Report::new();

    // associativity on a bounded set of pairs
    let pairs: Vec<(usize, usize)> = if bk.len() <= 64 {
        (0..bk.len()).flat_map(|i| (0..bk.len()).map(move |j| (i, j))).collect()
    } else {
        (0..bk.len()).map(|i| (i, (i * 7 + 3) % bk.len())).collect()
    };
    let fail = pairs.par_iter().find_map_first(|&(i, j)| {
        let (x, y) = (&bk[i], &bk[j]);
        let xy = bis.algebra().mul_basis(x, y);
        let ex = Element::basis(bis.domain(), x.clone());
        let ey = Element::basis(bis.domain(), y.clone());
        uk.iter().find_map(|u| (act(&xy, &eu(u)) != act(&ex, &act(&ey, &eu(u)))).then(|| json!([wkey(x), wkey(y), wkey(u)])))
    });
    let mut chk = Check::new("bismash-module-associativity", &ids, sampled || bk.len() > 64);
    chk.case(fail.is_none(), || fail.clone().unwrap());
    chk.detail(json!({"pairs": pairs.len()}));
    report.push(chk.finish());

    let ops: Vec<Element> = bk.par_iter().map(|k| stacked(&uk.iter().map(|u| bismash_act(d, k, &eu(u))).collect::<Vec<_>>())).collect();
    let rank = linalg::span_rank(&ops);
    report.push(verdict("bismash-module-faithful", &ids, rank == bk.len(), sampled, json!({"rank": rank, "dim": bk.len()})));
    report
}

/// `R⊗A` as a space, with `W : R⊗A → R#A` and the operators of the
/// bismash transported by it.
pub struct WPicture {
    pub d: DualAction,
    pub space: Arc<TensorAlgebra>,
}

impl WPicture {
    pub fn new(d: &DualAction) -> Self {
        let space = Arc::new(TensorAlgebra::new(d.smash.r().clone(), d.smash.a().algebra()));
        WPicture { d: d.clone(), space }
    }

    pub fn domain(&self) -> &Domain {
        self.space.domain()
    }

    pub fn basis(&self, radius: i64) -> Vec<Key> {
        self.space.finite_basis().unwrap_or_else(|| self.space.sample_basis(radius))
    }

    /// `W(x⊗a) = Σ a₍₁₎x # a₍₂₎` through `T3(a, e)` with `e▷x = x`.
    pub fn w_basis(&self, v: &Key) -> Result<Element> {
        let s = &self.d.smash;
        let (x, a) = (v.at(0), v.at(1));
        let ex = s.action.r_basis(x);
        let e = s.action.local_unit(std::slice::from_ref(&ex))?;
        let t = s.a().cover(Cover::T3, &s.a().basis(a), &e)?;
        let mut out = Element::zero(s.domain());
        for (ks, c) in t.terms() {
            out.add_scaled(&Tensor::product(&[&s.action.act_basis(&ks[0], x), &s.a().basis(&ks[1])]).pack(s.domain()), c);
        }
        Ok(out)
    }

    /// `W⁻¹(x#a) = Σ S⁻¹(a₍₁₎)x ⊗ a₍₂₎` through `T2(S(e), a)` with `e▷x = x`.
    pub fn w_inv_basis(&self, u: &Key) -> Result<Element> {
        let s = &self.d.smash;
        let h = s.a();
        let (x, a) = (u.at(0), u.at(1));
        let ex = s.action.r_basis(x);
        let e = s.action.local_unit(std::slice::from_ref(&ex))?;
        let t = h.cover(Cover::T2, &h.antipode(&e), &h.basis(a))?;
        let mut out = Element::zero(self.domain());
        for (ks, c) in t.terms() {
            let y = s.action.act(&h.antipode_inv_basis(&ks[0]), &ex);
            out.add_scaled(&Tensor::product(&[&y, &h.basis(&ks[1])]).pack(self.domain()), c);
        }
        Ok(out)
    }

    pub fn w(&self, v: &Element) -> Result<Element> {
        let mut out = Element::zero(self.d.smash.domain());
        for (k, c) in v.terms() {
            out.add_scaled(&self.w_basis(k)?, c);
        }
        Ok(out)
    }

    pub fn w_inv(&self, u: &Element) -> Result<Element> {
        let mut out = Element::zero(self.domain());
        for (k, c) in u.terms() {
            out.add_scaled(&self.w_inv_basis(k)?, c);
        }
        Ok(out)
    }

    /// `W⁻¹ ρ(big) W` on a basis vector of `R⊗A`.
    pub fn op(&self, big: &Key, v: &Key) -> Result<Element> {
        self.w_inv(&bismash_act(&self.d, big, &self.w_basis(v)?))
    }
}

/// `W⁻¹W = id`, `WW⁻¹ = id`, both conjugation formulas and faithfulness of
/// the transported operators.
pub fn w_conjugation(d: &DualAction, bis: Option<&SmashProduct>) -> Report {
    let pic = WPicture::new(d);
    let s = &d.smash;
    let h = s.a();
    let mut ids = d.ids();
    ids.push("W".into());
    let sampled = !s.is_finite();
    let vs = pic.basis(2);
    let us = s.sample(2);
    let mut report = Report::new();

    let mut chk = Check::new("w-inverse", &ids, sampled);
    for v in &vs {
        let ok = pic.w_basis(v).and_then(|u| pic.w_inv(&u)).map(|back| back == Element::basis(pic.domain(), v.clone()));
        chk.case(ok.unwrap_or(false), || json!({"vector": wkey(v)}));
    }
    for u in &us {
        let ok = pic.w_inv_basis(u).and_then(|v| pic.w(&v)).map(|back| back == Element::basis(s.domain(), u.clone()));
        chk.case(ok.unwrap_or(false), || json!({"smash": wkey(u)}));
    }
    report.push(chk.finish());

    // W⁻¹(x#a)W(x′⊗a′) = Σ ((S⁻¹a′₍₁₎)(S⁻¹a₍₁₎)x)x′ ⊗ a₍₂₎a′₍₂₎
    if h.identity().is_some() {
        let fail = us.par_iter().find_map_first(|u| {
            let (x, a) = (u.at(0), u.at(1));
            let da = h.full_coproduct(&h.basis(a)).unwrap();
            vs.iter().find_map(|v| {
                let (x2, a2) = (v.at(0), v.at(1));
                let lhs = pic.w(&Element::basis(pic.domain(), v.clone())).and_then(|w| pic.w_inv(&s.mul(&Element::basis(s.domain(), u.clone()), &w)));
                let da2 = h.full_coproduct(&h.basis(a2)).unwrap();
                let mut rhs = Element::zero(pic.domain());
                for (k1, c1) in da.terms() {
                    for (k2, c2) in da2.terms() {
                        let g = h.mul(&h.antipode_inv_basis(&k2[0]), &h.antipode_inv_basis(&k1[0]));
                        let y = s.action.rmul(&s.action.act(&g, &s.action.r_basis(x)), &s.action.r_basis(x2));
                        let z = h.mul_basis(&k1[1], &k2[1]);
                        rhs.add_scaled(&Tensor::product(&[&y, &z]).pack(pic.domain()), &(c1 * c2));
                    }
                }
                (lhs.ok() != Some(rhs)).then(|| json!([wkey(u), wkey(v)]))
            })
        });
        let mut chk = Check::new("w-conjugation-smash", &ids, sampled);
        chk.case(fail.is_none(), || fail.clone().unwrap());
        report.push(chk.finish());
    } else {
        report.push(CheckResult::skipped("w-conjugation-smash", &ids, "needs full coproducts"));
    }

    // W⁻¹ b W(x′⊗a′) = x′⊗(b▷a′)
    let bs = d.pair.sample_b(2);
    let mut chk = Check::new("w-conjugation-dual", &ids, sampled || !d.pair.b.is_finite());
    for b in &bs {
        for v in &vs {
            let lhs = pic.w_basis(v).and_then(|w| pic.w_inv(&d.act(b, &w)));
            let rhs = Tensor::product(&[&s.action.r_basis(v.at(0)), &d.pair.b_on_a_basis(b, v.at(1))]).pack(pic.domain());
            chk.case(lhs.ok() == Some(rhs), || json!([wkey(b), wkey(v)]));
        }
    }
    report.push(chk.finish());

    if let Some(bis) = bis.filter(|b| b.is_finite() && s.is_finite()) {
        let bk = bis.finite_basis().unwrap();
        let ops: Vec<Option<Element>> = bk
            .par_iter()
            .map(|k| vs.iter().map(|v| pic.op(k, v).ok()).collect::<Option<Vec<_>>>().map(|p| stacked(&p)))
            .collect();
        let ops: Option<Vec<Element>> = ops.into_iter().collect();
        let rank = ops.as_ref().map(|o| linalg::span_rank(o)).unwrap_or(0);
        report.push(verdict("w-operators-faithful", &ids, rank == bk.len(), false, json!({"rank": rank, "dim": bk.len()})));
    }
    report
}

/// Writes every bismash basis element as the unique element of
/// `R⊗T` acting on `R⊗A` like its `W`-transported operator, where
/// `(y⊗t)(x′⊗a′) = yx′ ⊗ t·a′`.
fn untwist<F>(pic: &WPicture, bis: &SmashProduct, target: &AlgebraHandle, t_act: F) -> Result<Vec<Element>>
where
    F: Fn(&Key, &Key) -> Element + Sync,
{
    let vs = pic.basis(0);
    let r = pic.d.smash.r().clone();
    let vec_of = |parts: Vec<Element>| stacked(&parts);
    let tk = target.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(target.id()))?;
    let gens: Vec<Element> = tk
        .par_iter()
        .map(|t| {
            let (y, tt) = (t.at(0), t.at(1));
            vec_of(
                vs.iter()
                    .map(|v| {
                        let yx = r.mul_basis(y, v.at(0));
                        Tensor::product(&[&yx, &t_act(tt, v.at(1))]).pack(pic.domain())
                    })
                    .collect(),
            )
        })
        .collect();
    let bk = bis.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(bis.id()))?;
    let ops: Vec<Element> = bk
        .par_iter()
        .map(|k| vs.iter().map(|v| pic.op(k, v)).collect::<Result<Vec<_>>>().map(vec_of))
        .collect::<Result<Vec<_>>>()?;
    let idx = KeyIndex::from_elements(gens.iter().chain(ops.iter()));
    let mut ech = Echelon::new(true);
    for g in &gens {
        ech.insert(&idx.vector(g).unwrap());
    }
    ops.par_iter()
        .zip(bk.par_iter())
        .map(|(o, k)| {
            let c = ech
                .express(&idx.vector(o).unwrap())
                .ok_or_else(|| Error::Singular(format!("operator of {} is not in the image of {}", k, target.id())))?;
            Ok(Element::from_terms(target.domain(), c.into_iter().map(|(i, v)| (tk[i].clone(), v))))
        })
        .collect()
}

/// Certified `(R#A)#B ≅ R⊗T` from an untwisting.
fn untwisted_isomorphism<F>(name: &str, d: &DualAction, bis: &SmashProduct, target: &AlgebraHandle, t_act: F) -> Result<Isomorphism>
where
    F: Fn(&Key, &Key) -> Element + Sync,
{
    let pic = WPicture::new(d);
    let images = untwist(&pic, bis, target, t_act)?;
    let src = bis.algebra().clone();
    let back = invert_map(&src, target, &images)?;
    let (fi, bi) = (KeyIndex::from_keys(src.finite_basis().unwrap()), KeyIndex::from_keys(target.finite_basis().unwrap()));
    Isomorphism::build(
        name,
        &src,
        target,
        |u| images[fi.get(u).unwrap()].clone(),
        Some(|v: &Key| back[bi.get(v).unwrap()].clone()),
        false,
    )
}

/// The duality isomorphism with its certificates; `matrix` is the
/// identification with `M_n(R)` when R has an identity.
#[derive(Clone, Debug)]
pub struct DualityIso {
    pub bismash: SmashProduct,
    pub theta: Isomorphism,
    pub matrix: Option<Isomorphism>,
    pub report: Report,
}

/// `(R#A)#Â → R⊗(A◊Â)`, for a pair built by [`DualPair::from_finite`].
pub fn duality_isomorphism(d: &DualAction) -> Result<DualityIso> {
    let p = &d.pair;
    if p.dual.is_none() {
        return Err(Error::AlgebraMismatch(format!("{} is not A paired with its dual", p.name)));
    }
    let s = &d.smash;
    let r = s.r().clone();
    let n = p.a.dim().ok_or_else(|| Error::NotFiniteDimensional(p.a.id()))?;
    let dim_r = r.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(r.id()))?.len();
    let bis = bismash(d, SmashOptions::default())?;
    let dia = diamond_algebra(p)?;
    let target: AlgebraHandle = Arc::new(TensorAlgebra::new(r.clone(), dia.clone()));
    let (pa, pd) = (p.clone(), p.a.domain().clone());
    // (a◊ω)a′ = ⟨a′, ω⟩a
    let theta = untwisted_isomorphism("duality-isomorphism", d, &bis, &target, move |t, a2| {
        Element::basis(&pd, t.at(0).clone()).scale(&pa.pair_basis(a2, t.at(1)))
    })?;

    let ids = d.ids();
    let mut report = Report::new();
    let dim = bis.dim().unwrap_or(0);
    report.push(verdict(
        "duality-dimension",
        &ids,
        dim == dim_r * n * n,
        false,
        json!({"bismash": dim, "dim_r": dim_r, "n": n}),
    ));
    report.extend(theta.report.clone());

    let matrix = match r.identity() {
        Some(_) => {
            let m = Arc::new(MatrixAlgebra::new(n, r.clone()));
            let mt: AlgebraHandle = m.clone();
            let ka = p.a.finite_basis().unwrap();
            let ia = KeyIndex::from_keys(ka.clone());
            // y⊗(aⱼ◊ωₖ) ↦ Σₗ ⟨aₗ, ωₖ⟩ E_{jl}⊗y
            let to_matrix = |t: &Key| {
                let (y, j, w) = (t.at(0), ia.get(t.at(1).at(0)).unwrap(), t.at(1).at(1));
                let ey = Element::basis(r.domain(), y.clone());
                let mut e = Element::zero(mt.domain());
                for (l, al) in ka.iter().enumerate() {
                    e.add_scaled(&m.unit(j, l, &ey), &p.pair_basis(al, w));
                }
                e
            };
            let apply = |x: &Element| {
                let mut out = Element::zero(mt.domain());
                for (k, c) in x.terms() {
                    out.add_scaled(&to_matrix(k), c);
                }
                out
            };
            let images: Vec<Element> = theta.forward.par_iter().map(apply).collect();
            let src = bis.algebra().clone();
            let back = invert_map(&src, &mt, &images)?;
            let (fi, bi) = (KeyIndex::from_keys(src.finite_basis().unwrap()), KeyIndex::from_keys(mt.finite_basis().unwrap()));
            let iso = Isomorphism::build(
                "duality-matrix",
                &src,
                &mt,
                |u| images[fi.get(u).unwrap()].clone(),
                Some(|v: &Key| back[bi.get(v).unwrap()].clone()),
                false,
            )?;
            report.extend(iso.report.clone());
            Some(iso)
        }
        None => None,
    };
    Ok(DualityIso { bismash: bis, theta, matrix, report })
}

/// Compares `(R#A)#B` with `R⊗(A#B)` for any finite pair whose standard
/// module `(a#b)a′ = a(b▷a′)` is faithful, by the same untwisting.
pub fn tensor_comparison(d: &DualAction) -> Result<Isomorphism> {
    let p = &d.pair;
    let ab = pairing_smash(p, Order::AB)?;
    let bis = bismash(d, SmashOptions::default())?;
    let target: AlgebraHandle = Arc::new(TensorAlgebra::new(d.smash.r().clone(), ab.algebra().clone()));
    let pa = p.clone();
    untwisted_isomorphism("tensor-comparison", d, &bis, &target, move |t, a2| {
        pa.a.mul(&pa.a.basis(t.at(0)), &pa.b_on_a_basis(t.at(1), a2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{adjoint, translation};
    use crate::algebra::ScalarAlgebra;
    use crate::instances::{group_algebra, GroupSpec};
    use crate::pairing::rank_one_realization;
    use crate::smash::smash;

    fn translation_z2() -> DualAction {
        let g = GroupSpec::cyclic(2);
        let s = smash(&translation(g.clone())).unwrap();
        dual_action(&DualPair::canonical_pair(g), &s).unwrap()
    }

    fn dual_of(h: &crate::hopf::RegularMha, action: &ActionSpec) -> DualAction {
        let p = DualPair::from_finite(h).unwrap();
        dual_action(&p, &smash(action).unwrap()).unwrap()
    }

    #[test]
    fn dual_action_on_translation() {
        let d = translation_z2();
        assert!(d.certificates.all_passed(), "{}", d.certificates.to_json_lines());
        let u = Element::basis(d.smash.domain(), Key::pair(&Key::Int(0), &Key::Int(1)));
        assert_eq!(d.act(&Key::Int(1), &u), u);
        assert!(d.act(&Key::Int(0), &u).is_zero());
        let one_b = d.pair.b.identity().unwrap();
        assert_eq!(d.action.act(&one_b, &u), u);
    }

    #[test]
    fn fixed_points_are_pi_of_r() {
        let d = translation_z2();
        let r = fixed_point_theorem_check(&d).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert_eq!(r.get("fixed-point-theorem").unwrap().detail.as_ref().unwrap()["fixed_dim"], 2);
        let h = group_algebra(GroupSpec::cyclic(2));
        let c: AlgebraHandle = Arc::new(ScalarAlgebra::new());
        let d = dual_of(&h, &trivial(&h, &c));
        let r = fixed_point_theorem_check(&d).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert_eq!(r.get("fixed-point-theorem").unwrap().detail.as_ref().unwrap()["fixed_dim"], 1);
    }

    #[test]
    fn bismash_module_is_faithful() {
        let d = translation_z2();
        let bis = bismash(&d, SmashOptions::default()).unwrap();
        assert_eq!(bis.dim(), Some(8));
        let r = bismash_module_report(&d, &bis);
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert_eq!(r.get("bismash-module-faithful").unwrap().detail.as_ref().unwrap()["rank"], 8);
    }

    #[test]
    fn w_picture_checks() {
        let d = translation_z2();
        let pic = WPicture::new(&d);
        let v = Key::pair(&Key::Int(0), &Key::Int(1));
        assert_eq!(pic.w_basis(&v).unwrap(), Element::basis(d.smash.domain(), Key::pair(&Key::Int(1), &Key::Int(1))));
        let bis = bismash(&d, SmashOptions::default()).unwrap();
        let r = w_conjugation(&d, Some(&bis));
        assert!(r.all_passed(), "{}", r.to_json_lines());
    }

    #[test]
    fn duality_for_small_instances() {
        let g = GroupSpec::cyclic(2);
        let h = group_algebra(g.clone());
        let c: AlgebraHandle = Arc::new(ScalarAlgebra::new());
        for (action, dim) in [(trivial(&h, &c), 4), (translation(g), 8)] {
            let d = dual_of(&h, &action);
            let iso = duality_isomorphism(&d).unwrap();
            assert!(iso.report.all_passed(), "{}", iso.report.to_json_lines());
            assert_eq!(iso.bismash.dim(), Some(dim));
            assert!(iso.matrix.is_some());
        }
    }

    #[test]
    fn scalar_coefficients_match_rank_one_realization() {
        let h = group_algebra(GroupSpec::s3());
        let c: AlgebraHandle = Arc::new(ScalarAlgebra::new());
        let d = dual_of(&h, &trivial(&h, &c));
        let iso = duality_isomorphism(&d).unwrap();
        let gamma = rank_one_realization(&d.pair).unwrap();
        let one = Key::Int(0);
        for (k, img) in iso.bismash.finite_basis().unwrap().iter().zip(&iso.theta.forward) {
            let u = Element::basis(gamma.iso.src.domain(), Key::pair(k.at(0).at(1), k.at(1)));
            let expected: Element = Element::from_terms(
                iso.theta.dst.domain(),
                gamma.iso.apply(&u).into_terms().map(|(kk, cc)| (Key::pair(&one, &kk), cc)),
            );
            assert_eq!(img, &expected);
        }
    }

    #[test]
    fn adjoint_z3_duality() {
        let h = group_algebra(GroupSpec::cyclic(3));
        let d = dual_of(&h, &adjoint(&h));
        let iso = duality_isomorphism(&d).unwrap();
        assert!(iso.report.all_passed(), "{}", iso.report.to_json_lines());
        assert_eq!(iso.bismash.dim(), Some(27));
    }

    #[test]
    fn tensor_comparison_for_canonical_pair() {
        let d = translation_z2();
        let iso = tensor_comparison(&d).unwrap();
        assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
    }
}
