//! Certified algebra isomorphisms, and the two structural ones for smash
//! products: inner actions trivialize, cocycle-equivalent actions agree.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::actions::{
    extend_action_to_multipliers, gamma_of, gamma_right_unit, is_inner_witness, verify_cocycle, ActionSpec,
    CocycleData, GammaFn,
};
use crate::algebra::{self, homomorphism_failure, AlgebraHandle, LinearMap, TensorAlgebra};
use crate::element::{Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::Cover;
use crate::report::{verdict, wkey, Check, Report};
use crate::smash::{smash, SmashProduct};

/// A linear map between finite-dimensional algebras given on bases, with an
/// optional inverse and its certificate report.
#[derive(Clone)]
pub struct Isomorphism {
    pub name: String,
    pub src: AlgebraHandle,
    pub dst: AlgebraHandle,
    pub forward: Vec<Element>,
    pub backward: Option<Vec<Element>>,
    pub report: Report,
}

impl std::fmt::Debug for Isomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Isomorphism({}: {} → {})", self.name, self.src.id(), self.dst.id())
    }
}

fn index_of(alg: &AlgebraHandle) -> Result<(Vec<Key>, HashMap<Key, usize>)> {
    let keys = alg.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(alg.id()))?;
    let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    Ok((keys, index))
}

fn apply(images: &[Element], index: &HashMap<Key, usize>, x: &Element, target: &AlgebraHandle) -> Element {
    let mut out = Element::zero(target.domain());
    for (k, c) in x.terms() {
        out.add_scaled(&images[index[k]], c);
    }
    out
}

impl Isomorphism {
    /// Evaluates both maps on the bases and certifies them.
    pub fn build<F, G>(name: &str, src: &AlgebraHandle, dst: &AlgebraHandle, forward: F, backward: Option<G>, anti: bool) -> Result<Self>
    where
        F: Fn(&Key) -> Element + Sync,
        G: Fn(&Key) -> Element + Sync,
    {
        let (sk, _) = index_of(src)?;
        let (dk, _) = index_of(dst)?;
        let fw: Vec<Element> = sk.par_iter().map(|k| forward(k)).collect();
        let bw: Option<Vec<Element>> = backward.map(|g| dk.par_iter().map(|k| g(k)).collect());
        let report = certify_map(name, src, dst, &fw, bw.as_deref(), anti)?;
        Ok(Isomorphism { name: name.into(), src: src.clone(), dst: dst.clone(), forward: fw, backward: bw, report })
    }

    pub fn apply(&self, x: &Element) -> Element {
        let (_, index) = index_of(&self.src).expect("finite");
        apply(&self.forward, &index, x, &self.dst)
    }

    pub fn apply_inverse(&self, y: &Element) -> Option<Element> {
        let bw = self.backward.as_ref()?;
        let (_, index) = index_of(&self.dst).expect("finite");
        Some(apply(bw, &index, y, &self.src))
    }

    pub fn is_certified(&self) -> bool {
        self.report.all_passed()
    }
}

/// Multiplicativity (or anti-multiplicativity) on all basis pairs,
/// bijectivity by rank, and when an inverse is given, both composites.
pub fn certify_map(
    name: &str,
    src: &AlgebraHandle,
    dst: &AlgebraHandle,
    forward: &[Element],
    backward: Option<&[Element]>,
    anti: bool,
) -> Result<Report> {
    let (sk, si) = index_of(src)?;
    let (dk, di) = index_of(dst)?;
    let ids = vec![name.to_string(), src.id(), dst.id()];
    let mut report = Report::new();
    let kind = if anti { "anti-multiplicative" } else { "multiplicative" };

    let f = LinearMap { source: &sk, image: forward.to_vec() };
    let fail = homomorphism_failure(src.as_ref(), dst.as_ref(), &f, anti);
    let mut chk = Check::new(&format!("{}-{}", name, kind), &ids, false);
    chk.case(fail.is_none(), || {
        let (a, b) = fail.clone().unwrap();
        json!({"pair": [wkey(&a), wkey(&b)]})
    });
    chk.detail(json!({"pairs": sk.len() * sk.len()}));
    report.push(chk.finish());

    let rank = f.rank();
    report.push(verdict(
        &format!("{}-bijective", name),
        &ids,
        rank == sk.len() && rank == dk.len(),
        false,
        json!({"rank": rank, "dim_src": sk.len(), "dim_dst": dk.len()}),
    ));

    if let Some(bw) = backward {
        let mut chk = Check::new(&format!("{}-inverse", name), &ids, false);
        for (i, k) in sk.iter().enumerate() {
            let back = apply(bw, &di, &forward[i], src);
            chk.case(back == Element::basis(src.domain(), k.clone()), || json!({"src": wkey(k)}));
        }
        for (j, k) in dk.iter().enumerate() {
            let there = apply(forward, &si, &bw[j], dst);
            chk.case(there == Element::basis(dst.domain(), k.clone()), || json!({"dst": wkey(k)}));
        }
        report.push(chk.finish());

        let g = LinearMap { source: &dk, image: bw.to_vec() };
        let fail = homomorphism_failure(dst.as_ref(), src.as_ref(), &g, anti);
        let mut chk = Check::new(&format!("{}-inverse-{}", name, kind), &ids, false);
        chk.case(fail.is_none(), || {
            let (a, b) = fail.clone().unwrap();
            json!({"pair": [wkey(&a), wkey(&b)]})
        });
        report.push(chk.finish());
    }
    Ok(report)
}

/// For an inner action with witness `γ`: `φ(x#a) = Σ xγ(a₍₁₎) ⊗ a₍₂₎` onto
/// `R⊗A`, with inverse `ψ(x⊗a) = Σ xγ(S(a₍₁₎)) # a₍₂₎`.
pub fn inner_trivialization(s: &SmashProduct, gamma: &GammaFn) -> Result<Isomorphism> {
    if !is_inner_witness(&s.action, gamma) {
        return Err(Error::NotInner(format!("{} on {}", s.action.name(), s.r().id())));
    }
    let h = s.a().clone();
    let r = s.r().clone();
    let tensor = Arc::new(TensorAlgebra::new(r.clone(), h.algebra()));
    let dst: AlgebraHandle = tensor.clone();
    let rd = r.domain().clone();
    let forward = |u: &Key| {
        let x = s.action.r_basis(u.at(0));
        let e = gamma_right_unit(&h, gamma, &x).expect("γ is unital");
        let t = h.cover_unchecked(Cover::T2, &e, &h.basis(u.at(1)));
        let mut out = Element::zero(dst.domain());
        for (ks, c) in t.terms() {
            let y = gamma(&ks[0]).right(&x);
            out.add_scaled(&tensor.embed(&y, &h.basis(&ks[1])), c);
        }
        out
    };
    let backward = |v: &Key| {
        let x = Element::basis(&rd, v.at(0).clone());
        let e = gamma_right_unit(&h, gamma, &x).expect("γ is unital");
        let t = h.cover_unchecked(Cover::T3, &h.basis(v.at(1)), &h.antipode_inv(&e));
        let mut out = Element::zero(s.domain());
        for (ks, c) in t.terms() {
            let y = gamma_of(gamma, &rd, &h.antipode_basis(&ks[0])).right(&x);
            out.add_scaled(&s.elem(&y, &h.basis(&ks[1])), c);
        }
        out
    };
    Isomorphism::build("inner-trivialization", s.algebra(), &dst, forward, Some(backward), false)
}

/// For cocycle-equivalent actions: `φ(x#₂a) = Σ xγ(a₍₁₎) #₁ a₍₂₎` with inverse
/// `ψ(x#₁a) = Σ x(a₍₁₎ ▷₁ γ(S(a₍₂₎))) #₂ a₍₃₎`.
pub fn cocycle_isomorphism(c: &CocycleData, act1: &ActionSpec, act2: &ActionSpec) -> Result<Isomorphism> {
    let rep = verify_cocycle(c, act1, act2)?;
    if !rep.all_passed() {
        let failed: Vec<&str> = rep.failures().iter().map(|f| f.check.as_str()).collect();
        return Err(Error::CocycleInvalid(failed.join(", ")));
    }
    let (s1, s2) = (smash(act1)?, smash(act2)?);
    let h = act1.a().clone();
    let rd = act1.r.domain().clone();
    let delta = |a: &Key| -> Tensor { h.full_coproduct(&h.basis(a)).expect("Hopf algebra") };
    let forward = |u: &Key| {
        let x = act1.r_basis(u.at(0));
        let mut out = Element::zero(s1.domain());
        for (ks, k) in delta(u.at(1)).terms() {
            let y = (c.gamma)(&ks[0]).right(&x);
            out.add_scaled(&s1.elem(&y, &h.basis(&ks[1])), k);
        }
        out
    };
    let backward = |u: &Key| {
        let x = act1.r_basis(u.at(0));
        let mut out = Element::zero(s2.domain());
        for (ks, k) in delta(u.at(1)).terms() {
            let p = h.basis(&ks[0]);
            for (ks2, k2) in delta(&ks[1]).terms() {
                let g = gamma_of(&c.gamma, &rd, &h.antipode_basis(&ks2[0]));
                let y = extend_action_to_multipliers(act1, &p, &g).right(&x);
                out.add_scaled(&s2.elem(&y, &h.basis(&ks2[1])), &(k * k2));
            }
        }
        out
    };
    Isomorphism::build("cocycle-isomorphism", s2.algebra(), s1.algebra(), forward, Some(backward), false)
}

/// Products of images agree with images of products on a basis window;
/// used for maps out of countable algebras.
pub fn sampled_homomorphism_failure<F>(src: &AlgebraHandle, dst: &AlgebraHandle, keys: &[Key], f: F) -> Option<(Key, Key)>
where
    F: Fn(&Key) -> Element + Sync,
{
    let n = keys.len();
    (0..n * n).into_par_iter().find_map_first(|ij| {
        let (a, b) = (&keys[ij / n], &keys[ij % n]);
        let lhs = src.mul_basis(a, b).map_linear(dst.domain(), &f);
        let rhs = algebra::mul(dst.as_ref(), &f(a), &f(b));
        (lhs != rhs).then(|| (a.clone(), b.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{adjoint, gamma_counit, gamma_identity, inner_action_from, translation, trivial};
    use crate::instances::{group_algebra, GroupSpec};

    #[test]
    fn adjoint_action_trivializes() {
        for g in [GroupSpec::cyclic(2), GroupSpec::s3()] {
            let h = group_algebra(g);
            let s = smash(&adjoint(&h)).unwrap();
            let iso = inner_trivialization(&s, &gamma_identity(&h)).unwrap();
            assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
            // φ(x#λ_p) = xλ_p ⊗ λ_p
            let (x, p) = (Key::Int(1), Key::Int(h.dim().unwrap() as i64 - 1));
            let img = iso.apply(&s.basis(&x, &p));
            let tensor = TensorAlgebra::new(s.r().clone(), h.algebra());
            assert_eq!(img, tensor.embed(&h.mul_basis(&x, &p), &h.basis(&p)));
        }
    }

    #[test]
    fn trivial_action_with_counit_is_reindexing() {
        let h = group_algebra(GroupSpec::cyclic(3));
        let r = h.algebra();
        let s = smash(&trivial(&h, &r)).unwrap();
        let iso = inner_trivialization(&s, &gamma_counit(&h, &r)).unwrap();
        assert!(iso.is_certified());
        for (k, img) in s.finite_basis().unwrap().iter().zip(&iso.forward) {
            assert_eq!(img.as_monomial().map(|(key, _)| key.clone()), Some(k.clone()));
        }
    }

    #[test]
    fn wrong_witness_is_not_inner() {
        let h = group_algebra(GroupSpec::s3());
        let s = smash(&adjoint(&h)).unwrap();
        let err = inner_trivialization(&s, &gamma_counit(&h, &h.algebra())).unwrap_err();
        assert_eq!(err.kind(), "NotInner");
    }

    #[test]
    fn trivial_and_inner_are_cocycle_isomorphic() {
        let h = group_algebra(GroupSpec::s3());
        let r = h.algebra();
        let gamma = gamma_identity(&h);
        let inner = inner_action_from(&h, &r, gamma.clone()).unwrap();
        let iso = cocycle_isomorphism(&CocycleData::new(gamma), &trivial(&h, &r), &inner).unwrap();
        assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
    }

    #[test]
    fn counit_cocycle_gives_identity() {
        let t = translation(GroupSpec::cyclic(2));
        let c = CocycleData::new(gamma_counit(t.a(), &t.r));
        let iso = cocycle_isomorphism(&c, &t, &t).unwrap();
        assert!(iso.is_certified());
        let keys = iso.src.finite_basis().unwrap();
        for (k, img) in keys.iter().zip(&iso.forward) {
            assert_eq!(img, &Element::basis(iso.dst.domain(), k.clone()));
        }
    }

    #[test]
    fn invalid_cocycle_is_rejected() {
        let h = group_algebra(GroupSpec::s3());
        let r = h.algebra();
        let c = CocycleData::new(gamma_counit(&h, &r));
        let err = cocycle_isomorphism(&c, &trivial(&h, &r), &adjoint(&h)).unwrap_err();
        assert_eq!(err.kind(), "CocycleInvalid");
    }
}
