//! Commuting representations of `R` and `A` combine into one of `R#A`.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::actions::translation;
use crate::algebra::{self, AlgebraHandle, MatrixAlgebra, ScalarAlgebra};
use crate::element::{Element, Key};
use crate::error::{Error, Result};
use crate::instances::GroupSpec;
use crate::linalg;
use crate::multiplier::Multiplier;
use crate::report::{wkey, Check, Report};
use crate::scalar::Scalar;
use crate::smash::{smash, SmashProduct};

/// A homomorphism into `M(target)`, given on basis keys.
pub type RhoFn = Arc<dyn Fn(&Key) -> Multiplier + Send + Sync>;

/// `x#a ↦ ρ_R(x)ρ_A(a)` on the (sampled) basis of `R#A`.
pub struct UniversalMap {
    pub target: AlgebraHandle,
    pub keys: Vec<Key>,
    pub images: Vec<Multiplier>,
    pub report: Report,
}

impl UniversalMap {
    /// `ρ(u)·1` for every basis key, when the target has an identity.
    pub fn image_elements(&self) -> Option<Vec<Element>> {
        let one = self.target.identity()?;
        Some(self.images.iter().map(|m| m.left(&one)).collect())
    }

    pub fn image_dim(&self) -> Option<usize> {
        self.image_elements().map(|e| linalg::span_rank(&e))
    }
}

/// Checks `ρ_A(a)ρ_R(x) = Σ ρ_R(a₍₁₎x)ρ_A(a₍₂₎)` on basis pairs and builds the
/// combined map, certified multiplicative on basis pairs.
pub fn universal_map(s: &SmashProduct, target: &AlgebraHandle, rho_a: RhoFn, rho_r: RhoFn) -> Result<UniversalMap> {
    const RADIUS: i64 = 2;
    let h = s.a();
    let ids = {
        let mut v = s.ids();
        v.push(target.id());
        v
    };
    let sampled = !s.is_finite() || target.finite_basis().is_none();
    let sa = h.finite_basis().unwrap_or_else(|| h.sample_basis(RADIUS));
    let sr = s.r().finite_basis().unwrap_or_else(|| s.r().sample_basis(RADIUS));
    let st = target.finite_basis().unwrap_or_else(|| target.sample_basis(RADIUS));
    let t = target.as_ref();
    let mut report = Report::new();

    let mut chk = Check::new("universal-commutation", &ids, sampled);
    for a in &sa {
        for x in &sr {
            let lhs = rho_a(a).product(&rho_r(x));
            let g = s.twist(&h.basis(a), &s.action.r_basis(x))?;
            let mut rhs = Multiplier::zero(target.domain());
            for (ks, c) in g.terms() {
                rhs = rhs.add(&rho_r(&ks[0]).product(&rho_a(&ks[1])).scale(c));
            }
            if !chk.case(lhs.agrees_on(&rhs, t, &st), || json!({"pair": [wkey(a), wkey(x)]})) {
                return Err(Error::CommutationFailed { witness: format!("(a = {}, x = {})", a, x) });
            }
        }
    }
    report.push(chk.finish());

    let keys = s.sample(RADIUS);
    let images: Vec<Multiplier> = keys.iter().map(|u| rho_r(u.at(0)).product(&rho_a(u.at(1)))).collect();
    let image_of = |e: &Element| {
        let mut out = Multiplier::zero(target.domain());
        for (k, c) in e.terms() {
            out = out.add(&rho_r(k.at(0)).product(&rho_a(k.at(1))).scale(c));
        }
        out
    };
    let n = keys.len();
    let fail = (0..n * n).into_par_iter().find_map_first(|ij| {
        let (i, j) = (ij / n, ij % n);
        let uv = s.algebra().mul_basis(&keys[i], &keys[j]);
        (!image_of(&uv).agrees_on(&images[i].product(&images[j]), t, &st)).then(|| (i, j))
    });
    let mut chk = Check::new("universal-multiplicative", &ids, sampled);
    chk.case(fail.is_none(), || {
        let (i, j) = fail.unwrap();
        json!({"pair": [wkey(&keys[i]), wkey(&keys[j])]})
    });
    report.push(chk.finish());

    Ok(UniversalMap { target: target.clone(), keys, images, report })
}

/// The covariant pair of `K(G)⋊G` on `ℂ^G` as matrices: `ρ_R(δ_q) = E_qq`
/// and `ρ_A(λ_p) = Σ_q E_{pq,q}`.
pub fn regular_matrix_pair(g: GroupSpec) -> Result<(SmashProduct, AlgebraHandle, RhoFn, RhoFn)> {
    let elems = g.elements().ok_or_else(|| Error::NotFiniteDimensional(g.name().to_string()))?.to_vec();
    let index = move |k: &Key| elems.iter().position(|e| e == k).expect("group element");
    let s = smash(&translation(g.clone()))?;
    let scalars: AlgebraHandle = Arc::new(ScalarAlgebra::new());
    let one = algebra::basis_element(scalars.as_ref(), &Key::Int(0));
    let m = Arc::new(MatrixAlgebra::new(g.order().expect("finite"), scalars));
    let target: AlgebraHandle = m.clone();
    let (m1, m2, t1, t2) = (m.clone(), m, target.clone(), target.clone());
    let (i1, i2) = (index.clone(), index);
    let (o1, o2) = (one.clone(), one);
    let g2 = g.clone();
    let rho_r: RhoFn = Arc::new(move |q| {
        let i = i1(q);
        Multiplier::from_element(&t1, &m1.unit(i, i, &o1))
    });
    let rho_a: RhoFn = Arc::new(move |p| {
        let mut e = Element::zero(t2.domain());
        for q in g2.elements().expect("finite") {
            e.add_scaled(&m2.unit(i2(&g2.mul(p, q)), i2(q), &o2), &Scalar::from_int(1));
        }
        Multiplier::from_element(&t2, &e)
    });
    Ok((s, target, rho_a, rho_r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_pair_is_surjective() {
        let (s, target, rho_a, rho_r) = regular_matrix_pair(GroupSpec::cyclic(2)).unwrap();
        let u = universal_map(&s, &target, rho_a, rho_r).unwrap();
        assert!(u.report.all_passed(), "{}", u.report.to_json_lines());
        assert_eq!(u.image_dim(), Some(4));
    }

    #[test]
    fn swapped_representations_fail_commutation() {
        let (s, target, rho_a, rho_r) = regular_matrix_pair(GroupSpec::cyclic(2)).unwrap();
        // ρ_A and ρ_R exchanged through the identification of keys
        let err = universal_map(&s, &target, rho_r, rho_a).err().unwrap();
        assert_eq!(err.kind(), "CommutationFailed");
    }

    #[test]
    fn embeddings_give_identity() {
        let (s, _, _, _) = regular_matrix_pair(GroupSpec::cyclic(3)).unwrap();
        let (s1, s2) = (s.clone(), s.clone());
        let target = s.algebra().clone();
        let rho_a: RhoFn = Arc::new(move |a| s1.pi_a(&s1.a().basis(a)));
        let rho_r: RhoFn = Arc::new(move |x| s2.pi_r(&s2.action.r_basis(x)));
        let u = universal_map(&s, &target, rho_a, rho_r).unwrap();
        assert!(u.report.all_passed());
        let imgs = u.image_elements().unwrap();
        for (k, e) in u.keys.iter().zip(&imgs) {
            assert_eq!(e, &Element::basis(s.domain(), k.clone()));
        }
    }
}
