//! `K(G)` (finitely supported functions, pointwise product) and `ℂG`
//! (group algebra), with closed-form covering maps.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::element::{Domain, Element, Key, Tensor};
use crate::hopf::{Cover, Functional, HopfAlgebra, RegularMha};
use crate::instances::groups::GroupSpec;
use crate::scalar::Scalar;

/// `K(G)`: basis `δ_p`, `δ_p δ_q = [p=q] δ_p`, `(Δf)(p,q) = f(pq)`.
pub struct FunctionAlgebra {
    group: GroupSpec,
    domain: Domain,
    id: String,
}

impl FunctionAlgebra {
    pub fn new(group: GroupSpec) -> Self {
        let id = format!("K({})", group.name());
        FunctionAlgebra { domain: Domain::new(&id), id, group }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    fn pair(&self, a: Key, b: Key) -> Tensor {
        Tensor::basis(&[self.domain.clone(), self.domain.clone()], vec![a, b])
    }
}

impl Algebra for FunctionAlgebra {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        self.group.elements().map(<[Key]>::to_vec)
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.group.window(radius)
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        if x == y {
            Element::basis(&self.domain, x.clone())
        } else {
            Element::zero(&self.domain)
        }
    }
    fn identity(&self) -> Option<Element> {
        let elems = self.group.elements()?;
        Some(Element::from_terms(&self.domain, elems.iter().map(|k| (k.clone(), Scalar::one()))))
    }
    /// Indicator function of the union of the supports.
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        let keys: BTreeSet<Key> = items.iter().flat_map(|e| e.support().cloned().collect::<Vec<_>>()).collect();
        Some(Element::from_terms(&self.domain, keys.into_iter().map(|k| (k, Scalar::one()))))
    }
}

impl HopfAlgebra for FunctionAlgebra {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        let g = &self.group;
        match c {
            // Δ(δ_p)(1⊗δ_s) = δ_{ps⁻¹}⊗δ_s
            Cover::T1 => self.pair(g.mul(a, &g.inv(b)), b.clone()),
            // (δ_s⊗1)Δ(δ_p) = δ_s⊗δ_{s⁻¹p}
            Cover::T2 => self.pair(a.clone(), g.mul(&g.inv(a), b)),
            // Δ(δ_p)(δ_s⊗1) = δ_s⊗δ_{s⁻¹p}
            Cover::T3 => self.pair(b.clone(), g.mul(&g.inv(b), a)),
            // (1⊗δ_s)Δ(δ_p) = δ_{ps⁻¹}⊗δ_s
            Cover::T4 => self.pair(g.mul(a, &g.inv(b)), b.clone()),
        }
    }
    fn counit_basis(&self, a: &Key) -> Scalar {
        if a == self.group.identity() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
    fn antipode_basis(&self, a: &Key) -> Element {
        Element::basis(&self.domain, self.group.inv(a))
    }
    fn antipode_inv_basis(&self, a: &Key) -> Element {
        Element::basis(&self.domain, self.group.inv(a))
    }
    fn cointegral_oracle(&self) -> Option<Option<Element>> {
        Some(Some(Element::basis(&self.domain, self.group.identity().clone())))
    }
    fn integral_oracle(&self) -> Option<Functional> {
        // φ(f) = Σ_p f(p)
        Some(Functional::new(|_| Scalar::one()))
    }
}

/// `ℂG`: basis `λ_p`, `λ_p λ_q = λ_{pq}`, `Δ(λ_p) = λ_p⊗λ_p`.
pub struct GroupAlgebra {
    group: GroupSpec,
    domain: Domain,
    id: String,
}

impl GroupAlgebra {
    pub fn new(group: GroupSpec) -> Self {
        let id = format!("C[{}]", group.name());
        GroupAlgebra { domain: Domain::new(&id), id, group }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    fn pair(&self, a: Key, b: Key) -> Tensor {
        Tensor::basis(&[self.domain.clone(), self.domain.clone()], vec![a, b])
    }
}

impl Algebra for GroupAlgebra {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        self.group.elements().map(<[Key]>::to_vec)
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.group.window(radius)
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        Element::basis(&self.domain, self.group.mul(x, y))
    }
    fn identity(&self) -> Option<Element> {
        Some(Element::basis(&self.domain, self.group.identity().clone()))
    }
    fn local_unit_oracle(&self, _: &[Element]) -> Option<Element> {
        self.identity()
    }
}

impl HopfAlgebra for GroupAlgebra {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        let g = &self.group;
        match c {
            Cover::T1 => self.pair(a.clone(), g.mul(a, b)),
            Cover::T2 => self.pair(g.mul(a, b), b.clone()),
            Cover::T3 => self.pair(g.mul(a, b), a.clone()),
            Cover::T4 => self.pair(a.clone(), g.mul(b, a)),
        }
    }
    fn counit_basis(&self, _: &Key) -> Scalar {
        Scalar::one()
    }
    fn antipode_basis(&self, a: &Key) -> Element {
        Element::basis(&self.domain, self.group.inv(a))
    }
    fn antipode_inv_basis(&self, a: &Key) -> Element {
        Element::basis(&self.domain, self.group.inv(a))
    }
    fn cointegral_oracle(&self) -> Option<Option<Element>> {
        // Σ_p λ_p for finite groups; an infinite group has none, but no oracle is registered.
        None
    }
}

pub fn function_algebra(g: GroupSpec) -> RegularMha {
    RegularMha::new(FunctionAlgebra::new(g))
}

pub fn group_algebra(g: GroupSpec) -> RegularMha {
    RegularMha::new(GroupAlgebra::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify::verify_mha_axioms;

    #[test]
    fn k_z2_covers() {
        let h = function_algebra(GroupSpec::cyclic(2));
        let d = |k| h.basis(&Key::Int(k));
        // T1(δ0, δ1) = δ1⊗δ1
        let t = h.cover(Cover::T1, &d(0), &d(1)).unwrap();
        assert_eq!(t, Tensor::product(&[&d(1), &d(1)]));
        assert_eq!(h.counit(&d(0)), Scalar::one());
    }

    #[test]
    fn k_z_antipode() {
        let h = function_algebra(GroupSpec::integers());
        assert_eq!(h.antipode(&h.basis(&Key::Int(3))), h.basis(&Key::Int(-3)));
        let r = verify_mha_axioms(&h, &h.sample_basis(3));
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert!(r.entries.iter().all(|e| e.status == crate::report::Status::SampledPass));
    }

    #[test]
    fn group_algebra_axioms() {
        for g in [GroupSpec::cyclic(2), GroupSpec::s3()] {
            let h = group_algebra(g);
            let r = verify_mha_axioms(&h, &h.finite_basis().unwrap());
            assert!(r.all_passed(), "{}", r.to_json_lines());
        }
    }
}
