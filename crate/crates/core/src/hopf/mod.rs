//! Regular multiplier Hopf algebras, presented through their covering maps.
//!
//! The coproduct itself is never materialized: `Δ(a)` lives in `M(A⊗A)`.
//! What an instance provides are the four maps
//!
//! ```text
//! T1(a,b) = Δ(a)(1⊗b)     T2(a,b) = (a⊗1)Δ(b)
//! T3(a,b) = Δ(a)(b⊗1)     T4(a,b) = (1⊗b)Δ(a)
//! ```
//!
//! on basis keys, plus ε, S and S⁻¹. Everything else is derived from these.

pub mod local_units;
pub mod sweedler;
pub mod verify;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{self, Algebra, AlgebraHandle};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::Result;
use crate::multiplier::Multiplier;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cover {
    T1,
    T2,
    T3,
    T4,
}

impl Cover {
    pub const ALL: [Cover; 4] = [Cover::T1, Cover::T2, Cover::T3, Cover::T4];
}

impl std::str::FromStr for Cover {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Cover> {
        match s {
            "T1" | "t1" => Ok(Cover::T1),
            "T2" | "t2" => Ok(Cover::T2),
            "T3" | "t3" => Ok(Cover::T3),
            "T4" | "t4" => Ok(Cover::T4),
            _ => Err(crate::error::Error::malformed("cover variant", format!("unknown `{}`", s))),
        }
    }
}

/// Linear functional given on basis keys.
#[derive(Clone)]
pub struct Functional {
    f: Arc<dyn Fn(&Key) -> Scalar + Send + Sync>,
}

impl Functional {
    pub fn new<F: Fn(&Key) -> Scalar + Send + Sync + 'static>(f: F) -> Self {
        Functional { f: Arc::new(f) }
    }

    pub fn on_basis(&self, k: &Key) -> Scalar {
        (self.f)(k)
    }

    pub fn eval(&self, x: &Element) -> Scalar {
        x.eval_linear(|k| (self.f)(k))
    }

    /// From coordinates over a finite basis.
    pub fn from_values(keys: &[Key], values: &[Scalar]) -> Self {
        let map: std::collections::HashMap<Key, Scalar> =
            keys.iter().cloned().zip(values.iter().cloned()).filter(|(_, v)| !v.is_zero()).collect();
        Functional::new(move |k| map.get(k).cloned().unwrap_or_else(Scalar::zero))
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functional")
    }
}

/// What an instance must supply. All maps are on basis keys.
pub trait HopfAlgebra: Algebra {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor;
    fn counit_basis(&self, a: &Key) -> Scalar;
    fn antipode_basis(&self, a: &Key) -> Element;
    fn antipode_inv_basis(&self, a: &Key) -> Element;

    /// Closed form of `T1⁻¹(a⊗b)`; derived from T4 and S when absent.
    fn t1_inv_basis(&self, a: &Key, b: &Key) -> Option<Tensor> {
        let _ = (a, b);
        None
    }
    /// Closed form of `T2⁻¹(a⊗b)`; derived from T3 and S when absent.
    fn t2_inv_basis(&self, a: &Key, b: &Key) -> Option<Tensor> {
        let _ = (a, b);
        None
    }
    /// `Some(Some(h))`: known left cointegral; `Some(None)`: known to have none;
    /// `None`: no oracle (finite instances are solved instead).
    fn cointegral_oracle(&self) -> Option<Option<Element>> {
        None
    }
    /// A known left integral, for countable instances.
    fn integral_oracle(&self) -> Option<Functional> {
        None
    }
}

/// Shared handle to a regular multiplier Hopf algebra.
#[derive(Clone)]
pub struct RegularMha {
    inner: Arc<dyn HopfAlgebra>,
}

impl fmt::Debug for RegularMha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularMha({})", self.id())
    }
}

impl RegularMha {
    pub fn new<H: HopfAlgebra + 'static>(h: H) -> Self {
        RegularMha { inner: Arc::new(h) }
    }

    pub fn from_arc(h: Arc<dyn HopfAlgebra>) -> Self {
        RegularMha { inner: h }
    }

    pub fn inner(&self) -> &Arc<dyn HopfAlgebra> {
        &self.inner
    }

    pub fn algebra(&self) -> AlgebraHandle {
        self.inner.clone()
    }

    pub fn id(&self) -> String {
        self.inner.id()
    }

    pub fn domain(&self) -> &Domain {
        self.inner.domain()
    }

    pub fn finite_basis(&self) -> Option<Vec<Key>> {
        self.inner.finite_basis()
    }

    pub fn is_finite(&self) -> bool {
        self.inner.finite_basis().is_some()
    }

    pub fn dim(&self) -> Option<usize> {
        algebra::dim(self.inner.as_ref())
    }

    pub fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.inner.sample_basis(radius)
    }

    pub fn identity(&self) -> Option<Element> {
        self.inner.identity()
    }

    pub fn basis(&self, k: &Key) -> Element {
        Element::basis(self.domain(), k.clone())
    }

    pub fn legs2(&self) -> [Domain; 2] {
        [self.domain().clone(), self.domain().clone()]
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        algebra::mul(self.inner.as_ref(), x, y)
    }

    pub fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        self.inner.mul_basis(x, y)
    }

    /// The covered coproduct as a concrete 2-tensor.
    pub fn cover(&self, c: Cover, a: &Element, b: &Element) -> Result<Tensor> {
        a.check_domain(self.domain())?;
        b.check_domain(self.domain())?;
        Ok(self.cover_unchecked(c, a, b))
    }

    pub fn cover_unchecked(&self, c: Cover, a: &Element, b: &Element) -> Tensor {
        let mut t = Tensor::zero(&self.legs2());
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                t.add_scaled(&self.inner.cover_basis(c, ka, kb), &(ca * cb));
            }
        }
        t
    }

    pub fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        self.inner.cover_basis(c, a, b)
    }

    /// Applies a covering map to every elementary tensor of `t` (as the pair `(a, b)`).
    pub fn cover_tensor(&self, c: Cover, t: &Tensor) -> Tensor {
        let legs = self.legs2();
        t.map_terms(&legs, |ks| self.inner.cover_basis(c, &ks[0], &ks[1]))
    }

    pub fn counit(&self, a: &Element) -> Scalar {
        a.eval_linear(|k| self.inner.counit_basis(k))
    }

    pub fn counit_basis(&self, a: &Key) -> Scalar {
        self.inner.counit_basis(a)
    }

    pub fn antipode(&self, a: &Element) -> Element {
        a.map_linear(self.domain(), |k| self.inner.antipode_basis(k))
    }

    pub fn antipode_inv(&self, a: &Element) -> Element {
        a.map_linear(self.domain(), |k| self.inner.antipode_inv_basis(k))
    }

    pub fn antipode_basis(&self, a: &Key) -> Element {
        self.inner.antipode_basis(a)
    }

    pub fn antipode_inv_basis(&self, a: &Key) -> Element {
        self.inner.antipode_inv_basis(a)
    }

    /// `T1` extended to tensors: `a⊗b ↦ Δ(a)(1⊗b)`.
    pub fn t1(&self, t: &Tensor) -> Tensor {
        self.cover_tensor(Cover::T1, t)
    }

    /// `T2` extended to tensors: `a⊗b ↦ (a⊗1)Δ(b)`.
    pub fn t2(&self, t: &Tensor) -> Tensor {
        self.cover_tensor(Cover::T2, t)
    }

    /// `T1⁻¹(a⊗b) = Σ a₍₁₎ ⊗ S(a₍₂₎)b = (ι⊗S)((1⊗S⁻¹b)Δ(a))`.
    pub fn t1_inv(&self, t: &Tensor) -> Tensor {
        let legs = self.legs2();
        t.map_terms(&legs, |ks| {
            if let Some(x) = self.inner.t1_inv_basis(&ks[0], &ks[1]) {
                return x;
            }
            let sb = self.antipode_inv_basis(&ks[1]);
            let cov = self.cover_unchecked(Cover::T4, &self.basis(&ks[0]), &sb);
            cov.map_leg(1, self.domain(), |k| self.antipode_basis(k))
        })
    }

    /// `T2⁻¹(a⊗b) = Σ aS(b₍₁₎) ⊗ b₍₂₎ = (S⊗ι)(Δ(b)(S⁻¹a⊗1))`.
    pub fn t2_inv(&self, t: &Tensor) -> Tensor {
        let legs = self.legs2();
        t.map_terms(&legs, |ks| {
            if let Some(x) = self.inner.t2_inv_basis(&ks[0], &ks[1]) {
                return x;
            }
            let sa = self.antipode_inv_basis(&ks[0]);
            let cov = self.cover_unchecked(Cover::T3, &self.basis(&ks[1]), &sa);
            cov.map_leg(0, self.domain(), |k| self.antipode_basis(k))
        })
    }

    /// `Δ(a)` as a tensor, available when A has an identity (then `Δ(a) = Δ(a)(1⊗1)`).
    pub fn full_coproduct(&self, a: &Element) -> Option<Tensor> {
        let one = self.identity()?;
        Some(self.cover_unchecked(Cover::T1, a, &one))
    }

    /// `m(t)` for a 2-tensor over A.
    pub fn multiply_legs(&self, t: &Tensor) -> Element {
        t.merge_legs(0, self.domain(), |x, y| self.mul_basis(x, y)).into_element()
    }

    pub fn as_multiplier(&self, a: &Element) -> Multiplier {
        Multiplier::from_element(&self.algebra(), a)
    }

    pub fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        self.inner.local_unit_oracle(items)
    }

    pub fn cointegral_oracle(&self) -> Option<Option<Element>> {
        self.inner.cointegral_oracle()
    }

    pub fn integral_oracle(&self) -> Option<Functional> {
        self.inner.integral_oracle()
    }

    /// Some basis element with nonzero counit, rescaled to counit 1.
    pub fn counit_normalized(&self, radius: i64) -> Option<Element> {
        for k in self.sample_basis(radius) {
            let e = self.counit_basis(&k);
            if !e.is_zero() {
                return Some(self.basis(&k).scale(&e.inv().unwrap()));
            }
        }
        None
    }
}

/// The coopposite `(A, Δ')` with `Δ' = flip∘Δ`; its antipode is `S⁻¹`.
pub struct Coopposite {
    base: RegularMha,
    id: String,
    domain: Domain,
}

impl Coopposite {
    pub fn new(base: RegularMha) -> Self {
        let id = format!("cop({})", base.id());
        let domain = base.domain().clone();
        Coopposite { base, id, domain }
    }
}

impl Algebra for Coopposite {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        self.base.finite_basis()
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.base.sample_basis(radius)
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        self.base.mul_basis(x, y)
    }
    fn identity(&self) -> Option<Element> {
        self.base.identity()
    }
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        self.base.local_unit_oracle(items)
    }
}

impl HopfAlgebra for Coopposite {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        // Δ'(a)(1⊗b) = flip(Δ(a)(b⊗1)), (a⊗1)Δ'(b) = flip((1⊗a)Δ(b)), and symmetrically.
        let t = match c {
            Cover::T1 => self.base.cover_basis(Cover::T3, a, b),
            Cover::T2 => self.base.cover_basis(Cover::T4, b, a),
            Cover::T3 => self.base.cover_basis(Cover::T1, a, b),
            Cover::T4 => self.base.cover_basis(Cover::T2, b, a),
        };
        t.flip(0, 1).expect("arity 2")
    }
    fn counit_basis(&self, a: &Key) -> Scalar {
        self.base.counit_basis(a)
    }
    fn antipode_basis(&self, a: &Key) -> Element {
        self.base.antipode_inv_basis(a)
    }
    fn antipode_inv_basis(&self, a: &Key) -> Element {
        self.base.antipode_basis(a)
    }
}
