//! Multipliers as compatible pairs of left/right multiplication maps.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{self, Algebra, AlgebraHandle};
use crate::element::{Domain, Element, Key};
use crate::scalar::Scalar;

type LinMap = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

/// An element of `M(A)`: `left(x) = m·x`, `right(x) = x·m`.
#[derive(Clone)]
pub struct Multiplier {
    domain: Domain,
    left: LinMap,
    right: LinMap,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiplier({})", self.domain)
    }
}

impl Multiplier {
    pub fn new<L, R>(domain: &Domain, left: L, right: R) -> Self
    where
        L: Fn(&Element) -> Element + Send + Sync + 'static,
        R: Fn(&Element) -> Element + Send + Sync + 'static,
    {
        Multiplier { domain: domain.clone(), left: Arc::new(left), right: Arc::new(right) }
    }

    /// From maps given on basis keys, extended linearly.
    pub fn from_basis_maps<L, R>(domain: &Domain, left: L, right: R) -> Self
    where
        L: Fn(&Key) -> Element + Send + Sync + 'static,
        R: Fn(&Key) -> Element + Send + Sync + 'static,
    {
        let d1 = domain.clone();
        let d2 = domain.clone();
        Multiplier::new(
            domain,
            move |x: &Element| x.map_linear(&d1, &left),
            move |x: &Element| x.map_linear(&d2, &right),
        )
    }

    /// Left and right multiplication by `a`.
    pub fn from_element(alg: &AlgebraHandle, a: &Element) -> Self {
        let (al, ar) = (alg.clone(), alg.clone());
        let (a1, a2) = (a.clone(), a.clone());
        Multiplier::new(
            alg.domain(),
            move |x: &Element| algebra::mul(al.as_ref(), &a1, x),
            move |x: &Element| algebra::mul(ar.as_ref(), x, &a2),
        )
    }

    pub fn identity(domain: &Domain) -> Self {
        Multiplier::new(domain, |x: &Element| x.clone(), |x: &Element| x.clone())
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn left(&self, x: &Element) -> Element {
        (self.left)(x)
    }

    pub fn right(&self, x: &Element) -> Element {
        (self.right)(x)
    }

    /// `m₁m₂`: left maps compose, right maps compose in reverse.
    pub fn product(&self, other: &Multiplier) -> Multiplier {
        let (l1, l2) = (self.left.clone(), other.left.clone());
        let (r1, r2) = (self.right.clone(), other.right.clone());
        Multiplier::new(&self.domain, move |x: &Element| l1(&l2(x)), move |x: &Element| r2(&r1(x)))
    }

    pub fn scale(&self, c: &Scalar) -> Multiplier {
        let (l, r) = (self.left.clone(), self.right.clone());
        let (c1, c2) = (c.clone(), c.clone());
        Multiplier::new(&self.domain, move |x: &Element| l(x).scale(&c1), move |x: &Element| r(x).scale(&c2))
    }

    pub fn add(&self, other: &Multiplier) -> Multiplier {
        let (l1, l2) = (self.left.clone(), other.left.clone());
        let (r1, r2) = (self.right.clone(), other.right.clone());
        Multiplier::new(&self.domain, move |x: &Element| &l1(x) + &l2(x), move |x: &Element| &r1(x) + &r2(x))
    }

    pub fn zero(domain: &Domain) -> Multiplier {
        let (d1, d2) = (domain.clone(), domain.clone());
        Multiplier::new(domain, move |_: &Element| Element::zero(&d1), move |_: &Element| Element::zero(&d2))
    }

    /// First pair `(x, y)` of sample keys with `right(x)·y ≠ x·left(y)`.
    pub fn compatibility_failure(&self, alg: &dyn Algebra, sample: &[Key]) -> Option<(Key, Key)> {
        for x in sample {
            let ex = algebra::basis_element(alg, x);
            let rx = self.right(&ex);
            for y in sample {
                let ey = algebra::basis_element(alg, y);
                if algebra::mul(alg, &rx, &ey) != algebra::mul(alg, &ex, &self.left(&ey)) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// Equality of both maps on the sample keys.
    pub fn agrees_on(&self, other: &Multiplier, alg: &dyn Algebra, sample: &[Key]) -> bool {
        sample.iter().all(|k| {
            let e = algebra::basis_element(alg, k);
            self.left(&e) == other.left(&e) && self.right(&e) == other.right(&e)
        })
    }

    /// `m·1` when the algebra has an identity; then `m` is multiplication by it.
    pub fn as_element(&self, alg: &dyn Algebra) -> Option<Element> {
        alg.identity().map(|one| self.left(&one))
    }

    /// Whether `m` acts as the identity on the sample.
    pub fn is_identity_on(&self, alg: &dyn Algebra, sample: &[Key]) -> bool {
        self.agrees_on(&Multiplier::identity(alg.domain()), alg, sample)
    }
}

/// The scalar multiple `c·1`.
pub fn scalar_multiplier(domain: &Domain, c: &Scalar) -> Multiplier {
    if c.is_one() {
        return Multiplier::identity(domain);
    }
    Multiplier::identity(domain).scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarAlgebra;

    #[test]
    fn identity_is_compatible() {
        let c: AlgebraHandle = Arc::new(ScalarAlgebra::new());
        let one = c.identity().unwrap();
        let m = Multiplier::from_element(&c, &one);
        assert!(m.compatibility_failure(c.as_ref(), &[Key::Int(0)]).is_none());
        assert!(m.is_identity_on(c.as_ref(), &[Key::Int(0)]));
    }
}
