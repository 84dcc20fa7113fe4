//! The algebra `A◊B` of rank-one operators `a′ ↦ ⟨a′, b⟩a` and the
//! realization of `A#Â` inside it.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{self, Algebra, AlgebraHandle, MatrixAlgebra, ScalarAlgebra, TableAlgebra};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{self, KeyIndex};
use crate::report::{verdict, wkey, Check, Report};
use crate::scalar::Scalar;

use super::heisenberg::{pairing_smash, Order};
use super::DualPair;

/// `(a◊b)(a′◊b′) = ⟨a′, b⟩ a◊b′` on keys `(a, b)`.
pub struct DiamondAlgebra {
    pair: DualPair,
    domain: Domain,
}

impl DiamondAlgebra {
    pub fn new(pair: &DualPair) -> Result<Self> {
        if !pair.is_finite() {
            return Err(Error::NotFiniteDimensional(pair.name.clone()));
        }
        let domain = Domain::new(&format!("{}◊{}", pair.a.id(), pair.b.id()));
        Ok(DiamondAlgebra { pair: pair.clone(), domain })
    }
}

impl Algebra for DiamondAlgebra {
    fn id(&self) -> String {
        self.domain.name().to_string()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        let kb = self.pair.b.finite_basis()?;
        Some(self.pair.a.finite_basis()?.iter().flat_map(|a| kb.iter().map(move |b| Key::pair(a, b))).collect())
    }
    fn mul_basis(&self, u: &Key, v: &Key) -> Element {
        let c = self.pair.pair_basis(v.at(0), u.at(1));
        if c.is_zero() {
            return Element::zero(&self.domain);
        }
        Element::from_terms(&self.domain, [(Key::pair(u.at(0), v.at(1)), c)])
    }
}

/// `A◊B`, tabulated.
pub fn diamond_algebra(p: &DualPair) -> Result<AlgebraHandle> {
    Ok(TableAlgebra::tabulate(&DiamondAlgebra::new(p)?)?)
}

/// Images of the target basis under the inverse of `src → dst`.
pub(crate) fn invert_map(src: &AlgebraHandle, dst: &AlgebraHandle, images: &[Element]) -> Result<Vec<Element>> {
    let sk = src.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(src.id()))?;
    let dk = dst.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(dst.id()))?;
    if sk.len() != dk.len() {
        return Err(Error::Singular(format!("{} and {} differ in dimension", src.id(), dst.id())));
    }
    let idx = KeyIndex::from_keys(dk.clone());
    let n = sk.len();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (j, img) in images.iter().enumerate() {
        for (k, c) in img.terms() {
            let i = idx.get(k).ok_or_else(|| Error::NotFound(format!("{} in {}", k, dst.id())))?;
            m[i][j] = c.clone();
        }
    }
    let inv = linalg::invert(&m).ok_or_else(|| Error::Singular(format!("{} → {}", src.id(), dst.id())))?;
    Ok((0..n).map(|j| Element::from_terms(src.domain(), (0..n).map(|i| (sk[i].clone(), inv[i][j].clone())))).collect())
}

fn scalar_matrices(n: usize) -> (Arc<MatrixAlgebra>, Element) {
    let scalars: AlgebraHandle = Arc::new(ScalarAlgebra::new());
    let one = algebra::basis_element(scalars.as_ref(), &Key::Int(0));
    (Arc::new(MatrixAlgebra::new(n, scalars)), one)
}

/// `aⱼ◊bₖ ↦ Σₗ ⟨aₗ, bₖ⟩ E_{jl}` onto `M_n(ℂ)`, `n = dim A`.
pub fn diamond_matrix_iso(p: &DualPair) -> Result<crate::smash::Isomorphism> {
    let src = diamond_algebra(p)?;
    let ka = p.a.finite_basis().expect("finite");
    let ia = KeyIndex::from_keys(ka.clone());
    let (m, one) = scalar_matrices(ka.len());
    let dst: AlgebraHandle = m.clone();
    let images: Vec<Element> = src
        .finite_basis()
        .expect("finite")
        .iter()
        .map(|u| {
            let j = ia.get(u.at(0)).expect("key of A");
            let mut e = Element::zero(dst.domain());
            for (l, al) in ka.iter().enumerate() {
                e.add_scaled(&m.unit(j, l, &one), &p.pair_basis(al, u.at(1)));
            }
            e
        })
        .collect();
    let back = invert_map(&src, &dst, &images)?;
    let (sk, dk) = (src.finite_basis().unwrap(), dst.finite_basis().unwrap());
    let (fi, bi) = (KeyIndex::from_keys(sk), KeyIndex::from_keys(dk));
    crate::smash::Isomorphism::build(
        "diamond-matrix",
        &src,
        &dst,
        |u| images[fi.get(u).unwrap()].clone(),
        Some(|v: &Key| back[bi.get(v).unwrap()].clone()),
        false,
    )
}

/// `γ : A#Â → A◊Â` with its certificates and the dimension of the image of
/// `A#Â` in `End(A)` under `(a#ω)a′ = a(ω▷a′)`.
#[derive(Clone, Debug)]
pub struct RankOne {
    pub iso: crate::smash::Isomorphism,
    pub image_dim: usize,
    pub report: Report,
}

/// `γ(a # φ(c·)) = Σ aS(c₍₁₎) ◊ φ(c₍₂₎·)`. Needs a pair built by
/// [`DualPair::from_finite`].
pub fn rank_one_realization(p: &DualPair) -> Result<RankOne> {
    let dual = p.dual.clone().ok_or_else(|| Error::AlgebraMismatch(format!("{} is not A paired with its dual", p.name)))?;
    let h = &p.a;
    let ka = h.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(h.id()))?;
    let n = ka.len();
    let ids = p.ids();
    let s = pairing_smash(p, Order::AB)?;
    let src = s.algebra().clone();
    let dia = diamond_algebra(p)?;
    let ia = KeyIndex::from_keys(ka.clone());
    let phi = &dual.base.phi;
    let gi = &dual.gram_inv;

    // c with φ(c·) = ω_k: Σ_m Φ[m][j] c_m = Φ[j][k]
    let c_of = |k: usize| -> Element {
        Element::from_terms(
            h.domain(),
            (0..n).map(|m| {
                let v: Scalar = (0..n).map(|j| &gi[j][m] * &dual.gram[j][k]).sum();
                (ka[m].clone(), v)
            }),
        )
    };
    let gamma = |u: &Key| -> Element {
        let (a, w) = (u.at(0), u.at(1));
        let c = c_of(ia.get(w).expect("dual key"));
        let dc = h.full_coproduct(&c).expect("unital");
        let mut out = Element::zero(dia.domain());
        for (ks, coef) in dc.terms() {
            let left = h.mul(&h.basis(a), &h.antipode_basis(&ks[0]));
            let values: Vec<Scalar> = ka.iter().map(|aj| phi.eval(&h.mul_basis(&ks[1], aj))).collect();
            let right = dual.functional_coords(&values);
            out.add_scaled(&Tensor::product(&[&left, &right]).pack(dia.domain()), coef);
        }
        out
    };
    let sk = src.finite_basis().expect("finite");
    let images: Vec<Element> = sk.par_iter().map(|u| gamma(u)).collect();
    let back = invert_map(&src, &dia, &images)?;
    let (fi, bi) = (KeyIndex::from_keys(sk.clone()), KeyIndex::from_keys(dia.finite_basis().unwrap()));
    let iso = crate::smash::Isomorphism::build(
        "rank-one-realization",
        &src,
        &dia,
        |u| images[fi.get(u).unwrap()].clone(),
        Some(|v: &Key| back[bi.get(v).unwrap()].clone()),
        false,
    )?;

    let mut report = Report::new();
    let fail = algebra::associativity_failure(dia.as_ref(), &dia.finite_basis().unwrap());
    let mut chk = Check::new("diamond-associativity", &ids, false);
    chk.case(fail.is_none(), || {
        let (x, y, z) = fail.clone().unwrap();
        json!([wkey(&x), wkey(&y), wkey(&z)])
    });
    report.push(chk.finish());

    // (a#ω)a′ = a(ω▷a′) on A
    let ops: Vec<Element> = sk
        .par_iter()
        .map(|u| {
            let parts: Vec<Element> =
                ka.iter().map(|v| h.mul(&h.basis(u.at(0)), &p.b_on_a_basis(u.at(1), v))).collect();
            crate::actions::stacked(&parts)
        })
        .collect();
    let image_dim = linalg::span_rank(&ops);
    report.push(verdict("rank-one-image-dim", &ids, image_dim == n * n, false, json!({"image_dim": image_dim, "dim_a": n})));
    report.extend(iso.report.clone());
    Ok(RankOne { iso, image_dim, report })
}

/// `A#Â → M_n(ℂ)`: the rank-one realization followed by the matrix picture
/// of `A◊Â`.
pub fn matrix_realization(p: &DualPair) -> Result<crate::smash::Isomorphism> {
    let r = rank_one_realization(p)?;
    let d = diamond_matrix_iso(p)?;
    let src = r.iso.src.clone();
    let dst = d.dst.clone();
    let (sk, dk) = (src.finite_basis().unwrap(), dst.finite_basis().unwrap());
    let (fi, bi) = (KeyIndex::from_keys(sk), KeyIndex::from_keys(dk));
    let d_back = d.backward.clone().expect("inverse");
    crate::smash::Isomorphism::build(
        "matrix-realization",
        &src,
        &dst,
        |u| d.apply(&r.iso.forward[fi.get(u).unwrap()]),
        Some(|v: &Key| r.iso.apply_inverse(&d_back[bi.get(v).unwrap()]).expect("inverse")),
        false,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{group_algebra, GroupSpec};

    fn groups() -> Vec<GroupSpec> {
        vec![GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::s3()]
    }

    #[test]
    fn diamond_is_matrix_algebra() {
        for g in groups() {
            let n = g.order().unwrap();
            let p = DualPair::canonical_pair(g);
            let iso = diamond_matrix_iso(&p).unwrap();
            assert!(iso.is_certified(), "{}", iso.report.to_json_lines());
            assert_eq!(iso.dst.finite_basis().unwrap().len(), n * n);
        }
    }

    #[test]
    fn rank_one_realization_dimensions() {
        for (g, n) in groups().into_iter().zip([2usize, 3, 6]) {
            let p = DualPair::from_finite(&group_algebra(g)).unwrap();
            let r = rank_one_realization(&p).unwrap();
            assert!(r.report.all_passed(), "{}", r.report.to_json_lines());
            assert_eq!(r.image_dim, n * n);
            let m = matrix_realization(&p).unwrap();
            assert!(m.is_certified(), "{}", m.report.to_json_lines());
        }
    }

    #[test]
    fn group_like_collapse() {
        // γ(λ₀ # φ(λ₀·)) = λ₀◊φ(λ₀·) in ℂZ₂
        let p = DualPair::from_finite(&group_algebra(GroupSpec::cyclic(2))).unwrap();
        let r = rank_one_realization(&p).unwrap();
        let dual = p.dual.as_ref().unwrap();
        let h = &p.a;
        let one = h.basis(&Key::Int(0));
        let values: Vec<Scalar> = dual.keys.iter().map(|k| dual.base.phi.eval(&h.mul(&one, &h.basis(k)))).collect();
        let w = dual.functional_coords(&values);
        let src = r.iso.src.domain().clone();
        let u = Tensor::product(&[&one, &w]).pack(&src);
        let expected = Tensor::product(&[&one, &w]).pack(r.iso.dst.domain());
        assert_eq!(r.iso.apply(&u), expected);
    }

    #[test]
    fn canonical_pair_has_no_dual_data() {
        let p = DualPair::canonical_pair(GroupSpec::cyclic(2));
        assert_eq!(rank_one_realization(&p).unwrap_err().kind(), "AlgebraMismatch");
    }
}
