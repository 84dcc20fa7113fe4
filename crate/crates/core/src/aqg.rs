//! Integrals, cointegrals, type classification, the modular automorphism and
//! the finite-dimensional dual.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::{Cover, Functional, RegularMha};
use crate::instances::FiniteHopf;
use crate::linalg::{self, SparseVec};
use crate::report::{verdict, wkey, Check, CheckResult, Report};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn collect_rows(rows: BTreeMap<Key, BTreeMap<usize, Scalar>>) -> Vec<SparseVec> {
    rows.into_values()
        .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>())
        .filter(|r| !r.is_empty())
        .collect()
}

fn bump(row: &mut BTreeMap<usize, Scalar>, i: usize, c: &Scalar) {
    *row.entry(i).or_insert_with(Scalar::zero) += c;
}

/// Rescales so the first nonzero coordinate is 1.
fn normalize(v: &SparseVec) -> SparseVec {
    match v.first() {
        Some((_, c)) => linalg::scale_vec(v, &c.inv().expect("nonzero")),
        None => Vec::new(),
    }
}

/// Solution space of the left (or right) invariance equations for a
/// finite-dimensional instance, as coordinate vectors over its basis.
pub fn integral_space(h: &RegularMha, side: Side) -> Result<Vec<Vec<Scalar>>> {
    let keys = h.finite_basis().ok_or_else(|| Error::InfiniteDimensionalNoOracle(h.id()))?;
    let n = keys.len();
    let idx: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut eqs = Vec::new();
    for (ia, a) in keys.iter().enumerate() {
        for b in &keys {
            // left: (ι⊗φ)((b⊗1)Δ(a)) = φ(a)b; right: (ψ⊗ι)(Δ(a)(1⊗b)) = ψ(a)b
            let (t, keep) = match side {
                Side::Left => (h.cover_basis(Cover::T2, b, a), 0),
                Side::Right => (h.cover_basis(Cover::T1, a, b), 1),
            };
            let mut rows: BTreeMap<Key, BTreeMap<usize, Scalar>> = BTreeMap::new();
            for (ks, c) in t.terms() {
                bump(rows.entry(ks[keep].clone()).or_default(), idx[&ks[1 - keep]], c);
            }
            bump(rows.entry(b.clone()).or_default(), ia, &Scalar::from_int(-1));
            eqs.extend(collect_rows(rows));
        }
    }
    Ok(linalg::nullspace(&eqs, n).iter().map(|v| linalg::dense_from_sparse(&normalize(v), n)).collect())
}

/// Solution space of `a·h = ε(a)h` (left) or `h·a = ε(a)h` (right).
pub fn cointegral_space(h: &RegularMha, side: Side) -> Result<Vec<Element>> {
    let keys = h.finite_basis().ok_or_else(|| Error::InfiniteDimensionalNoOracle(h.id()))?;
    let n = keys.len();
    let mut eqs = Vec::new();
    for a in &keys {
        let eps = h.counit_basis(a);
        let mut rows: BTreeMap<Key, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (i, x) in keys.iter().enumerate() {
            let p = match side {
                Side::Left => h.mul_basis(a, x),
                Side::Right => h.mul_basis(x, a),
            };
            for (k, c) in p.terms() {
                bump(rows.entry(k.clone()).or_default(), i, c);
            }
            bump(rows.entry(x.clone()).or_default(), i, &(-&eps));
        }
        eqs.extend(collect_rows(rows));
    }
    Ok(linalg::nullspace(&eqs, n)
        .iter()
        .map(|v| Element::from_terms(h.domain(), normalize(v).into_iter().map(|(i, c)| (keys[i].clone(), c))))
        .collect())
}

/// A normalized cointegral, `None` if only 0 solves the system.
pub fn find_cointegral(h: &RegularMha, side: Side) -> Result<Option<Element>> {
    if h.is_finite() {
        return Ok(cointegral_space(h, side)?.into_iter().next());
    }
    // Built-in oracles return two-sided cointegrals.
    h.cointegral_oracle().ok_or_else(|| Error::InfiniteDimensionalNoOracle(h.id()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeClass {
    Discrete,
    Compact,
    Both,
    Neither,
}

/// Discrete iff cointegrals exist; compact iff unital with integrals.
pub fn classify_type(h: &RegularMha) -> Result<TypeClass> {
    let (discrete, compact) = if h.is_finite() {
        let d = find_cointegral(h, Side::Left)?.is_some();
        let c = h.identity().is_some() && !integral_space(h, Side::Left)?.is_empty();
        (d, c)
    } else {
        let d = match h.cointegral_oracle() {
            Some(c) => c.is_some(),
            None => return Err(Error::Undecidable(format!("{}: no cointegral oracle", h.id()))),
        };
        let c = if h.identity().is_none() {
            false
        } else if h.integral_oracle().is_some() {
            true
        } else {
            return Err(Error::Undecidable(format!("{}: no integral oracle", h.id())));
        };
        (d, c)
    };
    Ok(match (discrete, compact) {
        (true, true) => TypeClass::Both,
        (true, false) => TypeClass::Discrete,
        (false, true) => TypeClass::Compact,
        (false, false) => TypeClass::Neither,
    })
}

/// A regular multiplier Hopf algebra with a chosen left integral φ and the
/// right integral `ψ = φ∘S`.
#[derive(Clone)]
pub struct AlgebraicQuantumGroup {
    pub base: RegularMha,
    pub phi: Functional,
    pub psi: Functional,
    /// φ on the basis (finite dimension).
    pub phi_values: Option<Vec<Scalar>>,
    /// σ on the basis, when computed.
    pub sigma: Option<Vec<Element>>,
}

impl std::fmt::Debug for AlgebraicQuantumGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraicQuantumGroup({})", self.base.id())
    }
}

impl AlgebraicQuantumGroup {
    /// Solves for φ in finite dimension, else uses the instance oracle.
    pub fn new(h: &RegularMha) -> Result<Self> {
        if let Some(keys) = h.finite_basis() {
            let space = integral_space(h, Side::Left)?;
            let values = space.into_iter().next().ok_or_else(|| Error::NotFound(format!("left integral on {}", h.id())))?;
            let mut g = Self::with_phi(h, Functional::from_values(&keys, &values));
            g.phi_values = Some(values);
            Ok(g)
        } else {
            let phi = h.integral_oracle().ok_or_else(|| Error::InfiniteDimensionalNoOracle(h.id()))?;
            Ok(Self::with_phi(h, phi))
        }
    }

    /// Uses a given candidate φ (not checked).
    pub fn with_phi(h: &RegularMha, phi: Functional) -> Self {
        let (hh, p) = (h.clone(), phi.clone());
        let psi = Functional::new(move |k| p.eval(&hh.antipode_basis(k)));
        let phi_values = h.finite_basis().map(|keys| keys.iter().map(|k| phi.on_basis(k)).collect());
        AlgebraicQuantumGroup { base: h.clone(), phi, psi, phi_values, sigma: None }
    }

    pub fn id(&self) -> String {
        self.base.id()
    }

    /// Gram matrix `Φ[i][j] = φ(aᵢaⱼ)`.
    pub fn gram(&self) -> Result<Vec<Vec<Scalar>>> {
        let keys = self.base.finite_basis().ok_or_else(|| Error::InfiniteDimensional(self.id()))?;
        Ok(keys.iter().map(|x| keys.iter().map(|y| self.phi.eval(&self.base.mul_basis(x, y))).collect()).collect())
    }

    pub fn with_sigma(mut self) -> Result<Self> {
        self.sigma = Some(compute_modular_automorphism(&self)?);
        Ok(self)
    }
}

/// σ with `φ(ab) = φ(bσ(a))`, certified to be an algebra automorphism.
pub fn compute_modular_automorphism(g: &AlgebraicQuantumGroup) -> Result<Vec<Element>> {
    let keys = g.base.finite_basis().ok_or_else(|| Error::InfiniteDimensional(g.id()))?;
    let n = keys.len();
    let gram = g.gram()?;
    let inv = linalg::invert(&gram).ok_or_else(|| Error::Singular(format!("φ is not faithful on {}", g.id())))?;
    // φ(aᵢaⱼ) = Σₖ Φ[j][k] s_{ki}, so s = Φ⁻¹Φᵀ
    let gt: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| gram[j][i].clone()).collect()).collect();
    let s = linalg::mat_mul(&inv, &gt);
    let sigma: Vec<Element> = (0..n)
        .map(|i| Element::from_terms(g.base.domain(), (0..n).map(|k| (keys[k].clone(), s[k][i].clone()))))
        .collect();
    let idx: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let apply = |x: &Element| x.map_linear(g.base.domain(), |k| sigma[idx[k]].clone());
    for i in 0..n {
        for j in 0..n {
            let lhs = apply(&g.base.mul_basis(&keys[i], &keys[j]));
            if lhs != g.base.mul(&sigma[i], &sigma[j]) {
                return Err(Error::Singular(format!("σ is not multiplicative at ({}, {})", keys[i], keys[j])));
            }
        }
    }
    Ok(sigma)
}

/// Invariance, faithfulness, uniqueness and (when present) σ checks.
pub fn verify_integral(g: &AlgebraicQuantumGroup, sample: &[Key]) -> Report {
    let h = &g.base;
    let ids = vec![h.id()];
    let sampled = !h.is_finite();
    let mut report = Report::new();

    let mut c = Check::new("integral-left-invariance", &ids, sampled);
    for a in sample {
        for b in sample {
            let lhs = h.cover_basis(Cover::T2, b, a).contract_leg(1, |k| g.phi.on_basis(k)).into_element();
            let rhs = h.basis(b).scale(&g.phi.on_basis(a));
            c.case(lhs == rhs, || json!({"a": wkey(a), "b": wkey(b)}));
        }
    }
    report.push(c.finish());

    let mut c = Check::new("integral-right-invariance", &ids, sampled);
    for a in sample {
        for b in sample {
            let lhs = h.cover_basis(Cover::T1, a, b).contract_leg(0, |k| g.psi.on_basis(k)).into_element();
            let rhs = h.basis(b).scale(&g.psi.on_basis(a));
            c.case(lhs == rhs, || json!({"a": wkey(a), "b": wkey(b)}));
        }
    }
    report.push(c.finish());

    let mut c = Check::new("integral-nonzero", &ids, sampled);
    c.case(sample.iter().any(|k| !g.phi.on_basis(k).is_zero()), || json!("φ vanishes on the sample"));
    report.push(c.finish());

    if h.is_finite() {
        let gram = g.gram().expect("finite");
        let rank = linalg::rank(&gram.iter().map(|r| linalg::sparse_from_dense(r)).collect::<Vec<_>>());
        let n = gram.len();
        report.push(verdict("integral-faithful", &ids, rank == n, false, json!({"rank": rank, "dim": n})));
        let left = integral_space(h, Side::Left).map(|s| s.len()).unwrap_or(0);
        let right = integral_space(h, Side::Right).map(|s| s.len()).unwrap_or(0);
        report.push(verdict(
            "integral-uniqueness",
            &ids,
            left == 1 && right == 1,
            false,
            json!({"left_dim": left, "right_dim": right, "normalization": "first nonzero coordinate = 1"}),
        ));
        let lc = cointegral_space(h, Side::Left).map(|s| s.len()).unwrap_or(0);
        let rc = cointegral_space(h, Side::Right).map(|s| s.len()).unwrap_or(0);
        report.push(verdict(
            "cointegral-uniqueness",
            &ids,
            lc <= 1 && rc <= 1,
            false,
            json!({"left_dim": lc, "right_dim": rc}),
        ));
        if let Some(sigma) = &g.sigma {
            let keys = h.finite_basis().unwrap();
            let idx: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
            let mut c = Check::new("modular-automorphism", &ids, false);
            for a in &keys {
                for b in &keys {
                    let lhs = g.phi.eval(&h.mul_basis(a, b));
                    let rhs = g.phi.eval(&h.mul(&h.basis(b), &sigma[idx[a]]));
                    c.case(lhs == rhs, || json!({"a": wkey(a), "b": wkey(b)}));
                }
            }
            report.push(c.finish());
        }
    }
    report
}

/// The dual `Â = {φ(·a)}` with the data needed to move between functionals
/// on A and elements of Â.
#[derive(Clone)]
pub struct DualData {
    pub base: AlgebraicQuantumGroup,
    pub hopf: RegularMha,
    pub keys: Vec<Key>,
    /// `Φ[j][k] = φ(aⱼaₖ) = ωₖ(aⱼ)`.
    pub gram: Vec<Vec<Scalar>>,
    pub gram_inv: Vec<Vec<Scalar>>,
}

impl DualData {
    /// The element of Â with values `ω(aⱼ) = values[j]`.
    pub fn functional_coords(&self, values: &[Scalar]) -> Element {
        let n = self.keys.len();
        Element::from_terms(
            self.hopf.domain(),
            (0..n).map(|k| {
                let c: Scalar = (0..n).map(|j| &self.gram_inv[k][j] * &values[j]).sum();
                (self.keys[k].clone(), c)
            }),
        )
    }

    /// `ω(a)` for `ω ∈ Â` and `a ∈ A`.
    pub fn pairing(&self, a: &Element, w: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (kw, cw) in w.terms() {
            for (ka, ca) in a.terms() {
                // ω_k(a_j) = φ(a_j a_k)
                let v = self.base.phi.eval(&self.base.base.mul_basis(ka, kw));
                acc += &(&(cw * ca) * &v);
            }
        }
        acc
    }
}

/// Builds `(Â, Δ̂)` for a finite-dimensional instance with product
/// `(ωω′)(x) = Σ ω(x₍₁₎)ω′(x₍₂₎)` and `Δ̂(ω)(x⊗y) = ω(xy)`.
pub fn finite_dual(h: &RegularMha) -> Result<DualData> {
    let keys = h.finite_basis().ok_or_else(|| Error::InfiniteDimensional(h.id()))?;
    let one = h.identity().ok_or_else(|| Error::NotHopf(h.id()))?;
    let g = AlgebraicQuantumGroup::new(h)?;
    let gram = g.gram()?;
    let gram_inv = linalg::invert(&gram).ok_or_else(|| Error::Singular(format!("φ is not faithful on {}", h.id())))?;
    let n = keys.len();
    let id = format!("dual({})", h.id());
    let domain = Domain::new(&id);
    let coords = |values: &[Scalar]| -> Element {
        Element::from_terms(
            &domain,
            (0..n).map(|k| (keys[k].clone(), (0..n).map(|j| &gram_inv[k][j] * &values[j]).sum::<Scalar>())),
        )
    };
    let deltas: Vec<Tensor> = keys.iter().map(|k| h.cover_unchecked(Cover::T1, &h.basis(k), &one)).collect();
    // ω_k(x) for x a basis key: φ(x a_k)
    let omega = |k: usize, x: &Key| -> Scalar { g.phi.eval(&h.mul_basis(x, &keys[k])) };

    let mut product = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let values: Vec<Scalar> = (0..n)
                .map(|j| deltas[j].terms().map(|(ks, c)| &(c * &omega(k, &ks[0])) * &omega(l, &ks[1])).sum())
                .collect();
            product.push(coords(&values));
        }
    }
    let legs = [domain.clone(), domain.clone()];
    let mut coproduct = Vec::with_capacity(n);
    for k in 0..n {
        // C = Φ⁻¹ V Φ⁻ᵀ with V[j][m] = ω_k(a_j a_m)
        let v: Vec<Vec<Scalar>> =
            (0..n).map(|j| (0..n).map(|m| g.phi.eval(&h.mul(&h.mul_basis(&keys[j], &keys[m]), &h.basis(&keys[k])))).collect()).collect();
        let left = linalg::mat_mul(&gram_inv, &v);
        let inv_t: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| gram_inv[j][i].clone()).collect()).collect();
        let c = linalg::mat_mul(&left, &inv_t);
        let mut t = Tensor::zero(&legs);
        for (i, row) in c.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.add_term(vec![keys[i].clone(), keys[j].clone()], x);
            }
        }
        coproduct.push(t);
    }
    // ε̂(ω_k) = ω_k(1) = φ(a_k)
    let counit: Vec<Scalar> = (0..n).map(|k| g.phi.on_basis(&keys[k])).collect();
    let antipode: Vec<Element> = (0..n)
        .map(|k| {
            let values: Vec<Scalar> =
                keys.iter().map(|x| g.phi.eval(&h.mul(&h.antipode_basis(x), &h.basis(&keys[k])))).collect();
            coords(&values)
        })
        .collect();
    let antipode_inv: Vec<Element> = (0..n)
        .map(|k| {
            let values: Vec<Scalar> =
                keys.iter().map(|x| g.phi.eval(&h.mul(&h.antipode_inv_basis(x), &h.basis(&keys[k])))).collect();
            coords(&values)
        })
        .collect();
    let fh = FiniteHopf::new(&id, domain, keys.clone(), product, coproduct, counit, antipode, Some(antipode_inv))?;
    Ok(DualData { base: g, hopf: RegularMha::new(fh), keys, gram, gram_inv })
}

/// Checks that `images[i]` (the image of basis key `i` of `src`) defines a
/// Hopf algebra isomorphism `src → dst` between finite unital instances.
pub fn hopf_isomorphism_report(src: &RegularMha, dst: &RegularMha, images: &[Element], name: &str) -> Report {
    let ids = vec![src.id(), dst.id()];
    let keys = src.finite_basis().expect("finite source");
    let idx: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let map = |x: &Element| x.map_linear(dst.domain(), |k| images[idx[k]].clone());
    let mut report = Report::new();
    let rank = linalg::span_rank(images);
    let dst_dim = dst.dim().unwrap_or(0);
    report.push(verdict(
        &format!("{}-bijective", name),
        &ids,
        rank == keys.len() && rank == dst_dim,
        false,
        json!({"rank": rank, "dim_src": keys.len(), "dim_dst": dst_dim}),
    ));
    let mut c = Check::new(&format!("{}-multiplicative", name), &ids, false);
    for (i, a) in keys.iter().enumerate() {
        for (j, b) in keys.iter().enumerate() {
            let ok = map(&src.mul_basis(a, b)) == dst.mul(&images[i], &images[j]);
            c.case(ok, || json!({"pair": [wkey(a), wkey(b)]}));
        }
    }
    report.push(c.finish());
    let (one_s, one_d) = (src.identity(), dst.identity());
    let mut c = Check::new(&format!("{}-comultiplicative", name), &ids, false);
    if let (Some(one_s), Some(one_d)) = (one_s, one_d) {
        for (i, a) in keys.iter().enumerate() {
            let lhs = src
                .cover_unchecked(Cover::T1, &src.basis(a), &one_s)
                .map_leg(0, dst.domain(), |k| images[idx[k]].clone())
                .map_leg(1, dst.domain(), |k| images[idx[k]].clone());
            let rhs = dst.cover_unchecked(Cover::T1, &images[i], &one_d);
            c.case(lhs == rhs, || json!({"key": wkey(a)}));
        }
    } else {
        c.case(false, || json!("non-unital instance"));
    }
    report.push(c.finish());
    let mut c = Check::new(&format!("{}-counit", name), &ids, false);
    for (i, a) in keys.iter().enumerate() {
        c.case(src.counit_basis(a) == dst.counit(&images[i]), || json!({"key": wkey(a)}));
    }
    report.push(c.finish());
    let mut c = Check::new(&format!("{}-antipode", name), &ids, false);
    for (i, a) in keys.iter().enumerate() {
        c.case(map(&src.antipode_basis(a)) == dst.antipode(&images[i]), || json!({"key": wkey(a)}));
    }
    report.push(c.finish());
    report
}

/// The canonical map `A → Â̂`, `a ↦ (ω ↦ ω(a))`, on the basis of A.
pub fn double_dual_matching(first: &DualData, second: &DualData) -> Vec<Element> {
    let h = &first.base.base;
    let keys = h.finite_basis().expect("finite");
    keys.iter()
        .map(|a| {
            // values of ev_a on the basis ω_m of Â: ω_m(a) = φ(a a_m)
            let values: Vec<Scalar> = first.keys.iter().map(|m| first.base.phi.eval(&h.mul_basis(a, m))).collect();
            second.functional_coords(&values)
        })
        .collect()
}

/// Full double-dual certificate for a finite instance.
pub fn double_dual_report(h: &RegularMha) -> Result<Report> {
    let first = finite_dual(h)?;
    let second = finite_dual(&first.hopf)?;
    let images = double_dual_matching(&first, &second);
    Ok(hopf_isomorphism_report(h, &second.hopf, &images, "double-dual"))
}

/// Certificates for `(K(G) or CG)` against the dual of its partner, matching
/// `δ_p` with the functional `λ_q ↦ [p=q]` (and symmetrically).
pub fn group_dual_matching(dual: &DualData, target: &RegularMha, pairing: impl Fn(&Key, &Key) -> Scalar) -> Vec<Element> {
    let tkeys = target.finite_basis().expect("finite");
    tkeys
        .iter()
        .map(|t| {
            let values: Vec<Scalar> = dual.keys.iter().map(|a| pairing(a, t)).collect();
            dual.functional_coords(&values)
        })
        .collect()
}

pub fn is_idempotent(h: &RegularMha, e: &Element) -> bool {
    &h.mul(e, e) == e
}

pub fn type_result(h: &RegularMha) -> CheckResult {
    let ids = vec![h.id()];
    match classify_type(h) {
        Ok(t) => verdict("classify-type", &ids, true, false, json!({"type": t})),
        Err(e @ Error::Undecidable(_)) => {
            CheckResult::skipped("classify-type", &ids, &format!("{}", e)).with_detail(json!({"type": "undecidable"}))
        }
        Err(e) => verdict("classify-type", &ids, false, false, json!({"error": e.to_string()})),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify::verify_mha_axioms;
    use crate::instances::hopf_instance;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn k_z2_integral_is_the_sum() {
        let h = hopf_instance("K(Z2)").unwrap();
        let g = AlgebraicQuantumGroup::new(&h).unwrap();
        assert_eq!(g.phi_values.as_deref(), Some(&[s(1), s(1)][..]));
        assert!(verify_integral(&g, &h.finite_basis().unwrap()).all_passed());
    }

    #[test]
    fn c_z2_integral_is_coefficient_of_identity() {
        let h = hopf_instance("C[Z2]").unwrap();
        let g = AlgebraicQuantumGroup::new(&h).unwrap();
        assert_eq!(g.phi_values.as_deref(), Some(&[s(1), s(0)][..]));
    }

    #[test]
    fn evaluation_at_zero_is_not_invariant() {
        let h = hopf_instance("K(Z2)").unwrap();
        let phi = Functional::from_values(&[Key::Int(0)], &[s(1)]);
        let g = AlgebraicQuantumGroup::with_phi(&h, phi);
        let r = verify_integral(&g, &h.finite_basis().unwrap());
        assert_eq!(r.get("integral-left-invariance").unwrap().status, crate::report::Status::Fail);
    }

    #[test]
    fn cointegrals() {
        let cz2 = hopf_instance("C[Z2]").unwrap();
        let e = find_cointegral(&cz2, Side::Left).unwrap().unwrap();
        assert_eq!(e, &cz2.basis(&Key::Int(0)) + &cz2.basis(&Key::Int(1)));
        let kz2 = hopf_instance("K(Z2)").unwrap();
        assert_eq!(find_cointegral(&kz2, Side::Left).unwrap().unwrap(), kz2.basis(&Key::Int(0)));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_type(&hopf_instance("K(Z)").unwrap()).unwrap(), TypeClass::Discrete);
        assert_eq!(classify_type(&hopf_instance("C[Z2]").unwrap()).unwrap(), TypeClass::Both);
        assert!(matches!(classify_type(&hopf_instance("C[Z]").unwrap()), Err(Error::Undecidable(_))));
    }

    #[test]
    fn sigma_is_identity_on_group_instances() {
        for id in ["C[Z2]", "K(Z2)", "C[S3]"] {
            let h = hopf_instance(id).unwrap();
            let g = AlgebraicQuantumGroup::new(&h).unwrap().with_sigma().unwrap();
            for (k, img) in h.finite_basis().unwrap().iter().zip(g.sigma.unwrap()) {
                assert_eq!(img, h.basis(k));
            }
        }
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        let cz2 = hopf_instance("C[Z2]").unwrap();
        let d = finite_dual(&cz2).unwrap();
        assert!(verify_mha_axioms(&d.hopf, &d.keys).all_passed());
        let kz2 = hopf_instance("K(Z2)").unwrap();
        // δ_p ↦ the functional λ_q ↦ [p=q]
        let images = group_dual_matching(&d, &kz2, |a, t| if a == t { s(1) } else { s(0) });
        let r = hopf_isomorphism_report(&kz2, &d.hopf, &images, "match");
        assert!(r.all_passed(), "{}", r.to_json_lines());
    }

    #[test]
    fn double_dual_s3() {
        let r = double_dual_report(&hopf_instance("C[S3]").unwrap()).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
    }
}
