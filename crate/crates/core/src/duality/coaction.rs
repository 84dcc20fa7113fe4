//! Coactions `Γ : R → M(R⊗B)` for unital B, the action of A they induce
//! through a pairing, and the condition comparing the right action of B on A
//! with the operators of `A#B`.

use std::sync::Arc;

use serde_json::json;

use crate::actions::{stacked, verify_module_algebra, ActionSpec, ModuleSpec};
use crate::algebra::AlgebraHandle;
use crate::element::{Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::RegularMha;
use crate::linalg::{self, Echelon, KeyIndex};
use crate::pairing::DualPair;
use crate::report::{verdict, wkey, Check, CheckResult, Report};

pub type CoactFn = Arc<dyn Fn(&Key) -> Tensor + Send + Sync>;

/// `Γ(x) ∈ R⊗B` on basis keys. B must have an identity.
#[derive(Clone)]
pub struct Coaction {
    pub name: String,
    pub r: AlgebraHandle,
    pub b: RegularMha,
    gamma: CoactFn,
}

impl std::fmt::Debug for Coaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coaction({} of {} on {})", self.name, self.b.id(), self.r.id())
    }
}

impl Coaction {
    pub fn new<F>(name: &str, r: &AlgebraHandle, b: &RegularMha, gamma: F) -> Result<Self>
    where
        F: Fn(&Key) -> Tensor + Send + Sync + 'static,
    {
        if r.finite_basis().is_none() {
            return Err(Error::CoactionInvalid(format!("{} is not finite-dimensional", r.id())));
        }
        if b.identity().is_none() {
            return Err(Error::CoactionInvalid(format!("{} has no identity", b.id())));
        }
        Ok(Coaction { name: name.into(), r: r.clone(), b: b.clone(), gamma: Arc::new(gamma) })
    }

    /// `Γ = Δ` on `R = B`.
    pub fn comultiplication(b: &RegularMha) -> Result<Self> {
        let b2 = b.clone();
        Coaction::new("comultiplication", &b.algebra(), b, move |x| b2.full_coproduct(&b2.basis(x)).expect("unital"))
    }

    /// `Γ(x) = x⊗1`.
    pub fn trivial(r: &AlgebraHandle, b: &RegularMha) -> Result<Self> {
        let one = b.identity().ok_or_else(|| Error::CoactionInvalid(format!("{} has no identity", b.id())))?;
        let d = r.domain().clone();
        Coaction::new("trivial", r, b, move |x| Tensor::product(&[&Element::basis(&d, x.clone()), &one]))
    }

    pub fn gamma(&self, x: &Key) -> Tensor {
        (self.gamma)(x)
    }

    fn gamma_elem(&self, x: &Element) -> Tensor {
        let mut out = Tensor::zero(&[self.r.domain().clone(), self.b.domain().clone()]);
        for (k, c) in x.terms() {
            out.add_scaled(&self.gamma(k), c);
        }
        out
    }

    fn product(&self, s: &Tensor, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(&[self.r.domain().clone(), self.b.domain().clone()]);
        for (k1, c1) in s.terms() {
            for (k2, c2) in t.terms() {
                let x = self.r.mul_basis(&k1[0], &k2[0]);
                let y = self.b.mul_basis(&k1[1], &k2[1]);
                out.add_scaled(&Tensor::product(&[&x, &y]), &(c1 * c2));
            }
        }
        out
    }

    fn ids(&self) -> Vec<String> {
        vec![self.name.clone(), self.r.id(), self.b.id()]
    }
}

/// Multiplicativity, coassociativity `(Γ⊗ι)Γ = (ι⊗Δ)Γ`, injectivity of `Γ`
/// and of both maps `x⊗b ↦ Γ(x)(1⊗b)`, `x⊗b ↦ (1⊗b)Γ(x)`.
pub fn verify_coaction(c: &Coaction) -> Report {
    let ids = c.ids();
    let rk = c.r.finite_basis().expect("finite");
    let bk = c.b.finite_basis().unwrap_or_else(|| c.b.sample_basis(2));
    let sampled = !c.b.is_finite();
    let mut report = Report::new();

    let mut chk = Check::new("coaction-homomorphism", &ids, false);
    for x in &rk {
        for y in &rk {
            let lhs = c.gamma_elem(&c.r.mul_basis(x, y));
            let rhs = c.product(&c.gamma(x), &c.gamma(y));
            chk.case(lhs == rhs, || json!([wkey(x), wkey(y)]));
        }
    }
    report.push(chk.finish());

    let mut chk = Check::new("coaction-coassociative", &ids, false);
    for x in &rk {
        let g = c.gamma(x);
        let legs = [c.r.domain().clone(), c.b.domain().clone(), c.b.domain().clone()];
        let (mut lhs, mut rhs) = (Tensor::zero(&legs), Tensor::zero(&legs));
        for (ks, v) in g.terms() {
            for (ks2, v2) in c.gamma(&ks[0]).terms() {
                lhs.add_term(vec![ks2[0].clone(), ks2[1].clone(), ks[1].clone()], &(v * v2));
            }
            for (ks2, v2) in c.b.full_coproduct(&c.b.basis(&ks[1])).expect("unital").terms() {
                rhs.add_term(vec![ks[0].clone(), ks2[0].clone(), ks2[1].clone()], &(v * v2));
            }
        }
        chk.case(lhs == rhs, || json!({"x": wkey(x)}));
    }
    report.push(chk.finish());

    let pack = |t: Tensor| t.pack(&crate::element::Domain::new("R⊗B"));
    let images: Vec<Element> = rk.iter().map(|x| pack(c.gamma(x))).collect();
    let rank = linalg::span_rank(&images);
    report.push(verdict("coaction-injective", &ids, rank == rk.len(), false, json!({"rank": rank, "dim": rk.len()})));

    for (name, right) in [("coaction-right-cover-injective", true), ("coaction-left-cover-injective", false)] {
        let mut covers = Vec::new();
        for x in &rk {
            for b in &bk {
                let one_b = Tensor::product(&[&c.r.identity().unwrap_or_else(|| Element::basis(c.r.domain(), x.clone())), &c.b.basis(b)]);
                let t = if c.r.identity().is_some() {
                    if right {
                        c.product(&c.gamma(x), &one_b)
                    } else {
                        c.product(&one_b, &c.gamma(x))
                    }
                } else {
                    // without an identity in R, multiply the B leg only
                    let mut out = Tensor::zero(&[c.r.domain().clone(), c.b.domain().clone()]);
                    for (ks, v) in c.gamma(x).terms() {
                        let y = if right { c.b.mul_basis(&ks[1], b) } else { c.b.mul_basis(b, &ks[1]) };
                        out.add_scaled(&Tensor::product(&[&Element::basis(c.r.domain(), ks[0].clone()), &y]), v);
                    }
                    out
                };
                covers.push(pack(t));
            }
        }
        let rank = linalg::span_rank(&covers);
        report.push(verdict(name, &ids, rank == covers.len(), sampled, json!({"rank": rank, "dim": covers.len()})));
    }
    report
}

/// `a·x = (ι⊗⟨a, ·⟩)Γ(x)`, certified as a module algebra.
pub fn coaction_to_action(c: &Coaction, p: &DualPair) -> Result<ActionSpec> {
    if c.b.id() != p.b.id() {
        return Err(Error::AlgebraMismatch(format!("coaction of {} but pair with {}", c.b.id(), p.b.id())));
    }
    let rep = verify_coaction(c);
    if !rep.all_passed() {
        let failed: Vec<&str> = rep.failures().iter().map(|f| f.check.as_str()).collect();
        return Err(Error::CoactionInvalid(failed.join(", ")));
    }
    let (c2, p2) = (c.clone(), p.clone());
    let m = ModuleSpec::on_algebra("coaction", p.a.clone(), &c.r, move |a, x| {
        c2.gamma(x).contract_leg(1, |k| p2.pair_basis(a, k)).into_element()
    });
    let action = ActionSpec::new(m, c.r.clone())?;
    let sa = p.sample_a(2);
    let sr = c.r.finite_basis().expect("finite");
    let rep = verify_module_algebra(&action, &sa, &sr);
    if !rep.all_passed() {
        let failed: Vec<&str> = rep.failures().iter().map(|f| f.check.as_str()).collect();
        return Err(Error::CoactionInvalid(format!("induced action: {}", failed.join(", "))));
    }
    Ok(action)
}

/// The action induced by `Δ` on B agrees with `a▷b` of the pair.
pub fn coaction_pairing_consistency(p: &DualPair) -> Result<CheckResult> {
    let c = Coaction::comultiplication(&p.b)?;
    let action = coaction_to_action(&c, p)?;
    let mut chk = Check::new("coaction-matches-pairing", &p.ids(), !p.is_finite());
    for a in &p.sample_a(2) {
        for b in &p.b.finite_basis().unwrap_or_default() {
            chk.case(action.act_basis(a, b) == p.a_on_b_basis(a, b), || json!([wkey(a), wkey(b)]));
        }
    }
    Ok(chk.finish())
}

/// For every basis `b`, whether `a′ ↦ a′◁b` multiplies the image `I` of
/// `A#B` in `End(A)` into itself from both sides. This reads the condition
/// as membership in the multipliers of the image algebra.
pub fn rl_condition_check(p: &DualPair) -> Result<Report> {
    let ka = p.a.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(p.a.id()))?;
    let kb = p.b.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(p.b.id()))?;
    let ids = p.ids();
    let ea = |k: &Key| p.a.basis(k);
    // an operator is the list of images of the basis of A
    let vectorize = |imgs: &[Element]| stacked(imgs);
    let image_op = |a: &Key, b: &Key| -> Vec<Element> { ka.iter().map(|v| p.a.mul(&ea(a), &p.b_on_a_basis(b, v))).collect() };
    let apply = |op: &[Element], x: &Element| -> Element {
        let mut out = Element::zero(p.a.domain());
        for (k, c) in x.terms() {
            out.add_scaled(&op[ka.iter().position(|kk| kk == k).expect("key of A")], c);
        }
        out
    };
    let gens: Vec<Vec<Element>> = ka.iter().flat_map(|a| kb.iter().map(move |b| (a, b))).map(|(a, b)| image_op(a, b)).collect();
    let gen_vecs: Vec<Element> = gens.iter().map(|g| vectorize(g)).collect();
    let mut all_keys: Vec<&Element> = gen_vecs.iter().collect();
    let right_ops: Vec<Vec<Element>> = kb.iter().map(|b| ka.iter().map(|v| p.a_ract_b_basis(v, b)).collect()).collect();
    let mut products = Vec::new();
    for (bi, t) in right_ops.iter().enumerate() {
        for g in &gens {
            // T∘L and L∘T
            let tl: Vec<Element> = g.iter().map(|x| apply(t, x)).collect();
            let lt: Vec<Element> = t.iter().map(|x| apply(g, x)).collect();
            products.push((bi, vectorize(&tl), vectorize(&lt)));
        }
    }
    for (_, x, y) in &products {
        all_keys.push(x);
        all_keys.push(y);
    }
    let idx = KeyIndex::from_elements(all_keys);
    let mut ech = Echelon::new(false);
    for g in &gen_vecs {
        ech.insert(&idx.vector(g).unwrap());
    }
    let mut chk = Check::new("rl-condition", &ids, false);
    for (bi, tl, lt) in &products {
        let ok = ech.contains(&idx.vector(tl).unwrap()) && ech.contains(&idx.vector(lt).unwrap());
        chk.case(ok, || json!({"b": wkey(&kb[*bi])}));
    }
    chk.detail(json!({"reading": "multiplier of the image algebra", "image_dim": ech.rank()}));
    let mut report = Report::new();
    report.push(chk.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{function_algebra, GroupSpec};

    #[test]
    fn comultiplication_induces_pairing_action() {
        let p = DualPair::canonical_pair(GroupSpec::cyclic(2));
        assert!(verify_coaction(&Coaction::comultiplication(&p.b).unwrap()).all_passed());
        assert!(coaction_pairing_consistency(&p).unwrap().passed());
    }

    #[test]
    fn trivial_coaction_induces_trivial_action() {
        let g = GroupSpec::cyclic(2);
        let p = DualPair::canonical_pair(g.clone());
        let r = function_algebra(g.clone()).algebra();
        let c = Coaction::trivial(&r, &p.b).unwrap();
        assert!(verify_coaction(&c).all_passed());
        let action = coaction_to_action(&c, &p).unwrap();
        for a in g.elements().unwrap() {
            for x in g.elements().unwrap() {
                assert_eq!(action.act_basis(a, x), Element::basis(r.domain(), x.clone()));
            }
        }
    }

    #[test]
    fn rl_condition_for_z2() {
        let r = rl_condition_check(&DualPair::canonical_pair(GroupSpec::cyclic(2))).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
    }
}
