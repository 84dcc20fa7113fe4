//! Unital modules over a regular multiplier Hopf algebra, module algebras,
//! the adjoint and inner actions, and the extension of actions to multipliers.

pub mod cocycle;
pub mod fixed;
pub mod json;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{self, AlgebraHandle, ScalarAlgebra};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::local_units::{find_local_units, Sided};
use crate::hopf::{Cover, RegularMha};
use crate::instances::{function_algebra, group_algebra, GroupSpec};
use crate::linalg;
use crate::multiplier::Multiplier;
use crate::report::{wel, wkey, Check, CheckResult, Report};

pub use cocycle::{verify_cocycle, CocycleData};
pub use fixed::{fixed_points, linear_map_action, linear_map_fixed_points, FixedPoints, Where};

pub type ActFn = Arc<dyn Fn(&Key, &Key) -> Element + Send + Sync>;
pub type WindowFn = Arc<dyn Fn(i64) -> Vec<Key> + Send + Sync>;
/// `γ` on basis keys of the acting algebra.
pub type GammaFn = Arc<dyn Fn(&Key) -> Multiplier + Send + Sync>;

/// Radius used for countable samples when the caller gives none.
pub const DEFAULT_RADIUS: i64 = 3;

/// A left module over `algebra` on a space with a distinguished basis.
#[derive(Clone)]
pub struct ModuleSpec {
    pub name: String,
    pub algebra: RegularMha,
    pub space: Domain,
    basis: Option<Vec<Key>>,
    window: WindowFn,
    act: ActFn,
}

impl std::fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleSpec({} over {} on {})", self.name, self.algebra.id(), self.space)
    }
}

/// Stacks several elements into one vector (component `i` keyed by `(i, k)`).
pub(crate) fn stacked(parts: &[Element]) -> Element {
    let stack = Domain::new("stack");
    let mut out = Element::zero(&stack);
    for (i, p) in parts.iter().enumerate() {
        for (k, c) in p.terms() {
            out.add_term(Key::pair(&Key::Int(i as i64), k), c);
        }
    }
    out
}

/// Searches `Σ cᵦ·b` over enlarging windows of `h` with `gen(b) = target`
/// (both sides stacked); the identity is tried first.
pub(crate) fn solve_in_algebra<G>(h: &RegularMha, radius0: i64, target: &Element, gen: G) -> Result<Element>
where
    G: Fn(&Key) -> Element + Sync,
{
    if let Some(one) = h.identity() {
        if &one.map_linear_sum(|k| gen(k)) == target {
            return Ok(one);
        }
    }
    let mut last = 0;
    for round in 0..5 {
        let sample = h.sample_basis(radius0 + (1i64 << round) - 1);
        if sample.len() == last {
            break;
        }
        last = sample.len();
        let gens: Vec<Element> = sample.par_iter().map(&gen).collect();
        match linalg::linear_solve(&gens, target) {
            Ok(c) => return Ok(Element::from_terms(h.domain(), sample.into_iter().zip(c))),
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotFound(format!("local unit in {}", h.id())))
}

/// Linear extension helper: `Σ cₖ·f(k)` for an element with an arbitrary target domain.
trait SumMap {
    fn map_linear_sum<F: Fn(&Key) -> Element>(&self, f: F) -> Element;
}

impl SumMap for Element {
    fn map_linear_sum<F: Fn(&Key) -> Element>(&self, f: F) -> Element {
        let mut out: Option<Element> = None;
        for (k, c) in self.terms() {
            let img = f(k);
            match &mut out {
                None => out = Some(img.scale(c)),
                Some(o) => o.add_scaled(&img, c),
            }
        }
        out.unwrap_or_else(|| Element::zero(&Domain::new("stack")))
    }
}

fn max_magnitude(items: &[Element]) -> i64 {
    items.iter().flat_map(|e| e.support().map(Key::magnitude).collect::<Vec<_>>()).max().unwrap_or(0)
}

impl ModuleSpec {
    pub fn new<W, F>(name: &str, algebra: RegularMha, space: &Domain, basis: Option<Vec<Key>>, window: W, act: F) -> Self
    where
        W: Fn(i64) -> Vec<Key> + Send + Sync + 'static,
        F: Fn(&Key, &Key) -> Element + Send + Sync + 'static,
    {
        ModuleSpec {
            name: name.into(),
            algebra,
            space: space.clone(),
            basis,
            window: Arc::new(window),
            act: Arc::new(act),
        }
    }

    /// A module whose underlying space is the algebra `r`.
    pub fn on_algebra<F>(name: &str, algebra: RegularMha, r: &AlgebraHandle, act: F) -> Self
    where
        F: Fn(&Key, &Key) -> Element + Send + Sync + 'static,
    {
        let r2 = r.clone();
        ModuleSpec::new(name, algebra, r.domain(), r.finite_basis(), move |n| r2.sample_basis(n), act)
    }

    pub fn act_basis(&self, a: &Key, x: &Key) -> Element {
        (self.act)(a, x)
    }

    /// Bilinear extension of the action.
    pub fn act(&self, a: &Element, x: &Element) -> Element {
        let mut out = Element::zero(&self.space);
        for (ka, ca) in a.terms() {
            for (kx, cx) in x.terms() {
                out.add_scaled(&self.act_basis(ka, kx), &(ca * cx));
            }
        }
        out
    }

    pub fn vector(&self, k: &Key) -> Element {
        Element::basis(&self.space, k.clone())
    }

    pub fn finite_basis(&self) -> Option<Vec<Key>> {
        self.basis.clone()
    }

    pub fn is_finite(&self) -> bool {
        self.basis.is_some()
    }

    /// The whole basis when finite, else the window of the given radius.
    pub fn sample(&self, radius: i64) -> Vec<Key> {
        self.basis.clone().unwrap_or_else(|| (self.window)(radius))
    }

    /// Some `e ∈ A` with `e·vᵢ = vᵢ` for every item.
    pub fn local_unit(&self, items: &[Element]) -> Result<Element> {
        if let Some(one) = self.algebra.identity() {
            return Ok(one);
        }
        let target = stacked(items);
        solve_in_algebra(&self.algebra, max_magnitude(items), &target, |b| {
            let eb = self.algebra.basis(b);
            stacked(&items.iter().map(|v| self.act(&eb, v)).collect::<Vec<_>>())
        })
    }

    /// `T1(a, e)` with `e·v = v`: `Σ a₍₁₎ ⊗ a₍₂₎e`, covering the second leg by `v`.
    pub fn cover_second(&self, a: &Element, v: &Element) -> Result<Tensor> {
        let e = self.local_unit(std::slice::from_ref(v))?;
        self.algebra.cover(Cover::T1, a, &e)
    }
}

/// An A-module algebra structure on the algebra `r`.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub module: ModuleSpec,
    pub r: AlgebraHandle,
}

impl ActionSpec {
    pub fn new(module: ModuleSpec, r: AlgebraHandle) -> Result<Self> {
        if &module.space != r.domain() {
            return Err(Error::AlgebraMismatch(format!(
                "module space {} is not the algebra {}",
                module.space,
                r.id()
            )));
        }
        Ok(ActionSpec { module, r })
    }

    pub fn name(&self) -> &str {
        &self.module.name
    }

    pub fn a(&self) -> &RegularMha {
        &self.module.algebra
    }

    pub fn ids(&self) -> Vec<String> {
        vec![self.module.name.clone(), self.a().id(), self.r.id()]
    }

    pub fn act(&self, a: &Element, x: &Element) -> Element {
        self.module.act(a, x)
    }

    pub fn act_basis(&self, a: &Key, x: &Key) -> Element {
        self.module.act_basis(a, x)
    }

    pub fn rmul(&self, x: &Element, y: &Element) -> Element {
        algebra::mul(self.r.as_ref(), x, y)
    }

    pub fn r_basis(&self, k: &Key) -> Element {
        Element::basis(self.r.domain(), k.clone())
    }

    pub fn local_unit(&self, items: &[Element]) -> Result<Element> {
        self.module.local_unit(items)
    }

    /// `(ax)x′ = Σ a₍₁₎(x·(S(a₍₂₎)x′))`, covered through `T4(a, S⁻¹e)` with `ex′ = x′`.
    pub fn left_product_rule(&self, a: &Element, x: &Element, x2: &Element) -> Result<Element> {
        let h = self.a();
        let e = self.local_unit(std::slice::from_ref(x2))?;
        let t = h.cover(Cover::T4, a, &h.antipode_inv(&e))?;
        let mut out = Element::zero(self.r.domain());
        for (ks, c) in t.terms() {
            let inner = self.act(&h.antipode_basis(&ks[1]), x2);
            out.add_scaled(&self.act(&h.basis(&ks[0]), &self.rmul(x, &inner)), c);
        }
        Ok(out)
    }

    /// `x(ax′) = Σ a₍₂₎((S⁻¹(a₍₁₎)x)x′)`, covered through `T2(S(e), a)` with `ex = x`.
    pub fn right_product_rule(&self, a: &Element, x: &Element, x2: &Element) -> Result<Element> {
        let h = self.a();
        let e = self.local_unit(std::slice::from_ref(x))?;
        let t = h.cover(Cover::T2, &h.antipode(&e), a)?;
        let mut out = Element::zero(self.r.domain());
        for (ks, c) in t.terms() {
            let inner = self.act(&h.antipode_inv_basis(&ks[0]), x);
            out.add_scaled(&self.act(&h.basis(&ks[1]), &self.rmul(&inner, x2)), c);
        }
        Ok(out)
    }

    /// `Σ (a₍₁₎x)(a₍₂₎y)`.
    pub fn diagonal_product(&self, a: &Element, x: &Element, y: &Element) -> Result<Element> {
        let t = self.module.cover_second(a, y)?;
        let h = self.a();
        let mut out = Element::zero(self.r.domain());
        for (ks, c) in t.terms() {
            let px = self.act(&h.basis(&ks[0]), x);
            let qy = self.act(&h.basis(&ks[1]), y);
            out.add_scaled(&self.rmul(&px, &qy), c);
        }
        Ok(out)
    }
}

fn sample_of(h: &RegularMha, radius: i64) -> Vec<Key> {
    h.finite_basis().unwrap_or_else(|| h.sample_basis(radius))
}

/// Associativity, unitality witnesses and non-degeneracy of a module.
pub fn verify_module(m: &ModuleSpec, sample_a: &[Key], sample_v: &[Key]) -> Report {
    let ids = vec![m.name.clone(), m.algebra.id()];
    let sampled = !m.algebra.is_finite() || !m.is_finite();
    let h = &m.algebra;
    let mut report = Report::new();

    let n = sample_a.len();
    let cases: Vec<Option<serde_json::Value>> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (a, b) = (&sample_a[ij / n], &sample_a[ij % n]);
            let ab = h.mul_basis(a, b);
            for x in sample_v {
                let v = m.vector(x);
                let lhs = m.act(&ab, &v);
                let rhs = m.act(&h.basis(a), &m.act_basis(b, x));
                if lhs != rhs {
                    return Some(json!({"triple": [wkey(a), wkey(b), wkey(x)], "lhs": wel(&lhs), "rhs": wel(&rhs)}));
                }
            }
            None
        })
        .collect();
    let mut c = Check::new("module-associativity", &ids, sampled);
    for w in cases {
        let ok = w.is_none();
        c.case(ok, || w.unwrap());
    }
    report.push(c.finish());

    let mut c = Check::new("module-unital", &ids, sampled);
    for x in sample_v {
        let v = m.vector(x);
        match m.local_unit(std::slice::from_ref(&v)) {
            Ok(e) => {
                let ok = m.act(&e, &v) == v;
                c.case(ok, || json!({"vector": wkey(x), "unit": wel(&e)}));
            }
            Err(err) => {
                c.case(false, || json!({"vector": wkey(x), "error": err.to_string()}));
            }
        }
    }
    report.push(c.finish());

    // ax = 0 for all a forces x = 0: the stacked map x ↦ (a·x)ₐ is injective.
    let images: Vec<Element> = sample_v
        .iter()
        .map(|x| stacked(&sample_a.iter().map(|a| m.act_basis(a, x)).collect::<Vec<_>>()))
        .collect();
    let rank = linalg::span_rank(&images);
    let mut c = Check::new("module-nondegenerate", &ids, sampled);
    c.case(rank == sample_v.len(), || json!({"rank": rank, "dim": sample_v.len()}));
    c.detail(json!({"rank": rank}));
    report.push(c.finish());
    report
}

fn triple_cases<F>(name: &str, ids: &[String], sampled: bool, sa: &[Key], sr: &[Key], f: F) -> CheckResult
where
    F: Fn(&Key, &Key, &Key) -> Option<serde_json::Value> + Sync,
{
    let (na, nr) = (sa.len(), sr.len());
    let out: Vec<Option<serde_json::Value>> = (0..na * nr * nr)
        .into_par_iter()
        .map(|i| f(&sa[i / (nr * nr)], &sr[(i / nr) % nr], &sr[i % nr]))
        .collect();
    let mut c = Check::new(name, ids, sampled);
    for w in out {
        let ok = w.is_none();
        c.case(ok, || w.unwrap());
    }
    c.finish()
}

fn err_witness(e: Error) -> Option<serde_json::Value> {
    Some(json!({"error": e.to_string()}))
}

/// Module checks plus the module-algebra law, both product rules, and the
/// statement that multiplication `R⊗R → R` is a module map.
pub fn verify_module_algebra(s: &ActionSpec, sample_a: &[Key], sample_r: &[Key]) -> Report {
    let ids = s.ids();
    let sampled = !s.a().is_finite() || s.r.finite_basis().is_none();
    let mut report = verify_module(&s.module, sample_a, sample_r);
    let h = s.a();

    report.push(triple_cases("module-algebra-law", &ids, sampled, sample_a, sample_r, |a, x, y| {
        let (ea, ex, ey) = (h.basis(a), s.r_basis(x), s.r_basis(y));
        let lhs = s.act(&ea, &s.rmul(&ex, &ey));
        match s.diagonal_product(&ea, &ex, &ey) {
            Ok(rhs) if rhs == lhs => None,
            Ok(rhs) => Some(json!({"triple": [wkey(a), wkey(x), wkey(y)], "lhs": wel(&lhs), "rhs": wel(&rhs)})),
            Err(e) => err_witness(e),
        }
    }));
    report.push(triple_cases("left-product-rule", &ids, sampled, sample_a, sample_r, |a, x, y| {
        let (ea, ex, ey) = (h.basis(a), s.r_basis(x), s.r_basis(y));
        let lhs = s.rmul(&s.act(&ea, &ex), &ey);
        match s.left_product_rule(&ea, &ex, &ey) {
            Ok(rhs) if rhs == lhs => None,
            Ok(rhs) => Some(json!({"triple": [wkey(a), wkey(x), wkey(y)], "lhs": wel(&lhs), "rhs": wel(&rhs)})),
            Err(e) => err_witness(e),
        }
    }));
    report.push(triple_cases("right-product-rule", &ids, sampled, sample_a, sample_r, |a, x, y| {
        let (ea, ex, ey) = (h.basis(a), s.r_basis(x), s.r_basis(y));
        let lhs = s.rmul(&ex, &s.act(&ea, &ey));
        match s.right_product_rule(&ea, &ex, &ey) {
            Ok(rhs) if rhs == lhs => None,
            Ok(rhs) => Some(json!({"triple": [wkey(a), wkey(x), wkey(y)], "lhs": wel(&lhs), "rhs": wel(&rhs)})),
            Err(e) => err_witness(e),
        }
    }));

    let tm = tensor_module(&s.module, &s.module);
    let r = s.r.clone();
    report.push(triple_cases("multiplication-module-map", &ids, sampled, sample_a, sample_r, |a, x, y| {
        let xy = Element::basis(&tm.space, Key::pair(x, y));
        let lhs = s.act(&h.basis(a), &algebra::mul(r.as_ref(), &s.r_basis(x), &s.r_basis(y)));
        let acted = tm.act(&h.basis(a), &xy);
        let mut rhs = Element::zero(r.domain());
        for (k, c) in acted.terms() {
            rhs.add_scaled(&r.mul_basis(k.at(0), k.at(1)), c);
        }
        (lhs != rhs).then(|| json!({"triple": [wkey(a), wkey(x), wkey(y)]}))
    }));
    report
}

/// Default samples for an action: full bases, or windows of `radius`.
pub fn action_samples(s: &ActionSpec, radius: i64) -> (Vec<Key>, Vec<Key>) {
    (sample_of(s.a(), radius), s.module.sample(radius))
}

/// `ℂG` acting on `K(G)` by `λ_p ▷ δ_q = δ_{pq}`.
pub fn translation(g: GroupSpec) -> ActionSpec {
    let a = group_algebra(g.clone());
    let r = function_algebra(g.clone()).algebra();
    let d = r.domain().clone();
    let m = ModuleSpec::on_algebra("translation", a, &r, move |p, q| Element::basis(&d, g.mul(p, q)));
    ActionSpec::new(m, r).expect("same domain")
}

/// `K(G)` acting on `ℂG` by `δ_p ▷ λ_q = [p=q] λ_q`.
pub fn grading(g: GroupSpec) -> ActionSpec {
    let a = function_algebra(g.clone());
    let r = group_algebra(g).algebra();
    let d = r.domain().clone();
    let m = ModuleSpec::on_algebra("grading", a, &r, move |p, q| {
        if p == q {
            Element::basis(&d, q.clone())
        } else {
            Element::zero(&d)
        }
    });
    ActionSpec::new(m, r).expect("same domain")
}

/// `a ▷ x = ε(a)x` on any algebra `r`.
pub fn trivial(h: &RegularMha, r: &AlgebraHandle) -> ActionSpec {
    let (h2, d) = (h.clone(), r.domain().clone());
    let m = ModuleSpec::on_algebra("trivial", h.clone(), r, move |a, x| {
        Element::basis(&d, x.clone()).scale(&h2.counit_basis(a))
    });
    ActionSpec::new(m, r.clone()).expect("same domain")
}

/// `a ▷ x = Σ a₍₁₎ x S(a₍₂₎)`, covered through `T1(a, S⁻¹f)` with `xf = x`.
pub fn adjoint(h: &RegularMha) -> ActionSpec {
    let h2 = h.clone();
    let r = h.algebra();
    let m = ModuleSpec::on_algebra("adjoint", h.clone(), &r, move |a, x| {
        let ex = h2.basis(x);
        let f = match h2.identity() {
            Some(one) => one,
            None => find_local_units(&h2, std::slice::from_ref(&ex), Sided::Right).expect("local unit"),
        };
        let t = h2.cover_unchecked(Cover::T1, &h2.basis(a), &h2.antipode_inv(&f));
        let mut out = Element::zero(h2.domain());
        for (ks, c) in t.terms() {
            let left = h2.mul(&h2.basis(&ks[0]), &ex);
            out.add_scaled(&h2.mul(&left, &h2.antipode_basis(&ks[1])), c);
        }
        out
    });
    ActionSpec::new(m, r).expect("same domain")
}

/// `γ` extended linearly to elements of A.
pub fn gamma_of(gamma: &GammaFn, domain: &Domain, a: &Element) -> Multiplier {
    let mut out = Multiplier::zero(domain);
    for (k, c) in a.terms() {
        out = out.add(&gamma(k).scale(c));
    }
    out
}

/// `γ = ι` for an algebra acting on itself.
pub fn gamma_identity(h: &RegularMha) -> GammaFn {
    let h2 = h.clone();
    Arc::new(move |k| h2.as_multiplier(&h2.basis(k)))
}

/// `γ(a) = ε(a)·1`.
pub fn gamma_counit(h: &RegularMha, r: &AlgebraHandle) -> GammaFn {
    let (h2, d) = (h.clone(), r.domain().clone());
    Arc::new(move |k| Multiplier::identity(&d).scale(&h2.counit_basis(k)))
}

/// `γ(a)` given by elements of a unital `r`.
pub fn gamma_from_elements(r: &AlgebraHandle, table: HashMap<Key, Element>) -> GammaFn {
    let r2 = r.clone();
    Arc::new(move |k| match table.get(k) {
        Some(e) => Multiplier::from_element(&r2, e),
        None => Multiplier::zero(r2.domain()),
    })
}

/// Some `f ∈ A` with `x·γ(f) = x`.
pub(crate) fn gamma_right_unit(h: &RegularMha, gamma: &GammaFn, x: &Element) -> Result<Element> {
    solve_in_algebra(h, x.support().map(Key::magnitude).max().unwrap_or(0), &stacked(std::slice::from_ref(x)), |b| {
        stacked(&[gamma(b).right(x)])
    })
}

/// Some `e ∈ A` with `γ(e)·x = x`.
fn gamma_left_unit(h: &RegularMha, gamma: &GammaFn, x: &Element) -> Result<Element> {
    solve_in_algebra(h, x.support().map(Key::magnitude).max().unwrap_or(0), &stacked(std::slice::from_ref(x)), |b| {
        stacked(&[gamma(b).left(x)])
    })
}

/// `Σ γ(a₍₁₎) x γ(S(a₍₂₎))`.
pub fn inner_act(h: &RegularMha, gamma: &GammaFn, a: &Element, x: &Element) -> Result<Element> {
    let f = gamma_right_unit(h, gamma, x)?;
    let t = h.cover(Cover::T1, a, &h.antipode_inv(&f))?;
    let mut out = Element::zero(x.domain());
    for (ks, c) in t.terms() {
        let y = gamma(&ks[0]).left(x);
        let sq = gamma_of(gamma, x.domain(), &h.antipode_basis(&ks[1]));
        out.add_scaled(&sq.right(&y), c);
    }
    Ok(out)
}

/// Checks that `γ` is multiplicative and unital (`γ(A)R = Rγ(A) = R`) on samples.
pub fn check_gamma(h: &RegularMha, r: &AlgebraHandle, gamma: &GammaFn, sample_a: &[Key], sample_r: &[Key]) -> Result<()> {
    for a in sample_a {
        for b in sample_a {
            let lhs = gamma_of(gamma, r.domain(), &h.mul_basis(a, b));
            let rhs = gamma(a).product(&gamma(b));
            if !lhs.agrees_on(&rhs, r.as_ref(), sample_r) {
                return Err(Error::NotUnitalHomomorphism(format!("γ({}·{}) ≠ γ({})γ({})", a, b, a, b)));
            }
        }
    }
    for x in sample_r {
        let ex = Element::basis(r.domain(), x.clone());
        let ok = gamma_left_unit(h, gamma, &ex).is_ok() && gamma_right_unit(h, gamma, &ex).is_ok();
        if !ok {
            return Err(Error::NotUnitalHomomorphism(format!("{} is not in γ(A)R ∩ Rγ(A)", x)));
        }
    }
    Ok(())
}

/// The inner action `ax = Σ γ(a₍₁₎) x γ(S(a₍₂₎))`.
pub fn inner_action_from(h: &RegularMha, r: &AlgebraHandle, gamma: GammaFn) -> Result<ActionSpec> {
    let sa = sample_of(h, DEFAULT_RADIUS);
    let sr = r.finite_basis().unwrap_or_else(|| r.sample_basis(DEFAULT_RADIUS));
    check_gamma(h, r, &gamma, &sa, &sr)?;
    let (h2, d) = (h.clone(), r.domain().clone());
    let m = ModuleSpec::on_algebra("inner", h.clone(), r, move |a, x| {
        inner_act(&h2, &gamma, &h2.basis(a), &Element::basis(&d, x.clone())).expect("γ is unital")
    });
    ActionSpec::new(m, r.clone())
}

/// Whether `s` coincides with the inner action of `γ` on all sampled basis pairs.
pub fn is_inner_witness(s: &ActionSpec, gamma: &GammaFn) -> bool {
    let (sa, sr) = action_samples(s, DEFAULT_RADIUS);
    sa.par_iter().all(|a| {
        sr.iter().all(|x| {
            let ex = s.r_basis(x);
            match inner_act(s.a(), gamma, &s.a().basis(a), &ex) {
                Ok(v) => v == s.act_basis(a, x),
                Err(_) => false,
            }
        })
    })
}

/// An action given by an explicit table on basis pairs (missing entries act as zero).
pub fn table_action(name: &str, h: &RegularMha, r: &AlgebraHandle, table: HashMap<(Key, Key), Element>) -> ActionSpec {
    let d = r.domain().clone();
    let m = ModuleSpec::on_algebra(name, h.clone(), r, move |a, x| {
        table.get(&(a.clone(), x.clone())).cloned().unwrap_or_else(|| Element::zero(&d))
    });
    ActionSpec::new(m, r.clone()).expect("same domain")
}

/// `V⊗W` with the diagonal action `a(v⊗w) = Δ(a)(v⊗w)`, covered by a local unit of `w`.
pub fn tensor_module(m1: &ModuleSpec, m2: &ModuleSpec) -> ModuleSpec {
    let space = Domain::new(&format!("{}⊗{}", m1.space, m2.space));
    let basis = match (m1.finite_basis(), m2.finite_basis()) {
        (Some(b1), Some(b2)) => Some(b1.iter().flat_map(|x| b2.iter().map(move |y| Key::pair(x, y))).collect()),
        _ => None,
    };
    let (w1, w2) = (m1.clone(), m2.clone());
    let (a1, a2) = (m1.clone(), m2.clone());
    let sp = space.clone();
    ModuleSpec::new(
        &format!("{}⊗{}", m1.name, m2.name),
        m1.algebra.clone(),
        &space,
        basis,
        move |n| {
            let (s1, s2) = (w1.sample(n), w2.sample(n));
            s1.iter().flat_map(|x| s2.iter().map(move |y| Key::pair(x, y))).collect()
        },
        move |a, xy| {
            let (x, y) = (xy.at(0), xy.at(1));
            let h = &a1.algebra;
            let t = a2.cover_second(&h.basis(a), &a2.vector(y)).expect("unital module");
            let mut out = Element::zero(&sp);
            for (ks, c) in t.terms() {
                let px = a1.act_basis(&ks[0], x);
                let qy = a2.act_basis(&ks[1], y);
                for (kx, cx) in px.terms() {
                    for (ky, cy) in qy.terms() {
                        out.add_term(Key::pair(kx, ky), &(&(c * cx) * cy));
                    }
                }
            }
            out
        },
    )
}

/// ℂ with `a·λ = ε(a)λ`.
pub fn unit_module(h: &RegularMha) -> ModuleSpec {
    let c: AlgebraHandle = Arc::new(ScalarAlgebra::new());
    let (h2, d) = (h.clone(), c.domain().clone());
    ModuleSpec::on_algebra("unit", h.clone(), &c, move |a, x| Element::basis(&d, x.clone()).scale(&h2.counit_basis(a)))
}

/// `m·x = (m·e)x` for a multiplier `m` of A, with `ex = x`.
pub fn extend_module_to_ma(m: &ModuleSpec, mult: &Multiplier, x: &Element) -> Result<Element> {
    let e = m.local_unit(std::slice::from_ref(x))?;
    Ok(m.act(&mult.left(&e), x))
}

/// `am ∈ M(R)`: `(am)x = Σ a₍₁₎(m(S(a₍₂₎)x))` and `x(am) = Σ a₍₂₎((S⁻¹(a₍₁₎)x)m)`.
pub fn extend_action_to_multipliers(s: &ActionSpec, a: &Element, m: &Multiplier) -> Multiplier {
    let (s1, s2) = (s.clone(), s.clone());
    let (a1, a2) = (a.clone(), a.clone());
    let (m1, m2) = (m.clone(), m.clone());
    Multiplier::new(
        s.r.domain(),
        move |x: &Element| {
            let h = s1.a();
            let mut out = Element::zero(s1.r.domain());
            if x.is_zero() {
                return out;
            }
            let e = s1.local_unit(std::slice::from_ref(x)).expect("unital action");
            let t = h.cover_unchecked(Cover::T4, &a1, &h.antipode_inv(&e));
            for (ks, c) in t.terms() {
                let inner = m1.left(&s1.act(&h.antipode_basis(&ks[1]), x));
                out.add_scaled(&s1.act(&h.basis(&ks[0]), &inner), c);
            }
            out
        },
        move |x: &Element| {
            let h = s2.a();
            let mut out = Element::zero(s2.r.domain());
            if x.is_zero() {
                return out;
            }
            let e = s2.local_unit(std::slice::from_ref(x)).expect("unital action");
            let t = h.cover_unchecked(Cover::T2, &h.antipode(&e), &a2);
            for (ks, c) in t.terms() {
                let inner = m2.right(&s2.act(&h.antipode_inv_basis(&ks[0]), x));
                out.add_scaled(&s2.act(&h.basis(&ks[1]), &inner), c);
            }
            out
        },
    )
}

/// Checks on the multiplier extension: `a·1 = ε(a)1`, `(aa′)m = a(a′m)` and
/// agreement with the original action on elements of a unital R.
pub fn verify_multiplier_extension(s: &ActionSpec, sample_a: &[Key], sample_r: &[Key]) -> Report {
    let ids = s.ids();
    let sampled = !s.a().is_finite() || s.r.finite_basis().is_none();
    let h = s.a();
    let r = s.r.as_ref();
    let one = Multiplier::identity(s.r.domain());
    let mut report = Report::new();

    let mut c = Check::new("multiplier-extension-unit", &ids, sampled);
    for a in sample_a {
        let am = extend_action_to_multipliers(s, &h.basis(a), &one);
        let ok = am.agrees_on(&one.scale(&h.counit_basis(a)), r, sample_r);
        c.case(ok, || json!({"a": wkey(a)}));
    }
    report.push(c.finish());

    let probes: Vec<Multiplier> = match r.identity() {
        Some(_) => sample_r.iter().map(|x| Multiplier::from_element(&s.r, &s.r_basis(x))).collect(),
        None => vec![one.clone()],
    };
    let mut c = Check::new("multiplier-extension-module-law", &ids, sampled);
    for a in sample_a {
        for b in sample_a {
            for m in &probes {
                let lhs = extend_action_to_multipliers(s, &h.mul_basis(a, b), m);
                let inner = extend_action_to_multipliers(s, &h.basis(b), m);
                let rhs = extend_action_to_multipliers(s, &h.basis(a), &inner);
                let ok = lhs.agrees_on(&rhs, r, sample_r);
                c.case(ok, || json!({"pair": [wkey(a), wkey(b)]}));
            }
        }
    }
    report.push(c.finish());

    if r.identity().is_some() {
        let mut c = Check::new("multiplier-extension-restricts", &ids, sampled);
        for a in sample_a {
            for x in sample_r {
                let m = Multiplier::from_element(&s.r, &s.r_basis(x));
                let am = extend_action_to_multipliers(s, &h.basis(a), &m);
                let ok = am.as_element(r) == Some(s.act_basis(a, x));
                c.case(ok, || json!({"pair": [wkey(a), wkey(x)]}));
            }
        }
        report.push(c.finish());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> GroupSpec {
        GroupSpec::cyclic(2)
    }

    fn check(s: &ActionSpec) -> Report {
        let (sa, sr) = action_samples(s, 4);
        verify_module_algebra(s, &sa, &sr)
    }

    #[test]
    fn translation_and_grading_are_module_algebras() {
        for s in [translation(z2()), grading(z2()), translation(GroupSpec::s3()), grading(GroupSpec::s3())] {
            let r = check(&s);
            assert!(r.all_passed(), "{}", r.to_json_lines());
        }
    }

    #[test]
    fn integer_actions_are_sampled() {
        let s = grading(GroupSpec::integers());
        let r = check(&s);
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert!(r.entries.iter().all(|e| e.status == crate::report::Status::SampledPass));
    }

    #[test]
    fn corrupted_action_fails_associativity() {
        let h = group_algebra(z2());
        let r = h.algebra();
        let (h2, d) = (h.clone(), r.domain().clone());
        let m = ModuleSpec::on_algebra("corrupted", h.clone(), &r, move |a, x| {
            let v = Element::basis(&d, x.clone());
            &v.scale(&h2.counit_basis(a)) + &v
        });
        let s = ActionSpec::new(m, r).unwrap();
        let rep = check(&s);
        assert!(!rep.get("module-associativity").unwrap().passed());
    }

    #[test]
    fn adjoint_actions() {
        let s3 = group_algebra(GroupSpec::s3());
        let ad = adjoint(&s3);
        assert!(check(&ad).all_passed());
        let g = GroupSpec::s3();
        for p in g.elements().unwrap() {
            for x in g.elements().unwrap() {
                let expect = s3.basis(&g.mul(&g.mul(p, x), &g.inv(p)));
                assert_eq!(ad.act_basis(p, x), expect);
            }
        }
        let cz2 = group_algebra(z2());
        let ad2 = adjoint(&cz2);
        for p in [0, 1] {
            for x in [0, 1] {
                assert_eq!(ad2.act_basis(&Key::Int(p), &Key::Int(x)), cz2.basis(&Key::Int(x)));
            }
        }
        let kz2 = function_algebra(z2());
        let ad3 = adjoint(&kz2);
        assert!(check(&ad3).all_passed());
        let triv = trivial(&kz2, &kz2.algebra());
        for p in [0, 1] {
            for x in [0, 1] {
                assert_eq!(ad3.act_basis(&Key::Int(p), &Key::Int(x)), triv.act_basis(&Key::Int(p), &Key::Int(x)));
            }
        }
    }

    #[test]
    fn inner_actions() {
        let s3 = group_algebra(GroupSpec::s3());
        let ad = adjoint(&s3);
        assert!(is_inner_witness(&ad, &gamma_identity(&s3)));
        let inner = inner_action_from(&s3, &s3.algebra(), gamma_identity(&s3)).unwrap();
        assert!(check(&inner).all_passed());
        let t = translation(z2());
        assert!(!is_inner_witness(&t, &gamma_counit(t.a(), &t.r)));
        let triv = trivial(&s3, &s3.algebra());
        assert!(is_inner_witness(&triv, &gamma_counit(&s3, &s3.algebra())));
    }

    #[test]
    fn non_homomorphism_gamma_is_rejected() {
        let s3 = group_algebra(GroupSpec::s3());
        let r = s3.algebra();
        let bad: GammaFn = {
            let r2 = r.clone();
            Arc::new(move |_| Multiplier::from_element(&r2, &Element::basis(r2.domain(), Key::Int(2))))
        };
        let err = inner_action_from(&s3, &r, bad).unwrap_err();
        assert_eq!(err.kind(), "NotUnitalHomomorphism");
    }

    #[test]
    fn tensor_and_unit_modules() {
        let t = translation(z2());
        let tm = tensor_module(&t.module, &t.module);
        let v = Element::basis(&tm.space, Key::pair(&Key::Int(0), &Key::Int(0)));
        let l1 = t.a().basis(&Key::Int(1));
        assert_eq!(tm.act(&l1, &v), Element::basis(&tm.space, Key::pair(&Key::Int(1), &Key::Int(1))));
        let sa = t.a().finite_basis().unwrap();
        assert!(verify_module(&tm, &sa, &tm.finite_basis().unwrap()).all_passed());
        let u = unit_module(t.a());
        let one = u.vector(&Key::Int(0));
        assert_eq!(u.act(&l1, &one), one);
        let id = Multiplier::identity(t.a().domain());
        let x = t.r_basis(&Key::Int(1));
        assert_eq!(extend_module_to_ma(&t.module, &id, &x).unwrap(), x);
    }

    #[test]
    fn multiplier_extension() {
        for s in [translation(z2()), adjoint(&group_algebra(GroupSpec::s3())), grading(GroupSpec::integers())] {
            let (sa, sr) = action_samples(&s, 2);
            let r = verify_multiplier_extension(&s, &sa, &sr);
            assert!(r.all_passed(), "{}", r.to_json_lines());
        }
        // trivial action: am = ε(a)m
        let h = group_algebra(z2());
        let r = function_algebra(z2()).algebra();
        let s = trivial(&h, &r);
        let m = Multiplier::from_element(&r, &Element::basis(r.domain(), Key::Int(1)));
        let am = extend_action_to_multipliers(&s, &h.basis(&Key::Int(1)), &m);
        assert!(am.agrees_on(&m, r.as_ref(), &r.finite_basis().unwrap()));
    }
}
