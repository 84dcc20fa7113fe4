//! The smash product `R#A` of a module algebra: product, twist map `Γ`,
//! construction certificates and the embeddings `π` into `M(R#A)`.

pub mod covariant;
pub mod iso;
pub mod universal;

use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::actions::{action_samples, verify_module_algebra, ActionSpec};
use crate::algebra::{self, Algebra, AlgebraHandle, TableAlgebra};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::{Cover, RegularMha};
use crate::linalg;
use crate::multiplier::Multiplier;
use crate::report::{wkey, Check, CheckResult, Report};

pub use covariant::{
    correspondence_report, covariant_to_module, module_to_covariant, regular_covariant, shift_representation,
    verify_covariant, verify_smash_module, CovariantModule, SmashModule,
};
pub use iso::{certify_map, cocycle_isomorphism, inner_trivialization, Isomorphism};
pub use universal::{regular_matrix_pair, universal_map, RhoFn, UniversalMap};

/// How much of the construction certificates to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Every basis triple (finite) or every triple of the window (countable).
    Full,
    /// Random basis triples.
    Sampled,
    Skip,
}

impl FromStr for VerifyLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(VerifyLevel::Full),
            "sampled" => Ok(VerifyLevel::Sampled),
            "skip" | "none" => Ok(VerifyLevel::Skip),
            _ => Err(Error::malformed("verify", format!("expected full|sampled|skip, got `{}`", s))),
        }
    }
}

/// Largest dimension certified exhaustively when no level is requested.
pub const FULL_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct SmashOptions {
    /// `None` picks `Full` up to [`FULL_LIMIT`] and `Sampled` beyond.
    pub verify: Option<VerifyLevel>,
    /// Window radius for countable algebras.
    pub radius: i64,
    /// Number of random triples at the sampled level.
    pub samples: usize,
    pub seed: u64,
    /// Re-verify the action before building.
    pub check_action: bool,
}

impl Default for SmashOptions {
    fn default() -> Self {
        SmashOptions { verify: None, radius: 4, samples: 20_000, seed: 0, check_action: true }
    }
}

/// `(x#a)(x′#a′) = Σ x(a₍₁₎x′) # a₍₂₎a′` through `T1(a, a′)`.
struct SmashRaw {
    action: ActionSpec,
    id: String,
    domain: Domain,
}

impl SmashRaw {
    fn product(&self, x: &Key, a: &Key, x2: &Key, a2: &Key) -> Element {
        let h = self.action.a();
        let ex = self.action.r_basis(x);
        let mut out = Element::zero(&self.domain);
        for (ks, c) in h.cover_basis(Cover::T1, a, a2).terms() {
            let y = self.action.rmul(&ex, &self.action.act_basis(&ks[0], x2));
            for (ky, cy) in y.terms() {
                out.add_term(Key::pair(ky, &ks[1]), &(c * cy));
            }
        }
        out
    }
}

fn pairs(xs: &[Key], ys: &[Key]) -> Vec<Key> {
    xs.iter().flat_map(|x| ys.iter().map(move |a| Key::pair(x, a))).collect()
}

impl Algebra for SmashRaw {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        Some(pairs(&self.action.r.finite_basis()?, &self.action.a().finite_basis()?))
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        pairs(&self.action.r.sample_basis(radius), &self.action.a().sample_basis(radius))
    }
    fn mul_basis(&self, u: &Key, v: &Key) -> Element {
        self.product(u.at(0), u.at(1), v.at(0), v.at(1))
    }
    fn identity(&self) -> Option<Element> {
        let (one_r, one_a) = (self.action.r.identity()?, self.action.a().identity()?);
        Some(Tensor::product(&[&one_r, &one_a]).pack(&self.domain))
    }
}

/// `R#A` with its certificates.
#[derive(Clone)]
pub struct SmashProduct {
    pub action: ActionSpec,
    algebra: AlgebraHandle,
    pub certificates: Report,
    opts: SmashOptions,
}

impl std::fmt::Debug for SmashProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmashProduct({})", self.algebra.id())
    }
}

/// Builds `R#A` with default options.
pub fn smash(action: &ActionSpec) -> Result<SmashProduct> {
    smash_with(action, SmashOptions::default())
}

pub fn smash_with(action: &ActionSpec, opts: SmashOptions) -> Result<SmashProduct> {
    if opts.check_action {
        let (sa, sr) = action_samples(action, 2);
        let rep = verify_module_algebra(action, &sa, &sr);
        if !rep.all_passed() {
            let failed: Vec<&str> = rep.failures().iter().map(|c| c.check.as_str()).collect();
            return Err(Error::UnverifiedAction(format!("{}: {}", action.name(), failed.join(", "))));
        }
    }
    let (r, a) = (action.r.id(), action.a().id());
    let raw = SmashRaw {
        action: action.clone(),
        id: format!("{}#{}", r, a),
        domain: Domain::new(&format!("{}#{}[{}]", r, a, action.name())),
    };
    let algebra: AlgebraHandle = if raw.finite_basis().is_some() {
        TableAlgebra::tabulate(&raw)?
    } else {
        Arc::new(raw)
    };
    let mut s = SmashProduct { action: action.clone(), algebra, certificates: Report::new(), opts };
    s.certificates = s.certify();
    Ok(s)
}

impl SmashProduct {
    pub fn algebra(&self) -> &AlgebraHandle {
        &self.algebra
    }

    pub fn id(&self) -> String {
        self.algebra.id()
    }

    pub fn domain(&self) -> &Domain {
        self.algebra.domain()
    }

    pub fn a(&self) -> &RegularMha {
        self.action.a()
    }

    pub fn r(&self) -> &AlgebraHandle {
        &self.action.r
    }

    pub fn finite_basis(&self) -> Option<Vec<Key>> {
        self.algebra.finite_basis()
    }

    pub fn is_finite(&self) -> bool {
        self.finite_basis().is_some()
    }

    pub fn dim(&self) -> Option<usize> {
        algebra::dim(self.algebra.as_ref())
    }

    /// The whole basis, or a window for countable factors.
    pub fn sample(&self, radius: i64) -> Vec<Key> {
        self.finite_basis().unwrap_or_else(|| self.algebra.sample_basis(radius))
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids = self.action.ids();
        ids.push(self.id());
        ids
    }

    pub fn basis(&self, x: &Key, a: &Key) -> Element {
        Element::basis(self.domain(), Key::pair(x, a))
    }

    /// `x#a` for elements.
    pub fn elem(&self, x: &Element, a: &Element) -> Element {
        Tensor::product(&[x, a]).pack(self.domain())
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        algebra::mul(self.algebra.as_ref(), u, v)
    }

    /// `Γ(a⊗x) = Σ a₍₁₎x ⊗ a₍₂₎` in `R⊗A`, covered through `T3(a, e)` with `ex = x`.
    pub fn twist(&self, a: &Element, x: &Element) -> Result<Tensor> {
        let h = self.a();
        let e = self.action.local_unit(std::slice::from_ref(x))?;
        let t = h.cover(Cover::T3, a, &e)?;
        let mut out = Tensor::zero(&[self.r().domain().clone(), h.domain().clone()]);
        for (ks, c) in t.terms() {
            for (k, cx) in self.action.act(&h.basis(&ks[0]), x).terms() {
                out.add_term(vec![k.clone(), ks[1].clone()], &(c * cx));
            }
        }
        Ok(out)
    }

    /// `Γ(a⊗x)` read as an element of `R#A`, i.e. `π(a)π(x)`.
    pub fn twist_element(&self, a: &Element, x: &Element) -> Result<Element> {
        Ok(self.twist(a, x)?.pack(self.domain()))
    }

    /// Product through `(m⊗m)∘(ι⊗Γ⊗ι)`.
    pub fn product_via_twist(&self, u: &Key, v: &Key) -> Result<Element> {
        let g = self.twist(&self.a().basis(u.at(1)), &self.action.r_basis(v.at(0)))?;
        let ex = self.action.r_basis(u.at(0));
        let mut out = Element::zero(self.domain());
        for (ks, c) in g.terms() {
            let y = self.action.rmul(&ex, &self.action.r_basis(&ks[0]));
            let b = self.a().mul_basis(&ks[1], v.at(1));
            out.add_scaled(&self.elem(&y, &b), c);
        }
        Ok(out)
    }

    pub fn level(&self) -> VerifyLevel {
        self.opts.verify.unwrap_or(match self.dim() {
            Some(n) if n <= FULL_LIMIT => VerifyLevel::Full,
            _ => VerifyLevel::Sampled,
        })
    }

    /// Recomputes the certificates, optionally at another level.
    pub fn recheck(&mut self, level: Option<VerifyLevel>) {
        if level.is_some() {
            self.opts.verify = level;
        }
        self.certificates = self.certify();
    }

    fn random_pairs(&self, keys: &[Key], count: usize, salt: u64) -> Vec<(Key, Key)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed ^ salt);
        (0..count)
            .map(|_| (keys[rng.gen_range(0..keys.len())].clone(), keys[rng.gen_range(0..keys.len())].clone()))
            .collect()
    }

    /// Associativity, zero radicals and the twist form of the product.
    fn certify(&self) -> Report {
        let ids = self.ids();
        let names = ["smash-associativity", "smash-left-radical", "smash-right-radical", "smash-twist-form"];
        let level = self.level();
        if level == VerifyLevel::Skip {
            return names.iter().map(|n| CheckResult::skipped(n, &ids, "verification skipped")).collect();
        }
        let alg = self.algebra.as_ref();
        let finite = self.is_finite();
        let window = self.sample(self.opts.radius);
        let exhaustive = level == VerifyLevel::Full;
        let sampled = !finite || !exhaustive;
        let mut report = Report::new();

        // associativity
        let mut chk = Check::new(names[0], &ids, sampled);
        if exhaustive {
            let fail = algebra::associativity_failure(alg, &window);
            chk.case(fail.is_none(), || {
                let (x, y, z) = fail.clone().unwrap();
                json!({"triple": [wkey(&x), wkey(&y), wkey(&z)]})
            });
            chk.detail(json!({"triples": window.len().pow(3)}));
        } else {
            let n = window.len();
            let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
            let triples: Vec<[usize; 3]> =
                (0..self.opts.samples).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
            let fail = triples.par_iter().find_map_first(|[i, j, k]| {
                let (x, y, z) = (&window[*i], &window[*j], &window[*k]);
                let lhs = algebra::mul(alg, &alg.mul_basis(x, y), &algebra::basis_element(alg, z));
                let rhs = algebra::mul(alg, &algebra::basis_element(alg, x), &alg.mul_basis(y, z));
                (lhs != rhs).then(|| json!({"triple": [wkey(x), wkey(y), wkey(z)]}))
            });
            chk.case(fail.is_none(), || fail.clone().unwrap());
            chk.detail(json!({"triples": triples.len(), "seed": self.opts.seed}));
        }
        report.push(chk.finish());

        // radicals: against a doubled window for countable algebras, so every
        // window element can meet its partners
        let partners = if finite { window.clone() } else { self.algebra.sample_basis(2 * self.opts.radius) };
        let inner = if finite { window.clone() } else { self.algebra.sample_basis(self.opts.radius / 2) };
        for (name, left) in [(names[1], true), (names[2], false)] {
            let d = algebra::radical_dim_between(alg, &inner, &partners, left);
            let mut chk = Check::new(name, &ids, !finite);
            chk.case(d == 0, || json!({"radical_dim": d}));
            chk.detail(json!({"radical_dim": d, "window": inner.len()}));
            report.push(chk.finish());
        }

        // twist form
        let pairs: Vec<(Key, Key)> = if finite && exhaustive {
            window.iter().flat_map(|u| window.iter().map(move |v| (u.clone(), v.clone()))).collect()
        } else if finite {
            self.random_pairs(&window, self.opts.samples.min(window.len().pow(2)), 0x7715)
        } else {
            let w = self.algebra.sample_basis(self.opts.radius / 2);
            w.iter().flat_map(|u| w.iter().map(move |v| (u.clone(), v.clone()))).collect()
        };
        let fail = pairs.par_iter().find_map_first(|(u, v)| match self.product_via_twist(u, v) {
            Ok(p) if p == alg.mul_basis(u, v) => None,
            Ok(_) => Some(json!({"pair": [wkey(u), wkey(v)]})),
            Err(e) => Some(json!({"pair": [wkey(u), wkey(v)], "error": e.to_string()})),
        });
        let mut chk = Check::new(names[3], &ids, sampled);
        chk.case(fail.is_none(), || fail.clone().unwrap());
        chk.detail(json!({"pairs": pairs.len()}));
        report.push(chk.finish());
        report
    }

    /// Structure constants `[u, v, uv]` over the finite basis.
    pub fn structure_constants(&self) -> Result<Value> {
        let keys = self.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(self.id()))?;
        let rows: Vec<Value> = keys
            .iter()
            .flat_map(|u| keys.iter().map(move |v| (u, v)))
            .filter_map(|(u, v)| {
                let p = self.algebra.mul_basis(u, v);
                (!p.is_zero()).then(|| json!([wkey(u), wkey(v), p.to_json()]))
            })
            .collect();
        Ok(json!({"algebra": self.id(), "dim": keys.len(), "basis": keys.iter().map(wkey).collect::<Vec<_>>(), "products": rows}))
    }

    /// `π(a)`: `(x′#a′) ↦ Σ a₍₁₎x′ # a₍₂₎a′` on the left, `x′#a′a` on the right.
    pub fn pi_a(&self, a: &Element) -> Multiplier {
        let (s1, s2) = (self.clone(), self.clone());
        let (a1, a2) = (a.clone(), a.clone());
        Multiplier::new(
            self.domain(),
            move |u: &Element| {
                let h = s1.a();
                let mut out = Element::zero(s1.domain());
                for (k, cu) in u.terms() {
                    for (ka, ca) in a1.terms() {
                        for (ks, c) in h.cover_basis(Cover::T1, ka, k.at(1)).terms() {
                            let px = s1.action.act_basis(&ks[0], k.at(0));
                            out.add_scaled(&s1.elem(&px, &h.basis(&ks[1])), &(&(c * ca) * cu));
                        }
                    }
                }
                out
            },
            move |u: &Element| {
                let h = s2.a();
                let mut out = Element::zero(s2.domain());
                for (k, cu) in u.terms() {
                    let b = h.mul(&h.basis(k.at(1)), &a2);
                    out.add_scaled(&s2.elem(&s2.action.r_basis(k.at(0)), &b), cu);
                }
                out
            },
        )
    }

    /// `π(x)`: `x′#a′ ↦ xx′#a′` on the left, `Σ x′(a′₍₁₎x) # a′₍₂₎` on the right
    /// (through `T3(a′, f)` with `fx = x`).
    pub fn pi_r(&self, x: &Element) -> Multiplier {
        let (s1, s2) = (self.clone(), self.clone());
        let (x1, x2) = (x.clone(), x.clone());
        Multiplier::new(
            self.domain(),
            move |u: &Element| {
                let mut out = Element::zero(s1.domain());
                for (k, cu) in u.terms() {
                    let y = s1.action.rmul(&x1, &s1.action.r_basis(k.at(0)));
                    out.add_scaled(&s1.elem(&y, &s1.a().basis(k.at(1))), cu);
                }
                out
            },
            move |u: &Element| {
                let mut out = Element::zero(s2.domain());
                if x2.is_zero() {
                    return out;
                }
                for (k, cu) in u.terms() {
                    let g = s2.twist(&s2.a().basis(k.at(1)), &x2).expect("unital action");
                    let xk = s2.action.r_basis(k.at(0));
                    for (ks, c) in g.terms() {
                        let y = s2.action.rmul(&xk, &s2.action.r_basis(&ks[0]));
                        out.add_scaled(&s2.elem(&y, &s2.a().basis(&ks[1])), &(c * cu));
                    }
                }
                out
            },
        )
    }

    /// `π(m)` for `m ∈ M(R)`: `x′#a′ ↦ mx′#a′` on the left; on the right
    /// `x′#a′ = Σ π(a′₍₂₎)π(S⁻¹(a′₍₁₎)x′)` is multiplied by `m` inside `R`.
    pub fn pi_r_multiplier(&self, m: &Multiplier) -> Multiplier {
        let (s1, s2) = (self.clone(), self.clone());
        let (m1, m2) = (m.clone(), m.clone());
        Multiplier::new(
            self.domain(),
            move |u: &Element| {
                let mut out = Element::zero(s1.domain());
                for (k, cu) in u.terms() {
                    let y = m1.left(&s1.action.r_basis(k.at(0)));
                    out.add_scaled(&s1.elem(&y, &s1.a().basis(k.at(1))), cu);
                }
                out
            },
            move |u: &Element| {
                let h = s2.a();
                let mut out = Element::zero(s2.domain());
                for (k, cu) in u.terms() {
                    let xk = s2.action.r_basis(k.at(0));
                    let e = s2.action.local_unit(std::slice::from_ref(&xk)).expect("unital action");
                    let t = h.cover_unchecked(Cover::T2, &h.antipode(&e), &h.basis(k.at(1)));
                    for (ks, c) in t.terms() {
                        let y = m2.right(&s2.action.act(&h.antipode_inv_basis(&ks[0]), &xk));
                        if y.is_zero() {
                            continue;
                        }
                        let g = s2.twist_element(&h.basis(&ks[1]), &y).expect("unital action");
                        out.add_scaled(&g, &(c * cu));
                    }
                }
                out
            },
        )
    }

    /// Multiplication by an element of `R#A`.
    pub fn as_multiplier(&self, u: &Element) -> Multiplier {
        Multiplier::from_element(&self.algebra, u)
    }
}

/// Spanning rank of a family of smash elements.
fn span_rank(items: &[Element]) -> usize {
    linalg::span_rank(items)
}

/// The embedding relations: both `π` are homomorphisms into `M(R#A)`,
/// `π(x)π(a) = x#a`, `π(a)π(x) = Γ(a⊗x)`, the spanning ranks, unitality and
/// the extension of `π` to `M(R)`.
pub fn verify_pi_relations(s: &SmashProduct, radius: i64) -> Report {
    let ids = s.ids();
    let finite = s.is_finite();
    let sampled = !finite;
    let alg = s.algebra().as_ref();
    let h = s.a();
    let sa = h.finite_basis().unwrap_or_else(|| h.sample_basis(radius));
    let sr = s.r().finite_basis().unwrap_or_else(|| s.r().sample_basis(radius));
    let su = s.sample(radius);
    let mut report = Report::new();

    let pa: Vec<Multiplier> = sa.iter().map(|a| s.pi_a(&h.basis(a))).collect();
    let pr: Vec<Multiplier> = sr.iter().map(|x| s.pi_r(&s.action.r_basis(x))).collect();

    let mut chk = Check::new("pi-a-homomorphism", &ids, sampled);
    for (i, a) in sa.iter().enumerate() {
        for (j, b) in sa.iter().enumerate() {
            let ok = s.pi_a(&h.mul_basis(a, b)).agrees_on(&pa[i].product(&pa[j]), alg, &su);
            chk.case(ok, || json!({"pair": [wkey(a), wkey(b)]}));
        }
    }
    report.push(chk.finish());

    let mut chk = Check::new("pi-r-homomorphism", &ids, sampled);
    for (i, x) in sr.iter().enumerate() {
        for (j, y) in sr.iter().enumerate() {
            let ok = s.pi_r(&s.r().mul_basis(x, y)).agrees_on(&pr[i].product(&pr[j]), alg, &su);
            chk.case(ok, || json!({"pair": [wkey(x), wkey(y)]}));
        }
    }
    report.push(chk.finish());

    let mut chk = Check::new("pi-compatible", &ids, sampled);
    for (m, k) in pa.iter().zip(&sa).chain(pr.iter().zip(&sr)) {
        let fail = m.compatibility_failure(alg, &su);
        chk.case(fail.is_none(), || json!({"key": wkey(k)}));
    }
    report.push(chk.finish());

    let mut chk = Check::new("pi-x-pi-a", &ids, sampled);
    let mut chk2 = Check::new("pi-a-pi-x", &ids, sampled);
    let mut xa = Vec::new();
    let mut ax = Vec::new();
    for (i, x) in sr.iter().enumerate() {
        for (j, a) in sa.iter().enumerate() {
            let ex = s.action.r_basis(x);
            let u = s.basis(x, a);
            chk.case(pr[i].product(&pa[j]).agrees_on(&s.as_multiplier(&u), alg, &su), || {
                json!({"pair": [wkey(x), wkey(a)]})
            });
            let g = match s.twist_element(&h.basis(a), &ex) {
                Ok(g) => g,
                Err(e) => {
                    chk2.case(false, || json!({"pair": [wkey(a), wkey(x)], "error": e.to_string()}));
                    continue;
                }
            };
            chk2.case(pa[j].product(&pr[i]).agrees_on(&s.as_multiplier(&g), alg, &su), || {
                json!({"pair": [wkey(a), wkey(x)]})
            });
            xa.push(u);
            ax.push(g);
        }
    }
    report.push(chk.finish());
    report.push(chk2.finish());

    if let Some(n) = s.dim() {
        let (r1, r2) = (span_rank(&xa), span_rank(&ax));
        let mut chk = Check::new("pi-span-rank", &ids, false);
        chk.case(r1 == n && r2 == n, || json!({"rank_xa": r1, "rank_ax": r2, "dim": n}));
        chk.detail(json!({"rank_xa": r1, "rank_ax": r2, "dim": n}));
        report.push(chk.finish());

        // π(A)(R#A) = R#A, and π(R)(R#A) = R²#A
        let span_of = |ms: &[Multiplier]| {
            let imgs: Vec<Element> =
                ms.iter().flat_map(|m| su.iter().map(move |k| m.left(&algebra::basis_element(alg, k)))).collect();
            span_rank(&imgs)
        };
        let ra = span_of(&pa);
        let mut chk = Check::new("pi-a-unital", &ids, false);
        chk.case(ra == n, || json!({"rank": ra, "dim": n}));
        report.push(chk.finish());

        let r_sq: Vec<Element> = sr.iter().flat_map(|x| sr.iter().map(move |y| (x, y))).map(|(x, y)| s.r().mul_basis(x, y)).collect();
        let dim_r2 = span_rank(&r_sq);
        let dim_a = sa.len();
        let rr = span_of(&pr);
        let unital = dim_r2 == sr.len();
        let mut chk = Check::new("pi-r-image", &ids, false);
        chk.case(rr == dim_r2 * dim_a, || json!({"rank": rr, "expected": dim_r2 * dim_a}));
        chk.detail(json!({"unital": unital, "rank": rr, "dim_r_squared": dim_r2}));
        report.push(chk.finish());
    } else {
        report.push(CheckResult::skipped("pi-span-rank", &ids, "countable smash product"));
    }

    // extension to M(R): π(1) = 1, π(m)π(x)π(a) = π(mx)π(a), and π(x) recovered
    let one = Multiplier::identity(s.r().domain());
    let mut chk = Check::new("pi-multiplier-extension", &ids, sampled);
    chk.case(s.pi_r_multiplier(&one).is_identity_on(alg, &su), || json!("π(1) ≠ 1"));
    let probes: Vec<(Key, Multiplier)> = if s.r().identity().is_some() {
        sr.iter().map(|x| (x.clone(), Multiplier::from_element(s.r(), &s.action.r_basis(x)))).collect()
    } else {
        Vec::new()
    };
    for (x, m) in &probes {
        let ok = s.pi_r_multiplier(m).agrees_on(&s.pi_r(&s.action.r_basis(x)), alg, &su);
        chk.case(ok, || json!({"x": wkey(x)}));
    }
    for (x, m) in probes.iter().take(4).map(|(k, m)| (k.clone(), m.clone())).chain([(Key::Int(-1), one.clone())]) {
        let pm = s.pi_r_multiplier(&m);
        for y in &sr {
            let my = m.left(&s.action.r_basis(y));
            for a in &sa {
                let lhs = pm.left(&s.basis(y, a));
                let rhs = s.elem(&my, &h.basis(a));
                chk.case(lhs == rhs, || json!({"m": wkey(&x), "pair": [wkey(y), wkey(a)]}));
            }
        }
    }
    report.push(chk.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{adjoint, grading, translation, trivial};
    use crate::instances::{function_algebra, group_algebra, GroupSpec};

    fn k(n: i64) -> Key {
        Key::Int(n)
    }

    #[test]
    fn translation_product_example() {
        let s = smash(&translation(GroupSpec::cyclic(2))).unwrap();
        assert!(s.certificates.all_passed(), "{}", s.certificates.to_json_lines());
        assert_eq!(s.mul(&s.basis(&k(0), &k(1)), &s.basis(&k(0), &k(0))), Element::zero(s.domain()));
        assert_eq!(s.mul(&s.basis(&k(0), &k(1)), &s.basis(&k(1), &k(0))), s.basis(&k(0), &k(1)));
        // π(λ₁)π(δ₀) = δ₁#λ₁
        let g = s.twist_element(&s.a().basis(&k(1)), &s.action.r_basis(&k(0))).unwrap();
        assert_eq!(g, s.basis(&k(1), &k(1)));
        assert_eq!(s.dim(), Some(4));
    }

    #[test]
    fn trivial_action_is_tensor_product() {
        let h = group_algebra(GroupSpec::s3());
        let r = function_algebra(GroupSpec::cyclic(2)).algebra();
        let s = smash(&trivial(&h, &r)).unwrap();
        for x in r.finite_basis().unwrap() {
            for a in h.finite_basis().unwrap() {
                let u = s.basis(&x, &a);
                let v = s.basis(&x, &k(3));
                assert_eq!(s.mul(&u, &v), s.elem(&r.mul_basis(&x, &x), &h.mul_basis(&a, &k(3))));
            }
        }
    }

    #[test]
    fn unital_r_embeds_a() {
        let h = group_algebra(GroupSpec::s3());
        let s = smash(&adjoint(&h)).unwrap();
        assert!(s.certificates.all_passed());
        let one = s.r().identity().unwrap();
        for a in h.finite_basis().unwrap() {
            for b in h.finite_basis().unwrap() {
                let lhs = s.mul(&s.elem(&one, &h.basis(&a)), &s.elem(&one, &h.basis(&b)));
                assert_eq!(lhs, s.elem(&one, &h.mul_basis(&a, &b)));
            }
        }
    }

    #[test]
    fn pi_relations_hold() {
        for act in [translation(GroupSpec::cyclic(2)), grading(GroupSpec::cyclic(3)), adjoint(&group_algebra(GroupSpec::s3()))] {
            let s = smash(&act).unwrap();
            let rep = verify_pi_relations(&s, 2);
            assert!(rep.all_passed(), "{}", rep.to_json_lines());
            assert_eq!(rep.get("pi-span-rank").unwrap().status, crate::report::Status::Pass);
        }
    }

    #[test]
    fn countable_crossed_product_is_sampled() {
        let opts = SmashOptions { radius: 3, ..Default::default() };
        let s = smash_with(&translation(GroupSpec::integers()), opts).unwrap();
        assert!(s.certificates.all_passed(), "{}", s.certificates.to_json_lines());
        assert!(s.certificates.entries.iter().all(|c| c.status == crate::report::Status::SampledPass));
    }

    #[test]
    fn broken_action_is_rejected() {
        let h = group_algebra(GroupSpec::cyclic(2));
        let r = function_algebra(GroupSpec::cyclic(2)).algebra();
        let d = r.domain().clone();
        // λ₁ kills everything: not a module
        let table = (0..2)
            .flat_map(|a| (0..2).map(move |x| (a, x)))
            .map(|(a, x)| ((k(a), k(x)), if a == 0 { Element::basis(&d, k(x)) } else { Element::zero(&d) }))
            .collect();
        let bad = crate::actions::table_action("bad", &h, &r, table);
        assert_eq!(smash(&bad).unwrap_err().kind(), "UnverifiedAction");
    }
}
