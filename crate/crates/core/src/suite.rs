//! Suite runner: expands a selection of instances into check items, runs them
//! concurrently and emits their results in a fixed order.
//!
//! Items are resolved before anything runs, so unknown ids and malformed
//! files surface as errors rather than as failing checks. An item that errors
//! while running becomes a single `fail` entry carrying the error.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::actions::{
    action_samples, adjoint, gamma_identity, grading, inner_action_from, translation, trivial,
    verify_cocycle, verify_module_algebra, verify_multiplier_extension, ActionSpec, CocycleData,
};
use crate::actions::json::resolve_action;
use crate::algebra::{AlgebraHandle, ScalarAlgebra};
use crate::aqg::{classify_type, double_dual_report, type_result, verify_integral, AlgebraicQuantumGroup, TypeClass};
use crate::duality::{
    bismash_module_report, coaction_pairing_consistency, dual_action, duality_isomorphism, fixed_point_theorem_check,
    rl_condition_check, tensor_comparison, w_conjugation,
};
use crate::element::{Domain, Element, Key};
use crate::error::{Error, Result};
use crate::hopf::local_units::{find_local_units, is_local_unit, Sided};
use crate::hopf::sweedler::{sweedler_eval, Factor, LegOp, Strategy, SweedlerExpr};
use crate::hopf::verify::{default_sample, verify_mha_axioms};
use crate::hopf::RegularMha;
use crate::instances::{group_algebra, hopf_instance, resolve_hopf, GroupSpec};
use crate::pairing::{
    anti_isomorphism, display_check, fixed_point_scalars, flip_relabel_isomorphism, heisenberg_check,
    matrix_realization, pairing_smash, rank_one_realization, standard_module, verify_pairing, verify_standard_module,
    DualPair, Order, StandardSide, PAIR_RADIUS,
};
use crate::report::{verdict, wel, Check, CheckResult, Report, Status};
use crate::scalar::Scalar;
use crate::smash::{
    cocycle_isomorphism, inner_trivialization, smash_with, verify_pi_relations, SmashOptions, SmashProduct,
    VerifyLevel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Integrals,
    Actions,
    Smash,
    Pairing,
    Duality,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 6] =
        [Suite::Axioms, Suite::Integrals, Suite::Actions, Suite::Smash, Suite::Pairing, Suite::Duality];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Integrals => "integrals",
            Suite::Actions => "actions",
            Suite::Smash => "smash",
            Suite::Pairing => "pairing",
            Suite::Duality => "duality",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.as_str() == s)
            .copied()
            .ok_or_else(|| Error::malformed("suite", format!("unknown suite `{}`", s)))
    }
}

/// Which instances a suite runs over. Empty lists fall back to the default
/// groups `Z2, Z3, S3, Z`.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    /// Hopf instance ids or instance JSON files.
    pub instances: Vec<String>,
    pub groups: Vec<String>,
    /// An action id or action JSON file (`--action`, `--R`); `trivial` means
    /// the trivial action on ℂ.
    pub action: Option<String>,
    /// The acting algebra for `--R` (`--A`).
    pub algebra: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Window radius for countable instances.
    pub radius: i64,
    /// Smash certificate level; `None` is full up to 64 dimensions.
    pub verify: Option<VerifyLevel>,
    pub seed: u64,
    /// Recompute cached construction certificates at the full level.
    pub recheck: bool,
    /// Attach item wall time to each entry (makes output run-dependent).
    pub timing: bool,
    /// Random families per instance for the local-unit check.
    pub local_unit_cases: usize,
    /// Random expressions per instance for the Sweedler confluence check.
    pub sweedler_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            radius: PAIR_RADIUS,
            verify: None,
            seed: 0,
            recheck: false,
            timing: false,
            local_unit_cases: 100,
            sweedler_cases: 200,
        }
    }
}

impl SuiteConfig {
    fn smash_options(&self) -> SmashOptions {
        SmashOptions { verify: self.verify, seed: self.seed, ..SmashOptions::default() }
    }
}

type RunFn = Box<dyn Fn(&SuiteConfig) -> Result<Report> + Send + Sync>;

/// One unit of concurrent work.
pub struct Item {
    pub label: String,
    pub instances: Vec<String>,
    run: RunFn,
}

impl Item {
    fn new<F>(label: &str, instances: Vec<String>, run: F) -> Self
    where
        F: Fn(&SuiteConfig) -> Result<Report> + Send + Sync + 'static,
    {
        Item { label: label.into(), instances, run: Box::new(run) }
    }

    fn skipped(label: &str, instances: Vec<String>, why: &str) -> Self {
        let why = why.to_string();
        let ids = instances.clone();
        let name = label.to_string();
        Item::new(label, instances, move |_| Ok(Report::from_iter([CheckResult::skipped(&name, &ids, &why)])))
    }

    /// Runs the item; errors become one failing entry.
    pub fn run(&self, cfg: &SuiteConfig) -> Report {
        let start = Instant::now();
        let mut report = match (self.run)(cfg) {
            Ok(r) => r,
            Err(e) => Report::from_iter([CheckResult {
                check: self.label.clone(),
                instances: self.instances.clone(),
                status: Status::Fail,
                witness: Some(json!({"error": e.to_string(), "kind": e.kind()})),
                detail: None,
                elapsed_ms: None,
            }]),
        };
        if cfg.timing {
            let ms = start.elapsed().as_millis() as u64;
            for e in &mut report.entries {
                e.elapsed_ms = Some(ms);
            }
        }
        report
    }
}

fn groups_of(sel: &Selection) -> Result<Vec<GroupSpec>> {
    let names: Vec<String> = if sel.groups.is_empty() {
        ["Z2", "Z3", "S3", "Z"].iter().map(|s| s.to_string()).collect()
    } else {
        sel.groups.clone()
    };
    names.iter().map(|g| GroupSpec::parse(g).ok_or_else(|| Error::UnknownInstance(g.clone()))).collect()
}

fn hopf_selection(sel: &Selection) -> Result<Vec<RegularMha>> {
    if !sel.instances.is_empty() {
        return sel.instances.iter().map(|s| resolve_hopf(s)).collect();
    }
    let mut out = Vec::new();
    for g in groups_of(sel)? {
        let n = g.name().to_string();
        out.push(hopf_instance(&format!("K({})", n))?);
        out.push(hopf_instance(&format!("C[{}]", n))?);
        if g.is_finite() {
            out.push(hopf_instance(&format!("dual(K({}))", n))?);
            out.push(hopf_instance(&format!("dual(C[{}])", n))?);
        }
    }
    Ok(out)
}

fn scalars() -> AlgebraHandle {
    std::sync::Arc::new(ScalarAlgebra::new())
}

/// The actions exercised by the `actions` and `smash` suites.
fn action_selection(sel: &Selection) -> Result<Vec<ActionSpec>> {
    if let Some(a) = &sel.action {
        return Ok(vec![resolve_action(a)?]);
    }
    let mut out = Vec::new();
    for g in groups_of(sel)? {
        out.push(translation(g.clone()));
        out.push(grading(g.clone()));
        if g.is_finite() {
            let h = group_algebra(g.clone());
            out.push(adjoint(&h));
            out.push(trivial(&h, &scalars()));
        }
    }
    Ok(out)
}

/// `(name, action)` pairs for the duality suite.
fn duality_selection(sel: &Selection) -> Result<Vec<ActionSpec>> {
    if sel.action.is_some() || sel.algebra.is_some() {
        let a_id = sel.algebra.as_deref();
        let action = match sel.action.as_deref() {
            None | Some("trivial") => {
                let h = hopf_instance(a_id.ok_or_else(|| Error::malformed("--A", "missing acting algebra"))?)?;
                trivial(&h, &scalars())
            }
            Some(spec) => resolve_action(spec)?,
        };
        if let Some(a) = a_id {
            let h = resolve_hopf(a)?;
            if h.id() != action.a().id() {
                return Err(Error::AlgebraMismatch(format!("action of {} but --A {}", action.a().id(), h.id())));
            }
        }
        return Ok(vec![action]);
    }
    let mut out = Vec::new();
    for g in groups_of(sel)?.into_iter().filter(GroupSpec::is_finite) {
        let h = group_algebra(g.clone());
        out.push(trivial(&h, &scalars()));
        out.push(translation(g));
        out.push(adjoint(&h));
    }
    Ok(out)
}

/// Expands a suite into its items, in report order.
pub fn plan(suite: Suite, sel: &Selection) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::PARTS {
                items.extend(plan(s, sel)?);
            }
        }
        Suite::Axioms => {
            for h in hopf_selection(sel)? {
                let ids = vec![h.id()];
                let h1 = h.clone();
                items.push(Item::new("axioms", ids.clone(), move |c| {
                    Ok(verify_mha_axioms(&h1, &default_sample(&h1, c.radius)))
                }));
                let h2 = h.clone();
                items.push(Item::new("local-units", ids.clone(), move |c| local_units_report(&h2, c)));
                let h3 = h.clone();
                items.push(Item::new("sweedler-confluence", ids, move |c| {
                    Ok(Report::from_iter([sweedler_confluence(&h3, c.sweedler_cases, c.seed, c.radius)?]))
                }));
            }
        }
        Suite::Integrals => {
            for h in hopf_selection(sel)? {
                let ids = vec![h.id()];
                items.push(Item::new("integrals", ids, move |c| {
                    let mut r = Report::from_iter([type_result(&h)]);
                    match AlgebraicQuantumGroup::new(&h) {
                        Ok(g) => {
                            let g = if h.is_finite() { g.with_sigma()? } else { g };
                            r.extend(verify_integral(&g, &default_sample(&h, c.radius)));
                        }
                        Err(e @ Error::InfiniteDimensionalNoOracle(_)) => {
                            r.push(CheckResult::skipped("integral-left-invariance", &[h.id()], &e.to_string()))
                        }
                        Err(e) => return Err(e),
                    }
                    if h.is_finite() {
                        r.extend(double_dual_report(&h)?);
                    }
                    Ok(r)
                }));
            }
        }
        Suite::Actions => {
            for action in action_selection(sel)? {
                let a1 = action.clone();
                items.push(Item::new("module-algebra", action.ids(), move |c| {
                    let (sa, sr) = action_samples(&a1, c.radius.min(3));
                    let mut r = verify_module_algebra(&a1, &sa, &sr);
                    r.extend(verify_multiplier_extension(&a1, &sa, &sr));
                    Ok(r)
                }));
            }
            if sel.action.is_none() {
                for g in groups_of(sel)?.into_iter().filter(GroupSpec::is_finite) {
                    let h = group_algebra(g);
                    items.push(Item::new("cocycle", vec![h.id()], move |_| {
                        let r = h.algebra();
                        let gamma = gamma_identity(&h);
                        let inner = inner_action_from(&h, &r, gamma.clone())?;
                        verify_cocycle(&CocycleData::new(gamma), &trivial(&h, &r), &inner)
                    }));
                }
            }
        }
        Suite::Smash => {
            for action in action_selection(sel)? {
                items.push(Item::new("smash", action.ids(), move |c| {
                    let mut s = smash_with(&action, c.smash_options())?;
                    if c.recheck {
                        s.recheck(Some(VerifyLevel::Full));
                    }
                    let mut r = s.certificates.clone();
                    r.extend(verify_pi_relations(&s, c.radius.min(3)));
                    if action.name() == "adjoint" && s.is_finite() {
                        r.extend(inner_trivialization(&s, &gamma_identity(s.a()))?.report);
                    }
                    Ok(r)
                }));
            }
            if sel.action.is_none() {
                for g in groups_of(sel)?.into_iter().filter(GroupSpec::is_finite) {
                    let h = group_algebra(g);
                    items.push(Item::new("cocycle-isomorphism", vec![h.id()], move |_| {
                        let r = h.algebra();
                        let gamma = gamma_identity(&h);
                        let inner = inner_action_from(&h, &r, gamma.clone())?;
                        Ok(cocycle_isomorphism(&CocycleData::new(gamma), &trivial(&h, &r), &inner)?.report)
                    }));
                }
            }
        }
        Suite::Pairing => {
            if !sel.instances.is_empty() {
                for h in hopf_selection(sel)? {
                    let p = DualPair::from_finite(&h)?;
                    items.push(Item::new("pairing", p.ids(), move |c| finite_pair_report(&p, c)));
                }
            } else {
                for g in groups_of(sel)? {
                    let p = DualPair::canonical_pair(g.clone());
                    let p1 = p.clone();
                    items.push(Item::new("pairing", p.ids(), move |c| canonical_pair_report(&p1, c)));
                    if g.is_finite() {
                        let g1 = g.clone();
                        items.push(Item::new("flip-relabel", p.ids(), move |_| Ok(flip_relabel_isomorphism(g1.clone())?.report)));
                    }
                    if g.is_finite() {
                        let p2 = p.clone();
                        items.push(Item::new("coaction", p.ids(), move |_| {
                            let mut r = Report::from_iter([coaction_pairing_consistency(&p2)?]);
                            r.extend(rl_condition_check(&p2)?);
                            Ok(r)
                        }));
                        let p3 = DualPair::from_finite(&group_algebra(g.clone()))?;
                        items.push(Item::new("pairing", p3.ids(), move |c| finite_pair_report(&p3, c)));
                    }
                }
            }
        }
        Suite::Duality => {
            let actions = duality_selection(sel)?;
            if actions.is_empty() {
                items.push(Item::skipped("duality", vec![], "no finite instance selected"));
            }
            for action in actions {
                items.push(Item::new("duality", action.ids(), move |c| duality_report(&action, c)));
            }
        }
    }
    Ok(items)
}

fn canonical_pair_report(p: &DualPair, cfg: &SuiteConfig) -> Result<Report> {
    let radius = cfg.radius;
    let mut r = verify_pairing(p, radius);
    r.extend(heisenberg_check(p, radius.min(3)));
    let s = pairing_smash(p, Order::BA)?;
    r.push(display_check(p, &s, Order::BA));
    for side in [StandardSide::BOnLeft, StandardSide::AOnRight] {
        r.extend(verify_standard_module(&standard_module(p, side)?, radius.min(3)));
    }
    if p.is_finite() {
        r.extend(anti_isomorphism(p)?.report);
        r.push(fixed_point_scalars(p)?);
    }
    Ok(r)
}

fn finite_pair_report(p: &DualPair, cfg: &SuiteConfig) -> Result<Report> {
    let mut r = verify_pairing(p, cfg.radius);
    r.extend(heisenberg_check(p, cfg.radius.min(3)));
    r.extend(anti_isomorphism(p)?.report);
    r.push(fixed_point_scalars(p)?);
    if p.dual.is_some() {
        r.extend(rank_one_realization(p)?.report);
        r.extend(matrix_realization(p)?.report);
    }
    Ok(r)
}

fn duality_report(action: &ActionSpec, cfg: &SuiteConfig) -> Result<Report> {
    let p = DualPair::from_finite(action.a())?;
    let s: SmashProduct = smash_with(action, cfg.smash_options())?;
    let d = dual_action(&p, &s)?;
    let mut r = d.certificates.clone();
    r.extend(fixed_point_theorem_check(&d)?);
    let iso = duality_isomorphism(&d)?;
    r.extend(iso.report.clone());
    r.extend(w_conjugation(&d, Some(&iso.bismash)));
    r.extend(bismash_module_report(&d, &iso.bismash));
    let n = p.a.dim().unwrap_or(0);
    let summary = json!({
        "bismash_dim": iso.bismash.dim(),
        "dim_r": s.r().finite_basis().map(|b| b.len()),
        "n": n,
        "matrix": iso.matrix.as_ref().map(|_| format!("M_{}({})", n, s.r().id())),
    });
    let ok = iso.theta.is_certified() && iso.matrix.as_ref().map_or(true, |m| m.is_certified());
    r.push(verdict("duality-summary", &d.ids(), ok, false, summary));
    if action.name() == "translation" {
        // the same action over the canonical pair, against R⊗(A#B)
        let g = action.a().id();
        let g = g.strip_prefix("C[").and_then(|s| s.strip_suffix(']')).and_then(GroupSpec::parse);
        if let Some(g) = g {
            let dc = dual_action(&DualPair::canonical_pair(g), &s)?;
            r.extend(tensor_comparison(&dc)?.report);
        }
    }
    Ok(r)
}

/// A random element with at most `max_terms` terms and small Gaussian
/// integer coefficients.
pub fn random_element(rng: &mut impl Rng, domain: &Domain, keys: &[Key], max_terms: usize) -> Element {
    let mut e = Element::zero(domain);
    while e.is_zero() {
        let n = rng.gen_range(1..=max_terms.max(1));
        for k in keys.choose_multiple(rng, n) {
            let re = rng.gen_range(-3i64..=3);
            let im = if rng.gen_bool(0.25) { rng.gen_range(-2i64..=2) } else { 0 };
            e.add_term(k.clone(), &(Scalar::from_int(re) + Scalar::from_int(im) * Scalar::i()));
        }
    }
    e
}

/// Randomized local-unit families: side equations always, idempotency for
/// discrete-type instances.
pub fn local_units_report(h: &RegularMha, cfg: &SuiteConfig) -> Result<Report> {
    let ids = vec![h.id()];
    let sampled = !h.is_finite();
    let keys = default_sample(h, cfg.radius);
    let discrete = matches!(classify_type(h), Ok(TypeClass::Discrete) | Ok(TypeClass::Both));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x10ca1);
    let mut sides = Check::new("local-units-side-equations", &ids, sampled);
    let mut idem = Check::new("local-units-idempotent", &ids, sampled);
    for _ in 0..cfg.local_unit_cases {
        let n = rng.gen_range(1..=4);
        let items: Vec<Element> = (0..n).map(|_| random_element(&mut rng, h.domain(), &keys, 3)).collect();
        for sided in [Sided::Left, Sided::Right, Sided::TwoSided] {
            let e = find_local_units(h, &items, sided)?;
            sides.case(is_local_unit(h.algebra().as_ref(), &e, &items, sided), || {
                json!({"items": items.iter().map(wel).collect::<Vec<_>>(), "side": format!("{:?}", sided), "e": wel(&e)})
            });
            if discrete {
                idem.case(h.mul(&e, &e) == e, || json!({"e": wel(&e)}));
            }
        }
    }
    let mut r = Report::from_iter([sides.finish()]);
    if discrete {
        r.push(idem.finish());
    }
    Ok(r)
}

/// A random covered expression: up to three legs with random ops and
/// covers, at most one of them uncovered, optionally an `ε` leg and a
/// constant factor.
pub fn random_sweedler_expr(rng: &mut impl Rng, h: &RegularMha, keys: &[Key]) -> SweedlerExpr {
    let dom = h.domain();
    let n = rng.gen_range(1..=3);
    let uncovered = if rng.gen_bool(0.5) { Some(rng.gen_range(0..n)) } else { None };
    let mut factors = Vec::new();
    for i in 0..n {
        let op = [LegOp::Id, LegOp::Antipode, LegOp::AntipodeInv][rng.gen_range(0..3)];
        let (left, right) = if uncovered == Some(i) {
            (None, None)
        } else {
            match rng.gen_range(0..4) {
                0 => (Some(random_element(rng, dom, keys, 2)), Some(random_element(rng, dom, keys, 2))),
                1 => (Some(random_element(rng, dom, keys, 2)), None),
                _ => (None, Some(random_element(rng, dom, keys, 2))),
            }
        };
        factors.push(Factor::leg(op, left, right));
    }
    if rng.gen_bool(0.25) {
        let at = rng.gen_range(0..=factors.len());
        factors.insert(at, Factor::Counit);
    }
    if rng.gen_bool(0.2) {
        let at = rng.gen_range(0..=factors.len());
        factors.insert(at, Factor::Const(random_element(rng, dom, keys, 2)));
    }
    SweedlerExpr { a: random_element(rng, dom, keys, 3), factors }
}

/// Both evaluation strategies agree on `count` random covered expressions.
pub fn sweedler_confluence(h: &RegularMha, count: usize, seed: u64, radius: i64) -> Result<CheckResult> {
    let ids = vec![h.id()];
    let keys = default_sample(h, radius.min(3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut chk = Check::new("sweedler-confluence", &ids, !h.is_finite());
    for i in 0..count {
        let expr = random_sweedler_expr(&mut rng, h, &keys);
        let x = sweedler_eval(h, &expr, Strategy::PeelLast)?;
        let y = sweedler_eval(h, &expr, Strategy::PeelFirst)?;
        chk.case(x == y, || json!({"case": i, "seed": seed, "a": wel(&expr.a)}));
    }
    chk.detail(json!({"seed": seed}));
    Ok(chk.finish())
}

/// Runs `items` concurrently and hands each entry to `sink` in plan order,
/// as soon as every earlier item has finished.
pub fn run_items<S: FnMut(&CheckResult)>(items: &[Item], cfg: &SuiteConfig, mut sink: S) -> Report {
    let (tx, rx) = mpsc::channel::<(usize, Report)>();
    let mut out = Report::new();
    rayon::in_place_scope(|scope| {
        for (i, item) in items.iter().enumerate() {
            let tx = tx.clone();
            scope.spawn(move |_| {
                let _ = tx.send((i, item.run(cfg)));
            });
        }
        drop(tx);
        let mut pending: BTreeMap<usize, Report> = BTreeMap::new();
        let mut next = 0;
        for (i, r) in rx.iter() {
            pending.insert(i, r);
            while let Some(r) = pending.remove(&next) {
                for e in &r.entries {
                    sink(e);
                }
                out.extend(r);
                next += 1;
            }
        }
    });
    out
}

/// Plans and runs a suite, collecting the whole report.
pub fn run_suite(suite: Suite, sel: &Selection, cfg: &SuiteConfig) -> Result<Report> {
    let items = plan(suite, sel)?;
    Ok(run_items(&items, cfg, |_| {}))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(groups: &[&str]) -> Selection {
        Selection { groups: groups.iter().map(|s| s.to_string()).collect(), ..Selection::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::PARTS.iter().chain([Suite::All].iter()) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), *s);
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err().kind(), "MalformedSpec");
    }

    #[test]
    fn unknown_group_is_rejected_before_running() {
        let err = plan(Suite::Axioms, &sel(&["Q8"])).err().unwrap();
        assert_eq!(err.kind(), "UnknownInstance");
    }

    #[test]
    fn axioms_z2_pass_and_are_deterministic() {
        let cfg = SuiteConfig { local_unit_cases: 10, sweedler_cases: 20, ..SuiteConfig::default() };
        let a = run_suite(Suite::Axioms, &sel(&["Z2"]), &cfg).unwrap();
        assert!(a.all_passed(), "{}", a.to_json_lines());
        let b = run_suite(Suite::Axioms, &sel(&["Z2"]), &cfg).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
    }

    #[test]
    fn countable_axioms_are_sampled() {
        let cfg = SuiteConfig { local_unit_cases: 5, sweedler_cases: 10, radius: 3, ..SuiteConfig::default() };
        let r = run_suite(Suite::Axioms, &sel(&["Z"]), &cfg).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
        assert!(r.entries.iter().all(|e| e.status != Status::Pass), "{}", r.to_json_lines());
    }

    #[test]
    fn duality_for_trivial_action_reports_matrix_identification() {
        let s = Selection { action: Some("trivial".into()), algebra: Some("C[Z2]".into()), ..Selection::default() };
        let r = run_suite(Suite::Duality, &s, &SuiteConfig::default()).unwrap();
        assert!(r.all_passed(), "{}", r.to_json_lines());
        let summary = r.get("duality-summary").unwrap().detail.as_ref().unwrap();
        assert_eq!(summary["matrix"], "M_2(C)");
    }

    #[test]
    fn mismatched_algebra_is_an_error() {
        let s = Selection {
            action: Some("translation:Z2".into()),
            algebra: Some("C[Z3]".into()),
            ..Selection::default()
        };
        assert_eq!(plan(Suite::Duality, &s).err().unwrap().kind(), "AlgebraMismatch");
    }

    #[test]
    fn item_errors_become_failures() {
        let item = Item::new("boom", vec!["x".into()], |_| Err(Error::NotFound("nothing".into())));
        let r = item.run(&SuiteConfig::default());
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].status, Status::Fail);
        assert_eq!(r.entries[0].witness.as_ref().unwrap()["kind"], "NotFound");
    }
}
