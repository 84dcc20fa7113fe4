//! Axiom checks for a regular multiplier Hopf algebra on a basis sample.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::element::{Element, Key, Tensor};
use crate::hopf::{Cover, RegularMha};
use crate::report::{wkey, wten, Check, CheckResult, Report};

/// Multiplies leg `leg` of `t` by `x`, from the left (`x·tᵢ`) or the right.
pub fn leg_mul(h: &RegularMha, t: &Tensor, leg: usize, x: &Element, from_left: bool) -> Tensor {
    let d = t.legs()[leg].clone();
    t.map_leg(leg, &d, |k| {
        let b = h.basis(k);
        if from_left {
            h.mul(x, &b)
        } else {
            h.mul(&b, x)
        }
    })
}

fn pair(a: &Key, b: &Key) -> serde_json::Value {
    json!([wkey(a), wkey(b)])
}

fn triple(a: &Key, b: &Key, c: &Key) -> serde_json::Value {
    json!([wkey(a), wkey(b), wkey(c)])
}

/// Runs `f` over all pairs in parallel and folds the outcomes into one check,
/// keeping the first failing pair in sample order.
fn pair_check<F>(name: &str, ids: &[String], sampled: bool, sample: &[Key], f: F) -> CheckResult
where
    F: Fn(&Key, &Key) -> Option<serde_json::Value> + Sync,
{
    let n = sample.len();
    let fails: Vec<Option<serde_json::Value>> =
        (0..n * n).into_par_iter().map(|ij| f(&sample[ij / n], &sample[ij % n])).collect();
    let mut c = Check::new(name, ids, sampled);
    for r in fails {
        let ok = r.is_none();
        c.case(ok, || r.unwrap());
    }
    c.finish()
}

fn triple_check<F>(name: &str, ids: &[String], sampled: bool, sample: &[Key], f: F) -> CheckResult
where
    F: Fn(&Key, &Key, &Key) -> Option<serde_json::Value> + Sync,
{
    let n = sample.len();
    let fails: Vec<Option<serde_json::Value>> = (0..n * n * n)
        .into_par_iter()
        .map(|ijk| f(&sample[ijk / (n * n)], &sample[(ijk / n) % n], &sample[ijk % n]))
        .collect();
    let mut c = Check::new(name, ids, sampled);
    for r in fails {
        let ok = r.is_none();
        c.case(ok, || r.unwrap());
    }
    c.finish()
}

/// All checks of the multiplier Hopf algebra axioms over `sample`.
/// Countable instances report `sampled-pass` instead of `pass`.
pub fn verify_mha_axioms(h: &RegularMha, sample: &[Key]) -> Report {
    let ids = vec![h.id()];
    let sampled = !h.is_finite();
    let legs = h.legs2();
    let mut report = Report::new();

    report.push(pair_check("t1-bijective", &ids, sampled, sample, |a, b| {
        let t = Tensor::basis(&legs, vec![a.clone(), b.clone()]);
        let ok = h.t1_inv(&h.t1(&t)) == t && h.t1(&h.t1_inv(&t)) == t;
        (!ok).then(|| json!({"pair": pair(a, b), "t1": wten(&h.t1(&t)), "t1_inv": wten(&h.t1_inv(&t))}))
    }));
    report.push(pair_check("t2-bijective", &ids, sampled, sample, |a, b| {
        let t = Tensor::basis(&legs, vec![a.clone(), b.clone()]);
        let ok = h.t2_inv(&h.t2(&t)) == t && h.t2(&h.t2_inv(&t)) == t;
        (!ok).then(|| json!({"pair": pair(a, b), "t2": wten(&h.t2(&t)), "t2_inv": wten(&h.t2_inv(&t))}))
    }));

    report.push(triple_check("coassociativity", &ids, sampled, sample, |a, b, c| {
        // (a⊗1⊗1)(Δ⊗ι)(Δ(b)(1⊗c)) against (ι⊗Δ)((a⊗1)Δ(b))(1⊗1⊗c)
        let ea = h.basis(a);
        let ec = h.basis(c);
        let lhs_legs = vec![h.domain().clone(); 3];
        let t1 = h.cover_basis(Cover::T1, b, c);
        let lhs = t1.map_terms(&lhs_legs, |ks| {
            let mut out = Tensor::zero(&lhs_legs);
            for (pk, v) in h.cover_unchecked(Cover::T2, &ea, &h.basis(&ks[0])).terms() {
                out.add_term(vec![pk[0].clone(), pk[1].clone(), ks[1].clone()], v);
            }
            out
        });
        let t2 = h.cover_basis(Cover::T2, a, b);
        let rhs = t2.map_terms(&lhs_legs, |ks| {
            let mut out = Tensor::zero(&lhs_legs);
            for (qk, v) in h.cover_unchecked(Cover::T1, &h.basis(&ks[1]), &ec).terms() {
                out.add_term(vec![ks[0].clone(), qk[0].clone(), qk[1].clone()], v);
            }
            out
        });
        (lhs != rhs).then(|| json!({"triple": triple(a, b, c), "lhs": wten(&lhs), "rhs": wten(&rhs)}))
    }));

    report.push(triple_check("cover-compatibility", &ids, sampled, sample, |a, b, c| {
        // Δ(a)(c⊗b) two ways, and (c⊗b)Δ(a) two ways
        let ec = h.basis(c);
        let eb = h.basis(b);
        let x1 = leg_mul(h, &h.cover_basis(Cover::T1, a, b), 0, &ec, false);
        let x2 = leg_mul(h, &h.cover_basis(Cover::T3, a, c), 1, &eb, false);
        let y1 = leg_mul(h, &h.cover_basis(Cover::T4, a, b), 0, &ec, true);
        let y2 = leg_mul(h, &h.cover_basis(Cover::T2, c, a), 1, &eb, true);
        (x1 != x2 || y1 != y2).then(|| {
            json!({"triple": triple(a, b, c), "t1_t3": [wten(&x1), wten(&x2)], "t4_t2": [wten(&y1), wten(&y2)]})
        })
    }));

    report.push(pair_check("counit-law-left", &ids, sampled, sample, |a, b| {
        let lhs = h.cover_basis(Cover::T1, a, b).contract_leg(0, |k| h.counit_basis(k)).into_element();
        let ab = h.mul_basis(a, b);
        (lhs != ab).then(|| json!({"pair": pair(a, b)}))
    }));
    report.push(pair_check("counit-law-right", &ids, sampled, sample, |a, b| {
        let lhs = h.cover_basis(Cover::T2, a, b).contract_leg(1, |k| h.counit_basis(k)).into_element();
        let ab = h.mul_basis(a, b);
        (lhs != ab).then(|| json!({"pair": pair(a, b)}))
    }));

    report.push(pair_check("antipode-law-left", &ids, sampled, sample, |a, b| {
        let t = h.cover_basis(Cover::T1, a, b).map_leg(0, h.domain(), |k| h.antipode_basis(k));
        let lhs = h.multiply_legs(&t);
        let rhs = h.basis(b).scale(&h.counit_basis(a));
        (lhs != rhs).then(|| json!({"pair": pair(a, b)}))
    }));
    report.push(pair_check("antipode-law-right", &ids, sampled, sample, |a, b| {
        let t = h.cover_basis(Cover::T2, a, b).map_leg(1, h.domain(), |k| h.antipode_basis(k));
        let lhs = h.multiply_legs(&t);
        let rhs = h.basis(a).scale(&h.counit_basis(b));
        (lhs != rhs).then(|| json!({"pair": pair(a, b)}))
    }));

    let mut c = Check::new("antipode-invertible", &ids, sampled);
    for a in sample {
        let x = h.basis(a);
        let ok = h.antipode(&h.antipode_inv(&x)) == x && h.antipode_inv(&h.antipode(&x)) == x;
        c.case(ok, || json!({"key": wkey(a)}));
    }
    report.push(c.finish());

    report.push(pair_check("counit-multiplicative", &ids, sampled, sample, |a, b| {
        let lhs = h.counit(&h.mul_basis(a, b));
        let rhs = &h.counit_basis(a) * &h.counit_basis(b);
        (lhs != rhs).then(|| json!({"pair": pair(a, b)}))
    }));
    report.push(pair_check("antipode-anti-multiplicative", &ids, sampled, sample, |a, b| {
        let lhs = h.antipode(&h.mul_basis(a, b));
        let rhs = h.mul(&h.antipode_basis(b), &h.antipode_basis(a));
        (lhs != rhs).then(|| json!({"pair": pair(a, b)}))
    }));

    let mut c = Check::new("counit-nonzero", &ids, sampled);
    c.case(sample.iter().any(|k| !h.counit_basis(k).is_zero()), || json!("ε vanishes on the sample"));
    report.push(c.finish());
    report
}

/// The full basis for finite instances, else the window of the given radius.
pub fn default_sample(h: &RegularMha, radius: i64) -> Vec<Key> {
    h.finite_basis().unwrap_or_else(|| h.sample_basis(radius))
}
