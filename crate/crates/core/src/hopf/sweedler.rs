//! Evaluation of covered Sweedler expressions.
//!
//! An expression `Σ f₁(a₍₁₎) ⊗ … ⊗ fₙ(a₍ₙ₎)` is grounded by peeling an end leg
//! with a covering map (T1–T4) and recursing on the remaining legs; each
//! factor is `l·op(a₍ₖ₎)·r` with `op ∈ {ι, S, S⁻¹}`, or `ε(a₍ₖ₎)`, or a constant
//! factor that does not involve `a`. At most one Δ-leg may be uncovered.
//!
//! Two strategies choose differently which end to peel and which cover to
//! use first, so comparing them exercises T1..T4 against each other.

use std::collections::BTreeMap;

use num_traits::One;

use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::{Cover, RegularMha};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegOp {
    Id,
    Antipode,
    AntipodeInv,
}

#[derive(Clone, Debug)]
pub enum Factor {
    /// `left · op(a₍ₖ₎) · right`.
    Leg { op: LegOp, left: Option<Element>, right: Option<Element> },
    /// `ε(a₍ₖ₎)`, contracted away.
    Counit,
    /// A factor not involving `a`.
    Const(Element),
}

impl Factor {
    pub fn leg(op: LegOp, left: Option<Element>, right: Option<Element>) -> Self {
        Factor::Leg { op, left, right }
    }

    fn is_delta(&self) -> bool {
        !matches!(self, Factor::Const(_))
    }
}

/// `Σ` over the iterated coproduct of `a`, factors in output order.
#[derive(Clone, Debug)]
pub struct SweedlerExpr {
    pub a: Element,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Peel the last leg when it is covered; prefer right covers.
    PeelLast,
    /// Peel the first leg when it is covered; prefer left covers.
    PeelFirst,
}

#[derive(Clone, Debug)]
struct Leg {
    op: LegOp,
    left: Option<Element>,
    right: Option<Element>,
    /// Contract with ε after evaluation (strategy B's treatment of counit legs).
    counit: bool,
}

impl Leg {
    fn covered(&self) -> bool {
        self.left.is_some() || self.right.is_some()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Evaluates `expr` to a concrete tensor (arity = number of non-counit factors).
/// With a single output factor the result has arity 1.
pub fn sweedler_eval(h: &RegularMha, expr: &SweedlerExpr, strategy: Strategy) -> Result<Tensor> {
    expr.a.check_domain(h.domain())?;
    let mut uncovered = Vec::new();
    for (i, f) in expr.factors.iter().enumerate() {
        match f {
            Factor::Leg { left, right, .. } => {
                for e in left.iter().chain(right.iter()) {
                    e.check_domain(h.domain())?;
                }
                if left.is_none() && right.is_none() {
                    uncovered.push(i);
                }
            }
            Factor::Counit | Factor::Const(_) => {}
        }
    }
    if uncovered.len() > 1 {
        return Err(Error::UncoveredLeg { legs: uncovered });
    }
    let n_delta = expr.factors.iter().filter(|f| f.is_delta()).count();
    if n_delta == 0 {
        return Err(Error::malformed("sweedler expression", "no coproduct legs"));
    }

    let (legs, counit_scalar_only) = match strategy {
        Strategy::PeelLast => {
            // ε-legs vanish by the counit law.
            let legs: Vec<Leg> = expr
                .factors
                .iter()
                .filter_map(|f| match f {
                    Factor::Leg { op, left, right } => {
                        Some(Leg { op: *op, left: left.clone(), right: right.clone(), counit: false })
                    }
                    _ => None,
                })
                .collect();
            let only = legs.is_empty();
            (legs, only)
        }
        Strategy::PeelFirst => {
            // ε-legs become legs covered by some u with ε(u) = 1, contracted at the end.
            let u = if expr.factors.iter().any(|f| matches!(f, Factor::Counit)) {
                let radius = expr.a.support().map(Key::magnitude).max().unwrap_or(0) + 1;
                Some(h.counit_normalized(radius).ok_or_else(|| Error::NotFound("element with ε ≠ 0".into()))?)
            } else {
                None
            };
            let legs: Vec<Leg> = expr
                .factors
                .iter()
                .filter_map(|f| match f {
                    Factor::Leg { op, left, right } => {
                        Some(Leg { op: *op, left: left.clone(), right: right.clone(), counit: false })
                    }
                    Factor::Counit => {
                        Some(Leg { op: LegOp::Id, left: u.clone(), right: None, counit: true })
                    }
                    Factor::Const(_) => None,
                })
                .collect();
            (legs, false)
        }
    };

    let core = if counit_scalar_only {
        // only ε-legs: Σ ε(a₍₁₎)…ε(a₍ₙ₎) = ε(a)
        None
    } else {
        Some(eval_legs(h, &expr.a, &legs, strategy))
    };

    // Reassemble: contract counit legs (strategy B), then splice constants in.
    let scalar = match &core {
        None => h.counit(&expr.a),
        Some(_) => Scalar::one(),
    };
    let mut delta_part: Vec<(Vec<Key>, Scalar)> = match core {
        None => vec![(Vec::new(), scalar)],
        Some(t) => {
            let counit_pos: Vec<usize> = legs.iter().enumerate().filter(|(_, l)| l.counit).map(|(i, _)| i).collect();
            let mut t = t;
            for &p in counit_pos.iter().rev() {
                t = t.contract_leg(p, |k| h.counit_basis(k));
            }
            t.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
        }
    };
    delta_part.sort_by(|x, y| x.0.cmp(&y.0));

    let mut out_legs: Vec<Domain> = Vec::new();
    for f in &expr.factors {
        match f {
            Factor::Leg { .. } => out_legs.push(h.domain().clone()),
            Factor::Const(e) => out_legs.push(e.domain().clone()),
            Factor::Counit => {}
        }
    }
    let mut out = Tensor::zero(&out_legs);
    for (keys, c) in delta_part {
        let mut partial: Vec<(Vec<Key>, Scalar)> = vec![(Vec::new(), c)];
        let mut it = keys.into_iter();
        for f in &expr.factors {
            match f {
                Factor::Leg { .. } => {
                    let k = it.next().expect("leg key");
                    for p in partial.iter_mut() {
                        p.0.push(k.clone());
                    }
                }
                Factor::Const(e) => {
                    let mut next = Vec::new();
                    for (ks, c) in &partial {
                        for (k, v) in e.terms() {
                            let mut ks2 = ks.clone();
                            ks2.push(k.clone());
                            next.push((ks2, c * v));
                        }
                    }
                    partial = next;
                }
                Factor::Counit => {}
            }
        }
        for (ks, c) in partial {
            out.add_term(ks, &c);
        }
    }
    Ok(out)
}

/// The underlying cover implied by a leg's outer covers, given a preferred side
/// of the leg value. Returns the side on the underlying `a₍ₖ₎` and the cover.
fn base_cover(h: &RegularMha, leg: &Leg, prefer_right: bool) -> Option<(Side, Element, bool)> {
    // bool: whether the leg's right (true) or left (false) outer cover was consumed
    let use_right = match (&leg.left, &leg.right) {
        (Some(_), Some(_)) => prefer_right,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (None, None) => return None,
    };
    let c = if use_right { leg.right.as_ref().unwrap() } else { leg.left.as_ref().unwrap() };
    Some(match (leg.op, use_right) {
        (LegOp::Id, true) => (Side::Right, c.clone(), true),
        (LegOp::Id, false) => (Side::Left, c.clone(), false),
        // S(x)·r = S(S⁻¹(r)·x),  l·S(x) = S(x·S⁻¹(l))
        (LegOp::Antipode, true) => (Side::Left, h.antipode_inv(c), true),
        (LegOp::Antipode, false) => (Side::Right, h.antipode_inv(c), false),
        // S⁻¹(x)·r = S⁻¹(S(r)·x),  l·S⁻¹(x) = S⁻¹(x·S(l))
        (LegOp::AntipodeInv, true) => (Side::Left, h.antipode(c), true),
        (LegOp::AntipodeInv, false) => (Side::Right, h.antipode(c), false),
    })
}

fn apply_op(h: &RegularMha, op: LegOp, y: &Element) -> Element {
    match op {
        LegOp::Id => y.clone(),
        LegOp::Antipode => h.antipode(y),
        LegOp::AntipodeInv => h.antipode_inv(y),
    }
}

/// Value of a leg once its underlying key has absorbed the consumed cover.
fn finish(h: &RegularMha, leg: &Leg, y: &Element, consumed_right: Option<bool>) -> Element {
    let mut v = apply_op(h, leg.op, y);
    let keep_left = consumed_right != Some(false);
    let keep_right = consumed_right != Some(true);
    if keep_left {
        if let Some(l) = &leg.left {
            v = h.mul(l, &v);
        }
    }
    if keep_right {
        if let Some(r) = &leg.right {
            v = h.mul(&v, r);
        }
    }
    v
}

fn eval_legs(h: &RegularMha, a: &Element, legs: &[Leg], strategy: Strategy) -> Tensor {
    let n = legs.len();
    let legs_dom: Vec<Domain> = vec![h.domain().clone(); n];
    if n == 1 {
        let v = finish(h, &legs[0], a, None);
        let mut t = Tensor::zero(&legs_dom);
        for (k, c) in v.terms() {
            t.add_term(vec![k.clone()], c);
        }
        return t;
    }
    let (first_cov, last_cov) = (legs[0].covered(), legs[n - 1].covered());
    let peel_last = match strategy {
        Strategy::PeelLast => last_cov,
        Strategy::PeelFirst => !first_cov,
    };
    let prefer_right = strategy == Strategy::PeelLast;
    let mut out = Tensor::zero(&legs_dom);
    if peel_last {
        let leg = &legs[n - 1];
        let (side, c, consumed_right) = base_cover(h, leg, prefer_right).expect("peeled leg is covered");
        let cov = match side {
            Side::Right => h.cover_unchecked(Cover::T1, a, &c),
            Side::Left => h.cover_unchecked(Cover::T4, a, &c),
        };
        // group by first key to reuse the recursive expansion
        let mut groups: BTreeMap<Key, Element> = BTreeMap::new();
        for (ks, v) in cov.terms() {
            groups
                .entry(ks[0].clone())
                .or_insert_with(|| Element::zero(h.domain()))
                .add_term(ks[1].clone(), v);
        }
        for (p, q) in groups {
            let head = eval_legs(h, &h.basis(&p), &legs[..n - 1], strategy);
            let tail = finish(h, leg, &q, Some(consumed_right));
            out.add_scaled(&head.append(&tail), &Scalar::one());
        }
    } else {
        let leg = &legs[0];
        let (side, c, consumed_right) = base_cover(h, leg, prefer_right).expect("peeled leg is covered");
        let cov = match side {
            Side::Left => h.cover_unchecked(Cover::T2, &c, a),
            Side::Right => h.cover_unchecked(Cover::T3, a, &c),
        };
        let mut groups: BTreeMap<Key, Element> = BTreeMap::new();
        for (ks, v) in cov.terms() {
            groups
                .entry(ks[1].clone())
                .or_insert_with(|| Element::zero(h.domain()))
                .add_term(ks[0].clone(), v);
        }
        for (q, p) in groups {
            let head = finish(h, leg, &p, Some(consumed_right));
            let rest = eval_legs(h, &h.basis(&q), &legs[1..], strategy);
            out.add_scaled(&prepend(&head, &rest), &Scalar::one());
        }
    }
    out
}

/// `e ⊗ t`.
fn prepend(e: &Element, t: &Tensor) -> Tensor {
    let mut legs = vec![e.domain().clone()];
    legs.extend(t.legs().iter().cloned());
    let mut out = Tensor::zero(&legs);
    for (k, c) in e.terms() {
        for (ks, v) in t.terms() {
            let mut ks2 = Vec::with_capacity(ks.len() + 1);
            ks2.push(k.clone());
            ks2.extend(ks.iter().cloned());
            out.add_term(ks2, &(c * v));
        }
    }
    out
}
