//! Local units: `e` with `e·aᵢ = aᵢ` and/or `aᵢ·e = aᵢ` for a finite family.

use crate::algebra::{self, Algebra};
use crate::element::{Domain, Element, Key};
use crate::error::{Error, Result};
use crate::hopf::RegularMha;
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sided {
    Left,
    Right,
    TwoSided,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Number of sample enlargements before giving up.
    pub rounds: usize,
    /// Ignore instance oracles and identities (exercises the search itself).
    pub force_search: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { rounds: 3, force_search: false }
    }
}

pub fn find_local_units(h: &RegularMha, items: &[Element], sided: Sided) -> Result<Element> {
    find_local_units_with(h.algebra().as_ref(), items, sided, SearchConfig::default())
}

/// Whether `e` satisfies the requested side equations on every item.
pub fn is_local_unit(alg: &dyn Algebra, e: &Element, items: &[Element], sided: Sided) -> bool {
    items.iter().all(|a| {
        let l = sided == Sided::Right || &algebra::mul(alg, e, a) == a;
        let r = sided == Sided::Left || &algebra::mul(alg, a, e) == a;
        l && r
    })
}

/// Oracle, then identity, then linear solve over an enlarging basis sample.
pub fn find_local_units_with(alg: &dyn Algebra, items: &[Element], sided: Sided, cfg: SearchConfig) -> Result<Element> {
    if items.is_empty() {
        return Err(Error::malformed("local units", "empty item list"));
    }
    for a in items {
        a.check_domain(alg.domain())?;
    }
    if !cfg.force_search {
        if let Some(e) = alg.local_unit_oracle(items) {
            if is_local_unit(alg, &e, items, sided) {
                return Ok(e);
            }
        }
        if let Some(e) = alg.identity() {
            return Ok(e);
        }
    }
    let radius0 = items.iter().flat_map(|a| a.support().map(Key::magnitude).collect::<Vec<_>>()).max().unwrap_or(0);
    let stack = Domain::new("stack");
    let stacked = |parts: Vec<Element>| -> Element {
        let mut out = Element::zero(&stack);
        for (i, p) in parts.into_iter().enumerate() {
            for (k, c) in p.terms() {
                out.add_term(Key::pair(&Key::Int(i as i64), k), c);
            }
        }
        out
    };
    let target = {
        let mut parts = Vec::new();
        if sided != Sided::Right {
            parts.extend(items.iter().cloned());
        }
        if sided != Sided::Left {
            parts.extend(items.iter().cloned());
        }
        stacked(parts)
    };
    let mut last = 0usize;
    for round in 0..cfg.rounds.max(1) {
        let sample = alg.sample_basis(radius0 + (1i64 << round) - 1);
        if sample.len() == last && round > 0 {
            break;
        }
        last = sample.len();
        let gens: Vec<Element> = sample
            .iter()
            .map(|b| {
                let eb = algebra::basis_element(alg, b);
                let mut parts = Vec::new();
                if sided != Sided::Right {
                    parts.extend(items.iter().map(|a| algebra::mul(alg, &eb, a)));
                }
                if sided != Sided::Left {
                    parts.extend(items.iter().map(|a| algebra::mul(alg, a, &eb)));
                }
                stacked(parts)
            })
            .collect();
        match linalg::linear_solve(&gens, &target) {
            Ok(c) => {
                let e = Element::from_terms(alg.domain(), sample.iter().cloned().zip(c));
                debug_assert!(is_local_unit(alg, &e, items, sided));
                return Ok(e);
            }
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotFound(format!(
        "local unit for {} items in {} after {} rounds",
        items.len(),
        alg.id(),
        cfg.rounds
    )))
}
