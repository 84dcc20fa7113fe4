//! Concrete instances and the id registry.
//!
//! Ids: `K(G)`, `C[G]` for `G ∈ {Z, Z<n>, S3}`, `dual(X)`, `cop(X)`, and for
//! plain algebras additionally `C`, `M(n,X)`, `tensor(X,Y)`.

pub mod group_based;
pub mod groups;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraHandle, MatrixAlgebra, ScalarAlgebra, TensorAlgebra};
use crate::element::{Domain, Element, Key, Tensor};
use crate::error::{Error, Result};
use crate::hopf::{Cover, Coopposite, Functional, HopfAlgebra, RegularMha};
use crate::linalg;
use crate::scalar::Scalar;

pub use group_based::{function_algebra, group_algebra, FunctionAlgebra, GroupAlgebra};
pub use groups::GroupSpec;

/// Finite-dimensional Hopf algebra given by tables; covers are computed from
/// the full coproduct by multiplying one leg.
pub struct FiniteHopf {
    id: String,
    domain: Domain,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    product: Vec<Element>,
    coproduct: Vec<Tensor>,
    counit: Vec<Scalar>,
    antipode: Vec<Element>,
    antipode_inv: Vec<Element>,
    identity: Option<Element>,
}

impl FiniteHopf {
    /// `product` is row-major over `keys`; `coproduct[i] = Δ(keys[i])`.
    /// `antipode_inv` is computed by matrix inversion when not given.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: &str,
        domain: Domain,
        keys: Vec<Key>,
        product: Vec<Element>,
        coproduct: Vec<Tensor>,
        counit: Vec<Scalar>,
        antipode: Vec<Element>,
        antipode_inv: Option<Vec<Element>>,
    ) -> Result<Self> {
        let n = keys.len();
        let loc = format!("instance {}", id);
        if product.len() != n * n || coproduct.len() != n || counit.len() != n || antipode.len() != n {
            return Err(Error::malformed(&loc, "table sizes do not match the basis"));
        }
        let index: HashMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        if index.len() != n {
            return Err(Error::malformed(&loc, "duplicate basis keys"));
        }
        let antipode_inv = match antipode_inv {
            Some(v) => v,
            None => invert_on_basis(&domain, &keys, &antipode)
                .ok_or_else(|| Error::malformed(&loc, "antipode is not invertible"))?,
        };
        let mut h = FiniteHopf {
            id: id.into(),
            domain,
            keys,
            index,
            product,
            coproduct,
            counit,
            antipode,
            antipode_inv,
            identity: None,
        };
        h.identity = crate::algebra::find_identity(&h);
        if h.identity.is_none() {
            return Err(Error::malformed(&loc, "a finite-dimensional instance needs an identity"));
        }
        Ok(h)
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    /// Full `Δ(a)` of a basis element.
    pub fn coproduct_of(&self, k: &Key) -> Tensor {
        match self.index.get(k) {
            Some(&i) => self.coproduct[i].clone(),
            None => Tensor::zero(&[self.domain.clone(), self.domain.clone()]),
        }
    }

    fn leg_mul(&self, t: &Tensor, leg: usize, x: &Key, from_left: bool) -> Tensor {
        t.map_leg(leg, &self.domain, |k| if from_left { self.mul_basis(x, k) } else { self.mul_basis(k, x) })
    }

    /// Tabulates any finite Hopf instance (with identity) into a `FiniteHopf`.
    pub fn tabulate(h: &RegularMha) -> Result<FiniteHopf> {
        let keys = h.finite_basis().ok_or_else(|| Error::NotFiniteDimensional(h.id()))?;
        let one = h.identity().ok_or_else(|| Error::NotHopf(h.id()))?;
        let n = keys.len();
        let product: Vec<Element> = (0..n * n).map(|ij| h.mul_basis(&keys[ij / n], &keys[ij % n])).collect();
        let coproduct = keys.iter().map(|k| h.cover_unchecked(Cover::T1, &h.basis(k), &one)).collect();
        let counit = keys.iter().map(|k| h.counit_basis(k)).collect();
        let antipode = keys.iter().map(|k| h.antipode_basis(k)).collect();
        let antipode_inv = keys.iter().map(|k| h.antipode_inv_basis(k)).collect();
        FiniteHopf::new(&h.id(), h.domain().clone(), keys, product, coproduct, counit, antipode, Some(antipode_inv))
    }
}

/// Inverse of a linear map given by the images of basis keys.
pub fn invert_on_basis(domain: &Domain, keys: &[Key], images: &[Element]) -> Option<Vec<Element>> {
    let idx = linalg::KeyIndex::from_keys(keys.to_vec());
    let n = keys.len();
    // column j of M is the image of key j; rows of the dense matrix are images
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (j, img) in images.iter().enumerate() {
        for (k, c) in img.terms() {
            m[idx.get(k)?][j] = c.clone();
        }
    }
    let inv = linalg::invert(&m)?;
    Some(
        (0..n)
            .map(|j| Element::from_terms(domain, (0..n).map(|i| (keys[i].clone(), inv[i][j].clone()))))
            .collect(),
    )
}

impl Algebra for FiniteHopf {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        &self.domain
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        Some(self.keys.clone())
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        match (self.index.get(x), self.index.get(y)) {
            (Some(&i), Some(&j)) => self.product[i * self.keys.len() + j].clone(),
            _ => Element::zero(&self.domain),
        }
    }
    fn identity(&self) -> Option<Element> {
        self.identity.clone()
    }
}

impl HopfAlgebra for FiniteHopf {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        match c {
            Cover::T1 => self.leg_mul(&self.coproduct_of(a), 1, b, false),
            Cover::T2 => self.leg_mul(&self.coproduct_of(b), 0, a, true),
            Cover::T3 => self.leg_mul(&self.coproduct_of(a), 0, b, false),
            Cover::T4 => self.leg_mul(&self.coproduct_of(a), 1, b, true),
        }
    }
    fn counit_basis(&self, a: &Key) -> Scalar {
        self.index.get(a).map(|&i| self.counit[i].clone()).unwrap_or_else(Scalar::zero)
    }
    fn antipode_basis(&self, a: &Key) -> Element {
        self.index.get(a).map(|&i| self.antipode[i].clone()).unwrap_or_else(|| Element::zero(&self.domain))
    }
    fn antipode_inv_basis(&self, a: &Key) -> Element {
        self.index.get(a).map(|&i| self.antipode_inv[i].clone()).unwrap_or_else(|| Element::zero(&self.domain))
    }
}

type KeyToElement = Arc<dyn Fn(&Key) -> Element + Send + Sync>;

/// An instance with some structure maps replaced, used to seed failures.
pub struct Overridden {
    base: RegularMha,
    id: String,
    counit: Option<Functional>,
    antipode: Option<KeyToElement>,
    antipode_inv: Option<KeyToElement>,
}

impl Overridden {
    pub fn new(base: RegularMha, id: &str) -> Self {
        Overridden { base, id: id.into(), counit: None, antipode: None, antipode_inv: None }
    }

    pub fn with_counit(mut self, f: Functional) -> Self {
        self.counit = Some(f);
        self
    }

    pub fn with_antipode<F: Fn(&Key) -> Element + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.antipode = Some(Arc::new(f));
        self
    }

    pub fn with_antipode_inv<F: Fn(&Key) -> Element + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.antipode_inv = Some(Arc::new(f));
        self
    }
}

impl Algebra for Overridden {
    fn id(&self) -> String {
        self.id.clone()
    }
    fn domain(&self) -> &Domain {
        self.base.domain()
    }
    fn finite_basis(&self) -> Option<Vec<Key>> {
        self.base.finite_basis()
    }
    fn sample_basis(&self, radius: i64) -> Vec<Key> {
        self.base.sample_basis(radius)
    }
    fn mul_basis(&self, x: &Key, y: &Key) -> Element {
        self.base.mul_basis(x, y)
    }
    fn identity(&self) -> Option<Element> {
        self.base.identity()
    }
    fn local_unit_oracle(&self, items: &[Element]) -> Option<Element> {
        self.base.local_unit_oracle(items)
    }
}

impl HopfAlgebra for Overridden {
    fn cover_basis(&self, c: Cover, a: &Key, b: &Key) -> Tensor {
        self.base.cover_basis(c, a, b)
    }
    fn counit_basis(&self, a: &Key) -> Scalar {
        match &self.counit {
            Some(f) => f.on_basis(a),
            None => self.base.counit_basis(a),
        }
    }
    fn antipode_basis(&self, a: &Key) -> Element {
        match &self.antipode {
            Some(f) => f(a),
            None => self.base.antipode_basis(a),
        }
    }
    fn antipode_inv_basis(&self, a: &Key) -> Element {
        match &self.antipode_inv {
            Some(f) => f(a),
            None => self.base.antipode_inv_basis(a),
        }
    }
}

/// Splits `f(x,y)` at top-level commas.
pub(crate) fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

pub(crate) fn strip_call<'a>(id: &'a str, head: &str) -> Option<&'a str> {
    id.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

/// Resolves a built-in Hopf instance id.
pub fn hopf_instance(id: &str) -> Result<RegularMha> {
    let id = id.trim();
    let unknown = || Error::UnknownInstance(id.to_string());
    if let Some(g) = strip_call(id, "K") {
        return Ok(function_algebra(GroupSpec::parse(g).ok_or_else(unknown)?));
    }
    if let Some(g) = id.strip_prefix("C[").and_then(|s| s.strip_suffix(']')) {
        return Ok(group_algebra(GroupSpec::parse(g).ok_or_else(unknown)?));
    }
    if let Some(inner) = strip_call(id, "dual") {
        let base = hopf_instance(inner)?;
        return Ok(crate::aqg::finite_dual(&base)?.hopf);
    }
    if let Some(inner) = strip_call(id, "cop") {
        return Ok(RegularMha::new(Coopposite::new(hopf_instance(inner)?)));
    }
    Err(unknown())
}

/// Resolves any algebra id (Hopf instances included).
pub fn algebra_instance(id: &str) -> Result<AlgebraHandle> {
    let id = id.trim();
    if id == "C" {
        return Ok(Arc::new(ScalarAlgebra::new()));
    }
    if let Some(args) = strip_call(id, "M") {
        let parts = split_args(args);
        if parts.len() != 2 {
            return Err(Error::UnknownInstance(id.into()));
        }
        let n: usize = parts[0].parse().map_err(|_| Error::UnknownInstance(id.into()))?;
        if n == 0 {
            return Err(Error::UnknownInstance(id.into()));
        }
        return Ok(Arc::new(MatrixAlgebra::new(n, algebra_instance(parts[1])?)));
    }
    if let Some(args) = strip_call(id, "tensor") {
        let parts = split_args(args);
        if parts.len() != 2 {
            return Err(Error::UnknownInstance(id.into()));
        }
        return Ok(Arc::new(TensorAlgebra::new(algebra_instance(parts[0])?, algebra_instance(parts[1])?)));
    }
    Ok(hopf_instance(id)?.algebra())
}

/// A builtin id or a path to an instance JSON file.
pub fn resolve_hopf(spec: &str) -> Result<RegularMha> {
    if spec.ends_with(".json") || std::path::Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{}: {}", spec, e)))?;
        return load_instance_json(&text);
    }
    hopf_instance(spec)
}

pub(crate) fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::malformed(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub(crate) fn field<'a>(v: &'a Value, name: &str, loc: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::malformed(loc, format!("missing field `{}`", name)))
}

pub(crate) fn key_of(v: &Value, loc: &str) -> Result<Key> {
    match v {
        Value::String(s) => Key::parse(s),
        Value::Number(n) => n.as_i64().map(Key::Int).ok_or_else(|| Error::malformed(loc, "key out of range")),
        _ => Err(Error::malformed(loc, "key must be a string or integer")),
    }
}

/// Tensor rows `[k1, k2, re_num, re_den, im_num, im_den]` (or `[k1, k2, n]`).
fn tensor_from_json(legs: &[Domain], v: &Value, loc: &str) -> Result<Tensor> {
    let rows = v.as_array().ok_or_else(|| Error::malformed(loc, "expected an array of rows"))?;
    let mut t = Tensor::zero(legs);
    let n = legs.len();
    for (i, row) in rows.iter().enumerate() {
        let rloc = format!("{}[{}]", loc, i);
        let cols = row.as_array().ok_or_else(|| Error::malformed(&rloc, "expected an array"))?;
        if cols.len() != n + 1 && cols.len() != n + 4 {
            return Err(Error::malformed(&rloc, format!("expected {} keys and a coefficient", n)));
        }
        let keys = cols[..n].iter().map(|c| key_of(c, &rloc)).collect::<Result<Vec<_>>>()?;
        let mut coeff_row = vec![Value::from(0)];
        coeff_row.extend(cols[n..].iter().cloned());
        let c = Element::from_json(&Domain::new("coeff"), &Value::Array(vec![Value::Array(coeff_row)]))
            .map_err(|_| Error::malformed(&rloc, "bad coefficient"))?
            .coeff(&Key::Int(0));
        t.add_term(keys, &c);
    }
    Ok(t)
}

/// Loads an instance description.
///
/// Either `{"id", "rule": <builtin id>, "counit"?, "antipode"?}` where the
/// overrides are `"zero"` or a per-key table, or explicit tables
/// `{"id", "basis", "product", "coproduct", "counit", "antipode"}`.
pub fn load_instance_json(text: &str) -> Result<RegularMha> {
    let v = parse_json(text)?;
    let id = v.get("id").and_then(Value::as_str).unwrap_or("custom").to_string();
    if let Some(rule) = v.get("rule") {
        let rule = rule.as_str().ok_or_else(|| Error::malformed("rule", "expected a builtin id string"))?;
        let base = hopf_instance(rule)?;
        let mut inst = Overridden::new(base.clone(), &id);
        if let Some(c) = v.get("counit") {
            inst = inst.with_counit(functional_override(c, "counit")?);
        }
        if let Some(s) = v.get("antipode") {
            let f = map_override(base.domain(), s, "antipode")?;
            inst = inst.with_antipode(move |k| f(k));
        }
        if let Some(s) = v.get("antipode_inv") {
            let f = map_override(base.domain(), s, "antipode_inv")?;
            inst = inst.with_antipode_inv(move |k| f(k));
        }
        return Ok(RegularMha::new(inst));
    }
    let domain = Domain::new(&id);
    let basis = field(&v, "basis", "instance")?
        .as_array()
        .ok_or_else(|| Error::malformed("basis", "expected an array of keys"))?
        .iter()
        .enumerate()
        .map(|(i, k)| key_of(k, &format!("basis[{}]", i)))
        .collect::<Result<Vec<Key>>>()?;
    let n = basis.len();
    if n == 0 {
        return Err(Error::malformed("basis", "empty basis"));
    }
    let index: HashMap<Key, usize> = basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let lookup = |k: &Key, loc: &str| -> Result<usize> {
        index.get(k).copied().ok_or_else(|| Error::malformed(loc, format!("key {} not in basis", k)))
    };

    let mut product = vec![Element::zero(&domain); n * n];
    let prows = field(&v, "product", "instance")?
        .as_array()
        .ok_or_else(|| Error::malformed("product", "expected an array of {left, right, value}"))?;
    for (i, row) in prows.iter().enumerate() {
        let loc = format!("product[{}]", i);
        let l = lookup(&key_of(field(row, "left", &loc)?, &loc)?, &loc)?;
        let r = lookup(&key_of(field(row, "right", &loc)?, &loc)?, &loc)?;
        let val = Element::from_json(&domain, field(row, "value", &loc)?)
            .map_err(|e| Error::malformed(format!("{}.value", loc), e.to_string()))?;
        product[l * n + r] = val;
    }

    let legs = [domain.clone(), domain.clone()];
    let mut coproduct = vec![Tensor::zero(&legs); n];
    let crows = field(&v, "coproduct", "instance")?
        .as_array()
        .ok_or_else(|| Error::malformed("coproduct", "expected an array of {key, value}"))?;
    for (i, row) in crows.iter().enumerate() {
        let loc = format!("coproduct[{}]", i);
        let k = lookup(&key_of(field(row, "key", &loc)?, &loc)?, &loc)?;
        coproduct[k] = tensor_from_json(&legs, field(row, "value", &loc)?, &format!("{}.value", loc))?;
    }

    let counit_el = Element::from_json(&domain, field(&v, "counit", "instance")?)
        .map_err(|e| Error::malformed("counit", e.to_string()))?;
    let counit: Vec<Scalar> = basis.iter().map(|k| counit_el.coeff(k)).collect();

    let mut antipode = vec![Element::zero(&domain); n];
    let arows = field(&v, "antipode", "instance")?
        .as_array()
        .ok_or_else(|| Error::malformed("antipode", "expected an array of {key, value}"))?;
    for (i, row) in arows.iter().enumerate() {
        let loc = format!("antipode[{}]", i);
        let k = lookup(&key_of(field(row, "key", &loc)?, &loc)?, &loc)?;
        antipode[k] = Element::from_json(&domain, field(row, "value", &loc)?)
            .map_err(|e| Error::malformed(format!("{}.value", loc), e.to_string()))?;
    }
    let h = FiniteHopf::new(&id, domain, basis, product, coproduct, counit, antipode, None)?;
    Ok(RegularMha::new(h))
}

fn functional_override(v: &Value, loc: &str) -> Result<Functional> {
    if v.as_str() == Some("zero") {
        return Ok(Functional::new(|_| Scalar::zero()));
    }
    let e = Element::from_json(&Domain::new("functional"), v).map_err(|e| Error::malformed(loc, e.to_string()))?;
    Ok(Functional::new(move |k| e.coeff(k)))
}

fn map_override(domain: &Domain, v: &Value, loc: &str) -> Result<KeyToElement> {
    let d = domain.clone();
    if v.as_str() == Some("zero") {
        return Ok(Arc::new(move |_| Element::zero(&d)));
    }
    let rows = v.as_array().ok_or_else(|| Error::malformed(loc, "expected \"zero\" or an array of {key, value}"))?;
    let mut table: HashMap<Key, Element> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        let rloc = format!("{}[{}]", loc, i);
        let k = key_of(field(row, "key", &rloc)?, &rloc)?;
        let e = Element::from_json(domain, field(row, "value", &rloc)?)
            .map_err(|e| Error::malformed(format!("{}.value", rloc), e.to_string()))?;
        table.insert(k, e);
    }
    Ok(Arc::new(move |k| table.get(k).cloned().unwrap_or_else(|| Element::zero(&d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify::verify_mha_axioms;
    use crate::report::Status;

    #[test]
    fn registry_ids() {
        for id in ["K(Z2)", "K(Z)", "C[Z2]", "C[S3]", "K(S3)", "C[Z]", "cop(K(S3))"] {
            assert_eq!(hopf_instance(id).unwrap().id(), id);
        }
        assert!(matches!(hopf_instance("K(Q)"), Err(Error::UnknownInstance(_))));
        assert_eq!(crate::algebra::dim(algebra_instance("M(2,C[Z2])").unwrap().as_ref()), Some(8));
        assert_eq!(crate::algebra::dim(algebra_instance("tensor(C[Z2],K(S3))").unwrap().as_ref()), Some(12));
    }

    #[test]
    fn tabulated_matches_closed_form() {
        let h = hopf_instance("C[S3]").unwrap();
        let t = RegularMha::new(FiniteHopf::tabulate(&h).unwrap());
        let keys = h.finite_basis().unwrap();
        for a in &keys {
            for b in &keys {
                for c in Cover::ALL {
                    assert_eq!(h.cover_basis(c, a, b).scale(&Scalar::from_int(1)), {
                        let x = t.cover_basis(c, a, b);
                        let mut y = Tensor::zero(&h.legs2());
                        for (ks, v) in x.terms() {
                            y.add_term(ks.clone(), v);
                        }
                        y
                    });
                }
            }
        }
    }

    #[test]
    fn corrupted_antipode_fails_antipode_laws() {
        let json = r#"{"id": "corrupt", "rule": "C[Z2]", "antipode": "zero"}"#;
        let h = load_instance_json(json).unwrap();
        let r = verify_mha_axioms(&h, &h.finite_basis().unwrap());
        assert_eq!(r.get("antipode-law-left").unwrap().status, Status::Fail);
        assert_eq!(r.get("antipode-law-right").unwrap().status, Status::Fail);
        assert!(r.get("antipode-law-left").unwrap().witness.is_some());
        assert_eq!(r.get("coassociativity").unwrap().status, Status::Pass);
    }

    #[test]
    fn explicit_tables_load() {
        // C[Z2] written out by hand
        let json = r#"{
          "id": "hand",
          "basis": [0, 1],
          "product": [
            {"left": 0, "right": 0, "value": [[0, 1]]},
            {"left": 0, "right": 1, "value": [[1, 1]]},
            {"left": 1, "right": 0, "value": [[1, 1]]},
            {"left": 1, "right": 1, "value": [[0, 1]]}
          ],
          "coproduct": [
            {"key": 0, "value": [[0, 0, 1]]},
            {"key": 1, "value": [[1, 1, 1]]}
          ],
          "counit": [[0, 1], [1, 1]],
          "antipode": [{"key": 0, "value": [[0, 1]]}, {"key": 1, "value": [[1, 1]]}]
        }"#;
        let h = load_instance_json(json).unwrap();
        assert!(verify_mha_axioms(&h, &h.finite_basis().unwrap()).all_passed());
    }

    #[test]
    fn malformed_json_has_locations() {
        match load_instance_json("{\"basis\": [0], \"product\": [{\"left\": 5}]}") {
            Err(Error::MalformedSpec { location, .. }) => assert_eq!(location, "product[0]"),
            other => panic!("{:?}", other.map(|h| h.id())),
        }
        match load_instance_json("{\n  \"id\": }") {
            Err(Error::MalformedSpec { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{:?}", other.map(|h| h.id())),
        }
    }
}
