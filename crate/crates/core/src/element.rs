//! Finite-support vectors and tensors over countable basis-index domains.
//!
//! An [`Element`] is a canonical (zero-free) map from [`Key`]s to [`Scalar`]s,
//! tagged with the [`Domain`] its keys belong to. Two elements are equal iff
//! their maps and domains are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index-domain tag. Keys from different domains never compare equal
/// because every container carries its domain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain(Arc<str>);

impl Domain {
    pub fn new(name: &str) -> Self {
        Domain(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Domain({})", self.0)
    }
}

/// Opaque basis label: an integer (group element, matrix index) or a tuple
/// of keys (tensor and smash bases, matrix units).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    Int(i64),
    Tup(Arc<[Key]>),
}

impl Key {
    pub fn pair(a: &Key, b: &Key) -> Key {
        Key::Tup(Arc::from(vec![a.clone(), b.clone()]))
    }

    pub fn tuple(items: Vec<Key>) -> Key {
        Key::Tup(Arc::from(items))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Key::Int(n) => Some(*n),
            Key::Tup(_) => None,
        }
    }

    pub fn parts(&self) -> &[Key] {
        match self {
            Key::Tup(items) => items,
            Key::Int(_) => std::slice::from_ref(self),
        }
    }

    /// Component `i` of a tuple key; panics on integer keys.
    pub fn at(&self, i: usize) -> &Key {
        match self {
            Key::Tup(items) => &items[i],
            Key::Int(_) => panic!("key {} is not a tuple", self),
        }
    }

    /// Largest absolute integer inside the key, used to size basis samples.
    pub fn magnitude(&self) -> i64 {
        match self {
            Key::Int(n) => n.abs(),
            Key::Tup(items) => items.iter().map(Key::magnitude).max().unwrap_or(0),
        }
    }

    pub fn parse(s: &str) -> Result<Key> {
        let mut p = KeyParser { s: s.as_bytes(), pos: 0 };
        let k = p.key()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::malformed(format!("key `{}`", s), "trailing characters"));
        }
        Ok(k)
    }
}

struct KeyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl KeyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::malformed(
            format!("key `{}` offset {}", String::from_utf8_lossy(self.s), self.pos),
            msg,
        )
    }

    fn key(&mut self) -> Result<Key> {
        self.skip_ws();
        if self.pos >= self.s.len() {
            return Err(self.err("unexpected end"));
        }
        if self.s[self.pos] == b'(' {
            self.pos += 1;
            let mut items = Vec::new();
            loop {
                items.push(self.key()?);
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
            return Ok(Key::tuple(items));
        }
        let start = self.pos;
        if self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<i64>().map(Key::Int).map_err(|_| self.err("expected integer"))
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(n) => write!(f, "{}", n),
            Key::Tup(items) => {
                write!(f, "(")?;
                for (i, k) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", k)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Key {
    fn from(n: i64) -> Key {
        Key::Int(n)
    }
}

/// Finite linear combination of basis keys.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    domain: Domain,
    terms: BTreeMap<Key, Scalar>,
}

impl Element {
    pub fn zero(domain: &Domain) -> Self {
        Element { domain: domain.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(domain: &Domain, key: Key) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        Element { domain: domain.clone(), terms }
    }

    /// Sums duplicate keys and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Key, Scalar)>>(domain: &Domain, terms: I) -> Self {
        let mut e = Element::zero(domain);
        for (k, c) in terms {
            e.add_term(k, &c);
        }
        e
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Key, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, key: &Key) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single `(key, coefficient)` if the element is a scalar multiple of a basis vector.
    pub fn as_monomial(&self) -> Option<(&Key, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, key: Key, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c·other`; panics on domain mismatch (use [`Element::check_domain`]
    /// at API boundaries).
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        assert_eq!(self.domain, other.domain, "domain mismatch in add_scaled");
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in &other.terms {
            if unit {
                self.add_term(k.clone(), v);
            } else {
                self.add_term(k.clone(), &(v * c));
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.domain);
        }
        Element {
            domain: self.domain.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn check_domain(&self, domain: &Domain) -> Result<()> {
        if &self.domain == domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: domain.name().to_string(),
                found: self.domain.name().to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        other.check_domain(&self.domain)?;
        Ok(self + other)
    }

    /// The same coefficients read in another domain (used when one space is
    /// viewed as the underlying space of another algebra).
    pub fn relabel(&self, domain: &Domain) -> Element {
        Element { domain: domain.clone(), terms: self.terms.clone() }
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<F>(&self, target: &Domain, mut f: F) -> Element
    where
        F: FnMut(&Key) -> Element,
    {
        let mut out = Element::zero(target);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Applies a linear functional given on basis keys.
    pub fn eval_linear<F>(&self, mut f: F) -> Scalar
    where
        F: FnMut(&Key) -> Scalar,
    {
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    /// Canonical JSON: sorted `[key, re_num, re_den, im_num, im_den]` rows.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    let (a, b, x, y) = c.parts();
                    Value::Array(vec![
                        Value::String(k.to_string()),
                        int_json(&a),
                        int_json(&b),
                        int_json(&x),
                        int_json(&y),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(domain: &Domain, v: &Value) -> Result<Element> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::malformed("element", "expected an array of coefficient rows"))?;
        let mut e = Element::zero(domain);
        for (i, row) in rows.iter().enumerate() {
            let loc = format!("element row {}", i);
            let cols = row
                .as_array()
                .filter(|c| c.len() == 5 || c.len() == 2)
                .ok_or_else(|| Error::malformed(&loc, "expected [key, re_num, re_den, im_num, im_den]"))?;
            let key = match &cols[0] {
                Value::String(s) => Key::parse(s)?,
                Value::Number(n) => Key::Int(
                    n.as_i64().ok_or_else(|| Error::malformed(&loc, "integer key out of range"))?,
                ),
                _ => return Err(Error::malformed(&loc, "key must be a string or integer")),
            };
            let c = if cols.len() == 2 {
                Scalar::from_parts(json_int(&cols[1], &loc)?, 1.into(), 0.into(), 1.into())
            } else {
                Scalar::from_parts(
                    json_int(&cols[1], &loc)?,
                    json_int(&cols[2], &loc)?,
                    json_int(&cols[3], &loc)?,
                    json_int(&cols[4], &loc)?,
                )
            }
            .ok_or_else(|| Error::malformed(&loc, "zero denominator"))?;
            e.add_term(key, &c);
        }
        Ok(e)
    }
}

fn int_json(n: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn json_int(v: &Value, loc: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::malformed(loc, "non-integer number")),
        Value::String(s) => s.parse::<BigInt>().map_err(|_| Error::malformed(loc, "bad integer string")),
        _ => Err(Error::malformed(loc, "expected integer")),
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{}]", k)?;
            } else {
                write!(f, "({})[{}]", c, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.domain, self)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &Scalar::one());
        e
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &Scalar::from_int(-1));
        e
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Finite linear combination of elementary tensors `k₁⊗…⊗kₙ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    legs: Arc<[Domain]>,
    terms: BTreeMap<Vec<Key>, Scalar>,
}

impl Tensor {
    pub fn zero(legs: &[Domain]) -> Self {
        Tensor { legs: Arc::from(legs.to_vec()), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        Tensor { legs: self.legs.clone(), terms: BTreeMap::new() }
    }

    /// `x₁⊗…⊗xₙ`.
    pub fn product(factors: &[&Element]) -> Self {
        let legs: Vec<Domain> = factors.iter().map(|e| e.domain().clone()).collect();
        let mut acc: Vec<(Vec<Key>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for f in factors {
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (ks, c) in &acc {
                for (k, v) in f.terms() {
                    let mut ks2 = ks.clone();
                    ks2.push(k.clone());
                    next.push((ks2, c * v));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero(&legs);
        for (ks, c) in acc {
            t.add_term(ks, &c);
        }
        t
    }

    pub fn basis(legs: &[Domain], keys: Vec<Key>) -> Self {
        let mut t = Tensor::zero(legs);
        t.add_term(keys, &Scalar::one());
        t
    }

    pub fn legs(&self) -> &[Domain] {
        &self.legs
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Key>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, keys: &[Key]) -> Scalar {
        self.terms.get(keys).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, keys: Vec<Key>, c: &Scalar) {
        debug_assert_eq!(keys.len(), self.legs.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(keys) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        assert_eq!(self.legs, other.legs, "tensor leg mismatch");
        if c.is_zero() {
            return;
        }
        for (ks, v) in &other.terms {
            self.add_term(ks.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut t = self.zero_like();
        t.add_scaled(self, c);
        t
    }

    /// Exchanges legs `i` and `j` (0-based). Involutive.
    pub fn flip(&self, i: usize, j: usize) -> Result<Tensor> {
        let n = self.arity();
        for p in [i, j] {
            if p >= n {
                return Err(Error::PositionOutOfRange { position: p, arity: n });
            }
        }
        let mut legs = self.legs.to_vec();
        legs.swap(i, j);
        let mut t = Tensor::zero(&legs);
        for (ks, c) in &self.terms {
            let mut ks2 = ks.clone();
            ks2.swap(i, j);
            t.terms.insert(ks2, c.clone());
        }
        Ok(t)
    }

    /// Applies a linear map (given on basis keys) to leg `i`.
    pub fn map_leg<F>(&self, i: usize, target: &Domain, mut f: F) -> Tensor
    where
        F: FnMut(&Key) -> Element,
    {
        let mut legs = self.legs.to_vec();
        legs[i] = target.clone();
        let mut t = Tensor::zero(&legs);
        let mut cache: BTreeMap<Key, Element> = BTreeMap::new();
        for (ks, c) in &self.terms {
            let img = cache.entry(ks[i].clone()).or_insert_with(|| f(&ks[i]));
            for (k, v) in img.terms() {
                let mut ks2 = ks.clone();
                ks2[i] = k.clone();
                t.add_term(ks2, &(c * v));
            }
        }
        t
    }

    /// Applies a linear functional to leg `i`, removing it.
    pub fn contract_leg<F>(&self, i: usize, mut f: F) -> Tensor
    where
        F: FnMut(&Key) -> Scalar,
    {
        let mut legs = self.legs.to_vec();
        legs.remove(i);
        let mut t = Tensor::zero(&legs);
        for (ks, c) in &self.terms {
            let v = f(&ks[i]);
            if v.is_zero() {
                continue;
            }
            let mut ks2 = ks.clone();
            ks2.remove(i);
            t.add_term(ks2, &(c * &v));
        }
        t
    }

    /// Replaces legs `i, i+1` by the image of a bilinear map on keys.
    pub fn merge_legs<F>(&self, i: usize, target: &Domain, mut f: F) -> Tensor
    where
        F: FnMut(&Key, &Key) -> Element,
    {
        let mut legs = self.legs.to_vec();
        legs.remove(i + 1);
        legs[i] = target.clone();
        let mut t = Tensor::zero(&legs);
        for (ks, c) in &self.terms {
            let img = f(&ks[i], &ks[i + 1]);
            for (k, v) in img.terms() {
                let mut ks2 = ks.clone();
                ks2.remove(i + 1);
                ks2[i] = k.clone();
                t.add_term(ks2, &(c * v));
            }
        }
        t
    }

    /// Applies a linear map `keys -> Tensor` term by term.
    pub fn map_terms<F>(&self, legs: &[Domain], mut f: F) -> Tensor
    where
        F: FnMut(&[Key]) -> Tensor,
    {
        let mut t = Tensor::zero(legs);
        for (ks, c) in &self.terms {
            t.add_scaled(&f(ks), c);
        }
        t
    }

    /// `self ⊗ e` (appends a leg).
    pub fn append(&self, e: &Element) -> Tensor {
        let mut legs = self.legs.to_vec();
        legs.push(e.domain().clone());
        let mut t = Tensor::zero(&legs);
        for (ks, c) in &self.terms {
            for (k, v) in e.terms() {
                let mut ks2 = ks.clone();
                ks2.push(k.clone());
                t.add_term(ks2, &(c * v));
            }
        }
        t
    }

    /// Arity-1 tensors are elements.
    pub fn into_element(self) -> Element {
        assert_eq!(self.arity(), 1, "into_element on arity {}", self.arity());
        let domain = self.legs[0].clone();
        Element::from_terms(&domain, self.terms.into_iter().map(|(mut ks, c)| (ks.pop().unwrap(), c)))
    }

    /// Packs all legs into one element whose keys are tuples.
    pub fn pack(&self, domain: &Domain) -> Element {
        Element::from_terms(domain, self.terms.iter().map(|(ks, c)| (Key::tuple(ks.clone()), c.clone())))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(ks, c)| {
                    let (a, b, x, y) = c.parts();
                    let mut row: Vec<Value> = ks.iter().map(|k| Value::String(k.to_string())).collect();
                    row.extend([int_json(&a), int_json(&b), int_json(&x), int_json(&y)]);
                    Value::Array(row)
                })
                .collect(),
        )
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (ks, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({})", c)?;
            }
            let parts: Vec<String> = ks.iter().map(|k| format!("[{}]", k)).collect();
            write!(f, "{}", parts.join("⊗"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<&str> = self.legs.iter().map(|d| d.name()).collect();
        write!(f, "{}:{}", legs.join("⊗"), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Domain {
        Domain::new("K(Z2)")
    }

    #[test]
    fn canonical_zero_free() {
        let mut e = Element::basis(&d(), Key::Int(0));
        e.add_term(Key::Int(0), &Scalar::from_int(-1));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero(&d()));
    }

    #[test]
    fn key_roundtrip() {
        for s in ["3", "-12", "(0,1)", "((1,2),-3,(4))"] {
            assert_eq!(Key::parse(s).unwrap().to_string(), s);
        }
        assert!(Key::parse("(1,").is_err());
    }

    #[test]
    fn flip_elementary() {
        let d0 = Element::basis(&d(), Key::Int(0));
        let d1 = Element::basis(&d(), Key::Int(1));
        let t = Tensor::product(&[&d0, &d1]);
        assert_eq!(t.flip(0, 1).unwrap(), Tensor::product(&[&d1, &d0]));
        assert!(matches!(t.flip(0, 2), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn domains_do_not_mix() {
        let a = Element::basis(&d(), Key::Int(0));
        let b = Element::basis(&Domain::new("C[Z2]"), Key::Int(0));
        assert_ne!(a, b);
        assert!(matches!(a.checked_add(&b), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let e = Element::from_terms(&d(), [(Key::Int(0), Scalar::ratio(1, 2)), (Key::Int(-1), Scalar::i())]);
        let back = Element::from_json(&d(), &e.to_json()).unwrap();
        assert_eq!(back, e);
    }
}
