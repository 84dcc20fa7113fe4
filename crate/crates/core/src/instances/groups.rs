//! Groups as opaque keys with a multiplication rule.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::element::Key;
use crate::report::{wkey, Check, CheckResult};

type BinOp = Arc<dyn Fn(&Key, &Key) -> Key + Send + Sync>;
type UnOp = Arc<dyn Fn(&Key) -> Key + Send + Sync>;
type Window = Arc<dyn Fn(i64) -> Vec<Key> + Send + Sync>;

#[derive(Clone)]
pub struct GroupSpec {
    name: String,
    identity: Key,
    elements: Option<Vec<Key>>,
    mul: BinOp,
    inv: UnOp,
    window: Window,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self.name)
    }
}

/// The six permutations of {0,1,2} in lexicographic order; key `i` is `PERMS[i]`.
const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn perm_index(p: [usize; 3]) -> i64 {
    PERMS.iter().position(|q| *q == p).expect("permutation") as i64
}

impl GroupSpec {
    pub fn new(
        name: &str,
        identity: Key,
        elements: Option<Vec<Key>>,
        mul: impl Fn(&Key, &Key) -> Key + Send + Sync + 'static,
        inv: impl Fn(&Key) -> Key + Send + Sync + 'static,
        window: impl Fn(i64) -> Vec<Key> + Send + Sync + 'static,
    ) -> Self {
        GroupSpec {
            name: name.into(),
            identity,
            elements,
            mul: Arc::new(mul),
            inv: Arc::new(inv),
            window: Arc::new(window),
        }
    }

    /// ℤ/n with keys `0..n`.
    pub fn cyclic(n: i64) -> Self {
        assert!(n > 0);
        let elems: Vec<Key> = (0..n).map(Key::Int).collect();
        let all = elems.clone();
        GroupSpec::new(
            &format!("Z{}", n),
            Key::Int(0),
            Some(elems),
            move |a, b| Key::Int((a.as_int().unwrap() + b.as_int().unwrap()).rem_euclid(n)),
            move |a| Key::Int((-a.as_int().unwrap()).rem_euclid(n)),
            move |_| all.clone(),
        )
    }

    /// ℤ, windowed to `−r..=r`.
    pub fn integers() -> Self {
        GroupSpec::new(
            "Z",
            Key::Int(0),
            None,
            |a, b| Key::Int(a.as_int().unwrap() + b.as_int().unwrap()),
            |a| Key::Int(-a.as_int().unwrap()),
            |r| (-r..=r).map(Key::Int).collect(),
        )
    }

    /// S₃ acting on {0,1,2}; `p·q = p∘q` (q applied first).
    pub fn s3() -> Self {
        let elems: Vec<Key> = (0..6).map(Key::Int).collect();
        let all = elems.clone();
        GroupSpec::new(
            "S3",
            Key::Int(0),
            Some(elems),
            |a, b| {
                let p = PERMS[a.as_int().unwrap() as usize];
                let q = PERMS[b.as_int().unwrap() as usize];
                Key::Int(perm_index([p[q[0]], p[q[1]], p[q[2]]]))
            },
            |a| {
                let p = PERMS[a.as_int().unwrap() as usize];
                let mut inv = [0; 3];
                for (i, &pi) in p.iter().enumerate() {
                    inv[pi] = i;
                }
                Key::Int(perm_index(inv))
            },
            move |_| all.clone(),
        )
    }

    /// Finite group from a Cayley table over keys `0..n` (row-major, `table[i][j] = i·j`).
    pub fn from_table(name: &str, table: Vec<Vec<i64>>) -> crate::error::Result<Self> {
        let n = table.len();
        let loc = format!("group {}", name);
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(crate::error::Error::malformed(&loc, "table must be square and nonempty"));
        }
        if table.iter().flatten().any(|&v| v < 0 || v as usize >= n) {
            return Err(crate::error::Error::malformed(&loc, "table entry out of range"));
        }
        let e = (0..n)
            .find(|&i| (0..n).all(|j| table[i][j] as usize == j && table[j][i] as usize == j))
            .ok_or_else(|| crate::error::Error::malformed(&loc, "no identity element"))?;
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| table[i][j] as usize == e && table[j][i] as usize == e)
                .ok_or_else(|| crate::error::Error::malformed(&loc, format!("element {} has no inverse", i)))?;
        }
        let elems: Vec<Key> = (0..n as i64).map(Key::Int).collect();
        let all = elems.clone();
        let t = Arc::new(table);
        Ok(GroupSpec::new(
            name,
            Key::Int(e as i64),
            Some(elems),
            move |a, b| Key::Int(t[a.as_int().unwrap() as usize][b.as_int().unwrap() as usize]),
            move |a| Key::Int(inv[a.as_int().unwrap() as usize] as i64),
            move |_| all.clone(),
        ))
    }

    /// `Z`, `Z<n>` or `S3`.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "Z" => Some(GroupSpec::integers()),
            "S3" => Some(GroupSpec::s3()),
            _ => {
                let n: i64 = name.strip_prefix('Z')?.parse().ok()?;
                (n > 0).then(|| GroupSpec::cyclic(n))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> &Key {
        &self.identity
    }

    pub fn elements(&self) -> Option<&[Key]> {
        self.elements.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.elements.is_some()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn mul(&self, a: &Key, b: &Key) -> Key {
        (self.mul)(a, b)
    }

    pub fn inv(&self, a: &Key) -> Key {
        (self.inv)(a)
    }

    pub fn window(&self, radius: i64) -> Vec<Key> {
        (self.window)(radius)
    }

    /// Group axioms on the given sample.
    pub fn verify(&self, sample: &[Key]) -> CheckResult {
        let mut c = Check::new("group-axioms", &[self.name.clone()], !self.is_finite());
        let e = &self.identity;
        for a in sample {
            let ok = &self.mul(e, a) == a
                && &self.mul(a, e) == a
                && &self.mul(a, &self.inv(a)) == e
                && &self.inv(&self.inv(a)) == a;
            c.case(ok, || json!({"element": wkey(a)}));
            for b in sample {
                let ab = self.mul(a, b);
                for d in sample {
                    let ok = self.mul(&ab, d) == self.mul(a, &self.mul(b, d));
                    c.case(ok, || json!({"triple": [wkey(a), wkey(b), wkey(d)]}));
                }
            }
        }
        c.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group() {
        let g = GroupSpec::s3();
        let all = g.elements().unwrap().to_vec();
        assert!(g.verify(&all).passed());
        let (t, c) = (Key::Int(2), Key::Int(3));
        assert_ne!(g.mul(&t, &c), g.mul(&c, &t));
    }

    #[test]
    fn cyclic_and_integers() {
        let z3 = GroupSpec::cyclic(3);
        assert_eq!(z3.mul(&Key::Int(2), &Key::Int(2)), Key::Int(1));
        assert_eq!(z3.inv(&Key::Int(1)), Key::Int(2));
        let z = GroupSpec::integers();
        assert!(z.verify(&z.window(3)).passed());
        assert_eq!(z.window(2).len(), 5);
    }

    #[test]
    fn table_groups() {
        let g = GroupSpec::from_table("V", vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.inv(&Key::Int(1)), Key::Int(1));
        assert!(GroupSpec::from_table("bad", vec![vec![0, 0], vec![0, 0]]).is_err());
    }
}
