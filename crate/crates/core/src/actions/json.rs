//! Action descriptions in JSON:
//! `{"algebra_id", "space_id", "rule", "table"?}` where `rule` is one of
//! `translation`, `grading`, `adjoint`, `trivial`, `table`, or
//! `{"inner": "identity" | "counit" | [{"a": key, "value": element}]}`.

use std::collections::HashMap;

use serde_json::Value;

use crate::actions::{
    adjoint, gamma_counit, gamma_from_elements, gamma_identity, grading, inner_action_from, table_action, translation,
    trivial, ActionSpec,
};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::instances::{algebra_instance, field, hopf_instance, key_of, parse_json, strip_call, GroupSpec};

fn group_of(id: &str, head: &str, loc: &str) -> Result<GroupSpec> {
    let inner = if head == "K" {
        strip_call(id, "K")
    } else {
        id.strip_prefix("C[").and_then(|s| s.strip_suffix(']'))
    };
    inner
        .and_then(GroupSpec::parse)
        .ok_or_else(|| Error::malformed(loc, format!("`{}` is not of the form {}(G)", id, head)))
}

fn str_field<'a>(v: &'a Value, name: &str) -> Result<&'a str> {
    field(v, name, "action")?
        .as_str()
        .ok_or_else(|| Error::malformed(format!("action.{}", name), "expected a string"))
}

/// Parses an action description.
pub fn load_action_json(text: &str) -> Result<ActionSpec> {
    let v = parse_json(text)?;
    action_from_value(&v)
}

/// Reads a file, or accepts the short forms `translation:G`, `grading:G`,
/// `adjoint:<hopf id>` and `trivial:<hopf id>:<algebra id>`.
pub fn resolve_action(spec: &str) -> Result<ActionSpec> {
    if spec.ends_with(".json") || std::path::Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{}: {}", spec, e)))?;
        return load_action_json(&text);
    }
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let unknown = || Error::UnknownInstance(spec.to_string());
    match parts.as_slice() {
        ["translation", g] => Ok(translation(GroupSpec::parse(g).ok_or_else(unknown)?)),
        ["grading", g] => Ok(grading(GroupSpec::parse(g).ok_or_else(unknown)?)),
        ["adjoint", h] => Ok(adjoint(&hopf_instance(h)?)),
        ["trivial", h, r] => Ok(trivial(&hopf_instance(h)?, &algebra_instance(r)?)),
        _ => Err(unknown()),
    }
}

pub fn action_from_value(v: &Value) -> Result<ActionSpec> {
    let a_id = str_field(v, "algebra_id")?;
    let r_id = str_field(v, "space_id")?;
    let rule = field(v, "rule", "action")?;
    match rule {
        Value::String(s) => match s.as_str() {
            "translation" => {
                let g = group_of(a_id, "C", "action.algebra_id")?;
                let g2 = group_of(r_id, "K", "action.space_id")?;
                if g.name() != g2.name() {
                    return Err(Error::malformed("action.space_id", "translation needs C[G] acting on K(G)"));
                }
                Ok(translation(g))
            }
            "grading" => {
                let g = group_of(a_id, "K", "action.algebra_id")?;
                let g2 = group_of(r_id, "C", "action.space_id")?;
                if g.name() != g2.name() {
                    return Err(Error::malformed("action.space_id", "grading needs K(G) acting on C[G]"));
                }
                Ok(grading(g))
            }
            "adjoint" => {
                if a_id != r_id {
                    return Err(Error::malformed("action.space_id", "the adjoint action acts on the algebra itself"));
                }
                Ok(adjoint(&hopf_instance(a_id)?))
            }
            "trivial" => Ok(trivial(&hopf_instance(a_id)?, &algebra_instance(r_id)?)),
            "table" => {
                let h = hopf_instance(a_id)?;
                let r = algebra_instance(r_id)?;
                let rows = field(v, "table", "action")?
                    .as_array()
                    .ok_or_else(|| Error::malformed("action.table", "expected an array"))?;
                let mut table = HashMap::new();
                for (i, row) in rows.iter().enumerate() {
                    let loc = format!("action.table[{}]", i);
                    let a = key_of(field(row, "a", &loc)?, &loc)?;
                    let x = key_of(field(row, "x", &loc)?, &loc)?;
                    let val = Element::from_json(r.domain(), field(row, "value", &loc)?)
                        .map_err(|e| Error::malformed(&loc, e.to_string()))?;
                    table.insert((a, x), val);
                }
                Ok(table_action("table", &h, &r, table))
            }
            other => Err(Error::malformed("action.rule", format!("unknown rule `{}`", other))),
        },
        Value::Object(m) if m.contains_key("inner") => {
            let h = hopf_instance(a_id)?;
            let r = algebra_instance(r_id)?;
            let gamma = match &m["inner"] {
                Value::String(s) if s == "identity" => {
                    if a_id != r_id {
                        return Err(Error::malformed("action.rule.inner", "γ = ι needs the algebra acting on itself"));
                    }
                    gamma_identity(&h)
                }
                Value::String(s) if s == "counit" => gamma_counit(&h, &r),
                Value::Array(rows) => {
                    let mut table = HashMap::new();
                    for (i, row) in rows.iter().enumerate() {
                        let loc = format!("action.rule.inner[{}]", i);
                        let a = key_of(field(row, "a", &loc)?, &loc)?;
                        let val = Element::from_json(r.domain(), field(row, "value", &loc)?)
                            .map_err(|e| Error::malformed(&loc, e.to_string()))?;
                        table.insert(a, val);
                    }
                    gamma_from_elements(&r, table)
                }
                _ => return Err(Error::malformed("action.rule.inner", "expected identity, counit or a table")),
            };
            inner_action_from(&h, &r, gamma)
        }
        _ => Err(Error::malformed("action.rule", "expected a rule name or {\"inner\": ...}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Key;

    #[test]
    fn builtin_rules() {
        let t = load_action_json(r#"{"algebra_id":"C[Z2]","space_id":"K(Z2)","rule":"translation"}"#).unwrap();
        assert_eq!(t.act_basis(&Key::Int(1), &Key::Int(0)), t.r_basis(&Key::Int(1)));
        let a = load_action_json(r#"{"algebra_id":"C[S3]","space_id":"C[S3]","rule":{"inner":"identity"}}"#).unwrap();
        assert_eq!(a.name(), "inner");
        let tab = load_action_json(
            r#"{"algebra_id":"C[Z2]","space_id":"C","rule":"table","table":[{"a":0,"x":0,"value":[[0,1]]},{"a":1,"x":0,"value":[[0,1]]}]}"#,
        )
        .unwrap();
        assert_eq!(tab.act_basis(&Key::Int(1), &Key::Int(0)), tab.r_basis(&Key::Int(0)));
        assert!(resolve_action("adjoint:C[S3]").is_ok());
    }

    #[test]
    fn errors_have_locations() {
        let e = load_action_json(r#"{"algebra_id":"C[Z2]","space_id":"K(Z3)","rule":"translation"}"#).unwrap_err();
        assert!(matches!(e, Error::MalformedSpec { ref location, .. } if location == "action.space_id"));
        let e = load_action_json(r#"{"algebra_id":"C[Z2]","rule":"trivial"}"#).unwrap_err();
        assert!(matches!(e, Error::MalformedSpec { .. }));
        let e = load_action_json(r#"{"algebra_id":"C[Z2]","space_id":"C","rule":"table","table":[{"a":0}]}"#).unwrap_err();
        assert!(matches!(e, Error::MalformedSpec { ref location, .. } if location == "action.table[0]"));
        assert!(load_action_json("{").is_err());
    }
}
