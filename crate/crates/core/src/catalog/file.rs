use std::collections::{BTreeMap, HashSet};

use serde_json::{json, Map, Value};

use super::{CatalogError, ClosedForm, Component, IdentityEntry};
use crate::exact::{format_rational, parse_rational, RatPoly, Rational};
use crate::series::{BinomialPower, LinearFactor, SeriesSpec};

/// Pretty-printed catalog JSON; [`parse_catalog`] inverts it exactly.
pub fn serialize_catalog(entries: &[IdentityEntry]) -> String {
    let es: Vec<Value> = entries.iter().map(entry_json).collect();
    let mut s = serde_json::to_string_pretty(&json!({ "version": 1, "entries": es })).expect("serializable");
    s.push('\n');
    s
}

fn entry_json(e: &IdentityEntry) -> Value {
    let comps: Vec<Value> = e
        .components
        .iter()
        .map(|c| {
            let s = &c.spec;
            let channels: Map<String, Value> = s
                .channels()
                .iter()
                .map(|(j, p)| (j.to_string(), Value::from(p.coeffs().iter().map(format_rational).collect::<Vec<_>>())))
                .collect();
            json!({
                "weight": format_rational(&c.weight),
                "x": format_rational(s.x()),
                "binomial_power": s.power().as_i32(),
                "start": s.start(),
                "channels": channels,
                "denominator_factors": s.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "id": e.id, "provenance": e.provenance, "rhs": e.rhs.to_json(), "components": comps })
}

/// Line of the `i`-th `"id"` key, used to anchor diagnostics to entries.
fn id_lines(text: &str) -> Vec<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("\"id\""))
        .map(|(i, _)| i + 1)
        .collect()
}

struct Ctx<'a> {
    line: usize,
    prefix: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> CatalogError {
        CatalogError::Schema { line: self.line, field: format!("{}{field}", self.prefix), message: message.into() }
    }
}

fn get<'v>(o: &'v Map<String, Value>, key: &str, ctx: &Ctx) -> Result<&'v Value, CatalogError> {
    o.get(key).ok_or_else(|| ctx.err(key, "missing field"))
}

fn rational_field(v: &Value, field: &str, ctx: &Ctx) -> Result<Rational, CatalogError> {
    let s = v.as_str().ok_or_else(|| ctx.err(field, "expected a \"p/q\" string"))?;
    parse_rational(s).map_err(|e| ctx.err(field, e.to_string()))
}

fn parse_component(v: &Value, ctx: &Ctx) -> Result<Component, CatalogError> {
    let o = v.as_object().ok_or_else(|| ctx.err("", "expected an object"))?;
    let weight = rational_field(get(o, "weight", ctx)?, "weight", ctx)?;
    let x = rational_field(get(o, "x", ctx)?, "x", ctx)?;
    let power = get(o, "binomial_power", ctx)?
        .as_i64()
        .and_then(BinomialPower::from_i64)
        .ok_or_else(|| ctx.err("binomial_power", "expected 1 or -1"))?;
    let start = get(o, "start", ctx)?.as_u64().filter(|s| *s <= 1).ok_or_else(|| ctx.err("start", "expected 0 or 1"))?;
    let ch_obj = get(o, "channels", ctx)?.as_object().ok_or_else(|| ctx.err("channels", "expected an object"))?;
    let mut channels = BTreeMap::new();
    for (k, coeffs) in ch_obj {
        let field = format!("channels.{k}");
        let j: u8 = k.parse().ok().filter(|j| *j <= 4).ok_or_else(|| ctx.err(&field, "channel must be 0..=4"))?;
        let arr = coeffs.as_array().ok_or_else(|| ctx.err(&field, "expected an array of \"p/q\" strings"))?;
        let cs = arr
            .iter()
            .enumerate()
            .map(|(i, c)| rational_field(c, &format!("{field}[{i}]"), ctx))
            .collect::<Result<Vec<_>, _>>()?;
        channels.insert(j, RatPoly::new(cs));
    }
    let fs = get(o, "denominator_factors", ctx)?
        .as_array()
        .ok_or_else(|| ctx.err("denominator_factors", "expected an array"))?;
    let mut factors = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let field = format!("denominator_factors[{i}]");
        let s = f.as_str().ok_or_else(|| ctx.err(&field, "expected a string such as \"3k+1\""))?;
        let lf: LinearFactor = s.parse().map_err(|e: crate::series::SeriesError| ctx.err(&field, e.to_string()))?;
        factors.push(lf);
    }
    let spec = SeriesSpec::new(x, power, start, channels, factors).map_err(|e| ctx.err("", e.to_string()))?;
    Ok(Component { weight, spec })
}

/// Parses a standalone series: one component object whose `weight` may be
/// omitted (default 1).
pub fn parse_component_file(text: &str) -> Result<Component, CatalogError> {
    let mut root: Value = serde_json::from_str(text).map_err(|e| CatalogError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let ctx = Ctx { line: 1, prefix: "" };
    let o = root.as_object_mut().ok_or_else(|| ctx.err("", "expected an object"))?;
    o.entry("weight").or_insert_with(|| Value::from("1"));
    parse_component(&root, &ctx)
}

/// Parses the catalog format, rejecting malformed JSON, schema violations,
/// duplicate ids and specs that fail their invariants.
pub fn parse_catalog(text: &str) -> Result<Vec<IdentityEntry>, CatalogError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CatalogError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = Ctx { line: 1, prefix: "" };
    let o = root.as_object().ok_or_else(|| top.err("", "top level must be an object"))?;
    if get(o, "version", &top)?.as_u64() != Some(1) {
        return Err(top.err("version", "only version 1 is supported"));
    }
    let entries = get(o, "entries", &top)?.as_array().ok_or_else(|| top.err("entries", "expected an array"))?;
    let lines = id_lines(text);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (i, ev) in entries.iter().enumerate() {
        let line = lines.get(i).copied().unwrap_or(1);
        let base = format!("entries[{i}].");
        let ctx = Ctx { line, prefix: &base };
        let eo = ev.as_object().ok_or_else(|| ctx.err("", "expected an object"))?;
        let id = get(eo, "id", &ctx)?.as_str().ok_or_else(|| ctx.err("id", "expected a string"))?.to_string();
        if id.is_empty() {
            return Err(ctx.err("id", "must be nonempty"));
        }
        if !seen.insert(id.clone()) {
            return Err(CatalogError::DuplicateId { line, id });
        }
        let provenance = get(eo, "provenance", &ctx)?
            .as_str()
            .ok_or_else(|| ctx.err("provenance", "expected a string"))?
            .to_string();
        let rhs = ClosedForm::from_json(get(eo, "rhs", &ctx)?).map_err(|m| ctx.err("rhs", m))?;
        let comps = get(eo, "components", &ctx)?.as_array().ok_or_else(|| ctx.err("components", "expected an array"))?;
        if comps.is_empty() {
            return Err(ctx.err("components", "must be nonempty"));
        }
        let mut components = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let p = format!("{base}components[{ci}].");
            components.push(parse_component(c, &Ctx { line, prefix: &p })?);
        }
        out.push(IdentityEntry { id, provenance, components, rhs });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn builtin_round_trip() {
        let c = builtin_catalog();
        let text = serialize_catalog(&c);
        assert_eq!(parse_catalog(&text).unwrap(), c);
    }

    fn one_entry(x: &str, power: i64) -> String {
        format!(
            r#"{{"version": 1, "entries": [
  {{
    "id": "t",
    "provenance": "test",
    "rhs": {{"rat": "1"}},
    "components": [{{"weight": "1", "x": "{x}", "binomial_power": {power}, "start": 0,
                    "channels": {{"0": ["1"]}}, "denominator_factors": []}}]
  }}
]}}"#
        )
    }

    #[test]
    fn radius_violation_rejected_with_line() {
        assert!(parse_catalog(&one_entry("1/16", 1)).is_ok());
        match parse_catalog(&one_entry("1/8", 1)) {
            Err(CatalogError::Schema { line, field, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(field, "entries[0].components[0].");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_catalog(&one_entry("1/8", -1)).is_ok());
    }

    #[test]
    fn duplicate_id_rejected() {
        let c = builtin_catalog();
        let dup = vec![c[0].clone(), c[0].clone()];
        assert!(matches!(parse_catalog(&serialize_catalog(&dup)), Err(CatalogError::DuplicateId { .. })));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_catalog("{"), Err(CatalogError::Json { .. })));
        assert!(matches!(parse_catalog(r#"{"version": 2, "entries": []}"#), Err(CatalogError::Schema { .. })));
        let bad = one_entry("1/16", 1).replace("\"1\"]}", "\"x\"]}");
        match parse_catalog(&bad) {
            Err(CatalogError::Schema { field, .. }) => assert_eq!(field, "entries[0].components[0].channels.0[0]"),
            other => panic!("{other:?}"),
        }
        let bad = one_entry("1/16", 1).replace("[]}]", "[\"5k+1\"]}]");
        match parse_catalog(&bad) {
            Err(CatalogError::Schema { field, .. }) => assert!(field.ends_with("denominator_factors[0]")),
            other => panic!("{other:?}"),
        }
    }
}
