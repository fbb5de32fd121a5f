use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{Monomial, MultiPoly, VarKey};
use crate::error::{Error, Result};

/// `[{"coeff": "<decimal>", "vars": {"<family>_<index>": exponent}}, ...]`,
/// in monomial order.
pub fn poly_to_json(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let vars: Map<String, Value> = m.powers().iter().map(|(v, e)| (v.key(), json!(e))).collect();
                json!({ "coeff": c.to_string(), "vars": vars })
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let bad = |msg: &str| Error::InvalidArgument(format!("polynomial JSON: {msg}"));
    let terms = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
    let mut out = MultiPoly::zero();
    for t in terms {
        let coeff = match t.get("coeff") {
            Some(Value::String(s)) => s.parse::<BigInt>().map_err(|_| bad("coefficient is not an integer"))?,
            Some(Value::Number(n)) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| bad("coefficient is not an integer"))?,
            _ => return Err(bad("term without coeff")),
        };
        let mut powers = BTreeMap::new();
        if let Some(vars) = t.get("vars") {
            let vars = vars.as_object().ok_or_else(|| bad("vars must be an object"))?;
            for (k, e) in vars {
                let e = e.as_u64().ok_or_else(|| bad("exponent must be a non-negative integer"))?;
                let e = u32::try_from(e).map_err(|_| bad("exponent too large"))?;
                powers.insert(VarKey::from_key(k)?, e);
            }
        }
        out.add_term(coeff, Monomial::from_powers(powers));
    }
    Ok(out)
}
