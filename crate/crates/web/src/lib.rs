//! Browser bindings: every export takes table text and returns a JSON
//! string, or an error message.

use loopforge::properties::check_property;
use loopforge::smarandache::classify;
use loopforge::{
    automorphism_group, full_holomorph, nucleus, parse_table, verify, CayleyTable, NucleusKind, Property,
    SmarandacheConfig, TheoremId,
};
use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::*;

/// Largest holomorph the page will render.
const MAX_HOLOMORPH_ORDER: usize = 64;

fn load(text: &str) -> Result<CayleyTable, String> {
    let t = parse_table(text).map_err(|e| e.to_string())?;
    t.require_latin().map_err(|e| e.to_string())?;
    Ok(t)
}

pub fn analyze_value(text: &str) -> Result<Value, String> {
    let t = load(text)?;
    let identity = t.identity_of();
    let mut props = Map::new();
    for p in Property::ALL {
        if identity.is_none() && p.needs_identity() {
            continue;
        }
        let r = check_property(&t, p).map_err(|e| e.to_string())?;
        props.insert(p.tag().into(), serde_json::to_value(r).map_err(|e| e.to_string())?);
    }
    let mut report = json!({
        "order": t.order(),
        "rows": t.rows(),
        "identity": identity,
        "properties": props,
    });
    if identity.is_some() {
        let aum = automorphism_group(&t).map_err(|e| e.to_string())?;
        let mut nuclei = Map::new();
        for k in NucleusKind::ALL {
            let n = nucleus(&t, k).map_err(|e| e.to_string())?;
            nuclei.insert(k.name().into(), json!(n.members()));
        }
        let s = classify(&t, &SmarandacheConfig::default()).map_err(|e| e.to_string())?;
        report["aum_order"] = json!(aum.order());
        report["nuclei"] = Value::Object(nuclei);
        report["smarandache"] = serde_json::to_value(s).map_err(|e| e.to_string())?;
    }
    Ok(report)
}

pub fn holomorph_value(text: &str) -> Result<Value, String> {
    let t = load(text)?;
    let aum = automorphism_group(&t).map_err(|e| e.to_string())?;
    let order = aum.order() * t.order();
    if order > MAX_HOLOMORPH_ORDER {
        return Err(format!("holomorph would have order {order}; the demo renders at most {MAX_HOLOMORPH_ORDER}"));
    }
    let (h, lab) = full_holomorph(&t).map_err(|e| e.to_string())?;
    let labels: Vec<String> = lab
        .pairs()
        .iter()
        .map(|p| format!("(a{},{})", p.automorphism_index, p.base))
        .collect();
    let aip = check_property(&h, Property::Aip).map_err(|e| e.to_string())?.holds;
    let cip = check_property(&h, Property::Cip).map_err(|e| e.to_string())?.holds;
    Ok(json!({
        "order": h.order(),
        "aum_order": aum.order(),
        "automorphisms": aum,
        "rows": h.rows(),
        "labels": labels,
        "aip": aip,
        "cip": cip,
    }))
}

pub fn verify_value(text: &str, theorem: &str) -> Result<Value, String> {
    let t = load(text)?;
    let ids = TheoremId::parse_list(theorem).map_err(|e| e.to_string())?;
    let reports = ids
        .into_iter()
        .map(|id| verify(&t, id))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_value(reports).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, String> {
    analyze_value(text).map(|v| v.to_string())
}

#[wasm_bindgen]
pub fn holomorph(text: &str) -> Result<String, String> {
    holomorph_value(text).map(|v| v.to_string())
}

#[wasm_bindgen(js_name = verifyTheorems)]
pub fn verify_theorems(text: &str, theorem: &str) -> Result<String, String> {
    verify_value(text, theorem).map(|v| v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3: &str = "3\n0 1 2\n1 2 0\n2 0 1";
    const V4: &str = "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0";

    #[test]
    fn analyze_reports_properties() {
        let v = analyze_value(C3).unwrap();
        assert_eq!(v["identity"], 0);
        assert_eq!(v["aum_order"], 2);
        assert_eq!(v["properties"]["AIP"]["holds"], true);
        assert_eq!(v["nuclei"]["center"], json!([0, 1, 2]));
    }

    #[test]
    fn holomorph_of_c3_has_order_six() {
        let v = holomorph_value(C3).unwrap();
        assert_eq!(v["order"], 6);
        assert_eq!(v["labels"][3], "(a1,0)");
        assert_eq!(v["aip"], false);
    }

    #[test]
    fn verify_flags_v4_smarandache_inconsistency() {
        let v = verify_value(V4, "T3.3.2").unwrap();
        assert_eq!(v[0]["verdict"], "inconsistent");
        let v = verify_value(V4, "all").unwrap();
        assert_eq!(v.as_array().unwrap().len(), 11);
    }

    #[test]
    fn errors_are_messages() {
        assert!(analyze("2\n0 1\n1 1").unwrap_err().contains("Latin"));
        assert!(verify_theorems(C3, "nope").is_err());
    }
}
