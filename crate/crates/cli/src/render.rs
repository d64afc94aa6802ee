//! Human-readable output.

use std::fmt::Write;

use loopforge::holomorph::SHolomorphClass;
use loopforge::verify::{Clause, SweepSummary, TheoremReport, Verdict};
use loopforge::{CayleyTable, PropertyCheck, SClassification, Subset};
use serde_json::Value;

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn property_line(r: &PropertyCheck) -> String {
    let mut s = format!("{}: {}", r.property, r.holds);
    if let Some(w) = &r.witness {
        let _ = write!(s, "  witness ({})", join(w, ", "));
    }
    if let Some(n) = &r.note {
        let _ = write!(s, "  [{n}]");
    }
    s
}

/// The Cayley table with row and column headers, right-aligned.
pub fn grid(t: &CayleyTable) -> String {
    let n = t.order();
    let w = n.saturating_sub(1).to_string().len();
    let mut s = format!("{:>w$} |", "*");
    for y in 0..n {
        let _ = write!(s, " {y:>w$}");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{}-+{}", "-".repeat(w), "-".repeat(n * (w + 1)));
    for x in 0..n {
        let _ = write!(s, "{x:>w$} |");
        for y in 0..n {
            let _ = write!(s, " {:>w$}", t.op(x, y));
        }
        let _ = writeln!(s);
    }
    s
}

pub fn classify(t: &CayleyTable, report: &Value) -> String {
    let mut s = grid(t);
    let _ = writeln!(s, "order     {}", t.order());
    let identity = report["identity"].as_u64().map_or("none".to_string(), |e| e.to_string());
    let _ = writeln!(s, "identity  {identity}");
    if let Some(props) = report["properties"].as_object() {
        let held: Vec<&str> = props.iter().filter(|(_, v)| v == &&Value::Bool(true)).map(|(k, _)| k.as_str()).collect();
        let failed: Vec<&str> = props.iter().filter(|(_, v)| v == &&Value::Bool(false)).map(|(k, _)| k.as_str()).collect();
        let _ = writeln!(s, "holds     {}", held.join(" "));
        let _ = writeln!(s, "fails     {}", failed.join(" "));
    }
    if let Some(a) = report["aum_order"].as_u64() {
        let _ = writeln!(s, "|AUM|     {a}");
    }
    if let Some(classes) = report["smarandache"]["per_property"].as_object() {
        let held: Vec<&str> = classes
            .values()
            .filter(|c| c["holds"] == Value::Bool(true))
            .filter_map(|c| c["class"].as_str())
            .collect();
        let _ = writeln!(s, "S-classes {}", if held.is_empty() { "none".to_string() } else { held.join(" ") });
    }
    s
}

pub fn smarandache(c: &SClassification, maximal: &[Subset]) -> String {
    let mut s = String::new();
    let groups = c
        .s_subgroups
        .iter()
        .map(|g| if maximal.contains(g) { format!("{g}*") } else { g.to_string() });
    let _ = writeln!(s, "S-subgroups ({}): {}", c.s_subgroups.len(), join(groups, " "));
    for r in c.per_property.values() {
        let witness = r.witness.as_ref().map_or(String::new(), |w| format!("  via {w}"));
        let _ = writeln!(s, "{:<8} {:<8} {}{witness}", r.class, r.target.to_string(), r.holds);
    }
    s
}

pub fn s_holomorph(g: &Subset, saum_order: usize, h: &CayleyTable, class: &SHolomorphClass) -> String {
    let mut s = format!("G = {g}: |SAUM| = {saum_order}, |H_S| = {}\n", h.order());
    let labels = if class.labels.is_empty() {
        "none".to_string()
    } else {
        join(class.labels.iter().map(|l| format!("{l:?}").to_lowercase()), " ")
    };
    let _ = writeln!(s, "  labels: {labels}");
    for v in &class.matrix {
        let label = format!("{:?}", v.label).to_lowercase();
        let form = format!("{:?}", v.form).to_lowercase();
        let witness = v.witness.map_or(String::new(), |(x, a)| format!("  (s={x}, alpha #{a})"));
        let _ = writeln!(s, "  {label:<8} {form:<7} {}{witness}", v.holds);
    }
    s
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Consistent => "consistent",
        Verdict::Inconsistent => "inconsistent",
        Verdict::Vacuous => "vacuous",
    }
}

fn clause(c: &Clause) -> String {
    format!("{}: lhs {} rhs {}  {}", verdict(c.verdict), c.lhs, c.rhs, c.name)
}

pub fn report(r: &TheoremReport) -> String {
    let mut s = format!(
        "{} on {}: {} (lhs {}, rhs {})\n",
        r.theorem,
        r.loop_name,
        verdict(r.verdict),
        r.lhs,
        r.rhs
    );
    for c in &r.clauses {
        let _ = writeln!(s, "  {}", clause(c));
    }
    for c in &r.conditions {
        let w = c.witness.as_ref().filter(|w| !w.is_empty()).map_or(String::new(), |w| format!("  [{w}]"));
        let _ = writeln!(s, "    {:<5} {}{w}", c.holds, c.name);
    }
    for g in &r.subgroups {
        let _ = writeln!(
            s,
            "  G = {}{}: |SAUM| = {}, induced on G: {}",
            g.subgroup,
            if g.maximal { " (maximal)" } else { "" },
            g.saum_order,
            g.induced_order
        );
        for c in &g.clauses {
            let _ = writeln!(s, "    {}", clause(c));
        }
        for c in &g.induced {
            let _ = writeln!(s, "    induced {}", clause(c));
        }
    }
    if !r.facts.is_empty() {
        let _ = writeln!(s, "  {}", join(r.facts.iter().map(|(k, v)| format!("{k}={v}")), " "));
    }
    s
}

pub fn sweep(summary: &SweepSummary) -> String {
    let mut s = format!(
        "{} loops of order <= {} ({}): {}\n",
        summary.loops_checked,
        summary.max_order,
        if summary.up_to_iso { "up to isomorphism" } else { "normalized" },
        join(summary.per_order.iter().map(|(n, c)| format!("{n}:{c}")), " ")
    );
    let _ = writeln!(s, "{:<10} {:>10} {:>12} {:>8}", "theorem", "consistent", "inconsistent", "vacuous");
    for (id, t) in &summary.theorems {
        let _ = write!(s, "{:<10} {:>10} {:>12} {:>8}", id.to_string(), t.consistent, t.inconsistent, t.vacuous);
        if t.induced_inconsistent > 0 {
            let _ = write!(s, "  (induced reading: {} inconsistent subgroups)", t.induced_inconsistent);
        }
        let _ = writeln!(s);
    }
    for inc in &summary.inconsistencies {
        let _ = writeln!(s, "\ninconsistent: {} on {}", inc.theorem, inc.loop_name);
        s.push_str(&inc.table);
        s.push_str(&report(&inc.report));
    }
    s
}
