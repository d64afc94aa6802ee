//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use loopforge::morphisms::PermutationGroup;
use loopforge::samples::{cyclic, klein_four, symmetric3};
use loopforge::verify::{Tally, Verdict};
use loopforge::{
    automorphism_group, canonical_form, catalog_up_to, count_loops, find_isomorphism, full_holomorph, sweep_tables,
    CayleyTable, Envelope, Permutation, TheoremId, VerifyConfig,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Census values, frozen from the brute-force generator.
const ISO_COUNTS: [usize; 6] = [1, 1, 1, 2, 6, 109];
const NORMALIZED_COUNTS: [usize; 6] = [1, 1, 1, 4, 56, 9408];
/// Runtime budgets for the census.
const BUDGET_ORDER_5: Duration = Duration::from_secs(1);
const BUDGET_ORDER_6: Duration = Duration::from_secs(180);
/// Inconsistencies tolerated by every sweep.
const MAX_INCONSISTENCIES: usize = 0;
/// Holomorph size cap for the WIP transfer sweep.
const HUTHNANCE_MAX_PRODUCT: usize = 60;
const SPOT_CHECK_SAMPLES: usize = 20;
const SEED: u64 = 0x5eed_1009;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Catalog {
    /// Representatives of orders 1..=6 up to isomorphism.
    loops: Vec<CayleyTable>,
}

impl Catalog {
    fn up_to(&self, n: usize) -> Vec<CayleyTable> {
        self.loops.iter().filter(|t| t.order() <= n).cloned().collect()
    }
}

fn tally(tables: &[CayleyTable], id: TheoremId) -> (Tally, Vec<String>) {
    let s = sweep_tables(tables, &[id], &VerifyConfig::default()).expect("sweep");
    let bad = s.inconsistencies.iter().map(|i| i.loop_name.clone()).collect();
    (s.theorems[&id].clone(), bad)
}

fn describe(t: &Tally) -> String {
    format!(
        "consistent {} / inconsistent {} / vacuous {}",
        t.consistent, t.inconsistent, t.vacuous
    )
}

fn census() -> Outcome {
    let env = Envelope::default();
    let mut iso = Vec::new();
    let mut norm = Vec::new();
    let mut t5 = Duration::ZERO;
    let start = Instant::now();
    for n in 1..=6 {
        iso.push(count_loops(n, true, &env).expect("census"));
        norm.push(count_loops(n, false, &env).expect("census"));
        if n == 5 {
            t5 = start.elapsed();
        }
    }
    let total = start.elapsed();
    let pass = iso == ISO_COUNTS && norm == NORMALIZED_COUNTS && t5 < BUDGET_ORDER_5 && total < BUDGET_ORDER_6;
    outcome(
        pass,
        format!("up to iso {iso:?}, normalized {norm:?}; orders <= 5 in {t5:.2?}, <= 6 in {total:.2?}"),
    )
}

fn trivial_automorphisms(cat: &Catalog) -> Outcome {
    let five = cat.up_to(5);
    let six = cat.up_to(6);
    let (t5, b5) = tally(&five, TheoremId::TrivialAutomorphisms);
    let (t6, b6) = tally(&six, TheoremId::TrivialAutomorphisms);
    let pass = five.len() == ISO_COUNTS[..5].iter().sum::<usize>()
        && six.len() == ISO_COUNTS.iter().sum::<usize>()
        && t5.inconsistent == MAX_INCONSISTENCIES
        && t6.inconsistent == MAX_INCONSISTENCIES;
    outcome(
        pass,
        format!(
            "{} loops <= 5: {}; {} loops <= 6: {} {b5:?}{b6:?}",
            five.len(),
            describe(&t5),
            six.len(),
            describe(&t6)
        ),
    )
}

fn osborn(cat: &Catalog) -> Outcome {
    let (t, bad) = tally(&cat.loops, TheoremId::Osborn);
    outcome(t.inconsistent == MAX_INCONSISTENCIES, format!("{} {bad:?}", describe(&t)))
}

fn huthnance(cat: &Catalog) -> Outcome {
    let mut within = Vec::new();
    let mut skipped = 0;
    for t in cat.up_to(5) {
        let aum = automorphism_group(&t).expect("aum");
        if aum.order() * t.order() <= HUTHNANCE_MAX_PRODUCT {
            within.push(t);
        } else {
            skipped += 1;
        }
    }
    let (t, bad) = tally(&within, TheoremId::Huthnance);
    outcome(
        t.inconsistent == MAX_INCONSISTENCIES,
        format!("{} loops, {skipped} over the product cap: {} {bad:?}", within.len(), describe(&t)),
    )
}

fn implications(cat: &Catalog) -> Outcome {
    let (iso, b1) = tally(&cat.loops, TheoremId::HolomorphIsomorphic);
    let (exp, b2) = tally(&cat.loops, TheoremId::CipExponentTwo);
    outcome(
        iso.inconsistent + exp.inconsistent == MAX_INCONSISTENCIES,
        format!(
            "H(L) AIP/CIP => trivial AUM & H(L) ~ L: {}; H(L) CIP => FLEX & EXP2: {} {b1:?}{b2:?}",
            describe(&iso),
            describe(&exp)
        ),
    )
}

fn cip_autotopisms(cat: &Catalog) -> Outcome {
    let (t, bad) = tally(&cat.loops, TheoremId::CipAutotopisms);
    outcome(t.inconsistent == MAX_INCONSISTENCIES, format!("{} {bad:?}", describe(&t)))
}

/// `x ↦ (I, x)` is an injective homomorphism whose image is closed.
fn embedding_ok(t: &CayleyTable) -> bool {
    let (h, lab) = full_holomorph(t).expect("holomorph");
    let emb: Vec<usize> = (0..t.order()).map(|x| lab.pair_to_element(0, x).expect("pair")).collect();
    let mut image = emb.clone();
    image.sort_unstable();
    image.dedup();
    let injective = image.len() == t.order();
    let hom = (0..t.order()).all(|x| (0..t.order()).all(|y| h.op(emb[x], emb[y]) == emb[t.op(x, y)]));
    let closed = image.iter().all(|&a| image.iter().all(|&b| image.binary_search(&h.op(a, b)).is_ok()));
    injective && hom && closed
}

fn holomorph_spot_checks(cat: &Catalog) -> Outcome {
    let (h3, _) = full_holomorph(&cyclic(3)).expect("holomorph");
    let c3 = h3.order() == 6 && find_isomorphism(&h3, &symmetric3()).expect("iso").is_some();
    let (h2, _) = full_holomorph(&cyclic(2)).expect("holomorph");
    let c2 = find_isomorphism(&h2, &cyclic(2)).expect("iso").is_some();
    let mut rng = StdRng::seed_from_u64(SEED);
    let sample: Vec<&CayleyTable> = cat.loops.choose_multiple(&mut rng, SPOT_CHECK_SAMPLES).collect();
    let failed: Vec<String> = sample.iter().filter(|t| !embedding_ok(t)).map(|t| t.label()).collect();
    outcome(
        c3 && c2 && failed.is_empty() && sample.len() == SPOT_CHECK_SAMPLES,
        format!(
            "H(C3) ~ S3: {c3}; H(C2) ~ C2: {c2}; embedding on {} sampled loops, failures {failed:?}",
            sample.len()
        ),
    )
}

fn smarandache(cat: &Catalog) -> Outcome {
    let ids = [TheoremId::SmarandacheHolomorph, TheoremId::SmarandacheComposites];
    let s = sweep_tables(&cat.loops, &ids, &VerifyConfig::default()).expect("sweep");
    let mut lines = Vec::new();
    let mut subgroup_bad = 0;
    let mut examples: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for inc in &s.inconsistencies {
        for g in &inc.report.subgroups {
            if g.clauses.iter().any(|c| c.verdict == Verdict::Inconsistent) {
                subgroup_bad += 1;
                let e = examples.entry(inc.theorem.to_string()).or_default();
                if e.len() < 3 {
                    e.push(format!("{} G={} |SAUM|={}", inc.loop_name, g.subgroup, g.saum_order));
                }
            }
        }
    }
    for id in ids {
        let t = &s.theorems[&id];
        lines.push(format!(
            "{id}: {} (loops with S-subgroups {}; induced-action reading: {} subgroup inconsistencies)",
            describe(t),
            t.consistent + t.inconsistent,
            t.induced_inconsistent
        ));
    }
    outcome(
        subgroup_bad == MAX_INCONSISTENCIES,
        format!("{}; {subgroup_bad} inconsistent subgroups, e.g. {examples:?}", lines.join("; ")),
    )
}

/// `|AUM|` by trying all `n!` permutations.
fn brute_force_aum(t: &CayleyTable) -> usize {
    let n = t.order();
    let mut p: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        if (0..n).all(|x| (0..n).all(|y| p[t.op(x, y)] == t.op(p[x], p[y]))) {
            count += 1;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return count;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn automorphism_orders() -> Outcome {
    let cases = [(cyclic(2), 1), (cyclic(3), 2), (klein_four(), 6), (symmetric3(), 6)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (t, want) in cases {
        let got = automorphism_group(&t).expect("aum").order();
        let oracle = brute_force_aum(&t);
        pass &= got == want && oracle == want;
        parts.push(format!("|AUM({})| = {got} (oracle {oracle})", t.label()));
    }
    outcome(pass, parts.join(", "))
}

fn group_axioms_ok(g: &PermutationGroup) -> bool {
    let e = Permutation::identity(g.degree());
    g.check_axioms().is_ok()
        && g.contains(&e)
        && g.elements().iter().all(|a| g.contains(&a.inverse()))
        && g.elements().iter().all(|a| g.elements().iter().all(|b| g.contains(&a.then(b))))
}

fn structural_properties(cat: &Catalog) -> Outcome {
    let groups_ok = cat.loops.iter().all(|t| group_axioms_ok(&automorphism_group(t).expect("aum")));
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut idempotent = true;
    for t in &cat.loops {
        let c = canonical_form(t).expect("canonical").table;
        idempotent &= canonical_form(&c).expect("canonical").table == c;
        let mut images: Vec<usize> = (0..t.order()).collect();
        images.shuffle(&mut rng);
        let shuffled = t.renumber(&Permutation::new(images).expect("perm"));
        idempotent &= canonical_form(&shuffled).expect("canonical").table == c;
    }
    // the six order-5 representatives plus a renumbered copy of each
    let mut fives = cat.up_to(5);
    fives.retain(|t| t.order() == 5);
    let copies: Vec<CayleyTable> = fives
        .iter()
        .map(|t| {
            let mut images: Vec<usize> = (0..5).collect();
            images.shuffle(&mut rng);
            t.renumber(&Permutation::new(images).expect("perm"))
        })
        .collect();
    let all: Vec<&CayleyTable> = fives.iter().chain(&copies).collect();
    let mut pairs = 0;
    let mut agree = true;
    for i in 0..all.len() {
        for j in i..all.len() {
            let same = canonical_form(all[i]).expect("canonical") == canonical_form(all[j]).expect("canonical");
            let iso = find_isomorphism(all[i], all[j]).expect("iso").is_some();
            agree &= same == iso;
            pairs += 1;
        }
    }
    outcome(
        groups_ok && idempotent && agree && fives.len() == 6,
        format!(
            "AUM axioms on {} loops: {groups_ok}; canonical idempotence: {idempotent}; \
             canonical equality <=> isomorphism on {pairs} order-5 pairs: {agree}",
            cat.loops.len()
        ),
    )
}

fn main() {
    let catalog = Catalog {
        loops: catalog_up_to(6, true, &Envelope::default()).expect("catalog"),
    };
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: [Criterion; 10] = [
        ("census regression", Box::new(census)),
        ("trivial-automorphism holomorph sweep", Box::new(|| trivial_automorphisms(&catalog))),
        ("CIP <=> WIP & AIP sweep", Box::new(|| osborn(&catalog))),
        ("WIP transfer to the holomorph", Box::new(|| huthnance(&catalog))),
        ("holomorph AIP/CIP implications", Box::new(|| implications(&catalog))),
        ("CIP holomorph autotopisms", Box::new(|| cip_autotopisms(&catalog))),
        ("holomorph spot checks", Box::new(|| holomorph_spot_checks(&catalog))),
        ("Smarandache holomorph sweep", Box::new(|| smarandache(&catalog))),
        ("automorphism group orders", Box::new(automorphism_orders)),
        ("structural properties", Box::new(|| structural_properties(&catalog))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {status} {name} [{:.2?}]: {}", i + 1, start.elapsed(), o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
