//! Mechanical checks of the holomorph results on concrete loops.
//!
//! Each checker evaluates both sides of its statement from first
//! principles: the holomorph side and the automorphism side recompute the
//! automorphism group independently, so a shared bug cannot make them agree.
//! Statements that are implications report [`Verdict::Vacuous`] when the
//! hypothesis fails.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{generate_loops, Envelope};
use crate::error::{Error, Result};
use crate::holomorph::{build_holomorph, build_s_holomorph, full_holomorph};
use crate::morphisms::{
    automorphism_group, find_isomorphism, is_autotopism, smarandache_automorphism_group, AutotopismTriple,
    PermutationGroup,
};
use crate::perm::Permutation;
use crate::properties::{check_property_with, Property};
use crate::smarandache::{maximal_s_subgroups, s_subgroups, SmarandacheConfig};
use crate::subalgebra::Subset;
use crate::table::{CayleyTable, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// H(L) is AIP iff AUM(L) is abelian, every (β⁻¹, α, I) is an
    /// autotopism, and L is AIP.
    HolomorphAip,
    /// The same with CIP in place of AIP.
    HolomorphCip,
    /// H(L) AIP or CIP implies H(L) ≅ L.
    HolomorphIsomorphic,
    /// H(L) is AIP (CIP) iff AUM(L) = {I} and L is AIP (CIP).
    TrivialAutomorphisms,
    /// H(L) is CIP iff AUM(L) is abelian and one of four mixed identities
    /// holds.
    HolomorphCipIdentities,
    /// Under H(L) CIP, six conditions agree and four autotopism families
    /// hold.
    CipAutotopisms,
    /// H(L) CIP implies L is flexible of exponent 2.
    CipExponentTwo,
    /// H_S is AIP (CIP) iff SAUM = {I} and the S-subgroup is AIP (CIP).
    SmarandacheHolomorph,
    /// The same for K-, Bruck- and Kikkawa loops.
    SmarandacheComposites,
    /// CIP iff WIP and AIP.
    Osborn,
    /// L is WIP iff H(L) is WIP.
    Huthnance,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::HolomorphAip,
        TheoremId::HolomorphCip,
        TheoremId::HolomorphIsomorphic,
        TheoremId::TrivialAutomorphisms,
        TheoremId::HolomorphCipIdentities,
        TheoremId::CipAutotopisms,
        TheoremId::CipExponentTwo,
        TheoremId::SmarandacheHolomorph,
        TheoremId::SmarandacheComposites,
        TheoremId::Osborn,
        TheoremId::Huthnance,
    ];

    /// Identifier used on the command line and in reports.
    pub fn id(self) -> &'static str {
        match self {
            TheoremId::HolomorphAip => "T3.1",
            TheoremId::HolomorphCip => "C3.2",
            TheoremId::HolomorphIsomorphic => "C3.3",
            TheoremId::TrivialAutomorphisms => "T3.3.1",
            TheoremId::HolomorphCipIdentities => "T3.4",
            TheoremId::CipAutotopisms => "C3.5",
            TheoremId::CipExponentTwo => "C3.6",
            TheoremId::SmarandacheHolomorph => "T3.3.2",
            TheoremId::SmarandacheComposites => "C_FINAL",
            TheoremId::Osborn => "OSBORN",
            TheoremId::Huthnance => "HUTHNANCE",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            TheoremId::HolomorphAip => "holomorph-aip",
            TheoremId::HolomorphCip => "holomorph-cip",
            TheoremId::HolomorphIsomorphic => "holomorph-isomorphic",
            TheoremId::TrivialAutomorphisms => "trivial-automorphisms",
            TheoremId::HolomorphCipIdentities => "holomorph-cip-identities",
            TheoremId::CipAutotopisms => "cip-autotopisms",
            TheoremId::CipExponentTwo => "cip-exponent-two",
            TheoremId::SmarandacheHolomorph => "smarandache-holomorph",
            TheoremId::SmarandacheComposites => "smarandache-composites",
            TheoremId::Osborn => "osborn",
            TheoremId::Huthnance => "huthnance",
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            TheoremId::HolomorphIsomorphic | TheoremId::CipAutotopisms | TheoremId::CipExponentTwo => {
                Relation::Implies
            }
            _ => Relation::Iff,
        }
    }

    pub fn is_smarandache(self) -> bool {
        matches!(self, TheoremId::SmarandacheHolomorph | TheoremId::SmarandacheComposites)
    }

    /// Parses a comma-separated list; `all` selects every id.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(TheoremId::ALL.to_vec());
        }
        let mut ids: Vec<TheoremId> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s) || t.alias().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Iff,
    Implies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub relation: Relation,
    pub lhs: bool,
    pub rhs: bool,
    pub verdict: Verdict,
}

impl Clause {
    fn new(name: &str, relation: Relation, lhs: bool, rhs: bool) -> Self {
        let verdict = match relation {
            Relation::Iff if lhs == rhs => Verdict::Consistent,
            Relation::Iff => Verdict::Inconsistent,
            Relation::Implies if !lhs => Verdict::Vacuous,
            Relation::Implies if rhs => Verdict::Consistent,
            Relation::Implies => Verdict::Inconsistent,
        };
        Clause {
            name: name.to_string(),
            relation,
            lhs,
            rhs,
            verdict,
        }
    }

    fn iff(name: &str, lhs: bool, rhs: bool) -> Self {
        Clause::new(name, Relation::Iff, lhs, rhs)
    }

    fn implies(name: &str, lhs: bool, rhs: bool) -> Self {
        Clause::new(name, Relation::Implies, lhs, rhs)
    }
}

/// One evaluated sub-condition with the first counterexample, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    fn new(name: &str, witness: Option<String>) -> Self {
        Condition {
            name: name.to_string(),
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub subgroup: Subset,
    pub maximal: bool,
    pub saum_order: usize,
    /// Order of the group SAUM induces on the subgroup.
    pub induced_order: usize,
    pub clauses: Vec<Clause>,
    /// The statement re-evaluated with SAUM replaced by the automorphisms
    /// it induces on the subgroup. Informational; not part of the verdict.
    pub induced: Vec<Clause>,
    pub conditions: Vec<Condition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub loop_name: String,
    pub relation: Relation,
    pub lhs: bool,
    pub rhs: bool,
    pub consistent: bool,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
    pub conditions: Vec<Condition>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroups: Vec<SubgroupReport>,
}

fn overall(clauses: &[Clause]) -> Verdict {
    if clauses.iter().any(|c| c.verdict == Verdict::Inconsistent) {
        Verdict::Inconsistent
    } else if clauses.first().is_some_and(|c| c.verdict == Verdict::Vacuous) {
        Verdict::Vacuous
    } else {
        Verdict::Consistent
    }
}

struct Builder {
    theorem: TheoremId,
    loop_name: String,
    clauses: Vec<Clause>,
    conditions: Vec<Condition>,
    facts: BTreeMap<String, usize>,
    subgroups: Vec<SubgroupReport>,
}

impl Builder {
    fn new(theorem: TheoremId, t: &CayleyTable) -> Self {
        Builder {
            theorem,
            loop_name: t.label(),
            clauses: Vec::new(),
            conditions: Vec::new(),
            facts: BTreeMap::new(),
            subgroups: Vec::new(),
        }
    }

    fn finish(self) -> TheoremReport {
        let mut verdict = overall(&self.clauses);
        if self.subgroups.iter().any(|s| overall(&s.clauses) == Verdict::Inconsistent) {
            verdict = Verdict::Inconsistent;
        }
        let (lhs, rhs) = self.clauses.first().map_or((false, false), |c| (c.lhs, c.rhs));
        if self.theorem.is_smarandache() && self.subgroups.is_empty() {
            verdict = Verdict::Vacuous;
        }
        TheoremReport {
            theorem: self.theorem,
            loop_name: self.loop_name,
            relation: self.theorem.relation(),
            lhs,
            rhs,
            consistent: verdict != Verdict::Inconsistent,
            verdict,
            clauses: self.clauses,
            conditions: self.conditions,
            facts: self.facts,
            subgroups: self.subgroups,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub smarandache: SmarandacheConfig,
}

fn holds(t: &CayleyTable, p: Property, cfg: &VerifyConfig) -> Result<bool> {
    Ok(check_property_with(t, p, &cfg.smarandache.properties)?.holds)
}

/// First `(α, β)` for which `ok` fails, rendered as a witness.
fn forall_pairs(
    group: &PermutationGroup,
    mut ok: impl FnMut(&Permutation, &Permutation) -> Result<bool>,
) -> Result<Option<String>> {
    for a in group.elements() {
        for b in group.elements() {
            if !ok(a, b)? {
                return Ok(Some(format!("alpha={a}, beta={b}")));
            }
        }
    }
    Ok(None)
}

fn autotopism(t: &CayleyTable, u: Permutation, v: Permutation, w: Permutation) -> Result<bool> {
    is_autotopism(t, &AutotopismTriple::new(u, v, w)?)
}

/// `∀α, β ∈ AUM: (β⁻¹J, αJ, J) ∈ AUT(L)` for `J = J_ρ` or `J_λ`.
fn inverse_autotopisms(t: &CayleyTable, aum: &PermutationGroup, side: Side) -> Result<Option<String>> {
    let j = t.inverse_map(side)?;
    forall_pairs(aum, |a, b| autotopism(t, b.inverse().then(&j), a.then(&j), j.clone()))
}

/// The four mixed identities quantified over `x, y ∈ L` and `α, β ∈ AUM`.
fn mixed_identities(t: &CayleyTable, aum: &PermutationGroup) -> Result<[Option<String>; 4]> {
    let n = t.order();
    let rho = t.inverse_map(Side::Right)?;
    let lam = t.inverse_map(Side::Left)?;
    let m = |x: usize, y: usize| t.op(x, y);
    let find = |f: &dyn Fn(&Permutation, &Permutation, usize, usize) -> bool| -> Option<String> {
        for a in aum.elements() {
            for b in aum.elements() {
                for x in 0..n {
                    for y in 0..n {
                        if !f(a, b, x, y) {
                            return Some(format!("alpha={a}, beta={b}, x={x}, y={y}"));
                        }
                    }
                }
            }
        }
        None
    };
    // x^λ α⁻¹βα, applied left to right
    let conj = |a: &Permutation, b: &Permutation, x: usize| a.apply(b.apply(a.inverse().apply(lam.apply(x))));
    Ok([
        find(&|a, b, x, y| m(m(b.apply(x), y), rho.apply(x)) == a.apply(y)),
        find(&|a, b, x, y| m(b.apply(x), m(y, rho.apply(x))) == a.apply(y)),
        find(&|a, b, x, y| m(m(conj(a, b, x), a.apply(y)), x) == y),
        find(&|a, b, x, y| m(conj(a, b, x), m(a.apply(y), x)) == y),
    ])
}

fn holomorph_inverse_property(t: &CayleyTable, p: Property, id: TheoremId, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(id, t);
    let (h, lab) = full_holomorph(t)?;
    let lhs = holds(&h, p, cfg)?;
    let aum = automorphism_group(t)?;
    let abelian = aum.is_abelian();
    let triples = forall_pairs(&aum, |a, b| {
        autotopism(t, b.inverse(), a.clone(), Permutation::identity(t.order()))
    })?;
    let base = holds(t, p, cfg)?;
    let rhs = abelian && triples.is_none() && base;
    r.clauses.push(Clause::iff(&format!("H(L) {p} <=> AUM abelian & (beta^-1, alpha, I) in AUT & L {p}"), lhs, rhs));
    let rho_triples = inverse_autotopisms(t, &aum, Side::Right)?;
    r.clauses.push(Clause::implies(
        &format!("H(L) {p} => (beta^-1 J_rho, alpha J_rho, J_rho) in AUT"),
        lhs,
        rho_triples.is_none(),
    ));
    r.conditions.push(Condition::new("AUM abelian", (!abelian).then(|| "non-commuting pair".to_string())));
    r.conditions.push(Condition::new("(beta^-1, alpha, I) in AUT", triples));
    r.conditions.push(Condition::new(&format!("L {p}"), (!base).then(String::new)));
    r.conditions.push(Condition::new("(beta^-1 J_rho, alpha J_rho, J_rho) in AUT", rho_triples));
    r.facts.insert("aum_order".into(), aum.order());
    r.facts.insert("holomorph_order".into(), lab.product_order());
    Ok(r.finish())
}

fn holomorph_isomorphic(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::HolomorphIsomorphic, t);
    let (h, _) = full_holomorph(t)?;
    let h_aip = holds(&h, Property::Aip, cfg)?;
    let h_cip = holds(&h, Property::Cip, cfg)?;
    let aum = automorphism_group(t)?;
    let iso = find_isomorphism(&h, t)?;
    r.clauses.push(Clause::implies(
        "H(L) AIP or CIP => |AUM| = 1 & H(L) ~ L",
        h_aip || h_cip,
        aum.is_trivial() && iso.is_some(),
    ));
    r.conditions.push(Condition::new("H(L) AIP", (!h_aip).then(String::new)));
    r.conditions.push(Condition::new("H(L) CIP", (!h_cip).then(String::new)));
    r.conditions.push(Condition::new("H(L) ~ L", iso.is_none().then(|| "no isomorphism".to_string())));
    r.facts.insert("aum_order".into(), aum.order());
    r.facts.insert("holomorph_order".into(), h.order());
    Ok(r.finish())
}

fn trivial_automorphisms(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::TrivialAutomorphisms, t);
    let (h, _) = full_holomorph(t)?;
    let h_aip = holds(&h, Property::Aip, cfg)?;
    let h_cip = holds(&h, Property::Cip, cfg)?;
    let aum = automorphism_group(t)?;
    let trivial = aum.is_trivial();
    let l_aip = holds(t, Property::Aip, cfg)?;
    let l_cip = holds(t, Property::Cip, cfg)?;
    r.clauses.push(Clause::iff(
        "H(L) AIP or CIP <=> AUM = {I} & L AIP or CIP",
        h_aip || h_cip,
        trivial && (l_aip || l_cip),
    ));
    r.clauses.push(Clause::iff("H(L) AIP <=> AUM = {I} & L AIP", h_aip, trivial && l_aip));
    r.clauses.push(Clause::iff("H(L) CIP <=> AUM = {I} & L CIP", h_cip, trivial && l_cip));
    r.facts.insert("aum_order".into(), aum.order());
    r.facts.insert("holomorph_order".into(), h.order());
    Ok(r.finish())
}

fn holomorph_cip_identities(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::HolomorphCipIdentities, t);
    let (h, _) = full_holomorph(t)?;
    let lhs = holds(&h, Property::Cip, cfg)?;
    let aum = automorphism_group(t)?;
    let abelian = aum.is_abelian();
    let conds = mixed_identities(t, &aum)?;
    let values: Vec<bool> = conds.iter().map(Option::is_none).collect();
    r.clauses.push(Clause::iff(
        "H(L) CIP <=> AUM abelian & one of the four identities",
        lhs,
        abelian && values.iter().any(|&v| v),
    ));
    for (i, &v) in values.iter().enumerate() {
        r.clauses.push(Clause::iff(&format!("H(L) CIP <=> AUM abelian & identity {}", i + 1), lhs, abelian && v));
    }
    r.clauses.push(Clause::implies(
        "H(L) CIP => the four identities agree",
        lhs,
        values.iter().all(|&v| v == values[0]),
    ));
    let names = [
        "(x beta . y) x^rho = y alpha",
        "x beta . y x^rho = y alpha",
        "(x^lambda alpha^-1 beta alpha . y alpha) . x = y",
        "x^lambda alpha^-1 beta alpha . (y alpha . x) = y",
    ];
    for (name, w) in names.iter().zip(conds) {
        r.conditions.push(Condition::new(name, w));
    }
    r.facts.insert("aum_order".into(), aum.order());
    Ok(r.finish())
}

fn cip_autotopisms(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::CipAutotopisms, t);
    let (h, _) = full_holomorph(t)?;
    let lhs = holds(&h, Property::Cip, cfg)?;
    let aum = automorphism_group(t)?;
    let id = Permutation::identity(t.order());
    let mut six = vec![
        ("(beta^-1 J_rho, alpha J_rho, J_rho) in AUT".to_string(), inverse_autotopisms(t, &aum, Side::Right)?),
        ("(beta^-1 J_lambda, alpha J_lambda, J_lambda) in AUT".to_string(), inverse_autotopisms(t, &aum, Side::Left)?),
    ];
    for (i, w) in mixed_identities(t, &aum)?.into_iter().enumerate() {
        six.push((format!("identity {}", i + 1), w));
    }
    let agree = six.iter().all(|(_, w)| w.is_none() == six[0].1.is_none());
    type Family<'a> = (&'a str, Box<dyn Fn(&Permutation, &Permutation) -> AutotopismTriple + 'a>);
    let families: [Family; 4] = [
        ("(beta, alpha, I)", Box::new(|a, b| AutotopismTriple { u: b.clone(), v: a.clone(), w: id.clone() })),
        ("(alpha, beta, I)", Box::new(|a, b| AutotopismTriple { u: a.clone(), v: b.clone(), w: id.clone() })),
        ("(beta, I, alpha)", Box::new(|a, b| AutotopismTriple { u: b.clone(), v: id.clone(), w: a.clone() })),
        ("(I, alpha, beta)", Box::new(|a, b| AutotopismTriple { u: id.clone(), v: a.clone(), w: b.clone() })),
    ];
    let mut triples_ok = true;
    let mut triple_conditions = Vec::new();
    for (name, make) in &families {
        let w = forall_pairs(&aum, |a, b| is_autotopism(t, &make(a, b)))?;
        triples_ok &= w.is_none();
        triple_conditions.push(Condition::new(&format!("{name} in AUT"), w));
    }
    r.clauses.push(Clause::implies(
        "H(L) CIP => six conditions agree & four triples in AUT",
        lhs,
        agree && triples_ok,
    ));
    for (name, w) in six {
        r.conditions.push(Condition::new(&name, w));
    }
    r.conditions.extend(triple_conditions);
    r.facts.insert("aum_order".into(), aum.order());
    Ok(r.finish())
}

fn cip_exponent_two(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::CipExponentTwo, t);
    let (h, _) = full_holomorph(t)?;
    let lhs = holds(&h, Property::Cip, cfg)?;
    let flex = holds(t, Property::Flex, cfg)?;
    let exp2 = holds(t, Property::Exp2, cfg)?;
    r.clauses.push(Clause::implies("H(L) CIP => L flexible & exponent 2", lhs, flex && exp2));
    r.conditions.push(Condition::new("L FLEX", (!flex).then(String::new)));
    r.conditions.push(Condition::new("L EXP2", (!exp2).then(String::new)));
    Ok(r.finish())
}

fn osborn(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::Osborn, t);
    let cip = holds(t, Property::Cip, cfg)?;
    let wip = holds(t, Property::Wip, cfg)?;
    let aip = holds(t, Property::Aip, cfg)?;
    r.clauses.push(Clause::iff("L CIP <=> L WIP & L AIP", cip, wip && aip));
    Ok(r.finish())
}

fn huthnance(t: &CayleyTable, cfg: &VerifyConfig) -> Result<TheoremReport> {
    let mut r = Builder::new(TheoremId::Huthnance, t);
    let wip = holds(t, Property::Wip, cfg)?;
    let (h, _) = full_holomorph(t)?;
    r.clauses.push(Clause::iff("L WIP <=> H(L) WIP", wip, holds(&h, Property::Wip, cfg)?));
    r.facts.insert("holomorph_order".into(), h.order());
    Ok(r.finish())
}

/// The automorphisms `SAUM` induces on `g`, as permutations of positions.
fn induced_group(g: &Subset, saum: &PermutationGroup) -> Result<PermutationGroup> {
    let m = g.members();
    let pos = |x: usize| m.binary_search(&x).expect("SAUM stabilizes g");
    let restricted = saum
        .elements()
        .iter()
        .map(|a| Permutation::new(m.iter().map(|&x| pos(a.apply(x))).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermutationGroup::from_elements(m.len(), restricted)
}

fn smarandache(t: &CayleyTable, id: TheoremId, props: &[Property], cfg: &VerifyConfig) -> Result<TheoremReport> {
    t.require_loop()?;
    let mut r = Builder::new(id, t);
    let groups = s_subgroups(t, &cfg.smarandache)?;
    let maximal = maximal_s_subgroups(t, &cfg.smarandache)?;
    let mut exists_lhs = vec![false; props.len()];
    let mut exists_rhs = vec![false; props.len()];
    for g in &groups {
        let (hs, _) = build_s_holomorph(t, g)?;
        let saum = smarandache_automorphism_group(t, g)?;
        let sub = g.subtable(t);
        let induced = induced_group(g, &saum)?;
        let (h_ind, _) = build_holomorph(&sub, &induced)?;
        let mut report = SubgroupReport {
            subgroup: g.clone(),
            maximal: maximal.contains(g),
            saum_order: saum.order(),
            induced_order: induced.order(),
            clauses: Vec::new(),
            induced: Vec::new(),
            conditions: Vec::new(),
        };
        for (i, &p) in props.iter().enumerate() {
            let lhs = holds(&hs, p, cfg)?;
            let base = holds(&sub, p, cfg)?;
            let rhs = saum.is_trivial() && base;
            exists_lhs[i] |= lhs;
            exists_rhs[i] |= rhs;
            report.clauses.push(Clause::iff(&format!("H_S {p} <=> SAUM = {{I}} & G {p}"), lhs, rhs));
            report.induced.push(Clause::iff(
                &format!("G x SAUM|G {p} <=> SAUM|G = {{I}} & G {p}"),
                holds(&h_ind, p, cfg)?,
                induced.is_trivial() && base,
            ));
            report.conditions.push(Condition::new(&format!("G {p}"), (!base).then(String::new)));
        }
        r.subgroups.push(report);
    }
    for (i, p) in props.iter().enumerate() {
        r.clauses.push(Clause::iff(
            &format!("some H_S {p} <=> some G with SAUM = {{I}} & G {p}"),
            exists_lhs[i],
            exists_rhs[i],
        ));
    }
    if !groups.is_empty() {
        let aum = automorphism_group(t)?;
        let stabilizes = |a: &Permutation, g: &Subset| g.members().iter().all(|&x| g.contains(a.apply(x)));
        let all = aum.elements().iter().filter(|a| groups.iter().all(|g| stabilizes(a, g))).count();
        let any = aum.elements().iter().filter(|a| groups.iter().any(|g| stabilizes(a, g))).count();
        r.facts.insert("aum_order".into(), aum.order());
        r.facts.insert("saum_stabilizes_all".into(), all);
        r.facts.insert("saum_stabilizes_some".into(), any);
    }
    r.facts.insert("s_subgroups".into(), groups.len());
    Ok(r.finish())
}

pub fn verify(t: &CayleyTable, id: TheoremId) -> Result<TheoremReport> {
    verify_with(t, id, &VerifyConfig::default())
}

pub fn verify_with(t: &CayleyTable, id: TheoremId, cfg: &VerifyConfig) -> Result<TheoremReport> {
    t.require_loop()?;
    match id {
        TheoremId::HolomorphAip => holomorph_inverse_property(t, Property::Aip, id, cfg),
        TheoremId::HolomorphCip => holomorph_inverse_property(t, Property::Cip, id, cfg),
        TheoremId::HolomorphIsomorphic => holomorph_isomorphic(t, cfg),
        TheoremId::TrivialAutomorphisms => trivial_automorphisms(t, cfg),
        TheoremId::HolomorphCipIdentities => holomorph_cip_identities(t, cfg),
        TheoremId::CipAutotopisms => cip_autotopisms(t, cfg),
        TheoremId::CipExponentTwo => cip_exponent_two(t, cfg),
        TheoremId::SmarandacheHolomorph => smarandache(t, id, &[Property::Aip, Property::Cip], cfg),
        TheoremId::SmarandacheComposites => {
            smarandache(t, id, &[Property::KLoop, Property::Bruck, Property::Kikkawa], cfg)
        }
        TheoremId::Osborn => osborn(t, cfg),
        TheoremId::Huthnance => huthnance(t, cfg),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub consistent: usize,
    pub inconsistent: usize,
    pub vacuous: usize,
    /// Subgroup-level inconsistencies of the induced-action reading.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub induced_inconsistent: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconsistency {
    pub theorem: TheoremId,
    pub loop_name: String,
    pub table: String,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub max_order: usize,
    pub up_to_iso: bool,
    pub loops_checked: usize,
    pub per_order: BTreeMap<usize, usize>,
    pub theorems: BTreeMap<TheoremId, Tally>,
    pub inconsistencies: Vec<Inconsistency>,
}

impl SweepSummary {
    pub fn total_inconsistent(&self) -> usize {
        self.theorems.values().map(|t| t.inconsistent).sum()
    }
}

fn run_all(tables: &[CayleyTable], ids: &[TheoremId], cfg: &VerifyConfig) -> Result<Vec<Vec<TheoremReport>>> {
    let one = |t: &CayleyTable| ids.iter().map(|&id| verify_with(t, id, cfg)).collect::<Result<Vec<_>>>();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        tables.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        tables.iter().map(one).collect()
    }
}

/// Verifies every id on every catalog loop of orders `1..=max_order`.
pub fn sweep(
    max_order: usize,
    ids: &[TheoremId],
    up_to_iso: bool,
    cfg: &VerifyConfig,
    envelope: &Envelope,
) -> Result<SweepSummary> {
    envelope.check(max_order)?;
    let mut tables = Vec::new();
    let mut per_order = BTreeMap::new();
    for n in 1..=max_order {
        let before = tables.len();
        tables.extend(generate_loops(n, up_to_iso, envelope)?);
        per_order.insert(n, tables.len() - before);
    }
    sweep_tables(&tables, ids, cfg).map(|mut s| {
        s.max_order = max_order;
        s.up_to_iso = up_to_iso;
        s.per_order = per_order;
        s
    })
}

/// Verifies every id on the given tables.
pub fn sweep_tables(tables: &[CayleyTable], ids: &[TheoremId], cfg: &VerifyConfig) -> Result<SweepSummary> {
    let reports = run_all(tables, ids, cfg)?;
    let mut theorems: BTreeMap<TheoremId, Tally> = ids.iter().map(|&id| (id, Tally::default())).collect();
    let mut inconsistencies = Vec::new();
    for (t, rs) in tables.iter().zip(reports) {
        for r in rs {
            let tally = theorems.get_mut(&r.theorem).expect("requested id");
            match r.verdict {
                Verdict::Consistent => tally.consistent += 1,
                Verdict::Inconsistent => tally.inconsistent += 1,
                Verdict::Vacuous => tally.vacuous += 1,
            }
            tally.induced_inconsistent += r
                .subgroups
                .iter()
                .filter(|s| s.induced.iter().any(|c| c.verdict == Verdict::Inconsistent))
                .count();
            if r.verdict == Verdict::Inconsistent {
                inconsistencies.push(Inconsistency {
                    theorem: r.theorem,
                    loop_name: r.loop_name.clone(),
                    table: t.to_text(),
                    report: r,
                });
            }
        }
    }
    let per_order = tables.iter().fold(BTreeMap::new(), |mut m, t| {
        *m.entry(t.order()).or_insert(0) += 1;
        m
    });
    Ok(SweepSummary {
        max_order: tables.iter().map(CayleyTable::order).max().unwrap_or(0),
        up_to_iso: false,
        loops_checked: tables.len(),
        per_order,
        theorems,
        inconsistencies,
    })
}
