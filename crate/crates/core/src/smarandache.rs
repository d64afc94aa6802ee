//! S-subgroups and the Smarandache loop classes (S-loop, SAIPL, SCIPL,
//! SAL, SKL, SBRL, SKWL).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::properties::{check_property_with, Property, PropertyConfig};
use crate::subalgebra::{closed_subsets, Subset};
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmarandacheConfig {
    /// Exclude the whole loop as a witness.
    pub proper_only: bool,
    pub properties: PropertyConfig,
}

impl Default for SmarandacheConfig {
    fn default() -> Self {
        SmarandacheConfig {
            proper_only: true,
            properties: PropertyConfig::default(),
        }
    }
}

/// What a witness subloop must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// Associativity: the S-loop (S-quasigroup) notion.
    Group,
    Property(Property),
}

impl Target {
    /// The targets behind S-loop, SAIPL, SCIPL, SAL, SKL, SBRL and SKWL.
    pub const NAMED: [Target; 7] = [
        Target::Group,
        Target::Property(Property::Aip),
        Target::Property(Property::Cip),
        Target::Property(Property::ALoop),
        Target::Property(Property::KLoop),
        Target::Property(Property::Bruck),
        Target::Property(Property::Kikkawa),
    ];

    pub fn class_name(self) -> &'static str {
        match self {
            Target::Group => "S-loop",
            Target::Property(Property::Aip) => "SAIPL",
            Target::Property(Property::Cip) => "SCIPL",
            Target::Property(Property::ALoop) => "SAL",
            Target::Property(Property::KLoop) => "SKL",
            Target::Property(Property::Bruck) => "SBRL",
            Target::Property(Property::Kikkawa) => "SKWL",
            Target::Property(_) => "S-property",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Group => f.write_str("GROUP"),
            Target::Property(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("group") {
            Ok(Target::Group)
        } else {
            s.parse().map(Target::Property)
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn is_associative(t: &CayleyTable, g: &Subset) -> bool {
    let m = g.members();
    m.iter()
        .all(|&x| m.iter().all(|&y| m.iter().all(|&z| t.op(t.op(x, y), z) == t.op(x, t.op(y, z)))))
}

fn candidates(t: &CayleyTable, config: &SmarandacheConfig) -> Result<Vec<Subset>> {
    t.require_latin()?;
    let n = t.order();
    Ok(closed_subsets(t)
        .into_iter()
        .filter(|s| s.len() >= 2 && (!config.proper_only || s.len() < n))
        .collect())
}

/// Non-trivial associative subloops (subquasigroups when `t` has no
/// identity), smallest first.
pub fn s_subgroups(t: &CayleyTable, config: &SmarandacheConfig) -> Result<Vec<Subset>> {
    Ok(candidates(t, config)?
        .into_iter()
        .filter(|s| is_associative(t, s))
        .collect())
}

/// S-subgroups not contained in a larger one.
pub fn maximal_s_subgroups(t: &CayleyTable, config: &SmarandacheConfig) -> Result<Vec<Subset>> {
    let all = s_subgroups(t, config)?;
    Ok(all
        .iter()
        .filter(|g| !all.iter().any(|h| h.len() > g.len() && g.is_subset_of(h)))
        .cloned()
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmarandacheCheck {
    pub target: Target,
    pub class: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Subset>,
}

fn satisfies(t: &CayleyTable, s: &Subset, target: Target, config: &SmarandacheConfig) -> bool {
    match target {
        Target::Group => is_associative(t, s),
        Target::Property(p) => {
            // an identity-free subquasigroup cannot satisfy a property that
            // needs one
            check_property_with(&s.subtable(t), p, &config.properties).is_ok_and(|r| r.holds)
        }
    }
}

/// Whether some non-trivial subloop satisfies `target`; the witness is the
/// smallest such subloop.
pub fn is_smarandache(t: &CayleyTable, target: Target, config: &SmarandacheConfig) -> Result<SmarandacheCheck> {
    let witness = candidates(t, config)?
        .into_iter()
        .find(|s| satisfies(t, s, target, config));
    Ok(SmarandacheCheck {
        target,
        class: target.class_name(),
        holds: witness.is_some(),
        witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SClassification {
    pub s_subgroups: Vec<Subset>,
    pub per_property: BTreeMap<String, SmarandacheCheck>,
}

pub fn classify(t: &CayleyTable, config: &SmarandacheConfig) -> Result<SClassification> {
    t.require_loop()?;
    let s_subgroups = s_subgroups(t, config)?;
    let mut per_property = BTreeMap::new();
    for target in Target::NAMED {
        per_property.insert(target.to_string(), is_smarandache(t, target, config)?);
    }
    Ok(SClassification {
        s_subgroups,
        per_property,
    })
}
