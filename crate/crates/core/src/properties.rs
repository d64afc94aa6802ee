//! Identity-based loop properties.
//!
//! Every check scans all element tuples in lexicographic order and reports
//! the first failing tuple as a witness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{CayleyTable, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "WIP")]
    Wip,
    #[serde(rename = "AIP")]
    Aip,
    #[serde(rename = "CIP")]
    Cip,
    #[serde(rename = "IP")]
    Ip,
    #[serde(rename = "FLEX")]
    Flex,
    #[serde(rename = "EXP2")]
    Exp2,
    #[serde(rename = "LBOL")]
    LBol,
    #[serde(rename = "RBOL")]
    RBol,
    #[serde(rename = "COMM")]
    Comm,
    #[serde(rename = "ASSOC")]
    Assoc,
    #[serde(rename = "ALOOP")]
    ALoop,
    #[serde(rename = "KLOOP")]
    KLoop,
    #[serde(rename = "BRUCK")]
    Bruck,
    #[serde(rename = "KIKKAWA")]
    Kikkawa,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::Wip,
        Property::Aip,
        Property::Cip,
        Property::Ip,
        Property::Flex,
        Property::Exp2,
        Property::LBol,
        Property::RBol,
        Property::Comm,
        Property::Assoc,
        Property::ALoop,
        Property::KLoop,
        Property::Bruck,
        Property::Kikkawa,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Property::Wip => "WIP",
            Property::Aip => "AIP",
            Property::Cip => "CIP",
            Property::Ip => "IP",
            Property::Flex => "FLEX",
            Property::Exp2 => "EXP2",
            Property::LBol => "LBOL",
            Property::RBol => "RBOL",
            Property::Comm => "COMM",
            Property::Assoc => "ASSOC",
            Property::ALoop => "ALOOP",
            Property::KLoop => "KLOOP",
            Property::Bruck => "BRUCK",
            Property::Kikkawa => "KIKKAWA",
        }
    }

    /// Whether the defining identity mentions `e`, `J_ρ` or `J_λ`.
    pub fn needs_identity(self) -> bool {
        !matches!(
            self,
            Property::Flex
                | Property::Exp2
                | Property::LBol
                | Property::RBol
                | Property::Comm
                | Property::Assoc
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Which Bol identity a Bruck loop is built on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BolChirality {
    #[default]
    Left,
    Right,
}

impl FromStr for BolChirality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(BolChirality::Left),
            "right" => Ok(BolChirality::Right),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyConfig {
    pub bruck: BolChirality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: Property,
    pub holds: bool,
    /// First failing tuple, in the variable order of the identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// Which component or inner mapping failed, for composite checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyCheck {
    fn from_witness(property: Property, witness: Option<Vec<usize>>) -> Self {
        PropertyCheck {
            property,
            holds: witness.is_none(),
            witness,
            note: None,
        }
    }
}

struct Ctx<'a> {
    t: &'a CayleyTable,
    n: usize,
    rho: Vec<usize>,
    lam: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(t: &'a CayleyTable) -> Result<Self> {
        let e = t.identity_of().ok_or(Error::NoIdentity)?;
        Ok(Ctx {
            t,
            n: t.order(),
            rho: t.inverse_map_with(e, Side::Right).images().to_vec(),
            lam: t.inverse_map_with(e, Side::Left).images().to_vec(),
        })
    }

    #[inline]
    fn m(&self, x: usize, y: usize) -> usize {
        self.t.op(x, y)
    }
}

fn first2(n: usize, fails: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if fails(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn first3(n: usize, fails: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if fails(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

fn wip(c: &Ctx) -> Option<Vec<usize>> {
    // x(yx)^ρ = y^ρ
    first2(c.n, |x, y| c.m(x, c.rho[c.m(y, x)]) != c.rho[y])
}

fn aip(c: &Ctx) -> Option<Vec<usize>> {
    // (xy)^ρ = x^ρ y^ρ
    first2(c.n, |x, y| c.rho[c.m(x, y)] != c.m(c.rho[x], c.rho[y]))
}

/// The four displayed forms of the cross inverse property, in order.
fn cip_forms(c: &Ctx) -> [Option<Vec<usize>>; 4] {
    [
        first2(c.n, |x, y| c.m(c.m(x, y), c.rho[x]) != y),
        first2(c.n, |x, y| c.m(x, c.m(y, c.rho[x])) != y),
        first2(c.n, |x, y| c.m(c.lam[x], c.m(y, x)) != y),
        first2(c.n, |x, y| c.m(c.m(c.lam[x], y), x) != y),
    ]
}

fn ip(c: &Ctx) -> Option<Vec<usize>> {
    first2(c.n, |x, y| c.m(c.lam[x], c.m(x, y)) != y || c.m(c.m(y, x), c.rho[x]) != y)
}

fn flex(t: &CayleyTable) -> Option<Vec<usize>> {
    first2(t.order(), |x, y| t.op(x, t.op(y, x)) != t.op(t.op(x, y), x))
}

fn exp2(t: &CayleyTable) -> Option<Vec<usize>> {
    // x·x = e for loops; constant square for identity-free quasigroups
    let target = t.identity_of().unwrap_or_else(|| t.op(0, 0));
    (0..t.order()).find(|&x| t.op(x, x) != target).map(|x| vec![x])
}

fn lbol(t: &CayleyTable) -> Option<Vec<usize>> {
    // x(y(xz)) = (x(yx))z
    first3(t.order(), |x, y, z| {
        t.op(x, t.op(y, t.op(x, z))) != t.op(t.op(x, t.op(y, x)), z)
    })
}

fn rbol(t: &CayleyTable) -> Option<Vec<usize>> {
    // ((zy)x)y = z((yx)y), reported as (x, y, z)
    first3(t.order(), |x, y, z| {
        t.op(t.op(t.op(z, y), x), y) != t.op(z, t.op(t.op(y, x), y))
    })
}

fn comm(t: &CayleyTable) -> Option<Vec<usize>> {
    first2(t.order(), |x, y| t.op(x, y) != t.op(y, x))
}

fn assoc(t: &CayleyTable) -> Option<Vec<usize>> {
    first3(t.order(), |x, y, z| t.op(t.op(x, y), z) != t.op(x, t.op(y, z)))
}

pub(crate) fn is_automorphism_images(t: &CayleyTable, phi: &[usize]) -> bool {
    let n = t.order();
    (0..n).all(|x| (0..n).all(|y| phi[t.op(x, y)] == t.op(phi[x], phi[y])))
}

/// Checks that the generators `T(x) = R_x L_x⁻¹`, `L(x,y) = L_x L_y L_{yx}⁻¹`
/// and `R(x,y) = R_x R_y R_{xy}⁻¹` of the inner mapping group are all
/// automorphisms. Maps compose left to right.
fn a_loop(c: &Ctx) -> PropertyCheck {
    let n = c.n;
    let t = c.t;
    // ldiv[a*n+b] = a\b, rdiv[b*n+a] = b/a
    let mut ldiv = vec![0usize; n * n];
    let mut rdiv = vec![0usize; n * n];
    for a in 0..n {
        for u in 0..n {
            let b = t.op(a, u);
            ldiv[a * n + b] = u;
            let b = t.op(u, a);
            rdiv[b * n + a] = u;
        }
    }
    let fail = |witness: Vec<usize>, note: String| PropertyCheck {
        property: Property::ALoop,
        holds: false,
        witness: Some(witness),
        note: Some(note),
    };
    let mut img = vec![0usize; n];
    for x in 0..n {
        for (z, slot) in img.iter_mut().enumerate() {
            *slot = ldiv[x * n + t.op(z, x)];
        }
        if !is_automorphism_images(t, &img) {
            return fail(vec![x], format!("inner mapping T({x}) is not an automorphism"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let yx = t.op(y, x);
            for (z, slot) in img.iter_mut().enumerate() {
                *slot = ldiv[yx * n + t.op(y, t.op(x, z))];
            }
            if !is_automorphism_images(t, &img) {
                return fail(vec![x, y], format!("inner mapping L({x},{y}) is not an automorphism"));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = t.op(x, y);
            for (z, slot) in img.iter_mut().enumerate() {
                *slot = rdiv[t.op(t.op(z, x), y) * n + xy];
            }
            if !is_automorphism_images(t, &img) {
                return fail(vec![x, y], format!("inner mapping R({x},{y}) is not an automorphism"));
            }
        }
    }
    PropertyCheck::from_witness(Property::ALoop, None)
}

/// True iff every inner mapping of the loop is an automorphism.
pub fn is_a_loop(t: &CayleyTable) -> Result<PropertyCheck> {
    t.require_latin()?;
    let c = Ctx::new(t)?;
    Ok(a_loop(&c))
}

fn all_of(
    t: &CayleyTable,
    property: Property,
    parts: &[Property],
    config: &PropertyConfig,
) -> Result<PropertyCheck> {
    for &p in parts {
        let r = check_property_with(t, p, config)?;
        if !r.holds {
            let note = match r.note {
                Some(inner) => format!("{p} fails: {inner}"),
                None => format!("{p} fails"),
            };
            return Ok(PropertyCheck {
                property,
                holds: false,
                witness: r.witness,
                note: Some(note),
            });
        }
    }
    Ok(PropertyCheck::from_witness(property, None))
}

/// Decides `p` with the default configuration (Bruck loops are left Bol).
pub fn check_property(t: &CayleyTable, p: Property) -> Result<PropertyCheck> {
    check_property_with(t, p, &PropertyConfig::default())
}

pub fn check_property_with(
    t: &CayleyTable,
    p: Property,
    config: &PropertyConfig,
) -> Result<PropertyCheck> {
    t.require_latin()?;
    let ctx = if p.needs_identity() {
        Some(Ctx::new(t)?)
    } else {
        None
    };
    let c = || ctx.as_ref().expect("identity context");
    let w = match p {
        Property::Wip => wip(c()),
        Property::Aip => aip(c()),
        Property::Cip => {
            let forms = cip_forms(c());
            let holds = forms[0].is_none();
            if forms.iter().any(|f| f.is_none() != holds) {
                let summary: Vec<_> = forms.iter().map(|f| f.is_none()).collect();
                return Err(Error::CrossInverseForms(format!("form results {summary:?}")));
            }
            forms[0].clone()
        }
        Property::Ip => ip(c()),
        Property::Flex => flex(t),
        Property::Exp2 => exp2(t),
        Property::LBol => lbol(t),
        Property::RBol => rbol(t),
        Property::Comm => comm(t),
        Property::Assoc => assoc(t),
        Property::ALoop => return Ok(a_loop(c())),
        Property::KLoop => return all_of(t, p, &[Property::ALoop, Property::Aip], config),
        Property::Bruck => {
            let bol = match config.bruck {
                BolChirality::Left => Property::LBol,
                BolChirality::Right => Property::RBol,
            };
            return all_of(t, p, &[bol, Property::Aip], config);
        }
        Property::Kikkawa => {
            return all_of(t, p, &[Property::ALoop, Property::Ip, Property::Aip], config)
        }
    };
    Ok(PropertyCheck::from_witness(p, w))
}
