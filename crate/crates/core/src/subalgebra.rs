//! Subloops and the nuclear sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// A sorted set of elements of a table of order `parent_order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<usize>,
    parent_order: usize,
}

impl Subset {
    pub fn new(mut members: Vec<usize>, parent_order: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= parent_order) {
            return Err(Error::OutOfRange {
                element: m,
                order: parent_order,
            });
        }
        Ok(Subset {
            members,
            parent_order,
        })
    }

    pub fn full(n: usize) -> Self {
        Subset {
            members: (0..n).collect(),
            parent_order: n,
        }
    }

    fn from_mask(mask: &[bool]) -> Self {
        Subset {
            members: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect(),
            parent_order: mask.len(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            members: self.members.iter().copied().filter(|&m| other.contains(m)).collect(),
            parent_order: self.parent_order,
        }
    }

    pub fn is_closed(&self, t: &CayleyTable) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.contains(t.op(a, b))))
    }

    pub fn subtable(&self, t: &CayleyTable) -> CayleyTable {
        t.subtable(&self.members)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        s.serialize_str(&parts.join(","))
    }
}

/// Deserializes without a parent order; the result claims the smallest
/// order that holds every member.
impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let members: Vec<usize> = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(serde::de::Error::custom))
                .collect::<std::result::Result<_, _>>()?
        };
        let order = members.iter().max().map_or(0, |m| m + 1);
        Subset::new(members, order).map_err(serde::de::Error::custom)
    }
}

fn close(t: &CayleyTable, mask: &mut [bool], list: &mut Vec<usize>) {
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            for (a, b) in [(list[i], list[j]), (list[j], list[i])] {
                let p = t.op(a, b);
                if !mask[p] {
                    mask[p] = true;
                    list.push(p);
                }
            }
        }
        i += 1;
    }
}

/// Smallest closed subset containing `seed`.
pub fn closure(t: &CayleyTable, seed: &[usize]) -> Subset {
    let mut mask = vec![false; t.order()];
    let mut list = Vec::new();
    for &s in seed {
        if !mask[s] {
            mask[s] = true;
            list.push(s);
        }
    }
    close(t, &mut mask, &mut list);
    Subset::from_mask(&mask)
}

/// Every non-empty closed subset. On a finite Latin table these are exactly
/// the subquasigroups. Grows closures one element at a time, which reaches
/// every closed subset through a chain inside it.
pub fn closed_subsets(t: &CayleyTable) -> Vec<Subset> {
    let n = t.order();
    let mut found: BTreeSet<Subset> = BTreeSet::new();
    let mut queue = Vec::new();
    for x in 0..n {
        let s = closure(t, &[x]);
        if found.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(s) = queue.pop() {
        for a in 0..n {
            if s.contains(a) {
                continue;
            }
            let mut seed = s.members.clone();
            seed.push(a);
            let grown = closure(t, &seed);
            if found.insert(grown.clone()) {
                queue.push(grown);
            }
        }
    }
    let mut out: Vec<Subset> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// All subloops, sorted by size and then lexicographically.
pub fn subloops(t: &CayleyTable) -> Result<Vec<Subset>> {
    t.require_loop()?;
    Ok(closed_subsets(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NucleusKind {
    Left,
    Right,
    Middle,
    Full,
    Centrum,
    Center,
}

impl NucleusKind {
    pub const ALL: [NucleusKind; 6] = [
        NucleusKind::Left,
        NucleusKind::Right,
        NucleusKind::Middle,
        NucleusKind::Full,
        NucleusKind::Centrum,
        NucleusKind::Center,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NucleusKind::Left => "left",
            NucleusKind::Right => "right",
            NucleusKind::Middle => "middle",
            NucleusKind::Full => "full",
            NucleusKind::Centrum => "centrum",
            NucleusKind::Center => "center",
        }
    }
}

impl FromStr for NucleusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NucleusKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn scan(t: &CayleyTable, keep: impl Fn(usize) -> bool) -> Subset {
    let mask: Vec<bool> = (0..t.order()).map(keep).collect();
    Subset::from_mask(&mask)
}

fn all_pairs(n: usize, f: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| f(x, y)))
}

pub fn nucleus(t: &CayleyTable, kind: NucleusKind) -> Result<Subset> {
    t.require_latin()?;
    let n = t.order();
    let m = |x, y| t.op(x, y);
    Ok(match kind {
        // ax·y = a·xy
        NucleusKind::Left => scan(t, |a| all_pairs(n, |x, y| m(m(a, x), y) == m(a, m(x, y)))),
        // y·xa = yx·a
        NucleusKind::Right => scan(t, |a| all_pairs(n, |x, y| m(y, m(x, a)) == m(m(y, x), a))),
        // ya·x = y·ax
        NucleusKind::Middle => scan(t, |a| all_pairs(n, |x, y| m(m(y, a), x) == m(y, m(a, x)))),
        NucleusKind::Full => nucleus(t, NucleusKind::Left)?
            .intersection(&nucleus(t, NucleusKind::Right)?)
            .intersection(&nucleus(t, NucleusKind::Middle)?),
        NucleusKind::Centrum => scan(t, |a| (0..n).all(|x| m(a, x) == m(x, a))),
        NucleusKind::Center => nucleus(t, NucleusKind::Full)?.intersection(&nucleus(t, NucleusKind::Centrum)?),
    })
}

/// Checks that `g` is a non-trivial closed associative subset of `t`
/// (containing the identity when `t` has one).
pub fn require_s_subgroup(t: &CayleyTable, g: &Subset) -> Result<()> {
    t.require_latin()?;
    if g.parent_order() != t.order() {
        return Err(Error::DegreeMismatch {
            expected: t.order(),
            found: g.parent_order(),
        });
    }
    if g.len() < 2 {
        return Err(Error::NotSSubsemigroup(format!("{g} is trivial")));
    }
    if !g.is_closed(t) {
        return Err(Error::NotSSubsemigroup(format!("{g} is not closed")));
    }
    let m = g.members();
    let assoc = m
        .iter()
        .all(|&x| m.iter().all(|&y| m.iter().all(|&z| t.op(t.op(x, y), z) == t.op(x, t.op(y, z)))));
    if !assoc {
        return Err(Error::NotSSubsemigroup(format!("{g} is not associative")));
    }
    Ok(())
}

/// `nucleus(t, kind) ∩ g` for an S-subgroup `g`.
pub fn smarandache_nucleus(t: &CayleyTable, g: &Subset, kind: NucleusKind) -> Result<Subset> {
    require_s_subgroup(t, g)?;
    Ok(nucleus(t, kind)?.intersection(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{cyclic, klein_four, symmetric3};
    use crate::table::parse_table;

    fn subset(m: &[usize], n: usize) -> Subset {
        Subset::new(m.to_vec(), n).unwrap()
    }

    /// Every closed subset containing the identity, by scanning the power set.
    fn power_set_subloops(t: &CayleyTable) -> Vec<Subset> {
        let n = t.order();
        let e = t.identity_of().unwrap();
        let mut out: Vec<Subset> = (0u32..(1 << n))
            .filter(|mask| mask & (1 << e) != 0)
            .map(|mask| Subset::from_mask(&(0..n).map(|i| mask & (1 << i) != 0).collect::<Vec<_>>()))
            .filter(|s| s.is_closed(t))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        out
    }

    #[test]
    fn subloops_of_small_groups() {
        assert_eq!(subloops(&cyclic(3)).unwrap(), vec![subset(&[0], 3), Subset::full(3)]);
        assert_eq!(subloops(&cyclic(2)).unwrap(), vec![subset(&[0], 2), Subset::full(2)]);
        let sizes: Vec<usize> = subloops(&symmetric3()).unwrap().iter().map(Subset::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn closure_growth_matches_power_set() {
        for t in [cyclic(6), klein_four(), symmetric3(), cyclic(4)] {
            assert_eq!(subloops(&t).unwrap(), power_set_subloops(&t));
        }
        let l5 = parse_table("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0").unwrap();
        assert_eq!(subloops(&l5).unwrap(), power_set_subloops(&l5));
    }

    #[test]
    fn nuclei_of_groups() {
        let s3 = symmetric3();
        assert_eq!(nucleus(&s3, NucleusKind::Full).unwrap(), Subset::full(6));
        assert_eq!(nucleus(&s3, NucleusKind::Center).unwrap(), subset(&[0], 6));
        assert_eq!(nucleus(&cyclic(5), NucleusKind::Centrum).unwrap(), Subset::full(5));
    }

    #[test]
    fn smarandache_nuclei() {
        let s3 = symmetric3();
        let g = subset(&[0, 1], 6);
        assert_eq!(smarandache_nucleus(&s3, &g, NucleusKind::Center).unwrap(), subset(&[0], 6));
        assert_eq!(smarandache_nucleus(&s3, &g, NucleusKind::Full).unwrap(), g);
        assert!(matches!(
            smarandache_nucleus(&s3, &subset(&[0, 1, 2], 6), NucleusKind::Full),
            Err(Error::NotSSubsemigroup(_))
        ));
    }

    #[test]
    fn subset_serializes_as_comma_list() {
        let g = subset(&[3, 0, 1], 6);
        assert_eq!(serde_json::to_string(&g).unwrap(), "\"0,1,3\"");
        assert_eq!(g.to_string(), "{0,1,3}");
        let back: Subset = serde_json::from_str("\"0,1,3\"").unwrap();
        assert_eq!(back.members(), g.members());
    }
}
