//! Automorphism groups, isomorphism search and autotopism membership.

use std::collections::HashMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subalgebra::{nucleus, require_s_subgroup, NucleusKind, Subset};
use crate::table::CayleyTable;

/// A triple `(U, V, W)` with `xU ∘ yV = (x·y)W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutotopismTriple {
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
}

impl AutotopismTriple {
    pub fn new(u: Permutation, v: Permutation, w: Permutation) -> Result<Self> {
        for p in [&v, &w] {
            if p.degree() != u.degree() {
                return Err(Error::DegreeMismatch {
                    expected: u.degree(),
                    found: p.degree(),
                });
            }
        }
        Ok(AutotopismTriple { u, v, w })
    }

    pub fn diagonal(p: Permutation) -> Self {
        AutotopismTriple {
            u: p.clone(),
            v: p.clone(),
            w: p,
        }
    }

    pub fn degree(&self) -> usize {
        self.u.degree()
    }
}

/// A finite group of permutations, kept sorted by image sequence so the
/// identity comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::from_sorted(degree, vec![Permutation::identity(degree)])
    }

    fn from_sorted(degree: usize, elements: Vec<Permutation>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermutationGroup {
            degree,
            elements,
            index,
        }
    }

    /// Validates the group axioms by direct multiplication.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        elements.sort();
        elements.dedup();
        let g = PermutationGroup::from_sorted(degree, elements);
        g.check_axioms()?;
        Ok(g)
    }

    pub fn check_axioms(&self) -> Result<()> {
        if !self.elements.first().is_some_and(Permutation::is_identity) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        for a in &self.elements {
            if !self.contains(&a.inverse()) {
                return Err(Error::NotAGroup(format!("inverse of {a} missing")));
            }
            for b in &self.elements {
                if !self.contains(&a.then(b)) {
                    return Err(Error::NotAGroup(format!("{a}{b} not in the set")));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Elements satisfying `keep`, checked to form a group.
    pub fn filter(&self, keep: impl Fn(&Permutation) -> bool) -> Result<PermutationGroup> {
        let kept = self.elements.iter().filter(|p| keep(p)).cloned().collect();
        PermutationGroup::from_elements(self.degree, kept)
    }
}

impl Serialize for PermutationGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

pub fn is_automorphism(t: &CayleyTable, p: &Permutation) -> bool {
    p.degree() == t.order() && crate::properties::is_automorphism_images(t, p.images())
}

pub fn is_autotopism(t: &CayleyTable, a: &AutotopismTriple) -> Result<bool> {
    is_isotopism(t, t, a)
}

pub fn is_isotopism(src: &CayleyTable, dst: &CayleyTable, a: &AutotopismTriple) -> Result<bool> {
    let n = src.order();
    if dst.order() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: dst.order(),
        });
    }
    if a.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: a.degree(),
        });
    }
    Ok((0..n).all(|x| {
        (0..n).all(|y| dst.op(a.u.apply(x), a.v.apply(y)) == a.w.apply(src.op(x, y)))
    }))
}

/// Isomorphism invariant per element: square is identity, size of the
/// generated subloop, and membership in the nuclei and centrum.
fn signatures(t: &CayleyTable, e: usize) -> Vec<(bool, usize, [bool; 4])> {
    let kinds = [
        NucleusKind::Left,
        NucleusKind::Right,
        NucleusKind::Middle,
        NucleusKind::Centrum,
    ];
    let sets: Vec<Subset> = kinds
        .iter()
        .map(|&k| nucleus(t, k).expect("latin checked"))
        .collect();
    (0..t.order())
        .map(|x| {
            let gen = crate::subalgebra::closure(t, &[x]).len();
            let member = [0, 1, 2, 3].map(|i| sets[i].contains(x));
            (t.op(x, x) == e, gen, member)
        })
        .collect()
}

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    n: usize,
    sig_a: Vec<(bool, usize, [bool; 4])>,
    sig_b: Vec<(bool, usize, [bool; 4])>,
    first_only: bool,
    found: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    /// Assigns `x ↦ v` and closes under products; false on contradiction.
    fn assign(&self, map: &mut [usize], inv: &mut [usize], assigned: &mut Vec<usize>, x: usize, v: usize) -> bool {
        if map[x] != UNSET {
            return map[x] == v;
        }
        if inv[v] != UNSET || self.sig_a[x] != self.sig_b[v] {
            return false;
        }
        map[x] = v;
        inv[v] = x;
        assigned.push(x);
        let mut next = assigned.len() - 1;
        while next < assigned.len() {
            let k = assigned[next];
            next += 1;
            let mut j = 0;
            while j < assigned.len() {
                let other = assigned[j];
                j += 1;
                for (p, q) in [(k, other), (other, k)] {
                    let z = self.a.op(p, q);
                    let target = self.b.op(map[p], map[q]);
                    if map[z] == UNSET {
                        if inv[target] != UNSET || self.sig_a[z] != self.sig_b[target] {
                            return false;
                        }
                        map[z] = target;
                        inv[target] = z;
                        assigned.push(z);
                    } else if map[z] != target {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, map: &[usize], inv: &[usize], assigned: &[usize]) -> bool {
        let Some(x) = (0..self.n).find(|&x| map[x] == UNSET) else {
            self.found.push(map.to_vec());
            return self.first_only;
        };
        for v in 0..self.n {
            if inv[v] != UNSET {
                continue;
            }
            let mut m = map.to_vec();
            let mut i = inv.to_vec();
            let mut asg = assigned.to_vec();
            if self.assign(&mut m, &mut i, &mut asg, x, v) && self.dfs(&m, &i, &asg) {
                return true;
            }
        }
        false
    }
}

/// All isomorphisms `a → b` in lexicographic order of image sequences (or
/// only the first). Both tables must be loops of the same order.
fn isomorphisms(a: &CayleyTable, b: &CayleyTable, first_only: bool) -> Result<Vec<Vec<usize>>> {
    let ea = a.require_loop()?;
    let eb = b.require_loop()?;
    let n = a.order();
    if b.order() != n {
        return Ok(Vec::new());
    }
    let mut s = Search {
        a,
        b,
        n,
        sig_a: signatures(a, ea),
        sig_b: signatures(b, eb),
        first_only,
        found: Vec::new(),
    };
    let mut map = vec![UNSET; n];
    let mut inv = vec![UNSET; n];
    let mut assigned = Vec::new();
    if s.assign(&mut map, &mut inv, &mut assigned, ea, eb) {
        s.dfs(&map, &inv, &assigned);
    }
    Ok(s.found)
}

/// `AUM(t)`: every bijection `φ` with `xφ·yφ = (x·y)φ`.
pub fn automorphism_group(t: &CayleyTable) -> Result<PermutationGroup> {
    let elements = isomorphisms(t, t, false)?
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    PermutationGroup::from_elements(t.order(), elements)
}

/// The lexicographically first isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Result<Option<Permutation>> {
    Ok(isomorphisms(a, b, true)?
        .into_iter()
        .next()
        .map(Permutation::from_images_unchecked))
}

/// Automorphisms of `t` that map the S-subgroup `g` onto itself.
pub fn smarandache_automorphism_group(t: &CayleyTable, g: &Subset) -> Result<PermutationGroup> {
    require_s_subgroup(t, g)?;
    let aum = automorphism_group(t)?;
    aum.filter(|p| g.members().iter().all(|&x| g.contains(p.apply(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{cyclic, klein_four, symmetric3};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    /// Counts bijections fixing the identity that preserve the table.
    fn brute_force_aut_order(t: &CayleyTable) -> usize {
        fn rec(t: &CayleyTable, img: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let n = t.order();
            if img.len() == n {
                if is_automorphism(t, &perm(img)) {
                    *count += 1;
                }
                return;
            }
            let x = img.len();
            for v in 0..n {
                if used[v] || (x == 0) != (v == 0) {
                    continue;
                }
                used[v] = true;
                img.push(v);
                rec(t, img, used, count);
                img.pop();
                used[v] = false;
            }
        }
        let mut count = 0;
        rec(t, &mut Vec::new(), &mut vec![false; t.order()], &mut count);
        count
    }

    #[test]
    fn automorphism_group_orders() {
        for (t, order) in [(cyclic(2), 1), (cyclic(3), 2), (klein_four(), 6), (symmetric3(), 6)] {
            let g = automorphism_group(&t).unwrap();
            assert_eq!(g.order(), order, "{}", t.label());
            assert_eq!(brute_force_aut_order(&t), order);
            assert!(g.elements()[0].is_identity());
        }
        let g = automorphism_group(&cyclic(3)).unwrap();
        assert_eq!(g.elements()[1].images(), &[0, 2, 1]);
    }

    #[test]
    fn autotopism_membership() {
        let c3 = cyclic(3);
        let id = perm(&[0, 1, 2]);
        assert!(is_autotopism(&c3, &AutotopismTriple::diagonal(id.clone())).unwrap());
        // perturb one image of the inversion automorphism
        let bad = perm(&[1, 2, 0]);
        assert!(!is_autotopism(&c3, &AutotopismTriple::diagonal(bad)).unwrap());
        // any (L_a, R_b, L_a R_b) in a group: a·x·y·b
        let l1 = c3.translation(1, crate::table::Side::Left).unwrap();
        let r1 = c3.translation(1, crate::table::Side::Right).unwrap();
        let t = AutotopismTriple::new(l1.clone(), r1.clone(), l1.then(&r1)).unwrap();
        assert!(is_autotopism(&c3, &t).unwrap());
        let short = AutotopismTriple::diagonal(perm(&[0, 1]));
        assert!(matches!(is_autotopism(&c3, &short), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn isotopisms_between_tables() {
        let c2 = cyclic(2);
        let swap = perm(&[1, 0]);
        // (x+1) + (y+1) = x + y ≠ (x + y) + 1, so the diagonal swap fails;
        // (swap, I, swap) works
        assert!(!is_isotopism(&c2, &c2, &AutotopismTriple::diagonal(swap.clone())).unwrap());
        let t = AutotopismTriple::new(swap.clone(), perm(&[0, 1]), swap).unwrap();
        assert!(is_isotopism(&c2, &c2, &t).unwrap());
        assert!(is_isotopism(&cyclic(3), &cyclic(2), &t).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let c3 = cyclic(3);
        let phi = perm(&[2, 0, 1]);
        let renamed = c3.renumber(&phi);
        let found = find_isomorphism(&c3, &renamed).unwrap().unwrap();
        assert_eq!(renamed, c3.renumber(&found));
        assert!(find_isomorphism(&cyclic(4), &klein_four()).unwrap().is_none());
        assert!(find_isomorphism(&cyclic(4), &cyclic(3)).unwrap().is_none());
    }

    #[test]
    fn smarandache_automorphisms() {
        let c3 = cyclic(3);
        assert_eq!(smarandache_automorphism_group(&c3, &Subset::full(3)).unwrap().order(), 2);
        let s3 = symmetric3();
        let rot = Subset::new(vec![0, 3, 4], 6).unwrap();
        assert_eq!(smarandache_automorphism_group(&s3, &rot).unwrap().order(), 6);
        let v4 = klein_four();
        let c2 = Subset::new(vec![0, 1], 4).unwrap();
        let saum = smarandache_automorphism_group(&v4, &c2).unwrap();
        assert_eq!(saum.order(), 2);
        assert!(saum.is_subgroup_of(&automorphism_group(&v4).unwrap()));
        let not_closed = Subset::new(vec![0, 1, 2], 4).unwrap();
        assert!(smarandache_automorphism_group(&v4, &not_closed).is_err());
    }

    #[test]
    fn group_axioms_checked() {
        let bad = PermutationGroup::from_elements(3, vec![perm(&[0, 1, 2]), perm(&[1, 2, 0])]);
        assert!(matches!(bad, Err(Error::NotAGroup(_))));
        let g = PermutationGroup::from_elements(3, vec![perm(&[1, 2, 0]), perm(&[2, 0, 1]), perm(&[0, 1, 2])]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        assert_eq!(serde_json::to_string(&g).unwrap(), "[[0,1,2],[1,2,0],[2,0,1]]");
    }
}
