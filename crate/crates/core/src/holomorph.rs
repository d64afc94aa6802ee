//! Holomorphs `L × A` under `(α, x)∘(β, y) = (αβ, xβ·y)`.
//!
//! Product element `i·k + p` stands for the pair `(A[i], base[p])`, where
//! `A` is sorted by image sequence (identity first) and `base` lists the
//! elements of the base loop (all of `L`, or an S-subgroup `G`).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphisms::{automorphism_group, is_automorphism, smarandache_automorphism_group, PermutationGroup};
use crate::perm::Permutation;
use crate::subalgebra::{nucleus, NucleusKind, Subset};
use crate::table::{CayleyTable, Side};

#[derive(Debug, Clone)]
pub struct HolomorphLabeling {
    automorphisms: PermutationGroup,
    base: Vec<usize>,
}

impl HolomorphLabeling {
    pub fn automorphisms(&self) -> &PermutationGroup {
        &self.automorphisms
    }

    /// Elements of the base loop, by position.
    pub fn base_elements(&self) -> &[usize] {
        &self.base
    }

    pub fn base_order(&self) -> usize {
        self.base.len()
    }

    pub fn product_order(&self) -> usize {
        self.automorphisms.order() * self.base.len()
    }

    /// Product element for `(automorphism index, base element)`.
    pub fn pair_to_element(&self, automorphism: usize, x: usize) -> Option<usize> {
        let p = self.base.binary_search(&x).ok()?;
        (automorphism < self.automorphisms.order()).then(|| automorphism * self.base.len() + p)
    }

    /// `(automorphism index, base element)` for a product element.
    pub fn element_to_pair(&self, element: usize) -> Option<(usize, usize)> {
        (element < self.product_order())
            .then(|| (element / self.base.len(), self.base[element % self.base.len()]))
    }

    /// The embedding `x ↦ (I, x)`, indexed by base position.
    pub fn embedding(&self) -> Vec<usize> {
        (0..self.base.len()).collect()
    }

    pub fn pairs(&self) -> Vec<PairLabel> {
        (0..self.product_order())
            .map(|element| {
                let (a, x) = self.element_to_pair(element).expect("in range");
                PairLabel {
                    element,
                    automorphism_index: a,
                    automorphism: self.automorphisms.get(a).clone(),
                    base: x,
                }
            })
            .collect()
    }
}

/// One entry of the sidecar mapping written next to holomorph tables.
#[derive(Debug, Clone, Serialize)]
pub struct PairLabel {
    pub element: usize,
    pub automorphism_index: usize,
    pub automorphism: Permutation,
    pub base: usize,
}

fn product(t: &CayleyTable, a: &PermutationGroup, base: &[usize]) -> CayleyTable {
    let k = base.len();
    let m = a.order();
    let mut pos = vec![usize::MAX; t.order()];
    for (i, &b) in base.iter().enumerate() {
        pos[b] = i;
    }
    let mut compose = vec![0usize; m * m];
    for (i, alpha) in a.elements().iter().enumerate() {
        for (j, beta) in a.elements().iter().enumerate() {
            compose[i * m + j] = a.index_of(&alpha.then(beta)).expect("closed group");
        }
    }
    let size = m * k;
    let mut cells = Vec::with_capacity(size * size);
    for i in 0..m {
        for &x in base {
            for (j, beta) in a.elements().iter().enumerate() {
                for &y in base {
                    let z = t.op(beta.apply(x), y);
                    cells.push((compose[i * m + j] * k + pos[z]) as u32);
                }
            }
        }
    }
    CayleyTable::from_cells_unchecked(size, cells)
}

fn finish(t: &CayleyTable, a: PermutationGroup, base: Vec<usize>, e: usize) -> Result<(CayleyTable, HolomorphLabeling)> {
    let h = product(t, &a, &base);
    let labeling = HolomorphLabeling { automorphisms: a, base };
    h.require_latin()?;
    let expected = labeling.pair_to_element(0, e).expect("identity in base");
    if h.identity_of() != Some(expected) {
        return Err(Error::NoIdentity);
    }
    let name = format!("H({})", t.label());
    Ok((h.with_name(name), labeling))
}

/// `L × A` for a subgroup `A ≤ AUM(L)`; with `A = AUM(L)` this is the
/// holomorph `H(L)`.
pub fn build_holomorph(t: &CayleyTable, a: &PermutationGroup) -> Result<(CayleyTable, HolomorphLabeling)> {
    let e = t.require_loop()?;
    if a.degree() != t.order() {
        return Err(Error::DegreeMismatch {
            expected: t.order(),
            found: a.degree(),
        });
    }
    a.check_axioms()?;
    if let Some(p) = a.elements().iter().find(|p| !is_automorphism(t, p)) {
        return Err(Error::NotAnAutomorphism(p.to_string()));
    }
    finish(t, a.clone(), (0..t.order()).collect(), e)
}

/// `H(L)` with the full automorphism group.
pub fn full_holomorph(t: &CayleyTable) -> Result<(CayleyTable, HolomorphLabeling)> {
    let a = automorphism_group(t)?;
    build_holomorph(t, &a)
}

/// `H_S = G × SAUM(L)` for an S-subgroup `G`.
pub fn build_s_holomorph(t: &CayleyTable, g: &Subset) -> Result<(CayleyTable, HolomorphLabeling)> {
    let e = t.require_loop()?;
    let saum = smarandache_automorphism_group(t, g)?;
    let (h, labeling) = finish(t, saum, g.members().to_vec(), e)?;
    let name = format!("H_S({}, {})", t.label(), g);
    Ok((h.with_name(name), labeling))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SHolomorphLabel {
    Nuclear,
    Centrum,
    Central,
}

impl SHolomorphLabel {
    pub const ALL: [SHolomorphLabel; 3] = [
        SHolomorphLabel::Nuclear,
        SHolomorphLabel::Centrum,
        SHolomorphLabel::Central,
    ];

    fn kind(self) -> NucleusKind {
        match self {
            SHolomorphLabel::Nuclear => NucleusKind::Full,
            SHolomorphLabel::Centrum => NucleusKind::Centrum,
            SHolomorphLabel::Central => NucleusKind::Center,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseForm {
    /// `s^λ · sα`
    Lambda,
    /// `sα · s^ρ`
    Rho,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipVariant {
    pub label: SHolomorphLabel,
    pub form: InverseForm,
    pub holds: bool,
    /// `(s, index of α in SAUM)` of the first failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SHolomorphClass {
    /// Labels whose condition holds uniformly in one of the two forms.
    pub labels: BTreeSet<SHolomorphLabel>,
    /// All six label × form evaluations.
    pub matrix: Vec<MembershipVariant>,
    /// Labels that hold when the form may be chosen per `(s, α)`.
    pub per_element: BTreeSet<SHolomorphLabel>,
}

/// Decides whether `H_S` is a Smarandache nuclear, centrum or central
/// holomorph of `t`.
pub fn classify_s_holomorph(t: &CayleyTable, g: &Subset) -> Result<SHolomorphClass> {
    t.require_loop()?;
    let saum = smarandache_automorphism_group(t, g)?;
    let rho = t.inverse_map(Side::Right)?;
    let lam = t.inverse_map(Side::Left)?;
    let mut matrix = Vec::new();
    let mut labels = BTreeSet::new();
    let mut per_element = BTreeSet::new();
    for label in SHolomorphLabel::ALL {
        let target = nucleus(t, label.kind())?.intersection(g);
        let lambda_ok = |s: usize, a: &Permutation| target.contains(t.op(lam.apply(s), a.apply(s)));
        let rho_ok = |s: usize, a: &Permutation| target.contains(t.op(a.apply(s), rho.apply(s)));
        let first_fail = |ok: &dyn Fn(usize, &Permutation) -> bool| {
            g.members().iter().find_map(|&s| {
                saum.elements()
                    .iter()
                    .enumerate()
                    .find(|(_, a)| !ok(s, a))
                    .map(|(i, _)| (s, i))
            })
        };
        let mut uniform = false;
        for (form, w) in [
            (InverseForm::Lambda, first_fail(&lambda_ok)),
            (InverseForm::Rho, first_fail(&rho_ok)),
        ] {
            uniform |= w.is_none();
            matrix.push(MembershipVariant {
                label,
                form,
                holds: w.is_none(),
                witness: w,
            });
        }
        if uniform {
            labels.insert(label);
        }
        let either = g
            .members()
            .iter()
            .all(|&s| saum.elements().iter().all(|a| lambda_ok(s, a) || rho_ok(s, a)));
        if either {
            per_element.insert(label);
        }
    }
    Ok(SHolomorphClass {
        labels,
        matrix,
        per_element,
    })
}
