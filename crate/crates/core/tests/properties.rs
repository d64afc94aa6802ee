use std::sync::OnceLock;

use loopforge::subalgebra::closure;
use loopforge::{
    automorphism_group, canonical_form, catalog_up_to, check_property, find_isomorphism, is_isotopism, nucleus,
    parse_table, subloops, AutotopismTriple, CayleyTable, Envelope, NucleusKind, Permutation, Property, Side,
};
use proptest::prelude::*;

fn catalog() -> &'static [CayleyTable] {
    static CAT: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CAT.get_or_init(|| catalog_up_to(6, true, &Envelope::default()).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// A catalog loop under a random renumbering.
fn relabelled_loop() -> impl Strategy<Value = (CayleyTable, CayleyTable)> {
    (0..catalog().len()).prop_flat_map(|i| {
        let t = catalog()[i].clone();
        perm(t.order()).prop_map(move |p| (t.clone(), t.renumber(&p)))
    })
}

/// A Latin square isotopic to a catalog loop, with the isotopism.
fn isotope() -> impl Strategy<Value = (CayleyTable, CayleyTable, AutotopismTriple)> {
    (0..catalog().len()).prop_flat_map(|i| {
        let t = catalog()[i].clone();
        let n = t.order();
        (perm(n), perm(n), perm(n)).prop_map(move |(u, v, w)| {
            let (ui, vi) = (u.inverse(), v.inverse());
            // xU ∘ yV = (x·y)W
            let q = CayleyTable::from_fn(n, |a, b| w.apply(t.op(ui.apply(a), vi.apply(b))));
            (t.clone(), q, AutotopismTriple::new(u, v, w).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip((_, t) in relabelled_loop()) {
        prop_assert_eq!(parse_table(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn automorphism_groups_are_groups((t, r) in relabelled_loop()) {
        let g = automorphism_group(&r).unwrap();
        prop_assert!(g.check_axioms().is_ok());
        prop_assert_eq!(g.order(), automorphism_group(&t).unwrap().order());
        for a in g.elements() {
            for b in g.elements() {
                prop_assert!(g.contains(&a.then(b)));
            }
        }
    }

    #[test]
    fn canonical_form_is_a_relabelling_invariant((t, r) in relabelled_loop()) {
        let c = canonical_form(&t).unwrap();
        prop_assert_eq!(&canonical_form(&r).unwrap(), &c);
        prop_assert_eq!(canonical_form(&c.table).unwrap(), c);
    }

    #[test]
    fn isomorphisms_are_verified((t, r) in relabelled_loop()) {
        let phi = find_isomorphism(&t, &r).unwrap().expect("relabelling is an isomorphism");
        for x in 0..t.order() {
            for y in 0..t.order() {
                prop_assert_eq!(phi.apply(t.op(x, y)), r.op(phi.apply(x), phi.apply(y)));
            }
        }
    }

    #[test]
    fn isotopes_are_latin_and_verified((t, q, a) in isotope()) {
        prop_assert!(q.is_latin());
        prop_assert!(is_isotopism(&t, &q, &a).unwrap());
    }

    #[test]
    fn inverse_maps_are_mutually_inverse((_, t) in relabelled_loop()) {
        let rho = t.inverse_map(Side::Right).unwrap();
        let lam = t.inverse_map(Side::Left).unwrap();
        prop_assert!(rho.then(&lam).is_identity());
        let e = t.identity_of().unwrap();
        for x in 0..t.order() {
            prop_assert_eq!(t.op(x, rho.apply(x)), e);
            prop_assert_eq!(t.op(lam.apply(x), x), e);
        }
    }

    #[test]
    fn cip_is_wip_and_aip((_, t) in relabelled_loop()) {
        let holds = |p| check_property(&t, p).unwrap().holds;
        prop_assert_eq!(holds(Property::Cip), holds(Property::Wip) && holds(Property::Aip));
        if holds(Property::Assoc) {
            prop_assert!(holds(Property::Ip) && holds(Property::LBol) && holds(Property::ALoop));
        }
    }

    #[test]
    fn witnesses_really_fail((_, t) in relabelled_loop()) {
        for p in [Property::Wip, Property::Aip, Property::Flex, Property::Comm, Property::Assoc, Property::LBol] {
            let r = check_property(&t, p).unwrap();
            prop_assert_eq!(r.holds, r.witness.is_none());
        }
        let r = check_property(&t, Property::Assoc).unwrap();
        if let Some(w) = r.witness {
            let (x, y, z) = (w[0], w[1], w[2]);
            prop_assert_ne!(t.op(t.op(x, y), z), t.op(x, t.op(y, z)));
        }
    }

    #[test]
    fn subloops_are_closed_and_contain_identity((_, t) in relabelled_loop(), seed in prop::collection::vec(0usize..6, 0..3)) {
        let e = t.identity_of().unwrap();
        for s in subloops(&t).unwrap() {
            prop_assert!(s.is_closed(&t) && s.contains(e));
        }
        let seed: Vec<usize> = seed.into_iter().filter(|&x| x < t.order()).collect();
        let c = closure(&t, &seed);
        prop_assert!(c.is_closed(&t));
        prop_assert!(seed.iter().all(|&x| c.contains(x)));
    }

    #[test]
    fn nuclei_nest((_, t) in relabelled_loop()) {
        let n = nucleus(&t, NucleusKind::Full).unwrap();
        for k in [NucleusKind::Left, NucleusKind::Right, NucleusKind::Middle] {
            prop_assert!(n.is_subset_of(&nucleus(&t, k).unwrap()));
        }
        let z = nucleus(&t, NucleusKind::Center).unwrap();
        prop_assert!(z.is_subset_of(&n));
        prop_assert!(z.is_subset_of(&nucleus(&t, NucleusKind::Centrum).unwrap()));
        prop_assert!(n.is_closed(&t));
    }
}
