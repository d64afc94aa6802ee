//! Finite quasigroups and loops as Cayley tables.
//!
//! The crate covers recognition and inverse maps ([`table`]), identity-based
//! loop properties ([`properties`]), subloops and nuclei ([`subalgebra`]),
//! automorphisms and autotopisms ([`morphisms`]), holomorph construction
//! ([`holomorph`]), Smarandache substructures ([`smarandache`]), exhaustive
//! loop catalogs ([`catalog`]) and a harness that checks the holomorph
//! results mechanically ([`verify`]).

pub mod catalog;
pub mod error;
pub mod holomorph;
pub mod morphisms;
pub mod perm;
pub mod properties;
pub mod samples;
pub mod smarandache;
pub mod subalgebra;
pub mod table;
pub mod verify;

pub use catalog::{canonical_form, catalog_up_to, count_loops, generate_loops, CanonicalForm, Envelope};
pub use error::{Error, Result};
pub use holomorph::{build_holomorph, build_s_holomorph, classify_s_holomorph, full_holomorph, HolomorphLabeling};
pub use morphisms::{
    automorphism_group, find_isomorphism, is_autotopism, is_isotopism,
    smarandache_automorphism_group, AutotopismTriple, PermutationGroup,
};
pub use perm::Permutation;
pub use properties::{check_property, is_a_loop, BolChirality, Property, PropertyCheck, PropertyConfig};
pub use smarandache::{is_smarandache, s_subgroups, SClassification, SmarandacheConfig, Target};
pub use subalgebra::{nucleus, smarandache_nucleus, subloops, NucleusKind, Subset};
pub use table::{parse_table, parse_tables, CayleyTable, Side};
pub use verify::{sweep, sweep_tables, verify, verify_with, SweepSummary, TheoremId, TheoremReport, Verdict, VerifyConfig};
