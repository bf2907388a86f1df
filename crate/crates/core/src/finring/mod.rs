//! Finite abelian groups and finite rings given by structure constants.

pub mod build;
pub mod group;
pub mod ideal;
pub mod intmat;
pub mod lattice;
pub mod predicates;
pub mod quotient;
pub mod ring;
pub mod subgroup;

pub use group::{Elem, FinAbGroup, DEFAULT_CAP};
pub use ideal::{
    center, center_of, centralizer, centralizer_in, ideal_closure, is_ideal, is_subring,
    span_products, subgroup_closure, Ideal, Side,
};
pub use predicates::{
    all_ideals, bimodule_predicates, common_s_unit, has_ideal_intersection_property, is_maximal_commutative,
    is_simple, proper_ideal_witness, unitality, unitality_of, BimodulePredicates, Unitality,
};
pub use lattice::{Lattice, LatticeQuotient};
pub use quotient::{quotient_by, quotient_ring, Quotient};
pub use ring::FinRing;
pub use subgroup::{CyclicBasis, Subgroup};
