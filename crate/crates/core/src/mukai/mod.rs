//! Self-associated sets as linear sections: quadratic relations among the
//! quadrics through the points, the Lagrangean reconstruction in `P^5`, the
//! pfaffian picture in `P^6` and the kernel-bundle construction.

mod bundle;
mod p6;
mod reconstruct;
mod relations;

pub use bundle::{
    buchsbaum_rim_sections, chern_bf, moduli_counts, random_linear_map, BuchsbaumRimReport, BuchsbaumRimSection,
    ChernVector, ModuliCounts,
};
pub use p6::{
    pfaffian_section, random_linear_skew, singular_cubic_of_ideal, skew_from_coordinates, tangent_equations,
    tangent_space_z, top_wedge, unique_singular_cubic,
};
pub use reconstruct::{mukai_reconstruct_p5, span_coordinates, MukaiReport, CHART_RETRIES};
pub use relations::{dual_form, quadratic_relations, singular_quadrics_at, LagrangianWitness, QuadraticRelation};
