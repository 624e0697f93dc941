//! A calculus for finite p-groups built on two pillars:
//!
//! * a concrete engine that works with explicit multiplication tables —
//!   subgroup lattices, normalizers, quotients, genetic bases — and
//! * a symbolic layer where every p-group becomes a formal sum of edges
//!   of Roquette groups, with a tensor product, closed-form family
//!   decompositions, and per-edge evaluators for rational invariants
//!   (rational representation rank, Burnside unit rank, torsion of the
//!   Dade group, centers of rational group algebras).
//!
//! The concrete engine doubles as the oracle for the symbolic layer: on
//! every group small enough to enumerate, both must agree exactly.

pub mod bitset;
pub mod edge;
pub mod error;
pub mod expr;
pub mod functor;
pub mod genetic;
pub mod group;
mod par;
pub mod roquette;
pub mod subgroup;
pub mod verify;

pub use edge::{
    diamond, diamond_multiplicity, dihedral_power_closed_form, edge_tensor, EdgeRecord, EdgeSum,
    EdgeSumRepr,
};
pub use error::{Error, Result};
pub use expr::{build, decompose, decompose_raw, faithful_raw, mod_z_rewrite, parse_expr, GroupExpr};
pub use functor::{
    burnside_units_rank, center_signature, dade_torsion, evaluate, faithful_count, rq_rank,
    AbelianSignature, EdgePattern, Evaluation, FunctorTable, RankResult,
};
pub use genetic::{
    centrally_diagonal_genetics, centrally_diagonal_genetics_bruteforce,
    edge_decomposition_bruteforce, faithful_edges_bruteforce, genetic_basis, genetic_subgroups,
    genetically_related, is_expansive, is_genetic, product_genetic_basis, relative_center,
    CentrallyDiagonal, EquivalenceStrategy, GeneticBasis, GeneticRecord,
};
pub use group::{direct_product, make_family, Family, FiniteGroup, Provenance, DEFAULT_MAX_ORDER};
pub use par::execution_mode;
pub use roquette::{roquette_type, roquette_type_by_definition, RoquetteType};
pub use subgroup::{
    all_subgroups, axes, axial_subgroups, center, central_products, cyclic_subgroup_classes,
    fingerprint, normal_subgroups, quotient_group, section_quotient, CentralGluing, Fingerprint,
    Section, SectionQuotient, Subgroup,
};
