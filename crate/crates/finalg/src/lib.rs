//! Finite-carrier linear structures: set / semigroup / group vector spaces
//! and linear algebras, their exhaustive axiom verification with witnesses,
//! generation and dimension analysis, linear maps, fuzzy membership overlays
//! and n-fold composite structures.

pub mod analysis;
pub mod budget;
pub mod carrier;
pub mod fuzzy;
pub mod maps;
pub mod multi;
pub mod structures;

pub use analysis::{
    check_decomposition, enumerate_substructures, is_generating, is_independent, is_simple,
    min_generating, span, AnalysisError, Certificate, DecompositionMode, DecompositionReport,
    GenMode, GenerationResult, MinGenResult, SimplicityKind, SimplicityReport, SimplicityVerdict,
};
pub use budget::{Budget, BudgetExceeded, DEFAULT_BUDGET};
pub use carrier::{Action, ArithError, Carrier, CarrierKind, Element, ScalarAddition, ScalarSet};
pub use fuzzy::{
    restrict_fuzzy, verify_fuzzy, FuzzyError, FuzzyLaw, FuzzyMap, FuzzyReport, FuzzyRule,
    Membership,
};
pub use maps::{
    annihilator, check_projection_onto, compose, enumerate_homs, invert, verify_functional,
    verify_map, LinearMap, MapError, MapLaw, MapReport, MapRule, ProjectionReport,
};
pub use multi::{
    check_multi_projection, check_multi_substructure, n_dimension, verify_multi,
    verify_multi_fuzzy, verify_multi_map, MultiError, MultiFuzzy, MultiMap, MultiMapKind,
    MultiReport, MultiStructure, ScalarMode,
};
pub use structures::{
    check_substructure, classify_substructure, enumerate_subscalars, verify_structure, Axiom,
    AxiomReport, Family, GroundSpec, Label, StructureDecl, SubscalarKind,
};
