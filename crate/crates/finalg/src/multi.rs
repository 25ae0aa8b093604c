//! Bi- and n-fold structures: ordered unions of pairwise non-contained
//! components over one shared scalar set, one scalar set per component, or
//! (for the mixed families) one family tag per component. Bi-structures are
//! exactly the n = 2 case.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::analysis::{min_generating, AnalysisError, Certificate, GenMode, MinGenResult};
use crate::budget::Budget;
use crate::carrier::Element;
use crate::fuzzy::{verify_fuzzy, FuzzyError, FuzzyMap, FuzzyReport};
use crate::maps::{
    check_projection_onto, verify_map, LinearMap, MapError, MapReport, ProjectionReport,
};
use crate::structures::{
    check_substructure, enumerate_subscalars, verify_structure, AxiomReport, Family,
    StructureDecl, SubscalarKind, SubstructureError, VerifyError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    /// One scalar set shared by every component.
    Shared,
    /// One scalar set per component (the bi-set/bi-semigroup/bi-group
    /// families).
    PerComponent,
    /// Heterogeneous family tags, each component verified against its own
    /// family (the quasi mixed families).
    Mixed,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Shared => "shared",
            ScalarMode::PerComponent => "per_component",
            ScalarMode::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Option<ScalarMode> {
        Some(match s {
            "shared" => ScalarMode::Shared,
            "per_component" => ScalarMode::PerComponent,
            "mixed" => ScalarMode::Mixed,
            _ => return None,
        })
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiError {
    #[error("an n-structure needs at least two components")]
    TooFewComponents,
    #[error("components {0} and {1} have mismatched families")]
    FamilyMismatch(usize, usize),
    #[error("shared scalar mode requires identical scalar sets; component {0} differs")]
    ScalarsNotShared(usize),
    #[error("routing entry {0} is out of range")]
    RoutingInvalid(usize),
    #[error("component count mismatch: {0} maps for {1} components")]
    ComponentCountMismatch(usize, usize),
    #[error("component {0}: {1}")]
    Component(usize, String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Substructure(#[from] SubstructureError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// An ordered union of n >= 2 pairwise distinct component structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiStructure {
    name: String,
    components: Vec<StructureDecl>,
    scalar_mode: ScalarMode,
}

impl MultiStructure {
    pub fn new(
        name: impl Into<String>,
        components: Vec<StructureDecl>,
        scalar_mode: ScalarMode,
    ) -> Result<MultiStructure, MultiError> {
        if components.len() < 2 {
            return Err(MultiError::TooFewComponents);
        }
        match scalar_mode {
            ScalarMode::Shared => {
                let first = components[0].scalars();
                for (i, c) in components.iter().enumerate().skip(1) {
                    if c.scalars() != first {
                        return Err(MultiError::ScalarsNotShared(i));
                    }
                }
                let family = components[0].family();
                for (i, c) in components.iter().enumerate().skip(1) {
                    if c.family() != family {
                        return Err(MultiError::FamilyMismatch(0, i));
                    }
                }
            }
            ScalarMode::PerComponent => {
                let family = components[0].family();
                for (i, c) in components.iter().enumerate().skip(1) {
                    if c.family() != family {
                        return Err(MultiError::FamilyMismatch(0, i));
                    }
                }
            }
            ScalarMode::Mixed => {}
        }
        Ok(MultiStructure { name: name.into(), components, scalar_mode })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[StructureDecl] {
        &self.components
    }

    pub fn scalar_mode(&self) -> ScalarMode {
        self.scalar_mode
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentWitness {
    /// Component indices: ground(inner) is contained in ground(outer).
    pub inner: usize,
    pub outer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiReport {
    pub structure: String,
    /// Pairwise distinctness/non-containment verdict with first witness.
    pub distinct: bool,
    pub containment: Option<ContainmentWitness>,
    pub component_reports: Vec<AxiomReport>,
    pub verdict: bool,
    pub window_flagged: bool,
}

/// Distinctness/non-containment plus per-component verification.
pub fn verify_multi(m: &MultiStructure) -> Result<MultiReport, MultiError> {
    let mut containment = None;
    'outer: for i in 0..m.len() {
        for j in 0..m.len() {
            if i == j {
                continue;
            }
            // Shape-aware ground containment after canonical normalization.
            let inner = &m.components[i];
            let outer = &m.components[j];
            if inner.ground_len() > outer.ground_len() {
                continue;
            }
            if inner.ground_is_enumerable() {
                let inner_elems = inner.ground_elements().map_err(VerifyError::Decl)?;
                if inner_elems.iter().all(|e| outer.ground_contains(e)) {
                    containment = Some(ContainmentWitness { inner: i, outer: j });
                    break 'outer;
                }
            } else if inner.carrier() == outer.carrier() {
                // Two non-enumerable full grounds coincide exactly when
                // their carriers do; differently shaped parametric carriers
                // are distinct by the shape tags in their elements.
                containment = Some(ContainmentWitness { inner: i, outer: j });
                break 'outer;
            }
        }
    }
    let mut component_reports = Vec::with_capacity(m.len());
    for c in m.components() {
        component_reports.push(verify_structure(c)?);
    }
    let distinct = containment.is_none();
    let verdict = distinct && component_reports.iter().all(|r| r.verdict);
    let window_flagged = component_reports.iter().any(|r| r.window_flagged);
    Ok(MultiReport {
        structure: m.name().to_string(),
        distinct,
        containment,
        component_reports,
        verdict,
        window_flagged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDimension {
    pub cardinalities: Vec<usize>,
    pub generators: Vec<Vec<Element>>,
    pub certificates: Vec<Certificate>,
    pub window_flagged: bool,
}

/// Componentwise minimum generation; the n-dimension is the tuple of
/// component dimensions, reported in component order.
pub fn n_dimension(
    m: &MultiStructure,
    mode: Option<GenMode>,
    budget: &Budget,
) -> Result<MultiDimension, MultiError> {
    let report = verify_multi(m)?;
    if !report.verdict {
        return Err(MultiError::Component(0, "multi structure does not verify".into()));
    }
    let mut cardinalities = Vec::new();
    let mut generators = Vec::new();
    let mut certificates = Vec::new();
    let mut window_flagged = false;
    for (i, c) in m.components().iter().enumerate() {
        let mode = mode.unwrap_or_else(|| GenMode::default_for(c.family()));
        let result: MinGenResult = min_generating(c, mode, budget)
            .map_err(|e| MultiError::Component(i, e.to_string()))?;
        cardinalities.push(result.cardinality);
        generators.push(result.elements);
        certificates.push(result.certificate);
        window_flagged |= result.window_flagged;
    }
    Ok(MultiDimension { cardinalities, generators, certificates, window_flagged })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiMapKind {
    /// Identity routing.
    Plain,
    /// No fixed points in the routing.
    Quasi,
    /// Many-to-one routing.
    PseudoQuasi,
    /// Injective routing with some fixed points.
    SemiQuasi,
}

impl MultiMapKind {
    pub fn name(self) -> &'static str {
        match self {
            MultiMapKind::Plain => "plain",
            MultiMapKind::Quasi => "quasi",
            MultiMapKind::PseudoQuasi => "pseudo_quasi",
            MultiMapKind::SemiQuasi => "semi_quasi",
        }
    }
}

impl fmt::Display for MultiMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Component maps T_i : source(i) -> target(routing[i]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub routing: Vec<usize>,
    pub components: Vec<LinearMap>,
}

impl MultiMap {
    /// The kind label derives from the routing vector alone.
    pub fn kind(&self) -> MultiMapKind {
        let injective = {
            let set: BTreeSet<usize> = self.routing.iter().copied().collect();
            set.len() == self.routing.len()
        };
        let fixed = self.routing.iter().enumerate().filter(|(i, r)| i == *r).count();
        if !injective {
            MultiMapKind::PseudoQuasi
        } else if fixed == self.routing.len() {
            MultiMapKind::Plain
        } else if fixed == 0 {
            MultiMapKind::Quasi
        } else {
            MultiMapKind::SemiQuasi
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMapReport {
    pub map: String,
    pub kind: MultiMapKind,
    pub component_reports: Vec<MapReport>,
    pub all_linear: bool,
}

/// Componentwise law verification plus the routing-derived kind label.
pub fn verify_multi_map(
    t: &MultiMap,
    source: &MultiStructure,
    target: &MultiStructure,
    budget: &Budget,
) -> Result<MultiMapReport, MultiError> {
    if t.routing.len() != source.len() || t.components.len() != source.len() {
        return Err(MultiError::ComponentCountMismatch(t.components.len(), source.len()));
    }
    let mut component_reports = Vec::new();
    for (i, map) in t.components.iter().enumerate() {
        let j = t.routing[i];
        if j >= target.len() {
            return Err(MultiError::RoutingInvalid(j));
        }
        let report = verify_map(map, &source.components()[i], &target.components()[j], budget)
            .map_err(|e| MultiError::Component(i, e.to_string()))?;
        component_reports.push(report);
    }
    let all_linear = component_reports.iter().all(|r| r.linear);
    Ok(MultiMapReport { map: t.name.clone(), kind: t.kind(), component_reports, all_linear })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiProjectionReport {
    pub component_reports: Vec<ProjectionReport>,
    pub projection: bool,
    /// Aggregate idempotence: every component map idempotent.
    pub idempotent: bool,
}

/// Componentwise projection check of a plain n-map onto component subsets.
pub fn check_multi_projection(
    t: &MultiMap,
    source: &MultiStructure,
    parts: &[Vec<Element>],
    budget: &Budget,
) -> Result<MultiProjectionReport, MultiError> {
    if t.kind() != MultiMapKind::Plain {
        return Err(MultiError::RoutingInvalid(0));
    }
    if parts.len() != source.len() {
        return Err(MultiError::ComponentCountMismatch(parts.len(), source.len()));
    }
    let mut component_reports = Vec::new();
    for (i, map) in t.components.iter().enumerate() {
        let report = check_projection_onto(map, &source.components()[i], &parts[i], budget)
            .map_err(|e| MultiError::Component(i, e.to_string()))?;
        component_reports.push(report);
    }
    let projection = component_reports.iter().all(|r| r.projection);
    let idempotent = component_reports.iter().all(|r| r.idempotent);
    Ok(MultiProjectionReport { component_reports, projection, idempotent })
}

/// Component overlays eta_1, ..., eta_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiFuzzy {
    pub name: String,
    pub structure: String,
    pub components: Vec<FuzzyMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiFuzzyReport {
    pub component_reports: Vec<FuzzyReport>,
    pub verdict: bool,
    /// Index of the first failing component, if any.
    pub failing_component: Option<usize>,
}

/// Componentwise fuzzy verification; the aggregate verdict is the
/// conjunction and names the first failing component.
pub fn verify_multi_fuzzy(
    mf: &MultiFuzzy,
    m: &MultiStructure,
    budget: &Budget,
) -> Result<MultiFuzzyReport, MultiError> {
    if mf.components.len() != m.len() {
        return Err(MultiError::ComponentCountMismatch(mf.components.len(), m.len()));
    }
    let mut component_reports = Vec::new();
    for (i, f) in mf.components.iter().enumerate() {
        let report = verify_fuzzy(f, &m.components()[i], budget)
            .map_err(|e| MultiError::Component(i, e.to_string()))?;
        component_reports.push(report);
    }
    let failing_component = component_reports.iter().position(|r| !r.verdict);
    Ok(MultiFuzzyReport { component_reports, verdict: failing_component.is_none(), failing_component })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSubReport {
    pub component_reports: Vec<AxiomReport>,
    pub verdict: bool,
    /// Strong mode only: every enumerated subscalar set passed on every
    /// component.
    pub strong: Option<bool>,
    /// Strong mode found no proper subscalar sets at all: scalar-simple.
    pub scalar_simple: bool,
}

/// Componentwise substructure check with a shared (target family,
/// subscalars) pair. In strong mode the check ranges over every proper
/// subscalar set of the shared scalar set and requires all of them to pass;
/// an empty enumeration is reported as scalar-simplicity.
pub fn check_multi_substructure(
    m: &MultiStructure,
    parts: &[Vec<Element>],
    target_family: Family,
    subscalars: Option<&[Element]>,
    strong: bool,
    budget: &Budget,
) -> Result<MultiSubReport, MultiError> {
    let _ = budget;
    if parts.len() != m.len() {
        return Err(MultiError::ComponentCountMismatch(parts.len(), m.len()));
    }
    if !strong {
        let mut component_reports = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let report = check_substructure(&m.components()[i], part, target_family, subscalars)
                .map_err(|e| MultiError::Component(i, e.to_string()))?;
            component_reports.push(report);
        }
        let verdict = component_reports.iter().all(|r| r.verdict);
        return Ok(MultiSubReport {
            component_reports,
            verdict,
            strong: None,
            scalar_simple: false,
        });
    }

    let kind = if target_family.is_group_family() {
        SubscalarKind::Subgroup
    } else {
        SubscalarKind::Subsemigroup
    };
    let subscalar_sets = enumerate_subscalars(m.components()[0].scalars(), kind)
        .map_err(|e| MultiError::Component(0, e.to_string()))?;
    if subscalar_sets.is_empty() {
        return Ok(MultiSubReport {
            component_reports: vec![],
            verdict: true,
            strong: Some(true),
            scalar_simple: true,
        });
    }
    let mut component_reports = Vec::new();
    let mut all_pass = true;
    for sub in &subscalar_sets {
        for (i, part) in parts.iter().enumerate() {
            let report = check_substructure(&m.components()[i], part, target_family, Some(sub))
                .map_err(|e| MultiError::Component(i, e.to_string()))?;
            all_pass &= report.verdict;
            component_reports.push(report);
        }
    }
    Ok(MultiSubReport {
        component_reports,
        verdict: all_pass,
        strong: Some(all_pass),
        scalar_simple: false,
    })
}
