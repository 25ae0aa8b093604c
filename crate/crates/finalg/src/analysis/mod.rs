//! Generation, independence, dimension, substructure enumeration, simplicity
//! and direct-sum/union decompositions.
//!
//! Vector-space families generate by single products v = s.b (Def-style
//! single step); algebra families generate by finite sums, computed as the
//! additive-and-action closure. An iterated action mode exists for the one
//! family of examples that read generation as repeated action.

mod modspan;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::carrier::{ArithError, CarrierKind, Element};
use crate::structures::{
    check_substructure, enumerate_subscalars, verify_structure, Family, GroundSpec,
    StructureDecl, SubscalarKind, SubstructureError, VerifyError,
};

pub use modspan::ZnSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Products s.b only (the vector-space reading).
    SingleStep,
    /// Least action-closed superset; for algebra families the
    /// additive-and-action closure (finite sums).
    Iterated,
}

impl GenMode {
    pub fn name(self) -> &'static str {
        match self {
            GenMode::SingleStep => "single_step",
            GenMode::Iterated => "iterated",
        }
    }

    /// The default generation reading for a family.
    pub fn default_for(family: Family) -> GenMode {
        if family.is_algebra() {
            GenMode::Iterated
        } else {
            GenMode::SingleStep
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("element {0} is not in the ground set")]
    NotASubset(Element),
    #[error("single_step mode is not defined for algebra families")]
    ModeUnsupported,
    #[error("{0}")]
    Budget(#[from] BudgetExceeded),
    #[error("ground too large to materialize ({0} elements)")]
    TooLarge(u128),
    #[error("structure does not verify: {0}")]
    StructureInvalid(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Substructure(#[from] SubstructureError),
    #[error("simplicity kinds are defined for semigroup and group families only")]
    SimplicityUndefined,
    #[error("part {0} is not a substructure: {1}")]
    PartNotSubstructure(usize, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanResult {
    pub elements: Vec<Element>,
    /// A window truncation pruned at least one product or sum.
    pub window_flagged: bool,
    /// A product or sum left the carrier (explicit carriers only).
    pub escaped: bool,
}

/// Coordinate view of a uniformly shaped modular ground with full Zn scalars:
/// the situation where generation is plain module arithmetic.
struct ModCtx {
    n: u64,
    dim: usize,
}

fn mod_ctx(d: &StructureDecl) -> Option<ModCtx> {
    if !d.family().is_algebra() {
        return None;
    }
    let n = d.scalars().is_full_modular()?;
    if !d.scalar_sum_matches_carrier() {
        return None;
    }
    match (d.ground_spec(), d.carrier().kind()) {
        (GroundSpec::All, CarrierKind::Zn(m)) if *m == n => Some(ModCtx { n, dim: 1 }),
        (GroundSpec::All, CarrierKind::ZnTuple(m, k)) if *m == n => Some(ModCtx { n, dim: *k }),
        (GroundSpec::All, CarrierKind::ZnMatrix(m, r, c)) if *m == n => {
            Some(ModCtx { n, dim: r * c })
        }
        (GroundSpec::All, CarrierKind::ZnPoly(m, dmax)) if *m == n => {
            Some(ModCtx { n, dim: dmax + 1 })
        }
        (GroundSpec::Subset(elems), _) => {
            let first = &elems[0];
            if first.modulus() == Some(n) && elems.iter().all(|e| e.shape_eq(first)) {
                Some(ModCtx { n, dim: first.coords().len() })
            } else {
                None
            }
        }
        _ => None,
    }
}

fn validate_subset(d: &StructureDecl, subset: &[Element]) -> Result<(), AnalysisError> {
    for e in subset {
        if !d.ground_contains(e) {
            return Err(AnalysisError::NotASubset(e.clone()));
        }
    }
    Ok(())
}

/// Distinct shape-zeros across a set of elements.
fn shape_zeros(elems: &[Element]) -> Vec<Element> {
    let set: BTreeSet<Element> = elems.iter().map(|e| e.zero_like()).collect();
    set.into_iter().collect()
}

struct ClosureState<'a> {
    d: &'a StructureDecl,
    budget: &'a Budget,
    set: BTreeSet<Element>,
    window_flagged: bool,
    escaped: bool,
}

impl<'a> ClosureState<'a> {
    fn new(d: &'a StructureDecl, budget: &'a Budget) -> Self {
        ClosureState { d, budget, set: BTreeSet::new(), window_flagged: false, escaped: false }
    }

    fn admit(&mut self, e: Element, frontier: &mut Vec<Element>) {
        if !self.d.carrier().contains(&e) {
            self.escaped = true;
            return;
        }
        if self.set.insert(e.clone()) {
            frontier.push(e);
        }
    }

    fn act_all(&mut self, v: &Element, frontier: &mut Vec<Element>) -> Result<(), BudgetExceeded> {
        let scalars = self.d.scalars().clone();
        for s in scalars.members() {
            self.budget.charge(1)?;
            match scalars.act(s, v, self.d.carrier()) {
                Ok(r) => self.admit(r, frontier),
                Err(ArithError::WindowOverflow { .. }) => self.window_flagged = true,
                Err(_) => self.escaped = true,
            }
        }
        Ok(())
    }

    fn add_with_all(
        &mut self,
        v: &Element,
        frontier: &mut Vec<Element>,
    ) -> Result<(), BudgetExceeded> {
        let others: Vec<Element> = self.set.iter().cloned().collect();
        for w in others {
            self.budget.charge(1)?;
            match self.d.carrier().add(v, &w) {
                Ok(r) => self.admit(r, frontier),
                Err(ArithError::WindowOverflow { .. }) => self.window_flagged = true,
                Err(_) => self.escaped = true,
            }
        }
        Ok(())
    }
}

/// The generated subset of the carrier, per the mode and family semantics.
pub fn span(
    d: &StructureDecl,
    basis: &[Element],
    mode: GenMode,
    budget: &Budget,
) -> Result<SpanResult, AnalysisError> {
    validate_subset(d, basis)?;
    if d.family().is_algebra() && mode == GenMode::SingleStep {
        return Err(AnalysisError::ModeUnsupported);
    }
    let mut state = ClosureState::new(d, budget);

    if !d.family().is_algebra() && mode == GenMode::SingleStep {
        let mut frontier = Vec::new();
        for b in basis {
            state.admit(b.clone(), &mut frontier);
        }
        for b in basis {
            state.act_all(b, &mut frontier)?;
        }
        return Ok(SpanResult {
            elements: state.set.into_iter().collect(),
            window_flagged: state.window_flagged,
            escaped: state.escaped,
        });
    }

    // Iterated closure: action only for vs families, action + addition for
    // algebra families (seeded with the empty sum).
    let mut frontier = Vec::new();
    for b in basis {
        state.admit(b.clone(), &mut frontier);
    }
    if d.family().is_algebra() {
        let ground_zeros = match d.ground_spec() {
            GroundSpec::Subset(elems) => shape_zeros(elems),
            GroundSpec::All => d.carrier().zero().into_iter().collect(),
        };
        for z in ground_zeros {
            state.admit(z, &mut frontier);
        }
    }
    while let Some(v) = frontier.pop() {
        state.act_all(&v, &mut frontier)?;
        if d.family().is_algebra() {
            state.add_with_all(&v, &mut frontier)?;
        }
    }
    Ok(SpanResult {
        elements: state.set.into_iter().collect(),
        window_flagged: state.window_flagged,
        escaped: state.escaped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Exhaustive,
    CountingBound,
    BudgetExhausted,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::Exhaustive => "exhaustive",
            Certificate::CountingBound => "counting_bound",
            Certificate::BudgetExhausted => "budget_exhausted",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationResult {
    pub generating: bool,
    /// Ground elements not reached, canonical order. For grounds too large
    /// to list, the unreached coordinate units stand as representatives.
    pub uncovered: Vec<Element>,
    pub mode: GenMode,
    pub certificate: Option<Certificate>,
    pub window_flagged: bool,
}

/// Whether `basis` generates the ground under the mode's span.
pub fn is_generating(
    d: &StructureDecl,
    basis: &[Element],
    mode: GenMode,
    budget: &Budget,
) -> Result<GenerationResult, AnalysisError> {
    validate_subset(d, basis)?;
    if d.family().is_algebra() && mode == GenMode::SingleStep {
        return Err(AnalysisError::ModeUnsupported);
    }

    if let Some(ctx) = mod_ctx(d) {
        budget.charge(basis.len() as u64 * ctx.dim as u64)?;
        let mut module = ZnSpan::new(ctx.n, ctx.dim);
        for b in basis {
            module.insert(b.coords());
        }
        let mut uncovered = Vec::new();
        match d.ground_spec() {
            GroundSpec::All => {
                if !module.is_full() {
                    let template = d.carrier().zero().expect("parametric zero");
                    for i in 0..ctx.dim {
                        let mut coords = vec![0u64; ctx.dim];
                        coords[i] = 1;
                        let unit = rebuild(&template, coords);
                        if !module.contains(unit.coords()) {
                            uncovered.push(unit);
                        }
                    }
                }
            }
            GroundSpec::Subset(elems) => {
                for e in elems {
                    budget.charge(1)?;
                    if !module.contains(e.coords()) {
                        uncovered.push(e.clone());
                    }
                }
            }
        }
        return Ok(GenerationResult {
            generating: uncovered.is_empty(),
            uncovered,
            mode,
            certificate: None,
            window_flagged: false,
        });
    }

    let result = span(d, basis, mode, budget)?;
    let covered: BTreeSet<&Element> = result.elements.iter().collect();
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let uncovered: Vec<Element> =
        ground.into_iter().filter(|g| !covered.contains(g)).collect();
    Ok(GenerationResult {
        generating: uncovered.is_empty(),
        uncovered,
        mode,
        certificate: None,
        window_flagged: result.window_flagged,
    })
}

fn rebuild(template: &Element, coords: Vec<u64>) -> Element {
    // Rebuild an element of the template's shape with the given coordinates.
    match template {
        Element::ModScalar { modulus, .. } => Element::mod_scalar(*modulus, coords[0]),
        Element::ModTuple { modulus, .. } => Element::mod_tuple(*modulus, &coords),
        Element::ModMatrix { modulus, rows, cols, .. } => {
            Element::mod_matrix(*modulus, *rows, *cols, &coords)
        }
        Element::ModPoly { modulus, coeffs } => {
            Element::mod_poly(*modulus, coeffs.len() - 1, &coords)
        }
        Element::Nat { .. } => Element::nat_tuple(&coords),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DependenceWitness {
    /// x = s.y for distinct x, y in the set.
    Pairwise { x: Element, scalar: Element, y: Element },
    /// A nontrivial combination: sum of scalar.element products equals
    /// `sum` (zero for the group-algebra clause, an element of the set for
    /// the combination-of-others clause).
    Combination { scalars: Vec<Option<Element>>, elements: Vec<Element>, sum: Element },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    pub witness: Option<DependenceWitness>,
}

/// Family-specific linear independence.
pub fn is_independent(
    d: &StructureDecl,
    subset: &[Element],
    budget: &Budget,
) -> Result<IndependenceReport, AnalysisError> {
    validate_subset(d, subset)?;
    let scalars = d.scalars();
    let carrier = d.carrier();

    // Pairwise clause: x = s.y for distinct x, y (all families).
    for y in subset {
        for s in scalars.members() {
            budget.charge(1)?;
            if let Ok(r) = scalars.act(s, y, carrier) {
                if &r != y && subset.contains(&r) {
                    return Ok(IndependenceReport {
                        independent: false,
                        witness: Some(DependenceWitness::Pairwise {
                            x: r,
                            scalar: s.clone(),
                            y: y.clone(),
                        }),
                    });
                }
            }
        }
    }
    if !d.family().is_algebra() {
        return Ok(IndependenceReport { independent: true, witness: None });
    }

    // Group algebras: a nontrivial combination summing to zero.
    if d.family() == Family::GroupLa {
        let k = subset.len();
        let members = scalars.members();
        let mut assignment = vec![0usize; k];
        loop {
            budget.charge(1)?;
            let chosen: Vec<&Element> = assignment.iter().map(|&i| &members[i]).collect();
            let nontrivial = chosen
                .iter()
                .any(|s| Some(*s) != scalars.zero_member());
            if nontrivial {
                if let Some(sum) = combination_sum(d, subset, &chosen) {
                    if sum.is_zero() {
                        return Ok(IndependenceReport {
                            independent: false,
                            witness: Some(DependenceWitness::Combination {
                                scalars: chosen.iter().map(|s| Some((*s).clone())).collect(),
                                elements: subset.to_vec(),
                                sum,
                            }),
                        });
                    }
                }
            }
            if !advance(&mut assignment, members.len()) {
                break;
            }
        }
        return Ok(IndependenceReport { independent: true, witness: None });
    }

    // Summation algebras: no element is a combination of the others.
    let k = subset.len();
    let members = scalars.members();
    for target_idx in 0..k {
        let others: Vec<&Element> =
            subset.iter().enumerate().filter(|(i, _)| *i != target_idx).map(|(_, e)| e).collect();
        if others.is_empty() {
            continue;
        }
        // Assignment over S + "absent" per other element; at least one present.
        let radix = members.len() + 1;
        let mut assignment = vec![0usize; others.len()];
        loop {
            budget.charge(1)?;
            if assignment.iter().any(|&i| i > 0) {
                let chosen: Vec<Option<&Element>> = assignment
                    .iter()
                    .map(|&i| if i == 0 { None } else { Some(&members[i - 1]) })
                    .collect();
                let present: Vec<&Element> = chosen.iter().flatten().copied().collect();
                let present_elems: Vec<&Element> = others
                    .iter()
                    .zip(&chosen)
                    .filter(|(_, c)| c.is_some())
                    .map(|(e, _)| *e)
                    .collect();
                if let Some(sum) = combination_sum_refs(d, &present_elems, &present) {
                    if sum == subset[target_idx] {
                        return Ok(IndependenceReport {
                            independent: false,
                            witness: Some(DependenceWitness::Combination {
                                scalars: chosen.iter().map(|c| c.cloned()).collect(),
                                elements: others.iter().map(|e| (*e).clone()).collect(),
                                sum,
                            }),
                        });
                    }
                }
            }
            if !advance(&mut assignment, radix) {
                break;
            }
        }
    }
    Ok(IndependenceReport { independent: true, witness: None })
}

fn advance(assignment: &mut [usize], radix: usize) -> bool {
    for slot in (0..assignment.len()).rev() {
        assignment[slot] += 1;
        if assignment[slot] < radix {
            return true;
        }
        assignment[slot] = 0;
    }
    false
}

fn combination_sum(d: &StructureDecl, elems: &[Element], scalars: &[&Element]) -> Option<Element> {
    let refs: Vec<&Element> = elems.iter().collect();
    combination_sum_refs(d, &refs, scalars)
}

fn combination_sum_refs(
    d: &StructureDecl,
    elems: &[&Element],
    scalars: &[&Element],
) -> Option<Element> {
    let mut acc: Option<Element> = None;
    for (e, s) in elems.iter().zip(scalars) {
        let term = d.scalars().act(s, e, d.carrier()).ok()?;
        acc = Some(match acc {
            None => term,
            Some(a) => d.carrier().add(&a, &term).ok()?,
        });
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinGenResult {
    pub elements: Vec<Element>,
    pub cardinality: usize,
    pub certificate: Certificate,
    pub window_flagged: bool,
}

/// Smallest counting lower bound: least k with per_element_bound(k) >= |V|.
fn counting_lower_bound(per: impl Fn(u32) -> u128, ground: u128) -> usize {
    let mut k = 0u32;
    while per(k) < ground {
        k += 1;
        if k > 64 {
            break;
        }
    }
    k as usize
}

/// A generating set of minimum cardinality with a minimality certificate.
/// Ties are broken deterministically: candidates are scanned in canonical
/// order, so the reported set is the first minimum-size set the search
/// reaches.
pub fn min_generating(
    d: &StructureDecl,
    mode: GenMode,
    budget: &Budget,
) -> Result<MinGenResult, AnalysisError> {
    let report = verify_structure(d)?;
    if !report.verdict {
        let detail = report
            .first_witness()
            .map(|(c, w)| format!("{} fails: {w}", c.axiom))
            .unwrap_or_else(|| "axioms fail".into());
        return Err(AnalysisError::StructureInvalid(detail));
    }
    if d.family().is_algebra() && mode == GenMode::SingleStep {
        return Err(AnalysisError::ModeUnsupported);
    }

    if d.family().is_algebra() {
        min_generating_algebra(d, mode, budget)
    } else {
        min_generating_vs(d, mode, budget)
    }
}

fn min_generating_algebra(
    d: &StructureDecl,
    mode: GenMode,
    budget: &Budget,
) -> Result<MinGenResult, AnalysisError> {
    // Empty sum covers an all-zero ground.
    let all_zero = match d.ground_spec() {
        GroundSpec::Subset(elems) => elems.iter().all(|e| e.is_zero()),
        GroundSpec::All => d.ground_len() == 1,
    };
    if all_zero {
        return Ok(MinGenResult {
            elements: vec![],
            cardinality: 0,
            certificate: Certificate::Exhaustive,
            window_flagged: false,
        });
    }

    if let Some(ctx) = mod_ctx(d) {
        let ground_len = d.ground_len();
        let lower = counting_lower_bound(
            |k| (ctx.n as u128).checked_pow(k).unwrap_or(u128::MAX),
            ground_len,
        );
        match d.ground_spec() {
            GroundSpec::All => {
                // Coordinate units generate the full module; the counting
                // bound n^k >= n^dim pins the minimum at dim.
                let template = d.carrier().zero().expect("parametric zero");
                let units: Vec<Element> = (0..ctx.dim)
                    .map(|i| {
                        let mut coords = vec![0u64; ctx.dim];
                        coords[i] = 1;
                        rebuild(&template, coords)
                    })
                    .collect();
                debug_assert_eq!(units.len(), lower);
                return Ok(MinGenResult {
                    elements: units,
                    cardinality: ctx.dim,
                    certificate: Certificate::CountingBound,
                    window_flagged: false,
                });
            }
            GroundSpec::Subset(elems) => {
                // Greedy canonical scan, membership by modular elimination.
                let mut module = ZnSpan::new(ctx.n, ctx.dim);
                let mut chosen: Vec<Element> = Vec::new();
                for e in elems {
                    budget.charge(ctx.dim as u64)?;
                    if !module.contains(e.coords()) {
                        module.insert(e.coords());
                        chosen.push(e.clone());
                    }
                }
                let certificate = if chosen.len() == lower {
                    Certificate::CountingBound
                } else {
                    // Fall back to exhaustive search below the greedy size.
                    match exhaustive_smaller_search(d, mode, budget, &chosen, lower) {
                        Ok(Some(better)) => {
                            return Ok(better);
                        }
                        Ok(None) => Certificate::Exhaustive,
                        Err(_) => Certificate::BudgetExhausted,
                    }
                };
                return Ok(MinGenResult {
                    cardinality: chosen.len(),
                    elements: chosen,
                    certificate,
                    window_flagged: false,
                });
            }
        }
    }

    // Exhaustive path for small grounds with arbitrary scalars.
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let lower = general_lower_bound(d, ground.len() as u128);
    let mut window_flagged = false;

    // Greedy: extend with the canonically first element outside the span.
    let mut chosen: Vec<Element> = Vec::new();
    loop {
        let result = span(d, &chosen, GenMode::Iterated, budget)?;
        window_flagged |= result.window_flagged;
        let covered: BTreeSet<&Element> = result.elements.iter().collect();
        match ground.iter().find(|g| !covered.contains(*g)) {
            None => break,
            Some(missing) => chosen.push(missing.clone()),
        }
    }
    if chosen.len() == lower {
        return Ok(MinGenResult {
            cardinality: chosen.len(),
            elements: chosen,
            certificate: Certificate::CountingBound,
            window_flagged,
        });
    }
    match exhaustive_smaller_search(d, mode, budget, &chosen, lower) {
        Ok(Some(better)) => Ok(better),
        Ok(None) => Ok(MinGenResult {
            cardinality: chosen.len(),
            elements: chosen,
            certificate: Certificate::Exhaustive,
            window_flagged,
        }),
        Err(_) => Ok(MinGenResult {
            cardinality: chosen.len(),
            elements: chosen,
            certificate: Certificate::BudgetExhausted,
            window_flagged,
        }),
    }
}

fn general_lower_bound(d: &StructureDecl, ground_len: u128) -> usize {
    if d.family().is_algebra() {
        // The additive span of k generators over a modulus-n carrier has at
        // most n^k elements; without a modulus no useful bound applies.
        let modulus = match d.ground_spec() {
            GroundSpec::Subset(elems) => elems[0].modulus(),
            GroundSpec::All => d.carrier().zero().and_then(|z| z.modulus()),
        };
        match modulus {
            Some(n) => counting_lower_bound(
                |k| (n as u128).checked_pow(k).unwrap_or(u128::MAX),
                ground_len,
            ),
            None => usize::from(ground_len > 1),
        }
    } else {
        // Single-step spans have at most (|S|+1)k elements.
        let s = d.scalars().members().len() as u128 + 1;
        counting_lower_bound(|k| s.saturating_mul(k as u128), ground_len)
    }
}

/// Search all subsets strictly smaller than `upper` (from `lower` up) for a
/// generating set. Ok(Some) = found a smaller one (with exhaustive
/// certificate), Ok(None) = all smaller sizes refuted.
fn exhaustive_smaller_search(
    d: &StructureDecl,
    mode: GenMode,
    budget: &Budget,
    upper_set: &[Element],
    lower: usize,
) -> Result<Option<MinGenResult>, BudgetExceeded> {
    let Ok(ground) = d.ground_elements() else {
        return Err(BudgetExceeded { limit: budget.limit() });
    };
    for k in lower..upper_set.len() {
        for combo in ground.iter().combinations(k) {
            budget.charge(1)?;
            let candidate: Vec<Element> = combo.into_iter().cloned().collect();
            match is_generating(d, &candidate, mode, budget) {
                Ok(res) if res.generating => {
                    return Ok(Some(MinGenResult {
                        cardinality: candidate.len(),
                        elements: candidate,
                        certificate: Certificate::Exhaustive,
                        window_flagged: res.window_flagged,
                    }));
                }
                Ok(_) => {}
                Err(AnalysisError::Budget(e)) => return Err(e),
                Err(_) => {}
            }
        }
    }
    Ok(None)
}

fn min_generating_vs(
    d: &StructureDecl,
    mode: GenMode,
    budget: &Budget,
) -> Result<MinGenResult, AnalysisError> {
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let scalars = d.scalars();
    let carrier = d.carrier();
    let mut window_flagged = false;

    // Forced elements: not reachable from any other ground element.
    let forced: Vec<Element> = match mode {
        GenMode::SingleStep => {
            let mut covered: BTreeSet<Element> = BTreeSet::new();
            for b in &ground {
                for s in scalars.members() {
                    budget.charge(1)?;
                    match scalars.act(s, b, carrier) {
                        Ok(r) => {
                            if &r != b && d.ground_contains(&r) {
                                covered.insert(r);
                            }
                        }
                        Err(ArithError::WindowOverflow { .. }) => window_flagged = true,
                        Err(_) => {}
                    }
                }
            }
            ground.iter().filter(|g| !covered.contains(*g)).cloned().collect()
        }
        GenMode::Iterated => {
            let mut forced = Vec::new();
            for v in &ground {
                let rest: Vec<Element> =
                    ground.iter().filter(|g| *g != v).cloned().collect();
                let result = span(d, &rest, GenMode::Iterated, budget)?;
                window_flagged |= result.window_flagged;
                if !result.elements.contains(v) {
                    forced.push(v.clone());
                }
            }
            forced
        }
    };

    let gen_check = |set: &[Element]| -> Result<(bool, bool), AnalysisError> {
        let r = is_generating(d, set, mode, budget)?;
        Ok((r.generating, r.window_flagged))
    };

    let (forced_generates, w) = gen_check(&forced)?;
    window_flagged |= w;
    if forced_generates {
        // Every generating set contains every forced element, so the forced
        // set is the unique minimum.
        return Ok(MinGenResult {
            cardinality: forced.len(),
            elements: forced,
            certificate: Certificate::Exhaustive,
            window_flagged,
        });
    }

    let lower = general_lower_bound(d, ground.len() as u128).max(forced.len());

    // Greedy set cover on top of the forced elements.
    let mut chosen = forced.clone();
    loop {
        let result = span(d, &chosen, mode, budget)?;
        window_flagged |= result.window_flagged;
        let covered: BTreeSet<&Element> = result.elements.iter().collect();
        let uncovered: Vec<&Element> =
            ground.iter().filter(|g| !covered.contains(*g)).collect();
        if uncovered.is_empty() {
            break;
        }
        // Candidate covering the most uncovered elements; canonical first.
        let mut best: Option<(usize, &Element)> = None;
        for b in &ground {
            if chosen.contains(b) {
                continue;
            }
            budget.charge(scalars.members().len() as u64)?;
            let mut gain = usize::from(uncovered.contains(&b));
            for s in scalars.members() {
                if let Ok(r) = scalars.act(s, b, carrier) {
                    if uncovered.contains(&&r) {
                        gain += 1;
                    }
                }
            }
            if best.map(|(g, _)| gain > g).unwrap_or(gain > 0) {
                best = Some((gain, b));
            }
        }
        match best {
            Some((_, b)) => chosen.push(b.clone()),
            None => {
                // Nothing can cover the rest with single products; fall back
                // to adding the first uncovered element itself.
                chosen.push(uncovered[0].clone());
            }
        }
    }
    chosen.sort();
    if chosen.len() == lower {
        return Ok(MinGenResult {
            cardinality: chosen.len(),
            elements: chosen,
            certificate: Certificate::CountingBound,
            window_flagged,
        });
    }

    // Exhaustive search between the bounds, always including the forced set.
    let pool: Vec<Element> =
        ground.iter().filter(|g| !forced.contains(*g)).cloned().collect();
    for k in lower..chosen.len() {
        let extra = k - forced.len();
        let mut found: Option<Vec<Element>> = None;
        for combo in pool.iter().combinations(extra) {
            if budget.charge(1).is_err() {
                return Ok(MinGenResult {
                    cardinality: chosen.len(),
                    elements: chosen,
                    certificate: Certificate::BudgetExhausted,
                    window_flagged,
                });
            }
            let mut candidate = forced.clone();
            candidate.extend(combo.into_iter().cloned());
            match gen_check(&candidate) {
                Ok((true, w)) => {
                    window_flagged |= w;
                    candidate.sort();
                    found = Some(candidate);
                    break;
                }
                Ok((false, w)) => window_flagged |= w,
                Err(AnalysisError::Budget(_)) => {
                    return Ok(MinGenResult {
                        cardinality: chosen.len(),
                        elements: chosen,
                        certificate: Certificate::BudgetExhausted,
                        window_flagged,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(set) = found {
            return Ok(MinGenResult {
                cardinality: set.len(),
                elements: set,
                certificate: Certificate::Exhaustive,
                window_flagged,
            });
        }
    }
    Ok(MinGenResult {
        cardinality: chosen.len(),
        elements: chosen,
        certificate: Certificate::Exhaustive,
        window_flagged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstructureList {
    pub subsets: Vec<Vec<Element>>,
    pub complete: bool,
}

/// All proper nontrivial subsets up to `size_bound` passing
/// check_substructure under full scalars, in canonical order. Candidates are
/// joins of single-generator closures (every substructure is such a join).
pub fn enumerate_substructures(
    d: &StructureDecl,
    target_family: Family,
    size_bound: usize,
    budget: &Budget,
) -> Result<SubstructureList, AnalysisError> {
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let ground_set: BTreeSet<&Element> = ground.iter().collect();
    let mut complete = true;

    let closure_of = |seed: &[Element]| -> Result<Option<BTreeSet<Element>>, BudgetExceeded> {
        let mut set: BTreeSet<Element> = seed.iter().cloned().collect();
        if target_family.is_group_family() || target_family.is_semigroup_family() {
            for z in shape_zeros(seed) {
                set.insert(z);
            }
        }
        let mut frontier: Vec<Element> = set.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for s in d.scalars().members() {
                budget.charge(1)?;
                match d.scalars().act(s, &v, d.carrier()) {
                    Ok(r) => {
                        if !ground_set.contains(&r) {
                            return Ok(None); // escapes the ground
                        }
                        if set.insert(r.clone()) {
                            frontier.push(r);
                        }
                    }
                    Err(ArithError::WindowOverflow { .. }) => {}
                    Err(_) => return Ok(None),
                }
            }
            if target_family.is_algebra() {
                let others: Vec<Element> = set.iter().cloned().collect();
                for w in others {
                    budget.charge(1)?;
                    match d.carrier().add(&v, &w) {
                        Ok(r) => {
                            if !ground_set.contains(&r) {
                                return Ok(None);
                            }
                            if set.insert(r.clone()) {
                                frontier.push(r);
                            }
                        }
                        Err(ArithError::WindowOverflow { .. }) => {}
                        Err(_) => return Ok(None),
                    }
                }
            }
            if set.len() > size_bound {
                return Ok(None);
            }
        }
        Ok(Some(set))
    };

    // Single-generator closures.
    let mut atoms: BTreeSet<Vec<Element>> = BTreeSet::new();
    for v in &ground {
        match closure_of(std::slice::from_ref(v)) {
            Ok(Some(c)) => {
                atoms.insert(c.into_iter().collect());
            }
            Ok(None) => {}
            Err(_) => {
                complete = false;
                break;
            }
        }
    }
    // Join lattice under the size bound.
    let mut all: BTreeSet<Vec<Element>> = atoms.clone();
    let mut frontier: Vec<Vec<Element>> = atoms.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        if budget.charge(atoms.len() as u64).is_err() {
            complete = false;
            break;
        }
        for b in &atoms {
            let seed: Vec<Element> = a
                .iter()
                .chain(b.iter())
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if seed.len() > size_bound {
                continue;
            }
            match closure_of(&seed) {
                Ok(Some(c)) => {
                    let joined: Vec<Element> = c.into_iter().collect();
                    if joined.len() <= size_bound && !all.contains(&joined) {
                        all.insert(joined.clone());
                        frontier.push(joined);
                    }
                }
                Ok(None) => {}
                Err(_) => {
                    complete = false;
                    break;
                }
            }
        }
    }

    let mut subsets: Vec<Vec<Element>> = Vec::new();
    for candidate in all {
        let nontrivial = candidate.iter().any(|e| !e.is_zero());
        let proper = candidate.len() < ground.len();
        if !nontrivial || !proper || candidate.len() > size_bound {
            continue;
        }
        if matches!(
            check_substructure(d, &candidate, target_family, None),
            Ok(r) if r.verdict
        ) {
            subsets.push(candidate);
        }
    }
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(SubstructureList { subsets, complete })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicityKind {
    Simple,
    PseudoSimple,
    StronglySimple,
}

impl SimplicityKind {
    pub fn name(self) -> &'static str {
        match self {
            SimplicityKind::Simple => "simple",
            SimplicityKind::PseudoSimple => "pseudo_simple",
            SimplicityKind::StronglySimple => "strongly_simple",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    NotSimple,
    NotRefutedWithinBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub kind: SimplicityKind,
    pub verdict: SimplicityVerdict,
    /// The violating (subscalars, subset) for simple/pseudo kinds.
    pub witness: Option<(Vec<Element>, Vec<Element>)>,
    /// The violating decomposition for the strong kind.
    pub decomposition: Option<Vec<Vec<Element>>>,
}

/// Absence of the corresponding proper substructures.
pub fn is_simple(
    d: &StructureDecl,
    kind: SimplicityKind,
    budget: &Budget,
) -> Result<SimplicityReport, AnalysisError> {
    if !(d.family().is_group_family() || d.family().is_semigroup_family()) {
        return Err(AnalysisError::SimplicityUndefined);
    }
    match kind {
        SimplicityKind::Simple => {
            let sub_kind = if d.family().is_group_family() {
                SubscalarKind::Subgroup
            } else {
                SubscalarKind::Subsemigroup
            };
            search_substructure_over(d, d.family(), sub_kind, false, budget)
                .map(|w| to_report(kind, w))
        }
        SimplicityKind::PseudoSimple => {
            let target = match d.family() {
                Family::GroupLa => Family::SemigroupLa,
                Family::GroupVs => Family::SemigroupVs,
                Family::SemigroupLa => Family::SemigroupVs,
                Family::SemigroupVs => Family::SemigroupVs,
                _ => unreachable!(),
            };
            // The pseudo clause of the summation families also demands the
            // subset itself not be additively closed.
            let demand_not_closed = d.family() == Family::SemigroupLa;
            search_substructure_over(d, target, SubscalarKind::Subsemigroup, demand_not_closed, budget)
                .map(|w| to_report(kind, w))
        }
        SimplicityKind::StronglySimple => {
            let simple = is_simple(d, SimplicityKind::Simple, budget)?;
            if simple.verdict == SimplicityVerdict::NotSimple {
                return Ok(SimplicityReport { kind, ..simple });
            }
            match search_direct_sum(d, budget) {
                Ok(Some(parts)) => Ok(SimplicityReport {
                    kind,
                    verdict: SimplicityVerdict::NotSimple,
                    witness: None,
                    decomposition: Some(parts),
                }),
                Ok(None) => Ok(SimplicityReport {
                    kind,
                    verdict: simple.verdict,
                    witness: None,
                    decomposition: None,
                }),
                Err(_) => Ok(SimplicityReport {
                    kind,
                    verdict: SimplicityVerdict::NotRefutedWithinBudget,
                    witness: None,
                    decomposition: None,
                }),
            }
        }
    }
}

fn to_report(
    kind: SimplicityKind,
    witness: Option<(Vec<Element>, Vec<Element>)>,
) -> SimplicityReport {
    match witness {
        Some(w) => SimplicityReport {
            kind,
            verdict: SimplicityVerdict::NotSimple,
            witness: Some(w),
            decomposition: None,
        },
        None => SimplicityReport {
            kind,
            verdict: SimplicityVerdict::Simple,
            witness: None,
            decomposition: None,
        },
    }
}

/// Search for a proper nontrivial subset forming a `target_family` structure
/// over some proper subscalar set. Single-generator closures suffice: any
/// substructure contains the closure of each of its nonzero elements.
fn search_substructure_over(
    d: &StructureDecl,
    target_family: Family,
    sub_kind: SubscalarKind,
    demand_not_closed: bool,
    budget: &Budget,
) -> Result<Option<(Vec<Element>, Vec<Element>)>, AnalysisError> {
    let subscalar_sets = enumerate_subscalars(d.scalars(), sub_kind)
        .map_err(|e| AnalysisError::StructureInvalid(e.to_string()))?;
    if subscalar_sets.is_empty() {
        return Ok(None);
    }
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let ground_len = ground.len();

    for sub in &subscalar_sets {
        for v in &ground {
            if v.is_zero() {
                continue;
            }
            budget.charge(1)?;
            // Closure of {v} over the subscalars under the target family.
            let mut set: BTreeSet<Element> = BTreeSet::new();
            set.insert(v.clone());
            if target_family.is_group_family() || target_family.is_semigroup_family() {
                set.insert(v.zero_like());
            }
            let mut frontier: Vec<Element> = set.iter().cloned().collect();
            let mut escaped = false;
            while let Some(x) = frontier.pop() {
                for s in sub {
                    budget.charge(1)?;
                    match d.scalars().act(s, &x, d.carrier()) {
                        Ok(r) => {
                            if !d.ground_contains(&r) {
                                escaped = true;
                                break;
                            }
                            if set.insert(r.clone()) {
                                frontier.push(r);
                            }
                        }
                        Err(ArithError::WindowOverflow { .. }) => {}
                        Err(_) => {
                            escaped = true;
                            break;
                        }
                    }
                }
                if escaped {
                    break;
                }
                if target_family.is_algebra() {
                    let others: Vec<Element> = set.iter().cloned().collect();
                    for w in others {
                        budget.charge(1)?;
                        match d.carrier().add(&x, &w) {
                            Ok(r) => {
                                if !d.ground_contains(&r) {
                                    escaped = true;
                                    break;
                                }
                                if set.insert(r.clone()) {
                                    frontier.push(r);
                                }
                            }
                            Err(ArithError::WindowOverflow { .. }) => {}
                            Err(_) => {
                                escaped = true;
                                break;
                            }
                        }
                    }
                    if escaped {
                        break;
                    }
                }
            }
            if escaped {
                continue;
            }
            let candidate: Vec<Element> = set.into_iter().collect();
            let nontrivial = candidate.iter().any(|e| !e.is_zero());
            let proper = candidate.len() < ground_len;
            if !nontrivial || !proper {
                continue;
            }
            if demand_not_closed
                && crate::structures::is_additively_closed(d.carrier(), &candidate)
            {
                continue;
            }
            if matches!(
                check_substructure(d, &candidate, target_family, Some(sub)),
                Ok(r) if r.verdict
            ) {
                return Ok(Some((sub.clone(), candidate)));
            }
        }
    }
    Ok(None)
}

/// Search for a nontrivial direct-sum decomposition into substructures over
/// the full scalar set.
fn search_direct_sum(
    d: &StructureDecl,
    budget: &Budget,
) -> Result<Option<Vec<Vec<Element>>>, AnalysisError> {
    let ground_len = d.ground_len();
    let size_bound = usize::try_from(ground_len.saturating_sub(1)).unwrap_or(usize::MAX);
    let candidates = enumerate_substructures(d, d.family(), size_bound, budget)?;
    let parts = candidates.subsets;
    // Depth-first cover search over candidate substructures.
    fn extend(
        d: &StructureDecl,
        budget: &Budget,
        parts: &[Vec<Element>],
        start: usize,
        current: &mut Vec<usize>,
        sum: &BTreeSet<Element>,
        ground_len: usize,
    ) -> Result<Option<Vec<usize>>, BudgetExceeded> {
        if current.len() >= 2 && sum.len() == ground_len {
            return Ok(Some(current.clone()));
        }
        for idx in start..parts.len() {
            budget.charge(1)?;
            let part = &parts[idx];
            // Pairwise intersections must stay within {0}.
            let disjoint = current.iter().all(|&i| {
                parts[i].iter().all(|e| e.is_zero() || !part.contains(e))
            });
            if !disjoint {
                continue;
            }
            // Setwise sum grows.
            let mut new_sum = BTreeSet::new();
            for a in sum {
                for b in part {
                    budget.charge(1)?;
                    if let Ok(r) = d.carrier().add(a, b) {
                        new_sum.insert(r);
                    }
                }
            }
            if new_sum.len() <= sum.len() {
                continue;
            }
            current.push(idx);
            if let Some(found) =
                extend(d, budget, parts, idx + 1, current, &new_sum, ground_len)?
            {
                return Ok(Some(found));
            }
            current.pop();
        }
        Ok(None)
    }
    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let zero_seed: BTreeSet<Element> = shape_zeros(&ground).into_iter().collect();
    let mut current = Vec::new();
    match extend(d, budget, &parts, 0, &mut current, &zero_seed, ground.len()) {
        Ok(Some(indices)) => Ok(Some(indices.into_iter().map(|i| parts[i].clone()).collect())),
        Ok(None) => Ok(None),
        Err(e) => Err(AnalysisError::Budget(e)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMode {
    DirectSum,
    PseudoDirectSum,
    DirectUnion,
    PseudoDirectUnion,
}

impl DecompositionMode {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionMode::DirectSum => "direct_sum",
            DecompositionMode::PseudoDirectSum => "pseudo_direct_sum",
            DecompositionMode::DirectUnion => "direct_union",
            DecompositionMode::PseudoDirectUnion => "pseudo_direct_union",
        }
    }

    pub fn parse(s: &str) -> Option<DecompositionMode> {
        Some(match s {
            "direct_sum" => DecompositionMode::DirectSum,
            "pseudo_direct_sum" => DecompositionMode::PseudoDirectSum,
            "direct_union" => DecompositionMode::DirectUnion,
            "pseudo_direct_union" => DecompositionMode::PseudoDirectUnion,
            _ => return None,
        })
    }

    pub fn is_sum(self) -> bool {
        matches!(self, DecompositionMode::DirectSum | DecompositionMode::PseudoDirectSum)
    }

    pub fn is_pseudo(self) -> bool {
        matches!(
            self,
            DecompositionMode::PseudoDirectSum | DecompositionMode::PseudoDirectUnion
        )
    }
}

impl fmt::Display for DecompositionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseIntersection {
    pub left: usize,
    pub right: usize,
    pub size: usize,
    pub exceeds_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub mode: DecompositionMode,
    pub covers: bool,
    /// Canonically first ground element missed by the sum/union, if any.
    pub uncovered_witness: Option<Element>,
    pub pairwise: Vec<PairwiseIntersection>,
    pub distinct: bool,
    pub verdict: bool,
    pub window_flagged: bool,
}

/// Check a proposed decomposition of the ground set into substructures.
pub fn check_decomposition(
    d: &StructureDecl,
    parts: &[Vec<Element>],
    mode: DecompositionMode,
    budget: &Budget,
) -> Result<DecompositionReport, AnalysisError> {
    for (i, part) in parts.iter().enumerate() {
        validate_subset(d, part)?;
        match check_substructure(d, part, d.family(), None) {
            Ok(r) if r.verdict => {}
            Ok(r) => {
                let detail = r
                    .first_witness()
                    .map(|(c, w)| format!("{} fails: {w}", c.axiom))
                    .unwrap_or_else(|| "axioms fail".into());
                return Err(AnalysisError::PartNotSubstructure(i, detail));
            }
            Err(e) => return Err(AnalysisError::PartNotSubstructure(i, e.to_string())),
        }
    }
    let parts: Vec<Vec<Element>> = parts
        .iter()
        .map(|p| {
            let mut sorted = p.clone();
            sorted.sort();
            sorted.dedup();
            sorted
        })
        .collect();

    let mut window_flagged = false;
    let covered: BTreeSet<Element> = if mode.is_sum() {
        let mut acc: BTreeSet<Element> = match parts.first() {
            Some(p) => p.iter().cloned().collect(),
            None => BTreeSet::new(),
        };
        for part in parts.iter().skip(1) {
            let mut next = BTreeSet::new();
            for a in &acc {
                for b in part {
                    budget.charge(1)?;
                    match d.carrier().add(a, b) {
                        Ok(r) => {
                            next.insert(r);
                        }
                        Err(ArithError::WindowOverflow { .. }) => window_flagged = true,
                        Err(_) => {}
                    }
                }
            }
            acc = next;
        }
        acc
    } else {
        parts.iter().flatten().cloned().collect()
    };

    let ground = d.ground_elements().map_err(|_| AnalysisError::TooLarge(d.ground_len()))?;
    let uncovered_witness = ground.iter().find(|g| !covered.contains(*g)).cloned();
    let covers = uncovered_witness.is_none();

    let mut pairwise = Vec::new();
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            let inter: Vec<&Element> =
                parts[i].iter().filter(|e| parts[j].binary_search(e).is_ok()).collect();
            pairwise.push(PairwiseIntersection {
                left: i,
                right: j,
                size: inter.len(),
                exceeds_zero: inter.iter().any(|e| !e.is_zero()),
            });
        }
    }
    let mut distinct = true;
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            if i != j && parts[i].iter().all(|e| parts[j].binary_search(e).is_ok()) {
                distinct = false;
            }
        }
    }

    let zero_intersections = pairwise.iter().all(|p| !p.exceeds_zero);
    let some_exceeds = pairwise.iter().any(|p| p.exceeds_zero);
    let verdict = match mode {
        DecompositionMode::DirectSum | DecompositionMode::DirectUnion => {
            covers && zero_intersections
        }
        DecompositionMode::PseudoDirectSum | DecompositionMode::PseudoDirectUnion => {
            covers && some_exceeds && distinct
        }
    };
    window_flagged = window_flagged && d.carrier().window_truncated();
    Ok(DecompositionReport {
        mode,
        covers,
        uncovered_witness,
        pairwise,
        distinct,
        verdict,
        window_flagged,
    })
}

/// Group the pairwise map of a decomposition report for display.
pub fn pairwise_summary(report: &DecompositionReport) -> BTreeMap<(usize, usize), bool> {
    report
        .pairwise
        .iter()
        .map(|p| ((p.left, p.right), p.exceeds_zero))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::ScalarSet;

    fn decl(
        family: Family,
        carrier: Carrier,
        ground: GroundSpec,
        scalars: ScalarSet,
    ) -> StructureDecl {
        StructureDecl::new("T", family, carrier, ground, scalars).unwrap()
    }

    use crate::carrier::Carrier;

    fn z2_cube_la() -> StructureDecl {
        decl(
            Family::GroupLa,
            Carrier::zn_tuple(2, 3).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(2),
        )
    }

    #[test]
    fn span_of_units_is_everything() {
        let d = z2_cube_la();
        let units: Vec<Element> = vec![
            Element::mod_tuple(2, &[1, 0, 0]),
            Element::mod_tuple(2, &[0, 1, 0]),
            Element::mod_tuple(2, &[0, 0, 1]),
        ];
        let result = span(&d, &units, GenMode::Iterated, &Budget::default()).unwrap();
        assert_eq!(result.elements.len(), 8);
    }

    #[test]
    fn empty_span_conventions() {
        // Vector-space families: no products exist.
        let d = decl(
            Family::SetVs,
            Carrier::zn(5).unwrap(),
            GroundSpec::All,
            ScalarSet::modular_subset(5, &[1, 2]).unwrap(),
        );
        let result = span(&d, &[], GenMode::SingleStep, &Budget::default()).unwrap();
        assert!(result.elements.is_empty());
        // Algebra families: the empty sum gives {0}.
        let la = z2_cube_la();
        let result = span(&la, &[], GenMode::Iterated, &Budget::default()).unwrap();
        assert_eq!(result.elements, vec![Element::mod_tuple(2, &[0, 0, 0])]);
    }

    #[test]
    fn single_step_rejected_on_algebras() {
        let d = z2_cube_la();
        assert!(matches!(
            span(&d, &[], GenMode::SingleStep, &Budget::default()),
            Err(AnalysisError::ModeUnsupported)
        ));
    }

    fn powers_of_three() -> StructureDecl {
        let ground: Vec<Element> =
            [0u64, 3, 9, 27, 81].iter().map(|&v| Element::nat(v)).collect();
        decl(
            Family::SetVs,
            Carrier::nat_window(100),
            GroundSpec::Subset(ground),
            ScalarSet::nat_subset(100, &[0, 1, 3]).unwrap(),
        )
    }

    #[test]
    fn mode_dependence_of_powers_of_three() {
        let d = powers_of_three();
        let b = vec![Element::nat(0), Element::nat(3)];
        let single = span(&d, &b, GenMode::SingleStep, &Budget::default()).unwrap();
        let got: Vec<u64> =
            single.elements.iter().map(|e| e.scalar_value().unwrap()).collect();
        assert_eq!(got, vec![0, 3, 9]);
        let iterated = span(&d, &b, GenMode::Iterated, &Budget::default()).unwrap();
        let got: Vec<u64> =
            iterated.elements.iter().map(|e| e.scalar_value().unwrap()).collect();
        assert_eq!(got, vec![0, 3, 9, 27, 81]);
        assert!(iterated.window_flagged);

        let not_gen = is_generating(&d, &b, GenMode::SingleStep, &Budget::default()).unwrap();
        assert!(!not_gen.generating);
        let gen = is_generating(&d, &b, GenMode::Iterated, &Budget::default()).unwrap();
        assert!(gen.generating);
    }

    #[test]
    fn ground_with_identity_scalar_generates_itself() {
        let d = decl(
            Family::SetVs,
            Carrier::zn(12).unwrap(),
            GroundSpec::All,
            ScalarSet::modular_subset(12, &[0, 1, 5]).unwrap(),
        );
        let ground = d.ground_elements().unwrap();
        let r = is_generating(&d, &ground, GenMode::SingleStep, &Budget::default()).unwrap();
        assert!(r.generating);
    }

    #[test]
    fn dependence_of_2_6_12() {
        // {2,6,12} over the even scalars: 12 = 6.2.
        let ground: Vec<Element> = (1..=50u64).map(Element::nat).collect();
        let d = decl(
            Family::SetVs,
            Carrier::nat_window(100),
            GroundSpec::Subset(ground),
            ScalarSet::nat_subset(100, &[2, 4, 6, 8, 10]).unwrap(),
        );
        let b = vec![Element::nat(2), Element::nat(6), Element::nat(12)];
        let report = is_independent(&d, &b, &Budget::default()).unwrap();
        assert!(!report.independent);
        match report.witness.unwrap() {
            DependenceWitness::Pairwise { x, scalar, y } => {
                assert_eq!(x, Element::nat(12));
                assert_eq!(scalar, Element::nat(6));
                assert_eq!(y, Element::nat(2));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let b = vec![Element::nat(1), Element::nat(3)];
        assert!(is_independent(&d, &b, &Budget::default()).unwrap().independent);
        let b = vec![Element::nat(7)];
        assert!(is_independent(&d, &b, &Budget::default()).unwrap().independent);
    }

    #[test]
    fn dimension_of_z2_cube_algebra() {
        let d = z2_cube_la();
        let result = min_generating(&d, GenMode::Iterated, &Budget::default()).unwrap();
        assert_eq!(result.cardinality, 3);
        assert!(matches!(
            result.certificate,
            Certificate::Exhaustive | Certificate::CountingBound
        ));
        let gen =
            is_generating(&d, &result.elements, GenMode::Iterated, &Budget::default()).unwrap();
        assert!(gen.generating);
    }

    #[test]
    fn dimension_of_matrix_algebra_over_z6() {
        let d = decl(
            Family::GroupLa,
            Carrier::zn_matrix(6, 2, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(6),
        );
        let result = min_generating(&d, GenMode::Iterated, &Budget::default()).unwrap();
        assert_eq!(result.cardinality, 4);
        assert_eq!(result.certificate, Certificate::CountingBound);
    }

    #[test]
    fn zero_ground_has_empty_basis() {
        let d = decl(
            Family::GroupLa,
            Carrier::zn_tuple(4, 2).unwrap(),
            GroundSpec::Subset(vec![Element::mod_tuple(4, &[0, 0])]),
            ScalarSet::full_modular(4),
        );
        let result = min_generating(&d, GenMode::Iterated, &Budget::default()).unwrap();
        assert_eq!(result.cardinality, 0);
        assert!(result.elements.is_empty());
        assert_eq!(result.certificate, Certificate::Exhaustive);
    }

    fn mixed_seven_group_vs() -> StructureDecl {
        // Mixed 4- and 3-tuples over Z2; dimension 5 (all nonzero forced).
        let elems = vec![
            Element::mod_tuple(2, &[1, 1, 0, 0]),
            Element::mod_tuple(2, &[0, 0, 0, 0]),
            Element::mod_tuple(2, &[0, 0, 0, 1]),
            Element::mod_tuple(2, &[1, 1, 1]),
            Element::mod_tuple(2, &[0, 1, 1]),
            Element::mod_tuple(2, &[0, 1, 0]),
            Element::mod_tuple(2, &[0, 0, 0]),
        ];
        let carrier = Carrier::explicit(elems).unwrap();
        decl(Family::GroupVs, carrier, GroundSpec::All, ScalarSet::full_modular(2))
    }

    #[test]
    fn dimension_of_mixed_seven_is_five() {
        let d = mixed_seven_group_vs();
        let result = min_generating(&d, GenMode::SingleStep, &Budget::default()).unwrap();
        assert_eq!(result.cardinality, 5);
        assert_eq!(result.certificate, Certificate::Exhaustive);
        assert!(result.elements.iter().all(|e| !e.is_zero()));
    }

    #[test]
    fn simplicity_of_z7_cube() {
        let d = decl(
            Family::GroupVs,
            Carrier::zn_tuple(7, 3).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(7),
        );
        let report = is_simple(&d, SimplicityKind::Simple, &Budget::default()).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
    }

    #[test]
    fn z6_cube_not_simple() {
        let d = decl(
            Family::GroupVs,
            Carrier::zn_tuple(6, 3).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(6),
        );
        let report = is_simple(&d, SimplicityKind::Simple, &Budget::new(100_000_000)).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::NotSimple);
        let (sub, w) = report.witness.unwrap();
        let sub_values: Vec<u64> = sub.iter().map(|e| e.scalar_value().unwrap()).collect();
        assert!(sub_values == vec![0, 2, 4] || sub_values == vec![0, 3]);
        // The witness replays: W passes over the subscalars.
        let check = check_substructure(&d, &w, Family::GroupVs, Some(&sub)).unwrap();
        assert!(check.verdict);
    }

    #[test]
    fn zero_ground_is_simple() {
        let d = decl(
            Family::GroupVs,
            Carrier::zn_tuple(6, 2).unwrap(),
            GroundSpec::Subset(vec![Element::mod_tuple(6, &[0, 0])]),
            ScalarSet::full_modular(6),
        );
        let report = is_simple(&d, SimplicityKind::Simple, &Budget::default()).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
    }

    fn axis_parts(n: u64) -> Vec<Vec<Element>> {
        (0..3usize)
            .map(|axis| {
                (0..n)
                    .map(|v| {
                        let mut coords = [0u64; 3];
                        coords[axis] = v;
                        Element::mod_tuple(n, &coords)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn z14_direct_sum_of_axes() {
        let d = decl(
            Family::GroupLa,
            Carrier::zn_tuple(14, 3).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(14),
        );
        let parts = axis_parts(14);
        let report =
            check_decomposition(&d, &parts, DecompositionMode::DirectSum, &Budget::default())
                .unwrap();
        assert!(report.verdict);
        assert!(report.covers);
        // The same parts are not a pseudo direct sum: intersections are {0}.
        let report =
            check_decomposition(&d, &parts, DecompositionMode::PseudoDirectSum, &Budget::default())
                .unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn single_part_direct_sum_is_trivially_ok() {
        let d = z2_cube_la();
        let ground = d.ground_elements().unwrap();
        let report = check_decomposition(
            &d,
            &[ground],
            DecompositionMode::DirectSum,
            &Budget::default(),
        )
        .unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn enumerate_substructures_of_z5_pair() {
        let d = decl(
            Family::GroupVs,
            Carrier::zn_tuple(5, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(5),
        );
        let found =
            enumerate_substructures(&d, Family::GroupVs, 5, &Budget::default()).unwrap();
        assert!(found.complete);
        // Orbit lines through the origin: (5^2-1)/(5-1) = 6 of them.
        assert_eq!(found.subsets.len(), 6);
        for w in &found.subsets {
            assert_eq!(w.len(), 5);
            let check = check_substructure(&d, w, Family::GroupVs, None).unwrap();
            assert!(check.verdict);
        }
    }

    #[test]
    fn simple_structures_have_no_substructures() {
        let d = decl(
            Family::GroupVs,
            Carrier::zn_tuple(3, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(3),
        );
        let report = is_simple(&d, SimplicityKind::Simple, &Budget::default()).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
    }

    #[test]
    fn fast_path_matches_exhaustive_generation() {
        // Cross-check the modular elimination against the closure engine.
        let d = decl(
            Family::GroupLa,
            Carrier::zn_tuple(12, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(12),
        );
        let cases: Vec<Vec<Element>> = vec![
            vec![Element::mod_tuple(12, &[4, 6])],
            vec![Element::mod_tuple(12, &[3, 0]), Element::mod_tuple(12, &[0, 8])],
            vec![Element::mod_tuple(12, &[1, 5])],
            vec![Element::mod_tuple(12, &[2, 4]), Element::mod_tuple(12, &[6, 6])],
        ];
        for basis in cases {
            let fast = is_generating(&d, &basis, GenMode::Iterated, &Budget::default())
                .unwrap()
                .generating;
            let slow = {
                let result =
                    span(&d, &basis, GenMode::Iterated, &Budget::new(100_000_000)).unwrap();
                result.elements.len() as u128 == d.ground_len()
            };
            assert_eq!(fast, slow, "mismatch for {basis:?}");
        }
    }

    #[test]
    fn strongly_simple_z5_scalar_line() {
        let d = decl(
            Family::GroupLa,
            Carrier::zn(5).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(5),
        );
        let report =
            is_simple(&d, SimplicityKind::StronglySimple, &Budget::default()).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
    }

    #[test]
    fn z6_pair_decomposable_hence_not_strongly_simple() {
        let d = decl(
            Family::GroupLa,
            Carrier::zn_tuple(6, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(6),
        );
        let report =
            is_simple(&d, SimplicityKind::StronglySimple, &Budget::new(100_000_000)).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::NotSimple);
    }
}
