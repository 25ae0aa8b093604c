//! Command dispatch: every CLI verb resolves names against the registry,
//! drives the matching engine, and renders one report.

use thiserror::Error;

use finalg::analysis::{
    check_decomposition, is_generating, is_independent, is_simple, min_generating, span,
    DecompositionMode, GenMode, SimplicityKind, SimplicityVerdict,
};
use finalg::budget::Budget;
use finalg::carrier::Element;
use finalg::fuzzy::verify_fuzzy;
use finalg::maps::{check_projection_onto, enumerate_homs, verify_map};
use finalg::multi::{n_dimension, verify_multi};
use finalg::structures::{
    check_substructure, classify_substructure, verify_structure, AxiomReport, Family,
    StructureDecl,
};

use crate::model::{type_literal, Registry, ResolveError};
use crate::parser::{parse_definition, ParseError, SetExpr};
use crate::report::{FieldValue, Item, Report};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Engine(String),
}

fn engine<E: std::fmt::Display>(e: E) -> RunError {
    RunError::Engine(e.to_string())
}

#[derive(Debug, Clone)]
pub enum Command {
    Verify { name: String },
    Dim { name: String, mode: Option<GenMode> },
    Span { name: String, set: String, mode: Option<GenMode> },
    Independent { name: String, set: String },
    Sub {
        name: String,
        set: String,
        scalars: Option<String>,
        as_family: Option<String>,
        classify: bool,
    },
    Decompose { name: String, parts: String, mode: String },
    Simple { name: String, kind: String },
    Homs { source: String, target: String },
    Project { map: String, onto: String },
}

impl Command {
    pub fn echo(&self) -> String {
        match self {
            Command::Verify { name } => format!("verify {name}"),
            Command::Dim { name, mode } => match mode {
                Some(m) => format!("dim {name} --mode {m}"),
                None => format!("dim {name}"),
            },
            Command::Span { name, set, mode } => match mode {
                Some(m) => format!("span {name} --set \"{set}\" --mode {m}"),
                None => format!("span {name} --set \"{set}\""),
            },
            Command::Independent { name, set } => {
                format!("independent {name} --set \"{set}\"")
            }
            Command::Sub { name, set, scalars, as_family, classify } => {
                let mut out = format!("sub {name} --set \"{set}\"");
                if let Some(s) = scalars {
                    out.push_str(&format!(" --scalars \"{s}\""));
                }
                if let Some(f) = as_family {
                    out.push_str(&format!(" --as {f}"));
                }
                if *classify {
                    out.push_str(" --classify");
                }
                out
            }
            Command::Decompose { name, parts, mode } => {
                format!("decompose {name} --parts \"{parts}\" --mode {mode}")
            }
            Command::Simple { name, kind } => format!("simple {name} --kind {kind}"),
            Command::Homs { source, target } => format!("homs {source} {target}"),
            Command::Project { map, onto } => format!("project {map} --onto \"{onto}\""),
        }
    }
}

/// Parse a brace-delimited element set against a structure's carrier.
fn parse_set(d: &StructureDecl, src: &str) -> Result<Vec<Element>, RunError> {
    let wrapped = format!("structure __args {{ carrier = zn(2); ground = {src}; scalars = zn(2) }}");
    let file = parse_definition(&wrapped)?;
    let crate::parser::Block::Structure(block) = &file.blocks[0] else {
        return Err(RunError::Usage("set literal".into()));
    };
    match &block.ground {
        SetExpr::All => Ok(d.ground_elements().map_err(engine)?),
        SetExpr::List(lits) => lits
            .iter()
            .map(|l| type_literal(l, d.carrier()).map_err(RunError::Resolve))
            .collect(),
    }
}

fn render_elements(elements: &[Element]) -> Vec<String> {
    elements.iter().map(|e| e.to_string()).collect()
}

fn axiom_fields(report: &AxiomReport, item: Item) -> Item {
    let mut item = item;
    for check in &report.entries {
        let status = if check.holds { "holds" } else { "fails" };
        let mut line = status.to_string();
        if let Some(w) = &check.witness {
            line.push_str(&format!(" [{w}]"));
        }
        if check.window_skipped > 0 {
            line.push_str(&format!(" ({} instances window-skipped)", check.window_skipped));
        }
        item = item.text_field(format!("axiom {}", check.axiom), line);
    }
    item
}

pub fn run(command: &Command, registry: &Registry, budget: &Budget) -> Result<Report, RunError> {
    let echo = command.echo();
    let items = match command {
        Command::Verify { name } => run_verify(name, registry, budget)?,
        Command::Dim { name, mode } => run_dim(name, *mode, registry, budget)?,
        Command::Span { name, set, mode } => run_span(name, set, *mode, registry, budget)?,
        Command::Independent { name, set } => run_independent(name, set, registry, budget)?,
        Command::Sub { name, set, scalars, as_family, classify } => {
            run_sub(name, set, scalars.as_deref(), as_family.as_deref(), *classify, registry)?
        }
        Command::Decompose { name, parts, mode } => {
            run_decompose(name, parts, mode, registry, budget)?
        }
        Command::Simple { name, kind } => run_simple(name, kind, registry, budget)?,
        Command::Homs { source, target } => run_homs(source, target, registry, budget)?,
        Command::Project { map, onto } => run_project(map, onto, registry, budget)?,
    };
    Ok(Report::new(echo, items))
}

fn run_verify(name: &str, registry: &Registry, budget: &Budget) -> Result<Vec<Item>, RunError> {
    if let Some(d) = registry.structures.get(name) {
        let report = verify_structure(d).map_err(engine)?;
        let verdict = if report.verdict { "holds" } else { "fails" };
        let mut item = Item::new(name, "structure")
            .verdict(verdict, report.verdict)
            .window(report.window_flagged);
        item = axiom_fields(&report, item);
        if let Some((check, w)) = report.first_witness() {
            item = item.text_field("witness", format!("{}: {w}", check.axiom));
        }
        return Ok(vec![item]);
    }
    if let Some(m) = registry.multis.get(name) {
        let report = verify_multi(m).map_err(engine)?;
        let verdict = if report.verdict { "holds" } else { "fails" };
        let mut item = Item::new(name, "multi")
            .verdict(verdict, report.verdict)
            .window(report.window_flagged)
            .field("distinct", FieldValue::Bool(report.distinct));
        if let Some(w) = &report.containment {
            item = item.text_field(
                "witness",
                format!(
                    "component {} is contained in component {}",
                    w.inner + 1,
                    w.outer + 1
                ),
            );
        }
        for (i, r) in report.component_reports.iter().enumerate() {
            let status = if r.verdict { "holds" } else { "fails" };
            let mut line = status.to_string();
            if let Some((check, w)) = r.first_witness() {
                line.push_str(&format!(" [{}: {w}]", check.axiom));
            }
            item = item.text_field(format!("component {}", i + 1), line);
        }
        return Ok(vec![item]);
    }
    if let Some((f, structure)) = registry.fuzzies.get(name) {
        let d = registry.structure(structure)?;
        let report = verify_fuzzy(f, d, budget).map_err(engine)?;
        let verdict = if report.verdict { "holds" } else { "fails" };
        let mut item = Item::new(name, "fuzzy")
            .verdict(verdict, report.verdict)
            .window(report.window_flagged);
        for check in &report.entries {
            let status = if check.holds { "holds" } else { "fails" };
            let mut line = status.to_string();
            if let Some(w) = &check.witness {
                line.push_str(&format!(" [{w}]"));
            }
            item = item.text_field(format!("law {}", check.law), line);
        }
        return Ok(vec![item]);
    }
    if let Some(m) = registry.maps.get(name) {
        let source = registry.structure(&m.source)?;
        let target = registry.structure(&m.target)?;
        let report = verify_map(m, source, target, budget).map_err(engine)?;
        let verdict = if report.linear { "linear" } else { "not linear" };
        let mut item = Item::new(name, "map")
            .verdict(verdict, report.linear)
            .window(report.window_flagged)
            .field("injective", FieldValue::Bool(report.injective))
            .field("surjective", FieldValue::Bool(report.surjective))
            .field("invertible", FieldValue::Bool(report.invertible));
        if let Some(idem) = report.idempotent {
            item = item.field("idempotent", FieldValue::Bool(idem));
        }
        if let Some(w) = &report.witness {
            item = item.text_field("witness", w.to_string());
        }
        return Ok(vec![item]);
    }
    Err(ResolveError::UnknownName(name.to_string()).into())
}

fn run_dim(
    name: &str,
    mode: Option<GenMode>,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    if let Some(d) = registry.structures.get(name) {
        let mode = mode.unwrap_or_else(|| GenMode::default_for(d.family()));
        let result = min_generating(d, mode, budget).map_err(engine)?;
        let item = Item::new(name, "structure")
            .verdict(format!("dimension {}", result.cardinality), true)
            .window(result.window_flagged)
            .field("dimension", FieldValue::Int(result.cardinality as i64))
            .text_field("certificate", result.certificate.name())
            .field("basis", FieldValue::List(render_elements(&result.elements)))
            .text_field("mode", mode.name());
        return Ok(vec![item]);
    }
    if let Some(m) = registry.multis.get(name) {
        let result = n_dimension(m, mode, budget).map_err(engine)?;
        let dims: Vec<String> =
            result.cardinalities.iter().map(|c| c.to_string()).collect();
        let mut item = Item::new(name, "multi")
            .verdict(format!("n-dimension ({})", dims.join(", ")), true)
            .window(result.window_flagged)
            .field("dimension", FieldValue::List(dims));
        for (i, (gens, cert)) in
            result.generators.iter().zip(&result.certificates).enumerate()
        {
            item = item.field(
                format!("component {} basis", i + 1),
                FieldValue::List(render_elements(gens)),
            );
            item = item.text_field(format!("component {} certificate", i + 1), cert.name());
        }
        return Ok(vec![item]);
    }
    Err(ResolveError::UnknownName(name.to_string()).into())
}

fn run_span(
    name: &str,
    set: &str,
    mode: Option<GenMode>,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let d = registry.structure(name)?;
    let basis = parse_set(d, set)?;
    let mode = mode.unwrap_or_else(|| GenMode::default_for(d.family()));
    let result = span(d, &basis, mode, budget).map_err(engine)?;
    let generation = is_generating(d, &basis, mode, budget).map_err(engine)?;
    let verdict = if generation.generating { "generating" } else { "not generating" };
    let mut item = Item::new(name, "structure")
        .verdict(verdict, generation.generating)
        .window(result.window_flagged || generation.window_flagged)
        .field("span", FieldValue::List(render_elements(&result.elements)))
        .text_field("mode", mode.name());
    if !generation.uncovered.is_empty() {
        item = item.field("uncovered", FieldValue::List(render_elements(&generation.uncovered)));
    }
    Ok(vec![item])
}

fn run_independent(
    name: &str,
    set: &str,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let d = registry.structure(name)?;
    let subset = parse_set(d, set)?;
    let report = is_independent(d, &subset, budget).map_err(engine)?;
    let verdict = if report.independent { "independent" } else { "dependent" };
    let mut item = Item::new(name, "structure").verdict(verdict, report.independent);
    if let Some(w) = &report.witness {
        let text = match w {
            finalg::analysis::DependenceWitness::Pairwise { x, scalar, y } => {
                format!("{x} = {scalar}.{y}")
            }
            finalg::analysis::DependenceWitness::Combination { scalars, elements, sum } => {
                let terms: Vec<String> = scalars
                    .iter()
                    .zip(elements)
                    .filter_map(|(s, e)| s.as_ref().map(|s| format!("{s}.{e}")))
                    .collect();
                format!("{} = {sum}", terms.join(" + "))
            }
        };
        item = item.text_field("witness", text);
    }
    Ok(vec![item])
}

fn run_sub(
    name: &str,
    set: &str,
    scalars: Option<&str>,
    as_family: Option<&str>,
    classify: bool,
    registry: &Registry,
) -> Result<Vec<Item>, RunError> {
    let d = registry.structure(name)?;
    let subset = parse_set(d, set)?;
    let subscalars: Option<Vec<Element>> = match scalars {
        None => None,
        Some(src) => {
            let wrapped =
                format!("structure __args {{ carrier = zn(2); ground = {src}; scalars = zn(2) }}");
            let file = parse_definition(&wrapped)?;
            let crate::parser::Block::Structure(block) = &file.blocks[0] else {
                return Err(RunError::Usage("scalar set literal".into()));
            };
            match &block.ground {
                SetExpr::All => Some(d.scalars().members().to_vec()),
                SetExpr::List(lits) => Some(
                    lits.iter()
                        .map(|l| type_literal(l, d.scalars().base()))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            }
        }
    };
    let target_family = match as_family {
        None => d.family(),
        Some(f) => Family::parse(f)
            .ok_or_else(|| RunError::Usage(format!("unknown family '{f}'")))?,
    };
    let report = check_substructure(d, &subset, target_family, subscalars.as_deref())
        .map_err(engine)?;
    let verdict = if report.verdict { "holds" } else { "fails" };
    let mut item = Item::new(name, "substructure")
        .verdict(verdict, report.verdict)
        .window(report.window_flagged)
        .text_field("target_family", target_family.name());
    item = axiom_fields(&report, item);
    if let Some((check, w)) = report.first_witness() {
        item = item.text_field("witness", format!("{}: {w}", check.axiom));
    }
    if classify {
        let labels =
            classify_substructure(d, &subset, subscalars.as_deref(), None).map_err(engine)?;
        let names: Vec<String> = labels.iter().map(|l| l.name().to_string()).collect();
        item = item.field("labels", FieldValue::List(names));
    }
    Ok(vec![item])
}

fn run_decompose(
    name: &str,
    parts: &str,
    mode: &str,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let d = registry.structure(name)?;
    let mode = DecompositionMode::parse(mode)
        .ok_or_else(|| RunError::Usage(format!("unknown decomposition mode '{mode}'")))?;
    let part_sets: Vec<Vec<Element>> = parts
        .split(';')
        .map(|chunk| parse_set(d, chunk.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = check_decomposition(d, &part_sets, mode, budget).map_err(engine)?;
    let verdict = if report.verdict { "holds" } else { "fails" };
    let mut item = Item::new(name, "decomposition")
        .verdict(verdict, report.verdict)
        .window(report.window_flagged)
        .text_field("mode", mode.name())
        .field("covers", FieldValue::Bool(report.covers))
        .field("distinct", FieldValue::Bool(report.distinct));
    if let Some(w) = &report.uncovered_witness {
        item = item.text_field("uncovered", w.to_string());
    }
    for p in &report.pairwise {
        item = item.text_field(
            format!("intersection {}&{}", p.left + 1, p.right + 1),
            format!(
                "{} elements{}",
                p.size,
                if p.exceeds_zero { ", exceeds {0}" } else { "" }
            ),
        );
    }
    Ok(vec![item])
}

fn run_simple(
    name: &str,
    kind: &str,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let d = registry.structure(name)?;
    let kind = match kind {
        "simple" => SimplicityKind::Simple,
        "pseudo_simple" => SimplicityKind::PseudoSimple,
        "strongly_simple" => SimplicityKind::StronglySimple,
        other => return Err(RunError::Usage(format!("unknown simplicity kind '{other}'"))),
    };
    let report = is_simple(d, kind, budget).map_err(engine)?;
    let (verdict, positive) = match report.verdict {
        SimplicityVerdict::Simple => (kind.name().to_string(), true),
        SimplicityVerdict::NotSimple => (format!("not {}", kind.name()), false),
        SimplicityVerdict::NotRefutedWithinBudget => {
            ("not refuted within budget".to_string(), true)
        }
    };
    let mut item = Item::new(name, "simplicity").verdict(verdict, positive);
    if let Some((sub, w)) = &report.witness {
        item = item
            .field("witness_subscalars", FieldValue::List(render_elements(sub)))
            .field("witness_subset", FieldValue::List(render_elements(w)));
    }
    if let Some(parts) = &report.decomposition {
        for (i, p) in parts.iter().enumerate() {
            item = item.field(
                format!("decomposition part {}", i + 1),
                FieldValue::List(render_elements(p)),
            );
        }
    }
    Ok(vec![item])
}

fn run_homs(
    source: &str,
    target: &str,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let v = registry.structure(source)?;
    let w = registry.structure(target)?;
    let result = enumerate_homs(v, w, budget).map_err(engine)?;
    let mut item = Item::new(format!("{source}->{target}"), "homs")
        .verdict(format!("{} linear maps", result.maps.len()), true)
        .field("count", FieldValue::Int(result.maps.len() as i64))
        .field("action_closed", FieldValue::Bool(result.action_closed));
    for m in &result.maps {
        let entries: Vec<String> =
            m.table.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
        item = item.field(m.name.clone(), FieldValue::List(entries));
    }
    Ok(vec![item])
}

fn run_project(
    map: &str,
    onto: &str,
    registry: &Registry,
    budget: &Budget,
) -> Result<Vec<Item>, RunError> {
    let m = registry.map(map)?;
    let d = registry.structure(&m.source)?;
    if m.source != m.target {
        return Err(RunError::Usage("project requires an operator (source = target)".into()));
    }
    let subset = parse_set(d, onto)?;
    let report = check_projection_onto(m, d, &subset, budget).map_err(engine)?;
    let verdict = if report.projection { "projection" } else { "not a projection" };
    let mut item = Item::new(map, "projection")
        .verdict(verdict, report.projection)
        .field("linear", FieldValue::Bool(report.linear))
        .field("range_inside", FieldValue::Bool(report.range_inside))
        .field("idempotent", FieldValue::Bool(report.idempotent));
    if let Some(w) = &report.witness {
        item = item.text_field("witness", w.to_string());
    }
    Ok(vec![item])
}
