//! Resolution of parsed definitions into engine values: element typing
//! against carriers, scalar-set assembly, rule expansion, and the name
//! registry the commands dispatch against.

use std::collections::BTreeMap;

use num_rational::Ratio;
use thiserror::Error;

use finalg::carrier::{Action, Carrier, CarrierKind, Element, ScalarAddition, ScalarSet};
use finalg::fuzzy::{FuzzyMap, FuzzyRule};
use finalg::maps::{LinearMap, MapRule};
use finalg::multi::{MultiStructure, ScalarMode};
use finalg::structures::{Family, GroundSpec, StructureDecl};

use crate::parser::{
    ActionExpr, Block, CarrierExpr, DefinitionFile, FuzzyRuleExpr, Literal, MapRuleExpr,
    ScalarsExpr, SetExpr,
};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("'{0}' is not a {1}")]
    WrongKind(String, &'static str),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("unknown scalar mode '{0}'")]
    UnknownScalarMode(String),
    #[error("literal {0} does not fit carrier {1}")]
    LiteralShape(String, String),
    #[error("natural {0} exceeds the window bound {1}")]
    OutOfWindow(u64, u64),
    #[error("{0}")]
    Engine(String),
}

fn engine<E: std::fmt::Display>(e: E) -> ResolveError {
    ResolveError::Engine(e.to_string())
}

/// Type a literal against a carrier.
pub fn type_literal(lit: &Literal, carrier: &Carrier) -> Result<Element, ResolveError> {
    let fail = || ResolveError::LiteralShape(format!("{lit}"), format!("{:?}", carrier.kind()));
    let elem = match (carrier.kind(), lit) {
        (CarrierKind::Zn(n), Literal::Int(v)) => Element::mod_scalar(*n, *v),
        (CarrierKind::ZnTuple(n, k), Literal::Tuple(cs)) if cs.len() == *k => {
            Element::mod_tuple(*n, cs)
        }
        (CarrierKind::ZnMatrix(n, r, c), Literal::Matrix(rows))
            if rows.len() == *r && rows.iter().all(|row| row.len() == *c) =>
        {
            let coords: Vec<u64> = rows.iter().flatten().copied().collect();
            Element::mod_matrix(*n, *r, *c, &coords)
        }
        (CarrierKind::ZnPoly(n, dmax), Literal::Poly(cs)) if cs.len() <= dmax + 1 => {
            Element::mod_poly(*n, *dmax, cs)
        }
        (CarrierKind::ZnPoly(n, dmax), Literal::Int(v)) => Element::mod_poly(*n, *dmax, &[*v]),
        (CarrierKind::NatWindow(b), Literal::Int(v)) => {
            if v > b {
                return Err(ResolveError::OutOfWindow(*v, *b));
            }
            Element::nat(*v)
        }
        (CarrierKind::Explicit(_), _) => {
            // Try each plausible shape present in the carrier.
            let candidates = explicit_candidates(lit, carrier);
            candidates.into_iter().find(|e| carrier.contains(e)).ok_or_else(fail)?
        }
        _ => return Err(fail()),
    };
    Ok(elem)
}

fn explicit_candidates(lit: &Literal, carrier: &Carrier) -> Vec<Element> {
    let CarrierKind::Explicit(list) = carrier.kind() else { return vec![] };
    let mut out = Vec::new();
    for sample in list {
        match (lit, sample) {
            (Literal::Int(v), Element::ModScalar { modulus, .. }) => {
                out.push(Element::mod_scalar(*modulus, *v));
            }
            (Literal::Int(v), Element::Nat { coords }) if coords.len() == 1 => {
                out.push(Element::nat(*v));
            }
            (Literal::Tuple(cs), Element::ModTuple { modulus, coords })
                if cs.len() == coords.len() =>
            {
                out.push(Element::mod_tuple(*modulus, cs));
            }
            (Literal::Tuple(cs), Element::Nat { coords }) if cs.len() == coords.len() => {
                out.push(Element::nat_tuple(cs));
            }
            (Literal::Matrix(rows), Element::ModMatrix { modulus, rows: r, cols: c, .. })
                if rows.len() == *r && rows.iter().all(|row| row.len() == *c) =>
            {
                let coords: Vec<u64> = rows.iter().flatten().copied().collect();
                out.push(Element::mod_matrix(*modulus, *r, *c, &coords));
            }
            (Literal::Poly(cs), Element::ModPoly { modulus, coeffs })
                if cs.len() <= coeffs.len() =>
            {
                out.push(Element::mod_poly(*modulus, coeffs.len() - 1, cs));
            }
            _ => {}
        }
    }
    out
}

/// Build a carrier from its expression. Literals inside explicit carriers
/// type against their own written shape.
pub fn build_carrier(expr: &CarrierExpr) -> Result<Carrier, ResolveError> {
    Ok(match expr {
        CarrierExpr::Zn(n) => Carrier::zn(*n).map_err(engine)?,
        CarrierExpr::ZnTuple(n, k) => Carrier::zn_tuple(*n, *k).map_err(engine)?,
        CarrierExpr::ZnMatrix(n, r, c) => Carrier::zn_matrix(*n, *r, *c).map_err(engine)?,
        CarrierExpr::ZnPoly(n, d) => Carrier::zn_poly(*n, *d).map_err(engine)?,
        CarrierExpr::NatWindow(b) => Carrier::nat_window(*b),
        CarrierExpr::ExplicitMod(n, lits) => {
            let mut elems = Vec::new();
            for lit in lits {
                elems.push(match lit {
                    Literal::Int(v) => Element::mod_scalar(*n, *v),
                    Literal::Tuple(cs) => Element::mod_tuple(*n, cs),
                    Literal::Matrix(rows) => {
                        let r = rows.len();
                        let c = rows.first().map(|row| row.len()).unwrap_or(0);
                        let coords: Vec<u64> = rows.iter().flatten().copied().collect();
                        Element::mod_matrix(*n, r, c, &coords)
                    }
                    Literal::Poly(cs) => Element::mod_poly(*n, cs.len().max(1) - 1, cs),
                });
            }
            Carrier::explicit(elems).map_err(engine)?
        }
        CarrierExpr::ExplicitNat(lits) => {
            let mut elems = Vec::new();
            for lit in lits {
                elems.push(match lit {
                    Literal::Int(v) => Element::nat(*v),
                    Literal::Tuple(cs) => Element::nat_tuple(cs),
                    other => {
                        return Err(ResolveError::LiteralShape(
                            format!("{other}"),
                            "explicit nat".into(),
                        ))
                    }
                });
            }
            Carrier::explicit(elems).map_err(engine)?
        }
    })
}

fn default_action(base: &Carrier) -> Action {
    match base.kind() {
        CarrierKind::NatWindow(_) => Action::NatMulWindow,
        CarrierKind::Explicit(list) if matches!(list[0], Element::Nat { .. }) => {
            Action::NatMulWindow
        }
        _ => Action::ModMul,
    }
}

fn build_scalars(
    expr: &ScalarsExpr,
    action: Option<&ActionExpr>,
    zero: Option<&Literal>,
    ground_carrier: &Carrier,
) -> Result<ScalarSet, ResolveError> {
    let (base, members, addition) = match expr {
        ScalarsExpr::Carrier(cexpr) => {
            let base = build_carrier(cexpr)?;
            let members: Vec<Element> = base.enumerate().collect();
            (base, members, ScalarAddition::Base)
        }
        ScalarsExpr::SubsetOf(lits, cexpr) => {
            let base = build_carrier(cexpr)?;
            let members = lits
                .iter()
                .map(|l| type_literal(l, &base))
                .collect::<Result<Vec<_>, _>>()?;
            (base, members, ScalarAddition::Base)
        }
        ScalarsExpr::Table(entries) => {
            let mut values: Vec<u64> = Vec::new();
            for (a, b, c) in entries {
                for v in [a, b, c] {
                    if !values.contains(v) {
                        values.push(*v);
                    }
                }
            }
            let bound = values.iter().copied().max().unwrap_or(0);
            let base = Carrier::nat_window(bound);
            let members: Vec<Element> = values.iter().map(|&v| Element::nat(v)).collect();
            let table: Vec<((Element, Element), Element)> = entries
                .iter()
                .map(|(a, b, c)| ((Element::nat(*a), Element::nat(*b)), Element::nat(*c)))
                .collect();
            (base, members, ScalarAddition::Table(table))
        }
    };
    let action = match action {
        None => default_action(&base),
        Some(ActionExpr::ModMul) => Action::ModMul,
        Some(ActionExpr::NatMul) => Action::NatMulWindow,
        Some(ActionExpr::Table(entries)) => {
            let mut table = Vec::new();
            for (g, v, w) in entries {
                let g = type_literal(g, &base)?;
                let v = type_literal(v, ground_carrier)?;
                let w = type_literal(w, ground_carrier)?;
                table.push(((g, v), w));
            }
            Action::Table(table)
        }
    };
    let zero_member = match zero {
        Some(lit) => Some(type_literal(lit, &base)?),
        None => {
            // Base addition: the zero element when listed; table addition:
            // the detected identity.
            match &addition {
                ScalarAddition::Base => {
                    members.iter().find(|m| m.is_zero()).cloned()
                }
                ScalarAddition::Table(table) => members
                    .iter()
                    .find(|z| {
                        members.iter().all(|s| {
                            table
                                .iter()
                                .find(|((a, b), _)| a == *z && b == s)
                                .map(|(_, r)| r == s)
                                .unwrap_or(false)
                        })
                    })
                    .cloned(),
            }
        }
    };
    ScalarSet::new(base, members, addition, zero_member, action).map_err(engine)
}

/// Fully resolved definitions, keyed by name.
#[derive(Default)]
pub struct Registry {
    pub structures: BTreeMap<String, StructureDecl>,
    pub maps: BTreeMap<String, LinearMap>,
    pub fuzzies: BTreeMap<String, (FuzzyMap, String)>,
    pub multis: BTreeMap<String, MultiStructure>,
    /// Declaration order, for deterministic listings.
    pub order: Vec<(String, &'static str)>,
}

impl Registry {
    pub fn structure(&self, name: &str) -> Result<&StructureDecl, ResolveError> {
        self.structures
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))
    }

    pub fn multi(&self, name: &str) -> Result<&MultiStructure, ResolveError> {
        self.multis
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&LinearMap, ResolveError> {
        self.maps
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))
    }
}

/// Resolve a parsed file: names must be unique; forward references among
/// blocks resolve after the full parse.
pub fn resolve(file: &DefinitionFile) -> Result<Registry, ResolveError> {
    let mut registry = Registry::default();
    let mut seen: Vec<&str> = Vec::new();
    for block in &file.blocks {
        if seen.contains(&block.name()) {
            return Err(ResolveError::DuplicateName(block.name().to_string()));
        }
        seen.push(block.name());
    }

    // Structures first; they are the referents of everything else.
    for block in &file.blocks {
        if let Block::Structure(b) = block {
            let family = Family::parse(&b.family)
                .ok_or_else(|| ResolveError::UnknownFamily(b.family.clone()))?;
            let carrier = build_carrier(&b.carrier)?;
            let ground = match &b.ground {
                SetExpr::All => GroundSpec::All,
                SetExpr::List(lits) => {
                    let elems = lits
                        .iter()
                        .map(|l| type_literal(l, &carrier))
                        .collect::<Result<Vec<_>, _>>()?;
                    GroundSpec::Subset(elems)
                }
            };
            let scalars = build_scalars(&b.scalars, b.action.as_ref(), b.zero.as_ref(), &carrier)?;
            let decl = StructureDecl::new(b.name.clone(), family, carrier, ground, scalars)
                .map_err(engine)?;
            registry.structures.insert(b.name.clone(), decl);
            registry.order.push((b.name.clone(), "structure"));
        }
    }

    for block in &file.blocks {
        match block {
            Block::Structure(_) => {}
            Block::Map(b) => {
                let source = registry.structure(&b.source)?;
                let target = registry.structure(&b.target)?;
                let rule = match &b.rule {
                    MapRuleExpr::Permute(ps) => {
                        // 1-based positions in files.
                        let zero_based: Vec<usize> =
                            ps.iter().map(|p| p.saturating_sub(1)).collect();
                        MapRule::Permute(zero_based)
                    }
                    MapRuleExpr::Project(ps) => {
                        let zero_based: Vec<usize> =
                            ps.iter().map(|p| p.saturating_sub(1)).collect();
                        MapRule::Project(zero_based)
                    }
                    MapRuleExpr::Scale(c) => MapRule::Scale(*c),
                    MapRuleExpr::Table(entries) => {
                        let mut table = Vec::new();
                        for (v, w) in entries {
                            let v = type_literal(v, source.carrier())?;
                            let w = type_literal(w, target.carrier())?;
                            table.push((v, w));
                        }
                        MapRule::Table(table)
                    }
                };
                let map = LinearMap::from_rule(b.name.clone(), source, target, &rule)
                    .map_err(engine)?;
                registry.maps.insert(b.name.clone(), map);
                registry.order.push((b.name.clone(), "map"));
            }
            Block::Fuzzy(b) => {
                let structure = registry.structure(&b.structure)?;
                let rule = match &b.rule {
                    FuzzyRuleExpr::CoordSumOver { divisor, mod_first } => FuzzyRule::CoordSumOver {
                        divisor: *divisor as i64,
                        mod_first: *mod_first,
                    },
                    FuzzyRuleExpr::ReciprocalSum { at_zero } => FuzzyRule::ReciprocalSum {
                        at_zero: Ratio::new(at_zero.0, at_zero.1),
                    },
                    FuzzyRuleExpr::ReciprocalDegree { at_constant } => {
                        FuzzyRule::ReciprocalDegree {
                            at_constant: Ratio::new(at_constant.0, at_constant.1),
                        }
                    }
                    FuzzyRuleExpr::OneMinusReciprocal => FuzzyRule::OneMinusReciprocal,
                    FuzzyRuleExpr::Table(entries) => {
                        let mut table = Vec::new();
                        for (v, (n, d)) in entries {
                            let v = type_literal(v, structure.carrier())?;
                            table.push((v, Ratio::new(*n, *d)));
                        }
                        FuzzyRule::Table(table)
                    }
                };
                let map = FuzzyMap::from_rule(structure, &rule).map_err(engine)?;
                registry.fuzzies.insert(b.name.clone(), (map, b.structure.clone()));
                registry.order.push((b.name.clone(), "fuzzy"));
            }
            Block::Multi(b) => {
                let mode = ScalarMode::parse(&b.scalar_mode)
                    .ok_or_else(|| ResolveError::UnknownScalarMode(b.scalar_mode.clone()))?;
                let components = b
                    .components
                    .iter()
                    .map(|n| registry.structure(n).cloned())
                    .collect::<Result<Vec<_>, _>>()?;
                let multi = MultiStructure::new(b.name.clone(), components, mode)
                    .map_err(engine)?;
                registry.multis.insert(b.name.clone(), multi);
                registry.order.push((b.name.clone(), "multi"));
            }
        }
    }
    Ok(registry)
}
