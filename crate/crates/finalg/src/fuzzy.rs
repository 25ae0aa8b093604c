//! Exact-rational fuzzy membership overlays and the family-specific fuzzy
//! laws, checked by exhaustion.
//!
//! All membership values are exact rationals; the laws are inequalities
//! where ties matter. The action law is checked on every instance whose
//! result is not the zero vector — annihilation carries no membership
//! constraint outside the group laws, which pin eta(0) = 1 separately.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::carrier::{ArithError, Element};
use crate::structures::{
    check_substructure, verify_structure, Family, StructureDecl,
};

pub type Membership = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuzzyError {
    #[error("membership value {0} for {1} is outside [0, 1]")]
    ValueOutOfUnit(Membership, Element),
    #[error("membership table is not total: missing {0}")]
    PartialTable(Element),
    #[error("rule parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("rule does not apply to {0}")]
    RuleInapplicable(Element),
    #[error("underlying structure does not verify: {0}")]
    StructureInvalid(String),
    #[error("subset is not a substructure: {0}")]
    NotASubstructure(String),
    #[error("{0}")]
    Budget(#[from] BudgetExceeded),
}

/// Builtin membership rules from the worked examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzyRule {
    /// (sum of coordinates) / divisor, optionally reducing the sum mod n
    /// first (the listed example values force reduce-then-divide).
    CoordSumOver { divisor: i64, mod_first: Option<u64> },
    /// 1 / (sum of coordinates), with a declared value at sum zero.
    ReciprocalSum { at_zero: Membership },
    /// 1 / deg p(x), with a declared value for constants.
    ReciprocalDegree { at_constant: Membership },
    /// 1 - 1/(sum of coordinates), with eta(0) = 1.
    OneMinusReciprocal,
    /// Explicit table.
    Table(Vec<(Element, Membership)>),
}

impl FuzzyRule {
    pub fn evaluate(&self, e: &Element) -> Result<Membership, FuzzyError> {
        let value = match self {
            FuzzyRule::CoordSumOver { divisor, mod_first } => {
                if *divisor <= 0 {
                    return Err(FuzzyError::ParamOutOfRange("divisor must be positive".into()));
                }
                let mut sum: u64 = e.coords().iter().sum();
                if let Some(n) = mod_first {
                    sum %= n;
                }
                Ratio::new(sum as i64, *divisor)
            }
            FuzzyRule::ReciprocalSum { at_zero } => {
                let sum: u64 = e.coords().iter().sum();
                if sum == 0 {
                    *at_zero
                } else {
                    Ratio::new(1, sum as i64)
                }
            }
            FuzzyRule::ReciprocalDegree { at_constant } => match e.poly_degree() {
                None | Some(0) => *at_constant,
                Some(d) => Ratio::new(1, d as i64),
            },
            FuzzyRule::OneMinusReciprocal => {
                let sum: u64 = e.coords().iter().sum();
                if sum == 0 {
                    Ratio::one()
                } else {
                    Ratio::one() - Ratio::new(1, sum as i64)
                }
            }
            FuzzyRule::Table(entries) => entries
                .iter()
                .find(|(k, _)| k == e)
                .map(|(_, v)| *v)
                .ok_or_else(|| FuzzyError::PartialTable(e.clone()))?,
        };
        if value < Ratio::zero() || value > Ratio::one() {
            return Err(FuzzyError::ValueOutOfUnit(value, e.clone()));
        }
        Ok(value)
    }
}

/// A total membership map over a structure's ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyMap {
    pub structure: String,
    pub values: BTreeMap<Element, Membership>,
}

impl FuzzyMap {
    pub fn from_table(
        d: &StructureDecl,
        entries: impl IntoIterator<Item = (Element, Membership)>,
    ) -> Result<FuzzyMap, FuzzyError> {
        let values: BTreeMap<Element, Membership> = entries.into_iter().collect();
        for (e, v) in &values {
            if *v < Ratio::zero() || *v > Ratio::one() {
                return Err(FuzzyError::ValueOutOfUnit(*v, e.clone()));
            }
        }
        let map = FuzzyMap { structure: d.name().to_string(), values };
        map.validate_total(d)?;
        Ok(map)
    }

    pub fn from_rule(d: &StructureDecl, rule: &FuzzyRule) -> Result<FuzzyMap, FuzzyError> {
        let ground = d
            .ground_elements()
            .map_err(|e| FuzzyError::StructureInvalid(e.to_string()))?;
        let mut values = BTreeMap::new();
        for e in ground {
            let v = rule.evaluate(&e)?;
            values.insert(e, v);
        }
        Ok(FuzzyMap { structure: d.name().to_string(), values })
    }

    fn validate_total(&self, d: &StructureDecl) -> Result<(), FuzzyError> {
        let ground = d
            .ground_elements()
            .map_err(|e| FuzzyError::StructureInvalid(e.to_string()))?;
        for e in &ground {
            if !self.values.contains_key(e) {
                return Err(FuzzyError::PartialTable(e.clone()));
            }
        }
        Ok(())
    }

    pub fn get(&self, e: &Element) -> Option<Membership> {
        self.values.get(e).copied()
    }

    /// Pointwise minimum with another map on the same structure.
    pub fn pointwise_min(&self, other: &FuzzyMap) -> FuzzyMap {
        let values = self
            .values
            .iter()
            .map(|(e, v)| (e.clone(), (*v).min(other.values.get(e).copied().unwrap_or(*v))))
            .collect();
        FuzzyMap { structure: self.structure.clone(), values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzyLaw {
    /// eta(r.a) >= eta(a) whenever r.a is not the zero vector.
    Action,
    /// eta(a+b) >= min(eta(a), eta(b)).
    Min,
    /// eta(-a) = eta(a).
    NegationSymmetry,
    /// eta(0) = 1.
    ZeroIsOne,
}

impl FuzzyLaw {
    pub fn name(self) -> &'static str {
        match self {
            FuzzyLaw::Action => "action_law",
            FuzzyLaw::Min => "min_law",
            FuzzyLaw::NegationSymmetry => "negation_symmetry",
            FuzzyLaw::ZeroIsOne => "zero_is_one",
        }
    }

    /// The fuzzy laws a family's overlay must satisfy.
    pub fn for_family(family: Family) -> Vec<FuzzyLaw> {
        match family {
            Family::SetVs | Family::SemigroupVs | Family::GroupVs => vec![FuzzyLaw::Action],
            Family::SetLa | Family::SemigroupLa => vec![FuzzyLaw::Action, FuzzyLaw::Min],
            Family::GroupLa => vec![
                FuzzyLaw::Action,
                FuzzyLaw::Min,
                FuzzyLaw::NegationSymmetry,
                FuzzyLaw::ZeroIsOne,
            ],
        }
    }
}

impl fmt::Display for FuzzyLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyWitness {
    pub scalar: Option<Element>,
    pub elements: Vec<Element>,
    pub values: Vec<Membership>,
    pub detail: String,
}

impl fmt::Display for FuzzyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.scalar {
            parts.push(format!("s={s}"));
        }
        if !self.elements.is_empty() {
            let vs: Vec<String> = self.elements.iter().map(|v| v.to_string()).collect();
            parts.push(format!("v={}", vs.join(",")));
        }
        if !self.values.is_empty() {
            let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            parts.push(format!("eta={}", vals.join(",")));
        }
        parts.push(self.detail.clone());
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyCheck {
    pub law: FuzzyLaw,
    pub holds: bool,
    pub witness: Option<FuzzyWitness>,
    pub window_skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyReport {
    pub structure: String,
    pub family: Family,
    pub entries: Vec<FuzzyCheck>,
    pub verdict: bool,
    pub window_flagged: bool,
}

impl FuzzyReport {
    pub fn first_witness(&self) -> Option<(&FuzzyCheck, &FuzzyWitness)> {
        self.entries
            .iter()
            .find(|e| !e.holds)
            .and_then(|e| e.witness.as_ref().map(|w| (e, w)))
    }
}

/// Check the family's fuzzy laws by exhaustion with exact comparisons.
pub fn verify_fuzzy(
    f: &FuzzyMap,
    d: &StructureDecl,
    budget: &Budget,
) -> Result<FuzzyReport, FuzzyError> {
    let base = verify_structure(d).map_err(|e| FuzzyError::StructureInvalid(e.to_string()))?;
    if !base.verdict {
        let detail = base
            .first_witness()
            .map(|(c, w)| format!("{} fails: {w}", c.axiom))
            .unwrap_or_else(|| "axioms fail".into());
        return Err(FuzzyError::StructureInvalid(detail));
    }
    f.validate_total(d)?;
    verify_fuzzy_laws(f, d, &FuzzyLaw::for_family(d.family()), budget)
}

/// Check a specific law list (restrictions of semigroup overlays add the
/// min law to the family baseline).
pub fn verify_fuzzy_laws(
    f: &FuzzyMap,
    d: &StructureDecl,
    laws: &[FuzzyLaw],
    budget: &Budget,
) -> Result<FuzzyReport, FuzzyError> {
    let ground = d
        .ground_elements()
        .map_err(|e| FuzzyError::StructureInvalid(e.to_string()))?;
    let scalars = d.scalars();
    let eta = |e: &Element| -> Result<Membership, FuzzyError> {
        f.get(e).ok_or_else(|| FuzzyError::PartialTable(e.clone()))
    };

    let mut entries = Vec::new();
    for &law in laws {
        let mut holds = true;
        let mut witness = None;
        let mut skipped = 0u64;
        match law {
            FuzzyLaw::Action => {
                'action: for r in scalars.members() {
                    for a in &ground {
                        budget.charge(1)?;
                        let ra = match scalars.act(r, a, d.carrier()) {
                            Ok(x) => x,
                            Err(ArithError::WindowOverflow { .. }) => {
                                skipped += 1;
                                continue;
                            }
                            Err(_) => continue,
                        };
                        if ra.is_zero() {
                            continue; // annihilation carries no constraint
                        }
                        let lhs = eta(&ra)?;
                        let rhs = eta(a)?;
                        if lhs < rhs {
                            holds = false;
                            witness = Some(FuzzyWitness {
                                scalar: Some(r.clone()),
                                elements: vec![a.clone(), ra],
                                values: vec![lhs, rhs],
                                detail: "eta(ra) < eta(a)".into(),
                            });
                            break 'action;
                        }
                    }
                }
            }
            FuzzyLaw::Min => {
                'min: for a in &ground {
                    for b in &ground {
                        budget.charge(1)?;
                        let sum = match d.carrier().add(a, b) {
                            Ok(x) => x,
                            Err(ArithError::WindowOverflow { .. }) => {
                                skipped += 1;
                                continue;
                            }
                            Err(_) => continue,
                        };
                        let Some(lhs) = f.get(&sum) else {
                            continue; // sum outside the overlay's domain
                        };
                        let bound = eta(a)?.min(eta(b)?);
                        if lhs < bound {
                            holds = false;
                            witness = Some(FuzzyWitness {
                                scalar: None,
                                elements: vec![a.clone(), b.clone(), sum],
                                values: vec![lhs, bound],
                                detail: "eta(a+b) < min(eta(a), eta(b))".into(),
                            });
                            break 'min;
                        }
                    }
                }
            }
            FuzzyLaw::NegationSymmetry => {
                for a in &ground {
                    budget.charge(1)?;
                    let Some(neg) = d.carrier().negate(a) else { continue };
                    let Some(lhs) = f.get(&neg) else { continue };
                    let rhs = eta(a)?;
                    if lhs != rhs {
                        holds = false;
                        witness = Some(FuzzyWitness {
                            scalar: None,
                            elements: vec![a.clone(), neg],
                            values: vec![rhs, lhs],
                            detail: "eta(-a) != eta(a)".into(),
                        });
                        break;
                    }
                }
            }
            FuzzyLaw::ZeroIsOne => {
                for a in &ground {
                    budget.charge(1)?;
                    if a.is_zero() {
                        let v = eta(a)?;
                        if !v.is_one() {
                            holds = false;
                            witness = Some(FuzzyWitness {
                                scalar: None,
                                elements: vec![a.clone()],
                                values: vec![v],
                                detail: "eta(0) != 1".into(),
                            });
                            break;
                        }
                    }
                }
            }
        }
        entries.push(FuzzyCheck { law, holds, witness, window_skipped: skipped });
    }
    let verdict = entries.iter().all(|e| e.holds);
    let window_flagged =
        d.carrier().window_truncated() && entries.iter().any(|e| e.window_skipped > 0);
    Ok(FuzzyReport {
        structure: f.structure.clone(),
        family: d.family(),
        entries,
        verdict,
        window_flagged,
    })
}

/// Restrict an overlay to a substructure and re-verify (semigroup vector
/// subspaces pick up the min law on restriction).
pub fn restrict_fuzzy(
    f: &FuzzyMap,
    d: &StructureDecl,
    subset: &[Element],
    budget: &Budget,
) -> Result<(FuzzyMap, FuzzyReport), FuzzyError> {
    let sub_report = check_substructure(d, subset, d.family(), None)
        .map_err(|e| FuzzyError::NotASubstructure(e.to_string()))?;
    if !sub_report.verdict {
        let detail = sub_report
            .first_witness()
            .map(|(c, w)| format!("{} fails: {w}", c.axiom))
            .unwrap_or_else(|| "axioms fail".into());
        return Err(FuzzyError::NotASubstructure(detail));
    }
    let induced = StructureDecl::new(
        format!("{}::sub", d.name()),
        d.family(),
        d.carrier().clone(),
        crate::structures::GroundSpec::Subset(subset.to_vec()),
        d.scalars().clone(),
    )
    .map_err(|e| FuzzyError::NotASubstructure(e.to_string()))?;
    let mut values = BTreeMap::new();
    for e in subset {
        match f.get(e) {
            Some(v) => {
                values.insert(e.clone(), v);
            }
            None => return Err(FuzzyError::PartialTable(e.clone())),
        }
    }
    let restricted = FuzzyMap { structure: induced.name().to_string(), values };
    let mut laws = FuzzyLaw::for_family(d.family());
    if d.family() == Family::SemigroupVs && !laws.contains(&FuzzyLaw::Min) {
        laws.push(FuzzyLaw::Min);
    }
    let report = verify_fuzzy_laws(&restricted, &induced, &laws, budget)?;
    Ok((restricted, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Carrier, ScalarSet};
    use crate::structures::GroundSpec;

    fn example_parity_ninths() -> (StructureDecl, FuzzyMap) {
        // Triples over {0,1} with eta(xyz) = ((x+y+z) mod 2) / 9.
        let elems = vec![
            Element::mod_tuple(2, &[1, 1, 1]),
            Element::mod_tuple(2, &[1, 0, 1]),
            Element::mod_tuple(2, &[0, 1, 1]),
            Element::mod_tuple(2, &[0, 0, 0]),
            Element::mod_tuple(2, &[1, 0, 0]),
        ];
        let carrier = Carrier::explicit(elems).unwrap();
        let d = StructureDecl::new(
            "V",
            Family::SetVs,
            carrier,
            GroundSpec::All,
            ScalarSet::modular_subset(2, &[0, 1]).unwrap(),
        )
        .unwrap();
        let rule = FuzzyRule::CoordSumOver { divisor: 9, mod_first: Some(2) };
        let f = FuzzyMap::from_rule(&d, &rule).unwrap();
        (d, f)
    }

    #[test]
    fn parity_ninths_values() {
        let (_, f) = example_parity_ninths();
        assert_eq!(f.get(&Element::mod_tuple(2, &[1, 1, 1])), Some(Ratio::new(1, 9)));
        assert_eq!(f.get(&Element::mod_tuple(2, &[1, 0, 1])), Some(Ratio::zero()));
        assert_eq!(f.get(&Element::mod_tuple(2, &[0, 1, 1])), Some(Ratio::zero()));
        assert_eq!(f.get(&Element::mod_tuple(2, &[0, 0, 0])), Some(Ratio::zero()));
        assert_eq!(f.get(&Element::mod_tuple(2, &[1, 0, 0])), Some(Ratio::new(1, 9)));
    }

    #[test]
    fn parity_ninths_action_law_holds() {
        let (d, f) = example_parity_ninths();
        let report = verify_fuzzy(&f, &d, &Budget::default()).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn restriction_stays_lawful() {
        let (d, f) = example_parity_ninths();
        let w = vec![
            Element::mod_tuple(2, &[1, 1, 1]),
            Element::mod_tuple(2, &[0, 0, 0]),
            Element::mod_tuple(2, &[0, 1, 1]),
        ];
        let (restricted, report) = restrict_fuzzy(&f, &d, &w, &Budget::default()).unwrap();
        assert!(report.verdict);
        assert_eq!(restricted.get(&Element::mod_tuple(2, &[1, 1, 1])), Some(Ratio::new(1, 9)));
        assert_eq!(restricted.get(&Element::mod_tuple(2, &[0, 1, 1])), Some(Ratio::zero()));
    }

    #[test]
    fn restriction_to_non_substructure_rejected() {
        let (d, f) = example_parity_ninths();
        // No zero triple: 0.v escapes the subset.
        let w = vec![Element::mod_tuple(2, &[1, 1, 1]), Element::mod_tuple(2, &[1, 0, 0])];
        assert!(matches!(
            restrict_fuzzy(&f, &d, &w, &Budget::default()),
            Err(FuzzyError::NotASubstructure(_))
        ));
    }

    #[test]
    fn constant_one_satisfies_group_laws() {
        let d = StructureDecl::new(
            "V",
            Family::GroupLa,
            Carrier::zn_tuple(3, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(3),
        )
        .unwrap();
        let table: Vec<(Element, Membership)> = d
            .ground_elements()
            .unwrap()
            .into_iter()
            .map(|e| (e, Ratio::one()))
            .collect();
        let f = FuzzyMap::from_table(&d, table).unwrap();
        let report = verify_fuzzy(&f, &d, &Budget::default()).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn min_law_violation_has_witness() {
        let d = StructureDecl::new(
            "V",
            Family::GroupLa,
            Carrier::zn_tuple(2, 2).unwrap(),
            GroundSpec::All,
            ScalarSet::full_modular(2),
        )
        .unwrap();
        let table = vec![
            (Element::mod_tuple(2, &[0, 0]), Ratio::one()),
            (Element::mod_tuple(2, &[0, 1]), Ratio::one()),
            (Element::mod_tuple(2, &[1, 0]), Ratio::zero()),
            (Element::mod_tuple(2, &[1, 1]), Ratio::one()),
        ];
        let f = FuzzyMap::from_table(&d, table).unwrap();
        let report = verify_fuzzy(&f, &d, &Budget::default()).unwrap();
        assert!(!report.verdict);
        let (check, w) = report.first_witness().unwrap();
        assert_eq!(check.law, FuzzyLaw::Min);
        assert_eq!(w.elements[2], Element::mod_tuple(2, &[1, 0]));
    }

    #[test]
    fn value_outside_unit_rejected() {
        let rule = FuzzyRule::CoordSumOver { divisor: 2, mod_first: None };
        let e = Element::mod_tuple(7, &[3, 4, 5]);
        assert!(matches!(rule.evaluate(&e), Err(FuzzyError::ValueOutOfUnit(_, _))));
    }

    #[test]
    fn builtin_values() {
        let sum_rule = FuzzyRule::CoordSumOver { divisor: 50, mod_first: None };
        assert_eq!(
            sum_rule.evaluate(&Element::nat_tuple(&[1, 3, 5])).unwrap(),
            Ratio::new(9, 50)
        );
        let deg_rule = FuzzyRule::ReciprocalDegree { at_constant: Ratio::one() };
        assert_eq!(
            deg_rule.evaluate(&Element::mod_poly(5, 4, &[1, 0, 0, 0, 2])).unwrap(),
            Ratio::new(1, 4)
        );
        assert_eq!(deg_rule.evaluate(&Element::mod_poly(5, 4, &[3])).unwrap(), Ratio::one());
        let omr = FuzzyRule::OneMinusReciprocal;
        assert_eq!(omr.evaluate(&Element::nat(0)).unwrap(), Ratio::one());
        assert_eq!(omr.evaluate(&Element::nat(4)).unwrap(), Ratio::new(3, 4));
        let recip = FuzzyRule::ReciprocalSum { at_zero: Ratio::one() };
        assert_eq!(recip.evaluate(&Element::nat(5)).unwrap(), Ratio::new(1, 5));
    }

    #[test]
    fn pointwise_min_of_lawful_maps_is_lawful() {
        let (d, f) = example_parity_ninths();
        let table: Vec<(Element, Membership)> = d
            .ground_elements()
            .unwrap()
            .into_iter()
            .map(|e| (e, Ratio::new(1, 2)))
            .collect();
        let g = FuzzyMap::from_table(&d, table).unwrap();
        assert!(verify_fuzzy(&g, &d, &Budget::default()).unwrap().verdict);
        let m = f.pointwise_min(&g);
        assert!(verify_fuzzy(&m, &d, &Budget::default()).unwrap().verdict);
    }
}
