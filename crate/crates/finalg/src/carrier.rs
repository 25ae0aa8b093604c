//! Ground-value domains: elements, carriers, scalar sets and the scalar action.
//!
//! Everything upstream (structure verification, generation, maps, fuzzy
//! overlays) manipulates values only through this module. All values are
//! immutable after construction.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A single ground value. The shape tag (including modulus and dimensions)
/// is part of the value: a 2x2 matrix over Z6 and a 4-tuple over Z6 with the
/// same coordinates are distinct elements.
///
/// The derived `Ord` is lexicographic on (shape, modulus, dims, coordinates)
/// and agrees with [`Element::canonical_key`] and with carrier enumeration
/// order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    ModScalar { modulus: u64, value: u64 },
    ModTuple { modulus: u64, coords: Vec<u64> },
    ModMatrix { modulus: u64, rows: usize, cols: usize, coords: Vec<u64> },
    /// Coefficients ascending by degree, fixed length dmax+1.
    ModPoly { modulus: u64, coeffs: Vec<u64> },
    /// Bounded naturals; a single coordinate is a scalar, several form a tuple.
    /// The window bound lives in the containing carrier.
    Nat { coords: Vec<u64> },
}

impl Element {
    pub fn mod_scalar(modulus: u64, value: u64) -> Element {
        Element::ModScalar { modulus, value: value % modulus }
    }

    pub fn mod_tuple(modulus: u64, coords: &[u64]) -> Element {
        Element::ModTuple { modulus, coords: coords.iter().map(|c| c % modulus).collect() }
    }

    pub fn mod_matrix(modulus: u64, rows: usize, cols: usize, coords: &[u64]) -> Element {
        assert_eq!(coords.len(), rows * cols, "matrix coordinate count");
        Element::ModMatrix {
            modulus,
            rows,
            cols,
            coords: coords.iter().map(|c| c % modulus).collect(),
        }
    }

    /// Polynomial with coefficients ascending by degree, padded to dmax+1.
    pub fn mod_poly(modulus: u64, dmax: usize, coeffs: &[u64]) -> Element {
        assert!(coeffs.len() <= dmax + 1, "degree exceeds carrier bound");
        let mut cs: Vec<u64> = coeffs.iter().map(|c| c % modulus).collect();
        cs.resize(dmax + 1, 0);
        Element::ModPoly { modulus, coeffs: cs }
    }

    pub fn nat(value: u64) -> Element {
        Element::Nat { coords: vec![value] }
    }

    pub fn nat_tuple(coords: &[u64]) -> Element {
        assert!(!coords.is_empty());
        Element::Nat { coords: coords.to_vec() }
    }

    pub fn coords(&self) -> &[u64] {
        match self {
            Element::ModScalar { value, .. } => std::slice::from_ref(value),
            Element::ModTuple { coords, .. } => coords,
            Element::ModMatrix { coords, .. } => coords,
            Element::ModPoly { coeffs, .. } => coeffs,
            Element::Nat { coords } => coords,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Element::ModScalar { modulus, .. }
            | Element::ModTuple { modulus, .. }
            | Element::ModMatrix { modulus, .. }
            | Element::ModPoly { modulus, .. } => Some(*modulus),
            Element::Nat { .. } => None,
        }
    }

    /// The integer a scalar-shaped element multiplies by under `mod_mul`
    /// and `nat_mul_window`.
    pub fn scalar_value(&self) -> Option<u64> {
        match self {
            Element::ModScalar { value, .. } => Some(*value),
            Element::Nat { coords } if coords.len() == 1 => Some(coords[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    /// The zero element of this element's shape.
    pub fn zero_like(&self) -> Element {
        let mut z = self.clone();
        match &mut z {
            Element::ModScalar { value, .. } => *value = 0,
            Element::ModTuple { coords, .. }
            | Element::ModMatrix { coords, .. }
            | Element::Nat { coords } => coords.iter_mut().for_each(|c| *c = 0),
            Element::ModPoly { coeffs, .. } => coeffs.iter_mut().for_each(|c| *c = 0),
        }
        z
    }

    /// Same shape tag, modulus and dimensions (coordinates may differ).
    pub fn shape_eq(&self, other: &Element) -> bool {
        match (self, other) {
            (
                Element::ModScalar { modulus: m1, .. },
                Element::ModScalar { modulus: m2, .. },
            ) => m1 == m2,
            (
                Element::ModTuple { modulus: m1, coords: c1 },
                Element::ModTuple { modulus: m2, coords: c2 },
            ) => m1 == m2 && c1.len() == c2.len(),
            (
                Element::ModMatrix { modulus: m1, rows: r1, cols: k1, .. },
                Element::ModMatrix { modulus: m2, rows: r2, cols: k2, .. },
            ) => m1 == m2 && r1 == r2 && k1 == k2,
            (
                Element::ModPoly { modulus: m1, coeffs: c1 },
                Element::ModPoly { modulus: m2, coeffs: c2 },
            ) => m1 == m2 && c1.len() == c2.len(),
            (Element::Nat { coords: c1 }, Element::Nat { coords: c2 }) => c1.len() == c2.len(),
            _ => false,
        }
    }

    /// Degree of a polynomial element; `None` for the zero polynomial.
    pub fn poly_degree(&self) -> Option<usize> {
        match self {
            Element::ModPoly { coeffs, .. } => coeffs.iter().rposition(|&c| c != 0),
            _ => None,
        }
    }

    /// Injective byte encoding, order-compatible with `Ord` and with
    /// carrier enumeration. Used for deterministic tie-breaking.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(8 * self.coords().len() + 32);
        let (tag, header): (u8, Vec<u64>) = match self {
            Element::ModScalar { modulus, .. } => (0, vec![*modulus]),
            Element::ModTuple { modulus, .. } => (1, vec![*modulus]),
            Element::ModMatrix { modulus, rows, cols, .. } => {
                (2, vec![*modulus, *rows as u64, *cols as u64])
            }
            Element::ModPoly { modulus, .. } => (3, vec![*modulus]),
            Element::Nat { .. } => (4, vec![]),
        };
        key.push(tag);
        for h in header {
            key.extend_from_slice(&h.to_be_bytes());
        }
        for c in self.coords() {
            key.extend_from_slice(&c.to_be_bytes());
        }
        key
    }

    fn with_coords(&self, coords: Vec<u64>) -> Element {
        let mut e = self.clone();
        match &mut e {
            Element::ModScalar { value, .. } => *value = coords[0],
            Element::ModTuple { coords: c, .. }
            | Element::ModMatrix { coords: c, .. }
            | Element::Nat { coords: c } => *c = coords,
            Element::ModPoly { coeffs, .. } => *coeffs = coords,
        }
        e
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::ModScalar { value, .. } => write!(f, "{value}"),
            Element::ModTuple { coords, .. } => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::ModMatrix { rows, cols, coords, .. } => {
                let mut out = String::from("[");
                for r in 0..*rows {
                    if r > 0 {
                        out.push(',');
                    }
                    out.push('[');
                    for c in 0..*cols {
                        if c > 0 {
                            out.push(',');
                        }
                        out.push_str(&coords[r * cols + c].to_string());
                    }
                    out.push(']');
                }
                out.push(']');
                write!(f, "{out}")
            }
            Element::ModPoly { coeffs, .. } => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly({})", parts.join(","))
            }
            Element::Nat { coords } => {
                if coords.len() == 1 {
                    write!(f, "{}", coords[0])
                } else {
                    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                    write!(f, "({})", parts.join(","))
                }
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarrierError {
    #[error("explicit carrier contains duplicate element {0}")]
    DuplicateElement(Element),
    #[error("explicit carrier must be nonempty")]
    EmptyExplicit,
    #[error("carrier parameters overflow the cardinality counter")]
    CardinalityOverflow,
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("carrier dimensions must be at least 1")]
    BadDimensions,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("operands have incompatible shapes: {0} vs {1}")]
    ShapeMismatch(Element, Element),
    #[error("natural arithmetic escapes the window bound {bound}")]
    WindowOverflow { bound: u64 },
    #[error("carrier has no addition for these elements")]
    NonAdditiveCarrier,
    #[error("scalar {0} has no single multiplier value")]
    NotAScalar(Element),
    #[error("action/addition table has no entry for ({0}, {1})")]
    MissingTableEntry(Element, Element),
    #[error("action {action:?} does not apply to {value}")]
    IncompatibleAction { action: ActionKind, value: Element },
}

/// A finite (or window-truncated) domain of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierKind {
    Zn(u64),
    ZnTuple(u64, usize),
    ZnMatrix(u64, usize, usize),
    ZnPoly(u64, usize),
    NatWindow(u64),
    Explicit(Vec<Element>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    kind: CarrierKind,
    cardinality: u128,
    /// For `NatWindow` the declared bound; for explicit carriers holding
    /// nat elements, the largest coordinate listed (the implied window).
    nat_bound: Option<u64>,
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

impl Carrier {
    pub fn zn(n: u64) -> Result<Carrier, CarrierError> {
        if n == 0 {
            return Err(CarrierError::BadModulus);
        }
        Ok(Carrier { kind: CarrierKind::Zn(n), cardinality: n as u128, nat_bound: None })
    }

    pub fn zn_tuple(n: u64, k: usize) -> Result<Carrier, CarrierError> {
        if n == 0 {
            return Err(CarrierError::BadModulus);
        }
        if k == 0 {
            return Err(CarrierError::BadDimensions);
        }
        let card = checked_pow(n as u128, k as u32).ok_or(CarrierError::CardinalityOverflow)?;
        Ok(Carrier { kind: CarrierKind::ZnTuple(n, k), cardinality: card, nat_bound: None })
    }

    pub fn zn_matrix(n: u64, r: usize, c: usize) -> Result<Carrier, CarrierError> {
        if n == 0 {
            return Err(CarrierError::BadModulus);
        }
        if r == 0 || c == 0 {
            return Err(CarrierError::BadDimensions);
        }
        let card =
            checked_pow(n as u128, (r * c) as u32).ok_or(CarrierError::CardinalityOverflow)?;
        Ok(Carrier { kind: CarrierKind::ZnMatrix(n, r, c), cardinality: card, nat_bound: None })
    }

    pub fn zn_poly(n: u64, dmax: usize) -> Result<Carrier, CarrierError> {
        if n == 0 {
            return Err(CarrierError::BadModulus);
        }
        let card =
            checked_pow(n as u128, (dmax + 1) as u32).ok_or(CarrierError::CardinalityOverflow)?;
        Ok(Carrier { kind: CarrierKind::ZnPoly(n, dmax), cardinality: card, nat_bound: None })
    }

    pub fn nat_window(bound: u64) -> Carrier {
        Carrier {
            kind: CarrierKind::NatWindow(bound),
            cardinality: bound as u128 + 1,
            nat_bound: Some(bound),
        }
    }

    /// Explicit list; duplicates rejected, elements stored in canonical order.
    pub fn explicit(elements: Vec<Element>) -> Result<Carrier, CarrierError> {
        if elements.is_empty() {
            return Err(CarrierError::EmptyExplicit);
        }
        let mut sorted = elements;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(CarrierError::DuplicateElement(w[0].clone()));
            }
        }
        let nat_bound = sorted
            .iter()
            .filter(|e| matches!(e, Element::Nat { .. }))
            .flat_map(|e| e.coords().iter().copied())
            .max();
        let cardinality = sorted.len() as u128;
        Ok(Carrier { kind: CarrierKind::Explicit(sorted), cardinality, nat_bound })
    }

    pub fn kind(&self) -> &CarrierKind {
        &self.kind
    }

    pub fn cardinality(&self) -> u128 {
        self.cardinality
    }

    /// True when verdicts over this carrier are only valid on a window.
    pub fn window_truncated(&self) -> bool {
        match &self.kind {
            CarrierKind::NatWindow(_) => true,
            CarrierKind::Explicit(_) => self.nat_bound.is_some(),
            _ => false,
        }
    }

    pub fn nat_bound(&self) -> Option<u64> {
        self.nat_bound
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (&self.kind, e) {
            (CarrierKind::Zn(n), Element::ModScalar { modulus, value }) => {
                modulus == n && value < n
            }
            (CarrierKind::ZnTuple(n, k), Element::ModTuple { modulus, coords }) => {
                modulus == n && coords.len() == *k && coords.iter().all(|c| c < n)
            }
            (
                CarrierKind::ZnMatrix(n, r, c),
                Element::ModMatrix { modulus, rows, cols, coords },
            ) => modulus == n && rows == r && cols == c && coords.iter().all(|x| x < n),
            (CarrierKind::ZnPoly(n, dmax), Element::ModPoly { modulus, coeffs }) => {
                modulus == n && coeffs.len() == dmax + 1 && coeffs.iter().all(|c| c < n)
            }
            (CarrierKind::NatWindow(b), Element::Nat { coords }) => {
                coords.len() == 1 && coords[0] <= *b
            }
            (CarrierKind::Explicit(list), _) => list.binary_search(e).is_ok(),
            _ => false,
        }
    }

    /// All elements exactly once, in canonical (lexicographic) order.
    /// Callers are responsible for bounding usage on large carriers.
    pub fn enumerate(&self) -> CarrierIter<'_> {
        CarrierIter { carrier: self, next_index: 0 }
    }

    /// Convenience collector; panics if the carrier exceeds `cap` elements.
    pub fn elements_capped(&self, cap: u128) -> Vec<Element> {
        assert!(
            self.cardinality <= cap,
            "carrier with {} elements exceeds enumeration cap {cap}",
            self.cardinality
        );
        self.enumerate().collect()
    }

    fn template(&self) -> Option<Element> {
        match &self.kind {
            CarrierKind::Zn(n) => Some(Element::ModScalar { modulus: *n, value: 0 }),
            CarrierKind::ZnTuple(n, k) => {
                Some(Element::ModTuple { modulus: *n, coords: vec![0; *k] })
            }
            CarrierKind::ZnMatrix(n, r, c) => Some(Element::ModMatrix {
                modulus: *n,
                rows: *r,
                cols: *c,
                coords: vec![0; r * c],
            }),
            CarrierKind::ZnPoly(n, dmax) => {
                Some(Element::ModPoly { modulus: *n, coeffs: vec![0; dmax + 1] })
            }
            CarrierKind::NatWindow(_) => Some(Element::Nat { coords: vec![0] }),
            CarrierKind::Explicit(_) => None,
        }
    }

    fn radix(&self) -> u64 {
        match &self.kind {
            CarrierKind::Zn(n)
            | CarrierKind::ZnTuple(n, _)
            | CarrierKind::ZnMatrix(n, _, _)
            | CarrierKind::ZnPoly(n, _) => *n,
            CarrierKind::NatWindow(b) => b + 1,
            CarrierKind::Explicit(_) => 0,
        }
    }

    /// The additive identity, when one exists in the carrier.
    pub fn zero(&self) -> Option<Element> {
        match &self.kind {
            CarrierKind::Explicit(list) => list.iter().find(|e| e.is_zero()).cloned(),
            _ => self.template(),
        }
    }

    /// Whether addition is total on this carrier (window overflow aside).
    pub fn is_additive(&self) -> bool {
        match &self.kind {
            CarrierKind::Explicit(list) => {
                let first = &list[0];
                list.iter().all(|e| e.shape_eq(first))
            }
            _ => true,
        }
    }

    /// Ambient addition. Modular shapes add componentwise mod n; naturals add
    /// with window-overflow detection. The result may fall outside an
    /// explicit carrier's list; membership is the caller's concern.
    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, ArithError> {
        if !a.shape_eq(b) {
            return if matches!(self.kind, CarrierKind::Explicit(_)) {
                Err(ArithError::NonAdditiveCarrier)
            } else {
                Err(ArithError::ShapeMismatch(a.clone(), b.clone()))
            };
        }
        match a {
            Element::Nat { .. } => {
                let bound = self.nat_bound.unwrap_or(u64::MAX);
                let mut coords = Vec::with_capacity(a.coords().len());
                for (x, y) in a.coords().iter().zip(b.coords()) {
                    let s = x.checked_add(*y).ok_or(ArithError::WindowOverflow { bound })?;
                    if s > bound {
                        return Err(ArithError::WindowOverflow { bound });
                    }
                    coords.push(s);
                }
                Ok(a.with_coords(coords))
            }
            _ => {
                let n = a.modulus().expect("modular element");
                let coords = a
                    .coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(x, y)| ((*x as u128 + *y as u128) % n as u128) as u64)
                    .collect();
                Ok(a.with_coords(coords))
            }
        }
    }

    /// Additive inverse; `None` for naturals other than zero.
    pub fn negate(&self, a: &Element) -> Option<Element> {
        match a {
            Element::Nat { .. } => a.is_zero().then(|| a.clone()),
            _ => {
                let n = a.modulus().expect("modular element");
                let coords = a.coords().iter().map(|&c| (n - c) % n).collect();
                Some(a.with_coords(coords))
            }
        }
    }
}

pub struct CarrierIter<'a> {
    carrier: &'a Carrier,
    next_index: u128,
}

impl Iterator for CarrierIter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next_index >= self.carrier.cardinality {
            return None;
        }
        let i = self.next_index;
        self.next_index += 1;
        match &self.carrier.kind {
            CarrierKind::Explicit(list) => Some(list[i as usize].clone()),
            _ => {
                let template = self.carrier.template().expect("parametric carrier");
                let radix = self.carrier.radix() as u128;
                let width = template.coords().len();
                let mut coords = vec![0u64; width];
                let mut rem = i;
                // Last coordinate varies fastest: lexicographic order.
                for slot in (0..width).rev() {
                    coords[slot] = (rem % radix) as u64;
                    rem /= radix;
                }
                Some(template.with_coords(coords))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    ModMul,
    NatMulWindow,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Multiply every coordinate of the target by the scalar's integer
    /// value, reduced into the target's modulus.
    ModMul,
    /// Natural multiplication with overflow detection against the target
    /// carrier's window.
    NatMulWindow,
    /// Explicit lookup table (g, v) -> w.
    Table(Vec<((Element, Element), Element)>),
}

impl Action {
    pub fn kind(&self) -> ActionKind {
        match self {
            Action::ModMul => ActionKind::ModMul,
            Action::NatMulWindow => ActionKind::NatMulWindow,
            Action::Table(_) => ActionKind::Table,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarAddition {
    /// The base carrier's own addition.
    Base,
    /// An explicit Cayley table over the members.
    Table(Vec<((Element, Element), Element)>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarSetError {
    #[error("scalar member {0} is not in the base carrier")]
    MemberNotInBase(Element),
    #[error("scalar members contain duplicates")]
    DuplicateMember,
    #[error("scalar members must be nonempty")]
    Empty,
    #[error("Cayley table is not total: missing {0} + {1}")]
    TableNotTotal(Element, Element),
    #[error("Cayley table escapes the member set at {0} + {1} = {2}")]
    TableNotClosed(Element, Element, Element),
    #[error("declared zero member {0} is not an additive identity")]
    BadZeroMember(Element),
    #[error("zero member {0} is not among the members")]
    ZeroNotMember(Element),
}

/// The scalar side of a structure: a subset of a base carrier, an addition
/// on it, an optional distinguished zero, and the action on ground values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSet {
    base: Carrier,
    members: Vec<Element>,
    addition: ScalarAddition,
    zero_member: Option<Element>,
    action: Action,
}

impl ScalarSet {
    pub fn new(
        base: Carrier,
        members: Vec<Element>,
        addition: ScalarAddition,
        zero_member: Option<Element>,
        action: Action,
    ) -> Result<ScalarSet, ScalarSetError> {
        if members.is_empty() {
            return Err(ScalarSetError::Empty);
        }
        let mut members = members;
        members.sort();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(ScalarSetError::DuplicateMember);
            }
        }
        for m in &members {
            if !base.contains(m) {
                return Err(ScalarSetError::MemberNotInBase(m.clone()));
            }
        }
        if let ScalarAddition::Table(table) = &addition {
            for a in &members {
                for b in &members {
                    match table.iter().find(|((x, y), _)| x == a && y == b) {
                        None => return Err(ScalarSetError::TableNotTotal(a.clone(), b.clone())),
                        Some((_, r)) => {
                            if !members.contains(r) {
                                return Err(ScalarSetError::TableNotClosed(
                                    a.clone(),
                                    b.clone(),
                                    r.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        let set = ScalarSet { base, members, addition, zero_member, action };
        if let Some(z) = &set.zero_member {
            if !set.members.contains(z) {
                return Err(ScalarSetError::ZeroNotMember(z.clone()));
            }
            for s in &set.members {
                if set.add_scalars(z, s).ok().as_ref() != Some(s) {
                    return Err(ScalarSetError::BadZeroMember(z.clone()));
                }
            }
        }
        Ok(set)
    }

    /// Full base carrier as members, base addition, `mod_mul` action and the
    /// base zero as the zero member. The usual "V over Zn" scalar set.
    pub fn full_modular(n: u64) -> ScalarSet {
        let base = Carrier::zn(n).expect("modulus");
        let members = base.enumerate().collect();
        ScalarSet::new(base, members, ScalarAddition::Base, Some(Element::mod_scalar(n, 0)), Action::ModMul)
            .expect("full modular scalar set")
    }

    /// A subset of Zn with base addition and `mod_mul` action.
    pub fn modular_subset(n: u64, values: &[u64]) -> Result<ScalarSet, ScalarSetError> {
        let base = Carrier::zn(n).expect("modulus");
        let members: Vec<Element> = values.iter().map(|&v| Element::mod_scalar(n, v)).collect();
        let zero = Element::mod_scalar(n, 0);
        let zero_member = members.contains(&zero).then_some(zero);
        ScalarSet::new(base, members, ScalarAddition::Base, zero_member, Action::ModMul)
    }

    /// Naturals within a window under natural addition and multiplication.
    pub fn nat_subset(bound: u64, values: &[u64]) -> Result<ScalarSet, ScalarSetError> {
        let base = Carrier::nat_window(bound);
        let members: Vec<Element> = values.iter().map(|&v| Element::nat(v)).collect();
        let zero = Element::nat(0);
        let zero_member = members.contains(&zero).then_some(zero);
        ScalarSet::new(base, members, ScalarAddition::Base, zero_member, Action::NatMulWindow)
    }

    pub fn base(&self) -> &Carrier {
        &self.base
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.members.binary_search(e).is_ok()
    }

    pub fn zero_member(&self) -> Option<&Element> {
        self.zero_member.as_ref()
    }

    pub fn addition(&self) -> &ScalarAddition {
        &self.addition
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// True when the members are exactly all of Zn with base addition and
    /// mod_mul action: the fully structured case fast paths rely on.
    pub fn is_full_modular(&self) -> Option<u64> {
        match (self.base.kind(), &self.addition, &self.action) {
            (CarrierKind::Zn(n), ScalarAddition::Base, Action::ModMul)
                if self.members.len() as u128 == self.base.cardinality() =>
            {
                Some(*n)
            }
            _ => None,
        }
    }

    /// Scalar addition within the set.
    pub fn add_scalars(&self, a: &Element, b: &Element) -> Result<Element, ArithError> {
        match &self.addition {
            ScalarAddition::Base => self.base.add(a, b),
            ScalarAddition::Table(table) => table
                .iter()
                .find(|((x, y), _)| x == a && y == b)
                .map(|(_, r)| r.clone())
                .ok_or_else(|| ArithError::MissingTableEntry(a.clone(), b.clone())),
        }
    }

    /// The scalar action g.v into `target`'s value domain.
    pub fn act(&self, g: &Element, v: &Element, target: &Carrier) -> Result<Element, ArithError> {
        match &self.action {
            Action::ModMul => {
                let gv = g.scalar_value().ok_or_else(|| ArithError::NotAScalar(g.clone()))?;
                match v.modulus() {
                    Some(n) => {
                        let coords = v
                            .coords()
                            .iter()
                            .map(|&c| ((gv as u128 * c as u128) % n as u128) as u64)
                            .collect();
                        Ok(v.with_coords(coords))
                    }
                    None => Err(ArithError::IncompatibleAction {
                        action: ActionKind::ModMul,
                        value: v.clone(),
                    }),
                }
            }
            Action::NatMulWindow => {
                let gv = g.scalar_value().ok_or_else(|| ArithError::NotAScalar(g.clone()))?;
                match v {
                    Element::Nat { coords } => {
                        let bound = target.nat_bound().unwrap_or(u64::MAX);
                        let mut out = Vec::with_capacity(coords.len());
                        for &c in coords {
                            let p = gv
                                .checked_mul(c)
                                .ok_or(ArithError::WindowOverflow { bound })?;
                            if p > bound {
                                return Err(ArithError::WindowOverflow { bound });
                            }
                            out.push(p);
                        }
                        Ok(v.with_coords(out))
                    }
                    _ => Err(ArithError::IncompatibleAction {
                        action: ActionKind::NatMulWindow,
                        value: v.clone(),
                    }),
                }
            }
            Action::Table(table) => table
                .iter()
                .find(|((x, y), _)| x == g && y == v)
                .map(|(_, r)| r.clone())
                .ok_or_else(|| ArithError::MissingTableEntry(g.clone(), v.clone())),
        }
    }
}

/// Deterministic set of elements in canonical order.
pub fn sorted_unique(elements: impl IntoIterator<Item = Element>) -> Vec<Element> {
    let set: BTreeSet<Element> = elements.into_iter().collect();
    set.into_iter().collect()
}
