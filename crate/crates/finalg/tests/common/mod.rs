//! Shared corpus of ported worked examples. Infinite carriers are ported to
//! modular analogues or bounded windows; each constructor notes its chosen
//! modulus/window. Grounds written as explicit lists reproduce the source
//! data verbatim (up to the recorded corrections).

#![allow(dead_code)]

use finalg::carrier::{Carrier, Element, ScalarSet};
use finalg::fuzzy::{FuzzyMap, FuzzyRule};
use finalg::maps::LinearMap;
use finalg::multi::{MultiMap, MultiStructure, ScalarMode};
use finalg::structures::{Family, GroundSpec, StructureDecl};

pub fn decl(
    name: &str,
    family: Family,
    carrier: Carrier,
    ground: GroundSpec,
    scalars: ScalarSet,
) -> StructureDecl {
    StructureDecl::new(name, family, carrier, ground, scalars).unwrap()
}

pub fn tuples(n: u64, coords: &[&[u64]]) -> Vec<Element> {
    coords.iter().map(|c| Element::mod_tuple(n, c)).collect()
}

/// Z12 as a set vector space over the even residues.
pub fn z12_over_evens() -> StructureDecl {
    decl(
        "Z12overEvens",
        Family::SetVs,
        Carrier::zn(12).unwrap(),
        GroundSpec::All,
        ScalarSet::modular_subset(12, &[0, 2, 4, 6, 8, 10]).unwrap(),
    )
}

/// Powers of three inside a window over {2, 4}: action closure fails at
/// 2.3 = 6. Window 100.
pub fn powers_of_three_over_evens() -> StructureDecl {
    decl(
        "PowersOfThree",
        Family::SetVs,
        Carrier::nat_window(100),
        GroundSpec::Subset([3u64, 9, 27, 81].iter().map(|&v| Element::nat(v)).collect()),
        ScalarSet::nat_subset(100, &[2, 4]).unwrap(),
    )
}

/// {0, 3, 9, 27, 81} over {0, 1, 3}: generation is mode-dependent. Window 100.
pub fn geometric_mode_dependent() -> StructureDecl {
    decl(
        "Geometric3",
        Family::SetVs,
        Carrier::nat_window(100),
        GroundSpec::Subset([0u64, 3, 9, 27, 81].iter().map(|&v| Element::nat(v)).collect()),
        ScalarSet::nat_subset(100, &[0, 1, 3]).unwrap(),
    )
}

/// Even naturals over all naturals: B = {2} generates. Window 60/30.
pub fn evens_over_naturals() -> StructureDecl {
    let ground: Vec<Element> = (1..=30u64).map(|v| Element::nat(2 * v)).collect();
    let members: Vec<u64> = (1..=30).collect();
    decl(
        "EvensOverNaturals",
        Family::SetVs,
        Carrier::nat_window(60),
        GroundSpec::Subset(ground),
        ScalarSet::nat_subset(60, &members).unwrap(),
    )
}

/// The mixed 4-/3-tuple set over the idempotent semigroup {0,1}, 1+1=1:
/// a semigroup vector space that is not a semigroup under addition.
pub fn mixed_idempotent_semigroup_vs() -> (StructureDecl, ScalarSet) {
    let zero = Element::nat(0);
    let one = Element::nat(1);
    let table = vec![
        ((zero.clone(), zero.clone()), zero.clone()),
        ((zero.clone(), one.clone()), one.clone()),
        ((one.clone(), zero.clone()), one.clone()),
        ((one.clone(), one.clone()), one.clone()),
    ];
    let scalars = ScalarSet::new(
        Carrier::nat_window(1),
        vec![zero.clone(), one],
        finalg::carrier::ScalarAddition::Table(table),
        Some(zero),
        finalg::carrier::Action::ModMul,
    )
    .unwrap();
    let elems = tuples(
        2,
        &[
            &[0, 1, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 0, 1],
            &[1, 1, 1],
            &[1, 0, 1],
            &[0, 0, 0],
        ],
    );
    let carrier = Carrier::explicit(elems).unwrap();
    let d = decl("MixedSemigroupVs", Family::SemigroupVs, carrier, GroundSpec::All, scalars.clone());
    (d, scalars)
}

/// The seven-element mixed ground over Z2 whose dimension is five.
pub fn seven_mixed_group_vs() -> StructureDecl {
    let elems = tuples(
        2,
        &[
            &[1, 1, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
            &[1, 1, 1],
            &[0, 1, 1],
            &[0, 1, 0],
            &[0, 0, 0],
        ],
    );
    decl(
        "SevenMixed",
        Family::GroupVs,
        Carrier::explicit(elems).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(2),
    )
}

/// Z6^3 over Z6 with the four-element subgroup vector subspace witness.
pub fn z6_cubed() -> StructureDecl {
    decl(
        "Z6cubed",
        Family::GroupVs,
        Carrier::zn_tuple(6, 3).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(6),
    )
}

pub fn z6_witness_subset() -> Vec<Element> {
    tuples(6, &[&[2, 2, 2], &[0, 0, 0], &[1, 1, 1], &[4, 4, 4]])
}

/// Zp^k over Zp (simple group vector spaces).
pub fn zp_power(p: u64, k: usize) -> StructureDecl {
    decl(
        "ZpPower",
        Family::GroupVs,
        Carrier::zn_tuple(p, k).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(p),
    )
}

/// Z12^3 over the even subgroup, with the duo subspace {0} x Z12 x {0}.
pub fn z12_cubed_over_even_group() -> StructureDecl {
    decl(
        "Z12cubed",
        Family::GroupVs,
        Carrier::zn_tuple(12, 3).unwrap(),
        GroundSpec::All,
        ScalarSet::modular_subset(12, &[0, 2, 4, 6, 8, 10]).unwrap(),
    )
}

/// Z2^3 as a group linear algebra over Z2 (dimension 3).
pub fn z2_cube_la() -> StructureDecl {
    decl(
        "Z2cube",
        Family::GroupLa,
        Carrier::zn_tuple(2, 3).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(2),
    )
}

/// 2x2 matrices over Z6 as a group linear algebra (dimension 4).
pub fn z6_matrices_la() -> StructureDecl {
    decl(
        "Z6matrices",
        Family::GroupLa,
        Carrier::zn_matrix(6, 2, 2).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(6),
    )
}

/// Z6^4 over Z6: the two-element set the source claims generating does not;
/// the exhaustive dimension is four.
pub fn z6_fourth_la() -> (StructureDecl, Vec<Element>) {
    let d = decl(
        "Z6fourth",
        Family::GroupLa,
        Carrier::zn_tuple(6, 4).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(6),
    );
    let claimed = tuples(6, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
    (d, claimed)
}

/// Z14^3 as a group linear algebra with its coordinate-axis subalgebras.
pub fn z14_cubed_la() -> (StructureDecl, Vec<Vec<Element>>) {
    let d = decl(
        "Z14cubed",
        Family::GroupLa,
        Carrier::zn_tuple(14, 3).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(14),
    );
    let parts = (0..3usize)
        .map(|axis| {
            (0..14u64)
                .map(|v| {
                    let mut coords = [0u64; 3];
                    coords[axis] = v;
                    Element::mod_tuple(14, &coords)
                })
                .collect()
        })
        .collect();
    (d, parts)
}

/// 2x2 matrices over Z4 with three overlapping subalgebras that all miss the
/// bottom-right coordinate: the sum cannot cover, intersections exceed {0}.
/// (The source's literal parts coincide with a covering sum; these realize
/// its claimed verdicts.) Modulus 4.
pub fn overlapping_r_parts() -> (StructureDecl, Vec<Vec<Element>>) {
    let n = 4u64;
    let d = decl(
        "R4matrices",
        Family::GroupLa,
        Carrier::zn_matrix(n, 2, 2).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(n),
    );
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    for a in 0..n {
        for b in 0..n {
            r1.push(Element::mod_matrix(n, 2, 2, &[a, b, 0, 0]));
            r2.push(Element::mod_matrix(n, 2, 2, &[a, 0, b, 0]));
            r3.push(Element::mod_matrix(n, 2, 2, &[0, a, b, 0]));
        }
    }
    (d, vec![r1, r2, r3])
}

/// 2x3 matrices over Z3 with four overlapping subalgebras forming a pseudo
/// direct sum. Modulus 3.
pub fn pseudo_direct_sum_parts() -> (StructureDecl, Vec<Vec<Element>>) {
    let n = 3u64;
    let d = decl(
        "Z3matrices23",
        Family::GroupLa,
        Carrier::zn_matrix(n, 2, 3).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(n),
    );
    // Free positions per part, row-major over a 2x3 shape.
    let masks: Vec<Vec<usize>> = vec![
        vec![0, 1, 3],
        vec![1, 2],
        vec![0, 2, 3, 5],
        vec![0, 1, 4, 5],
    ];
    let parts = masks
        .iter()
        .map(|mask| {
            let mut out = Vec::new();
            let mut assignment = vec![0u64; mask.len()];
            loop {
                let mut coords = [0u64; 6];
                for (slot, &pos) in mask.iter().enumerate() {
                    coords[pos] = assignment[slot];
                }
                out.push(Element::mod_matrix(n, 2, 3, &coords));
                let mut i = mask.len();
                let mut done = false;
                loop {
                    if i == 0 {
                        done = true;
                        break;
                    }
                    i -= 1;
                    assignment[i] += 1;
                    if assignment[i] < n {
                        break;
                    }
                    assignment[i] = 0;
                }
                if done {
                    break;
                }
            }
            out
        })
        .collect();
    (d, parts)
}

/// The coordinate-reversal operator on Z12 4-tuples. Modulus 12.
pub fn reversal_operator() -> (StructureDecl, LinearMap) {
    let d = decl(
        "Z12tuples4",
        Family::GroupVs,
        Carrier::zn_tuple(12, 4).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(12),
    );
    let map = LinearMap::from_rule(
        "Rev",
        &d,
        &d,
        &finalg::maps::MapRule::Permute(vec![3, 2, 1, 0]),
    )
    .unwrap();
    (d, map)
}

/// T(x,y,z,w) = (2x,2y,0,0) onto 2Z4^2 x {0}^2: a linear projection that is
/// not idempotent. Modulus 4.
pub fn doubling_projection() -> (StructureDecl, LinearMap, Vec<Element>) {
    let n = 4u64;
    let d = decl(
        "Z4tuples4",
        Family::SemigroupLa,
        Carrier::zn_tuple(n, 4).unwrap(),
        GroundSpec::All,
        ScalarSet::full_modular(n),
    );
    let table: Vec<(Element, Element)> = d
        .ground_elements()
        .unwrap()
        .into_iter()
        .map(|v| {
            let c = v.coords();
            let image = Element::mod_tuple(n, &[(2 * c[0]) % n, (2 * c[1]) % n, 0, 0]);
            (v, image)
        })
        .collect();
    let map = LinearMap::from_table("Dbl", &d, &d, table).unwrap();
    let mut w = Vec::new();
    for x in [0u64, 2] {
        for y in [0u64, 2] {
            w.push(Element::mod_tuple(n, &[x, y, 0, 0]));
        }
    }
    (d, map, w)
}

/// The idempotent 4-projection: componentwise shape collapses and
/// truncations on a group 4-set vector space. Modulus 3.
pub fn idempotent_four_projection(
) -> (MultiStructure, MultiMap, Vec<Vec<Element>>) {
    let n = 3u64;
    let scalars = ScalarSet::full_modular(n);
    let v1 = decl(
        "P1src",
        Family::GroupVs,
        Carrier::zn_matrix(n, 2, 2).unwrap(),
        GroundSpec::All,
        scalars.clone(),
    );
    let v2 = decl(
        "P2src",
        Family::GroupVs,
        Carrier::zn_poly(n, 5).unwrap(),
        GroundSpec::All,
        scalars.clone(),
    );
    let v3 = decl(
        "P3src",
        Family::GroupVs,
        Carrier::zn_tuple(n, 5).unwrap(),
        GroundSpec::All,
        scalars.clone(),
    );
    let v4 = decl(
        "P4src",
        Family::GroupVs,
        Carrier::zn_matrix(n, 4, 2).unwrap(),
        GroundSpec::All,
        scalars,
    );

    let p1_table: Vec<(Element, Element)> = v1
        .ground_elements()
        .unwrap()
        .into_iter()
        .map(|m| {
            let a = m.coords()[0];
            (m, Element::mod_matrix(n, 2, 2, &[a, a, a, a]))
        })
        .collect();
    let p2_table: Vec<(Element, Element)> = v2
        .ground_elements()
        .unwrap()
        .into_iter()
        .map(|p| {
            let mut coeffs = p.coords().to_vec();
            coeffs[4] = 0;
            coeffs[5] = 0;
            (p, Element::mod_poly(n, 5, &coeffs))
        })
        .collect();
    let p3_table: Vec<(Element, Element)> = v3
        .ground_elements()
        .unwrap()
        .into_iter()
        .map(|t| {
            let c = t.coords();
            (t.clone(), Element::mod_tuple(n, &[c[0], c[1], c[2], 0, 0]))
        })
        .collect();
    let p4_table: Vec<(Element, Element)> = v4
        .ground_elements()
        .unwrap()
        .into_iter()
        .map(|m| {
            let a = m.coords()[0];
            (m, Element::mod_matrix(n, 4, 2, &[a; 8]))
        })
        .collect();

    let w1: Vec<Element> =
        (0..n).map(|a| Element::mod_matrix(n, 2, 2, &[a, a, a, a])).collect();
    let w2: Vec<Element> = {
        let mut out = Vec::new();
        for c0 in 0..n {
            for c1 in 0..n {
                for c2 in 0..n {
                    for c3 in 0..n {
                        out.push(Element::mod_poly(n, 5, &[c0, c1, c2, c3]));
                    }
                }
            }
        }
        out
    };
    let w3: Vec<Element> = {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out.push(Element::mod_tuple(n, &[x, y, z, 0, 0]));
                }
            }
        }
        out
    };
    let w4: Vec<Element> = (0..n).map(|a| Element::mod_matrix(n, 4, 2, &[a; 8])).collect();

    let p1 = LinearMap::from_table("P1", &v1, &v1, p1_table).unwrap();
    let p2 = LinearMap::from_table("P2", &v2, &v2, p2_table).unwrap();
    let p3 = LinearMap::from_table("P3", &v3, &v3, p3_table).unwrap();
    let p4 = LinearMap::from_table("P4", &v4, &v4, p4_table).unwrap();

    let multi =
        MultiStructure::new("Vquad", vec![v1, v2, v3, v4], ScalarMode::Shared).unwrap();
    let map = MultiMap {
        name: "P".into(),
        source: "Vquad".into(),
        target: "Vquad".into(),
        routing: vec![0, 1, 2, 3],
        components: vec![p1, p2, p3, p4],
    };
    (multi, map, vec![w1, w2, w3, w4])
}

/// The parity-ninths overlay on five binary triples with its lawful
/// restriction.
pub fn parity_ninths() -> (StructureDecl, FuzzyMap, Vec<Element>) {
    let elems = tuples(2, &[&[1, 1, 1], &[1, 0, 1], &[0, 1, 1], &[0, 0, 0], &[1, 0, 0]]);
    let d = decl(
        "ParityNinths",
        Family::SetVs,
        Carrier::explicit(elems).unwrap(),
        GroundSpec::All,
        ScalarSet::modular_subset(2, &[0, 1]).unwrap(),
    );
    let rule = FuzzyRule::CoordSumOver { divisor: 9, mod_first: Some(2) };
    let f = FuzzyMap::from_rule(&d, &rule).unwrap();
    let w = tuples(2, &[&[1, 1, 1], &[0, 0, 0], &[0, 1, 1]]);
    (d, f, w)
}

/// The seven positive triples over {0, 1} whose zero triple is missing:
/// deliberately NOT patched; the checker must fail it.
pub fn seven_triples_without_zero() -> StructureDecl {
    let elems: Vec<Element> = [
        [1u64, 3, 5],
        [1, 1, 1],
        [5, 5, 5],
        [7, 7, 7],
        [3, 3, 3],
        [5, 15, 25],
        [1, 2, 3],
    ]
    .iter()
    .map(|c| Element::nat_tuple(c))
    .collect();
    decl(
        "SevenTriples",
        Family::SetVs,
        Carrier::explicit(elems).unwrap(),
        GroundSpec::All,
        ScalarSet::nat_subset(50, &[0, 1]).unwrap(),
    )
}

/// Set bivector space: Z5 pairs and 2x2 matrices over Z5 under S = {0,1}.
pub fn bivector_over_01() -> MultiStructure {
    let s = ScalarSet::modular_subset(5, &[0, 1]).unwrap();
    let v1 = decl(
        "B1",
        Family::SetVs,
        Carrier::zn_tuple(5, 2).unwrap(),
        GroundSpec::All,
        s.clone(),
    );
    let v2 = decl(
        "B2",
        Family::SetVs,
        Carrier::zn_matrix(5, 2, 2).unwrap(),
        GroundSpec::All,
        s,
    );
    MultiStructure::new("Bivector", vec![v1, v2], ScalarMode::Shared).unwrap()
}

/// The contained pair: all 2x2 matrices over Z12 and the constant ones.
pub fn contained_bivector() -> MultiStructure {
    let s = ScalarSet::modular_subset(12, &[0, 1]).unwrap();
    let v1 = decl(
        "C1",
        Family::SetVs,
        Carrier::zn_matrix(12, 2, 2).unwrap(),
        GroundSpec::All,
        s.clone(),
    );
    let constants: Vec<Element> =
        (0..12u64).map(|a| Element::mod_matrix(12, 2, 2, &[a, a, a, a])).collect();
    let v2 = StructureDecl::new(
        "C2",
        Family::SetVs,
        Carrier::zn_matrix(12, 2, 2).unwrap(),
        GroundSpec::Subset(constants),
        s,
    )
    .unwrap();
    MultiStructure::new("Contained", vec![v1, v2], ScalarMode::Shared).unwrap()
}

/// Bidimension (4, 3): two explicit binary grounds over S = {0,1}.
pub fn bidimension_four_three() -> MultiStructure {
    let s = ScalarSet::modular_subset(2, &[0, 1]).unwrap();
    let v1 = StructureDecl::new(
        "D1",
        Family::SetVs,
        Carrier::explicit(tuples(
            2,
            &[&[1, 1, 1], &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        ))
        .unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v2 = StructureDecl::new(
        "D2",
        Family::SetVs,
        Carrier::explicit(tuples(2, &[&[1, 1, 1, 1], &[0, 0, 0, 0], &[1, 1, 1, 0], &[1, 0, 0, 0]]))
            .unwrap(),
        GroundSpec::All,
        s,
    )
    .unwrap();
    MultiStructure::new("BidimFourThree", vec![v1, v2], ScalarMode::Shared).unwrap()
}

/// The five-component structure of 5-dimension (1, 1, 1, 1, 2) over {0,1}.
pub fn five_structure() -> MultiStructure {
    let s = ScalarSet::modular_subset(2, &[0, 1]).unwrap();
    let v1 = StructureDecl::new(
        "E1",
        Family::SetVs,
        Carrier::explicit(tuples(2, &[&[1, 1, 1], &[0, 0, 0]])).unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v2 = StructureDecl::new(
        "E2",
        Family::SetVs,
        Carrier::explicit(vec![
            Element::mod_matrix(2, 2, 2, &[0, 0, 0, 0]),
            Element::mod_matrix(2, 2, 2, &[1, 1, 1, 1]),
        ])
        .unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v3 = StructureDecl::new(
        "E3",
        Family::SetVs,
        Carrier::explicit(vec![
            Element::mod_matrix(2, 2, 3, &[0; 6]),
            Element::mod_matrix(2, 2, 3, &[1; 6]),
        ])
        .unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v4 = StructureDecl::new(
        "E4",
        Family::SetVs,
        Carrier::explicit(tuples(2, &[&[1, 1, 1, 1], &[0, 0, 0, 0]])).unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v5 = StructureDecl::new(
        "E5",
        Family::SetVs,
        Carrier::explicit(vec![
            Element::mod_matrix(2, 2, 2, &[1, 0, 1, 0]),
            Element::mod_matrix(2, 2, 2, &[0, 1, 0, 1]),
            Element::mod_matrix(2, 2, 2, &[0, 0, 0, 0]),
        ])
        .unwrap(),
        GroundSpec::All,
        s,
    )
    .unwrap();
    MultiStructure::new("FiveStructure", vec![v1, v2, v3, v4, v5], ScalarMode::Shared)
        .unwrap()
}

/// The group 4-set linear algebra over Z12 of 4-dimension (1, 2, 11, 5).
pub fn z12_four_structure() -> MultiStructure {
    let s = ScalarSet::full_modular(12);
    let v1 = StructureDecl::new(
        "F1",
        Family::GroupLa,
        Carrier::explicit(
            (0..12u64).map(|a| Element::mod_matrix(12, 2, 2, &[a, a, a, a])).collect(),
        )
        .unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v2 = decl(
        "F2",
        Family::GroupLa,
        Carrier::zn_tuple(12, 2).unwrap(),
        GroundSpec::All,
        s.clone(),
    );
    let v3 = decl(
        "F3",
        Family::GroupLa,
        Carrier::zn_poly(12, 10).unwrap(),
        GroundSpec::All,
        s.clone(),
    );
    // 2x3 matrices with the (2,1) entry structurally zero: 12^5 elements.
    let mut v4_ground = Vec::with_capacity(248_832);
    for a in 0..12u64 {
        for b in 0..12u64 {
            for c in 0..12u64 {
                for dd in 0..12u64 {
                    for e in 0..12u64 {
                        v4_ground.push(Element::mod_matrix(12, 2, 3, &[a, b, c, 0, dd, e]));
                    }
                }
            }
        }
    }
    let v4 = StructureDecl::new(
        "F4",
        Family::GroupLa,
        Carrier::zn_matrix(12, 2, 3).unwrap(),
        GroundSpec::Subset(v4_ground),
        s,
    )
    .unwrap();
    MultiStructure::new("Z12four", vec![v1, v2, v3, v4], ScalarMode::Shared).unwrap()
}

/// The contrast pair: four Z2 components read as a group 4-set linear
/// algebra (dimension (3,5,4,1)) or a group 4-set vector space
/// (dimension (7,31,15,1)).
pub fn contrast_pair(family: Family) -> MultiStructure {
    let s = ScalarSet::full_modular(2);
    let v1 = decl("G1", family, Carrier::zn_tuple(2, 3).unwrap(), GroundSpec::All, s.clone());
    let v2 = decl("G2", family, Carrier::zn_poly(2, 4).unwrap(), GroundSpec::All, s.clone());
    let v3 = decl("G3", family, Carrier::zn_matrix(2, 2, 2).unwrap(), GroundSpec::All, s.clone());
    let v4 = StructureDecl::new(
        "G4",
        family,
        Carrier::explicit(vec![
            Element::mod_matrix(2, 2, 3, &[0; 6]),
            Element::mod_matrix(2, 2, 3, &[1; 6]),
        ])
        .unwrap(),
        GroundSpec::All,
        s,
    )
    .unwrap();
    MultiStructure::new("ContrastPair", vec![v1, v2, v3, v4], ScalarMode::Shared).unwrap()
}

/// The strong-subsemigroup example over Z6: five components with diagonal
/// parts that stay subalgebras over both proper subsemigroups of Z6.
pub fn z6_strong_five() -> (MultiStructure, Vec<Vec<Element>>) {
    let s = ScalarSet::full_modular(6);
    let v1 = decl("H1", Family::SemigroupLa, Carrier::zn_tuple(6, 3).unwrap(), GroundSpec::All, s.clone());
    let v2 = decl("H2", Family::SemigroupLa, Carrier::zn_matrix(6, 2, 2).unwrap(), GroundSpec::All, s.clone());
    let v3 = decl("H3", Family::SemigroupLa, Carrier::zn_poly(6, 5).unwrap(), GroundSpec::All, s.clone());
    let v4 = decl("H4", Family::SemigroupLa, Carrier::zn_matrix(6, 2, 3).unwrap(), GroundSpec::All, s.clone());
    let v5 = decl("H5", Family::SemigroupLa, Carrier::zn_matrix(6, 3, 3).unwrap(), GroundSpec::All, s);
    let w1: Vec<Element> = (0..6u64).map(|a| Element::mod_tuple(6, &[a, a, a])).collect();
    let w2: Vec<Element> = (0..6u64).map(|a| Element::mod_matrix(6, 2, 2, &[a; 4])).collect();
    let w3: Vec<Element> =
        (0..6u64).map(|a| Element::mod_poly(6, 5, &[a, a, a, a, a, a])).collect();
    let w4: Vec<Element> = (0..6u64).map(|a| Element::mod_matrix(6, 2, 3, &[a; 6])).collect();
    let w5: Vec<Element> = (0..6u64).map(|a| Element::mod_matrix(6, 3, 3, &[a; 9])).collect();
    let m = MultiStructure::new("Z6strong", vec![v1, v2, v3, v4, v5], ScalarMode::Shared)
        .unwrap();
    (m, vec![w1, w2, w3, w4, w5])
}

/// The corrected fuzzy bi-overlay: coordinate sums over 100 and 50 on two
/// explicit grounds (zero tuples added; one negative coordinate made
/// positive).
pub fn fuzzy_bi_overlay() -> (MultiStructure, finalg::multi::MultiFuzzy) {
    let s = ScalarSet::modular_subset(2, &[0, 1]).unwrap();
    let v1_elems: Vec<Element> = [
        [4u64, 0, 0, 1],
        [5, 2, 2, 1],
        [1, 5, 5, 1],
        [7, 8, 9, 2],
        [1, 1, 1, 1],
        [7, 2, 7, 2],
        [1, 0, 5, 3],
        [0, 0, 0, 0],
    ]
    .iter()
    .map(|c| Element::mod_tuple(16, c))
    .collect();
    let v2_elems: Vec<Element> = [
        [1u64, 1, 2],
        [2, 3, 4],
        [5, 6, 7],
        [2, 3, 1],
        [4, 1, 2],
        [0, 1, 7],
        [0, 8, 0],
        [0, 0, 0],
    ]
    .iter()
    .map(|c| Element::mod_tuple(16, c))
    .collect();
    let v1 = StructureDecl::new(
        "I1",
        Family::SetVs,
        Carrier::explicit(v1_elems).unwrap(),
        GroundSpec::All,
        s.clone(),
    )
    .unwrap();
    let v2 = StructureDecl::new(
        "I2",
        Family::SetVs,
        Carrier::explicit(v2_elems).unwrap(),
        GroundSpec::All,
        s,
    )
    .unwrap();
    let f1 = FuzzyMap::from_rule(&v1, &FuzzyRule::CoordSumOver { divisor: 100, mod_first: None })
        .unwrap();
    let f2 = FuzzyMap::from_rule(&v2, &FuzzyRule::CoordSumOver { divisor: 50, mod_first: None })
        .unwrap();
    let m = MultiStructure::new("FuzzyBi", vec![v1, v2], ScalarMode::Shared).unwrap();
    let mf = finalg::multi::MultiFuzzy {
        name: "EtaBi".into(),
        structure: "FuzzyBi".into(),
        components: vec![f1, f2],
    };
    (m, mf)
}

/// Every corpus structure that verifies, for consistency sweeps.
pub fn all_verifying_structures() -> Vec<StructureDecl> {
    let mut out = vec![
        z12_over_evens(),
        geometric_mode_dependent(),
        evens_over_naturals(),
        seven_mixed_group_vs(),
        z6_cubed(),
        z12_cubed_over_even_group(),
        z2_cube_la(),
        z6_matrices_la(),
        z6_fourth_la().0,
        z14_cubed_la().0,
        parity_ninths().0,
        reversal_operator().0,
        doubling_projection().0,
        zp_power(7, 3),
        zp_power(5, 2),
    ];
    let (mixed, _) = mixed_idempotent_semigroup_vs();
    out.push(mixed);
    out
}
