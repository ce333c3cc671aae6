use std::collections::BTreeMap;

use gq_core::design::{
    derived_design, design_from_partition, lambda_vector, multiplicity_spectrum, parse_design, verify_t_design,
    write_design,
};
use gq_core::srg::{adjacency_profile, derived_profile, local_partition, point_graph, refine};
use gq_core::{build_quadric_quadrangle, write_geometry, GQParams};

#[test]
fn construction_is_deterministic() {
    let a = write_geometry(&build_quadric_quadrangle(), GQParams::Q54);
    let b = write_geometry(&build_quadric_quadrangle(), GQParams::Q54);
    assert_eq!(a, b);
}

#[test]
fn derived_designs_at_every_point_of_a() {
    let g = point_graph(&build_quadric_quadrangle());
    let (p, q) = g.canonical_non_edge().unwrap();
    let part = local_partition(&g, p, q).unwrap();
    let (d, labels) = design_from_partition(&g, &part).unwrap();
    assert_eq!(labels.len(), 17);
    for x in 0..d.v() {
        let dx = derived_design(&d, x).unwrap();
        assert_eq!((dx.v(), dx.k(), dx.block_count()), (16, 4, 60));
        let lambdas = lambda_vector(&dx, 2).unwrap().unwrap();
        assert_eq!(lambdas.0, vec![60, 15, 3]);
    }
}

#[test]
fn support_is_a_steiner_system() {
    let g = point_graph(&build_quadric_quadrangle());
    let (p, q) = g.canonical_non_edge().unwrap();
    let (d, _) = design_from_partition(&g, &local_partition(&g, p, q).unwrap()).unwrap();
    let support = d.support();
    assert_eq!(support.block_count(), 68);
    assert!(verify_t_design(&support, 3, 17, 5, 1).0);
    assert_eq!(multiplicity_spectrum(&d), BTreeMap::from([(3, 68)]));
}

#[test]
fn design_text_round_trips() {
    let g = point_graph(&build_quadric_quadrangle());
    let (p, q) = g.canonical_non_edge().unwrap();
    let (d, _) = design_from_partition(&g, &local_partition(&g, p, q).unwrap()).unwrap();
    let text = write_design(&d);
    assert_eq!(parse_design(&text).unwrap(), d);
}

#[test]
fn derived_profiles_are_constant() {
    let g = point_graph(&build_quadric_quadrangle());
    let (p, q) = g.canonical_non_edge().unwrap();
    let base = local_partition(&g, p, q).unwrap();
    let r = base.b.iter().next().unwrap();
    let part = refine(&g, &base, r).unwrap();
    let prof = adjacency_profile(&g, &part);
    let mut seen = 0;
    for a in part.a2.iter() {
        let m = derived_profile(&g, &part, &prof, a).unwrap();
        assert_eq!(m.counts, vec![15, 15, 30, 0, 0], "a = {a}");
        seen += 1;
    }
    assert_eq!(seen, 12);
}
