mod common;

use std::collections::BTreeSet;

use cube_slices::classifier::{cell_orbit_slices, classify, ClassifyOptions};
use cube_slices::color_class::{
    colored_canonical_key, colored_graph, cube_squares, enumerate_color_classes, hyperplane,
    realizable, satisfies_combinatorial_conditions, three_zero_counterexample,
    uncolored_canonical_key, ColorClassKey, ColorClassOptions, ColoredGraph, ForbiddenSquares,
    Label, Labeling,
};
use cube_slices::cube::{cube_vertex, vertex_index, CubeSpec};
use cube_slices::slice::build_slice;

fn keys(d: usize, square_filter: bool) -> Vec<ColorClassKey> {
    enumerate_color_classes(d, ColorClassOptions { square_filter })
        .0
        .into_iter()
        .map(|c| c.key)
        .collect()
}

#[test]
fn class_counts() {
    assert_eq!(keys(3, true).len(), 12);
    assert_eq!(keys(4, true).len(), 61);
}

#[test]
fn square_filter_does_not_change_output() {
    for d in [3, 4] {
        assert_eq!(keys(d, true), keys(d, false), "d={d}");
    }
}

/// Every class again, from one slice per cell orbit of the affine
/// arrangement plus the facet square.
#[test]
fn classes_from_the_arrangement() {
    for d in [3, 4] {
        let cube = CubeSpec::affine(d);
        let mut from_cells: BTreeSet<ColorClassKey> =
            cell_orbit_slices(&cube, ClassifyOptions::default())
                .iter()
                .map(|s| colored_canonical_key(&colored_graph(s)))
                .collect();
        let mut w = vec![0; d];
        w[0] = 1;
        // the facet itself, all white
        let facet = build_slice(&cube, &hyperplane(&w, 1)).unwrap();
        let facet_graph = ColoredGraph::new(
            1 << (d - 1),
            &cube_slices::cube::edges(d - 1),
            vec![true; 1 << (d - 1)],
        );
        assert_eq!(
            colored_canonical_key(&facet_graph),
            colored_canonical_key(&colored_graph(&facet))
        );
        from_cells.insert(colored_canonical_key(&facet_graph));
        let enumerated: BTreeSet<ColorClassKey> = keys(d, true).into_iter().collect();
        assert_eq!(from_cells, enumerated, "d={d}");
    }
}

#[test]
fn black_vertices_have_degree_d_minus_one() {
    for d in [3, 4] {
        for c in enumerate_color_classes(d, ColorClassOptions::default()).0 {
            assert!(c.graph.is_connected());
            for v in 0..c.graph.len() {
                if !c.graph.is_white(v) {
                    assert_eq!(c.graph.degree(v), d - 1);
                }
            }
        }
    }
}

#[test]
fn types_are_told_apart_by_their_graphs() {
    for cube in [
        CubeSpec::affine(3),
        CubeSpec::affine(4),
        CubeSpec::affine(5),
        CubeSpec::central(5),
    ] {
        let run = classify(&cube, ClassifyOptions::default());
        let graphs: BTreeSet<ColorClassKey> = run
            .registry
            .entries()
            .map(|e| uncolored_canonical_key(&colored_graph(&e.representative)))
            .collect();
        assert_eq!(graphs.len(), run.num_types(), "{cube:?}");
    }
}

#[test]
fn three_zero_labeling() {
    let l = three_zero_counterexample();
    assert!(satisfies_combinatorial_conditions(&l, &ForbiddenSquares::classical()));
    assert!(realizable(&l).is_none());
    // the only plane through the three zeros contains a fourth cube vertex
    let zeros: Vec<Vec<i64>> = l
        .side(Label::Zero)
        .into_iter()
        .map(|v| {
            let mut c = cube_vertex(3, v);
            c.push(1);
            c
        })
        .collect();
    assert_eq!(common::rank(&zeros), 3);
    let extra = (0..8)
        .filter(|v| l.get(*v) != Label::Zero)
        .filter(|&v| {
            let mut rows = zeros.clone();
            let mut c = cube_vertex(3, v);
            c.push(1);
            rows.push(c);
            common::rank(&rows) == 3
        })
        .count();
    assert_eq!(extra, 1);
    // the pruning list rejects it outright
    assert!(!satisfies_combinatorial_conditions(&l, &ForbiddenSquares::with_sign_swaps()));
}

#[test]
fn forbidden_patterns() {
    use Label::*;
    let f = ForbiddenSquares::with_sign_swaps();
    assert!(f.contains(&[Plus, Zero, Plus, Zero]));
    assert!(f.contains(&[Zero, Zero, Zero, Plus]));
    assert!(f.contains(&[Zero, Plus, Zero, Zero]));
    assert!(!f.contains(&[Minus, Minus, Minus, Minus]));
    assert_eq!(cube_squares(3).len(), 6);
    assert_eq!(cube_squares(4).len(), 24);
}

#[test]
fn realizable_examples() {
    let facet = Labeling::new(
        3,
        (0..8)
            .map(|v| if cube_vertex(3, v)[0] == 1 { Label::Zero } else { Label::Minus })
            .collect(),
    );
    assert!(realizable(&facet).is_some());

    let corner = vertex_index(&[1, 1, 1]);
    let l = Labeling::new(
        3,
        (0..8)
            .map(|v| if v == corner { Label::Plus } else { Label::Minus })
            .collect(),
    );
    let h = realizable(&l).unwrap();
    let s = build_slice(&CubeSpec::affine(3), &h).unwrap();
    assert_eq!(s.f_vector(), &[3, 3]);
}

#[test]
fn polygon_colorings() {
    let graph = |w: &[i64], a| colored_graph(&build_slice(&CubeSpec::affine(3), &hyperplane(w, a)).unwrap());
    let hex = graph(&[1, 1, 1], 0);
    assert_eq!(hex.len(), 6);
    assert!((0..6).all(|v| !hex.is_white(v) && hex.degree(v) == 2));
    let tri = graph(&[1, 1, 1], 2);
    assert_eq!(tri.color_string(), "000");
    let pent = graph(&[4, 3, 3], 2);
    assert_eq!(pent.len(), 5);
    assert_eq!((0..5).filter(|&v| pent.is_white(v)).count(), 1);

    let black = ColoredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![false; 4]);
    let white = ColoredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![true; 4]);
    assert_ne!(colored_canonical_key(&black), colored_canonical_key(&white));
    assert_eq!(uncolored_canonical_key(&black), uncolored_canonical_key(&white));
    let adj = ColoredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![false, false, true, true]);
    let rot = ColoredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![true, false, false, true]);
    assert_eq!(colored_canonical_key(&adj), colored_canonical_key(&rot));
}
