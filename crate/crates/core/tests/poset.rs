use std::collections::BTreeSet;

use nilbruhat::atlas::Context;
use nilbruhat::poset::{hasse, leq, leq_matrix, transitive_reduction, weak_edges};

#[test]
fn covers_raise_dimension_by_one() {
    for (n, k) in [(4, 1), (4, 2), (5, 2), (6, 2)] {
        let ctx = Context::new(n, k).unwrap();
        let g = hasse(&ctx, 8).unwrap();
        for (a, b, _) in &g.covers {
            assert_eq!(g.nodes[*a].dim + 1, g.nodes[*b].dim, "({n},{k})");
        }
    }
}

#[test]
fn weak_edges_are_covers_reaching_every_node() {
    for (n, k) in [(4, 2), (5, 2), (6, 2), (6, 3)] {
        let ctx = Context::new(n, k).unwrap();
        let g = hasse(&ctx, 8).unwrap();
        let covers: BTreeSet<(usize, usize)> = g.covers.iter().map(|(a, b, _)| (*a, *b)).collect();
        let mut reached = BTreeSet::new();
        for (a, b, i) in &g.weak {
            assert!(covers.contains(&(*a, *b)));
            assert!((1..n).contains(i));
            reached.insert(*b);
        }
        let minima: BTreeSet<usize> = g.minima().into_iter().collect();
        for v in 0..g.nodes.len() {
            assert!(reached.contains(&v) || minima.contains(&v), "({n},{k}) node {v}");
        }
        assert_eq!(weak_edges(&ctx, 8).unwrap().len(), g.weak.len());
    }
}

#[test]
fn alpha_descent_marks_drops_in_alpha_length() {
    let ctx = Context::new(4, 2).unwrap();
    let g = hasse(&ctx, 8).unwrap();
    assert!(g.covers.iter().any(|(_, _, c)| c.alpha_descent));
    for (a, b, c) in &g.covers {
        let drop = g.nodes[*b].alpha.length() < g.nodes[*a].alpha.length();
        assert_eq!(c.alpha_descent, drop);
    }
}

#[test]
fn reduction_regenerates_the_order() {
    let ctx = Context::new(5, 2).unwrap();
    let labels = ctx.enumerate_labels(8).unwrap();
    let m = leq_matrix(&ctx, &labels);
    let covers = transitive_reduction(&m);
    let size = labels.len();
    let mut reach = vec![vec![false; size]; size];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in &covers {
        reach[*a][*b] = true;
    }
    for mid in 0..size {
        for a in 0..size {
            for b in 0..size {
                if reach[a][mid] && reach[mid][b] {
                    reach[a][b] = true;
                }
            }
        }
    }
    assert_eq!(reach, m);
}

#[test]
fn order_is_a_partial_order() {
    let ctx = Context::new(5, 2).unwrap();
    let labels = ctx.enumerate_labels(8).unwrap();
    for a in &labels {
        assert!(leq(&ctx, a, a));
        for b in &labels {
            if a != b && leq(&ctx, a, b) {
                assert!(!leq(&ctx, b, a));
            }
        }
    }
}

#[test]
fn annotation_and_dot_export() {
    let ctx = Context::new(4, 2).unwrap();
    let mut g = hasse(&ctx, 8).unwrap();
    g.annotate(|_| Some(true));
    assert!(g.nodes.iter().all(|v| v.singular == Some(true)));
    let dot = g.export_dot();
    assert_eq!(dot.matches(" -> ").count(), g.covers.len());
}
