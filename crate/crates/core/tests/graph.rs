use coxrep::error::Error;
use coxrep::graph::{components, evaluate_character, spanning_forest, Character, SimpleGraph};
use coxrep::linalg::real;
use num_complex::Complex64;
use proptest::prelude::*;

fn random_graph(n: usize, mask: u64) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> (bit % 64) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    SimpleGraph::unlabeled(n, &edges).unwrap()
}

/// Components by repeated edge relaxation, independent of the BFS code.
fn oracle_components(g: &SimpleGraph) -> usize {
    let n = g.vertex_count();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for (a, b) in g.edges() {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut distinct = label.clone();
    distinct.sort();
    distinct.dedup();
    distinct.len()
}

#[test]
fn triangle_basis() {
    let g = SimpleGraph::unlabeled(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let b = spanning_forest(&g);
    assert_eq!(b.rank(), 1);
    assert_eq!(b.chords(), &[(1, 2)]);
    assert_eq!(b.circuits()[0], vec![1, 2, 0, 1]);
}

#[test]
fn tree_has_no_circuits() {
    let g = SimpleGraph::unlabeled(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
    assert_eq!(spanning_forest(&g).rank(), 0);
}

#[test]
fn bad_graphs_rejected() {
    assert!(SimpleGraph::unlabeled(2, &[(0, 0)]).is_err());
    assert!(SimpleGraph::unlabeled(2, &[(0, 1), (1, 0)]).is_err());
    assert!(SimpleGraph::unlabeled(2, &[(0, 2)]).is_err());
}

#[test]
fn path_errors() {
    let g = SimpleGraph::unlabeled(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let b = spanning_forest(&g);
    assert!(matches!(b.chord_coordinates(&[0, 1, 2]), Err(Error::PathNotClosed)));
    assert!(matches!(b.chord_coordinates(&[0, 3, 0]), Err(Error::NonEdge(0, 3))));
}

#[test]
fn character_on_square_with_diagonal() {
    // 0-1-2-3-0 plus 0-2
    let g = SimpleGraph::unlabeled(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let b = spanning_forest(&g);
    assert_eq!(b.rank(), 2);
    let chi = Character::new(vec![real(2.0), real(3.0)]).unwrap();
    // the outer square is the product of the two triangles up to orientation
    let outer = evaluate_character(&b, &chi, &[0, 1, 2, 3, 0]).unwrap();
    let x = outer.re.abs();
    assert!([6.0, 2.0 / 3.0, 3.0 / 2.0, 1.0 / 6.0].iter().any(|v| (x - v).abs() < 1e-12), "{outer}");
    assert!(matches!(
        evaluate_character(&b, &Character::trivial(1), &[0, 1, 2, 0]),
        Err(Error::ChiCountMismatch { expected: 2, got: 1 })
    ));
}

#[test]
fn character_rejects_zero() {
    assert!(Character::new(vec![Complex64::new(0.0, 0.0)]).is_err());
}

proptest! {
    #[test]
    fn circuit_rank_formula(n in 1usize..9, mask in any::<u64>()) {
        let g = random_graph(n, mask);
        let b = spanning_forest(&g);
        let c = oracle_components(&g);
        prop_assert_eq!(components(&g).count, c);
        prop_assert_eq!(b.rank(), g.edge_count() + c - n);
        prop_assert_eq!(b.forest_edges().len(), n - c);
    }

    #[test]
    fn circuits_have_unit_coordinates(n in 3usize..9, mask in any::<u64>()) {
        let g = random_graph(n, mask);
        let b = spanning_forest(&g);
        for (i, c) in b.circuits().iter().enumerate() {
            prop_assert_eq!(c.first(), c.last());
            for w in c.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
            let coords = b.chord_coordinates(c).unwrap();
            for (j, &k) in coords.iter().enumerate() {
                prop_assert_eq!(k, if i == j { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn character_is_multiplicative(n in 3usize..8, mask in any::<u64>(), vals in proptest::collection::vec(0.2f64..5.0, 30)) {
        let g = random_graph(n, mask);
        let b = spanning_forest(&g);
        let chi = Character::new(vals[..b.rank()].iter().map(|&v| real(v)).collect()).unwrap();
        if b.rank() >= 2 {
            let (c0, c1) = (&b.circuits()[0], &b.circuits()[1]);
            // c0, then walk to c1's start and back, then c1
            let Some(mut there) = b.try_forest_path(c0[0], c1[0]) else { return Ok(()) };
            let mut path = c0.clone();
            path.extend_from_slice(&there[1..]);
            path.extend_from_slice(&c1[1..]);
            there.reverse();
            path.extend_from_slice(&there[1..]);
            let v = evaluate_character(&b, &chi, &path).unwrap();
            let expected = chi.values()[0] * chi.values()[1];
            prop_assert!((v - expected).norm() < 1e-9 * expected.norm());
        }
    }
}
