//! The direction pre-order on generators and the sub-representations it
//! cuts out.
//!
//! `x -> y` means `alpha_y` lies in the sub-representation generated by
//! `alpha_x`, which happens exactly when `y . alpha_x` has a nonzero
//! `alpha_y` coefficient. Equivalence classes are the strongly connected
//! components; the down-set of a class spans a sub-representation.

use crate::ir::{build, IRDatum};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSpan {
    pub class: usize,
    /// Generators reachable from the class, sorted.
    pub down_set: Vec<usize>,
    /// Largest coefficient of a basis vector outside the down-set in the
    /// image of one inside it; zero for a genuine sub-representation.
    pub stability_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionPreorder {
    pub arrows: Vec<(usize, usize)>,
    /// Equivalence classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `(I, J)` with `I != J` whenever some member of `J` is reachable from `I`.
    pub class_order: Vec<(usize, usize)>,
    /// One entry per class whose down-set is a proper subset of `S`.
    pub spans: Vec<ClassSpan>,
}

impl DirectionPreorder {
    pub fn is_single_class(&self) -> bool {
        self.classes.len() == 1
    }
}

fn reachable(adj: &[Vec<usize>], from: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = from.to_vec();
    for &v in from {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

pub fn direction_preorder(datum: &IRDatum) -> DirectionPreorder {
    let n = datum.system().rank();
    let mut arrows = Vec::new();
    let mut adj = vec![Vec::new(); n];
    for (x, out) in adj.iter_mut().enumerate() {
        for y in (0..n).filter(|&y| y != x) {
            if datum.coefficient(y, x).norm() > 0.0 {
                arrows.push((x, y));
                out.push(y);
            }
        }
    }

    let reach: Vec<Vec<bool>> = (0..n).map(|v| reachable(&adj, &[v])).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (v..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
        for &w in &members {
            class_of[w] = classes.len();
        }
        classes.push(members);
    }

    let mut class_order = Vec::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            if i != j && reach[ci[0]][cj[0]] {
                class_order.push((i, j));
            }
        }
    }

    let gens = build(datum);
    let spans = classes
        .iter()
        .enumerate()
        .filter_map(|(class, members)| {
            let inside = reachable(&adj, members);
            let down_set: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            if down_set.len() == n {
                return None;
            }
            let mut stability_residual: f64 = 0.0;
            for g in gens.gens() {
                for &x in &down_set {
                    for y in (0..n).filter(|&y| !inside[y]) {
                        stability_residual = stability_residual.max(g[(y, x)].norm());
                    }
                }
            }
            Some(ClassSpan { class, down_set, stability_residual })
        })
        .collect();

    DirectionPreorder { arrows, classes, class_of, class_order, spans }
}
