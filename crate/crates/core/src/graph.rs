//! Finite simple graphs, spanning forests and the fundamental-circuit basis
//! of first homology.

use std::collections::{BTreeSet, VecDeque};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ONE;

/// Undirected graph without loops or multiple edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Edges are index pairs in either order.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has an endpoint outside 0..{n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", labels[a])));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{}, {}}}", labels[a], labels[b])));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &set {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self { labels, edges: set, adj })
    }

    /// Graph on `0..n` with labels `"0"`, `"1"`, ...
    pub fn unlabeled(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// Vertex partition into connected components. Component ids are numbered
/// in order of each component's least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn members(&self, id: usize) -> Vec<usize> {
        (0..self.of_vertex.len()).filter(|&v| self.of_vertex[v] == id).collect()
    }
}

pub fn components(g: &SimpleGraph) -> Components {
    bfs_forest(g).components
}

struct Forest {
    components: Components,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    roots: Vec<usize>,
}

fn bfs_forest(g: &SimpleGraph) -> Forest {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut roots = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = roots.len();
        roots.push(root);
        comp[root] = id;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Forest { components: Components { count: roots.len(), of_vertex: comp }, parent, depth, roots }
}

/// A spanning forest together with the oriented non-forest edges (chords)
/// and their fundamental circuits. The circuits form a basis of `H_1`.
#[derive(Debug, Clone)]
pub struct CircuitBasis {
    graph: SimpleGraph,
    components: Components,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    roots: Vec<usize>,
    forest_edges: Vec<(usize, usize)>,
    chords: Vec<(usize, usize)>,
    circuits: Vec<Vec<usize>>,
}

/// Breadth-first spanning forest rooted at the least vertex of each
/// component, neighbours visited in index order. Chords are oriented from
/// lower to higher index and listed in lexicographic order.
pub fn spanning_forest(g: &SimpleGraph) -> CircuitBasis {
    let Forest { components, parent, depth, roots } = bfs_forest(g);
    let mut forest_edges = Vec::new();
    let mut chords = Vec::new();
    for (a, b) in g.edges() {
        if parent[b] == Some(a) || parent[a] == Some(b) {
            forest_edges.push((a, b));
        } else {
            chords.push((a, b));
        }
    }
    let mut basis =
        CircuitBasis { graph: g.clone(), components, parent, depth, roots, forest_edges, chords, circuits: Vec::new() };
    basis.circuits = basis
        .chords
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![u];
            c.extend(basis.forest_path(v, u));
            c
        })
        .collect();
    basis
}

impl CircuitBasis {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    /// Root (least vertex) of each component, indexed by component id.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn forest_edges(&self) -> &[(usize, usize)] {
        &self.forest_edges
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn circuits(&self) -> &[Vec<usize>] {
        &self.circuits
    }

    /// Rank of `H_1`.
    pub fn rank(&self) -> usize {
        self.chords.len()
    }

    pub fn forest_parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Vertices in breadth-first order within each component (roots first).
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.parent.len()).collect();
        order.sort_by_key(|&v| (self.components.of_vertex[v], self.depth[v], v));
        order
    }

    /// Index and sign of the chord `{a, b}` traversed from `a` to `b`.
    pub fn chord_index(&self, a: usize, b: usize) -> Option<(usize, i32)> {
        self.chords.iter().enumerate().find_map(|(i, &(u, v))| {
            if (u, v) == (a, b) {
                Some((i, 1))
            } else if (u, v) == (b, a) {
                Some((i, -1))
            } else {
                None
            }
        })
    }

    /// Vertex path from `from` to `to` inside the forest; `None` across components.
    pub fn try_forest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if self.components.of_vertex[from] != self.components.of_vertex[to] {
            return None;
        }
        let (mut a, mut b) = (from, to);
        let mut up = vec![a];
        let mut down = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a]?;
            up.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b]?;
            down.push(b);
        }
        while a != b {
            a = self.parent[a]?;
            b = self.parent[b]?;
            up.push(a);
            down.push(b);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        Some(up)
    }

    fn forest_path(&self, from: usize, to: usize) -> Vec<usize> {
        self.try_forest_path(from, to).expect("forest path within one component")
    }

    /// Signed multiplicity of each chord in the 1-cycle of a closed path.
    pub fn chord_coordinates(&self, path: &[usize]) -> Result<Vec<i64>> {
        if path.is_empty() || path.first() != path.last() {
            return Err(Error::PathNotClosed);
        }
        let mut coords = vec![0i64; self.chords.len()];
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a >= self.graph.vertex_count() || b >= self.graph.vertex_count() || !self.graph.has_edge(a, b) {
                return Err(Error::NonEdge(a, b));
            }
            if let Some((i, sign)) = self.chord_index(a, b) {
                coords[i] += i64::from(sign);
            }
        }
        Ok(coords)
    }
}

/// A character of `H_1`, given by its nonzero values on the chord basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    values: Vec<Complex64>,
}

impl Character {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| *z == Complex64::new(0.0, 0.0) || !z.is_finite()) {
            return Err(Error::InvalidDatum(format!("character value {i} must be a nonzero finite number")));
        }
        Ok(Self { values })
    }

    pub fn trivial(rank: usize) -> Self {
        Self { values: vec![ONE; rank] }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The dual character `c -> chi(c)^{-1}`.
    pub fn inverse(&self) -> Self {
        Self { values: self.values.iter().map(|z| z.inv()).collect() }
    }
}

/// Value of `chi` on the homology class of a closed path.
pub fn evaluate_character(basis: &CircuitBasis, chi: &Character, path: &[usize]) -> Result<Complex64> {
    if chi.len() != basis.rank() {
        return Err(Error::ChiCountMismatch { expected: basis.rank(), got: chi.len() });
    }
    let coords = basis.chord_coordinates(path)?;
    Ok(coords.iter().zip(chi.values()).filter(|(n, _)| **n != 0).fold(ONE, |acc, (&n, &x)| acc * x.powi(n as i32)))
}
