use std::collections::HashMap;

use crate::encoding::XorsatInstance;
use crate::error::{Error, Result};

/// Variables as vertices, constraint rows as edges.
///
/// Edge ids equal row indices. Among parallel edges (rows with the same
/// unordered support) the lowest id is the representative; only
/// representatives take part in shortest paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    dedup_class: Vec<usize>,
    /// Representative edges only, sorted by neighbour index.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl ConstraintGraph {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` in row order.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Representative edge id of the parallel class of `e`.
    pub fn representative(&self, e: usize) -> usize {
        self.dedup_class[e]
    }

    pub fn is_representative(&self, e: usize) -> bool {
        self.dedup_class[e] == e
    }

    /// `(neighbour, representative edge)` pairs sorted by neighbour.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }
}

pub fn build_graph(x: &XorsatInstance) -> Result<ConstraintGraph> {
    let n = x.n_vars();
    let mut edges = Vec::with_capacity(x.m());
    let mut dedup_class = Vec::with_capacity(x.m());
    let mut first_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut adjacency = vec![Vec::new(); n];
    for (e, &[a, b]) in x.rows().iter().enumerate() {
        if a == b {
            return Err(Error::Unsupported(format!(
                "row {} does not connect two distinct variables",
                e + 1
            )));
        }
        edges.push((a, b));
        let key = (a.min(b), a.max(b));
        let rep = *first_of.entry(key).or_insert(e);
        dedup_class.push(rep);
        if rep == e {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok(ConstraintGraph {
        n_vertices: n,
        edges,
        dedup_class,
        adjacency,
    })
}
