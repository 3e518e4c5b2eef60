use std::collections::VecDeque;

use super::graph::ConstraintGraph;

/// Marks vertex pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// A shortest path between two vertices, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEntry {
    pub u: usize,
    pub v: usize,
    /// Edge ids walked from `u` to `v`.
    pub edges: Vec<usize>,
}

impl PathEntry {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Ordered shortest-path table over all connected vertex pairs.
///
/// Entries are sorted by `(length, u, v)`. Each path is the lexicographically
/// smallest vertex sequence among the shortest `u`-`v` paths that use only
/// representative edges.
#[derive(Clone, Debug)]
pub struct PathList {
    n_vertices: usize,
    entries: Vec<PathEntry>,
    dist: Vec<u32>,
    /// Entry index per ordered vertex pair, `usize::MAX` when absent.
    index: Vec<usize>,
}

impl PathList {
    pub fn entries(&self) -> &[PathEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Graph distance, `None` across components.
    pub fn distance(&self, a: usize, b: usize) -> Option<u32> {
        let d = self.dist[a * self.n_vertices + b];
        (d != UNREACHABLE).then_some(d)
    }

    /// Position in the ordered list of the path joining `a` and `b`.
    pub fn position(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.index[a * self.n_vertices + b];
        (i != usize::MAX).then_some(i)
    }

    pub fn path(&self, a: usize, b: usize) -> Option<&PathEntry> {
        self.position(a, b).map(|i| &self.entries[i])
    }
}

fn bfs(g: &ConstraintGraph, src: usize, out: &mut [u32]) {
    out.fill(UNREACHABLE);
    out[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for &(w, _) in g.neighbours(u) {
            if out[w] == UNREACHABLE {
                out[w] = out[u] + 1;
                q.push_back(w);
            }
        }
    }
}

/// All-pairs shortest paths by a breadth-first search from every vertex.
pub fn build_path_list(g: &ConstraintGraph) -> PathList {
    let n = g.n_vertices();
    let mut dist = vec![UNREACHABLE; n * n];
    for src in 0..n {
        bfs(g, src, &mut dist[src * n..(src + 1) * n]);
    }

    let mut entries = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if dist[u * n + v] == UNREACHABLE {
                continue;
            }
            // Walk from u towards v, always taking the smallest neighbour
            // that is one step closer to v.
            let to_v = &dist[v * n..(v + 1) * n];
            let mut edges = Vec::with_capacity(to_v[u] as usize);
            let mut cur = u;
            while cur != v {
                let &(next, e) = g
                    .neighbours(cur)
                    .iter()
                    .find(|&&(w, _)| to_v[w] + 1 == to_v[cur])
                    .expect("BFS distances admit a descending neighbour");
                edges.push(e);
                cur = next;
            }
            entries.push(PathEntry { u, v, edges });
        }
    }
    entries.sort_by_key(|p| (p.len(), p.u, p.v));

    let mut index = vec![usize::MAX; n * n];
    for (i, p) in entries.iter().enumerate() {
        index[p.u * n + p.v] = i;
        index[p.v * n + p.u] = i;
    }
    PathList {
        n_vertices: n,
        entries,
        dist,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::graph::build_graph;
    use crate::encoding::XorsatInstance;

    fn graph(n: usize, rows: &[[usize; 2]]) -> ConstraintGraph {
        let x = XorsatInstance::new(n, rows.to_vec(), vec![false; rows.len()]).unwrap();
        build_graph(&x).unwrap()
    }

    #[test]
    fn path_graph() {
        let p = build_path_list(&graph(3, &[[0, 1], [1, 2]]));
        let edges: Vec<_> = p.entries().iter().map(|e| e.edges.clone()).collect();
        assert_eq!(edges, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(p.distance(0, 2), Some(2));
    }

    #[test]
    fn triangle_has_only_unit_paths() {
        let p = build_path_list(&graph(3, &[[0, 1], [1, 2], [2, 0]]));
        assert_eq!(p.len(), 3);
        assert!(p.entries().iter().all(|e| e.len() == 1));
    }

    #[test]
    fn lexicographic_tie_break() {
        // square 0-1-3-2-0: two shortest paths from 0 to 3, via 1 and via 2
        let p = build_path_list(&graph(4, &[[0, 2], [2, 3], [0, 1], [1, 3]]));
        assert_eq!(p.path(0, 3).unwrap().edges, vec![2, 3]);
        assert_eq!(p.path(1, 2).unwrap().edges, vec![2, 0]);
    }

    #[test]
    fn components_are_kept_apart() {
        let p = build_path_list(&graph(4, &[[0, 1], [2, 3]]));
        assert_eq!(p.len(), 2);
        assert_eq!(p.distance(0, 2), None);
        assert!(p.path(1, 3).is_none());
    }
}
