//! Simple undirected graphs and degeneracy (min-degree peeling) orderings.

use std::collections::BTreeSet;

use crate::error::{RecolorError, Result};

pub type Vertex = usize;

/// A simple undirected graph on the vertices `0..n`.
///
/// Neighbour lists are kept sorted; the edge list holds each edge once as
/// `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and endpoints out of range.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(RecolorError::InvalidInput(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(RecolorError::InvalidInput(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(RecolorError::InvalidInput(format!("parallel edge {u}-{v}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: seen.into_iter().collect(),
        })
    }

    /// Builds a graph from per-vertex neighbour lists, which must be symmetric.
    pub fn from_adjacency(adjacency: &[Vec<Vertex>]) -> Result<Self> {
        let n = adjacency.len();
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(RecolorError::InvalidInput(format!(
                        "neighbour {v} of {u} outside 0..{n}"
                    )));
                }
                if !adjacency[v].contains(&u) {
                    return Err(RecolorError::InvalidInput(format!(
                        "adjacency is not symmetric at {u}-{v}"
                    )));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Induced subgraph on the vertices with `keep[v] == true`.
    ///
    /// Returns the subgraph (vertices renumbered in increasing parent id) and
    /// the map from subgraph ids to parent ids.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        let parent: Vec<Vertex> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut child = vec![usize::MAX; self.n()];
        for (i, &p) in parent.iter().enumerate() {
            child[p] = i;
        }
        let adjacency = parent
            .iter()
            .map(|&p| {
                self.adjacency[p]
                    .iter()
                    .filter(|&&q| keep[q])
                    .map(|&q| child[q])
                    .collect()
            })
            .collect::<Vec<Vec<Vertex>>>();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (child[u], child[v]))
            .collect();
        (Graph { adjacency, edges }, parent)
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A proper 2-colouring (sides 0/1) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }
}

/// An ordering `v_1..v_n` of the vertices together with the out-neighbours
/// (neighbours appearing later) of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
    out_neighbours: Vec<Vec<Vertex>>,
    d: usize,
}

impl DegeneracyOrdering {
    /// Wraps an explicit vertex order for `g`.
    pub fn from_order(g: &Graph, order: Vec<Vertex>) -> Result<Self> {
        let n = g.n();
        if order.len() != n {
            return Err(RecolorError::InvalidInput(format!(
                "ordering has {} entries, graph has {n} vertices",
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(RecolorError::InvalidInput(
                    "ordering is not a permutation of the vertices".into(),
                ));
            }
            position[v] = i;
        }
        let out_neighbours: Vec<Vec<Vertex>> = (0..n)
            .map(|v| {
                let mut later: Vec<Vertex> = g
                    .neighbours(v)
                    .iter()
                    .copied()
                    .filter(|&w| position[w] > position[v])
                    .collect();
                later.sort_unstable_by_key(|&w| position[w]);
                later
            })
            .collect();
        let d = out_neighbours.iter().map(Vec::len).max().unwrap_or(0);
        Ok(DegeneracyOrdering {
            order,
            position,
            out_neighbours,
            d,
        })
    }

    /// `v_1..v_n`.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    /// Out-neighbours of `v`, sorted by position.
    pub fn out_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.out_neighbours[v]
    }

    pub fn outdeg(&self, v: Vertex) -> usize {
        self.out_neighbours[v].len()
    }

    /// Maximum out-degree.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True if this ordering was built for a graph with the same vertex count
    /// and the same out-neighbour structure as `g`.
    pub fn belongs_to(&self, g: &Graph) -> bool {
        self.order.len() == g.n()
            && (0..g.n()).all(|v| {
                let later = g
                    .neighbours(v)
                    .iter()
                    .filter(|&&w| self.position[w] > self.position[v])
                    .count();
                later == self.out_neighbours[v].len()
                    && self.out_neighbours[v].iter().all(|&w| g.has_edge(v, w))
            })
    }
}

/// Min-degree peeling order: repeatedly remove a vertex of minimum degree in
/// the remaining graph, lowest id first among ties. The removed vertex comes
/// first in the ordering, so `d()` is the degeneracy of `g`.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    DegeneracyOrdering::from_order(g, order).expect("peeling visits every vertex once")
}

/// Degeneracy of `g`.
pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_ordering(g).d()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn brute_force_degeneracy(g: &Graph) -> usize {
        // Minimum over all orderings of the maximum later-neighbour count.
        fn permute(
            g: &Graph,
            prefix: &mut Vec<Vertex>,
            used: &mut Vec<bool>,
            best: &mut usize,
        ) {
            let n = g.n();
            if prefix.len() == n {
                let ord = DegeneracyOrdering::from_order(g, prefix.clone()).unwrap();
                *best = (*best).min(ord.d());
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    permute(g, prefix, used, best);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut best = usize::MAX;
        permute(g, &mut Vec::new(), &mut vec![false; g.n()], &mut best);
        if g.n() == 0 {
            0
        } else {
            best
        }
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn path_is_one_degenerate() {
        let ord = degeneracy_ordering(&path3());
        assert_eq!(ord.d(), 1);
        for &v in ord.order() {
            assert!(ord.outdeg(v) <= 1);
        }
    }

    #[test]
    fn four_cycle_is_two_degenerate() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(brute_force_degeneracy(&c4), 2);
        assert_eq!(degeneracy_ordering(&c4).d(), 2);
    }

    #[test]
    fn single_and_empty() {
        let one = Graph::empty(1);
        let ord = degeneracy_ordering(&one);
        assert_eq!(ord.order(), &[0]);
        assert_eq!(ord.d(), 0);
        let none = Graph::empty(0);
        assert!(degeneracy_ordering(&none).is_empty());
        assert_eq!(degeneracy(&none), 0);
    }

    #[test]
    fn ties_break_by_lowest_id() {
        // Star centre 0, leaves 1..4: leaves peel first in id order.
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(degeneracy_ordering(&star).order(), &[1, 2, 3, 0, 4]);
    }

    #[test]
    fn peeling_matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(),
            Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(degeneracy(g), brute_force_degeneracy(g));
        }
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, parent) = g.induced(&[false, true, true, true]);
        assert_eq!(parent, vec![1, 2, 3]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(g.bipartition().is_some());
        let tri = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(tri.bipartition().is_none());
    }
}
