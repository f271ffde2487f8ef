//! List assignments, proper colourings, greedy colouring and restriction to
//! induced subgraphs with frozen colours.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{RecolorError, Result};
use crate::graph::{degeneracy_ordering, DegeneracyOrdering, Graph, Vertex};
use crate::sequence::RecoloringSequence;

pub type Colour = u32;

/// A colour per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colouring(pub Vec<Colour>);

impl Colouring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.0
    }
}

impl std::ops::Index<Vertex> for Colouring {
    type Output = Colour;
    fn index(&self, v: Vertex) -> &Colour {
        &self.0[v]
    }
}

impl std::ops::IndexMut<Vertex> for Colouring {
    fn index_mut(&mut self, v: Vertex) -> &mut Colour {
        &mut self.0[v]
    }
}

impl From<Vec<Colour>> for Colouring {
    fn from(v: Vec<Colour>) -> Self {
        Colouring(v)
    }
}

/// True iff no edge of `g` is monochromatic under `c`.
pub fn is_proper(g: &Graph, c: &Colouring) -> Result<bool> {
    check_length(g, c)?;
    Ok(first_conflict(g, c).is_none())
}

pub(crate) fn check_length(g: &Graph, c: &Colouring) -> Result<()> {
    if c.len() != g.n() {
        return Err(RecolorError::ColouringLength {
            expected: g.n(),
            got: c.len(),
        });
    }
    Ok(())
}

fn first_conflict(g: &Graph, c: &Colouring) -> Option<(Vertex, Vertex)> {
    g.edges().iter().copied().find(|&(u, v)| c[u] == c[v])
}

/// A graph with a vertex ordering, per-vertex colour lists and slack `a`.
///
/// Lists are stored sorted and deduplicated. The total colour count `k` is
/// always derived from the lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListInstance {
    graph: Graph,
    ordering: DegeneracyOrdering,
    lists: Vec<Vec<Colour>>,
    a: usize,
}

impl ListInstance {
    pub fn new(
        graph: Graph,
        ordering: DegeneracyOrdering,
        lists: Vec<Vec<Colour>>,
        a: usize,
    ) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(RecolorError::InvalidInput(format!(
                "{} lists for {} vertices",
                lists.len(),
                graph.n()
            )));
        }
        if !ordering.belongs_to(&graph) {
            return Err(RecolorError::InvalidInput(
                "ordering does not belong to the graph".into(),
            ));
        }
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Ok(ListInstance {
            graph,
            ordering,
            lists,
            a,
        })
    }

    /// Instance using the min-degree peeling order of `graph`.
    pub fn with_peeling(graph: Graph, lists: Vec<Vec<Colour>>, a: usize) -> Result<Self> {
        let ordering = degeneracy_ordering(&graph);
        ListInstance::new(graph, ordering, lists, a)
    }

    /// Every list is `{0..k-1}`.
    pub fn uniform(graph: Graph, k: usize, a: usize) -> Result<Self> {
        let lists = vec![(0..k as Colour).collect(); graph.n()];
        ListInstance::with_peeling(graph, lists, a)
    }

    /// Classical `k`-colouring as a list instance: full lists and
    /// `a = k - 1 - d` (clamped at 0) where `d` is the maximum out-degree of
    /// the peeling order.
    pub fn classical(graph: Graph, k: usize) -> Result<Self> {
        let ordering = degeneracy_ordering(&graph);
        let a = k.saturating_sub(1 + ordering.d());
        let lists = vec![(0..k as Colour).collect(); graph.n()];
        ListInstance::new(graph, ordering, lists, a)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ordering(&self) -> &DegeneracyOrdering {
        &self.ordering
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn with_a(mut self, a: usize) -> Self {
        self.a = a;
        self
    }

    pub fn list(&self, v: Vertex) -> &[Colour] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Colour>] {
        &self.lists
    }

    pub fn allows(&self, v: Vertex, c: Colour) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// Sorted union of all lists.
    pub fn colours(&self) -> Vec<Colour> {
        self.lists
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Total number of colours, `|union of lists|`.
    pub fn k(&self) -> usize {
        self.colours().len()
    }

    /// Same graph and ordering, with every colour of `remove` dropped from every list.
    pub fn without_colours(&self, remove: &BTreeSet<Colour>) -> ListInstance {
        let lists = self
            .lists
            .iter()
            .map(|l| l.iter().copied().filter(|c| !remove.contains(c)).collect())
            .collect();
        ListInstance {
            lists,
            ..self.clone()
        }
    }

    /// Same graph and ordering, lists intersected with `keep`.
    pub fn only_colours(&self, keep: &BTreeSet<Colour>) -> ListInstance {
        let lists = self
            .lists
            .iter()
            .map(|l| l.iter().copied().filter(|c| keep.contains(c)).collect())
            .collect();
        ListInstance {
            lists,
            ..self.clone()
        }
    }

    /// Checks that `c` is a proper colouring respecting the lists.
    pub fn check_colouring(&self, c: &Colouring) -> Result<()> {
        check_length(&self.graph, c)?;
        for v in 0..self.n() {
            if !self.allows(v, c[v]) {
                return Err(RecolorError::OffList {
                    vertex: v,
                    colour: c[v],
                });
            }
        }
        if let Some((u, v)) = first_conflict(&self.graph, c) {
            return Err(RecolorError::Improper(u, v));
        }
        Ok(())
    }

    pub fn is_list_colouring(&self, c: &Colouring) -> bool {
        self.check_colouring(c).is_ok()
    }

    /// First vertex violating `|L(v)| >= outdeg(v) + a + 1`, if any.
    pub fn infeasible_vertex(&self) -> Option<Vertex> {
        (0..self.n()).find(|&v| self.lists[v].len() < self.ordering.outdeg(v) + self.a + 1)
    }
}

/// True iff `|L(v)| >= outdeg(v) + a + 1` for every vertex.
pub fn check_feasible(inst: &ListInstance) -> bool {
    inst.infeasible_vertex().is_none()
}

/// First-fit colouring from `v_n` down to `v_1`: each vertex takes the first
/// colour of `preference` in its list not used by an already coloured
/// neighbour. Only out-neighbours are coloured when a vertex is reached.
pub fn greedy_colouring(inst: &ListInstance, preference: &[Colour]) -> Result<Colouring> {
    let rank = preference_rank(inst, preference)?;
    let n = inst.n();
    let mut colour: Vec<Option<Colour>> = vec![None; n];
    for &v in inst.ordering().order().iter().rev() {
        let taken: BTreeSet<Colour> = inst
            .graph()
            .neighbours(v)
            .iter()
            .filter_map(|&w| colour[w])
            .collect();
        let chosen = inst
            .list(v)
            .iter()
            .copied()
            .filter(|c| !taken.contains(c))
            .min_by_key(|c| rank(*c))
            .ok_or(RecolorError::NoAdmissibleColour { vertex: v })?;
        colour[v] = Some(chosen);
    }
    Ok(Colouring(colour.into_iter().map(|c| c.unwrap()).collect()))
}

fn preference_rank<'p>(
    inst: &ListInstance,
    preference: &'p [Colour],
) -> Result<impl Fn(Colour) -> usize + 'p> {
    let mut seen = BTreeSet::new();
    for &c in preference {
        if !seen.insert(c) {
            return Err(RecolorError::InvalidInput(format!(
                "colour {c} repeated in preference order"
            )));
        }
    }
    if let Some(missing) = inst.colours().into_iter().find(|c| !seen.contains(c)) {
        return Err(RecolorError::InvalidInput(format!(
            "preference order misses colour {missing}"
        )));
    }
    Ok(move |c: Colour| preference.iter().position(|&p| p == c).unwrap())
}

/// An induced sub-instance together with the vertex correspondence to its parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub instance: ListInstance,
    parent: Vec<Vertex>,
}

impl Restriction {
    /// Parent id of each sub-instance vertex.
    pub fn parent_ids(&self) -> &[Vertex] {
        &self.parent
    }

    pub fn to_parent(&self, v: Vertex) -> Vertex {
        self.parent[v]
    }

    /// Colouring of the parent restricted to the kept vertices.
    pub fn project(&self, c: &Colouring) -> Colouring {
        Colouring(self.parent.iter().map(|&p| c[p]).collect())
    }

    /// Renames a sub-instance sequence into parent ids. Deleted vertices
    /// stay frozen, so the lifted sequence is valid in the parent.
    pub fn lift(&self, seq: &RecoloringSequence) -> RecoloringSequence {
        seq.map_vertices(|v| self.parent[v])
    }

    /// Writes the kept vertices' colours from `sub` into `parent_colouring`.
    pub fn embed(&self, sub: &Colouring, parent_colouring: &mut Colouring) {
        for (i, &p) in self.parent.iter().enumerate() {
            parent_colouring[p] = sub[i];
        }
    }
}

/// Induced sub-instance on `keep`, each kept vertex's list stripped of the
/// colours `c` assigns to its deleted neighbours. The vertex order is the
/// parent order restricted to `keep`.
pub fn restrict_instance(inst: &ListInstance, c: &Colouring, keep: &[bool]) -> Result<Restriction> {
    check_length(inst.graph(), c)?;
    if keep.len() != inst.n() {
        return Err(RecolorError::InvalidInput(format!(
            "keep mask has {} entries, graph has {} vertices",
            keep.len(),
            inst.n()
        )));
    }
    let (sub, parent) = inst.graph().induced(keep);
    let mut child = vec![usize::MAX; inst.n()];
    for (i, &p) in parent.iter().enumerate() {
        child[p] = i;
    }
    let order: Vec<Vertex> = inst
        .ordering()
        .order()
        .iter()
        .filter(|&&v| keep[v])
        .map(|&v| child[v])
        .collect();
    let ordering = DegeneracyOrdering::from_order(&sub, order)?;
    let lists = parent
        .iter()
        .map(|&p| {
            let frozen: BTreeSet<Colour> = inst
                .graph()
                .neighbours(p)
                .iter()
                .filter(|&&q| !keep[q])
                .map(|&q| c[q])
                .collect();
            inst.list(p)
                .iter()
                .copied()
                .filter(|x| !frozen.contains(x))
                .collect()
        })
        .collect();
    Ok(Restriction {
        instance: ListInstance::new(sub, ordering, lists, inst.a())?,
        parent,
    })
}

/// Convenience mask builder.
pub fn mask(n: usize, keep: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in keep {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Graph {
        Graph::new(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn properness() {
        assert!(!is_proper(&edge(), &Colouring(vec![1, 1])).unwrap());
        assert!(is_proper(&edge(), &Colouring(vec![1, 2])).unwrap());
        assert!(is_proper(&Graph::empty(3), &Colouring(vec![0, 0, 0])).unwrap());
        assert!(matches!(
            is_proper(&edge(), &Colouring(vec![1])),
            Err(RecolorError::ColouringLength { .. })
        ));
    }

    #[test]
    fn feasibility_examples() {
        let single = ListInstance::with_peeling(Graph::empty(1), vec![vec![1, 2]], 1).unwrap();
        assert!(check_feasible(&single));

        let g = edge();
        let ord = DegeneracyOrdering::from_order(&g, vec![0, 1]).unwrap();
        let inst = ListInstance::new(g, ord, vec![vec![1, 2], vec![1, 2]], 1).unwrap();
        assert!(!check_feasible(&inst));
        assert_eq!(inst.infeasible_vertex(), Some(0));

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = ListInstance::with_peeling(p3, vec![vec![1, 2, 3]; 3], 1).unwrap();
        assert!(check_feasible(&inst));
    }

    #[test]
    fn greedy_on_path() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let ord = DegeneracyOrdering::from_order(&p3, vec![0, 1, 2]).unwrap();
        let inst = ListInstance::new(p3, ord, vec![vec![1, 2, 3]; 3], 1).unwrap();
        let c = greedy_colouring(&inst, &[1, 2, 3]).unwrap();
        assert_eq!(c.0, vec![1, 2, 1]);
    }

    #[test]
    fn greedy_single_vertex_skips_missing_colours() {
        let inst = ListInstance::with_peeling(Graph::empty(1), vec![vec![2, 5]], 1).unwrap();
        let c = greedy_colouring(&inst, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.0, vec![2]);
    }

    #[test]
    fn greedy_avoids_suffix_of_size_a() {
        let g = edge();
        let ord = DegeneracyOrdering::from_order(&g, vec![0, 1]).unwrap();
        let inst = ListInstance::new(g, ord, vec![vec![1, 2, 3]; 2], 1).unwrap();
        let c = greedy_colouring(&inst, &[1, 2, 3]).unwrap();
        // v1 (processed first) takes 1, v0 takes 2.
        assert_eq!(c.0, vec![2, 1]);
        assert!(!c.0.contains(&3));
    }

    #[test]
    fn greedy_rejects_bad_preference() {
        let inst = ListInstance::uniform(edge(), 3, 1).unwrap();
        assert!(greedy_colouring(&inst, &[0, 1]).is_err());
        assert!(greedy_colouring(&inst, &[0, 1, 1, 2]).is_err());
    }

    #[test]
    fn greedy_reports_infeasible_vertex() {
        let inst = ListInstance::with_peeling(edge(), vec![vec![1], vec![1]], 0).unwrap();
        assert!(matches!(
            greedy_colouring(&inst, &[1]),
            Err(RecolorError::NoAdmissibleColour { .. })
        ));
    }

    #[test]
    fn restriction_identity_and_edge() {
        let inst = ListInstance::with_peeling(edge(), vec![vec![1, 2, 3]; 2], 1).unwrap();
        let c = Colouring(vec![1, 2]);
        let all = restrict_instance(&inst, &c, &[true, true]).unwrap();
        assert_eq!(all.instance, inst);

        let only_u = restrict_instance(&inst, &c, &[true, false]).unwrap();
        assert_eq!(only_u.instance.list(0), &[1, 3]);
        assert_eq!(only_u.parent_ids(), &[0]);
    }

    #[test]
    fn restriction_star_leaves() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = ListInstance::with_peeling(star, vec![vec![1, 2, 3]; 4], 1).unwrap();
        let c = Colouring(vec![1, 2, 3, 2]);
        let r = restrict_instance(&inst, &c, &[false, true, true, true]).unwrap();
        for v in 0..3 {
            assert_eq!(r.instance.list(v), &[2, 3]);
        }
    }
}
