//! The two reductions of the planar bipartite induction: deleting a vertex
//! and merging the opposite corners of a 4-face.

use crate::error::{invariant, RecolorError, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Colour, Colouring};
use crate::planar::config::Configuration;
use crate::planar::embedding::{audit, Embedding};
use crate::planar::PLANAR_COLOURS;
use crate::sequence::{RecoloringSequence, Step};

/// Correspondence between a reduced graph and the graph it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    /// New id of every old vertex; the removed vertex maps to `None`, or to
    /// the merged vertex after a merge.
    pub old_to_new: Vec<Option<Vertex>>,
    /// Old ids of every new vertex; the merged vertex lists both originals.
    pub new_to_old: Vec<Vec<Vertex>>,
}

impl VertexMap {
    fn dropping(n: usize, gone: Vertex, onto: Option<Vertex>) -> Self {
        let shift = |i: Vertex| if i > gone { i - 1 } else { i };
        let old_to_new: Vec<Option<Vertex>> = (0..n)
            .map(|i| if i == gone { onto.map(shift) } else { Some(shift(i)) })
            .collect();
        let mut new_to_old = vec![Vec::new(); n - 1];
        for (i, &t) in old_to_new.iter().enumerate() {
            if let Some(t) = t {
                new_to_old[t].push(i);
            }
        }
        VertexMap { old_to_new, new_to_old }
    }

    /// Colouring of the reduced graph; a merged vertex takes the colour of its
    /// first original.
    pub fn project(&self, c: &Colouring) -> Colouring {
        Colouring(self.new_to_old.iter().map(|olds| c[olds[0]]).collect())
    }

    /// Replays a reduced sequence on the original graph, each step on a merged
    /// vertex becoming one step per original.
    pub fn lift(&self, seq: &RecoloringSequence) -> RecoloringSequence {
        seq.iter()
            .flat_map(|s| self.new_to_old[s.v].iter().map(move |&o| Step::new(o, s.c)))
            .collect()
    }
}

fn relabel(map: &VertexMap, rotation: Vec<Vec<Vertex>>) -> Result<Embedding> {
    let rot: Vec<Vec<Vertex>> = map
        .new_to_old
        .iter()
        .map(|olds| {
            rotation[olds[0]]
                .iter()
                .map(|&u| map.old_to_new[u].expect("removed vertex left in a rotation"))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for (x, r) in rot.iter().enumerate() {
        edges.extend(r.iter().filter(|&&y| x < y).map(|&y| (x, y)));
    }
    let g = Graph::new(rot.len(), edges)?;
    Embedding::new(g, rot)
}

/// `emb` with `v` deleted; ids above `v` shift down by one.
pub fn remove_vertex(emb: &Embedding, v: Vertex) -> Result<(Embedding, VertexMap)> {
    let n = emb.graph().n();
    if v >= n {
        return Err(RecolorError::InvalidInput(format!("vertex {v} out of range")));
    }
    let map = VertexMap::dropping(n, v, None);
    let rotation = emb
        .rotation()
        .iter()
        .map(|r| r.iter().copied().filter(|&u| u != v).collect())
        .collect();
    Ok((relabel(&map, rotation)?, map))
}

/// Contracts `v` and `w` across their 4-face into `x` (which takes `v`'s
/// place); parallel edges to common neighbours keep only the copy at `v`.
pub fn merge(emb: &Embedding, config: &Configuration) -> Result<(Embedding, VertexMap)> {
    let Configuration::CaseII { v, w, v1, v2, .. } = *config else {
        return Err(RecolorError::InvalidInput("merge needs a CaseII configuration".into()));
    };
    let g = emb.graph();
    invariant!(!g.has_edge(v, w), "merged vertices {v} and {w} are adjacent");
    let n = g.n();
    let rv = emb.rotation_of(v);
    let rw = emb.rotation_of(w);
    let iv = rv.iter().position(|&y| y == v1).expect("v1 is a neighbour of v");
    let iw = rw.iter().position(|&y| y == v2).expect("v2 is a neighbour of w");
    let mut rx: Vec<Vertex> = Vec::with_capacity(rv.len() + rw.len());
    for k in 0..rv.len() {
        rx.push(rv[(iv + k) % rv.len()]);
    }
    invariant!(rx.last() == Some(&v2), "face corners are not consecutive around {v}");
    for k in 1..rw.len() {
        let y = rw[(iw + k) % rw.len()];
        if !rx.contains(&y) {
            rx.push(y);
        }
    }
    let common: Vec<bool> = (0..n).map(|y| g.has_edge(v, y) && g.has_edge(w, y)).collect();
    let mut rotation: Vec<Vec<Vertex>> = emb.rotation().to_vec();
    for y in g.neighbours(w).iter().copied() {
        if common[y] {
            rotation[y].retain(|&z| z != w);
        } else {
            for z in rotation[y].iter_mut() {
                if *z == w {
                    *z = v;
                }
            }
        }
    }
    rotation[w] = rx.clone();
    rotation[v] = rx;
    let map = VertexMap::dropping(n, w, Some(v));
    let out = relabel(&map, rotation)?;
    invariant!(out.graph().bipartition().is_some(), "merge broke bipartiteness");
    invariant!(audit(&out).ok, "merge produced an embedding failing the Euler audit");
    Ok((out, map))
}

fn smallest_free(g: &Graph, c: &Colouring, v: Vertex, avoid: Colour) -> Option<Colour> {
    (0..PLANAR_COLOURS).find(|&x| x != avoid && x != c[v] && g.neighbours(v).iter().all(|&y| c[y] != x))
}

/// Reaches a colouring giving `v` and `w` the same colour, moving every
/// vertex at most twice.
pub fn equalize_vw(
    emb: &Embedding,
    config: &Configuration,
    alpha: &Colouring,
) -> Result<(Colouring, RecoloringSequence)> {
    let Configuration::CaseII { v, u, w, .. } = *config else {
        return Err(RecolorError::InvalidInput("equalize needs a CaseII configuration".into()));
    };
    let g = emb.graph();
    let mut cur = alpha.clone();
    let mut seq = RecoloringSequence::new();
    let target = alpha[w];
    if alpha[v] == target {
        return Ok((cur, seq));
    }
    if alpha[u] == target {
        let c = (0..PLANAR_COLOURS)
            .find(|&x| {
                x != target && g.neighbours(u).iter().all(|&y| g.degree(y) <= 3 || alpha[y] != x)
            })
            .ok_or_else(|| {
                RecolorError::Precondition(format!("vertex {u} has too many high-degree neighbours"))
            })?;
        for &y in g.neighbours(u) {
            if g.degree(y) <= 3 && cur[y] == c {
                let to = smallest_free(g, &cur, y, c)
                    .ok_or_else(|| RecolorError::Invariant(format!("no free colour for vertex {y}")))?;
                seq.push(y, to);
                cur[y] = to;
            }
        }
        seq.push(u, c);
        cur[u] = c;
    }
    seq.push(v, target);
    cur[v] = target;
    Ok((cur, seq))
}
