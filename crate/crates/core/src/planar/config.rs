//! The two reducible configurations every planar bipartite graph contains.

use serde::Serialize;

use crate::error::{RecolorError, Result};
use crate::graph::Vertex;
use crate::planar::embedding::Embedding;
use crate::planar::levels::levels;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Configuration {
    /// A vertex of degree at most 2.
    CaseI { v: Vertex },
    /// `v` of degree 3 with all neighbours of level at most 2, on the 4-face
    /// `face = (v, v1, w, v2)`; `u` is the neighbour of `v` off the face.
    CaseII {
        v: Vertex,
        u: Vertex,
        w: Vertex,
        v1: Vertex,
        v2: Vertex,
        face: usize,
    },
}

/// Lowest-id vertex of degree at most 2, else the lowest qualifying degree-3
/// vertex on its lowest-numbered 4-face.
pub fn find_configuration(emb: &Embedding) -> Result<Configuration> {
    let g = emb.graph();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) <= 2) {
        return Ok(Configuration::CaseI { v });
    }
    let lv = levels(g)?;
    let mut faces_at: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, f) in emb.faces().iter().enumerate() {
        if f.len() == 4 {
            for &x in f {
                if faces_at[x].last() != Some(&i) {
                    faces_at[x].push(i);
                }
            }
        }
    }
    for (v, at) in faces_at.iter().enumerate() {
        if g.degree(v) != 3 || g.neighbours(v).iter().any(|&x| lv.level(x) > 2) {
            continue;
        }
        for &fi in at {
            if let Some(c) = case_two(emb, v, fi) {
                return Ok(c);
            }
        }
    }
    Err(RecolorError::Invariant(
        "no reducible configuration found in a graph claimed planar bipartite".into(),
    ))
}

fn case_two(emb: &Embedding, v: Vertex, face: usize) -> Option<Configuration> {
    let g = emb.graph();
    let f = &emb.faces()[face];
    let i = f.iter().position(|&x| x == v)?;
    let (v1, w, v2) = (f[(i + 1) % 4], f[(i + 2) % 4], f[(i + 3) % 4]);
    if v1 == v2 || w == v || g.has_edge(v, w) || !g.has_edge(v, v1) || !g.has_edge(v, v2) {
        return None;
    }
    let u = *g.neighbours(v).iter().find(|&&x| x != v1 && x != v2)?;
    if u == w {
        return None;
    }
    Some(Configuration::CaseII { v, u, w, v1, v2, face })
}
