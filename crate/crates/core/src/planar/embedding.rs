//! Rotation systems, face traversal and the Euler weight audit.

use serde::Serialize;

use crate::error::{RecolorError, Result};
use crate::graph::{Graph, Vertex};

/// A graph with a cyclic neighbour order at every vertex, and the faces it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    faces: Vec<Vec<Vertex>>,
}

impl Embedding {
    /// Checks that `rotation[v]` permutes the neighbours of `v` and traces the faces.
    pub fn new(graph: Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(RecolorError::InvalidInput(format!(
                "rotation has {} entries, graph has {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbours(v) {
                return Err(RecolorError::InvalidInput(format!(
                    "rotation of vertex {v} is not a permutation of its neighbours"
                )));
            }
        }
        let faces = trace_faces(&graph, &rotation);
        Ok(Embedding { graph, rotation, faces })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn rotation_of(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    /// Each face as the cyclic list of dart tails along its walk.
    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Neighbour following `u` in the rotation of `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("u is a neighbour of v");
        rot[(i + 1) % rot.len()]
    }
}

/// Face walks: after arriving at `v` from `u`, leave towards the neighbour
/// following `u` in the rotation of `v`.
fn trace_faces(g: &Graph, rotation: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + rotation[v].len();
    }
    // pos[v][k]: position in rotation[v] of the k-th smallest neighbour.
    let pos: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut p = vec![0; rotation[v].len()];
            for (i, &u) in rotation[v].iter().enumerate() {
                p[g.neighbours(v).binary_search(&u).unwrap()] = i;
            }
            p
        })
        .collect();
    let position = |v: Vertex, u: Vertex| pos[v][g.neighbours(v).binary_search(&u).unwrap()];
    let mut used = vec![false; offset[n]];
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..rotation[v].len() {
            if used[offset[v] + i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut j) = (v, i);
            while !used[offset[a] + j] {
                used[offset[a] + j] = true;
                walk.push(a);
                let b = rotation[a][j];
                let back = position(b, a);
                j = (back + 1) % rotation[b].len();
                a = b;
            }
            faces.push(walk);
        }
    }
    faces
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentAudit {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// `n - |E| + |F|`.
    pub euler: i64,
    /// `sum (deg(v) - 4) + sum (size(f) - 4)`.
    pub weight: i64,
}

impl ComponentAudit {
    pub fn ok(&self) -> bool {
        self.euler == 2 && self.weight == -8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub components: Vec<ComponentAudit>,
    /// Total weight, equal to `4(|E| - n - |F|)`.
    pub weight: i64,
    pub ok: bool,
}

/// Per-component Euler characteristic and discharging weight.
/// An isolated vertex counts as one face of size 0.
pub fn audit(emb: &Embedding) -> AuditReport {
    let g = emb.graph();
    let comps = g.components();
    let mut comp_of = vec![0usize; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut out: Vec<ComponentAudit> = comps
        .iter()
        .map(|c| {
            let deg: usize = c.iter().map(|&v| g.degree(v)).sum();
            ComponentAudit {
                vertices: c.len(),
                edges: deg / 2,
                faces: 0,
                euler: 0,
                weight: c.iter().map(|&v| g.degree(v) as i64 - 4).sum(),
            }
        })
        .collect();
    for f in emb.faces() {
        let a = &mut out[comp_of[f[0]]];
        a.faces += 1;
        a.weight += f.len() as i64 - 4;
    }
    for a in &mut out {
        if a.edges == 0 {
            a.faces = 1;
            a.weight -= 4;
        }
        a.euler = a.vertices as i64 - a.edges as i64 + a.faces as i64;
    }
    let weight = out.iter().map(|a| a.weight).sum();
    let ok = out.iter().all(ComponentAudit::ok);
    AuditReport { components: out, weight, ok }
}

/// True iff every component satisfies Euler's formula and has weight −8.
pub fn euler_audit(emb: &Embedding) -> bool {
    audit(emb).ok
}
