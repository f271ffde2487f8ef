//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 seeded with the spec's `seed`, so the
//! same spec yields the same instance on every platform.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{RecolorError, Result};
use crate::graph::{degeneracy_ordering, Graph, Vertex};
use crate::instance::{greedy_colouring, Colour, Colouring, ListInstance};
use crate::planar::embedding::Embedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path,
    Cycle,
    Tree,
    Grid { rows: usize, cols: usize },
    RandomDegenerate { d: usize },
    /// Induced subgraphs of grids with subdivided edges and nested faces.
    RandomPlanarBipartite,
    /// The cube with squares nested into random faces; minimum degree 3.
    Quadrangulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "kebab-case")]
pub enum ListPolicy {
    /// Every list is `0..k`; `a = k - 1 - d`, clamped at 0.
    Classical { k: usize },
    /// Random subsets of `0..palette` of size `outdeg(v) + a + 1 + extra`.
    Random { palette: usize, extra: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    /// Vertex count; ignored by `Grid`, a target for the planar families.
    pub n: usize,
    pub seed: u64,
    pub lists: ListPolicy,
    /// Slack of the `Random` list policy.
    pub a: usize,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph of the family, with a planar rotation system where the family has one.
pub fn gen_graph(spec: &GenSpec) -> Result<(Graph, Option<Embedding>)> {
    let mut r = rng(spec.seed);
    let n = spec.n;
    let embedded = |e: Embedding| (e.graph().clone(), Some(e));
    Ok(match spec.family {
        Family::Path => embedded(trivial_rotation(Graph::new(n, (1..n).map(|i| (i - 1, i)))?)?),
        Family::Cycle => {
            if n < 3 {
                return Err(RecolorError::InvalidInput("a cycle needs at least 3 vertices".into()));
            }
            embedded(trivial_rotation(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?)?)
        }
        Family::Tree => {
            let edges: Vec<_> = (1..n).map(|i| (r.gen_range(0..i), i)).collect();
            embedded(trivial_rotation(Graph::new(n, edges)?)?)
        }
        Family::Grid { rows, cols } => embedded(grid(rows, cols)?),
        Family::RandomDegenerate { d } => {
            let mut edges = Vec::new();
            for i in 1..n {
                let picks = rand::seq::index::sample(&mut r, i, d.min(i));
                edges.extend(picks.into_iter().map(|j| (j, i)));
            }
            (Graph::new(n, edges)?, None)
        }
        Family::RandomPlanarBipartite => embedded(random_planar_bipartite(n, &mut r)?),
        Family::Quadrangulation => embedded(quadrangulation(n, &mut r)?),
    })
}

/// Graph plus list assignment.
pub fn gen_instance(spec: &GenSpec) -> Result<(ListInstance, Option<Embedding>)> {
    let (g, emb) = gen_graph(spec)?;
    let inst = match spec.lists {
        ListPolicy::Classical { k } => ListInstance::classical(g, k)?,
        ListPolicy::Random { palette, extra } => {
            let mut r = rng(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
            let ord = degeneracy_ordering(&g);
            let palette_vec: Vec<Colour> = (0..palette as Colour).collect();
            let mut lists = Vec::with_capacity(g.n());
            for v in 0..g.n() {
                let size = ord.outdeg(v) + spec.a + 1 + extra;
                if size > palette {
                    return Err(RecolorError::InvalidInput(format!(
                        "palette of {palette} colours cannot give vertex {v} a list of {size}"
                    )));
                }
                let mut l: Vec<Colour> = palette_vec.choose_multiple(&mut r, size).copied().collect();
                l.sort_unstable();
                lists.push(l);
            }
            ListInstance::new(g, ord, lists, spec.a)?
        }
    };
    Ok((inst, emb))
}

/// Greedy colouring under a seeded random preference order.
pub fn gen_colouring(inst: &ListInstance, seed: u64) -> Result<Colouring> {
    let mut pref = inst.colours();
    pref.shuffle(&mut rng(seed));
    greedy_colouring(inst, &pref)
}

/// Random walk of `steps` attempted single-vertex recolourings from `c`.
pub fn scramble(inst: &ListInstance, c: &Colouring, steps: usize, seed: u64) -> Colouring {
    let mut r = rng(seed);
    let mut cur = c.clone();
    let n = inst.n();
    if n == 0 {
        return cur;
    }
    let g = inst.graph();
    for _ in 0..steps {
        let v = r.gen_range(0..n);
        let options: Vec<Colour> = inst
            .list(v)
            .iter()
            .copied()
            .filter(|&x| x != cur[v] && g.neighbours(v).iter().all(|&w| cur[w] != x))
            .collect();
        if let Some(&x) = options.choose(&mut r) {
            cur[v] = x;
        }
    }
    cur
}

/// Graphs of maximum degree 2 or forests: every rotation is planar.
fn trivial_rotation(g: Graph) -> Result<Embedding> {
    let rot = (0..g.n()).map(|v| g.neighbours(v).to_vec()).collect();
    Embedding::new(g, rot)
}

/// Rotation of a straight-line drawing: neighbours by increasing angle.
pub fn rotation_from_coords(g: &Graph, xy: &[(f64, f64)]) -> Vec<Vec<Vertex>> {
    (0..g.n())
        .map(|v| {
            let mut r = g.neighbours(v).to_vec();
            let angle = |u: Vertex| (xy[u].1 - xy[v].1).atan2(xy[u].0 - xy[v].0);
            r.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            r
        })
        .collect()
}

/// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Embedding> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let g = Graph::new(rows * cols, edges)?;
    let xy: Vec<(f64, f64)> = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    let rot = rotation_from_coords(&g, &xy);
    Embedding::new(g, rot)
}

/// The 3-cube drawn as two nested squares.
pub fn cube() -> Embedding {
    let edges = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v);
    let g = Graph::new(8, edges.collect::<Vec<_>>()).expect("cube is simple");
    let xy = [(-2.0, -2.0), (2.0, -2.0), (-2.0, 2.0), (2.0, 2.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)];
    let rot = rotation_from_coords(&g, &xy);
    Embedding::new(g, rot).expect("cube rotation is valid")
}

/// Editable rotation system used to grow planar families.
struct Builder {
    rot: Vec<Vec<Vertex>>,
}

impl Builder {
    fn from(emb: &Embedding) -> Self {
        Builder { rot: emb.rotation().to_vec() }
    }

    fn finish(self) -> Result<Embedding> {
        let mut edges = Vec::new();
        for (u, r) in self.rot.iter().enumerate() {
            edges.extend(r.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        let g = Graph::new(self.rot.len(), edges)?;
        Embedding::new(g, self.rot)
    }

    fn add(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    fn replace(&mut self, at: Vertex, old: Vertex, new: Vertex) {
        let i = self.rot[at].iter().position(|&x| x == old).expect("edge present");
        self.rot[at][i] = new;
    }

    /// `u - v` becomes the path `u - a - b - v`.
    fn subdivide(&mut self, u: Vertex, v: Vertex) {
        let a = self.add();
        let b = self.add();
        self.replace(u, v, a);
        self.replace(v, u, b);
        self.rot[a] = vec![u, b];
        self.rot[b] = vec![a, v];
    }

    /// Places a new square inside the face with walk `corners`, joining each
    /// corner to its copy.
    fn nest(&mut self, corners: [Vertex; 4]) {
        let copies: Vec<Vertex> = (0..4).map(|_| self.add()).collect();
        for i in 0..4 {
            let x = corners[i];
            let p = corners[(i + 3) % 4];
            let pos = self.rot[x].iter().position(|&y| y == p).expect("corner adjacency");
            self.rot[x].insert(pos + 1, copies[i]);
            self.rot[copies[i]] = vec![copies[(i + 1) % 4], x, copies[(i + 3) % 4]];
        }
    }
}

fn simple_four_faces(emb: &Embedding) -> Vec<[Vertex; 4]> {
    emb.faces()
        .iter()
        .filter(|f| f.len() == 4 && f.iter().collect::<BTreeSet<_>>().len() == 4)
        .map(|f| [f[0], f[1], f[2], f[3]])
        .collect()
}

fn random_planar_bipartite(n: usize, r: &mut ChaCha8Rng) -> Result<Embedding> {
    if n < 4 {
        return grid(1, n);
    }
    let side = ((n as f64 * 0.6).sqrt().floor() as usize).max(2);
    let base = grid(side, side)?;
    let drop: BTreeSet<Vertex> = rand::seq::index::sample(r, side * side, side * side / 10).into_iter().collect();
    let keep: Vec<Vertex> = (0..side * side).filter(|v| !drop.contains(v)).collect();
    let mut new_id = vec![usize::MAX; side * side];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let mut b = Builder {
        rot: keep
            .iter()
            .map(|&v| base.rotation_of(v).iter().filter(|u| !drop.contains(u)).map(|&u| new_id[u]).collect())
            .collect(),
    };
    loop {
        let count = b.rot.len();
        if count + 2 > n {
            break;
        }
        let emb = Builder { rot: b.rot.clone() }.finish()?;
        let faces = simple_four_faces(&emb);
        if count + 4 <= n && !faces.is_empty() && r.gen_bool(0.4) {
            let f = faces[r.gen_range(0..faces.len())];
            b.nest(f);
        } else if emb.graph().edge_count() > 0 {
            let (u, v) = emb.graph().edges()[r.gen_range(0..emb.graph().edge_count())];
            b.subdivide(u, v);
        } else {
            break;
        }
    }
    b.finish()
}

fn quadrangulation(n: usize, r: &mut ChaCha8Rng) -> Result<Embedding> {
    let mut emb = cube();
    while emb.graph().n() + 4 <= n.max(8) {
        let faces = simple_four_faces(&emb);
        let f = faces[r.gen_range(0..faces.len())];
        let mut b = Builder::from(&emb);
        b.nest(f);
        emb = b.finish()?;
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy;
    use crate::planar::embedding::euler_audit;

    fn spec(family: Family, n: usize, seed: u64) -> GenSpec {
        GenSpec { family, n, seed, lists: ListPolicy::Classical { k: 5 }, a: 1 }
    }

    #[test]
    fn path_edges() {
        let (g, e) = gen_graph(&spec(Family::Path, 3, 0)).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(euler_audit(&e.unwrap()));
    }

    #[test]
    fn grid_2x2_is_c4() {
        let e = grid(2, 2).unwrap();
        assert_eq!(e.graph().edge_count(), 4);
        assert_eq!(e.faces().len(), 2);
        assert!(euler_audit(&e));
    }

    #[test]
    fn cube_has_six_square_faces() {
        let e = cube();
        assert_eq!(e.faces().len(), 6);
        assert!(e.faces().iter().all(|f| f.len() == 4));
        assert!(euler_audit(&e));
    }

    #[test]
    fn degenerate_family_respects_d() {
        for seed in 0..5 {
            let (g, _) = gen_graph(&spec(Family::RandomDegenerate { d: 2 }, 30, seed)).unwrap();
            assert!(degeneracy(&g) <= 2);
        }
    }

    #[test]
    fn planar_families_audit() {
        for seed in 0..20 {
            for fam in [Family::RandomPlanarBipartite, Family::Quadrangulation] {
                let (g, e) = gen_graph(&spec(fam, 60, seed)).unwrap();
                let e = e.unwrap();
                assert!(euler_audit(&e), "{fam:?} seed {seed}");
                assert!(g.bipartition().is_some());
                assert!(g.n() <= 60);
            }
        }
    }

    #[test]
    fn colouring_is_deterministic() {
        let (inst, _) = gen_instance(&spec(Family::Cycle, 4, 1)).unwrap();
        let a = gen_colouring(&inst, 7).unwrap();
        assert_eq!(a, gen_colouring(&inst, 7).unwrap());
        assert!(inst.is_list_colouring(&a));
        assert!(inst.is_list_colouring(&gen_colouring(&inst, 8).unwrap()));
    }
}
