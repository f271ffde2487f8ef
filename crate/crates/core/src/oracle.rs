//! Brute-force search over the reconfiguration graph of tiny instances.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::graph::Vertex;
use crate::instance::{Colouring, ListInstance};

/// Default bound on the number of visited states.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

/// Outcome of a distance or diameter query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum Reach {
    Exact(usize),
    Disconnected,
    CapExceeded,
}

impl Reach {
    pub fn exact(self) -> Option<usize> {
        match self {
            Reach::Exact(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    Connected,
    Disconnected,
    CapExceeded,
}

/// List-respecting proper colourings encoded as mixed-radix integers over
/// per-vertex list indices.
#[derive(Debug, Clone)]
pub struct StateSpace<'a> {
    inst: &'a ListInstance,
    weight: Vec<u128>,
}

impl<'a> StateSpace<'a> {
    /// `None` when the key space does not fit in 128 bits.
    pub fn new(inst: &'a ListInstance) -> Option<Self> {
        let mut weight = Vec::with_capacity(inst.n());
        let mut w: u128 = 1;
        for v in 0..inst.n() {
            weight.push(w);
            w = w.checked_mul(inst.list(v).len().max(1) as u128)?;
        }
        Some(StateSpace { inst, weight })
    }

    pub fn encode(&self, c: &Colouring) -> u128 {
        (0..self.inst.n())
            .map(|v| {
                let i = self.inst.list(v).binary_search(&c[v]).unwrap_or(0);
                i as u128 * self.weight[v]
            })
            .sum()
    }

    pub fn decode(&self, key: u128) -> Colouring {
        Colouring(self.digits(key).iter().enumerate().map(|(v, &i)| self.inst.list(v)[i]).collect())
    }

    fn digits(&self, mut key: u128) -> Vec<usize> {
        (0..self.inst.n())
            .map(|v| {
                let r = self.inst.list(v).len().max(1) as u128;
                let d = (key % r) as usize;
                key /= r;
                d
            })
            .collect()
    }

    /// Keys of all colourings one proper single-vertex recolouring away.
    pub fn neighbours(&self, key: u128, out: &mut Vec<u128>) {
        out.clear();
        let digits = self.digits(key);
        let g = self.inst.graph();
        let colour = |v: Vertex| self.inst.list(v)[digits[v]];
        for (v, &dv) in digits.iter().enumerate() {
            let list = self.inst.list(v);
            for (j, &c) in list.iter().enumerate() {
                if j == dv || g.neighbours(v).iter().any(|&w| colour(w) == c) {
                    continue;
                }
                out.push(key - dv as u128 * self.weight[v] + j as u128 * self.weight[v]);
            }
        }
    }
}

fn space(inst: &ListInstance) -> Option<StateSpace<'_>> {
    StateSpace::new(inst)
}

/// Exact length of a shortest recolouring walk, by bidirectional search.
pub fn bfs_distance(inst: &ListInstance, alpha: &Colouring, beta: &Colouring, cap: usize) -> Result<Reach> {
    inst.check_colouring(alpha)?;
    inst.check_colouring(beta)?;
    if alpha == beta {
        return Ok(Reach::Exact(0));
    }
    let Some(sp) = space(inst) else {
        return Ok(Reach::CapExceeded);
    };
    let (s, t) = (sp.encode(alpha), sp.encode(beta));
    let mut dist = [HashMap::from([(s, 0usize)]), HashMap::from([(t, 0usize)])];
    let mut frontier = [vec![s], vec![t]];
    let mut buf = Vec::new();
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return Ok(Reach::Disconnected);
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let layer = std::mem::take(&mut frontier[side]);
        let mut best: Option<usize> = None;
        let mut next = Vec::new();
        for key in layer {
            let dk = dist[side][&key];
            sp.neighbours(key, &mut buf);
            for &nb in &buf {
                if let Some(&other) = dist[1 - side].get(&nb) {
                    let total = dk + 1 + other;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                if let Entry::Vacant(e) = dist[side].entry(nb) {
                    e.insert(dk + 1);
                    next.push(nb);
                }
            }
            if dist[0].len() + dist[1].len() > cap {
                return Ok(Reach::CapExceeded);
            }
        }
        if let Some(b) = best {
            return Ok(Reach::Exact(b));
        }
        frontier[side] = next;
    }
}

/// Keys of every list-respecting proper colouring, ascending; `None` past `cap`.
fn enumerate(sp: &StateSpace<'_>, cap: usize) -> Option<Vec<u128>> {
    let inst = sp.inst;
    let n = inst.n();
    let mut out = Vec::new();
    let mut digit = vec![0usize; n];
    fn rec(
        v: usize,
        sp: &StateSpace<'_>,
        digit: &mut Vec<usize>,
        key: u128,
        out: &mut Vec<u128>,
        cap: usize,
    ) -> bool {
        let inst = sp.inst;
        if v == inst.n() {
            out.push(key);
            return out.len() <= cap;
        }
        for (j, &c) in inst.list(v).iter().enumerate() {
            let clash = inst
                .graph()
                .neighbours(v)
                .iter()
                .any(|&w| w < v && inst.list(w)[digit[w]] == c);
            if clash {
                continue;
            }
            digit[v] = j;
            if !rec(v + 1, sp, digit, key + j as u128 * sp.weight[v], out, cap) {
                return false;
            }
        }
        true
    }
    if !rec(0, sp, &mut digit, 0, &mut out, cap) {
        return None;
    }
    out.sort_unstable();
    Some(out)
}

/// Number of list-respecting proper colourings, `None` past `cap`.
pub fn count_colourings(inst: &ListInstance, cap: usize) -> Option<usize> {
    enumerate(&space(inst)?, cap).map(|v| v.len())
}

/// Compressed adjacency of the full reconfiguration graph.
struct Csr {
    start: Vec<usize>,
    adj: Vec<u32>,
}

fn build_csr(sp: &StateSpace<'_>, keys: &[u128]) -> Csr {
    let lists: Vec<Vec<u32>> = keys
        .par_iter()
        .map_init(Vec::new, |buf, &k| {
            sp.neighbours(k, buf);
            buf.iter()
                .map(|nb| keys.binary_search(nb).expect("neighbour is a colouring") as u32)
                .collect()
        })
        .collect();
    let mut start = Vec::with_capacity(keys.len() + 1);
    start.push(0);
    for l in &lists {
        start.push(start.last().unwrap() + l.len());
    }
    Csr {
        start,
        adj: lists.into_iter().flatten().collect(),
    }
}

/// Eccentricity of `src`, or `None` when some state is unreachable.
fn eccentricity(csr: &Csr, src: usize, dist: &mut Vec<u32>, queue: &mut Vec<u32>) -> Option<usize> {
    let n = csr.start.len() - 1;
    dist.clear();
    dist.resize(n, u32::MAX);
    queue.clear();
    dist[src] = 0;
    queue.push(src as u32);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        for &w in &csr.adj[csr.start[u]..csr.start[u + 1]] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    (queue.len() == n).then(|| dist[*queue.last().unwrap() as usize] as usize)
}

/// Maximum distance over all ordered pairs of colourings.
pub fn exact_diameter(inst: &ListInstance, cap: usize) -> Reach {
    let Some(sp) = space(inst) else {
        return Reach::CapExceeded;
    };
    let Some(keys) = enumerate(&sp, cap) else {
        return Reach::CapExceeded;
    };
    if keys.is_empty() {
        return Reach::Exact(0);
    }
    let csr = build_csr(&sp, &keys);
    if eccentricity(&csr, 0, &mut Vec::new(), &mut Vec::new()).is_none() {
        return Reach::Disconnected;
    }
    let max = (0..keys.len())
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(d, q), s| eccentricity(&csr, s, d, q).unwrap_or(usize::MAX),
        )
        .max()
        .unwrap_or(0);
    Reach::Exact(max)
}

/// Whether one search from any colouring reaches all of them.
pub fn is_connected(inst: &ListInstance, cap: usize) -> Connectivity {
    let Some(sp) = space(inst) else {
        return Connectivity::CapExceeded;
    };
    let Some(keys) = enumerate(&sp, cap) else {
        return Connectivity::CapExceeded;
    };
    let Some(&first) = keys.first() else {
        return Connectivity::Connected;
    };
    let mut seen = std::collections::HashSet::from([first]);
    let mut queue = vec![first];
    let mut buf = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        sp.neighbours(queue[head], &mut buf);
        head += 1;
        for &nb in &buf {
            if seen.insert(nb) {
                queue.push(nb);
            }
        }
    }
    if seen.len() == keys.len() {
        Connectivity::Connected
    } else {
        Connectivity::Disconnected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p2(lists: Vec<u32>) -> ListInstance {
        ListInstance::with_peeling(Graph::new(2, [(0, 1)]).unwrap(), vec![lists; 2], 0).unwrap()
    }

    #[test]
    fn p2_distances() {
        let inst = p2(vec![1, 2, 3]);
        let (a, b) = (Colouring(vec![1, 2]), Colouring(vec![2, 1]));
        assert_eq!(bfs_distance(&inst, &a, &a, DEFAULT_STATE_CAP).unwrap(), Reach::Exact(0));
        assert_eq!(bfs_distance(&inst, &a, &b, DEFAULT_STATE_CAP).unwrap(), Reach::Exact(3));
        let tight = p2(vec![1, 2]);
        assert_eq!(bfs_distance(&tight, &a, &b, DEFAULT_STATE_CAP).unwrap(), Reach::Disconnected);
    }

    #[test]
    fn diameters() {
        let one = ListInstance::with_peeling(Graph::empty(1), vec![vec![1, 2]], 0).unwrap();
        assert_eq!(exact_diameter(&one, DEFAULT_STATE_CAP), Reach::Exact(1));
        assert_eq!(exact_diameter(&p2(vec![1, 2, 3]), DEFAULT_STATE_CAP), Reach::Exact(3));
        assert_eq!(exact_diameter(&p2(vec![1, 2]), DEFAULT_STATE_CAP), Reach::Disconnected);
        assert_eq!(count_colourings(&p2(vec![1, 2, 3]), DEFAULT_STATE_CAP), Some(6));
    }

    #[test]
    fn connectivity() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let inst = ListInstance::uniform(c4, 4, 1).unwrap();
        assert_eq!(is_connected(&inst, DEFAULT_STATE_CAP), Connectivity::Connected);
        let tight = ListInstance::uniform(Graph::new(2, [(0, 1)]).unwrap(), 2, 0).unwrap();
        assert_eq!(is_connected(&tight, DEFAULT_STATE_CAP), Connectivity::Disconnected);
        assert_eq!(is_connected(&inst, 10), Connectivity::CapExceeded);
    }

    #[test]
    fn neighbours_differ_in_one_proper_vertex() {
        let inst = p2(vec![1, 2, 3]);
        let sp = StateSpace::new(&inst).unwrap();
        let start = Colouring(vec![1, 2]);
        let key = sp.encode(&start);
        assert_eq!(sp.decode(key), start);
        let mut out = Vec::new();
        sp.neighbours(key, &mut out);
        assert_eq!(out.len(), 2);
        for k in out {
            let c = sp.decode(k);
            assert!(inst.is_list_colouring(&c));
            assert_eq!((0..2).filter(|&v| c[v] != start[v]).count(), 1);
        }
    }
}
