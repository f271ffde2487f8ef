//! Peeling a 3-degenerate graph into strata of degree at most 3.

use crate::error::{invariant, RecolorError, Result};
use crate::graph::{Graph, Vertex};

/// `level[v] >= 1`: vertices of degree at most 3 after removing all lower levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap(pub Vec<usize>);

impl LevelMap {
    pub fn level(&self, v: Vertex) -> usize {
        self.0[v]
    }

    pub fn max_level(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

pub fn levels(g: &Graph) -> Result<LevelMap> {
    let n = g.n();
    let mut level = vec![0usize; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut remaining: Vec<Vertex> = (0..n).collect();
    let mut current = 1;
    while !remaining.is_empty() {
        let (layer, rest): (Vec<Vertex>, Vec<Vertex>) = remaining.iter().partition(|&&v| deg[v] <= 3);
        if layer.is_empty() {
            return Err(RecolorError::Precondition(format!(
                "graph is not 3-degenerate: {} vertices never reach degree 3",
                rest.len()
            )));
        }
        for &v in &layer {
            level[v] = current;
        }
        for &v in &layer {
            for &w in g.neighbours(v) {
                if level[w] == 0 {
                    deg[w] -= 1;
                }
            }
        }
        remaining = rest;
        current += 1;
    }
    let map = LevelMap(level);
    check_levels(g, &map)?;
    Ok(map)
}

/// In `g` minus the levels below `i`, level-`i` vertices have degree at most
/// 3 and higher levels have degree at least 4.
fn check_levels(g: &Graph, map: &LevelMap) -> Result<()> {
    for v in 0..g.n() {
        let lv = map.level(v);
        for i in 1..=lv {
            let d = g.neighbours(v).iter().filter(|&&w| map.level(w) >= i).count();
            if i == lv {
                invariant!(d <= 3, "vertex {v} of level {lv} keeps degree {d}");
            } else {
                invariant!(d >= 4, "vertex {v} of level {lv} has degree {d} at stage {i}");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcubic_is_level_one() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(levels(&g).unwrap().0, vec![1; 4]);
    }

    #[test]
    fn star_centre_is_level_two() {
        let g = Graph::new(6, (1..6).map(|i| (0, i))).unwrap();
        let l = levels(&g).unwrap();
        assert_eq!(l.level(0), 2);
        assert!((1..6).all(|v| l.level(v) == 1));
    }

    #[test]
    fn dense_graph_rejected() {
        let edges: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        assert!(levels(&Graph::new(5, edges).unwrap()).is_err());
    }
}
