//! Quadratic 5-recolouring of planar bipartite graphs.

use serde::Serialize;

use crate::error::{invariant, RecolorError, Result};
use crate::graph::Graph;
use crate::instance::{Colour, Colouring, ListInstance};
use crate::planar::config::{find_configuration, Configuration};
use crate::planar::embedding::{audit, AuditReport, Embedding};
use crate::planar::reduce::{equalize_vw, merge, remove_vertex};
use crate::planar::PLANAR_COLOURS;
use crate::sequence::{ensure_walk, RecoloringSequence, Step};

/// What happened at one induction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    /// Vertices of the graph at this step.
    pub m: usize,
    pub case: Option<Configuration>,
    pub length: usize,
    pub max_per_vertex: usize,
}

/// Audits on both sides of a merge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeAudit {
    pub before: AuditReport,
    pub after: AuditReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PlanarTrace {
    pub steps: Vec<StepRecord>,
    pub merges: Vec<MergeAudit>,
}

/// `4n^2`, the length guarantee on `n` vertices.
pub fn planar_bound(n: usize) -> u128 {
    4 * (n as u128) * (n as u128)
}

fn five(g: &Graph) -> Result<ListInstance> {
    ListInstance::uniform(g.clone(), PLANAR_COLOURS as usize, 0)
}

/// Walk between two proper 5-colourings (colours `0..5`) of a planar
/// bipartite graph in which every vertex moves at most `4n` times.
pub fn transform_planar_bipartite(
    emb: &Embedding,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecoloringSequence> {
    transform_planar_bipartite_traced(emb, alpha, beta).map(|(s, _)| s)
}

pub fn transform_planar_bipartite_traced(
    emb: &Embedding,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<(RecoloringSequence, PlanarTrace)> {
    let g = emb.graph();
    let inst = five(g)?;
    inst.check_colouring(alpha)?;
    inst.check_colouring(beta)?;
    if g.bipartition().is_none() {
        return Err(RecolorError::Precondition("graph is not bipartite".into()));
    }
    if !audit(emb).ok {
        return Err(RecolorError::InvalidInput(
            "rotation system fails the Euler audit (not a planar embedding)".into(),
        ));
    }
    let mut trace = PlanarTrace::default();
    let seq = induct(emb, alpha, beta, &mut trace)?;
    Ok((seq, trace))
}

fn induct(emb: &Embedding, alpha: &Colouring, beta: &Colouring, trace: &mut PlanarTrace) -> Result<RecoloringSequence> {
    let g = emb.graph();
    let m = g.n();
    if alpha == beta {
        return Ok(RecoloringSequence::new());
    }
    invariant!(audit(emb).ok, "embedding lost its Euler identity on {m} vertices");
    let (seq, case) = if m == 1 {
        (RecoloringSequence::from_steps(vec![Step::new(0, beta[0])]), None)
    } else {
        let config = find_configuration(emb)?;
        let seq = match config {
            Configuration::CaseI { v } => {
                let (h, map) = remove_vertex(emb, v)?;
                let sub = induct(&h, &map.project(alpha), &map.project(beta), trace)?;
                interleave(g, v, alpha, beta, &map.lift(&sub))?
            }
            Configuration::CaseII { .. } => {
                let (alpha1, to_alpha1) = equalize_vw(emb, &config, alpha)?;
                let (beta1, to_beta1) = equalize_vw(emb, &config, beta)?;
                let before = audit(emb);
                let (h, map) = merge(emb, &config)?;
                trace.merges.push(MergeAudit { before, after: audit(&h) });
                let sub = induct(&h, &map.project(&alpha1), &map.project(&beta1), trace)?;
                let mut seq = to_alpha1;
                seq.extend(map.lift(&sub));
                seq.extend(to_beta1.inverted(beta));
                seq
            }
        };
        (seq, Some(config))
    };
    ensure_walk(&five(g)?, alpha, &seq, beta, "planar transform")?;
    let max = seq.max_per_vertex(m);
    invariant!(max <= 4 * m, "a vertex moved {max} > 4m = {} times", 4 * m);
    invariant!(
        seq.len() as u128 <= planar_bound(m),
        "length {} exceeds 4m^2 = {}",
        seq.len(),
        planar_bound(m)
    );
    trace.steps.push(StepRecord { m, case, length: seq.len(), max_per_vertex: max });
    Ok(seq)
}

/// Threads moves of the deleted vertex `v` (degree at most 2) into `sub`:
/// whenever a neighbour is about to take its colour, `v` moves to the
/// smallest free colour other than the next colour a neighbour will take.
fn interleave(
    g: &Graph,
    v: usize,
    alpha: &Colouring,
    beta: &Colouring,
    sub: &RecoloringSequence,
) -> Result<RecoloringSequence> {
    let nb = g.neighbours(v);
    let targets: Vec<Colour> = sub.iter().filter(|s| nb.contains(&s.v)).map(|s| s.c).collect();
    let mut cur = alpha.clone();
    let mut out = RecoloringSequence::new();
    let mut idx = 0;
    for s in sub.iter() {
        if nb.contains(&s.v) {
            if s.c == cur[v] {
                let next = targets.get(idx + 1).copied();
                let free: Vec<Colour> = (0..PLANAR_COLOURS)
                    .filter(|&c| c != cur[v] && nb.iter().all(|&y| cur[y] != c))
                    .collect();
                let pick = free
                    .iter()
                    .copied()
                    .find(|&c| Some(c) != next)
                    .ok_or_else(|| RecolorError::Invariant(format!("no free colour for vertex {v}")))?;
                out.push(v, pick);
                cur[v] = pick;
            }
            idx += 1;
        }
        cur[s.v] = s.c;
        out.steps.push(*s);
    }
    if cur[v] != beta[v] {
        out.push(v, beta[v]);
    }
    Ok(out)
}
