//! Recolouring sequences and their validation.

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Colour, Colouring, ListInstance};

/// One recolouring: vertex `v` takes colour `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub v: Vertex,
    pub c: Colour,
}

impl Step {
    pub fn new(v: Vertex, c: Colour) -> Self {
        Step { v, c }
    }
}

/// An ordered list of single-vertex recolourings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoloringSequence {
    pub steps: Vec<Step>,
}

impl RecoloringSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Self {
        RecoloringSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, v: Vertex, c: Colour) {
        self.steps.push(Step { v, c });
    }

    pub fn extend(&mut self, other: RecoloringSequence) {
        self.steps.extend(other.steps);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter()
    }

    /// Number of times each of the `n` vertices is recoloured.
    pub fn per_vertex(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for s in &self.steps {
            counts[s.v] += 1;
        }
        counts
    }

    pub fn max_per_vertex(&self, n: usize) -> usize {
        self.per_vertex(n).into_iter().max().unwrap_or(0)
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> RecoloringSequence {
        RecoloringSequence {
            steps: self.steps.iter().map(|s| Step::new(f(s.v), s.c)).collect(),
        }
    }

    /// Colouring reached by replaying every step from `start` (no checks).
    pub fn apply(&self, start: &Colouring) -> Colouring {
        let mut c = start.clone();
        for s in &self.steps {
            c[s.v] = s.c;
        }
        c
    }

    /// The same walk traversed backwards: replaying the result from
    /// `self.apply(start)` ends at `start`. Each inverted step restores the
    /// colour the vertex had before the corresponding forward step.
    pub fn inverted(&self, start: &Colouring) -> RecoloringSequence {
        let mut c = start.clone();
        let mut back = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            back.push(Step::new(s.v, c[s.v]));
            c[s.v] = s.c;
        }
        back.reverse();
        RecoloringSequence { steps: back }
    }

    /// Merges repeated moves of a vertex between which none of its neighbours
    /// moves, dropping pairs that return the vertex to its earlier colour.
    /// Repeats until nothing changes, since a dropped pair can expose another.
    /// A valid walk stays valid with the same endpoints; no count grows.
    pub fn simplified(&self, g: &Graph, start: &Colouring) -> RecoloringSequence {
        let mut cur = self.simplify_pass(g, start);
        loop {
            let next = cur.simplify_pass(g, start);
            if next.len() == cur.len() {
                return next;
            }
            cur = next;
        }
    }

    fn simplify_pass(&self, g: &Graph, start: &Colouring) -> RecoloringSequence {
        let n = g.n();
        let mut out: Vec<Option<Step>> = Vec::with_capacity(self.steps.len());
        // Index in `out` of the vertex's last move and the colour before it,
        // while no neighbour has moved since.
        let mut pending: Vec<Option<(usize, Colour)>> = vec![None; n];
        let mut cur = start.clone();
        for s in &self.steps {
            if s.v >= n {
                out.push(Some(*s));
                continue;
            }
            match pending[s.v] {
                Some((j, before)) => {
                    out[j] = None;
                    if before == s.c {
                        pending[s.v] = None;
                    } else {
                        pending[s.v] = Some((out.len(), before));
                        out.push(Some(*s));
                    }
                }
                None => {
                    pending[s.v] = Some((out.len(), cur[s.v]));
                    out.push(Some(*s));
                }
            }
            cur[s.v] = s.c;
            for &w in g.neighbours(s.v) {
                pending[w] = None;
            }
        }
        out.into_iter().flatten().collect()
    }
}

impl FromIterator<Step> for RecoloringSequence {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        RecoloringSequence {
            steps: iter.into_iter().collect(),
        }
    }
}

/// Why a step was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepFault {
    VertexOutOfRange,
    NullStep,
    OffList,
    Conflict { neighbour: Vertex },
}

/// Outcome of [`validate_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Every step keeps the colouring proper and list-respecting.
    pub valid: bool,
    /// Start colouring is proper and list-respecting.
    pub start_ok: bool,
    pub first_invalid_step: Option<usize>,
    pub fault: Option<StepFault>,
    pub total_length: usize,
    pub per_vertex: Vec<usize>,
    pub reaches_target: bool,
}

impl ValidationReport {
    /// Valid and ends exactly at the target.
    pub fn ok(&self) -> bool {
        self.valid && self.reaches_target
    }
}

/// Replays `seq` from `start`, checking every intermediate colouring.
/// Problems are reported, never raised.
pub fn validate_sequence(
    inst: &ListInstance,
    start: &Colouring,
    seq: &RecoloringSequence,
    target: &Colouring,
) -> ValidationReport {
    let n = inst.n();
    let mut per_vertex = vec![0; n];
    let mut report = ValidationReport {
        valid: false,
        start_ok: inst.is_list_colouring(start),
        first_invalid_step: None,
        fault: None,
        total_length: seq.len(),
        per_vertex: Vec::new(),
        reaches_target: false,
    };
    if !report.start_ok {
        return report;
    }
    let mut cur = start.clone();
    for (i, s) in seq.iter().enumerate() {
        let fault = if s.v >= n {
            Some(StepFault::VertexOutOfRange)
        } else if cur[s.v] == s.c {
            Some(StepFault::NullStep)
        } else if !inst.allows(s.v, s.c) {
            Some(StepFault::OffList)
        } else {
            inst.graph()
                .neighbours(s.v)
                .iter()
                .find(|&&w| cur[w] == s.c)
                .map(|&w| StepFault::Conflict { neighbour: w })
        };
        if let Some(f) = fault {
            report.first_invalid_step = Some(i);
            report.fault = Some(f);
            report.per_vertex = per_vertex;
            return report;
        }
        cur[s.v] = s.c;
        per_vertex[s.v] += 1;
    }
    report.valid = true;
    report.per_vertex = per_vertex;
    report.reaches_target = target.len() == n && cur == *target;
    report
}

/// Engine-side check: `seq` must be a valid walk from `start` to `target`.
pub(crate) fn ensure_walk(
    inst: &ListInstance,
    start: &Colouring,
    seq: &RecoloringSequence,
    target: &Colouring,
    what: &str,
) -> Result<()> {
    let r = validate_sequence(inst, start, seq, target);
    invariant!(
        r.valid,
        "{what}: step {:?} invalid ({:?})",
        r.first_invalid_step,
        r.fault
    );
    invariant!(r.reaches_target, "{what}: sequence misses its target");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p2(lists: Vec<Colour>) -> ListInstance {
        ListInstance::with_peeling(Graph::new(2, [(0, 1)]).unwrap(), vec![lists; 2], 0).unwrap()
    }

    #[test]
    fn simplification_cancels_nested_detours() {
        let inst = p2(vec![0, 1, 2, 3]);
        let start = Colouring(vec![0, 1]);
        let seq = RecoloringSequence::from_steps(vec![Step::new(0, 2), Step::new(1, 3), Step::new(1, 1), Step::new(0, 0)]);
        assert!(validate_sequence(&inst, &start, &seq, &start).ok());
        assert!(seq.simplified(inst.graph(), &start).is_empty());
        let merged = RecoloringSequence::from_steps(vec![Step::new(0, 2), Step::new(0, 3)]);
        assert_eq!(merged.simplified(inst.graph(), &start).steps, vec![Step::new(0, 3)]);
    }

    #[test]
    fn empty_sequence_is_valid() {
        let inst = p2(vec![1, 2, 3]);
        let c = Colouring(vec![1, 2]);
        let r = validate_sequence(&inst, &c, &RecoloringSequence::new(), &c);
        assert!(r.ok());
        assert_eq!(r.total_length, 0);
    }

    #[test]
    fn monochromatic_step_is_flagged() {
        let inst = p2(vec![1, 2, 3]);
        let seq = RecoloringSequence::from_steps(vec![Step::new(0, 2)]);
        let r = validate_sequence(&inst, &Colouring(vec![1, 2]), &seq, &Colouring(vec![2, 2]));
        assert!(!r.valid);
        assert_eq!(r.first_invalid_step, Some(0));
        assert_eq!(r.fault, Some(StepFault::Conflict { neighbour: 1 }));
    }

    #[test]
    fn swap_on_p2_takes_three_steps() {
        let inst = p2(vec![1, 2, 3]);
        let seq = RecoloringSequence::from_steps(vec![
            Step::new(0, 3),
            Step::new(1, 1),
            Step::new(0, 2),
        ]);
        let r = validate_sequence(&inst, &Colouring(vec![1, 2]), &seq, &Colouring(vec![2, 1]));
        assert!(r.ok());
        assert_eq!(r.total_length, 3);
        assert_eq!(r.per_vertex, vec![2, 1]);
    }

    #[test]
    fn null_and_off_list_steps_rejected() {
        let inst = p2(vec![1, 2, 3]);
        let start = Colouring(vec![1, 2]);
        let null = RecoloringSequence::from_steps(vec![Step::new(0, 1)]);
        assert_eq!(
            validate_sequence(&inst, &start, &null, &start).fault,
            Some(StepFault::NullStep)
        );
        let off = RecoloringSequence::from_steps(vec![Step::new(0, 7)]);
        assert_eq!(
            validate_sequence(&inst, &start, &off, &start).fault,
            Some(StepFault::OffList)
        );
    }

    #[test]
    fn inversion_walks_back() {
        let inst = p2(vec![1, 2, 3]);
        let start = Colouring(vec![1, 2]);
        let seq = RecoloringSequence::from_steps(vec![
            Step::new(0, 3),
            Step::new(1, 1),
            Step::new(0, 2),
        ]);
        let end = seq.apply(&start);
        let back = seq.inverted(&start);
        assert!(validate_sequence(&inst, &end, &back, &start).ok());
    }
}
