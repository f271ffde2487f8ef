//! Transformations when the slack is at least half the colours (`k <= 2a`).
//!
//! The sequence is built by induction along the ordering: a sequence for the
//! suffix `v_{i+1}..v_n` is extended to `v_i..v_n` by inserting moves of
//! `v_i` only when a neighbour is about to take its colour. Each move picks a
//! colour absent from the next `outdeg(v_i) + 1` neighbour moves, so `v_i`
//! moves at most once per `outdeg(v_i) + 1` neighbour moves.

use std::collections::BTreeSet;

use crate::error::{invariant, RecolorError, Result};
use crate::instance::{Colouring, ListInstance};
use crate::sequence::{ensure_walk, RecoloringSequence, Step};

pub(crate) fn check_endpoints(inst: &ListInstance, alpha: &Colouring, beta: &Colouring) -> Result<()> {
    inst.check_colouring(alpha)?;
    inst.check_colouring(beta)?;
    Ok(())
}

/// Walk from `alpha` to `beta` in which every vertex is recoloured at most
/// `k` times (so at most `k n` steps).
///
/// Requires an `a`-feasible instance with `k <= 2a`.
pub fn linear_transform(
    inst: &ListInstance,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecoloringSequence> {
    check_endpoints(inst, alpha, beta)?;
    if let Some(v) = inst.infeasible_vertex() {
        return Err(RecolorError::Precondition(format!(
            "list assignment is not {}-feasible at vertex {v}",
            inst.a()
        )));
    }
    let k = inst.k();
    if k > 2 * inst.a() {
        return Err(RecolorError::Precondition(format!(
            "linear transform needs k <= 2a, got k = {k}, a = {}",
            inst.a()
        )));
    }
    let seq = interleave(inst, alpha, beta)?;
    invariant!(
        seq.max_per_vertex(inst.n()) <= k.max(1),
        "linear transform recoloured a vertex more than k = {k} times"
    );
    ensure_walk(inst, alpha, &seq, beta, "linear transform")?;
    Ok(seq)
}

fn interleave(inst: &ListInstance, alpha: &Colouring, beta: &Colouring) -> Result<RecoloringSequence> {
    let order = inst.ordering().order();
    let n = order.len();
    let mut is_nbr = vec![false; n];
    let mut steps: Vec<Step> = Vec::new();

    for &v in order.iter().rev() {
        let out = inst.ordering().out_neighbours(v);
        for &w in out {
            is_nbr[w] = true;
        }
        // Colours targeted by the neighbour moves, in order.
        let targets: Vec<_> = steps.iter().filter(|s| is_nbr[s.v]).map(|s| s.c).collect();
        let window = out.len() + 1;

        let mut cur = alpha.clone();
        let mut mine = alpha[v];
        let mut next_mod = 0usize;
        let mut merged = Vec::with_capacity(steps.len() + 2);
        for s in &steps {
            if is_nbr[s.v] {
                if s.c == mine {
                    let blocked: BTreeSet<_> = out
                        .iter()
                        .map(|&w| cur[w])
                        .chain(targets[next_mod..(next_mod + window).min(targets.len())].iter().copied())
                        .chain(std::iter::once(mine))
                        .collect();
                    let fresh = inst
                        .list(v)
                        .iter()
                        .copied()
                        .find(|c| !blocked.contains(c))
                        .ok_or_else(|| {
                            RecolorError::Invariant(format!("no look-ahead colour for vertex {v}"))
                        })?;
                    merged.push(Step::new(v, fresh));
                    mine = fresh;
                }
                next_mod += 1;
            }
            cur[s.v] = s.c;
            merged.push(*s);
        }
        if mine != beta[v] {
            merged.push(Step::new(v, beta[v]));
        }
        for &w in out {
            is_nbr[w] = false;
        }
        steps = merged;
    }
    Ok(RecoloringSequence::from_steps(steps))
}
