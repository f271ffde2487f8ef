//! The general list transform and its classical `k`-colouring front end.

use std::collections::BTreeSet;

use crate::error::{invariant, RecolorError, Result};
use crate::graph::{degeneracy_ordering, Graph};
use crate::instance::{greedy_colouring, restrict_instance, Colour, Colouring, ListInstance};
use crate::list_recolor::bounds::{bound_recursion, transform_k_bound};
use crate::list_recolor::full::{change_full, find_full, is_full};
use crate::list_recolor::linear::{check_endpoints, linear_transform};
use crate::sequence::{ensure_walk, RecoloringSequence, Step};

/// Walk from `alpha` to `beta` for an `a`-feasible instance, `a >= 1`, of
/// length at most `bound_recursion(n, k, a)`.
pub fn transform_list(
    inst: &ListInstance,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecoloringSequence> {
    check_endpoints(inst, alpha, beta)?;
    if alpha == beta {
        return Ok(RecoloringSequence::new());
    }
    let n = inst.n();
    if n <= 1 {
        return Ok(RecoloringSequence::from_iter(
            (0..n).filter(|&v| alpha[v] != beta[v]).map(|v| Step::new(v, beta[v])),
        ));
    }
    let a = inst.a();
    if a == 0 {
        return Err(RecolorError::Precondition("transform_list needs a >= 1".into()));
    }
    if let Some(v) = inst.infeasible_vertex() {
        return Err(RecolorError::Precondition(format!(
            "list assignment is not {a}-feasible at vertex {v}"
        )));
    }
    let k = inst.k();
    if k <= 2 * a {
        return linear_transform(inst, alpha, beta);
    }

    let (alpha1, s_alpha, to_alpha1) = find_full(inst, alpha)?;
    let (beta1, s_beta, to_beta1) = find_full(inst, beta)?;
    let (beta2, to_beta2) = change_full(inst, &beta1, &s_beta, &s_alpha)?;

    let union = inst.colours();
    let pref: Vec<Colour> = union
        .iter()
        .filter(|c| !s_alpha.contains(c))
        .chain(union.iter().filter(|c| s_alpha.contains(c)))
        .copied()
        .collect();
    let gamma = greedy_colouring(inst, &pref)?;
    invariant!(
        (0..n).all(|v| !s_alpha.contains(&gamma[v])),
        "reference colouring uses a colour of the full set"
    );

    let mut forward = to_alpha1;
    forward.extend(descend(inst, &alpha1, &s_alpha, &gamma)?);
    let mut backward = to_beta1;
    backward.extend(to_beta2);
    backward.extend(descend(inst, &beta2, &s_alpha, &gamma)?);

    let mut seq = forward;
    seq.extend(backward.inverted(beta));
    let seq = seq.simplified(inst.graph(), alpha);
    ensure_walk(inst, alpha, &seq, beta, "transform_list")?;
    let bound = bound_recursion(n, k, a);
    invariant!(
        seq.len() as u128 <= bound,
        "transform_list: length {} exceeds {bound}",
        seq.len()
    );
    Ok(seq)
}

/// From `c`, in which `s` is full, to `gamma`, which avoids `s`: recurse on
/// the vertices not coloured `s`, then move the others one at a time.
fn descend(
    inst: &ListInstance,
    c: &Colouring,
    s: &BTreeSet<Colour>,
    gamma: &Colouring,
) -> Result<RecoloringSequence> {
    invariant!(is_full(inst, c, s), "descent from a colouring without full set");
    let n = inst.n();
    let keep: Vec<bool> = (0..n).map(|v| !s.contains(&c[v])).collect();
    let mut h = restrict_instance(inst, c, &keep)?;
    h.instance = h.instance.without_colours(s);
    let mut seq = h.lift(&transform_list(&h.instance, &h.project(c), &h.project(gamma))?);
    for v in (0..n).filter(|&v| !keep[v]) {
        seq.push(v, gamma[v]);
    }
    Ok(seq)
}

/// Walk between two proper `k`-colourings (colours `0..k`) of a
/// `d`-degenerate graph, `k >= d + 2`, of length at most
/// `transform_k_bound(n, k, d)`.
pub fn transform_k(
    g: &Graph,
    k: usize,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecoloringSequence> {
    let ordering = degeneracy_ordering(g);
    let d = ordering.d();
    let n = g.n();
    let full = ListInstance::new(g.clone(), ordering, vec![(0..k as Colour).collect(); n], 1)?;
    check_endpoints(&full, alpha, beta)?;
    if k < d + 2 {
        return Err(RecolorError::Unsupported(format!(
            "k = {k} < d + 2 = {}: the reconfiguration graph may be disconnected",
            d + 2
        )));
    }
    if alpha == beta {
        return Ok(RecoloringSequence::new());
    }
    let seq = if k == d + 2 {
        transform_list(&full, alpha, beta)?
    } else {
        let small = ListInstance::new(
            g.clone(),
            full.ordering().clone(),
            vec![(0..=d as Colour).collect(); n],
            0,
        )?;
        let gamma = greedy_colouring(&small, &(0..=d as Colour).collect::<Vec<_>>())?;
        let mut seq = forget(&full, d, alpha, &gamma)?;
        seq.extend(forget(&full, d, beta, &gamma)?.inverted(beta));
        seq.simplified(g, alpha)
    };
    ensure_walk(&full, alpha, &seq, beta, "transform_k")?;
    let bound = transform_k_bound(n, k, d);
    invariant!(
        seq.len() as u128 <= bound,
        "transform_k: length {} exceeds {bound}",
        seq.len()
    );
    Ok(seq)
}

/// From `c` to the `(d+1)`-colouring `gamma`: set aside the vertices coloured
/// `d+2` or more, transform the rest with `d + 2` colours, then move the
/// set-aside vertices.
fn forget(full: &ListInstance, d: usize, c: &Colouring, gamma: &Colouring) -> Result<RecoloringSequence> {
    let n = full.n();
    let low = d as Colour + 1;
    let keep: Vec<bool> = (0..n).map(|v| c[v] <= low).collect();
    let mut h = restrict_instance(full, c, &keep)?;
    h.instance = h.instance.only_colours(&(0..=low).collect());
    let mut seq = h.lift(&transform_list(&h.instance, &h.project(c), &h.project(gamma))?);
    for v in (0..n).filter(|&v| !keep[v]) {
        seq.push(v, gamma[v]);
    }
    Ok(seq)
}
