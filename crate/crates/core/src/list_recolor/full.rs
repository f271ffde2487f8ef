//! Full colour sets: checking them, building one, and trading one for another.

use std::collections::BTreeSet;

use crate::error::{invariant, RecolorError, Result};
use crate::instance::{greedy_colouring, mask, restrict_instance, Colour, Colouring, ListInstance};
use crate::list_recolor::bounds::bound_recursion;
use crate::list_recolor::linear::linear_transform;
use crate::list_recolor::recursion::transform_list;
use crate::sequence::{ensure_walk, RecoloringSequence, Step};

/// A candidate full set together with the longest prefix of the ordering
/// on which it satisfies the fullness conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSetState {
    pub set: BTreeSet<Colour>,
    pub full_up_to: usize,
}

impl FullSetState {
    pub fn compute(inst: &ListInstance, c: &Colouring, set: BTreeSet<Colour>) -> Self {
        let full_up_to = full_prefix(inst, c, &set);
        FullSetState { set, full_up_to }
    }

    pub fn is_full(&self, n: usize) -> bool {
        self.full_up_to == n
    }
}

fn vertex_ok(inst: &ListInstance, c: &Colouring, s: &BTreeSet<Colour>, v: usize) -> bool {
    if s.contains(&c[v]) {
        return true;
    }
    let out = inst.ordering().out_neighbours(v);
    s.iter()
        .all(|&x| !inst.allows(v, x) || out.iter().any(|&w| c[w] == x))
}

/// Length of the longest prefix `v_1..v_i` of the ordering satisfying the
/// fullness conditions for `s`.
pub fn full_prefix(inst: &ListInstance, c: &Colouring, s: &BTreeSet<Colour>) -> usize {
    inst.ordering()
        .order()
        .iter()
        .position(|&v| !vertex_ok(inst, c, s, v))
        .unwrap_or(inst.n())
}

/// Fullness restricted to the first `i` vertices of the ordering.
pub fn full_up_to(inst: &ListInstance, c: &Colouring, s: &BTreeSet<Colour>, i: usize) -> bool {
    full_prefix(inst, c, s) >= i.min(inst.n())
}

/// Every vertex is coloured in `s`, or realises every colour of `s` it could
/// take on an out-neighbour.
pub fn is_full(inst: &ListInstance, c: &Colouring, s: &BTreeSet<Colour>) -> bool {
    full_prefix(inst, c, s) == inst.n()
}

/// Extends `s` with the smallest colours of `union` it misses, up to size `a`.
pub(crate) fn pad(mut s: BTreeSet<Colour>, union: &[Colour], a: usize) -> BTreeSet<Colour> {
    for &c in union {
        if s.len() >= a {
            break;
        }
        s.insert(c);
    }
    s
}

/// Colours of `inst` grouped by the first predicate they satisfy, each group ascending.
fn preference(inst: &ListInstance, groups: &[&dyn Fn(Colour) -> bool]) -> Vec<Colour> {
    let colours = inst.colours();
    let mut out = Vec::with_capacity(colours.len());
    let mut used = BTreeSet::new();
    for g in groups {
        for &c in &colours {
            if g(c) && used.insert(c) {
                out.push(c);
            }
        }
    }
    out
}

/// Change-length guarantee for [`change_full`].
pub fn change_full_bound(inst: &ListInstance, s: &BTreeSet<Colour>) -> u128 {
    let n = inst.n();
    let rest = inst.colours().iter().filter(|c| !s.contains(c)).count();
    let a = inst.a();
    bound_recursion(n, rest, a).saturating_add(((2 * a + 2) * n) as u128)
}

/// From a colouring in which `s` is full, reaches one in which `s_prime` is full.
///
/// Returns the new colouring and the walk to it.
pub fn change_full(
    inst: &ListInstance,
    alpha: &Colouring,
    s: &BTreeSet<Colour>,
    s_prime: &BTreeSet<Colour>,
) -> Result<(Colouring, RecoloringSequence)> {
    inst.check_colouring(alpha)?;
    let a = inst.a();
    if s.len() != a || s_prime.len() != a {
        return Err(RecolorError::Precondition(format!(
            "colour sets must have size a = {a}, got {} and {}",
            s.len(),
            s_prime.len()
        )));
    }
    if let Some(v) = inst.infeasible_vertex() {
        return Err(RecolorError::Precondition(format!(
            "list assignment is not {a}-feasible at vertex {v}"
        )));
    }
    if !is_full(inst, alpha, s) {
        return Err(RecolorError::Precondition(
            "the given colour set is not full for the colouring".into(),
        ));
    }
    let n = inst.n();
    let g = inst.graph();
    let mut seq = RecoloringSequence::new();
    let mut cur = alpha.clone();

    // H: vertices not coloured in s, with s removed from the lists.
    let keep: Vec<bool> = (0..n).map(|v| !s.contains(&alpha[v])).collect();
    let mut h = restrict_instance(inst, alpha, &keep)?;
    h.instance = h.instance.without_colours(s);

    let pref = preference(inst, &[
        &|c| !s.contains(&c) && !s_prime.contains(&c),
        &|c| s_prime.contains(&c) && !s.contains(&c),
        &|_| true,
    ]);
    let gamma = greedy_colouring(inst, &pref)?;
    invariant!(
        (0..n).all(|v| !s.contains(&gamma[v])),
        "greedy colouring used a colour of the full set"
    );

    let sub = transform_list(&h.instance, &h.project(alpha), &h.project(&gamma))?;
    let lifted = h.lift(&sub);
    cur = lifted.apply(&cur);
    seq.extend(lifted);
    for v in 0..n {
        if !keep[v] {
            seq.push(v, gamma[v]);
            cur[v] = gamma[v];
        }
    }

    // K: vertices coloured in s_prime, moved onto s.
    let in_k = mask(n, (0..n).filter(|&v| s_prime.contains(&gamma[v])));
    let mut kr = restrict_instance(inst, &gamma, &in_k)?;
    let both: BTreeSet<Colour> = s.union(s_prime).copied().collect();
    kr.instance = kr.instance.only_colours(&both);
    let kpref = preference(&kr.instance, &[&|c| !s_prime.contains(&c), &|_| true]);
    let k_target = greedy_colouring(&kr.instance, &kpref)?;
    let k_seq = linear_transform(&kr.instance, &kr.project(&gamma), &k_target)?;
    let lifted = kr.lift(&k_seq);
    cur = lifted.apply(&cur);
    seq.extend(lifted);
    invariant!(
        (0..n).all(|v| !s_prime.contains(&cur[v])),
        "colours of the new set survived its elimination"
    );

    for &v in inst.ordering().order().iter().rev() {
        let free = s_prime.iter().copied().find(|&c| {
            inst.allows(v, c) && g.neighbours(v).iter().all(|&w| cur[w] != c)
        });
        if let Some(c) = free {
            seq.steps.push(Step::new(v, c));
            cur[v] = c;
        }
    }

    let seq = seq.simplified(g, alpha);
    ensure_walk(inst, alpha, &seq, &cur, "change_full")?;
    invariant!(is_full(inst, &cur, s_prime), "change_full: new set is not full");
    let bound = change_full_bound(inst, s);
    invariant!(
        seq.len() as u128 <= bound,
        "change_full: length {} exceeds {bound}",
        seq.len()
    );
    Ok((cur, seq))
}

/// Length guarantee for [`find_full`].
pub fn find_full_bound(n: usize, k: usize, a: usize) -> u128 {
    if a == 0 || n == 0 {
        return 0;
    }
    let rounds = n.div_ceil(a) as u128;
    let per = bound_recursion(n, k.saturating_sub(a), a).saturating_add(((2 * a + 2) * n) as u128);
    rounds.saturating_mul(per)
}

/// Reaches a colouring with a full set of `a` colours.
///
/// Returns the colouring, the full set and the walk from `alpha`.
pub fn find_full(
    inst: &ListInstance,
    alpha: &Colouring,
) -> Result<(Colouring, BTreeSet<Colour>, RecoloringSequence)> {
    inst.check_colouring(alpha)?;
    let a = inst.a();
    let k = inst.k();
    let n = inst.n();
    if a == 0 {
        return Err(RecolorError::Precondition("find_full needs a >= 1".into()));
    }
    if k < 2 * a {
        return Err(RecolorError::Precondition(format!(
            "find_full needs k >= 2a, got k = {k}, a = {a}"
        )));
    }
    if let Some(v) = inst.infeasible_vertex() {
        return Err(RecolorError::Precondition(format!(
            "list assignment is not {a}-feasible at vertex {v}"
        )));
    }
    let union = inst.colours();
    let order = inst.ordering().order();
    let block = |c: &Colouring, from: usize| -> BTreeSet<Colour> {
        let s = order[from..(from + a).min(n)].iter().map(|&v| c[v]).collect();
        pad(s, &union, a)
    };

    let mut cur = alpha.clone();
    let mut seq = RecoloringSequence::new();
    let mut s = block(&cur, 0);
    loop {
        let i = full_prefix(inst, &cur, &s);
        if i == n {
            break;
        }
        let s_prime = block(&cur, i);
        let h = restrict_instance(inst, &cur, &mask(n, order[..i].iter().copied()))?;
        let (h_col, h_seq) = change_full(&h.instance, &h.project(&cur), &s, &s_prime)?;
        h.embed(&h_col, &mut cur);
        seq.extend(h.lift(&h_seq));
        invariant!(
            full_prefix(inst, &cur, &s_prime) >= (i + a).min(n),
            "find_full made no progress at prefix {i}"
        );
        s = s_prime;
    }

    let seq = seq.simplified(inst.graph(), alpha);
    ensure_walk(inst, alpha, &seq, &cur, "find_full")?;
    let bound = find_full_bound(n, k, a);
    invariant!(
        seq.len() as u128 <= bound,
        "find_full: length {} exceeds {bound}",
        seq.len()
    );
    Ok((cur, s, seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DegeneracyOrdering, Graph};

    fn set(xs: &[Colour]) -> BTreeSet<Colour> {
        xs.iter().copied().collect()
    }

    fn edge(lists: Vec<Colour>, a: usize) -> ListInstance {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let ord = DegeneracyOrdering::from_order(&g, vec![0, 1]).unwrap();
        ListInstance::new(g, ord, vec![lists; 2], a).unwrap()
    }

    #[test]
    fn fullness_examples() {
        let one = ListInstance::with_peeling(Graph::empty(1), vec![vec![1, 2]], 1).unwrap();
        assert!(is_full(&one, &Colouring(vec![1]), &set(&[1])));
        let e = edge(vec![1, 2, 3], 1);
        assert!(is_full(&e, &Colouring(vec![2, 1]), &set(&[1])));
        assert!(!is_full(&e, &Colouring(vec![2, 3]), &set(&[1])));
        assert_eq!(full_prefix(&e, &Colouring(vec![2, 3]), &set(&[1])), 0);
        assert!(full_up_to(&e, &Colouring(vec![2, 3]), &set(&[1]), 0));
    }

    #[test]
    fn change_full_single_vertex() {
        let one = ListInstance::with_peeling(Graph::empty(1), vec![vec![1, 2]], 1).unwrap();
        let (c, seq) = change_full(&one, &Colouring(vec![1]), &set(&[1]), &set(&[2])).unwrap();
        assert_eq!(c, Colouring(vec![2]));
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn change_full_on_path() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = ListInstance::with_peeling(g, vec![vec![1, 2, 3]; 3], 1).unwrap();
        let alpha = Colouring(vec![1, 2, 1]);
        assert!(is_full(&inst, &alpha, &set(&[1])));
        let (c, seq) = change_full(&inst, &alpha, &set(&[1]), &set(&[2])).unwrap();
        assert!(is_full(&inst, &c, &set(&[2])));
        assert!(seq.len() as u128 <= bound_recursion(3, 2, 1) + 12);
    }

    #[test]
    fn change_full_rejects_non_full() {
        let e = edge(vec![1, 2, 3], 1);
        assert!(change_full(&e, &Colouring(vec![2, 3]), &set(&[1]), &set(&[2])).is_err());
    }

    #[test]
    fn find_full_trivial_cases() {
        let one = ListInstance::with_peeling(Graph::empty(1), vec![vec![1, 2]], 1).unwrap();
        let (c, s, seq) = find_full(&one, &Colouring(vec![1])).unwrap();
        assert_eq!(c, Colouring(vec![1]));
        assert_eq!(s, set(&[1]));
        assert!(seq.is_empty());
    }

    #[test]
    fn find_full_on_c4() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let inst = ListInstance::with_peeling(g, vec![vec![1, 2, 3, 4]; 4], 1).unwrap();
        for alpha in [vec![1, 2, 1, 2], vec![1, 2, 3, 4], vec![4, 3, 4, 1]] {
            let alpha = Colouring(alpha);
            let (c, s, seq) = find_full(&inst, &alpha).unwrap();
            assert!(is_full(&inst, &c, &s));
            assert_eq!(s.len(), 1);
            assert!(seq.len() as u128 <= find_full_bound(4, 4, 1));
        }
    }
}
