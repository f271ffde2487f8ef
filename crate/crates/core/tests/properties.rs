use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recolor::generators::{gen_colouring, gen_graph, gen_instance, scramble, Family, GenSpec, ListPolicy};
use recolor::io::{to_json, GraphFile};
use recolor::list_recolor::full::{change_full, change_full_bound, find_full, find_full_bound, is_full};
use recolor::list_recolor::{bound_recursion, linear_transform, transform_list};
use recolor::oracle::{bfs_distance, Reach, StateSpace, DEFAULT_STATE_CAP};
use recolor::planar::{equalize_vw, find_configuration, levels, merge, Configuration, Embedding};
use recolor::{
    check_feasible, degeneracy_ordering, greedy_colouring, is_proper, restrict_instance, validate_sequence, Colour,
    Colouring, Graph, ListInstance, RecoloringSequence,
};

fn list_instance(d: usize, a: usize, n: usize, palette_extra: usize, extra: usize, seed: u64) -> ListInstance {
    let palette = d + a + 1 + extra + palette_extra;
    let spec = GenSpec { family: Family::RandomDegenerate { d }, n, seed, lists: ListPolicy::Random { palette, extra }, a };
    gen_instance(&spec).unwrap().0
}

fn planar(family: Family, n: usize, seed: u64) -> Embedding {
    let spec = GenSpec { family, n, seed, lists: ListPolicy::Classical { k: 5 }, a: 0 };
    gen_graph(&spec).unwrap().1.unwrap()
}

fn colourings(inst: &ListInstance, seed: u64) -> (Colouring, Colouring) {
    let a = scramble(inst, &gen_colouring(inst, seed).unwrap(), 4 * inst.n(), seed + 1);
    let b = scramble(inst, &gen_colouring(inst, seed + 2).unwrap(), 4 * inst.n(), seed + 3);
    (a, b)
}

/// A recorded random walk of valid single-vertex moves.
fn random_walk(inst: &ListInstance, start: &Colouring, steps: usize, seed: u64) -> (RecoloringSequence, Colouring) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    let mut seq = RecoloringSequence::new();
    if inst.n() == 0 {
        return (seq, cur);
    }
    for _ in 0..steps {
        let v = r.gen_range(0..inst.n());
        let opts: Vec<Colour> = inst
            .list(v)
            .iter()
            .copied()
            .filter(|&c| c != cur[v] && inst.graph().neighbours(v).iter().all(|&w| cur[w] != c))
            .collect();
        if !opts.is_empty() {
            let c = opts[r.gen_range(0..opts.len())];
            seq.push(v, c);
            cur[v] = c;
        }
    }
    (seq, cur)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ordering_outdegree_within_degeneracy(d in 1usize..5, n in 1usize..40, seed in any::<u64>()) {
        let spec = GenSpec { family: Family::RandomDegenerate { d }, n, seed, lists: ListPolicy::Classical { k: 3 }, a: 0 };
        let (g, _) = gen_graph(&spec).unwrap();
        let ord = degeneracy_ordering(&g);
        prop_assert!(ord.d() <= d);
        prop_assert!((0..n).all(|v| ord.outdeg(v) <= ord.d()));
        let again = degeneracy_ordering(&g);
        prop_assert_eq!(ord.order(), again.order());
    }

    #[test]
    fn greedy_is_proper_on_feasible_instances(d in 1usize..4, a in 0usize..3, n in 1usize..30, px in 0usize..4, seed in any::<u64>()) {
        let inst = list_instance(d, a, n, px, 0, seed);
        prop_assert!(check_feasible(&inst));
        let mut pref = inst.colours();
        pref.reverse();
        let c = greedy_colouring(&inst, &pref).unwrap();
        prop_assert!(inst.is_list_colouring(&c));
        prop_assert!(is_proper(inst.graph(), &c).unwrap());
    }

    #[test]
    fn corrupted_step_is_reported_first(n in 2usize..25, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let inst = list_instance(2, 1, n, 2, 0, seed);
        let start = gen_colouring(&inst, seed).unwrap();
        let (seq, end) = random_walk(&inst, &start, 3 * n, seed);
        prop_assert!(validate_sequence(&inst, &start, &seq, &end).ok());
        prop_assume!(!seq.is_empty());
        let i = pick.index(seq.len());
        let before = RecoloringSequence::from_steps(seq.steps[..i].to_vec()).apply(&start);
        let mut bad = seq.clone();
        bad.steps[i].c = before[bad.steps[i].v];
        let r = validate_sequence(&inst, &start, &bad, &end);
        prop_assert!(!r.valid);
        prop_assert_eq!(r.first_invalid_step, Some(i));
    }

    #[test]
    fn restriction_lifts(d in 1usize..4, a in 0usize..3, n in 1usize..30, seed in any::<u64>()) {
        let inst = list_instance(d, a, n, 1, 0, seed);
        let c = gen_colouring(&inst, seed).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let keep: Vec<bool> = (0..n).map(|_| r.gen_bool(0.6)).collect();
        let h = restrict_instance(&inst, &c, &keep).unwrap();
        let (sub, end) = random_walk(&h.instance, &h.project(&c), 2 * n, seed);
        let lifted = h.lift(&sub);
        let mut target = c.clone();
        h.embed(&end, &mut target);
        prop_assert!(validate_sequence(&inst, &c, &lifted, &target).ok());
    }

    #[test]
    fn prefix_restriction_keeps_feasibility(d in 1usize..4, a in 0usize..3, n in 1usize..30, cut in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let inst = list_instance(d, a, n, 1, 0, seed);
        let c = gen_colouring(&inst, seed).unwrap();
        let i = cut.index(n + 1);
        let mut keep = vec![false; n];
        for &v in &inst.ordering().order()[..i] {
            keep[v] = true;
        }
        prop_assert!(check_feasible(&restrict_instance(&inst, &c, &keep).unwrap().instance));
    }

    #[test]
    fn full_set_restriction_keeps_feasibility(d in 1usize..4, a in 1usize..3, n in 2usize..25, px in 0usize..4, seed in any::<u64>()) {
        let inst = list_instance(d, a, n, px, 0, seed);
        prop_assume!(inst.k() >= 2 * a);
        let (c, s, _) = find_full(&inst, &gen_colouring(&inst, seed).unwrap()).unwrap();
        let keep: Vec<bool> = (0..n).map(|v| !s.contains(&c[v])).collect();
        let h = restrict_instance(&inst, &c, &keep).unwrap();
        prop_assert!(check_feasible(&h.instance.without_colours(&s)));
    }

    #[test]
    fn bound_is_monotone(n in 1usize..40, k in 1usize..12, a in 1usize..6) {
        let b = bound_recursion(n, k, a);
        prop_assert!(bound_recursion(n + 1, k, a) >= b);
        prop_assert!(bound_recursion(n, k + 1, a) >= b);
        prop_assert!(bound_recursion(n, k, a + 1) <= b);
    }

    #[test]
    fn faces_cover_every_dart(n in 4usize..80, seed in any::<u64>(), q in any::<bool>()) {
        let e = planar(if q { Family::Quadrangulation } else { Family::RandomPlanarBipartite }, n, seed);
        let total: usize = e.faces().iter().map(Vec::len).sum();
        prop_assert_eq!(total, 2 * e.graph().edge_count());
    }

    #[test]
    fn levels_are_strata(n in 4usize..80, seed in any::<u64>(), q in any::<bool>()) {
        let e = planar(if q { Family::Quadrangulation } else { Family::RandomPlanarBipartite }, n, seed);
        let g = e.graph();
        let lv = levels(g).unwrap();
        for i in 1..=lv.max_level() {
            for v in (0..g.n()).filter(|&v| lv.level(v) >= i) {
                let deg = g.neighbours(v).iter().filter(|&&w| lv.level(w) >= i).count();
                if lv.level(v) == i {
                    prop_assert!(deg <= 3);
                } else {
                    prop_assert!(deg >= 4);
                }
            }
        }
    }

    #[test]
    fn configurations_equalize_and_merge(n in 8usize..80, seed in any::<u64>()) {
        let e = planar(Family::Quadrangulation, n, seed);
        let g = e.graph();
        let config = find_configuration(&e).unwrap();
        let Configuration::CaseII { v, u, w, .. } = config else {
            return Err(TestCaseError::fail("quadrangulations have minimum degree 3"));
        };
        let inst = ListInstance::uniform(g.clone(), 5, 0).unwrap();
        let alpha = scramble(&inst, &gen_colouring(&inst, seed).unwrap(), 4 * g.n(), seed);
        let (out, seq) = equalize_vw(&e, &config, &alpha).unwrap();
        prop_assert!(validate_sequence(&inst, &alpha, &seq, &out).ok());
        prop_assert_eq!(out[v], out[w]);
        prop_assert!(seq.max_per_vertex(g.n()) <= 2);
        for s in seq.iter() {
            prop_assert!(s.v == u || s.v == v || (g.has_edge(u, s.v) && g.degree(s.v) <= 3));
        }
        let (h, map) = merge(&e, &config).unwrap();
        prop_assert!(h.graph().bipartition().is_some());
        for x in 0..h.graph().n() {
            let nb = h.graph().neighbours(x);
            prop_assert!(!nb.contains(&x));
            prop_assert_eq!(nb.iter().collect::<BTreeSet<_>>().len(), nb.len());
        }
        prop_assert_eq!(map.new_to_old.iter().map(Vec::len).sum::<usize>(), g.n());
    }

    #[test]
    fn generated_instances_are_well_formed(fam in 0usize..6, n in 3usize..40, seed in any::<u64>()) {
        let family = [
            Family::Path, Family::Cycle, Family::Tree, Family::Grid { rows: 3, cols: n / 3 + 1 },
            Family::RandomPlanarBipartite, Family::RandomDegenerate { d: 2 },
        ][fam];
        let spec = GenSpec { family, n, seed, lists: ListPolicy::Classical { k: 5 }, a: 0 };
        let (inst, emb) = gen_instance(&spec).unwrap();
        prop_assert!(check_feasible(&inst));
        if let Some(e) = &emb {
            prop_assert!(recolor::planar::euler_audit(e));
        }
        let c = gen_colouring(&inst, seed).unwrap();
        prop_assert!(is_proper(inst.graph(), &c).unwrap());
        let again = gen_instance(&spec).unwrap();
        prop_assert_eq!(to_json(&GraphFile::from_instance(&inst)), to_json(&GraphFile::from_instance(&again.0)));
        prop_assert_eq!(to_json(&c), to_json(&gen_colouring(&again.0, seed).unwrap()));
    }

    #[test]
    fn oracle_neighbours_are_single_proper_changes(n in 1usize..7, seed in any::<u64>()) {
        let inst = list_instance(2, 1, n, 1, 0, seed);
        let space = StateSpace::new(&inst).unwrap();
        let c = gen_colouring(&inst, seed).unwrap();
        let mut out = Vec::new();
        space.neighbours(space.encode(&c), &mut out);
        for key in out {
            let x = space.decode(key);
            prop_assert_eq!((0..n).filter(|&v| x[v] != c[v]).count(), 1);
            prop_assert!(inst.is_list_colouring(&x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear_transform_moves_each_vertex_at_most_k_times(d in 1usize..4, extra_a in 0usize..3, n in 1usize..30, seed in any::<u64>()) {
        let a = d + 1 + extra_a;
        let spec = GenSpec { family: Family::RandomDegenerate { d }, n, seed, lists: ListPolicy::Random { palette: 2 * a, extra: 0 }, a };
        let inst = gen_instance(&spec).unwrap().0;
        let (x, y) = colourings(&inst, seed);
        let s = linear_transform(&inst, &x, &y).unwrap();
        prop_assert!(validate_sequence(&inst, &x, &s, &y).ok());
        prop_assert!(s.max_per_vertex(n) <= inst.k());
    }

    #[test]
    fn full_set_operations_meet_their_bounds(d in 1usize..4, a in 1usize..4, n in 2usize..20, px in 0usize..4, seed in any::<u64>()) {
        let inst = list_instance(d, a, n, px, 0, seed);
        let (x, y) = colourings(&inst, seed);
        prop_assume!(inst.k() >= 2 * a);
        let (x1, s, to_x1) = find_full(&inst, &x).unwrap();
        prop_assert!(validate_sequence(&inst, &x, &to_x1, &x1).ok());
        prop_assert!(is_full(&inst, &x1, &s));
        prop_assert!(to_x1.len() as u128 <= find_full_bound(n, inst.k(), a));
        let (_, t, _) = find_full(&inst, &y).unwrap();
        let (x2, to_x2) = change_full(&inst, &x1, &s, &t).unwrap();
        prop_assert!(validate_sequence(&inst, &x1, &to_x2, &x2).ok());
        prop_assert!(is_full(&inst, &x2, &t));
        prop_assert!(to_x2.len() as u128 <= change_full_bound(&inst, &s));
    }

    #[test]
    fn transform_list_is_sandwiched(d in 1usize..3, a in 1usize..3, n in 2usize..7, px in 0usize..3, seed in any::<u64>()) {
        let inst = list_instance(d, a, n, px, 0, seed);
        let (x, y) = colourings(&inst, seed);
        let s = transform_list(&inst, &x, &y).unwrap();
        prop_assert!(validate_sequence(&inst, &x, &s, &y).ok());
        prop_assert!(s.len() as u128 <= bound_recursion(n, inst.k(), a));
        if let Reach::Exact(dist) = bfs_distance(&inst, &x, &y, DEFAULT_STATE_CAP).unwrap() {
            prop_assert!(dist <= s.len());
        }
    }

    #[test]
    fn oracle_distance_is_a_metric(n in 2usize..6, seed in any::<u64>()) {
        let inst = list_instance(1, 1, n, 1, 0, seed);
        let (x, y) = colourings(&inst, seed);
        let z = scramble(&inst, &x, 7, seed ^ 9);
        let dist = |p: &Colouring, q: &Colouring| bfs_distance(&inst, p, q, DEFAULT_STATE_CAP).unwrap();
        let (xy, yx) = (dist(&x, &y), dist(&y, &x));
        prop_assert_eq!(xy, yx);
        if let (Reach::Exact(xy), Reach::Exact(xz), Reach::Exact(zy)) = (xy, dist(&x, &z), dist(&z, &y)) {
            prop_assert!(xy <= xz + zy);
        }
    }
}

#[test]
fn overlapping_full_sets_on_a_forest() {
    // Parameters where the old and new full sets share a colour inside find_full.
    let inst = list_instance(1, 2, 7, 3, 0, 3);
    let g: &Graph = inst.graph();
    assert!(g.n() == 7);
    let a = scramble(&inst, &gen_colouring(&inst, 3).unwrap(), 21, 2);
    let b = scramble(&inst, &gen_colouring(&inst, 100).unwrap(), 21, 1);
    let s = transform_list(&inst, &a, &b).unwrap();
    assert!(validate_sequence(&inst, &a, &s, &b).ok());
}

#[test]
fn arbitrary_restriction_can_lose_feasibility() {
    // Deleting an earlier neighbour strips a colour without lowering the out-degree.
    let g = Graph::new(2, [(0, 1)]).unwrap();
    let ord = recolor::DegeneracyOrdering::from_order(&g, vec![0, 1]).unwrap();
    let inst = ListInstance::new(g, ord, vec![vec![0, 1, 2], vec![0, 1]], 1).unwrap();
    assert!(check_feasible(&inst));
    let h = restrict_instance(&inst, &Colouring(vec![0, 1]), &[false, true]).unwrap();
    assert_eq!(h.instance.list(0), &[1]);
    assert!(!check_feasible(&h.instance));
}
