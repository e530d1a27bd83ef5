use std::ops::ControlFlow;

use transcol::bipartite::{BipartiteInstance, Vertex};
use transcol::enumerate::enumerate_transitive_upto;
use transcol::reductions::{
    build_csp_matrix, build_here_target, build_loops_matrix, corpus, decide_turing,
    transform_csp_instance, transform_here_instance,
};
use transcol::search::{find_hom, find_mpartition, for_each_hom, verify, Constraint, Lists};

#[test]
fn here_round_trip() {
    for (name, h) in corpus::targets() {
        let target = build_here_target(&h).unwrap();
        assert!(target.digraph.is_transitive() && target.is_level_monotone());
        for g in corpus::instances(&h) {
            let inst = transform_here_instance(&g, &h).unwrap();
            assert!(inst.digraph.is_transitive(), "{name}");
            assert!(inst.is_level_monotone(), "{name}");
            let colouring = find_hom(&inst.digraph, &target.digraph, None).unwrap();
            let retraction = g.retraction(&h).unwrap();
            assert_eq!(colouring.is_some(), retraction.is_some(), "{name}: {g:?}");
            let levels = inst.level_lists(&target);
            let levelled = find_hom(&inst.digraph, &target.digraph, Some(&levels)).unwrap();
            assert_eq!(levelled.is_some(), colouring.is_some(), "{name}: {g:?}");
            if let Some(f) = levelled {
                assert!(inst.preserves_levels(&target, &f.assignment));
            }
        }
    }
}

#[test]
fn csp_and_loops_round_trip() {
    for (name, h) in corpus::targets() {
        if !h.domination_free() {
            continue;
        }
        let (csp, _) = build_csp_matrix(&h).unwrap();
        let (loops, _) = build_loops_matrix(&h).unwrap();
        for g in corpus::instances(&h) {
            let d = transform_csp_instance(&g, &h).unwrap();
            assert!(d.is_transitive(), "{name}");
            let expected = g.black_pinned_hom(&h).unwrap().is_some();
            let part = find_mpartition(&d, &csp, None).unwrap();
            assert_eq!(part.is_some(), expected, "{name} csp: {g:?}");
            if let Some(p) = &part {
                assert!(verify(&d, Constraint::Partition(&csp), p));
                // digons land on the strong pairs of distinct black vertices
                let mut pairs: Vec<usize> = (g.order()..d.n())
                    .map(|t| (p.assignment[t] - h.whites()) / 3)
                    .collect();
                pairs.sort_unstable();
                pairs.dedup();
                assert_eq!(pairs.len(), d.n() - g.order());
            }
            let part = find_mpartition(&d, &loops, None).unwrap();
            assert_eq!(part.is_some(), expected, "{name} loops: {g:?}");
            assert_eq!(decide_turing(&d, &csp, &h).unwrap(), expected, "{name} turing");
        }
    }
}

#[test]
fn turing_matches_partition_on_small_transitive_digraphs() {
    for h in [BipartiteInstance::single_edge(), BipartiteInstance::cycle6()] {
        let (m, _) = build_csp_matrix(&h).unwrap();
        for gp in enumerate_transitive_upto(5).unwrap() {
            let direct = find_mpartition(&gp, &m, None).unwrap().is_some();
            assert_eq!(decide_turing(&gp, &m, &h).unwrap(), direct, "{gp:?}");
        }
    }
}

#[test]
fn a_colouring_may_shift_levels() {
    // an extra white vertex on the black vertex of a single edge can sit on
    // the doubled second position of the path into the white vertex
    let h = BipartiteInstance::single_edge();
    let g = BipartiteInstance::new(2, 1, [(0, 0), (1, 0)])
        .unwrap()
        .with_embedding(vec![
            (Vertex::White(0), Vertex::White(0)),
            (Vertex::Black(0), Vertex::Black(0)),
        ])
        .unwrap();
    let target = build_here_target(&h).unwrap();
    let inst = transform_here_instance(&g, &h).unwrap();
    let mut lists = Lists::full(inst.digraph.n(), target.digraph.n());
    lists.set(1, (0..target.digraph.n()).filter(|&t| target.level[t] == 2).collect());
    let f = find_hom(&inst.digraph, &target.digraph, Some(&lists)).unwrap().unwrap();
    assert!(!inst.preserves_levels(&target, &f.assignment));
}

#[test]
fn single_edge_target_only_folds_twins() {
    let target = build_here_target(&BipartiteInstance::single_edge()).unwrap();
    let d = &target.digraph;
    let mut count = 0;
    for_each_hom(d, d, None, |f| {
        count += 1;
        assert!((0..d.n()).all(|v| target.twin_class(f[v]) == target.twin_class(v)));
        ControlFlow::Continue(())
    })
    .unwrap();
    // each of the four twin pairs may be swapped
    assert_eq!(count, 16);
}
