//! Small worked examples per module, checked through the public API.
//! Derived values are recomputed here by a second method.

use bispectral::certify::{certify, SpanningStructure, Verdict, DEFAULT_CERTIFY_TOL};
use bispectral::factors::{
    find_biregular_factor, matching_number, min_ore_delta, ore_delta, FactorOutcome,
};
use bispectral::graph::{
    is_isomorphic, make_complete, make_extremal, parse_graph, serialize_graph, BipartiteGraph,
    BitSet, ExtremalSpec,
};
use bispectral::packing::{nw_partition_check, nw_tree_packing_number, tree_packing_number, NwOutcome};
use bispectral::spectral::{
    largest_root, nosal_bound, quotient_of_partition, spectral_radius, EvenQuartic, FamilyMember,
    Rational, DEFAULT_TOL,
};
use bispectral::theorems::{threshold, Theorem, TheoremParams};
use bispectral::trees::{fg_deficiency, find_degree_tree, leaves_in_y, DegreeDemand, TreeWitness};

fn extremal(m: usize, n: usize, p: usize, q: usize) -> BipartiteGraph {
    make_extremal(ExtremalSpec::new(m, n, p, q).unwrap()).unwrap()
}

fn path() -> BipartiteGraph {
    BipartiteGraph::from_edges(2, 1, [(0, 0), (1, 0)]).unwrap()
}

fn c6() -> BipartiteGraph {
    let k33 = make_complete(3, 3).unwrap();
    let edges = k33.edges().filter(|e| e.x != e.y).map(|e| (e.x, e.y));
    BipartiteGraph::from_edges(3, 3, edges).unwrap()
}

/// `√((−c2 + √(c2² − 4c0)) / 2)`.
fn quadratic_root(c2: f64, c0: f64) -> f64 {
    ((-c2 + (c2 * c2 - 4.0 * c0).sqrt()) / 2.0).sqrt()
}

fn rho(g: &BipartiteGraph) -> f64 {
    spectral_radius(g, DEFAULT_TOL).unwrap().value
}

fn set(universe: usize, items: &[usize]) -> BitSet {
    BitSet::from_indices(universe, items.iter().copied())
}

#[test]
fn complete_and_extremal_shapes() {
    assert_eq!(make_complete(2, 2).unwrap().edge_count(), 4);
    assert_eq!(make_complete(1, 1).unwrap().edge_count(), 1);
    let k34 = make_complete(3, 4).unwrap();
    assert!(k34.edge_count() == 12 && k34.is_connected());

    let g = extremal(4, 2, 1, 2);
    assert_eq!((g.x_degree(0), g.edge_count()), (0, 6));
    for (m, n, p, q) in [(6, 6, 1, 5), (3, 4, 1, 3)] {
        let g = extremal(m, n, p, q);
        let direct = (0..m)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !(x < p && y < q))
            .count();
        assert_eq!(g.edge_count(), m * n - p * q);
        assert_eq!(g.edge_count(), direct);
        assert_eq!(g.x_degree(0), 1);
    }
}

#[test]
fn neighborhoods_and_edge_counts() {
    let k23 = make_complete(2, 3).unwrap();
    assert_eq!(k23.neighborhood(&BitSet::full(2)).len(), 3);
    assert!(k23.neighborhood(&BitSet::new(2)).is_empty());
    let g = extremal(4, 2, 1, 2);
    assert!(g.neighborhood(&set(4, &[0])).is_empty());

    let k33 = make_complete(3, 3).unwrap();
    assert_eq!(k33.edges_between(&BitSet::full(3), &BitSet::full(3)), 9);
    assert_eq!(k33.edges_between(&set(3, &[0]), &BitSet::new(3)), 0);
    assert_eq!(g.edges_between(&set(4, &[0]), &BitSet::full(2)), 0);
}

#[test]
fn connectivity_and_min_degree() {
    assert!(make_complete(2, 2).unwrap().is_connected());
    assert!(!extremal(4, 2, 1, 2).is_connected());
    assert!(path().is_connected());
    assert_eq!(make_complete(3, 4).unwrap().min_degree(), 3);
    assert_eq!(make_complete(1, 5).unwrap().min_degree(), 1);
    assert_eq!(extremal(3, 4, 1, 3).min_degree(), 1);
}

#[test]
fn isomorphism_examples() {
    let g = extremal(3, 4, 1, 3);
    assert!(is_isomorphic(&g, &g));
    let k22 = make_complete(2, 2).unwrap();
    let minus = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
    assert!(!is_isomorphic(&k22, &minus));
    let relabeled = g.relabel(&[2, 0, 1], &[3, 1, 0, 2]).unwrap();
    assert_ne!(relabeled, g);
    assert!(is_isomorphic(&g, &relabeled));
}

#[test]
fn text_format() {
    let t = "bip 2 3\ne 1 1\ne 1 3\ne 2 2\n";
    assert_eq!(serialize_graph(&parse_graph(t).unwrap()), t);
    let k22 = parse_graph("bip 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n").unwrap();
    assert_eq!(k22, make_complete(2, 2).unwrap());
    let empty = parse_graph("bip 2 1\n").unwrap();
    assert_eq!(empty.edge_count(), 0);
    assert!(!empty.is_connected());
}

#[test]
fn spectral_radius_examples() {
    assert!((rho(&make_complete(3, 3).unwrap()) - 3.0).abs() < 1e-9);
    assert!((rho(&make_complete(2, 3).unwrap()) - 6f64.sqrt()).abs() < 1e-9);
    let g = extremal(6, 6, 1, 5);
    let expected = quadratic_root(-31.0, 25.0);
    assert!((expected - 5.492849).abs() < 1e-6);
    assert!((rho(&g) - expected).abs() < 1e-9);
}

#[test]
fn quotient_matrices_match_substituted_rows() {
    let rows = |fm: FamilyMember| -> Vec<Vec<i128>> {
        fm.quotient_matrix()
            .entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_integer()).collect())
            .collect()
    };
    let x = FamilyMember::star_on_x(4, 2, 1).unwrap();
    assert_eq!(x.part_sizes(), [1, 3, 0, 2]);
    assert_eq!(rows(x), [[0, 0, 0, 0], [0, 0, 0, 2], [1, 3, 0, 0], [0, 3, 0, 0]]);
    let y = FamilyMember::star_on_y(4, 3, 2).unwrap();
    assert_eq!(y.part_sizes(), [1, 3, 1, 2]);
    assert_eq!(rows(y), [[0, 0, 1, 2], [0, 0, 0, 2], [1, 0, 0, 0], [1, 3, 0, 0]]);
    let b = FamilyMember::biclique(3, 4, 1).unwrap();
    assert_eq!(rows(b), [[0, 0, 1, 0], [0, 0, 1, 3], [1, 2, 0, 0], [0, 2, 0, 0]]);
}

#[test]
fn characteristic_polynomials_and_roots() {
    let cases = [
        (FamilyMember::star_on_x(4, 2, 1).unwrap(), -6, 0),
        (FamilyMember::star_on_x(6, 6, 2).unwrap(), -31, 25),
        (FamilyMember::biclique(3, 4, 1).unwrap(), -9, 6),
    ];
    for (fm, c2, c0) in cases {
        let cp = fm.char_poly();
        assert_eq!((cp.c2, cp.c0), (c2, c0), "{fm:?}");
        let root = largest_root(cp).unwrap();
        assert!((root - quadratic_root(c2 as f64, c0 as f64)).abs() < 1e-12);
        let realized = make_extremal(fm.extremal_spec()).unwrap();
        assert!((rho(&realized) - root).abs() < 1e-8, "{fm:?}");
    }
    assert!((largest_root(EvenQuartic { c2: -6, c0: 0 }).unwrap() - 6f64.sqrt()).abs() < 1e-12);
    // 2.8766156 rounds to 2.876616; the commonly quoted 2.876617 is one unit off.
    assert!((largest_root(EvenQuartic { c2: -9, c0: 6 }).unwrap() - 2.876616).abs() < 1e-6);
    assert!((rho(&extremal(4, 2, 1, 2)) - 6f64.sqrt()).abs() < 1e-9);
}

#[test]
fn theorem_thresholds() {
    let t4 = TheoremParams { k: Some(2), n: Some(6), ..Default::default() };
    assert!((threshold(Theorem::T4, &t4).unwrap() - quadratic_root(-31.0, 25.0)).abs() < 1e-12);
    let t3 = TheoremParams { m: Some(3), n: Some(4), delta: Some(1), ..Default::default() };
    assert!((threshold(Theorem::T3, &t3).unwrap() - quadratic_root(-9.0, 6.0)).abs() < 1e-12);
    let t1 = TheoremParams { a: Some(1), b: Some(2), m: Some(4), n: Some(2), ..Default::default() };
    assert!((threshold(Theorem::T1, &t1).unwrap() - 6f64.sqrt()).abs() < 1e-12);
}

#[test]
fn nosal_examples() {
    let k33 = nosal_bound(&make_complete(3, 3).unwrap());
    assert!((k33.bound - 3.0).abs() < 1e-12 && k33.tight);
    let c6 = c6();
    let nb = nosal_bound(&c6);
    assert!((nb.bound - 6f64.sqrt()).abs() < 1e-12 && !nb.tight);
    assert!((rho(&c6) - 2.0).abs() < 1e-9);
    let padded = BipartiteGraph::from_edges(3, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
    let nb = nosal_bound(&padded);
    assert!((nb.bound - 2.0).abs() < 1e-12 && nb.tight);
}

#[test]
fn quotient_of_partitions() {
    let (m, n) = (3, 5);
    let g = make_complete(m, n).unwrap();
    let q = quotient_of_partition(&g, &[(0..m).collect(), (m..m + n).collect()]).unwrap();
    let int = |v: i128| Rational::from_integer(v);
    assert_eq!(q.entries, vec![vec![int(0), int(n as i128)], vec![int(m as i128), int(0)]]);
    assert!(q.equitable);

    let fm = FamilyMember::star_on_x(6, 6, 2).unwrap();
    let realized = make_extremal(fm.extremal_spec()).unwrap();
    let blocks = fm.partition();
    let q = quotient_of_partition(&realized, &blocks).unwrap();
    assert!(q.equitable);
    assert_eq!(q.entries, fm.quotient_matrix().entries);
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            for &v in bi {
                let sum = bj.iter().filter(|&&w| adjacent(&realized, v, w)).count() as i128;
                assert_eq!(int(sum), q.entries[i][j]);
            }
        }
    }

    let k22 = make_complete(2, 2).unwrap();
    let lopsided = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
    assert!(quotient_of_partition(&k22, &[vec![0], vec![1], vec![2, 3]]).unwrap().equitable);
    let q = quotient_of_partition(&lopsided, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(!q.equitable);
}

fn adjacent(g: &BipartiteGraph, v: usize, w: usize) -> bool {
    let m = g.m();
    match (v < m, w < m) {
        (true, false) => g.has_edge(v, w - m),
        (false, true) => g.has_edge(w, v - m),
        _ => false,
    }
}

/// `min δ(S,T)` over every pair of subsets, straight from the definition.
fn brute_min_delta(g: &BipartiteGraph, a: i64, b: i64) -> i64 {
    let (m, n) = (g.m(), g.n());
    let mut best = i64::MAX;
    for s in 0..1u64 << m {
        for t in 0..1u64 << n {
            let mut e = 0;
            for x in (0..m).filter(|x| s >> x & 1 == 1) {
                e += (0..n).filter(|y| t >> y & 1 == 0 && g.has_edge(x, *y)).count() as i64;
            }
            let d = e + b * t.count_ones() as i64 - a * s.count_ones() as i64;
            best = best.min(d);
        }
    }
    best
}

#[test]
fn ore_deficiency_examples() {
    let k22 = make_complete(2, 2).unwrap();
    assert_eq!(ore_delta(&k22, &BitSet::full(2), &BitSet::new(2), 1, 1), 2);
    assert_eq!(ore_delta(&k22, &BitSet::new(2), &BitSet::new(2), 1, 1), 0);
    let g = extremal(4, 2, 1, 2);
    assert_eq!(ore_delta(&g, &set(4, &[0]), &BitSet::new(2), 1, 2), -1);

    assert_eq!(min_ore_delta(&k22, 1, 1).unwrap().delta, 0);
    assert_eq!(brute_min_delta(&k22, 1, 1), 0);
    let w = min_ore_delta(&g, 1, 2).unwrap();
    assert!(w.delta <= -1);
    assert_eq!(w.delta, brute_min_delta(&g, 1, 2));
    assert_eq!(ore_delta(&g, &w.s, &w.t, 1, 2), w.delta);
    let k42 = make_complete(4, 2).unwrap();
    assert_eq!(min_ore_delta(&k42, 1, 2).unwrap().delta, 0);
    assert_eq!(brute_min_delta(&k42, 1, 2), 0);
}

#[test]
fn biregular_factor_examples() {
    let k22 = make_complete(2, 2).unwrap();
    let f = find_biregular_factor(&k22, 1, 1).unwrap();
    let f = f.factor().unwrap();
    assert!(f.edges.len() == 2 && f.verify(&k22));

    let k42 = make_complete(4, 2).unwrap();
    let f = find_biregular_factor(&k42, 1, 2).unwrap();
    let f = f.factor().unwrap();
    assert_eq!(f.edges.len(), 4);
    assert!(f.verify(&k42));
    for y in 0..2 {
        assert_eq!(f.edges.iter().filter(|e| e.y == y).count(), 2);
    }

    let g = extremal(4, 2, 1, 2);
    match find_biregular_factor(&g, 1, 2).unwrap() {
        FactorOutcome::Violation(w) => {
            assert!(w.delta <= -1);
            assert_eq!(ore_delta(&g, &w.s, &w.t, 1, 2), w.delta);
        }
        other => panic!("expected a violation, got {other:?}"),
    }
}

/// `m − max_S (|S| − |N(S)|)`, the deficiency form of König's theorem.
fn matching_by_subsets(g: &BipartiteGraph) -> usize {
    let worst = (0..1u64 << g.m())
        .map(|s| {
            let s = BitSet::from_mask(g.m(), s);
            s.len() as i64 - g.neighborhood(&s).len() as i64
        })
        .max()
        .unwrap();
    (g.m() as i64 - worst) as usize
}

#[test]
fn matching_examples() {
    assert_eq!(matching_number(&make_complete(3, 3).unwrap()), 3);
    assert_eq!(matching_number(&make_complete(1, 5).unwrap()), 1);
    let c6 = c6();
    assert_eq!(matching_number(&c6), 3);
    assert_eq!(matching_by_subsets(&c6), 3);
}

#[test]
fn degree_deficiency_examples() {
    let star = make_complete(1, 3).unwrap();
    let f = DegreeDemand::new(vec![3]).unwrap();
    assert_eq!(fg_deficiency(&star, &f).unwrap().0, 0);

    // S = {x₁}: 2 − 1 + 1 − 1 = 1; S = {x₁, x₂}: 4 − 2 + 1 − 1 = 2.
    let p = path();
    let f2 = DegreeDemand::constant(2, 2).unwrap();
    let (d, s) = fg_deficiency(&p, &f2).unwrap();
    assert_eq!(d, 2);
    assert_eq!(s.to_vec(), vec![0, 1]);

    let g = extremal(4, 9, 1, 7);
    assert_eq!(g.x_degree(0), 2);
    let f3 = DegreeDemand::constant(4, 3).unwrap();
    assert!(fg_deficiency(&g, &f3).unwrap().0 >= 1);
}

/// Number of spanning trees of `K_{2,3}` with both X-vertices of degree 2.
fn k23_trees_with_x_degrees_two() -> usize {
    let g = make_complete(2, 3).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.x, e.y)).collect();
    let mut count = 0;
    for mask in 0u32..1 << edges.len() {
        if mask.count_ones() != 4 {
            continue;
        }
        let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let h = BipartiteGraph::from_edges(2, 3, chosen.iter().copied()).unwrap();
        if h.is_connected() && h.x_degree(0) == 2 && h.x_degree(1) == 2 {
            count += 1;
        }
    }
    count
}

#[test]
fn degree_tree_examples() {
    let star = make_complete(1, 3).unwrap();
    let t = find_degree_tree(&star, &DegreeDemand::new(vec![3]).unwrap()).unwrap();
    assert_eq!(t.tree().unwrap().edges.len(), 3);

    assert!(k23_trees_with_x_degrees_two() > 0);
    let k23 = make_complete(2, 3).unwrap();
    let f2 = DegreeDemand::constant(2, 2).unwrap();
    let t = find_degree_tree(&k23, &f2).unwrap();
    let t = t.tree().unwrap();
    assert!(t.is_spanning_tree_of(&k23) && t.meets(&k23, &f2));

    match find_degree_tree(&path(), &f2).unwrap() {
        TreeWitness::Violation { s, deficiency } => {
            assert_eq!(s.len(), 1);
            assert!(deficiency >= 1);
        }
        other => panic!("expected a violation, got {other:?}"),
    }
}

#[test]
fn leaves_in_y_examples() {
    let k23 = make_complete(2, 3).unwrap();
    let t = leaves_in_y(&k23).unwrap();
    assert!(t.tree().unwrap().x_degrees(2).iter().all(|&d| d >= 2));
    let star = make_complete(1, 4).unwrap();
    assert_eq!(leaves_in_y(&star).unwrap().tree().unwrap().edges.len(), 4);
    assert!(matches!(leaves_in_y(&path()).unwrap(), TreeWitness::Violation { .. }));
}

#[test]
fn tree_packing_examples() {
    let k22 = make_complete(2, 2).unwrap();
    assert_eq!(tree_packing_number(&k22).0, 1);
    let k44 = make_complete(4, 4).unwrap();
    let (tau, packing) = tree_packing_number(&k44);
    assert_eq!(tau, 2);
    assert!(packing.verify(&k44));
    assert_eq!(nw_tree_packing_number(&k44).unwrap(), 2);
    assert_eq!(tree_packing_number(&extremal(6, 6, 1, 5)).0, 1);

    match nw_partition_check(&k22, 2).unwrap() {
        NwOutcome::Violated(w) => {
            assert_eq!((w.t, w.crossing), (4, 4));
            assert!(w.slack(2) < 0);
        }
        NwOutcome::Confirmed => panic!("K22 cannot hold two spanning trees"),
    }
    assert_eq!(nw_partition_check(&k22, 1).unwrap(), NwOutcome::Confirmed);
    assert_eq!(nw_partition_check(&k44, 2).unwrap(), NwOutcome::Confirmed);
}

#[test]
fn certify_examples() {
    let t1 = TheoremParams { a: Some(1), b: Some(2), ..Default::default() };
    let c = certify(&make_complete(4, 2).unwrap(), Theorem::T1, &t1, DEFAULT_CERTIFY_TOL).unwrap();
    assert_eq!(c.verdict, Verdict::GuaranteedAndConstructed);
    assert!((c.rho.value - 8f64.sqrt()).abs() < 1e-9);
    assert!((c.threshold.unwrap() - 6f64.sqrt()).abs() < 1e-12);
    assert!(matches!(
        c.witness,
        Some(SpanningStructure::Factor { outcome: FactorOutcome::Factor(_) })
    ));

    let t4 = TheoremParams { k: Some(2), ..Default::default() };
    let c = certify(&extremal(6, 6, 1, 5), Theorem::T4, &t4, DEFAULT_CERTIFY_TOL).unwrap();
    assert_eq!(c.verdict, Verdict::ExtremalException);
    assert!(c.extremal);
    assert!((c.rho.value - c.threshold.unwrap()).abs() < 1e-9);
    match c.witness {
        Some(SpanningStructure::Packing { tau, .. }) => assert_eq!(tau, 1),
        other => panic!("expected a packing, got {other:?}"),
    }

    let c = certify(&path(), Theorem::T3, &TheoremParams::default(), DEFAULT_CERTIFY_TOL).unwrap();
    assert_eq!(c.verdict, Verdict::HypothesisFail);
}
