mod common;

use proptest::prelude::*;
use unitquad::field::{FieldCtx, FieldElement};
use unitquad::graph::{
    index_of, planar_degree_formula, triangle_free_predicted, TrianglePrediction,
    UnitQuadranceGraph,
};

use common::odd_prime_powers;

#[test]
fn planar_degree_formula_holds() {
    for q in odd_prime_powers(3, 81) {
        let g = UnitQuadranceGraph::build(&FieldCtx::from_order(q).unwrap(), 2).unwrap();
        let delta = planar_degree_formula(q);
        assert_eq!(g.regular_degree(), Some(delta as usize), "q={q}");
        assert_eq!(g.connection_set().len() as u64, delta);
        assert_eq!(g.edge_count() as u64, q * q * delta / 2);
    }
}

#[test]
fn higher_dimensional_graphs_are_regular() {
    for (q, m) in [(3u64, 3usize), (5, 3), (7, 3), (3, 4)] {
        let g = UnitQuadranceGraph::build(&FieldCtx::from_order(q).unwrap(), m).unwrap();
        let sphere = g.connection_set().len();
        assert_eq!(g.regular_degree(), Some(sphere), "q={q} m={m}");
        assert_eq!(g.edge_count(), g.vertex_count() * sphere / 2);
    }
}

#[test]
fn triangle_free_for_primes_seven_mod_twelve() {
    for q in [5u64, 7, 17, 19, 29, 31] {
        assert_eq!(triangle_free_predicted(q), TrianglePrediction::True);
        let g = UnitQuadranceGraph::build(&FieldCtx::from_order(q).unwrap(), 2).unwrap();
        assert_eq!(g.triangle_count(), 0, "q={q}");
    }
}

#[test]
fn prediction_implies_no_triangles() {
    for q in odd_prime_powers(3, 31) {
        let g = UnitQuadranceGraph::build(&FieldCtx::from_order(q).unwrap(), 2).unwrap();
        let t = g.triangle_count();
        if triangle_free_predicted(q) == TrianglePrediction::True {
            assert_eq!(t, 0, "q={q}");
        }
    }
}

fn graph_and_offset() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    prop::sample::select(vec![5u64, 7, 9, 11, 13]).prop_flat_map(|q| {
        let n = (q * q) as usize;
        (Just(q), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_invariance((q, u, v, c) in graph_and_offset()) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let g = UnitQuadranceGraph::build(&ctx, 2).unwrap();
        let shift = |i: usize| -> usize {
            let (x, s) = (g.point(i), g.point(c));
            let coords: Vec<FieldElement> =
                x.coords.iter().zip(&s.coords).map(|(&a, &b)| ctx.add(a, b)).collect();
            index_of(&ctx, &coords)
        };
        prop_assert_eq!(g.has_edge(u, v), g.has_edge(shift(u), shift(v)));
    }
}
