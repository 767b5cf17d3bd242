use suturekit::diagram::{parse_pd, GroupPresentation, KnotDiagram};
use suturekit::repvar::two_bridge::irreducible_count;
use suturekit::repvar::{critical_point_model, solve_repvar, SolverConfig};
use suturekit::table::builtin;

#[test]
fn counts_match_two_bridge_oracle_at_default_seeds() {
    let cfg = SolverConfig::default();
    for row in builtin() {
        let (p, q) = row.two_bridge.unwrap();
        let pres = GroupPresentation::wirtinger(&row.diagram().unwrap());
        let v = solve_repvar(&pres, &cfg).unwrap();
        assert_eq!(v.n_irreducible(), irreducible_count(p, q).unwrap(), "{}", row.id);
        assert!(v.all_nondegenerate(), "{}", row.id);
        assert!(v.warnings.is_empty(), "{}: {:?}", row.id, v.warnings);
        for c in &v.classes {
            assert!(c.residual_norm <= cfg.tol, "{}", row.id);
            for q in &c.representative.images {
                assert!(q.w().abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn unknot_has_only_the_reducible() {
    let p = GroupPresentation::wirtinger(&KnotDiagram::unknot());
    let v = solve_repvar(&p, &SolverConfig::default()).unwrap();
    assert_eq!(v.classes.len(), 1);
    assert!(!v.classes[0].irreducible);
    let m = critical_point_model(&v);
    assert_eq!((m.points, m.circles, m.khi_dim_upper), (2, 0, 1));
}

#[test]
fn kinked_unknot_diagram_has_only_the_reducible() {
    let p = GroupPresentation::wirtinger(&parse_pd("X[1,2,2,1]").unwrap());
    let v = solve_repvar(&p, &SolverConfig::default()).unwrap();
    assert_eq!(v.n_irreducible(), 0);
}

#[test]
fn output_is_deterministic_per_seed() {
    let pres = GroupPresentation::wirtinger(&builtin()[7].diagram().unwrap());
    let cfg = SolverConfig { seeds: Some(600), rng_seed: 7, ..SolverConfig::default() };
    let a = serde_json::to_vec(&solve_repvar(&pres, &cfg).unwrap()).unwrap();
    let b = serde_json::to_vec(&solve_repvar(&pres, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn more_seeds_do_not_change_certified_counts() {
    let pres = GroupPresentation::wirtinger(&builtin()[4].diagram().unwrap());
    for seeds in [4096, 8192] {
        let v = solve_repvar(&pres, &SolverConfig { seeds: Some(seeds), ..SolverConfig::default() }).unwrap();
        assert_eq!(v.n_irreducible(), 3);
    }
}
