mod common;

use common::{corpus, floyd};
use distlab_core::gen::{generate, GraphKind};
use distlab_core::schemes::{build, build_lenient, coverage_check, decode};
use distlab_core::{NoProbe, SchemeError, SchemeId, SchemeParams, WeightedGraph};

fn check_exact(scheme: SchemeId, g: &WeightedGraph, name: &str) {
    let d = floyd(g);
    let ls = build(g, scheme, SchemeParams::default()).unwrap_or_else(|e| panic!("{scheme} on {name}: {e}"));
    for x in 0..g.n() {
        for y in 0..g.n() {
            let got = ls.decode(x, y).unwrap_or_else(|e| panic!("{scheme} on {name} ({x},{y}): {e}"));
            assert_eq!(got, d[x][y], "{scheme} on {name} ({x},{y})");
        }
    }
}

#[test]
fn exact_schemes_match_floyd_warshall() {
    for (name, g) in corpus(&[1, 2, 8], &[1, 2, 3, 7, 16, 33], 2) {
        for scheme in [SchemeId::Naive, SchemeId::Walk, SchemeId::Heavypath, SchemeId::Constmicro] {
            check_exact(scheme, &g, &name);
        }
    }
}

#[test]
fn bipartite_scheme_is_exact() {
    for n in [2, 4, 9, 30, 64] {
        for seed in 0..4 {
            let g = generate(GraphKind::Bipartite, n, 1, seed);
            check_exact(SchemeId::HeavypathBipartite, &g, "bipartite");
            let t = generate(GraphKind::Tree, n, 1, seed);
            check_exact(SchemeId::HeavypathBipartite, &t, "tree");
        }
    }
    let c4 = WeightedGraph::new(4, 1, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
    check_exact(SchemeId::HeavypathBipartite, &c4, "C4");
}

#[test]
fn bipartite_scheme_rejects_bad_input() {
    let k4 = generate(GraphKind::Complete, 4, 1, 0);
    assert_eq!(
        build(&k4, SchemeId::HeavypathBipartite, SchemeParams::default()).unwrap_err(),
        SchemeError::NotBipartite
    );
    let c4 = WeightedGraph::new(4, 2, [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 1)]).unwrap();
    assert_eq!(
        build(&c4, SchemeId::HeavypathBipartite, SchemeParams::default()).unwrap_err(),
        SchemeError::NotUnweighted(2)
    );
}

#[test]
fn constmicro_with_explicit_betas() {
    for (name, g) in corpus(&[1, 2], &[5, 20, 40], 1) {
        let d = floyd(&g);
        for beta in [2u16, 4, 6, 8] {
            let ls = build(&g, SchemeId::Constmicro, SchemeParams::new(0, 0, beta)).unwrap();
            for x in 0..g.n() {
                for y in 0..g.n() {
                    assert_eq!(ls.decode(x, y).unwrap(), d[x][y], "{name} beta={beta} ({x},{y})");
                }
            }
        }
    }
}

#[test]
fn approximations_stay_in_their_sandwich() {
    for (name, g) in corpus(&[1, 3], &[2, 7, 16, 40], 1) {
        let d = floyd(&g);
        let w = g.max_weight();
        for k in 0..=2u16 {
            let dmax = 2 * (u32::from(k) + 1) * w - 1;
            for dd in 0..=dmax {
                let scheme = match (k, dd) {
                    (_, 0) => SchemeId::ApproxSubsample,
                    (0, _) if dd < 2 * w => SchemeId::ApproxWeights,
                    _ => SchemeId::ApproxCombined,
                };
                for s in [scheme, SchemeId::ApproxCombined] {
                    let p = SchemeParams::new(k, dd, 0);
                    if s == SchemeId::ApproxSubsample && dd > 0 || s == SchemeId::ApproxWeights && k > 0 {
                        continue;
                    }
                    let ls = build(&g, s, p).unwrap_or_else(|e| panic!("{s} k={k} D={dd} on {name}: {e}"));
                    let bound = ls.additive_bound();
                    assert_eq!(
                        bound,
                        2 * u64::from(k) * u64::from(w) + u64::from(dd).div_ceil(u64::from(dmax + 1 - dd))
                    );
                    for x in 0..g.n() {
                        for y in 0..g.n() {
                            let got =
                                ls.decode(x, y).unwrap_or_else(|e| panic!("{s} k={k} D={dd} on {name} ({x},{y}): {e}"));
                            let err = got
                                .checked_sub(d[x][y])
                                .unwrap_or_else(|| panic!("{s} k={k} D={dd} on {name} ({x},{y}): {got} < {}", d[x][y]));
                            assert!(err <= bound, "{s} k={k} D={dd} on {name} ({x},{y}): error {err} > {bound}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zero_parameters_are_exact() {
    for (name, g) in corpus(&[1, 4], &[3, 17, 31], 1) {
        for s in [SchemeId::ApproxSubsample, SchemeId::ApproxWeights, SchemeId::ApproxCombined] {
            check_exact(s, &g, &name);
        }
    }
}

#[test]
fn decode_is_symmetric() {
    for (name, g) in corpus(&[2], &[12, 25], 1) {
        for s in SchemeId::ALL {
            let p = SchemeParams::new(1, 1, 0);
            let Ok(ls) = build(&g, s, p) else { continue };
            for x in 0..g.n() {
                for y in 0..g.n() {
                    assert_eq!(ls.decode(x, y).unwrap(), ls.decode(y, x).unwrap(), "{s} on {name} ({x},{y})");
                }
            }
        }
    }
}

#[test]
fn constmicro_coverage_holds() {
    for (name, g) in corpus(&[1, 2, 8], &[2, 9, 50], 2) {
        let ls = build(&g, SchemeId::Constmicro, SchemeParams::default()).unwrap();
        let c = coverage_check(&ls).unwrap();
        assert_eq!(c.violations, 0, "{name}");
        assert_eq!(c.pairs, (g.n() * g.n()) as u64, "{name}");
    }
}

#[test]
fn labels_from_different_builds_do_not_mix() {
    let a = build(&generate(GraphKind::Er, 10, 1, 1), SchemeId::Heavypath, SchemeParams::default()).unwrap();
    let b = build(&generate(GraphKind::Er, 10, 1, 2), SchemeId::Heavypath, SchemeParams::default()).unwrap();
    assert_eq!(decode(&a.labels[0], &b.labels[1], None, &mut NoProbe).unwrap_err(), SchemeError::TagMismatch);
    let c = build(&generate(GraphKind::Er, 10, 1, 1), SchemeId::Walk, SchemeParams::default()).unwrap();
    assert!(matches!(decode(&a.labels[0], &c.labels[1], None, &mut NoProbe), Err(SchemeError::SchemeMismatch(..))));
    let m = build(&generate(GraphKind::Er, 10, 1, 1), SchemeId::Constmicro, SchemeParams::default()).unwrap();
    assert_eq!(decode(&m.labels[0], &m.labels[1], None, &mut NoProbe).unwrap_err(), SchemeError::MissingTables);
}

#[test]
fn lenient_build_splits_components() {
    let g = WeightedGraph::new(6, 3, [(0, 1, 2), (1, 2, 3), (3, 4, 1)]).unwrap();
    assert!(build(&g, SchemeId::Heavypath, SchemeParams::default()).is_err());
    let d = floyd(&g);
    for s in SchemeId::EXACT {
        if s == SchemeId::HeavypathBipartite {
            continue;
        }
        let ls = build_lenient(&g, s, SchemeParams::default()).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                match ls.decode(x, y) {
                    Ok(v) => assert_eq!(v, d[x][y], "{s} ({x},{y})"),
                    Err(e) => {
                        assert_eq!(e, SchemeError::DifferentComponents);
                        assert!(d[x][y] > 1 << 60);
                    }
                }
            }
        }
    }
}

#[test]
fn worked_examples() {
    let p4 = WeightedGraph::new(4, 1, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
    for s in SchemeId::EXACT {
        let ls = build(&p4, s, SchemeParams::default()).unwrap();
        assert_eq!(ls.decode(0, 3).unwrap(), 3, "{s}");
        assert_eq!(ls.decode(2, 2).unwrap(), 0, "{s}");
    }
    let single = WeightedGraph::new(1, 1, []).unwrap();
    for s in SchemeId::ALL {
        let ls = build(&single, s, SchemeParams::default()).unwrap();
        assert_eq!(ls.decode(0, 0).unwrap(), 0, "{s}");
    }
}
