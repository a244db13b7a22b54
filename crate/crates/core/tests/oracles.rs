//! Independent brute-force checks of the engine's building blocks.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropreal::geometry::plane::{pt, Pt};
use tropreal::geometry::{HomogVector, TropicalCurve};
use tropreal::l32::{one_edge_curve, B3};
use tropreal::linalg::dot;
use tropreal::matroid::{BergmanCone, Matroid, PlaneIdeal};
use tropreal::newton::{height_profile, is_classical_line, support, trop_eval, tropicalize_poly};
use tropreal::projection::{coeff_map, monomials, project_direction, pushforward};
use tropreal::puiseux::{Poly, Series};
use tropreal::rational::{q, qr, Q};
use tropreal::realizability::{
    basis_offsets, collect_conditions, solve_level, verify_certificate, ConditionKind, EngineOptions, LevelSystem,
};

/// `y` lies in `cone(v_F1, v_F2) + R1` iff it is constant on `F1`, on `F2 \ F1` and on the rest,
/// with these values weakly decreasing.
fn in_cone(y: &[i64], cone: &BergmanCone) -> bool {
    let len = y.len();
    let groups: [Vec<usize>; 3] = [
        cone.f1.clone(),
        cone.f2.iter().copied().filter(|i| !cone.f1.contains(i)).collect(),
        (0..len).filter(|i| !cone.f2.contains(i)).collect(),
    ];
    let mut values = Vec::new();
    for g in &groups {
        if g.is_empty() {
            continue;
        }
        if g.iter().any(|&i| y[i] != y[g[0]]) {
            return false;
        }
        values.push(y[g[0]]);
    }
    values.windows(2).all(|w| w[0] >= w[1])
}

fn matroids() -> Vec<Matroid> {
    [
        PlaneIdeal::l32(),
        parallel_ideal(),
        PlaneIdeal::from_ints(4, &[&[1, 1, 1, 0, 0], &[0, 0, 1, 1, 1]]).unwrap(),
        PlaneIdeal::from_ints(4, &[&[1, 2, 3, 4, 5], &[1, -1, 1, -1, 2]]).unwrap(),
    ]
    .iter()
    .map(|i| Matroid::from_ideal(i).unwrap())
    .collect()
}

#[test]
fn circuit_membership_matches_cone_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in matroids() {
        let cones = m.bergman_cones();
        let len = m.ground_len();
        let mut inside = 0;
        for _ in 0..3000 {
            let y: Vec<i64> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let brute = cones.iter().any(|c| in_cone(&y, c));
            inside += brute as usize;
            assert_eq!(m.contains_point(&HomogVector::from_ints(&y)), brute, "{y:?}");
        }
        assert!(inside > 0);
    }
}

#[test]
fn uniform_matroid_counts() {
    let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
    assert_eq!(m.bases().len(), 4);
    assert_eq!(m.circuits(), &[vec![0, 1, 2, 3]]);
    assert_eq!(m.bergman_cones().len(), 12);
    let p = Matroid::from_ideal(&parallel_ideal()).unwrap();
    assert!(p.circuits().contains(&vec![1, 2]));
}

fn random_one_edge(rng: &mut ChaCha8Rng) -> TropicalCurve {
    let d = rng.gen_range(1..=4);
    let pair = random_pair(rng, d);
    one_edge_curve(&pair, &q(rng.gen_range(0..4)), &q(rng.gen_range(0..4))).unwrap()
}

#[test]
fn projected_recession_fan_is_recession_of_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
    for _ in 0..40 {
        let c = random_one_edge(&mut rng);
        for b in m.bases() {
            let mut expected: Vec<([i64; 2], u64)> = Vec::new();
            for (d, w) in c.recession_fan() {
                if let Some((u, idx)) = project_direction(&d, b) {
                    match expected.iter_mut().find(|(v, _)| *v == u) {
                        Some(e) => e.1 += w * idx,
                        None => expected.push((u, w * idx)),
                    }
                }
            }
            expected.sort();
            let mut got = pushforward(&c, b).unwrap().recession_fan();
            got.sort();
            assert_eq!(got, expected);
        }
    }
}

/// The minimum of the tropical polynomial is attained at least twice.
fn brute_in_trop(f: &Poly, y: &Pt) -> bool {
    let vals: Vec<Q> = support(f)
        .unwrap()
        .iter()
        .map(|(p, v)| v + q(p[0]) * &y[0] + q(p[1]) * &y[1])
        .collect();
    let min = vals.iter().min().unwrap();
    vals.iter().filter(|v| *v == min).count() >= 2
}

#[test]
fn tropicalization_matches_brute_force_envelope() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let d = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, d);
        let c = tropicalize_poly(&f).unwrap();
        for i in -8..=8 {
            for j in -8..=8 {
                let y = pt(qr(i, 2), qr(j, 2));
                assert_eq!(c.contains_point(&y), brute_in_trop(&f, &y), "{f} at {i}/2,{j}/2");
            }
        }
    }
}

#[test]
fn height_profile_matches_tropical_polynomial_up_to_a_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 30 {
        let d = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, d);
        let sup = support(&f).unwrap();
        if sup.iter().map(|(p, _)| p[0]).min() != Some(0) || sup.iter().map(|(p, _)| p[1]).min() != Some(0) {
            continue;
        }
        checked += 1;
        let prof = height_profile(&tropicalize_poly(&f).unwrap()).unwrap();
        let mut diffs = std::collections::BTreeSet::new();
        for i in -5..=5 {
            for j in -5..=5 {
                let y = pt(qr(i, 3), qr(j, 2));
                diffs.insert(prof.eval(&y) - trop_eval(&f, &y).unwrap());
            }
        }
        assert_eq!(diffs.len(), 1, "{f}");
    }
}

#[test]
fn level_solver_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let grid: Vec<Vec<Q>> = (0..729)
        .map(|k| vec![q(k % 9 - 4), q(k / 9 % 9 - 4), q(k / 81 - 4)])
        .collect();
    for _ in 0..300 {
        let row = |rng: &mut ChaCha8Rng| (0..3).map(|_| q(rng.gen_range(-1..=1))).collect::<Vec<Q>>();
        let ne = rng.gen_range(0..3);
        let nd = rng.gen_range(1..4);
        let sys = LevelSystem {
            level: q(0),
            e: (0..ne).map(|_| row(&mut rng)).collect(),
            d: (0..nd).map(|_| row(&mut rng)).collect(),
        };
        let ok = |z: &Vec<Q>| sys.e.iter().all(|r| dot(r, z) == q(0)) && sys.d.iter().all(|r| dot(r, z) != q(0));
        let brute = grid.iter().any(ok);
        let res = solve_level(&sys, 3);
        assert_eq!(res.solvable, brute, "{sys:?}");
        if let Some(w) = res.witness {
            assert!(ok(&w));
        }
    }
}

#[test]
fn small_level_examples() {
    let s = |e: Vec<Vec<i64>>, d: Vec<Vec<i64>>| LevelSystem {
        level: q(0),
        e: e.into_iter().map(|r| r.into_iter().map(q).collect()).collect(),
        d: d.into_iter().map(|r| r.into_iter().map(q).collect()).collect(),
    };
    assert!(!solve_level(&s(vec![vec![1, 0]], vec![vec![1, 0]]), 2).solvable);
    assert_eq!(
        solve_level(&s(vec![vec![1, 0]], vec![vec![0, 1]]), 2)
            .witness
            .map(|w| w[0].clone()),
        Some(q(0))
    );
    assert!(solve_level(&s(vec![], vec![vec![1, 0], vec![1, 1], vec![0, 1]]), 2).solvable);
}

/// Every condition of the system holds for the certificate's coefficients.
#[test]
fn certificates_satisfy_every_condition() {
    let ideal = PlaneIdeal::l32();
    let m = Matroid::from_ideal(&ideal).unwrap();
    for (pair, a, b) in [
        (weight_three(), 2, 1),
        (intro(), 1, 2),
        (intro(), 0, 0),
        (ex_empty(), 0, 0),
    ] {
        let c = one_edge_curve(&pair, &q(a), &q(b)).unwrap();
        let cs = collect_conditions(&m, &c, &EngineOptions::default()).unwrap();
        let (f, a0) = tropreal::realizability::certificate(&ideal, &c, &EngineOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(a0, cs.a0);
        let coeffs: Vec<Series> = monomials(cs.degree).iter().map(|e| f.coeff(e)).collect();
        let shift = f.terms().filter_map(|(_, s)| s.valuation()).min().unwrap();
        for cond in &cs.conditions {
            let mut value = Series::zero();
            for (x, s) in cond.form.iter().zip(&coeffs) {
                value = &value + &s.scale(x);
            }
            let val = value.valuation();
            // the certificate is shifted so that its smallest exponent is 0; undo that here
            let anchor = cs
                .conditions
                .iter()
                .filter_map(|c| c.kind.bound().cloned())
                .min()
                .unwrap();
            match &cond.kind {
                ConditionKind::Zero => assert!(val.is_none()),
                ConditionKind::ValEq(v) => assert_eq!(val.map(|x| x - &shift + &anchor), Some(v.clone())),
                ConditionKind::ValGeq(v) => assert!(val.is_none_or(|x| x - &shift + &anchor >= *v)),
            }
        }
    }
}

#[test]
fn right_hand_sides_and_offsets() {
    let ideal = PlaneIdeal::l32();
    let m = Matroid::from_ideal(&ideal).unwrap();
    let c = one_edge_curve(&weight_three(), &q(1), &q(1)).unwrap();
    let rhs = collect_conditions(&m, &c, &EngineOptions::default()).unwrap().rhs();
    // frozen from the engine at the default anchor
    assert_eq!(rhs, vec![q(-1), q(0), q(1)]);
    let fan = one_edge_curve(&weight_three(), &q(0), &q(0)).unwrap();
    assert_eq!(
        collect_conditions(&m, &fan, &EngineOptions::default()).unwrap().rhs(),
        vec![q(0)]
    );
    let offsets = basis_offsets(&ideal, &fan, &EngineOptions::default()).unwrap();
    assert!(offsets.iter().all(|(_, d)| *d == q(0)));
    let offsets = basis_offsets(&ideal, &singular_line(), &EngineOptions::default()).unwrap();
    assert_eq!(offsets[0], ([0, 1, 2], q(0)));
}

#[test]
fn perturbed_certificate_fails() {
    let ideal = PlaneIdeal::l32();
    let f = singular_certificate();
    let mut g = Poly::zero(3);
    for (e, s) in f.terms() {
        let s = if e == &vec![1, 0, 0] {
            Series::monomial(q(1), q(2))
        } else {
            s.clone()
        };
        g.add_term(e.clone(), &s);
    }
    assert!(!verify_certificate(&ideal, &singular_line(), &B3, &g).unwrap());
}

#[test]
fn product_of_certificates_realizes_the_union() {
    let ideal = PlaneIdeal::l32();
    let p = tropreal::l32::PolytopePair::new(1, &[[0, 0], [1, 0], [0, 1]], &[[0, 0], [1, 0], [0, 1]]).unwrap();
    let a = one_edge_curve(&p, &q(1), &q(1)).unwrap();
    let b = one_edge_curve(&p, &q(3), &q(2)).unwrap();
    let mut verts = a.vertices().to_vec();
    verts.extend(b.vertices().iter().cloned());
    let nv = a.vertices().len();
    let mut segs = Vec::new();
    let mut rays = Vec::new();
    for (c, off) in [(&a, 0), (&b, nv)] {
        for cell in c.cells() {
            match cell.kind {
                tropreal::geometry::CellKind::Segment(i, j) => segs.push((i + off, j + off, cell.weight)),
                tropreal::geometry::CellKind::Ray { vertex, ray } => {
                    rays.push((vertex + off, c.rays()[ray].clone(), cell.weight))
                }
            }
        }
    }
    let union = TropicalCurve::from_parts(3, verts, &segs, &rays).unwrap();
    let opts = EngineOptions::default();
    let (fa, a0) = tropreal::realizability::certificate(&ideal, &a, &opts)
        .unwrap()
        .unwrap();
    let (fb, b0) = tropreal::realizability::certificate(&ideal, &b, &opts)
        .unwrap()
        .unwrap();
    assert_eq!((a0, b0), (B3, B3));
    assert!(verify_certificate(&ideal, &union, &B3, &(&fa * &fb)).unwrap());
    assert!(tropreal::realizability::decide(&ideal, &union, &opts).unwrap());
}

#[test]
fn classical_lines_are_recognized() {
    use tropreal::geometry::plane::{pt_i, PlaneCell, PlaneCurve};
    let line = |w| PlaneCurve::from_cells(vec![(PlaneCell::line(&pt_i(0, 0), [1, 1]), w)]).unwrap();
    let l = is_classical_line(&line(1)).unwrap();
    assert_eq!((l.nu, l.mu, l.m), ([1, 0], [0, 1], 1));
    assert_eq!(is_classical_line(&line(2)).unwrap().m, 2);
    let tripod = pushforward(&singular_line(), &B3).unwrap();
    assert!(is_classical_line(&tripod).is_none());
}

#[test]
fn coefficient_maps_compose() {
    let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
    for d in 1..=3 {
        for a in m.bases() {
            for b in m.bases() {
                for c in m.bases() {
                    let ab = coeff_map(&m, a, b, d).unwrap();
                    let bc = coeff_map(&m, b, c, d).unwrap();
                    let ac = coeff_map(&m, a, c, d).unwrap();
                    let n = ab.len();
                    for i in 0..n {
                        for j in 0..n {
                            let s: Q = (0..n).map(|k| &bc[i][k] * &ab[k][j]).sum();
                            assert_eq!(s, ac[i][j]);
                        }
                    }
                }
            }
        }
    }
}
