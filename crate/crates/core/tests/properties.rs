//! Structural invariants, checked on generated inputs.

mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropreal::geometry::plane::{pt_i, PlaneCell, PlaneCurve};
use tropreal::geometry::HomogVector;
use tropreal::l32::{gen_binom, length_conditions, length_interval, one_edge_curve};
use tropreal::matroid::{Matroid, PlaneIdeal};
use tropreal::newton::{marked_subdivision, newton_polytope, support, tropicalize_poly, Lattice, LatticePolygon};
use tropreal::projection::pushforward;
use tropreal::puiseux::Series;
use tropreal::rational::{q, qr, Q};

fn twice_area(pts: &[Lattice]) -> i64 {
    let n = pts.len();
    (0..n)
        .map(|i| pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1])
        .sum::<i64>()
        .abs()
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-3i64..=3, -4i64..=4, 1i64..=2), 0..4)
        .prop_map(|ts| Series::from_terms(ts.into_iter().map(|(c, e, d)| (q(c), qr(e, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        let prod = (&a * &b).valuation();
        match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => prop_assert_eq!(prod, Some(x + y)),
            _ => prop_assert_eq!(prod, None),
        }
    }

    #[test]
    fn homogeneous_normalization(v in prop::collection::vec(-5i64..=5, 4), s in -5i64..=5) {
        let shifted: Vec<i64> = v.iter().map(|x| x + s).collect();
        let a = HomogVector::from_ints(&v);
        prop_assert_eq!(&a, &HomogVector::from_ints(&shifted));
        prop_assert_eq!(a.coords().iter().min(), Some(&q(0)));
    }

    #[test]
    fn pascal_rule(n in -12i64..=12, k in 1i64..=12) {
        prop_assert_eq!(gen_binom(n, k), gen_binom(n - 1, k) + gen_binom(n - 1, k - 1));
        prop_assert_eq!(gen_binom(n, 0), BigInt::from(1));
    }

    #[test]
    fn plane_curve_canonical_form(seed in any::<u64>(), cut in 1i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = pushforward(&one_edge_curve(&random_pair(&mut rng, 3), &q(4), &q(4)).unwrap(), &[0, 1, 2]).unwrap();
        let mut cells = c.cells().to_vec();
        cells.reverse();
        prop_assert_eq!(&PlaneCurve::from_cells(cells.clone()).unwrap(), &c);
        // split every segment at a rational point
        let mut split = Vec::new();
        for (cell, w) in cells {
            match cell {
                PlaneCell::Segment(a, b) => {
                    let t = qr(cut, 4);
                    let m = [&a[0] + (&b[0] - &a[0]) * &t, &a[1] + (&b[1] - &a[1]) * &t];
                    split.push((PlaneCell::segment(a, m.clone()), w));
                    split.push((PlaneCell::segment(m, b), w));
                }
                other => split.push((other, w)),
            }
        }
        prop_assert_eq!(&PlaneCurve::from_cells(split).unwrap(), &c);
    }

    #[test]
    fn tropical_hypersurfaces(seed in any::<u64>(), d in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, d);
        let c = tropicalize_poly(&f).unwrap();
        prop_assert!(c.check_balanced().is_ok());
        let pts: Vec<Lattice> = support(&f).unwrap().into_iter().map(|(p, _)| p).collect();
        let hull = LatticePolygon::hull(&pts).unwrap();
        let mx = pts.iter().map(|p| p[0]).min().unwrap();
        let my = pts.iter().map(|p| p[1]).min().unwrap();
        let newt = newton_polytope(&c).unwrap();
        prop_assert!(newt.touches_axes());
        prop_assert_eq!(newt, hull.translate(&[-mx, -my]));
    }

    #[test]
    fn subdivision_is_dual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1 + seed % 3;
        let c = pushforward(&one_edge_curve(&random_pair(&mut rng, d as i64), &q(1), &q(2)).unwrap(), &[0, 2, 3]).unwrap();
        let sub = marked_subdivision(&c).unwrap();
        if sub.newt.dim() == 2 {
            let total: i64 = sub.cells.iter().map(|cell| twice_area(&cell.points)).sum();
            prop_assert_eq!(total, twice_area(sub.newt.vertices()));
        }
        prop_assert_eq!(c.degree().unwrap() as i64, sub.newt.max_total());
    }

    #[test]
    fn pushforward_keeps_balance_and_degree(seed in any::<u64>(), a in 0i64..4, b in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1 + seed % 4;
        let c = one_edge_curve(&random_pair(&mut rng, d as i64), &q(a), &q(b)).unwrap();
        let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
        let deg = c.degree().unwrap();
        for basis in m.bases() {
            let p = pushforward(&c, basis).unwrap();
            prop_assert!(p.check_balanced().is_ok());
            prop_assert_eq!(p.degree().unwrap(), deg);
        }
    }

    #[test]
    fn interval_matches_length_conditions(seed in any::<u64>(), a in 0i64..6, b in 0i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 1 + (seed % 5) as i64);
        let (qq, qp): (Q, Q) = (q(a), q(b));
        prop_assert_eq!(length_interval(&pair).admits(&qq, &qp), length_conditions(&pair, &qq, &qp));
    }
}

#[test]
fn dual_edge_lengths_are_weights() {
    let c = PlaneCurve::from_cells(vec![
        (PlaneCell::Ray(pt_i(0, 0), [-1, 0]), 2),
        (PlaneCell::Ray(pt_i(0, 0), [0, -1]), 2),
        (PlaneCell::Ray(pt_i(0, 0), [1, 1]), 2),
    ])
    .unwrap();
    let newt = newton_polytope(&c).unwrap();
    for (a, b) in newt.edges() {
        assert_eq!(tropreal::newton::lattice_length(&a, &b), 2);
    }
}
