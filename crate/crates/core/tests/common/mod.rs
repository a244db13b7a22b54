#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropreal::geometry::{Direction, HomogVector, TropicalCurve};
use tropreal::l32::{one_edge_curve, PolytopePair};
use tropreal::matroid::PlaneIdeal;
use tropreal::newton::Lattice;
use tropreal::puiseux::{Poly, Series};
use tropreal::rational::{q, qr, Q};

/// The line through `[0,1,1,0]` and `[1,0,0,1]` with unit weights.
pub fn singular_line() -> TropicalCurve {
    TropicalCurve::from_parts(
        3,
        vec![
            HomogVector::from_ints(&[0, 1, 1, 0]),
            HomogVector::from_ints(&[1, 0, 0, 1]),
        ],
        &[(0, 1, 1)],
        &[
            (0, Direction::unit(4, 1), 1),
            (0, Direction::unit(4, 2), 1),
            (1, Direction::unit(4, 0), 1),
            (1, Direction::unit(4, 3), 1),
        ],
    )
    .unwrap()
}

/// `t x0 + x1 + (t+1) x2`.
pub fn singular_certificate() -> Poly {
    Poly::from_terms(
        3,
        [
            (vec![1, 0, 0], Series::monomial(q(1), q(1))),
            (vec![0, 1, 0], Series::constant(q(1))),
            (vec![0, 0, 1], Series::from_terms([(q(0), q(1)), (q(1), q(1))])),
        ],
    )
    .unwrap()
}

pub fn weight_three() -> PolytopePair {
    PolytopePair::new(3, &[[0, 2], [0, 3], [3, 0]], &[[0, 0], [2, 1], [0, 3]]).unwrap()
}

pub fn ex_rec() -> PolytopePair {
    PolytopePair::new(4, &[[0, 4], [0, 3], [1, 1], [4, 0]], &[[0, 0], [1, 0], [1, 2], [0, 4]]).unwrap()
}

pub fn ex_empty() -> PolytopePair {
    PolytopePair::new(5, &[[0, 5], [0, 4], [1, 1], [5, 0]], &[[0, 0], [1, 1], [2, 3], [0, 5]]).unwrap()
}

/// A pair with `I = [1/2, 1]` and realizable fan, shaped like the introductory figure.
pub fn intro() -> PolytopePair {
    PolytopePair::new(
        4,
        &[[0, 4], [0, 3], [1, 1], [2, 0], [4, 0]],
        &[[0, 0], [1, 0], [2, 1], [0, 4]],
    )
    .unwrap()
}

pub fn figure_pairs() -> Vec<(&'static str, PolytopePair)> {
    vec![
        ("intro", intro()),
        ("weight-3", weight_three()),
        ("ex-rec", ex_rec()),
        ("ex-empty", ex_empty()),
    ]
}

/// `(q, q')` for the ratios `0, 1/2, 1, 2, 3` and the fan.
pub fn ratio_grid() -> Vec<(Q, Q)> {
    vec![
        (q(0), q(0)),
        (q(0), q(1)),
        (q(1), q(2)),
        (q(1), q(1)),
        (q(2), q(1)),
        (q(3), q(1)),
    ]
}

/// `x1 = x2` inside projective 3-space; its Bergman fan is a classical plane.
pub fn parallel_ideal() -> PlaneIdeal {
    PlaneIdeal::from_ints(3, &[&[0, 1, -1, 0]]).unwrap()
}

/// A curve of degree 2 in the plane of [`parallel_ideal`] with one bounded edge; in the plane
/// coordinates `(y1 - y0, y3 - y0)` its Newton polygon is the unit square.
pub fn parallel_conic() -> TropicalCurve {
    let d = |v: &[i64]| Direction::new(v).unwrap();
    TropicalCurve::from_parts(
        3,
        vec![
            HomogVector::from_ints(&[0, 0, 0, 0]),
            HomogVector::from_ints(&[0, 1, 1, 1]),
        ],
        &[(0, 1, 1)],
        &[
            (0, d(&[1, 0, 0, 1]), 1),
            (0, d(&[1, 1, 1, 0]), 1),
            (1, d(&[0, 1, 1, 0]), 1),
            (1, d(&[0, 0, 0, 1]), 1),
        ],
    )
    .unwrap()
}

/// Labelled curves in their planes, each together with its expected verdict when known.
pub fn corpus() -> Vec<(String, PlaneIdeal, TropicalCurve)> {
    let l32 = PlaneIdeal::l32();
    let mut out = vec![("singular line".to_string(), l32.clone(), singular_line())];
    for (name, pair) in figure_pairs() {
        for (a, b) in ratio_grid() {
            let c = one_edge_curve(&pair, &a, &b).unwrap();
            out.push((format!("{name} q={a} q'={b}"), l32.clone(), c));
        }
    }
    let half = singular_line().rescale(&qr(1, 2)).unwrap();
    out.push(("half line".to_string(), l32, half));
    out.push(("parallel conic".to_string(), parallel_ideal(), parallel_conic()));
    out
}

/// Random pair with `P3`, `P1` spanned by the required edge and random lattice points of the simplex.
pub fn random_pair(rng: &mut ChaCha8Rng, d: i64) -> PolytopePair {
    loop {
        let pick = |rng: &mut ChaCha8Rng, base: [Lattice; 2]| {
            let mut pts = base.to_vec();
            for i in 0..=d {
                for j in 0..=d - i {
                    if rng.gen_bool(0.3) {
                        pts.push([i, j]);
                    }
                }
            }
            pts
        };
        let p3 = pick(rng, [[d, 0], [0, d]]);
        let p1 = pick(rng, [[0, 0], [0, d]]);
        if let Ok(p) = PolytopePair::new(d, &p3, &p1) {
            return p;
        }
    }
}

/// Random homogeneous ternary form of degree `d` with rational coefficients in
/// `t`-exponents from `{0, 1, 2}` and at least two terms.
pub fn random_poly(rng: &mut ChaCha8Rng, d: u32) -> Poly {
    loop {
        let mut terms = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                if rng.gen_bool(0.5) {
                    let mut series: Vec<(Q, Q)> = Vec::new();
                    for e in 0..3 {
                        if rng.gen_bool(0.5) {
                            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                            series.push((q(e), qr(sign * rng.gen_range(1..6), rng.gen_range(1..4))));
                        }
                    }
                    let s = if series.is_empty() {
                        Series::constant(qr(rng.gen_range(1..5), rng.gen_range(1..3)))
                    } else {
                        Series::from_terms(series)
                    };
                    terms.push((vec![a, b, d - a - b], s));
                }
            }
        }
        if terms.len() >= 2 {
            return Poly::from_terms(3, terms).unwrap();
        }
    }
}

/// The recession fan as a curve with a single vertex at the origin.
pub fn recession_curve(c: &TropicalCurve) -> TropicalCurve {
    let origin = HomogVector::from_ints(&vec![0; c.n() + 1]);
    let rays: Vec<_> = c.recession_fan().into_iter().map(|(d, w)| (0, d, w)).collect();
    TropicalCurve::from_parts(c.n(), vec![origin], &[], &rays).unwrap()
}
