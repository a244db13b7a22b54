//! Closed-form criteria for curves in the tropical plane of `x0 + x1 + x2 + x3`.
//!
//! The family handled here: curves with one bounded edge of weight `d` from
//! `[0,q,q,0]` through the origin to `[q',0,0,q']`, rays in `cone(e1,e2)` at the first
//! vertex and in `cone(e0,e3)` at the second (`q = q' = 0` are the fans). Such a curve is
//! determined by the Newton polygons `P3` of `p^{(0,1,2)} C` and `P1` of `p^{(0,2,3)} C`
//! and by `q, q'`. In `P3` a lattice point `(i, j)` stands for `x0^{d-i-j} x1^i x2^j`,
//! in `P1` for `x0^{d-i-j} x2^i x3^j`.
//!
//! Rows: for `P3` the diagonals `i + j = const`, numbered by `s = d - i - j`; for
//! `P1` the columns `i = const`, numbered by `s = i`. For a vertex `mu` with row
//! number `s`, `n` counts the lattice points of its row outside the polygon,
//! `r = d + 1 - s - n` those inside, and `l` the lattice points of the other
//! polygon in its row number `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::plane::PlaneCurve;
use crate::geometry::{Direction, HomogVector, TropicalCurve};
use crate::matroid::{Matroid, PlaneIdeal};
use crate::newton::{newton_polytope, Lattice, LatticePolygon};
use crate::projection::{algebraic_projection, pushforward};
use crate::puiseux::{Poly, Series};
use crate::rational::Q;

pub const B3: [usize; 3] = [0, 1, 2];
pub const B1: [usize; 3] = [0, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    P3,
    P1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopePair {
    pub d: i64,
    pub p3: LatticePolygon,
    pub p1: LatticePolygon,
}

impl PolytopePair {
    /// `p3` must lie in the degree-`d` simplex and contain its hypotenuse; `p1` must contain the
    /// segment from `(0,0)` to `(0,d)`.
    pub fn new(d: i64, p3: &[Lattice], p1: &[Lattice]) -> Result<Self> {
        if d < 1 {
            return Err(Error::Degenerate("degree must be positive".into()));
        }
        let p3 = LatticePolygon::hull(p3)?;
        let p1 = LatticePolygon::hull(p1)?;
        let inside = |p: &LatticePolygon| p.vertices().iter().all(|v| v[0] >= 0 && v[1] >= 0 && v[0] + v[1] <= d);
        if !inside(&p3) || !inside(&p1) {
            return Err(Error::Degenerate("polygon leaves the simplex".into()));
        }
        if !(p3.vertices().contains(&[d, 0]) && p3.vertices().contains(&[0, d]) && p3.dim() == 2) {
            return Err(Error::Degenerate(
                "P3 must be two-dimensional with the hypotenuse as an edge".into(),
            ));
        }
        if !(p1.vertices().contains(&[0, 0]) && p1.vertices().contains(&[0, d]) && p1.dim() == 2) {
            return Err(Error::Degenerate(
                "P1 must be two-dimensional with the left side as an edge".into(),
            ));
        }
        Ok(PolytopePair { d, p3, p1 })
    }

    pub fn polygon(&self, side: Side) -> &LatticePolygon {
        match side {
            Side::P3 => &self.p3,
            Side::P1 => &self.p1,
        }
    }

    /// Lattice points of row number `s` of the given side, in increasing order of the free coordinate.
    pub fn row(&self, side: Side, s: i64) -> Vec<Lattice> {
        let d = self.d;
        match side {
            Side::P3 => (0..=d - s).map(|i| [i, d - s - i]).collect(),
            Side::P1 => (0..=d - s).map(|j| [s, j]).collect(),
        }
    }

    fn row_number(&self, side: Side, v: &Lattice) -> i64 {
        match side {
            Side::P3 => self.d - v[0] - v[1],
            Side::P1 => v[0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowStats {
    pub side: Side,
    pub vertex: Lattice,
    pub s: i64,
    pub n: i64,
    pub r: i64,
    pub l: i64,
}

fn other(side: Side) -> Side {
    match side {
        Side::P3 => Side::P1,
        Side::P1 => Side::P3,
    }
}

/// Row statistics of a vertex of `P3` or `P1`.
pub fn row_stats(pair: &PolytopePair, vertex: &Lattice, side: Side) -> Result<RowStats> {
    if !pair.polygon(side).vertices().contains(vertex) {
        return Err(Error::Index(format!("{vertex:?} is not a vertex of {side:?}")));
    }
    Ok(stats_unchecked(pair, side, vertex))
}

fn stats_unchecked(pair: &PolytopePair, side: Side, v: &Lattice) -> RowStats {
    let poly = pair.polygon(side);
    let s = pair.row_number(side, v);
    let n = pair.row(side, s).iter().filter(|p| !poly.contains(p)).count() as i64;
    let r = pair.d + 1 - s - n;
    let op = other(side);
    let l = pair.row(op, n).iter().filter(|p| pair.polygon(op).contains(p)).count() as i64;
    RowStats {
        side,
        vertex: *v,
        s,
        n,
        r,
        l,
    }
}

/// Statistics for all vertices, `P3` first.
pub fn stats(pair: &PolytopePair) -> Vec<RowStats> {
    [Side::P3, Side::P1]
        .into_iter()
        .flat_map(|side| {
            pair.polygon(side)
                .vertices()
                .iter()
                .map(move |v| stats_unchecked(pair, side, v))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The fan with Newton polygons `P3`, `P1` is realizable iff `l >= r` at every vertex of both.
pub fn fan_realizable_opposite(pair: &PolytopePair) -> bool {
    stats(pair).iter().all(|st| st.l >= st.r)
}

/// `n q' <= s q` at the vertices of `P3` and `n q <= s q'` at the vertices of `P1`.
pub fn length_conditions(pair: &PolytopePair, q: &Q, qp: &Q) -> bool {
    stats(pair).iter().all(|st| {
        let (n, s) = (Q::from_integer(st.n.into()), Q::from_integer(st.s.into()));
        match st.side {
            Side::P3 => n * qp <= s * q,
            Side::P1 => n * q <= s * qp,
        }
    })
}

/// Realizability of the one-edge curve with data `(P3, P1, q, q')`.
pub fn decide_one_edge(pair: &PolytopePair, q: &Q, qp: &Q) -> bool {
    fan_realizable_opposite(pair) && length_conditions(pair, q, qp)
}

/// The set of admissible ratios `q / q'`: `[lower, upper]`, where `upper = None` is infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthInterval {
    pub lower: Q,
    pub upper: Option<Q>,
}

impl LengthInterval {
    pub fn is_empty(&self) -> bool {
        self.upper.as_ref().is_some_and(|u| self.lower > *u)
    }

    /// Membership of `(q, q')` with `q, q' >= 0`; `q' = 0` stands for the ratio infinity.
    pub fn admits(&self, q: &Q, qp: &Q) -> bool {
        if q.is_zero() && qp.is_zero() {
            return true;
        }
        if qp.is_zero() {
            return self.upper.is_none();
        }
        let ratio = q / qp;
        ratio >= self.lower && self.upper.as_ref().is_none_or(|u| ratio <= *u)
    }
}

impl std::fmt::Display for LengthInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lo = crate::rational::fmt_q(&self.lower);
        match &self.upper {
            Some(u) => write!(f, "[{lo}, {}]", crate::rational::fmt_q(u)),
            None => write!(f, "[{lo}, inf)"),
        }
    }
}

pub fn length_interval(pair: &PolytopePair) -> LengthInterval {
    let st = stats(pair);
    let lower = st
        .iter()
        .filter(|x| x.side == Side::P3 && x.s != 0)
        .map(|x| Q::new(x.n.into(), x.s.into()))
        .max()
        .unwrap_or_else(Q::zero);
    let upper = st
        .iter()
        .filter(|x| x.side == Side::P1 && x.n != 0)
        .map(|x| Q::new(x.s.into(), x.n.into()))
        .min();
    LengthInterval { lower, upper }
}

/// Edges of `poly` other than `skip`, as `(primitive direction, lattice length)` in counterclockwise order.
fn chain(poly: &LatticePolygon, skip: (Lattice, Lattice)) -> Vec<(Lattice, u64)> {
    poly.edges()
        .into_iter()
        .filter(|e| *e != skip)
        .map(|(p, q)| {
            let e = [q[0] - p[0], q[1] - p[1]];
            let w = crate::rational::gcd_slice(&e);
            ([e[0] / w, e[1] / w], w as u64)
        })
        .collect()
}

/// The one-edge curve in the plane of `x0+x1+x2+x3` with data `(P3, P1, q, q')`.
pub fn one_edge_curve(pair: &PolytopePair, q: &Q, qp: &Q) -> Result<TropicalCurve> {
    if q.is_negative() || qp.is_negative() {
        return Err(Error::Degenerate("edge parameters must be nonnegative".into()));
    }
    let d = pair.d;
    let rays3: Vec<(Direction, u64)> = chain(&pair.p3, ([d, 0], [0, d]))
        .into_iter()
        .map(|(e, w)| Ok((Direction::new(&[0, -e[1], e[0], 0])?, w)))
        .collect::<Result<_>>()?;
    let rays1: Vec<(Direction, u64)> = chain(&pair.p1, ([0, d], [0, 0]))
        .into_iter()
        .map(|(e, w)| Ok((Direction::new(&[e[1], 0, 0, e[0] + e[1]])?, w)))
        .collect::<Result<_>>()?;
    let v1 = HomogVector::new(vec![Q::zero(), q.clone(), q.clone(), Q::zero()]);
    let v2 = HomogVector::new(vec![qp.clone(), Q::zero(), Q::zero(), qp.clone()]);
    let (vertices, segments, second) = if v1 == v2 {
        (vec![v1], vec![], 0)
    } else {
        (vec![v1, v2], vec![(0, 1, d as u64)], 1)
    };
    let mut rays: Vec<(usize, Direction, u64)> = rays3.into_iter().map(|(r, w)| (0, r, w)).collect();
    rays.extend(rays1.into_iter().map(|(r, w)| (second, r, w)));
    let c = TropicalCurve::from_parts(3, vertices, &segments, &rays)?;
    c.check_balanced()?;
    Ok(c)
}

/// Recovers `(P3, P1, q, q')` from the two projections and checks that the one-edge curve
/// with these data has the given projections.
pub fn lift_data(c3: &PlaneCurve, c1: &PlaneCurve) -> Result<(PolytopePair, Q, Q)> {
    let p3 = newton_polytope(c3)?;
    let p1 = newton_polytope(c1)?;
    let d = p3.max_total();
    let pair = PolytopePair::new(d, p3.vertices(), p1.vertices())
        .map_err(|e| Error::Unsupported(format!("projections outside the one-edge family: {e}")))?;
    let single = |c: &PlaneCurve| -> Result<crate::geometry::plane::Pt> {
        let g = c.graph();
        if g.vertices.len() != 1 {
            return Err(Error::Unsupported("projection has more than one vertex".into()));
        }
        Ok(g.vertices[0].clone())
    };
    let y3 = single(c3)?;
    let y1 = single(c1)?;
    if y3[0] != y3[1] || !y1[1].is_zero() {
        return Err(Error::Unsupported(
            "vertex positions outside the one-edge family".into(),
        ));
    }
    let (q, qp) = (y3[0].clone(), -y1[0].clone());
    let lifted = one_edge_curve(&pair, &q, &qp).map_err(|e| Error::Unsupported(e.to_string()))?;
    if pushforward(&lifted, &B3)? != *c3 || pushforward(&lifted, &B1)? != *c1 {
        return Err(Error::Unsupported(
            "projections are not those of a one-edge curve".into(),
        ));
    }
    Ok((pair, q, qp))
}

/// The curve in the plane with the given `(0,1,2)`- and `(0,2,3)`-projections, for the one-edge family.
pub fn lift_curve_l32(c3: &PlaneCurve, c1: &PlaneCurve) -> Result<TropicalCurve> {
    let (pair, q, qp) = lift_data(c3, c1)?;
    one_edge_curve(&pair, &q, &qp)
}

/// Data `(P3, P1, q, q')` of a one-edge curve.
pub fn pair_of_curve(c: &TropicalCurve) -> Result<(PolytopePair, Q, Q)> {
    if c.n() != 3 {
        return Err(Error::Dimension("expected a curve in R^4/R1".into()));
    }
    let m = Matroid::from_ideal(&PlaneIdeal::l32())?;
    m.contains_curve(c)?;
    let data = lift_data(&pushforward(c, &B3)?, &pushforward(c, &B1)?)?;
    let lifted = one_edge_curve(&data.0, &data.1, &data.2)?;
    for b in m.bases() {
        if pushforward(&lifted, b)? != pushforward(c, b)? {
            return Err(Error::Unsupported("curve is not a one-edge curve".into()));
        }
    }
    Ok(data)
}

fn mono4(e: [u32; 4]) -> Poly {
    Poly::monomial(4, e.to_vec(), Series::constant(Q::one()))
}

fn sum_vars(vars: &[usize]) -> Poly {
    vars.iter().fold(Poly::zero(4), |acc, &i| &acc + &Poly::var(4, i))
}

fn u32_of(x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Degenerate("lattice window does not fit (l < r)".into()))
}

/// The form `f^mu` attached to a vertex of `P3` or `P1`: its projections have Newton polygons
/// inside `P3` and `P1` and coefficient `+-1` at `mu`.
pub fn build_fmu(pair: &PolytopePair, mu: &Lattice, side: Side) -> Result<Poly> {
    let poly = pair.polygon(side);
    let st = row_stats(pair, mu, side)?;
    if st.l < st.r {
        return Err(Error::Degenerate(format!("l < r at vertex {mu:?}")));
    }
    let d = pair.d;
    let a = st.r - 1;
    let row: Vec<Lattice> = pair.row(side, st.s).into_iter().filter(|p| poly.contains(p)).collect();
    let op = other(side);
    let window: Vec<Lattice> = pair
        .row(op, st.n)
        .into_iter()
        .filter(|p| pair.polygon(op).contains(p))
        .collect();
    match side {
        Side::P3 => {
            // row i + j = d - s: P3 occupies i in [lo, hi]
            let (lo, hi) = (row[0][0], row[row.len() - 1][0]);
            let (a1, a2) = (lo, (d - st.s) - hi);
            let a3 = window[0][1];
            let a0 = d - st.n - a - a3;
            let m = mono4([u32_of(a0)?, u32_of(a1)?, u32_of(a2)?, u32_of(a3)?]);
            Ok(&m * &sum_vars(&[0, 3]).pow(u32_of(a)?))
        }
        Side::P1 => {
            // column i = s: P1 occupies j in [lo, hi]
            let (lo, hi) = (row[0][1], row[row.len() - 1][1]);
            let (c3, c0) = (lo, (d - st.s) - hi);
            let c1 = window[0][0];
            let c2 = st.s - c1;
            let m = mono4([u32_of(c0)?, u32_of(c1)?, u32_of(c2)?, u32_of(c3)?]);
            Ok(&m * &sum_vars(&[1, 2]).pow(u32_of(a)?))
        }
    }
}

/// A combination `sum lambda_mu f^mu` over all vertices whose projections have Newton polygons
/// exactly `P3` and `P1`.
pub fn generic_fmu_sum(pair: &PolytopePair) -> Result<Poly> {
    let m = Matroid::from_ideal(&PlaneIdeal::l32())?;
    let parts: Vec<Poly> = [Side::P3, Side::P1]
        .iter()
        .flat_map(|&side| pair.polygon(side).vertices().iter().map(move |v| (side, *v)))
        .map(|(side, v)| build_fmu(pair, &v, side))
        .collect::<Result<_>>()?;
    for attempt in 1..=32i64 {
        let f = parts.iter().enumerate().fold(Poly::zero(4), |acc, (k, p)| {
            let k = k as i64;
            let lambda = Q::from_integer((1 + k * attempt + k * k).into());
            &acc + &p.scale(&Series::constant(lambda))
        });
        let newt = |b: &[usize; 3]| -> Result<LatticePolygon> {
            let g = algebraic_projection(&m, b, &f)?;
            let pts: Vec<Lattice> = g.terms().map(|(e, _)| [e[1] as i64, e[2] as i64]).collect();
            LatticePolygon::hull(&pts)
        };
        if newt(&B3)? == pair.p3 && newt(&B1)? == pair.p1 {
            return Ok(f);
        }
    }
    Err(Error::Degenerate("no generic combination found".into()))
}

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!`, zero for `k < 0`.
pub fn gen_binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // each partial product n (n-1) ... (n-i) / (i+1)! is an integer
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn cq(n: i64, k: i64) -> Q {
    Q::from_integer(gen_binom(n, k))
}

/// Both identities `sum_j (-1)^j C(a,j) C(b+j,c) = (-1)^a C(b,c-a)` and
/// `sum_j (-1)^j C(a,j) C(b-j,c) = C(b-a,c-a)` for the given naturals.
pub fn check_binomial_identities(a: i64, b: i64, c: i64) -> bool {
    let sgn = |j: i64| if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let first: BigInt = (0..=a).map(|j| sgn(j) * gen_binom(a, j) * gen_binom(b + j, c)).sum();
    let second: BigInt = (0..=a).map(|j| sgn(j) * gen_binom(a, j) * gen_binom(b - j, c)).sum();
    first == sgn(a) * gen_binom(b, c - a) && second == gen_binom(b - a, c - a)
}

fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

fn check_relation_params(d: i64, k: i64, l: i64, m: i64, n: i64) -> Result<()> {
    if k < 0 || n < 0 || m < 0 || k + n > d || l < 1 || l > n + 1 || m > k + 1 {
        return Err(Error::Degenerate(format!(
            "invalid relation parameters d={d} k={k} l={l} m={m} n={n}"
        )));
    }
    Ok(())
}

fn relation_beta(d: i64, k: i64, l: i64, m: i64, n: i64) -> Result<BTreeMap<Lattice, Q>> {
    check_relation_params(d, k, l, m, n)?;
    let mut out = BTreeMap::new();
    for i in k..=d - n {
        for j in 0..=d - i {
            let b = sign(i - k + l - 1 - j) * cq(i - m, i - k) * cq(d - i - n + l - 1 - j, d - i - n);
            if !b.is_zero() {
                out.insert([i, j], b);
            }
        }
    }
    Ok(out)
}

// closed form after summing out j and t with the binomial identities
fn relation_alpha(d: i64, k: i64, l: i64, m: i64, n: i64) -> Result<BTreeMap<Lattice, Q>> {
    check_relation_params(d, k, l, m, n)?;
    let mut out = BTreeMap::new();
    for t in 0..=d {
        for s in 0..=d - t {
            let mut acc = Q::zero();
            for i in k.max(s)..=(d - n).min(d - t) {
                acc += sign(i - k + l - 1 + d - t - s)
                    * cq(i - m, i - k)
                    * cq(d - t - s, i - s)
                    * cq(t + l - n - 1, t - n);
            }
            if !acc.is_zero() {
                out.insert([d - t - s, s], acc);
            }
        }
    }
    Ok(out)
}

pub type Coefficients = BTreeMap<Lattice, Q>;

/// The relation `sum_{Lambda_1} beta_nu b_nu = sum_{Lambda_3} alpha_nu a_nu` between the coefficients
/// `a` of `f_3` and `b` of `f_1`, as `(beta, alpha)` with nonzero entries only; `beta_{(k, l-1)} = 1`.
pub fn relation_coeffs(d: i64, k: i64, n: i64, l: i64, m: i64) -> Result<(Coefficients, Coefficients)> {
    Ok((relation_beta(d, k, l, m, n)?, relation_alpha(d, k, l, m, n)?))
}

pub fn in_lambda1(d: i64, k: i64, l: i64, n: i64, p: &Lattice) -> bool {
    let [i, j] = *p;
    k <= i && i <= d - n && (j < l || j >= d - i - n + l)
}

pub fn in_lambda3(d: i64, k: i64, m: i64, n: i64, p: &Lattice) -> bool {
    let s = p[1];
    let t = d - p[0] - p[1];
    n <= t && t <= d - k && (s < m || s >= d - t - k + m)
}

/// Closed form of the coefficients of `f_1(x0,x2,x3) = f_3(x0, -x0-x2-x3, x2)`:
/// `b_{(i,j)} = sum_{s<=i, t<=d-i-j} (-1)^{d-t-s} C(d-t-s, i-s) C(d-i-t, j) a_{(d-t-s, s)}`.
pub fn substitute_b_from_a(d: i64, a: &BTreeMap<Lattice, Q>) -> BTreeMap<Lattice, Q> {
    let mut out = BTreeMap::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let mut acc = Q::zero();
            for s in 0..=i {
                for t in 0..=d - i - j {
                    if let Some(x) = a.get(&[d - t - s, s]) {
                        acc += sign(d - t - s) * cq(d - t - s, i - s) * cq(d - i - t, j) * x;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert([i, j], acc);
            }
        }
    }
    out
}
