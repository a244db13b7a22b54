//! Tropical curves in `R^3 / R1`, identified with `R^2` via `(y1, y2) -> [0, y1, y2]`.
//!
//! A [`PlaneCurve`] is kept in a canonical form: cells are refined so that any
//! two meet in a common vertex, weights of coinciding pieces are summed, and
//! two-valent vertices between collinear cells of equal weight are erased.
//! Full lines with no vertex on them carry no vertex at all; their stored
//! point is the foot of the perpendicular from the origin. Two plane curves
//! are equal as weighted sets iff their canonical forms are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{CellKind, Direction, HomogVector, TropicalCurve};
use crate::rational::{primitive_from_rational, Q};

pub type Pt = [Q; 2];
pub type Dir2 = [i64; 2];

pub fn pt(x: Q, y: Q) -> Pt {
    [x, y]
}

pub fn pt_i(x: i64, y: i64) -> Pt {
    [Q::from_integer(x.into()), Q::from_integer(y.into())]
}

fn dq(d: &Dir2) -> Pt {
    [Q::from_integer(d[0].into()), Q::from_integer(d[1].into())]
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn add_scaled(a: &Pt, v: &Pt, s: &Q) -> Pt {
    [&a[0] + &v[0] * s, &a[1] + &v[1] * s]
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dotp(a: &Pt, b: &Pt) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Primitive integer direction of a nonzero rational vector.
pub fn prim2(v: &Pt) -> Result<Dir2> {
    let p = primitive_from_rational(v)?;
    Ok([p[0], p[1]])
}

/// Orders directions counterclockwise starting from the positive `y1` axis (inclusive).
pub fn angle_cmp(a: &Dir2, b: &Dir2) -> Ordering {
    let half = |v: &Dir2| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
        0.cmp(&c)
    })
}

/// Rotation by minus ninety degrees, `(x, y) -> (y, -x)`. Maps an outgoing ray to its dual edge vector.
pub fn rot_cw(d: &Dir2) -> Dir2 {
    [d[1], -d[0]]
}

/// A maximal cell of a plane curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneCell {
    /// Endpoints stored in increasing order.
    Segment(Pt, Pt),
    Ray(Pt, Dir2),
    /// Direction normalized so that its first nonzero coordinate is positive.
    Line(Pt, Dir2),
}

impl PlaneCell {
    pub fn segment(a: Pt, b: Pt) -> Self {
        if a <= b {
            PlaneCell::Segment(a, b)
        } else {
            PlaneCell::Segment(b, a)
        }
    }

    pub fn line(p: &Pt, d: Dir2) -> Self {
        let d = if d[0] < 0 || (d[0] == 0 && d[1] < 0) {
            [-d[0], -d[1]]
        } else {
            d
        };
        let g = dq(&[-d[1], d[0]]);
        let s = dotp(&g, p) / dotp(&g, &g);
        PlaneCell::Line([&g[0] * &s, &g[1] * &s], d)
    }

    /// Base point, direction vector and parameter range `[lo, hi]` (`None` means unbounded).
    fn param(&self) -> (Pt, Pt, Option<Q>, Option<Q>) {
        match self {
            PlaneCell::Segment(a, b) => (a.clone(), sub(b, a), Some(Q::zero()), Some(Q::from_integer(1.into()))),
            PlaneCell::Ray(a, d) => (a.clone(), dq(d), Some(Q::zero()), None),
            PlaneCell::Line(p, d) => (p.clone(), dq(d), None, None),
        }
    }

    fn in_range(s: &Q, lo: &Option<Q>, hi: &Option<Q>) -> bool {
        lo.as_ref().is_none_or(|l| s >= l) && hi.as_ref().is_none_or(|h| s <= h)
    }

    fn endpoints(&self) -> Vec<Pt> {
        match self {
            PlaneCell::Segment(a, b) => vec![a.clone(), b.clone()],
            PlaneCell::Ray(a, _) => vec![a.clone()],
            PlaneCell::Line(..) => vec![],
        }
    }

    pub fn contains(&self, q: &Pt) -> bool {
        let (p, v, lo, hi) = self.param();
        let w = sub(q, &p);
        if !cross(&v, &w).is_zero() {
            return false;
        }
        let s = dotp(&w, &v) / dotp(&v, &v);
        Self::in_range(&s, &lo, &hi)
    }

    /// Parameters on `self` where `other` touches it, restricted to the parameter range.
    fn split_params(&self, other: &PlaneCell) -> Vec<Q> {
        let (p, v, lo, hi) = self.param();
        let (p2, v2, lo2, hi2) = other.param();
        let c = cross(&v, &v2);
        let w = sub(&p2, &p);
        let mut out = Vec::new();
        if !c.is_zero() {
            let s = cross(&w, &v2) / &c;
            let t = cross(&w, &v) / &c;
            if Self::in_range(&s, &lo, &hi) && Self::in_range(&t, &lo2, &hi2) {
                out.push(s);
            }
        } else if cross(&w, &v).is_zero() {
            for e in other.endpoints() {
                let s = dotp(&sub(&e, &p), &v) / dotp(&v, &v);
                if Self::in_range(&s, &lo, &hi) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Splits at the given parameters (any order, duplicates allowed).
    fn split(&self, params: &[Q]) -> Result<Vec<PlaneCell>> {
        let (p, v, lo, hi) = self.param();
        let mut cuts: Vec<Q> = params
            .iter()
            .filter(|s| lo.as_ref().is_none_or(|l| *s > l) && hi.as_ref().is_none_or(|h| *s < h))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if cuts.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let dir = prim2(&v)?;
        let mut bounds: Vec<Option<Q>> = vec![lo.clone()];
        bounds.extend(cuts.drain(..).map(Some));
        bounds.push(hi.clone());
        let at = |s: &Q| add_scaled(&p, &v, s);
        let mut out = Vec::new();
        for w in bounds.windows(2) {
            match (&w[0], &w[1]) {
                (Some(a), Some(b)) => out.push(PlaneCell::segment(at(a), at(b))),
                (Some(a), None) => out.push(PlaneCell::Ray(at(a), dir)),
                (None, Some(b)) => out.push(PlaneCell::Ray(at(b), [-dir[0], -dir[1]])),
                (None, None) => unreachable!("at least one cut"),
            }
        }
        Ok(out)
    }
}

/// An incidence at a vertex of a plane curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub dir: Dir2,
    pub weight: u64,
    /// The other endpoint for bounded cells.
    pub to: Option<usize>,
}

/// Vertices with their incident cells, sorted counterclockwise by direction.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    pub vertices: Vec<Pt>,
    pub star: Vec<Vec<HalfEdge>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    cells: Vec<(PlaneCell, u64)>,
}

impl PlaneCurve {
    /// Canonicalizes an arbitrary finite collection of weighted cells; coinciding pieces add up.
    pub fn from_cells(input: Vec<(PlaneCell, u64)>) -> Result<PlaneCurve> {
        let input: Vec<(PlaneCell, u64)> = input.into_iter().filter(|(_, w)| *w > 0).collect();
        for (c, _) in &input {
            if let PlaneCell::Segment(a, b) = c {
                if a == b {
                    return Err(Error::Degenerate("segment with equal endpoints".into()));
                }
            }
        }
        let mut pieces: BTreeMap<PlaneCell, u64> = BTreeMap::new();
        for (i, (c, w)) in input.iter().enumerate() {
            let params: Vec<Q> = input
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, (o, _))| c.split_params(o))
                .collect();
            for piece in c.split(&params)? {
                *pieces.entry(piece).or_default() += w;
            }
        }
        let mut cells: Vec<(PlaneCell, u64)> = pieces.into_iter().collect();
        while let Some(next) = merge_once(&cells)? {
            cells = next;
        }
        cells.sort();
        Ok(PlaneCurve { cells })
    }

    pub fn cells(&self) -> &[(PlaneCell, u64)] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn graph(&self) -> PlaneGraph {
        let mut index: BTreeMap<Pt, usize> = BTreeMap::new();
        let mut vertices: Vec<Pt> = Vec::new();
        let mut id = |p: &Pt, vertices: &mut Vec<Pt>| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                vertices.push(p.clone());
                vertices.len() - 1
            })
        };
        let mut star: Vec<Vec<HalfEdge>> = Vec::new();
        let push = |star: &mut Vec<Vec<HalfEdge>>, v: usize, h: HalfEdge| {
            if star.len() <= v {
                star.resize(v + 1, Vec::new());
            }
            star[v].push(h);
        };
        for (c, w) in &self.cells {
            match c {
                PlaneCell::Segment(a, b) => {
                    let (i, j) = (id(a, &mut vertices), id(b, &mut vertices));
                    let d = prim2(&sub(b, a)).expect("segment has distinct endpoints");
                    push(
                        &mut star,
                        i,
                        HalfEdge {
                            dir: d,
                            weight: *w,
                            to: Some(j),
                        },
                    );
                    push(
                        &mut star,
                        j,
                        HalfEdge {
                            dir: [-d[0], -d[1]],
                            weight: *w,
                            to: Some(i),
                        },
                    );
                }
                PlaneCell::Ray(a, d) => {
                    let i = id(a, &mut vertices);
                    push(
                        &mut star,
                        i,
                        HalfEdge {
                            dir: *d,
                            weight: *w,
                            to: None,
                        },
                    );
                }
                PlaneCell::Line(p, d) => {
                    let i = id(p, &mut vertices);
                    push(
                        &mut star,
                        i,
                        HalfEdge {
                            dir: *d,
                            weight: *w,
                            to: None,
                        },
                    );
                    push(
                        &mut star,
                        i,
                        HalfEdge {
                            dir: [-d[0], -d[1]],
                            weight: *w,
                            to: None,
                        },
                    );
                }
            }
        }
        star.resize(vertices.len(), Vec::new());
        for s in star.iter_mut() {
            s.sort_by(|a, b| angle_cmp(&a.dir, &b.dir));
        }
        PlaneGraph { vertices, star }
    }

    pub fn check_balanced(&self) -> Result<()> {
        let g = self.graph();
        for (v, s) in g.star.iter().enumerate() {
            let mut t = [0i128; 2];
            for h in s {
                t[0] += h.dir[0] as i128 * h.weight as i128;
                t[1] += h.dir[1] as i128 * h.weight as i128;
            }
            if t != [0, 0] {
                return Err(Error::Unbalanced { vertex: v });
            }
        }
        Ok(())
    }

    /// Weighted rays of the recession fan in `R^2` (lines contribute both directions).
    pub fn recession_fan(&self) -> Vec<(Dir2, u64)> {
        let mut m: BTreeMap<Dir2, u64> = BTreeMap::new();
        for (c, w) in &self.cells {
            match c {
                PlaneCell::Ray(_, d) => *m.entry(*d).or_default() += w,
                PlaneCell::Line(_, d) => {
                    *m.entry(*d).or_default() += w;
                    *m.entry([-d[0], -d[1]]).or_default() += w;
                }
                PlaneCell::Segment(..) => {}
            }
        }
        m.into_iter().collect()
    }

    pub fn degree(&self) -> Result<u64> {
        self.to_tropical()?.degree()
    }

    pub fn contains_point(&self, p: &Pt) -> bool {
        self.cells.iter().any(|(c, _)| c.contains(p))
    }

    /// Translation by `v`.
    pub fn translate(&self, v: &Pt) -> Result<PlaneCurve> {
        let cells = self
            .cells
            .iter()
            .map(|(c, w)| {
                let c = match c {
                    PlaneCell::Segment(a, b) => PlaneCell::segment(add_scaled(a, v, &one()), add_scaled(b, v, &one())),
                    PlaneCell::Ray(a, d) => PlaneCell::Ray(add_scaled(a, v, &one()), *d),
                    PlaneCell::Line(p, d) => PlaneCell::line(&add_scaled(p, v, &one()), *d),
                };
                (c, *w)
            })
            .collect();
        PlaneCurve::from_cells(cells)
    }

    /// The same curve as a [`TropicalCurve`] with `n = 2`. Lines get their stored point as a vertex.
    pub fn to_tropical(&self) -> Result<TropicalCurve> {
        let g = self.graph();
        let vertices: Vec<HomogVector> = g
            .vertices
            .iter()
            .map(|p| HomogVector::new(vec![Q::zero(), p[0].clone(), p[1].clone()]))
            .collect();
        let mut segments = Vec::new();
        let mut rays = Vec::new();
        for (v, s) in g.star.iter().enumerate() {
            for h in s {
                match h.to {
                    Some(j) if v < j => segments.push((v, j, h.weight)),
                    Some(_) => {}
                    None => rays.push((v, Direction::new(&[0, h.dir[0], h.dir[1]])?, h.weight)),
                }
            }
        }
        TropicalCurve::from_parts(2, vertices, &segments, &rays)
    }

    pub fn from_tropical(c: &TropicalCurve) -> Result<PlaneCurve> {
        if c.n() != 2 {
            return Err(Error::Dimension(format!(
                "expected a curve in R^3/R1, got n = {}",
                c.n()
            )));
        }
        let to_pt = |v: &HomogVector| -> Pt {
            let x = v.coords();
            [&x[1] - &x[0], &x[2] - &x[0]]
        };
        let cells = c
            .cells()
            .iter()
            .map(|cell| {
                let pc = match cell.kind {
                    CellKind::Segment(i, j) => PlaneCell::segment(to_pt(&c.vertices()[i]), to_pt(&c.vertices()[j])),
                    CellKind::Ray { vertex, ray } => {
                        let r = c.rays()[ray].coords();
                        PlaneCell::Ray(to_pt(&c.vertices()[vertex]), [r[1] - r[0], r[2] - r[0]])
                    }
                };
                (pc, cell.weight)
            })
            .collect();
        PlaneCurve::from_cells(cells)
    }
}

fn one() -> Q {
    Q::from_integer(1.into())
}

/// Erases one two-valent vertex between opposite cells of equal weight, if any.
fn merge_once(cells: &[(PlaneCell, u64)]) -> Result<Option<Vec<(PlaneCell, u64)>>> {
    let mut at: BTreeMap<Pt, Vec<(usize, Dir2)>> = BTreeMap::new();
    for (k, (c, _)) in cells.iter().enumerate() {
        match c {
            PlaneCell::Segment(a, b) => {
                let d = prim2(&sub(b, a))?;
                at.entry(a.clone()).or_default().push((k, d));
                at.entry(b.clone()).or_default().push((k, [-d[0], -d[1]]));
            }
            PlaneCell::Ray(a, d) => at.entry(a.clone()).or_default().push((k, *d)),
            PlaneCell::Line(..) => {}
        }
    }
    for (p, inc) in &at {
        if inc.len() != 2 {
            continue;
        }
        let ((i, di), (j, dj)) = (inc[0], inc[1]);
        if i == j || di != [-dj[0], -dj[1]] || cells[i].1 != cells[j].1 {
            continue;
        }
        let far = |k: usize| -> Option<Pt> {
            match &cells[k].0 {
                PlaneCell::Segment(a, b) => Some(if a == p { b.clone() } else { a.clone() }),
                _ => None,
            }
        };
        let merged = match (far(i), far(j)) {
            (Some(a), Some(b)) => PlaneCell::segment(a, b),
            (Some(a), None) => PlaneCell::Ray(a, dj),
            (None, Some(b)) => PlaneCell::Ray(b, di),
            (None, None) => PlaneCell::line(p, di),
        };
        let w = cells[i].1;
        let mut out: Vec<(PlaneCell, u64)> = cells
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, c)| c.clone())
            .collect();
        out.push((merged, w));
        return Ok(Some(out));
    }
    Ok(None)
}

/// Signed area test helper: `true` if `q` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Pt, b: &Pt, q: &Pt) -> bool {
    PlaneCell::segment(a.clone(), b.clone()).contains(q)
}

/// Absolute value of the 2x2 determinant of integer vectors.
pub fn det_abs(a: &Dir2, b: &Dir2) -> i128 {
    (a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray(x: i64, y: i64, d: Dir2, w: u64) -> (PlaneCell, u64) {
        (PlaneCell::Ray(pt_i(x, y), d), w)
    }

    #[test]
    fn overlapping_rays_are_summed() {
        let c = PlaneCurve::from_cells(vec![
            ray(0, 0, [1, 0], 1),
            ray(0, 0, [0, 1], 1),
            ray(0, 0, [-1, -1], 1),
            ray(0, 0, [-1, -1], 1),
            ray(0, 0, [1, 0], 1),
            ray(0, 0, [0, 1], 1),
        ])
        .unwrap();
        assert_eq!(c.cells().len(), 3);
        assert!(c.cells().iter().all(|(_, w)| *w == 2));
        assert_eq!(c.degree().unwrap(), 2);
    }

    #[test]
    fn collinear_vertex_is_erased() {
        let c = PlaneCurve::from_cells(vec![
            (PlaneCell::segment(pt_i(0, 0), pt_i(1, 1)), 1),
            ray(1, 1, [1, 1], 1),
            ray(0, 0, [-1, 0], 1),
            ray(0, 0, [0, -1], 1),
        ])
        .unwrap();
        assert!(c.cells().contains(&(PlaneCell::Ray(pt_i(0, 0), [1, 1]), 1)));
        c.check_balanced().unwrap();
    }

    #[test]
    fn crossing_cells_get_a_vertex() {
        let c = PlaneCurve::from_cells(vec![
            (PlaneCell::line(&pt_i(0, 0), [1, 0]), 1),
            (PlaneCell::line(&pt_i(0, 0), [0, 1]), 1),
        ])
        .unwrap();
        assert_eq!(c.cells().len(), 4);
        assert_eq!(c.graph().vertices, vec![pt_i(0, 0)]);
    }

    #[test]
    fn opposite_rays_become_a_line() {
        let c = PlaneCurve::from_cells(vec![ray(3, 1, [1, 1], 2), ray(3, 1, [-1, -1], 2)]).unwrap();
        assert_eq!(c.cells(), &[(PlaneCell::line(&pt_i(1, -1), [1, 1]), 2)]);
    }

    #[test]
    fn angle_order() {
        let mut v: Vec<Dir2> = vec![[0, -1], [-1, -1], [1, 0], [0, 1], [-1, 0], [1, 1]];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]);
    }
}
