//! Newton polytopes and marked regular subdivisions of plane curves and ternary forms.
//!
//! Conventions: `trop(f)(y) = min_nu (val(a_nu) + nu . y)`, so rays of a curve are
//! inner normals of the edges of its Newton polygon and an edge of weight `w` is
//! dual to a lattice segment of lattice length `w`. The dual edge vector of an
//! outgoing direction `u` is `rot_cw(u) = (u2, -u1)`; walking the star of a vertex
//! counterclockwise traces its dual cell counterclockwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::plane::{angle_cmp, rot_cw, Dir2, PlaneCell, PlaneCurve, Pt};
use crate::linalg::solve;
use crate::puiseux::Poly;
use crate::rational::{gcd_slice, Q};

pub type Lattice = [i64; 2];

fn qi(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn dot_lq(a: &Lattice, y: &Pt) -> Q {
    qi(a[0]) * &y[0] + qi(a[1]) * &y[1]
}

fn cross_l(o: &Lattice, a: &Lattice, b: &Lattice) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Lattice length of the segment from `a` to `b`.
pub fn lattice_length(a: &Lattice, b: &Lattice) -> u64 {
    gcd_slice(&[b[0] - a[0], b[1] - a[1]]) as u64
}

/// Convex lattice polygon with vertices in counterclockwise order (two vertices for a segment).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Lattice>,
}

impl LatticePolygon {
    /// Convex hull; collinear boundary points are dropped.
    pub fn hull(points: &[Lattice]) -> Result<Self> {
        let mut pts: Vec<Lattice> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::Degenerate("empty point set".into()));
        }
        if pts.len() <= 2 {
            return Ok(LatticePolygon { vertices: pts });
        }
        let mut lower: Vec<Lattice> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && cross_l(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(*p);
        }
        let mut upper: Vec<Lattice> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && cross_l(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(*p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] == lower[1] {
            lower.pop();
        }
        Ok(LatticePolygon { vertices: lower })
    }

    pub fn vertices(&self) -> &[Lattice] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dim(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    pub fn contains(&self, p: &Lattice) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => v[0] == *p,
            2 => {
                cross_l(&v[0], &v[1], p) == 0
                    && (p[0] - v[0][0]) as i128 * (p[0] - v[1][0]) as i128 <= 0
                    && (p[1] - v[0][1]) as i128 * (p[1] - v[1][1]) as i128 <= 0
            }
            n => (0..n).all(|i| cross_l(&v[i], &v[(i + 1) % n], p) >= 0),
        }
    }

    pub fn lattice_points(&self) -> Vec<Lattice> {
        let (x0, x1) = minmax(self.vertices.iter().map(|v| v[0]));
        let (y0, y1) = minmax(self.vertices.iter().map(|v| v[1]));
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains(&[x, y]) {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    /// Edges as consecutive vertex pairs (a single edge for a segment).
    pub fn edges(&self) -> Vec<(Lattice, Lattice)> {
        let v = &self.vertices;
        match v.len() {
            1 => vec![],
            2 => vec![(v[0], v[1])],
            n => (0..n).map(|i| (v[i], v[(i + 1) % n])).collect(),
        }
    }

    /// `max (nu1 + nu2)` over the polygon.
    pub fn max_total(&self) -> i64 {
        self.vertices.iter().map(|v| v[0] + v[1]).max().expect("nonempty")
    }

    /// The polygon meets both coordinate axes (it is not divisible by a monomial).
    pub fn touches_axes(&self) -> bool {
        self.vertices.iter().any(|v| v[0] == 0) && self.vertices.iter().any(|v| v[1] == 0)
    }

    pub fn translate(&self, s: &Lattice) -> Self {
        LatticePolygon {
            vertices: self.vertices.iter().map(|v| [v[0] + s[0], v[1] + s[1]]).collect(),
        }
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min_vertex(&self) -> Lattice {
        *self.vertices.iter().min().expect("nonempty")
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x), b.max(x)))
}

/// Data of a curve that is a single classical line: the endpoints `nu`, `mu` of its Newton
/// segment (lexicographically larger first), its lattice length and a point on the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalLine {
    pub nu: Lattice,
    pub mu: Lattice,
    pub m: u64,
    pub y: Pt,
}

pub fn is_classical_line(c: &PlaneCurve) -> Option<ClassicalLine> {
    match c.cells() {
        [(PlaneCell::Line(p, _), w)] => {
            let newt = newton_polytope(c).ok()?;
            let v = newt.vertices();
            let (mu, nu) = (*v.iter().min()?, *v.iter().max()?);
            Some(ClassicalLine {
                nu,
                mu,
                m: *w,
                y: p.clone(),
            })
        }
        _ => None,
    }
}

/// Newton polygon of a plane curve, placed so that it touches both coordinate axes.
pub fn newton_polytope(c: &PlaneCurve) -> Result<LatticePolygon> {
    let mut rec = c.recession_fan();
    if rec.is_empty() {
        return Err(Error::Degenerate("curve has no rays".into()));
    }
    rec.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let mut p: Lattice = [0, 0];
    let mut pts = vec![p];
    for (u, w) in &rec {
        let e = rot_cw(u);
        p = [p[0] + e[0] * *w as i64, p[1] + e[1] * *w as i64];
        pts.push(p);
    }
    if p != [0, 0] {
        return Err(Error::Inconsistent("recession fan is not balanced".into()));
    }
    let h = LatticePolygon::hull(&pts)?;
    let s = [
        -minmax(h.vertices.iter().map(|v| v[0])).0,
        -minmax(h.vertices.iter().map(|v| v[1])).0,
    ];
    Ok(h.translate(&s))
}

/// A cell `(A_i, y_i)`: the vertices of a maximal cell (counterclockwise) and its marking.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedCell {
    pub points: Vec<Lattice>,
    pub marking: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSubdivision {
    pub newt: LatticePolygon,
    /// Sorted.
    pub cells: Vec<MarkedCell>,
}

impl MarkedSubdivision {
    pub fn cell_vertices(&self) -> BTreeSet<Lattice> {
        self.cells.iter().flat_map(|c| c.points.iter().copied()).collect()
    }

    pub fn translate(&self, s: &Lattice) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| MarkedCell {
                points: c.points.iter().map(|p| [p[0] + s[0], p[1] + s[1]]).collect(),
                marking: c.marking.clone(),
            })
            .collect();
        MarkedSubdivision {
            newt: self.newt.translate(s),
            cells,
        }
    }
}

/// Normalize a cell's point order to start at its smallest vertex, keeping orientation.
fn rotate_to_min(mut pts: Vec<Lattice>) -> Vec<Lattice> {
    if let Some(k) = pts.iter().enumerate().min_by_key(|(_, p)| **p).map(|(k, _)| k) {
        pts.rotate_left(k);
    }
    pts
}

/// The lifting values `phi(nu)` on the lattice points of Newt: realizing coefficients satisfy
/// `val(a_nu) = phi(nu) + c` on cell vertices and `val(a_nu) >= phi(nu) + c` elsewhere, for one constant `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    pub newt: LatticePolygon,
    /// Normalized to vanish at the lexicographically smallest vertex of `newt`.
    pub heights: BTreeMap<Lattice, Q>,
    pub cell_vertices: BTreeSet<Lattice>,
}

impl HeightProfile {
    /// `min_nu (phi(nu) + nu . y)`, the tropical polynomial of the profile in plane coordinates.
    pub fn eval(&self, y: &Pt) -> Q {
        self.heights
            .iter()
            .map(|(nu, h)| h + dot_lq(nu, y))
            .min()
            .expect("nonempty")
    }
}

struct CurveCells {
    newt: LatticePolygon,
    /// (cell points counterclockwise, marking, value of the tropical polynomial at the marking)
    cells: Vec<(Vec<Lattice>, Pt, Q)>,
    one_dim: Option<OneDim>,
}

struct OneDim {
    base: Lattice,
    step: Lattice,
    heights: Vec<Q>,
}

/// Dual cells of the vertices of a plane curve, located inside Newt, with the values of the
/// tropical polynomial at the markings.
fn curve_cells(c: &PlaneCurve) -> Result<CurveCells> {
    let newt = newton_polytope(c)?;
    if c.cells().iter().all(|(cell, _)| matches!(cell, PlaneCell::Line(..))) {
        return line_cells(c, newt);
    }
    if c.cells().iter().any(|(cell, _)| matches!(cell, PlaneCell::Line(..))) {
        return Err(Error::Inconsistent("isolated line next to other cells".into()));
    }
    let g = c.graph();
    let nv = g.vertices.len();
    let polys: Vec<Vec<Lattice>> = g
        .star
        .iter()
        .map(|s| {
            let mut p: Lattice = [0, 0];
            let mut out = vec![p];
            for h in s {
                let e = rot_cw(&h.dir);
                p = [p[0] + e[0] * h.weight as i64, p[1] + e[1] * h.weight as i64];
                out.push(p);
            }
            out
        })
        .collect();
    for (v, p) in polys.iter().enumerate() {
        if p.last() != Some(&[0, 0]) {
            return Err(Error::Unbalanced { vertex: v });
        }
    }
    let mut offset: Vec<Option<Lattice>> = vec![None; nv];
    let mut value: Vec<Option<Q>> = vec![None; nv];
    offset[0] = Some([0, 0]);
    value[0] = Some(Q::zero());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let ov = offset[v].expect("visited");
        for (t, h) in g.star[v].iter().enumerate() {
            let Some(j) = h.to else { continue };
            let back = g.star[j]
                .iter()
                .position(|x| x.to == Some(v) && x.dir == [-h.dir[0], -h.dir[1]])
                .ok_or_else(|| Error::Inconsistent("half-edge without partner".into()))?;
            let a = [ov[0] + polys[v][t][0], ov[1] + polys[v][t][1]];
            let oj = [a[0] - polys[j][back + 1][0], a[1] - polys[j][back + 1][1]];
            let dy = [
                &g.vertices[j][0] - &g.vertices[v][0],
                &g.vertices[j][1] - &g.vertices[v][1],
            ];
            let vj = value[v].clone().expect("visited") + dot_lq(&a, &dy);
            match offset[j] {
                None => {
                    offset[j] = Some(oj);
                    value[j] = Some(vj);
                    queue.push_back(j);
                }
                Some(o) => {
                    if o != oj || value[j].as_ref() != Some(&vj) {
                        return Err(Error::Inconsistent("dual cells do not glue".into()));
                    }
                }
            }
        }
    }
    if offset.iter().any(Option::is_none) {
        return Err(Error::Inconsistent("vertex graph is disconnected".into()));
    }
    let mut cells = Vec::new();
    let mut all = Vec::new();
    for v in 0..nv {
        let o = offset[v].expect("visited");
        let pts: Vec<Lattice> = polys[v][..polys[v].len() - 1]
            .iter()
            .map(|p| [p[0] + o[0], p[1] + o[1]])
            .collect();
        all.extend(pts.iter().copied());
        let hull = LatticePolygon::hull(&pts)?;
        if hull.dim() == 2 {
            cells.push((pts, g.vertices[v].clone(), value[v].clone().expect("visited")));
        }
    }
    let union = LatticePolygon::hull(&all)?;
    let (lm, um) = (newt.lex_min_vertex(), union.lex_min_vertex());
    let s = [lm[0] - um[0], lm[1] - um[1]];
    if union.translate(&s) != newt {
        return Err(Error::Inconsistent("dual cells do not tile the Newton polygon".into()));
    }
    let cells = cells
        .into_iter()
        .map(|(pts, y, m)| {
            let shifted: Vec<Lattice> = pts.iter().map(|p| [p[0] + s[0], p[1] + s[1]]).collect();
            let m = m + qi(s[0]) * &y[0] + qi(s[1]) * &y[1];
            (shifted, y, m)
        })
        .collect();
    Ok(CurveCells {
        newt,
        cells,
        one_dim: None,
    })
}

/// Parallel classical lines: the Newton polytope is a segment cut at the lattice lengths of the lines.
fn line_cells(c: &PlaneCurve, newt: LatticePolygon) -> Result<CurveCells> {
    let mut lines: Vec<(Q, Pt, u64)> = Vec::new();
    let mut dir: Option<Dir2> = None;
    for (cell, w) in c.cells() {
        let PlaneCell::Line(p, d) = cell else {
            unreachable!("checked by caller")
        };
        if dir.is_some_and(|x| x != *d) {
            return Err(Error::Inconsistent("non-parallel lines without a common vertex".into()));
        }
        dir = Some(*d);
        let g = rot_cw(d);
        lines.push((dot_lq(&g, p), p.clone(), *w));
    }
    let u = dir.expect("at least one line");
    let step = rot_cw(&u);
    lines.sort_by(|a, b| b.0.cmp(&a.0));
    let total: u64 = lines.iter().map(|l| l.2).sum();
    let v = newt.vertices();
    let base = if [v[0][0] + step[0] * total as i64, v[0][1] + step[1] * total as i64] == v[1] {
        v[0]
    } else {
        v[1]
    };
    let at = |i: u64| -> Lattice { [base[0] + step[0] * i as i64, base[1] + step[1] * i as i64] };
    let mut heights = vec![Q::zero()];
    let mut cells = Vec::new();
    let mut i = 0u64;
    for (s, p, w) in &lines {
        for _ in 0..*w {
            let last = heights.last().expect("nonempty").clone();
            heights.push(last - s);
        }
        let m = &heights[i as usize] + dot_lq(&at(i), p);
        cells.push((vec![at(i), at(i + w)], p.clone(), m));
        i += w;
    }
    Ok(CurveCells {
        newt,
        cells,
        one_dim: Some(OneDim { base, step, heights }),
    })
}

/// The marked subdivision of Newt dual to a plane curve.
pub fn marked_subdivision(c: &PlaneCurve) -> Result<MarkedSubdivision> {
    let cc = curve_cells(c)?;
    let mut cells: Vec<MarkedCell> = cc
        .cells
        .into_iter()
        .map(|(p, y, _)| MarkedCell {
            points: rotate_to_min(p),
            marking: y,
        })
        .collect();
    cells.sort();
    Ok(MarkedSubdivision { newt: cc.newt, cells })
}

/// The lifting function of a plane curve on the lattice points of its Newton polygon.
pub fn height_profile(c: &PlaneCurve) -> Result<HeightProfile> {
    let cc = curve_cells(c)?;
    let mut heights: BTreeMap<Lattice, Q> = BTreeMap::new();
    match &cc.one_dim {
        Some(od) => {
            for (i, h) in od.heights.iter().enumerate() {
                heights.insert(
                    [od.base[0] + od.step[0] * i as i64, od.base[1] + od.step[1] * i as i64],
                    h.clone(),
                );
            }
        }
        None => {
            for nu in cc.newt.lattice_points() {
                let h = cc
                    .cells
                    .iter()
                    .map(|(_, y, m)| m - dot_lq(&nu, y))
                    .max()
                    .expect("at least one cell");
                heights.insert(nu, h);
            }
        }
    }
    let cell_vertices = cc.cells.iter().flat_map(|(p, _, _)| p.iter().copied()).collect();
    Ok(normalized(cc.newt, heights, cell_vertices))
}

fn normalized(
    newt: LatticePolygon,
    mut heights: BTreeMap<Lattice, Q>,
    cell_vertices: BTreeSet<Lattice>,
) -> HeightProfile {
    let base = heights[&newt.lex_min_vertex()].clone();
    for h in heights.values_mut() {
        *h -= &base;
    }
    HeightProfile {
        newt,
        heights,
        cell_vertices,
    }
}

/// Lattice points `(b, c)` and valuations of the nonzero coefficients of a ternary form.
pub fn support(f: &Poly) -> Result<Vec<(Lattice, Q)>> {
    if f.nvars() != 3 {
        return Err(Error::Dimension(format!(
            "expected a ternary form, got {} variables",
            f.nvars()
        )));
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::Degenerate("polynomial is zero or not homogeneous".into()));
    }
    Ok(f.terms()
        .map(|(e, c)| ([e[1] as i64, e[2] as i64], c.valuation().expect("nonzero")))
        .collect())
}

/// Marked subdivision of `f` read off from the lower hull of its lifted support (no translation applied).
pub fn subdivision_of_poly(f: &Poly) -> Result<MarkedSubdivision> {
    let sup = support(f)?;
    if sup.len() < 2 {
        return Err(Error::Degenerate("monomial has no tropical hypersurface".into()));
    }
    let pts: Vec<Lattice> = sup.iter().map(|(p, _)| *p).collect();
    let newt = LatticePolygon::hull(&pts)?;
    let cells = if newt.dim() == 1 {
        lower_hull_1d(&sup)?.0
    } else {
        lower_facets(&sup)?
    };
    let mut cells: Vec<MarkedCell> = cells
        .into_iter()
        .map(|c| MarkedCell {
            points: rotate_to_min(c.points),
            marking: c.marking,
        })
        .collect();
    cells.sort();
    Ok(MarkedSubdivision { newt, cells })
}

/// Lower faces of the lifted collinear support; also returns the line direction of the dual curve.
fn lower_hull_1d(sup: &[(Lattice, Q)]) -> Result<(Vec<MarkedCell>, Dir2)> {
    let p0 = sup.iter().map(|s| s.0).min().expect("nonempty");
    let far = sup.iter().map(|s| s.0).max().expect("nonempty");
    let g0 = {
        let d = [far[0] - p0[0], far[1] - p0[1]];
        let g = gcd_slice(&d);
        [d[0] / g, d[1] / g]
    };
    let param = |p: &Lattice| -> i64 {
        if g0[0] != 0 {
            (p[0] - p0[0]) / g0[0]
        } else {
            (p[1] - p0[1]) / g0[1]
        }
    };
    let mut pts: Vec<(i64, Q, Lattice)> = sup.iter().map(|(p, v)| (param(p), v.clone(), *p)).collect();
    pts.sort_by_key(|a| a.0);
    let mut hull: Vec<(i64, Q, Lattice)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let lhs = (&b.1 - &a.1) * qi(p.0 - a.0);
            let rhs = (&p.1 - &a.1) * qi(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let u: Dir2 = [-g0[1], g0[0]];
    let gg = qi(g0[0] * g0[0] + g0[1] * g0[1]);
    let cells = hull
        .windows(2)
        .map(|w| {
            let len = qi(w[1].0 - w[0].0);
            let sigma = (&w[0].1 - &w[1].1) / len;
            let y = [qi(g0[0]) * &sigma / &gg, qi(g0[1]) * &sigma / &gg];
            let PlaneCell::Line(y, _) = PlaneCell::line(&y, u) else {
                unreachable!()
            };
            MarkedCell {
                points: vec![w[0].2, w[1].2],
                marking: y,
            }
        })
        .collect();
    Ok((cells, u))
}

/// Lower facets of the lifted support in the two-dimensional case.
fn lower_facets(sup: &[(Lattice, Q)]) -> Result<Vec<MarkedCell>> {
    let n = sup.len();
    let mut facets: BTreeMap<Pt, Vec<Lattice>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&sup[i], &sup[j], &sup[k]);
                if cross_l(&a.0, &b.0, &c.0) == 0 {
                    continue;
                }
                // val = m - nu . y  for the three points; unknowns (m, y1, y2)
                let rows: Vec<Vec<Q>> = [a, b, c]
                    .iter()
                    .map(|s| vec![qi(1), qi(-s.0[0]), qi(-s.0[1])])
                    .collect();
                let rhs: Vec<Q> = [a, b, c].iter().map(|s| s.1.clone()).collect();
                let sol = solve(&rows, &rhs).expect("affinely independent");
                let (m, y) = (sol[0].clone(), [sol[1].clone(), sol[2].clone()]);
                if facets.contains_key(&y) {
                    continue;
                }
                let plane = |p: &Lattice| &m - dot_lq(p, &y);
                if sup.iter().all(|(p, v)| *v >= plane(p)) {
                    let on: Vec<Lattice> = sup.iter().filter(|(p, v)| *v == plane(p)).map(|(p, _)| *p).collect();
                    facets.insert(y, on);
                }
            }
        }
    }
    facets
        .into_iter()
        .map(|(y, on)| {
            Ok(MarkedCell {
                points: LatticePolygon::hull(&on)?.vertices,
                marking: y,
            })
        })
        .collect()
}

/// Lifting function of a ternary form: the lower convex envelope of `nu -> val(a_nu)` on the lattice
/// points of Newt(f), translated so that Newt touches both axes.
pub fn height_profile_of_poly(f: &Poly) -> Result<HeightProfile> {
    let sup = support(f)?;
    let pts: Vec<Lattice> = sup.iter().map(|(p, _)| *p).collect();
    let newt = LatticePolygon::hull(&pts)?;
    let sub = subdivision_of_poly(f)?;
    let mut heights = BTreeMap::new();
    let val: HashMap<Lattice, Q> = sup.iter().cloned().collect();
    for nu in newt.lattice_points() {
        // the envelope at nu is attained on any cell containing nu
        let h = sub
            .cells
            .iter()
            .find(|c| LatticePolygon::hull(&c.points).is_ok_and(|h| h.contains(&nu)))
            .map(|c| {
                let p = c.points[0];
                &val[&p] + dot_lq(&p, &c.marking) - dot_lq(&nu, &c.marking)
            })
            .ok_or_else(|| Error::Inconsistent("lattice point outside every cell".into()))?;
        heights.insert(nu, h);
    }
    let s = [
        -minmax(newt.vertices.iter().map(|v| v[0])).0,
        -minmax(newt.vertices.iter().map(|v| v[1])).0,
    ];
    let heights = heights
        .into_iter()
        .map(|(p, h)| ([p[0] + s[0], p[1] + s[1]], h))
        .collect();
    let cell_vertices = sub
        .cell_vertices()
        .into_iter()
        .map(|p| [p[0] + s[0], p[1] + s[1]])
        .collect();
    Ok(normalized(newt.translate(&s), heights, cell_vertices))
}

/// The tropical curve `Trop(f)` of a ternary form in plane coordinates.
pub fn tropicalize_poly(f: &Poly) -> Result<PlaneCurve> {
    let sup = support(f)?;
    if sup.len() < 2 {
        return Err(Error::Degenerate("monomial has no tropical hypersurface".into()));
    }
    let pts: Vec<Lattice> = sup.iter().map(|(p, _)| *p).collect();
    if LatticePolygon::hull(&pts)?.dim() == 1 {
        let (cells, u) = lower_hull_1d(&sup)?;
        let lines = cells
            .into_iter()
            .map(|c| {
                (
                    PlaneCell::line(&c.marking, u),
                    lattice_length(&c.points[0], &c.points[1]),
                )
            })
            .collect();
        return PlaneCurve::from_cells(lines);
    }
    let cells = lower_facets(&sup)?;
    let mut owner: HashMap<(Lattice, Lattice), usize> = HashMap::new();
    for (k, c) in cells.iter().enumerate() {
        let n = c.points.len();
        for i in 0..n {
            owner.insert((c.points[i], c.points[(i + 1) % n]), k);
        }
    }
    let mut out = Vec::new();
    for (k, c) in cells.iter().enumerate() {
        let n = c.points.len();
        for i in 0..n {
            let (p, q) = (c.points[i], c.points[(i + 1) % n]);
            let w = lattice_length(&p, &q);
            match owner.get(&(q, p)) {
                Some(&j) if k < j => out.push((PlaneCell::segment(c.marking.clone(), cells[j].marking.clone()), w)),
                Some(_) => {}
                None => {
                    let e = [(q[0] - p[0]) / w as i64, (q[1] - p[1]) / w as i64];
                    out.push((PlaneCell::Ray(c.marking.clone(), [-e[1], e[0]]), w));
                }
            }
        }
    }
    PlaneCurve::from_cells(out)
}

/// `min_nu (val(a_nu) + nu . y)` for a ternary form in plane coordinates.
pub fn trop_eval(f: &Poly, y: &Pt) -> Result<Q> {
    Ok(support(f)?
        .iter()
        .map(|(p, v)| v + dot_lq(p, y))
        .min()
        .expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::plane::pt_i;
    use crate::puiseux::Series;
    use crate::rational::q;

    fn poly(terms: &[([u32; 3], i64, i64)]) -> Poly {
        Poly::from_terms(
            3,
            terms
                .iter()
                .map(|(e, c, v)| (e.to_vec(), Series::monomial(q(*c), q(*v)))),
        )
        .unwrap()
    }

    #[test]
    fn hull_and_points() {
        let h = LatticePolygon::hull(&[[0, 0], [2, 0], [0, 2], [1, 1], [1, 0]]).unwrap();
        assert_eq!(h.vertices(), &[[0, 0], [2, 0], [0, 2]]);
        assert_eq!(h.lattice_points().len(), 6);
        let s = LatticePolygon::hull(&[[0, 0], [1, 1], [3, 3]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.lattice_points().len(), 4);
    }

    #[test]
    fn line_newton_polygon() {
        let c = PlaneCurve::from_cells(vec![
            (PlaneCell::Ray(pt_i(0, 0), [1, 0]), 1),
            (PlaneCell::Ray(pt_i(0, 0), [0, 1]), 1),
            (PlaneCell::Ray(pt_i(0, 0), [-1, -1]), 1),
        ])
        .unwrap();
        let n = newton_polytope(&c).unwrap();
        assert_eq!(n.vertices(), &[[0, 0], [1, 0], [0, 1]]);
    }

    #[test]
    fn classical_line_roundtrip() {
        // x1^2 - (1 + t) x0 x1 + t x0^2 : lines y1 = 0 and y1 = 1
        let f = Poly::from_terms(
            3,
            [
                (vec![0, 2, 0], Series::constant(q(1))),
                (vec![1, 1, 0], Series::from_terms([(q(0), q(-1)), (q(1), q(-1))])),
                (vec![2, 0, 0], Series::monomial(q(1), q(1))),
            ],
        )
        .unwrap();
        let c = tropicalize_poly(&f).unwrap();
        assert_eq!(c.cells().len(), 2);
        assert_eq!(height_profile(&c).unwrap(), height_profile_of_poly(&f).unwrap());
    }

    #[test]
    fn conic_with_two_cells() {
        let f = poly(&[
            ([2, 0, 0], 1, 0),
            ([0, 2, 0], 1, 0),
            ([0, 0, 2], 1, 0),
            ([1, 1, 0], 1, 0),
            ([0, 1, 1], 1, -1),
        ]);
        let c = tropicalize_poly(&f).unwrap();
        c.check_balanced().unwrap();
        assert_eq!(c.degree().unwrap(), 2);
        assert_eq!(marked_subdivision(&c).unwrap(), subdivision_of_poly(&f).unwrap());
        assert_eq!(height_profile(&c).unwrap(), height_profile_of_poly(&f).unwrap());
    }
}
