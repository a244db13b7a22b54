//! Points, directions and weighted one-dimensional complexes in the quotient
//! space `R^{n+1} / R(1,...,1)`.
//!
//! Points are stored by their canonical representative (minimum coordinate 0).
//! Directions are primitive integer vectors in `Z^{n+1} / Z(1,...,1)`, stored
//! with minimum coordinate 0 as well.

pub mod plane;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, lcm_denominators, primitive_from_rational, primitive_int, Q};

/// A point of `R^{n+1} / R1`, canonical representative with minimum coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomogVector(Vec<Q>);

impl HomogVector {
    pub fn new(mut coords: Vec<Q>) -> Self {
        if let Some(m) = coords.iter().min().cloned() {
            for c in coords.iter_mut() {
                *c -= &m;
            }
        }
        HomogVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, m: &Q) -> Self {
        Self::new(self.0.iter().map(|c| c * m).collect())
    }

    /// `self + s * dir`.
    pub fn offset(&self, dir: &Direction, s: &Q) -> Self {
        Self::new(
            self.0
                .iter()
                .zip(dir.coords())
                .map(|(c, &d)| c + s * Q::from_integer(d.into()))
                .collect(),
        )
    }
}

impl fmt::Display for HomogVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A primitive direction in `Z^{n+1} / Z1`, normalized to minimum coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(Vec<i64>);

impl Direction {
    /// Normalizes an integer vector; the lattice index of the input over the result is returned alongside.
    pub fn with_index(v: &[i64]) -> Result<(Self, i64)> {
        let m = v
            .iter()
            .copied()
            .min()
            .ok_or_else(|| Error::Degenerate("empty direction".into()))?;
        let shifted: Vec<i64> = v.iter().map(|x| x - m).collect();
        let (p, g) = primitive_int(&shifted).ok_or_else(|| Error::Degenerate("zero direction".into()))?;
        Ok((Direction(p), g))
    }

    pub fn new(v: &[i64]) -> Result<Self> {
        Ok(Self::with_index(v)?.0)
    }

    pub fn from_rational(v: &[Q]) -> Result<Self> {
        let m = v.iter().min().cloned().unwrap_or_else(Q::zero);
        let shifted: Vec<Q> = v.iter().map(|x| x - &m).collect();
        Direction::new(&primitive_from_rational(&shifted)?)
    }

    /// Primitive direction from `a` to `b`.
    pub fn between(a: &HomogVector, b: &HomogVector) -> Result<Self> {
        let diff: Vec<Q> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
        Self::from_rational(&diff)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Self {
        let v: Vec<i64> = self.0.iter().map(|x| -x).collect();
        Direction::new(&v).expect("negation of a nonzero direction")
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Direction(v)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A maximal cell of a curve: a bounded segment between two vertices or a ray from a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Segment(usize, usize),
    Ray { vertex: usize, ray: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub kind: CellKind,
    pub weight: u64,
}

/// A weighted rational polyhedral complex of dimension one in `R^{n+1} / R1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    n: usize,
    vertices: Vec<HomogVector>,
    rays: Vec<Direction>,
    cells: Vec<Cell>,
}

impl TropicalCurve {
    /// Structural validation only (indices, dimensions, weights); balancing is checked by [`Self::check_balanced`].
    pub fn new(n: usize, vertices: Vec<HomogVector>, rays: Vec<Direction>, cells: Vec<Cell>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != n + 1 {
                return Err(Error::Dimension(format!(
                    "vertex {i} has {} coordinates, expected {}",
                    v.len(),
                    n + 1
                )));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n + 1 {
                return Err(Error::Dimension(format!(
                    "ray {i} has {} coordinates, expected {}",
                    r.len(),
                    n + 1
                )));
            }
        }
        for (k, c) in cells.iter().enumerate() {
            if c.weight == 0 {
                return Err(Error::Degenerate(format!("cell {k} has weight 0")));
            }
            match c.kind {
                CellKind::Segment(i, j) => {
                    if i >= vertices.len() || j >= vertices.len() {
                        return Err(Error::Index(format!("cell {k} refers to a missing vertex")));
                    }
                    if vertices[i] == vertices[j] {
                        return Err(Error::Degenerate(format!("cell {k} has equal endpoints")));
                    }
                }
                CellKind::Ray { vertex, ray } => {
                    if vertex >= vertices.len() || ray >= rays.len() {
                        return Err(Error::Index(format!("cell {k} refers to a missing vertex or ray")));
                    }
                }
            }
        }
        Ok(TropicalCurve {
            n,
            vertices,
            rays,
            cells,
        })
    }

    /// Builds a curve from vertices and `(vertex, direction, weight)` rays plus `(i, j, weight)` segments.
    pub fn from_parts(
        n: usize,
        vertices: Vec<HomogVector>,
        segments: &[(usize, usize, u64)],
        rays: &[(usize, Direction, u64)],
    ) -> Result<Self> {
        let mut dirs: Vec<Direction> = Vec::new();
        let mut cells: Vec<Cell> = segments
            .iter()
            .map(|&(i, j, w)| Cell {
                kind: CellKind::Segment(i, j),
                weight: w,
            })
            .collect();
        for (v, d, w) in rays {
            let idx = match dirs.iter().position(|x| x == d) {
                Some(p) => p,
                None => {
                    dirs.push(d.clone());
                    dirs.len() - 1
                }
            };
            cells.push(Cell {
                kind: CellKind::Ray { vertex: *v, ray: idx },
                weight: *w,
            });
        }
        Self::new(n, vertices, dirs, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[HomogVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Direction] {
        &self.rays
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Outgoing primitive directions and weights of the cells at vertex `v`.
    pub fn outgoing(&self, v: usize) -> Result<Vec<(Direction, u64)>> {
        if v >= self.vertices.len() {
            return Err(Error::Index(format!("vertex {v}")));
        }
        let mut out = Vec::new();
        for c in &self.cells {
            match c.kind {
                CellKind::Segment(i, j) if i == v => {
                    out.push((Direction::between(&self.vertices[i], &self.vertices[j])?, c.weight))
                }
                CellKind::Segment(i, j) if j == v => {
                    out.push((Direction::between(&self.vertices[j], &self.vertices[i])?, c.weight))
                }
                CellKind::Ray { vertex, ray } if vertex == v => out.push((self.rays[ray].clone(), c.weight)),
                _ => {}
            }
        }
        Ok(out)
    }

    /// The fan at the origin spanned by the cells at `v`, with weights summed per direction.
    pub fn star(&self, v: usize) -> Result<TropicalCurve> {
        let out = self.outgoing(v)?;
        if out.is_empty() {
            return Err(Error::Degenerate(format!("vertex {v} is isolated")));
        }
        let rays: Vec<(usize, Direction, u64)> = sum_by_direction(out).into_iter().map(|(d, w)| (0, d, w)).collect();
        TropicalCurve::from_parts(self.n, vec![HomogVector::new(vec![Q::zero(); self.n + 1])], &[], &rays)
    }

    /// Checks the balancing condition at every vertex.
    pub fn check_balanced(&self) -> Result<()> {
        for v in 0..self.vertices.len() {
            let out = self.outgoing(v)?;
            if out.is_empty() {
                return Err(Error::Degenerate(format!("vertex {v} is isolated")));
            }
            if !is_balanced(&out, self.n + 1) {
                return Err(Error::Unbalanced { vertex: v });
            }
        }
        Ok(())
    }

    /// Weighted rays of the recession fan, summed per direction and sorted.
    pub fn recession_fan(&self) -> Vec<(Direction, u64)> {
        let rays = self.cells.iter().filter_map(|c| match c.kind {
            CellKind::Ray { ray, .. } => Some((self.rays[ray].clone(), c.weight)),
            _ => None,
        });
        sum_by_direction(rays)
    }

    /// The degree `d` with `sum w * r = d * (1,...,1)` over the recession fan.
    pub fn degree(&self) -> Result<u64> {
        let mut total = vec![0i128; self.n + 1];
        for (d, w) in self.recession_fan() {
            for (t, &x) in total.iter_mut().zip(d.coords()) {
                *t += x as i128 * w as i128;
            }
        }
        if total.iter().any(|&t| t != total[0]) {
            return Err(Error::Inconsistent("recession fan is not balanced".into()));
        }
        if total[0] == 0 {
            return Err(Error::Degenerate("curve has no rays".into()));
        }
        u64::try_from(total[0]).map_err(|_| Error::Overflow)
    }

    /// Least positive integer `m` such that `m * C` has integral vertices.
    pub fn integral_scale(&self) -> BigInt {
        lcm_denominators(self.vertices.iter().flat_map(|v| v.coords().iter()))
    }

    pub fn is_integral(&self) -> bool {
        self.integral_scale().is_one()
    }

    /// The curve `m * C`; combinatorics, rays and weights are unchanged.
    pub fn rescale(&self, m: &Q) -> Result<TropicalCurve> {
        if *m <= Q::zero() {
            return Err(Error::Degenerate("scale factor must be positive".into()));
        }
        let vertices = self.vertices.iter().map(|v| v.scale(m)).collect();
        TropicalCurve::new(self.n, vertices, self.rays.clone(), self.cells.clone())
    }
}

/// Sums weights of equal directions; output sorted by direction.
pub fn sum_by_direction(items: impl IntoIterator<Item = (Direction, u64)>) -> Vec<(Direction, u64)> {
    let mut m: BTreeMap<Direction, u64> = BTreeMap::new();
    for (d, w) in items {
        *m.entry(d).or_default() += w;
    }
    m.into_iter().collect()
}

/// `sum w * u` is a multiple of `(1,...,1)`.
pub fn is_balanced(out: &[(Direction, u64)], len: usize) -> bool {
    let mut total = vec![0i128; len];
    for (d, w) in out {
        for (t, &x) in total.iter_mut().zip(d.coords()) {
            *t += x as i128 * *w as i128;
        }
    }
    total.iter().all(|&t| t == total[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_curve() -> TropicalCurve {
        let rays: Vec<(usize, Direction, u64)> = (0..3).map(|i| (0, Direction::unit(3, i), 1)).collect();
        TropicalCurve::from_parts(2, vec![HomogVector::from_ints(&[0, 0, 0])], &[], &rays).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(HomogVector::from_ints(&[2, 3, 4]), HomogVector::from_ints(&[0, 1, 2]));
        let (d, g) = Direction::with_index(&[1, -1, -1, 1]).unwrap();
        assert_eq!(d.coords(), &[1, 0, 0, 1]);
        assert_eq!(g, 2);
        assert_eq!(Direction::unit(3, 0).neg().coords(), &[0, 1, 1]);
        assert!(Direction::new(&[3, 3, 3]).is_err());
    }

    #[test]
    fn line_is_degree_one() {
        let c = line_curve();
        c.check_balanced().unwrap();
        assert_eq!(c.degree().unwrap(), 1);
        assert_eq!(c.star(0).unwrap().recession_fan(), c.recession_fan());
    }

    #[test]
    fn unbalanced_vertex_is_reported() {
        let rays = vec![(0, Direction::unit(3, 0), 1), (0, Direction::unit(3, 1), 1)];
        let c = TropicalCurve::from_parts(2, vec![HomogVector::from_ints(&[0, 0, 0])], &[], &rays).unwrap();
        assert_eq!(c.check_balanced(), Err(Error::Unbalanced { vertex: 0 }));
    }

    #[test]
    fn isolated_vertex_is_degenerate() {
        let c = TropicalCurve::new(2, vec![HomogVector::from_ints(&[0, 0, 0])], vec![], vec![]).unwrap();
        assert!(matches!(c.star(0), Err(Error::Degenerate(_))));
    }
}
