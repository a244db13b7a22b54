//! Coordinate projections `p^B` of curves and the matching maps on polynomials.
//!
//! For a basis `B = (j0, j1, j2)` (increasing), the image plane `R^3 / R1` is
//! identified with `R^2` by `y -> (y_{j1} - y_{j0}, y_{j2} - y_{j0})`, and a ternary
//! monomial `x_{j0}^a x_{j1}^b x_{j2}^c` sits at the lattice point `(b, c)`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::plane::{PlaneCell, PlaneCurve, Pt};
use crate::geometry::{CellKind, Direction, HomogVector, TropicalCurve};
use crate::linalg::Matrix;
use crate::matroid::Matroid;
use crate::puiseux::{Poly, Series};
use crate::rational::{primitive_int, Q};

/// Plane coordinates of `p^B(y)`.
pub fn project_point(y: &HomogVector, b: &[usize; 3]) -> Pt {
    let x = y.coords();
    [&x[b[1]] - &x[b[0]], &x[b[2]] - &x[b[0]]]
}

/// Image of a primitive direction as a primitive plane direction and the lattice index, or `None` if it collapses.
pub fn project_direction(d: &Direction, b: &[usize; 3]) -> Option<([i64; 2], u64)> {
    let x = d.coords();
    let v = [x[b[1]] - x[b[0]], x[b[2]] - x[b[0]]];
    primitive_int(&v).map(|(p, g)| ([p[0], p[1]], g as u64))
}

/// Push-forward of a curve along `p^B`: cells with point images are dropped, weights pick up lattice
/// indices and coinciding image pieces add up.
pub fn pushforward(c: &TropicalCurve, b: &[usize; 3]) -> Result<PlaneCurve> {
    if b.iter().any(|&j| j > c.n()) || !(b[0] < b[1] && b[1] < b[2]) {
        return Err(Error::Index(format!("basis {b:?} for a curve in R^{}", c.n() + 1)));
    }
    let mut cells = Vec::new();
    for cell in c.cells() {
        match cell.kind {
            CellKind::Segment(i, j) => {
                let (vi, vj) = (&c.vertices()[i], &c.vertices()[j]);
                let u = Direction::between(vi, vj)?;
                if let Some((_, idx)) = project_direction(&u, b) {
                    cells.push((
                        PlaneCell::segment(project_point(vi, b), project_point(vj, b)),
                        cell.weight * idx,
                    ));
                }
            }
            CellKind::Ray { vertex, ray } => {
                if let Some((d, idx)) = project_direction(&c.rays()[ray], b) {
                    cells.push((
                        PlaneCell::Ray(project_point(&c.vertices()[vertex], b), d),
                        cell.weight * idx,
                    ));
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::Degenerate(format!("projection to {b:?} collapses the curve")));
    }
    PlaneCurve::from_cells(cells)
}

/// Homogeneous exponents `(a, b, c)` of degree `d` in decreasing lexicographic order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of each exponent in [`monomials`].
pub fn monomial_index(d: u32) -> HashMap<[u32; 3], usize> {
    monomials(d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Lattice point `(b, c)` of the ternary exponent `(a, b, c)`.
pub fn plane_exponent(e: &[u32; 3]) -> [i64; 2] {
    [e[1] as i64, e[2] as i64]
}

/// Linear forms expressing every ambient variable in the variables of `b`.
fn substitution(m: &Matroid, b: &[usize; 3]) -> Result<Vec<Poly>> {
    if !m.is_basis(b) {
        return Err(Error::NotABasis(b.to_vec()));
    }
    (0..m.ground_len())
        .map(|i| Ok(Poly::linear(&m.express(b, i)?)))
        .collect()
}

/// The ternary form `f_B` representing the class of `f` modulo the ideal of the plane.
pub fn algebraic_projection(m: &Matroid, b: &[usize; 3], f: &Poly) -> Result<Poly> {
    if f.nvars() != m.ground_len() {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables, expected {}",
            f.nvars(),
            m.ground_len()
        )));
    }
    f.substitute(&substitution(m, b)?)
}

/// Rewrites a ternary form in the variables of `a` as a ternary form in the variables of `b`.
pub fn change_basis(m: &Matroid, a: &[usize; 3], b: &[usize; 3], f: &Poly) -> Result<Poly> {
    if !m.is_basis(a) {
        return Err(Error::NotABasis(a.to_vec()));
    }
    let sub = substitution(m, b)?;
    let images: Vec<Poly> = a.iter().map(|&i| sub[i].clone()).collect();
    f.substitute(&images)
}

/// Embeds a ternary form in the variables of `b` into the ambient polynomial ring.
pub fn embed(m: &Matroid, b: &[usize; 3], f: &Poly) -> Result<Poly> {
    let len = m.ground_len();
    let images: Vec<Poly> = b.iter().map(|&j| Poly::var(len, j)).collect();
    f.substitute(&images)
}

/// Matrix `M` with `coefficients of f_B = M * coefficients of f_A` for ternary forms of degree `d`,
/// rows and columns indexed by [`monomials`].
pub fn coeff_map(m: &Matroid, a: &[usize; 3], b: &[usize; 3], d: u32) -> Result<Matrix> {
    let mons = monomials(d);
    let index = monomial_index(d);
    let mut out = vec![vec![Q::zero(); mons.len()]; mons.len()];
    for (col, e) in mons.iter().enumerate() {
        let img = change_basis(
            m,
            a,
            b,
            &Poly::monomial(3, e.to_vec(), Series::constant(Q::from_integer(1.into()))),
        )?;
        for (ex, c) in img.terms() {
            let row = index[&[ex[0], ex[1], ex[2]]];
            out[row][col] = c.coeff(&Q::zero());
        }
    }
    Ok(out)
}

/// Applies a coefficient matrix to a ternary form of degree `d`.
pub fn apply_coeff_map(map: &Matrix, d: u32, f: &Poly) -> Poly {
    let mons = monomials(d);
    let coeffs: Vec<Series> = mons.iter().map(|e| f.coeff(e)).collect();
    let mut out = Poly::zero(3);
    for (row, e) in map.iter().zip(&mons) {
        let mut s = Series::zero();
        for (x, c) in row.iter().zip(&coeffs) {
            if !x.is_zero() {
                s = &s + &c.scale(x);
            }
        }
        out.add_term(e.to_vec(), &s);
    }
    out
}
