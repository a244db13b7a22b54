//! Deciding realizability of a tropical curve in a tropical plane and producing certificates.
//!
//! Unknowns are the coefficients of a ternary form `f` of degree `d = deg C` in the
//! variables of a reference basis `A0`. For every basis `B`, `f_B = M_B f` must have
//! tropical curve `p^B(C)`, which translates into valuation conditions on the
//! linear forms `a_{B,nu}`. Exponents outside `Newt(p^B C)` give `a_{B,nu} = 0`;
//! the others give `val(a_{B,nu}) = c` on cell vertices and `>= c` elsewhere.
//! One coefficient of `f_{A0}` is normalized to valuation 0. The additive
//! constants of the other bases are fixed by evaluating the tropical
//! polynomials at a point of the Bergman fan off all projected curves, where
//! `trop(f_B)(y_B) = val f(x) = trop(f_{A0})(y_{A0})`.
//!
//! Because coefficients are rational constants, the conditions split by powers
//! of `t`: at level `k`, all forms with `c > k` and all zero forms vanish (the
//! matrix `E_k`) while each form with `val = k` must not (the rows `D_k`). A level
//! is solvable iff no row of `D_k` is in the row space of `E_k`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::plane::PlaneCurve;
use crate::geometry::{HomogVector, TropicalCurve};
use crate::linalg::{dot, kernel, Matrix};
use crate::matroid::{Matroid, PlaneIdeal};
use crate::newton::{height_profile, tropicalize_poly, HeightProfile, Lattice};
use crate::projection::{apply_coeff_map, coeff_map, monomials, plane_exponent, project_point, pushforward};
use crate::puiseux::{Poly, Series};
use crate::rational::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Reference basis; defaults to the lexicographically first basis.
    pub initial_basis: Option<[usize; 3]>,
    /// Lattice point of the Newton polygon of `p^{A0} C` whose coefficient gets valuation 0;
    /// defaults to its lexicographically smallest vertex.
    pub anchor: Option<Lattice>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    Zero,
    ValEq(Q),
    ValGeq(Q),
}

impl ConditionKind {
    pub fn bound(&self) -> Option<&Q> {
        match self {
            ConditionKind::Zero => None,
            ConditionKind::ValEq(c) | ConditionKind::ValGeq(c) => Some(c),
        }
    }
}

/// A condition on `a_{B,nu}`, the coefficient of `x_B^nu` in `f_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub basis: [usize; 3],
    pub exponent: [u32; 3],
    pub kind: ConditionKind,
    /// `a_{B,nu}` as a linear form in the coefficients of `f_{A0}` (indexed by [`monomials`]).
    pub form: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct BasisData {
    pub basis: [usize; 3],
    pub curve: PlaneCurve,
    pub profile: HeightProfile,
    /// Point of the Bergman fan whose images under `p^{A0}` and `p^B` avoid both projected curves;
    /// it fixes `offset`.
    pub generic_point: HomogVector,
    /// Additive constant turning normalized heights into absolute valuations.
    pub offset: Q,
    /// Coefficient map from the reference basis.
    pub map: Matrix,
}

#[derive(Clone, Debug)]
pub struct ConditionSet {
    pub degree: u32,
    pub a0: [usize; 3],
    pub anchor: Lattice,
    pub bases: Vec<BasisData>,
    pub conditions: Vec<Condition>,
}

impl ConditionSet {
    /// The finite right-hand sides, sorted.
    pub fn rhs(&self) -> Vec<Q> {
        let s: BTreeSet<Q> = self.conditions.iter().filter_map(|c| c.kind.bound().cloned()).collect();
        s.into_iter().collect()
    }

    pub fn nvars(&self) -> usize {
        monomials(self.degree).len()
    }
}

/// The linear system at one power `t^k`.
#[derive(Clone, Debug)]
pub struct LevelSystem {
    pub level: Q,
    /// Forms that vanish at this level.
    pub e: Matrix,
    /// Forms that must not vanish at this level.
    pub d: Matrix,
}

#[derive(Clone, Debug)]
pub struct LevelResult {
    pub level: Q,
    pub solvable: bool,
    /// Coefficients at `t^level` of a solution, if solvable.
    pub witness: Option<Vec<Q>>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub conditions: ConditionSet,
    pub levels: Vec<LevelResult>,
    /// Scale used to make vertices integral.
    pub scale: Q,
}

impl Analysis {
    pub fn realizable(&self) -> bool {
        self.levels.iter().all(|l| l.solvable)
    }
}

/// Validates `c` against the plane: balanced, contained in the Bergman fan.
pub fn validate(m: &Matroid, c: &TropicalCurve) -> Result<()> {
    c.check_balanced()?;
    m.contains_curve(c)
}

/// A point of the Bergman fan whose projections avoid the given projected curves.
fn generic_point(m: &Matroid, projected: &[([usize; 3], PlaneCurve)]) -> Result<HomogVector> {
    let len = m.ground_len();
    for k in 1..=24i64 {
        for cone in m.bergman_cones() {
            let [r1, r2] = cone.rays(len);
            let (a, b) = (Q::from_integer(k.into()), Q::from_integer((k * k + 1).into()));
            let y: Vec<Q> = r1
                .coords()
                .iter()
                .zip(r2.coords())
                .map(|(&x, &z)| &a * Q::from_integer(x.into()) + &b * Q::from_integer(z.into()))
                .collect();
            let y = HomogVector::new(y);
            if projected.iter().all(|(b, c)| !c.contains_point(&project_point(&y, b))) {
                return Ok(y);
            }
        }
    }
    Err(Error::Degenerate("no generic point found in the Bergman fan".into()))
}

/// Valuation conditions for a curve with integral vertices.
pub fn collect_conditions(m: &Matroid, c: &TropicalCurve, opts: &EngineOptions) -> Result<ConditionSet> {
    validate(m, c)?;
    if !c.is_integral() {
        return Err(Error::NonIntegral);
    }
    let d = u32::try_from(c.degree()?).map_err(|_| Error::Overflow)?;
    let a0 = match opts.initial_basis {
        Some(b) => {
            let mut s = b;
            s.sort_unstable();
            if !m.is_basis(&s) {
                return Err(Error::NotABasis(b.to_vec()));
            }
            s
        }
        None => m.bases()[0],
    };
    let mut order: Vec<[usize; 3]> = vec![a0];
    order.extend(m.bases().iter().copied().filter(|b| *b != a0));
    let projected: Vec<([usize; 3], PlaneCurve, HeightProfile, Matrix)> = order
        .par_iter()
        .map(|b| {
            let pc = pushforward(c, b)?;
            let prof = height_profile(&pc)?;
            let map = coeff_map(m, &a0, b, d)?;
            Ok((*b, pc, prof, map))
        })
        .collect::<Result<_>>()?;
    let newt0 = &projected[0].2.newt;
    let anchor = match opts.anchor {
        Some(a) => {
            if !newt0.vertices().contains(&a) {
                return Err(Error::Index(format!(
                    "anchor {a:?} is not a vertex of the reference Newton polygon"
                )));
            }
            a
        }
        None => newt0.lex_min_vertex(),
    };
    let dq = Q::from_integer(d.into());
    let g = |y: &HomogVector, b: &[usize; 3], prof: &HeightProfile| {
        prof.eval(&project_point(y, b)) + &dq * &y.coords()[b[0]]
    };
    let (c0, prof0) = (projected[0].1.clone(), projected[0].2.clone());
    let delta0 = -prof0.heights[&anchor].clone();
    let mut bases = Vec::new();
    let mut conditions = Vec::new();
    for (b, pc, prof, map) in projected {
        let y = generic_point(m, &[(a0, c0.clone()), (b, pc.clone())])?;
        let offset = &delta0 + g(&y, &a0, &prof0) - g(&y, &b, &prof);
        for (row, e) in map.iter().zip(monomials(d)) {
            let nu = plane_exponent(&e);
            let kind = match prof.heights.get(&nu) {
                None => ConditionKind::Zero,
                Some(h) if prof.cell_vertices.contains(&nu) => ConditionKind::ValEq(h + &offset),
                Some(h) => ConditionKind::ValGeq(h + &offset),
            };
            conditions.push(Condition {
                basis: b,
                exponent: e,
                kind,
                form: row.clone(),
            });
        }
        bases.push(BasisData {
            basis: b,
            curve: pc,
            profile: prof,
            generic_point: y,
            offset,
            map,
        });
    }
    Ok(ConditionSet {
        degree: d,
        a0,
        anchor,
        bases,
        conditions,
    })
}

/// One level system per right-hand side `k`.
pub fn decompose(cs: &ConditionSet) -> Vec<LevelSystem> {
    cs.rhs()
        .into_iter()
        .map(|k| {
            let mut e = Vec::new();
            let mut d = Vec::new();
            for c in &cs.conditions {
                match &c.kind {
                    ConditionKind::Zero => e.push(c.form.clone()),
                    ConditionKind::ValEq(v) | ConditionKind::ValGeq(v) if *v > k => e.push(c.form.clone()),
                    ConditionKind::ValEq(v) if *v == k => d.push(c.form.clone()),
                    _ => {}
                }
            }
            LevelSystem { level: k, e, d }
        })
        .collect()
}

/// Solvability of one level and a witness vector: a combination of kernel vectors of `E`
/// on which no row of `D` vanishes.
pub fn solve_level(sys: &LevelSystem, nvars: usize) -> LevelResult {
    let level = sys.level.clone();
    if sys.d.is_empty() {
        return LevelResult {
            level,
            solvable: true,
            witness: Some(vec![Q::zero(); nvars]),
        };
    }
    let k = kernel(&sys.e, nvars);
    let g: Vec<Vec<Q>> = sys
        .d
        .iter()
        .map(|row| k.iter().map(|v| dot(row, v)).collect())
        .collect();
    if g.iter().any(|gd| gd.iter().all(Zero::is_zero)) {
        return LevelResult {
            level,
            solvable: false,
            witness: None,
        };
    }
    // Points on the moment curve: each nonzero g_D vanishes at fewer than dim ker values of s.
    let bound = sys.d.len() * k.len().max(1) + 1;
    for s in 1..=bound as i64 {
        let s = Q::from_integer(s.into());
        let mut c = Vec::with_capacity(k.len());
        let mut p = Q::one();
        for _ in 0..k.len() {
            c.push(p.clone());
            p *= &s;
        }
        if g.iter().all(|gd| !dot(gd, &c).is_zero()) {
            let mut z = vec![Q::zero(); nvars];
            for (ci, v) in c.iter().zip(&k) {
                for (zi, vi) in z.iter_mut().zip(v) {
                    *zi += ci * vi;
                }
            }
            return LevelResult {
                level,
                solvable: true,
                witness: Some(z),
            };
        }
    }
    unreachable!("a point of the moment curve avoids all hypersurfaces")
}

/// Full analysis: rescales to integral vertices, collects conditions and solves every level.
pub fn analyze(ideal: &PlaneIdeal, c: &TropicalCurve, opts: &EngineOptions) -> Result<Analysis> {
    let m = Matroid::from_ideal(ideal)?;
    if c.n() != ideal.n() {
        return Err(Error::Dimension(format!(
            "curve in R^{}, plane in P^{}",
            c.n() + 1,
            ideal.n()
        )));
    }
    let scale = Q::from_integer(c.integral_scale());
    let scaled = c.rescale(&scale)?;
    let cs = collect_conditions(&m, &scaled, opts)?;
    let n = cs.nvars();
    let levels = decompose(&cs).par_iter().map(|s| solve_level(s, n)).collect();
    Ok(Analysis {
        conditions: cs,
        levels,
        scale,
    })
}

pub fn decide(ideal: &PlaneIdeal, c: &TropicalCurve, opts: &EngineOptions) -> Result<bool> {
    Ok(analyze(ideal, c, opts)?.realizable())
}

/// Ternary form in the variables of the reference basis from the level witnesses, rescaled back
/// to the input curve and shifted so that its smallest exponent of `t` is 0.
pub fn certificate_from(a: &Analysis) -> Option<Poly> {
    if !a.realizable() {
        return None;
    }
    let d = a.conditions.degree;
    let mut f = Poly::zero(3);
    for lvl in &a.levels {
        let z = lvl.witness.as_ref().expect("solvable level");
        for (e, x) in monomials(d).iter().zip(z) {
            f.add_term(e.to_vec(), &Series::monomial(x.clone(), lvl.level.clone()));
        }
    }
    let inv = Q::one() / &a.scale;
    let f = f.map_coeffs(|s| s.scale_exponents(&inv));
    let min = f.terms().filter_map(|(_, s)| s.valuation()).min()?;
    Some(f.map_coeffs(|s| s.shift(&-min.clone())))
}

/// A realizing ternary form in the variables of the returned reference basis, checked with
/// [`verify_certificate`] before it is returned.
pub fn certificate(ideal: &PlaneIdeal, c: &TropicalCurve, opts: &EngineOptions) -> Result<Option<(Poly, [usize; 3])>> {
    let a = analyze(ideal, c, opts)?;
    let Some(f) = certificate_from(&a) else { return Ok(None) };
    let a0 = a.conditions.a0;
    if !verify_certificate(ideal, c, &a0, &f)? {
        return Err(Error::Inconsistent(
            "assembled certificate does not tropicalize to the curve".into(),
        ));
    }
    Ok(Some((f, a0)))
}

/// Offsets `delta_B` relative to the reference basis, so that `delta_{A0} = 0`.
pub fn basis_offsets(ideal: &PlaneIdeal, c: &TropicalCurve, opts: &EngineOptions) -> Result<Vec<([usize; 3], Q)>> {
    let m = Matroid::from_ideal(ideal)?;
    let scale = Q::from_integer(c.integral_scale());
    let cs = collect_conditions(&m, &c.rescale(&scale)?, opts)?;
    let base = cs.bases[0].offset.clone();
    Ok(cs.bases.iter().map(|b| (b.basis, &b.offset - &base)).collect())
}

/// Checks `Trop(f_B) = p^B(C)` for every basis `B`, where `f` is a ternary form in the variables of `a0`.
pub fn verify_certificate(ideal: &PlaneIdeal, c: &TropicalCurve, a0: &[usize; 3], f: &Poly) -> Result<bool> {
    let m = Matroid::from_ideal(ideal)?;
    validate(&m, c)?;
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::Degenerate("certificate is not homogeneous".into()))?;
    if u64::from(d) != c.degree()? {
        return Err(Error::Dimension(format!(
            "certificate has degree {d}, curve has degree {}",
            c.degree()?
        )));
    }
    for b in m.bases() {
        let fb = apply_coeff_map(&coeff_map(&m, a0, b, d)?, d, f);
        if fb.terms().count() < 2 {
            return Ok(false);
        }
        if tropicalize_poly(&fb)? != pushforward(c, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;

    /// The line through `[0,1,1,0]` and `[1,0,0,1]` in the plane of `x0+x1+x2+x3`.
    fn l32_line() -> TropicalCurve {
        let v = vec![
            HomogVector::from_ints(&[0, 1, 1, 0]),
            HomogVector::from_ints(&[1, 0, 0, 1]),
        ];
        let rays = vec![
            (0, Direction::unit(4, 1), 1),
            (0, Direction::unit(4, 2), 1),
            (1, Direction::unit(4, 3), 1),
            (1, Direction::unit(4, 0), 1),
        ];
        TropicalCurve::from_parts(3, v, &[(0, 1, 1)], &rays).unwrap()
    }

    #[test]
    fn line_is_realizable_with_verified_certificate() {
        let ideal = PlaneIdeal::l32();
        let c = l32_line();
        let (f, a0) = certificate(&ideal, &c, &EngineOptions::default()).unwrap().unwrap();
        assert_eq!(a0, [0, 1, 2]);
        assert!(verify_certificate(&ideal, &c, &a0, &f).unwrap());
    }

    #[test]
    fn level_with_dependent_row_is_unsolvable() {
        let q = |x: i64| Q::from_integer(x.into());
        let sys = LevelSystem {
            level: q(0),
            e: vec![vec![q(1), q(1)]],
            d: vec![vec![q(2), q(2)]],
        };
        assert!(!solve_level(&sys, 2).solvable);
        let sys = LevelSystem {
            level: q(0),
            e: vec![vec![q(1), q(1)]],
            d: vec![vec![q(1), q(0)]],
        };
        let r = solve_level(&sys, 2);
        assert!(r.solvable);
        let z = r.witness.unwrap();
        assert!(dot(&sys.e[0], &z).is_zero() && !dot(&sys.d[0], &z).is_zero());
    }
}
