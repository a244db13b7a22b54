//! The rank-3 matroid of a linear plane and its Bergman fan.
//!
//! The plane `X = V(L)` is the row space of a `3 x (n+1)` matrix `W` (a basis of
//! the solutions of the linear generators of `L`). Element `i` of the matroid
//! is the column `w_i`; on `X` we have `x_i = w_i . z` for `z` in `K^3`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{CellKind, Direction, HomogVector, TropicalCurve};
use crate::linalg::{kernel, rank, solve, transpose};
use crate::rational::Q;

/// Linear ideal of a plane in `P^n`, given by rational generators of rank `n - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneIdeal {
    n: usize,
    generators: Vec<Vec<Q>>,
}

impl PlaneIdeal {
    pub fn new(n: usize, generators: Vec<Vec<Q>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension("ambient dimension must be at least 2".into()));
        }
        for g in &generators {
            if g.len() != n + 1 {
                return Err(Error::Dimension(format!(
                    "generator with {} coefficients, expected {}",
                    g.len(),
                    n + 1
                )));
            }
        }
        let r = rank(&generators, n + 1);
        if r != n - 2 {
            return Err(Error::IdealRank {
                expected: n - 2,
                found: r,
            });
        }
        Ok(PlaneIdeal { n, generators })
    }

    pub fn from_ints(n: usize, generators: &[&[i64]]) -> Result<Self> {
        let g = generators
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect();
        Self::new(n, g)
    }

    /// The ideal `(x0 + x1 + x2 + x3)` in four variables.
    pub fn l32() -> Self {
        Self::from_ints(3, &[&[1, 1, 1, 1]]).expect("valid ideal")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }
}

/// A maximal cone `cone(v_F1, v_F2)` of the Bergman fan for a flag of flats of ranks 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BergmanCone {
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

impl BergmanCone {
    pub fn rays(&self, len: usize) -> [Direction; 2] {
        [flat_vector(&self.f1, len), flat_vector(&self.f2, len)]
    }
}

/// `v_F = sum_{i in F} e_i`.
pub fn flat_vector(f: &[usize], len: usize) -> Direction {
    let mut v = vec![0i64; len];
    for &i in f {
        v[i] = 1;
    }
    Direction::new(&v).expect("proper flat")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    columns: Vec<Vec<Q>>,
    bases: Vec<[usize; 3]>,
    circuits: Vec<Vec<usize>>,
}

impl Matroid {
    pub fn from_ideal(ideal: &PlaneIdeal) -> Result<Self> {
        let n = ideal.n();
        let w = kernel(ideal.generators(), n + 1);
        debug_assert_eq!(w.len(), 3);
        let columns = transpose(&w, n + 1);
        if let Some(i) = columns.iter().position(|c| c.iter().all(Zero::is_zero)) {
            return Err(Error::Loop(i));
        }
        let mut m = Matroid {
            n,
            columns,
            bases: Vec::new(),
            circuits: Vec::new(),
        };
        for a in 0..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    if m.rank(&[a, b, c]) == 3 {
                        m.bases.push([a, b, c]);
                    }
                }
            }
        }
        m.circuits = m.compute_circuits();
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_len(&self) -> usize {
        self.n + 1
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        let rows: Vec<Vec<Q>> = set.iter().map(|&i| self.columns[i].clone()).collect();
        rank(&rows, 3)
    }

    /// All bases in lexicographic order.
    pub fn bases(&self) -> &[[usize; 3]] {
        &self.bases
    }

    pub fn is_basis(&self, b: &[usize]) -> bool {
        let mut s = b.to_vec();
        s.sort_unstable();
        s.len() == 3 && self.bases.iter().any(|x| x[..] == s[..])
    }

    pub fn circuits(&self) -> &[Vec<usize>] {
        &self.circuits
    }

    fn compute_circuits(&self) -> Vec<Vec<usize>> {
        let len = self.ground_len();
        let mut out = Vec::new();
        for size in 2..=len.min(4) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                if self.rank(&idx) == size - 1
                    && (0..size).all(|k| {
                        let sub: Vec<usize> = idx
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != k)
                            .map(|(_, &x)| x)
                            .collect();
                        self.rank(&sub) == size - 1
                    })
                {
                    out.push(idx.clone());
                }
                if !next_combination(&mut idx, len) {
                    break;
                }
            }
        }
        out
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let r = self.rank(set);
        (0..self.ground_len())
            .filter(|i| {
                set.contains(i) || {
                    let mut s = set.to_vec();
                    s.push(*i);
                    self.rank(&s) == r
                }
            })
            .collect()
    }

    /// Flats of the given rank, sorted.
    pub fn flats(&self, r: usize) -> Vec<Vec<usize>> {
        let len = self.ground_len();
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        match r {
            0 => {
                out.insert(Vec::new());
            }
            1 => {
                for i in 0..len {
                    out.insert(self.closure(&[i]));
                }
            }
            2 => {
                for i in 0..len {
                    for j in i + 1..len {
                        if self.rank(&[i, j]) == 2 {
                            out.insert(self.closure(&[i, j]));
                        }
                    }
                }
            }
            3 => {
                out.insert((0..len).collect());
            }
            _ => {}
        }
        out.into_iter().collect()
    }

    /// Maximal cones of the Bergman fan, one per flag `F1 < F2` of proper flats.
    pub fn bergman_cones(&self) -> Vec<BergmanCone> {
        let f1s = self.flats(1);
        let mut out = Vec::new();
        for f2 in self.flats(2) {
            for f1 in &f1s {
                if f1.iter().all(|i| f2.contains(i)) {
                    out.push(BergmanCone {
                        f1: f1.clone(),
                        f2: f2.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Expresses `x_i` on the plane as a linear form in the basis variables `x_b`, in the order of `b`.
    pub fn express(&self, basis: &[usize; 3], i: usize) -> Result<[Q; 3]> {
        let a: Vec<Vec<Q>> = (0..3)
            .map(|r| basis.iter().map(|&j| self.columns[j][r].clone()).collect())
            .collect();
        let c = solve(&a, &self.columns[i]).ok_or_else(|| Error::NotABasis(basis.to_vec()))?;
        Ok([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    /// Membership in the Bergman fan: on every circuit the minimum coordinate occurs at least twice.
    pub fn contains_point(&self, p: &HomogVector) -> bool {
        self.circuits.iter().all(|c| {
            let m = c.iter().map(|&i| &p.coords()[i]).min().expect("nonempty circuit");
            c.iter().filter(|&&i| &p.coords()[i] == m).count() >= 2
        })
    }

    /// Checks that every vertex and every cell of `c` lies in the Bergman fan.
    pub fn contains_curve(&self, c: &TropicalCurve) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::Dimension(format!(
                "curve in R^{}, matroid on {} elements",
                c.n() + 1,
                self.ground_len()
            )));
        }
        for (i, v) in c.vertices().iter().enumerate() {
            if !self.contains_point(v) {
                return Err(Error::NotInFan(format!("vertex {i} = {v}")));
            }
        }
        for (k, cell) in c.cells().iter().enumerate() {
            let (p, dir, bounded) = match cell.kind {
                CellKind::Segment(i, j) => {
                    let a = &c.vertices()[i];
                    let b = &c.vertices()[j];
                    let v: Vec<Q> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
                    (a.clone(), v, true)
                }
                CellKind::Ray { vertex, ray } => {
                    let v = c.rays()[ray]
                        .coords()
                        .iter()
                        .map(|&x| Q::from_integer(x.into()))
                        .collect();
                    (c.vertices()[vertex].clone(), v, false)
                }
            };
            for s in sample_params(&p, &dir, bounded) {
                let x = HomogVector::new(p.coords().iter().zip(&dir).map(|(a, d)| a + d * &s).collect());
                if !self.contains_point(&x) {
                    return Err(Error::NotInFan(format!("cell {k} leaves the fan at {x}")));
                }
            }
        }
        Ok(())
    }
}

/// Parameters covering every combinatorial type of the coordinate order along `p + s v`.
fn sample_params(p: &HomogVector, v: &[Q], bounded: bool) -> Vec<Q> {
    let one = Q::from_integer(1.into());
    let mut cuts: BTreeSet<Q> = BTreeSet::new();
    cuts.insert(Q::zero());
    if bounded {
        cuts.insert(one.clone());
    }
    let x = p.coords();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let dv = &v[i] - &v[j];
            if !dv.is_zero() {
                let s = (&x[j] - &x[i]) / dv;
                if s > Q::zero() && (!bounded || s < one) {
                    cuts.insert(s);
                }
            }
        }
    }
    let cuts: Vec<Q> = cuts.into_iter().collect();
    let mut out = cuts.clone();
    for w in cuts.windows(2) {
        out.push((&w[0] + &w[1]) / Q::from_integer(2.into()));
    }
    if !bounded {
        out.push(cuts.last().expect("nonempty") + &one);
    }
    out
}

/// Advances a sorted index combination in `0..len`; returns `false` after the last one.
pub fn next_combination(idx: &mut [usize], len: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < len - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_matroid() {
        let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
        assert_eq!(m.bases().len(), 4);
        assert_eq!(m.bases()[0], [0, 1, 2]);
        assert_eq!(m.bergman_cones().len(), 12);
        assert_eq!(m.circuits(), &[vec![0, 1, 2, 3]]);
        let c = m.express(&[0, 1, 2], 3).unwrap();
        assert!(c.iter().all(|x| *x == Q::from_integer((-1).into())));
    }

    #[test]
    fn parallel_pair_and_triangle() {
        let ideal = PlaneIdeal::from_ints(4, &[&[1, 1, 1, 0, 0], &[0, 0, 0, 1, 1]]).unwrap();
        let m = Matroid::from_ideal(&ideal).unwrap();
        assert_eq!(m.bases().len(), 6);
        assert!(!m.is_basis(&[0, 1, 2]));
        assert!(!m.is_basis(&[0, 3, 4]));
        assert_eq!(m.flats(1).len(), 4);
    }

    #[test]
    fn loops_and_bad_rank_are_rejected() {
        assert_eq!(
            PlaneIdeal::from_ints(3, &[&[1, 1, 1, 1], &[1, 2, 3, 4]]).err(),
            Some(Error::IdealRank { expected: 1, found: 2 })
        );
        let ideal = PlaneIdeal::from_ints(3, &[&[0, 0, 0, 1]]).unwrap();
        assert_eq!(Matroid::from_ideal(&ideal).err(), Some(Error::Loop(3)));
    }

    #[test]
    fn point_outside_fan() {
        let m = Matroid::from_ideal(&PlaneIdeal::l32()).unwrap();
        assert!(!m.contains_point(&HomogVector::from_ints(&[0, 3, 1, 2])));
        assert!(m.contains_point(&HomogVector::from_ints(&[0, 1, 1, 0])));
    }
}
