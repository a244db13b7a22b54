//! Finite Puiseux series over the rationals and polynomials with such coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// `sum c_e t^e` with finitely many nonzero terms and rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Series(BTreeMap<Q, Q>);

impl Series {
    pub fn zero() -> Self {
        Series(BTreeMap::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, Q::zero())
    }

    pub fn monomial(c: Q, e: Q) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Series(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>) -> Self {
        let mut s = Series::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, e: Q, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest exponent with nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<Q> {
        self.0.keys().next().cloned()
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: &Q) -> Q {
        self.0.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Series::from_terms(self.0.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: &Q) -> Self {
        Series(self.0.iter().map(|(k, c)| (k + e, c.clone())).collect())
    }

    /// Substitution `t -> t^m`.
    pub fn scale_exponents(&self, m: &Q) -> Self {
        Series(self.0.iter().map(|(k, c)| (k * m, c.clone())).collect())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let mut s = self.clone();
        for (e, c) in &rhs.0 {
            s.add_term(e.clone(), c.clone());
        }
        s
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series(self.0.iter().map(|(e, c)| (e.clone(), -c.clone())).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let mut s = Series::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                s.add_term(e1 + e2, c1 * c2);
            }
        }
        s
    }
}

fn fmt_exp(e: &Q) -> String {
    if e.is_integer() && !e.is_negative() {
        fmt_q(e)
    } else {
        format!("({})", fmt_q(e))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (e, c) in self.0.iter().rev() {
            let term = if e.is_zero() {
                fmt_q(c)
            } else {
                let t = if e.is_one() {
                    "t".to_string()
                } else {
                    format!("t^{}", fmt_exp(e))
                };
                if c.is_one() {
                    t
                } else if *c == -Q::one() {
                    format!("-{t}")
                } else {
                    format!("{}*{t}", fmt_q(c))
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Polynomial in `nvars` variables with [`Series`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Series>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], Series::constant(Q::one()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Series::constant(Q::one()))
    }

    pub fn monomial(nvars: usize, e: Exponent, c: Series) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(e, &c);
        p
    }

    /// Linear form `sum c_i x_i` with rational coefficients.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, &Series::constant(c.clone()));
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Series)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!("exponent {e:?} for {nvars} variables")));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, e: Exponent, c: &Series) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Series)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Series {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree if all terms have the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Series) -> Self {
        let mut p = Poly::zero(self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), &(x * c));
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Series) -> Series) -> Self {
        let mut p = Poly::zero(self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), &f(x));
        }
        p
    }

    /// Replaces each variable `x_i` by the polynomial `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut m = Poly::one(target);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                m = &m * &powers[i][k as usize];
            }
            out = &out + &m.scale(c);
        }
        Ok(out)
    }

    /// Formats with variables `x0, x1, ...` in decreasing lexicographic order of exponents.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            let mono = mono.join("*");
            let constant = c.terms().count() == 1 && c.valuation().is_some_and(|v| v.is_zero());
            let term = if mono.is_empty() {
                if constant {
                    c.to_string()
                } else {
                    format!("({c})")
                }
            } else if constant {
                let v = c.coeff(&Q::zero());
                if v.is_one() {
                    mono
                } else if v == -Q::one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{mono}", fmt_q(&v))
                }
            } else {
                format!("({c})*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c);
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&Series::constant(-Q::one()))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars.max(rhs.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, &(c1 * c2));
            }
        }
        p
    }
}
