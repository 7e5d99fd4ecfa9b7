//! Multivariate integer polynomials over a fixed variable list, with
//! interval evaluation for pruning.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expr::LinExpr;

/// Exponent vector, indexed like the owning scenario's variable list.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn constant(c: BigInt, nvars: usize) -> Self {
        let mut p = Poly::default();
        p.add(vec![0; nvars], c);
        p
    }

    pub fn from_lin(e: &LinExpr, vars: &[String]) -> Self {
        let mut p = Poly::constant(e.constant.clone(), vars.len());
        for (v, c) in &e.terms {
            let mut m = vec![0; vars.len()];
            m[vars.iter().position(|x| x == v).expect("known variable")] = 1;
            p.add(m, c.clone());
        }
        p
    }

    fn add(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add(m.clone(), -c);
        }
        out
    }

    pub fn add_poly(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add(m, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Splits `self = x_var * a + b` when `self` has degree at most 1 in `var`.
    pub fn split_linear(&self, var: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(var) > 1 {
            return None;
        }
        let mut a = Poly::default();
        let mut b = Poly::default();
        for (m, c) in &self.terms {
            if m[var] == 1 {
                let mut m2 = m.clone();
                m2[var] = 0;
                a.add(m2, c.clone());
            } else {
                b.add(m.clone(), c.clone());
            }
        }
        Some((a, b))
    }

    pub fn range(&self, domain: &[Interval]) -> Interval {
        let mut total = Interval::point(BigInt::zero());
        for (m, c) in &self.terms {
            let mut term = Interval::point(c.clone());
            for (x, &e) in domain.iter().zip(m) {
                for _ in 0..e {
                    term = term.mul(x);
                }
            }
            total = total.add(&term);
        }
        total
    }

    pub fn display(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        ms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, (m, c)) in ms.iter().enumerate() {
            let names: Vec<String> = m
                .iter()
                .enumerate()
                .flat_map(|(k, &e)| std::iter::repeat_n(vars[k].clone(), e as usize))
                .collect();
            let mag = c.abs();
            let body = match (names.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => names.join("*"),
                (false, false) => format!("{mag}*{}", names.join("*")),
            };
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// An integer or an infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ext {
    NegInf,
    Fin(BigInt),
    PosInf,
}

impl Ext {
    fn sign(&self) -> Ordering {
        match self {
            Ext::NegInf => Ordering::Less,
            Ext::PosInf => Ordering::Greater,
            Ext::Fin(x) => x.sign().cmp(&num_bigint::Sign::NoSign),
        }
    }

    fn mul(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            _ => match self.sign() as i8 * other.sign() as i8 {
                0 => Ext::Fin(BigInt::zero()),
                s if s > 0 => Ext::PosInf,
                _ => Ext::NegInf,
            },
        }
    }

    fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => unreachable!("lower and upper ends mixed"),
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            _ => Ext::PosInf,
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
            (Ext::NegInf, Ext::NegInf) | (Ext::PosInf, Ext::PosInf) => Ordering::Equal,
            (Ext::NegInf, _) | (_, Ext::PosInf) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("inf"),
            Ext::Fin(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl Interval {
    pub fn point(x: BigInt) -> Self {
        Interval {
            lo: Ext::Fin(x.clone()),
            hi: Ext::Fin(x),
        }
    }

    pub fn new(lo: Ext, hi: Ext) -> Self {
        Interval { lo, hi }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        Interval {
            lo: cands.iter().min().unwrap().clone(),
            hi: cands.iter().max().unwrap().clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// `floor(a / b)` for `b > 0`.
pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// `ceil(a / b)` for `b > 0`.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}
