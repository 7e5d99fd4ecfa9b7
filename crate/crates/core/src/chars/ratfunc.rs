//! Exact rational functions in one variable with integer coefficients.
//!
//! Canonical form: numerator and denominator coprime, the denominator has a
//! nonzero constant term and a positive leading coefficient, and the two
//! share no integer content.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Panics when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        normalize(num, den)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The Laurent polynomial this equals, if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inverse(&self) -> Self {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return normalize(&self.num + &rhs.num, self.den.clone());
        }
        normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Dense coefficients, lowest degree first, with the lowest one nonzero.
type Dense = Vec<BigInt>;

fn to_dense(p: &LaurentPoly) -> (i32, Dense) {
    let lo = p.min_exp().expect("nonzero polynomial");
    let hi = p.max_exp().unwrap();
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - lo) as usize] = c.clone();
    }
    (lo, v)
}

fn from_dense(shift: i32, v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (shift + i as i32, c.clone())))
}

fn trim(v: &mut Dense) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Dense {
    let c = content(v);
    let mut out: Dense = v.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    out
}

/// A scalar multiple of the remainder of `a` by `b`; good enough for the
/// primitive Euclidean algorithm.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Dense {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(&r) };
    }
    primitive(&a)
}

fn div_exact(a: &[BigInt], b: &[BigInt]) -> Dense {
    let db = b.len() - 1;
    if a.len() < b.len() {
        assert!(a.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (quot, rem) = r[dr].div_rem(&b[db]);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &quot * bc;
        }
        q[dr - db] = quot;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

fn normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunction {
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let (sn, a) = to_dense(&num);
    let (sd, b) = to_dense(&den);
    let g = gcd_primitive(&a, &b);
    let (mut a, mut b) = if g.len() > 1 {
        (div_exact(&a, &g), div_exact(&b, &g))
    } else {
        (a, b)
    };
    let c = content(&a).gcd(&content(&b));
    if !c.is_one() {
        a.iter_mut().for_each(|x| *x /= &c);
        b.iter_mut().for_each(|x| *x /= &c);
    }
    if b.last().unwrap().is_negative() {
        a.iter_mut().for_each(|x| *x = -std::mem::take(x));
        b.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    RationalFunction {
        num: from_dense(sn - sd, &a),
        den: from_dense(0, &b),
    }
}
