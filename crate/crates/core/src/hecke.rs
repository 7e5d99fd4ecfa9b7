//! The Iwahori–Hecke algebra `H_v(W)` with standard basis `t_w` subject to
//! `(t_s + v)(t_s - v^-1) = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coxeter::{Elem, GroupTable};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A sparse element `Σ c_w t_w` of the Hecke algebra. Zero coefficients are
/// never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeckeElt {
    coeffs: BTreeMap<Elem, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        HeckeElt::default()
    }

    /// The standard basis element `t_w`.
    pub fn t(w: Elem) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: Elem, c: LaurentPoly) -> Self {
        let mut h = HeckeElt::zero();
        h.add_term(w, &c);
        h
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Elem, LaurentPoly)>) -> Self {
        let mut h = HeckeElt::zero();
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t_w` (zero when absent).
    pub fn coeff(&self, w: Elem) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: Elem) -> Option<&LaurentPoly> {
        self.coeffs.get(&w)
    }

    /// Terms in increasing id order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Elem, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, w: Elem, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&w);
                }
            }
            None => {
                self.coeffs.insert(w, c.clone());
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &HeckeElt, factor: &LaurentPoly) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in other.iter() {
            self.add_term(w, &(c * factor));
        }
    }

    pub fn scale(&self, factor: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Multiplies every coefficient by `v^k`.
    pub fn shift(&self, k: i32) -> HeckeElt {
        HeckeElt {
            coeffs: self.coeffs.iter().map(|(w, c)| (*w, c.shift(k))).collect(),
        }
    }

    /// Applies the scalar involution `v -> v^-1` to coefficients only.
    pub fn bar_coefficients(&self) -> HeckeElt {
        HeckeElt {
            coeffs: self.coeffs.iter().map(|(w, c)| (*w, c.bar())).collect(),
        }
    }
}

impl Add<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::one());
        out
    }
}

impl Sub<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::constant(-1));
        out
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        HeckeElt {
            coeffs: self.coeffs.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) t#{}", w.0)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of the integral group ring `ZW`, e.g. a Hecke element at `v = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElt {
    coeffs: BTreeMap<Elem, BigInt>,
}

impl GroupRingElt {
    pub fn zero() -> Self {
        GroupRingElt::default()
    }

    pub fn add_term(&mut self, w: Elem, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn coeff(&self, w: Elem) -> BigInt {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, &BigInt)> + '_ {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `g · self` for a group element `g`.
    pub fn left_translate(&self, group: &GroupTable, g: Elem) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (w, c) in self.iter() {
            out.add_term(group.compose(g, w), c);
        }
        out
    }

    /// `self · g` for a group element `g`.
    pub fn right_translate(&self, group: &GroupTable, g: Elem) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (w, c) in self.iter() {
            out.add_term(group.compose(w, g), c);
        }
        out
    }

    pub fn sub(&self, other: &GroupRingElt) -> GroupRingElt {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w, &-c);
        }
        out
    }
}

/// Hecke algebra operations over a fixed group table.
///
/// Expansions of `t_{w^-1}^{-1}` are cached lazily per element and may be
/// requested from several threads.
pub struct HeckeAlgebra {
    group: Arc<GroupTable>,
    bar_t: Vec<OnceLock<HeckeElt>>,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeAlgebra").field("group", &self.group).finish()
    }
}

impl HeckeAlgebra {
    pub fn new(group: Arc<GroupTable>) -> Self {
        let bar_t = (0..group.size()).map(|_| OnceLock::new()).collect();
        HeckeAlgebra { group, bar_t }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    /// `C'_s = t_s + v`.
    pub fn cprime_s(&self, s: usize) -> HeckeElt {
        let mut h = HeckeElt::t(self.group.generator(s));
        h.add_term(self.group.identity(), &LaurentPoly::v_pow(1));
        h
    }

    /// `C_s = t_s - v^-1`.
    pub fn c_s(&self, s: usize) -> HeckeElt {
        let mut h = HeckeElt::t(self.group.generator(s));
        h.add_term(self.group.identity(), &LaurentPoly::monomial(-1, -1));
        h
    }

    /// Multiplies by `t_s` on the given side:
    /// `t_s t_x = t_{sx}` if `sx > x`, else `t_{sx} + (v^-1 - v) t_x`.
    pub fn t_mul(&self, h: &HeckeElt, s: usize, side: Side) -> HeckeElt {
        let g = &self.group;
        let quad = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        let mut out = HeckeElt::zero();
        for (x, c) in h.iter() {
            let (sx, down) = match side {
                Side::Left => (g.left_mul(s, x), g.is_left_descent(s, x)),
                Side::Right => (g.right_mul(x, s), g.is_right_descent(x, s)),
            };
            out.add_term(sx, c);
            if down {
                out.add_term(x, &(c * &quad));
            }
        }
        out
    }

    /// Multiplies by `C'_s = t_s + v`, the step of the KL recursion:
    /// `(t_s + v) t_x = t_{sx} + v t_x` if `sx > x`, else `t_{sx} + v^-1 t_x`.
    pub fn cprime_s_mul(&self, h: &HeckeElt, s: usize, side: Side) -> HeckeElt {
        let g = &self.group;
        let mut out = HeckeElt::zero();
        for (x, c) in h.iter() {
            let (sx, down) = match side {
                Side::Left => (g.left_mul(s, x), g.is_left_descent(s, x)),
                Side::Right => (g.right_mul(x, s), g.is_right_descent(x, s)),
            };
            out.add_term(sx, c);
            out.add_term(x, &c.shift(if down { -1 } else { 1 }));
        }
        out
    }

    /// Left multiplication by `t_w`.
    pub fn t_w_mul(&self, w: Elem, h: &HeckeElt) -> HeckeElt {
        self.group
            .word(w)
            .iter()
            .rev()
            .fold(h.clone(), |acc, &s| self.t_mul(&acc, s as usize, Side::Left))
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, c) in a.iter() {
            out.add_scaled(&self.t_w_mul(x, b), c);
        }
        out
    }

    /// `bar(t_w) = t_{w^-1}^{-1}`, built as `t_{s_1}^{-1} ... t_{s_k}^{-1}`
    /// with `t_s^{-1} = t_s + v - v^-1`.
    pub fn bar_t(&self, w: Elem) -> &HeckeElt {
        self.bar_t[w.index()].get_or_init(|| {
            let g = &self.group;
            match g.word(w).last() {
                None => HeckeElt::t(w),
                Some(&s) => {
                    let s = s as usize;
                    let prefix = g.right_mul(w, s);
                    let base = self.bar_t(prefix);
                    let mut out = self.t_mul(base, s, Side::Right);
                    out.add_scaled(base, &LaurentPoly::from_terms([(1, 1), (-1, -1)]));
                    out
                }
            }
        })
    }

    /// `t_w^{-1}`.
    pub fn t_inverse(&self, w: Elem) -> HeckeElt {
        self.bar_t(self.group.inverse(w)).clone()
    }

    /// The semilinear bar involution `Σ c_w t_w -> Σ bar(c_w) t_{w^-1}^{-1}`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in h.iter() {
            out.add_scaled(self.bar_t(w), &c.bar());
        }
        out
    }

    /// The linear involution `ι(t_w) = (-1)^{l(w)} t_{w^-1}^{-1}`.
    pub fn iota(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in h.iter() {
            let sign = if self.group.length(w).is_multiple_of(2) { 1 } else { -1 };
            out.add_scaled(self.bar_t(w), &c.scale(&BigInt::from(sign)));
        }
        out
    }

    pub fn is_bar_invariant(&self, h: &HeckeElt) -> bool {
        self.bar(h) == *h
    }

    /// Coefficient-wise evaluation at `v = 1`.
    pub fn specialize_v1(&self, h: &HeckeElt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (w, c) in h.iter() {
            out.add_term(w, &c.eval_one());
        }
        out
    }

    /// `Σ_{x <= w} v^{l(w) - l(x)} t_x`, the KL element of a rationally
    /// smooth Schubert variety.
    pub fn smooth_closed_form(&self, w: Elem) -> HeckeElt {
        let lw = self.group.length(w) as i32;
        HeckeElt::from_terms(
            self.group
                .bruhat_interval(w)
                .into_iter()
                .map(|x| (x, LaurentPoly::v_pow(lw - self.group.length(x) as i32))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterType, GroupDatum};
    use proptest::prelude::*;

    fn algebra(ty: CoxeterType, rank: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(Arc::new(GroupTable::build(GroupDatum::new(ty, rank).unwrap()).unwrap()))
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra(CoxeterType::A, 2);
        let g = h.group().clone();
        let (e, s1, s2) = (g.identity(), g.generator(0), g.generator(1));
        let sq = h.t_mul(&HeckeElt::t(s1), 0, Side::Left);
        assert_eq!(sq, HeckeElt::from_terms([(e, LaurentPoly::one()), (s1, lp(&[(-1, 1), (1, -1)]))]));
        let s1s2 = g.compose(s1, s2);
        assert_eq!(h.t_mul(&HeckeElt::t(s1), 1, Side::Right), HeckeElt::t(s1s2));
        assert_eq!(
            h.t_mul(&HeckeElt::t(s1s2), 1, Side::Right),
            HeckeElt::from_terms([(s1, LaurentPoly::one()), (s1s2, lp(&[(-1, 1), (1, -1)]))])
        );
        // (t_s + v)(t_s - v^-1) = 0
        assert!(h.mul(&h.cprime_s(0), &h.c_s(0)).is_zero());
    }

    #[test]
    fn bar_examples() {
        let h = algebra(CoxeterType::A, 1);
        let g = h.group().clone();
        let (e, s) = (g.identity(), g.generator(0));
        assert_eq!(
            h.bar(&HeckeElt::t(s)),
            HeckeElt::from_terms([(s, LaurentPoly::one()), (e, lp(&[(1, 1), (-1, -1)]))])
        );
        assert_eq!(h.bar(&HeckeElt::term(e, LaurentPoly::v_pow(1))), HeckeElt::term(e, LaurentPoly::v_pow(-1)));
        assert!(h.is_bar_invariant(&h.cprime_s(0)));
        assert!(h.is_bar_invariant(&h.c_s(0)));
    }

    #[test]
    fn inverse_and_iota() {
        let h = algebra(CoxeterType::B, 2);
        let g = h.group().clone();
        for w in g.elements() {
            let prod = h.mul(&HeckeElt::t(w), &h.t_inverse(w));
            assert_eq!(prod, HeckeElt::t(g.identity()));
        }
        assert_eq!(h.iota(&HeckeElt::t(g.identity())), HeckeElt::t(g.identity()));
        assert_eq!(h.iota(&h.cprime_s(0)), -&h.c_s(0));
    }

    #[test]
    fn bar_and_iota_are_multiplicative_involutions() {
        let h = algebra(CoxeterType::A, 2);
        let g = h.group().clone();
        for x in g.elements() {
            for y in g.elements() {
                let prod = h.mul(&HeckeElt::t(x), &HeckeElt::t(y));
                assert_eq!(h.bar(&prod), h.mul(h.bar_t(x), h.bar_t(y)));
                assert_eq!(h.iota(&prod), h.mul(&h.iota(&HeckeElt::t(x)), &h.iota(&HeckeElt::t(y))));
            }
        }
    }

    fn arb_elt(size: usize) -> impl Strategy<Value = Vec<(usize, Vec<(i32, i64)>)>> {
        proptest::collection::vec((0..size, proptest::collection::vec((-3i32..4, -5i64..6), 0..3)), 0..5)
    }

    proptest! {
        #[test]
        fn involutions_on_random_elements(terms in arb_elt(24)) {
            let h = algebra(CoxeterType::A, 3);
            let x = HeckeElt::from_terms(terms.into_iter().map(|(w, c)| (Elem(w as u32), LaurentPoly::from_terms(c))));
            prop_assert_eq!(h.iota(&h.iota(&x)), x.clone());
            prop_assert_eq!(h.bar(&h.bar(&x)), x.clone());
            prop_assert_eq!(h.iota(&h.bar(&x)), h.bar(&h.iota(&x)));
        }
    }

    #[test]
    fn specialization() {
        let h = algebra(CoxeterType::A, 1);
        let g = h.group().clone();
        let one = BigInt::from(1);
        let c = h.specialize_v1(&h.cprime_s(0));
        assert_eq!((c.coeff(g.generator(0)), c.coeff(g.identity())), (one.clone(), one.clone()));
        let c = h.specialize_v1(&h.c_s(0));
        assert_eq!((c.coeff(g.generator(0)), c.coeff(g.identity())), (one.clone(), -one));
    }
}
