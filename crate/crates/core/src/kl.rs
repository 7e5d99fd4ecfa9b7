//! Kazhdan–Lusztig basis `C'_w`, its twisted companion `C_w`, and the
//! `μ`-coefficients, memoized per element.
//!
//! `C'_w` is computed by the generator recursion
//!
//! ```text
//! C'_w = C'_s C'_{sw} - Σ_{x < sw, sx < x} μ(x, sw) C'_x
//! ```
//!
//! with `s` the smallest-index left descent of `w`. Entries are published
//! once through `OnceLock`, so reads may happen from any thread and the
//! contents never depend on scheduling.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coxeter::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElt, Side};
use crate::laurent::LaurentPoly;

pub const DEFAULT_MAX_INTERVAL: usize = 200_000;

pub struct KlTable {
    hecke: Arc<HeckeAlgebra>,
    entries: Vec<OnceLock<Arc<HeckeElt>>>,
    max_interval: usize,
}

impl fmt::Debug for KlTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KlTable")
            .field("group", self.group())
            .field("computed", &self.num_computed())
            .finish()
    }
}

impl KlTable {
    pub fn new(hecke: Arc<HeckeAlgebra>) -> Self {
        let entries = (0..hecke.group().size()).map(|_| OnceLock::new()).collect();
        KlTable {
            hecke,
            entries,
            max_interval: DEFAULT_MAX_INTERVAL,
        }
    }

    pub fn for_group(group: Arc<GroupTable>) -> Self {
        KlTable::new(Arc::new(HeckeAlgebra::new(group)))
    }

    pub fn with_max_interval(mut self, max_interval: usize) -> Self {
        self.max_interval = max_interval;
        self
    }

    pub fn hecke(&self) -> &Arc<HeckeAlgebra> {
        &self.hecke
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.hecke.group()
    }

    pub fn is_computed(&self, w: Elem) -> bool {
        self.entries[w.index()].get().is_some()
    }

    pub fn num_computed(&self) -> usize {
        self.entries.iter().filter(|e| e.get().is_some()).count()
    }

    /// `C'_w` expanded in the standard basis.
    pub fn cprime(&self, w: Elem) -> Result<Arc<HeckeElt>> {
        if let Some(h) = self.entries[w.index()].get() {
            return Ok(h.clone());
        }
        let size = self.group().bruhat_interval_size(w);
        if size > self.max_interval {
            return Err(Error::SizeGuard {
                what: "Bruhat interval",
                size: size as u128,
                limit: self.max_interval as u128,
            });
        }
        Ok(self.compute(w))
    }

    fn compute(&self, w: Elem) -> Arc<HeckeElt> {
        self.entries[w.index()]
            .get_or_init(|| Arc::new(self.recurse(w)))
            .clone()
    }

    fn recurse(&self, w: Elem) -> HeckeElt {
        let g = self.group();
        let Some(s) = g.first_left_descent(w) else {
            return HeckeElt::t(w);
        };
        let y = g.left_mul(s, w);
        let cy = self.compute(y);
        let mut out = self.hecke.cprime_s_mul(&cy, s, Side::Left);
        for (x, h) in cy.iter() {
            if x == y || !g.is_left_descent(s, x) {
                continue;
            }
            let mu = h.coeff(1);
            if !mu.is_zero() {
                out.add_scaled(&self.compute(x), &LaurentPoly::constant(-mu));
            }
        }
        out
    }

    /// Computes every `C'_w`, in parallel over top-level elements.
    pub fn fill_all(&self) -> Result<()> {
        let longest = self.group().longest();
        self.cprime(longest)?;
        let elems: Vec<Elem> = self.group().elements().collect();
        elems.par_iter().try_for_each(|&w| self.cprime(w).map(|_| ()))
    }

    /// The KL coefficient `h_{x,w}`: the coefficient of `t_x` in `C'_w`.
    pub fn h(&self, x: Elem, w: Elem) -> Result<LaurentPoly> {
        Ok(self.cprime(w)?.coeff(x))
    }

    /// Coefficient of `v` in `h_{x,w}` (zero unless `x < w`).
    pub fn mu(&self, x: Elem, w: Elem) -> Result<BigInt> {
        if x == w {
            return Ok(BigInt::zero());
        }
        Ok(self.cprime(w)?.get(x).map(|h| h.coeff(1)).unwrap_or_default())
    }

    /// The twisted basis element `C_w`, read off `C'_w`: the coefficient of
    /// `t_x` is `(-1)^{l(w)-l(x)} bar(h_{x,w})`.
    pub fn c(&self, w: Elem) -> Result<HeckeElt> {
        let g = self.group();
        let cw = self.cprime(w)?;
        let lw = g.length(w);
        Ok(HeckeElt::from_terms(cw.iter().map(|(x, h)| {
            let hb = h.bar();
            if (lw - g.length(x)).is_multiple_of(2) {
                (x, hb)
            } else {
                (x, -hb)
            }
        })))
    }

    /// `C_w = (-1)^{l(w)} ι(C'_w)`, the defining route through the involution.
    pub fn c_via_iota(&self, w: Elem) -> Result<HeckeElt> {
        let cw = self.cprime(w)?;
        let img = self.hecke.iota(&cw);
        Ok(if self.group().length(w).is_multiple_of(2) { img } else { -&img })
    }

    /// All computed entries in id order.
    pub fn computed(&self) -> Vec<(Elem, Arc<HeckeElt>)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.get().map(|h| (Elem(i as u32), h.clone())))
            .collect()
    }

    /// Seeds an entry from external data (a cache file). The caller is
    /// responsible for validation; an existing entry must agree.
    pub fn insert(&self, w: Elem, h: HeckeElt) -> Result<()> {
        let cell = &self.entries[w.index()];
        let stored = cell.get_or_init(|| Arc::new(h.clone()));
        if **stored != h {
            return Err(Error::Internal(format!(
                "conflicting expansion for element {:?}",
                self.group().reduced_word(w)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterType, GroupDatum};

    fn table(ty: CoxeterType, rank: usize) -> KlTable {
        KlTable::for_group(Arc::new(GroupTable::build(GroupDatum::new(ty, rank).unwrap()).unwrap()))
    }

    #[test]
    fn generator_elements() {
        let kl = table(CoxeterType::A, 2);
        let g = kl.group().clone();
        let s = g.generator(0);
        assert_eq!(*kl.cprime(s).unwrap(), kl.hecke().cprime_s(0));
        assert_eq!(kl.c(s).unwrap(), kl.hecke().c_s(0));
        assert_eq!(kl.mu(g.identity(), s).unwrap(), BigInt::from(1));
    }

    #[test]
    fn a2_w0_is_smooth_sum() {
        let kl = table(CoxeterType::A, 2);
        let g = kl.group().clone();
        let w0 = g.longest();
        let c = kl.cprime(w0).unwrap();
        assert_eq!(c.len(), 6);
        for x in g.elements() {
            assert_eq!(c.coeff(x), LaurentPoly::v_pow(3 - g.length(x) as i32));
        }
        let cw = kl.c(w0).unwrap();
        assert_eq!(cw.coeff(g.identity()).eval_one(), BigInt::from(-1));
    }

    #[test]
    fn s2s1_expansion() {
        let kl = table(CoxeterType::A, 2);
        let g = kl.group().clone();
        let w = g.element_of(&[2, 1]).unwrap();
        let c = kl.cprime(w).unwrap();
        let coeffs: Vec<(Vec<usize>, LaurentPoly)> = c.iter().map(|(x, h)| (g.reduced_word(x), h.clone())).collect();
        assert_eq!(
            coeffs,
            vec![
                (vec![], LaurentPoly::v_pow(2)),
                (vec![1], LaurentPoly::v_pow(1)),
                (vec![2], LaurentPoly::v_pow(1)),
                (vec![2, 1], LaurentPoly::one()),
            ]
        );
    }

    #[test]
    fn a3_singular_element() {
        let kl = table(CoxeterType::A, 3);
        let g = kl.group().clone();
        let w = g.from_permutation(&[3, 4, 1, 2]).unwrap();
        assert_eq!(kl.h(g.identity(), w).unwrap(), LaurentPoly::from_terms([(4, 1), (2, 1)]));
        assert_eq!(kl.mu(g.identity(), w).unwrap(), BigInt::from(0));
    }

    #[test]
    fn table_invariants() {
        for (ty, r) in [(CoxeterType::A, 3), (CoxeterType::B, 3), (CoxeterType::G, 2)] {
            let kl = table(ty, r);
            kl.fill_all().unwrap();
            let g = kl.group().clone();
            for w in g.elements() {
                let c = kl.cprime(w).unwrap();
                assert!(c.coeff(w).is_one());
                for (x, h) in c.iter() {
                    assert!(g.bruhat_leq(x, w));
                    if x != w {
                        assert!(h.min_exp().unwrap() > 0);
                        assert!(h.is_nonnegative());
                    }
                    let parity = (g.length(w) - g.length(x)) as i32 % 2;
                    assert!(h.terms().iter().all(|(e, _)| e.rem_euclid(2) == parity));
                }
                assert!(kl.hecke().is_bar_invariant(&c));
                if g.length(w).is_multiple_of(2) {
                    assert!(kl.mu(g.identity(), w).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn size_guard() {
        let kl = table(CoxeterType::A, 3).with_max_interval(10);
        let err = kl.cprime(kl.group().longest()).unwrap_err();
        assert!(err.is_resource_guard());
        assert!(kl.cprime(kl.group().generator(0)).is_ok());
    }
}
