//! Seminormal representations of the type-A Hecke algebra and the
//! resulting character values on the standard basis.
//!
//! Matrices are built for the classical generators `T_i` with
//! `(T_i - q)(T_i + 1) = 0`, then rescaled: `t_s = v T_s` with `q = v^-2`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::ratfunc::RationalFunction;
use crate::coxeter::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::partition::{Partition, Tableau};

/// Largest `n` for which Hecke character tables are built.
pub const MAX_HECKE_RANK_N: usize = 8;

/// Column-sparse square matrix over `Q(q)`.
#[derive(Clone, Debug, PartialEq)]
struct SparseMat {
    cols: Vec<BTreeMap<usize, RationalFunction>>,
}

impl SparseMat {
    fn identity(dim: usize) -> Self {
        SparseMat {
            cols: (0..dim).map(|j| BTreeMap::from([(j, RationalFunction::one())])).collect(),
        }
    }

    fn mul(&self, rhs: &SparseMat) -> SparseMat {
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let mut out: BTreeMap<usize, RationalFunction> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.cols[*k] {
                        let prod = a * b;
                        let e = out.entry(*i).or_insert_with(RationalFunction::zero);
                        *e = &*e + &prod;
                    }
                }
                out.retain(|_, c| !c.is_zero());
                out
            })
            .collect();
        SparseMat { cols }
    }

    /// `self * a + b * I`.
    fn affine(&self, a: &RationalFunction, b: &RationalFunction) -> SparseMat {
        let cols = self
            .cols
            .iter()
            .enumerate()
            .map(|(j, col)| {
                let mut out: BTreeMap<usize, RationalFunction> = col.iter().map(|(i, c)| (*i, c * a)).collect();
                let e = out.entry(j).or_insert_with(RationalFunction::zero);
                *e = &*e + b;
                out.retain(|_, c| !c.is_zero());
                out
            })
            .collect();
        SparseMat { cols }
    }

    fn trace(&self) -> RationalFunction {
        self.cols
            .iter()
            .enumerate()
            .fold(RationalFunction::zero(), |acc, (j, col)| match col.get(&j) {
                Some(c) => &acc + c,
                None => acc,
            })
    }
}

fn q() -> RationalFunction {
    RationalFunction::from_poly(LaurentPoly::v_pow(1))
}

/// `(q - 1) / (1 - q^-d)`.
fn diagonal(d: i32) -> RationalFunction {
    RationalFunction::new(
        LaurentPoly::from_terms([(1, 1), (0, -1)]),
        LaurentPoly::from_terms([(0, 1), (-d, -1)]),
    )
}

/// Young's seminormal form of the irreducible representation `λ`, on the
/// basis of standard tableaux.
#[derive(Clone, Debug)]
pub struct SeminormalRep {
    lambda: Partition,
    tableaux: Vec<Tableau>,
    gens: Vec<SparseMat>,
}

impl SeminormalRep {
    /// Builds the generator matrices and checks the defining relations.
    pub fn new(lambda: &Partition) -> Result<Self> {
        let tableaux = lambda.standard_tableaux();
        let n = lambda.size();
        for lower_gets_one in [true, false] {
            let gens = (0..n.saturating_sub(1))
                .map(|i| generator_matrix(&tableaux, i, lower_gets_one))
                .collect();
            let rep = SeminormalRep {
                lambda: lambda.clone(),
                tableaux: tableaux.clone(),
                gens,
            };
            if rep.relations_hold() {
                return Ok(rep);
            }
            log::debug!("seminormal convention {lower_gets_one} fails for {lambda}");
        }
        Err(Error::Internal(format!("no seminormal form satisfies the relations for {lambda}")))
    }

    pub fn partition(&self) -> &Partition {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Quadratic and braid relations, checked exactly over `Q(q)`.
    pub fn relations_hold(&self) -> bool {
        let one = RationalFunction::one();
        let q = q();
        let qm1 = &q - &one;
        let r = self.gens.len();
        for (i, m) in self.gens.iter().enumerate() {
            if m.mul(m) != m.affine(&qm1, &q) {
                return false;
            }
            for j in i + 1..r {
                let n = &self.gens[j];
                let ok = if j == i + 1 {
                    m.mul(n).mul(m) == n.mul(m).mul(n)
                } else {
                    m.mul(n) == n.mul(m)
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Trace of `T_w` for every element of `group`, as a Laurent polynomial
    /// in `q`, indexed by element id.
    fn traces(&self, group: &GroupTable) -> Result<Vec<LaurentPoly>> {
        let size = group.size();
        let mut children: Vec<Vec<Elem>> = vec![Vec::new(); size];
        for x in group.elements().skip(1) {
            let last = *group.word(x).last().unwrap() as usize;
            children[group.right_mul(x, last).index()].push(x);
        }
        let mut out = vec![LaurentPoly::zero(); size];
        let mut stack = vec![(group.identity(), SparseMat::identity(self.dim()))];
        while let Some((x, m)) = stack.pop() {
            let tr = m.trace();
            out[x.index()] = tr
                .as_laurent()
                .cloned()
                .ok_or_else(|| Error::Internal(format!("non-polynomial trace {tr} for {}", self.lambda)))?;
            for &y in &children[x.index()] {
                let s = *group.word(y).last().unwrap() as usize;
                stack.push((y, m.mul(&self.gens[s])));
            }
        }
        Ok(out)
    }
}

/// `T_i v_T = a_T v_T + c_T v_{T'}` with `T' = s_i T`, where `c_T = 1` on one
/// side of each pair and `a_T a_{T'} + q` on the other.
fn generator_matrix(tableaux: &[Tableau], i: usize, lower_gets_one: bool) -> SparseMat {
    let index: std::collections::HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let cols = tableaux
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let d = t.content(i + 1) - t.content(i);
            let a = diagonal(d);
            let mut col = BTreeMap::new();
            if let Some(t2) = t.swap(i) {
                let k = index[&t2];
                let lower = t.cell(i).0 < t.cell(i + 1).0;
                let c = if lower == lower_gets_one {
                    RationalFunction::one()
                } else {
                    &(&a * &diagonal(-d)) + &q()
                };
                col.insert(k, c);
            }
            col.insert(j, a);
            col
        })
        .collect();
    SparseMat { cols }
}

/// Irreducible characters of the Hecke algebra of `S_n` on the standard
/// basis, `χ_λ(t_w)`, built lazily per partition.
pub struct HeckeCharTable {
    group: Arc<GroupTable>,
    labels: Vec<Partition>,
    values: Vec<OnceLock<Result<Vec<LaurentPoly>>>>,
}

impl std::fmt::Debug for HeckeCharTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HeckeCharTable").field("group", &self.group).finish()
    }
}

impl HeckeCharTable {
    pub fn new(group: Arc<GroupTable>) -> Result<Self> {
        if !group.datum().is_type_a() {
            return Err(Error::NotTypeA(group.datum().to_string()));
        }
        let n = group.rank() + 1;
        if n > MAX_HECKE_RANK_N {
            return Err(Error::SizeGuard {
                what: "Hecke character table n",
                size: n as u128,
                limit: MAX_HECKE_RANK_N as u128,
            });
        }
        let labels = Partition::all(n);
        let values = labels.iter().map(|_| OnceLock::new()).collect();
        Ok(HeckeCharTable { group, labels, values })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    fn row(&self, label: usize) -> Result<&[LaurentPoly]> {
        let entry = self.values[label].get_or_init(|| {
            let rep = SeminormalRep::new(&self.labels[label])?;
            let traces = rep.traces(&self.group)?;
            Ok(traces
                .iter()
                .zip(self.group.elements())
                .map(|(tr, x)| tr.substitute_power(-2).shift(self.group.length(x) as i32))
                .collect())
        });
        match entry {
            Ok(v) => Ok(v),
            Err(e) => Err(Error::Internal(e.to_string())),
        }
    }

    /// Builds every row, in parallel.
    pub fn fill(&self) -> Result<()> {
        (0..self.labels.len()).into_par_iter().try_for_each(|i| self.row(i).map(|_| ()))
    }

    fn label_index(&self, lambda: &Partition) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == lambda)
            .ok_or_else(|| Error::InvalidPartition(format!("{lambda} is not a partition of {}", self.group.rank() + 1)))
    }

    /// `χ_λ(t_x)`.
    pub fn value_on_t(&self, lambda: &Partition, x: Elem) -> Result<LaurentPoly> {
        Ok(self.row(self.label_index(lambda)?)?[x.index()].clone())
    }

    /// `χ_λ(h)` for an arbitrary Hecke algebra element.
    pub fn value(&self, lambda: &Partition, h: &HeckeElt) -> Result<LaurentPoly> {
        self.value_by_index(self.label_index(lambda)?, h)
    }

    pub fn value_by_index(&self, label: usize, h: &HeckeElt) -> Result<LaurentPoly> {
        let row = self.row(label)?;
        let mut total = LaurentPoly::zero();
        for (x, c) in h.iter() {
            total.add_scaled(&row[x.index()], c);
        }
        Ok(total)
    }
}
