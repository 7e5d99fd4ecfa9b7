//! Irreducible characters of symmetric groups and of the type-A Hecke
//! algebra.

mod hecke_rep;
mod ratfunc;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coxeter::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::hecke::GroupRingElt;
use crate::partition::Partition;

pub use hecke_rep::{HeckeCharTable, SeminormalRep, MAX_HECKE_RANK_N};
pub use ratfunc::RationalFunction;

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(Error::InvalidPartition(format!(
            "{lambda} and {cycle_type} have different sizes"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda.parts(), cycle_type.parts(), &mut memo))
}

fn mn_rec(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + k - 1 - i).collect();
    let mut total = 0;
    for &b in &beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let crossed = beta.iter().filter(|&&c| b - r < c && c < b).count();
        let mut nb: Vec<usize> = beta.iter().map(|&c| if c == b { b - r } else { c }).collect();
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (k - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let v = mn_rec(&shape, rest, memo);
        total += if crossed % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

/// `(a(λ), A(λ))` for the unipotent character of `GL_n` labelled by `λ`:
/// the lowest and highest powers of `q` dividing its degree, normalised so
/// that `a = n(λ)` and `A = N - n(λ')` with `N = n(n-1)/2`.
pub fn invariants_a_big_a(lambda: &Partition) -> (usize, usize) {
    let n = lambda.size();
    (lambda.n_value(), n * n.saturating_sub(1) / 2 - lambda.conjugate().n_value())
}

/// The character table of `S_n`, rows and columns both indexed by
/// [`Partition::all`].
#[derive(Debug, Clone)]
pub struct CharacterTableSn {
    n: usize,
    labels: Vec<Partition>,
    values: Vec<Vec<i64>>,
}

impl CharacterTableSn {
    pub fn new(n: usize) -> Self {
        let labels = Partition::all(n);
        let values = labels
            .iter()
            .map(|l| labels.iter().map(|m| mn_character(l, m).unwrap()).collect())
            .collect();
        CharacterTableSn { n, labels, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.labels.iter().position(|q| q == p)
    }

    pub fn value(&self, lambda: &Partition, cycle_type: &Partition) -> i64 {
        self.values[self.index_of(lambda).expect("label")][self.index_of(cycle_type).expect("class")]
    }

    /// `n! / z_μ`.
    pub fn class_size(&self, cycle_type: &Partition) -> u128 {
        let mut z: u128 = 1;
        let mut counts: HashMap<usize, u128> = HashMap::new();
        for &p in cycle_type.parts() {
            *counts.entry(p).or_default() += 1;
        }
        for (p, m) in counts {
            z *= (p as u128).pow(m as u32) * (1..=m).product::<u128>();
        }
        (1..=self.n as u128).product::<u128>() / z
    }
}

/// Characters of `S_n` evaluated on elements of a concrete `A_{n-1}` table.
#[derive(Debug, Clone)]
pub struct SnCharacters {
    group: Arc<GroupTable>,
    table: CharacterTableSn,
    class_of: Vec<usize>,
}

impl SnCharacters {
    pub fn new(group: Arc<GroupTable>) -> Result<Self> {
        if !group.datum().is_type_a() {
            return Err(Error::NotTypeA(group.datum().to_string()));
        }
        let table = CharacterTableSn::new(group.rank() + 1);
        let class_of = group
            .elements()
            .map(|w| table.index_of(&group.cycle_type(w).unwrap()).unwrap())
            .collect();
        Ok(SnCharacters { group, table, class_of })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn table(&self) -> &CharacterTableSn {
        &self.table
    }

    pub fn labels(&self) -> &[Partition] {
        self.table.labels()
    }

    pub fn value_at(&self, label: usize, w: Elem) -> i64 {
        self.table.values[label][self.class_of[w.index()]]
    }

    /// `Σ c_x χ_λ(x)` for `Σ c_x x` in the group ring.
    pub fn eval_on_combo(&self, lambda: &Partition, combo: &GroupRingElt) -> BigInt {
        let label = self.table.index_of(lambda).expect("label of the right size");
        self.eval_label(label, combo, |x| x)
    }

    /// `Σ c_x χ_λ(f(x))`, for evaluating on a translated combination
    /// without materialising it.
    pub fn eval_label(&self, label: usize, combo: &GroupRingElt, f: impl Fn(Elem) -> Elem) -> BigInt {
        let mut total = BigInt::zero();
        for (x, c) in combo.iter() {
            let chi = self.value_at(label, f(x));
            if chi != 0 {
                total += c * chi;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupDatum;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn s3_table() {
        let t = CharacterTableSn::new(3);
        let rows: Vec<Vec<i64>> = t.labels().iter().map(|l| t.labels().iter().map(|m| t.value(l, m)).collect()).collect();
        // columns: (3), (2,1), (1,1,1)
        assert_eq!(rows, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
    }

    #[test]
    fn known_values() {
        assert_eq!(mn_character(&p("3,1,1"), &p("1,1,1,1,1")).unwrap(), 6);
        assert_eq!(mn_character(&p("3,2"), &p("5")).unwrap(), 0);
        assert_eq!(mn_character(&p("2,2,1"), &p("5")).unwrap(), 0);
        assert_eq!(mn_character(&p("3,1,1"), &p("5")).unwrap(), 1);
        assert_eq!(mn_character(&p("2,2"), &p("2,2")).unwrap(), 2);
        assert!(mn_character(&p("2,2"), &p("3")).is_err());
    }

    #[test]
    fn orthogonality() {
        for n in 1..=7 {
            let t = CharacterTableSn::new(n);
            let order: u128 = (1..=n as u128).product();
            for (i, a) in t.labels().iter().enumerate() {
                assert_eq!(t.value(a, &Partition::column(n)) as u128, a.num_standard_tableaux());
                for b in &t.labels()[i..] {
                    let s: i128 = t
                        .labels()
                        .iter()
                        .map(|m| t.class_size(m) as i128 * (t.value(a, m) * t.value(b, m)) as i128)
                        .sum();
                    assert_eq!(s, if a == b { order as i128 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn invariants() {
        assert_eq!(invariants_a_big_a(&p("3")), (0, 0));
        assert_eq!(invariants_a_big_a(&p("1,1,1")), (3, 3));
        assert_eq!(invariants_a_big_a(&p("2,1")), (1, 2));
        assert_eq!(invariants_a_big_a(&p("3,1")), (1, 3));
    }

    #[test]
    fn characters_on_group_elements() {
        let g = Arc::new(GroupTable::build(GroupDatum::symmetric(4).unwrap()).unwrap());
        let chars = SnCharacters::new(g.clone()).unwrap();
        let mut combo = GroupRingElt::zero();
        for w in g.elements() {
            combo.add_term(w, &BigInt::from(1));
        }
        // Σ_w χ(w) is |W| for the trivial character and 0 otherwise.
        for lambda in chars.labels().to_vec() {
            let expect = if lambda == Partition::row(4) { 24 } else { 0 };
            assert_eq!(chars.eval_on_combo(&lambda, &combo), BigInt::from(expect));
        }
    }
}
