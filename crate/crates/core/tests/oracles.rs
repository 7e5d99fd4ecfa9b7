mod common;

use std::sync::Arc;

use common::{h_from_p, kl_polynomials, naive_feasible, partitions, young_character_table, RefGroup};
use klq_core::chars::{mn_character, CharacterTableSn};
use klq_core::deduce::{parse_scenario, solve};
use klq_core::{CoxeterType, GroupDatum, GroupTable, KlTable, LaurentPoly, Partition};
use proptest::prelude::*;

fn crate_table(ty: CoxeterType, rank: usize) -> KlTable {
    KlTable::for_group(Arc::new(GroupTable::build(GroupDatum::new(ty, rank).unwrap()).unwrap()))
}

fn compare_with_oracle(kl: &KlTable, oracle: &RefGroup) -> usize {
    let g = kl.group().clone();
    assert_eq!(g.size(), oracle.size());
    let p = kl_polynomials(oracle);
    let to_crate: Vec<_> = oracle
        .word
        .iter()
        .map(|w| g.element_of(&w.iter().map(|s| s + 1).collect::<Vec<_>>()).unwrap())
        .collect();
    let mut checked = 0;
    for w in 0..oracle.size() {
        for x in 0..oracle.size() {
            let expected = p
                .get(&(x, w))
                .map(|q| h_from_p(q, oracle.len[w] - oracle.len[x]))
                .unwrap_or_default();
            let got = kl.h(to_crate[x], to_crate[w]).unwrap();
            let got: std::collections::BTreeMap<i32, i64> =
                got.terms().iter().map(|(e, c)| (*e, i64::try_from(c).unwrap())).collect();
            assert_eq!(got, expected, "h({:?}, {:?})", oracle.word[x], oracle.word[w]);
            checked += 1;
        }
    }
    checked
}

#[test]
fn kl_recursion_matches_r_polynomial_oracle() {
    for n in 2..=4 {
        compare_with_oracle(&crate_table(CoxeterType::A, n - 1), &RefGroup::type_a(n));
    }
    compare_with_oracle(&crate_table(CoxeterType::B, 2), &RefGroup::b2());
    compare_with_oracle(&crate_table(CoxeterType::G, 2), &RefGroup::g2());
}

#[test]
fn h_e_3412() {
    let kl = crate_table(CoxeterType::A, 3);
    let g = kl.group().clone();
    let w = g.from_permutation(&[3, 4, 1, 2]).unwrap();
    let h = kl.h(g.identity(), w).unwrap();
    assert_eq!(h, LaurentPoly::from_terms([(2, 1), (4, 1)]));
}

#[test]
fn oracle_knows_3412() {
    let o = RefGroup::type_a(4);
    let p = kl_polynomials(&o);
    // s2 s1 s3 s2 is 3412
    let w = (0..o.size())
        .find(|&w| {
            let mut word = o.word[w].clone();
            word.sort();
            o.len[w] == 4 && word == vec![0, 1, 1, 2] && o.word[w][0] == 1 && o.word[w][3] == 1
        })
        .unwrap();
    assert_eq!(p[&(0, w)], vec![1, 1]);
}

#[test]
fn characters_match_youngs_rule() {
    for n in 1..=7 {
        let parts = partitions(n);
        let oracle = young_character_table(n);
        let table = CharacterTableSn::new(n);
        for (i, l) in parts.iter().enumerate() {
            let lambda = Partition::new(l.clone()).unwrap();
            for (j, c) in parts.iter().enumerate() {
                let ct = Partition::new(c.clone()).unwrap();
                assert_eq!(table.value(&lambda, &ct), oracle[i][j], "n={n} {lambda} on {ct}");
                assert_eq!(mn_character(&lambda, &ct).unwrap(), oracle[i][j]);
            }
        }
    }
}

fn scenario_text(q: [i64; 3], a: i64, b: &str, c: i64, lo: i64, hi: i64) -> String {
    format!(
        r#"{{"labels": ["p", "q", "r"], "qvector": [{}, {}, {}],
            "columns": [["1", "0", "0"], ["{a}", "1", "0"], ["{b}", "{c}", "1"]],
            "constraints": [], "bounds": {{"min": {lo}, "max": {hi}}}}}"#,
        q[0], q[1], q[2]
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn deduce_matches_naive_enumeration(
        q in prop::array::uniform3(0i64..40),
        a in 0i64..4,
        k in 1i64..4,
        c in 0i64..4,
        shift in -3i64..3,
    ) {
        // matrix entry (3,1) is `k*x + shift`, with x in 0..=5
        let b = if shift < 0 { format!("{k}*x - {}", -shift) } else { format!("{k}*x + {shift}") };
        let s = parse_scenario(&scenario_text(q, a, &b, c, 0, 5)).unwrap();
        let got: Vec<i64> = solve(&s)
            .unwrap()
            .assignments()
            .iter()
            .map(|v| i64::try_from(&v[0]).unwrap())
            .collect();
        let columns = |x: i64| vec![vec![1, a, k * x + shift], vec![0, 1, c], vec![0, 0, 1]];
        prop_assert_eq!(got, naive_feasible(&q, &columns, 0..=5));
    }
}
