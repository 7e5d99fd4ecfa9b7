//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the crate's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

/// A finite Coxeter group realised by integer reflection matrices on the
/// simple roots: `s_i(α_j) = α_j - A_ij α_i`.
pub struct RefGroup {
    pub rank: usize,
    pub mats: Vec<Vec<i64>>,
    pub len: Vec<usize>,
    pub word: Vec<Vec<usize>>,
    /// `right[w][s]` is the index of `w s`.
    pub right: Vec<Vec<usize>>,
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    out[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    out
}

impl RefGroup {
    pub fn from_cartan(cartan: &[Vec<i64>]) -> Self {
        let r = cartan.len();
        let gens: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut m = vec![0; r * r];
                for j in 0..r {
                    m[j * r + j] = 1;
                    // column j is the image of α_j
                    m[i * r + j] -= cartan[i][j];
                }
                m
            })
            .collect();
        let mut id = vec![0; r * r];
        for i in 0..r {
            id[i * r + i] = 1;
        }
        let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut g = RefGroup {
            rank: r,
            mats: vec![id],
            len: vec![0],
            word: vec![vec![]],
            right: vec![],
        };
        let mut queue = VecDeque::from([0]);
        while let Some(w) = queue.pop_front() {
            let mut row = Vec::with_capacity(r);
            for (s, gen) in gens.iter().enumerate() {
                let m = mat_mul(&g.mats[w], gen, r);
                let id = match index.get(&m) {
                    Some(&i) => i,
                    None => {
                        let i = g.mats.len();
                        index.insert(m.clone(), i);
                        g.mats.push(m);
                        g.len.push(g.len[w] + 1);
                        let mut word = g.word[w].clone();
                        word.push(s);
                        g.word.push(word);
                        queue.push_back(i);
                        i
                    }
                };
                row.push(id);
            }
            g.right.push(row);
        }
        g
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn type_a(n: usize) -> Self {
        let r = n - 1;
        let cartan = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect::<Vec<_>>();
        RefGroup::from_cartan(&cartan)
    }

    pub fn b2() -> Self {
        RefGroup::from_cartan(&[vec![2, -2], vec![-1, 2]])
    }

    pub fn g2() -> Self {
        RefGroup::from_cartan(&[vec![2, -3], vec![-1, 2]])
    }
}

/// Polynomials in `q` with `i64` coefficients, lowest degree first.
pub type QPoly = Vec<i64>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn padd(a: &[i64], b: &[i64]) -> QPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn pmul(a: &[i64], b: &[i64]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Kazhdan–Lusztig polynomials `P_{x,w}(q)` from the R-polynomials and
/// `q^{l(w)-l(x)} P_{x,w}(q^-1) = Σ_{x<=y<=w} R_{x,y} P_{y,w}`.
pub fn kl_polynomials(g: &RefGroup) -> HashMap<(usize, usize), QPoly> {
    let n = g.size();
    let mut by_len: Vec<usize> = (0..n).collect();
    by_len.sort_by_key(|&w| g.len[w]);

    // R[x][w], filled in order of increasing l(w)
    let mut r: Vec<Vec<QPoly>> = vec![vec![vec![]; n]; n];
    r[0][0] = vec![1];
    for &w in by_len.iter().skip(1) {
        let s = *g.word[w].last().unwrap();
        let ws = g.right[w][s];
        for x in 0..n {
            let xs = g.right[x][s];
            r[x][w] = if g.len[xs] < g.len[x] {
                r[xs][ws].clone()
            } else {
                padd(&pmul(&[-1, 1], &r[x][ws]), &pmul(&[0, 1], &r[xs][ws]))
            };
        }
    }
    let leq = |x: usize, w: usize| !r[x][w].is_empty();

    let mut p: HashMap<(usize, usize), QPoly> = HashMap::new();
    for w in 0..n {
        p.insert((w, w), vec![1]);
        let mut below: Vec<usize> = (0..n).filter(|&x| x != w && leq(x, w)).collect();
        below.sort_by_key(|&x| std::cmp::Reverse(g.len[x]));
        for x in below {
            let mut rhs: QPoly = vec![];
            for y in 0..n {
                if y != x && leq(x, y) && leq(y, w) {
                    rhs = padd(&rhs, &pmul(&r[x][y], &p[&(y, w)]));
                }
            }
            let d = g.len[w] - g.len[x];
            let cut = (d - 1) / 2;
            let px: QPoly = trim(rhs.iter().take(cut + 1).map(|c| -c).collect());
            p.insert((x, w), px);
        }
    }
    p
}

/// `h_{x,w} = v^{l(w)-l(x)} P_{x,w}(v^-2)` as `exponent -> coefficient`.
pub fn h_from_p(p: &[i64], d: usize) -> BTreeMap<i32, i64> {
    p.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| (d as i32 - 2 * k as i32, *c))
        .collect()
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    go(n, n, &mut vec![], &mut out);
    out
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
fn kostka(lambda: &[usize], mu: &[usize]) -> i64 {
    // fill values 1..=len(mu) one at a time as horizontal strips
    fn go(shape: Vec<usize>, lambda: &[usize], mu: &[usize], k: usize) -> i64 {
        if k == mu.len() {
            return (shape.as_slice() == lambda) as i64;
        }
        let mut total = 0;
        let mut strip = |new: Vec<usize>| total += go(new, lambda, mu, k + 1);
        fn strips(shape: &[usize], lambda: &[usize], row: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(Vec<usize>)) {
            if row == lambda.len() {
                if left == 0 {
                    f(cur.clone());
                }
                return;
            }
            let old = shape.get(row).copied().unwrap_or(0);
            let cap = if row == 0 { lambda[0] } else { shape[row - 1].min(lambda[row]) };
            for add in 0..=left.min(cap.saturating_sub(old)) {
                cur.push(old + add);
                strips(shape, lambda, row + 1, left - add, cur, f);
                cur.pop();
            }
        }
        let mut padded = shape.clone();
        padded.resize(lambda.len(), 0);
        strips(&padded, lambda, 0, mu[k], &mut vec![], &mut strip);
        total
    }
    go(vec![0; lambda.len()], lambda, mu, 0)
}

/// Fixed tabloids of row lengths `mu` under a permutation with the given
/// cycle lengths: ways to place whole cycles into rows.
fn perm_character(mu: &[usize], cycles: &[usize]) -> i64 {
    fn go(rows: &mut Vec<usize>, cycles: &[usize]) -> i64 {
        match cycles.split_first() {
            None => rows.iter().all(|&r| r == 0) as i64,
            Some((&c, rest)) => {
                let mut total = 0;
                for i in 0..rows.len() {
                    if rows[i] >= c {
                        rows[i] -= c;
                        total += go(rows, rest);
                        rows[i] += c;
                    }
                }
                total
            }
        }
    }
    go(&mut mu.to_vec(), cycles)
}

/// Irreducible characters of `S_n` from Young's rule `π_μ = Σ K_{λμ} χ_λ`,
/// solved by back-substitution. Indexed `[λ][cycle type]`, both in the
/// order of [`partitions`].
pub fn young_character_table(n: usize) -> Vec<Vec<i64>> {
    let parts = partitions(n);
    let m = parts.len();
    let pi: Vec<Vec<i64>> = parts
        .iter()
        .map(|mu| parts.iter().map(|c| perm_character(mu, c)).collect())
        .collect();
    let mut chi: Vec<Vec<i64>> = vec![vec![]; m];
    // K is unitriangular: K_{λμ} != 0 only for λ >= μ, earlier in the list
    for j in 0..m {
        let mut row = pi[j].clone();
        for i in 0..j {
            let k = kostka(&parts[i], &parts[j]);
            if k != 0 {
                for (c, x) in row.iter_mut().zip(&chi[i]) {
                    *c -= k * x;
                }
            }
        }
        chi[j] = row;
    }
    chi
}

/// Brute-force feasibility for a scenario with one unknown `x`: every
/// multiplicity of `Q` in the unitriangular column basis must be `>= 0`.
pub fn naive_feasible(qvec: &[i64], columns: &dyn Fn(i64) -> Vec<Vec<i64>>, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range
        .filter(|&x| {
            let cols = columns(x);
            let mut rest = qvec.to_vec();
            for (j, col) in cols.iter().enumerate() {
                let m = rest[j];
                if m < 0 {
                    return false;
                }
                for (r, c) in rest.iter_mut().zip(col) {
                    *r -= m * c;
                }
            }
            true
        })
        .collect()
}
