//! Integer partitions and standard Young tableaux.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `n`: weakly decreasing positive parts.
///
/// Ordered lexicographically on parts, so `1,1,1 < 2,1 < 3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// `n(λ) = Σ (i-1) λ_i`, the a-value of the matching type-A cell.
    pub fn n_value(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let n = self.size();
        let conj = self.conjugate();
        let mut num: u128 = (1..=n as u128).product();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (conj.parts[j] - i - 1) + 1;
                num /= hook as u128;
            }
        }
        num
    }

    /// All partitions of `n`, largest first: `(n), (n-1,1), ..., (1^n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Standard tableaux of this shape in a fixed deterministic order.
    pub fn standard_tableaux(&self) -> Vec<Tableau> {
        fn rec(shape: &mut Vec<usize>, k: usize, pos: &mut Vec<(usize, usize)>, out: &mut Vec<Tableau>) {
            if k == 0 {
                let mut p = pos.clone();
                p.reverse();
                out.push(Tableau { pos: p });
                return;
            }
            for r in 0..shape.len() {
                let len = shape[r];
                let removable = len > 0 && (r + 1 == shape.len() || shape[r + 1] < len);
                if removable {
                    shape[r] -= 1;
                    pos.push((r, len - 1));
                    rec(shape, k - 1, pos, out);
                    pos.pop();
                    shape[r] += 1;
                }
            }
        }
        let mut out = Vec::new();
        let mut shape = self.parts.clone();
        rec(&mut shape, self.size(), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"2,1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// A standard Young tableau, stored as the cell `(row, col)` of each entry
/// `1..=n` (index `k` holds the cell of entry `k + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pos: Vec<(usize, usize)>,
}

impl Tableau {
    pub fn cell(&self, entry: usize) -> (usize, usize) {
        self.pos[entry]
    }

    /// `col - row` of the cell holding entry `k + 1`.
    pub fn content(&self, entry: usize) -> i32 {
        let (r, c) = self.pos[entry];
        c as i32 - r as i32
    }

    /// Swaps entries `k+1` and `k+2`; `None` when the result is not standard.
    pub fn swap(&self, k: usize) -> Option<Tableau> {
        let (r1, c1) = self.pos[k];
        let (r2, c2) = self.pos[k + 1];
        if r1 == r2 || c1 == c2 {
            return None;
        }
        let mut pos = self.pos.clone();
        pos.swap(k, k + 1);
        Some(Tableau { pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let sizes: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Partition::all(3), vec![Partition::row(3), "2,1".parse().unwrap(), Partition::column(3)]);
    }

    #[test]
    fn conjugate_and_n_value() {
        let p: Partition = "3,1".parse().unwrap();
        assert_eq!(p.conjugate(), "2,1,1".parse().unwrap());
        assert_eq!(Partition::column(4).n_value(), 6);
        assert_eq!(Partition::row(4).n_value(), 0);
        assert_eq!(p.n_value(), 1);
    }

    #[test]
    fn tableaux_match_hook_formula() {
        for n in 1..=7 {
            let mut total: u128 = 0;
            for p in Partition::all(n) {
                let t = p.standard_tableaux();
                assert_eq!(t.len() as u128, p.num_standard_tableaux());
                total += (t.len() * t.len()) as u128;
            }
            assert_eq!(total, (1..=n as u128).product());
        }
    }

    #[test]
    fn parse_errors() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&Partition::column(2)).unwrap(), "\"1,1\"");
    }
}
