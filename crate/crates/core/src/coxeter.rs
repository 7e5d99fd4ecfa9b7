//! Finite Weyl groups built from Cartan data.
//!
//! Elements are enumerated breadth-first along right multiplication, so every
//! element receives its ShortLex-minimal reduced word and ids are assigned in
//! ShortLex order (the identity is id 0, generators follow). An element is
//! identified during enumeration by `w^-1(ρ)` written in fundamental-weight
//! coordinates, which is exact integer arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub const DEFAULT_MAX_ORDER: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    D,
    F,
    G,
}

impl FromStr for CoxeterType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CoxeterType::A),
            "B" | "b" => Ok(CoxeterType::B),
            "D" | "d" => Ok(CoxeterType::D),
            "F" | "f" => Ok(CoxeterType::F),
            "G" | "g" => Ok(CoxeterType::G),
            other => Err(Error::UnsupportedGroup(format!("unknown type {other:?}"))),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
            CoxeterType::D => "D",
            CoxeterType::F => "F",
            CoxeterType::G => "G",
        };
        f.write_str(c)
    }
}

/// The Frobenius action on the Coxeter diagram.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    #[default]
    None,
    /// The order-2 diagram automorphism `s_i -> s_{r+1-i}` of type `A_r`.
    Flip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDatum {
    pub ty: CoxeterType,
    pub rank: usize,
    pub twist: Twist,
}

impl GroupDatum {
    pub fn new(ty: CoxeterType, rank: usize) -> Result<Self> {
        let ok = match ty {
            CoxeterType::A => rank >= 1,
            CoxeterType::B => rank >= 2,
            CoxeterType::D => rank >= 4,
            CoxeterType::F => rank == 4,
            CoxeterType::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnsupportedGroup(format!("{ty}{rank}")));
        }
        Ok(GroupDatum {
            ty,
            rank,
            twist: Twist::None,
        })
    }

    /// The Weyl group `S_n` of `GL_n`/`SU_n`, i.e. type `A_{n-1}`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedGroup(format!("S_{n} has no simple reflections")));
        }
        GroupDatum::new(CoxeterType::A, n - 1)
    }

    pub fn with_twist(mut self, twist: Twist) -> Result<Self> {
        if twist == Twist::Flip && !(self.ty == CoxeterType::A && self.rank >= 2) {
            return Err(Error::UnsupportedGroup(format!(
                "{}{} has no diagram flip in scope",
                self.ty, self.rank
            )));
        }
        self.twist = twist;
        Ok(self)
    }

    /// The integer `δ`: 1 when split, 2 for the flip.
    pub fn twist_order(&self) -> u32 {
        match self.twist {
            Twist::None => 1,
            Twist::Flip => 2,
        }
    }

    pub fn is_type_a(&self) -> bool {
        self.ty == CoxeterType::A
    }

    /// `a[i][j] = <α_i^∨, α_j>`, Bourbaki labelling.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let r = self.rank;
        let mut a = vec![vec![0i32; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.ty {
            CoxeterType::A => (1..r).for_each(|i| link(i - 1, i, -1, -1)),
            CoxeterType::B => {
                (1..r - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(r - 2, r - 1, -1, -2);
            }
            CoxeterType::D => {
                (1..r - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(r - 3, r - 1, -1, -1);
            }
            CoxeterType::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            CoxeterType::G => link(0, 1, -1, -3),
        }
        a
    }

    /// `|W|` as the product of the fundamental degrees.
    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.ty {
            CoxeterType::A => fact(n + 1),
            CoxeterType::B => (1u128 << n) * fact(n),
            CoxeterType::D => (1u128 << (n - 1)) * fact(n),
            CoxeterType::F => 2 * 6 * 8 * 12,
            CoxeterType::G => 12,
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.ty {
            CoxeterType::A => n * (n + 1) / 2,
            CoxeterType::B => n * n,
            CoxeterType::D => n * (n - 1),
            CoxeterType::F => 24,
            CoxeterType::G => 6,
        }
    }
}

impl fmt::Display for GroupDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == Twist::Flip {
            write!(f, "2")?;
        }
        write!(f, "{}{}", self.ty, self.rank)
    }
}

/// An element of a [`GroupTable`], by id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The full multiplication data of a finite Weyl group.
///
/// Generators are indexed from 0 internally; reduced words handed to or
/// returned from users are 1-based.
pub struct GroupTable {
    datum: GroupDatum,
    words: Vec<Vec<u8>>,
    lengths: Vec<u16>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    left_desc: Vec<u64>,
    right_desc: Vec<u64>,
    longest: Elem,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("datum", &self.datum)
            .field("size", &self.size())
            .finish()
    }
}

impl GroupTable {
    pub fn build(datum: GroupDatum) -> Result<Self> {
        Self::build_with_limit(datum, DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(datum: GroupDatum, max_order: u128) -> Result<Self> {
        let order = datum.order();
        if order > max_order {
            return Err(Error::SizeGuard {
                what: "Weyl group",
                size: order,
                limit: max_order,
            });
        }
        let r = datum.rank;
        let cartan = datum.cartan_matrix();

        let act = |s: usize, key: &[i32]| -> Vec<i32> {
            let m = key[s];
            (0..r).map(|i| key[i] - m * cartan[i][s]).collect()
        };

        let rho = vec![1i32; r];
        let mut index: HashMap<Vec<i32>, u32> = HashMap::with_capacity(order as usize);
        let mut keys: Vec<Vec<i32>> = vec![rho.clone()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut lengths: Vec<u16> = vec![0];
        let mut right: Vec<Vec<u32>> = vec![Vec::with_capacity(order as usize); r];
        index.insert(rho, 0);

        // Ids are handed out in discovery order; processing ids in order
        // with generators ascending visits candidate words in ShortLex order.
        let mut next = 0usize;
        while next < keys.len() {
            for (s, table) in right.iter_mut().enumerate() {
                let key = act(s, &keys[next]);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len() as u32;
                        let mut word = words[next].clone();
                        word.push(s as u8);
                        words.push(word);
                        lengths.push(lengths[next] + 1);
                        index.insert(key.clone(), id);
                        keys.push(key);
                        id
                    }
                };
                table.push(id);
            }
            next += 1;
        }
        if keys.len() as u128 != order {
            return Err(Error::Internal(format!(
                "enumerated {} elements for {datum}, expected {order}",
                keys.len()
            )));
        }
        drop(index);

        let size = keys.len();
        let mut inverse = vec![0u32; size];
        for (w, word) in words.iter().enumerate() {
            let mut x = 0u32;
            for &s in word.iter().rev() {
                x = right[s as usize][x as usize];
            }
            inverse[w] = x;
        }
        let left: Vec<Vec<u32>> = (0..r)
            .map(|s| (0..size).map(|w| inverse[right[s][inverse[w] as usize] as usize]).collect())
            .collect();
        let mut left_desc = vec![0u64; size];
        let mut right_desc = vec![0u64; size];
        for w in 0..size {
            for s in 0..r {
                if lengths[left[s][w] as usize] < lengths[w] {
                    left_desc[w] |= 1 << s;
                }
                if lengths[right[s][w] as usize] < lengths[w] {
                    right_desc[w] |= 1 << s;
                }
            }
        }
        let longest = (0..size).max_by_key(|&w| lengths[w]).unwrap();
        Ok(GroupTable {
            datum,
            words,
            lengths,
            right,
            left,
            inverse,
            left_desc,
            right_desc,
            longest: Elem(longest as u32),
        })
    }

    pub fn datum(&self) -> &GroupDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    /// The simple reflection with 0-based index `s`.
    pub fn generator(&self, s: usize) -> Elem {
        Elem(self.right[s][0])
    }

    /// All elements in id (ShortLex) order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size() as u32).map(Elem)
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.index()] as usize
    }

    /// ShortLex-minimal reduced word, 0-based generator indices.
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.index()]
    }

    /// ShortLex-minimal reduced word, 1-based.
    pub fn reduced_word(&self, w: Elem) -> Vec<usize> {
        self.words[w.index()].iter().map(|&s| s as usize + 1).collect()
    }

    /// `w s`.
    pub fn right_mul(&self, w: Elem, s: usize) -> Elem {
        Elem(self.right[s][w.index()])
    }

    /// `s w`.
    pub fn left_mul(&self, s: usize, w: Elem) -> Elem {
        Elem(self.left[s][w.index()])
    }

    pub fn compose(&self, x: Elem, y: Elem) -> Elem {
        self.word(y).iter().fold(x, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        Elem(self.inverse[x.index()])
    }

    /// Bitmask of `s` with `l(sw) < l(w)`.
    pub fn left_descents(&self, w: Elem) -> u64 {
        self.left_desc[w.index()]
    }

    /// Bitmask of `s` with `l(ws) < l(w)`.
    pub fn right_descents(&self, w: Elem) -> u64 {
        self.right_desc[w.index()]
    }

    pub fn is_left_descent(&self, s: usize, w: Elem) -> bool {
        self.left_desc[w.index()] >> s & 1 == 1
    }

    pub fn is_right_descent(&self, w: Elem, s: usize) -> bool {
        self.right_desc[w.index()] >> s & 1 == 1
    }

    pub fn first_left_descent(&self, w: Elem) -> Option<usize> {
        let d = self.left_desc[w.index()];
        (d != 0).then(|| d.trailing_zeros() as usize)
    }

    /// The longest element `w_0`.
    pub fn longest(&self) -> Elem {
        self.longest
    }

    /// Longest element of the parabolic subgroup generated by `subset`
    /// (0-based indices).
    pub fn longest_of(&self, subset: &[usize]) -> Elem {
        let mut w = self.identity();
        'grow: loop {
            for &s in subset {
                if !self.is_right_descent(w, s) {
                    w = self.right_mul(w, s);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// Product of a 1-based generator word; the word need not be reduced.
    pub fn element_of(&self, word: &[usize]) -> Result<Elem> {
        let mut w = self.identity();
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(Error::GeneratorOutOfRange {
                    index: i,
                    rank: self.rank(),
                });
            }
            w = self.right_mul(w, i - 1);
        }
        Ok(w)
    }

    /// Parses the word syntax: space-separated 1-based generator indices and
    /// the keywords `e`, `w0` and `w0(i,j,...)`; tokens are multiplied left
    /// to right.
    pub fn parse_word(&self, text: &str) -> Result<Elem> {
        let mut w = self.identity();
        for token in tokenize_word(text)? {
            let x = if token == "e" {
                self.identity()
            } else if token == "w0" {
                self.longest()
            } else if let Some(inner) = token.strip_prefix("w0(").and_then(|t| t.strip_suffix(')')) {
                let mut subset = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let i: usize = part
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad index {part:?} in {token:?}")))?;
                    if i == 0 || i > self.rank() {
                        return Err(Error::GeneratorOutOfRange {
                            index: i,
                            rank: self.rank(),
                        });
                    }
                    subset.push(i - 1);
                }
                self.longest_of(&subset)
            } else {
                let i: usize = token
                    .parse()
                    .map_err(|_| Error::InvalidWord(format!("unexpected token {token:?}")))?;
                self.element_of(&[i])?
            };
            w = self.compose(w, x);
        }
        Ok(w)
    }

    /// Bruhat order via the lifting property: for a left descent `s` of `w`,
    /// `x <= w` iff `sx <= sw` (when `s` is a left descent of `x`) or
    /// `x <= sw` (otherwise).
    pub fn bruhat_leq(&self, x: Elem, w: Elem) -> bool {
        let (mut x, mut w) = (x, w);
        loop {
            if x == w {
                return true;
            }
            if self.length(x) >= self.length(w) {
                return false;
            }
            let s = self.first_left_descent(w).expect("w is not the identity");
            if self.is_left_descent(s, x) {
                x = self.left_mul(s, x);
            }
            w = self.left_mul(s, w);
        }
    }

    /// The Bruhat interval `[e, w]`, sorted by id.
    pub fn bruhat_interval(&self, w: Elem) -> Vec<Elem> {
        let mut interval = vec![self.identity()];
        for &s in self.word(w).iter().rev() {
            let mut moved: Vec<Elem> = interval.iter().map(|&x| self.left_mul(s as usize, x)).collect();
            moved.extend_from_slice(&interval);
            moved.sort_unstable();
            moved.dedup();
            interval = moved;
        }
        interval
    }

    /// Size of `[e, w]` without materializing it twice.
    pub fn bruhat_interval_size(&self, w: Elem) -> usize {
        self.bruhat_interval(w).len()
    }

    /// The diagram flip `s_i -> s_{r+1-i}`; meaningful for type A only.
    pub fn diagram_flip(&self, x: Elem) -> Elem {
        let r = self.rank();
        self.word(x)
            .iter()
            .fold(self.identity(), |acc, &s| self.right_mul(acc, r - 1 - s as usize))
    }

    /// The Frobenius action on `W`. Returns `x` unchanged (with a warning)
    /// when the datum is split.
    pub fn apply_twist(&self, x: Elem) -> Elem {
        match self.datum.twist {
            Twist::Flip => self.diagram_flip(x),
            Twist::None => {
                log::warn!("apply_twist called on split datum {}; identity returned", self.datum);
                x
            }
        }
    }

    fn require_type_a(&self) -> Result<()> {
        if self.datum.is_type_a() {
            Ok(())
        } else {
            Err(Error::NotTypeA(self.datum.to_string()))
        }
    }

    /// One-line notation `[w(1), ..., w(n)]` of a type `A_{n-1}` element,
    /// where `s_i` is the transposition `(i, i+1)` and words compose as
    /// functions (rightmost letter acts first).
    pub fn permutation(&self, w: Elem) -> Result<Vec<usize>> {
        self.require_type_a()?;
        let mut one_line: Vec<usize> = (1..=self.rank() + 1).collect();
        for &s in self.word(w) {
            one_line.swap(s as usize, s as usize + 1);
        }
        Ok(one_line)
    }

    /// Inverse of [`GroupTable::permutation`].
    pub fn from_permutation(&self, one_line: &[usize]) -> Result<Elem> {
        self.require_type_a()?;
        let n = self.rank() + 1;
        let mut seen = vec![false; n + 1];
        if one_line.len() != n || one_line.iter().any(|&i| i == 0 || i > n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidWord(format!("{one_line:?} is not a permutation of 1..={n}")));
        }
        let mut p = one_line.to_vec();
        let mut letters = Vec::new();
        while let Some(i) = (0..n - 1).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            letters.push(i);
        }
        Ok(letters
            .iter()
            .rev()
            .fold(self.identity(), |acc, &s| self.right_mul(acc, s)))
    }

    /// Cycle type of a type-A element acting on `n = rank + 1` points.
    pub fn cycle_type(&self, w: Elem) -> Result<Partition> {
        let p = self.permutation(w)?;
        let n = p.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p[i] - 1;
                len += 1;
            }
            cycles.push(len);
        }
        Ok(Partition::from_unsorted(cycles))
    }
}

fn tokenize_word(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(Error::InvalidWord(format!("unbalanced ')' in {text:?}")));
                }
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::InvalidWord(format!("unbalanced '(' in {text:?}")));
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}
