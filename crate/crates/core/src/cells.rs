//! Kazhdan–Lusztig preorders, cells, and Lusztig's `a`-function.
//!
//! The preorders come from actually multiplying `C'_s C'_w` (or `C'_w C'_s`)
//! and re-expanding the product in the `C'` basis, so they do not rely on the
//! `μ`-formula for that product.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coxeter::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::hecke::{HeckeElt, Side};
use crate::kl::KlTable;
use crate::laurent::LaurentPoly;
use crate::partition::Partition;

pub const DEFAULT_MAX_CELL_GROUP: usize = 5_000;
pub const DEFAULT_MAX_A_BRUTE: usize = 200;

/// Coordinates in the `C'` basis.
pub type CprimeCoords = BTreeMap<Elem, LaurentPoly>;

/// Re-expands `h` in the `C'` basis by peeling off a longest element of the
/// support at each step.
pub fn to_cprime_basis(kl: &KlTable, h: &HeckeElt) -> Result<CprimeCoords> {
    let g = kl.group();
    let mut rest = h.clone();
    let mut out = CprimeCoords::new();
    while let Some(z) = rest.support().max_by_key(|&x| (g.length(x), x)) {
        let c = rest.coeff(z);
        rest.add_scaled(&*kl.cprime(z)?, &-&c);
        out.insert(z, c);
    }
    Ok(out)
}

/// `C'_s C'_w` (left) or `C'_w C'_s` (right) in the `C'` basis, for every
/// generator `s` and element `w`.
#[derive(Debug, Clone)]
pub struct ActionTable {
    side: Side,
    rows: Vec<Vec<CprimeCoords>>,
}

impl ActionTable {
    pub fn build(kl: &KlTable, side: Side) -> Result<Self> {
        let g = kl.group();
        kl.fill_all()?;
        let elems: Vec<Elem> = g.elements().collect();
        let rows = (0..g.rank())
            .map(|s| {
                elems
                    .par_iter()
                    .map(|&w| to_cprime_basis(kl, &kl.hecke().cprime_s_mul(&*kl.cprime(w)?, s, side)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionTable { side, rows })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn row(&self, s: usize, w: Elem) -> &CprimeCoords {
        &self.rows[s][w.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two-sided",
        })
    }
}

/// A cell partition together with the induced partial order on cells.
#[derive(Clone)]
pub struct Cells {
    group: Arc<GroupTable>,
    kind: CellKind,
    cell_of: Vec<usize>,
    cells: Vec<Vec<Elem>>,
    /// `below[i][j]`: cell `i` is `≤` cell `j`.
    below: Vec<Vec<bool>>,
}

impl fmt::Debug for Cells {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cells")
            .field("kind", &self.kind)
            .field("cells", &self.cells.len())
            .finish()
    }
}

impl Cells {
    pub fn compute(kl: &KlTable, kind: CellKind) -> Result<Self> {
        Self::compute_with_limit(kl, kind, DEFAULT_MAX_CELL_GROUP)
    }

    pub fn compute_with_limit(kl: &KlTable, kind: CellKind, max_size: usize) -> Result<Self> {
        let g = kl.group().clone();
        if g.size() > max_size {
            return Err(Error::SizeGuard {
                what: "group order for cells",
                size: g.size() as u128,
                limit: max_size as u128,
            });
        }
        let sides: &[Side] = match kind {
            CellKind::Left => &[Side::Left],
            CellKind::Right => &[Side::Right],
            CellKind::TwoSided => &[Side::Left, Side::Right],
        };
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); g.size()];
        for &side in sides {
            let table = ActionTable::build(kl, side)?;
            for w in g.elements() {
                for s in 0..g.rank() {
                    edges[w.index()].extend(table.row(s, w).keys().map(|z| z.index()));
                }
            }
        }
        for e in edges.iter_mut() {
            e.sort_unstable();
            e.dedup();
        }
        Ok(Self::from_edges(g, kind, &edges))
    }

    /// `edges[y]` lists the `z` with `z ≤ y` by one step.
    fn from_edges(group: Arc<GroupTable>, kind: CellKind, edges: &[Vec<usize>]) -> Self {
        let n = edges.len();
        let reach: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|start| {
                let mut seen = vec![false; n];
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(y) = stack.pop() {
                    for &z in &edges[y] {
                        if !seen[z] {
                            seen[z] = true;
                            stack.push(z);
                        }
                    }
                }
                seen
            })
            .collect();
        let mut cell_of = vec![usize::MAX; n];
        let mut cells: Vec<Vec<Elem>> = Vec::new();
        for x in 0..n {
            if cell_of[x] != usize::MAX {
                continue;
            }
            let id = cells.len();
            let members: Vec<Elem> = (x..n)
                .filter(|&y| reach[x][y] && reach[y][x])
                .map(|y| Elem(y as u32))
                .collect();
            for m in &members {
                cell_of[m.index()] = id;
            }
            cells.push(members);
        }
        let below = (0..cells.len())
            .map(|i| {
                let xi = cells[i][0].index();
                (0..cells.len()).map(|j| reach[cells[j][0].index()][xi]).collect()
            })
            .collect();
        Cells {
            group,
            kind,
            cell_of,
            cells,
            below,
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells ordered by their smallest element id; members in id order.
    pub fn cells(&self) -> &[Vec<Elem>] {
        &self.cells
    }

    pub fn cell_of(&self, w: Elem) -> usize {
        self.cell_of[w.index()]
    }

    pub fn same_cell(&self, x: Elem, y: Elem) -> bool {
        self.cell_of(x) == self.cell_of(y)
    }

    /// `x ≤ y` in the preorder.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.below[self.cell_of(x)][self.cell_of(y)]
    }

    /// Cell `i` is `≤` cell `j` in the induced partial order.
    pub fn cell_leq(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }
}

/// Robinson–Schensted row insertion of a one-line permutation; returns the
/// insertion and recording tableaux as rows.
pub fn rsk(one_line: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &value) in one_line.iter().enumerate() {
        let mut x = value;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(k) => {
                    x = std::mem::replace(&mut p[row][k], x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step + 1);
                    break;
                }
            }
        }
    }
    (p, q)
}

pub fn rsk_shape(one_line: &[usize]) -> Partition {
    Partition::from_unsorted(rsk(one_line).0.iter().map(Vec::len).collect())
}

/// `a(w) = n(λ)` where `λ` is the RSK shape of `w`; type A only.
pub fn a_value_type_a(group: &GroupTable, w: Elem) -> Result<usize> {
    Ok(rsk_shape(&group.permutation(w)?).n_value())
}

/// Lusztig's `a`-function for every element, by expanding all products
/// `C'_x C'_y` in the `C'` basis and taking the largest power of `v` in
/// each structure constant.
pub fn a_values_brute(kl: &KlTable) -> Result<Vec<usize>> {
    a_values_brute_with_limit(kl, DEFAULT_MAX_A_BRUTE)
}

pub fn a_values_brute_with_limit(kl: &KlTable, max_size: usize) -> Result<Vec<usize>> {
    let g = kl.group().clone();
    if g.size() > max_size {
        return Err(Error::SizeGuard {
            what: "group order for brute-force a-function",
            size: g.size() as u128,
            limit: max_size as u128,
        });
    }
    let left = ActionTable::build(kl, Side::Left)?;
    let mut by_length: Vec<Elem> = g.elements().collect();
    by_length.sort_by_key(|&x| g.length(x));

    let per_y: Vec<Vec<i32>> = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&y| {
            // products[x] = C'_x C'_y in the C' basis
            let mut products: Vec<CprimeCoords> = vec![CprimeCoords::new(); g.size()];
            let mut best = vec![i32::MIN; g.size()];
            for &x in &by_length {
                let prod = match g.first_left_descent(x) {
                    None => CprimeCoords::from([(y, LaurentPoly::one())]),
                    Some(s) => {
                        let sx = g.left_mul(s, x);
                        let mut acc = act(&left, s, &products[sx.index()]);
                        for (z, c) in left.row(s, sx) {
                            if *z != x {
                                for (u, d) in &products[z.index()] {
                                    let e = acc.entry(*u).or_insert_with(LaurentPoly::zero);
                                    e.add_scaled(d, &-c);
                                }
                            }
                        }
                        acc.retain(|_, c| !c.is_zero());
                        acc
                    }
                };
                for (z, c) in &prod {
                    best[z.index()] = best[z.index()].max(c.max_exp().unwrap());
                }
                products[x.index()] = prod;
            }
            best
        })
        .collect();

    Ok((0..g.size())
        .map(|z| per_y.iter().map(|b| b[z]).max().unwrap().max(0) as usize)
        .collect())
}

fn act(table: &ActionTable, s: usize, coords: &CprimeCoords) -> CprimeCoords {
    let mut out = CprimeCoords::new();
    for (u, c) in coords {
        for (z, d) in table.row(s, *u) {
            out.entry(*z).or_insert_with(LaurentPoly::zero).add_scaled(d, c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
