//! Coordinates of `Q_w` and of intersection-cohomology classes in the
//! almost-character basis, and their unipotent decompositions for `GL_n`
//! (split) and `SU_n` (twisted by the diagram flip).
//!
//! Almost characters are formal labels here: the coordinate at `λ` is a
//! Hecke character value `χ_λ,v(B_w)` for a basis element `B_w`, or its
//! specialisation at `v = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cells::{rsk_shape, CellKind, Cells};
use crate::chars::{invariants_a_big_a, HeckeCharTable, SnCharacters};
use crate::coxeter::{Elem, GroupDatum, GroupTable, Twist};
use crate::error::{Error, Result};
use crate::hecke::{GroupRingElt, HeckeElt};
use crate::kl::KlTable;
use crate::laurent::LaurentPoly;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    #[serde(rename = "t")]
    T,
    Cprime,
    C,
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" | "T" => Ok(Basis::T),
            "Cprime" | "cprime" | "C'" => Ok(Basis::Cprime),
            "C" | "c" => Ok(Basis::C),
            other => Err(Error::Unsupported(format!("unknown basis {other:?}"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::T => "t",
            Basis::Cprime => "Cprime",
            Basis::C => "C",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "graded")]
    Graded,
    #[serde(rename = "at_v1")]
    AtV1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    GL,
    SU,
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" | "gl" => Ok(Form::GL),
            "SU" | "su" => Ok(Form::SU),
            other => Err(Error::Unsupported(format!("unknown form {other:?}"))),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::GL => "GL",
            Form::SU => "SU",
        })
    }
}

impl Form {
    /// The Weyl group datum of `GL_n` or `SU_n`.
    pub fn datum(self, n: usize) -> Result<GroupDatum> {
        let d = GroupDatum::symmetric(n)?;
        match self {
            Form::GL => Ok(d),
            Form::SU => d.with_twist(Twist::Flip),
        }
    }
}

fn display<T: fmt::Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub type Coords = BTreeMap<Partition, LaurentPoly>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlmostCharVector {
    #[serde(rename = "group", serialize_with = "display")]
    pub datum: GroupDatum,
    pub w: Vec<usize>,
    pub basis: Basis,
    pub mode: Mode,
    pub shift: i32,
    pub coords: Coords,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnipotentCombo {
    pub form: Form,
    pub coeffs: Coords,
    pub global_sign: Option<i8>,
}

impl UnipotentCombo {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(LaurentPoly::is_zero)
    }

    /// Nonzero coefficients only.
    pub fn support(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> + '_ {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    /// `+1` if every integer coefficient is `>= 0`, `-1` if every one is
    /// `<= 0`, `None` if mixed or the combination vanishes.
    pub fn positive_sign(&self) -> Option<i8> {
        let mut pos = false;
        let mut neg = false;
        for c in self.coeffs.values() {
            for (_, k) in c.terms() {
                pos |= k.is_positive();
                neg |= k.is_negative();
            }
        }
        match (pos, neg) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }
}

/// Everything needed to compute coordinates for one `S_n`, split or
/// twisted.
pub struct DlContext {
    datum: GroupDatum,
    kl: Arc<KlTable>,
    sn: SnCharacters,
    hecke_chars: OnceLock<std::result::Result<HeckeCharTable, String>>,
}

impl fmt::Debug for DlContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DlContext").field("datum", &self.datum).finish()
    }
}

impl DlContext {
    pub fn new(datum: GroupDatum) -> Result<Self> {
        if !datum.is_type_a() {
            return Err(Error::NotTypeA(datum.to_string()));
        }
        let split = GroupDatum { twist: Twist::None, ..datum };
        let kl = Arc::new(KlTable::for_group(Arc::new(GroupTable::build(split)?)));
        Self::from_table(kl, datum.twist)
    }

    pub fn for_form(form: Form, n: usize) -> Result<Self> {
        Self::new(form.datum(n)?)
    }

    /// Reuses an existing split KL table.
    pub fn from_table(kl: Arc<KlTable>, twist: Twist) -> Result<Self> {
        let datum = kl.group().datum().with_twist(twist)?;
        if !datum.is_type_a() {
            return Err(Error::NotTypeA(datum.to_string()));
        }
        let sn = SnCharacters::new(kl.group().clone())?;
        Ok(DlContext {
            datum,
            kl,
            sn,
            hecke_chars: OnceLock::new(),
        })
    }

    pub fn datum(&self) -> &GroupDatum {
        &self.datum
    }

    pub fn n(&self) -> usize {
        self.datum.rank + 1
    }

    pub fn form(&self) -> Form {
        match self.datum.twist {
            Twist::None => Form::GL,
            Twist::Flip => Form::SU,
        }
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.kl.group()
    }

    pub fn characters(&self) -> &SnCharacters {
        &self.sn
    }

    pub fn hecke_characters(&self) -> Result<&HeckeCharTable> {
        self.hecke_chars
            .get_or_init(|| HeckeCharTable::new(self.group().clone()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::Unsupported(e.clone()))
    }

    pub fn basis_element(&self, w: Elem, basis: Basis) -> Result<HeckeElt> {
        match basis {
            Basis::T => Ok(HeckeElt::t(w)),
            Basis::Cprime => Ok((*self.kl.cprime(w)?).clone()),
            Basis::C => self.kl.c(w),
        }
    }

    /// Coordinates of `Σ_λ χ̃_λ,v(v^shift B_w F) R_λ`.
    pub fn q_coordinates(&self, w: Elem, basis: Basis, mode: Mode, shift: i32) -> Result<AlmostCharVector> {
        let b = self.basis_element(w, basis)?.shift(shift);
        let labels = self.sn.labels().to_vec();
        let coords: Coords = match (mode, self.datum.twist) {
            (Mode::Graded, Twist::None) => {
                let table = self.hecke_characters()?;
                labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Ok((l.clone(), table.value_by_index(i, &b)?)))
                    .collect::<Result<_>>()?
            }
            (Mode::Graded, Twist::Flip) => {
                return Err(Error::Unsupported(
                    "graded coordinates are only available for split groups".into(),
                ))
            }
            (Mode::AtV1, twist) => {
                let combo = self.kl.hecke().specialize_v1(&b);
                labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.clone(), LaurentPoly::constant(self.eval_v1(i, l, &combo, twist))))
                    .collect()
            }
        };
        Ok(AlmostCharVector {
            datum: self.datum,
            w: self.group().reduced_word(w),
            basis,
            mode,
            shift,
            coords,
        })
    }

    fn eval_v1(&self, label: usize, lambda: &Partition, combo: &GroupRingElt, twist: Twist) -> BigInt {
        match twist {
            Twist::None => self.sn.eval_label(label, combo, |x| x),
            Twist::Flip => {
                let g = self.group();
                let w0 = g.longest();
                let v = self.sn.eval_label(label, combo, |x| g.compose(x, w0));
                if lambda.n_value().is_multiple_of(2) {
                    v
                } else {
                    -v
                }
            }
        }
    }

    /// `Q_w` in the unipotent basis, with the sign that makes it
    /// nonnegative and how that sign compares with candidate `a`-values.
    pub fn positivity_report(&self, w: Elem, mode: Mode) -> Result<PositivityReport> {
        let vec = self.q_coordinates(w, Basis::C, mode, 0)?;
        let mut combo = unipotent_decomposition(&vec, self.form())?;
        let sign = combo.positive_sign();
        combo.global_sign = sign;
        let shape = rsk_shape(&self.group().permutation(w)?);
        let a_candidates = [
            ("n(shape)", shape.n_value()),
            ("n(shape^T)", shape.conjugate().n_value()),
            ("length", self.group().length(w)),
        ]
            .into_iter()
            .map(|(name, a)| {
                let expected = if a % 2 == 0 { 1 } else { -1 };
                ACandidate {
                    convention: name.to_string(),
                    a,
                    matches: sign == Some(expected),
                }
            })
            .collect();
        Ok(PositivityReport {
            w: vec.w,
            form: self.form(),
            mode,
            shape,
            sign,
            pass: sign.is_some(),
            combo,
            a_candidates,
        })
    }

    /// [`DlContext::positivity_report`] for every element, in id order.
    pub fn positivity_sweep(&self, mode: Mode) -> Result<Vec<PositivityReport>> {
        self.kl.fill_all()?;
        if mode == Mode::Graded {
            self.hecke_characters()?.fill()?;
        }
        let elems: Vec<Elem> = self.group().elements().collect();
        elems.par_iter().map(|&w| self.positivity_report(w, mode)).collect()
    }
}

/// Relabels almost characters as unipotent characters: the identity for
/// `GL_n`, and `R_μ = (-1)^{a(μ)+A(μ)} ρ_μ` for `SU_n`.
pub fn unipotent_decomposition(vec: &AlmostCharVector, form: Form) -> Result<UnipotentCombo> {
    if !vec.datum.is_type_a() {
        return Err(Error::NotTypeA(vec.datum.to_string()));
    }
    let coeffs = match (form, vec.datum.twist) {
        (Form::GL, Twist::None) => vec.coords.clone(),
        (Form::SU, Twist::Flip) if vec.mode == Mode::AtV1 => vec
            .coords
            .iter()
            .map(|(l, c)| {
                let (a, big_a) = invariants_a_big_a(l);
                (l.clone(), if (a + big_a) % 2 == 0 { c.clone() } else { -c })
            })
            .collect(),
        (form, _) => {
            return Err(Error::Unsupported(format!(
                "{form} decomposition of a {} vector in {:?} mode",
                vec.datum, vec.mode
            )))
        }
    };
    Ok(UnipotentCombo {
        form,
        coeffs,
        global_sign: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ACandidate {
    pub convention: String,
    pub a: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub w: Vec<usize>,
    pub form: Form,
    pub mode: Mode,
    pub shape: Partition,
    pub sign: Option<i8>,
    pub pass: bool,
    pub combo: UnipotentCombo,
    pub a_candidates: Vec<ACandidate>,
}

/// Splits a graded combination by `v`-exponent modulo `2d`.
pub fn eigenvalue_grouping(combo: &UnipotentCombo, d: i64) -> Result<BTreeMap<i64, UnipotentCombo>> {
    if d <= 0 {
        return Err(Error::Unsupported(format!("order d must be positive, got {d}")));
    }
    let mut out: BTreeMap<i64, UnipotentCombo> = BTreeMap::new();
    for (l, c) in combo.support() {
        for (e, k) in c.terms() {
            let class = (*e as i64).rem_euclid(2 * d);
            let group = out.entry(class).or_insert_with(|| UnipotentCombo {
                form: combo.form,
                coeffs: Coords::new(),
                global_sign: combo.global_sign,
            });
            *group.coeffs.entry(l.clone()).or_insert_with(LaurentPoly::zero) += &LaurentPoly::monomial(*e, k.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubregReport {
    pub n: usize,
    pub w: Vec<usize>,
    pub combo: UnipotentCombo,
    #[serde(serialize_with = "crate::laurent::serialize_bigint")]
    pub scale: BigInt,
    pub sign: Option<i8>,
    pub expected_sign: i8,
    pub sign_matches: bool,
    pub pass: bool,
}

/// `Q_{s_1 w_0}` for `SU_n`, compared with
/// `±(n-1)! (ρ_{(2,1^{n-2})} + (n-1) ρ_{(1^n)})`.
pub fn subreg_check(n: usize) -> Result<SubregReport> {
    if !(3..=7).contains(&n) {
        return Err(Error::Unsupported(format!("subregular check needs 3 <= n <= 7, got {n}")));
    }
    let ctx = DlContext::for_form(Form::SU, n)?;
    let g = ctx.group().clone();
    let w = g.left_mul(0, g.longest());
    let vec = ctx.q_coordinates(w, Basis::C, Mode::AtV1, 0)?;
    let combo = unipotent_decomposition(&vec, Form::SU)?;

    let scale: BigInt = (1..n).map(BigInt::from).product();
    let mut hook = vec![2];
    hook.resize(n - 1, 1);
    let target: Coords = [
        (Partition::new(hook)?, LaurentPoly::constant(scale.clone())),
        (Partition::column(n), LaurentPoly::constant(&scale * (n - 1))),
    ]
    .into_iter()
    .collect();
    let nonzero: Coords = combo.support().map(|(l, c)| (l.clone(), c.clone())).collect();
    let negated: Coords = target.iter().map(|(l, c)| (l.clone(), -c)).collect();
    let sign = if nonzero == target {
        Some(1)
    } else if nonzero == negated {
        Some(-1)
    } else {
        None
    };
    let l0 = g.length(g.longest());
    let expected_sign = if (l0 - 1) % 2 == 0 { 1 } else { -1 };
    let sign_matches = sign == Some(expected_sign);
    Ok(SubregReport {
        n,
        w: vec.w,
        combo: UnipotentCombo { global_sign: sign, ..combo },
        scale,
        sign,
        expected_sign,
        sign_matches,
        pass: sign_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub at_v1_holds: bool,
    /// `C'_{s_1 w_0} = v^-1 C'_{w_0} - v^-1 t_c C'_{w_I}`.
    pub inverse_power_holds: bool,
    /// The same identity with `v^{n-2}` in front of the second term.
    pub printed_exponent: i32,
    pub printed_exponent_holds: bool,
    pub pass: bool,
}

/// Checks `C'_{s_1 w_0}` against `C'_{w_0}` and `t_c C'_{w_I}`, where
/// `I = {s_1, ..., s_{n-2}}` and `c = s_1 s_2 ... s_{n-1}`.
pub fn lemma_check(n: usize) -> Result<LemmaReport> {
    if !(3..=7).contains(&n) {
        return Err(Error::Unsupported(format!("lemma check needs 3 <= n <= 7, got {n}")));
    }
    let kl = KlTable::for_group(Arc::new(GroupTable::build(GroupDatum::symmetric(n)?)?));
    let g = kl.group().clone();
    let hecke = kl.hecke().clone();
    let w0 = g.longest();
    let lhs = kl.cprime(g.left_mul(0, w0))?;
    let top = kl.cprime(w0)?;
    let wi = g.longest_of(&(0..n - 2).collect::<Vec<_>>());
    let c = g.element_of(&(1..n).collect::<Vec<_>>())?;
    let tail = hecke.t_w_mul(c, &*kl.cprime(wi)?);

    let v1 = hecke.specialize_v1(&lhs);
    let at_v1_holds = v1 == hecke.specialize_v1(&top).sub(&hecke.specialize_v1(&tail));
    let with_exponent = |e: i32| &top.shift(-1) - &tail.shift(e);
    let inverse_power_holds = *lhs == with_exponent(-1);
    let printed_exponent = n as i32 - 2;
    let printed_exponent_holds = *lhs == with_exponent(printed_exponent);
    Ok(LemmaReport {
        n,
        at_v1_holds,
        inverse_power_holds,
        printed_exponent,
        printed_exponent_holds,
        pass: at_v1_holds && inverse_power_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub label: Partition,
    pub elements: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangularityReport {
    pub n: usize,
    /// `"shape"` or `"transposed shape"`: how labels were matched to cells.
    pub bijection: Option<String>,
    /// Cells along a linear extension of `≤_LR`, smallest first.
    pub blocks: Vec<Block>,
    pub triangular: bool,
    pub diagonal_nonzero: bool,
    pub span_ok: bool,
    pub rank: usize,
    pub pass: bool,
}

pub const MAX_TRIANGULAR_N: usize = 5;

/// Checks that the matrix of at-`v = 1` coordinates of all `Q_w` is block
/// triangular with respect to two-sided cells.
pub fn triangularity_report(n: usize) -> Result<TriangularityReport> {
    if !(2..=MAX_TRIANGULAR_N).contains(&n) {
        return Err(Error::Unsupported(format!(
            "triangularity check needs 2 <= n <= {MAX_TRIANGULAR_N}, got {n}"
        )));
    }
    let ctx = DlContext::for_form(Form::GL, n)?;
    let g = ctx.group().clone();
    ctx.kl().fill_all()?;
    let cells = Cells::compute(ctx.kl(), CellKind::TwoSided)?;
    let labels = ctx.characters().labels().to_vec();
    let elems: Vec<Elem> = g.elements().collect();
    let matrix: Vec<Vec<BigInt>> = elems
        .par_iter()
        .map(|&w| {
            let v = ctx.q_coordinates(w, Basis::C, Mode::AtV1, 0)?;
            Ok(labels.iter().map(|l| v.coords[l].eval_one()).collect())
        })
        .collect::<Result<_>>()?;
    let full_rank = rank(matrix.clone());

    let shapes: Vec<Partition> = elems.iter().map(|&w| rsk_shape(&g.permutation(w).unwrap())).collect();
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| ((0..cells.len()).filter(|&j| cells.cell_leq(j, i)).count(), i));

    for (name, transpose) in [("shape", false), ("transposed shape", true)] {
        let Some(cell_of_label) = label_cells(&labels, &shapes, &cells, &elems, transpose) else {
            continue;
        };
        let triangular = elems.iter().enumerate().all(|(r, &w)| {
            (0..labels.len()).all(|k| matrix[r][k].is_zero() || cells.cell_leq(cell_of_label[k], cells.cell_of(w)))
        });
        let diagonal_nonzero = (0..labels.len()).all(|k| {
            elems
                .iter()
                .enumerate()
                .any(|(r, &w)| cells.cell_of(w) == cell_of_label[k] && !matrix[r][k].is_zero())
        });
        if !(triangular && diagonal_nonzero) {
            continue;
        }
        let span_ok = (0..cells.len()).all(|c| {
            let rows: Vec<Vec<BigInt>> = elems
                .iter()
                .enumerate()
                .filter(|(_, &w)| cells.cell_leq(cells.cell_of(w), c))
                .map(|(r, _)| matrix[r].clone())
                .collect();
            let below = cell_of_label.iter().filter(|&&lc| cells.cell_leq(lc, c)).count();
            rank(rows) == below
        });
        let blocks = order
            .iter()
            .map(|&c| Block {
                label: labels[cell_of_label.iter().position(|&lc| lc == c).unwrap()].clone(),
                elements: cells.cells()[c].len(),
            })
            .collect();
        return Ok(TriangularityReport {
            n,
            bijection: Some(name.to_string()),
            blocks,
            triangular,
            diagonal_nonzero,
            span_ok,
            rank: full_rank,
            pass: span_ok && full_rank == labels.len(),
        });
    }
    Ok(TriangularityReport {
        n,
        bijection: None,
        blocks: Vec::new(),
        triangular: false,
        diagonal_nonzero: false,
        span_ok: false,
        rank: full_rank,
        pass: false,
    })
}

/// The cell attached to each label, if the labelling is a bijection.
fn label_cells(
    labels: &[Partition],
    shapes: &[Partition],
    cells: &Cells,
    elems: &[Elem],
    transpose: bool,
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(labels.len());
    for l in labels {
        let target = if transpose { l.conjugate() } else { l.clone() };
        let idx = shapes.iter().position(|s| *s == target)?;
        out.push(cells.cell_of(elems[idx]));
    }
    let mut sorted = out.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == labels.len() && sorted.len() == cells.len()).then_some(out)
}

/// Rank over `Q` by fraction-free elimination.
fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x * &pivot[c] - &f * y;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x /= &g);
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn a1_coordinates() {
        let ctx = DlContext::for_form(Form::GL, 2).unwrap();
        let s = ctx.group().generator(0);
        let c = |b| ctx.q_coordinates(s, b, Mode::Graded, 0).unwrap().coords;
        assert_eq!(c(Basis::T), Coords::from([(p("2"), lp(&[(-1, 1)])), (p("1,1"), lp(&[(1, -1)]))]));
        assert_eq!(c(Basis::C), Coords::from([(p("2"), lp(&[])), (p("1,1"), lp(&[(1, -1), (-1, -1)]))]));
        assert_eq!(c(Basis::Cprime), Coords::from([(p("2"), lp(&[(1, 1), (-1, 1)])), (p("1,1"), lp(&[]))]));
        let shifted = ctx.q_coordinates(s, Basis::Cprime, Mode::Graded, 1).unwrap().coords;
        assert_eq!(shifted[&p("2")], lp(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn graded_specialises_to_at_v1() {
        let ctx = DlContext::for_form(Form::GL, 4).unwrap();
        for w in ctx.group().elements() {
            for basis in [Basis::T, Basis::Cprime, Basis::C] {
                let graded = ctx.q_coordinates(w, basis, Mode::Graded, 0).unwrap();
                let flat = ctx.q_coordinates(w, basis, Mode::AtV1, 0).unwrap();
                for (l, c) in &graded.coords {
                    assert_eq!(LaurentPoly::constant(c.eval_one()), flat.coords[l]);
                }
            }
        }
    }

    #[test]
    fn duality_between_bases() {
        for n in [3, 4] {
            let ctx = DlContext::for_form(Form::GL, n).unwrap();
            for w in ctx.group().elements() {
                let cp = ctx.q_coordinates(w, Basis::Cprime, Mode::Graded, 0).unwrap().coords;
                let c = ctx.q_coordinates(w, Basis::C, Mode::Graded, 0).unwrap().coords;
                let odd = ctx.group().length(w) % 2 == 1;
                for (l, x) in &cp {
                    let y = &c[&l.conjugate()];
                    assert_eq!(*x, if odd { -y } else { y.clone() });
                    assert!(x.is_bar_invariant());
                }
            }
        }
    }

    #[test]
    fn small_positivity_cases() {
        let ctx = DlContext::for_form(Form::GL, 2).unwrap();
        let r = ctx.positivity_report(ctx.group().generator(0), Mode::Graded).unwrap();
        assert_eq!(r.sign, Some(-1));
        assert_eq!(r.combo.support().collect::<Vec<_>>(), vec![(&p("1,1"), &lp(&[(1, -1), (-1, -1)]))]);
        assert!(r.a_candidates[0].matches);

        let ctx = DlContext::for_form(Form::GL, 3).unwrap();
        let r = ctx.positivity_report(ctx.group().generator(0), Mode::AtV1).unwrap();
        assert_eq!(r.sign, Some(-1));
        let got: Vec<_> = r.combo.support().map(|(l, c)| (l.to_string(), c.eval_one())).collect();
        assert_eq!(got, vec![("1,1,1".to_string(), BigInt::from(-2)), ("2,1".to_string(), BigInt::from(-2))]);
    }

    #[test]
    fn w0_gives_steinberg_only() {
        for n in 2..=5 {
            let ctx = DlContext::for_form(Form::GL, n).unwrap();
            let r = ctx.positivity_report(ctx.group().longest(), Mode::AtV1).unwrap();
            let support: Vec<_> = r.combo.support().map(|(l, _)| l.clone()).collect();
            assert_eq!(support, vec![Partition::column(n)]);
        }
    }

    #[test]
    fn su3_subregular() {
        let r = subreg_check(3).unwrap();
        let got: Vec<_> = r.combo.support().map(|(l, c)| (l.to_string(), c.eval_one())).collect();
        assert_eq!(got, vec![("1,1,1".into(), BigInt::from(4)), ("2,1".into(), BigInt::from(2))]);
        assert_eq!(r.sign, Some(1));
        assert!(r.pass);
        assert!(subreg_check(2).is_err());
    }

    #[test]
    fn lemma_small() {
        let r = lemma_check(3).unwrap();
        assert!(r.at_v1_holds && r.inverse_power_holds);
        assert!(!r.printed_exponent_holds);
    }

    #[test]
    fn grouping() {
        let ctx = DlContext::for_form(Form::GL, 2).unwrap();
        let r = ctx.positivity_report(ctx.group().generator(0), Mode::Graded).unwrap();
        assert_eq!(eigenvalue_grouping(&r.combo, 1).unwrap().keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(eigenvalue_grouping(&r.combo, 2).unwrap().keys().copied().collect::<Vec<_>>(), vec![1, 3]);
        let zero = UnipotentCombo {
            form: Form::GL,
            coeffs: Coords::new(),
            global_sign: None,
        };
        assert!(eigenvalue_grouping(&zero, 3).unwrap().is_empty());
        assert!(eigenvalue_grouping(&zero, 0).is_err());
    }

    #[test]
    fn triangular_small() {
        let r = triangularity_report(3).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.blocks.len(), 3);
        assert_eq!(r.blocks[0].label, Partition::column(3));
    }

    #[test]
    fn unsupported_combinations() {
        let su = DlContext::for_form(Form::SU, 3).unwrap();
        let w = su.group().generator(0);
        assert!(su.q_coordinates(w, Basis::C, Mode::Graded, 0).is_err());
        let v = su.q_coordinates(w, Basis::C, Mode::AtV1, 0).unwrap();
        assert!(unipotent_decomposition(&v, Form::GL).is_err());
        assert!(DlContext::new(GroupDatum::new(crate::coxeter::CoxeterType::B, 2).unwrap()).is_err());
    }
}
