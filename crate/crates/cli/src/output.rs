//! JSON schemas of every subcommand, plus their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use klq_core::{JsonInt, LaurentPoly, Partition};
use serde::{Deserialize, Serialize};

pub trait Render {
    fn text(&self) -> String;
}

fn word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn sign(s: Option<i8>) -> String {
    s.map_or("-".into(), |s| format!("{s:+}"))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(header.iter().map(ToString::to_string).collect(), &mut out);
    for r in rows {
        line(r.clone(), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementInfo {
    pub w: Vec<usize>,
    pub length: usize,
    pub left_descents: Vec<usize>,
    pub right_descents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupOut {
    pub group: String,
    pub rank: usize,
    pub order: u64,
    pub num_positive_roots: usize,
    pub longest: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<ElementInfo>>,
}

impl Render for GroupOut {
    fn text(&self) -> String {
        let mut out = format!(
            "{}: rank {}, order {}, {} positive roots\nw0 = {}\n",
            self.group,
            self.rank,
            self.order,
            self.num_positive_roots,
            word(&self.longest)
        );
        let rows: Vec<Vec<String>> = self
            .element
            .iter()
            .chain(self.elements.iter().flatten())
            .map(|e| {
                vec![
                    word(&e.w),
                    e.length.to_string(),
                    word(&e.left_descents),
                    word(&e.right_descents),
                ]
            })
            .collect();
        if !rows.is_empty() {
            out += &table(&["w", "length", "left descents", "right descents"], &rows);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub x: Vec<usize>,
    pub coeff: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub x: Vec<usize>,
    pub h: LaurentPoly,
    pub mu: JsonInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KlOut {
    pub group: String,
    pub w: Vec<usize>,
    pub basis: String,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<Coefficient>,
}

impl Render for KlOut {
    fn text(&self) -> String {
        let mut out = format!("{} in {}, w = {}\n", self.basis, self.group, word(&self.w));
        let rows: Vec<Vec<String>> = self.terms.iter().map(|t| vec![word(&t.x), t.coeff.to_string()]).collect();
        out += &table(&["x", "coefficient of t_x"], &rows);
        if let Some(c) = &self.coefficient {
            writeln!(out, "h(x = {}) = {}, mu = {}", word(&c.x), c.h, c.mu.0).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellBlock {
    pub elements: Vec<Vec<usize>>,
    pub a: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellsOut {
    pub group: String,
    pub kind: String,
    pub blocks: Vec<CellBlock>,
    /// `[i, j]` for every pair of distinct blocks with block `i <=` block `j`.
    pub order: Vec<(usize, usize)>,
}

impl Render for CellsOut {
    fn text(&self) -> String {
        let mut out = format!("{} {} cells of {}\n", self.blocks.len(), self.kind, self.group);
        let rows: Vec<Vec<String>> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let geq: Vec<String> = self
                    .order
                    .iter()
                    .filter(|(lo, _)| *lo == i)
                    .map(|(_, hi)| hi.to_string())
                    .collect();
                vec![
                    i.to_string(),
                    b.elements.len().to_string(),
                    b.a.map_or("-".into(), |a| a.to_string()),
                    geq.join(","),
                    b.elements.iter().map(|w| format!("[{}]", word(w))).collect::<Vec<_>>().join(" "),
                ]
            })
            .collect();
        out += &table(&["cell", "size", "a", "<= cells", "elements"], &rows);
        out
    }
}

pub type Coords = BTreeMap<Partition, LaurentPoly>;

fn coords_rows(coords: &Coords) -> Vec<Vec<String>> {
    coords.iter().map(|(l, c)| vec![l.to_string(), c.to_string()]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QwOut {
    pub group: String,
    pub form: String,
    pub w: Vec<usize>,
    pub basis: String,
    pub mode: String,
    pub shift: i32,
    /// Almost-character coordinates.
    pub coords: Coords,
    /// The same class on unipotent characters.
    pub unipotent: Coords,
    pub sign: Option<i8>,
    pub pass: bool,
}

impl Render for QwOut {
    fn text(&self) -> String {
        let mut out = format!(
            "{} {}, w = {}, basis {}, {}, shift {}\n",
            self.form,
            self.group,
            word(&self.w),
            self.basis,
            self.mode,
            self.shift
        );
        let rows: Vec<Vec<String>> = self
            .coords
            .iter()
            .map(|(l, c)| vec![l.to_string(), c.to_string(), self.unipotent[l].to_string()])
            .collect();
        out += &table(&["label", "almost character", "unipotent"], &rows);
        writeln!(out, "sign {}, {}", sign(self.sign), if self.pass { "nonnegative" } else { "mixed" }).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub convention: String,
    pub a: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityRow {
    pub w: Vec<usize>,
    pub shape: Partition,
    pub sign: Option<i8>,
    pub pass: bool,
    pub coeffs: Coords,
    pub a_candidates: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityOut {
    pub form: String,
    pub n: usize,
    pub mode: String,
    pub reports: Vec<PositivityRow>,
    pub pass: bool,
}

impl Render for PositivityOut {
    fn text(&self) -> String {
        let mut out = format!("positivity of Q_w for {}_{} ({})\n", self.form, self.n, self.mode);
        let names: Vec<String> = self
            .reports
            .first()
            .map(|r| r.a_candidates.iter().map(|c| format!("sign=(-1)^{}", c.convention)).collect())
            .unwrap_or_default();
        let mut header = vec!["w", "shape", "sign", "pass"];
        header.extend(names.iter().map(String::as_str));
        header.push("combination");
        let rows: Vec<Vec<String>> = self
            .reports
            .iter()
            .map(|r| {
                let mut row = vec![word(&r.w), r.shape.to_string(), sign(r.sign), r.pass.to_string()];
                row.extend(r.a_candidates.iter().map(|c| c.matches.to_string()));
                row.push(
                    r.coeffs
                        .iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(l, c)| format!("({c})ρ[{l}]"))
                        .collect::<Vec<_>>()
                        .join(" + "),
                );
                row
            })
            .collect();
        out += &table(&header, &rows);
        writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubregOut {
    pub n: usize,
    pub w: Vec<usize>,
    pub coeffs: Coords,
    pub scale: JsonInt,
    pub sign: Option<i8>,
    pub expected_sign: i8,
    pub sign_matches: bool,
    pub pass: bool,
}

impl Render for SubregOut {
    fn text(&self) -> String {
        let mut out = format!("SU_{}: Q_w for w = {}, divided by {}\n", self.n, word(&self.w), self.scale.0);
        out += &table(&["label", "coefficient"], &coords_rows(&self.coeffs));
        writeln!(
            out,
            "sign {} (expected {:+}): {}",
            sign(self.sign),
            self.expected_sign,
            if self.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaOut {
    pub n: usize,
    pub at_v1_holds: bool,
    pub inverse_power_holds: bool,
    pub printed_exponent: i32,
    pub printed_exponent_holds: bool,
    pub pass: bool,
}

impl Render for LemmaOut {
    fn text(&self) -> String {
        format!(
            "n = {}\nat v=1: {}\nwith v^-1: {}\nwith v^{}: {}\n{}\n",
            self.n,
            self.at_v1_holds,
            self.inverse_power_holds,
            self.printed_exponent,
            self.printed_exponent_holds,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockOut {
    pub label: Partition,
    pub elements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangularOut {
    pub n: usize,
    pub bijection: Option<String>,
    pub blocks: Vec<BlockOut>,
    pub triangular: bool,
    pub diagonal_nonzero: bool,
    pub span_ok: bool,
    pub rank: usize,
    pub pass: bool,
}

impl Render for TriangularOut {
    fn text(&self) -> String {
        let mut out = format!(
            "S_{}: labels matched to cells by {}\n",
            self.n,
            self.bijection.as_deref().unwrap_or("nothing")
        );
        let rows: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| vec![b.label.to_string(), b.elements.to_string()])
            .collect();
        out += &table(&["label", "cell size"], &rows);
        writeln!(
            out,
            "triangular {}, diagonal nonzero {}, spans {}, rank {}: {}",
            self.triangular,
            self.diagonal_nonzero,
            self.span_ok,
            self.rank,
            if self.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionOut {
    pub assignment: BTreeMap<String, JsonInt>,
    pub multiplicities: Vec<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeduceOut {
    pub labels: Vec<String>,
    pub variables: Vec<String>,
    pub multiplicity_expressions: Vec<String>,
    pub bounds: BTreeMap<String, (JsonInt, JsonInt)>,
    pub solutions: Vec<SolutionOut>,
    /// True when enumeration stopped at `--max-solutions`.
    pub truncated: bool,
}

impl Render for DeduceOut {
    fn text(&self) -> String {
        let mut out = String::new();
        let rows: Vec<Vec<String>> = self
            .labels
            .iter()
            .zip(&self.multiplicity_expressions)
            .map(|(l, m)| vec![l.clone(), m.clone()])
            .collect();
        out += &table(&["label", "multiplicity"], &rows);
        let bounds: Vec<String> = self.bounds.iter().map(|(v, (lo, hi))| format!("{v} in [{}, {}]", lo.0, hi.0)).collect();
        writeln!(out, "search box: {}", bounds.join(", ")).unwrap();
        let mut header: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        header.push("multiplicities");
        let rows: Vec<Vec<String>> = self
            .solutions
            .iter()
            .map(|s| {
                let mut row: Vec<String> = self.variables.iter().map(|v| s.assignment[v].0.to_string()).collect();
                row.push(s.multiplicities.iter().map(|m| m.0.to_string()).collect::<Vec<_>>().join(","));
                row
            })
            .collect();
        writeln!(
            out,
            "{} feasible assignment(s){}",
            self.solutions.len(),
            if self.truncated { " (truncated)" } else { "" }
        )
        .unwrap();
        out += &table(&header, &rows);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheOut {
    pub action: String,
    pub path: String,
    pub group: String,
    pub entries: usize,
}

impl Render for CacheOut {
    fn text(&self) -> String {
        format!("{} {} entries for {} ({})\n", self.action, self.entries, self.group, self.path)
    }
}
