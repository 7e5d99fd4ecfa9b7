//! Line-oriented JSON cache of a [`KlTable`].
//!
//! Line 1 is a header naming the group and the quadratic-relation convention;
//! each further line holds one expansion `C'_w = Σ h_{x,w} t_x` with elements
//! written as reduced words. Loading re-validates every entry.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coxeter::{Elem, GroupDatum};
use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::kl::KlTable;
use crate::laurent::LaurentPoly;

pub const FORMAT: &str = "klq-cache";
pub const VERSION: u32 = 1;
pub const CONVENTION: &str = "(t_s+v)(t_s-1/v)=0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format: String,
    pub version: u32,
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub convention: String,
}

impl CacheHeader {
    pub fn for_datum(datum: &GroupDatum) -> Self {
        CacheHeader {
            format: FORMAT.to_string(),
            version: VERSION,
            ty: datum.ty.to_string(),
            rank: datum.rank,
            convention: CONVENTION.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    w: Vec<usize>,
    h: Vec<(Vec<usize>, LaurentPoly)>,
}

/// `<dir>/klq-<type><rank>.jsonl`.
pub fn default_path(dir: &Path, datum: &GroupDatum) -> PathBuf {
    dir.join(format!("klq-{}{}.jsonl", datum.ty, datum.rank))
}

/// Writes every computed entry, in id order.
pub fn save<W: Write>(table: &KlTable, mut out: W) -> Result<()> {
    let g = table.group();
    serde_json::to_writer(&mut out, &CacheHeader::for_datum(g.datum()))?;
    writeln!(out)?;
    for (w, h) in table.computed() {
        let entry = CacheEntry {
            w: g.reduced_word(w),
            h: h.iter().map(|(x, c)| (g.reduced_word(x), c.clone())).collect(),
        };
        serde_json::to_writer(&mut out, &entry)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_to_path(table: &KlTable, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    save(table, BufWriter::new(File::create(path)?))
}

/// Loads entries into `table`, returning how many were read.
///
/// Rejects a header for a different group or convention, unparsable lines,
/// words that are not reduced, and expansions that are not bar-invariant or
/// not unitriangular with positive-degree off-diagonal coefficients.
pub fn load<R: Read>(table: &KlTable, input: R) -> Result<usize> {
    let g = table.group().clone();
    let hecke = table.hecke().clone();
    let mut lines = BufReader::new(input).lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::CacheHeader("empty cache file".into()))??;
    let header: CacheHeader = serde_json::from_str(&header_line)
        .map_err(|e| Error::CacheLine { line: 1, msg: e.to_string() })?;
    let expected = CacheHeader::for_datum(g.datum());
    if header != expected {
        return Err(Error::CacheHeader(format!(
            "file has {}{} ({}, v{}), table is {}{} ({}, v{})",
            header.ty, header.rank, header.convention, header.version, expected.ty, expected.rank, expected.convention, expected.version
        )));
    }

    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| Error::CacheLine { line: lineno, msg };
        let entry: CacheEntry = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let w = reduced_element(&g, &entry.w).map_err(bad)?;
        let mut h = HeckeElt::zero();
        for (xw, c) in &entry.h {
            let x = reduced_element(&g, xw).map_err(bad)?;
            if h.get(x).is_some() {
                return Err(bad(format!("duplicate term {xw:?}")));
            }
            h.add_term(x, c);
        }
        if !hecke.is_bar_invariant(&h) {
            return Err(bad(format!("expansion of {:?} is not bar-invariant", entry.w)));
        }
        for (x, c) in h.iter() {
            let ok = if x == w {
                c.is_one()
            } else {
                g.bruhat_leq(x, w) && c.min_exp().is_some_and(|e| e > 0)
            };
            if !ok {
                return Err(bad(format!(
                    "coefficient of {:?} in the expansion of {:?} violates the degree bound",
                    g.reduced_word(x),
                    entry.w
                )));
            }
        }
        if h.get(w).is_none() {
            return Err(bad(format!("expansion of {:?} lacks its leading term", entry.w)));
        }
        table.insert(w, h).map_err(|e| bad(e.to_string()))?;
        count += 1;
    }
    Ok(count)
}

pub fn load_from_path(table: &KlTable, path: &Path) -> Result<usize> {
    load(table, File::open(path)?)
}

fn reduced_element(g: &crate::coxeter::GroupTable, word: &[usize]) -> std::result::Result<Elem, String> {
    let w = g.element_of(word).map_err(|e| e.to_string())?;
    if g.length(w) != word.len() {
        return Err(format!("word {word:?} is not reduced"));
    }
    Ok(w)
}
