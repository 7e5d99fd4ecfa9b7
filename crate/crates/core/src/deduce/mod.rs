//! Feasibility search for partially known decomposition matrices.
//!
//! A scenario gives a lower unitriangular matrix `D` (rows are ordinary
//! characters, columns are projective indecomposables) whose entries may be
//! affine in unknown integers, a vector `q` of ordinary multiplicities, and
//! linear constraints. Solving `D m = q` by forward substitution expresses
//! each projective multiplicity `m_k` as a polynomial in the unknowns; the
//! solver lists every integer assignment that keeps all `m_k >= 0` and
//! satisfies the constraints.

mod expr;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::JsonInt;

pub use expr::{parse_constraint, parse_expr, Cmp, Constraint, LinExpr};
pub use poly::{Ext, Interval, Poly};

pub const MAX_VARIABLES: usize = 12;
pub const DEFAULT_MAX_NODES: u64 = 50_000_000;

/// Search ranges. A variable without an explicit `[lo, hi]` ranges over
/// `[min, max]`; a missing `min` defaults to `-max`, so unknowns are not
/// assumed nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bounds {
    pub min: Option<BigInt>,
    pub max: Option<BigInt>,
    pub explicit: BTreeMap<String, (BigInt, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub labels: Vec<String>,
    pub qvector: Vec<BigInt>,
    /// `matrix[k][j]`: multiplicity of label `k` in projective `j`.
    pub matrix: Vec<Vec<LinExpr>>,
    pub constraints: Vec<Constraint>,
    pub bounds: Bounds,
    /// Sorted.
    pub variables: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    labels: Vec<String>,
    qvector: Vec<JsonInt>,
    columns: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    constraints: Vec<String>,
    #[serde(default)]
    bounds: BTreeMap<String, serde_json::Value>,
}

fn scenario_err(msg: impl Into<String>) -> Error {
    Error::Scenario(msg.into())
}

fn json_int(v: &serde_json::Value, what: &str) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| scenario_err(format!("{what}: {n} is not an integer"))),
        serde_json::Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| scenario_err(format!("{what}: {s:?} is not an integer"))),
        other => Err(scenario_err(format!("{what}: expected an integer, got {other}"))),
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text)?;
    let n = raw.labels.len();
    if n == 0 {
        return Err(scenario_err("no labels"));
    }
    if raw.qvector.len() != n {
        return Err(scenario_err(format!("qvector has {} entries for {n} labels", raw.qvector.len())));
    }
    if raw.columns.len() != n {
        return Err(scenario_err(format!("matrix has {} rows for {n} labels", raw.columns.len())));
    }
    let mut matrix = Vec::with_capacity(n);
    for (k, row) in raw.columns.iter().enumerate() {
        if row.len() != n {
            return Err(scenario_err(format!("row {k} has {} entries, expected {n}", row.len())));
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let item = format!("columns[{k}][{j}]");
            let e = match cell {
                serde_json::Value::String(s) => parse_expr(&item, s)?,
                other => LinExpr::constant(json_int(other, &item)?),
            };
            let fixed = match j.cmp(&k) {
                std::cmp::Ordering::Equal => Some(BigInt::one()),
                std::cmp::Ordering::Greater => Some(BigInt::zero()),
                std::cmp::Ordering::Less => None,
            };
            if let Some(want) = fixed {
                if e.as_constant() != Some(&want) {
                    return Err(scenario_err(format!(
                        "{item} = {e}: the matrix must be lower unitriangular"
                    )));
                }
            }
            parsed.push(e);
        }
        matrix.push(parsed);
    }

    let mut bounds = Bounds::default();
    for (key, v) in &raw.bounds {
        match key.as_str() {
            "min" => bounds.min = Some(json_int(v, "bounds.min")?),
            "max" => bounds.max = Some(json_int(v, "bounds.max")?),
            var => {
                let pair = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| scenario_err(format!("bounds.{var}: expected [lo, hi]")))?;
                let lo = json_int(&pair[0], &format!("bounds.{var}"))?;
                let hi = json_int(&pair[1], &format!("bounds.{var}"))?;
                bounds.explicit.insert(var.to_string(), (lo, hi));
            }
        }
    }

    let constraints = raw
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| parse_constraint(&format!("constraints[{i}]"), c))
        .collect::<Result<Vec<_>>>()?;

    let mut known: BTreeSet<String> = BTreeSet::new();
    for e in matrix.iter().flatten() {
        known.extend(e.variables().map(str::to_string));
    }
    known.extend(bounds.explicit.keys().cloned());
    for (i, c) in constraints.iter().enumerate() {
        if let Some(v) = c.expr.variables().find(|v| !known.contains(*v)) {
            return Err(scenario_err(format!(
                "constraints[{i}] ({}) uses unknown variable {v}",
                c.text
            )));
        }
    }

    Ok(Scenario {
        labels: raw.labels,
        qvector: raw.qvector.into_iter().map(|x| x.0).collect(),
        matrix,
        constraints,
        bounds,
        variables: known.into_iter().collect(),
    })
}

impl Scenario {
    /// A copy with constraint `i` removed.
    pub fn without_constraint(&self, i: usize) -> Scenario {
        let mut s = self.clone();
        s.constraints.remove(i);
        s
    }

    /// Forward substitution `m_k = q_k - Σ_{j<k} D[k][j] m_j`.
    pub fn multiplicities(&self) -> Vec<Poly> {
        let nv = self.variables.len();
        let mut out: Vec<Poly> = Vec::with_capacity(self.labels.len());
        for (k, row) in self.matrix.iter().enumerate() {
            let mut m = Poly::constant(self.qvector[k].clone(), nv);
            for (j, e) in row.iter().enumerate().take(k) {
                m = m.sub(&Poly::from_lin(e, &self.variables).mul(&out[j]));
            }
            out.push(m);
        }
        out
    }

    /// `D m - q`, row by row; all zero when the substitution is right.
    pub fn residual(&self, mult: &[Poly]) -> Vec<Poly> {
        let nv = self.variables.len();
        self.matrix
            .iter()
            .zip(&self.qvector)
            .map(|(row, q)| {
                row.iter()
                    .zip(mult)
                    .fold(Poly::constant(-q, nv), |acc, (e, m)| {
                        acc.add_poly(&Poly::from_lin(e, &self.variables).mul(m))
                    })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Solution {
    pub assignment: BTreeMap<String, JsonInt>,
    pub multiplicities: Vec<JsonInt>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibleSet {
    pub labels: Vec<String>,
    pub variables: Vec<String>,
    /// `m_k` as polynomials in the variables.
    pub multiplicity_expressions: Vec<String>,
    /// Search box after propagation, `[lo, hi]` per variable.
    pub bounds: BTreeMap<String, (JsonInt, JsonInt)>,
    pub solutions: Vec<Solution>,
}

impl FeasibleSet {
    pub fn assignments(&self) -> Vec<Vec<BigInt>> {
        self.solutions
            .iter()
            .map(|s| self.variables.iter().map(|v| s.assignment[v].0.clone()).collect())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Enumeration order; defaults to alphabetical.
    pub order: Option<Vec<String>>,
    pub max_nodes: u64,
    /// Stop after this many solutions (the lexicographically first ones).
    pub max_solutions: Option<usize>,
    pub max_variables: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            order: None,
            max_nodes: DEFAULT_MAX_NODES,
            max_solutions: None,
            max_variables: MAX_VARIABLES,
        }
    }
}

pub fn solve(s: &Scenario) -> Result<FeasibleSet> {
    solve_with(s, &SolveOptions::default())
}

/// Everything that must be `>= 0`.
struct Requirement {
    poly: Poly,
}

pub fn solve_with(s: &Scenario, opts: &SolveOptions) -> Result<FeasibleSet> {
    let nv = s.variables.len();
    if nv > opts.max_variables {
        return Err(Error::SizeGuard {
            what: "scenario variables",
            size: nv as u128,
            limit: opts.max_variables as u128,
        });
    }
    let mult = s.multiplicities();
    if s.residual(&mult).iter().any(|r| !r.is_zero()) {
        return Err(Error::Internal("back-substitution does not reproduce the q-vector".into()));
    }

    let mut reqs: Vec<Requirement> = mult.iter().map(|m| Requirement { poly: m.clone() }).collect();
    for c in &s.constraints {
        let p = Poly::from_lin(&c.expr, &s.variables);
        let zero = Poly::default();
        match c.cmp {
            Cmp::Ge => reqs.push(Requirement { poly: p }),
            Cmp::Le => reqs.push(Requirement { poly: zero.sub(&p) }),
            Cmp::Eq => {
                reqs.push(Requirement { poly: zero.sub(&p) });
                reqs.push(Requirement { poly: p });
            }
        }
    }

    let mut dom: Vec<Interval> = s
        .variables
        .iter()
        .map(|v| match s.bounds.explicit.get(v) {
            Some((lo, hi)) => Interval::new(Ext::Fin(lo.clone()), Ext::Fin(hi.clone())),
            None => Interval::new(
                match (&s.bounds.min, &s.bounds.max) {
                    (Some(lo), _) => Ext::Fin(lo.clone()),
                    (None, Some(hi)) => Ext::Fin(-hi),
                    (None, None) => Ext::NegInf,
                },
                s.bounds.max.clone().map_or(Ext::PosInf, Ext::Fin),
            ),
        })
        .collect();
    let feasible = propagate(&reqs, &mut dom, 200);
    if let Some(i) = dom.iter().position(|d| d.hi == Ext::PosInf || d.lo == Ext::NegInf) {
        if feasible {
            return Err(Error::Unbounded(format!(
                "no finite range derivable for {}; give one under \"bounds\"",
                s.variables[i]
            )));
        }
    }

    let order: Vec<usize> = match &opts.order {
        None => (0..nv).collect(),
        Some(names) => {
            let idx: Vec<usize> = names
                .iter()
                .map(|n| {
                    s.variables
                        .iter()
                        .position(|v| v == n)
                        .ok_or_else(|| scenario_err(format!("unknown variable {n} in order")))
                })
                .collect::<Result<_>>()?;
            let distinct: BTreeSet<usize> = idx.iter().copied().collect();
            if distinct.len() != nv || idx.len() != nv {
                return Err(scenario_err("order must list every variable once"));
            }
            idx
        }
    };

    let nodes = AtomicU64::new(0);
    let limits = Limits {
        nodes: &nodes,
        max_nodes: opts.max_nodes,
        max_solutions: opts.max_solutions.unwrap_or(usize::MAX),
    };
    let mut points: Vec<Vec<BigInt>> = if !feasible {
        Vec::new()
    } else if nv == 0 {
        if reqs.iter().all(|r| !r.poly.eval(&[]).is_negative()) {
            vec![Vec::new()]
        } else {
            Vec::new()
        }
    } else if opts.max_solutions.is_some() || opts.order.is_some() {
        let mut found = Vec::new();
        search(&reqs, &order, 0, &dom, &mut found, &limits)?;
        found
    } else {
        let first = order[0];
        let (lo, hi) = finite(&dom[first]);
        let values: Vec<BigInt> = range(&lo, &hi).collect();
        let chunks = values
            .par_iter()
            .map(|x| {
                let mut d = dom.clone();
                d[first] = Interval::point(x.clone());
                let mut found = Vec::new();
                search(&reqs, &order, 1, &d, &mut found, &limits)?;
                Ok(found)
            })
            .collect::<Result<Vec<_>>>()?;
        chunks.into_iter().flatten().collect()
    };
    points.sort();

    let solutions = points
        .iter()
        .map(|p| Solution {
            assignment: s.variables.iter().cloned().zip(p.iter().cloned().map(JsonInt)).collect(),
            multiplicities: mult.iter().map(|m| JsonInt(m.eval(p))).collect(),
        })
        .collect();
    Ok(FeasibleSet {
        labels: s.labels.clone(),
        variables: s.variables.clone(),
        multiplicity_expressions: mult.iter().map(|m| m.display(&s.variables)).collect(),
        bounds: s
            .variables
            .iter()
            .zip(&dom)
            .map(|(v, d)| {
                let (lo, hi) = if feasible {
                    finite(d)
                } else {
                    (BigInt::one(), BigInt::zero())
                };
                (v.clone(), (JsonInt(lo), JsonInt(hi)))
            })
            .collect(),
        solutions,
    })
}

fn finite(d: &Interval) -> (BigInt, BigInt) {
    match (&d.lo, &d.hi) {
        (Ext::Fin(a), Ext::Fin(b)) => (a.clone(), b.clone()),
        _ => unreachable!("search box is finite"),
    }
}

fn range(lo: &BigInt, hi: &BigInt) -> impl Iterator<Item = BigInt> {
    let lo = lo.clone();
    let count = (hi - &lo + 1u32).to_u64().unwrap_or(0);
    (0..count).map(move |i| &lo + i)
}

/// Tightens `dom` from requirements that are linear in some variable;
/// returns `false` if some domain becomes empty.
fn propagate(reqs: &[Requirement], dom: &mut [Interval], rounds: usize) -> bool {
    for _ in 0..rounds {
        let mut changed = false;
        for r in reqs {
            for x in 0..dom.len() {
                let Some((a, b)) = r.poly.split_linear(x) else {
                    continue;
                };
                if a.is_zero() {
                    continue;
                }
                let ra = a.range(dom);
                let rb = b.range(dom);
                let Ext::Fin(bhi) = &rb.hi else {
                    continue;
                };
                if ra.hi < Ext::Fin(BigInt::zero()) {
                    // x * a + b >= 0 with a < 0
                    let Ext::Fin(ahi) = &ra.hi else { unreachable!() };
                    let ub = if !bhi.is_negative() {
                        poly::floor_div(bhi, &-ahi)
                    } else if let Ext::Fin(alo) = &ra.lo {
                        poly::floor_div(bhi, &-alo)
                    } else {
                        -BigInt::one()
                    };
                    if Ext::Fin(ub.clone()) < dom[x].hi {
                        dom[x].hi = Ext::Fin(ub);
                        changed = true;
                    }
                } else if ra.lo > Ext::Fin(BigInt::zero()) {
                    // x * a >= -b >= -bhi with a > 0
                    let c = -bhi;
                    let Ext::Fin(alo) = &ra.lo else { unreachable!() };
                    let lb = if !c.is_positive() {
                        poly::ceil_div(&c, alo)
                    } else if let Ext::Fin(ahi) = &ra.hi {
                        poly::ceil_div(&c, ahi)
                    } else {
                        BigInt::one()
                    };
                    if Ext::Fin(lb.clone()) > dom[x].lo {
                        dom[x].lo = Ext::Fin(lb);
                        changed = true;
                    }
                }
                if dom[x].is_empty() {
                    return false;
                }
            }
        }
        if !changed {
            break;
        }
    }
    true
}

struct Limits<'a> {
    nodes: &'a AtomicU64,
    max_nodes: u64,
    max_solutions: usize,
}

/// Depth-first enumeration in `order`, tightening the box at every node.
/// Solutions are pushed in lexicographic order of `order`.
fn search(
    reqs: &[Requirement],
    order: &[usize],
    depth: usize,
    dom: &[Interval],
    found: &mut Vec<Vec<BigInt>>,
    limits: &Limits<'_>,
) -> Result<()> {
    if found.len() >= limits.max_solutions {
        return Ok(());
    }
    if limits.nodes.fetch_add(1, Ordering::Relaxed) >= limits.max_nodes {
        return Err(Error::SizeGuard {
            what: "search nodes",
            size: limits.max_nodes as u128 + 1,
            limit: limits.max_nodes as u128,
        });
    }
    let mut dom = dom.to_vec();
    if !propagate(reqs, &mut dom, 4) {
        return Ok(());
    }
    if reqs.iter().any(|r| r.poly.range(&dom).hi < Ext::Fin(BigInt::zero())) {
        return Ok(());
    }
    if depth == order.len() {
        let point: Vec<BigInt> = dom.iter().map(|d| finite(d).0).collect();
        if reqs.iter().all(|r| !r.poly.eval(&point).is_negative()) {
            found.push(point);
        }
        return Ok(());
    }
    let x = order[depth];
    let (lo, hi) = finite(&dom[x]);
    if depth + 1 == order.len() {
        let mut point: Vec<BigInt> = dom.iter().map(|d| finite(d).0).collect();
        for val in range(&lo, &hi) {
            point[x] = val;
            if reqs.iter().all(|r| !r.poly.eval(&point).is_negative()) {
                found.push(point.clone());
                if found.len() >= limits.max_solutions {
                    break;
                }
            }
        }
        return Ok(());
    }
    for val in range(&lo, &hi) {
        dom[x] = Interval::point(val);
        search(reqs, order, depth + 1, &dom, found, limits)?;
        if found.len() >= limits.max_solutions {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const F4: &str = include_str!("../../fixtures/f4.json");

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn f4_fixture() {
        let s = parse_scenario(F4).unwrap();
        assert_eq!(s.labels.len(), 5);
        assert_eq!(s.variables, vec!["f", "g", "h", "i", "j"]);
        let set = solve(&s).unwrap();
        assert_eq!(set.assignments(), vec![ints(&[2, 3, 2, 2, 4])]);
        let m: Vec<BigInt> = set.solutions[0].multiplicities.iter().map(|x| x.0.clone()).collect();
        assert_eq!(m, ints(&[32, 40, 40, 8, 0]));
        assert_eq!(set.multiplicity_expressions[3], "72 - 32*f");
        let opts = SolveOptions {
            max_solutions: Some(2),
            ..Default::default()
        };
        for i in 0..s.constraints.len() {
            let looser = solve_with(&s.without_constraint(i), &opts).unwrap();
            assert_eq!(looser.solutions.len(), 2, "dropping {}", s.constraints[i].text);
        }
    }

    #[test]
    fn order_does_not_matter() {
        let s = parse_scenario(F4).unwrap();
        let mut rev = s.clone();
        rev.constraints.remove(0);
        let a = solve(&rev).unwrap();
        let opts = SolveOptions {
            order: Some(vec!["j".into(), "i".into(), "h".into(), "g".into(), "f".into()]),
            ..Default::default()
        };
        let b = solve_with(&rev, &opts).unwrap();
        assert_eq!(a.solutions, b.solutions);
    }

    #[test]
    fn identity_without_variables() {
        let s = parse_scenario(r#"{"labels":["a","b"],"qvector":[3,1],"columns":[["1","0"],[0,1]]}"#).unwrap();
        assert!(s.variables.is_empty());
        let set = solve(&s).unwrap();
        assert_eq!(set.solutions.len(), 1);
        assert_eq!(set.solutions[0].multiplicities, vec![JsonInt(3.into()), JsonInt(1.into())]);
        let bad = parse_scenario(r#"{"labels":["a","b"],"qvector":[1,0],"columns":[["1","0"],[2,1]]}"#).unwrap();
        assert!(solve(&bad).unwrap().solutions.is_empty());
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_syntax = F4.replace("g>=4*f-5", "g>=4f-5");
        assert!(matches!(parse_scenario(&bad_syntax), Err(Error::Syntax { .. })));
        let unknown = F4.replace("j>=4", "k>=4");
        assert!(matches!(parse_scenario(&unknown), Err(Error::Scenario(_))));
        let not_tri = r#"{"labels":["a","b"],"qvector":[1,1],"columns":[["1","x"],["0","1"]]}"#;
        assert!(matches!(parse_scenario(not_tri), Err(Error::Scenario(_))));
        let short = r#"{"labels":["a","b"],"qvector":[1],"columns":[["1","0"],["0","1"]]}"#;
        assert!(parse_scenario(short).is_err());
    }

    #[test]
    fn unbounded_is_reported() {
        let s = parse_scenario(r#"{"labels":["a","b"],"qvector":[1,5],"columns":[["1","0"],["x","1"]],"constraints":["x<=0-1"],"bounds":{"min":-1000}}"#);
        // x <= -1 and 5 - x >= 0 leaves x in [-1000, -1]: bounded.
        assert_eq!(solve(&s.unwrap()).unwrap().solutions.len(), 1000);
        let s = parse_scenario(r#"{"labels":["a","b"],"qvector":[1,5],"columns":[["1","0"],["0","1"]],"bounds":{}, "constraints":[]}"#).unwrap();
        assert!(solve(&s).unwrap().variables.is_empty());
        let s = parse_scenario(r#"{"labels":["a","b"],"qvector":[0,5],"columns":[["1","0"],["x","1"]]}"#).unwrap();
        assert!(matches!(solve(&s), Err(Error::Unbounded(_))));
    }
}
