//! The `klq` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success or pass, 1 a check failed, 2 usage or input
//! error, 3 a resource guard tripped.

pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klq_core::cells::{a_value_type_a, a_values_brute_with_limit, DEFAULT_MAX_A_BRUTE, DEFAULT_MAX_CELL_GROUP};
use klq_core::coxeter::DEFAULT_MAX_ORDER;
use klq_core::deduce::{parse_scenario, solve_with, SolveOptions, DEFAULT_MAX_NODES, MAX_VARIABLES};
use klq_core::dl::{lemma_check, subreg_check, triangularity_report, unipotent_decomposition, PositivityReport};
use klq_core::kl::DEFAULT_MAX_INTERVAL;
use klq_core::{
    cache, Basis, CellKind, Cells, CoxeterType, DlContext, Elem, Error, Form, GroupDatum, GroupTable, HeckeElt, JsonInt,
    KlTable, Mode, Twist,
};
use output::*;

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "klq", version, about = "Kazhdan-Lusztig data and Q_w characters for finite Weyl groups")]
pub struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    /// Directory holding KL caches, read when present.
    #[arg(long, global = true, env = "KLQ_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(flatten)]
    limits: Limits,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Limits {
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER as u64)]
    max_order: u64,
    /// Largest Bruhat interval for a single KL element.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INTERVAL)]
    max_interval: usize,
    /// Largest group for cell computations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELL_GROUP)]
    max_cell_group: usize,
    /// Largest group for brute-force a-values.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_A_BRUTE)]
    max_a_brute: usize,
    /// Most unknowns in a deduction scenario.
    #[arg(long, global = true, default_value_t = MAX_VARIABLES)]
    max_variables: usize,
    /// Most search nodes in a deduction.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group order, longest element and element data.
    Group {
        #[command(flatten)]
        group: GroupArgs,
        /// An element to describe.
        #[arg(long)]
        w: Option<String>,
        /// List every element.
        #[arg(long)]
        all: bool,
    },
    /// Expansion of C'_w or C_w in the standard basis.
    Kl {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "Cprime")]
        basis: Basis,
        /// Also report h_{x,w} and mu(x,w).
        #[arg(long)]
        x: Option<String>,
    },
    /// Left, right or two-sided cells with a-values and their order.
    Cells {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "two-sided")]
        kind: KindArg,
    },
    /// Coordinates of Q_w on almost characters and unipotent characters.
    Qw {
        #[command(flatten)]
        target: FormArgs,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "C")]
        basis: Basis,
        #[command(flatten)]
        mode: ModeArgs,
        /// Power of v multiplied in: an integer, or `auto` for l(w).
        #[arg(long, default_value = "0")]
        shift: String,
    },
    /// Verification reports.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Enumerate feasible unknowns of a decomposition-matrix scenario.
    Deduce {
        /// Scenario JSON document.
        #[arg(long)]
        scenario: PathBuf,
        /// Comma-separated enumeration order of the variables.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Stop after this many solutions.
        #[arg(long)]
        max_solutions: Option<usize>,
    },
    /// Save or load a KL table.
    Cache {
        #[command(subcommand)]
        action: CacheCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Sign-uniform nonnegativity of Q_w on unipotent characters.
    Positivity {
        #[command(flatten)]
        target: FormArgs,
        /// A single element; omit with --all.
        #[arg(long, conflicts_with = "all")]
        w: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Q_{s1 w0} for SU_n against the hook and column characters.
    Subreg {
        #[arg(long)]
        n: usize,
    },
    /// Block triangularity of Q_w against two-sided cells.
    Triangular {
        #[arg(long)]
        n: usize,
    },
    /// C'_{s1 w0} against C'_{w0} and t_c C'_{w_I}.
    Lemma {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Compute the full table and write it.
    Save {
        #[command(flatten)]
        group: GroupArgs,
        /// Output file; defaults to a file in the cache directory.
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Read and validate a saved table.
    Load {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        path: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Coxeter type: A, B, D, F or G.
    #[arg(long = "type")]
    ty: CoxeterType,
    #[arg(long)]
    rank: usize,
}

impl GroupArgs {
    fn datum(&self) -> Result<GroupDatum, Error> {
        GroupDatum::new(self.ty, self.rank)
    }
}

#[derive(Args, Debug, Clone)]
struct FormArgs {
    #[arg(long, default_value = "GL")]
    form: Form,
    /// Rank of GL_n or SU_n.
    #[arg(long, required_unless_present = "rank")]
    n: Option<usize>,
    /// Coxeter type; only A is meaningful here.
    #[arg(long = "type", requires = "rank")]
    ty: Option<CoxeterType>,
    #[arg(long, conflicts_with = "n")]
    rank: Option<usize>,
}

impl FormArgs {
    fn datum(&self) -> Result<GroupDatum, Error> {
        let ty = self.ty.unwrap_or(CoxeterType::A);
        let n = match (self.n, self.rank) {
            (Some(n), _) => n,
            (None, Some(r)) => r + 1,
            (None, None) => unreachable!("clap requires one of --n, --rank"),
        };
        if ty != CoxeterType::A {
            return Err(Error::Unsupported(format!(
                "{} is only available for type A, got {ty}{}",
                self.form,
                n - 1
            )));
        }
        self.form.datum(n)
    }
}

#[derive(Args, Debug, Clone)]
struct ModeArgs {
    /// Keep the grading by powers of v.
    #[arg(long, conflicts_with = "at_v1")]
    graded: bool,
    /// Specialize at v = 1 (the default).
    #[arg(long)]
    at_v1: bool,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        if self.graded {
            Mode::Graded
        } else {
            Mode::AtV1
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Left,
    Right,
    TwoSided,
}

impl From<KindArg> for CellKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => CellKind::Left,
            KindArg::Right => CellKind::Right,
            KindArg::TwoSided => CellKind::TwoSided,
        }
    }
}

/// A rendered result and whether it counts as a pass.
struct Outcome {
    json: String,
    text: String,
    pass: bool,
}

fn outcome<T: serde::Serialize + Render>(value: &T, pass: bool) -> Result<Outcome, Error> {
    Ok(Outcome {
        json: serde_json::to_string_pretty(value)?,
        text: value.text(),
        pass,
    })
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = if cli.json {
                writeln!(stdout, "{}", out.json)
            } else {
                write!(stdout, "{}", out.text)
            };
            if out.pass {
                0
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let (kind, code) = classify(&e);
            eprintln!("error[{kind}]: {}", e.to_string().replace('\n', " "));
            code
        }
    }
}

fn classify(e: &Error) -> (&'static str, i32) {
    match e {
        _ if e.is_resource_guard() => ("guard", EXIT_GUARD),
        Error::Internal(_) => ("internal", EXIT_FAIL),
        _ => ("input", EXIT_USAGE),
    }
}

fn group_table(datum: GroupDatum, limits: &Limits) -> Result<Arc<GroupTable>, Error> {
    let split = GroupDatum {
        twist: Twist::None,
        ..datum
    };
    Ok(Arc::new(GroupTable::build_with_limit(split, limits.max_order as u128)?))
}

/// A KL table for `datum`, preloaded from the cache directory when a cache
/// file exists there.
fn kl_table(cli: &Cli, datum: GroupDatum) -> Result<Arc<KlTable>, Error> {
    let g = group_table(datum, &cli.limits)?;
    let kl = KlTable::for_group(g.clone()).with_max_interval(cli.limits.max_interval);
    if let Some(dir) = &cli.cache_dir {
        let path = cache::default_path(dir, g.datum());
        if path.exists() {
            let n = cache::load_from_path(&kl, &path)?;
            log::info!("loaded {n} entries from {}", path.display());
        }
    }
    Ok(Arc::new(kl))
}

fn dl_context(cli: &Cli, datum: GroupDatum) -> Result<DlContext, Error> {
    DlContext::from_table(kl_table(cli, datum)?, datum.twist)
}

fn descents(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn element_info(g: &GroupTable, w: Elem) -> ElementInfo {
    ElementInfo {
        w: g.reduced_word(w),
        length: g.length(w),
        left_descents: descents(g.left_descents(w)),
        right_descents: descents(g.right_descents(w)),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Group { group, w, all } => {
            let g = group_table(group.datum()?, &cli.limits)?;
            let element = w.as_deref().map(|w| g.parse_word(w)).transpose()?.map(|w| element_info(&g, w));
            let elements = all.then(|| g.elements().map(|w| element_info(&g, w)).collect());
            outcome(
                &GroupOut {
                    group: g.datum().to_string(),
                    rank: g.rank(),
                    order: g.size() as u64,
                    num_positive_roots: g.datum().num_positive_roots(),
                    longest: g.reduced_word(g.longest()),
                    element,
                    elements,
                },
                true,
            )
        }
        Command::Kl { group, w, basis, x } => {
            let kl = kl_table(cli, group.datum()?)?;
            let g = kl.group().clone();
            let w = g.parse_word(w)?;
            let elt: HeckeElt = match basis {
                Basis::T => HeckeElt::t(w),
                Basis::Cprime => (*kl.cprime(w)?).clone(),
                Basis::C => kl.c(w)?,
            };
            let terms = elt
                .iter()
                .map(|(x, c)| Term {
                    x: g.reduced_word(x),
                    coeff: c.clone(),
                })
                .collect();
            let coefficient = match x {
                Some(x) => {
                    let x = g.parse_word(x)?;
                    Some(Coefficient {
                        x: g.reduced_word(x),
                        h: kl.h(x, w)?,
                        mu: JsonInt(kl.mu(x, w)?),
                    })
                }
                None => None,
            };
            outcome(
                &KlOut {
                    group: g.datum().to_string(),
                    w: g.reduced_word(w),
                    basis: basis.to_string(),
                    terms,
                    coefficient,
                },
                true,
            )
        }
        Command::Cells { group, kind } => {
            let kl = kl_table(cli, group.datum()?)?;
            let g = kl.group().clone();
            let cells = Cells::compute_with_limit(&kl, (*kind).into(), cli.limits.max_cell_group)?;
            let a_of: Box<dyn Fn(Elem) -> Option<usize>> = if g.datum().is_type_a() {
                let g = g.clone();
                Box::new(move |w| a_value_type_a(&g, w).ok())
            } else if g.size() <= cli.limits.max_a_brute {
                let a = a_values_brute_with_limit(&kl, cli.limits.max_a_brute)?;
                Box::new(move |w| Some(a[w.index()]))
            } else {
                Box::new(|_| None)
            };
            let blocks = cells
                .cells()
                .iter()
                .map(|c| CellBlock {
                    elements: c.iter().map(|&w| g.reduced_word(w)).collect(),
                    a: a_of(c[0]),
                })
                .collect();
            let k = cells.len();
            let order = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && cells.cell_leq(i, j))
                .collect();
            outcome(
                &CellsOut {
                    group: g.datum().to_string(),
                    kind: cells.kind().to_string(),
                    blocks,
                    order,
                },
                true,
            )
        }
        Command::Qw {
            target,
            w,
            basis,
            mode,
            shift,
        } => {
            let datum = target.datum()?;
            let ctx = dl_context(cli, datum)?;
            let g = ctx.group().clone();
            let w = g.parse_word(w)?;
            let shift = match shift.as_str() {
                "auto" => g.length(w) as i32,
                s => s
                    .parse()
                    .map_err(|_| Error::Unsupported(format!("--shift takes an integer or `auto`, got {s:?}")))?,
            };
            let vec = ctx.q_coordinates(w, *basis, mode.mode(), shift)?;
            let mut combo = unipotent_decomposition(&vec, target.form)?;
            combo.global_sign = combo.positive_sign();
            outcome(
                &QwOut {
                    group: datum.to_string(),
                    form: target.form.to_string(),
                    w: vec.w.clone(),
                    basis: basis.to_string(),
                    mode: mode_name(vec.mode),
                    shift,
                    coords: vec.coords.clone(),
                    unipotent: combo.coeffs.clone(),
                    sign: combo.global_sign,
                    pass: combo.global_sign.is_some(),
                },
                true,
            )
        }
        Command::Check { check } => run_check(cli, check),
        Command::Deduce {
            scenario,
            order,
            max_solutions,
        } => {
            let text = std::fs::read_to_string(scenario)?;
            let s = parse_scenario(&text)?;
            let opts = SolveOptions {
                order: order.clone(),
                max_nodes: cli.limits.max_nodes,
                max_solutions: *max_solutions,
                max_variables: cli.limits.max_variables,
            };
            let set = solve_with(&s, &opts)?;
            let truncated = max_solutions.is_some_and(|m| set.solutions.len() >= m);
            outcome(
                &DeduceOut {
                    labels: set.labels,
                    variables: set.variables,
                    multiplicity_expressions: set.multiplicity_expressions,
                    bounds: set.bounds,
                    solutions: set
                        .solutions
                        .into_iter()
                        .map(|s| SolutionOut {
                            assignment: s.assignment,
                            multiplicities: s.multiplicities,
                        })
                        .collect(),
                    truncated,
                },
                true,
            )
        }
        Command::Cache { action } => run_cache(cli, action),
    }
}

fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::Graded => "graded".into(),
        Mode::AtV1 => "at_v1".into(),
    }
}

fn positivity_row(r: PositivityReport) -> PositivityRow {
    PositivityRow {
        w: r.w,
        shape: r.shape,
        sign: r.sign,
        pass: r.pass,
        coeffs: r.combo.coeffs,
        a_candidates: r
            .a_candidates
            .into_iter()
            .map(|c| Candidate {
                convention: c.convention,
                a: c.a,
                matches: c.matches,
            })
            .collect(),
    }
}

fn run_check(cli: &Cli, check: &CheckCommand) -> Result<Outcome, Error> {
    match check {
        CheckCommand::Positivity { target, w, all, mode } => {
            let datum = target.datum()?;
            let ctx = dl_context(cli, datum)?;
            let reports = match (w, all) {
                (Some(w), _) => vec![ctx.positivity_report(ctx.group().parse_word(w)?, mode.mode())?],
                (None, true) => ctx.positivity_sweep(mode.mode())?,
                (None, false) => return Err(Error::Unsupported("pass --w WORD or --all".into())),
            };
            let reports: Vec<PositivityRow> = reports.into_iter().map(positivity_row).collect();
            let pass = reports.iter().all(|r| r.pass);
            outcome(
                &PositivityOut {
                    form: target.form.to_string(),
                    n: datum.rank + 1,
                    mode: mode_name(mode.mode()),
                    reports,
                    pass,
                },
                pass,
            )
        }
        CheckCommand::Subreg { n } => {
            let r = subreg_check(*n)?;
            outcome(
                &SubregOut {
                    n: r.n,
                    w: r.w,
                    coeffs: r.combo.coeffs,
                    scale: JsonInt(r.scale),
                    sign: r.sign,
                    expected_sign: r.expected_sign,
                    sign_matches: r.sign_matches,
                    pass: r.pass,
                },
                r.pass,
            )
        }
        CheckCommand::Triangular { n } => {
            let r = triangularity_report(*n)?;
            outcome(
                &TriangularOut {
                    n: r.n,
                    bijection: r.bijection,
                    blocks: r
                        .blocks
                        .into_iter()
                        .map(|b| BlockOut {
                            label: b.label,
                            elements: b.elements,
                        })
                        .collect(),
                    triangular: r.triangular,
                    diagonal_nonzero: r.diagonal_nonzero,
                    span_ok: r.span_ok,
                    rank: r.rank,
                    pass: r.pass,
                },
                r.pass,
            )
        }
        CheckCommand::Lemma { n } => {
            let r = lemma_check(*n)?;
            outcome(
                &LemmaOut {
                    n: r.n,
                    at_v1_holds: r.at_v1_holds,
                    inverse_power_holds: r.inverse_power_holds,
                    printed_exponent: r.printed_exponent,
                    printed_exponent_holds: r.printed_exponent_holds,
                    pass: r.pass,
                },
                r.pass,
            )
        }
    }
}

fn cache_path(cli: &Cli, datum: &GroupDatum, path: &Option<PathBuf>) -> Result<PathBuf, Error> {
    match (path, &cli.cache_dir) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(dir)) => Ok(cache::default_path(dir, datum)),
        (None, None) => Err(Error::Unsupported("pass --path or set --cache-dir / KLQ_CACHE_DIR".into())),
    }
}

fn run_cache(cli: &Cli, action: &CacheCommand) -> Result<Outcome, Error> {
    let (group, path, saving) = match action {
        CacheCommand::Save { group, path } => (group, path, true),
        CacheCommand::Load { group, path } => (group, path, false),
    };
    let datum = group.datum()?;
    let path = cache_path(cli, &datum, path)?;
    let g = group_table(datum, &cli.limits)?;
    let kl = KlTable::for_group(g).with_max_interval(cli.limits.max_interval);
    let entries = if saving {
        kl.fill_all()?;
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        cache::save_to_path(&kl, &path)?;
        kl.num_computed()
    } else {
        cache::load_from_path(&kl, &path)?
    };
    outcome(
        &CacheOut {
            action: if saving { "saved" } else { "loaded" }.into(),
            path: display_path(&path),
            group: datum.to_string(),
            entries,
        },
        true,
    )
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}
