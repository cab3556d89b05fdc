//! Command-line front end.
//!
//! Exit codes: 0 on success, feasible, or OK; 1 on infeasible or a violation;
//! 2 on usage or I/O errors and malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{
    build_clifford, build_complex, build_klein_group_algebra, build_octonions, build_quaternions, build_reals,
    cayley_dickson_double, check_graded_commutative, quaternion_embedding, Involution, StructureTable,
};
use crate::json::{
    graded_lie_to_json, grading_from_json, lie_from_json, outcome_to_json, table_from_json, table_to_json,
};
use crate::lie::{
    check_graded_antisymmetry, check_graded_jacobi, check_grading_linearity, simplicity_evidence, sl2, so3,
    LieStructure,
};
use crate::monomials::{mono_mul, SquareConvention};
use crate::rational::Rational;
use crate::solver::{exhaustive_grading_search, parity_matrix_of, solve_grading, GradingOutcome, Obstruction};
use crate::verify::{run_suite, VerifyOptions};
use crate::{Error, Grading};

#[derive(Debug, Parser)]
#[command(name = "triplets", version, about = "Z2^n-graded commutative algebras and their gradings")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Largest width tried by the brute-force grading search (1..=4)
    #[arg(long, global = true, value_name = "M")]
    max_width: Option<usize>,

    /// Seed for pseudorandom sampling checks
    #[arg(long, global = true, value_name = "S", default_value_t = 1843)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a multiplication table (builtin name or JSON file)
    Table { algebra: String },
    /// Check a grading against a table
    CheckGrading(CheckGradingArgs),
    /// Decide whether a table admits a Z2^m grading
    SolveGrading { algebra: String },
    /// Extract an obstruction to grading a table
    Obstruct { algebra: String },
    /// Cayley-Dickson double of a table
    Double {
        algebra: String,
        /// Doubling parameter, an integer or `num/den`
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        gamma: String,
    },
    /// Tensor a Lie algebra (builtin sl2, so3 or JSON file) with the quaternions
    Quaternionize { lie: String },
    /// Run invariant suites: grading, monomials, algebra, solver, lie, all
    Verify { suite: String },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct TableSource {
    /// Builtin algebra: H, O, Cl<n>, Cl<n>-, C, R, Z2xZ2
    #[arg(long)]
    builtin: Option<String>,
    /// Structure table JSON file
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckGradingArgs {
    #[command(flatten)]
    source: TableSource,
    /// Grading JSON file; defaults to the triple degree when checking H
    #[arg(long)]
    grading: Option<PathBuf>,
}

/// Builtin tables; anything else is read as a JSON file path.
pub fn builtin_table(name: &str) -> Option<StructureTable> {
    match name {
        "H" => Some(build_quaternions().0),
        "O" => Some(build_octonions()),
        "C" => Some(build_complex()),
        "R" => Some(build_reals()),
        "Z2xZ2" => Some(build_klein_group_algebra()),
        _ => {
            let rest = name.strip_prefix("Cl")?;
            let (digits, negative) = match rest.strip_suffix('-') {
                Some(d) => (d, true),
                None => (rest, false),
            };
            let n: usize = digits.parse().ok()?;
            let conv = if negative { SquareConvention::negative(n) } else { SquareConvention::positive(n) };
            build_clifford(n, &conv).ok()
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn load_table(source: &str) -> Result<StructureTable, Failure> {
    if let Some(t) = builtin_table(source) {
        return Ok(t);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Failure { code: 2, message: format!("{source}: not a builtin algebra or an existing file") });
    }
    table_from_json(&read_file(path)?).map_err(|e| Failure { code: 2, message: format!("{source}: {e}") })
}

fn load_lie(source: &str) -> Result<LieStructure, Failure> {
    match source {
        "sl2" => Ok(sl2()),
        "so3" => Ok(so3()),
        _ => {
            let path = Path::new(source);
            if !path.exists() {
                return Err(Failure {
                    code: 2,
                    message: format!("{source}: not a builtin Lie algebra or an existing file"),
                });
            }
            lie_from_json(&read_file(path)?).map_err(|e| Failure { code: 2, message: format!("{source}: {e}") })
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let bad = || Failure { code: 2, message: format!("cannot parse rational {s:?}") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1i64),
    };
    crate::rational::ratio(n, d).map_err(|_| bad())
}

/// Grid rendering; cell signs show as a leading `-`.
pub fn render_table(t: &StructureTable) -> String {
    let header: Vec<String> = std::iter::once(String::new()).chain(t.names().iter().cloned()).collect();
    let mut rows = vec![header];
    for i in 0..t.dim() {
        let mut row = vec![t.names()[i].clone()];
        row.extend((0..t.dim()).map(|j| t.cell(i, j).render(t.names())));
        rows.push(row);
    }
    render_grid(&rows)
}

fn render_grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_triplets() -> String {
    let images = quaternion_embedding();
    let conv = SquareConvention::positive(3);
    let names = ["1", "i", "j", "k"];
    let mut out = String::from("as triplets (i = e2e3, j = e1e3, k = e1e2):\n");
    for (n, m) in names.iter().zip(&images) {
        out.push_str(&format!("  {n} <-> {m} {}\n", m.grade_of()));
    }
    let mut rows = vec![std::iter::once(String::new()).chain(images.iter().map(|m| m.to_string())).collect::<Vec<_>>()];
    for a in &images {
        let mut row = vec![a.to_string()];
        row.extend(images.iter().map(|b| mono_mul(a, b, &conv).expect("same ambient").to_string()));
        rows.push(row);
    }
    out.push_str(&render_grid(&rows));
    out
}

fn render_grading(t: &StructureTable, g: &Grading) -> String {
    let mut out = format!("grading of width {}:\n", g.width());
    for (n, gr) in t.names().iter().zip(g.grades()) {
        out.push_str(&format!("  {n:>8}  {gr}\n"));
    }
    let p = parity_matrix_of(g);
    out.push_str("parity matrix:\n");
    for i in 0..p.rows() {
        let bits: Vec<String> = p.row_bits(i).iter().map(u8::to_string).collect();
        out.push_str(&format!("  {}\n", bits.join(" ")));
    }
    out
}

fn render_obstruction(t: &StructureTable, o: &Obstruction) -> String {
    match o {
        Obstruction::Witness(w) => {
            let n = |i: usize| &t.names()[i];
            format!(
                "infeasible: {} {} = +-{}, and {} anticommutes with all three\n  {}\n",
                n(w.l1),
                n(w.l2),
                n(w.l3),
                n(w.l4),
                w.chain()
            )
        }
        Obstruction::Certificate(rows) => {
            let mut out = String::from("infeasible: these parity equations sum to 0 = 1\n");
            for r in rows {
                out.push_str(&format!("  {:?} from {:?}\n", r.unknowns, r.origin));
            }
            out
        }
    }
}

fn oracle_note(t: &StructureTable, max_width: usize, feasible: bool) -> Result<String, Failure> {
    let mut found = None;
    for m in 1..=max_width {
        if let Some(g) = exhaustive_grading_search(t, m)? {
            found = Some((m, g));
            break;
        }
    }
    let agrees = found.is_some() == feasible;
    Ok(match found {
        Some((m, g)) => {
            format!("brute force (m <= {max_width}): width {m} grading {:?}; agrees: {agrees}\n", g.grades())
        }
        None => format!("brute force (m <= {max_width}): none found; agrees: {agrees}\n"),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure { code: 2, message: e.to_string() };
    match &cli.command {
        Command::Table { algebra } => {
            let t = load_table(algebra)?;
            if cli.json {
                writeln!(out, "{}", table_to_json(&t)?).map_err(io)?;
            } else {
                write!(out, "{}", render_table(&t)).map_err(io)?;
                if algebra == "H" {
                    write!(out, "\n{}", render_triplets()).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::CheckGrading(args) => {
            let (t, default_grading) = match (&args.source.builtin, &args.source.table) {
                (Some(name), _) => {
                    let t = builtin_table(name)
                        .ok_or_else(|| Failure { code: 2, message: format!("unknown builtin algebra {name}") })?;
                    (t, (name == "H").then(|| build_quaternions().1))
                }
                (None, Some(path)) => (load_table(&path.to_string_lossy())?, None),
                (None, None) => unreachable!("clap enforces one source"),
            };
            let g = match (&args.grading, default_grading) {
                (Some(path), _) => grading_from_json(&read_file(path)?)
                    .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?,
                (None, Some(g)) => g,
                (None, None) => {
                    return Err(Failure { code: 2, message: "--grading is required for this table".into() })
                }
            };
            match check_graded_commutative(&t, &g)? {
                None => {
                    if cli.json {
                        writeln!(out, r#"{{"ok":true,"violation":null}}"#).map_err(io)?;
                    } else {
                        writeln!(out, "OK").map_err(io)?;
                    }
                    Ok(0)
                }
                Some(v) => {
                    if cli.json {
                        let msg = serde_json::to_string(&v.to_string()).expect("string");
                        writeln!(out, r#"{{"ok":false,"violation":{msg}}}"#).map_err(io)?;
                    } else {
                        writeln!(out, "violation: {v}").map_err(io)?;
                    }
                    Ok(1)
                }
            }
        }
        Command::SolveGrading { algebra } | Command::Obstruct { algebra } => {
            let t = load_table(algebra)?;
            let outcome = solve_grading(&t)?;
            let obstruct_only = matches!(cli.command, Command::Obstruct { .. });
            if cli.json {
                writeln!(out, "{}", outcome_to_json(&outcome)).map_err(io)?;
            } else {
                match &outcome {
                    GradingOutcome::Feasible(g) if obstruct_only => {
                        writeln!(out, "no obstruction: a grading of width {} exists", g.width()).map_err(io)?
                    }
                    GradingOutcome::Feasible(g) => write!(out, "feasible\n{}", render_grading(&t, g)).map_err(io)?,
                    GradingOutcome::Infeasible(o) => write!(out, "{}", render_obstruction(&t, o)).map_err(io)?,
                }
            }
            if let Some(m) = cli.max_width {
                let note = oracle_note(&t, m, outcome.is_feasible())?;
                if cli.json {
                    write!(err, "{note}").map_err(io)?;
                } else {
                    write!(out, "{note}").map_err(io)?;
                }
            }
            Ok(if outcome.is_feasible() { 0 } else { 1 })
        }
        Command::Double { algebra, gamma } => {
            let t = load_table(algebra)?;
            let gamma = parse_rational(gamma)?;
            let (d, _) = cayley_dickson_double(&t, &Involution::standard(t.dim()), &gamma)?;
            if cli.json {
                writeln!(out, "{}", table_to_json(&d)?).map_err(io)?;
            } else {
                write!(out, "{}", render_table(&d)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Quaternionize { lie } => {
            let s = load_lie(lie)?;
            let q = crate::lie::quaternionize(&s)?;
            let anti = check_graded_antisymmetry(&q);
            let jacobi = check_graded_jacobi(&q);
            let linear = check_grading_linearity(&q);
            let ok = anti.is_none() && jacobi.is_none() && linear.is_none();
            if cli.json {
                writeln!(out, "{}", graded_lie_to_json(&q)?).map_err(io)?;
            } else {
                writeln!(out, "H (x) {lie}: dimension {}", q.dim()).map_err(io)?;
                for (n, g) in q.names().iter().zip(q.grading().grades()) {
                    writeln!(out, "  {n:>10}  {g}").map_err(io)?;
                }
                let show = |v: Option<String>| v.unwrap_or_else(|| "OK".into());
                writeln!(out, "graded antisymmetry: {}", show(anti.map(|p| format!("fails at {p:?}")))).map_err(io)?;
                writeln!(out, "graded Jacobi: {}", show(jacobi.map(|p| format!("fails at {p:?}")))).map_err(io)?;
                writeln!(out, "grading linearity: {}", show(linear.map(|p| format!("fails at {p:?}")))).map_err(io)?;
                if ok {
                    let ev = simplicity_evidence(&q, cli.seed, 50)?;
                    let full = ev.basis_closures.iter().chain(&ev.sampled_closures).filter(|&&d| d == ev.dim).count();
                    writeln!(
                        out,
                        "center dimension: {}; ideal closures reaching the full space: {full}/{}",
                        ev.center_dim,
                        ev.basis_closures.len() + ev.sampled_closures.len()
                    )
                    .map_err(io)?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Verify { suite } => {
            let opts = VerifyOptions { seed: cli.seed, max_width: cli.max_width.unwrap_or(4) };
            let results =
                run_suite(suite, opts).ok_or_else(|| Failure { code: 2, message: format!("unknown suite {suite}") })?;
            let mut failed = 0;
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                failed += usize::from(!r.passed);
                writeln!(out, "[{tag}] {}: {}", r.name, r.detail).map_err(io)?;
            }
            writeln!(out, "{} checks, {failed} failed", results.len()).map_err(io)?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

/// Parses `args` (program name first) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(m) = cli.max_width {
        if !(1..=crate::solver::MAX_SEARCH_WIDTH).contains(&m) {
            let _ = writeln!(err, "error: --max-width must be in 1..={}", crate::solver::MAX_SEARCH_WIDTH);
            return 2;
        }
    }
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
