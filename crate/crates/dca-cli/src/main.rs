//! `dca`: classify lattice functions and sets, apply operations, compute
//! integral conjugates, and run the closure-table verifier.
//!
//! Stdout carries JSON only. Errors go to stderr as `{"error": ...}`.
//! Exit codes: 0 success, 1 verdict false or verification failure,
//! 2 usage or parse error, 3 inconclusive search.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use dca::classify::{check_fn, check_set, classify_fn_all, classify_set_all};
use dca::conjugacy::{biconjugate_at, conjugate};
use dca::io::{self, Object};
use dca::lab::fixtures::{self, ClassRef};
use dca::lab::runner::{verify_with, VerifyConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use dca::lab::tables::TableId;
use dca::transform::{
    add, apply_change, convolve, intersect, intersect_box, minkowski, project, project_set, restrict, restrict_box,
    restrict_set, value_scale, CoordinateChange,
};
use dca::{DcaError, LatticeFunction, Rat, Window};

const CLASS_HELP: &str = "\
Set classes:      integer-box ic-set lnat-set l-set mnat-set m-set multimodular-set
                  dmc-set jump-system se-jump cp-jump
Function classes: separable-convex integrally-convex lnat l mnat m multimodular
                  global-dmc local-dmc jump-mnat jump-m submodular supermodular
A set checked against a function class is checked through its indicator; a
function checked against a set class is checked through its effective domain.

Windows are written LO..HI, either per coordinate (-1,0..2,3) or as a single
pair (-2..2) that is repeated in every coordinate.";

#[derive(Parser)]
#[command(name = "dca", version, about = "Exact discrete convex analysis on integer lattices", after_help = CLASS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where an input object comes from: a JSON file, or a quadratic form.
#[derive(Args)]
struct Input {
    /// Function or set JSON file.
    file: Option<PathBuf>,
    /// Matrix JSON (array of rows) expanded as xᵀAx on --window.
    #[arg(long, requires = "window", conflicts_with = "file")]
    quadratic: Option<PathBuf>,
    /// Window for --quadratic, as LO..HI.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Membership verdicts, with a witness for each failure.
    #[command(group(ArgGroup::new("which").args(["class", "all"])))]
    Classify {
        #[command(flatten)]
        input: Input,
        /// A single class (see the list below).
        #[arg(long)]
        class: Option<String>,
        /// Every class of the object's kind (the default).
        #[arg(long)]
        all: bool,
    },
    /// Apply an operation and write the result.
    Apply {
        /// shift, invert-all, invert-signs, permute, varscale, value-scale,
        /// restrict, project, intersect-box, add, convolve.
        #[arg(long)]
        op: String,
        #[command(flatten)]
        input: Input,
        /// Second operand for add / convolve (intersection / Minkowski sum for sets).
        #[arg(long)]
        with: Option<PathBuf>,
        /// Translation vector b for shift.
        #[arg(long, allow_hyphen_values = true)]
        by: Option<String>,
        /// Signs ±1 for invert-signs.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Permutation σ (1-based): coordinate i moves to σ(i).
        #[arg(long)]
        sigma: Option<String>,
        /// Scaling factor α ≥ 1 for varscale.
        #[arg(long)]
        alpha: Option<i64>,
        /// Positive rational factor for value-scale.
        #[arg(long)]
        factor: Option<String>,
        /// Kept coordinates (1-based) for restrict and project.
        #[arg(long)]
        coords: Option<String>,
        /// Box LO..HI for intersect-box.
        #[arg(long = "box", allow_hyphen_values = true)]
        bx: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Integral conjugate on a window of slopes.
    Conjugate {
        #[command(flatten)]
        input: Input,
        /// Slope window LO..HI.
        #[arg(long, allow_hyphen_values = true)]
        pbox: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// f••(x), with an integer maximizer and the real upper bound.
    Biconjugate {
        #[command(flatten)]
        input: Input,
        /// The point x as x1,...,xn.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Check the closure tables, the fixtures and the negative controls.
    Verify {
        /// Restrict to one or more tables (sets-coordinate, sets-structural,
        /// fns-coordinate, fns-value, conjugacy).
        #[arg(long)]
        table: Vec<String>,
        /// Trials per closure cell at each of n = 2 and n = 3.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, env = "DCA_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        report: PathBuf,
    },
    /// List or run the registered fixtures.
    #[command(group(ArgGroup::new("mode").args(["list", "run"]).required(true)))]
    Fixture {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        run: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<DcaError> for Failure {
    fn from(e: DcaError) -> Failure {
        let code = if matches!(e, DcaError::Inconclusive { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult = Result<u8, Failure>;

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().replace('−', "-").parse::<i64>().map_err(|_| usage(format!("`{t}` is not an integer"))))
        .collect()
}

fn parse_window(s: &str, n: usize) -> Result<Window, Failure> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| usage(format!("window `{s}` is not LO..HI")))?;
    let (mut lo, mut hi) = (parse_ints(lo)?, parse_ints(hi)?);
    if lo.len() == 1 && hi.len() == 1 && n > 1 {
        lo = vec![lo[0]; n];
        hi = vec![hi[0]; n];
    }
    Ok(Window::new(lo, hi)?)
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Object, Failure> {
    if let Some(q) = &input.quadratic {
        let rows = read_json(q)?;
        let a: Vec<Vec<Rat>> = rows
            .as_array()
            .ok_or_else(|| usage("quadratic matrix must be an array of rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| usage("quadratic matrix rows must be arrays"))?
                    .iter()
                    .map(|v| io::parse_rat_value(v).map_err(Failure::from))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let w = parse_window(input.window.as_deref().unwrap_or_default(), a.len())?;
        return Ok(Object::Function(LatticeFunction::quadratic(&a, w)?));
    }
    let path = input.file.as_ref().ok_or_else(|| usage("no input: give FILE or --quadratic"))?;
    Ok(io::from_value(&read_json(path)?)?)
}

fn function_of(o: &Object) -> LatticeFunction {
    fixtures::as_function(o)
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).expect("values serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// A closed pipe downstream is not an error worth a panic.
fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn classify(input: &Input, class: Option<&str>) -> CliResult {
    let o = load(input)?;
    if let Some(c) = class {
        let cls = ClassRef::parse(c)?;
        let v = match (&o, cls) {
            (Object::Set(s), ClassRef::Set(c)) => check_set(s, c),
            (o, ClassRef::Set(c)) => check_set(&function_of(o).support_set(), c),
            (o, ClassRef::Fn(c)) => check_fn(&function_of(o), c),
        };
        let mut out = v.to_json();
        out["class"] = json!(c);
        out["object"] = json!(o.kind());
        print(&out);
        return Ok(if v.holds { 0 } else { 1 });
    }
    let verdicts: Vec<Value> = match &o {
        Object::Set(s) => classify_set_all(s)
            .into_iter()
            .map(|(c, v)| {
                let mut j = v.to_json();
                j["class"] = json!(c.name());
                j
            })
            .collect(),
        Object::Function(f) => classify_fn_all(f)
            .into_iter()
            .map(|(c, v)| {
                let mut j = v.to_json();
                j["class"] = json!(c.name());
                j
            })
            .collect(),
    };
    print(&json!({"object": o.kind(), "verdicts": verdicts}));
    Ok(0)
}

fn need<T>(v: Option<T>, flag: &str, op: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--op {op} needs --{flag}")))
}

fn coords(s: &str) -> Result<Vec<usize>, Failure> {
    parse_ints(s)?
        .into_iter()
        .map(|i| if i >= 1 { Ok(i as usize - 1) } else { Err(usage("coordinates are 1-based")) })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn apply(
    op: &str,
    input: &Input,
    with: Option<&Path>,
    by: Option<&str>,
    signs: Option<&str>,
    sigma: Option<&str>,
    alpha: Option<i64>,
    factor: Option<&str>,
    coord_list: Option<&str>,
    bx: Option<&str>,
    output: &Path,
) -> CliResult {
    let o = load(input)?;
    let n = o.dim();
    let change = match op {
        "shift" => Some(CoordinateChange::Shift(parse_ints(need(by, "by", op)?)?)),
        "invert-all" => Some(CoordinateChange::InvertAll),
        "invert-signs" => Some(CoordinateChange::InvertSigns(parse_ints(need(signs, "signs", op)?)?)),
        "permute" => Some(CoordinateChange::Permute(coords(need(sigma, "sigma", op)?)?)),
        "varscale" => Some(CoordinateChange::VarScale(need(alpha, "alpha", op)?)),
        _ => None,
    };
    let result = if let Some(c) = change {
        match &o {
            Object::Set(s) => Object::Set(dca::transform::apply_change_set(s, &c)?),
            Object::Function(f) => Object::Function(apply_change(f, &c)?),
        }
    } else {
        match op {
            "value-scale" => {
                let a: Rat = need(factor, "factor", op)?.parse().map_err(|_| usage("--factor is not a rational"))?;
                Object::Function(value_scale(&function_of(&o), &a)?)
            }
            "restrict" | "project" => {
                let u = coords(need(coord_list, "coords", op)?)?;
                match (&o, op) {
                    (Object::Set(s), "restrict") => Object::Set(restrict_set(s, &u)?),
                    (Object::Set(s), _) => Object::Set(project_set(s, &u)?),
                    (Object::Function(f), "restrict") => Object::Function(restrict(f, &u)?),
                    (Object::Function(f), _) => Object::Function(project(f, &u)?),
                }
            }
            "intersect-box" => {
                let w = parse_window(need(bx, "box", op)?, n)?;
                match &o {
                    Object::Set(s) => Object::Set(intersect_box(s, &w)?),
                    Object::Function(f) => Object::Function(restrict_box(f, &w)?),
                }
            }
            "add" | "convolve" => {
                let other = io::from_value(&read_json(need(with, "with", op)?)?)?;
                match (&o, &other, op) {
                    (Object::Set(a), Object::Set(b), "add") => Object::Set(intersect(a, b)?),
                    (Object::Set(a), Object::Set(b), _) => Object::Set(minkowski(a, b)?),
                    (a, b, "add") => Object::Function(add(&function_of(a), &function_of(b))?),
                    (a, b, _) => Object::Function(convolve(&function_of(a), &function_of(b))?),
                }
            }
            _ => return Err(usage(format!("unknown operation `{op}`"))),
        }
    };
    let v = io::to_value(&result);
    write_json(output, &v)?;
    print(&json!({"op": op, "output": output.display().to_string(), "object": result.kind(), "dim": result.dim()}));
    Ok(0)
}

fn conjugate_cmd(input: &Input, pbox: &str, output: &Path) -> CliResult {
    let f = function_of(&load(input)?);
    let w = parse_window(pbox, f.dim())?;
    let c = conjugate(&f, &w)?;
    write_json(output, &io::function_json(&c.function))?;
    print(&json!({
        "output": output.display().to_string(),
        "pbox": io::window_json(&w),
        "boundary_attained": c.boundary_attained,
    }));
    Ok(0)
}

fn biconjugate_cmd(input: &Input, at: &str) -> CliResult {
    let f = function_of(&load(input)?);
    let x = parse_ints(at)?;
    let b = biconjugate_at(&f, &x)?;
    let mut out = b.to_json();
    out["at"] = json!(x);
    out["f"] = json!(f.eval(&x)?.to_string());
    print(&out);
    Ok(0)
}

fn verify(tables: &[String], trials: usize, seed: u64, report: &Path) -> CliResult {
    let tables: Vec<TableId> = if tables.is_empty() {
        TableId::ALL.to_vec()
    } else {
        tables.iter().map(|t| t.parse::<TableId>()).collect::<Result<_, _>>()?
    };
    let vc = VerifyConfig { seed, trials, tables, ..VerifyConfig::default() };
    let rep = verify_with(&vc, |c| {
        eprintln!("{:<16} {:<18} {:<20} {} {}", c.table.name(), c.class.name(), c.op.name(), c.expected.symbol(), c.outcome.name());
    });
    let v = rep.to_json();
    write_json(report, &v)?;
    print(&v["summary"]);
    Ok(if rep.passed() { 0 } else { 1 })
}

fn fixture_cmd(list: bool, run: Option<&str>) -> CliResult {
    if list {
        let items: Vec<Value> =
            fixtures::registry().iter().map(|f| json!({"id": f.id, "summary": f.summary})).collect();
        print(&Value::Array(items));
        return Ok(0);
    }
    let id = run.expect("clap requires one of --list / --run");
    let fx = fixtures::find(id).ok_or_else(|| usage(format!("no fixture `{id}`")))?;
    let out = fx.run();
    print(&out.to_json());
    Ok(if out.passed { 0 } else { 1 })
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Classify { input, class, all: _ } => classify(&input, class.as_deref()),
        Command::Apply { op, input, with, by, signs, sigma, alpha, factor, coords, bx, output } => apply(
            &op,
            &input,
            with.as_deref(),
            by.as_deref(),
            signs.as_deref(),
            sigma.as_deref(),
            alpha,
            factor.as_deref(),
            coords.as_deref(),
            bx.as_deref(),
            &output,
        ),
        Command::Conjugate { input, pbox, output } => conjugate_cmd(&input, &pbox, &output),
        Command::Biconjugate { input, at } => biconjugate_cmd(&input, &at),
        Command::Verify { table, trials, seed, report } => verify(&table, trials, seed, &report),
        Command::Fixture { list, run } => fixture_cmd(list, run.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                0
            } else {
                2
            };
            if code == 0 {
                let _ = write!(std::io::stdout().lock(), "{e}");
            } else {
                eprintln!("{}", json!({"error": e.kind().to_string(), "message": e.to_string().trim_end()}));
            }
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", json!({"error": f.message, "exit": f.code}));
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dca::classify::{FnClass, SetClass};

    #[test]
    fn windows_parse_per_coordinate_and_as_cubes() {
        let w = parse_window("-2..2", 3).ok().unwrap();
        assert_eq!(w.lo(), &[-2, -2, -2]);
        let w = parse_window("-1,0..2,3", 2).ok().unwrap();
        assert_eq!((w.lo(), w.hi()), (&[-1, 0][..], &[2, 3][..]));
        assert!(parse_window("1,2", 2).is_err());
    }

    #[test]
    fn class_names_resolve() {
        for c in SetClass::ALL {
            assert_eq!(ClassRef::parse(c.name()).ok(), Some(ClassRef::Set(c)));
        }
        for c in FnClass::ALL {
            assert_eq!(ClassRef::parse(c.name()).ok(), Some(ClassRef::Fn(c)));
        }
    }

    #[test]
    fn inconclusive_searches_exit_with_three() {
        let e = DcaError::Inconclusive { radius: 8, lower: "0".into(), upper: "1".into() };
        assert_eq!(Failure::from(e).code, 3);
        assert_eq!(Failure::from(DcaError::ZeroDimension).code, 2);
    }
}
