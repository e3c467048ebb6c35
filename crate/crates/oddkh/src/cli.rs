//! The `oddkh` command line. Exit codes: 0 success, 1 bad input, 2 internal
//! invariant failure (including failed verification checks).

use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cobfunctor::{evaluate_movie, isotopy_map, structural_arc_map, Host, MovieEvent, MovieScript};
use crate::complex::{odd_complex, odd_complex_with_cube, ChainMap, HomologyEntry};
use crate::cube::Theory;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::linkdiag::{parse_pd, LinkDiagram};
use crate::verify::{run_suite, Check, RunReport, Suite};

pub const MAX_CROSSINGS_VAR: &str = "ODDKH_MAX_CROSSINGS";
const DEFAULT_MAX_CROSSINGS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "oddkh", version, about = "Odd Khovanov homology and cobordism maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    X,
    Y,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::X => Theory::X,
            TheoryArg::Y => Theory::Y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    Z,
    Z2,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MovieCheck {
    Chainmap,
    IdentityUpToSign,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bigraded homology of a PD diagram (`-` reads stdin).
    Homology {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "y")]
        theory: TheoryArg,
        #[arg(long, value_enum, default_value = "z")]
        coeff: Coeff,
        #[arg(long)]
        json: bool,
    },
    /// Evaluates a movie script and reports on the composite chain map.
    Movie {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "y")]
        theory: TheoryArg,
        #[arg(long)]
        dump_matrices: bool,
        #[arg(long, value_enum)]
        check: Vec<MovieCheck>,
        /// A second script from the same initial diagram; reports the sign relating the two maps.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Runs a verification suite: signs, invariance, functoriality, dots, hecke or oracles.
    Verify {
        suite: String,
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Dumps the cube of resolutions with its canonical sign assignment.
    Cube {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "y")]
        theory: TheoryArg,
    },
}

/// The crossing limit from the environment.
pub fn max_crossings() -> Result<usize> {
    match std::env::var(MAX_CROSSINGS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("{MAX_CROSSINGS_VAR}={v:?} is not a number") }),
        Err(_) => Ok(DEFAULT_MAX_CROSSINGS),
    }
}

fn guard(n: usize) -> Result<()> {
    let limit = max_crossings()?;
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_diagram(path: &Path) -> Result<LinkDiagram> {
    let d = parse_pd(&read_input(path)?)?;
    guard(d.n_crossings())?;
    Ok(d)
}

fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match cli.cmd {
        Cmd::Homology { input, theory, coeff, json } => homology(&input, theory.into(), coeff, json),
        Cmd::Movie { input, theory, dump_matrices, check, against } => {
            movie(&input, theory.into(), dump_matrices, &check, against.as_deref(), echo)
        }
        Cmd::Verify { suite, max_crossings, json } => verify(&suite, max_crossings, json, echo),
        Cmd::Cube { input, theory } => cube(&input, theory.into()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("oddkh: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

fn homology(input: &Path, theory: Theory, coeff: Coeff, json: bool) -> Result<i32> {
    let d = load_diagram(input)?;
    let c = odd_complex(&d, theory)?;
    let entries: Vec<HomologyEntry> = match coeff {
        Coeff::Z => c.homology().entries(),
        Coeff::Z2 => dims(c.reduce_coefficients(2)?),
        Coeff::Q => dims(c.rational_homology()),
    };
    if json {
        println!("{}", serde_json::to_string(&entries)?);
    } else {
        let ring = match coeff {
            Coeff::Z => "Z",
            Coeff::Z2 => "F2",
            Coeff::Q => "Q",
        };
        for e in &entries {
            let mut parts = Vec::new();
            if e.rank > 0 {
                parts.push(if e.rank == 1 { ring.to_string() } else { format!("{ring}^{}", e.rank) });
            }
            parts.extend(e.torsion.iter().map(|t| format!("Z/{t}")));
            println!("h={:>3} q={:>4}  {}", e.h, e.q, parts.join(" + "));
        }
    }
    Ok(0)
}

fn dims(m: std::collections::BTreeMap<(i32, i32), usize>) -> Vec<HomologyEntry> {
    m.into_iter().filter(|(_, r)| *r > 0).map(|((h, q), rank)| HomologyEntry { h, q, rank, torsion: vec![] }).collect()
}

fn matrix_json(m: &IntMatrix) -> Value {
    let entries: Vec<Value> = m
        .iter()
        .map(|(r, c, v)| {
            let v = v.to_string().parse::<i64>().map_or_else(|_| json!(v.to_string()), |x| json!(x));
            json!([r, c, v])
        })
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn load_movie(path: &Path) -> Result<(MovieScript, LinkDiagram)> {
    let script = MovieScript::parse(&read_input(path)?)?;
    let start = script.initial.to_diagram()?;
    // every crossing a movie can add comes from an R1 or R2 `do`
    let added: usize = script
        .events
        .iter()
        .map(|e| match e {
            MovieEvent::R1 { direction, .. } if *direction == crate::cobfunctor::Direction::Do => 1,
            MovieEvent::R2 { direction, .. } if *direction == crate::cobfunctor::Direction::Do => 2,
            _ => 0,
        })
        .sum();
    guard(start.n_crossings() + added)?;
    Ok((script, start))
}

fn movie(
    input: &Path,
    theory: Theory,
    dump: bool,
    checks: &[MovieCheck],
    against: Option<&Path>,
    echo: Vec<String>,
) -> Result<i32> {
    let t0 = Instant::now();
    let (script, start) = load_movie(input)?;
    let result = evaluate_movie(&script, theory)?;
    let mut report_checks = Vec::new();
    for c in checks {
        report_checks.push(match c {
            MovieCheck::Chainmap => Check::new("chainmap", result.map.is_chain_map(), ""),
            MovieCheck::IdentityUpToSign => Check::run("identity-up-to-sign", || {
                let sign = identity_sign(&start, result.final_diagram(), &result.map, theory)?;
                Ok((sign.is_some(), sign.map_or("not +-id".into(), |s| format!("sign {s:+}"))))
            }),
        });
    }
    if let Some(path) = against {
        let (other, other_start) = load_movie(path)?;
        if other_start.spec() != start.spec() {
            return Err(Error::Move("the two movies start from different diagrams".into()));
        }
        let theirs = evaluate_movie(&other, theory)?;
        report_checks.push(Check::run("equal-up-to-sign", || {
            let (a, b) = (result.final_diagram(), theirs.final_diagram());
            let iso = isotopy_map(&Host::new(b, theory)?, &Host::new(a, theory)?, &structural_arc_map(b, a)?)?;
            let sign = result.map.equal_up_to_sign(&theirs.map.then(&iso)?);
            Ok((sign.is_some(), sign.map_or("maps differ".into(), |s| format!("sign {s:+}"))))
        }));
    }
    let mut output = json!({
        "final": result.final_diagram().spec(),
        "frames": result.frames.len(),
        "q_shift": result.map.q_shifts(),
    });
    if dump {
        let blocks: serde_json::Map<String, Value> =
            result.map.blocks().iter().map(|(h, m)| (h.to_string(), matrix_json(m))).collect();
        output["matrices"] = Value::Object(blocks);
    }
    let report = RunReport { command: echo, checks: report_checks, seconds: t0.elapsed().as_secs_f64(), output };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.passed() { 0 } else { 2 })
}

/// `Some(s)` when the map, carried back to the initial diagram by the
/// planar isotopy matching the two diagrams crossing by crossing, is `s·id`.
fn identity_sign(start: &LinkDiagram, end: &LinkDiagram, map: &ChainMap, theory: Theory) -> Result<Option<i8>> {
    let h0 = Host::new(start, theory)?;
    let h1 = Host::new(end, theory)?;
    let back = isotopy_map(&h1, &h0, &structural_arc_map(end, start)?)?;
    Ok(map.then(&back)?.equal_up_to_sign(&ChainMap::identity(h0.complex.clone())))
}

fn verify(suite: &str, max: Option<usize>, json: bool, echo: Vec<String>) -> Result<i32> {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("oddkh: {e}\n\nUsage: oddkh verify <SUITE> [--max-crossings N] [--json]");
            return Ok(1);
        }
    };
    let max = match max {
        Some(m) => m,
        None => max_crossings()?,
    };
    let t0 = Instant::now();
    let checks = run_suite(suite, max);
    let report = RunReport { command: echo, checks, seconds: t0.elapsed().as_secs_f64(), output: Value::Null };
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for c in &report.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{mark}  {}", c.name);
            } else {
                println!("{mark}  {}  ({})", c.name, c.detail);
            }
        }
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        println!("{suite}: {} checks, {failed} failed, {:.2}s", report.checks.len(), report.seconds);
    }
    Ok(if report.passed() { 0 } else { 2 })
}

fn cube(input: &Path, theory: Theory) -> Result<i32> {
    let d = load_diagram(input)?;
    let (cube, signs, _) = odd_complex_with_cube(&d, theory)?;
    println!("{}", serde_json::to_string_pretty(&cube.dump(theory, Some(&signs)))?);
    Ok(0)
}
