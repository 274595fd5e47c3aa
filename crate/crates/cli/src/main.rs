use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foliation_cli::plot::{self, PlotParams};
use foliation_cli::report::{self, AnalysisReport, FactorReport, GeneratorSetReport};
use foliation_core::corpus::{self, FixtureReport};
use foliation_core::milnor::{self, MilnorError};
use foliation_core::pipeline::{self, AnalysisError, AnalyzeOptions};
use foliation_core::poly::{parse_poly, parse_univariate, Polynomial, Weights};
use foliation_core::scalar::Field;
use rayon::prelude::*;
use serde::Serialize;

/// Polynomial 1-forms tangent to a plane curve f = 0.
///
/// Exit codes: 0 success, 1 usage or stage error, 2 input not tame,
/// 3 internal invariant violated.
#[derive(Parser)]
#[command(name = "foliate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: Milnor algebra, A_f, generators of E_f, Saito verdict.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Write the JSON report to this path ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include stage timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Plot the real locus of f = 0 as SVG.
    Plot {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        #[arg(long, value_name = "UNIPOLY")]
        minpoly: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Plot the square [-R, R]^2.
        #[arg(long, value_name = "R", default_value_t = 2.0, allow_negative_numbers = true)]
        window: f64,
        /// Grid cells per side.
        #[arg(long, value_name = "N", default_value_t = 200)]
        grid: usize,
        /// Numeric value of the field generator z.
        #[arg(long, value_name = "FLOAT", allow_negative_numbers = true)]
        embed: Option<f64>,
    },
    /// Run the regression fixtures.
    Corpus {
        /// Run a single fixture.
        #[arg(long, value_name = "FIXTURE")]
        only: Option<String>,
        /// Require the candidate generating set to fail on every fixture run.
        #[arg(long)]
        expect_generation_failure: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generator sets of E_f.
    Generators {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = SetChoice::All)]
        set: SetChoice,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Minimal polynomial of A_f and Jordan profiles per critical value.
    Jordan {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(short = 'f', value_name = "POLY")]
    f: String,
    #[arg(long, num_args = 2, value_names = ["A1", "A2"])]
    weights: Option<Vec<u32>>,
    /// Minimal polynomial in z of an algebraic coefficient.
    #[arg(long, value_name = "UNIPOLY")]
    minpoly: Option<String>,
    /// Continue when f is not tame but V_f is finite-dimensional.
    #[arg(long)]
    allow_non_tame: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetChoice {
    Trivial,
    Four,
    Syzygy,
    Minimal,
    All,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Failure {
            code: u8::try_from(e.exit_code()).unwrap_or(1),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn field_of(minpoly: Option<&str>) -> Result<Field, Failure> {
    match minpoly {
        None => Ok(Field::rationals()),
        Some(text) => {
            let coeffs = parse_univariate(text, "z").map_err(|e| Failure::usage(format!("--minpoly: {e}")))?;
            Field::extension(coeffs, "z").map_err(|e| Failure::usage(format!("--minpoly: {e}")))
        }
    }
}

struct Input {
    field: Field,
    f: Polynomial,
    opts: AnalyzeOptions,
}

fn read_input(a: &InputArgs) -> Result<Input, Failure> {
    let field = field_of(a.minpoly.as_deref())?;
    let f = parse_poly(&a.f, &field).map_err(|e| Failure::usage(format!("-f: {e}")))?;
    let weights = match a.weights.as_deref() {
        None => Weights::default(),
        Some([x, y]) => Weights::new(*x, *y).map_err(|e| Failure::usage(format!("--weights: {e}")))?,
        Some(_) => return Err(Failure::usage("--weights takes two values")),
    };
    Ok(Input {
        field,
        f,
        opts: AnalyzeOptions {
            weights,
            allow_non_tame: a.allow_non_tame,
        },
    })
}

fn emit_json<T: Serialize>(path: &PathBuf, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::usage(e.to_string()))? + "\n";
    write_out(Some(path), &text)
}

/// Writes to `path`, or stdout when it is absent or "-".
fn write_out(path: Option<&PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(input: &InputArgs, json: Option<&PathBuf>, timings: bool) -> Outcome {
    let inp = read_input(input)?;
    let analysis = pipeline::analyze(&inp.f, inp.opts)?;
    let rep = AnalysisReport::new(&analysis, &inp.field, timings);
    match json {
        Some(p) if p.as_os_str() == "-" => emit_json(p, &rep),
        Some(p) => {
            emit_json(p, &rep)?;
            print!("{}", rep.to_text());
            Ok(())
        }
        None => {
            print!("{}", rep.to_text());
            Ok(())
        }
    }
}

fn generators(input: &InputArgs, set: SetChoice, json: Option<&PathBuf>) -> Outcome {
    let inp = read_input(input)?;
    let analysis = pipeline::analyze(&inp.f, inp.opts)?;
    let rep = AnalysisReport::new(&analysis, &inp.field, false).generators;
    let mut chosen: Vec<(&str, GeneratorSetReport)> = Vec::new();
    let want = |s: SetChoice| set == s || set == SetChoice::All;
    if want(SetChoice::Trivial) {
        chosen.extend(rep.trivial.clone().map(|g| ("trivial", g)));
    }
    if want(SetChoice::Four) {
        chosen.extend(rep.four.clone().map(|g| ("four", g)));
    }
    if want(SetChoice::Syzygy) {
        chosen.push(("syzygy", rep.syzygy.clone()));
    }
    if want(SetChoice::Minimal) {
        chosen.push(("minimal", rep.minimal.clone()));
    }
    if let Some(p) = json {
        let map: serde_json::Map<String, serde_json::Value> = chosen
            .iter()
            .map(|(k, g)| ((*k).to_string(), serde_json::to_value(g).expect("serializable")))
            .collect();
        return emit_json(p, &map);
    }
    let mut out = String::new();
    for (name, g) in &chosen {
        out.push_str(&format!("{name} ({}):\n", g.count));
        for w in &g.forms {
            out.push_str(&format!("  {}\n", report::form_text(w)));
        }
    }
    write_out(None, &out)
}

#[derive(Serialize)]
struct JordanReport {
    f: String,
    mu: usize,
    minimal_polynomial: String,
    exponent: usize,
    factors: Vec<FactorReport>,
}

fn jordan(input: &InputArgs, json: Option<&PathBuf>) -> Outcome {
    let inp = read_input(input)?;
    let stage = |s: &'static str| {
        move |e: MilnorError| -> Failure {
            match e {
                MilnorError::NotTame(r) => AnalysisError::NotTame(r).into(),
                e => Failure::usage(format!("{s}: {e}")),
            }
        }
    };
    let ma = if inp.opts.allow_non_tame {
        milnor::milnor_algebra_finite(&inp.f, inp.opts.weights)
    } else {
        milnor::milnor_algebra(&inp.f, inp.opts.weights)
    }
    .map_err(stage("milnor_algebra"))?;
    let op = milnor::build_af(&ma);
    let p = milnor::min_poly_af(&op);
    let mut factors = Vec::new();
    for cf in milnor::critical_value_factors(&p) {
        let profile = milnor::jordan_profile(&op, &cf.factor).map_err(stage("jordan_profile"))?;
        factors.push(FactorReport {
            factor: cf.factor.to_string(),
            multiplicity: cf.multiplicity,
            root: cf.root.as_ref().map(ToString::to_string),
            jordan_blocks: report::blocks(&profile),
        });
    }
    let rep = JordanReport {
        f: inp.f.to_string(),
        mu: ma.mu,
        minimal_polynomial: p.to_string(),
        exponent: milnor::exponent(&p),
        factors,
    };
    if let Some(path) = json {
        return emit_json(path, &rep);
    }
    let mut out = format!(
        "mu = {}\nmin poly = {}\nexponent = {}\n",
        rep.mu, rep.minimal_polynomial, rep.exponent
    );
    for fr in &rep.factors {
        let blocks: Vec<String> = fr.jordan_blocks.iter().map(|b| format!("{}x{}", b.size, b.count)).collect();
        out.push_str(&format!("factor {}: {{{}}}\n", fr.factor, blocks.join(", ")));
    }
    write_out(None, &out)
}

fn plot_cmd(
    f: &str,
    minpoly: Option<&str>,
    svg: Option<&PathBuf>,
    window: f64,
    grid: usize,
    embed: Option<f64>,
) -> Outcome {
    let field = field_of(minpoly)?;
    let f = parse_poly(f, &field).map_err(|e| Failure::usage(format!("-f: {e}")))?;
    let params = PlotParams {
        radius: window,
        grid,
        embedding: embed,
    };
    let contour = plot::trace(&f, params).map_err(|e| Failure::usage(e.to_string()))?;
    let doc = plot::render_svg(&contour, &format!("{f} = 0"));
    write_out(svg, &doc)
}

#[derive(Serialize)]
struct FactJson {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct FixtureJson {
    name: &'static str,
    pass: bool,
    facts: Vec<FactJson>,
}

fn corpus_cmd(only: Option<&str>, expect_failure: bool, json: Option<&PathBuf>) -> Outcome {
    let fixtures: Vec<_> = corpus::fixtures()
        .into_iter()
        .filter(|fx| only.is_none_or(|o| fx.name == o))
        .collect();
    if fixtures.is_empty() {
        let names: Vec<_> = corpus::fixtures().iter().map(|f| f.name).collect();
        return Err(Failure::usage(format!("unknown fixture; available: {}", names.join(", "))));
    }
    let mut reports: Vec<FixtureReport> = fixtures.par_iter().map(corpus::run_fixture).collect();
    if expect_failure {
        for r in &mut reports {
            let failed = r.generation_failed == Some(true);
            r.facts.push(corpus::Fact {
                name: "generation failure expected".to_string(),
                pass: failed,
                detail: format!("{:?}", r.generation_failed),
            });
        }
    }
    let all_pass = reports.iter().all(FixtureReport::passed);
    if let Some(p) = json {
        let doc: Vec<FixtureJson> = reports
            .iter()
            .map(|r| FixtureJson {
                name: r.name,
                pass: r.passed(),
                facts: r
                    .facts
                    .iter()
                    .map(|f| FactJson {
                        name: f.name.clone(),
                        pass: f.pass,
                        detail: f.detail.clone(),
                    })
                    .collect(),
            })
            .collect();
        emit_json(p, &doc)?;
    }
    if json.is_none_or(|p| p.as_os_str() != "-") {
        let mut out = String::new();
        for r in &reports {
            let ok = r.facts.iter().filter(|f| f.pass).count();
            out.push_str(&format!(
                "{:<12} {:<4} {:>3}/{:<3} facts\n",
                r.name,
                if r.passed() { "PASS" } else { "FAIL" },
                ok,
                r.facts.len()
            ));
            for f in r.facts.iter().filter(|f| !f.pass) {
                out.push_str(&format!("    failed: {} {}\n", f.name, f.detail));
            }
        }
        out.push_str(&format!(
            "{} of {} fixtures passed\n",
            reports.iter().filter(|r| r.passed()).count(),
            reports.len()
        ));
        write_out(None, &out)?;
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "corpus failures".to_string(),
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let outcome = match &cli.command {
        Command::Analyze { input, json, timings } => analyze(input, json.as_ref(), *timings),
        Command::Plot {
            f,
            minpoly,
            svg,
            window,
            grid,
            embed,
        } => plot_cmd(f, minpoly.as_deref(), svg.as_ref(), *window, *grid, *embed),
        Command::Corpus {
            only,
            expect_generation_failure,
            json,
        } => corpus_cmd(only.as_deref(), *expect_generation_failure, json.as_ref()),
        Command::Generators { input, set, json } => generators(input, *set, json.as_ref()),
        Command::Jordan { input, json } => jordan(input, json.as_ref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
