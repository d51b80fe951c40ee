mod args;
mod problem;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use reflectode::analysis::{thresholds, Thresholds};
use reflectode::{
    closed_form_c31, closed_form_c32, compare, construct, degenerate_t0, green_grid, sign_report, solve, CaseTag,
    Error, GreenKernel, HomogeneousPair, Hypothesis, NthProblem,
};
use serde::Serialize;

use args::{Cli, Command, GreenArgs, Method, NsolveArgs, ProblemArgs, SolveArgs, ValidateArgs};
use problem::Resolved;

/// Failure of a subcommand; `Io` covers broken pipes and unwritable sidecars.
enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: &'a str,
    message: String,
}

fn report(kind: &str, message: String) {
    let line = serde_json::to_string(&ErrorObject { error: kind, message }).expect("error object serializes");
    eprintln!("{line}");
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn emit_csv(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> Outcome {
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Classification {
    case: CaseTag,
    omega: f64,
    degenerate_t0: reflectode::DegenerateSet,
    thresholds: Thresholds,
}

fn classify(args: &ProblemArgs) -> Outcome {
    let resolved = Resolved::from_args(args)?;
    let coeffs = resolved.coeffs()?;
    let case = coeffs.classify()?;
    emit_json(&Classification {
        case: case.tag,
        omega: case.omega,
        degenerate_t0: degenerate_t0(coeffs.a, coeffs.b)?,
        thresholds: thresholds(coeffs.a, coeffs.b)?,
    })
}

fn green(args: &GreenArgs) -> Outcome {
    let resolved = Resolved::from_args(&args.problem)?;
    let kernel = GreenKernel::new(resolved.coeffs()?)?;
    let t_range = resolved.window(&args.grid)?;
    let s_range = match &args.s_range {
        Some(r) => problem::pair("--s-range", r)?,
        None => t_range,
    };
    let grid = green_grid(&kernel, t_range, s_range, args.grid.n)?;
    let n = grid.s.len();
    emit_csv(
        "t,s,G",
        grid.values
            .iter()
            .enumerate()
            .map(|(k, &g)| vec![grid.t[k / n], grid.s[k % n], g]),
    )
}

#[derive(Serialize)]
struct Sidecar {
    lambda: f64,
    ubar_t0: f64,
    case: CaseTag,
}

fn solve_cmd(args: &SolveArgs) -> Outcome {
    let resolved = Resolved::from_args(&args.problem)?;
    let problem = resolved.problem()?;
    let points = resolved.points(&args.grid, &args.eval)?;
    let solution = match args.method {
        Method::Green => solve(&problem, resolved.tol)?,
        Method::ClosedForm => match problem.coeffs.classify()?.tag {
            CaseTag::C3plus => closed_form_c31(&problem, resolved.tol)?,
            CaseTag::C3minus => closed_form_c32(&problem, resolved.tol)?,
            tag => {
                return Err(Error::InvalidInput(format!(
                    "closed forms need a = b or a = -b; (a, b) is in regime {tag}"
                ))
                .into())
            }
        },
    };
    let values = solution.eval_many(&points)?;
    if let Some(path) = &args.sidecar {
        let sidecar = Sidecar {
            lambda: solution.lambda(),
            ubar_t0: solution.ubar_t0(),
            case: solution.case().tag,
        };
        let text = serde_json::to_string(&sidecar).map_err(io::Error::from)?;
        fs::write(path, text + "\n")?;
    }
    emit_csv("t,u", points.iter().zip(values).map(|(&t, u)| vec![t, u]))
}

fn region(args: &ProblemArgs) -> Outcome {
    let coeffs = Resolved::from_args(args)?.coeffs()?;
    emit_json(&sign_report(coeffs.a, coeffs.b)?)
}

#[derive(Serialize)]
struct Validation {
    sup_error: f64,
    residual_sup: f64,
    pass: bool,
}

fn validate(args: &ValidateArgs) -> Outcome {
    let resolved = Resolved::from_args(&args.problem)?;
    let problem = resolved.problem()?;
    let solution = solve(&problem, resolved.tol)?;
    let result = compare(|t| solution.u(t), &problem, args.t_max, args.step, args.stride, 100, 1e-5)?;
    emit_json(&Validation {
        sup_error: result.sup_error,
        residual_sup: result.residual_sup,
        pass: result.sup_error <= args.max_error && result.residual_sup <= args.max_residual,
    })
}

fn nsolve(args: &NsolveArgs) -> Outcome {
    let resolved = Resolved::from_args(&args.problem)?;
    let h = reflectode::parse_forcing(&resolved.h).map_err(Error::from)?.to_forcing();
    let problem = if args.a_coeffs.is_empty() && args.b_coeffs.is_empty() {
        NthProblem::first_order(resolved.coeffs()?, h, resolved.t0, resolved.c)?
    } else {
        NthProblem::new(args.a_coeffs.clone(), args.b_coeffs.clone(), h, resolved.t0, resolved.c)?
    };
    if problem.order() != 1 {
        return Err(Error::InvalidInput(format!(
            "no built-in auxiliary pair for order {}; only first-order problems are supported here",
            problem.order()
        ))
        .into());
    }
    let hypothesis: Hypothesis = args.hypothesis.parse()?;
    let pair = HomogeneousPair::new(reflectode::Coefficients::new(problem.a()[0], problem.b()[0])?)?;
    let solution = construct(&problem, pair, hypothesis, resolved.tol)?;
    let points = resolved.points(&args.grid, &args.eval)?;
    let values: Vec<f64> = points.iter().map(|&t| solution.u(t)).collect::<Result<_, _>>()?;
    emit_csv("t,u", points.iter().zip(values).map(|(&t, u)| vec![t, u]))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify(args) => classify(args),
        Command::Green(args) => green(args),
        Command::Solve(args) => solve_cmd(args),
        Command::Region(args) => region(args),
        Command::Validate(args) => validate(args),
        Command::Nsolve(args) => nsolve(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("usage", e.render().to_string().trim_end().to_string());
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            report("io", e.to_string());
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            report(e.kind(), e.to_string());
            ExitCode::from(if matches!(e, Error::NonUnique { .. }) { 2 } else { 1 })
        }
    }
}
