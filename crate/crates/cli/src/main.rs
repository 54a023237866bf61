use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use stirsum::bernoulli::{
    bernoulli_at_negative, bernoulli_at_nonneg, bernoulli_general, bernoulli_number,
    bernoulli_number_harmonic, bernoulli_poly, bernoulli_shift_harmonic,
};
use stirsum::exact::{as_small_nonneg, format_rat, parse_rat};
use stirsum::powersum::expand_binomial_basis;
use stirsum::stirling::{StirlingKind, StirlingTable};
use stirsum::verify::{run_suites, Suite, SuiteConfig};
use stirsum::FormulaId;

#[derive(Parser)]
#[command(
    name = "stirsum",
    version,
    about = "Exact power sums, generalized Stirling numbers and Bernoulli polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stirling numbers of the second kind: one value, or the triangle up to k
    Stirling(StirlingArgs),
    /// S_k(n) = 1^k + ... + n^k by a chosen closed form
    Powersum(PowersumArgs),
    /// S_k(n) written in the binomial basis C(n+1-r, j+1)
    Expand(ExpandArgs),
    /// Bernoulli numbers and polynomials
    Bernoulli(BernoulliArgs),
    /// Run the identity-verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ordinary,
    R,
    Dual,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long, value_enum, default_value = "ordinary")]
    kind: KindArg,
    #[arg(short = 'k')]
    k: u32,
    /// Omit to print the whole triangle for 0 <= j <= i <= k
    #[arg(short = 'j')]
    j: Option<u32>,
    #[arg(short = 'r', long = "r")]
    r: Option<u32>,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Args)]
struct PowersumArgs {
    #[arg(short = 'k')]
    k: u32,
    #[arg(short = 'n')]
    n: u32,
    /// One of brute, f1, f2, th1, th2, reqn, reqn1, negn, con1, con2, con3, harmonic
    #[arg(long, default_value = "brute")]
    formula: String,
    #[arg(short = 'r', long = "r")]
    r: Option<u32>,
    #[arg(short = 'm', long = "m")]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(short = 'k')]
    k: u32,
    #[arg(short = 'r', long = "r", default_value_t = 1)]
    r: u32,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BernoulliMode {
    /// B_k by the recurrence
    Number,
    /// B_k(x) as a polynomial
    Poly,
    /// B_k(x) at a rational point
    Eval,
    /// B_k by the harmonic-number formula
    Harmonic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalRoute {
    Direct,
    Nonneg,
    Negative,
    General,
    ShiftHarmonic,
}

#[derive(Args)]
struct BernoulliArgs {
    #[arg(value_enum)]
    mode: BernoulliMode,
    #[arg(short = 'k')]
    k: u32,
    /// Evaluation point: integer, p/q, or terminating decimal
    #[arg(short = 'x', allow_hyphen_values = true)]
    x: Option<String>,
    /// Formula used by `eval`
    #[arg(long, value_enum, default_value = "direct")]
    via: EvalRoute,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    kmax: u32,
    #[arg(long, default_value_t = 20)]
    nmax: u32,
    #[arg(long, default_value_t = 8)]
    rmax: u32,
    #[arg(long, default_value_t = 8)]
    mmax: u32,
    /// Comma-separated suite names; an empty string selects none
    #[arg(long)]
    suites: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report here instead of standard output
    #[arg(long)]
    report: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<stirsum::Error> for Failure {
    fn from(e: stirsum::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn require_format(
    format: OutputFormat,
    allowed: &[OutputFormat],
    cmd: &str,
) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{cmd} does not support --format {}",
            format!("{format:?}").to_lowercase()
        )))
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn cmd_stirling(a: StirlingArgs) -> CmdResult {
    use OutputFormat::*;
    require_format(a.format, &[Plain, Json, Csv], "stirling")?;
    let kind = match (a.kind, a.r) {
        (KindArg::Ordinary, _) => StirlingKind::Ordinary,
        (KindArg::R, Some(r)) => StirlingKind::RShifted(r),
        (KindArg::Dual, Some(r)) => StirlingKind::Dual(r),
        (_, None) => return Err(Failure::Usage("--kind r/dual requires -r".into())),
    };
    let kind_json = |v: Value| {
        let mut v = v;
        v["kind"] = json!(format!("{:?}", a.kind).to_lowercase());
        if let Some(r) = a.r.filter(|_| kind != StirlingKind::Ordinary) {
            v["r"] = json!(r);
        }
        v
    };
    match a.j {
        Some(j) => {
            let value = kind.value(a.k, j);
            match a.format {
                Plain => println!("{value}"),
                Csv => println!("k,j,value\n{},{j},{value}", a.k),
                _ => print_json(&kind_json(
                    json!({"k": a.k, "j": j, "value": value.to_string()}),
                )),
            }
        }
        None => {
            let table = StirlingTable::build(kind, a.k);
            match a.format {
                Plain => {
                    for row in table.rows() {
                        let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
                        println!("{}", cells.join(" "));
                    }
                }
                Csv => {
                    println!("k,j,value");
                    for (k, row) in table.rows().iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            println!("{k},{j},{v}");
                        }
                    }
                }
                _ => {
                    let rows: Vec<Vec<String>> = table
                        .rows()
                        .iter()
                        .map(|row| row.iter().map(BigInt::to_string).collect())
                        .collect();
                    print_json(&kind_json(json!({"max_k": a.k, "rows": rows})));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_powersum(a: PowersumArgs) -> CmdResult {
    use OutputFormat::*;
    require_format(a.format, &[Plain, Json], "powersum")?;
    if !FormulaId::NAMES.contains(&a.formula.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown formula '{}'; expected one of {}",
            a.formula,
            FormulaId::NAMES.join(", ")
        )));
    }
    let id =
        FormulaId::from_parts(&a.formula, a.r, a.m).map_err(|e| Failure::Usage(e.to_string()))?;
    let value = id.evaluate(a.k, a.n)?;
    match a.format {
        Plain => println!("{value}"),
        _ => print_json(&json!({
            "k": a.k,
            "n": a.n,
            "formula": id.to_string(),
            "value": value.to_string(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_expand(a: ExpandArgs) -> CmdResult {
    use OutputFormat::*;
    require_format(a.format, &[Plain, Json, Latex], "expand")?;
    let e = expand_binomial_basis(a.k, a.r);
    match a.format {
        Plain => println!("{}", e.to_plain()),
        Latex => println!("{}", e.to_latex()),
        _ => print_json(&serde_json::to_value(&e).expect("json")),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bernoulli(a: BernoulliArgs) -> CmdResult {
    use OutputFormat::*;
    require_format(a.format, &[Plain, Json], "bernoulli")?;
    let mode = format!("{:?}", a.mode).to_lowercase();
    let emit = |value: &BigRational, extra: Value| {
        if a.format == Plain {
            println!("{}", format_rat(value));
        } else {
            let mut v = json!({"mode": mode, "k": a.k, "value": format_rat(value)});
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
                dst.extend(src);
            }
            print_json(&v);
        }
    };
    match a.mode {
        BernoulliMode::Number => emit(&bernoulli_number(a.k), json!({})),
        BernoulliMode::Harmonic => emit(&bernoulli_number_harmonic(a.k), json!({})),
        BernoulliMode::Poly => {
            let p = bernoulli_poly(a.k);
            if a.format == Plain {
                println!("{p}");
            } else {
                print_json(&json!({"mode": mode, "k": a.k, "coefficients": p.coeff_strings()}));
            }
        }
        BernoulliMode::Eval => {
            let raw =
                a.x.as_deref()
                    .ok_or_else(|| Failure::Usage("bernoulli eval requires -x".into()))?;
            let x = parse_rat(raw)
                .ok_or_else(|| Failure::Usage(format!("cannot parse -x '{raw}' as a rational")))?;
            let value = match a.via {
                EvalRoute::Direct => bernoulli_poly(a.k).eval(&x),
                EvalRoute::General => bernoulli_general(a.k, &x)?,
                EvalRoute::ShiftHarmonic => {
                    bernoulli_shift_harmonic(a.k, &(&x + BigRational::from_integer(1.into())))?
                }
                EvalRoute::Nonneg => {
                    let r = as_small_nonneg(&x).ok_or_else(|| {
                        Failure::Runtime("--via nonneg needs a nonnegative integer x".into())
                    })?;
                    bernoulli_at_nonneg(a.k, r)?
                }
                EvalRoute::Negative => {
                    let r = if x.is_zero() || x.is_negative() {
                        as_small_nonneg(&-x.clone())
                    } else {
                        None
                    }
                    .ok_or_else(|| {
                        Failure::Runtime("--via negative needs a nonpositive integer x".into())
                    })?;
                    bernoulli_at_negative(a.k, r)?
                }
            };
            let via = format!("{:?}", a.via).to_lowercase();
            emit(&value, json!({"x": format_rat(&x), "via": via}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    use OutputFormat::*;
    require_format(a.format, &[Plain, Json], "verify")?;
    let suites = match a.suites.as_deref() {
        None => Suite::ALL.into_iter().collect(),
        Some(list) => Suite::parse_list(list).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let config = SuiteConfig {
        k_max: a.kmax,
        n_max: a.nmax,
        r_max: a.rmax,
        m_max: a.mmax,
        suites,
        parallelism: a.jobs,
    };
    let report = run_suites(&config);
    let json = report.to_json();
    match &a.report {
        Some(path) => {
            fs::write(path, format!("{json}\n"))
                .map_err(|e| Failure::Runtime(format!("cannot write report to {path}: {e}")))?;
            if a.format == Json {
                println!("{json}");
            } else {
                println!("{report}");
            }
        }
        None if a.format == Json => println!("{json}"),
        None => println!("{report}"),
    }
    Ok(if report.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Stirling(a) => cmd_stirling(a),
        Command::Powersum(a) => cmd_powersum(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Bernoulli(a) => cmd_bernoulli(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
