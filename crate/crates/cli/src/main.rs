use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use majorkit_core::birkhoff::{
    birkhoff_decompose, random_column_stochastic, random_distribution, random_doubly_stochastic, random_zero_sum,
};
use majorkit_core::io::{
    bridge_to_json, certificate_to_json, decomposition_to_json, form_to_json, fuzz_report_to_json, matrix_from_text,
    matrix_to_csv, matrix_to_json, operator_from_json, permutation_to_json, rational_to_json, suite_report_to_json,
    vector_from_text, vector_to_json, verdict_to_json, with_schema,
};
use majorkit_core::matrix::{check_directional, check_strong, check_strong_equiv_verdict, check_weak};
use majorkit_core::preservers::{
    check_condition_alpha, classify_prob_preserver, classify_strong_preserver, classify_vector_preserver,
    classify_zero_sum_preserver, extract_cs_preserver_form, PreserverForm,
};
use majorkit_core::propcheck::{
    default_strong_checker, fuzz_preserver, lemma_suite, Domain, Operator, RelationKind, RelationSpec, SuiteConfig,
};
use majorkit_core::reduce::{reduce, theta, zero_one_bridge, Anchor, ReductionMethod, ReductionOptions};
use majorkit_core::vector::{
    check_vector_equiv, check_vector_majorization, hlp_witness, reduce_vector_to_distributions,
};
use majorkit_core::{parse_rational, Error, RMatrix, RVector, Rational};

/// Exact-rational majorization toolkit.
///
/// Numbers are read and written as "p/q" or "p". Decimal input is rejected.
/// File arguments accept "-" for standard input. Exit status: 0 when the
/// relation holds (or is not refuted), the classification succeeds or the
/// suite passes; 1 when it fails, no form matches or a counterexample is
/// found; 2 on usage or input errors.
#[derive(Parser, Debug)]
#[command(name = "majorkit", version)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Vector,
    Strong,
    Weak,
    Directional,
    Equiv,
    /// All five conditions for a pair of (0,1) matrices.
    Bridge,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Vector,
    Strong,
    Weak,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReduceKind {
    Vector,
    Matrix,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Shift,
    Diag,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AnchorArg {
    A,
    B,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Ds,
    Cs,
    Zerosum,
    Dist,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Vector,
    Prob,
    Zerosum,
    Alpha,
    Strong,
    Cs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Vector,
    Strong,
    Weak,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    All,
    #[value(alias = "distributions")]
    Dist,
    #[value(alias = "zero-sum")]
    Zerosum,
    #[value(alias = "column-stochastic")]
    Cs,
    #[value(name = "01", alias = "zero-one")]
    ZeroOne,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a majorization relation between A and B.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        #[arg(short = 'A', value_name = "FILE")]
        a: PathBuf,
        #[arg(short = 'B', value_name = "FILE")]
        b: PathBuf,
        /// Random directions after the {0,1} pass (directional only).
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a stochastic matrix D with A = DB.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(short = 'A', value_name = "FILE")]
        a: PathBuf,
        #[arg(short = 'B', value_name = "FILE")]
        b: PathBuf,
    },
    /// Reduce a pair to column-stochastic (or distribution) form.
    Reduce {
        #[arg(long, value_enum, default_value_t = Method::Shift)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ReduceKind::Matrix)]
        kind: ReduceKind,
        /// Pin the shift λ (p/q).
        #[arg(long)]
        lambda: Option<String>,
        /// Pin the scale μ (p/q, shift method only).
        #[arg(long)]
        mu: Option<String>,
        /// Matrix whose column sums fix v or D.
        #[arg(long, value_enum, default_value_t = AnchorArg::B)]
        anchor: AnchorArg,
        #[arg(short = 'A', value_name = "FILE")]
        a: PathBuf,
        #[arg(short = 'B', value_name = "FILE")]
        b: PathBuf,
    },
    /// Normalize every column to sum one; zero columns become e/n.
    Theta {
        #[arg(short = 'A', value_name = "FILE")]
        a: PathBuf,
    },
    /// Birkhoff–von Neumann decomposition of a doubly stochastic matrix.
    Birkhoff {
        #[arg(short = 'D', value_name = "FILE")]
        d: PathBuf,
    },
    /// Seeded random stochastic matrices and vectors.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(short = 'm', default_value_t = 1)]
        m: usize,
        /// Number of permutations mixed (ds only).
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Match an operator against the preserver normal forms.
    Classify {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_name = "FILE")]
        op: PathBuf,
    },
    /// Search for a pair whose order the operator does not preserve.
    Fuzz {
        #[arg(long, value_name = "FILE")]
        op: PathBuf,
        #[arg(long, value_enum)]
        relation: RelationArg,
        #[arg(long, value_enum, default_value_t = DomainArg::All)]
        domain: DomainArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the invariance property suite.
    Suite {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Output {
    json: Value,
    csv: Option<String>,
    code: u8,
}

impl Output {
    fn new(json: Value, code: u8) -> Self {
        Output { json, csv: None, code }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Core(e) => (core_error_kind(e), e.to_string()),
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Io(m) => ("io", m.clone()),
        };
        with_schema(json!({ "error": { "kind": kind, "message": message } }))
    }
}

fn core_error_kind(e: &Error) -> &'static str {
    match e {
        Error::ShapeMismatch { .. } => "shape-mismatch",
        Error::ParseRational { .. } => "malformed-rational",
        Error::Parse(_) => "malformed-input",
        Error::Precondition(_) => "precondition",
        Error::ZeroSumColumn { .. } => "zero-sum-column",
        Error::TooManyColumns { .. } => "too-many-columns",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn read(&mut self, path: &PathBuf) -> Result<String, CliError> {
        if path.as_os_str() == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    fn matrix(&mut self, path: &PathBuf) -> Result<RMatrix, CliError> {
        Ok(matrix_from_text(&self.read(path)?)?)
    }

    fn vector(&mut self, path: &PathBuf) -> Result<RVector, CliError> {
        Ok(vector_from_text(&self.read(path)?)?)
    }

    fn operator(&mut self, path: &PathBuf) -> Result<Operator, CliError> {
        let text = self.read(path)?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| CliError::Core(Error::Parse(format!("operator JSON: {e}"))))?;
        Ok(operator_from_json(&v)?)
    }
}

fn parse_opt(s: &Option<String>) -> Result<Option<Rational>, CliError> {
    s.as_deref().map(parse_rational).transpose().map_err(CliError::from)
}

fn exit_for(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let mut inputs = Inputs { stdin_used: false };
    match cli.command {
        Command::Check {
            kind,
            a,
            b,
            budget,
            seed,
        } => {
            if kind == CheckKind::Vector {
                let (va, vb) = (inputs.vector(&a)?, inputs.vector(&b)?);
                let holds = check_vector_majorization(&va, &vb)?;
                let mut out = json!({ "relation": "vector", "result": if holds { "holds" } else { "fails" } });
                if let Some(p) = check_vector_equiv(&va, &vb) {
                    out["equivalent_by"] = permutation_to_json(&p);
                }
                let csv = format!("vector,{}\n", if holds { "holds" } else { "fails" });
                return Ok(Output::new(out, exit_for(holds)).with_csv(csv));
            }
            let (ma, mb) = (inputs.matrix(&a)?, inputs.matrix(&b)?);
            if kind == CheckKind::Bridge {
                let r = zero_one_bridge(&ma, &mb, budget, seed)?;
                return Ok(Output::new(bridge_to_json(&r), exit_for(r.strong)));
            }
            let verdict = match kind {
                CheckKind::Strong => check_strong(&ma, &mb)?,
                CheckKind::Weak => check_weak(&ma, &mb)?,
                CheckKind::Directional => check_directional(&ma, &mb, budget, seed)?,
                CheckKind::Equiv => check_strong_equiv_verdict(&ma, &mb)?,
                CheckKind::Vector | CheckKind::Bridge => unreachable!("handled above"),
            };
            let json = verdict_to_json(&verdict);
            let mut csv = format!(
                "{},{}\n",
                verdict.relation.as_str(),
                json["result"].as_str().unwrap_or("")
            );
            if let Some(w) = verdict.witness() {
                csv.push_str(&matrix_to_csv(w));
            }
            Ok(Output::new(json, exit_for(!verdict.is_negative())).with_csv(csv))
        }
        Command::Witness { kind, a, b } => match kind {
            WitnessKind::Vector => {
                let (va, vb) = (inputs.vector(&a)?, inputs.vector(&b)?);
                if !check_vector_majorization(&va, &vb)? {
                    return Ok(Output::new(json!({ "relation": "vector", "result": "fails" }), 1));
                }
                let w = hlp_witness(&va, &vb)?;
                let chain: Vec<Value> = w
                    .chain
                    .iter()
                    .map(|t| json!({ "i": t.i + 1, "j": t.j + 1, "t": rational_to_json(&t.t) }))
                    .collect();
                let csv = matrix_to_csv(&w.matrix);
                Ok(Output::new(
                    json!({ "relation": "vector", "result": "holds", "witness": matrix_to_json(&w.matrix), "chain": chain }),
                    0,
                )
                .with_csv(csv))
            }
            WitnessKind::Strong | WitnessKind::Weak => {
                let (ma, mb) = (inputs.matrix(&a)?, inputs.matrix(&b)?);
                let verdict = if kind == WitnessKind::Strong {
                    check_strong(&ma, &mb)?
                } else {
                    check_weak(&ma, &mb)?
                };
                let csv = verdict.witness().map(matrix_to_csv).unwrap_or_default();
                Ok(Output::new(verdict_to_json(&verdict), exit_for(verdict.holds())).with_csv(csv))
            }
        },
        Command::Reduce {
            method,
            kind,
            lambda,
            mu,
            anchor,
            a,
            b,
        } => {
            if kind == ReduceKind::Vector {
                if lambda.is_some() || mu.is_some() {
                    return Err(CliError::Usage("--lambda and --mu apply to matrix reductions".into()));
                }
                let (va, vb) = (inputs.vector(&a)?, inputs.vector(&b)?);
                let r = reduce_vector_to_distributions(&va, &vb)?;
                let csv = format!(
                    "{}\n{}\n",
                    r.a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    r.b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                );
                return Ok(Output::new(
                    json!({
                        "a": vector_to_json(&r.a),
                        "b": vector_to_json(&r.b),
                        "lambda": rational_to_json(&r.lambda),
                        "scale": rational_to_json(&r.scale),
                    }),
                    0,
                )
                .with_csv(csv));
            }
            let (ma, mb) = (inputs.matrix(&a)?, inputs.matrix(&b)?);
            let opts = ReductionOptions {
                lambda: parse_opt(&lambda)?,
                mu: parse_opt(&mu)?,
                anchor: match anchor {
                    AnchorArg::A => Anchor::A,
                    AnchorArg::B => Anchor::B,
                },
            };
            let method = match method {
                Method::Shift => ReductionMethod::ShiftNormalize,
                Method::Diag => ReductionMethod::DiagScale,
            };
            let r = reduce(&ma, &mb, method, &opts)?;
            let csv = format!("{}\n{}", matrix_to_csv(&r.a), matrix_to_csv(&r.b));
            Ok(Output::new(
                json!({
                    "A": matrix_to_json(&r.a),
                    "B": matrix_to_json(&r.b),
                    "certificate": certificate_to_json(&r.certificate),
                }),
                0,
            )
            .with_csv(csv))
        }
        Command::Theta { a } => {
            let t = theta(&inputs.matrix(&a)?)?;
            Ok(Output::new(json!({ "theta": matrix_to_json(&t) }), 0).with_csv(matrix_to_csv(&t)))
        }
        Command::Birkhoff { d } => {
            let dec = birkhoff_decompose(&inputs.matrix(&d)?)?;
            let csv: String = dec
                .terms
                .iter()
                .map(|(w, p)| {
                    let imgs: Vec<String> = p.as_map().iter().map(|x| (x + 1).to_string()).collect();
                    format!("{w},{}\n", imgs.join(" "))
                })
                .collect();
            Ok(Output::new(decomposition_to_json(&dec), 0).with_csv(csv))
        }
        Command::Gen { kind, n, m, k, seed } => {
            if n == 0 || m == 0 || k == 0 {
                return Err(CliError::Usage("-n, -m and -k must be positive".into()));
            }
            let mat = match kind {
                GenKind::Ds => random_doubly_stochastic(n, k, seed),
                GenKind::Cs => random_column_stochastic(n, m, seed),
                GenKind::Zerosum => random_zero_sum(n, seed).to_column_matrix(),
                GenKind::Dist => random_distribution(n, seed).to_column_matrix(),
            };
            let json = match kind {
                GenKind::Ds | GenKind::Cs => json!({ "matrix": matrix_to_json(&mat) }),
                GenKind::Zerosum | GenKind::Dist => json!({ "vector": vector_to_json(&mat.column(0)) }),
            };
            Ok(Output::new(json, 0).with_csv(matrix_to_csv(&mat)))
        }
        Command::Classify { target, op } => {
            let op = inputs.operator(&op)?;
            classify(target, &op)
        }
        Command::Fuzz {
            op,
            relation,
            domain,
            trials,
            seed,
        } => {
            let op = inputs.operator(&op)?;
            let spec = RelationSpec::new(
                match relation {
                    RelationArg::Vector => RelationKind::Vector,
                    RelationArg::Strong => RelationKind::Strong,
                    RelationArg::Weak => RelationKind::Weak,
                },
                match domain {
                    DomainArg::All => Domain::All,
                    DomainArg::Dist => Domain::Distributions,
                    DomainArg::Zerosum => Domain::ZeroSum,
                    DomainArg::Cs => Domain::ColumnStochastic,
                    DomainArg::ZeroOne => Domain::ZeroOne,
                },
            );
            let op = match (&op, spec.relation) {
                (Operator::Grid(g), RelationKind::Vector) if g.m() == 1 => {
                    Operator::Vector(majorkit_core::VectorOperator::new(g.block(0, 0).clone())?)
                }
                _ => op,
            };
            let report = fuzz_preserver(&op, spec, trials, seed)?;
            let found = report.counterexample.is_some();
            let csv = format!(
                "{},{},{}\n",
                spec,
                report.trials_run,
                if found { "counterexample" } else { "none" }
            );
            Ok(Output::new(fuzz_report_to_json(&report), exit_for(!found)).with_csv(csv))
        }
        Command::Suite {
            max_n,
            max_m,
            cases,
            seed,
        } => {
            if max_n == 0 || max_m == 0 {
                return Err(CliError::Usage("--max-n and --max-m must be positive".into()));
            }
            let cfg = SuiteConfig {
                seed,
                max_n,
                max_m,
                cases,
            };
            let report = lemma_suite(&cfg, &default_strong_checker)?;
            let csv: String = report
                .properties
                .iter()
                .map(|p| {
                    format!(
                        "{},{},{},{}\n",
                        p.name,
                        if p.passed() { "pass" } else { "fail" },
                        p.failures,
                        p.replay_seed
                    )
                })
                .collect();
            Ok(Output::new(suite_report_to_json(&report), exit_for(report.passed())).with_csv(csv))
        }
    }
}

fn classify(target: Target, op: &Operator) -> Result<Output, CliError> {
    let vector_op = |op: &Operator| match op {
        Operator::Vector(v) => Ok(v.clone()),
        Operator::Grid(_) => Err(CliError::Usage(
            format!("target {target:?} needs a \"vecop\" operator").to_lowercase(),
        )),
    };
    let grid_op = |op: &Operator| match op {
        Operator::Grid(g) => Ok(g.clone()),
        Operator::Vector(v) => majorkit_core::OperatorGrid::new(vec![vec![v.matrix.clone()]]).map_err(CliError::from),
    };
    if target == Target::Alpha {
        let x = vector_op(op)?;
        return Ok(match check_condition_alpha(&x) {
            Some(a) => Output::new(json!({ "condition": "alpha", "alpha": rational_to_json(&a) }), 0),
            None => Output::new(json!({ "condition": "alpha", "alpha": null }), 1),
        });
    }
    let form = match target {
        Target::Vector => classify_vector_preserver(&vector_op(op)?),
        Target::Prob => classify_prob_preserver(&vector_op(op)?),
        Target::Zerosum => classify_zero_sum_preserver(&vector_op(op)?).map(PreserverForm::ZeroSum),
        Target::Strong => classify_strong_preserver(&grid_op(op)?),
        Target::Cs => extract_cs_preserver_form(&grid_op(op)?).map(PreserverForm::Cs),
        Target::Alpha => unreachable!("handled above"),
    };
    let Some(form) = form else {
        return Ok(Output::new(json!({ "form": null, "verified": false }), 1).with_csv("none\n".into()));
    };
    let verified = match (&form, op) {
        (f, Operator::Vector(v)) if f.to_vector_operator().is_some() => f.to_vector_operator().as_ref() == Some(v),
        (f, _) => f.to_grid() == Some(grid_op(op)?),
    };
    let ok = match &form {
        PreserverForm::Cs(c) => c.constraint_ok,
        _ => true,
    };
    let mut json = form_to_json(&form);
    json["verified"] = json!(verified);
    let csv = format!("{},{}\n", form.tag(), verified);
    Ok(Output::new(json, exit_for(ok && verified)).with_csv(csv))
}

fn emit(out: &Output, format: Format) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    match (format, &out.csv) {
        (Format::Csv, Some(csv)) => stdout.write_all(csv.as_bytes()),
        _ => {
            let body = serde_json::to_string_pretty(&with_schema(out.json.clone())).expect("serializable");
            writeln!(stdout, "{body}")
        }
    }
}

fn fail(err: &CliError) -> ExitCode {
    let body = serde_json::to_string(&err.to_json()).expect("serializable");
    let _ = writeln!(io::stderr(), "{body}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::Usage(e.render().to_string().trim().to_string()));
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            if let Err(e) = emit(&out, format) {
                return fail(&CliError::Io(e.to_string()));
            }
            ExitCode::from(out.code)
        }
        Err(e) => fail(&e),
    }
}
