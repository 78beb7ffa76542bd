use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use newton_strata::affine::{self, AffineData, LambdaGElement};
use newton_strata::chamber::{self, NewtonPoint};
use newton_strata::rational::{parse_ext_rationals, parse_rationals};
use newton_strata::torus_eval::{self, RandomConfig, TorusPoint};
use newton_strata::{strata, Error, Rational, RootDatum, ValuationVector};

mod text;

#[derive(Parser, Debug)]
#[command(name = "newton-strata", version, about = "Newton strata in the adjoint quotient of a reductive group")]
struct Cli {
    /// Group, e.g. GL3, B2, Gext(E6), GL2*T1, Gext(A2;m=-e1)
    #[arg(long, global = true, default_value = "GL2")]
    group: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Rnu,
    Defect,
    Chars,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum, simple roots and component group.
    Describe,
    /// The retraction r(d); `-inf` allowed in the first l slots.
    Retract {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Newton point of the stratum containing an integral valuation vector.
    Stratum {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Conditions cutting out the stratum of mu (or its closure).
    Conditions {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        closed: bool,
    },
    /// Dimension of the closed stratum of mu.
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Codimension of the stratum of nu in the closed stratum of mu.
    Codim {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Use the fundamental-weight formula; mu must be an integral dominant coweight.
        #[arg(long)]
        chai: bool,
    },
    /// All Newton points below mu, with the Hasse diagram.
    NewtonPoints {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Defect of an element of Lambda_G, given by an integral lift (length n)
    /// or by its torus coordinates (length n - l).
    Defect {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// d_G of a Newton point.
    Dg {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Evaluate the c_i on a torus point given as `c*pi^(p/q)` tokens.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<Output, Failure>;

enum Output {
    Json(Value),
    Raw(String),
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serializes")
}

fn newton_point(d: &RootDatum, s: &str) -> std::result::Result<NewtonPoint, Failure> {
    let x = parse_rationals(s)?;
    d.check_dim(x.len())?;
    chamber::is_newton_point(d, &x).ok_or_else(|| Failure::Usage(format!("({s}) is not a Newton point")))
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

#[derive(Serialize)]
struct RetractOut {
    y: Vec<String>,
    levi: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slopes: Option<Vec<String>>,
}

#[derive(Serialize)]
struct PointOut<'a> {
    #[serde(flatten)]
    point: &'a NewtonPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    slopes: Option<Vec<String>>,
}

fn point_out<'a>(d: &RootDatum, p: &'a NewtonPoint) -> PointOut<'a> {
    PointOut { point: p, slopes: chamber::slopes(d, &p.point).map(|s| strs(&s)) }
}

#[derive(Serialize)]
struct ComponentOut {
    r#type: String,
    nodes: Vec<usize>,
}

#[derive(Serialize)]
struct DescribeOut {
    group: String,
    n: usize,
    l: usize,
    components: Vec<ComponentOut>,
    alpha: Vec<Vec<i64>>,
    component_group: Vec<i64>,
    component_group_order: i64,
}

#[derive(Serialize)]
struct ConditionsOut {
    mu: Vec<String>,
    #[serde(rename = "I_mu")]
    i_mu: Vec<usize>,
    closed: bool,
    conditions: Vec<strata::Condition>,
}

#[derive(Serialize)]
struct NewtonPointsOut<'a> {
    points: Vec<PointOut<'a>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct EvalOut {
    c: Vec<torus_eval::LaurentPoly>,
    #[serde(flatten)]
    report: torus_eval::RnuReport,
}

#[derive(Serialize)]
struct VerifyOut {
    group: String,
    seed: u64,
    suites: Vec<SuiteOut>,
    pass: bool,
}

#[derive(Serialize)]
struct SuiteOut {
    suite: &'static str,
    cases: usize,
    failures: Vec<Value>,
}

fn lambda_g(d: &RootDatum, s: &str) -> std::result::Result<LambdaGElement, Failure> {
    let v = parse_rationals(s)?;
    let ints: Vec<i64> = v
        .iter()
        .map(|r| r.is_integer().then(|| r.to_integer()))
        .collect::<Option<_>>()
        .ok_or_else(|| Failure::Usage("nu must be integral".into()))?;
    if ints.len() == d.n() {
        Ok(LambdaGElement { lift: ints })
    } else if ints.len() == d.n() - d.l() {
        Ok(LambdaGElement::from_class(d, &ints))
    } else {
        Err(Failure::Usage(format!("nu must have {} or {} entries, got {}", d.n(), d.n() - d.l(), ints.len())))
    }
}

fn run(cli: &Cli) -> Outcome {
    let d: RootDatum = cli.group.parse()?;
    match &cli.command {
        Command::Describe => {
            let cg = d.component_group();
            Ok(Output::Json(json(&DescribeOut {
                group: d.label().to_string(),
                n: d.n(),
                l: d.l(),
                components: d
                    .components()
                    .iter()
                    .map(|c| ComponentOut { r#type: c.label.clone(), nodes: c.nodes.iter().map(|j| j + 1).collect() })
                    .collect(),
                alpha: d.alpha().clone(),
                component_group_order: cg.order(),
                component_group: cg.invariant_factors,
            })))
        }
        Command::Retract { d: s } => {
            let v = ValuationVector(parse_ext_rationals(s)?);
            let r = chamber::retract(&d, &v)?;
            Ok(Output::Json(json(&RetractOut {
                y: strs(&r.y),
                levi: r.levi.one_based(),
                slopes: chamber::slopes(&d, &r.y).map(|s| strs(&s)),
            })))
        }
        Command::Stratum { d: s } => {
            let v = ValuationVector(parse_ext_rationals(s)?);
            let p = strata::stratum_of(&d, &v)?;
            Ok(Output::Json(json(&point_out(&d, &p))))
        }
        Command::Conditions { mu, closed } => {
            let mu = newton_point(&d, mu)?;
            let c = strata::stratum_conditions(&d, &mu, *closed);
            Ok(Output::Json(json(&ConditionsOut {
                mu: strs(&mu.point),
                i_mu: c.i_mu.iter().map(|i| i + 1).collect(),
                closed: *closed,
                conditions: c.conditions,
            })))
        }
        Command::Dim { mu } => {
            let mu = newton_point(&d, mu)?;
            Ok(Output::Json(json(&strata::dim_leq(&d, &mu))))
        }
        Command::Codim { nu, mu, chai } => {
            let nu = newton_point(&d, nu)?;
            let c = if *chai {
                let mu = parse_rationals(mu)?;
                d.check_dim(mu.len())?;
                strata::codim_chai(&d, &nu, &mu)?
            } else {
                strata::codim(&d, &nu, &newton_point(&d, mu)?)?
            };
            Ok(Output::Json(json(&c)))
        }
        Command::NewtonPoints { mu, dot } => {
            let mu = newton_point(&d, mu)?;
            let pts = chamber::newton_points_below(&d, &mu)?;
            if *dot {
                return Ok(Output::Raw(chamber::hasse_dot(&d, &pts)));
            }
            let edges = chamber::hasse(&d, &pts);
            Ok(Output::Json(json(&NewtonPointsOut { points: pts.iter().map(|p| point_out(&d, p)).collect(), edges })))
        }
        Command::Defect { nu } => {
            let nu = lambda_g(&d, nu)?;
            let data = AffineData::new(&d);
            let r = affine::verify_d_equals_half_defect(&d, &data, &nu);
            Ok(Output::Json(json(&r)))
        }
        Command::Dg { nu } => {
            let nu = newton_point(&d, nu)?;
            Ok(Output::Json(json(&strata::d_g(&d, &nu).to_string())))
        }
        Command::Eval { a } => {
            let a: TorusPoint = a.parse()?;
            let (c, _) = torus_eval::eval_c(&d, &a)?;
            let report = torus_eval::check_thm_rnu(&d, &a)?;
            let pass = report.pass;
            let out = json(&EvalOut { c, report });
            if pass {
                Ok(Output::Json(out))
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Verify { suite, seed, count } => verify(&d, *suite, *seed, *count),
    }
}

fn verify(d: &RootDatum, suite: Suite, seed: u64, count: usize) -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut suites = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Rnu) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomConfig::default();
        let mut failures = Vec::new();
        for _ in 0..count {
            let a = torus_eval::random_torus_point(d, &mut rng, &cfg);
            let r = torus_eval::check_thm_rnu(d, &a)?;
            if !r.pass {
                failures.push(json(&r));
            }
        }
        suites.push(SuiteOut { suite: "rnu", cases: count, failures });
    }
    if want(Suite::Defect) || want(Suite::Chars) {
        let data = AffineData::new(d);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let classes = affine::component_classes(d);
        let mut defect_fail = Vec::new();
        let mut chars_fail = Vec::new();
        let mut cases = 0;
        for nu in &classes {
            for k in 0..3 {
                let shift: Vec<i64> = (0..d.l()).map(|_| if k == 0 { 0 } else { rng.gen_range(-3..=3) }).collect();
                let lifted = nu.relift(&shift);
                cases += 1;
                if want(Suite::Defect) {
                    let r = affine::verify_d_equals_half_defect(d, &data, &lifted);
                    if !r.pass {
                        defect_fail.push(json(&r));
                    }
                }
                if want(Suite::Chars) && k == 0 {
                    let r = affine::reflection_char_multiset_check(d, &data, &lifted);
                    if !r.pass {
                        chars_fail.push(json(&r));
                    }
                }
            }
        }
        if want(Suite::Defect) {
            suites.push(SuiteOut { suite: "defect", cases, failures: defect_fail });
        }
        if want(Suite::Chars) {
            suites.push(SuiteOut { suite: "chars", cases: classes.len(), failures: chars_fail });
        }
    }
    let pass = suites.iter().all(|s| s.failures.is_empty());
    let out = json(&VerifyOut { group: d.label().to_string(), seed, suites, pass });
    if pass {
        Ok(Output::Json(out))
    } else {
        Err(Failure::Verification(out))
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(v).expect("json"),
        Format::Text => text::render(v),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Json(v)) => {
            println!("{}", render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Ok(Output::Raw(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            println!("{}", render(&v, cli.format));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
