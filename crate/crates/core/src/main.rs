use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uzeta::characters::{euler_character_uj, hilbert_series_h};
use uzeta::orbits::{
    classical_orbit, exceptional_orbit, normality_check, sigma_partition, Epsilon, NormalityVerdict, OrbitLabel,
    Partition,
};
use uzeta::rootsys::{CartanType, RootSystem, Series};
use uzeta::steinberg::{brute_force_steinberg, constrained_search, DEFAULT_SEARCH_BUDGET, MAX_BRUTE_ROOTS};
use uzeta::subsystems::{
    cartan_type_of, conjugate_to_given, conjugate_to_parabolic, phi_lambda, standard_conjugation, ConjugationResult,
    DEFAULT_BUDGET,
};
use uzeta::supports::{classify_bad_l, constrictor_checks, realizable_as_phi_lambda, support_variety_nabla, SupportRoute};
use uzeta::verify::{verify_tables, Scope, Status, Table};
use uzeta::Error;

/// Exit code when a search ran out of budget or an answer is undetermined.
const EXIT_UNDETERMINED: u8 = 2;
/// Exit code when a verification check failed.
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "uzeta", version, about = "Root-system and nilpotent-orbit computations for small quantum groups")]
struct Cli {
    /// Tab-separated output for tabular results (verify-tables, steinberg).
    #[arg(long, global = true, conflicts_with = "json")]
    tsv: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeL {
    /// Irreducible Cartan type, e.g. E6, B3.
    #[arg(long = "type")]
    cartan: String,
    #[arg(long)]
    l: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Constrained,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// Orthogonal (types B, D).
    So,
    /// Symplectic (type C).
    Sp,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Conjugation,
    Weights,
    Bounds,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// The subsystem Phi_0 and its conjugation to a standard parabolic.
    Phi0 {
        #[command(flatten)]
        tl: TypeL,
    },
    /// The subsystem Phi_lambda for a dominant weight.
    PhiLambda {
        #[command(flatten)]
        tl: TypeL,
        /// Comma-separated fundamental-weight coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Search for w with w(Phi_lambda) = Phi_J.
    Conjugate {
        #[command(flatten)]
        tl: TypeL,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        /// Accept only this J (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        j: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// The orbit whose closure is N(Phi_0).
    Orbit {
        #[command(flatten)]
        tl: TypeL,
    },
    /// Normality of a classical orbit closure.
    Normality {
        /// Partition such as 4,2,2 or 3^2,1.
        #[arg(long, conflicts_with_all = ["cartan", "l"])]
        partition: Option<String>,
        #[arg(long, value_enum, requires = "partition")]
        form: Option<Form>,
        /// Classical type; with --l checks the orbit of N(Phi_0).
        #[arg(long = "type", requires = "l")]
        cartan: Option<String>,
        #[arg(long)]
        l: Option<i64>,
    },
    /// J-dominant weights of the exterior algebra congruent to -w_{0,J}(w.0).
    Steinberg {
        #[command(flatten)]
        tl: TypeL,
        #[arg(long, value_enum, default_value = "constrained")]
        method: Method,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Both sides of the Euler characteristic identity for u_J.
    Euler {
        #[arg(long = "type")]
        cartan: String,
        /// 1-based simple indices; empty for the Borel.
        #[arg(long, value_delimiter = ',')]
        j: Vec<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// dim H^k(u_zeta, C) for k = 0..=2 rmax.
    Hilbert {
        #[command(flatten)]
        tl: TypeL,
        #[arg(long, default_value_t = 5)]
        rmax: usize,
    },
    /// Support variety of the induced module nabla(lambda).
    Support {
        #[command(flatten)]
        tl: TypeL,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Classify the Phi_lambda not conjugate to a standard parabolic.
    ClassifyBadL {
        #[command(flatten)]
        tl: TypeL,
        /// Required for E7 and E8.
        #[arg(long)]
        long_run: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Replay the embedded tables.
    VerifyTables {
        #[arg(long, value_enum, default_value = "all")]
        table: TableArg,
        /// Restrict to one type.
        #[arg(long = "type")]
        cartan: Option<String>,
    },
}

/// The result to print and the exit code it implies.
struct Outcome {
    value: Value,
    tsv: Option<Vec<Vec<String>>>,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, tsv: None, code: 0 }
    }

    fn with_code(value: Value, code: u8) -> Self {
        Outcome { value, tsv: None, code }
    }
}

fn parse_type(s: &str) -> anyhow::Result<(Series, usize)> {
    let t: CartanType = s.parse().with_context(|| format!("bad --type {s}"))?;
    t.as_irreducible().ok_or_else(|| anyhow!("--type must be irreducible, got {s}"))
}

fn build(s: &str) -> anyhow::Result<RootSystem> {
    let (series, n) = parse_type(s)?;
    Ok(RootSystem::build(series, n)?)
}

fn one_based(j: &[usize]) -> Vec<usize> {
    j.iter().map(|i| i + 1).collect()
}

fn conjugation_json(res: &ConjugationResult) -> (Value, u8) {
    match res {
        ConjugationResult::Found(c) => {
            (json!({"found": true, "J": one_based(&c.j), "word": c.word, "canonical": c.canonical}), 0)
        }
        ConjugationResult::NotConjugate { orbit_size } => (json!({"found": false, "orbit_size": orbit_size}), 0),
        ConjugationResult::Exhausted { explored } => {
            (json!({"found": false, "undetermined": true, "explored": explored}), EXIT_UNDETERMINED)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Phi0 { tl } => {
            let r = build(&tl.cartan)?;
            let s = phi_lambda(&r, &vec![0; r.rank()], tl.l);
            let t = cartan_type_of(&r, &s)?;
            let conj = standard_conjugation(&r, tl.l)?;
            Ok(Outcome::ok(json!({
                "type": t,
                "J": one_based(&conj.j),
                "word": conj.word,
                "dim": r.num_roots() - s.len(),
                "roots": s.len(),
            })))
        }
        Command::PhiLambda { tl, lambda } => {
            let r = build(&tl.cartan)?;
            check_weight(&r, lambda)?;
            let s = phi_lambda(&r, lambda, tl.l);
            let realizable = realizable_as_phi_lambda(&r, &cartan_basis(&r, &s)?, tl.l)?;
            Ok(Outcome::ok(json!({
                "type": cartan_type_of(&r, &s)?,
                "roots": s.iter().map(|&b| r.root(b).to_vec()).collect::<Vec<_>>(),
                "lower_bound": r.num_roots() - s.len(),
                "realizability": realizable,
            })))
        }
        Command::Conjugate { tl, lambda, j, budget } => {
            let r = build(&tl.cartan)?;
            let lambda = lambda.clone().unwrap_or_else(|| vec![0; r.rank()]);
            check_weight(&r, &lambda)?;
            let s = phi_lambda(&r, &lambda, tl.l);
            let res = match j {
                Some(j) => {
                    if let Some(&bad) = j.iter().find(|&&i| i == 0 || i > r.rank()) {
                        bail!(Error::Domain(format!("J contains {bad}, outside 1..={}", r.rank())));
                    }
                    let j0: Vec<usize> = j.iter().map(|i| i - 1).collect();
                    conjugate_to_given(&r, &s, &j0, *budget)?
                }
                None => conjugate_to_parabolic(&r, &s, *budget)?,
            };
            let (mut v, code) = conjugation_json(&res);
            v["phi_lambda_type"] = json!(cartan_type_of(&r, &s)?);
            Ok(Outcome::with_code(v, code))
        }
        Command::Orbit { tl } => {
            let (series, n) = parse_type(&tl.cartan)?;
            let orbit = match series {
                Series::A | Series::B | Series::C | Series::D => {
                    let l = u32::try_from(tl.l).map_err(|_| Error::Domain(format!("l = {} out of range", tl.l)))?;
                    classical_orbit(series, n, l)?
                }
                _ => exceptional_orbit(series, n, tl.l)?,
            };
            Ok(Outcome::ok(serde_json::to_value(orbit)?))
        }
        Command::Normality { partition, form, cartan, l } => {
            let (sigma, eps) = match (partition, cartan, l) {
                (Some(p), _, _) => {
                    let eps = match form.ok_or_else(|| anyhow!("--partition needs --form so|sp"))? {
                        Form::So => Epsilon::Plus,
                        Form::Sp => Epsilon::Minus,
                    };
                    let sigma = p.parse::<Partition>()?;
                    if !eps.admits(&sigma) {
                        bail!(Error::Domain(format!("{sigma} is not a valid partition for --form {p}", p = if eps == Epsilon::Plus { "so" } else { "sp" })));
                    }
                    (sigma, eps)
                }
                (None, Some(t), Some(l)) => {
                    let (series, n) = parse_type(t)?;
                    let n_total = uzeta::orbits::natural_dimension(series, n)?;
                    let l = u32::try_from(*l).map_err(|_| Error::Domain(format!("l = {l} out of range")))?;
                    (sigma_partition(series, n_total, l)?, Epsilon::of_series(series)?)
                }
                _ => bail!(Error::Domain("give --partition and --form, or --type and --l".into())),
            };
            let verdict = normality_check(&sigma, eps);
            let code = if matches!(verdict, NormalityVerdict::Undetermined { .. }) { EXIT_UNDETERMINED } else { 0 };
            Ok(Outcome::with_code(json!({"partition": sigma, "verdict": verdict}), code))
        }
        Command::Steinberg { tl, method, budget } => {
            let r = build(&tl.cartan)?;
            let conj = standard_conjugation(&r, tl.l)?;
            let hits = match method {
                Method::Brute => brute_force_steinberg(&r, &conj.j, &conj.w, tl.l, MAX_BRUTE_ROOTS)?,
                Method::Constrained => {
                    constrained_search(&r, &conj.j, &conj.w, tl.l, budget.unwrap_or(DEFAULT_SEARCH_BUDGET))?
                }
            };
            let rows = hits
                .iter()
                .map(|h| vec![format!("{:?}", h.nu), h.degree.to_string(), h.multiplicity.to_string()])
                .collect();
            Ok(Outcome {
                value: json!({"J": one_based(&conj.j), "word": conj.word, "length": conj.w.length(&r), "hits": hits}),
                tsv: Some(rows),
                code: 0,
            })
        }
        Command::Euler { cartan, j, budget } => {
            let r = build(cartan)?;
            if let Some(&bad) = j.iter().find(|&&i| i == 0 || i > r.rank()) {
                bail!(Error::Domain(format!("J contains {bad}, outside 1..={}", r.rank())));
            }
            let j0: Vec<usize> = j.iter().map(|i| i - 1).collect();
            let e = euler_character_uj(&r, &j0, *budget)?;
            Ok(Outcome::ok(json!({
                "J": j,
                "matches": e.matches,
                "representatives": e.representatives,
                "terms": e.lambda_side.len(),
                "lambda_side": e.lambda_side,
                "coset_side": e.coset_side,
            })))
        }
        Command::Hilbert { tl, rmax } => {
            let r = build(&tl.cartan)?;
            let h = hilbert_series_h(&r, tl.l, *rmax)?;
            let mut v = serde_json::to_value(&h)?;
            // Integers that fit are emitted as numbers, larger ones stay strings.
            let even: Vec<Value> = (0..=*rmax)
                .map(|k| {
                    let d = h.even(k);
                    u64::try_from(d).map_or_else(|_| json!(d.to_string()), |x| json!(x))
                })
                .collect();
            v["even_dims"] = Value::Array(even);
            v["J"] = json!(one_based(&h.j));
            if let Some(obj) = v.as_object_mut() {
                obj.remove("j");
            }
            Ok(Outcome::ok(v))
        }
        Command::Support { tl, lambda, budget } => {
            let r = build(&tl.cartan)?;
            let s = support_variety_nabla(&r, lambda, tl.l, *budget)?;
            let code = if matches!(s.route, SupportRoute::Unresolved { .. }) { EXIT_UNDETERMINED } else { 0 };
            let orbit_label = s.orbit.as_ref().map(|o| match &o.label {
                OrbitLabel::Induced { levi_j } => json!({"induced_from_levi": levi_j}),
                other => json!(other),
            });
            Ok(Outcome::with_code(
                json!({
                    "phi_lambda_type": s.phi_lambda_type,
                    "route": s.route,
                    "orbit_label": orbit_label,
                    "dim": s.orbit.as_ref().map(|o| o.dim),
                    "assumptions": s.assumptions,
                    "lower_bound": s.lower_bound,
                    "consistent_with_lower_bound": s.consistent_with_lower_bound,
                    "same_for_weyl_module": s.same_for_weyl_module,
                }),
                code,
            ))
        }
        Command::ClassifyBadL { tl, long_run, budget } => {
            let r = build(&tl.cartan)?;
            let c = classify_bad_l(&r, tl.l, *budget, *long_run)?;
            let checks = constrictor_checks(&r, &c, *budget)?;
            let code = if c.undetermined.is_empty() && checks.iter().all(|k| k.holds.is_some()) { 0 } else { EXIT_UNDETERMINED };
            let mut v = serde_json::to_value(&c)?;
            v["constrictor_checks"] = serde_json::to_value(&checks)?;
            Ok(Outcome::with_code(v, code))
        }
        Command::VerifyTables { table, cartan } => {
            let tables = match table {
                TableArg::Conjugation => vec![Table::Conjugation],
                TableArg::Weights => vec![Table::Weights],
                TableArg::Bounds => vec![Table::Bounds],
                TableArg::All => Table::ALL.to_vec(),
            };
            let only = cartan.as_deref().map(parse_type).transpose()?;
            let report = verify_tables(&Scope { tables, only })?;
            let rows = report
                .checks
                .iter()
                .map(|c| {
                    let (status, detail) = match &c.status {
                        Status::Pass => ("pass", String::new()),
                        Status::Fail { detail } => ("fail", detail.clone()),
                        Status::Skipped { reason } => ("skipped", reason.clone()),
                    };
                    vec![c.table.to_string(), c.row.clone(), c.name.clone(), status.to_string(), detail]
                })
                .collect();
            let code = if report.passed() { 0 } else { EXIT_VERIFY_FAILED };
            Ok(Outcome { value: serde_json::to_value(&report)?, tsv: Some(rows), code })
        }
    }
}

fn check_weight(r: &RootSystem, lambda: &[i64]) -> anyhow::Result<()> {
    if lambda.len() != r.rank() {
        bail!(Error::Domain(format!("--lambda needs {} coordinates, got {}", r.rank(), lambda.len())));
    }
    Ok(())
}

fn cartan_basis(r: &RootSystem, s: &[usize]) -> anyhow::Result<Vec<usize>> {
    Ok(uzeta::subsystems::simple_system(r, s)?.roots)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Budget(_)) => EXIT_UNDETERMINED,
        Some(Error::Data(_)) => EXIT_VERIFY_FAILED,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = match (&out.tsv, cli.tsv) {
                (Some(rows), true) => rows.iter().try_for_each(|row| writeln!(stdout, "{}", row.join("\t"))),
                _ => writeln!(stdout, "{}", serde_json::to_string_pretty(&out.value).expect("JSON values serialize")),
            };
            ExitCode::from(out.code)
        }
        Err(err) => {
            let code = exit_code_for(&err);
            println!("{}", json!({"error": format!("{err:#}"), "exit_code": code}));
            ExitCode::from(code)
        }
    }
}
