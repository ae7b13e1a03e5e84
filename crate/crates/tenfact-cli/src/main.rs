//! `tenfact`: validate category data, compute Frobenius–Perron dimensions,
//! decide and search exact factorizations, enumerate group factorizations,
//! compute `H³(G,Q/Z) ≅ H⁴(G,Z)` and classify pointed exact factorizations.
//!
//! Exit codes: 0 = positive verdict, 1 = negative verdict, 2 = input or
//! validation error, 3 = resource limit. `--json` output is deterministic:
//! identical inputs produce byte-identical reports (timing goes to stderr).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tenfact::category::CategoryData;
use tenfact::cohomology::{self, CohOptions, CohomologyGroup};
use tenfact::factor::{self, SearchCandidates};
use tenfact::fpdim;
use tenfact::groups::{self, FiniteGroup, Subgroup};
use tenfact::io as tio;

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_LIMIT: i32 = 3;

#[derive(Parser)]
#[command(name = "tenfact", version, about = "finite tensor categories at the Grothendieck level")]
struct Cli {
    /// Seed for any randomized internals (group table spot checks).
    #[arg(long, global = true, default_value_t = groups::DEFAULT_SEED)]
    seed: u64,
    /// Worker cap for parallel candidate testing.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Machine-readable report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate category data against all axioms.
    Check { cat: PathBuf },
    /// Frobenius–Perron dimensions and predicates.
    Fpdim {
        cat: PathBuf,
        #[arg(long, default_value_t = fpdim::DEFAULT_TOL)]
        tol: f64,
    },
    /// Decide an exact factorization, or search for all of them.
    Factorize {
        target: PathBuf,
        #[arg(long, value_name = "EMB", conflicts_with = "auto", requires = "c")]
        a: Option<PathBuf>,
        #[arg(long, value_name = "EMB", requires = "a")]
        c: Option<PathBuf>,
        /// Enumerate all closed subcategory supports (semisimple data only).
        #[arg(long)]
        auto: bool,
    },
    /// Support of the product closure generated by the unit.
    Closure {
        target: PathBuf,
        #[arg(long, value_name = "EMB")]
        a: PathBuf,
        #[arg(long, value_name = "EMB")]
        c: PathBuf,
    },
    /// Finite group queries.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Group cohomology.
    #[command(subcommand)]
    Coh(CohCommand),
    /// Classes of H³(G,Q/Z) trivial on both factors of G = G₁G₂.
    Classify {
        group: PathBuf,
        /// Comma-separated element labels (or indices) of the first factor.
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(long, default_value_t = cohomology::DEFAULT_ORDER_LIMIT)]
        limit: usize,
    },
    /// Write canonical data files.
    #[command(subcommand)]
    Build(BuildCommand),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// All subgroups, with conjugacy classes.
    Subgroups { group: PathBuf },
    /// All exact factorizations G = G₁G₂.
    Exfac { group: PathBuf },
}

#[derive(Subcommand)]
enum CohCommand {
    /// Invariant factors of H³(G,Q/Z), computed as H⁴(G,Z).
    H3 {
        group: PathBuf,
        #[arg(long, default_value_t = cohomology::DEFAULT_ORDER_LIMIT)]
        limit: usize,
        /// Include generator cocycles in the output.
        #[arg(long)]
        gens: bool,
    },
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Group builders: cyclic, dihedral, symmetric, product.
    #[command(subcommand)]
    Group(BuildGroupCommand),
    /// Pointed data of a group.
    Vec {
        group: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Opaque associator-class tag carried in the output file.
        #[arg(long)]
        omega: Option<String>,
    },
    /// One-simple data with Cartan [p].
    RepZp {
        p: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Pointed nonsemisimple family: Z/n fusion, all-ones Cartan.
    Taft {
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Deligne product, optionally with the two canonical embeddings.
    Deligne {
        a: PathBuf,
        c: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        emb_a: Option<PathBuf>,
        #[arg(long)]
        emb_c: Option<PathBuf>,
    },
    /// Opposite category data.
    Op {
        a: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BuildGroupCommand {
    Cyclic { n: usize, #[command(flatten)] out: OutArg },
    Dihedral { n: usize, #[command(flatten)] out: OutArg },
    Symmetric { n: usize, #[command(flatten)] out: OutArg },
    Product { g1: PathBuf, g2: PathBuf, #[command(flatten)] out: OutArg },
}

#[derive(Args)]
struct OutArg {
    #[arg(short, long)]
    out: PathBuf,
}

enum Outcome {
    /// status OK, exit 0
    Ok(Value),
    /// status FAIL, exit 1
    Negative(Value),
}

enum CliError {
    Input(String),
    Limit(String),
}

impl From<tio::IoError> for CliError {
    fn from(e: tio::IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<tenfact::category::CategoryError> for CliError {
    fn from(e: tenfact::category::CategoryError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<fpdim::FpError> for CliError {
    fn from(e: fpdim::FpError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<factor::FactorError> for CliError {
    fn from(e: factor::FactorError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<groups::GroupError> for CliError {
    fn from(e: groups::GroupError) -> Self {
        match e {
            groups::GroupError::OrderLimit { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<cohomology::CohError> for CliError {
    fn from(e: cohomology::CohError) -> Self {
        match e {
            cohomology::CohError::SizeLimit { .. } | cohomology::CohError::MemoryLimit { .. } => {
                CliError::Limit(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let command_echo = command_name(&cli.command);
    let result = run(&cli);
    let elapsed_ms = started.elapsed().as_millis();
    eprintln!("tenfact: {command_echo} finished in {elapsed_ms} ms");
    let code = match result {
        Ok(Outcome::Ok(findings)) => {
            emit(&cli, &command_echo, "OK", findings);
            EXIT_OK
        }
        Ok(Outcome::Negative(findings)) => {
            emit(&cli, &command_echo, "FAIL", findings);
            EXIT_NEGATIVE
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Limit(msg)) => {
            eprintln!("resource limit: {msg}");
            EXIT_LIMIT
        }
    };
    std::process::exit(code);
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check",
        Command::Fpdim { .. } => "fpdim",
        Command::Factorize { .. } => "factorize",
        Command::Closure { .. } => "closure",
        Command::Group(GroupCommand::Subgroups { .. }) => "group subgroups",
        Command::Group(GroupCommand::Exfac { .. }) => "group exfac",
        Command::Coh(CohCommand::H3 { .. }) => "coh h3",
        Command::Classify { .. } => "classify",
        Command::Build(_) => "build",
    }
    .to_string()
}

fn emit(cli: &Cli, command: &str, status: &str, findings: Value) {
    if cli.json {
        let report = json!({
            "command": command,
            "status": status,
            "findings": findings,
        });
        println!("{report}");
    } else {
        println!("{command}: {status}");
        print_human(&findings, 1);
    }
}

fn print_human(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_human(val, indent + 1);
                    }
                    _ => println!("{pad}{k}: {val}"),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => print_human(item, indent),
                    _ => println!("{pad}- {item}"),
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

fn memory_limit_mb() -> usize {
    std::env::var("TENFACT_LIMIT_MB")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(cohomology::DEFAULT_MEMORY_LIMIT_MB)
}

fn coh_options(limit: usize) -> CohOptions {
    CohOptions { order_limit: limit, memory_limit_mb: memory_limit_mb() }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { cat } => {
            let data = tio::load_category(cat)?;
            let report = data.validate();
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({"kind": v.kind, "witness": v.witness}))
                .collect();
            let findings = json!({"valid": report.is_ok(), "violations": violations});
            if report.is_ok() {
                Ok(Outcome::Ok(findings))
            } else {
                Ok(Outcome::Negative(findings))
            }
        }
        Command::Fpdim { cat, tol } => {
            let data = tio::load_category(cat)?;
            require_valid(&data)?;
            let profile = fpdim::fp_character(&data, *tol)?;
            let preds = fpdim::predicates(&data, &profile)?;
            let findings = json!({
                "dims": profile.dims,
                "cat_dim": profile.cat_dim,
                "exact_dims": profile.exact_dims,
                "exact_cat_dim": profile.exact_cat_dim.map(|v| v as u64),
                "predicates": preds,
            });
            Ok(Outcome::Ok(findings))
        }
        Command::Factorize { target, a, c, auto } => {
            let data = tio::load_category(target)?;
            require_valid(&data)?;
            if *auto {
                let out =
                    factor::search_exact_factorizations(&data, SearchCandidates::Auto, cli.threads)?;
                let results: Vec<Value> = out
                    .hits
                    .iter()
                    .map(|h| {
                        json!({
                            "a_support": h.a_support,
                            "c_support": h.c_support,
                            "trivial": h.trivial,
                            "conjugacy_class": h.conjugacy_class,
                        })
                    })
                    .collect();
                Ok(Outcome::Ok(json!({
                    "results": results,
                    "nontrivial_classes": out.nontrivial_classes,
                })))
            } else {
                let (Some(a), Some(c)) = (a, c) else {
                    return Err(CliError::Input(
                        "factorize needs either --auto or both --a and --c".into(),
                    ));
                };
                let ea = tio::load_embedding(a)?;
                let ec = tio::load_embedding(c)?;
                if ea.target != data || ec.target != data {
                    return Err(CliError::Input(
                        "embedding target does not match the given category".into(),
                    ));
                }
                let verdict = factor::check_exact_factorization(&ea, &ec)?;
                let bijection: Option<Vec<Value>> = verdict.bijection.as_ref().map(|b| {
                    (0..b.n_a)
                        .flat_map(|x| (0..b.n_c).map(move |y| json!([x, y, b.get(x, y)])))
                        .collect()
                });
                let findings = json!({
                    "ok": verdict.ok,
                    "failures": verdict.failures,
                    "fpdim": verdict.fpdim_check,
                    "bijection": bijection,
                });
                if verdict.ok {
                    Ok(Outcome::Ok(findings))
                } else {
                    Ok(Outcome::Negative(findings))
                }
            }
        }
        Command::Closure { target, a, c } => {
            let data = tio::load_category(target)?;
            require_valid(&data)?;
            let ea = tio::load_embedding(a)?;
            let ec = tio::load_embedding(c)?;
            if ea.target != data || ec.target != data {
                return Err(CliError::Input(
                    "embedding target does not match the given category".into(),
                ));
            }
            let support = factor::product_support(&ea, &ec)?;
            let full = support.len() == data.n();
            Ok(Outcome::Ok(json!({
                "support": support,
                "count": support.len(),
                "full": full,
            })))
        }
        Command::Group(GroupCommand::Subgroups { group }) => {
            let g = load_group(cli, group)?;
            let subs = groups::subgroups(&g)?;
            let classes = groups::conjugacy_classes(&g, &subs);
            let listed: Vec<Value> = subs.iter().map(|s| json!(s.elements)).collect();
            Ok(Outcome::Ok(json!({
                "count": subs.len(),
                "subgroups": listed,
                "conjugacy_classes": classes,
            })))
        }
        Command::Group(GroupCommand::Exfac { group }) => {
            let g = load_group(cli, group)?;
            let out = groups::enumerate_exact_factorizations(&g)?;
            let pairs: Vec<Value> = out
                .pairs
                .iter()
                .map(|p| {
                    json!({
                        "h1": p.h1.elements,
                        "h2": p.h2.elements,
                        "trivial": p.trivial,
                        "class": p.class_id,
                    })
                })
                .collect();
            Ok(Outcome::Ok(json!({
                "pairs": pairs,
                "nontrivial_classes": out.nontrivial_classes,
            })))
        }
        Command::Coh(CohCommand::H3 { group, limit, gens }) => {
            let g = load_group(cli, group)?;
            eprintln!("tenfact: computing H4 for a group of order {}", g.order());
            let h = cohomology::h4_integral(&g, &coh_options(*limit))?;
            let mut findings = json!({
                "group_order": g.order(),
                "invariant_factors": h.invariant_factors,
            });
            if *gens {
                findings["generators"] = generators_json(&g, &h);
            }
            Ok(Outcome::Ok(findings))
        }
        Command::Classify { group, g1, g2, limit } => {
            let g = load_group(cli, group)?;
            let s1 = parse_subgroup(&g, g1)?;
            let s2 = parse_subgroup(&g, g2)?;
            let opts = coh_options(*limit);
            let h4 = cohomology::h4_integral(&g, &opts)?;
            let cls = h4.classify_pointed(&s1, &s2, &opts)?;
            let omegas: Vec<Value> = cls
                .kernel_generators
                .iter()
                .map(|combo| {
                    let z = h4.element_cocycle(combo);
                    let omega = h4.omega_from_z(&z).expect("kernel class has a representative");
                    json!({
                        "coefficients": combo,
                        "omega": omega_values_json(&g, &omega),
                    })
                })
                .collect();
            Ok(Outcome::Ok(json!({
                "ambient_factors": cls.ambient_factors,
                "kernel_factors": cls.kernel_factors,
                "kernel_order": cls.kernel_order as u64,
                "kernel_generators": omegas,
            })))
        }
        Command::Build(cmd) => build(cli, cmd),
    }
}

fn require_valid(data: &CategoryData) -> Result<(), CliError> {
    let report = data.validate();
    if report.is_ok() {
        Ok(())
    } else {
        Err(CliError::Input(format!("category data is invalid:\n{report}")))
    }
}

fn load_group(cli: &Cli, path: &PathBuf) -> Result<FiniteGroup, CliError> {
    let _ = cli.seed;
    Ok(tio::load_group_with_seed(path, cli.seed)?)
}

fn parse_subgroup(g: &FiniteGroup, spec: &str) -> Result<Subgroup, CliError> {
    let mut elements = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let idx = match g.labels().iter().position(|l| l == token) {
            Some(i) => i,
            None => token
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("unknown element '{token}'")))?,
        };
        elements.push(idx);
    }
    Ok(Subgroup::new(g, elements)?)
}

fn generators_json(g: &FiniteGroup, h: &CohomologyGroup) -> Value {
    let gens: Vec<Value> = h
        .generators
        .iter()
        .zip(&h.invariant_factors)
        .map(|(z, &d)| {
            let entries: Vec<Value> = z
                .support_entries(g)
                .into_iter()
                .map(|(tuple, value)| json!([tuple, value]))
                .collect();
            json!({"order": d, "values": entries})
        })
        .collect();
    Value::Array(gens)
}

fn omega_values_json(g: &FiniteGroup, omega: &tenfact::QZCochain) -> Value {
    let entries: Vec<Value> = omega
        .support_entries(g)
        .into_iter()
        .map(|(tuple, value)| json!([tuple, value]))
        .collect();
    entries.into()
}

fn build(cli: &Cli, cmd: &BuildCommand) -> Result<Outcome, CliError> {
    match cmd {
        BuildCommand::Group(sub) => {
            let (g, out) = match sub {
                BuildGroupCommand::Cyclic { n, out } => (groups::cyclic(*n)?, out),
                BuildGroupCommand::Dihedral { n, out } => (groups::dihedral(*n)?, out),
                BuildGroupCommand::Symmetric { n, out } => (groups::symmetric(*n)?, out),
                BuildGroupCommand::Product { g1, g2, out } => {
                    let a = load_group(cli, g1)?;
                    let b = load_group(cli, g2)?;
                    (groups::direct_product(&a, &b)?, out)
                }
            };
            tio::save_group(&out.out, &g)?;
            Ok(Outcome::Ok(json!({
                "written": out.out.display().to_string(),
                "order": g.order(),
            })))
        }
        BuildCommand::Vec { group, out, omega } => {
            let g = load_group(cli, group)?;
            let data = tenfact::builders::vec_of_group_with_omega(&g, omega.clone());
            tio::save_category(out, &data)?;
            Ok(Outcome::Ok(json!({
                "written": out.display().to_string(),
                "simples": data.n(),
            })))
        }
        BuildCommand::RepZp { p, out } => {
            let data = tenfact::builders::rep_zp_char_p(*p).map_err(CliError::Input)?;
            tio::save_category(out, &data)?;
            Ok(Outcome::Ok(json!({
                "written": out.display().to_string(),
                "simples": data.n(),
            })))
        }
        BuildCommand::Taft { n, out } => {
            let data = tenfact::builders::taft_like(*n).map_err(CliError::Input)?;
            tio::save_category(out, &data)?;
            Ok(Outcome::Ok(json!({
                "written": out.display().to_string(),
                "simples": data.n(),
            })))
        }
        BuildCommand::Deligne { a, c, out, emb_a, emb_c } => {
            let da = tio::load_category(a)?;
            let dc = tio::load_category(c)?;
            let (prod, ea, ec) = tenfact::builders::deligne_product(&da, &dc);
            tio::save_category(out, &prod)?;
            let rel = |p: &PathBuf| -> String {
                p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default()
            };
            if let Some(path) = emb_a {
                tio::save_embedding(path, &rel(a), &rel(out), &ea.map)?;
            }
            if let Some(path) = emb_c {
                tio::save_embedding(path, &rel(c), &rel(out), &ec.map)?;
            }
            Ok(Outcome::Ok(json!({
                "written": out.display().to_string(),
                "simples": prod.n(),
            })))
        }
        BuildCommand::Op { a, out } => {
            let data = tio::load_category(a)?;
            let op = tenfact::builders::opposite(&data);
            tio::save_category(out, &op)?;
            Ok(Outcome::Ok(json!({
                "written": out.display().to_string(),
                "simples": op.n(),
            })))
        }
    }
}
