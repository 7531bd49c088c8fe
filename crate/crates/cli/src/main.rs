use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use reflect_gkm::io::{matrix_text, read_wmap};
use reflect_gkm::molien::{coinvariant_histogram, integral_coefficients, top_coinvariant_degree};
use reflect_gkm::{
    build_hypergraph, bundled, coinvariant_basis, hw_member, hypergraph_member, molien_coefficients, molien_series,
    naive_pairwise_member, parse_group_file, run_suite, verify_theorem, ReflectionGroup, SuiteConfig,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "reflect-gkm", version, about = "Equivariant coinvariants of pseudo-reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArg {
    /// Group definition file, or a bundled name (z2, z3, z4, s3, b2, g312).
    #[arg(long, short)]
    group: String,
    /// Run even when the pseudo-reflections do not generate the group.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Clone)]
struct Output {
    /// Emit JSON, to stdout or to the given file.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<PathBuf>>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Molien series and fundamental degrees.
    Molien {
        #[command(flatten)]
        group: GroupArg,
        /// Number of series coefficients to print.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Graded basis of the coinvariant ring by standard monomials.
    Coinvariants {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Check whether a map W → R satisfies the divisibility conditions.
    Member {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Hypergraph(HypergraphCommand),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, pseudo-reflection count, hyperplanes and degrees.
    Info {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        out: Output,
    },
    /// Every pseudo-reflection with its order, co-root and eigenvalue.
    Reflections {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Per-degree dimension triples: expected, image of μ, and 𝓗_W.
    Theorem(SuiteArgs),
    /// Every suite: the theorem, the operator lemmas and the hypergraph checks.
    Lemmas {
        #[command(flatten)]
        suite: SuiteArgs,
        /// Compare against the pairwise (order-two style) divisibility conditions.
        #[arg(long)]
        naive_control: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum HypergraphCommand {
    Export {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership through the hyperedge conditions.
    Member {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        input: PathBuf,
        /// Also report the pairwise test.
        #[arg(long)]
        naive: bool,
        #[command(flatten)]
        out: Output,
    },
}

/// Loads the group; `strict` refuses groups not generated by pseudo-reflections unless `--force` is given.
fn load_group_with(arg: &GroupArg, strict: bool) -> Result<ReflectionGroup> {
    let path = Path::new(&arg.group);
    let w = if path.exists() {
        parse_group_file(path)?
    } else if let Some(w) = bundled::load(&arg.group) {
        w?
    } else {
        bail!("no group file or bundled group named '{}'", arg.group)
    };
    if !w.generated_by_reflections() {
        if strict && !arg.force {
            bail!(reflect_gkm::Error::NotReflectionGenerated);
        }
        eprintln!("warning: the pseudo-reflections of {} do not generate it; results may not hold", w.name());
    }
    Ok(w)
}

fn load_group(arg: &GroupArg) -> Result<ReflectionGroup> {
    load_group_with(arg, true)
}

impl Output {
    /// Writes `value` when JSON was requested, otherwise prints `text`.
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
        match &self.json {
            None => print!("{}", text()),
            Some(None) => println!("{}", serde_json::to_string_pretty(value)?),
            Some(Some(path)) => {
                std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Ok(())
    }
}

fn group_info(w: &ReflectionGroup, degrees: Option<&Vec<u32>>) -> Value {
    json!({
        "name": w.name(),
        "dimension": w.nvars(),
        "conductor": w.conductor(),
        "order": w.order(),
        "reflections": w.reflections().len(),
        "hyperplanes": w.hyperplanes().len(),
        "generated_by_reflections": w.generated_by_reflections(),
        "degrees": degrees,
    })
}

fn cmd_group(cmd: GroupCommand) -> Result<bool> {
    match cmd {
        GroupCommand::Info { group, out } => {
            let w = load_group_with(&group, false)?;
            let degrees = molien_series(&w).ok();
            let v = group_info(&w, degrees.as_ref());
            out.emit(&v, || {
                let degrees = match &degrees {
                    Some(d) => format!("{d:?}"),
                    None => "none (invariant ring is not polynomial)".into(),
                };
                format!(
                    "group {}\ndimension {}\nconductor {}\n|W| = {}\n|s(W)| = {}\nhyperplanes {}\ngenerated by reflections: {}\ndegrees {degrees}\n",
                    w.name(),
                    w.nvars(),
                    w.conductor(),
                    w.order(),
                    w.reflections().len(),
                    w.hyperplanes().len(),
                    w.generated_by_reflections()
                )
            })?;
        }
        GroupCommand::Reflections { group, out } => {
            let w = load_group_with(&group, false)?;
            let names = w.variables().to_vec();
            let rows: Vec<Value> = w
                .reflections()
                .iter()
                .map(|r| {
                    json!({
                        "element": r.element,
                        "order": r.order,
                        "coroot": r.coroot.to_poly().format_with(&names),
                        "eigenvalue": r.eigenvalue.to_string(),
                        "hyperplane": r.hyperplane_id,
                        "matrix": matrix_text(&w.element(r.element).matrix),
                    })
                })
                .collect();
            out.emit(&Value::Array(rows.clone()), || {
                rows.iter()
                    .map(|r| {
                        format!(
                            "element {}  order {}  coroot {}  eigenvalue {}  hyperplane {}\n",
                            r["element"], r["order"], r["coroot"].as_str().unwrap_or(""), r["eigenvalue"].as_str().unwrap_or(""), r["hyperplane"]
                        )
                    })
                    .collect()
            })?;
        }
    }
    Ok(true)
}

fn cmd_molien(group: GroupArg, terms: usize, out: Output) -> Result<bool> {
    let w = load_group_with(&group, false)?;
    let coeffs = molien_coefficients(&w, terms);
    let degrees = molien_series(&w);
    let shown: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    let v = json!({
        "group": w.name(),
        "coefficients": shown,
        "integral": integral_coefficients(&coeffs).is_some(),
        "degrees": degrees.as_ref().ok(),
        "coinvariant_histogram": degrees.as_ref().ok().map(|d| coinvariant_histogram(d)),
    });
    out.emit(&v, || {
        let mut s = format!("Molien series of {}: {} + ...\n", w.name(), shown.join(", "));
        match &degrees {
            Ok(d) => {
                s += &format!("degrees {d:?}\ncoinvariant histogram {:?}\n", coinvariant_histogram(d));
            }
            Err(e) => s += &format!("{e}\n"),
        }
        s
    })?;
    Ok(degrees.is_ok())
}

fn cmd_coinvariants(group: GroupArg, max_degree: Option<u32>, out: Output) -> Result<bool> {
    let w = load_group(&group)?;
    let degrees = molien_series(&w)?;
    let dmax = max_degree.unwrap_or_else(|| top_coinvariant_degree(&degrees));
    let basis = coinvariant_basis(&w, dmax)?;
    let names = w.variables().to_vec();
    let lifts: Vec<String> = basis.lifts.iter().map(|p| p.format_with(&names)).collect();
    let v = json!({
        "group": w.name(),
        "fundamental_degrees": basis.fundamental_degrees,
        "basis": lifts,
        "degrees": basis.degrees,
        "histogram": basis.histogram(),
    });
    out.emit(&v, || {
        let mut s = format!("coinvariant basis of {} ({} elements)\n", w.name(), basis.len());
        for (p, d) in lifts.iter().zip(&basis.degrees) {
            s += &format!("  [{d}] {p}\n");
        }
        s + &format!("histogram {:?}\n", basis.histogram())
    })?;
    Ok(true)
}

fn cmd_member(group: GroupArg, input: PathBuf, out: Output) -> Result<bool> {
    let w = load_group(&group)?;
    let f = read_wmap(&input, &w)?;
    let cert = hw_member(&w, &f);
    let names = w.variables().to_vec();
    let failures: Vec<Value> = cert
        .failures
        .iter()
        .map(|x| {
            json!({
                "rep": x.rep,
                "reflection": w.reflections()[x.reflection].element,
                "exponent": x.exponent,
                "witness": x.witness.format_with(&names),
            })
        })
        .collect();
    let v = json!({ "member": cert.ok, "failures": failures });
    out.emit(&v, || {
        let mut s = format!("member: {}\n", cert.ok);
        for x in &failures {
            s += &format!(
                "  coset of {} under element {}, i = {}: remainder {}\n",
                x["rep"], x["reflection"], x["exponent"], x["witness"].as_str().unwrap_or("")
            );
        }
        s
    })?;
    Ok(cert.ok)
}

fn cmd_verify(cmd: VerifyCommand) -> Result<bool> {
    match cmd {
        VerifyCommand::Theorem(a) => {
            let w = load_group(&a.group)?;
            let degrees = molien_series(&w)?;
            let dmax = a.max_degree.unwrap_or(top_coinvariant_degree(&degrees) + 3);
            let report = verify_theorem(&w, dmax, a.trials, a.seed)?;
            let v = json!({
                "group": w.name(),
                "max_degree": dmax,
                "rows": report.rows,
                "sample": report.sample,
                "pass": report.pass(),
            });
            a.out.emit(&v, || {
                let mut s = format!("{}: degree  expected  image  hw\n", w.name());
                for r in &report.rows {
                    s += &format!(
                        "  {:>2}  {:>6}  {:>6}  {:>6}  {}\n",
                        r.degree,
                        r.expected,
                        r.image,
                        r.hw,
                        if r.pass() { "ok" } else { "MISMATCH" }
                    );
                }
                s += &format!("μ(T) ∈ 𝓗_W on {} random tensors: {} failures\n", report.sample.trials, report.sample.failures);
                s + &format!("pass: {}\n", report.pass())
            })?;
            Ok(report.pass())
        }
        VerifyCommand::Lemmas { suite: a, naive_control } => {
            let w = load_group(&a.group)?;
            let cfg = SuiteConfig {
                max_degree: a.max_degree,
                trials: a.trials,
                seed: a.seed,
                naive_control,
                force: a.group.force,
            };
            let report = run_suite(&w, &cfg)?;
            let v: Value = serde_json::from_str(&report.to_json())?;
            a.out.emit(&v, || {
                let mut s = format!(
                    "{}: |W| = {}, |s(W)| = {}, degrees {:?}, dmax {}\n",
                    report.group, report.order, report.reflections, report.degrees, report.max_degree
                );
                let rows_ok = report.dimension_rows.iter().all(|r| r.pass());
                s += &format!("  {:<24} {}\n", "dimension rows", if rows_ok { "ok" } else { "FAIL" });
                for r in report.lemmas.iter().chain(&report.hypergraph) {
                    s += &format!(
                        "  {:<24} {}/{} {}\n",
                        r.name,
                        r.trials - r.failures,
                        r.trials,
                        if r.pass() { "ok" } else { "FAIL" }
                    );
                }
                if let Some(nc) = &report.naive_control {
                    s += &format!(
                        "  naive control            degree 1: naive {} vs hw {}, agreement {}/{} {}\n",
                        nc.naive_degree1,
                        nc.hw_degree1,
                        nc.agreement.trials - nc.agreement.failures,
                        nc.agreement.trials,
                        if nc.pass() { "ok" } else { "FAIL" }
                    );
                }
                for (name, t) in &report.timings.0 {
                    s += &format!("  time {name}: {:.2?}\n", t);
                }
                s + &format!("pass: {}\n", report.pass)
            })?;
            Ok(report.pass)
        }
    }
}

fn cmd_hypergraph(cmd: HypergraphCommand) -> Result<bool> {
    match cmd {
        HypergraphCommand::Export { group, format, out } => {
            let w = load_group(&group)?;
            let g = build_hypergraph(&w);
            let text = match format {
                Format::Json => g.to_json(&w, w.variables()),
                Format::Dot => g.to_dot(&w, w.variables()),
            };
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        HypergraphCommand::Member { group, input, naive, out } => {
            let w = load_group(&group)?;
            let f = read_wmap(&input, &w)?;
            let g = build_hypergraph(&w);
            let cert = hypergraph_member(&f, &g);
            let names = w.variables().to_vec();
            let failures: Vec<Value> = cert
                .failures
                .iter()
                .map(|e| json!({ "edge": e.edge, "coefficient": e.coefficient, "witness": e.witness.format_with(&names) }))
                .collect();
            let naive_ok = naive.then(|| naive_pairwise_member(&f, &g));
            let v = json!({ "member": cert.ok, "failures": failures, "naive": naive_ok });
            out.emit(&v, || {
                let mut s = format!("member: {}\n", cert.ok);
                for e in &failures {
                    s += &format!(
                        "  edge {}: coefficient of τ^{} has remainder {}\n",
                        e["edge"], e["coefficient"], e["witness"].as_str().unwrap_or("")
                    );
                }
                if let Some(n) = naive_ok {
                    s += &format!("pairwise test: {n}\n");
                }
                s
            })?;
            Ok(cert.ok)
        }
    }
}

fn thread_pool() -> Result<()> {
    if let Ok(v) = std::env::var("REFLECT_GKM_THREADS") {
        let n: usize = v.parse().with_context(|| format!("REFLECT_GKM_THREADS={v} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    thread_pool()?;
    match cli.command {
        Command::Group(c) => cmd_group(c),
        Command::Molien { group, terms, out } => cmd_molien(group, terms, out),
        Command::Coinvariants { group, max_degree, out } => cmd_coinvariants(group, max_degree, out),
        Command::Member { group, input, out } => cmd_member(group, input, out),
        Command::Verify(c) => cmd_verify(c),
        Command::Hypergraph(c) => cmd_hypergraph(c),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
