//! `mothership`: generate, validate, evaluate, solve, export and plot
//! vehicle-robot routing instances.
//!
//! Exit codes: 0 on success, 1 when `validate` (or `import-solution`) finds
//! constraint violations, 2 on usage and input errors.

mod output;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use mothership::eval::describe_sortie;
use mothership::exact::{solve_bnb, solve_oracle, Budget};
use mothership::heuristic::{self, SearchParams};
use mothership::instgen::{generate, GenParams};
use mothership::mipexport::{export_bigm, export_miqcp, import_solution, ExportOptions, VarName};
use mothership::{
    parse_instance, parse_plan, propagate, serialize_instance, serialize_plan, validate, Fixture, Instance,
    ProofStatus, RoutePlan, Schedule, SolveReport,
};
use serde_json::json;

use output::{num, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "mothership", version, about = "Vehicle-robot routing with deadlines")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Include wall-clock times in reports (they make output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded random instance.
    Generate(GenerateArgs),
    /// Check a plan against every constraint; exit 1 on violations.
    Validate(InputArgs),
    /// Propagate a plan's schedule and print every time variable.
    Evaluate(InputArgs),
    /// Solve an instance exactly or heuristically.
    Solve(SolveArgs),
    /// Write the mathematical model in LP format.
    Export(ExportArgs),
    /// Rebuild a plan from an external solver's variable values.
    ImportSolution(ImportArgs),
    /// Run the fixtures and a generated suite through both solvers; CSV out.
    Bench(BenchArgs),
    /// Draw an instance and plan as SVG.
    Plot(PlotArgs),
    /// List the built-in fixtures, or print one as JSON.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Built-in instance (its published plan is used unless --plan is given).
    #[arg(long, value_enum, conflicts_with = "instance")]
    fixture: Option<FixtureName>,
    /// Instance JSON file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Plan JSON file.
    #[arg(long)]
    plan: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FixtureName {
    Small,
    Medium,
}

impl From<FixtureName> for Fixture {
    fn from(f: FixtureName) -> Self {
        match f {
            FixtureName::Small => Fixture::Small,
            FixtureName::Medium => Fixture::Medium,
        }
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    stations: usize,
    #[arg(long, default_value_t = 2)]
    robots: usize,
    #[arg(long, default_value_t = 8)]
    customers: usize,
    #[arg(long, default_value_t = 100.0)]
    width: f64,
    #[arg(long, default_value_t = 100.0)]
    height: f64,
    /// Robot travel range.
    #[arg(long, default_value_t = 200.0)]
    tr: f64,
    /// Vehicle speed.
    #[arg(long, default_value_t = 50.0)]
    vv: f64,
    /// Robot speed.
    #[arg(long, default_value_t = 5.0)]
    vr: f64,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Heuristic,
    Oracle,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Branch-and-bound node cap.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock cap in seconds (per restart for the heuristic).
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Perturbation rounds per heuristic restart.
    #[arg(long, default_value_t = 200)]
    max_iterations: u64,
    /// Also write the solution plan to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    Miqcp,
    Bigm,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Form::Miqcp)]
    form: Form,
    /// Use the robot speed on vehicle legs in the arrival rows, as printed
    /// in the original model (quadratic form only).
    #[arg(long)]
    paper_literal: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ImportArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Solver output with one `name value` pair per line.
    solution: PathBuf,
    /// Write the rebuilt plan to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Number of generated instances.
    #[arg(long, default_value_t = 10)]
    suite: u64,
    /// Seed of the first generated instance.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    stations: usize,
    #[arg(long, default_value_t = 2)]
    robots: usize,
    #[arg(long, default_value_t = 6)]
    customers: usize,
    /// Branch-and-bound node cap per instance.
    #[arg(long, default_value_t = 2_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 200)]
    max_iterations: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Image width in pixels.
    #[arg(long, default_value_t = 640.0)]
    width: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FixturesArgs {
    /// Print this fixture's instance as JSON.
    #[arg(value_enum)]
    name: Option<FixtureName>,
    /// Print the fixture's published plan instead of the instance.
    #[arg(long, requires = "name")]
    plan: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("MOTHERSHIP_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Validate(a) => cmd_validate(a, fmt),
        Command::Evaluate(a) => cmd_evaluate(a, fmt),
        Command::Solve(a) => cmd_solve(a, fmt, cli.timing),
        Command::Export(a) => cmd_export(a),
        Command::ImportSolution(a) => cmd_import(a, fmt),
        Command::Bench(a) => cmd_bench(a, fmt, cli.timing),
        Command::Plot(a) => cmd_plot(a),
        Command::Fixtures(a) => cmd_fixtures(a, fmt),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => output::stdout(text),
    }
}

impl InputArgs {
    fn instance(&self) -> Result<(Instance, Option<Fixture>)> {
        match (&self.fixture, &self.instance) {
            (Some(f), _) => Ok((Fixture::from(*f).instance(), Some((*f).into()))),
            (None, Some(path)) => {
                let inst =
                    parse_instance(&read(path)?).with_context(|| format!("invalid instance {}", path.display()))?;
                Ok((inst, None))
            }
            (None, None) => bail!("an instance is required: pass --fixture or --instance"),
        }
    }

    fn plan(&self, fixture: Option<Fixture>) -> Result<Option<RoutePlan>> {
        match (&self.plan, fixture) {
            (Some(path), _) => {
                let plan = parse_plan(&read(path)?).with_context(|| format!("invalid plan {}", path.display()))?;
                Ok(Some(plan))
            }
            (None, Some(f)) => Ok(Some(f.plan())),
            (None, None) => Ok(None),
        }
    }

    fn instance_and_plan(&self) -> Result<(Instance, RoutePlan, Option<Fixture>)> {
        let (inst, fixture) = self.instance()?;
        let plan = self
            .plan(fixture)?
            .context("a plan is required: pass --plan or use --fixture")?;
        Ok((inst, plan, fixture))
    }
}

fn cmd_generate(a: &GenerateArgs) -> Result<ExitCode> {
    let inst = generate(&GenParams {
        seed: a.seed,
        stations: a.stations,
        robots: a.robots,
        customers: a.customers,
        width: a.width,
        height: a.height,
        robot_range: a.tr,
        vehicle_speed: a.vv,
        robot_speed: a.vr,
    })?;
    let mut text = serialize_instance(&inst);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(a: &InputArgs, fmt: Format) -> Result<ExitCode> {
    let (inst, plan, _) = a.instance_and_plan()?;
    let violations = validate(&inst, &plan);
    match fmt {
        Format::Json => output::stdout(&output::json(&violations)?)?,
        Format::Csv | Format::Table => {
            let mut t = Table::new(["constraint", "kind", "detail"]);
            for v in &violations {
                let kind = serde_json::to_value(v.kind)?;
                t.row([
                    v.kind.constraints().to_string(),
                    kind.as_str().unwrap_or_default().to_string(),
                    v.detail.clone(),
                ]);
            }
            if fmt == Format::Csv {
                output::stdout(&t.to_csv()?)?;
            } else if t.is_empty() {
                output::stdout("plan is feasible\n")?;
            } else {
                output::stdout(&t.to_text())?;
            }
        }
    }
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Time variables in the order stations are visited, then customers by id.
fn schedule_rows(plan: &RoutePlan, sched: &Schedule) -> Vec<(String, f64)> {
    let mut rows = Vec::new();
    for &k in &plan.tour {
        rows.push((format!("t_{k}^arrive"), sched.arrive_at(k)));
        rows.push((format!("t_{k}^depart"), sched.depart_at(k)));
    }
    for (o, &c) in sched.complete.iter().enumerate() {
        rows.push((format!("t_{o}^complete"), c));
    }
    for (o, &t) in sched.tardiness.iter().enumerate() {
        if t > 0.0 {
            rows.push((format!("t_{o}^tardiness"), t));
        }
    }
    rows
}

fn cmd_evaluate(a: &InputArgs, fmt: Format) -> Result<ExitCode> {
    let (inst, plan, fixture) = a.instance_and_plan()?;
    let sched = propagate(&inst, &plan)?;
    let violations = validate(&inst, &plan);
    for v in &violations {
        log::warn!("{v}");
    }
    let binaries: Vec<String> = mothership::mipexport::plan_assignment(&inst, &plan)?
        .into_iter()
        .filter(|(v, x)| v.is_binary() && *x != 0.0)
        .map(|(v, _): (VarName, f64)| v.to_string())
        .collect();
    match fmt {
        Format::Json => {
            let doc = json!({
                "schedule": sched,
                "nonzero_binaries": binaries,
                "violations": violations,
            });
            output::stdout(&output::json(&doc)?)?;
        }
        Format::Csv => {
            let mut t = Table::new(["variable", "value"]);
            for b in &binaries {
                t.row([b.clone(), "1".into()]);
            }
            for (name, v) in schedule_rows(&plan, &sched) {
                t.row([name, num(v)]);
            }
            t.row(["objective".to_string(), num(sched.objective)]);
            output::stdout(&t.to_csv()?)?;
        }
        Format::Table => {
            let mut t = Table::new(["Variable", "Value"]);
            for b in &binaries {
                t.row([b.as_str(), "1"]);
            }
            for (name, v) in schedule_rows(&plan, &sched) {
                t.row([name, format!("{v:.2}")]);
            }
            t.row(["objective".to_string(), format!("{:.4}", sched.objective)]);
            t.footnote("Times are in distance units per speed unit.");
            if fixture == Some(Fixture::Small) {
                t.footnote("published reference values: 36.52 (table) / 35.52 (text)");
            }
            if !violations.is_empty() {
                t.footnote(format!(
                    "plan breaks {} constraint(s); run `validate`",
                    violations.len()
                ));
            }
            output::stdout(&t.to_text())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn status_fields(status: &ProofStatus) -> (&'static str, Option<f64>, Option<f64>) {
    match *status {
        ProofStatus::Optimal => ("optimal", None, None),
        ProofStatus::BudgetExhausted { lower_bound, gap } => ("budget_exhausted", Some(lower_bound), Some(gap)),
        ProofStatus::Heuristic => ("heuristic", None, None),
    }
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>> {
    match s {
        None => Ok(None),
        Some(v) if v.is_finite() && v > 0.0 => Ok(Some(Duration::from_secs_f64(v))),
        Some(v) => bail!("--budget-seconds must be positive, got {v}"),
    }
}

fn run_method(inst: &Instance, method: Method, budget: Budget, params: &SearchParams) -> Result<SolveReport> {
    info!("solving with {}", method.name());
    Ok(match method {
        Method::Exact => solve_bnb(inst, budget)?,
        Method::Oracle => solve_oracle(inst)?,
        Method::Heuristic => heuristic::solve(inst, params)?,
    })
}

fn cmd_solve(a: &SolveArgs, fmt: Format, timing: bool) -> Result<ExitCode> {
    let (inst, _) = a.input.instance()?;
    let max_time = seconds(a.budget_seconds)?;
    let budget = Budget {
        max_nodes: a.budget_nodes,
        max_time,
    };
    let params = SearchParams {
        seed: a.seed,
        max_iterations: a.max_iterations,
        time_limit: max_time,
        restarts: a.restarts,
        ..SearchParams::default()
    };
    let rep = run_method(&inst, a.method, budget, &params)?;
    if let Some(path) = &a.output {
        fs::write(path, serialize_plan(&rep.plan)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let (status, lower_bound, gap) = status_fields(&rep.status);
    match fmt {
        Format::Json => {
            let mut doc = json!({
                "method": a.method.name(),
                "objective": rep.objective,
                "status": rep.status,
                "nodes": rep.nodes,
                "plan": rep.plan,
                "schedule": rep.schedule,
            });
            if timing {
                doc["wall_time_s"] = json!(rep.wall_time.as_secs_f64());
            }
            output::stdout(&output::json(&doc)?)?;
        }
        Format::Csv => {
            let mut headers = vec!["method", "objective", "status", "lower_bound", "gap", "nodes"];
            if timing {
                headers.push("wall_time_s");
            }
            let mut t = Table::new(headers);
            let mut row = vec![
                a.method.name().to_string(),
                num(rep.objective),
                status.to_string(),
                lower_bound.map(num).unwrap_or_default(),
                gap.map(num).unwrap_or_default(),
                rep.nodes.to_string(),
            ];
            if timing {
                row.push(num(rep.wall_time.as_secs_f64()));
            }
            t.row(row);
            output::stdout(&t.to_csv()?)?;
        }
        Format::Table => {
            let mut t = Table::new(["Field", "Value"]);
            t.row(["method", a.method.name()]);
            t.row(["objective".to_string(), format!("{:.4}", rep.objective)]);
            t.row(["status", status]);
            if let (Some(lb), Some(g)) = (lower_bound, gap) {
                t.row(["lower bound".to_string(), format!("{lb:.4}")]);
                t.row(["gap".to_string(), format!("{g:.4}")]);
            }
            t.row(["nodes".to_string(), rep.nodes.to_string()]);
            if timing {
                t.row([
                    "wall time (s)".to_string(),
                    format!("{:.3}", rep.wall_time.as_secs_f64()),
                ]);
            }
            let tour: Vec<String> = rep.plan.tour.iter().map(|k| format!("S{k}")).collect();
            t.row(["tour".to_string(), tour.join(" -> ")]);
            for s in &rep.plan.sorties {
                t.row(["sortie".to_string(), describe_sortie(s)]);
            }
            output::stdout(&t.to_text())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(a: &ExportArgs) -> Result<ExitCode> {
    let (inst, _) = a.input.instance()?;
    let text = match a.form {
        Form::Miqcp => export_miqcp(
            &inst,
            ExportOptions {
                paper_literal: a.paper_literal,
            },
        ),
        Form::Bigm if a.paper_literal => bail!("--paper-literal applies to --form miqcp only"),
        Form::Bigm => export_bigm(&inst),
    };
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_import(a: &ImportArgs, fmt: Format) -> Result<ExitCode> {
    let (inst, _) = a.input.instance()?;
    let text = read(&a.solution)?;
    let imported = import_solution(&inst, &text)?;
    if let Some(path) = &a.output {
        fs::write(path, serialize_plan(&imported.plan)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mismatches: Vec<_> = imported
        .mismatches
        .iter()
        .map(|m| json!({"variable": m.variable.to_string(), "solver": m.solver, "propagated": m.propagated}))
        .collect();
    match fmt {
        Format::Json => {
            let doc = json!({
                "plan": imported.plan,
                "objective": imported.schedule.objective,
                "violations": imported.violations,
                "mismatches": mismatches,
            });
            output::stdout(&output::json(&doc)?)?;
        }
        Format::Csv | Format::Table => {
            let mut t = Table::new(["Field", "Value"]);
            let tour: Vec<String> = imported.plan.tour.iter().map(|k| format!("S{k}")).collect();
            t.row(["tour".to_string(), tour.join(" -> ")]);
            for s in &imported.plan.sorties {
                t.row(["sortie".to_string(), describe_sortie(s)]);
            }
            t.row(["objective".to_string(), num(imported.schedule.objective)]);
            for v in &imported.violations {
                t.row(["violation".to_string(), v.to_string()]);
            }
            for m in &imported.mismatches {
                t.row([
                    "time mismatch".to_string(),
                    format!("{}: solver {} vs propagated {}", m.variable, m.solver, m.propagated),
                ]);
            }
            if fmt == Format::Csv {
                output::stdout(&t.to_csv()?)?;
            } else {
                output::stdout(&t.to_text())?;
            }
        }
    }
    Ok(if imported.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bench(a: &BenchArgs, fmt: Format, timing: bool) -> Result<ExitCode> {
    let mut suite: Vec<(String, Instance)> = Fixture::ALL
        .iter()
        .map(|f| (f.name().to_string(), f.instance()))
        .collect();
    for i in 0..a.suite {
        let seed = a.seed + i;
        let inst = generate(&GenParams {
            seed,
            stations: a.stations,
            robots: a.robots,
            customers: a.customers,
            ..GenParams::default()
        })?;
        suite.push((format!("gen-{seed}"), inst));
    }
    let budget = Budget::nodes(a.budget_nodes);
    let params = SearchParams {
        max_iterations: a.max_iterations,
        restarts: a.restarts,
        time_limit: None,
        ..SearchParams::default()
    };

    let mut headers = vec!["instance", "method", "objective", "status", "gap", "nodes"];
    if timing {
        headers.push("wall_time_s");
    }
    let mut t = Table::new(headers);
    let mut records = Vec::new();
    for (name, inst) in &suite {
        for method in [Method::Exact, Method::Heuristic] {
            let started = Instant::now();
            let result = run_method(
                inst,
                method,
                budget,
                &SearchParams {
                    seed: 0,
                    ..params.clone()
                },
            );
            let elapsed = started.elapsed().as_secs_f64();
            let (objective, status, gap, nodes) = match &result {
                Ok(rep) => {
                    let (status, _, gap) = status_fields(&rep.status);
                    (Some(rep.objective), status.to_string(), gap, Some(rep.nodes))
                }
                Err(e) => (None, format!("error: {e}"), None, None),
            };
            info!("{name} {}: {status}", method.name());
            let mut row = vec![
                name.clone(),
                method.name().to_string(),
                objective.map(num).unwrap_or_default(),
                status.clone(),
                gap.map(num).unwrap_or_default(),
                nodes.map(|n| n.to_string()).unwrap_or_default(),
            ];
            let mut rec = json!({
                "instance": name,
                "method": method.name(),
                "objective": objective,
                "status": status,
                "gap": gap,
                "nodes": nodes,
            });
            if timing {
                row.push(num(elapsed));
                rec["wall_time_s"] = json!(elapsed);
            }
            t.row(row);
            records.push(rec);
        }
    }
    let text = match fmt {
        Format::Json => output::json(&records)?,
        Format::Table => t.to_text(),
        Format::Csv => t.to_csv()?,
    };
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(a: &PlotArgs) -> Result<ExitCode> {
    if !(a.width.is_finite() && a.width > 100.0) {
        bail!("--width must exceed 100 pixels");
    }
    let (inst, fixture) = a.input.instance()?;
    let plan = a.input.plan(fixture)?;
    let title = match fixture {
        Some(f) => format!("{} instance", f.name()),
        None => "instance".to_string(),
    };
    emit(
        a.output.as_deref(),
        &plot::render(&inst, plan.as_ref(), a.width, &title),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fixtures(a: &FixturesArgs, fmt: Format) -> Result<ExitCode> {
    if let Some(name) = a.name {
        let f = Fixture::from(name);
        let mut text = if a.plan {
            serialize_plan(&f.plan())
        } else {
            serialize_instance(&f.instance())
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        output::stdout(&text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut t = Table::new([
        "name",
        "stations",
        "robots",
        "customers",
        "range",
        "vehicle_speed",
        "robot_speed",
    ]);
    for f in Fixture::ALL {
        let inst = f.instance();
        t.row([
            f.name().to_string(),
            inst.num_stations().to_string(),
            inst.fleet_size().to_string(),
            inst.num_customers().to_string(),
            num(inst.robot_range()),
            num(inst.vehicle_speed()),
            num(inst.robot_speed()),
        ]);
    }
    match fmt {
        Format::Table => output::stdout(&t.to_text())?,
        Format::Csv => output::stdout(&t.to_csv()?)?,
        Format::Json => {
            let list: Vec<_> = Fixture::ALL
                .iter()
                .map(|f| {
                    let inst = f.instance();
                    json!({
                        "name": f.name(),
                        "stations": inst.num_stations(),
                        "robots": inst.fleet_size(),
                        "customers": inst.num_customers(),
                        "robot_range": inst.robot_range(),
                        "vehicle_speed": inst.vehicle_speed(),
                        "robot_speed": inst.robot_speed(),
                    })
                })
                .collect();
            output::stdout(&output::json(&list)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
