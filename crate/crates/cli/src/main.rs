use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_wgraph::config::{self, IdealConfig, SystemConfig, TableContext, TableExport, WGraphConfig};
use hecke_wgraph::coxeter::{IdealE, Side};
use hecke_wgraph::verify::{self, CheckSpec, Params, ReportHeader, Session, Status, CATALOG};
use hecke_wgraph::wgraph::SolverConfig;
use hecke_wgraph::{CoxeterSystem, Error, GenSet, HeckeAlgebra, Normalization, ParabolicModule, RTable, Variant};

/// Writes to stdout; a closed pipe ends the process quietly.
fn write_out(args: fmt::Arguments<'_>) {
    if let Err(e) = io::stdout().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! outln {
    ($($t:tt)*) => { write_out(format_args!("{}\n", format_args!($($t)*))) };
}

#[derive(Parser)]
#[command(name = "hwg", version, about = "Exact checks for Hecke modules, parabolic modules and W-graph ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the group order, roots, longest element and weights.
    Describe(SystemArg),
    /// List every element with its length and descent sets.
    Enumerate {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        json: bool,
    },
    /// Export an R-polynomial table.
    Rpoly(RpolyArgs),
    /// Run claim checks and print a JSON report.
    Verify(VerifyArgs),
    /// Report the standing hypotheses of an (E, J, K) instance.
    CheckHypotheses {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Solve for the structure polynomials of an ideal module.
    SolveRtable {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, value_enum, default_value = "minus-one")]
        variant: VariantArg,
        /// Search node budget.
        #[arg(long, default_value_t = SolverConfig::default().max_nodes)]
        max_nodes: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SystemArg {
    /// System file: {"generators", "matrix", "weights"?, "cap"?}.
    #[arg(long)]
    system: PathBuf,
}

#[derive(Args, Clone, Default)]
struct InstanceArgs {
    /// Reference set J, e.g. "s1,s2" or "{}".
    #[arg(long = "J")]
    j: Option<String>,
    /// Second set K containing J.
    #[arg(long = "K")]
    k: Option<String>,
    /// Ideal: a JSON file, or comma separated generating words such as "s1s2,s3".
    #[arg(long = "E")]
    e: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    MinusOne,
    Qs,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::MinusOne => Variant::MinusOne,
            VariantArg::Qs => Variant::Qs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Signed,
    Unsigned,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Signed => Normalization::Signed,
            NormArg::Unsigned => Normalization::Unsigned,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Classical,
    Parabolic,
    Ideal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RpolyArgs {
    #[command(flatten)]
    system: SystemArg,
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, value_enum, default_value = "minus-one")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "signed")]
    normalization: NormArg,
    #[arg(long, value_enum, default_value = "csv")]
    out: Format,
    /// Structure polynomials to use instead of solving (ideal kind only).
    #[arg(long)]
    rtable: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// System file; not needed with --list.
    #[arg(long, required_unless_present = "list")]
    system: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["all", "list"])]
    claim: Option<String>,
    /// Sweep every claim over every instance the system supports.
    #[arg(long, conflicts_with = "list")]
    all: bool,
    /// Print the claim catalog.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, value_enum)]
    normalization: Option<NormArg>,
    /// W-graph file for def1.2.
    #[arg(long)]
    wgraph: Option<PathBuf>,
    /// Structure polynomials for (E, J) to use instead of solving.
    #[arg(long)]
    rtable: Option<PathBuf>,
    /// Flavour of the --rtable file.
    #[arg(long, value_enum, default_value = "minus-one")]
    variant: VariantArg,
    /// Add wall-clock timings to the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Any error while reading input; maps to exit code 2.
struct ConfigError(String);

impl From<Error> for ConfigError {
    fn from(e: Error) -> Self {
        ConfigError(e.to_string())
    }
}

type CliResult<T> = Result<T, ConfigError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| ConfigError(format!("{}: {e}", path.display()))),
        None => {
            write_out(format_args!("{text}"));
            Ok(())
        }
    }
}

fn load_system(path: &Path) -> CliResult<(CoxeterSystem, hecke_wgraph::WeightFunction)> {
    Ok(SystemConfig::from_json(&read(path)?)?.build()?)
}

fn load_ideal(sys: &CoxeterSystem, spec: &str) -> CliResult<IdealE> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(IdealConfig::from_json(&read(path)?)?.build(sys)?);
    }
    let gens = spec
        .split(',')
        .map(|w| sys.parse_elem(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealE::closure(sys, &gens))
}

fn parse_set(sys: &CoxeterSystem, text: Option<&str>) -> CliResult<Option<GenSet>> {
    Ok(text.map(|t| sys.parse_set(t)).transpose()?)
}

struct Instance {
    j: Option<GenSet>,
    k: Option<GenSet>,
    ideal: Option<IdealE>,
}

impl InstanceArgs {
    fn resolve(&self, sys: &CoxeterSystem) -> CliResult<Instance> {
        Ok(Instance {
            j: parse_set(sys, self.j.as_deref())?,
            k: parse_set(sys, self.k.as_deref())?,
            ideal: self.e.as_deref().map(|e| load_ideal(sys, e)).transpose()?,
        })
    }
}

fn describe(args: &SystemArg) -> CliResult<ExitCode> {
    let (sys, weights) = load_system(&args.system)?;
    let n = sys.rank();
    outln!("generators: {}", sys.names().join(" "));
    outln!("matrix:");
    for s in 0..n {
        let row: Vec<String> =
            (0..n).map(|t| sys.matrix().get(s, t).map_or("inf".to_string(), |m| m.to_string())).collect();
        outln!("  {}", row.join(" "));
    }
    outln!("order: {}", sys.order());
    outln!("positive roots: {}", sys.num_positive_roots());
    let w0 = sys.longest_element();
    outln!("longest element: {} (length {})", sys.format(w0), sys.length(w0));
    outln!("Gamma: Z^{} with lexicographic order", weights.rank());
    for s in 0..n {
        outln!("  L({}) = {:?}", sys.name(s), weights.units(s));
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(args: &SystemArg, json: bool) -> CliResult<ExitCode> {
    let (sys, _) = load_system(&args.system)?;
    let rows: Vec<serde_json::Value> = sys
        .elements()
        .map(|w| {
            serde_json::json!({
                "index": w.index(),
                "word": sys.format(w),
                "length": sys.length(w),
                "left_descents": sys.format_set(sys.descents(w, Side::Left)),
                "right_descents": sys.format_set(sys.descents(w, Side::Right)),
            })
        })
        .collect();
    if json {
        outln!("{}", serde_json::to_string_pretty(&rows).expect("plain data"));
    } else {
        for r in rows {
            outln!(
                "{}\t{}\t{}\t{}\t{}",
                r["index"], r["word"].as_str().unwrap(), r["length"], r["left_descents"].as_str().unwrap(), r["right_descents"].as_str().unwrap()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn rpoly(args: &RpolyArgs) -> CliResult<ExitCode> {
    let (sys, weights) = load_system(&args.system.system)?;
    let alg = HeckeAlgebra::new(&sys, weights)?;
    let inst = args.inst.resolve(&sys)?;
    let norm: Normalization = args.normalization.into();
    let variant: Variant = args.variant.into();
    let mut ctx = TableContext::new(&alg, match args.kind {
        Kind::Classical => "classical",
        Kind::Parabolic => "parabolic",
        Kind::Ideal => "ideal",
    }, norm);
    let table = match args.kind {
        Kind::Classical => RTable::classical(&alg),
        Kind::Parabolic => {
            let j = inst.j.unwrap_or(GenSet::EMPTY);
            ctx.j = Some(sys.format_set(j));
            ctx.variant = Some(variant.as_str().into());
            RTable::extract(&ParabolicModule::new(&alg, j, variant), norm)?
        }
        Kind::Ideal => {
            let ideal = inst.ideal.ok_or_else(|| ConfigError("--kind ideal needs --E".into()))?;
            let j = inst.j.unwrap_or(GenSet::EMPTY);
            ctx.j = Some(sys.format_set(j));
            ctx.ideal = Some(ideal.describe(&sys));
            ctx.variant = Some(variant.as_str().into());
            let session = Session::new(&alg);
            if let Some(path) = &args.rtable {
                session.install_datum(config::load_datum(&sys, ideal.clone(), j, variant, &read(path)?)?);
            }
            let module = match session.ideal_module(&ideal, j, variant) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("hwg: {e}");
                    return Ok(ExitCode::from(1));
                }
            };
            RTable::extract(&*module, norm)?
        }
    };
    let export = TableExport::new(&alg, ctx, &table);
    let text = match args.out {
        Format::Csv => export.to_csv(),
        Format::Json => export.to_json() + "\n",
    };
    emit(&text, args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn print_catalog() {
    for c in CATALOG {
        outln!("{:<14} {}", c.id, c.description);
    }
}

fn run_verify(args: &VerifyArgs) -> CliResult<ExitCode> {
    if args.list {
        print_catalog();
        return Ok(ExitCode::SUCCESS);
    }
    let system = args.system.as_ref().expect("required by clap");
    let (sys, weights) = load_system(system)?;
    if sys.order() > verify::DEFAULT_ORDER_LIMIT {
        return Err(ConfigError(format!(
            "group order {} exceeds the verification limit {}",
            sys.order(),
            verify::DEFAULT_ORDER_LIMIT
        )));
    }
    let alg = HeckeAlgebra::new(&sys, weights)?;
    let mut session = Session::new(&alg);
    session.timing = args.timing;
    let inst = args.inst.resolve(&sys)?;
    if let Some(path) = &args.rtable {
        let (Some(ideal), Some(j)) = (&inst.ideal, inst.j) else {
            return Err(ConfigError("--rtable needs --E and --J".into()));
        };
        session.install_datum(config::load_datum(&sys, ideal.clone(), j, args.variant.into(), &read(path)?)?);
    }
    let reports = if args.all {
        session.run_all()?
    } else {
        let claim = args.claim.clone().ok_or_else(|| ConfigError("give --claim, --all or --list".into()))?;
        let wgraph = match &args.wgraph {
            Some(path) => Some(WGraphConfig::from_json(&read(path)?)?.build(&sys)?),
            None => None,
        };
        let params = Params {
            j: inst.j,
            k: inst.k,
            ideal: inst.ideal,
            normalization: args.normalization.map(Into::into),
            wgraph,
        };
        vec![session.run_check(&CheckSpec { claim, params })?]
    };
    let out = serde_json::json!({ "header": ReportHeader::new(&alg), "reports": reports });
    emit(&(serde_json::to_string_pretty(&out).expect("plain data") + "\n"), args.output.as_deref())?;
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in &reports {
        match r.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::Skipped => skip += 1,
        }
    }
    eprintln!("{pass} passed, {fail} failed, {skip} skipped");
    Ok(if verify::all_passed(&reports) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn check_hypotheses(system: &SystemArg, inst: &InstanceArgs) -> CliResult<ExitCode> {
    let (sys, weights) = load_system(&system.system)?;
    let alg = HeckeAlgebra::new(&sys, weights)?;
    let session = Session::new(&alg);
    let inst = inst.resolve(&sys)?;
    let report = session.check_hypotheses(inst.ideal.as_ref(), inst.j.unwrap_or(GenSet::EMPTY), inst.k);
    outln!("{}", serde_json::to_string_pretty(&report).expect("plain data"));
    Ok(if report.status == Status::Pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn solve_rtable(
    system: &SystemArg,
    inst: &InstanceArgs,
    variant: Variant,
    max_nodes: usize,
    output: Option<&Path>,
) -> CliResult<ExitCode> {
    let (sys, weights) = load_system(&system.system)?;
    let alg = HeckeAlgebra::new(&sys, weights)?;
    let inst = inst.resolve(&sys)?;
    let ideal = inst.ideal.ok_or_else(|| ConfigError("solve-rtable needs --E".into()))?;
    let j = inst.j.unwrap_or(GenSet::EMPTY);
    let mut session = Session::new(&alg);
    session.solver = SolverConfig { max_nodes };
    let module = match session.ideal_module(&ideal, j, variant) {
        Ok(m) => m,
        Err(e @ (Error::SolverIncomplete { .. } | Error::Inconsistent(_))) => {
            eprintln!("hwg: {e}");
            if let Error::SolverIncomplete { residue, .. } = &e {
                for r in residue {
                    eprintln!("  {r}");
                }
            }
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let rows = config::write_r_rows(&alg, module.datum());
    emit(&(serde_json::to_string_pretty(&rows).expect("plain data") + "\n"), output)?;
    let bad = module.validate();
    for b in &bad {
        eprintln!("hwg: {b}");
    }
    Ok(if bad.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Describe(args) => describe(args),
        Command::Enumerate { system, json } => enumerate(system, *json),
        Command::Rpoly(args) => rpoly(args),
        Command::Verify(args) => run_verify(args),
        Command::CheckHypotheses { system, inst } => check_hypotheses(system, inst),
        Command::SolveRtable { system, inst, variant, max_nodes, output } => {
            solve_rtable(system, inst, (*variant).into(), *max_nodes, output.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            eprintln!("hwg: {msg}");
            ExitCode::from(2)
        }
    }
}
