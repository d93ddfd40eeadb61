use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_cft::abgroup::{cor37_check, FiniteAbelianGroup};
use abelian_cft::cubic::{pht1_check, pht2_check, s3_family_check};
use abelian_cft::report::{field_report, FieldOptions};
use abelian_cft::survey::{run_survey, write_rows, OutputFormat, SurveyConfig, SurveyMode};
use abelian_cft::theorems::{n1_bound, t_bound, t_bound_ell};
use abelian_cft::{Certificate, Error, ParsedField};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "abelian-cft",
    version,
    about = "Abelian number fields and Hilbert class field checks"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for surveys.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and certificates for one field.
    Field(FieldArgs),
    /// Sweep quadratic fields over a range of fundamental discriminants.
    Survey(SurveyArgs),
    /// The t-bound for a conductor, optionally its ℓ-part.
    Tbound {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// S3 test for x^3 + cx + c and residue degree checks for a class number.
    Cubic {
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        h: Option<u64>,
    },
    /// Upper bound on the class number of an abelian Hilbert class field.
    N1bound(N1Args),
    /// Automorphism group orders and the cyclic degree exclusion test.
    Autorder {
        /// Invariant factors or any cyclic decomposition, e.g. 2,4.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u64>>,
        /// Degree and class number `n,m` for the exclusion test.
        #[arg(long, value_delimiter = ',', num_args = 1, value_name = "N,M")]
        cor37: Option<Vec<u64>>,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// `m=<int>;gens=<list>`, `quad:d=<int>`, `cyclotomic:m=<int>` or `real-cyclotomic:m=<int>`.
    spec: String,
    /// Class number, taken as given.
    #[arg(long)]
    h: Option<u64>,
    /// Class group as cyclic orders, e.g. 2,2.
    #[arg(long, value_delimiter = ',')]
    class_group: Option<Vec<u64>>,
    /// Norm of the units for real fields.
    #[arg(long, value_enum)]
    unit_norm: Option<UnitNorm>,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitNorm {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Imaginary,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Smallest discriminant D.
    #[arg(long, allow_hyphen_values = true)]
    d_min: i64,
    /// Largest discriminant D.
    #[arg(long, allow_hyphen_values = true)]
    d_max: i64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct N1Args {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    h: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    m1: u64,
    #[arg(long)]
    po_k: u64,
    #[arg(long)]
    po_rel: u64,
    /// Class number of the Hilbert class field, compared against the bound.
    #[arg(long)]
    h_hilbert: Option<u64>,
}

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

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_bug_trap() { 3 } else { 2 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}

fn output(cli: &Cli) -> io::Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(cli: &Cli, value: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let mut out = output(cli)?;
    if cli.json {
        serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", text())?;
    }
    out.flush()?;
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn cert_line(c: &Certificate) -> String {
    let subject = c
        .subject
        .as_deref()
        .map(|s| format!(" [{s}]"))
        .unwrap_or_default();
    format!("{}: {}{subject}\n", c.theorem.tag(), c.verdict.as_str())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Field(args) => cmd_field(cli, args),
        Command::Survey(args) => cmd_survey(cli, args),
        Command::Tbound { m, ell } => cmd_tbound(cli, *m, *ell),
        Command::Cubic { c, h } => cmd_cubic(cli, *c, *h),
        Command::N1bound(args) => cmd_n1bound(cli, args),
        Command::Autorder { group, cor37 } => cmd_autorder(cli, group.as_deref(), cor37.as_deref()),
    }
}

fn cmd_field(cli: &Cli, args: &FieldArgs) -> Result<(), Failure> {
    let parsed: ParsedField = args.spec.parse()?;
    let class_group = args
        .class_group
        .as_ref()
        .map(|orders| {
            if orders.contains(&0) {
                return Err(Error::Parse("class group orders must be positive".into()));
            }
            Ok(FiniteAbelianGroup::from_cyclic_orders(orders))
        })
        .transpose()?;
    let opts = FieldOptions {
        h: args.h,
        class_group,
        unit_norm_plus: args.unit_norm.map(|n| matches!(n, UnitNorm::Plus)),
    };
    let report = field_report(&args.spec, &parsed, &opts)?;
    emit(cli, &to_value(&report), || {
        let mut s = format!(
            "field {}\ndegree {}  conductor {}  discriminant {}\nGalois group {:?}  t {}\n",
            report.input,
            report.degree,
            report.conductor,
            report.discriminant.value,
            report.galois_group,
            report.t_bound.t
        );
        if let Some(h) = report.h {
            s += &format!("h {h}\n");
        }
        if let Some(g) = report.genus_degree {
            s += &format!("genus degree {g}\n");
        }
        if let Some(p) = report.polya_order {
            s += &format!("Pólya order {p}\n");
        }
        for c in &report.certificates {
            s += &cert_line(c);
        }
        s
    })
}

fn cmd_survey(cli: &Cli, args: &SurveyArgs) -> Result<(), Failure> {
    let config = SurveyConfig {
        mode: match args.mode {
            Mode::Imaginary => SurveyMode::ImaginaryQuadratic,
            Mode::Real => SurveyMode::RealQuadratic,
        },
        d_min: args.d_min,
        d_max: args.d_max,
        workers: cli.workers as usize,
        format: match args.format {
            Format::Csv => OutputFormat::Csv,
            Format::Jsonl => OutputFormat::Jsonl,
        },
    };
    let result = run_survey(&config)?;
    write_rows(&result.rows, config.format, output(cli)?)?;
    let summary = &result.summary;
    if cli.json {
        eprintln!("{}", to_value(summary));
    } else {
        let counts: Vec<String> = summary
            .by_verdict
            .iter()
            .map(|(v, n)| format!("{v} {n}"))
            .collect();
        eprintln!("{} fields: {}", summary.fields, counts.join(", "));
    }
    Ok(())
}

fn cmd_tbound(cli: &Cli, m: u64, ell: Option<u64>) -> Result<(), Failure> {
    let breakdown = t_bound(m)?;
    let ell_cert = ell.map(|l| t_bound_ell(m, l)).transpose()?;
    let value = json!({ "t_bound": breakdown, "ell": ell_cert });
    emit(cli, &value, || {
        let mut s = format!("t({m}) = {}\n", breakdown.t);
        if let Some(c) = &ell_cert {
            s += &cert_line(c);
        }
        s
    })
}

fn cmd_cubic(cli: &Cli, c: i64, h: Option<u64>) -> Result<(), Failure> {
    let s3 = s3_family_check(c);
    let mut certs = vec![s3];
    if let Some(u) = h {
        certs.push(pht2_check(u)?);
        certs.push(pht1_check(6, u, 3, 3, &FiniteAbelianGroup::cyclic(u))?);
    }
    emit(cli, &to_value(&certs), || {
        certs.iter().map(cert_line).collect()
    })
}

fn cmd_n1bound(cli: &Cli, a: &N1Args) -> Result<(), Failure> {
    let bound = n1_bound(a.n, a.h, a.m, a.m1, a.po_k, a.po_rel)?;
    let cert = bound.certificate(a.h_hilbert);
    let value = json!({ "bound": bound, "floor": bound.floor().to_string(), "certificate": cert });
    emit(cli, &value, || {
        format!(
            "bound {} (floor {})\n{}",
            bound.bound,
            bound.floor(),
            cert_line(&cert)
        )
    })
}

fn cmd_autorder(cli: &Cli, group: Option<&[u64]>, cor37: Option<&[u64]>) -> Result<(), Failure> {
    if group.is_none() && cor37.is_none() {
        return Err(Error::Parse("autorder needs --group or --cor37".into()).into());
    }
    let mut value = json!({});
    let mut text = String::new();
    if let Some(orders) = group {
        if orders.contains(&0) {
            return Err(Error::Parse("group orders must be positive".into()).into());
        }
        let g = FiniteAbelianGroup::from_cyclic_orders(orders);
        let aut = g.aut_order();
        text += &format!("|Aut({g})| = {aut}\n");
        value["group"] = json!(g.invariant_factors());
        value["aut_order"] = json!(aut.to_string());
    }
    if let Some(nm) = cor37 {
        let [n, m] = nm else {
            return Err(Error::Parse("--cor37 takes two values n,m".into()).into());
        };
        let cert = cor37_check(*n, *m)?;
        text += &cert_line(&cert);
        value["cor37"] = to_value(&cert);
    }
    emit(cli, &value, || text)
}
