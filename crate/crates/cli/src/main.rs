use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckendo::localized::membership_check;
use heckendo::nilhecke::{point_class, FixedPointFunction};
use heckendo::polyring::{CoefficientRing, GradedPolynomial, Op};
use heckendo::{Error, Result};
use heckendo_cli::config::{CaseConfig, PRESETS};
use heckendo_cli::report::{CosetSummary, LocalizedSummary, SCHEMA_VERSION};
use heckendo_cli::{reproduce_paper, run_case};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "heckendo", version, about = "Endomorphisms of nil-Hecke modules of flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
struct CaseArgs {
    /// Start from a builtin preset (see list-presets).
    #[arg(long)]
    preset: Option<String>,
    /// A key = value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Root system type, A to G.
    #[arg(long = "type")]
    type_label: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Comma separated nodes (1-based) generating W_P.
    #[arg(long)]
    parabolic: Option<String>,
    /// root, A3-omega2, D4-SO8, D4-HSpin8 or a lattice file.
    #[arg(long)]
    lattice: Option<String>,
    /// A prime, or Z for the integers.
    #[arg(long)]
    prime: Option<String>,
    /// Run the exhaustive idempotent search.
    #[arg(long)]
    oracle: bool,
    /// Largest allowed log2 of the search space.
    #[arg(long)]
    oracle_cap: Option<usize>,
    /// Include the localized equation systems.
    #[arg(long)]
    localized: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl CaseArgs {
    fn config(&self) -> Result<CaseConfig> {
        let mut c = CaseConfig::default();
        if let Some(path) = &self.config {
            c.apply_file(path)?;
        }
        if let Some(p) = &self.preset {
            c.apply_preset(p)?;
        }
        let flags = [
            ("type", self.type_label.clone()),
            ("rank", self.rank.map(|r| r.to_string())),
            ("parabolic", self.parabolic.clone()),
            ("lattice", self.lattice.clone()),
            ("prime", self.prime.clone()),
            ("oracle-cap", self.oracle_cap.map(|r| r.to_string())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                c.set(k, &v)?;
            }
        }
        c.oracle |= self.oracle;
        c.localized |= self.localized;
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Endomorphism space, diagonal congruences and optional extras.
    Analyze(CaseArgs),
    /// Minimal coset representatives and weak Bruhat edges.
    Hasse(CaseArgs),
    /// Classes of products of minimal representatives.
    CosetTable(CaseArgs),
    /// Image of a composite Demazure operator on one degree mod p.
    DemazureImage {
        #[command(flatten)]
        case: CaseArgs,
        /// Subscripts outermost first, e.g. 3,4 or 2,s1,3.
        #[arg(long)]
        ops: String,
        #[arg(long)]
        degree: usize,
    },
    /// Localized idempotent equations, cleared and uncleared.
    EmitLocalized(CaseArgs),
    /// Checks whether a fixed point function lies in the image of the module.
    Membership {
        #[command(flatten)]
        case: CaseArgs,
        /// Values in representative order separated by ';', or "pt" or "one".
        #[arg(long, default_value = "pt")]
        values: String,
        /// Only the conditions with w(alpha) in the Levi subsystem.
        #[arg(long)]
        narrow: bool,
    },
    /// Runs every golden case and prints a PASS/FAIL table.
    ReproducePaper {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Builtin presets.
    ListPresets {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit(format: Format, out: Option<&Path>, json: impl FnOnce() -> String, text: impl FnOnce() -> String) -> Result<()> {
    let body = match format {
        Format::Json => json(),
        Format::Text => text(),
    };
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(x: &T) -> String {
    #[derive(Serialize)]
    struct Wrapped<'a, T> {
        schema_version: u32,
        #[serde(flatten)]
        body: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Wrapped {
        schema_version: SCHEMA_VERSION,
        body: x,
    })
    .expect("output serializes");
    s.push('\n');
    s
}

fn parse_ops(s: &str, rank: usize) -> Result<Vec<Op>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (reflect, num) = match t.strip_prefix('s') {
                Some(rest) => (true, rest),
                None => (false, t),
            };
            let i: usize = num.parse().map_err(|_| Error::Parse(format!("bad operator {t:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::Parse(format!("operator index {i} out of range")));
            }
            Ok(if reflect { Op::Reflect(i - 1) } else { Op::Delta(i - 1) })
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze(args) => {
            let cfg = args.config()?;
            let report = run_case(&cfg)?;
            emit(args.format, cfg.out.as_deref(), || report.to_json(), || report.to_text())?;
            for e in &report.errors {
                eprintln!("error: {e}");
            }
            Ok(report.ok())
        }
        Command::Hasse(args) => {
            let cfg = args.config()?;
            let (cs, _) = cfg.build()?;
            let s = CosetSummary::new(&cs);
            emit(args.format, cfg.out.as_deref(), || to_json(&s), || {
                let mut out = format!("{} elements, Poincare polynomial {}\n", s.size, s.poincare);
                for r in &s.reps {
                    out.push_str(&format!("{} (length {})\n", r.name, r.length));
                }
                for e in &s.hasse_edges {
                    out.push_str(&format!("{} -[{}]-> {}\n", e.from, e.generator, e.to));
                }
                out
            })?;
            Ok(true)
        }
        Command::CosetTable(args) => {
            let cfg = args.config()?;
            let (cs, _) = cfg.build()?;
            let table = cs.mult_table();
            #[derive(Serialize)]
            struct Table {
                reps: Vec<String>,
                table: Vec<Vec<usize>>,
            }
            let t = Table {
                reps: (0..cs.len()).map(|k| cs.rep_name(k)).collect(),
                table,
            };
            emit(args.format, cfg.out.as_deref(), || to_json(&t), || {
                let mut out = String::new();
                for (k, r) in t.reps.iter().enumerate() {
                    out.push_str(&format!("{k}: {r}\n"));
                }
                for row in &t.table {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    out.push_str(&cells.join(" "));
                    out.push('\n');
                }
                out
            })?;
            Ok(true)
        }
        Command::DemazureImage { case, ops, degree } => {
            let cfg = case.config()?;
            let rs = cfg.root_system()?;
            let lat = cfg.lattice(&rs)?;
            let p = cfg
                .prime()
                .ok_or_else(|| Error::Config("images are computed modulo a prime".into()))?;
            let ops = parse_ops(&ops, rs.rank())?;
            let img = lat.homogeneous_image(&ops, degree, p);
            #[derive(Serialize)]
            struct Image {
                operator: String,
                degree: usize,
                prime: u64,
                dimension: usize,
                span: Vec<String>,
            }
            let im = Image {
                operator: heckendo::polyring::format_ops(&ops),
                degree,
                prime: p,
                dimension: img.len(),
                span: img.iter().map(|f| lat.format(f)).collect(),
            };
            emit(case.format, cfg.out.as_deref(), || to_json(&im), || {
                format!("{} on degree {} mod {} = {}\n", im.operator, degree, p, lat.format_span(&img))
            })?;
            Ok(true)
        }
        Command::EmitLocalized(args) => {
            let cfg = args.config()?;
            let (cs, lat) = cfg.build()?;
            let l = LocalizedSummary::new(&cs, &lat)?;
            emit(args.format, cfg.out.as_deref(), || to_json(&l), || {
                let mut out = format!("x_Pi = {}\nx_P = {}\nx_Pi/P = {}\n", l.x_pi, l.x_p, l.x_pi_over_p);
                for line in l.coefficients.iter().chain(&l.idempotent_equations).chain(&l.cleared_equations).chain(&l.divisibility) {
                    out.push_str(line);
                    out.push('\n');
                }
                for u in &l.invariant_unknowns {
                    out.push_str(&format!("{u} is W_P-invariant\n"));
                }
                out
            })?;
            Ok(true)
        }
        Command::Membership { case, values, narrow } => {
            let cfg = case.config()?;
            let (cs, lat) = cfg.build()?;
            let z = CoefficientRing::Integers;
            let f = match values.trim() {
                "pt" => point_class(&cs, &lat, z),
                "one" => FixedPointFunction::constant(&cs, &lat, GradedPolynomial::one(lat.rank(), z)),
                text => {
                    let vals = text
                        .split(';')
                        .map(|v| lat.parse(v.trim(), z))
                        .collect::<Result<Vec<_>>>()?;
                    if vals.len() != cs.len() {
                        return Err(Error::Config(format!("expected {} values, got {}", cs.len(), vals.len())));
                    }
                    FixedPointFunction { values: vals }
                }
            };
            let v = membership_check(&cs, &lat, &f, narrow);
            emit(case.format, cfg.out.as_deref(), || to_json(&v), || {
                let mut out = format!(
                    "{} ({} conditions checked)\n",
                    if v.passed { "member" } else { "not a member" },
                    v.checked
                );
                for fl in &v.failures {
                    out.push_str(&format!("fails at ({}, {})\n", fl.rep, fl.root));
                }
                out
            })?;
            Ok(v.passed)
        }
        Command::ReproducePaper { out, format } => {
            let r = reproduce_paper();
            emit(format, out.as_deref(), || r.to_json(), || r.to_text())?;
            if out.is_some() && format == Format::Json {
                print!("{}", r.to_text());
            }
            Ok(r.all_passed())
        }
        Command::ListPresets { format } => {
            #[derive(Serialize)]
            struct P {
                name: &'static str,
                description: &'static str,
                root_system: String,
                parabolic: Vec<usize>,
                lattice: &'static str,
                prime: u64,
            }
            let list: Vec<P> = PRESETS
                .iter()
                .map(|p| P {
                    name: p.name,
                    description: p.description,
                    root_system: format!("{}{}", p.type_label, p.rank),
                    parabolic: p.parabolic.to_vec(),
                    lattice: p.lattice.name(),
                    prime: p.prime,
                })
                .collect();
            emit(format, None, || to_json(&list), || {
                list.iter().map(|p| format!("{:<11} {}\n", p.name, p.description)).collect()
            })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
