//! Command line front end: argument parsing, dispatch, and exit codes.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 input error,
//! 3 resource cap exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{catalog, FamilySpec};
use crate::cm_structure::CmGroup;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::rational::parse_q;
use crate::report::Status;
use crate::runner::{run, CheckKind, RunOptions};
use crate::signed_perm::DEFAULT_MAX_ORDER;
use crate::split_model::SplitParams;

#[derive(Debug, Parser)]
#[command(
    name = "reflexlab",
    version,
    about = "Exact checks for CM-types, reflex fields and half norms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the structure of a group (order, ι, H₀, H, C, classes).
    Group(GroupArgs),
    /// Print the CM-type orbits and odd-subset orbit representatives.
    Orbits(GroupArgs),
    /// Run verification checks and emit a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Hyperoctahedral,
    IotaTimesG0,
    Dihedral,
    File,
    Catalog,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Group family (inferred as `file` when only --file is given).
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Degree for hyperoctahedral, or n for dihedral.
    #[arg(long)]
    pub n: Option<usize>,
    /// Generators of G₀ for iota-times-g0, 1-based one-line, e.g. "2,3,1;2,1,3".
    #[arg(long)]
    pub g0: Option<String>,
    /// Generator file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Cap on group orders during closure.
    #[arg(long)]
    pub max_group_order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Write the output as JSON to this path (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Structure,
    CharacterIdentity,
    Norms,
    Lemmas,
    Pfister,
    Dihedral,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which check to run (may come from --config instead).
    #[arg(value_enum)]
    pub check: Option<CheckArg>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// TOML run configuration; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random draws per randomized check.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Split parameters e₁,…,e_N for pfister, e.g. "1,3/2,2".
    #[arg(long)]
    pub e: Option<String>,
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Record wall time per check (makes the report nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

fn parse_g0(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let gens: Vec<Vec<usize>> = text
        .split(';')
        .map(|g| {
            g.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::input(format!("bad permutation entry {x:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let degree = gens.first().map_or(0, |g| g.len());
    Ok((degree, gens))
}

fn parse_e(text: &str) -> Result<SplitParams> {
    let values = text
        .split(',')
        .map(|x| parse_q(x.trim()).ok_or_else(|| Error::input(format!("bad rational {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    SplitParams::new(values)
}

impl FamilyArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none() && self.file.is_none()
    }

    fn specs(&self) -> Result<Vec<FamilySpec>> {
        let kind = match (self.family, &self.file) {
            (Some(k), _) => k,
            (None, Some(_)) => FamilyKind::File,
            (None, None) => return Err(Error::input("no family given (use --family or --file)")),
        };
        let need_n = || self.n.ok_or_else(|| Error::input("this family needs --n"));
        Ok(match kind {
            FamilyKind::Hyperoctahedral => vec![FamilySpec::Hyperoctahedral { n: need_n()? }],
            FamilyKind::Dihedral => vec![FamilySpec::Dihedral { n: need_n()? }],
            FamilyKind::IotaTimesG0 => {
                let text = self
                    .g0
                    .as_deref()
                    .ok_or_else(|| Error::input("iota-times-g0 needs --g0"))?;
                let (degree, generators) = parse_g0(text)?;
                vec![FamilySpec::IotaTimesG0 { degree, generators }]
            }
            FamilyKind::File => {
                let path = self
                    .file
                    .clone()
                    .ok_or_else(|| Error::input("file family needs --file"))?;
                vec![FamilySpec::File { path }]
            }
            FamilyKind::Catalog => catalog(),
        })
    }
}

fn emit(path: &PathBuf, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[derive(Serialize)]
struct GroupSummary {
    family: String,
    degree: usize,
    order: usize,
    generators: Vec<String>,
    iota: String,
    projection_order: usize,
    conjugacy_classes: usize,
    h0_order: usize,
    h_order: usize,
    kernel_order: usize,
}

fn group_summary(label: String, cm: &CmGroup) -> GroupSummary {
    let g = cm.group();
    GroupSummary {
        family: label,
        degree: cm.degree(),
        order: cm.order(),
        generators: g.generators().iter().map(|x| x.to_string()).collect(),
        iota: cm.element(cm.iota()).to_string(),
        projection_order: cm.projection_image().len(),
        conjugacy_classes: g.conjugacy_classes().len(),
        h0_order: cm.h0().order(),
        h_order: cm.h().order(),
        kernel_order: cm.c_kernel().order(),
    }
}

#[derive(Serialize)]
struct OrbitListing {
    family: String,
    orbits: Vec<OrbitLine>,
    odd_subset_representatives: Vec<String>,
}

#[derive(Serialize)]
struct OrbitLine {
    representative: String,
    size: usize,
    reflex_subgroup_order: usize,
}

fn run_group(args: &GroupArgs, orbits: bool) -> Result<i32> {
    let max = args.family.max_group_order.unwrap_or(DEFAULT_MAX_ORDER);
    let mut text = String::new();
    let mut values = Vec::new();
    for spec in args.family.specs()? {
        let cm = spec.build(max)?;
        if orbits {
            let listing = OrbitListing {
                family: spec.label(),
                orbits: cm
                    .cm_orbits()
                    .iter()
                    .map(|o| OrbitLine {
                        representative: o.representative.to_string(),
                        size: o.orbit_size,
                        reflex_subgroup_order: o.stabilizer.order(),
                    })
                    .collect(),
                odd_subset_representatives: cm.jodd_representatives().iter().map(|s| s.to_string()).collect(),
            };
            text.push_str(&format!("{}\n", listing.family));
            for o in &listing.orbits {
                text.push_str(&format!(
                    "  type {}  orbit size {}  |H*| = {}\n",
                    o.representative, o.size, o.reflex_subgroup_order
                ));
            }
            text.push_str(&format!(
                "  odd subsets: {}\n",
                listing.odd_subset_representatives.join(" ")
            ));
            values.push(serde_json::to_value(listing).expect("serializes"));
        } else {
            let s = group_summary(spec.label(), &cm);
            text.push_str(&format!(
                "{}\n  degree {}  order {}  classes {}\n  ι = {}\n  |G₀| = {}  |H₀| = {}  |H| = {}  |C| = {}\n",
                s.family,
                s.degree,
                s.order,
                s.conjugacy_classes,
                s.iota,
                s.projection_order,
                s.h0_order,
                s.h_order,
                s.kernel_order
            ));
            for gen in &s.generators {
                text.push_str(&format!("  generator {gen}\n"));
            }
            values.push(serde_json::to_value(s).expect("serializes"));
        }
    }
    match &args.json {
        Some(path) => {
            let mut json = serde_json::to_string_pretty(&values).expect("serializes");
            json.push('\n');
            emit(path, &json)?;
            if path.as_os_str() != "-" {
                print!("{text}");
            }
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn verify_options(args: &VerifyArgs) -> Result<RunOptions> {
    let cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let (checks, from_all) = match args.check {
        Some(CheckArg::All) => (CheckKind::ALL.to_vec(), true),
        Some(c) => {
            let k = match c {
                CheckArg::Structure => CheckKind::Structure,
                CheckArg::CharacterIdentity => CheckKind::CharacterIdentity,
                CheckArg::Norms => CheckKind::Norms,
                CheckArg::Lemmas => CheckKind::Lemmas,
                CheckArg::Pfister => CheckKind::Pfister,
                CheckArg::Dihedral => CheckKind::Dihedral,
                CheckArg::All => unreachable!(),
            };
            (vec![k], false)
        }
        None => (
            CheckKind::parse_list(&cfg.checks)?,
            cfg.checks.iter().any(|c| c == "all"),
        ),
    };
    let families = if args.family.is_empty() {
        cfg.all_families()
    } else {
        args.family.specs()?
    };
    let e = match (&args.e, &cfg.e) {
        (Some(text), _) => Some(parse_e(text)?),
        (None, Some(list)) => Some(parse_e(&list.join(","))?),
        (None, None) => None,
    };
    let check_label = match args.check {
        Some(c) => c
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default(),
        None => "config".into(),
    };
    Ok(RunOptions {
        command: format!("verify {check_label}"),
        lenient: from_all || families.len() > 1,
        families,
        checks,
        seed: args.seed.unwrap_or(cfg.seed),
        trials: args.trials.unwrap_or(cfg.trials),
        max_group_order: args.family.max_group_order.unwrap_or(cfg.max_group_order),
        e,
        timings: args.timings || cfg.timings,
    })
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    let opts = verify_options(args)?;
    let report = run(&opts)?;
    let to_stdout = args.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &args.json {
        emit(path, &report.to_json())?;
    }
    if !to_stdout {
        let mut out = std::io::stdout().lock();
        for line in report.summary_lines() {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "overall: {}", report.status);
    }
    Ok(if report.status == Status::Fail { 1 } else { 0 })
}

/// Parses `std::env::args`, runs the command, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Group(a) => run_group(a, false),
        Command::Orbits(a) => run_group(a, true),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_g0_and_e() {
        let (d, g) = parse_g0("2,3,1; 2,1,3").unwrap();
        assert_eq!(d, 3);
        assert_eq!(g, vec![vec![2, 3, 1], vec![2, 1, 3]]);
        assert!(parse_g0("2,x").is_err());
        assert_eq!(parse_e("1, 3/2").unwrap().len(), 2);
        assert!(parse_e("1,-2").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            main_with_args([
                "reflexlab",
                "verify",
                "structure",
                "--family",
                "hyperoctahedral",
                "--n",
                "2"
            ]),
            0
        );
        assert_eq!(
            main_with_args([
                "reflexlab",
                "verify",
                "all",
                "--family",
                "hyperoctahedral",
                "--n",
                "30"
            ]),
            3
        );
        assert_eq!(
            main_with_args(["reflexlab", "verify", "all", "--family", "hyperoctahedral"]),
            2
        );
        assert_eq!(main_with_args(["reflexlab", "verify", "bogus"]), 2);
        assert_eq!(
            main_with_args(["reflexlab", "group", "--family", "dihedral", "--n", "4"]),
            0
        );
    }
}
