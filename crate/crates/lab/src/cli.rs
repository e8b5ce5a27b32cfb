//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use patchwork_lab_core::census::{admissible_count, census_report, star_scheme_count};
use patchwork_lab_core::haas::{haas_family_count, matches_haas_pattern, run_haas};
use patchwork_lab_core::hp::REPORT_DIGITS;
use patchwork_lab_core::partitions::{count_partitions, enumerate_partitions, parse_partition_tuple};
use patchwork_lab_core::patchwork::{
    build_patchwork, build_patchwork_uncertified, count_rect_triangulations, extract_scheme,
    random_convex_primitive_triangulation, PatchworkCurve, PatchworkError, SignDistribution,
};
use patchwork_lab_core::scheme::{
    bezout_admissible_check, condition_star_check, harnack_bound, parse_scheme, Node,
};
use patchwork_lab_core::trees::{
    count_rooted_trees, estimate_otter_constant, lemma9_bound_check, TreeCountTable,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::formats::{read_signs, read_triangulation, signs_json, triangulation_json, write_file, SchemeSummary};
use crate::svg::{render_curve, render_haas};
use crate::sweep::run_sweep;

/// Largest `n` accepted by the exact tree-counting commands.
pub const MAX_TREE_N: usize = 5000;
/// Largest `m` accepted by `partitions list`.
pub const MAX_LIST_M: u32 = 40;
/// Largest `m` accepted by `partitions count`.
pub const MAX_COUNT_M: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "patchwork-lab", version, about = "Patchworked real plane curves and their schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, canonicalize and summarize real schemes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Rooted-tree counts and the branch-cutting bound.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Integer partitions.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Triangulations, sign distributions and patchworked curves.
    #[command(subcommand)]
    Patchwork(PatchworkCmd),
    /// The zone construction of maximal curves.
    #[command(subcommand)]
    Haas(HaasCmd),
    /// Counting bounds and small exact counts.
    #[command(subcommand)]
    Census(CensusCmd),
}

#[derive(Debug, Subcommand)]
pub enum SchemeCmd {
    /// Print the tree of a scheme as JSON.
    Parse { text: String },
    /// Print the canonical text form.
    Canon { text: String },
    /// Print oval count, depth and restriction checks.
    Stats {
        text: String,
        #[arg(long)]
        d: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreesCmd {
    /// Number of rooted trees with n vertices.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Counts of rooted trees with n vertices and height at most h.
    DepthTable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
    },
    /// Ratio estimate T_{n+1} / T_n.
    Otter {
        #[arg(long)]
        n: usize,
    },
    /// Check T_n <= T_{n+1}^[h] * n^(n/h).
    Lemma9 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCmd {
    /// p(m).
    Count {
        #[arg(long)]
        m: usize,
    },
    /// All partitions of m, one per line.
    List {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Args)]
pub struct CurveInput {
    #[arg(long)]
    pub triangulation: PathBuf,
    #[arg(long)]
    pub signs: PathBuf,
    /// Accept a triangulation without a convexity certificate.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum PatchworkCmd {
    /// Random convex primitive triangulation (and optionally random signs).
    Random {
        #[arg(long)]
        d: u32,
        #[arg(long, env = "PATCHWORK_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        signs_out: Option<PathBuf>,
    },
    /// Patchwork a triangulation with signs and print the real scheme.
    Run {
        #[command(flatten)]
        input: CurveInput,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Random patchworks over consecutive seeds, one JSON line each.
    Sweep {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        seeds: u64,
        #[arg(long, env = "PATCHWORK_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write lines in seed order after all runs finish.
        #[arg(long)]
        sorted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of unimodular triangulations of a k x m rectangle.
    RectCount {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
    },
    /// Render a patchworked curve as SVG.
    Svg {
        #[command(flatten)]
        input: CurveInput,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum HaasCmd {
    /// Build the maximal curve for a partition collection such as "2;1,1".
    Run {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        partitions: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Number of valid partition collections.
    FamilyCount {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CensusCmd {
    /// Evaluate every bound applicable at degree d.
    Report {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        json: bool,
    },
    /// Number of admissible schemes for degree d.
    Admissible {
        #[arg(long)]
        d: u32,
    },
    /// Schemes with at most max-ovals ovals satisfying the deep-oval condition.
    StarCount {
        #[arg(long)]
        max_ovals: usize,
        #[arg(long)]
        d: u32,
    },
}

fn guard(what: &str, value: usize, max: usize) -> Result<(), CliError> {
    if value > max {
        return Err(CliError::Domain(format!("guard exceeded: {what} = {value}, at most {max} supported")));
    }
    Ok(())
}

fn node_json(n: &Node) -> Value {
    Value::Array(n.children.iter().map(node_json).collect())
}

fn print(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn load_curve(input: &CurveInput) -> Result<PatchworkCurve, CliError> {
    let t = read_triangulation(&input.triangulation)?;
    let s = read_signs(&input.signs)?;
    match build_patchwork(&t, &s) {
        Err(PatchworkError::NotConvex) if input.force => Ok(build_patchwork_uncertified(&t, &s)?),
        other => Ok(other?),
    }
}

/// Executes one parsed command.
pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Scheme(cmd) => match cmd {
            SchemeCmd::Parse { text } => {
                let s = parse_scheme(&text)?.canonical();
                let v = json!({
                    "scheme": s.to_string(),
                    "pseudoline": s.pseudoline,
                    "ovals": node_json(&s.root),
                });
                print(out, &pretty(&v))
            }
            SchemeCmd::Canon { text } => print(out, &parse_scheme(&text)?.canonical().to_string()),
            SchemeCmd::Stats { text, d } => {
                let s = parse_scheme(&text)?.canonical();
                let mut v = serde_json::to_value(SchemeSummary::new(&s)).expect("serializable");
                if let Some(d) = d {
                    v["d"] = json!(d);
                    v["harnack_bound"] = json!(harnack_bound(d)?);
                    v["condition_star"] = json!(condition_star_check(&s, d));
                    v["bezout_admissible"] = json!(bezout_admissible_check(&s, d));
                }
                print(out, &pretty(&v))
            }
        },
        Command::Trees(cmd) => match cmd {
            TreesCmd::Count { n } => {
                guard("n", n, MAX_TREE_N)?;
                print(out, &count_rooted_trees(n).to_string())
            }
            TreesCmd::DepthTable { n, h } => {
                guard("n", n, MAX_TREE_N)?;
                guard("h", h, n.max(1))?;
                let table = TreeCountTable::new(n).with_heights(h);
                let header: Vec<String> = (1..=h).map(|j| format!("h{j}")).collect();
                print(out, &format!("n\t{}", header.join("\t")))?;
                for m in 1..=n {
                    let row: Vec<String> = (1..=h)
                        .map(|j| table.count_bounded(m, j).unwrap_or_default().to_string())
                        .collect();
                    print(out, &format!("{m}\t{}", row.join("\t")))?;
                }
                Ok(())
            }
            TreesCmd::Otter { n } => {
                guard("n", n, MAX_TREE_N)?;
                print(out, &format!("{:.6}", estimate_otter_constant(n)?))
            }
            TreesCmd::Lemma9 { n, h } => {
                guard("n", n, MAX_TREE_N)?;
                let holds = lemma9_bound_check(n, h)?;
                print(out, &json!({"n": n, "h": h, "holds": holds}).to_string())
            }
        },
        Command::Partitions(cmd) => match cmd {
            PartitionsCmd::Count { m } => {
                guard("m", m, MAX_COUNT_M)?;
                print(out, &count_partitions(m).to_string())
            }
            PartitionsCmd::List { m } => {
                guard("m", m as usize, MAX_LIST_M as usize)?;
                for p in enumerate_partitions(m) {
                    print(out, &p.to_string())?;
                }
                Ok(())
            }
        },
        Command::Patchwork(cmd) => match cmd {
            PatchworkCmd::Random { d, seed, out: path, signs_out } => {
                let t = random_convex_primitive_triangulation(d, seed)?;
                let text = triangulation_json(&t);
                match path {
                    Some(p) => write_file(&p, &text)?,
                    None => print(out, &text)?,
                }
                if let Some(p) = signs_out {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let s = SignDistribution::random(t.vertices.len(), &mut rng);
                    write_file(&p, &signs_json(&s))?;
                }
                Ok(())
            }
            PatchworkCmd::Run { input, svg } => {
                let curve = load_curve(&input)?;
                let s = extract_scheme(&curve)?;
                if let Some(p) = svg {
                    write_file(&p, &render_curve(&curve))?;
                }
                let mut v = serde_json::to_value(SchemeSummary::new(&s)).expect("serializable");
                v["d"] = json!(curve.d);
                v["certified"] = json!(curve.certified);
                print(out, &pretty(&v))
            }
            PatchworkCmd::Sweep { d, seeds, seed, workers, sorted, out: path } => {
                match path {
                    Some(p) => {
                        let f = File::create(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                        let mut w = BufWriter::new(f);
                        run_sweep(d, seed, seeds, workers, sorted, &mut w)?;
                        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
                    }
                    None => {
                        run_sweep(d, seed, seeds, workers, sorted, out)?;
                    }
                }
                Ok(())
            }
            PatchworkCmd::RectCount { k, m } => print(out, &count_rect_triangulations(k, m)?.to_string()),
            PatchworkCmd::Svg { input, out: path } => {
                let curve = load_curve(&input)?;
                write_file(&path, &render_curve(&curve))
            }
        },
        Command::Haas(cmd) => match cmd {
            HaasCmd::Run { d, partitions, svg, json: json_path } => {
                let lams = parse_partition_tuple(&partitions)?;
                let run = run_haas(d, &lams)?;
                let plan = &run.plan;
                let pts = |v: &[(i64, i64)]| -> Value { json!(v.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()) };
                let zones: Vec<Value> = plan
                    .zones
                    .iter()
                    .map(|z| json!({"kind": format!("{:?}", z.kind), "sign": z.sign, "polygon": pts(&z.polygon)}))
                    .collect();
                let summary = SchemeSummary::new(&run.scheme);
                let v = json!({
                    "d": d,
                    "k": plan.k,
                    "partitions": plan.partitions.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "points": {
                        "A": pts(&plan.a), "B": pts(&plan.b), "C": pts(&plan.c),
                        "D": pts(&plan.dpts), "E": pts(&plan.e),
                        "E_sub": plan.e_sub.iter().map(|v| pts(v)).collect::<Vec<_>>(),
                    },
                    "zones": zones,
                    "scheme": summary.scheme,
                    "pseudoline": summary.pseudoline,
                    "oval_count": summary.oval_count,
                    "depth": summary.depth,
                    "harnack_bound": harnack_bound(d)?,
                    "matches_pattern": matches_haas_pattern(&run.scheme, plan),
                    "triangles": run.triangulation.triangles.len(),
                });
                let text = pretty(&v);
                if let Some(p) = svg {
                    write_file(&p, &render_haas(&run.curve, plan))?;
                }
                if let Some(p) = json_path {
                    write_file(&p, &text)?;
                }
                print(out, &text)
            }
            HaasCmd::FamilyCount { d } => print(out, &haas_family_count(d)?.to_string()),
        },
        Command::Census(cmd) => match cmd {
            CensusCmd::Report { d, json: as_json } => {
                let reports = census_report(d)?;
                if as_json {
                    let v: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            let params: serde_json::Map<String, Value> =
                                r.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                            let values: serde_json::Map<String, Value> =
                                r.values.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                            json!({"formula": r.formula, "params": params, "values": values})
                        })
                        .collect();
                    print(out, &pretty(&Value::Array(v)))
                } else {
                    for r in reports {
                        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        let values: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        print(out, &format!("{} [{}] {}", r.formula, params.join(" "), values.join(" ")))?;
                    }
                    Ok(())
                }
            }
            CensusCmd::Admissible { d } => print(out, &admissible_count(d)?.to_string()),
            CensusCmd::StarCount { max_ovals, d } => {
                let c = star_scheme_count(max_ovals, d)?;
                let v = json!({
                    "max_ovals": max_ovals,
                    "d": d,
                    "exact": c.exact,
                    "decomposition_bound": c.decomposition_bound.to_string(),
                    "analytic_bound": c.analytic_bound.to_decimal(REPORT_DIGITS),
                    "within_bound": BigUint::from(c.exact) <= c.decomposition_bound,
                });
                print(out, &pretty(&v))
            }
        },
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status. Errors are reported as one line on `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
                    let _ = writeln!(err, "error: usage: {first}");
                    2
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            e.exit_code()
        }
    }
}
