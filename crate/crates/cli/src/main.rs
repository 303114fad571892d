//! `qlines`: command-line front end for `ql-core`.
//!
//! Every subcommand maps onto one library operation. Output is an aligned
//! table by default, JSON with `--json`, and DOT for `dp graph`.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ql_core::bounds::{self, CheckReport};
use ql_core::closure::bundled_fixtures_dir;
use ql_core::negcurves::{self, Breakdown};
use ql_core::{Family, FoliationProfile, IncidenceModel, SurfaceModel};

use render::Table;

#[derive(Parser)]
#[command(name = "qlines", version, about = "Quasi-line bounds, (-1)-curve configurations and stable closures")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// (-1)-curves on the blow-up of the plane in n points.
    #[command(subcommand)]
    Dp(DpCommand),
    /// Explicit bounds and inequalities.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Stable closures on finite incidence models.
    #[command(subcommand)]
    Closure(ClosureCommand),
}

#[derive(Subcommand)]
enum DpCommand {
    /// List every (-1)-class.
    Curves(SurfaceArgs),
    /// Pairwise disjoint configurations of (-1)-curves.
    Configs {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Configuration size; defaults to n (blow-down configurations).
        #[arg(long)]
        k: Option<usize>,
        /// Only use curves of this family.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Print every configuration in table mode.
        #[arg(long)]
        list: bool,
    },
    /// Meet graph in DOT format.
    Graph {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    /// Number of blown-up points, 0..=8.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// 16 (deg l)^3 / deg X.
    Dichotomy {
        #[arg(long)]
        deg_l: u64,
        #[arg(long)]
        deg_x: u64,
    },
    /// binom(h0 max(d, H^2), h0 - 1)^(d^2 h0).
    Chow {
        #[arg(long)]
        d: u64,
        #[arg(long, alias = "surf-deg")]
        surface_deg: u64,
        /// Known section count; defaults to (d+1)(d+2)/2.
        #[arg(long)]
        h0: Option<u64>,
        /// Print every digit.
        #[arg(long)]
        full: bool,
    },
    /// Bound on E.l from the dimension of the singular locus.
    Leaf(ProfileArgs),
    /// rank - 1 lower bound on the singular locus.
    Sing {
        #[arg(long)]
        rank: u32,
        /// With --sing-dim, also check the profile's consistency.
        #[arg(long, requires = "sing_dim")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        sing_dim: Option<u32>,
    },
    /// (D^2)(H^2) <= (D.H)^2.
    HodgeSurface {
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        h2: i64,
        #[arg(long, allow_hyphen_values = true)]
        dh: i64,
    },
    /// (D^2.H)(H^3) <= (D.H^2)^2.
    HodgeThreefold {
        #[arg(long, allow_hyphen_values = true)]
        d2h: i64,
        #[arg(long, allow_hyphen_values = true)]
        h3: i64,
        #[arg(long, allow_hyphen_values = true)]
        dh2: i64,
    },
    /// 4 (deg l)^2.
    LeafDegree {
        #[arg(long)]
        deg_l: u64,
    },
    /// (d+1)(d+2)/2 and d(d+3)/2.
    H0 {
        #[arg(long)]
        d: u64,
    },
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    sing_dim: u32,
}

#[derive(Subcommand)]
enum ClosureCommand {
    /// Stable closure of y at basepoint x.
    Run(PairArgs),
    /// Number of lines through x and y.
    E(PairArgs),
    /// Histogram of e over all pairs.
    Dist(ModelArgs),
    /// Pairs whose two leaves differ.
    Assumption(ModelArgs),
    /// Leaves at x.
    Partition(PointArgs),
    /// Collapse the leaves at x and inspect the quotient.
    Quotient(PointArgs),
    /// Lines through x.
    Lines(PointArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Model file; bare names are also looked up in the fixture directory
    /// ($QL_FIXTURES or the bundled fixtures).
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    x: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s.to_ascii_lowercase().as_str() {
        "exceptional" => Ok(Family::Exceptional),
        "line" => Ok(Family::Line),
        "conic" => Ok(Family::Conic),
        "higher" => Ok(Family::Higher),
        other => Err(format!("unknown family `{other}` (exceptional, line, conic, higher)")),
    }
}

/// Invalid input maps to exit code 2, anything else to 1.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<ql_core::Error> for Failure {
    fn from(e: ql_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with exit 0; usage errors exit 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("qlines: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("qlines: internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dp(c) => run_dp(c, cli.json),
        Command::Bound(c) => run_bound(c, cli.json),
        Command::Closure(c) => run_closure(c, cli.json),
    }
}

fn to_json(v: &impl serde::Serialize) -> Outcome {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn surface_curves(n: usize, family: Option<Family>) -> Result<(SurfaceModel, Vec<ql_core::NegCurve>), Failure> {
    let s = SurfaceModel::new(n)?;
    let mut curves = negcurves::enumerate_minus_one(&s);
    if let Some(f) = family {
        curves.retain(|c| c.family == f);
    }
    Ok((s, curves))
}

fn run_dp(c: &DpCommand, json: bool) -> Outcome {
    match c {
        DpCommand::Curves(args) => {
            let (s, curves) = surface_curves(args.n, None)?;
            if json {
                return to_json(&json!({ "n": s.n(), "count": curves.len(), "curves": curves }));
            }
            let mut t = Table::new(["#", "class", "family", "-K.C"]);
            for (i, c) in curves.iter().enumerate() {
                t.row([
                    i.to_string(),
                    c.label(),
                    c.family.name().to_string(),
                    s.anticanonical_degree(&c.cls)?.to_string(),
                ]);
            }
            Ok(format!("{} (-1)-curves on Bl_{} P^2\n{}", curves.len(), s.n(), t))
        }
        DpCommand::Configs {
            surface,
            k,
            family,
            list,
        } => {
            let k = k.unwrap_or(surface.n);
            let configs = match family {
                None => negcurves::disjoint_configurations(&SurfaceModel::new(surface.n)?, k)?,
                Some(_) => {
                    let (s, curves) = surface_curves(surface.n, *family)?;
                    if k < 1 || k > s.n() {
                        return Err(Failure::Input(format!(
                            "domain error: configuration size must be in 1..={}, got {k}",
                            s.n()
                        )));
                    }
                    negcurves::configurations_in(&negcurves::meet_graph(&s, &curves)?, k)
                }
            };
            let breakdown = Breakdown::of(&configs).named(k);
            if json {
                let classes: Vec<Vec<&ql_core::DivisorClass>> =
                    configs.iter().map(|c| c.iter().map(|x| &x.cls).collect()).collect();
                return to_json(&json!({
                    "n": surface.n,
                    "k": k,
                    "family": family.map(Family::name),
                    "total": configs.len(),
                    "breakdown": breakdown,
                    "configurations": classes,
                }));
            }
            let mut out = format!("{} configuration(s) of {k} disjoint (-1)-curves on Bl_{} P^2\n", configs.len(), surface.n);
            let mut t = Table::new(["bucket", "count"]);
            for (name, count) in &breakdown {
                t.row([name.clone(), count.to_string()]);
            }
            out.push_str(&t.to_string());
            if *list {
                for c in &configs {
                    let labels: Vec<String> = c.iter().map(|x| x.label()).collect();
                    out.push_str(&format!("{}\n", labels.join(", ")));
                }
            }
            Ok(out)
        }
        DpCommand::Graph { surface, family } => {
            let (s, curves) = surface_curves(surface.n, *family)?;
            let g = negcurves::meet_graph(&s, &curves)?;
            if json {
                return to_json(&json!({
                    "n": s.n(),
                    "vertices": g.curves.iter().map(|c| c.label()).collect::<Vec<_>>(),
                    "edges": g.edge_count(),
                    "regular_degree": g.regular_degree(),
                    "girth": g.girth(),
                    "intersections": g.intersections,
                }));
            }
            let name = match family {
                Some(f) => format!("bl{}_{}", s.n(), f.name()),
                None => format!("bl{}", s.n()),
            };
            Ok(g.to_dot(&name))
        }
    }
}

fn profile(p: &ProfileArgs) -> Result<FoliationProfile, Failure> {
    Ok(FoliationProfile::new(p.n, p.rank, p.sing_dim)?)
}

fn run_bound(c: &BoundCommand, json: bool) -> Outcome {
    let report = match c {
        BoundCommand::Dichotomy { deg_l, deg_x } => bounds::dichotomy_bound(*deg_l, *deg_x)?,
        BoundCommand::Chow {
            d,
            surface_deg,
            h0,
            full,
        } => {
            let r = bounds::chow_component_bound(*d, *surface_deg, *h0)?;
            if !json {
                return Ok(render::bound_table(&r, *full));
            }
            r
        }
        BoundCommand::Leaf(p) => bounds::leaf_section_report(&profile(p)?)?,
        BoundCommand::LeafDegree { deg_l } => bounds::leaf_degree_report(*deg_l)?,
        BoundCommand::Sing { rank, n, sing_dim } => {
            let p = match (n, sing_dim) {
                (Some(n), Some(s)) => Some(FoliationProfile::new(*n, *rank, *s)?),
                _ => None,
            };
            return check(CheckReport::singular_locus(*rank, p.as_ref())?, json);
        }
        BoundCommand::HodgeSurface { d2, h2, dh } => {
            return check(CheckReport::hodge_surface(*d2, *h2, *dh)?, json)
        }
        BoundCommand::HodgeThreefold { d2h, h3, dh2 } => {
            return check(CheckReport::hodge_threefold(*d2h, *h3, *dh2)?, json)
        }
        BoundCommand::H0 { d } => return check(CheckReport::sections(*d)?, json),
    };
    if json {
        to_json(&report)
    } else {
        Ok(render::bound_table(&report, false))
    }
}

fn check(r: CheckReport, json: bool) -> Outcome {
    if json {
        to_json(&r)
    } else {
        Ok(render::check_table(&r))
    }
}

/// Resolves `--model`: an existing path wins, otherwise the name is looked
/// up in `$QL_FIXTURES` (or the bundled fixture directory), with `.json`
/// appended if missing.
fn resolve_model(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let dir = std::env::var_os("QL_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(bundled_fixtures_dir);
    let candidate = dir.join(path);
    if candidate.exists() || candidate.extension().is_some() {
        candidate
    } else {
        candidate.with_extension("json")
    }
}

fn load(m: &ModelArgs) -> Result<IncidenceModel, Failure> {
    Ok(IncidenceModel::load(resolve_model(&m.model))?)
}

fn run_closure(c: &ClosureCommand, json: bool) -> Outcome {
    match c {
        ClosureCommand::Run(a) => {
            let r = load(&a.model)?.stable_closure(&a.x, &a.y)?;
            if json {
                return to_json(&r);
            }
            let mut out = format!(
                "leaf of {} at {}: {{{}}} (size {}{})\n",
                r.seed,
                r.basepoint,
                r.leaf.join(", "),
                r.leaf.len(),
                if r.no_line { ", no line to the basepoint" } else { "" }
            );
            for (i, v) in r.chain.iter().enumerate() {
                out.push_str(&format!("  V{i} = {{{}}}\n", v.join(", ")));
            }
            Ok(out)
        }
        ClosureCommand::E(a) => {
            let e = load(&a.model)?.e_invariant(&a.x, &a.y)?;
            if json {
                return to_json(&json!({ "x": a.x, "y": a.y, "e": e }));
            }
            Ok(format!("e({}, {}) = {e}\n", a.x, a.y))
        }
        ClosureCommand::Dist(m) => {
            let d = load(m)?.e_distribution()?;
            if json {
                return to_json(&json!({ "e_distribution": d }));
            }
            let mut t = Table::new(["e", "pairs"]);
            for (e, count) in &d {
                t.row([e.to_string(), count.to_string()]);
            }
            Ok(t.to_string())
        }
        ClosureCommand::Assumption(m) => {
            let v = load(m)?.assumption_check()?;
            if json {
                return to_json(&json!({ "symmetric": v.is_empty(), "violations": v }));
            }
            if v.is_empty() {
                return Ok("symmetric: every joined pair has equal leaves\n".to_string());
            }
            let mut t = Table::new(["x", "y"]);
            for (a, b) in &v {
                t.row([a.clone(), b.clone()]);
            }
            Ok(format!("{} asymmetric pair(s)\n{}", v.len(), t))
        }
        ClosureCommand::Partition(a) => {
            let p = load(&a.model)?.leaf_partition(&a.x)?;
            if json {
                return to_json(&p);
            }
            let mut t = Table::new(["leaf", "size", "seeds"]);
            for l in &p.leaves {
                t.row([
                    format!("{{{}}}", l.points.join(", ")),
                    l.size.to_string(),
                    l.seeds.join(", "),
                ]);
            }
            let mut out = format!("{} leaf/leaves at {}\n{}", p.leaves.len(), p.basepoint, t);
            for o in &p.overlaps {
                out.push_str(&format!(
                    "overlap: leaves {} and {} share {}\n",
                    o.first,
                    o.second,
                    o.shared.join(", ")
                ));
            }
            Ok(out)
        }
        ClosureCommand::Quotient(a) => {
            let q = load(&a.model)?.quotient_e_check(&a.x)?;
            if json {
                return to_json(&q);
            }
            if !q.applicable {
                return Ok(format!("not applicable: {}\n", q.reason.unwrap_or_default()));
            }
            let model = q.quotient.as_ref().expect("applicable quotient");
            let mut out = format!(
                "quotient at {}: {} point(s), {} line(s)\n",
                q.basepoint,
                model.points.len(),
                model.lines.len()
            );
            let mut t = Table::new(["e", "pairs"]);
            for (e, count) in &q.e_distribution {
                t.row([e.to_string(), count.to_string()]);
            }
            out.push_str(&t.to_string());
            out.push_str(&format!("e <= 1 everywhere: {}\n", q.e_at_most_one.unwrap_or(false)));
            Ok(out)
        }
        ClosureCommand::Lines(a) => {
            let lines = load(&a.model)?.lines_through_named(&a.x)?;
            if json {
                return to_json(&json!({ "x": a.x, "lines": lines }));
            }
            let mut out = format!("{} line(s) through {}\n", lines.len(), a.x);
            for l in &lines {
                out.push_str(&format!("  {{{}}}\n", l.join(", ")));
            }
            Ok(out)
        }
    }
}
