//! Command-line front end. Every command writes JSON (one value per line);
//! `--table` renders the same values as indented text instead.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionforge_core::bouc::{verify_bouc, BoucSetting, ExhaustiveBouc};
use fusionforge_core::explorer::{explore, CompatibilityReport};
use fusionforge_core::fusion::{iso_check, Flavor, FusionSystem};
use fusionforge_core::goursat::{check_r_structure, decompose, reconstruct};
use fusionforge_core::{DirectProduct, Limits, PermGroup, Subgroup};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::Config;
use crate::json::{decomposition, failure_json, read_group, read_subgroup, FusionFileJson, GoursatJson, GroupJson};
use crate::suites::{self, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "fusionforge",
    version,
    about = "Exact checks for bisets, Goursat data and fusion systems"
)]
pub struct Cli {
    /// Render output as indented text instead of JSON lines.
    #[arg(long, global = true)]
    pub table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a group given by catalog name or JSON.
    Group {
        group: String,
        /// Also list every element as an image list.
        #[arg(long)]
        elements: bool,
    },
    /// Goursat data of subgroups of a direct product.
    #[command(subcommand)]
    Goursat(GoursatCmd),
    /// Biset composition against the double-coset formula.
    #[command(subcommand)]
    Bouc(BoucCmd),
    /// Queries on fusion systems.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Candidate subgroups of P1 x P2 for two fusion systems.
    Explore {
        /// `group:prime`
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also write the full report list to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`).
    Suite {
        name: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GoursatCmd {
    /// Decompose a subgroup X of G x H.
    Decompose {
        #[arg(long)]
        group: String,
        /// Second factor; defaults to the first.
        #[arg(long)]
        right: Option<String>,
        /// `diag`, `full`, `trivial`, `index:<n>` or element indices as JSON.
        #[arg(long)]
        subgroup: String,
    },
    /// Rebuild X from Goursat data in JSON.
    Reconstruct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        right: Option<String>,
        /// Inline JSON or a file path.
        #[arg(long)]
        data: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoucCmd {
    Verify {
        #[arg(long = "G")]
        g: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long = "K")]
        k: String,
        /// Every pair of subgroups X ≤ G x H, Y ≤ H x K.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        exhaustive: bool,
        #[arg(long = "X", requires = "y")]
        x: Option<String>,
        #[arg(long = "Y", requires = "x")]
        y: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Ambient group; the system is F_P(G) for a Sylow P.
    #[arg(long, requires = "p", conflicts_with = "system_file")]
    pub group: Option<String>,
    #[arg(long)]
    pub p: Option<u32>,
    /// JSON file with a p-group and generating morphisms.
    #[arg(long)]
    pub system_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlavorArg {
    Mod,
    Bar,
    Generated,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Mod => Flavor::ModR,
            FlavorArg::Bar => Flavor::Bar,
            FlavorArg::Generated => Flavor::GeneratedBar,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum FusionCmd {
    /// Subgroups of P with their closure and centralization flags.
    Subgroups {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Hom_F(Q, T), T defaulting to P.
    Homs {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Strong or weak closure of a subgroup.
    Closed {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        subgroup: String,
        #[arg(long, conflicts_with = "weak", required_unless_present = "weak")]
        strong: bool,
        #[arg(long)]
        weak: bool,
    },
    /// Saturation axioms, with a failure certificate.
    Saturate {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// A quotient system F/R.
    Quotient {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value = "mod")]
        flavor: FlavorArg,
    },
    /// Generation by automizers of fully centralized subgroups, for F or F/R.
    Alperin {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Whether theta carries F onto a second system.
    Iso {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, requires = "other_p", conflicts_with = "other_file")]
        other_group: Option<String>,
        #[arg(long)]
        other_p: Option<u32>,
        #[arg(long)]
        other_file: Option<PathBuf>,
        /// Image table as JSON; defaults to the identity.
        #[arg(long)]
        theta: Option<String>,
    },
}

/// Writes JSON lines or their table rendering.
pub struct Emitter<'a> {
    out: &'a mut dyn Write,
    table: bool,
}

impl<'a> Emitter<'a> {
    pub fn new(out: &'a mut dyn Write, table: bool) -> Emitter<'a> {
        Emitter { out, table }
    }

    pub fn emit(&mut self, v: &Value) -> Result<()> {
        if self.table {
            render(self.out, v, 0)?;
            writeln!(self.out)?;
        } else {
            writeln!(self.out, "{}", v)?;
        }
        Ok(())
    }

    pub fn is_table(&self) -> bool {
        self.table
    }

    pub fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{}", text)?;
        Ok(())
    }
}

fn render(out: &mut dyn Write, v: &Value, indent: usize) -> std::io::Result<()> {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        writeln!(out, "{}{}:", pad, k)?;
                        render(out, x, indent + 2)?;
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        writeln!(out, "{}{}:", pad, k)?;
                        for i in items {
                            writeln!(out, "{}  -", pad)?;
                            render(out, i, indent + 4)?;
                        }
                    }
                    _ => writeln!(out, "{}{}: {}", pad, k, x)?,
                }
            }
            Ok(())
        }
        _ => writeln!(out, "{}{}", pad, v),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let cfg = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": format!("{:#}", e) }));
            return 2;
        }
    };
    let mut em = Emitter::new(out, cli.table);
    match run(&cli.command, &cfg, &mut em) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": format!("{:#}", e) }));
            2
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

/// Runs one command; `Ok(false)` means a verification failed.
pub fn run(cmd: &Command, cfg: &Config, em: &mut Emitter) -> Result<bool> {
    let limits = cfg.limits();
    match cmd {
        Command::Group { group, elements } => {
            let g = read_group(group, &limits)?;
            em.emit(&group_summary(&g, *elements, &limits)?)?;
            Ok(true)
        }
        Command::Goursat(c) => goursat(c, &limits, em),
        Command::Bouc(BoucCmd::Verify {
            g,
            h,
            k,
            exhaustive,
            x,
            y,
        }) => {
            let (g, h, k) = (
                Arc::new(read_group(g, &limits)?),
                Arc::new(read_group(h, &limits)?),
                Arc::new(read_group(k, &limits)?),
            );
            match (x, y) {
                (Some(x), Some(y)) => bouc_single(g, h, k, x, y, &limits, em),
                _ if *exhaustive => bouc_exhaustive(g, h, k, &cfg.pool()?, &limits, em),
                _ => bail!("bouc verify needs --exhaustive or both --X and --Y"),
            }
        }
        Command::Fusion(c) => fusion(c, &limits, em),
        Command::Explore { left, right, json } => explore_cmd(left, right, json.as_ref(), &limits, em),
        Command::Suite { name, max_order } => suite_cmd(name, *max_order, cfg, em),
    }
}

fn group_summary(g: &PermGroup, elements: bool, limits: &Limits) -> Result<Value> {
    let mut v = json!({
        "order": g.order(),
        "degree": g.degree(),
        "generators": GroupJson::of(g).generators,
        "generator_indices": g.generator_indices(),
        "abelian": g.is_abelian(),
        "solvable": g.is_solvable(),
        "center": g.center().elements(),
    });
    if g.order() <= limits.subgroup_cap {
        let subs = g.all_subgroups(limits)?;
        let classes: Vec<Value> = g
            .subgroup_classes(&subs)
            .into_iter()
            .map(|(s, n)| json!({ "order": s.order(), "conjugates": n, "representative": s.elements() }))
            .collect();
        v["subgroups"] = json!(subs.len());
        v["subgroup_classes"] = json!(classes);
    }
    if elements {
        v["elements"] = json!(g.elements().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>());
    }
    Ok(v)
}

fn product(group: &str, right: Option<&String>, limits: &Limits) -> Result<DirectProduct> {
    let left = Arc::new(read_group(group, limits)?);
    let right = match right {
        Some(r) => Arc::new(read_group(r, limits)?),
        None => left.clone(),
    };
    Ok(DirectProduct::from_arcs(left, right))
}

fn product_subgroup(dp: &DirectProduct, spec: &str, limits: &Limits) -> Result<Subgroup> {
    match spec.trim() {
        "diag" | "diagonal" => dp
            .diagonal()
            .ok_or_else(|| anyhow!("the factors differ, so there is no diagonal")),
        s => {
            if let Some(n) = s.strip_prefix("index:") {
                let n: usize = n.trim().parse().context("index:<n> needs a number")?;
                return dp
                    .group
                    .all_subgroups(limits)?
                    .into_iter()
                    .find(|x| x.order() * n == dp.group.order())
                    .ok_or_else(|| anyhow!("no subgroup of index {}", n));
            }
            read_subgroup(&dp.group, s)
        }
    }
}

fn read_text(spec: &str) -> Result<String> {
    if spec.trim_start().starts_with(['{', '[']) {
        Ok(spec.to_string())
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec))
    }
}

fn goursat(c: &GoursatCmd, limits: &Limits, em: &mut Emitter) -> Result<bool> {
    match c {
        GoursatCmd::Decompose { group, right, subgroup } => {
            let dp = product(group, right.as_ref(), limits)?;
            let x = product_subgroup(&dp, subgroup, limits)?;
            let d = decompose(&dp, &x);
            let back = reconstruct(&dp, &d)?;
            let r = check_r_structure(&dp, &x);
            let round_trip = back == x;
            let order_formula = x.order() == d.p1x.order() * d.x2.order();
            em.emit(&json!({
                "X": x.elements(),
                "order": x.order(),
                "goursat": GoursatJson::of(&d),
                "round_trip": round_trip,
                "order_formula": order_formula,
                "surjective_projections": r.left_surjective && r.right_surjective,
                "r_structure": r.kernel_orders_equal.map(|_| r.holds()),
            }))?;
            Ok(round_trip && order_formula)
        }
        GoursatCmd::Reconstruct { group, right, data } => {
            let dp = product(group, right.as_ref(), limits)?;
            let j: GoursatJson = serde_json::from_str(&read_text(data)?).context("malformed Goursat data")?;
            let d = j.build(&dp)?;
            let x = reconstruct(&dp, &d)?;
            let again = decompose(&dp, &x) == d;
            em.emit(&json!({ "X": x.elements(), "order": x.order(), "round_trip": again }))?;
            Ok(again)
        }
    }
}

fn verdict_json(v: &fusionforge_core::gset::Verdict) -> Value {
    json!({ "equal": v.equal(), "left": decomposition(&v.left), "right": decomposition(&v.right) })
}

fn bouc_single(
    g: Arc<PermGroup>,
    h: Arc<PermGroup>,
    k: Arc<PermGroup>,
    x: &str,
    y: &str,
    limits: &Limits,
    em: &mut Emitter,
) -> Result<bool> {
    let setting = BoucSetting::new(g, h, k).with_class_index(limits)?;
    let x = read_subgroup(&setting.gh.group, x).context("--X")?;
    let y = read_subgroup(&setting.hk.group, y).context("--Y")?;
    let v = verify_bouc(&setting, &x, &y);
    em.emit(&verdict_json(&v))?;
    Ok(v.equal())
}

fn bouc_exhaustive(
    g: Arc<PermGroup>,
    h: Arc<PermGroup>,
    k: Arc<PermGroup>,
    pool: &rayon::ThreadPool,
    limits: &Limits,
    em: &mut Emitter,
) -> Result<bool> {
    let ex = ExhaustiveBouc::new(g, h, k, limits)?;
    let mut failures = 0usize;
    for i in 0..ex.xs.len() {
        let row: Vec<_> = pool.install(|| (0..ex.ys.len()).into_par_iter().map(|j| ex.verify(i, j)).collect());
        for (j, v) in row.iter().enumerate() {
            if v.equal() {
                em.emit(&json!({ "x": i, "y": j, "equal": true }))?;
            } else {
                failures += 1;
                em.emit(&json!({
                    "x": i,
                    "y": j,
                    "X": ex.xs[i].elements(),
                    "Y": ex.ys[j].elements(),
                    "verdict": verdict_json(v),
                }))?;
            }
        }
    }
    em.emit(&json!({
        "x_subgroups": ex.xs.len(),
        "y_subgroups": ex.ys.len(),
        "pairs": ex.pair_count(),
        "failures": failures,
    }))?;
    Ok(failures == 0)
}

fn system(args: &SystemArgs, limits: &Limits) -> Result<FusionSystem> {
    match (&args.group, args.p, &args.system_file) {
        (Some(g), Some(p), None) => Ok(FusionSystem::of_group(Arc::new(read_group(g, limits)?), p, limits)?),
        (None, _, Some(file)) => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let j: FusionFileJson = serde_json::from_str(&text).context("malformed fusion system file")?;
            j.build(limits)
        }
        _ => bail!("give either --group with --p, or --system-file"),
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::ModR => "mod",
        Flavor::Bar => "bar",
        Flavor::GeneratedBar => "generated",
    }
}

fn hom_counts(f: &FusionSystem) -> Vec<Value> {
    f.subgroups()
        .iter()
        .enumerate()
        .map(|(i, q)| json!({ "subgroup": q.elements(), "homs": f.homs_from(i).len() }))
        .collect()
}

fn fusion(c: &FusionCmd, limits: &Limits, em: &mut Emitter) -> Result<bool> {
    match c {
        FusionCmd::Subgroups { system: s } => {
            let f = system(s, limits)?;
            let p = f.p();
            for q in f.subgroups() {
                em.emit(&json!({
                    "subgroup": q.elements(),
                    "order": q.order(),
                    "normal": p.is_normal(q),
                    "fully_centralized": f.fully_centralized(q),
                    "fully_normalized": f.fully_normalized(q),
                    "strongly_closed": f.strongly_closed(q),
                    "weakly_closed": f.weakly_closed(q),
                    "aut_f": f.automizer(q).len(),
                }))?;
            }
            Ok(true)
        }
        FusionCmd::Homs {
            system: s,
            subgroup,
            target,
        } => {
            let f = system(s, limits)?;
            let q = read_subgroup(f.p(), subgroup)?;
            let t = match target {
                Some(t) => read_subgroup(f.p(), t)?,
                None => Subgroup::whole(f.p()),
            };
            let homs: Vec<Value> = f
                .hom_set(&q, &t)
                .into_iter()
                .map(|m| json!({ "images": m.map.images(), "witness": m.witness }))
                .collect();
            em.emit(&json!({ "source": q.elements(), "target": t.elements(), "count": homs.len(), "homs": homs }))?;
            Ok(true)
        }
        FusionCmd::Closed {
            system: s,
            subgroup,
            strong,
            ..
        } => {
            let f = system(s, limits)?;
            let r = read_subgroup(f.p(), subgroup)?;
            let (kind, holds) = if *strong {
                ("strongly_closed", f.strongly_closed(&r))
            } else {
                ("weakly_closed", f.weakly_closed(&r))
            };
            em.emit(&json!({ "subgroup": r.elements(), kind: holds }))?;
            Ok(true)
        }
        FusionCmd::Saturate { system: s } => {
            let f = system(s, limits)?;
            let failure = f.saturation_check(limits)?;
            em.emit(&json!({
                "p_order": f.p().order(),
                "saturated": failure.is_none(),
                "failure": failure.as_ref().map(failure_json),
            }))?;
            Ok(failure.is_none())
        }
        FusionCmd::Quotient {
            system: s,
            subgroup,
            flavor,
        } => {
            let f = system(s, limits)?;
            let r = read_subgroup(f.p(), subgroup)?;
            let q = f.quotient(&r, (*flavor).into(), limits)?;
            em.emit(&json!({
                "r": r.elements(),
                "flavor": flavor_name(q.flavor),
                "group": GroupJson::of(&q.quotient.group),
                "order": q.quotient.group.order(),
                "saturated": q.system.saturation_check(limits)?.is_none(),
                "hom_counts": hom_counts(&q.system),
            }))?;
            Ok(true)
        }
        FusionCmd::Alperin { system: s, subgroup } => {
            let f = system(s, limits)?;
            let v = match subgroup {
                Some(r) => f.quotient_alperin_check(&read_subgroup(f.p(), r)?, limits)?,
                None => f.alperin_check(limits)?,
            };
            em.emit(&json!({ "equal": v.equal, "mismatch": v.mismatch.map(|m| m.elements().to_vec()) }))?;
            Ok(v.equal)
        }
        FusionCmd::Iso {
            system: s,
            other_group,
            other_p,
            other_file,
            theta,
        } => {
            let f1 = system(s, limits)?;
            let other = SystemArgs {
                group: other_group.clone(),
                p: *other_p,
                system_file: other_file.clone(),
            };
            let f2 = if other.group.is_none() && other.system_file.is_none() {
                f1.clone()
            } else {
                system(&other, limits)?
            };
            let theta: Vec<u32> = match theta {
                Some(t) => serde_json::from_str(&read_text(t)?).context("theta must be a JSON list")?,
                None => (0..f1.p().order() as u32).collect(),
            };
            let v = iso_check(&f1, &f2, &theta)?;
            em.emit(&json!({ "holds": v.holds, "mismatch": v.mismatch.map(|m| m.elements().to_vec()) }))?;
            Ok(v.holds)
        }
    }
}

fn parse_side(spec: &str, limits: &Limits) -> Result<FusionSystem> {
    let (g, p) = spec
        .rsplit_once(':')
        .ok_or_else(|| anyhow!("expected <group>:<prime>, got {:?}", spec))?;
    let p: u32 = p.trim().parse().with_context(|| format!("bad prime in {:?}", spec))?;
    Ok(FusionSystem::of_group(Arc::new(read_group(g, limits)?), p, limits)?)
}

pub fn report_json(r: &CompatibilityReport) -> Value {
    json!({
        "R": r.r.elements(),
        "order": r.r.order(),
        "projections_surjective": [r.projections_surjective.0, r.projections_surjective.1],
        "goursat": r.goursat.as_ref().map(GoursatJson::of),
        "kernel_orders_equal": r.kernel_orders_equal,
        "R1_strongly_closed": r.r1_strongly_closed,
        "R2_strongly_closed": r.r2_strongly_closed,
        "equivalence_holds": r.equivalence_holds,
        "quotient_iso": r.quotient_iso.as_ref().map(|v| v.holds),
        "twisted_diagonal": r.is_twisted_diagonal(),
        "theorem_consistent": r.theorem_consistent(),
    })
}

fn explore_cmd(left: &str, right: &str, out: Option<&PathBuf>, limits: &Limits, em: &mut Emitter) -> Result<bool> {
    let f1 = parse_side(left, limits)?;
    let f2 = parse_side(right, limits)?;
    let ex = explore(&f1, &f2, limits)?;
    let reports: Vec<Value> = ex.reports.iter().map(report_json).collect();
    for r in &reports {
        em.emit(r)?;
    }
    em.emit(&json!({
        "candidates": ex.reports.len(),
        "theorem_consistent": ex.reports.iter().filter(|r| r.theorem_consistent()).count(),
    }))?;
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&reports)?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn suite_cmd(name: &str, max_order: Option<usize>, cfg: &Config, em: &mut Emitter) -> Result<bool> {
    let list: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suites::parse_suite(name)?]
    };
    let mut all_passed = true;
    for s in list {
        let report = suites::run(s, cfg, max_order)?;
        all_passed &= report.passed;
        if em.is_table() {
            em.line(&suites::summary_line(&report))?;
            for c in report.cases.iter().filter(|c| c.failures > 0) {
                em.line(&format!("  {}: {}", c.name, c.first_failure.as_deref().unwrap_or("")))?;
            }
        } else {
            em.emit(&serde_json::to_value(&report)?)?;
        }
    }
    Ok(all_passed)
}
