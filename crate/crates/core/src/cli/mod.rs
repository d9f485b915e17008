//! Command-line front end: parses a [`RunConfig`], runs one command and
//! renders its report as JSON or CSV.
//!
//! Every output carries the seed and is a pure function of the config, so
//! reruns are byte-identical.

mod registry;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{build_relative_ball, enumerate_ball, RelBallGraph, INF};
use crate::certificates::{
    alpha1_report, alpha2_prime_report, alpha2_report, alpha3_report, bcp_report, morse_sample_report, morse_samples,
    AlphaReport, FatParams, RadiusRow, SatParams, Verdict,
};
use crate::error::{Error, Result};
use crate::hyperbolicity::{bowditch_k, build_lines_centers, rel_thin_triangle_delta, CenterRule, TriangleMode};
use crate::netapprox::{
    build_eo_presentation, nested_snets, net_metric_bounds_check, torus_bouquet_space, EOConfig, SeedOrder,
};
use crate::report::{fmt_rational, parse_rational};
use crate::smallcancel::{check_c_prime, check_cstar, cstar_profile, generate_cstar_words};
use crate::treegraded::{canonical_pieces, check_t1, check_t2, PieceSpace};
use crate::words::{default_names, WordSet};

pub use registry::{lookup_group, parse_parabolics, GroupEntry};

#[derive(Parser, Debug, Clone)]
#[command(name = "relhyp", version, about = "Finite-scale relative hyperbolicity diagnostics")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// free[-n], abelian[-n], surface, zz-free-product or eo:<file>.
    #[arg(long, default_value = "free")]
    pub group: String,
    /// `default`, `none`, or generator names such as `a,b;c,d`.
    #[arg(long, default_value = "default")]
    pub parabolic: String,
    /// Radius or inclusive range `A..B`.
    #[arg(long = "r", default_value = "3..5")]
    pub radii: String,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Seed for sampled steps; eo-build takes its seed from the config.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn rational_arg(s: &str) -> std::result::Result<Rational64, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Ball sizes of the Cayley graph.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coset and H-edge counts of the relative ball.
    Relball {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Neighbourhood intersection, penetration and fat polygon constants.
    Alpha {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// 1, 2, 2p (quasi-geodesic samples) or 3.
        #[arg(long, default_value = "1")]
        condition: String,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        delta: Rational64,
        #[arg(long, default_value = "1/3", value_parser = rational_arg)]
        theta: Rational64,
        #[arg(long = "L", default_value = "2", value_parser = rational_arg)]
        l: Rational64,
        #[arg(long = "C", default_value = "0", value_parser = rational_arg)]
        c: Rational64,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        sigma: Rational64,
        #[arg(long, default_value = "4", value_parser = rational_arg)]
        nu: Rational64,
        /// Polygon vertex count for condition 3.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Bounded coset penetration constants.
    Bcp {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        lambda: Rational64,
        /// Defaults to the radius.
        #[arg(long)]
        len_cap: Option<usize>,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Morse constants on seeded quasi-geodesics drawn in the smallest ball.
    Morse {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "L", default_value = "2", value_parser = rational_arg)]
        l: Rational64,
        #[arg(long = "C", default_value = "0", value_parser = rational_arg)]
        c: Rational64,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        mu: Rational64,
        #[arg(long = "M", default_value = "1", value_parser = rational_arg)]
        m: Rational64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Lines-and-centers constants and relative triangle thinness.
    Bowditch {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Defaults to 1, or 0 when every parabolic is trivial.
        #[arg(long, value_parser = rational_arg)]
        kappa0: Option<Rational64>,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        mu0: Rational64,
        /// central, least-id or seeded.
        #[arg(long, default_value = "central")]
        rule: String,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Canonical pieces and tree-graded checks of a weighted graph.
    Treegraded {
        #[command(flatten)]
        output: OutputArgs,
        /// JSON with `vertices`, `edges` and optionally `pieces`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        cycle_cap: usize,
    },
    /// Nested nets in a torus bouquet and their metric bounds.
    Snet {
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        stages: usize,
        #[arg(long, default_value = "1/2", value_parser = rational_arg)]
        zeta: Rational64,
    },
    /// Builds a presentation from nets, writing `<out>` and
    /// `<out>.diagnostics.json`.
    EoBuild {
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        config: PathBuf,
    },
    /// C*(λ) check, λ_n profile and piece ratio of a word set.
    Smallcancel {
        #[command(flatten)]
        output: OutputArgs,
        /// One word per line over a, b, ...
        #[arg(long, conflicts_with = "generate")]
        words: Option<PathBuf>,
        /// Generate words with these lengths, e.g. `8..12`.
        #[arg(long)]
        generate: Option<String>,
        #[arg(long, default_value_t = 3)]
        per_length: usize,
        #[arg(long, default_value = "1/2", value_parser = rational_arg)]
        lambda: Rational64,
    },
    /// CSV of the main constants against the radius.
    Sweep {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        delta: Rational64,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        lambda: Rational64,
        #[arg(long)]
        len_cap: Option<usize>,
    },
}

/// Rendered result of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// Extra files to write next to `--out`.
    pub artifacts: Vec<(PathBuf, String)>,
    /// A measured property failed.
    pub failed: bool,
}

/// Inclusive radius range; `5..4` is empty.
pub fn parse_radii(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidInput(format!("bad radius range {text:?}, expected A..B"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

/// 2 for usage and input errors, 1 for everything a run can discover.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownGenerator { .. }
        | Error::InvalidInput(_)
        | Error::Io(_)
        | Error::BallCap { .. }
        | Error::Precondition(_) => 2,
        Error::Stage { source, .. } => exit_code(source),
        _ => 1,
    }
}

struct Group {
    entry: GroupEntry,
    parabolics: Vec<Vec<usize>>,
    radii: Vec<usize>,
}

impl Group {
    fn load(args: &GroupArgs) -> Result<Self> {
        let entry = lookup_group(&args.group)?;
        let parabolics = parse_parabolics(&args.parabolic, &entry)?;
        Ok(Group {
            parabolics,
            radii: parse_radii(&args.radii)?,
            entry,
        })
    }

    fn rel(&self, r: usize) -> Result<RelBallGraph> {
        let ball = enumerate_ball(self.entry.oracle.clone(), r)?;
        build_relative_ball(Arc::new(ball), &self.parabolics)
    }

    fn trivial_parabolics(&self) -> bool {
        self.parabolics.iter().all(|p| p.is_empty())
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn fmt_num(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn with_seed_column(csv: &str, seed: u64) -> String {
    let mut out = String::new();
    for (i, line) in csv.lines().enumerate() {
        if i == 0 {
            out.push_str("seed,");
        } else {
            out.push_str(&format!("{seed},"));
        }
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn render_report(mut rep: AlphaReport, group: &GroupArgs, out: &OutputArgs, bound: Option<f64>) -> Outcome {
    rep.params.insert("seed".into(), out.seed.to_string());
    rep.params.insert("group".into(), group.group.clone());
    rep.params.insert("parabolic".into(), group.parabolic.clone());
    if let Some(b) = bound {
        rep = rep.with_bound(b);
    }
    let output = match out.format {
        Format::Json => {
            let mut s = rep.to_json();
            s.push('\n');
            s
        }
        Format::Csv => with_seed_column(&rep.to_csv(), out.seed),
    };
    Outcome {
        output,
        artifacts: vec![],
        failed: rep.verdict == Verdict::Fail,
    }
}

fn per_radius(g: &Group, mut f: impl FnMut(&RelBallGraph) -> Result<AlphaReport>) -> Result<Option<AlphaReport>> {
    let mut reps = Vec::new();
    for &r in &g.radii {
        let rel = g.rel(r)?;
        reps.push(f(&rel).map_err(|e| Error::Stage {
            stage: r,
            source: Box::new(e),
        })?);
    }
    if reps.is_empty() {
        return Ok(None);
    }
    AlphaReport::combine(reps).map(Some)
}

fn empty_range(group: &GroupArgs) -> Error {
    Error::InvalidInput(format!("empty radius range {:?}", group.radii))
}

fn ball_row(rel: &RelBallGraph) -> RadiusRow {
    let ball = &rel.base;
    let mut row = RadiusRow::new(ball.radius);
    row.set("vertices", ball.len() as f64);
    row.set("sphere", ball.sphere(ball.radius).len() as f64);
    row.set("edges", ball.s_edges().len() as f64);
    row
}

fn relball_row(rel: &RelBallGraph) -> RadiusRow {
    let mut row = RadiusRow::new(rel.base.radius);
    row.set("vertices", rel.len() as f64);
    row.set("cosets", rel.cosets(2).len() as f64);
    row.set("h_edges", rel.h_edges().len() as f64);
    let ecc = rel.rel_row(0).iter().filter(|&&d| d != INF).max().copied().unwrap_or(0);
    row.set("rel_eccentricity", ecc as f64);
    row
}

fn center_rule(name: &str, seed: u64) -> Result<CenterRule> {
    match name {
        "central" => Ok(CenterRule::Central),
        "least-id" => Ok(CenterRule::LeastId),
        "seeded" => Ok(CenterRule::Seeded(seed)),
        _ => Err(Error::InvalidInput(format!("unknown center rule {name:?}"))),
    }
}

fn bowditch_row(rel: &RelBallGraph, kappa0: Rational64, mu0: Rational64, rule: CenterRule) -> Result<RadiusRow> {
    let r = rel.base.radius;
    let ls = build_lines_centers(rel, kappa0, mu0, r / 2, rule)?;
    let k = bowditch_k(rel, &ls)?;
    let thin = rel_thin_triangle_delta(rel, TriangleMode::Based);
    let mut row = RadiusRow::new(r);
    row.set("K_I", k.k_i as f64);
    row.set("K_II", k.k_ii as f64);
    row.set("K_III", k.k_iii as f64);
    row.set("K", k.k as f64);
    row.set("center_set_diameter", k.center_set_diameter as f64);
    row.set("lines_vertices", k.vertices as f64);
    row.set("nu", thin.delta as f64);
    row.truncated = thin.truncated;
    row.witnesses = k.witnesses;
    Ok(row)
}

fn run_treegraded(input: &Path, cycle_cap: usize, out: &OutputArgs) -> Result<Outcome> {
    let text = read(input)?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", input.display())))?;
    let in_err = |e: Error| Error::InvalidInput(format!("{}: {e}", input.display()));
    let x = if v.get("pieces").is_some() {
        PieceSpace::from_json(&text).map_err(in_err)?
    } else {
        let n = v["vertices"]
            .as_u64()
            .ok_or_else(|| Error::InvalidInput(format!("{}: missing vertices", input.display())))?;
        let edges: Vec<(usize, usize, f64)> = serde_json::from_value(v["edges"].clone())
            .map_err(|e| Error::InvalidInput(format!("{}: edges: {e}", input.display())))?;
        canonical_pieces(n as usize, edges).map_err(in_err)?
    };
    let t1 = check_t1(&x);
    let t2 = check_t2(&x, cycle_cap);
    let failed = !(t1.ok && t2.ok);
    let output = match out.format {
        Format::Json => pretty(&json!({
            "seed": out.seed,
            "input": input.display().to_string(),
            "vertices": x.vertex_count(),
            "pieces": x.pieces,
            "t1": t1,
            "t2": t2,
        })),
        Format::Csv => {
            let mut s = String::from("seed,piece,size,vertices\n");
            for (i, p) in x.pieces.iter().enumerate() {
                let vs: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                s.push_str(&format!("{},{i},{},{}\n", out.seed, p.len(), vs.join(" ")));
            }
            s
        }
    };
    Ok(Outcome {
        output,
        artifacts: vec![],
        failed,
    })
}

fn run_snet(dims: &[usize], grid: usize, stages: usize, zeta: Rational64, out: &OutputArgs) -> Result<Outcome> {
    let z = crate::report::rational_to_f64(zeta);
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::InvalidInput(format!("zeta must lie in (0, 1), got {}", fmt_rational(zeta))));
    }
    let space = torus_bouquet_space(dims, grid)?;
    let radii: Vec<f64> = (1..=stages).map(|i| i as f64).collect();
    let deltas: Vec<f64> = (1..=stages).map(|i| z.powi(i as i32)).collect();
    let chain = nested_snets(&space, &radii, &deltas, &SeedOrder::Natural)?;
    let sizes: Vec<usize> = (1..=stages).map(|n| chain.net(n).len()).collect();
    let bounds = if stages >= 2 { Some(net_metric_bounds_check(&space, &chain, z)?) } else { None };
    let failed = bounds.as_ref().is_some_and(|b| !b.holds());
    let output = match out.format {
        Format::Json => pretty(&json!({
            "seed": out.seed,
            "dims": dims,
            "grid": grid,
            "zeta": fmt_rational(zeta),
            "net_sizes": sizes,
            "bounds": bounds,
        })),
        Format::Csv => {
            let mut s = String::from(
                "seed,n,net_size,k,kappa,edges,pairs,lower_violations,upper_violations,max_stretch,max_bound_use\n",
            );
            for (i, size) in sizes.iter().enumerate() {
                let n = i + 1;
                s.push_str(&format!("{},{n},{size}", out.seed));
                match bounds.as_ref().and_then(|b| b.stages.iter().find(|st| st.n == n)) {
                    Some(st) => s.push_str(&format!(
                        ",{},{},{},{},{},{},{},{}\n",
                        st.k,
                        fmt_num(st.kappa),
                        st.edges,
                        st.pairs,
                        st.lower_violations,
                        st.upper_violations,
                        fmt_num(st.max_stretch),
                        fmt_num(st.max_bound_use)
                    )),
                    None => s.push_str(",,,,,,,,\n"),
                }
            }
            s
        }
    };
    Ok(Outcome {
        output,
        artifacts: vec![],
        failed,
    })
}

fn run_eo_build(config: &Path, out: &OutputArgs) -> Result<Outcome> {
    let cfg = EOConfig::from_file(config)?;
    let spaces = cfg.build_spaces()?;
    let build = build_eo_presentation(&cfg, &spaces)?;
    let presentation = format!("{}\n", build.presentation);
    let diagnostics = pretty(&build.diagnostics);
    Ok(match &out.out {
        Some(p) => {
            let mut d = p.clone().into_os_string();
            d.push(".diagnostics.json");
            Outcome {
                output: presentation,
                artifacts: vec![(PathBuf::from(d), diagnostics)],
                failed: false,
            }
        }
        None => Outcome {
            output: pretty(&json!({
                "presentation": build.presentation.to_string(),
                "diagnostics": build.diagnostics,
            })),
            artifacts: vec![],
            failed: false,
        },
    })
}

fn run_smallcancel(
    words: Option<&Path>,
    generate: Option<&str>,
    per_length: usize,
    lambda: Rational64,
    out: &OutputArgs,
) -> Result<Outcome> {
    let set = match (words, generate) {
        (Some(p), _) => {
            let text = read(p)?;
            WordSet::from_text(&text, &default_names(26))
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?
        }
        (None, Some(range)) => {
            let lengths = parse_radii(range)?;
            generate_cstar_words(lambda, &lengths, per_length, out.seed)?.words
        }
        (None, None) => return Err(Error::InvalidInput("give --words or --generate".into())),
    };
    let set = crate::words::close_word_set(&set);
    let (ok, violation) = check_cstar(&set, lambda);
    let profile = cstar_profile(&set);
    let pieces = if set.is_empty() { None } else { Some(check_c_prime(&set, lambda)?.0) };
    let c_prime = pieces.as_ref().map(|p| crate::report::rational_to_f64(p.lambda_measured));
    let output = match out.format {
        Format::Json => pretty(&json!({
            "seed": out.seed,
            "lambda": fmt_rational(lambda),
            "words": set.len(),
            "cstar": ok,
            "violation": violation,
            "profile": profile,
            "c_prime_measured": c_prime,
        })),
        Format::Csv => with_seed_column(&profile.to_csv(), out.seed),
    };
    Ok(Outcome {
        output,
        artifacts: vec![],
        failed: !ok,
    })
}

/// One CSV row per radius with the main constants; a radius whose
/// computation fails gets its error in the last column.
pub fn sweep(
    group: &GroupArgs,
    seed: u64,
    delta: Rational64,
    lambda: Rational64,
    len_cap: Option<usize>,
) -> Result<String> {
    let g = Group::load(group)?;
    let mut out = String::from("seed,group,r,vertices,alpha1_diameter,bcp_a1,bcp_a2,thin_nu,bowditch_K,error\n");
    let kappa0 = Rational64::from_integer(if g.trivial_parabolics() { 0 } else { 1 });
    for &r in &g.radii {
        let cells = (|| -> Result<Vec<String>> {
            let rel = g.rel(r)?;
            let a1 = alpha1_report(&rel, delta)?;
            let bcp = bcp_report(&rel, lambda, len_cap.unwrap_or(r))?;
            let b = bowditch_row(&rel, kappa0, Rational64::from_integer(0), CenterRule::Central)?;
            let get = |rep: &AlphaReport, k: &str| rep.per_radius[0].get(k).map(fmt_num).unwrap_or_default();
            Ok(vec![
                rel.len().to_string(),
                get(&a1, "diameter"),
                get(&bcp, "a1"),
                get(&bcp, "a2"),
                b.get("nu").map(fmt_num).unwrap_or_default(),
                b.get("K").map(fmt_num).unwrap_or_default(),
                String::new(),
            ])
        })();
        let cells = cells.unwrap_or_else(|e| {
            let mut v = vec![String::new(); 6];
            v.push(format!("\"{}\"", e.to_string().replace('"', "'")));
            v
        });
        out.push_str(&format!("{seed},{},{r},{}\n", group.group, cells.join(",")));
    }
    Ok(out)
}

/// Runs a command without touching the filesystem beyond its inputs.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Ball { group, output } | Command::Relball { group, output } => {
            let g = Group::load(group)?;
            let relball = matches!(cfg.command, Command::Relball { .. });
            let rows = g
                .radii
                .iter()
                .map(|&r| g.rel(r).map(|rel| if relball { relball_row(&rel) } else { ball_row(&rel) }))
                .collect::<Result<Vec<_>>>()?;
            let name = if relball { "relball" } else { "ball" };
            Ok(render_report(AlphaReport::new(name, "vertices", &[], rows), group, output, None))
        }
        Command::Alpha {
            group,
            output,
            condition,
            delta,
            theta,
            l,
            c,
            sigma,
            nu,
            k,
            samples,
            bound,
        } => {
            let g = Group::load(group)?;
            let seed = output.seed;
            let rep = match condition.as_str() {
                "1" => per_radius(&g, |rel| alpha1_report(rel, *delta))?,
                "2" => per_radius(&g, |rel| alpha2_report(rel, *theta))?,
                "2p" => per_radius(&g, |rel| alpha2_prime_report(rel, *l, *c, *theta, *samples, seed))?,
                "3" => {
                    let fp = FatParams::new(*theta, *sigma, *nu)?;
                    per_radius(&g, |rel| alpha3_report(rel, &fp, *k, *samples, seed))?
                }
                other => return Err(Error::InvalidInput(format!("unknown condition {other:?}, expected 1, 2, 2p or 3"))),
            };
            let rep = rep.ok_or_else(|| empty_range(group))?;
            Ok(render_report(rep, group, output, *bound))
        }
        Command::Bcp {
            group,
            output,
            lambda,
            len_cap,
            bound,
        } => {
            let g = Group::load(group)?;
            let rep = per_radius(&g, |rel| bcp_report(rel, *lambda, len_cap.unwrap_or(rel.base.radius)))?
                .ok_or_else(|| empty_range(group))?;
            Ok(render_report(rep, group, output, *bound))
        }
        Command::Morse {
            group,
            output,
            l,
            c,
            mu,
            m,
            samples,
            bound,
        } => {
            let g = Group::load(group)?;
            let sp = SatParams::new(*l, *c, *mu, *m)?;
            let r0 = *g.radii.first().ok_or_else(|| empty_range(group))?;
            let drawn = morse_samples(&g.rel(r0)?, &sp, *samples, output.seed);
            let mut rep = per_radius(&g, |rel| morse_sample_report(rel, &drawn, &sp))?.expect("nonempty range");
            rep.params.insert("samples".into(), samples.to_string());
            rep.params.insert("sample_radius".into(), r0.to_string());
            Ok(render_report(rep, group, output, *bound))
        }
        Command::Bowditch {
            group,
            output,
            kappa0,
            mu0,
            rule,
            bound,
        } => {
            let g = Group::load(group)?;
            let rule = center_rule(rule, output.seed)?;
            let kappa0 = kappa0.unwrap_or(Rational64::from_integer(if g.trivial_parabolics() { 0 } else { 1 }));
            let mut rows = Vec::new();
            for &r in &g.radii {
                let rel = g.rel(r)?;
                rows.push(bowditch_row(&rel, kappa0, *mu0, rule).map_err(|e| Error::Stage {
                    stage: r,
                    source: Box::new(e),
                })?);
            }
            if rows.is_empty() {
                return Err(empty_range(group));
            }
            let params = [
                ("kappa0", fmt_rational(kappa0)),
                ("mu0", fmt_rational(*mu0)),
                ("rule", format!("{rule:?}")),
            ];
            Ok(render_report(AlphaReport::new("bowditch", "K", &params, rows), group, output, *bound))
        }
        Command::Treegraded {
            output,
            input,
            cycle_cap,
        } => run_treegraded(input, *cycle_cap, output),
        Command::Snet {
            output,
            dims,
            grid,
            stages,
            zeta,
        } => run_snet(dims, *grid, *stages, *zeta, output),
        Command::EoBuild { output, config } => run_eo_build(config, output),
        Command::Smallcancel {
            output,
            words,
            generate,
            per_length,
            lambda,
        } => run_smallcancel(words.as_deref(), generate.as_deref(), *per_length, *lambda, output),
        Command::Sweep {
            group,
            output,
            delta,
            lambda,
            len_cap,
        } => Ok(Outcome {
            output: sweep(group, output.seed, *delta, *lambda, *len_cap)?,
            artifacts: vec![],
            failed: false,
        }),
    }
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Ball { output, .. }
        | Command::Relball { output, .. }
        | Command::Alpha { output, .. }
        | Command::Bcp { output, .. }
        | Command::Morse { output, .. }
        | Command::Bowditch { output, .. }
        | Command::Treegraded { output, .. }
        | Command::Snet { output, .. }
        | Command::EoBuild { output, .. }
        | Command::Smallcancel { output, .. }
        | Command::Sweep { output, .. } => output,
    }
}

/// Executes and writes the outputs; returns the process exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = execute(cfg).and_then(|o| {
        match &output_args(&cfg.command).out {
            Some(p) => std::fs::write(p, &o.output).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
            None => print!("{}", o.output),
        }
        for (p, text) in &o.artifacts {
            std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        }
        Ok(o.failed)
    });
    match result {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses arguments (including the program name) and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("relhyp").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn radius_ranges() {
        assert_eq!(parse_radii("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_radii("4").unwrap(), vec![4]);
        assert!(parse_radii("5..4").unwrap().is_empty());
        assert!(parse_radii("x..4").is_err());
    }

    #[test]
    fn alpha_on_free_product() {
        let o = execute(&cfg(&["alpha", "--group", "zz-free-product", "--r", "2..3", "--delta", "1"])).unwrap();
        let v: Value = serde_json::from_str(&o.output).unwrap();
        assert_eq!(v["condition"], "alpha1");
        assert_eq!(v["params"]["seed"], "0");
        assert_eq!(v["per_radius"].as_array().unwrap().len(), 2);
        assert!(!o.failed);
    }

    #[test]
    fn bound_failure_sets_flag() {
        let o = execute(&cfg(&["alpha", "--group", "abelian-2", "--r", "3..4", "--bound", "0"])).unwrap();
        assert!(o.failed);
    }

    #[test]
    fn missing_file_is_usage_error() {
        let e = execute(&cfg(&["eo-build", "--config", "/no/such/eo.toml"])).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        assert!(e.to_string().contains("/no/such/eo.toml"));
        assert_eq!(main_with_args(["relhyp", "treegraded", "--input", "/no/such.json"]), 2);
        assert_eq!(main_with_args(["relhyp", "frobnicate"]), 2);
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let o = execute(&cfg(&["sweep", "--r", "5..4"])).unwrap();
        assert_eq!(o.output.lines().count(), 1);
        assert!(o.output.starts_with("seed,group,r,"));
    }

    #[test]
    fn sweep_records_errors_as_rows() {
        let o = execute(&cfg(&["sweep", "--group", "free", "--r", "2..3", "--lambda", "1/2"])).unwrap();
        let rows: Vec<&str> = o.output.lines().collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[1].contains("invalid input") || rows[1].contains("precondition"), "{}", rows[1]);
    }

    #[test]
    fn csv_has_seed_column() {
        let o = execute(&cfg(&["ball", "--r", "1..2", "--format", "csv", "--seed", "7"])).unwrap();
        let lines: Vec<&str> = o.output.lines().collect();
        assert!(lines[0].starts_with("seed,condition,r,"));
        assert!(lines[1].starts_with("7,ball,1,"));
        // edges, sphere, vertices of the radius-2 ball in F2
        assert_eq!(lines[2], "7,ball,2,16,12,17,false,false");
    }
}
