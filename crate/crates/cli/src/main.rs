//! `floerdim`: command-line front end for the floerdim library.

mod batch;
mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use floerdim::bypass::{certify, CertificateTree};
use floerdim::diagram::{build, OneOneParams};
use floerdim::homology::{
    alexander_gradings, find_realization, hfk_rank, khi_torus_dims, torus_alexander, torus_genus, GradedDims,
    TorusKnotParams,
};
use floerdim::ledger::{surgery_model, window, Dim};
use floerdim::slope::{
    additive, bypass_children, continued_fraction, gamma_hat, lattice_triangle_ok, surgery_frame, Slope, SurgeryFrame,
};
use floerdim::surgery::{certify_lspace, threshold, SimpleKnot, SurgeryCertificate};
use floerdim::svg::{render_diagram, render_tree, RenderOptions};
use floerdim::triangle::{dimension_lemma, triangle_solve, Direction, Facts};

use config::Config;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVARIANT: u8 = 2;
pub const EXIT_BELOW_THRESHOLD: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "floerdim",
    version,
    about = "Combinatorics of (1,1)-knot diagrams, bypass certificates and surgery bounds"
)]
pub struct Cli {
    /// Emit one JSON document on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Write the main output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Configuration file; overrides $FLOERDIM_CONFIG and ./floerdim.conf
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Slope arithmetic on the boundary torus
    #[command(subcommand)]
    Slope(SlopeCmd),
    /// Build, mirror, draw and describe W(p,q,r,s) diagrams
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Alexander polynomials
    #[command(subcommand)]
    Alexander(TorusCmd),
    /// Graded dimension tables of torus knots
    #[command(subcommand)]
    Khi(TorusCmd),
    /// Rank of knot Floer homology of a diagram
    Hfk { diagram: String },
    /// Search diagrams whose Alexander polynomial matches a target
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        pmax: Option<i64>,
    },
    /// Bypass certificate tree for a diagram
    Certify {
        diagram: String,
        /// Also draw the tree as SVG
        #[arg(long, value_name = "FILE")]
        svg_tree: Option<PathBuf>,
    },
    /// Surgery certificates for simple knots
    #[command(subcommand)]
    Surgery(SurgeryCmd),
    /// Grading windows, surgery models and exact-triangle bookkeeping
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// Run every line of a corpus file and tabulate the outcomes
    Batch { corpus: Option<PathBuf> },
    /// Randomized invariant checks over sampled diagrams
    Check {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pmax: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum SlopeCmd {
    /// The two slopes completing the bypass triangle
    Children {
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
    /// Suture Γ̂_n for a surgery slope
    GammaHat {
        #[arg(long, allow_hyphen_values = true)]
        surgery: String,
        #[arg(long)]
        index: i64,
    },
    /// Negative continued fraction of y/x < -1
    Cf {
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
}

#[derive(Subcommand, Debug)]
enum DiagramCmd {
    /// Strand model as JSON or a strand listing
    Build { diagram: String },
    /// Parameters of the mirror diagram
    Mirror { diagram: String },
    /// SVG drawing
    Render {
        diagram: String,
        /// Overlay the sutures γ₁, γ₂
        #[arg(long)]
        sutures: bool,
    },
    /// Components, homology class and suture intersection counts
    Info { diagram: String },
}

#[derive(Subcommand, Debug)]
enum TorusCmd {
    Torus { a: i64, b: i64 },
}

#[derive(Subcommand, Debug)]
enum SurgeryCmd {
    /// Certify an L-space surgery slope
    Certify {
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Surgery threshold N and its split tree
    Threshold {
        #[arg(long)]
        knot: String,
    },
}

#[derive(Subcommand, Debug)]
enum LedgerCmd {
    /// Nonvanishing grading range
    Window(WindowArgs),
    /// Summands of large surgery split over Z_n
    SurgeryModel {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        g: i64,
        /// Comma-separated middle summands; names stand for unknowns
        #[arg(long, default_value = "")]
        middle: String,
        #[arg(long)]
        n: i64,
        /// Knot generating the splitting, recorded with the model
        #[arg(long)]
        knot: Option<String>,
    },
    /// Solve a facts file
    Solve { facts: PathBuf },
    /// Facts of the bypass and surgery triangles behind the essential-block dimension
    Lemma {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        qn: i64,
        #[arg(long, value_enum, default_value = "plus")]
        direction: Sign,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum Sign {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
struct WindowArgs {
    #[arg(long)]
    y: i64,
    #[arg(long)]
    g: i64,
}

/// What a command produced, before it is written anywhere.
#[derive(Debug)]
pub struct Report {
    pub human: String,
    pub json: Value,
    /// Raw document (SVG) that replaces both renderings.
    pub raw: Option<String>,
    pub code: u8,
}

impl Report {
    fn new(human: String, json: Value) -> Report {
        Report { human, json, raw: None, code: 0 }
    }

    fn raw(doc: String) -> Report {
        Report { human: String::new(), json: Value::Null, raw: Some(doc), code: 0 }
    }

    fn code(mut self, code: u8) -> Report {
        self.code = code;
        self
    }

    pub fn render(&self, json: bool) -> String {
        match (&self.raw, json) {
            (Some(doc), _) => doc.clone(),
            (None, true) => format!("{}\n", serde_json::to_string(&self.json).expect("serializable")),
            (None, false) => self.human.clone(),
        }
    }
}

/// Exit status for an error: library errors map to their class, the rest are usage errors.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<floerdim::Error>() {
        Some(floerdim::Error::Invariant(_)) => EXIT_INVARIANT,
        Some(floerdim::Error::BelowThreshold { .. }) => EXIT_BELOW_THRESHOLD,
        _ => EXIT_USAGE,
    }
}

fn diagram(text: &str) -> Result<OneOneParams> {
    Ok(text.parse::<OneOneParams>()?)
}

fn ratio(text: &str) -> Result<(i64, i64)> {
    Ok(floerdim::parse::ratio(text)?)
}

fn torus(a: i64, b: i64) -> Result<TorusKnotParams> {
    Ok(TorusKnotParams::new(a, b)?)
}

fn dims_json(d: &GradedDims) -> Value {
    let gradings: serde_json::Map<String, Value> = d.gradings.iter().map(|(g, n)| (g.to_string(), json!(n))).collect();
    json!({ "gradings": gradings, "total": d.total })
}

fn dims_table(d: &GradedDims) -> String {
    let mut s = String::from("grading\tdim\n");
    for (g, n) in &d.gradings {
        writeln!(s, "{g}\t{n}").unwrap();
    }
    writeln!(s, "total\t{}", d.total).unwrap();
    s
}

fn frame_for(q: i64, p: i64) -> Result<SurgeryFrame> {
    if q < 0 && p == 1 {
        return Ok(SurgeryFrame::negative_integral(-q));
    }
    Ok(surgery_frame(q, p)?)
}

fn tree_lines(t: &CertificateTree, depth: usize, out: &mut String) {
    writeln!(out, "{}{} {:?} leaves={} bound={}", "  ".repeat(depth), t.params, t.rule, t.leaf_count, t.bound).unwrap();
    for c in &t.children {
        tree_lines(c, depth + 1, out);
    }
}

fn certificate_lines(c: &SurgeryCertificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    writeln!(
        out,
        "{pad}{} at {}: value {} (N = {}, |H1| = {})",
        c.knot.label(),
        c.slope,
        c.value,
        c.threshold_n,
        c.h1_order
    )
    .unwrap();
    for s in &c.steps {
        writeln!(out, "{pad}  {} {} {}  [{}] {}", s.lhs, s.relation, s.rhs, s.justification_tag, s.claim).unwrap();
    }
    for child in &c.children {
        certificate_lines(child, depth + 1, out);
    }
}

pub fn run(cli: &Cli, cfg: &Config) -> Result<Report> {
    let pmax_default = cfg.pmax.unwrap_or(6);
    Ok(match &cli.command {
        Command::Slope(cmd) => slope(cmd)?,
        Command::Diagram(cmd) => diagram_cmd(cmd)?,
        Command::Alexander(TorusCmd::Torus { a, b }) => {
            let k = torus(*a, *b)?;
            let d = torus_alexander(k)?;
            Report::new(
                format!("{d}\n"),
                json!({ "knot": format!("T({a},{b})"), "alexander": d.to_string(), "genus": torus_genus(k) }),
            )
        }
        Command::Khi(TorusCmd::Torus { a, b }) => {
            let d = khi_torus_dims(torus(*a, *b)?)?;
            Report::new(dims_table(&d), dims_json(&d))
        }
        Command::Hfk { diagram: text } => {
            let w = diagram(text)?;
            let rank = hfk_rank(w)?;
            let table = alexander_gradings(&build(w))?;
            let mut human = format!("{w}: rank {rank}\n");
            let gradings = table.absolute().map(|d| {
                human.push_str(&dims_table(d));
                dims_json(d)
            });
            Report::new(human, json!({ "params": w.to_string(), "rank": rank, "table": gradings }))
        }
        Command::Realize { target, pmax } => {
            let poly = floerdim::parse::laurent(target)?;
            let pmax = pmax.unwrap_or(pmax_default);
            let hits = find_realization(&poly, pmax)?;
            let names: Vec<String> = hits.iter().map(|w| w.to_string()).collect();
            let human =
                if names.is_empty() { format!("no diagram with p <= {pmax}\n") } else { names.join("\n") + "\n" };
            Report::new(human, json!({ "target": poly.to_string(), "pmax": pmax, "hits": names }))
        }
        Command::Certify { diagram: text, svg_tree } => {
            let tree = certify(diagram(text)?)?;
            if !tree.check() {
                return Err(floerdim::Error::Invariant(format!(
                    "{}: certificate tree fails its own check",
                    tree.params
                ))
                .into());
            }
            if let Some(path) = svg_tree {
                std::fs::write(path, render_tree(&tree)).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut human = format!("{}: bound {}\n", tree.params, tree.bound);
            tree_lines(&tree, 0, &mut human);
            Report::new(human, serde_json::to_value(&tree)?)
        }
        Command::Surgery(cmd) => surgery(cmd)?,
        Command::Ledger(cmd) => ledger(cmd)?,
        Command::Batch { corpus } => {
            let path = corpus.clone().or_else(|| cfg.corpus.clone()).context("no corpus file given")?;
            batch::run_corpus(&path, cfg)?
        }
        Command::Check { samples, seed, pmax } => check(*samples, *seed, pmax.unwrap_or(pmax_default.max(8)))?,
    })
}

fn slope(cmd: &SlopeCmd) -> Result<Report> {
    Ok(match cmd {
        SlopeCmd::Children { slope } => {
            let s3: Slope = slope.parse()?;
            let (s1, s2) = bypass_children(s3);
            let ok = additive(s1, s2, s3) && lattice_triangle_ok(s1, s2, s3);
            Report::new(
                format!("{s3} -> {s1}, {s2}{}\n", if ok { "" } else { " (not a Farey triangle)" }),
                json!({ "input": s3.to_string(), "children": [s1.to_string(), s2.to_string()], "farey_ok": ok }),
            )
        }
        SlopeCmd::GammaHat { surgery, index } => {
            let (q, p) = ratio(surgery)?;
            let frame = frame_for(q, p)?;
            let (g, qn) = gamma_hat(&frame, *index);
            Report::new(
                format!("Γ̂_{index}({q}/{p}) = γ({},{}), q_n = {qn}\n", g.x, g.y),
                json!({
                    "surgery": format!("{q}/{p}"),
                    "index": index,
                    "gamma": [g.x, g.y],
                    "q_n": qn,
                    "frame": { "q": frame.q, "p": frame.p, "q0": frame.q0, "p0": frame.p0, "relaxed": frame.relaxed },
                }),
            )
        }
        SlopeCmd::Cf { slope } => {
            let (y, x) = ratio(slope)?;
            if x == 0 {
                bail!("{slope} has no continued fraction below -1");
            }
            let cf = continued_fraction(Ratio::new(y, x))?;
            let text: Vec<String> = cf.terms.iter().map(|t| t.to_string()).collect();
            Report::new(
                format!("[{}]\n", text.join(", ")),
                json!({ "input": format!("{}", Ratio::new(y, x)), "terms": cf.terms }),
            )
        }
    })
}

fn diagram_cmd(cmd: &DiagramCmd) -> Result<Report> {
    Ok(match cmd {
        DiagramCmd::Build { diagram: text } => {
            let model = build(diagram(text)?);
            let mut human = format!(
                "{}: {} strands, {} component(s)\n",
                model.params,
                model.strands.len(),
                model.component_count()
            );
            for a in &model.strands {
                writeln!(human, "  {:?}\t{} -> {}", a.kind, a.from, a.to).unwrap();
            }
            Report::new(human, serde_json::to_value(&model)?)
        }
        DiagramCmd::Mirror { diagram: text } => {
            let w = diagram(text)?;
            let m = w.mirror();
            Report::new(format!("{m}\n"), json!({ "input": w.to_string(), "mirror": m.to_string() }))
        }
        DiagramCmd::Render { diagram: text, sutures } => {
            let model = build(diagram(text)?);
            Report::raw(render_diagram(&model, RenderOptions { sutures: *sutures }))
        }
        DiagramCmd::Info { diagram: text } => {
            let w = diagram(text)?;
            let model = build(w);
            let triple = model.suture_triple();
            let homology = model.homology_class().ok();
            let lens = model.lens_order().ok();
            let mut human = format!("{w}\ncomponents\t{}\n", model.component_count());
            if let (Some(h), Some(l)) = (homology, lens) {
                writeln!(human, "class\t({}, {})\nlens order\t{l}", h.a, h.b).unwrap();
            }
            writeln!(human, "genus\t{}\n|γ ∩ α| total\t{}", triple.genus, triple.alpha_total()).unwrap();
            Report::new(
                human,
                json!({
                    "params": w.to_string(),
                    "components": model.component_count(),
                    "knot": model.is_knot(),
                    "homology_class": homology,
                    "lens_order": lens,
                    "suture_triple": triple,
                }),
            )
        }
    })
}

fn surgery(cmd: &SurgeryCmd) -> Result<Report> {
    Ok(match cmd {
        SurgeryCmd::Certify { knot, slope } => {
            let k: SimpleKnot = knot.parse()?;
            let (q, p) = ratio(slope)?;
            let c = certify_lspace(&k, q, p)?;
            let mut human = String::new();
            certificate_lines(&c, 0, &mut human);
            Report::new(human, serde_json::to_value(&c)?)
        }
        SurgeryCmd::Threshold { knot } => {
            let k: SimpleKnot = knot.parse()?;
            let t = threshold(&k)?;
            Report::new(
                format!("{}: N = {} (N0 = {})\n", k.label(), t.n, t.n0),
                json!({ "knot": k.label(), "threshold": t }),
            )
        }
    })
}

fn ledger(cmd: &LedgerCmd) -> Result<Report> {
    Ok(match cmd {
        LedgerCmd::Window(WindowArgs { y, g }) => {
            let w = window(*y, *g)?;
            Report::new(
                format!("[{}, {}] width {} tau {}\n", w.i_min, w.i_max, w.width(), w.tau),
                serde_json::to_value(w)?,
            )
        }
        LedgerCmd::SurgeryModel { d, g, middle, n, knot } => {
            let middle: Vec<Dim> = middle
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse())
                .collect::<floerdim::Result<_>>()?;
            let mut m = surgery_model(*d, *g, &middle, *n)?;
            if let Some(k) = knot {
                let label = match k.parse::<SimpleKnot>() {
                    Ok(simple) => simple.label(),
                    Err(_) => diagram(k)?.to_string(),
                };
                m = m.for_knot(label);
            }
            let (known, unknown) = m.total();
            let cells: Vec<String> = m.summands.iter().map(|s| s.to_string()).collect();
            let total =
                if unknown.is_empty() { known.to_string() } else { format!("{known} + {}", unknown.join(" + ")) };
            Report::new(
                format!("{}\ntotal {total}\n", cells.join(" ")),
                json!({ "n": m.n, "g": m.g, "d": m.d, "knot": m.knot, "summands": m.summands, "known_total": known, "unknown": unknown }),
            )
        }
        LedgerCmd::Lemma { q, g, qn, direction } => {
            let direction = match direction {
                Sign::Plus => Direction::Plus,
                Sign::Minus => Direction::Minus,
            };
            let facts = dimension_lemma(*q, *g, *qn, direction)?;
            let pretty = serde_json::to_string_pretty(&facts)? + "\n";
            Report::new(pretty, serde_json::to_value(&facts)?)
        }
        LedgerCmd::Solve { facts } => {
            let text = std::fs::read_to_string(facts).with_context(|| format!("reading {}", facts.display()))?;
            let report = triangle_solve(&Facts::from_json(&text)?)?;
            let mut human = String::new();
            if let Some(c) = &report.contradiction {
                let at = c.grading.map(|g| format!(" at grading {g}")).unwrap_or_default();
                writeln!(human, "contradiction in {}{at}: {}", c.source, c.message).unwrap();
            }
            for g in &report.goals {
                let v = g.value.map(|v| format!(" = {v}")).unwrap_or_default();
                writeln!(human, "{}: {:?}{v}", g.label, g.status).unwrap();
            }
            let code = if report.contradiction.is_some() { EXIT_INVARIANT } else { 0 };
            Report::new(human, serde_json::to_value(&report)?).code(code)
        }
    })
}

fn check(samples: usize, seed: u64, pmax: i64) -> Result<Report> {
    let pool: Vec<OneOneParams> = OneOneParams::all(pmax).filter(|w| build(*w).is_connected()).collect();
    if pool.is_empty() {
        bail!("no single-component diagrams with p <= {pmax}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let w = *pool.choose(&mut rng).expect("nonempty pool");
        let tree = certify(w)?;
        if !tree.check() || tree.leaf_count != w.p {
            failures.push(format!("{w}: certificate"));
        }
        if w.mirror().mirror() != w || build(w.mirror()).lens_order()? != build(w).lens_order()? {
            failures.push(format!("{w}: mirror"));
        }
    }
    let human =
        format!("{samples} samples (seed {seed}, p <= {pmax}): {} failure(s)\n{}", failures.len(), failures.join("\n"));
    let code = if failures.is_empty() { 0 } else { EXIT_INVARIANT };
    Ok(Report::new(human, json!({ "samples": samples, "seed": seed, "pmax": pmax, "failures": failures })).code(code))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = config::load(cli.config.as_deref()).and_then(|cfg| {
        let report = run(&cli, &cfg)?;
        emit(&report.render(cli.json || cfg.json), cli.out.as_deref())?;
        Ok(report.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
