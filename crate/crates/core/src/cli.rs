//! The `omega-graphs` command line.
//!
//! Every subcommand is a thin layer over the library: it builds the graph
//! from `--omega`/`--family` and `--field`, runs one operation and prints
//! records. In tsv mode a summary record prints as space-separated
//! `key=value` pairs and a table row as tab-separated values; jsonl prints
//! either as one JSON object per line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
//! validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Map, Value};

use crate::autos::{parse_descriptor, verify, VerifyMode};
use crate::gf::{Elem, Field};
use crate::graph::{
    components, export_biadjacency, export_edgelist, Graph, Scope, Side, Vertex, DEFAULT_VERTEX_CAP,
};
use crate::invariants::{alt_invariant, bound_exponent, coset_structure, d001_value, fiber_check, InvError};
use crate::paths::{
    closed_form, girth_certificates, girth_exact, sigma_params, walk, ColorSeq, GirthMode, Justification, Target,
};
use crate::seqset::{omega2, omega3, omega4, u_family, w_family, x_family, BinSeq, ClosureKind, Index, OmegaSet};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "omega-graphs", version, about = "Algebraic bipartite graphs Γ(Ω, q)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Ω file: one sequence per line, `e` for η, `#` comments.
    #[arg(long, global = true)]
    omega: Option<PathBuf>,
    /// A named family instead of a file: U<k>, W<n>, X<n>, omega2, omega3, omega4.
    #[arg(long, global = true, conflicts_with = "omega")]
    family: Option<String>,
    /// Field order as p^m.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap_vertices: u64,
    /// BFS depth for girth searches; cycles up to twice this are found.
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..))]
    cap_depth: u32,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Omega(OmegaCmd),
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Girth(GirthCmd),
    #[command(subcommand)]
    Components(ComponentsCmd),
    #[command(subcommand)]
    Auto(AutoCmd),
    /// Project a component onto Γ(Ω′, q) and tabulate fiber sizes.
    Project(ProjectArgs),
    #[command(subcommand)]
    Path(PathCmd),
}

#[derive(Debug, Subcommand)]
enum OmegaCmd {
    /// Validate the file and report closure properties.
    Check,
    /// Print 𝕊(Ω), ℍ₀(Ω), ℍ₁(Ω) or Φ(Ω).
    Closure {
        #[arg(long, default_value = "s", value_parser = parse_kind)]
        kind: ClosureKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Edgelist,
    Biadjacency,
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    Stats,
    Neighbors {
        #[arg(long)]
        vertex: String,
    },
    Export {
        #[arg(long, value_enum, default_value_t = ExportKind::Edgelist)]
        what: ExportKind,
        /// Restrict to the component of this vertex.
        #[arg(long)]
        component: Option<String>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GirthModeArg {
    /// From-zero when a transitivity hypothesis holds, else all roots.
    Auto,
    AllRoots,
    FromZero,
}

#[derive(Debug, Subcommand)]
enum GirthCmd {
    Exact {
        #[arg(long, value_enum, default_value_t = GirthModeArg::Auto)]
        mode: GirthModeArg,
    },
    /// Lower bounds from the closure hypotheses, with witnesses.
    Bound,
}

#[derive(Debug, Subcommand)]
enum ComponentsCmd {
    Count,
    /// Invariant values per component, or the coset report for a maximal α.
    Invariants {
        #[arg(long)]
        coset: Option<String>,
        /// Vertex of Γ(Ω∖{α}, q) whose component the coset report covers.
        #[arg(long, requires = "coset")]
        base: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyModeArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Subcommand)]
enum AutoCmd {
    /// Build a map from its descriptor and print the images of the zero vertices.
    Build {
        #[arg(long)]
        map: String,
        #[arg(long)]
        vertex: Vec<String>,
    },
    Verify {
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value_t = VerifyModeArg::Exhaustive)]
        mode: VerifyModeArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Negate one coefficient first, as `L|R,slot,term` (a mutation test).
        #[arg(long)]
        flip: Option<String>,
    },
}

#[derive(Debug, Args)]
struct ProjectArgs {
    /// Ω′ file.
    #[arg(long)]
    sub: Option<PathBuf>,
    #[arg(long, conflicts_with = "sub")]
    sub_family: Option<String>,
    /// Start vertex in Γ(Ω, q); defaults to the zero left vertex.
    #[arg(long)]
    vertex: Option<String>,
}

#[derive(Debug, Subcommand)]
enum PathCmd {
    /// Walk from a start vertex; colors x₁, x₂, … start with the start's own color.
    Walk {
        #[arg(long)]
        colors: String,
        #[arg(long)]
        start: Option<String>,
    },
    /// Compare the closed forms with the walked entries from [0]_{x₁}.
    Check {
        #[arg(long, required_unless_present = "random")]
        colors: Option<String>,
        /// A random non-backtracking sequence of this length.
        #[arg(long, conflicts_with = "colors")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `R:i,j` or `L:i,j`; every in-range target when absent.
        #[arg(long)]
        target: Option<String>,
        /// σ parameters for `--target`, comma-separated.
        #[arg(long, requires = "target")]
        s: Option<String>,
    },
}

fn parse_kind(s: &str) -> Result<ClosureKind, String> {
    s.parse()
}

/// Output records in the selected format.
struct Report {
    format: Format,
    lines: Vec<String>,
}

type Fields = Vec<(&'static str, Value)>;

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    fn new(format: Format) -> Report {
        Report { format, lines: Vec::new() }
    }

    fn json(fields: Fields) -> String {
        let map: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Value::Object(map).to_string()
    }

    fn record(&mut self, fields: Fields) {
        let line = match self.format {
            Format::Tsv => fields.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect::<Vec<_>>().join(" "),
            Format::Jsonl => Report::json(fields),
        };
        self.lines.push(line);
    }

    fn row(&mut self, fields: Fields) {
        let line = match self.format {
            Format::Tsv => fields.iter().map(|(_, v)| plain(v)).collect::<Vec<_>>().join("\t"),
            Format::Jsonl => Report::json(fields),
        };
        self.lines.push(line);
    }
}

enum Status {
    Pass,
    Fail,
}

struct Context {
    common: Common,
}

fn family(name: &str) -> Result<OmegaSet, Error> {
    let lower = name.to_ascii_lowercase();
    let number = |rest: &str| rest.parse::<usize>().map_err(|_| Error::Usage(format!("unknown family {name:?}")));
    Ok(match lower.as_str() {
        "omega2" => omega2(),
        "omega3" => omega3(),
        "omega4" => omega4(),
        _ if lower.starts_with('u') => u_family(number(&lower[1..])?)?,
        _ if lower.starts_with('w') => w_family(number(&lower[1..])?)?,
        _ if lower.starts_with('x') => x_family(number(&lower[1..])?)?,
        _ => return Err(Error::Usage(format!("unknown family {name:?}"))),
    })
}

fn read_omega(path: Option<&PathBuf>, name: Option<&String>) -> Result<OmegaSet, Error> {
    match (path, name) {
        (Some(p), _) => Ok(OmegaSet::parse_text(&std::fs::read_to_string(p)?)?),
        (None, Some(n)) => family(n),
        (None, None) => Err(Error::Usage("give --omega <path> or --family <name>".into())),
    }
}

impl Context {
    fn omega(&self) -> Result<OmegaSet, Error> {
        read_omega(self.common.omega.as_ref(), self.common.family.as_ref())
    }

    fn field(&self) -> Result<Field, Error> {
        let text = self.common.field.as_deref().ok_or_else(|| Error::Usage("--field p^m is required".into()))?;
        Ok(text.parse()?)
    }

    fn graph(&self) -> Result<Graph, Error> {
        let omega = self.omega()?;
        Ok(Graph::new(omega, self.field()?))
    }

    fn cap(&self) -> u64 {
        self.common.cap_vertices
    }
}

fn vertex(g: &Graph, text: &str) -> Result<Vertex, Error> {
    let v: Vertex = text.parse()?;
    g.validate(&v)?;
    Ok(v)
}

fn elems(f: &Field, text: &str) -> Result<Vec<Elem>, Error> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let n: u32 = t.trim().parse().map_err(|_| Error::Usage(format!("bad field element {t:?}")))?;
            Ok(f.elem(n)?)
        })
        .collect()
}

fn usizes(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::Usage(format!("bad integer {t:?}"))))
        .collect()
}

fn parse_target(text: &str) -> Result<Target, Error> {
    let bad = || Error::Usage(format!("bad target {text:?}, expected R:i,j or L:i,j"));
    let (side, rest) = text.split_once(':').ok_or_else(bad)?;
    let nums = usizes(rest)?;
    let [i, j] = nums[..] else { return Err(bad()) };
    match side {
        "R" | "r" => Ok(Target::R { i, j }),
        "L" | "l" => Ok(Target::L { i, j }),
        _ => Err(bad()),
    }
}

fn target_text(t: Target) -> String {
    match t {
        Target::R { i, j } => format!("R:{i},{j}"),
        Target::L { i, j } => format!("L:{i},{j}"),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn omega_cmd(ctx: &Context, cmd: &OmegaCmd, out: &mut Report) -> Result<Status, Error> {
    let omega = ctx.omega()?;
    match cmd {
        OmegaCmd::Check => {
            out.record(vec![
                ("omega", json!("ok")),
                ("members", json!(omega.len())),
                ("max_len", json!(omega.max_len())),
                ("s_closed", json!(omega.is_s_closed())),
                ("h0_closed", json!(omega.is_h0_closed())),
                ("h1_closed", json!(omega.is_h1_closed())),
            ]);
        }
        OmegaCmd::Closure { kind } => {
            let set = crate::seqset::closure(&omega, *kind, None);
            let inside = set.iter().all(|s| omega.contains(s));
            for s in &set {
                out.row(vec![("seq", json!(s.to_string())), ("in_omega", json!(omega.contains(s)))]);
            }
            out.record(vec![("size", json!(set.len())), ("contained", json!(inside))]);
        }
    }
    Ok(Status::Pass)
}

fn graph_cmd(ctx: &Context, cmd: &GraphCmd, out: &mut Report, raw: &mut dyn Write) -> Result<Status, Error> {
    let g = ctx.graph()?;
    match cmd {
        GraphCmd::Stats => {
            let (exponent, classes) = bound_exponent(&g);
            let transitive = Justification::find(&g).map_or("none", |j| j.tag());
            out.record(vec![
                ("field", json!(g.field().to_string())),
                ("omega", json!(g.omega().len())),
                ("degree", json!(g.q())),
                ("vertices", json!(g.vertex_count().to_string())),
                ("edges", json!((g.side_size() * g.q() as u128).to_string())),
                ("hbar", json!(classes)),
                ("bound_exponent", json!(exponent)),
                ("transitivity", json!(transitive)),
            ]);
        }
        GraphCmd::Neighbors { vertex: text } => {
            let v = vertex(&g, text)?;
            for c in g.field().elements() {
                out.row(vec![("color", json!(c.value())), ("neighbor", json!(g.neighbor(&v, c).to_string()))]);
            }
        }
        GraphCmd::Export { what, component, out: path } => {
            let scope = match component {
                Some(text) => Scope::ComponentOf(vertex(&g, text)?),
                None => Scope::All,
            };
            let mut buf: Vec<u8> = Vec::new();
            let summary = match what {
                ExportKind::Edgelist => {
                    let n = export_edgelist(&g, &scope, ctx.cap(), &mut buf)?;
                    vec![("edges", json!(n))]
                }
                ExportKind::Biadjacency => {
                    let (rows, cols, nnz) = export_biadjacency(&g, &scope, ctx.cap(), &mut buf)?;
                    vec![("rows", json!(rows)), ("cols", json!(cols)), ("entries", json!(nnz))]
                }
            };
            match path {
                Some(p) => {
                    std::fs::write(p, &buf)?;
                    out.record(summary);
                }
                None => raw.write_all(&buf)?,
            }
        }
    }
    Ok(Status::Pass)
}

fn girth_cmd(ctx: &Context, cmd: &GirthCmd, out: &mut Report) -> Result<Status, Error> {
    let g = ctx.graph()?;
    match cmd {
        GirthCmd::Exact { mode } => {
            let found = Justification::find(&g);
            let mode = match (mode, found) {
                (GirthModeArg::AllRoots, _) | (GirthModeArg::Auto, None) => GirthMode::AllRoots,
                (_, Some(j)) => GirthMode::FromZero(j),
                (GirthModeArg::FromZero, None) => {
                    return Err(Error::Usage("no transitivity hypothesis holds; use --mode all-roots".into()))
                }
            };
            let limit = 2 * ctx.common.cap_depth + 2;
            let report = girth_exact(&g, mode, limit, ctx.cap())?;
            let tag = match report.mode {
                GirthMode::AllRoots => "all-roots".to_string(),
                GirthMode::FromZero(j) => format!("from-zero:{}", j.tag()),
            };
            match out.format {
                Format::Tsv => {
                    out.lines.push(report.to_string());
                    out.record(vec![("mode", json!(tag)), ("roots", json!(report.roots))]);
                }
                Format::Jsonl => out.lines.push(Report::json(vec![
                    ("girth", json!(report.exact())),
                    ("at_least", json!(limit)),
                    ("mode", json!(tag)),
                    ("roots", json!(report.roots)),
                    ("justification", json!(report.justification())),
                ])),
            }
        }
        GirthCmd::Bound => {
            let report = girth_certificates(&g);
            for c in &report.certificates {
                match out.format {
                    Format::Tsv => out.lines.push(c.to_string()),
                    Format::Jsonl => out.row(vec![
                        ("theorem", json!(c.theorem.to_string())),
                        ("bound", json!(c.bound)),
                        ("witness", json!(c.witness)),
                    ]),
                }
            }
            let best = report.best().map_or(json!("none"), |b| json!(b));
            out.record(vec![("best", best)]);
        }
    }
    Ok(Status::Pass)
}

type Evaluator<'a> = Box<dyn Fn(&Vertex) -> Result<Elem, InvError> + 'a>;

/// Every d001 and alt invariant whose indices lie in Ω, by name.
fn applicable_invariants(g: &Graph) -> Vec<(String, Evaluator<'_>)> {
    let zero = g.zero_vertex(Side::L, Elem::ZERO);
    let mut out: Vec<(String, Evaluator<'_>)> = Vec::new();
    let bases = std::iter::once(Index::Star).chain(g.omega().iter().cloned().map(Index::Seq));
    for alpha in bases {
        for bit in [0u8, 1] {
            if let Ok(v) = d001_value(g, &zero, &alpha, bit) {
                let a = alpha.clone();
                out.push((v.name, Box::new(move |v| Ok(d001_value(g, v, &a, bit)?.value))));
            }
        }
    }
    let mut k = 1;
    while alt_invariant(g, &zero, k).is_ok() && alt_invariant(g, &g.zero_vertex(Side::R, Elem::ZERO), k).is_ok() {
        out.push((format!("alt[{k}]"), Box::new(move |v| Ok(alt_invariant(g, v, k)?.value))));
        k += 1;
    }
    out
}

fn components_cmd(ctx: &Context, cmd: &ComponentsCmd, out: &mut Report) -> Result<Status, Error> {
    let g = ctx.graph()?;
    match cmd {
        ComponentsCmd::Count => {
            let labels = components(&g, ctx.cap())?;
            out.record(vec![
                ("components", json!(labels.count())),
                ("lower_bound", json!(crate::invariants::component_bound(&g).to_string())),
            ]);
            Ok(Status::Pass)
        }
        ComponentsCmd::Invariants { coset: None, .. } => {
            let labels = components(&g, ctx.cap())?;
            let evals = applicable_invariants(&g);
            let reps: Vec<Vec<Elem>> = labels
                .summaries
                .iter()
                .map(|s| evals.iter().map(|(_, f)| f(&s.representative)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let mut broken = 0u64;
            let codec = *labels.codec();
            for key in 0..codec.len() {
                let v = codec.decode(key);
                let id = labels.label(&v);
                for (n, (_, f)) in evals.iter().enumerate() {
                    if f(&v)? != reps[id][n] {
                        broken += 1;
                    }
                }
            }
            for (id, values) in reps.iter().enumerate() {
                for ((name, _), value) in evals.iter().zip(values) {
                    out.row(vec![("component", json!(id)), ("invariant", json!(name)), ("value", json!(value.value()))]);
                }
            }
            out.record(vec![("components", json!(labels.count())), ("invariants", json!(evals.len())), ("violations", json!(broken))]);
            Ok(if broken == 0 { Status::Pass } else { Status::Fail })
        }
        ComponentsCmd::Invariants { coset: Some(alpha), base } => {
            let alpha: BinSeq = alpha.parse()?;
            let sub = Graph::new(g.omega().without(&alpha)?, g.field().clone());
            let base = match base {
                Some(text) => vertex(&sub, text)?,
                None => sub.zero_vertex(Side::L, Elem::ZERO),
            };
            let r = coset_structure(&g, &alpha, &base, ctx.cap())?;
            out.record(vec![
                ("alpha", json!(r.alpha.to_string())),
                ("base", json!(r.base)),
                ("subgroup", json!(join(&r.subgroup.iter().map(|e| e.value()).collect::<Vec<_>>(), ","))),
                ("t", json!(r.t)),
                ("s", json!(r.s)),
                ("f_base", json!(r.f_base.value())),
            ]);
            for (v, gval) in &r.representatives {
                out.row(vec![("representative", json!(v.to_string())), ("g", json!(gval.value()))]);
            }
            if let Some(z) = &r.zero_check {
                out.record(vec![("zero_n", json!(z.n)), ("allowed", json!(join(&z.allowed, ","))), ("holds", json!(z.holds))]);
            }
            for f in &r.failures {
                out.record(vec![("failure", json!(f))]);
            }
            out.record(vec![("coset", json!(if r.passed() { "pass" } else { "fail" }))]);
            Ok(if r.passed() { Status::Pass } else { Status::Fail })
        }
    }
}

fn auto_cmd(ctx: &Context, cmd: &AutoCmd, out: &mut Report) -> Result<Status, Error> {
    let g = ctx.graph()?;
    match cmd {
        AutoCmd::Build { map, vertex: extra } => {
            let m = parse_descriptor(&g, map)?;
            out.record(vec![("map", json!(m.family().to_string())), ("stages", json!(m.stage_count()))]);
            let mut inputs = vec![g.zero_vertex(Side::L, Elem::ZERO), g.zero_vertex(Side::R, Elem::ZERO)];
            for text in extra {
                inputs.push(vertex(&g, text)?);
            }
            for v in &inputs {
                out.row(vec![("vertex", json!(v.to_string())), ("image", json!(m.apply(v).to_string()))]);
            }
            Ok(Status::Pass)
        }
        AutoCmd::Verify { map, mode, samples, seed, flip } => {
            let mut m = parse_descriptor(&g, map)?;
            if let Some(text) = flip {
                let bad = || Error::Usage(format!("bad flip {text:?}, expected L|R,slot,term"));
                let mut parts = text.splitn(2, ',');
                let side = match parts.next() {
                    Some("L") => Side::L,
                    Some("R") => Side::R,
                    _ => return Err(bad()),
                };
                let nums = usizes(parts.next().ok_or_else(bad)?)?;
                let [slot, term] = nums[..] else { return Err(bad()) };
                m = m.flip_term(side, slot, term).ok_or_else(|| Error::Usage(format!("map has no term {text}")))?;
            }
            let mode = match mode {
                VerifyModeArg::Exhaustive => VerifyMode::Exhaustive { cap: ctx.cap() },
                VerifyModeArg::Sample => VerifyMode::Sample { count: *samples, seed: *seed },
            };
            let r = verify(&g, &m, mode)?;
            let mut fields = vec![
                ("verify", json!(if r.passed() { "pass" } else { "fail" })),
                ("map", json!(r.map)),
                ("vertices", json!(r.vertices_checked)),
                ("edges", json!(r.edges_checked)),
                ("non_edges", json!(r.non_edges_checked)),
            ];
            if let Some(b) = r.bijective {
                fields.push(("bijective", json!(b)));
            }
            if let Some(c) = &r.counterexample {
                fields.push(("counterexample", json!(c.to_string())));
            }
            out.record(fields);
            Ok(if r.passed() { Status::Pass } else { Status::Fail })
        }
    }
}

fn project_cmd(ctx: &Context, args: &ProjectArgs, out: &mut Report) -> Result<Status, Error> {
    let g = ctx.graph()?;
    let sub_omega = match (&args.sub, &args.sub_family) {
        (None, None) => return Err(Error::Usage("give --sub <path> or --sub-family <name>".into())),
        (p, n) => read_omega(p.as_ref(), n.as_ref())?,
    };
    let sub = Graph::new(sub_omega, g.field().clone());
    let start = match &args.vertex {
        Some(text) => vertex(&g, text)?,
        None => g.zero_vertex(Side::L, Elem::ZERO),
    };
    let r = fiber_check(&g, &sub, &start, ctx.cap())?;
    let t = r.t().map_or(json!("none"), |t| json!(t));
    out.record(vec![
        ("component", json!(r.component)),
        ("image", json!(r.image)),
        ("image_is_component", json!(r.image_is_component)),
        ("fiber_min", json!(r.fiber_min)),
        ("fiber_max", json!(r.fiber_max)),
        ("t", t),
    ]);
    Ok(if r.t().is_some() { Status::Pass } else { Status::Fail })
}

fn path_cmd(ctx: &Context, cmd: &PathCmd, out: &mut Report) -> Result<Status, Error> {
    let g = ctx.graph()?;
    let f = g.field();
    match cmd {
        PathCmd::Walk { colors, start } => {
            let colors = ColorSeq::new(elems(f, colors)?)?;
            let start = match start {
                Some(text) => vertex(&g, text)?,
                None => g.zero_vertex(Side::L, colors.x(1)),
            };
            for (i, v) in walk(&g, &start, &colors)?.iter().enumerate() {
                out.row(vec![("position", json!(i + 1)), ("vertex", json!(v.to_string()))]);
            }
            Ok(Status::Pass)
        }
        PathCmd::Check { colors, random, seed, target, s } => {
            let colors = match (colors, random) {
                (Some(text), _) => ColorSeq::new(elems(f, text)?)?,
                (None, Some(len)) => ColorSeq::random(f, *len, &mut StdRng::seed_from_u64(*seed)),
                (None, None) => return Err(Error::Usage("give --colors or --random".into())),
            };
            if colors.is_empty() {
                return Err(Error::Usage("empty color sequence".into()));
            }
            let path = walk(&g, &g.zero_vertex(Side::L, colors.x(1)), &colors)?;
            let mut cases: Vec<(Target, Vec<usize>)> = Vec::new();
            match (target, s) {
                (Some(t), params) => {
                    cases.push((parse_target(t)?, params.as_deref().map(usizes).transpose()?.unwrap_or_default()))
                }
                (None, _) => {
                    let bound = g.omega().max_len() + 1;
                    for i in 1.. {
                        if 2 * i > colors.len() {
                            break;
                        }
                        for j in 1..=i {
                            let mut ts = vec![Target::R { i, j }];
                            if 2 * i < colors.len() {
                                ts.push(Target::L { i, j });
                            }
                            for t in ts {
                                for params in sigma_params(&g, t.order(), bound) {
                                    cases.push((t, params));
                                }
                            }
                        }
                    }
                }
            }
            let mut mismatches = 0;
            for (t, params) in &cases {
                let closed = closed_form(&g, &colors, *t, params)?;
                let walked = t.read(&g, &path, params)?;
                if closed != walked {
                    mismatches += 1;
                }
                out.row(vec![
                    ("target", json!(target_text(*t))),
                    ("s", json!(join(params, ","))),
                    ("index", json!(t.index(params).to_string())),
                    ("closed_form", json!(closed.value())),
                    ("walked", json!(walked.value())),
                    ("match", json!(closed == walked)),
                ]);
            }
            out.record(vec![("checked", json!(cases.len())), ("mismatches", json!(mismatches))]);
            Ok(if mismatches == 0 { Status::Pass } else { Status::Fail })
        }
    }
}

fn execute(cli: Cli, raw: &mut dyn Write) -> Result<(Status, Report), Error> {
    let mut out = Report::new(cli.common.format);
    let ctx = Context { common: cli.common };
    // every command validates Ω before doing anything else
    ctx.omega()?;
    let status = match &cli.command {
        Command::Omega(c) => omega_cmd(&ctx, c, &mut out)?,
        Command::Graph(c) => graph_cmd(&ctx, c, &mut out, raw)?,
        Command::Girth(c) => girth_cmd(&ctx, c, &mut out)?,
        Command::Components(c) => components_cmd(&ctx, c, &mut out)?,
        Command::Auto(c) => auto_cmd(&ctx, c, &mut out)?,
        Command::Project(a) => project_cmd(&ctx, a, &mut out)?,
        Command::Path(c) => path_cmd(&ctx, c, &mut out)?,
    };
    Ok((status, out))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.common.threads as usize).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let mut raw: Vec<u8> = Vec::new();
    match pool.install(|| execute(cli, &mut raw)) {
        Ok((status, report)) => {
            let _ = stdout.write_all(&raw);
            for line in &report.lines {
                let _ = writeln!(stdout, "{line}");
            }
            match status {
                Status::Pass => 0,
                Status::Fail => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// [`run_with`] on the process arguments and standard streams.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("omega-graphs").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn girth_and_components_lines() {
        let (code, out, _) = run_args(&["girth", "exact", "--family", "U3", "--field", "5^1", "--mode", "all-roots"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("girth=8"));
        assert!(out.contains("mode=all-roots"));
        let (code, out, _) = run_args(&["components", "count", "--family", "W4", "--field", "3^1"]);
        assert_eq!((code, out.as_str()), (0, "components=9 lower_bound=3\n"));
    }

    #[test]
    fn missing_eta_is_a_usage_error() {
        let dir = std::env::temp_dir().join(format!("omega-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let bad = dir.join("bad.txt");
        std::fs::write(&bad, "0\n1\n").unwrap();
        let (code, _, err) = run_args(&["omega", "check", "--omega", bad.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("η missing"), "{err}");
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn failed_verification_exits_one() {
        let (code, out, _) = run_args(&["auto", "verify", "--family", "U4", "--field", "3^1", "--map", "lambda:x=1,y=2"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = run_args(&[
            "auto", "verify", "--family", "U4", "--field", "3^1", "--map", "lambda:x=1,y=2", "--flip", "L,1,0",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("counterexample="));
        let (code, _, _) = run_args(&["auto", "verify", "--family", "U4", "--field", "3^1", "--map", "theta:x=1,alpha=11"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["components", "invariants", "--family", "U6", "--field", "3^1", "--format", "jsonl"];
        let first = run_args(&args);
        assert_eq!(first.0, 0, "{}", first.2);
        assert_eq!(first, run_args(&args));
    }

    #[test]
    fn path_check_and_coset_block() {
        let (code, out, err) = run_args(&["path", "check", "--family", "U6", "--field", "5^1", "--random", "9", "--seed", "3"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.contains("mismatches=0"));
        let dir = std::env::temp_dir().join(format!("omega-cli-c-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("o.txt");
        std::fs::write(&file, "e\n0\n00\n").unwrap();
        let (code, out, err) =
            run_args(&["components", "invariants", "--omega", file.to_str().unwrap(), "--field", "2^2", "--coset", "00"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.contains("coset=pass"));
    }
}
