//! The `cluster` command line. [`run`] does all the work and returns the
//! exit code and both output streams, so tests can drive it in-process.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cluster_core::quiver::{dynkin_type, parse_quiver, to_dot};
use cluster_core::reptheory::{
    cc_value, path_order, verify_cc_bijection, CcObject, Representation, RepresentationJson,
};
use cluster_core::seed::{
    classify, exchange_graph, mutation_class, positive_roots, verify_root_bijection, ClassLimits, SeedJson, Verdict,
    DEFAULT_MAX_SEEDS,
};
use cluster_core::{DynkinType, Error, Quiver, Seed};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

pub const DEFAULT_MAX_QUIVERS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "cluster", version, about = "Exact computations with quivers, seeds and cluster variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver JSON file, or the JSON itself when it starts with `{`.
    #[arg(long)]
    quiver: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a quiver's initial seed (or a given seed) along a sequence.
    Mutate {
        #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
        quiver: Option<String>,
        /// Seed JSON file (or inline JSON) instead of the initial seed of `--quiver`.
        #[arg(long)]
        seed: Option<String>,
        /// 1-based vertices, e.g. `5,3,1,6`.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        /// Print only the new variable of every step.
        #[arg(long)]
        show_new: bool,
        #[arg(long)]
        json: bool,
        /// Write the final quiver as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Exchange graph of the initial seed.
    Explore {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        limit: usize,
        /// Print `seeds=<n> variables=<m>` only.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Mutation class up to isomorphism.
    Class {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = DEFAULT_MAX_QUIVERS)]
        limit: usize,
        /// Print `size=.. double_arrows=.. max_mult=..` only.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Finite or infinite cluster type.
    Classify {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = DEFAULT_MAX_QUIVERS)]
        limit: usize,
        /// Do not stop at the first arrow of multiplicity >= 2.
        #[arg(long)]
        no_early_exit: bool,
        #[arg(long)]
        json: bool,
    },
    /// All cluster variables, one per line.
    Variables {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Positive roots of a Dynkin type, or the denominator/root check for a quiver.
    Roots {
        #[arg(long, conflicts_with = "dynkin", required_unless_present = "dynkin")]
        quiver: Option<String>,
        /// A Dynkin type such as `E8`.
        #[arg(long = "type")]
        dynkin: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Caldero-Chapoton value of a representation or a shifted projective.
    Cc {
        #[arg(long)]
        quiver: Option<String>,
        /// Representation JSON file (or inline JSON).
        #[arg(long)]
        rep: Option<String>,
        /// 1-based vertex `i` of the shifted projective.
        #[arg(long)]
        shifted: Option<usize>,
        /// 1-based interval `i,j` along the path of a type-A quiver.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        interval: Option<Vec<usize>>,
        /// Every interval module and shifted projective of a type-A quiver.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Checks the exchange relation on every edge, the root bijection for
    /// Dynkin quivers and the CC bijection for type A.
    Verify {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit code. Domain errors carry the core error.
enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

#[derive(Default)]
struct Out {
    text: String,
    truncated: bool,
    failed: bool,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn json(&mut self, v: &serde_json::Value) {
        self.line(serde_json::to_string_pretty(v).expect("values serialize"));
    }
}

/// Runs one invocation. `args[0]` is the program name. Reads
/// `CLUSTER_THREADS` to size the worker pool.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let threads = std::env::var("CLUSTER_THREADS").ok().and_then(|v| v.parse().ok());
    run_with_threads(args, threads)
}

/// As [`run`], with an explicit worker count (`None` = rayon's default).
pub fn run_with_threads<I, T>(args: I, threads: Option<usize>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.filter(|&n| n > 0) {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Output { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut out = Out::default();
    let result = pool.install(|| execute(cli.command, &mut out));
    match result {
        Ok(()) => {
            let code = if out.failed {
                EXIT_DOMAIN
            } else if out.truncated {
                EXIT_TRUNCATED
            } else {
                EXIT_OK
            };
            let stderr = if out.truncated { "warning: limit reached, result truncated\n".to_string() } else { String::new() };
            Output { code, stdout: out.text, stderr }
        }
        Err(Failure::Domain(e)) => {
            Output { code: EXIT_DOMAIN, stdout: out.text, stderr: format!("error: {}: {e}\n", e.name()) }
        }
        Err(Failure::Usage(msg)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Io(msg)) => Output { code: EXIT_DOMAIN, stdout: out.text, stderr: format!("error: {msg}\n") },
    }
}

fn read_source(arg: &str) -> Res<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Io(format!("cannot read {arg}: {e}")))
}

fn load_quiver(arg: &str) -> Res<Quiver> {
    Ok(parse_quiver(&read_source(arg)?)?)
}

fn load_seed(arg: &str) -> Res<Seed> {
    let j: SeedJson = serde_json::from_str(&read_source(arg)?).map_err(|e| Error::Json(e.to_string()))?;
    Ok(Seed::try_from(&j)?)
}

fn write_dot(path: &Path, dot: &str) -> Res<()> {
    std::fs::write(path, dot).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn zero_based(vertices: &[usize], n: usize) -> Res<Vec<usize>> {
    vertices
        .iter()
        .map(|&v| {
            if v == 0 || v > n {
                Err(Failure::Domain(Error::VertexOutOfRange { vertex: v, n }))
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

fn execute(cmd: Command, out: &mut Out) -> Res<()> {
    match cmd {
        Command::Mutate { quiver, seed, at, show_new, json, dot } => {
            let mut s = match (quiver, seed) {
                (_, Some(seed)) => load_seed(&seed)?,
                (Some(q), None) => Seed::initial(&load_quiver(&q)?),
                (None, None) => return Err(Failure::Usage("one of --quiver or --seed is required".into())),
            };
            let ks = zero_based(&at, s.n())?;
            let mut new = Vec::new();
            for &k in &ks {
                s = s.mutate(k)?;
                new.push((k + 1, s.cluster()[k].clone()));
            }
            if let Some(path) = dot {
                write_dot(&path, &to_dot(s.quiver()))?;
            }
            if json {
                let j = SeedJson::from(&s);
                let steps: Vec<serde_json::Value> =
                    new.iter().map(|(k, v)| serde_json::json!({ "at": k, "value": v.to_string() })).collect();
                out.json(&serde_json::json!({ "quiver": j.quiver, "cluster": j.cluster, "new": steps }));
            } else if show_new {
                for (k, v) in &new {
                    out.line(format!("{k}: {}", v.to_fraction_string()));
                }
            } else {
                out.line(cluster_core::quiver::serialize_quiver(s.quiver()));
                for (i, v) in s.cluster().iter().enumerate() {
                    out.line(format!("{}: {}", i + 1, v.to_fraction_string()));
                }
            }
        }
        Command::Explore { q, limit, count, json, dot } => {
            let g = exchange_graph(&load_quiver(&q.quiver)?, limit)?;
            out.truncated = g.truncated();
            if let Some(path) = dot {
                write_dot(&path, &g.to_dot())?;
            }
            let nvars = g.cluster_variables().len();
            if json {
                out.json(&g.to_json(true));
            } else if count {
                out.line(format!("seeds={} variables={nvars}", g.vertex_count()));
            } else {
                out.line(format!("seeds={} edges={} variables={nvars}", g.vertex_count(), g.edge_count()));
            }
        }
        Command::Class { q, limit, stats, json, dot } => {
            let c = mutation_class(&load_quiver(&q.quiver)?, limit, json || dot.is_some())?;
            out.truncated = c.truncated();
            if let Some(path) = dot {
                write_dot(&path, &c.to_dot())?;
            }
            let s = c.stats();
            if json {
                out.json(&c.to_json());
            } else {
                out.line(format!("size={} double_arrows={} max_mult={}", s.size, s.double_arrows, s.max_multiplicity));
                if !stats {
                    for m in c.members() {
                        out.line(cluster_core::quiver::serialize_quiver(m));
                    }
                }
            }
        }
        Command::Classify { q, limit, no_early_exit, json } => {
            let c = classify(&load_quiver(&q.quiver)?, ClassLimits { max_quivers: limit, early_exit: !no_early_exit })?;
            out.truncated = c.verdict == Verdict::DepthExhausted;
            if json {
                out.json(&c.to_json());
            } else {
                out.line(c.summary());
            }
        }
        Command::Variables { q, limit, json } => {
            let g = exchange_graph(&load_quiver(&q.quiver)?, limit)?;
            out.truncated = g.truncated();
            let vars = g.cluster_variables();
            if json {
                let v: Vec<serde_json::Value> = vars
                    .iter()
                    .map(|v| serde_json::json!({ "text": v.to_string(), "fraction": v.to_fraction_string() }))
                    .collect();
                out.json(&serde_json::json!({ "count": vars.len(), "truncated": g.truncated(), "variables": v }));
            } else {
                for v in &vars {
                    out.line(v.to_fraction_string());
                }
            }
        }
        Command::Roots { quiver, dynkin, limit, json } => match (quiver, dynkin) {
            (_, Some(t)) => {
                let t: DynkinType = t.parse()?;
                let roots = positive_roots(t);
                if json {
                    out.json(&serde_json::json!({ "type": t.to_string(), "count": roots.len(), "roots": roots }));
                } else {
                    out.line(format!("type={t} positive_roots={}", roots.len()));
                    for r in &roots {
                        out.line(r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
                    }
                }
            }
            (Some(q), None) => {
                let r = verify_root_bijection(&load_quiver(&q)?, limit)?;
                out.failed = !r.passed();
                if json {
                    out.json(&serde_json::to_value(&r).expect("report serializes"));
                } else {
                    out.line(format!(
                        "type={} variables={} positive_roots={} bijection={}",
                        r.dynkin_type, r.variables, r.positive_roots, r.passed()
                    ));
                }
            }
            (None, None) => return Err(Failure::Usage("one of --quiver or --type is required".into())),
        },
        Command::Cc { quiver, rep, shifted, interval, all, json } => cc_command(out, quiver, rep, shifted, interval, all, json)?,
        Command::Verify { q, limit, json } => {
            let q = load_quiver(&q.quiver)?;
            let g = exchange_graph(&q, limit)?;
            out.truncated = g.truncated();
            let edges = g.verify_exchange_edges();
            let mut report = serde_json::Map::new();
            let mut lines = vec![format!("exchange_relation={} edges={}", ok(edges.passed()), edges.checked)];
            report.insert("exchange_relation".into(), serde_json::to_value(&edges).expect("serializes"));
            out.failed |= !edges.passed();
            if dynkin_type(&q).is_some() && !g.truncated() {
                let r = verify_root_bijection(&q, limit)?;
                lines.push(format!("root_bijection={} type={}", ok(r.passed()), r.dynkin_type));
                out.failed |= !r.passed();
                report.insert("root_bijection".into(), serde_json::to_value(&r).expect("serializes"));
            }
            if path_order(&q).is_ok() {
                let r = verify_cc_bijection(&q)?;
                lines.push(format!(
                    "cc_bijection={} objects={} tilting_subsets={} seeds={}",
                    ok(r.passed()),
                    r.values.len(),
                    r.tilting_subsets,
                    r.seeds
                ));
                out.failed |= !r.passed();
                report.insert("cc_bijection".into(), serde_json::to_value(&r).expect("serializes"));
            }
            if json {
                out.json(&serde_json::Value::Object(report));
            } else {
                for l in lines {
                    out.line(l);
                }
            }
        }
    }
    Ok(())
}

fn ok(passed: bool) -> &'static str {
    if passed {
        "ok"
    } else {
        "FAILED"
    }
}

fn cc_command(
    out: &mut Out,
    quiver: Option<String>,
    rep: Option<String>,
    shifted: Option<usize>,
    interval: Option<Vec<usize>>,
    all: bool,
    json: bool,
) -> Res<()> {
    if let Some(rep) = rep {
        let j: RepresentationJson = serde_json::from_str(&read_source(&rep)?).map_err(|e| Error::Json(e.to_string()))?;
        let v = Representation::try_from(&j)?;
        let q = v.quiver().clone();
        return emit_cc(out, &q, &[CcObject::Module(v)], json);
    }
    let Some(quiver) = quiver else {
        return Err(Failure::Usage("cc needs --rep, or --quiver with --shifted, --interval or --all".into()));
    };
    let q = load_quiver(&quiver)?;
    let objects = match (shifted, interval, all) {
        (Some(i), None, false) => vec![CcObject::ShiftedProjective(zero_based(&[i], q.n())?[0])],
        (None, Some(iv), false) => {
            let [i, j] = iv[..] else {
                return Err(Failure::Usage("--interval takes two vertices, e.g. 1,3".into()));
            };
            if i == 0 || j == 0 {
                return Err(Failure::Domain(Error::BadInterval(i, j)));
            }
            vec![CcObject::Module(Representation::interval(&q, i - 1, j - 1)?)]
        }
        (None, None, true) => cluster_core::reptheory::type_a_objects(&q)?,
        _ => return Err(Failure::Usage("give exactly one of --shifted, --interval, --all".into())),
    };
    emit_cc(out, &q, &objects, json)
}

fn emit_cc(out: &mut Out, q: &Quiver, objects: &[CcObject], json: bool) -> Res<()> {
    let values = objects.iter().map(|x| cc_value(q, x)).collect::<Result<Vec<_>, _>>()?;
    if json {
        let items: Vec<serde_json::Value> = objects
            .iter()
            .zip(&values)
            .map(|(x, v)| {
                serde_json::json!({ "object": x.label(), "text": v.to_string(), "fraction": v.to_fraction_string() })
            })
            .collect();
        out.json(&serde_json::json!({ "values": items }));
    } else if objects.len() == 1 {
        out.line(values[0].to_fraction_string());
    } else {
        for (x, v) in objects.iter().zip(&values) {
            out.line(format!("{} {}", x.label(), v.to_fraction_string()));
        }
    }
    Ok(())
}
