use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relhyp_core::althyp::{althyp_witness, divider_from_orbit_edges};
use relhyp_core::divider::{
    comparison_constants, frink_metric, frink_sequence_from_divider, perspectivity_sigma, verify_comparison,
    verify_frink_lemma, Perspectivity,
};
use relhyp_core::fineness::{fineness_on_balls, fineness_report};
use relhyp_core::floyd::{boundary_clusters, floyd_rows, floyd_weights, FloydConfig};
use relhyp_core::io;
use relhyp_core::karlsson::{generalized_karlsson_search, karlsson_decay_scan, KarlssonStatus};
use relhyp_core::sample::random_frink_sequence;
use relhyp_core::thin::{circuit_sweep, four_point_delta, thin_triangle_delta};
use relhyp_core::visibility::{visibility_by_enumeration, visibility_set};
use relhyp_core::{CayleyBall, Edge, Element, Error, Graph, GroupModel};

#[derive(Parser)]
#[command(name = "relhyp", version, about = "Floyd metrics, dividers and visibility on finite Cayley-graph balls")]
struct Cli {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Group spec such as free:2, zn:2, cyclic:5, product:cyclic:2,cyclic:3, surface:2.
    #[arg(long, conflicts_with = "graph")]
    group: Option<String>,
    /// Ball radius.
    #[arg(long, default_value_t = 4)]
    radius: u32,
    /// Graph or ball document instead of a group.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Cayley ball and emit it as a document.
    Ball {
        #[command(flatten)]
        src: Source,
    },
    /// Floyd distances between pairs of vertices.
    Floyd {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        lambda: f64,
        /// Basepoint vertex.
        #[arg(long, default_value = "@0")]
        basepoint: String,
        /// Pairs `x,y`; without any, distances from the basepoint to the inner ball.
        #[arg(long)]
        pairs: Vec<String>,
    },
    /// Single-linkage clusters of the outer sphere under the Floyd metric.
    Boundary {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        lambda: f64,
        /// One or more thresholds.
        #[arg(long, required = true)]
        eps: Vec<f64>,
    },
    /// Frink metric from the visibility divider, or the Frink lemma on random sequences.
    Frink {
        #[command(flatten)]
        src: Source,
        /// Check this many random sequences instead of a divider.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 15)]
        vertices: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Window radius of the divider; defaults to the ball radius.
        #[arg(long)]
        window: Option<u32>,
        /// Domain radius; defaults to the inner radius.
        #[arg(long)]
        domain: Option<u32>,
        /// Override λ from the comparison constants.
        #[arg(long)]
        lambda: Option<f64>,
        /// Override C from the comparison constants.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Visibility entourage of an edge.
    Visibility {
        #[command(flatten)]
        src: Source,
        /// Edge `x,y`; defaults to the first edge.
        #[arg(long)]
        edge: Option<String>,
        /// Compare with geodesic enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Search an alt-hyperbolicity witness for an edge.
    Althyp {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 3)]
        max_radius: usize,
        #[arg(long)]
        edge: Option<String>,
    },
    /// Count arcs of bounded length between two vertices.
    Fine {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Thin-triangle and four-point estimates, optionally the circuit sweep.
    Delta {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        /// Also build and verify circuits on this many sampled triangles.
        #[arg(long)]
        circuits: Option<usize>,
    },
    /// Largest Floyd length of inner geodesics by distance to the basepoint.
    Karlsson {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        lambda: f64,
    },
    /// Smallest ball whose edges catch every geodesic with far-apart ends.
    Gkarlsson {
        #[command(flatten)]
        src: Source,
        /// Elements of S, comma separated; `ball1` for the identity and generators.
        #[arg(long, default_value = "1")]
        s: String,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        domain: Option<u32>,
    },
    /// Export as a JSON document or DOT.
    Export {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Label DOT edges with Floyd weights for this λ.
        #[arg(long)]
        lambda: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    /// Property check failed; the witness is already in the output.
    Check,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

enum Loaded {
    Ball(Box<CayleyBall>),
    Graph(Graph),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::Ball(b) => b.graph(),
            Loaded::Graph(g) => g,
        }
    }

    fn vertex(&self, s: &str) -> Result<usize, Error> {
        match self {
            Loaded::Ball(b) => b.vertex(s),
            Loaded::Graph(g) => {
                let s = s.trim();
                if let Some(v) = g.find_label(s) {
                    return Ok(v);
                }
                let v: usize = s
                    .trim_start_matches('@')
                    .parse()
                    .map_err(|_| Error::input(format!("unknown vertex '{s}'")))?;
                g.check_vertex(v)?;
                Ok(v)
            }
        }
    }

    fn edge(&self, s: Option<&str>) -> Result<Edge, Error> {
        match s {
            None => self
                .graph()
                .edges()
                .first()
                .copied()
                .ok_or_else(|| Error::input("the graph has no edges")),
            Some(s) => {
                let (x, y) = pair(s)?;
                let e = Edge::new(self.vertex(x)?, self.vertex(y)?);
                self.graph().check_edge(e)?;
                Ok(e)
            }
        }
    }

    fn ball(&self) -> Result<&CayleyBall, Error> {
        match self {
            Loaded::Ball(b) => Ok(b),
            Loaded::Graph(_) => Err(Error::input("this command needs --group")),
        }
    }
}

fn pair(s: &str) -> Result<(&str, &str), Error> {
    s.split_once(',')
        .ok_or_else(|| Error::input(format!("expected a pair x,y, got '{s}'")))
}

fn load(src: &Source) -> Result<Loaded, Error> {
    match (&src.group, &src.graph) {
        (Some(spec), _) => {
            let model: GroupModel = spec.parse()?;
            Ok(Loaded::Ball(Box::new(CayleyBall::build(&model, src.radius)?)))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            Ok(Loaded::Graph(io::graph_from_json(&text)?))
        }
        (None, None) => Err(Error::input("give --group or --graph")),
    }
}

fn basepoint_edges(ball: &CayleyBall) -> Vec<Edge> {
    let b = ball.basepoint();
    ball.graph().edges().iter().copied().filter(|e| e.has(b)).collect()
}

fn divider_for(ball: &CayleyBall, window: Option<u32>, domain: Option<u32>) -> Result<relhyp_core::divider::Divider, Error> {
    let window = window.unwrap_or(ball.radius());
    let domain = domain.unwrap_or(ball.inner_radius());
    divider_from_orbit_edges(ball, &basepoint_edges(ball), 2, domain, window)
}

fn parse_set(ball: &CayleyBall, s: &str) -> Result<Vec<Element>, Error> {
    let model = ball.model();
    if s.trim() == "ball1" {
        let mut out = vec![model.identity()];
        out.extend(model.generators());
        return Ok(out);
    }
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| model.parse(t.trim())).collect()
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    match &cli.command {
        Command::Ball { src } => {
            let l = load(src)?;
            out.push_str(&io::ball_to_json(l.ball()?));
            out.push('\n');
        }
        Command::Floyd {
            src,
            lambda,
            basepoint,
            pairs,
        } => {
            let l = load(src)?;
            let cfg = FloydConfig::new(*lambda, l.vertex(basepoint)?)?;
            let g = l.graph();
            let mut list = Vec::new();
            if pairs.is_empty() {
                let targets: Vec<usize> = match &l {
                    Loaded::Ball(b) => b.within(b.inner_radius()),
                    Loaded::Graph(g) => (0..g.vertex_count()).collect(),
                };
                list.extend(targets.into_iter().map(|y| (cfg.basepoint, y)));
            } else {
                for p in pairs {
                    let (x, y) = pair(p)?;
                    list.push((l.vertex(x)?, l.vertex(y)?));
                }
            }
            let mut sources: Vec<usize> = list.iter().map(|p| p.0).collect();
            sources.sort_unstable();
            sources.dedup();
            let rows = floyd_rows(g, &cfg, &sources)?;
            out.push_str("x,y,floyd\n");
            for (x, y) in list {
                let i = sources.binary_search(&x).expect("listed source");
                let _ = writeln!(out, "{},{},{}", g.label(x), g.label(y), rows[i][y]);
            }
        }
        Command::Boundary { src, lambda, eps } => {
            let l = load(src)?;
            let ball = l.ball()?;
            let cfg = FloydConfig::new(*lambda, ball.basepoint())?;
            out.push_str("epsilon,sphere,clusters\n");
            for &e in eps {
                let c = boundary_clusters(ball, &cfg, e)?;
                let _ = writeln!(out, "{e},{},{}", c.sphere.len(), c.count);
            }
        }
        Command::Frink {
            src,
            random,
            vertices,
            depth,
            window,
            domain,
            lambda,
            c,
        } => {
            if let Some(count) = random {
                return frink_random(cli.seed, *count, *vertices, *depth, out);
            }
            let l = load(src)?;
            let ball = l.ball()?;
            let div = divider_for(ball, *window, *domain)?;
            let seq = frink_sequence_from_divider(ball, &div, *depth)?;
            let metric = frink_metric(&seq);
            let lemma = verify_frink_lemma(&seq, &metric)?;
            let sigma = match perspectivity_sigma(ball, &div.u) {
                Perspectivity::Sigma(s) => s,
                Perspectivity::NotPerspective(e) => {
                    return Err(Error::Check(format!("u is not perspective at edge ({},{})", e.0, e.1)).into())
                }
            };
            let (l0, c0) = comparison_constants(div.rho, sigma)?;
            let (lam, cc) = (lambda.unwrap_or(l0), c.unwrap_or(c0));
            let cmp = verify_comparison(ball, &metric, lam, cc)?;
            out.push_str("quantity,value\n");
            let _ = writeln!(out, "rho,{}", div.rho);
            let _ = writeln!(out, "sigma,{sigma}");
            let _ = writeln!(out, "lambda,{lam}");
            let _ = writeln!(out, "C,{cc}");
            let _ = writeln!(out, "frink_lemma,{}", if lemma.passed() { "pass" } else { "fail" });
            let _ = writeln!(out, "pairs,{}", cmp.pairs);
            let _ = writeln!(out, "max_ratio,{}", cmp.max_ratio);
            let _ = writeln!(out, "violations,{}", cmp.violations);
            if let Some((x, y, a, b)) = cmp.first_violation {
                let _ = writeln!(out, "witness,{} {} {a} {b}", ball.label(x), ball.label(y));
            }
            if let Some((k, x, y)) = lemma.lemma_violation.or(lemma.weight_violation) {
                let _ = writeln!(out, "lemma_witness,{k} {} {}", ball.label(x), ball.label(y));
            }
            if !lemma.passed() || !cmp.passed() {
                return Err(Failure::Check);
            }
        }
        Command::Visibility { src, edge, check } => {
            let l = load(src)?;
            let g = l.graph();
            let e = l.edge(edge.as_deref())?;
            let u = visibility_set(g, e)?;
            if cli.out.is_some() {
                out.push_str(&io::entourage_to_json(&u));
                out.push('\n');
            } else {
                out.push_str("x,y\n");
                for (x, y) in u.pairs() {
                    let _ = writeln!(out, "{},{}", g.label(x), g.label(y));
                }
            }
            if *check {
                match visibility_by_enumeration(g, e, 100_000)? {
                    Some(v) if v == u => {}
                    Some(v) => {
                        let (x, y) = u
                            .not_subset_witness(&v)?
                            .or(v.not_subset_witness(&u)?)
                            .expect("the sets differ");
                        eprintln!("mismatch at pair ({},{})", g.label(x), g.label(y));
                        return Err(Failure::Check);
                    }
                    None => return Err(Error::input("geodesic enumeration exceeded its cap").into()),
                }
            }
        }
        Command::Althyp { src, max_radius, edge } => {
            let l = load(src)?;
            let g = l.graph();
            let e = l.edge(edge.as_deref())?;
            let w = althyp_witness(g, e, *max_radius)?;
            out.push_str("edge,status,radius,witness_edges,triangle_radius,agree\n");
            let _ = writeln!(
                out,
                "{} {},{},{},{},{},{}",
                g.label(e.0),
                g.label(e.1),
                if w.is_certified() { "certified" } else { "failed_at_radius" },
                w.radius,
                w.witness.len(),
                w.triangle_radius.map_or("none".into(), |r| r.to_string()),
                w.formulations_agree()
            );
            if let Some((x, z, y)) = w.violation {
                let _ = writeln!(out, "violation,{},{},{}", g.label(x), g.label(z), g.label(y));
            }
            if !w.is_certified() {
                return Err(Failure::Check);
            }
        }
        Command::Fine {
            src,
            x,
            y,
            length,
            cap,
        } => {
            let l = load(src)?;
            out.push_str("radius,count,capped,stable\n");
            match &l {
                Loaded::Ball(b) => {
                    let (gx, gy) = (b.element(b.vertex(x)?).clone(), b.element(b.vertex(y)?).clone());
                    let f = fineness_on_balls(b.model(), b.radius(), &gx, &gy, *length, *cap)?;
                    for (r, rep) in [(f.radius, f.at_radius), (f.radius + 1, f.at_next_radius)] {
                        let _ = writeln!(out, "{r},{},{},{}", rep.count, rep.capped, f.stable());
                    }
                }
                Loaded::Graph(g) => {
                    let rep = fineness_report(g, l.vertex(x)?, l.vertex(y)?, *length, *cap)?;
                    let _ = writeln!(out, ",{},{},", rep.count, rep.capped);
                }
            }
        }
        Command::Delta { src, samples, circuits } => {
            let l = load(src)?;
            let g = l.graph();
            let vertices: Vec<usize> = match &l {
                Loaded::Ball(b) => b.within(b.inner_radius()),
                Loaded::Graph(g) => (0..g.vertex_count()).collect(),
            };
            match circuits {
                None => {
                    let thin = thin_triangle_delta(g, &vertices, *samples, cli.seed)?;
                    let four = four_point_delta(g, &vertices, *samples, cli.seed)?;
                    out.push_str("estimator,delta,samples,exhaustive\n");
                    let _ = writeln!(out, "thin_triangle,{},{},{}", thin.delta, thin.samples, thin.exhaustive);
                    let _ = writeln!(out, "four_point,{},{},{}", four.delta, four.samples, four.exhaustive);
                }
                Some(count) => {
                    let all: Vec<usize> = (0..g.vertex_count()).collect();
                    let rows = circuit_sweep(g, &all, *count, cli.seed)?;
                    out.push_str("a,b,c,edge,delta,length,bound,case,loop_erased,verified\n");
                    let mut failed = false;
                    for r in rows {
                        let [a, b, c] = r.corners;
                        let verdict = match &r.verified {
                            Ok(()) => "ok".to_string(),
                            Err(m) => {
                                failed = true;
                                m.replace(',', ";")
                            }
                        };
                        let _ = writeln!(
                            out,
                            "{},{},{},{} {},{},{},{},{:?},{},{}",
                            g.label(a),
                            g.label(b),
                            g.label(c),
                            g.label(r.edge.0),
                            g.label(r.edge.1),
                            r.delta,
                            r.length,
                            r.bound,
                            r.case,
                            r.loop_erased,
                            verdict
                        );
                    }
                    if failed {
                        return Err(Failure::Check);
                    }
                }
            }
        }
        Command::Karlsson { src, lambda } => {
            let l = load(src)?;
            let t = karlsson_decay_scan(l.ball()?, *lambda)?;
            out.push_str("h,max_floyd_length,geodesic_count\n");
            for r in &t.rows {
                let _ = writeln!(out, "{},{},{}", r.h, r.max_floyd_length, r.geodesic_count);
            }
            if !t.exhaustive {
                eprintln!("note: sampled (some pairs exceed the geodesic cap)");
            }
        }
        Command::Gkarlsson { src, s, window, domain } => {
            let l = load(src)?;
            let ball = l.ball()?;
            let div = divider_for(ball, *window, *domain)?;
            let set = parse_set(ball, s)?;
            let rep = generalized_karlsson_search(ball, &div, &set)?;
            out.push_str("r,checked,status\n");
            match &rep.status {
                KarlssonStatus::Certified => {
                    let _ = writeln!(out, "{},{},certified", rep.r, rep.checked);
                }
                KarlssonStatus::Failed { geodesic } => {
                    let _ = writeln!(out, "{},{},failed", rep.r, rep.checked);
                    let path: Vec<String> = geodesic.iter().map(|&v| ball.label(v)).collect();
                    let _ = writeln!(out, "counterexample,{}", path.join(" "));
                    return Err(Failure::Check);
                }
            }
        }
        Command::Export { src, format, lambda } => {
            let l = load(src)?;
            match format {
                Format::Json => out.push_str(&match &l {
                    Loaded::Ball(b) => io::ball_to_json(b),
                    Loaded::Graph(g) => io::graph_to_json(g),
                }),
                Format::Dot => {
                    let w = match lambda {
                        Some(lam) => {
                            let base = match &l {
                                Loaded::Ball(b) => b.basepoint(),
                                Loaded::Graph(_) => 0,
                            };
                            Some(floyd_weights(l.graph(), &FloydConfig::new(*lam, base)?)?)
                        }
                        None => None,
                    };
                    out.push_str(&io::to_dot(l.graph(), w.as_ref()));
                }
            }
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
    }
    Ok(())
}

fn frink_random(seed: u64, count: usize, vertices: usize, depth: usize, out: &mut String) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.push_str("trial,vertices,depth,passed\n");
    let mut failed = false;
    for t in 0..count {
        let seq = random_frink_sequence(&mut rng, vertices, depth);
        let rep = verify_frink_lemma(&seq, &frink_metric(&seq))?;
        failed |= !rep.passed();
        let _ = writeln!(out, "{t},{vertices},{depth},{}", rep.passed());
    }
    if failed {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            println!("error: kind=input reason=cannot set threads: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{out}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        println!("error: kind=input reason={msg}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            let text = e.to_string().replace('\n', " ");
            let prefix = format!("{}: ", e.kind());
            let reason = text.strip_prefix(&prefix).unwrap_or(&text);
            println!("error: kind={} reason={reason}", e.kind());
            if e.kind() == "check" {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
