use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mixgraph::algebra::{self, cayley_mixed, cayley_search, lift, parse_group, voltage_search, VoltageBaseGraph};
use mixgraph::bounds::BoundReport;
use mixgraph::codec::{encode_digraph6, read_graph, write_text};
use mixgraph::families::{self, LabeledMixedGraph};
use mixgraph::search::{self, SearchError, SearchOutcome};
use mixgraph::spectra::{char_poly, classify};
use mixgraph::verify::{verify, SUITES};
use mixgraph::MixedGraph;

#[derive(Parser)]
#[command(name = "mixgraph", version, about = "Build, search and classify (1,1,k)-mixed graphs")]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Leave out timing lines so output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "E")]
    E,
    #[value(name = "F")]
    F,
    /// F(n) on its numeric vertex set.
    #[value(name = "Fnum")]
    FNumeric,
    #[value(name = "Fstar")]
    Fstar,
    #[value(name = "FstarAlt")]
    FstarAlt,
    #[value(name = "Fprime")]
    Fprime,
    #[value(name = "G")]
    G,
    #[value(name = "Gplus")]
    Gplus,
    /// Line mixed graph over the 2-colored triangle.
    #[value(name = "H-K3")]
    HK3,
    /// De Bruijn digraph B(d, n), digons read as edges.
    #[value(name = "debruijn")]
    DeBruijn,
    /// Kautz digraph K(d, n), digons read as edges.
    #[value(name = "kautz")]
    Kautz,
}

/// Vertex cap for the De Bruijn and Kautz constructions.
const MAX_DIGRAPH_ORDER: usize = 1 << 16;

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Digraph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    AlmostMoore,
    Order16,
    Order14,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Moore bound and best known bounds for diameter k.
    Bound {
        #[arg(long)]
        k: u32,
    },
    /// Build a member of one of the infinite families.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Degree for debruijn and kautz.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also print vertex labels as comments (text format only).
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diameter of a graph file (text or digraph6).
    Diameter {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exact characteristic polynomial and spectral class.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive search for mixed graphs of given order and diameter.
    Search {
        #[arg(long, value_enum, default_value = "generic")]
        mode: Mode,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        /// Fixed arcs such as "(0,2),(1,5),(5,7)".
        #[arg(long)]
        seed_arcs: Option<String>,
        /// Stop after this many complete candidates.
        #[arg(long)]
        budget: Option<u64>,
        /// Directory for survivors.d6, one digraph6 string per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between the text format and digraph6.
    Codec {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
        /// Prefix digraph6 output with '&'.
        #[arg(long)]
        amp: bool,
    },
    /// Cayley mixed graph, or a search over generator pairs.
    Cayley {
        /// Group, e.g. dihedral:14 or semidirect:9:6:2.
        #[arg(long)]
        group: String,
        /// Edge generators (repeat the flag); must be closed under inverses.
        #[arg(long)]
        s1: Vec<String>,
        /// Arc generators (repeat the flag).
        #[arg(long)]
        s2: Vec<String>,
        /// Instead of building one graph, list all {s},{a} pairs up to this diameter.
        #[arg(long)]
        search_k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a voltage base graph.
    Lift {
        #[arg(long)]
        group: String,
        /// Base file: `base n`, then `e u v g`, `a u v g`, `uloop u g`, `dloop u g`.
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search voltage assignments on a base shape for a small lift diameter.
    VoltageSearch {
        #[arg(long)]
        group: String,
        /// `order72`, `order544`, or a base file whose voltages are ignored.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, required = true)]
        rng_seed: u64,
        /// Number of best assignments to print.
        #[arg(long, default_value_t = 1)]
        keep: usize,
    },
    /// Rerun a check suite and report pass/fail.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// 1 for failures and failed checks, 2 for bad arguments.
struct Failure(u8, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(2, msg.to_string())
}

fn fail(msg: impl ToString) -> Failure {
    Failure(1, msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli.command, !cli.no_timing)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<MixedGraph, Failure> {
    read_graph(&read_file(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| fail(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(g: &MixedGraph, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(write_text(g)),
        Format::Digraph6 => encode_digraph6(g, false).map(|s| s + "\n").map_err(fail),
    }
}

fn build_family(family: Family, n: usize, d: usize) -> Result<LabeledMixedGraph, Failure> {
    let line = |order: Option<usize>, build: fn(usize, usize) -> mixgraph::ColoredDigraph| {
        if d == 0 || n == 0 {
            return Err(usage("--d and --n must be at least 1"));
        }
        match order {
            Some(o) if o <= MAX_DIGRAPH_ORDER => {}
            _ => return Err(usage(format!("more than {MAX_DIGRAPH_ORDER} vertices"))),
        }
        let graph = build(d, n).to_mixed_digons_as_edges();
        let labels = (0..graph.order()).map(|v| v.to_string()).collect();
        Ok(LabeledMixedGraph { graph, labels })
    };
    let pow = |b: usize, e: usize| u32::try_from(e).ok().and_then(|e| b.checked_pow(e));
    let built = match family {
        Family::E => families::build_e(n),
        Family::F => families::build_f(n),
        Family::FNumeric => families::build_f_numeric(n),
        Family::Fstar => families::build_fstar(n),
        Family::FstarAlt => families::build_fstar_alt(n),
        Family::Fprime => families::build_fprime(n),
        Family::G => families::build_g(n),
        Family::Gplus => families::build_gplus(n),
        Family::HK3 => families::build_h(n, &families::k3_colored()),
        Family::DeBruijn => return line(pow(d, n), families::de_bruijn),
        Family::Kautz => {
            let order = pow(d, n).zip(pow(d, n.saturating_sub(1))).and_then(|(a, b)| a.checked_add(b));
            return line(order, families::kautz);
        }
    };
    built.map_err(usage)
}

fn parse_seed_arcs(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || usage(format!("cannot parse seed arcs {s:?}; expected \"(u,v),(u,v)\""));
    let inner = cleaned.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|pair| {
            let (u, v) = pair.split_once(',').ok_or_else(bad)?;
            Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
        })
        .collect()
}

fn group(name: &str) -> Result<algebra::FiniteGroup, Failure> {
    parse_group(name).map_err(usage)
}

fn run(command: Command, timing: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let timing_line = |start: Instant| {
        if timing {
            println!("elapsed: {:.2}s", start.elapsed().as_secs_f64());
        }
    };
    match command {
        Command::Bound { k } => {
            if k < 1 {
                return Err(usage("k must be at least 1"));
            }
            let r = BoundReport::new(k);
            println!("k={k} moore={} upper={} lower={}", r.moore, r.upper, r.lower);
        }
        Command::Construct { family, n, d, format, labels, out } => {
            let g = build_family(family, n, d)?;
            let mut text = render(&g.graph, format)?;
            if labels && matches!(format, Format::Text) {
                for (v, l) in g.labels.iter().enumerate() {
                    text.push_str(&format!("# {v} {l}\n"));
                }
            }
            emit(&text, out.as_deref())?;
        }
        Command::Diameter { input } => {
            let g = load_graph(&input)?;
            match g.diameter() {
                Some(d) => println!("{d}"),
                None => println!("infinite"),
            }
        }
        Command::Spectrum { input } => {
            let g = load_graph(&input)?;
            let p = char_poly(&g).map_err(fail)?;
            println!("charpoly: {p}");
            match classify(&g).map_err(fail)? {
                Some(c) => println!("class: {}", c.id),
                None => println!("class: none"),
            }
        }
        Command::Search { mode, k, order, seed_arcs, budget, out } => {
            let seeds = parse_seed_arcs(seed_arcs.as_deref().unwrap_or(""))?;
            let result = match mode {
                Mode::AlmostMoore => {
                    let k = k.ok_or_else(|| usage("--k is required for almost-moore"))?;
                    if budget.is_some() || (3..=4).contains(&k) {
                        search::search_almost_moore_with_budget(k, budget)
                    } else {
                        search::search_almost_moore(k)
                    }
                }
                Mode::Order16 => search::search_order16_k4(),
                Mode::Order14 => search::search_order14_k4(),
                Mode::Generic => {
                    let k = k.ok_or_else(|| usage("--k is required for generic search"))?;
                    let order = order.ok_or_else(|| usage("--order is required for generic search"))?;
                    search::search_generic(order, k, &seeds, budget)
                }
            };
            let (outcome, exhausted) = match result {
                Ok(o) => (o, false),
                Err(SearchError::BudgetExhausted(partial)) => (*partial, true),
                Err(e @ (SearchError::InvalidSeed(_) | SearchError::OddOrder(_) | SearchError::UnsupportedK(_))) => {
                    return Err(usage(e))
                }
                Err(e) => return Err(fail(e)),
            };
            report_search(&outcome, out.as_deref())?;
            timing_line(start);
            if exhausted {
                return Err(fail("budget exhausted; results are partial"));
            }
        }
        Command::Codec { input, to, amp } => {
            let g = load_graph(&input)?;
            match to {
                Format::Text => print!("{}", write_text(&g)),
                Format::Digraph6 => println!("{}", encode_digraph6(&g, amp).map_err(fail)?),
            }
        }
        Command::Cayley { group: name, s1, s2, search_k, out } => {
            let g = group(&name)?;
            if let Some(k) = search_k {
                let hits = cayley_search(&g, k).map_err(fail)?;
                println!("{} classes with diameter <= {k}", hits.len());
                for h in hits {
                    println!("s={} a={} diameter={}", g.label(h.involution), g.label(h.generator), h.diameter);
                }
                return Ok(());
            }
            let parse = |xs: &[String]| xs.iter().map(|x| g.parse_element(x)).collect::<Result<Vec<_>, _>>();
            let (s1, s2) = (parse(&s1).map_err(usage)?, parse(&s2).map_err(usage)?);
            let c = cayley_mixed(&g, &s1, &s2).map_err(usage)?;
            eprintln!("order {} diameter {}", c.order(), c.diameter().map_or("infinite".into(), |d| d.to_string()));
            emit(&write_text(&c), out.as_deref())?;
        }
        Command::Lift { group: name, base, format, out } => {
            let g = group(&name)?;
            let vb = VoltageBaseGraph::parse(&read_file(&base)?, &g).map_err(usage)?;
            let l = lift(&vb, &g).map_err(fail)?;
            eprintln!("order {} diameter {}", l.order(), l.diameter().map_or("infinite".into(), |d| d.to_string()));
            emit(&render(&l, format)?, out.as_deref())?;
        }
        Command::VoltageSearch { group: name, shape, k, budget, rng_seed, keep } => {
            let g = group(&name)?;
            let shape = match shape.as_str() {
                "order72" => algebra::order72_shape(),
                "order544" => algebra::order544_shape(),
                path => VoltageBaseGraph::parse(&read_file(Path::new(path))?, &g).map_err(usage)?.shape,
            };
            let o = voltage_search(&shape, &g, k, budget, rng_seed, keep).map_err(fail)?;
            let mode = if o.complete { "exhaustive" } else { "sampled" };
            println!("space {} examined {} ({mode})", o.space, o.examined);
            println!("best diameter {}", o.best_diameter().map_or("infinite".into(), |d| d.to_string()));
            for r in &o.best {
                println!("# diameter {}", r.diameter.map_or("infinite".into(), |d| d.to_string()));
                print!("{}", r.base.write(&g));
            }
            timing_line(start);
            if !o.target_reached {
                return Err(fail(format!("no lift with diameter <= {k} found")));
            }
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut all_pass = true;
            for name in names {
                let t = Instant::now();
                let s = verify(name).map_err(usage)?;
                println!("{s}");
                timing_line(t);
                all_pass &= s.passed();
            }
            if !all_pass {
                return Err(fail(""));
            }
        }
    }
    Ok(())
}

fn report_search(o: &SearchOutcome, out: Option<&Path>) -> Result<(), Failure> {
    println!("order {} k {}", o.order, o.k);
    println!("cases {} matchings {} examined {}", o.cases, o.matchings, o.examined);
    println!("survivors {}", o.survivors.len());
    let lines: Vec<String> = o
        .survivors
        .iter()
        .map(|s| encode_digraph6(&s.graph, false).unwrap_or_else(|_| write_text(&s.graph)))
        .collect();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| fail(format!("{}: {e}", dir.display())))?;
            let body: String = lines.iter().map(|l| format!("{l}\n")).collect();
            let path = dir.join("survivors.d6");
            fs::write(&path, body).map_err(|e| fail(format!("{}: {e}", path.display())))?;
        }
        None => lines.iter().for_each(|l| println!("{l}")),
    }
    Ok(())
}
