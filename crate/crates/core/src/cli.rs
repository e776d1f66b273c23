//! The `nofil` command line.
//!
//! Exit codes: 0 success, 1 a domain failure (nothing found, a blocked row,
//! a certificate that does not verify), 2 a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{self, GraphProfile};
use crate::constructions::{embed_complete, embed_star, pasch_transfer, star};
use crate::design::io::{parse_certificate, parse_graph, parse_sts, write_certificate, write_sts};
use crate::design::{
    find_paschs, fixtures, graph_family, pasch_switch, verify_embedding, GraphFamily, LabeledGraph, TripleSystem,
};
use crate::game::{self, Containment, GameState, HarvestLimits, DEFAULT_SOLVE_CAP};
use crate::search::{self, Priority, SearchConfig};
use crate::skolem::{self, SequenceKind};

#[derive(Parser, Debug)]
#[command(name = "nofil", version, about = "Graph embeddings in Steiner triple systems through the game Nofil")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "NOFIL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Only print results, no progress or summaries.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads for search and harvest.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Necessary conditions and the smallest admissible order for a graph.
    Bounds(BoundsArgs),
    /// Minimal admissible rows for a graph family over a range of orders.
    Table(TableArgs),
    /// Generate a Skolem-type sequence.
    Skolem(SkolemArgs),
    /// Build a star or complete graph embedding.
    Construct(ConstructArgs),
    /// Check an embedding certificate.
    Verify(VerifyArgs),
    /// Play Nofil on a system, interactively or from a script.
    Play(PlayArgs),
    /// Decide the winner of Nofil on a small system.
    Solve(SolveArgs),
    /// Record every graph reachable in play.
    Harvest(HarvestArgs),
    /// Randomized search for an embedding at the smallest order.
    Search(SearchArgs),
    /// List Pasch configurations, switch one, or move a point from A to U.
    Pasch(PaschArgs),
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// `family:a` (for example `path:5`) or a graph file.
    #[arg(long)]
    pub graph: String,
    /// Show every inequality at this order instead of the minimum.
    #[arg(long)]
    pub v: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 2)]
    pub from: u64,
    #[arg(long, default_value_t = 45)]
    pub to: u64,
}

#[derive(Args, Debug)]
pub struct SkolemArgs {
    /// skolem, hooked, split, langford or hooked_langford.
    #[arg(long, default_value = "skolem")]
    pub kind: String,
    #[arg(long)]
    pub t: u32,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// The variant with a fixed first pair: (1,2) for skolem, (1,3) at
    /// difference 2 for hooked.
    #[arg(long)]
    pub special: bool,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Order of the star `K_{1,a-1}`.
    #[arg(long, conflicts_with = "complete", required_unless_present = "complete")]
    pub star: Option<usize>,
    /// Order of the complete graph.
    #[arg(long)]
    pub complete: Option<usize>,
    /// Write the certificate here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    /// Write the cyclic presentation here, when there is one.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub certificate: PathBuf,
}

#[derive(Args, Debug)]
pub struct PlayArgs {
    /// System file, or `@sts9` / `@fano`.
    #[arg(long)]
    pub sts: String,
    /// Moves separated by commas; without it moves are read from stdin.
    #[arg(long)]
    pub script: Option<String>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub sts: String,
    #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct HarvestArgs {
    /// System file, or `@sts9` / `@fano`.
    #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
    pub sts: Option<String>,
    /// Hill-climb systems of this order instead.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = 16)]
    pub max_vertices: usize,
    /// Stop at the first position showing this graph (`family:a` or file).
    #[arg(long, conflicts_with = "sample")]
    pub find: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PriorityArg {
    P,
    U,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// `family:a` or a graph file.
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub vmax: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, value_enum, default_value_t = PriorityArg::P)]
    pub priority: PriorityArg,
    #[arg(long, default_value_t = 200_000)]
    pub max_iters: u64,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PaschArgs {
    /// List the configurations of this system.
    #[arg(long, required_unless_present = "transfer")]
    pub sts: Option<String>,
    /// Switch the configuration with this index.
    #[arg(long, requires = "sts")]
    pub switch: Option<usize>,
    /// Move a point of this certificate from A to U.
    #[arg(long, conflicts_with = "sts")]
    pub transfer: Option<PathBuf>,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

struct Failure {
    code: i32,
    msg: String,
}

fn domain(msg: impl ToString) -> Failure {
    Failure { code: 1, msg: msg.to_string() }
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

type Out<'a> = &'a mut dyn Write;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(&cli, &mut buf));
                let _ = out.write_all(&buf);
                r
            }
            Err(e) => Err(usage(e)),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "nofil: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: Out) -> Result<(), Failure> {
    let res = match &cli.command {
        Command::Bounds(a) => cmd_bounds(cli, a, out),
        Command::Table(a) => cmd_table(cli, a, out),
        Command::Skolem(a) => cmd_skolem(a, out),
        Command::Construct(a) => cmd_construct(cli, a, out),
        Command::Verify(a) => cmd_verify(cli, a, out),
        Command::Play(a) => cmd_play(cli, a, out),
        Command::Solve(a) => cmd_solve(cli, a, out),
        Command::Harvest(a) => cmd_harvest(cli, a, out),
        Command::Search(a) => cmd_search(cli, a, out),
        Command::Pasch(a) => cmd_pasch(cli, a, out),
    };
    out.flush().map_err(domain)?;
    res
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn emit(out: Out, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(domain)
}

/// `family:a` or a graph file.
fn load_graph(spec: &str) -> Result<LabeledGraph, Failure> {
    if let Some((fam, a)) = spec.split_once(':') {
        if let Ok(family) = fam.parse::<GraphFamily>() {
            let a: usize = a.parse().map_err(|_| usage(format!("bad order in `{spec}`")))?;
            return graph_family(family, a).map_err(usage);
        }
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(usage(format!("`{spec}` is neither family:a nor a graph file")));
    }
    parse_graph(&read(path)?).map_err(domain)
}

fn load_sts(spec: &str) -> Result<TripleSystem, Failure> {
    let ts = match spec {
        "@sts9" => fixtures::sts9(),
        "@fano" => fixtures::fano(),
        _ => parse_sts(&read(Path::new(spec))?).map_err(domain)?,
    };
    if !ts.is_sts() {
        return Err(domain(format!("{spec}: {}", ts.validate().describe(&ts))));
    }
    Ok(ts)
}

fn config(cli: &Cli) -> SearchConfig {
    SearchConfig { seed: cli.seed, ..SearchConfig::default() }
}

fn cmd_bounds(cli: &Cli, a: &BoundsArgs, out: Out) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let prof = GraphProfile::of_graph(&g);
    let mut s = String::new();
    if let Some(v) = a.v {
        for u in 0..=v.saturating_sub(prof.a) {
            let r = bounds::lemma1_bounds(v, prof.a, u, prof.e, prof.chi_g, prof.chi_complement);
            match cli.format {
                Format::Records => {
                    let _ = writeln!(s, "{v} {} {} {} {}", v - prof.a - u, prof.a, u, if r.passes() { "pass" } else { "fail" });
                }
                Format::Text => {
                    let _ = writeln!(s, "p={} {r}", v - prof.a - u);
                }
            }
        }
        return emit(out, &s);
    }
    let Some((v, rows)) = bounds::min_admissible_v(&prof) else {
        return Err(domain(format!("no admissible order up to {}", 4 * prof.a + 16)));
    };
    if cli.format == Format::Text && !cli.quiet {
        let _ = writeln!(s, "a={} e={} chi'={} chi'(complement)={}", prof.a, prof.e, prof.chi_g, prof.chi_complement);
        let _ = writeln!(s, "smallest admissible v = {v}");
    }
    for r in rows {
        let c = r.counts.as_array();
        let _ = match cli.format {
            Format::Text => writeln!(s, "  (p,a,u)=({},{},{}) counts {} obstruction {}", r.p, r.a, r.u, r.counts, r.obstruction()),
            Format::Records => writeln!(
                s,
                "{} {} {} {} {} {} {} {} {} {} {} {}",
                r.v, r.p, r.a, r.u, c[0], c[1], c[2], c[3], c[4], c[5], c[6], r.obstruction()
            ),
        };
    }
    emit(out, &s)
}

fn cmd_table(cli: &Cli, a: &TableArgs, out: Out) -> Result<(), Failure> {
    let family: GraphFamily = a.family.parse().map_err(usage)?;
    if a.from > a.to {
        return Err(usage("--from is larger than --to"));
    }
    let table = bounds::family_table(family, a.from, a.to);
    let text = match cli.format {
        Format::Text => bounds::format_table(family, &table),
        Format::Records => bounds::format_records(family, &table),
    };
    emit(out, &text)
}

fn cmd_skolem(a: &SkolemArgs, out: Out) -> Result<(), Failure> {
    let kind: SequenceKind = a.kind.parse().map_err(usage)?;
    let seq = if a.special {
        match kind {
            SequenceKind::Skolem => skolem::special_skolem(a.t),
            SequenceKind::Hooked => skolem::special_hooked(a.t),
            _ => return Err(usage("--special applies to skolem and hooked")),
        }
    } else {
        skolem::generate(kind, a.t, a.d, 0)
    };
    emit(out, &seq.map_err(domain)?.to_text())
}

fn cmd_construct(cli: &Cli, a: &ConstructArgs, out: Out) -> Result<(), Failure> {
    let mut s = String::new();
    let (cert, presentation) = if let Some(n) = a.star {
        let e = embed_star(n).map_err(domain)?;
        if !cli.quiet {
            let _ = match cli.format {
                Format::Text => {
                    let mut t = format!(
                        "star K_1,{} in STS({}) ({}; smallest possible {}), centre {}, {}\n",
                        n - 1,
                        e.v,
                        e.minimality,
                        star::star_lower_bound(n),
                        e.centre,
                        e.method
                    );
                    for r in &e.repairs {
                        t.push_str(&format!("  repair: {r}\n"));
                    }
                    s.push_str(&t);
                    Ok(())
                }
                Format::Records => writeln!(s, "star {n} {} {} {}", e.v, e.minimality, e.centre),
            };
        }
        (e.cert, e.presentation)
    } else {
        let n = a.complete.expect("clap requires one of --star, --complete");
        let cert = embed_complete(n).map_err(domain)?;
        if !cli.quiet {
            let _ = match cli.format {
                Format::Text => writeln!(s, "K_{n} in STS({}), counts {}", cert.ts.v(), cert.counts()),
                Format::Records => writeln!(s, "complete {n} {}", cert.ts.v()),
            };
        }
        (cert, None)
    };
    let text = write_certificate(&cert);
    match &a.emit {
        Some(path) => write_file(path, &text)?,
        None => s.push_str(&text),
    }
    if let Some(path) = &a.presentation {
        let p = presentation.ok_or_else(|| domain("this embedding has no cyclic presentation"))?;
        write_file(path, &p.to_text())?;
    }
    emit(out, &s)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: Out) -> Result<(), Failure> {
    let cert = parse_certificate(&read(&a.certificate)?).map_err(domain)?;
    let report = verify_embedding(&cert).map_err(domain)?;
    let line = match cli.format {
        Format::Text => format!(
            "{}: v={} (p,a,u)=({},{},{}) edges={} {}\n",
            a.certificate.display(),
            cert.ts.v(),
            cert.partition.p(),
            cert.partition.a(),
            cert.partition.u(),
            cert.graph.edge_count(),
            report.summary()
        ),
        Format::Records => format!("{} {}\n", if report.ok() { "ok" } else { "fail" }, cert.ts.v()),
    };
    if !cli.quiet || !report.ok() {
        emit(out, &line)?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(domain("certificate does not verify"))
    }
}

fn join(labels: Vec<String>) -> String {
    labels.join(",")
}

fn state_row(cli: &Cli, turn: usize, s: &GameState) -> String {
    let ts = s.system();
    let p = join(s.labels(s.played()));
    let a = join(s.labels(&s.available()));
    let u = join(s.labels(&s.unplayable()));
    let h = s.hyperedge_labels().join(" ");
    match cli.format {
        Format::Records => format!("{turn} {} {} {} {}\n", or_dash(&p), or_dash(&a), or_dash(&u), or_dash(&h.replace(' ', ","))),
        Format::Text => {
            let blocks: Vec<String> = ts
                .blocks()
                .iter()
                .map(|b| {
                    b.points()
                        .iter()
                        .map(|&x| {
                            let l = ts.label(x);
                            if s.played().contains(&x) {
                                format!("[{l}]")
                            } else {
                                l.to_string()
                            }
                        })
                        .collect::<String>()
                })
                .collect();
            format!(
                "Turn {turn}\n  P: {p}\n  A: {a}\n  U: {u}\n  blocks: {}\n  available hypergraph: {h}\n",
                blocks.join(" ")
            )
        }
    }
}

fn or_dash(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

fn cmd_play(cli: &Cli, a: &PlayArgs, out: Out) -> Result<(), Failure> {
    let ts = load_sts(&a.sts)?;
    let mut state = game::new_game(&ts).map_err(domain)?;
    emit(out, &state_row(cli, 0, &state))?;
    let moves: Box<dyn Iterator<Item = String>> = match &a.script {
        Some(script) => Box::new(
            script.split(',').map(str::trim).filter(|m| !m.is_empty()).map(String::from).collect::<Vec<_>>().into_iter(),
        ),
        None => Box::new(std::io::stdin().lock().lines().map_while(Result::ok).map(|l| l.trim().to_string())),
    };
    let interactive = a.script.is_none();
    for (i, m) in moves.enumerate() {
        if m.is_empty() {
            continue;
        }
        match state.play_label(&m) {
            Ok(next) => state = next,
            Err(e) if interactive => {
                emit(out, &format!("{e}\n"))?;
                continue;
            }
            Err(e) => return Err(domain(format!("move {} ({m}): {e}", i + 1))),
        }
        emit(out, &state_row(cli, state.played().len(), &state))?;
        if state.is_over() {
            break;
        }
    }
    if state.is_over() && cli.format == Format::Text {
        let winner = if state.played().len() % 2 == 1 { 1 } else { 2 };
        emit(out, &format!("game over: player {winner} made the last move and wins\n"))?;
    }
    Ok(())
}

fn cmd_solve(cli: &Cli, a: &SolveArgs, out: Out) -> Result<(), Failure> {
    let ts = load_sts(&a.sts)?;
    let o = game::outcome(&ts, a.cap).map_err(domain)?;
    let pv: Vec<&str> = o.principal_variation.iter().map(|&x| ts.label(x)).collect();
    let text = match cli.format {
        Format::Text => format!(
            "{} ({} positions); line of play {} ({} moves)\n",
            o.winner,
            o.positions,
            pv.join(","),
            pv.len()
        ),
        Format::Records => format!(
            "{} {} {}\n",
            if o.winner == game::Winner::FirstPlayer { "first" } else { "second" },
            pv.len(),
            pv.join(",")
        ),
    };
    emit(out, &text)
}

fn cmd_harvest(cli: &Cli, a: &HarvestArgs, out: Out) -> Result<(), Failure> {
    let limits = HarvestLimits { max_nodes: a.max_nodes, max_graph_vertices: a.max_vertices };
    let cat = if let Some(v) = a.sample {
        search::sample_and_harvest(v, a.samples, &limits, &config(cli)).map_err(domain)?
    } else {
        let ts = load_sts(a.sts.as_deref().expect("clap requires --sts or --sample"))?;
        if let Some(spec) = &a.find {
            let g = load_graph(spec)?;
            return match game::contains_graph(&ts, &g, &limits).map_err(domain)? {
                Containment::Found(w) => emit(out, &format!("found {}\n", w.join(","))),
                Containment::NotFound { complete: true } => Err(domain("not reachable in play")),
                Containment::NotFound { complete: false } => Err(domain("not found before the node budget ran out")),
            };
        }
        game::harvest_graphs(&ts, &limits).map_err(domain)?
    };
    let mut s = cat.to_lines();
    if !cli.quiet && cli.format == Format::Text {
        let _ = writeln!(
            s,
            "# {} graphs, {} positions{}",
            cat.len(),
            cat.expanded,
            if cat.incomplete { ", incomplete (node budget)" } else { "" }
        );
    }
    emit(out, &s)
}

fn cmd_search(cli: &Cli, a: &SearchArgs, out: Out) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let cfg = SearchConfig {
        seed: cli.seed,
        max_iters: a.max_iters,
        restarts: a.restarts,
        priority: match a.priority {
            PriorityArg::P => Priority::LargeP,
            PriorityArg::U => Priority::LargeU,
        },
        ..SearchConfig::default()
    };
    let res = search::search_min_embedding(&g, a.vmax, &cfg);
    let mut s = String::new();
    if !cli.quiet {
        for r in &res.log {
            let _ = writeln!(s, "{r}");
        }
    }
    let Some(cert) = res.certificate else {
        emit(out, &s)?;
        let blocked = if res.saw_blocked() { " (some rows blocked)" } else { "" };
        return Err(domain(format!("no embedding found up to v={}{blocked}; this does not rule one out", a.vmax)));
    };
    if cli.format == Format::Text && !cli.quiet {
        let _ = writeln!(s, "found STS({}) with (p,a,u)=({},{},{})", cert.ts.v(), cert.partition.p(), cert.partition.a(), cert.partition.u());
    }
    let text = write_certificate(&cert);
    match &a.emit {
        Some(path) => write_file(path, &text)?,
        None => s.push_str(&text),
    }
    emit(out, &s)
}

fn cmd_pasch(cli: &Cli, a: &PaschArgs, out: Out) -> Result<(), Failure> {
    if let Some(path) = &a.transfer {
        let cert = parse_certificate(&read(path)?).map_err(domain)?;
        let next = pasch_transfer(&cert).map_err(domain)?;
        let text = write_certificate(&next);
        return match &a.emit {
            Some(p) => write_file(p, &text),
            None => emit(out, &text),
        };
    }
    let ts = load_sts(a.sts.as_deref().expect("clap requires --sts or --transfer"))?;
    let paschs = find_paschs(&ts);
    if let Some(i) = a.switch {
        let pc = paschs.get(i).ok_or_else(|| usage(format!("only {} configurations", paschs.len())))?;
        let next = pasch_switch(&ts, pc).map_err(domain)?;
        let text = write_sts(&next);
        return match &a.emit {
            Some(p) => write_file(p, &text),
            None => emit(out, &text),
        };
    }
    let mut s = String::new();
    for (i, pc) in paschs.iter().enumerate() {
        let b: Vec<String> = pc.blocks().iter().map(|b| ts.block_label(b)).collect();
        let _ = writeln!(s, "{i} {}", b.join(" "));
    }
    if cli.format == Format::Text && !cli.quiet {
        let _ = writeln!(s, "# {} Pasch configurations", paschs.len());
    }
    emit(out, &s)
}
