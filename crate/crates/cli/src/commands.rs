//! Subcommand handlers. Each returns the process exit code after emitting its output.

use crate::output::{emit, json_text, list_csv, list_text, reports_csv};
use crate::settings::{Format, Settings};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Subcommand, ValueEnum};
use hzlab::bipartite::{self as bip, CycleBound, DegreeMode};
use hzlab::chain::{self, Chain, ChainSpec};
use hzlab::competition;
use hzlab::cover::{self, CoveringClaim, ExteriorPair, RelationGraph};
use hzlab::graph::enumerate::{enumerate_trees, TreeClass};
use hzlab::graph::io::{parse_graph, to_graph6};
use hzlab::graph::{bits, canonical_code};
use hzlab::invariants::{compute_index, IndexName};
use hzlab::registry;
use hzlab::report::aggregate_status;
use hzlab::spectral::{s_order_compare, spectral_moments};
use hzlab::trees::{extremal_search, TreeIndex};
use hzlab::{DegreeSequence, Graph, VerificationReport};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

use crate::Command;

#[derive(Subcommand, Debug)]
pub enum TreesCmd {
    /// All non-isomorphic trees of a class, as graph6 lines in a JSON list.
    Enumerate(TreeClassArgs),
    /// Minimizers and maximizers of an index over a class.
    Extremal {
        #[command(flatten)]
        class: TreeClassArgs,
        /// hm1, hm2, f, so, kg, mkg or sorder.
        #[arg(long)]
        index: String,
    },
}

#[derive(clap::Args, Debug)]
pub struct TreeClassArgs {
    #[arg(long, required_unless_present = "degseq")]
    pub n: Option<usize>,
    /// Exact maximum degree; omitted means any.
    #[arg(long, requires = "n")]
    pub delta: Option<usize>,
    /// Degree sequence, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "delta"])]
    pub degseq: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundArg {
    MinDegree,
    EdgeCount,
    SideDegree,
}

#[derive(Subcommand, Debug)]
pub enum BipCmd {
    /// Equitable coloring with `k` colors, or with the fewest colors when `k` is omitted.
    Color {
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Circumference against one of the cycle-length bounds, as a report.
    Cycles {
        graph: PathBuf,
        #[arg(long, value_enum)]
        bound: BoundArg,
    },
    /// Largest bi-hole of a balanced bipartite graph, or the exact threshold for `--n`/`--delta`.
    Bihole {
        #[arg(required_unless_present = "n")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "delta", conflicts_with = "graph")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        delta: Option<usize>,
        /// Bound the degrees on both sides (f*) instead of one side (f).
        #[arg(long)]
        both_sides: bool,
    },
    /// Whether every minimal vertex cover has the same size.
    Unmixed { graph: PathBuf },
    /// Embed a tree so that the rest of the host stays `k`-connected.
    Embed {
        tree: PathBuf,
        host: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// A `u`-`v` path through every vertex of side B.
    Bpath {
        graph: PathBuf,
        u: usize,
        v: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CoveringArg {
    Duality,
    Identity,
    Decomposition,
    Lattice,
    Chain,
}

impl From<CoveringArg> for CoveringClaim {
    fn from(c: CoveringArg) -> Self {
        match c {
            CoveringArg::Duality => CoveringClaim::Duality,
            CoveringArg::Identity => CoveringClaim::Identity,
            CoveringArg::Decomposition => CoveringClaim::Decomposition,
            CoveringArg::Lattice => CoveringClaim::Lattice,
            CoveringArg::Chain => CoveringClaim::Chain,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Exterior dimension with a minimum pair and a maximum matching.
    Dim { relation: PathBuf },
    /// Every minimal exterior pair.
    Meps { relation: PathBuf },
    /// Canonical decomposition into core, inadmissible span and empty region.
    Decompose { relation: PathBuf },
    /// Check one covering statement on this relation, as a report.
    Verify {
        relation: PathBuf,
        #[arg(long, value_enum)]
        claim: CoveringArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum CompetitionCmd {
    /// Closed-form competition number of K_{n1,n2,n3}; prints a bare integer.
    Kappa { n1: usize, n2: usize, n3: usize },
    /// Triangle edge clique cover of K_{n1,n2,n3}.
    Cover { n1: usize, n2: usize, n3: usize },
    /// Brute-force competition number of a small graph, up to `kmax`.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
}

#[derive(clap::Args, Debug)]
pub struct ChainArgs {
    #[arg(long, value_delimiter = ',', requires = "cols", conflicts_with = "scores")]
    pub rows: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', requires = "rows")]
    pub cols: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', required_unless_present = "rows")]
    pub scores: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    /// Run the chain and print visited states as NDJSON.
    Sample {
        #[command(flatten)]
        spec: ChainArgs,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        /// Print every k-th state.
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Exact transition matrix, mixing curve, mixing time and conductance.
    Diag {
        #[command(flatten)]
        spec: ChainArgs,
        #[arg(long)]
        eps: f64,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_input(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

/// Dense 0/1 rows, or a JSON bipartite graph whose first color class gives the rows.
fn read_relation(path: &Path) -> Result<RelationGraph> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        let g = parse_graph(&text)?;
        let b = g.bipartition().ok_or_else(|| anyhow!("{} is not bipartite", path.display()))?;
        return Ok(RelationGraph::from_bipartite(&g, &b)?);
    }
    RelationGraph::parse_matrix(&text).with_context(|| format!("parsing relation {}", path.display()))
}

fn json_only(s: &Settings, what: &str) -> Result<()> {
    if s.format() == Format::Csv {
        bail!("{what} has no CSV form; use --format json");
    }
    Ok(())
}

fn emit_json(s: &Settings, what: &str, v: &Value) -> Result<i32> {
    json_only(s, what)?;
    emit(s.out.as_deref(), &json_text(v))?;
    Ok(0)
}

fn emit_reports(s: &Settings, reports: &[VerificationReport], envelope: Option<Value>) -> Result<()> {
    let text = match s.format() {
        Format::Csv => reports_csv(reports)?,
        Format::Json => json_text(&envelope.unwrap_or_else(|| serde_json::to_value(&reports[0]).expect("reports serialize"))),
    };
    emit(s.out.as_deref(), &text)
}

fn emit_report(s: &Settings, r: VerificationReport) -> Result<i32> {
    let code = r.status.exit_code();
    emit_reports(s, std::slice::from_ref(&r), None)?;
    Ok(code)
}

pub fn list(s: &Settings) -> Result<i32> {
    let entries = registry::claims();
    let text = match s.format {
        None => list_text(&entries),
        Some(Format::Csv) => list_csv(&entries)?,
        Some(Format::Json) => json_text(&Value::Array(
            entries.iter().map(|e| json!({"claim": e.id, "anchor": e.anchor, "module": e.module})).collect(),
        )),
    };
    emit(s.out.as_deref(), &text)?;
    Ok(0)
}

pub fn dispatch(cmd: Command, s: &Settings) -> Result<i32> {
    match cmd {
        Command::Indices { graph, all: _, index, kg_literal } => indices(s, &graph, index, kg_literal),
        Command::Moments { graph, kmax } => {
            let g = read_graph(&graph)?;
            let m = spectral_moments(&g, kmax)?;
            let moments: Vec<String> = m.moments.iter().map(|x| x.to_string()).collect();
            emit_json(s, "moments", &json!({"n": g.n(), "kmax": kmax, "moments": moments}))
        }
        Command::Sorder { first, second } => {
            let (a, b) = (read_graph(&first)?, read_graph(&second)?);
            let c = s_order_compare(&a, &b)?;
            emit_json(s, "sorder", &serde_json::to_value(c)?)
        }
        Command::Trees(t) => trees(s, t),
        Command::Bip(b) => bipartite(s, b),
        Command::Cover(c) => covering(s, c),
        Command::Competition(c) => competition_cmd(s, c),
        Command::Chain(c) => chain_cmd(s, c),
        Command::Verify { claim, .. } => {
            let r = registry::verify(&claim, &s.run_config())?;
            emit_report(s, r)
        }
        Command::VerifyAll { .. } => verify_all(s),
    }
}

fn indices(s: &Settings, path: &Path, index: Option<String>, kg_literal: bool) -> Result<i32> {
    let g = read_graph(path)?;
    let names = match index {
        Some(name) => vec![IndexName::parse(&name)?],
        None => IndexName::STANDARD.to_vec(),
    };
    let mut out = serde_json::Map::new();
    for name in names {
        // Products and exponents can be undefined on graphs with isolated vertices.
        let v = match compute_index(&g, name, kg_literal) {
            Ok(v) => serde_json::to_value(v)?,
            Err(e) => json!({"kind": "undefined", "reason": e.to_string()}),
        };
        out.insert(name.key(), v);
    }
    emit_json(s, "indices", &Value::Object(out))
}

fn tree_class(a: &TreeClassArgs) -> Result<TreeClass> {
    Ok(match (&a.degseq, a.n, a.delta) {
        (Some(d), _, _) => TreeClass::Degrees(DegreeSequence::from_unsorted(d.clone())),
        (None, Some(n), Some(delta)) => TreeClass::MaxDegree { n, delta },
        (None, Some(n), None) => TreeClass::All { n },
        (None, None, _) => bail!("give --n or --degseq"),
    })
}

fn trees(s: &Settings, cmd: TreesCmd) -> Result<i32> {
    match cmd {
        TreesCmd::Enumerate(a) => {
            let list = enumerate_trees(&tree_class(&a)?)?;
            let codes: Vec<String> = list.iter().map(to_graph6).collect();
            emit_json(s, "trees enumerate", &json!({"count": codes.len(), "graph6": codes}))
        }
        TreesCmd::Extremal { class, index } => {
            let e = extremal_search(&tree_class(&class)?, TreeIndex::parse(&index)?)?;
            emit_json(s, "trees extremal", &serde_json::to_value(e)?)
        }
    }
}

fn bipartite(s: &Settings, cmd: BipCmd) -> Result<i32> {
    match cmd {
        BipCmd::Color { graph, k } => {
            let g = read_graph(&graph)?;
            let k = match k {
                Some(k) => k,
                None => bip::equitable_chromatic_number(&g)?,
            };
            let c = bip::equitable_color(&g, k)?;
            emit_json(s, "bip color", &json!({"k": k, "coloring": c}))
        }
        BipCmd::Cycles { graph, bound } => {
            let g = read_graph(&graph)?;
            let (id, which) = match bound {
                BoundArg::MinDegree => ("thm-5.3", CycleBound::MinDegree),
                BoundArg::EdgeCount => ("thm-5.5", CycleBound::EdgeCount),
                BoundArg::SideDegree => ("thm-5.6", CycleBound::SideDegree),
            };
            let mut r = VerificationReport::new(id, registry::lookup(id)?.anchor);
            r.detail("circumference", bip::longest_cycle(&g)?);
            let key = canonical_code(&g).map(|c| c.to_string()).unwrap_or_else(|_| to_graph6(&g));
            for (tag, fail) in bip::check_cycle_bounds(&g, which)? {
                r.check(format!("{key}#{tag}"), fail);
            }
            emit_report(s, r.finish())
        }
        BipCmd::Bihole { graph, n, delta, both_sides } => {
            if let (Some(n), Some(delta)) = (n, delta) {
                let mode = if both_sides { DegreeMode::BothSides } else { DegreeMode::OneSided };
                let t = bip::bihole_threshold(n, delta, mode)?;
                return emit_json(s, "bip bihole", &json!({"n": n, "delta": delta, "mode": mode, "value": t.value, "witness_rows": t.witness}));
            }
            let g = read_graph(graph.as_deref().expect("clap requires a graph"))?;
            let b = g.bipartition().ok_or(hzlab::Error::NotBipartite)?;
            let h = bip::max_bihole(&g, &b)?;
            emit_json(s, "bip bihole", &serde_json::to_value(h)?)
        }
        BipCmd::Unmixed { graph } => {
            let g = read_graph(&graph)?;
            let b = g.bipartition().ok_or(hzlab::Error::NotBipartite)?;
            emit_json(s, "bip unmixed", &json!({"unmixed": bip::is_unmixed(&g, &b)?}))
        }
        BipCmd::Embed { tree, host, k } => {
            let (t, g) = (read_graph(&tree)?, read_graph(&host)?);
            emit_json(s, "bip embed", &json!({"k": k, "embedding": bip::find_embedding(&t, &g, k)?}))
        }
        BipCmd::Bpath { graph, u, v } => {
            let g = read_graph(&graph)?;
            let b = g.bipartition().ok_or(hzlab::Error::NotBipartite)?;
            emit_json(s, "bip bpath", &json!({"path": bip::path_through_all_b(&g, &b, u, v)?}))
        }
    }
}

fn pair(c: &ExteriorPair) -> Value {
    json!({"a": bits(c.a).collect::<Vec<_>>(), "b": bits(c.b).collect::<Vec<_>>()})
}

fn covering(s: &Settings, cmd: CoverCmd) -> Result<i32> {
    match cmd {
        CoverCmd::Dim { relation } => {
            let k = read_relation(&relation)?;
            let (e, c) = cover::exterior_dimension(&k)?;
            let m = cover::max_disjoint_subgraph(&k);
            emit_json(s, "cover dim", &json!({"p": k.p(), "q": k.q(), "exterior_dimension": e, "pair": pair(&c), "matching": m}))
        }
        CoverCmd::Meps { relation } => {
            let k = read_relation(&relation)?;
            let meps: Vec<Value> = cover::enumerate_meps(&k)?.iter().map(pair).collect();
            emit_json(s, "cover meps", &json!({"count": meps.len(), "meps": meps}))
        }
        CoverCmd::Decompose { relation } => {
            let k = read_relation(&relation)?;
            let d = cover::canonical_decomposition(&k)?;
            let blocks: Vec<Value> = d
                .blocks
                .iter()
                .map(|b| json!({"rows": bits(b.rows).collect::<Vec<_>>(), "cols": bits(b.cols).collect::<Vec<_>>()}))
                .collect();
            emit_json(
                s,
                "cover decompose",
                &json!({"low": pair(&d.low), "high": pair(&d.high), "blocks": blocks, "inadmissible": d.inadmissible}),
            )
        }
        CoverCmd::Verify { relation, claim } => {
            let k = read_relation(&relation)?;
            let claim = CoveringClaim::from(claim);
            let (id, text) = cover::anchor(claim);
            let mut r = VerificationReport::new(id, text);
            let key = k.to_matrix().trim_end().replace('\n', "/");
            for (tag, fail) in cover::verify_covering(claim, &k)? {
                r.check(format!("{key}#{tag}"), fail);
            }
            emit_report(s, r.finish())
        }
    }
}

fn sorted_parts(n1: usize, n2: usize, n3: usize) -> [usize; 3] {
    let mut p = [n1, n2, n3];
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

fn competition_cmd(s: &Settings, cmd: CompetitionCmd) -> Result<i32> {
    match cmd {
        CompetitionCmd::Kappa { n1, n2, n3 } => {
            let [a, b, c] = sorted_parts(n1, n2, n3);
            let k = competition::tripartite_kappa(a, b, c)?;
            emit(s.out.as_deref(), &format!("{k}\n"))?;
            Ok(0)
        }
        CompetitionCmd::Cover { n1, n2, n3 } => {
            let [a, b, c] = sorted_parts(n1, n2, n3);
            let cc = competition::tripartite_clique_cover(a, b, c)?;
            let cliques: Vec<Vec<usize>> = cc.cliques.iter().map(|&m| bits(m).collect()).collect();
            emit_json(s, "competition cover", &json!({"parts": [a, b, c], "size": cliques.len(), "cliques": cliques}))
        }
        CompetitionCmd::Oracle { graph, kmax } => {
            let g = read_graph(&graph)?;
            let k = competition::kappa_oracle(&g, kmax)?;
            emit_json(s, "competition oracle", &json!({"kmax": kmax, "kappa": k}))
        }
    }
}

fn chain_of(a: ChainArgs) -> Result<Chain> {
    let spec = match (a.rows, a.cols, a.scores) {
        (Some(rows), Some(cols), None) => ChainSpec::Margins { rows, cols },
        (None, None, Some(scores)) => ChainSpec::Scores(scores),
        _ => bail!("give --rows and --cols, or --scores"),
    };
    Ok(Chain::new(spec)?)
}

fn chain_cmd(s: &Settings, cmd: ChainCmd) -> Result<i32> {
    match cmd {
        ChainCmd::Sample { spec, steps, seed, every } => {
            json_only(s, "chain sample")?;
            let c = chain_of(spec)?;
            let start = c.initial_state();
            let mut text = String::new();
            for x in c.sample(&start, steps, every, seed) {
                text.push_str(&c.render(&x).to_string());
                text.push('\n');
            }
            emit(s.out.as_deref(), &text)?;
            Ok(0)
        }
        ChainCmd::Diag { spec, eps } => {
            let c = chain_of(spec)?;
            let d = chain::diagnostics(&c, eps)?;
            emit_json(s, "chain diag", &d.to_json(&c))
        }
    }
}

fn verify_all(s: &Settings) -> Result<i32> {
    let cfg = s.run_config();
    let reports = registry::verify_all(&cfg, s.claims.as_deref())?;
    let status = aggregate_status(&reports);
    let entries = registry::claims();
    let table: Vec<Value> = reports
        .iter()
        .map(|r| {
            let module = entries.iter().find(|e| e.id == r.claim).map_or("", |e| e.module);
            json!({"claim": r.claim, "anchor": r.anchor, "module": module, "status": r.status, "universe": r.universe})
        })
        .collect();
    for r in &reports {
        eprintln!("{:<14} {:?}", r.claim, r.status);
    }
    let envelope = json!({
        "status": status,
        "config": {"max_n": cfg.max_n, "seed": cfg.seed, "samples": cfg.samples, "steps": cfg.steps},
        "table": table,
        "reports": reports,
    });
    emit_reports(s, &reports, Some(envelope))?;
    Ok(status.exit_code())
}
