//! Command-line surface: enumerate catalogs, compute mixed volumes and
//! bounds, reproduce the bound tables, verify the degeneracy witness.
//!
//! Outputs are deterministic given inputs and seed. Errors are emitted as a
//! JSON object on stderr with a nonzero exit code.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rigidmv::bounds::{self, BoundsReport};
use rigidmv::cache::CacheStore;
use rigidmv::canon::canonical_key;
use rigidmv::enumerate::{generate_all, write_catalog, GenerateOptions};
use rigidmv::graph::{Dim, HClass, RigidGraph};
use rigidmv::mixedvol::{min_mixed_volume_seeded, mixed_volume_seeded};
use rigidmv::polysys::{
    build_system, degeneracy_witness, face_system, pinning_candidates, FaceDirection, Formulation,
    SupportSystem,
};

const CACHE_ENV: &str = "RIGIDMV_CACHE_DIR";
/// Catalog sizes beyond this need --allow-long.
const DESK_N_MAX: u8 = 7;

#[derive(Parser)]
#[command(name = "rigidmv", version, about = "Rigid graph enumeration and embedding bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Cache directory (defaults to $RIGIDMV_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Result<Option<CacheStore>> {
        if self.no_cache {
            return Ok(None);
        }
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        match dir {
            None => Ok(None),
            Some(d) => Ok(Some(CacheStore::open(&d)?)),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate all valid graphs on n vertices up to isomorphism (JSONL).
    Enumerate {
        #[arg(long)]
        dim: u8,
        #[arg(long)]
        n: u8,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit n beyond the desk-scale default of 7.
        #[arg(long)]
        allow_long: bool,
        /// Abort after this many seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Minimum mixed volume of a graph over all pinnings, or the raw mixed
    /// volume of a support-dump file.
    MixedVolume {
        /// Graph source: `name:<generator>` or a path to a graph JSON file.
        #[arg(long, conflicts_with = "supports")]
        graph: Option<String>,
        /// Support-dump JSON file ({"vars": [...], "supports": [...]}).
        #[arg(long)]
        supports: Option<PathBuf>,
        #[arg(long)]
        dim: Option<u8>,
        #[arg(long, default_value = "augmented")]
        formulation: Formulation,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `all` (minimum over candidates) or a candidate index.
        #[arg(long, default_value = "all")]
        pinning: String,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Full bounds report for one graph.
    Bounds {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dim: Option<u8>,
        /// Also compute the naive-formulation mixed volume.
        #[arg(long)]
        with_naive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Reproduce the bound table rows as CSV.
    Table {
        #[arg(long)]
        dim: u8,
        #[arg(long, default_value_t = 7)]
        n_max: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_long: bool,
    },
    /// Construct and verify the toric face-system witness (naive spatial
    /// formulation).
    Witness {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dim: Option<u8>,
        /// Pinning candidate index.
        #[arg(long, default_value_t = 0)]
        pinning: usize,
    },
    /// Replay catalog sequences and check the step-ratio conjecture.
    ConjectureScan {
        #[arg(long)]
        dim: u8,
        #[arg(long, default_value_t = 6)]
        n_max: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_long: bool,
    },
    /// Cache maintenance.
    Cache {
        #[command(subcommand)]
        cmd: CacheCmd,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Drop corrupt entries and rewrite the store.
    Gc {
        #[command(flatten)]
        cache: CacheArgs,
    },
}

fn parse_dim(dim: u8) -> Result<Dim> {
    Dim::from_u8(dim).ok_or_else(|| anyhow!("dim must be 2 or 3, got {dim}"))
}

fn load_graph(src: &str, dim: Option<u8>) -> Result<RigidGraph> {
    let g = if let Some(name) = src.strip_prefix("name:") {
        rigidmv::constructions::make(name)?
    } else {
        let text = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
        serde_json::from_str(&text).with_context(|| format!("parsing graph JSON from {src}"))?
    };
    if let Some(d) = dim {
        let d = parse_dim(d)?;
        if g.dim() != d {
            bail!("graph has dim {}, requested {}", g.dim().as_u8(), d.as_u8());
        }
    }
    if !g.is_valid() {
        bail!("graph fails the dim-{} validity check", g.dim().as_u8());
    }
    Ok(g)
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        None => println!("{text}"),
        Some(p) => std::fs::write(p, text + "\n")?,
    }
    Ok(())
}

fn check_budget(n: u8, allow_long: bool) -> Result<()> {
    if n > DESK_N_MAX && !allow_long {
        bail!("n={n} exceeds the desk-scale default {DESK_N_MAX}; pass --allow-long");
    }
    if n as usize > rigidmv::graph::MAX_N {
        bail!("n={n} exceeds the vertex cap {}", rigidmv::graph::MAX_N);
    }
    Ok(())
}

fn cmd_enumerate(
    dim: u8,
    n: u8,
    out: Option<PathBuf>,
    allow_long: bool,
    budget_secs: Option<u64>,
) -> Result<()> {
    let dim = parse_dim(dim)?;
    check_budget(n, allow_long)?;
    let opts = GenerateOptions {
        time_budget: budget_secs.map(std::time::Duration::from_secs),
        ..Default::default()
    };
    let entries = generate_all(dim, n, &opts)?;
    match out {
        Some(path) => {
            write_catalog(&path, &entries)?;
            eprintln!("{} classes -> {}", entries.len(), path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            for e in &entries {
                let mut e = e.clone();
                e.graph.set_provenance(None);
                serde_json::to_writer(&mut w, &e)?;
                w.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn cmd_mixed_volume(
    graph: Option<String>,
    supports: Option<PathBuf>,
    dim: Option<u8>,
    formulation: Formulation,
    seed: u64,
    pinning: String,
    cache: CacheArgs,
) -> Result<()> {
    if let Some(path) = supports {
        let text = std::fs::read_to_string(&path)?;
        let sys: SupportSystem = serde_json::from_str(&text)?;
        let res = mixed_volume_seeded(&sys, seed)?;
        return emit(&serde_json::to_value(res)?, None);
    }
    let src = graph.ok_or_else(|| anyhow!("pass --graph or --supports"))?;
    let g = load_graph(&src, dim)?;
    if pinning != "all" {
        let idx: usize = pinning.parse().context("--pinning must be `all` or an index")?;
        let candidates = pinning_candidates(&g);
        let p = candidates
            .get(idx)
            .ok_or_else(|| anyhow!("pinning index {idx} out of range ({} candidates)", candidates.len()))?;
        let sys = build_system(&g, p, formulation)?;
        let res = mixed_volume_seeded(&sys, seed)?;
        let mut v = serde_json::to_value(res)?;
        v["pinning"] = serde_json::to_value(&p.fixed)?;
        return emit(&v, None);
    }
    let key = CacheStore::compose_key(
        &canonical_key(&g).hex(),
        formulation.as_str(),
        &format!("all:seed{seed}"),
    );
    let mut store = cache.open()?;
    if let Some(store) = &store {
        if let Some(hit) = store.get(&key)? {
            return emit(&hit, None);
        }
    }
    let rep = min_mixed_volume_seeded(&g, formulation, seed)?;
    let mut v = serde_json::to_value(&rep)?;
    v["schema_version"] = serde_json::json!(rigidmv::SCHEMA_VERSION);
    if let Some(store) = &mut store {
        store.put(&key, g.dim().as_u8(), g.n(), v.clone());
        store.flush()?;
    }
    emit(&v, None)
}

fn cmd_bounds(
    graph: String,
    dim: Option<u8>,
    with_naive: bool,
    seed: u64,
    cache: CacheArgs,
) -> Result<()> {
    let g = load_graph(&graph, dim)?;
    let key = CacheStore::compose_key(
        &canonical_key(&g).hex(),
        if with_naive { "both" } else { "augmented" },
        &format!("bounds:seed{seed}"),
    );
    let mut store = cache.open()?;
    if let Some(store) = &store {
        if let Some(hit) = store.get(&key)? {
            return emit(&hit, None);
        }
    }
    let rep: BoundsReport = bounds::report_for(&g, with_naive, true, seed)?;
    let v = serde_json::to_value(&rep)?;
    if let Some(store) = &mut store {
        store.put(&key, g.dim().as_u8(), g.n(), v.clone());
        store.flush()?;
    }
    emit(&v, None)
}

fn cmd_table(dim: u8, n_max: u8, out: Option<PathBuf>, seed: u64, allow_long: bool) -> Result<()> {
    let dim_t = parse_dim(dim)?;
    check_budget(n_max, allow_long)?;
    let mut csv = String::from(
        "dim,n,lower,upper,upper_class,upper_sequence,h1_max_mv,h1_sequence,h2_max_mv,h2_sequence\n",
    );
    for n in dim_t.base_n()..=n_max {
        let entries = generate_all(dim_t, n, &Default::default())?;
        let mut upper: u64 = 0;
        let mut upper_entry: Option<(&HClass, String)> = None;
        let mut h1_best: Option<(u64, String)> = None;
        let mut h2_best: Option<(u64, String)> = None;
        for e in &entries {
            let mv = min_mixed_volume_seeded(&e.graph, Formulation::Augmented, seed)?.mv;
            if mv > upper || upper_entry.is_none() {
                upper = mv;
                upper_entry = Some((&e.class, e.sequence.compact()));
            }
            let slot = match e.class {
                HClass::H1 => &mut h1_best,
                HClass::H2 => &mut h2_best,
            };
            if slot.as_ref().map_or(true, |(v, _)| mv > *v) {
                *slot = Some((mv, e.sequence.compact()));
            }
        }
        let lower = bounds::table_lower(dim_t, n)?;
        let (class, seq) = upper_entry.expect("catalog is never empty");
        let fmt_opt = |o: &Option<(u64, String)>| match o {
            None => (String::new(), String::new()),
            Some((v, s)) => (v.to_string(), s.clone()),
        };
        let (h1v, h1s) = fmt_opt(&h1_best);
        let (h2v, h2s) = fmt_opt(&h2_best);
        csv.push_str(&format!(
            "{dim},{n},{lower},{upper},{class:?},{seq},{h1v},{h1s},{h2v},{h2s}\n"
        ));
    }
    match out {
        None => print!("{csv}"),
        Some(p) => std::fs::write(p, csv)?,
    }
    Ok(())
}

fn cmd_witness(graph: String, dim: Option<u8>, pinning: usize) -> Result<()> {
    let g = load_graph(&graph, dim)?;
    let candidates = pinning_candidates(&g);
    let p = candidates
        .get(pinning)
        .ok_or_else(|| anyhow!("pinning index {pinning} out of range ({} candidates)", candidates.len()))?;
    let (witness, verified) = degeneracy_witness(&g, p, Formulation::Naive)?;
    let sys = build_system(&g, p, Formulation::Naive)?;
    let dir = FaceDirection::new(witness.direction.clone()).expect("nonzero direction");
    let faces = face_system(&sys, &dir);
    let v = serde_json::json!({
        "schema_version": rigidmv::SCHEMA_VERSION,
        "pinning": p.fixed,
        "gamma_sign": witness.gamma_sign,
        "direction": witness.direction,
        "point": witness.point,
        "face_supports": faces,
        "verified": verified,
    });
    emit(&v, None)
}

fn cmd_conjecture_scan(dim: u8, n_max: u8, seed: u64, allow_long: bool) -> Result<()> {
    let dim_t = parse_dim(dim)?;
    check_budget(n_max, allow_long)?;
    let entries = generate_all(dim_t, n_max, &Default::default())?;
    let records = bounds::conjecture_scan(&entries, seed)?;
    let violations: Vec<_> = records.iter().filter(|r| r.violation).collect();
    let v = serde_json::json!({
        "schema_version": rigidmv::SCHEMA_VERSION,
        "dim": dim,
        "n_max": n_max,
        "steps_checked": records.len(),
        "violations": violations.len(),
        "records": records,
    });
    emit(&v, None)?;
    if !violations.is_empty() {
        std::process::exit(3);
    }
    Ok(())
}

fn cmd_cache_gc(cache: CacheArgs) -> Result<()> {
    let Some(mut store) = cache.open()? else {
        bail!("no cache directory configured (flag --cache-dir or ${CACHE_ENV})");
    };
    let dropped = store.gc()?;
    emit(
        &serde_json::json!({
            "schema_version": rigidmv::SCHEMA_VERSION,
            "dropped": dropped,
            "kept": store.len(),
        }),
        None,
    )
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Enumerate { dim, n, out, allow_long, budget_secs } => {
            cmd_enumerate(dim, n, out, allow_long, budget_secs)
        }
        Cmd::MixedVolume { graph, supports, dim, formulation, seed, pinning, cache } => {
            cmd_mixed_volume(graph, supports, dim, formulation, seed, pinning, cache)
        }
        Cmd::Bounds { graph, dim, with_naive, seed, cache } => {
            cmd_bounds(graph, dim, with_naive, seed, cache)
        }
        Cmd::Table { dim, n_max, out, seed, allow_long } => {
            cmd_table(dim, n_max, out, seed, allow_long)
        }
        Cmd::Witness { graph, dim, pinning } => cmd_witness(graph, dim, pinning),
        Cmd::ConjectureScan { dim, n_max, seed, allow_long } => {
            cmd_conjecture_scan(dim, n_max, seed, allow_long)
        }
        Cmd::Cache { cmd: CacheCmd::Gc { cache } } => cmd_cache_gc(cache),
    };
    if let Err(e) = result {
        let payload = serde_json::json!({
            "error": e.to_string(),
            "detail": format!("{e:#}"),
        });
        eprintln!("{}", serde_json::to_string(&payload).unwrap());
        std::process::exit(1);
    }
}
