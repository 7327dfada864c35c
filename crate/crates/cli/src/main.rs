use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mforge_core::constructions::{self, DensityClass, NamedMatroid};
use mforge_core::io::{read_matroid, to_value, write_matroid};
use mforge_core::iso::are_isomorphic;
use mforge_core::minor::{has_minor, longest_line_minor};
use mforge_core::representability::{
    eventual_base, spike_rep_predicate, spike_witness_search, swirl_rep_predicate, swirl_witness_search,
    ClassSpec,
};
use mforge_core::verify::{run_suite, Caps, Suite, SuiteConfig};
use mforge_core::{Error, Matroid};

#[derive(Parser)]
#[command(name = "mforge", version, about = "Matroid constructions, minor queries and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pg,
    Ag,
    Uniform,
    Spike,
    Swirl,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    Spike,
    Swirl,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named matroid and write it as JSON.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated `key=value` pairs, e.g. `n=3,q=2` or `q=2,class=lcirc,n=3`.
        #[arg(long, default_value = "")]
        params: String,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of points, rank and longest line of a matroid.
    Eps {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Whether a matroid has more points than `PG(r-1, q)`.
    Density {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Search for a minor of `host` isomorphic to `target`.
    HasMinor {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Test two matroids for isomorphism.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Representability of the free spike or swirl of rank `k` over `GF(q)`.
    Rep {
        #[arg(long, value_enum)]
        kind: RepKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        /// Also search the group for an explicit witness.
        #[arg(long)]
        witness: bool,
    },
    /// Eventual base of a class given by its excluded lines, spikes and swirls.
    EventualBase {
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        spikes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        swirls: Vec<usize>,
    },
    /// Run a verification suite and stream its report as JSON lines.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Cap overrides such as `max_ground=30,max_rank=4`.
        #[arg(long)]
        caps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mforge: {e}");
            ExitCode::from(2)
        }
    }
}

fn print(v: &Value) -> Result<Verdict, Error> {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
    Ok(Verdict::Pass)
}

fn params(s: &str) -> Result<BTreeMap<String, String>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::BadParams(format!("`{p}` is not key=value")))
        })
        .collect()
}

fn get<T: std::str::FromStr>(p: &BTreeMap<String, String>, key: &str) -> Result<T, Error> {
    let raw = p
        .get(key)
        .ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))?;
    raw.parse()
        .map_err(|_| Error::BadParams(format!("parameter `{key}` has bad value `{raw}`")))
}

fn construct(kind: Kind, p: &BTreeMap<String, String>) -> Result<NamedMatroid, Error> {
    match kind {
        Kind::Pg => constructions::pg(get(p, "n")?, get(p, "q")?),
        Kind::Ag => constructions::ag(get(p, "n")?, get(p, "q")?),
        Kind::Uniform => constructions::uniform(get(p, "r")?, get(p, "n")?),
        Kind::Spike => constructions::free_spike(get(p, "k")?),
        Kind::Swirl => constructions::free_swirl(get(p, "k")?),
        Kind::Witness => {
            let class: DensityClass = get::<String>(p, "class")?.parse()?;
            constructions::density_witness(get(p, "q")?, class, get(p, "n")?)
        }
    }
}

fn summary(m: &Matroid) -> Result<Value, Error> {
    Ok(json!({
        "n": m.ground_size(),
        "rank": m.rank_total(),
        "eps": m.epsilon(),
        "simple": m.is_simple(),
        "longest_line": longest_line_minor(m)?,
    }))
}

fn load(path: &Path) -> Result<Matroid, Error> {
    read_matroid(path)
}

fn run(command: Command) -> Result<Verdict, Error> {
    match command {
        Command::Construct { kind, params: raw, out } => {
            let named = construct(kind, &params(&raw)?)?;
            match out {
                Some(path) => {
                    write_matroid(&named.matroid, &path)?;
                    eprintln!("wrote {} to {}", named.name, path.display());
                    Ok(Verdict::Pass)
                }
                None => {
                    println!("{}", to_value(&named.matroid)?);
                    Ok(Verdict::Pass)
                }
            }
        }
        Command::Eps { matroid } => print(&summary(&load(&matroid)?)?),
        Command::Density { matroid, q } => {
            if q < 2 {
                return Err(Error::BadParams("q must be at least 2".into()));
            }
            let m = load(&matroid)?;
            let mut v = summary(&m)?;
            v["q"] = json!(q);
            v["q_dense"] = json!(m.is_q_dense(q));
            print(&v)
        }
        Command::HasMinor { host, target } => {
            let (h, t) = (load(&host)?, load(&target)?);
            let start = Instant::now();
            let found = has_minor(&h, &t)?;
            let verified = found.as_ref().map(|w| w.verify(&h, &t));
            print(&json!({
                "found": found.is_some(),
                "verified": verified,
                "witness": found,
                "elapsed_ms": start.elapsed().as_millis(),
            }))
        }
        Command::Iso { a, b } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            let cert = are_isomorphic(&ma, &mb)?;
            print(&json!({ "isomorphic": cert.is_some(), "certificate": cert }))
        }
        Command::Rep { kind, k, q, witness } => {
            let (representable, search) = match kind {
                RepKind::Spike => (spike_rep_predicate(k, q)?, witness.then(|| spike_witness_search(k, q))),
                RepKind::Swirl => (swirl_rep_predicate(k, q)?, witness.then(|| swirl_witness_search(k, q))),
            };
            let mut v = json!({ "k": k, "q": q, "representable": representable });
            if let Some(search) = search {
                v["witness"] = json!(search?);
            }
            print(&v)
        }
        Command::EventualBase { ell, spikes, swirls } => {
            let spec = ClassSpec {
                line_ell: ell,
                spike_ranks: spikes.into_iter().collect(),
                swirl_ranks: swirls.into_iter().collect(),
            };
            print(&json!(eventual_base(&spec)?))
        }
        Command::Verify { suite, seed, jobs, caps, out } => {
            let suite: Suite = suite.parse()?;
            let mut caps_value = Caps::from_env()?;
            if let Some(c) = caps {
                caps_value = caps_value.with_overrides(&c)?;
            }
            let config = SuiteConfig { suite, seed, caps: caps_value, jobs };
            let report = run_suite(&config)?;
            let io_err = |e: io::Error| Error::Io(e.to_string());
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    report.write_jsonl(&mut w).map_err(io_err)?;
                    w.flush().map_err(io_err)?;
                }
                None => report.write_jsonl(&mut io::stdout().lock()).map_err(io_err)?,
            }
            eprintln!(
                "{}: {} ({} cases, {} failed, {} ms)",
                suite,
                if report.pass { "pass" } else { "FAIL" },
                report.cases.len(),
                report.failed().count(),
                report.elapsed_ms
            );
            Ok(if report.pass { Verdict::Pass } else { Verdict::Fail })
        }
    }
}
