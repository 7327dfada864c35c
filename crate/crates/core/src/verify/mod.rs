//! Batch verification: a deterministic corpus, one suite per checked
//! property, and JSON-lines reports.

mod corpus;
mod suites;

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use corpus::{corpus_generate, CorpusEntry};

/// Name of the generator behind every seeded choice.
pub const PRNG_NAME: &str = "ChaCha8 (rand_chacha, seed_from_u64)";

/// Environment variable overriding the default caps.
pub const CAPS_ENV: &str = "MFORGE_CAPS";

/// Size limits for corpus members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_ground: usize,
    pub max_rank: usize,
    pub max_bases: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ground: 40,
            max_rank: 5,
            max_bases: 5000,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `MFORGE_CAPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => s.parse(),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` pairs separated by commas on top of `self`.
    pub fn with_overrides(mut self, s: &str) -> Result<Self> {
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("cap `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::BadParams(format!("cap `{part}` needs an integer value")))?;
            match key.trim() {
                "max_ground" => self.max_ground = value.min(64),
                "max_rank" => self.max_rank = value.min(8),
                "max_bases" => self.max_bases = value,
                other => return Err(Error::BadParams(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Caps::default().with_overrides(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FieldAxioms,
    RankAxioms,
    Kung,
    Lemma4,
    Lemma5,
    Lemma6,
    SpikeOracle,
    SwirlOracle,
    RepCross,
    GrowthWitness,
    SwirlStructure,
    SpikeStructure,
    EventualBase,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::FieldAxioms,
        Suite::RankAxioms,
        Suite::Kung,
        Suite::Lemma4,
        Suite::Lemma5,
        Suite::Lemma6,
        Suite::SpikeOracle,
        Suite::SwirlOracle,
        Suite::RepCross,
        Suite::GrowthWitness,
        Suite::SwirlStructure,
        Suite::SpikeStructure,
        Suite::EventualBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FieldAxioms => "field-axioms",
            Suite::RankAxioms => "rank-axioms",
            Suite::Kung => "kung",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma5 => "lemma5",
            Suite::Lemma6 => "lemma6",
            Suite::SpikeOracle => "spike-oracle",
            Suite::SwirlOracle => "swirl-oracle",
            Suite::RepCross => "rep-cross",
            Suite::GrowthWitness => "growth-witness",
            Suite::SwirlStructure => "swirl-structure",
            Suite::SpikeStructure => "spike-structure",
            Suite::EventualBase => "eventual-base",
        }
    }

    /// Whether the suite draws on the generated corpus.
    pub fn uses_corpus(self) -> bool {
        matches!(self, Suite::RankAxioms | Suite::Kung | Suite::Lemma4 | Suite::Lemma5)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub caps: Caps,
    /// Worker threads; 0 uses one per core.
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            seed: 0,
            caps: Caps::default(),
            jobs: 0,
        }
    }
}

/// One checked input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    /// Reproducible description of the input.
    pub descriptor: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Self-contained reproduction data, present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<Value>,
}

impl Case {
    pub(crate) fn new(descriptor: impl Into<String>, expected: Value, got: Value) -> Self {
        let pass = expected == got;
        Case {
            descriptor: descriptor.into(),
            expected,
            got,
            pass,
            witness: None,
            repro: None,
        }
    }

    pub(crate) fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    /// Attaches reproduction data when the case failed.
    pub(crate) fn with_repro(mut self, f: impl FnOnce() -> Value) -> Self {
        if !self.pass {
            self.repro = Some(f());
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub params: Value,
    pub seed: u64,
    pub caps: Caps,
    pub pass: bool,
    pub cases: Vec<Case>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn failed(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Header line, one line per case, then a summary line.
    pub fn write_jsonl(&self, out: &mut impl Write) -> std::io::Result<()> {
        let header = json!({
            "type": "header",
            "suite": self.suite,
            "params": self.params,
            "seed": self.seed,
            "caps": self.caps,
            "prng": PRNG_NAME,
        });
        writeln!(out, "{header}")?;
        for case in &self.cases {
            let mut v = serde_json::to_value(case).expect("plain data serializes");
            v.as_object_mut()
                .expect("case is an object")
                .insert("type".into(), json!("case"));
            writeln!(out, "{v}")?;
        }
        let summary = json!({
            "type": "summary",
            "suite": self.suite,
            "params": self.params,
            "pass": self.pass,
            "cases": self.cases.len(),
            "failed": self.failed().count(),
            "elapsed_ms": self.elapsed_ms,
        });
        writeln!(out, "{summary}")
    }
}

/// Runs one suite in a pool of `config.jobs` workers. Cases are sorted by
/// descriptor, so the report does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?;
    let (params, mut cases) = pool.install(|| suites::run(config))?;
    cases.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    let pass = cases.iter().all(|c| c.pass);
    Ok(Report {
        suite: config.suite,
        params,
        seed: config.seed,
        caps: config.caps,
        pass,
        cases,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parse() {
        let c: Caps = "max_ground=12, max_rank=3".parse().unwrap();
        assert_eq!(
            c,
            Caps {
                max_ground: 12,
                max_rank: 3,
                max_bases: 5000
            }
        );
        assert!("max_ground".parse::<Caps>().is_err());
        assert!("depth=3".parse::<Caps>().is_err());
        assert_eq!("".parse::<Caps>().unwrap(), Caps::default());
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), json!(s.name()));
        }
        assert_eq!("lemma7".parse::<Suite>().unwrap_err(), Error::UnknownSuite("lemma7".into()));
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::RepCross, Suite::EventualBase, Suite::SpikeStructure, Suite::SwirlStructure] {
            let report = run_suite(&SuiteConfig::new(suite)).unwrap();
            assert!(report.pass, "{suite}: {:?}", report.failed().collect::<Vec<_>>());
            let mut buf = Vec::new();
            report.write_jsonl(&mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let lines: Vec<&str> = text.lines().collect();
            assert_eq!(lines.len(), report.cases.len() + 2);
            assert!(lines[0].contains(PRNG_NAME));
            assert!(lines.last().unwrap().contains("\"type\":\"summary\""));
        }
    }
}
