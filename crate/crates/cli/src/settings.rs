//! Run settings merged from a key-value config file and command-line flags.
//!
//! The config file holds one `key = value` pair per line; `#` starts a comment.
//! Keys are the long flag names: `seed`, `max-n`, `samples`, `steps`, `claims`,
//! `out`, `format`, `workers`. A flag given on the command line wins over the file.

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use hzlab::registry::RunConfig;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub seed: Option<u64>,
    pub max_n: Option<usize>,
    pub samples: Option<usize>,
    pub steps: Option<usize>,
    pub claims: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| anyhow!("config key `{key}`: `{v}` is not a valid number"))
}

pub fn split_list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected `key = value`", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => s.seed = Some(parse_num(key, value)?),
                "max-n" => s.max_n = Some(parse_num(key, value)?),
                "samples" => s.samples = Some(parse_num(key, value)?),
                "steps" => s.steps = Some(parse_num(key, value)?),
                "workers" => s.workers = Some(parse_num(key, value)?),
                "claims" => s.claims = Some(split_list(value)),
                "out" => s.out = Some(PathBuf::from(value)),
                "format" => {
                    s.format = Some(Format::from_str(value, true).map_err(|_| anyhow!("config key `format`: unknown format `{value}`"))?)
                }
                other => bail!("config line {}: unknown key `{other}`", i + 1),
            }
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Settings::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    /// Fields set in `flags` replace those loaded here.
    pub fn overlay(self, flags: Settings) -> Settings {
        Settings {
            seed: flags.seed.or(self.seed),
            max_n: flags.max_n.or(self.max_n),
            samples: flags.samples.or(self.samples),
            steps: flags.steps.or(self.steps),
            claims: flags.claims.or(self.claims),
            out: flags.out.or(self.out),
            format: flags.format.or(self.format),
            workers: flags.workers.or(self.workers),
        }
    }

    pub fn run_config(&self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            max_n: self.max_n,
            seed: self.seed.unwrap_or(d.seed),
            samples: self.samples,
            steps: self.steps.unwrap_or(d.steps),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}
