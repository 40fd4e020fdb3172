//! Flat `key = value` configuration for self-play runs.
//!
//! ```text
//! # comments start with '#'
//! variant = circular-fide
//! games = 100
//! depth = 4            # and/or movetime_ms, nodes
//! seed = 7
//! diversify = random_opening 4 3   # or: jitter 20 | none
//! no_capture = off     # or a move count such as 20
//! ply_cap = 400
//! swap_colors = true
//! mate_bonus = false
//! workers = 4
//! stats = stats.json   # relative to the config file
//! format = json        # or csv
//! records = games.txt  # optional
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use zatrikion_core::harness::{Diversify, MatchConfig};
use zatrikion_core::{SearchLimits, Variant};

use crate::stats_io::Format;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("key '{key}': {message}")]
    Value { key: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// Parses `key = value` lines. Later keys override earlier ones.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, (usize, String)>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: i + 1,
            message: format!("expected 'key = value', found '{line}'"),
        })?;
        out.insert(key.trim().to_string(), (i + 1, value.trim().to_string()));
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelfplayConfig {
    pub match_config: MatchConfig,
    pub mate_bonus: bool,
    pub workers: usize,
    pub stats_path: PathBuf,
    pub format: Format,
    pub records_path: Option<PathBuf>,
}

const KEYS: [&str; 15] = [
    "variant",
    "games",
    "depth",
    "movetime_ms",
    "nodes",
    "seed",
    "diversify",
    "no_capture",
    "ply_cap",
    "swap_colors",
    "mate_bonus",
    "workers",
    "stats",
    "format",
    "records",
];

fn parse_diversify(text: &str) -> Result<Diversify, String> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let num = |s: &str| s.parse::<u32>().map_err(|_| format!("bad number '{s}'"));
    match parts.as_slice() {
        ["none"] => Ok(Diversify::None),
        ["jitter", cp] => Ok(Diversify::Jitter(num(cp)? as i32)),
        ["random_opening", plies, top] => Ok(Diversify::RandomOpening {
            plies: num(plies)?,
            top: num(top)?,
        }),
        _ => Err("expected 'none', 'jitter <cp>' or 'random_opening <plies> <top>'".into()),
    }
}

impl SelfplayConfig {
    /// `base` resolves relative output paths.
    pub fn parse(text: &str, base: &Path, default_variant: Variant) -> Result<SelfplayConfig, ConfigError> {
        let kv = parse_key_values(text)?;
        if let Some((key, (line, _))) = kv.iter().find(|(k, _)| !KEYS.contains(&k.as_str())) {
            return Err(ConfigError::Syntax {
                line: *line,
                message: format!("unknown key '{key}'"),
            });
        }
        let get = |key: &str| kv.get(key).map(|(_, v)| v.as_str());
        fn value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
            v.parse().map_err(|_| ConfigError::Value {
                key: key.into(),
                message: format!("cannot parse '{v}'"),
            })
        }
        let opt = |key: &str| -> Result<Option<u64>, ConfigError> { get(key).map(|v| value(key, v)).transpose() };

        let variant = match get("variant") {
            Some(v) => value("variant", v)?,
            None => default_variant,
        };
        let limits = SearchLimits {
            max_depth: opt("depth")?.map(|d| d as u32),
            movetime_ms: opt("movetime_ms")?,
            max_nodes: opt("nodes")?,
        };
        let mut mc = MatchConfig::new(variant, opt("games")?.unwrap_or(100) as u32, limits, opt("seed")?.unwrap_or(0));
        if let Some(v) = get("diversify") {
            mc.diversify = parse_diversify(v).map_err(|message| ConfigError::Value {
                key: "diversify".into(),
                message,
            })?;
        }
        if let Some(v) = get("no_capture") {
            mc.adjudicate_no_capture = if v == "off" { None } else { Some(value("no_capture", v)?) };
        }
        if let Some(v) = opt("ply_cap")? {
            mc.ply_cap = v as u32;
        }
        if let Some(v) = get("swap_colors") {
            mc.swap_colors = value("swap_colors", v)?;
        }
        mc.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let resolve = |p: &str| base.join(p);
        Ok(SelfplayConfig {
            match_config: mc,
            mate_bonus: get("mate_bonus").map(|v| value("mate_bonus", v)).transpose()?.unwrap_or(false),
            workers: opt("workers")?.unwrap_or(1).max(1) as usize,
            stats_path: resolve(get("stats").unwrap_or("selfplay-stats.json")),
            format: match get("format") {
                Some(v) => v.parse().map_err(|e: crate::stats_io::StatsError| ConfigError::Value {
                    key: "format".into(),
                    message: e.to_string(),
                })?,
                None => Format::Json,
            },
            records_path: get("records").map(resolve),
        })
    }
}
