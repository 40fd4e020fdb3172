//! Match statistics as JSON or CSV.
//!
//! JSON is the serde form of [`StatsReport`] tagged with
//! `"schema": "zatrikion-stats/1"`. CSV is a header row plus one data row:
//!
//! `variant,games,+,=,-,white_mate,white_stalemate,white_bare_king,black_mate,black_stalemate,black_bare_king,draw_two_bare_kings,draw_repetition,draw_no_capture,draw_ply_cap,draw_stalemate,draw_insufficient_force,total_plies,mate_bonus,white_score,black_score`
//!
//! `+`, `=` and `-` are White wins, draws and Black wins.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use zatrikion_core::harness::{score, DrawReasons, MatchStats, ScoreTable, WinReasons};
use zatrikion_core::Variant;

pub const SCHEMA: &str = "zatrikion-stats/1";

const CSV_HEADER: [&str; 21] = [
    "variant",
    "games",
    "+",
    "=",
    "-",
    "white_mate",
    "white_stalemate",
    "white_bare_king",
    "black_mate",
    "black_stalemate",
    "black_bare_king",
    "draw_two_bare_kings",
    "draw_repetition",
    "draw_no_capture",
    "draw_ply_cap",
    "draw_stalemate",
    "draw_insufficient_force",
    "total_plies",
    "mate_bonus",
    "white_score",
    "black_score",
];

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Format, StatsError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(StatsError::Format(format!("unknown format '{s}', expected json or csv"))),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StatsError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Format(String),
}

/// Statistics plus the score table under the chosen scheme.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct StatsReport {
    pub schema: String,
    pub stats: MatchStats,
    pub mate_bonus: bool,
    pub score: ScoreTable,
}

impl StatsReport {
    pub fn new(stats: MatchStats, mate_bonus: bool) -> StatsReport {
        StatsReport {
            schema: SCHEMA.to_string(),
            score: score(&stats, mate_bonus),
            stats,
            mate_bonus,
        }
    }
}

pub fn export_stats(report: &StatsReport, format: Format) -> Result<String, StatsError> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(report)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let s = &report.stats;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            let mut row = vec![s.variant.name().to_string()];
            let counts = [
                s.games,
                s.white_wins,
                s.draws,
                s.black_wins,
                s.white_win_reasons.mate,
                s.white_win_reasons.stalemate,
                s.white_win_reasons.bare_king,
                s.black_win_reasons.mate,
                s.black_win_reasons.stalemate,
                s.black_win_reasons.bare_king,
                s.draw_reasons.two_bare_kings,
                s.draw_reasons.repetition,
                s.draw_reasons.no_capture,
                s.draw_reasons.ply_cap,
                s.draw_reasons.stalemate,
                s.draw_reasons.insufficient_force,
            ];
            row.extend(counts.iter().map(u32::to_string));
            row.push(s.total_plies.to_string());
            row.push(report.mate_bonus.to_string());
            row.push(report.score.white.to_string());
            row.push(report.score.black.to_string());
            w.write_record(&row)?;
            let bytes = w.into_inner().map_err(|e| StatsError::Format(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn import_stats(text: &str, format: Format) -> Result<StatsReport, StatsError> {
    match format {
        Format::Json => {
            let report: StatsReport = serde_json::from_str(text)?;
            if report.schema != SCHEMA {
                return Err(StatsError::Format(format!("unsupported schema '{}'", report.schema)));
            }
            Ok(report)
        }
        Format::Csv => {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            if r.headers()?.iter().ne(CSV_HEADER) {
                return Err(StatsError::Format("unexpected csv header".into()));
            }
            let row = r
                .records()
                .next()
                .ok_or_else(|| StatsError::Format("csv has no data row".into()))??;
            let field = |i: usize| row.get(i).unwrap_or("");
            let bad = |i: usize| StatsError::Format(format!("column '{}': bad value '{}'", CSV_HEADER[i], field(i)));
            let n = |i: usize| field(i).parse::<u32>().map_err(|_| bad(i));
            let variant: Variant = field(0).parse().map_err(|_| bad(0))?;
            let stats = MatchStats {
                variant,
                games: n(1)?,
                white_wins: n(2)?,
                draws: n(3)?,
                black_wins: n(4)?,
                white_win_reasons: WinReasons {
                    mate: n(5)?,
                    stalemate: n(6)?,
                    bare_king: n(7)?,
                },
                black_win_reasons: WinReasons {
                    mate: n(8)?,
                    stalemate: n(9)?,
                    bare_king: n(10)?,
                },
                draw_reasons: DrawReasons {
                    two_bare_kings: n(11)?,
                    repetition: n(12)?,
                    no_capture: n(13)?,
                    ply_cap: n(14)?,
                    stalemate: n(15)?,
                    insufficient_force: n(16)?,
                },
                total_plies: field(17).parse().map_err(|_| bad(17))?,
            };
            let mate_bonus = field(18).parse().map_err(|_| bad(18))?;
            Ok(StatsReport::new(stats, mate_bonus))
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), StatsError> {
    fs::write(path, text).map_err(|source| StatsError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_file(path: &Path) -> Result<String, StatsError> {
    fs::read_to_string(path).map_err(|source| StatsError::Io {
        path: path.to_path_buf(),
        source,
    })
}
