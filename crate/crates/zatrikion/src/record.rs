//! Game record text: `key value` header lines, a blank line, then the
//! numbered move list.
//!
//! ```text
//! variant byzantine-regular
//! seed 7
//! game 3
//! white-seat 1
//! no-capture-limit off
//! ply-cap 400
//! result 1/2-1/2 ply-cap
//!
//! 1. c1b1 n4m4
//! 2. e3c4 l1m1
//! ```

use std::fmt::Write as _;

use zatrikion_core::harness::{self, GameRecord, HarnessError};
use zatrikion_core::{GameStatus, Variant};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header field '{0}'")]
    Missing(&'static str),
    #[error("replay: {0}")]
    Replay(#[from] HarnessError),
    #[error("recorded result {recorded} but replay gives {replayed}")]
    ResultMismatch { recorded: GameStatus, replayed: GameStatus },
}

pub fn export_record(record: &GameRecord) -> String {
    let mut out = String::new();
    let limit = record.no_capture_limit.map_or_else(|| "off".to_string(), |n| n.to_string());
    writeln!(out, "variant {}", record.variant.name()).unwrap();
    writeln!(out, "seed {}", record.seed).unwrap();
    writeln!(out, "game {}", record.game_index).unwrap();
    writeln!(out, "white-seat {}", record.white_seat).unwrap();
    writeln!(out, "no-capture-limit {limit}").unwrap();
    writeln!(out, "ply-cap {}", record.ply_cap).unwrap();
    writeln!(out, "result {}", record.result).unwrap();
    out.push('\n');
    for (i, pair) in record.moves.chunks(2).enumerate() {
        writeln!(out, "{}. {}", i + 1, pair.join(" ")).unwrap();
    }
    out
}

/// Parses one record. Does not replay it; see [`verify_record`].
pub fn parse_record(text: &str) -> Result<GameRecord, RecordError> {
    let mut variant = None;
    let mut seed = None;
    let mut game = None;
    let mut seat = None;
    let mut limit = None;
    let mut cap = None;
    let mut result = None;
    let mut moves = Vec::new();
    let mut in_moves = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| RecordError::Syntax { line, message };
        let raw = raw.trim();
        if raw.is_empty() {
            in_moves = variant.is_some();
            continue;
        }
        if in_moves {
            let mut tokens = raw.split_whitespace();
            let number = tokens.next().unwrap();
            let expected = format!("{}.", moves.len() / 2 + 1);
            if number != expected || moves.len() % 2 != 0 {
                return Err(err(format!("expected move number {expected}")));
            }
            let pair: Vec<String> = tokens.map(str::to_string).collect();
            if pair.is_empty() || pair.len() > 2 {
                return Err(err("expected one or two moves".into()));
            }
            moves.extend(pair);
            continue;
        }
        let (key, value) = raw
            .split_once(' ')
            .ok_or_else(|| err(format!("expected 'key value', found '{raw}'")))?;
        let number = |v: &str| v.parse::<u64>().map_err(|_| err(format!("bad number '{v}'")));
        match key {
            "variant" => variant = Some(value.parse::<Variant>().map_err(|e| err(e.to_string()))?),
            "seed" => seed = Some(number(value)?),
            "game" => game = Some(number(value)? as u32),
            "white-seat" => seat = Some(number(value)? as u32),
            "no-capture-limit" => limit = Some(if value == "off" { None } else { Some(number(value)? as u32) }),
            "ply-cap" => cap = Some(number(value)? as u32),
            "result" => result = Some(GameStatus::parse(value).ok_or_else(|| err(format!("bad result '{value}'")))?),
            _ => return Err(err(format!("unknown header field '{key}'"))),
        }
    }
    Ok(GameRecord {
        variant: variant.ok_or(RecordError::Missing("variant"))?,
        seed: seed.ok_or(RecordError::Missing("seed"))?,
        game_index: game.ok_or(RecordError::Missing("game"))?,
        white_seat: seat.ok_or(RecordError::Missing("white-seat"))?,
        no_capture_limit: limit.ok_or(RecordError::Missing("no-capture-limit"))?,
        ply_cap: cap.ok_or(RecordError::Missing("ply-cap"))?,
        moves,
        result: result.ok_or(RecordError::Missing("result"))?,
    })
}

/// Replays the moves and checks the recorded result.
pub fn verify_record(record: &GameRecord) -> Result<(), RecordError> {
    let (_, replayed) = harness::replay(record)?;
    if replayed != record.result {
        return Err(RecordError::ResultMismatch {
            recorded: record.result,
            replayed,
        });
    }
    Ok(())
}

/// Splits a file holding several records separated by `---` lines.
pub fn parse_records(text: &str) -> Result<Vec<GameRecord>, RecordError> {
    text.split("\n---\n")
        .filter(|chunk| !chunk.trim().is_empty())
        .map(parse_record)
        .collect()
}

pub fn export_records(records: &[GameRecord]) -> String {
    records.iter().map(export_record).collect::<Vec<_>>().join("---\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use zatrikion_core::{DrawReason, SearchLimits};

    fn sample() -> GameRecord {
        let mut config = harness::MatchConfig::new(Variant::ByzantineRegular, 1, SearchLimits::depth(1), 5);
        config.ply_cap = 9;
        harness::play_game(&config, 0, None).unwrap()
    }

    #[test]
    fn roundtrip_and_replay() {
        let record = sample();
        assert_eq!(record.plies(), 9);
        assert_eq!(record.result, GameStatus::Draw(DrawReason::PlyCap));
        let text = export_record(&record);
        assert!(text.contains("result 1/2-1/2 ply-cap\n\n1. "), "{text}");
        let back = parse_record(&text).unwrap();
        assert_eq!(back, record);
        verify_record(&back).unwrap();
    }

    #[test]
    fn tampered_result_is_caught() {
        let mut record = sample();
        record.result = GameStatus::Mate(zatrikion_core::Color::White);
        assert!(matches!(verify_record(&record), Err(RecordError::ResultMismatch { .. })));
    }

    #[test]
    fn several_records() {
        let a = sample();
        let mut b = sample();
        b.game_index = 1;
        let text = export_records(&[a.clone(), b.clone()]);
        assert_eq!(parse_records(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = export_record(&sample()).replace("2. ", "3. ");
        assert!(matches!(parse_record(&text), Err(RecordError::Syntax { line: 10, .. })));
        assert_eq!(parse_record("seed 1\n"), Err(RecordError::Missing("variant")));
    }
}
