//! cFEN: four ring strings (ring 1 first) of sixteen squares each, then side
//! to move, en-passant square, no-capture clock and fullmove number.
//!
//! Pawns are `P` (clockwise) or `S` (counterclockwise). The variant is not
//! part of the text; callers supply it.

use std::fmt::Write as _;

use zatrikion_core::{Color, Coord, PawnDir, Piece, PieceKind, Position, PositionError, RuleConfig, Setup, Variant};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum CfenError {
    #[error("expected 5 fields, found {0}")]
    FieldCount(usize),
    #[error("expected 4 rings, found {0}")]
    RingCount(usize),
    #[error("ring {ring} has {squares} squares, expected 16")]
    RingLength { ring: usize, squares: usize },
    #[error("ring {ring}, character {index}: unknown piece letter '{letter}'")]
    UnknownLetter { ring: usize, index: usize, letter: char },
    #[error("field 2: side to move must be 'w' or 'b', found '{0}'")]
    SideToMove(String),
    #[error("field 3: bad en-passant square '{0}'")]
    EnPassant(String),
    #[error("field {field}: bad number '{text}'")]
    Number { field: usize, text: String },
    #[error(transparent)]
    Position(#[from] PositionError),
}

fn letter(p: Piece) -> char {
    let c = match p.pawn_dir() {
        Some(PawnDir::Clockwise) => 'P',
        Some(PawnDir::Counterclockwise) => 'S',
        None => p.kind().letter(),
    };
    if p.color() == Color::White {
        c
    } else {
        c.to_ascii_lowercase()
    }
}

fn piece(c: char) -> Option<Piece> {
    let color = if c.is_ascii_uppercase() { Color::White } else { Color::Black };
    Some(match c.to_ascii_uppercase() {
        'P' => Piece::pawn(color, PawnDir::Clockwise),
        'S' => Piece::pawn(color, PawnDir::Counterclockwise),
        'K' => Piece::new(color, PieceKind::King),
        'Q' => Piece::new(color, PieceKind::Queen),
        'R' => Piece::new(color, PieceKind::Rook),
        'B' => Piece::new(color, PieceKind::Bishop),
        'N' => Piece::new(color, PieceKind::Knight),
        _ => return None,
    })
}

pub fn format_cfen(pos: &Position) -> String {
    let mut out = String::new();
    for ring in 1..=4 {
        if ring > 1 {
            out.push('/');
        }
        let mut empty = 0;
        for file in 0..16 {
            match pos.piece_at(Coord::new(ring, file).expect("on board")) {
                None => empty += 1,
                Some(p) => {
                    if empty > 0 {
                        write!(out, "{empty}").unwrap();
                        empty = 0;
                    }
                    out.push(letter(p));
                }
            }
        }
        if empty > 0 {
            write!(out, "{empty}").unwrap();
        }
    }
    let side = if pos.side_to_move() == Color::White { 'w' } else { 'b' };
    let ep = pos.ep_target().map_or_else(|| "-".to_string(), |c| c.to_string());
    write!(out, " {side} {ep} {} {}", pos.no_capture_clock(), pos.fullmove()).unwrap();
    out
}

/// Parses with the default rules of `variant`.
pub fn parse_cfen(text: &str, variant: Variant) -> Result<Position, CfenError> {
    parse_cfen_with(text, variant, RuleConfig::for_variant(variant))
}

pub fn parse_cfen_with(text: &str, variant: Variant, rules: RuleConfig) -> Result<Position, CfenError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(CfenError::FieldCount(fields.len()));
    }
    let rings: Vec<&str> = fields[0].split('/').collect();
    if rings.len() != 4 {
        return Err(CfenError::RingCount(rings.len()));
    }
    let mut setup = Setup::new(variant);
    setup.rules = rules;
    for (r, text) in rings.iter().enumerate() {
        let ring = r + 1;
        let mut file = 0usize;
        let mut run = 0usize;
        for (index, c) in text.chars().enumerate() {
            if let Some(d) = c.to_digit(10) {
                run = run * 10 + d as usize;
                continue;
            }
            file += std::mem::take(&mut run);
            let p = piece(c).ok_or(CfenError::UnknownLetter { ring, index, letter: c })?;
            if file < 16 {
                setup.put(Coord::new(ring as u8, file as u8).expect("on board"), p);
            }
            file += 1;
        }
        file += run;
        if file != 16 {
            return Err(CfenError::RingLength { ring, squares: file });
        }
    }
    setup.side_to_move = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        other => return Err(CfenError::SideToMove(other.into())),
    };
    setup.ep_target = match fields[2] {
        "-" => None,
        other => Some(other.parse().map_err(|_| CfenError::EnPassant(other.into()))?),
    };
    let number = |field: usize| {
        fields[field - 1].parse::<u32>().map_err(|_| CfenError::Number {
            field,
            text: fields[field - 1].into(),
        })
    };
    setup.no_capture_clock = number(4)?;
    setup.fullmove = number(5)?;
    Ok(setup.build()?)
}
