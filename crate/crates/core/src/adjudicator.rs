//! Terminal-state detection: mate, stalemate, the bare-king ladder and
//! repetition.

use core::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{Color, PieceKind};
use crate::movegen::{self, Move};
use crate::position::Position;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum DrawReason {
    TwoBareKings,
    Repetition,
    NoCaptureLimit,
    PlyCap,
    InsufficientForce,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GameStatus {
    Ongoing,
    Mate(Color),
    StalemateWin(Color),
    StalemateDraw,
    BareKingWin(Color),
    Draw(DrawReason),
}

impl GameStatus {
    pub fn is_terminal(self) -> bool {
        self != GameStatus::Ongoing
    }

    pub fn winner(self) -> Option<Color> {
        match self {
            GameStatus::Mate(c) | GameStatus::StalemateWin(c) | GameStatus::BareKingWin(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_draw(self) -> bool {
        matches!(self, GameStatus::StalemateDraw | GameStatus::Draw(_))
    }

    /// `1-0`, `0-1`, `1/2-1/2` or `*`.
    pub fn result(self) -> &'static str {
        match self {
            GameStatus::Ongoing => "*",
            _ => match self.winner() {
                Some(Color::White) => "1-0",
                Some(Color::Black) => "0-1",
                None => "1/2-1/2",
            },
        }
    }

    pub fn reason(self) -> &'static str {
        match self {
            GameStatus::Ongoing => "ongoing",
            GameStatus::Mate(_) => "mate",
            GameStatus::StalemateWin(_) => "stalemate",
            GameStatus::StalemateDraw => "stalemate",
            GameStatus::BareKingWin(_) => "bare-king",
            GameStatus::Draw(DrawReason::TwoBareKings) => "two-bare-kings",
            GameStatus::Draw(DrawReason::Repetition) => "repetition",
            GameStatus::Draw(DrawReason::NoCaptureLimit) => "no-capture",
            GameStatus::Draw(DrawReason::PlyCap) => "ply-cap",
            GameStatus::Draw(DrawReason::InsufficientForce) => "insufficient-force",
        }
    }

    /// Inverse of the `Display` form.
    pub fn parse(text: &str) -> Option<GameStatus> {
        if text == "ongoing" {
            return Some(GameStatus::Ongoing);
        }
        let (result, reason) = text.split_once(' ')?;
        let winner = match result {
            "1-0" => Some(Color::White),
            "0-1" => Some(Color::Black),
            "1/2-1/2" => None,
            _ => return None,
        };
        let status = match (winner, reason) {
            (Some(c), "mate") => GameStatus::Mate(c),
            (Some(c), "stalemate") => GameStatus::StalemateWin(c),
            (Some(c), "bare-king") => GameStatus::BareKingWin(c),
            (None, "stalemate") => GameStatus::StalemateDraw,
            (None, "two-bare-kings") => GameStatus::Draw(DrawReason::TwoBareKings),
            (None, "repetition") => GameStatus::Draw(DrawReason::Repetition),
            (None, "no-capture") => GameStatus::Draw(DrawReason::NoCaptureLimit),
            (None, "ply-cap") => GameStatus::Draw(DrawReason::PlyCap),
            (None, "insufficient-force") => GameStatus::Draw(DrawReason::InsufficientForce),
            _ => return None,
        };
        Some(status)
    }
}

/// `ongoing`, or result and reason code such as `1-0 bare-king`.
impl fmt::Display for GameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameStatus::Ongoing => f.write_str("ongoing"),
            _ => write!(f, "{} {}", self.result(), self.reason()),
        }
    }
}

/// True iff `color` has nothing but its king.
pub fn is_bare(pos: &Position, color: Color) -> bool {
    pos.piece_count(color) == 1
}

/// Whether a legal move of the side to move takes the opponent's last
/// non-king piece.
fn has_riposte(pos: &Position, legal: &[Move]) -> bool {
    let them = pos.side_to_move().opposite();
    pos.piece_count(them) == 2 && legal.iter().any(|m| m.captured.is_some_and(|p| p.kind() != PieceKind::King))
}

/// Status given the legal moves of the side to move.
pub fn status_with_moves(pos: &Position, legal: &[Move]) -> GameStatus {
    classify(pos, !legal.is_empty(), || has_riposte(pos, legal))
}

/// The adjudication ladder. `riposte` is only consulted when the side to
/// move is bare and must say whether it can take the opponent's last
/// non-king piece.
pub(crate) fn classify(pos: &Position, has_legal_move: bool, riposte: impl FnOnce() -> bool) -> GameStatus {
    let us = pos.side_to_move();
    let them = us.opposite();
    let rules = pos.rules();
    if !has_legal_move {
        return if movegen::in_check(pos) {
            GameStatus::Mate(them)
        } else if rules.stalemate_is_win {
            GameStatus::StalemateWin(them)
        } else {
            GameStatus::StalemateDraw
        };
    }
    let (us_bare, them_bare) = (is_bare(pos, us), is_bare(pos, them));
    if us_bare && them_bare {
        return GameStatus::Draw(DrawReason::TwoBareKings);
    }
    if rules.bare_king_rule {
        if us_bare {
            return if pos.piece_count(them) == 2 && riposte() {
                GameStatus::Draw(DrawReason::TwoBareKings)
            } else {
                GameStatus::BareKingWin(them)
            };
        }
        // Only reachable when a side strips itself through annihilation.
        if them_bare {
            return GameStatus::BareKingWin(us);
        }
    }
    if rules.threefold_repetition_draw && pos.repetitions() >= 2 {
        return GameStatus::Draw(DrawReason::Repetition);
    }
    GameStatus::Ongoing
}

pub fn game_status(pos: &Position) -> GameStatus {
    status_with_moves(pos, &movegen::legal_moves(pos))
}
