//! Rules and search for Byzantine chess (regular and symmetric setups) and
//! the circular FIDE hybrid, plus a retrograde solver for small endings.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, the text
//! protocol and the command line live in the `zatrikion` crate.

#![no_std]

extern crate alloc;

pub mod adjudicator;
pub mod attacks;
pub mod board;
pub mod movegen;
pub mod position;
mod zobrist;

pub use adjudicator::{game_status, is_bare, DrawReason, GameStatus};
pub use board::{advance, format_coord, parse_coord, square_parity, Color, Coord, PawnDir, Piece, PieceKind, RuleConfig, Variant};
pub use movegen::{apply_move, is_attacked, legal_moves, perft, pseudo_legal_moves, undo_move, Annihilation, Move, MoveError, UndoToken};
pub use position::{initial_position, Position, PositionError, Setup};
pub mod eval;
pub mod search;

pub use eval::{evaluate, EvalParams, PieceValues};
pub use search::{search, Engine, SearchLimits, SearchResult, MATE};
pub mod harness;

pub use harness::{play_game, run_match, GameRecord, MatchConfig, MatchStats};
pub mod oracle;
