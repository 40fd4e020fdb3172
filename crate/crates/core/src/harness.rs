//! Engine-vs-engine games and match statistics.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adjudicator::{game_status, DrawReason, GameStatus};
use crate::board::{Color, Variant};
use crate::eval::EvalParams;
use crate::movegen::{self, Move, MoveError};
use crate::position::Position;
use crate::search::{Clock, Engine, SearchControl, SearchError, SearchLimits};

/// How games of an otherwise deterministic engine are made to differ.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Diversify {
    None,
    /// Evaluation jitter of up to this many centipawns.
    Jitter(i32),
    /// For the first `plies` plies, pick uniformly among the `top` best
    /// root moves.
    RandomOpening {
        plies: u32,
        top: u32,
    },
}

impl Default for Diversify {
    fn default() -> Diversify {
        Diversify::RandomOpening { plies: 4, top: 3 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchConfig {
    pub variant: Variant,
    pub games: u32,
    pub limits: SearchLimits,
    pub seed: u64,
    pub diversify: Diversify,
    /// Draw after this many full moves (twice as many plies) without a
    /// capture. Off by default.
    pub adjudicate_no_capture: Option<u32>,
    pub ply_cap: u32,
    pub swap_colors: bool,
    pub params: EvalParams,
}

impl MatchConfig {
    pub fn new(variant: Variant, games: u32, limits: SearchLimits, seed: u64) -> MatchConfig {
        MatchConfig {
            variant,
            games,
            limits,
            seed,
            diversify: Diversify::default(),
            adjudicate_no_capture: None,
            ply_cap: 400,
            swap_colors: true,
            params: EvalParams::default(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.games == 0 {
            return Err(HarnessError::InvalidConfig("games must be at least 1".into()));
        }
        if self.ply_cap == 0 {
            return Err(HarnessError::InvalidConfig("ply_cap must be positive".into()));
        }
        if self.limits.is_empty() {
            return Err(HarnessError::InvalidConfig("no search limit set".into()));
        }
        if let Diversify::RandomOpening { top: 0, .. } = self.diversify {
            return Err(HarnessError::InvalidConfig("random opening needs top >= 1".into()));
        }
        Ok(())
    }

    /// Seat (0 or 1) of the engine playing White in game `game_index`.
    pub fn white_seat(&self, game_index: u32) -> usize {
        if self.swap_colors {
            (game_index % 2) as usize
        } else {
            0
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid match configuration: {0}")]
    InvalidConfig(String),
    #[error("game {game_index}, ply {ply}: engine played illegal move {mv}: {reason}")]
    IllegalMove {
        game_index: u32,
        ply: u32,
        mv: String,
        reason: MoveError,
    },
    #[error("game {game_index}: search failed: {source}")]
    Search { game_index: u32, source: SearchError },
    #[error("replay diverged at ply {ply}: {reason}")]
    Replay { ply: u32, reason: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GameRecord {
    pub variant: Variant,
    pub seed: u64,
    pub game_index: u32,
    pub white_seat: u32,
    pub no_capture_limit: Option<u32>,
    pub ply_cap: u32,
    pub moves: Vec<String>,
    pub result: GameStatus,
}

impl GameRecord {
    pub fn plies(&self) -> u32 {
        self.moves.len() as u32
    }

    pub fn termination(&self) -> &'static str {
        self.result.reason()
    }
}

/// Game status including the harness-level adjudications.
pub fn adjudicate(pos: &Position, plies: u32, no_capture_limit: Option<u32>, ply_cap: u32) -> GameStatus {
    let status = game_status(pos);
    if status.is_terminal() {
        return status;
    }
    if no_capture_limit.is_some_and(|n| pos.no_capture_clock() >= 2 * n) {
        return GameStatus::Draw(DrawReason::NoCaptureLimit);
    }
    if plies >= ply_cap {
        return GameStatus::Draw(DrawReason::PlyCap);
    }
    GameStatus::Ongoing
}

/// Supplies moves for one game. `seat` is 0 or 1.
pub trait MoveSource {
    fn choose(&mut self, pos: &Position, seat: usize, ply: u32, rng: &mut ChaCha8Rng) -> Result<Move, SearchError>;
}

/// Two search engines configured from a [`MatchConfig`].
pub struct EnginePlayers<'c> {
    engines: [Engine; 2],
    limits: SearchLimits,
    diversify: Diversify,
    clock: Option<&'c dyn Clock>,
}

impl<'c> EnginePlayers<'c> {
    const TT_LOG2: u32 = 17;

    pub fn new(config: &MatchConfig, clock: Option<&'c dyn Clock>) -> EnginePlayers<'c> {
        let mut params = config.params;
        if let Diversify::Jitter(cp) = config.diversify {
            params.jitter_cp = cp;
        }
        let engine = || Engine::with_table(params, Some(Self::TT_LOG2));
        EnginePlayers {
            engines: [engine(), engine()],
            limits: config.limits,
            diversify: config.diversify,
            clock,
        }
    }
}

impl MoveSource for EnginePlayers<'_> {
    fn choose(&mut self, pos: &Position, seat: usize, ply: u32, rng: &mut ChaCha8Rng) -> Result<Move, SearchError> {
        let seed = rng.next_u64();
        let engine = &mut self.engines[seat];
        if let Diversify::RandomOpening { plies, top } = self.diversify {
            if ply < plies {
                let depth = self.limits.max_depth.unwrap_or(3);
                let mut scored = engine.score_root_moves(pos, depth, seed)?;
                scored.sort_by_key(|(m, score)| (core::cmp::Reverse(*score), crate::search::mirror_rank(m)));
                let pick = rng.random_range(0..scored.len().min(top as usize));
                return Ok(scored[pick].0);
            }
        }
        let control = SearchControl {
            clock: self.clock,
            ..SearchControl::default()
        };
        Ok(engine.search(pos, &self.limits, seed, control)?.best_move)
    }
}

/// Per-game generator derived from the match seed and the game index.
pub fn game_rng(seed: u64, game_index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(game_index as u64);
    rng
}

/// Plays one game with moves from `source`.
pub fn play_game_with(config: &MatchConfig, game_index: u32, source: &mut dyn MoveSource) -> Result<GameRecord, HarnessError> {
    config.validate()?;
    let mut rng = game_rng(config.seed, game_index);
    let white_seat = config.white_seat(game_index);
    let mut pos = Position::initial(config.variant);
    let mut moves = Vec::new();
    let result = loop {
        let ply = moves.len() as u32;
        let status = adjudicate(&pos, ply, config.adjudicate_no_capture, config.ply_cap);
        if status.is_terminal() {
            break status;
        }
        let seat = if pos.side_to_move() == Color::White {
            white_seat
        } else {
            1 - white_seat
        };
        let mv = source
            .choose(&pos, seat, ply, &mut rng)
            .map_err(|source| HarnessError::Search { game_index, source })?;
        movegen::apply_move(&mut pos, &mv).map_err(|reason| HarnessError::IllegalMove {
            game_index,
            ply,
            mv: mv.to_string(),
            reason,
        })?;
        moves.push(mv.to_string());
    };
    Ok(GameRecord {
        variant: config.variant,
        seed: config.seed,
        game_index,
        white_seat: white_seat as u32,
        no_capture_limit: config.adjudicate_no_capture,
        ply_cap: config.ply_cap,
        moves,
        result,
    })
}

/// Plays game `game_index` of the match with the built-in engines. Move
/// time limits need `clock`.
pub fn play_game(config: &MatchConfig, game_index: u32, clock: Option<&dyn Clock>) -> Result<GameRecord, HarnessError> {
    play_game_with(config, game_index, &mut EnginePlayers::new(config, clock))
}

/// Replays a record through the rules and returns the final position and
/// its adjudicated status. Fails if a move is illegal or the game was
/// already over before its last move.
pub fn replay(record: &GameRecord) -> Result<(Position, GameStatus), HarnessError> {
    let mut pos = Position::initial(record.variant);
    for (ply, text) in record.moves.iter().enumerate() {
        let ply = ply as u32;
        let status = adjudicate(&pos, ply, record.no_capture_limit, record.ply_cap);
        if status.is_terminal() {
            return Err(HarnessError::Replay {
                ply,
                reason: alloc::format!("game already ended ({status})"),
            });
        }
        movegen::play(&mut pos, text).map_err(|e| HarnessError::Replay {
            ply,
            reason: e.to_string(),
        })?;
    }
    let status = adjudicate(&pos, record.plies(), record.no_capture_limit, record.ply_cap);
    Ok((pos, status))
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct WinReasons {
    pub mate: u32,
    pub stalemate: u32,
    pub bare_king: u32,
}

impl WinReasons {
    pub fn total(&self) -> u32 {
        self.mate + self.stalemate + self.bare_king
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DrawReasons {
    pub two_bare_kings: u32,
    pub repetition: u32,
    pub no_capture: u32,
    pub ply_cap: u32,
    pub stalemate: u32,
    pub insufficient_force: u32,
}

impl DrawReasons {
    pub fn total(&self) -> u32 {
        self.two_bare_kings + self.repetition + self.no_capture + self.ply_cap + self.stalemate + self.insufficient_force
    }
}

/// Aggregate results. All fields are sums, so merging is order-independent.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchStats {
    pub variant: Variant,
    pub games: u32,
    pub white_wins: u32,
    pub black_wins: u32,
    pub draws: u32,
    pub white_win_reasons: WinReasons,
    pub black_win_reasons: WinReasons,
    pub draw_reasons: DrawReasons,
    pub total_plies: u64,
}

impl MatchStats {
    pub fn new(variant: Variant) -> MatchStats {
        MatchStats {
            variant,
            games: 0,
            white_wins: 0,
            black_wins: 0,
            draws: 0,
            white_win_reasons: WinReasons::default(),
            black_win_reasons: WinReasons::default(),
            draw_reasons: DrawReasons::default(),
            total_plies: 0,
        }
    }

    pub fn record(&mut self, record: &GameRecord) {
        self.games += 1;
        self.total_plies += record.plies() as u64;
        let win = |reasons: &mut WinReasons, status| match status {
            GameStatus::Mate(_) => reasons.mate += 1,
            GameStatus::StalemateWin(_) => reasons.stalemate += 1,
            _ => reasons.bare_king += 1,
        };
        match record.result.winner() {
            Some(Color::White) => {
                self.white_wins += 1;
                win(&mut self.white_win_reasons, record.result);
            }
            Some(Color::Black) => {
                self.black_wins += 1;
                win(&mut self.black_win_reasons, record.result);
            }
            None => {
                self.draws += 1;
                let d = &mut self.draw_reasons;
                match record.result {
                    GameStatus::Draw(DrawReason::TwoBareKings) => d.two_bare_kings += 1,
                    GameStatus::Draw(DrawReason::Repetition) => d.repetition += 1,
                    GameStatus::Draw(DrawReason::NoCaptureLimit) => d.no_capture += 1,
                    GameStatus::Draw(DrawReason::PlyCap) => d.ply_cap += 1,
                    GameStatus::Draw(DrawReason::InsufficientForce) => d.insufficient_force += 1,
                    _ => d.stalemate += 1,
                }
            }
        }
    }

    pub fn decisive(&self) -> u32 {
        self.white_wins + self.black_wins
    }

    pub fn decisive_rate(&self) -> f64 {
        if self.games == 0 {
            0.0
        } else {
            self.decisive() as f64 / self.games as f64
        }
    }

    pub fn draw_rate(&self) -> f64 {
        if self.games == 0 {
            0.0
        } else {
            self.draws as f64 / self.games as f64
        }
    }

    pub fn mean_length(&self) -> f64 {
        if self.games == 0 {
            0.0
        } else {
            self.total_plies as f64 / self.games as f64
        }
    }
}

/// Points per colour.
#[derive(Copy, Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ScoreTable {
    pub white: f64,
    pub black: f64,
}

/// Standard scoring (1 / ½ / 0). With `mate_bonus` a win by mate is worth
/// 1.5 points.
pub fn score(stats: &MatchStats, mate_bonus: bool) -> ScoreTable {
    let wins = |w: &WinReasons| {
        let mate = if mate_bonus { 1.5 } else { 1.0 };
        mate * w.mate as f64 + (w.stalemate + w.bare_king) as f64
    };
    let half = 0.5 * stats.draws as f64;
    ScoreTable {
        white: wins(&stats.white_win_reasons) + half,
        black: wins(&stats.black_win_reasons) + half,
    }
}

/// Plays every game in index order.
pub fn run_match(config: &MatchConfig, clock: Option<&dyn Clock>) -> Result<(MatchStats, Vec<GameRecord>), HarnessError> {
    config.validate()?;
    let mut stats = MatchStats::new(config.variant);
    let mut records = Vec::with_capacity(config.games as usize);
    for i in 0..config.games {
        let record = play_game(config, i, clock)?;
        stats.record(&record);
        records.push(record);
    }
    Ok((stats, records))
}
