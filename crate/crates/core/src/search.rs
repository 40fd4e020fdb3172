//! Iterative-deepening alpha-beta with quiescence and a transposition table.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::sync::atomic::{AtomicBool, Ordering};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adjudicator::{self, GameStatus};
use crate::board::{Color, Coord, PieceKind};
use crate::eval::{self, EvalParams};
use crate::movegen::{self, Move};
use crate::position::Position;

/// Score of a mate delivered at the root; mate at ply `n` scores `MATE - n`.
pub const MATE: i32 = 30_000;
/// Stalemate wins score this much below a mate at the same ply.
pub const STALEMATE_MARGIN: i32 = 100;
/// Bare-king wins score this much below a mate at the same ply.
pub const BARE_KING_MARGIN: i32 = 200;
const MATE_BOUND: i32 = MATE - 1_000;
const INF: i32 = MATE + 1;
const MAX_PLY: usize = 128;

pub fn is_mate_score(score: i32) -> bool {
    score.abs() > MATE_BOUND
}

/// Any combination of limits; at least one must be set.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_depth: Option<u32>,
    pub movetime_ms: Option<u64>,
    pub max_nodes: Option<u64>,
}

impl SearchLimits {
    pub fn depth(depth: u32) -> SearchLimits {
        SearchLimits {
            max_depth: Some(depth),
            ..SearchLimits::default()
        }
    }

    pub fn movetime(ms: u64) -> SearchLimits {
        SearchLimits {
            movetime_ms: Some(ms),
            ..SearchLimits::default()
        }
    }

    pub fn nodes(nodes: u64) -> SearchLimits {
        SearchLimits {
            max_nodes: Some(nodes),
            ..SearchLimits::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.max_depth.is_none() && self.movetime_ms.is_none() && self.max_nodes.is_none()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchResult {
    pub best_move: Move,
    /// Centipawns from the side to move's point of view.
    pub score: i32,
    pub principal_variation: Vec<Move>,
    pub nodes: u64,
    pub depth_reached: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum SearchError {
    #[error("no legal moves in the root position")]
    NoLegalMoves,
    #[error("no search limit given")]
    NoLimits,
    #[error("a move time limit needs a clock")]
    NoClock,
}

/// Monotonic millisecond clock.
pub trait Clock {
    fn now_ms(&self) -> u64;
}

/// Optional hooks for interactive use.
#[derive(Default)]
pub struct SearchControl<'a> {
    pub clock: Option<&'a dyn Clock>,
    pub stop: Option<&'a AtomicBool>,
    /// Called after every completed iteration.
    pub on_iteration: Option<&'a mut dyn FnMut(&SearchResult)>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum Bound {
    Exact,
    Lower,
    Upper,
}

#[derive(Copy, Clone, Debug)]
struct Entry {
    key: u64,
    score: i32,
    mv: u16,
    depth: u8,
    bound: Bound,
}

const NO_MOVE: u16 = u16::MAX;

fn pack(m: &Move) -> u16 {
    let promo = match m.promotion {
        None => 0,
        Some(k) => k.index() as u16 + 1,
    };
    m.from.index() as u16 | (m.to.index() as u16) << 6 | promo << 12
}

struct TranspositionTable {
    entries: Vec<Option<Entry>>,
    mask: usize,
}

impl TranspositionTable {
    fn new(log2_entries: u32) -> TranspositionTable {
        let len = 1usize << log2_entries;
        TranspositionTable {
            entries: vec![None; len],
            mask: len - 1,
        }
    }

    fn probe(&self, key: u64) -> Option<Entry> {
        self.entries[key as usize & self.mask].filter(|e| e.key == key)
    }

    fn store(&mut self, entry: Entry) {
        let idx = entry.key as usize & self.mask;
        self.entries[idx] = Some(entry);
    }

    fn clear(&mut self) {
        self.entries.iter_mut().for_each(|e| *e = None);
    }
}

fn score_to_tt(score: i32, ply: usize) -> i32 {
    if score > MATE_BOUND {
        score + ply as i32
    } else if score < -MATE_BOUND {
        score - ply as i32
    } else {
        score
    }
}

fn score_from_tt(score: i32, ply: usize) -> i32 {
    if score > MATE_BOUND {
        score - ply as i32
    } else if score < -MATE_BOUND {
        score + ply as i32
    } else {
        score
    }
}

/// Tie-break key that ranks a Black move like its file-mirrored White
/// counterpart, so equal-scored alternatives resolve the same way for both
/// colours.
pub(crate) fn mirror_rank(m: &Move) -> (u8, u8, u8) {
    let square = |c: Coord| {
        let file = match m.piece.color() {
            Color::White => c.file(),
            Color::Black => 15 - c.file(),
        };
        c.ring() * 16 + file
    };
    (square(m.from), square(m.to), m.promotion.map_or(0, |k| k.index() as u8 + 1))
}

/// Search score of a finished game, side-to-move perspective.
fn terminal_score(status: GameStatus, pos: &Position, ply: usize) -> Option<i32> {
    let us = pos.side_to_move();
    let ply = ply as i32;
    let signed = |winner, margin: i32| {
        let s = MATE - margin - ply;
        if winner == us {
            s
        } else {
            -s
        }
    };
    match status {
        GameStatus::Ongoing => None,
        GameStatus::Mate(w) => Some(signed(w, 0)),
        GameStatus::StalemateWin(w) => Some(signed(w, STALEMATE_MARGIN)),
        GameStatus::BareKingWin(w) => Some(signed(w, BARE_KING_MARGIN)),
        GameStatus::StalemateDraw | GameStatus::Draw(_) => Some(0),
    }
}

/// Search state. The transposition table lives as long as the engine.
pub struct Engine {
    params: EvalParams,
    tt: Option<TranspositionTable>,
    killers: Vec<[Option<Move>; 2]>,
    pv: Vec<Vec<Move>>,
    buffers: Vec<Vec<Move>>,
    nodes: u64,
    salt: u64,
    max_nodes: u64,
    movetime_ms: Option<u64>,
    started_ms: u64,
    aborted: bool,
}

impl Engine {
    pub const DEFAULT_TT_LOG2: u32 = 18;

    pub fn new(params: EvalParams) -> Engine {
        Engine::with_table(params, Some(Engine::DEFAULT_TT_LOG2))
    }

    /// `None` disables the transposition table.
    pub fn with_table(params: EvalParams, log2_entries: Option<u32>) -> Engine {
        Engine {
            params,
            tt: log2_entries.map(TranspositionTable::new),
            killers: vec![[None; 2]; MAX_PLY + 1],
            pv: vec![Vec::new(); MAX_PLY + 1],
            buffers: Vec::new(),
            nodes: 0,
            salt: 0,
            max_nodes: u64::MAX,
            movetime_ms: None,
            started_ms: 0,
            aborted: false,
        }
    }

    pub fn params(&self) -> &EvalParams {
        &self.params
    }

    pub fn clear(&mut self) {
        if let Some(tt) = &mut self.tt {
            tt.clear();
        }
        self.killers.iter_mut().for_each(|k| *k = [None; 2]);
    }

    fn reset(&mut self, seed: u64) {
        self.nodes = 0;
        self.aborted = false;
        self.salt = ChaCha8Rng::seed_from_u64(seed).next_u64();
        self.max_nodes = u64::MAX;
        self.movetime_ms = None;
    }

    /// Static evaluation plus the seeded jitter, if enabled.
    fn evaluate(&self, pos: &Position) -> i32 {
        eval::evaluate(pos, &self.params) + eval::jitter(pos.hash(), self.salt, self.params.jitter_cp)
    }

    fn poll(&mut self, control: &SearchControl) {
        if self.nodes >= self.max_nodes {
            self.aborted = true;
        }
        if self.nodes & 1023 == 0 {
            if control.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
                self.aborted = true;
            }
            if let (Some(clock), Some(ms)) = (control.clock, self.movetime_ms) {
                if clock.now_ms().saturating_sub(self.started_ms) >= ms {
                    self.aborted = true;
                }
            }
        }
    }

    fn is_legal(pos: &mut Position, m: &Move) -> bool {
        let token = movegen::make_move(pos, m);
        let legal = !movegen::is_attacked(pos, pos.king(m.piece.color()), pos.side_to_move());
        movegen::unmake_move(pos, &token);
        legal
    }

    fn status(pos: &mut Position, pseudo: &[Move]) -> GameStatus {
        let has_legal = pseudo.iter().any(|m| Engine::is_legal(pos, m));
        let us = pos.side_to_move();
        let riposte = has_legal
            && adjudicator::is_bare(pos, us)
            && pos.piece_count(us.opposite()) == 2
            && pseudo
                .iter()
                .any(|m| m.captured.is_some_and(|p| p.kind() != PieceKind::King) && Engine::is_legal(pos, m));
        adjudicator::classify(pos, has_legal, || riposte)
    }

    fn order(&self, pos: &Position, moves: &mut [Move], tt_move: u16, ply: usize) {
        let values = self.params.values(pos.variant());
        let killers = self.killers[ply];
        moves.sort_by_key(|m| {
            let key = if pack(m) == tt_move {
                1_000_000
            } else if let Some(victim) = m.captured {
                100_000 + 16 * values.value(victim.kind()) - values.value(m.piece.kind()) / 16
            } else if m.promotion.is_some() {
                90_000
            } else if killers.contains(&Some(*m)) {
                80_000
            } else if !m.annihilated.is_empty() {
                -1_000
            } else {
                0
            };
            (Reverse(key), mirror_rank(m))
        });
    }

    fn update_pv(&mut self, ply: usize, m: Move) {
        let (head, tail) = self.pv.split_at_mut(ply + 1);
        let line = &mut head[ply];
        line.clear();
        line.push(m);
        line.extend_from_slice(&tail[0]);
    }

    fn qsearch(&mut self, pos: &mut Position, mut alpha: i32, beta: i32, ply: usize, control: &SearchControl) -> i32 {
        self.nodes += 1;
        self.poll(control);
        self.pv[ply].clear();
        if self.aborted {
            return 0;
        }
        let mut moves = self.buffers.pop().unwrap_or_default();
        moves.clear();
        movegen::generate_pseudo_legal(pos, &mut moves);
        let status = Engine::status(pos, &moves);
        if let Some(score) = terminal_score(status, pos, ply) {
            self.buffers.push(moves);
            return score;
        }
        let stand_pat = self.evaluate(pos);
        if stand_pat >= beta || ply >= MAX_PLY - 1 {
            self.buffers.push(moves);
            return stand_pat;
        }
        alpha = alpha.max(stand_pat);
        let mut best = stand_pat;
        moves.retain(|m| m.captured.is_some() || !m.annihilated.is_empty());
        self.order(pos, &mut moves, NO_MOVE, ply);
        for m in moves.iter() {
            let token = movegen::make_move(pos, m);
            if movegen::is_attacked(pos, pos.king(m.piece.color()), pos.side_to_move()) {
                movegen::unmake_move(pos, &token);
                continue;
            }
            let score = -self.qsearch(pos, -beta, -alpha, ply + 1, control);
            movegen::unmake_move(pos, &token);
            if self.aborted {
                break;
            }
            if score > best {
                best = score;
                if score > alpha {
                    alpha = score;
                    self.update_pv(ply, *m);
                    if alpha >= beta {
                        break;
                    }
                }
            }
        }
        self.buffers.push(moves);
        best
    }

    fn negamax(&mut self, pos: &mut Position, depth: u32, mut alpha: i32, beta: i32, ply: usize, control: &SearchControl) -> i32 {
        if depth == 0 {
            return self.qsearch(pos, alpha, beta, ply, control);
        }
        self.nodes += 1;
        self.poll(control);
        self.pv[ply].clear();
        if self.aborted {
            return 0;
        }
        let mut moves = self.buffers.pop().unwrap_or_default();
        moves.clear();
        movegen::generate_pseudo_legal(pos, &mut moves);
        let status = Engine::status(pos, &moves);
        if let Some(score) = terminal_score(status, pos, ply) {
            self.buffers.push(moves);
            return score;
        }
        if ply >= MAX_PLY - 1 {
            self.buffers.push(moves);
            return self.evaluate(pos);
        }

        let key = pos.hash();
        let mut tt_move = NO_MOVE;
        if let Some(entry) = self.tt.as_ref().and_then(|tt| tt.probe(key)) {
            tt_move = entry.mv;
            // Only same-depth entries may cut, so the value at a fixed depth
            // does not depend on whether the table is enabled.
            if entry.depth as u32 == depth {
                let score = score_from_tt(entry.score, ply);
                let cut = match entry.bound {
                    Bound::Exact => true,
                    Bound::Lower => score >= beta,
                    Bound::Upper => score <= alpha,
                };
                if cut {
                    self.buffers.push(moves);
                    return score;
                }
            }
        }

        self.order(pos, &mut moves, tt_move, ply);
        let original_alpha = alpha;
        let mut best = -INF;
        let mut best_move = NO_MOVE;
        for m in moves.iter() {
            let token = movegen::make_move(pos, m);
            if movegen::is_attacked(pos, pos.king(m.piece.color()), pos.side_to_move()) {
                movegen::unmake_move(pos, &token);
                continue;
            }
            let score = -self.negamax(pos, depth - 1, -beta, -alpha, ply + 1, control);
            movegen::unmake_move(pos, &token);
            if self.aborted {
                self.buffers.push(moves);
                return 0;
            }
            if score > best {
                best = score;
                best_move = pack(m);
                if score > alpha {
                    alpha = score;
                    self.update_pv(ply, *m);
                    if alpha >= beta {
                        if m.captured.is_none() && self.killers[ply][0] != Some(*m) {
                            self.killers[ply] = [Some(*m), self.killers[ply][0]];
                        }
                        break;
                    }
                }
            }
        }
        self.buffers.push(moves);

        if let Some(tt) = &mut self.tt {
            let bound = if best <= original_alpha {
                Bound::Upper
            } else if best >= beta {
                Bound::Lower
            } else {
                Bound::Exact
            };
            tt.store(Entry {
                key,
                score: score_to_tt(best, ply),
                mv: best_move,
                depth: depth.min(u8::MAX as u32) as u8,
                bound,
            });
        }
        best
    }

    fn prepare(&mut self, pos: &Position, limits: &SearchLimits, seed: u64, control: &SearchControl) -> Result<Vec<Move>, SearchError> {
        if limits.is_empty() {
            return Err(SearchError::NoLimits);
        }
        if limits.movetime_ms.is_some() && control.clock.is_none() && limits.max_depth.is_none() && limits.max_nodes.is_none() {
            return Err(SearchError::NoClock);
        }
        let mut moves = movegen::legal_moves(pos);
        if moves.is_empty() {
            return Err(SearchError::NoLegalMoves);
        }
        moves.sort_by_key(mirror_rank);
        self.reset(seed);
        self.max_nodes = limits.max_nodes.unwrap_or(u64::MAX);
        self.movetime_ms = limits.movetime_ms;
        self.started_ms = control.clock.map_or(0, |c| c.now_ms());
        Ok(moves)
    }

    /// Iterative deepening from `pos`. With identical inputs and a fresh or
    /// identically used engine the result is identical.
    pub fn search(
        &mut self,
        pos: &Position,
        limits: &SearchLimits,
        seed: u64,
        mut control: SearchControl,
    ) -> Result<SearchResult, SearchError> {
        let mut moves = self.prepare(pos, limits, seed, &control)?;
        let mut pos = pos.clone();
        let max_depth = limits.max_depth.unwrap_or(MAX_PLY as u32 - 1).clamp(1, MAX_PLY as u32 - 1);
        let mut result = SearchResult {
            best_move: moves[0],
            score: 0,
            principal_variation: vec![moves[0]],
            nodes: 0,
            depth_reached: 0,
        };
        for depth in 1..=max_depth {
            let mut alpha = -INF;
            let mut best: Option<(Move, i32)> = None;
            for m in moves.iter() {
                let token = movegen::make_move(&mut pos, m);
                let score = -self.negamax(&mut pos, depth - 1, -INF, -alpha, 1, &control);
                movegen::unmake_move(&mut pos, &token);
                if self.aborted {
                    break;
                }
                if best.is_none() || score > alpha {
                    alpha = score;
                    best = Some((*m, score));
                    self.update_pv(0, *m);
                }
            }
            if self.aborted {
                // The previous best is searched first, so a partial
                // iteration's choice is at least as well informed.
                if let Some((m, score)) = best {
                    result.best_move = m;
                    result.score = score;
                    result.principal_variation = self.pv[0].clone();
                }
                break;
            }
            let (m, score) = best.expect("at least one root move");
            result = SearchResult {
                best_move: m,
                score,
                principal_variation: self.pv[0].clone(),
                nodes: self.nodes,
                depth_reached: depth,
            };
            if let Some(cb) = control.on_iteration.as_mut() {
                cb(&result);
            }
            // Best move first next iteration; the rest keep their order.
            let idx = moves.iter().position(|x| *x == m).expect("root move");
            moves[..=idx].rotate_right(1);
            if is_mate_score(score) && (MATE - score.abs()) as u32 <= depth {
                break;
            }
        }
        result.nodes = self.nodes;
        Ok(result)
    }

    /// Full-window score of every legal root move at `depth`, ordered by
    /// colour-relative square.
    pub fn score_root_moves(&mut self, pos: &Position, depth: u32, seed: u64) -> Result<Vec<(Move, i32)>, SearchError> {
        let control = SearchControl::default();
        let moves = self.prepare(pos, &SearchLimits::depth(depth), seed, &control)?;
        let mut pos = pos.clone();
        let mut scored = Vec::with_capacity(moves.len());
        for m in moves {
            let token = movegen::make_move(&mut pos, &m);
            let score = -self.negamax(&mut pos, depth.saturating_sub(1), -INF, INF, 1, &control);
            movegen::unmake_move(&mut pos, &token);
            scored.push((m, score));
        }
        Ok(scored)
    }
}

/// One-shot search with a fresh engine.
pub fn search(pos: &Position, limits: &SearchLimits, params: &EvalParams, seed: u64) -> Result<SearchResult, SearchError> {
    Engine::new(*params).search(pos, limits, seed, SearchControl::default())
}
