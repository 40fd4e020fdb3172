use alloc::vec::Vec;

use crate::attacks;
use crate::board::{Color, Coord, PawnDir, Piece, PieceKind, RuleConfig, Variant, SQUARES};
use crate::zobrist;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PositionError {
    #[error("{} has no king", .0.name())]
    MissingKing(Color),
    #[error("{} has more than one king", .0.name())]
    ExtraKing(Color),
    #[error("the side not to move is in check")]
    OpponentInCheck,
    #[error("en-passant square {0} is not consistent with a double step")]
    BadEnPassant(Coord),
}

/// Full game state.
///
/// Besides the mailbox the position keeps occupancy masks per colour, per
/// piece kind and for clockwise pawns, plus an incrementally maintained
/// Zobrist hash. `history` holds the hashes of all earlier positions of the
/// game, oldest first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Position {
    squares: [Option<Piece>; SQUARES],
    by_color: [u64; 2],
    by_kind: [u64; 6],
    cw_pawns: u64,
    side_to_move: Color,
    ep_target: Option<Coord>,
    no_capture_clock: u32,
    fullmove: u32,
    history: Vec<u64>,
    hash: u64,
    variant: Variant,
    rules: RuleConfig,
}

/// Home file of the pawns of `color` travelling in `dir`.
pub const fn pawn_home_file(color: Color, dir: PawnDir) -> u8 {
    match (color, dir) {
        (Color::White, PawnDir::Counterclockwise) => 2,
        (Color::White, PawnDir::Clockwise) => 5,
        (Color::Black, PawnDir::Counterclockwise) => 10,
        (Color::Black, PawnDir::Clockwise) => 13,
    }
}

/// In the FIDE hybrid a pawn promotes on the home file of the enemy pawns
/// travelling towards it.
pub const fn promotion_file(color: Color, dir: PawnDir) -> u8 {
    pawn_home_file(color.opposite(), dir.reverse())
}

pub fn initial_position(variant: Variant) -> Position {
    Position::initial(variant)
}

impl Position {
    fn blank(variant: Variant, rules: RuleConfig) -> Position {
        Position {
            squares: [None; SQUARES],
            by_color: [0; 2],
            by_kind: [0; 6],
            cw_pawns: 0,
            side_to_move: Color::White,
            ep_target: None,
            no_capture_clock: 0,
            fullmove: 1,
            history: Vec::new(),
            hash: 0,
            variant,
            rules,
        }
    }

    pub fn initial(variant: Variant) -> Position {
        let mut setup = Setup::new(variant);
        let (wq, wk) = match variant {
            Variant::ByzantineSymmetric => (4, 3),
            _ => (3, 4),
        };
        let c = |ring, file| Coord::new(ring, file).expect("valid square");
        for (color, [ccw_file, a, b, cw_file]) in [(Color::White, [2u8, 3, 4, 5]), (Color::Black, [10u8, 11, 12, 13])] {
            for ring in 1..=4 {
                setup.put(c(ring, ccw_file), Piece::pawn(color, PawnDir::Counterclockwise));
                setup.put(c(ring, cw_file), Piece::pawn(color, PawnDir::Clockwise));
                let kind = match ring {
                    2 => PieceKind::Bishop,
                    3 => PieceKind::Knight,
                    4 => PieceKind::Rook,
                    _ => continue,
                };
                setup.put(c(ring, a), Piece::new(color, kind));
                setup.put(c(ring, b), Piece::new(color, kind));
            }
        }
        setup.put(c(1, wq), Piece::new(Color::White, PieceKind::Queen));
        setup.put(c(1, wk), Piece::new(Color::White, PieceKind::King));
        setup.put(c(1, 11), Piece::new(Color::Black, PieceKind::King));
        setup.put(c(1, 12), Piece::new(Color::Black, PieceKind::Queen));
        setup.build().expect("initial setup is legal")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rules(&self) -> &RuleConfig {
        &self.rules
    }

    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    pub fn ep_target(&self) -> Option<Coord> {
        self.ep_target
    }

    pub fn no_capture_clock(&self) -> u32 {
        self.no_capture_clock
    }

    pub fn fullmove(&self) -> u32 {
        self.fullmove
    }

    /// Hashes of the earlier positions of this game, oldest first.
    pub fn history(&self) -> &[u64] {
        &self.history
    }

    pub fn hash(&self) -> u64 {
        self.hash
    }

    pub fn piece_at(&self, c: Coord) -> Option<Piece> {
        self.squares[c.index()]
    }

    pub fn occupied(&self) -> u64 {
        self.by_color[0] | self.by_color[1]
    }

    pub fn color_mask(&self, color: Color) -> u64 {
        self.by_color[color.index()]
    }

    pub fn kind_mask(&self, color: Color, kind: PieceKind) -> u64 {
        self.by_kind[kind.index()] & self.by_color[color.index()]
    }

    pub fn pawn_mask(&self, color: Color, dir: PawnDir) -> u64 {
        let pawns = self.kind_mask(color, PieceKind::Pawn);
        match dir {
            PawnDir::Clockwise => pawns & self.cw_pawns,
            PawnDir::Counterclockwise => pawns & !self.cw_pawns,
        }
    }

    pub fn king(&self, color: Color) -> Coord {
        let kings = self.kind_mask(color, PieceKind::King);
        debug_assert_eq!(kings.count_ones(), 1);
        Coord::from_index(kings.trailing_zeros() as usize)
    }

    /// All pieces of one colour with their squares, in square order.
    pub fn pieces(&self, color: Color) -> impl Iterator<Item = (Coord, Piece)> + '_ {
        attacks::squares(self.color_mask(color)).map(move |c| (c, self.squares[c.index()].unwrap()))
    }

    /// Number of pieces of `color`, king included.
    pub fn piece_count(&self, color: Color) -> u32 {
        self.color_mask(color).count_ones()
    }

    /// Replaces the rule toggles. Intended for experiments that switch
    /// individual rules off.
    pub fn set_rules(&mut self, rules: RuleConfig) {
        self.rules = rules;
    }

    /// Full Zobrist recomputation, independent of the incremental path.
    pub fn compute_hash(&self) -> u64 {
        let mut h = 0;
        for c in Coord::all() {
            if let Some(p) = self.squares[c.index()] {
                h ^= zobrist::piece(c, p);
            }
        }
        if let Some(ep) = self.ep_target {
            h ^= zobrist::ep(ep);
        }
        if self.side_to_move == Color::Black {
            h ^= zobrist::black_to_move();
        }
        h
    }

    /// The pawn that can be taken en passant, if any.
    pub fn ep_victim(&self) -> Option<(Coord, Piece)> {
        let target = self.ep_target?;
        let them = self.side_to_move.opposite();
        [PawnDir::Clockwise, PawnDir::Counterclockwise]
            .into_iter()
            .map(|dir| (target.advance(dir, 1), Piece::pawn(them, dir)))
            .find(|&(sq, pawn)| self.squares[sq.index()] == Some(pawn))
    }

    /// Colour reflection: `file -> 15 - file`, colours swapped, pawn
    /// directions reversed, side to move swapped. Maps the regular starting
    /// setup onto itself.
    pub fn mirror(&self) -> Position {
        let mut setup = Setup::new(self.variant);
        setup.rules = self.rules;
        for c in Coord::all() {
            if let Some(p) = self.squares[c.index()] {
                setup.put(c.reflect(), p.mirrored());
            }
        }
        setup.side_to_move = self.side_to_move.opposite();
        setup.ep_target = self.ep_target.map(Coord::reflect);
        setup.no_capture_clock = self.no_capture_clock;
        setup.fullmove = self.fullmove;
        setup.build().expect("mirror of a legal position is legal")
    }

    /// Count of earlier occurrences of the current position.
    pub fn repetitions(&self) -> usize {
        self.history.iter().rev().skip(1).step_by(2).filter(|&&h| h == self.hash).count()
    }

    pub(crate) fn put(&mut self, c: Coord, p: Piece) {
        debug_assert!(self.squares[c.index()].is_none());
        self.squares[c.index()] = Some(p);
        let bit = c.bit();
        self.by_color[p.color().index()] |= bit;
        self.by_kind[p.kind().index()] |= bit;
        if p.pawn_dir() == Some(PawnDir::Clockwise) {
            self.cw_pawns |= bit;
        }
        self.hash ^= zobrist::piece(c, p);
    }

    pub(crate) fn remove(&mut self, c: Coord) -> Piece {
        let p = self.squares[c.index()].take().expect("square occupied");
        let bit = !c.bit();
        self.by_color[p.color().index()] &= bit;
        self.by_kind[p.kind().index()] &= bit;
        self.cw_pawns &= bit;
        self.hash ^= zobrist::piece(c, p);
        p
    }

    pub(crate) fn set_ep(&mut self, ep: Option<Coord>) {
        if let Some(old) = self.ep_target {
            self.hash ^= zobrist::ep(old);
        }
        if let Some(new) = ep {
            self.hash ^= zobrist::ep(new);
        }
        self.ep_target = ep;
    }

    pub(crate) fn flip_side(&mut self) {
        self.side_to_move = self.side_to_move.opposite();
        self.hash ^= zobrist::black_to_move();
    }

    pub(crate) fn set_clocks(&mut self, no_capture_clock: u32, fullmove: u32) {
        self.no_capture_clock = no_capture_clock;
        self.fullmove = fullmove;
    }

    pub(crate) fn history_mut(&mut self) -> &mut Vec<u64> {
        &mut self.history
    }

    pub(crate) fn set_hash(&mut self, hash: u64) {
        self.hash = hash;
    }
}

/// Free-form position description, validated by [`Setup::build`].
#[derive(Clone, Debug)]
pub struct Setup {
    pub variant: Variant,
    pub rules: RuleConfig,
    pub squares: [Option<Piece>; SQUARES],
    pub side_to_move: Color,
    pub ep_target: Option<Coord>,
    pub no_capture_clock: u32,
    pub fullmove: u32,
}

impl Setup {
    pub fn new(variant: Variant) -> Setup {
        Setup {
            variant,
            rules: RuleConfig::for_variant(variant),
            squares: [None; SQUARES],
            side_to_move: Color::White,
            ep_target: None,
            no_capture_clock: 0,
            fullmove: 1,
        }
    }

    pub fn put(&mut self, c: Coord, p: Piece) -> &mut Setup {
        self.squares[c.index()] = Some(p);
        self
    }

    pub fn side(&mut self, color: Color) -> &mut Setup {
        self.side_to_move = color;
        self
    }

    pub fn build(&self) -> Result<Position, PositionError> {
        let mut pos = Position::blank(self.variant, self.rules);
        for c in Coord::all() {
            if let Some(p) = self.squares[c.index()] {
                pos.put(c, p);
            }
        }
        for color in Color::ALL {
            match pos.kind_mask(color, PieceKind::King).count_ones() {
                0 => return Err(PositionError::MissingKing(color)),
                1 => {}
                _ => return Err(PositionError::ExtraKing(color)),
            }
        }
        if self.side_to_move == Color::Black {
            pos.flip_side();
        }
        pos.no_capture_clock = self.no_capture_clock;
        pos.fullmove = self.fullmove.max(1);
        if let Some(ep) = self.ep_target {
            pos.set_ep(Some(ep));
            if !self.rules.en_passant || pos.piece_at(ep).is_some() || pos.ep_victim().is_none() {
                return Err(PositionError::BadEnPassant(ep));
            }
        }
        let them = pos.side_to_move.opposite();
        if crate::movegen::is_attacked(&pos, pos.king(them), pos.side_to_move) {
            return Err(PositionError::OpponentInCheck);
        }
        Ok(pos)
    }
}

impl From<&Position> for Setup {
    fn from(pos: &Position) -> Setup {
        Setup {
            variant: pos.variant,
            rules: pos.rules,
            squares: pos.squares,
            side_to_move: pos.side_to_move,
            ep_target: pos.ep_target,
            no_capture_clock: pos.no_capture_clock,
            fullmove: pos.fullmove,
        }
    }
}
