//! Move generation, attack detection and reversible move application.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::attacks::{self, squares};
use crate::board::{Color, Coord, PawnDir, Piece, PieceKind, Variant};
use crate::position::{pawn_home_file, promotion_file, Position};

/// Own pawns removed by the annihilation rule, stored as the squares of the
/// clockwise member of each face-to-face pair. The counterclockwise partner
/// stands one file further clockwise.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Annihilation(u64);

impl Annihilation {
    pub const NONE: Annihilation = Annihilation(0);

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of pawns removed (twice the number of pairs).
    pub fn len(self) -> usize {
        2 * self.0.count_ones() as usize
    }

    /// Mask of every removed square.
    pub fn mask(self) -> u64 {
        self.0 | attacks::shift_cw(self.0)
    }

    /// Removed pawns of `color`, clockwise member of each pair first.
    pub fn pawns(self, color: Color) -> impl Iterator<Item = (Coord, Piece)> {
        squares(self.0).flat_map(move |sq| {
            [
                (sq, Piece::pawn(color, PawnDir::Clockwise)),
                (sq.advance(PawnDir::Clockwise, 1), Piece::pawn(color, PawnDir::Counterclockwise)),
            ]
        })
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Move {
    pub from: Coord,
    pub to: Coord,
    /// The moving piece.
    pub piece: Piece,
    pub captured: Option<Piece>,
    pub promotion: Option<PieceKind>,
    pub is_en_passant: bool,
    pub is_double_step: bool,
    pub annihilated: Annihilation,
}

impl Move {
    pub fn is_capture(&self) -> bool {
        self.captured.is_some()
    }

    /// Captures and annihilations both change material.
    pub fn is_material_change(&self) -> bool {
        self.captured.is_some() || !self.annihilated.is_empty() || self.promotion.is_some()
    }

    /// Removed own pawns with their squares.
    pub fn annihilated(&self) -> impl Iterator<Item = (Coord, Piece)> {
        self.annihilated.pawns(self.piece.color())
    }

    /// Square of the captured piece (differs from `to` for en passant).
    pub fn capture_square(&self) -> Option<Coord> {
        let captured = self.captured?;
        Some(match (self.is_en_passant, captured.pawn_dir()) {
            (true, Some(dir)) => self.to.advance(dir, 1),
            _ => self.to,
        })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.from, self.to)?;
        if let Some(kind) = self.promotion {
            write!(f, "={}", kind.letter())?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum MoveError {
    #[error("it is not {}'s turn", .0.name())]
    WrongTurn(Color),
    #[error("move leaves the king in check")]
    LeavesKingInCheck,
    #[error("malformed move: {0}")]
    Malformed(String),
    #[error("no legal move `{0}` in this position")]
    NoSuchMove(String),
    #[error("undo token does not belong to the current position")]
    StaleToken,
}

/// Everything needed to take a move back.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct UndoToken {
    mv: Move,
    prev_ep: Option<Coord>,
    prev_clock: u32,
    prev_fullmove: u32,
    prev_hash: u64,
    after_hash: u64,
    history_len: usize,
}

impl UndoToken {
    pub fn mv(&self) -> &Move {
        &self.mv
    }
}

pub fn is_attacked(pos: &Position, target: Coord, by: Color) -> bool {
    let byzantine = pos.variant().is_byzantine();
    let occ = pos.occupied();
    let them = |kind| pos.kind_mask(by, kind);
    if attacks::knight(target) & them(PieceKind::Knight) != 0 || attacks::king(target) & them(PieceKind::King) != 0 {
        return true;
    }
    if attacks::pawn_captures(target, PawnDir::Counterclockwise) & pos.pawn_mask(by, PawnDir::Clockwise) != 0
        || attacks::pawn_captures(target, PawnDir::Clockwise) & pos.pawn_mask(by, PawnDir::Counterclockwise) != 0
    {
        return true;
    }
    let rooks = them(PieceKind::Rook);
    let queens = them(PieceKind::Queen);
    let bishops = them(PieceKind::Bishop);
    if byzantine {
        if attacks::fers(target) & queens != 0 || attacks::alfil(target) & bishops != 0 {
            return true;
        }
        rooks != 0 && (attacks::ring_slide(target, occ) | attacks::radial_slide(target, occ)) & rooks != 0
    } else {
        let straight = rooks | queens;
        let diagonal = bishops | queens;
        (straight != 0 && (attacks::ring_slide(target, occ) | attacks::radial_slide(target, occ)) & straight != 0)
            || (diagonal != 0 && attacks::diagonal_slide(target, occ) & diagonal != 0)
    }
}

pub fn in_check(pos: &Position) -> bool {
    let us = pos.side_to_move();
    is_attacked(pos, pos.king(us), us.opposite())
}

fn annihilation_after(pos: &Position, from: Coord, to: Coord, piece: Piece, promotion: Option<PieceKind>) -> Annihilation {
    if !pos.rules().annihilation {
        return Annihilation::NONE;
    }
    let us = piece.color();
    let mut cw = pos.pawn_mask(us, PawnDir::Clockwise);
    let mut ccw = pos.pawn_mask(us, PawnDir::Counterclockwise);
    if let Some(dir) = piece.pawn_dir() {
        let set = match dir {
            PawnDir::Clockwise => &mut cw,
            PawnDir::Counterclockwise => &mut ccw,
        };
        *set &= !from.bit();
        if promotion.is_none() {
            *set |= to.bit();
        }
    }
    Annihilation(cw & attacks::shift_ccw(ccw))
}

fn push(pos: &Position, out: &mut Vec<Move>, from: Coord, to: Coord, piece: Piece, captured: Option<Piece>) {
    out.push(Move {
        from,
        to,
        piece,
        captured,
        promotion: None,
        is_en_passant: false,
        is_double_step: false,
        annihilated: annihilation_after(pos, from, to, piece, None),
    });
}

fn push_pawn(pos: &Position, out: &mut Vec<Move>, from: Coord, to: Coord, piece: Piece, captured: Option<Piece>) {
    let dir = piece.pawn_dir().expect("pawn");
    let promotes = pos.variant() == Variant::CircularFIDE && pos.rules().promotion && to.file() == promotion_file(piece.color(), dir);
    if !promotes {
        push(pos, out, from, to, piece, captured);
        return;
    }
    for kind in [PieceKind::Queen, PieceKind::Rook, PieceKind::Bishop, PieceKind::Knight] {
        out.push(Move {
            from,
            to,
            piece,
            captured,
            promotion: Some(kind),
            is_en_passant: false,
            is_double_step: false,
            annihilated: annihilation_after(pos, from, to, piece, Some(kind)),
        });
    }
}

fn generate_pawn(pos: &Position, out: &mut Vec<Move>, from: Coord, piece: Piece) {
    let dir = piece.pawn_dir().expect("pawn");
    let us = piece.color();
    let occ = pos.occupied();
    let step = from.advance(dir, 1);
    if occ & step.bit() == 0 {
        push_pawn(pos, out, from, step, piece, None);
        let double = from.advance(dir, 2);
        if pos.variant() == Variant::CircularFIDE
            && pos.rules().double_step
            && from.file() == pawn_home_file(us, dir)
            && occ & double.bit() == 0
        {
            out.push(Move {
                from,
                to: double,
                piece,
                captured: None,
                promotion: None,
                is_en_passant: false,
                is_double_step: true,
                annihilated: annihilation_after(pos, from, double, piece, None),
            });
        }
    }
    let targets = attacks::pawn_captures(from, dir);
    for to in squares(targets & pos.color_mask(us.opposite())) {
        push_pawn(pos, out, from, to, piece, pos.piece_at(to));
    }
    if pos.rules().en_passant {
        if let (Some(ep), Some((_, victim))) = (pos.ep_target(), pos.ep_victim()) {
            if targets & ep.bit() != 0 {
                out.push(Move {
                    from,
                    to: ep,
                    piece,
                    captured: Some(victim),
                    promotion: None,
                    is_en_passant: true,
                    is_double_step: false,
                    annihilated: annihilation_after(pos, from, ep, piece, None),
                });
            }
        }
    }
}

fn generate_from(pos: &Position, out: &mut Vec<Move>, from: Coord, piece: Piece) {
    if piece.is_pawn() {
        generate_pawn(pos, out, from, piece);
        return;
    }
    let us = piece.color();
    let targets = attacks::piece_targets(piece.kind(), pos.variant().is_byzantine(), from, pos.occupied()) & !pos.color_mask(us);
    for to in squares(targets) {
        push(pos, out, from, to, piece, pos.piece_at(to));
    }
}

/// Appends all pseudo-legal moves for the side to move.
pub fn generate_pseudo_legal(pos: &Position, out: &mut Vec<Move>) {
    for (from, piece) in pos.pieces(pos.side_to_move()) {
        generate_from(pos, out, from, piece);
    }
}

pub fn pseudo_legal_moves(pos: &Position) -> Vec<Move> {
    let mut out = Vec::with_capacity(64);
    generate_pseudo_legal(pos, &mut out);
    out
}

/// Replaces `out` with the legal moves of `pos`. The position is used as
/// scratch space and restored before returning.
pub fn generate_legal(pos: &mut Position, out: &mut Vec<Move>) {
    out.clear();
    generate_pseudo_legal(pos, out);
    out.retain(|m| {
        let token = make_move(pos, m);
        let legal = !is_attacked(pos, pos.king(m.piece.color()), pos.side_to_move());
        unmake_move(pos, &token);
        legal
    });
}

pub fn legal_moves(pos: &Position) -> Vec<Move> {
    let mut scratch = pos.clone();
    let mut out = Vec::with_capacity(64);
    generate_legal(&mut scratch, &mut out);
    out
}

/// Whether the side to move has any legal move.
pub fn has_legal_move(pos: &mut Position) -> bool {
    let mut moves = Vec::with_capacity(64);
    generate_pseudo_legal(pos, &mut moves);
    moves.iter().any(|m| {
        let token = make_move(pos, m);
        let legal = !is_attacked(pos, pos.king(m.piece.color()), pos.side_to_move());
        unmake_move(pos, &token);
        legal
    })
}

/// Applies a move produced by this module's generators without validation.
pub(crate) fn make_move(pos: &mut Position, m: &Move) -> UndoToken {
    let prev_hash = pos.hash();
    let mut token = UndoToken {
        mv: *m,
        prev_ep: pos.ep_target(),
        prev_clock: pos.no_capture_clock(),
        prev_fullmove: pos.fullmove(),
        prev_hash,
        after_hash: 0,
        history_len: pos.history().len(),
    };
    pos.history_mut().push(prev_hash);
    if let Some(sq) = m.capture_square() {
        pos.remove(sq);
    }
    let piece = pos.remove(m.from);
    let placed = match m.promotion {
        Some(kind) => Piece::new(piece.color(), kind),
        None => piece,
    };
    pos.put(m.to, placed);
    for (sq, _) in m.annihilated() {
        pos.remove(sq);
    }
    let ep = if m.is_double_step {
        Some(m.from.advance(piece.pawn_dir().expect("pawn"), 1))
    } else {
        None
    };
    pos.set_ep(ep);
    let clock = if m.captured.is_some() || !m.annihilated.is_empty() {
        0
    } else {
        token.prev_clock + 1
    };
    let fullmove = token.prev_fullmove + (piece.color() == Color::Black) as u32;
    pos.set_clocks(clock, fullmove);
    pos.flip_side();
    token.after_hash = pos.hash();
    token
}

pub(crate) fn unmake_move(pos: &mut Position, token: &UndoToken) {
    let m = &token.mv;
    pos.flip_side();
    for (sq, pawn) in m.annihilated() {
        pos.put(sq, pawn);
    }
    pos.remove(m.to);
    pos.put(m.from, m.piece);
    if let (Some(sq), Some(captured)) = (m.capture_square(), m.captured) {
        pos.put(sq, captured);
    }
    pos.set_ep(token.prev_ep);
    pos.set_clocks(token.prev_clock, token.prev_fullmove);
    pos.history_mut().pop();
    pos.set_hash(token.prev_hash);
}

/// Validates and applies `m`, which must be one of `legal_moves(pos)`.
pub fn apply_move(pos: &mut Position, m: &Move) -> Result<UndoToken, MoveError> {
    let us = pos.side_to_move();
    match pos.piece_at(m.from) {
        None => return Err(MoveError::Malformed(alloc::format!("no piece on {}", m.from))),
        Some(p) if p.color() != us => return Err(MoveError::WrongTurn(p.color())),
        Some(p) if p != m.piece => return Err(MoveError::Malformed(alloc::format!("{} does not hold the moving piece", m.from))),
        Some(_) => {}
    }
    let mut candidates = Vec::new();
    generate_from(pos, &mut candidates, m.from, m.piece);
    if !candidates.contains(m) {
        return Err(MoveError::Malformed(m.to_string()));
    }
    let token = make_move(pos, m);
    if is_attacked(pos, pos.king(us), pos.side_to_move()) {
        unmake_move(pos, &token);
        return Err(MoveError::LeavesKingInCheck);
    }
    Ok(token)
}

/// Takes back the most recent move. Fails if `token` was not produced by
/// the last `apply_move` on this position.
pub fn undo_move(pos: &mut Position, token: &UndoToken) -> Result<(), MoveError> {
    if pos.hash() != token.after_hash || pos.history().len() != token.history_len + 1 {
        return Err(MoveError::StaleToken);
    }
    unmake_move(pos, token);
    Ok(())
}

/// Splits `c1b1` / `c1b1=Q` into its parts.
pub fn parse_move_text(text: &str) -> Result<(Coord, Coord, Option<PieceKind>), MoveError> {
    let bad = || MoveError::Malformed(text.to_string());
    let (squares, promo) = match text.split_once('=') {
        Some((sq, p)) => (sq, Some(p)),
        None => (text, None),
    };
    if squares.len() != 4 || !squares.is_char_boundary(2) {
        return Err(bad());
    }
    let from = squares[..2].parse().map_err(|_| bad())?;
    let to = squares[2..].parse().map_err(|_| bad())?;
    let promotion = match promo {
        None => None,
        Some(p) => {
            let mut chars = p.chars();
            match (chars.next().and_then(PieceKind::from_letter), chars.next()) {
                (Some(kind @ (PieceKind::Queen | PieceKind::Rook | PieceKind::Bishop | PieceKind::Knight)), None) => Some(kind),
                _ => return Err(bad()),
            }
        }
    };
    Ok((from, to, promotion))
}

/// Looks up the legal move written as `text`.
pub fn find_move(pos: &Position, text: &str) -> Result<Move, MoveError> {
    let (from, to, promotion) = parse_move_text(text)?;
    if let Some(p) = pos.piece_at(from) {
        if p.color() != pos.side_to_move() {
            return Err(MoveError::WrongTurn(p.color()));
        }
    }
    legal_moves(pos)
        .into_iter()
        .find(|m| m.from == from && m.to == to && m.promotion == promotion)
        .ok_or_else(|| MoveError::NoSuchMove(text.to_string()))
}

/// Parses and applies a move in text form.
pub fn play(pos: &mut Position, text: &str) -> Result<UndoToken, MoveError> {
    let m = find_move(pos, text)?;
    apply_move(pos, &m)
}

fn perft_inner(pos: &mut Position, depth: u32, buffers: &mut Vec<Vec<Move>>) -> u64 {
    if depth == 0 {
        return 1;
    }
    let mut moves = buffers.pop().unwrap_or_default();
    generate_legal(pos, &mut moves);
    let nodes = if depth == 1 {
        moves.len() as u64
    } else {
        moves
            .iter()
            .map(|m| {
                let token = make_move(pos, m);
                let n = perft_inner(pos, depth - 1, buffers);
                unmake_move(pos, &token);
                n
            })
            .sum()
    };
    buffers.push(moves);
    nodes
}

/// Leaf count of the legal move tree.
pub fn perft(pos: &Position, depth: u32) -> u64 {
    let mut scratch = pos.clone();
    perft_inner(&mut scratch, depth, &mut Vec::new())
}
