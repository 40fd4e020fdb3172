//! Retrograde solver for pawnless endings of up to four pieces under
//! Byzantine rules.
//!
//! States are indexed with the white king rotated onto file `a`; every
//! pawnless Byzantine move commutes with file rotation, so the reduction is
//! exact and hidden behind [`Table::probe`].

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::adjudicator::{self, GameStatus};
use crate::attacks;
use crate::board::{Color, Coord, Piece, PieceKind, Variant};
use crate::movegen::{self, Move};
use crate::position::{Position, Setup};

pub const MAX_PIECES: usize = 4;
const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "ZATRIKION-TABLE";

const ILLEGAL: u8 = 0;
const DRAW: u8 = 1;
/// Largest distance the byte encoding can hold.
pub const MAX_DISTANCE: u32 = 125;
const UNKNOWN: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum OracleError {
    #[error("pawn endings are not supported")]
    PawnsUnsupported,
    #[error("{0} pieces exceed the limit of four")]
    TooManyPieces(usize),
    #[error("tables exist only for Byzantine rules, not {0}")]
    UnsupportedVariant(&'static str),
    #[error("material {found} is not the solved material {expected}")]
    WrongMaterial { expected: String, found: String },
    #[error("state is not a legal position: {0}")]
    IllegalState(String),
    #[error("bad material text: {0}")]
    BadMaterial(String),
    #[error("bad table file: {0}")]
    BadFile(String),
    #[error("distance exceeds {MAX_DISTANCE} plies")]
    DistanceOverflow,
}

/// Non-king pieces of each side, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Material {
    white: Vec<PieceKind>,
    black: Vec<PieceKind>,
}

impl Material {
    pub fn new(white: &[PieceKind], black: &[PieceKind]) -> Result<Material, OracleError> {
        let mut white = white.to_vec();
        let mut black = black.to_vec();
        if white.iter().chain(&black).any(|k| *k == PieceKind::Pawn) {
            return Err(OracleError::PawnsUnsupported);
        }
        if white.iter().chain(&black).any(|k| *k == PieceKind::King) {
            return Err(OracleError::BadMaterial("kings are implicit".into()));
        }
        let total = 2 + white.len() + black.len();
        if total > MAX_PIECES {
            return Err(OracleError::TooManyPieces(total));
        }
        white.sort_by_key(|k| k.index());
        black.sort_by_key(|k| k.index());
        Ok(Material { white, black })
    }

    pub fn white(&self) -> &[PieceKind] {
        &self.white
    }

    pub fn black(&self) -> &[PieceKind] {
        &self.black
    }

    pub fn piece_count(&self) -> usize {
        2 + self.white.len() + self.black.len()
    }

    /// Kings first, then white and black extras.
    fn pieces(&self) -> Vec<Piece> {
        let mut out = vec![Piece::new(Color::White, PieceKind::King), Piece::new(Color::Black, PieceKind::King)];
        out.extend(self.white.iter().map(|&k| Piece::new(Color::White, k)));
        out.extend(self.black.iter().map(|&k| Piece::new(Color::Black, k)));
        out
    }

    fn of_pieces(pieces: &[(Coord, Piece)]) -> Result<Material, OracleError> {
        let mut white = Vec::new();
        let mut black = Vec::new();
        let mut kings = [0; 2];
        for (_, p) in pieces {
            if p.kind() == PieceKind::King {
                kings[p.color().index()] += 1;
            } else if p.color() == Color::White {
                white.push(p.kind());
            } else {
                black.push(p.kind());
            }
        }
        if kings != [1, 1] {
            return Err(OracleError::IllegalState("each side needs exactly one king".into()));
        }
        Material::new(&white, &black)
    }
}

/// `KNvKB` style text.
impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("K")?;
        for k in &self.white {
            write!(f, "{}", k.letter())?;
        }
        f.write_str("vK")?;
        for k in &self.black {
            write!(f, "{}", k.letter())?;
        }
        Ok(())
    }
}

impl FromStr for Material {
    type Err = OracleError;

    fn from_str(text: &str) -> Result<Material, OracleError> {
        let bad = || OracleError::BadMaterial(text.into());
        let (w, b) = text.split_once(['v', 'V']).ok_or_else(bad)?;
        let side = |s: &str| -> Result<Vec<PieceKind>, OracleError> {
            let rest = s.strip_prefix(['K', 'k']).ok_or_else(bad)?;
            rest.chars()
                .map(|c| PieceKind::from_letter(c.to_ascii_uppercase()).ok_or_else(bad))
                .collect()
        };
        Material::new(&side(w)?, &side(b)?)
    }
}

/// A position of solved material.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleState {
    pieces: Vec<(Coord, Piece)>,
    side_to_move: Color,
    pending_bare: bool,
}

impl OracleState {
    pub fn new(pieces: &[(Coord, Piece)], side_to_move: Color) -> OracleState {
        let mut counts = [0; 2];
        for (_, p) in pieces {
            counts[p.color().index()] += 1;
        }
        let us = side_to_move.index();
        OracleState {
            pieces: pieces.to_vec(),
            side_to_move,
            pending_bare: counts[us] == 1 && counts[1 - us] > 1,
        }
    }

    pub fn from_position(pos: &Position) -> OracleState {
        let pieces: Vec<_> = Color::ALL.iter().flat_map(|&c| pos.pieces(c)).collect();
        OracleState::new(&pieces, pos.side_to_move())
    }

    pub fn pieces(&self) -> &[(Coord, Piece)] {
        &self.pieces
    }

    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    /// The side to move was just bared; its only hope is the riposte.
    pub fn pending_bare(&self) -> bool {
        self.pending_bare
    }

    pub fn to_position(&self, variant: Variant) -> Result<Position, OracleError> {
        let mut setup = Setup::new(variant);
        for &(c, p) in &self.pieces {
            if setup.squares[c.index()].is_some() {
                return Err(OracleError::IllegalState(alloc::format!("two pieces on {c}")));
            }
            setup.put(c, p);
        }
        setup.side(self.side_to_move);
        setup.build().map_err(|e| OracleError::IllegalState(e.to_string()))
    }
}

/// Value for the side to move. Distances are in plies to the end of the
/// game under optimal play: shortest for the winner, longest for the loser.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum OracleValue {
    Win(u32),
    Loss(u32),
    Draw,
}

impl OracleValue {
    fn encode(self) -> u8 {
        match self {
            OracleValue::Draw => DRAW,
            OracleValue::Win(n) => 2 + 2 * n as u8,
            OracleValue::Loss(n) => 3 + 2 * n as u8,
        }
    }

    fn decode(byte: u8) -> Option<OracleValue> {
        match byte {
            ILLEGAL | UNKNOWN => None,
            DRAW => Some(OracleValue::Draw),
            b if b % 2 == 0 => Some(OracleValue::Win((b as u32 - 2) / 2)),
            b => Some(OracleValue::Loss((b as u32 - 3) / 2)),
        }
    }

    /// Win/draw/loss rank for the side to move: 2, 1 or 0.
    pub fn class(self) -> u8 {
        match self {
            OracleValue::Win(_) => 2,
            OracleValue::Draw => 1,
            OracleValue::Loss(_) => 0,
        }
    }

    pub fn distance(self) -> Option<u32> {
        match self {
            OracleValue::Win(n) | OracleValue::Loss(n) => Some(n),
            OracleValue::Draw => None,
        }
    }

    /// The same outcome seen from the other side one ply earlier.
    pub fn parent(self) -> OracleValue {
        match self {
            OracleValue::Win(n) => OracleValue::Loss(n + 1),
            OracleValue::Loss(n) => OracleValue::Win(n + 1),
            OracleValue::Draw => OracleValue::Draw,
        }
    }
}

impl fmt::Display for OracleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleValue::Win(n) => write!(f, "win {n}"),
            OracleValue::Loss(n) => write!(f, "loss {n}"),
            OracleValue::Draw => f.write_str("draw"),
        }
    }
}

fn terminal_value(status: GameStatus, stm: Color) -> Option<OracleValue> {
    match status {
        GameStatus::Ongoing => None,
        _ => Some(match status.winner() {
            Some(w) if w == stm => OracleValue::Win(0),
            Some(_) => OracleValue::Loss(0),
            None => OracleValue::Draw,
        }),
    }
}

/// Square arithmetic for one material signature.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Layout {
    pieces: Vec<Piece>,
}

impl Layout {
    fn len(&self) -> usize {
        4 * 64usize.pow(self.pieces.len() as u32 - 1) * 2
    }

    fn rotate(c: Coord, by: u8) -> Coord {
        Coord::new(c.ring(), (c.file() + 16 - by) % 16).expect("valid coord")
    }

    /// Index of a placement given in layout order. Rotates so the white
    /// king stands on file `a`.
    fn index(&self, squares: &[Coord], stm: Color) -> usize {
        let shift = squares[0].file();
        let mut idx = squares[0].ring() as usize - 1;
        for &c in &squares[1..] {
            idx = idx * 64 + Layout::rotate(c, shift).index();
        }
        idx * 2 + stm.index()
    }

    fn decode(&self, mut idx: usize, squares: &mut [Coord]) -> Color {
        let stm = if idx.is_multiple_of(2) { Color::White } else { Color::Black };
        idx /= 2;
        for slot in squares[1..].iter_mut().rev() {
            *slot = Coord::from_index(idx % 64);
            idx /= 64;
        }
        squares[0] = Coord::new(idx as u8 + 1, 0).expect("ring in range");
        stm
    }

    fn occupied(squares: &[Coord]) -> u64 {
        squares.iter().fold(0, |acc, c| acc | c.bit())
    }

    fn distinct(squares: &[Coord]) -> bool {
        Layout::occupied(squares).count_ones() as usize == squares.len()
    }

    fn position(&self, variant: Variant, squares: &[Coord], stm: Color) -> Option<Position> {
        let mut setup = Setup::new(variant);
        for (&c, &p) in squares.iter().zip(&self.pieces) {
            setup.put(c, p);
        }
        setup.side(stm);
        setup.build().ok()
    }

    /// Matches the pieces of `state` to layout slots.
    fn squares_of(&self, state: &OracleState) -> Option<Vec<Coord>> {
        let mut used = vec![false; state.pieces.len()];
        let mut out = Vec::with_capacity(self.pieces.len());
        for want in &self.pieces {
            let i = (0..state.pieces.len()).find(|&i| !used[i] && state.pieces[i].1 == *want)?;
            used[i] = true;
            out.push(state.pieces[i].0);
        }
        Some(out)
    }
}

/// Counts over all legal states.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub struct TableSummary {
    pub legal: u64,
    pub white_wins: u64,
    pub black_wins: u64,
    pub draws: u64,
    pub longest_win: u32,
}

impl TableSummary {
    pub fn draw_fraction(&self) -> f64 {
        self.draws as f64 / self.legal.max(1) as f64
    }

    pub fn white_win_fraction(&self) -> f64 {
        self.white_wins as f64 / self.legal.max(1) as f64
    }

    pub fn black_win_fraction(&self) -> f64 {
        self.black_wins as f64 / self.legal.max(1) as f64
    }
}

/// A solved table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    variant: Variant,
    material: Material,
    layout: Layout,
    values: Vec<u8>,
}

fn check_variant(variant: Variant) -> Result<(), OracleError> {
    if variant.is_byzantine() {
        Ok(())
    } else {
        Err(OracleError::UnsupportedVariant(variant.name()))
    }
}

/// Solves `material` under the rules of `variant`.
pub fn solve(material: &Material, variant: Variant) -> Result<Table, OracleError> {
    check_variant(variant)?;
    let layout = Layout { pieces: material.pieces() };
    let n = layout.len();
    let mut values = vec![ILLEGAL; n];
    // Moves not yet known to lose for the mover.
    let mut open = vec![0u8; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();

    let mut squares = vec![Coord::from_index(0); layout.pieces.len()];
    let mut moves: Vec<Move> = Vec::new();
    for idx in 0..n {
        let stm = layout.decode(idx, &mut squares);
        if !Layout::distinct(&squares) {
            continue;
        }
        let Some(mut pos) = layout.position(variant, &squares, stm) else {
            continue;
        };
        moves.clear();
        movegen::generate_legal(&mut pos, &mut moves);
        let status = adjudicator::status_with_moves(&pos, &moves);
        if let Some(v) = terminal_value(status, stm) {
            values[idx] = v.encode();
            frontier.push(idx);
            continue;
        }
        values[idx] = UNKNOWN;
        let mut count = 0u32;
        let mut wins_now = false;
        for m in &moves {
            if m.captured.is_none() {
                count += 1;
                continue;
            }
            // With at most four pieces and no pawns every capture ends the
            // game on the spot.
            let mut child = pos.clone();
            movegen::apply_move(&mut child, m).expect("legal move");
            let child_value =
                terminal_value(adjudicator::game_status(&child), stm.opposite()).expect("capture leaves at most one side with a piece");
            match child_value {
                OracleValue::Loss(_) => wins_now = true,
                OracleValue::Draw => count += 1,
                OracleValue::Win(_) => {}
            }
        }
        if wins_now {
            values[idx] = OracleValue::Win(1).encode();
            next.push(idx);
        } else if count == 0 {
            values[idx] = OracleValue::Loss(1).encode();
            next.push(idx);
        } else {
            open[idx] = count.min(u8::MAX as u32) as u8;
            debug_assert!(count < u8::MAX as u32);
        }
    }

    let byzantine = variant.is_byzantine();
    let mut level = 0;
    let mut preds = Vec::new();
    while !frontier.is_empty() || !next.is_empty() {
        for &idx in &frontier {
            let value = OracleValue::decode(values[idx]).expect("solved");
            if value.distance() != Some(level) {
                continue;
            }
            if level >= MAX_DISTANCE {
                return Err(OracleError::DistanceOverflow);
            }
            let stm = layout.decode(idx, &mut squares);
            predecessors(&layout, byzantine, &squares, stm, &mut preds);
            for &p in &preds {
                if values[p] != UNKNOWN {
                    continue;
                }
                match value {
                    OracleValue::Loss(_) => {
                        values[p] = OracleValue::Win(level + 1).encode();
                        next.push(p);
                    }
                    OracleValue::Win(_) => {
                        open[p] -= 1;
                        if open[p] == 0 {
                            values[p] = OracleValue::Loss(level + 1).encode();
                            next.push(p);
                        }
                    }
                    OracleValue::Draw => unreachable!("draws are skipped"),
                }
            }
        }
        frontier.clear();
        core::mem::swap(&mut frontier, &mut next);
        level += 1;
    }
    for v in values.iter_mut() {
        if *v == UNKNOWN {
            *v = DRAW;
        }
    }
    Ok(Table {
        variant,
        material: material.clone(),
        layout,
        values,
    })
}

/// States with the other side to move from which a quiet move reaches
/// `squares`.
fn predecessors(layout: &Layout, byzantine: bool, squares: &[Coord], stm: Color, out: &mut Vec<usize>) {
    out.clear();
    let mover = stm.opposite();
    let occ = Layout::occupied(squares);
    let mut prev = squares.to_vec();
    for (slot, piece) in layout.pieces.iter().enumerate() {
        if piece.color() != mover {
            continue;
        }
        let from = squares[slot];
        for origin in attacks::squares(attacks::piece_targets(piece.kind(), byzantine, from, occ) & !occ) {
            prev[slot] = origin;
            out.push(layout.index(&prev, mover));
        }
        prev[slot] = from;
    }
}

impl Table {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    /// Number of indexed states, legal or not.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn value_at(&self, idx: usize) -> Option<OracleValue> {
        OracleValue::decode(self.values[idx])
    }

    pub fn probe(&self, state: &OracleState) -> Result<OracleValue, OracleError> {
        let found = Material::of_pieces(&state.pieces)?;
        if found != self.material {
            return Err(OracleError::WrongMaterial {
                expected: self.material.to_string(),
                found: found.to_string(),
            });
        }
        let squares = self.layout.squares_of(state).expect("material matches");
        if !Layout::distinct(&squares) {
            return Err(OracleError::IllegalState("two pieces share a square".into()));
        }
        self.value_at(self.layout.index(&squares, state.side_to_move))
            .ok_or_else(|| OracleError::IllegalState("side not to move is in check".into()))
    }

    pub fn probe_position(&self, pos: &Position) -> Result<OracleValue, OracleError> {
        self.probe(&OracleState::from_position(pos))
    }

    /// The canonical state stored at `idx`, if legal.
    pub fn state_at(&self, idx: usize) -> Option<OracleState> {
        self.value_at(idx)?;
        let mut squares = vec![Coord::from_index(0); self.layout.pieces.len()];
        let stm = self.layout.decode(idx, &mut squares);
        let pieces: Vec<_> = squares.into_iter().zip(self.layout.pieces.iter().copied()).collect();
        Some(OracleState::new(&pieces, stm))
    }

    /// Legal state indices with their values.
    pub fn iter(&self) -> impl Iterator<Item = (usize, OracleValue)> + '_ {
        (0..self.values.len()).filter_map(|i| self.value_at(i).map(|v| (i, v)))
    }

    pub fn summary(&self) -> TableSummary {
        let mut s = TableSummary::default();
        for (idx, v) in self.iter() {
            s.legal += 1;
            let stm = if idx.is_multiple_of(2) { Color::White } else { Color::Black };
            let winner = match v {
                OracleValue::Win(_) => Some(stm),
                OracleValue::Loss(_) => Some(stm.opposite()),
                OracleValue::Draw => None,
            };
            match winner {
                Some(Color::White) => s.white_wins += 1,
                Some(Color::Black) => s.black_wins += 1,
                None => s.draws += 1,
            }
            if let OracleValue::Win(n) = v {
                s.longest_win = s.longest_win.max(n);
            }
        }
        s
    }

    /// Value of every legal move from `pos` for the side to move, i.e. the
    /// child value seen from the parent.
    pub fn move_values(&self, pos: &Position) -> Result<Vec<(Move, OracleValue)>, OracleError> {
        let mut out = Vec::new();
        for m in movegen::legal_moves(pos) {
            let mut child = pos.clone();
            movegen::apply_move(&mut child, &m).expect("legal move");
            let status = adjudicator::game_status(&child);
            let value = match terminal_value(status, child.side_to_move()) {
                Some(v) => v,
                None => self.probe_position(&child)?,
            };
            out.push((m, value.parent()));
        }
        Ok(out)
    }

    /// Checks the retrograde invariants on every legal state. Returns the
    /// first offending state index on failure.
    pub fn verify(&self) -> Result<(), usize> {
        for (idx, value) in self.iter() {
            let pos = self.state_at(idx).and_then(|s| s.to_position(self.variant).ok()).ok_or(idx)?;
            let moves = movegen::legal_moves(&pos);
            let status = adjudicator::status_with_moves(&pos, &moves);
            if let Some(v) = terminal_value(status, pos.side_to_move()) {
                if v != value {
                    return Err(idx);
                }
                continue;
            }
            let children = self.move_values(&pos).map_err(|_| idx)?;
            let ok = match value {
                OracleValue::Win(n) => {
                    children.iter().any(|(_, v)| *v == OracleValue::Win(n))
                        && children.iter().all(|(_, v)| !matches!(v, OracleValue::Win(k) if *k < n))
                }
                OracleValue::Loss(n) => {
                    children.iter().all(|(_, v)| matches!(v, OracleValue::Loss(k) if *k <= n))
                        && children.iter().any(|(_, v)| *v == OracleValue::Loss(n))
                }
                OracleValue::Draw => children.iter().all(|(_, v)| v.class() < 2) && children.iter().any(|(_, v)| *v == OracleValue::Draw),
            };
            if !ok {
                return Err(idx);
            }
        }
        Ok(())
    }

    pub fn header(&self) -> String {
        let extras = self.layout.pieces.len() - 1;
        let mut index = String::from("wk_ring");
        for i in 0..extras {
            index = alloc::format!("({index})*64+s{}", i + 1);
        }
        alloc::format!(
            "{MAGIC} {FORMAT_VERSION}\n\
             variant {}\n\
             material {}\n\
             states {}\n\
             index ({index})*2+stm; wk_ring 0..3 after rotating the white king to file a; \
             s1.. are squares (ring-1)*16+file of the black king, then white and black pieces in material order; stm 0 white 1 black\n\
             values 0 illegal, 1 draw, 2+2n win in n plies, 3+2n loss in n plies, for the side to move\n\
             \n",
            self.variant.name(),
            self.material,
            self.values.len(),
        )
    }

    /// Header text followed by one byte per state.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.header().into_bytes();
        out.extend_from_slice(&self.values);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Table, OracleError> {
        let bad = |m: &str| OracleError::BadFile(m.into());
        let end = bytes.windows(2).position(|w| w == b"\n\n").ok_or_else(|| bad("missing header"))?;
        let header = core::str::from_utf8(&bytes[..end]).map_err(|_| bad("header is not text"))?;
        let mut variant = None;
        let mut material = None;
        let mut states = None;
        for (i, line) in header.lines().enumerate() {
            let (key, value) = line.split_once(' ').unwrap_or((line, ""));
            if i == 0 {
                if key != MAGIC || value.parse() != Ok(FORMAT_VERSION) {
                    return Err(bad("unknown format or version"));
                }
                continue;
            }
            match key {
                "variant" => variant = Some(value.parse::<Variant>().map_err(|_| bad("variant"))?),
                "material" => material = Some(value.parse::<Material>()?),
                "states" => states = Some(value.parse::<usize>().map_err(|_| bad("states"))?),
                _ => {}
            }
        }
        let variant = variant.ok_or_else(|| bad("missing variant"))?;
        check_variant(variant)?;
        let material = material.ok_or_else(|| bad("missing material"))?;
        let layout = Layout { pieces: material.pieces() };
        let values = bytes[end + 2..].to_vec();
        if states != Some(layout.len()) || values.len() != layout.len() {
            return Err(bad("state count does not match material"));
        }
        Ok(Table {
            variant,
            material,
            layout,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ring: u8, file: u8) -> Coord {
        Coord::new(ring, file).unwrap()
    }

    fn wk() -> Piece {
        Piece::new(Color::White, PieceKind::King)
    }

    fn bk() -> Piece {
        Piece::new(Color::Black, PieceKind::King)
    }

    fn solved(text: &str) -> Table {
        solve(&text.parse().unwrap(), Variant::ByzantineRegular).unwrap()
    }

    #[test]
    fn material_text() {
        let m: Material = "KRNvK".parse().unwrap();
        assert_eq!(m.to_string(), "KRNvK");
        assert_eq!("KNRvK".parse::<Material>().unwrap(), m);
        assert_eq!(m.piece_count(), 4);
        assert_eq!("KPvK".parse::<Material>(), Err(OracleError::PawnsUnsupported));
        assert!(matches!("KRNvKB".parse::<Material>(), Err(OracleError::TooManyPieces(5))));
        assert!("KNKB".parse::<Material>().is_err());
    }

    #[test]
    fn circular_rules_are_rejected() {
        let m: Material = "KvK".parse().unwrap();
        assert!(matches!(solve(&m, Variant::CircularFIDE), Err(OracleError::UnsupportedVariant(_))));
    }

    #[test]
    fn bare_kings_always_draw() {
        let t = solved("KvK");
        let s = t.summary();
        assert!(s.legal > 0);
        assert_eq!(s.draws, s.legal);
        let state = OracleState::new(&[(c(1, 0), wk()), (c(3, 7), bk())], Color::Black);
        assert_eq!(t.probe(&state), Ok(OracleValue::Draw));
        assert!(!state.pending_bare());
    }

    #[test]
    fn lone_rook_wins_unless_taken() {
        let t = solved("KRvK");
        let rook = Piece::new(Color::White, PieceKind::Rook);
        let far = OracleState::new(&[(c(1, 0), wk()), (c(2, 4), rook), (c(4, 9), bk())], Color::Black);
        assert!(far.pending_bare());
        assert_eq!(t.probe(&far), Ok(OracleValue::Loss(0)));
        let hanging = OracleState::new(&[(c(1, 0), wk()), (c(4, 8), rook), (c(4, 9), bk())], Color::Black);
        assert_eq!(t.probe(&hanging), Ok(OracleValue::Draw));
        let white_to_move = OracleState::new(&[(c(1, 0), wk()), (c(2, 4), rook), (c(4, 9), bk())], Color::White);
        assert_eq!(t.probe(&white_to_move), Ok(OracleValue::Win(0)));
    }

    #[test]
    fn unanswered_capture_is_win_in_one() {
        let t = solved("KNvKB");
        let knight = Piece::new(Color::White, PieceKind::Knight);
        let bishop = Piece::new(Color::Black, PieceKind::Bishop);
        // Nb1xd2; the black king on l4 is far away.
        let state = OracleState::new(
            &[(c(1, 0), wk()), (c(1, 1), knight), (c(2, 3), bishop), (c(4, 11), bk())],
            Color::White,
        );
        assert_eq!(t.probe(&state), Ok(OracleValue::Win(1)));
    }

    #[test]
    fn probe_hides_rotation() {
        let t = solved("KNvK");
        let knight = Piece::new(Color::White, PieceKind::Knight);
        for shift in 0..16 {
            let rot = |ring, file: u8| c(ring, (file + shift) % 16);
            let state = OracleState::new(&[(rot(2, 3), wk()), (rot(3, 6), knight), (rot(1, 12), bk())], Color::Black);
            assert_eq!(t.probe(&state), Ok(OracleValue::Loss(0)));
        }
    }

    #[test]
    fn wrong_material_and_illegal_states_error() {
        let t = solved("KNvK");
        let state = OracleState::new(&[(c(1, 0), wk()), (c(3, 7), bk())], Color::White);
        assert!(matches!(t.probe(&state), Err(OracleError::WrongMaterial { .. })));
        let knight = Piece::new(Color::White, PieceKind::Knight);
        // Black king adjacent to the white king with White to move.
        let adjacent = OracleState::new(&[(c(1, 0), wk()), (c(3, 7), knight), (c(2, 1), bk())], Color::White);
        assert!(matches!(t.probe(&adjacent), Err(OracleError::IllegalState(_))));
    }

    #[test]
    fn table_bytes_roundtrip() {
        let t = solved("KRvK");
        let bytes = t.to_bytes();
        assert!(bytes.starts_with(b"ZATRIKION-TABLE 1\n"));
        let back = Table::from_bytes(&bytes).unwrap();
        assert_eq!(back, t);
        let mut short = bytes.clone();
        short.pop();
        assert!(Table::from_bytes(&short).is_err());
    }

    #[test]
    fn small_tables_are_consistent() {
        for m in ["KvK", "KNvK", "KRvK", "KQvK"] {
            assert_eq!(solved(m).verify(), Ok(()), "{m}");
        }
    }

    #[test]
    fn value_encoding_roundtrips() {
        for v in [
            OracleValue::Draw,
            OracleValue::Win(0),
            OracleValue::Loss(0),
            OracleValue::Win(MAX_DISTANCE),
            OracleValue::Loss(MAX_DISTANCE),
        ] {
            assert_eq!(OracleValue::decode(v.encode()), Some(v));
        }
        assert_eq!(OracleValue::Loss(3).parent(), OracleValue::Win(4));
    }
}
