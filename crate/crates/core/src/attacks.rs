//! Target sets on the annulus as 64-bit masks, one 16-bit lane per ring.

use crate::board::{Coord, PawnDir, PieceKind, SQUARES};

const LANE_LOW: u64 = 0x0001_0001_0001_0001;
const LANE_HIGH: u64 = 0x8000_8000_8000_8000;

pub const fn ring_mask(ring: u8) -> u64 {
    0xFFFFu64 << ((ring as u32 - 1) * 16)
}

/// Moves every square one file clockwise within its ring.
pub const fn shift_cw(bb: u64) -> u64 {
    ((bb << 1) & !LANE_LOW) | ((bb >> 15) & LANE_LOW)
}

/// Moves every square one file counterclockwise within its ring.
pub const fn shift_ccw(bb: u64) -> u64 {
    ((bb >> 1) & !LANE_HIGH) | ((bb << 15) & LANE_HIGH)
}

pub const fn shift(bb: u64, dir: PawnDir) -> u64 {
    match dir {
        PawnDir::Clockwise => shift_cw(bb),
        PawnDir::Counterclockwise => shift_ccw(bb),
    }
}

const fn leaper_table(deltas: &[(i8, i8)]) -> [u64; SQUARES] {
    let mut table = [0u64; SQUARES];
    let mut sq = 0;
    while sq < SQUARES {
        let from = Coord::from_index(sq);
        let mut i = 0;
        while i < deltas.len() {
            if let Some(to) = from.offset(deltas[i].0, deltas[i].1) {
                table[sq] |= to.bit();
            }
            i += 1;
        }
        sq += 1;
    }
    table
}

static KING: [u64; SQUARES] = leaper_table(&[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]);
static KNIGHT: [u64; SQUARES] = leaper_table(&[(-2, -1), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]);
static FERS: [u64; SQUARES] = leaper_table(&[(-1, -1), (-1, 1), (1, -1), (1, 1)]);
static ALFIL: [u64; SQUARES] = leaper_table(&[(-2, -2), (-2, 2), (2, -2), (2, 2)]);

pub fn king(sq: Coord) -> u64 {
    KING[sq.index()]
}

pub fn knight(sq: Coord) -> u64 {
    KNIGHT[sq.index()]
}

/// One step diagonally (Shatranj queen).
pub fn fers(sq: Coord) -> u64 {
    FERS[sq.index()]
}

/// Two-step diagonal leap (Shatranj bishop).
pub fn alfil(sq: Coord) -> u64 {
    ALFIL[sq.index()]
}

fn ray(sq: Coord, dring: i8, dfile: i8, occupied: u64) -> u64 {
    let mut targets = 0;
    let mut cur = sq;
    for _ in 0..15 {
        cur = match cur.offset(dring, dfile) {
            Some(next) if next != sq => next,
            _ => break,
        };
        targets |= cur.bit();
        if occupied & cur.bit() != 0 {
            break;
        }
    }
    targets
}

/// Slides both ways around the ring. Never includes the origin.
pub fn ring_slide(sq: Coord, occupied: u64) -> u64 {
    ray(sq, 0, 1, occupied) | ray(sq, 0, -1, occupied)
}

pub fn radial_slide(sq: Coord, occupied: u64) -> u64 {
    ray(sq, 1, 0, occupied) | ray(sq, -1, 0, occupied)
}

pub fn diagonal_slide(sq: Coord, occupied: u64) -> u64 {
    ray(sq, 1, 1, occupied) | ray(sq, 1, -1, occupied) | ray(sq, -1, 1, occupied) | ray(sq, -1, -1, occupied)
}

/// Squares a non-pawn piece reaches (captures included, own pieces not
/// excluded). `byzantine` selects fers/alfil for queen/bishop.
pub fn piece_targets(kind: PieceKind, byzantine: bool, sq: Coord, occupied: u64) -> u64 {
    match kind {
        PieceKind::King => king(sq),
        PieceKind::Knight => knight(sq),
        PieceKind::Rook => ring_slide(sq, occupied) | radial_slide(sq, occupied),
        PieceKind::Queen if byzantine => fers(sq),
        PieceKind::Bishop if byzantine => alfil(sq),
        PieceKind::Queen => ring_slide(sq, occupied) | radial_slide(sq, occupied) | diagonal_slide(sq, occupied),
        PieceKind::Bishop => diagonal_slide(sq, occupied),
        PieceKind::Pawn => 0,
    }
}

/// Diagonal-forward capture squares of a pawn travelling in `dir`.
pub fn pawn_captures(sq: Coord, dir: PawnDir) -> u64 {
    let mut bb = 0;
    for dring in [-1, 1] {
        if let Some(t) = sq.offset(dring, dir.sign()) {
            bb |= t.bit();
        }
    }
    bb
}

pub struct Squares(u64);

impl Iterator for Squares {
    type Item = Coord;

    fn next(&mut self) -> Option<Coord> {
        if self.0 == 0 {
            return None;
        }
        let idx = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Coord::from_index(idx))
    }
}

pub fn squares(bb: u64) -> Squares {
    Squares(bb)
}
