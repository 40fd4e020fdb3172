//! Zobrist keys over (square, piece incl. pawn direction), side to move and
//! en-passant square.

use crate::board::{Coord, Piece, SQUARES};

const PIECE_KINDS: usize = 14;

const fn splitmix(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (state, z ^ (z >> 31))
}

struct Keys {
    pieces: [[u64; PIECE_KINDS]; SQUARES],
    ep: [u64; SQUARES],
    black_to_move: u64,
}

const fn build() -> Keys {
    let mut keys = Keys {
        pieces: [[0; PIECE_KINDS]; SQUARES],
        ep: [0; SQUARES],
        black_to_move: 0,
    };
    let mut state = 0x5A7E_1C10_0B12_2024u64;
    let mut sq = 0;
    while sq < SQUARES {
        let mut p = 0;
        while p < PIECE_KINDS {
            let (s, k) = splitmix(state);
            state = s;
            keys.pieces[sq][p] = k;
            p += 1;
        }
        let (s, k) = splitmix(state);
        state = s;
        keys.ep[sq] = k;
        sq += 1;
    }
    keys.black_to_move = splitmix(state).1;
    keys
}

static KEYS: Keys = build();

pub fn piece(sq: Coord, piece: Piece) -> u64 {
    KEYS.pieces[sq.index()][piece.index()]
}

pub fn ep(sq: Coord) -> u64 {
    KEYS.ep[sq.index()]
}

pub fn black_to_move() -> u64 {
    KEYS.black_to_move
}
