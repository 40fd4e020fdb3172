#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zatrikion_core::{legal_moves, movegen, parse_coord, Color, PawnDir, Piece, PieceKind, Position, Setup, Variant};

/// Piece from a cFEN-style letter; `P`/`S` are clockwise/counterclockwise
/// pawns, lowercase is Black.
pub fn piece(letter: char) -> Piece {
    let color = if letter.is_ascii_uppercase() { Color::White } else { Color::Black };
    match letter.to_ascii_uppercase() {
        'P' => Piece::pawn(color, PawnDir::Clockwise),
        'S' => Piece::pawn(color, PawnDir::Counterclockwise),
        c => Piece::new(color, PieceKind::from_letter(c).unwrap()),
    }
}

/// Builds a position from `"Ke1 Ri1 ka4 pa3"` style placements.
pub fn position(variant: Variant, placements: &str, side: Color) -> Position {
    let mut s = Setup::new(variant);
    for item in placements.split_whitespace() {
        let mut chars = item.chars();
        let p = piece(chars.next().unwrap());
        s.put(parse_coord(chars.as_str()).unwrap(), p);
    }
    s.side(side);
    s.build().unwrap()
}

pub fn random_playout(variant: Variant, plies: u32, rng: &mut ChaCha8Rng) -> Position {
    let mut pos = Position::initial(variant);
    for _ in 0..plies {
        let moves = legal_moves(&pos);
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.random_range(0..moves.len())];
        movegen::apply_move(&mut pos, &m).unwrap();
    }
    pos
}

pub fn sample_positions(variant: Variant, count: usize, seed: u64) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let plies = rng.random_range(4..=40);
            random_playout(variant, plies, &mut rng)
        })
        .collect()
}
