#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zatrikion::format_cfen;
use zatrikion_core::{legal_moves, movegen, Position, Variant};
use zatrikion_reference::Board;

/// Plays `plies` uniformly random legal moves from the start, stopping
/// early when no move is left.
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

/// `count` seeded positions 6 to 60 plies into random games.
pub fn middle_positions(variant: Variant, count: usize, seed: u64) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let plies = rng.random_range(6..=60);
            random_playout(variant, plies, &mut rng)
        })
        .collect()
}

pub fn reference_board(pos: &Position) -> Board {
    Board::from_cfen(&format_cfen(pos), pos.variant().is_byzantine()).unwrap()
}

pub mod ladder;
