mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zatrikion_core::attacks::shift_ccw;
use zatrikion_core::movegen::{apply_move, in_check, is_attacked, legal_moves, pseudo_legal_moves, undo_move};
use zatrikion_core::{Color, PawnDir, PieceKind, Position, Variant};

fn variant() -> impl Strategy<Value = Variant> {
    prop::sample::select(Variant::ALL.to_vec())
}

fn facing_pairs(pos: &Position, color: Color) -> u64 {
    pos.pawn_mask(color, PawnDir::Clockwise) & shift_ccw(pos.pawn_mask(color, PawnDir::Counterclockwise))
}

/// Walks a random game, calling `check` before each move with the position
/// and the chosen move.
fn walk(variant: Variant, seed: u64, plies: u32, mut check: impl FnMut(&Position, &zatrikion_core::Move)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = Position::initial(variant);
    for _ in 0..plies {
        let moves = legal_moves(&pos);
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.random_range(0..moves.len())];
        check(&pos, &m);
        apply_move(&mut pos, &m).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn legal_moves_never_expose_the_king(v in variant(), seed in any::<u64>(), plies in 1u32..80) {
        walk(v, seed, plies, |pos, _| {
            let legal = legal_moves(pos);
            for m in pseudo_legal_moves(pos) {
                let mut after = pos.clone();
                let us = pos.side_to_move();
                let ok = apply_move(&mut after, &m).is_ok();
                if ok {
                    assert!(!is_attacked(&after, after.king(us), us.opposite()));
                }
                assert_eq!(ok, legal.contains(&m), "{m}");
            }
        });
    }

    #[test]
    fn incremental_hash_matches_scratch(v in variant(), seed in any::<u64>(), plies in 1u32..120) {
        walk(v, seed, plies, |pos, m| {
            assert_eq!(pos.hash(), pos.compute_hash());
            let mut after = pos.clone();
            apply_move(&mut after, m).unwrap();
            assert_eq!(after.hash(), after.compute_hash());
        });
    }

    #[test]
    fn undo_restores_everything(v in variant(), seed in any::<u64>(), plies in 1u32..120) {
        walk(v, seed, plies, |pos, _| {
            for m in legal_moves(pos) {
                let mut p = pos.clone();
                let token = apply_move(&mut p, &m).unwrap();
                undo_move(&mut p, &token).unwrap();
                assert_eq!(&p, pos, "{m}");
            }
        });
    }

    #[test]
    fn mirrored_positions_have_equal_move_counts(v in variant(), seed in any::<u64>(), plies in 0u32..100) {
        walk(v, seed, plies, |pos, _| {
            let m = pos.mirror();
            assert_eq!(legal_moves(pos).len(), legal_moves(&m).len());
            assert_eq!(in_check(pos), in_check(&m));
        });
    }

    #[test]
    fn no_facing_own_pawns_survive(v in prop::sample::select(vec![Variant::ByzantineRegular, Variant::ByzantineSymmetric]), seed in any::<u64>(), plies in 1u32..150) {
        walk(v, seed, plies, |pos, m| {
            assert_eq!(facing_pairs(pos, Color::White) | facing_pairs(pos, Color::Black), 0);
            let removed: Vec<_> = m.annihilated().collect();
            assert!(removed.len() % 2 == 0);
            let mut after = pos.clone();
            apply_move(&mut after, m).unwrap();
            for (sq, pawn) in removed {
                assert!(pawn.is_pawn() && pawn.color() == m.piece.color());
                assert!(after.piece_at(sq).is_none());
            }
            if !m.annihilated.is_empty() || m.is_capture() {
                assert_eq!(after.no_capture_clock(), 0);
            }
        });
    }

    #[test]
    fn byzantine_pawns_never_promote(v in prop::sample::select(vec![Variant::ByzantineRegular, Variant::ByzantineSymmetric]), seed in any::<u64>(), plies in 1u32..200) {
        walk(v, seed, plies, |pos, m| {
            assert!(m.promotion.is_none());
            assert!(!m.is_double_step && !m.is_en_passant);
            assert!(pos.ep_target().is_none());
        });
    }

    #[test]
    fn circular_promotions_offer_every_piece(seed in any::<u64>(), plies in 1u32..200) {
        walk(Variant::CircularFIDE, seed, plies, |pos, m| {
            if m.promotion.is_some() {
                let kinds: Vec<_> = legal_moves(pos)
                    .into_iter()
                    .filter(|o| o.from == m.from && o.to == m.to)
                    .filter_map(|o| o.promotion)
                    .collect();
                for k in [PieceKind::Queen, PieceKind::Rook, PieceKind::Bishop, PieceKind::Knight] {
                    assert!(kinds.contains(&k));
                }
            }
            assert!(m.annihilated.is_empty());
        });
    }
}
