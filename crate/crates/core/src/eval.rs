//! Static evaluation: material plus a small mobility term.

use serde::{Deserialize, Serialize};

use crate::attacks;
use crate::board::{Color, PieceKind, Variant};
use crate::position::Position;

/// Centipawn values for one rule family. Kings carry no material value.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PieceValues {
    pub pawn: i32,
    pub queen: i32,
    pub rook: i32,
    pub bishop: i32,
    pub knight: i32,
}

impl PieceValues {
    /// Fers and alfil are both worth a pawn and a half.
    pub const BYZANTINE: PieceValues = PieceValues {
        pawn: 100,
        queen: 150,
        rook: 500,
        bishop: 150,
        knight: 300,
    };

    pub const FIDE: PieceValues = PieceValues {
        pawn: 100,
        queen: 1000,
        rook: 500,
        bishop: 350,
        knight: 300,
    };

    pub fn value(&self, kind: PieceKind) -> i32 {
        match kind {
            PieceKind::King => 0,
            PieceKind::Queen => self.queen,
            PieceKind::Rook => self.rook,
            PieceKind::Bishop => self.bishop,
            PieceKind::Knight => self.knight,
            PieceKind::Pawn => self.pawn,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EvalParams {
    pub byzantine: PieceValues,
    pub circular: PieceValues,
    /// Centipawns per pseudo-legal move of difference between the sides.
    pub mobility_weight: i32,
    /// Maximum absolute random offset added by the search; 0 disables it.
    pub jitter_cp: i32,
}

impl Default for EvalParams {
    fn default() -> EvalParams {
        EvalParams {
            byzantine: PieceValues::BYZANTINE,
            circular: PieceValues::FIDE,
            mobility_weight: 2,
            jitter_cp: 0,
        }
    }
}

impl EvalParams {
    pub fn values(&self, variant: Variant) -> &PieceValues {
        if variant.is_byzantine() {
            &self.byzantine
        } else {
            &self.circular
        }
    }
}

pub fn material(pos: &Position, color: Color, values: &PieceValues) -> i32 {
    pos.pieces(color).map(|(_, p)| values.value(p.kind())).sum()
}

/// Material difference from the side to move's point of view.
pub fn material_balance(pos: &Position, params: &EvalParams) -> i32 {
    let values = params.values(pos.variant());
    let us = pos.side_to_move();
    material(pos, us, values) - material(pos, us.opposite(), values)
}

/// Pseudo-legal move count of `color`, ignoring en passant and promotion
/// multiplicity.
pub fn mobility(pos: &Position, color: Color) -> i32 {
    let occ = pos.occupied();
    let own = pos.color_mask(color);
    let enemy = pos.color_mask(color.opposite());
    let byzantine = pos.variant().is_byzantine();
    let mut count = 0;
    for (sq, piece) in pos.pieces(color) {
        count += match piece.pawn_dir() {
            Some(dir) => {
                let push = (occ & sq.advance(dir, 1).bit() == 0) as u32;
                push + (attacks::pawn_captures(sq, dir) & enemy).count_ones()
            }
            None => (attacks::piece_targets(piece.kind(), byzantine, sq, occ) & !own).count_ones(),
        };
    }
    count as i32
}

/// Material plus mobility, side-to-move perspective, without jitter.
pub fn evaluate(pos: &Position, params: &EvalParams) -> i32 {
    let us = pos.side_to_move();
    let mobility = if params.mobility_weight == 0 {
        0
    } else {
        params.mobility_weight * (mobility(pos, us) - mobility(pos, us.opposite()))
    };
    material_balance(pos, params) + mobility
}

/// Deterministic offset in `[-jitter, jitter]` keyed by position and salt.
pub(crate) fn jitter(hash: u64, salt: u64, jitter_cp: i32) -> i32 {
    if jitter_cp <= 0 {
        return 0;
    }
    let mut z = hash ^ salt;
    z = (z ^ (z >> 33)).wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z = (z ^ (z >> 33)).wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    z ^= z >> 33;
    let span = 2 * jitter_cp as u64 + 1;
    (z % span) as i32 - jitter_cp
}
