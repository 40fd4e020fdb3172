//! Board geometry, piece taxonomy and variant definitions.
//!
//! The board is an annulus of four rings with sixteen files each. Ring 1 is
//! the king/queen home ring; files wrap modulo 16 and increasing file index
//! is the clockwise direction.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

pub const RINGS: u8 = 4;
pub const FILES: u8 = 16;
pub const SQUARES: usize = (RINGS as usize) * (FILES as usize);

/// A square on the annulus, stored as `(ring - 1) * 16 + file`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Coord(u8);

impl Coord {
    /// `ring` in 1..=4, `file` in 0..=15.
    pub const fn new(ring: u8, file: u8) -> Option<Coord> {
        if ring >= 1 && ring <= RINGS && file < FILES {
            Some(Coord((ring - 1) * FILES + file))
        } else {
            None
        }
    }

    pub(crate) const fn from_index(index: usize) -> Coord {
        debug_assert!(index < SQUARES);
        Coord(index as u8)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn ring(self) -> u8 {
        self.0 / FILES + 1
    }

    pub const fn file(self) -> u8 {
        self.0 % FILES
    }

    pub(crate) const fn bit(self) -> u64 {
        1u64 << self.0
    }

    /// Moves `dring` rings (no wrap) and `dfile` files (wrapping).
    pub const fn offset(self, dring: i8, dfile: i8) -> Option<Coord> {
        let ring = self.ring() as i8 + dring;
        if ring < 1 || ring > RINGS as i8 {
            return None;
        }
        let file = (self.file() as i8 + dfile).rem_euclid(FILES as i8);
        Coord::new(ring as u8, file as u8)
    }

    /// Shifts the file by `steps` in `dir`; the ring is unchanged.
    pub const fn advance(self, dir: PawnDir, steps: i32) -> Coord {
        let delta = (steps * dir.sign() as i32).rem_euclid(FILES as i32);
        let file = (self.file() as i32 + delta) % FILES as i32;
        Coord((self.ring() - 1) * FILES + file as u8)
    }

    /// Square colour as `(ring + file) mod 2`.
    pub const fn parity(self) -> u8 {
        (self.ring() + self.file()) % 2
    }

    /// Reflection `file -> 15 - file`, which swaps the two home camps.
    pub const fn reflect(self) -> Coord {
        Coord((self.ring() - 1) * FILES + (FILES - 1 - self.file()))
    }

    pub fn all() -> impl Iterator<Item = Coord> {
        (0..SQUARES).map(Coord::from_index)
    }
}

pub const fn square_parity(c: Coord) -> u8 {
    c.parity()
}

pub fn advance(c: Coord, dir: PawnDir, steps: i32) -> Coord {
    c.advance(dir, steps)
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.file()) as char, self.ring())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("invalid square `{0}`: expected a file letter a..p followed by a ring digit 1..4")]
pub struct ParseCoordError(pub String);

impl FromStr for Coord {
    type Err = ParseCoordError;

    fn from_str(s: &str) -> Result<Coord, ParseCoordError> {
        let err = || ParseCoordError(s.to_string());
        let bytes = s.as_bytes();
        if bytes.len() != 2 {
            return Err(err());
        }
        let file = bytes[0].wrapping_sub(b'a');
        let ring = bytes[1].wrapping_sub(b'0');
        Coord::new(ring, file).ok_or_else(err)
    }
}

pub fn parse_coord(text: &str) -> Result<Coord, ParseCoordError> {
    text.parse()
}

pub fn format_coord(c: Coord) -> String {
    c.to_string()
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub const ALL: [Color; 2] = [Color::White, Color::Black];

    pub const fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn name(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Black => "black",
        }
    }
}

/// Travel direction of a pawn around the rings.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PawnDir {
    Clockwise,
    Counterclockwise,
}

impl PawnDir {
    pub const fn sign(self) -> i8 {
        match self {
            PawnDir::Clockwise => 1,
            PawnDir::Counterclockwise => -1,
        }
    }

    pub const fn reverse(self) -> PawnDir {
        match self {
            PawnDir::Clockwise => PawnDir::Counterclockwise,
            PawnDir::Counterclockwise => PawnDir::Clockwise,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PieceKind {
    King,
    Queen,
    Rook,
    Bishop,
    Knight,
    Pawn,
}

impl PieceKind {
    pub const ALL: [PieceKind; 6] = [
        PieceKind::King,
        PieceKind::Queen,
        PieceKind::Rook,
        PieceKind::Bishop,
        PieceKind::Knight,
        PieceKind::Pawn,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    /// Upper-case letter; pawns are `P` regardless of direction.
    pub const fn letter(self) -> char {
        match self {
            PieceKind::King => 'K',
            PieceKind::Queen => 'Q',
            PieceKind::Rook => 'R',
            PieceKind::Bishop => 'B',
            PieceKind::Knight => 'N',
            PieceKind::Pawn => 'P',
        }
    }

    pub fn from_letter(c: char) -> Option<PieceKind> {
        Some(match c.to_ascii_uppercase() {
            'K' => PieceKind::King,
            'Q' => PieceKind::Queen,
            'R' => PieceKind::Rook,
            'B' => PieceKind::Bishop,
            'N' => PieceKind::Knight,
            'P' => PieceKind::Pawn,
            _ => return None,
        })
    }
}

/// A piece on the board. Pawns carry their travel direction for life.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Piece {
    color: Color,
    kind: PieceKind,
    pawn_dir: Option<PawnDir>,
}

impl Piece {
    /// A non-pawn piece.
    pub const fn new(color: Color, kind: PieceKind) -> Piece {
        assert!(!matches!(kind, PieceKind::Pawn), "pawns need a direction");
        Piece {
            color,
            kind,
            pawn_dir: None,
        }
    }

    pub const fn pawn(color: Color, dir: PawnDir) -> Piece {
        Piece {
            color,
            kind: PieceKind::Pawn,
            pawn_dir: Some(dir),
        }
    }

    pub const fn color(self) -> Color {
        self.color
    }

    pub const fn kind(self) -> PieceKind {
        self.kind
    }

    pub const fn pawn_dir(self) -> Option<PawnDir> {
        self.pawn_dir
    }

    pub const fn is_pawn(self) -> bool {
        matches!(self.kind, PieceKind::Pawn)
    }

    /// Dense index in `0..14`, distinguishing pawn directions.
    pub const fn index(self) -> usize {
        let per_color = match (self.kind, self.pawn_dir) {
            (PieceKind::Pawn, Some(PawnDir::Counterclockwise)) => 6,
            (kind, _) => kind.index(),
        };
        self.color.index() * 7 + per_color
    }

    /// Same piece with colour swapped and pawn direction reversed, as seen
    /// through the board reflection `file -> 15 - file`.
    pub const fn mirrored(self) -> Piece {
        Piece {
            color: self.color.opposite(),
            kind: self.kind,
            pawn_dir: match self.pawn_dir {
                Some(d) => Some(d.reverse()),
                None => None,
            },
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Variant {
    ByzantineRegular,
    ByzantineSymmetric,
    CircularFIDE,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::ByzantineRegular, Variant::ByzantineSymmetric, Variant::CircularFIDE];

    /// Shatranj-style movement (fers queen, alfil bishop, no promotion).
    pub const fn is_byzantine(self) -> bool {
        !matches!(self, Variant::CircularFIDE)
    }

    pub const fn name(self) -> &'static str {
        match self {
            Variant::ByzantineRegular => "byzantine-regular",
            Variant::ByzantineSymmetric => "byzantine-symmetric",
            Variant::CircularFIDE => "circular-fide",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("unknown variant `{0}` (expected byzantine-regular, byzantine-symmetric or circular-fide)")]
pub struct ParseVariantError(pub String);

impl FromStr for Variant {
    type Err = ParseVariantError;

    fn from_str(s: &str) -> Result<Variant, ParseVariantError> {
        match s {
            "byzantine-regular" | "regular" => Ok(Variant::ByzantineRegular),
            "byzantine-symmetric" | "symmetric" => Ok(Variant::ByzantineSymmetric),
            "circular-fide" | "circular" => Ok(Variant::CircularFIDE),
            _ => Err(ParseVariantError(s.to_string())),
        }
    }
}

/// Rule toggles. `for_variant` gives the defaults; everything else is an
/// explicit override.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RuleConfig {
    pub annihilation: bool,
    pub double_step: bool,
    pub en_passant: bool,
    pub promotion: bool,
    pub stalemate_is_win: bool,
    pub bare_king_rule: bool,
    pub threefold_repetition_draw: bool,
}

impl RuleConfig {
    pub const fn for_variant(variant: Variant) -> RuleConfig {
        let byzantine = variant.is_byzantine();
        RuleConfig {
            annihilation: byzantine,
            double_step: !byzantine,
            en_passant: !byzantine,
            promotion: !byzantine,
            stalemate_is_win: byzantine,
            bare_king_rule: byzantine,
            threefold_repetition_draw: true,
        }
    }
}
