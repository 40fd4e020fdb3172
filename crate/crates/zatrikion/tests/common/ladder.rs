//! Hand-built adjudication cases. Placements use `<letter><square>`, with
//! `P`/`S` for clockwise/counterclockwise pawns and lowercase for Black.

use zatrikion_core::{movegen, parse_coord, Color, PawnDir, Piece, PieceKind, Position, Setup, Variant};

pub struct Case {
    pub name: &'static str,
    pub variant: Variant,
    pub placements: &'static str,
    pub side: Color,
    pub moves: &'static [&'static str],
    pub expected: &'static str,
}

use Color::{Black, White};
use Variant::{ByzantineRegular as Reg, ByzantineSymmetric as Sym, CircularFIDE as Circ};

const fn case(
    name: &'static str,
    variant: Variant,
    placements: &'static str,
    side: Color,
    moves: &'static [&'static str],
    expected: &'static str,
) -> Case {
    Case {
        name,
        variant,
        placements,
        side,
        moves,
        expected,
    }
}

// Rook on i4 sweeps ring 4; Black's own pawns wall off ring 3.
const ROOK_MATED: &str = "Ke1 Ri4 ka4 pa3 pb3 pp3";
// Black king a4 boxed in by Kc3, Rp1 and Nc2 without being attacked.
const BOXED: &str = "Kc3 Rp1 Nc2 ka4";
const BOXED_WITH_PAWN: &str = "Kc3 Rp1 Nc2 Ph1 ka4";

pub const CASES: &[Case] = &[
    case("start regular", Reg, "", White, &[], "ongoing"),
    case("start symmetric", Sym, "", White, &[], "ongoing"),
    case("start circular", Circ, "", White, &[], "ongoing"),
    case("rook mate regular", Reg, ROOK_MATED, Black, &[], "1-0 mate"),
    case("rook mate symmetric", Sym, ROOK_MATED, Black, &[], "1-0 mate"),
    case("rook mate circular", Circ, ROOK_MATED, Black, &[], "1-0 mate"),
    case("rook mate delivered", Reg, "Ke1 Ri1 ka4 pa3 pb3 pp3", White, &["i1i4"], "1-0 mate"),
    case("black mates white", Sym, "kh1 ri4 Ka4 Sa3 Sb3 Sp3", White, &[], "0-1 mate"),
    case("stalemate wins regular", Reg, BOXED, Black, &[], "1-0 stalemate"),
    case("stalemate wins symmetric", Sym, BOXED, Black, &[], "1-0 stalemate"),
    case("stalemate draws circular", Circ, BOXED, Black, &[], "1/2-1/2 stalemate"),
    case(
        "stalemate with pawns circular",
        Circ,
        BOXED_WITH_PAWN,
        Black,
        &[],
        "1/2-1/2 stalemate",
    ),
    case("bare king two pieces", Reg, "Kh1 Rc1 Nf2 ka4", Black, &[], "1-0 bare-king"),
    case("bare king protected rook", Reg, "Kc3 Rb4 ka4", Black, &[], "1-0 bare-king"),
    case("bare king out of reach", Sym, "Kh1 Rd2 ka4", Black, &[], "1-0 bare-king"),
    case("bare king black wins", Sym, "Ka4 kh1 nd2", White, &[], "0-1 bare-king"),
    case("bare king rule off circular", Circ, "Kh1 Rd2 ka4", Black, &[], "ongoing"),
    case("riposte draw rook", Reg, "Kh1 Rb4 ka4", Black, &[], "1/2-1/2 two-bare-kings"),
    case("riposte draw symmetric", Sym, "Ka4 kh1 qb3", White, &[], "1/2-1/2 two-bare-kings"),
    case("riposte taken", Reg, "Kh1 Rb4 ka4", Black, &["a4b4"], "1/2-1/2 two-bare-kings"),
    case("two bare kings regular", Reg, "Ka1 kh3", White, &[], "1/2-1/2 two-bare-kings"),
    case("two bare kings circular", Circ, "Ka1 kh3", Black, &[], "1/2-1/2 two-bare-kings"),
    case(
        "self bared by annihilation",
        Reg,
        "Ka1 Pe2 Sg2 kh4 nc4",
        White,
        &["e2f2"],
        "0-1 bare-king",
    ),
    case(
        "repetition",
        Circ,
        "",
        White,
        &["d3b2", "m3o2", "b2d3", "o2m3", "d3b2", "m3o2", "b2d3", "o2m3"],
        "1/2-1/2 repetition",
    ),
];

pub fn piece(letter: char) -> Piece {
    let color = if letter.is_ascii_uppercase() { White } else { Black };
    match letter.to_ascii_uppercase() {
        'P' => Piece::pawn(color, PawnDir::Clockwise),
        'S' => Piece::pawn(color, PawnDir::Counterclockwise),
        c => Piece::new(color, PieceKind::from_letter(c).expect("piece letter")),
    }
}

impl Case {
    /// The position after the listed moves.
    pub fn position(&self) -> Position {
        let mut pos = if self.placements.is_empty() {
            Position::initial(self.variant)
        } else {
            let mut s = Setup::new(self.variant);
            for item in self.placements.split_whitespace() {
                let mut chars = item.chars();
                let p = piece(chars.next().unwrap());
                s.put(parse_coord(chars.as_str()).unwrap(), p);
            }
            s.side(self.side);
            s.build().unwrap_or_else(|e| panic!("{}: {e}", self.name))
        };
        for m in self.moves {
            movegen::play(&mut pos, m).unwrap_or_else(|e| panic!("{}: {m}: {e}", self.name));
        }
        pos
    }
}
