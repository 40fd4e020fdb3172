//! A deliberately plain move generator for the circular board.
//!
//! Everything is recomputed from ring and file arithmetic on a mailbox;
//! nothing is shared with the main engine. Only meant for checking it.

const RINGS: i32 = 4;
const FILES: i32 = 16;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Man {
    pub white: bool,
    /// One of `KQRBNP`.
    pub kind: char,
    /// Pawns only: moves towards increasing files.
    pub clockwise: bool,
}

#[derive(Clone, Debug)]
pub struct Board {
    pub byzantine: bool,
    pub annihilation: bool,
    /// `cells[ring][file]`, rings 0..4.
    pub cells: [[Option<Man>; 16]; 4],
    pub white_to_move: bool,
    /// Skipped square of the last double step and the square of the pawn
    /// that made it.
    pub en_passant: Option<((i32, i32), (i32, i32))>,
}

const KING: [(i32, i32); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];
const KNIGHT: [(i32, i32); 8] = [(1, 2), (2, 1), (-1, 2), (-2, 1), (1, -2), (2, -1), (-1, -2), (-2, -1)];
const ORTHOGONAL: [(i32, i32); 4] = [(0, 1), (0, -1), (1, 0), (-1, 0)];
const DIAGONAL: [(i32, i32); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

fn wrap(file: i32) -> i32 {
    file.rem_euclid(FILES)
}

fn home_file(white: bool, clockwise: bool) -> i32 {
    match (white, clockwise) {
        (true, false) => 2,
        (true, true) => 5,
        (false, false) => 10,
        (false, true) => 13,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Step {
    pub from: (i32, i32),
    pub to: (i32, i32),
    pub promote: Option<char>,
}

impl Board {
    /// Reads the placement, side, en passant and clock fields of a cFEN
    /// string. Annihilation follows the rule family unless overridden.
    pub fn from_cfen(text: &str, byzantine: bool) -> Result<Board, String> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(format!("expected 5 fields, got {}", fields.len()));
        }
        let rows: Vec<&str> = fields[0].split('/').collect();
        if rows.len() != 4 {
            return Err("expected 4 rings".into());
        }
        let mut cells = [[None; 16]; 4];
        for (r, row) in rows.iter().enumerate() {
            let mut f = 0usize;
            let mut digits = String::new();
            let flush = |digits: &mut String, f: &mut usize| {
                if !digits.is_empty() {
                    *f += digits.parse::<usize>().unwrap();
                    digits.clear();
                }
            };
            for ch in row.chars() {
                if ch.is_ascii_digit() {
                    digits.push(ch);
                    continue;
                }
                flush(&mut digits, &mut f);
                if f >= 16 {
                    return Err(format!("ring {} too long", r + 1));
                }
                let white = ch.is_ascii_uppercase();
                let up = ch.to_ascii_uppercase();
                let man = match up {
                    'K' | 'Q' | 'R' | 'B' | 'N' => Man {
                        white,
                        kind: up,
                        clockwise: false,
                    },
                    'P' => Man {
                        white,
                        kind: 'P',
                        clockwise: true,
                    },
                    'S' => Man {
                        white,
                        kind: 'P',
                        clockwise: false,
                    },
                    _ => return Err(format!("bad letter {ch}")),
                };
                cells[r][f] = Some(man);
                f += 1;
            }
            flush(&mut digits, &mut f);
            if f != 16 {
                return Err(format!("ring {} has {f} squares", r + 1));
            }
        }
        let white_to_move = match fields[1] {
            "w" => true,
            "b" => false,
            other => return Err(format!("bad side {other}")),
        };
        let mut board = Board {
            byzantine,
            annihilation: byzantine,
            cells,
            white_to_move,
            en_passant: None,
        };
        if fields[2] != "-" {
            let mut chars = fields[2].chars();
            let file = chars.next().ok_or("empty ep")? as i32 - 'a' as i32;
            let ring = chars.as_str().parse::<i32>().map_err(|e| e.to_string())? - 1;
            // The pawn that just moved stands one step beyond the target.
            let victim = [(true, 1), (false, -1)].into_iter().find_map(|(cw, d)| {
                let sq = (ring, wrap(file + d));
                let m = board.at(sq)?;
                (m.kind == 'P' && m.white != white_to_move && m.clockwise == cw).then_some(sq)
            });
            board.en_passant = Some(((ring, file), victim.ok_or("no en passant victim")?));
        }
        Ok(board)
    }

    fn at(&self, (r, f): (i32, i32)) -> Option<Man> {
        self.cells[r as usize][f as usize]
    }

    fn set(&mut self, (r, f): (i32, i32), m: Option<Man>) {
        self.cells[r as usize][f as usize] = m;
    }

    fn on_board(r: i32) -> bool {
        (0..RINGS).contains(&r)
    }

    /// Squares a piece standing on `sq` attacks or may move to, ignoring
    /// what stands on the destination. Pawn pushes are handled elsewhere.
    /// May repeat squares.
    fn reach(&self, sq: (i32, i32), man: Man, out: &mut Vec<(i32, i32)>) {
        let (r, f) = sq;
        let leap = |out: &mut Vec<(i32, i32)>, dr: i32, df: i32| {
            if Self::on_board(r + dr) {
                out.push((r + dr, wrap(f + df)));
            }
        };
        let slide = |out: &mut Vec<(i32, i32)>, dr: i32, df: i32| {
            let (mut rr, mut ff) = (r, f);
            loop {
                rr += dr;
                ff = wrap(ff + df);
                if !Self::on_board(rr) || (rr, ff) == sq {
                    break;
                }
                out.push((rr, ff));
                if self.at((rr, ff)).is_some() {
                    break;
                }
            }
        };
        match man.kind {
            'K' => {
                for (dr, df) in KING {
                    leap(out, dr, df);
                }
            }
            'N' => {
                for (dr, df) in KNIGHT {
                    leap(out, dr, df);
                }
            }
            'Q' if self.byzantine => {
                for (dr, df) in DIAGONAL {
                    leap(out, dr, df);
                }
            }
            'B' if self.byzantine => {
                for (dr, df) in DIAGONAL {
                    leap(out, 2 * dr, 2 * df);
                }
            }
            'R' => {
                for (dr, df) in ORTHOGONAL {
                    slide(out, dr, df);
                }
            }
            'B' => {
                for (dr, df) in DIAGONAL {
                    slide(out, dr, df);
                }
            }
            'Q' => {
                for (dr, df) in ORTHOGONAL.into_iter().chain(DIAGONAL) {
                    slide(out, dr, df);
                }
            }
            'P' => {
                let d = if man.clockwise { 1 } else { -1 };
                leap(out, 1, d);
                leap(out, -1, d);
            }
            _ => unreachable!(),
        }
    }

    fn enemy(&self, sq: (i32, i32), white: bool, kinds: &[char]) -> bool {
        Self::on_board(sq.0)
            && self
                .at((sq.0, wrap(sq.1)))
                .is_some_and(|m| m.white == white && kinds.contains(&m.kind))
    }

    /// First piece met walking from `target` in one direction.
    fn first_hit(&self, target: (i32, i32), dr: i32, df: i32) -> Option<Man> {
        let (mut r, mut f) = target;
        loop {
            r += dr;
            f = wrap(f + df);
            if !Self::on_board(r) || (r, f) == target {
                return None;
            }
            if let Some(m) = self.at((r, f)) {
                return Some(m);
            }
        }
    }

    /// Looks outward from `target` for pieces of colour `white` that hit it.
    fn attacked_by(&self, target: (i32, i32), white: bool) -> bool {
        let (r, f) = target;
        if KING.iter().any(|&(dr, df)| self.enemy((r + dr, f + df), white, &['K'])) {
            return true;
        }
        if KNIGHT.iter().any(|&(dr, df)| self.enemy((r + dr, f + df), white, &['N'])) {
            return true;
        }
        for dr in [-1, 1] {
            let cw = (r + dr, f - 1);
            let ccw = (r + dr, f + 1);
            let pawn = |sq: (i32, i32), clockwise: bool| {
                Self::on_board(sq.0)
                    && self
                        .at((sq.0, wrap(sq.1)))
                        .is_some_and(|m| m.white == white && m.kind == 'P' && m.clockwise == clockwise)
            };
            if pawn(cw, true) || pawn(ccw, false) {
                return true;
            }
        }
        let hits = |dirs: [(i32, i32); 4], kinds: &[char]| {
            dirs.iter().any(|&(dr, df)| {
                self.first_hit(target, dr, df)
                    .is_some_and(|m| m.white == white && kinds.contains(&m.kind))
            })
        };
        if self.byzantine {
            DIAGONAL.iter().any(|&(dr, df)| self.enemy((r + dr, f + df), white, &['Q']))
                || DIAGONAL.iter().any(|&(dr, df)| self.enemy((r + 2 * dr, f + 2 * df), white, &['B']))
                || hits(ORTHOGONAL, &['R'])
        } else {
            hits(ORTHOGONAL, &['R', 'Q']) || hits(DIAGONAL, &['B', 'Q'])
        }
    }

    fn king(&self, white: bool) -> (i32, i32) {
        for r in 0..RINGS {
            for f in 0..FILES {
                if self.at((r, f)).is_some_and(|m| m.kind == 'K' && m.white == white) {
                    return (r, f);
                }
            }
        }
        panic!("no king")
    }

    fn candidate_steps(&self) -> Vec<Step> {
        let us = self.white_to_move;
        let mut steps = Vec::new();
        let mut reach = Vec::new();
        for r in 0..RINGS {
            for f in 0..FILES {
                let Some(m) = self.at((r, f)) else { continue };
                if m.white != us {
                    continue;
                }
                let from = (r, f);
                if m.kind != 'P' {
                    reach.clear();
                    self.reach(from, m, &mut reach);
                    for &to in &reach {
                        if self.at(to).is_none_or(|t| t.white != us) {
                            steps.push(Step { from, to, promote: None });
                        }
                    }
                    continue;
                }
                let d = if m.clockwise { 1 } else { -1 };
                let mut targets = Vec::new();
                let one = (r, wrap(f + d));
                if self.at(one).is_none() {
                    targets.push(one);
                    let two = (r, wrap(f + 2 * d));
                    if !self.byzantine && f == home_file(m.white, m.clockwise) && self.at(two).is_none() {
                        targets.push(two);
                    }
                }
                reach.clear();
                self.reach(from, m, &mut reach);
                for &to in &reach {
                    let enemy = self.at(to).is_some_and(|t| t.white != us);
                    let ep = self.en_passant.is_some_and(|(sq, _)| sq == to);
                    if enemy || ep {
                        targets.push(to);
                    }
                }
                let promo_file = home_file(!m.white, !m.clockwise);
                for to in targets {
                    if !self.byzantine && to.1 == promo_file {
                        for p in ['Q', 'R', 'B', 'N'] {
                            steps.push(Step {
                                from,
                                to,
                                promote: Some(p),
                            });
                        }
                    } else {
                        steps.push(Step { from, to, promote: None });
                    }
                }
            }
        }
        steps.sort();
        steps.dedup();
        steps
    }

    /// The position after `step`, without a legality check.
    pub fn after(&self, step: &Step) -> Board {
        let mut next = self.clone();
        let mut man = self.at(step.from).unwrap();
        next.set(step.from, None);
        next.en_passant = None;
        if man.kind == 'P' {
            if let Some((sq, victim)) = self.en_passant {
                if sq == step.to && step.from.0 != step.to.0 {
                    next.set(victim, None);
                }
            }
            let d = if man.clockwise { 1 } else { -1 };
            if step.to == (step.from.0, wrap(step.from.1 + 2 * d)) && !self.byzantine {
                next.en_passant = Some(((step.from.0, wrap(step.from.1 + d)), step.to));
            }
            if let Some(p) = step.promote {
                man = Man {
                    white: man.white,
                    kind: p,
                    clockwise: false,
                };
            }
        }
        next.set(step.to, Some(man));
        if self.annihilation {
            let mut doomed = Vec::new();
            for r in 0..RINGS {
                for f in 0..FILES {
                    let a = next.at((r, f));
                    let b = next.at((r, wrap(f + 1)));
                    let ours = |m: Option<Man>, cw: bool| m.is_some_and(|m| m.white == man.white && m.kind == 'P' && m.clockwise == cw);
                    if ours(a, true) && ours(b, false) {
                        doomed.push((r, f));
                        doomed.push((r, wrap(f + 1)));
                    }
                }
            }
            for sq in doomed {
                next.set(sq, None);
            }
        }
        next.white_to_move = !self.white_to_move;
        next
    }

    pub fn legal_steps(&self) -> Vec<Step> {
        let us = self.white_to_move;
        self.candidate_steps()
            .into_iter()
            .filter(|s| {
                let next = self.after(s);
                !next.attacked_by(next.king(us), !us)
            })
            .collect()
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let steps = self.legal_steps();
        if depth == 1 {
            return steps.len() as u64;
        }
        steps.iter().map(|s| self.after(s).perft(depth - 1)).sum()
    }
}
