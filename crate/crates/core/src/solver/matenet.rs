//! Lower bound on the Black moves that must come before White, standing
//! still until then, can mate in one.
//!
//! White's mating move checks the Black king on some square `K`. Each flight
//! of `K` that no White man could ever cover needs a Black blocker, the
//! squares the mating move and the check travel over must be empty, and the
//! king has to walk to `K`. A Black move leaves one square and arrives on
//! one, which turns those needs into a move count. Cover is taken from
//! empty-board attacks, so the count never overshoots.

use std::sync::OnceLock;

use pathfinding::prelude::{kuhn_munkres, Matrix};
use rustc_hash::FxHashMap;

use crate::board::attacks::{self, Bitboard};
use crate::board::{Color, PieceKind, Position, Square};

/// One way White could mate a king standing on a particular square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Net {
    /// Must be empty when White moves.
    line: Bitboard,
    /// Flights no White man can reach.
    flights: Bitboard,
    to: Bitboard,
    /// Pawn push: `to` must be empty.
    push: bool,
    /// Pawn capture: `to` must hold a Black man.
    capture: bool,
    /// The White man making the mating move.
    from: Square,
    /// The checking man, when a Black man taking it would end the check.
    checker: Option<Square>,
}

struct Table {
    nets: Vec<Vec<Net>>,
    targets: Bitboard,
}

const RANK_5: Bitboard = 0xff << 32;
const FILE_A: Bitboard = 0x0101_0101_0101_0101;
const FILE_H: Bitboard = FILE_A << 7;

fn reach(kind: PieceKind, sq: Square) -> Bitboard {
    match kind {
        PieceKind::Pawn => attacks::pawn(Color::White, sq),
        PieceKind::Knight => attacks::knight(sq),
        PieceKind::Bishop => attacks::bishop(sq, 0),
        PieceKind::Rook => attacks::rook(sq, 0),
        PieceKind::Queen => attacks::queen(sq, 0),
        PieceKind::King => attacks::king(sq),
    }
}

fn king_distance(a: Square, b: Square) -> u32 {
    a.file().abs_diff(b.file()).max(a.rank().abs_diff(b.rank())) as u32
}

/// Knight moves between two squares on an empty board.
fn knight_distance(a: Square, b: Square) -> u32 {
    static TABLE: OnceLock<Vec<[u8; 64]>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        Square::all()
            .map(|s| {
                let mut d = [u8::MAX; 64];
                d[s.index()] = 0;
                let mut frontier = s.bit();
                let mut step = 0;
                while frontier != 0 {
                    step += 1;
                    let mut next = 0;
                    for f in attacks::squares(frontier) {
                        for t in attacks::squares(attacks::knight(f)) {
                            if d[t.index()] == u8::MAX {
                                d[t.index()] = step;
                                next |= t.bit();
                            }
                        }
                    }
                    frontier = next;
                }
                d
            })
            .collect()
    });
    table[a.index()][b.index()] as u32
}

const FAR: u32 = 64;

/// Fewest moves a Black man needs from `a` to `b` if nothing stood in its way.
fn black_distance(kind: PieceKind, a: Square, b: Square) -> u32 {
    if a == b {
        return 0;
    }
    let aligned = |diag: bool| {
        let (df, dr) = (a.file().abs_diff(b.file()), a.rank().abs_diff(b.rank()));
        if diag {
            df == dr
        } else {
            df == 0 || dr == 0
        }
    };
    match kind {
        PieceKind::Knight => knight_distance(a, b),
        PieceKind::Bishop if aligned(true) => 1,
        PieceKind::Bishop if (a.file() + a.rank()) % 2 == (b.file() + b.rank()) % 2 => 2,
        PieceKind::Bishop => FAR,
        PieceKind::Rook => 1 + !aligned(false) as u32,
        PieceKind::Queen => 1 + !(aligned(false) || aligned(true)) as u32,
        PieceKind::King => king_distance(a, b),
        PieceKind::Pawn => {
            let double = (a.rank() == 6) as u32;
            let promote = (a.rank() as u32).saturating_sub(double) + 1;
            let (df, dr) = (a.file().abs_diff(b.file()) as u32, a.rank() as u32);
            if b.rank() < a.rank() && df <= dr - b.rank() as u32 {
                let dr = dr - b.rank() as u32;
                let direct = df.max(if dr >= 2 { dr - double } else { dr });
                direct.min(promote)
            } else {
                promote
            }
        }
    }
}

fn orthogonal(a: Square, b: Square) -> bool {
    a.file() == b.file() || a.rank() == b.rank()
}

/// A man of `kind` on `a` would bear on `b` along an open line.
fn lines_up(kind: PieceKind, a: Square, b: Square) -> bool {
    let on_line = attacks::aligned(a, b) && a != b;
    match kind {
        PieceKind::Rook => on_line && orthogonal(a, b),
        PieceKind::Bishop => on_line && !orthogonal(a, b),
        PieceKind::Queen => on_line,
        _ => false,
    }
}

/// A Black man of `kind` on `from` attacks `target` whatever else stands
/// on the board.
fn surely_attacks(kind: PieceKind, from: Square, target: Square) -> bool {
    let t = target.bit();
    let near = attacks::king(from) & t != 0;
    match kind {
        PieceKind::Pawn => attacks::pawn(Color::Black, from) & t != 0,
        PieceKind::Knight => attacks::knight(from) & t != 0,
        PieceKind::Bishop => near && !orthogonal(from, target),
        PieceKind::Rook => near && orthogonal(from, target),
        PieceKind::Queen => near,
        PieceKind::King => false,
    }
}

/// Black kinds a man can turn into, with the pawn first.
const BLACK_KINDS: [PieceKind; 5] =
    [PieceKind::Pawn, PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen];

/// Fewest moves from one (square, kind) to every (square, kind) for a Black
/// man while White stands still. `walls` can never be entered or crossed;
/// other men are taken to get out of the way, and White men to be taken
/// when convenient. A stop that checks the White king is reached but not
/// left, since only Black's last move may check.
type Routes = [[u8; 64]; 5];

fn routes(walls: Bitboard, white: Bitboard, wk: Square, from: Square, kind: PieceKind) -> Box<Routes> {
    let mut d = Box::new([[u8::MAX; 64]; 5]);
    let mut queue: Vec<(Square, usize)> = Vec::with_capacity(128);
    d[kind.index()][from.index()] = 0;
    queue.push((from, kind.index()));
    let mut head = 0;
    while head < queue.len() {
        let (s, k) = queue[head];
        head += 1;
        let kind = BLACK_KINDS[k];
        if head > 1 && surely_attacks(kind, s, wk) {
            continue;
        }
        let step = d[k][s.index()] + 1;
        let mut arrive = |t: Square, kind: PieceKind| {
            let cell = &mut d[kind.index()][t.index()];
            if *cell == u8::MAX {
                *cell = step;
                queue.push((t, kind.index()));
            }
        };
        match kind {
            PieceKind::Pawn => {
                let mut land = |t: Square| {
                    if t.rank() == 0 {
                        for p in PieceKind::PROMOTIONS {
                            arrive(t, p);
                        }
                    } else {
                        arrive(t, PieceKind::Pawn);
                    }
                };
                let Some(one) = s.offset(0, -1) else { continue };
                if walls & one.bit() == 0 {
                    land(one);
                    if s.rank() == 6 {
                        let two = Square::new(s.file(), 4);
                        if walls & two.bit() == 0 {
                            land(two);
                        }
                    }
                }
                for t in attacks::squares(attacks::pawn(Color::Black, s) & white & !walls) {
                    land(t);
                }
            }
            _ => {
                let targets = match kind {
                    PieceKind::Knight => attacks::knight(s),
                    PieceKind::Bishop => attacks::bishop(s, walls),
                    PieceKind::Rook => attacks::rook(s, walls),
                    _ => attacks::queen(s, walls),
                } & !walls;
                for t in attacks::squares(targets) {
                    arrive(t, kind);
                }
            }
        }
    }
    d
}

/// Black men that cannot move at all before Black's last move, found as
/// the largest set whose members are hemmed in by each other, the White
/// king and squares where they would give check.
fn frozen(pos: &Position, men: Bitboard, wk: Square) -> Bitboard {
    let white = pos.color_bb(Color::White) & !wk.bit();
    let mut set = men;
    loop {
        let walls = set | wk.bit();
        let mut next = set;
        for s in attacks::squares(set) {
            let kind = pos.piece_at(s).expect("occupied").kind;
            let free = |t: Square, kind: PieceKind| {
                if t.rank() == 0 && kind == PieceKind::Pawn {
                    PieceKind::PROMOTIONS.iter().any(|&p| !surely_attacks(p, t, wk))
                } else {
                    !surely_attacks(kind, t, wk)
                }
            };
            let exits = match kind {
                PieceKind::Pawn => {
                    let push = s.offset(0, -1).map_or(0, |t| t.bit()) & !walls;
                    let mut exits = push | attacks::pawn(Color::Black, s) & white;
                    if s.rank() == 6 && push != 0 {
                        exits |= Square::new(s.file(), 4).bit() & !walls;
                    }
                    exits
                }
                PieceKind::Knight => attacks::knight(s) & !walls,
                PieceKind::Bishop => attacks::bishop(s, walls) & !walls,
                PieceKind::Rook => attacks::rook(s, walls) & !walls,
                PieceKind::Queen => attacks::queen(s, walls) & !walls,
                PieceKind::King => 0,
            };
            if attacks::squares(exits).any(|t| free(t, kind)) {
                next &= !s.bit();
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Cheapest way to give every target its own man. `cost[t][m]` is the
/// price of man `m` on target `t`.
fn assign(cost: &[Vec<u32>], t: usize, used: u32, bound: u32) -> u32 {
    if t == cost.len() {
        return 0;
    }
    let mut best = FAR * 8;
    for (m, &c) in cost[t].iter().enumerate() {
        if used & 1 << m != 0 || c >= FAR || c >= best || c > bound {
            continue;
        }
        let rest = c + assign(cost, t + 1, used | 1 << m, bound - c);
        best = best.min(rest);
    }
    best
}

/// Where a White man could go on an otherwise empty board:
/// (destination, kind after the move, squares passed over, push, capture).
fn destinations(from: Square, kind: PieceKind) -> Vec<(Square, PieceKind, Bitboard, bool, bool)> {
    let mut out = Vec::new();
    if kind == PieceKind::Pawn {
        let mut add = |to: Square, path: Bitboard, push: bool| {
            if to.rank() == 7 {
                for k in PieceKind::PROMOTIONS {
                    out.push((to, k, path, push, !push));
                }
            } else {
                out.push((to, PieceKind::Pawn, path, push, !push));
            }
        };
        if let Some(one) = from.offset(0, 1) {
            add(one, 0, true);
            if from.rank() == 1 {
                add(one.offset(0, 1).unwrap(), one.bit(), true);
            }
        }
        for to in attacks::squares(attacks::pawn(Color::White, from)) {
            add(to, 0, false);
        }
        return out;
    }
    for to in attacks::squares(reach(kind, from)) {
        out.push((to, kind, attacks::between(from, to), false, false));
    }
    out
}

impl Table {
    /// None when White could castle; such mates fall outside the model and
    /// the bound is then not used.
    fn build(pos: &Position) -> Option<Table> {
        if pos.castling().any(Color::White) {
            return None;
        }
        let wk = pos.king_square(Color::White)?;
        let men: Vec<(Square, PieceKind)> = pos.men(Color::White).map(|(s, p)| (s, p.kind)).collect();
        let cover: Vec<Bitboard> = men.iter().map(|&(s, k)| reach(k, s)).collect();
        let mut nets = vec![Vec::new(); 64];
        for (i, &(s, kind)) in men.iter().enumerate() {
            let rest = cover.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |a, (_, b)| a | b);
            for (to, after, path, push, capture) in destinations(s, kind) {
                if to == wk {
                    continue;
                }
                let king = if kind == PieceKind::King { to } else { wk };
                let covered = rest | reach(after, to);
                let mut add = |k: Square, line: Bitboard, checker: Option<Square>| {
                    let line = line & !s.bit();
                    if k == to || k == s || k == king || attacks::king(king) & k.bit() != 0 || line & king.bit() != 0 {
                        return;
                    }
                    // A checker next to the king needs a guard, or is taken.
                    if let Some(c) = checker {
                        let guards = cover.iter().zip(&men).filter(|(_, m)| m.0 != s && m.0 != c).fold(0, |a, (b, _)| a | b)
                            | if c == to { 0 } else { reach(after, to) };
                        if attacks::king(k) & c.bit() != 0 && guards & c.bit() == 0 {
                            return;
                        }
                    }
                    let flights = attacks::king(k) & !covered & !to.bit();
                    if flights & line != 0 {
                        return;
                    }
                    nets[k.index()].push(Net { line, flights, to: to.bit(), push, capture, from: s, checker });
                };
                if after != PieceKind::King {
                    for k in attacks::squares(reach(after, to)) {
                        let double = men.iter().any(|&(x, xk)| x != s && lines_up(xk, x, k) && attacks::between(x, k) & s.bit() != 0);
                        add(k, path | attacks::between(to, k), (!double).then_some(to));
                    }
                }
                for &(x, xk) in &men {
                    let (rook_like, bishop_like) = match xk {
                        PieceKind::Rook => (true, false),
                        PieceKind::Bishop => (false, true),
                        PieceKind::Queen => (true, true),
                        _ => continue,
                    };
                    if x == s {
                        continue;
                    }
                    for k in Square::all() {
                        let b = attacks::between(x, k);
                        if b & s.bit() == 0 || b & to.bit() != 0 {
                            continue;
                        }
                        if if orthogonal(x, k) { rook_like } else { bishop_like } {
                            let double = reach(after, to) & k.bit() != 0;
                            add(k, path | b, (!double).then_some(x));
                        }
                    }
                }
            }
        }
        let mut targets = 0;
        for (k, list) in nets.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if !list.is_empty() {
                targets |= 1u64 << k;
            }
        }
        Some(Table { nets, targets })
    }
}

/// A White pawn on the fifth rank next to a Black pawn that can still make
/// its double step. The capture then falls outside the nets.
fn en_passant_possible(pos: &Position) -> bool {
    let white = pos.pieces(Color::White, PieceKind::Pawn) & RANK_5;
    let home = pos.pieces(Color::Black, PieceKind::Pawn) & 0xff << 48;
    let beside = ((white & !FILE_A) >> 1 | (white & !FILE_H) << 1) << 16;
    beside & home != 0
}

/// Whether some White move could check the king on `king` once the Black
/// men in `slack` have been lifted off the board. Only line pieces care
/// about `slack`; every other piece is judged as if it stood still.
fn may_check(pos: &Position, king: Square, occ: Bitboard, slack: Bitboard) -> bool {
    let white = pos.color_bb(Color::White);
    let clear = |a: Bitboard| occ & !(a & slack);
    let diag = attacks::bishop(king, clear(attacks::bishop(king, occ)));
    let orth = attacks::rook(king, clear(attacks::rook(king, occ)));
    let pawns = pos.pieces(Color::White, PieceKind::Pawn);
    // Promotions are not modelled.
    if pawns & 0xff << 48 != 0 {
        return true;
    }
    let empty_or_slack = !occ | slack;
    let pushes = (pawns << 8) & empty_or_slack;
    let pushes = pushes | ((pushes & 0xff << 16) << 8) & empty_or_slack;
    let captures = attacks::squares(pawns).fold(0, |a, s| a | attacks::pawn(Color::White, s));
    if (pushes | captures) & attacks::pawn(Color::Black, king) != 0 {
        return true;
    }
    if attacks::squares(pos.pieces(Color::White, PieceKind::Knight)).any(|s| attacks::knight(s) & attacks::knight(king) != 0)
    {
        return true;
    }
    let queens = pos.pieces(Color::White, PieceKind::Queen);
    for s in attacks::squares(pos.pieces(Color::White, PieceKind::Bishop) | queens) {
        if attacks::bishop(s, clear(attacks::bishop(s, occ))) & diag != 0 {
            return true;
        }
    }
    for s in attacks::squares(pos.pieces(Color::White, PieceKind::Rook) | queens) {
        if attacks::rook(s, clear(attacks::rook(s, occ))) & orth != 0 {
            return true;
        }
    }
    // Discovered checks: one White man in the way, and nothing else that
    // stays put.
    for (s, kinds) in [
        (attacks::bishop(king, 0), pos.pieces(Color::White, PieceKind::Bishop)),
        (attacks::rook(king, 0), pos.pieces(Color::White, PieceKind::Rook)),
    ] {
        for x in attacks::squares(s & (kinds | queens)) {
            let b = attacks::between(king, x) & occ & !slack;
            if b.count_ones() == 1 && b & white != 0 {
                return true;
            }
        }
    }
    false
}

/// False when no single Black move lets White give check at all.
fn one_move_may_allow_check(pos: &Position, bk: Square) -> bool {
    let black = pos.color_bb(Color::Black);
    let occ = pos.occupied();
    if may_check(pos, bk, occ, black & !bk.bit()) {
        return true;
    }
    attacks::squares(attacks::king(bk) & !black).any(|k| may_check(pos, k, (occ & !bk.bit()) | k.bit(), 0))
}

type RouteKey = (Bitboard, Bitboard, u8, u8, u8);

/// Cache of mating-net tables keyed by White's men, and of the routes of
/// Black men.
#[derive(Default)]
pub struct MateNet {
    cache: FxHashMap<[Bitboard; 7], Option<Table>>,
    routes: FxHashMap<RouteKey, Box<Routes>>,
}

const ROUTE_CACHE: usize = 1 << 16;

/// One Black move on an open board, for men that move only at the end.
fn one_move(kind: PieceKind, from: Square) -> Bitboard {
    match kind {
        PieceKind::Pawn => {
            let push = from.offset(0, -1).map_or(0, |t| t.bit());
            let two = if from.rank() == 6 { Square::new(from.file(), 4).bit() } else { 0 };
            push | two | attacks::pawn(Color::Black, from)
        }
        k => reach(k, from),
    }
}

impl MateNet {
    pub fn new() -> Self {
        Self::default()
    }

    /// False only when no sequence of `black_moves` Black moves, White
    /// making none, can leave a position where White mates in one.
    pub fn reachable(&mut self, pos: &Position, black_moves: u32) -> bool {
        let mut key = [0; 7];
        for k in PieceKind::ALL {
            key[k.index()] = pos.pieces(Color::White, k);
        }
        key[6] = pos.castling().bits() as u64;
        let Some(bk) = pos.king_square(Color::Black) else { return true };
        if black_moves == 1 && !one_move_may_allow_check(pos, bk) {
            return false;
        }
        if en_passant_possible(pos) {
            return true;
        }
        let Some(table) = self.cache.entry(key).or_insert_with(|| Table::build(pos)) else {
            return true;
        };
        let black = pos.color_bb(Color::Black) & !bk.bit();
        let white = pos.color_bb(Color::White);
        let mut best = [u32::MAX; 64];
        let mut reach = |sq: Square| {
            let b = &mut best[sq.index()];
            if *b == u32::MAX {
                *b = FAR;
                for kind in PieceKind::ALL {
                    for s in attacks::squares(pos.pieces(Color::Black, kind) & black) {
                        *b = (*b).min(black_distance(kind, s, sq));
                    }
                }
            }
            *b
        };
        let force = black.count_ones();
        let Some(wk) = pos.king_square(Color::White) else { return true };
        let mut still = None;
        for k in attacks::squares(table.targets) {
            let walk = king_distance(bk, k);
            if walk > black_moves {
                continue;
            }
            for net in &table.nets[k.index()] {
                let open = (net.flights & !black).count_ones();
                let to_black = net.to & black != 0;
                let fill = open + (net.capture && !to_black) as u32;
                if fill > force {
                    continue;
                }
                let mut travel = 0;
                for f in attacks::squares((net.flights & !black) | if net.capture { net.to & !black } else { 0 }) {
                    travel += reach(f);
                }
                let vacate = (net.line & black).count_ones() + (net.push && to_black) as u32;
                // A White man in the way is taken, and the taker must move on.
                let blocked = (net.line & white).count_ones();
                let arrivals = open + blocked + (net.to & white != 0 || (net.capture && !to_black)) as u32;
                if walk + travel.max(vacate) > black_moves
                    || arrivals.max(vacate + blocked).max(2 * blocked) > black_moves
                {
                    continue;
                }
                let frozen = *still.get_or_insert_with(|| frozen(pos, black, wk));
                let fill = Self::fill_cost(&mut self.routes, pos, net, k, frozen, wk, black_moves - walk);
                if walk + fill.max(vacate) <= black_moves {
                    return true;
                }
            }
        }
        false
    }

    /// With White static, the squares a single Black move must leave and
    /// reach for White to mate next, as (from, to) mask pairs. `None` when
    /// any move may do. Captures, castling and en passant are not covered.
    pub fn one_move_needs(&mut self, pos: &Position) -> Option<Vec<(Bitboard, Bitboard)>> {
        let mut key = [0; 7];
        for k in PieceKind::ALL {
            key[k.index()] = pos.pieces(Color::White, k);
        }
        key[6] = pos.castling().bits() as u64;
        let bk = pos.king_square(Color::Black)?;
        if en_passant_possible(pos) {
            return None;
        }
        let table = self.cache.entry(key).or_insert_with(|| Table::build(pos)).as_ref()?;
        let black = pos.color_bb(Color::Black) & !bk.bit();
        let white = pos.color_bb(Color::White);
        let mut out = Vec::new();
        for k in attacks::squares(table.targets & (attacks::king(bk) | bk.bit())) {
            let step = k != bk;
            for net in &table.nets[k.index()] {
                if net.line & white != 0 || net.to & white != 0 {
                    continue;
                }
                let to_black = net.to & black != 0;
                let mut fill = net.flights & !black;
                if net.capture && !to_black {
                    fill |= net.to;
                }
                let mut vacate = net.line & (black | bk.bit());
                if net.push && to_black {
                    vacate |= net.to;
                }
                let (from, to) = if step {
                    if fill & !k.bit() != 0 || vacate & !bk.bit() != 0 {
                        continue;
                    }
                    (bk.bit(), k.bit())
                } else {
                    if fill.count_ones() > 1 || vacate.count_ones() > 1 || vacate & bk.bit() != 0 {
                        continue;
                    }
                    (if vacate == 0 { !0 } else { vacate }, if fill == 0 { !0 } else { fill })
                };
                if from == !0 && to == !0 {
                    return None;
                }
                out.push((from, to));
            }
        }
        Some(out)
    }

    /// Fewest Black moves that put a fitting man on every flight of the net
    /// (and on the square a pawn captures), one man per square. Answers
    /// above `bound` may be rounded down to anything still above it.
    #[allow(clippy::too_many_arguments)]
    fn fill_cost(
        cache: &mut FxHashMap<RouteKey, Box<Routes>>,
        pos: &Position,
        net: &Net,
        king: Square,
        frozen: Bitboard,
        wk: Square,
        bound: u32,
    ) -> u32 {
        let white = pos.color_bb(Color::White);
        let black = pos.color_bb(Color::Black) & !king_bit(pos);
        // A man the check can pin stays useful whatever it is.
        let mut pins = 0;
        for (x, p) in pos.men(Color::White) {
            if lines_up(p.kind, x, king) {
                pins |= attacks::between(king, x);
            }
        }
        let mut targets: Vec<(Square, Option<Square>)> = attacks::squares(net.flights)
            .map(|f| (f, if pins & f.bit() != 0 { None } else { net.checker }))
            .collect();
        if net.capture {
            targets.push((Square::from_index(net.to.trailing_zeros() as u8), None));
        }
        if targets.is_empty() {
            return 0;
        }
        let walls = frozen | wk.bit() | net.from.bit();
        if cache.len() > ROUTE_CACHE {
            cache.clear();
        }
        let men: Vec<(Square, PieceKind)> = attacks::squares(black).map(|s| (s, pos.piece_at(s).expect("man").kind)).collect();
        let mut cost = vec![vec![FAR; men.len()]; targets.len()];
        for (m, &(sq, kind)) in men.iter().enumerate() {
            let d = if frozen & sq.bit() == 0 {
                let key = (walls, white, wk.index() as u8, sq.index() as u8, kind.index() as u8);
                Some(&**cache.entry(key).or_insert_with(|| routes(walls, white, wk, sq, kind)))
            } else {
                None
            };
            for (t, &(f, checker)) in targets.iter().enumerate() {
                let fits = |k: PieceKind| checker.is_none_or(|c| !surely_attacks(k, f, c));
                cost[t][m] = match d {
                    Some(d) => BLACK_KINDS
                        .iter()
                        .filter(|&&k| fits(k))
                        .map(|&k| d[k.index()][f.index()] as u32)
                        .min()
                        .map_or(FAR, |c| if c == u8::MAX as u32 { FAR } else { c }),
                    None if sq == f => if fits(kind) { 0 } else { FAR },
                    None => {
                        let promotes = kind == PieceKind::Pawn && f.rank() == 0;
                        let ok = if promotes { PieceKind::PROMOTIONS.iter().any(|&k| fits(k)) } else { fits(kind) };
                        if ok && one_move(kind, sq) & f.bit() != 0 { 1 } else { FAR }
                    }
                };
            }
        }
        if targets.len() > men.len() {
            return FAR;
        }
        if targets.len() <= 3 {
            return assign(&cost, 0, 0, bound + 1);
        }
        let weights = Matrix::from_rows(cost.iter().map(|row| row.iter().map(|&c| -(c.min(FAR) as i64)))).expect("rectangular");
        let (total, _) = kuhn_munkres(&weights);
        (-total) as u32
    }
}

fn king_bit(pos: &Position) -> Bitboard {
    pos.pieces(Color::Black, PieceKind::King)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::parse_fen;

    /// Fewest Black moves after which White mates in one; only the last
    /// Black move may give check. Exhaustive up to `limit`.
    fn exact(pos: &Position, limit: u32) -> Option<u32> {
        if pos.pass_turn().count_mates() > 0 {
            return Some(0);
        }
        let mut layer = vec![pos.clone()];
        for d in 1..=limit {
            let mut next = Vec::new();
            for p in &layer {
                for (_, c) in p.successors() {
                    if c.count_mates() > 0 {
                        return Some(d);
                    }
                    if !c.in_check(Color::White) {
                        next.push(c.pass_turn());
                    }
                }
            }
            layer = next;
        }
        None
    }

    #[test]
    fn never_exceeds_exhaustive_distance() {
        let fens = [
            "7k/8/6K1/8/8/8/8/R7 b - -",
            "6rk/6pp/8/6N1/8/8/8/K7 b - -",
            "4k3/8/4K3/8/8/8/8/3Q4 b - -",
            "7k/5p2/6p1/3B4/8/8/8/K5R1 b - -",
            "r3k3/8/8/8/8/8/5P2/4K2R b - -",
            "8/8/8/4k3/8/2B5/3P4/K6R b - -",
        ];
        for fen in fens {
            let pos = parse_fen(fen).unwrap();
            let mut net = MateNet::new();
            if let Some(d) = exact(&pos, 3) {
                assert!(net.reachable(&pos, d), "{fen} mates after {d}");
            }
        }
    }

    #[test]
    fn one_move_needs_keep_every_move_that_allows_mate() {
        use rand::{rngs::StdRng, seq::SliceRandom, Rng, SeedableRng};
        let fens = [
            "3r3k/7p/7n/1p3r2/2PP4/PP6/bK6/Bn1q4 w - -",
            "k7/8/pPPp1P2/p1Pp4/3K3p/2P1P2p/7p/6nr b - -",
            "6rk/6pp/8/6N1/8/8/8/K7 b - -",
            "7k/5p2/6p1/3B4/8/8/8/K5R1 b - -",
            "8/8/8/4k3/8/2B5/3P4/K6R b - -",
        ];
        let mut rng = StdRng::seed_from_u64(7);
        let mut checked = 0;
        for fen in fens {
            for _ in 0..40 {
                let mut pos = parse_fen(fen).unwrap();
                for _ in 0..rng.gen_range(0..8) {
                    let moves = pos.legal_moves();
                    let Some(m) = moves.choose(&mut rng) else { break };
                    pos = pos.play_unchecked(m);
                }
                if pos.side_to_move() != Color::Black {
                    continue;
                }
                let Some(needs) = MateNet::new().one_move_needs(&pos) else { continue };
                for m in pos.legal_moves() {
                    let special = m.capture.is_some() || m.flags.is_castle();
                    let kept = special || needs.iter().any(|&(f, t)| f & m.from.bit() != 0 && t & m.to.bit() != 0);
                    if !kept {
                        checked += 1;
                        assert_eq!(pos.play_unchecked(&m).count_mates(), 0, "{pos:?} {m}");
                    }
                }
            }
        }
        assert!(checked > 100, "only {checked} moves dropped");
    }

    #[test]
    fn rejects_a_lone_king_far_from_any_net() {
        // White's only piece is a knight; no mate is possible at all.
        let pos = parse_fen("k7/8/8/8/8/8/8/K6N b - -").unwrap();
        assert!(!MateNet::new().reachable(&pos, 3));
    }

    #[test]
    fn castling_rights_disable_the_bound() {
        let pos = parse_fen("k7/8/8/8/8/8/8/4K2R b K -").unwrap();
        assert!(MateNet::new().reachable(&pos, 0));
    }
}
