use std::fmt;
use std::hash::{Hash, Hasher};

use arrayvec::ArrayVec;

use super::attacks::{self, Bitboard};
use super::types::{Color, Piece, PieceKind, Square};
use super::zobrist;

/// Four independent castling flags.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CastlingRights(u8);

impl CastlingRights {
    pub const WHITE_SHORT: u8 = 1;
    pub const WHITE_LONG: u8 = 2;
    pub const BLACK_SHORT: u8 = 4;
    pub const BLACK_LONG: u8 = 8;

    pub const NONE: CastlingRights = CastlingRights(0);
    pub const ALL: CastlingRights = CastlingRights(15);

    pub const fn from_bits(bits: u8) -> Self {
        CastlingRights(bits & 15)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub fn short_flag(color: Color) -> u8 {
        match color {
            Color::White => Self::WHITE_SHORT,
            Color::Black => Self::BLACK_SHORT,
        }
    }

    pub fn long_flag(color: Color) -> u8 {
        match color {
            Color::White => Self::WHITE_LONG,
            Color::Black => Self::BLACK_LONG,
        }
    }

    pub fn has(self, flag: u8) -> bool {
        self.0 & flag != 0
    }

    pub fn short(self, color: Color) -> bool {
        self.has(Self::short_flag(color))
    }

    pub fn long(self, color: Color) -> bool {
        self.has(Self::long_flag(color))
    }

    pub fn any(self, color: Color) -> bool {
        self.short(color) || self.long(color)
    }

    pub fn set(&mut self, flag: u8, on: bool) {
        if on {
            self.0 |= flag;
        } else {
            self.0 &= !flag;
        }
    }

    pub fn without_color(self, color: Color) -> Self {
        CastlingRights(self.0 & !(Self::short_flag(color) | Self::long_flag(color)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Castling rights lost when a man leaves or arrives on a square.
fn castling_mask(sq: Square) -> u8 {
    match (sq.file(), sq.rank()) {
        (4, 0) => CastlingRights::WHITE_SHORT | CastlingRights::WHITE_LONG,
        (0, 0) => CastlingRights::WHITE_LONG,
        (7, 0) => CastlingRights::WHITE_SHORT,
        (4, 7) => CastlingRights::BLACK_SHORT | CastlingRights::BLACK_LONG,
        (0, 7) => CastlingRights::BLACK_LONG,
        (7, 7) => CastlingRights::BLACK_SHORT,
        _ => 0,
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveFlags(u8);

impl MoveFlags {
    pub const NONE: MoveFlags = MoveFlags(0);
    pub const CASTLE_SHORT: MoveFlags = MoveFlags(1);
    pub const CASTLE_LONG: MoveFlags = MoveFlags(2);
    pub const EN_PASSANT: MoveFlags = MoveFlags(4);
    pub const DOUBLE_PUSH: MoveFlags = MoveFlags(8);

    pub fn contains(self, other: MoveFlags) -> bool {
        self.0 & other.0 == other.0 && other.0 != 0
    }

    pub fn is_castle(self) -> bool {
        self.0 & 3 != 0
    }
}

impl std::ops::BitOr for MoveFlags {
    type Output = MoveFlags;
    fn bitor(self, rhs: MoveFlags) -> MoveFlags {
        MoveFlags(self.0 | rhs.0)
    }
}

/// A fully described move. Castling is encoded as the king's two-square step.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub piece: Piece,
    pub capture: Option<Piece>,
    pub promotion: Option<PieceKind>,
    pub flags: MoveFlags,
}

impl Move {
    /// Coordinate notation: `e2e4`, `e7e8Q`, castling as the king move.
    pub fn uci(&self) -> String {
        let mut s = format!("{}{}", self.from, self.to);
        if let Some(p) = self.promotion {
            s.push(p.letter());
        }
        s
    }

    /// Square of the man removed by this move, if any.
    pub fn capture_square(&self) -> Option<Square> {
        self.capture?;
        if self.flags.contains(MoveFlags::EN_PASSANT) {
            Some(Square::new(self.to.file(), self.from.rank()))
        } else {
            Some(self.to)
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.uci())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Normal,
    Check,
    Checkmate,
    Stalemate,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("no man on {0}")]
    EmptySource(Square),
    #[error("the man on {square} belongs to {owner}, but {to_move} is to move")]
    WrongSide {
        square: Square,
        owner: Color,
        to_move: Color,
    },
    #[error("move describes {described:?} but {actual:?} stands on {square}")]
    PieceMismatch {
        square: Square,
        described: Piece,
        actual: Piece,
    },
    #[error("{0:?} cannot move from {1} to {2}")]
    Unreachable(PieceKind, Square, Square),
    #[error("castling is not allowed: {0}")]
    Castling(&'static str),
    #[error("move {0} leaves the own king in check")]
    LeavesKingInCheck(String),
    #[error("move {0} is not legal in this position")]
    Illegal(String),
}

/// Full chess state with value semantics.
///
/// Equality and `Hash` cover placement, side to move, castling and the
/// en-passant target. The Zobrist key is kept incrementally.
#[derive(Clone)]
pub struct Position {
    cells: [Option<Piece>; 64],
    by_color: [Bitboard; 2],
    by_kind: [Bitboard; 6],
    side: Color,
    castling: CastlingRights,
    ep: Option<Square>,
    hash: u64,
}

impl PartialEq for Position {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash
            && self.side == other.side
            && self.castling == other.castling
            && self.ep == other.ep
            && self.cells == other.cells
    }
}

impl Eq for Position {}

impl Hash for Position {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position({})", super::fen::format_fen(self))
    }
}

impl Position {
    /// Empty board, White to move, no rights.
    pub fn empty() -> Self {
        Position {
            cells: [None; 64],
            by_color: [0; 2],
            by_kind: [0; 6],
            side: Color::White,
            castling: CastlingRights::NONE,
            ep: None,
            hash: 0,
        }
    }

    /// Builds a position from raw parts without validating it.
    pub fn from_parts(
        placement: impl IntoIterator<Item = (Square, Piece)>,
        side: Color,
        castling: CastlingRights,
        ep: Option<Square>,
    ) -> Self {
        let mut pos = Position::empty();
        for (sq, p) in placement {
            pos.put(sq, p);
        }
        pos.side = side;
        pos.castling = castling;
        pos.ep = ep;
        pos.hash = pos.compute_hash();
        pos
    }

    fn put(&mut self, sq: Square, p: Piece) {
        if let Some(old) = self.cells[sq.index()] {
            self.by_color[old.color.index()] &= !sq.bit();
            self.by_kind[old.kind.index()] &= !sq.bit();
            self.hash ^= zobrist::piece(old, sq);
        }
        self.cells[sq.index()] = Some(p);
        self.by_color[p.color.index()] |= sq.bit();
        self.by_kind[p.kind.index()] |= sq.bit();
        self.hash ^= zobrist::piece(p, sq);
    }

    fn remove(&mut self, sq: Square) -> Option<Piece> {
        let p = self.cells[sq.index()].take()?;
        self.by_color[p.color.index()] &= !sq.bit();
        self.by_kind[p.kind.index()] &= !sq.bit();
        self.hash ^= zobrist::piece(p, sq);
        Some(p)
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.cells[sq.index()]
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side
    }

    #[inline]
    pub fn castling(&self) -> CastlingRights {
        self.castling
    }

    #[inline]
    pub fn ep_target(&self) -> Option<Square> {
        self.ep
    }

    /// Incrementally maintained Zobrist key.
    #[inline]
    pub fn hash(&self) -> u64 {
        self.hash
    }

    /// Zobrist key recomputed from scratch.
    pub fn compute_hash(&self) -> u64 {
        let mut h = zobrist::side(self.side)
            ^ zobrist::castling(self.castling.bits())
            ^ zobrist::ep(self.ep);
        for sq in Square::all() {
            if let Some(p) = self.cells[sq.index()] {
                h ^= zobrist::piece(p, sq);
            }
        }
        h
    }

    #[inline]
    pub fn occupied(&self) -> Bitboard {
        self.by_color[0] | self.by_color[1]
    }

    #[inline]
    pub fn color_bb(&self, c: Color) -> Bitboard {
        self.by_color[c.index()]
    }

    #[inline]
    pub fn pieces(&self, c: Color, k: PieceKind) -> Bitboard {
        self.by_color[c.index()] & self.by_kind[k.index()]
    }

    /// Men of one color, in square order.
    pub fn men(&self, c: Color) -> impl Iterator<Item = (Square, Piece)> + '_ {
        attacks::squares(self.color_bb(c)).map(move |s| (s, self.cells[s.index()].unwrap()))
    }

    pub fn count(&self, c: Color, k: PieceKind) -> u32 {
        self.pieces(c, k).count_ones()
    }

    pub fn king_square(&self, c: Color) -> Option<Square> {
        let k = self.pieces(c, PieceKind::King);
        (k != 0).then(|| Square::from_index(k.trailing_zeros() as u8))
    }

    /// Same placement (cells only).
    pub fn same_placement(&self, other: &Position) -> bool {
        self.cells == other.cells
    }

    /// Placement as a dense byte array (0 = empty, else piece index + 1).
    pub fn placement_bytes(&self) -> [u8; 64] {
        let mut out = [0u8; 64];
        for (i, c) in self.cells.iter().enumerate() {
            if let Some(p) = c {
                out[i] = p.index() as u8 + 1;
            }
        }
        out
    }

    pub fn set_side_to_move(&mut self, c: Color) {
        self.hash ^= zobrist::side(self.side) ^ zobrist::side(c);
        self.side = c;
    }

    pub fn set_castling(&mut self, rights: CastlingRights) {
        self.hash ^= zobrist::castling(self.castling.bits()) ^ zobrist::castling(rights.bits());
        self.castling = rights;
    }

    pub fn set_ep_target(&mut self, ep: Option<Square>) {
        self.hash ^= zobrist::ep(self.ep) ^ zobrist::ep(ep);
        self.ep = ep;
    }

    /// Is `sq` attacked by any man of color `by`, given occupancy `occ`?
    pub fn attacked_by(&self, sq: Square, by: Color, occ: Bitboard) -> bool {
        let them = self.by_color[by.index()];
        if attacks::knight(sq) & them & self.by_kind[PieceKind::Knight.index()] != 0 {
            return true;
        }
        if attacks::king(sq) & them & self.by_kind[PieceKind::King.index()] != 0 {
            return true;
        }
        // A pawn of `by` attacks sq iff a pawn of the other color on sq would attack it.
        if attacks::pawn(by.opposite(), sq) & them & self.by_kind[PieceKind::Pawn.index()] != 0 {
            return true;
        }
        let queens = self.by_kind[PieceKind::Queen.index()];
        let rq = them & (self.by_kind[PieceKind::Rook.index()] | queens);
        if rq != 0 && attacks::rook(sq, occ) & rq != 0 {
            return true;
        }
        let bq = them & (self.by_kind[PieceKind::Bishop.index()] | queens);
        bq != 0 && attacks::bishop(sq, occ) & bq != 0
    }

    /// All squares attacked by `by`.
    pub fn attack_set(&self, by: Color) -> Bitboard {
        let occ = self.occupied();
        let mut out = 0;
        for (sq, p) in self.men(by) {
            out |= piece_attacks(p, sq, occ);
        }
        out
    }

    /// False when `c` has no king.
    pub fn in_check(&self, c: Color) -> bool {
        match self.king_square(c) {
            Some(k) => self.attacked_by(k, c.opposite(), self.occupied()),
            None => false,
        }
    }

    /// Pseudo-legal moves of the side to move (own king safety not checked).
    pub fn pseudo_moves(&self, out: &mut Vec<Move>) {
        self.generate(out, &[!0; 6], !0, true);
    }

    /// Pseudo-legal moves that might give check to the king on `king`, a
    /// superset of the real checks.
    fn checking_candidates(&self, king: Square, out: &mut impl MoveSink) {
        let us = self.side;
        let own = self.by_color[us.index()];
        let occ = self.occupied();
        let diag = attacks::bishop(king, occ);
        let orth = attacks::rook(king, occ);
        let last_rank = 0xffu64 << (8 * us.promotion_rank() as u32);
        let masks = [
            attacks::pawn(us.opposite(), king) | last_rank,
            attacks::knight(king),
            diag,
            orth,
            diag | orth,
            0,
        ];
        let queens = self.by_kind[PieceKind::Queen.index()];
        let sliders = (attacks::rook(king, 0) & own & (self.by_kind[PieceKind::Rook.index()] | queens))
            | (attacks::bishop(king, 0) & own & (self.by_kind[PieceKind::Bishop.index()] | queens));
        let mut free = 0;
        for s in attacks::squares(sliders) {
            let b = attacks::between(king, s) & occ;
            if b.count_ones() == 1 && b & own != 0 {
                free |= b;
            }
        }
        self.generate(out, &masks, free, true);
    }

    /// Moves whose destination lies in the mask for the moving kind, plus
    /// every move of the men on `free`. En-passant captures are always kept.
    fn generate(&self, out: &mut impl MoveSink, masks: &[Bitboard; 6], free: Bitboard, castles: bool) {
        let us = self.side;
        let own = self.by_color[us.index()];
        let opp = self.by_color[us.opposite().index()];
        let occ = own | opp;
        let pawn = Piece::new(us, PieceKind::Pawn);
        for from in attacks::squares(own & self.by_kind[PieceKind::Pawn.index()]) {
            let mask = if free & from.bit() != 0 { !0 } else { masks[PieceKind::Pawn.index()] };
            self.pawn_moves(from, pawn, occ, opp, mask, out);
        }
        for kind in [PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen, PieceKind::King] {
            let piece = Piece::new(us, kind);
            for from in attacks::squares(own & self.by_kind[kind.index()]) {
                let mask = if free & from.bit() != 0 { !0 } else { masks[kind.index()] };
                let targets = match kind {
                    PieceKind::Knight => attacks::knight(from),
                    PieceKind::Bishop => attacks::bishop(from, occ),
                    PieceKind::Rook => attacks::rook(from, occ),
                    PieceKind::Queen => attacks::queen(from, occ),
                    _ => attacks::king(from),
                } & !own
                    & mask;
                for to in attacks::squares(targets) {
                    out.push(Move {
                        from,
                        to,
                        piece,
                        capture: self.cells[to.index()],
                        promotion: None,
                        flags: MoveFlags::NONE,
                    });
                }
            }
        }
        if castles {
            self.castling_moves(out);
        }
    }

    fn pawn_moves<S: MoveSink>(
        &self,
        from: Square,
        piece: Piece,
        occ: Bitboard,
        opp: Bitboard,
        mask: Bitboard,
        out: &mut S,
    ) {
        let us = piece.color;
        let dr: i8 = if us == Color::White { 1 } else { -1 };
        let push = |to: Square, capture: Option<Piece>, flags: MoveFlags, out: &mut S| {
            if mask & to.bit() == 0 && !flags.contains(MoveFlags::EN_PASSANT) {
                return;
            }
            if to.rank() == us.promotion_rank() {
                for k in PieceKind::PROMOTIONS {
                    out.push(Move { from, to, piece, capture, promotion: Some(k), flags });
                }
            } else {
                out.push(Move { from, to, piece, capture, promotion: None, flags });
            }
        };
        if let Some(one) = from.offset(0, dr) {
            if occ & one.bit() == 0 {
                push(one, None, MoveFlags::NONE, out);
                if from.rank() == us.pawn_start_rank() {
                    let two = one.offset(0, dr).unwrap();
                    if occ & two.bit() == 0 {
                        push(two, None, MoveFlags::DOUBLE_PUSH, out);
                    }
                }
            }
        }
        let caps = attacks::pawn(us, from);
        for to in attacks::squares(caps & opp) {
            push(to, self.cells[to.index()], MoveFlags::NONE, out);
        }
        if let Some(ep) = self.ep {
            if caps & ep.bit() != 0 && occ & ep.bit() == 0 {
                let victim_sq = Square::new(ep.file(), from.rank());
                if let Some(v) = self.cells[victim_sq.index()] {
                    if v.color != us && v.kind == PieceKind::Pawn {
                        push(ep, Some(v), MoveFlags::EN_PASSANT, out);
                    }
                }
            }
        }
    }

    fn castling_moves(&self, out: &mut impl MoveSink) {
        let us = self.side;
        if !self.castling.any(us) {
            return;
        }
        let Some(king_sq) = self.king_square(us) else { return };
        let rank = us.back_rank();
        if king_sq != Square::new(4, rank) {
            return;
        }
        let them = us.opposite();
        let occ = self.occupied();
        if self.attacked_by(king_sq, them, occ) {
            return;
        }
        let king = Piece::new(us, PieceKind::King);
        let rook = Some(Piece::new(us, PieceKind::Rook));
        if self.castling.short(us)
            && self.cells[Square::new(7, rank).index()] == rook
            && occ & (Square::new(5, rank).bit() | Square::new(6, rank).bit()) == 0
            && !self.attacked_by(Square::new(5, rank), them, occ)
            && !self.attacked_by(Square::new(6, rank), them, occ)
        {
            out.push(Move {
                from: king_sq,
                to: Square::new(6, rank),
                piece: king,
                capture: None,
                promotion: None,
                flags: MoveFlags::CASTLE_SHORT,
            });
        }
        if self.castling.long(us)
            && self.cells[Square::new(0, rank).index()] == rook
            && occ
                & (Square::new(1, rank).bit() | Square::new(2, rank).bit() | Square::new(3, rank).bit())
                == 0
            && !self.attacked_by(Square::new(3, rank), them, occ)
            && !self.attacked_by(Square::new(2, rank), them, occ)
        {
            out.push(Move {
                from: king_sq,
                to: Square::new(2, rank),
                piece: king,
                capture: None,
                promotion: None,
                flags: MoveFlags::CASTLE_LONG,
            });
        }
    }

    /// Plays a move assumed to be pseudo-legal and returns the successor.
    pub fn play_unchecked(&self, mv: &Move) -> Position {
        let mut next = self.clone();
        next.play_in_place(mv);
        next
    }

    fn play_in_place(&mut self, mv: &Move) {
        let us = self.side;
        if let Some(sq) = mv.capture_square() {
            self.remove(sq);
        }
        self.remove(mv.from);
        let placed = match mv.promotion {
            Some(k) => Piece::new(us, k),
            None => mv.piece,
        };
        self.put(mv.to, placed);
        if mv.flags.is_castle() {
            let rank = us.back_rank();
            let (rf, rt) = if mv.flags.contains(MoveFlags::CASTLE_SHORT) {
                (7, 5)
            } else {
                (0, 3)
            };
            if let Some(r) = self.remove(Square::new(rf, rank)) {
                self.put(Square::new(rt, rank), r);
            }
        }
        let lost = castling_mask(mv.from) | castling_mask(mv.to);
        if self.castling.bits() & lost != 0 {
            self.set_castling(CastlingRights::from_bits(self.castling.bits() & !lost));
        }
        let ep = if mv.flags.contains(MoveFlags::DOUBLE_PUSH) {
            Some(Square::new(mv.from.file(), (mv.from.rank() + mv.to.rank()) / 2))
        } else {
            None
        };
        self.set_ep_target(ep);
        self.set_side_to_move(us.opposite());
    }

    /// Legal moves for the side to move.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::with_capacity(48);
        self.legal_moves_into(&mut out);
        out
    }

    /// Appends the legal moves to `out`.
    pub fn legal_moves_into(&self, out: &mut Vec<Move>) {
        let start = out.len();
        self.pseudo_moves(out);
        let Some(filter) = self.legality() else { return };
        let mut kept = start;
        for i in start..out.len() {
            if filter.allows(self, &out[i]) {
                out.swap(kept, i);
                kept += 1;
            }
        }
        out.truncate(kept);
    }

    fn legality(&self) -> Option<Legality> {
        let us = self.side;
        let king = self.king_square(us)?;
        let them = us.opposite();
        let occ = self.occupied();
        let checkers = self.attackers_to(king, them, occ);
        let target = match checkers.count_ones() {
            0 => !0,
            1 => checkers | attacks::between(king, Square::from_index(checkers.trailing_zeros() as u8)),
            _ => 0,
        };
        let opp = self.by_color[them.index()];
        let queens = self.by_kind[PieceKind::Queen.index()];
        let snipers = (attacks::rook(king, 0) & opp & (self.by_kind[PieceKind::Rook.index()] | queens))
            | (attacks::bishop(king, 0) & opp & (self.by_kind[PieceKind::Bishop.index()] | queens));
        let mut pinned = 0;
        for s in attacks::squares(snipers) {
            let b = attacks::between(king, s) & occ;
            if b.count_ones() == 1 && b & self.by_color[us.index()] != 0 {
                pinned |= b;
            }
        }
        Some(Legality { king, target, pinned, occ_without_king: occ & !king.bit() })
    }

    /// Bitboard of `by`'s men attacking `sq` under occupancy `occ`.
    pub fn attackers_to(&self, sq: Square, by: Color, occ: Bitboard) -> Bitboard {
        let them = self.by_color[by.index()];
        let k = &self.by_kind;
        let queens = k[PieceKind::Queen.index()];
        them & ((attacks::knight(sq) & k[PieceKind::Knight.index()])
            | (attacks::king(sq) & k[PieceKind::King.index()])
            | (attacks::pawn(by.opposite(), sq) & k[PieceKind::Pawn.index()])
            | (attacks::rook(sq, occ) & (k[PieceKind::Rook.index()] | queens))
            | (attacks::bishop(sq, occ) & (k[PieceKind::Bishop.index()] | queens)))
    }

    /// Legal moves paired with their successor positions.
    pub fn successors(&self) -> Vec<(Move, Position)> {
        let mut moves = Vec::with_capacity(48);
        self.legal_moves_into(&mut moves);
        moves
            .into_iter()
            .map(|m| {
                let next = self.play_unchecked(&m);
                (m, next)
            })
            .collect()
    }

    /// Whether the side to move has at least one legal move.
    pub fn has_legal_move(&self) -> bool {
        let us = self.side;
        let Some(king) = self.king_square(us) else {
            let mut pseudo = MoveList::new();
            self.generate(&mut pseudo, &[!0; 6], !0, true);
            return !pseudo.is_empty();
        };
        // King steps first: they are cheap and usually settle the question.
        // Castling never needs checking, as it implies a legal king step.
        let them = us.opposite();
        let occ = self.occupied() & !king.bit();
        for to in attacks::squares(attacks::king(king) & !self.by_color[us.index()]) {
            if !self.attacked_by(to, them, occ) {
                return true;
            }
        }
        let filter = self.legality().expect("king present");
        if filter.target == 0 {
            return false;
        }
        let t = filter.target;
        if t != !0 && self.ep.is_none() {
            // Single check. Pinned men can never answer it.
            let full = self.occupied();
            let own = self.by_color[us.index()] & !king.bit() & !filter.pinned;
            let pawns = own & self.by_kind[PieceKind::Pawn.index()];
            let checker = Square::from_index((t & self.by_color[them.index()]).trailing_zeros() as u8);
            if self.attackers_to(checker, us, full) & own != 0 {
                return true;
            }
            let back = if us == Color::White { -1 } else { 1 };
            let start = if us == Color::White { 1 } else { 6 };
            for sq in attacks::squares(t & !checker.bit()) {
                if self.attackers_to(sq, us, full) & own & !pawns != 0 {
                    return true;
                }
                if let Some(one) = sq.offset(0, back) {
                    if pawns & one.bit() != 0 {
                        return true;
                    }
                    if full & one.bit() == 0 {
                        if let Some(two) = one.offset(0, back) {
                            if two.rank() == start && pawns & two.bit() != 0 {
                                return true;
                            }
                        }
                    }
                }
            }
            return false;
        }
        let mut pseudo = MoveList::new();
        self.generate(&mut pseudo, &[t, t, t, t, t, 0], 0, false);
        pseudo.iter().any(|m| filter.allows(self, m))
    }

    /// Number of legal moves that checkmate the opponent.
    pub fn count_mates(&self) -> u64 {
        let them = self.side.opposite();
        let Some(their_king) = self.king_square(them) else { return 0 };
        let mut moves = MoveList::new();
        self.checking_candidates(their_king, &mut moves);
        let probe = CheckProbe::new(self, their_king);
        moves.retain(|m| probe.may_check(m));
        if moves.is_empty() {
            return 0;
        }
        let filter = self.legality();
        moves
            .iter()
            .filter(|m| filter.as_ref().is_none_or(|f| f.allows(self, m)) && self.play_unchecked(m).is_checkmate())
            .count() as u64
    }

    /// Plays `mv` after verifying it is legal.
    pub fn apply(&self, mv: &Move) -> Result<Position, MoveError> {
        if self.legal_moves().contains(mv) {
            return Ok(self.play_unchecked(mv));
        }
        Err(self.diagnose(mv))
    }

    fn diagnose(&self, mv: &Move) -> MoveError {
        let Some(actual) = self.piece_at(mv.from) else {
            return MoveError::EmptySource(mv.from);
        };
        if actual.color != self.side {
            return MoveError::WrongSide {
                square: mv.from,
                owner: actual.color,
                to_move: self.side,
            };
        }
        if actual != mv.piece {
            return MoveError::PieceMismatch {
                square: mv.from,
                described: mv.piece,
                actual,
            };
        }
        let mut pseudo = Vec::new();
        self.pseudo_moves(&mut pseudo);
        if pseudo.contains(mv) {
            return MoveError::LeavesKingInCheck(mv.uci());
        }
        if mv.flags.is_castle() || (actual.kind == PieceKind::King && mv.from.file().abs_diff(mv.to.file()) == 2) {
            let reason = if !self.castling.any(self.side) {
                "no castling right"
            } else if self.in_check(self.side) {
                "king is in check"
            } else {
                "path is blocked or attacked"
            };
            return MoveError::Castling(reason);
        }
        if pseudo.iter().any(|m| m.from == mv.from && m.to == mv.to) {
            return MoveError::Illegal(mv.uci());
        }
        MoveError::Unreachable(actual.kind, mv.from, mv.to)
    }

    /// Looks up a legal move by coordinate notation (`e2e4`, `e7e8Q`, `e1g1`).
    pub fn find_move(&self, uci: &str) -> Option<Move> {
        let legal = self.legal_moves();
        legal.into_iter().find(|m| m.uci().eq_ignore_ascii_case(uci))
    }

    /// Same placement, the other side to move, en-passant target cleared.
    pub fn pass_turn(&self) -> Position {
        let mut next = self.clone();
        next.set_ep_target(None);
        next.set_side_to_move(self.side.opposite());
        next
    }

    pub fn status(&self) -> Status {
        let us = self.side;
        if self.king_square(us).is_none() {
            return Status::Normal;
        }
        let check = self.in_check(us);
        match (check, self.has_legal_move()) {
            (true, false) => Status::Checkmate,
            (false, false) => Status::Stalemate,
            (true, true) => Status::Check,
            (false, true) => Status::Normal,
        }
    }

    /// True when the side to move is checkmated.
    pub fn is_checkmate(&self) -> bool {
        self.in_check(self.side) && !self.has_legal_move()
    }

    /// Does `mv` (legal here) give check to the opponent?
    pub fn gives_check(&self, mv: &Move) -> bool {
        self.play_unchecked(mv).in_check(self.side.opposite())
    }
}

/// Upper bound on pseudo-legal moves: nine queens, two each of the other
/// pieces, the king and both castlings.
const MAX_MOVES: usize = 9 * 27 + 2 * 14 + 2 * 13 + 2 * 8 + 8 + 2;

type MoveList = ArrayVec<Move, MAX_MOVES>;

trait MoveSink {
    fn push(&mut self, m: Move);
}

impl MoveSink for Vec<Move> {
    #[inline]
    fn push(&mut self, m: Move) {
        Vec::push(self, m);
    }
}

impl MoveSink for MoveList {
    #[inline]
    fn push(&mut self, m: Move) {
        ArrayVec::push(self, m);
    }
}

/// Pins and checks of the side to move, enough to decide legality without
/// playing most moves.
struct Legality {
    king: Square,
    target: Bitboard,
    pinned: Bitboard,
    occ_without_king: Bitboard,
}

impl Legality {
    fn allows(&self, pos: &Position, m: &Move) -> bool {
        if m.from == self.king {
            if m.flags.is_castle() {
                return true;
            }
            return !pos.attacked_by(m.to, pos.side.opposite(), self.occ_without_king);
        }
        if m.flags.contains(MoveFlags::EN_PASSANT) {
            return !pos.play_unchecked(m).in_check(pos.side);
        }
        m.to.bit() & self.target != 0
            && (self.pinned & m.from.bit() == 0 || attacks::line(self.king, m.from) & m.to.bit() != 0)
    }
}

/// Cheap over-approximation of "this move gives check".
struct CheckProbe {
    king: Square,
    occ: Bitboard,
    // Squares whose vacating may uncover a line piece onto the king.
    discovery: Bitboard,
}

impl CheckProbe {
    fn new(pos: &Position, king: Square) -> Self {
        let us = pos.side;
        let own = pos.by_color[us.index()];
        let queens = pos.by_kind[PieceKind::Queen.index()];
        let sliders = (attacks::rook(king, 0) & own & (pos.by_kind[PieceKind::Rook.index()] | queens))
            | (attacks::bishop(king, 0) & own & (pos.by_kind[PieceKind::Bishop.index()] | queens));
        let mut discovery = 0;
        for s in attacks::squares(sliders) {
            discovery |= attacks::between(king, s);
        }
        CheckProbe { king, occ: pos.occupied(), discovery }
    }

    fn may_check(&self, m: &Move) -> bool {
        if m.flags.is_castle() || m.flags.contains(MoveFlags::EN_PASSANT) || self.discovery & m.from.bit() != 0 {
            return true;
        }
        let occ = self.occ & !m.from.bit();
        let to = m.to.bit();
        let direct = match m.promotion.unwrap_or(m.piece.kind) {
            PieceKind::Pawn => attacks::pawn(m.piece.color.opposite(), self.king),
            PieceKind::Knight => attacks::knight(self.king),
            PieceKind::Bishop => attacks::bishop(self.king, occ),
            PieceKind::Rook => attacks::rook(self.king, occ),
            PieceKind::Queen => attacks::queen(self.king, occ),
            PieceKind::King => 0,
        };
        direct & to != 0
    }
}

/// Squares attacked by `p` standing on `sq` with occupancy `occ`.
pub fn piece_attacks(p: Piece, sq: Square, occ: Bitboard) -> Bitboard {
    match p.kind {
        PieceKind::Pawn => attacks::pawn(p.color, sq),
        PieceKind::Knight => attacks::knight(sq),
        PieceKind::Bishop => attacks::bishop(sq, occ),
        PieceKind::Rook => attacks::rook(sq, occ),
        PieceKind::Queen => attacks::queen(sq, occ),
        PieceKind::King => attacks::king(sq),
    }
}
