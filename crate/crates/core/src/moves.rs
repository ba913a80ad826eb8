//! Elementary moves on grid diagrams: torus translations, commutations of
//! adjacent rows or columns, and stabilizations/destabilizations at X
//! markers. Which moves are admitted depends on the working category:
//! topological, Legendrian, or transverse.

use crate::error::{Error, Result};
use crate::grid::{Corner, GridDiagram, TranslateDir, MAX_SIZE};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Whether a commutation acts on a pair of rows or a pair of columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SliceKind {
    Row,
    Col,
}

/// One elementary move. Commutation index `i` exchanges slices `i` and
/// `i+1 mod n`; index `n-1` denotes the cyclic pair, applied after an
/// internal translation that makes the pair adjacent in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Translate(TranslateDir),
    Commute {
        kind: SliceKind,
        index: usize,
    },
    Stabilize {
        col: usize,
        variant: Corner,
    },
    Destabilize {
        col: usize,
        row: usize,
        variant: Corner,
    },
}

/// The isotopy category a search works in, fixing which stabilization
/// variants may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveMode {
    Topological,
    Legendrian,
    Transverse,
}

impl MoveMode {
    /// Stabilization variants whose (de)stabilizations preserve the
    /// category's invariants.
    pub fn stab_variants(self) -> &'static [Corner] {
        match self {
            MoveMode::Legendrian => &[Corner::NE, Corner::SW],
            MoveMode::Transverse => &[Corner::NE, Corner::SW, Corner::SE],
            MoveMode::Topological => &[Corner::NE, Corner::SW, Corner::SE, Corner::NW],
        }
    }
}

impl fmt::Display for MoveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveMode::Topological => "top",
            MoveMode::Legendrian => "leg",
            MoveMode::Transverse => "trans",
        })
    }
}

impl FromStr for MoveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" | "topological" => Ok(MoveMode::Topological),
            "leg" | "legendrian" => Ok(MoveMode::Legendrian),
            "trans" | "transverse" => Ok(MoveMode::Transverse),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown mode {s:?}"),
            }),
        }
    }
}

/// Effect of an X-stabilization of the given variant on (tb, r).
pub fn stab_delta(variant: Corner) -> (i64, i64) {
    match variant {
        Corner::NW => (-1, 1),
        Corner::SE => (-1, -1),
        Corner::NE | Corner::SW => (0, 0),
    }
}

fn corner_token(c: Corner) -> &'static str {
    match c {
        Corner::NE => "NE",
        Corner::NW => "NW",
        Corner::SE => "SE",
        Corner::SW => "SW",
    }
}

fn corner_from_token(s: &str) -> Option<Corner> {
    match s {
        "NE" => Some(Corner::NE),
        "NW" => Some(Corner::NW),
        "SE" => Some(Corner::SE),
        "SW" => Some(Corner::SW),
        _ => None,
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Translate(d) => {
                let d = match d {
                    TranslateDir::Up => "up",
                    TranslateDir::Down => "down",
                    TranslateDir::Left => "left",
                    TranslateDir::Right => "right",
                };
                write!(f, "TRANSLATE {d}")
            }
            Move::Commute { kind, index } => {
                let k = match kind {
                    SliceKind::Row => "row",
                    SliceKind::Col => "col",
                };
                write!(f, "COMMUTE {k} {index}")
            }
            Move::Stabilize { col, variant } => {
                write!(f, "STAB X {} col {col}", corner_token(variant))
            }
            Move::Destabilize { col, row, variant } => {
                write!(f, "DESTAB X {} at ({col},{row})", corner_token(variant))
            }
        }
    }
}

impl FromStr for Move {
    type Err = Error;
    fn from_str(s: &str) -> Result<Move> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["TRANSLATE", dir] => {
                let d = match *dir {
                    "up" => TranslateDir::Up,
                    "down" => TranslateDir::Down,
                    "left" => TranslateDir::Left,
                    "right" => TranslateDir::Right,
                    other => return Err(bad(format!("unknown direction {other:?}"))),
                };
                Ok(Move::Translate(d))
            }
            ["COMMUTE", kind, idx] => {
                let kind = match *kind {
                    "row" => SliceKind::Row,
                    "col" => SliceKind::Col,
                    other => return Err(bad(format!("unknown slice kind {other:?}"))),
                };
                let index = idx
                    .parse()
                    .map_err(|e| bad(format!("bad commutation index: {e}")))?;
                Ok(Move::Commute { kind, index })
            }
            ["STAB", "X", corner, "col", idx] => {
                let variant = corner_from_token(corner)
                    .ok_or_else(|| bad(format!("unknown stabilization variant {corner:?}")))?;
                let col = idx.parse().map_err(|e| bad(format!("bad column: {e}")))?;
                Ok(Move::Stabilize { col, variant })
            }
            ["STAB", ..] => Err(bad("expected STAB X <NE|NW|SE|SW> col <c>".into())),
            ["DESTAB", "X", corner, "at", rest @ ..] => {
                let variant = corner_from_token(corner)
                    .ok_or_else(|| bad(format!("unknown stabilization variant {corner:?}")))?;
                let coord = rest.concat();
                let coord = coord
                    .strip_prefix('(')
                    .and_then(|c| c.strip_suffix(')'))
                    .ok_or_else(|| bad("expected coordinates like (4,1)".into()))?;
                let (c, r) = coord
                    .split_once(',')
                    .ok_or_else(|| bad("expected coordinates like (4,1)".into()))?;
                let col = c
                    .trim()
                    .parse()
                    .map_err(|e| bad(format!("bad column: {e}")))?;
                let row = r.trim().parse().map_err(|e| bad(format!("bad row: {e}")))?;
                Ok(Move::Destabilize { col, row, variant })
            }
            ["DESTAB", ..] => Err(bad("expected DESTAB X <NE|NW|SE|SW> at (c,r)".into())),
            _ => Err(bad(format!("unrecognized move {s:?}"))),
        }
    }
}

/// Parse one move per nonempty line.
pub fn parse_move_path(text: &str) -> Result<Vec<Move>> {
    let mut path = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mv: Move = line.parse().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
            other => other,
        })?;
        path.push(mv);
    }
    Ok(path)
}

/// Render a path as one move per line.
pub fn format_move_path(path: &[Move]) -> String {
    path.iter().map(|m| m.to_string() + "\n").collect()
}

impl GridDiagram {
    fn slice_interval(&self, kind: SliceKind, index: usize) -> (usize, usize) {
        let (a, b) = match kind {
            SliceKind::Row => (self.x_col()[index], self.o_col()[index]),
            SliceKind::Col => (self.x_row()[index], self.o_row()[index]),
        };
        (a.min(b), a.max(b))
    }

    fn can_commute(&self, kind: SliceKind, index: usize) -> bool {
        let n = self.size();
        if index >= n {
            return false;
        }
        let (a1, b1) = self.slice_interval(kind, index);
        let (a2, b2) = self.slice_interval(kind, (index + 1) % n);
        // Legal exactly when the marker intervals are strictly disjoint or
        // strictly nested; any shared endpoint interleaves the strands.
        b1 < a2 || b2 < a1 || (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2)
    }

    /// Whether rows `index` and `index+1 mod n` may be exchanged.
    pub fn can_commute_rows(&self, index: usize) -> bool {
        self.can_commute(SliceKind::Row, index)
    }

    /// Whether columns `index` and `index+1 mod n` may be exchanged.
    pub fn can_commute_cols(&self, index: usize) -> bool {
        self.can_commute(SliceKind::Col, index)
    }

    fn swap_rows_adjacent(&self, r: usize) -> GridDiagram {
        let map = |v: usize| {
            if v == r {
                r + 1
            } else if v == r + 1 {
                r
            } else {
                v
            }
        };
        GridDiagram::from_parts_unchecked(
            self.x_row().iter().map(|&v| map(v)).collect(),
            self.o_row().iter().map(|&v| map(v)).collect(),
        )
    }

    fn swap_cols_adjacent(&self, c: usize) -> GridDiagram {
        let mut x = self.x_row().to_vec();
        let mut o = self.o_row().to_vec();
        x.swap(c, c + 1);
        o.swap(c, c + 1);
        GridDiagram::from_parts_unchecked(x, o)
    }

    /// Exchange rows `index` and `index+1 mod n`. The cyclic pair is
    /// normalized by a translation first, so the result of a wrapping
    /// commutation is returned in translated coordinates.
    pub fn commute_rows(&self, index: usize) -> Result<GridDiagram> {
        let n = self.size();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if !self.can_commute_rows(index) {
            return Err(Error::IllegalCommutation { index });
        }
        if index == n - 1 {
            Ok(self.translate(TranslateDir::Up).swap_rows_adjacent(0))
        } else {
            Ok(self.swap_rows_adjacent(index))
        }
    }

    /// Exchange columns `index` and `index+1 mod n`, as for rows.
    pub fn commute_cols(&self, index: usize) -> Result<GridDiagram> {
        let n = self.size();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if !self.can_commute_cols(index) {
            return Err(Error::IllegalCommutation { index });
        }
        if index == n - 1 {
            Ok(self.translate(TranslateDir::Right).swap_cols_adjacent(0))
        } else {
            Ok(self.swap_cols_adjacent(index))
        }
    }

    /// Stabilize at the X of column `col`: split its square into a 2x2 block
    /// carrying two X markers and one O. The variant names the corner of the
    /// resulting kink; NE and SW preserve (tb, r), SE lowers tb and r by one,
    /// NW trades tb for r (the transverse stabilization, dropping sl by 2).
    pub fn stabilize(&self, col: usize, variant: Corner) -> Result<GridDiagram> {
        let n = self.size();
        if col >= n {
            return Err(Error::IndexOutOfRange { index: col, n });
        }
        if n + 1 > MAX_SIZE {
            return Err(Error::SizeOutOfRange { n: n + 1 });
        }
        let r0 = self.x_row()[col];
        // keep_right/keep_up say which half of the split square keeps the
        // column's O and the row's O respectively.
        let (keep_right, keep_up) = match variant {
            Corner::NW => (true, true),
            Corner::SE => (false, false),
            Corner::NE => (false, true),
            Corner::SW => (true, false),
        };
        let c_keep = col + usize::from(keep_right);
        let c_other = col + usize::from(!keep_right);
        let r_keep = r0 + usize::from(keep_up);
        let r_other = r0 + usize::from(!keep_up);

        let nc = |c: usize| if c <= col { c } else { c + 1 };
        let nr = |r: usize| if r <= r0 { r } else { r + 1 };
        let mut x = vec![usize::MAX; n + 1];
        let mut o = vec![usize::MAX; n + 1];
        for c in 0..n {
            if c != col {
                x[nc(c)] = nr(self.x_row()[c]);
            }
            let or = self.o_row()[c];
            if c == col {
                // The stabilized column's O keeps its row but may shift right.
                o[c_keep] = nr(or);
            } else if or == r0 {
                // The stabilized row's O keeps its column but may shift up.
                o[nc(c)] = r_keep;
            } else {
                o[nc(c)] = nr(or);
            }
        }
        x[c_keep] = r_other;
        x[c_other] = r_keep;
        o[c_other] = r_other;
        Ok(GridDiagram::from_parts_unchecked(x, o))
    }

    /// The destabilization variant of the 2x2 block anchored (lower-left) at
    /// `(col, row)`, read cyclically, or None if the block is not
    /// destabilizable (it must hold exactly two X markers and one O).
    pub fn destab_variant_at(&self, col: usize, row: usize) -> Option<Corner> {
        let n = self.size();
        if n <= 2 || col >= n || row >= n {
            return None;
        }
        let c2 = (col + 1) % n;
        let r2 = (row + 1) % n;
        let in_rows = |r: usize| r == row || r == r2;
        let mut xs = 0;
        let mut os = 0;
        let mut o_cell = (0usize, 0usize);
        for c in [col, c2] {
            if in_rows(self.x_row()[c]) {
                xs += 1;
            }
            if in_rows(self.o_row()[c]) {
                os += 1;
                o_cell = (c, self.o_row()[c]);
            }
        }
        if xs != 2 || os != 1 {
            return None;
        }
        // The variant label is the vertical mirror of the O's block corner,
        // matching the stabilization that creates the block.
        Some(match (o_cell.0 == c2, o_cell.1 == r2) {
            (false, false) => Corner::NW,
            (false, true) => Corner::SW,
            (true, false) => Corner::NE,
            (true, true) => Corner::SE,
        })
    }

    /// All destabilizable blocks as (col, row, variant) anchors.
    pub fn destabilizations(&self) -> Vec<(usize, usize, Corner)> {
        let n = self.size();
        let mut out = Vec::new();
        for col in 0..n {
            for row in 0..n {
                if let Some(v) = self.destab_variant_at(col, row) {
                    out.push((col, row, v));
                }
            }
        }
        out
    }

    /// Collapse the 2x2 block anchored at `(col, row)` to a single X. Blocks
    /// wrapping the torus edge are normalized by a translation first, so a
    /// wrapping destabilization returns translated coordinates.
    pub fn destabilize(&self, col: usize, row: usize) -> Result<(GridDiagram, Corner)> {
        let n = self.size();
        if col >= n || row >= n {
            return Err(Error::IndexOutOfRange {
                index: col.max(row),
                n,
            });
        }
        if n <= 2 {
            return Err(Error::IllegalDestabilization { col, row });
        }
        if col == n - 1 || row == n - 1 {
            let dc = usize::from(col == n - 1);
            let dr = usize::from(row == n - 1);
            return self
                .translate_by(dc, dr)
                .destabilize((col + dc) % n, (row + dr) % n);
        }
        let variant = self
            .destab_variant_at(col, row)
            .ok_or(Error::IllegalDestabilization { col, row })?;
        let in_rows = |r: usize| r == row || r == row + 1;
        let nc = |c: usize| if c <= col { c } else { c - 1 };
        let nr = |r: usize| if r <= row { r } else { r - 1 };
        let mut x = vec![usize::MAX; n - 1];
        let mut o = vec![usize::MAX; n - 1];
        for c in 0..n {
            let xr = self.x_row()[c];
            if !((c == col || c == col + 1) && in_rows(xr)) {
                x[nc(c)] = nr(xr);
            }
            let or = self.o_row()[c];
            if !((c == col || c == col + 1) && in_rows(or)) {
                o[nc(c)] = nr(or);
            }
        }
        x[col] = row;
        Ok((GridDiagram::from_parts_unchecked(x, o), variant))
    }

    /// Apply one move, validating its legality.
    pub fn apply_move(&self, mv: Move) -> Result<GridDiagram> {
        match mv {
            Move::Translate(d) => Ok(self.translate(d)),
            Move::Commute {
                kind: SliceKind::Row,
                index,
            } => self.commute_rows(index),
            Move::Commute {
                kind: SliceKind::Col,
                index,
            } => self.commute_cols(index),
            Move::Stabilize { col, variant } => self.stabilize(col, variant),
            Move::Destabilize { col, row, variant } => {
                let (g, v) = self.destabilize(col, row)?;
                if v != variant {
                    return Err(Error::IllegalDestabilization { col, row });
                }
                Ok(g)
            }
        }
    }

    /// Apply a move sequence left to right.
    pub fn apply_path(&self, path: &[Move]) -> Result<GridDiagram> {
        let mut g = self.clone();
        for &mv in path {
            g = g.apply_move(mv)?;
        }
        Ok(g)
    }

    /// Every legal move in the given category, with stabilizations admitted
    /// only while the result stays within `max_size`.
    pub fn legal_moves(&self, mode: MoveMode, max_size: usize) -> Vec<Move> {
        let n = self.size();
        let mut out = vec![
            Move::Translate(TranslateDir::Up),
            Move::Translate(TranslateDir::Down),
            Move::Translate(TranslateDir::Left),
            Move::Translate(TranslateDir::Right),
        ];
        for index in 0..n {
            if self.can_commute_rows(index) {
                out.push(Move::Commute {
                    kind: SliceKind::Row,
                    index,
                });
            }
            if self.can_commute_cols(index) {
                out.push(Move::Commute {
                    kind: SliceKind::Col,
                    index,
                });
            }
        }
        if n + 1 <= max_size.min(MAX_SIZE) {
            for col in 0..n {
                for &variant in mode.stab_variants() {
                    out.push(Move::Stabilize { col, variant });
                }
            }
        }
        for (col, row, variant) in self.destabilizations() {
            if mode.stab_variants().contains(&variant) {
                out.push(Move::Destabilize { col, row, variant });
            }
        }
        out
    }
}
