//! Grid diagrams and their classical invariants.
//!
//! A grid diagram of size `n` places one X and one O in every row and every
//! column of an `n x n` board, never in the same square. Rows are indexed
//! bottom to top, columns left to right. The link is traced by joining O to X
//! horizontally in every row and X to O vertically in every column; vertical
//! segments always pass over horizontal ones.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on grid size so canonical keys fit one byte per cell.
pub const MAX_SIZE: usize = 255;

/// A grid diagram, stored as the row index of the X and O in each column.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridDiagram {
    pub(crate) x_row: Vec<usize>,
    pub(crate) o_row: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
}

impl TryFrom<RawGrid> for GridDiagram {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        if raw.x.len() != raw.n || raw.o.len() != raw.n {
            return Err(Error::LengthMismatch);
        }
        GridDiagram::new(raw.x, raw.o)
    }
}

impl From<GridDiagram> for RawGrid {
    fn from(g: GridDiagram) -> Self {
        RawGrid {
            n: g.size(),
            x: g.x_row,
            o: g.o_row,
        }
    }
}

/// Compass corner types of a marker, named by where the corner sits on the
/// turn: an NE corner has its two segments leaving west and south.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    NE,
    NW,
    SE,
    SW,
}

/// A crossing between the vertical segment of `col` and the horizontal
/// segment of `row`, with its orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub col: usize,
    pub row: usize,
    pub sign: i64,
}

/// Thurston-Bennequin number, rotation number, and self-linking number of the
/// oriented knot traced by a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub r: i64,
    pub sl: i64,
}

/// Torus translation directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TranslateDir {
    Up,
    Down,
    Left,
    Right,
}

/// Whether canonical keys identify oriented diagrams or also quotient by the
/// X/O swap that reverses orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyMode {
    Oriented,
    Unoriented,
}

/// Opaque canonical key: equal keys exactly when two diagrams differ by torus
/// translations (and marker swap, in unoriented mode).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<CanonicalKey> {
        if s.len() % 2 != 0 {
            return None;
        }
        let bytes: Option<Vec<u8>> = (0..s.len() / 2)
            .map(|i| u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok())
            .collect();
        Some(CanonicalKey(bytes?))
    }

    /// Recover the canonical representative encoded by this key.
    pub fn to_diagram(&self) -> GridDiagram {
        let n = self.0[0] as usize;
        let x = self.0[1..1 + n].iter().map(|&b| b as usize).collect();
        let o = self.0[1 + n..].iter().map(|&b| b as usize).collect();
        GridDiagram::new(x, o).expect("canonical keys always encode valid diagrams")
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    for &r in v {
        if r >= v.len() || seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

impl GridDiagram {
    /// Build a diagram from the row index of the X and the O in each column.
    pub fn new(x_row: Vec<usize>, o_row: Vec<usize>) -> Result<Self> {
        if x_row.len() != o_row.len() {
            return Err(Error::LengthMismatch);
        }
        let n = x_row.len();
        if n < 2 || n > MAX_SIZE {
            return Err(Error::SizeOutOfRange { n });
        }
        if !is_permutation(&x_row) || !is_permutation(&o_row) {
            return Err(Error::InvalidPermutation);
        }
        for c in 0..n {
            if x_row[c] == o_row[c] {
                return Err(Error::SharedSquare { col: c });
            }
        }
        Ok(GridDiagram { x_row, o_row })
    }

    /// Construct without validating; callers must uphold the grid invariants.
    /// Used by the move engine, whose outputs are valid by construction.
    pub(crate) fn from_parts_unchecked(x_row: Vec<usize>, o_row: Vec<usize>) -> GridDiagram {
        debug_assert!(x_row.len() == o_row.len() && x_row.len() >= 2);
        debug_assert!(is_permutation(&x_row) && is_permutation(&o_row));
        debug_assert!(x_row.iter().zip(&o_row).all(|(a, b)| a != b));
        GridDiagram { x_row, o_row }
    }

    pub fn size(&self) -> usize {
        self.x_row.len()
    }

    pub fn x_row(&self) -> &[usize] {
        &self.x_row
    }

    pub fn o_row(&self) -> &[usize] {
        &self.o_row
    }

    /// Column of the X in each row (inverse of `x_row`).
    pub fn x_col(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (c, &r) in self.x_row.iter().enumerate() {
            inv[r] = c;
        }
        inv
    }

    /// Column of the O in each row (inverse of `o_row`).
    pub fn o_col(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (c, &r) in self.o_row.iter().enumerate() {
            inv[r] = c;
        }
        inv
    }

    /// Number of link components traced by the diagram.
    pub fn components(&self) -> usize {
        // Following the link from the X of column c runs to that column's O,
        // then along the O's row to its X: columns permute by x_col[o_row[c]].
        let x_col = self.x_col();
        let mut seen = vec![false; self.size()];
        let mut cycles = 0;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = x_col[self.o_row[c]];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// All crossings with signs. The vertical strand is the over strand; a
    /// crossing is positive when the under direction rotated a quarter turn
    /// counterclockwise matches the over direction.
    pub fn crossings(&self) -> Vec<Crossing> {
        let x_col = self.x_col();
        let o_col = self.o_col();
        let mut out = Vec::new();
        for c in 0..self.size() {
            let (vlo, vhi) = minmax(self.x_row[c], self.o_row[c]);
            let v_north = self.o_row[c] > self.x_row[c];
            for r in vlo + 1..vhi {
                let (hlo, hhi) = minmax(x_col[r], o_col[r]);
                if hlo < c && c < hhi {
                    let h_east = x_col[r] > o_col[r];
                    let sign = if h_east == v_north { 1 } else { -1 };
                    out.push(Crossing {
                        col: c,
                        row: r,
                        sign,
                    });
                }
            }
        }
        out
    }

    pub fn writhe(&self) -> i64 {
        self.crossings().iter().map(|cr| cr.sign).sum()
    }

    fn classify(h_east: bool, v_north: bool) -> Corner {
        match (h_east, v_north) {
            (false, false) => Corner::NE,
            (true, false) => Corner::NW,
            (false, true) => Corner::SE,
            (true, true) => Corner::SW,
        }
    }

    /// Corner classification of every marker, as (column, row, corner).
    pub(crate) fn marker_corners(&self) -> Vec<(usize, usize, Corner)> {
        let x_col = self.x_col();
        let o_col = self.o_col();
        let mut out = Vec::with_capacity(2 * self.size());
        for c in 0..self.size() {
            let xr = self.x_row[c];
            out.push((c, xr, Self::classify(o_col[xr] > c, self.o_row[c] > xr)));
            let or = self.o_row[c];
            out.push((c, or, Self::classify(x_col[or] > c, self.x_row[c] > or)));
        }
        out
    }

    /// Counts of (NE, NW, SE, SW) corners over all 2n markers.
    pub fn corner_census(&self) -> [usize; 4] {
        let x_col = self.x_col();
        let o_col = self.o_col();
        let mut census = [0usize; 4];
        for c in 0..self.size() {
            let xr = self.x_row[c];
            let xc = Self::classify(o_col[xr] > c, self.o_row[c] > xr);
            let or = self.o_row[c];
            let oc = Self::classify(x_col[or] > c, self.x_row[c] > or);
            for corner in [xc, oc] {
                match corner {
                    Corner::NE => census[0] += 1,
                    Corner::NW => census[1] += 1,
                    Corner::SE => census[2] += 1,
                    Corner::SW => census[3] += 1,
                }
            }
        }
        census
    }

    /// tb, r, and sl of the oriented knot. Errors on multi-component links.
    pub fn classical_invariants(&self) -> Result<ClassicalInvariants> {
        let components = self.components();
        if components != 1 {
            return Err(Error::MultiComponent { components });
        }
        let x_col = self.x_col();
        let o_col = self.o_col();
        let mut ne = 0i64;
        let mut tally = 0i64;
        for c in 0..self.size() {
            // At an X the strand arrives horizontally and leaves vertically;
            // at an O it arrives vertically and leaves horizontally. NE and SW
            // corners are traversed either down-and-right (+1) or
            // up-and-left (-1); X and O markers realize opposite senses.
            let xr = self.x_row[c];
            match Self::classify(o_col[xr] > c, self.o_row[c] > xr) {
                Corner::NE => {
                    ne += 1;
                    tally += 1;
                }
                Corner::SW => tally -= 1,
                _ => {}
            }
            let or = self.o_row[c];
            match Self::classify(x_col[or] > c, self.x_row[c] > or) {
                Corner::NE => {
                    ne += 1;
                    tally -= 1;
                }
                Corner::SW => tally += 1,
                _ => {}
            }
        }
        debug_assert!(tally % 2 == 0, "corner tally is always even on a knot");
        let tb = self.writhe() - ne;
        let r = tally / 2;
        Ok(ClassicalInvariants { tb, r, sl: tb - r })
    }

    /// Reverse the knot's orientation: swap all X and O markers.
    pub fn reverse(&self) -> GridDiagram {
        GridDiagram {
            x_row: self.o_row.clone(),
            o_row: self.x_row.clone(),
        }
    }

    /// Rotate the board 180 degrees. Preserves tb, negates r.
    pub fn mirror_mu(&self) -> GridDiagram {
        let n = self.size();
        let flip = |v: &[usize]| {
            let mut out = vec![0; n];
            for (c, &r) in v.iter().enumerate() {
                out[n - 1 - c] = n - 1 - r;
            }
            out
        };
        GridDiagram {
            x_row: flip(&self.x_row),
            o_row: flip(&self.o_row),
        }
    }

    /// Reflect the board left-right. Produces the topological mirror image,
    /// since the reflection reverses every crossing while keeping vertical
    /// strands (and hence the over-strand rule) vertical.
    pub fn mirror_topological(&self) -> GridDiagram {
        let rev = |v: &[usize]| {
            let mut out = v.to_vec();
            out.reverse();
            out
        };
        GridDiagram {
            x_row: rev(&self.x_row),
            o_row: rev(&self.o_row),
        }
    }

    /// Exchange rows and columns. This keeps the link type: the reflection is
    /// undone by the over-strand rule flipping along with it.
    pub fn transpose(&self) -> GridDiagram {
        GridDiagram {
            x_row: self.x_col(),
            o_row: self.o_col(),
        }
    }

    /// Translate the diagram on the torus.
    pub fn translate(&self, dir: TranslateDir) -> GridDiagram {
        let n = self.size();
        match dir {
            TranslateDir::Up => self.translate_by(0, 1),
            TranslateDir::Down => self.translate_by(0, n - 1),
            TranslateDir::Right => self.translate_by(1, 0),
            TranslateDir::Left => self.translate_by(n - 1, 0),
        }
    }

    /// Shift columns right by `dc` and rows up by `dr`, both cyclically.
    pub fn translate_by(&self, dc: usize, dr: usize) -> GridDiagram {
        let n = self.size();
        let mut x = vec![0; n];
        let mut o = vec![0; n];
        for c in 0..n {
            x[(c + dc) % n] = (self.x_row[c] + dr) % n;
            o[(c + dc) % n] = (self.o_row[c] + dr) % n;
        }
        GridDiagram { x_row: x, o_row: o }
    }

    fn key_bytes(x: &[usize], o: &[usize]) -> Vec<u8> {
        let mut bytes = Vec::with_capacity(1 + 2 * x.len());
        bytes.push(x.len() as u8);
        bytes.extend(x.iter().map(|&v| v as u8));
        bytes.extend(o.iter().map(|&v| v as u8));
        bytes
    }

    /// Canonical key: lexicographic minimum of the serialized diagram over
    /// all torus translations (and the X/O swap in unoriented mode).
    pub fn canonical_key(&self, mode: KeyMode) -> CanonicalKey {
        let n = self.size();
        let mut best: Option<Vec<u8>> = None;
        for dc in 0..n {
            for dr in 0..n {
                let t = self.translate_by(dc, dr);
                let cand = Self::key_bytes(&t.x_row, &t.o_row);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
                if mode == KeyMode::Unoriented {
                    let cand = Self::key_bytes(&t.o_row, &t.x_row);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        CanonicalKey(best.expect("size >= 2"))
    }

    /// The translate realizing the oriented canonical key.
    pub fn canonical_form(&self) -> GridDiagram {
        self.canonical_key(KeyMode::Oriented).to_diagram()
    }

    /// Parse the three-line text format:
    ///
    /// ```text
    /// n=5
    /// X=2 3 4 0 1
    /// O=0 1 2 3 4
    /// ```
    pub fn parse(text: &str) -> Result<GridDiagram> {
        let mut lines = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if !line.is_empty() {
                lines.push((i + 1, line));
            }
        }
        if lines.len() != 3 {
            return Err(Error::Parse {
                line: lines.len().min(4),
                msg: format!("expected 3 nonempty lines, found {}", lines.len()),
            });
        }
        let n = {
            let (lineno, line) = lines[0];
            let rest = line.strip_prefix("n=").ok_or(Error::Parse {
                line: lineno,
                msg: "first line must be n=<size>".into(),
            })?;
            rest.trim().parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad size: {e}"),
            })?
        };
        let parse_rows = |idx: usize, prefix: &str| -> Result<Vec<usize>> {
            let (lineno, line) = lines[idx];
            let rest = line.strip_prefix(prefix).ok_or(Error::Parse {
                line: lineno,
                msg: format!("line must start with {prefix}"),
            })?;
            let mut rows = Vec::new();
            for tok in rest.split_whitespace() {
                rows.push(tok.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad row index {tok:?}: {e}"),
                })?);
            }
            if rows.len() != n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {n} row indices, found {}", rows.len()),
                });
            }
            Ok(rows)
        };
        let x = parse_rows(1, "X=")?;
        let o = parse_rows(2, "O=")?;
        GridDiagram::new(x, o)
    }
}

fn minmax(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.size())?;
        let join = |v: &[usize]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "X={}", join(&self.x_row))?;
        write!(f, "O={}", join(&self.o_row))
    }
}

impl fmt::Debug for GridDiagram {
    /// Compact one-line form, e.g. `grid[5; X=2 3 4 0 1; O=0 1 2 3 4]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "grid[{}; X={}; O={}]",
            self.size(),
            join(&self.x_row),
            join(&self.o_row)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{all_diagrams, pos_trefoil5 as trefoil5, unknot2};
    use std::collections::HashMap;

    #[test]
    fn rejects_shared_square() {
        let err = GridDiagram::new(vec![0, 1], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::SharedSquare { col: 0 }));
    }

    #[test]
    fn rejects_non_permutations_and_tiny_grids() {
        assert!(matches!(
            GridDiagram::new(vec![0, 0], vec![1, 1]),
            Err(Error::InvalidPermutation)
        ));
        assert!(matches!(
            GridDiagram::new(vec![0], vec![0]),
            Err(Error::SizeOutOfRange { n: 1 })
        ));
        assert!(matches!(
            GridDiagram::new(vec![1, 0], vec![0]),
            Err(Error::LengthMismatch)
        ));
    }

    #[test]
    fn unknot_invariants() {
        let g = unknot2();
        assert_eq!(g.components(), 1);
        assert!(g.crossings().is_empty());
        let inv = g.classical_invariants().unwrap();
        assert_eq!((inv.tb, inv.r, inv.sl), (-1, 0, -1));
        // One corner of each compass type.
        assert_eq!(g.corner_census(), [1, 1, 1, 1]);
    }

    #[test]
    fn trefoil_is_a_knot_with_three_positive_crossings() {
        let g = trefoil5();
        assert_eq!(g.components(), 1);
        let cs = g.crossings();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.sign == 1));
        let inv = g.classical_invariants().unwrap();
        assert_eq!((inv.tb, inv.r, inv.sl), (1, 0, 1));
    }

    #[test]
    fn two_component_unlink() {
        let g = GridDiagram::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(g.components(), 2);
        assert!(g.crossings().is_empty());
        assert!(matches!(
            g.classical_invariants(),
            Err(Error::MultiComponent { components: 2 })
        ));
    }

    /// Independent crossing oracle: rasterize every segment onto lattice
    /// points and intersect interiors, deriving each sign from a direction
    /// table rather than the production comparison.
    fn crossings_by_rasterization(g: &GridDiagram) -> Vec<Crossing> {
        #[derive(Clone, Copy, PartialEq)]
        enum Dir {
            N,
            S,
            E,
            W,
        }
        let n = g.size();
        let x_col = g.x_col();
        let o_col = g.o_col();
        let mut vert: HashMap<(usize, usize), Dir> = HashMap::new();
        let mut horiz: HashMap<(usize, usize), Dir> = HashMap::new();
        for c in 0..n {
            let (lo, hi) = minmax(g.x_row()[c], g.o_row()[c]);
            let dir = if g.o_row()[c] > g.x_row()[c] {
                Dir::N
            } else {
                Dir::S
            };
            for r in lo + 1..hi {
                vert.insert((c, r), dir);
            }
        }
        for r in 0..n {
            let (lo, hi) = minmax(x_col[r], o_col[r]);
            let dir = if x_col[r] > o_col[r] { Dir::E } else { Dir::W };
            for c in lo + 1..hi {
                horiz.insert((c, r), dir);
            }
        }
        let mut out = Vec::new();
        for (&(c, r), &v) in &vert {
            if let Some(&h) = horiz.get(&(c, r)) {
                // Positive exactly when the under strand, turned 90 degrees
                // counterclockwise, points along the over strand.
                let sign = match (h, v) {
                    (Dir::E, Dir::N) | (Dir::W, Dir::S) => 1,
                    (Dir::E, Dir::S) | (Dir::W, Dir::N) => -1,
                    _ => unreachable!("horizontal segments are E or W"),
                };
                out.push(Crossing {
                    col: c,
                    row: r,
                    sign,
                });
            }
        }
        out.sort_by_key(|c| (c.col, c.row));
        out
    }

    /// Independent invariants oracle: walk the knot marker to marker,
    /// classify each corner from the traversal directions, and accumulate
    /// tb and r from first principles.
    fn invariants_by_traversal(g: &GridDiagram) -> (i64, i64) {
        assert!(g.is_knot());
        let x_col = g.x_col();
        let mut ne = 0i64;
        let mut tally = 0i64;
        let start = 0usize;
        let mut c = start;
        loop {
            // Vertical leg X -> O in column c, then horizontal leg O -> X.
            let (xr, or) = (g.x_row()[c], g.o_row()[c]);
            let v_motion = if or > xr { 'n' } else { 's' };
            let next_c = x_col[or];
            let h_motion = if next_c > c { 'e' } else { 'w' };
            // Corner at the O of column c: arrives v_motion, leaves h_motion.
            match (v_motion, h_motion) {
                ('n', 'w') => {
                    ne += 1;
                    tally -= 1;
                }
                ('s', 'e') => tally += 1,
                _ => {}
            }
            // Corner at the X we arrive at: arrives h_motion, leaves with the
            // next vertical's motion.
            let v2 = if g.o_row()[next_c] > g.x_row()[next_c] {
                'n'
            } else {
                's'
            };
            match (h_motion, v2) {
                ('e', 's') => {
                    ne += 1;
                    tally += 1;
                }
                ('w', 'n') => tally -= 1,
                _ => {}
            }
            c = next_c;
            if c == start {
                break;
            }
        }
        let writhe: i64 = crossings_by_rasterization(g).iter().map(|c| c.sign).sum();
        assert_eq!(tally % 2, 0);
        (writhe - ne, tally / 2)
    }

    #[test]
    fn crossings_match_rasterization_oracle_exhaustively() {
        for n in [2, 3, 4] {
            for g in all_diagrams(n) {
                let mut got = g.crossings();
                got.sort_by_key(|c| (c.col, c.row));
                assert_eq!(got, crossings_by_rasterization(&g), "diagram {g:?}");
            }
        }
    }

    #[test]
    fn invariants_match_traversal_oracle_exhaustively() {
        for n in [2, 3, 4] {
            for g in all_diagrams(n) {
                if !g.is_knot() {
                    continue;
                }
                let inv = g.classical_invariants().unwrap();
                let (tb, r) = invariants_by_traversal(&g);
                assert_eq!((inv.tb, inv.r), (tb, r), "diagram {g:?}");
                assert_eq!(inv.sl, inv.tb - inv.r);
            }
        }
    }

    #[test]
    fn five_by_five_trefoil_oracles() {
        let g = trefoil5();
        let mut got = g.crossings();
        got.sort_by_key(|c| (c.col, c.row));
        assert_eq!(got, crossings_by_rasterization(&g));
        assert_eq!(invariants_by_traversal(&g), (1, 0));
    }

    #[test]
    fn corner_census_balances() {
        for g in all_diagrams(4) {
            let [ne, nw, se, sw] = g.corner_census();
            assert_eq!(ne + nw + se + sw, 2 * g.size());
            // Row and column endpoint counts force NE=SW and NW=SE.
            assert_eq!(ne, sw);
            assert_eq!(nw, se);
        }
    }

    #[test]
    fn reverse_preserves_tb_and_negates_r() {
        for g in all_diagrams(4) {
            if !g.is_knot() {
                continue;
            }
            let a = g.classical_invariants().unwrap();
            let b = g.reverse().classical_invariants().unwrap();
            assert_eq!((a.tb, -a.r), (b.tb, b.r), "diagram {g:?}");
        }
    }

    #[test]
    fn mirror_mu_preserves_tb_and_negates_r() {
        for g in all_diagrams(4) {
            if !g.is_knot() {
                continue;
            }
            let a = g.classical_invariants().unwrap();
            let b = g.mirror_mu().classical_invariants().unwrap();
            assert_eq!((a.tb, -a.r), (b.tb, b.r), "diagram {g:?}");
        }
    }

    #[test]
    fn transverse_mirror_preserves_sl() {
        for g in all_diagrams(4) {
            if !g.is_knot() {
                continue;
            }
            let a = g.classical_invariants().unwrap();
            let b = g.reverse().mirror_mu().classical_invariants().unwrap();
            assert_eq!(a.sl, b.sl, "diagram {g:?}");
        }
    }

    #[test]
    fn mirror_topological_negates_writhe() {
        for g in all_diagrams(4) {
            assert_eq!(
                g.writhe(),
                -g.mirror_topological().writhe(),
                "diagram {g:?}"
            );
        }
        assert_eq!(trefoil5().mirror_topological().writhe(), -3);
    }

    #[test]
    fn transpose_preserves_writhe() {
        for g in all_diagrams(4) {
            assert_eq!(g.writhe(), g.transpose().writhe(), "diagram {g:?}");
        }
    }

    #[test]
    fn translations_have_order_n() {
        let g = trefoil5();
        let mut t = g.clone();
        for _ in 0..5 {
            t = t.translate(TranslateDir::Up);
        }
        assert_eq!(t, g);
        let round = g
            .translate(TranslateDir::Left)
            .translate(TranslateDir::Right);
        assert_eq!(round, g);
    }

    #[test]
    fn canonical_key_constant_on_orbits_and_separating_across() {
        // Exhaustive at n=3: group diagrams into explicit translation orbits
        // and check the key is an exact orbit invariant.
        let all = all_diagrams(3);
        let mut orbit_of: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut next = 0;
        for g in &all {
            let ser = GridDiagram::key_bytes(g.x_row(), g.o_row());
            if orbit_of.contains_key(&ser) {
                continue;
            }
            for dc in 0..3 {
                for dr in 0..3 {
                    let t = g.translate_by(dc, dr);
                    orbit_of.insert(GridDiagram::key_bytes(t.x_row(), t.o_row()), next);
                }
            }
            next += 1;
        }
        let mut key_to_orbit: HashMap<CanonicalKey, usize> = HashMap::new();
        for g in &all {
            let ser = GridDiagram::key_bytes(g.x_row(), g.o_row());
            let orbit = orbit_of[&ser];
            let key = g.canonical_key(KeyMode::Oriented);
            match key_to_orbit.get(&key) {
                Some(&o) => assert_eq!(o, orbit, "key collided across orbits"),
                None => {
                    key_to_orbit.insert(key, orbit);
                }
            }
        }
        assert_eq!(key_to_orbit.len(), next);
    }

    #[test]
    fn unoriented_key_identifies_reverses() {
        for g in all_diagrams(3) {
            assert_eq!(
                g.canonical_key(KeyMode::Unoriented),
                g.reverse().canonical_key(KeyMode::Unoriented)
            );
        }
        let g = trefoil5();
        assert_ne!(
            g.canonical_key(KeyMode::Oriented),
            g.reverse().canonical_key(KeyMode::Oriented)
        );
    }

    #[test]
    fn canonical_form_is_idempotent_and_in_orbit() {
        let g = trefoil5().translate_by(2, 3);
        let c = g.canonical_form();
        assert_eq!(c.canonical_form(), c);
        assert_eq!(
            c.canonical_key(KeyMode::Oriented),
            g.canonical_key(KeyMode::Oriented)
        );
    }

    #[test]
    fn key_hex_roundtrip() {
        let key = trefoil5().canonical_key(KeyMode::Oriented);
        assert_eq!(CanonicalKey::from_hex(&key.to_hex()).unwrap(), key);
        assert_eq!(key.to_diagram().canonical_key(KeyMode::Oriented), key);
    }

    #[test]
    fn parse_roundtrip_and_rejections() {
        let g = trefoil5();
        assert_eq!(GridDiagram::parse(&g.to_string()).unwrap(), g);
        // Trailing tokens are rejected.
        assert!(GridDiagram::parse("n=2\nX=1 0 7\nO=0 1").is_err());
        assert!(GridDiagram::parse("n=2\nX=1 0\nO=0 1\nextra").is_err());
        assert!(GridDiagram::parse("n=2\nX=1 0\nO=0").is_err());
        assert!(GridDiagram::parse("size=2\nX=1 0\nO=0 1").is_err());
        // Whitespace and blank lines are tolerated.
        let padded = "\n n=2 \nX=1 0\n\nO=0 1\n\n";
        assert_eq!(GridDiagram::parse(padded).unwrap(), unknot2());
    }

    #[test]
    fn serde_roundtrip_validates() {
        let g = trefoil5();
        let json = serde_json::to_string(&g).unwrap();
        let back: GridDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"n":2,"x":[0,1],"o":[0,1]}"#;
        assert!(serde_json::from_str::<GridDiagram>(bad).is_err());
    }
}
