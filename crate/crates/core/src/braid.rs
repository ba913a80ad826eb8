//! Grid diagrams of braid closures.
//!
//! A braid word on k strands is drawn with the strands running upward and the
//! closure returning down the right-hand side. Each braid letter becomes one
//! crossing of the matching sign; the under strand jogs sideways through the
//! over strand's vertical run, respecting the grid rule that vertical always
//! beats horizontal. The resulting diagram has size 2k + 2m for a word of
//! length m, exactly m crossings, rotation number -m, and self-linking number
//! (writhe - k) when the closure is a knot.

use crate::error::{Error, Result};
use crate::grid::{GridDiagram, MAX_SIZE};
use std::collections::BTreeMap;

/// Horizontal coordinate key: (logical strand position, offset within the
/// position). Each vertical run gets a distinct key; lexicographic order is
/// the final left-to-right column order.
type XKey = (i64, i64);

struct Builder {
    /// Marker placements as (column key, height, is_x).
    markers: Vec<(XKey, i64, bool)>,
    /// Current vertical run per strand position.
    cur: Vec<XKey>,
    /// Height where the current run began, per position.
    run_start: Vec<i64>,
    /// Offset range ever used at each position.
    off_lo: Vec<i64>,
    off_hi: Vec<i64>,
}

impl Builder {
    fn new(k: usize) -> Builder {
        Builder {
            markers: Vec::with_capacity(4 * k),
            cur: (0..k as i64).map(|p| (p, 0)).collect(),
            run_start: (0..k as i64).map(|p| -4 * (k as i64 - p)).collect(),
            off_lo: vec![0; k],
            off_hi: vec![0; k],
        }
    }

    /// End the run at position `p` at height `y`: its X sits at the bottom
    /// (runs inside the braid travel upward), its O at the top.
    fn end_run(&mut self, p: usize, y: i64) {
        self.markers.push((self.cur[p], self.run_start[p], true));
        self.markers.push((self.cur[p], y, false));
    }

    fn fresh_right(&mut self, p: usize) -> XKey {
        self.off_hi[p] += 1;
        (p as i64, self.off_hi[p])
    }

    fn fresh_left(&mut self, p: usize) -> XKey {
        self.off_lo[p] -= 1;
        (p as i64, self.off_lo[p])
    }
}

/// Build the grid diagram of the closure of `word` on `strands` strands.
/// Letters are nonzero integers `i` with `|i| < strands`: letter `i` crosses
/// strand positions `i` and `i+1` (1-based) with the sign of `i`.
pub fn braid_to_grid(strands: usize, word: &[i32]) -> Result<GridDiagram> {
    let k = strands;
    if k == 0 {
        return Err(Error::InvalidBraidLetter {
            letter: 0,
            strands: 0,
        });
    }
    let n = 2 * k + 2 * word.len();
    if n > MAX_SIZE {
        return Err(Error::SizeOutOfRange { n });
    }
    let mut b = Builder::new(k);
    for (t, &letter) in word.iter().enumerate() {
        let a = letter.unsigned_abs() as usize;
        if letter == 0 || a >= k {
            return Err(Error::InvalidBraidLetter { letter, strands: k });
        }
        let (a, bpos) = (a - 1, a); // 0-based adjacent positions
        let y1 = 4 * (t as i64 + 1) + 1;
        let y2 = y1 + 2;
        if letter > 0 {
            // Positive: the left strand jogs east at y1, passing under the
            // right strand's vertical, which then jogs west above it.
            b.end_run(a, y1);
            let new_left = b.fresh_right(bpos);
            b.end_run(bpos, y2);
            let new_right = b.fresh_right(a);
            b.cur[a] = new_right;
            b.run_start[a] = y2;
            b.cur[bpos] = new_left;
            b.run_start[bpos] = y1;
        } else {
            // Negative: the right strand jogs west at y1 under the left
            // strand's vertical; the fresh run must sit left of every run
            // already at the destination so the jog crosses only that one.
            b.end_run(bpos, y1);
            let new_right = b.fresh_left(a);
            b.end_run(a, y2);
            let new_left = b.fresh_right(bpos);
            b.cur[a] = new_right;
            b.run_start[a] = y1;
            b.cur[bpos] = new_left;
            b.run_start[bpos] = y2;
        }
    }
    // Closure: position p exits at the top, returns down a column on the
    // right at nesting depth k - p, and re-enters at the bottom.
    let m = word.len() as i64;
    for p in 0..k {
        let v = (k - p) as i64;
        let y_top = 4 * (m + 1) + 4 * v;
        let y_bot = -4 * v;
        b.end_run(p, y_top);
        let ckey = (k as i64 + v, 0);
        b.markers.push((ckey, y_top, true));
        b.markers.push((ckey, y_bot, false));
    }

    let mut cols: BTreeMap<XKey, usize> = b.markers.iter().map(|&(x, _, _)| (x, 0)).collect();
    for (i, v) in cols.values_mut().enumerate() {
        *v = i;
    }
    let mut rows: BTreeMap<i64, usize> = b.markers.iter().map(|&(_, y, _)| (y, 0)).collect();
    for (i, v) in rows.values_mut().enumerate() {
        *v = i;
    }
    debug_assert_eq!(cols.len(), n);
    debug_assert_eq!(rows.len(), n);
    let mut x_row = vec![usize::MAX; n];
    let mut o_row = vec![usize::MAX; n];
    for &(x, y, is_x) in &b.markers {
        let c = cols[&x];
        let r = rows[&y];
        if is_x {
            x_row[c] = r;
        } else {
            o_row[c] = r;
        }
    }
    GridDiagram::new(x_row, o_row)
}

/// Exponent sum of a braid word.
pub fn exponent_sum(word: &[i32]) -> i64 {
    word.iter().map(|&l| l.signum() as i64).sum()
}

/// The permutation of strand positions induced by a braid word, as the image
/// of each starting position; the closure is a knot exactly when this is a
/// single cycle.
pub fn braid_permutation(strands: usize, word: &[i32]) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &letter in word {
        let a = letter.unsigned_abs() as usize;
        if letter == 0 || a >= strands {
            return Err(Error::InvalidBraidLetter { letter, strands });
        }
        perm.swap(a - 1, a);
    }
    Ok(perm)
}

/// Whether the closure of the word is a single-component link.
pub fn closes_to_knot(strands: usize, word: &[i32]) -> Result<bool> {
    let perm = braid_permutation(strands, word)?;
    let mut seen = vec![false; strands];
    let mut p = 0;
    let mut len = 0;
    while !seen[p] {
        seen[p] = true;
        len += 1;
        p = perm[p];
    }
    Ok(len == strands)
}
