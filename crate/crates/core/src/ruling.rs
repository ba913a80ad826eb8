//! Legendrian fronts from grid diagrams, and normal ruling polynomials.
//!
//! Rotating a grid diagram 45 degrees counter-clockwise and smoothing the
//! marker corners yields a front: SW corners open as left cusps, NE corners
//! close as right cusps, NW and SE corners smooth out, and grid crossings
//! stay crossings. The sweep below walks the grid's anti-diagonals in order,
//! maintains the bottom-to-top list of live strands, and records every cusp
//! and crossing positionally, which is all a ruling needs.
//!
//! A normal ruling pairs the front's strands into cusp-to-cusp paths: each
//! left cusp opens a pair, each right cusp must close one, and every
//! crossing either lets the strands pass through each other or switches
//! their continuations. The two paths of a pair bound an embedded disk, so
//! they never meet between their cusps: a crossing whose strands are
//! partners admits neither choice. Switches are only allowed between pairs
//! whose position intervals are nested or disjoint, never interleaved. Each
//! complete ruling contributes z^(switches - right cusps + 1) to the ruling
//! polynomial; in zero-graded mode only degree-0 crossings may switch.

use crate::error::{Error, Result};
use crate::grid::{Corner, GridDiagram};
use crate::laurent::Laurent;
use std::collections::BTreeMap;
use std::fmt;

/// One positional event of a front, bottom-to-top positions starting at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrontEvent {
    /// Two new strands appear at positions p and p+1.
    LeftCusp(usize),
    /// The strands at positions p and p+1 merge and vanish.
    RightCusp(usize),
    /// The strands at positions p and p+1 cross.
    Crossing(usize),
}

/// A Legendrian front as a left-to-right event sequence, with enough of the
/// source grid's data to grade it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Front {
    events: Vec<FrontEvent>,
    rotation: i64,
    writhe: i64,
}

impl Front {
    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn rotation(&self) -> i64 {
        self.rotation
    }

    pub fn writhe(&self) -> i64 {
        self.writhe
    }

    pub fn left_cusps(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, FrontEvent::LeftCusp(_)))
            .count()
    }

    pub fn right_cusps(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, FrontEvent::RightCusp(_)))
            .count()
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, FrontEvent::Crossing(_)))
            .count()
    }

    /// Thurston-Bennequin number recomputed from the front.
    pub fn tb(&self) -> i64 {
        self.writhe - self.right_cusps() as i64
    }
}

/// A live strand during the sweep: the horizontal segment of a row or the
/// vertical segment of a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strand {
    H(usize),
    V(usize),
}

/// Front height of a strand at sweep parameter s; horizontals descend,
/// verticals ascend.
fn strand_height(st: Strand, s: usize) -> i64 {
    match st {
        Strand::H(r) => 2 * r as i64 - s as i64,
        Strand::V(c) => s as i64 - 2 * c as i64,
    }
}

/// Converts a knot's grid diagram into its front. Errors on links.
pub fn grid_to_front(g: &GridDiagram) -> Result<Front> {
    let inv = g.classical_invariants()?;

    enum Cell {
        Corner(Corner, usize, usize),
        Cross(usize, usize),
    }
    // Sweep along anti-diagonals s = col + row, bottom-most cell first.
    let mut cells: Vec<(usize, i64, Cell)> = Vec::new();
    for (col, row, corner) in g.marker_corners() {
        cells.push((
            col + row,
            row as i64 - col as i64,
            Cell::Corner(corner, col, row),
        ));
    }
    for cr in g.crossings() {
        cells.push((
            cr.col + cr.row,
            cr.row as i64 - cr.col as i64,
            Cell::Cross(cr.col, cr.row),
        ));
    }
    cells.sort_by_key(|&(s, y, _)| (s, y));

    let mut live: Vec<Strand> = Vec::new();
    let mut events = Vec::new();
    let pos_of = |live: &[Strand], st: Strand| {
        live.iter()
            .position(|&x| x == st)
            .expect("sweep lost a live strand")
    };
    for (s, y, cell) in cells {
        match cell {
            Cell::Corner(Corner::SW, col, row) => {
                let p = live.iter().filter(|&&st| strand_height(st, s) < y).count();
                // The horizontal branch descends from the cusp, the vertical
                // branch ascends, so the horizontal sits below.
                live.insert(p, Strand::H(row));
                live.insert(p + 1, Strand::V(col));
                events.push(FrontEvent::LeftCusp(p));
            }
            Cell::Corner(Corner::NE, col, row) => {
                let p = pos_of(&live, Strand::V(col));
                assert_eq!(
                    live.get(p + 1),
                    Some(&Strand::H(row)),
                    "cusp strands not adjacent"
                );
                live.drain(p..=p + 1);
                events.push(FrontEvent::RightCusp(p));
            }
            Cell::Corner(Corner::NW, col, row) => {
                let p = pos_of(&live, Strand::V(col));
                live[p] = Strand::H(row);
            }
            Cell::Corner(Corner::SE, col, row) => {
                let p = pos_of(&live, Strand::H(row));
                live[p] = Strand::V(col);
            }
            Cell::Cross(col, row) => {
                let p = pos_of(&live, Strand::V(col));
                assert_eq!(
                    live.get(p + 1),
                    Some(&Strand::H(row)),
                    "crossing strands not adjacent"
                );
                live.swap(p, p + 1);
                events.push(FrontEvent::Crossing(p));
            }
        }
    }
    assert!(live.is_empty(), "sweep ended with live strands");
    Ok(Front {
        events,
        rotation: inv.r,
        writhe: g.writhe(),
    })
}

/// Union-find that tracks potential differences between strand segments.
struct PotentialForest {
    parent: Vec<usize>,
    /// pot(i) - pot(parent[i]).
    offset: Vec<i64>,
}

impl PotentialForest {
    fn new() -> Self {
        PotentialForest {
            parent: Vec::new(),
            offset: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.offset.push(0);
        id
    }

    /// Root of i's component and pot(i) - pot(root).
    fn find(&mut self, i: usize) -> (usize, i64) {
        if self.parent[i] == i {
            return (i, 0);
        }
        let (root, up) = self.find(self.parent[i]);
        self.parent[i] = root;
        self.offset[i] += up;
        (root, self.offset[i])
    }

    /// Imposes pot(a) - pot(b) = d; a modulus of 0 demands exact agreement.
    fn relate(&mut self, a: usize, b: usize, d: i64, modulus: i64) -> Result<()> {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            let got = oa - ob;
            let ok = if modulus == 0 {
                got == d
            } else {
                (got - d).rem_euclid(modulus) == 0
            };
            return if ok {
                Ok(())
            } else {
                Err(Error::InconsistentPotential)
            };
        }
        self.parent[ra] = rb;
        self.offset[ra] = ob + d - oa;
        Ok(())
    }
}

/// Maslov degree of each crossing, in event order. Potentials drop by one
/// from the upper to the lower branch of every cusp; a crossing's degree is
/// the upper-left strand's potential minus the lower-left strand's. For
/// rotation number r != 0 the degrees are reduced modulo 2|r|.
pub fn maslov_and_degrees(f: &Front) -> Result<Vec<i64>> {
    let modulus = 2 * f.rotation.abs();
    let mut forest = PotentialForest::new();
    let mut live: Vec<usize> = Vec::new();
    let mut at_crossing: Vec<(usize, usize)> = Vec::new();
    for ev in &f.events {
        match *ev {
            FrontEvent::LeftCusp(p) => {
                let lower = forest.fresh();
                let upper = forest.fresh();
                forest.relate(upper, lower, 1, modulus)?;
                live.insert(p, lower);
                live.insert(p + 1, upper);
            }
            FrontEvent::RightCusp(p) => {
                let lower = live.remove(p);
                let upper = live.remove(p);
                forest.relate(upper, lower, 1, modulus)?;
            }
            FrontEvent::Crossing(p) => {
                at_crossing.push((live[p + 1], live[p]));
                live.swap(p, p + 1);
            }
        }
    }
    assert!(live.is_empty(), "front ended with live strands");

    let total = forest.parent.len();
    if total > 0 {
        let (root, _) = forest.find(0);
        for i in 1..total {
            if forest.find(i).0 != root {
                return Err(Error::Disconnected);
            }
        }
    }
    let degrees = at_crossing
        .into_iter()
        .map(|(upper, lower)| {
            let d = forest.find(upper).1 - forest.find(lower).1;
            if modulus == 0 {
                d
            } else {
                d.rem_euclid(modulus)
            }
        })
        .collect();
    Ok(degrees)
}

/// Which crossings a ruling may switch at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RulingMode {
    Ungraded,
    ZeroGraded,
}

/// The ruling count polynomial in z, tagged with its grading mode. An empty
/// ruling set is the zero polynomial and renders as the empty-set symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RulingPolynomial {
    poly: Laurent,
    mode: RulingMode,
}

impl RulingPolynomial {
    pub fn poly(&self) -> &Laurent {
        &self.poly
    }

    pub fn mode(&self) -> RulingMode {
        self.mode
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for RulingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            write!(f, "∅")
        } else {
            write!(f, "{}", self.poly.display_with("z"))
        }
    }
}

/// A switch keeps both strands' positions; the two pairs involved are
/// distinct and their position intervals must be nested or disjoint.
fn switch_allowed(sigma: &[usize], p: usize) -> bool {
    let a = sigma[p];
    let b = sigma[p + 1];
    debug_assert_ne!(a, p + 1);
    if a < p && b > p + 1 {
        return true; // disjoint, pair of p below, pair of p+1 above
    }
    if a < p && b < p {
        return b < a; // both below: pair of p must nest inside pair of p+1
    }
    if a > p + 1 && b > p + 1 {
        return b < a; // both above: pair of p+1 must nest inside pair of p
    }
    false // interleaved
}

/// Depth-first enumeration over pass/switch choices. `sigma` pairs strand
/// positions; cusps force its shape, crossings branch. Calls `done` with the
/// switch set of every completed ruling.
fn backtrack(
    events: &[FrontEvent],
    switchable: &[bool],
    ei: usize,
    ki: usize,
    sigma: Vec<usize>,
    switches: &mut Vec<usize>,
    done: &mut dyn FnMut(&[usize]),
) {
    let Some(&ev) = events.get(ei) else {
        debug_assert!(sigma.is_empty());
        done(switches);
        return;
    };
    match ev {
        FrontEvent::LeftCusp(p) => {
            let mut next = Vec::with_capacity(sigma.len() + 2);
            let bump = |t: usize| if t >= p { t + 2 } else { t };
            next.extend(sigma[..p].iter().map(|&t| bump(t)));
            next.push(p + 1);
            next.push(p);
            next.extend(sigma[p..].iter().map(|&t| bump(t)));
            backtrack(events, switchable, ei + 1, ki, next, switches, done);
        }
        FrontEvent::RightCusp(p) => {
            if sigma[p] != p + 1 {
                return; // dying strands must be partners
            }
            let drop = |t: usize| if t > p + 1 { t - 2 } else { t };
            let next = sigma[..p]
                .iter()
                .chain(&sigma[p + 2..])
                .map(|&t| drop(t))
                .collect();
            backtrack(events, switchable, ei + 1, ki, next, switches, done);
        }
        FrontEvent::Crossing(p) => {
            if sigma[p] == p + 1 {
                // The two paths of one pair bound an embedded disk, so they
                // never meet away from their cusps: partners can neither
                // cross (pass) nor touch (switch). Dead branch.
                return;
            }
            let can_switch = switchable[ki] && switch_allowed(&sigma, p);
            // Pass: the strands exchange positions, conjugating the pairing.
            let mut passed = sigma.clone();
            passed.swap(p, p + 1);
            for t in passed.iter_mut() {
                if *t == p {
                    *t = p + 1;
                } else if *t == p + 1 {
                    *t = p;
                }
            }
            backtrack(events, switchable, ei + 1, ki + 1, passed, switches, done);
            if can_switch {
                // Switch: continuations swap instead, so the pairing stands.
                switches.push(ki);
                backtrack(events, switchable, ei + 1, ki + 1, sigma, switches, done);
                switches.pop();
            }
        }
    }
}

fn switch_mask(f: &Front, mode: RulingMode) -> Result<Vec<bool>> {
    match mode {
        RulingMode::Ungraded => Ok(vec![true; f.crossing_count()]),
        RulingMode::ZeroGraded => {
            if f.rotation != 0 {
                return Err(Error::NonZeroRotation { r: f.rotation });
            }
            Ok(maslov_and_degrees(f)?.into_iter().map(|d| d == 0).collect())
        }
    }
}

/// Counts normal rulings of the front, each weighted z^(switches - right
/// cusps + 1). Zero-graded mode demands rotation number 0 and restricts
/// switches to degree-0 crossings.
pub fn ruling_polynomial(f: &Front, mode: RulingMode) -> Result<RulingPolynomial> {
    let switchable = switch_mask(f, mode)?;
    let right = f.right_cusps() as i64;
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    backtrack(
        &f.events,
        &switchable,
        0,
        0,
        Vec::new(),
        &mut Vec::new(),
        &mut |sw| {
            *counts.entry(sw.len() as i64 - right + 1).or_insert(0) += 1;
        },
    );
    Ok(RulingPolynomial {
        poly: Laurent::from_terms(counts.into_iter()),
        mode,
    })
}

/// Every ruling's switch set (crossing indices in event order).
#[cfg(test)]
fn enumerate_rulings(f: &Front, mode: RulingMode) -> Result<Vec<Vec<usize>>> {
    let switchable = switch_mask(f, mode)?;
    let mut out = Vec::new();
    backtrack(
        &f.events,
        &switchable,
        0,
        0,
        Vec::new(),
        &mut Vec::new(),
        &mut |sw| {
            out.push(sw.to_vec());
        },
    );
    Ok(out)
}
