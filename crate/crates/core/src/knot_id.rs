//! Kauffman bracket, Jones polynomial, determinant, and identification of
//! knots with at most seven crossings.
//!
//! The bracket is a state sum over all smoothings of the diagram's crossings.
//! Because vertical strands always cross over horizontal ones, the A-type
//! smoothing of every crossing joins the north arm to the west and the south
//! to the east; the B-type joins north-east and south-west. Loops per state
//! are counted with a union-find over crossing arms, seeded once with the
//! arcs of the diagram walk.

use crate::braid::braid_to_grid;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::GridDiagram;
use crate::laurent::Laurent;
use std::sync::OnceLock;

/// Default cap on crossing count for the exponential state sum.
pub const DEFAULT_STATE_SUM_CEILING: usize = 24;

/// Crossing-arm slot ids: crossing i owns slots 4i..4i+4 in order N,S,E,W.
const N: u32 = 0;
const S: u32 = 1;
const E: u32 = 2;
const W: u32 = 3;

struct Shadow {
    crossings: usize,
    /// Strand arcs between crossing arms, constant across smoothings.
    arcs: Vec<(u32, u32)>,
    /// Link components that pass through no crossing at all.
    free_circles: usize,
}

fn shadow(g: &GridDiagram) -> Shadow {
    let crossings = g.crossings();
    let n = g.size();
    let x_col = g.x_col();
    let mut by_col: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut by_row: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (i, c) in crossings.iter().enumerate() {
        by_col[c.col].push((c.row, i as u32));
        by_row[c.row].push((c.col, i as u32));
    }
    for v in by_col.iter_mut().chain(by_row.iter_mut()) {
        v.sort_unstable();
    }

    let mut arcs = Vec::with_capacity(2 * crossings.len());
    let mut free_circles = 0;
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Walk this component: vertical X->O in each column, then the
        // horizontal O->X of the row it lands in. Record (enter, exit) arm
        // pairs at every crossing passed.
        let mut passages: Vec<(u32, u32)> = Vec::new();
        let mut c = start;
        loop {
            seen[c] = true;
            let (xr, or) = (g.x_row()[c], g.o_row()[c]);
            if or > xr {
                for &(_, i) in &by_col[c] {
                    passages.push((4 * i + S, 4 * i + N));
                }
            } else {
                for &(_, i) in by_col[c].iter().rev() {
                    passages.push((4 * i + N, 4 * i + S));
                }
            }
            let r = or;
            let next_c = x_col[r];
            if next_c > c {
                for &(_, i) in &by_row[r] {
                    passages.push((4 * i + W, 4 * i + E));
                }
            } else {
                for &(_, i) in by_row[r].iter().rev() {
                    passages.push((4 * i + E, 4 * i + W));
                }
            }
            c = next_c;
            if c == start {
                break;
            }
        }
        if passages.is_empty() {
            free_circles += 1;
        } else {
            for w in 0..passages.len() {
                let exit = passages[w].1;
                let enter = passages[(w + 1) % passages.len()].0;
                arcs.push((exit, enter));
            }
        }
    }
    Shadow {
        crossings: crossings.len(),
        arcs,
        free_circles,
    }
}

fn uf_find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        parent[i as usize] = parent[parent[i as usize] as usize];
        i = parent[i as usize];
    }
    i
}

fn uf_union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (uf_find(parent, a), uf_find(parent, b));
    if ra != rb {
        parent[rb as usize] = ra;
    }
}

/// Per-state tallies: counts[a_smoothings][total_loops] over a state range.
type Counts = Vec<Vec<u64>>;

fn scan_states(base: &[u32], k: usize, free: usize, lo: u64, hi: u64) -> Counts {
    let mut counts = vec![vec![0u64; 2 * k + free + 1]; k + 1];
    let mut parent = vec![0u32; base.len()];
    for state in lo..hi {
        parent.copy_from_slice(base);
        for i in 0..k {
            let s = 4 * i as u32;
            if state >> i & 1 == 1 {
                uf_union(&mut parent, s + N, s + W);
                uf_union(&mut parent, s + S, s + E);
            } else {
                uf_union(&mut parent, s + N, s + E);
                uf_union(&mut parent, s + S, s + W);
            }
        }
        let mut loops = free;
        for i in 0..parent.len() as u32 {
            if uf_find(&mut parent, i) == i {
                loops += 1;
            }
        }
        counts[state.count_ones() as usize][loops] += 1;
    }
    counts
}

fn merge_counts(mut a: Counts, b: Counts) -> Counts {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (ca, cb) in ra.iter_mut().zip(rb) {
            *ca += cb;
        }
    }
    a
}

/// Kauffman bracket of the (possibly multi-component) link, normalized so
/// the unknot's bracket is 1. Errors when the crossing count exceeds
/// `ceiling`.
pub fn kauffman_bracket(g: &GridDiagram, ceiling: usize, exec: Exec) -> Result<Laurent> {
    let sh = shadow(g);
    let k = sh.crossings;
    if k > ceiling {
        return Err(Error::TooManyCrossings { count: k, ceiling });
    }
    let delta = Laurent::from_terms([(2, -1), (-2, -1)]);
    if k == 0 {
        return Ok(delta.pow(sh.free_circles as u32 - 1));
    }
    let mut base: Vec<u32> = (0..4 * k as u32).collect();
    for &(a, b) in &sh.arcs {
        uf_union(&mut base, a, b);
    }
    for i in 0..4 * k as u32 {
        uf_find(&mut base, i);
    }

    let total: u64 = 1 << k;
    let counts = if exec.is_parallel() && k > 12 {
        parallel_scan(&base, k, sh.free_circles, total)
    } else {
        scan_states(&base, k, sh.free_circles, 0, total)
    };

    // Assemble sum A^(a-b) * delta^(loops-1) from the tallies.
    let max_loops = counts
        .iter()
        .flat_map(|r| r.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, _)| l))
        .max()
        .unwrap_or(1);
    let mut delta_pows = Vec::with_capacity(max_loops);
    delta_pows.push(Laurent::one());
    for _ in 1..max_loops {
        delta_pows.push(&delta * delta_pows.last().unwrap());
    }
    let mut out = Laurent::zero();
    for (ones, row) in counts.iter().enumerate() {
        for (loops, &cnt) in row.iter().enumerate() {
            if cnt > 0 {
                let exp = 2 * ones as i64 - k as i64;
                out += &delta_pows[loops - 1].mul_monomial(cnt as i64, exp);
            }
        }
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn parallel_scan(base: &[u32], k: usize, free: usize, total: u64) -> Counts {
    use rayon::prelude::*;
    let chunk: u64 = 1 << 12;
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|i| scan_states(base, k, free, i * chunk, ((i + 1) * chunk).min(total)))
        .reduce(|| vec![vec![0u64; 2 * k + free + 1]; k + 1], merge_counts)
}

#[cfg(not(feature = "parallel"))]
fn parallel_scan(base: &[u32], k: usize, free: usize, total: u64) -> Counts {
    scan_states(base, k, free, 0, total)
}

/// Jones polynomial in t, from the bracket and writhe. Links with an even
/// number of components land in half-integer powers and are rejected.
pub fn jones_polynomial(g: &GridDiagram, ceiling: usize, exec: Exec) -> Result<Laurent> {
    let bracket = kauffman_bracket(g, ceiling, exec)?;
    let w = g.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    bracket.mul_monomial(sign, -3 * w).reexpress(-4)
}

/// Knot determinant |V(-1)|.
pub fn determinant(g: &GridDiagram, ceiling: usize, exec: Exec) -> Result<u64> {
    Ok(jones_polynomial(g, ceiling, exec)?
        .eval_int(-1)
        .unsigned_abs())
}

/// One row of the built-in identification table, stored in the chirality the
/// plain Rolfsen-style name refers to.
pub struct KnotEntry {
    pub name: &'static str,
    pub crossings: usize,
    pub det: u64,
    pub amphichiral: bool,
    /// Jones polynomial of the named chirality.
    pub jones: Laurent,
    /// A grid diagram of the named chirality.
    pub rep: GridDiagram,
}

/// Braid words plus reference data for the table. The `jones` pairs give
/// the Jones polynomial of the knot the plain name denotes; the word may
/// close to either chirality (the builder mirrors the grid if needed).
struct TableSpec {
    name: &'static str,
    strands: usize,
    word: &'static [i32],
    crossings: usize,
    det: u64,
    jones: &'static [(i64, i64)],
}

// Words for the five-to-seven-crossing knots were produced by the ignored
// `search_braid_words_for_table` scan below; the polynomials each emerged
// from several unrelated words and agree with the standard tables.
const TABLE_SPECS: &[TableSpec] = &[
    TableSpec {
        name: "0_1",
        strands: 1,
        word: &[],
        crossings: 0,
        det: 1,
        jones: &[(0, 1)],
    },
    TableSpec {
        name: "3_1",
        strands: 2,
        word: &[1, 1, 1],
        crossings: 3,
        det: 3,
        jones: &[(-4, -1), (-3, 1), (-1, 1)],
    },
    TableSpec {
        name: "4_1",
        strands: 3,
        word: &[1, -2, 1, -2],
        crossings: 4,
        det: 5,
        jones: &[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)],
    },
    TableSpec {
        name: "5_1",
        strands: 2,
        word: &[1, 1, 1, 1, 1],
        crossings: 5,
        det: 5,
        jones: &[(-7, -1), (-6, 1), (-5, -1), (-4, 1), (-2, 1)],
    },
    TableSpec {
        name: "5_2",
        strands: 3,
        word: &[1, 1, 1, 2, -1, 2],
        crossings: 5,
        det: 7,
        jones: &[(-6, -1), (-5, 1), (-4, -1), (-3, 2), (-2, -1), (-1, 1)],
    },
    TableSpec {
        name: "6_1",
        strands: 4,
        word: &[1, 1, 2, -1, -3, 2, -3],
        crossings: 6,
        det: 9,
        jones: &[
            (-4, 1),
            (-3, -1),
            (-2, 1),
            (-1, -2),
            (0, 2),
            (1, -1),
            (2, 1),
        ],
    },
    TableSpec {
        name: "6_2",
        strands: 3,
        word: &[1, 1, 1, -2, 1, -2],
        crossings: 6,
        det: 11,
        jones: &[
            (-5, 1),
            (-4, -2),
            (-3, 2),
            (-2, -2),
            (-1, 2),
            (0, -1),
            (1, 1),
        ],
    },
    TableSpec {
        name: "6_3",
        strands: 3,
        word: &[1, 1, -2, 1, -2, -2],
        crossings: 6,
        det: 13,
        jones: &[
            (-3, -1),
            (-2, 2),
            (-1, -2),
            (0, 3),
            (1, -2),
            (2, 2),
            (3, -1),
        ],
    },
    TableSpec {
        name: "7_1",
        strands: 2,
        word: &[1, 1, 1, 1, 1, 1, 1],
        crossings: 7,
        det: 7,
        jones: &[
            (-10, -1),
            (-9, 1),
            (-8, -1),
            (-7, 1),
            (-6, -1),
            (-5, 1),
            (-3, 1),
        ],
    },
    TableSpec {
        name: "7_2",
        strands: 4,
        word: &[-3, 2, 3, 3, -1, 2, 1, 1, 1],
        crossings: 7,
        det: 11,
        jones: &[
            (-8, -1),
            (-7, 1),
            (-6, -1),
            (-5, 2),
            (-4, -2),
            (-3, 2),
            (-2, -1),
            (-1, 1),
        ],
    },
    TableSpec {
        name: "7_3",
        strands: 3,
        word: &[1, 1, 1, 1, 1, 2, -1, 2],
        crossings: 7,
        det: 13,
        jones: &[
            (2, 1),
            (3, -1),
            (4, 2),
            (5, -2),
            (6, 3),
            (7, -2),
            (8, 1),
            (9, -1),
        ],
    },
    TableSpec {
        name: "7_4",
        strands: 4,
        word: &[-3, 2, 3, 3, 2, -1, 2, 1, 1],
        crossings: 7,
        det: 15,
        jones: &[
            (-8, -1),
            (-7, 1),
            (-6, -2),
            (-5, 3),
            (-4, -2),
            (-3, 3),
            (-2, -2),
            (-1, 1),
        ],
    },
    TableSpec {
        name: "7_5",
        strands: 3,
        word: &[1, 1, 1, 1, 2, -1, 2, 2],
        crossings: 7,
        det: 17,
        jones: &[
            (2, 1),
            (3, -1),
            (4, 3),
            (5, -3),
            (6, 3),
            (7, -3),
            (8, 2),
            (9, -1),
        ],
    },
    TableSpec {
        name: "7_6",
        strands: 4,
        word: &[1, 1, -2, 1, 3, -2, 3],
        crossings: 7,
        det: 19,
        jones: &[
            (-6, -1),
            (-5, 2),
            (-4, -3),
            (-3, 4),
            (-2, -3),
            (-1, 3),
            (0, -2),
            (1, 1),
        ],
    },
    TableSpec {
        name: "7_7",
        strands: 4,
        word: &[1, -2, 1, -2, 3, -2, 3],
        crossings: 7,
        det: 21,
        jones: &[
            (-4, 1),
            (-3, -2),
            (-2, 3),
            (-1, -4),
            (0, 4),
            (1, -3),
            (2, 3),
            (3, -1),
        ],
    },
];

fn build_table() -> Vec<KnotEntry> {
    let exec = Exec::default();
    let mut entries = Vec::with_capacity(TABLE_SPECS.len());
    for spec in TABLE_SPECS {
        let g = braid_to_grid(spec.strands, spec.word)
            .unwrap_or_else(|e| panic!("table braid for {}: {e}", spec.name));
        assert!(
            g.is_knot(),
            "table braid for {} closes to a link",
            spec.name
        );
        let v = jones_polynomial(&g, DEFAULT_STATE_SUM_CEILING, exec)
            .unwrap_or_else(|e| panic!("table Jones for {}: {e}", spec.name));
        let jones = Laurent::from_terms(spec.jones.iter().copied());
        let rep = if v == jones {
            g
        } else {
            assert_eq!(
                v.mirror(),
                jones,
                "{}: braid closure is neither chirality",
                spec.name
            );
            g.mirror_topological()
        };
        let span = jones.span().unwrap_or(0);
        assert_eq!(span, spec.crossings as i64, "{} Jones span", spec.name);
        assert_eq!(
            jones.eval_int(-1).unsigned_abs(),
            spec.det,
            "{} determinant",
            spec.name
        );
        assert_eq!(jones.eval_int(1), 1, "{} Jones at t=1", spec.name);
        let amphichiral = jones == jones.mirror();
        entries.push(KnotEntry {
            name: spec.name,
            crossings: spec.crossings,
            det: spec.det,
            amphichiral,
            jones,
            rep,
        });
    }
    // The table must separate cleanly: entries pairwise distinct even up to
    // mirroring, and no entry masquerading as a connected sum of others.
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i != j {
                assert_ne!(entries[i].jones, entries[j].jones);
                assert_ne!(entries[i].jones, entries[j].jones.mirror());
            }
        }
    }
    let find = |n: &str| entries.iter().find(|e| e.name == n).unwrap();
    let tre = &find("3_1").jones;
    let tre_m = tre.mirror();
    for (name, fakes) in [
        ("6_1", vec![tre * tre, &tre_m * &tre_m]),
        (
            "7_4",
            vec![tre * &find("4_1").jones, &tre_m * &find("4_1").jones],
        ),
    ] {
        for fake in fakes {
            assert_ne!(
                find(name).jones,
                fake,
                "{name} collides with a connected sum"
            );
            assert_ne!(
                find(name).jones.mirror(),
                fake,
                "{name} collides with a connected sum"
            );
        }
    }
    entries
}

/// The identification table: the unknot and all prime knots with up to seven
/// crossings, with Jones polynomials and grid representatives in the named
/// chirality. Built and self-checked on first use.
pub fn knot_table() -> &'static [KnotEntry] {
    static TABLE: OnceLock<Vec<KnotEntry>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Result of identifying a diagram against the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    /// Display name: the table name, wrapped as `m(...)` for the mirror of a
    /// chiral entry.
    pub name: String,
    pub table_name: &'static str,
    pub mirrored: bool,
}

/// Look up a table entry by display name, e.g. `5_2` or `m(5_2)`.
pub fn entry_for_name(name: &str) -> Result<(&'static KnotEntry, bool)> {
    let (base, mirrored) = match name.strip_prefix("m(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => (inner, true),
        None => (name, false),
    };
    let entry = knot_table()
        .iter()
        .find(|e| e.name == base)
        .ok_or_else(|| Error::UnknownKnot {
            name: name.to_string(),
        })?;
    if mirrored && entry.amphichiral {
        return Err(Error::UnknownKnot {
            name: name.to_string(),
        });
    }
    Ok((entry, mirrored))
}

/// A grid diagram of the knot the display name denotes.
pub fn rep_for_name(name: &str) -> Result<GridDiagram> {
    let (entry, mirrored) = entry_for_name(name)?;
    Ok(if mirrored {
        entry.rep.mirror_topological()
    } else {
        entry.rep.clone()
    })
}

/// Identify the knot type of a diagram by its Jones polynomial, if it is a
/// knot the table covers. `Ok(None)` means "not recognized", never
/// "provably different from every table entry". Grids of size up to seven
/// can only carry knots the table covers, so `None` there never occurs.
pub fn identify(g: &GridDiagram, ceiling: usize, exec: Exec) -> Result<Option<Identification>> {
    if !g.is_knot() {
        return Ok(None);
    }
    let v = jones_polynomial(g, ceiling, exec)?;
    for e in knot_table() {
        if v == e.jones {
            return Ok(Some(Identification {
                name: e.name.to_string(),
                table_name: e.name,
                mirrored: false,
            }));
        }
        if !e.amphichiral && v == e.jones.mirror() {
            return Ok(Some(Identification {
                name: format!("m({})", e.name),
                table_name: e.name,
                mirrored: true,
            }));
        }
    }
    Ok(None)
}

/// Write the identification table in the tab-separated text format:
/// `name<TAB>exp:coeff pairs<TAB>det`, one knot per line.
pub fn write_table_tsv() -> String {
    let mut out = String::new();
    for e in knot_table() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            e.name,
            e.jones.to_pairs_string(),
            e.det
        ));
    }
    out
}

/// Parse the table format written by `write_table_tsv`.
pub fn parse_table_tsv(text: &str) -> Result<Vec<(String, Laurent, u64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let err = |msg: &str| Error::Parse {
            line: i + 1,
            msg: msg.into(),
        };
        let name = parts.next().ok_or_else(|| err("missing name"))?.to_string();
        let jones = Laurent::from_pairs_str(parts.next().ok_or_else(|| err("missing polynomial"))?)
            .map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                other => other,
            })?;
        let det: u64 = parts
            .next()
            .ok_or_else(|| err("missing determinant"))?
            .trim()
            .parse()
            .map_err(|_| err("bad determinant"))?;
        if parts.next().is_some() {
            return Err(err("trailing fields"));
        }
        out.push((name, jones, det));
    }
    Ok(out)
}
