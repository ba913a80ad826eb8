//! Per-knot classification records assembled from enumeration, clustering,
//! and probe searches: Legendrian class tables over the (tb, r) lattice,
//! stabilization-merge relations, mountain ranges, and deterministic JSON /
//! text / SVG output.
//!
//! Everything here is conditional on search budgets: a "peak" is a class no
//! explored stabilization arrow reaches, and two classes are "distinct" only
//! as strongly as the `Distinctness` grade says. Exhaustion flags record
//! whether the underlying floods ran to completion.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::{Corner, GridDiagram, KeyMode};
use crate::knot_id::{entry_for_name, identify, DEFAULT_STATE_SUM_CEILING};
use crate::moves::{Move, MoveMode};
use crate::ruling::{grid_to_front, ruling_polynomial, RulingMode};
use crate::search::{cluster, connect, enumerate, SearchLimits};
use crate::theta::theta_obstruction;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Budgets for atlas assembly: enumeration covers every size up to
/// `max_enum_size`, and all searches (clustering, merge, symmetry, and
/// arrow probes) work in the move-graph slice of diagrams up to `max_size`
/// under the shared `limits`.
#[derive(Clone, Copy, Debug)]
pub struct AtlasBudget {
    pub max_enum_size: usize,
    pub max_size: usize,
    pub limits: SearchLimits,
}

impl Default for AtlasBudget {
    fn default() -> Self {
        AtlasBudget {
            max_enum_size: 6,
            max_size: 8,
            limits: SearchLimits::default(),
        }
    }
}

/// Standing of a candidate identity between two Legendrian classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationStatus {
    /// An explicit move path connects the two diagrams.
    Proven,
    /// A computed invariant differs, so no path can exist.
    False,
    /// No separating invariant, but no path within budget either.
    Conjectured,
}

/// How firmly two unmerged classes at one lattice point are known distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Distinctness {
    /// An invariant separates them.
    Proven,
    /// They merely failed to merge within budget.
    Conjectured,
}

/// One Legendrian class: a representative diagram and its column values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep: GridDiagram,
    pub tb: i64,
    pub r: i64,
    /// Zero-graded ruling polynomial; `-` when r != 0 (grading undefined).
    pub ruling: String,
    /// Ungraded ruling polynomial.
    pub ruling_ungraded: String,
    /// The rectangle scan proved the transverse obstruction class of the
    /// positive pushoff nonzero; false is inconclusive, never a vanishing.
    pub theta: bool,
    /// No stabilization arrow from any listed class lands here.
    pub peak: bool,
    /// L = -L (orientation reversal).
    pub self_reverse: RelationStatus,
    /// L = mu(L) (Legendrian mirror).
    pub self_mu: RelationStatus,
    /// L = -mu(L) (transverse mirror).
    pub self_reverse_mu: RelationStatus,
}

/// Stabilization-merge probes between two classes at one (tb, r) point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MergePair {
    pub tb: i64,
    pub r: i64,
    /// Indices into the record's class list, `a < b`.
    pub a: usize,
    pub b: usize,
    pub distinct: Distinctness,
    /// Do the images merge after one positive stabilization each?
    pub merged_after_splus: RelationStatus,
    /// After one negative stabilization each?
    pub merged_after_sminus: RelationStatus,
}

/// Classification record for one knot type.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub knot: String,
    /// Smallest grid size among the class representatives.
    pub arc_index: usize,
    /// Largest Thurston-Bennequin number among the classes.
    pub max_tb: i64,
    /// Sorted by tb descending, then r ascending, then representative.
    pub classes: Vec<ClassEntry>,
    pub merge_table: Vec<MergePair>,
    /// Some lattice point kept two or more classes after merge probes.
    pub nonsimple_candidate: bool,
    /// Every flood ran to exhaustion, so the table is exact for its slice.
    pub exhausted: bool,
    /// Externally supplied metadata (e.g. HOMFLY-width tb bounds) read from
    /// bundled data files, never computed here.
    pub annotations: BTreeMap<String, String>,
}

/// One occupied (tb, r) lattice point of a mountain range.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RangePoint {
    pub tb: i64,
    pub r: i64,
    /// Indices into the record's class list, ascending.
    pub classes: Vec<usize>,
    /// Every class here is a peak.
    pub peak: bool,
    /// Multi-class point whose classes stayed unmerged after both
    /// single-stabilization probes.
    pub persists: bool,
}

/// A stabilization edge between classes: positive arrows point down-right,
/// from (tb, r) to (tb-1, r+1); negative arrows down-left.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RangeArrow {
    pub from_class: usize,
    pub to_class: usize,
    pub positive: bool,
}

/// The (tb, r) lattice of a knot's classes with stabilization arrows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MountainRange {
    pub knot: String,
    /// Points ordered by tb descending, then r ascending.
    pub points: Vec<RangePoint>,
    pub arrows: Vec<RangeArrow>,
}

/// Bundled tb bounds from HOMFLY width, keyed by knot name. Stored data,
/// never computed.
pub fn mfw_annotation(knot: &str) -> Option<String> {
    static DATA: &str = include_str!("../data/mfw_bounds.tsv");
    DATA.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .find_map(|l| {
            let (name, bound) = l.split_once('\t')?;
            (name == knot).then(|| bound.trim().to_string())
        })
}

/// Census of an exhaustive enumeration: knot name -> grid size -> number of
/// canonical diagrams of that size carrying the knot.
pub fn census(
    max_size: usize,
    prune: bool,
    exec: Exec,
) -> Result<BTreeMap<String, BTreeMap<usize, usize>>> {
    let mut out: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    for n in 2..=max_size {
        for g in knot_diagrams(n, prune, exec)? {
            let Some(id) = identify(&g.0, DEFAULT_STATE_SUM_CEILING, exec)? else {
                continue;
            };
            *out.entry(id.name).or_default().entry(n).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Enumerated knot diagrams of size exactly `n`, each pre-identified.
fn knot_diagrams(n: usize, prune: bool, exec: Exec) -> Result<Vec<(GridDiagram, String)>> {
    let all = enumerate(n, prune, exec);
    let ids = par_identify(&all, exec)?;
    Ok(all
        .into_iter()
        .zip(ids)
        .filter_map(|(g, id)| id.map(|name| (g, name)))
        .collect())
}

/// Identification names for a batch of diagrams; `None` for links and
/// unrecognized knots.
fn par_identify(diagrams: &[GridDiagram], exec: Exec) -> Result<Vec<Option<String>>> {
    let one = |g: &GridDiagram| -> Result<Option<String>> {
        if !g.is_knot() {
            return Ok(None);
        }
        Ok(identify(g, DEFAULT_STATE_SUM_CEILING, Exec::Sequential)?.map(|id| id.name))
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return diagrams.par_iter().map(one).collect();
    }
    let _ = exec;
    diagrams.iter().map(one).collect()
}

fn ruling_strings(g: &GridDiagram, r: i64) -> Result<(String, String)> {
    let front = grid_to_front(g)?;
    let ungraded = ruling_polynomial(&front, RulingMode::Ungraded)?.to_string();
    let zero = if r == 0 {
        ruling_polynomial(&front, RulingMode::ZeroGraded)?.to_string()
    } else {
        "-".to_string()
    };
    Ok((zero, ungraded))
}

/// Invariant bundle used to refute candidate identities cheaply. The theta
/// flag is deliberately absent: false only means the sufficient condition
/// failed on that diagram, so a flag mismatch separates nothing.
struct Profile {
    tb: i64,
    r: i64,
    ruling: String,
    ruling_ungraded: String,
}

impl Profile {
    fn of(g: &GridDiagram) -> Result<Profile> {
        let inv = g.classical_invariants()?;
        let (ruling, ruling_ungraded) = ruling_strings(g, inv.r)?;
        Ok(Profile {
            tb: inv.tb,
            r: inv.r,
            ruling,
            ruling_ungraded,
        })
    }

    fn separates(&self, other: &Profile) -> bool {
        self.tb != other.tb
            || self.r != other.r
            || self.ruling != other.ruling
            || self.ruling_ungraded != other.ruling_ungraded
    }
}

/// Probe whether two diagrams present the same Legendrian class: refute by
/// invariants, prove by a connect path, otherwise leave the question open.
fn relation(
    a: &GridDiagram,
    b: &GridDiagram,
    max_size: usize,
    limits: SearchLimits,
) -> Result<RelationStatus> {
    if Profile::of(a)?.separates(&Profile::of(b)?) {
        return Ok(RelationStatus::False);
    }
    let outcome = connect(a, b, MoveMode::Legendrian, max_size, limits)?;
    Ok(if outcome.is_connected() {
        RelationStatus::Proven
    } else {
        RelationStatus::Conjectured
    })
}

fn stab(g: &GridDiagram, variant: Corner) -> GridDiagram {
    g.apply_move(Move::Stabilize { col: 0, variant })
        .expect("stabilization is always legal")
}

/// Assemble the classification record and mountain range of one knot type.
///
/// Seeds come from exhaustive enumeration of all sizes up to
/// `budget.max_enum_size`, filtered by identification; they are clustered
/// per (tb, r) point in the Legendrian move graph. When `cache` names a
/// directory, each point's partition is read from / written to one file
/// there, keyed by knot, tb, r, and mode.
pub fn assemble_atlas(
    name: &str,
    budget: &AtlasBudget,
    cache: Option<&Path>,
    exec: Exec,
) -> Result<(AtlasRecord, MountainRange)> {
    let (entry, mirrored) = entry_for_name(name)?;
    let display = if mirrored {
        format!("m({})", entry.name)
    } else {
        entry.name.to_string()
    };

    // Gather every enumerated diagram of this knot, grouped by (tb, r).
    let mut by_point: BTreeMap<(i64, i64), Vec<GridDiagram>> = BTreeMap::new();
    for n in 2..=budget.max_enum_size {
        for (g, id_name) in knot_diagrams(n, false, exec)? {
            if id_name == display {
                let inv = g.classical_invariants()?;
                by_point.entry((-inv.tb, inv.r)).or_default().push(g);
            }
        }
    }
    if by_point.is_empty() {
        return Err(Error::UnknownKnot {
            name: format!(
                "{display} (no diagrams up to size {})",
                budget.max_enum_size
            ),
        });
    }

    // Cluster each lattice point into classes.
    let mut classes: Vec<(i64, i64, GridDiagram)> = Vec::new();
    let mut exhausted = true;
    for (&(neg_tb, r), seeds) in &by_point {
        let (groups, point_exhausted) =
            clustered_groups(&display, -neg_tb, r, seeds, budget, cache)?;
        exhausted &= point_exhausted;
        for members in groups {
            let rep = members
                .into_iter()
                .min_by_key(|g| (g.size(), g.canonical_key(KeyMode::Oriented)))
                .expect("cluster groups are nonempty");
            classes.push((-neg_tb, r, rep));
        }
    }
    classes.sort_by(|a, b| {
        (-a.0, a.1, a.2.canonical_key(KeyMode::Oriented)).cmp(&(
            -b.0,
            b.1,
            b.2.canonical_key(KeyMode::Oriented),
        ))
    });

    // Stabilization arrows between adjacent lattice levels; a class is a
    // peak exactly when no arrow lands on it.
    let mut arrows: Vec<RangeArrow> = Vec::new();
    for (upper, &(utb, ur, ref urep)) in classes.iter().enumerate() {
        for (lower, &(ltb, lr, ref lrep)) in classes.iter().enumerate() {
            if ltb != utb - 1 {
                continue;
            }
            let variant = if lr == ur + 1 {
                Corner::NW // positive stabilization
            } else if lr == ur - 1 {
                Corner::SE // negative stabilization
            } else {
                continue;
            };
            let probe = connect(
                &stab(urep, variant),
                lrep,
                MoveMode::Legendrian,
                budget.max_size,
                budget.limits,
            )?;
            if probe.is_connected() {
                arrows.push(RangeArrow {
                    from_class: upper,
                    to_class: lower,
                    positive: variant == Corner::NW,
                });
            }
        }
    }

    // Column values and symmetry statuses per class.
    let mut entries: Vec<ClassEntry> = Vec::with_capacity(classes.len());
    for (i, (tb, r, rep)) in classes.iter().enumerate() {
        let (ruling, ruling_ungraded) = ruling_strings(rep, *r)?;
        entries.push(ClassEntry {
            rep: rep.clone(),
            tb: *tb,
            r: *r,
            ruling,
            ruling_ungraded,
            theta: theta_obstruction(rep),
            peak: !arrows.iter().any(|a| a.to_class == i),
            self_reverse: relation(rep, &rep.reverse(), budget.max_size, budget.limits)?,
            self_mu: relation(rep, &rep.mirror_mu(), budget.max_size, budget.limits)?,
            self_reverse_mu: relation(
                rep,
                &rep.reverse().mirror_mu(),
                budget.max_size,
                budget.limits,
            )?,
        });
    }

    // Merge probes for lattice points holding several classes.
    let mut merge_table: Vec<MergePair> = Vec::new();
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            if (entries[a].tb, entries[a].r) != (entries[b].tb, entries[b].r) {
                continue;
            }
            let (ea, eb) = (&entries[a], &entries[b]);
            // Ruling polynomials are class invariants. The theta flag only
            // proves nonvanishing, so it separates solely against a class
            // that is a positive stabilization (where theta must vanish),
            // witnessed by an incoming positive arrow.
            let splus_reached =
                |i: usize| arrows.iter().any(|arr| arr.to_class == i && arr.positive);
            let distinct = if ea.ruling != eb.ruling
                || ea.ruling_ungraded != eb.ruling_ungraded
                || (ea.theta && splus_reached(b))
                || (eb.theta && splus_reached(a))
            {
                Distinctness::Proven
            } else {
                Distinctness::Conjectured
            };
            let probe = |variant| {
                relation(
                    &stab(&ea.rep, variant),
                    &stab(&eb.rep, variant),
                    budget.max_size,
                    budget.limits,
                )
            };
            merge_table.push(MergePair {
                tb: ea.tb,
                r: ea.r,
                a,
                b,
                distinct,
                merged_after_splus: probe(Corner::NW)?,
                merged_after_sminus: probe(Corner::SE)?,
            });
        }
    }

    let mut annotations = BTreeMap::new();
    if let Some(bound) = mfw_annotation(&display) {
        annotations.insert("mfw_bound".to_string(), bound);
    }
    let record = AtlasRecord {
        knot: display.clone(),
        arc_index: entries.iter().map(|e| e.rep.size()).min().unwrap(),
        max_tb: entries.iter().map(|e| e.tb).max().unwrap(),
        nonsimple_candidate: merge_table.iter().any(|p| {
            p.merged_after_splus != RelationStatus::Proven
                && p.merged_after_sminus != RelationStatus::Proven
        }),
        classes: entries,
        merge_table,
        exhausted,
        annotations,
    };
    let range = range_from_parts(&record, arrows);
    Ok((record, range))
}

fn range_from_parts(record: &AtlasRecord, arrows: Vec<RangeArrow>) -> MountainRange {
    let mut points: Vec<RangePoint> = Vec::new();
    for (i, e) in record.classes.iter().enumerate() {
        match points.last_mut() {
            Some(p) if (p.tb, p.r) == (e.tb, e.r) => p.classes.push(i),
            _ => points.push(RangePoint {
                tb: e.tb,
                r: e.r,
                classes: vec![i],
                peak: true,
                persists: false,
            }),
        }
    }
    for p in &mut points {
        p.peak = p.classes.iter().all(|&i| record.classes[i].peak);
        p.persists = p.classes.len() > 1
            && record.merge_table.iter().any(|m| {
                (m.tb, m.r) == (p.tb, p.r)
                    && m.merged_after_splus != RelationStatus::Proven
                    && m.merged_after_sminus != RelationStatus::Proven
            });
    }
    MountainRange {
        knot: record.knot.clone(),
        points,
        arrows,
    }
}

/// Recompute the mountain range of an assembled (possibly imported) record
/// by re-probing the stabilization arrows.
pub fn mountain_range(record: &AtlasRecord, budget: &AtlasBudget) -> Result<MountainRange> {
    let mut arrows = Vec::new();
    for (upper, u) in record.classes.iter().enumerate() {
        for (lower, l) in record.classes.iter().enumerate() {
            if l.tb != u.tb - 1 {
                continue;
            }
            let variant = if l.r == u.r + 1 {
                Corner::NW
            } else if l.r == u.r - 1 {
                Corner::SE
            } else {
                continue;
            };
            let probe = connect(
                &stab(&u.rep, variant),
                &l.rep,
                MoveMode::Legendrian,
                budget.max_size,
                budget.limits,
            )?;
            if probe.is_connected() {
                arrows.push(RangeArrow {
                    from_class: upper,
                    to_class: lower,
                    positive: variant == Corner::NW,
                });
            }
        }
    }
    Ok(range_from_parts(record, arrows))
}

/// Stable JSON export for a batch of records, sorted by knot name.
pub fn export_atlas(records: &[AtlasRecord]) -> String {
    let mut sorted: Vec<&AtlasRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.knot.clone());
    serde_json::to_string_pretty(&sorted).expect("atlas records are serializable")
}

/// Parse a document produced by `export_atlas`.
pub fn import_atlas(text: &str) -> Result<Vec<AtlasRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })
}

/// Output format for mountain-range renders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Txt,
    Svg,
}

/// Deterministic render: tb runs down the vertical axis, r across the
/// horizontal one; positive arrows point down-right, negative down-left;
/// multi-class points are boxed, one dot per class.
pub fn render_mountain_range(mr: &MountainRange, format: RenderFormat) -> String {
    match format {
        RenderFormat::Txt => render_txt(mr),
        RenderFormat::Svg => render_svg(mr),
    }
}

fn point_token(p: &RangePoint) -> String {
    let dots = "*".repeat(p.classes.len());
    let base = format!("{dots}({},{})", p.tb, p.r);
    let mut token = if p.classes.len() > 1 {
        format!("[{base}]")
    } else {
        base
    };
    if p.persists {
        token.push_str("!persists");
    }
    token
}

fn render_txt(mr: &MountainRange) -> String {
    let mut out = format!("mountain range: {}\n", mr.knot);
    let mut row_tb: Option<i64> = None;
    for p in &mr.points {
        if row_tb != Some(p.tb) {
            if row_tb.is_some() {
                out.push('\n');
            }
            write!(out, "tb={:<4} |", p.tb).unwrap();
            row_tb = Some(p.tb);
        }
        out.push(' ');
        out.push_str(&point_token(p));
    }
    if row_tb.is_some() {
        out.push('\n');
    }
    if !mr.arrows.is_empty() {
        out.push_str("arrows:\n");
        for a in &mr.arrows {
            let from = point_of(mr, a.from_class);
            let to = point_of(mr, a.to_class);
            let sign = if a.positive { "S+" } else { "S-" };
            writeln!(
                out,
                "  {sign} ({},{}) -> ({},{})",
                from.0, from.1, to.0, to.1
            )
            .unwrap();
        }
    }
    out
}

fn point_of(mr: &MountainRange, class: usize) -> (i64, i64) {
    mr.points
        .iter()
        .find(|p| p.classes.contains(&class))
        .map(|p| (p.tb, p.r))
        .expect("every arrow endpoint is a listed class")
}

fn render_svg(mr: &MountainRange) -> String {
    const CELL: i64 = 60;
    const PAD: i64 = 40;
    let tb_max = mr.points.iter().map(|p| p.tb).max().unwrap_or(0);
    let r_min = mr.points.iter().map(|p| p.r).min().unwrap_or(0);
    let r_max = mr.points.iter().map(|p| p.r).max().unwrap_or(0);
    let tb_min = mr.points.iter().map(|p| p.tb).min().unwrap_or(0);
    let x = |r: i64| PAD + (r - r_min) * CELL;
    let y = |tb: i64| PAD + (tb_max - tb) * CELL;
    let width = 2 * PAD + (r_max - r_min) * CELL;
    let height = 2 * PAD + (tb_max - tb_min) * CELL;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<title>mountain range: {}</title>\n",
        mr.knot
    );
    for a in &mr.arrows {
        let (ftb, fr) = point_of(mr, a.from_class);
        let (ttb, tr) = point_of(mr, a.to_class);
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" \
             stroke=\"{}\" stroke-width=\"2\"/>",
            x(fr),
            y(ftb),
            x(tr),
            y(ttb),
            if a.positive { "#b03030" } else { "#3050b0" },
        )
        .unwrap();
    }
    for p in &mr.points {
        let (cx, cy) = (x(p.r), y(p.tb));
        if p.classes.len() > 1 {
            writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"24\" fill=\"none\" \
                 stroke=\"#202020\"{}/>",
                cx - 12 * p.classes.len() as i64,
                cy - 12,
                24 * p.classes.len(),
                if p.persists {
                    " stroke-dasharray=\"4 2\""
                } else {
                    ""
                },
            )
            .unwrap();
        }
        let k = p.classes.len() as i64;
        for (i, _) in p.classes.iter().enumerate() {
            writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{cy}\" r=\"5\" fill=\"#202020\"/>",
                cx + (2 * i as i64 + 1 - k) * 10,
            )
            .unwrap();
        }
        writeln!(
            out,
            "<text x=\"{cx}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">({},{})</text>",
            cy + 26,
            p.tb,
            p.r,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

// ----- class-partition cache -------------------------------------------

fn grid_token(g: &GridDiagram) -> String {
    let csv = |v: &[usize]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{}/{}", csv(g.x_row()), csv(g.o_row()))
}

fn parse_grid_token(s: &str) -> Result<GridDiagram> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let (xs, os) = s
        .split_once('/')
        .ok_or_else(|| bad("expected x/o halves"))?;
    let csv = |part: &str| -> Result<Vec<usize>> {
        part.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|e| bad(&format!("bad row index: {e}")))
            })
            .collect()
    };
    GridDiagram::new(csv(xs)?, csv(os)?)
}

fn cache_file(dir: &Path, knot: &str, tb: i64, r: i64) -> std::path::PathBuf {
    let sanitized: String = knot
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '-'
            }
        })
        .collect();
    dir.join(format!("{sanitized}.tb{tb}.r{r}.leg.classes"))
}

/// Cluster one lattice point's seeds, resuming from the cache file when its
/// stored partition covers exactly the same canonical seed set.
fn clustered_groups(
    knot: &str,
    tb: i64,
    r: i64,
    seeds: &[GridDiagram],
    budget: &AtlasBudget,
    cache: Option<&Path>,
) -> Result<(Vec<Vec<GridDiagram>>, bool)> {
    let path = cache.map(|dir| cache_file(dir, knot, tb, r));
    let seed_keys: std::collections::BTreeSet<_> = seeds
        .iter()
        .map(|g| g.canonical_key(KeyMode::Oriented))
        .collect();
    if let Some(path) = &path {
        if let Ok(text) = fs::read_to_string(path) {
            let mut groups: Vec<Vec<GridDiagram>> = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let members: Result<Vec<GridDiagram>> =
                    line.split_whitespace().map(parse_grid_token).collect();
                groups.push(members?);
            }
            let cached_keys: std::collections::BTreeSet<_> = groups
                .iter()
                .flatten()
                .map(|g| g.canonical_key(KeyMode::Oriented))
                .collect();
            if cached_keys == seed_keys {
                return Ok((groups, true));
            }
        }
    }
    let clustering = cluster(seeds, MoveMode::Legendrian, budget.max_size, budget.limits);
    let groups: Vec<Vec<GridDiagram>> = clustering
        .groups
        .iter()
        .map(|idxs| idxs.iter().map(|&i| seeds[i].canonical_form()).collect())
        .collect();
    if let Some(path) = &path {
        if clustering.exhausted {
            let mut text = String::new();
            for g in &groups {
                let line: Vec<String> = g.iter().map(grid_token).collect();
                writeln!(text, "{}", line.join(" ")).unwrap();
            }
            if let Some(parent) = path.parent() {
                let _ = fs::create_dir_all(parent);
            }
            let _ = fs::write(path, text);
        }
    }
    Ok((groups, clustering.exhausted))
}
