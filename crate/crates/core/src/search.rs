//! Enumeration of grid diagrams and searches in the move graph: isotopy
//! connection, clustering of diagrams into move-equivalence classes, and
//! detection of diagrams stuck above their knot's arc index.
//!
//! Vertices throughout are oriented canonical keys, so torus translations
//! are quotiented away and never enqueued.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::{CanonicalKey, GridDiagram, KeyMode, TranslateDir};
use crate::knot_id::{identify, DEFAULT_STATE_SUM_CEILING};
use crate::moves::{Move, MoveMode};
use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Instant;

/// Budget for graph searches. Whichever bound is hit first stops the search.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Cap on distinct canonical keys stored.
    pub max_visited: usize,
    /// Wall-clock cap in milliseconds.
    pub max_millis: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_visited: 1 << 20,
            max_millis: 60_000,
        }
    }
}

/// Result of a connection search between two diagrams.
#[derive(Clone, Debug)]
pub enum ConnectOutcome {
    /// A move path: applying it to `a.canonical_form()` with `apply_path`
    /// yields exactly `b.canonical_form()`. Explicit translations are
    /// interleaved so the replay needs no re-canonicalization.
    Connected(Vec<Move>),
    /// The whole move-graph slice within the size cap was explored without
    /// meeting; the diagrams are not connected *within that slice*, which
    /// proves nothing about larger grids.
    Exhausted { visited: usize },
    /// A search budget ran out first; no conclusion at all.
    OutOfBudget { visited: usize },
}

impl ConnectOutcome {
    pub fn is_connected(&self) -> bool {
        matches!(self, ConnectOutcome::Connected(_))
    }
}

fn key_of(g: &GridDiagram) -> CanonicalKey {
    g.canonical_key(KeyMode::Oriented)
}

/// Check the invariants the mode preserves, so hopeless searches fail fast.
fn invariant_mismatch(a: &GridDiagram, b: &GridDiagram, mode: MoveMode) -> Result<Option<String>> {
    if a.components() != b.components() {
        return Ok(Some(format!(
            "component counts differ: {} vs {}",
            a.components(),
            b.components()
        )));
    }
    if a.components() > 1 || mode == MoveMode::Topological {
        return Ok(None);
    }
    let ia = a.classical_invariants()?;
    let ib = b.classical_invariants()?;
    match mode {
        MoveMode::Legendrian if (ia.tb, ia.r) != (ib.tb, ib.r) => Ok(Some(format!(
            "(tb, r) differ: ({}, {}) vs ({}, {})",
            ia.tb, ia.r, ib.tb, ib.r
        ))),
        MoveMode::Transverse if ia.sl != ib.sl => {
            Ok(Some(format!("sl differ: {} vs {}", ia.sl, ib.sl)))
        }
        _ => Ok(None),
    }
}

/// Neighbor expansion: moves from the canonical representative, skipping
/// translations (orbit-internal) and tagging each neighbor's canonical key.
fn neighbors(key: &CanonicalKey, mode: MoveMode, max_size: usize) -> Vec<(Move, CanonicalKey)> {
    let g = key.to_diagram();
    let mut out = Vec::new();
    for mv in g.legal_moves(mode, max_size) {
        if matches!(mv, Move::Translate(_)) {
            continue;
        }
        let h = g
            .apply_move(mv)
            .expect("legal_moves only yields applicable moves");
        out.push((mv, key_of(&h)));
    }
    out
}

/// The move taking `child`'s representative into `parent`'s orbit. Exists
/// for every edge the searches create: commutations invert at the matching
/// index and stabilizations pair with destabilizations within each mode.
fn inverse_edge(
    child: &CanonicalKey,
    parent: &CanonicalKey,
    mode: MoveMode,
    max_size: usize,
) -> Move {
    neighbors(child, mode, max_size)
        .into_iter()
        .find(|(_, k)| k == parent)
        .map(|(mv, _)| mv)
        .expect("move-graph edges are reversible")
}

fn find_translation(from: &GridDiagram, to: &GridDiagram) -> (usize, usize) {
    let n = from.size();
    for dc in 0..n {
        for dr in 0..n {
            if from.translate_by(dc, dr) == *to {
                return (dc, dr);
            }
        }
    }
    unreachable!("diagrams in the same orbit differ by a translation")
}

type Parents = HashMap<CanonicalKey, Option<(CanonicalKey, Move)>>;

fn trace(parents: &Parents, from: &CanonicalKey) -> Vec<(CanonicalKey, Move, CanonicalKey)> {
    let mut edges = Vec::new();
    let mut cur = from.clone();
    while let Some((parent, mv)) = parents[&cur].clone() {
        edges.push((parent.clone(), mv, cur));
        cur = parent;
    }
    edges.reverse();
    edges
}

/// Search for a move path between `a` and `b` inside the mode's move graph,
/// restricted to grids of size at most `max_size` (widened to the endpoint
/// sizes if those are larger). Bidirectional breadth-first search.
pub fn connect(
    a: &GridDiagram,
    b: &GridDiagram,
    mode: MoveMode,
    max_size: usize,
    limits: SearchLimits,
) -> Result<ConnectOutcome> {
    if let Some(detail) = invariant_mismatch(a, b, mode)? {
        return Err(Error::InvariantMismatch { detail });
    }
    let max_size = max_size.max(a.size()).max(b.size());
    let (ka, kb) = (key_of(a), key_of(b));
    if ka == kb {
        return Ok(ConnectOutcome::Connected(Vec::new()));
    }
    let start = Instant::now();
    let mut fwd: Parents = HashMap::from([(ka.clone(), None)]);
    let mut bwd: Parents = HashMap::from([(kb.clone(), None)]);
    let mut frontier_f = vec![ka.clone()];
    let mut frontier_b = vec![kb.clone()];
    let mut meet: Option<CanonicalKey> = None;

    'search: while !frontier_f.is_empty() && !frontier_b.is_empty() {
        // Expand the smaller frontier; swap so it is always the forward one.
        let forward = frontier_f.len() <= frontier_b.len();
        let (frontier, mine, other) = if forward {
            (&mut frontier_f, &mut fwd, &bwd)
        } else {
            (&mut frontier_b, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        for key in frontier.drain(..) {
            for (mv, nk) in neighbors(&key, mode, max_size) {
                if mine.contains_key(&nk) {
                    continue;
                }
                mine.insert(nk.clone(), Some((key.clone(), mv)));
                if other.contains_key(&nk) {
                    meet = Some(nk);
                    break 'search;
                }
                next.push(nk);
            }
            let visited = mine.len() + other.len();
            if visited >= limits.max_visited
                || start.elapsed().as_millis() as u64 >= limits.max_millis
            {
                return Ok(ConnectOutcome::OutOfBudget { visited });
            }
        }
        *frontier = next;
    }

    let Some(meet) = meet else {
        return Ok(ConnectOutcome::Exhausted {
            visited: fwd.len() + bwd.len(),
        });
    };

    // Forward edges run a -> meet as recorded; backward edges run b -> meet,
    // so each is re-derived in the inverse direction for the meet -> b leg.
    let mut steps: Vec<(Move, CanonicalKey)> = trace(&fwd, &meet)
        .into_iter()
        .map(|(_, mv, child)| (mv, child))
        .collect();
    for (parent, _, child) in trace(&bwd, &meet).into_iter().rev() {
        let mv = inverse_edge(&child, &parent, mode, max_size);
        steps.push((mv, parent));
    }

    // Make the path replayable verbatim: after each move, explicit
    // translations bring the diagram back to canonical form.
    let mut path = Vec::new();
    let mut cur = ka.to_diagram();
    for (mv, target) in steps {
        let moved = cur.apply_move(mv)?;
        let canon = target.to_diagram();
        let (dc, dr) = find_translation(&moved, &canon);
        path.push(mv);
        path.extend(std::iter::repeat_n(
            Move::Translate(TranslateDir::Right),
            dc,
        ));
        path.extend(std::iter::repeat_n(Move::Translate(TranslateDir::Up), dr));
        cur = canon;
    }
    debug_assert_eq!(cur, kb.to_diagram());
    Ok(ConnectOutcome::Connected(path))
}

/// Partition of seed diagrams into move-equivalence groups.
#[derive(Clone, Debug)]
pub struct Clustering {
    /// Groups of seed indices, each sorted, ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
    /// True when every reachable key within the size cap was visited, so the
    /// partition is exact for the slice; false when a budget truncated the
    /// flood and distinct groups might still merge.
    pub exhausted: bool,
    pub visited: usize,
}

/// Multi-source flood over the move graph: seeds whose floods touch are
/// merged. Deterministic breadth-first order.
pub fn cluster(
    seeds: &[GridDiagram],
    mode: MoveMode,
    max_size: usize,
    limits: SearchLimits,
) -> Clustering {
    let max_size = seeds
        .iter()
        .map(GridDiagram::size)
        .max()
        .unwrap_or(2)
        .max(max_size);
    let mut root: Vec<usize> = (0..seeds.len()).collect();
    fn find(root: &mut Vec<usize>, mut i: usize) -> usize {
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    let mut owner: HashMap<CanonicalKey, usize> = HashMap::new();
    let mut queue: VecDeque<CanonicalKey> = VecDeque::new();
    for (i, g) in seeds.iter().enumerate() {
        let key = key_of(g);
        if let Some(&j) = owner.get(&key) {
            let (ri, rj) = (find(&mut root, i), find(&mut root, j));
            let (lo, hi) = (ri.min(rj), ri.max(rj));
            root[hi] = lo;
        } else {
            owner.insert(key.clone(), i);
            queue.push_back(key);
        }
    }
    let start = Instant::now();
    let mut exhausted = true;
    'flood: while let Some(key) = queue.pop_front() {
        let src = owner[&key];
        for (_, nk) in neighbors(&key, mode, max_size) {
            match owner.get(&nk) {
                Some(&other) => {
                    let (a, b) = (find(&mut root, src), find(&mut root, other));
                    let (lo, hi) = (a.min(b), a.max(b));
                    root[hi] = lo;
                }
                None => {
                    owner.insert(nk.clone(), src);
                    queue.push_back(nk);
                }
            }
            if owner.len() >= limits.max_visited
                || start.elapsed().as_millis() as u64 >= limits.max_millis
            {
                exhausted = false;
                break 'flood;
            }
        }
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..seeds.len() {
        by_root.entry(find(&mut root, i)).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort_by_key(|g| g[0]);
    Clustering {
        groups,
        exhausted,
        visited: owner.len(),
    }
}

/// True when `g` is the representative its oriented canonical key selects.
/// Assumes `x_row[0] == 0`; only such diagrams can be canonical.
fn is_orbit_canonical(g: &GridDiagram) -> bool {
    let n = g.size();
    let x = g.x_row();
    let o = g.o_row();
    // Candidates are the translations placing another X marker at (0, 0):
    // columns shift left by c, rows down by x[c].
    'candidates: for c in 1..n {
        let dr = n - x[c];
        for j in 0..2 * n {
            let (arr, mine) = if j < n { (x, x[j]) } else { (o, o[j - n]) };
            let v = (arr[(j + c) % n] + dr) % n;
            match v.cmp(&mine) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => continue 'candidates,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// All diagrams of size `n` up to translation, as canonical representatives
/// in ascending key order. With `prune`, diagrams admitting a
/// destabilization are dropped, leaving one witness per orbit of every
/// link type whose arc index is exactly `n` (plus non-minimal diagrams that
/// only destabilize after commutations, which first occur above size 9).
pub fn enumerate(n: usize, prune: bool, exec: Exec) -> Vec<GridDiagram> {
    if n < 2 {
        return Vec::new();
    }
    // X permutations with x[0] = 0, unranked so work can be chunked.
    let x_count: u64 = (1..n as u64).product();
    let per_rank = |rank: u64| -> Vec<GridDiagram> {
        let mut pool: Vec<usize> = (1..n).collect();
        let mut x = Vec::with_capacity(n);
        x.push(0);
        let mut r = rank;
        while !pool.is_empty() {
            let f: u64 = (1..pool.len() as u64).product(); // (len - 1)!
            let idx = (r / f) as usize;
            r %= f;
            x.push(pool.remove(idx));
        }
        let mut out = Vec::new();
        let mut used = vec![false; n];
        let mut o = Vec::with_capacity(n);
        gen_o(&x, &mut used, &mut o, &mut |o: &[usize]| {
            let g = GridDiagram::from_parts_unchecked(x.clone(), o.to_vec());
            if is_orbit_canonical(&g) && (!prune || g.destabilizations().is_empty()) {
                out.push(g);
            }
        });
        out
    };
    let mut all: Vec<GridDiagram> = run_ranks(x_count, exec, &per_rank);
    all.sort_unstable_by(|a, b| (a.x_row(), a.o_row()).cmp(&(b.x_row(), b.o_row())));
    all
}

fn gen_o(x: &[usize], used: &mut [bool], o: &mut Vec<usize>, sink: &mut impl FnMut(&[usize])) {
    let c = o.len();
    if c == x.len() {
        sink(o);
        return;
    }
    for row in 0..x.len() {
        if !used[row] && row != x[c] {
            used[row] = true;
            o.push(row);
            gen_o(x, used, o, sink);
            o.pop();
            used[row] = false;
        }
    }
}

#[cfg(feature = "parallel")]
fn run_ranks(
    count: u64,
    exec: Exec,
    per_rank: &(dyn Fn(u64) -> Vec<GridDiagram> + Sync),
) -> Vec<GridDiagram> {
    use rayon::prelude::*;
    if exec.is_parallel() {
        (0..count).into_par_iter().flat_map_iter(per_rank).collect()
    } else {
        (0..count).flat_map(per_rank).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_ranks(
    count: u64,
    _exec: Exec,
    per_rank: &(dyn Fn(u64) -> Vec<GridDiagram> + Sync),
) -> Vec<GridDiagram> {
    (0..count).flat_map(per_rank).collect()
}

/// Grids of size `n` carrying a knot of arc index strictly below `n` whose
/// translation + commutation component contains no destabilizable diagram:
/// witnesses that moves other than commutations are needed before a grid
/// can shrink. Empty for all `n <= 6`.
pub fn find_stuck(n: usize, exec: Exec) -> Result<Vec<GridDiagram>> {
    let mut stuck = Vec::new();
    let mut processed: HashSet<CanonicalKey> = HashSet::new();
    for g in enumerate(n, false, exec) {
        if !g.is_knot() {
            continue;
        }
        let key = key_of(&g);
        if processed.contains(&key) {
            continue;
        }
        let Some(id) = identify(&g, DEFAULT_STATE_SUM_CEILING, exec)? else {
            continue;
        };
        let entry = crate::knot_id::entry_for_name(&id.name)?.0;
        let arc_index = if entry.crossings == 0 {
            2
        } else {
            entry.crossings + 2
        };
        if arc_index >= n {
            continue;
        }
        // Flood the commutation-only component, watching for any
        // destabilization opportunity.
        let mut component = vec![key.clone()];
        let mut seen: HashSet<CanonicalKey> = HashSet::from([key]);
        let mut has_destab = false;
        let mut head = 0;
        while head < component.len() {
            let cur = component[head].clone();
            head += 1;
            let d = cur.to_diagram();
            if !d.destabilizations().is_empty() {
                has_destab = true;
                break;
            }
            for mv in d.legal_moves(MoveMode::Topological, n) {
                if let Move::Commute { .. } = mv {
                    let nk = key_of(&d.apply_move(mv)?);
                    if seen.insert(nk.clone()) {
                        component.push(nk);
                    }
                }
            }
        }
        if !has_destab {
            stuck.push(g);
        }
        processed.extend(seen);
    }
    Ok(stuck)
}

/// Shrink a diagram by destabilizing greedily, searching its commutation
/// component for a destabilizable position whenever none is in view. Stops
/// at a diagram whose whole commutation component (up to `max_component`
/// keys per level) admits no destabilization.
pub fn simplify(g: &GridDiagram, max_component: usize) -> Result<GridDiagram> {
    let mut cur = g.clone();
    'shrink: loop {
        if let Some(&(col, row, _)) = cur.destabilizations().first() {
            cur = cur.destabilize(col, row)?.0;
            continue;
        }
        let mut component = vec![key_of(&cur)];
        let mut seen: HashSet<CanonicalKey> = component.iter().cloned().collect();
        let mut head = 0;
        while head < component.len() && seen.len() < max_component {
            let d = component[head].to_diagram();
            head += 1;
            for mv in d.legal_moves(MoveMode::Topological, d.size()) {
                if let Move::Commute { .. } = mv {
                    let h = d.apply_move(mv)?;
                    if let Some(&(col, row, _)) = h.destabilizations().first() {
                        cur = h.destabilize(col, row)?.0;
                        continue 'shrink;
                    }
                    let nk = key_of(&h);
                    if seen.insert(nk.clone()) {
                        component.push(nk);
                    }
                }
            }
        }
        return Ok(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_to_grid;
    use crate::grid::Corner;
    use crate::moves::stab_delta;
    use crate::testutil::{all_diagrams, pos_trefoil5, unknot2};

    #[test]
    fn enumeration_matches_brute_force_orbit_counts() {
        for n in 2..=4 {
            let enumerated = enumerate(n, false, Exec::default());
            // Independent count: brute-force all diagrams, collect orbits.
            let mut orbits: HashSet<CanonicalKey> = HashSet::new();
            for g in all_diagrams(n) {
                orbits.insert(key_of(&g));
            }
            assert_eq!(enumerated.len(), orbits.len(), "n={n}");
            for g in &enumerated {
                // Each emitted diagram is its own canonical representative.
                assert_eq!(g, &g.canonical_form());
            }
            let distinct: HashSet<CanonicalKey> = enumerated.iter().map(key_of).collect();
            assert_eq!(distinct.len(), enumerated.len(), "n={n} duplicates");
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_sorted() {
        let a = enumerate(5, false, Exec::default());
        let b = enumerate(5, false, Exec::Sequential);
        assert_eq!(a, b);
        assert!(a
            .windows(2)
            .all(|w| (w[0].x_row(), w[0].o_row()) < (w[1].x_row(), w[1].o_row())));
    }

    #[test]
    fn pruned_enumeration_keeps_exactly_the_block_free_diagrams() {
        for n in [3, 4] {
            let full = enumerate(n, false, Exec::default());
            let pruned = enumerate(n, true, Exec::default());
            let expect: Vec<_> = full
                .iter()
                .filter(|g| g.destabilizations().is_empty())
                .cloned()
                .collect();
            assert_eq!(pruned, expect);
        }
        // Size 2 has no destabilizations (they need size >= 3).
        assert_eq!(
            enumerate(2, true, Exec::default()).len(),
            enumerate(2, false, Exec::default()).len()
        );
    }

    #[test]
    fn connect_finds_stabilization_roundtrip_paths() {
        let g = pos_trefoil5();
        let up = g.stabilize(2, Corner::NE).unwrap();
        let out = connect(&g, &up, MoveMode::Legendrian, 6, SearchLimits::default()).unwrap();
        let ConnectOutcome::Connected(path) = out else {
            panic!("stabilization should connect: {out:?}")
        };
        let replayed = g.canonical_form().apply_path(&path).unwrap();
        assert_eq!(replayed, up.canonical_form());
    }

    #[test]
    fn connect_rejects_mismatched_invariants() {
        let g = unknot2();
        let s_plus = g.stabilize(0, Corner::NW).unwrap(); // tb drops, r moves
        let err = connect(
            &g,
            &s_plus,
            MoveMode::Legendrian,
            6,
            SearchLimits::default(),
        );
        assert!(matches!(err, Err(Error::InvariantMismatch { .. })));
        // Topologically they do connect.
        let out = connect(
            &g,
            &s_plus,
            MoveMode::Topological,
            5,
            SearchLimits::default(),
        )
        .unwrap();
        assert!(out.is_connected());
    }

    #[test]
    fn connect_replay_crosses_a_commutation() {
        // Two commutation-related diagrams whose path replays exactly.
        let a = GridDiagram::new(vec![1, 0, 3, 4, 2], vec![0, 1, 2, 3, 4]).unwrap();
        let b = a.commute_rows(1).unwrap();
        let out = connect(&a, &b, MoveMode::Legendrian, 5, SearchLimits::default()).unwrap();
        let ConnectOutcome::Connected(path) = out else {
            panic!("expected path")
        };
        assert_eq!(
            a.canonical_form().apply_path(&path).unwrap(),
            b.canonical_form()
        );
    }

    #[test]
    fn connect_undoes_invariant_neutral_double_stabilization() {
        let a = unknot2();
        let b = unknot2().stabilize(0, Corner::NE).unwrap();
        let b = b.stabilize(0, Corner::SW).unwrap(); // size 4, same (tb, r)
        let out = connect(&a, &b, MoveMode::Legendrian, 4, SearchLimits::default()).unwrap();
        assert!(out.is_connected());
    }

    #[test]
    fn stabilization_commutes_with_either_order_for_connect() {
        // S+ then S- lands in the same Legendrian class as S- then S+.
        let g = pos_trefoil5();
        let pm = g
            .stabilize(1, Corner::NW)
            .unwrap()
            .stabilize(3, Corner::SE)
            .unwrap();
        let mp = g
            .stabilize(1, Corner::SE)
            .unwrap()
            .stabilize(3, Corner::NW)
            .unwrap();
        let out = connect(&pm, &mp, MoveMode::Legendrian, 7, SearchLimits::default()).unwrap();
        assert!(out.is_connected(), "{out:?}");
    }

    #[test]
    fn cluster_splits_by_invariants_and_merges_translates() {
        let g = pos_trefoil5();
        let ne = g.stabilize(0, Corner::NE).unwrap();
        let sw = g.stabilize(4, Corner::SW).unwrap();
        let far = g.stabilize(2, Corner::NW).unwrap(); // different (tb, r)
        let seeds = vec![
            ne.clone(),
            sw,
            ne.translate(TranslateDir::Up).translate(TranslateDir::Left),
            far,
        ];
        let out = cluster(&seeds, MoveMode::Legendrian, 6, SearchLimits::default());
        assert!(out.exhausted);
        assert_eq!(out.groups, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn cluster_respects_budgets() {
        let g = pos_trefoil5();
        let seeds = vec![
            g.stabilize(0, Corner::NE).unwrap(),
            g.stabilize(4, Corner::SW).unwrap(),
        ];
        let out = cluster(
            &seeds,
            MoveMode::Legendrian,
            6,
            SearchLimits {
                max_visited: 3,
                max_millis: 60_000,
            },
        );
        assert!(!out.exhausted);
        assert_eq!(out.groups.len(), 2, "truncated flood must not merge");
    }

    #[test]
    fn no_small_diagram_is_stuck() -> Result<()> {
        for n in 3..=5 {
            assert!(find_stuck(n, Exec::default())?.is_empty(), "n={n}");
        }
        Ok(())
    }

    #[test]
    fn simplify_reduces_braid_closures_to_small_grids() {
        // The 10-strand positive trefoil closure shrinks to size 5, the
        // figure-eight closure to size 6 (their arc indices).
        let tre = braid_to_grid(2, &[1, 1, 1]).unwrap();
        assert_eq!(simplify(&tre, 10_000).unwrap().size(), 5);
        let fig8 = braid_to_grid(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(simplify(&fig8, 10_000).unwrap().size(), 6);
        let unknot = braid_to_grid(1, &[]).unwrap();
        assert_eq!(simplify(&unknot, 10_000).unwrap().size(), 2);
    }

    #[test]
    fn simplify_preserves_knot_type_invariants() {
        use crate::knot_id::jones_polynomial;
        let g = braid_to_grid(3, &[1, 1, 1, 2, -1, 2]).unwrap();
        let s = simplify(&g, 10_000).unwrap();
        assert!(s.size() < g.size());
        assert_eq!(
            jones_polynomial(&g, 24, Exec::default()).unwrap(),
            jones_polynomial(&s, 24, Exec::default()).unwrap()
        );
    }

    #[test]
    fn random_stab_destab_pairs_connect() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eaec4);
        let base = enumerate(4, false, Exec::default());
        let knots: Vec<_> = base.into_iter().filter(GridDiagram::is_knot).collect();
        for _ in 0..25 {
            let g = &knots[rng.gen_range(0..knots.len())];
            let col1 = rng.gen_range(0..g.size());
            let pm = g.stabilize(col1, Corner::NW).unwrap();
            let col2 = rng.gen_range(0..pm.size());
            let pm = pm.stabilize(col2, Corner::SE).unwrap();
            let mp = g.stabilize(col1, Corner::SE).unwrap();
            let col3 = rng.gen_range(0..mp.size());
            let mp = mp.stabilize(col3, Corner::NW).unwrap();
            let out = connect(
                &pm,
                &mp,
                MoveMode::Legendrian,
                g.size() + 2,
                SearchLimits::default(),
            )
            .unwrap();
            assert!(out.is_connected(), "S+S- vs S-S+ from {g:?}");
        }
    }

    #[test]
    fn stab_deltas_agree_with_connect_preconditions() {
        // Any two single stabilizations of the same variant on the same
        // diagram share invariants, hence never trip the mismatch check.
        let g = pos_trefoil5();
        for v in [Corner::NE, Corner::SW, Corner::SE, Corner::NW] {
            let a = g.stabilize(0, v).unwrap();
            let b = g.stabilize(3, v).unwrap();
            let ia = a.classical_invariants().unwrap();
            let ib = b.classical_invariants().unwrap();
            assert_eq!((ia.tb, ia.r), (ib.tb, ib.r));
            let d = stab_delta(v);
            let ig = g.classical_invariants().unwrap();
            assert_eq!(ia.tb, ig.tb + d.0);
            assert_eq!(ia.r, ig.r + d.1);
        }
    }
}
