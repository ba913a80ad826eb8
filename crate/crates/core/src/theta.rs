//! A transverse non-vanishing certificate read off a grid diagram.
//!
//! Each column's X marker contributes the upper-right lattice corner of its
//! cell; together these n points form a distinguished generator of the fully
//! blocked grid complex. A rectangle in that complex moves two points of a
//! generator sitting at its SW and NE corners to the NW and SE corners, and
//! counts only when its interior avoids every marker and every other
//! generator point. The distinguished generator is always a cycle, because a
//! rectangle leaving it would cover the X cell hugging its own NE corner. So
//! when no empty rectangle *ends* on it either, the generator survives in
//! homology, and that certifies the diagram's positive transverse pushoff is
//! not a stabilization.
//!
//! `true` is a sound certificate; `false` is always inconclusive.

use crate::grid::GridDiagram;

/// Quarter-turn counter-clockwise: cell (c, r) moves to (n-1-r, c).
fn rotate_ccw(g: &GridDiagram) -> GridDiagram {
    let n = g.size();
    let xc = g.x_col();
    let oc = g.o_col();
    let x = (0..n).rev().map(|r| xc[r]).collect();
    let o = (0..n).rev().map(|r| oc[r]).collect();
    GridDiagram::from_parts_unchecked(x, o)
}

/// Quarter-turn clockwise: cell (c, r) moves to (r, n-1-c).
fn rotate_cw(g: &GridDiagram) -> GridDiagram {
    let n = g.size();
    let xc = g.x_col();
    let oc = g.o_col();
    let x = (0..n).map(|r| n - 1 - xc[r]).collect();
    let o = (0..n).map(|r| n - 1 - oc[r]).collect();
    GridDiagram::from_parts_unchecked(x, o)
}

/// Redraws the diagram in the convention where horizontal segments pass over
/// vertical ones: a counter-clockwise quarter turn with the X and O roles
/// interchanged, which leaves the underlying front unchanged.
///
/// The image is meant to be *drawn* under the other crossing convention;
/// feed it through [`theta_convention_inverse`] before handing it to
/// operations that assume vertical segments pass over.
pub fn theta_convention(g: &GridDiagram) -> GridDiagram {
    rotate_ccw(g).reverse()
}

/// Undoes [`theta_convention`]: a clockwise quarter turn with the X and O
/// roles interchanged.
pub fn theta_convention_inverse(g: &GridDiagram) -> GridDiagram {
    rotate_cw(g).reverse()
}

/// True when the distinguished transverse generator is certifiably alive: no
/// empty rectangle on the torus (clear of X markers, O markers, and the
/// other generator points) has two generator points as its NW and SE
/// corners, so the generator appears in no differential and its class
/// cannot die. The diagram's positive transverse pushoff is then not a
/// stabilization. `false` is always inconclusive.
pub fn theta_obstruction(g: &GridDiagram) -> bool {
    let n = g.size();
    let x = g.x_row();
    let o = g.o_row();
    // Upper-right lattice corner of each column's X cell.
    let pts: Vec<(usize, usize)> = (0..n).map(|c| ((c + 1) % n, (x[c] + 1) % n)).collect();
    // v lies in the cyclic half-open interval [lo, lo + span).
    let covers = |v: usize, lo: usize, span: usize| (v + n - lo) % n < span;
    for p in &pts {
        for q in &pts {
            if p == q {
                continue;
            }
            // Columns [p.x, q.x), rows [q.y, p.y): p is NW, q is SE.
            let w = (q.0 + n - p.0) % n;
            let ht = (p.1 + n - q.1) % n;
            let blocked = (0..n)
                .any(|c| covers(c, p.0, w) && (covers(x[c], q.1, ht) || covers(o[c], q.1, ht)));
            if blocked {
                continue;
            }
            let pt_inside = pts.iter().any(|&(a, b)| {
                let da = (a + n - p.0) % n;
                let db = (b + n - q.1) % n;
                da > 0 && da < w && db > 0 && db < ht
            });
            if !pt_inside {
                return false;
            }
        }
    }
    true
}

/// Expected bookkeeping for the two-parameter transverse family: diagram
/// size and self-linking number of the small representative, self-linking
/// number of the large one, and the gap between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySlLedger {
    pub diagram_size: usize,
    pub sl_small: i64,
    pub sl_large: i64,
    pub gap: i64,
}

/// Closed-form expectations for the n-th member of the transverse family.
pub fn family_sl_ledger(n: usize) -> FamilySlLedger {
    let n_i = n as i64;
    FamilySlLedger {
        diagram_size: 3 * n + 7,
        sl_small: 2 * n_i + 1,
        sl_large: 4 * n_i + 1,
        gap: 2 * n_i,
    }
}

/// Two braid-word families whose closures share a knot type and the
/// self-linking number 4n+1, used as probes for transverse non-simplicity.
/// Returns ((strands, word), (strands, word)).
pub fn family_words(n: usize) -> ((usize, Vec<i32>), (usize, Vec<i32>)) {
    let run_up = |w: &mut Vec<i32>| w.extend(1..=(n + 2) as i32);
    let run_down = |w: &mut Vec<i32>| w.extend((1..=n as i32).rev());
    let mut w1 = Vec::new();
    run_up(&mut w1);
    w1.push((n + 2) as i32);
    w1.extend([-((n + 1) as i32); 3]);
    run_down(&mut w1);
    run_up(&mut w1);
    run_down(&mut w1);
    run_up(&mut w1);

    let mut w2 = vec![-2, -2, 1];
    for _ in 0..=n {
        w2.extend([2, 2, 1, 1]);
    }
    w2.push(2);
    ((n + 3, w1), (3, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_to_grid, exponent_sum};
    use crate::grid::{Corner, TranslateDir};
    use crate::testutil::{all_diagrams, pos_trefoil5, unknot2};

    #[test]
    fn tiny_unknot_is_obstructed() {
        assert!(theta_obstruction(&unknot2()));
    }

    #[test]
    fn obstruction_is_translation_invariant() {
        for g in all_diagrams(3) {
            let t = theta_obstruction(&g);
            for dir in [
                TranslateDir::Up,
                TranslateDir::Down,
                TranslateDir::Left,
                TranslateDir::Right,
            ] {
                assert_eq!(theta_obstruction(&g.translate(dir)), t, "{g:?} {dir:?}");
            }
        }
    }

    #[test]
    fn positive_stabilization_kills_the_obstruction() {
        // NW stabilization is the transverse stabilization (sl drops by 2);
        // the stabilized generator always bounds an empty rectangle.
        for g in all_diagrams(3).into_iter().chain(all_diagrams(4)) {
            for col in 0..g.size() {
                let s = g.stabilize(col, Corner::NW).unwrap();
                assert!(!theta_obstruction(&s), "{g:?} col {col}");
            }
        }
    }

    #[test]
    fn maximal_sl_trefoil_is_obstructed() {
        let g = pos_trefoil5();
        assert_eq!(g.classical_invariants().unwrap().sl, 1);
        assert!(theta_obstruction(&g));
    }

    #[test]
    fn convention_transform_round_trips() {
        for g in all_diagrams(3).into_iter().chain(all_diagrams(4)) {
            let h = theta_convention(&g);
            assert_eq!(theta_convention_inverse(&h), g);
            // Four quarter turns compose to the identity, marker swaps and all.
            let four = theta_convention(&theta_convention(&theta_convention(&h)));
            assert_eq!(four, g);
        }
    }

    #[test]
    fn convention_transform_keeps_the_transverse_data() {
        let u = theta_convention(&unknot2());
        assert_eq!(u.size(), 2);
        for g in all_diagrams(4).into_iter().filter(|g| g.is_knot()) {
            let back = theta_convention_inverse(&theta_convention(&g));
            let a = g.classical_invariants().unwrap();
            let b = back.classical_invariants().unwrap();
            assert_eq!(a.sl, b.sl);
        }
    }

    #[test]
    fn family_ledger_matches_the_closed_forms() {
        assert_eq!(
            family_sl_ledger(1),
            FamilySlLedger {
                diagram_size: 10,
                sl_small: 3,
                sl_large: 5,
                gap: 2
            }
        );
        assert_eq!(
            family_sl_ledger(2),
            FamilySlLedger {
                diagram_size: 13,
                sl_small: 5,
                sl_large: 9,
                gap: 4
            }
        );
        for n in 1..=6 {
            let led = family_sl_ledger(n);
            assert_eq!(led.gap, led.sl_large - led.sl_small);
        }
    }

    #[test]
    fn family_words_have_the_advertised_shape() {
        for n in 1..=3 {
            let ((k1, w1), (k2, w2)) = family_words(n);
            assert_eq!(k1, n + 3);
            assert_eq!(k2, 3);
            assert_eq!(w1.len(), 5 * n + 10);
            assert_eq!(exponent_sum(&w1), 5 * n as i64 + 4);
            assert_eq!(exponent_sum(&w2), 4 * n as i64 + 4);
            let g1 = braid_to_grid(k1, &w1).unwrap();
            let g2 = braid_to_grid(k2, &w2).unwrap();
            assert!(g1.is_knot(), "n={n}");
            assert!(g2.is_knot(), "n={n}");
            let sl = 4 * n as i64 + 1;
            assert_eq!(g1.classical_invariants().unwrap().sl, sl);
            assert_eq!(g2.classical_invariants().unwrap().sl, sl);
        }
    }
}
