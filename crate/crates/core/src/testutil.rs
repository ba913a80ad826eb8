//! Shared fixtures for the unit-test suites.

use crate::grid::GridDiagram;

/// The minimal grid diagram: a 2x2 unknot with tb = -1, r = 0.
pub fn unknot2() -> GridDiagram {
    GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap()
}

/// 5x5 positive trefoil (all crossings positive, tb = 1, r = 0): the mirror
/// of the left-handed trefoil realized on the O diagonal.
pub fn pos_trefoil5() -> GridDiagram {
    GridDiagram::new(vec![2, 3, 4, 0, 1], vec![0, 1, 2, 3, 4]).unwrap()
}

/// Every valid grid diagram of size `n`, by brute force over marker
/// permutation pairs. Feasible for n <= 5.
pub fn all_diagrams(n: usize) -> Vec<GridDiagram> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let ps = perms(n);
    let mut out = Vec::new();
    for x in &ps {
        for o in &ps {
            if let Ok(g) = GridDiagram::new(x.clone(), o.clone()) {
                out.push(g);
            }
        }
    }
    out
}

/// Every single-component diagram of size `n`.
pub fn all_knots(n: usize) -> Vec<GridDiagram> {
    all_diagrams(n)
        .into_iter()
        .filter(|g| g.is_knot())
        .collect()
}
