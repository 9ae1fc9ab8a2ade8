//! Combined strategy: the short subtrees hanging off the long paths are
//! lifted level-by-level as edge sets, then the few remaining long paths
//! are lifted one at a time. Both phases run on the same stretched drawing.

use crate::decomp::tradeoff_partition;
use crate::lift_edges::{lift_edge_set, s1_edges};
use crate::lift_paths::{lift_path, LiftState};
use crate::model::{GridDrawing, GridPoint, ModelError, RootedTree};
use crate::morph::MorphTrace;

/// Morph `drawing` to the canonical drawing translated to the stretched
/// root position using the combined strategy.
pub fn morph_to_canonical_tradeoff(
    tree: &RootedTree,
    drawing: &GridDrawing,
) -> Result<MorphTrace, ModelError> {
    let mut st = LiftState::new(tree, drawing, s1_edges(tree, drawing))?;
    let rpw = st.heavy.width(tree) as i64;
    let d = drawing.diameter_ceil();
    let slide = 4 * rpw * d;
    let part = tradeoff_partition(tree);
    for set in &part.short_sets {
        lift_edge_set(&mut st, set, slide);
    }
    for path in &part.long_paths {
        lift_path(&mut st, &path.vertices);
    }
    Ok(st.into_trace(drawing.clone()))
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

/// Step bound: sqrt(n) edge-set rounds plus at most sqrt(n) long paths,
/// plus the stretch.
pub fn step_bound_tradeoff(tree: &RootedTree) -> usize {
    let k = isqrt(tree.n);
    let log = {
        let d = tree.max_degree().max(1);
        if d <= 1 {
            0
        } else {
            (usize::BITS - (d - 1).leading_zeros()) as usize
        }
    };
    k * (6 + log) + 15 * k + 1
}

/// Grid bound: like the edge-set algorithm horizontally, but the path
/// phase uses the clear layer above the tree, so z goes up to 2n.
pub fn grid_bound_tradeoff(
    tree: &RootedTree,
    drawing: &GridDrawing,
    s1: i64,
) -> (GridPoint, GridPoint) {
    let (lo, hi) = drawing.bounding_box();
    (
        GridPoint::new(lo.x * s1 - s1, lo.y * s1 - s1, 0),
        GridPoint::new(hi.x * s1 + s1, hi.y * s1 + s1, 2 * tree.n as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_drawing;
    use crate::decomp::heavy_decomposition;
    use crate::verify::{check_trace, CheckOptions};

    fn run(tree: &RootedTree, drawing: &GridDrawing) {
        let trace = morph_to_canonical_tradeoff(tree, drawing).unwrap();
        let s1 = s1_edges(tree, drawing);
        let opts = CheckOptions {
            samples: 8,
            bbox: Some(grid_bound_tradeoff(tree, drawing, s1)),
            max_steps: Some(step_bound_tradeoff(tree)),
            ..Default::default()
        };
        let rep = check_trace(tree, &trace, &opts);
        assert!(
            rep.ok,
            "verification failed: steps={} violations={:?}",
            rep.steps,
            &rep.violations[..rep.violations.len().min(5)]
        );
        let heavy = heavy_decomposition(tree);
        let canon = canonical_drawing(tree, &heavy);
        let anchor = drawing.pos[tree.root].scale(s1);
        let fin = trace.final_drawing();
        for v in 0..tree.n {
            assert_eq!(fin.pos[v], canon.pos[v].add(anchor), "vertex {v}");
        }
    }

    #[test]
    fn small_shapes() {
        let t = RootedTree::new(1, 0, &[]).unwrap();
        run(&t, &GridDrawing::new(vec![GridPoint::new(0, 0, 0)]));
        let t = RootedTree::new(9, 0, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)])
            .unwrap();
        run(&t, &crate::io::tidy_layout(&t));
        let t = RootedTree::new(5, 0, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        run(&t, &crate::io::tidy_layout(&t));
        // caterpillar mixing a long spine with short hairs
        let t = RootedTree::new(
            12,
            0,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (6, 10),
                (7, 11),
            ],
        )
        .unwrap();
        run(&t, &crate::io::tidy_layout(&t));
    }

    #[test]
    fn isqrt_values() {
        for (n, want) in [(1, 1), (2, 1), (3, 1), (4, 2), (8, 2), (9, 3), (120, 10), (121, 11)] {
            assert_eq!(isqrt(n), want, "n = {n}");
        }
    }
}
