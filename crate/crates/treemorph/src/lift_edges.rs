//! Morphing to the canonical drawing by lifting whole edge sets at once:
//! all edges whose top endpoint lies at the same depth rise in one round,
//! deepest level first. Each round costs a constant number of steps plus a
//! logarithmic number of plane merges, so the whole morph is linear in the
//! tree height rather than in the number of paths.

use crate::decomp::depth_edge_sets;
use crate::lift_paths::LiftState;
use crate::model::{primitive_dir, GridDrawing, GridPoint, ModelError, RootedTree, VertexId};
use crate::morph::{MorphTrace, StepKind};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Stretch factor for the edge-set algorithm. Clamped to 1 so a
/// single-vertex tree still gets a valid (identity) stretch.
pub fn s1_edges(tree: &RootedTree, drawing: &GridDrawing) -> i64 {
    let rpw = crate::decomp::heavy_decomposition(tree).width(tree) as i64;
    let d = drawing.diameter_ceil();
    (2 * rpw * d * (4 * d + 1)).max(1)
}

/// Compare directions counterclockwise starting just above the +x axis.
/// Distinct primitive directions never compare equal.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |v: (i64, i64)| -> u8 {
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cr = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        if cr > 0 {
            Ordering::Less
        } else if cr < 0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Index of a lattice point `off` on the ray through `dir` from the pole
/// (xy only); `off` must be an exact multiple of `dir`.
fn ray_index(off: GridPoint, dir: (i64, i64)) -> i64 {
    let den = dir.0 * dir.0 + dir.1 * dir.1;
    let num = off.x * dir.0 + off.y * dir.1;
    debug_assert!(den > 0 && num % den == 0);
    debug_assert_eq!((off.x, off.y), (dir.0 * (num / den), dir.1 * (num / den)));
    num / den
}

/// Lift one depth level: every edge in `set` goes from the plane to its
/// canonical position relative to its top endpoint, simultaneously.
pub fn lift_edge_set(st: &mut LiftState, set: &[(VertexId, VertexId)], slide: i64) {
    if set.is_empty() {
        return;
    }
    // primitive plane direction of each edge, top to bottom endpoint
    let dirs: Vec<(i64, i64)> = set
        .iter()
        .map(|&(p, c)| {
            let d = st.pos.pos[c].sub(st.pos.pos[p]);
            primitive_dir(d.x, d.y)
        })
        .collect();
    let sticks: Vec<Vec<VertexId>> = set.iter().map(|&(_, c)| st.stick(c)).collect();

    // Step 1: slide every bottom endpoint along its edge until it sits
    // `slide` primitive steps away from the top endpoint
    let mut targets = Vec::new();
    for (i, &(p, c)) in set.iter().enumerate() {
        let want = GridPoint::new(
            st.pos.pos[p].x + dirs[i].0 * slide,
            st.pos.pos[p].y + dirs[i].1 * slide,
            0,
        );
        let d = want.sub(st.pos.pos[c]);
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[w].add(d)));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 2: go up to the canonical height above the top endpoint
    let mut targets = Vec::new();
    for (i, &(p, c)) in set.iter().enumerate() {
        let dz = st.canon.offset(c, p).z;
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[w].add(GridPoint::new(0, 0, dz))));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 3: map each lifted subtree from its +x half-plane onto the
    // vertical half-plane pointing away from the top endpoint
    let mut targets = Vec::new();
    for (i, &(_, c)) in set.iter().enumerate() {
        if dirs[i] == (1, 0) {
            continue;
        }
        let base = st.pos.pos[c];
        for &w in &sticks[i] {
            if w != c {
                let o = st.pos.pos[w].sub(base);
                debug_assert_eq!(o.y, 0);
                targets.push((
                    w,
                    base.add(GridPoint::new(o.x * dirs[i].0, o.x * dirs[i].1, o.z)),
                ));
            }
        }
    }
    st.emit(StepKind::MapPole, targets);

    // Step 4: shrink more; the bottom endpoint moves onto the pole of the
    // top endpoint for a canonically vertical edge, one lattice point
    // short of it otherwise
    let mut targets = Vec::new();
    for (i, &(p, c)) in set.iter().enumerate() {
        let delta_x = st.canon.offset(c, p).x; // 0 or 1
        let want = GridPoint::new(
            st.pos.pos[p].x + dirs[i].0 * delta_x,
            st.pos.pos[p].y + dirs[i].1 * delta_x,
            st.pos.pos[c].z,
        );
        let d = want.sub(st.pos.pos[c]);
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[w].add(d)));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 5: collide planes. Around every top endpoint the lifted
    // subtrees occupy distinct vertical half-planes; merge neighbors in
    // angular order pairwise until one plane is left, then rotate it to +x.
    let mut by_top: BTreeMap<VertexId, Vec<(usize, (i64, i64))>> = BTreeMap::new();
    for (i, &(p, _)) in set.iter().enumerate() {
        by_top.entry(p).or_default().push((i, dirs[i]));
    }
    // groups[v] = list of (direction, member edge indices), sorted by angle
    let mut groups: BTreeMap<VertexId, Vec<((i64, i64), Vec<usize>)>> = BTreeMap::new();
    for (&p, list) in &by_top {
        let mut g: Vec<((i64, i64), Vec<usize>)> =
            list.iter().map(|&(i, d)| (d, vec![i])).collect();
        g.sort_by(|a, b| angle_cmp(a.0, b.0));
        groups.insert(p, g);
    }
    loop {
        let mut targets = Vec::new();
        let mut busy = false;
        for (&p, g) in groups.iter_mut() {
            if g.len() <= 1 {
                continue;
            }
            busy = true;
            let base = st.pos.pos[p];
            let mut next = Vec::new();
            let old: Vec<_> = g.drain(..).collect();
            let mut it = old.into_iter();
            while let Some(mut keep) = it.next() {
                if let Some(merge) = it.next() {
                    // map the second plane of the pair onto the first
                    for &i in &merge.1 {
                        for &w in &sticks[i] {
                            let o = st.pos.pos[w].sub(base);
                            let k = ray_index(o, merge.0);
                            targets.push((
                                w,
                                base.add(GridPoint::new(k * keep.0 .0, k * keep.0 .1, o.z)),
                            ));
                        }
                    }
                    keep.1.extend(merge.1);
                }
                next.push(keep);
            }
            *g = next;
        }
        if !busy {
            break;
        }
        st.emit(StepKind::MapPole, targets);
    }
    // final rotation of the single remaining plane per pole to +x
    let mut targets = Vec::new();
    for (&p, g) in &groups {
        let (dir, members) = &g[0];
        if *dir == (1, 0) {
            continue;
        }
        let base = st.pos.pos[p];
        for &i in members {
            for &w in &sticks[i] {
                let o = st.pos.pos[w].sub(base);
                let k = ray_index(o, *dir);
                targets.push((w, base.add(GridPoint::new(k, 0, o.z))));
            }
        }
    }
    st.emit(StepKind::MapPole, targets);

    for &(p, c) in set {
        st.lifted_children[p].push(c);
    }
    if cfg!(debug_assertions) {
        for &(p, c) in set {
            for w in st.tree.subtree(c) {
                debug_assert_eq!(st.pos.pos[w].sub(st.pos.pos[p]), st.canon.offset(w, p));
            }
        }
    }
}

/// Morph `drawing` to the canonical drawing translated to the stretched
/// root position by lifting depth level after depth level.
pub fn morph_to_canonical_alg2(
    tree: &RootedTree,
    drawing: &GridDrawing,
) -> Result<MorphTrace, ModelError> {
    let mut st = LiftState::new(tree, drawing, s1_edges(tree, drawing))?;
    let rpw = st.heavy.width(tree) as i64;
    let d = drawing.diameter_ceil();
    let slide = 4 * rpw * d;
    for set in depth_edge_sets(tree) {
        lift_edge_set(&mut st, &set, slide);
    }
    Ok(st.into_trace(drawing.clone()))
}

fn log2_ceil(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Step bound: one stretch plus 6 + ceil(log2(max degree)) per depth level.
pub fn step_bound_alg2(tree: &RootedTree) -> usize {
    tree.height() * (6 + log2_ceil(tree.max_degree().max(1))) + 1
}

/// Grid bound: the stretched bounding box inflated by the stretch factor
/// horizontally, z in [0, n].
pub fn grid_bound_alg2(
    tree: &RootedTree,
    drawing: &GridDrawing,
    s1: i64,
) -> (GridPoint, GridPoint) {
    let (lo, hi) = drawing.bounding_box();
    (
        GridPoint::new(lo.x * s1 - s1, lo.y * s1 - s1, 0),
        GridPoint::new(hi.x * s1 + s1, hi.y * s1 + s1, tree.n as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_drawing;
    use crate::decomp::heavy_decomposition;
    use crate::verify::{check_trace, CheckOptions};

    fn run(tree: &RootedTree, drawing: &GridDrawing) -> MorphTrace {
        let trace = morph_to_canonical_alg2(tree, drawing).unwrap();
        let s1 = s1_edges(tree, drawing);
        let opts = CheckOptions {
            samples: 8,
            bbox: Some(grid_bound_alg2(tree, drawing, s1)),
            max_steps: Some(step_bound_alg2(tree)),
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
        trace
    }

    #[test]
    fn small_shapes() {
        let t = RootedTree::new(1, 0, &[]).unwrap();
        run(&t, &GridDrawing::new(vec![GridPoint::new(0, 0, 0)]));
        let t = RootedTree::new(5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        run(&t, &crate::io::tidy_layout(&t));
        let t = RootedTree::new(5, 0, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        run(&t, &crate::io::tidy_layout(&t));
        let t = RootedTree::new(7, 0, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        run(&t, &crate::io::tidy_layout(&t));
        let t =
            RootedTree::new(8, 0, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (3, 7)])
                .unwrap();
        run(&t, &crate::io::tidy_layout(&t));
    }

    #[test]
    fn angle_order_is_total_over_distinct_directions() {
        let dirs = [
            (1, 0),
            (2, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        for (i, &a) in dirs.iter().enumerate() {
            for (j, &b) in dirs.iter().enumerate() {
                let c = angle_cmp(a, b);
                assert_eq!(c, i.cmp(&j), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn step_bound_helpers() {
        assert_eq!(log2_ceil(1), 0);
        assert_eq!(log2_ceil(2), 1);
        assert_eq!(log2_ceil(3), 2);
        assert_eq!(log2_ceil(4), 2);
        assert_eq!(log2_ceil(5), 3);
    }
}
