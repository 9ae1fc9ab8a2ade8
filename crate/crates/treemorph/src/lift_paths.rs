//! Morphing a planar drawing to the canonical 3D drawing by lifting one
//! root-to-leaf path at a time. Each lift raises the path to the safe
//! z-layer above everything else, reassembles it there into its canonical
//! shape, and lowers it onto the already-lifted subtree of the path's
//! parent vertex.

use crate::canonical::{canonical_drawing, shrunken_layout, CanonicalLayout, ShrunkenLayout};
use crate::decomp::{heavy_decomposition, long_path_decomposition, HeavyDecomposition};
use crate::model::{primitive_dir, GridDrawing, GridPoint, ModelError, RootedTree, VertexId};
use crate::morph::{stretch, MorphStep, MorphTrace, StepKind};

/// Shared working state for the lifting procedures: the current drawing
/// plus, for every vertex, the set of children whose whole subtrees have
/// already been lifted and sit in canonical position relative to it.
pub struct LiftState {
    pub tree: RootedTree,
    pub heavy: HeavyDecomposition,
    pub canon: CanonicalLayout,
    pub s1: i64,
    pub pos: GridDrawing,
    pub lifted_children: Vec<Vec<VertexId>>,
    pub steps: Vec<MorphStep>,
}

impl LiftState {
    /// Validate the input drawing and perform the initial stretch.
    pub fn new(tree: &RootedTree, drawing: &GridDrawing, s1: i64) -> Result<Self, ModelError> {
        if drawing.n() != tree.n {
            return Err(ModelError::SizeMismatch {
                got: drawing.n(),
                want: tree.n,
            });
        }
        if let Some(v) = (0..tree.n).find(|&v| drawing.pos[v].z != 0) {
            return Err(ModelError::NotPlanar(v));
        }
        if let Some(v) = crate::verify::check_drawing(tree, drawing).into_iter().next() {
            return Err(ModelError::InputCrossing(v.edge_a, v.edge_b));
        }
        let heavy = heavy_decomposition(tree);
        let canon = canonical_drawing(tree, &heavy);
        let first = stretch(drawing, s1).expect("stretch factor >= 1");
        let pos = first.to.clone();
        let mut steps = Vec::new();
        if !first.is_identity() {
            steps.push(first);
        }
        Ok(LiftState {
            tree: tree.clone(),
            heavy,
            canon,
            s1,
            pos,
            lifted_children: vec![Vec::new(); tree.n],
            steps,
        })
    }

    /// The lifted subtree of `u`: `u` itself plus the complete subtrees of
    /// its already-lifted children.
    pub fn stick(&self, u: VertexId) -> Vec<VertexId> {
        let mut out = vec![u];
        for &c in &self.lifted_children[u] {
            out.extend(self.tree.subtree(c));
        }
        out
    }

    /// Emit one linear step moving `targets`; identity steps are dropped.
    pub fn emit(&mut self, kind: StepKind, targets: Vec<(VertexId, GridPoint)>) {
        let mut to = self.pos.clone();
        for (v, p) in targets {
            to.pos[v] = p;
        }
        let step = MorphStep::new(kind, self.pos.clone(), to);
        if !step.is_identity() {
            self.pos = step.to.clone();
            self.steps.push(step);
        }
    }

    pub fn into_trace(self, initial: GridDrawing) -> MorphTrace {
        MorphTrace {
            tree: self.tree.clone(),
            initial,
            steps: self.steps,
        }
    }
}

/// Is the direction from `a` to `b` exactly +x?
fn is_plus_x(a: GridPoint, b: GridPoint) -> bool {
    b.y == a.y && b.x > a.x
}

/// Lift the path `chain` = (v_1, ..., v_m); its parent v_0 (None for the
/// root path) already carries the lifted subtrees of the paths processed
/// earlier inside T(v_1)'s siblings.
pub fn lift_path(st: &mut LiftState, chain: &[VertexId]) {
    let m = chain.len();
    let v0 = st.tree.parent[chain[0]];
    let n = st.tree.n as i64;

    let shr: Vec<ShrunkenLayout> = chain
        .iter()
        .map(|&u| shrunken_layout(&st.tree, &st.canon, u, &st.lifted_children[u]))
        .collect();
    let sticks: Vec<Vec<VertexId>> = chain.iter().map(|&u| st.stick(u)).collect();
    let all_processing: Vec<VertexId> = sticks.iter().flatten().copied().collect();

    // Step 1: shrink every T'(v_j) onto its surviving children's slots
    let mut targets = Vec::new();
    for (i, &u) in chain.iter().enumerate() {
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[u].add(shr[i].offset[w].unwrap())));
        }
    }
    st.emit(StepKind::Shrink, targets);

    // Step 2: any subtree whose outgoing path edge points exactly in +x
    // would collide with it later; rotate those through +y onto the -x side
    let mut flip = vec![false; m];
    let mut v0_flip = false;
    let mut flippers: Vec<VertexId> = Vec::new();
    if let Some(p) = v0 {
        if is_plus_x(st.pos.pos[p], st.pos.pos[chain[0]]) && st.stick(p).len() > 1 {
            v0_flip = true;
            flippers.push(p);
        }
    }
    for i in 0..m.saturating_sub(1) {
        if is_plus_x(st.pos.pos[chain[i]], st.pos.pos[chain[i + 1]]) && sticks[i].len() > 1 {
            flip[i] = true;
            flippers.push(chain[i]);
        }
    }
    for dst in [|o: GridPoint| GridPoint::new(0, o.x, o.z), |o: GridPoint| {
        GridPoint::new(-o.y, 0, o.z)
    }] {
        let mut targets = Vec::new();
        for &u in &flippers {
            let base = st.pos.pos[u];
            for w in st.stick(u) {
                if w != u {
                    targets.push((w, base.add(dst(st.pos.pos[w].sub(base)))));
                }
            }
        }
        st.emit(StepKind::Rotate, targets);
    }

    // Step 3: go up; v_1 to the clear layer z = n, each next path vertex
    // stacked above the compacted subtree of the previous one
    let mut zt = vec![0i64; m];
    zt[0] = n;
    for i in 1..m {
        zt[i] = zt[i - 1] + shr[i - 1].height;
    }
    let mut targets = Vec::new();
    for (i, &_u) in chain.iter().enumerate() {
        for &w in &sticks[i] {
            let p = st.pos.pos[w];
            targets.push((w, GridPoint::new(p.x, p.y, p.z + zt[i])));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 4: rotate subtrees flat, away from the outgoing path edge
    let mut sy = vec![1i64; m];
    for i in 0..m {
        if i + 1 < m {
            let dy = st.pos.pos[chain[i + 1]].y - st.pos.pos[chain[i]].y;
            sy[i] = if dy > 0 { -1 } else { 1 };
        }
    }
    let mut targets = Vec::new();
    for (i, &u) in chain.iter().enumerate() {
        let base = st.pos.pos[u];
        for &w in &sticks[i] {
            if w != u {
                let o = st.pos.pos[w].sub(base);
                targets.push((w, base.add(GridPoint::new(o.x, sy[i] * o.z, 0))));
            }
        }
    }
    st.emit(StepKind::HRotate, targets);

    // Step 5: align horizontally with the canonical x-offsets from v_1
    let mut targets = Vec::new();
    for i in 1..m {
        let want = GridPoint::new(
            st.pos.pos[chain[0]].x + st.canon.offset(chain[i], chain[0]).x,
            st.pos.pos[chain[0]].y,
            0,
        );
        let d = GridPoint::new(
            want.x - st.pos.pos[chain[i]].x,
            want.y - st.pos.pos[chain[i]].y,
            0,
        );
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[w].add(d)));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 6: align vertically with the canonical z-offsets from v_1
    let mut targets = Vec::new();
    for i in 1..m {
        let dz = n + st.canon.offset(chain[i], chain[0]).z - st.pos.pos[chain[i]].z;
        for &w in &sticks[i] {
            targets.push((w, st.pos.pos[w].add(GridPoint::new(0, 0, dz))));
        }
    }
    st.emit(StepKind::Translate, targets);

    // Step 7: two pinwheel quarter-turns reflect the flipped subtrees back
    // to positive x within their horizontal planes
    for _ in 0..2 {
        let mut targets = Vec::new();
        for i in 0..m {
            if !flip[i] {
                continue;
            }
            let base = st.pos.pos[chain[i]];
            for &w in &sticks[i] {
                if w != chain[i] {
                    let o = st.pos.pos[w].sub(base);
                    targets.push((w, base.add(GridPoint::new(-o.y, o.x, o.z))));
                }
            }
        }
        st.emit(StepKind::Pinwheel, targets);
    }
    for i in 0..m {
        if flip[i] {
            sy[i] = -sy[i];
        }
    }

    // Step 8: unshrink within the horizontal planes
    let mut targets = Vec::new();
    for (i, &u) in chain.iter().enumerate() {
        let base = st.pos.pos[u];
        for &w in &sticks[i] {
            if w != u {
                let co = st.canon.offset(w, u);
                targets.push((w, base.add(GridPoint::new(co.x, sy[i] * co.z, 0))));
            }
        }
    }
    st.emit(StepKind::Shrink, targets);

    // Step 9: rotate every subtree back to vertical
    let mut targets = Vec::new();
    for (i, &u) in chain.iter().enumerate() {
        let base = st.pos.pos[u];
        for &w in &sticks[i] {
            if w != u {
                let co = st.canon.offset(w, u);
                targets.push((w, base.add(GridPoint::new(co.x, 0, co.z))));
            }
        }
    }
    st.emit(StepKind::HRotate, targets);

    if let Some(p) = v0 {
        let delta_x = st.canon.offset(chain[0], p).x; // 0 or 1

        // Step 10: move horizontally toward v_0 along the edge direction,
        // onto v_0's column for a canonically vertical edge and one lattice
        // point short of it otherwise
        let dir = st.pos.pos[p].sub(st.pos.pos[chain[0]]);
        let g = primitive_dir(dir.x, dir.y);
        let want = if delta_x == 0 {
            (st.pos.pos[p].x, st.pos.pos[p].y)
        } else {
            (st.pos.pos[p].x - g.0, st.pos.pos[p].y - g.1)
        };
        let d = GridPoint::new(
            want.0 - st.pos.pos[chain[0]].x,
            want.1 - st.pos.pos[chain[0]].y,
            0,
        );
        let targets = all_processing
            .iter()
            .map(|&w| (w, st.pos.pos[w].add(d)))
            .collect();
        st.emit(StepKind::Translate, targets);

        // Step 11
        if v0_flip {
            // the parent subtree was rotated to -x; swing it to +y so the
            // incoming edge can take its place
            let base = st.pos.pos[p];
            let mut targets = Vec::new();
            for w in st.stick(p) {
                if w != p {
                    let o = st.pos.pos[w].sub(base);
                    targets.push((w, base.add(GridPoint::new(0, -o.x, o.z))));
                }
            }
            st.emit(StepKind::Rotate, targets);
        } else if delta_x == 1 {
            // side-step to the lattice neighbor of v_0 with the smaller
            // turn: (v_0x, v_0y +- 1), ties toward +y
            let dy = st.pos.pos[chain[0]].y - st.pos.pos[p].y;
            let s = if dy < 0 { -1 } else { 1 };
            let want = GridPoint::new(st.pos.pos[p].x, st.pos.pos[p].y + s, 0);
            let d = GridPoint::new(
                want.x - st.pos.pos[chain[0]].x,
                want.y - st.pos.pos[chain[0]].y,
                0,
            );
            let targets = all_processing
                .iter()
                .map(|&w| (w, st.pos.pos[w].add(d)))
                .collect();
            st.emit(StepKind::Translate, targets);
        }

        // Step 12: go down so v_1 reaches its canonical height above v_0
        let dz = st.canon.offset(chain[0], p).z - st.pos.pos[chain[0]].z;
        let targets = all_processing
            .iter()
            .map(|&w| (w, st.pos.pos[w].add(GridPoint::new(0, 0, dz))))
            .collect();
        st.emit(StepKind::Translate, targets);

        // Step 13
        if v0_flip {
            // swing the parent subtree from +y back to its canonical +x
            let base = st.pos.pos[p];
            let mut targets = Vec::new();
            for w in st.stick(p) {
                if w != p {
                    let o = st.pos.pos[w].sub(base);
                    targets.push((w, base.add(GridPoint::new(o.y, 0, o.z))));
                }
            }
            st.emit(StepKind::Rotate, targets);
        } else {
            let want = GridPoint::new(st.pos.pos[p].x + delta_x, st.pos.pos[p].y, 0);
            let d = GridPoint::new(
                want.x - st.pos.pos[chain[0]].x,
                want.y - st.pos.pos[chain[0]].y,
                0,
            );
            let targets = all_processing
                .iter()
                .map(|&w| (w, st.pos.pos[w].add(d)))
                .collect();
            st.emit(StepKind::Translate, targets);
        }
    } else {
        // root path: just go down to the ground plane
        let targets = all_processing
            .iter()
            .map(|&w| (w, st.pos.pos[w].add(GridPoint::new(0, 0, -n))))
            .collect();
        st.emit(StepKind::Translate, targets);
    }

    // bookkeeping: the whole path is now lifted
    for i in 0..m - 1 {
        st.lifted_children[chain[i]].push(chain[i + 1]);
    }
    if let Some(p) = v0 {
        st.lifted_children[p].push(chain[0]);
    }

    // invariant: T(v_1) sits in canonical position relative to v_1
    debug_assert!(st
        .tree
        .subtree(chain[0])
        .iter()
        .all(|&w| st.pos.pos[w].sub(st.pos.pos[chain[0]]) == st.canon.offset(w, chain[0])));
}

/// Stretch factor for the per-path algorithm.
pub fn s1_paths(tree: &RootedTree, drawing: &GridDrawing) -> i64 {
    let heavy = heavy_decomposition(tree);
    2 * (heavy.width(tree) as i64 + drawing.diameter_ceil())
}

/// Morph `drawing` to the canonical drawing translated to the stretched
/// root position, lifting long-decomposition paths shortest first.
pub fn morph_to_canonical_alg1(
    tree: &RootedTree,
    drawing: &GridDrawing,
) -> Result<MorphTrace, ModelError> {
    let mut st = LiftState::new(tree, drawing, s1_paths(tree, drawing))?;
    for path in long_path_decomposition(tree).paths {
        lift_path(&mut st, &path.vertices);
    }
    Ok(st.into_trace(drawing.clone()))
}

/// Morph between two planar drawings: forward to canonical, an aligning
/// translation if the two canonical anchors differ, then the reverse of
/// the second drawing's morph.
pub fn morph_between(
    tree: &RootedTree,
    from: &GridDrawing,
    to: &GridDrawing,
    to_canonical: impl Fn(&RootedTree, &GridDrawing) -> Result<MorphTrace, ModelError>,
) -> Result<MorphTrace, ModelError> {
    let mut fwd = to_canonical(tree, from)?;
    let back = to_canonical(tree, to)?.reversed();
    let shift = back.initial.pos[tree.root].sub(fwd.final_drawing().pos[tree.root]);
    if shift != GridPoint::new(0, 0, 0) {
        let step = crate::morph::translate_step(
            fwd.final_drawing(),
            &(0..tree.n).collect::<Vec<_>>(),
            shift,
        );
        fwd.steps.push(step);
    }
    fwd.extend(back);
    Ok(fwd)
}

/// Step bound for the per-path algorithm: 15 per path plus the stretch.
pub fn step_bound_alg1(tree: &RootedTree) -> usize {
    15 * long_path_decomposition(tree).paths.len() + 1
}

/// Grid bound for the per-path algorithm: the stretched bounding box of
/// the input inflated horizontally by 2*rpw plus n (a subtree of height up
/// to n lies flat in the plane mid-lift), z in [0, 2n]. Same asymptotics
/// as the stretched box itself since n never exceeds its area.
pub fn grid_bound_alg1(
    tree: &RootedTree,
    drawing: &GridDrawing,
    s1: i64,
) -> (GridPoint, GridPoint) {
    let heavy = heavy_decomposition(tree);
    let w = 2 * heavy.width(tree) as i64 + tree.n as i64;
    let (lo, hi) = drawing.bounding_box();
    (
        GridPoint::new(lo.x * s1 - w, lo.y * s1 - w, 0),
        GridPoint::new(hi.x * s1 + w, hi.y * s1 + w, 2 * tree.n as i64),
    )
}
