//! The canonical 3D drawing of a rooted tree: every heavy-path chain is a
//! vertical stick in the XZ quarter-plane x >= 0, z >= 0, the whole tree
//! fits in an rpw x 1 x n box, and each subtree occupies exactly the z-slab
//! of its size. Also the compacted ("shrunken") variants of subtree crops
//! used while subtrees travel during a morph.

use crate::decomp::HeavyDecomposition;
use crate::model::{GridDrawing, GridPoint, RootedTree, VertexId};

/// Positions of the canonical drawing, indexed by vertex. y is always 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLayout {
    pub pos: Vec<GridPoint>,
}

impl CanonicalLayout {
    pub fn drawing(&self) -> GridDrawing {
        GridDrawing::new(self.pos.clone())
    }

    /// Offset of `w` relative to `v`.
    pub fn offset(&self, w: VertexId, v: VertexId) -> GridPoint {
        self.pos[w].sub(self.pos[v])
    }
}

/// Build the canonical drawing: the root sits at the origin; along a heavy
/// chain v_0, v_1, ... the z-coordinate advances by |T(v_i)| - |T(v_{i+1})|,
/// light children sit one column to the right and stack densely in the gap
/// below the next chain vertex (in ascending id order).
pub fn canonical_drawing(tree: &RootedTree, heavy: &HeavyDecomposition) -> CanonicalLayout {
    let mut pos = vec![GridPoint::new(0, 0, 0); tree.n];
    // explicit stack of (chain top, x, z) to keep recursion shallow-proof
    let mut stack = vec![(tree.root, 0i64, 0i64)];
    while let Some((top, x, z0)) = stack.pop() {
        let mut v = top;
        let mut z = z0;
        loop {
            pos[v] = GridPoint::new(x, 0, z);
            let mut light_z = z + 1;
            for &c in &tree.children[v] {
                if heavy.heavy_child[v] == Some(c) {
                    continue;
                }
                stack.push((c, x + 1, light_z));
                light_z += tree.size[c] as i64;
            }
            match heavy.heavy_child[v] {
                Some(h) => {
                    z += (tree.size[v] - tree.size[h]) as i64;
                    v = h;
                }
                None => break,
            }
        }
    }
    CanonicalLayout { pos }
}

/// Crop of the canonical drawing to the subtree of `v`, translated so that
/// `v` sits at the origin. Entries outside the subtree are `None`.
pub fn relative_canonical(
    tree: &RootedTree,
    canon: &CanonicalLayout,
    v: VertexId,
) -> Vec<Option<GridPoint>> {
    let mut out = vec![None; tree.n];
    for w in tree.subtree(v) {
        out[w] = Some(canon.offset(w, v));
    }
    out
}

/// Compacted layout of a partially lifted subtree: `v` plus the full
/// subtrees of the children in `kept`. Children keep their canonical order
/// by z and their x column, but are restacked downward so the whole thing
/// has height exactly 1 + sum of the kept subtree sizes.
#[derive(Debug, Clone)]
pub struct ShrunkenLayout {
    /// offsets relative to `v`, only for vertices of the kept subtrees + v
    pub offset: Vec<Option<GridPoint>>,
    /// total height in grid rows
    pub height: i64,
}

pub fn shrunken_layout(
    tree: &RootedTree,
    canon: &CanonicalLayout,
    v: VertexId,
    kept: &[VertexId],
) -> ShrunkenLayout {
    let mut kept: Vec<VertexId> = kept.to_vec();
    kept.sort_unstable_by_key(|&c| canon.pos[c].z);
    let mut offset = vec![None; tree.n];
    offset[v] = Some(GridPoint::new(0, 0, 0));
    let mut slot = 1i64;
    for &c in &kept {
        debug_assert_eq!(tree.parent[c], Some(v));
        for w in tree.subtree(c) {
            let o = canon.offset(w, v);
            let dz = canon.offset(w, c).z;
            offset[w] = Some(GridPoint::new(o.x, 0, slot + dz));
        }
        slot += tree.size[c] as i64;
    }
    ShrunkenLayout {
        offset,
        height: slot,
    }
}
