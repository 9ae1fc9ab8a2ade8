//! Core data model: rooted trees, integer grid points, drawings, and the
//! exact metric helpers everything else is built on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("vertex id {0} out of range for n = {1}")]
    VertexOutOfRange(VertexId, usize),
    #[error("edge list does not describe a tree rooted at {0}")]
    NotATree(VertexId),
    #[error("drawing has {got} positions but tree has {want} vertices")]
    SizeMismatch { got: usize, want: usize },
    #[error("vertices {0} and {1} occupy the same grid point")]
    CoincidentVertices(VertexId, VertexId),
    #[error("drawing is not planar (vertex {0} has z != 0)")]
    NotPlanar(VertexId),
    #[error("input drawing has crossing edges ({0:?} and {1:?})")]
    InputCrossing((VertexId, VertexId), (VertexId, VertexId)),
}

/// A tree with a designated root. Vertices are `0..n`; edges are stored as
/// parent pointers plus child lists (children sorted by id).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    pub n: usize,
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub children: Vec<Vec<VertexId>>,
    pub depth: Vec<usize>,
    pub size: Vec<usize>,
}

impl RootedTree {
    pub fn new(
        n: usize,
        root: VertexId,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, ModelError> {
        if root >= n {
            return Err(ModelError::VertexOutOfRange(root, n));
        }
        if edges.len() + 1 != n {
            return Err(ModelError::NotATree(root));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for &(p, c) in edges {
            if p >= n || c >= n {
                return Err(ModelError::VertexOutOfRange(p.max(c), n));
            }
            if c == root || parent[c].is_some() {
                return Err(ModelError::NotATree(root));
            }
            parent[c] = Some(p);
            children[p].push(c);
        }
        for ch in &mut children {
            ch.sort_unstable();
        }
        // connectivity + depths + sizes in one pass
        let mut depth = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        depth[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                order.push(c);
            }
        }
        if order.len() != n {
            return Err(ModelError::NotATree(root));
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        Ok(RootedTree {
            n,
            root,
            parent,
            children,
            depth,
            size,
        })
    }

    /// Vertices of the subtree rooted at `v`, in preorder.
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.size[v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            for &c in self.children[u].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Vertices in preorder from the root.
    pub fn preorder(&self) -> Vec<VertexId> {
        self.subtree(self.root)
    }

    /// All edges as (parent, child) pairs, in preorder of the child.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.preorder()
            .into_iter()
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    /// Maximum vertex degree (counting the parent edge).
    pub fn max_degree(&self) -> usize {
        (0..self.n)
            .map(|v| self.children[v].len() + usize::from(self.parent[v].is_some()))
            .max()
            .unwrap_or(0)
    }

    /// Depth of the tree in edges.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl GridPoint {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        GridPoint { x, y, z }
    }

    pub fn add(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn scale(self, s: i64) -> GridPoint {
        GridPoint::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn dist_sq(self, o: GridPoint) -> i128 {
        let d = self.sub(o);
        let (x, y, z) = (d.x as i128, d.y as i128, d.z as i128);
        x * x + y * y + z * z
    }
}

/// Straight-line drawing of a tree: one grid point per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDrawing {
    pub pos: Vec<GridPoint>,
}

impl GridDrawing {
    pub fn new(pos: Vec<GridPoint>) -> Self {
        GridDrawing { pos }
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn is_planar(&self) -> bool {
        self.pos.iter().all(|p| p.z == 0)
    }

    /// Axis-aligned bounding box as (min, max) corners.
    pub fn bounding_box(&self) -> (GridPoint, GridPoint) {
        let mut lo = GridPoint::new(i64::MAX, i64::MAX, i64::MAX);
        let mut hi = GridPoint::new(i64::MIN, i64::MIN, i64::MIN);
        for p in &self.pos {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            lo.z = lo.z.min(p.z);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
            hi.z = hi.z.max(p.z);
        }
        (lo, hi)
    }

    /// Width of the bounding box along x, in grid cells spanned.
    pub fn extent_x(&self) -> i64 {
        let (lo, hi) = self.bounding_box();
        hi.x - lo.x
    }

    pub fn extent_y(&self) -> i64 {
        let (lo, hi) = self.bounding_box();
        hi.y - lo.y
    }

    pub fn extent_z(&self) -> i64 {
        let (lo, hi) = self.bounding_box();
        hi.z - lo.z
    }

    /// Ceiling of the diameter: the smallest integer d with every pairwise
    /// vertex distance <= d. Zero for a single vertex.
    pub fn diameter_ceil(&self) -> i64 {
        let mut max_sq: i128 = 0;
        for i in 0..self.pos.len() {
            for j in (i + 1)..self.pos.len() {
                max_sq = max_sq.max(self.pos[i].dist_sq(self.pos[j]));
            }
        }
        isqrt_ceil(max_sq)
    }

    pub fn translated(&self, v: GridPoint) -> GridDrawing {
        GridDrawing::new(self.pos.iter().map(|p| p.add(v)).collect())
    }

    pub fn scaled(&self, s: i64) -> GridDrawing {
        GridDrawing::new(self.pos.iter().map(|p| p.scale(s)).collect())
    }
}

/// Ceiling of the square root of a non-negative integer.
pub fn isqrt_ceil(v: i128) -> i64 {
    assert!(v >= 0);
    if v == 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r * r >= v {
        r -= 1;
    }
    while r * r < v {
        r += 1;
    }
    r as i64
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt_floor(v: i128) -> i64 {
    assert!(v >= 0);
    let c = isqrt_ceil(v) as i128;
    if c * c == v {
        c as i64
    } else {
        (c - 1) as i64
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(big(v))
}

/// Exact squared distance from point `p` to the segment `[a, b]`.
pub fn point_segment_distance_sq(p: GridPoint, a: GridPoint, b: GridPoint) -> BigRational {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len_sq = rat(ab.x) * rat(ab.x) + rat(ab.y) * rat(ab.y) + rat(ab.z) * rat(ab.z);
    let dot = rat(ab.x) * rat(ap.x) + rat(ab.y) * rat(ap.y) + rat(ab.z) * rat(ap.z);
    let t = if len_sq.is_zero() {
        BigRational::zero()
    } else {
        let t = dot / len_sq;
        t.min(rat(1)).max(rat(0))
    };
    let dx = rat(ap.x) - &t * rat(ab.x);
    let dy = rat(ap.y) - &t * rat(ab.y);
    let dz = rat(ap.z) - &t * rat(ab.z);
    &dx * &dx + &dy * &dy + &dz * &dz
}

/// Exact squared distance between a vertex and an edge of a drawing.
pub fn vertex_edge_distance_sq(
    drawing: &GridDrawing,
    v: VertexId,
    e: (VertexId, VertexId),
) -> BigRational {
    point_segment_distance_sq(drawing.pos[v], drawing.pos[e.0], drawing.pos[e.1])
}

/// Greatest common divisor, non-negative.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Primitive (coprime-component) vector in the direction of `(dx, dy)`.
/// Panics on the zero vector.
pub fn primitive_dir(dx: i64, dy: i64) -> (i64, i64) {
    assert!(dx != 0 || dy != 0, "zero vector has no direction");
    let g = gcd(dx.abs(), dy.abs());
    (dx / g, dy / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> GridPoint {
        GridPoint::new(x, y, z)
    }

    #[test]
    fn tree_construction_and_invariants() {
        // caterpillar: 0-1-2 spine, leaves 3 (on 1) and 4 (on 2)
        let t = RootedTree::new(5, 0, &[(0, 1), (1, 2), (1, 3), (2, 4)]).unwrap();
        assert_eq!(t.size[0], 5);
        assert_eq!(t.size[1], 4);
        assert_eq!(t.size[2], 2);
        assert_eq!(t.depth[4], 3);
        assert_eq!(t.children[1], vec![2, 3]);
        assert_eq!(t.max_degree(), 3);
        assert_eq!(t.height(), 3);
        assert_eq!(t.edges().len(), 4);
    }

    #[test]
    fn tree_rejects_non_trees() {
        assert!(RootedTree::new(3, 0, &[(0, 1)]).is_err());
        assert!(RootedTree::new(3, 0, &[(0, 1), (0, 1)]).is_err());
        assert!(RootedTree::new(3, 0, &[(0, 1), (2, 0)]).is_err());
        assert!(RootedTree::new(2, 5, &[(0, 1)]).is_err());
    }

    #[test]
    fn diameter_examples() {
        let d = GridDrawing::new(vec![pt(0, 0, 0), pt(1, 1, 0)]);
        assert_eq!(d.diameter_ceil(), 2); // ceil(sqrt(2))
        let d = GridDrawing::new(vec![pt(0, 0, 0), pt(3, 4, 0)]);
        assert_eq!(d.diameter_ceil(), 5);
        let d = GridDrawing::new(vec![pt(7, -2, 3)]);
        assert_eq!(d.diameter_ceil(), 0);
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt_ceil(0), 0);
        assert_eq!(isqrt_ceil(1), 1);
        assert_eq!(isqrt_ceil(2), 2);
        assert_eq!(isqrt_ceil(4), 2);
        assert_eq!(isqrt_ceil(5), 3);
        assert_eq!(isqrt_floor(8), 2);
        assert_eq!(isqrt_floor(9), 3);
    }

    #[test]
    fn point_segment_distances() {
        // distance 1 from a unit-offset point to a vertical segment
        let d = point_segment_distance_sq(pt(1, 0, 0), pt(0, 0, 0), pt(0, 0, 5));
        assert_eq!(d, rat(1));
        // diagonal segment, midpoint distance 1/2
        let d = point_segment_distance_sq(pt(1, 0, 0), pt(0, 0, 0), pt(2, 2, 0));
        assert_eq!(d, BigRational::new(big(1), big(2)));
        // clamped to an endpoint
        let d = point_segment_distance_sq(pt(-3, -4, 0), pt(0, 0, 0), pt(5, 0, 0));
        assert_eq!(d, rat(25));
        // degenerate segment
        let d = point_segment_distance_sq(pt(2, 0, 0), pt(1, 0, 0), pt(1, 0, 0));
        assert_eq!(d, rat(1));
    }

    #[test]
    fn primitive_dirs() {
        assert_eq!(primitive_dir(4, -6), (2, -3));
        assert_eq!(primitive_dir(0, 5), (0, 1));
        assert_eq!(primitive_dir(-7, 0), (-1, 0));
        assert_eq!(primitive_dir(1, 1), (1, 1));
    }
}
