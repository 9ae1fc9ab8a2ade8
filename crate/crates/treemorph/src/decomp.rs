//! Path decompositions of rooted trees: the longest-path decomposition that
//! drives per-path lifting, the heavy-path decomposition whose width bounds
//! the 3D grid, depth-indexed edge sets for whole-level lifting, and the
//! long/short split used by the trade-off schedule.

use crate::model::{RootedTree, VertexId};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// A root-to-leaf path of some (sub)tree. `vertices[0]` is the head, the
/// shallowest vertex; consecutive entries are joined by tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub vertices: Vec<VertexId>,
}

impl TreePath {
    pub fn head(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn tail(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// Length in edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Paths listed in lifting order: the reverse of the order in which they
/// were deleted from the tree (shortest first, the root path last).
#[derive(Debug, Clone)]
pub struct PathDecomposition {
    pub paths: Vec<TreePath>,
}

/// Repeatedly delete a longest root-to-leaf path of the remaining forest
/// (ties: smallest leaf id), then return the deleted paths in reverse
/// (lifting) order.
pub fn long_path_decomposition(tree: &RootedTree) -> PathDecomposition {
    // deepest descendant leaf per vertex, ties by smallest leaf id
    let order = tree.preorder();
    let mut best: Vec<(usize, VertexId)> = (0..tree.n).map(|v| (tree.depth[v], v)).collect();
    for &v in order.iter().rev() {
        for &c in &tree.children[v] {
            let (d, leaf) = best[c];
            if d > best[v].0 || (d == best[v].0 && leaf < best[v].1) {
                best[v] = (d, leaf);
            }
        }
    }

    // heap of component roots, keyed by (path length desc, leaf id asc)
    let mut heap: BinaryHeap<(usize, Reverse<VertexId>, VertexId)> = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<_>, best: &[(usize, VertexId)], root: VertexId| {
        let (d, leaf) = best[root];
        heap.push((d - tree.depth[root], Reverse(leaf), root));
    };
    push(&mut heap, &best, tree.root);

    let mut deleted = Vec::new();
    while let Some((_, _, root)) = heap.pop() {
        // walk from the component root toward its chosen leaf
        let leaf = best[root].1;
        let mut chain = vec![leaf];
        let mut v = leaf;
        while v != root {
            v = tree.parent[v].unwrap();
            chain.push(v);
        }
        chain.reverse();
        // everything hanging off the path becomes its own component
        for (i, &u) in chain.iter().enumerate() {
            let succ = chain.get(i + 1).copied();
            for &c in &tree.children[u] {
                if Some(c) != succ {
                    push(&mut heap, &best, c);
                }
            }
        }
        deleted.push(TreePath { vertices: chain });
    }
    deleted.reverse();
    PathDecomposition { paths: deleted }
}

/// Heavy-path decomposition together with the rooted pathwidth values.
#[derive(Debug, Clone)]
pub struct HeavyDecomposition {
    /// rooted pathwidth of the subtree at each vertex
    pub rpw: Vec<usize>,
    /// heavy child of each vertex (None for leaves)
    pub heavy_child: Vec<Option<VertexId>>,
    /// heavy paths; each non-root path starts with the light-edge head
    pub paths: Vec<TreePath>,
    /// index into `paths` of the path whose chain contains each vertex
    pub path_of: Vec<usize>,
    /// per path: light children hanging off its chain, deepest chain vertex
    /// first, and per chain vertex in descending id order
    pub light_children_order: Vec<Vec<VertexId>>,
}

impl HeavyDecomposition {
    /// rooted pathwidth of the whole tree
    pub fn width(&self, tree: &RootedTree) -> usize {
        self.rpw[tree.root]
    }
}

/// Heavy child: child with maximum rooted pathwidth, ties by smallest id.
/// A light edge into the top of a chain belongs to that chain's path.
pub fn heavy_decomposition(tree: &RootedTree) -> HeavyDecomposition {
    let order = tree.preorder();
    let mut rpw = vec![1usize; tree.n];
    let mut heavy_child = vec![None; tree.n];
    for &v in order.iter().rev() {
        if tree.children[v].is_empty() {
            continue;
        }
        let mut hc = tree.children[v][0];
        for &c in &tree.children[v][1..] {
            if rpw[c] > rpw[hc] {
                hc = c;
            }
        }
        let ties = tree.children[v].iter().filter(|&&c| rpw[c] == rpw[hc]).count();
        rpw[v] = if ties >= 2 { rpw[hc] + 1 } else { rpw[hc] };
        heavy_child[v] = Some(hc);
    }

    // chains: follow heavy children from every chain top
    let mut paths = Vec::new();
    let mut path_of = vec![usize::MAX; tree.n];
    for &v in &order {
        let is_top = match tree.parent[v] {
            None => true,
            Some(p) => heavy_child[p] != Some(v),
        };
        if !is_top {
            continue;
        }
        let mut vertices = Vec::new();
        if let Some(p) = tree.parent[v] {
            vertices.push(p); // the light edge above the chain joins the path
        }
        let idx = paths.len();
        let mut u = v;
        loop {
            vertices.push(u);
            path_of[u] = idx;
            match heavy_child[u] {
                Some(h) => u = h,
                None => break,
            }
        }
        paths.push(TreePath { vertices });
    }

    let mut light_children_order = Vec::with_capacity(paths.len());
    for (idx, path) in paths.iter().enumerate() {
        let chain: Vec<VertexId> = path
            .vertices
            .iter()
            .copied()
            .filter(|&u| path_of[u] == idx)
            .collect();
        let mut seq = Vec::new();
        for &u in chain.iter().rev() {
            let mut light: Vec<VertexId> = tree.children[u]
                .iter()
                .copied()
                .filter(|&c| heavy_child[u] != Some(c))
                .collect();
            light.sort_unstable_by(|a, b| b.cmp(a));
            seq.extend(light);
        }
        light_children_order.push(seq);
    }

    HeavyDecomposition {
        rpw,
        heavy_child,
        paths,
        path_of,
        light_children_order,
    }
}

/// Edge sets by depth: `sets[0]` holds the edges whose parent endpoint is
/// deepest, the last set holds the edges out of the root level. Lifting
/// processes the sets in this order.
pub fn depth_edge_sets(tree: &RootedTree) -> Vec<Vec<(VertexId, VertexId)>> {
    let m = tree.height();
    let mut sets = vec![Vec::new(); m];
    for (p, c) in tree.edges() {
        sets[m - 1 - tree.depth[p]].push((p, c));
    }
    sets
}

/// Long/short split for the trade-off schedule.
#[derive(Debug, Clone)]
pub struct TradeoffPartition {
    /// long paths (length^2 >= n), in lifting order
    pub long_paths: Vec<TreePath>,
    /// short edge sets Sh_1 .. Sh_k, lifted before the long paths; edges in
    /// Sh_l are the short-forest edges whose lower endpoint sits at depth
    /// floor(sqrt(n)) - l + 1 of its short component
    pub short_sets: Vec<Vec<(VertexId, VertexId)>>,
}

pub fn tradeoff_partition(tree: &RootedTree) -> TradeoffPartition {
    let n = tree.n;
    let k = crate::model::isqrt_floor(n as i128) as usize;
    let decomp = long_path_decomposition(tree);
    let long_paths: Vec<TreePath> = decomp
        .paths
        .into_iter()
        .filter(|p| p.len() * p.len() >= n)
        .collect();

    // mark long edges; short components are what remains
    let mut on_long = vec![false; tree.n]; // vertex below a long edge
    for p in &long_paths {
        for w in p.vertices.windows(2) {
            on_long[w[1]] = true;
        }
    }
    // depth of each vertex within its short component
    let mut comp_depth = vec![0usize; tree.n];
    for v in tree.preorder() {
        if let Some(p) = tree.parent[v] {
            if !on_long[v] {
                comp_depth[v] = comp_depth[p] + 1;
            }
        }
    }

    let mut short_sets = vec![Vec::new(); k];
    for (p, c) in tree.edges() {
        if on_long[c] {
            continue;
        }
        let d = comp_depth[c];
        assert!(d >= 1 && d <= k, "short component deeper than floor(sqrt(n))");
        short_sets[k - d].push((p, c));
    }
    TradeoffPartition {
        long_paths,
        short_sets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_tree(n: usize) -> RootedTree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        RootedTree::new(n, 0, &edges).unwrap()
    }

    fn star(leaves: usize) -> RootedTree {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        RootedTree::new(leaves + 1, 0, &edges).unwrap()
    }

    fn complete_binary(levels: u32) -> RootedTree {
        let n = (1usize << levels) - 1;
        let edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
        RootedTree::new(n, 0, &edges).unwrap()
    }

    #[test]
    fn long_paths_of_a_path() {
        let t = path_tree(5);
        let d = long_path_decomposition(&t);
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.paths[0].vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn long_paths_of_a_star() {
        let t = star(3);
        let d = long_path_decomposition(&t);
        assert_eq!(d.paths.len(), 3);
        // deletion picks leaf 1 first (all lengths tie, smallest leaf id),
        // so the lifting order is 3, 2, 1 — except the first deletion takes
        // the root along: its path is [0, 1], the rest are single leaves.
        assert_eq!(d.paths[2].vertices, vec![0, 1]);
        assert_eq!(d.paths[0].vertices, vec![3]);
        assert_eq!(d.paths[1].vertices, vec![2]);
        // lengths never decrease along lifting order
        for w in d.paths.windows(2) {
            assert!(w[0].len() <= w[1].len());
        }
    }

    #[test]
    fn long_paths_cover_and_are_disjoint() {
        let t = RootedTree::new(
            9,
            0,
            &[(0, 1), (1, 2), (2, 3), (1, 4), (0, 5), (5, 6), (6, 7), (5, 8)],
        )
        .unwrap();
        let d = long_path_decomposition(&t);
        let mut seen = vec![false; t.n];
        for p in &d.paths {
            for &v in &p.vertices {
                assert!(!seen[v], "vertex {v} in two paths");
                seen[v] = true;
            }
            // consecutive vertices are parent/child
            for w in p.vertices.windows(2) {
                assert_eq!(t.parent[w[1]], Some(w[0]));
            }
        }
        assert!(seen.iter().all(|&b| b));
        // the root path is lifted last
        assert_eq!(d.paths.last().unwrap().head(), 0);
    }

    #[test]
    fn rpw_examples() {
        let t = path_tree(6);
        let h = heavy_decomposition(&t);
        assert_eq!(h.width(&t), 1);
        assert_eq!(h.paths.len(), 1);

        let t = complete_binary(3); // 7 vertices
        let h = heavy_decomposition(&t);
        assert_eq!(h.rpw[0], 3);
        assert_eq!(h.rpw[1], 2);
        assert_eq!(h.rpw[3], 1);
        assert_eq!(h.heavy_child[0], Some(1)); // tie -> smaller id
    }

    #[test]
    fn rpw_matches_independent_recursion() {
        // independent oracle: rpw(v) = max child rpw, +1 if the max is
        // attained at least twice
        fn oracle(t: &RootedTree, v: VertexId) -> usize {
            let vals: Vec<usize> = t.children[v].iter().map(|&c| oracle(t, c)).collect();
            match vals.iter().max() {
                None => 1,
                Some(&m) => {
                    if vals.iter().filter(|&&x| x == m).count() >= 2 {
                        m + 1
                    } else {
                        m
                    }
                }
            }
        }
        let t = RootedTree::new(
            11,
            0,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (4, 6),
                (4, 7),
                (5, 8),
                (8, 9),
                (8, 10),
            ],
        )
        .unwrap();
        let h = heavy_decomposition(&t);
        for v in 0..t.n {
            assert_eq!(h.rpw[v], oracle(&t, v));
        }
    }

    #[test]
    fn heavy_paths_partition_vertices_and_take_light_heads() {
        let t = complete_binary(3);
        let h = heavy_decomposition(&t);
        // chains partition the vertex set
        let mut count = vec![0usize; t.n];
        for (i, p) in h.paths.iter().enumerate() {
            for &v in &p.vertices {
                if h.path_of[v] == i {
                    count[v] += 1;
                }
            }
        }
        assert!(count.iter().all(|&c| c == 1));
        // every non-root path starts with a vertex of its parent path
        for (i, p) in h.paths.iter().enumerate() {
            if p.head() == t.root && h.path_of[t.root] == i {
                continue;
            }
            assert_ne!(h.path_of[p.head()], i);
        }
        // height of the path tree is bounded by the width
        let root_path = h.path_of[t.root];
        let mut max_h = 0;
        for (i, p) in h.paths.iter().enumerate() {
            let mut lvl = 0;
            let mut j = i;
            while j != root_path {
                j = h.path_of[h.paths[j].head()];
                lvl += 1;
            }
            max_h = max_h.max(lvl + 1);
            let _ = p;
        }
        assert!(max_h <= h.width(&t));
    }

    #[test]
    fn light_children_order_rules() {
        // root 0 with chain 0-1-2; light children 3,4 on 1 and 5 on 0
        let t = RootedTree::new(6, 0, &[(0, 1), (1, 2), (1, 3), (1, 4), (0, 5)]).unwrap();
        let h = heavy_decomposition(&t);
        let root_path = h.path_of[0];
        // deepest chain vertex first; within a vertex descending id
        assert_eq!(h.light_children_order[root_path], vec![4, 3, 5]);
    }

    #[test]
    fn single_vertex_decompositions() {
        let t = RootedTree::new(1, 0, &[]).unwrap();
        let d = long_path_decomposition(&t);
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.paths[0].vertices, vec![0]);
        assert_eq!(d.paths[0].len(), 0);
        let h = heavy_decomposition(&t);
        assert_eq!(h.width(&t), 1);
        assert!(depth_edge_sets(&t).is_empty());
    }

    #[test]
    fn depth_sets_example() {
        // balanced 7-vertex binary tree: 4 leaf edges then 2 root edges... but
        // depth sets group by parent depth: K_1 = 4 edges at parent depth 1,
        // K_2 = 2 edges at the root
        let t = complete_binary(3);
        let sets = depth_edge_sets(&t);
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].len(), 4);
        assert_eq!(sets[1].len(), 2);
        assert!(sets[1].contains(&(0, 1)) && sets[1].contains(&(0, 2)));
    }

    #[test]
    fn tradeoff_of_a_long_path() {
        let t = path_tree(9);
        let p = tradeoff_partition(&t);
        assert_eq!(p.long_paths.len(), 1); // 8^2 >= 9
        assert!(p.short_sets.iter().all(|s| s.is_empty()));
    }

    #[test]
    fn tradeoff_of_a_star() {
        let t = star(4); // n = 5, floor(sqrt(5)) = 2, path lengths 1 -> short
        let p = tradeoff_partition(&t);
        assert!(p.long_paths.is_empty());
        assert_eq!(p.short_sets.len(), 2);
        assert!(p.short_sets[0].is_empty()); // depth-2 set
        assert_eq!(p.short_sets[1].len(), 4);
    }

    #[test]
    fn tradeoff_covers_all_edges_once() {
        let t = RootedTree::new(
            12,
            0,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 6),
                (6, 7),
                (1, 8),
                (8, 9),
                (2, 10),
                (6, 11),
            ],
        )
        .unwrap();
        let p = tradeoff_partition(&t);
        let mut total = 0;
        for lp in &p.long_paths {
            total += lp.len();
        }
        for s in &p.short_sets {
            total += s.len();
        }
        assert_eq!(total, t.n - 1);
        // heads of long paths lie on another long path or at the root
        for lp in &p.long_paths {
            let h = lp.head();
            assert!(
                h == t.root
                    || p.long_paths
                        .iter()
                        .any(|q| q.vertices.windows(2).any(|w| w[1] == h)),
            );
        }
    }
}
