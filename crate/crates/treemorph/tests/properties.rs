//! Randomized invariant checks over generated trees and drawings.

use proptest::prelude::*;
use treemorph::canonical::{canonical_drawing, relative_canonical};
use treemorph::decomp::{heavy_decomposition, long_path_decomposition};
use treemorph::io::{generate, tidy_layout, Shape};
use treemorph::model::RootedTree;
use treemorph::verify::{check_drawing, check_trace, CheckOptions};

const SHAPES: [Shape; 5] = [
    Shape::Random,
    Shape::Path,
    Shape::Star,
    Shape::Caterpillar,
    Shape::Balanced,
];

fn arb_tree(max_n: usize) -> impl Strategy<Value = RootedTree> {
    (2..=max_n, any::<u64>(), 0..5usize)
        .prop_map(|(n, seed, s)| generate(n, seed, SHAPES[s]).0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tidy_layout_is_crossing_free(tree in arb_tree(48)) {
        let d = tidy_layout(&tree);
        prop_assert!(d.is_planar());
        prop_assert!(check_drawing(&tree, &d).is_empty());
    }

    #[test]
    fn canonical_crop_equals_recomputed_canonical(tree in arb_tree(40)) {
        let heavy = heavy_decomposition(&tree);
        let canon = canonical_drawing(&tree, &heavy);
        for v in 0..tree.n {
            let cropped = relative_canonical(&tree, &canon, v);
            let sub_ids = tree.subtree(v);
            // relabel the subtree as a standalone tree and redo the layout
            let index = |w| sub_ids.iter().position(|&u| u == w).unwrap();
            let edges: Vec<_> = sub_ids
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| (index(tree.parent[w].unwrap()), index(w)))
                .collect();
            let sub = RootedTree::new(sub_ids.len(), 0, &edges).unwrap();
            let sub_canon = canonical_drawing(&sub, &heavy_decomposition(&sub));
            for (i, &w) in sub_ids.iter().enumerate() {
                prop_assert_eq!(cropped[w].unwrap(), sub_canon.pos[i]);
            }
        }
    }

    #[test]
    fn canonical_box_and_slabs(tree in arb_tree(48)) {
        let heavy = heavy_decomposition(&tree);
        let canon = canonical_drawing(&tree, &heavy);
        let rpw = heavy.width(&tree) as i64;
        let n = tree.n as i64;
        for v in 0..tree.n {
            let p = canon.pos[v];
            prop_assert!(p.x >= 0 && p.x < rpw && p.y == 0 && p.z >= 0 && p.z < n);
            // each subtree fills its z-slab exactly
            let zs: Vec<i64> = tree.subtree(v).iter().map(|&w| canon.pos[w].z).collect();
            let lo = *zs.iter().min().unwrap();
            let hi = *zs.iter().max().unwrap();
            prop_assert_eq!(lo, p.z);
            prop_assert_eq!((hi - lo + 1) as usize, zs.len());
        }
    }

    #[test]
    fn long_paths_lift_shortest_first(tree in arb_tree(48)) {
        let paths = long_path_decomposition(&tree).paths;
        for w in paths.windows(2) {
            prop_assert!(w[0].vertices.len() <= w[1].vertices.len());
        }
        // each path head hangs off an already-lifted parent path or the root
        let mut lifted = vec![false; tree.n];
        for p in &paths {
            if let Some(parent) = tree.parent[p.vertices[0]] {
                prop_assert!(!lifted[parent], "parent path must lift later");
            }
            for &v in &p.vertices {
                lifted[v] = true;
            }
        }
        prop_assert!(lifted.iter().all(|&b| b));
    }

    #[test]
    fn rpw_is_logarithmic(tree in arb_tree(64)) {
        let heavy = heavy_decomposition(&tree);
        let bound = (usize::BITS - tree.n.leading_zeros()) as usize; // floor(log2 n) + 1
        prop_assert!(heavy.width(&tree) <= bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn morphs_verify_on_random_instances(
        n in 2..=20usize,
        seed in any::<u64>(),
        s in 0..5usize,
    ) {
        let (tree, drawing) = generate(n, seed, SHAPES[s]);
        for alg in [
            treemorph::lift_paths::morph_to_canonical_alg1,
            treemorph::lift_edges::morph_to_canonical_alg2,
            treemorph::tradeoff::morph_to_canonical_tradeoff,
        ] {
            let trace = alg(&tree, &drawing).unwrap();
            let rep = check_trace(&tree, &trace, &CheckOptions { samples: 3, ..Default::default() });
            prop_assert!(rep.ok, "{:?}", &rep.violations[..rep.violations.len().min(3)]);
        }
    }
}
