//! File formats and artifact plumbing: the JSON drawing schema, random
//! tree generation with a guaranteed crossing-free tidy layout, and
//! SVG/OBJ frame export for external viewers.

use crate::model::{GridDrawing, GridPoint, ModelError, RootedTree, VertexId};
use crate::morph::MorphTrace;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// On-disk drawing: `{n, root, edges, positions}`; positions may have two
/// components (z = 0) or three.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DrawingFile {
    pub n: usize,
    pub root: VertexId,
    pub edges: Vec<(VertexId, VertexId)>,
    pub positions: Vec<Vec<i64>>,
}

impl DrawingFile {
    pub fn from_parts(tree: &RootedTree, drawing: &GridDrawing) -> Self {
        DrawingFile {
            n: tree.n,
            root: tree.root,
            edges: tree.edges(),
            positions: drawing.pos.iter().map(|p| vec![p.x, p.y, p.z]).collect(),
        }
    }

    pub fn into_parts(&self) -> Result<(RootedTree, GridDrawing), ModelError> {
        let tree = RootedTree::new(self.n, self.root, &self.edges)?;
        if self.positions.len() != self.n {
            return Err(ModelError::SizeMismatch {
                got: self.positions.len(),
                want: self.n,
            });
        }
        let mut pos = Vec::with_capacity(self.n);
        for p in &self.positions {
            match p[..] {
                [x, y] => pos.push(GridPoint::new(x, y, 0)),
                [x, y, z] => pos.push(GridPoint::new(x, y, z)),
                _ => {
                    return Err(ModelError::SizeMismatch {
                        got: p.len(),
                        want: 3,
                    })
                }
            }
        }
        Ok((tree, GridDrawing::new(pos)))
    }
}

/// Crossing-free planar layout: x = in-order rank (the vertex sits between
/// its first half of children and the rest), y = -depth, translated so the
/// root lands at the origin.
pub fn tidy_layout(tree: &RootedTree) -> GridDrawing {
    let mut x = vec![0i64; tree.n];
    let mut next = 0i64;
    // explicit stack: (vertex, next child index, own-rank-assigned)
    let mut stack = vec![(tree.root, 0usize, false)];
    while let Some(&mut (v, ref mut ci, ref mut placed)) = stack.last_mut() {
        let kids = &tree.children[v];
        let mid = kids.len() / 2;
        if *ci == mid && !*placed {
            x[v] = next;
            next += 1;
            *placed = true;
        } else if *ci < kids.len() {
            let c = kids[*ci];
            *ci += 1;
            stack.push((c, 0, false));
        } else {
            stack.pop();
        }
    }
    let rx = x[tree.root];
    let ry = -(tree.depth[tree.root] as i64);
    GridDrawing::new(
        (0..tree.n)
            .map(|v| GridPoint::new(x[v] - rx, -(tree.depth[v] as i64) - ry, 0))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Random,
    Path,
    Star,
    Caterpillar,
    Balanced,
}

impl FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Shape::Random),
            "path" => Ok(Shape::Path),
            "star" => Ok(Shape::Star),
            "caterpillar" => Ok(Shape::Caterpillar),
            "balanced" => Ok(Shape::Balanced),
            _ => Err(format!(
                "unknown shape {s:?} (want random|path|star|caterpillar|balanced)"
            )),
        }
    }
}

/// Random rooted tree of a given shape with its tidy layout. The layout is
/// crossing-free by construction; callers re-verify anyway.
pub fn generate(n: usize, seed: u64, shape: Shape) -> (RootedTree, GridDrawing) {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    match shape {
        Shape::Path => {
            for v in 1..n {
                edges.push((v - 1, v));
            }
        }
        Shape::Star => {
            for v in 1..n {
                edges.push((0, v));
            }
        }
        Shape::Balanced => {
            for v in 1..n {
                edges.push(((v - 1) / 2, v));
            }
        }
        Shape::Caterpillar => {
            let spine = if n <= 2 { n } else { rng.gen_range(2..=n.div_ceil(2).max(2)) };
            for v in 1..spine {
                edges.push((v - 1, v));
            }
            for v in spine..n {
                edges.push((rng.gen_range(0..spine), v));
            }
        }
        Shape::Random => {
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
        }
    }
    let tree = RootedTree::new(n, 0, &edges).expect("generated edges form a tree");
    let drawing = tidy_layout(&tree);
    (tree, drawing)
}

/// Frame sequence of a trace: `per_step` interior subdivisions per step
/// plus the final drawing, as floating-point positions for rendering.
pub fn trace_frames(trace: &MorphTrace, per_step: u32) -> Vec<Vec<(f64, f64, f64)>> {
    let per = per_step.max(1);
    let snap = |d: &GridDrawing| -> Vec<(f64, f64, f64)> {
        d.pos.iter().map(|p| (p.x as f64, p.y as f64, p.z as f64)).collect()
    };
    let mut frames = Vec::new();
    if trace.steps.is_empty() {
        frames.push(snap(&trace.initial));
    }
    for step in &trace.steps {
        for k in 0..per {
            let t = k as f64 / per as f64;
            frames.push(
                step.from
                    .pos
                    .iter()
                    .zip(&step.to.pos)
                    .map(|(a, b)| {
                        (
                            a.x as f64 + t * (b.x - a.x) as f64,
                            a.y as f64 + t * (b.y - a.y) as f64,
                            a.z as f64 + t * (b.z - a.z) as f64,
                        )
                    })
                    .collect(),
            );
        }
    }
    if let Some(last) = trace.steps.last() {
        frames.push(snap(&last.to));
    }
    frames
}

/// One SVG frame: the two orthographic projections (top: X0Y, bottom: X0Z)
/// of a straight-line drawing.
pub fn render_svg(tree: &RootedTree, frame: &[(f64, f64, f64)]) -> String {
    let panel = 480.0;
    let pad = 20.0;
    let (mut lo, mut hi) = ([f64::MAX; 3], [f64::MIN; 3]);
    for &(x, y, z) in frame {
        for (i, v) in [x, y, z].into_iter().enumerate() {
            lo[i] = lo[i].min(v);
            hi[i] = hi[i].max(v);
        }
    }
    let span = (0..3)
        .map(|i| (hi[i] - lo[i]).max(1.0))
        .fold(1.0f64, f64::max);
    let s = (panel - 2.0 * pad) / span;
    // svg y grows downward; flip the second axis of each projection
    let proj = |x: f64, b: f64, row: f64| -> (f64, f64) {
        (pad + (x - lo[0]) * s, row + panel - pad - b * s)
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{panel}\" height=\"{}\">\n",
        panel * 2.0
    ));
    for (row, axis) in [(0.0, 1usize), (panel, 2usize)] {
        for &(p, c) in &tree.edges() {
            let a = frame[p];
            let b = frame[c];
            let pick = |t: (f64, f64, f64)| if axis == 1 { t.1 - lo[1] } else { t.2 - lo[2] };
            let (x1, y1) = proj(a.0, pick(a), row);
            let (x2, y2) = proj(b.0, pick(b), row);
            out.push_str(&format!(
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n"
            ));
        }
        for &(x, y, z) in frame {
            let b = if axis == 1 { y - lo[1] } else { z - lo[2] };
            let (cx, cy) = proj(x, b, row);
            out.push_str(&format!(
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"2.5\" fill=\"steelblue\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// One OBJ frame: vertices plus polyline elements for the tree edges.
pub fn render_obj(tree: &RootedTree, frame: &[(f64, f64, f64)]) -> String {
    let mut out = String::new();
    for &(x, y, z) in frame {
        out.push_str(&format!("v {x} {y} {z}\n"));
    }
    for (p, c) in tree.edges() {
        out.push_str(&format!("l {} {}\n", p + 1, c + 1));
    }
    out
}
