//! Morph steps and the grid-preserving motion primitives they are built
//! from. A step is a pair of drawings; frames in between are the linear
//! interpolation, and every primitive is designed so that all vertices sit
//! on grid points at both ends.

use crate::model::{GridDrawing, GridPoint, RootedTree, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Stretch,
    Translate,
    Shrink,
    Rotate,
    HRotate,
    Pinwheel,
    MapPole,
}

/// One linear morph step. Vertices outside `moved` have identical
/// positions in `from` and `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphStep {
    pub kind: StepKind,
    pub moved: Vec<VertexId>,
    pub from: GridDrawing,
    pub to: GridDrawing,
}

impl MorphStep {
    pub fn new(kind: StepKind, from: GridDrawing, to: GridDrawing) -> Self {
        assert_eq!(from.n(), to.n());
        let moved = (0..from.n())
            .filter(|&v| from.pos[v] != to.pos[v])
            .collect();
        MorphStep {
            kind,
            moved,
            from,
            to,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }
}

/// A morph: the tree, the starting drawing, and the steps in order. Each
/// step starts from the previous step's `to` drawing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphTrace {
    pub tree: RootedTree,
    pub initial: GridDrawing,
    pub steps: Vec<MorphStep>,
}

impl MorphTrace {
    pub fn final_drawing(&self) -> &GridDrawing {
        self.steps.last().map(|s| &s.to).unwrap_or(&self.initial)
    }

    /// Reverse the morph: same frames, played backwards.
    pub fn reversed(&self) -> MorphTrace {
        let mut steps: Vec<MorphStep> = self
            .steps
            .iter()
            .rev()
            .map(|s| MorphStep {
                kind: s.kind,
                moved: s.moved.clone(),
                from: s.to.clone(),
                to: s.from.clone(),
            })
            .collect();
        steps.retain(|s| !s.is_identity());
        MorphTrace {
            tree: self.tree.clone(),
            initial: self.final_drawing().clone(),
            steps,
        }
    }

    /// Append another morph that starts where this one ends.
    pub fn extend(&mut self, other: MorphTrace) {
        assert_eq!(self.final_drawing(), &other.initial);
        self.steps.extend(other.steps);
    }
}

#[derive(Debug, Error)]
pub enum MorphError {
    #[error("stretch factor must be >= 1, got {0}")]
    BadStretch(i64),
    #[error("vertex {0} is not on the source half-plane of the mapping")]
    NotOnHalfPlane(VertexId),
    #[error("pole direction must be a nonzero primitive vector")]
    BadPole,
}

/// Scale the whole drawing about the origin by an integer factor `s >= 1`.
pub fn stretch(from: &GridDrawing, s: i64) -> Result<MorphStep, MorphError> {
    if s < 1 {
        return Err(MorphError::BadStretch(s));
    }
    Ok(MorphStep::new(
        StepKind::Stretch,
        from.clone(),
        from.scaled(s),
    ))
}

/// Translate the vertices in `moved` by `vec`.
pub fn translate_step(from: &GridDrawing, moved: &[VertexId], vec: GridPoint) -> MorphStep {
    let mut to = from.clone();
    for &v in moved {
        to.pos[v] = to.pos[v].add(vec);
    }
    MorphStep::new(StepKind::Translate, from.clone(), to)
}

/// A vertical half-plane: all points `anchor + k * dir` for k >= 0 at any
/// height, where `dir` is a primitive horizontal direction. The mapping
/// between two half-planes with a common pole sends lattice index k to
/// lattice index k and keeps z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleFrame {
    pub anchor: (i64, i64),
    pub dir: (i64, i64),
}

impl PoleFrame {
    pub fn new(anchor: (i64, i64), dir: (i64, i64)) -> Result<Self, MorphError> {
        if dir == (0, 0) {
            return Err(MorphError::BadPole);
        }
        let p = crate::model::primitive_dir(dir.0, dir.1);
        if p != dir {
            return Err(MorphError::BadPole);
        }
        Ok(PoleFrame { anchor, dir })
    }

    /// Lattice index of `(x, y)` on this half-plane's ray, if it is on it.
    pub fn index_of(&self, x: i64, y: i64) -> Option<i64> {
        let (dx, dy) = (x - self.anchor.0, y - self.anchor.1);
        let (ux, uy) = self.dir;
        if dx * uy != dy * ux {
            return None;
        }
        let k = if ux != 0 { dx / ux } else { dy / uy };
        if k >= 0 && dx == k * ux && dy == k * uy {
            Some(k)
        } else {
            None
        }
    }

    pub fn point_at(&self, k: i64, z: i64) -> GridPoint {
        GridPoint::new(
            self.anchor.0 + k * self.dir.0,
            self.anchor.1 + k * self.dir.1,
            z,
        )
    }
}

/// Map the vertices in `moved` from one vertical half-plane to another with
/// the same pole, preserving lattice index and height.
pub fn map_around_pole(
    from: &GridDrawing,
    moved: &[VertexId],
    src: PoleFrame,
    dst: PoleFrame,
) -> Result<MorphStep, MorphError> {
    assert_eq!(src.anchor, dst.anchor, "half-planes must share the pole");
    let mut to = from.clone();
    for &v in moved {
        let p = from.pos[v];
        let k = src
            .index_of(p.x, p.y)
            .ok_or(MorphError::NotOnHalfPlane(v))?;
        to.pos[v] = dst.point_at(k, p.z);
    }
    Ok(MorphStep::new(StepKind::MapPole, from.clone(), to))
}

/// Quarter rotation of `moved` about the vertical pole through `anchor`:
/// the half-plane in direction `dir` maps to the one in direction
/// `rot90(dir)` (counterclockwise) or `rot270(dir)` (clockwise).
pub fn rotate_quarter(
    from: &GridDrawing,
    moved: &[VertexId],
    anchor: (i64, i64),
    dir: (i64, i64),
    counterclockwise: bool,
) -> Result<MorphStep, MorphError> {
    let src = PoleFrame::new(anchor, dir)?;
    let d2 = if counterclockwise {
        (-dir.1, dir.0)
    } else {
        (dir.1, -dir.0)
    };
    let dst = PoleFrame::new(anchor, d2)?;
    let mut step = map_around_pole(from, moved, src, dst)?;
    step.kind = StepKind::Rotate;
    Ok(step)
}

/// Rotate `moved` about the horizontal pole parallel to the x-axis through
/// `(.., y0, z0)`: offsets rotate in the (y, z) plane from direction
/// `dir_from` to `dir_to` (both primitive), x is preserved.
pub fn rotate_about_horizontal_pole(
    from: &GridDrawing,
    moved: &[VertexId],
    pole_yz: (i64, i64),
    dir_from: (i64, i64),
    dir_to: (i64, i64),
) -> Result<MorphStep, MorphError> {
    for d in [dir_from, dir_to] {
        if d == (0, 0) || crate::model::primitive_dir(d.0, d.1) != d {
            return Err(MorphError::BadPole);
        }
    }
    let mut to = from.clone();
    for &v in moved {
        let p = from.pos[v];
        let (dy, dz) = (p.y - pole_yz.0, p.z - pole_yz.1);
        if dy * dir_from.1 != dz * dir_from.0 {
            return Err(MorphError::NotOnHalfPlane(v));
        }
        let k = if dir_from.0 != 0 {
            dy / dir_from.0
        } else {
            dz / dir_from.1
        };
        if k < 0 || dy != k * dir_from.0 || dz != k * dir_from.1 {
            return Err(MorphError::NotOnHalfPlane(v));
        }
        to.pos[v] = GridPoint::new(p.x, pole_yz.0 + k * dir_to.0, pole_yz.1 + k * dir_to.1);
    }
    Ok(MorphStep::new(StepKind::HRotate, from.clone(), to))
}

/// Quarter-turn the horizontal offsets of `moved` about the vertical line
/// through `anchor`, keeping z: (dx, dy) -> (-dy, dx). Two turns compose to
/// a point reflection. Unlike `rotate_quarter` this turns a whole
/// horizontal layout, not a single half-plane.
pub fn pinwheel_turn(from: &GridDrawing, moved: &[VertexId], anchor: (i64, i64)) -> MorphStep {
    let mut to = from.clone();
    for &v in moved {
        let p = from.pos[v];
        let (dx, dy) = (p.x - anchor.0, p.y - anchor.1);
        to.pos[v] = GridPoint::new(anchor.0 - dy, anchor.1 + dx, p.z);
    }
    MorphStep::new(StepKind::Pinwheel, from.clone(), to)
}

/// Move the vertices in `moved` straight to explicit target positions.
/// Used for the compaction ("shrink") phases where each subtree block
/// slides vertically by its own amount.
pub fn retarget_step(
    from: &GridDrawing,
    kind: StepKind,
    targets: &[(VertexId, GridPoint)],
) -> MorphStep {
    let mut to = from.clone();
    for &(v, p) in targets {
        to.pos[v] = p;
    }
    MorphStep::new(kind, from.clone(), to)
}
