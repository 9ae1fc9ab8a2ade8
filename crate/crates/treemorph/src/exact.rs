//! Exact integer predicates for 3D segment geometry. All decisions are made
//! with i128 arithmetic on coordinate differences (degree <= 3 polynomials),
//! so there is no floating point anywhere on the yes/no paths.

pub type P3 = [i128; 3];

pub fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: P3, b: P3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn is_zero(a: P3) -> bool {
    a == [0, 0, 0]
}

/// How two closed segments meet, beyond a single permitted shared point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contact {
    /// disjoint, or touching only at the allowed shared point
    Clear,
    /// they intersect somewhere they must not
    Violation,
}

/// Tests whether segments [a,b] and [c,d] intersect anywhere other than the
/// optional `allowed` point (the shared endpoint of two adjacent tree
/// edges). Collinear overlap of positive length is always a violation.
pub fn segments_contact(a: P3, b: P3, c: P3, d: P3, allowed: Option<P3>) -> Contact {
    let u = sub(b, a);
    let w = sub(d, c);
    let g = sub(c, a);
    let n = cross(u, w);

    if is_zero(n) {
        // parallel (or degenerate) segments
        return parallel_contact(a, b, c, d, allowed);
    }
    // skew check: segments can only meet if coplanar
    if dot(n, g) != 0 {
        return Contact::Clear;
    }
    // coplanar, non-parallel: project out the largest normal component and
    // run the classic 2D intersection classification
    let axis = largest_axis(n);
    let pa = drop_axis(a, axis);
    let pb = drop_axis(b, axis);
    let pc = drop_axis(c, axis);
    let pd = drop_axis(d, axis);
    let o1 = orient2(pa, pb, pc);
    let o2 = orient2(pa, pb, pd);
    let o3 = orient2(pc, pd, pa);
    let o4 = orient2(pc, pd, pb);
    if (o1 > 0) != (o2 > 0) && o1 != 0 && o2 != 0 && (o3 > 0) != (o4 > 0) && o3 != 0 && o4 != 0 {
        return Contact::Violation; // proper interior crossing
    }
    // touching cases: some endpoint lies on the other segment
    for (p, s0, s1) in [(a, c, d), (b, c, d), (c, a, b), (d, a, b)] {
        if point_on_segment(p, s0, s1) && allowed != Some(p) {
            return Contact::Violation;
        }
    }
    Contact::Clear
}

fn parallel_contact(a: P3, b: P3, c: P3, d: P3, allowed: Option<P3>) -> Contact {
    let u = sub(b, a);
    let w = sub(d, c);
    // degenerate segments reduce to point-on-segment tests
    if is_zero(u) && is_zero(w) {
        return if a == c && allowed != Some(a) {
            Contact::Violation
        } else {
            Contact::Clear
        };
    }
    if is_zero(u) {
        return if point_on_segment(a, c, d) && allowed != Some(a) {
            Contact::Violation
        } else {
            Contact::Clear
        };
    }
    if is_zero(w) {
        return if point_on_segment(c, a, b) && allowed != Some(c) {
            Contact::Violation
        } else {
            Contact::Clear
        };
    }
    // parallel proper segments: only collinear ones can meet
    if !is_zero(cross(u, sub(c, a))) {
        return Contact::Clear;
    }
    // collinear: compare 1D parameters along u
    let uu = dot(u, u);
    let t_c = dot(sub(c, a), u);
    let t_d = dot(sub(d, a), u);
    let (lo, hi) = if t_c <= t_d { (t_c, t_d) } else { (t_d, t_c) };
    let (ov_lo, ov_hi) = (lo.max(0), hi.min(uu));
    if ov_lo > ov_hi {
        return Contact::Clear;
    }
    if ov_lo == ov_hi {
        // single touching point: allowed only if it is the shared endpoint
        let touch_ok = match allowed {
            Some(p) => dot(sub(p, a), u) == ov_lo && point_on_segment(p, a, b),
            None => false,
        };
        return if touch_ok {
            Contact::Clear
        } else {
            Contact::Violation
        };
    }
    Contact::Violation // positive-length overlap
}

/// True iff `p` lies on the closed segment [a, b].
pub fn point_on_segment(p: P3, a: P3, b: P3) -> bool {
    let u = sub(b, a);
    let v = sub(p, a);
    if !is_zero(cross(u, v)) {
        return false;
    }
    let t = dot(v, u);
    t >= 0 && t <= dot(u, u) && (!is_zero(u) || is_zero(v))
}

fn largest_axis(n: P3) -> usize {
    let (ax, ay, az) = (n[0].abs(), n[1].abs(), n[2].abs());
    if ax >= ay && ax >= az {
        0
    } else if ay >= az {
        1
    } else {
        2
    }
}

fn drop_axis(p: P3, axis: usize) -> [i128; 2] {
    match axis {
        0 => [p[1], p[2]],
        1 => [p[0], p[2]],
        _ => [p[0], p[1]],
    }
}

fn orient2(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    let v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    v.signum()
}
