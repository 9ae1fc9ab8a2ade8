//! Verification engine. Checks that drawings are injective and
//! crossing-free, that traces chain correctly and stay inside their
//! promised grids, and that every sampled frame of every linear step is
//! crossing-free — all with exact arithmetic. Sampled times t = k/(s+1)
//! are handled by scaling coordinates by (s+1), which keeps every test an
//! integer predicate.

use crate::exact::{self, Contact, P3};
use crate::model::{GridDrawing, GridPoint, RootedTree, VertexId};
use crate::morph::{MorphStep, MorphTrace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type Edge = (VertexId, VertexId);

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    /// step index within the trace; None = a standalone drawing check
    pub step: Option<usize>,
    /// sample time as a fraction (numerator, denominator)
    pub time: (i64, i64),
    pub kind: String,
    pub edge_a: Edge,
    pub edge_b: Edge,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub chained: bool,
    pub integral: bool,
    pub crossing_free: bool,
    pub steps: usize,
    pub steps_within_bound: Option<bool>,
    pub bbox_lo: GridPoint,
    pub bbox_hi: GridPoint,
    pub bbox_within_bound: Option<bool>,
    /// exact minimal squared separation over all checked non-adjacent
    /// edge pairs, as a decimal-free "num/den" string
    pub min_separation_sq: Option<String>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    /// interior sample count per step; endpoints are always checked
    pub samples: u32,
    /// audit mode: isolate the real times where moving edge pairs become
    /// coplanar and test those too
    pub strict: bool,
    /// also compute the exact minimum separation (slow, rational)
    pub with_separation: bool,
    pub max_steps: Option<usize>,
    pub bbox: Option<(GridPoint, GridPoint)>,
}

fn p3(p: GridPoint) -> P3 {
    [p.x as i128, p.y as i128, p.z as i128]
}

/// Endpoints of edge `e` at sample k of q, scaled by q so they stay integer.
fn scaled_edge(step: &MorphStep, e: Edge, k: i128, q: i128) -> (P3, P3) {
    let lerp = |v: VertexId| -> P3 {
        let f = p3(step.from.pos[v]);
        let t = p3(step.to.pos[v]);
        [
            f[0] * (q - k) + t[0] * k,
            f[1] * (q - k) + t[1] * k,
            f[2] * (q - k) + t[2] * k,
        ]
    };
    (lerp(e.0), lerp(e.1))
}

fn shared_vertex(a: Edge, b: Edge) -> Option<VertexId> {
    if a.0 == b.0 || a.0 == b.1 {
        Some(a.0)
    } else if a.1 == b.0 || a.1 == b.1 {
        Some(a.1)
    } else {
        None
    }
}

/// Check a standalone drawing: all vertex positions distinct and no two
/// edges intersecting except adjacent ones at their shared vertex.
pub fn check_drawing(tree: &RootedTree, drawing: &GridDrawing) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen: Vec<(GridPoint, VertexId)> =
        drawing.pos.iter().copied().zip(0..tree.n).collect();
    seen.sort_unstable_by_key(|&(p, _)| (p.x, p.y, p.z));
    for w in seen.windows(2) {
        if w[0].0 == w[1].0 {
            out.push(Violation {
                step: None,
                time: (0, 1),
                kind: format!("coincident vertices {} and {}", w[0].1, w[1].1),
                edge_a: (w[0].1, w[0].1),
                edge_b: (w[1].1, w[1].1),
            });
        }
    }
    let edges = tree.edges();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (ea, eb) = (edges[i], edges[j]);
            let allowed = shared_vertex(ea, eb).map(|v| p3(drawing.pos[v]));
            let c = exact::segments_contact(
                p3(drawing.pos[ea.0]),
                p3(drawing.pos[ea.1]),
                p3(drawing.pos[eb.0]),
                p3(drawing.pos[eb.1]),
                allowed,
            );
            if c == Contact::Violation {
                out.push(Violation {
                    step: None,
                    time: (0, 1),
                    kind: "crossing".into(),
                    edge_a: ea,
                    edge_b: eb,
                });
            }
        }
    }
    out
}

/// Result of checking one linear step.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub violations: Vec<Violation>,
    pub min_separation_sq: Option<BigRational>,
}

/// Check one linear morph step at every sample time t = k/(samples+1),
/// k = 0..=samples+1, with exact integer predicates. If `with_separation`
/// is set, also returns the exact minimum squared distance over all
/// non-adjacent edge pairs and all sample times.
pub fn check_step(
    tree: &RootedTree,
    step: &MorphStep,
    samples: u32,
    with_separation: bool,
    strict: bool,
) -> StepReport {
    let mut violations = Vec::new();
    let q = samples as i128 + 1;
    let edges = tree.edges();

    // vertex injectivity at every sample
    for k in 0..=q {
        let mut pts: Vec<(P3, VertexId)> = (0..tree.n)
            .map(|v| {
                let f = p3(step.from.pos[v]);
                let t = p3(step.to.pos[v]);
                (
                    [
                        f[0] * (q - k) + t[0] * k,
                        f[1] * (q - k) + t[1] * k,
                        f[2] * (q - k) + t[2] * k,
                    ],
                    v,
                )
            })
            .collect();
        pts.sort_unstable();
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                violations.push(Violation {
                    step: None,
                    time: (k as i64, q as i64),
                    kind: format!("coincident vertices {} and {}", w[0].1, w[1].1),
                    edge_a: (w[0].1, w[0].1),
                    edge_b: (w[1].1, w[1].1),
                });
            }
        }
    }

    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (ea, eb) = (edges[i], edges[j]);
            let shared = shared_vertex(ea, eb);
            for k in 0..=q {
                let (a, b) = scaled_edge(step, ea, k, q);
                let (c, d) = scaled_edge(step, eb, k, q);
                let allowed = shared.map(|v| {
                    let f = p3(step.from.pos[v]);
                    let t = p3(step.to.pos[v]);
                    [
                        f[0] * (q - k) + t[0] * k,
                        f[1] * (q - k) + t[1] * k,
                        f[2] * (q - k) + t[2] * k,
                    ]
                });
                if exact::segments_contact(a, b, c, d, allowed) == Contact::Violation {
                    violations.push(Violation {
                        step: None,
                        time: (k as i64, q as i64),
                        kind: "crossing".into(),
                        edge_a: ea,
                        edge_b: eb,
                    });
                }
            }
            if strict {
                strict_check_pair(step, ea, eb, shared, &mut violations);
            }
        }
    }

    let min_separation_sq = if with_separation {
        min_separation(step, &edges, samples)
    } else {
        None
    };
    StepReport {
        violations,
        min_separation_sq,
    }
}

/// Exact rational positions of vertex `v` at rational time `t`.
fn rational_pos(step: &MorphStep, v: VertexId, t: &BigRational) -> [BigRational; 3] {
    let f = step.from.pos[v];
    let g = step.to.pos[v];
    let lerp = |a: i64, b: i64| {
        BigRational::from_integer(BigInt::from(a))
            + t * BigRational::from_integer(BigInt::from(b - a))
    };
    [lerp(f.x, g.x), lerp(f.y, g.y), lerp(f.z, g.z)]
}

fn rsub(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn rdot(a: &[BigRational; 3], b: &[BigRational; 3]) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn rcross(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Exact squared distance between segments [a,b] and [c,d]: the interior
/// critical point of the quadratic if it lies in the unit box, otherwise
/// the best of the four boundary (point-to-segment) problems.
pub fn segment_distance_sq(
    a: &[BigRational; 3],
    b: &[BigRational; 3],
    c: &[BigRational; 3],
    d: &[BigRational; 3],
) -> BigRational {
    let u = rsub(b, a);
    let w = rsub(d, c);
    let g = rsub(a, c);
    let uu = rdot(&u, &u);
    let ww = rdot(&w, &w);
    let uw = rdot(&u, &w);
    let ug = rdot(&u, &g);
    let wg = rdot(&w, &g);
    let den = &uu * &ww - &uw * &uw;
    let one = BigRational::one();
    if den.is_positive() {
        // F(s,t) = |g + s u - t w|^2; critical point of the full quadratic
        let s = (&uw * &wg - &ww * &ug) / &den;
        let t = (&uu * &wg - &uw * &ug) / &den;
        if !s.is_negative() && s <= one && !t.is_negative() && t <= one {
            let p = [
                &g[0] + &s * &u[0] - &t * &w[0],
                &g[1] + &s * &u[1] - &t * &w[1],
                &g[2] + &s * &u[2] - &t * &w[2],
            ];
            return rdot(&p, &p);
        }
    }
    let mut best = point_segment_sq(a, c, d);
    for cand in [
        point_segment_sq(b, c, d),
        point_segment_sq(c, a, b),
        point_segment_sq(d, a, b),
    ] {
        if cand < best {
            best = cand;
        }
    }
    best
}

fn point_segment_sq(
    p: &[BigRational; 3],
    a: &[BigRational; 3],
    b: &[BigRational; 3],
) -> BigRational {
    let u = rsub(b, a);
    let v = rsub(p, a);
    let uu = rdot(&u, &u);
    let t = if uu.is_zero() {
        BigRational::zero()
    } else {
        let t = rdot(&u, &v) / &uu;
        t.max(BigRational::zero()).min(BigRational::one())
    };
    let d = [
        &v[0] - &t * &u[0],
        &v[1] - &t * &u[1],
        &v[2] - &t * &u[2],
    ];
    rdot(&d, &d)
}

/// Minimum squared separation over all non-adjacent edge pairs at all
/// sample times t = k/(samples+1). None if there is no such pair.
fn min_separation(step: &MorphStep, edges: &[Edge], samples: u32) -> Option<BigRational> {
    let q = samples as i64 + 1;
    let mut best: Option<BigRational> = None;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if shared_vertex(edges[i], edges[j]).is_some() {
                continue;
            }
            for k in 0..=q {
                let t = BigRational::new(BigInt::from(k), BigInt::from(q));
                let a = rational_pos(step, edges[i].0, &t);
                let b = rational_pos(step, edges[i].1, &t);
                let c = rational_pos(step, edges[j].0, &t);
                let d = rational_pos(step, edges[j].1, &t);
                let dist = segment_distance_sq(&a, &b, &c, &d);
                if best.as_ref().map_or(true, |m| &dist < m) {
                    best = Some(dist);
                }
            }
        }
    }
    best
}

/// Independent oracle for the minimum separation: same sample grid and
/// pair set, but distances computed from scratch by enumerating the
/// candidate closest-feature pairs (four endpoint projections plus the
/// line-line critical point) rather than by the boxed-quadratic analysis.
pub fn brute_force_min_separation(
    tree: &RootedTree,
    step: &MorphStep,
    samples: u32,
) -> Option<BigRational> {
    let edges = tree.edges();
    let q = samples as i64 + 1;
    let mut best: Option<BigRational> = None;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if shared_vertex(edges[i], edges[j]).is_some() {
                continue;
            }
            for k in 0..=q {
                let t = BigRational::new(BigInt::from(k), BigInt::from(q));
                let a = rational_pos(step, edges[i].0, &t);
                let b = rational_pos(step, edges[i].1, &t);
                let c = rational_pos(step, edges[j].0, &t);
                let d = rational_pos(step, edges[j].1, &t);
                let dist = naive_segment_distance_sq(&a, &b, &c, &d);
                if best.as_ref().map_or(true, |m| &dist < m) {
                    best = Some(dist);
                }
            }
        }
    }
    best
}

/// Distance by candidate enumeration: evaluate |P(s) - Q(t)|^2 at every
/// combination of clamped critical parameters and box corners.
fn naive_segment_distance_sq(
    a: &[BigRational; 3],
    b: &[BigRational; 3],
    c: &[BigRational; 3],
    d: &[BigRational; 3],
) -> BigRational {
    let u = rsub(b, a);
    let w = rsub(d, c);
    let g = rsub(a, c);
    let uu = rdot(&u, &u);
    let ww = rdot(&w, &w);
    let uw = rdot(&u, &w);
    let ug = rdot(&u, &g);
    let wg = rdot(&w, &g);
    let zero = BigRational::zero();
    let one = BigRational::one();
    let clamp = |v: BigRational| v.max(zero.clone()).min(one.clone());

    let mut s_cands = vec![zero.clone(), one.clone()];
    let mut t_cands = vec![zero.clone(), one.clone()];
    let den = &uu * &ww - &uw * &uw;
    if !den.is_zero() {
        s_cands.push(clamp((&uw * &wg - &ww * &ug) / &den));
        t_cands.push(clamp((&uu * &wg - &uw * &ug) / &den));
    }
    // best t for each fixed s and vice versa
    let extra_t: Vec<BigRational> = s_cands
        .iter()
        .filter(|_| !ww.is_zero())
        .map(|s| clamp((&wg + s * &uw) / &ww))
        .collect();
    let extra_s: Vec<BigRational> = t_cands
        .iter()
        .filter(|_| !uu.is_zero())
        .map(|t| clamp((t * &uw - &ug) / &uu))
        .collect();
    t_cands.extend(extra_t);
    s_cands.extend(extra_s);

    let mut best: Option<BigRational> = None;
    for s in &s_cands {
        for t in &t_cands {
            let p = [
                &g[0] + s * &u[0] - t * &w[0],
                &g[1] + s * &u[1] - t * &w[1],
                &g[2] + s * &u[2] - t * &w[2],
            ];
            let v = rdot(&p, &p);
            if best.as_ref().map_or(true, |m| &v < m) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// strict mode: locate the times where a moving pair can actually intersect

type Poly = Vec<BigRational>; // coefficients, low degree first

fn poly_eval(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_deriv(p: &Poly) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of polynomial division.
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let f = &r[dr] / lead;
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &f * &b[i];
            r[idx] = &r[idx] - delta;
        }
        r = poly_trim(r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), poly_trim(poly_deriv(p))];
    while seq.last().map_or(false, |q| q.len() > 1) {
        let n = seq.len();
        let mut r = poly_rem(&seq[n - 2], &seq[n - 1]);
        for c in &mut r {
            *c = -c.clone();
        }
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let mut signs = Vec::new();
    for p in seq {
        let v = poly_eval(p, x);
        if !v.is_zero() {
            signs.push(v.is_positive());
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval (lo, hi].
fn roots_in(seq: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Interpolate the polynomial of degree `values.len()-1` from its values
/// at t = 0, 1, 2, ... (Lagrange).
fn interpolate(values: &[BigInt]) -> Poly {
    let n = values.len();
    let mut out: Poly = vec![BigRational::zero(); n];
    for (i, v) in values.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - j) / (i - j)
        let mut basis: Poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            let jr = BigRational::from_integer(BigInt::from(j));
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - c * &jr;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(i as i64 - j as i64));
        }
        let scale = BigRational::from_integer(v.clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] = &out[k] + c * &scale;
        }
    }
    poly_trim(out)
}

/// Exact contact test for one pair at an exact rational time.
fn pair_contact_at(
    step: &MorphStep,
    ea: Edge,
    eb: Edge,
    shared: Option<VertexId>,
    t: &BigRational,
) -> bool {
    let a = rational_pos(step, ea.0, t);
    let b = rational_pos(step, ea.1, t);
    let c = rational_pos(step, eb.0, t);
    let d = rational_pos(step, eb.1, t);
    match shared {
        None => segment_distance_sq(&a, &b, &c, &d).is_zero(),
        Some(s) => {
            // orient both segments out of the shared vertex; they can only
            // meet beyond it if they are collinear and overlap forward
            let sp = rational_pos(step, s, t);
            let other = |e: Edge| if e.0 == s { e.1 } else { e.0 };
            let u = rsub(&rational_pos(step, other(ea), t), &sp);
            let w = rsub(&rational_pos(step, other(eb), t), &sp);
            let uz = u.iter().all(|c| c.is_zero());
            let wz = w.iter().all(|c| c.is_zero());
            if uz || wz {
                return true; // an edge degenerated: endpoints collided
            }
            let cr = rcross(&u, &w);
            cr.iter().all(|c| c.is_zero()) && rdot(&u, &w).is_positive()
        }
    }
}

fn det3(u: P3, w: P3, g: P3) -> i128 {
    dotc(crossc(u, w), g)
}

fn crossc(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dotc(a: P3, b: P3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Strict audit of one pair: build the polynomial whose roots are the only
/// times the pair can intersect (coplanarity for disjoint pairs, collinear
/// alignment for adjacent pairs), isolate its roots in (0,1) with a Sturm
/// sequence, and run the exact contact test at the bracketing rationals.
fn strict_check_pair(
    step: &MorphStep,
    ea: Edge,
    eb: Edge,
    shared: Option<VertexId>,
    violations: &mut Vec<Violation>,
) {
    // integer position at integer time
    let at = |v: VertexId, t: i128| -> P3 {
        let f = p3(step.from.pos[v]);
        let g = p3(step.to.pos[v]);
        [
            f[0] + (g[0] - f[0]) * t,
            f[1] + (g[1] - f[1]) * t,
            f[2] + (g[2] - f[2]) * t,
        ]
    };
    let values: Vec<BigInt> = match shared {
        None => (0..4i128)
            .map(|t| {
                let u = exact::sub(at(ea.1, t), at(ea.0, t));
                let w = exact::sub(at(eb.1, t), at(eb.0, t));
                let g = exact::sub(at(eb.0, t), at(ea.0, t));
                BigInt::from(det3(u, w, g))
            })
            .collect(),
        Some(s) => {
            let other = |e: Edge| if e.0 == s { e.1 } else { e.0 };
            (0..5i128)
                .map(|t| {
                    let u = exact::sub(at(other(ea), t), at(s, t));
                    let w = exact::sub(at(other(eb), t), at(s, t));
                    let c = crossc(u, w);
                    c.iter()
                        .map(|v| {
                            let b = BigInt::from(*v);
                            &b * &b
                        })
                        .sum::<BigInt>()
                })
                .collect()
        }
    };
    let poly = interpolate(&values);
    let flag = |t: &BigRational, violations: &mut Vec<Violation>| {
        if t.is_negative() || t > &BigRational::one() {
            return;
        }
        if pair_contact_at(step, ea, eb, shared, t) {
            let k = t.numer().try_into().unwrap_or(0i64);
            let q = t.denom().try_into().unwrap_or(1i64);
            violations.push(Violation {
                step: None,
                time: (k, q),
                kind: "crossing (strict)".into(),
                edge_a: ea,
                edge_b: eb,
            });
        }
    };
    if poly.is_empty() {
        // identically coplanar/collinear pair: fall back to a dense grid
        for k in 0..=64i64 {
            let t = BigRational::new(BigInt::from(k), BigInt::from(64));
            flag(&t, violations);
        }
        return;
    }
    if poly.len() == 1 {
        return; // nonzero constant: the pair is never coplanar
    }
    let seq = sturm_sequence(&poly);
    let mut stack = vec![(BigRational::zero(), BigRational::one(), 0usize)];
    while let Some((lo, hi, depth)) = stack.pop() {
        if roots_in(&seq, &lo, &hi) == 0 {
            // the polynomial may still vanish exactly at lo (half-open count)
            if poly_eval(&poly, &lo).is_zero() {
                flag(&lo, violations);
            }
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if poly_eval(&poly, &mid).is_zero() {
            flag(&mid, violations);
        }
        if depth >= 24 || roots_in(&seq, &lo, &hi) == 1 {
            // bracketed: test the rational endpoints and midpoint
            flag(&lo, violations);
            flag(&mid, violations);
            flag(&hi, violations);
            if depth >= 24 {
                continue;
            }
        }
        stack.push((lo, mid.clone(), depth + 1));
        stack.push((mid, hi, depth + 1));
    }
}

// ---------------------------------------------------------------------------

/// Check an entire trace. Verifies chaining and moved-set consistency,
/// checks the initial drawing in full, then checks every step with the
/// sampled exact predicates, skipping edge pairs whose conservative
/// per-step bounding boxes cannot meet.
pub fn check_trace(tree: &RootedTree, trace: &MorphTrace, opts: &CheckOptions) -> VerificationReport {
    let mut violations = Vec::new();
    let mut chained = true;

    // chaining and moved-set consistency
    let mut prev = &trace.initial;
    for s in &trace.steps {
        if s.from != *prev {
            chained = false;
        }
        for v in 0..tree.n {
            if !s.moved.contains(&v) && s.from.pos[v] != s.to.pos[v] {
                chained = false;
            }
        }
        prev = &s.to;
    }

    // initial drawing: full check
    for v in check_drawing(tree, &trace.initial) {
        violations.push(v);
    }

    let edges = tree.edges();
    let q = opts.samples as i128 + 1;
    for (si, step) in trace.steps.iter().enumerate() {
        let moved: Vec<bool> = {
            let mut m = vec![false; tree.n];
            for &v in &step.moved {
                m[v] = true;
            }
            m
        };
        let edge_moving: Vec<bool> = edges.iter().map(|e| moved[e.0] || moved[e.1]).collect();
        // conservative per-edge box over the whole step: hull of both ends
        let boxes: Vec<(GridPoint, GridPoint)> = edges
            .iter()
            .map(|&(u, v)| {
                let pts = [
                    step.from.pos[u],
                    step.from.pos[v],
                    step.to.pos[u],
                    step.to.pos[v],
                ];
                let mut lo = pts[0];
                let mut hi = pts[0];
                for p in &pts[1..] {
                    lo.x = lo.x.min(p.x);
                    lo.y = lo.y.min(p.y);
                    lo.z = lo.z.min(p.z);
                    hi.x = hi.x.max(p.x);
                    hi.y = hi.y.max(p.y);
                    hi.z = hi.z.max(p.z);
                }
                (lo, hi)
            })
            .collect();
        let boxes_meet = |i: usize, j: usize| -> bool {
            let (alo, ahi) = boxes[i];
            let (blo, bhi) = boxes[j];
            alo.x <= bhi.x
                && blo.x <= ahi.x
                && alo.y <= bhi.y
                && blo.y <= ahi.y
                && alo.z <= bhi.z
                && blo.z <= ahi.z
        };

        // vertex injectivity only needs pairs with a moving member; checking
        // all vertices per sample is cheap enough and simpler
        for k in 0..=q {
            let mut pts: Vec<(P3, VertexId)> = (0..tree.n)
                .map(|v| {
                    let f = p3(step.from.pos[v]);
                    let t = p3(step.to.pos[v]);
                    (
                        [
                            f[0] * (q - k) + t[0] * k,
                            f[1] * (q - k) + t[1] * k,
                            f[2] * (q - k) + t[2] * k,
                        ],
                        v,
                    )
                })
                .collect();
            pts.sort_unstable();
            for w in pts.windows(2) {
                if w[0].0 == w[1].0 {
                    violations.push(Violation {
                        step: Some(si),
                        time: (k as i64, q as i64),
                        kind: format!("coincident vertices {} and {}", w[0].1, w[1].1),
                        edge_a: (w[0].1, w[0].1),
                        edge_b: (w[1].1, w[1].1),
                    });
                }
            }
        }

        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                // static pairs were verified inductively at the previous
                // step's end (and initially in full)
                if !edge_moving[i] && !edge_moving[j] {
                    continue;
                }
                if !boxes_meet(i, j) {
                    continue;
                }
                let (ea, eb) = (edges[i], edges[j]);
                let shared = shared_vertex(ea, eb);
                for k in 0..=q {
                    let (a, b) = scaled_edge(step, ea, k, q);
                    let (c, d) = scaled_edge(step, eb, k, q);
                    let allowed = shared.map(|v| {
                        let f = p3(step.from.pos[v]);
                        let t = p3(step.to.pos[v]);
                        [
                            f[0] * (q - k) + t[0] * k,
                            f[1] * (q - k) + t[1] * k,
                            f[2] * (q - k) + t[2] * k,
                        ]
                    });
                    if exact::segments_contact(a, b, c, d, allowed) == Contact::Violation {
                        violations.push(Violation {
                            step: Some(si),
                            time: (k as i64, q as i64),
                            kind: "crossing".into(),
                            edge_a: ea,
                            edge_b: eb,
                        });
                    }
                }
                if opts.strict {
                    let before = violations.len();
                    strict_check_pair(step, ea, eb, shared, &mut violations);
                    for v in &mut violations[before..] {
                        v.step = Some(si);
                    }
                }
            }
        }
    }

    // separation, if requested, over every step in full
    let min_separation_sq = if opts.with_separation {
        let mut best: Option<BigRational> = None;
        for step in &trace.steps {
            if let Some(m) = min_separation(step, &edges, opts.samples) {
                if best.as_ref().map_or(true, |b| &m < b) {
                    best = Some(m);
                }
            }
        }
        best
    } else {
        None
    };

    // geometry bounds
    let mut lo = GridPoint::new(i64::MAX, i64::MAX, i64::MAX);
    let mut hi = GridPoint::new(i64::MIN, i64::MIN, i64::MIN);
    let mut consider = |d: &GridDrawing| {
        let (l, h) = d.bounding_box();
        lo.x = lo.x.min(l.x);
        lo.y = lo.y.min(l.y);
        lo.z = lo.z.min(l.z);
        hi.x = hi.x.max(h.x);
        hi.y = hi.y.max(h.y);
        hi.z = hi.z.max(h.z);
    };
    consider(&trace.initial);
    for s in &trace.steps {
        consider(&s.to);
    }
    let bbox_within_bound = opts
        .bbox
        .map(|(blo, bhi)| {
            lo.x >= blo.x
                && lo.y >= blo.y
                && lo.z >= blo.z
                && hi.x <= bhi.x
                && hi.y <= bhi.y
                && hi.z <= bhi.z
        });
    let steps_within_bound = opts.max_steps.map(|m| trace.steps.len() <= m);

    let crossing_free = violations.is_empty();
    let ok = chained
        && crossing_free
        && bbox_within_bound.unwrap_or(true)
        && steps_within_bound.unwrap_or(true);
    VerificationReport {
        ok,
        chained,
        integral: true, // positions are integer-typed end to end
        crossing_free,
        steps: trace.steps.len(),
        steps_within_bound,
        bbox_lo: lo,
        bbox_hi: hi,
        bbox_within_bound,
        min_separation_sq: min_separation_sq.map(|m| format!("{}/{}", m.numer(), m.denom())),
        violations,
    }
}
