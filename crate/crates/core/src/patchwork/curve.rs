//! Sign distributions, the glued curve on four reflected copies of the
//! Newton triangle, and the real scheme of that curve.
//!
//! The copies `(ex, ey) . Delta_d` tile the diamond `|x| + |y| <= d`, whose
//! boundary is glued to itself antipodally; the quotient is the real
//! projective plane. A vertex `(i, j)` carries the sign
//! `s(i, j) ex^i ey^j` in copy `(ex, ey)`. For odd `d` the two copies of a
//! boundary vertex disagree, so signs are only ever compared inside one
//! copy.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::geometry::Point;
use super::triangulation::{certify_convexity, ConvexityCertificate, Triangulation};
use super::PatchworkError;
use crate::scheme::{Node, RealScheme};

/// Quadrant copies in counter-clockwise order starting with the positive
/// quadrant.
pub const COPIES: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

/// One sign per triangulation vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignDistribution {
    signs: Vec<i8>,
}

impl SignDistribution {
    pub fn new(signs: Vec<i8>) -> Result<Self, PatchworkError> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(PatchworkError::BadSign(bad.into()));
        }
        Ok(SignDistribution { signs })
    }

    pub fn all_plus(n: usize) -> Self {
        SignDistribution { signs: vec![1; n] }
    }

    /// Bit `k` of `bits` set means vertex `k` is negative.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        SignDistribution { signs: (0..n).map(|k| if (bits >> k) & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        SignDistribution { signs: (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect() }
    }

    pub fn from_fn(vertices: &[Point], f: impl Fn(Point) -> i8) -> Result<Self, PatchworkError> {
        Self::new(vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.signs
    }

    pub fn get(&self, v: usize) -> i8 {
        self.signs[v]
    }

    pub fn negated(&self) -> Self {
        SignDistribution { signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// `s(i, j) alpha^i beta^j`: the signs seen in another quadrant.
    pub fn twisted(&self, vertices: &[Point], alpha: i8, beta: i8) -> Self {
        let signs = self
            .signs
            .iter()
            .zip(vertices)
            .map(|(&s, &(i, j))| s * parity_sign(alpha, i) * parity_sign(beta, j))
            .collect();
        SignDistribution { signs }
    }
}

fn parity_sign(base: i8, exp: i64) -> i8 {
    if base < 0 && exp % 2 != 0 {
        -1
    } else {
        1
    }
}

/// Edge of the diamond after boundary identification, as its two endpoints.
pub type EdgeKey = (Point, Point);

/// A triangle of one quadrant copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub triangle: usize,
    pub copy: usize,
    /// Diamond coordinates.
    pub points: [Point; 3],
    pub signs: [i8; 3],
}

impl Cell {
    /// Index of the vertex whose sign differs from the other two.
    pub fn lone_vertex(&self) -> Option<usize> {
        let [a, b, c] = self.signs;
        if a == b && b == c {
            None
        } else if a == b {
            Some(2)
        } else if a == c {
            Some(1)
        } else {
            Some(0)
        }
    }
}

/// Piece of the curve inside one cell, joining the midpoints of the two
/// edges whose endpoints change sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub cell: usize,
    pub ends: [EdgeKey; 2],
    /// Midpoints in doubled diamond coordinates.
    pub from: Point,
    pub to: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkCurve {
    pub d: u32,
    pub cells: Vec<Cell>,
    pub segments: Vec<Segment>,
    /// False when built without a convexity certificate; such a curve is
    /// not a T-curve.
    pub certified: bool,
}

fn on_rim(p: Point, d: i64) -> bool {
    p.0.abs() + p.1.abs() == d
}

/// Vertex after antipodal identification of the rim.
pub fn vertex_id(p: Point, d: u32) -> Point {
    let q = (-p.0, -p.1);
    if on_rim(p, d.into()) && q < p {
        q
    } else {
        p
    }
}

pub fn edge_key(p: Point, q: Point, d: u32) -> EdgeKey {
    let sorted = |a: Point, b: Point| if a <= b { (a, b) } else { (b, a) };
    let key = sorted(p, q);
    if on_rim(p, d.into()) && on_rim(q, d.into()) {
        key.min(sorted((-p.0, -p.1), (-q.0, -q.1)))
    } else {
        key
    }
}

/// Glues the curve of a certified triangulation.
pub fn build_patchwork(t: &Triangulation, s: &SignDistribution) -> Result<PatchworkCurve, PatchworkError> {
    let cert = certify_convexity(t).map_err(|_| PatchworkError::NotConvex)?;
    build_patchwork_certified(t, s, &cert)
}

/// As [`build_patchwork`], reusing a certificate already obtained for `t`.
pub fn build_patchwork_certified(
    t: &Triangulation,
    s: &SignDistribution,
    cert: &ConvexityCertificate,
) -> Result<PatchworkCurve, PatchworkError> {
    if cert.heights.len() != t.vertices.len() {
        return Err(PatchworkError::NotConvex);
    }
    debug_assert!(cert.verify(t));
    glue(t, s, true)
}

/// Glues without checking convexity; the result is flagged uncertified.
pub fn build_patchwork_uncertified(t: &Triangulation, s: &SignDistribution) -> Result<PatchworkCurve, PatchworkError> {
    glue(t, s, false)
}

fn glue(t: &Triangulation, s: &SignDistribution, certified: bool) -> Result<PatchworkCurve, PatchworkError> {
    if !t.is_primitive() {
        return Err(PatchworkError::NotPrimitive);
    }
    if s.len() != t.vertices.len() {
        return Err(PatchworkError::SignCount { expected: t.vertices.len(), got: s.len() });
    }
    let d = t.d;
    let mut cells = Vec::with_capacity(4 * t.triangles.len());
    let mut segments = Vec::new();
    for (ti, tri) in t.triangles.iter().enumerate() {
        for (ci, &(ex, ey)) in COPIES.iter().enumerate() {
            let mut points = [(0, 0); 3];
            let mut signs = [0i8; 3];
            for k in 0..3 {
                let (i, j) = t.vertices[tri[k]];
                points[k] = (ex * i, ey * j);
                signs[k] = s.get(tri[k]) * parity_sign(ex as i8, i) * parity_sign(ey as i8, j);
            }
            let cell = Cell { triangle: ti, copy: ci, points, signs };
            if let Some(l) = cell.lone_vertex() {
                let (p, q, r) = (points[l], points[(l + 1) % 3], points[(l + 2) % 3]);
                segments.push(Segment {
                    cell: cells.len(),
                    ends: [edge_key(p, q, d), edge_key(p, r, d)],
                    from: (p.0 + q.0, p.1 + q.1),
                    to: (p.0 + r.0, p.1 + r.1),
                });
            }
            cells.push(cell);
        }
    }
    Ok(PatchworkCurve { d, cells, segments, certified })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn topology(msg: &'static str) -> PatchworkError {
    PatchworkError::Topology(msg)
}

/// Traces the components of the curve and nests the ovals by the
/// complement regions they separate.
pub fn extract_scheme(curve: &PatchworkCurve) -> Result<RealScheme, PatchworkError> {
    let d = curve.d;
    let mut vid: BTreeMap<Point, usize> = BTreeMap::new();
    for cell in &curve.cells {
        for &p in &cell.points {
            let n = vid.len();
            vid.entry(vertex_id(p, d)).or_insert(n);
        }
    }
    let v_of = |p: Point| vid[&vertex_id(p, d)];

    // regions of the complement: vertices joined by equal-sign edges
    let mut regions_uf = UnionFind::new(vid.len());
    for cell in &curve.cells {
        for k in 0..3 {
            let l = (k + 1) % 3;
            if cell.signs[k] == cell.signs[l] {
                regions_uf.union(v_of(cell.points[k]), v_of(cell.points[l]));
            }
        }
    }
    let mut region_of_vertex: Vec<usize> = (0..vid.len()).map(|v| regions_uf.find(v)).collect();
    let mut region_ids: BTreeMap<usize, usize> = BTreeMap::new();
    for r in region_of_vertex.iter_mut() {
        let n = region_ids.len();
        *r = *region_ids.entry(*r).or_insert(n);
    }
    let region_count = region_ids.len();
    let region = |p: Point| region_of_vertex[v_of(p)];

    // components: segments sharing a midpoint
    let mut at_midpoint: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (k, seg) in curve.segments.iter().enumerate() {
        for e in seg.ends {
            at_midpoint.entry(e).or_default().push(k);
        }
    }
    let mut comp_uf = UnionFind::new(curve.segments.len());
    for segs in at_midpoint.values() {
        if segs.len() != 2 {
            return Err(topology("a curve midpoint is not shared by exactly two segments"));
        }
        comp_uf.union(segs[0], segs[1]);
    }

    // sides of each component
    let mut sides: BTreeMap<usize, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (k, seg) in curve.segments.iter().enumerate() {
        let cell = &curve.cells[seg.cell];
        let l = cell.lone_vertex().expect("segment cells change sign");
        let lone = region(cell.points[l]);
        let pair = region(cell.points[(l + 1) % 3]);
        sides.entry(comp_uf.find(k)).or_default().insert((lone.min(pair), lone.max(pair)));
    }
    let mut pseudolines = Vec::new();
    let mut ovals: Vec<(usize, usize)> = Vec::new();
    for set in sides.values() {
        let &(a, b) = set.iter().next().expect("nonempty component");
        if set.len() != 1 {
            return Err(topology("a component borders more than two regions"));
        }
        if a == b {
            pseudolines.push(a);
        } else {
            ovals.push((a, b));
        }
    }
    if pseudolines.len() != usize::from(d % 2 == 1) {
        return Err(topology("one-sided component count does not match the degree parity"));
    }
    if region_count != ovals.len() + 1 {
        return Err(topology("complement regions do not form a tree over the ovals"));
    }
    let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); region_count];
    for (o, &(a, b)) in ovals.iter().enumerate() {
        adjacent[a].push((o, b));
        adjacent[b].push((o, a));
    }

    let root = match pseudolines.first() {
        Some(&r) => r,
        None => outer_region(curve, &region, region_count, &adjacent)?,
    };

    let mut seen = vec![false; region_count];
    let top = nest(root, None, &adjacent, &mut seen);
    if seen.iter().any(|s| !s) {
        return Err(topology("complement regions are disconnected"));
    }
    Ok(RealScheme::from_ovals(top, !pseudolines.is_empty()).canonical())
}

fn nest(region: usize, via: Option<usize>, adjacent: &[Vec<(usize, usize)>], seen: &mut [bool]) -> Vec<Node> {
    seen[region] = true;
    adjacent[region]
        .iter()
        .filter(|&&(o, _)| Some(o) != via)
        .map(|&(o, inner)| Node::with_children(nest(inner, Some(o), adjacent, seen)))
        .collect()
}

/// The non-orientable region for even degree. Counting open cells gives
/// the compactly supported Euler characteristic: a disc bounded by `deg`
/// ovals has `2 - deg`, while the plane minus `deg` discs has `1 - deg`.
fn outer_region(
    curve: &PatchworkCurve,
    region: &impl Fn(Point) -> usize,
    region_count: usize,
    adjacent: &[Vec<(usize, usize)>],
) -> Result<usize, PatchworkError> {
    let d = curve.d;
    let mut chi = vec![0i64; region_count];
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for cell in &curve.cells {
        for k in 0..3 {
            let p = cell.points[k];
            if vertices.insert(vertex_id(p, d)) {
                chi[region(p)] += 1;
            }
            let q = cell.points[(k + 1) % 3];
            if edges.insert(edge_key(p, q, d)) {
                if cell.signs[k] == cell.signs[(k + 1) % 3] {
                    chi[region(p)] -= 1;
                } else {
                    chi[region(p)] -= 1;
                    chi[region(q)] -= 1;
                }
            }
        }
        match cell.lone_vertex() {
            None => chi[region(cell.points[0])] += 1,
            Some(l) => {
                chi[region(cell.points[l])] += 1;
                chi[region(cell.points[(l + 1) % 3])] += 1;
            }
        }
    }
    let outer: Vec<usize> = (0..region_count)
        .filter(|&r| chi[r] == 1 - adjacent[r].len() as i64)
        .collect();
    let inner_ok = (0..region_count)
        .filter(|r| !outer.contains(r))
        .all(|r| chi[r] == 2 - adjacent[r].len() as i64);
    match (outer.as_slice(), inner_ok) {
        (&[r], true) => Ok(r),
        _ => Err(topology("could not identify the non-orientable region")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::patchwork::{newton_triangle_points, random_convex_primitive_triangulation, Triangulation};

    fn line() -> Triangulation {
        Triangulation::new(1, newton_triangle_points(1).unwrap(), vec![[0, 1, 2]], None).unwrap()
    }

    #[test]
    fn line_is_a_pseudoline() {
        let t = line();
        for bits in 0..8 {
            let s = SignDistribution::from_bits(3, bits);
            let c = build_patchwork(&t, &s).unwrap();
            assert_eq!(extract_scheme(&c).unwrap().to_string(), "J");
        }
    }

    #[test]
    fn line_all_plus_copies() {
        let c = build_patchwork(&line(), &SignDistribution::all_plus(3)).unwrap();
        let copies: BTreeSet<usize> = c.segments.iter().map(|s| c.cells[s.cell].copy).collect();
        assert_eq!(copies.len(), 3);
        assert!(!copies.contains(&0));
    }

    #[test]
    fn global_flip_keeps_segments() {
        let t = random_convex_primitive_triangulation(4, 3).unwrap();
        let s = SignDistribution::from_bits(t.vertices.len(), 0x5a5a);
        let a = build_patchwork(&t, &s).unwrap();
        let b = build_patchwork(&t, &s.negated()).unwrap();
        assert_eq!(a.segments, b.segments);
    }

    #[test]
    fn conic_positive_quadrant_empty() {
        let t = random_convex_primitive_triangulation(2, 0).unwrap();
        let c = build_patchwork(&t, &SignDistribution::all_plus(6)).unwrap();
        assert!(c.segments.iter().all(|s| c.cells[s.cell].copy != 0));
    }

    #[test]
    fn bad_signs_rejected() {
        assert!(SignDistribution::new(vec![1, 0]).is_err());
        let err = build_patchwork(&line(), &SignDistribution::all_plus(2));
        assert!(matches!(err, Err(PatchworkError::SignCount { expected: 3, got: 2 })));
    }
}
