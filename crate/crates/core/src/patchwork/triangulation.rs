//! Lattice triangulations of the Newton triangle: validation, regular
//! subdivisions from heights, random convex primitive triangulations and
//! convexity certificates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::geometry::{
    convexity_coefficients, edge_on_newton_boundary, in_newton_triangle, newton_triangle_points, orient, Lift,
    Point,
};
use super::lp::{feasibility, Feasibility};
use super::PatchworkError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub d: u32,
    pub vertices: Vec<Point>,
    /// Counter-clockwise vertex index triples.
    pub triangles: Vec<[usize; 3]>,
    /// Lifting values aligned with `vertices`, when known.
    pub heights: Option<Vec<BigRational>>,
}

/// An interior edge `ab` with `abc` counter-clockwise on one side and `bae`
/// on the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InteriorEdge {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub e: usize,
}

fn malformed(msg: impl Into<alloc::string::String>) -> PatchworkError {
    PatchworkError::Malformed(msg.into())
}

impl Triangulation {
    /// Validates that the triangles tile the Newton triangle; orientations
    /// are normalised to counter-clockwise.
    pub fn new(
        d: u32,
        vertices: Vec<Point>,
        mut triangles: Vec<[usize; 3]>,
        heights: Option<Vec<BigRational>>,
    ) -> Result<Self, PatchworkError> {
        if d < 1 {
            return Err(PatchworkError::DegreeTooSmall(d));
        }
        let mut seen = BTreeSet::new();
        for &p in &vertices {
            if !in_newton_triangle(p, d) {
                return Err(malformed(format!("vertex {p:?} lies outside the Newton triangle")));
            }
            if !seen.insert(p) {
                return Err(malformed(format!("duplicate vertex {p:?}")));
            }
        }
        if let Some(h) = &heights {
            if h.len() != vertices.len() {
                return Err(PatchworkError::HeightCount { expected: vertices.len(), got: h.len() });
            }
        }
        let mut area = 0i64;
        let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, tri) in triangles.iter_mut().enumerate() {
            if tri.iter().any(|&v| v >= vertices.len()) {
                return Err(malformed(format!("triangle {t} has an out-of-range vertex")));
            }
            let o = orient(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
            if o == 0 {
                return Err(malformed(format!("triangle {t} is degenerate")));
            }
            if o < 0 {
                tri.swap(1, 2);
            }
            area += o.abs();
            for k in 0..3 {
                let e = (tri[k], tri[(k + 1) % 3]);
                if directed.insert(e, t).is_some() {
                    return Err(malformed(format!("triangles overlap along edge {e:?}")));
                }
            }
        }
        let dd = i64::from(d);
        if area != dd * dd {
            return Err(malformed(format!("doubled area {area} differs from {}", dd * dd)));
        }
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) && !edge_on_newton_boundary(vertices[a], vertices[b], d) {
                return Err(malformed(format!("edge {a}-{b} has a triangle on one side only")));
            }
        }
        Ok(Triangulation { d, vertices, triangles, heights })
    }

    pub fn triangle_points(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn vertex_index(&self, p: Point) -> Option<usize> {
        self.vertices.iter().position(|&q| q == p)
    }

    /// Every triangle has area 1/2.
    pub fn all_triangles_unimodular(&self) -> bool {
        (0..self.triangles.len()).all(|t| {
            let [a, b, c] = self.triangle_points(t);
            orient(a, b, c) == 1
        })
    }

    /// Every lattice point of the Newton triangle is a vertex.
    pub fn uses_all_lattice_points(&self) -> bool {
        let d = u64::from(self.d);
        self.vertices.len() as u64 == (d + 1) * (d + 2) / 2
    }

    /// Primitive in the area sense; the vertex criterion is equivalent by
    /// Pick's theorem and is asserted alongside in debug builds.
    pub fn is_primitive(&self) -> bool {
        let by_area = self.all_triangles_unimodular();
        debug_assert_eq!(by_area, self.uses_all_lattice_points());
        by_area
    }

    pub fn interior_edges(&self) -> Vec<InteriorEdge> {
        let mut third: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for tri in &self.triangles {
            for k in 0..3 {
                third.insert((tri[k], tri[(k + 1) % 3]), tri[(k + 2) % 3]);
            }
        }
        third
            .iter()
            .filter(|&(&(a, b), _)| a < b)
            .filter_map(|(&(a, b), &c)| third.get(&(b, a)).map(|&e| InteriorEdge { a, b, c, e }))
            .collect()
    }

    /// Undirected edges, each once as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }

    pub fn has_edge(&self, p: Point, q: Point) -> bool {
        match (self.vertex_index(p), self.vertex_index(q)) {
            (Some(a), Some(b)) => self.triangles.iter().any(|t| t.contains(&a) && t.contains(&b)),
            _ => false,
        }
    }
}

/// The regular subdivision induced by the lower hull of the lifted lattice
/// points. `heights` is aligned with [`newton_triangle_points`]. Fails when
/// some cell is not a triangle.
pub fn triangulation_from_heights(d: u32, heights: &[BigRational]) -> Result<Triangulation, PatchworkError> {
    let pts = newton_triangle_points(d)?;
    if heights.len() != pts.len() {
        return Err(PatchworkError::HeightCount { expected: pts.len(), got: heights.len() });
    }
    let lift = Lift::from_rationals(heights);
    let tris = lower_hull(&pts, d, &lift)?;
    let mut used: Vec<usize> = tris.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    used.sort_unstable();
    let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let vertices = used.iter().map(|&v| pts[v]).collect();
    let hs = used.iter().map(|&v| heights[v].clone()).collect();
    let triangles = tris.iter().map(|t| [remap[&t[0]], remap[&t[1]], remap[&t[2]]]).collect();
    Triangulation::new(d, vertices, triangles, Some(hs))
}

/// Gift-wrapping over the lower hull, starting from the bottom side.
fn lower_hull(pts: &[Point], d: u32, lift: &Lift) -> Result<Vec<[usize; 3]>, PatchworkError> {
    let n = pts.len();
    // first hull edge along the bottom side from the origin: minimal slope
    let origin = 0usize;
    let bottom: Vec<usize> = (0..n).filter(|&v| pts[v].1 == 0 && v != origin).collect();
    let mut start = bottom[0];
    for &q in &bottom[1..] {
        match lift.slope_cmp(origin, q, pts[q].0, start, pts[start].0) {
            Ordering::Less => start = q,
            Ordering::Equal => return Err(PatchworkError::NonGeneric),
            Ordering::Greater => {}
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut stack = vec![(origin, start)];
    let mut tris = Vec::new();
    let max_tris = 2 * (d as usize) * (d as usize);
    while let Some((a, b)) = stack.pop() {
        if done.contains(&(a, b)) {
            continue;
        }
        let mut best: Option<usize> = None;
        for c in 0..n {
            if orient(pts[a], pts[b], pts[c]) <= 0 {
                continue;
            }
            best = Some(match best {
                None => c,
                Some(cur) => {
                    if lift.side(pts, a, b, cur, c) == Ordering::Less {
                        c
                    } else {
                        cur
                    }
                }
            });
        }
        let Some(c) = best else { continue };
        for p in 0..n {
            if p == a || p == b || p == c {
                continue;
            }
            match lift.side(pts, a, b, c, p) {
                Ordering::Greater => {}
                Ordering::Equal => return Err(PatchworkError::NonGeneric),
                Ordering::Less => return Err(malformed("lower hull walk left the hull")),
            }
        }
        for e in [(a, b), (b, c), (c, a)] {
            if !done.insert(e) {
                return Err(malformed("lower hull face visited twice"));
            }
        }
        tris.push([a, b, c]);
        if tris.len() > max_tris {
            return Err(malformed("lower hull has too many faces"));
        }
        stack.push((c, b));
        stack.push((a, c));
        stack.push((b, a));
    }
    Ok(tris)
}

/// Scale separating the convex part of random heights from the tie-breaking
/// noise.
const NOISE_SCALE: i64 = 1 << 20;
const MAX_RESAMPLES: usize = 16;

fn seed_for(d: u32, seed: u64) -> u64 {
    seed ^ u64::from(d).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Heights `D (Q + tents) + noise` with `Q` a random positive definite
/// integral quadratic form and tents `max(0, l)` for random integral affine
/// `l`.
fn random_convex_heights(d: u32, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let pts = newton_triangle_points(d).expect("d >= 1");
    let a: i64 = rng.gen_range(1..=4);
    let c: i64 = rng.gen_range(1..=4);
    let bound = (2.0 * libm::sqrt((a * c) as f64)) as i64;
    let b: i64 = rng.gen_range(-bound..=bound);
    let b = if b * b >= 4 * a * c { 0 } else { b };
    let dd = i64::from(d);
    let tents: Vec<(i64, i64, i64)> = (0..d)
        .map(|_| {
            let al: i64 = rng.gen_range(-3..=3);
            let be: i64 = rng.gen_range(-3..=3);
            let ga: i64 = rng.gen_range(-3 * dd..=3 * dd);
            (al, be, ga)
        })
        .collect();
    pts.iter()
        .map(|&(x, y)| {
            let q = a * x * x + b * x * y + c * y * y;
            let t: i64 = tents.iter().map(|&(al, be, ga)| (al * x + be * y + ga).max(0)).sum();
            let noise: i64 = rng.gen_range(0..NOISE_SCALE);
            BigRational::from_integer(BigInt::from(NOISE_SCALE) * (q + t) + noise)
        })
        .collect()
}

/// A primitive convex triangulation determined by `(d, seed)`.
pub fn random_convex_primitive_triangulation(d: u32, seed: u64) -> Result<Triangulation, PatchworkError> {
    if d < 1 {
        return Err(PatchworkError::DegreeTooSmall(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(d, seed));
    for _ in 0..MAX_RESAMPLES {
        let heights = random_convex_heights(d, &mut rng);
        match triangulation_from_heights(d, &heights) {
            Ok(t) if t.is_primitive() => return Ok(t),
            Ok(_) | Err(PatchworkError::NonGeneric) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(PatchworkError::NonGeneric)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSource {
    /// The triangulation's own heights pass the edge test.
    GivenHeights,
    /// Heights found by exact linear programming.
    LinearProgram,
}

/// Heights whose lift is strictly convex across every interior edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityCertificate {
    pub heights: Vec<BigRational>,
    pub source: CertificateSource,
}

impl ConvexityCertificate {
    /// Re-evaluates every edge inequality.
    pub fn verify(&self, t: &Triangulation) -> bool {
        self.heights.len() == t.vertices.len() && edges_strictly_convex(t, &self.heights)
    }
}

/// Farkas multipliers over the interior edges proving that no heights make
/// every edge strictly convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotConvex {
    pub edges: Vec<InteriorEdge>,
    pub multipliers: Vec<BigRational>,
}

impl NotConvex {
    /// Checks `y >= 0`, `sum y > 0` and that `sum_e y_e coef_e` is
    /// non-negative on every vertex whose height is free.
    pub fn verify(&self, t: &Triangulation) -> bool {
        if self.edges.len() != self.multipliers.len() || self.multipliers.iter().any(|y| y.is_negative()) {
            return false;
        }
        if !self.multipliers.iter().sum::<BigRational>().is_positive() {
            return false;
        }
        let fixed = corner_indices(t);
        let mut combo = vec![BigRational::zero(); t.vertices.len()];
        for (e, y) in self.edges.iter().zip(&self.multipliers) {
            for (v, coef) in convexity_coefficients(&t.vertices, e.a, e.b, e.c, e.e) {
                combo[v] += y * BigRational::from_integer(coef.into());
            }
        }
        combo
            .iter()
            .enumerate()
            .all(|(v, s)| fixed.contains(&v) || !s.is_negative())
    }
}

fn corner_indices(t: &Triangulation) -> Vec<usize> {
    let d = i64::from(t.d);
    [(0, 0), (d, 0), (0, d)]
        .iter()
        .filter_map(|&p| t.vertex_index(p))
        .collect()
}

fn edges_strictly_convex(t: &Triangulation, heights: &[BigRational]) -> bool {
    t.interior_edges().iter().all(|e| {
        let v: BigRational = convexity_coefficients(&t.vertices, e.a, e.b, e.c, e.e)
            .iter()
            .map(|&(v, coef)| &heights[v] * BigRational::from_integer(coef.into()))
            .sum();
        v.is_positive()
    })
}

/// Certifies that `t` is regular. Uses the stored heights when they work,
/// otherwise solves the edge inequalities exactly.
///
/// Heights are normalised by pinning the three corners to zero; convexity
/// then forces every other height to be non-positive, so the search runs
/// over `g = -h >= 0`.
pub fn certify_convexity(t: &Triangulation) -> Result<ConvexityCertificate, NotConvex> {
    if let Some(h) = &t.heights {
        if edges_strictly_convex(t, h) {
            return Ok(ConvexityCertificate { heights: h.clone(), source: CertificateSource::GivenHeights });
        }
    }
    let edges = t.interior_edges();
    let fixed = corner_indices(t);
    let free: Vec<usize> = (0..t.vertices.len()).filter(|v| !fixed.contains(v)).collect();
    let column: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let rows: Vec<Vec<BigRational>> = edges
        .iter()
        .map(|e| {
            let mut row = vec![BigRational::zero(); free.len()];
            for (v, coef) in convexity_coefficients(&t.vertices, e.a, e.b, e.c, e.e) {
                if let Some(&k) = column.get(&v) {
                    row[k] -= BigRational::from_integer(coef.into());
                }
            }
            row
        })
        .collect();
    match feasibility(&rows, free.len()) {
        Feasibility::Feasible(g) => {
            let mut heights = vec![BigRational::zero(); t.vertices.len()];
            for (k, &v) in free.iter().enumerate() {
                heights[v] = -g[k].clone();
            }
            let cert = ConvexityCertificate { heights, source: CertificateSource::LinearProgram };
            debug_assert!(cert.verify(t));
            Ok(cert)
        }
        Feasibility::Infeasible(multipliers) => Err(NotConvex { edges, multipliers }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_heights(v: impl IntoIterator<Item = i64>) -> Vec<BigRational> {
        v.into_iter().map(|x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn quadratic_lift_is_primitive() {
        for d in 1..=6u32 {
            let pts = newton_triangle_points(d).unwrap();
            // i^2 + j^2 scaled, plus distinct powers of two to break ties
            let h = int_heights(pts.iter().enumerate().map(|(k, &(i, j))| (1 << 40) * (i * i + j * j) + (1 << k)));
            let t = triangulation_from_heights(d, &h).unwrap();
            assert!(t.is_primitive());
            assert_eq!(t.triangles.len() as u32, d * d);
            assert_eq!(certify_convexity(&t).unwrap().source, CertificateSource::GivenHeights);
        }
    }

    #[test]
    fn constant_heights_rejected() {
        let h = int_heights(core::iter::repeat_n(5, 10));
        assert_eq!(triangulation_from_heights(3, &h), Err(PatchworkError::NonGeneric));
        assert!(matches!(
            triangulation_from_heights(3, &h[..4]),
            Err(PatchworkError::HeightCount { expected: 10, got: 4 })
        ));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_convex_primitive_triangulation(3, 1).unwrap();
        let b = random_convex_primitive_triangulation(3, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.triangles.len(), 9);
        assert!(certify_convexity(&a).unwrap().verify(&a));
    }

    #[test]
    fn lp_certifies_without_heights() {
        let mut t = random_convex_primitive_triangulation(4, 7).unwrap();
        t.heights = None;
        let cert = certify_convexity(&t).unwrap();
        assert_eq!(cert.source, CertificateSource::LinearProgram);
        assert!(cert.verify(&t));
    }

    #[test]
    fn validation_rejects_overlap() {
        let v = vec![(0, 0), (1, 0), (0, 1)];
        assert!(Triangulation::new(1, v.clone(), vec![[0, 1, 2]], None).is_ok());
        assert!(Triangulation::new(1, v.clone(), vec![[0, 1, 2], [0, 2, 1]], None).is_err());
        assert!(Triangulation::new(1, v, vec![], None).is_err());
    }
}
