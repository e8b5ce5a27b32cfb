//! Maximal T-curves from a zone subdivision of the Newton triangle.
//!
//! For `d >= 12` put `k = floor(d/6) - 1` and `K = k + 1`. Two families of
//! broken lines cut `Delta_d` into zones:
//!
//! - tents `A_j B_j C_j` (`j = 1..=k`) with `A_j = (5j, 0)`,
//!   `B_j = (5j + 1, 6(K - j) - 2)`, `C_j = (6K - j, 0)`;
//! - wedges `D_j E_j A_{j+1}` (`j = 0..=k`) with `D_j = (5j + 1, 0)`,
//!   `E_j = (5j + 2, 6(K - j) - 4)`.
//!
//! Wedge `j < k` is further cut by `D_j E_j^(nu) A_{j+1}` with
//! `E_j^(nu) = (5j + 2, 2 + 2 floor(3 s_nu / 2))`, where `s_nu` runs over
//! the partial sums of a partition `lambda_j` of `2(k - j)`. Zones get
//! alternating signs `zeta` and each lattice point the sign
//! `(-1)^(xy) zeta^y`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::partitions::{enumerate_partitions, partition_counts, Partition};
use crate::patchwork::{
    build_patchwork_certified, certify_convexity, edge_on_newton_boundary, extract_scheme, in_newton_triangle,
    newton_triangle_points, on_newton_boundary, orient, triangulation_from_heights, PatchworkCurve,
    PatchworkError, Point, SignDistribution, Triangulation,
};
use crate::scheme::{Node, RealScheme};

/// Smallest degree for which the construction is defined.
pub const MIN_DEGREE: u32 = 12;

const MAX_LIFT_RETRIES: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HaasError {
    #[error("degree must be at least {MIN_DEGREE}, got {0}")]
    DegreeTooSmall(u32),
    #[error("expected {expected} partitions, got {got}")]
    PartitionCount { expected: usize, got: usize },
    #[error("partition #{index} must have sum {expected}, got {got}")]
    PartitionSize { index: usize, expected: u64, got: u64 },
    #[error("invalid zone geometry: {0}")]
    Geometry(String),
    #[error("zone-respecting triangulation failed after {0} attempts")]
    Lifting(u32),
    #[error(transparent)]
    Patchwork(#[from] PatchworkError),
}

fn geometry(msg: String) -> HaasError {
    HaasError::Geometry(msg)
}

/// `k = floor(d/6) - 1`.
pub fn haas_k(d: u32) -> Result<u32, HaasError> {
    if d < MIN_DEGREE {
        return Err(HaasError::DegreeTooSmall(d));
    }
    Ok(d / 6 - 1)
}

/// Required partition sums `2(k - j)` for `j = 0..k`.
pub fn partition_sizes(d: u32) -> Result<Vec<u32>, HaasError> {
    let k = haas_k(d)?;
    Ok((0..k).map(|j| 2 * (k - j)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZoneKind {
    /// The part of tent `j` (the whole triangle for `j = 0`) outside tent
    /// `j + 1` and wedge `j`.
    Band(usize),
    /// Slice `nu` (1-based) of wedge `j`; wedge `k` is a single slice.
    Wedge { j: usize, nu: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zone {
    pub kind: ZoneKind,
    /// Counter-clockwise.
    pub polygon: Vec<Point>,
    pub sign: i8,
}

/// A zone side that is not part of the triangle's boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutSide {
    pub from: Point,
    pub to: Point,
    /// Whether an end lies on a side of the Newton triangle.
    pub touches_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaasPlan {
    pub d: u32,
    pub k: u32,
    pub partitions: Vec<Partition>,
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
    pub dpts: Vec<Point>,
    pub e: Vec<Point>,
    /// `e_sub[j]` holds `E_j^(1), E_j^(2), ...` for `j < k`.
    pub e_sub: Vec<Vec<Point>>,
    pub zones: Vec<Zone>,
    pub cuts: Vec<CutSide>,
}

fn area2(poly: &[Point]) -> i64 {
    (0..poly.len())
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Locates `q / scale` relative to a simple polygon with integer vertices.
fn locate(poly: &[Point], q: Point, scale: i64) -> Location {
    let mut winding = 0i32;
    for i in 0..poly.len() {
        let p0 = (poly[i].0 * scale, poly[i].1 * scale);
        let p1 = (poly[(i + 1) % poly.len()].0 * scale, poly[(i + 1) % poly.len()].1 * scale);
        let o = orient(p0, p1, q);
        if o == 0
            && q.0 >= p0.0.min(p1.0)
            && q.0 <= p0.0.max(p1.0)
            && q.1 >= p0.1.min(p1.1)
            && q.1 <= p0.1.max(p1.1)
        {
            return Location::Boundary;
        }
        if p0.1 <= q.1 {
            if p1.1 > q.1 && o > 0 {
                winding += 1;
            }
        } else if p1.1 <= q.1 && o < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

fn segment_key(p: Point, q: Point) -> (Point, Point) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Builds and validates the zone subdivision for one partition collection.
pub fn build_haas_plan(d: u32, partitions: &[Partition]) -> Result<HaasPlan, HaasError> {
    let k = haas_k(d)?;
    let sizes = partition_sizes(d)?;
    if partitions.len() != sizes.len() {
        return Err(HaasError::PartitionCount { expected: sizes.len(), got: partitions.len() });
    }
    for (index, (lam, &size)) in partitions.iter().zip(&sizes).enumerate() {
        if lam.sum() != u64::from(size) {
            return Err(HaasError::PartitionSize { index, expected: size.into(), got: lam.sum() });
        }
    }
    let (dd, kk) = (i64::from(d), i64::from(k));
    let big_k = kk + 1;
    let ku = k as usize;

    let a: Vec<Point> = (0..=kk + 1).map(|j| (5 * j, 0)).collect();
    let b: Vec<Point> = (0..=kk)
        .map(|j| if j == 0 { (0, dd) } else { (5 * j + 1, 6 * (big_k - j) - 2) })
        .collect();
    let c: Vec<Point> = (0..=kk).map(|j| if j == 0 { (dd, 0) } else { (6 * big_k - j, 0) }).collect();
    let dpts: Vec<Point> = (0..=kk).map(|j| (5 * j + 1, 0)).collect();
    let e: Vec<Point> = (0..=kk).map(|j| (5 * j + 2, 6 * (big_k - j) - 4)).collect();
    let e_sub: Vec<Vec<Point>> = partitions
        .iter()
        .enumerate()
        .map(|(j, lam)| {
            let mut s = 0i64;
            lam.parts()
                .iter()
                .map(|&part| {
                    s += i64::from(part);
                    (5 * j as i64 + 2, 2 + 2 * ((3 * s) / 2))
                })
                .collect()
        })
        .collect();

    for &p in a.iter().chain(&b).chain(&c).chain(&dpts).chain(&e).chain(e_sub.iter().flatten()) {
        if !in_newton_triangle(p, d) {
            return Err(geometry(format!("point {p:?} lies outside the Newton triangle")));
        }
    }
    for j in 0..ku {
        if e_sub[j].last() != Some(&e[j]) {
            return Err(geometry(format!("last cut of wedge {j} does not reach E_{j}")));
        }
    }

    // zones
    let mut zones = Vec::new();
    for j in 0..=ku {
        let mut poly = vec![a[j], dpts[j], e[j], a[j + 1]];
        if j < ku {
            poly.extend([b[j + 1], c[j + 1]]);
        }
        poly.extend([c[j], b[j]]);
        zones.push(Zone { kind: ZoneKind::Band(j), polygon: poly, sign: 0 });
    }
    for j in 0..=ku {
        let apexes: Vec<Point> = if j < ku { e_sub[j].clone() } else { vec![e[j]] };
        for (nu, &apex) in apexes.iter().enumerate() {
            let poly = if nu == 0 {
                vec![dpts[j], a[j + 1], apex]
            } else {
                vec![dpts[j], apexes[nu - 1], a[j + 1], apex]
            };
            zones.push(Zone { kind: ZoneKind::Wedge { j, nu: nu + 1 }, polygon: poly, sign: 0 });
        }
    }

    // sides shared by two zones are cuts; the rest must lie on the boundary
    let mut owners: BTreeMap<(Point, Point), Vec<usize>> = BTreeMap::new();
    for (z, zone) in zones.iter().enumerate() {
        if area2(&zone.polygon) <= 0 {
            return Err(geometry(format!("zone {:?} is not counter-clockwise", zone.kind)));
        }
        let n = zone.polygon.len();
        for i in 0..n {
            let (p, q) = (zone.polygon[i], zone.polygon[(i + 1) % n]);
            if p == q {
                return Err(geometry(format!("zone {:?} has a repeated vertex {p:?}", zone.kind)));
            }
            owners.entry(segment_key(p, q)).or_default().push(z);
        }
    }
    let total: i64 = zones.iter().map(|z| area2(&z.polygon)).sum();
    if total != dd * dd {
        return Err(geometry(format!("zone areas sum to {total}/2 instead of {}/2", dd * dd)));
    }
    let mut cuts = Vec::new();
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); zones.len()];
    for (&(p, q), zs) in &owners {
        match *zs.as_slice() {
            [z] => {
                if !edge_on_newton_boundary(p, q, d) {
                    return Err(geometry(format!("side {p:?}-{q:?} of zone {:?} is unmatched", zones[z].kind)));
                }
            }
            [z1, z2] => {
                let g = gcd(q.0 - p.0, q.1 - p.1).abs();
                if g != 1 {
                    return Err(geometry(format!("cut side {p:?}-{q:?} contains interior lattice points")));
                }
                if p.1 % 2 != 0 || q.1 % 2 != 0 {
                    return Err(geometry(format!("cut side {p:?}-{q:?} has an end with odd y")));
                }
                adjacent[z1].push(z2);
                adjacent[z2].push(z1);
                let touches_boundary = on_newton_boundary(p, d) || on_newton_boundary(q, d);
                cuts.push(CutSide { from: p, to: q, touches_boundary });
            }
            _ => return Err(geometry(format!("side {p:?}-{q:?} is shared by more than two zones"))),
        }
    }

    // alternating signs, outer zone positive
    let mut queue = VecDeque::from([0usize]);
    zones[0].sign = 1;
    while let Some(z) = queue.pop_front() {
        for &w in &adjacent[z] {
            if zones[w].sign == 0 {
                zones[w].sign = -zones[z].sign;
                queue.push_back(w);
            } else if zones[w].sign == zones[z].sign {
                return Err(geometry(format!("zones {z} and {w} cannot get opposite signs")));
            }
        }
    }
    if zones.iter().any(|z| z.sign == 0) {
        return Err(geometry("zone adjacency graph is disconnected".into()));
    }

    let plan = HaasPlan { d, k, partitions: partitions.to_vec(), a, b, c, dpts, e, e_sub, zones, cuts };
    plan.check_coverage()?;
    plan.check_wedge_counts()?;
    Ok(plan)
}

impl HaasPlan {
    pub fn zone_count(&self) -> usize {
        self.zones.len()
    }

    /// Total number of parts over all partitions.
    pub fn part_count(&self) -> usize {
        self.partitions.iter().map(Partition::len).sum()
    }

    /// Every unit-triangle centroid lies inside exactly one zone unless it
    /// sits on a zone side.
    fn check_coverage(&self) -> Result<(), HaasError> {
        let d = i64::from(self.d);
        for x in 0..d {
            for y in 0..d - x {
                let mut samples = vec![(3 * x + 1, 3 * y + 1)];
                if x + y + 1 < d {
                    samples.push((3 * x + 2, 3 * y + 2));
                }
                for q in samples {
                    let locs: Vec<Location> = self.zones.iter().map(|z| locate(&z.polygon, q, 3)).collect();
                    let inside = locs.iter().filter(|&&l| l == Location::Inside).count();
                    let boundary = locs.contains(&Location::Boundary);
                    if inside > 1 || (inside == 0 && !boundary) {
                        return Err(geometry(format!("sample {q:?}/3 is covered {inside} times")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Slice `nu` of wedge `j` meets the line `x = 5j + 3` in a segment
    /// with exactly `lambda_j^(nu)` even ordinates inside.
    fn check_wedge_counts(&self) -> Result<(), HaasError> {
        for (j, lam) in self.partitions.iter().enumerate() {
            let x = 5 * j as i64 + 3;
            let mut lo_y3 = 0i64; // ordinate times 3
            for (nu, &apex) in self.e_sub[j].iter().enumerate() {
                // the arm from E=(5j+2, y) to A_{j+1}=(5j+5, 0) is at 2y/3 on x
                let hi_y3 = 2 * apex.1;
                let count = (1..)
                    .map(|t| 2 * t)
                    .take_while(|&y| 3 * y < hi_y3)
                    .filter(|&y| 3 * y > lo_y3)
                    .count() as u32;
                if count != lam.parts()[nu] {
                    return Err(geometry(format!(
                        "slice {} of wedge {j} holds {count} even points on x = {x}, expected {}",
                        nu + 1,
                        lam.parts()[nu]
                    )));
                }
                lo_y3 = hi_y3;
            }
        }
        Ok(())
    }

    /// The zone containing `p`, preferring the first match on shared sides.
    pub fn zone_of(&self, p: Point) -> Option<usize> {
        self.zones.iter().position(|z| locate(&z.polygon, p, 1) != Location::Outside)
    }

    /// Whether `p` lies on some cut side.
    pub fn on_cut(&self, p: Point) -> bool {
        self.cuts.iter().any(|c| {
            orient(c.from, c.to, p) == 0
                && p.0 >= c.from.0.min(c.to.0)
                && p.0 <= c.from.0.max(c.to.0)
                && p.1 >= c.from.1.min(c.to.1)
                && p.1 <= c.from.1.max(c.to.1)
        })
    }
}

fn parity(x: i64) -> i8 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `delta(x, y) = (-1)^(xy) zeta^y`, aligned with `vertices`.
pub fn sign_distribution_from_zones(plan: &HaasPlan, vertices: &[Point]) -> SignDistribution {
    let signs = vertices
        .iter()
        .map(|&(x, y)| {
            let zones: Vec<i8> = plan
                .zones
                .iter()
                .filter(|z| locate(&z.polygon, (x, y), 1) != Location::Outside)
                .map(|z| z.sign)
                .collect();
            let values: BTreeSet<i8> = zones.iter().map(|&zeta| parity(x * y) * if y % 2 == 0 { 1 } else { zeta }).collect();
            assert_eq!(values.len(), 1, "sign at {:?} depends on the zone", (x, y));
            *values.iter().next().expect("point lies in a zone")
        })
        .collect();
    SignDistribution::new(signs).expect("signs are +-1")
}

/// `max(0, s_a n_a.(p - apex), s_b n_b.(p - apex))` for the broken line
/// `from - apex - to`, with outward normals `n_a, n_b` and scales chosen so
/// the third crease leaves the apex along `v`.
fn fold(p: Point, from: Point, apex: Point, to: Point, v: Point) -> i64 {
    let left = |u: Point| (-u.1, u.0);
    let n_a = left((apex.0 - from.0, apex.1 - from.1));
    let n_b = left((to.0 - apex.0, to.1 - apex.1));
    let dot = |x: Point, y: Point| x.0 * y.0 + x.1 * y.1;
    let (s_a, s_b) = (dot(n_b, v), dot(n_a, v));
    debug_assert!(s_a > 0 && s_b > 0);
    let w = (p.0 - apex.0, p.1 - apex.1);
    0.max(s_a * dot(n_a, w)).max(s_b * dot(n_b, w))
}

const TENT_RAY: Point = (-5, 6);
const WEDGE_RAY: Point = (0, 1);
const FINE_SCALE: i64 = 1 << 16;

/// Heights with creases along every cut, plus a strictly convex generic
/// term to resolve the zones into primitive triangles.
fn zone_heights(plan: &HaasPlan, ratio: i64, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let d = i64::from(plan.d);
    let pts = newton_triangle_points(plan.d).expect("d >= 12");
    let fine_range = FINE_SCALE * (2 * d * d + 1);
    let w_wedge = BigInt::from(ratio) * fine_range;
    let mut max_wedge = 1i64;
    let wedge_fold = |p: Point| -> i64 {
        let mut s = 0;
        for (j, apexes) in plan.e_sub.iter().enumerate() {
            for &apex in apexes {
                s += fold(p, plan.dpts[j], apex, plan.a[j + 1], WEDGE_RAY);
            }
        }
        let k = plan.k as usize;
        s + fold(p, plan.dpts[k], plan.e[k], plan.a[k + 1], WEDGE_RAY)
    };
    for &p in &pts {
        max_wedge = max_wedge.max(wedge_fold(p));
    }
    let w_tent = &w_wedge * BigInt::from(ratio * (max_wedge + 1));
    pts.iter()
        .map(|&p| {
            let tents: i64 = (1..=plan.k as usize).map(|j| fold(p, plan.a[j], plan.b[j], plan.c[j], TENT_RAY)).sum();
            let fine = FINE_SCALE * (p.0 * p.0 + p.1 * p.1) + rng.gen_range(0..FINE_SCALE);
            let h = &w_tent * tents + &w_wedge * wedge_fold(p) + fine;
            BigRational::from_integer(h)
        })
        .collect()
}

/// A primitive convex triangulation in which every cut side is an edge.
pub fn triangulate_zones_convex(plan: &HaasPlan) -> Result<Triangulation, HaasError> {
    let mut ratio = 4i64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ u64::from(plan.d));
    for _ in 0..MAX_LIFT_RETRIES {
        let heights = zone_heights(plan, ratio, &mut rng);
        if let Ok(t) = triangulation_from_heights(plan.d, &heights) {
            if t.is_primitive() && plan.cuts.iter().all(|c| t.has_edge(c.from, c.to)) {
                return Ok(t);
            }
        }
        ratio *= 2;
    }
    Err(HaasError::Lifting(MAX_LIFT_RETRIES))
}

#[derive(Clone, Debug)]
pub struct HaasRun {
    pub plan: HaasPlan,
    pub triangulation: Triangulation,
    pub signs: SignDistribution,
    pub curve: PatchworkCurve,
    pub scheme: RealScheme,
}

pub fn run_haas(d: u32, partitions: &[Partition]) -> Result<HaasRun, HaasError> {
    let plan = build_haas_plan(d, partitions)?;
    let triangulation = triangulate_zones_convex(&plan)?;
    let cert = certify_convexity(&triangulation).map_err(|_| PatchworkError::NotConvex)?;
    let signs = sign_distribution_from_zones(&plan, &triangulation.vertices);
    let curve = build_patchwork_certified(&triangulation, &signs, &cert)?;
    let scheme = extract_scheme(&curve)?;
    Ok(HaasRun { plan, triangulation, signs, curve, scheme })
}

fn oval_of(n: usize) -> Node {
    Node::with_children(vec![Node::leaf(); n])
}

/// Whether `s` has the form
/// `a u 1<a_0 u S_0 u 1<a_1 u S_1 u ... 1<a_{k-1} u S_{k-1} u 1<1>>...>>`
/// for some counts `a, a_j >= 0`, with `S_j` the ovals `1<lambda_j^(nu)>`,
/// plus the pseudoline exactly for odd degree.
pub fn matches_haas_pattern(s: &RealScheme, plan: &HaasPlan) -> bool {
    if s.pseudoline != (plan.d % 2 == 1) {
        return false;
    }
    let levels: Vec<Vec<Node>> = plan
        .partitions
        .iter()
        .map(|lam| {
            let mut v: Vec<Node> = lam.parts().iter().map(|&p| oval_of(p as usize)).collect();
            v.sort();
            v
        })
        .collect();
    let root = s.root.canonical();
    let non_leaves: Vec<&Node> = root.children.iter().filter(|c| !c.is_leaf()).collect();
    non_leaves.len() == 1 && match_level(non_leaves[0], &levels)
}

/// `node` must be `1<a_j u S_j u next>` where `next` matches the remaining
/// levels, or `1<1>` when none remain.
fn match_level(node: &Node, levels: &[Vec<Node>]) -> bool {
    let Some((here, rest)) = levels.split_first() else {
        return *node == oval_of(1);
    };
    let non_leaves: Vec<&Node> = node.children.iter().filter(|c| !c.is_leaf()).collect();
    (0..non_leaves.len()).any(|w| {
        let mut others: Vec<Node> = non_leaves
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != w)
            .map(|(_, n)| (*n).clone())
            .collect();
        others.sort();
        others == *here && match_level(non_leaves[w], rest)
    })
}

/// Longest chain of nested ovals.
pub fn nest_depth(s: &RealScheme) -> usize {
    s.depth()
}

/// `prod_{j=1}^{k} p(2j)`: the number of partition collections.
pub fn haas_family_count(d: u32) -> Result<BigUint, HaasError> {
    let k = haas_k(d)? as usize;
    let p = partition_counts(2 * k);
    Ok((1..=k).fold(BigUint::one(), |acc, j| acc * &p[2 * j]))
}

/// Every valid partition collection for degree `d`, in lexicographic order.
pub fn haas_family(d: u32) -> Result<Vec<Vec<Partition>>, HaasError> {
    let sizes = partition_sizes(d)?;
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for size in sizes {
        let options = enumerate_partitions(size);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |lam| {
                    let mut v = prefix.clone();
                    v.push(lam.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::harnack_bound;

    fn parts(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn degree_twelve_points() {
        let plan = build_haas_plan(12, &[parts(&[2])]).unwrap();
        assert_eq!(plan.a, vec![(0, 0), (5, 0), (10, 0)]);
        assert_eq!(plan.b[1], (6, 4));
        assert_eq!(plan.c[1], (11, 0));
        assert_eq!(plan.dpts, vec![(1, 0), (6, 0)]);
        assert_eq!(plan.e, vec![(2, 8), (7, 2)]);
        assert_eq!(plan.zone_count(), plan.k as usize + plan.part_count() + 2);
        let split = build_haas_plan(12, &[parts(&[1, 1])]).unwrap();
        assert_eq!(split.e_sub[0], vec![(2, 4), (2, 8)]);
        assert_eq!(split.zone_count(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(build_haas_plan(11, &[]), Err(HaasError::DegreeTooSmall(11)));
        assert!(matches!(build_haas_plan(12, &[]), Err(HaasError::PartitionCount { expected: 1, got: 0 })));
        assert!(matches!(build_haas_plan(12, &[parts(&[3])]), Err(HaasError::PartitionSize { .. })));
    }

    #[test]
    fn coherent_signs() {
        let plan = build_haas_plan(12, &[parts(&[1, 1])]).unwrap();
        let pts = newton_triangle_points(12).unwrap();
        let s = sign_distribution_from_zones(&plan, &pts);
        assert_eq!(s.get(0), plan.zones[0].sign);
        for (v, &p) in pts.iter().enumerate() {
            if plan.on_cut(p) {
                assert_eq!(p.1 % 2, 0);
                assert_eq!(s.get(v), parity(p.0 * p.1));
            }
        }
    }

    #[test]
    fn degree_twelve_is_maximal() {
        for lam in [parts(&[2]), parts(&[1, 1])] {
            let run = run_haas(12, &[lam]).unwrap();
            assert_eq!(run.triangulation.triangles.len(), 144);
            assert_eq!(run.scheme.oval_count() as u64, harnack_bound(12).unwrap());
            assert!(matches_haas_pattern(&run.scheme, &run.plan), "{}", run.scheme);
        }
    }

    #[test]
    fn pattern_matching() {
        let plan = build_haas_plan(12, &[parts(&[2])]).unwrap();
        let bare: RealScheme = "1<1<2> u 1<1>>".parse().unwrap();
        assert!(matches_haas_pattern(&bare, &plan));
        let padded: RealScheme = "3 u 1<2 u 1<2> u 1<1>>".parse().unwrap();
        assert!(matches_haas_pattern(&padded, &plan));
        assert!(!matches_haas_pattern(&RealScheme::empty(), &plan));
        let wrong: RealScheme = "1<1<1> u 1<1> u 1<1>>".parse().unwrap();
        assert!(!matches_haas_pattern(&wrong, &plan));
    }

    #[test]
    fn family_counts() {
        assert_eq!(haas_family_count(12).unwrap(), BigUint::from(2u32));
        assert_eq!(haas_family_count(18).unwrap(), BigUint::from(10u32));
        assert_eq!(haas_family_count(24).unwrap(), BigUint::from(110u32));
        assert_eq!(haas_family(18).unwrap().len(), 10);
        assert!(haas_family_count(6).is_err());
    }
}
