//! Exhaustive enumeration of unimodular lattice triangulations of small
//! convex lattice polygons by an advancing front.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::geometry::{newton_triangle_points, orient, segments_cross, Point};
use super::triangulation::Triangulation;
use super::PatchworkError;

/// Largest cell count `k * m` accepted by [`count_rect_triangulations`].
pub const MAX_RECT_CELLS: u32 = 8;

/// Largest degree accepted by [`enumerate_newton_triangulations`].
pub const MAX_ENUMERATION_DEGREE: u32 = 4;

/// Lattice points of a convex polygon and its boundary as unit steps in
/// counter-clockwise order.
#[derive(Clone, Debug)]
pub struct LatticePolygon {
    pub points: Vec<Point>,
    boundary: Vec<(usize, usize)>,
}

impl LatticePolygon {
    /// `corners` must be counter-clockwise; every lattice point on the
    /// boundary walk must appear in `points`.
    fn new(points: Vec<Point>, corners: &[Point]) -> Self {
        let index = |p: Point| points.iter().position(|&q| q == p).expect("boundary point listed");
        let mut boundary = Vec::new();
        for k in 0..corners.len() {
            let (p, q) = (corners[k], corners[(k + 1) % corners.len()]);
            let g = num_integer::gcd(q.0 - p.0, q.1 - p.1).abs();
            let step = ((q.0 - p.0) / g, (q.1 - p.1) / g);
            for s in 0..g {
                let a = (p.0 + s * step.0, p.1 + s * step.1);
                let b = (a.0 + step.0, a.1 + step.1);
                boundary.push((index(a), index(b)));
            }
        }
        LatticePolygon { points, boundary }
    }

    pub fn newton_triangle(d: u32) -> Result<Self, PatchworkError> {
        let pts = newton_triangle_points(d)?;
        let d = i64::from(d);
        Ok(Self::new(pts, &[(0, 0), (d, 0), (0, d)]))
    }

    pub fn rectangle(k: u32, m: u32) -> Self {
        let (k, m) = (i64::from(k), i64::from(m));
        let pts = (0..=k).flat_map(|i| (0..=m).map(move |j| (i, j))).collect();
        Self::new(pts, &[(0, 0), (k, 0), (k, m), (0, m)])
    }
}

struct Search<'a, F> {
    pts: &'a [Point],
    n: usize,
    filled: Vec<bool>,
    frontier: BTreeSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    tris: Vec<[usize; 3]>,
    visit: F,
}

enum Step {
    Close,
    Open,
}

impl<F: FnMut(&[[usize; 3]]) -> ControlFlow<()>> Search<'_, F> {
    fn crosses(&self, x: usize, y: usize) -> bool {
        self.edges
            .iter()
            .any(|&(p, q)| segments_cross(self.pts[x], self.pts[y], self.pts[p], self.pts[q]))
    }

    fn run(&mut self) -> ControlFlow<()> {
        let Some(&(a, b)) = self.frontier.iter().next() else {
            return (self.visit)(&self.tris);
        };
        for c in 0..self.n {
            if orient(self.pts[a], self.pts[b], self.pts[c]) != 1 {
                continue;
            }
            let mut steps = [Step::Close, Step::Close];
            let mut ok = true;
            for (k, (x, y)) in [(b, c), (c, a)].into_iter().enumerate() {
                if self.filled[x * self.n + y] {
                    ok = false;
                    break;
                }
                if self.frontier.contains(&(x, y)) {
                    steps[k] = Step::Close;
                } else if self.crosses(x, y) {
                    ok = false;
                    break;
                } else {
                    steps[k] = Step::Open;
                }
            }
            if !ok {
                continue;
            }
            self.frontier.remove(&(a, b));
            self.filled[a * self.n + b] = true;
            for (k, (x, y)) in [(b, c), (c, a)].into_iter().enumerate() {
                self.filled[x * self.n + y] = true;
                match steps[k] {
                    Step::Close => {
                        self.frontier.remove(&(x, y));
                    }
                    Step::Open => {
                        self.frontier.insert((y, x));
                        self.edges.push((x, y));
                    }
                }
            }
            self.tris.push([a, b, c]);
            let flow = self.run();
            self.tris.pop();
            for (k, (x, y)) in [(b, c), (c, a)].into_iter().enumerate().rev() {
                self.filled[x * self.n + y] = false;
                match steps[k] {
                    Step::Close => {
                        self.frontier.insert((x, y));
                    }
                    Step::Open => {
                        self.frontier.remove(&(y, x));
                        self.edges.pop();
                    }
                }
            }
            self.filled[a * self.n + b] = false;
            self.frontier.insert((a, b));
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` once per unimodular triangulation of `poly` (triangles
/// counter-clockwise, indices into `poly.points`). Stops early when `visit`
/// breaks.
pub fn for_each_unimodular_triangulation<F>(poly: &LatticePolygon, visit: F) -> ControlFlow<()>
where
    F: FnMut(&[[usize; 3]]) -> ControlFlow<()>,
{
    let n = poly.points.len();
    let mut search = Search {
        pts: &poly.points,
        n,
        filled: vec![false; n * n],
        frontier: poly.boundary.iter().copied().collect(),
        edges: poly.boundary.clone(),
        tris: Vec::new(),
        visit,
    };
    search.run()
}

/// All primitive triangulations of the Newton triangle, convex or not.
pub fn enumerate_newton_triangulations(d: u32) -> Result<Vec<Triangulation>, PatchworkError> {
    if d > MAX_ENUMERATION_DEGREE {
        return Err(PatchworkError::GuardExceeded { what: "d", value: d.into(), max: MAX_ENUMERATION_DEGREE.into() });
    }
    let poly = LatticePolygon::newton_triangle(d)?;
    let mut out = Vec::new();
    let _ = for_each_unimodular_triangulation(&poly, |tris| {
        out.push(tris.to_vec());
        ControlFlow::Continue(())
    });
    out.into_iter()
        .map(|tris| Triangulation::new(d, poly.points.clone(), tris, None))
        .collect()
}

/// Number of triangulations of the `k x m` lattice rectangle that use every
/// lattice point.
pub fn count_rect_triangulations(k: u32, m: u32) -> Result<BigUint, PatchworkError> {
    if k == 0 || m == 0 {
        return Err(PatchworkError::GuardExceeded { what: "k*m", value: 0, max: MAX_RECT_CELLS.into() });
    }
    if k * m > MAX_RECT_CELLS {
        return Err(PatchworkError::GuardExceeded {
            what: "k*m",
            value: u64::from(k) * u64::from(m),
            max: MAX_RECT_CELLS.into(),
        });
    }
    let poly = LatticePolygon::rectangle(k, m);
    let mut count = BigUint::zero();
    let _ = for_each_unimodular_triangulation(&poly, |_| {
        count += BigUint::one();
        ControlFlow::Continue(())
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_has_two() {
        assert_eq!(count_rect_triangulations(1, 1).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn strips_are_central_binomials() {
        // a 1 x n strip: choose which n of the 2n triangles point up
        assert_eq!(count_rect_triangulations(1, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(count_rect_triangulations(1, 3).unwrap(), BigUint::from(20u32));
        assert_eq!(count_rect_triangulations(3, 1).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn guard() {
        assert!(count_rect_triangulations(3, 3).is_err());
        assert!(count_rect_triangulations(0, 2).is_err());
        assert!(enumerate_newton_triangulations(5).is_err());
    }

    #[test]
    fn small_triangles() {
        assert_eq!(enumerate_newton_triangulations(1).unwrap().len(), 1);
        let two = enumerate_newton_triangulations(2).unwrap();
        assert!(two.iter().all(Triangulation::is_primitive));
        let distinct: BTreeSet<Vec<[usize; 3]>> = two
            .iter()
            .map(|t| {
                let mut v: Vec<[usize; 3]> = t
                    .triangles
                    .iter()
                    .map(|tr| {
                        let mut s = *tr;
                        s.sort_unstable();
                        s
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(distinct.len(), two.len());
    }
}
