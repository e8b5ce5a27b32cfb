//! Lattice-point predicates and exact lifted orientation tests.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PatchworkError;

pub type Point = (i64, i64);

/// Twice the signed area of `abc`; positive when counter-clockwise.
pub fn orient(a: Point, b: Point, c: Point) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Lattice points of the Newton triangle `(0,0), (d,0), (0,d)`, ordered by
/// `i` then `j`.
pub fn newton_triangle_points(d: u32) -> Result<Vec<Point>, PatchworkError> {
    if d < 1 {
        return Err(PatchworkError::DegreeTooSmall(d));
    }
    let d = i64::from(d);
    let mut pts = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in 0..=d {
        for j in 0..=d - i {
            pts.push((i, j));
        }
    }
    Ok(pts)
}

pub fn in_newton_triangle(p: Point, d: u32) -> bool {
    p.0 >= 0 && p.1 >= 0 && p.0 + p.1 <= i64::from(d)
}

/// Index of a point in [`newton_triangle_points`] order.
pub fn newton_index(p: Point, d: u32) -> usize {
    let d = i64::from(d);
    // points with first coordinate < i: sum_{t<i} (d - t + 1)
    let i = p.0;
    (i * (d + 1) - i * (i - 1) / 2 + p.1) as usize
}

/// Whether `p` lies on a side of the Newton triangle.
pub fn on_newton_boundary(p: Point, d: u32) -> bool {
    p.0 == 0 || p.1 == 0 || p.0 + p.1 == i64::from(d)
}

/// Whether the segment `pq` lies along a side of the Newton triangle.
pub fn edge_on_newton_boundary(p: Point, q: Point, d: u32) -> bool {
    let d = i64::from(d);
    (p.0 == 0 && q.0 == 0) || (p.1 == 0 && q.1 == 0) || (p.0 + p.1 == d && q.0 + q.1 == d)
}

/// Whether the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let s1 = orient(a, b, c).signum();
    let s2 = orient(a, b, d).signum();
    let s3 = orient(c, d, a).signum();
    let s4 = orient(c, d, b).signum();
    s1 * s2 < 0 && s3 * s4 < 0
}

/// Integer heights, scaled from rationals by a common denominator. Small
/// values use `i128` so the inner loops avoid allocation.
#[derive(Clone, Debug)]
pub(crate) enum Lift {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

const SMALL_LIMIT_BITS: u64 = 90;

impl Lift {
    pub fn from_rationals(heights: &[BigRational]) -> Lift {
        let mut lcm = BigInt::one();
        for h in heights {
            lcm = lcm.lcm(h.denom());
        }
        let ints: Vec<BigInt> = heights
            .iter()
            .map(|h| h.numer() * (&lcm / h.denom()))
            .collect();
        Lift::from_integers(ints)
    }

    pub fn from_integers(ints: Vec<BigInt>) -> Lift {
        if ints.iter().all(|v| v.bits() < SMALL_LIMIT_BITS) {
            Lift::Small(ints.iter().map(|v| v.to_i128().expect("fits")).collect())
        } else {
            Lift::Big(ints)
        }
    }

    /// Sign of `orient(a,b,c) * (h_p - L(p))`, where `L` is the affine
    /// function through the lifted `a, b, c`. With `abc` counter-clockwise,
    /// `Greater` means `p` lies strictly above the plane.
    pub fn side(&self, pts: &[Point], a: usize, b: usize, c: usize, p: usize) -> Ordering {
        let (pa, pb, pc, pp) = (pts[a], pts[b], pts[c], pts[p]);
        let o = orient(pa, pb, pc);
        let oa = orient(pp, pb, pc);
        let ob = orient(pa, pp, pc);
        let oc = orient(pa, pb, pp);
        match self {
            Lift::Small(h) => {
                let v = i128::from(o) * h[p]
                    - i128::from(oa) * h[a]
                    - i128::from(ob) * h[b]
                    - i128::from(oc) * h[c];
                v.cmp(&0)
            }
            Lift::Big(h) => {
                let v = &h[p] * o - &h[a] * oa - &h[b] * ob - &h[c] * oc;
                if v.is_positive() {
                    Ordering::Greater
                } else if v.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Compares the slopes `(h_q - h_a) / t_q` and `(h_r - h_a) / t_r` for
    /// positive run lengths `t`.
    pub fn slope_cmp(&self, a: usize, q: usize, tq: i64, r: usize, tr: i64) -> Ordering {
        match self {
            Lift::Small(h) => ((h[q] - h[a]) * i128::from(tr)).cmp(&((h[r] - h[a]) * i128::from(tq))),
            Lift::Big(h) => ((&h[q] - &h[a]) * tr).cmp(&((&h[r] - &h[a]) * tq)),
        }
    }
}

/// Linear form in the heights expressing local convexity across the edge
/// `ab` shared by `abc` (counter-clockwise) and `bae`: the lift is strictly
/// convex there iff `sum coef_v h_v > 0`.
pub(crate) fn convexity_coefficients(pts: &[Point], a: usize, b: usize, c: usize, e: usize) -> [(usize, i64); 4] {
    let (pa, pb, pc, pe) = (pts[a], pts[b], pts[c], pts[e]);
    [
        (e, orient(pa, pb, pc)),
        (a, -orient(pe, pb, pc)),
        (b, -orient(pa, pe, pc)),
        (c, -orient(pa, pb, pe)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn newton_points() {
        assert_eq!(newton_triangle_points(1).unwrap().len(), 3);
        assert_eq!(newton_triangle_points(2).unwrap().len(), 6);
        assert_eq!(newton_triangle_points(6).unwrap().len(), 28);
        assert!(newton_triangle_points(0).is_err());
        let pts = newton_triangle_points(5).unwrap();
        for (k, &p) in pts.iter().enumerate() {
            assert_eq!(newton_index(p, 5), k);
        }
    }

    #[test]
    fn crossing() {
        assert!(segments_cross((0, 0), (1, 1), (0, 1), (1, 0)));
        assert!(!segments_cross((0, 0), (1, 1), (1, 1), (2, 0)));
        assert!(!segments_cross((0, 0), (2, 0), (1, 0), (3, 0)));
    }

    #[test]
    fn lifted_side_matches_geometry() {
        let pts = vec![(0, 0), (1, 0), (0, 1), (1, 1)];
        let lift = Lift::Small(vec![0, 0, 0, 5]);
        assert_eq!(lift.side(&pts, 0, 1, 2, 3), Ordering::Greater);
        let big = Lift::Big(vec![0.into(), 0.into(), 0.into(), (-5).into()]);
        assert_eq!(big.side(&pts, 0, 1, 2, 3), Ordering::Less);
    }
}
