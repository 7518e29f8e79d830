//! Exact convex-hull volume in dimensions 1 to 3.
//!
//! Coordinates are cleared of denominators first, so all orientation tests run
//! on integers (`i128` when the scaled coordinates are small, `BigInt`
//! otherwise).

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::{common_denominator, QVector, Rational};
use crate::error::{Error, Result};

const I128_SAFE: i64 = 1 << 40;

/// Euclidean volume of the convex hull of `vertices` in `R^dim`. Hulls that do
/// not span `dim` dimensions have volume zero.
pub fn polytope_volume(vertices: &[QVector], dim: usize) -> Result<Rational> {
    if !(1..=3).contains(&dim) {
        return Err(Error::Unsupported(format!(
            "polytope volume is implemented for dimensions 1 to 3, got {dim}"
        )));
    }
    if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "vertex of length {} in dimension {dim}",
            v.len()
        )));
    }
    if vertices.is_empty() {
        return Ok(Rational::zero());
    }
    let scale = common_denominator(vertices.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| v.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();

    let small = scaled
        .iter()
        .flatten()
        .all(|c| c.to_i64().is_some_and(|c| c.abs() < I128_SAFE));
    let multiple = if small {
        let pts: Vec<Vec<i128>> = scaled
            .iter()
            .map(|v| v.iter().map(|c| c.to_i128().unwrap()).collect())
            .collect();
        BigInt::from(scaled_volume(&pts, dim))
    } else {
        scaled_volume(&scaled, dim)
    };
    // scaled_volume returns dim! * volume in scaled coordinates
    let factorial: u32 = (1..=dim as u32).product();
    let denom = BigInt::from(factorial) * num_traits::pow(scale, dim);
    Ok(Rational::new(multiple, denom))
}

trait Coord: Signed + Clone + Ord + Hash {}
impl<T: Signed + Clone + Ord + Hash> Coord for T {}

fn scaled_volume<T: Coord>(pts: &[Vec<T>], dim: usize) -> T {
    let mut pts = pts.to_vec();
    pts.sort();
    pts.dedup();
    match dim {
        1 => {
            let lo = pts.iter().map(|p| p[0].clone()).min().unwrap();
            let hi = pts.iter().map(|p| p[0].clone()).max().unwrap();
            hi - lo
        }
        2 => twice_polygon_area(&pts),
        _ => six_times_volume_3d(&pts),
    }
}

fn cross2<T: Coord>(o: &[T], a: &[T], b: &[T]) -> T {
    (a[0].clone() - o[0].clone()) * (b[1].clone() - o[1].clone())
        - (a[1].clone() - o[1].clone()) * (b[0].clone() - o[0].clone())
}

/// Andrew's monotone chain on sorted, deduplicated points; counter-clockwise
/// hull without collinear points.
fn hull_2d<T: Coord>(pts: &[Vec<T>]) -> Vec<Vec<T>> {
    if pts.len() < 3 {
        return pts.to_vec();
    }
    let mut lower: Vec<Vec<T>> = Vec::new();
    for p in pts {
        while lower.len() >= 2
            && !cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn twice_polygon_area<T: Coord>(pts: &[Vec<T>]) -> T {
    let hull = hull_2d(pts);
    if hull.len() < 3 {
        return T::zero();
    }
    let mut acc = T::zero();
    for i in 0..hull.len() {
        let (a, b) = (&hull[i], &hull[(i + 1) % hull.len()]);
        acc = acc + a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
    }
    acc.abs()
}

fn det3<T: Coord>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> T {
    a[0].clone() * (b[1].clone() * c[2].clone() - b[2].clone() * c[1].clone())
        - a[1].clone() * (b[0].clone() * c[2].clone() - b[2].clone() * c[0].clone())
        + a[2].clone() * (b[0].clone() * c[1].clone() - b[1].clone() * c[0].clone())
}

fn sub3<T: Coord>(a: &[T], b: &[T]) -> [T; 3] {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

/// Signed orientation of `p` relative to the oriented plane `(a, b, c)`.
fn orient<T: Coord>(a: &[T], b: &[T], c: &[T], p: &[T]) -> T {
    det3(&sub3(b, a), &sub3(c, a), &sub3(p, a))
}

/// Incremental hull with strict visibility; faces are oriented so interior
/// points have negative orientation.
fn six_times_volume_3d<T: Coord>(pts: &[Vec<T>]) -> T {
    let n = pts.len();
    if n < 4 {
        return T::zero();
    }
    let Some(i1) = (1..n).find(|&i| pts[i] != pts[0]) else {
        return T::zero();
    };
    let collinear = |i: usize| {
        let u = sub3(&pts[i1], &pts[0]);
        let w = sub3(&pts[i], &pts[0]);
        (u[1].clone() * w[2].clone() - u[2].clone() * w[1].clone()).is_zero()
            && (u[2].clone() * w[0].clone() - u[0].clone() * w[2].clone()).is_zero()
            && (u[0].clone() * w[1].clone() - u[1].clone() * w[0].clone()).is_zero()
    };
    let Some(i2) = (1..n).find(|&i| !collinear(i)) else {
        return T::zero();
    };
    let Some(i3) = (1..n).find(|&i| !orient(&pts[0], &pts[i1], &pts[i2], &pts[i]).is_zero()) else {
        return T::zero();
    };

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let tet = [0, i1, i2, i3];
    for skip in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| tet[k]).collect();
        let opposite = tet[skip];
        if orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[opposite]).is_positive() {
            faces.push([f[0], f[2], f[1]]);
        } else {
            faces.push([f[0], f[1], f[2]]);
        }
    }

    for p in 0..n {
        if tet.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[p]).is_positive())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let edges: HashSet<(usize, usize)> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| v)
            .flat_map(|(f, _)| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .collect();
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        for &(u, v) in &edges {
            if !edges.contains(&(v, u)) {
                next.push([u, v, p]);
            }
        }
        faces = next;
    }

    faces.iter().fold(T::zero(), |acc, f| {
        let a = [
            pts[f[0]][0].clone(),
            pts[f[0]][1].clone(),
            pts[f[0]][2].clone(),
        ];
        let b = [
            pts[f[1]][0].clone(),
            pts[f[1]][1].clone(),
            pts[f[1]][2].clone(),
        ];
        let c = [
            pts[f[2]][0].clone(),
            pts[f[2]][1].clone(),
            pts[f[2]][2].clone(),
        ];
        acc + det3(&a, &b, &c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{qvec, ratio};

    fn vol(pts: &[&[i64]], dim: usize) -> Rational {
        let v: Vec<QVector> = pts.iter().map(|p| qvec(p)).collect();
        polytope_volume(&v, dim).unwrap()
    }

    #[test]
    fn basic_volumes() {
        assert_eq!(
            vol(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3),
            ratio(1, 6)
        );
        // (1,1) is interior, so the hull is the triangle of area 9/2
        assert_eq!(vol(&[&[0, 0], &[3, 0], &[1, 1], &[0, 3]], 2), ratio(9, 2));
        assert_eq!(vol(&[&[0, 0], &[3, 0], &[2, 2], &[0, 3]], 2), ratio(6, 1));
        assert_eq!(vol(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], 2), ratio(1, 1));
        assert_eq!(vol(&[&[4], &[-1], &[2]], 1), ratio(5, 1));
    }

    #[test]
    fn cube_with_interior_and_face_points() {
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        assert_eq!(vol(&refs, 3), ratio(8, 1));
    }

    #[test]
    fn rational_coordinates() {
        let v = vec![
            vec![ratio(0, 1), ratio(0, 1)],
            vec![ratio(1, 2), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 3)],
        ];
        assert_eq!(polytope_volume(&v, 2).unwrap(), ratio(1, 12));
    }

    #[test]
    fn degenerate_is_zero() {
        assert_eq!(
            vol(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2], &[3, 3, 3]], 3),
            ratio(0, 1)
        );
        assert_eq!(
            vol(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]], 3),
            ratio(0, 1)
        );
        assert_eq!(vol(&[&[0, 0], &[1, 1]], 2), ratio(0, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            polytope_volume(&[qvec(&[0, 0, 0, 0])], 4),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            polytope_volume(&[qvec(&[0, 0])], 3),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn large_coordinates_take_bigint_path() {
        let big = 1i64 << 50;
        let v = vec![qvec(&[0, 0]), qvec(&[big, 0]), qvec(&[0, 2])];
        assert_eq!(polytope_volume(&v, 2).unwrap(), ratio(big, 1));
    }
}
