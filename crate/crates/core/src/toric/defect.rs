//! Defect ideals `d(mD) = O_X(mD) · O_X(-mD)` of toric Weil divisors.
//!
//! `O_X(D)` is spanned by the characters `χ^u` with `<u, v_i> >= -d_i`. Its
//! minimal generators are the lattice points `u` of that polyhedron `P` such
//! that `u - h ∉ P` for every Hilbert-basis element `h` of `σ^∨`. Writing a
//! lattice point as `p + Σ μ_j r_j` (`p` in the convex hull of the vertices,
//! `r_j` dual rays), any `μ_j >= 1` can be peeled off, so minimal generators
//! lie in the vertex box enlarged by the zonotope of the dual rays.

use num_traits::ToPrimitive;

use super::cone::{lattice_box, zonotope_box, ToricCone};
use super::envelope::ToricDivisor;
use super::ideal::MonomialIdeal;
use crate::error::{Error, Result};
use crate::exactmath::polyhedron::polyhedron_vertices;
use crate::exactmath::rational::dot_i;
use crate::exactmath::{rat, QVector};

const MAX_BOX_POINTS: u64 = 5_000_000;

/// Minimal generators of the fractional ideal `O_X(D)` for integral `D`.
pub fn section_generators(cone: &ToricCone, d: &[i64]) -> Result<Vec<Vec<i64>>> {
    section_generators_in_box(cone, d, 1)
}

/// As [`section_generators`], searching a box enlarged `scale` times; used to
/// confirm that the default box already contains every minimal generator.
pub fn section_generators_in_box(cone: &ToricCone, d: &[i64], scale: i64) -> Result<Vec<Vec<i64>>> {
    let n = cone.dim();
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "defect ideals are implemented up to dimension 3, got {n}"
        )));
    }
    if d.len() != cone.rays().len() {
        return Err(Error::DimensionMismatch(
            "divisor length differs from ray count".into(),
        ));
    }
    let normals: Vec<QVector> = cone
        .rays()
        .iter()
        .map(|r| r.iter().map(|&x| rat(-x)).collect())
        .collect();
    let bounds: QVector = d.iter().copied().map(rat).collect();
    let vertices = polyhedron_vertices(&normals, &bounds)?;
    let (zlo, zhi) = zonotope_box(n, cone.facet_normals());
    let coord = |k: usize, f: fn(&crate::exactmath::Rational) -> crate::exactmath::Rational| {
        vertices
            .iter()
            .map(move |v| f(&v[k]).to_integer().to_i64().expect("vertex fits in i64"))
    };
    let mut lo: Vec<i64> = (0..n)
        .map(|k| coord(k, |x| x.floor()).min().unwrap() + zlo[k])
        .collect();
    let mut hi: Vec<i64> = (0..n)
        .map(|k| coord(k, |x| x.ceil()).max().unwrap() + zhi[k])
        .collect();
    if scale > 1 {
        for k in 0..n {
            let pad = (scale - 1) * (hi[k] - lo[k] + 1);
            lo[k] -= pad;
            hi[k] += pad;
        }
    }
    let points: u64 = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a + 1) as u64)
        .product();
    if points > MAX_BOX_POINTS {
        return Err(Error::Unsupported(format!(
            "generator search box has {points} points (limit {MAX_BOX_POINTS})"
        )));
    }

    let in_p = |u: &[i64]| cone.rays().iter().zip(d).all(|(r, di)| dot_i(r, u) >= -di);
    let hilbert = cone.dual_hilbert_basis();
    Ok(lattice_box(&lo, &hi)
        .filter(|u| in_p(u))
        .filter(|u| {
            hilbert.iter().all(|h| {
                let shifted: Vec<i64> = u.iter().zip(h).map(|(a, b)| a - b).collect();
                !in_p(&shifted)
            })
        })
        .collect())
}

/// `d(mD)` for an integral toric divisor `D` and `m >= 1`.
pub fn defect_ideal(cone: &ToricCone, d: &ToricDivisor, m: i64) -> Result<MonomialIdeal> {
    defect_ideal_in_box(cone, d, m, 1)
}

pub fn defect_ideal_in_box(
    cone: &ToricCone,
    d: &ToricDivisor,
    m: i64,
    scale: i64,
) -> Result<MonomialIdeal> {
    d.check(cone)?;
    if m < 1 {
        return Err(Error::Malformed(format!(
            "defect multiple must be positive, got {m}"
        )));
    }
    let md: Vec<i64> = d.integer_coeffs()?.iter().map(|x| x * m).collect();
    let neg: Vec<i64> = md.iter().map(|x| -x).collect();
    let plus = section_generators_in_box(cone, &md, scale)?;
    let minus = section_generators_in_box(cone, &neg, scale)?;
    let sums = plus
        .iter()
        .flat_map(|a| {
            minus
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
        })
        .collect();
    MonomialIdeal::new(cone, sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::ideal::z_value;

    #[test]
    fn cartier_divisors_have_unit_defect() {
        let q = ToricCone::quadric();
        for m in [1, 2, 3] {
            let zero = defect_ideal(&q, &ToricDivisor::from_ints(&[0, 0, 0, 0]), m).unwrap();
            assert_eq!(zero.gens(), &[vec![0, 0, 0]]);
            let cartier = defect_ideal(&q, &ToricDivisor::from_ints(&[2, 1, 2, 1]), m).unwrap();
            assert!(cartier.is_unit());
        }
        let o = ToricCone::orthant(2);
        assert!(defect_ideal(&o, &ToricDivisor::from_ints(&[3, -1]), 4)
            .unwrap()
            .is_unit());
    }

    #[test]
    fn quadric_defect_is_nontrivial() {
        let q = ToricCone::quadric();
        let d = ToricDivisor::from_ints(&[1, 1, 1, 0]);
        let ideal = defect_ideal(&q, &d, 1).unwrap();
        assert!(!ideal.is_unit());
        assert!(z_value(&q, &ideal, &[1, 1, 0]).unwrap() < rat(0));
    }

    #[test]
    fn section_generators_of_weil_divisor() {
        // O(D) for D = D_1 on the quadric cone: exponents with u1 >= -1, u2, u3 >= 0, u1 + u2 - u3 >= 0
        let q = ToricCone::quadric();
        let mut gens = section_generators(&q, &[1, 0, 0, 0]).unwrap();
        gens.sort();
        assert_eq!(gens, vec![vec![-1, 1, 0], vec![0, 0, 0]]);
    }

    #[test]
    fn rejects_fractional_and_bad_multiple() {
        let q = ToricCone::quadric();
        let d = ToricDivisor::new(vec![crate::exactmath::ratio(1, 2), rat(0), rat(0), rat(0)]);
        assert!(matches!(defect_ideal(&q, &d, 1), Err(Error::Malformed(_))));
        assert!(defect_ideal(&q, &ToricDivisor::from_ints(&[1, 1, 1, 0]), 0).is_err());
    }
}
