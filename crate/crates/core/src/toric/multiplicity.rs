//! Samuel and mixed multiplicities of monomial ideals via Newton-polyhedron
//! covolumes.
//!
//! With `w` interior to `σ` and `T = max_g <g, w>`, the bounded region
//! `σ^∨ \ Newton(a)` lies in the slab `<u, w> <= T`, so
//! `covol(a) = vol(σ^∨ ∩ {<u,w> <= T}) - vol(Newton(a) ∩ {<u,w> <= T})`.
//! Both truncations are polytopes with explicit vertex sets: the apex and the
//! points `T r / <r, w>` on the dual rays, resp. the generators and the points
//! where `g + s r` leaves the slab.

use num_bigint::BigInt;
use num_traits::Zero;

use super::cone::ToricCone;
use super::ideal::MonomialIdeal;
use crate::error::{Error, Result};
use crate::exactmath::polyhedron::combinations;
use crate::exactmath::rational::dot_i;
use crate::exactmath::{polytope_volume, rat, QVector, Rational};

pub const MAX_EXACT_DIM: usize = 3;

fn check_supported(cone: &ToricCone) -> Result<()> {
    if cone.dim() > MAX_EXACT_DIM {
        return Err(Error::Unsupported(format!(
            "exact multiplicities are implemented up to dimension {MAX_EXACT_DIM}, got {}; \
             use the colength oracle instead",
            cone.dim()
        )));
    }
    Ok(())
}

/// Euclidean volume of `σ^∨ \ Newton(a)`.
pub fn covolume(cone: &ToricCone, a: &MonomialIdeal) -> Result<Rational> {
    check_supported(cone)?;
    if a.dim() != cone.dim() {
        return Err(Error::DimensionMismatch(
            "ideal and cone dimensions differ".into(),
        ));
    }
    a.require_m_primary(cone)?;
    if a.is_unit() {
        return Ok(Rational::zero());
    }
    let n = cone.dim();
    let w = cone.interior_point();
    let top = a
        .gens()
        .iter()
        .map(|g| dot_i(g, &w))
        .max()
        .expect("nonempty");
    let duals = cone.facet_normals();

    let mut outer: Vec<QVector> = vec![vec![Rational::zero(); n]];
    for r in duals {
        let s = Rational::new(BigInt::from(top), BigInt::from(dot_i(r, &w)));
        outer.push(r.iter().map(|&x| rat(x) * &s).collect());
    }

    let mut inner: Vec<QVector> = Vec::new();
    for g in a.gens() {
        let base: QVector = g.iter().copied().map(rat).collect();
        inner.push(base.clone());
        let slack = top - dot_i(g, &w);
        if slack == 0 {
            continue;
        }
        for r in duals {
            let s = Rational::new(BigInt::from(slack), BigInt::from(dot_i(r, &w)));
            inner.push(base.iter().zip(r).map(|(b, &x)| b + rat(x) * &s).collect());
        }
    }
    Ok(polytope_volume(&outer, n)? - polytope_volume(&inner, n)?)
}

/// `e(a) = n! · covol(a)`.
pub fn samuel_multiplicity(cone: &ToricCone, a: &MonomialIdeal) -> Result<Rational> {
    let n = cone.dim() as i64;
    Ok(covolume(cone, a)? * rat((1..=n).product()))
}

/// `e(a_1, ..., a_n)` by polarization:
/// `(1/n!) Σ_{∅≠S} (-1)^{n-|S|} e(Π_{i∈S} a_i)`.
pub fn mixed_multiplicity(cone: &ToricCone, ideals: &[MonomialIdeal]) -> Result<Rational> {
    check_supported(cone)?;
    let n = cone.dim();
    if ideals.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "mixed multiplicity in dimension {n} needs {n} ideals, got {}",
            ideals.len()
        )));
    }
    for a in ideals {
        a.require_m_primary(cone)?;
    }
    let mut total = Rational::zero();
    for k in 1..=n {
        let sign = if (n - k).is_multiple_of(2) {
            rat(1)
        } else {
            rat(-1)
        };
        for subset in combinations(n, k) {
            let prod = subset[1..]
                .iter()
                .fold(ideals[subset[0]].clone(), |acc, &i| {
                    acc.product(cone, &ideals[i])
                });
            total += &sign * samuel_multiplicity(cone, &prod)?;
        }
    }
    let fact: i64 = (1..=n as i64).product();
    Ok(total / rat(fact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(c: &ToricCone, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(c, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn samuel_examples() {
        let c = ToricCone::orthant(2);
        assert_eq!(
            samuel_multiplicity(&c, &ideal(&c, &[&[1, 0], &[0, 1]])).unwrap(),
            rat(1)
        );
        assert_eq!(
            samuel_multiplicity(&c, &ideal(&c, &[&[1, 0], &[0, 2]])).unwrap(),
            rat(2)
        );
        assert_eq!(
            samuel_multiplicity(&c, &ideal(&c, &[&[2, 0], &[0, 3]])).unwrap(),
            rat(6)
        );
        // (x^2, xy, y^2) = m^2
        assert_eq!(
            samuel_multiplicity(&c, &ideal(&c, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap(),
            rat(4)
        );
        let q = ToricCone::quadric();
        assert_eq!(
            samuel_multiplicity(&q, &MonomialIdeal::maximal(&q)).unwrap(),
            rat(2)
        );
        let o3 = ToricCone::orthant(3);
        assert_eq!(
            samuel_multiplicity(&o3, &ideal(&o3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])).unwrap(),
            rat(6)
        );
    }

    #[test]
    fn one_dimensional() {
        let c = ToricCone::new(1, vec![vec![1]]).unwrap();
        assert_eq!(
            samuel_multiplicity(&c, &ideal(&c, &[&[5]])).unwrap(),
            rat(5)
        );
    }

    #[test]
    fn mixed_examples() {
        let c = ToricCone::orthant(2);
        let a = ideal(&c, &[&[1, 0], &[0, 2]]);
        let b = ideal(&c, &[&[2, 0], &[0, 1]]);
        let m = ideal(&c, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            mixed_multiplicity(&c, &[a.clone(), a.clone()]).unwrap(),
            rat(2)
        );
        assert_eq!(
            mixed_multiplicity(&c, &[a.clone(), b.clone()]).unwrap(),
            rat(1)
        );
        assert_eq!(mixed_multiplicity(&c, &[m, a.clone()]).unwrap(), rat(1));
        assert_eq!(samuel_multiplicity(&c, &a.product(&c, &b)).unwrap(), rat(6));
    }

    #[test]
    fn errors() {
        let c = ToricCone::orthant(2);
        let bad = ideal(&c, &[&[1, 1]]);
        assert!(matches!(
            samuel_multiplicity(&c, &bad),
            Err(Error::NotMPrimary(_))
        ));
        let a = ideal(&c, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            mixed_multiplicity(&c, &[a]),
            Err(Error::DimensionMismatch(_))
        ));
        let c4 = ToricCone::orthant(4);
        let m4 = MonomialIdeal::maximal(&c4);
        assert!(matches!(
            samuel_multiplicity(&c4, &m4),
            Err(Error::Unsupported(_))
        ));
    }
}
