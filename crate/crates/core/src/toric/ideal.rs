use serde::{Deserialize, Serialize};

use super::cone::ToricCone;
use crate::error::{Error, Result};
use crate::exactmath::rational::{dot_i, primitive};
use crate::exactmath::{rat, Rational};

/// Wire form of an ideal: `{"gens":[[1,0],[0,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub gens: Vec<Vec<i64>>,
}

/// Monomial ideal of the affine toric variety of a cone, stored by its
/// minimal exponent vectors in `σ^∨ ∩ M` (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Vec<i64>>,
}

impl MonomialIdeal {
    pub fn new(cone: &ToricCone, gens: Vec<Vec<i64>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Malformed(
                "monomial ideal needs at least one generator".into(),
            ));
        }
        for g in &gens {
            cone.check_dim(g)?;
            if !cone.dual_contains(g) {
                return Err(Error::Domain(format!(
                    "exponent {g:?} is not in the dual cone, so it is not a regular function"
                )));
            }
        }
        Ok(Self {
            gens: minimalize(cone, gens),
        })
    }

    pub fn from_spec(cone: &ToricCone, spec: &IdealSpec) -> Result<Self> {
        Self::new(cone, spec.gens.clone())
    }

    pub fn to_spec(&self) -> IdealSpec {
        IdealSpec {
            gens: self.gens.clone(),
        }
    }

    /// The unit ideal `O_X`.
    pub fn unit(cone: &ToricCone) -> Self {
        Self {
            gens: vec![vec![0; cone.dim()]],
        }
    }

    /// Maximal ideal of the torus-fixed point, generated by the Hilbert basis
    /// of `σ^∨`.
    pub fn maximal(cone: &ToricCone) -> Self {
        Self::new(cone, cone.dual_hilbert_basis()).expect("Hilbert basis lies in the dual cone")
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens[0].len()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// The zero locus is contained in the torus-fixed point: every facet of
    /// `σ` (extreme ray of `σ^∨`) carries a generator on its dual ray.
    pub fn is_m_primary(&self, cone: &ToricCone) -> bool {
        self.is_unit()
            || cone
                .facet_normals()
                .iter()
                .all(|l| self.gens.iter().any(|g| primitive(g) == *l))
    }

    pub fn require_m_primary(&self, cone: &ToricCone) -> Result<()> {
        if self.is_m_primary(cone) {
            return Ok(());
        }
        let missing: Vec<&Vec<i64>> = cone
            .facet_normals()
            .iter()
            .filter(|l| !self.gens.iter().any(|g| primitive(g) == **l))
            .collect();
        Err(Error::NotMPrimary(format!(
            "no generator on the dual rays {missing:?}"
        )))
    }

    /// `ord_v(a) = min_u <u, v>`.
    pub fn order(&self, v: &[i64]) -> i64 {
        self.gens
            .iter()
            .map(|g| dot_i(g, v))
            .min()
            .expect("nonempty")
    }

    pub fn sum(&self, cone: &ToricCone, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self {
            gens: minimalize(cone, gens),
        }
    }

    pub fn product(&self, cone: &ToricCone, other: &Self) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| {
                other
                    .gens
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        Self {
            gens: minimalize(cone, gens),
        }
    }

    pub fn power(&self, cone: &ToricCone, k: u32) -> Self {
        (0..k).fold(Self::unit(cone), |acc, _| acc.product(cone, self))
    }

    pub fn contains_monomial(&self, cone: &ToricCone, u: &[i64]) -> bool {
        self.gens.iter().any(|g| {
            let diff: Vec<i64> = u.iter().zip(g).map(|(a, b)| a - b).collect();
            cone.dual_contains(&diff)
        })
    }
}

/// Coefficient of `Z(a)` at the toric valuation `v`: `-ord_v(a)`.
pub fn z_value(cone: &ToricCone, a: &MonomialIdeal, v: &[i64]) -> Result<Rational> {
    cone.require_in_cone(v)?;
    if a.dim() != cone.dim() {
        return Err(Error::DimensionMismatch(
            "ideal and cone dimensions differ".into(),
        ));
    }
    Ok(rat(-a.order(v)))
}

/// Drops duplicates and every generator divisible by another one
/// (`u - u' ∈ σ^∨`).
fn minimalize(cone: &ToricCone, mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, u)| {
            !gens.iter().enumerate().any(|(j, v)| {
                if i == j {
                    return false;
                }
                let diff: Vec<i64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
                cone.dual_contains(&diff)
            })
        })
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> ToricCone {
        ToricCone::orthant(2)
    }

    #[test]
    fn z_values() {
        let c = plane();
        let m = MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(z_value(&c, &m, &[1, 1]).unwrap(), rat(-1));
        let a = MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(z_value(&c, &a, &[2, 1]).unwrap(), rat(-2));
        assert_eq!(z_value(&c, &a, &[1, 1]).unwrap(), rat(-1));
        assert!(matches!(
            z_value(&c, &a, &[-1, 1]),
            Err(Error::NotInCone(_))
        ));
    }

    #[test]
    fn minimalization() {
        let c = plane();
        let a = MonomialIdeal::new(
            &c,
            vec![vec![2, 0], vec![1, 0], vec![1, 3], vec![0, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(a.gens(), &[vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn m_primary() {
        let c = plane();
        assert!(MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 1]])
            .unwrap()
            .is_m_primary(&c));
        assert!(!MonomialIdeal::new(&c, vec![vec![1, 1]])
            .unwrap()
            .is_m_primary(&c));
        assert!(!MonomialIdeal::new(&c, vec![vec![1, 0]])
            .unwrap()
            .is_m_primary(&c));
        let q = ToricCone::quadric();
        assert!(MonomialIdeal::maximal(&q).is_m_primary(&q));
    }

    #[test]
    fn products_and_powers() {
        let c = plane();
        let a = MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 2]]).unwrap();
        let a2 = a.power(&c, 2);
        assert_eq!(a2.gens(), &[vec![0, 4], vec![1, 2], vec![2, 0]]);
        assert_eq!(a.power(&c, 0), MonomialIdeal::unit(&c));
        assert!(a2.contains_monomial(&c, &[1, 3]));
        assert!(!a2.contains_monomial(&c, &[1, 1]));
    }

    #[test]
    fn rejects_exponents_outside_dual_cone() {
        let q = ToricCone::quadric();
        assert!(MonomialIdeal::new(&q, vec![vec![0, 0, 1]]).is_err());
        assert!(MonomialIdeal::new(&q, vec![]).is_err());
    }
}
