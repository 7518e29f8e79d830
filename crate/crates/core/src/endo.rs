//! Finite toric endomorphisms `φ_A` of an affine toric variety, induced by an
//! integer matrix `A` with `A σ = σ`, and the transformation laws they obey.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::{dot_i, gcd_slice, primitive};
use crate::exactmath::{rat, Rational};
use crate::surface::{self, GraphFamily};
use crate::toric::{
    envelope_value, log_discrepancy_value, mixed_multiplicity, MonomialIdeal, ToricCone,
    ToricDivisor,
};

/// Wire form: `{"matrix":[[2,0],[0,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoSpec {
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricEndo {
    matrix: Vec<Vec<i64>>,
    cone: ToricCone,
    /// `A v_i = scale_i · v_{target_i}`.
    ray_map: Vec<(usize, i64)>,
}

impl ToricEndo {
    pub fn new(cone: &ToricCone, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = cone.dim();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism matrix must be {n}x{n}"
            )));
        }
        let mut ray_map = Vec::with_capacity(cone.rays().len());
        for r in cone.rays() {
            let image: Vec<i64> = matrix.iter().map(|row| dot_i(row, r)).collect();
            let scale = gcd_slice(&image);
            let dir = primitive(&image);
            let target = cone.rays().iter().position(|v| *v == dir).ok_or_else(|| {
                Error::Domain(format!(
                    "matrix sends ray {r:?} to {image:?}, which is not on a ray; only maps with A·σ = σ are supported"
                ))
            })?;
            ray_map.push((target, scale));
        }
        let mut hit: Vec<usize> = ray_map.iter().map(|(t, _)| *t).collect();
        hit.sort_unstable();
        hit.dedup();
        if hit.len() != cone.rays().len() {
            return Err(Error::Domain(
                "matrix does not permute the rays of the cone".into(),
            ));
        }
        let e = Self {
            matrix,
            cone: cone.clone(),
            ray_map,
        };
        if e.determinant() == 0 {
            return Err(Error::Domain("endomorphism matrix is singular".into()));
        }
        Ok(e)
    }

    pub fn from_spec(cone: &ToricCone, spec: &EndoSpec) -> Result<Self> {
        Self::new(cone, spec.matrix.clone())
    }

    /// Multiplication by `k` on the lattice.
    pub fn scalar(cone: &ToricCone, k: i64) -> Result<Self> {
        let n = cone.dim();
        Self::new(
            cone,
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect())
                .collect(),
        )
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn cone(&self) -> &ToricCone {
        &self.cone
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| dot_i(row, v)).collect()
    }

    fn determinant(&self) -> i128 {
        fn det(m: &[Vec<i128>]) -> i128 {
            if m.is_empty() {
                return 1;
            }
            (0..m.len())
                .map(|c| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, _)| *j != c)
                                .map(|(_, x)| *x)
                                .collect()
                        })
                        .collect();
                    let sign = if c % 2 == 0 { 1 } else { -1 };
                    sign * m[0][c] * det(&minor)
                })
                .sum()
        }
        det(&self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| i128::from(x)).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    /// `φ_A ∘ φ_B`, i.e. the matrix product `A·B`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let n = self.cone.dim();
        let product = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        Self::new(&self.cone, product)
    }
}

/// `e(φ) = |det A| = [N : A N]`.
pub fn degree(e: &ToricEndo) -> u64 {
    e.determinant().unsigned_abs() as u64
}

/// `φ^* D`: the coefficient at `v_i` is `c_i d_j` where `A v_i = c_i v_j`.
pub fn pullback_divisor(e: &ToricEndo, d: &ToricDivisor) -> Result<ToricDivisor> {
    d.check(&e.cone)?;
    Ok(ToricDivisor::new(
        e.ray_map
            .iter()
            .map(|&(j, c)| rat(c) * &d.coeffs[j])
            .collect(),
    ))
}

/// `φ^{-1} a · O`: the character `χ^u` pulls back to `χ^{Aᵀ u}`.
pub fn pullback_ideal(e: &ToricEndo, a: &MonomialIdeal) -> Result<MonomialIdeal> {
    let n = e.cone.dim();
    let gens = a
        .gens()
        .iter()
        .map(|u| {
            (0..n)
                .map(|j| (0..n).map(|i| e.matrix[i][j] * u[i]).sum())
                .collect()
        })
        .collect();
    MonomialIdeal::new(&e.cone, gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCheck {
    pub point: Vec<i64>,
    /// `Env(φ^* D)(v)`
    pub pulled_back: Rational,
    /// `Env(D)(A v)`
    pub at_image: Rational,
}

impl SampleCheck {
    pub fn holds(&self) -> bool {
        self.pulled_back == self.at_image
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityCheck {
    pub original: Rational,
    pub pulled_back: Rational,
    pub degree: u64,
}

impl MultiplicityCheck {
    pub fn holds(&self) -> bool {
        self.pulled_back == rat(self.degree as i64) * &self.original
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushPullReport {
    pub degree: u64,
    pub envelope_checks: Vec<SampleCheck>,
    pub multiplicity_check: Option<MultiplicityCheck>,
}

impl PushPullReport {
    pub fn passed(&self) -> bool {
        self.envelope_checks.iter().all(SampleCheck::holds)
            && self
                .multiplicity_check
                .as_ref()
                .is_none_or(MultiplicityCheck::holds)
    }

    /// Description of the first failing identity, naming the witness.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.envelope_checks.iter().find(|c| !c.holds()) {
            return Some(format!(
                "Env(φ*D)({:?}) = {} but Env(D)(A v) = {}",
                c.point, c.pulled_back, c.at_image
            ));
        }
        match &self.multiplicity_check {
            Some(m) if !m.holds() => Some(format!(
                "mixed multiplicity of pulled-back ideals is {}, expected {} · {}",
                m.pulled_back, m.degree, m.original
            )),
            _ => None,
        }
    }
}

/// Checks `Env(φ^* D) = φ^* Env(D)` at each sample and, when ideals are
/// given, `e(φ^* a_1, ..., φ^* a_n) = e(φ) · e(a_1, ..., a_n)`. A single
/// ideal is repeated `n` times.
pub fn check_push_pull(
    e: &ToricEndo,
    samples: &[Vec<i64>],
    d: &ToricDivisor,
    ideals: &[MonomialIdeal],
) -> Result<PushPullReport> {
    let cone = &e.cone;
    let pulled = pullback_divisor(e, d)?;
    let envelope_checks = samples
        .iter()
        .map(|v| {
            Ok(SampleCheck {
                point: v.clone(),
                pulled_back: envelope_value(cone, &pulled, v)?,
                at_image: envelope_value(cone, d, &e.apply(v))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let multiplicity_check = if ideals.is_empty() {
        None
    } else {
        let tuple: Vec<MonomialIdeal> = if ideals.len() == 1 {
            vec![ideals[0].clone(); cone.dim()]
        } else {
            ideals.to_vec()
        };
        let pulled: Vec<MonomialIdeal> = tuple
            .iter()
            .map(|a| pullback_ideal(e, a))
            .collect::<Result<_>>()?;
        Some(MultiplicityCheck {
            original: mixed_multiplicity(cone, &tuple)?,
            pulled_back: mixed_multiplicity(cone, &pulled)?,
            degree: degree(e),
        })
    };
    Ok(PushPullReport {
        degree: degree(e),
        envelope_checks,
        multiplicity_check,
    })
}

#[derive(Clone, Debug)]
pub enum MonotonicityCase {
    /// Self-map of a toric germ.
    Toric { endo: ToricEndo },
    /// Degree-`cover` étale cover of a genus-`genus` curve inducing a finite
    /// map between the cones over them.
    SurfaceCover { genus: u32, degree: u32, cover: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// Volume of the source germ.
    pub source_volume: Rational,
    /// Volume of the target germ.
    pub target_volume: Rational,
    pub map_degree: u64,
    /// Interior points at which `A >= 0` was certified (toric case).
    pub certified_points: usize,
}

impl MonotonicityReport {
    /// `Vol(source) >= e(φ) Vol(target)`.
    pub fn inequality_holds(&self) -> bool {
        self.source_volume >= rat(self.map_degree as i64) * &self.target_volume
    }

    pub fn is_equality(&self) -> bool {
        self.source_volume == rat(self.map_degree as i64) * &self.target_volume
    }
}

pub fn volume_monotonicity_report(case: &MonotonicityCase) -> Result<MonotonicityReport> {
    match case {
        MonotonicityCase::Toric { endo } => {
            let cone = endo.cone();
            let points: Vec<Vec<i64>> = cone
                .sample_points()
                .into_iter()
                .filter(|v| cone.contains_in_interior(v))
                .collect();
            for v in &points {
                let a = log_discrepancy_value(cone, v)?;
                if a.value < rat(0) {
                    return Err(Error::Domain(format!(
                        "negative log discrepancy {} at {v:?}",
                        a.value
                    )));
                }
            }
            // A >= 0 everywhere forces the nef part of A to vanish on both sides
            Ok(MonotonicityReport {
                source_volume: rat(0),
                target_volume: rat(0),
                map_degree: degree(endo),
                certified_points: points.len(),
            })
        }
        &MonotonicityCase::SurfaceCover {
            genus,
            degree,
            cover,
        } => {
            if cover == 0 {
                return Err(Error::Domain("cover degree must be positive".into()));
            }
            if genus == 0 && cover > 1 {
                return Err(Error::Domain(
                    "a rational curve has no connected étale covers".into(),
                ));
            }
            let cover_genus = cover * (genus.saturating_sub(1)) + 1;
            let cover_genus = if genus == 0 { 0 } else { cover_genus };
            let source = surface::standard_graph(&GraphFamily::Cone {
                genus: cover_genus,
                degree: cover * degree,
            })?;
            let target = surface::standard_graph(&GraphFamily::Cone { genus, degree })?;
            Ok(MonotonicityReport {
                source_volume: surface::volume(&source),
                target_volume: surface::volume(&target),
                map_degree: cover.into(),
                certified_points: 0,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    fn plane() -> ToricCone {
        ToricCone::orthant(2)
    }

    #[test]
    fn degrees() {
        let c = plane();
        assert_eq!(degree(&ToricEndo::scalar(&c, 2).unwrap()), 4);
        assert_eq!(degree(&ToricEndo::scalar(&c, 1).unwrap()), 1);
        assert_eq!(
            degree(&ToricEndo::new(&c, vec![vec![2, 0], vec![0, 3]]).unwrap()),
            6
        );
    }

    #[test]
    fn divisor_pullbacks() {
        let c = plane();
        let d = ToricDivisor::new(vec![rat(1), ratio(2, 3)]);
        let two = ToricEndo::scalar(&c, 2).unwrap();
        assert_eq!(pullback_divisor(&two, &d).unwrap(), d.scaled(&rat(2)));
        let id = ToricEndo::scalar(&c, 1).unwrap();
        assert_eq!(pullback_divisor(&id, &d).unwrap(), d);
        let swap = ToricEndo::new(&c, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            pullback_divisor(&swap, &ToricDivisor::from_ints(&[1, 2])).unwrap(),
            ToricDivisor::from_ints(&[2, 1])
        );
    }

    #[test]
    fn ideal_pullbacks() {
        let c = plane();
        let m = MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let two = ToricEndo::scalar(&c, 2).unwrap();
        assert_eq!(
            pullback_ideal(&two, &m).unwrap().gens(),
            &[vec![0, 2], vec![2, 0]]
        );
        let id = ToricEndo::scalar(&c, 1).unwrap();
        assert_eq!(pullback_ideal(&id, &m).unwrap(), m);
        let diag = ToricEndo::new(&c, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(
            pullback_ideal(&diag, &m).unwrap().gens(),
            &[vec![0, 2], vec![1, 0]]
        );
    }

    #[test]
    fn push_pull_reports() {
        let c = plane();
        let m = MonomialIdeal::new(&c, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let d = ToricDivisor::from_ints(&[1, 2]);
        for (matrix, pulled_mult) in [
            (vec![vec![2, 0], vec![0, 2]], 4),
            (vec![vec![1, 0], vec![0, 1]], 1),
            (vec![vec![2, 0], vec![0, 3]], 6),
        ] {
            let e = ToricEndo::new(&c, matrix).unwrap();
            let r = check_push_pull(&e, &c.sample_points(), &d, std::slice::from_ref(&m)).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
            let mc = r.multiplicity_check.unwrap();
            assert_eq!(mc.pulled_back, rat(pulled_mult));
            assert_eq!(mc.original, rat(1));
        }
    }

    #[test]
    fn rejects_maps_not_preserving_cone() {
        let q = ToricCone::quadric();
        assert!(ToricEndo::new(&q, vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]).is_err());
        assert!(ToricEndo::new(&plane(), vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(ToricEndo::new(&plane(), vec![vec![1, 0]]).is_err());
        assert!(ToricEndo::new(&plane(), vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let r = volume_monotonicity_report(&MonotonicityCase::SurfaceCover {
            genus: 2,
            degree: 1,
            cover: 2,
        })
        .unwrap();
        assert_eq!(
            (r.source_volume.clone(), r.target_volume.clone()),
            (rat(8), rat(4))
        );
        assert!(r.is_equality());
        let r = volume_monotonicity_report(&MonotonicityCase::SurfaceCover {
            genus: 2,
            degree: 1,
            cover: 1,
        })
        .unwrap();
        assert_eq!(r.source_volume, rat(4));
        let q = ToricCone::quadric();
        let r = volume_monotonicity_report(&MonotonicityCase::Toric {
            endo: ToricEndo::scalar(&q, 2).unwrap(),
        })
        .unwrap();
        assert_eq!(r.map_degree, 8);
        assert!(r.is_equality() && r.certified_points > 0);
        assert!(volume_monotonicity_report(&MonotonicityCase::SurfaceCover {
            genus: 0,
            degree: 1,
            cover: 2
        })
        .is_err());
    }
}
