//! Nef envelopes of toric Weil divisors.
//!
//! For `D = Σ d_i D_i` the envelope is the largest convex 1-homogeneous
//! function below `d` on the rays; at a toric valuation `v` its coefficient is
//! the LP value `max { <m, v> : <m, v_i> <= d_i }`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::ToricCone;
use crate::error::{Error, Result};
use crate::exactmath::linalg::solve_system;
use crate::exactmath::rational::{dot_qi, serde_vec, to_i64};
use crate::exactmath::{lp_max, rat, LpOutcome, LpProblem, QMatrix, QVector, Rational};

/// Toric Weil divisor, one rational coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDivisor {
    #[serde(with = "serde_vec")]
    pub coeffs: QVector,
}

impl ToricDivisor {
    pub fn new(coeffs: QVector) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().copied().map(rat).collect())
    }

    /// `-K_X = Σ D_i`.
    pub fn anticanonical(cone: &ToricCone) -> Self {
        Self::new(vec![rat(1); cone.rays().len()])
    }

    pub fn check(&self, cone: &ToricCone) -> Result<()> {
        if self.coeffs.len() != cone.rays().len() {
            return Err(Error::DimensionMismatch(format!(
                "divisor has {} coefficients, cone has {} rays",
                self.coeffs.len(),
                cone.rays().len()
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * t).collect())
    }

    pub fn integer_coeffs(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                to_i64(c)
                    .ok_or_else(|| Error::Malformed(format!("coefficient {c} is not an integer")))
            })
            .collect()
    }
}

impl std::ops::Neg for &ToricDivisor {
    type Output = ToricDivisor;
    fn neg(self) -> ToricDivisor {
        ToricDivisor::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Add<&ToricDivisor> for &ToricDivisor {
    type Output = ToricDivisor;
    fn add(self, rhs: &ToricDivisor) -> ToricDivisor {
        ToricDivisor::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// `Env_X(D)` viewed as a function on the toric valuations of `σ`.
#[derive(Clone, Debug)]
pub struct EnvelopeFunction<'a> {
    cone: &'a ToricCone,
    divisor: ToricDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeValue {
    pub value: Rational,
    /// An optimal linear form `m`; `<m, v_i> <= d_i` holds for every ray.
    pub optimal_m: QVector,
}

impl<'a> EnvelopeFunction<'a> {
    pub fn new(cone: &'a ToricCone, divisor: ToricDivisor) -> Result<Self> {
        divisor.check(cone)?;
        Ok(Self { cone, divisor })
    }

    pub fn divisor(&self) -> &ToricDivisor {
        &self.divisor
    }

    pub fn problem(&self, v: &[i64]) -> LpProblem {
        self.cone.rays().iter().zip(&self.divisor.coeffs).fold(
            LpProblem::new(v.iter().copied().map(rat).collect()),
            |p, (ray, d)| p.with_constraint(ray.iter().copied().map(rat).collect(), d.clone()),
        )
    }

    pub fn eval(&self, v: &[i64]) -> Result<EnvelopeValue> {
        self.cone.require_in_cone(v)?;
        match lp_max(&self.problem(v))? {
            LpOutcome::Optimal { value, point } => Ok(EnvelopeValue {
                value,
                optimal_m: point,
            }),
            // m = -t u with u in the interior of the dual cone is always feasible,
            // and v in the cone bounds the objective
            other => unreachable!("envelope LP must be bounded and feasible, got {other:?}"),
        }
    }
}

/// `ord_v Env_X(D)`.
pub fn envelope_value(cone: &ToricCone, d: &ToricDivisor, v: &[i64]) -> Result<Rational> {
    Ok(EnvelopeFunction::new(cone, d.clone())?.eval(v)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartierCheck {
    /// `<m, v_i> = d_i` for all rays.
    Cartier { linear_form: QVector },
    /// `Env(D)(v) + Env(-D)(v) < 0` at an interior `v`.
    NotCartier {
        witness: Vec<i64>,
        env_d: Rational,
        env_neg_d: Rational,
    },
}

impl CartierCheck {
    pub fn is_cartier(&self) -> bool {
        matches!(self, CartierCheck::Cartier { .. })
    }
}

/// Decides whether `Env(-D) = -Env(D)`; for toric divisors this happens
/// exactly when the coefficients come from one linear form.
pub fn is_numerically_cartier(cone: &ToricCone, d: &ToricDivisor) -> Result<CartierCheck> {
    d.check(cone)?;
    let rays = QMatrix::from_i64_rows(cone.rays())?;
    if let Some(m) = solve_system(&rays, &d.coeffs)? {
        return Ok(CartierCheck::Cartier { linear_form: m });
    }
    // Env(D) + Env(-D) is convex and <= 0; if it vanished at one interior
    // point it would vanish identically and D would be Cartier.
    let neg = -d;
    let mut candidates = vec![cone.interior_point()];
    candidates.extend(
        cone.sample_points()
            .into_iter()
            .filter(|v| cone.contains_in_interior(v)),
    );
    for v in candidates {
        let env_d = envelope_value(cone, d, &v)?;
        let env_neg_d = envelope_value(cone, &neg, &v)?;
        if (&env_d + &env_neg_d).is_negative() {
            return Ok(CartierCheck::NotCartier {
                witness: v,
                env_d,
                env_neg_d,
            });
        }
    }
    Err(Error::Domain(
        "linear system for a Cartier certificate is inconsistent but no interior witness exists; \
         numerical and R-Cartier tests disagree"
            .into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDiscrepancy {
    pub value: Rational,
    pub optimal_m: QVector,
    /// `m = 0` is feasible for `<m, v_i> <= 1`, so `value >= <0, v> = 0`.
    pub nonnegativity_certificate: QVector,
}

/// Coefficient of the log-discrepancy b-divisor at the exceptional toric
/// valuation `v`: `Env_X(-K_X)(v)` with `-K_X = Σ D_i`.
pub fn log_discrepancy_value(cone: &ToricCone, v: &[i64]) -> Result<LogDiscrepancy> {
    cone.require_interior(v)?;
    let env = EnvelopeFunction::new(cone, ToricDivisor::anticanonical(cone))?.eval(v)?;
    let zero = vec![Rational::zero(); cone.dim()];
    debug_assert!(env.value >= dot_qi(&zero, v));
    Ok(LogDiscrepancy {
        value: env.value,
        optimal_m: env.optimal_m,
        nonnegativity_certificate: zero,
    })
}

/// Smallest `c` with `c v - w ∈ σ`: `max_l <l, w> / <l, v>` over facet normals.
pub fn izumi_constant(cone: &ToricCone, v: &[i64], w: &[i64]) -> Result<Rational> {
    cone.require_interior(v)?;
    cone.require_interior(w)?;
    Ok(cone
        .facet_normals()
        .iter()
        .map(|l| {
            let lw: i64 = l.iter().zip(w).map(|(a, b)| a * b).sum();
            let lv: i64 = l.iter().zip(v).map(|(a, b)| a * b).sum();
            Rational::new(lw.into(), lv.into())
        })
        .max()
        .expect("cone has facets"))
}
