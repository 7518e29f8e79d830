//! Brute-force computations that cross-check the exact engines: colengths of
//! powers of monomial ideals by lattice-point counting, and LP maxima by
//! enumerating feasible vertices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactmath::linalg::solve_linear;
use crate::exactmath::polyhedron::combinations;
use crate::exactmath::rational::{dot_i, dot_q};
use crate::exactmath::{rat, LpProblem, QMatrix, QVector, Rational};
use crate::toric::{MonomialIdeal, ToricCone};

/// Largest number of lattice points a single count may visit.
pub const MAX_COUNT_POINTS: usize = 2_000_000;
pub const MAX_VERTEX_CONSTRAINTS: usize = 12;
pub const MAX_VERTEX_DIM: usize = 4;

/// Minimal exponents of `a_1^{k_1} ... a_r^{k_r}`, built one factor at a time.
fn power_product_gens(cone: &ToricCone, factors: &[(&MonomialIdeal, u32)]) -> Vec<Vec<i64>> {
    let w = cone.interior_point();
    let mut cur: Vec<Vec<i64>> = vec![vec![0; cone.dim()]];
    for &(a, k) in factors {
        for _ in 0..k {
            let sums: BTreeSet<Vec<i64>> = cur
                .iter()
                .flat_map(|u| {
                    a.gens()
                        .iter()
                        .map(move |g| u.iter().zip(g).map(|(x, y)| x + y).collect())
                })
                .collect();
            let mut sums: Vec<Vec<i64>> = sums.into_iter().collect();
            sums.sort_by_key(|u| dot_i(u, &w));
            let mut kept: Vec<Vec<i64>> = Vec::new();
            for u in sums {
                if !kept.iter().any(|g| divides(cone, g, &u)) {
                    kept.push(u);
                }
            }
            cur = kept;
        }
    }
    cur
}

/// `χ^g` divides `χ^u`, i.e. `u - g ∈ σ^∨`.
fn divides(cone: &ToricCone, g: &[i64], u: &[i64]) -> bool {
    cone.rays().iter().all(|r| {
        r.iter()
            .zip(u.iter().zip(g))
            .map(|(ri, (ui, gi))| ri * (ui - gi))
            .sum::<i64>()
            >= 0
    })
}

/// `dim O / (a_1^{k_1} ... a_r^{k_r})`: the lattice points of `σ^∨` outside the
/// ideal form a finite set closed under going down, so a search from the
/// origin along the Hilbert basis visits exactly them.
pub fn colength_of_product(cone: &ToricCone, factors: &[(&MonomialIdeal, u32)]) -> Result<u64> {
    for (a, _) in factors {
        if a.dim() != cone.dim() {
            return Err(Error::DimensionMismatch(
                "ideal and cone dimensions differ".into(),
            ));
        }
        a.require_m_primary(cone)?;
    }
    let gens = power_product_gens(cone, factors);
    let in_ideal = |u: &[i64]| gens.iter().any(|g| divides(cone, g, u));
    let origin = vec![0; cone.dim()];
    if in_ideal(&origin) {
        return Ok(0);
    }
    let hilbert = cone.dual_hilbert_basis();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([origin.clone()]);
    let mut queue = VecDeque::from([origin]);
    let mut count: u64 = 0;
    while let Some(u) = queue.pop_front() {
        count += 1;
        for h in &hilbert {
            let next: Vec<i64> = u.iter().zip(h).map(|(a, b)| a + b).collect();
            if seen.contains(&next) || in_ideal(&next) {
                continue;
            }
            if seen.len() >= MAX_COUNT_POINTS {
                return Err(Error::Unsupported(format!(
                    "colength exceeds the counting cap of {MAX_COUNT_POINTS} points"
                )));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(count)
}

/// `dim O / a^k` with `a^k` the honest power generated by `k`-fold sums.
pub fn colength(cone: &ToricCone, a: &MonomialIdeal, k: u32) -> Result<u64> {
    colength_of_product(cone, &[(a, k)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub ks: Vec<u32>,
    pub colengths: Vec<u64>,
    /// `n! · dim(O/a^k) / k^n`
    pub fitted: Vec<Rational>,
}

impl CountReport {
    pub fn last_fitted(&self) -> Option<&Rational> {
        self.fitted.last()
    }

    pub fn is_monotone(&self) -> bool {
        self.colengths.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn count_report(cone: &ToricCone, a: &MonomialIdeal, ks: &[u32]) -> Result<CountReport> {
    let n = cone.dim() as u32;
    let fact: i64 = (1..=i64::from(n)).product();
    let mut colengths = Vec::with_capacity(ks.len());
    let mut fitted = Vec::with_capacity(ks.len());
    for &k in ks {
        if k == 0 {
            return Err(Error::Malformed("fitted multiplicities need k >= 1".into()));
        }
        let c = colength(cone, a, k)?;
        colengths.push(c);
        fitted.push(Rational::new(
            (i128::from(fact) * i128::from(c)).into(),
            i128::from(k).pow(n).into(),
        ));
    }
    Ok(CountReport {
        ks: ks.to_vec(),
        colengths,
        fitted,
    })
}

/// Counts at `k = 1..=kmax`.
pub fn multiplicity_estimate(
    cone: &ToricCone,
    a: &MonomialIdeal,
    kmax: u32,
) -> Result<CountReport> {
    count_report(cone, a, &(1..=kmax).collect::<Vec<_>>())
}

/// Constant `C` in `|n! dim(O/a^k)/k^n - e(a)| <= C/k`: `n! · n · D^n` with
/// `D` the largest coordinate sum of a generator in absolute value, which
/// bounds the boundary lattice points of the Newton region.
pub fn error_budget(cone: &ToricCone, a: &MonomialIdeal) -> Rational {
    let n = cone.dim() as u32;
    let d: i64 = a
        .gens()
        .iter()
        .map(|g| g.iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
        .max(1);
    let fact: i64 = (1..=i64::from(n)).product();
    rat(fact * i64::from(n) * d.pow(n))
}

/// `e(a_1, ..., a_n)` as the mixed finite difference
/// `Σ_S (-1)^{n-|S|} dim O/(Π a_i^{k + [i∈S]})` of the colength function at
/// `k = (k, ..., k)`; equals the mixed multiplicity once `k` lies in the range
/// where the colength agrees with its Hilbert polynomial.
pub fn mixed_multiplicity_by_counting(
    cone: &ToricCone,
    ideals: &[MonomialIdeal],
    k: u32,
) -> Result<i64> {
    let n = cone.dim();
    if ideals.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "mixed multiplicity in dimension {n} needs {n} ideals, got {}",
            ideals.len()
        )));
    }
    let mut total: i64 = 0;
    for mask in 0u32..(1 << n) {
        let factors: Vec<(&MonomialIdeal, u32)> = ideals
            .iter()
            .enumerate()
            .map(|(i, a)| (a, k + (mask >> i & 1)))
            .collect();
        let c = colength_of_product(cone, &factors)? as i64;
        let sign = if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        total += sign * c;
    }
    Ok(total)
}

/// `e(a)` as the `n`-th finite difference of `k ↦ dim O/a^k` at `k`.
pub fn samuel_multiplicity_by_counting(cone: &ToricCone, a: &MonomialIdeal, k: u32) -> Result<i64> {
    mixed_multiplicity_by_counting(cone, &vec![a.clone(); cone.dim()], k)
}

/// Every basic feasible point of `{x : <a_i, x> <= b_i}` with its objective
/// value, found by solving each square subsystem.
pub fn lp_vertex_enumerate(problem: &LpProblem) -> Result<Vec<(QVector, Rational)>> {
    problem.check_shape()?;
    let n = problem.dim();
    let m = problem.constraints.len();
    if n > MAX_VERTEX_DIM || m > MAX_VERTEX_CONSTRAINTS {
        return Err(Error::Unsupported(format!(
            "vertex enumeration handles dimension <= {MAX_VERTEX_DIM} and <= {MAX_VERTEX_CONSTRAINTS} constraints, \
             got {n} and {m}"
        )));
    }
    let mut out: Vec<(QVector, Rational)> = Vec::new();
    for subset in combinations(m, n) {
        let rows: Vec<QVector> = subset
            .iter()
            .map(|&i| problem.constraints[i].normal.clone())
            .collect();
        let rhs: QVector = subset
            .iter()
            .map(|&i| problem.constraints[i].bound.clone())
            .collect();
        let point = match solve_linear(&QMatrix::from_rows(rows)?, &rhs) {
            Ok(p) => p,
            Err(Error::Singular) => continue,
            Err(e) => return Err(e),
        };
        if problem.is_feasible(&point) && !out.iter().any(|(p, _)| *p == point) {
            let value = dot_q(&problem.objective, &point);
            out.push((point, value));
        }
    }
    Ok(out)
}

/// Largest objective value over the enumerated vertices.
pub fn vertex_max(problem: &LpProblem) -> Result<Option<Rational>> {
    Ok(lp_vertex_enumerate(problem)?
        .into_iter()
        .map(|(_, v)| v)
        .max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{lp_max, qvec};
    use crate::toric::{EnvelopeFunction, ToricDivisor};

    fn ideal(c: &ToricCone, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(c, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn colength_examples() {
        let c = ToricCone::orthant(2);
        let m = ideal(&c, &[&[1, 0], &[0, 1]]);
        for k in 0..8u32 {
            assert_eq!(colength(&c, &m, k).unwrap(), u64::from(k * (k + 1) / 2));
        }
        let a = ideal(&c, &[&[1, 0], &[0, 2]]);
        assert_eq!(colength(&c, &a, 2).unwrap(), 6);
        assert_eq!(colength(&c, &a, 0).unwrap(), 0);
        assert!(matches!(
            colength(&c, &ideal(&c, &[&[1, 1]]), 1),
            Err(Error::NotMPrimary(_))
        ));
    }

    #[test]
    fn quadric_max_ideal_counts() {
        // graded pieces of the quadric cone have dimension (j+1)^2
        let q = ToricCone::quadric();
        let m = MonomialIdeal::maximal(&q);
        for k in 1..6u32 {
            let k = u64::from(k);
            assert_eq!(
                colength(&q, &m, k as u32).unwrap(),
                k * (k + 1) * (2 * k + 1) / 6
            );
        }
        assert_eq!(samuel_multiplicity_by_counting(&q, &m, 3).unwrap(), 2);
    }

    #[test]
    fn reports_and_budgets() {
        let c = ToricCone::orthant(2);
        let a = ideal(&c, &[&[1, 0], &[0, 2]]);
        let r = multiplicity_estimate(&c, &a, 10).unwrap();
        assert!(r.is_monotone());
        let err = r.last_fitted().unwrap() - rat(2);
        assert!(err <= error_budget(&c, &a) / rat(10));
    }

    #[test]
    fn counted_mixed_multiplicities() {
        let c = ToricCone::orthant(2);
        let a = ideal(&c, &[&[1, 0], &[0, 2]]);
        let b = ideal(&c, &[&[2, 0], &[0, 1]]);
        assert_eq!(
            mixed_multiplicity_by_counting(&c, &[a.clone(), b], 3).unwrap(),
            1
        );
        assert_eq!(samuel_multiplicity_by_counting(&c, &a, 3).unwrap(), 2);
    }

    #[test]
    fn vertex_enumeration_matches_simplex() {
        let q = ToricCone::quadric();
        for (d, expected) in [
            ([2, 1, 2, 1], 3),
            ([0, 0, 0, 0], 0),
            ([1, 1, 1, 0], 1),
            ([1, 0, 1, 1], 1),
        ] {
            let f = EnvelopeFunction::new(&q, ToricDivisor::from_ints(&d)).unwrap();
            let p = f.problem(&[1, 1, 0]);
            assert_eq!(vertex_max(&p).unwrap(), Some(rat(expected)));
            assert_eq!(lp_max(&p).unwrap().value(), Some(&rat(expected)));
        }
        let big = (0..13).fold(LpProblem::new(qvec(&[1])), |p, _| {
            p.with_constraint(qvec(&[1]), rat(1))
        });
        assert!(matches!(
            lp_vertex_enumerate(&big),
            Err(Error::Unsupported(_))
        ));
    }
}
