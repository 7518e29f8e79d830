//! Exact two-phase simplex over the rationals with Bland's anti-cycling rule.
//!
//! Problems are stated in the inequality form used by the nef-envelope
//! computations: maximize `<c, m>` over free `m` subject to `<m, n_i> <= d_i`.

use num_traits::{Signed, Zero};

use super::rational::{dot_q, QVector, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: QVector,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: QVector,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: QVector,
    },
    /// `ray` satisfies `<ray, n_i> <= 0` for all constraints and `<c, ray> > 0`.
    Unbounded {
        ray: QVector,
    },
    /// `farkas >= 0` with `sum y_i n_i = 0` and `sum y_i d_i < 0`.
    Infeasible {
        farkas: QVector,
    },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LpProblem {
    pub fn new(objective: QVector) -> Self {
        Self {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn with_constraint(mut self, normal: QVector, bound: Rational) -> Self {
        self.constraints.push(Constraint { normal, bound });
        self
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn check_shape(&self) -> Result<()> {
        let n = self.dim();
        match self.constraints.iter().position(|c| c.normal.len() != n) {
            Some(i) => Err(Error::DimensionMismatch(format!(
                "constraint {i} has length {}, objective has length {n}",
                self.constraints[i].normal.len()
            ))),
            None => Ok(()),
        }
    }

    /// True when `m` satisfies every constraint exactly.
    pub fn is_feasible(&self, m: &[Rational]) -> bool {
        self.constraints
            .iter()
            .all(|c| dot_q(&c.normal, m) <= c.bound)
    }
}

/// Maximizes the objective. Deterministic; the value does not depend on the
/// constraint order.
pub fn lp_max(problem: &LpProblem) -> Result<LpOutcome> {
    problem.check_shape()?;
    let n = problem.dim();
    let k = problem.constraints.len();
    let ncols = 2 * n + k;

    // columns: m+ (n), m- (n), slacks (k)
    let rows: Vec<Vec<Rational>> = problem
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = vec![Rational::zero(); ncols];
            for (j, a) in c.normal.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a.clone();
            }
            row[2 * n + i] = Rational::from_integer(1.into());
            row
        })
        .collect();
    let rhs: Vec<Rational> = problem
        .constraints
        .iter()
        .map(|c| c.bound.clone())
        .collect();

    let Some(mut tab) = Tableau::feasible(rows, rhs) else {
        return Ok(LpOutcome::Infeasible {
            farkas: farkas_certificate(problem),
        });
    };

    let mut cost = vec![Rational::zero(); ncols];
    for (j, c) in problem.objective.iter().enumerate() {
        cost[j] = c.clone();
        cost[n + j] = -c.clone();
    }
    match tab.optimize(&cost) {
        Step::Optimal => {
            let x = tab.solution();
            let point: QVector = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            let value = dot_q(&problem.objective, &point);
            Ok(LpOutcome::Optimal { value, point })
        }
        Step::Unbounded(col) => {
            let d = tab.direction(col);
            let ray = (0..n).map(|j| &d[j] - &d[n + j]).collect();
            Ok(LpOutcome::Unbounded { ray })
        }
    }
}

/// Solves `y >= 0, sum y_i n_i = 0, sum y_i d_i = -1`, which is feasible
/// exactly when the primal system is not (Farkas' lemma).
fn farkas_certificate(problem: &LpProblem) -> QVector {
    let n = problem.dim();
    let k = problem.constraints.len();
    let mut rows = Vec::with_capacity(n + 1);
    for j in 0..n {
        rows.push(
            problem
                .constraints
                .iter()
                .map(|c| c.normal[j].clone())
                .collect::<Vec<_>>(),
        );
    }
    rows.push(
        problem
            .constraints
            .iter()
            .map(|c| -c.bound.clone())
            .collect(),
    );
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::from_integer(1.into()));
    let tab = Tableau::feasible(rows, rhs).expect("Farkas alternative must be feasible");
    let y = tab.solution();
    y[..k].to_vec()
}

enum Step {
    Optimal,
    Unbounded(usize),
}

/// Canonical-form tableau for `A x = b, x >= 0`; `a` is kept as `B⁻¹A`.
struct Tableau {
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    /// Phase one. Returns a tableau on a feasible basis (redundant rows
    /// dropped, artificial columns removed), or `None` when infeasible.
    fn feasible(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Self> {
        let m = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                *b = -b.clone();
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend((0..m).map(|j| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
        }
        let mut tab = Tableau {
            a: rows,
            rhs,
            basis: (ncols..ncols + m).collect(),
            ncols: ncols + m,
        };
        let mut cost = vec![Rational::zero(); ncols + m];
        for c in cost.iter_mut().skip(ncols) {
            *c = Rational::from_integer((-1).into());
        }
        match tab.optimize(&cost) {
            Step::Optimal => {}
            Step::Unbounded(_) => unreachable!("phase one objective is bounded"),
        }
        if tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .any(|(&b, v)| b >= ncols && !v.is_zero())
        {
            return None;
        }

        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < tab.a.len() {
            if tab.basis[r] < ncols {
                r += 1;
                continue;
            }
            match (0..ncols).find(|&j| !tab.a[r][j].is_zero()) {
                Some(j) => {
                    tab.pivot(r, j);
                    r += 1;
                }
                None => {
                    tab.a.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                }
            }
        }
        for row in tab.a.iter_mut() {
            row.truncate(ncols);
        }
        tab.ncols = ncols;
        Some(tab)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.a[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, p) in self.a[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
            self.rhs[i] -= &pivot_rhs * &f;
        }
        self.basis[r] = c;
    }

    /// Primal simplex, maximizing `cost · x`, Bland's rule throughout.
    fn optimize(&mut self, cost: &[Rational]) -> Step {
        loop {
            let entering = (0..self.ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.a[i][j].is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * &self.a[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Step::Unbounded(j),
            }
        }
    }

    fn solution(&self) -> QVector {
        let mut x = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }

    fn direction(&self, col: usize) -> QVector {
        let mut d = vec![Rational::zero(); self.ncols];
        d[col] = Rational::from_integer(1.into());
        for (i, &b) in self.basis.iter().enumerate() {
            d[b] = -self.a[i][col].clone();
        }
        d
    }
}
