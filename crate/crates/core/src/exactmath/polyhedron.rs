use super::linalg::{solve_system, QMatrix};
use super::rational::{dot_q, QVector, Rational};
use crate::error::Result;

/// All `k`-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Vertices of `{x : <normal_i, x> <= bound_i}` found by solving every square
/// subsystem of tight constraints. Meant for the handful of constraints that
/// describe a toric divisor polyhedron.
pub fn polyhedron_vertices(normals: &[QVector], bounds: &[Rational]) -> Result<Vec<QVector>> {
    let Some(dim) = normals.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut out: Vec<QVector> = Vec::new();
    for subset in combinations(normals.len(), dim) {
        let m = QMatrix::from_rows(subset.iter().map(|&i| normals[i].clone()).collect())?;
        if super::linalg::rank(&m) < dim {
            continue;
        }
        let b: Vec<Rational> = subset.iter().map(|&i| bounds[i].clone()).collect();
        let Some(x) = solve_system(&m, &b)? else {
            continue;
        };
        let feasible = normals.iter().zip(bounds).all(|(n, b)| dot_q(n, &x) <= *b);
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}
