use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::linalg::rank;
use crate::exactmath::polyhedron::combinations;
use crate::exactmath::rational::{dot_i, gcd_slice, primitive};
use crate::exactmath::QMatrix;

/// Wire form of a cone: `{"dim":3,"rays":[[1,0,0],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isolation {
    /// Every proper face was checked to be unimodular.
    Verified,
    /// Dimension four or more: the caller vouches for the isolated singularity.
    UserAsserted,
}

/// Strongly convex full-dimensional rational cone `σ ⊂ N_R` given by its
/// primitive extreme rays, together with the inward facet normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    facet_normals: Vec<Vec<i64>>,
    isolation: Isolation,
}

impl ToricCone {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("cone dimension must be positive".into()));
        }
        if rays.is_empty() {
            return Err(Error::Malformed("cone has no rays".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "ray {i} has length {}, cone dimension is {dim}",
                    r.len()
                )));
            }
            match gcd_slice(r) {
                0 => return Err(Error::Malformed(format!("ray {i} is zero"))),
                1 => {}
                _ => {
                    return Err(Error::Malformed(format!(
                        "ray {i} {r:?} is not primitive; use {:?}",
                        primitive(r)
                    )))
                }
            }
            if rays[..i].contains(r) {
                return Err(Error::Malformed(format!("ray {i} {r:?} is repeated")));
            }
        }
        if int_rank(&rays) < dim {
            return Err(Error::Domain("cone is not full-dimensional".into()));
        }

        let facet_normals = compute_facet_normals(dim, &rays);
        if int_rank(&facet_normals) < dim {
            return Err(Error::Domain("cone is not strongly convex".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            let tight: Vec<Vec<i64>> = facet_normals
                .iter()
                .filter(|l| dot_i(l, r) == 0)
                .cloned()
                .collect();
            if int_rank(&tight) + 1 < dim {
                return Err(Error::Domain(format!(
                    "ray {i} {r:?} is not an extreme ray"
                )));
            }
        }

        let isolation = if dim <= 3 {
            check_isolated(dim, &rays, &facet_normals)?;
            Isolation::Verified
        } else {
            Isolation::UserAsserted
        };
        Ok(Self {
            dim,
            rays,
            facet_normals,
            isolation,
        })
    }

    pub fn from_spec(spec: &ConeSpec) -> Result<Self> {
        Self::new(spec.dim, spec.rays.clone())
    }

    pub fn to_spec(&self) -> ConeSpec {
        ConeSpec {
            dim: self.dim,
            rays: self.rays.clone(),
        }
    }

    /// Rays `(1,0,0), (0,1,0), (0,0,1), (1,1,-1)`: the cone over a quadric surface.
    pub fn quadric() -> Self {
        Self::new(
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]],
        )
        .expect("quadric cone is valid")
    }

    /// The positive orthant: a smooth point.
    pub fn orthant(dim: usize) -> Self {
        let rays = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(dim, rays).expect("orthant is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Inward primitive facet normals; also the extreme rays of `σ^∨`.
    pub fn facet_normals(&self) -> &[Vec<i64>] {
        &self.facet_normals
    }

    pub fn isolation(&self) -> Isolation {
        self.isolation
    }

    pub fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector {v:?} has length {}, cone dimension is {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.facet_normals.iter().all(|l| dot_i(l, v) >= 0)
    }

    pub fn contains_in_interior(&self, v: &[i64]) -> bool {
        self.facet_normals.iter().all(|l| dot_i(l, v) > 0)
    }

    pub fn dual_contains(&self, u: &[i64]) -> bool {
        self.rays.iter().all(|r| dot_i(r, u) >= 0)
    }

    pub fn require_in_cone(&self, v: &[i64]) -> Result<()> {
        self.check_dim(v)?;
        if !self.contains(v) {
            return Err(Error::NotInCone(v.to_vec()));
        }
        Ok(())
    }

    pub fn require_interior(&self, v: &[i64]) -> Result<()> {
        self.check_dim(v)?;
        if !self.contains_in_interior(v) {
            return Err(Error::NotInterior(v.to_vec()));
        }
        Ok(())
    }

    /// Primitive vector along the sum of all rays; always interior.
    pub fn interior_point(&self) -> Vec<i64> {
        let sum: Vec<i64> = (0..self.dim)
            .map(|k| self.rays.iter().map(|r| r[k]).sum())
            .collect();
        primitive(&sum)
    }

    /// Deterministic sample of points of `σ`: pairwise ray sums, the sum of
    /// all rays plus each ray, and the sum of all rays, each made primitive.
    pub fn sample_points(&self) -> Vec<Vec<i64>> {
        let add =
            |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let total: Vec<i64> = self
            .rays
            .iter()
            .fold(vec![0; self.dim], |acc, r| add(&acc, r));
        let mut out: Vec<Vec<i64>> = Vec::new();
        let mut push = |v: Vec<i64>| {
            let v = primitive(&v);
            if !out.contains(&v) {
                out.push(v);
            }
        };
        for pair in combinations(self.rays.len(), 2) {
            push(add(&self.rays[pair[0]], &self.rays[pair[1]]));
        }
        for r in &self.rays {
            push(add(&total, r));
        }
        push(total);
        out
    }

    /// Minimal generators of the semigroup `σ^∨ ∩ M`.
    pub fn dual_hilbert_basis(&self) -> Vec<Vec<i64>> {
        let w = self.interior_point();
        let (lo, hi) = zonotope_box(self.dim, &self.facet_normals);
        let mut cands: Vec<Vec<i64>> = lattice_box(&lo, &hi)
            .filter(|u| u.iter().any(|&x| x != 0) && self.dual_contains(u))
            .collect();
        cands.sort_by_key(|u| (dot_i(u, &w), u.clone()));
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for u in &cands {
            let reducible = basis.iter().any(|h| {
                let diff: Vec<i64> = u.iter().zip(h).map(|(a, b)| a - b).collect();
                self.dual_contains(&diff)
            });
            if !reducible {
                basis.push(u.clone());
            }
        }
        basis
    }
}

/// Componentwise bounding box of the zonotope `Σ [0,1] g_j`.
pub(crate) fn zonotope_box(dim: usize, gens: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let lo = (0..dim)
        .map(|k| gens.iter().map(|g| g[k].min(0)).sum())
        .collect();
    let hi = (0..dim)
        .map(|k| gens.iter().map(|g| g[k].max(0)).sum())
        .collect();
    (lo, hi)
}

/// All integer points of the box `[lo, hi]`, last coordinate fastest.
pub(crate) fn lattice_box(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = Vec<i64>> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let empty = lo.iter().zip(&hi).any(|(a, b)| a > b);
    let mut cur = if empty { None } else { Some(lo.clone()) };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                cur = None;
                break;
            }
            k -= 1;
            if next[k] < hi[k] {
                next[k] += 1;
                cur = Some(next);
                break;
            }
            next[k] = lo[k];
        }
        Some(out)
    })
}

fn int_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&QMatrix::from_i64_rows(rows).expect("rows share a length"))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
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
                sign * m[0][c] * det_i128(&minor)
            })
            .sum(),
    }
}

/// Integer normal to the span of `dim - 1` vectors (generalized cross product).
fn cofactor_normal(dim: usize, vs: &[&Vec<i64>]) -> Vec<i64> {
    (0..dim)
        .map(|k| {
            let minor: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, x)| i128::from(*x))
                        .collect()
                })
                .collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            i64::try_from(sign * det_i128(&minor)).expect("facet normal fits in i64")
        })
        .collect()
}

fn compute_facet_normals(dim: usize, rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut normals: Vec<Vec<i64>> = Vec::new();
    for subset in combinations(rays.len(), dim - 1) {
        let vs: Vec<&Vec<i64>> = subset.iter().map(|&i| &rays[i]).collect();
        let n = cofactor_normal(dim, &vs);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let signs: Vec<i64> = rays.iter().map(|r| dot_i(&n, r).signum()).collect();
        let oriented = if signs.iter().all(|&s| s >= 0) {
            n
        } else if signs.iter().all(|&s| s <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let oriented = primitive(&oriented);
        if !normals.contains(&oriented) {
            normals.push(oriented);
        }
    }
    normals.sort();
    normals
}

fn check_isolated(dim: usize, rays: &[Vec<i64>], normals: &[Vec<i64>]) -> Result<()> {
    if dim < 3 {
        return Ok(());
    }
    for l in normals {
        let on_facet: Vec<&Vec<i64>> = rays.iter().filter(|r| dot_i(l, r) == 0).collect();
        if on_facet.len() != 2 {
            return Err(Error::Domain(format!(
                "facet with normal {l:?} is not simplicial; the singularity is not isolated"
            )));
        }
        let (a, b) = (on_facet[0], on_facet[1]);
        let minors = [
            a[0] * b[1] - a[1] * b[0],
            a[0] * b[2] - a[2] * b[0],
            a[1] * b[2] - a[2] * b[1],
        ];
        if gcd_slice(&minors) != 1 {
            return Err(Error::Domain(format!(
                "face spanned by {a:?} and {b:?} is singular; the singularity is not isolated"
            )));
        }
    }
    Ok(())
}
