//! Normal surface singularities presented by the weighted dual graph of a
//! log resolution.
//!
//! Everything here is linear algebra with the intersection matrix
//! `M_ij = E_i · E_j`: Mumford's numerical pull-back solves `M x = rhs`, the
//! relative Zariski decomposition is computed by repeatedly absorbing the
//! components on which the nef part is negative, and the volume is `-P²` for
//! the nef part `P` of the log-discrepancy divisor.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::linalg::first_failing_minor;
use crate::exactmath::rational::serde_vec;
use crate::exactmath::{rat, solve_linear, QMatrix, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(rename = "self")]
    pub self_int: i64,
    pub genus: u32,
}

/// Wire form of a graph; validated into [`ResolutionGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<[u32; 3]>,
}

/// Connected SNC dual graph whose intersection matrix is negative definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize, u32)>,
    matrix: QMatrix,
}

impl ResolutionGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::Malformed("resolution graph has no vertices".into()));
        }
        let mut matrix = QMatrix::zeros(n, n);
        for (i, v) in vertices.iter().enumerate() {
            matrix[(i, i)] = rat(v.self_int);
        }
        for &(i, j, mult) in &edges {
            if i >= n || j >= n {
                return Err(Error::Malformed(format!(
                    "edge ({i}, {j}) refers to a missing vertex"
                )));
            }
            if i == j {
                return Err(Error::Malformed(format!(
                    "self-loop at vertex {i}; present the curve as a blown-up SNC graph"
                )));
            }
            if mult == 0 {
                return Err(Error::Malformed(format!(
                    "edge ({i}, {j}) has multiplicity 0"
                )));
            }
            matrix[(i, j)] += rat(mult.into());
            matrix[(j, i)] += rat(mult.into());
        }

        let mut adj = vec![Vec::new(); n];
        for &(i, j, _) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Malformed(format!(
                "graph is disconnected (vertex {i} unreachable)"
            )));
        }

        if let Some((order, value)) = first_failing_minor(&matrix)? {
            return Err(Error::NotNegativeDefinite { order, value });
        }
        Ok(Self {
            vertices,
            edges,
            matrix,
        })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        Self::new(
            spec.vertices.clone(),
            spec.edges
                .iter()
                .map(|&[i, j, m]| (i as usize, j as usize, m))
                .collect(),
        )
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j, m)| [i as u32, j as u32, m])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn intersection_matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// Relabels vertices: vertex `i` of `self` becomes vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut vertices = self.vertices.clone();
        for (i, &p) in perm.iter().enumerate() {
            vertices[p] = self.vertices[i];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(i, j, m)| (perm[i], perm[j], m))
            .collect();
        Self::new(vertices, edges)
    }

    /// `D · D'` for exceptional divisors.
    pub fn intersect(&self, a: &ExcDivisor, b: &ExcDivisor) -> Result<Rational> {
        self.check_len(a)?;
        self.check_len(b)?;
        self.matrix.bilinear(&a.coeffs, &b.coeffs)
    }

    /// The vector `(D · E_j)_j`.
    pub fn intersections_with_components(&self, d: &ExcDivisor) -> Result<QVector> {
        self.check_len(d)?;
        self.matrix.mul_vec(&d.coeffs)
    }

    fn check_len(&self, d: &ExcDivisor) -> Result<()> {
        if d.coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "divisor has {} coefficients, graph has {} vertices",
                d.coeffs.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Exceptional divisor `Σ c_i E_i` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcDivisor {
    #[serde(with = "serde_vec")]
    pub coeffs: QVector,
}

impl ExcDivisor {
    pub fn new(coeffs: QVector) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (i, &p) in perm.iter().enumerate() {
            coeffs[p] = self.coeffs[i].clone();
        }
        Self::new(coeffs)
    }
}

impl std::ops::Sub<&ExcDivisor> for &ExcDivisor {
    type Output = ExcDivisor;
    fn sub(self, rhs: &ExcDivisor) -> ExcDivisor {
        ExcDivisor::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl std::ops::Add<&ExcDivisor> for &ExcDivisor {
    type Output = ExcDivisor;
    fn add(self, rhs: &ExcDivisor) -> ExcDivisor {
        ExcDivisor::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZariskiDecomposition {
    pub nef_part: ExcDivisor,
    pub neg_part: ExcDivisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityClass {
    Klt,
    LcNotKlt,
    NotLc,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityClass::Klt => "klt",
            SingularityClass::LcNotKlt => "lc_not_klt",
            SingularityClass::NotLc => "not_lc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: SingularityClass,
    /// Coefficients of the log-discrepancy divisor, the evidence for `class`.
    pub log_discrepancy: ExcDivisor,
}

/// `K_Y · E_i = 2 g_i - 2 - E_i²` by adjunction on smooth components.
pub fn canonical_intersections(g: &ResolutionGraph) -> QVector {
    g.vertices
        .iter()
        .map(|v| rat(2 * i64::from(v.genus) - 2 - v.self_int))
        .collect()
}

/// Mumford's numerical pull-back: the unique exceptional `x` with
/// `x · E_j = rhs_j` for every `j`.
pub fn numerical_pullback(g: &ResolutionGraph, rhs: &[Rational]) -> Result<ExcDivisor> {
    solve_linear(g.intersection_matrix(), rhs).map(ExcDivisor::new)
}

/// Discrepancies `a_i` in `K_Y = π*K_X + Σ a_i E_i`.
pub fn discrepancies(g: &ResolutionGraph) -> ExcDivisor {
    numerical_pullback(g, &canonical_intersections(g))
        .expect("negative definite intersection matrix is invertible")
}

/// `A_{Y/X} = K_Y + E - π*K_X`, i.e. coefficients `a_i + 1`.
pub fn log_discrepancy_divisor(g: &ResolutionGraph) -> ExcDivisor {
    let a = discrepancies(g);
    ExcDivisor::new(a.coeffs.into_iter().map(|x| x + Rational::one()).collect())
}

/// Relative Zariski decomposition `d = P + N`: `N >= 0` is the smallest
/// exceptional divisor with `P · E_j >= 0` for all `j`.
pub fn zariski_decompose(g: &ResolutionGraph, d: &ExcDivisor) -> Result<ZariskiDecomposition> {
    let n = g.len();
    let d_dot = g.intersections_with_components(d)?;
    let mut support: Vec<usize> = Vec::new();
    loop {
        let mut neg = ExcDivisor::zero(n);
        if !support.is_empty() {
            // (d - N) · E_j = 0 for j in the support
            let sub = g.intersection_matrix().principal_submatrix(&support);
            let rhs: QVector = support.iter().map(|&j| d_dot[j].clone()).collect();
            let c = solve_linear(&sub, &rhs)?;
            for (&j, cj) in support.iter().zip(c) {
                neg.coeffs[j] = cj;
            }
        }
        let nef = d - &neg;
        let p_dot = g.intersections_with_components(&nef)?;
        let violating: Vec<usize> = (0..n)
            .filter(|j| p_dot[*j].is_negative() && !support.contains(j))
            .collect();
        if violating.is_empty() {
            return Ok(ZariskiDecomposition {
                nef_part: nef,
                neg_part: neg,
            });
        }
        support.extend(violating);
        support.sort_unstable();
    }
}

/// `-P²` for the nef part `P` of `d`.
pub fn local_volume(g: &ResolutionGraph, d: &ExcDivisor) -> Result<Rational> {
    let z = zariski_decompose(g, d)?;
    Ok(-g.intersect(&z.nef_part, &z.nef_part)?)
}

/// Volume of the singularity: `-P²` where `P` is the nef part of `A_{Y/X}`.
pub fn volume(g: &ResolutionGraph) -> Rational {
    local_volume(g, &log_discrepancy_divisor(g)).expect("log discrepancy has graph length")
}

pub fn classify(g: &ResolutionGraph) -> Classification {
    let a = log_discrepancy_divisor(g);
    let class = if a.coeffs.iter().all(Signed::is_positive) {
        SingularityClass::Klt
    } else if a.is_effective() {
        SingularityClass::LcNotKlt
    } else {
        SingularityClass::NotLc
    };
    Classification {
        class,
        log_discrepancy: a,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuVal {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl std::str::FromStr for DuVal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase();
        let bad = || Error::Malformed(format!("unknown Du Val type {s:?}"));
        let (kind, rank) = s.split_at(1);
        let rank: usize = rank.trim_start_matches('_').parse().map_err(|_| bad())?;
        match (kind, rank) {
            ("A", n) => Ok(DuVal::A(n)),
            ("D", n) => Ok(DuVal::D(n)),
            ("E", 6) => Ok(DuVal::E6),
            ("E", 7) => Ok(DuVal::E7),
            ("E", 8) => Ok(DuVal::E8),
            _ => Err(bad()),
        }
    }
}

/// Standard graph families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// Cone over a smooth curve of genus `genus` embedded with degree `degree`.
    Cone {
        genus: u32,
        degree: u32,
    },
    /// Cycle of rational curves with the given self-intersections.
    CuspCycle(Vec<i64>),
    DuVal(DuVal),
}

pub fn standard_graph(family: &GraphFamily) -> Result<ResolutionGraph> {
    let rational = |s: i64| Vertex {
        self_int: s,
        genus: 0,
    };
    match family {
        GraphFamily::Cone { genus, degree } => {
            if *degree == 0 {
                return Err(Error::Domain("cone degree must be positive".into()));
            }
            ResolutionGraph::new(
                vec![Vertex {
                    self_int: -i64::from(*degree),
                    genus: *genus,
                }],
                vec![],
            )
        }
        GraphFamily::CuspCycle(selfs) => {
            if selfs.is_empty() || selfs.iter().any(|&s| s > -2) || selfs.iter().all(|&s| s > -3) {
                return Err(Error::Domain(
                    "cusp cycle needs self-intersections <= -2 with at least one <= -3".into(),
                ));
            }
            match selfs.len() {
                // a nodal rational curve has arithmetic genus one
                1 => ResolutionGraph::new(
                    vec![Vertex {
                        self_int: selfs[0],
                        genus: 1,
                    }],
                    vec![],
                ),
                2 => ResolutionGraph::new(
                    selfs.iter().map(|&s| rational(s)).collect(),
                    vec![(0, 1, 2)],
                ),
                k => ResolutionGraph::new(
                    selfs.iter().map(|&s| rational(s)).collect(),
                    (0..k).map(|i| (i, (i + 1) % k, 1)).collect(),
                ),
            }
        }
        GraphFamily::DuVal(kind) => {
            let (n, mut edges): (usize, Vec<(usize, usize, u32)>) = match *kind {
                DuVal::A(n) if n >= 1 => (n, (0..n - 1).map(|i| (i, i + 1, 1)).collect()),
                DuVal::D(n) if n >= 4 => {
                    let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 1)).collect();
                    e.pop();
                    e.push((n - 3, n - 2, 1));
                    e.push((n - 3, n - 1, 1));
                    (n, e)
                }
                DuVal::E6 => (6, vec![]),
                DuVal::E7 => (7, vec![]),
                DuVal::E8 => (8, vec![]),
                _ => return Err(Error::Domain(format!("invalid Du Val type {kind:?}"))),
            };
            if matches!(kind, DuVal::E6 | DuVal::E7 | DuVal::E8) {
                // chain of n-1 vertices with the last vertex attached to the third
                edges = (0..n - 2).map(|i| (i, i + 1, 1)).collect();
                edges.push((2, n - 1, 1));
            }
            ResolutionGraph::new(vec![rational(-2); n], edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{qvec, ratio};

    fn two_vertex() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![
                Vertex {
                    self_int: -3,
                    genus: 2,
                },
                Vertex {
                    self_int: -2,
                    genus: 0,
                },
            ],
            vec![(0, 1, 1)],
        )
        .unwrap()
    }

    fn single(self_int: i64, genus: u32) -> ResolutionGraph {
        ResolutionGraph::new(vec![Vertex { self_int, genus }], vec![]).unwrap()
    }

    #[test]
    fn adjunction() {
        assert_eq!(canonical_intersections(&single(-1, 2)), qvec(&[3]));
        assert_eq!(canonical_intersections(&single(-3, 2)), qvec(&[5]));
        assert_eq!(canonical_intersections(&single(-2, 0)), qvec(&[0]));
        assert_eq!(canonical_intersections(&two_vertex()), qvec(&[5, 0]));
    }

    #[test]
    fn pullbacks() {
        assert_eq!(
            numerical_pullback(&single(-2, 0), &qvec(&[0]))
                .unwrap()
                .coeffs,
            qvec(&[0])
        );
        assert_eq!(
            numerical_pullback(&two_vertex(), &qvec(&[5, 0]))
                .unwrap()
                .coeffs,
            qvec(&[-2, -1])
        );
        for d in 1..6 {
            assert_eq!(
                numerical_pullback(&single(-d, 1), &qvec(&[d]))
                    .unwrap()
                    .coeffs,
                qvec(&[-1])
            );
        }
        assert!(matches!(
            numerical_pullback(&two_vertex(), &qvec(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn log_discrepancies() {
        assert_eq!(log_discrepancy_divisor(&single(-2, 0)).coeffs, qvec(&[1]));
        assert_eq!(log_discrepancy_divisor(&single(-4, 1)).coeffs, qvec(&[0]));
        assert_eq!(
            log_discrepancy_divisor(&two_vertex()).coeffs,
            qvec(&[-1, 0])
        );
    }

    #[test]
    fn zariski_examples() {
        let g = single(-2, 0);
        let z = zariski_decompose(&g, &ExcDivisor::new(qvec(&[-1]))).unwrap();
        assert_eq!(
            (z.nef_part.coeffs, z.neg_part.coeffs),
            (qvec(&[-1]), qvec(&[0]))
        );
        let z = zariski_decompose(&g, &ExcDivisor::new(qvec(&[1]))).unwrap();
        assert_eq!(
            (z.nef_part.coeffs, z.neg_part.coeffs),
            (qvec(&[0]), qvec(&[1]))
        );

        let g = two_vertex();
        let z = zariski_decompose(&g, &log_discrepancy_divisor(&g)).unwrap();
        assert_eq!(z.nef_part.coeffs, vec![ratio(-1, 1), ratio(-1, 2)]);
        assert_eq!(z.neg_part.coeffs, vec![ratio(0, 1), ratio(1, 2)]);
    }

    #[test]
    fn volumes_and_classes() {
        assert_eq!(volume(&single(-2, 0)), rat(0));
        assert_eq!(volume(&single(-1, 2)), rat(4));
        assert_eq!(volume(&two_vertex()), ratio(5, 2));
        assert_eq!(classify(&single(-2, 0)).class, SingularityClass::Klt);
        assert_eq!(classify(&single(-3, 1)).class, SingularityClass::LcNotKlt);
        assert_eq!(classify(&single(-1, 2)).class, SingularityClass::NotLc);
    }

    #[test]
    fn local_volumes() {
        let g = single(-2, 0);
        assert_eq!(
            local_volume(&g, &ExcDivisor::new(qvec(&[-1]))).unwrap(),
            rat(2)
        );
        assert_eq!(
            local_volume(&g, &ExcDivisor::new(qvec(&[1]))).unwrap(),
            rat(0)
        );
        let g = two_vertex();
        assert_eq!(
            local_volume(&g, &log_discrepancy_divisor(&g)).unwrap(),
            ratio(5, 2)
        );
    }

    #[test]
    fn families() {
        let g = standard_graph(&GraphFamily::Cone {
            genus: 2,
            degree: 1,
        })
        .unwrap();
        assert_eq!(
            g.vertices(),
            &[Vertex {
                self_int: -1,
                genus: 2
            }]
        );

        let g = standard_graph(&GraphFamily::DuVal(DuVal::A(2))).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges(), &[(0, 1, 1)]);

        let g = standard_graph(&GraphFamily::CuspCycle(vec![-3, -2, -2])).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert_eq!(classify(&g).class, SingularityClass::LcNotKlt);
        assert_eq!(volume(&g), rat(0));

        for selfs in [vec![-3], vec![-3, -2], vec![-2, -5, -2, -2]] {
            let g = standard_graph(&GraphFamily::CuspCycle(selfs)).unwrap();
            assert_eq!(log_discrepancy_divisor(&g), ExcDivisor::zero(g.len()));
        }

        assert!(standard_graph(&GraphFamily::CuspCycle(vec![-2, -2, -2])).is_err());
        for kind in [DuVal::D(4), DuVal::D(7), DuVal::E6, DuVal::E7, DuVal::E8] {
            let g = standard_graph(&GraphFamily::DuVal(kind)).unwrap();
            assert_eq!(classify(&g).class, SingularityClass::Klt);
            assert_eq!(discrepancies(&g), ExcDivisor::zero(g.len()));
        }
        assert_eq!("e_8".parse::<DuVal>().unwrap(), DuVal::E8);
        assert_eq!("A3".parse::<DuVal>().unwrap(), DuVal::A(3));
    }

    #[test]
    fn construction_errors() {
        let err = ResolutionGraph::new(
            vec![
                Vertex {
                    self_int: -2,
                    genus: 0,
                },
                Vertex {
                    self_int: -2,
                    genus: 0,
                },
            ],
            vec![(0, 1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNegativeDefinite { order: 2, .. }));
        assert!(ResolutionGraph::new(
            vec![Vertex {
                self_int: -2,
                genus: 0
            }],
            vec![(0, 0, 1)]
        )
        .is_err());
        assert!(ResolutionGraph::new(
            vec![
                Vertex {
                    self_int: -2,
                    genus: 0
                },
                Vertex {
                    self_int: -2,
                    genus: 0
                }
            ],
            vec![]
        )
        .is_err());
        assert!(ResolutionGraph::new(vec![], vec![]).is_err());
    }

    #[test]
    fn graph_json_shape() {
        let spec: GraphSpec = serde_json::from_str(
            r#"{"vertices":[{"self":-3,"genus":2},{"self":-2,"genus":0}],"edges":[[0,1,1]]}"#,
        )
        .unwrap();
        assert_eq!(ResolutionGraph::from_spec(&spec).unwrap(), two_vertex());
        let d: ExcDivisor = serde_json::from_str(r#"{"coeffs":["-1","1/2"]}"#).unwrap();
        assert_eq!(d.coeffs, vec![ratio(-1, 1), ratio(1, 2)]);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"coeffs":["-1","1/2"]}"#
        );
    }
}
