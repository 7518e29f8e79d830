//! Exact rational arithmetic, linear algebra, linear programming and
//! low-dimensional polytope volumes.

pub mod hull;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;

pub use hull::polytope_volume;
pub use linalg::{is_negative_definite, solve_linear, QMatrix};
pub use lp::{lp_max, Constraint, LpOutcome, LpProblem};
pub use rational::{format_rational, parse_rational, qvec, rat, ratio, QVector, Rational};
